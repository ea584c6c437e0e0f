use std::fmt;

use num_traits::Zero;

use super::{accumulate, BasisVector, Combination, Diagonal, Generator};
use crate::error::{Error, Result};
use crate::num::{int, rat, HalfInt, Rational};
use crate::partitions::{partitions_of, Partition};

/// A level-one basis vector `(c, λ)`: the wedge whose occupied positions are
/// `λ_k - k + 1/2 + c`, `k ≥ 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MayaVector {
    charge: i64,
    shape: Partition,
}

/// Which charge sectors a basis spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChargeSelection {
    Zero,
    All,
}

impl MayaVector {
    pub fn new(charge: i64, shape: Partition) -> Self {
        MayaVector { charge, shape }
    }

    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn charged_vacuum(charge: i64) -> Self {
        Self::new(charge, Partition::empty())
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// `|λ| + c²/2`.
    pub fn energy(&self) -> Rational {
        int(self.shape.weight()) + rat(self.charge * self.charge, 2)
    }

    /// The `k`-th occupied position, `k ≥ 1`, in decreasing order.
    pub fn position(&self, k: usize) -> HalfInt {
        HalfInt::new(self.shape.part(k) - k as i64 + self.charge)
    }

    /// The first `count` positions; every lower position is occupied too.
    fn positions(&self, count: usize) -> Vec<HalfInt> {
        (1..=count).map(|k| self.position(k)).collect()
    }

    /// Enough leading positions that every position below `p` is implied.
    fn positions_below(&self, p: HalfInt) -> Vec<HalfInt> {
        let count = (self.shape.len() as i64 + 1).max(self.charge - p.floor() + 1);
        self.positions(count as usize)
    }

    /// Inverse of [`positions`]: a decreasing list followed by a full tail.
    fn from_positions(ps: &[HalfInt]) -> Self {
        let n = ps.len() as i64;
        let last = ps.last().expect("nonempty position list").floor();
        let charge = last + n;
        let parts: Vec<i64> = ps.iter().enumerate().map(|(k, p)| p.floor() + k as i64 + 1 - charge).collect();
        MayaVector { charge, shape: Partition::new(parts).expect("decreasing positions give a partition") }
    }

    /// Whether position `p` is filled.
    pub fn is_occupied(&self, p: HalfInt) -> bool {
        self.positions_below(p).contains(&p)
    }

    /// Inserts `p` in front of the wedge and sorts it into place.
    fn insert(&self, p: HalfInt) -> Option<(Self, i64)> {
        let mut ps = self.positions_below(p);
        if ps.contains(&p) {
            return None;
        }
        let idx = ps.iter().take_while(|q| **q > p).count();
        ps.insert(idx, p);
        Some((Self::from_positions(&ps), if idx % 2 == 0 { 1 } else { -1 }))
    }

    fn remove(&self, p: HalfInt) -> Option<(Self, i64)> {
        let mut ps = self.positions_below(p);
        let idx = ps.iter().position(|q| *q == p)?;
        ps.remove(idx);
        Some((Self::from_positions(&ps), if idx % 2 == 0 { 1 } else { -1 }))
    }

    /// Occupied positive positions and vacant negative positions.
    pub fn particles_and_holes(&self) -> (Vec<HalfInt>, Vec<HalfInt>) {
        let ps = self.positions_below(HalfInt::new(-1));
        let last = *ps.last().expect("nonempty");
        let particles = ps.iter().copied().filter(|p| p.is_positive()).collect();
        let holes = (last.twice()..0)
            .filter_map(HalfInt::from_twice)
            .filter(|h| !ps.contains(h))
            .rev()
            .collect();
        (particles, holes)
    }

    /// The wedge with exactly the given particles and holes.
    pub fn from_particles_holes(particles: &[HalfInt], holes: &[HalfInt]) -> Self {
        let depth = holes.iter().map(|h| -h.floor()).max().unwrap_or(0) + 1;
        let mut ps: Vec<HalfInt> = particles.to_vec();
        ps.extend((1..=depth).map(|k| HalfInt::new(-k)).filter(|h| !holes.contains(h)));
        ps.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_positions(&ps)
    }

    /// `L_j` eigenvalue `Σ_{particles} p^j - Σ_{holes} h^j`.
    pub fn casimir(&self, j: u32) -> Rational {
        let (particles, holes) = self.particles_and_holes();
        let plus: Rational = particles.iter().map(|p| p.pow(j)).sum();
        let minus: Rational = holes.iter().map(|h| h.pow(j)).sum();
        plus - minus
    }
}

impl fmt::Display for MayaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{};{}>", self.charge, self.shape)
    }
}

fn single(v: Option<(MayaVector, i64)>) -> Combination<MayaVector> {
    v.map(|(w, s)| Combination::from([(w, int(s))])).unwrap_or_default()
}

/// `ψ_r v`: inserts position `-r`.
pub fn apply_psi(r: HalfInt, v: &MayaVector) -> Combination<MayaVector> {
    single(v.insert(-r))
}

/// `ψ*_r v`: removes position `-r`.
pub fn apply_psi_star(r: HalfInt, v: &MayaVector) -> Combination<MayaVector> {
    single(v.remove(-r))
}

/// `α_n v` by the border-strip rule: strips of size `|n|` are removed (`n > 0`)
/// or added (`n < 0`) with sign `(-1)^height`.
pub fn apply_alpha(n: i64, v: &MayaVector) -> Combination<MayaVector> {
    let moves = if n > 0 { v.shape.border_strip_removals(n) } else { v.shape.border_strip_additions(-n) };
    let mut out = Combination::new();
    for (mu, height) in moves {
        accumulate(&mut out, MayaVector::new(v.charge, mu), int(if height % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// `α_n v = Σ_k ψ_{k+n} ψ*_k v`, summed over every position that can contribute.
pub fn apply_alpha_bilinear(n: i64, v: &MayaVector) -> Combination<MayaVector> {
    let (particles, holes) = v.particles_and_holes();
    let lowest = holes.last().copied().unwrap_or(HalfInt::new(-1)).min(HalfInt::new(-1));
    let highest = particles.first().copied().unwrap_or(HalfInt::new(0)).max(HalfInt::new(0));
    let reach = n.abs() + 1;
    let mut out = Combination::new();
    let mut p = lowest + (-reach);
    while p <= highest + reach {
        // ψ*_k removes -k = p; ψ_{k+n} then inserts p - n
        let k = -p;
        for (w, c) in apply_psi_star(k, v) {
            for (u, d) in apply_psi(k + n, &w) {
                accumulate(&mut out, u, &c * d);
            }
        }
        p = p + 1;
    }
    out
}

/// `[L_0, …, L_jmax]` eigenvalues: charge, energy, then the higher Casimirs.
pub fn casimir_exponents(v: &MayaVector, jmax: u32) -> Vec<Rational> {
    (0..=jmax).map(|j| v.casimir(j)).collect()
}

/// Every `(c, λ)` with `|λ| + c²/2 ≤ max_energy`, sorted by energy.
pub fn basis_level1(max_energy: &Rational, charges: ChargeSelection) -> Vec<MayaVector> {
    let mut out = Vec::new();
    let charge_range = match charges {
        ChargeSelection::Zero => 0..=0,
        ChargeSelection::All => {
            let mut c = 0i64;
            while rat((c + 1) * (c + 1), 2) <= *max_energy {
                c += 1;
            }
            -c..=c
        }
    };
    for c in charge_range {
        let budget = max_energy - rat(c * c, 2);
        if budget < Rational::zero() {
            continue;
        }
        let budget = budget.floor().to_integer();
        let budget: i64 = budget.try_into().unwrap_or(i64::MAX);
        for w in 0..=budget {
            out.extend(partitions_of(w).into_iter().map(|lam| MayaVector::new(c, lam)));
        }
    }
    out.sort_by(|a, b| a.energy().cmp(&b.energy()).then_with(|| a.cmp(b)));
    out
}

/// Every wedge whose particles and holes lie among the first `mode_count`
/// positive, respectively negative, positions.
pub fn basis_modes(mode_count: usize) -> Vec<MayaVector> {
    let modes: Vec<HalfInt> = (0..mode_count as i64).map(HalfInt::new).collect();
    let mut out = Vec::with_capacity(1 << (2 * mode_count));
    for pmask in 0u64..(1 << mode_count) {
        let particles: Vec<HalfInt> =
            modes.iter().enumerate().filter(|(i, _)| pmask >> i & 1 == 1).map(|(_, m)| *m).collect();
        for hmask in 0u64..(1 << mode_count) {
            let holes: Vec<HalfInt> =
                modes.iter().enumerate().filter(|(i, _)| hmask >> i & 1 == 1).map(|(_, m)| -*m).collect();
            out.push(MayaVector::from_particles_holes(&particles, &holes));
        }
    }
    out.sort_by(|a, b| a.energy().cmp(&b.energy()).then_with(|| a.cmp(b)));
    out
}

impl BasisVector for MayaVector {
    fn energy(&self) -> Rational {
        MayaVector::energy(self)
    }

    fn apply_generator(&self, g: &Generator) -> Result<Combination<Self>> {
        match *g {
            Generator::Psi(r) => Ok(apply_psi(r, self)),
            Generator::PsiStar(r) => Ok(apply_psi_star(r, self)),
            Generator::Alpha(0) => Err(Error::InvalidExpr("alpha(0) is the charge, use a diagonal".into())),
            Generator::Alpha(n) => Ok(apply_alpha(n, self)),
            other => Err(Error::Unsupported(other.to_string())),
        }
    }

    fn eigenvalue(&self, d: Diagonal) -> Result<Rational> {
        match d {
            Diagonal::Charge => Ok(int(self.charge)),
            Diagonal::Energy => Ok(self.energy()),
            Diagonal::Casimir(j) => Ok(self.casimir(j)),
            other => Err(Error::Unsupported(format!("{other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::casimir_eigenvalue;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice).unwrap()
    }

    fn v(c: i64, parts: &[i64]) -> MayaVector {
        MayaVector::new(c, Partition::new(parts.to_vec()).unwrap())
    }

    #[test]
    fn energies_and_small_bases() {
        assert_eq!(basis_level1(&int(0), ChargeSelection::All), vec![MayaVector::vacuum()]);
        assert_eq!(basis_level1(&int(1), ChargeSelection::Zero), vec![v(0, &[]), v(0, &[1])]);
        assert_eq!(MayaVector::charged_vacuum(1).energy(), rat(1, 2));
        assert_eq!(MayaVector::charged_vacuum(-1).energy(), rat(1, 2));
        assert_eq!(basis_level1(&int(1), ChargeSelection::All).len(), 4);
    }

    #[test]
    fn psi_examples() {
        let vac = MayaVector::vacuum();
        assert_eq!(apply_psi(h(-1), &vac), Combination::from([(MayaVector::charged_vacuum(1), int(1))]));
        assert!(apply_psi(h(1), &vac).is_empty());
        assert!(apply_psi(h(5), &vac).is_empty());
        let charged = MayaVector::charged_vacuum(1);
        assert_eq!(apply_psi_star(h(-1), &charged), Combination::from([(vac.clone(), int(1))]));
        assert!(apply_psi_star(h(-3), &vac).is_empty());
        for b in basis_level1(&int(3), ChargeSelection::All) {
            for t in -7..=7 {
                let Some(k) = HalfInt::from_twice(t) else { continue };
                for (w, _) in apply_psi(k, &b) {
                    assert!(apply_psi(k, &w).is_empty());
                }
            }
        }
    }

    #[test]
    fn alpha_examples() {
        let vac = MayaVector::vacuum();
        assert_eq!(apply_alpha(-1, &vac), Combination::from([(v(0, &[1]), int(1))]));
        assert_eq!(apply_alpha_bilinear(-1, &vac), Combination::from([(v(0, &[1]), int(1))]));
        assert!(apply_alpha(2, &v(0, &[1])).is_empty());
        assert!(apply_alpha_bilinear(2, &v(0, &[1])).is_empty());
    }

    #[test]
    fn positions_round_trip() {
        for b in basis_level1(&int(5), ChargeSelection::All) {
            let (p, hl) = b.particles_and_holes();
            assert_eq!(MayaVector::from_particles_holes(&p, &hl), b);
            assert_eq!(b.casimir(0), int(b.charge()));
            assert_eq!(b.casimir(1), b.energy());
        }
    }

    #[test]
    fn casimir_examples() {
        assert_eq!(casimir_exponents(&v(0, &[2]), 2), vec![int(0), int(2), int(2)]);
        for b in basis_level1(&int(6), ChargeSelection::Zero) {
            for j in 1..=4 {
                assert_eq!(b.casimir(j), casimir_eigenvalue(b.shape(), j), "{b} L_{j}");
            }
        }
    }

    #[test]
    fn bilinear_matches_border_strips() {
        for b in basis_level1(&int(6), ChargeSelection::All) {
            for n in (-4..=4).filter(|&n| n != 0) {
                assert_eq!(apply_alpha(n, &b), apply_alpha_bilinear(n, &b), "{b} alpha({n})");
            }
        }
    }

    #[test]
    fn clifford_relations() {
        use crate::fock::{anticommutator_on, commutator_on};
        let modes: Vec<HalfInt> = (-7..=7).filter_map(HalfInt::from_twice).collect();
        for b in basis_level1(&int(3), ChargeSelection::All) {
            for &i in &modes {
                for &j in &modes {
                    let got = anticommutator_on(&Generator::Psi(i), &Generator::PsiStar(j), &b).unwrap();
                    let want = if i == j { Combination::from([(b.clone(), int(1))]) } else { Combination::new() };
                    assert_eq!(got, want);
                    assert!(anticommutator_on(&Generator::Psi(i), &Generator::Psi(j), &b).unwrap().is_empty());
                }
                for n in (-3..=3).filter(|&n| n != 0) {
                    let got = commutator_on(&Generator::Alpha(n), &Generator::Psi(i), &b).unwrap();
                    assert_eq!(got, apply_psi(i + n, &b), "{b} n={n} k={i}");
                }
            }
        }
    }

    #[test]
    fn mode_basis_size() {
        let b = basis_modes(2);
        assert_eq!(b.len(), 16);
        let mut sorted = b.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 16);
    }
}
