use std::fmt;

use super::{accumulate, BasisVector, Combination, Diagonal, Generator};
use crate::error::{Error, Result};
use crate::num::{int, HalfInt, Rational};
use crate::partitions::GeneralizedPartition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// The creation generator `ψ^{sign,flavor}_{-mode}`, `mode > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CreationFactor {
    pub flavor: i64,
    pub sign: Sign,
    pub mode: HalfInt,
}

/// An inclusive range of fermion flavors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlavorWindow {
    pub lo: i64,
    pub hi: i64,
}

impl FlavorWindow {
    pub fn new(lo: i64, hi: i64) -> Self {
        FlavorWindow { lo, hi }
    }

    /// Flavors `1..=l`.
    pub fn level(l: usize) -> Self {
        FlavorWindow { lo: 1, hi: l as i64 }
    }

    pub fn flavors(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn len(self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    pub fn contains(self, flavor: i64) -> bool {
        (self.lo..=self.hi).contains(&flavor)
    }
}

impl fmt::Display for FlavorWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={}", self.lo, self.hi)
    }
}

/// `overall_sign · Π factors |0⟩` with factors strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliffordMonomial {
    factors: Vec<CreationFactor>,
    overall_sign: i8,
}

impl CliffordMonomial {
    pub fn vacuum() -> Self {
        CliffordMonomial { factors: Vec::new(), overall_sign: 1 }
    }

    /// Sorts `factors` into canonical order, tracking the permutation sign.
    pub fn from_factors(mut factors: Vec<CreationFactor>) -> Option<Self> {
        let mut sign = 1i8;
        for i in 1..factors.len() {
            let mut k = i;
            while k > 0 && factors[k - 1] > factors[k] {
                factors.swap(k - 1, k);
                sign = -sign;
                k -= 1;
            }
        }
        if factors.windows(2).any(|w| w[0] == w[1]) || factors.iter().any(|f| !f.mode.is_positive()) {
            return None;
        }
        Some(CliffordMonomial { factors, overall_sign: sign })
    }

    pub fn factors(&self) -> &[CreationFactor] {
        &self.factors
    }

    pub fn overall_sign(&self) -> i64 {
        self.overall_sign as i64
    }

    /// The same monomial with sign `+1`, as used for basis keys.
    pub fn key(&self) -> Self {
        CliffordMonomial { factors: self.factors.clone(), overall_sign: 1 }
    }

    /// `{key: overall_sign}`.
    pub fn to_combination(&self) -> Combination<Self> {
        Combination::from([(self.key(), int(self.overall_sign()))])
    }

    /// `Σ modes`.
    pub fn degree(&self) -> Rational {
        self.factors.iter().map(|f| f.mode.to_rational()).sum()
    }

    fn create(&self, factor: CreationFactor) -> Option<(Self, i64)> {
        let idx = match self.factors.binary_search(&factor) {
            Ok(_) => return None,
            Err(i) => i,
        };
        let mut factors = self.factors.clone();
        factors.insert(idx, factor);
        Some((CliffordMonomial { factors, overall_sign: 1 }, parity(idx) * self.overall_sign()))
    }

    fn annihilate(&self, factor: CreationFactor) -> Option<(Self, i64)> {
        let idx = self.factors.binary_search(&factor).ok()?;
        let mut factors = self.factors.clone();
        factors.remove(idx);
        Some((CliffordMonomial { factors, overall_sign: 1 }, parity(idx) * self.overall_sign()))
    }

    /// `ψ^{sign,flavor}_mode` applied to this vector.
    pub fn apply_fermion(&self, sign: Sign, flavor: i64, mode: HalfInt) -> Option<(Self, i64)> {
        if mode.is_positive() {
            self.annihilate(CreationFactor { flavor, sign: sign.flip(), mode })
        } else {
            self.create(CreationFactor { flavor, sign, mode: -mode })
        }
    }

    /// Eigenvalue of `e^{ii}_*`: `#(+, i) - #(-, i)`.
    pub fn gl_weight(&self, flavor: i64) -> i64 {
        self.factors
            .iter()
            .filter(|f| f.flavor == flavor)
            .map(|f| if f.sign == Sign::Plus { 1 } else { -1 })
            .sum()
    }

    /// Eigenvalue of `e*_{jj}` with the flavor sum cut to `window`.
    pub fn a_weight(&self, j: i64, window: FlavorWindow) -> i64 {
        let (sign, mode, value) =
            if j >= 1 { (Sign::Plus, HalfInt::new(j - 1), 1) } else { (Sign::Minus, HalfInt::new(-j), -1) };
        value
            * self.factors.iter().filter(|f| f.sign == sign && f.mode == mode && window.contains(f.flavor)).count()
                as i64
    }
}

fn parity(idx: usize) -> i64 {
    if idx.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl fmt::Display for CliffordMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.overall_sign < 0 {
            f.write_str("-")?;
        }
        for c in &self.factors {
            write!(f, "psi^{{{},{}}}(-{}) ", c.sign, c.flavor, c.mode)?;
        }
        f.write_str("|0>")
    }
}

/// `:A B: v = A(Bv) - ⟨AB⟩ v` for two fermions `(sign, flavor, mode)`.
fn normal_ordered(
    a: (Sign, i64, HalfInt),
    b: (Sign, i64, HalfInt),
    v: &CliffordMonomial,
    out: &mut Combination<CliffordMonomial>,
) {
    if let Some((w, s1)) = v.apply_fermion(b.0, b.1, b.2) {
        if let Some((u, s2)) = w.apply_fermion(a.0, a.1, a.2) {
            accumulate(out, u, int(s1 * s2));
        }
    }
    let contracted = a.1 == b.1 && a.0 != b.0 && a.2.is_positive() && a.2 == -b.2;
    if contracted {
        accumulate(out, v.key(), int(-v.overall_sign()));
    }
}

/// `e*_{ij} = Σ_{k ∈ window} :ψ^{+,k}_{1/2-i} ψ^{-,k}_{j-1/2}:`.
pub fn apply_a_gen(i: i64, j: i64, window: FlavorWindow, v: &CliffordMonomial) -> Combination<CliffordMonomial> {
    let mut out = Combination::new();
    let (ma, mb) = (HalfInt::new(-i), HalfInt::new(j - 1));
    for k in window.flavors() {
        normal_ordered((Sign::Plus, k, ma), (Sign::Minus, k, mb), v, &mut out);
    }
    out
}

/// `e^{ij}_* = Σ_r :ψ^{+,i}_{-r} ψ^{-,j}_r:`; only modes already present in `v` contribute.
pub fn apply_gl_gen(i: i64, j: i64, v: &CliffordMonomial) -> Combination<CliffordMonomial> {
    let mut out = Combination::new();
    let mut modes: Vec<HalfInt> = Vec::new();
    for f in v.factors() {
        if f.flavor == j && f.sign == Sign::Plus {
            modes.push(f.mode);
        }
        if f.flavor == i && f.sign == Sign::Minus {
            modes.push(-f.mode);
        }
    }
    modes.sort_unstable();
    modes.dedup();
    for r in modes {
        normal_ordered((Sign::Plus, i, -r), (Sign::Minus, j, r), v, &mut out);
    }
    out
}

/// The a∞ indices `-K+1..=K`, `K = ⌊D + 1/2⌋`, reachable at degree `D`.
pub fn a_index_window(max_degree: &Rational) -> std::ops::RangeInclusive<i64> {
    let k = (max_degree + crate::num::rat(1, 2)).floor().to_integer();
    let k: i64 = k.try_into().unwrap_or(0);
    (1 - k)..=k
}

/// The joint highest weight vector `v_λ` for `λ` with one slot per flavor of `window`.
pub fn highest_weight_vector_in(lambda: &GeneralizedPartition, window: FlavorWindow) -> Result<CliffordMonomial> {
    if lambda.slots() != window.len() {
        return Err(Error::Arity(format!("{lambda} needs {} slots", window.len())));
    }
    let mut v = CliffordMonomial::vacuum();
    for (s, &part) in lambda.parts().iter().enumerate().rev() {
        let flavor = window.lo + s as i64;
        let sign = if part > 0 { Sign::Plus } else { Sign::Minus };
        for m in 0..part.abs() {
            let (w, sg) = v.apply_fermion(sign, flavor, HalfInt::new(-m - 1)).expect("distinct block modes");
            v = CliffordMonomial { overall_sign: sg as i8, ..w };
        }
    }
    Ok(v)
}

/// `v_λ` in the level-`l` module.
pub fn highest_weight_vector(lambda: &GeneralizedPartition, l: usize) -> Result<CliffordMonomial> {
    if lambda.slots() > l {
        return Err(Error::Arity(format!("{lambda} is longer than level {l}")));
    }
    let mut parts = lambda.parts().to_vec();
    parts.resize(l, 0);
    let padded = GeneralizedPartition::new(parts).map_err(|_| Error::Arity(format!("{lambda} cannot be padded")))?;
    highest_weight_vector_in(&padded, FlavorWindow::level(l))
}

/// All canonical monomials with flavors in `window` and degree at most `max_degree`.
pub fn basis_level_l(window: FlavorWindow, max_degree: &Rational) -> Vec<CliffordMonomial> {
    let mut gens = Vec::new();
    for flavor in window.flavors() {
        for sign in [Sign::Plus, Sign::Minus] {
            let mut m = 0;
            while HalfInt::new(m).to_rational() <= *max_degree {
                gens.push(CreationFactor { flavor, sign, mode: HalfInt::new(m) });
                m += 1;
            }
        }
    }
    gens.sort();
    fn fill(
        gens: &[CreationFactor],
        start: usize,
        budget: Rational,
        prefix: &mut Vec<CreationFactor>,
        out: &mut Vec<CliffordMonomial>,
    ) {
        out.push(CliffordMonomial { factors: prefix.clone(), overall_sign: 1 });
        for idx in start..gens.len() {
            let cost = gens[idx].mode.to_rational();
            if cost <= budget {
                prefix.push(gens[idx]);
                fill(gens, idx + 1, &budget - cost, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    fill(&gens, 0, max_degree.clone(), &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    out
}

impl BasisVector for CliffordMonomial {
    fn energy(&self) -> Rational {
        self.degree()
    }

    fn apply_generator(&self, g: &Generator) -> Result<Combination<Self>> {
        match *g {
            Generator::Fermion { sign, flavor, mode } => Ok(self
                .apply_fermion(sign, flavor, mode)
                .map(|(w, s)| Combination::from([(w, int(s))]))
                .unwrap_or_default()),
            Generator::AGen { i, j, flavors } => Ok(apply_a_gen(i, j, flavors, self)),
            Generator::GlGen { i, j } => Ok(apply_gl_gen(i, j, self)),
            other => Err(Error::Unsupported(format!("{other} on a Clifford module"))),
        }
    }

    fn eigenvalue(&self, d: Diagonal) -> Result<Rational> {
        match d {
            Diagonal::Energy => Ok(self.degree()),
            Diagonal::GlDiag(i) => Ok(int(self.gl_weight(i))),
            Diagonal::ADiag(j) => {
                // every flavor present counts; windows are applied by the caller's basis
                let all = FlavorWindow::new(i64::MIN, i64::MAX);
                Ok(int(self.a_weight(j, all)))
            }
            Diagonal::Charge => Ok(int(self.factors.iter().map(|f| if f.sign == Sign::Plus { 1 } else { -1 }).sum::<i64>())),
            other => Err(Error::Unsupported(format!("{other:?} on a Clifford module"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::commutator_on;
    use crate::num::rat;
    use crate::partitions::generalized_partitions;

    fn plus(flavor: i64, twice: i64) -> CreationFactor {
        CreationFactor { flavor, sign: Sign::Plus, mode: HalfInt::from_twice(twice).unwrap() }
    }

    fn mono(fs: &[CreationFactor]) -> CliffordMonomial {
        CliffordMonomial::from_factors(fs.to_vec()).unwrap()
    }

    #[test]
    fn basis_counts() {
        let w1 = FlavorWindow::level(1);
        assert_eq!(basis_level_l(w1, &int(0)), vec![CliffordMonomial::vacuum()]);
        assert_eq!(basis_level_l(w1, &rat(1, 2)).len(), 3);
        // generating-function oracle: Π over generators (1 + t^mode), coefficients up to degree D
        for (l, d) in [(1usize, 3i64), (2, 2), (3, 2)] {
            let mut poly = vec![0u64; (2 * d + 1) as usize];
            poly[0] = 1;
            for _ in 0..2 * l {
                for m in 0..d {
                    let twice = (2 * m + 1) as usize;
                    for k in (twice..poly.len()).rev() {
                        poly[k] += poly[k - twice];
                    }
                }
            }
            let expected: u64 = poly.iter().sum();
            assert_eq!(basis_level_l(FlavorWindow::level(l), &int(d)).len() as u64, expected, "l={l} D={d}");
        }
    }

    #[test]
    fn a_gen_examples() {
        let w = FlavorWindow::level(1);
        let v = mono(&[plus(1, 1)]);
        assert_eq!(apply_a_gen(1, 1, w, &v), v.to_combination());
        assert!(apply_a_gen(1, 1, w, &CliffordMonomial::vacuum()).is_empty());
        let v3 = mono(&[plus(1, 3)]);
        assert_eq!(apply_a_gen(1, 2, w, &v3), mono(&[plus(1, 1)]).to_combination());
    }

    #[test]
    fn gl_gen_examples() {
        let v = mono(&[plus(1, 1)]);
        assert_eq!(apply_gl_gen(1, 1, &v), v.to_combination());
        assert!(apply_gl_gen(1, 2, &CliffordMonomial::vacuum()).is_empty());
    }

    #[test]
    fn fermion_anticommutators() {
        let w = FlavorWindow::level(2);
        let basis = basis_level_l(w, &int(2));
        let modes: Vec<HalfInt> = [-3, -1, 1, 3].iter().map(|&t| HalfInt::from_twice(t).unwrap()).collect();
        for v in basis.iter().filter(|v| v.degree() <= int(1)) {
            for &(s1, s2) in &[(Sign::Plus, Sign::Minus), (Sign::Plus, Sign::Plus)] {
                for f1 in w.flavors() {
                    for f2 in w.flavors() {
                        for &a in &modes {
                            for &b in &modes {
                                let x = Generator::Fermion { sign: s1, flavor: f1, mode: a };
                                let y = Generator::Fermion { sign: s2, flavor: f2, mode: b };
                                let got = crate::fock::anticommutator_on(&x, &y, v).unwrap();
                                let delta = s1 != s2 && f1 == f2 && a == -b;
                                let want = if delta { v.to_combination() } else { Combination::new() };
                                assert_eq!(got, want);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn highest_weight_examples() {
        let g = |p: &[i64]| GeneralizedPartition::new(p.to_vec()).unwrap();
        assert_eq!(highest_weight_vector(&g(&[0, 0]), 2).unwrap(), CliffordMonomial::vacuum());
        assert_eq!(highest_weight_vector(&g(&[1]), 1).unwrap(), mono(&[plus(1, 1)]));
        let minus = CreationFactor { flavor: 1, sign: Sign::Minus, mode: HalfInt::new(0) };
        assert_eq!(highest_weight_vector(&g(&[-1]), 1).unwrap(), mono(&[minus]));
        assert!(highest_weight_vector(&g(&[1, 0]), 1).is_err());
    }

    #[test]
    fn highest_weight_vectors_are_joint_eigenvectors() {
        for l in 1..=2usize {
            let w = FlavorWindow::level(l);
            for lam in generalized_partitions(l, 3) {
                let v = highest_weight_vector(&lam, l).unwrap();
                for (s, &part) in lam.parts().iter().enumerate() {
                    assert_eq!(v.gl_weight(s as i64 + 1), part);
                }
                let prime = lam.lambda_prime();
                for j in -4..=4 {
                    assert_eq!(v.a_weight(j, w), prime.eps.get(&j).copied().unwrap_or(0), "{lam} j={j}");
                }
                for i in -3..=3 {
                    assert!(apply_a_gen(i, i + 1, w, &v.key()).is_empty(), "{lam} e*_({i},{})", i + 1);
                }
                for i in 1..l as i64 {
                    assert!(apply_gl_gen(i, i + 1, &v.key()).is_empty());
                }
            }
        }
    }

    #[test]
    fn gl_and_a_actions_commute() {
        let w = FlavorWindow::level(2);
        let basis = basis_level_l(w, &int(2));
        for v in basis.iter().filter(|v| v.degree() <= int(1)) {
            for (i, j) in [(0, 1), (1, 0), (1, 1), (2, 1), (1, 2), (0, 0)] {
                for (r, s) in [(1, 2), (2, 1), (1, 1)] {
                    let x = Generator::AGen { i, j, flavors: w };
                    let y = Generator::GlGen { i: r, j: s };
                    assert!(commutator_on(&x, &y, v).unwrap().is_empty());
                }
            }
        }
    }
}
