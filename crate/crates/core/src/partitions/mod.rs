//! Integer partitions and their combinatorics.

mod generalized;
mod plane;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::num::{rat, Rational};

pub use generalized::{generalized_partitions, AInfWeight, GeneralizedPartition};
pub use plane::count_plane_partitions;

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<i64>);

/// Half-integer-shifted Frobenius coordinates `(a_1..a_d | b_1..b_d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusCoords {
    pub arms: Vec<Rational>,
    pub legs: Vec<Rational>,
}

impl FrobeniusCoords {
    pub fn depth(&self) -> usize {
        self.arms.len()
    }
}

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Validates and wraps a part list; trailing zeros are dropped.
    pub fn new(mut parts: Vec<i64>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.iter().any(|&p| p < 1) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Config(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub(crate) fn from_sorted(parts: Vec<i64>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0));
        Partition(parts)
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `λ_i` with 1-based `i`; zero beyond the length.
    pub fn part(&self, i: usize) -> i64 {
        if i == 0 {
            return i64::MAX;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|c| self.0.iter().filter(|&&p| p >= c).count() as i64).collect())
    }

    pub fn frobenius(&self) -> FrobeniusCoords {
        let t = self.transpose();
        let depth = (1..=self.len()).take_while(|&i| self.part(i) >= i as i64).count();
        let shifted = |p: &Partition, i: usize| rat(2 * (p.part(i) - i as i64) + 1, 2);
        FrobeniusCoords {
            arms: (1..=depth).map(|i| shifted(self, i)).collect(),
            legs: (1..=depth).map(|i| shifted(&t, i)).collect(),
        }
    }

    /// Diagram containment `μ ⊆ λ`.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.0.iter().zip(&self.0).all(|(m, l)| m <= l)
    }

    /// Positions `λ_k - k` of the first `count` beads in the abacus picture.
    fn beads(&self, count: usize) -> Vec<i64> {
        (1..=count).map(|k| self.part(k) - k as i64).collect()
    }

    fn from_beads(beads: &[i64]) -> Partition {
        let mut parts: Vec<i64> = beads.iter().enumerate().map(|(k, b)| b + k as i64 + 1).collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition::from_sorted(parts)
    }

    /// Every `μ` obtained by deleting a border strip of `n` cells, with its height.
    ///
    /// A strip spanning rows `r..=s` leaves `μ_i = λ_{i+1} - 1` for `r ≤ i < s`
    /// and `μ_s = λ_r + s - r - n`, which must lie in `[λ_{s+1}, λ_s - 1]`.
    pub fn border_strip_removals(&self, n: i64) -> Vec<(Partition, i64)> {
        let mut out = Vec::new();
        let len = self.len();
        for r in 1..=len {
            for s in r..=len {
                let last = self.part(r) + (s - r) as i64 - n;
                if last < self.part(s + 1) || last > self.part(s) - 1 {
                    continue;
                }
                let mut parts = self.0.clone();
                for i in r..s {
                    parts[i - 1] = self.part(i + 1) - 1;
                }
                parts[s - 1] = last;
                while parts.last() == Some(&0) {
                    parts.pop();
                }
                out.push((Partition::from_sorted(parts), (s - r) as i64));
            }
        }
        out.sort();
        out
    }

    /// Every `λ` obtained by attaching a border strip of `n` cells, with its height.
    pub fn border_strip_additions(&self, n: i64) -> Vec<(Partition, i64)> {
        let count = self.len() + n as usize;
        let beads = self.beads(count);
        let mut out = Vec::new();
        for k in 0..count {
            let target = beads[k] + n;
            if beads.contains(&target) {
                continue;
            }
            let height = beads.iter().filter(|&&b| b > beads[k] && b < target).count() as i64;
            let mut moved = beads.clone();
            moved[k] = target;
            moved.sort_unstable_by(|a, b| b.cmp(a));
            out.push((Partition::from_beads(&moved), height));
        }
        out.sort();
        out
    }
}

/// `λ/μ` is a horizontal strip: `μ ⊆ λ` and `λ_{i+1} ≤ μ_i` for every `i`.
pub fn is_horizontal_strip(lambda: &Partition, mu: &Partition) -> bool {
    lambda.contains(mu) && (1..=lambda.len()).all(|i| lambda.part(i + 1) <= mu.part(i))
}

/// Partitions of exactly `n`, in ascending lexicographic order of part lists.
pub fn partitions_of(n: i64) -> Vec<Partition> {
    fn fill(rest: i64, max: i64, prefix: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in 1..=rest.min(max) {
            prefix.push(p);
            fill(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 0 {
        fill(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// All partitions of weight at most `max_weight`, by weight and then lexicographically.
pub fn generate_partitions(max_weight: i64) -> Vec<Partition> {
    (0..=max_weight).flat_map(partitions_of).collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Config(format!("bad part {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Euler's pentagonal recurrence, independent of the generator.
    fn pentagonal_counts(n: usize) -> Vec<i64> {
        let mut c = vec![0i64; n + 1];
        c[0] = 1;
        for m in 1..=n {
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                c[m] += sign * c[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    c[m] += sign * c[m - g2];
                }
                k += 1;
            }
        }
        c
    }

    #[test]
    fn generation_counts() {
        assert_eq!(generate_partitions(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(5).len(), 7);
        let expected = pentagonal_counts(20);
        for (n, count) in expected.iter().enumerate() {
            assert_eq!(partitions_of(n as i64).len() as i64, *count, "n = {n}");
        }
        assert_eq!(partitions_of(3), vec![p(&[1, 1, 1]), p(&[2, 1]), p(&[3])]);
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[2, 1]).transpose(), p(&[2, 1]));
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        for lam in generate_partitions(8) {
            assert_eq!(lam.transpose().transpose(), lam);
        }
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(Partition::empty().frobenius().depth(), 0);
        let f = p(&[3, 1]).frobenius();
        assert_eq!((f.arms, f.legs), (vec![rat(5, 2)], vec![rat(3, 2)]));
        for lam in generate_partitions(10) {
            let f = lam.frobenius();
            let total: Rational = f.arms.iter().chain(&f.legs).sum();
            assert_eq!(total, int(lam.weight()));
            let ft = lam.transpose().frobenius();
            assert_eq!((f.arms, f.legs), (ft.legs, ft.arms));
        }
    }

    #[test]
    fn horizontal_strips() {
        assert!(is_horizontal_strip(&p(&[3, 1]), &p(&[2])));
        assert!(!is_horizontal_strip(&p(&[2, 2]), &p(&[1])));
        assert!(is_horizontal_strip(&p(&[2, 2]), &p(&[2, 2])));
        assert!(!is_horizontal_strip(&p(&[2]), &p(&[3])));
    }

    #[test]
    fn border_strip_examples() {
        assert_eq!(p(&[1]).border_strip_removals(1), vec![(Partition::empty(), 0)]);
        assert_eq!(p(&[2, 1]).border_strip_removals(3), vec![(Partition::empty(), 1)]);
        assert!(p(&[1]).border_strip_removals(2).is_empty());
        assert_eq!(p(&[2, 2]).border_strip_removals(2), vec![(p(&[1, 1]), 1), (p(&[2]), 0)]);
        assert_eq!(Partition::empty().border_strip_additions(2), vec![(p(&[1, 1]), 1), (p(&[2]), 0)]);
    }

    #[test]
    fn removed_cells_form_a_ribbon() {
        for lam in generate_partitions(9) {
            for n in 1..=5 {
                for (mu, height) in lam.border_strip_removals(n) {
                    assert!(lam.contains(&mu));
                    assert_eq!(lam.weight() - mu.weight(), n);
                    let rows: Vec<usize> =
                        (1..=lam.len()).filter(|&i| lam.part(i) > mu.part(i)).collect();
                    assert_eq!(rows.len() as i64, height + 1);
                    assert!(rows.windows(2).all(|w| w[1] == w[0] + 1));
                    for w in rows.windows(2) {
                        let (upper, lower) = (w[0], w[1]);
                        // consecutive rows share exactly one column
                        assert_eq!(mu.part(upper) + 1, lam.part(lower));
                    }
                }
            }
        }
    }

    #[test]
    fn display_round_trip() {
        for lam in generate_partitions(6) {
            assert_eq!(lam.to_string().parse::<Partition>().unwrap(), lam);
        }
        assert!("1,2".parse::<Partition>().is_err());
    }
}
