use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A weakly decreasing integer list with a fixed number of slots; parts may be
/// zero or negative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneralizedPartition(Vec<i64>);

/// An a∞ weight `level·Λ_0 + Σ_j c_j ε_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AInfWeight {
    pub level: i64,
    pub eps: BTreeMap<i64, i64>,
}

impl GeneralizedPartition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Config(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(GeneralizedPartition(parts))
    }

    pub fn zero(slots: usize) -> Self {
        GeneralizedPartition(vec![0; slots])
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    /// Number of slots `l`.
    pub fn slots(&self) -> usize {
        self.0.len()
    }

    pub fn abs_size(&self) -> i64 {
        self.0.iter().map(|p| p.abs()).sum()
    }

    /// The weight `Λ(λ) = l Λ_0 + Σ_i λ'_i ε_i`, with
    /// `λ'_i = #{j : λ_j ≥ i}` for `i ≥ 1` and `-#{j : λ_j < i}` for `i ≤ 0`.
    pub fn lambda_prime(&self) -> AInfWeight {
        let mut eps = BTreeMap::new();
        let hi = self.0.first().copied().unwrap_or(0);
        let lo = self.0.last().copied().unwrap_or(0);
        for i in 1..=hi {
            let c = self.0.iter().filter(|&&p| p >= i).count() as i64;
            if c != 0 {
                eps.insert(i, c);
            }
        }
        for i in (lo + 1)..=0 {
            let c = self.0.iter().filter(|&&p| p < i).count() as i64;
            if c != 0 {
                eps.insert(i, -c);
            }
        }
        AInfWeight { level: self.slots() as i64, eps }
    }
}

/// All generalized partitions with `slots` parts and `Σ|λ_i| ≤ max_abs`.
pub fn generalized_partitions(slots: usize, max_abs: i64) -> Vec<GeneralizedPartition> {
    fn fill(slots: usize, budget: i64, upper: i64, prefix: &mut Vec<i64>, out: &mut Vec<GeneralizedPartition>) {
        if prefix.len() == slots {
            out.push(GeneralizedPartition(prefix.clone()));
            return;
        }
        for p in (-budget..=upper.min(budget)).rev() {
            prefix.push(p);
            fill(slots, budget - p.abs(), p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(slots, max_abs, max_abs, &mut Vec::new(), &mut out);
    out.sort_by_key(|g| (g.abs_size(), std::cmp::Reverse(g.0.clone())));
    out
}

impl fmt::Display for GeneralizedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{};l={}", parts.join(","), self.slots())
    }
}

impl fmt::Display for AInfWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Λ_0", self.level)?;
        for (i, c) in &self.eps {
            match c {
                1 => write!(f, " + ε_{i}")?,
                -1 => write!(f, " - ε_{i}")?,
                c if *c < 0 => write!(f, " - {}ε_{i}", -c)?,
                c => write!(f, " + {c}ε_{i}")?,
            }
        }
        Ok(())
    }
}
