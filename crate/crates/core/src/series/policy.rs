use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use super::monomial::Monomial;
use super::var::{Family, VarId};
use crate::num::{fmt_rational_short, Rational};

/// Selects either one variable or every variable of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarSel {
    Var(VarId),
    Family(Family),
}

impl VarSel {
    pub fn matches(&self, v: VarId) -> bool {
        match self {
            VarSel::Var(w) => *w == v,
            VarSel::Family(f) => v.family == *f,
        }
    }
}

impl From<VarId> for VarSel {
    fn from(v: VarId) -> Self {
        VarSel::Var(v)
    }
}

impl From<Family> for VarSel {
    fn from(f: Family) -> Self {
        VarSel::Family(f)
    }
}

impl fmt::Display for VarSel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarSel::Var(v) => write!(f, "{v}"),
            VarSel::Family(fam) => write!(f, "{}_*", fam.name()),
        }
    }
}

/// Upper bound on the summed exponents of a set of variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeBound {
    pub vars: BTreeSet<VarSel>,
    pub max: Rational,
}

impl DegreeBound {
    pub fn involves(&self, v: VarId) -> bool {
        self.vars.iter().any(|s| s.matches(v))
    }

    pub fn weight(&self, m: &Monomial) -> Rational {
        m.pairs()
            .iter()
            .filter(|(v, _)| self.involves(*v))
            .fold(Rational::zero(), |acc, (_, e)| acc + e)
    }
}

/// Which monomials a series retains.
///
/// A graded degree filter and per-variable caps are both expressed as
/// [`DegreeBound`]s (a cap is a bound over a single variable). A monomial is
/// admissible iff it satisfies every bound. The empty policy keeps everything.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TruncationPolicy {
    bounds: Vec<DegreeBound>,
}

impl TruncationPolicy {
    pub fn none() -> Self {
        Self::default()
    }

    /// Graded filter: the summed exponents of `vars` stay `<= max`.
    pub fn graded<S: Into<VarSel>>(vars: impl IntoIterator<Item = S>, max: Rational) -> Self {
        Self::none().with_graded(vars, max)
    }

    pub fn with_graded<S: Into<VarSel>>(
        self,
        vars: impl IntoIterator<Item = S>,
        max: Rational,
    ) -> Self {
        let vars: BTreeSet<VarSel> = vars.into_iter().map(Into::into).collect();
        self.with_bound(DegreeBound { vars, max })
    }

    /// Per-variable cap on the exponent of `v`.
    pub fn with_cap(self, v: VarId, max: Rational) -> Self {
        self.with_graded([v], max)
    }

    fn with_bound(mut self, bound: DegreeBound) -> Self {
        match self.bounds.iter_mut().find(|b| b.vars == bound.vars) {
            Some(existing) => {
                if bound.max < existing.max {
                    existing.max = bound.max;
                }
            }
            None => self.bounds.push(bound),
        }
        self.bounds.sort();
        self
    }

    pub fn bounds(&self) -> &[DegreeBound] {
        &self.bounds
    }

    pub fn is_unbounded(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        self.bounds.iter().all(|b| b.weight(m) <= b.max)
    }

    /// The coarser of two policies: a monomial survives iff both admit it.
    pub fn meet(&self, other: &Self) -> Self {
        if self == other {
            return self.clone();
        }
        other.bounds.iter().cloned().fold(self.clone(), Self::with_bound)
    }

    /// Drops every bound that mentions one of `vars`.
    pub fn without_vars(&self, vars: &BTreeSet<VarId>) -> Self {
        TruncationPolicy {
            bounds: self
                .bounds
                .iter()
                .filter(|b| !vars.iter().any(|v| b.involves(*v)))
                .cloned()
                .collect(),
        }
    }

    /// Moves every bound by `m`'s weight in it: `s` is admissible here iff
    /// `s / m` is admissible under `self`.
    pub fn shifted_by(&self, m: &Monomial) -> Self {
        TruncationPolicy {
            bounds: self
                .bounds
                .iter()
                .map(|b| DegreeBound { vars: b.vars.clone(), max: &b.max + b.weight(m) })
                .collect(),
        }
    }

    /// True iff `m` has non-negative weight in every bound and strictly positive
    /// weight in at least one, so that its powers are eventually truncated away.
    pub fn is_strictly_positive(&self, m: &Monomial) -> bool {
        let mut positive = false;
        for b in &self.bounds {
            let w = b.weight(m);
            if w.is_negative() {
                return false;
            }
            positive |= w.is_positive();
        }
        positive
    }
}

impl fmt::Display for TruncationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bounds.is_empty() {
            return f.write_str("unbounded");
        }
        for (k, b) in self.bounds.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            let names: Vec<String> = b.vars.iter().map(ToString::to_string).collect();
            write!(f, "deg({}) <= {}", names.join("+"), fmt_rational_short(&b.max))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    #[test]
    fn caps_and_grading_combine() {
        let p = TruncationPolicy::graded([Family::A, Family::B], int(3)).with_cap(VarId::q(), int(8));
        let ok = Monomial::from_pairs([(VarId::a(1), int(2)), (VarId::b(1), int(1)), (VarId::q(), int(8))]);
        let heavy = Monomial::from_pairs([(VarId::a(1), int(2)), (VarId::b(2), int(2))]);
        assert!(p.admits(&ok));
        assert!(!p.admits(&heavy));
        assert!(!p.admits(&Monomial::power(VarId::q(), int(9))));
    }

    #[test]
    fn meet_takes_the_tighter_bound() {
        let a = TruncationPolicy::none().with_cap(VarId::q(), int(4));
        let b = TruncationPolicy::none().with_cap(VarId::q(), int(6)).with_cap(VarId::t(), int(2));
        let m = a.meet(&b);
        assert_eq!(m, TruncationPolicy::none().with_cap(VarId::q(), int(4)).with_cap(VarId::t(), int(2)));
        assert_eq!(m, b.meet(&a));
    }

    #[test]
    fn strict_positivity() {
        let p = TruncationPolicy::none().with_cap(VarId::q(), int(4));
        assert!(p.is_strictly_positive(&Monomial::var(VarId::q())));
        assert!(!p.is_strictly_positive(&Monomial::one()));
        let mixed = Monomial::from_pairs([(VarId::q(), int(1)), (VarId::x(1), int(-1))]);
        assert!(p.is_strictly_positive(&mixed));
        assert!(!TruncationPolicy::none().is_strictly_positive(&Monomial::var(VarId::q())));
    }
}
