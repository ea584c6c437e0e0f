//! Exact sparse multivariate truncated series.
//!
//! A [`Series`] is a finite map from [`Monomial`] to nonzero rational
//! coefficient, paired with the [`TruncationPolicy`] that decides which
//! monomials are retained and the set of families allowed to carry
//! non-integer exponents. Every operation re-truncates its result, so stored
//! terms are always admissible.

mod monomial;
mod ops;
mod policy;
mod serial;
mod var;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

pub use monomial::Monomial;
pub use ops::{determinant, series_div_exact, series_exp, series_invert, series_log, series_substitute};
pub use policy::{DegreeBound, TruncationPolicy, VarSel};
pub use serial::TermJson;
pub use var::{Family, FamilySet, VarId};

use crate::error::{Error, Result};
use crate::num::{fmt_rational_short, int, Rational};

/// Variable declarations shared by a family of series: the truncation policy
/// and which families admit rational exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    policy: Arc<TruncationPolicy>,
    rational: FamilySet,
}

impl Default for Ring {
    fn default() -> Self {
        Ring::new(TruncationPolicy::none())
    }
}

impl Ring {
    pub fn new(policy: TruncationPolicy) -> Self {
        Ring { policy: Arc::new(policy), rational: FamilySet::empty() }
    }

    /// Allows non-integer exponents on `family`.
    pub fn with_rational(mut self, family: Family) -> Self {
        self.rational = self.rational.with(family);
        self
    }

    pub fn with_rational_set(mut self, set: FamilySet) -> Self {
        self.rational = set;
        self
    }

    pub fn with_policy(&self, policy: TruncationPolicy) -> Self {
        Ring { policy: Arc::new(policy), rational: self.rational }
    }

    pub fn policy(&self) -> &TruncationPolicy {
        &self.policy
    }

    pub fn rational_families(&self) -> FamilySet {
        self.rational
    }

    pub fn zero(&self) -> Series {
        Series { terms: BTreeMap::new(), policy: self.policy.clone(), rational: self.rational }
    }

    pub fn constant(&self, c: Rational) -> Series {
        let mut s = self.zero();
        s.insert(Monomial::one(), c);
        s
    }

    pub fn one(&self) -> Series {
        self.constant(Rational::one())
    }

    pub fn var(&self, v: VarId) -> Series {
        self.term(Monomial::var(v), Rational::one())
            .expect("a plain variable has an integral exponent")
    }

    /// `c * m`, truncated. Fails if `m` uses an undeclared rational exponent.
    pub fn term(&self, m: Monomial, c: Rational) -> Result<Series> {
        self.check_monomial(&m)?;
        let mut s = self.zero();
        s.insert(m, c);
        Ok(s)
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Series> {
        let mut s = self.zero();
        for (m, c) in terms {
            self.check_monomial(&m)?;
            s.accumulate(m, c);
        }
        Ok(s)
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        match m.undeclared_fraction(self.rational) {
            Some(v) => Err(Error::VariableMismatch(format!(
                "variable {v} carries a non-integer exponent in {m} but is not declared exponent-rational"
            ))),
            None => Ok(()),
        }
    }
}

/// Truncated series with exact rational coefficients.
#[derive(Clone, Debug)]
pub struct Series {
    terms: BTreeMap<Monomial, Rational>,
    policy: Arc<TruncationPolicy>,
    rational: FamilySet,
}

impl Series {
    pub fn ring(&self) -> Ring {
        Ring { policy: self.policy.clone(), rational: self.rational }
    }

    pub fn policy(&self) -> &TruncationPolicy {
        &self.policy
    }

    pub fn rational_families(&self) -> FamilySet {
        self.rational
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Number of stored terms; `is_zero` tests emptiness.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `m`; zero when absent or inadmissible.
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    /// The single `(monomial, coefficient)` pair of a one-term series.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn insert(&mut self, m: Monomial, c: Rational) {
        if !c.is_zero() && self.policy.admits(&m) {
            self.terms.insert(m, c);
        }
    }

    fn accumulate(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || !self.policy.admits(&m) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn combined_ring(&self, other: &Series) -> Result<Ring> {
        if self.rational != other.rational {
            return Err(Error::VariableMismatch(format!(
                "exponent-rational declarations differ: {:?} vs {:?}",
                self.rational.iter().collect::<Vec<_>>(),
                other.rational.iter().collect::<Vec<_>>()
            )));
        }
        let policy = if Arc::ptr_eq(&self.policy, &other.policy) || self.policy == other.policy {
            self.policy.clone()
        } else {
            Arc::new(self.policy.meet(&other.policy))
        };
        Ok(Ring { policy, rational: self.rational })
    }

    /// Re-truncates under a (usually coarser) policy.
    pub fn truncate_to(&self, policy: &TruncationPolicy) -> Series {
        let mut s = self.ring().with_policy(policy.clone()).zero();
        for (m, c) in &self.terms {
            s.insert(m.clone(), c.clone());
        }
        s
    }

    /// Same terms, different exponent-rational declaration.
    pub fn redeclare(&self, rational: FamilySet) -> Result<Series> {
        let ring = self.ring().with_rational_set(rational);
        for m in self.terms.keys() {
            ring.check_monomial(m)?;
        }
        Ok(Series { terms: self.terms.clone(), policy: self.policy.clone(), rational })
    }

    pub fn try_add(&self, other: &Series) -> Result<Series> {
        let ring = self.combined_ring(other)?;
        let mut out = ring.zero();
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series> {
        self.try_add(&other.neg_ref())
    }

    /// Cauchy product, discarding inadmissible products as they are formed.
    pub fn try_mul(&self, other: &Series) -> Result<Series> {
        let ring = self.combined_ring(other)?;
        let mut out = ring.zero();
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let m = m1.mul(m2);
                if out.policy.admits(&m) {
                    out.accumulate(m, c1 * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Series {
        let mut out = self.ring().zero();
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.terms.insert(m.clone(), x * c);
        }
        out
    }

    /// Multiplies by `c * m`. Fails on undeclared rational exponents.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Result<Series> {
        let ring = self.ring();
        let mut out = ring.zero();
        if c.is_zero() {
            return Ok(out);
        }
        for (k, x) in &self.terms {
            let prod = k.mul(m);
            ring.check_monomial(&prod)?;
            out.insert(prod, x * c);
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Series {
        self.scale(&int(-1))
    }

    pub fn pow(&self, e: u32) -> Result<Series> {
        let mut acc = self.ring().one();
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Terms whose exponent of `v` equals `e`, with `v` removed.
    pub fn slice(&self, v: VarId, e: &Rational) -> Series {
        let mut out = self.ring().zero();
        for (m, c) in &self.terms {
            let (ev, rest) = m.split_off(v);
            if &ev == e {
                out.terms.insert(rest, c.clone());
            }
        }
        out
    }

    /// Maps every coefficient, dropping zeros.
    pub fn map_terms(&self, mut f: impl FnMut(&Monomial, &Rational) -> Option<(Monomial, Rational)>) -> Result<Series> {
        let ring = self.ring();
        let mut out = ring.zero();
        for (m, c) in &self.terms {
            if let Some((m2, c2)) = f(m, c) {
                ring.check_monomial(&m2)?;
                out.accumulate(m2, c2);
            }
        }
        Ok(out)
    }
}

/// Equal iff the term maps agree after both are truncated to the coarser policy.
impl PartialEq for Series {
    fn eq(&self, other: &Series) -> bool {
        if self.policy == other.policy {
            return self.terms == other.terms;
        }
        let meet = self.policy.meet(&other.policy);
        self.truncate_to(&meet).terms == other.truncate_to(&meet).terms
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.neg_ref()
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&fmt_rational_short(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational_short(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn q_ring(order: i64) -> Ring {
        Ring::new(TruncationPolicy::none().with_cap(VarId::q(), int(order)))
    }

    fn poly(ring: &Ring, v: VarId, coeffs: &[i64]) -> Series {
        ring.from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::power(v, int(k as i64)), int(*c))),
        )
        .unwrap()
    }

    #[test]
    fn add_cancels_and_respects_identity() {
        let r = q_ring(5);
        let a = poly(&r, VarId::q(), &[1, 1]);
        let b = poly(&r, VarId::q(), &[1, -1]);
        assert_eq!(&a + &b, r.constant(int(2)));
        assert_eq!(&a + &r.zero(), a);
        let c = poly(&r, VarId::q(), &[0, 1, 1]);
        let d = poly(&r, VarId::q(), &[0, 0, 1]);
        assert_eq!(&c + &d, poly(&r, VarId::q(), &[0, 1, 2]));
    }

    #[test]
    fn geometric_series_product_is_one() {
        for order in 0..8 {
            let r = q_ring(order);
            let geo = poly(&r, VarId::q(), &vec![1; order as usize + 1]);
            let one_minus_q = poly(&r, VarId::q(), &[1, -1]);
            assert_eq!(&one_minus_q * &geo, r.one());
            assert_eq!(&geo * &r.one(), geo);
        }
    }

    #[test]
    fn laurent_product_with_negative_exponents() {
        let r = Ring::default();
        let xy = Monomial::from_pairs([(VarId::x(1), int(1)), (VarId::y(1), int(1))]);
        let a = r.from_terms([(Monomial::one(), int(1)), (xy.clone(), int(1))]).unwrap();
        let b = r.from_terms([(Monomial::one(), int(1)), (xy.inverse(), int(1))]).unwrap();
        let expected = r
            .from_terms([(Monomial::one(), int(2)), (xy.clone(), int(1)), (xy.inverse(), int(1))])
            .unwrap();
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn coefficient_lookup() {
        let r = q_ring(4);
        let s = poly(&r, VarId::q(), &[1, 0, 3]);
        assert_eq!(s.coefficient(&Monomial::power(VarId::q(), int(2))), int(3));
        assert_eq!(s.coefficient(&Monomial::power(VarId::q(), int(9))), int(0));
        assert_eq!(r.zero().coefficient(&Monomial::var(VarId::t())), int(0));
    }

    #[test]
    fn undeclared_rational_exponent_is_rejected() {
        let r = Ring::default();
        let half = Monomial::power(VarId::q(), rat(1, 2));
        assert!(matches!(r.term(half.clone(), int(1)), Err(Error::VariableMismatch(_))));
        let declared = r.clone().with_rational(Family::Q);
        assert!(declared.term(half, int(1)).is_ok());
        assert!(matches!(r.one().try_add(&declared.one()), Err(Error::VariableMismatch(_))));
    }

    #[test]
    fn mixed_policies_truncate_to_the_coarser() {
        let a = poly(&q_ring(5), VarId::q(), &[1, 1, 1, 1, 1, 1]);
        let b = poly(&q_ring(2), VarId::q(), &[1, 1, 1]);
        assert_eq!(a, b);
        let sum = &a + &b;
        assert_eq!(sum.len(), 3);
    }

    #[test]
    fn display_is_readable() {
        let r = q_ring(3);
        let s = poly(&r, VarId::q(), &[1, -2, 1]);
        assert_eq!(s.to_string(), "1 - 2*q + q^2");
    }
}
