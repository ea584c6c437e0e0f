use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::var::{FamilySet, VarId};
use crate::num::{fmt_rational_short, Rational};

/// A product of variables raised to rational powers.
///
/// Stored as `(variable, exponent)` pairs sorted by variable with no zero
/// exponents. The derived ordering is lexicographic on these pairs, which is
/// the canonical serialization order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(VarId, Rational)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, Rational::one())])
    }

    pub fn power(v: VarId, e: Rational) -> Self {
        if e.is_zero() {
            Self::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, Rational)>) -> Self {
        let mut v: Vec<(VarId, Rational)> = pairs.into_iter().collect();
        v.sort_by_key(|a| a.0);
        let mut out: Vec<(VarId, Rational)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some((last, acc)) if *last == var => *acc += e,
                _ => out.push((var, e)),
            }
        }
        out.retain(|(_, e)| !e.is_zero());
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(VarId, Rational)] {
        &self.0
    }

    pub fn exponent(&self, v: VarId) -> Rational {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = &a[i].1 + &b[j].1;
                    if !e.is_zero() {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(v, e)| (*v, -e)).collect())
    }

    pub fn pow(&self, e: &Rational) -> Monomial {
        if e.is_zero() {
            return Self::one();
        }
        Monomial(self.0.iter().map(|(v, x)| (*v, x * e)).collect())
    }

    /// Removes a variable, returning its exponent and the remaining monomial.
    pub fn split_off(&self, v: VarId) -> (Rational, Monomial) {
        let mut rest = self.0.clone();
        match rest.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => {
                let (_, e) = rest.remove(i);
                (e, Monomial(rest))
            }
            Err(_) => (Rational::zero(), Monomial(rest)),
        }
    }

    /// First variable whose exponent is non-integral but not declared rational.
    pub fn undeclared_fraction(&self, declared: FamilySet) -> Option<VarId> {
        self.0
            .iter()
            .find(|(v, e)| !e.is_integer() && !declared.contains(v.family))
            .map(|(v, _)| *v)
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.0.iter().any(|(_, e)| e.is_negative())
    }

    /// Pure lexicographic monomial order (earlier variables dominate). Unlike
    /// the derived `Ord`, this is compatible with multiplication, which exact
    /// polynomial division relies on.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let zero = Rational::zero();
        loop {
            let (va, vb) = (a.get(i), b.get(j));
            let (ea, eb) = match (va, vb) {
                (None, None) => return Ordering::Equal,
                (Some((_, e)), None) => {
                    i += 1;
                    (e, &zero)
                }
                (None, Some((_, e))) => {
                    j += 1;
                    (&zero, e)
                }
                (Some((v, e)), Some((w, f))) => match v.cmp(w) {
                    Ordering::Less => {
                        i += 1;
                        (e, &zero)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (&zero, f)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (e, f)
                    }
                },
            };
            match ea.cmp(eb) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{}", fmt_rational_short(e))?;
            }
        }
        Ok(())
    }
}
