use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{Monomial, Ring, Series, TruncationPolicy, VarId};
use crate::error::{Error, Result};
use crate::num::{int, pow, Rational};

/// The unique term `t0` of `a` such that every `m / t0` is strictly positive
/// under `policy`, i.e. `a = t0 (1 + u)` with `u` truncating to zero in finitely
/// many powers.
fn unit_term<'a>(a: &'a Series, policy: &TruncationPolicy) -> Option<(&'a Monomial, &'a Rational)> {
    if let Some(t) = a.as_monomial() {
        return Some(t);
    }
    a.terms().find(|(t0, _)| {
        let inv = t0.inverse();
        a.terms()
            .filter(|(m, _)| m != t0)
            .all(|(m, _)| policy.is_strictly_positive(&m.mul(&inv)))
    })
}

/// Sums `Σ_k coeff(k) u^k` until the powers of `u` truncate to zero.
fn power_sum(u: &Series, mut coeff: impl FnMut(u32) -> Rational) -> Result<Series> {
    let mut acc = u.ring().zero();
    let mut power = u.ring().one();
    let mut k = 0u32;
    while !power.is_zero() {
        let c = coeff(k);
        if !c.is_zero() {
            acc = acc.try_add(&power.scale(&c))?;
        }
        power = power.try_mul(u)?;
        k += 1;
    }
    Ok(acc)
}

/// Multiplicative inverse, factoring out the dominant monomial first.
///
/// `a = c t0 (1 + u)` where every term of `u` is strictly positive; then
/// `1/a = c^-1 t0^-1 Σ (-u)^k`, the sum being formed under the policy shifted by
/// `t0` so that the final product lands exactly on the admissible window.
pub fn series_invert(a: &Series) -> Result<Series> {
    if a.is_zero() {
        return Err(Error::NotInvertible("zero series".into()));
    }
    let policy = a.policy().clone();
    let (t0, c0) = unit_term(a, &policy).ok_or_else(|| {
        Error::NotInvertible(format!("no unit leading term in {a} under {policy}"))
    })?;
    let (t0, c0) = (t0.clone(), c0.clone());
    let t0_inv = t0.inverse();
    let c0_inv = c0.recip();
    let ring = a.ring();
    ring.check_monomial(&t0_inv)?;

    let inner = ring.with_policy(policy.shifted_by(&t0));
    let u = inner.from_terms(
        a.terms()
            .filter(|(m, _)| **m != t0)
            .map(|(m, c)| (m.mul(&t0_inv), -(c * &c0_inv))),
    )?;
    let geometric = power_sum(&u, |_| Rational::one())?;
    let mut out = ring.zero();
    for (m, c) in geometric.terms() {
        out.accumulate(m.mul(&t0_inv), c * &c0_inv);
    }
    Ok(out)
}

fn require_positive(a: &Series, what: &str) -> Result<()> {
    for (m, _) in a.terms() {
        if !a.policy().is_strictly_positive(m) {
            return Err(Error::Policy(format!(
                "{what}: term {m} has non-positive valuation under {}",
                a.policy()
            )));
        }
    }
    Ok(())
}

/// `Σ_k a^k / k!`, for `a` with positive valuation.
pub fn series_exp(a: &Series) -> Result<Series> {
    if !a.constant_term().is_zero() {
        return Err(Error::Divergent(format!("exp of a series with constant term {}", a.constant_term())));
    }
    require_positive(a, "exp")?;
    let mut factorial = Rational::one();
    power_sum(a, |k| {
        if k > 0 {
            factorial *= int(k as i64);
        }
        factorial.recip()
    })
}

/// `log(1 + u) = Σ_{k≥1} (-1)^{k+1} u^k / k`.
pub fn series_log(a: &Series) -> Result<Series> {
    if !a.constant_term().is_one() {
        return Err(Error::NotInvertible(format!(
            "log needs constant term 1, found {}",
            a.constant_term()
        )));
    }
    let u = a.try_sub(&a.ring().one())?;
    require_positive(&u, "log")?;
    power_sum(&u, |k| match k {
        0 => Rational::zero(),
        k if k % 2 == 1 => Rational::new(1.into(), (k as i64).into()),
        k => Rational::new((-1).into(), (k as i64).into()),
    })
}

/// Simultaneous substitution `v ↦ bindings[v]`.
///
/// The result keeps `a`'s bounds on unbound variables, meets the bindings'
/// policies and unions all exponent-rational declarations. Non-integer exponents
/// of a bound variable need a pure monomial binding with coefficient 1.
pub fn series_substitute(a: &Series, bindings: &BTreeMap<VarId, Series>) -> Result<Series> {
    let bound: std::collections::BTreeSet<VarId> = bindings.keys().copied().collect();
    let mut policy = a.policy().without_vars(&bound);
    let mut rational = a.rational_families();
    for b in bindings.values() {
        policy = policy.meet(b.policy());
        rational = rational.union(b.rational_families());
    }
    let ring = Ring::new(policy).with_rational_set(rational);

    let mut lifted = BTreeMap::new();
    for (v, b) in bindings {
        let b = b.redeclare(rational)?.truncate_to(ring.policy());
        let monomial = b.as_monomial().map(|(m, c)| (m.clone(), c.clone()));
        if monomial.is_none() {
            let truncated_in_v = a.policy().bounds().iter().any(|bd| bd.involves(*v));
            for (m, _) in b.terms() {
                let bad_sign = ring.policy().bounds().iter().any(|bd| bd.weight(m).is_negative());
                if bad_sign || (truncated_in_v && !ring.policy().is_strictly_positive(m)) {
                    return Err(Error::Policy(format!(
                        "binding {v} ↦ {b} has a term {m} that the result policy {} cannot truncate",
                        ring.policy()
                    )));
                }
            }
        }
        lifted.insert(*v, (b, monomial));
    }

    let mut powers: BTreeMap<(VarId, Rational), Series> = BTreeMap::new();
    let mut out = ring.zero();
    for (m, c) in a.terms() {
        let mut rest = Vec::new();
        let mut factor = ring.constant(c.clone());
        for (v, e) in m.pairs() {
            let Some((b, mono)) = lifted.get(v) else {
                rest.push((*v, e.clone()));
                continue;
            };
            let image = match mono {
                Some((bm, bc)) => {
                    let coeff = if e.is_integer() {
                        let k = e.numer().magnitude().clone();
                        let k: u32 = k.try_into().map_err(|_| Error::Policy(format!("exponent {e} too large")))?;
                        let p = pow(bc, k);
                        if e.is_negative() { p.recip() } else { p }
                    } else if bc.is_one() {
                        Rational::one()
                    } else {
                        return Err(Error::VariableMismatch(format!(
                            "{v}^{e} needs a coefficient-1 monomial binding, got {b}"
                        )));
                    };
                    ring.term(bm.pow(e), coeff)?
                }
                None => {
                    if !e.is_integer() {
                        return Err(Error::VariableMismatch(format!(
                            "{v}^{e} cannot be substituted by the non-monomial {b}"
                        )));
                    }
                    match powers.get(&(*v, e.clone())) {
                        Some(p) => p.clone(),
                        None => {
                            let k: u32 = e.numer().magnitude().clone().try_into().map_err(|_| {
                                Error::Policy(format!("exponent {e} too large"))
                            })?;
                            let base = if e.is_negative() { series_invert(b)? } else { b.clone() };
                            let p = base.pow(k)?;
                            powers.insert((*v, e.clone()), p.clone());
                            p
                        }
                    }
                }
            };
            factor = factor.try_mul(&image)?;
        }
        let rest = Monomial::from_pairs(rest);
        out = out.try_add(&factor.mul_term(&rest, &Rational::one())?)?;
    }
    Ok(out)
}

/// Exact quotient `a / b` of Laurent polynomials, by division in the pure
/// lexicographic order. Fails when `b` does not divide `a`.
pub fn series_div_exact(a: &Series, b: &Series) -> Result<Series> {
    let lead = |s: &Series| s.terms().max_by(|x, y| x.0.lex_cmp(y.0)).map(|(m, c)| (m.clone(), c.clone()));
    let low = |s: &Series| s.terms().min_by(|x, y| x.0.lex_cmp(y.0)).map(|(m, _)| m.clone());
    let (lb, cb) = lead(b).ok_or_else(|| Error::NotInvertible("division by zero".into()))?;
    let ring = a.ring();
    let mut quotient = ring.zero();
    if a.is_zero() {
        return Ok(quotient);
    }
    let floor = low(a).expect("nonzero").mul(&low(b).expect("nonzero").inverse());
    let mut remainder = a.clone();
    while let Some((lr, cr)) = lead(&remainder) {
        let qm = lr.mul(&lb.inverse());
        if qm.lex_cmp(&floor) == Ordering::Less {
            return Err(Error::NotInvertible(format!("{b} does not divide {a}")));
        }
        let qc = cr / &cb;
        let step = ring.term(qm, qc)?;
        quotient = quotient.try_add(&step)?;
        remainder = remainder.try_sub(&step.try_mul(b)?)?;
    }
    Ok(quotient)
}

/// Determinant by division-free cofactor expansion over column subsets.
pub fn determinant(ring: &Ring, matrix: &[Vec<Series>]) -> Result<Series> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::Arity(format!("determinant of a non-square {n}-row matrix")));
    }
    if n == 0 {
        return Ok(ring.one());
    }
    let mut layer: BTreeMap<usize, Series> = BTreeMap::from([(0usize, ring.one())]);
    for row in matrix {
        let mut next: BTreeMap<usize, Series> = BTreeMap::new();
        for (mask, partial) in &layer {
            for (j, entry) in row.iter().enumerate() {
                if mask & (1 << j) != 0 || entry.is_zero() {
                    continue;
                }
                let inversions = (mask >> (j + 1)).count_ones();
                let mut term = partial.try_mul(entry)?;
                if inversions % 2 == 1 {
                    term = -&term;
                }
                let slot = next.entry(mask | (1 << j)).or_insert_with(|| ring.zero());
                *slot = slot.try_add(&term)?;
            }
        }
        next.retain(|_, s| !s.is_zero());
        layer = next;
    }
    Ok(layer.remove(&((1 << n) - 1)).unwrap_or_else(|| ring.zero()))
}
