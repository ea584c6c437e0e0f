use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{BasisVector, Diagonal, Generator};
use crate::error::{Error, Result};
use crate::num::{int, Rational};
use crate::series::{series_exp, Monomial, Ring, Series, VarId};

/// A sparse vector with series amplitudes; zero amplitudes are never stored.
pub type FockState<B> = BTreeMap<B, Series>;

/// Guard on the number of terms an exponential may expand to.
const MAX_EXP_TERMS: usize = 10_000;

/// `exp(Σ c_k g_k)` with every `g_k` raising, or every `g_k` lowering, the energy.
#[derive(Clone, Debug)]
pub struct Exponential {
    terms: Vec<(Series, Generator)>,
    raising: bool,
}

impl Exponential {
    pub fn new(terms: Vec<(Series, Generator)>) -> Result<Self> {
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        let raising = terms.iter().all(|(_, g)| g.degree() > Rational::zero());
        let lowering = terms.iter().all(|(_, g)| g.degree() < Rational::zero());
        if !raising && !lowering {
            let gens: Vec<String> = terms.iter().map(|(_, g)| g.to_string()).collect();
            return Err(Error::InvalidExpr(format!(
                "exponent mixes raising and non-raising generators: {}",
                gens.join(", ")
            )));
        }
        let raising = raising && !terms.is_empty();
        Ok(Exponential { terms, raising })
    }

    pub fn terms(&self) -> &[(Series, Generator)] {
        &self.terms
    }

    pub fn is_raising(&self) -> bool {
        self.raising
    }
}

/// An operator built from generators, diagonal twists and exponentials.
#[derive(Clone, Debug)]
pub enum OperatorExpr {
    Identity,
    Gen(Generator),
    /// Multiplication by the eigenvalue of a diagonal operator.
    Diag(Diagonal),
    /// `Π var^{D}`, the exponent read from each basis vector.
    Twist(Vec<(VarId, Diagonal)>),
    Exp(Exponential),
    /// `exp(Σ s_k D_k)` for diagonal `D_k`.
    DiagonalExp(Vec<(Series, Diagonal)>),
    Scalar(Series),
    /// Operators listed left to right; the rightmost acts first.
    Product(Vec<OperatorExpr>),
    Sum(Vec<OperatorExpr>),
}

impl OperatorExpr {
    pub fn exp(terms: Vec<(Series, Generator)>) -> Result<Self> {
        Exponential::new(terms).map(OperatorExpr::Exp)
    }

    pub fn twist(var: VarId, d: Diagonal) -> Self {
        OperatorExpr::Twist(vec![(var, d)])
    }

    /// Checks that every exponential terminates under `ctx`.
    pub fn validate(&self, ctx: &EvalContext) -> Result<()> {
        match self {
            OperatorExpr::Exp(e) if e.raising && ctx.energy_cutoff.is_none() => {
                for (c, g) in &e.terms {
                    let c = ctx.coerce(c)?;
                    if c.terms().any(|(m, _)| !ctx.ring.policy().is_strictly_positive(m)) {
                        return Err(Error::Nontermination(format!(
                            "raising exponential with coefficient {c} of {g} needs an energy cutoff"
                        )));
                    }
                }
                Ok(())
            }
            OperatorExpr::Product(xs) | OperatorExpr::Sum(xs) => xs.iter().try_for_each(|x| x.validate(ctx)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[OperatorExpr], sep: &str| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep);
        match self {
            OperatorExpr::Identity => f.write_str("1"),
            OperatorExpr::Gen(g) => write!(f, "{g}"),
            OperatorExpr::Diag(d) => write!(f, "{d:?}"),
            OperatorExpr::Twist(ts) => {
                let parts: Vec<String> = ts.iter().map(|(v, d)| format!("{v}^{d:?}")).collect();
                f.write_str(&parts.join(" "))
            }
            OperatorExpr::Exp(e) => {
                let parts: Vec<String> = e.terms.iter().map(|(c, g)| format!("({c})*{g}")).collect();
                write!(f, "exp({})", parts.join(" + "))
            }
            OperatorExpr::DiagonalExp(ts) => {
                let parts: Vec<String> = ts.iter().map(|(c, d)| format!("({c})*{d:?}")).collect();
                write!(f, "exp({})", parts.join(" + "))
            }
            OperatorExpr::Scalar(s) => write!(f, "({s})"),
            OperatorExpr::Product(xs) => f.write_str(&join(xs, " ")),
            OperatorExpr::Sum(xs) => write!(f, "[{}]", join(xs, " + ")),
        }
    }
}

/// Coefficient ring, energy cutoff and a count of basis vectors dropped at the cutoff.
#[derive(Debug)]
pub struct EvalContext {
    pub ring: Ring,
    pub energy_cutoff: Option<Rational>,
    dropped: AtomicUsize,
}

impl EvalContext {
    pub fn new(ring: Ring) -> Self {
        EvalContext { ring, energy_cutoff: None, dropped: AtomicUsize::new(0) }
    }

    pub fn with_energy_cutoff(mut self, cutoff: Rational) -> Self {
        self.energy_cutoff = Some(cutoff);
        self
    }

    /// Basis vectors discarded so far for exceeding the cutoff.
    pub fn dropped(&self) -> usize {
        self.dropped.load(Ordering::Relaxed)
    }

    /// Moves a coefficient into the context ring.
    pub fn coerce(&self, s: &Series) -> Result<Series> {
        Ok(s.redeclare(self.ring.rational_families())?.truncate_to(self.ring.policy()))
    }

    fn admits<B: BasisVector>(&self, b: &B) -> bool {
        match &self.energy_cutoff {
            Some(e) if b.energy() > *e => {
                self.dropped.fetch_add(1, Ordering::Relaxed);
                false
            }
            _ => true,
        }
    }
}

fn add_into<B: BasisVector>(state: &mut FockState<B>, b: B, amp: Series) -> Result<()> {
    if amp.is_zero() {
        return Ok(());
    }
    match state.entry(b) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(amp);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().try_add(&amp)?;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
    Ok(())
}

fn apply_generator<B: BasisVector>(g: &Generator, state: &FockState<B>, ctx: &EvalContext) -> Result<FockState<B>> {
    let mut out = FockState::new();
    for (b, amp) in state {
        for (w, c) in b.apply_generator(g)? {
            if ctx.admits(&w) {
                add_into(&mut out, w, amp.scale(&c))?;
            }
        }
    }
    Ok(out)
}

fn map_amplitudes<B: BasisVector>(
    state: &FockState<B>,
    mut f: impl FnMut(&B, &Series) -> Result<Series>,
) -> Result<FockState<B>> {
    let mut out = FockState::new();
    for (b, amp) in state {
        add_into(&mut out, b.clone(), f(b, amp)?)?;
    }
    Ok(out)
}

fn apply_exponential<B: BasisVector>(e: &Exponential, state: &FockState<B>, ctx: &EvalContext) -> Result<FockState<B>> {
    let coeffs: Vec<(Series, Generator)> =
        e.terms.iter().map(|(c, g)| Ok((ctx.coerce(c)?, *g))).collect::<Result<_>>()?;
    let mut total = state.clone();
    let mut term = state.clone();
    for k in 1.. {
        if term.is_empty() {
            return Ok(total);
        }
        if k > MAX_EXP_TERMS {
            return Err(Error::Nontermination(format!("exponential did not terminate after {MAX_EXP_TERMS} terms")));
        }
        let mut next = FockState::new();
        for (c, g) in &coeffs {
            for (b, amp) in apply_generator(g, &term, ctx)? {
                add_into(&mut next, b, amp.try_mul(c)?)?;
            }
        }
        let inv = Rational::one() / int(k as i64);
        term = map_amplitudes(&next, |_, a| Ok(a.scale(&inv)))?;
        for (b, amp) in &term {
            add_into(&mut total, b.clone(), amp.clone())?;
        }
    }
    unreachable!("the loop only exits by returning")
}

fn eval<B: BasisVector>(expr: &OperatorExpr, state: &FockState<B>, ctx: &EvalContext) -> Result<FockState<B>> {
    match expr {
        OperatorExpr::Identity => Ok(state.clone()),
        OperatorExpr::Gen(g) => apply_generator(g, state, ctx),
        OperatorExpr::Diag(d) => map_amplitudes(state, |b, a| Ok(a.scale(&b.eigenvalue(*d)?))),
        OperatorExpr::Twist(ts) => map_amplitudes(state, |b, a| {
            let pairs = ts.iter().map(|(v, d)| Ok((*v, b.eigenvalue(*d)?))).collect::<Result<Vec<_>>>()?;
            a.mul_term(&Monomial::from_pairs(pairs), &Rational::one())
        }),
        OperatorExpr::Exp(e) => apply_exponential(e, state, ctx),
        OperatorExpr::DiagonalExp(ts) => {
            let coeffs: Vec<(Series, Diagonal)> =
                ts.iter().map(|(c, d)| Ok((ctx.coerce(c)?, *d))).collect::<Result<_>>()?;
            map_amplitudes(state, |b, a| {
                let mut exponent = ctx.ring.zero();
                for (c, d) in &coeffs {
                    exponent = exponent.try_add(&c.scale(&b.eigenvalue(*d)?))?;
                }
                a.try_mul(&series_exp(&exponent)?)
            })
        }
        OperatorExpr::Scalar(s) => {
            let s = ctx.coerce(s)?;
            map_amplitudes(state, |_, a| a.try_mul(&s))
        }
        OperatorExpr::Product(xs) => {
            let mut cur = state.clone();
            for x in xs.iter().rev() {
                cur = eval(x, &cur, ctx)?;
            }
            Ok(cur)
        }
        OperatorExpr::Sum(xs) => {
            let mut out = FockState::new();
            for x in xs {
                for (b, a) in eval(x, state, ctx)? {
                    add_into(&mut out, b, a)?;
                }
            }
            Ok(out)
        }
    }
}

/// Applies `expr` to a state whose amplitudes live in `ctx.ring`.
pub fn apply_operator<B: BasisVector>(expr: &OperatorExpr, state: &FockState<B>, ctx: &EvalContext) -> Result<FockState<B>> {
    expr.validate(ctx)?;
    let state = state.iter().map(|(b, a)| Ok((b.clone(), ctx.coerce(a)?))).collect::<Result<FockState<B>>>()?;
    eval(expr, &state, ctx)
}

/// Applies `expr` to a single basis vector with amplitude one.
pub fn apply_to_vector<B: BasisVector>(expr: &OperatorExpr, v: &B, ctx: &EvalContext) -> Result<FockState<B>> {
    apply_operator(expr, &FockState::from([(v.clone(), ctx.ring.one())]), ctx)
}

/// `Σ_v ⟨v| expr |v⟩` over `basis`, evaluated in parallel and summed in basis order.
pub fn brute_trace<B: BasisVector>(expr: &OperatorExpr, basis: &[B], ctx: &EvalContext) -> Result<Series> {
    expr.validate(ctx)?;
    let diagonal: Vec<Result<Series>> = basis
        .par_iter()
        .map(|v| {
            let start = FockState::from([(v.clone(), ctx.ring.one())]);
            let mut image = eval(expr, &start, ctx)?;
            Ok(image.remove(v).unwrap_or_else(|| ctx.ring.zero()))
        })
        .collect();
    diagonal.into_iter().try_fold(ctx.ring.zero(), |acc, d| acc.try_add(&d?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{basis_level1, commutator_on, ChargeSelection, MayaVector};
    use crate::partitions::Partition;
    use crate::series::{Family, TruncationPolicy};

    fn ring() -> Ring {
        Ring::new(TruncationPolicy::none().with_cap(VarId::q(), int(5)).with_graded([Family::A], int(3)))
    }

    fn v(parts: &[i64]) -> MayaVector {
        MayaVector::new(0, Partition::new(parts.to_vec()).unwrap())
    }

    #[test]
    fn lowering_exponential_fixes_vacuum() {
        let r = ring();
        let ctx = EvalContext::new(r.clone());
        let e = OperatorExpr::exp(vec![(r.var(VarId::b(1)), Generator::Alpha(1))]).unwrap();
        let out = apply_to_vector(&e, &MayaVector::vacuum(), &ctx).unwrap();
        assert_eq!(out, FockState::from([(MayaVector::vacuum(), r.one())]));
    }

    #[test]
    fn twisted_exponential_on_vacuum() {
        let r = ring();
        let ctx = EvalContext::new(r.clone()).with_energy_cutoff(int(2));
        let a1 = r.var(VarId::a(1));
        let q = r.var(VarId::q());
        let expr = OperatorExpr::Product(vec![
            OperatorExpr::twist(VarId::q(), Diagonal::Energy),
            OperatorExpr::exp(vec![(a1.clone(), Generator::Alpha(-1))]).unwrap(),
        ]);
        let out = apply_to_vector(&expr, &MayaVector::vacuum(), &ctx).unwrap();
        let half_a2q2 = (&(&a1 * &a1) * &(&q * &q)).scale(&crate::num::rat(1, 2));
        // α_{-1}²|0⟩ = |(2)⟩ + |(1,1)⟩
        let expected = FockState::from([
            (MayaVector::vacuum(), r.one()),
            (v(&[1]), &a1 * &q),
            (v(&[2]), half_a2q2.clone()),
            (v(&[1, 1]), half_a2q2),
        ]);
        assert_eq!(out, expected);
        assert!(ctx.dropped() > 0);
    }

    #[test]
    fn mixed_exponential_is_rejected() {
        let r = ring();
        let bad = OperatorExpr::exp(vec![(r.one(), Generator::Alpha(1)), (r.one(), Generator::Alpha(-1))]);
        assert!(matches!(bad, Err(Error::InvalidExpr(_))));
    }

    #[test]
    fn raising_without_cutoff_needs_positive_coefficients() {
        let r = ring();
        let ctx = EvalContext::new(r.clone());
        let e = OperatorExpr::exp(vec![(r.var(VarId::b(1)), Generator::Alpha(-1))]).unwrap();
        assert!(matches!(apply_to_vector(&e, &MayaVector::vacuum(), &ctx), Err(Error::Nontermination(_))));
        let ok = OperatorExpr::exp(vec![(r.var(VarId::q()), Generator::Alpha(-1))]).unwrap();
        assert!(apply_to_vector(&ok, &MayaVector::vacuum(), &ctx).is_ok());
    }

    #[test]
    fn traces_of_simple_operators() {
        let r = ring();
        let ctx = EvalContext::new(r.clone());
        let basis = basis_level1(&int(5), ChargeSelection::Zero);
        let id = brute_trace(&OperatorExpr::Identity, &basis, &ctx).unwrap();
        assert_eq!(id, r.constant(int(basis.len() as i64)));
        let t = brute_trace(&OperatorExpr::twist(VarId::q(), Diagonal::Energy), &basis, &ctx).unwrap();
        let q = r.var(VarId::q());
        let mut expected = r.zero();
        for (k, c) in [1, 1, 2, 3, 5, 7].iter().enumerate() {
            expected = &expected + &q.pow(k as u32).unwrap().scale(&int(*c));
        }
        assert_eq!(t, expected);
    }

    #[test]
    fn boson_commutator() {
        for b in basis_level1(&int(4), ChargeSelection::All) {
            for n in 1..=3 {
                let c = commutator_on(&Generator::Alpha(n), &Generator::Alpha(-n), &b).unwrap();
                assert_eq!(c, crate::fock::Combination::from([(b.clone(), int(n))]));
            }
        }
    }
}
