//! Brute-force traces over truncated Fock spaces set against closed forms.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{
    a_index_window, anticommutator_on, apply_alpha, apply_alpha_bilinear, apply_psi, casimir_exponents, commutator_on, apply_a_gen, apply_gl_gen, basis_level1, basis_level_l, basis_modes, brute_trace,
    highest_weight_vector_in, apply_to_vector, ChargeSelection, CliffordMonomial, Diagonal, EvalContext,
    FlavorWindow, Generator, MayaVector, OperatorExpr,
};
use crate::num::{binomial, factorial, int, pow, rat, HalfInt, Rational};
use crate::partitions::{generalized_partitions, generate_partitions, is_horizontal_strip, Partition};
use crate::report::{CheckMode, ComparisonReport};
use crate::series::{series_invert, Family, Monomial, Ring, Series, TruncationPolicy, VarId};
use crate::symfunc::{casimir_eigenvalue, casimir_eigenvalue_frobenius, CompleteTable, PowerSumSpec};

fn monomial_series(ring: &Ring, pairs: Vec<(VarId, Rational)>, c: Rational) -> Result<Series> {
    ring.term(Monomial::from_pairs(pairs), c)
}

/// `1 + c·m` in `ring`.
fn one_plus(ring: &Ring, m: Monomial, c: Rational) -> Result<Series> {
    ring.one().try_add(&ring.term(m, c)?)
}

/// The ring of the boson trace: `q ≤ q_order`, total `A`/`B` degree `≤ ab_degree`.
pub fn ze_ring(q_order: u32, ab_degree: u32) -> Ring {
    Ring::new(
        TruncationPolicy::none()
            .with_cap(VarId::q(), int(q_order as i64))
            .with_graded([Family::A, Family::B], int(ab_degree as i64)),
    )
}

/// `Π_n Σ_k Σ_{l ≤ k} n^l A_n^l B_n^l / l! · C(k, l) q^{nk}` for `n ≤ q_order`.
pub fn ze_formula(q_order: u32, ab_degree: u32) -> Result<Series> {
    let ring = ze_ring(q_order, ab_degree);
    let mut total = ring.one();
    for n in 1..=q_order as i64 {
        let mut factor = ring.zero();
        for k in 0..=(q_order as i64 / n) {
            for l in 0..=k.min(ab_degree as i64) {
                let c = pow(&int(n), l as u32) / factorial(l as u32) * binomial(k as u32, l as u32);
                let m = vec![(VarId::a(n), int(l)), (VarId::b(n), int(l)), (VarId::q(), int(n * k))];
                factor = factor.try_add(&monomial_series(&ring, m, c)?)?;
            }
        }
        total = total.try_mul(&factor)?;
    }
    Ok(total)
}

/// `q^{L_0} exp(Σ A_n α_{-n}) exp(Σ B_n α_n)` with `n ≤ n_max`.
pub fn ze_operator(ring: &Ring, n_max: i64) -> Result<OperatorExpr> {
    let a = (1..=n_max).map(|n| (ring.var(VarId::a(n)), Generator::Alpha(-n))).collect();
    let b = (1..=n_max).map(|n| (ring.var(VarId::b(n)), Generator::Alpha(n))).collect();
    Ok(OperatorExpr::Product(vec![
        OperatorExpr::twist(VarId::q(), Diagonal::Energy),
        OperatorExpr::exp(a)?,
        OperatorExpr::exp(b)?,
    ]))
}

/// The same operator traced over charge-0 vectors of energy `≤ energy`.
pub fn ze_brute(energy: u32, q_order: u32, ab_degree: u32) -> Result<Series> {
    let ring = ze_ring(q_order, ab_degree);
    let ctx = EvalContext::new(ring.clone()).with_energy_cutoff(int(energy as i64));
    let basis = basis_level1(&int(energy as i64), ChargeSelection::Zero);
    brute_trace(&ze_operator(&ring, energy as i64)?, &basis, &ctx)
}

pub fn ze_check(energy: u32, q_order: u32, ab_degree: u32) -> Result<ComparisonReport> {
    let brute = ze_brute(energy, q_order, ab_degree)?;
    // the brute side only sees q-degrees up to the energy cutoff
    let brute = brute.truncate_to(&brute.policy().clone().with_cap(VarId::q(), int(energy as i64)));
    let formula = ze_formula(q_order, ab_degree)?;
    Ok(ComparisonReport::compare("brute trace", &brute, "product formula", &formula)
        .with_param("energy", energy)
        .with_param("q_order", q_order)
        .with_param("ab_degree", ab_degree)
        .with_mode(CheckMode::Asserted))
}

/// Ring with exponent-rational `y_j`.
pub fn bo_ring(policy: TruncationPolicy) -> Ring {
    Ring::new(policy).with_rational(Family::Y)
}

/// `y_0^{±1} Π_{1≤j≤jmax} y_j^{e_j}` for a particle (`+`) or hole (`-`) at mode `r`.
fn bo_monomial(r: HalfInt, particle: bool, jmax: u32) -> Monomial {
    let mut pairs = vec![(VarId::y(0), int(if particle { 1 } else { -1 }))];
    for j in 1..=jmax {
        let e = r.pow(j);
        let e = if particle || j % 2 == 1 { e } else { -e };
        pairs.push((VarId::y(j as i64), e));
    }
    Monomial::from_pairs(pairs)
}

/// `Π_{n < mode_count} (1 + y_0 Π_j y_j^{r^j})(1 + y_0^{-1} Π_j y_j^{(-1)^{j+1} r^j})`, `r = n + 1/2`, in `ring`.
pub fn bo_product_in(ring: &Ring, jmax: u32, mode_count: u32) -> Result<Series> {
    let mut total = ring.one();
    for n in 0..mode_count as i64 {
        let r = HalfInt::new(n);
        total = total.try_mul(&one_plus(ring, bo_monomial(r, true, jmax), int(1))?)?;
        total = total.try_mul(&one_plus(ring, bo_monomial(r, false, jmax), int(1))?)?;
    }
    Ok(total)
}

pub fn bo_product(jmax: u32, mode_count: u32) -> Result<Series> {
    bo_product_in(&bo_ring(TruncationPolicy::none()), jmax, mode_count)
}

/// `Π_{j ≤ jmax} y_j^{L_j}`.
pub fn casimir_twist(jmax: u32) -> OperatorExpr {
    OperatorExpr::Twist((0..=jmax).map(|j| (VarId::y(j as i64), Diagonal::Casimir(j))).collect())
}

/// The all-charge trace of `Π y_j^{L_j}` over every wedge built from the first `mode_count` modes.
pub fn bo_brute(jmax: u32, mode_count: u32) -> Result<Series> {
    let ctx = EvalContext::new(bo_ring(TruncationPolicy::none()));
    brute_trace(&casimir_twist(jmax), &basis_modes(mode_count as usize), &ctx)
}

pub fn bo_check(jmax: u32, mode_count: u32) -> Result<ComparisonReport> {
    let brute = bo_brute(jmax, mode_count)?;
    let product = bo_product(jmax, mode_count)?;
    Ok(ComparisonReport::compare("brute character", &brute, "mode product", &product)
        .with_param("jmax", jmax)
        .with_param("mode_count", mode_count)
        .with_mode(CheckMode::Asserted))
}

/// Which `μ` enter the inner sum of the main formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuRelation {
    /// `μ ⊆ λ` and `μ ⊆ λ^t`.
    ContainedInBoth,
    /// `μ ⊆ λ`.
    ContainedInLambda,
}

/// Outer shape of the second skew factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SecondShape {
    Transpose,
    Same,
}

/// Whether each summand carries the vacuum mode product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VacuumProduct {
    Included,
    Omitted,
}

/// One reading of the main formula's summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MainReading {
    pub mu: MuRelation,
    pub second: SecondShape,
    pub charges: ChargeSelection,
    pub vacuum: VacuumProduct,
}

impl Default for MainReading {
    fn default() -> Self {
        MainReading {
            mu: MuRelation::ContainedInBoth,
            second: SecondShape::Transpose,
            charges: ChargeSelection::All,
            vacuum: VacuumProduct::Included,
        }
    }
}

impl MainReading {
    /// Every combination of the four toggles.
    pub fn all() -> Vec<MainReading> {
        let mut out = Vec::new();
        for mu in [MuRelation::ContainedInBoth, MuRelation::ContainedInLambda] {
            for second in [SecondShape::Transpose, SecondShape::Same] {
                for charges in [ChargeSelection::All, ChargeSelection::Zero] {
                    for vacuum in [VacuumProduct::Included, VacuumProduct::Omitted] {
                        out.push(MainReading { mu, second, charges, vacuum });
                    }
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        let mu = match self.mu {
            MuRelation::ContainedInBoth => "mu<=lambda,lambda^t",
            MuRelation::ContainedInLambda => "mu<=lambda",
        };
        let second = match self.second {
            SecondShape::Transpose => "S_{lambda^t/mu}",
            SecondShape::Same => "S_{lambda/mu}",
        };
        let charges = match self.charges {
            ChargeSelection::All => "all-charges",
            ChargeSelection::Zero => "charge-0",
        };
        let vacuum = match self.vacuum {
            VacuumProduct::Included => "with-vacuum-product",
            VacuumProduct::Omitted => "without-vacuum-product",
        };
        format!("{mu};{second};{charges};{vacuum}")
    }
}

/// Cutoffs of the main-formula harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MainParams {
    /// Energy cutoff, which is also the cap on `y_1`.
    pub energy: u32,
    pub jmax: u32,
    pub ab_degree: u32,
}

impl MainParams {
    pub fn ring(&self) -> Result<Ring> {
        if self.jmax < 1 {
            return Err(Error::Config("the main formula needs jmax >= 1 to bound the energy".into()));
        }
        Ok(bo_ring(
            TruncationPolicy::none()
                .with_cap(VarId::y(1), int(self.energy as i64))
                .with_graded([Family::A, Family::B], int(self.ab_degree as i64)),
        ))
    }

    fn mode_count(&self) -> u32 {
        // modes with r ≤ energy contribute; r = n + 1/2 gives n < energy + 1/2
        (int(self.energy as i64) + rat(1, 2)).floor().to_integer().try_into().unwrap_or(0)
    }
}

/// The brute side `Tr(Π y_j^{L_j} exp(Σ A_n α_{-n}) exp(Σ B_n α_n))`.
pub fn main_trace_brute(params: MainParams, charges: ChargeSelection) -> Result<Series> {
    let ring = params.ring()?;
    let e = params.energy as i64;
    let ctx = EvalContext::new(ring.clone()).with_energy_cutoff(int(e));
    let a = (1..=e).map(|n| (ring.var(VarId::a(n)), Generator::Alpha(-n))).collect();
    let b = (1..=e).map(|n| (ring.var(VarId::b(n)), Generator::Alpha(n))).collect();
    let expr = OperatorExpr::Product(vec![casimir_twist(params.jmax), OperatorExpr::exp(a)?, OperatorExpr::exp(b)?]);
    brute_trace(&expr, &basis_level1(&int(e), charges), &ctx)
}

/// Tabulated pieces of the closed-form side shared by all readings.
pub struct MainFormula {
    params: MainParams,
    ring: Ring,
    bo: Series,
    a_table: CompleteTable,
    b_table: CompleteTable,
}

impl MainFormula {
    pub fn new(params: MainParams) -> Result<Self> {
        let ring = params.ring()?;
        let bo = bo_product_in(&ring, params.jmax, params.mode_count())?;
        let a_spec = PowerSumSpec::scaled_variables(&ring, params.energy, VarId::a);
        let b_spec = PowerSumSpec::scaled_variables(&ring, params.energy, VarId::b);
        Ok(MainFormula {
            params,
            a_table: CompleteTable::new(&a_spec, params.energy)?,
            b_table: CompleteTable::new(&b_spec, params.energy)?,
            ring,
            bo,
        })
    }

    pub fn vacuum_product(&self) -> &Series {
        &self.bo
    }

    /// The summand attached to `λ` under `reading`.
    pub fn term(&self, lambda: &Partition, reading: MainReading) -> Result<Series> {
        let pairs = (1..=self.params.jmax).map(|r| (VarId::y(r as i64), casimir_eigenvalue(lambda, r))).collect();
        let casimir = monomial_series(&self.ring, pairs, int(1))?;
        let lambda_t = lambda.transpose();
        let second = match reading.second {
            SecondShape::Transpose => &lambda_t,
            SecondShape::Same => lambda,
        };
        let mut inner = self.ring.zero();
        for mu in generate_partitions(lambda.weight()) {
            let admissible = match reading.mu {
                MuRelation::ContainedInBoth => lambda.contains(&mu) && lambda_t.contains(&mu),
                MuRelation::ContainedInLambda => lambda.contains(&mu),
            };
            if !admissible {
                continue;
            }
            let sa = self.a_table.skew_schur(lambda, &mu)?;
            let sb = self.b_table.skew_schur(second, &mu)?;
            inner = inner.try_add(&sa.try_mul(&sb)?)?;
        }
        let term = casimir.try_mul(&inner)?;
        match reading.vacuum {
            VacuumProduct::Included => term.try_mul(&self.bo),
            VacuumProduct::Omitted => Ok(term),
        }
    }

    /// `Σ_{|λ| ≤ energy}` of the summands.
    pub fn rhs(&self, reading: MainReading) -> Result<Series> {
        let mut total = self.ring.zero();
        for lambda in generate_partitions(self.params.energy as i64) {
            total = total.try_add(&self.term(&lambda, reading)?)?;
        }
        Ok(total)
    }
}

pub fn main_formula_rhs(params: MainParams, reading: MainReading) -> Result<Series> {
    MainFormula::new(params)?.rhs(reading)
}

/// The `λ = ∅` summand against the mode product, which it must equal.
pub fn main_vacuum_term_check(params: MainParams) -> Result<ComparisonReport> {
    let formula = MainFormula::new(params)?;
    let reading = MainReading::default();
    let term = formula.term(&Partition::empty(), reading)?;
    let bo = bo_product(params.jmax, formula.params.mode_count())?;
    Ok(ComparisonReport::compare("lambda = empty summand", &term, "mode product", &bo)
        .with_param("energy", params.energy)
        .with_param("jmax", params.jmax)
        .with_mode(CheckMode::Asserted))
}

/// One report per reading; agreement is recorded, not required.
pub fn main_formula_reports(params: MainParams) -> Result<Vec<ComparisonReport>> {
    let formula = MainFormula::new(params)?;
    let mut brute = BTreeMap::new();
    for charges in [ChargeSelection::All, ChargeSelection::Zero] {
        brute.insert(charges == ChargeSelection::All, main_trace_brute(params, charges)?);
    }
    let mut out = Vec::new();
    for reading in MainReading::all() {
        let lhs = &brute[&(reading.charges == ChargeSelection::All)];
        let rhs = formula.rhs(reading)?;
        out.push(
            ComparisonReport::compare("brute trace", lhs, &format!("formula [{}]", reading.label()), &rhs)
                .with_param("reading", reading.label())
                .with_param("energy", params.energy)
                .with_param("jmax", params.jmax)
                .with_param("ab_degree", params.ab_degree)
                .with_param("mode_count", params.mode_count())
                .with_mode(CheckMode::ReportOnly),
        );
    }
    Ok(out)
}

/// `(Γ_+(x), Γ_-(x))` with `Γ_±(x) = exp(Σ_{n ≤ n_max} x^n/n α_{±n})`.
pub fn gamma_ops(x: &Series, n_max: i64) -> Result<(OperatorExpr, OperatorExpr)> {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for n in 1..=n_max {
        let c = x.pow(n as u32)?.scale(&rat(1, n));
        plus.push((c.clone(), Generator::Alpha(n)));
        minus.push((c, Generator::Alpha(-n)));
    }
    Ok((OperatorExpr::exp(plus)?, OperatorExpr::exp(minus)?))
}

/// `⟨λ|Γ_+(x)|μ⟩ = x^{|μ|-|λ|}` iff `μ/λ` is a horizontal strip, and dually for `Γ_-`.
pub fn gamma_strip_check(max_weight: u32) -> Result<ComparisonReport> {
    let x = VarId::plain(Family::X);
    let ring = Ring::new(TruncationPolicy::none().with_cap(x, int(max_weight as i64)));
    let ctx = EvalContext::new(ring.clone()).with_energy_cutoff(int(max_weight as i64));
    let (plus, minus) = gamma_ops(&ring.var(x), max_weight as i64)?;
    let shapes = generate_partitions(max_weight as i64);
    let mut checks = Vec::new();
    for mu in &shapes {
        let v = MayaVector::new(0, mu.clone());
        let down = apply_to_vector(&plus, &v, &ctx)?;
        let up = apply_to_vector(&minus, &v, &ctx)?;
        for lam in &shapes {
            let w = MayaVector::new(0, lam.clone());
            let amp = |state: &crate::fock::FockState<MayaVector>| state.get(&w).cloned().unwrap_or_else(|| ring.zero());
            let expect = |outer: &Partition, inner: &Partition| -> Result<Series> {
                if is_horizontal_strip(outer, inner) {
                    ring.term(Monomial::power(x, int(outer.weight() - inner.weight())), int(1))
                } else {
                    Ok(ring.zero())
                }
            };
            checks.push((format!("<{lam}|G+(x)|{mu}>"), amp(&down) == expect(mu, lam)?));
            checks.push((format!("<{lam}|G-(x)|{mu}>"), amp(&up) == expect(lam, mu)?));
        }
    }
    Ok(ComparisonReport::from_checks("vertex operator amplitudes", "horizontal strip rule", checks)
        .with_param("max_weight", max_weight)
        .with_mode(CheckMode::Asserted))
}

/// Outcome of comparing `Γ_+(x)Γ_-(y)` with `Γ_-(y)Γ_+(x)`.
#[derive(Clone, Debug)]
pub struct CommutationFactor {
    /// The scalar `s` with `Γ_+(x)Γ_-(y) = s Γ_-(y)Γ_+(x)` on the vacuum.
    pub ratio: Series,
    /// Every monomial of `ratio` has equal `x` and `y` exponents.
    pub xy_only: bool,
    /// The whole vectors are proportional with this ratio.
    pub proportional: bool,
    /// `"(1 - x*y)^(-1)"`, `"(1 - x*y)"` or `"neither"`.
    pub identified: &'static str,
    /// Ratio against the printed `1 - x*y`.
    pub printed: ComparisonReport,
}

pub fn gamma_commutation_factor(order: u32) -> Result<CommutationFactor> {
    let (x, y) = (VarId::plain(Family::X), VarId::plain(Family::Y));
    let ring = Ring::new(TruncationPolicy::none().with_cap(x, int(order as i64)).with_cap(y, int(order as i64)));
    let ctx = EvalContext::new(ring.clone()).with_energy_cutoff(int(order as i64));
    let (gp, _) = gamma_ops(&ring.var(x), order as i64)?;
    let (_, gm) = gamma_ops(&ring.var(y), order as i64)?;
    let vac = MayaVector::vacuum();
    let lhs = apply_to_vector(&OperatorExpr::Product(vec![gp.clone(), gm.clone()]), &vac, &ctx)?;
    let rhs = apply_to_vector(&OperatorExpr::Product(vec![gm, gp]), &vac, &ctx)?;
    let rhs_vac = rhs.get(&vac).cloned().unwrap_or_else(|| ring.zero());
    let ratio = lhs.get(&vac).cloned().unwrap_or_else(|| ring.zero()).try_mul(&series_invert(&rhs_vac)?)?;

    let xy_only = ratio.terms().all(|(m, _)| m.exponent(x) == m.exponent(y));
    let mut proportional = lhs.keys().all(|b| rhs.contains_key(b));
    for (b, amp) in rhs.iter() {
        let other = lhs.get(b).cloned().unwrap_or_else(|| ring.zero());
        proportional &= amp.try_mul(&ratio)? == other;
    }

    let xy = ring.term(Monomial::from_pairs([(x, int(1)), (y, int(1))]), int(1))?;
    let printed_factor = ring.one().try_sub(&xy)?;
    let inverse_factor = series_invert(&printed_factor)?;
    let identified = if ratio == inverse_factor {
        "(1 - x*y)^(-1)"
    } else if ratio == printed_factor {
        "(1 - x*y)"
    } else {
        "neither"
    };
    let printed = ComparisonReport::compare("G+(x)G-(y) / G-(y)G+(x)", &ratio, "printed factor 1 - x*y", &printed_factor)
        .with_param("order", order)
        .with_param("identified_factor", identified)
        .with_param("xy_only", xy_only)
        .with_mode(CheckMode::ReportOnly);
    Ok(CommutationFactor { ratio, xy_only, proportional, identified, printed })
}

/// The asserted half of the commutation check: the ratio is a series in `xy`
/// alone and equals one of `(1 - xy)^{±1}`.
pub fn gamma_factor_assertions(f: &CommutationFactor) -> ComparisonReport {
    ComparisonReport::from_checks(
        "commutation ratio",
        "series in x*y equal to (1 - x*y)^(+-1)",
        vec![
            ("ratio depends on x*y only".into(), f.xy_only),
            ("vectors are proportional".into(), f.proportional),
            (format!("ratio identified as {}", f.identified), f.identified != "neither"),
        ],
    )
    .with_param("identified_factor", f.identified)
    .with_mode(CheckMode::Asserted)
}

fn howe_ring(max_degree: &Rational) -> Ring {
    Ring::new(TruncationPolicy::none().with_cap(VarId::t(), max_degree.clone())).with_rational(Family::T)
}

/// Diagonal coefficient of a generator on `v`, or an error if it is not diagonal there.
fn diagonal_entry(image: &crate::fock::Combination<CliffordMonomial>, v: &CliffordMonomial) -> Result<Rational> {
    if image.keys().any(|w| w != v) {
        return Err(Error::Unsupported(format!("{v} is not an eigenvector")));
    }
    Ok(image.get(v).cloned().unwrap_or_else(Rational::zero))
}

/// Joint weight monomial `Π x_i^{e^{ii}_*} Π y_j^{e*_{jj}} t^{deg}` of a basis vector.
fn joint_weight(v: &CliffordMonomial, window: FlavorWindow, a_window: &std::ops::RangeInclusive<i64>) -> Result<Monomial> {
    let mut pairs = Vec::new();
    for i in window.flavors() {
        pairs.push((VarId::x(i), diagonal_entry(&apply_gl_gen(i, i, v), v)?));
    }
    for j in a_window.clone() {
        pairs.push((VarId::y(j), diagonal_entry(&apply_a_gen(j, j, window, v), v)?));
    }
    pairs.push((VarId::t(), v.degree()));
    Ok(Monomial::from_pairs(pairs))
}

/// Character of the truncated Clifford module, read from the diagonal generators.
pub fn howe_character(window: FlavorWindow, max_degree: &Rational) -> Result<Series> {
    let ring = howe_ring(max_degree);
    let a_window = a_index_window(max_degree);
    let mut brute = ring.zero();
    for v in basis_level_l(window, max_degree) {
        brute = brute.try_add(&ring.term(joint_weight(&v, window, &a_window)?, int(1))?)?;
    }
    Ok(brute)
}

/// `Π_i Π_r (1 + x_i y_{r+1/2} t^r)(1 + x_i^{-1} y_{1/2-r}^{-1} t^r)`.
pub fn howe_product(window: FlavorWindow, max_degree: &Rational) -> Result<Series> {
    let ring = howe_ring(max_degree);
    let mut product = ring.one();
    for i in window.flavors() {
        let mut n = 0;
        while HalfInt::new(n).to_rational() <= *max_degree {
            let r = HalfInt::new(n);
            let plus = Monomial::from_pairs([(VarId::x(i), int(1)), (VarId::y(n + 1), int(1)), (VarId::t(), r.to_rational())]);
            let minus = Monomial::from_pairs([(VarId::x(i), int(-1)), (VarId::y(-n), int(-1)), (VarId::t(), r.to_rational())]);
            product = product.try_mul(&one_plus(&ring, plus, int(1))?)?.try_mul(&one_plus(&ring, minus, int(1))?)?;
            n += 1;
        }
    }
    Ok(product)
}

pub fn howe_character_check(window: FlavorWindow, max_degree: &Rational) -> Result<ComparisonReport> {
    let brute = howe_character(window, max_degree)?;
    let product = howe_product(window, max_degree)?;
    Ok(ComparisonReport::compare("basis weights", &brute, "fermion product", &product)
        .with_param("flavors", window)
        .with_param("max_degree", crate::num::fmt_rational_short(max_degree))
        .with_mode(CheckMode::Asserted))
}

/// Commutation of the two actions, and highest weight vectors with their weights.
pub fn duality_checks(window: FlavorWindow, max_degree: &Rational, max_abs: i64) -> Result<ComparisonReport> {
    let basis = basis_level_l(window, max_degree);
    let a_window = a_index_window(max_degree);
    let mut checks = Vec::new();

    let mut all_commute = true;
    let mut first_failure = None;
    for i in a_window.clone() {
        for j in a_window.clone() {
            let shift = int((i - j).max(0));
            for r in window.flavors() {
                for s in window.flavors() {
                    let x = Generator::AGen { i, j, flavors: window };
                    let y = Generator::GlGen { i: r, j: s };
                    for v in basis.iter().filter(|v| v.degree() + &shift <= *max_degree) {
                        if !crate::fock::commutator_on(&x, &y, v)?.is_empty() {
                            all_commute = false;
                            first_failure.get_or_insert_with(|| format!("[{x}, {y}] on {v}"));
                        }
                    }
                }
            }
        }
    }
    checks.push((
        first_failure.unwrap_or_else(|| "all [e*_(ij), e_*^(rs)] vanish on the interior".into()),
        all_commute,
    ));

    for lambda in generalized_partitions(window.len(), max_abs) {
        let v = highest_weight_vector_in(&lambda, window)?;
        if v.degree() > *max_degree {
            continue;
        }
        let key = v.key();
        let raised_a = a_window.clone().filter(|&i| a_window.contains(&(i + 1))).all(|i| apply_a_gen(i, i + 1, window, &key).is_empty());
        let raised_gl = (window.lo..window.hi).all(|i| apply_gl_gen(i, i + 1, &key).is_empty());
        checks.push((format!("v_({lambda}) is annihilated by raising generators"), raised_a && raised_gl));

        let gl_ok = window
            .flavors()
            .zip(lambda.parts())
            .all(|(f, &part)| diagonal_entry(&apply_gl_gen(f, f, &key), &key).ok() == Some(int(part)));
        let prime = lambda.lambda_prime();
        let in_window = prime.eps.keys().all(|j| a_window.contains(j));
        let a_ok = a_window.clone().all(|j| {
            let want = prime.eps.get(&j).copied().unwrap_or(0);
            diagonal_entry(&apply_a_gen(j, j, window, &key), &key).ok() == Some(int(want))
        });
        let level_ok = prime.level == window.len() as i64;
        checks.push((format!("v_({lambda}) has weight ({lambda}; {prime})"), gl_ok && a_ok && in_window && level_ok));
    }

    Ok(ComparisonReport::from_checks("Clifford module actions", "joint duality structure", checks)
        .with_param("flavors", window)
        .with_param("max_degree", crate::num::fmt_rational_short(max_degree))
        .with_param("max_abs", max_abs)
        .with_mode(CheckMode::Asserted))
}

/// Relations of the level-one operators on every vector of energy at most `max_energy`:
/// both boson actions agree for `0 < |n| ≤ max_n`, the Clifford anticommutators,
/// `[α_n, ψ_k] = ψ_{k+n}` and `[α_n, α_{-n}] = n`.
pub fn operator_suite_check(max_energy: u32, max_n: i64) -> Result<ComparisonReport> {
    let basis = basis_level1(&int(max_energy as i64), ChargeSelection::All);
    let modes: Vec<HalfInt> = (-2 * max_n - 1..=2 * max_n + 1).filter_map(HalfInt::from_twice).collect();
    let nonzero: Vec<i64> = (-max_n..=max_n).filter(|&n| n != 0).collect();
    let unit = |b: &MayaVector, c: Rational| -> crate::fock::Combination<MayaVector> {
        if c.is_zero() { BTreeMap::new() } else { BTreeMap::from([(b.clone(), c)]) }
    };
    let mut failures: BTreeMap<&str, Option<String>> = BTreeMap::new();
    let mut note = |name: &'static str, ok: bool, what: &dyn Fn() -> String| {
        let slot = failures.entry(name).or_insert(None);
        if !ok && slot.is_none() {
            *slot = Some(what());
        }
    };
    for b in &basis {
        for &n in &nonzero {
            note("border strips = fermion bilinear", apply_alpha(n, b) == apply_alpha_bilinear(n, b), &|| {
                format!("alpha({n}) on {b}")
            });
        }
        for n in 1..=max_n {
            let got = commutator_on(&Generator::Alpha(n), &Generator::Alpha(-n), b)?;
            note("[alpha_n, alpha_-n] = n", got == unit(b, int(n)), &|| format!("n = {n} on {b}"));
        }
        for &i in &modes {
            for &j in &modes {
                let got = anticommutator_on(&Generator::Psi(i), &Generator::PsiStar(j), b)?;
                let want = unit(b, int(i64::from(i == j)));
                note("{psi_i, psi*_j} = delta_ij", got == want, &|| format!("i = {i}, j = {j} on {b}"));
                let pp = anticommutator_on(&Generator::Psi(i), &Generator::Psi(j), b)?;
                note("{psi_i, psi_j} = 0", pp.is_empty(), &|| format!("i = {i}, j = {j} on {b}"));
                let ss = anticommutator_on(&Generator::PsiStar(i), &Generator::PsiStar(j), b)?;
                note("{psi*_i, psi*_j} = 0", ss.is_empty(), &|| format!("i = {i}, j = {j} on {b}"));
            }
            for &n in &nonzero {
                let got = commutator_on(&Generator::Alpha(n), &Generator::Psi(i), b)?;
                note("[alpha_n, psi_k] = psi_(k+n)", got == apply_psi(i.shift(n), b), &|| {
                    format!("n = {n}, k = {i} on {b}")
                });
            }
        }
    }
    let checks = failures
        .into_iter()
        .map(|(name, fail)| match fail {
            None => (name.to_string(), true),
            Some(at) => (format!("{name} (fails at {at})"), false),
        })
        .collect();
    Ok(ComparisonReport::from_checks("level-one operators", "operator relations", checks)
        .with_param("max_energy", max_energy)
        .with_param("basis_size", basis.len())
        .with_param("max_n", max_n)
        .with_mode(CheckMode::Asserted))
}

/// `L_j` read from mode positions against both closed forms of `p_j(λ)`, for
/// charge-zero vectors with `|λ| ≤ max_weight` and `1 ≤ j ≤ jmax`.
pub fn casimir_check(max_weight: u32, jmax: u32) -> ComparisonReport {
    let mut checks = Vec::new();
    let mut positions_ok = true;
    let mut forms_ok = true;
    let mut first = None;
    for lambda in generate_partitions(max_weight as i64) {
        let v = MayaVector::new(0, lambda.clone());
        let exps = casimir_exponents(&v, jmax);
        for j in 1..=jmax {
            let rows = casimir_eigenvalue(&lambda, j);
            let frobenius = casimir_eigenvalue_frobenius(&lambda, j);
            let here_positions = exps[j as usize] == rows;
            let here_forms = rows == frobenius;
            if !(here_positions && here_forms) && first.is_none() {
                first = Some(format!("lambda = {lambda}, j = {j}"));
            }
            positions_ok &= here_positions;
            forms_ok &= here_forms;
        }
    }
    let suffix = first.map(|f| format!(" (first failure at {f})")).unwrap_or_default();
    checks.push((format!("casimir_exponents = row form{suffix}"), positions_ok));
    checks.push((format!("row form = Frobenius form{suffix}"), forms_ok));
    ComparisonReport::from_checks("Casimir eigenvalues", "p_j(lambda)", checks)
        .with_param("max_weight", max_weight)
        .with_param("jmax", jmax)
        .with_mode(CheckMode::Asserted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ze_formula_examples() {
        let ring = ze_ring(4, 0);
        let zero_ab = ze_formula(4, 0).unwrap();
        let q = ring.var(VarId::q());
        let mut partitions = ring.one();
        for n in 1..=4 {
            partitions = &partitions * &series_invert(&(&ring.one() - &q.pow(n).unwrap())).unwrap();
        }
        assert_eq!(zero_ab, partitions);
        let f = ze_formula(4, 2).unwrap();
        let m = Monomial::from_pairs([(VarId::a(1), int(1)), (VarId::b(1), int(1)), (VarId::q(), int(1))]);
        assert_eq!(f.coefficient(&m), int(1));
    }

    #[test]
    fn ze_small_agrees() {
        assert!(ze_check(4, 4, 2).unwrap().agree);
    }

    #[test]
    fn bo_examples() {
        let one = bo_product(1, 1).unwrap();
        let ring = bo_ring(TruncationPolicy::none());
        let half = rat(1, 2);
        let f1 = one_plus(&ring, Monomial::from_pairs([(VarId::y(0), int(1)), (VarId::y(1), half.clone())]), int(1)).unwrap();
        let f2 = one_plus(&ring, Monomial::from_pairs([(VarId::y(0), int(-1)), (VarId::y(1), half)]), int(1)).unwrap();
        assert_eq!(one, &f1 * &f2);
        let total: Rational = bo_product(3, 3).unwrap().terms().map(|(_, c)| c.clone()).sum();
        assert_eq!(total, int(64));
        assert!(bo_check(2, 3).unwrap().agree);
    }

    #[test]
    fn main_formula_vacuum_term() {
        let params = MainParams { energy: 2, jmax: 1, ab_degree: 1 };
        assert!(main_vacuum_term_check(params).unwrap().agree);
        assert!(MainParams { jmax: 0, ..params }.ring().is_err());
    }

    #[test]
    fn main_formula_direct_reading_agrees_on_charge_zero() {
        let params = MainParams { energy: 3, jmax: 2, ab_degree: 2 };
        let reports = main_formula_reports(params).unwrap();
        assert_eq!(reports.len(), 16);
        let direct = MainReading {
            mu: MuRelation::ContainedInLambda,
            second: SecondShape::Same,
            charges: ChargeSelection::Zero,
            vacuum: VacuumProduct::Omitted,
        };
        let r = reports.iter().find(|r| r.params["reading"] == direct.label()).unwrap();
        assert!(r.agree, "{:?}", r.first_diff);
    }

    #[test]
    fn gamma_examples() {
        assert!(gamma_strip_check(4).unwrap().agree);
        let f = gamma_commutation_factor(3).unwrap();
        assert!(f.xy_only && f.proportional);
        assert_eq!(f.identified, "(1 - x*y)^(-1)");
        assert!(!f.printed.agree);
        assert_eq!(f.ratio.constant_term(), int(1));
    }

    #[test]
    fn howe_examples() {
        let w = FlavorWindow::level(1);
        assert!(howe_character_check(w, &rat(1, 2)).unwrap().agree);
        assert!(howe_character_check(FlavorWindow::new(1, 0), &int(2)).unwrap().agree);
        assert!(howe_character_check(FlavorWindow::level(2), &int(2)).unwrap().agree);
        assert!(duality_checks(FlavorWindow::level(2), &int(2), 2).unwrap().agree);
    }

    #[test]
    fn operator_suite_and_casimir_hold() {
        let ops = operator_suite_check(3, 2).unwrap();
        assert!(ops.agree, "{:?}", ops.first_diff);
        assert_eq!(ops.checked, 6);
        let cas = casimir_check(5, 4);
        assert!(cas.agree, "{:?}", cas.first_diff);
    }
}
