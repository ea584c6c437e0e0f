//! Plane partitions through vertex operators, and the elliptic partition function.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fock::{apply_to_vector, basis_level1, brute_trace, ChargeSelection, Diagonal, EvalContext, Generator, MayaVector, OperatorExpr};
use crate::num::{int, rat};
use crate::partitions::count_plane_partitions;
use crate::report::{CheckMode, ComparisonReport};
use crate::series::{
    series_exp, series_invert, series_log, series_substitute, Family, Monomial, Ring, Series, TruncationPolicy, VarId,
};
use crate::trace::gamma_ops;

/// Direction of one vertex-operator step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `Γ_+`, removing horizontal strips.
    Plus,
    /// `Γ_-`, adding horizontal strips.
    Minus,
}

/// A product of vertex operators, listed in application order.
#[derive(Clone, Debug, Default)]
pub struct SlicePath {
    steps: Vec<(Direction, Series)>,
}

impl SlicePath {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a step that acts after every step already present.
    pub fn then(mut self, direction: Direction, argument: Series) -> Result<Self> {
        // a truncated-away argument is allowed and makes the step the identity
        if !argument.is_zero() && argument.as_monomial().is_none() {
            return Err(Error::InvalidExpr(format!("slice argument {argument} is not a monomial")));
        }
        self.steps.push((direction, argument));
        Ok(self)
    }

    pub fn steps(&self) -> &[(Direction, Series)] {
        &self.steps
    }

    /// The operator product, first step rightmost.
    pub fn operator(&self, n_max: i64) -> Result<OperatorExpr> {
        let mut factors = Vec::with_capacity(self.steps.len());
        for (direction, x) in self.steps.iter().rev() {
            let (plus, minus) = gamma_ops(x, n_max)?;
            factors.push(match direction {
                Direction::Plus => plus,
                Direction::Minus => minus,
            });
        }
        Ok(OperatorExpr::Product(factors))
    }

    /// `⟨0| path |0⟩` with every intermediate vector of energy at most `energy`.
    pub fn vacuum_expectation(&self, ring: &Ring, energy: u32) -> Result<Series> {
        let ctx = EvalContext::new(ring.clone()).with_energy_cutoff(int(energy as i64));
        let vac = MayaVector::vacuum();
        let image = apply_to_vector(&self.operator(energy.max(1) as i64)?, &vac, &ctx)?;
        Ok(image.get(&vac).cloned().unwrap_or_else(|| ring.zero()))
    }
}

/// `q` exponent-rational with `q ≤ order`.
fn q_ring(order: u32) -> Ring {
    Ring::new(TruncationPolicy::none().with_cap(VarId::q(), int(order as i64))).with_rational(Family::Q)
}

fn q_power(ring: &Ring, e: crate::num::Rational) -> Result<Series> {
    ring.term(Monomial::power(VarId::q(), e), int(1))
}

/// `⟨Π_n Γ_+(q^{n-1/2}) Π_n Γ_-(q^{n-1/2})⟩` to q-order `order`.
pub fn mcmahon_series(order: u32) -> Result<Series> {
    let ring = q_ring(order);
    let mut path = SlicePath::new();
    for n in 1..=order.max(1) as i64 {
        path = path.then(Direction::Minus, q_power(&ring, rat(2 * n - 1, 2))?)?;
    }
    for n in 1..=order.max(1) as i64 {
        path = path.then(Direction::Plus, q_power(&ring, rat(2 * n - 1, 2))?)?;
    }
    path.vacuum_expectation(&ring, order)
}

/// `Π_{n ≤ order} (1 - q^n)^{-n}`.
pub fn mcmahon_product(order: u32) -> Result<Series> {
    let ring = q_ring(order);
    let mut total = ring.one();
    for n in 1..=order as i64 {
        let inv = series_invert(&ring.one().try_sub(&q_power(&ring, int(n))?)?)?;
        total = total.try_mul(&inv.pow(n as u32)?)?;
    }
    Ok(total)
}

/// Plane-partition counts as a series.
pub fn plane_partition_series(order: u32) -> Result<Series> {
    let ring = q_ring(order);
    let terms = (0..=order as i64).map(|n| (Monomial::power(VarId::q(), int(n)), int(count_plane_partitions(n) as i64)));
    ring.from_terms(terms)
}

/// Vertex-operator series against enumeration and against the product.
pub fn mcmahon_check(order: u32) -> Result<ComparisonReport> {
    let series = mcmahon_series(order)?;
    let by_count = ComparisonReport::compare("vertex operators", &series, "plane partition count", &plane_partition_series(order)?);
    let by_product = ComparisonReport::compare("vertex operators", &series, "prod (1-q^n)^(-n)", &mcmahon_product(order)?);
    Ok(ComparisonReport::combine("vertex operators", "enumeration and product", &[by_count, by_product])
        .with_param("order", order)
        .with_mode(CheckMode::Asserted))
}

/// The wall-bounded products. Swapping the printed operator order gives
/// `Π_{l1} Π_{l2 ≤ M} (1 - q^{l1+l2-1})^{-1}`; the printed order leaves only
/// the residual vacuum expectation, which equals one.
pub fn wall_product_check(m: u32, order: u32) -> Result<ComparisonReport> {
    let ring = q_ring(order);
    let arg = |l: i64| q_power(&ring, rat(2 * l - 1, 2));
    let mut product = ring.one();
    for l1 in 1..=order.max(1) as i64 {
        for l2 in 1..=m as i64 {
            let factor = ring.one().try_sub(&q_power(&ring, int(l1 + l2 - 1))?)?;
            product = product.try_mul(&series_invert(&factor)?)?;
        }
    }
    let mut swapped = SlicePath::new();
    let mut printed = SlicePath::new();
    for l1 in 1..=order.max(1) as i64 {
        swapped = swapped.then(Direction::Minus, arg(l1)?)?;
    }
    for l2 in 1..=m as i64 {
        swapped = swapped.then(Direction::Plus, arg(l2)?)?;
        printed = printed.then(Direction::Plus, arg(l2)?)?;
    }
    for l1 in 1..=order.max(1) as i64 {
        printed = printed.then(Direction::Minus, arg(l1)?)?;
    }
    let swapped_value = swapped.vacuum_expectation(&ring, order)?;
    let printed_value = printed.vacuum_expectation(&ring, order)?;
    let parts = [
        ComparisonReport::compare("<prod G+(x-) prod G-(x+)>", &swapped_value, "wall product", &product),
        ComparisonReport::compare("<prod G-(x+) prod G+(x-)>", &printed_value, "1", &ring.one()),
    ];
    let printed_is_product = printed_value == product;
    Ok(ComparisonReport::combine("vertex expectations", "wall product and unit residual", &parts)
        .with_param("M", m)
        .with_param("order", order)
        .with_param("printed_order_equals_product", printed_is_product)
        .with_mode(CheckMode::ReportOnly))
}

/// Cutoffs for the elliptic partition function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyParams {
    pub tau_order: u32,
    pub q_order: u32,
}

impl CyParams {
    /// `q^{1/2}` allowed, `q ≤ q_order`, `Qtau ≤ tau_order`, `Q_m` Laurent.
    pub fn ring(&self) -> Ring {
        Ring::new(
            TruncationPolicy::none()
                .with_cap(VarId::q(), int(self.q_order as i64))
                .with_cap(VarId::q_tau(), int(self.tau_order as i64)),
        )
        .with_rational(Family::Q)
    }

    /// An excursion of energy `Δ` above the traced vector costs at least `q^Δ`.
    pub fn energy_cutoff(&self) -> u32 {
        self.tau_order + self.q_order
    }
}

/// `(Q^n - 1) / (n (q^{n/2} - q^{-n/2}))` for `Q = Q_m^{sign}`.
pub fn cy_coefficient(ring: &Ring, n: i64, sign: i64) -> Result<Series> {
    let numerator = ring.term(Monomial::power(VarId::q_m(), int(sign * n)), int(1))?.try_sub(&ring.one())?;
    let denominator = q_power(ring, rat(n, 2))?.try_sub(&q_power(ring, rat(-n, 2))?)?;
    Ok(numerator.try_mul(&series_invert(&denominator)?)?.scale(&rat(1, n)))
}

/// `exp(Σ a_n α_n) exp(Σ b_n α_{-n})` with `a_n` built on `Q_m` and `b_n` on `Q_m^{-1}`.
pub fn cy_exponentials(params: CyParams, ring: &Ring) -> Result<Vec<OperatorExpr>> {
    let n_max = params.q_order.max(1) as i64;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for n in 1..=n_max {
        a.push((cy_coefficient(ring, n, 1)?, Generator::Alpha(n)));
        b.push((cy_coefficient(ring, n, -1)?, Generator::Alpha(-n)));
    }
    Ok(vec![OperatorExpr::exp(a)?, OperatorExpr::exp(b)?])
}

fn cy_trace_with(params: CyParams, ring: &Ring, twist: Option<OperatorExpr>) -> Result<Series> {
    let mut factors = vec![OperatorExpr::twist(VarId::q_tau(), Diagonal::Energy)];
    factors.extend(twist);
    factors.extend(cy_exponentials(params, ring)?);
    let ctx = EvalContext::new(ring.clone()).with_energy_cutoff(int(params.energy_cutoff() as i64));
    let basis = basis_level1(&int(params.tau_order as i64), ChargeSelection::Zero);
    brute_trace(&OperatorExpr::Product(factors), &basis, &ctx)
}

/// `Tr(Q_τ^{L_0} exp(Σ a_n α_n) exp(Σ b_n α_{-n}))` over charge 0.
pub fn cy_partition_trace(tau_order: u32, q_order: u32) -> Result<Series> {
    let params = CyParams { tau_order, q_order };
    cy_trace_with(params, &params.ring(), None)
}

/// The same trace with `exp(Σ t_n L_n)` inserted. The twists fix the
/// truncation of their own variables, which is merged into the ring.
pub fn cy_extended_trace(tau_order: u32, q_order: u32, twists: &BTreeMap<u32, Series>) -> Result<Series> {
    let params = CyParams { tau_order, q_order };
    let base = params.ring();
    let mut policy = base.policy().clone();
    let mut rational = base.rational_families();
    for t in twists.values() {
        policy = policy.meet(t.policy());
        rational = rational.union(t.rational_families());
    }
    let ring = Ring::new(policy).with_rational_set(rational);
    let twist = OperatorExpr::DiagonalExp(twists.iter().map(|(n, t)| (t.clone(), Diagonal::Casimir(*n))).collect());
    cy_trace_with(params, &ring, Some(twist))
}

/// Sets `Q_m = 1`.
pub fn at_unit_mass(s: &Series) -> Result<Series> {
    series_substitute(s, &BTreeMap::from([(VarId::q_m(), s.ring().one())]))
}

/// `Π_{k ≤ tau_order} (1 - Q_τ^k)^{-1}`.
pub fn tau_partition_product(ring: &Ring, tau_order: u32) -> Result<Series> {
    let mut total = ring.one();
    for k in 1..=tau_order as i64 {
        let factor = ring.one().try_sub(&ring.term(Monomial::power(VarId::q_tau(), int(k)), int(1))?)?;
        total = total.try_mul(&series_invert(&factor)?)?;
    }
    Ok(total)
}

/// `Π_k (1-Q_τ^k)^{-1} Π_{i,j} (1-Q_τ^k Q_m^{-1} q^{i+j-1})(1-Q_τ^k Q_m q^{i+j-1}) / (1-Q_τ^k q^{i+j-1})`
/// with `k ≥ 1` and `i + j - 1 ≤ ij_cutoff`.
pub fn cy_partition_product(tau_order: u32, q_order: u32, ij_cutoff: u32) -> Result<Series> {
    if ij_cutoff <= q_order {
        return Err(Error::Policy(format!(
            "ij cutoff {ij_cutoff} must exceed the q-order {q_order} so dropped factors are invisible"
        )));
    }
    let params = CyParams { tau_order, q_order };
    let ring = params.ring();
    let mut total = tau_partition_product(&ring, tau_order)?;
    let factor = |k: i64, qm: i64, e: i64| -> Result<Series> {
        let m = Monomial::from_pairs([(VarId::q_tau(), int(k)), (VarId::q_m(), int(qm)), (VarId::q(), int(e))]);
        ring.one().try_sub(&ring.term(m, int(1))?)
    };
    for k in 1..=tau_order as i64 {
        for s in 1..=ij_cutoff as i64 {
            // s = i + j - 1 is attained by the s pairs (i, j) with i, j ≥ 1
            for _ in 0..s {
                total = total.try_mul(&factor(k, -1, s)?)?;
                total = total.try_mul(&factor(k, 1, s)?)?;
                total = total.try_mul(&series_invert(&factor(k, 0, s)?)?)?;
            }
        }
    }
    Ok(total)
}

/// Asserted facts about the trace: the unit-mass limit and the zero-twist extension.
pub fn cy_trace_checks(tau_order: u32, q_order: u32) -> Result<ComparisonReport> {
    let params = CyParams { tau_order, q_order };
    let trace = cy_partition_trace(tau_order, q_order)?;
    let limit = at_unit_mass(&trace)?;
    let product = tau_partition_product(&params.ring(), tau_order)?;
    let extended = cy_extended_trace(tau_order, q_order, &BTreeMap::new())?;
    let parts = [
        ComparisonReport::compare("trace at Q_m = 1", &limit, "prod (1-Qtau^k)^(-1)", &product),
        ComparisonReport::compare("extended trace, zero twists", &extended, "trace", &trace),
    ];
    Ok(ComparisonReport::combine("elliptic trace", "unit-mass limit and zero twist", &parts)
        .with_param("tau_order", tau_order)
        .with_param("q_order", q_order)
        .with_mode(CheckMode::Asserted))
}

/// Product display against the trace; agreement is reported, not required.
pub fn cy_product_report(tau_order: u32, q_order: u32) -> Result<ComparisonReport> {
    let trace = cy_partition_trace(tau_order, q_order)?;
    let product = cy_partition_product(tau_order, q_order, q_order + 1)?;
    Ok(ComparisonReport::compare("trace", &trace, "product display", &product)
        .with_param("tau_order", tau_order)
        .with_param("q_order", q_order)
        .with_param("ij_cutoff", q_order + 1)
        .with_mode(CheckMode::ReportOnly))
}

/// Formal logarithm of a series with constant term one.
pub fn log_z(z: &Series) -> Result<Series> {
    series_log(z)
}

/// `exp(Σ_n n a_n b_n)`, the vacuum entry of the trace.
pub fn cy_vacuum_entry(params: CyParams) -> Result<Series> {
    let ring = params.ring();
    let mut exponent = ring.zero();
    for n in 1..=params.q_order.max(1) as i64 {
        let ab = cy_coefficient(&ring, n, 1)?.try_mul(&cy_coefficient(&ring, n, -1)?)?;
        exponent = exponent.try_add(&ab.scale(&int(n)))?;
    }
    series_exp(&exponent)
}
