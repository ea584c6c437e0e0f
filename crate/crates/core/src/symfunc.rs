//! Symmetric functions under power-sum specializations.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::num::{int, pow, rat, Rational};
use crate::partitions::{GeneralizedPartition, Partition};
use crate::report::{CheckMode, ComparisonReport};
use crate::series::{
    determinant, series_div_exact, series_exp, series_invert, Monomial, Ring, Series, TruncationPolicy, VarId,
};

/// `p_r(λ) = Σ_l (λ_l - l + 1/2)^r + (-1)^{r+1} (l - 1/2)^r`, summed over the rows of `λ`.
pub fn casimir_eigenvalue(lambda: &Partition, r: u32) -> Rational {
    let term = |l: usize| {
        let l = l as i64;
        let shifted = pow(&rat(2 * (lambda.part(l as usize) - l) + 1, 2), r);
        let offset = pow(&rat(2 * l - 1, 2), r);
        if r % 2 == 1 { shifted + offset } else { shifted - offset }
    };
    debug_assert!(
        (lambda.len() + 1..=lambda.len() + 3).all(|l| term(l).is_zero()),
        "trailing empty rows must cancel"
    );
    (1..=lambda.len()).map(term).sum()
}

/// `p_r(λ) = Σ_i a_i^r + (-1)^{r+1} b_i^r` on the Frobenius coordinates.
pub fn casimir_eigenvalue_frobenius(lambda: &Partition, r: u32) -> Rational {
    let f = lambda.frobenius();
    f.arms
        .iter()
        .zip(&f.legs)
        .map(|(a, b)| if r % 2 == 1 { pow(a, r) + pow(b, r) } else { pow(a, r) - pow(b, r) })
        .sum()
}

/// Values of the power sums `p_1, …, p_degree` under a specialization.
#[derive(Clone, Debug)]
pub struct PowerSumSpec {
    ring: Ring,
    coeffs: BTreeMap<u32, Series>,
    degree: u32,
}

impl PowerSumSpec {
    /// Specifies `p_n = f(n)` for `1 ≤ n ≤ degree`; higher power sums are unknown.
    pub fn new(ring: &Ring, degree: u32, f: impl Fn(u32) -> Result<Series>) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for n in 1..=degree {
            let v = f(n)?;
            if !v.is_zero() {
                coeffs.insert(n, v);
            }
        }
        Ok(PowerSumSpec { ring: ring.clone(), coeffs, degree })
    }

    /// `p_n = n A_n` (or `n B_n`), the specialization used for the boson coefficients.
    pub fn scaled_variables(ring: &Ring, degree: u32, var: fn(i64) -> VarId) -> Self {
        Self::new(ring, degree, |n| Ok(ring.var(var(n as i64)).scale(&int(n as i64))))
            .expect("variables are integral")
    }

    /// `p_n = Σ_i v_i^n` over genuine variables.
    pub fn variables(ring: &Ring, degree: u32, vars: &[VarId]) -> Self {
        Self::new(ring, degree, |n| {
            ring.from_terms(vars.iter().map(|v| (Monomial::power(*v, int(n as i64)), int(1))))
        })
        .expect("variables are integral")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn get(&self, n: u32) -> Series {
        self.coeffs.get(&n).cloned().unwrap_or_else(|| self.ring.zero())
    }
}

/// `h_0..=h_kmax` read off `exp(Σ_n p_n t^n / n)` in an auxiliary variable `t`.
pub fn complete_from_powersums(spec: &PowerSumSpec, kmax: u32) -> Result<Vec<Series>> {
    if kmax > spec.degree {
        return Err(Error::Policy(format!(
            "h_{kmax} needs p_1..p_{kmax} but the specialization only fixes p_1..p_{}",
            spec.degree
        )));
    }
    let t = VarId::t();
    if spec.coeffs.values().any(|s| s.terms().any(|(m, _)| !m.exponent(t).is_zero())) {
        return Err(Error::VariableMismatch("the specialization already uses t".into()));
    }
    let policy = spec.ring.policy().clone().with_cap(t, int(kmax as i64));
    let ring = spec.ring.with_policy(policy);
    let mut generator = ring.zero();
    for (n, p) in spec.coeffs.range(..=kmax) {
        let tn = ring.term(Monomial::power(t, int(*n as i64)), rat(1, *n as i64))?;
        generator = generator.try_add(&p.truncate_to(ring.policy()).try_mul(&tn)?)?;
    }
    let total = series_exp(&generator)?;
    Ok((0..=kmax)
        .map(|k| total.slice(t, &int(k as i64)).truncate_to(spec.ring.policy()))
        .collect())
}

/// Complete homogeneous functions `h_0..=h_k` of one specialization, reused
/// across many Jacobi–Trudi determinants.
#[derive(Clone, Debug)]
pub struct CompleteTable {
    ring: Ring,
    h: Vec<Series>,
}

impl CompleteTable {
    pub fn new(spec: &PowerSumSpec, kmax: u32) -> Result<Self> {
        Ok(CompleteTable { ring: spec.ring.clone(), h: complete_from_powersums(spec, kmax)? })
    }

    pub fn h(&self, k: i64) -> Result<Series> {
        if k < 0 {
            return Ok(self.ring.zero());
        }
        self.h.get(k as usize).cloned().ok_or_else(|| {
            Error::Policy(format!("h_{k} requested but only h_0..h_{} were tabulated", self.h.len() - 1))
        })
    }

    /// `det(h_{λ_i - μ_j - i + j})`; zero unless `μ ⊆ λ`.
    ///
    /// Every nonzero term of the expansion has indices summing to `|λ/μ|`, so an
    /// entry above that size only meets terms that also hold a negative index
    /// and may be replaced by zero.
    pub fn skew_schur(&self, lambda: &Partition, mu: &Partition) -> Result<Series> {
        if !lambda.contains(mu) {
            return Ok(self.ring.zero());
        }
        let size = lambda.weight() - mu.weight();
        let n = lambda.len();
        let mut matrix = Vec::with_capacity(n);
        for i in 1..=n {
            let mut row = Vec::with_capacity(n);
            for j in 1..=n {
                let k = lambda.part(i) - mu.part(j) - i as i64 + j as i64;
                row.push(if k > size { self.ring.zero() } else { self.h(k)? });
            }
            matrix.push(row);
        }
        determinant(&self.ring, &matrix)
    }
}

pub fn skew_schur_specialized(lambda: &Partition, mu: &Partition, spec: &PowerSumSpec) -> Result<Series> {
    if !lambda.contains(mu) {
        return Ok(spec.ring.zero());
    }
    let size = (lambda.weight() - mu.weight()) as u32;
    CompleteTable::new(spec, size)?.skew_schur(lambda, mu)
}

/// The bialternant `det(x_i^{λ_j + l - j}) / det(x_i^{l - j})` in `x_1..x_l`.
pub fn schur_generalized(lambda: &GeneralizedPartition, num_vars: usize) -> Result<Series> {
    let l = lambda.slots();
    if num_vars != l {
        return Err(Error::Arity(format!("{lambda} has {l} slots but {num_vars} variables were requested")));
    }
    let ring = Ring::default();
    let alternant = |exps: &dyn Fn(usize) -> i64| -> Result<Series> {
        let matrix = (1..=l)
            .map(|i| {
                (1..=l)
                    .map(|j| ring.term(Monomial::power(VarId::x(i as i64), int(exps(j))), int(1)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        determinant(&ring, &matrix)
    };
    let numerator = alternant(&|j| lambda.parts()[j - 1] + (l - j) as i64)?;
    let vandermonde = alternant(&|j| (l - j) as i64)?;
    series_div_exact(&numerator, &vandermonde)
}

/// `Π_{n=1}^k (1 - q^n)^{-1}` to q-order `order`.
pub fn bosonic_hilbert_series(k: u32, order: u32) -> Series {
    let ring = Ring::new(TruncationPolicy::none().with_cap(VarId::q(), int(order as i64)));
    (1..=k).fold(ring.one(), |acc, n| {
        let factor = ring
            .from_terms([(Monomial::one(), int(1)), (Monomial::power(VarId::q(), int(n as i64)), int(-1))])
            .expect("integral exponents");
        &acc * &series_invert(&factor).expect("1 - q^n is a unit")
    })
}

/// `Σ_k t^k H_{B_k}(q)` against `Σ_m t^m h_m(1, q, q², …)`.
pub fn g_series_identity_check(kmax: u32, order: u32) -> Result<ComparisonReport> {
    let policy = TruncationPolicy::none()
        .with_cap(VarId::q(), int(order as i64))
        .with_cap(VarId::t(), int(kmax as i64));
    let ring = Ring::new(policy);
    let t_power = |k: u32| ring.term(Monomial::power(VarId::t(), int(k as i64)), int(1));

    let mut lhs = ring.zero();
    for k in 0..=kmax {
        let h = bosonic_hilbert_series(k, order).truncate_to(ring.policy());
        lhs = lhs.try_add(&h.try_mul(&t_power(k)?)?)?;
    }

    let q_ring = Ring::new(TruncationPolicy::none().with_cap(VarId::q(), int(order as i64)));
    let spec = PowerSumSpec::new(&q_ring, kmax, |n| {
        let one_minus = q_ring.from_terms([
            (Monomial::one(), int(1)),
            (Monomial::power(VarId::q(), int(n as i64)), int(-1)),
        ])?;
        series_invert(&one_minus)
    })?;
    let h = complete_from_powersums(&spec, kmax)?;
    let mut rhs = ring.zero();
    for (m, hm) in h.iter().enumerate() {
        rhs = rhs.try_add(&hm.truncate_to(ring.policy()).try_mul(&t_power(m as u32)?)?)?;
    }
    Ok(ComparisonReport::compare("sum_k t^k H_{B_k}(q)", &lhs, "sum_m t^m h_m(1,q,q^2,...)", &rhs)
        .with_param("kmax", kmax)
        .with_param("q_order", order)
        .with_mode(CheckMode::Asserted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::generate_partitions;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn casimir_examples_and_forms_agree() {
        assert_eq!(casimir_eigenvalue(&p(&[2]), 2), int(2));
        assert_eq!(casimir_eigenvalue_frobenius(&p(&[2]), 2), int(2));
        for lam in generate_partitions(10) {
            assert_eq!(casimir_eigenvalue(&lam, 0), int(0));
            assert_eq!(casimir_eigenvalue(&lam, 1), int(lam.weight()));
            for r in 0..=6 {
                assert_eq!(casimir_eigenvalue(&lam, r), casimir_eigenvalue_frobenius(&lam, r), "{lam} r={r}");
            }
        }
    }

    /// Newton's identity `k h_k = Σ_{i=1}^k p_i h_{k-i}`.
    fn newton(spec: &PowerSumSpec, kmax: u32) -> Vec<Series> {
        let mut h = vec![spec.ring().one()];
        for k in 1..=kmax {
            let mut acc = spec.ring().zero();
            for i in 1..=k {
                acc = &acc + &(&spec.get(i) * &h[(k - i) as usize]);
            }
            h.push(acc.scale(&rat(1, k as i64)));
        }
        h
    }

    #[test]
    fn complete_examples() {
        let ring = Ring::default();
        let zero = PowerSumSpec::new(&ring, 4, |_| Ok(ring.zero())).unwrap();
        let h = complete_from_powersums(&zero, 4).unwrap();
        assert_eq!(h[0], ring.one());
        assert!(h[1..].iter().all(Series::is_zero));

        let x = VarId::x(1);
        let single = PowerSumSpec::variables(&ring, 5, &[x]);
        for (k, hk) in complete_from_powersums(&single, 5).unwrap().iter().enumerate() {
            assert_eq!(*hk, ring.term(Monomial::power(x, int(k as i64)), int(1)).unwrap());
        }

        let c = ring.var(VarId::a(1));
        let exp_spec = PowerSumSpec::new(&ring, 4, |n| Ok(if n == 1 { c.clone() } else { ring.zero() })).unwrap();
        for (k, hk) in complete_from_powersums(&exp_spec, 4).unwrap().iter().enumerate() {
            let expected = c.pow(k as u32).unwrap().scale(&crate::num::factorial(k as u32).recip());
            assert_eq!(*hk, expected);
        }
        assert!(matches!(complete_from_powersums(&exp_spec, 5), Err(Error::Policy(_))));
    }

    #[test]
    fn complete_matches_newton() {
        let ring = Ring::default();
        let spec = PowerSumSpec::scaled_variables(&ring, 5, VarId::a);
        assert_eq!(complete_from_powersums(&spec, 5).unwrap(), newton(&spec, 5));
    }

    #[test]
    fn skew_schur_examples() {
        let ring = Ring::default();
        let (x, y) = (VarId::x(1), VarId::x(2));
        let one = PowerSumSpec::variables(&ring, 6, &[x]);
        assert_eq!(skew_schur_specialized(&p(&[2, 1]), &p(&[2, 1]), &one).unwrap(), ring.one());
        assert_eq!(skew_schur_specialized(&p(&[1]), &Partition::empty(), &one).unwrap(), ring.var(x));
        let two = PowerSumSpec::variables(&ring, 6, &[x, y]);
        let expected = ring
            .from_terms([
                (Monomial::from_pairs([(x, int(2)), (y, int(1))]), int(1)),
                (Monomial::from_pairs([(x, int(1)), (y, int(2))]), int(1)),
            ])
            .unwrap();
        assert_eq!(skew_schur_specialized(&p(&[2, 1]), &Partition::empty(), &two).unwrap(), expected);
        assert!(skew_schur_specialized(&p(&[1]), &p(&[2]), &two).unwrap().is_zero());
    }

    #[test]
    fn generalized_schur_examples() {
        let x1 = Monomial::var(VarId::x(1));
        let x2 = Monomial::var(VarId::x(2));
        let ring = Ring::default();
        let g = |parts: &[i64]| GeneralizedPartition::new(parts.to_vec()).unwrap();
        assert_eq!(
            schur_generalized(&g(&[1, 0]), 2).unwrap(),
            ring.from_terms([(x1.clone(), int(1)), (x2.clone(), int(1))]).unwrap()
        );
        assert_eq!(
            schur_generalized(&g(&[0, -1]), 2).unwrap(),
            ring.from_terms([(x1.inverse(), int(1)), (x2.inverse(), int(1))]).unwrap()
        );
        assert_eq!(schur_generalized(&g(&[1, 1]), 2).unwrap(), ring.term(x1.mul(&x2), int(1)).unwrap());
        assert!(matches!(schur_generalized(&g(&[1, 1]), 3), Err(Error::Arity(_))));
    }

    #[test]
    fn hilbert_series_examples() {
        let ring = Ring::new(TruncationPolicy::none().with_cap(VarId::q(), int(4)));
        assert_eq!(bosonic_hilbert_series(0, 4), ring.one());
        let geo = ring.from_terms((0..=4).map(|k| (Monomial::power(VarId::q(), int(k)), int(1)))).unwrap();
        assert_eq!(bosonic_hilbert_series(1, 4), geo);
        let expected = ring
            .from_terms([1, 1, 2, 2, 3].iter().enumerate().map(|(k, c)| (Monomial::power(VarId::q(), int(k as i64)), int(*c))))
            .unwrap();
        assert_eq!(bosonic_hilbert_series(2, 4), expected);
    }

    #[test]
    fn g_identity_matches() {
        let rep = g_series_identity_check(4, 6).unwrap();
        assert!(rep.agree, "{:?}", rep.first_diff);
        let t2q2 = Monomial::from_pairs([(VarId::q(), int(2)), (VarId::t(), int(2))]);
        assert!(rep.rows.iter().any(|r| r.monomial == t2q2.to_string() && r.lhs_value == "2/1" && r.rhs_value == "2/1"));
        assert!(rep.rows.iter().any(|r| r.monomial == "1" && r.lhs_value == "1/1"));
    }
}
