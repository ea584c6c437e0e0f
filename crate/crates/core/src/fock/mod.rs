//! Truncated Fock spaces and the operators acting on them.
//!
//! Level one is the semi-infinite wedge space with basis [`MayaVector`]; level
//! `l` (and a finite window of the level-∞ space) is the Clifford module with
//! basis [`CliffordMonomial`]. Both implement [`BasisVector`], so a single
//! evaluator handles operator expressions on either.

mod clifford;
mod maya;
mod operator;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use num_traits::Zero;

use crate::error::Result;
use crate::num::{int, HalfInt, Rational};

pub use clifford::{
    a_index_window, apply_a_gen, apply_gl_gen, basis_level_l, highest_weight_vector, highest_weight_vector_in,
    CliffordMonomial, CreationFactor, FlavorWindow, Sign,
};
pub use maya::{
    apply_alpha, apply_alpha_bilinear, apply_psi, apply_psi_star, basis_level1, basis_modes, casimir_exponents,
    ChargeSelection, MayaVector,
};
pub use operator::{apply_operator, apply_to_vector, brute_trace, EvalContext, Exponential, FockState, OperatorExpr};

/// A finite linear combination with rational coefficients.
pub type Combination<B> = BTreeMap<B, Rational>;

/// A single (non-diagonal) generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `ψ_r`, inserting the position `-r`.
    Psi(HalfInt),
    /// `ψ*_r`, removing the position `-r`.
    PsiStar(HalfInt),
    /// Boson `α_n`, `n ≠ 0`.
    Alpha(i64),
    /// `ψ^{sign,flavor}_mode` of the Clifford module.
    Fermion { sign: Sign, flavor: i64, mode: HalfInt },
    /// a∞ generator `e*_{ij}`, its flavor sum cut to `flavors`.
    AGen { i: i64, j: i64, flavors: FlavorWindow },
    /// gl generator `e^{ij}_*`.
    GlGen { i: i64, j: i64 },
}

impl Generator {
    /// Change in energy (or degree) produced by the generator.
    pub fn degree(&self) -> Rational {
        match *self {
            Generator::Psi(r) => -r.to_rational(),
            Generator::PsiStar(r) => r.to_rational(),
            Generator::Alpha(n) => int(-n),
            Generator::Fermion { mode, .. } => -mode.to_rational(),
            Generator::AGen { i, j, .. } => int(i - j),
            Generator::GlGen { .. } => Rational::zero(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Psi(r) => write!(f, "psi({r})"),
            Generator::PsiStar(r) => write!(f, "psi*({r})"),
            Generator::Alpha(n) => write!(f, "alpha({n})"),
            Generator::Fermion { sign, flavor, mode } => write!(f, "psi^{{{sign},{flavor}}}({mode})"),
            Generator::AGen { i, j, .. } => write!(f, "e*({i},{j})"),
            Generator::GlGen { i, j } => write!(f, "e_*({i},{j})"),
        }
    }
}

/// Operators acting diagonally on every basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Diagonal {
    Charge,
    Energy,
    /// `L_j`.
    Casimir(u32),
    /// `e^{ii}_*`.
    GlDiag(i64),
    /// `e*_{jj}`.
    ADiag(i64),
}

/// A basis vector of a truncated Fock space.
pub trait BasisVector: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn energy(&self) -> Rational;
    fn apply_generator(&self, g: &Generator) -> Result<Combination<Self>>;
    fn eigenvalue(&self, d: Diagonal) -> Result<Rational>;
}

/// Applies `g` to a combination, without truncation.
pub fn apply_combination<B: BasisVector>(g: &Generator, v: &Combination<B>) -> Result<Combination<B>> {
    let mut out = Combination::new();
    for (b, c) in v {
        for (w, d) in b.apply_generator(g)? {
            accumulate(&mut out, w, c * d);
        }
    }
    Ok(out)
}

pub(crate) fn accumulate<B: Ord>(acc: &mut Combination<B>, b: B, c: Rational) {
    if c.is_zero() {
        return;
    }
    match acc.entry(b) {
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

/// `a - b` on combinations.
pub fn difference<B: Ord + Clone>(a: &Combination<B>, b: &Combination<B>) -> Combination<B> {
    let mut out = a.clone();
    for (k, c) in b {
        accumulate(&mut out, k.clone(), -c);
    }
    out
}

/// Commutator `[x, y] = xy - yx` applied to a single vector.
pub fn commutator_on<B: BasisVector>(x: &Generator, y: &Generator, v: &B) -> Result<Combination<B>> {
    let start = Combination::from([(v.clone(), Rational::from_integer(1.into()))]);
    let xy = apply_combination(x, &apply_combination(y, &start)?)?;
    let yx = apply_combination(y, &apply_combination(x, &start)?)?;
    Ok(difference(&xy, &yx))
}

/// Anticommutator `{x, y} = xy + yx` applied to a single vector.
pub fn anticommutator_on<B: BasisVector>(x: &Generator, y: &Generator, v: &B) -> Result<Combination<B>> {
    let start = Combination::from([(v.clone(), Rational::from_integer(1.into()))]);
    let mut out = apply_combination(x, &apply_combination(y, &start)?)?;
    for (k, c) in apply_combination(y, &apply_combination(x, &start)?)? {
        accumulate(&mut out, k, c);
    }
    Ok(out)
}
