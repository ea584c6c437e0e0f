use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Symbol family of a series variable.
///
/// The declaration order is the canonical order used when monomials are
/// compared and serialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Q,
    QTau,
    QM,
    T,
    X,
    Y,
    A,
    B,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Q,
        Family::QTau,
        Family::QM,
        Family::T,
        Family::X,
        Family::Y,
        Family::A,
        Family::B,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Q => "q",
            Family::QTau => "Qtau",
            Family::QM => "Qm",
            Family::T => "t",
            Family::X => "x",
            Family::Y => "y",
            Family::A => "A",
            Family::B => "B",
        }
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

/// A series variable: a family plus an optional integer subscript.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub family: Family,
    pub index: Option<i64>,
}

impl VarId {
    pub const fn plain(family: Family) -> Self {
        VarId { family, index: None }
    }

    pub const fn indexed(family: Family, index: i64) -> Self {
        VarId { family, index: Some(index) }
    }

    pub const fn q() -> Self {
        Self::plain(Family::Q)
    }

    pub const fn q_tau() -> Self {
        Self::plain(Family::QTau)
    }

    pub const fn q_m() -> Self {
        Self::plain(Family::QM)
    }

    pub const fn t() -> Self {
        Self::plain(Family::T)
    }

    pub const fn x(i: i64) -> Self {
        Self::indexed(Family::X, i)
    }

    pub const fn y(j: i64) -> Self {
        Self::indexed(Family::Y, j)
    }

    pub const fn a(n: i64) -> Self {
        Self::indexed(Family::A, n)
    }

    pub const fn b(n: i64) -> Self {
        Self::indexed(Family::B, n)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}_{}", self.family.name(), i),
            None => f.write_str(self.family.name()),
        }
    }
}

impl FromStr for VarId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (name, index) = match s.split_once('_') {
            Some((n, i)) => {
                let i = i
                    .parse::<i64>()
                    .map_err(|_| Error::VariableMismatch(format!("bad subscript in {s:?}")))?;
                (n, Some(i))
            }
            None => (s, None),
        };
        let family = Family::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::VariableMismatch(format!("unknown variable {s:?}")))?;
        Ok(VarId { family, index })
    }
}

/// Set of families whose variables may carry non-integer exponents.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FamilySet(u16);

impl FamilySet {
    pub const fn empty() -> Self {
        FamilySet(0)
    }

    pub fn of(families: &[Family]) -> Self {
        families.iter().fold(Self::empty(), |s, &f| s.with(f))
    }

    pub fn with(self, f: Family) -> Self {
        FamilySet(self.0 | f.bit())
    }

    pub fn contains(self, f: Family) -> bool {
        self.0 & f.bit() != 0
    }

    pub fn union(self, other: Self) -> Self {
        FamilySet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Family> {
        Family::ALL.into_iter().filter(move |f| self.contains(*f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in [VarId::q(), VarId::q_tau(), VarId::y(-2), VarId::a(3), VarId::t()] {
            assert_eq!(v.to_string().parse::<VarId>().unwrap(), v);
        }
        assert!("z_1".parse::<VarId>().is_err());
    }

    #[test]
    fn canonical_family_order() {
        assert!(VarId::q() < VarId::q_tau());
        assert!(VarId::x(9) < VarId::y(-9));
        assert!(VarId::y(-1) < VarId::y(0));
        assert!(VarId::a(5) < VarId::b(1));
    }
}
