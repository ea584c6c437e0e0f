//! Coefficient-level comparison of two series.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

use serde::Serialize;

use crate::num::{fmt_rational, Rational};
use crate::series::{Monomial, Series};

/// Whether a disagreement indicates a defect or documents the source formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    Asserted,
    ReportOnly,
}

impl CheckMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckMode::Asserted => "asserted",
            CheckMode::ReportOnly => "report-only",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstDiff {
    pub monomial: String,
    pub lhs_value: String,
    pub rhs_value: String,
}

/// One compared coefficient, kept for tabular output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffRow {
    pub monomial: String,
    pub lhs_value: String,
    pub rhs_value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub lhs: String,
    pub rhs: String,
    pub agree: bool,
    pub checked: usize,
    pub first_diff: Option<FirstDiff>,
    pub params: BTreeMap<String, String>,
    #[serde(skip)]
    pub rows: Vec<DiffRow>,
}

impl ComparisonReport {
    /// Compares two series on the meet of their truncations.
    pub fn compare(lhs_label: &str, lhs: &Series, rhs_label: &str, rhs: &Series) -> Self {
        let common = lhs.policy().meet(rhs.policy());
        let (l, r) = (lhs.truncate_to(&common), rhs.truncate_to(&common));
        let monomials: BTreeSet<&Monomial> = l.terms().chain(r.terms()).map(|(m, _)| m).collect();
        let mut rows = Vec::with_capacity(monomials.len());
        let mut first_diff = None;
        for m in &monomials {
            let (a, b) = (l.coefficient(m), r.coefficient(m));
            let row = DiffRow { monomial: m.to_string(), lhs_value: fmt_rational(&a), rhs_value: fmt_rational(&b) };
            if a != b && first_diff.is_none() {
                first_diff = Some(FirstDiff {
                    monomial: row.monomial.clone(),
                    lhs_value: row.lhs_value.clone(),
                    rhs_value: row.rhs_value.clone(),
                });
            }
            rows.push(row);
        }
        let mut report = ComparisonReport {
            lhs: lhs_label.into(),
            rhs: rhs_label.into(),
            agree: first_diff.is_none(),
            checked: monomials.len(),
            first_diff,
            params: BTreeMap::new(),
            rows,
        };
        report.params.insert("common_truncation".into(), common.to_string());
        report
    }

    /// A report over named boolean facts rather than coefficients.
    pub fn from_checks(lhs_label: &str, rhs_label: &str, checks: Vec<(String, bool)>) -> Self {
        let first_diff = checks.iter().find(|(_, ok)| !ok).map(|(what, _)| FirstDiff {
            monomial: what.clone(),
            lhs_value: "fails".into(),
            rhs_value: "holds".into(),
        });
        let rows = checks
            .iter()
            .map(|(what, ok)| DiffRow {
                monomial: what.clone(),
                lhs_value: if *ok { "holds" } else { "fails" }.into(),
                rhs_value: "holds".into(),
            })
            .collect();
        ComparisonReport {
            lhs: lhs_label.into(),
            rhs: rhs_label.into(),
            agree: first_diff.is_none(),
            checked: checks.len(),
            first_diff,
            params: BTreeMap::new(),
            rows,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Display) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn with_mode(self, mode: CheckMode) -> Self {
        self.with_param("mode", mode.as_str())
    }

    pub fn mode(&self) -> CheckMode {
        match self.params.get("mode").map(String::as_str) {
            Some("report-only") => CheckMode::ReportOnly,
            _ => CheckMode::Asserted,
        }
    }

    /// Merges several reports into one: agreement iff all agree.
    pub fn combine(lhs_label: &str, rhs_label: &str, parts: &[ComparisonReport]) -> Self {
        let checked = parts.iter().map(|p| p.checked).sum();
        let first_diff = parts.iter().find_map(|p| {
            p.first_diff.as_ref().map(|d| FirstDiff { monomial: format!("{}: {}", p.lhs, d.monomial), ..d.clone() })
        });
        let rows = parts
            .iter()
            .flat_map(|p| {
                p.rows.iter().map(move |r| DiffRow { monomial: format!("{}: {}", p.lhs, r.monomial), ..r.clone() })
            })
            .collect();
        ComparisonReport {
            lhs: lhs_label.into(),
            rhs: rhs_label.into(),
            agree: first_diff.is_none(),
            checked,
            first_diff,
            params: BTreeMap::new(),
            rows,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Header plus one row per compared monomial.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("monomial,lhs,rhs\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", csv_field(&r.monomial), r.lhs_value, r.rhs_value));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Coefficient of `m` as a `num/den` string; convenient in labels.
pub fn coefficient_string(s: &Series, m: &Monomial) -> String {
    let c: Rational = s.coefficient(m);
    fmt_rational(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;
    use crate::series::{Ring, TruncationPolicy, VarId};

    #[test]
    fn reports_first_difference_in_canonical_order() {
        let r = Ring::new(TruncationPolicy::none().with_cap(VarId::q(), int(3)));
        let q = r.var(VarId::q());
        let a = &(&r.one() + &q) + &(&q * &q);
        let b = &(&r.one() + &q) + &(&(&q * &q) * &r.constant(int(2)));
        let rep = ComparisonReport::compare("a", &a, "b", &b);
        assert!(!rep.agree);
        assert_eq!(rep.checked, 3);
        let d = rep.first_diff.clone().unwrap();
        assert_eq!((d.monomial.as_str(), d.lhs_value.as_str(), d.rhs_value.as_str()), ("q^2", "1/1", "2/1"));
        assert!(rep.to_csv().starts_with("monomial,lhs,rhs\n1,1/1,1/1\n"));
        assert_eq!(rep.to_json(), rep.clone().to_json());
        assert!(ComparisonReport::compare("a", &a, "a", &a).agree);
    }
}
