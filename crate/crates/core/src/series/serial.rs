use serde::{Deserialize, Serialize};

use super::{Monomial, Ring, Series, VarId};
use crate::error::{Error, Result};
use crate::num::{fmt_rational, parse_rational};

/// One serialized term: sorted `[variable, "num/den"]` pairs and a `"num/den"` coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<(String, String)>,
    pub coefficient: String,
}

impl TermJson {
    pub fn from_term(m: &Monomial, c: &crate::num::Rational) -> Self {
        TermJson {
            monomial: m.pairs().iter().map(|(v, e)| (v.to_string(), fmt_rational(e))).collect(),
            coefficient: fmt_rational(c),
        }
    }
}

impl Series {
    /// Canonically ordered term list.
    pub fn to_terms_json(&self) -> Vec<TermJson> {
        self.terms().map(|(m, c)| TermJson::from_term(m, c)).collect()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_terms_json()).expect("term lists always serialize")
    }
}

impl Ring {
    pub fn from_terms_json(&self, terms: &[TermJson]) -> Result<Series> {
        let parse = |s: &str| parse_rational(s).ok_or_else(|| Error::Config(format!("bad rational {s:?}")));
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let mut pairs = Vec::with_capacity(t.monomial.len());
            for (v, e) in &t.monomial {
                pairs.push((v.parse::<VarId>()?, parse(e)?));
            }
            parsed.push((Monomial::from_pairs(pairs), parse(&t.coefficient)?));
        }
        self.from_terms(parsed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, rat};
    use crate::series::Family;

    #[test]
    fn stable_two_term_json() {
        let r = Ring::default();
        let s = &r.one() + &r.var(VarId::q());
        assert_eq!(
            s.to_json_string(),
            r#"[{"monomial":[],"coefficient":"1/1"},{"monomial":[["q","1/1"]],"coefficient":"1/1"}]"#
        );
        assert_eq!(s.to_json_string(), s.clone().to_json_string());
    }

    #[test]
    fn round_trip_with_rational_exponents() {
        let r = Ring::default().with_rational(Family::Y);
        let m = Monomial::from_pairs([(VarId::y(0), int(-1)), (VarId::y(1), rat(1, 2))]);
        let s = r.from_terms([(m, rat(-3, 4)), (Monomial::var(VarId::q()), int(2))]).unwrap();
        let back = r.from_terms_json(&s.to_terms_json()).unwrap();
        assert_eq!(back, s);
    }
}
