//! The skew-Schur expansion of the twisted trace, compared under every reading.

use fock_trace::error::Result;
use fock_trace::trace::{main_formula_reports, main_vacuum_term_check, MainParams};

fn main() -> Result<()> {
    let params = MainParams { energy: 3, jmax: 2, ab_degree: 2 };
    let vacuum = main_vacuum_term_check(params)?;
    println!("lambda = empty summand matches the mode product: {}", vacuum.agree);
    for report in main_formula_reports(params)? {
        let where_ = report.first_diff.as_ref().map(|d| format!(" first differs at {}", d.monomial)).unwrap_or_default();
        println!("{:<70} agree = {}{where_}", report.params["reading"], report.agree);
    }
    Ok(())
}
