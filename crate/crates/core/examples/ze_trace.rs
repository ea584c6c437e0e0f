//! Tr q^{L_0} exp(sum A_n alpha_-n) exp(sum B_n alpha_n) by brute force and by its product formula.

use fock_trace::error::Result;
use fock_trace::trace::{ze_check, ze_formula};

fn main() -> Result<()> {
    println!("product formula to q^3, A/B degree 2:\n  {}", ze_formula(3, 2)?);
    let report = ze_check(6, 6, 2)?;
    println!("{}", report.to_json());
    Ok(())
}
