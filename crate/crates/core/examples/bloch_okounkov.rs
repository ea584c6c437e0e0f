//! The character Tr prod_j y_j^{L_j} over all charges, against its product over modes.

use fock_trace::error::Result;
use fock_trace::trace::{bo_check, bo_product};

fn main() -> Result<()> {
    println!("one mode, j <= 1: {}", bo_product(1, 1)?);
    let report = bo_check(2, 3)?;
    println!("j <= 2, 3 modes: agree = {} over {} monomials", report.agree, report.checked);
    Ok(())
}
