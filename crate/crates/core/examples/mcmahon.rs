//! Plane partitions from a product of vertex operators.

use fock_trace::error::Result;
use fock_trace::num::int;
use fock_trace::series::{Monomial, VarId};
use fock_trace::vertex::{mcmahon_check, mcmahon_series};

fn main() -> Result<()> {
    let series = mcmahon_series(7)?;
    let coefficients: Vec<String> =
        (0..=7).map(|n| series.coefficient(&Monomial::power(VarId::q(), int(n))).to_string()).collect();
    println!("<0| prod G+ prod G- |0> = {}", coefficients.join(", "));
    let report = mcmahon_check(7)?;
    println!("equals enumeration and prod (1-q^n)^(-n): {}", report.agree);
    Ok(())
}
