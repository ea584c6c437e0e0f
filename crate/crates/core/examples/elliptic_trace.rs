//! The elliptic partition function as a trace, its unit-mass limit, twists and logarithm.

use std::collections::BTreeMap;

use fock_trace::error::Result;
use fock_trace::num::int;
use fock_trace::series::{Ring, TruncationPolicy, VarId};
use fock_trace::vertex::{at_unit_mass, cy_extended_trace, cy_partition_trace, cy_product_report, cy_vacuum_entry, log_z, CyParams};

fn main() -> Result<()> {
    let z = cy_partition_trace(2, 1)?;
    println!("Z to Qtau^2, q^1 has {} terms", z.len());
    println!("Z at Q_m = 1: {}", at_unit_mass(&z)?);
    println!("log Z at Q_m = 1: {}", log_z(&at_unit_mass(&z)?)?);
    println!("vacuum entry: {} terms", cy_vacuum_entry(CyParams { tau_order: 2, q_order: 1 })?.len());

    let t = Ring::new(TruncationPolicy::none().with_cap(VarId::t(), int(2))).var(VarId::t());
    let twisted = cy_extended_trace(2, 1, &BTreeMap::from([(2, t)]))?;
    println!("with an L_2 twist: {} terms", twisted.len());

    let report = cy_product_report(2, 2)?;
    println!("product display vs trace: agree = {} over {} monomials", report.agree, report.checked);
    Ok(())
}
