//! Vertex operators Gamma_(+/-)(x): horizontal strips and the commutation factor.

use fock_trace::error::Result;
use fock_trace::trace::{gamma_commutation_factor, gamma_strip_check};

fn main() -> Result<()> {
    let strips = gamma_strip_check(4)?;
    println!("Gamma amplitudes follow the horizontal strip rule: {} ({} entries)", strips.agree, strips.checked);
    let factor = gamma_commutation_factor(4)?;
    println!("G+(x)G-(y) = s G-(y)G+(x) with s = {}", factor.ratio);
    println!("s depends on xy only: {}, identified as {}", factor.xy_only, factor.identified);
    println!("s equals the factor 1 - xy: {}", factor.printed.agree);
    Ok(())
}
