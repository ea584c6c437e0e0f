//! Exact truncated series: products, inverses, exp/log and substitution.

use std::collections::BTreeMap;

use fock_trace::error::Result;
use fock_trace::num::{int, rat};
use fock_trace::series::{series_exp, series_invert, series_log, series_substitute, Family, Ring, TruncationPolicy, VarId};

fn main() -> Result<()> {
    let x = VarId::plain(Family::X);
    let ring = Ring::new(TruncationPolicy::none().with_cap(VarId::q(), int(6)).with_cap(x, int(2)));
    let q = ring.var(VarId::q());

    let one_minus_q = ring.one().try_sub(&q)?;
    println!("1/(1-q)        = {}", series_invert(&one_minus_q)?);
    println!("exp(q)         = {}", series_exp(&q)?);
    println!("log(1/(1-q))   = {}", series_log(&series_invert(&one_minus_q)?)?);

    let mixed = q.try_mul(&ring.var(x))?.try_add(&q.pow(2)?.scale(&rat(1, 3)))?;
    println!("(q x + q^2/3)^2 = {}", mixed.pow(2)?);

    let bindings = BTreeMap::from([(x, q.pow(2)?)]);
    println!("x -> q^2       : {}", series_substitute(&mixed, &bindings)?);
    println!("canonical JSON : {}", mixed.to_json_string());
    Ok(())
}
