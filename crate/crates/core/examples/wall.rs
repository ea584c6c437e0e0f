//! Vertex expectations bounded by a wall, in both operator orders.

use fock_trace::error::Result;
use fock_trace::vertex::wall_product_check;

fn main() -> Result<()> {
    for m in 1..=3 {
        let report = wall_product_check(m, 5)?;
        println!(
            "M = {m}: swapped order gives the wall product and the other order gives 1: {}; other order equals the product: {}",
            report.agree, report.params["printed_order_equals_product"]
        );
    }
    Ok(())
}
