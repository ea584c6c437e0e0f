//! Partitions: transposes, Frobenius coordinates, border strips and plane partitions.

use fock_trace::error::Result;
use fock_trace::partitions::{count_plane_partitions, generalized_partitions, partitions_of, Partition};

fn main() -> Result<()> {
    let lambda: Partition = "4,2,1".parse()?;
    let f = lambda.frobenius();
    println!("lambda = {lambda}, transpose = {}", lambda.transpose());
    println!("Frobenius arms {:?} legs {:?}", f.arms.iter().map(ToString::to_string).collect::<Vec<_>>(),
        f.legs.iter().map(ToString::to_string).collect::<Vec<_>>());

    for (mu, height) in lambda.border_strip_removals(3) {
        println!("remove a 3-strip -> {mu}, height {height}");
    }
    for (mu, height) in lambda.border_strip_additions(2) {
        println!("add a 2-strip    -> {mu}, height {height}");
    }

    let counts: Vec<usize> = (0..=8).map(|n| partitions_of(n).len()).collect();
    println!("partitions of 0..=8:       {counts:?}");
    let plane: Vec<u64> = (0..=8).map(count_plane_partitions).collect();
    println!("plane partitions of 0..=8: {plane:?}");

    let gen = generalized_partitions(2, 2);
    println!("generalized partitions with 2 slots and sum |l_i| <= 2: {}", gen.len());
    for g in gen.iter().take(5) {
        let w = g.lambda_prime();
        let eps: Vec<String> = w.eps.iter().map(|(i, c)| format!("{c}*eps_{i}")).collect();
        println!("  {g}  ->  {} Lambda_0 + [{}]", w.level, eps.join(" + "));
    }
    Ok(())
}
