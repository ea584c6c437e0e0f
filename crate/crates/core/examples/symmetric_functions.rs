//! Skew Schur functions under the specialization p_n = n A_n, Casimir eigenvalues and Schur polynomials.

use fock_trace::error::Result;
use fock_trace::num::int;
use fock_trace::partitions::{GeneralizedPartition, Partition};
use fock_trace::series::{Family, Ring, TruncationPolicy, VarId};
use fock_trace::symfunc::{casimir_eigenvalue, casimir_eigenvalue_frobenius, schur_generalized, skew_schur_specialized, PowerSumSpec};

fn main() -> Result<()> {
    let ring = Ring::new(TruncationPolicy::graded([Family::A], int(4)));
    let spec = PowerSumSpec::scaled_variables(&ring, 4, VarId::a);
    let lambda: Partition = "3,1".parse()?;
    for mu in ["", "1", "2", "1,1"] {
        let mu: Partition = mu.parse()?;
        println!("S_{{{lambda}/{mu}}} = {}", skew_schur_specialized(&lambda, &mu, &spec)?);
    }

    for r in 1..=4 {
        println!("p_{r}({lambda}) = {} = {}", casimir_eigenvalue(&lambda, r), casimir_eigenvalue_frobenius(&lambda, r));
    }

    let g = GeneralizedPartition::new(vec![1, 0, -1])?;
    println!("s_{g}(x_1, x_2, x_3) = {}", schur_generalized(&g, 3)?);
    Ok(())
}
