//! Level-one Fock space: fermions, bosons as border strips and Casimir eigenvalues.

use fock_trace::error::Result;
use fock_trace::fock::{
    apply_alpha, apply_alpha_bilinear, apply_combination, apply_psi, apply_psi_star, basis_level1, casimir_exponents,
    commutator_on, ChargeSelection, Combination, Generator, MayaVector,
};
use fock_trace::num::{int, HalfInt};

fn show(c: &Combination<MayaVector>) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.iter().map(|(v, k)| format!("{k}{v}")).collect::<Vec<_>>().join(" + ")
}

fn main() -> Result<()> {
    let vac = MayaVector::vacuum();
    let half = HalfInt::from_twice(-1).expect("odd");
    println!("psi_(-1/2)|0>  = {}", show(&apply_psi(half, &vac)));
    println!("psi*_(-1/2)|0> = {}", show(&apply_psi_star(half, &vac)));

    let mut state = Combination::from([(vac, int(1))]);
    for _ in 0..3 {
        state = apply_combination(&Generator::Alpha(-1), &state)?;
    }
    println!("alpha_(-1)^3|0> = {}", show(&state));

    let basis = basis_level1(&int(3), ChargeSelection::All);
    let agree = basis.iter().all(|b| (1..=3).all(|n| apply_alpha(-n, b) == apply_alpha_bilinear(-n, b)));
    println!("{} vectors of energy <= 3; strip rule = fermion bilinear: {agree}", basis.len());

    let v = MayaVector::new(0, "3,1".parse()?);
    let exps: Vec<String> = casimir_exponents(&v, 4).iter().map(ToString::to_string).collect();
    println!("L_0..L_4 on {v}: {}", exps.join(", "));
    println!("[alpha_2, alpha_-2] {v} = {}", show(&commutator_on(&Generator::Alpha(2), &Generator::Alpha(-2), &v)?));
    Ok(())
}
