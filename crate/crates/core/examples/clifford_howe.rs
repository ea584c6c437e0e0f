//! Level-l Clifford modules: the commuting gl and a-infinity actions, highest weight vectors and characters.

use fock_trace::error::Result;
use fock_trace::fock::{apply_a_gen, apply_gl_gen, basis_level_l, highest_weight_vector, FlavorWindow};
use fock_trace::num::int;
use fock_trace::partitions::GeneralizedPartition;
use fock_trace::trace::{duality_checks, howe_character_check};

fn main() -> Result<()> {
    let window = FlavorWindow::level(2);
    let degree = int(2);
    let basis = basis_level_l(window, &degree);
    println!("level 2, degree <= 2: {} basis vectors", basis.len());

    let lambda = GeneralizedPartition::new(vec![1, -1])?;
    let v = highest_weight_vector(&lambda, 2)?;
    println!("highest weight vector for {lambda}: {v}");
    println!("  e^(12) v = {:?}", apply_gl_gen(1, 2, &v));
    println!("  e*_(01) v = {:?}", apply_a_gen(0, 1, window, &v));
    println!("  gl weights ({}, {})", v.gl_weight(1), v.gl_weight(2));

    let character = howe_character_check(window, &degree)?;
    println!("character vs fermion product: agree = {} over {} monomials", character.agree, character.checked);
    let duality = duality_checks(window, &degree, 2)?;
    println!("commuting actions and highest weights: agree = {}", duality.agree);
    Ok(())
}
