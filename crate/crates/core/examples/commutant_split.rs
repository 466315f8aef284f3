//! Operators commuting with p(g) ⊗ 1 are of the form 1 ⊗ S, and stable
//! subspaces are V_p ⊗ W₁.
//!
//!     cargo run --example commutant_split

use std::sync::Arc;

use repfactor::factorization::{split_commutant, stable_subspace_factor};
use repfactor::group::parse_group_spec;
use repfactor::numerics::{kron, random_complex, rng_from_seed, ComplexMatrix};
use repfactor::repr::unitary_dual;

fn main() -> repfactor::Result<()> {
    let g = Arc::new(parse_group_spec("A4")?);
    let cat = unitary_dual(&g, 0)?;
    let p = cat.irreps.last().expect("A4 has irreps");
    let w = 3;
    let mut rng = rng_from_seed(11);

    let s = random_complex(&mut rng, w, w);
    let t = kron(&ComplexMatrix::identity(p.dim(), p.dim()), &s);
    let split = split_commutant(&t, p, w)?;
    println!("dim p = {}, dim W = {w}", p.dim());
    println!("recovered S: |S - S0| = {:.1e}, fit residual {:.1e}", (&split.s - &s).norm(), split.residual);

    // a generic operator does not commute with p(g) ⊗ 1
    let generic = random_complex(&mut rng, p.dim() * w, p.dim() * w);
    match split_commutant(&generic, p, w) {
        Ok(_) => println!("unexpected split of a generic operator"),
        Err(e) => println!("generic operator rejected: {e}"),
    }

    // U = V_p ⊗ span(first two basis vectors of W)
    let w1 = ComplexMatrix::identity(w, 2);
    let u = kron(&ComplexMatrix::identity(p.dim(), p.dim()), &w1);
    let stable = stable_subspace_factor(&u, p, w)?;
    println!("stable subspace: dim W1 = {}, residual {:.1e}", stable.w1.ncols(), stable.residual);
    Ok(())
}
