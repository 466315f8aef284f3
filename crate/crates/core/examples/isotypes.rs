//! Character idempotents of a subgroup and the isotypic pieces they cut out
//! of a representation.
//!
//!     cargo run --example isotypes

use std::sync::Arc;

use repfactor::group::{parse_group_spec, subgroup_closure};
use repfactor::hecke::{convolve, e_f, involution, pi_of_subgroup};
use repfactor::repr::{isotype, multiplicity, regular_representation, unitary_dual};

fn main() -> repfactor::Result<()> {
    let g = Arc::new(parse_group_spec("D4")?);
    let reg = regular_representation(&g);
    // cyclic subgroup of order 4 generated by the rotation
    let rot = (0..g.order()).find(|&x| g.element_order(x) == 4).expect("rotation");
    let k = subgroup_closure(&g, &[rot])?;
    let k_dual = unitary_dual(k.as_group(), 3)?;
    println!("K = <{rot}> of order {}, {} irreps", k.order(), k_dual.len());

    for tau in &k_dual.irreps {
        println!("  {:<10} multiplicity in the regular rep: {}", tau.label(), multiplicity(&reg, &k, tau)?);
    }

    let f = &k_dual.irreps[..2];
    let e = e_f(&k, f)?;
    let idem = convolve(&e, &e)?.distance(&e);
    let herm = involution(&e).distance(&e);
    let iso = isotype(&reg, &k, f)?;
    let proj_gap = (pi_of_subgroup(&e, &reg, &k)? - &iso.projection).norm();
    println!("\nF = first two irreps of K:");
    println!("  |e_F * e_F - e_F| = {idem:.1e}, |e_F* - e_F| = {herm:.1e}");
    println!("  isotype dim {}, |pi(e_F) - P| = {proj_gap:.1e}", iso.dim());
    Ok(())
}
