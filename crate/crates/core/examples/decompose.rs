//! Splitting representations into irreducibles: the regular representation
//! and the inner tensor square of the 3-dimensional standard irrep of S4.
//!
//!     cargo run --example decompose

use std::sync::Arc;

use repfactor::group::parse_group_spec;
use repfactor::numerics::orthonormality_residual;
use repfactor::numerics::kron;
use repfactor::repr::{decompose, regular_representation, unitary_dual, UnitaryRep};

fn show(p: &UnitaryRep) -> repfactor::Result<()> {
    println!("{} (dim {}):", p.label(), p.dim());
    for s in decompose(p, 7)? {
        let embed = orthonormality_residual(&s.embedding);
        println!(
            "  dim {} x{}  block orthonormality {:.1e}  character {:?}",
            s.irrep.dim(),
            s.multiplicity,
            embed,
            s.character.values.iter().map(|z| (z.re * 1e6).round() / 1e6).collect::<Vec<_>>()
        );
    }
    Ok(())
}

fn main() -> repfactor::Result<()> {
    let g = Arc::new(parse_group_spec("S4")?);
    show(&regular_representation(&g))?;

    let cat = unitary_dual(&g, 1)?;
    let std3 = cat.irreps.iter().find(|r| r.dim() == 3).expect("S4 has a 3-dim irrep");
    let square = UnitaryRep::new(g.clone(), std3.matrices().iter().map(|m| kron(m, m)).collect(), "std3(x)std3")?;
    println!();
    show(&square)?;
    Ok(())
}
