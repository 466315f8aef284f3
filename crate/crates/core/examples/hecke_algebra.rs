//! The sandwich algebra e_F L^1(G) e_F acting on an isotype: irreducibility
//! of the module, surjectivity onto its endomorphisms, and the outer-tensor
//! span on a product group.
//!
//!     cargo run --example hecke_algebra

use std::sync::Arc;

use repfactor::group::{parse_group_spec, product_subgroup, subgroup_closure, Subgroup};
use repfactor::hecke::{
    c_f_image, cf_module_irreducible, outer_tensor_span_check, product_group, wedderburn_surjectivity_check,
};
use repfactor::repr::{tensor_product_rep_in, unitary_dual};

fn main() -> repfactor::Result<()> {
    let g = Arc::new(parse_group_spec("S3")?);
    let k = subgroup_closure(&g, &[1])?;
    let g_dual = unitary_dual(&g, 0)?;
    let k_dual = unitary_dual(k.as_group(), 0)?;
    println!("G = S3, K of order {}", k.order());
    for pi in &g_dual.irreps {
        for (i, tau) in k_dual.irreps.iter().enumerate() {
            let img = c_f_image(pi, &k, std::slice::from_ref(tau))?;
            if img.is_zero() {
                println!("  {:<8} tau{i}: isotype is zero", pi.label());
                continue;
            }
            println!(
                "  {:<8} tau{i}: module dim {}, span dim {}, irreducible {}, onto End {}",
                pi.label(),
                img.module_dim(),
                img.span_dim(),
                cf_module_irreducible(&img)?,
                wedderburn_surjectivity_check(&img)?
            );
        }
    }

    let h = Arc::new(parse_group_spec("C4")?);
    let gh = product_group(&g, &h);
    let l = Subgroup::whole(&h);
    let kl = product_subgroup(&gh, h.order(), &k, &l)?;
    println!("\nG x H = S3 x C4, K x L of order {}", kl.order());
    let h_dual = unitary_dual(&h, 0)?;
    let eta = tensor_product_rep_in(&g_dual.irreps[2], &h_dual.irreps[1], &gh)?;
    let r = outer_tensor_span_check(&eta, &k, &l, &k_dual.irreps, &h_dual.irreps[1..2])?;
    println!(
        "  isotype dim {}, tensor span {}, full span {}, joint {}, commutant {}: holds {}",
        r.isotype_dim, r.tensor_span_dim, r.full_span_dim, r.joint_span_dim, r.tensor_commutant_dim, r.holds()
    );
    Ok(())
}
