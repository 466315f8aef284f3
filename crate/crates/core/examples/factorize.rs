//! Every irreducible of G x H factors as π ⊗ τ. Factors the whole dual of
//! a product and prints one certificate.
//!
//!     cargo run --example factorize -- D4 S3

use std::sync::Arc;

use repfactor::factorization::{factorize, FactorizationCertificate};
use repfactor::group::{direct_product, parse_group_spec, GroupRef};
use repfactor::repr::unitary_dual;

fn main() -> repfactor::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let g_spec = args.first().map_or("D4", String::as_str);
    let h_spec = args.get(1).map_or("S3", String::as_str);
    let g: GroupRef = Arc::new(parse_group_spec(g_spec)?);
    let h: GroupRef = Arc::new(parse_group_spec(h_spec)?);
    let product: GroupRef = Arc::new(direct_product(&g, &h));
    let cat = unitary_dual(&product, 42)?;
    println!("{} has {} irreps", product.label(), cat.len());

    let mut worst: f64 = 0.0;
    for (i, eta) in cat.irreps.iter().enumerate() {
        let r = factorize(eta, &g, &h, 42)?;
        worst = worst.max(r.residual_intertwine).max(r.residual_character);
        println!(
            "  eta{i:<3} dim {} = {} x {}   intertwine {:.1e}",
            eta.dim(),
            r.pi.dim(),
            r.tau.dim(),
            r.residual_intertwine
        );
    }
    println!("worst residual {worst:.1e}");

    let last = cat.len() - 1;
    let eta = &cat.irreps[last];
    let cert = FactorizationCertificate::new(eta, &factorize(eta, &g, &h, 42)?, last)?;
    println!("\ncertificate for eta{last} (rechecks: {}):", cert.recheck(&g, &h, 1e-6));
    println!("{}", serde_json::to_string_pretty(&cert).expect("serializable"));
    Ok(())
}
