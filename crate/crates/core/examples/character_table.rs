//! Enumerating the unitary dual and printing character tables.
//!
//!     cargo run --example character_table -- D6

use std::sync::Arc;

use repfactor::cli::render_character_table;
use repfactor::group::parse_group_spec;
use repfactor::repr::unitary_dual;

fn main() -> repfactor::Result<()> {
    let specs: Vec<String> = std::env::args().skip(1).collect();
    let specs = if specs.is_empty() { vec!["S3".into(), "Q8".into(), "A4".into()] } else { specs };
    for spec in specs {
        let g = Arc::new(parse_group_spec(&spec)?);
        let cat = unitary_dual(&g, 42)?;
        print!("{}", render_character_table(&cat.character_table()));
        println!(
            "sum of squared dims {} = |G| {}, orthonormality residual {:.1e}\n",
            cat.sum_of_squared_dims(),
            g.order(),
            cat.orthonormality_residual()
        );
    }
    Ok(())
}
