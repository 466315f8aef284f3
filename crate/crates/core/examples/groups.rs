//! Building finite groups: named families, products, subgroups and Cayley
//! table files.
//!
//!     cargo run --example groups

use std::sync::Arc;

use repfactor::group::{
    direct_product, load_table_file, parse_group_spec, save_table_file, standard_subgroups, subgroup_closure, GroupRef,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for spec in ["C6", "D4", "Q8", "A4", "S4", "prod(S3,C2)"] {
        let g = parse_group_spec(spec)?;
        let sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        println!(
            "{:<12} order {:>2}, {} classes {:?}, abelian {}",
            g.label(),
            g.order(),
            g.num_classes(),
            sizes,
            g.is_abelian()
        );
    }

    let s3: GroupRef = Arc::new(parse_group_spec("S3")?);
    let c4: GroupRef = Arc::new(parse_group_spec("C4")?);
    let product = direct_product(&s3, &c4);
    // (a, b) is stored as a * |H| + b
    let (a, b) = (1, 3);
    let x = a * c4.order() + b;
    println!("\n{}: element ({a},{b}) has index {x} and order {}", product.label(), product.element_order(x));

    println!("\nsubgroups swept by the verification suites in S3:");
    for k in standard_subgroups(&s3) {
        println!("  order {} {:?}", k.order(), k.elements());
    }
    let k = subgroup_closure(&s3, &[s3.generators()[0]])?;
    println!("closure of the first generator: {:?}", k.elements());

    let dir = std::env::temp_dir().join("repfactor-groups-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("q8.json");
    let q8 = parse_group_spec("Q8")?;
    save_table_file(&q8, &path)?;
    let back = load_table_file(&path)?;
    println!("\nQ8 written to {} and read back: same table {}", path.display(), back.table() == q8.table());
    Ok(())
}
