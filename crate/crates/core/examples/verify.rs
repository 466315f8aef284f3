//! Runs verification suites programmatically and prints the reports.
//!
//!     cargo run --example verify -- Q8 C2 wedderburn

use repfactor::suites::{run, Suite, SuiteConfig};

fn main() -> repfactor::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let g = args.first().map_or("S3", String::as_str);
    let h = args.get(1).map_or("C2", String::as_str);
    let suites = match args.get(2) {
        Some(name) => vec![Suite::from_name(name).unwrap_or_else(|| panic!("unknown suite {name}"))],
        None => Suite::ALL.to_vec(),
    };
    let cfg = SuiteConfig::from_specs(g, h)?.with_seed(42);
    for s in suites {
        let r = run(s, &cfg)?;
        println!(
            "{:<18} {:<22} {:>4} checks  max residual {:.1e}  {}",
            s.name(),
            s.alias(),
            r.checks.len(),
            r.max_residual(),
            if r.passed() { "ok" } else { "FAILED" }
        );
        for c in r.failures() {
            println!("    {} {}", c.name, c.detail);
        }
    }
    Ok(())
}
