//! Acceptance criteria, one line per criterion. Runs as a plain binary
//! (`harness = false`) so the summary is always printed:
//!
//!     cargo test -p repfactor --test acceptance

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use repfactor::group::{direct_product, parse_group_spec, GroupRef};
use repfactor::repr::unitary_dual;
use repfactor::suites::{run, Suite, SuiteConfig};

/// Groups of the dual-enumeration corpus with their class counts and
/// irreducible dimensions (standard character tables).
const CORPUS: [(&str, usize, &[usize]); 10] = [
    ("C1", 1, &[1]),
    ("C2", 2, &[1, 1]),
    ("C4", 4, &[1, 1, 1, 1]),
    ("prod(C2,C2)", 4, &[1, 1, 1, 1]),
    ("S3", 3, &[1, 1, 2]),
    ("D4", 5, &[1, 1, 1, 1, 2]),
    ("Q8", 5, &[1, 1, 1, 1, 2]),
    ("A4", 4, &[1, 1, 1, 3]),
    ("D6", 6, &[1, 1, 1, 1, 2, 2]),
    ("S4", 5, &[1, 1, 2, 3, 3]),
];

const SEED: u64 = 42;

struct Outcome {
    ok: bool,
    detail: String,
}

fn group(spec: &str) -> GroupRef {
    Arc::new(parse_group_spec(spec).expect("corpus spec"))
}

/// Runs `suite` for each `(g, h)` and collects failures.
fn suite_sweep(suite: Suite, pairs: &[(&str, &str)]) -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut worst: f64 = 0.0;
    for (g, h) in pairs {
        let cfg = SuiteConfig::from_specs(g, h).expect("spec").with_seed(SEED);
        match run(suite, &cfg) {
            Ok(r) => {
                checks += r.checks.len();
                worst = worst.max(r.max_residual());
                failures.extend(r.failures().map(|c| format!("{g}x{h}: {} ({})", c.name, c.detail)));
            }
            Err(e) => failures.push(format!("{g}x{h}: {e}")),
        }
    }
    Outcome {
        ok: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{checks} checks, max residual {worst:.2e}")
        } else {
            format!("{} failures: {}", failures.len(), failures.join("; "))
        },
    }
}

fn corpus_pairs() -> Vec<(&'static str, &'static str)> {
    CORPUS.iter().map(|(g, _, _)| (*g, "C2")).collect()
}

fn dual_enumeration() -> Outcome {
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for (spec, classes, dims) in CORPUS {
        let g = group(spec);
        let cat = match unitary_dual(&g, SEED) {
            Ok(c) => c,
            Err(e) => {
                bad.push(format!("{spec}: {e}"));
                continue;
            }
        };
        let mut got = cat.dims();
        got.sort_unstable();
        let sq: usize = got.iter().map(|d| d * d).sum();
        let residual = cat.orthonormality_residual();
        worst = worst.max(residual);
        if cat.len() != classes || g.num_classes() != classes || sq != g.order() || got != dims || residual >= 1e-6 {
            bad.push(format!("{spec}: {} irreps, dims {got:?}, sum {sq}, residual {residual:.2e}", cat.len()));
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() { format!("10 groups, orthonormality {worst:.2e}") } else { bad.join("; ") },
    }
}

fn tensor_factorization() -> Outcome {
    let pairs = [("S3", "C4", 12), ("D4", "S3", 15), ("Q8", "prod(C2,C2)", 20)];
    let mut bad = Vec::new();
    for (g, h, expected) in pairs {
        let (gg, hg) = (group(g), group(h));
        let product: GroupRef = Arc::new(direct_product(&gg, &hg));
        let counts = (
            unitary_dual(&gg, SEED).map(|c| c.len()),
            unitary_dual(&hg, SEED).map(|c| c.len()),
            unitary_dual(&product, SEED).map(|c| c.len()),
        );
        match counts {
            (Ok(a), Ok(b), Ok(c)) if a * b == c && c == expected => {}
            other => bad.push(format!("{g}x{h}: counts {other:?}, expected {expected}")),
        }
    }
    let sweep = suite_sweep(Suite::TensorFactorization, &pairs.map(|(g, h, _)| (g, h)));
    Outcome {
        ok: bad.is_empty() && sweep.ok,
        detail: if bad.is_empty() { format!("12, 15, 20 irreps; {}", sweep.detail) } else { bad.join("; ") },
    }
}

fn determinism() -> Outcome {
    let cfg = SuiteConfig::from_specs("S3", "C4").expect("spec").with_seed(SEED);
    let mut differing = Vec::new();
    for s in Suite::ALL {
        let a = run(s, &cfg).map(|r| r.to_structured());
        let b = run(s, &cfg).map(|r| r.to_structured());
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => differing.push(s.name()),
        }
    }
    Outcome {
        ok: differing.is_empty(),
        detail: if differing.is_empty() {
            "all 10 suites byte-identical on S3xC4".into()
        } else {
            format!("differing: {differing:?}")
        },
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            out.ok = false;
            out.detail = format!("over time limit {limit:?}; {}", out.detail);
        }
    }
    (out, elapsed)
}

fn main() -> ExitCode {
    let corpus = corpus_pairs();
    let small: Vec<(&str, &str)> = CORPUS.iter().filter(|(g, _, _)| group(g).order() <= 24).map(|(g, _, _)| (*g, "C2")).collect();
    let criteria: Vec<(&str, Option<Duration>, Box<dyn FnOnce() -> Outcome>)> = vec![
        ("dual enumeration", Some(Duration::from_secs(10)), Box::new(dual_enumeration)),
        ("character idempotents and isotypic projections", None, Box::new(|| suite_sweep(Suite::Idempotents, &corpus))),
        ("convolution algebra identities", None, Box::new(|| suite_sweep(Suite::AlgebraIdentities, &corpus))),
        (
            "sandwich-algebra modules (irreducible, generated, isomorphism)",
            None,
            Box::new(|| {
                let parts = [Suite::ModuleIrreducibility, Suite::GeneratedSubrep, Suite::ModuleIsomorphism]
                    .map(|s| suite_sweep(s, &small));
                Outcome {
                    ok: parts.iter().all(|p| p.ok),
                    detail: parts.iter().map(|p| p.detail.as_str()).collect::<Vec<_>>().join(" | "),
                }
            }),
        ),
        ("endomorphism surjectivity and evaluation map", None, Box::new(|| suite_sweep(Suite::Wedderburn, &small))),
        ("commutant splitting and stable subspaces", None, Box::new(|| suite_sweep(Suite::CommutantSplit, &corpus))),
        ("tensor factorization end to end", Some(Duration::from_secs(60)), Box::new(tensor_factorization)),
        ("outer-tensor span equals product span", None, Box::new(|| suite_sweep(Suite::OuterTensorSpan, &[("S3", "C4")]))),
        ("deterministic reports", None, Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let (out, elapsed) = timed(limit, f);
        failed += (!out.ok) as usize;
        println!(
            "criterion {} [{}] {name} ({:.2}s): {}",
            i + 1,
            if out.ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            out.detail
        );
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
