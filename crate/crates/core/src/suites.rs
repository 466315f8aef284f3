//! Named verification suites. Each suite sweeps a group (or a pair of groups)
//! and records one check per configuration in a [`VerificationReport`].
//!
//! Suite names on the command line are fixed strings; each suite also has a
//! descriptive alias (see [`Suite::from_name`]).

use std::sync::Arc;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::factorization::{
    evaluation_map, factorize, hom_space_with_action, restrict_to_left, split_commutant, stable_subspace_factor,
    verify_injectivity_catalog, verify_tensor_bijection,
};
use crate::group::{direct_product, parse_group_spec, standard_subgroups, subgroup_closure, GroupRef, Subgroup};
use crate::hecke::{
    self, c_f_image, cf_module_irreducible, cf_modules_isomorphic, convolve, e_f, e_tau, generated_subrep,
    involution, irreducible_submodule, mixed_convolve_left, mixed_convolve_right, outer_tensor_span_check, pi_of,
    pi_of_subgroup, wedderburn_surjectivity_check, GroupAlgebraElement, HeckeSubalgebraImage,
};
use crate::numerics::{self, c64, derive_seed, kron, rng_from_seed, ComplexMatrix, Tolerances};
use crate::report::VerificationReport;
use crate::repr::{
    are_equivalent, character, character_inner_product, decompose, is_irreducible, isotype_projection, multiplicity,
    projection_image, regular_representation, restrict, tensor_product_rep_in, unitary_dual, IrrepCatalog, UnitaryRep,
};

/// Random triples drawn by the algebra-identity suite.
pub const IDENTITY_SAMPLES: usize = 500;
/// Random unitaries per configuration in the commutant-split suite.
pub const SPLIT_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Idempotents,
    AlgebraIdentities,
    SandwichAlgebra,
    ModuleIrreducibility,
    GeneratedSubrep,
    ModuleIsomorphism,
    OuterTensorSpan,
    Wedderburn,
    CommutantSplit,
    TensorFactorization,
    All,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Idempotents,
        Suite::AlgebraIdentities,
        Suite::SandwichAlgebra,
        Suite::ModuleIrreducibility,
        Suite::GeneratedSubrep,
        Suite::ModuleIsomorphism,
        Suite::OuterTensorSpan,
        Suite::Wedderburn,
        Suite::CommutantSplit,
        Suite::TensorFactorization,
    ];

    /// The name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            Suite::Idempotents => "lemma-7510",
            Suite::AlgebraIdentities => "hecke-identities",
            Suite::SandwichAlgebra => "lem7525",
            Suite::ModuleIrreducibility => "prop4511a",
            Suite::GeneratedSubrep => "prop4511b",
            Suite::ModuleIsomorphism => "prop4511c",
            Suite::OuterTensorSpan => "lem7522",
            Suite::Wedderburn => "lem7523",
            Suite::CommutantSplit => "lemma-763",
            Suite::TensorFactorization => "theorem-459",
            Suite::All => "all",
        }
    }

    pub fn alias(self) -> &'static str {
        match self {
            Suite::Idempotents => "idempotents",
            Suite::AlgebraIdentities => "algebra-identities",
            Suite::SandwichAlgebra => "sandwich-algebra",
            Suite::ModuleIrreducibility => "module-irreducibility",
            Suite::GeneratedSubrep => "generated-subrep",
            Suite::ModuleIsomorphism => "module-isomorphism",
            Suite::OuterTensorSpan => "outer-tensor-span",
            Suite::Wedderburn => "wedderburn",
            Suite::CommutantSplit => "commutant-split",
            Suite::TensorFactorization => "tensor-factorization",
            Suite::All => "all",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().chain([Suite::All]).find(|x| x.name() == s || x.alias() == s)
    }

    /// Whether the suite uses the second group `H`.
    pub fn uses_h(self) -> bool {
        matches!(
            self,
            Suite::OuterTensorSpan | Suite::Wedderburn | Suite::CommutantSplit | Suite::TensorFactorization | Suite::All
        )
    }
}

/// Inputs shared by all suites.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub g: GroupRef,
    pub h: GroupRef,
    /// Generators of `K ⊂ G`; `None` sweeps [`standard_subgroups`].
    pub k: Option<Vec<usize>>,
    /// Generators of `L ⊂ H`; `None` sweeps [`standard_subgroups`].
    pub l: Option<Vec<usize>>,
    pub seed: u64,
    /// Replaces every residual threshold when set.
    pub tol: Option<f64>,
}

impl SuiteConfig {
    pub fn new(g: GroupRef, h: GroupRef) -> Self {
        SuiteConfig { g, h, k: None, l: None, seed: 42, tol: None }
    }

    /// Parses both group specs.
    pub fn from_specs(g: &str, h: &str) -> Result<Self> {
        Ok(Self::new(Arc::new(parse_group_spec(g)?), Arc::new(parse_group_spec(h)?)))
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn k_list(&self) -> Result<Vec<Subgroup>> {
        subgroup_list(&self.g, self.k.as_deref())
    }

    fn l_list(&self) -> Result<Vec<Subgroup>> {
        subgroup_list(&self.h, self.l.as_deref())
    }
}

fn subgroup_list(g: &GroupRef, gens: Option<&[usize]>) -> Result<Vec<Subgroup>> {
    match gens {
        Some(gens) => Ok(vec![subgroup_closure(g, gens)?]),
        None => Ok(standard_subgroups(g)),
    }
}

/// `<a,b,...>` with parent-group generator indices.
pub fn subgroup_name(k: &Subgroup) -> String {
    let gens: Vec<String> = k.as_group().generators().iter().map(|&i| k.elements()[i].to_string()).collect();
    format!("<{}>", gens.join(","))
}

/// Nonempty subsets of `0..n` in bitmask order.
pub fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n)).map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect()).collect()
}

fn pick(cat: &IrrepCatalog, idx: &[usize]) -> Vec<UnitaryRep> {
    idx.iter().map(|&i| cat.irreps[i].clone()).collect()
}

fn f_name(idx: &[usize]) -> String {
    let s: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
    format!("F{{{}}}", s.join(","))
}

/// Runs a suite and stamps parameters and wall time.
pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = match suite {
        Suite::Idempotents => idempotents(cfg)?,
        Suite::AlgebraIdentities => algebra_identities(cfg)?,
        Suite::SandwichAlgebra => sandwich_algebra(cfg)?,
        Suite::ModuleIrreducibility => module_irreducibility(cfg)?,
        Suite::GeneratedSubrep => generated_subreps(cfg)?,
        Suite::ModuleIsomorphism => module_isomorphism(cfg)?,
        Suite::OuterTensorSpan => outer_tensor_span(cfg)?,
        Suite::Wedderburn => wedderburn(cfg)?,
        Suite::CommutantSplit => commutant_split(cfg)?,
        Suite::TensorFactorization => tensor_factorization(cfg)?,
        Suite::All => {
            let mut all = VerificationReport::new("all");
            for s in Suite::ALL {
                all.absorb(run(s, cfg)?);
            }
            all
        }
    };
    report.suite = suite.name().to_string();
    report.parameters.clear();
    report.param("g", cfg.g.label());
    if suite.uses_h() {
        report.param("h", cfg.h.label());
    }
    if let Some(k) = &cfg.k {
        report.param("k", k);
    }
    if let Some(l) = cfg.l.as_ref().filter(|_| suite.uses_h()) {
        report.param("l", l);
    }
    report.param("seed", cfg.seed);
    match cfg.tol {
        Some(t) => report.param("tol", t),
        None => report.param("tol", "default"),
    };
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

fn catalog(cfg: &SuiteConfig) -> Result<IrrepCatalog> {
    unitary_dual(&cfg.g, derive_seed(cfg.seed, 0))
}

fn subgroup_dual(k: &Subgroup, seed: u64, i: usize) -> Result<IrrepCatalog> {
    unitary_dual(k.as_group(), derive_seed(seed, 1000 + i as u64))
}

fn op_norm_gap(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).norm()
}

// ---------------------------------------------------------------------------

/// Character idempotents are orthogonal idempotents and their images are the
/// isotypic projections.
fn idempotents(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Suite::Idempotents.name());
    let cat = catalog(cfg)?;
    let mut hosts = cat.irreps.clone();
    hosts.push(regular_representation(&cfg.g));
    for (ki, k) in cfg.k_list()?.iter().enumerate() {
        let kn = subgroup_name(k);
        let kd = subgroup_dual(k, cfg.seed, ki)?;
        let es: Vec<GroupAlgebraElement> = kd.irreps.iter().map(|t| e_tau(k, t)).collect::<Result<_>>()?;
        let (mut idem, mut orth) = (0.0f64, 0.0f64);
        for (i, a) in es.iter().enumerate() {
            for (j, b) in es.iter().enumerate() {
                let c = convolve(a, b)?;
                if i == j {
                    idem = idem.max(c.distance(a));
                } else {
                    orth = orth.max(c.max_abs());
                }
            }
        }
        report.bound(format!("{kn}/idempotent"), idem, cfg.tol(1e-10));
        report.bound(format!("{kn}/orthogonal"), orth, cfg.tol(1e-10));

        for host in &hosts {
            let hk = restrict(host, k)?;
            let n = host.dim();
            let mut sum = ComplexMatrix::zeros(n, n);
            let (mut proj, mut isotypic) = (0.0f64, 0.0f64);
            let mut ranks_ok = true;
            let mut ranks = Vec::new();
            for (tau, e) in kd.irreps.iter().zip(&es) {
                let p = pi_of_subgroup(e, host, k)?;
                proj = proj.max(op_norm_gap(&(&p * &p), &p)).max(op_norm_gap(&p.adjoint(), &p));
                let r = numerics::rank_with_floor(&p, Tolerances::default().nullspace, 1.0);
                let m = multiplicity(host, k, tau)?;
                ranks_ok &= r == m * tau.dim();
                ranks.push(r);
                if m > 0 {
                    // the image carries m copies of τ and nothing else
                    let q = projection_image(&((&p + p.adjoint()) * c64::new(0.5, 0.0)))?;
                    let chi = character(&hk.compress(&q))?;
                    let tchi = character(tau)?;
                    let d = chi
                        .values
                        .iter()
                        .zip(&tchi.values)
                        .map(|(a, b)| (a - b * m as f64).norm())
                        .fold(0.0, f64::max);
                    isotypic = isotypic.max(d);
                }
                sum += p;
            }
            let hn = format!("{kn}/{}", host.label());
            report.bound(format!("{hn}/projection"), proj, cfg.tol(1e-8));
            report.check(format!("{hn}/rank"), ranks_ok, 0.0, format!("ranks {ranks:?}"));
            report.bound(format!("{hn}/isotypic"), isotypic, cfg.tol(Tolerances::default().character));
            let id = ComplexMatrix::identity(n, n);
            report.bound(format!("{hn}/completeness"), op_norm_gap(&sum, &id), cfg.tol(1e-8));
        }
    }
    Ok(report)
}

/// Associativity of plain and mixed convolutions, units, and the involution.
fn algebra_identities(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Suite::AlgebraIdentities.name());
    let subs = cfg.k_list()?;
    let mut rng = rng_from_seed(derive_seed(cfg.seed, 1));
    let mut worst = [0.0f64; 7];
    for i in 0..IDENTITY_SAMPLES {
        let k = &subs[i % subs.len()];
        let kk = Subgroup::whole(k.as_group());
        let f = GroupAlgebraElement::random(k, &mut rng);
        let g = GroupAlgebraElement::random(k, &mut rng);
        let h = GroupAlgebraElement::random(k, &mut rng);
        let a = GroupAlgebraElement::random(&kk, &mut rng);
        let b = GroupAlgebraElement::random(&kk, &mut rng);

        let assoc = convolve(&f, &convolve(&g, &h)?)?.distance(&convolve(&convolve(&f, &g)?, &h)?);
        let mixed = [
            mixed_convolve_left(&a, &convolve(&f, &g)?)?.distance(&convolve(&mixed_convolve_left(&a, &f)?, &g)?),
            mixed_convolve_right(&convolve(&f, &g)?, &a)?.distance(&convolve(&f, &mixed_convolve_right(&g, &a)?)?),
            convolve(&mixed_convolve_right(&f, &a)?, &g)?.distance(&convolve(&f, &mixed_convolve_left(&a, &g)?)?),
            mixed_convolve_right(&mixed_convolve_left(&a, &f)?, &b)?
                .distance(&mixed_convolve_left(&a, &mixed_convolve_right(&f, &b)?)?),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        let extension = mixed_convolve_left(&a, &f)?
            .distance(&convolve(&hecke::extend_by_zero(&a, k)?, &f)?)
            .max(mixed_convolve_right(&f, &a)?.distance(&convolve(&f, &hecke::extend_by_zero(&a, k)?)?));
        let unit = GroupAlgebraElement::unit(k);
        let units = convolve(&f, &unit)?.distance(&f).max(convolve(&unit, &f)?.distance(&f)).max(
            mixed_convolve_left(&GroupAlgebraElement::unit(&kk), &f)?.distance(&f),
        );
        let anti = involution(&convolve(&f, &g)?).distance(&convolve(&involution(&g), &involution(&f))?);
        let invol = involution(&involution(&f)).distance(&f);
        let linear = convolve(&f.add(&g)?, &h)?.distance(&convolve(&f, &h)?.add(&convolve(&g, &h)?)?);
        for (w, v) in worst.iter_mut().zip([assoc, mixed, extension, units, anti, invol, linear]) {
            *w = w.max(v);
        }
    }
    let names = ["associative", "mixed-associative", "zero-extension", "unit", "anti-multiplicative", "involutive", "bilinear"];
    for (name, w) in names.iter().zip(worst) {
        report.bound(format!("{}/{name}", cfg.g.label()), w, cfg.tol(1e-10));
    }
    report.check(
        "modular-function",
        hecke::MODULAR_FUNCTION == 1.0,
        0.0,
        format!("{IDENTITY_SAMPLES} samples over {} subgroups", subs.len()),
    );
    Ok(report)
}

/// `C_F` images are *-subalgebras; `π(e_F)` is the isotypic projection;
/// `π` is a *-homomorphism on the group algebra.
fn sandwich_algebra(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Suite::SandwichAlgebra.name());
    let cat = catalog(cfg)?;
    let mut hosts = cat.irreps.clone();
    hosts.push(regular_representation(&cfg.g));
    let mut rng = rng_from_seed(derive_seed(cfg.seed, 2));
    for (ki, k) in cfg.k_list()?.iter().enumerate() {
        let kn = subgroup_name(k);
        let kd = subgroup_dual(k, cfg.seed, ki)?;
        let subsets = nonempty_subsets(kd.len());
        let mut self_adjoint = 0.0f64;
        for idx in &subsets {
            let ef = e_f(k, &pick(&kd, idx))?;
            self_adjoint = self_adjoint.max(involution(&ef).distance(&ef));
        }
        report.bound(format!("{kn}/e_F-self-adjoint"), self_adjoint, cfg.tol(1e-10));
        for host in &hosts {
            let hn = format!("{kn}/{}", host.label());
            let (mut closure, mut adjoint, mut proj) = (0.0f64, 0.0f64, 0.0f64);
            for idx in &subsets {
                let taus = pick(&kd, idx);
                let img = c_f_image(host, k, &taus)?;
                if !img.is_zero() {
                    closure = closure.max(img.product_closure_residual());
                    adjoint = adjoint.max(img.adjoint_closure_residual());
                }
                let p = pi_of_subgroup(&e_f(k, &taus)?, host, k)?;
                let mut sum = ComplexMatrix::zeros(host.dim(), host.dim());
                for t in &taus {
                    sum += isotype_projection(host, k, t)?;
                }
                proj = proj.max(op_norm_gap(&p, &sum));
            }
            report.bound(format!("{hn}/product-closed"), closure, cfg.tol(1e-8));
            report.bound(format!("{hn}/adjoint-closed"), adjoint, cfg.tol(1e-8));
            report.bound(format!("{hn}/e_F-projection"), proj, cfg.tol(1e-8));

            let id = ComplexMatrix::identity(host.dim(), host.dim());
            let unit = op_norm_gap(&pi_of(&GroupAlgebraElement::unit(k), host)?, &id);
            let f = GroupAlgebraElement::random(k, &mut rng);
            let g = GroupAlgebraElement::random(k, &mut rng);
            let pf = pi_of(&f, host)?;
            let star = op_norm_gap(&pi_of(&involution(&f), host)?, &pf.adjoint());
            let mult = op_norm_gap(&pi_of(&convolve(&f, &g)?, host)?, &(&pf * pi_of(&g, host)?));
            report.bound(format!("{hn}/unit"), unit, cfg.tol(1e-8));
            report.bound(format!("{hn}/star"), star, cfg.tol(1e-8));
            report.bound(format!("{hn}/multiplicative"), mult, cfg.tol(1e-8));
        }
    }
    Ok(report)
}

/// Every nonzero `V_π(F)` of an irreducible `π` is an irreducible `C_F`-module.
fn module_irreducibility(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Suite::ModuleIrreducibility.name());
    let cat = catalog(cfg)?;
    for (ki, k) in cfg.k_list()?.iter().enumerate() {
        let kn = subgroup_name(k);
        let kd = subgroup_dual(k, cfg.seed, ki)?;
        for pi in &cat.irreps {
            let (mut good, mut bad, mut empty) = (0, Vec::new(), 0);
            for idx in nonempty_subsets(kd.len()) {
                let img = c_f_image(pi, k, &pick(&kd, &idx))?;
                if img.is_zero() {
                    empty += 1;
                } else if cf_module_irreducible(&img)? {
                    good += 1;
                } else {
                    bad.push(f_name(&idx));
                }
            }
            report.check(
                format!("{kn}/{}", pi.label()),
                bad.is_empty(),
                0.0,
                format!("{good} irreducible, {empty} zero, reducible: {bad:?}"),
            );
        }
    }
    Ok(report)
}

/// Reducible hosts `π_i ⊕ π_j`, in a random orthonormal frame.
fn reducible_hosts(cat: &IrrepCatalog, seed: u64) -> Result<Vec<UnitaryRep>> {
    let mut rng = rng_from_seed(derive_seed(seed, 3));
    let mut hosts = Vec::new();
    for i in 0..cat.len() {
        for j in i..cat.len() {
            let sum = cat.irreps[i].direct_sum(&cat.irreps[j])?;
            let u = numerics::random_unitary(&mut rng, sum.dim());
            hosts.push(sum.conjugate_by(&u).with_label(format!("{}+{}", i, j)));
        }
    }
    Ok(hosts)
}

/// The subrepresentation generated by an irreducible `C_F`-submodule is irreducible.
fn generated_subreps(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Suite::GeneratedSubrep.name());
    let cat = catalog(cfg)?;
    let hosts = reducible_hosts(&cat, cfg.seed)?;
    for (ki, k) in cfg.k_list()?.iter().enumerate() {
        let kn = subgroup_name(k);
        let kd = subgroup_dual(k, cfg.seed, ki)?;
        for (hi, host) in hosts.iter().enumerate() {
            let (mut good, mut bad, mut empty) = (0, Vec::new(), 0);
            for (fi, idx) in nonempty_subsets(kd.len()).iter().enumerate() {
                let img = c_f_image(host, k, &pick(&kd, idx))?;
                if img.is_zero() {
                    empty += 1;
                    continue;
                }
                let seed = derive_seed(derive_seed(cfg.seed, (ki * 1000 + hi) as u64), fi as u64);
                let m = irreducible_submodule(&img, seed)?;
                let sub = generated_subrep(host, &m)?;
                if is_irreducible(&sub.rep) && cat.find(&character(&sub.rep)?).is_some() {
                    good += 1;
                } else {
                    bad.push(f_name(idx));
                }
            }
            report.check(
                format!("{kn}/host{}", host.label()),
                bad.is_empty(),
                0.0,
                format!("{good} irreducible, {empty} zero, failed: {bad:?}"),
            );
        }
    }
    Ok(report)
}

/// `η ≅ π` iff `V_η(F) ≅ V_π(F)` as `C_F`-modules for every `(K, F)`.
fn module_isomorphism(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Suite::ModuleIsomorphism.name());
    let cat = catalog(cfg)?;
    let mut rng = rng_from_seed(derive_seed(cfg.seed, 4));
    let copies: Vec<UnitaryRep> = cat
        .irreps
        .iter()
        .map(|p| {
            let u = numerics::random_unitary(&mut rng, p.dim());
            p.conjugate_by(&u).with_label(format!("{}'", p.label()))
        })
        .collect();
    let mut images: Vec<(Vec<HeckeSubalgebraImage>, Vec<HeckeSubalgebraImage>)> =
        vec![(Vec::new(), Vec::new()); cat.len()];
    for (ki, k) in cfg.k_list()?.iter().enumerate() {
        let kd = subgroup_dual(k, cfg.seed, ki)?;
        for idx in nonempty_subsets(kd.len()) {
            let taus = pick(&kd, &idx);
            for i in 0..cat.len() {
                images[i].0.push(c_f_image(&cat.irreps[i], k, &taus)?);
                images[i].1.push(c_f_image(&copies[i], k, &taus)?);
            }
        }
    }
    for i in 0..cat.len() {
        for j in 0..cat.len() {
            let equivalent = are_equivalent(&cat.irreps[i], &copies[j]);
            let (a, b) = (&images[i].0, &images[j].1);
            let (mut iso, mut noniso, mut coincidences) = (0, 0, 0);
            for (x, y) in a.iter().zip(b) {
                if cf_modules_isomorphic(x, y) {
                    iso += 1;
                    if !x.is_zero() && !equivalent {
                        coincidences += 1;
                    }
                } else {
                    noniso += 1;
                }
            }
            let ok = if equivalent { noniso == 0 } else { noniso > 0 && coincidences == 0 };
            report.check(
                format!("{}~{}", cat.irreps[i].label(), copies[j].label()),
                ok,
                0.0,
                format!(
                    "{} reps; {iso} isomorphic, {noniso} not, {coincidences} nonzero coincidences",
                    if equivalent { "equivalent" } else { "inequivalent" }
                ),
            );
        }
    }
    Ok(report)
}

fn product_setup(cfg: &SuiteConfig) -> Result<(GroupRef, IrrepCatalog)> {
    let product: GroupRef = Arc::new(direct_product(&cfg.g, &cfg.h));
    let cp = unitary_dual(&product, derive_seed(cfg.seed, 5))?;
    Ok((product, cp))
}

/// Outer tensors of `C_E` and `C_F` span the full `C_{E×F}` action on
/// `V_η(E×F)`, which is therefore irreducible under them.
fn outer_tensor_span(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Suite::OuterTensorSpan.name());
    let (_, cp) = product_setup(cfg)?;
    let ks = cfg.k_list()?;
    let ls = cfg.l_list()?;
    let kds: Vec<IrrepCatalog> = ks.iter().enumerate().map(|(i, k)| subgroup_dual(k, cfg.seed, i)).collect::<Result<_>>()?;
    let lds: Vec<IrrepCatalog> =
        ls.iter().enumerate().map(|(i, l)| subgroup_dual(l, cfg.seed, 500 + i)).collect::<Result<_>>()?;
    for eta in &cp.irreps {
        for (k, kd) in ks.iter().zip(&kds) {
            for (l, ld) in ls.iter().zip(&lds) {
                let (mut good, mut empty, mut bad) = (0, 0, Vec::new());
                for e_idx in nonempty_subsets(kd.len()) {
                    for f_idx in nonempty_subsets(ld.len()) {
                        match outer_tensor_span_check(eta, k, l, &pick(kd, &e_idx), &pick(ld, &f_idx)) {
                            Ok(r) if r.holds() => good += 1,
                            Ok(r) => bad.push(format!(
                                "E{e_idx:?}F{f_idx:?}: tensor {} full {} joint {} commutant {}",
                                r.tensor_span_dim, r.full_span_dim, r.joint_span_dim, r.tensor_commutant_dim
                            )),
                            Err(Error::EmptyIsotype) => empty += 1,
                            Err(e) => return Err(e),
                        }
                    }
                }
                report.check(
                    format!("{}/{}x{}", eta.label(), subgroup_name(k), subgroup_name(l)),
                    bad.is_empty(),
                    0.0,
                    format!("{good} spans equal, {empty} zero; {}", bad.join("; ")),
                );
            }
        }
    }
    Ok(report)
}

/// Irreducible `C_F`-modules see the full endomorphism algebra, and the
/// evaluation map `V_π ⊗ Hom_G(V_π, V_η) → V_η` is unitary and equivariant.
fn wedderburn(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Suite::Wedderburn.name());
    let cat = catalog(cfg)?;
    for (ki, k) in cfg.k_list()?.iter().enumerate() {
        let kn = subgroup_name(k);
        let kd = subgroup_dual(k, cfg.seed, ki)?;
        for pi in &cat.irreps {
            let (mut good, mut bad) = (0, Vec::new());
            for idx in nonempty_subsets(kd.len()) {
                let img = c_f_image(pi, k, &pick(&kd, &idx))?;
                if img.is_zero() {
                    continue;
                }
                if wedderburn_surjectivity_check(&img)? {
                    good += 1;
                } else {
                    bad.push(format!("{}: span {} of {}", f_name(&idx), img.span_dim(), img.module_dim().pow(2)));
                }
            }
            report.check(format!("{kn}/{}/surjective", pi.label()), bad.is_empty(), 0.0, format!("{good} modules; {bad:?}"));
        }
    }

    let (_, cp) = product_setup(cfg)?;
    for (i, eta) in cp.irreps.iter().enumerate() {
        let name = eta.label().to_string();
        let eta_g = restrict_to_left(eta, &cfg.g, &cfg.h)?;
        let summands = decompose(&eta_g, derive_seed(cfg.seed, 6 + i as u64))?;
        report.check(
            format!("{name}/unique-constituent"),
            summands.len() == 1,
            0.0,
            format!("{} distinct constituents", summands.len()),
        );
        let pi = &summands[0].irrep;
        let hom = hom_space_with_action(eta, pi, &cfg.h)?;
        let phi = evaluation_map(pi, &hom.basis, eta.dim());
        report.check(
            format!("{name}/dimension"),
            pi.dim() * hom.basis.len() == eta.dim(),
            0.0,
            format!("{} * {} vs {}", pi.dim(), hom.basis.len(), eta.dim()),
        );
        report.bound(format!("{name}/isometry"), numerics::unitarity_residual(&phi), cfg.tol(1e-8));
        let id = ComplexMatrix::identity(hom.basis.len(), hom.basis.len());
        let g_res = (0..cfg.g.order())
            .map(|a| op_norm_gap(&(&phi * kron(pi.matrix(a), &id)), &(eta_g.matrix(a) * &phi)))
            .fold(0.0, f64::max);
        report.bound(format!("{name}/equivariant"), g_res, cfg.tol(1e-8));
    }
    Ok(report)
}

/// `T = 1 ⊗ S` recovery, stable subspaces `V ⊗ W₁`, and the irreducibility and
/// injectivity of tensors.
fn commutant_split(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Suite::CommutantSplit.name());
    let cat = catalog(cfg)?;
    let mut rng = rng_from_seed(derive_seed(cfg.seed, 7));
    for pi in &cat.irreps {
        let dp = pi.dim();
        for w in 1..=3 {
            let (mut recover, mut fit) = (0.0f64, 0.0f64);
            for _ in 0..SPLIT_SAMPLES {
                let s0 = numerics::random_unitary(&mut rng, w);
                let t = kron(&ComplexMatrix::identity(dp, dp), &s0);
                let split = split_commutant(&t, pi, w)?;
                recover = recover.max(op_norm_gap(&split.s, &s0));
                fit = fit.max(split.residual);
            }
            report.bound(format!("{}/w{w}/round-trip", pi.label()), recover.max(fit), cfg.tol(1e-10));
        }
        for w in 2..=4 {
            let mut worst = 0.0f64;
            let mut dims_ok = true;
            for r in 1..w {
                let w0 = numerics::orthonormalize(&numerics::random_complex(&mut rng, w, r), 1e-12);
                let mix = numerics::random_unitary(&mut rng, dp * r);
                let u = kron(&ComplexMatrix::identity(dp, dp), &w0) * mix;
                let f = stable_subspace_factor(&u, pi, w)?;
                dims_ok &= f.w1.ncols() == r;
                worst = worst.max(numerics::subspace_distance(&f.w1, &w0)).max(f.residual);
            }
            report.check(
                format!("{}/w{w}/stable-subspace", pi.label()),
                dims_ok && worst <= cfg.tol(1e-8),
                worst,
                format!("planted dims 1..{w}"),
            );
        }
        if let Some(g0) = (0..cfg.g.order()).find(|&x| {
            let m = pi.matrix(x);
            op_norm_gap(m, &(ComplexMatrix::identity(dp, dp) * m[(0, 0)])) > 1e-6
        }) {
            let t = kron(pi.matrix(g0), &ComplexMatrix::identity(2, 2));
            let rejected = matches!(split_commutant(&t, pi, 2), Err(Error::NotCommuting { .. }));
            report.check(format!("{}/rejects-noncommuting", pi.label()), rejected, 0.0, format!("g = {g0}"));
        }
    }

    let product: GroupRef = Arc::new(direct_product(&cfg.g, &cfg.h));
    let ch = unitary_dual(&cfg.h, derive_seed(cfg.seed, 8))?;
    let mut worst = 0.0f64;
    for a in &cat.irreps {
        for b in &ch.irreps {
            let chi = character(&tensor_product_rep_in(a, b, &product)?)?;
            worst = worst.max((character_inner_product(&chi, &chi, &product) - c64::new(1.0, 0.0)).norm());
        }
    }
    report.bound("tensors-irreducible", worst, cfg.tol(Tolerances::default().character));
    report.absorb(verify_injectivity_catalog(&cfg.g, &cfg.h, cfg.seed)?);
    Ok(report)
}

/// Every irreducible of `G×H` factors as `π⊗τ`, uniquely.
fn tensor_factorization(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Suite::TensorFactorization.name());
    report.absorb(verify_tensor_bijection(&cfg.g, &cfg.h, cfg.seed)?);
    let (product, cp) = product_setup(cfg)?;
    let tol = cfg.tol(1e-8);
    let mut factored = 0;
    for (i, eta) in cp.irreps.iter().enumerate() {
        let name = format!("factor/{}", eta.label());
        match factorize(eta, &cfg.g, &cfg.h, derive_seed(cfg.seed, 100 + i as u64)) {
            Ok(r) => {
                let ok = r.residual_intertwine <= tol && r.residual_unitary <= tol;
                factored += ok as usize;
                report.check(
                    name,
                    ok,
                    r.residual_intertwine.max(r.residual_unitary),
                    format!("dims {} = {} * {}", eta.dim(), r.pi.dim(), r.tau.dim()),
                );
            }
            Err(e) => {
                report.check(name, false, f64::NAN, e.to_string());
            }
        }
    }
    report.check(
        "factor/all",
        factored == cp.len(),
        0.0,
        format!("{factored}/{} factorizations", cp.len()),
    );

    let cg = unitary_dual(&cfg.g, derive_seed(cfg.seed, 1))?;
    let ch = unitary_dual(&cfg.h, derive_seed(cfg.seed, 2))?;
    for (i, a) in cg.irreps.iter().enumerate() {
        for (j, b) in ch.irreps.iter().enumerate() {
            let eta = tensor_product_rep_in(a, b, &product)?;
            let name = format!("round-trip/{i},{j}");
            match factorize(&eta, &cfg.g, &cfg.h, derive_seed(cfg.seed, 200 + (i * ch.len() + j) as u64)) {
                Ok(r) => {
                    let d = character(&r.pi)?.max_distance(&character(a)?).max(
                        character(&r.tau)?.max_distance(&character(b)?),
                    );
                    let ok = d <= cfg.tol(Tolerances::default().character) && r.residual_intertwine <= tol;
                    report.check(name, ok, d, format!("intertwine {:.2e}", r.residual_intertwine));
                }
                Err(e) => {
                    report.check(name, false, f64::NAN, e.to_string());
                }
            }
        }
    }
    report.absorb(verify_injectivity_catalog(&cfg.g, &cfg.h, cfg.seed)?);
    Ok(report)
}
