//! Factorization of irreducible representations of `G×H` as `π ⊗ τ`.
//!
//! The pipeline restricts `η` to `G×{e}`, picks the first irreducible
//! constituent `π` (canonical character order), builds the multiplicity
//! space `N = Hom_G(V_π, V_η)` with its natural `H`-action `τ`, and glues
//! them with the evaluation map `φ(m ⊗ α) = α(m)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{direct_product, GroupRef};
use crate::numerics::{self, c64, kron, trace, ComplexMatrix, Tolerances};
use crate::report::{self, VerificationReport};
use crate::repr::{
    self, are_equivalent, character, decompose, intertwiner_space, is_irreducible, projection_image,
    tensor_product_rep_in, unitary_dual, Character, UnitaryRep,
};

/// `T = 1 ⊗ S` together with the fit residual `‖T − 1⊗S‖_F`.
#[derive(Debug, Clone)]
pub struct CommutantSplit {
    pub s: ComplexMatrix,
    pub residual: f64,
}

/// Recovers `S` from an operator `T` on `V_p ⊗ W` commuting with `p(g) ⊗ 1`.
///
/// The entry `a_{ij}` of `S` is the Schur scalar of the block
/// `V_p → V_p ⊗ e_i → V_p ⊗ W → V_p ⊗ e_j → V_p`, read off as its trace
/// divided by `dim p`.
pub fn split_commutant(t: &ComplexMatrix, p: &UnitaryRep, w_dim: usize) -> Result<CommutantSplit> {
    let dp = p.dim();
    let n = dp * w_dim;
    if t.shape() != (n, n) {
        return Err(Error::Dimension(format!("operator is {:?}, expected {n}x{n}", t.shape())));
    }
    let tol = Tolerances::default().intertwine * (1.0 + t.norm());
    let id_w = ComplexMatrix::identity(w_dim, w_dim);
    let (mut worst, mut worst_g) = (0.0, 0);
    for (g, m) in p.matrices().iter().enumerate() {
        let a = kron(m, &id_w);
        let r = (t * &a - &a * t).norm();
        if r > worst {
            worst = r;
            worst_g = g;
        }
    }
    if worst > tol {
        return Err(Error::NotCommuting { element: worst_g, residual: worst });
    }
    let mut s = ComplexMatrix::zeros(w_dim, w_dim);
    for i in 0..w_dim {
        for j in 0..w_dim {
            let block_trace: c64 = (0..dp).map(|a| t[(a * w_dim + j, a * w_dim + i)]).sum();
            s[(j, i)] = block_trace / dp as f64;
        }
    }
    let residual = (t - kron(&ComplexMatrix::identity(dp, dp), &s)).norm();
    if residual > tol {
        return Err(Error::LargeResidual { residual });
    }
    Ok(CommutantSplit { s, residual })
}

#[derive(Debug, Clone)]
pub struct StableFactor {
    /// Orthonormal basis of `W₁ ⊂ W`.
    pub w1: ComplexMatrix,
    /// `‖P_U − 1 ⊗ P_{W₁}‖_F`.
    pub residual: f64,
}

/// Writes a `p(G) ⊗ 1`-stable subspace `U ⊂ V_p ⊗ W` as `V_p ⊗ W₁`.
pub fn stable_subspace_factor(u: &ComplexMatrix, p: &UnitaryRep, w_dim: usize) -> Result<StableFactor> {
    let q = numerics::orthonormalize(u, Tolerances::default().nullspace);
    let proj = &q * q.adjoint();
    let split = split_commutant(&proj, p, w_dim)?;
    let p1 = (&split.s + split.s.adjoint()) * c64::new(0.5, 0.0);
    let w1 = projection_image(&p1)?;
    let rebuilt = kron(&ComplexMatrix::identity(p.dim(), p.dim()), &(&w1 * w1.adjoint()));
    let residual = (proj - rebuilt).norm();
    Ok(StableFactor { w1, residual })
}

/// `tr(β†α) / dim π`, the scalar with `β†α = λ·1` for intertwiners out of an
/// irreducible `π`.
pub fn schur_inner_product(alpha: &ComplexMatrix, beta: &ComplexMatrix, pi: &UnitaryRep) -> Result<c64> {
    let m = beta.adjoint() * alpha;
    if m.shape() != (pi.dim(), pi.dim()) {
        return Err(Error::Dimension("intertwiners do not start at V_π".into()));
    }
    let lambda = trace(&m) / pi.dim() as f64;
    let deviation = (&m - ComplexMatrix::identity(pi.dim(), pi.dim()) * lambda).norm();
    if deviation > Tolerances::default().intertwine * (1.0 + m.norm()) {
        return Err(Error::NotScalar { deviation });
    }
    Ok(lambda)
}

/// `η` restricted to `G×{e}` by index arithmetic.
pub fn restrict_to_left(eta: &UnitaryRep, g: &GroupRef, h: &GroupRef) -> Result<UnitaryRep> {
    check_product(eta, g, h)?;
    let mats = (0..g.order()).map(|a| eta.matrix(a * h.order() + h.identity()).clone()).collect();
    Ok(UnitaryRep::from_parts(g.clone(), mats, format!("{}|G", eta.label()))?)
}

/// `η` restricted to `{e}×H`.
pub fn restrict_to_right(eta: &UnitaryRep, g: &GroupRef, h: &GroupRef) -> Result<UnitaryRep> {
    check_product(eta, g, h)?;
    let mats = (0..h.order()).map(|b| eta.matrix(g.identity() * h.order() + b).clone()).collect();
    Ok(UnitaryRep::from_parts(h.clone(), mats, format!("{}|H", eta.label()))?)
}

fn check_product(eta: &UnitaryRep, g: &GroupRef, h: &GroupRef) -> Result<()> {
    if **eta.group() != direct_product(g, h) {
        return Err(Error::Dimension(format!(
            "`{}` is not a representation of {}x{}",
            eta.label(),
            g.label(),
            h.label()
        )));
    }
    Ok(())
}

/// `N = Hom_G(V_π, V_η)` with basis orthonormal in the Schur inner product,
/// and the `H`-action `(h·α) = η(e,h) ∘ α` in those coordinates.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub basis: Vec<ComplexMatrix>,
    pub h_action: UnitaryRep,
}

pub fn hom_space_with_action(eta: &UnitaryRep, pi: &UnitaryRep, h: &GroupRef) -> Result<HomSpace> {
    let g = pi.group();
    if !is_irreducible(pi) {
        return Err(Error::NotIrreducible(pi.label().to_string()));
    }
    let eta_g = restrict_to_left(eta, g, h)?;
    let raw = intertwiner_space(pi, &eta_g)?;
    if raw.is_empty() {
        return Err(Error::EmptyHomSpace);
    }
    // Gram-Schmidt in the Schur inner product
    let mut basis: Vec<ComplexMatrix> = Vec::with_capacity(raw.len());
    for x in raw {
        let mut v = x;
        for _ in 0..2 {
            for b in &basis {
                let c = schur_inner_product(&v, b, pi)?;
                v -= b * c;
            }
        }
        let nrm = schur_inner_product(&v, &v, pi)?.re.sqrt();
        basis.push(v / c64::new(nrm, 0.0));
    }
    let n = basis.len();
    let mut mats = Vec::with_capacity(h.order());
    for y in 0..h.order() {
        let act = eta.matrix(g.identity() * h.order() + y);
        let mut m = ComplexMatrix::zeros(n, n);
        for (k, ak) in basis.iter().enumerate() {
            let moved = act * ak;
            for (j, aj) in basis.iter().enumerate() {
                m[(j, k)] = schur_inner_product(&moved, aj, pi)?;
            }
        }
        mats.push(m);
    }
    let h_action = UnitaryRep::new(h.clone(), mats, format!("Hom({},{})", pi.label(), eta.label()))?;
    Ok(HomSpace { basis, h_action })
}

/// `φ : V_π ⊗ C^N → V_η`, `e_a ⊗ e_j ↦ α_j(e_a)`; column `a·N + j`.
pub fn evaluation_map(pi: &UnitaryRep, basis: &[ComplexMatrix], eta_dim: usize) -> ComplexMatrix {
    let (dp, n) = (pi.dim(), basis.len());
    let mut phi = ComplexMatrix::zeros(eta_dim, dp * n);
    for (j, alpha) in basis.iter().enumerate() {
        for a in 0..dp {
            phi.set_column(a * n + j, &alpha.column(a));
        }
    }
    phi
}

#[derive(Debug, Clone)]
pub struct FactorizationResult {
    pub pi: UnitaryRep,
    pub tau: UnitaryRep,
    /// Unitary `V_π ⊗ V_τ → V_η` intertwining `π⊗τ` with `η`.
    pub phi: ComplexMatrix,
    pub residual_intertwine: f64,
    pub residual_unitary: f64,
    /// `max |χ_η(g,h) − χ_π(g) χ_τ(h)|` over elements.
    pub residual_character: f64,
    /// Number of distinct irreducible characters in `η|_{G×{e}}` (1 for irreducible `η`).
    pub distinct_left_constituents: usize,
    pub seed: u64,
}

/// Factors an irreducible `η` of `G×H` as `π ⊗ τ`.
pub fn factorize(eta: &UnitaryRep, g: &GroupRef, h: &GroupRef, seed: u64) -> Result<FactorizationResult> {
    check_product(eta, g, h)?;
    if !is_irreducible(eta) {
        return Err(Error::NotIrreducible(eta.label().to_string()));
    }
    let tol = Tolerances::default();
    let eta_g = restrict_to_left(eta, g, h)?;
    let summands = decompose(&eta_g, seed)?;
    let pi = summands[0].irrep.clone().with_label(format!("{}:pi", eta.label()));

    let hom = hom_space_with_action(eta, &pi, h)?;
    let tau = hom.h_action.clone().with_label(format!("{}:tau", eta.label()));
    if !is_irreducible(&tau) {
        return Err(Error::FactorizationResidual { stage: "tau irreducible", residual: f64::NAN });
    }

    let mut phi = evaluation_map(&pi, &hom.basis, eta.dim());
    // fix the Schur phase: largest entry of the first column real positive
    let (mut best, mut best_abs) = (c64::new(1.0, 0.0), -1.0);
    for z in phi.column(0).iter() {
        if z.norm() > best_abs + 1e-12 {
            best_abs = z.norm();
            best = *z;
        }
    }
    if best_abs > 0.0 {
        phi *= best.conj() / best_abs;
    }

    let residual_unitary = numerics::unitarity_residual(&phi);
    if residual_unitary > tol.intertwine {
        return Err(Error::FactorizationResidual { stage: "phi unitary", residual: residual_unitary });
    }
    let product = eta.group().clone();
    let pt = tensor_product_rep_in(&pi, &tau, &product)?;
    let residual_intertwine = repr::intertwining_residual(&phi, &pt, eta);
    if residual_intertwine > tol.intertwine {
        return Err(Error::FactorizationResidual { stage: "phi intertwines", residual: residual_intertwine });
    }
    let hn = h.order();
    let residual_character = (0..product.order())
        .map(|x| (trace(eta.matrix(x)) - trace(pi.matrix(x / hn)) * trace(tau.matrix(x % hn))).norm())
        .fold(0.0, f64::max);
    if residual_character > tol.character {
        return Err(Error::FactorizationResidual { stage: "character", residual: residual_character });
    }
    Ok(FactorizationResult {
        pi,
        tau,
        phi,
        residual_intertwine,
        residual_unitary,
        residual_character,
        distinct_left_constituents: summands.len(),
        seed,
    })
}

// ---------------------------------------------------------------------------
// Certificates

/// Self-contained record of a factorization, checkable from the group specs:
/// characters are listed per conjugacy class, classes ordered by smallest
/// element, elements indexed as produced by the spec grammar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationCertificate {
    pub format_version: u32,
    pub g: String,
    pub h: String,
    pub index: usize,
    pub seed: u64,
    pub eta_dim: usize,
    pub pi_dim: usize,
    pub tau_dim: usize,
    pub g_class_representatives: Vec<usize>,
    pub h_class_representatives: Vec<usize>,
    pub product_class_representatives: Vec<usize>,
    pub eta_character: Vec<[f64; 2]>,
    pub pi_character: Vec<[f64; 2]>,
    pub tau_character: Vec<[f64; 2]>,
    pub residual_intertwine: f64,
    pub residual_unitary: f64,
    pub residual_character: f64,
}

impl FactorizationCertificate {
    pub fn new(eta: &UnitaryRep, result: &FactorizationResult, index: usize) -> Result<Self> {
        let reps = |grp: &GroupRef| grp.conjugacy_classes().iter().map(|c| c[0]).collect::<Vec<_>>();
        let pairs = |c: Character| c.values.into_iter().map(report::complex_pair).collect::<Vec<_>>();
        let g = result.pi.group();
        let h = result.tau.group();
        Ok(FactorizationCertificate {
            format_version: report::FORMAT_VERSION,
            g: g.label().to_string(),
            h: h.label().to_string(),
            index,
            seed: result.seed,
            eta_dim: eta.dim(),
            pi_dim: result.pi.dim(),
            tau_dim: result.tau.dim(),
            g_class_representatives: reps(g),
            h_class_representatives: reps(h),
            product_class_representatives: reps(eta.group()),
            eta_character: pairs(character(eta)?),
            pi_character: pairs(character(&result.pi)?),
            tau_character: pairs(character(&result.tau)?),
            residual_intertwine: report::round_residual(result.residual_intertwine),
            residual_unitary: report::round_residual(result.residual_unitary),
            residual_character: report::round_residual(result.residual_character),
        })
    }

    /// Re-checks `χ_η(g,h) = χ_π(g) χ_τ(h)` using only the certificate and
    /// freshly parsed groups.
    pub fn recheck(&self, g: &GroupRef, h: &GroupRef, tol: f64) -> bool {
        let product = direct_product(g, h);
        if product.num_classes() != self.eta_character.len() {
            return false;
        }
        let hn = h.order();
        let z = |p: [f64; 2]| c64::new(p[0], p[1]);
        product.conjugacy_classes().iter().enumerate().all(|(ci, class)| {
            let x = class[0];
            let lhs = z(self.eta_character[ci]);
            let rhs = z(self.pi_character[g.class_of(x / hn)]) * z(self.tau_character[h.class_of(x % hn)]);
            (lhs - rhs).norm() <= tol
        })
    }
}

// ---------------------------------------------------------------------------
// Catalog-level checks

fn product_catalog(g: &GroupRef, h: &GroupRef, seed: u64) -> Result<(GroupRef, repr::IrrepCatalog, repr::IrrepCatalog, repr::IrrepCatalog)> {
    let product: GroupRef = Arc::new(direct_product(g, h));
    let cg = unitary_dual(g, numerics::derive_seed(seed, 1))?;
    let ch = unitary_dual(h, numerics::derive_seed(seed, 2))?;
    let cp = unitary_dual(&product, numerics::derive_seed(seed, 3))?;
    Ok((product, cg, ch, cp))
}

/// Every product irrep equals exactly one `π⊗τ`, distinct pairs give
/// inequivalent tensors, and `|Ĝ|·|Ĥ| = |(G×H)^|`.
pub fn verify_tensor_bijection(g: &GroupRef, h: &GroupRef, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("tensor-bijection");
    report.param("g", g.label()).param("h", h.label()).param("seed", seed);
    let (product, cg, ch, cp) = product_catalog(g, h, seed)?;
    report.check(
        "count",
        cg.len() * ch.len() == cp.len(),
        0.0,
        format!("{} * {} vs {}", cg.len(), ch.len(), cp.len()),
    );
    let mut tensor_chars = Vec::new();
    for a in &cg.irreps {
        for b in &ch.irreps {
            let t = tensor_product_rep_in(a, b, &product)?;
            tensor_chars.push((a.label().to_string(), b.label().to_string(), character(&t)?));
        }
    }
    let tol = Tolerances::default().character;
    for (i, chi) in cp.characters.iter().enumerate() {
        let matches: Vec<_> = tensor_chars.iter().filter(|(_, _, c)| c.approx_eq(chi, tol)).collect();
        let residual = tensor_chars.iter().map(|(_, _, c)| c.max_distance(chi)).fold(f64::INFINITY, f64::min);
        let detail = match matches.as_slice() {
            [(a, b, _)] => format!("{a} (x) {b}"),
            m => format!("{} matching pairs", m.len()),
        };
        report.check(format!("surjective/{i}"), matches.len() == 1, residual, detail);
    }
    let mut collisions = 0;
    for i in 0..tensor_chars.len() {
        for j in 0..i {
            if tensor_chars[i].2.approx_eq(&tensor_chars[j].2, tol) {
                collisions += 1;
            }
        }
    }
    report.check("injective", collisions == 0, 0.0, format!("{collisions} collisions"));
    Ok(report)
}

/// `π⊗τ ≅ π'⊗τ'` iff `π ≅ π'` and `τ ≅ τ'`, over all catalog pairs of pairs.
pub fn verify_injectivity_catalog(g: &GroupRef, h: &GroupRef, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("tensor-injectivity");
    report.param("g", g.label()).param("h", h.label()).param("seed", seed);
    let product: GroupRef = Arc::new(direct_product(g, h));
    let cg = unitary_dual(g, numerics::derive_seed(seed, 1))?;
    let ch = unitary_dual(h, numerics::derive_seed(seed, 2))?;
    let mut pairs = Vec::new();
    for (i, a) in cg.irreps.iter().enumerate() {
        for (j, b) in ch.irreps.iter().enumerate() {
            pairs.push((i, j, tensor_product_rep_in(a, b, &product)?));
        }
    }
    let mut mismatches = 0;
    for (i1, j1, t1) in &pairs {
        for (i2, j2, t2) in &pairs {
            let factors_equal =
                are_equivalent(&cg.irreps[*i1], &cg.irreps[*i2]) && are_equivalent(&ch.irreps[*j1], &ch.irreps[*j2]);
            if are_equivalent(t1, t2) != factors_equal {
                mismatches += 1;
            }
        }
    }
    report.check(
        "equivalence-iff-factors",
        mismatches == 0,
        0.0,
        format!("{} pairs of pairs, {mismatches} mismatches", pairs.len() * pairs.len()),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;
    use crate::numerics::rng_from_seed;
    use crate::repr::regular_representation;

    fn grp(spec: &str) -> GroupRef {
        Arc::new(parse_group_spec(spec).unwrap())
    }

    #[test]
    fn split_identity_and_planted() {
        let s3 = grp("S3");
        let cat = unitary_dual(&s3, 1).unwrap();
        let p = &cat.irreps[2];
        let split = split_commutant(&ComplexMatrix::identity(6, 6), p, 3).unwrap();
        assert!((split.s - ComplexMatrix::identity(3, 3)).norm() < 1e-14);
        assert!(split.residual < 1e-14);

        let mut rng = rng_from_seed(21);
        let s0 = numerics::random_unitary(&mut rng, 3);
        let t = kron(&ComplexMatrix::identity(2, 2), &s0);
        let split = split_commutant(&t, p, 3).unwrap();
        assert!((split.s - s0).norm() < 1e-10);
    }

    #[test]
    fn split_rejects_noncommuting() {
        let s3 = grp("S3");
        let cat = unitary_dual(&s3, 1).unwrap();
        let p = &cat.irreps[2];
        // element 1 is a transposition, not central
        let t = kron(p.matrix(1), &ComplexMatrix::identity(2, 2));
        assert!(matches!(split_commutant(&t, p, 2), Err(Error::NotCommuting { .. })));
        // reducible p: a commuting operator that is not 1 (x) S
        let reg = regular_representation(&grp("C2"));
        let mut t = ComplexMatrix::zeros(2, 2);
        let proj = &reg.matrix(0).clone() + reg.matrix(1);
        t += proj * c64::new(0.5, 0.0);
        assert!(matches!(split_commutant(&t, &reg, 1), Err(Error::LargeResidual { .. })));
    }

    #[test]
    fn stable_subspaces() {
        let s3 = grp("S3");
        let cat = unitary_dual(&s3, 1).unwrap();
        let p = &cat.irreps[2];
        let id2 = ComplexMatrix::identity(2, 2);
        let whole = stable_subspace_factor(&ComplexMatrix::identity(8, 8), p, 4).unwrap();
        assert_eq!(whole.w1.ncols(), 4);

        let mut rng = rng_from_seed(3);
        let w = numerics::orthonormalize(&numerics::random_complex(&mut rng, 4, 1), 1e-12);
        let f = stable_subspace_factor(&kron(&id2, &w), p, 4).unwrap();
        assert!(numerics::subspace_distance(&f.w1, &w) < 1e-8);

        let w0 = numerics::orthonormalize(&numerics::random_complex(&mut rng, 4, 2), 1e-12);
        let mix = numerics::random_unitary(&mut rng, 4);
        let u = kron(&id2, &w0) * mix;
        let f = stable_subspace_factor(&u, p, 4).unwrap();
        assert!(numerics::subspace_distance(&f.w1, &w0) < 1e-8);
        assert!(f.residual < 1e-8);
    }

    #[test]
    fn schur_products() {
        let s3 = grp("S3");
        let cat = unitary_dual(&s3, 1).unwrap();
        let p = &cat.irreps[2];
        let id = ComplexMatrix::identity(2, 2);
        assert!((schur_inner_product(&id, &id, p).unwrap() - c64::new(1.0, 0.0)).norm() < 1e-14);
        let top = numerics::vcat(&[id.clone(), ComplexMatrix::zeros(2, 2)], 2);
        let bottom = numerics::vcat(&[ComplexMatrix::zeros(2, 2), id.clone()], 2);
        assert!(schur_inner_product(&top, &bottom, p).unwrap().norm() < 1e-14);
        let c = c64::new(0.3, -2.0);
        let scaled = schur_inner_product(&(&top * c), &top, p).unwrap();
        assert!((scaled - c).norm() < 1e-14);
        let mut skew = id.clone();
        skew[(0, 0)] = c64::new(2.0, 0.0);
        assert!(matches!(schur_inner_product(&skew, &id, p), Err(Error::NotScalar { .. })));
    }

    #[test]
    fn hom_spaces() {
        let g = grp("S3");
        let h = grp("C4");
        let product: GroupRef = Arc::new(direct_product(&g, &h));
        let cg = unitary_dual(&g, 1).unwrap();
        let ch = unitary_dual(&h, 1).unwrap();
        let (pi, tau) = (&cg.irreps[2], &ch.irreps[3]);
        let eta = tensor_product_rep_in(pi, tau, &product).unwrap();
        let hom = hom_space_with_action(&eta, pi, &h).unwrap();
        assert_eq!(hom.basis.len(), tau.dim());
        assert!(are_equivalent(&hom.h_action, tau));
        assert!(matches!(hom_space_with_action(&eta, &cg.irreps[0], &h), Err(Error::EmptyHomSpace)));

        let phi = evaluation_map(pi, &hom.basis, eta.dim());
        assert!(numerics::is_unitary(&phi, 1e-8));
        let pt = tensor_product_rep_in(pi, &hom.h_action, &product).unwrap();
        assert!(repr::intertwining_residual(&phi, &pt, &eta) < 1e-8);
    }

    #[test]
    fn sign_times_sign() {
        let c2 = grp("C2");
        let cat = unitary_dual(&c2, 1).unwrap();
        let sign = &cat.irreps[1];
        let eta = tensor_product_rep(sign, sign);
        let hom = hom_space_with_action(&eta, sign, &c2).unwrap();
        assert_eq!(hom.basis.len(), 1);
        assert!((hom.h_action.matrix(1)[(0, 0)] + c64::new(1.0, 0.0)).norm() < 1e-12);
    }

    use crate::repr::tensor_product_rep;

    #[test]
    fn factorize_trivial_and_round_trip() {
        let g = grp("S3");
        let h = grp("C4");
        let product: GroupRef = Arc::new(direct_product(&g, &h));
        let triv = UnitaryRep::trivial(&product);
        let r = factorize(&triv, &g, &h, 42).unwrap();
        assert_eq!((r.pi.dim(), r.tau.dim()), (1, 1));
        assert!((r.phi[(0, 0)] - c64::new(1.0, 0.0)).norm() < 1e-12);

        let cg = unitary_dual(&g, 1).unwrap();
        let ch = unitary_dual(&h, 1).unwrap();
        for a in &cg.irreps {
            for b in &ch.irreps {
                let eta = tensor_product_rep_in(a, b, &product).unwrap();
                let r = factorize(&eta, &g, &h, 7).unwrap();
                assert!(are_equivalent(&r.pi, a));
                assert!(are_equivalent(&r.tau, b));
                assert!(r.residual_intertwine < 1e-8);
                assert_eq!(r.distinct_left_constituents, 1);
            }
        }
        let reg = regular_representation(&product);
        assert!(matches!(factorize(&reg, &g, &h, 1), Err(Error::NotIrreducible(_))));
    }

    #[test]
    fn factorize_is_deterministic() {
        let g = grp("D4");
        let h = grp("C2");
        let product: GroupRef = Arc::new(direct_product(&g, &h));
        let cat = unitary_dual(&product, 5).unwrap();
        let eta = cat.irreps.last().unwrap();
        let a = factorize(eta, &g, &h, 11).unwrap();
        let b = factorize(eta, &g, &h, 11).unwrap();
        assert_eq!(a.phi, b.phi);
        assert_eq!(a.tau.matrices(), b.tau.matrices());
    }

    #[test]
    fn certificates_recheck() {
        let g = grp("S3");
        let h = grp("C4");
        let product: GroupRef = Arc::new(direct_product(&g, &h));
        let cat = unitary_dual(&product, 5).unwrap();
        let eta = &cat.irreps[9];
        let r = factorize(eta, &g, &h, 11).unwrap();
        let cert = FactorizationCertificate::new(eta, &r, 9).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: FactorizationCertificate = serde_json::from_str(&json).unwrap();
        assert!(back.recheck(&grp("S3"), &grp("C4"), 1e-6));
        let mut bad = back.clone();
        bad.tau_character[1][0] += 1.0;
        assert!(!bad.recheck(&grp("S3"), &grp("C4"), 1e-6));
    }

    #[test]
    fn bijection_and_injectivity_small() {
        let c2 = grp("C2");
        let r = verify_tensor_bijection(&c2, &c2, 1).unwrap();
        assert!(r.passed(), "{}", r.to_human());
        assert_eq!(r.summary.passed, 1 + 4 + 1);
        let c4 = grp("C4");
        let r = verify_injectivity_catalog(&c4, &c4, 1).unwrap();
        assert!(r.passed());
    }
}
