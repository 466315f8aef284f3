//! Unitary representations of finite groups.
//!
//! Representations are stored as one unitary matrix per group element. Irreducible
//! constituents are found by splitting with random Hermitian elements of the
//! commutant; irreducibles are identified by their characters.

use std::cmp::Ordering;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{direct_product, FiniteGroup, GroupRef, Subgroup};
use crate::numerics::{
    self, c64, common_nullspace_with_floor, derive_seed, hcat, hermitian_eigen, kron, rng_from_seed, trace,
    ComplexMatrix, Tolerances, ONE, ZERO,
};

/// Resampling attempts after the first when a commutant sample fails to split.
pub const MAX_RETRIES: usize = 5;

/// Groups up to this order have the homomorphism property checked on all pairs.
const FULL_HOMOMORPHISM_CHECK: usize = 64;
const SAMPLED_PAIRS: usize = 4096;

#[derive(Debug, Clone)]
pub struct UnitaryRep {
    group: GroupRef,
    dim: usize,
    matrices: Vec<ComplexMatrix>,
    label: String,
}

/// Worst-case violations of the representation axioms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepDefects {
    pub identity: f64,
    pub homomorphism: f64,
    pub unitarity: f64,
}

impl RepDefects {
    pub fn within(&self, tol: f64) -> bool {
        self.identity <= 1e-10 && self.homomorphism <= tol && self.unitarity <= tol
    }
}

impl UnitaryRep {
    /// Builds a representation and checks identity, homomorphism and
    /// unitarity at the default tolerance.
    pub fn new(group: GroupRef, matrices: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        let rep = Self::from_parts(group, matrices, label)?;
        let d = rep.defects();
        if !d.within(Tolerances::default().intertwine) {
            return Err(Error::Invalid(format!(
                "`{}` is not a unitary representation: {d:?}",
                rep.label
            )));
        }
        Ok(rep)
    }

    /// Shape checks only.
    pub(crate) fn from_parts(
        group: GroupRef,
        matrices: Vec<ComplexMatrix>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].nrows();
        if matrices.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::Dimension("matrices of differing shapes".into()));
        }
        if !matrices.iter().all(numerics::is_finite) {
            return Err(Error::NonFinite);
        }
        Ok(UnitaryRep { group, dim, matrices, label: label.into() })
    }

    pub fn trivial(group: &GroupRef) -> Self {
        let matrices = vec![ComplexMatrix::identity(1, 1); group.order()];
        UnitaryRep { group: group.clone(), dim: 1, matrices, label: format!("{}:trivial", group.label()) }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self, g: usize) -> &ComplexMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn defects(&self) -> RepDefects {
        let g = &self.group;
        let n = g.order();
        let identity = (&self.matrices[g.identity()] - ComplexMatrix::identity(self.dim, self.dim)).norm();
        let unitarity = self.matrices.iter().map(numerics::unitarity_residual).fold(0.0, f64::max);
        let pair = |a: usize, b: usize| {
            (&self.matrices[g.mul(a, b)] - &self.matrices[a] * &self.matrices[b]).norm()
        };
        let homomorphism = if n <= FULL_HOMOMORPHISM_CHECK {
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| pair(a, b)).fold(0.0, f64::max)
        } else {
            let mut rng = rng_from_seed(0x5eed);
            (0..SAMPLED_PAIRS)
                .map(|_| pair(rng.random_range(0..n), rng.random_range(0..n)))
                .fold(0.0, f64::max)
        };
        RepDefects { identity, homomorphism, unitarity }
    }

    /// `Q† ρ(g) Q` for an orthonormal block `Q` spanning an invariant subspace.
    pub fn compress(&self, q: &ComplexMatrix) -> UnitaryRep {
        let qa = q.adjoint();
        let matrices = self.matrices.iter().map(|m| &qa * m * q).collect();
        UnitaryRep { group: self.group.clone(), dim: q.ncols(), matrices, label: format!("{}|sub", self.label) }
    }

    /// `U ρ(g) U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> UnitaryRep {
        let ua = u.adjoint();
        let matrices = self.matrices.iter().map(|m| u * m * &ua).collect();
        UnitaryRep { group: self.group.clone(), dim: self.dim, matrices, label: format!("{}^U", self.label) }
    }

    pub fn direct_sum(&self, other: &UnitaryRep) -> Result<UnitaryRep> {
        same_group(&self.group, &other.group)?;
        let d = self.dim + other.dim;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                let mut m = ComplexMatrix::zeros(d, d);
                m.view_mut((0, 0), (self.dim, self.dim)).copy_from(a);
                m.view_mut((self.dim, self.dim), (other.dim, other.dim)).copy_from(b);
                m
            })
            .collect();
        Ok(UnitaryRep {
            group: self.group.clone(),
            dim: d,
            matrices,
            label: format!("({}+{})", self.label, other.label),
        })
    }

    /// Re-attaches the same matrices to a group with an identical table.
    pub fn rebind(&self, group: &GroupRef) -> Result<UnitaryRep> {
        same_group(&self.group, group)?;
        Ok(UnitaryRep { group: group.clone(), ..self.clone() })
    }
}

fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Dimension(format!("groups `{}` and `{}` differ", a.label(), b.label())))
    }
}

// ---------------------------------------------------------------------------
// Characters

#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    pub rep_label: String,
    /// One value per conjugacy class, in the group's class order.
    pub values: Vec<c64>,
}

impl Character {
    pub fn dim(&self) -> f64 {
        self.values[0].re
    }

    pub fn max_distance(&self, other: &Character) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Character, tol: f64) -> bool {
        self.values.len() == other.values.len() && self.max_distance(other) <= tol
    }

    /// Canonical order: dimension ascending, then class values descending
    /// (real part, then imaginary part) on a 1e-6 grid. Trivial comes first.
    pub fn canonical_cmp(&self, other: &Character) -> Ordering {
        let q = |x: f64| (x * 1e6).round() as i64;
        q(self.dim()).cmp(&q(other.dim())).then_with(|| {
            for (a, b) in self.values.iter().zip(&other.values) {
                let o = q(b.re).cmp(&q(a.re)).then(q(b.im).cmp(&q(a.im)));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

/// Class-wise traces; fails if the trace is not constant on a class.
pub fn character(p: &UnitaryRep) -> Result<Character> {
    let g = &p.group;
    let mut values = Vec::with_capacity(g.num_classes());
    for (ci, class) in g.conjugacy_classes().iter().enumerate() {
        let traces: Vec<c64> = class.iter().map(|&x| trace(&p.matrices[x])).collect();
        let spread = traces.iter().map(|t| (t - traces[0]).norm()).fold(0.0, f64::max);
        if spread > 1e-8 * (1.0 + p.dim as f64) {
            return Err(Error::ClassInconsistent { rep: p.label.clone(), class: ci, spread });
        }
        values.push(traces.iter().sum::<c64>() / class.len() as f64);
    }
    Ok(Character { rep_label: p.label.clone(), values })
}

/// `(1/|G|) Σ_classes |class| a(c) conj(b(c))`.
pub fn character_inner_product(a: &Character, b: &Character, g: &FiniteGroup) -> c64 {
    let total: c64 = g
        .conjugacy_classes()
        .iter()
        .zip(a.values.iter().zip(&b.values))
        .map(|(class, (x, y))| x * y.conj() * class.len() as f64)
        .sum();
    total / g.order() as f64
}

pub fn is_irreducible(p: &UnitaryRep) -> bool {
    match character(p) {
        Ok(chi) => (character_inner_product(&chi, &chi, &p.group) - ONE).norm() <= Tolerances::default().character,
        Err(_) => false,
    }
}

pub fn are_equivalent(p: &UnitaryRep, q: &UnitaryRep) -> bool {
    if *p.group != *q.group || p.dim != q.dim {
        return false;
    }
    match (character(p), character(q)) {
        (Ok(a), Ok(b)) => a.approx_eq(&b, Tolerances::default().character),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Constructions

pub fn regular_representation(g: &GroupRef) -> UnitaryRep {
    let n = g.order();
    let matrices = (0..n)
        .map(|x| {
            let mut m = ComplexMatrix::zeros(n, n);
            for y in 0..n {
                m[(g.mul(x, y), y)] = ONE;
            }
            m
        })
        .collect();
    UnitaryRep { group: g.clone(), dim: n, matrices, label: format!("{}:regular", g.label()) }
}

/// Restriction to `k`, re-indexed by the standalone subgroup.
pub fn restrict(p: &UnitaryRep, k: &Subgroup) -> Result<UnitaryRep> {
    same_group(&p.group, k.parent())?;
    let matrices = k.elements().iter().map(|&x| p.matrices[x].clone()).collect();
    Ok(UnitaryRep {
        group: k.as_group().clone(),
        dim: p.dim,
        matrices,
        label: format!("{}|{}", p.label, k.as_group().label()),
    })
}

/// `(p ⊗ t)(a, b) = p(a) ⊗ t(b)` on the given product group.
pub fn tensor_product_rep_in(p: &UnitaryRep, t: &UnitaryRep, product: &GroupRef) -> Result<UnitaryRep> {
    let (m, n) = (p.group.order(), t.group.order());
    if product.order() != m * n {
        return Err(Error::Dimension("product group order mismatch".into()));
    }
    let matrices = (0..m * n).map(|x| kron(&p.matrices[x / n], &t.matrices[x % n])).collect();
    Ok(UnitaryRep {
        group: product.clone(),
        dim: p.dim * t.dim,
        matrices,
        label: format!("{}(x){}", p.label, t.label),
    })
}

pub fn tensor_product_rep(p: &UnitaryRep, t: &UnitaryRep) -> UnitaryRep {
    let product = Arc::new(direct_product(&p.group, &t.group));
    tensor_product_rep_in(p, t, &product).expect("orders match")
}

// ---------------------------------------------------------------------------
// Intertwiners

/// Orthonormal (Frobenius) basis of `{X : X p(g) = q(g) X for all g}`.
///
/// The linear system is built on the group's generators and the result is
/// verified on every element.
pub fn intertwiner_space(p: &UnitaryRep, q: &UnitaryRep) -> Result<Vec<ComplexMatrix>> {
    same_group(&p.group, &q.group)?;
    let tol = Tolerances::default();
    let (dp, dq) = (p.dim, q.dim);
    let build = |elements: &[usize]| {
        let id_p = ComplexMatrix::identity(dp, dp);
        let id_q = ComplexMatrix::identity(dq, dq);
        let system: Vec<ComplexMatrix> = elements
            .iter()
            .map(|&g| kron(&p.matrices[g].transpose(), &id_q) - kron(&id_p, &q.matrices[g]))
            .collect();
        let scale = elements
            .iter()
            .map(|&g| p.matrices[g].norm().max(q.matrices[g].norm()))
            .fold(0.0, f64::max);
        let null = common_nullspace_with_floor(&system, dp * dq, tol.nullspace, scale);
        null.column_iter()
            .map(|c| numerics::unvectorize(c.as_slice(), dq, dp))
            .collect::<Vec<_>>()
    };
    let gens: Vec<usize> = p.group.generators().to_vec();
    let basis = build(&gens);
    let ok = basis.iter().all(|x| intertwining_residual(x, p, q) <= tol.intertwine * (1.0 + x.norm()));
    if ok {
        Ok(basis)
    } else {
        let all: Vec<usize> = (0..p.group.order()).collect();
        Ok(build(&all))
    }
}

/// `max_g ‖X p(g) − q(g) X‖_F`.
pub fn intertwining_residual(x: &ComplexMatrix, p: &UnitaryRep, q: &UnitaryRep) -> f64 {
    p.matrices
        .iter()
        .zip(&q.matrices)
        .map(|(a, b)| (x * a - b * x).norm())
        .fold(0.0, f64::max)
}

pub fn commutant_dimension(p: &UnitaryRep) -> usize {
    intertwiner_space(p, p).map(|b| b.len()).unwrap_or(0)
}

/// Unitary `T` with `T p(g) = q(g) T`, or `None` when the characters differ.
///
/// A seeded random combination of the intertwiner basis is made unitary by
/// its polar factor; when the Hom space is one-dimensional the phase is fixed
/// so the trace is real and non-negative.
pub fn equivalence_witness(p: &UnitaryRep, q: &UnitaryRep, seed: u64) -> Result<Option<ComplexMatrix>> {
    if !are_equivalent(p, q) {
        return Ok(None);
    }
    let basis = intertwiner_space(p, q)?;
    let mut rng = rng_from_seed(seed);
    let mut x = ComplexMatrix::zeros(q.dim, p.dim);
    for b in &basis {
        x += b * numerics::random_complex(&mut rng, 1, 1)[(0, 0)];
    }
    let svd = x.svd(true, true);
    let mut w = svd.u.expect("requested") * svd.v_t.expect("requested");
    if basis.len() == 1 {
        let t = trace(&w);
        if t.norm() > 1e-12 {
            w *= t.conj() / t.norm();
        }
    }
    let residual = intertwining_residual(&w, p, q).max(numerics::unitarity_residual(&w));
    if residual > Tolerances::default().intertwine {
        return Err(Error::WitnessFailure { residual });
    }
    Ok(Some(w))
}

// ---------------------------------------------------------------------------
// Decomposition

/// One isotypic piece of a decomposition.
#[derive(Debug, Clone)]
pub struct Summand {
    pub irrep: UnitaryRep,
    pub character: Character,
    pub multiplicity: usize,
    /// Orthonormal columns spanning the whole isotype (`multiplicity * dim`).
    pub embedding: ComplexMatrix,
    /// One orthonormal block per irreducible copy.
    pub copies: Vec<ComplexMatrix>,
}

/// Splits `p` into irreducibles and groups them by character.
///
/// Summands come back in canonical character order; the representative
/// irrep of each summand is `copies[0]† p copies[0]`. Deterministic in
/// `(p, seed)`.
pub fn decompose(p: &UnitaryRep, seed: u64) -> Result<Vec<Summand>> {
    let tol = Tolerances::default();
    let mut blocks = Vec::new();
    split_invariant(p, ComplexMatrix::identity(p.dim, p.dim), seed, &tol, &mut blocks)?;

    let mut summands: Vec<Summand> = Vec::new();
    for block in blocks {
        let sub = p.compress(&block);
        let chi = character(&sub)?;
        match summands.iter_mut().find(|s| s.character.approx_eq(&chi, tol.character)) {
            Some(s) => {
                s.multiplicity += 1;
                s.copies.push(block);
            }
            None => summands.push(Summand {
                irrep: sub,
                character: chi,
                multiplicity: 1,
                embedding: ComplexMatrix::zeros(0, 0),
                copies: vec![block],
            }),
        }
    }
    summands.sort_by(|a, b| a.character.canonical_cmp(&b.character));
    for (i, s) in summands.iter_mut().enumerate() {
        s.embedding = hcat(&s.copies, p.dim);
        let label = format!("{}/{}", p.label, i);
        s.irrep.label = label.clone();
        s.character.rep_label = label;
    }
    Ok(summands)
}

fn split_invariant(
    p: &UnitaryRep,
    basis: ComplexMatrix,
    seed: u64,
    tol: &Tolerances,
    out: &mut Vec<ComplexMatrix>,
) -> Result<()> {
    let k = basis.ncols();
    let sub = p.compress(&basis);
    let chi = character(&sub)?;
    let norm = character_inner_product(&chi, &chi, &p.group).re;
    if (norm - 1.0).abs() <= tol.character {
        out.push(basis);
        return Ok(());
    }
    let order = p.group.order() as f64;
    for attempt in 0..=MAX_RETRIES {
        let attempt_seed = derive_seed(seed, attempt as u64);
        let mut rng = rng_from_seed(attempt_seed);
        let x = numerics::random_hermitian(&mut rng, k);
        // group average is the orthogonal projection onto the commutant
        let mut c = ComplexMatrix::zeros(k, k);
        for m in &sub.matrices {
            c += m * &x * m.adjoint();
        }
        c /= c64::new(order, 0.0);
        let eig = hermitian_eigen(&c, tol.cluster)?;
        if eig.num_clusters() < 2 || eig.min_separating_gap < 10.0 * tol.cluster {
            continue;
        }
        for (i, block) in eig.eigenvector_blocks.iter().enumerate() {
            split_invariant(p, &basis * block, derive_seed(attempt_seed, 1 + i as u64), tol, out)?;
        }
        return Ok(());
    }
    Err(Error::Convergence { dim: k, attempts: MAX_RETRIES + 1 })
}

// ---------------------------------------------------------------------------
// Unitary dual

#[derive(Debug, Clone)]
pub struct IrrepCatalog {
    pub group: GroupRef,
    pub irreps: Vec<UnitaryRep>,
    pub characters: Vec<Character>,
}

impl IrrepCatalog {
    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.dim()).collect()
    }

    /// Index of the catalog irrep with this character.
    pub fn find(&self, chi: &Character) -> Option<usize> {
        self.characters
            .iter()
            .position(|c| c.approx_eq(chi, Tolerances::default().character))
    }

    /// Largest `|⟨χ_i, χ_j⟩ − δ_ij|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.characters.iter().enumerate() {
            for (j, b) in self.characters.iter().enumerate() {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((character_inner_product(a, b, &self.group) - target).norm());
            }
        }
        worst
    }

    pub fn sum_of_squared_dims(&self) -> usize {
        self.irreps.iter().map(|r| r.dim() * r.dim()).sum()
    }

    pub fn character_table(&self) -> CharacterTableDocument {
        let g = &self.group;
        CharacterTableDocument {
            format_version: crate::report::FORMAT_VERSION,
            group: g.label().to_string(),
            order: g.order(),
            class_sizes: g.conjugacy_classes().iter().map(|c| c.len()).collect(),
            class_representatives: g.conjugacy_classes().iter().map(|c| c[0]).collect(),
            irreps: self
                .characters
                .iter()
                .enumerate()
                .map(|(i, chi)| CharacterRow {
                    index: i,
                    dim: self.irreps[i].dim(),
                    values: chi.values.iter().map(|z| crate::report::complex_pair(*z)).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterTableDocument {
    pub format_version: u32,
    pub group: String,
    pub order: usize,
    pub class_sizes: Vec<usize>,
    /// Smallest element index of each class.
    pub class_representatives: Vec<usize>,
    pub irreps: Vec<CharacterRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterRow {
    pub index: usize,
    pub dim: usize,
    /// `[re, im]` per class, 12 significant digits.
    pub values: Vec<[f64; 2]>,
}

/// All irreducible representations of `g`, from the regular representation.
pub fn unitary_dual(g: &GroupRef, seed: u64) -> Result<IrrepCatalog> {
    let summands = decompose(&regular_representation(g), seed)?;
    let mut irreps = Vec::new();
    let mut characters = Vec::new();
    for (i, s) in summands.into_iter().enumerate() {
        let label = format!("{}#{}", g.label(), i);
        irreps.push(s.irrep.with_label(label.clone()));
        characters.push(Character { rep_label: label, values: s.character.values });
    }
    let catalog = IrrepCatalog { group: g.clone(), irreps, characters };
    if catalog.len() != g.num_classes() || catalog.sum_of_squared_dims() != g.order() {
        return Err(Error::Invalid(format!(
            "dual of {} incomplete: {} irreps for {} classes",
            g.label(),
            catalog.len(),
            g.num_classes()
        )));
    }
    Ok(catalog)
}

// ---------------------------------------------------------------------------
// Isotypes

fn check_tau(k: &Subgroup, tau: &UnitaryRep) -> Result<()> {
    same_group(k.as_group(), &tau.group)?;
    if !is_irreducible(tau) {
        return Err(Error::TauNotIrreducible(tau.label.clone()));
    }
    Ok(())
}

/// `P_τ = (dim τ / |K|) Σ_{k∈K} conj(tr τ(k)) p(k)`.
pub fn isotype_projection(p: &UnitaryRep, k: &Subgroup, tau: &UnitaryRep) -> Result<ComplexMatrix> {
    same_group(&p.group, k.parent())?;
    check_tau(k, tau)?;
    let mut proj = ComplexMatrix::zeros(p.dim, p.dim);
    for (i, &x) in k.elements().iter().enumerate() {
        proj += &p.matrices[x] * trace(&tau.matrices[i]).conj();
    }
    Ok(proj * c64::new(tau.dim as f64 / k.order() as f64, 0.0))
}

/// `[p|K : τ]` from characters.
pub fn multiplicity(p: &UnitaryRep, k: &Subgroup, tau: &UnitaryRep) -> Result<usize> {
    check_tau(k, tau)?;
    let res = restrict(p, k)?;
    let value = character_inner_product(&character(&res)?, &character(tau)?, k.as_group());
    let rounded = value.re.round();
    if (value - c64::new(rounded, 0.0)).norm() > Tolerances::default().character || rounded < 0.0 {
        return Err(Error::NonIntegralMultiplicity { value: value.re });
    }
    Ok(rounded as usize)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsotypePart {
    pub tau_label: String,
    pub tau_dim: usize,
    pub multiplicity: usize,
}

/// `V_p(F)` for a set `F` of pairwise inequivalent irreducibles of `K`.
#[derive(Debug, Clone)]
pub struct Isotype {
    pub parts: Vec<IsotypePart>,
    /// Orthonormal columns spanning the isotype.
    pub embedding: ComplexMatrix,
    /// Orthogonal projection onto the isotype.
    pub projection: ComplexMatrix,
}

impl Isotype {
    pub fn dim(&self) -> usize {
        self.embedding.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.embedding.ncols() == 0
    }

    /// Multiplicity for a single-τ isotype (sum over parts otherwise).
    pub fn multiplicity(&self) -> usize {
        self.parts.iter().map(|p| p.multiplicity).sum()
    }
}

pub fn isotype(p: &UnitaryRep, k: &Subgroup, taus: &[UnitaryRep]) -> Result<Isotype> {
    for (i, a) in taus.iter().enumerate() {
        for b in &taus[..i] {
            if are_equivalent(a, b) {
                return Err(Error::DuplicateTau(a.label.clone()));
            }
        }
    }
    let mut projection = ComplexMatrix::zeros(p.dim, p.dim);
    let mut parts = Vec::new();
    for tau in taus {
        projection += isotype_projection(p, k, tau)?;
        parts.push(IsotypePart {
            tau_label: tau.label.clone(),
            tau_dim: tau.dim,
            multiplicity: multiplicity(p, k, tau)?,
        });
    }
    let expected: usize = parts.iter().map(|q| q.multiplicity * q.tau_dim).sum();
    let embedding = projection_image(&projection)?;
    if embedding.ncols() != expected {
        return Err(Error::Invalid(format!(
            "isotype rank {} differs from multiplicity count {expected}",
            embedding.ncols()
        )));
    }
    Ok(Isotype { parts, embedding, projection })
}

/// Orthonormal basis for the image of an orthogonal projection.
pub fn projection_image(proj: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = proj.nrows();
    if n == 0 {
        return Ok(ComplexMatrix::zeros(0, 0));
    }
    let eig = hermitian_eigen(proj, Tolerances::default().cluster)?;
    let blocks: Vec<ComplexMatrix> = eig
        .eigenvector_blocks
        .iter()
        .zip(eig.cluster_values())
        .filter(|(_, v)| *v > 0.5)
        .map(|(b, _)| b.clone())
        .collect();
    Ok(hcat(&blocks, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, parse_group_spec, subgroup_closure, symmetric};

    fn grp(spec: &str) -> GroupRef {
        Arc::new(parse_group_spec(spec).unwrap())
    }

    /// Sign representation of S_n from the permutation parity of the Cayley
    /// table's left action on itself is awkward; for S3 we use the fact that
    /// the elements of order 2 are exactly the odd permutations.
    fn sign_s3(g: &GroupRef) -> UnitaryRep {
        let m = (0..6)
            .map(|x| {
                let s = if g.element_order(x) == 2 { -1.0 } else { 1.0 };
                ComplexMatrix::from_element(1, 1, c64::new(s, 0.0))
            })
            .collect();
        UnitaryRep::new(g.clone(), m, "sign").unwrap()
    }

    #[test]
    fn regular_rep_basics() {
        let c1 = grp("C1");
        assert_eq!(regular_representation(&c1).dim(), 1);
        let c2 = grp("C2");
        let r = regular_representation(&c2);
        assert_eq!(r.matrix(1)[(0, 1)], ONE);
        assert!(r.defects().within(1e-12));
        let s3 = grp("S3");
        let chi = character(&regular_representation(&s3)).unwrap();
        // classes: {e}, transpositions, 3-cycles in some order; identity first
        assert_eq!(chi.values[0], c64::new(6.0, 0.0));
        assert!(chi.values[1..].iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn inner_products() {
        let s3 = grp("S3");
        let triv = character(&UnitaryRep::trivial(&s3)).unwrap();
        let reg = character(&regular_representation(&s3)).unwrap();
        assert!((character_inner_product(&triv, &triv, &s3) - ONE).norm() < 1e-12);
        assert!((character_inner_product(&reg, &triv, &s3) - ONE).norm() < 1e-12);
        let sign = character(&sign_s3(&s3)).unwrap();
        assert!(character_inner_product(&sign, &triv, &s3).norm() < 1e-12);
    }

    #[test]
    fn class_inconsistency_detected() {
        let s3 = grp("S3");
        // not a class function: value -1 only on one transposition
        let m = (0..6)
            .map(|x| ComplexMatrix::from_element(1, 1, c64::new(if x == 1 { -1.0 } else { 1.0 }, 0.0)))
            .collect();
        let bogus = UnitaryRep::from_parts(s3, m, "bogus").unwrap();
        assert!(matches!(character(&bogus), Err(Error::ClassInconsistent { .. })));
    }

    #[test]
    fn decompose_c4_regular() {
        let c4 = grp("C4");
        let s = decompose(&regular_representation(&c4), 1).unwrap();
        assert_eq!(s.len(), 4);
        // generator 1 acts by i^k in the four characters
        let mut gen_values: Vec<(i64, i64)> = s
            .iter()
            .map(|x| {
                let v = x.character.values[c4.class_of(1)];
                (v.re.round() as i64, v.im.round() as i64)
            })
            .collect();
        gen_values.sort();
        assert_eq!(gen_values, vec![(-1, 0), (0, -1), (0, 1), (1, 0)]);
    }

    #[test]
    fn decompose_s3_regular() {
        let s3 = grp("S3");
        let p = regular_representation(&s3);
        let s = decompose(&p, 42).unwrap();
        let shape: Vec<(usize, usize)> = s.iter().map(|x| (x.irrep.dim(), x.multiplicity)).collect();
        assert_eq!(shape, vec![(1, 1), (1, 1), (2, 2)]);
        let all = hcat(&s.iter().map(|x| x.embedding.clone()).collect::<Vec<_>>(), 6);
        assert!(numerics::orthonormality_residual(&all) < 1e-10);
        for x in &s {
            assert_eq!(commutant_dimension(&x.irrep), 1);
        }
    }

    #[test]
    fn decompose_irreducible_is_single() {
        let s3 = grp("S3");
        let cat = unitary_dual(&s3, 7).unwrap();
        let std2 = &cat.irreps[2];
        let s = decompose(std2, 3).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].multiplicity, 1);
        assert!(numerics::is_unitary(&s[0].embedding, 1e-10));
    }

    #[test]
    fn decompose_is_deterministic() {
        let d4 = grp("D4");
        let p = regular_representation(&d4);
        let a = decompose(&p, 9).unwrap();
        let b = decompose(&p, 9).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.embedding, y.embedding);
        }
    }

    #[test]
    fn duals() {
        let s3 = grp("S3");
        let cat = unitary_dual(&s3, 42).unwrap();
        assert_eq!(cat.dims(), vec![1, 1, 2]);
        assert!(cat.orthonormality_residual() < 1e-8);
        let q8 = unitary_dual(&grp("Q8"), 42).unwrap();
        assert_eq!(q8.dims(), vec![1, 1, 1, 1, 2]);
        let c5 = unitary_dual(&grp("C5"), 42).unwrap();
        assert_eq!(c5.dims(), vec![1; 5]);
        // trivial first
        assert!(cat.characters[0].values.iter().all(|z| (z - ONE).norm() < 1e-8));
    }

    #[test]
    fn restriction() {
        let s3 = grp("S3");
        let k = subgroup_closure(&s3, &[1]).unwrap();
        let e = Subgroup::trivial(&s3);
        let reg = regular_representation(&s3);
        let r = restrict(&reg, &e).unwrap();
        assert_eq!(r.dim(), 6);
        assert_eq!(r.group().order(), 1);
        // [G:K] copies of the regular rep of K
        let rk = restrict(&reg, &k).unwrap();
        let reg_k = regular_representation(k.as_group());
        let lhs = character(&rk).unwrap();
        let rhs = character(&reg_k).unwrap();
        for (a, b) in lhs.values.iter().zip(&rhs.values) {
            assert!((a - b * 3.0).norm() < 1e-12);
        }
        // restrict twice == restrict to the smaller subgroup
        let kk = Subgroup::trivial(k.as_group());
        let twice = restrict(&rk, &kk).unwrap();
        assert_eq!(twice.matrices(), r.matrices());
    }

    #[test]
    fn projections() {
        let s3 = grp("S3");
        let whole = Subgroup::whole(&s3);
        let reg = regular_representation(&s3);
        let triv = UnitaryRep::trivial(&s3);
        let p = isotype_projection(&reg, &whole, &triv).unwrap();
        let avg = ComplexMatrix::from_element(6, 6, c64::new(1.0 / 6.0, 0.0));
        assert!((p - avg).norm() < 1e-12);

        let cat = unitary_dual(&s3, 1).unwrap();
        let mut total = ComplexMatrix::zeros(6, 6);
        for tau in &cat.irreps {
            let p = isotype_projection(&reg, &whole, tau).unwrap();
            assert!((&p * &p - &p).norm() < 1e-8);
            assert!((p.adjoint() - &p).norm() < 1e-8);
            total += p;
        }
        assert!((total - ComplexMatrix::identity(6, 6)).norm() < 1e-8);

        let std2 = &cat.irreps[2];
        let p = isotype_projection(std2, &whole, std2).unwrap();
        assert!((p - ComplexMatrix::identity(2, 2)).norm() < 1e-8);

        let reducible = reg.clone();
        assert!(matches!(
            isotype_projection(&reg, &whole, &reducible),
            Err(Error::TauNotIrreducible(_))
        ));
    }

    #[test]
    fn isotypes_and_multiplicities() {
        let s3 = grp("S3");
        let whole = Subgroup::whole(&s3);
        let reg = regular_representation(&s3);
        let cat = unitary_dual(&s3, 1).unwrap();
        assert_eq!(isotype(&reg, &whole, &cat.irreps).unwrap().dim(), 6);
        assert!(isotype(&reg, &whole, &[]).unwrap().is_zero());
        assert_eq!(isotype(&reg, &whole, &cat.irreps[..1]).unwrap().dim(), 1);
        assert!(matches!(
            isotype(&reg, &whole, &[cat.irreps[1].clone(), cat.irreps[1].clone()]),
            Err(Error::DuplicateTau(_))
        ));
        for tau in &cat.irreps {
            assert_eq!(multiplicity(&reg, &whole, tau).unwrap(), tau.dim());
            assert_eq!(multiplicity(tau, &whole, tau).unwrap(), 1);
        }
        let triv = UnitaryRep::trivial(&s3);
        assert_eq!(multiplicity(&triv, &whole, &cat.irreps[1]).unwrap(), 0);
    }

    #[test]
    fn intertwiners_follow_schur() {
        let s3 = grp("S3");
        let cat = unitary_dual(&s3, 1).unwrap();
        for (i, a) in cat.irreps.iter().enumerate() {
            for (j, b) in cat.irreps.iter().enumerate() {
                let n = intertwiner_space(a, b).unwrap().len();
                assert_eq!(n, usize::from(i == j));
            }
        }
        let std2 = &cat.irreps[2];
        let basis = intertwiner_space(std2, std2).unwrap();
        let scaled = &basis[0] * c64::new(2f64.sqrt(), 0.0);
        let phase = scaled[(0, 0)] / scaled[(0, 0)].norm();
        assert!((scaled / phase - ComplexMatrix::identity(2, 2)).norm() < 1e-10);
        let doubled = std2.direct_sum(std2).unwrap();
        assert_eq!(intertwiner_space(std2, &doubled).unwrap().len(), 2);
    }

    #[test]
    fn equivalence() {
        let s3 = grp("S3");
        let cat = unitary_dual(&s3, 1).unwrap();
        let std2 = &cat.irreps[2];
        assert!(are_equivalent(std2, std2));
        let w = equivalence_witness(std2, std2, 0).unwrap().unwrap();
        assert!((w - ComplexMatrix::identity(2, 2)).norm() < 1e-10);

        let mut rng = rng_from_seed(99);
        let u = numerics::random_unitary(&mut rng, 2);
        let conj = std2.conjugate_by(&u);
        let w = equivalence_witness(std2, &conj, 0).unwrap().unwrap();
        // witness is U up to a phase
        let ratio = (u.adjoint() * &w)[(0, 0)];
        assert!((&w - &u * ratio).norm() < 1e-8);
        assert!((ratio.norm() - 1.0).abs() < 1e-8);

        assert!(!are_equivalent(&UnitaryRep::trivial(&s3), &sign_s3(&s3)));
        assert!(equivalence_witness(&UnitaryRep::trivial(&s3), &sign_s3(&s3), 0).unwrap().is_none());
    }

    #[test]
    fn tensors() {
        let s3 = grp("S3");
        let c4 = grp("C4");
        let t = tensor_product_rep(&UnitaryRep::trivial(&s3), &UnitaryRep::trivial(&c4));
        assert_eq!(t.dim(), 1);
        assert!(t.matrices().iter().all(|m| (m[(0, 0)] - ONE).norm() < 1e-15));
        let cs = unitary_dual(&s3, 1).unwrap();
        let cc = unitary_dual(&c4, 1).unwrap();
        for a in &cs.irreps {
            for b in &cc.irreps {
                let t = tensor_product_rep(a, b);
                assert!(is_irreducible(&t));
                let g = t.group().clone();
                for x in 0..g.order() {
                    let lhs = trace(t.matrix(x));
                    let rhs = trace(a.matrix(x / 4)) * trace(b.matrix(x % 4));
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn irreducibility() {
        let c2 = grp("C2");
        assert!(is_irreducible(&UnitaryRep::trivial(&c2)));
        assert!(!is_irreducible(&regular_representation(&c2)));
        let s3 = Arc::new(symmetric(3).unwrap());
        let cat = unitary_dual(&s3, 5).unwrap();
        assert!(is_irreducible(&cat.irreps[2]));
        assert_eq!(commutant_dimension(&cat.irreps[2]), 1);
        assert_eq!(commutant_dimension(&regular_representation(&s3)), 6);
        let _ = cyclic(1);
    }
}
