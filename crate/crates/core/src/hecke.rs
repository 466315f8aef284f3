//! Convolution algebras of finite groups and the sandwich algebras
//! `C_F = e_F * C(G) * e_F` acting on isotypes.
//!
//! Measure convention: a function on `G` carries a subgroup `K` and all
//! integrals over `G` are `(1/|K|) Σ_{x∈G}`, so `vol(K) = 1` and the measures
//! of `G` and `K` agree on `K`. Functions on `K` itself are elements whose
//! group is the standalone copy of `K` with `K` as its own normalising
//! subgroup. The unit of the algebra is `|K| δ_e`.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{product_subgroup, GroupRef, Subgroup};
use crate::numerics::{
    self, c64, common_nullspace_with_floor, kron, orthonormalize, rng_from_seed, trace, vectorize, ComplexMatrix,
    Tolerances, ONE, ZERO,
};
use crate::repr::{self, are_equivalent, is_irreducible, isotype, Isotype, UnitaryRep};

/// Modular function of a finite group. Finite groups are unimodular.
pub const MODULAR_FUNCTION: f64 = 1.0;

#[derive(Debug, Clone)]
pub struct GroupAlgebraElement {
    group: GroupRef,
    norm: Subgroup,
    coeffs: Vec<c64>,
}

impl GroupAlgebraElement {
    pub fn new(norm: &Subgroup, coeffs: Vec<c64>) -> Result<Self> {
        let group = norm.parent().clone();
        if coeffs.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(GroupAlgebraElement { group, norm: norm.clone(), coeffs })
    }

    pub fn zero(norm: &Subgroup) -> Self {
        Self::new(norm, vec![ZERO; norm.parent().order()]).expect("shape")
    }

    /// Point mass at `x` (value 1 at `x`).
    pub fn delta(norm: &Subgroup, x: usize) -> Self {
        let mut f = Self::zero(norm);
        f.coeffs[x] = ONE;
        f
    }

    /// `|K| δ_e`, the unit for convolution.
    pub fn unit(norm: &Subgroup) -> Self {
        let e = norm.parent().identity();
        Self::delta(norm, e).scale(c64::new(norm.order() as f64, 0.0))
    }

    pub fn from_fn(norm: &Subgroup, f: impl Fn(usize) -> c64) -> Self {
        Self::new(norm, (0..norm.parent().order()).map(f).collect()).expect("shape")
    }

    pub fn random<R: Rng>(norm: &Subgroup, rng: &mut R) -> Self {
        let v = numerics::random_complex(rng, norm.parent().order(), 1);
        Self::new(norm, v.as_slice().to_vec()).expect("shape")
    }

    /// A function on `K` (as a standalone group with `vol(K) = 1`).
    pub fn on_subgroup(k: &Subgroup, coeffs: Vec<c64>) -> Result<Self> {
        Self::new(&Subgroup::whole(k.as_group()), coeffs)
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn norm_subgroup(&self) -> &Subgroup {
        &self.norm
    }

    pub fn coeffs(&self) -> &[c64] {
        &self.coeffs
    }

    pub fn get(&self, x: usize) -> c64 {
        self.coeffs[x]
    }

    /// `|K|`, the reciprocal of the measure of a point.
    fn weight(&self) -> f64 {
        1.0 / self.norm.order() as f64
    }

    /// `∫_G f = (1/|K|) Σ f(x)`.
    pub fn integral(&self) -> c64 {
        self.coeffs.iter().sum::<c64>() * self.weight()
    }

    pub fn scale(&self, s: c64) -> Self {
        GroupAlgebraElement { coeffs: self.coeffs.iter().map(|z| z * s).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_measure(self, other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(GroupAlgebraElement { coeffs, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-ONE))
    }

    /// Max coefficient distance (infinite if the measures differ).
    pub fn distance(&self, other: &Self) -> f64 {
        if same_measure(self, other).is_err() {
            return f64::INFINITY;
        }
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn same_measure(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> Result<()> {
    if a.norm == b.norm {
        Ok(())
    } else {
        Err(Error::MeasureMismatch)
    }
}

/// `(f*g)(x) = ∫_G f(y) g(y⁻¹x) dy`.
pub fn convolve(f: &GroupAlgebraElement, g: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    same_measure(f, g)?;
    let grp = &f.group;
    let n = grp.order();
    let mut out = vec![ZERO; n];
    for (y, &fy) in f.coeffs.iter().enumerate() {
        if fy == ZERO {
            continue;
        }
        // x = y z runs over G as z does
        for (z, &gz) in g.coeffs.iter().enumerate() {
            out[grp.mul(y, z)] += fy * gz;
        }
    }
    let w = f.weight();
    Ok(GroupAlgebraElement { coeffs: out.into_iter().map(|z| z * w).collect(), ..f.clone() })
}

fn check_on_norm(a: &GroupAlgebraElement, f: &GroupAlgebraElement) -> Result<()> {
    if **a.group() != **f.norm.as_group() || !a.norm.is_whole() {
        return Err(Error::MeasureMismatch);
    }
    Ok(())
}

/// `(α*f)(x) = ∫_K α(k) f(k⁻¹x) dk` for `α` on `K = f`'s normalising subgroup.
pub fn mixed_convolve_left(a: &GroupAlgebraElement, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    check_on_norm(a, f)?;
    let g = &f.group;
    let k = &f.norm;
    let mut out = vec![ZERO; g.order()];
    for (x, slot) in out.iter_mut().enumerate() {
        let mut s = ZERO;
        for (i, &kk) in k.elements().iter().enumerate() {
            s += a.coeffs[i] * f.coeffs[g.mul(g.inv(kk), x)];
        }
        *slot = s / k.order() as f64;
    }
    Ok(GroupAlgebraElement { coeffs: out, ..f.clone() })
}

/// `(f*α)(x) = ∫_K f(xk) α(k⁻¹) dk`.
pub fn mixed_convolve_right(f: &GroupAlgebraElement, a: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    check_on_norm(a, f)?;
    let g = &f.group;
    let k = &f.norm;
    let kg = k.as_group();
    let mut out = vec![ZERO; g.order()];
    for (x, slot) in out.iter_mut().enumerate() {
        let mut s = ZERO;
        for (i, &kk) in k.elements().iter().enumerate() {
            s += f.coeffs[g.mul(x, kk)] * a.coeffs[kg.inv(i)];
        }
        *slot = s / k.order() as f64;
    }
    Ok(GroupAlgebraElement { coeffs: out, ..f.clone() })
}

/// Extends a function on `K` by zero to `G` (measure normalised by `K`).
pub fn extend_by_zero(a: &GroupAlgebraElement, k: &Subgroup) -> Result<GroupAlgebraElement> {
    if **a.group() != **k.as_group() || !a.norm.is_whole() {
        return Err(Error::MeasureMismatch);
    }
    let mut coeffs = vec![ZERO; k.parent().order()];
    for (i, &x) in k.elements().iter().enumerate() {
        coeffs[x] = a.coeffs[i];
    }
    GroupAlgebraElement::new(k, coeffs)
}

/// `f*(x) = Δ(x⁻¹) conj(f(x⁻¹))`.
pub fn involution(f: &GroupAlgebraElement) -> GroupAlgebraElement {
    let g = &f.group;
    let coeffs = (0..g.order())
        .map(|x| f.coeffs[g.inv(x)].conj() * MODULAR_FUNCTION)
        .collect();
    GroupAlgebraElement { coeffs, ..f.clone() }
}

/// `e_τ(k) = dim τ · conj(tr τ(k))` as a function on `K`.
pub fn e_tau(k: &Subgroup, tau: &UnitaryRep) -> Result<GroupAlgebraElement> {
    if **tau.group() != **k.as_group() {
        return Err(Error::Dimension("τ is not a representation of K".into()));
    }
    if !is_irreducible(tau) {
        return Err(Error::TauNotIrreducible(tau.label().to_string()));
    }
    let d = tau.dim() as f64;
    GroupAlgebraElement::on_subgroup(k, tau.matrices().iter().map(|m| trace(m).conj() * d).collect())
}

/// `e_F = Σ_{τ∈F} e_τ`.
pub fn e_f(k: &Subgroup, taus: &[UnitaryRep]) -> Result<GroupAlgebraElement> {
    for (i, a) in taus.iter().enumerate() {
        if taus[..i].iter().any(|b| are_equivalent(a, b)) {
            return Err(Error::DuplicateTau(a.label().to_string()));
        }
    }
    let mut acc = GroupAlgebraElement::zero(&Subgroup::whole(k.as_group()));
    for tau in taus {
        acc = acc.add(&e_tau(k, tau)?)?;
    }
    Ok(acc)
}

/// `π(f) = ∫_G f(x) π(x) dx`.
pub fn pi_of(f: &GroupAlgebraElement, p: &UnitaryRep) -> Result<ComplexMatrix> {
    if **f.group() != **p.group() {
        return Err(Error::MeasureMismatch);
    }
    let mut out = ComplexMatrix::zeros(p.dim(), p.dim());
    for (x, &c) in f.coeffs.iter().enumerate() {
        if c != ZERO {
            out += p.matrix(x) * c;
        }
    }
    Ok(out * c64::new(f.weight(), 0.0))
}

/// `π(h) = ∫_K h(k) π(k) dk` for `h` on `K ⊂ G`, `p` a representation of `G`.
pub fn pi_of_subgroup(h: &GroupAlgebraElement, p: &UnitaryRep, k: &Subgroup) -> Result<ComplexMatrix> {
    if **k.parent() != **p.group() {
        return Err(Error::MeasureMismatch);
    }
    pi_of(&extend_by_zero(h, k)?, p)
}

/// Dimension of the span of the double translates `x ↦ f(k₁ x k₂)`.
/// For a finite group this is always finite; returns `(true, dim)`.
pub fn is_k_finite(f: &GroupAlgebraElement, k: &Subgroup) -> (bool, usize) {
    let g = &f.group;
    let n = g.order();
    let mut cols = Vec::with_capacity(k.order() * k.order());
    for &k1 in k.elements() {
        for &k2 in k.elements() {
            cols.push(ComplexMatrix::from_fn(n, 1, |x, _| f.coeffs[g.mul(g.mul(k1, x), k2)]));
        }
    }
    let m = numerics::hcat(&cols, n);
    let dim = numerics::rank(&m, Tolerances::default().nullspace);
    (true, dim)
}

// ---------------------------------------------------------------------------
// Sandwich algebras acting on isotypes

/// The image of `C_F` acting on the isotype `V_π(F)`.
#[derive(Debug, Clone)]
pub struct HeckeSubalgebraImage {
    pub f_labels: Vec<String>,
    pub host_label: String,
    pub isotype: Isotype,
    /// `Q† π(e_F * |K|δ_x * e_F) Q` for every `x ∈ G`, in element order.
    pub generators: Vec<ComplexMatrix>,
    /// Trace-orthonormal basis of the span of `generators`.
    pub action_basis: Vec<ComplexMatrix>,
}

impl HeckeSubalgebraImage {
    pub fn module_dim(&self) -> usize {
        self.isotype.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.isotype.is_zero()
    }

    pub fn span_dim(&self) -> usize {
        self.action_basis.len()
    }

    /// Largest distance of a basis product `A_i A_j` from the span.
    pub fn product_closure_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in &self.action_basis {
            for b in &self.action_basis {
                worst = worst.max(distance_from_span(&(a * b), &self.action_basis));
            }
        }
        worst
    }

    /// Largest distance of `A_i†` from the span.
    pub fn adjoint_closure_residual(&self) -> f64 {
        self.action_basis
            .iter()
            .map(|a| distance_from_span(&a.adjoint(), &self.action_basis))
            .fold(0.0, f64::max)
    }
}

/// Frobenius distance from the span of a trace-orthonormal family.
pub fn distance_from_span(m: &ComplexMatrix, basis: &[ComplexMatrix]) -> f64 {
    let mut r = m.clone();
    for b in basis {
        let c = trace(&(b.adjoint() * &r));
        r -= b * c;
    }
    r.norm()
}

/// Trace-orthonormal basis of the span of a family of equally sized matrices.
pub fn matrix_span(ms: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
    let Some(first) = ms.first() else { return Vec::new() };
    let (r, c) = first.shape();
    if r * c == 0 {
        return Vec::new();
    }
    let cols: Vec<ComplexMatrix> = ms.iter().map(vectorize).collect();
    let q = orthonormalize(&numerics::hcat(&cols, r * c), Tolerances::default().nullspace);
    q.column_iter().map(|v| numerics::unvectorize(v.as_slice(), r, c)).collect()
}

/// Builds `π(C_F)` on `V_π(F)`. A zero isotype yields the zero algebra
/// (check [`HeckeSubalgebraImage::is_zero`]).
pub fn c_f_image(p: &UnitaryRep, k: &Subgroup, taus: &[UnitaryRep]) -> Result<HeckeSubalgebraImage> {
    let iso = isotype(p, k, taus)?;
    let q = &iso.embedding;
    let g = p.group();
    let e = e_f(k, taus)?;
    let unit_scale = c64::new(k.order() as f64, 0.0);
    let mut generators = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let point = GroupAlgebraElement::delta(k, x).scale(unit_scale);
        let sandwich = mixed_convolve_right(&mixed_convolve_left(&e, &point)?, &e)?;
        generators.push(q.adjoint() * pi_of(&sandwich, p)? * q);
    }
    let action_basis = matrix_span(&generators);
    Ok(HeckeSubalgebraImage {
        f_labels: taus.iter().map(|t| t.label().to_string()).collect(),
        host_label: p.label().to_string(),
        isotype: iso,
        generators,
        action_basis,
    })
}

/// Orthonormal basis of the matrices commuting with every element of `algebra`.
pub fn commutant_of(algebra: &[ComplexMatrix], n: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(n, n);
    let system: Vec<ComplexMatrix> = algebra.iter().map(|a| kron(&id, a) - kron(&a.transpose(), &id)).collect();
    let scale = algebra.iter().map(|a| a.norm()).fold(0.0, f64::max);
    common_nullspace_with_floor(&system, n * n, Tolerances::default().nullspace, scale)
}

/// The module `V_π(F)` is irreducible under `C_F` iff its commutant is 1-dimensional.
pub fn cf_module_irreducible(img: &HeckeSubalgebraImage) -> Result<bool> {
    if img.is_zero() {
        return Err(Error::EmptyIsotype);
    }
    Ok(commutant_of(&img.action_basis, img.module_dim()).ncols() == 1)
}

/// Whether an invertible `X` with `X a_x = b_x X` exists for the generators
/// matched by group element.
pub fn cf_modules_isomorphic(a: &HeckeSubalgebraImage, b: &HeckeSubalgebraImage) -> bool {
    if a.generators.len() != b.generators.len() || a.module_dim() != b.module_dim() {
        return false;
    }
    let n = a.module_dim();
    if n == 0 {
        return true;
    }
    let id = ComplexMatrix::identity(n, n);
    let system: Vec<ComplexMatrix> = a
        .generators
        .iter()
        .zip(&b.generators)
        .map(|(ax, bx)| kron(&ax.transpose(), &id) - kron(&id, bx))
        .collect();
    let scale = a.generators.iter().chain(&b.generators).map(|m| m.norm()).fold(0.0, f64::max);
    let null = common_nullspace_with_floor(&system, n * n, Tolerances::default().nullspace, scale);
    if null.ncols() == 0 {
        return false;
    }
    let mut rng = rng_from_seed(0);
    let coeffs = numerics::random_complex(&mut rng, null.ncols(), 1);
    let x = numerics::unvectorize((&null * coeffs).as_slice(), n, n);
    let sv = x.svd(false, false).singular_values;
    sv.min() > Tolerances::default().nullspace * sv.max()
}

/// The action spans all of `End(V_π(F))`.
pub fn wedderburn_surjectivity_check(img: &HeckeSubalgebraImage) -> Result<bool> {
    if img.is_zero() {
        return Err(Error::EmptyIsotype);
    }
    if !cf_module_irreducible(img)? {
        return Err(Error::Invalid("module is not irreducible".into()));
    }
    let n = img.module_dim();
    Ok(img.span_dim() == n * n)
}

/// An irreducible `C_F`-submodule of `V_π(F)`, as host-space columns.
///
/// Splits with a seeded random Hermitian element of the module's commutant.
pub fn irreducible_submodule(img: &HeckeSubalgebraImage, seed: u64) -> Result<ComplexMatrix> {
    if img.is_zero() {
        return Err(Error::EmptyIsotype);
    }
    let tol = Tolerances::default();
    let mut basis = ComplexMatrix::identity(img.module_dim(), img.module_dim());
    for attempt in 0..=repr::MAX_RETRIES {
        let n = basis.ncols();
        let restricted: Vec<ComplexMatrix> =
            img.action_basis.iter().map(|a| basis.adjoint() * a * &basis).collect();
        let comm = commutant_of(&restricted, n);
        if comm.ncols() == 1 {
            return Ok(&img.isotype.embedding * basis);
        }
        let mut rng = rng_from_seed(numerics::derive_seed(seed, attempt as u64));
        let coeffs = numerics::random_complex(&mut rng, comm.ncols(), 1);
        let x = numerics::unvectorize((&comm * coeffs).as_slice(), n, n);
        let h = (&x + x.adjoint()) * c64::new(0.5, 0.0);
        let eig = numerics::hermitian_eigen(&h, tol.cluster)?;
        if eig.num_clusters() > 1 {
            basis = &basis * &eig.eigenvector_blocks[0];
        }
    }
    Err(Error::Convergence { dim: basis.ncols(), attempts: repr::MAX_RETRIES + 1 })
}

/// A sub-representation together with its embedding into the host.
#[derive(Debug, Clone)]
pub struct SubRep {
    pub embedding: ComplexMatrix,
    pub rep: UnitaryRep,
}

/// Smallest invariant subspace containing the columns of `m`.
pub fn generated_subrep(host: &UnitaryRep, m: &ComplexMatrix) -> Result<SubRep> {
    let tol = Tolerances::default().nullspace;
    let mut span = orthonormalize(m, tol);
    if span.ncols() == 0 {
        return Err(Error::Invalid("generating block is zero".into()));
    }
    let gens = host.group().generators().to_vec();
    loop {
        let mut blocks = vec![span.clone()];
        blocks.extend(gens.iter().map(|&g| host.matrix(g) * &span));
        let next = orthonormalize(&numerics::hcat(&blocks, host.dim()), tol);
        if next.ncols() == span.ncols() {
            break;
        }
        span = next;
    }
    let rep = host.compress(&span).with_label(format!("{}|generated", host.label()));
    Ok(SubRep { embedding: span, rep })
}

/// `ψ(f⊗g)(x, y) = f(x) g(y)` on `G×H`, normalised by `K×L`.
pub fn outer_tensor(
    f: &GroupAlgebraElement,
    g: &GroupAlgebraElement,
    product: &GroupRef,
) -> Result<GroupAlgebraElement> {
    let h_order = g.group.order();
    if product.order() != f.group.order() * h_order {
        return Err(Error::Dimension("product group order mismatch".into()));
    }
    let kl = product_subgroup(product, h_order, &f.norm, &g.norm)?;
    outer_tensor_in(f, g, &kl)
}

/// [`outer_tensor`] with the normalising `K×L` already built.
fn outer_tensor_in(f: &GroupAlgebraElement, g: &GroupAlgebraElement, kl: &Subgroup) -> Result<GroupAlgebraElement> {
    let h_order = g.group.order();
    let coeffs = (0..kl.parent().order()).map(|x| f.coeffs[x / h_order] * g.coeffs[x % h_order]).collect();
    GroupAlgebraElement::new(kl, coeffs)
}

/// Outcome of comparing the `C_E ⊗ C_F` and `C_{E×F}` actions on `V_η(E×F)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OuterTensorSpanReport {
    pub isotype_dim: usize,
    pub tensor_span_dim: usize,
    pub full_span_dim: usize,
    pub joint_span_dim: usize,
    pub tensor_commutant_dim: usize,
}

impl OuterTensorSpanReport {
    pub fn spans_equal(&self) -> bool {
        self.tensor_span_dim == self.full_span_dim && self.joint_span_dim == self.full_span_dim
    }

    pub fn holds(&self) -> bool {
        self.spans_equal() && self.tensor_commutant_dim == 1
    }
}

/// Compares the span of the outer tensors `ψ(e_E δ_x e_E ⊗ e_F δ_y e_F)` with
/// the full `C_{E×F}` action on `V_η(E×F)`.
///
/// `eta` must be an irreducible representation of `product = G×H`; `k ⊂ G`,
/// `l ⊂ H`; `e_set` and `f_set` are irreducibles of `K` and `L`.
pub fn outer_tensor_span_check(
    eta: &UnitaryRep,
    k: &Subgroup,
    l: &Subgroup,
    e_set: &[UnitaryRep],
    f_set: &[UnitaryRep],
) -> Result<OuterTensorSpanReport> {
    if !is_irreducible(eta) {
        return Err(Error::NotIrreducible(eta.label().to_string()));
    }
    let product = eta.group().clone();
    let (g, h) = (k.parent().clone(), l.parent().clone());
    let kl = product_subgroup(&product, h.order(), k, l)?;
    let kl_group = kl.as_group().clone();
    let mut taus = Vec::new();
    for a in e_set {
        for b in f_set {
            taus.push(repr::tensor_product_rep_in(a, b, &kl_group)?);
        }
    }
    let full = c_f_image(eta, &kl, &taus)?;
    if full.is_zero() {
        return Err(Error::EmptyIsotype);
    }
    let q = &full.isotype.embedding;

    // ψ(a⊗b) = ψ(a⊗|L|δ_e) * ψ(|K|δ_e⊗b), and both factors commute with the
    // isotypic projection, so the tensor images are products of the two
    // one-sided sandwich images.
    let e_e = e_f(k, e_set)?;
    let e_ff = e_f(l, f_set)?;
    let sandwich = |s: &Subgroup, e: &GroupAlgebraElement, x: usize| -> Result<GroupAlgebraElement> {
        let point = GroupAlgebraElement::delta(s, x).scale(c64::new(s.order() as f64, 0.0));
        mixed_convolve_right(&mixed_convolve_left(e, &point)?, e)
    };
    let (unit_k, unit_l) = (GroupAlgebraElement::unit(k), GroupAlgebraElement::unit(l));
    let mut left = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let psi = outer_tensor_in(&sandwich(k, &e_e, x)?, &unit_l, &kl)?;
        left.push(q.adjoint() * pi_of(&psi, eta)? * q);
    }
    let mut right = Vec::with_capacity(h.order());
    for y in 0..h.order() {
        let psi = outer_tensor_in(&unit_k, &sandwich(l, &e_ff, y)?, &kl)?;
        right.push(q.adjoint() * pi_of(&psi, eta)? * q);
    }
    let (left, right) = (matrix_span(&left), matrix_span(&right));
    let mut tensor_images = Vec::with_capacity(left.len() * right.len());
    for a in &left {
        for b in &right {
            tensor_images.push(a * b);
        }
    }
    let tensor_span = matrix_span(&tensor_images);
    let mut joint = tensor_images;
    joint.extend(full.action_basis.iter().cloned());
    let n = full.module_dim();
    Ok(OuterTensorSpanReport {
        isotype_dim: n,
        tensor_span_dim: tensor_span.len(),
        full_span_dim: full.span_dim(),
        joint_span_dim: matrix_span(&joint).len(),
        tensor_commutant_dim: commutant_of(&tensor_span, n).ncols(),
    })
}

/// Shared-group helper for building `K×L` subgroups of a fresh product.
pub fn product_group(g: &GroupRef, h: &GroupRef) -> GroupRef {
    Arc::new(crate::group::direct_product(g, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_group_spec, subgroup_closure};
    use crate::repr::{isotype_projection, regular_representation, unitary_dual};

    fn grp(spec: &str) -> GroupRef {
        Arc::new(parse_group_spec(spec).unwrap())
    }

    #[test]
    fn unit_and_idempotents() {
        let s3 = grp("S3");
        let k = subgroup_closure(&s3, &[1]).unwrap();
        let mut rng = rng_from_seed(1);
        let f = GroupAlgebraElement::random(&k, &mut rng);
        let u = GroupAlgebraElement::unit(&k);
        assert!(convolve(&f, &u).unwrap().distance(&f) < 1e-14);
        assert!(convolve(&u, &f).unwrap().distance(&f) < 1e-14);

        let whole = Subgroup::whole(&s3);
        let cat = unitary_dual(&s3, 3).unwrap();
        for (i, a) in cat.irreps.iter().enumerate() {
            let ea = e_tau(&whole, a).unwrap();
            assert!((ea.get(0) - c64::new((a.dim() * a.dim()) as f64, 0.0)).norm() < 1e-10);
            for (j, b) in cat.irreps.iter().enumerate() {
                let eb = e_tau(&whole, b).unwrap();
                let prod = convolve(&ea, &eb).unwrap();
                let target = if i == j { ea.clone() } else { GroupAlgebraElement::zero(&Subgroup::whole(&s3)) };
                assert!(prod.distance(&target) < 1e-10);
            }
        }
    }

    #[test]
    fn measure_mismatch() {
        let s3 = grp("S3");
        let k = subgroup_closure(&s3, &[1]).unwrap();
        let a = GroupAlgebraElement::unit(&k);
        let b = GroupAlgebraElement::unit(&Subgroup::whole(&s3));
        assert!(matches!(convolve(&a, &b), Err(Error::MeasureMismatch)));
    }

    #[test]
    fn e_tau_values() {
        let s3 = grp("S3");
        let whole = Subgroup::whole(&s3);
        let triv = UnitaryRep::trivial(&s3);
        let e = e_tau(&whole, &triv).unwrap();
        assert!(e.coeffs().iter().all(|z| (z - ONE).norm() < 1e-15));
        let cat = unitary_dual(&s3, 3).unwrap();
        // sign: +1 on even permutations (orders 1, 3), -1 on transpositions
        let sign = e_tau(&whole, &cat.irreps[1]).unwrap();
        for x in 0..6 {
            let expect = if s3.element_order(x) == 2 { -1.0 } else { 1.0 };
            assert!((sign.get(x) - c64::new(expect, 0.0)).norm() < 1e-10);
        }
        assert!(matches!(
            e_tau(&whole, &regular_representation(&s3)),
            Err(Error::TauNotIrreducible(_))
        ));
    }

    #[test]
    fn e_f_sums() {
        let c4 = grp("C4");
        let whole = Subgroup::whole(&c4);
        let cat = unitary_dual(&c4, 3).unwrap();
        let all = e_f(&whole, &cat.irreps).unwrap();
        let unit = GroupAlgebraElement::unit(&whole);
        assert!(all.distance(&unit) < 1e-10);
        assert!(e_f(&whole, &[]).unwrap().max_abs() == 0.0);
        assert!(matches!(
            e_f(&whole, &[cat.irreps[0].clone(), cat.irreps[0].clone()]),
            Err(Error::DuplicateTau(_))
        ));
        let ef = e_f(&whole, &cat.irreps[1..3]).unwrap();
        assert!(convolve(&ef, &ef).unwrap().distance(&ef) < 1e-10);
        assert!(involution(&ef).distance(&ef) < 1e-12);
    }

    #[test]
    fn mixed_matches_extension() {
        let d4 = grp("D4");
        let k = subgroup_closure(&d4, &[1]).unwrap();
        let mut rng = rng_from_seed(5);
        let f = GroupAlgebraElement::random(&k, &mut rng);
        let a = GroupAlgebraElement::random(&Subgroup::whole(k.as_group()), &mut rng);
        let ext = extend_by_zero(&a, &k).unwrap();
        let l1 = mixed_convolve_left(&a, &f).unwrap();
        assert!(l1.distance(&convolve(&ext, &f).unwrap()) < 1e-12);
        let r1 = mixed_convolve_right(&f, &a).unwrap();
        assert!(r1.distance(&convolve(&f, &ext).unwrap()) < 1e-12);
        let unit_k = GroupAlgebraElement::unit(&Subgroup::whole(k.as_group()));
        assert!(mixed_convolve_left(&unit_k, &f).unwrap().distance(&f) < 1e-14);
    }

    #[test]
    fn involution_basics() {
        let s3 = grp("S3");
        let whole = Subgroup::whole(&s3);
        let d = GroupAlgebraElement::delta(&whole, 0);
        assert!(involution(&d).distance(&d) == 0.0);
        let mut rng = rng_from_seed(2);
        let f = GroupAlgebraElement::random(&whole, &mut rng);
        let g = GroupAlgebraElement::random(&whole, &mut rng);
        assert!(involution(&involution(&f)).distance(&f) == 0.0);
        let lhs = involution(&convolve(&f, &g).unwrap());
        let rhs = convolve(&involution(&g), &involution(&f)).unwrap();
        assert!(lhs.distance(&rhs) < 1e-12);
    }

    #[test]
    fn pi_of_properties() {
        let s3 = grp("S3");
        let k = subgroup_closure(&s3, &[1]).unwrap();
        let reg = regular_representation(&s3);
        let u = GroupAlgebraElement::unit(&k);
        assert!((pi_of(&u, &reg).unwrap() - ComplexMatrix::identity(6, 6)).norm() < 1e-14);
        let mut rng = rng_from_seed(8);
        let f = GroupAlgebraElement::random(&k, &mut rng);
        let g = GroupAlgebraElement::random(&k, &mut rng);
        let fg = pi_of(&convolve(&f, &g).unwrap(), &reg).unwrap();
        assert!((fg - pi_of(&f, &reg).unwrap() * pi_of(&g, &reg).unwrap()).norm() < 1e-10);
        let fs = pi_of(&involution(&f), &reg).unwrap();
        assert!((fs - pi_of(&f, &reg).unwrap().adjoint()).norm() < 1e-10);

        let kcat = unitary_dual(k.as_group(), 1).unwrap();
        let ef = e_f(&k, &kcat.irreps[1..]).unwrap();
        let pf = pi_of_subgroup(&ef, &reg, &k).unwrap();
        let direct = isotype_projection(&reg, &k, &kcat.irreps[1]).unwrap();
        assert!((pf - direct).norm() < 1e-10);
    }

    #[test]
    fn k_finiteness() {
        let s3 = grp("S3");
        let k = subgroup_closure(&s3, &[1]).unwrap();
        let c = GroupAlgebraElement::from_fn(&k, |_| ONE);
        assert_eq!(is_k_finite(&c, &k), (true, 1));
        // δ_e: translates are δ_{k1⁻¹ k2⁻¹}, i.e. the indicator functions of K's elements
        let d = GroupAlgebraElement::delta(&k, 0);
        assert_eq!(is_k_finite(&d, &k).1, 2);
        let whole = Subgroup::whole(&s3);
        assert_eq!(is_k_finite(&GroupAlgebraElement::delta(&whole, 0), &whole).1, 6);
    }

    #[test]
    fn sandwich_images() {
        let s3 = grp("S3");
        let whole = Subgroup::whole(&s3);
        let cat = unitary_dual(&s3, 2).unwrap();
        let std2 = &cat.irreps[2];
        let img = c_f_image(std2, &whole, &cat.irreps).unwrap();
        assert_eq!(img.span_dim(), 4);
        assert!(cf_module_irreducible(&img).unwrap());
        assert!(wedderburn_surjectivity_check(&img).unwrap());
        assert!(img.product_closure_residual() < 1e-8);
        assert!(img.adjoint_closure_residual() < 1e-8);

        let img = c_f_image(std2, &whole, &cat.irreps[2..]).unwrap();
        assert_eq!(img.span_dim(), 4);

        let zero = c_f_image(std2, &whole, &cat.irreps[..1]).unwrap();
        assert!(zero.is_zero());
        assert!(matches!(cf_module_irreducible(&zero), Err(Error::EmptyIsotype)));

        let k = subgroup_closure(&s3, &[1]).unwrap();
        let kcat = unitary_dual(k.as_group(), 1).unwrap();
        for p in &cat.irreps {
            let img = c_f_image(p, &k, &kcat.irreps[..1]).unwrap();
            if !img.is_zero() {
                assert!(cf_module_irreducible(&img).unwrap());
            }
        }
        let doubled = std2.direct_sum(std2).unwrap();
        let img = c_f_image(&doubled, &k, &kcat.irreps[..1]).unwrap();
        assert_eq!(img.module_dim(), 2);
        assert!(!cf_module_irreducible(&img).unwrap());
    }

    #[test]
    fn sandwich_isomorphism() {
        let s3 = grp("S3");
        let k = subgroup_closure(&s3, &[1]).unwrap();
        let kcat = unitary_dual(k.as_group(), 1).unwrap();
        let cat = unitary_dual(&s3, 2).unwrap();
        let std2 = &cat.irreps[2];
        let mut rng = rng_from_seed(4);
        let conj = std2.conjugate_by(&numerics::random_unitary(&mut rng, 2));
        for f in [&kcat.irreps[..1], &kcat.irreps[1..], &kcat.irreps[..]] {
            let a = c_f_image(std2, &k, f).unwrap();
            assert!(cf_modules_isomorphic(&a, &a));
            let b = c_f_image(&conj, &k, f).unwrap();
            assert!(cf_modules_isomorphic(&a, &b));
        }
        // trivial vs sign: both have 1-dim V(F) for F = K̂ but differ
        let whole = Subgroup::whole(&s3);
        let wcat = unitary_dual(&s3, 1).unwrap();
        let a = c_f_image(&cat.irreps[0], &whole, &wcat.irreps[..2]).unwrap();
        let b = c_f_image(&cat.irreps[1], &whole, &wcat.irreps[..2]).unwrap();
        assert_eq!((a.module_dim(), b.module_dim()), (1, 1));
        assert!(!cf_modules_isomorphic(&a, &b));
    }

    #[test]
    fn generated_subreps() {
        let s3 = grp("S3");
        let cat = unitary_dual(&s3, 2).unwrap();
        let reg = regular_representation(&s3);
        let full = generated_subrep(&reg, &ComplexMatrix::identity(6, 6)).unwrap();
        assert_eq!(full.rep.dim(), 6);

        let k = subgroup_closure(&s3, &[1]).unwrap();
        let kcat = unitary_dual(k.as_group(), 1).unwrap();
        let host = cat.irreps[2].direct_sum(&cat.irreps[2]).unwrap().direct_sum(&cat.irreps[0]).unwrap();
        let img = c_f_image(&host, &k, &kcat.irreps[..1]).unwrap();
        let m = irreducible_submodule(&img, 3).unwrap();
        let sub = generated_subrep(&host, &m).unwrap();
        assert!(is_irreducible(&sub.rep));

        // invariant input: span unchanged
        let iso = isotype(&reg, &Subgroup::whole(&s3), &cat.irreps[2..]).unwrap();
        let sub = generated_subrep(&reg, &iso.embedding).unwrap();
        assert_eq!(sub.embedding.ncols(), 4);
    }

    #[test]
    fn outer_tensors() {
        let g = grp("S3");
        let h = grp("C4");
        let product = product_group(&g, &h);
        let (kg, lh) = (Subgroup::whole(&g), Subgroup::whole(&h));
        let d = outer_tensor(&GroupAlgebraElement::delta(&kg, 0), &GroupAlgebraElement::delta(&lh, 0), &product)
            .unwrap();
        assert!(d.distance(&GroupAlgebraElement::delta(&Subgroup::whole(&product), 0)) == 0.0);

        let mut rng = rng_from_seed(12);
        let k = subgroup_closure(&g, &[1]).unwrap();
        let l = subgroup_closure(&h, &[2]).unwrap();
        let f1 = GroupAlgebraElement::random(&k, &mut rng);
        let f2 = GroupAlgebraElement::random(&k, &mut rng);
        let g1 = GroupAlgebraElement::random(&l, &mut rng);
        let g2 = GroupAlgebraElement::random(&l, &mut rng);
        let lhs = convolve(&outer_tensor(&f1, &g1, &product).unwrap(), &outer_tensor(&f2, &g2, &product).unwrap())
            .unwrap();
        let rhs = outer_tensor(&convolve(&f1, &f2).unwrap(), &convolve(&g1, &g2).unwrap(), &product).unwrap();
        assert!(lhs.distance(&rhs) < 1e-10);
    }

    #[test]
    fn outer_tensor_spans_small() {
        let g = grp("C2");
        let h = grp("C2");
        let product = product_group(&g, &h);
        let cg = unitary_dual(&g, 1).unwrap();
        let ch = unitary_dual(&h, 1).unwrap();
        let eta = repr::tensor_product_rep_in(&cg.irreps[1], &ch.irreps[1], &product).unwrap();
        let (k, l) = (Subgroup::whole(&g), Subgroup::whole(&h));
        let rep = outer_tensor_span_check(&eta, &k, &l, &cg.irreps[1..], &ch.irreps[1..]).unwrap();
        assert_eq!((rep.tensor_span_dim, rep.full_span_dim), (1, 1));
        assert!(rep.holds());
        let reducible = regular_representation(&product);
        assert!(outer_tensor_span_check(&reducible, &k, &l, &cg.irreps, &ch.irreps).is_err());
    }
}
