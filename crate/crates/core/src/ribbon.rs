//! Equivariant R-matrices and twists as module-level checks, and their
//! transport to the strictification.
//!
//! Modules are right modules, so the braiding `c(v⊗w) = w.R₂ ⊗ v.R₁` sends
//! `(V⊗W).Δ(1)` into `(W⊗V).Δ(1)` when `R = Δ(1)·R·Δᵒᵖ(1)`.

use std::sync::Arc;

use crate::action::GHopfAlgebra;
use crate::algebra::StructuredAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::module::{
    psi_iso, restrict_map, tensor_modules, theta_iso, twist_module, ModuleMorphism, ModuleRep, Subspace,
};
use crate::strict::Strictification;
use crate::tensor::SparseTensor;
use crate::verdict::{Check, Verdict};

pub mod law {
    pub const SUPPORT: &str = "support";
    pub const BRAIDING_LANDS: &str = "braiding_lands_in_target";
    pub const BRAIDING_MORPHISM: &str = "braiding_morphism";
    pub const BRAIDING_INVERTIBLE: &str = "braiding_invertible";
    pub const TWIST_MORPHISM: &str = "twist_morphism";
    pub const TWIST_INVERTIBLE: &str = "twist_invertible";
    pub const EXTRACTED_BRAIDING: &str = "extracted_braiding";
    pub const EXTRACTED_TWIST: &str = "extracted_twist";
}

/// `R ∈ A⊗A` (index `i·n + j` for `e_i⊗e_j`) and an invertible `θ ∈ A`.
#[derive(Clone, Debug)]
pub struct RibbonData {
    algebra: Arc<StructuredAlgebra>,
    r: SparseTensor,
    theta: Vector,
    theta_inv: Vector,
}

impl RibbonData {
    pub fn new(algebra: Arc<StructuredAlgebra>, r: Vector, theta: Vector) -> Result<Self> {
        let n = algebra.dim();
        if r.len() != n * n || theta.len() != n {
            return Err(Error::ShapeMismatch(format!("ribbon data needs {} and {n} coefficients", n * n)));
        }
        if r.field() != algebra.field() || theta.field() != algebra.field() {
            return Err(Error::MixedFields);
        }
        let theta_inv = algebra.inverse_of(&theta).ok_or(Error::NonInvertibleTwist)?;
        Ok(RibbonData { r: SparseTensor::from_vector(&r), algebra, theta, theta_inv })
    }

    /// `R = 1⊗1`, `θ = 1`.
    pub fn trivial(algebra: Arc<StructuredAlgebra>) -> Result<Self> {
        let one = SparseTensor::from_vector(algebra.unit());
        let n = algebra.dim();
        let r = one.outer(&one, n).to_vector(n * n);
        let theta = algebra.unit().clone();
        Self::new(algebra, r, theta)
    }

    pub fn algebra(&self) -> &Arc<StructuredAlgebra> {
        &self.algebra
    }

    pub fn r(&self) -> &SparseTensor {
        &self.r
    }

    pub fn r_vector(&self) -> Vector {
        let n = self.algebra.dim();
        self.r.to_vector(n * n)
    }

    pub fn theta(&self) -> &Vector {
        &self.theta
    }

    pub fn theta_inverse(&self) -> &Vector {
        &self.theta_inv
    }

    /// Same data with `R` replaced.
    pub fn with_r(&self, r: Vector) -> Result<Self> {
        Self::new(self.algebra.clone(), r, self.theta.clone())
    }
}

fn flip(t: &SparseTensor, n: usize) -> SparseTensor {
    let mut out = SparseTensor::zero(t.field());
    for (idx, c) in t.iter() {
        out.add_term((idx % n) * n + idx / n, c);
    }
    out
}

/// `x ↦ Δ(1)·x·Δᵒᵖ(1)` on `A⊗A`.
pub fn support_projection(a: &StructuredAlgebra, x: &SparseTensor) -> Result<SparseTensor> {
    let d1 = a.delta_one()?;
    let d1op = flip(&d1, a.dim());
    Ok(a.tensor_mul(2, &a.tensor_mul(2, &d1, x), &d1op))
}

pub fn check_support(a: &StructuredAlgebra, r: &SparseTensor) -> Result<bool> {
    Ok(support_projection(a, r)? == *r)
}

/// `ρ_V(1_g) = id` for the degree-`g` part `1_g` of the unit.
pub fn check_degree(gh: &GHopfAlgebra, v: &ModuleRep, g: usize) -> Result<()> {
    let one_g = gh.grading().project(gh.algebra().unit(), g);
    if v.action_of(&one_g).is_identity() {
        Ok(())
    } else {
        Err(Error::ModuleNotHomogeneous(g))
    }
}

/// `v⊗w ↦ Σ w.R₂ ⊗ v.R₁` on the full tensor products.
pub fn braiding_matrix(v: &ModuleRep, w: &ModuleRep, r: &SparseTensor) -> Matrix {
    let n = v.algebra().dim();
    let (dv, dw) = (v.dim(), w.dim());
    let mut m = Matrix::zeros(v.field(), dv * dw, dv * dw);
    for (idx, c) in r.iter() {
        let (a, b) = (v.rho(idx / n), w.rho(idx % n));
        for x in 0..dv {
            for xp in 0..dv {
                let s = a.get(x, xp);
                if s.is_zero() {
                    continue;
                }
                let cs = c * s;
                for y in 0..dw {
                    for yp in 0..dw {
                        let t = b.get(y, yp);
                        if !t.is_zero() {
                            m.add_at(x * dw + y, yp * dv + xp, &(&cs * t));
                        }
                    }
                }
            }
        }
    }
    m
}

/// `c: V⊗̄W → ᵍW⊗̄V` for `V` of degree `g` lands in the target, intertwines
/// and is invertible.
pub fn braiding_morphism_check(gh: &GHopfAlgebra, v: &ModuleRep, g: usize, w: &ModuleRep, ribbon: &RibbonData) -> Result<Vec<Check>> {
    check_degree(gh, v, g)?;
    let src = tensor_modules(v, w)?;
    let tgt = tensor_modules(&twist_module(gh.action(), g, w)?, v)?;
    let big = braiding_matrix(v, w, ribbon.r());
    let Ok(mat) = restrict_map(&src.carrier, &big, &tgt.carrier) else {
        return Ok(vec![Check::fail(law::BRAIDING_LANDS, vec![])]);
    };
    let mor = ModuleMorphism::new(src.module, tgt.module, mat)?;
    let mut m = mor.check();
    m.name = law::BRAIDING_MORPHISM.into();
    let inv = if mor.is_invertible() { Check::pass(law::BRAIDING_INVERTIBLE) } else { Check::fail(law::BRAIDING_INVERTIBLE, vec![]) };
    Ok(vec![Check::pass(law::BRAIDING_LANDS), m, inv])
}

/// `v ↦ v.θ⁻¹` from `V` of degree `g` to `ᵍV` is a module morphism.
pub fn twist_morphism_check(gh: &GHopfAlgebra, v: &ModuleRep, g: usize, ribbon: &RibbonData) -> Result<Check> {
    check_degree(gh, v, g)?;
    let target = twist_module(gh.action(), g, v)?;
    let mor = ModuleMorphism::new(v.clone(), target, v.action_of(ribbon.theta_inverse()))?;
    let mut c = mor.check();
    c.name = law::TWIST_MORPHISM.into();
    Ok(c)
}

/// Support plus braiding and twist checks over a corpus of homogeneous
/// modules `(V, degree)`, all ordered pairs.
pub fn check_ribbon(gh: &GHopfAlgebra, ribbon: &RibbonData, corpus: &[(ModuleRep, usize)]) -> Result<Verdict> {
    let mut v = Verdict::new();
    let sup = check_support(gh.algebra(), ribbon.r())?;
    v.push(if sup { Check::pass(law::SUPPORT) } else { Check::fail(law::SUPPORT, vec![]) });
    for (i, (x, dx)) in corpus.iter().enumerate() {
        for (j, (y, _)) in corpus.iter().enumerate() {
            for mut c in braiding_morphism_check(gh, x, *dx, y, ribbon)? {
                if !c.passed {
                    c.witness = Some(vec![i, j]);
                }
                v.push(c);
            }
        }
        let mut c = twist_morphism_check(gh, x, *dx, ribbon)?;
        if !c.passed {
            c.witness = Some(vec![i]);
        }
        v.push(c);
    }
    merge_by_name(v)
}

/// One check per name, failing with the first witness if any instance failed.
fn merge_by_name(v: Verdict) -> Result<Verdict> {
    let mut out = Verdict::new();
    for c in v.checks {
        match out.checks.iter_mut().find(|o| o.name == c.name) {
            Some(o) if o.passed && !c.passed => *o = c,
            Some(_) => {}
            None => out.push(c),
        }
    }
    Ok(out)
}

/// `(f ⊗ g)(t)` with `t` indexed `p·g.rows() + q` and the output
/// `i·g.cols() + j`.
fn apply_kron(f: &Matrix, g: &Matrix, t: &SparseTensor) -> SparseTensor {
    let (nin, nout) = (g.rows(), g.cols());
    let mut out = SparseTensor::zero(t.field());
    for (idx, c) in t.iter() {
        let (p, q) = (idx / nin, idx % nin);
        for (i, a) in f.row(p).iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            let ca = c * a;
            for (j, b) in g.row(q).iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out.add_term(i * nout + j, &(&ca * b));
            }
        }
    }
    out
}

/// The braiding of strictification modules obtained by transport along
/// `Θ`, `η₂`, `F(c)` and `ψ`, for `X` of degree `d`; applied to vectors of
/// the full `X⊗Y` (which should lie in `X⊗̄Y`), with values in `Y⊗X`.
pub fn transported_braiding(
    strict: &Strictification,
    base: &RibbonData,
    x: &ModuleRep,
    d: usize,
    y: &ModuleRep,
    vectors: &[SparseTensor],
) -> Result<Vec<SparseTensor>> {
    let gn = strict.group().order();
    let tx = theta_iso(strict, x)?;
    let ty = theta_iso(strict, y)?;
    let (x1, y1) = (&tx.unit_component, &ty.unit_component);
    let (mx, my) = (x1.dim(), y1.dim());
    let c_a = braiding_matrix(x1, y1, base.r());
    let psi = psi_iso(strict, d, y1)?;
    let id_fx = Matrix::identity(strict.field(), mx * gn);
    let mut out = Vec::with_capacity(vectors.len());
    for v in vectors {
        let w1 = apply_kron(&tx.inverse, &ty.inverse, v);
        // η₂ then F(c) then η₂⁻¹
        let mut w4 = SparseTensor::zero(v.field());
        for (idx, c) in w1.iter() {
            let (l, r) = (idx / (my * gn), idx % (my * gn));
            let (m, g) = (l / gn, l % gn);
            let (n, g2) = (r / gn, r % gn);
            if g != g2 {
                continue;
            }
            for (q, s) in c_a.row(m * my + n).iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                let (n2, m2) = (q / mx, q % mx);
                w4.add_term((n2 * gn + g) * (mx * gn) + m2 * gn + g, &(c * s));
            }
        }
        let w5 = apply_kron(&psi.matrix, &id_fx, &w4);
        out.push(apply_kron(&ty.forward.matrix, &tx.forward.matrix, &w5));
    }
    Ok(out)
}

/// Transported twist `X → ᵈX` for `X` of degree `d`.
pub fn transported_twist(strict: &Strictification, base: &RibbonData, x: &ModuleRep, d: usize) -> Result<Matrix> {
    let tx = theta_iso(strict, x)?;
    let x1 = &tx.unit_component;
    let f_theta = x1.action_of(base.theta_inverse()).kron(&Matrix::identity(strict.field(), strict.group().order()));
    let psi = psi_iso(strict, d, x1)?;
    tx.inverse.try_mul(&f_theta)?.try_mul(&psi.matrix)?.try_mul(&tx.forward.matrix)
}

/// `(d, H.1_d, H.1_d as a module)`.
type Component = (usize, Subspace, ModuleRep);

/// Degree components `H.1_d` of the regular strictification module.
fn regular_components(strict: &Strictification) -> Result<(ModuleRep, Vec<Component>)> {
    let h = ModuleRep::regular(strict.algebra().clone());
    let grading = strict.output().grading();
    let unit = strict.algebra().unit();
    let mut parts = Vec::new();
    for d in 0..strict.group().order() {
        let one_d = grading.project(unit, d);
        if one_d.is_zero() {
            continue;
        }
        let sub = Subspace::span(&h.action_of(&one_d));
        let xd = h.restrict(&sub)?;
        parts.push((d, sub, xd));
    }
    Ok((h, parts))
}

/// `R^str = τ(c(Δ(1)))` and `θ^str = θ(1)⁻¹`, evaluated on the regular
/// module split into its homogeneous parts.
pub fn transfer_ribbon(strict: &Strictification, base: &RibbonData) -> Result<RibbonData> {
    if base.algebra().id() != strict.base().id() {
        return Err(Error::InvalidStrictification("ribbon data is not over the strictified algebra".into()));
    }
    let alg = strict.algebra();
    let n = alg.dim();
    let (h, parts) = regular_components(strict)?;
    let d1 = alg.delta_one()?;
    // projections H → H.1_d in coordinates
    let proj: Vec<Matrix> = parts
        .iter()
        .map(|(d, sub, _)| sub.coords_matrix(&h.action_of(&strict.output().grading().project(alg.unit(), *d))))
        .collect::<Result<_>>()?;
    let mut braided = SparseTensor::zero(alg.field());
    let mut theta_one = Vector::zeros(alg.field(), n);
    for (a, (d, sub_a, xa)) in parts.iter().enumerate() {
        for (b, (_, sub_b, xb)) in parts.iter().enumerate() {
            let comp = apply_kron(&proj[a], &proj[b], &d1);
            if comp.is_zero() {
                continue;
            }
            let img = transported_braiding(strict, base, xa, *d, xb, &[comp])?.remove(0);
            braided.add_scaled(&alg.field().one(), &apply_kron(sub_b.basis(), sub_a.basis(), &img));
        }
        let one_d = proj[a].vec_mul(alg.unit());
        let tw = transported_twist(strict, base, xa, *d)?;
        theta_one = &theta_one + &sub_a.basis().vec_mul(&tw.vec_mul(&one_d));
    }
    let theta = alg.inverse_of(&theta_one).ok_or(Error::NonInvertibleTwist)?;
    RibbonData::new(alg.clone(), flip(&braided, n).to_vector(n * n), theta)
}

/// The braiding and twist read off from `ribbon` agree with the transported
/// ones on `X` (degree `d`) and `Y`.
pub fn check_extraction(
    strict: &Strictification,
    base: &RibbonData,
    ribbon: &RibbonData,
    x: &ModuleRep,
    d: usize,
    y: &ModuleRep,
) -> Result<Vec<Check>> {
    let src = tensor_modules(x, y)?;
    let direct = braiding_matrix(x, y, ribbon.r());
    let rows: Vec<SparseTensor> = src.carrier.basis().row_vectors().iter().map(SparseTensor::from_vector).collect();
    let moved = transported_braiding(strict, base, x, d, y, &rows)?;
    let lhs = src.carrier.basis().try_mul(&direct)?;
    let bad = moved.iter().enumerate().find(|(i, t)| SparseTensor::from_vector(&lhs.row_vector(*i)) != **t).map(|(i, _)| vec![i]);
    let tw = transported_twist(strict, base, x, d)?;
    let twist_ok = tw == x.action_of(ribbon.theta_inverse());
    Ok(vec![
        Check::from_witness(law::EXTRACTED_BRAIDING, bad),
        if twist_ok { Check::pass(law::EXTRACTED_TWIST) } else { Check::fail(law::EXTRACTED_TWIST, vec![]) },
    ])
}
