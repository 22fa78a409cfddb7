//! Right modules in the row convention (`m.x = m·ρ(x)`), morphisms,
//! Hom spaces, twisting by a weak action, the comparison functor to the
//! strictification and its structure isomorphisms.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::action::WeakGAction;
use crate::algebra::{Counital, StructuredAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, Vector};
use crate::strict::Strictification;
use crate::tensor::SparseTensor;
use crate::verdict::Check;

/// A subspace given by a basis (the rows of `basis`), with fast coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    rows: SparseRows,
    pivots: Vec<usize>,
    /// Inverse of `basis` restricted to the pivot columns; `None` when that
    /// is the identity.
    inv: Option<Matrix>,
}

impl Subspace {
    /// Canonical (reduced echelon) basis of the row space of `m`.
    pub fn span(m: &Matrix) -> Self {
        Self::span_sparse(m.field(), m.cols(), (0..m.rows()).map(|i| SparseTensor::from_vector(&m.row_vector(i))))
    }

    /// [`Subspace::span`] for sparse rows of length `ambient`.
    pub fn span_sparse(field: FieldSpec, ambient: usize, rows: impl IntoIterator<Item = SparseTensor>) -> Self {
        let reduced = sparse_rref(field, rows);
        let pivots: Vec<usize> = reduced.keys().copied().collect();
        let basis_rows: Vec<Vector> = reduced.values().map(|r| r.to_vector(ambient)).collect();
        let basis = Matrix::from_row_vectors(field, &basis_rows, ambient).expect("rows have the ambient length");
        let rows = reduced.values().map(|r| r.iter().map(|(j, x)| (j, x.clone())).collect()).collect();
        Subspace { basis, rows, pivots, inv: None }
    }

    /// Keeps the given rows as the basis; they must be independent.
    pub fn with_basis(m: &Matrix) -> Result<Self> {
        let (_, pivots) = m.rref();
        if pivots.len() != m.rows() {
            return Err(Error::ShapeMismatch("basis rows are linearly dependent".into()));
        }
        let mut sub = Matrix::zeros(m.field(), m.rows(), m.rows());
        for i in 0..m.rows() {
            for (c, &p) in pivots.iter().enumerate() {
                sub.set(i, c, m.get(i, p).clone());
            }
        }
        let inv = sub.inverse()?.expect("pivot minor is invertible");
        Ok(Subspace { basis: m.clone(), rows: sparse_rows(m), pivots, inv: Some(inv) })
    }

    pub fn full(field: FieldSpec, n: usize) -> Self {
        Self::span(&Matrix::identity(field, n))
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// `c` with `c · basis = v`, or `None` when `v` is outside.
    pub fn coords(&self, v: &Vector) -> Option<Vector> {
        self.coords_sparse(&SparseTensor::from_vector(v))
    }

    fn coords_sparse(&self, v: &SparseTensor) -> Option<Vector> {
        let f = self.basis.field();
        let mut w = Vector::zeros(f, self.dim());
        for (c, &p) in self.pivots.iter().enumerate() {
            w.set(c, v.get(p));
        }
        let c = match &self.inv {
            Some(inv) => inv.vec_mul(&w),
            None => w,
        };
        let mut back = SparseTensor::zero(f);
        for (i, x) in c.nonzero() {
            for (j, y) in &self.rows[i] {
                back.add_term(*j, &(x * y));
            }
        }
        (back == *v).then_some(c)
    }

    /// Row-wise coordinates of `m`.
    pub fn coords_matrix(&self, m: &Matrix) -> Result<Matrix> {
        let mut out = Matrix::zeros(m.field(), m.rows(), self.dim());
        for i in 0..m.rows() {
            let c = self.coords(&m.row_vector(i)).ok_or_else(|| Error::InvalidModule(format!("row {i} leaves the subspace")))?;
            out.set_row(i, &c);
        }
        Ok(out)
    }
}

/// Matrix of `big` between two subspaces, in their coordinates.
pub fn restrict_map(src: &Subspace, big: &Matrix, tgt: &Subspace) -> Result<Matrix> {
    tgt.coords_matrix(&src.basis.try_mul(big)?)
}

#[derive(Clone, Debug)]
pub struct ModuleRep {
    algebra: Arc<StructuredAlgebra>,
    dim: usize,
    rho: Arc<Vec<Matrix>>,
}

impl ModuleRep {
    /// `rho[i]` is the action of the `i`-th basis element.
    pub fn new(algebra: Arc<StructuredAlgebra>, dim: usize, rho: Vec<Matrix>) -> Result<Self> {
        if rho.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!("{} action matrices for an algebra of dimension {}", rho.len(), algebra.dim())));
        }
        if rho.iter().any(|m| m.rows() != dim || m.cols() != dim || m.field() != algebra.field()) {
            return Err(Error::InvalidModule(format!("action matrices must be {dim}x{dim} over {}", algebra.field())));
        }
        Ok(ModuleRep { algebra, dim, rho: Arc::new(rho) })
    }

    pub fn algebra(&self) -> &Arc<StructuredAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self, i: usize) -> &Matrix {
        &self.rho[i]
    }

    pub fn rhos(&self) -> &[Matrix] {
        &self.rho
    }

    /// `ρ(x) = Σ x_i ρ(e_i)`.
    pub fn action_of(&self, x: &Vector) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (i, c) in x.nonzero() {
            m.axpy(c, &self.rho[i]);
        }
        m
    }

    /// `A` acting on itself by right multiplication.
    pub fn regular(algebra: Arc<StructuredAlgebra>) -> Self {
        let rho = (0..algebra.dim()).map(|i| algebra.right_action_matrix(&algebra.basis(i))).collect();
        ModuleRep { dim: algebra.dim(), algebra, rho: Arc::new(rho) }
    }

    /// The ground field with `λ.x = ε(x)λ`.
    pub fn trivial(algebra: Arc<StructuredAlgebra>) -> Result<Self> {
        let eps = algebra.counit()?.clone();
        let f = algebra.field();
        let rho = (0..algebra.dim()).map(|i| Matrix::from_rows(f, vec![vec![eps.get(i).clone()]], 1).expect("1x1")).collect();
        Ok(ModuleRep { dim: 1, algebra, rho: Arc::new(rho) })
    }

    pub fn zero(algebra: Arc<StructuredAlgebra>) -> Self {
        let f = algebra.field();
        let rho = vec![Matrix::zeros(f, 0, 0); algebra.dim()];
        ModuleRep { dim: 0, algebra, rho: Arc::new(rho) }
    }

    pub fn same_algebra(&self, o: &ModuleRep) -> Result<()> {
        if self.algebra.id() != o.algebra.id() {
            return Err(Error::MixedAlgebras);
        }
        Ok(())
    }

    pub fn direct_sum(&self, o: &ModuleRep) -> Result<Self> {
        self.same_algebra(o)?;
        let n = self.dim + o.dim;
        let rho = self
            .rho
            .iter()
            .zip(o.rho.iter())
            .map(|(a, b)| {
                let mut m = Matrix::zeros(self.field(), n, n);
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        m.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m.set(self.dim + i, self.dim + j, b.get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        Ok(ModuleRep { algebra: self.algebra.clone(), dim: n, rho: Arc::new(rho) })
    }

    /// Action on an invariant subspace, in its coordinates.
    pub fn restrict(&self, sub: &Subspace) -> Result<Self> {
        let rho = self.rho.iter().map(|r| restrict_map(sub, r, sub)).collect::<Result<_>>()?;
        Ok(ModuleRep { algebra: self.algebra.clone(), dim: sub.dim(), rho: Arc::new(rho) })
    }

    /// Same module in the basis given by the rows of the invertible `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let inv = p.inverse()?.ok_or_else(|| Error::InvalidModule("change of basis is singular".into()))?;
        let rho = self.rho.iter().map(|r| p.try_mul(r).and_then(|x| x.try_mul(&inv))).collect::<Result<_>>()?;
        Ok(ModuleRep { algebra: self.algebra.clone(), dim: self.dim, rho: Arc::new(rho) })
    }

    /// Smallest submodule containing `gens`.
    pub fn submodule_generated(&self, gens: &[Vector]) -> Result<Subspace> {
        let mut rows = Matrix::zeros(self.field(), 0, self.dim);
        for g in gens {
            rows = rows.vstack(&Matrix::from_row_vectors(self.field(), std::slice::from_ref(g), self.dim)?)?;
        }
        let mut sub = Subspace::span(&rows);
        loop {
            let mut grown = sub.basis.clone();
            for r in self.rho.iter() {
                grown = grown.vstack(&sub.basis.try_mul(r)?)?;
            }
            let next = Subspace::span(&grown);
            if next.dim() == sub.dim() {
                return Ok(sub);
            }
            sub = next;
        }
    }

    /// Submodule of `copies` copies of the regular module generated by
    /// `gens` random vectors, in a random basis.
    pub fn random(algebra: Arc<StructuredAlgebra>, copies: usize, gens: usize, rng: &mut impl Rng) -> Result<Self> {
        let f = algebra.field();
        let mut big = ModuleRep::zero(algebra.clone());
        for _ in 0..copies {
            big = big.direct_sum(&ModuleRep::regular(algebra.clone()))?;
        }
        let vs: Vec<Vector> = (0..gens).map(|_| random_vector(f, big.dim, rng)).collect();
        let sub = big.submodule_generated(&vs)?;
        let m = big.restrict(&sub)?;
        let p = random_invertible(f, m.dim, rng);
        m.change_basis(&p)
    }
}

pub fn random_scalar(f: FieldSpec, rng: &mut impl Rng) -> Scalar {
    match f.order() {
        Some(p) => f.from_i64(rng.gen_range(0..p as i64)),
        None => f.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn random_vector(f: FieldSpec, n: usize, rng: &mut impl Rng) -> Vector {
    Vector::new(f, (0..n).map(|_| random_scalar(f, rng)).collect()).expect("same field")
}

pub fn random_invertible(f: FieldSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let rows: Vec<Vector> = (0..n).map(|_| random_vector(f, n, rng)).collect();
        let m = Matrix::from_row_vectors(f, &rows, n).expect("shape");
        if m.rank() == n {
            return m;
        }
    }
}

pub mod law {
    pub const MODULE_UNIT: &str = "module_unit";
    pub const MODULE_ACTION: &str = "module_action_multiplicative";
    pub const INTERTWINES: &str = "intertwines";
    pub const INVERTIBLE: &str = "invertible";
}

/// `ρ(1) = id` and `ρ(e_i)ρ(e_j) = ρ(e_i e_j)`.
pub fn check_module(m: &ModuleRep) -> Vec<Check> {
    let a = &m.algebra;
    let unit = if m.action_of(a.unit()).is_identity() { Check::pass(law::MODULE_UNIT) } else { Check::fail(law::MODULE_UNIT, vec![]) };
    let mut bad = None;
    'outer: for i in 0..a.dim() {
        for j in 0..a.dim() {
            let mut rhs = Matrix::zeros(m.field(), m.dim, m.dim);
            for (k, c) in a.product_terms(i, j) {
                rhs.axpy(c, &m.rho[*k]);
            }
            if &m.rho[i] * &m.rho[j] != rhs {
                bad = Some(vec![i, j]);
                break 'outer;
            }
        }
    }
    vec![unit, Check::from_witness(law::MODULE_ACTION, bad)]
}

pub fn module_is_valid(m: &ModuleRep) -> bool {
    check_module(m).iter().all(|c| c.passed)
}

/// `v ↦ v·matrix` from `source` to `target`.
#[derive(Clone, Debug)]
pub struct ModuleMorphism {
    pub source: ModuleRep,
    pub target: ModuleRep,
    pub matrix: Matrix,
}

impl ModuleMorphism {
    pub fn new(source: ModuleRep, target: ModuleRep, matrix: Matrix) -> Result<Self> {
        source.same_algebra(&target)?;
        if matrix.rows() != source.dim || matrix.cols() != target.dim {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix between modules of dimension {} and {}",
                matrix.rows(),
                matrix.cols(),
                source.dim,
                target.dim
            )));
        }
        Ok(ModuleMorphism { source, target, matrix })
    }

    pub fn identity(m: &ModuleRep) -> Self {
        ModuleMorphism { source: m.clone(), target: m.clone(), matrix: Matrix::identity(m.field(), m.dim) }
    }

    /// `ρ_src(e_i) f = f ρ_tgt(e_i)` for every basis element.
    pub fn check(&self) -> Check {
        let bad = (0..self.source.rho.len())
            .find(|&i| &self.source.rho[i] * &self.matrix != &self.matrix * &self.target.rho[i]);
        Check::from_witness(law::INTERTWINES, bad.map(|i| vec![i]))
    }

    pub fn is_morphism(&self) -> bool {
        self.check().passed
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_square() && self.matrix.rank() == self.matrix.rows()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMorphism) -> Result<Self> {
        Ok(ModuleMorphism { source: self.source.clone(), target: next.target.clone(), matrix: self.matrix.try_mul(&next.matrix)? })
    }
}

fn flatten(m: &Matrix) -> Vector {
    Vector::new(m.field(), m.to_rows().into_iter().flatten().collect()).expect("same field")
}

fn unflatten(v: &Vector, rows: usize, cols: usize) -> Matrix {
    let data: Vec<Vec<Scalar>> = v.coeffs().chunks(cols.max(1)).take(rows).map(|c| c.to_vec()).collect();
    if cols == 0 {
        return Matrix::zeros(v.field(), rows, 0);
    }
    Matrix::from_rows(v.field(), data, cols).expect("shape")
}

/// Basis of `Hom_A(M, N)`, shrinking the solution space one algebra basis
/// element at a time; returned in reduced echelon order.
pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> Result<Vec<Matrix>> {
    m.same_algebra(n)?;
    let f = m.field();
    let (r, c) = (m.dim, n.dim);
    if r == 0 || c == 0 {
        return Ok(Vec::new());
    }
    let mut basis: Vec<Matrix> = (0..r * c).map(|k| unflatten(&Vector::basis(f, r * c, k), r, c)).collect();
    for i in 0..m.rho.len() {
        if basis.is_empty() {
            break;
        }
        let images: Vec<Vector> =
            basis.iter().map(|b| flatten(&(&(&m.rho[i] * b) - &(b * &n.rho[i])))).collect();
        if images.iter().all(|v| v.is_zero()) {
            continue;
        }
        let img = Matrix::from_row_vectors(f, &images, r * c)?;
        let combos = img.transpose().kernel_basis();
        basis = combos
            .iter()
            .map(|co| {
                let mut acc = Matrix::zeros(f, r, c);
                for (j, s) in co.nonzero() {
                    acc.axpy(s, &basis[j]);
                }
                acc
            })
            .collect();
    }
    if basis.is_empty() {
        return Ok(basis);
    }
    let stacked = Matrix::from_row_vectors(f, &basis.iter().map(flatten).collect::<Vec<_>>(), r * c)?;
    Ok(Subspace::span(&stacked).basis.row_vectors().iter().map(|v| unflatten(v, r, c)).collect())
}

/// Dimension of the center of `End_A(M)`.
pub fn endomorphism_center_dim(m: &ModuleRep) -> Result<usize> {
    let ends = hom_space(m, m)?;
    let k = ends.len();
    if k == 0 {
        return Ok(0);
    }
    let d = m.dim * m.dim;
    // z = Σ x_j E_j commutes with every E_i
    let mut sys = Matrix::zeros(m.field(), k * d, k);
    for (j, ej) in ends.iter().enumerate() {
        for (i, ei) in ends.iter().enumerate() {
            let comm = flatten(&(&(ej * ei) - &(ei * ej)));
            for (t, s) in comm.nonzero() {
                sys.set(i * d + t, j, s.clone());
            }
        }
    }
    Ok(sys.kernel_basis().len())
}

fn require_action(act: &WeakGAction, m: &ModuleRep) -> Result<()> {
    if act.algebra().id() != m.algebra.id() {
        return Err(Error::NoActionOnAlgebra);
    }
    Ok(())
}

/// `ᵍM`: the same space with `x` acting as `φ_{g⁻¹}(x)`.
pub fn twist_module(act: &WeakGAction, g: usize, m: &ModuleRep) -> Result<ModuleRep> {
    require_action(act, m)?;
    let gi = act.group().inv(g);
    let rho = (0..m.rho.len()).map(|i| m.action_of(&act.phi(gi).row_vector(i))).collect();
    Ok(ModuleRep { algebra: m.algebra.clone(), dim: m.dim, rho: Arc::new(rho) })
}

/// `α_{g,h}: ᵍ(ʰM) → ᵍʰM`, acting by `c_{h⁻¹,g⁻¹}`.
pub fn alpha_iso(act: &WeakGAction, g: usize, h: usize, m: &ModuleRep) -> Result<ModuleMorphism> {
    let grp = act.group();
    let source = twist_module(act, g, &twist_module(act, h, m)?)?;
    let target = twist_module(act, grp.mul(g, h), m)?;
    let matrix = m.action_of(act.c(grp.inv(h), grp.inv(g)));
    ModuleMorphism::new(source, target, matrix)
}

pub mod iso_law {
    pub const ALPHA: &str = "alpha_isomorphisms";
    pub const ALPHA_COHERENCE: &str = "alpha_coherence";
    pub const F_MODULE: &str = "functor_module";
    pub const THETA_MORPHISM: &str = "theta_morphism";
    pub const THETA_INVERSE: &str = "theta_stated_inverse";
    pub const ETA0: &str = "eta0_isomorphism";
    pub const ETA2: &str = "eta2_isomorphism";
    pub const ETA2_NATURAL: &str = "eta2_naturality";
    pub const ETA2_COHERENCE: &str = "eta2_coherence";
    pub const PSI: &str = "psi_isomorphisms";
    pub const PSI_COHERENCE: &str = "psi_coherence";
}

/// Every `α_{g,h}` is an invertible morphism.
pub fn check_alpha_isos(act: &WeakGAction, m: &ModuleRep) -> Result<Check> {
    let n = act.group().order();
    for g in 0..n {
        for h in 0..n {
            let a = alpha_iso(act, g, h, m)?;
            if !a.is_morphism() || !a.is_invertible() {
                return Ok(Check::fail(iso_law::ALPHA, vec![g, h]));
            }
        }
    }
    Ok(Check::pass(iso_law::ALPHA))
}

/// `α_{g,h}` at `ᵏM` followed by `α_{gh,k}` equals `α_{h,k}` followed by
/// `α_{g,hk}`, for all triples.
pub fn check_alpha_coherence(act: &WeakGAction, m: &ModuleRep) -> Result<Check> {
    let grp = act.group();
    let n = grp.order();
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                let mk = twist_module(act, k, m)?;
                let lhs = alpha_iso(act, g, h, &mk)?.then(&alpha_iso(act, grp.mul(g, h), k, m)?)?;
                let rhs = alpha_iso(act, h, k, m)?.matrix.try_mul(&alpha_iso(act, g, grp.mul(h, k), m)?.matrix)?;
                if lhs.matrix != rhs {
                    return Ok(Check::fail(iso_law::ALPHA_COHERENCE, vec![g, h, k]));
                }
            }
        }
    }
    Ok(Check::pass(iso_law::ALPHA_COHERENCE))
}

fn require_base(strict: &Strictification, m: &ModuleRep) -> Result<()> {
    if strict.base().id() != m.algebra.id() {
        return Err(Error::InvalidStrictification("module is not over the strictified algebra".into()));
    }
    Ok(())
}

fn require_top(strict: &Strictification, m: &ModuleRep) -> Result<()> {
    if strict.algebra().id() != m.algebra.id() {
        return Err(Error::InvalidStrictification("module is not over the strictification".into()));
    }
    Ok(())
}

/// `F(M) = M ⊗ K[G]` with `(m⊗k).(δ_g⊗a⊗h) = δ(kh, g) m.φ_k(a)c_{k,h} ⊗ g`;
/// the basis vector `m_j ⊗ k` sits at `j |G| + k`.
pub fn functor_f(strict: &Strictification, m: &ModuleRep) -> Result<ModuleRep> {
    require_base(strict, m)?;
    let act = strict.input_action();
    let grp = strict.group();
    let ix = strict.index();
    let (gn, f) = (grp.order(), m.field());
    let dim = m.dim * gn;
    let mut rho = Vec::with_capacity(ix.dim());
    for idx in 0..ix.dim() {
        let (g, i, h) = ix.split(idx);
        let mut r = Matrix::zeros(f, dim, dim);
        for k in 0..gn {
            if grp.mul(k, h) != g {
                continue;
            }
            let x = strict.base().mul(&act.phi(k).row_vector(i), act.c(k, h));
            let block = m.action_of(&x);
            for a in 0..m.dim {
                for b in 0..m.dim {
                    let s = block.get(a, b);
                    if !s.is_zero() {
                        r.set(a * gn + k, b * gn + g, s.clone());
                    }
                }
            }
        }
        rho.push(r);
    }
    ModuleRep::new(strict.algebra().clone(), dim, rho)
}

/// `F(f) = f ⊗ id`.
pub fn functor_f_morphism(strict: &Strictification, f: &ModuleMorphism) -> Result<ModuleMorphism> {
    let id = Matrix::identity(f.matrix.field(), strict.group().order());
    ModuleMorphism::new(functor_f(strict, &f.source)?, functor_f(strict, &f.target)?, f.matrix.kron(&id))
}

/// `N_1 = N.(δ_1⊗1⊗1)` with `n.a = n.(δ_1⊗a⊗1)`, and its basis inside `N`.
pub fn unit_component(strict: &Strictification, n: &ModuleRep) -> Result<(ModuleRep, Subspace)> {
    require_top(strict, n)?;
    let sub = Subspace::span(&n.action_of(&strict.e(0)));
    let base = strict.base();
    let rho = (0..base.dim())
        .map(|i| restrict_map(&sub, &n.action_of(&strict.element(0, &base.basis(i), 0)), &sub))
        .collect::<Result<_>>()?;
    Ok((ModuleRep::new(base.clone(), sub.dim(), rho)?, sub))
}

#[derive(Clone, Debug)]
pub struct ThetaIso {
    pub unit_component: ModuleRep,
    pub basis: Subspace,
    /// `Θ: F(N_1) → N`, `n ⊗ g ↦ n.(δ_g⊗1⊗g)`.
    pub forward: ModuleMorphism,
    /// `n ↦ Σ_g n.(δ_1⊗c_{g⁻¹,g}⁻¹⊗g⁻¹) ⊗ g`.
    pub inverse: Matrix,
}

pub fn theta_iso(strict: &Strictification, n: &ModuleRep) -> Result<ThetaIso> {
    let (n1, sub) = unit_component(strict, n)?;
    let grp = strict.group();
    let gn = grp.order();
    let base = strict.base();
    let act = strict.input_action();
    let f = n.field();
    let fn1 = functor_f(strict, &n1)?;
    let mut fwd = Matrix::zeros(f, fn1.dim(), n.dim());
    let mut ops = Vec::with_capacity(gn);
    for g in 0..gn {
        ops.push(n.action_of(&strict.element(g, base.unit(), g)));
    }
    for r in 0..sub.dim() {
        let b = sub.basis().row_vector(r);
        for (g, op) in ops.iter().enumerate() {
            fwd.set_row(r * gn + g, &op.vec_mul(&b));
        }
    }
    let mut inv = Matrix::zeros(f, n.dim(), fn1.dim());
    for g in 0..gn {
        let gi = grp.inv(g);
        let cinv = base.inverse_of(act.c(gi, g)).ok_or(Error::NonInvertibleCompositor { g: gi, h: g })?;
        let op = n.action_of(&strict.element(0, &cinv, gi));
        for j in 0..n.dim() {
            let w = op.row_vector(j);
            let coords = sub.coords(&w).ok_or_else(|| Error::InvalidModule("image leaves the unit component".into()))?;
            for (r, s) in coords.nonzero() {
                inv.set(j, r * gn + g, s.clone());
            }
        }
    }
    Ok(ThetaIso { unit_component: n1, basis: sub, forward: ModuleMorphism::new(fn1, n.clone(), fwd)?, inverse: inv })
}

impl ThetaIso {
    pub fn check(&self) -> Result<Vec<Check>> {
        let f = self.inverse.field();
        let a = self.forward.matrix.try_mul(&self.inverse)?;
        let b = self.inverse.try_mul(&self.forward.matrix)?;
        let both = a == Matrix::identity(f, a.rows()) && b == Matrix::identity(f, b.rows());
        let mut m = self.forward.check();
        m.name = iso_law::THETA_MORPHISM.into();
        let inv = if both { Check::pass(iso_law::THETA_INVERSE) } else { Check::fail(iso_law::THETA_INVERSE, vec![]) };
        Ok(vec![m, inv])
    }
}

/// `M ⊗̄ N = (M ⊗ N).Δ(1)` with the diagonal action, embedded in `M ⊗ N`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub module: ModuleRep,
    pub carrier: Subspace,
}

/// `Σ c ρ_M(p) ⊗ ρ_N(q)` over the coproduct terms of `x`, on the full `M ⊗ N`.
type SparseRows = Vec<Vec<(usize, Scalar)>>;

fn sparse_rows(m: &Matrix) -> SparseRows {
    (0..m.rows()).map(|i| m.row(i).iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect()).collect()
}

/// Fully reduced rows keyed by pivot column, each with pivot entry 1.
fn sparse_rref(field: FieldSpec, rows: impl IntoIterator<Item = SparseTensor>) -> BTreeMap<usize, SparseTensor> {
    let mut basis: BTreeMap<usize, SparseTensor> = BTreeMap::new();
    for mut r in rows {
        // basis rows vanish on each other's pivots, so one pass suffices
        let hits: Vec<(usize, Scalar)> = r.iter().filter(|(k, _)| basis.contains_key(k)).map(|(k, x)| (k, x.clone())).collect();
        for (k, x) in hits {
            r.add_scaled(&-x, &basis[&k]);
        }
        let Some((lead, x)) = r.iter().next().map(|(k, x)| (k, x.clone())) else {
            continue;
        };
        let mut unit = SparseTensor::zero(field);
        unit.add_scaled(&x.inverse().expect("leading entry is nonzero"), &r);
        for b in basis.values_mut() {
            let y = b.get(lead);
            if !y.is_zero() {
                b.add_scaled(&-y, &unit);
            }
        }
        basis.insert(lead, unit);
    }
    basis
}

/// `out += s · v·(P ⊗ Q)`, with `P`, `Q` given by sparse rows and `Q` having
/// `cols` columns.
fn add_kron_image<'a>(
    out: &mut SparseTensor,
    s: &Scalar,
    v: impl Iterator<Item = (usize, &'a Scalar)>,
    p: &SparseRows,
    q: &SparseRows,
    cols: usize,
) {
    let dq = q.len();
    for (idx, x) in v {
        let sx = s * x;
        for (ja, y) in &p[idx / dq] {
            let sxy = &sx * y;
            for (jb, z) in &q[idx % dq] {
                out.add_term(ja * cols + jb, &(&sxy * z));
            }
        }
    }
}

/// `m · (a ⊗ b)` without forming the Kronecker product.
pub fn mul_kron(m: &Matrix, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if m.cols() != a.rows() * b.rows() {
        return Err(Error::ShapeMismatch(format!("{} columns against a {}-row Kronecker factor pair", m.cols(), a.rows() * b.rows())));
    }
    let f = m.field();
    let (ra, rb) = (sparse_rows(a), sparse_rows(b));
    let one = f.one();
    let mut out = Matrix::zeros(f, m.rows(), a.cols() * b.cols());
    for i in 0..m.rows() {
        let mut r = SparseTensor::zero(f);
        add_kron_image(&mut r, &one, m.row(i).iter().enumerate().filter(|(_, x)| !x.is_zero()), &ra, &rb, b.cols());
        out.set_row(i, &r.to_vector(a.cols() * b.cols()));
    }
    Ok(out)
}

/// [`restrict_map`] for `a ⊗ b`.
pub fn restrict_kron(src: &Subspace, a: &Matrix, b: &Matrix, tgt: &Subspace) -> Result<Matrix> {
    tgt.coords_matrix(&mul_kron(src.basis(), a, b)?)
}

pub fn tensor_modules(m: &ModuleRep, n: &ModuleRep) -> Result<TensorProduct> {
    m.same_algebra(n)?;
    let a = m.algebra.clone();
    let f = m.field();
    let (rm, rn): (Vec<SparseRows>, Vec<SparseRows>) = (m.rho.iter().map(sparse_rows).collect(), n.rho.iter().map(sparse_rows).collect());
    let size = m.dim * n.dim;
    // rows of ρ(1) on M ⊗ N
    let delta_one = a.coproduct_of(a.unit())?;
    let one = f.one();
    let rows = (0..size).map(|k| {
        let mut r = SparseTensor::zero(f);
        for (idx, c) in delta_one.iter() {
            add_kron_image(&mut r, c, std::iter::once((k, &one)), &rm[idx / a.dim()], &rn[idx % a.dim()], n.dim);
        }
        r
    });
    let carrier = Subspace::span_sparse(f, size, rows);
    let mut rho = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let terms = a.coproduct_terms(i)?;
        let mut r = Matrix::zeros(f, carrier.dim(), carrier.dim());
        for (k, v) in carrier.rows.iter().enumerate() {
            let mut img = SparseTensor::zero(f);
            for (c, p, q) in terms {
                add_kron_image(&mut img, c, v.iter().map(|(j, x)| (*j, x)), &rm[*p], &rn[*q], n.dim);
            }
            let coords = carrier.coords_sparse(&img).ok_or_else(|| Error::InvalidModule("tensor carrier is not invariant".into()))?;
            r.set_row(k, &coords);
        }
        rho.push(r);
    }
    Ok(TensorProduct { module: ModuleRep { algebra: a, dim: carrier.dim(), rho: Arc::new(rho) }, carrier })
}

/// The source counital subalgebra with `z.h = ε_s(zh)`, and its basis in `H`.
pub fn tensor_unit(h: &Arc<StructuredAlgebra>) -> Result<(ModuleRep, Subspace)> {
    let basis: Vec<Vector> = h.counital_subalgebra(Counital::Source)?.into_iter().map(|e| e.into_coeffs()).collect();
    let sub = Subspace::span(&Matrix::from_row_vectors(h.field(), &basis, h.dim())?);
    let mut rho = Vec::with_capacity(h.dim());
    for i in 0..h.dim() {
        let e = h.basis(i);
        let mut r = Matrix::zeros(h.field(), sub.dim(), sub.dim());
        for k in 0..sub.dim() {
            let z = sub.basis().row_vector(k);
            let img = h.source_map(&h.mul(&z, &e))?;
            r.set_row(k, &sub.coords(&img).ok_or_else(|| Error::InvalidModule("ε_s leaves its image".into()))?);
        }
        rho.push(r);
    }
    Ok((ModuleRep::new(h.clone(), sub.dim(), rho)?, sub))
}

/// `η₀: F(𝟙) → 𝟙`, `λ ⊗ k ↦ λ δ_k⊗1⊗1`. Needs a one-dimensional unit
/// object for the base algebra.
pub fn eta0(strict: &Strictification) -> Result<ModuleMorphism> {
    let (unit_a, sub_a) = tensor_unit(strict.base())?;
    if unit_a.dim() != 1 {
        return Err(Error::InvalidModule("the base algebra's unit object is not one-dimensional".into()));
    }
    // basis vector z = μ·1
    let z = sub_a.basis().row_vector(0);
    let one = strict.base().unit();
    let (p, c) = one.nonzero().next().ok_or_else(|| Error::InvalidAlgebra("zero unit".into()))?;
    let mu = z.get(p) * &c.inverse()?;
    let source = functor_f(strict, &unit_a)?;
    let (target, sub) = tensor_unit(strict.algebra())?;
    let gn = strict.group().order();
    let mut m = Matrix::zeros(strict.field(), gn, target.dim());
    for k in 0..gn {
        let v = strict.e(k).scale(&mu);
        m.set_row(k, &sub.coords(&v).ok_or_else(|| Error::InvalidModule("δ_k⊗1⊗1 outside the unit object".into()))?);
    }
    ModuleMorphism::new(source, target, m)
}

#[derive(Clone, Debug)]
pub struct Eta2 {
    /// `F(M) ⊗̄ F(N)`.
    pub source: TensorProduct,
    /// `M ⊗̄ N` over the base algebra.
    pub base_tensor: TensorProduct,
    /// `η₂: F(M) ⊗̄ F(N) → F(M ⊗̄ N)`.
    pub morphism: ModuleMorphism,
}

/// `η₂(m⊗g⊗n⊗g) = m⊗n⊗g`, as the restriction of the map on the full
/// tensor product that kills off-diagonal group legs.
pub fn eta2(strict: &Strictification, m: &ModuleRep, n: &ModuleRep) -> Result<Eta2> {
    let gn = strict.group().order();
    let f = strict.field();
    let (fm, fnn) = (functor_f(strict, m)?, functor_f(strict, n)?);
    let source = tensor_modules(&fm, &fnn)?;
    let base_tensor = tensor_modules(m, n)?;
    let target = functor_f(strict, &base_tensor.module)?;
    let (dm, dn, dfn) = (m.dim(), n.dim(), fnn.dim());
    // base carrier ⊗ K[G], already in reduced echelon form
    let target_sub = Subspace::span_sparse(
        f,
        dm * dn * gn,
        base_tensor.carrier.rows.iter().flat_map(|r| {
            (0..gn).map(move |g| {
                let mut t = SparseTensor::zero(f);
                for (j, x) in r {
                    t.add_term(j * gn + g, x);
                }
                t
            })
        }),
    );
    // (m ⊗ g) ⊗ (n ⊗ h) ↦ δ_{g,h} (m ⊗ n) ⊗ g
    let mut matrix = Matrix::zeros(f, source.carrier.dim(), target_sub.dim());
    for (k, row) in source.carrier.rows.iter().enumerate() {
        let mut img = SparseTensor::zero(f);
        for (idx, x) in row {
            let (l, r) = (idx / dfn, idx % dfn);
            let (a, g, b, h) = (l / gn, l % gn, r / gn, r % gn);
            if g == h {
                img.add_term((a * dn + b) * gn + g, x);
            }
        }
        let c = target_sub.coords_sparse(&img).ok_or_else(|| Error::InvalidModule("η₂ leaves F(M ⊗̄ N)".into()))?;
        matrix.set_row(k, &c);
    }
    let morphism = ModuleMorphism::new(source.module.clone(), target, matrix)?;
    Ok(Eta2 { source, base_tensor, morphism })
}

/// Square for `f: M → M'`, `g: N → N'`: `F(f)⊗̄F(g)` then `η₂` equals
/// `η₂` then `F(f⊗̄g)`.
pub fn check_eta2_naturality(strict: &Strictification, f: &ModuleMorphism, g: &ModuleMorphism) -> Result<bool> {
    let e = eta2(strict, &f.source, &g.source)?;
    let e2 = eta2(strict, &f.target, &g.target)?;
    let (ff, fg) = (functor_f_morphism(strict, f)?, functor_f_morphism(strict, g)?);
    let top = restrict_kron(&e.source.carrier, &ff.matrix, &fg.matrix, &e2.source.carrier)?;
    let lhs = top.try_mul(&e2.morphism.matrix)?;
    let fxg = restrict_kron(&e.base_tensor.carrier, &f.matrix, &g.matrix, &e2.base_tensor.carrier)?;
    let rhs = mul_kron(&e.morphism.matrix, &fxg, &Matrix::identity(strict.field(), strict.group().order()))?;
    Ok(lhs == rhs)
}

/// Whether the maps `emb1[k] ↦ out1[k]` and `emb2[k] ↦ out2[k]` agree, the
/// rows of `emb2` being independent and spanning the rows of `emb1`.
fn maps_agree(emb1: &Matrix, out1: &Matrix, emb2: &Matrix, out2: &Matrix) -> Result<bool> {
    let f = emb1.field();
    let width = emb2.cols();
    let joined = |e: &Matrix, o: &Matrix, k: usize| {
        let mut t = SparseTensor::zero(f);
        for (j, x) in e.row(k).iter().enumerate() {
            t.add_term(j, x);
        }
        for (j, x) in o.row(k).iter().enumerate() {
            t.add_term(width + j, x);
        }
        t
    };
    let reduced = sparse_rref(f, (0..emb2.rows()).map(|k| joined(emb2, out2, k)));
    if reduced.len() != emb2.rows() || reduced.keys().any(|&p| p >= width) {
        return Err(Error::ShapeMismatch("embedding rows are dependent".into()));
    }
    for k in 0..emb1.rows() {
        let target = joined(emb1, out1, k);
        let mut acc = SparseTensor::zero(f);
        for (p, row) in &reduced {
            acc.add_scaled(&target.get(*p), row);
        }
        if acc != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The two ways of building `F(M)⊗̄F(N)⊗̄F(P) → F(M⊗̄N⊗̄P)` from `η₂`
/// agree, after identifying both bracketings inside the full triple tensor.
pub fn check_eta2_coherence(strict: &Strictification, m: &ModuleRep, n: &ModuleRep, p: &ModuleRep) -> Result<bool> {
    let f = strict.field();
    let gn = strict.group().order();
    let id = |k: usize| Matrix::identity(f, k);
    let (fm, fp) = (functor_f(strict, m)?, functor_f(strict, p)?);

    // (F(M) ⊗̄ F(N)) ⊗̄ F(P)
    let e_mn = eta2(strict, m, n)?;
    let t12_3 = tensor_modules(&e_mn.source.module, &fp)?;
    let e_mn_p = eta2(strict, &e_mn.base_tensor.module, p)?;
    let step1 = restrict_kron(&t12_3.carrier, &e_mn.morphism.matrix, &id(fp.dim()), &e_mn_p.source.carrier)?;
    let path1 = step1.try_mul(&e_mn_p.morphism.matrix)?;
    let emb_a1 = mul_kron(e_mn_p.base_tensor.carrier.basis(), e_mn.base_tensor.carrier.basis(), &id(p.dim()))?;
    let out1 = mul_kron(&path1, &emb_a1, &id(gn))?;

    // F(M) ⊗̄ (F(N) ⊗̄ F(P))
    let e_np = eta2(strict, n, p)?;
    let t1_23 = tensor_modules(&fm, &e_np.source.module)?;
    let e_m_np = eta2(strict, m, &e_np.base_tensor.module)?;
    let step2 = restrict_kron(&t1_23.carrier, &id(fm.dim()), &e_np.morphism.matrix, &e_m_np.source.carrier)?;
    let path2 = step2.try_mul(&e_m_np.morphism.matrix)?;
    let emb_a2 = mul_kron(e_m_np.base_tensor.carrier.basis(), &id(m.dim()), e_np.base_tensor.carrier.basis())?;
    let out2 = mul_kron(&path2, &emb_a2, &id(gn))?;

    // identify the two source carriers inside F(M) ⊗ F(N) ⊗ F(P)
    let emb12_3 = mul_kron(t12_3.carrier.basis(), e_mn.source.carrier.basis(), &id(fp.dim()))?;
    let emb1_23 = mul_kron(t1_23.carrier.basis(), &id(fm.dim()), e_np.source.carrier.basis())?;
    maps_agree(&emb12_3, &out1, &emb1_23, &out2)
}

/// `ψ_g: F(ᵍM) → ᵍF(M)`, `m ⊗ k ↦ m.c_{g⁻¹,k} ⊗ g⁻¹k`.
pub fn psi_iso(strict: &Strictification, g: usize, m: &ModuleRep) -> Result<ModuleMorphism> {
    let act = strict.input_action();
    let grp = strict.group();
    let gn = grp.order();
    let gi = grp.inv(g);
    let source = functor_f(strict, &twist_module(act, g, m)?)?;
    let target = twist_module(strict.output().action(), g, &functor_f(strict, m)?)?;
    let mut mat = Matrix::zeros(strict.field(), source.dim(), target.dim());
    for k in 0..gn {
        let block = m.action_of(act.c(gi, k));
        let col = grp.mul(gi, k);
        for a in 0..m.dim() {
            for b in 0..m.dim() {
                let s = block.get(a, b);
                if !s.is_zero() {
                    mat.set(a * gn + k, b * gn + col, s.clone());
                }
            }
        }
    }
    ModuleMorphism::new(source, target, mat)
}

/// Every `ψ_g` is an invertible morphism.
pub fn check_psi_isos(strict: &Strictification, m: &ModuleRep) -> Result<Check> {
    for g in 0..strict.group().order() {
        let p = psi_iso(strict, g, m)?;
        if !p.is_morphism() || !p.is_invertible() {
            return Ok(Check::fail(iso_law::PSI, vec![g]));
        }
    }
    Ok(Check::pass(iso_law::PSI))
}

/// `F(α_{g,h})` then `ψ_{gh}` equals `ψ_g` at `ʰM` then `ψ_h`.
pub fn check_psi_coherence(strict: &Strictification, m: &ModuleRep) -> Result<Check> {
    let act = strict.input_action();
    let grp = strict.group();
    let n = grp.order();
    for g in 0..n {
        for h in 0..n {
            let fa = functor_f_morphism(strict, &alpha_iso(act, g, h, m)?)?;
            let lhs = fa.matrix.try_mul(&psi_iso(strict, grp.mul(g, h), m)?.matrix)?;
            let mh = twist_module(act, h, m)?;
            let rhs = psi_iso(strict, g, &mh)?.matrix.try_mul(&psi_iso(strict, h, m)?.matrix)?;
            if lhs != rhs {
                return Ok(Check::fail(iso_law::PSI_COHERENCE, vec![g, h]));
            }
        }
    }
    Ok(Check::pass(iso_law::PSI_COHERENCE))
}

/// For `M` of degree `h`, the degree-`h` part of the unit of the
/// strictification acts as the identity on `F(M)` and the other parts as
/// zero.
pub fn grading_respected(strict: &Strictification, m: &ModuleRep, h: usize) -> Result<bool> {
    let input = strict.input().grading();
    let base = strict.base();
    for d in 0..strict.group().order() {
        if d != h && !m.action_of(&input.project(base.unit(), d)).is_zero() {
            return Err(Error::ModuleNotHomogeneous(h));
        }
    }
    let fm = functor_f(strict, m)?;
    let out = strict.output().grading();
    let unit = strict.algebra().unit();
    for d in 0..strict.group().order() {
        let a = fm.action_of(&out.project(unit, d));
        let ok = if d == h { a.is_identity() } else { a.is_zero() };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{counterexample_action, GGrading, GHopfAlgebra};
    use crate::algebra::{function_algebra, group_algebra};
    use crate::group::FiniteGroup;
    use crate::strict::strictify;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn d4(field: FieldSpec) -> Strictification {
        strictify(&GHopfAlgebra::with_trivial_grading(counterexample_action(field))).unwrap()
    }

    #[test]
    fn sparse_span_matches_dense_rref() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in [FieldSpec::Rationals, FieldSpec::prime(3).unwrap()] {
            for (rows, cols) in [(5, 7), (7, 4), (6, 6)] {
                // low rank: products of thin factors
                let l = Matrix::from_row_vectors(f, &(0..rows).map(|_| random_vector(f, 3, &mut rng)).collect::<Vec<_>>(), 3).unwrap();
                let r = Matrix::from_row_vectors(f, &(0..3).map(|_| random_vector(f, cols, &mut rng)).collect::<Vec<_>>(), cols).unwrap();
                let m = l.try_mul(&r).unwrap();
                let (dense, pivots) = m.rref();
                let sub = Subspace::span(&m);
                assert_eq!(sub.pivots, pivots);
                assert_eq!(sub.basis, dense.select_rows(&(0..pivots.len()).collect::<Vec<_>>()));
            }
        }
    }

    #[test]
    fn maps_agree_detects_a_change() {
        let f = FieldSpec::prime(5).unwrap();
        let emb2 = Matrix::from_i64(f, &[&[1, 1, 0], &[0, 1, 1]]);
        let out2 = Matrix::from_i64(f, &[&[2], &[3]]);
        // (1, 2, 1) = e0 + e1 ↦ 5 = 0
        let emb1 = Matrix::from_i64(f, &[&[1, 2, 1]]);
        assert!(maps_agree(&emb1, &Matrix::from_i64(f, &[&[0]]), &emb2, &out2).unwrap());
        assert!(!maps_agree(&emb1, &Matrix::from_i64(f, &[&[1]]), &emb2, &out2).unwrap());
        assert!(!maps_agree(&Matrix::from_i64(f, &[&[1, 0, 0]]), &Matrix::from_i64(f, &[&[0]]), &emb2, &out2).unwrap());
    }

    fn valid(m: &ModuleRep) -> bool {
        module_is_valid(m)
    }

    #[test]
    fn regular_and_trivial_modules() {
        let a = Arc::new(group_algebra(&FiniteGroup::cyclic(2), FieldSpec::Rationals));
        let r = ModuleRep::regular(a.clone());
        assert!(valid(&r));
        assert_eq!(hom_space(&r, &r).unwrap().len(), 2);
        let t = ModuleRep::trivial(a.clone()).unwrap();
        assert!(valid(&t));
        let h = hom_space(&t, &t).unwrap();
        assert_eq!(h.len(), 1);
        assert!(h[0].is_identity());
        assert_eq!(hom_space(&r, &t).unwrap().len(), 1);
    }

    #[test]
    fn mixed_algebras_rejected() {
        let a = Arc::new(group_algebra(&FiniteGroup::cyclic(2), FieldSpec::Rationals));
        let b = Arc::new(group_algebra(&FiniteGroup::cyclic(2), FieldSpec::Rationals));
        let r = ModuleRep::regular(a);
        let s = ModuleRep::regular(b);
        assert!(matches!(hom_space(&r, &s), Err(Error::MixedAlgebras)));
    }

    #[test]
    fn random_modules_are_modules() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f7 = FieldSpec::prime(7).unwrap();
        let a = Arc::new(group_algebra(&FiniteGroup::dihedral(3), f7));
        for _ in 0..5 {
            let m = ModuleRep::random(a.clone(), 1, 1, &mut rng).unwrap();
            assert!(valid(&m));
            assert!(!hom_space(&m, &m).unwrap().is_empty() || m.dim() == 0);
        }
    }

    #[test]
    fn hom_space_elements_intertwine() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f5 = FieldSpec::prime(5).unwrap();
        let a = Arc::new(group_algebra(&FiniteGroup::dihedral(3), f5));
        let m = ModuleRep::random(a.clone(), 2, 2, &mut rng).unwrap();
        let n = ModuleRep::regular(a);
        for f in hom_space(&m, &n).unwrap() {
            assert!(ModuleMorphism::new(m.clone(), n.clone(), f).unwrap().is_morphism());
        }
    }

    #[test]
    fn twisting_and_alpha() {
        let act = counterexample_action(FieldSpec::Rationals);
        let r = ModuleRep::regular(act.algebra().clone());
        let t = twist_module(&act, 0, &r).unwrap();
        assert_eq!(t.rhos(), r.rhos());
        assert!(check_alpha_isos(&act, &r).unwrap().passed);
        assert!(check_alpha_coherence(&act, &r).unwrap().passed);
    }

    #[test]
    fn strict_action_alpha_is_identity() {
        let s = d4(FieldSpec::Rationals);
        let r = ModuleRep::regular(s.algebra().clone());
        let act = s.output().action();
        for g in 0..4 {
            for h in 0..4 {
                assert!(alpha_iso(act, g, h, &r).unwrap().matrix.is_identity());
            }
        }
    }

    #[test]
    fn functor_dimensions_and_trivial_module() {
        let s = d4(FieldSpec::Rationals);
        let t = ModuleRep::trivial(s.base().clone()).unwrap();
        let ft = functor_f(&s, &t).unwrap();
        assert_eq!(ft.dim(), 4);
        assert!(valid(&ft));
        // (λ⊗k).(δ_g⊗a⊗h) = δ(kh,g) ε(a) λ⊗g
        let ix = s.index();
        let grp = s.group();
        for idx in 0..32 {
            let (g, _, h) = ix.split(idx);
            for k in 0..4 {
                let expect = if grp.mul(k, h) == g { 1 } else { 0 };
                assert_eq!(ft.rho(idx).get(k, g), &FieldSpec::Rationals.from_i64(expect));
            }
        }
        let fr = functor_f(&s, &ModuleRep::regular(s.base().clone())).unwrap();
        assert!(valid(&fr));
    }

    #[test]
    fn functor_is_functorial() {
        let f7 = FieldSpec::prime(7).unwrap();
        let s = d4(f7);
        let r = ModuleRep::regular(s.base().clone());
        let ends = hom_space(&r, &r).unwrap();
        let f = ModuleMorphism::new(r.clone(), r.clone(), ends[0].clone()).unwrap();
        let g = ModuleMorphism::new(r.clone(), r.clone(), ends[1].clone()).unwrap();
        let lhs = functor_f_morphism(&s, &f.then(&g).unwrap()).unwrap();
        let rhs = functor_f_morphism(&s, &f).unwrap().then(&functor_f_morphism(&s, &g).unwrap()).unwrap();
        assert_eq!(lhs.matrix, rhs.matrix);
        assert!(lhs.is_morphism());
    }

    #[test]
    fn theta_on_regular_module() {
        let s = d4(FieldSpec::Rationals);
        let n = ModuleRep::regular(s.algebra().clone());
        let th = theta_iso(&s, &n).unwrap();
        assert_eq!(th.unit_component.dim(), 8);
        assert!(valid(&th.unit_component));
        for c in th.check().unwrap() {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn theta_on_zero_module() {
        let s = d4(FieldSpec::Rationals);
        let th = theta_iso(&s, &ModuleRep::zero(s.algebra().clone())).unwrap();
        assert_eq!(th.unit_component.dim(), 0);
        assert!(th.check().unwrap().iter().all(|c| c.passed));
    }

    #[test]
    fn zero_module_passes_through() {
        let s = d4(FieldSpec::prime(5).unwrap());
        let z = ModuleRep::zero(s.base().clone());
        let reg = ModuleRep::regular(s.base().clone());
        assert!(hom_space(&z, &reg).unwrap().is_empty());
        assert_eq!(functor_f(&s, &z).unwrap().dim(), 0);
        // a zero generator spans the zero submodule, which must survive a basis change
        let f = s.base().field();
        let sub = reg.submodule_generated(&[Vector::zeros(f, reg.dim())]).unwrap();
        let m = reg.restrict(&sub).unwrap().change_basis(&Matrix::zeros(f, 0, 0)).unwrap();
        assert_eq!(m.dim(), 0);
    }

    #[test]
    fn unit_component_of_image_recovers_module() {
        let s = d4(FieldSpec::Rationals);
        let m = ModuleRep::regular(s.base().clone());
        let fm = functor_f(&s, &m).unwrap();
        let (n1, sub) = unit_component(&s, &fm).unwrap();
        // m ↦ m ⊗ 1, expressed in the unit-component basis
        let emb = Matrix::identity(FieldSpec::Rationals, 2).kron(&Matrix::from_i64(FieldSpec::Rationals, &[&[1, 0, 0, 0]]));
        let iso = sub.coords_matrix(&emb).unwrap();
        let mor = ModuleMorphism::new(m, n1, iso).unwrap();
        assert!(mor.is_morphism() && mor.is_invertible());
    }

    #[test]
    fn tensor_of_hopf_modules_is_full() {
        let a = Arc::new(group_algebra(&FiniteGroup::cyclic(2), FieldSpec::Rationals));
        let r = ModuleRep::regular(a.clone());
        let t = tensor_modules(&r, &r).unwrap();
        assert_eq!(t.module.dim(), 4);
        assert!(valid(&t.module));
        let (u, _) = tensor_unit(&a).unwrap();
        assert_eq!(u.dim(), 1);
        assert!(valid(&u));
    }

    #[test]
    fn tensor_of_images_is_diagonal() {
        let s = d4(FieldSpec::Rationals);
        let r = ModuleRep::regular(s.base().clone());
        let fr = functor_f(&s, &r).unwrap();
        let t = tensor_modules(&fr, &fr).unwrap();
        assert_eq!(t.module.dim(), 2 * 2 * 4);
        assert!(valid(&t.module));
        // spanned by m⊗g⊗n⊗g
        for row in t.carrier.basis().row_vectors() {
            for (idx, _) in row.nonzero() {
                let (x, y) = (idx / 8, idx % 8);
                assert_eq!(x % 4, y % 4);
            }
        }
        let (u, _) = tensor_unit(s.algebra()).unwrap();
        assert_eq!(u.dim(), 4);
        assert!(valid(&u));
    }

    #[test]
    fn eta_isomorphisms() {
        let f7 = FieldSpec::prime(7).unwrap();
        let s = d4(f7);
        let e0 = eta0(&s).unwrap();
        assert!(e0.is_morphism() && e0.is_invertible());
        let r = ModuleRep::regular(s.base().clone());
        let t = ModuleRep::trivial(s.base().clone()).unwrap();
        let e2 = eta2(&s, &r, &t).unwrap();
        assert!(e2.morphism.is_morphism() && e2.morphism.is_invertible());
        let e2 = eta2(&s, &t, &t).unwrap();
        assert!(e2.morphism.matrix.is_identity());
        assert!(check_eta2_coherence(&s, &r, &t, &r).unwrap());
        let ends = hom_space(&r, &r).unwrap();
        for f in &ends {
            let f = ModuleMorphism::new(r.clone(), r.clone(), f.clone()).unwrap();
            let id = ModuleMorphism::identity(&t);
            assert!(check_eta2_naturality(&s, &f, &id).unwrap());
        }
    }

    #[test]
    fn psi_isomorphisms() {
        let s = d4(FieldSpec::Rationals);
        let r = ModuleRep::regular(s.base().clone());
        assert!(psi_iso(&s, 0, &r).unwrap().matrix.is_identity());
        assert!(check_psi_isos(&s, &r).unwrap().passed);
        assert!(check_psi_coherence(&s, &r).unwrap().passed);
    }

    #[test]
    fn hom_dimensions_preserved() {
        let f7 = FieldSpec::prime(7).unwrap();
        let s = d4(f7);
        let r = ModuleRep::regular(s.base().clone());
        let t = ModuleRep::trivial(s.base().clone()).unwrap();
        for (m, n) in [(&r, &r), (&r, &t), (&t, &r), (&t, &t)] {
            let lhs = hom_space(m, n).unwrap().len();
            let rhs = hom_space(&functor_f(&s, m).unwrap(), &functor_f(&s, n).unwrap()).unwrap().len();
            assert_eq!(lhs, rhs);
        }
        let fr = functor_f(&s, &r).unwrap();
        assert_eq!(endomorphism_center_dim(&fr).unwrap(), s.algebra().center().len());
        assert_eq!(s.algebra().center().len(), s.base().center().len());
    }

    #[test]
    fn grading_of_images() {
        let s = d4(FieldSpec::Rationals);
        let r = ModuleRep::regular(s.base().clone());
        assert!(grading_respected(&s, &r, 0).unwrap());

        // K(ℤ/2) with deg δ_g = g; the module where δ_t acts as 1
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let a = Arc::new(function_algebra(&z2, FieldSpec::Rationals));
        let act = WeakGAction::trivial(z2.clone(), a.clone());
        let grading = GGrading::new(z2.clone(), vec![0, 1]).unwrap();
        let s = strictify(&GHopfAlgebra::new(act, grading).unwrap()).unwrap();
        let q = FieldSpec::Rationals;
        let mt = ModuleRep::new(a.clone(), 1, vec![Matrix::from_i64(q, &[&[0]]), Matrix::from_i64(q, &[&[1]])]).unwrap();
        assert!(grading_respected(&s, &mt, 1).unwrap());
        let mixed = ModuleRep::regular(a);
        assert!(matches!(grading_respected(&s, &mixed, 1), Err(Error::ModuleNotHomogeneous(1))));
    }
}
