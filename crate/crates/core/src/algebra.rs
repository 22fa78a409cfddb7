//! Finite-dimensional algebras given by structure constants, with optional
//! coalgebra and antipode data, and every (weak) bialgebra and (weak) Hopf
//! axiom as an exact check over basis tuples.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::group::FiniteGroup;
use crate::linalg::{Matrix, Vector};
use crate::tensor::{join_index, split_index, SparseTensor};
use crate::verdict::{Check, Verdict};

/// Sparse coefficient list, sorted by basis index, zeros omitted.
pub type Terms = Vec<(usize, Scalar)>;

/// One summand `coeff * e_left ⊗ e_right` of a coproduct.
pub type CoproductTerm = (Scalar, usize, usize);

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed)
}

#[derive(Clone, Debug)]
struct Coalgebra {
    coproduct: Vec<Vec<CoproductTerm>>,
    counit: Vector,
}

#[derive(Clone, Debug)]
pub struct StructuredAlgebra {
    id: u64,
    field: FieldSpec,
    dim: usize,
    labels: Vec<String>,
    product: Vec<Terms>,
    unit: Vector,
    coalgebra: Option<Coalgebra>,
    antipode: Option<Matrix>,
}

/// An element tagged with the algebra it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: u64,
    coeffs: Vector,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &Vector {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vector {
        self.coeffs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Algebra,
    Bialgebra,
    Hopf,
    WeakBialgebra,
    WeakHopf,
    Invalid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Counital {
    Source,
    Target,
}

/// Results of the axiom suite. `checks` holds the laws that define the
/// reported classification; the strong laws are informational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakHopfVerdict {
    pub checks: Verdict,
    pub strong_unit: Option<Check>,
    pub strong_counit: Option<Check>,
    pub classification: Classification,
}

impl WeakHopfVerdict {
    pub fn all_passed(&self) -> bool {
        self.checks.all_passed()
    }
}

pub mod law {
    pub const ASSOCIATIVITY: &str = "associativity";
    pub const UNIT: &str = "unit";
    pub const COASSOCIATIVITY: &str = "coassociativity";
    pub const COUNIT: &str = "counit";
    pub const MULTIPLICATIVE: &str = "coproduct_multiplicative";
    pub const WEAK_UNIT: &str = "weak_unit";
    pub const WEAK_COUNIT: &str = "weak_counit";
    pub const STRONG_UNIT: &str = "strong_unit";
    pub const STRONG_COUNIT: &str = "strong_counit";
    pub const ANTIPODE_SOURCE: &str = "antipode_source";
    pub const ANTIPODE_TARGET: &str = "antipode_target";
    pub const ANTIPODE_SANDWICH: &str = "antipode_sandwich";
}

impl StructuredAlgebra {
    /// Validates shapes only; the axioms are checked separately.
    pub fn new(field: FieldSpec, labels: Vec<String>, product: Vec<Terms>, unit: Vector) -> Result<Self> {
        let dim = labels.len();
        if product.len() != dim * dim {
            return Err(Error::InvalidAlgebra(format!("{} product entries for dimension {dim}", product.len())));
        }
        if unit.len() != dim || unit.field() != field {
            return Err(Error::InvalidAlgebra("unit has the wrong length or field".into()));
        }
        let mut product = product;
        for terms in &mut product {
            if terms.iter().any(|(k, c)| *k >= dim || c.field() != field) {
                return Err(Error::InvalidAlgebra("product term out of range or in another field".into()));
            }
            terms.retain(|(_, c)| !c.is_zero());
            terms.sort_by_key(|(k, _)| *k);
            if terms.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::InvalidAlgebra("repeated index in a product entry".into()));
            }
        }
        Ok(StructuredAlgebra { id: fresh_id(), field, dim, labels, product, unit, coalgebra: None, antipode: None })
    }

    /// `product[i][j]` is the coefficient vector of `e_i e_j`.
    pub fn from_dense(field: FieldSpec, labels: Vec<String>, product: &[Vec<Vector>], unit: Vector) -> Result<Self> {
        let dim = labels.len();
        if product.len() != dim || product.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidAlgebra("product table has the wrong shape".into()));
        }
        let mut terms = Vec::with_capacity(dim * dim);
        for row in product {
            for v in row {
                if v.len() != dim {
                    return Err(Error::InvalidAlgebra("product vector has the wrong length".into()));
                }
                terms.push(v.nonzero().map(|(k, c)| (k, c.clone())).collect());
            }
        }
        Self::new(field, labels, terms, unit)
    }

    pub fn with_coalgebra(mut self, coproduct: Vec<Vec<CoproductTerm>>, counit: Vector) -> Result<Self> {
        if coproduct.len() != self.dim || counit.len() != self.dim || counit.field() != self.field {
            return Err(Error::InvalidAlgebra("coalgebra data has the wrong shape".into()));
        }
        if coproduct.iter().flatten().any(|(c, p, q)| *p >= self.dim || *q >= self.dim || c.field() != self.field) {
            return Err(Error::InvalidAlgebra("coproduct term out of range or in another field".into()));
        }
        let coproduct = coproduct
            .into_iter()
            .map(|ts| ts.into_iter().filter(|(c, _, _)| !c.is_zero()).collect())
            .collect();
        self.coalgebra = Some(Coalgebra { coproduct, counit });
        self.id = fresh_id();
        Ok(self)
    }

    pub fn with_antipode(mut self, antipode: Matrix) -> Result<Self> {
        if antipode.rows() != self.dim || antipode.cols() != self.dim || antipode.field() != self.field {
            return Err(Error::InvalidAlgebra("antipode matrix has the wrong shape".into()));
        }
        self.antipode = Some(antipode);
        self.id = fresh_id();
        Ok(self)
    }

    pub fn without_antipode(mut self) -> Self {
        self.antipode = None;
        self.id = fresh_id();
        self
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn product_terms(&self, i: usize, j: usize) -> &Terms {
        &self.product[i * self.dim + j]
    }

    pub fn has_coalgebra(&self) -> bool {
        self.coalgebra.is_some()
    }

    fn coalg(&self) -> Result<&Coalgebra> {
        self.coalgebra.as_ref().ok_or(Error::MissingStructure("coproduct and counit"))
    }

    pub fn coproduct_terms(&self, i: usize) -> Result<&[CoproductTerm]> {
        Ok(&self.coalg()?.coproduct[i])
    }

    pub fn counit(&self) -> Result<&Vector> {
        Ok(&self.coalg()?.counit)
    }

    pub fn antipode(&self) -> Option<&Matrix> {
        self.antipode.as_ref()
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::basis(self.field, self.dim, i)
    }

    pub fn zero(&self) -> Vector {
        Vector::zeros(self.field, self.dim)
    }

    // ---- raw coefficient-level arithmetic ----

    fn add_product_into(&self, acc: &mut Vector, i: usize, j: usize, s: &Scalar) {
        for (k, c) in self.product_terms(i, j) {
            acc.add_at(*k, &(s * c));
        }
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = self.zero();
        for (i, a) in x.nonzero() {
            for (j, b) in y.nonzero() {
                self.add_product_into(&mut out, i, j, &(a * b));
            }
        }
        out
    }

    pub fn mul3(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        self.mul(&self.mul(x, y), z)
    }

    /// Matrix of `m ↦ m·x` under the row convention: row `j` is `e_j x`.
    /// This is the action of `x` on the regular right module.
    pub fn right_action_matrix(&self, x: &Vector) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let r = self.mul(&self.basis(j), x);
            m.set_row(j, &r);
        }
        m
    }

    /// Row `j` is `x e_j`.
    pub fn left_action_matrix(&self, x: &Vector) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let r = self.mul(x, &self.basis(j));
            m.set_row(j, &r);
        }
        m
    }

    /// Two-sided inverse, solving `x y = 1` and `z x = 1` separately.
    pub fn inverse_of(&self, x: &Vector) -> Option<Vector> {
        if x == &self.unit {
            return Some(x.clone());
        }
        let right = self.left_action_matrix(x).transpose().solve(&self.unit).ok()??;
        let left = self.right_action_matrix(x).transpose().solve(&self.unit).ok()??;
        (right == left).then_some(right)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.product_terms(i, j) == self.product_terms(j, i)))
    }

    pub fn counit_of(&self, x: &Vector) -> Result<Scalar> {
        Ok(self.counit()?.dot(x))
    }

    pub fn coproduct_of(&self, x: &Vector) -> Result<SparseTensor> {
        let co = self.coalg()?;
        let mut t = SparseTensor::zero(self.field);
        for (i, a) in x.nonzero() {
            for (c, p, q) in &co.coproduct[i] {
                t.add_term(p * self.dim + q, &(a * c));
            }
        }
        Ok(t)
    }

    pub fn antipode_of(&self, x: &Vector) -> Result<Vector> {
        let s = self.antipode.as_ref().ok_or(Error::MissingStructure("antipode"))?;
        Ok(s.vec_mul(x))
    }

    /// Product in `A^{⊗order}`, leg by leg.
    pub fn tensor_mul(&self, order: usize, a: &SparseTensor, b: &SparseTensor) -> SparseTensor {
        let mut out = SparseTensor::zero(self.field);
        for (ia, ca) in a.iter() {
            let la = split_index(ia, self.dim, order);
            for (ib, cb) in b.iter() {
                let lb = split_index(ib, self.dim, order);
                let coeff = ca * cb;
                // expand leg products one by one
                let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::with_capacity(order), coeff)];
                for leg in 0..order {
                    let terms = self.product_terms(la[leg], lb[leg]);
                    let mut next = Vec::with_capacity(partial.len() * terms.len());
                    for (legs, c) in &partial {
                        for (k, v) in terms {
                            let mut l = legs.clone();
                            l.push(*k);
                            next.push((l, c * v));
                        }
                    }
                    partial = next;
                }
                for (legs, c) in partial {
                    out.add_term(join_index(&legs, self.dim), &c);
                }
            }
        }
        out
    }

    pub fn delta_one(&self) -> Result<SparseTensor> {
        self.coproduct_of(&self.unit)
    }

    /// `ε_t(x) = (ε ⊗ id)(Δ(1)(x ⊗ 1))`
    pub fn target_map(&self, x: &Vector) -> Result<Vector> {
        let d1 = self.delta_one()?;
        let eps = self.counit()?;
        let mut out = self.zero();
        for (idx, c) in d1.iter() {
            let (p, q) = (idx / self.dim, idx % self.dim);
            let e = eps.dot(&self.mul(&self.basis(p), x));
            out.add_at(q, &(c * &e));
        }
        Ok(out)
    }

    /// `ε_s(x) = (id ⊗ ε)((1 ⊗ x)Δ(1))`
    pub fn source_map(&self, x: &Vector) -> Result<Vector> {
        let d1 = self.delta_one()?;
        let eps = self.counit()?;
        let mut out = self.zero();
        for (idx, c) in d1.iter() {
            let (p, q) = (idx / self.dim, idx % self.dim);
            let e = eps.dot(&self.mul(x, &self.basis(q)));
            out.add_at(p, &(c * &e));
        }
        Ok(out)
    }

    // ---- element API ----

    pub fn element(&self, coeffs: Vector) -> Result<AlgebraElement> {
        if coeffs.len() != self.dim {
            return Err(Error::ShapeMismatch(format!("element of length {} in dimension {}", coeffs.len(), self.dim)));
        }
        if coeffs.field() != self.field {
            return Err(Error::MixedFields);
        }
        Ok(AlgebraElement { algebra: self.id, coeffs })
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement { algebra: self.id, coeffs: self.basis(i) }
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement { algebra: self.id, coeffs: self.unit.clone() }
    }

    fn owns(&self, x: &AlgebraElement) -> Result<()> {
        if x.algebra != self.id {
            return Err(Error::MixedAlgebras);
        }
        Ok(())
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(AlgebraElement { algebra: self.id, coeffs: self.mul(&x.coeffs, &y.coeffs) })
    }

    pub fn find_inverse(&self, x: &AlgebraElement) -> Result<Option<AlgebraElement>> {
        self.owns(x)?;
        Ok(self.inverse_of(&x.coeffs).map(|coeffs| AlgebraElement { algebra: self.id, coeffs }))
    }

    pub fn epsilon_t(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.owns(x)?;
        Ok(AlgebraElement { algebra: self.id, coeffs: self.target_map(&x.coeffs)? })
    }

    pub fn epsilon_s(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.owns(x)?;
        Ok(AlgebraElement { algebra: self.id, coeffs: self.source_map(&x.coeffs)? })
    }

    /// `Δ(x) = x ⊗ x` and `ε(x) = 1`.
    pub fn is_grouplike(&self, x: &AlgebraElement) -> Result<bool> {
        self.owns(x)?;
        self.grouplike_vec(&x.coeffs)
    }

    /// `x` invertible and `Δ(x) = (x ⊗ x)Δ(1)`.
    pub fn is_right_grouplike(&self, x: &AlgebraElement) -> Result<bool> {
        self.owns(x)?;
        self.right_grouplike_vec(&x.coeffs)
    }

    pub(crate) fn grouplike_vec(&self, x: &Vector) -> Result<bool> {
        if !self.counit_of(x)?.is_one() {
            return Ok(false);
        }
        let xx = SparseTensor::from_vector(&x.kron(x));
        Ok(self.coproduct_of(x)? == xx)
    }

    pub(crate) fn right_grouplike_vec(&self, x: &Vector) -> Result<bool> {
        let xx = SparseTensor::from_vector(&x.kron(x));
        let rhs = self.tensor_mul(2, &xx, &self.delta_one()?);
        if self.coproduct_of(x)? != rhs {
            return Ok(false);
        }
        Ok(self.inverse_of(x).is_some())
    }

    /// All grouplike elements over a finite field, by exhausting the affine
    /// hyperplane `ε(x) = 1`.
    pub fn enumerate_grouplikes(&self, max_carrier: u128) -> Result<Vec<AlgebraElement>> {
        let p = self.field.order().ok_or(Error::CarrierTooLarge { size: u128::MAX, bound: max_carrier })?;
        let size = (p as u128).checked_pow(self.dim as u32).unwrap_or(u128::MAX);
        if size > max_carrier {
            return Err(Error::CarrierTooLarge { size, bound: max_carrier });
        }
        let eps = self.counit()?.clone();
        let Some(pivot) = eps.nonzero().map(|(i, _)| i).next() else {
            return Ok(Vec::new());
        };
        let free: Vec<usize> = (0..self.dim).filter(|&i| i != pivot).collect();
        let elems = self.field.elements().expect("finite field");
        let inv_pivot = eps.get(pivot).inverse()?;
        let mut out = Vec::new();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut x = self.zero();
            let mut rest = self.field.zero();
            for (d, &i) in digits.iter().zip(&free) {
                x.set(i, elems[*d].clone());
                rest = &rest + &(eps.get(i) * &elems[*d]);
            }
            x.set(pivot, &(&self.field.one() - &rest) * &inv_pivot);
            if self.grouplike_vec(&x)? {
                out.push(AlgebraElement { algebra: self.id, coeffs: x });
            }
            if !advance(&mut digits, elems.len()) {
                break;
            }
        }
        Ok(out)
    }

    /// Basis of `{z : z e_i = e_i z for all i}` from the kernel of the
    /// commutator map.
    pub fn center(&self) -> Vec<AlgebraElement> {
        let n = self.dim;
        let mut m = Matrix::zeros(self.field, n * n, n);
        for j in 0..n {
            for i in 0..n {
                let c = &self.mul(&self.basis(j), &self.basis(i)) - &self.mul(&self.basis(i), &self.basis(j));
                for (k, v) in c.nonzero() {
                    m.set(i * n + k, j, v.clone());
                }
            }
        }
        m.kernel_basis().into_iter().map(|coeffs| AlgebraElement { algebra: self.id, coeffs }).collect()
    }

    /// Image of `ε_s` or `ε_t` in echelon form, verified to be closed under
    /// multiplication.
    pub fn counital_subalgebra(&self, which: Counital) -> Result<Vec<AlgebraElement>> {
        let mut images = Matrix::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            let v = match which {
                Counital::Source => self.source_map(&self.basis(i))?,
                Counital::Target => self.target_map(&self.basis(i))?,
            };
            images.set_row(i, &v);
        }
        let basis = images.row_space_basis();
        let rows = basis.row_vectors();
        for a in &rows {
            for b in &rows {
                if basis.coordinates_of(&self.mul(a, b))?.is_none() {
                    return Err(Error::InvalidAlgebra("counital subalgebra is not closed under multiplication".into()));
                }
            }
        }
        Ok(rows.into_iter().map(|coeffs| AlgebraElement { algebra: self.id, coeffs }).collect())
    }

    // ---- axiom checks ----

    pub fn check_associativity(&self) -> Check {
        let n = self.dim;
        let witness = (0..n).into_par_iter().find_map_first(|i| {
            for j in 0..n {
                let ij = self.product_terms(i, j);
                for k in 0..n {
                    let jk = self.product_terms(j, k);
                    if ij.is_empty() && jk.is_empty() {
                        continue;
                    }
                    let mut lhs = SparseTensor::zero(self.field);
                    for (l, c) in ij {
                        for (m, v) in self.product_terms(*l, k) {
                            lhs.add_term(*m, &(c * v));
                        }
                    }
                    let mut rhs = SparseTensor::zero(self.field);
                    for (l, c) in jk {
                        for (m, v) in self.product_terms(i, *l) {
                            rhs.add_term(*m, &(c * v));
                        }
                    }
                    if lhs != rhs {
                        return Some(vec![i, j, k]);
                    }
                }
            }
            None
        });
        Check::from_witness(law::ASSOCIATIVITY, witness)
    }

    pub fn check_unit(&self) -> Check {
        let witness = (0..self.dim).find(|&i| {
            let e = self.basis(i);
            self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e
        });
        Check::from_witness(law::UNIT, witness.map(|i| vec![i]))
    }

    fn coproduct_twice(&self, i: usize, left: bool) -> Result<SparseTensor> {
        let n = self.dim;
        let mut out = SparseTensor::zero(self.field);
        for (c, p, q) in self.coproduct_terms(i)? {
            let inner = if left { self.coproduct_terms(*p)? } else { self.coproduct_terms(*q)? };
            for (c2, p2, q2) in inner {
                let idx = if left { join_index(&[*p2, *q2, *q], n) } else { join_index(&[*p, *p2, *q2], n) };
                out.add_term(idx, &(c * c2));
            }
        }
        Ok(out)
    }

    pub fn check_coassociativity(&self) -> Result<Check> {
        for i in 0..self.dim {
            if self.coproduct_twice(i, true)? != self.coproduct_twice(i, false)? {
                return Ok(Check::fail(law::COASSOCIATIVITY, vec![i]));
            }
        }
        Ok(Check::pass(law::COASSOCIATIVITY))
    }

    pub fn check_counit(&self) -> Result<Check> {
        let eps = self.counit()?;
        for i in 0..self.dim {
            let mut left = self.zero();
            let mut right = self.zero();
            for (c, p, q) in self.coproduct_terms(i)? {
                left.add_at(*q, &(c * eps.get(*p)));
                right.add_at(*p, &(c * eps.get(*q)));
            }
            let e = self.basis(i);
            if left != e || right != e {
                return Ok(Check::fail(law::COUNIT, vec![i]));
            }
        }
        Ok(Check::pass(law::COUNIT))
    }

    pub fn check_multiplicative(&self) -> Result<Check> {
        let n = self.dim;
        let deltas: Vec<SparseTensor> = (0..n).map(|i| self.coproduct_of(&self.basis(i))).collect::<Result<_>>()?;
        let witness = (0..n).into_par_iter().find_map_first(|i| {
            for j in 0..n {
                let mut prod = self.zero();
                self.add_product_into(&mut prod, i, j, &self.field.one());
                let lhs = self.coproduct_of(&prod).expect("coalgebra present");
                let rhs = self.tensor_mul(2, &deltas[i], &deltas[j]);
                if lhs != rhs {
                    return Some(vec![i, j]);
                }
            }
            None
        });
        Ok(Check::from_witness(law::MULTIPLICATIVE, witness))
    }

    /// `Δ²(1) = (Δ(1) ⊗ 1)(1 ⊗ Δ(1)) = (1 ⊗ Δ(1))(Δ(1) ⊗ 1)`; the witness
    /// is the leg triple of the first differing coefficient.
    pub fn check_weak_unit(&self) -> Result<Check> {
        let n = self.dim;
        let d1 = self.delta_one()?;
        let one = SparseTensor::from_vector(&self.unit);
        let mut dd1 = SparseTensor::zero(self.field);
        for (idx, c) in d1.iter() {
            let (p, q) = (idx / n, idx % n);
            for (c2, p2, q2) in self.coproduct_terms(p)? {
                dd1.add_term(join_index(&[*p2, *q2, q], n), &(c * c2));
            }
        }
        let d1_one = d1.outer(&one, n);
        let one_d1 = one.outer(&d1, n * n);
        let a = self.tensor_mul(3, &d1_one, &one_d1);
        let b = self.tensor_mul(3, &one_d1, &d1_one);
        for rhs in [&a, &b] {
            if let Some(k) = dd1.first_difference(rhs) {
                return Ok(Check::fail(law::WEAK_UNIT, split_index(k, n, 3)));
            }
        }
        Ok(Check::pass(law::WEAK_UNIT))
    }

    /// `ε(xyz) = Σ ε(x y₁) ε(y₂ z) = Σ ε(x y₂) ε(y₁ z)` on basis triples.
    pub fn check_weak_counit(&self) -> Result<Check> {
        let n = self.dim;
        let eps = self.counit()?.clone();
        // pair[i][k] = ε(e_i e_k)
        let pair: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|k| self.product_terms(i, k).iter().fold(self.field.zero(), |acc, (l, c)| &acc + &(c * eps.get(*l)))).collect())
            .collect();
        let cops: Vec<Vec<CoproductTerm>> = (0..n).map(|j| self.coproduct_terms(j).map(|t| t.to_vec())).collect::<Result<_>>()?;
        let witness = (0..n).into_par_iter().find_map_first(|i| {
            for (j, cop) in cops.iter().enumerate() {
                for k in 0..n {
                    let lhs = self.product_terms(i, j).iter().fold(self.field.zero(), |acc, (l, c)| &acc + &(c * &pair[*l][k]));
                    let mut r1 = self.field.zero();
                    let mut r2 = self.field.zero();
                    for (c, p, q) in cop {
                        r1 = &r1 + &(c * &(&pair[i][*p] * &pair[*q][k]));
                        r2 = &r2 + &(c * &(&pair[i][*q] * &pair[*p][k]));
                    }
                    if lhs != r1 || lhs != r2 {
                        return Some(vec![i, j, k]);
                    }
                }
            }
            None
        });
        Ok(Check::from_witness(law::WEAK_COUNIT, witness))
    }

    pub fn check_strong_unit(&self) -> Result<Check> {
        let d1 = self.delta_one()?;
        let one = SparseTensor::from_vector(&self.unit);
        let oo = one.outer(&one, self.dim);
        Ok(match d1.first_difference(&oo) {
            None => Check::pass(law::STRONG_UNIT),
            Some(k) => Check::fail(law::STRONG_UNIT, split_index(k, self.dim, 2)),
        })
    }

    pub fn check_strong_counit(&self) -> Result<Check> {
        let eps = self.counit()?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let prod = self.mul(&self.basis(i), &self.basis(j));
                if eps.dot(&prod) != eps.get(i) * eps.get(j) {
                    return Ok(Check::fail(law::STRONG_COUNIT, vec![i, j]));
                }
            }
        }
        Ok(Check::pass(law::STRONG_COUNIT))
    }

    /// The three weak antipode laws on every basis element:
    /// `S(x₁)x₂ = ε_s(x)`, `x₁S(x₂) = ε_t(x)`, `S(x₁)x₂S(x₃) = S(x)`.
    pub fn check_antipode_laws(&self) -> Result<Vec<Check>> {
        let s = self.antipode.as_ref().ok_or(Error::MissingStructure("antipode"))?;
        let n = self.dim;
        let srow: Vec<Vector> = s.row_vectors();
        let mut source = None;
        let mut target = None;
        let mut sandwich = None;
        for i in 0..n {
            let mut sx = self.zero();
            let mut xs = self.zero();
            let mut sxs = self.zero();
            for (c, p, q) in self.coproduct_terms(i)? {
                sx.axpy(c, &self.mul(&srow[*p], &self.basis(*q)));
                xs.axpy(c, &self.mul(&self.basis(*p), &srow[*q]));
                for (c2, p2, q2) in self.coproduct_terms(*p)? {
                    let v = self.mul3(&srow[*p2], &self.basis(*q2), &srow[*q]);
                    sxs.axpy(&(c * c2), &v);
                }
            }
            let e = self.basis(i);
            if source.is_none() && sx != self.source_map(&e)? {
                source = Some(vec![i]);
            }
            if target.is_none() && xs != self.target_map(&e)? {
                target = Some(vec![i]);
            }
            if sandwich.is_none() && sxs != srow[i] {
                sandwich = Some(vec![i]);
            }
        }
        Ok(vec![
            Check::from_witness(law::ANTIPODE_SOURCE, source),
            Check::from_witness(law::ANTIPODE_TARGET, target),
            Check::from_witness(law::ANTIPODE_SANDWICH, sandwich),
        ])
    }

    fn algebra_checks(&self) -> Verdict {
        Verdict { checks: vec![self.check_associativity(), self.check_unit()] }
    }

    fn bialgebra_checks(&self) -> Result<(Verdict, Check, Check)> {
        let mut v = self.algebra_checks();
        v.push(self.check_coassociativity()?);
        v.push(self.check_counit()?);
        v.push(self.check_multiplicative()?);
        v.push(self.check_weak_unit()?);
        v.push(self.check_weak_counit()?);
        Ok((v, self.check_strong_unit()?, self.check_strong_counit()?))
    }

    fn classify(checks: &Verdict, strong: bool, antipode: bool) -> Classification {
        if !checks.all_passed() {
            return Classification::Invalid;
        }
        match (strong, antipode) {
            (true, true) => Classification::Hopf,
            (true, false) => Classification::Bialgebra,
            (false, true) => Classification::WeakHopf,
            (false, false) => Classification::WeakBialgebra,
        }
    }

    pub fn check_weak_bialgebra(&self) -> Result<WeakHopfVerdict> {
        let (checks, su, sc) = self.bialgebra_checks()?;
        let classification = Self::classify(&checks, su.passed && sc.passed, false);
        Ok(WeakHopfVerdict { checks, strong_unit: Some(su), strong_counit: Some(sc), classification })
    }

    /// Bialgebra laws plus the three antipode laws.
    pub fn check_antipode(&self) -> Result<WeakHopfVerdict> {
        if self.antipode.is_none() {
            return Err(Error::MissingStructure("antipode"));
        }
        let (mut checks, su, sc) = self.bialgebra_checks()?;
        for c in self.check_antipode_laws()? {
            checks.push(c);
        }
        let classification = Self::classify(&checks, su.passed && sc.passed, true);
        Ok(WeakHopfVerdict { checks, strong_unit: Some(su), strong_counit: Some(sc), classification })
    }

    /// Runs every suite the present data allows.
    pub fn verify(&self) -> WeakHopfVerdict {
        if self.coalgebra.is_none() {
            let checks = self.algebra_checks();
            let classification = if checks.all_passed() { Classification::Algebra } else { Classification::Invalid };
            return WeakHopfVerdict { checks, strong_unit: None, strong_counit: None, classification };
        }
        let r = if self.antipode.is_some() { self.check_antipode() } else { self.check_weak_bialgebra() };
        r.expect("coalgebra present")
    }

    /// Same algebra with one coproduct coefficient negated; used to build
    /// negative controls.
    pub fn with_flipped_coproduct_sign(&self, basis: usize, term: usize) -> Result<Self> {
        let co = self.coalg()?;
        let mut cop = co.coproduct.clone();
        let t = cop
            .get_mut(basis)
            .and_then(|ts| ts.get_mut(term))
            .ok_or_else(|| Error::InvalidAlgebra("no such coproduct term".into()))?;
        t.0 = -&t.0;
        self.clone().with_coalgebra(cop, co.counit.clone())
    }
}

pub(crate) fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// The group algebra `K[G]`: basis `g`, `Δ(g) = g ⊗ g`, `ε(g) = 1`,
/// `S(g) = g⁻¹`.
pub fn group_algebra(g: &FiniteGroup, field: FieldSpec) -> StructuredAlgebra {
    let n = g.order();
    let one = field.one();
    let product = (0..n * n).map(|ij| vec![(g.mul(ij / n, ij % n), one.clone())]).collect();
    let coproduct = (0..n).map(|x| vec![(one.clone(), x, x)]).collect();
    let mut s = Matrix::zeros(field, n, n);
    for x in 0..n {
        s.set(x, g.inv(x), one.clone());
    }
    StructuredAlgebra::new(field, g.names().to_vec(), product, Vector::basis(field, n, 0))
        .and_then(|a| a.with_coalgebra(coproduct, Vector::from_i64(field, &vec![1; n])))
        .and_then(|a| a.with_antipode(s))
        .expect("group algebra data is well-formed")
}

/// The function algebra `K(G)`: basis `δ_g`, pointwise product,
/// `Δ(δ_g) = Σ_{ab=g} δ_a ⊗ δ_b`, `ε(δ_g) = δ(g, 1)`, `S(δ_g) = δ_{g⁻¹}`.
pub fn function_algebra(g: &FiniteGroup, field: FieldSpec) -> StructuredAlgebra {
    let n = g.order();
    let one = field.one();
    let product = (0..n * n).map(|ij| if ij / n == ij % n { vec![(ij / n, one.clone())] } else { vec![] }).collect();
    let mut coproduct = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            coproduct[g.mul(a, b)].push((one.clone(), a, b));
        }
    }
    let mut s = Matrix::zeros(field, n, n);
    for x in 0..n {
        s.set(x, g.inv(x), one.clone());
    }
    let labels = g.names().iter().map(|s| format!("d_{s}")).collect();
    StructuredAlgebra::new(field, labels, product, Vector::from_i64(field, &vec![1; n]))
        .and_then(|a| a.with_coalgebra(coproduct, Vector::basis(field, n, 0)))
        .and_then(|a| a.with_antipode(s))
        .expect("function algebra data is well-formed")
}
