//! Dense exact vectors and matrices.
//!
//! Matrices act on row vectors from the right wherever a map is stored:
//! row `i` of a matrix is the image of basis vector `i`. Kronecker products
//! flatten the pair `(i, j)` to `i * dim_b + j`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Vector {
    pub fn zeros(field: FieldSpec, n: usize) -> Self {
        Vector { field, coeffs: vec![field.zero(); n] }
    }

    pub fn basis(field: FieldSpec, n: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, n);
        v.coeffs[i] = field.one();
        v
    }

    pub fn new(field: FieldSpec, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::MixedFields);
        }
        Ok(Vector { field, coeffs })
    }

    pub fn from_i64(field: FieldSpec, values: &[i64]) -> Self {
        Vector { field, coeffs: values.iter().map(|&v| field.from_i64(v)).collect() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn set(&mut self, i: usize, s: Scalar) {
        self.coeffs[i] = s;
    }

    pub fn add_at(&mut self, i: usize, s: &Scalar) {
        if !s.is_zero() {
            self.coeffs[i] = &self.coeffs[i] + s;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Nonzero entries in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector { field: self.field, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn dot(&self, o: &Vector) -> Scalar {
        self.coeffs
            .iter()
            .zip(&o.coeffs)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
    }

    fn check_len(&self, o: &Vector) -> Result<()> {
        if self.len() != o.len() {
            return Err(Error::ShapeMismatch(format!("vector lengths {} and {}", self.len(), o.len())));
        }
        if self.field != o.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Vector) -> Result<Vector> {
        self.check_len(o)?;
        Ok(Vector { field: self.field, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, o: &Vector) -> Result<Vector> {
        self.check_len(o)?;
        Ok(Vector { field: self.field, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() })
    }

    /// `self += s * o`
    pub fn axpy(&mut self, s: &Scalar, o: &Vector) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            if !b.is_zero() {
                *a = &*a + &(s * b);
            }
        }
    }

    /// Kronecker product of coefficient vectors.
    pub fn kron(&self, o: &Vector) -> Vector {
        let mut out = Vector::zeros(self.field, self.len() * o.len());
        for (i, a) in self.nonzero() {
            for (j, b) in o.nonzero() {
                out.coeffs[i * o.len() + j] = a * b;
            }
        }
        out
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, o: &Vector) -> Vector {
        self.try_add(o).expect("vector addition shape")
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, o: &Vector) -> Vector {
        self.try_sub(o).expect("vector subtraction shape")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            if r.iter().any(|c| c.field() != field) {
                return Err(Error::MixedFields);
            }
            data.extend(r);
        }
        Ok(Matrix { field, rows: nrows, cols, data })
    }

    pub fn from_row_vectors(field: FieldSpec, rows: &[Vector], cols: usize) -> Result<Self> {
        Self::from_rows(field, rows.iter().map(|v| v.coeffs().to_vec()).collect(), cols)
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| field.from_i64(v))).collect();
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.data[i * self.cols + j] = s;
    }

    pub fn add_at(&mut self, i: usize, j: usize, s: &Scalar) {
        if !s.is_zero() {
            let k = i * self.cols + j;
            self.data[k] = &self.data[k] + s;
        }
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> Vector {
        Vector { field: self.field, coeffs: self.row(i).to_vec() }
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row_vector(i)).collect()
    }

    pub fn set_row(&mut self, i: usize, v: &Vector) {
        debug_assert_eq!(v.len(), self.cols);
        self.data[i * self.cols..(i + 1) * self.cols].clone_from_slice(v.coeffs());
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|c| c * s).collect() }
    }

    fn check_same_shape(&self, o: &Matrix) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} against {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        if self.field != o.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Matrix) -> Result<Matrix> {
        self.check_same_shape(o)?;
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, o: &Matrix) -> Result<Matrix> {
        self.check_same_shape(o)?;
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// `self += s * o`
    pub fn axpy(&mut self, s: &Scalar, o: &Matrix) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a = &*a + &(s * b);
            }
        }
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        if self.field != o.field {
            return Err(Error::MixedFields);
        }
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `v * self`.
    pub fn vec_mul(&self, v: &Vector) -> Vector {
        assert_eq!(v.len(), self.rows, "row vector length");
        let mut out = Vector::zeros(self.field, self.cols);
        for (i, a) in v.nonzero() {
            for j in 0..self.cols {
                let b = self.get(i, j);
                if !b.is_zero() {
                    out.add_at(j, &(a * b));
                }
            }
        }
        out
    }

    /// Matrix times column vector, `self * v`.
    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!("{}x{} applied to length {}", self.rows, self.cols, v.len())));
        }
        let coeffs = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v.coeffs())
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect();
        Ok(Vector { field: self.field, coeffs })
    }

    /// Kronecker product; entry `((i1, i2), (j1, j2))` sits at
    /// `(i1 * b.rows + i2, j1 * b.cols + j2)`.
    pub fn kron(&self, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * b.rows, self.cols * b.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..b.rows {
                    for j2 in 0..b.cols {
                        let c = b.get(i2, j2);
                        if !c.is_zero() {
                            out.set(i1 * b.rows + i2, j1 * b.cols + j2, a * c);
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form with the pivot columns. Pivot choice is the
    /// first column with a nonzero entry at or below the current row, taking
    /// the first such row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j);
                if !v.is_zero() {
                    let s = v * &inv;
                    m.set(r, j, s);
                }
            }
            let pivot_row: Vec<(usize, Scalar)> =
                (c..m.cols).filter(|&j| !m.get(r, j).is_zero()).map(|j| (j, m.get(r, j).clone())).collect();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let cur = m.get(i, *j);
                    let nv = cur - &(&f * v);
                    m.set(i, *j, nv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column, read off
    /// the reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = Vector::zeros(self.field, self.cols);
                v.set(f, self.field.one());
                for (row, &p) in pivots.iter().enumerate() {
                    let e = r.get(row, f);
                    if !e.is_zero() {
                        v.set(p, -e);
                    }
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b`; `Ok(None)` when the system is inconsistent.
    pub fn solve(&self, b: &Vector) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!("{}x{} system with rhs of length {}", self.rows, self.cols, b.len())));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b.get(i).clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = Vector::zeros(self.field, self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x.set(p, r.get(row, self.cols).clone());
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p != n - 1) {
            return Ok(None);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(Some(inv))
    }

    /// Nonzero rows of the reduced echelon form: a canonical basis of the
    /// row space.
    pub fn row_space_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let mut out = Matrix::zeros(self.field, pivots.len(), self.cols);
        for i in 0..pivots.len() {
            for j in 0..self.cols {
                out.set(i, j, r.get(i, j).clone());
            }
        }
        out
    }

    /// Coordinates `c` with `c * self = v`, where the rows of `self` are a
    /// basis.
    pub fn coordinates_of(&self, v: &Vector) -> Result<Option<Vector>> {
        self.transpose().solve(v)
    }

    /// Stacks rows of `self` on top of `o`.
    pub fn vstack(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.cols {
            return Err(Error::ShapeMismatch("vstack column count".into()));
        }
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(Matrix { field: self.field, rows: self.rows + o.rows, cols: self.cols, data })
    }

    /// Copy of the rows listed in `idx`.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.set(r, j, self.get(i, j).clone());
            }
        }
        out
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        self.try_mul(o).expect("matrix product shape")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        self.try_add(o).expect("matrix sum shape")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        self.try_sub(o).expect("matrix difference shape")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", self.row_vector(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn identity_solves_to_rhs() {
        let q = FieldSpec::Rationals;
        let b = Vector::new(q, vec![q.from_ratio(1, 2).unwrap(), q.from_i64(-3), q.from_i64(7)]).unwrap();
        assert_eq!(Matrix::identity(q, 3).solve(&b).unwrap(), Some(b));
    }

    #[test]
    fn empty_matrix_inverts() {
        assert_eq!(Matrix::zeros(f(5), 0, 0).inverse().unwrap(), Some(Matrix::zeros(f(5), 0, 0)));
    }

    #[test]
    fn zero_map_has_full_kernel() {
        let q = FieldSpec::Rationals;
        assert_eq!(Matrix::zeros(q, 2, 2).kernel_basis().len(), 2);
    }

    #[test]
    fn all_ones_over_f3() {
        let f3 = f(3);
        let a = Matrix::from_i64(f3, &[&[1, 1], &[1, 1]]);
        let b = Vector::from_i64(f3, &[1, 1]);
        let x = a.solve(&b).unwrap().expect("consistent");
        assert_eq!(a.mul_vec(&x).unwrap(), b);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        // x1 free: x0 = -x1 = 2 x1 in F_3
        assert_eq!(k[0], Vector::from_i64(f3, &[2, 1]));
        assert!(a.mul_vec(&k[0]).unwrap().is_zero());
    }

    #[test]
    fn inconsistent_system() {
        let q = FieldSpec::Rationals;
        let a = Matrix::from_i64(q, &[&[1, 1], &[1, 1]]);
        assert_eq!(a.solve(&Vector::from_i64(q, &[1, 2])).unwrap(), None);
        assert!(matches!(a.solve(&Vector::from_i64(q, &[1])), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn kron_of_identities() {
        let q = FieldSpec::Rationals;
        assert_eq!(Matrix::identity(q, 2).kron(&Matrix::identity(q, 3)), Matrix::identity(q, 6));
    }

    #[test]
    fn kron_on_basis_pairs() {
        let f5 = f(5);
        let a = Matrix::from_i64(f5, &[&[1, 2, 0], &[3, 4, 1]]);
        let b = Matrix::from_i64(f5, &[&[0, 1], &[2, 3], &[4, 4]]);
        let ab = a.kron(&b);
        for i in 0..2 {
            for j in 0..3 {
                let lhs = ab.vec_mul(&Vector::basis(f5, 2, i).kron(&Vector::basis(f5, 3, j)));
                let rhs = a.vec_mul(&Vector::basis(f5, 2, i)).kron(&b.vec_mul(&Vector::basis(f5, 3, j)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn inverse_of_singular_is_none() {
        let q = FieldSpec::Rationals;
        assert!(Matrix::from_i64(q, &[&[1, 2], &[2, 4]]).inverse().unwrap().is_none());
        let m = Matrix::from_i64(q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap().unwrap();
        assert!((&m * &inv).is_identity());
    }

    fn mat_strategy(p: u64, r: usize, c: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(0i64..p as i64, r * c).prop_map(move |v| {
            let field = FieldSpec::Prime(p);
            let rows: Vec<&[i64]> = v.chunks(c).collect();
            Matrix::from_i64(field, &rows)
        })
    }

    proptest! {
        #[test]
        fn kron_mixed_product(a in mat_strategy(5, 2, 2), b in mat_strategy(5, 2, 2),
                              c in mat_strategy(5, 2, 2), d in mat_strategy(5, 2, 2)) {
            prop_assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
        }

        #[test]
        fn solve_reproduces_rhs(a in mat_strategy(7, 3, 4), b in prop::collection::vec(0i64..7, 3)) {
            let b = Vector::from_i64(FieldSpec::Prime(7), &b);
            if let Some(x) = a.solve(&b).unwrap() {
                prop_assert_eq!(a.mul_vec(&x).unwrap(), b);
            } else {
                prop_assert!(a.rank() < 3);
            }
        }

        #[test]
        fn kernel_is_annihilated(a in mat_strategy(3, 3, 5)) {
            let k = a.kernel_basis();
            prop_assert_eq!(k.len() + a.rank(), 5);
            for v in &k {
                prop_assert!(a.mul_vec(v).unwrap().is_zero());
            }
        }

        #[test]
        fn kron_flatten_convention(a in mat_strategy(3, 2, 3), b in mat_strategy(3, 3, 2)) {
            let f3 = FieldSpec::Prime(3);
            let ab = a.kron(&b);
            for i in 0..2 {
                for j in 0..3 {
                    let flat = Vector::basis(f3, 6, i * 3 + j);
                    prop_assert_eq!(flat.clone(), Vector::basis(f3, 2, i).kron(&Vector::basis(f3, 3, j)));
                    prop_assert_eq!(
                        ab.vec_mul(&flat),
                        a.vec_mul(&Vector::basis(f3, 2, i)).kron(&b.vec_mul(&Vector::basis(f3, 3, j)))
                    );
                }
            }
        }
    }
}
