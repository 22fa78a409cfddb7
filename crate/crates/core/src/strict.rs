//! The strictification `A^str = K(G) ⊗ A ⊗ K[G]` of a (weak) Hopf algebra
//! with a weak group action, with its strict action and grading.
//!
//! Basis triples `(g, i, h)` stand for `δ_g ⊗ e_i ⊗ h` and are stored at
//! `(g * dim A + i) * |G| + h`.

use std::sync::Arc;

use crate::action::{check_g_grading, check_hopf_action, check_weak_action, GGrading, GHopfAlgebra, WeakGAction};
use crate::algebra::{Counital, StructuredAlgebra, Terms};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::group::FiniteGroup;
use crate::linalg::{Matrix, Vector};
use crate::tensor::SparseTensor;
use crate::verdict::{Check, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrictIndex {
    pub group_order: usize,
    pub dim_a: usize,
}

impl StrictIndex {
    pub fn dim(&self) -> usize {
        self.group_order * self.group_order * self.dim_a
    }

    pub fn index(&self, g: usize, i: usize, h: usize) -> usize {
        (g * self.dim_a + i) * self.group_order + h
    }

    pub fn split(&self, idx: usize) -> (usize, usize, usize) {
        let h = idx % self.group_order;
        let rest = idx / self.group_order;
        (rest / self.dim_a, rest % self.dim_a, h)
    }
}

fn layout(act: &WeakGAction) -> StrictIndex {
    StrictIndex { group_order: act.group().order(), dim_a: act.algebra().dim() }
}

fn labels(act: &WeakGAction) -> Vec<String> {
    let (g, a) = (act.group(), act.algebra());
    let ix = layout(act);
    (0..ix.dim())
        .map(|k| {
            let (x, i, y) = ix.split(k);
            format!("d:{}|a:{}|k:{}", g.name(x), a.label(i), g.name(y))
        })
        .collect()
}

/// `Σ_g δ_g ⊗ a ⊗ 1`-style embedding: `δ_g ⊗ a ⊗ h` as a vector.
fn embed(ix: &StrictIndex, field: FieldSpec, g: usize, a: &Vector, h: usize) -> Vector {
    let mut v = Vector::zeros(field, ix.dim());
    for (i, c) in a.nonzero() {
        v.set(ix.index(g, i, h), c.clone());
    }
    v
}

/// Product `(δ_g⊗a⊗h)(δ_{g'}⊗a'⊗h') = δ(gh', g') δ_{g'} ⊗ a φ_h(a') c_{h,h'} ⊗ hh'`
/// and unit `Σ_g δ_g ⊗ 1 ⊗ 1`, without validating the action first.
pub fn build_strict_algebra_unchecked(act: &WeakGAction) -> Result<StructuredAlgebra> {
    let (grp, a) = (act.group(), act.algebra());
    let ix = layout(act);
    let (n, f) = (ix.dim(), a.field());
    let phi_rows: Vec<Vec<Vector>> = act.phis().iter().map(|m| m.row_vectors()).collect();
    let mut product: Vec<Terms> = vec![Vec::new(); n * n];
    for g in 0..ix.group_order {
        for h in 0..ix.group_order {
            for h2 in 0..ix.group_order {
                let g2 = grp.mul(g, h2);
                let hh = grp.mul(h, h2);
                let c = act.c(h, h2);
                for j in 0..ix.dim_a {
                    let right = a.mul(&phi_rows[h][j], c);
                    for i in 0..ix.dim_a {
                        let w = a.mul(&a.basis(i), &right);
                        let terms = w.nonzero().map(|(k, s)| (ix.index(g2, k, hh), s.clone())).collect();
                        product[ix.index(g, i, h) * n + ix.index(g2, j, h2)] = terms;
                    }
                }
            }
        }
    }
    let mut unit = Vector::zeros(f, n);
    for g in 0..ix.group_order {
        for (i, c) in a.unit().nonzero() {
            unit.set(ix.index(g, i, 0), c.clone());
        }
    }
    StructuredAlgebra::new(f, labels(act), product, unit)
}

/// As [`build_strict_algebra_unchecked`], after confirming the action
/// satisfies every weak-action condition.
pub fn build_strict_algebra(act: &WeakGAction) -> Result<StructuredAlgebra> {
    let v = check_weak_action(act)?;
    if let Some(f) = v.first_failure() {
        return Err(Error::InvalidAction(f.to_string()));
    }
    build_strict_algebra_unchecked(act)
}

/// Attaches `Δ(δ_g⊗a⊗h) = Σ (δ_g⊗a₁⊗h) ⊗ (δ_g⊗a₂⊗h)` and `ε = ε_A` on the
/// middle leg.
pub fn build_strict_coalgebra(act: &WeakGAction, alg: StructuredAlgebra) -> Result<StructuredAlgebra> {
    let a = act.algebra();
    let ix = layout(act);
    let eps = a.counit()?;
    let mut coproduct = Vec::with_capacity(ix.dim());
    let mut counit = Vector::zeros(a.field(), ix.dim());
    for k in 0..ix.dim() {
        let (g, i, h) = ix.split(k);
        coproduct.push(
            a.coproduct_terms(i)?
                .iter()
                .map(|(c, p, q)| (c.clone(), ix.index(g, *p, h), ix.index(g, *q, h)))
                .collect(),
        );
        counit.set(k, eps.get(i).clone());
    }
    alg.with_coalgebra(coproduct, counit)
}

/// Attaches `S(δ_g⊗a⊗h) = δ_{gh⁻¹} ⊗ c_{h⁻¹,h}^{-1} φ_{h⁻¹}(S_A a) ⊗ h⁻¹`.
pub fn build_strict_antipode(act: &WeakGAction, alg: StructuredAlgebra) -> Result<StructuredAlgebra> {
    let (grp, a) = (act.group(), act.algebra());
    let ix = layout(act);
    let s_a = a.antipode().ok_or(Error::MissingStructure("antipode"))?;
    let mut s = Matrix::zeros(a.field(), ix.dim(), ix.dim());
    let mut c_inv = Vec::with_capacity(ix.group_order);
    for h in 0..ix.group_order {
        let hi = grp.inv(h);
        c_inv.push(a.inverse_of(act.c(hi, h)).ok_or(Error::NonInvertibleCompositor { g: hi, h })?);
    }
    for k in 0..ix.dim() {
        let (g, i, h) = ix.split(k);
        let hi = grp.inv(h);
        let w = a.mul(&c_inv[h], &act.apply(hi, &s_a.row_vector(i)));
        s.set_row(k, &embed(&ix, a.field(), grp.mul(g, hi), &w, hi));
    }
    alg.with_antipode(s)
}

/// Full weak Hopf structure; `checked` validates the action first.
pub fn build_strict_weak_hopf(act: &WeakGAction, checked: bool) -> Result<StructuredAlgebra> {
    let alg = if checked { build_strict_algebra(act)? } else { build_strict_algebra_unchecked(act)? };
    let a = act.algebra();
    let alg = if a.has_coalgebra() { build_strict_coalgebra(act, alg)? } else { return Ok(alg) };
    if a.antipode().is_some() {
        build_strict_antipode(act, alg)
    } else {
        Ok(alg)
    }
}

/// `φ^str_{g'}(δ_g⊗a⊗h) = δ_{g'g}⊗a⊗h`, `c ≡ 1`.
pub fn strict_action(grp: Arc<FiniteGroup>, dim_a: usize, alg: Arc<StructuredAlgebra>) -> Result<WeakGAction> {
    let ix = StrictIndex { group_order: grp.order(), dim_a };
    if ix.dim() != alg.dim() {
        return Err(Error::InvalidStrictification("dimension does not match |G|² dim A".into()));
    }
    let f = alg.field();
    let phi = (0..ix.group_order)
        .map(|x| {
            let mut m = Matrix::zeros(f, ix.dim(), ix.dim());
            for k in 0..ix.dim() {
                let (g, i, h) = ix.split(k);
                m.set(k, ix.index(grp.mul(x, g), i, h), f.one());
            }
            m
        })
        .collect();
    let c = vec![alg.unit().clone(); ix.group_order * ix.group_order];
    WeakGAction::new(grp, alg, phi, c)
}

/// `deg(δ_g⊗a⊗h) = x deg(a) x⁻¹` with `x = gh⁻¹`.
pub fn strict_grading(grp: Arc<FiniteGroup>, input: &GGrading) -> GGrading {
    let ix = StrictIndex { group_order: grp.order(), dim_a: input.degrees().len() };
    let degrees = (0..ix.dim())
        .map(|k| {
            let (g, i, h) = ix.split(k);
            grp.conj(grp.mul(g, grp.inv(h)), input.degree(i))
        })
        .collect();
    GGrading::new(grp, degrees).expect("degrees lie in the group")
}

/// The grading rule `deg(δ_g⊗a⊗h) = g deg(a) g⁻¹`, kept for comparison;
/// it is only multiplicative when the relevant elements commute.
pub fn conjugate_by_first_leg_grading(grp: Arc<FiniteGroup>, input: &GGrading) -> GGrading {
    let ix = StrictIndex { group_order: grp.order(), dim_a: input.degrees().len() };
    let degrees = (0..ix.dim())
        .map(|k| {
            let (g, i, _) = ix.split(k);
            grp.conj(g, input.degree(i))
        })
        .collect();
    GGrading::new(grp, degrees).expect("degrees lie in the group")
}

pub mod law {
    pub const CLOSED_FORM_TARGET: &str = "closed_form_target";
    pub const CLOSED_FORM_SOURCE: &str = "closed_form_source";
    pub const COUNITAL_TARGET: &str = "counital_target_is_function_algebra";
    pub const COUNITAL_SOURCE: &str = "counital_source_is_function_algebra";
    pub const DELTA_ONE: &str = "delta_one_diagonal";
    pub const DELTA_ONE_IDEMPOTENT: &str = "delta_one_idempotent";
    pub const HOMOMORPHISM: &str = "strict_action_homomorphism";
}

#[derive(Clone, Debug)]
pub struct Strictification {
    input: GHopfAlgebra,
    output: GHopfAlgebra,
    index: StrictIndex,
}

/// Builds the strictification after validating the input action.
pub fn strictify(input: &GHopfAlgebra) -> Result<Strictification> {
    strictify_impl(input, true)
}

/// Builds without validating the input, so a broken cocycle surfaces as
/// failed axioms in [`Strictification::verify`].
pub fn strictify_unchecked(input: &GHopfAlgebra) -> Result<Strictification> {
    strictify_impl(input, false)
}

fn strictify_impl(input: &GHopfAlgebra, checked: bool) -> Result<Strictification> {
    let act = input.action();
    let alg = Arc::new(build_strict_weak_hopf(act, checked)?);
    let grp = act.group().clone();
    let index = layout(act);
    let action = strict_action(grp.clone(), index.dim_a, alg)?;
    let grading = strict_grading(grp, input.grading());
    let output = GHopfAlgebra::new(action, grading)?;
    Ok(Strictification { input: input.clone(), output, index })
}

impl Strictification {
    pub fn input(&self) -> &GHopfAlgebra {
        &self.input
    }

    pub fn output(&self) -> &GHopfAlgebra {
        &self.output
    }

    pub fn algebra(&self) -> &Arc<StructuredAlgebra> {
        self.output.algebra()
    }

    pub fn base(&self) -> &Arc<StructuredAlgebra> {
        self.input.algebra()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.input.group()
    }

    pub fn input_action(&self) -> &WeakGAction {
        self.input.action()
    }

    pub fn index(&self) -> StrictIndex {
        self.index
    }

    pub fn field(&self) -> FieldSpec {
        self.base().field()
    }

    /// `δ_g ⊗ a ⊗ h`.
    pub fn element(&self, g: usize, a: &Vector, h: usize) -> Vector {
        embed(&self.index, self.field(), g, a, h)
    }

    /// `δ_g ⊗ 1 ⊗ 1`.
    pub fn e(&self, g: usize) -> Vector {
        self.element(g, self.base().unit(), 0)
    }

    /// Closed forms `ε_t(δ_g⊗a⊗h) = ε_A(a) δ_{gh⁻¹}⊗1⊗1` and
    /// `ε_s(δ_g⊗a⊗h) = ε_A(a) δ_g⊗1⊗1`.
    pub fn counital_closed_forms(&self, x: &Vector) -> Result<(Vector, Vector)> {
        let grp = self.group();
        let eps = self.base().counit()?;
        let mut t = Vector::zeros(self.field(), self.index.dim());
        let mut s = t.clone();
        for (k, c) in x.nonzero() {
            let (g, i, h) = self.index.split(k);
            let coeff: Scalar = c * eps.get(i);
            if coeff.is_zero() {
                continue;
            }
            t.axpy(&coeff, &self.e(grp.mul(g, grp.inv(h))));
            s.axpy(&coeff, &self.e(g));
        }
        Ok((t, s))
    }

    /// Closed forms against the generic counital maps on every basis element.
    pub fn check_closed_forms(&self) -> Result<Vec<Check>> {
        let alg = self.algebra();
        let mut bad_t = None;
        let mut bad_s = None;
        for k in 0..alg.dim() {
            let e = alg.basis(k);
            let (t, s) = self.counital_closed_forms(&e)?;
            if bad_t.is_none() && t != alg.target_map(&e)? {
                bad_t = Some(vec![k]);
            }
            if bad_s.is_none() && s != alg.source_map(&e)? {
                bad_s = Some(vec![k]);
            }
        }
        Ok(vec![Check::from_witness(law::CLOSED_FORM_TARGET, bad_t), Check::from_witness(law::CLOSED_FORM_SOURCE, bad_s)])
    }

    /// Both counital subalgebras are spanned by the orthogonal idempotents
    /// `δ_g⊗1⊗1`, so they are copies of `K(G)`.
    pub fn check_counital_subalgebras(&self) -> Result<Vec<Check>> {
        let alg = self.algebra();
        let n = self.group().order();
        let idem: Vec<Vector> = (0..n).map(|g| self.e(g)).collect();
        let span = Matrix::from_row_vectors(self.field(), &idem, alg.dim())?;
        let mut ortho = None;
        'outer: for g in 0..n {
            for h in 0..n {
                let p = alg.mul(&idem[g], &idem[h]);
                let expect = if g == h { idem[g].clone() } else { Vector::zeros(self.field(), alg.dim()) };
                if p != expect {
                    ortho = Some(vec![g, h]);
                    break 'outer;
                }
            }
        }
        let mut out = Vec::new();
        for (which, name) in [(Counital::Target, law::COUNITAL_TARGET), (Counital::Source, law::COUNITAL_SOURCE)] {
            let basis = alg.counital_subalgebra(which)?;
            let mut witness = ortho.clone();
            if witness.is_none() && basis.len() != n {
                witness = Some(vec![basis.len()]);
            }
            if witness.is_none() {
                for b in &basis {
                    if span.coordinates_of(b.coeffs())?.is_none() {
                        witness = Some(vec![n]);
                        break;
                    }
                }
            }
            out.push(Check::from_witness(name, witness).with_note(format!("dimension {}", basis.len())));
        }
        Ok(out)
    }

    /// `Δ(1) = Σ_g e_g ⊗ e_g` and `Δ(1)² = Δ(1)`.
    pub fn check_delta_one(&self) -> Result<Vec<Check>> {
        let alg = self.algebra();
        let d1 = alg.delta_one()?;
        let mut expect = SparseTensor::zero(self.field());
        for g in 0..self.group().order() {
            let e = SparseTensor::from_vector(&self.e(g));
            expect.add_scaled(&self.field().one(), &e.outer(&e, alg.dim()));
        }
        let diag = d1.first_difference(&expect).map(|k| vec![k / alg.dim(), k % alg.dim()]);
        let sq = alg.tensor_mul(2, &d1, &d1);
        let idem = sq.first_difference(&d1).map(|k| vec![k / alg.dim(), k % alg.dim()]);
        Ok(vec![Check::from_witness(law::DELTA_ONE, diag), Check::from_witness(law::DELTA_ONE_IDEMPOTENT, idem)])
    }

    /// `φ^str_g φ^str_h = φ^str_{gh}` as matrices.
    pub fn check_homomorphism(&self) -> Check {
        let grp = self.group();
        let act = self.output.action();
        let n = grp.order();
        let bad = (0..n * n).find(|&gh| {
            let (g, h) = (gh / n, gh % n);
            // row convention: x ↦ φ_g(φ_h(x)) is x · M_h · M_g
            &act.phi(h).clone() * act.phi(g) != *act.phi(grp.mul(g, h))
        });
        Check::from_witness(law::HOMOMORPHISM, bad.map(|gh| vec![gh / n, gh % n]))
    }

    /// Weak Hopf axioms of `A^str`, the strict action and grading, the
    /// closed forms and the counital subalgebras.
    pub fn verify(&self) -> Result<Verdict> {
        let alg = self.algebra();
        let act = self.output.action();
        let mut v = Verdict::new();
        let wh = alg.verify();
        v.extend_prefixed("algebra", wh.checks);
        if !v.all_passed() {
            return Ok(v);
        }
        v.extend_prefixed("action", check_weak_action(act)?);
        v.push(self.check_homomorphism());
        if alg.has_coalgebra() {
            v.extend_prefixed("hopf_action", check_hopf_action(act)?);
            v.extend_prefixed("grading", check_g_grading(alg, self.output.grading(), Some(act))?);
            for c in self.check_closed_forms()? {
                v.push(c);
            }
            for c in self.check_counital_subalgebras()? {
                v.push(c);
            }
            for c in self.check_delta_one()? {
                v.push(c);
            }
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{counterexample_action, law as act_law};
    use crate::algebra::{function_algebra, group_algebra, Classification};

    fn d4_strict(field: FieldSpec) -> Strictification {
        strictify(&GHopfAlgebra::with_trivial_grading(counterexample_action(field))).unwrap()
    }

    #[test]
    fn layout_round_trip() {
        let ix = StrictIndex { group_order: 4, dim_a: 2 };
        assert_eq!(ix.dim(), 32);
        for k in 0..32 {
            let (g, i, h) = ix.split(k);
            assert_eq!(ix.index(g, i, h), k);
        }
        assert_eq!(ix.index(1, 0, 2), 10);
    }

    #[test]
    fn product_example_uses_compositor() {
        let s = d4_strict(FieldSpec::Rationals);
        let (a, ix) = (s.algebra(), s.index());
        let x = a.basis(ix.index(0, 0, 1));
        let y = a.basis(ix.index(1, 0, 1));
        assert_eq!(a.mul(&x, &y), a.basis(ix.index(1, 1, 0)));
        // δ(gh', g') vanishes
        let z = a.basis(ix.index(2, 0, 1));
        assert!(a.mul(&x, &z).is_zero());
        assert_eq!(a.labels()[ix.index(1, 1, 3)], "d:t1|a:t|k:t1t2");
    }

    #[test]
    fn antipode_example() {
        let s = d4_strict(FieldSpec::Rationals);
        let (a, ix) = (s.algebra(), s.index());
        let x = a.basis(ix.index(1, 0, 1));
        assert_eq!(a.antipode_of(&x).unwrap(), a.basis(ix.index(0, 1, 1)));
        for g in 0..4 {
            assert_eq!(a.antipode_of(&s.e(g)).unwrap(), s.e(g));
        }
    }

    #[test]
    fn closed_form_examples() {
        let s = d4_strict(FieldSpec::Rationals);
        let (a, ix) = (s.algebra(), s.index());
        let (t, _) = s.counital_closed_forms(&a.basis(ix.index(1, 0, 2))).unwrap();
        assert_eq!(t, s.e(3));
        let (_, src) = s.counital_closed_forms(&a.basis(ix.index(1, 1, 2))).unwrap();
        assert_eq!(src, s.e(1));
    }

    #[test]
    fn d4_strictification_verifies() {
        for f in [FieldSpec::Rationals, FieldSpec::prime(5).unwrap()] {
            let s = d4_strict(f);
            assert_eq!(s.algebra().dim(), 32);
            let v = s.verify().unwrap();
            assert!(v.all_passed(), "{v}");
            assert_eq!(s.algebra().verify().classification, Classification::WeakHopf);
        }
    }

    #[test]
    fn corrupted_cocycle_breaks_associativity() {
        let act = counterexample_action(FieldSpec::Rationals);
        let one = act.algebra().unit().clone();
        let bad = act.with_compositor(1, 1, one).unwrap();
        assert!(matches!(build_strict_algebra(&bad), Err(Error::InvalidAction(_))));
        let s = strictify_unchecked(&GHopfAlgebra::with_trivial_grading(bad)).unwrap();
        let v = s.verify().unwrap();
        let f = v.first_failure().unwrap();
        assert_eq!(f.name, "algebra.associativity");
        assert_eq!(f.witness.as_ref().unwrap().len(), 3);
    }

    #[test]
    fn trivial_group_preserves_structure() {
        let a = Arc::new(group_algebra(&FiniteGroup::cyclic(3), FieldSpec::Rationals));
        let act = WeakGAction::trivial(Arc::new(FiniteGroup::trivial()), a.clone());
        let s = strictify(&GHopfAlgebra::with_trivial_grading(act)).unwrap();
        let b = s.algebra();
        assert_eq!(b.dim(), a.dim());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(b.product_terms(i, j), a.product_terms(i, j));
            }
            assert_eq!(b.coproduct_terms(i).unwrap(), a.coproduct_terms(i).unwrap());
        }
        assert_eq!(b.antipode(), a.antipode());
    }

    #[test]
    fn strict_action_examples() {
        let s = d4_strict(FieldSpec::Rationals);
        let act = s.output().action();
        assert!(act.phi(0).is_identity());
        let (a, ix) = (s.algebra(), s.index());
        assert_eq!(act.apply(1, &a.basis(ix.index(2, 1, 3))), a.basis(ix.index(3, 1, 3)));
        assert!((act.phi(1) * act.phi(1)).is_identity());
    }

    #[test]
    fn graded_input_over_abelian_group() {
        // K(ℤ/2) with deg δ_g = g, trivially acted on by ℤ/2
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let a = Arc::new(function_algebra(&z2, FieldSpec::Rationals));
        let act = WeakGAction::trivial(z2.clone(), a);
        let grading = GGrading::new(z2.clone(), vec![0, 1]).unwrap();
        let s = strictify(&GHopfAlgebra::new(act, grading).unwrap()).unwrap();
        let ix = s.index();
        for g in 0..2 {
            for h in 0..2 {
                assert_eq!(s.output().grading().degree(ix.index(g, 1, h)), 1);
            }
        }
        assert!(s.verify().unwrap().all_passed());
        let sum = (0..2).fold(Matrix::zeros(FieldSpec::Rationals, 8, 8), |acc, g| {
            acc.try_add(&s.output().grading().projector(FieldSpec::Rationals, g)).unwrap()
        });
        assert!(sum.is_identity());
    }

    #[test]
    fn nonabelian_grading_needs_the_corrected_rule() {
        // K(S3) graded by deg δ_x = x, with S3 acting by conjugation
        let f5 = FieldSpec::prime(5).unwrap();
        let s3 = Arc::new(FiniteGroup::dihedral(3));
        let a = Arc::new(function_algebra(&s3, f5));
        let phi = (0..6)
            .map(|g| {
                let mut m = Matrix::zeros(f5, 6, 6);
                for x in 0..6 {
                    m.set(x, s3.conj(g, x), f5.one());
                }
                m
            })
            .collect();
        let c = vec![a.unit().clone(); 36];
        let act = WeakGAction::new(s3.clone(), a, phi, c).unwrap();
        let grading = GGrading::new(s3.clone(), (0..6).collect()).unwrap();
        let input = GHopfAlgebra::new(act, grading.clone()).unwrap();
        assert!(input.check().unwrap().all_passed());
        let s = strictify(&input).unwrap();
        assert_eq!(s.algebra().dim(), 216);
        let good = check_g_grading(s.algebra(), s.output().grading(), Some(s.output().action())).unwrap();
        assert!(good.all_passed(), "{good}");
        let naive = conjugate_by_first_leg_grading(s3.clone(), &grading);
        let bad = check_g_grading(s.algebra(), &naive, Some(s.output().action())).unwrap();
        assert!(!bad.passed(act_law::COMPONENTS));
    }
}
