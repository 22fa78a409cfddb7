//! Weak group actions by algebra automorphisms, group gradings, and the
//! bundled G-Hopf algebra.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{group_algebra, StructuredAlgebra};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::{FiniteGroup, GroupExtension};
use crate::linalg::{Matrix, Vector};
use crate::tensor::{map_pair, SparseTensor};
use crate::verdict::{Check, Verdict};

/// Compositor table of the Klein-four action on `K[ℤ/2]`, as kernel indices
/// (0 = 1, 1 = t), rows `g`, columns `h`, in the order 1, t1, t2, t1t2.
pub const COUNTEREXAMPLE_TABLE: [[usize; 4]; 4] = [
    [0, 0, 0, 0],
    [0, 1, 0, 1],
    [0, 1, 0, 1],
    [0, 0, 0, 0],
];

#[derive(Clone, Debug)]
pub struct WeakGAction {
    group: Arc<FiniteGroup>,
    algebra: Arc<StructuredAlgebra>,
    phi: Vec<Matrix>,
    c: Vec<Vector>,
}

impl WeakGAction {
    /// `phi[g]` has row `i` equal to `φ_g(e_i)`; `c[g * |G| + h]` is `c_{g,h}`.
    pub fn new(group: Arc<FiniteGroup>, algebra: Arc<StructuredAlgebra>, phi: Vec<Matrix>, c: Vec<Vector>) -> Result<Self> {
        let (n, d, f) = (group.order(), algebra.dim(), algebra.field());
        if phi.len() != n || phi.iter().any(|m| m.rows() != d || m.cols() != d || m.field() != f) {
            return Err(Error::InvalidAction("one d×d matrix per group element expected".into()));
        }
        if c.len() != n * n || c.iter().any(|v| v.len() != d || v.field() != f) {
            return Err(Error::InvalidAction("one compositor per pair of group elements expected".into()));
        }
        Ok(WeakGAction { group, algebra, phi, c })
    }

    /// `φ_g = id`, `c ≡ 1`.
    pub fn trivial(group: Arc<FiniteGroup>, algebra: Arc<StructuredAlgebra>) -> Self {
        let n = group.order();
        let id = Matrix::identity(algebra.field(), algebra.dim());
        let one = algebra.unit().clone();
        WeakGAction { phi: vec![id; n], c: vec![one; n * n], group, algebra }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn algebra(&self) -> &Arc<StructuredAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn phi(&self, g: usize) -> &Matrix {
        &self.phi[g]
    }

    pub fn phis(&self) -> &[Matrix] {
        &self.phi
    }

    pub fn c(&self, g: usize, h: usize) -> &Vector {
        &self.c[g * self.group.order() + h]
    }

    pub fn compositors(&self) -> &[Vector] {
        &self.c
    }

    pub fn apply(&self, g: usize, x: &Vector) -> Vector {
        self.phi[g].vec_mul(x)
    }

    pub fn is_strict(&self) -> bool {
        self.c.iter().all(|v| v == self.algebra.unit())
    }

    /// Copy with `c_{g,h}` replaced.
    pub fn with_compositor(&self, g: usize, h: usize, value: Vector) -> Result<Self> {
        let mut c = self.c.clone();
        *c.get_mut(g * self.group.order() + h).ok_or_else(|| Error::InvalidAction("pair out of range".into()))? = value;
        Self::new(self.group.clone(), self.algebra.clone(), self.phi.clone(), c)
    }

    /// Same data over a new copy of the algebra (used when the algebra's
    /// identity changes, e.g. after attaching structure).
    pub fn rebind(&self, algebra: Arc<StructuredAlgebra>) -> Result<Self> {
        Self::new(self.group.clone(), algebra, self.phi.clone(), self.c.clone())
    }

    /// `c_{g,h}^{-1}` for every pair, or the first non-invertible pair.
    pub fn compositor_inverses(&self) -> Result<Vec<Vector>> {
        let n = self.group.order();
        (0..n * n)
            .into_par_iter()
            .map(|gh| self.algebra.inverse_of(&self.c[gh]).ok_or(Error::NonInvertibleCompositor { g: gh / n, h: gh % n }))
            .collect()
    }
}

pub mod law {
    pub const PHI_UNITAL: &str = "phi_unital";
    pub const PHI_MULTIPLICATIVE: &str = "phi_multiplicative";
    pub const PHI_INVERTIBLE: &str = "phi_invertible";
    pub const PHI_COMPOSITION: &str = "phi_composition";
    pub const COCYCLE: &str = "cocycle";
    pub const NORMALIZED: &str = "compositor_normalized";
    pub const PHI_COPRODUCT: &str = "phi_coproduct";
    pub const PHI_COUNIT: &str = "phi_counit";
    pub const PHI_ANTIPODE: &str = "phi_antipode";
    pub const GROUPLIKE: &str = "compositor_grouplike";
    pub const RIGHT_GROUPLIKE: &str = "compositor_right_grouplike";
    pub const COMPONENTS: &str = "component_multiplication";
    pub const UNIT_COMPONENTS: &str = "unit_components";
    pub const ACTION_DEGREES: &str = "action_permutes_components";
    pub const COPRODUCT_DEGREES: &str = "coproduct_graded";
    pub const COUNIT_DEGREES: &str = "counit_vanishes_off_identity";
    pub const ANTIPODE_DEGREES: &str = "antipode_inverts_degree";
}

/// Algebra-map, invertibility, composition-up-to-conjugation and twisted
/// cocycle conditions, on all basis elements and group tuples.
pub fn check_weak_action(act: &WeakGAction) -> Result<Verdict> {
    let a = &act.algebra;
    let g_ord = act.group.order();
    let d = a.dim();
    act.compositor_inverses()?;
    let mut v = Verdict::new();

    let unital = (0..g_ord).find(|&g| act.apply(g, a.unit()) != *a.unit());
    v.push(Check::from_witness(law::PHI_UNITAL, unital.map(|g| vec![g])));

    let mult = (0..g_ord).into_par_iter().find_map_first(|g| {
        for i in 0..d {
            let pi = act.phi[g].row_vector(i);
            for j in 0..d {
                let lhs = act.apply(g, &a.mul(&a.basis(i), &a.basis(j)));
                if lhs != a.mul(&pi, &act.phi[g].row_vector(j)) {
                    return Some(vec![g, i, j]);
                }
            }
        }
        None
    });
    v.push(Check::from_witness(law::PHI_MULTIPLICATIVE, mult));

    let inv = (0..g_ord).find(|&g| act.phi[g].rank() != d);
    v.push(Check::from_witness(law::PHI_INVERTIBLE, inv.map(|g| vec![g])));

    // φ_g(φ_h(a)) c_{g,h} = c_{g,h} φ_{gh}(a)
    let comp = (0..g_ord * g_ord).into_par_iter().find_map_first(|gh| {
        let (g, h) = (gh / g_ord, gh % g_ord);
        let c = act.c(g, h);
        let prod = act.group.mul(g, h);
        for i in 0..d {
            let lhs = a.mul(&act.apply(g, &act.phi[h].row_vector(i)), c);
            let rhs = a.mul(c, &act.phi[prod].row_vector(i));
            if lhs != rhs {
                return Some(vec![g, h, i]);
            }
        }
        None
    });
    v.push(Check::from_witness(law::PHI_COMPOSITION, comp));

    let coc = (0..g_ord).into_par_iter().find_map_first(|g| {
        for h in 0..g_ord {
            for k in 0..g_ord {
                let lhs = a.mul(&act.apply(g, act.c(h, k)), act.c(g, act.group.mul(h, k)));
                let rhs = a.mul(act.c(g, h), act.c(act.group.mul(g, h), k));
                if lhs != rhs {
                    return Some(vec![g, h, k]);
                }
            }
        }
        None
    });
    v.push(Check::from_witness(law::COCYCLE, coc));

    v.push(if act.c(0, 0) == a.unit() { Check::pass(law::NORMALIZED) } else { Check::fail(law::NORMALIZED, vec![0, 0]) });
    Ok(v)
}

/// Each `φ_g` preserves `Δ`, `ε` and `S`; compositors are grouplike, or
/// right-grouplike when `Δ(1) ≠ 1 ⊗ 1`.
pub fn check_hopf_action(act: &WeakGAction) -> Result<Verdict> {
    let a = &act.algebra;
    let (g_ord, d) = (act.group.order(), a.dim());
    let counit = a.counit()?.clone();
    let deltas: Vec<SparseTensor> = (0..d).map(|i| a.coproduct_of(&a.basis(i))).collect::<Result<_>>()?;
    let mut v = Verdict::new();

    let cop = (0..g_ord).into_par_iter().find_map_first(|g| {
        let phi = &act.phi[g];
        (0..d)
            .find(|&i| a.coproduct_of(&phi.row_vector(i)).expect("coalgebra present") != map_pair(phi, phi, &deltas[i], d))
            .map(|i| vec![g, i])
    });
    v.push(Check::from_witness(law::PHI_COPRODUCT, cop));

    let cu = (0..g_ord)
        .flat_map(|g| (0..d).map(move |i| (g, i)))
        .find(|&(g, i)| counit.dot(&act.phi[g].row_vector(i)) != *counit.get(i));
    v.push(Check::from_witness(law::PHI_COUNIT, cu.map(|(g, i)| vec![g, i])));

    if let Some(s) = a.antipode() {
        let anti = (0..g_ord)
            .flat_map(|g| (0..d).map(move |i| (g, i)))
            .find(|&(g, i)| act.apply(g, &s.row_vector(i)) != s.vec_mul(&act.phi[g].row_vector(i)));
        v.push(Check::from_witness(law::PHI_ANTIPODE, anti.map(|(g, i)| vec![g, i])));
    }

    let strong = a.check_strong_unit()?.passed;
    let name = if strong { law::GROUPLIKE } else { law::RIGHT_GROUPLIKE };
    let mut distinct: Vec<&Vector> = Vec::new();
    for c in &act.c {
        if !distinct.contains(&c) {
            distinct.push(c);
        }
    }
    let good: Vec<bool> = distinct
        .par_iter()
        .map(|c| if strong { a.grouplike_vec(c) } else { a.right_grouplike_vec(c) })
        .collect::<Result<_>>()?;
    let bad = (0..g_ord * g_ord).find(|&gh| !good[distinct.iter().position(|c| *c == &act.c[gh]).unwrap()]);
    let bad = bad.map(|gh| vec![gh / g_ord, gh % g_ord]);
    v.push(Check::from_witness(name, bad));
    Ok(v)
}

/// Degree of every basis vector; components are spans of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GGrading {
    group: Arc<FiniteGroup>,
    degrees: Vec<usize>,
}

impl GGrading {
    pub fn new(group: Arc<FiniteGroup>, degrees: Vec<usize>) -> Result<Self> {
        if let Some(i) = degrees.iter().position(|&g| g >= group.order()) {
            return Err(Error::InhomogeneousBasis(format!("basis vector {i} has no valid degree")));
        }
        Ok(GGrading { group, degrees })
    }

    /// Everything in degree 1.
    pub fn trivial(group: Arc<FiniteGroup>, dim: usize) -> Self {
        GGrading { group, degrees: vec![0; dim] }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn is_trivial(&self) -> bool {
        self.degrees.iter().all(|&g| g == 0)
    }

    pub fn component(&self, g: usize) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&i| self.degrees[i] == g).collect()
    }

    /// Projection onto `A_g` as a diagonal 0/1 matrix.
    pub fn projector(&self, field: FieldSpec, g: usize) -> Matrix {
        let n = self.degrees.len();
        let mut m = Matrix::zeros(field, n, n);
        for i in self.component(g) {
            m.set(i, i, field.one());
        }
        m
    }

    /// `π_g(x)`.
    pub fn project(&self, x: &Vector, g: usize) -> Vector {
        let mut out = Vector::zeros(x.field(), x.len());
        for i in self.component(g) {
            out.set(i, x.get(i).clone());
        }
        out
    }

    /// Degree of a nonzero vector supported in a single component.
    pub fn degree_of(&self, x: &Vector) -> Option<usize> {
        let mut degs = x.nonzero().map(|(i, _)| self.degrees[i]);
        let first = degs.next()?;
        degs.all(|g| g == first).then_some(first)
    }

    fn in_component(&self, x: &Vector, g: usize) -> bool {
        x.nonzero().all(|(i, _)| self.degrees[i] == g)
    }
}

/// Component multiplication, compatibility with the action and the
/// coproduct, and the derived counit and antipode facts.
pub fn check_g_grading(a: &StructuredAlgebra, grading: &GGrading, act: Option<&WeakGAction>) -> Result<Verdict> {
    let d = a.dim();
    if grading.degrees.len() != d {
        return Err(Error::InhomogeneousBasis(format!("{} degrees for dimension {d}", grading.degrees.len())));
    }
    let gr = &grading.group;
    let mut v = Verdict::new();

    let comp = (0..d).into_par_iter().find_map_first(|i| {
        (0..d)
            .find(|&j| {
                let p = a.mul(&a.basis(i), &a.basis(j));
                let (di, dj) = (grading.degrees[i], grading.degrees[j]);
                if di != dj {
                    !p.is_zero()
                } else {
                    !grading.in_component(&p, di)
                }
            })
            .map(|j| vec![i, j])
    });
    v.push(Check::from_witness(law::COMPONENTS, comp));

    let unit_bad = (0..d).find(|&i| {
        let one_g = grading.project(a.unit(), grading.degrees[i]);
        let e = a.basis(i);
        a.mul(&one_g, &e) != e || a.mul(&e, &one_g) != e
    });
    v.push(Check::from_witness(law::UNIT_COMPONENTS, unit_bad.map(|i| vec![i])));

    if let Some(act) = act {
        let bad = (0..gr.order()).flat_map(|g| (0..d).map(move |i| (g, i))).find(|&(g, i)| {
            let target = gr.conj(g, grading.degrees[i]);
            !grading.in_component(&act.phi[g].row_vector(i), target)
        });
        v.push(Check::from_witness(law::ACTION_DEGREES, bad.map(|(g, i)| vec![g, i])));
    }

    if a.has_coalgebra() {
        let mut bad = None;
        'outer: for i in 0..d {
            for (_, p, q) in a.coproduct_terms(i)? {
                if gr.mul(grading.degrees[*p], grading.degrees[*q]) != grading.degrees[i] {
                    bad = Some(vec![i, *p, *q]);
                    break 'outer;
                }
            }
        }
        v.push(Check::from_witness(law::COPRODUCT_DEGREES, bad));

        let counit = a.counit()?;
        let bad = (0..d).find(|&i| grading.degrees[i] != 0 && !counit.get(i).is_zero());
        v.push(Check::from_witness(law::COUNIT_DEGREES, bad.map(|i| vec![i])));
    }

    if let Some(s) = a.antipode() {
        let bad = (0..d).find(|&i| !grading.in_component(&s.row_vector(i), gr.inv(grading.degrees[i])));
        v.push(Check::from_witness(law::ANTIPODE_DEGREES, bad.map(|i| vec![i])));
    }
    Ok(v)
}

/// A (weak) Hopf algebra with a weak action and a compatible grading.
#[derive(Clone, Debug)]
pub struct GHopfAlgebra {
    action: WeakGAction,
    grading: GGrading,
}

impl GHopfAlgebra {
    pub fn new(action: WeakGAction, grading: GGrading) -> Result<Self> {
        if action.group.as_ref() != grading.group.as_ref() {
            return Err(Error::InvalidAction("action and grading use different groups".into()));
        }
        if grading.degrees.len() != action.algebra.dim() {
            return Err(Error::InhomogeneousBasis("grading does not match the algebra".into()));
        }
        Ok(GHopfAlgebra { action, grading })
    }

    /// Trivial grading injected, concentrating everything in degree 1.
    pub fn with_trivial_grading(action: WeakGAction) -> Self {
        let grading = GGrading::trivial(action.group.clone(), action.algebra.dim());
        GHopfAlgebra { action, grading }
    }

    pub fn algebra(&self) -> &Arc<StructuredAlgebra> {
        &self.action.algebra
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.action.group
    }

    pub fn action(&self) -> &WeakGAction {
        &self.action
    }

    pub fn grading(&self) -> &GGrading {
        &self.grading
    }

    pub fn is_strict(&self) -> bool {
        self.action.is_strict()
    }

    /// Every applicable suite, prefixed `algebra.`, `action.`,
    /// `hopf_action.`, `grading.`.
    pub fn check(&self) -> Result<Verdict> {
        let a = self.algebra();
        let mut v = Verdict::new();
        v.extend_prefixed("algebra", a.verify().checks);
        v.extend_prefixed("action", check_weak_action(&self.action)?);
        if a.has_coalgebra() {
            v.extend_prefixed("hopf_action", check_hopf_action(&self.action)?);
        }
        v.extend_prefixed("grading", check_g_grading(a, &self.grading, Some(&self.action))?);
        Ok(v)
    }
}

/// `A = K[N]`, `φ_g` conjugation by `s(g)`, `c_{g,h} = s(g)s(h)s(gh)^{-1}`.
pub fn weak_action_from_extension(ext: &GroupExtension, field: FieldSpec) -> Result<WeakGAction> {
    let coc = ext.cocycle_from_section()?;
    let kernel = ext.kernel();
    let algebra = Arc::new(group_algebra(kernel, field));
    let (n, g_ord) = (kernel.order(), ext.quotient().order());
    let phi = (0..g_ord)
        .map(|g| {
            let mut m = Matrix::zeros(field, n, n);
            for x in 0..n {
                m.set(x, coc.phi(g, x), field.one());
            }
            m
        })
        .collect();
    let c = (0..g_ord * g_ord).map(|gh| algebra.basis(coc.c(gh / g_ord, gh % g_ord))).collect();
    WeakGAction::new(Arc::new(ext.quotient().clone()), algebra, phi, c)
}

/// The Klein-four action on `K[ℤ/2]` with `φ ≡ id` and compositors from
/// [`COUNTEREXAMPLE_TABLE`], built directly from the table.
pub fn counterexample_action(field: FieldSpec) -> WeakGAction {
    let algebra = Arc::new(group_algebra(&FiniteGroup::cyclic(2), field));
    let group = Arc::new(FiniteGroup::klein_four());
    let c = COUNTEREXAMPLE_TABLE.iter().flatten().map(|&k| algebra.basis(k)).collect();
    let phi = vec![Matrix::identity(field, 2); 4];
    WeakGAction::new(group, algebra, phi, c).expect("table has the right shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::function_algebra;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn trivial_action_passes() {
        let g = Arc::new(FiniteGroup::dihedral(3));
        let a = Arc::new(group_algebra(&FiniteGroup::cyclic(3), q()));
        let act = WeakGAction::trivial(g.clone(), a.clone());
        assert!(check_weak_action(&act).unwrap().all_passed());
        assert!(check_hopf_action(&act).unwrap().all_passed());
        assert!(act.is_strict());
    }

    #[test]
    fn counterexample_action_passes() {
        let act = counterexample_action(q());
        let v = check_weak_action(&act).unwrap();
        assert!(v.all_passed(), "{v}");
        assert!(check_hopf_action(&act).unwrap().passed(law::GROUPLIKE));
        assert!(!act.is_strict());
    }

    #[test]
    fn table_entries_by_name() {
        let act = counterexample_action(q());
        let klein = FiniteGroup::klein_four();
        let t = act.algebra().basis(1);
        let one = act.algebra().unit().clone();
        let idx = |s: &str| klein.index_of(s).unwrap();
        assert_eq!(act.c(idx("t1"), idx("t1")), &t);
        assert_eq!(act.c(idx("t2"), idx("t1")), &t);
        assert_eq!(act.c(idx("t1"), idx("t1t2")), &t);
        assert_eq!(act.c(idx("t2"), idx("t1t2")), &t);
        assert_eq!(act.c(idx("t1"), idx("t2")), &one);
        for g in 0..4 {
            assert_eq!(act.c(g, 0), &one);
            assert_eq!(act.c(0, g), &one);
        }
    }

    #[test]
    fn mutated_compositor_breaks_cocycle() {
        let act = counterexample_action(q());
        let one = act.algebra().unit().clone();
        let bad = act.with_compositor(1, 1, one).unwrap();
        let v = check_weak_action(&bad).unwrap();
        assert!(!v.passed(law::COCYCLE));
        assert!(v.get(law::COCYCLE).unwrap().witness.is_some());
    }

    #[test]
    fn non_grouplike_compositor_fails_hopf_check() {
        let act = counterexample_action(q());
        let x = Vector::from_i64(q(), &[1, 1]);
        let bad = act.with_compositor(1, 1, x).unwrap();
        // 1 + t is a zero divisor, hence not invertible
        assert!(matches!(check_weak_action(&bad), Err(Error::NonInvertibleCompositor { g: 1, h: 1 })));
        let v = check_hopf_action(&bad).unwrap();
        assert_eq!(v.get(law::GROUPLIKE).unwrap().witness, Some(vec![1, 1]));
    }

    #[test]
    fn extension_reproduces_table() {
        let ext = GroupExtension::d4();
        let from_ext = weak_action_from_extension(&ext, q()).unwrap();
        let direct = counterexample_action(q());
        assert_eq!(from_ext.compositors(), direct.compositors());
        assert_eq!(from_ext.phis(), direct.phis());
    }

    #[test]
    fn split_extension_gives_strict_action() {
        let ext = GroupExtension::split(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2));
        let act = weak_action_from_extension(&ext, q()).unwrap();
        assert!(act.is_strict());
        assert!(check_weak_action(&act).unwrap().all_passed());
    }

    #[test]
    fn nonabelian_kernel_extension_passes() {
        // S3 ⊂ S3 × ℤ/2 with s(t) = (a, t), so c(t, t) = a²
        let total = FiniteGroup::product(&FiniteGroup::dihedral(3), &FiniteGroup::cyclic(2));
        let normal: Vec<usize> = (0..6).collect();
        let ext = GroupExtension::from_normal_subgroup(total, &normal, |coset| coset[1]).unwrap();
        let act = weak_action_from_extension(&ext, q()).unwrap();
        assert!(check_weak_action(&act).unwrap().all_passed());
        assert!(check_hopf_action(&act).unwrap().all_passed());
        assert!(!act.is_strict());
    }

    #[test]
    fn gradings() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let a = function_algebra(&z2, q());
        let g = GGrading::new(z2.clone(), vec![0, 1]).unwrap();
        // K(ℤ/2) graded by deg δ_g = g
        let v = check_g_grading(&a, &g, None).unwrap();
        assert!(v.all_passed(), "{v}");
        let ka = group_algebra(&z2, q());
        let bad = GGrading::new(z2.clone(), vec![1, 0]).unwrap();
        assert!(!check_g_grading(&ka, &bad, None).unwrap().passed(law::COMPONENTS));
        let triv = GGrading::trivial(z2.clone(), 2);
        let act = WeakGAction::trivial(z2.clone(), Arc::new(ka.clone()));
        assert!(check_g_grading(&ka, &triv, Some(&act)).unwrap().all_passed());
        assert!(matches!(check_g_grading(&ka, &GGrading::trivial(z2, 3), None), Err(Error::InhomogeneousBasis(_))));
    }

    #[test]
    fn projectors_partition_identity() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let g = GGrading::new(z2, vec![0, 1, 1, 0]).unwrap();
        let sum = g.projector(q(), 0).try_add(&g.projector(q(), 1)).unwrap();
        assert!(sum.is_identity());
        let p = g.projector(q(), 1);
        assert_eq!(p.try_mul(&p).unwrap(), p);
    }

    #[test]
    fn g_hopf_bundle_checks() {
        let bundle = GHopfAlgebra::with_trivial_grading(counterexample_action(q()));
        let v = bundle.check().unwrap();
        assert!(v.all_passed(), "{v}");
        assert!(!bundle.is_strict());
    }
}
