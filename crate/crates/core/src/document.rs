//! JSON workspace documents: named groups, algebras, actions, gradings,
//! modules and ribbon data over one field, with scalars as strings.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::action::{GGrading, GHopfAlgebra, WeakGAction};
use crate::algebra::StructuredAlgebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::group::FiniteGroup;
use crate::linalg::{Matrix, Vector};
use crate::module::ModuleRep;
use crate::ribbon::RibbonData;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub version: u32,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub gradings: BTreeMap<String, GradingDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ribbon: BTreeMap<String, RibbonDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// Products and coproducts as sparse `[i, j, k, "c"]` entries:
/// `e_i e_j ∋ c e_k` and `Δ(e_i) ∋ c e_j⊗e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub labels: Vec<String>,
    pub product: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coproduct: Option<Vec<(usize, usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Vec<String>>>,
}

/// `phi[g]` is a matrix, `c[g·|G| + h]` a coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub group: String,
    pub algebra: String,
    pub phi: Vec<Vec<Vec<String>>>,
    pub c: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingDoc {
    pub group: String,
    pub degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub algebra: String,
    pub dim: usize,
    pub rho: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RibbonDoc {
    pub algebra: String,
    #[serde(rename = "R")]
    pub r: Vec<String>,
    pub theta: Vec<String>,
}

fn scalars(v: &Vector) -> Vec<String> {
    v.coeffs().iter().map(Scalar::to_string).collect()
}

fn rows(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(Scalar::to_string).collect()).collect()
}

fn parse_vector(f: FieldSpec, v: &[String], len: usize, what: &str) -> Result<Vector> {
    if v.len() != len {
        return Err(Error::Parse(format!("{what}: expected {len} coefficients, found {}", v.len())));
    }
    Vector::new(f, v.iter().map(|s| f.parse_scalar(s)).collect::<Result<_>>()?)
}

fn parse_matrix(f: FieldSpec, m: &[Vec<String>], r: usize, c: usize, what: &str) -> Result<Matrix> {
    if m.len() != r || m.iter().any(|row| row.len() != c) {
        return Err(Error::Parse(format!("{what}: expected a {r}x{c} matrix")));
    }
    let data = m.iter().map(|row| row.iter().map(|s| f.parse_scalar(s)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    Matrix::from_rows(f, data, c)
}

impl GroupDoc {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupDoc { order: g.order(), table: g.table(), names: Some(g.names().to_vec()) }
    }
}

impl AlgebraDoc {
    pub fn from_algebra(a: &StructuredAlgebra) -> Self {
        let n = a.dim();
        let mut product = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in a.product_terms(i, j) {
                    product.push((i, j, *k, c.to_string()));
                }
            }
        }
        let (coproduct, counit) = match a.counit() {
            Ok(eps) => {
                let mut co = Vec::new();
                for i in 0..n {
                    for (c, p, q) in a.coproduct_terms(i).expect("coalgebra present") {
                        co.push((i, *p, *q, c.to_string()));
                    }
                }
                (Some(co), Some(scalars(eps)))
            }
            Err(_) => (None, None),
        };
        AlgebraDoc {
            labels: a.labels().to_vec(),
            product,
            unit: scalars(a.unit()),
            coproduct,
            counit,
            antipode: a.antipode().map(rows),
        }
    }

    /// Shapes only; see [`Workspace::resolve`] for the structural axioms.
    pub fn build(&self, f: FieldSpec) -> Result<StructuredAlgebra> {
        let n = self.labels.len();
        let mut terms: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
        for (i, j, k, c) in &self.product {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Parse(format!("product entry [{i}, {j}, {k}] out of range")));
            }
            let c = f.parse_scalar(c)?;
            let cell = &mut terms[i * n + j];
            match cell.iter_mut().find(|(kk, _)| kk == k) {
                Some((_, old)) => *old = &*old + &c,
                None => cell.push((*k, c)),
            }
        }
        let mut a = StructuredAlgebra::new(f, self.labels.clone(), terms, parse_vector(f, &self.unit, n, "unit")?)?;
        match (&self.coproduct, &self.counit) {
            (Some(co), Some(eps)) => {
                let mut cop: Vec<Vec<(Scalar, usize, usize)>> = vec![Vec::new(); n];
                for (i, p, q, c) in co {
                    if *i >= n || *p >= n || *q >= n {
                        return Err(Error::Parse(format!("coproduct entry [{i}, {p}, {q}] out of range")));
                    }
                    cop[*i].push((f.parse_scalar(c)?, *p, *q));
                }
                a = a.with_coalgebra(cop, parse_vector(f, eps, n, "counit")?)?;
            }
            (None, None) => {}
            _ => return Err(Error::Parse("coproduct and counit must be given together".into())),
        }
        if let Some(s) = &self.antipode {
            a = a.with_antipode(parse_matrix(f, s, n, n, "antipode")?)?;
        }
        Ok(a)
    }
}

impl ActionDoc {
    pub fn from_action(group: &str, algebra: &str, act: &WeakGAction, grading: Option<&str>) -> Self {
        ActionDoc {
            group: group.into(),
            algebra: algebra.into(),
            phi: act.phis().iter().map(rows).collect(),
            c: act.compositors().iter().map(scalars).collect(),
            grading: grading.map(str::to_string),
        }
    }
}

impl ModuleDoc {
    pub fn from_module(algebra: &str, m: &ModuleRep) -> Self {
        ModuleDoc { algebra: algebra.into(), dim: m.dim(), rho: m.rhos().iter().map(rows).collect() }
    }
}

impl RibbonDoc {
    pub fn from_ribbon(algebra: &str, r: &RibbonData) -> Self {
        RibbonDoc { algebra: algebra.into(), r: scalars(&r.r_vector()), theta: scalars(r.theta()) }
    }
}

impl Document {
    pub fn new(field: FieldSpec) -> Self {
        Document {
            version: FORMAT_VERSION,
            field,
            groups: BTreeMap::new(),
            algebras: BTreeMap::new(),
            actions: BTreeMap::new(),
            gradings: BTreeMap::new(),
            modules: BTreeMap::new(),
            ribbon: BTreeMap::new(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let d: Document = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if d.version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported format version {}", d.version)));
        }
        Ok(d)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// Rewrites every scalar in its normal form.
    pub fn canonical(&self) -> Result<Self> {
        let f = self.field;
        let norm = |s: &String| f.parse_scalar(s).map(|x| x.to_string());
        let norm_v = |v: &Vec<String>| v.iter().map(norm).collect::<Result<Vec<_>>>();
        let norm_m = |m: &Vec<Vec<String>>| m.iter().map(norm_v).collect::<Result<Vec<_>>>();
        let mut d = self.clone();
        for a in d.algebras.values_mut() {
            for e in &mut a.product {
                e.3 = norm(&e.3)?;
            }
            a.unit = norm_v(&a.unit)?;
            if let Some(co) = &mut a.coproduct {
                for e in co.iter_mut() {
                    e.3 = norm(&e.3)?;
                }
            }
            if let Some(eps) = &a.counit {
                a.counit = Some(norm_v(eps)?);
            }
            if let Some(s) = &a.antipode {
                a.antipode = Some(norm_m(s)?);
            }
        }
        for a in d.actions.values_mut() {
            a.phi = a.phi.iter().map(norm_m).collect::<Result<_>>()?;
            a.c = norm_m(&a.c)?;
        }
        for m in d.modules.values_mut() {
            m.rho = m.rho.iter().map(norm_m).collect::<Result<_>>()?;
        }
        for r in d.ribbon.values_mut() {
            r.r = norm_v(&r.r)?;
            r.theta = norm_v(&r.theta)?;
        }
        Ok(d)
    }

    pub fn add_group(&mut self, name: &str, g: &FiniteGroup) {
        self.groups.insert(name.into(), GroupDoc::from_group(g));
    }

    pub fn add_algebra(&mut self, name: &str, a: &StructuredAlgebra) {
        self.algebras.insert(name.into(), AlgebraDoc::from_algebra(a));
    }

    /// Adds the group, algebra, grading and action of `gh` under `prefix`
    /// (`<prefix>.group`, `<prefix>.algebra`, `<prefix>.grading`, `<prefix>`).
    pub fn add_g_hopf(&mut self, prefix: &str, gh: &GHopfAlgebra) {
        let (g, a, gr) = (format!("{prefix}.group"), format!("{prefix}.algebra"), format!("{prefix}.grading"));
        self.add_group(&g, gh.group());
        self.add_algebra(&a, gh.algebra());
        self.gradings.insert(gr.clone(), GradingDoc { group: g.clone(), degrees: gh.grading().degrees().to_vec() });
        self.actions.insert(prefix.into(), ActionDoc::from_action(&g, &a, gh.action(), Some(&gr)));
    }
}

/// A document with every reference resolved and every object built.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub field: FieldSpec,
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub algebras: BTreeMap<String, Arc<StructuredAlgebra>>,
    pub actions: BTreeMap<String, WeakGAction>,
    pub gradings: BTreeMap<String, GGrading>,
    pub modules: BTreeMap<String, ModuleRep>,
    pub ribbon: BTreeMap<String, RibbonData>,
    action_gradings: BTreeMap<String, Option<String>>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str, from: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| Error::Parse(format!("{from}: unknown {kind} {name:?}")))
}

/// First `(a, b, c)` with `(ab)c ≠ a(bc)` in a square table with entries in
/// range.
fn table_associativity_witness(t: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = t.len();
    if t.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return None;
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t[t[a][b]][c] != t[a][t[b][c]] {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

impl Workspace {
    /// Builds every object; groups must be groups and algebras must be
    /// unital associative algebras, otherwise a [`Error::Validation`] names
    /// the first failing tuple.
    pub fn resolve(doc: &Document) -> Result<Self> {
        let f = doc.field;
        let mut groups = BTreeMap::new();
        for (name, g) in &doc.groups {
            if g.table.len() != g.order {
                return Err(Error::Parse(format!("group {name:?}: table has {} rows for order {}", g.table.len(), g.order)));
            }
            if let Some(w) = table_associativity_witness(&g.table) {
                return Err(Error::Validation { object: format!("group {name:?}"), law: "associativity".into(), witness: w });
            }
            let grp = FiniteGroup::from_table(g.table.clone(), g.names.clone())
                .map_err(|e| Error::Parse(format!("group {name:?}: {e}")))?;
            groups.insert(name.clone(), Arc::new(grp));
        }
        let mut algebras = BTreeMap::new();
        for (name, a) in &doc.algebras {
            let alg = a.build(f).map_err(|e| Error::Parse(format!("algebra {name:?}: {e}")))?;
            for c in [alg.check_associativity(), alg.check_unit()] {
                if !c.passed {
                    return Err(Error::Validation {
                        object: format!("algebra {name:?}"),
                        law: c.name,
                        witness: c.witness.unwrap_or_default(),
                    });
                }
            }
            algebras.insert(name.clone(), Arc::new(alg));
        }
        let mut gradings = BTreeMap::new();
        for (name, g) in &doc.gradings {
            let grp = lookup(&groups, "group", &g.group, name)?;
            let gr = GGrading::new(grp.clone(), g.degrees.clone()).map_err(|e| Error::Parse(format!("grading {name:?}: {e}")))?;
            gradings.insert(name.clone(), gr);
        }
        let mut actions = BTreeMap::new();
        let mut action_gradings = BTreeMap::new();
        for (name, a) in &doc.actions {
            let grp = lookup(&groups, "group", &a.group, name)?;
            let alg = lookup(&algebras, "algebra", &a.algebra, name)?;
            let (n, d) = (grp.order(), alg.dim());
            if a.phi.len() != n || a.c.len() != n * n {
                return Err(Error::Parse(format!("action {name:?}: need {n} matrices and {} compositors", n * n)));
            }
            let phi = a.phi.iter().map(|m| parse_matrix(f, m, d, d, "phi")).collect::<Result<_>>()?;
            let c = a.c.iter().map(|v| parse_vector(f, v, d, "c")).collect::<Result<_>>()?;
            let act = WeakGAction::new(grp.clone(), alg.clone(), phi, c).map_err(|e| Error::Parse(format!("action {name:?}: {e}")))?;
            if let Some(gr) = &a.grading {
                let grading = lookup(&gradings, "grading", gr, name)?;
                if grading.degrees().len() != d || !Arc::ptr_eq(grading.group(), grp) {
                    return Err(Error::Parse(format!("action {name:?}: grading {gr:?} does not match")));
                }
            }
            actions.insert(name.clone(), act);
            action_gradings.insert(name.clone(), a.grading.clone());
        }
        let mut modules = BTreeMap::new();
        for (name, m) in &doc.modules {
            let alg = lookup(&algebras, "algebra", &m.algebra, name)?;
            if m.rho.len() != alg.dim() {
                return Err(Error::Parse(format!("module {name:?}: need {} action matrices", alg.dim())));
            }
            let rho = m.rho.iter().map(|r| parse_matrix(f, r, m.dim, m.dim, "rho")).collect::<Result<_>>()?;
            modules.insert(name.clone(), ModuleRep::new(alg.clone(), m.dim, rho)?);
        }
        let mut ribbon = BTreeMap::new();
        for (name, r) in &doc.ribbon {
            let alg = lookup(&algebras, "algebra", &r.algebra, name)?;
            let n = alg.dim();
            let rb = RibbonData::new(alg.clone(), parse_vector(f, &r.r, n * n, "R")?, parse_vector(f, &r.theta, n, "theta")?)?;
            ribbon.insert(name.clone(), rb);
        }
        Ok(Workspace { field: f, groups, algebras, actions, gradings, modules, ribbon, action_gradings })
    }

    /// The action with its grading (trivial when none is named).
    pub fn g_hopf(&self, action: &str) -> Result<GHopfAlgebra> {
        let act = lookup(&self.actions, "action", action, "workspace")?.clone();
        match self.action_gradings.get(action).cloned().flatten() {
            Some(gr) => GHopfAlgebra::new(act, self.gradings[&gr].clone()),
            None => Ok(GHopfAlgebra::with_trivial_grading(act)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::counterexample_action;
    use crate::algebra::group_algebra;

    fn d4_doc(f: FieldSpec) -> Document {
        let mut d = Document::new(f);
        let gh = GHopfAlgebra::with_trivial_grading(counterexample_action(f));
        d.add_g_hopf("d4", &gh);
        let a = gh.algebra().clone();
        d.modules.insert("regular".into(), ModuleDoc::from_module("d4.algebra", &ModuleRep::regular(a.clone())));
        d.ribbon.insert("trivial".into(), RibbonDoc::from_ribbon("d4.algebra", &RibbonData::trivial(a).unwrap()));
        d
    }

    #[test]
    fn round_trip_is_byte_identical() {
        for f in [FieldSpec::Rationals, FieldSpec::prime(5).unwrap()] {
            let s = d4_doc(f).to_json();
            let again = Document::from_json(&s).unwrap().to_json();
            assert_eq!(s, again);
        }
    }

    #[test]
    fn resolves_and_rebuilds() {
        let d = d4_doc(FieldSpec::Rationals);
        let ws = Workspace::resolve(&d).unwrap();
        let gh = ws.g_hopf("d4").unwrap();
        assert!(gh.check().unwrap().all_passed());
        assert_eq!(gh.algebra().dim(), 2);
        assert_eq!(ws.modules["regular"].dim(), 2);
        assert_eq!(ws.ribbon["trivial"].theta(), gh.algebra().unit());
    }

    #[test]
    fn canonical_normalizes_scalars() {
        let mut d = Document::new(FieldSpec::Rationals);
        let mut a = AlgebraDoc::from_algebra(&group_algebra(&FiniteGroup::cyclic(2), FieldSpec::Rationals));
        a.unit = vec!["2/2".into(), "0/3".into()];
        d.algebras.insert("k".into(), a);
        let c = d.canonical().unwrap();
        assert_eq!(c.algebras["k"].unit, vec!["1", "0"]);
    }

    #[test]
    fn broken_group_table_has_witness() {
        let mut d = Document::new(FieldSpec::Rationals);
        let mut g = GroupDoc::from_group(&FiniteGroup::cyclic(3));
        g.table[1][1] = 1;
        d.groups.insert("bad".into(), g);
        match Workspace::resolve(&d) {
            Err(Error::Validation { law, witness, .. }) => {
                assert_eq!(law, "associativity");
                assert_eq!(witness.len(), 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn broken_algebra_table_has_witness() {
        let mut d = Document::new(FieldSpec::Rationals);
        let mut a = AlgebraDoc::from_algebra(&group_algebra(&FiniteGroup::cyclic(3), FieldSpec::Rationals));
        // g·g = g instead of g²
        for e in &mut a.product {
            if e.0 == 1 && e.1 == 1 {
                e.2 = 1;
            }
        }
        d.algebras.insert("bad".into(), a);
        match Workspace::resolve(&d) {
            Err(Error::Validation { law, witness, .. }) => {
                assert_eq!(law, "associativity");
                assert_eq!(witness.len(), 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_reference_and_field() {
        let mut d = d4_doc(FieldSpec::Rationals);
        d.modules.get_mut("regular").unwrap().algebra = "nope".into();
        assert!(matches!(Workspace::resolve(&d), Err(Error::Parse(_))));
        assert!(Document::from_json(r#"{"version": 1, "field": "Q", "extra": 1}"#).is_err());
        let s = d4_doc(FieldSpec::prime(5).unwrap()).to_json().replace("\"F5\"", "\"F7\"");
        assert!(Workspace::resolve(&Document::from_json(&s).unwrap()).is_err());
    }
}
