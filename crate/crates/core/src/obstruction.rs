//! Search for invertible `(a_g)` with `a_{gh}·c_{g,h} = a_g·a_h`, which
//! would strictify an action with `φ ≡ id` as a Hopf algebra, and the
//! squaring argument that rules it out for the Klein-four table.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::WeakGAction;
use crate::algebra::StructuredAlgebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Vector;

pub const DEFAULT_MAX_CARRIER: u128 = 1 << 20;

#[derive(Clone, Debug)]
pub struct ObstructionProblem {
    action: WeakGAction,
    max_carrier: u128,
}

impl ObstructionProblem {
    /// Requires `φ_g = id` for every `g`.
    pub fn new(action: WeakGAction) -> Result<Self> {
        if action.phis().iter().any(|m| !m.is_identity()) {
            return Err(Error::WrongShape("the search needs φ_g = id for every g".into()));
        }
        Ok(ObstructionProblem { action, max_carrier: DEFAULT_MAX_CARRIER })
    }

    pub fn with_max_carrier(mut self, bound: u128) -> Self {
        self.max_carrier = bound;
        self
    }

    pub fn action(&self) -> &WeakGAction {
        &self.action
    }

    pub fn algebra(&self) -> &StructuredAlgebra {
        self.action.algebra()
    }

    pub fn field(&self) -> FieldSpec {
        self.action.field()
    }

    /// `pⁿ·|G|`.
    pub fn carrier_size(&self) -> Option<u128> {
        let p = self.field().order()? as u128;
        let n = self.algebra().dim() as u32;
        p.checked_pow(n)?.checked_mul(self.action.group().order() as u128)
    }

    /// `a_{gh}·c_{g,h} = a_g·a_h` for all pairs, all `a_g` invertible.
    pub fn verify(&self, a: &[Vector]) -> bool {
        let grp = self.action.group();
        let alg = self.algebra();
        if a.len() != grp.order() || a.iter().any(|x| alg.inverse_of(x).is_none()) {
            return false;
        }
        (0..grp.order()).all(|g| {
            (0..grp.order()).all(|h| alg.mul(&a[grp.mul(g, h)], self.action.c(g, h)) == alg.mul(&a[g], &a[h]))
        })
    }
}

/// Invertible elements of a finite-field algebra, in residue order.
pub fn unit_group(alg: &StructuredAlgebra) -> Result<Vec<Vector>> {
    let f = alg.field();
    let elems = f.elements().ok_or_else(|| Error::InvalidField("enumeration needs a finite field".into()))?;
    let n = alg.dim();
    let mut digits = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let v = Vector::new(f, digits.iter().map(|&d| elems[d].clone()).collect())?;
        if alg.inverse_of(&v).is_some() {
            out.push(v);
        }
        if !crate::algebra::advance(&mut digits, elems.len()) {
            return Ok(out);
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub field: FieldSpec,
    pub solutions: Vec<Vec<Vector>>,
    pub exhaustive: bool,
    pub units: usize,
}

/// Every solution over a prime field, by backtracking over unit tuples with
/// `a_1 = c_{1,1}` forced; the branches split on the next coordinate.
pub fn search_solutions(prob: &ObstructionProblem) -> Result<SearchResult> {
    let size = prob
        .carrier_size()
        .ok_or_else(|| Error::InvalidField("exhaustive search needs a prime field".into()))?;
    if size > prob.max_carrier {
        return Err(Error::CarrierTooLarge { size, bound: prob.max_carrier });
    }
    let alg = prob.algebra();
    let grp = prob.action.group();
    let n = grp.order();
    let units = unit_group(alg)?;
    let index: HashMap<&Vector, usize> = units.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let prod: Vec<Vec<usize>> = units
        .iter()
        .map(|x| units.iter().map(|y| index[&alg.mul(x, y)]).collect())
        .collect();
    // right multiplication by each compositor, None if it is not a unit
    let mut comp_mul = vec![None; n * n];
    for g in 0..n {
        for h in 0..n {
            let c = prob.action.c(g, h);
            if index.contains_key(c) {
                comp_mul[g * n + h] = Some(units.iter().map(|x| index[&alg.mul(x, c)]).collect::<Vec<usize>>());
            }
        }
    }
    let empty = SearchResult { field: prob.field(), solutions: Vec::new(), exhaustive: true, units: units.len() };
    if comp_mul.iter().any(Option::is_none) {
        return Ok(empty);
    }
    let comp_mul: Vec<Vec<usize>> = comp_mul.into_iter().map(Option::unwrap).collect();
    let Some(&a1) = index.get(prob.action.c(0, 0)) else { return Ok(empty) };

    let consistent = |a: &[usize], upto: usize| {
        (0..=upto).all(|g| {
            (0..=upto).all(|h| {
                let gh = grp.mul(g, h);
                if (g != upto && h != upto) || gh > upto {
                    return true;
                }
                comp_mul[g * n + h][a[gh]] == prod[a[g]][a[h]]
            })
        })
    };

    fn extend(a: &mut Vec<usize>, n: usize, units: usize, ok: &dyn Fn(&[usize], usize) -> bool, out: &mut Vec<Vec<usize>>) {
        if a.len() == n {
            out.push(a.clone());
            return;
        }
        for u in 0..units {
            a.push(u);
            let k = a.len() - 1;
            if ok(a, k) {
                extend(a, n, units, ok, out);
            }
            a.pop();
        }
    }

    let base = vec![a1];
    if !consistent(&base, 0) {
        return Ok(empty);
    }
    let found: Vec<Vec<usize>> = if n == 1 {
        vec![base]
    } else {
        (0..units.len())
            .into_par_iter()
            .map(|u| {
                let mut a = vec![a1, u];
                let mut out = Vec::new();
                if consistent(&a, 1) {
                    extend(&mut a, n, units.len(), &consistent, &mut out);
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    let solutions = found.into_iter().map(|s| s.into_iter().map(|i| units[i].clone()).collect()).collect();
    Ok(SearchResult { field: prob.field(), solutions, exhaustive: true, units: units.len() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReplayStatus {
    /// The two forced values of `a_{t1}²` differ.
    Contradiction,
    Consistent,
    /// Characteristic 2, where `K[ℤ/2]` is not split semisimple and the
    /// argument is not claimed.
    OutOfScope,
}

#[derive(Clone, Debug)]
pub struct Replay {
    pub field: FieldSpec,
    pub status: ReplayStatus,
    /// `a_1 = c_{1,1}`.
    pub a_one: Vector,
    /// `a_{t1}² = a_1·c_{t1,t1}`, from `g = h = t1`.
    pub from_square: Vector,
    /// `a_{t1}² = a_{t1t2}²·c_{t1,t2}²·(a_{t2}²)⁻¹`, from squaring `g = t1`,
    /// `h = t2` with `a_{t2}² = a_1·c_{t2,t2}` and
    /// `a_{t1t2}² = a_1·c_{t1t2,t1t2}`.
    pub from_pair: Vector,
    pub steps: Vec<String>,
}

/// The squaring argument for a commutative algebra and a group of order four
/// in which every element squares to 1.
pub fn forced_constraint_replay(prob: &ObstructionProblem) -> Result<Replay> {
    let grp = prob.action.group();
    let alg = prob.algebra();
    if grp.order() != 4 || (0..4).any(|g| grp.mul(g, g) != 0) {
        return Err(Error::WrongShape("the replay needs ℤ/2 × ℤ/2".into()));
    }
    if !alg.is_commutative() {
        return Err(Error::WrongShape("the replay needs a commutative algebra".into()));
    }
    let (t1, t2) = (1, 2);
    let t12 = grp.mul(t1, t2);
    let c = |g, h| prob.action.c(g, h);
    let inv = |x: &Vector, what: &str| alg.inverse_of(x).ok_or_else(|| Error::WrongShape(format!("{what} is not invertible")));
    let show = |x: &Vector| describe(alg, x);
    let (n1, n2, n12) = (grp.name(t1), grp.name(t2), grp.name(t12));

    let mut steps = Vec::new();
    let c11 = c(0, 0);
    inv(c11, "c(1,1)")?;
    let a_one = c11.clone();
    steps.push(format!("g = h = 1: a_1·c(1,1) = a_1², so a_1 = {}", show(&a_one)));
    let sq_t2 = alg.mul(&a_one, c(t2, t2));
    let sq_t12 = alg.mul(&a_one, c(t12, t12));
    steps.push(format!("g = h = {n2}: a_{n2}² = a_1·c({n2},{n2}) = {}", show(&sq_t2)));
    steps.push(format!("g = h = {n12}: a_{n12}² = a_1·c({n12},{n12}) = {}", show(&sq_t12)));
    let cp = c(t1, t2);
    let from_pair = alg.mul3(&sq_t12, &alg.mul(cp, cp), &inv(&sq_t2, "a_t2²")?);
    steps.push(format!(
        "g = {n1}, h = {n2}: a_{n12}·c({n1},{n2}) = a_{n1}·a_{n2}; squaring in a commutative algebra gives a_{n1}² = {}",
        show(&from_pair)
    ));
    let from_square = alg.mul(&a_one, c(t1, t1));
    steps.push(format!("g = h = {n1}: a_{n1}² = a_1·c({n1},{n1}) = {}", show(&from_square)));

    let status = if prob.field().characteristic() == 2 {
        steps.push("characteristic 2: outside the scope of the argument".into());
        ReplayStatus::OutOfScope
    } else if from_pair != from_square {
        steps.push(format!("contradiction: {} ≠ {}", show(&from_pair), show(&from_square)));
        ReplayStatus::Contradiction
    } else {
        steps.push("both constraints agree; no contradiction".into());
        ReplayStatus::Consistent
    };
    Ok(Replay { field: prob.field(), status, a_one, from_square, from_pair, steps })
}

fn coefficient(s: &Scalar) -> String {
    match s {
        Scalar::Residue(r) => r.value().to_string(),
        other => other.to_string(),
    }
}

/// `2*t + 1`-style rendering with the basis labels.
pub fn describe(alg: &StructuredAlgebra, x: &Vector) -> String {
    let terms: Vec<String> = x
        .nonzero()
        .map(|(i, c)| if c.is_one() { alg.label(i).to_string() } else { format!("{}*{}", coefficient(c), alg.label(i)) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContradictionReport {
    pub status: ReplayStatus,
    pub a_one: String,
    pub from_square: String,
    pub from_pair: String,
    pub steps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub field: FieldSpec,
    pub solutions: Vec<Vec<String>>,
    pub exhaustive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contradiction: Option<ContradictionReport>,
}

impl ObstructionReport {
    pub fn from_search(alg: &StructuredAlgebra, r: &SearchResult) -> Self {
        ObstructionReport {
            field: r.field,
            solutions: r.solutions.iter().map(|s| s.iter().map(|x| describe(alg, x)).collect()).collect(),
            exhaustive: r.exhaustive,
            contradiction: None,
        }
    }

    pub fn from_replay(alg: &StructuredAlgebra, r: &Replay) -> Self {
        ObstructionReport {
            field: r.field,
            solutions: Vec::new(),
            exhaustive: false,
            contradiction: Some(ContradictionReport {
                status: r.status,
                a_one: describe(alg, &r.a_one),
                from_square: describe(alg, &r.from_square),
                from_pair: describe(alg, &r.from_pair),
                steps: r.steps.clone(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{counterexample_action, weak_action_from_extension};
    use crate::group::{FiniteGroup, GroupExtension};
    use std::sync::Arc;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn table(f: FieldSpec) -> ObstructionProblem {
        ObstructionProblem::new(counterexample_action(f)).unwrap()
    }

    fn trivial(f: FieldSpec) -> ObstructionProblem {
        let a = counterexample_action(f);
        ObstructionProblem::new(WeakGAction::trivial(a.group().clone(), a.algebra().clone())).unwrap()
    }

    #[test]
    fn units_of_f3_group_algebra() {
        let a = counterexample_action(fp(3));
        let u = unit_group(a.algebra()).unwrap();
        let shown: Vec<String> = u.iter().map(|x| describe(a.algebra(), x)).collect();
        assert_eq!(shown, vec!["1", "2*1", "t", "2*t"]);
    }

    #[test]
    fn table_has_no_solutions() {
        for p in [3, 5, 7] {
            let r = search_solutions(&table(fp(p))).unwrap();
            assert!(r.solutions.is_empty(), "p = {p}");
            assert!(r.exhaustive);
        }
    }

    #[test]
    fn trivial_cocycle_has_solutions() {
        let prob = trivial(fp(3));
        let r = search_solutions(&prob).unwrap();
        let one = prob.algebra().unit().clone();
        assert!(r.solutions.contains(&vec![one; 4]));
        // homomorphisms from ℤ/2 × ℤ/2 into the four units {±1, ±t}
        assert_eq!(r.solutions.len(), 16);
        assert!(r.solutions.iter().all(|s| prob.verify(s)));
    }

    #[test]
    fn carrier_bound() {
        let prob = table(fp(7)).with_max_carrier(100);
        assert!(matches!(search_solutions(&prob), Err(Error::CarrierTooLarge { size: 196, bound: 100 })));
        assert!(search_solutions(&table(FieldSpec::Rationals)).is_err());
    }

    #[test]
    fn replay_over_rationals() {
        let r = forced_constraint_replay(&table(FieldSpec::Rationals)).unwrap();
        assert_eq!(r.status, ReplayStatus::Contradiction);
        let alg = counterexample_action(FieldSpec::Rationals).algebra().clone();
        assert_eq!(describe(&alg, &r.from_pair), "1");
        assert_eq!(describe(&alg, &r.from_square), "t");
        assert_eq!(describe(&alg, &r.a_one), "1");
    }

    #[test]
    fn replay_agrees_with_search() {
        for p in [3, 5, 7] {
            for prob in [table(fp(p)), trivial(fp(p))] {
                let contradiction = forced_constraint_replay(&prob).unwrap().status == ReplayStatus::Contradiction;
                assert_eq!(contradiction, search_solutions(&prob).unwrap().solutions.is_empty());
            }
        }
    }

    #[test]
    fn replay_trivial_and_char_two() {
        assert_eq!(forced_constraint_replay(&trivial(FieldSpec::Rationals)).unwrap().status, ReplayStatus::Consistent);
        assert_eq!(forced_constraint_replay(&table(fp(2))).unwrap().status, ReplayStatus::OutOfScope);
    }

    #[test]
    fn wrong_shapes() {
        let a = Arc::new(crate::algebra::group_algebra(&FiniteGroup::cyclic(2), FieldSpec::Rationals));
        let act = WeakGAction::trivial(Arc::new(FiniteGroup::cyclic(4)), a);
        assert!(matches!(forced_constraint_replay(&ObstructionProblem::new(act).unwrap()), Err(Error::WrongShape(_))));
        let s3 = weak_action_from_extension(&GroupExtension::split(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2)), FieldSpec::Rationals).unwrap();
        let nonabelian = GroupExtension::from_normal_subgroup(FiniteGroup::dihedral(3), &[0, 1, 2], |c| c[0]).unwrap();
        assert!(ObstructionProblem::new(s3).is_ok());
        let act = weak_action_from_extension(&nonabelian, FieldSpec::Rationals).unwrap();
        assert!(matches!(ObstructionProblem::new(act), Err(Error::WrongShape(_))));
    }

    #[test]
    fn split_extension_is_solvable() {
        let ext = GroupExtension::split(FiniteGroup::cyclic(2), FiniteGroup::klein_four());
        let prob = ObstructionProblem::new(weak_action_from_extension(&ext, fp(5)).unwrap()).unwrap();
        let r = search_solutions(&prob).unwrap();
        assert!(r.solutions.contains(&vec![prob.algebra().unit().clone(); 4]));
    }

    #[test]
    fn report_json() {
        let prob = table(fp(3));
        let r = search_solutions(&prob).unwrap();
        let rep = ObstructionReport::from_search(prob.algebra(), &r);
        let s = serde_json::to_string(&rep).unwrap();
        assert_eq!(s, r#"{"field":"F3","solutions":[],"exhaustive":true}"#);
    }
}
