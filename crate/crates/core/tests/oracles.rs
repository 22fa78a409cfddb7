//! Frozen values computed by hand for small cases.

use std::sync::Arc;

use hopf_strict::action::{counterexample_action, weak_action_from_extension, WeakGAction, COUNTEREXAMPLE_TABLE};
use hopf_strict::algebra::{group_algebra, Counital};
use hopf_strict::group::{FiniteGroup, GroupExtension};
use hopf_strict::linalg::Vector;
use hopf_strict::module::{functor_f, hom_space, tensor_unit, ModuleRep};
use hopf_strict::obstruction::{
    forced_constraint_replay, search_solutions, unit_group, ObstructionProblem, ObstructionReport, ReplayStatus,
};
use hopf_strict::suite::d4_strictification;
use hopf_strict::FieldSpec;

fn f(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

#[test]
fn d4_section_cocycle_table() {
    let coc = GroupExtension::d4().cocycle_from_section().unwrap();
    let table: Vec<Vec<usize>> = (0..4).map(|g| (0..4).map(|h| coc.c(g, h)).collect()).collect();
    assert_eq!(table, vec![vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 0, 0]]);
    assert_eq!(table, COUNTEREXAMPLE_TABLE.map(|r| r.to_vec()).to_vec());
}

#[test]
fn derived_action_is_the_table_action() {
    let derived = weak_action_from_extension(&GroupExtension::d4(), FieldSpec::Rationals).unwrap();
    let table = counterexample_action(FieldSpec::Rationals);
    assert_eq!(derived.compositors(), table.compositors());
    assert!(derived.is_strict() == table.is_strict());
}

#[test]
fn dihedral_storage() {
    // a^i b^j at j·n + i
    let d = FiniteGroup::dihedral(4);
    let (a, b) = (1, 4);
    assert_eq!(d.order(), 8);
    assert_eq!(d.element_order(a), 4);
    assert_eq!(d.element_order(b), 2);
    assert_eq!(d.mul(d.mul(b, a), b), d.inv(a));
    assert_eq!(d.mul(a, b), 5);
}

#[test]
fn kronecker_index() {
    let f5 = f(5);
    let x = Vector::from_i64(f5, &[1, 2]);
    let y = Vector::from_i64(f5, &[3, 0, 1]);
    assert_eq!(x.kron(&y), Vector::from_i64(f5, &[3, 0, 1, 6, 0, 2]));
}

#[test]
fn strict_d4_dimensions() {
    let s = d4_strictification(FieldSpec::Rationals).unwrap();
    let a = s.algebra();
    assert_eq!(a.dim(), 32);
    assert_eq!(s.index().index(1, 1, 2), 14);
    assert_eq!(a.label(14), "d:t1|a:t|k:t2");
    assert_eq!(a.counital_subalgebra(Counital::Target).unwrap().len(), 4);
    assert_eq!(a.counital_subalgebra(Counital::Source).unwrap().len(), 4);
    // Morita invariance: the centers of A and A^str agree
    assert_eq!(a.center().len(), 2);
    let (unit, _) = tensor_unit(a).unwrap();
    assert_eq!(unit.dim(), 4);
}

#[test]
fn hom_dimensions_over_f7() {
    let s = d4_strictification(f(7)).unwrap();
    let reg = ModuleRep::regular(s.base().clone());
    let triv = ModuleRep::trivial(s.base().clone()).unwrap();
    assert_eq!(hom_space(&reg, &reg).unwrap().len(), 2);
    assert_eq!(hom_space(&reg, &triv).unwrap().len(), 1);
    let (fr, ft) = (functor_f(&s, &reg).unwrap(), functor_f(&s, &triv).unwrap());
    assert_eq!((fr.dim(), ft.dim()), (8, 4));
    assert_eq!(hom_space(&fr, &fr).unwrap().len(), 2);
    assert_eq!(hom_space(&fr, &ft).unwrap().len(), 1);
}

#[test]
fn unit_groups_of_split_group_algebra() {
    // F_p[ℤ/2] ≅ F_p × F_p for odd p
    for (p, n) in [(3, 4), (5, 16), (7, 36)] {
        assert_eq!(unit_group(&group_algebra(&FiniteGroup::cyclic(2), f(p))).unwrap().len(), n);
    }
    // F_2[ℤ/2] = F_2[t]/(t+1)²: units 1 and t
    assert_eq!(unit_group(&group_algebra(&FiniteGroup::cyclic(2), f(2))).unwrap().len(), 2);
}

#[test]
fn trivial_cocycle_solutions_are_homomorphisms() {
    // Hom(ℤ/2 × ℤ/2, (ℤ/(p-1))²) has 16 elements for every odd p
    for p in [3, 5, 7] {
        let a = counterexample_action(f(p));
        let prob = ObstructionProblem::new(WeakGAction::trivial(a.group().clone(), a.algebra().clone())).unwrap();
        assert_eq!(search_solutions(&prob).unwrap().solutions.len(), 16, "F{p}");
    }
}

#[test]
fn table_report_json() {
    let a = counterexample_action(f(3));
    let r = search_solutions(&ObstructionProblem::new(a.clone()).unwrap()).unwrap();
    let json = serde_json::to_string(&ObstructionReport::from_search(a.algebra(), &r)).unwrap();
    assert_eq!(json, r#"{"field":"F3","solutions":[],"exhaustive":true}"#);
}

#[test]
fn replay_values() {
    let r = forced_constraint_replay(&ObstructionProblem::new(counterexample_action(FieldSpec::Rationals)).unwrap()).unwrap();
    assert_eq!(r.status, ReplayStatus::Contradiction);
    let alg = counterexample_action(FieldSpec::Rationals).algebra().clone();
    assert_eq!(r.a_one, alg.basis(0));
    assert_eq!(r.from_square, alg.basis(1));
    assert_eq!(r.from_pair, alg.basis(0));

    let r2 = forced_constraint_replay(&ObstructionProblem::new(counterexample_action(f(2))).unwrap()).unwrap();
    assert_eq!(r2.status, ReplayStatus::OutOfScope);
}

#[test]
fn trivial_group_strictification_is_the_input() {
    let alg = Arc::new(group_algebra(&FiniteGroup::cyclic(3), FieldSpec::Rationals));
    let act = WeakGAction::trivial(Arc::new(FiniteGroup::trivial()), alg.clone());
    let s = hopf_strict::strict::strictify(&hopf_strict::action::GHopfAlgebra::with_trivial_grading(act)).unwrap();
    assert_eq!(s.algebra().dim(), 3);
    assert!(s.verify().unwrap().all_passed());
}
