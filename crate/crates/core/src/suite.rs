//! Composite check runs shared by the command line and the acceptance
//! tests: the D4 table, the module-category suite and randomized
//! extensions.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{check_hopf_action, check_weak_action, weak_action_from_extension, GHopfAlgebra, COUNTEREXAMPLE_TABLE};
use crate::algebra::StructuredAlgebra;
use crate::error::Result;
use crate::field::FieldSpec;
use crate::group::{FiniteGroup, GroupExtension};
use crate::module::{
    check_alpha_coherence, check_alpha_isos, check_eta2_coherence, check_eta2_naturality, check_module, check_psi_coherence,
    check_psi_isos, endomorphism_center_dim, eta0, eta2, functor_f, hom_space, iso_law, theta_iso, ModuleMorphism, ModuleRep,
};
use crate::strict::{strictify, strictify_unchecked, Strictification};
use crate::verdict::{Check, Verdict};

pub mod law {
    pub const TABLE: &str = "compositor_table";
    pub const HOM_DIMENSIONS: &str = "hom_dimensions";
    pub const CENTER: &str = "center_dimension";
}

/// The section cocycle of `ℤ/2 → D4 → ℤ/2 × ℤ/2` against the 4×4 table,
/// entry by entry (witness `[g, h]`).
pub fn d4_table_check() -> Result<Check> {
    let coc = GroupExtension::d4().cocycle_from_section()?;
    let bad = (0..16).find(|&k| coc.c(k / 4, k % 4) != COUNTEREXAMPLE_TABLE[k / 4][k % 4]).map(|k| vec![k / 4, k % 4]);
    Ok(Check::from_witness(law::TABLE, bad))
}

/// Regular and trivial modules followed by `extra` random ones of dimension
/// at most `max_dim`, each generated by one or two random vectors inside two
/// copies of the regular module.
pub fn module_corpus(a: &Arc<StructuredAlgebra>, extra: usize, max_dim: usize, rng: &mut impl Rng) -> Result<Vec<ModuleRep>> {
    let mut out = vec![ModuleRep::regular(a.clone()), ModuleRep::trivial(a.clone())?];
    while out.len() < extra + 2 {
        let gens = rng.gen_range(1..=2);
        let m = ModuleRep::random(a.clone(), 2, gens, rng)?;
        if m.dim() > 0 && m.dim() <= max_dim {
            out.push(m);
        }
    }
    Ok(out)
}

fn merge(v: &mut Verdict, c: Check, witness: Vec<usize>) {
    match v.checks.iter_mut().find(|o| o.name == c.name) {
        Some(o) => {
            if o.passed && !c.passed {
                *o = Check::fail(c.name, witness);
            }
        }
        None => v.push(if c.passed { c } else { Check::fail(c.name, witness) }),
    }
}

fn bool_check(name: &str, ok: bool) -> Check {
    if ok {
        Check::pass(name)
    } else {
        Check::fail(name, vec![])
    }
}

/// Everything the comparison functor has to satisfy on `corpus`; witnesses
/// are corpus indices. `eta2` coherence runs over triples of the modules of
/// dimension at most `triple_dim`.
pub fn equivalence_suite(strict: &Strictification, corpus: &[ModuleRep], triple_dim: usize) -> Result<Verdict> {
    let mut v = Verdict::new();
    let in_act = strict.input_action();
    let images: Vec<ModuleRep> = corpus.iter().map(|m| functor_f(strict, m)).collect::<Result<_>>()?;
    for (i, fm) in images.iter().enumerate() {
        for c in check_module(fm) {
            merge(&mut v, Check { name: format!("{}.{}", iso_law::F_MODULE, c.name), ..c }, vec![i]);
        }
    }
    for (i, m) in corpus.iter().enumerate() {
        for (j, n) in corpus.iter().enumerate() {
            let same = hom_space(m, n)?.len() == hom_space(&images[i], &images[j])?.len();
            merge(&mut v, bool_check(law::HOM_DIMENSIONS, same), vec![i, j]);
        }
    }
    let regular = ModuleRep::regular(strict.algebra().clone());
    for (k, n) in std::iter::once(&regular).chain(images.iter()).enumerate() {
        for c in theta_iso(strict, n)?.check()? {
            merge(&mut v, c, vec![k]);
        }
    }
    let e0 = eta0(strict)?;
    v.push(bool_check(iso_law::ETA0, e0.is_morphism() && e0.is_invertible()));
    for (i, m) in corpus.iter().enumerate() {
        for (j, n) in corpus.iter().enumerate() {
            let e = eta2(strict, m, n)?;
            merge(&mut v, bool_check(iso_law::ETA2, e.morphism.is_morphism() && e.morphism.is_invertible()), vec![i, j]);
        }
    }
    // naturality along every basis morphism M → M', paired with identities
    for (i, m) in corpus.iter().enumerate() {
        for (j, mp) in corpus.iter().enumerate() {
            for f in hom_space(m, mp)? {
                let f = ModuleMorphism::new(m.clone(), mp.clone(), f)?;
                let id = ModuleMorphism::identity(&corpus[1]);
                let ok = check_eta2_naturality(strict, &f, &id)? && check_eta2_naturality(strict, &id, &f)?;
                merge(&mut v, bool_check(iso_law::ETA2_NATURAL, ok), vec![i, j]);
            }
        }
    }
    let small: Vec<usize> = (0..corpus.len()).filter(|&i| corpus[i].dim() <= triple_dim).collect();
    for &i in &small {
        for &j in &small {
            for &k in &small {
                let ok = check_eta2_coherence(strict, &corpus[i], &corpus[j], &corpus[k])?;
                merge(&mut v, bool_check(iso_law::ETA2_COHERENCE, ok), vec![i, j, k]);
            }
        }
    }
    for (i, m) in corpus.iter().enumerate() {
        merge(&mut v, check_alpha_isos(in_act, m)?, vec![i]);
        merge(&mut v, check_alpha_coherence(in_act, m)?, vec![i]);
        merge(&mut v, check_psi_isos(strict, m)?, vec![i]);
        merge(&mut v, check_psi_coherence(strict, m)?, vec![i]);
    }
    let fr = functor_f(strict, &ModuleRep::regular(strict.base().clone()))?;
    let zs = [endomorphism_center_dim(&fr)?, strict.algebra().center().len(), strict.base().center().len()];
    v.push(bool_check(law::CENTER, zs[0] == zs[1] && zs[1] == zs[2]).with_note(format!("{zs:?}")));
    Ok(v)
}

/// Groups of order at most 16 that have proper nontrivial normal subgroups.
pub fn fuzz_groups() -> Vec<FiniteGroup> {
    let c = FiniteGroup::cyclic;
    let p = |a: &FiniteGroup, b: &FiniteGroup| FiniteGroup::product(a, b);
    vec![
        c(4),
        c(6),
        c(8),
        c(9),
        c(12),
        c(16),
        FiniteGroup::klein_four(),
        FiniteGroup::dihedral(3),
        FiniteGroup::dihedral(4),
        FiniteGroup::dihedral(5),
        FiniteGroup::dihedral(6),
        FiniteGroup::dihedral(8),
        FiniteGroup::dicyclic(2),
        FiniteGroup::dicyclic(3),
        FiniteGroup::dicyclic(4),
        p(&c(2), &c(4)),
        p(&c(2), &FiniteGroup::klein_four()),
        p(&c(4), &c(4)),
        p(&c(2), &c(8)),
        p(&c(2), &FiniteGroup::dihedral(4)),
        p(&c(2), &FiniteGroup::dicyclic(2)),
        p(&c(3), &c(3)),
    ]
}

#[derive(Clone, Debug)]
pub struct FuzzCase {
    pub seed: u64,
    pub field: FieldSpec,
    pub total_order: usize,
    pub kernel_order: usize,
    pub strict_dim: usize,
    /// Weak action, Hopf action and the full strictification run.
    pub verdict: Verdict,
    /// Strictification of the action with one compositor entry multiplied
    /// by a nontrivial kernel element.
    pub mutated: Verdict,
    /// `[g, h]` of the mutated entry.
    pub mutated_entry: [usize; 2],
}

impl FuzzCase {
    pub fn passed(&self) -> bool {
        self.verdict.all_passed()
    }

    /// The mutated run fails, and its first failure carries a witness.
    pub fn control_caught(&self) -> bool {
        self.mutated.first_failure().is_some_and(|c| c.witness.as_ref().is_some_and(|w| !w.is_empty()))
    }
}

/// One randomized extension: group, normal subgroup, section and field are
/// all drawn from `seed`.
pub fn fuzz_case(seed: u64) -> Result<FuzzCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = fuzz_groups();
    let field = *[FieldSpec::Rationals, FieldSpec::prime(3)?, FieldSpec::prime(5)?].choose(&mut rng).expect("nonempty");
    let ext = loop {
        let total = groups.choose(&mut rng).expect("nonempty").clone();
        if let Some(e) = GroupExtension::random(total, &mut rng) {
            break e;
        }
    };
    let act = weak_action_from_extension(&ext, field)?;
    let mut verdict = Verdict::new();
    verdict.extend_prefixed("input.action", check_weak_action(&act)?);
    verdict.extend_prefixed("input.hopf_action", check_hopf_action(&act)?);
    let gh = GHopfAlgebra::with_trivial_grading(act.clone());
    let strict = strictify_unchecked(&gh)?;
    verdict.extend_prefixed("strict", strict.verify()?);

    let grp = act.group().clone();
    let n = grp.order();
    let (g, h) = if n == 2 {
        (0, 1)
    } else {
        (rng.gen_range(1..n), rng.gen_range(1..n))
    };
    let kernel = ext.kernel();
    let t = rng.gen_range(1..kernel.order());
    let a = act.algebra();
    let bumped = a.mul(act.c(g, h), &a.basis(t));
    let bad = act.with_compositor(g, h, bumped)?;
    let mutated = strictify_unchecked(&GHopfAlgebra::with_trivial_grading(bad))?.verify()?;
    Ok(FuzzCase {
        seed,
        field,
        total_order: ext.total().order(),
        kernel_order: kernel.order(),
        strict_dim: strict.algebra().dim(),
        verdict,
        mutated,
        mutated_entry: [g, h],
    })
}

/// The strictification of the D4 table action over `field`, checked.
pub fn d4_strictification(field: FieldSpec) -> Result<Strictification> {
    strictify(&GHopfAlgebra::with_trivial_grading(crate::action::counterexample_action(field)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches() {
        assert!(d4_table_check().unwrap().passed);
    }

    #[test]
    fn small_equivalence_suite() {
        let f7 = FieldSpec::prime(7).unwrap();
        let s = d4_strictification(f7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let corpus = module_corpus(s.base(), 1, 4, &mut rng).unwrap();
        let v = equivalence_suite(&s, &corpus, 1).unwrap();
        assert!(v.all_passed(), "{v}");
    }

    #[test]
    fn fuzz_groups_have_normal_subgroups() {
        for g in fuzz_groups() {
            assert!(g.order() <= 16);
            assert!(!g.small_normal_subgroups().is_empty(), "order {}", g.order());
        }
    }

    #[test]
    fn one_fuzz_case() {
        let c = fuzz_case(0).unwrap();
        assert!(c.passed(), "{}", c.verdict);
        assert!(c.control_caught(), "{}", c.mutated);
    }
}
