use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::fincat::{find_isomorphism, full_subcategory, FinCategory, ObjId};
use crate::homotopy::{weak_equivalence_evidence, Discrepancy, Verdict};
use crate::testkit::{arc, names, parallel_pair, poset_from_bits};
use crate::Limits;

/// Subsets of a 3-element set under inclusion; meets are intersections.
fn boolean_lattice() -> Arc<FinCategory> {
    arc(FinCategory::poset(&names("s", 8), |i, j| i & j == i))
}

fn ty(entries: &[i64]) -> ZigzagType {
    ZigzagType::new(entries.to_vec())
}

#[test]
fn normalization_examples() {
    assert_eq!(normalize_zigzag_type(&ty(&[-1, 2])), ty(&[-1, 2]));
    assert_eq!(normalize_zigzag_type(&ty(&[1, 1, -1])), ty(&[2, -1]));
    assert_eq!(normalize_zigzag_type(&ty(&[0, -1, 0, 1])), ty(&[-1, 1]));
    assert_eq!(normalize_zigzag_type(&ty(&[0, 0])), ty(&[]));
    assert_eq!(ty(&[-1, 2]).to_string(), "[-1;2]");
}

proptest! {
    #[test]
    fn normalization_is_idempotent_and_preserves_the_index_category(
        entries in proptest::collection::vec(-2i64..=2, 0..6)
    ) {
        let t = ty(&entries);
        let n = normalize_zigzag_type(&t);
        prop_assert!(n.is_normalized());
        prop_assert_eq!(normalize_zigzag_type(&n), n.clone());
        prop_assert_eq!(t.directions(), n.directions());
        let (a, b) = (zigzag_index_category(&t), zigzag_index_category(&n));
        let iso = find_isomorphism(a.base(), b.base()).expect("isomorphic index categories");
        prop_assert!(a.weq_morphisms().all(|f| b.is_weq(iso.mor(f))));
        prop_assert!(b.weq_morphisms().count() == a.weq_morphisms().count());
    }
}

#[test]
fn index_category_examples() {
    let arrow = zigzag_index_category(&ty(&[1]));
    assert_eq!((arrow.base().object_count(), arrow.base().morphism_count()), (2, 3));
    assert_eq!(arrow.weq_morphisms().count(), 2);

    let c = zigzag_index_category(&ty(&[-1, 2]));
    let b = c.base();
    assert_eq!(b.object_count(), 4);
    let hom = |i: u32, j: u32| b.hom(ObjId(i), ObjId(j)).to_vec();
    assert!(c.is_weq(hom(1, 0)[0]));
    assert!(!c.is_weq(hom(1, 2)[0]));
    assert!(!c.is_weq(hom(2, 3)[0]));
    assert!(hom(0, 1).is_empty());
    // Free on the graph: 4 identities, 3 generators, 1→3.
    assert_eq!(b.morphism_count(), 8);

    // [-1; 1] is the span 0 <- 1 -> 2.
    let s = zigzag_index_category(&ty(&[-1, 1]));
    let sb = s.base();
    assert_eq!(sb.out(ObjId(1)).len(), 3);
    assert!(s.is_weq(sb.hom(ObjId(1), ObjId(0))[0]));
    assert!(!s.is_weq(sb.hom(ObjId(1), ObjId(2))[0]));

    let empty = zigzag_index_category(&ty(&[]));
    assert_eq!(empty.base().object_count(), 1);
}

#[test]
fn relative_category_validation() {
    let c = arc(FinCategory::ordinal(2));
    let f01 = c.hom(ObjId(0), ObjId(1))[0];
    let f12 = c.hom(ObjId(1), ObjId(2))[0];
    assert!(RelCategory::new(c.clone(), [f01, f12]).is_err());
    let ids: Vec<MorId> = c.objects().map(|x| c.id(x)).collect();
    let r = RelCategory::new(c.clone(), ids.iter().copied().chain([f01])).unwrap();
    assert!(r.two_out_of_three());
    assert!(RelCategory::maximal(c.clone()).two_out_of_three());
    let f02 = c.hom(ObjId(0), ObjId(2))[0];
    let broken = RelCategory::new(c.clone(), ids.iter().copied().chain([f02, f12])).unwrap();
    assert_eq!(broken.two_out_of_three_violation(), Some((f12, f01)));
    assert!(RelCategory::isomorphisms(arc(FinCategory::cyclic_group(2))).is_category_with_weak_equivalences());
    let g = RelFunctor::new(&RelCategory::minimal(c.clone()), &r, Functor::identity(c.clone()));
    assert!(g.is_ok());
    assert!(RelFunctor::new(&r, &RelCategory::minimal(c.clone()), Functor::identity(c)).is_err());
}

#[test]
fn rightward_zigzags_in_a_minimal_category_are_homs() {
    let c = RelCategory::minimal(arc(parallel_pair()));
    let z = zigzag_category(&c, &ty(&[1]), ObjId(0), ObjId(1), &Limits::default()).unwrap();
    assert_eq!(z.category.object_count(), 2);
    assert_eq!(z.category.morphism_count(), 2);
}

#[test]
fn empty_type_is_terminal_or_empty() {
    let c = RelCategory::maximal(boolean_lattice());
    let same = zigzag_category(&c, &ty(&[]), ObjId(3), ObjId(3), &Limits::default()).unwrap();
    assert_eq!((same.category.object_count(), same.category.morphism_count()), (1, 1));
    let other = zigzag_category(&c, &ty(&[]), ObjId(3), ObjId(1), &Limits::default()).unwrap();
    assert_eq!(other.category.object_count(), 0);
}

#[test]
fn cocycles_in_a_semilattice_form_the_down_set_of_the_meet() {
    let l = boolean_lattice();
    let c = RelCategory::maximal(l.clone());
    for x in 0..8u32 {
        for y in 0..8u32 {
            let z = zigzag_category(&c, &ty(&[-1, 1]), ObjId(x), ObjId(y), &Limits::default()).unwrap();
            let down: Vec<ObjId> = (0..8u32).filter(|&s| s & x & y == s).map(ObjId).collect();
            let (expected, _) = full_subcategory(&l, &down);
            assert!(find_isomorphism(&z.category, &expected).is_some(), "X={x} Y={y}");
            for w in &z.zigzags {
                assert!(w.is_valid(&c, &z.directions));
                assert_eq!((w.domain(), w.codomain()), (ObjId(x), ObjId(y)));
            }
        }
    }
}

#[test]
fn double_cocycles_match_brute_force() {
    let l = boolean_lattice();
    let c = RelCategory::maximal(l.clone());
    let le = |a: u32, b: u32| a & b == a;
    for (x, y) in [(7u32, 7u32), (3, 5), (1, 2), (6, 6), (0, 7)] {
        let z = zigzag_category(&c, &ty(&[-1, 1, -1, 1]), ObjId(x), ObjId(y), &Limits::default()).unwrap();
        let mut count = 0;
        for z1 in 0..8 {
            for w in 0..8 {
                for z2 in 0..8 {
                    if le(z1, x) && le(z1, w) && le(z2, w) && le(z2, y) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(z.category.object_count(), count, "X={x} Y={y}");
    }
}

#[test]
fn zigzag_size_cap() {
    let c = RelCategory::maximal(boolean_lattice());
    let limits = Limits::with_morphism_cap(5);
    let r = zigzag_category(&c, &ty(&[-1, 1, -1, 1]), ObjId(7), ObjId(7), &limits);
    assert!(matches!(r, Err(crate::Error::SizeCapExceeded { .. })));
}

fn check_full_embedding(c: &RelCategory, k: usize, l: usize, x: ObjId, y: ObjId) {
    let (source, target, f) = insertion_functor(c, k, l, x, y, &Limits::default()).unwrap();
    assert!(f.is_injective_on_objects());
    assert!(f.is_fully_faithful());
    let at = 1 + k;
    let inserted: Vec<ObjId> = target
        .category
        .objects()
        .filter(|&o| c.base().is_identity(target.zigzag(o).arrows[at]))
        .collect();
    let mut image: Vec<ObjId> = source.category.objects().map(|o| f.obj(o)).collect();
    image.sort();
    assert_eq!(image, inserted);
}

#[test]
fn insertion_is_a_full_embedding() {
    let lattice = RelCategory::maximal(boolean_lattice());
    let minimal = RelCategory::minimal(arc(parallel_pair()));
    let chain = RelCategory::isomorphisms(arc(FinCategory::ordinal(2)));
    for c in [&lattice, &minimal, &chain] {
        for k in 0..=1 {
            for l in 0..=1 {
                for x in c.base().objects() {
                    for y in c.base().objects() {
                        check_full_embedding(c, k, l, x, y);
                    }
                }
            }
        }
    }
}

#[test]
fn insertion_with_k_and_l_zero() {
    let c = RelCategory::maximal(boolean_lattice());
    for (x, y) in [(7u32, 1u32), (3, 3), (1, 2)] {
        let (source, target, f) = insertion_functor(&c, 0, 0, ObjId(x), ObjId(y), &Limits::default()).unwrap();
        let expected_source = usize::from(y & x == y);
        let interval = (0..8u32).filter(|&z| y & z == y && z & x == z).count();
        assert_eq!(source.category.object_count(), expected_source);
        assert_eq!(target.category.object_count(), interval);
        assert!(!weak_equivalence_evidence(&f, 3, &Limits::default()).unwrap().is_refuted());
    }
}

#[test]
fn insertion_in_a_minimal_category_is_a_bijection_onto_identity_zigzags() {
    let c = RelCategory::minimal(arc(parallel_pair()));
    let (source, target, f) = insertion_functor(&c, 1, 1, ObjId(0), ObjId(1), &Limits::default()).unwrap();
    assert_eq!(source.category.morphism_count(), source.category.object_count());
    assert_eq!(target.category.morphism_count(), target.category.object_count());
    assert_eq!(source.category.object_count(), target.category.object_count());
    assert!(f.is_bijective());
}

#[test]
fn fractions_on_the_terminal_category_are_certified() {
    let c = RelCategory::maximal(arc(FinCategory::terminal()));
    let report = check_right_fractions(&c, FractionsConfig::default(), &Limits::default()).unwrap();
    assert!(report.overall.is_certified());
    assert_eq!(report.instances.len(), 2 * 4);
}

#[test]
fn fractions_hold_in_a_semilattice() {
    let c = RelCategory::maximal(boolean_lattice());
    let report = check_right_fractions(&c, FractionsConfig::default(), &Limits::default()).unwrap();
    assert_eq!(report.refuted().count(), 0);
    assert_eq!(report.size_capped(), 0);
    assert!(!report.overall.is_refuted());
    let keys: Vec<_> = report.instances.iter().map(|i| i.key).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

/// `p0 < p1 < p2` with `p0 -> p2` and `p1 -> p2` weak but `p0 -> p1` not,
/// found by exhaustive search over posets on at most four objects.
#[test]
fn broken_two_out_of_three_is_refuted() {
    let p = arc(poset_from_bits(3, 0b101));
    let m = |a: u32, b: u32| p.hom(ObjId(a), ObjId(b))[0];
    let ids: Vec<MorId> = p.objects().map(|x| p.id(x)).collect();
    let c = RelCategory::new(p.clone(), ids.into_iter().chain([m(0, 2), m(1, 2)])).unwrap();
    assert!(!c.two_out_of_three());
    let report = check_right_fractions(&c, FractionsConfig::default(), &Limits::default()).unwrap();
    let witness = report.refuted().next().unwrap();
    assert_eq!((witness.key.k, witness.key.l), (1, 0));
    assert_eq!((witness.x_name.as_str(), witness.y_name.as_str()), ("p1", "p0"));
    assert_eq!(
        witness.outcome,
        InstanceOutcome::Evaluated {
            source_objects: 0,
            target_objects: 1,
            verdict: Verdict::Refuted(Discrepancy::Components { source: 0, target: 1 }),
        }
    );
    assert!(report.overall.is_refuted());
    assert!(report.instances.iter().all(|i| i.key.subject == Subject::Base));
}

#[test]
fn induced_functors_on_cocycles_are_not_refuted() {
    let c = RelCategory::maximal(boolean_lattice());
    let base = c.base().clone();
    let limits = Limits::default();
    let t = ty(&[-1, 1]);
    for x in base.morphisms() {
        for y in base.morphisms().step_by(3) {
            let (_, _, f) = cocycle_pushforward(&c, &t, x, y, &limits).unwrap();
            assert!(!weak_equivalence_evidence(&f, 3, &limits).unwrap().is_refuted());
        }
    }
}

#[test]
fn pushforward_requires_weak_equivalences() {
    let p = arc(FinCategory::ordinal(1));
    let c = RelCategory::minimal(p.clone());
    let f = p.hom(ObjId(0), ObjId(1))[0];
    let r = cocycle_pushforward(&c, &ty(&[-1, 1]), f, p.id(ObjId(0)), &Limits::default());
    assert!(matches!(r, Err(crate::Error::Precondition(_))));
    assert!(cocycle_pushforward(&c, &ty(&[1, -1]), p.id(ObjId(0)), p.id(ObjId(0)), &Limits::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn zigzags_satisfy_their_invariants(n in 1usize..=4, bits in any::<u64>(), mask in any::<u32>(), x in 0u32..4, y in 0u32..4) {
        let p = arc(poset_from_bits(n, bits));
        let (x, y) = (ObjId(x % n as u32), ObjId(y % n as u32));
        // Weak equivalences: identities plus the morphisms selected by mask, closed up.
        let mut weq: Vec<bool> = p.morphisms().map(|f| p.is_identity(f) || mask >> (f.0 % 32) & 1 == 1).collect();
        loop {
            let mut changed = false;
            for (g, f, gf) in p.composition_triples() {
                if weq[g.idx()] && weq[f.idx()] && !weq[gf.idx()] {
                    weq[gf.idx()] = true;
                    changed = true;
                }
            }
            if !changed { break; }
        }
        let c = RelCategory::new(p.clone(), p.morphisms().filter(|f| weq[f.idx()])).unwrap();
        for t in [ty(&[-1, 1]), ty(&[-1, 1, -1]), ty(&[1, -1, 1])] {
            let z = zigzag_category(&c, &t, x, y, &Limits::default()).unwrap();
            prop_assert!(z.category.law_violations().is_empty());
            for w in &z.zigzags {
                prop_assert!(w.is_valid(&c, &z.directions));
                prop_assert_eq!((w.domain(), w.codomain()), (x, y));
            }
            for f in z.category.morphisms() {
                let v = &z.verticals[f.idx()];
                prop_assert!(v.iter().all(|&m| c.is_weq(m)));
                prop_assert!(p.is_identity(v[0]) && p.is_identity(v[v.len() - 1]));
            }
        }
    }
}
