use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::error::{Limits, Violation};
use crate::testkit::{arc, names, parallel_pair, poset_from_bits, small_category};

fn s(x: &str) -> String {
    x.to_string()
}

fn arrow_raw() -> RawCategory {
    RawCategory {
        objects: vec![s("0"), s("1")],
        morphisms: vec![(s("i0"), s("0"), s("0")), (s("i1"), s("1"), s("1")), (s("f"), s("0"), s("1"))],
        identities: vec![(s("0"), s("i0")), (s("1"), s("i1"))],
        composition: vec![
            (s("i0"), s("i0"), s("i0")),
            (s("i1"), s("i1"), s("i1")),
            (s("f"), s("i0"), s("f")),
            (s("i1"), s("f"), s("f")),
        ],
    }
}

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn validate_terminal_and_arrow() {
    let t = FinCategory::terminal().to_raw();
    let t = validate_category(&t).unwrap();
    assert_eq!((t.object_count(), t.morphism_count()), (1, 1));
    let a = validate_category(&arrow_raw()).unwrap();
    assert_eq!((a.object_count(), a.morphism_count()), (2, 3));
}

#[test]
fn validate_rejects_self_composite_of_arrow() {
    let mut raw = arrow_raw();
    raw.composition.push((s("f"), s("f"), s("f")));
    let errs = validate_category(&raw).unwrap_err();
    assert!(errs.iter().any(|v| matches!(v, Violation::DanglingComposite { g, f, .. } if g == "f" && f == "f")));
}

#[test]
fn validate_reports_missing_identity_and_composites() {
    let mut raw = arrow_raw();
    raw.identities.pop();
    let errs = validate_category(&raw).unwrap_err();
    assert!(errs.contains(&Violation::MissingIdentity { object: s("1") }));

    let mut raw = arrow_raw();
    raw.composition.retain(|t| t.0 != "i1" || t.1 != "f");
    let errs = validate_category(&raw).unwrap_err();
    assert!(errs.contains(&Violation::MissingComposite { g: s("i1"), f: s("f") }));
}

#[test]
fn validate_detects_non_associativity() {
    // One object with a unital table on {e, a, b} that breaks associativity:
    // a∘(b∘a) = a∘b = a but (a∘b)∘a = a∘a = b.
    let objects = vec![s("x")];
    let morphisms = vec![(s("e"), s("x"), s("x")), (s("a"), s("x"), s("x")), (s("b"), s("x"), s("x"))];
    let mut composition = Vec::new();
    for m in ["e", "a", "b"] {
        composition.push((s("e"), s(m), s(m)));
        if m != "e" {
            composition.push((s(m), s("e"), s(m)));
        }
    }
    composition.extend([
        (s("a"), s("a"), s("b")),
        (s("a"), s("b"), s("a")),
        (s("b"), s("a"), s("b")),
        (s("b"), s("b"), s("b")),
    ]);
    let raw = RawCategory { objects, morphisms, identities: vec![(s("x"), s("e"))], composition };
    let errs = validate_category(&raw).unwrap_err();
    assert!(errs.iter().any(|v| matches!(v, Violation::NonAssociative { .. })));
}

#[test]
fn validate_rejects_unknown_names() {
    let mut raw = arrow_raw();
    raw.morphisms.push((s("g"), s("0"), s("2")));
    let errs = validate_category(&raw).unwrap_err();
    assert!(matches!(&errs[0], Violation::UnknownObject { name, .. } if name == "2"));
}

#[test]
fn to_raw_round_trips() {
    for c in [FinCategory::ordinal(3), FinCategory::cyclic_group(3), parallel_pair()] {
        let back = validate_category(&c.to_raw()).unwrap();
        assert_eq!(back.to_raw(), c.to_raw());
    }
}

#[test]
fn comma_of_identity_on_terminal_is_terminal() {
    let t = arc(FinCategory::terminal());
    let comma = comma_category(&Functor::identity(t), ObjId(0), &lim()).unwrap();
    assert_eq!((comma.category.object_count(), comma.category.morphism_count()), (1, 1));
}

#[test]
fn comma_of_identity_on_arrow_under_zero_is_arrow() {
    let a = arc(FinCategory::ordinal(1));
    let comma = comma_category(&Functor::identity(a.clone()), ObjId(0), &lim()).unwrap();
    // Objects are id₀ and 0 -> 1, exactly the morphisms out of 0.
    assert_eq!(comma.category.object_count(), a.out(ObjId(0)).len());
    assert!(find_isomorphism(&comma.category, &a).is_some());
}

/// Commuting triangles `F(g) ∘ u = u'` counted straight from the definition.
fn brute_comma_under(f: &Functor, d: ObjId) -> (usize, usize) {
    let (c, t) = (f.source(), f.target());
    let objs: Vec<(ObjId, MorId)> = c
        .objects()
        .flat_map(|x| t.morphisms().filter(move |&u| t.dom(u) == d && t.cod(u) == f.obj(x)).map(move |u| (x, u)))
        .collect();
    let mut mors = 0;
    for &(x, u) in &objs {
        for &(y, v) in &objs {
            for g in c.morphisms() {
                if c.dom(g) == x && c.cod(g) == y && t.compose(f.mor(g), u) == v {
                    mors += 1;
                }
            }
        }
    }
    (objs.len(), mors)
}

#[test]
fn comma_of_point_in_bz2() {
    let g = arc(FinCategory::cyclic_group(2));
    let point = Functor::from_terminal(g.clone(), ObjId(0));
    let comma = comma_category(&point, ObjId(0), &lim()).unwrap();
    // Only the identity of the point can connect two elements u, u'; the
    // result is discrete on the two elements of Z/2.
    assert_eq!(brute_comma_under(&point, ObjId(0)), (2, 2));
    assert_eq!((comma.category.object_count(), comma.category.morphism_count()), (2, 2));
    // Under the identity of B(Z/2) every pair of elements is joined by
    // exactly one group element: the codiscrete category on two objects.
    let id = Functor::identity(g);
    let comma = comma_category(&id, ObjId(0), &lim()).unwrap();
    assert_eq!(brute_comma_under(&id, ObjId(0)), (2, 4));
    let c = &comma.category;
    assert!(c.objects().all(|x| c.objects().all(|y| c.hom(x, y).len() == 1)));
}

#[test]
fn comma_over_terminal_objects_give_right_adjoint_data() {
    let l = arc(FinCategory::ordinal(2));
    let f = Functor::to_terminal(l.clone());
    let comma = comma_over(&f, ObjId(0), &lim()).unwrap();
    assert!(comma.category.law_violations().is_empty());
    assert_eq!(comma.category.terminal_objects().collect::<Vec<_>>(), vec![ObjId(2)]);
}

fn oplax_arrow_example() -> CatDiagram {
    let c = arc(FinCategory::ordinal(1));
    let x0 = arc(FinCategory::terminal());
    let x1 = arc(FinCategory::ordinal(1));
    let arrow = c.morphism_named("0<=1").unwrap();
    let mut functors = Vec::new();
    for f in c.morphisms() {
        functors.push(if f == arrow {
            Functor::to_terminal(x1.clone()).retarget(x1.clone(), x0.clone()).unwrap()
        } else if c.dom(f) == ObjId(0) {
            Functor::identity(x0.clone())
        } else {
            Functor::identity(x1.clone())
        });
    }
    CatDiagram::new(c, vec![x0, x1], functors).unwrap()
}

#[test]
fn oplax_colimit_of_arrow_diagram() {
    let x = oplax_arrow_example();
    let ox = oplax_colimit(&x, &lim()).unwrap();
    // Direct count of pairs (f: c' -> c, g: x' -> X(f)(x)).
    let c = x.index();
    let mut count = 0;
    for f in c.morphisms() {
        let xf = x.functor(f);
        let inner = x.value(c.dom(f));
        for xs in x.value(c.dom(f)).objects() {
            for xt in x.value(c.cod(f)).objects() {
                count += inner.hom(xs, xf.obj(xt)).len();
            }
        }
    }
    assert_eq!(ox.category.object_count(), 3);
    assert_eq!(ox.category.morphism_count(), count);
    assert_eq!(count, 6);
    assert!(find_isomorphism(&ox.category, &arc(FinCategory::ordinal(2))).is_some());
    assert!(ox.category.law_violations().is_empty());
}

#[test]
fn oplax_colimit_of_constant_terminal_is_index() {
    let c = arc(parallel_pair());
    let x = CatDiagram::constant(c.clone(), arc(FinCategory::terminal()));
    let ox = oplax_colimit(&x, &lim()).unwrap();
    assert!(find_isomorphism(&ox.category, &c).is_some());
}

#[test]
fn oplax_colimit_rejects_non_functorial_diagram() {
    let c = arc(FinCategory::ordinal(2));
    let v = arc(FinCategory::cyclic_group(2));
    let ident = Functor::new(v.clone(), v.clone(), vec![ObjId(0)], vec![MorId(0), MorId(1)]).unwrap();
    // X(0<=2) must equal X(0<=1) ∘ X(1<=2), which is the identity.
    let bad = Functor::constant(v.clone(), v.clone(), ObjId(0));
    let functors: Vec<Functor> = c
        .morphisms()
        .map(|f| if c.mor_name(f) == "0<=2" { bad.clone() } else { ident.clone() })
        .collect();
    assert!(matches!(CatDiagram::new(c, vec![v.clone(), v.clone(), v], functors), Err(crate::Error::NotAFunctor(_))));
}

#[test]
fn grothendieck_fibration_examples() {
    let c = arc(FinCategory::ordinal(1));
    assert!(is_grothendieck_fibration(&Functor::identity(c.clone())).is_fibration());

    let d = arc(FinCategory::cyclic_group(2));
    let prod = product_category(&c, &d, &lim()).unwrap();
    let check = is_grothendieck_fibration(&prod.left);
    let lifts = check.lifts().expect("projection is a fibration");
    for (&(e, g), &phi) in lifts {
        // The chosen lift of g is (g, id).
        let (_, y) = (prod.left.obj(e), prod.right.obj(e));
        assert_eq!(prod.left.mor(phi), g);
        assert_eq!(prod.right.mor(phi), d.id(y));
    }

    let one = Functor::from_terminal(c.clone(), ObjId(1));
    assert_eq!(
        is_grothendieck_fibration(&one),
        FibrationCheck::NoLift { e: ObjId(0), g: c.morphism_named("0<=1").unwrap() }
    );
}

#[test]
fn cartesian_witness_lists_unique_fillers() {
    let c = arc(FinCategory::ordinal(1));
    let d = arc(FinCategory::ordinal(1));
    let prod = product_category(&c, &d, &lim()).unwrap();
    let e = &prod.category;
    for phi in e.morphisms() {
        let w = cartesian_witness(&prod.left, phi);
        assert_eq!(w.is_some(), is_cartesian(&prod.left, phi));
        if let Some(w) = w {
            for (psi, h, chi) in w.fillers {
                assert_eq!(e.compose(phi, chi), psi);
                assert_eq!(prod.left.mor(chi), h);
            }
        }
    }
}

#[test]
fn strict_fibre_examples() {
    let c = arc(FinCategory::ordinal(2));
    let (fib, _) = strict_fibre(&Functor::identity(c.clone()), ObjId(1)).unwrap();
    assert_eq!((fib.object_count(), fib.morphism_count()), (1, 1));

    let d = arc(parallel_pair());
    let prod = product_category(&c, &d, &lim()).unwrap();
    for b in c.objects() {
        let (fib, _) = strict_fibre(&prod.left, b).unwrap();
        assert!(find_isomorphism(&fib, &d).is_some());
    }

    let x = oplax_arrow_example();
    let ox = oplax_colimit(&x, &lim()).unwrap();
    for b in x.index().objects() {
        let (fib, _) = strict_fibre(&ox.projection, b).unwrap();
        assert!(find_isomorphism(&fib, x.value(b)).is_some());
    }
    assert!(matches!(strict_fibre(&ox.projection, ObjId(9)), Err(crate::Error::UnknownObject(_))));
}

#[test]
fn right_adjoint_examples() {
    let c = arc(poset_from_bits(3, 0b111));
    let adj = find_right_adjoint(&Functor::identity(c.clone())).unwrap();
    assert!(adj.right.same_as(&Functor::identity(c.clone())));

    // A meet-semilattice with top: {0, a, b, top} with 0 ≤ a, b ≤ top.
    let l = arc(FinCategory::poset(&names("x", 4), |i, j| i == j || i == 0 || j == 3));
    let adj = find_right_adjoint(&Functor::to_terminal(l.clone())).unwrap();
    assert_eq!(adj.right.obj(ObjId(0)), ObjId(3));

    // 0 is initial in [1], so the point at 0 is left adjoint to [1] -> 1; the
    // point at 1 has no right adjoint since nothing maps from 1 to 0.
    let a = arc(FinCategory::ordinal(1));
    let at0 = Functor::from_terminal(a.clone(), ObjId(0));
    let at1 = Functor::from_terminal(a.clone(), ObjId(1));
    assert!(find_right_adjoint(&at0).is_some());
    assert!(find_right_adjoint(&at1).is_none());
    assert!(find_left_adjoint(&at1).is_some());
    assert!(find_left_adjoint(&at0).is_none());
}

#[test]
fn pullback_examples() {
    let c = arc(parallel_pair());
    let e = arc(poset_from_bits(3, 0b011));
    let p = Functor::to_terminal(e.clone());
    let id_t = Functor::identity(p.target().clone());
    let pb = pullback_category(&id_t, &p, &lim()).unwrap();
    assert!(find_isomorphism(&pb.category, &e).is_some());

    let f = Functor::to_terminal(c.clone());
    let pb = pullback_category(&f, &id_t, &lim()).unwrap();
    assert!(find_isomorphism(&pb.category, &c).is_some());

    let d = arc(FinCategory::cyclic_group(2));
    let prod = product_category(&c, &d, &lim()).unwrap();
    for x in c.objects() {
        let point = Functor::from_terminal(c.clone(), x);
        let pb = pullback_category(&point, &prod.left, &lim()).unwrap();
        let (fib, _) = strict_fibre(&prod.left, x).unwrap();
        assert!(find_isomorphism(&pb.category, &fib).is_some());
    }
}

#[test]
fn functor_enumeration_counts() {
    // Functors [1] -> [2] are monotone maps of chains: C(4, 2) = 6.
    let a = arc(FinCategory::ordinal(1));
    let b = arc(FinCategory::ordinal(2));
    assert_eq!(enumerate_functors(&a, &b, usize::MAX).len(), 6);
    // Endofunctors of B(Z/3) are group endomorphisms: 3.
    let g = arc(FinCategory::cyclic_group(3));
    assert_eq!(enumerate_functors(&g, &g, usize::MAX).len(), 3);
    // Functors from the parallel pair to B(Z/2): 2 * 2.
    let pp = arc(parallel_pair());
    let z2 = arc(FinCategory::cyclic_group(2));
    assert_eq!(enumerate_functors(&pp, &z2, usize::MAX).len(), 4);
}

fn relabel(c: &FinCategory) -> FinCategory {
    let obj: Vec<String> = c.object_names().iter().map(|n| alloc::format!("o:{n}")).collect();
    let mor: Vec<String> = c.morphism_names().iter().map(|n| alloc::format!("m:{n}")).collect();
    c.relabeled(obj, mor)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn comma_categories_validate(c in small_category(), d in small_category(), pick in any::<usize>()) {
        let (c, d) = (arc(c), arc(d));
        let functors = enumerate_functors(&c, &d, 64);
        prop_assume!(!functors.is_empty());
        let f = &functors[pick % functors.len()];
        for x in d.objects() {
            let comma = comma_category(f, x, &lim()).unwrap();
            prop_assert!(validate_category(&comma.category.to_raw()).is_ok());
            let over = comma_over(f, x, &lim()).unwrap();
            prop_assert!(validate_category(&over.category.to_raw()).is_ok());
        }
    }

    #[test]
    fn fibration_check_ignores_names(c in small_category(), d in small_category(), pick in any::<usize>()) {
        let (c, d) = (arc(c), arc(d));
        let functors = enumerate_functors(&c, &d, 64);
        prop_assume!(!functors.is_empty());
        let f = &functors[pick % functors.len()];
        let renamed = f.retarget(arc(relabel(&c)), arc(relabel(&d))).unwrap();
        prop_assert_eq!(
            is_grothendieck_fibration(f).is_fibration(),
            is_grothendieck_fibration(&renamed).is_fibration()
        );
    }

    #[test]
    fn pullback_of_left_adjoint_along_fibration(e in small_category(), b in small_category(), b2 in small_category(), i in any::<usize>(), j in any::<usize>()) {
        let (e, b, b2) = (arc(e), arc(b), arc(b2));
        let ps = enumerate_functors(&e, &b, 64);
        let fs = enumerate_functors(&b2, &b, 64);
        prop_assume!(!ps.is_empty() && !fs.is_empty());
        let (p, f) = (&ps[i % ps.len()], &fs[j % fs.len()]);
        prop_assume!(is_grothendieck_fibration(p).is_fibration());
        prop_assume!(find_right_adjoint(f).is_some());
        let pb = pullback_category(f, p, &lim()).unwrap();
        // The pulled-back functor E' -> E.
        prop_assert!(find_right_adjoint(&pb.right).is_some());
    }

    #[test]
    fn oplax_colimit_of_sets_is_category_of_elements(c in small_category(), seed in any::<u64>()) {
        let c = arc(c);
        let x = crate::testkit_diagrams::random_set_diagram(&c, seed);
        let ox = oplax_colimit(&x.to_cat_diagram(), &lim()).unwrap();
        let (el, _, _) = category_of_elements(&x, &lim()).unwrap();
        // The canonical pairing ⟨c, x⟩ <-> (c, x) with morphism (f, id) <-> f.
        let obj_map: Vec<ObjId> = ox.objects.iter().map(|&(a, v)| {
            ObjId(el.object_names().iter().position(|n| *n == alloc::format!("({},{})", c.obj_name(a), v.0)).unwrap() as u32)
        }).collect();
        let mor_map: Vec<MorId> = ox.morphisms.iter().enumerate().map(|(k, &(f, _))| {
            let cod = ox.category.cod(MorId(k as u32));
            let dom = ox.category.dom(MorId(k as u32));
            let (ed, ec) = (obj_map[dom.idx()], obj_map[cod.idx()]);
            *el.hom(ed, ec).iter().find(|&&m| el.mor_name(m).starts_with(&alloc::format!("{}:", c.mor_name(f)))).unwrap()
        }).collect();
        let iso = Functor::new(ox.category.clone(), el.clone(), obj_map, mor_map).unwrap();
        prop_assert!(iso.is_bijective());
    }

    #[test]
    fn derived_categories_satisfy_laws(c in small_category(), d in small_category()) {
        let (c, d) = (arc(c), arc(d));
        let prod = product_category(&c, &d, &lim()).unwrap();
        prop_assert!(prod.category.law_violations().is_empty());
        prop_assert!(c.opposite().law_violations().is_empty());
    }
}

#[test]
fn components_of_discrete_and_connected() {
    assert_eq!(component_count(&FinCategory::discrete(&["a", "b", "c"])), 3);
    assert_eq!(component_count(&parallel_pair()), 1);
    assert_eq!(component_count(&FinCategory::empty()), 0);
    let _ = Arc::new(FinCategory::terminal());
}
