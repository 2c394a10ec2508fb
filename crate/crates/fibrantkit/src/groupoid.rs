//! Finite groupoids as categories, and the functor-level notions the
//! groupoid fixtures need: equivalences, isofibrations and path groupoids.

use std::sync::Arc;

use fibrantkit_core::fincat::{enumerate_functors, CategoryParts};
use fibrantkit_core::{FinCategory, Functor, MorId, ObjId};

/// `B(Z/2)^r`: the elementary abelian 2-group of rank `r` as a one-object
/// groupoid.
pub fn elementary_abelian(r: u32, name: &str) -> FinCategory {
    let order = 1usize << r;
    let mul: Vec<Vec<usize>> = (0..order).map(|a| (0..order).map(|b| a ^ b).collect()).collect();
    FinCategory::group(name, &mul)
}

/// The free-living isomorphism `a ≅ b`.
pub fn interval() -> FinCategory {
    let parts = CategoryParts {
        obj_names: vec!["a".into(), "b".into()],
        mor_names: vec!["id_a".into(), "u".into(), "u'".into(), "id_b".into()],
        dom: vec![ObjId(0), ObjId(0), ObjId(1), ObjId(1)],
        cod: vec![ObjId(0), ObjId(1), ObjId(0), ObjId(1)],
        identity: vec![MorId(0), MorId(3)],
    };
    // Morphisms are determined by their endpoints: index 2·dom + cod.
    let (dom, cod) = (parts.dom.clone(), parts.cod.clone());
    FinCategory::assemble(parts, |g, f| Some(MorId(2 * dom[f.idx()].0 + cod[g.idx()].0))).expect("interval groupoid")
}

/// Whether `f` is an equivalence of categories: fully faithful and
/// essentially surjective.
pub fn is_equivalence(f: &Functor) -> bool {
    let d = f.target();
    f.is_fully_faithful()
        && d.objects().all(|y| f.object_map().iter().any(|&x| d.hom(x, y).iter().any(|&g| d.is_isomorphism(g))))
}

/// Whether `f` lifts isomorphisms: every iso `F(e) -> b` is the image of an
/// iso out of `e`.
pub fn is_isofibration(f: &Functor) -> bool {
    let (c, d) = (f.source(), f.target());
    c.objects().all(|e| {
        d.out(f.obj(e))
            .iter()
            .filter(|&&g| d.is_isomorphism(g))
            .all(|&g| c.out(e).iter().any(|&h| c.is_isomorphism(h) && f.mor(h) == g))
    })
}

/// The functor category `[J, G]` for the free-living isomorphism `J`,
/// together with the constant-diagram functor `G -> [J, G]` and the two
/// evaluations `[J, G] -> G`.
pub struct PathGroupoid {
    pub category: Arc<FinCategory>,
    pub constant: Functor,
    pub ev0: Functor,
    pub ev1: Functor,
}

/// Builds `[J, G]`, or `None` if it would have more than `max_objects`
/// objects or `max_morphisms` morphisms.
pub fn path_groupoid(g: &Arc<FinCategory>, max_objects: usize, max_morphisms: usize) -> Option<PathGroupoid> {
    let j = Arc::new(interval());
    // A functor J -> G is an iso `x -> y` of G.
    let isos: Vec<MorId> = g.morphisms().filter(|&m| g.is_isomorphism(m)).collect();
    if isos.len() > max_objects {
        return None;
    }
    let objects: Vec<Functor> = enumerate_functors(&j, g, max_objects.saturating_add(1));
    debug_assert_eq!(objects.len(), isos.len());
    // A natural transformation F => F' is a pair (α_a, α_b) with
    // F'(u) α_a = α_b F(u); it is determined by α_a.
    let (a, b, u) = (ObjId(0), ObjId(1), MorId(1));
    let mut parts = CategoryParts::default();
    let mut components: Vec<(MorId, MorId)> = Vec::new();
    for (i, f) in objects.iter().enumerate() {
        parts.obj_names.push(format!("{}~{}", g.mor_name(f.mor(u)), i));
    }
    parts.identity = vec![MorId(0); objects.len()];
    for (i, f) in objects.iter().enumerate() {
        for (k, f2) in objects.iter().enumerate() {
            for &alpha in g.hom(f.obj(a), f2.obj(a)) {
                let fu_inv = g.inverse(f.mor(u)).expect("groupoid");
                let beta = g.compose(f2.mor(u), g.compose(alpha, fu_inv));
                if parts.mor_names.len() >= max_morphisms {
                    return None;
                }
                let id = MorId(parts.mor_names.len() as u32);
                if i == k && g.is_identity(alpha) {
                    parts.identity[i] = id;
                }
                parts.mor_names.push(format!("({},{})", g.mor_name(alpha), g.mor_name(beta)));
                parts.dom.push(ObjId(i as u32));
                parts.cod.push(ObjId(k as u32));
                components.push((alpha, beta));
            }
        }
    }
    let lookup: std::collections::HashMap<(ObjId, ObjId, MorId), MorId> = components
        .iter()
        .enumerate()
        .map(|(m, &(alpha, _))| ((parts.dom[m], parts.cod[m], alpha), MorId(m as u32)))
        .collect();
    let (dom, cod) = (parts.dom.clone(), parts.cod.clone());
    let comps = components.clone();
    let category = FinCategory::assemble(parts, |s, t| {
        let alpha = g.compose(comps[s.idx()].0, comps[t.idx()].0);
        lookup.get(&(dom[t.idx()], cod[s.idx()], alpha)).copied()
    })
    .expect("functor category");
    let category = Arc::new(category);
    let find_object = |x: ObjId| {
        objects.iter().position(|f| f.obj(a) == x && f.obj(b) == x && g.is_identity(f.mor(u))).expect("constant diagram")
    };
    let const_obj: Vec<ObjId> = g.objects().map(|x| ObjId(find_object(x) as u32)).collect();
    let const_mor: Vec<MorId> = g
        .morphisms()
        .map(|m| lookup[&(const_obj[g.dom(m).idx()], const_obj[g.cod(m).idx()], m)])
        .collect();
    let constant = Functor::new(g.clone(), category.clone(), const_obj, const_mor).expect("constant diagrams");
    let eval = |which: usize| {
        let om: Vec<ObjId> = objects.iter().map(|f| f.obj(if which == 0 { a } else { b })).collect();
        let mm: Vec<MorId> = components.iter().map(|&(x, y)| if which == 0 { x } else { y }).collect();
        Functor::new(category.clone(), g.clone(), om, mm).expect("evaluation")
    };
    Some(PathGroupoid { constant, ev0: eval(0), ev1: eval(1), category })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_is_a_contractible_groupoid() {
        let j = interval();
        assert!(j.law_violations().is_empty());
        assert!(j.morphisms().all(|m| j.is_isomorphism(m)));
        assert_eq!(j.hom(ObjId(0), ObjId(1)).len(), 1);
    }

    #[test]
    fn path_groupoid_of_bz2_has_two_objects_and_eight_morphisms() {
        let g = Arc::new(elementary_abelian(1, "BZ2"));
        let p = path_groupoid(&g, 2, 8).unwrap();
        assert_eq!(p.category.object_count(), 2);
        assert_eq!(p.category.morphism_count(), 8);
        assert!(p.category.law_violations().is_empty());
        assert!(is_equivalence(&p.constant));
        assert!(is_isofibration(&p.ev0));
        assert!(is_equivalence(&p.ev1));
        assert!(path_groupoid(&g, 1, 8).is_none());
        assert!(path_groupoid(&g, 2, 7).is_none());
    }

    #[test]
    fn path_groupoid_of_the_point_is_the_point() {
        let g = Arc::new(FinCategory::terminal());
        let p = path_groupoid(&g, 1, 1).unwrap();
        assert_eq!(p.category.morphism_count(), 1);
    }

    #[test]
    fn trivial_homomorphism_is_not_an_equivalence_but_an_isofibration_onto_the_point() {
        let g = Arc::new(elementary_abelian(1, "BZ2"));
        let pt = Arc::new(FinCategory::terminal());
        let to_pt = Functor::to_terminal(g.clone());
        assert!(!is_equivalence(&to_pt));
        assert!(is_isofibration(&to_pt));
        let from_pt = Functor::from_terminal(g, ObjId(0));
        assert!(!is_isofibration(&from_pt));
        assert!(pt.object_count() == 1);
    }
}
