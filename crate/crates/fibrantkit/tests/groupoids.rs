mod common;

use common::groupoids;
use fibrantkit::core::fibrant::{cocycle_category, functional_correspondences, homotopy_hom, mapping_path_factorization};
use fibrantkit::core::fincat::{find_isomorphism, product_category};
use fibrantkit::core::Limits;
use fibrantkit::generate::bounded_groupoids;
use fibrantkit::groupoid::{elementary_abelian, path_groupoid};

/// `|Hom(Z/2^a, Z/2^b)| = 2^(ab)`; every functor between one-object
/// groupoids with abelian vertex groups is its own conjugacy class.
fn hom_oracle(a: u32, b: u32) -> usize {
    1 << (a * b)
}

#[test]
fn family_members_up_to_isomorphism() {
    let f = groupoids();
    let c = f.category();
    let names: Vec<&str> = c.objects().map(|x| c.obj_name(x)).collect();
    assert_eq!(names.len(), 5, "{names:?}");
    assert_eq!(c.morphism_count(), 820);
    let bz2 = f.object("BZ2").unwrap();
    let path = f.object("Path(BZ2)").unwrap();
    let pb = f.structure.path_object(bz2).unwrap();
    assert_eq!(pb.object, path);
    assert!(f.structure.is_weq(pb.i));
}

#[test]
fn closure_verifier_records_the_missing_limits() {
    let failures = &groupoids().expect.failures;
    for id in ["01.cfo.C", "01.cfo.D", "01.cfo.products"] {
        assert!(failures.iter().any(|f| f == id), "{failures:?}");
    }
    assert!(!failures.iter().any(|f| f == "01.cfo.A" || f == "01.cfo.B" || f == "01.cfo.E"));
}

#[test]
fn larger_bound_exceeds_the_morphism_cap() {
    // B(Z/2^4) enters at B = 16 and has 2^16 endofunctors.
    assert!(bounded_groupoids(2, 16, &Limits::default()).is_err());
}

#[test]
fn path_groupoid_of_bz2_is_the_product_with_the_interval() {
    let g = std::sync::Arc::new(elementary_abelian(1, "BZ2"));
    let path = path_groupoid(&g, 8, 64).unwrap();
    assert_eq!(path.category.object_count(), 2);
    assert_eq!(path.category.morphism_count(), 8);
    let j = std::sync::Arc::new(fibrantkit::groupoid::interval());
    let product = product_category(&g, &j, &Limits::default()).unwrap();
    assert!(find_isomorphism(&product.category, &path.category).is_some());
}

#[test]
fn homotopy_hom_of_bz2_has_two_classes() {
    let f = groupoids();
    let bz2 = f.object("BZ2").unwrap();
    let h = homotopy_hom(&f.structure, bz2, bz2, &Limits::default()).unwrap();
    assert_eq!(h.len(), 2);
    assert_eq!(f.expect.hom["BZ2,BZ2"], 2);
}

#[test]
fn hom_oracle_counts_group_homomorphisms() {
    let f = groupoids();
    let rank = |name: &str| name.matches("BZ2").count() as u32;
    let one_object = ["1", "BZ2", "(BZ2xBZ2)", "(BZ2x(BZ2xBZ2))"];
    for a in one_object {
        for b in one_object {
            let key = format!("{a},{b}");
            if let Some(&n) = f.expect.hom.get(&key) {
                assert_eq!(n, hom_oracle(rank(a), rank(b)), "{key}");
            }
        }
    }
    assert!(f.expect.hom.contains_key("BZ2,BZ2"));
}

#[test]
fn functional_correspondences_are_a_proper_full_subcategory() {
    let f = groupoids();
    let bz2 = f.object("BZ2").unwrap();
    let fc = functional_correspondences(&f.structure, bz2, bz2, &Limits::default()).unwrap();
    let all = cocycle_category(&f.structure, f.rel().weq_flags(), bz2, bz2, &Limits::default()).unwrap();
    assert!(fc.category.object_count() > 0);
    assert!(fc.category.object_count() < all.category.object_count());
    assert_eq!(all.category.object_count(), fc.all.category.object_count());
    assert!(fc.inclusion.is_fully_faithful());
}

#[test]
fn mapping_path_factorization_of_bz2_to_the_point() {
    let f = groupoids();
    let s = &f.structure;
    let c = f.category();
    let (bz2, point) = (f.object("BZ2").unwrap(), f.object("1").unwrap());
    let to_point = c.hom(bz2, point)[0];
    let pf = mapping_path_factorization(s, to_point).unwrap();
    let z = pf.correspondence.cocycle;
    // Path(1) = 1, so E_f = BZ2 x 1 = BZ2.
    assert_eq!(z.apex, bz2);
    assert_eq!(c.compose(z.v, pf.u), c.id(bz2));
    assert_eq!(c.compose(z.f, pf.u), to_point);
    assert!(s.is_weq(pf.u));
}
