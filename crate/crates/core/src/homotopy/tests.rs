use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use super::*;
use crate::fincat::{
    component_count, enumerate_functors, is_grothendieck_fibration, product_category, strict_fibre, CatDiagram,
    FinCategory, Functor, ObjId, SetDiagram,
};
use crate::testkit::{arc, names, parallel_pair, poset_from_bits, small_category};
use crate::testkit_diagrams::random_set_diagram;
use crate::Limits;

fn z(r: usize) -> HomologyGroup {
    HomologyGroup::free(r)
}

fn zmod(rank: usize, torsion: &[u32]) -> HomologyGroup {
    HomologyGroup { rank, torsion: torsion.iter().map(|&t| BigUint::from(t)).collect() }
}

fn nerve_homology(c: &FinCategory, t: usize) -> Vec<HomologyGroup> {
    homology(&nerve(&arc(c.clone()), t, &Limits::default()).unwrap().sset).groups
}

fn fast_homology(c: &FinCategory, t: usize) -> Vec<HomologyGroup> {
    CategoryChains::new(&arc(c.clone()), t, &Limits::default()).unwrap().homology().groups
}

// Smith normal form against determinantal divisors.

fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|b| b.count_ones() as usize == k).map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect()).collect()
}

/// `d_k / d_{k-1}` where `d_k` is the gcd of all `k x k` minors.
fn determinantal_factors(m: &[Vec<i64>]) -> Vec<BigUint> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| BigInt::from(m[r][c])).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs().to_biguint().unwrap());
        prev = g;
    }
    out
}

#[test]
fn snf_small_examples() {
    let m = SparseMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    assert_eq!(invariant_factors(&m), [2u32, 6, 12].map(BigUint::from).to_vec());
    let zero = SparseMatrix::zero(3, 2);
    assert!(invariant_factors(&zero).is_empty());
    assert_eq!(rank(&SparseMatrix::from_dense(&[vec![1, 2], vec![2, 4]])), 1);
}

#[test]
fn snf_overflow_falls_back_to_big_integers() {
    let big = i64::MAX / 3;
    let rows = [vec![big, 3, 7], vec![5, big, 11], vec![13, 17, big]];
    let m = SparseMatrix::from_dense(&rows);
    assert_eq!(invariant_factors(&m), determinantal_factors(&rows));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_matches_determinantal_divisors(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in proptest::collection::vec(-6i64..=6, 16),
        density in 0u32..4,
    ) {
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|r| (0..cols).map(|c| {
                let v = entries[r * 4 + c];
                if density > 0 && (r + c) as u32 % (density + 1) == 0 { 0 } else { v }
            }).collect())
            .collect();
        let expected = determinantal_factors(&m);
        let sparse = invariant_factors(&SparseMatrix::from_dense(&m));
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        prop_assert_eq!(&sparse, &expected);
        prop_assert_eq!(dense_invariant_factors(&big), expected);
        prop_assert!(sparse.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }
}

// Nerves and homology.

#[test]
fn nerve_of_terminal_is_a_point() {
    let n = nerve(&arc(FinCategory::terminal()), 3, &Limits::default()).unwrap();
    assert_eq!(n.sset.sizes(), &[1, 1, 1, 1]);
    assert_eq!(homology(&n.sset).groups, vec![z(1), z(0), z(0)]);
    assert_eq!(homology(&SimplicialSet::point(3)).groups, vec![z(1), z(0), z(0)]);
}

#[test]
fn nerve_of_arrow() {
    let n = nerve(&arc(FinCategory::ordinal(1)), 3, &Limits::default()).unwrap();
    assert_eq!(n.sset.nondegenerate(0).count(), 2);
    assert_eq!(n.sset.nondegenerate(1).count(), 1);
    assert_eq!(n.sset.nondegenerate(2).count(), 0);
    assert_eq!(homology(&n.sset).groups[0], z(1));
}

#[test]
fn nerve_of_bz2_has_two_torsion() {
    let groups = nerve_homology(&FinCategory::cyclic_group(2), 3);
    assert_eq!(groups, vec![z(1), zmod(0, &[2]), z(0)]);
    // One degree further: H₃(ℤ/2) = ℤ/2.
    assert_eq!(nerve_homology(&FinCategory::cyclic_group(2), 4)[3], zmod(0, &[2]));
    assert_eq!(nerve_homology(&FinCategory::cyclic_group(3), 3)[1], zmod(0, &[3]));
}

#[test]
fn parallel_pair_is_a_circle() {
    assert_eq!(nerve_homology(&parallel_pair(), 3), vec![z(1), z(1), z(0)]);
}

#[test]
fn nerves_satisfy_simplicial_identities() {
    for c in [FinCategory::cyclic_group(3), parallel_pair(), poset_from_bits(4, 0b101101)] {
        let n = nerve(&arc(c), 3, &Limits::default()).unwrap();
        let x = &n.sset;
        let faces = (0..=3).map(|k| if k == 0 { Vec::new() } else { table(x, k, true) }).collect();
        let degens = (0..3).map(|k| table(x, k, false)).collect();
        SimplicialSet::new(x.sizes().to_vec(), faces, degens).unwrap();
    }
}

fn table(x: &SimplicialSet, n: usize, faces: bool) -> Vec<u32> {
    let mut out = Vec::new();
    for s in 0..x.size(n) as u32 {
        for i in 0..=n {
            out.push(if faces { x.face(n, s, i) } else { x.degeneracy(n, s, i) });
        }
    }
    out
}

#[test]
fn broken_identities_are_rejected() {
    let x = nerve(&arc(FinCategory::ordinal(1)), 2, &Limits::default()).unwrap().sset;
    let mut f1 = table(&x, 1, true);
    let arrow = (0..f1.len() / 2).find(|&s| f1[2 * s] != f1[2 * s + 1]).unwrap();
    f1.swap(2 * arrow, 2 * arrow + 1);
    let faces = vec![Vec::new(), f1, table(&x, 2, true)];
    let degens = vec![table(&x, 0, false), table(&x, 1, false)];
    assert!(SimplicialSet::new(x.sizes().to_vec(), faces, degens).is_err());
}

#[test]
fn nerve_size_cap() {
    let limits = Limits { max_simplices: 10, ..Limits::default() };
    assert!(matches!(
        nerve(&arc(FinCategory::cyclic_group(3)), 3, &limits),
        Err(crate::Error::SizeCapExceeded { .. })
    ));
}

/// Relabels every level by a rotation and rebuilds the tables.
fn rotated(x: &SimplicialSet, shift: usize) -> (SimplicialSet, Vec<Vec<u32>>) {
    let perm: Vec<Vec<u32>> =
        (0..=x.dim()).map(|n| (0..x.size(n)).map(|s| ((s + shift) % x.size(n)) as u32).collect()).collect();
    let mut inv: Vec<Vec<u32>> = perm.iter().map(|p| vec![0; p.len()]).collect();
    for (n, p) in perm.iter().enumerate() {
        for (s, &t) in p.iter().enumerate() {
            inv[n][t as usize] = s as u32;
        }
    }
    let mut faces = vec![Vec::new()];
    for n in 1..=x.dim() {
        let mut t = Vec::new();
        for new in 0..x.size(n) {
            let old = inv[n][new];
            for i in 0..=n {
                t.push(perm[n - 1][x.face(n, old, i) as usize]);
            }
        }
        faces.push(t);
    }
    let mut degens = Vec::new();
    for n in 0..x.dim() {
        let mut t = Vec::new();
        for new in 0..x.size(n) {
            let old = inv[n][new];
            for i in 0..=n {
                t.push(perm[n + 1][x.degeneracy(n, old, i) as usize]);
            }
        }
        degens.push(t);
    }
    (SimplicialSet::new(x.sizes().to_vec(), faces, degens).unwrap(), perm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fast_chains_match_the_nerve(c in small_category()) {
        prop_assert_eq!(fast_homology(&c, 3), nerve_homology(&c, 3));
    }

    #[test]
    fn boundaries_square_to_zero(c in small_category()) {
        let chains = CategoryChains::new(&arc(c.clone()), 3, &Limits::default()).unwrap();
        for n in 2..=3 {
            let (d1, d2) = (&chains.complex.boundaries[n - 1], &chains.complex.boundaries[n]);
            for col in 0..d2.cols {
                let mut acc = vec![0i64; d1.rows];
                for (r, row) in d2.entries.iter().enumerate() {
                    for &(c2, v) in row {
                        if c2 as usize == col {
                            for (r1, row1) in d1.entries.iter().enumerate() {
                                for &(c1, w) in row1 {
                                    if c1 as usize == r {
                                        acc[r1] += v * w;
                                    }
                                }
                            }
                        }
                    }
                }
                prop_assert!(acc.iter().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn homology_is_invariant_under_relabeling(c in small_category(), shift in 1usize..7) {
        let x = nerve(&arc(c), 3, &Limits::default()).unwrap().sset;
        let (y, perm) = rotated(&x, shift);
        prop_assert_eq!(homology(&x), homology(&y));
        let f = SimplicialMap::new(Arc::new((*x).clone()), Arc::new(y), perm).unwrap();
        prop_assert!(f.is_isomorphism());
    }

    #[test]
    fn h0_counts_components(c in small_category()) {
        prop_assert_eq!(nerve_homology(&c, 2)[0].rank, component_count(&c));
    }
}

// Homotopy colimits.

fn discrete_nerve_diagram(x: &SetDiagram, dim: usize) -> SSetDiagram {
    SSetDiagram::from_sets(x, dim)
}

#[test]
fn hocolim_over_terminal_is_the_value() {
    let k = nerve(&arc(parallel_pair()), 3, &Limits::default()).unwrap().sset;
    let d = SSetDiagram::new(arc(FinCategory::terminal()), vec![k.clone()], vec![SimplicialMap::identity(k.clone())]).unwrap();
    let h = homotopy_colimit(&d, 3, &Limits::default()).unwrap();
    assert_eq!(h.sset.sizes(), k.sizes());
    for n in 1..=3 {
        for s in 0..k.size(n) as u32 {
            for i in 0..=n {
                assert_eq!(h.sset.face(n, s, i), k.face(n, s, i));
            }
        }
    }
}

/// `a <= c >= b`, so the contravariant diagram is the span `X(a) <- X(c) -> X(b)`.
fn span_index() -> Arc<FinCategory> {
    arc(FinCategory::poset(&names("", 3), |i, j| i == j || j == 2))
}

#[test]
fn hocolim_of_span_of_points_is_a_circle() {
    let c = span_index();
    let ac = c.hom(ObjId(0), ObjId(2))[0];
    let bc = c.hom(ObjId(1), ObjId(2))[0];
    let mut maps = vec![Vec::new(); c.morphism_count()];
    for f in c.morphisms() {
        maps[f.idx()] = if f == ac || f == bc { vec![0, 0] } else { (0..[1, 1, 2][c.dom(f).idx()]).collect() };
    }
    let x = SetDiagram::new(c, vec![1, 1, 2], maps).unwrap();
    let h = homotopy_colimit(&discrete_nerve_diagram(&x, 3), 3, &Limits::default()).unwrap();
    assert_eq!(homology(&h.sset).groups, vec![z(1), z(1), z(0)]);
}

#[test]
fn hocolim_rejects_short_values() {
    let c = arc(FinCategory::terminal());
    let k = Arc::new(SimplicialSet::point(1));
    let d = SSetDiagram::new(c, vec![k.clone()], vec![SimplicialMap::identity(k)]).unwrap();
    assert!(homotopy_colimit(&d, 2, &Limits::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hocolim_of_sets_is_nerve_of_elements(c in small_category(), seed in any::<u64>()) {
        let x = random_set_diagram(&arc(c), seed);
        let cmp = elements_comparison(&x, 3, &Limits::default()).unwrap();
        prop_assert!(cmp.map.is_isomorphism());
        let rebuilt = SimplicialSet::new(
            cmp.hocolim.sset.sizes().to_vec(),
            (0..=3).map(|n| if n == 0 { Vec::new() } else { table(&cmp.hocolim.sset, n, true) }).collect(),
            (0..3).map(|n| table(&cmp.hocolim.sset, n, false)).collect(),
        );
        prop_assert!(rebuilt.is_ok());
    }

    #[test]
    fn thomason_on_sets_is_an_isomorphism(c in small_category(), seed in any::<u64>()) {
        let x = random_set_diagram(&arc(c), seed).to_cat_diagram();
        let cmp = thomason_comparison(&x, 3, &Limits::default()).unwrap();
        prop_assert!(cmp.map.is_isomorphism());
    }
}

#[test]
fn thomason_constant_terminal_is_an_isomorphism() {
    let c = arc(poset_from_bits(3, 0b011));
    let x = CatDiagram::constant(c, arc(FinCategory::terminal()));
    let cmp = thomason_comparison(&x, 3, &Limits::default()).unwrap();
    assert!(cmp.map.is_isomorphism());
}

#[test]
fn thomason_on_a_span_of_categories_is_not_refuted() {
    // X(c) = BZ2 over the apex, X(a) = [1], X(b) = terminal.
    let c = span_index();
    let bz2 = arc(FinCategory::cyclic_group(2));
    let arrow = arc(FinCategory::ordinal(1));
    let point = arc(FinCategory::terminal());
    let values = vec![arrow.clone(), point.clone(), bz2.clone()];
    let functors = c
        .morphisms()
        .map(|f| {
            let (src, dst) = (values[c.cod(f).idx()].clone(), values[c.dom(f).idx()].clone());
            if c.is_identity(f) {
                Functor::identity(src)
            } else {
                Functor::constant(src, dst, ObjId(0))
            }
        })
        .collect();
    let x = CatDiagram::new(c, values, functors).unwrap();
    let cmp = thomason_comparison(&x, 3, &Limits::default()).unwrap();
    assert!(!simplicial_map_evidence(&cmp.map).is_refuted());
}

// Verdicts.

#[test]
fn identity_is_certified() {
    let c = arc(parallel_pair());
    let v = weak_equivalence_evidence(&Functor::identity(c.clone()), 3, &Limits::default()).unwrap();
    assert_eq!(v, Verdict::Certified(Certificate::Isomorphism));
    let n = nerve(&c, 3, &Limits::default()).unwrap();
    assert!(simplicial_map_evidence(&SimplicialMap::identity(n.sset)).is_certified());
}

#[test]
fn point_into_two_points_is_refuted_on_components() {
    let two = arc(FinCategory::discrete(&["a", "b"]));
    let v = weak_equivalence_evidence(&Functor::from_terminal(two.clone(), ObjId(0)), 3, &Limits::default()).unwrap();
    assert_eq!(v, Verdict::Refuted(Discrepancy::Components { source: 1, target: 2 }));
    let point = Arc::new(SimplicialSet::point(2));
    let pair = Arc::new(SimplicialSet::discrete(2, 2));
    let f = SimplicialMap::new(point, pair, vec![vec![0]; 3]).unwrap();
    assert_eq!(simplicial_map_evidence(&f), Verdict::Refuted(Discrepancy::Components { source: 1, target: 2 }));
}

#[test]
fn point_into_bz2_is_refuted_on_h1() {
    let bz2 = arc(FinCategory::cyclic_group(2));
    let v = weak_equivalence_evidence(&Functor::from_terminal(bz2.clone(), ObjId(0)), 3, &Limits::default()).unwrap();
    assert_eq!(v, Verdict::Refuted(Discrepancy::Homology { degree: 1, source: z(0), target: zmod(0, &[2]) }));
    let limits = Limits::default();
    let (p, b) = (nerve(&arc(FinCategory::terminal()), 3, &limits).unwrap(), nerve(&bz2, 3, &limits).unwrap());
    let f = nerve_map(&Functor::from_terminal(bz2, ObjId(0)), &p, &b);
    assert!(matches!(simplicial_map_evidence(&f), Verdict::Refuted(Discrepancy::Homology { degree: 1, .. })));
}

#[test]
fn trivial_endomorphism_of_bz2_fails_on_the_induced_map() {
    let bz2 = arc(FinCategory::cyclic_group(2));
    let f = Functor::constant(bz2.clone(), bz2, ObjId(0));
    let v = weak_equivalence_evidence(&f, 3, &Limits::default()).unwrap();
    assert_eq!(v, Verdict::Refuted(Discrepancy::InducedMap { degree: 1 }));
}

#[test]
fn adjoints_certify() {
    let arrow = arc(FinCategory::ordinal(1));
    let v = weak_equivalence_evidence(&Functor::from_terminal(arrow.clone(), ObjId(1)), 3, &Limits::default()).unwrap();
    assert!(v.is_certified());
    let v = weak_equivalence_evidence(&Functor::to_terminal(arrow), 3, &Limits::default()).unwrap();
    assert!(v.is_certified());
}

#[test]
fn contractibility_examples() {
    let limits = Limits::default();
    let v = is_weakly_contractible(&arc(FinCategory::terminal()), 3, &limits).unwrap();
    assert!(matches!(v, Verdict::Certified(Certificate::TerminalObject(_))));
    let v = is_weakly_contractible(&arc(FinCategory::discrete(&["a", "b"])), 3, &limits).unwrap();
    assert_eq!(v, Verdict::Refuted(Discrepancy::Components { source: 2, target: 1 }));
    let v = is_weakly_contractible(&arc(FinCategory::empty()), 3, &limits).unwrap();
    assert_eq!(v, Verdict::Refuted(Discrepancy::Components { source: 0, target: 1 }));
    // The down-set of {0,1} in the subset lattice of a 2-element set.
    let down = arc(FinCategory::poset(&names("s", 4), |i, j| i & j == i));
    assert!(is_weakly_contractible(&down, 3, &limits).unwrap().is_certified());
    let v = is_weakly_contractible(&arc(parallel_pair()), 3, &limits).unwrap();
    assert!(matches!(v, Verdict::Refuted(Discrepancy::Homology { degree: 1, .. })));
    let v = is_weakly_contractible(&arc(FinCategory::cyclic_group(2)), 3, &limits).unwrap();
    assert!(v.is_refuted());
}

#[test]
fn contractibility_through_an_adjoint() {
    // z0 <= z1 >= z2 <= z3: the down-set of z1 is coreflective.
    let zigzag = arc(FinCategory::poset(&names("z", 4), |i, j| i == j || (i % 2 == 0 && j % 2 == 1 && i.abs_diff(j) == 1)));
    let v = is_weakly_contractible(&zigzag, 3, &Limits::default()).unwrap();
    assert!(matches!(v, Verdict::Certified(Certificate::Composite(_))), "{v}");
    let n = nerve(&zigzag, 3, &Limits::default()).unwrap();
    assert!(!is_weakly_contractible_sset(&n.sset).is_refuted());
}

#[test]
fn cofinality_examples() {
    let limits = Limits::default();
    let c = arc(poset_from_bits(3, 0b110));
    assert_eq!(is_homotopy_cofinal(&Functor::identity(c.clone()), 3, &limits).unwrap(), Verdict::Certified(Certificate::AllCommas));
    let empty = arc(FinCategory::empty());
    let f = Functor::new(empty, c, vec![], vec![]).unwrap();
    assert!(matches!(
        is_homotopy_cofinal(&f, 3, &limits).unwrap(),
        Verdict::Refuted(Discrepancy::Comma { .. })
    ));
}

#[test]
fn fibration_with_disconnected_fibre_is_not_cofinal() {
    let limits = Limits::default();
    let two = arc(FinCategory::discrete(&["x", "y"]));
    let base = arc(FinCategory::ordinal(1));
    let prod = product_category(&two, &base, &limits).unwrap();
    let p = prod.right.clone();
    assert!(is_grothendieck_fibration(&p).is_fibration());
    let (fibre, _) = strict_fibre(&p, ObjId(0)).unwrap();
    assert!(is_weakly_contractible(&fibre, 3, &limits).unwrap().is_refuted());
    assert!(is_homotopy_cofinal(&p, 3, &limits).unwrap().is_refuted());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Cofinal functors are weak equivalences.
    #[test]
    fn quillen_a(c in small_category(), d in small_category()) {
        let (c, d) = (arc(c), arc(d));
        let limits = Limits::default();
        for f in enumerate_functors(&c, &d, 64) {
            if is_homotopy_cofinal(&f, 3, &limits).unwrap().is_certified() {
                prop_assert!(!weak_equivalence_evidence(&f, 3, &limits).unwrap().is_refuted());
            }
        }
    }

    /// The fast verdict agrees with the simplicial route on nerve maps.
    #[test]
    fn functor_and_nerve_map_verdicts_agree(c in small_category(), d in small_category()) {
        let (c, d) = (arc(c), arc(d));
        let limits = Limits::default();
        let (nc, nd) = (nerve(&c, 3, &limits).unwrap(), nerve(&d, 3, &limits).unwrap());
        for f in enumerate_functors(&c, &d, 16) {
            let fast = weak_equivalence_evidence(&f, 3, &limits).unwrap();
            let slow = simplicial_map_evidence(&nerve_map(&f, &nc, &nd));
            prop_assert!(!(fast.is_refuted() && slow.is_certified()));
            prop_assert_eq!(fast.is_refuted(), slow.is_refuted(), "{} vs {}", fast, slow);
        }
    }
}
