//! Fixture generators: meet-semilattices, lattices whose weak equivalences
//! are the isomorphisms, families of small groupoids, and negative controls.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use fibrantkit_core::fibrant::{check_cfo_axioms, check_cisinski_axioms, CfoStructure, PathObject, Product};
use fibrantkit_core::fincat::{enumerate_functors, find_isomorphism, product_category, CategoryParts};
use fibrantkit_core::{FinCategory, Functor, Limits, MorId, ObjId, RelCategory};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HarnessError, Result};
use crate::fixture::{Expect, Fixture};
use crate::groupoid::{elementary_abelian, is_equivalence, is_isofibration, path_groupoid};

/// Largest `n` accepted by the lattice generators.
pub const MAX_LATTICE_SIZE: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weq {
    All,
    Isos,
}

/// A family of subsets of `{0, .., n-1}` (as bit masks) closed under
/// intersection and containing the full set, sorted ascending.
pub fn meet_closed_family(n: usize, seed: Option<u64>) -> Result<Vec<u32>> {
    if n == 0 || n > MAX_LATTICE_SIZE {
        return Err(HarnessError::Parameters(format!("lattice size must be in 1..={MAX_LATTICE_SIZE}, got {n}")));
    }
    let full = (1u32 << n) - 1;
    let Some(seed) = seed else {
        // The chain ∅ ⊂ {0} ⊂ ... read from the top: n sets.
        return Ok((0..n).map(|i| full >> i).rev().collect());
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut family = vec![full];
        for _ in 0..64 * n {
            if family.len() == n {
                family.sort_unstable();
                return Ok(family);
            }
            let s = rng.gen_range(0..=full);
            if family.contains(&s) {
                continue;
            }
            let mut grown = family.clone();
            grown.push(s);
            let mut i = 0;
            while i < grown.len() {
                for j in 0..i {
                    let m = grown[i] & grown[j];
                    if !grown.contains(&m) {
                        grown.push(m);
                    }
                }
                i += 1;
            }
            if grown.len() <= n {
                family = grown;
            }
        }
    }
}

/// The poset of `family` under inclusion as a fixture with `fib = all`,
/// `Path(X) = X`, products the meets, and hom-set oracles.
pub fn family_fixture(name: &str, family: &[u32], weq: Weq) -> Result<Fixture> {
    let n = family.len();
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let leq = |i: usize, j: usize| family[i] & family[j] == family[i];
    let base = Arc::new(FinCategory::poset(&names, leq));
    let rel = match weq {
        Weq::All => RelCategory::maximal(base.clone()),
        Weq::Isos => RelCategory::isomorphisms(base.clone()),
    };
    let terminal = family.iter().position(|&s| family.iter().all(|&t| t & s == t)).map(|i| ObjId(i as u32));
    let mor = |i: usize, j: usize| base.hom(ObjId(i as u32), ObjId(j as u32))[0];
    let mut products = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if let Some(m) = family.iter().position(|&s| s == family[i] & family[j]) {
                products.insert((ObjId(i as u32), ObjId(j as u32)), Product { object: ObjId(m as u32), proj1: mor(m, i), proj2: mor(m, j) });
            }
        }
    }
    let path_objects = (0..n)
        .map(|i| {
            let id = mor(i, i);
            (ObjId(i as u32), PathObject { object: ObjId(i as u32), i: id, p0: id, p1: id })
        })
        .collect();
    let structure = CfoStructure::new(rel, base.morphisms(), terminal, products, path_objects)?;
    // Independent oracle: with every map a weak equivalence the cocycle
    // poset has a top, so each hom-set is a point; with only isomorphisms
    // the homotopy category is the poset itself.
    let mut hom = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let size = match weq {
                Weq::All => 1,
                Weq::Isos => usize::from(leq(i, j)),
            };
            hom.insert(format!("{},{}", names[i], names[j]), size);
        }
    }
    Ok(Fixture::new(name, structure, Expect { hom, ..Expect::default() }))
}

/// `semilattice(n)`: the chain `0 < .. < n-1`, or with a seed a random
/// meet-semilattice with top of `n` elements; `weq = fib = all`.
pub fn semilattice(n: usize, seed: Option<u64>) -> Result<Fixture> {
    let family = meet_closed_family(n, seed)?;
    let name = match seed {
        None => format!("semilattice_{n}"),
        Some(s) => format!("semilattice_{n}_s{s}"),
    };
    family_fixture(&name, &family, Weq::All)
}

/// `lattice_isos(n)`: as [`semilattice`], with the isomorphisms as weak
/// equivalences.
pub fn lattice_isos(n: usize, seed: Option<u64>) -> Result<Fixture> {
    let family = meet_closed_family(n, seed)?;
    let name = match seed {
        None => format!("lattice_isos_{n}"),
        Some(s) => format!("lattice_isos_{n}_s{s}"),
    };
    family_fixture(&name, &family, Weq::Isos)
}

/// `M₃`: a bottom, three atoms and a top.
pub fn m3_family() -> Vec<u32> {
    vec![0b000, 0b001, 0b010, 0b100, 0b111]
}

pub fn semilattice_m3() -> Fixture {
    let mut f = family_fixture("semilattice_m3", &m3_family(), Weq::All).expect("M3 fixture");
    f.expect.description = Some("diamond lattice M3 (bottom, three atoms, top); weq = fib = all".into());
    f
}

/// Ids of the checks that fail when the terminal object is missing.
pub const NO_TERMINAL_FAILURES: [&str; 2] = ["01.cfo.E", "02.cisinski.D0"];

/// The family without its top, when the top has at least two lower covers
/// (otherwise a new top would appear). Fails exactly axiom E.
pub fn top_removed(family: &[u32], weq: Weq, name: &str) -> Result<Option<Fixture>> {
    let top = *family.iter().max_by_key(|s| s.count_ones()).expect("nonempty family");
    let rest: Vec<u32> = family.iter().copied().filter(|&s| s != top).collect();
    let maximal = rest.iter().filter(|&&s| rest.iter().all(|&t| t == s || t & s != s)).count();
    if maximal < 2 {
        return Ok(None);
    }
    let mut f = family_fixture(name, &rest, weq)?;
    f.expect.failures = NO_TERMINAL_FAILURES.iter().map(ToString::to_string).collect();
    f.expect.description = Some("top removed: no terminal object".into());
    Ok(Some(f))
}

/// Negative control for axiom A: on `0 < 1 < 2`, `0 -> 1` and `0 -> 2` are
/// weak equivalences but `1 -> 2` is not.
pub fn broken_two_out_of_three() -> Fixture {
    let base = Arc::new(FinCategory::ordinal(2));
    let weq: Vec<MorId> = base.morphisms().filter(|&f| base.is_identity(f) || base.dom(f) == ObjId(0)).collect();
    let rel = RelCategory::new(base.clone(), weq).expect("weak equivalences form a subcategory");
    let paths = base
        .objects()
        .map(|x| {
            let id = base.id(x);
            (x, PathObject { object: x, i: id, p0: id, p1: id })
        })
        .collect();
    let s = CfoStructure::new(rel, base.morphisms(), Some(ObjId(2)), BTreeMap::new(), paths)
        .expect("shapes")
        .with_searched_products();
    let expect = Expect {
        description: Some("weak equivalences violate 2-out-of-3".into()),
        failures: vec!["01.cfo.A".into(), "02.cisinski.D1".into()],
        ..Expect::default()
    };
    Fixture::new("negative_two_out_of_three", s, expect)
}

/// Negative control for the product table: `M₃` with the bottom claimed to
/// be the product of the top and an atom.
pub fn corrupted_product() -> Fixture {
    let m3 = semilattice_m3();
    let s = &m3.structure;
    let c = s.base().clone();
    let mor = |a: u32, b: u32| c.hom(ObjId(a), ObjId(b))[0];
    let mut products = s.products().clone();
    products.insert((ObjId(4), ObjId(1)), Product { object: ObjId(0), proj1: mor(0, 4), proj2: mor(0, 1) });
    let s = CfoStructure::new(s.rel().clone(), c.morphisms(), s.terminal(), products, s.path_objects().clone())
        .expect("shapes");
    let expect = Expect {
        description: Some("product table entry e4,e1 is not a product".into()),
        failures: vec!["01.cfo.products".into()],
        hom: m3.expect.hom.clone(),
        ..Expect::default()
    };
    Fixture::new("negative_product", s, expect)
}

/// Negative control for the calculus of cocycles: `M₃` with the trivial
/// fibration `e1 -> e4` left out of `V`.
pub fn broken_v() -> Fixture {
    let mut f = semilattice_m3();
    f.name = "negative_v".into();
    f.expect.description = Some("trivial fibration e1<=e4 removed from V".into());
    f.expect.v_excluded = vec!["e1<=e4".into()];
    f.expect.failures = vec!["06.calculus.condition4".into()];
    f
}

/// `M₃` without its top.
pub fn no_terminal() -> Fixture {
    top_removed(&m3_family(), Weq::All, "negative_terminal").expect("family").expect("top of M3 is join-reducible")
}

/// A groupoid in a bounded family, remembered with how it was built.
struct Member {
    name: String,
    category: Arc<FinCategory>,
}

/// `bounded_groupoids(k, B)`: the closure of `{1, B(Z/2)}` under binary
/// products and path groupoids `G^J`, up to isomorphism, keeping groupoids
/// with at most `k` objects and `B` morphisms. Morphisms are all functors;
/// weak equivalences are the equivalences and fibrations the isofibrations.
pub fn bounded_groupoids(k: usize, b: usize, limits: &Limits) -> Result<Fixture> {
    let point = Arc::new(FinCategory::terminal());
    let bz2 = Arc::new(elementary_abelian(1, "BZ2"));
    if k < 2 || b < 8 {
        return Err(HarnessError::Closure(format!(
            "Path(BZ2) has 2 objects and 8 morphisms, beyond the bound ({k} objects, {b} morphisms)"
        )));
    }
    let mut members = vec![Member { name: "1".into(), category: point }, Member { name: "BZ2".into(), category: bz2 }];
    let fits = |c: &FinCategory| c.object_count() <= k && c.morphism_count() <= b;
    let known = |members: &[Member], c: &Arc<FinCategory>| {
        members.iter().any(|m| {
            m.category.object_count() == c.object_count()
                && m.category.morphism_count() == c.morphism_count()
                && find_isomorphism(&m.category, c).is_some()
        })
    };
    let mut done = 0;
    while done < members.len() {
        let current = members.len();
        for i in 0..current {
            for j in 0..current {
                if i.max(j) < done {
                    continue;
                }
                let (x, y) = (&members[i].category, &members[j].category);
                if x.object_count() * y.object_count() > k || x.morphism_count() * y.morphism_count() > b {
                    continue;
                }
                let p = product_category(x, y, limits)?.category;
                if !known(&members, &p) {
                    let name = format!("({}x{})", members[i].name, members[j].name);
                    members.push(Member { name, category: p });
                }
            }
            if i >= done {
                if let Some(path) = path_groupoid(&members[i].category, k, b) {
                    if fits(&path.category) && !known(&members, &path.category) {
                        let name = format!("Path({})", members[i].name);
                        members.push(Member { name, category: path.category });
                    }
                }
            }
        }
        done = current;
    }
    // Seeds must have their products and path objects inside the family.
    let bz2 = members[1].category.clone();
    if bz2.morphism_count() * bz2.morphism_count() > b {
        return Err(HarnessError::Closure("BZ2 x BZ2 is beyond the bound".into()));
    }
    if members.iter().map(|m| m.category.morphism_count()).sum::<usize>() > limits.max_morphisms {
        return Err(HarnessError::Closure("family too large".into()));
    }
    build_groupoid_fixture(&format!("bounded_groupoids_k{k}_b{b}"), members, limits)
}

fn functor_key(f: &Functor) -> (Vec<ObjId>, Vec<MorId>) {
    (f.object_map().to_vec(), f.morphism_map().to_vec())
}

fn build_groupoid_fixture(name: &str, members: Vec<Member>, limits: &Limits) -> Result<Fixture> {
    let n = members.len();
    let mut parts = CategoryParts {
        obj_names: members.iter().map(|m| m.name.clone()).collect(),
        identity: vec![MorId(0); n],
        ..CategoryParts::default()
    };
    let mut functors: Vec<Functor> = Vec::new();
    let mut index: HashMap<(usize, usize, (Vec<ObjId>, Vec<MorId>)), MorId> = HashMap::new();
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate() {
            let all = enumerate_functors(&a.category, &b.category, limits.max_morphisms + 1);
            for (t, f) in all.into_iter().enumerate() {
                let id = MorId(functors.len() as u32);
                if functors.len() >= limits.max_morphisms {
                    return Err(fibrantkit_core::Error::SizeCapExceeded { what: "groupoid family", limit: limits.max_morphisms }.into());
                }
                if i == j && f.same_as(&Functor::identity(a.category.clone())) {
                    parts.identity[i] = id;
                }
                parts.mor_names.push(format!("{}->{}#{t}", a.name, b.name));
                parts.dom.push(ObjId(i as u32));
                parts.cod.push(ObjId(j as u32));
                index.insert((i, j, functor_key(&f)), id);
                functors.push(f);
            }
        }
    }
    let (dom, cod) = (parts.dom.clone(), parts.cod.clone());
    let base = FinCategory::assemble(parts, |g, f| {
        let gf = functors[f.idx()].then(&functors[g.idx()]).ok()?;
        index.get(&(dom[f.idx()].idx(), cod[g.idx()].idx(), functor_key(&gf))).copied()
    })
    .map_err(|v| HarnessError::Validation(vec![v.to_string()]))?;
    let base = Arc::new(base);
    let lookup = |i: usize, j: usize, f: &Functor| index[&(i, j, functor_key(f))];

    let weq: Vec<MorId> = base.morphisms().filter(|m| is_equivalence(&functors[m.idx()])).collect();
    let fib: Vec<MorId> = base.morphisms().filter(|m| is_isofibration(&functors[m.idx()])).collect();
    let rel = RelCategory::new(base.clone(), weq)?;

    // Products and path objects, transported along isomorphisms into the
    // family.
    let mut products = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let p = product_category(&members[i].category, &members[j].category, limits)?;
            for (q, m) in members.iter().enumerate() {
                if let Some(phi) = find_isomorphism(&m.category, &p.category) {
                    let proj1 = lookup(q, i, &phi.then(&p.left)?);
                    let proj2 = lookup(q, j, &phi.then(&p.right)?);
                    products.insert((ObjId(i as u32), ObjId(j as u32)), Product { object: ObjId(q as u32), proj1, proj2 });
                    break;
                }
            }
        }
    }
    let mut path_objects = BTreeMap::new();
    for (i, m) in members.iter().enumerate() {
        let Some(path) = path_groupoid(&m.category, usize::MAX, usize::MAX) else { continue };
        for (q, target) in members.iter().enumerate() {
            if let Some(psi) = find_isomorphism(&path.category, &target.category) {
                let back = psi.inverse().expect("isomorphism");
                let entry = PathObject {
                    object: ObjId(q as u32),
                    i: lookup(i, q, &path.constant.then(&psi)?),
                    p0: lookup(q, i, &back.then(&path.ev0)?),
                    p1: lookup(q, i, &back.then(&path.ev1)?),
                };
                path_objects.insert(ObjId(i as u32), entry);
                break;
            }
        }
    }
    let structure = CfoStructure::new(rel, fib, Some(ObjId(0)), products, path_objects)?;

    // The family is finite, so some products and path objects are missing;
    // which axioms fail is recorded rather than assumed.
    let mut failures: Vec<String> = check_cfo_axioms(&structure).failed().iter().map(|a| format!("01.cfo.{a}")).collect();
    failures.extend(check_cisinski_axioms(&structure.to_cisinski()).failed().iter().map(|a| format!("02.cisinski.{a}")));
    // Oracle: iso classes of functors BA -> BB between one-object groupoids
    // are conjugacy classes of homomorphisms, here all of them (abelian).
    let mut hom = BTreeMap::new();
    let one_object: Vec<usize> = (0..n).filter(|&i| members[i].category.object_count() == 1).collect();
    for &i in &one_object {
        for &j in &one_object {
            let (a, b) = (members[i].category.morphism_count(), members[j].category.morphism_count());
            if a * b <= 16 {
                let homs = enumerate_functors(&members[i].category, &members[j].category, usize::MAX).len();
                hom.insert(format!("{},{}", members[i].name, members[j].name), homs);
            }
        }
    }
    let expect = Expect {
        description: Some("groupoids closed under products and path objects within the bound; weq = equivalences, fib = isofibrations".into()),
        failures,
        hom,
        v_excluded: Vec::new(),
    };
    Ok(Fixture::new(name, structure, expect))
}
