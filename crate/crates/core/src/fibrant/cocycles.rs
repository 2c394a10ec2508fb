use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::structure::CfoStructure;
use crate::error::{Error, Limits, Result};
use crate::fincat::{components, full_subcategory, product_category, FinCategory, Functor, KeyedBuilder, MorId, ObjId};
use crate::relcat::{zigzag_category, ZigzagCategory, ZigzagType};
use crate::HashMap;

/// `X <-v- Z -f-> Y` with `v` a weak equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cocycle {
    pub apex: ObjId,
    pub v: MorId,
    pub f: MorId,
}

impl Cocycle {
    pub fn domain(&self, c: &FinCategory) -> ObjId {
        c.cod(self.v)
    }

    pub fn codomain(&self, c: &FinCategory) -> ObjId {
        c.cod(self.f)
    }

    fn from_zigzag(zz: &ZigzagCategory, x: ObjId) -> Cocycle {
        let z = zz.zigzag(x);
        Cocycle { apex: z.objects[1], v: z.arrows[0], f: z.arrows[1] }
    }
}

/// A cocycle whose pairing `⟨f, v⟩: Z -> Y × X` is a fibration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FunctionalCorrespondence {
    pub cocycle: Cocycle,
    pub pairing: MorId,
}

/// Checks the pairing condition and returns the correspondence.
pub fn functional_correspondence(s: &CfoStructure, cocycle: Cocycle) -> Result<FunctionalCorrespondence> {
    let c = s.base();
    let pairing = s.pairing(cocycle.f, cocycle.v)?;
    if !s.is_weq(cocycle.v) || !s.is_fib(pairing) {
        return Err(Error::Precondition(format!(
            "({}, {}) is not a functional correspondence",
            c.mor_name(cocycle.v),
            c.mor_name(cocycle.f)
        )));
    }
    Ok(FunctionalCorrespondence { cocycle, pairing })
}

/// A full subcategory of `Cocyc(X, Y)` together with the ambient category.
#[derive(Clone, Debug)]
pub struct CocycleSubcategory {
    /// `Cocyc(X, Y) = C^{[-1;1]}(X, Y)`.
    pub all: ZigzagCategory,
    pub category: Arc<FinCategory>,
    pub inclusion: Functor,
}

impl CocycleSubcategory {
    pub fn cocycle(&self, x: ObjId) -> Cocycle {
        Cocycle::from_zigzag(&self.all, self.inclusion.obj(x))
    }

    pub fn cocycles(&self) -> impl Iterator<Item = Cocycle> + '_ {
        self.category.objects().map(|x| self.cocycle(x))
    }
}

fn cocycles(s: &CfoStructure, x: ObjId, y: ObjId, limits: &Limits) -> Result<ZigzagCategory> {
    zigzag_category(s.rel(), &ZigzagType::new([-1, 1]), x, y, limits)
}

fn restrict(all: ZigzagCategory, keep: impl Fn(Cocycle) -> bool) -> CocycleSubcategory {
    let objects: Vec<ObjId> = all.category.objects().filter(|&o| keep(Cocycle::from_zigzag(&all, o))).collect();
    let (category, inclusion) = full_subcategory(&all.category, &objects);
    CocycleSubcategory { all, category, inclusion }
}

/// `Cocyc_V(X, Y)`: cocycles whose left leg lies in `v`.
pub fn cocycle_category(s: &CfoStructure, v: &[bool], x: ObjId, y: ObjId, limits: &Limits) -> Result<CocycleSubcategory> {
    let c = s.base();
    if v.len() != c.morphism_count() {
        return Err(Error::Precondition("class V has the wrong length".into()));
    }
    if let Some(f) = c.morphisms().find(|&f| v[f.idx()] && !s.is_weq(f)) {
        return Err(Error::Precondition(format!("{} is in V but not a weak equivalence", c.mor_name(f))));
    }
    Ok(restrict(cocycles(s, x, y, limits)?, |z| v[z.v.idx()]))
}

/// `FCorr(X, Y)` with its inclusion `U_{X,Y}` into `Cocyc(X, Y)`.
pub fn functional_correspondences(s: &CfoStructure, x: ObjId, y: ObjId, limits: &Limits) -> Result<CocycleSubcategory> {
    let c = s.base();
    let product = *s
        .product(y, x)
        .ok_or_else(|| Error::MissingProduct(format!("{} x {}", c.obj_name(y), c.obj_name(x))))?;
    let all = cocycles(s, x, y, limits)?;
    Ok(restrict(all, |z| {
        c.hom(z.apex, product.object).iter().any(|&m| {
            c.compose(product.proj1, m) == z.f && c.compose(product.proj2, m) == z.v && s.is_fib(m)
        })
    }))
}

/// `π₀` of the category of cocycles whose left leg is a trivial fibration,
/// with the least cocycle of each component as representative.
#[derive(Clone, Debug)]
pub struct HomotopyClasses {
    pub cocycles: CocycleSubcategory,
    pub representatives: Vec<Cocycle>,
    /// Component label of every object of `cocycles.category`.
    pub component: Vec<usize>,
}

impl HomotopyClasses {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// The class of a cocycle with trivial-fibration left leg.
    pub fn class_of(&self, z: Cocycle) -> Option<usize> {
        let found = self.cocycles.all.find(&[z.v, z.f])?;
        let inner = self.cocycles.inclusion.object_map().iter().position(|&o| o == found)?;
        Some(self.component[inner])
    }
}

/// Hom-sets of the homotopy category as components of `Cocyc_V(X, Y)`.
pub fn homotopy_hom(s: &CfoStructure, x: ObjId, y: ObjId, limits: &Limits) -> Result<HomotopyClasses> {
    let cocycles = cocycle_category(s, &s.trivial_fibrations(), x, y, limits)?;
    let component = components(&cocycles.category);
    let mut representatives = Vec::new();
    for (o, &k) in component.iter().enumerate() {
        if k == representatives.len() {
            representatives.push(cocycles.cocycle(ObjId(o as u32)));
        }
    }
    Ok(HomotopyClasses { cocycles, representatives, component })
}

/// `b ∘ a` by pulling `b`'s left leg back along `a`'s right leg. Needs the left
/// leg of `b` to be a fibration.
pub fn compose_cocycles(s: &CfoStructure, a: Cocycle, b: Cocycle) -> Result<Cocycle> {
    let c = s.base();
    if c.cod(a.f) != c.cod(b.v) {
        return Err(Error::Precondition("cocycles are not composable".into()));
    }
    let p = s.pullback(b.v, a.f)?;
    Ok(Cocycle { apex: p.object, v: c.compose(a.v, p.pb), f: c.compose(b.f, p.pa) })
}

/// `Zz^{[-1;1]}(C)`: all cocycles with ladders `(a, h, b)` of weak
/// equivalences, the full subcategory of functional correspondences, and both
/// projections to `W × W`.
#[derive(Clone, Debug)]
pub struct CorrespondenceFibration {
    pub zigzags: Arc<FinCategory>,
    pub cocycles: Vec<Cocycle>,
    /// `(a, h, b)` for every morphism of `zigzags`.
    pub ladders: Vec<[MorId; 3]>,
    /// `W × W`.
    pub base: Arc<FinCategory>,
    /// `⟨dom, cod⟩: Zz -> W × W`.
    pub projection: Functor,
    pub fcorr: Arc<FinCategory>,
    /// `U: FCorr -> Zz`.
    pub inclusion: Functor,
    /// `⟨dom, cod⟩ ∘ U`.
    pub fcorr_projection: Functor,
    /// Objects and morphisms of `W × W` by their components.
    pub base_objects: HashMap<(ObjId, ObjId), ObjId>,
    pub base_morphisms: HashMap<(MorId, MorId), MorId>,
}

impl CorrespondenceFibration {
    pub fn find(&self, z: Cocycle) -> Option<ObjId> {
        self.cocycles.iter().position(|&o| o == z).map(|i| ObjId(i as u32))
    }

    pub fn find_morphism(&self, from: ObjId, to: ObjId, ladder: [MorId; 3]) -> Option<MorId> {
        self.zigzags.hom(from, to).iter().copied().find(|f| self.ladders[f.idx()] == ladder)
    }
}

pub fn correspondence_fibration(s: &CfoStructure, limits: &Limits) -> Result<CorrespondenceFibration> {
    let c = s.base();
    let mut cocycles = Vec::new();
    let mut by_apex: Vec<Vec<u32>> = alloc::vec![Vec::new(); c.object_count()];
    for z in c.objects() {
        for &v in c.out(z) {
            if !s.is_weq(v) {
                continue;
            }
            for &f in c.out(z) {
                if cocycles.len() >= limits.max_morphisms {
                    return Err(Error::SizeCapExceeded { what: "cocycle category", limit: limits.max_morphisms });
                }
                by_apex[z.idx()].push(cocycles.len() as u32);
                cocycles.push(Cocycle { apex: z, v, f });
            }
        }
    }
    let mut builder: KeyedBuilder<[MorId; 3]> = KeyedBuilder::new("cocycle category", limits.max_morphisms);
    for z in &cocycles {
        builder.add_object(format!("({},{})", c.mor_name(z.v), c.mor_name(z.f)));
    }
    for (i, z0) in cocycles.iter().enumerate() {
        let (x0, y0) = (c.cod(z0.v), c.cod(z0.f));
        for &h in c.out(z0.apex) {
            if !s.is_weq(h) {
                continue;
            }
            for &j in &by_apex[c.cod(h).idx()] {
                let z1 = cocycles[j as usize];
                let (vh, fh) = (c.compose(z1.v, h), c.compose(z1.f, h));
                for &a in c.hom(x0, c.cod(z1.v)) {
                    if !s.is_weq(a) || c.compose(a, z0.v) != vh {
                        continue;
                    }
                    for &b in c.hom(y0, c.cod(z1.f)) {
                        if !s.is_weq(b) || c.compose(b, z0.f) != fh {
                            continue;
                        }
                        let name = format!("[{},{},{}]", c.mor_name(a), c.mor_name(h), c.mor_name(b));
                        let key = [a, h, b];
                        if j as usize == i && key.iter().all(|&m| c.is_identity(m)) {
                            builder.add_identity(ObjId(i as u32), key, name)?;
                        } else {
                            builder.add_morphism(ObjId(i as u32), ObjId(j), key, name)?;
                        }
                    }
                }
            }
        }
    }
    let (zz, ladders) = builder.finish(|g, f| [c.compose(g[0], f[0]), c.compose(g[1], f[1]), c.compose(g[2], f[2])])?;
    let zigzags = Arc::new(zz);

    let (w, w_incl) = s.rel().weq_subcategory();
    let ww = product_category(w.base(), w.base(), limits)?;
    let mut base_objects = HashMap::default();
    for o in ww.category.objects() {
        base_objects.insert((w_incl.obj(ww.left.obj(o)), w_incl.obj(ww.right.obj(o))), o);
    }
    let mut base_morphisms = HashMap::default();
    for m in ww.category.morphisms() {
        base_morphisms.insert((w_incl.mor(ww.left.mor(m)), w_incl.mor(ww.right.mor(m))), m);
    }
    let obj_map: Vec<ObjId> = cocycles.iter().map(|z| base_objects[&(c.cod(z.v), c.cod(z.f))]).collect();
    let mor_map: Vec<MorId> = ladders.iter().map(|l| base_morphisms[&(l[0], l[2])]).collect();
    let projection = Functor::new(zigzags.clone(), ww.category.clone(), obj_map, mor_map)?;

    let fcorr_objects: Vec<ObjId> = cocycles
        .iter()
        .enumerate()
        .filter(|(_, &z)| functional_correspondence(s, z).is_ok())
        .map(|(i, _)| ObjId(i as u32))
        .collect();
    let (fcorr, inclusion) = full_subcategory(&zigzags, &fcorr_objects);
    let fcorr_projection = inclusion.then(&projection)?;
    Ok(CorrespondenceFibration {
        zigzags,
        cocycles,
        ladders,
        base: ww.category,
        projection,
        fcorr,
        inclusion,
        fcorr_projection,
        base_objects,
        base_morphisms,
    })
}

/// The pullback of a functional correspondence along weak equivalences
/// `f: X' -> X` and `g: Y' -> Y`, with the ladder `(f, h, g)` into the original.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PulledCorrespondence {
    pub correspondence: FunctionalCorrespondence,
    pub ladder: [MorId; 3],
}

pub fn pullback_correspondence(
    s: &CfoStructure,
    e: &FunctionalCorrespondence,
    f: MorId,
    g: MorId,
) -> Result<PulledCorrespondence> {
    let c = s.base();
    let z = e.cocycle;
    if c.cod(f) != c.cod(z.v) || c.cod(g) != c.cod(z.f) {
        return Err(Error::Precondition("base maps do not end at the correspondence".into()));
    }
    if !s.is_weq(f) || !s.is_weq(g) {
        return Err(Error::Precondition("base maps must be weak equivalences".into()));
    }
    let gf = s.product_map(g, f)?;
    let p = s.pullback(e.pairing, gf)?;
    let target = s.product(c.dom(g), c.dom(f)).copied().expect("product_map found it");
    let cocycle = Cocycle { apex: p.object, v: c.compose(target.proj2, p.pb), f: c.compose(target.proj1, p.pb) };
    if !s.is_weq(cocycle.v) {
        return Err(Error::Precondition(format!(
            "pulled-back leg {} is not a weak equivalence",
            c.mor_name(cocycle.v)
        )));
    }
    Ok(PulledCorrespondence {
        correspondence: FunctionalCorrespondence { cocycle, pairing: p.pb },
        ladder: [f, p.pa, g],
    })
}

/// `X <-v- E_f -p-> Y` with `E_f = X ×_Y Path(Y)` and the section `u: X -> E_f`
/// satisfying `v ∘ u = id` and `p ∘ u = f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathFactorization {
    pub u: MorId,
    pub correspondence: FunctionalCorrespondence,
}

pub fn mapping_path_factorization(s: &CfoStructure, f: MorId) -> Result<PathFactorization> {
    let c = s.base();
    let (x, y) = (c.dom(f), c.cod(f));
    let path = *s
        .path_object(y)
        .ok_or_else(|| Error::MissingPathObject(c.obj_name(y).into()))?;
    let pb = s.pullback(path.p0, f)?;
    let cocycle = Cocycle { apex: pb.object, v: pb.pb, f: c.compose(path.p1, pb.pa) };
    let u = super::limits::mediating(c, pb.object, pb.pa, pb.pb, c.compose(path.i, f), c.id(x))
        .ok_or_else(|| Error::MissingPullback(format!("section of {}", c.obj_name(pb.object))))?;
    let correspondence = functional_correspondence(s, cocycle)?;
    if !s.is_weq(u) {
        return Err(Error::Precondition(format!("section {} is not a weak equivalence", c.mor_name(u))));
    }
    Ok(PathFactorization { u, correspondence })
}
