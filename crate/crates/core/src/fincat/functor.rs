use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{FinCategory, MorId, ObjId};
use crate::error::{Error, Result};

/// A functor between explicit finite categories.
#[derive(Clone, Debug)]
pub struct Functor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

impl Functor {
    /// Builds a functor after checking that it preserves domains, codomains,
    /// identities and all composites.
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Functor> {
        let f = Functor { source, target, obj_map, mor_map };
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Functor {
        let f = Functor { source, target, obj_map, mor_map };
        debug_assert!(f.check().is_ok(), "{:?}", f.check());
        f
    }

    fn check(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.obj_map.len() != s.object_count() || self.mor_map.len() != s.morphism_count() {
            return Err(Error::NotAFunctor("map sizes do not match the source".into()));
        }
        if self.obj_map.iter().any(|x| x.idx() >= t.object_count())
            || self.mor_map.iter().any(|f| f.idx() >= t.morphism_count())
        {
            return Err(Error::NotAFunctor("image outside the target".into()));
        }
        for f in s.morphisms() {
            let g = self.mor_map[f.idx()];
            if t.dom(g) != self.obj_map[s.dom(f).idx()] || t.cod(g) != self.obj_map[s.cod(f).idx()] {
                return Err(Error::NotAFunctor(format!("endpoints of {} not preserved", s.mor_name(f))));
            }
        }
        for x in s.objects() {
            if self.mor_map[s.id(x).idx()] != t.id(self.obj_map[x.idx()]) {
                return Err(Error::NotAFunctor(format!("identity of {} not preserved", s.obj_name(x))));
            }
        }
        for (g, f, gf) in s.composition_triples() {
            if t.compose(self.mor(g), self.mor(f)) != self.mor(gf) {
                return Err(Error::NotAFunctor(format!(
                    "composite {} o {} not preserved",
                    s.mor_name(g),
                    s.mor_name(f)
                )));
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<FinCategory>) -> Functor {
        let obj_map = c.objects().collect();
        let mor_map = c.morphisms().collect();
        Functor { source: c.clone(), target: c, obj_map, mor_map }
    }

    /// The constant functor at `x`.
    pub fn constant(source: Arc<FinCategory>, target: Arc<FinCategory>, x: ObjId) -> Functor {
        let obj_map = alloc::vec![x; source.object_count()];
        let mor_map = alloc::vec![target.id(x); source.morphism_count()];
        Functor { source, target, obj_map, mor_map }
    }

    /// The unique functor to the terminal category.
    pub fn to_terminal(source: Arc<FinCategory>) -> Functor {
        Self::constant(source, Arc::new(FinCategory::terminal()), ObjId(0))
    }

    /// The functor from the terminal category picking `x`.
    pub fn from_terminal(target: Arc<FinCategory>, x: ObjId) -> Functor {
        Self::constant(Arc::new(FinCategory::terminal()), target, x)
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    #[inline]
    pub fn obj(&self, x: ObjId) -> ObjId {
        self.obj_map[x.idx()]
    }

    #[inline]
    pub fn mor(&self, f: MorId) -> MorId {
        self.mor_map[f.idx()]
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.obj_map
    }

    pub fn morphism_map(&self) -> &[MorId] {
        &self.mor_map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Result<Functor> {
        if !Arc::ptr_eq(&self.target, &other.source) && !same_shape(&self.target, &other.source) {
            return Err(Error::NotAFunctor("composite of functors with mismatched categories".into()));
        }
        Ok(Functor {
            source: self.source.clone(),
            target: other.target.clone(),
            obj_map: self.obj_map.iter().map(|&x| other.obj(x)).collect(),
            mor_map: self.mor_map.iter().map(|&f| other.mor(f)).collect(),
        })
    }

    pub fn opposite(&self) -> Functor {
        Functor {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    /// Reinterprets this functor with replacement source and target of the same
    /// shape, e.g. after relabeling.
    pub fn retarget(&self, source: Arc<FinCategory>, target: Arc<FinCategory>) -> Result<Functor> {
        Functor::new(source, target, self.obj_map.clone(), self.mor_map.clone())
    }

    pub fn is_bijective(&self) -> bool {
        let (s, t) = (&*self.source, &*self.target);
        s.object_count() == t.object_count()
            && s.morphism_count() == t.morphism_count()
            && is_injective(&self.obj_map, t.object_count())
            && is_injective(&self.mor_map, t.morphism_count())
    }

    pub fn is_injective_on_objects(&self) -> bool {
        is_injective(&self.obj_map, self.target.object_count())
    }

    pub fn is_faithful(&self) -> bool {
        let s = &*self.source;
        s.objects().all(|a| {
            s.objects().all(|b| {
                let hom = s.hom(a, b);
                let mut images: Vec<MorId> = hom.iter().map(|&f| self.mor(f)).collect();
                images.sort_unstable();
                images.dedup();
                images.len() == hom.len()
            })
        })
    }

    pub fn is_full(&self) -> bool {
        let (s, t) = (&*self.source, &*self.target);
        s.objects().all(|a| {
            s.objects().all(|b| {
                let target_hom = t.hom(self.obj(a), self.obj(b));
                let mut images: Vec<MorId> = s.hom(a, b).iter().map(|&f| self.mor(f)).collect();
                images.sort_unstable();
                images.dedup();
                images.len() == target_hom.len()
            })
        })
    }

    pub fn is_fully_faithful(&self) -> bool {
        self.is_full() && self.is_faithful()
    }

    /// Inverse of a bijective functor.
    pub fn inverse(&self) -> Option<Functor> {
        if !self.is_bijective() {
            return None;
        }
        let mut obj_map = alloc::vec![ObjId(0); self.obj_map.len()];
        let mut mor_map = alloc::vec![MorId(0); self.mor_map.len()];
        for (i, x) in self.obj_map.iter().enumerate() {
            obj_map[x.idx()] = ObjId(i as u32);
        }
        for (i, f) in self.mor_map.iter().enumerate() {
            mor_map[f.idx()] = MorId(i as u32);
        }
        Some(Functor {
            source: self.target.clone(),
            target: self.source.clone(),
            obj_map,
            mor_map,
        })
    }

    /// `true` when both functors agree on the nose.
    pub fn same_as(&self, other: &Functor) -> bool {
        self.obj_map == other.obj_map && self.mor_map == other.mor_map
    }
}

fn is_injective<T: Copy + Into<usize>>(map: &[T], bound: usize) -> bool {
    let mut seen = alloc::vec![false; bound];
    map.iter().all(|&x| !core::mem::replace(&mut seen[x.into()], true))
}

impl From<ObjId> for usize {
    fn from(x: ObjId) -> usize {
        x.idx()
    }
}

impl From<MorId> for usize {
    fn from(f: MorId) -> usize {
        f.idx()
    }
}

/// Cheap structural comparison used when two `Arc`s may hold equal copies.
pub(crate) fn same_shape(a: &FinCategory, b: &FinCategory) -> bool {
    a.object_count() == b.object_count()
        && a.morphism_count() == b.morphism_count()
        && a.morphisms().all(|f| a.dom(f) == b.dom(f) && a.cod(f) == b.cod(f))
}

/// The full subcategory on `objects` (in the given order) and its inclusion.
pub fn full_subcategory(c: &Arc<FinCategory>, objects: &[ObjId]) -> (Arc<FinCategory>, Functor) {
    let mut pos = alloc::vec![u32::MAX; c.object_count()];
    for (i, x) in objects.iter().enumerate() {
        pos[x.idx()] = i as u32;
    }
    let mut mors = Vec::new();
    for &a in objects {
        for &f in c.out(a) {
            if pos[c.cod(f).idx()] != u32::MAX {
                mors.push(f);
            }
        }
    }
    subcategory(c, objects, &mors)
}

/// The subcategory with the given objects and morphisms, which must be closed
/// under identities and composition.
pub fn subcategory(c: &Arc<FinCategory>, objects: &[ObjId], morphisms: &[MorId]) -> (Arc<FinCategory>, Functor) {
    let mut opos = alloc::vec![u32::MAX; c.object_count()];
    for (i, x) in objects.iter().enumerate() {
        opos[x.idx()] = i as u32;
    }
    let mut mpos = alloc::vec![u32::MAX; c.morphism_count()];
    for (i, f) in morphisms.iter().enumerate() {
        mpos[f.idx()] = i as u32;
    }
    let parts = super::CategoryParts {
        obj_names: objects.iter().map(|&x| c.obj_name(x).to_string()).collect(),
        mor_names: morphisms.iter().map(|&f| c.mor_name(f).to_string()).collect(),
        dom: morphisms.iter().map(|&f| ObjId(opos[c.dom(f).idx()])).collect(),
        cod: morphisms.iter().map(|&f| ObjId(opos[c.cod(f).idx()])).collect(),
        identity: objects.iter().map(|&x| MorId(mpos[c.id(x).idx()])).collect(),
    };
    let sub = FinCategory::assemble(parts, |g, f| {
        let gf = c.compose(morphisms[g.idx()], morphisms[f.idx()]);
        let p = mpos[gf.idx()];
        (p != u32::MAX).then_some(MorId(p))
    })
    .expect("subcategory not closed under composition");
    let sub = Arc::new(sub);
    let inclusion = Functor::new_unchecked(sub.clone(), c.clone(), objects.to_vec(), morphisms.to_vec());
    (sub, inclusion)
}
