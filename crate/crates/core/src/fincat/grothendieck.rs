use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::category::KeyedBuilder;
use super::{FinCategory, Functor, MorId, ObjId};
use crate::error::{Error, Limits, Result};

/// A contravariant diagram `X: C^op -> Cat`: a category `X(c)` per object and a
/// functor `X(f): X(c) -> X(c')` per morphism `f: c' -> c`.
#[derive(Clone, Debug)]
pub struct CatDiagram {
    index: Arc<FinCategory>,
    values: Vec<Arc<FinCategory>>,
    functors: Vec<Functor>,
}

impl CatDiagram {
    /// Checks endpoints and contravariant functoriality:
    /// `X(id) = id` and `X(g ∘ f) = X(f) ∘ X(g)`.
    pub fn new(index: Arc<FinCategory>, values: Vec<Arc<FinCategory>>, functors: Vec<Functor>) -> Result<Self> {
        if values.len() != index.object_count() || functors.len() != index.morphism_count() {
            return Err(Error::NotAFunctor("diagram sizes do not match the index category".into()));
        }
        let shape = super::functor::same_shape;
        for f in index.morphisms() {
            let xf = &functors[f.idx()];
            if !shape(xf.source(), &values[index.cod(f).idx()]) || !shape(xf.target(), &values[index.dom(f).idx()]) {
                return Err(Error::NotAFunctor(format!("X({}) has the wrong endpoints", index.mor_name(f))));
            }
            if index.is_identity(f) && !xf.same_as(&Functor::identity(values[index.dom(f).idx()].clone())) {
                return Err(Error::NotAFunctor(format!("X({}) is not an identity", index.mor_name(f))));
            }
        }
        for (g, f, gf) in index.composition_triples() {
            let composite = functors[g.idx()].then(&functors[f.idx()])?;
            if !composite.same_as(&functors[gf.idx()]) {
                return Err(Error::NotAFunctor(format!(
                    "X({} o {}) differs from X({}) o X({})",
                    index.mor_name(g),
                    index.mor_name(f),
                    index.mor_name(f),
                    index.mor_name(g)
                )));
            }
        }
        Ok(CatDiagram { index, values, functors })
    }

    /// The diagram constant at `value`.
    pub fn constant(index: Arc<FinCategory>, value: Arc<FinCategory>) -> Self {
        let values = alloc::vec![value.clone(); index.object_count()];
        let functors = index.morphisms().map(|_| Functor::identity(value.clone())).collect();
        CatDiagram { index, values, functors }
    }

    pub fn index(&self) -> &Arc<FinCategory> {
        &self.index
    }

    pub fn value(&self, c: ObjId) -> &Arc<FinCategory> {
        &self.values[c.idx()]
    }

    /// `X(f): X(cod f) -> X(dom f)`.
    pub fn functor(&self, f: MorId) -> &Functor {
        &self.functors[f.idx()]
    }
}

/// A contravariant diagram `X: C^op -> Set` of finite sets `{0, .., n-1}`.
#[derive(Clone, Debug)]
pub struct SetDiagram {
    index: Arc<FinCategory>,
    sizes: Vec<usize>,
    maps: Vec<Vec<u32>>,
}

impl SetDiagram {
    /// `maps[f]` is `X(f): X(cod f) -> X(dom f)` as a lookup table.
    pub fn new(index: Arc<FinCategory>, sizes: Vec<usize>, maps: Vec<Vec<u32>>) -> Result<Self> {
        if sizes.len() != index.object_count() || maps.len() != index.morphism_count() {
            return Err(Error::NotAFunctor("diagram sizes do not match the index category".into()));
        }
        for f in index.morphisms() {
            let m = &maps[f.idx()];
            let (src, dst) = (sizes[index.cod(f).idx()], sizes[index.dom(f).idx()]);
            if m.len() != src || m.iter().any(|&v| v as usize >= dst) {
                return Err(Error::NotAFunctor(format!("X({}) is not a map of the right sets", index.mor_name(f))));
            }
            if index.is_identity(f) && m.iter().enumerate().any(|(i, &v)| v as usize != i) {
                return Err(Error::NotAFunctor(format!("X({}) is not an identity", index.mor_name(f))));
            }
        }
        for (g, f, gf) in index.composition_triples() {
            let (mg, mf) = (&maps[g.idx()], &maps[f.idx()]);
            if maps[gf.idx()].iter().enumerate().any(|(x, &v)| mf[mg[x] as usize] != v) {
                return Err(Error::NotAFunctor(format!(
                    "X({} o {}) differs from X({}) o X({})",
                    index.mor_name(g),
                    index.mor_name(f),
                    index.mor_name(f),
                    index.mor_name(g)
                )));
            }
        }
        Ok(SetDiagram { index, sizes, maps })
    }

    pub fn index(&self) -> &Arc<FinCategory> {
        &self.index
    }

    pub fn size(&self, c: ObjId) -> usize {
        self.sizes[c.idx()]
    }

    /// `X(f)(x)` for `x ∈ X(cod f)`.
    pub fn apply(&self, f: MorId, x: u32) -> u32 {
        self.maps[f.idx()][x as usize]
    }

    /// The same diagram with each set viewed as a discrete category.
    pub fn to_cat_diagram(&self) -> CatDiagram {
        let idx = &self.index;
        let values: Vec<Arc<FinCategory>> = self
            .sizes
            .iter()
            .map(|&n| {
                let names: Vec<alloc::string::String> = (0..n).map(|i| format!("{i}")).collect();
                Arc::new(FinCategory::discrete(&names))
            })
            .collect();
        let functors = idx
            .morphisms()
            .map(|f| {
                let src = values[idx.cod(f).idx()].clone();
                let dst = values[idx.dom(f).idx()].clone();
                let map: Vec<u32> = self.maps[f.idx()].clone();
                Functor::new_unchecked(
                    src,
                    dst,
                    map.iter().map(|&v| ObjId(v)).collect(),
                    map.iter().map(|&v| MorId(v)).collect(),
                )
            })
            .collect();
        CatDiagram { index: idx.clone(), values, functors }
    }
}

/// The oplax colimit with its projection to the index category.
#[derive(Clone, Debug)]
pub struct OplaxColimit {
    pub category: Arc<FinCategory>,
    pub projection: Functor,
    /// `⟨c, x⟩` per object.
    pub objects: Vec<(ObjId, ObjId)>,
    /// `(f, g)` per morphism.
    pub morphisms: Vec<(MorId, MorId)>,
}

impl OplaxColimit {
    pub fn find(&self, c: ObjId, x: ObjId) -> Option<ObjId> {
        self.objects.iter().position(|&o| o == (c, x)).map(|i| ObjId(i as u32))
    }
}

/// The oplax colimit (Grothendieck construction) of a contravariant
/// Cat-valued diagram.
///
/// Objects are `⟨c, x⟩` with `x ∈ X(c)`; a morphism `⟨c', x'⟩ -> ⟨c, x⟩` is a
/// pair `(f: c' -> c, g: x' -> X(f)(x))`. Composition:
/// `(f₂, g₂) ∘ (f₁, g₁) = (f₂ ∘ f₁, X(f₁)(g₂) ∘ g₁)`.
pub fn oplax_colimit(x: &CatDiagram, limits: &Limits) -> Result<OplaxColimit> {
    let c = &x.index;
    let mut builder: KeyedBuilder<(MorId, MorId)> = KeyedBuilder::new("oplax colimit", limits.max_morphisms);
    let mut objects = Vec::new();
    let mut index = crate::HashMap::default();
    for a in c.objects() {
        let xa = &x.values[a.idx()];
        for v in xa.objects() {
            let id = builder.add_object(format!("<{},{}>", c.obj_name(a), xa.obj_name(v)));
            index.insert((a, v), id);
            objects.push((a, v));
        }
    }
    for (i, &(a1, v1)) in objects.iter().enumerate() {
        let src = ObjId(i as u32);
        let x1 = &x.values[a1.idx()];
        for &f in c.out(a1) {
            let a = c.cod(f);
            let xf = &x.functors[f.idx()];
            for v in x.values[a.idx()].objects() {
                let dst = index[&(a, v)];
                for &g in x1.hom(v1, xf.obj(v)) {
                    let name = format!(
                        "<{},{}>:{}",
                        c.mor_name(f),
                        x1.mor_name(g),
                        builder_object_name(c, &x.values, a, v)
                    );
                    if c.is_identity(f) && x1.is_identity(g) {
                        builder.add_identity(src, (f, g), name)?;
                    } else {
                        builder.add_morphism(src, dst, (f, g), name)?;
                    }
                }
            }
        }
    }
    let (category, keys) = builder.finish(|k2, k1| {
        let (f2, g2) = *k2;
        let (f1, g1) = *k1;
        let inner = &x.values[c.dom(f1).idx()];
        (c.compose(f2, f1), inner.compose(x.functors[f1.idx()].mor(g2), g1))
    })?;
    let category = Arc::new(category);
    let projection = Functor::new_unchecked(
        category.clone(),
        c.clone(),
        objects.iter().map(|o| o.0).collect(),
        keys.iter().map(|k| k.0).collect(),
    );
    Ok(OplaxColimit { category, projection, objects, morphisms: keys })
}

fn builder_object_name(c: &FinCategory, values: &[Arc<FinCategory>], a: ObjId, v: ObjId) -> alloc::string::String {
    format!("<{},{}>", c.obj_name(a), values[a.idx()].obj_name(v))
}

/// The category of elements of a contravariant Set-valued diagram, built
/// directly: objects `(c, x)`, morphisms `f: (c', x') -> (c, x)` for
/// `f: c' -> c` with `X(f)(x) = x'`.
pub fn category_of_elements(x: &SetDiagram, limits: &Limits) -> Result<(Arc<FinCategory>, Functor, Vec<(ObjId, u32)>)> {
    let c = &x.index;
    let mut builder: KeyedBuilder<MorId> = KeyedBuilder::new("category of elements", limits.max_morphisms);
    let mut objects = Vec::new();
    let mut index = crate::HashMap::default();
    for a in c.objects() {
        for v in 0..x.size(a) as u32 {
            let id = builder.add_object(format!("({},{})", c.obj_name(a), v));
            index.insert((a, v), id);
            objects.push((a, v));
        }
    }
    for a in c.objects() {
        for &f in c.incoming(a) {
            for v in 0..x.size(a) as u32 {
                let src = index[&(c.dom(f), x.apply(f, v))];
                let dst = index[&(a, v)];
                let name = format!("{}:({},{})", c.mor_name(f), c.obj_name(a), v);
                if c.is_identity(f) {
                    builder.add_identity(src, f, name)?;
                } else {
                    builder.add_morphism(src, dst, f, name)?;
                }
            }
        }
    }
    let (category, keys) = builder.finish(|g, f| c.compose(*g, *f))?;
    let category = Arc::new(category);
    let projection = Functor::new_unchecked(category.clone(), c.clone(), objects.iter().map(|o| o.0).collect(), keys);
    Ok((category, projection, objects))
}
