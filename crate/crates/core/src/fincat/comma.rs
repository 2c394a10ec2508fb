use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::category::KeyedBuilder;
use super::{FinCategory, Functor, MorId, ObjId};
use crate::error::{Error, Limits, Result};

/// A comma category together with its projection to the source of the functor.
#[derive(Clone, Debug)]
pub struct CommaCategory {
    pub category: Arc<FinCategory>,
    pub projection: Functor,
    /// `(c, u)` for each object, with `u: d -> F(c)` or `u: F(c) -> d`.
    pub objects: Vec<(ObjId, MorId)>,
}

impl CommaCategory {
    pub fn find(&self, c: ObjId, u: MorId) -> Option<ObjId> {
        self.objects.iter().position(|&o| o == (c, u)).map(|i| ObjId(i as u32))
    }
}

/// `d ↓ F`: objects `(c, u: d -> F c)`, morphisms `g: c -> c'` with
/// `F(g) ∘ u = u'`.
pub fn comma_under(f: &Functor, d: ObjId, limits: &Limits) -> Result<CommaCategory> {
    let (src, tgt) = (f.source(), f.target());
    if d.idx() >= tgt.object_count() {
        return Err(Error::UnknownObject(format!("#{}", d.0)));
    }
    let mut objects = Vec::new();
    for c in src.objects() {
        for &u in tgt.hom(d, f.obj(c)) {
            objects.push((c, u));
        }
    }
    build_comma(f, objects, limits, |u, g| tgt.compose(f.mor(g), u), "comma category")
}

/// `F ↓ d`: objects `(c, u: F c -> d)`, morphisms `g: c -> c'` with
/// `u' ∘ F(g) = u`.
pub fn comma_over(f: &Functor, d: ObjId, limits: &Limits) -> Result<CommaCategory> {
    let (src, tgt) = (f.source(), f.target());
    if d.idx() >= tgt.object_count() {
        return Err(Error::UnknownObject(format!("#{}", d.0)));
    }
    let mut objects = Vec::new();
    for c in src.objects() {
        for &u in tgt.hom(f.obj(c), d) {
            objects.push((c, u));
        }
    }
    // Morphisms are indexed by their domain; the codomain of `g` out of
    // `(c, u)` is determined only for the under-category, so here we search.
    let src2 = src.clone();
    let mut builder: KeyedBuilder<MorId> = KeyedBuilder::new("comma category", limits.max_morphisms);
    for &(c, u) in &objects {
        builder.add_object(format!("<{},{}>", src.obj_name(c), tgt.mor_name(u)));
    }
    let mut index = crate::HashMap::default();
    for (i, &o) in objects.iter().enumerate() {
        index.insert(o, ObjId(i as u32));
    }
    for (i, &(c, u)) in objects.iter().enumerate() {
        let a = ObjId(i as u32);
        for &g in src.out(c) {
            let c2 = src.cod(g);
            for &u2 in tgt.hom(f.obj(c2), tgt.cod(u)) {
                if tgt.compose(u2, f.mor(g)) == u {
                    let b = index[&(c2, u2)];
                    let name = format!("{}|{}", src.mor_name(g), builder_name(&objects, i, src, tgt));
                    if a == b && src.is_identity(g) {
                        builder.add_identity(a, g, name)?;
                    } else {
                        builder.add_morphism(a, b, g, name)?;
                    }
                }
            }
        }
    }
    let (category, keys) = builder.finish(|g, h| src2.compose(*g, *h))?;
    finish_comma(f, category, keys, objects)
}

fn builder_name(objects: &[(ObjId, MorId)], i: usize, src: &FinCategory, tgt: &FinCategory) -> alloc::string::String {
    let (c, u) = objects[i];
    format!("<{},{}>", src.obj_name(c), tgt.mor_name(u))
}

fn build_comma(
    f: &Functor,
    objects: Vec<(ObjId, MorId)>,
    limits: &Limits,
    push: impl Fn(MorId, MorId) -> MorId,
    what: &'static str,
) -> Result<CommaCategory> {
    let (src, tgt) = (f.source(), f.target());
    let mut index = crate::HashMap::default();
    for (i, &o) in objects.iter().enumerate() {
        index.insert(o, ObjId(i as u32));
    }
    let mut builder: KeyedBuilder<MorId> = KeyedBuilder::new(what, limits.max_morphisms);
    for i in 0..objects.len() {
        builder.add_object(builder_name(&objects, i, src, tgt));
    }
    for (i, &(c, u)) in objects.iter().enumerate() {
        let a = ObjId(i as u32);
        for &g in src.out(c) {
            let b = index[&(src.cod(g), push(u, g))];
            let name = format!("{}|{}", src.mor_name(g), builder_name(&objects, i, src, tgt));
            if src.is_identity(g) {
                builder.add_identity(a, g, name)?;
            } else {
                builder.add_morphism(a, b, g, name)?;
            }
        }
    }
    let src2 = src.clone();
    let (category, keys) = builder.finish(|g, h| src2.compose(*g, *h))?;
    finish_comma(f, category, keys, objects)
}

fn finish_comma(
    f: &Functor,
    category: FinCategory,
    keys: Vec<MorId>,
    objects: Vec<(ObjId, MorId)>,
) -> Result<CommaCategory> {
    let category = Arc::new(category);
    let projection = Functor::new_unchecked(
        category.clone(),
        f.source().clone(),
        objects.iter().map(|o| o.0).collect(),
        keys,
    );
    Ok(CommaCategory { category, projection, objects })
}

/// A strict pullback `B' ×_B E` of categories with its two projections.
#[derive(Clone, Debug)]
pub struct PullbackCategory {
    pub category: Arc<FinCategory>,
    pub left: Functor,
    pub right: Functor,
}

/// The strict pullback of `f: B' -> B` and `p: E -> B`.
pub fn pullback_category(f: &Functor, p: &Functor, limits: &Limits) -> Result<PullbackCategory> {
    if !super::functor::same_shape(f.target(), p.target()) {
        return Err(Error::Precondition("pullback of functors with different codomains".into()));
    }
    let (b1, e) = (f.source(), p.source());
    let mut builder: KeyedBuilder<(MorId, MorId)> = KeyedBuilder::new("pullback category", limits.max_morphisms);
    let mut objects = Vec::new();
    let mut index = crate::HashMap::default();
    for x in b1.objects() {
        for y in e.objects() {
            if f.obj(x) == p.obj(y) {
                let id = builder.add_object(format!("<{},{}>", b1.obj_name(x), e.obj_name(y)));
                index.insert((x, y), id);
                objects.push((x, y));
            }
        }
    }
    for (i, &(x, y)) in objects.iter().enumerate() {
        let a = ObjId(i as u32);
        for &beta in b1.out(x) {
            for &eps in e.out(y) {
                if f.mor(beta) != p.mor(eps) {
                    continue;
                }
                let b = index[&(b1.cod(beta), e.cod(eps))];
                let name = format!("<{},{}>", b1.mor_name(beta), e.mor_name(eps));
                if b1.is_identity(beta) && e.is_identity(eps) {
                    builder.add_identity(a, (beta, eps), name)?;
                } else {
                    builder.add_morphism(a, b, (beta, eps), name)?;
                }
            }
        }
    }
    let (b1c, ec) = (b1.clone(), e.clone());
    let (category, keys) =
        builder.finish(|g, h| (b1c.compose(g.0, h.0), ec.compose(g.1, h.1)))?;
    let category = Arc::new(category);
    let left = Functor::new_unchecked(
        category.clone(),
        b1.clone(),
        objects.iter().map(|o| o.0).collect(),
        keys.iter().map(|k| k.0).collect(),
    );
    let right = Functor::new_unchecked(
        category.clone(),
        e.clone(),
        objects.iter().map(|o| o.1).collect(),
        keys.iter().map(|k| k.1).collect(),
    );
    Ok(PullbackCategory { category, left, right })
}

/// `C × D` with its projections.
pub fn product_category(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    limits: &Limits,
) -> Result<PullbackCategory> {
    let terminal = Arc::new(FinCategory::terminal());
    let to_c = Functor::constant(c.clone(), terminal.clone(), ObjId(0));
    let to_d = Functor::constant(d.clone(), terminal, ObjId(0));
    pullback_category(&to_c, &to_d, limits)
}
