use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{full_subcategory, FinCategory, Functor, MorId, ObjId};

/// A skeleton of `C`: the full subcategory on one object per isomorphism
/// class, with the inclusion `i` and a retraction `r` such that `r ∘ i = id`.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub category: Arc<FinCategory>,
    pub inclusion: Functor,
    pub retraction: Functor,
}

/// Representatives are the first object of each isomorphism class.
pub fn skeleton(c: &Arc<FinCategory>) -> Skeleton {
    let n = c.object_count();
    let mut rep: Vec<Option<(ObjId, MorId)>> = vec![None; n];
    let mut reps = Vec::new();
    for x in c.objects() {
        if rep[x.idx()].is_some() {
            continue;
        }
        rep[x.idx()] = Some((x, c.id(x)));
        reps.push(x);
        for y in c.objects().skip(x.idx() + 1) {
            if rep[y.idx()].is_some() {
                continue;
            }
            if let Some(&iso) = c.hom(y, x).iter().find(|&&f| c.is_isomorphism(f)) {
                rep[y.idx()] = Some((x, iso));
            }
        }
    }
    let (category, inclusion) = full_subcategory(c, &reps);
    let mut back = vec![u32::MAX; c.morphism_count()];
    for f in category.morphisms() {
        back[inclusion.mor(f).idx()] = f.0;
    }
    let mut obj_map = Vec::with_capacity(n);
    let mut pos = vec![u32::MAX; n];
    for (i, r) in reps.iter().enumerate() {
        pos[r.idx()] = i as u32;
    }
    for x in c.objects() {
        obj_map.push(ObjId(pos[rep[x.idx()].unwrap().0.idx()]));
    }
    let mor_map = c
        .morphisms()
        .map(|f| {
            let (_, ax) = rep[c.dom(f).idx()].unwrap();
            let (_, ay) = rep[c.cod(f).idx()].unwrap();
            let ax_inv = c.inverse(ax).expect("chosen isomorphism");
            MorId(back[c.compose_path(&[ax_inv, f, ay]).unwrap().idx()])
        })
        .collect();
    let retraction = Functor::new_unchecked(c.clone(), category.clone(), obj_map, mor_map);
    Skeleton { category, inclusion, retraction }
}
