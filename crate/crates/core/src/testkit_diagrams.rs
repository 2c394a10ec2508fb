//! Random diagrams over small index categories, for unit tests.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::fincat::{FinCategory, SetDiagram};

/// A functor `C^op -> Set` built as a disjoint union of representables
/// `Hom(-, c)` and constant points, chosen by `seed`.
pub fn random_set_diagram(c: &Arc<FinCategory>, seed: u64) -> SetDiagram {
    let mut state = seed | 1;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let summands = 1 + (next() % 3) as usize;
    let mut sizes = vec![0usize; c.object_count()];
    let mut maps: Vec<Vec<u32>> = vec![Vec::new(); c.morphism_count()];
    for _ in 0..summands {
        let offset = sizes.clone();
        if next() % 3 == 0 || c.object_count() == 0 {
            for a in c.objects() {
                sizes[a.idx()] += 1;
            }
            for f in c.morphisms() {
                maps[f.idx()].push(offset[c.dom(f).idx()] as u32);
            }
        } else {
            let t = crate::ObjId((next() % c.object_count() as u64) as u32);
            for a in c.objects() {
                sizes[a.idx()] += c.hom(a, t).len();
            }
            for f in c.morphisms() {
                // X(f): Hom(cod f, t) -> Hom(dom f, t), u ↦ u ∘ f.
                let (src, dst) = (c.cod(f), c.dom(f));
                for &u in c.hom(src, t) {
                    let uf = c.compose(u, f);
                    let k = c.hom(dst, t).iter().position(|&m| m == uf).unwrap();
                    maps[f.idx()].push((offset[dst.idx()] + k) as u32);
                }
            }
        }
    }
    SetDiagram::new(c.clone(), sizes, maps).expect("representables are functorial")
}
