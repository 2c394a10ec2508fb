use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{FinCategory, Functor, MorId, ObjId};

struct Search<'a> {
    c: &'a FinCategory,
    d: &'a FinCategory,
    bijective: bool,
    /// Non-identity morphisms of `c` in assignment order.
    order: Vec<MorId>,
    /// Triples `(g, f, gf)` to check once the morphism at this position is set.
    checks: Vec<Vec<(MorId, MorId, MorId)>>,
    obj_map: Vec<ObjId>,
    mor_map: Vec<Option<MorId>>,
    obj_used: Vec<bool>,
    mor_used: Vec<bool>,
}

impl Search<'_> {
    fn new<'a>(c: &'a FinCategory, d: &'a FinCategory, bijective: bool) -> Search<'a> {
        let order: Vec<MorId> = c.morphisms().filter(|&f| !c.is_identity(f)).collect();
        let mut pos = vec![usize::MAX; c.morphism_count()];
        for (i, f) in order.iter().enumerate() {
            pos[f.idx()] = i;
        }
        let mut checks = vec![Vec::new(); order.len()];
        for (g, f, gf) in c.composition_triples() {
            if c.is_identity(g) || c.is_identity(f) {
                continue;
            }
            let last = [g, f, gf]
                .iter()
                .filter(|m| !c.is_identity(**m))
                .map(|m| pos[m.idx()])
                .max()
                .unwrap();
            checks[last].push((g, f, gf));
        }
        Search {
            c,
            d,
            bijective,
            order,
            checks,
            obj_map: vec![ObjId(0); c.object_count()],
            mor_map: vec![None; c.morphism_count()],
            obj_used: vec![false; d.object_count()],
            mor_used: vec![false; d.morphism_count()],
        }
    }

    fn signature(cat: &FinCategory, x: ObjId) -> (usize, usize, usize) {
        (cat.out(x).len(), cat.incoming(x).len(), cat.hom(x, x).len())
    }

    fn objects(&mut self, i: usize, emit: &mut dyn FnMut(&Self) -> bool) -> bool {
        if i == self.c.object_count() {
            for x in self.c.objects() {
                let id = self.d.id(self.obj_map[x.idx()]);
                self.mor_map[self.c.id(x).idx()] = Some(id);
                if self.bijective {
                    self.mor_used[id.idx()] = true;
                }
            }
            let stop = self.morphisms(0, emit);
            if self.bijective {
                for x in self.c.objects() {
                    self.mor_used[self.d.id(self.obj_map[x.idx()]).idx()] = false;
                }
            }
            return stop;
        }
        let x = ObjId(i as u32);
        for y in self.d.objects() {
            if self.bijective {
                if self.obj_used[y.idx()] || Self::signature(self.c, x) != Self::signature(self.d, y) {
                    continue;
                }
                let consistent = (0..i).all(|j| {
                    let z = ObjId(j as u32);
                    let w = self.obj_map[j];
                    self.c.hom(x, z).len() == self.d.hom(y, w).len()
                        && self.c.hom(z, x).len() == self.d.hom(w, y).len()
                });
                if !consistent {
                    continue;
                }
                self.obj_used[y.idx()] = true;
            }
            self.obj_map[i] = y;
            let stop = self.objects(i + 1, emit);
            if self.bijective {
                self.obj_used[y.idx()] = false;
            }
            if stop {
                return true;
            }
        }
        false
    }

    fn morphisms(&mut self, i: usize, emit: &mut dyn FnMut(&Self) -> bool) -> bool {
        if i == self.order.len() {
            return emit(self);
        }
        let f = self.order[i];
        let (a, b) = (self.obj_map[self.c.dom(f).idx()], self.obj_map[self.c.cod(f).idx()]);
        let candidates: Vec<MorId> = self.d.hom(a, b).to_vec();
        for g in candidates {
            if self.bijective && self.mor_used[g.idx()] {
                continue;
            }
            self.mor_map[f.idx()] = Some(g);
            let ok = self.checks[i].iter().all(|&(p, q, pq)| {
                let m = |h: MorId| self.mor_map[h.idx()].unwrap();
                self.d.compose(m(p), m(q)) == m(pq)
            });
            if ok {
                if self.bijective {
                    self.mor_used[g.idx()] = true;
                }
                let stop = self.morphisms(i + 1, emit);
                if self.bijective {
                    self.mor_used[g.idx()] = false;
                }
                if stop {
                    self.mor_map[f.idx()] = None;
                    return true;
                }
            }
            self.mor_map[f.idx()] = None;
        }
        false
    }

    fn snapshot(&self) -> (Vec<ObjId>, Vec<MorId>) {
        (self.obj_map.clone(), self.mor_map.iter().map(|m| m.unwrap()).collect())
    }
}

/// All functors `C -> D`, in lexicographic order of their object then
/// morphism assignments, stopping after `limit` results.
pub fn enumerate_functors(c: &Arc<FinCategory>, d: &Arc<FinCategory>, limit: usize) -> Vec<Functor> {
    let mut found = Vec::new();
    if limit == 0 {
        return found;
    }
    let mut search = Search::new(c, d, false);
    search.objects(0, &mut |s| {
        let (om, mm) = s.snapshot();
        found.push(Functor::new_unchecked(c.clone(), d.clone(), om, mm));
        found.len() >= limit
    });
    found
}

/// An isomorphism `C -> D`, if one exists.
pub fn find_isomorphism(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Option<Functor> {
    if c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count() {
        return None;
    }
    let mut found = None;
    let mut search = Search::new(c, d, true);
    search.objects(0, &mut |s| {
        found = Some(s.snapshot());
        true
    });
    found.map(|(om, mm)| Functor::new_unchecked(c.clone(), d.clone(), om, mm))
}
