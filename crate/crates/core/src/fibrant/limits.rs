use alloc::vec::Vec;

use crate::fincat::{FinCategory, MorId, ObjId};

/// A chosen binary product `X × Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Product {
    pub object: ObjId,
    pub proj1: MorId,
    pub proj2: MorId,
}

/// A chosen pullback of a cospan `A -f-> C <-g- B`: `pa: P -> A`, `pb: P -> B`
/// with `f ∘ pa = g ∘ pb`. `pb` is the pullback of `f` along `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pullback {
    pub object: ObjId,
    pub pa: MorId,
    pub pb: MorId,
}

/// Searches for a limit of a pair of objects `(a, b)`, where `compatible`
/// selects the cones `(s: Q -> a, t: Q -> b)`. The least candidate in
/// `(object, first leg, second leg)` order wins.
fn find_pair_limit(
    c: &FinCategory,
    a: ObjId,
    b: ObjId,
    compatible: impl Fn(MorId, MorId) -> bool,
) -> Option<(ObjId, MorId, MorId)> {
    // Cone counts per test object; a limit object must match all of them.
    let counts: Vec<usize> = c
        .objects()
        .map(|q| {
            c.hom(q, a)
                .iter()
                .map(|&s| c.hom(q, b).iter().filter(|&&t| compatible(s, t)).count())
                .sum()
        })
        .collect();
    let mut seen: Vec<(MorId, MorId)> = Vec::new();
    for p in c.objects() {
        if c.objects().any(|q| c.hom(q, p).len() != counts[q.idx()]) {
            continue;
        }
        for &s in c.hom(p, a) {
            for &t in c.hom(p, b) {
                if !compatible(s, t) {
                    continue;
                }
                let universal = c.objects().all(|q| {
                    seen.clear();
                    seen.extend(c.hom(q, p).iter().map(|&x| (c.compose(s, x), c.compose(t, x))));
                    seen.sort_unstable();
                    seen.windows(2).all(|w| w[0] != w[1])
                });
                if universal {
                    return Some((p, s, t));
                }
            }
        }
    }
    None
}

/// The least product of `x` and `y`, found by exhaustive search.
pub fn find_product(c: &FinCategory, x: ObjId, y: ObjId) -> Option<Product> {
    find_pair_limit(c, x, y, |_, _| true).map(|(object, proj1, proj2)| Product { object, proj1, proj2 })
}

/// The least pullback of `f: A -> C` and `g: B -> C`, found by exhaustive
/// search.
pub fn find_pullback(c: &FinCategory, f: MorId, g: MorId) -> Option<Pullback> {
    if c.cod(f) != c.cod(g) {
        return None;
    }
    find_pair_limit(c, c.dom(f), c.dom(g), |s, t| c.compose(f, s) == c.compose(g, t))
        .map(|(object, pa, pb)| Pullback { object, pa, pb })
}

/// Whether `(object, s, t)` is a product of `x` and `y`.
pub fn is_product(c: &FinCategory, p: &Product) -> bool {
    is_pair_limit(c, p.object, p.proj1, p.proj2, |_, _| true)
}

/// Whether `p` is a pullback of `f` and `g`.
pub fn is_pullback(c: &FinCategory, f: MorId, g: MorId, p: &Pullback) -> bool {
    c.compose(f, p.pa) == c.compose(g, p.pb)
        && is_pair_limit(c, p.object, p.pa, p.pb, |s, t| c.compose(f, s) == c.compose(g, t))
}

fn is_pair_limit(c: &FinCategory, p: ObjId, s: MorId, t: MorId, compatible: impl Fn(MorId, MorId) -> bool) -> bool {
    if c.dom(s) != p || c.dom(t) != p {
        return false;
    }
    let (a, b) = (c.cod(s), c.cod(t));
    let mut seen: Vec<(MorId, MorId)> = Vec::new();
    c.objects().all(|q| {
        let cones: usize = c
            .hom(q, a)
            .iter()
            .map(|&x| c.hom(q, b).iter().filter(|&&y| compatible(x, y)).count())
            .sum();
        seen.clear();
        seen.extend(c.hom(q, p).iter().map(|&x| (c.compose(s, x), c.compose(t, x))));
        seen.sort_unstable();
        seen.len() == cones && seen.windows(2).all(|w| w[0] != w[1])
    })
}

/// The unique `m: Q -> P` with `s ∘ m = a` and `t ∘ m = b`.
pub fn mediating(c: &FinCategory, p: ObjId, s: MorId, t: MorId, a: MorId, b: MorId) -> Option<MorId> {
    c.hom(c.dom(a), p).iter().copied().find(|&m| c.compose(s, m) == a && c.compose(t, m) == b)
}
