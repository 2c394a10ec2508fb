use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{FinCategory, Functor, MorId, ObjId};

/// `F ⊣ G` between `C` and `D`, with unit `η_c: c -> G F c` and counit
/// `ε_d: F G d -> d`.
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub left: Functor,
    pub right: Functor,
    pub unit: Vec<MorId>,
    pub counit: Vec<MorId>,
}

/// `(c, ε)` with `ε: F c -> d` such that `g ↦ ε ∘ F g` is a bijection
/// `Hom(c', c) -> Hom(F c', d)` for all `c'`; i.e. a terminal object of `F ↓ d`.
fn universal_arrow(f: &Functor, d: ObjId) -> Option<(ObjId, MorId)> {
    let (c, dd) = (&**f.source(), &**f.target());
    let mut images: Vec<MorId> = Vec::new();
    for x in c.objects() {
        'eps: for &eps in dd.hom(f.obj(x), d) {
            for y in c.objects() {
                let hom = c.hom(y, x);
                if hom.len() != dd.hom(f.obj(y), d).len() {
                    continue 'eps;
                }
                images.clear();
                images.extend(hom.iter().map(|&g| dd.compose(eps, f.mor(g))));
                images.sort_unstable();
                if images.windows(2).any(|w| w[0] == w[1]) {
                    continue 'eps;
                }
            }
            return Some((x, eps));
        }
    }
    None
}

/// The unique `g: c' -> c` with `ε ∘ F g = u`.
fn factor(f: &Functor, c_prime: ObjId, c: ObjId, eps: MorId, u: MorId) -> MorId {
    let (cc, d) = (&**f.source(), &**f.target());
    cc.hom(c_prime, c)
        .iter()
        .copied()
        .find(|&g| d.compose(eps, f.mor(g)) == u)
        .expect("universal arrow factorization")
}

/// A right adjoint of `F`, built from terminal objects of the comma categories
/// `F ↓ d`, with the triangle identities verified.
pub fn find_right_adjoint(f: &Functor) -> Option<Adjunction> {
    let (c, d) = (f.source(), f.target());
    let mut g_obj = Vec::with_capacity(d.object_count());
    let mut counit = Vec::with_capacity(d.object_count());
    for x in d.objects() {
        let (gx, eps) = universal_arrow(f, x)?;
        g_obj.push(gx);
        counit.push(eps);
    }
    let g_mor: Vec<MorId> = d
        .morphisms()
        .map(|k| {
            let (a, b) = (d.dom(k), d.cod(k));
            factor(f, g_obj[a.idx()], g_obj[b.idx()], counit[b.idx()], d.compose(k, counit[a.idx()]))
        })
        .collect();
    let right = Functor::new(d.clone(), c.clone(), g_obj, g_mor).ok()?;
    let unit: Vec<MorId> = c
        .objects()
        .map(|x| {
            let fx = f.obj(x);
            factor(f, x, right.obj(fx), counit[fx.idx()], d.id(fx))
        })
        .collect();
    let adj = Adjunction { left: f.clone(), right, unit, counit };
    adj.verify().then_some(adj)
}

/// A left adjoint of `F`, found as the right adjoint of `F^op`.
pub fn find_left_adjoint(f: &Functor) -> Option<Adjunction> {
    let op = f.opposite();
    let adj = find_right_adjoint(&op)?;
    // In the opposite, the counit of F^op ⊣ G^op is the unit of G ⊣ F.
    let left = adj.right.retarget(f.target().clone(), f.source().clone()).ok()?;
    let result = Adjunction { left, right: f.clone(), unit: adj.counit, counit: adj.unit };
    result.verify().then_some(result)
}

impl Adjunction {
    /// Naturality of unit and counit and both triangle identities.
    pub fn verify(&self) -> bool {
        let (f, g) = (&self.left, &self.right);
        let (c, d): (&Arc<FinCategory>, &Arc<FinCategory>) = (f.source(), f.target());
        let unit_ok = c.morphisms().all(|h| {
            let (a, b) = (c.dom(h), c.cod(h));
            c.dom(self.unit[a.idx()]) == a
                && c.cod(self.unit[a.idx()]) == g.obj(f.obj(a))
                && c.compose(self.unit[b.idx()], h) == c.compose(g.mor(f.mor(h)), self.unit[a.idx()])
        });
        let counit_ok = d.morphisms().all(|k| {
            let (a, b) = (d.dom(k), d.cod(k));
            d.dom(self.counit[a.idx()]) == f.obj(g.obj(a))
                && d.cod(self.counit[a.idx()]) == a
                && d.compose(k, self.counit[a.idx()]) == d.compose(self.counit[b.idx()], f.mor(g.mor(k)))
        });
        let triangle_f = c.objects().all(|x| {
            let fx = f.obj(x);
            d.is_identity(d.compose(self.counit[fx.idx()], f.mor(self.unit[x.idx()])))
        });
        let triangle_g = d.objects().all(|y| {
            let gy = g.obj(y);
            c.is_identity(c.compose(g.mor(self.counit[y.idx()]), self.unit[gy.idx()]))
        });
        unit_ok && counit_ok && triangle_f && triangle_g
    }
}
