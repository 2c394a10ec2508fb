use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::functor::subcategory;
use super::{FinCategory, Functor, MorId, ObjId};
use crate::error::{Error, Result};

/// For one cartesian morphism `φ: e' -> e`, every test cone `(ψ: e'' -> e,
/// h: P e'' -> P e')` with `P φ ∘ h = P ψ` and its unique filler `χ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartesianWitness {
    pub morphism: MorId,
    /// `(ψ, h, χ)`
    pub fillers: Vec<(MorId, MorId, MorId)>,
}

/// Outcome of a Grothendieck fibration check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FibrationCheck {
    /// A cartesian lift for every `(e, g)` with `cod g = P e`, keyed by
    /// `(e, g)`; each is the cartesian lift with the least name.
    Fibration(BTreeMap<(ObjId, MorId), MorId>),
    /// `g` has no cartesian lift with codomain `e`.
    NoLift { e: ObjId, g: MorId },
}

impl FibrationCheck {
    pub fn is_fibration(&self) -> bool {
        matches!(self, FibrationCheck::Fibration(_))
    }

    pub fn lifts(&self) -> Option<&BTreeMap<(ObjId, MorId), MorId>> {
        match self {
            FibrationCheck::Fibration(t) => Some(t),
            FibrationCheck::NoLift { .. } => None,
        }
    }
}

/// Checks the universal property of `φ` relative to `P`.
///
/// For every `e''`, the map `χ ↦ (φ∘χ, Pχ)` from `Hom(e'', e')` to the set of
/// compatible pairs `(ψ, h)` must be a bijection.
pub fn is_cartesian(p: &Functor, phi: MorId) -> bool {
    let (e, b) = (&**p.source(), &**p.target());
    let (e1, e0) = (e.dom(phi), e.cod(phi));
    let pphi = p.mor(phi);
    let b1 = b.dom(pphi);
    let mut seen: Vec<(MorId, MorId)> = Vec::new();
    for e2 in e.objects() {
        let hom = e.hom(e2, e1);
        let pe2 = p.obj(e2);
        let mut cones = 0usize;
        for &psi in e.hom(e2, e0) {
            let ppsi = p.mor(psi);
            cones += b.hom(pe2, b1).iter().filter(|&&h| b.compose(pphi, h) == ppsi).count();
        }
        if cones != hom.len() {
            return false;
        }
        seen.clear();
        seen.extend(hom.iter().map(|&chi| (e.compose(phi, chi), p.mor(chi))));
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    true
}

/// The fillers exhibiting `φ` as cartesian, or `None` when it is not.
pub fn cartesian_witness(p: &Functor, phi: MorId) -> Option<CartesianWitness> {
    let (e, b) = (&**p.source(), &**p.target());
    let (e1, e0) = (e.dom(phi), e.cod(phi));
    let pphi = p.mor(phi);
    let b1 = b.dom(pphi);
    let mut fillers = Vec::new();
    for e2 in e.objects() {
        for &psi in e.hom(e2, e0) {
            for &h in b.hom(p.obj(e2), b1) {
                if b.compose(pphi, h) != p.mor(psi) {
                    continue;
                }
                let mut found = e.hom(e2, e1).iter().copied().filter(|&chi| {
                    e.compose(phi, chi) == psi && p.mor(chi) == h
                });
                let chi = found.next()?;
                if found.next().is_some() {
                    return None;
                }
                fillers.push((psi, h, chi));
            }
        }
    }
    Some(CartesianWitness { morphism: phi, fillers })
}

/// Searches for a cartesian lift of every base morphism into every `P e`.
pub fn is_grothendieck_fibration(p: &Functor) -> FibrationCheck {
    let (e, b) = (&**p.source(), &**p.target());
    // Morphisms of E grouped by (codomain, image).
    let mut over: BTreeMap<(ObjId, MorId), Vec<MorId>> = BTreeMap::new();
    for phi in e.morphisms() {
        over.entry((e.cod(phi), p.mor(phi))).or_default().push(phi);
    }
    for list in over.values_mut() {
        list.sort_by(|x, y| e.mor_name(*x).cmp(e.mor_name(*y)));
    }
    let mut table = BTreeMap::new();
    let mut cache: Vec<Option<bool>> = alloc::vec![None; e.morphism_count()];
    for x in e.objects() {
        for &g in b.incoming(p.obj(x)) {
            let candidates = over.get(&(x, g)).map(Vec::as_slice).unwrap_or(&[]);
            let lift = candidates.iter().copied().find(|&phi| {
                *cache[phi.idx()].get_or_insert_with(|| is_cartesian(p, phi))
            });
            match lift {
                Some(phi) => {
                    table.insert((x, g), phi);
                }
                None => return FibrationCheck::NoLift { e: x, g },
            }
        }
    }
    FibrationCheck::Fibration(table)
}

/// The subcategory of `E` sent to `id_b`, with its inclusion.
pub fn strict_fibre(p: &Functor, b: ObjId) -> Result<(Arc<FinCategory>, Functor)> {
    let (e, base) = (p.source(), p.target());
    if b.idx() >= base.object_count() {
        return Err(Error::UnknownObject(alloc::format!("#{}", b.0)));
    }
    let idb = base.id(b);
    let objects: Vec<ObjId> = e.objects().filter(|&x| p.obj(x) == b).collect();
    let morphisms: Vec<MorId> = e.morphisms().filter(|&f| p.mor(f) == idb).collect();
    Ok(subcategory(e, &objects, &morphisms))
}
