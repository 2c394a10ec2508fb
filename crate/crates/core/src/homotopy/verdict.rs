use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::chains::{
    functor_chain_map, normalized_chain_map, normalized_chains, ChainComplex, ChainMap, CategoryChains,
    HomologyGroup,
};
use super::simplicial::{SimplicialMap, SimplicialSet};
use crate::error::{Limits, Result};
use crate::fincat::{
    comma_under, component_count, components, find_left_adjoint, find_right_adjoint, full_subcategory, skeleton,
    FinCategory, Functor, ObjId,
};

/// Default truncation: homology is compared through degree `T - 1 = 2`.
pub const DEFAULT_TRUNCATION: usize = 3;

/// Three-valued evidence that a map is a weak homotopy equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified(Certificate),
    /// No discrepancy in `π₀` or in homology through degree `checked_through`.
    Consistent { checked_through: usize },
    Refuted(Discrepancy),
}

/// A structural reason for a weak equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Isomorphism,
    RightAdjoint,
    LeftAdjoint,
    TerminalObject(String),
    InitialObject(String),
    /// Source and target are both certified contractible.
    BothContractible(Box<Certificate>, Box<Certificate>),
    /// Each step is certified; the steps are listed from the source.
    Composite(Vec<Certificate>),
    /// Every comma category is certified contractible.
    AllCommas,
    /// Every instance of a batch check is certified.
    AllInstances,
}

/// A concrete invariant that tells source and target apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discrepancy {
    /// Numbers of connected components.
    Components { source: usize, target: usize },
    Homology { degree: usize, source: HomologyGroup, target: HomologyGroup },
    /// The groups agree but the induced map in this degree is not an isomorphism.
    InducedMap { degree: usize },
    /// The comma category under `object` is not contractible.
    Comma { object: String, inner: Box<Discrepancy> },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified(_))
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::Consistent { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    /// `"certified"`, `"consistent"` or `"refuted"`.
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Certified(_) => "certified",
            Verdict::Consistent { .. } => "consistent",
            Verdict::Refuted(_) => "refuted",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Isomorphism => f.write_str("isomorphism"),
            Certificate::RightAdjoint => f.write_str("has a right adjoint"),
            Certificate::LeftAdjoint => f.write_str("has a left adjoint"),
            Certificate::TerminalObject(x) => write!(f, "terminal object {x}"),
            Certificate::InitialObject(x) => write!(f, "initial object {x}"),
            Certificate::BothContractible(a, b) => write!(f, "source ({a}) and target ({b}) contractible"),
            Certificate::Composite(steps) => {
                for (i, s) in steps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", then ")?;
                    }
                    write!(f, "{s}")?;
                }
                Ok(())
            }
            Certificate::AllCommas => f.write_str("all comma categories contractible"),
            Certificate::AllInstances => f.write_str("every instance certified"),
        }
    }
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discrepancy::Components { source, target } => write!(f, "pi0: {source} vs {target}"),
            Discrepancy::Homology { degree, source, target } => write!(f, "H{degree}: {source} vs {target}"),
            Discrepancy::InducedMap { degree } => write!(f, "induced map on H{degree} is not an isomorphism"),
            Discrepancy::Comma { object, inner } => write!(f, "comma under {object}: {inner}"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified(c) => write!(f, "certified ({c})"),
            Verdict::Consistent { checked_through } => write!(f, "consistent (through H{checked_through})"),
            Verdict::Refuted(d) => write!(f, "refuted ({d})"),
        }
    }
}

/// Compares two truncated complexes along a chain map. Returns the first
/// discrepancy in degrees below the top.
///
/// A vanishing cone in degrees `< T` makes the map an isomorphism below
/// `T - 1` and onto in degree `T - 1`; equal groups there upgrade the
/// surjection to an isomorphism because finitely generated abelian groups
/// are Hopfian.
pub fn compare_complexes(source: &ChainComplex, target: &ChainComplex, map: &ChainMap) -> Option<Discrepancy> {
    let hs = source.homology();
    let ht = target.homology();
    if hs.groups[0].rank != ht.groups[0].rank {
        return Some(Discrepancy::Components { source: hs.groups[0].rank, target: ht.groups[0].rank });
    }
    for (n, (a, b)) in hs.groups.iter().zip(&ht.groups).enumerate() {
        if a != b {
            return Some(Discrepancy::Homology { degree: n, source: a.clone(), target: b.clone() });
        }
    }
    let cone = source.cone(target, map).homology();
    // H_n(cone) ≠ 0 means f_n is not onto or f_{n-1} is not injective.
    cone.groups.iter().position(|g| !g.is_zero()).map(|n| Discrepancy::InducedMap { degree: n })
}

/// Evidence that `N(F)` is a weak homotopy equivalence, comparing homology
/// through degree `t - 1`.
pub fn weak_equivalence_evidence(f: &Functor, t: usize, limits: &Limits) -> Result<Verdict> {
    if f.is_bijective() {
        return Ok(Verdict::Certified(Certificate::Isomorphism));
    }
    if find_right_adjoint(f).is_some() {
        return Ok(Verdict::Certified(Certificate::RightAdjoint));
    }
    if find_left_adjoint(f).is_some() {
        return Ok(Verdict::Certified(Certificate::LeftAdjoint));
    }
    let (cs, ct) = (component_count(f.source()), component_count(f.target()));
    if cs != ct {
        return Ok(Verdict::Refuted(Discrepancy::Components { source: cs, target: ct }));
    }
    let (ls, lt) = (components(f.source()), components(f.target()));
    let mut image = vec![usize::MAX; cs];
    for x in f.source().objects() {
        let y = lt[f.obj(x).idx()];
        if image[ls[x.idx()]] == usize::MAX {
            image[ls[x.idx()]] = y;
        }
    }
    image.sort_unstable();
    image.dedup();
    if image.len() != ct {
        return Ok(Verdict::Refuted(Discrepancy::InducedMap { degree: 0 }));
    }
    if let (Some(a), Some(b)) = (structural_contractibility(f.source()), structural_contractibility(f.target())) {
        return Ok(Verdict::Certified(Certificate::BothContractible(Box::new(a), Box::new(b))));
    }
    // Skeleta are equivalent to the originals, so `r_D ∘ F ∘ i_C` has the
    // same homotopy type as `F` and smaller chain complexes.
    let ss = skeleton(f.source());
    let st = skeleton(f.target());
    let g = ss.inclusion.then(f)?.then(&st.retraction)?;
    let source = CategoryChains::new(&ss.category, t, limits)?;
    let target = CategoryChains::new(&st.category, t, limits)?;
    let map = functor_chain_map(&g, &source, &target);
    Ok(match compare_complexes(&source.complex, &target.complex, &map) {
        Some(d) => Verdict::Refuted(d),
        None => Verdict::Consistent { checked_through: t.saturating_sub(1) },
    })
}

/// Evidence for a simplicial map, using homology through one degree below
/// the common truncation.
pub fn simplicial_map_evidence(f: &SimplicialMap) -> Verdict {
    if f.is_isomorphism() {
        return Verdict::Certified(Certificate::Isomorphism);
    }
    let source = normalized_chains(&f.source);
    let target = normalized_chains(&f.target);
    let map = normalized_chain_map(f, &source, &target);
    match compare_complexes(&source.complex, &target.complex, &map) {
        Some(d) => Verdict::Refuted(d),
        None => Verdict::Consistent { checked_through: f.source.dim().saturating_sub(1) },
    }
}

/// A terminal or initial object, or a full subcategory with one whose
/// inclusion has an adjoint (adjoint chains of depth 2).
fn structural_contractibility(c: &Arc<FinCategory>) -> Option<Certificate> {
    if let Some(x) = c.terminal_objects().next() {
        return Some(Certificate::TerminalObject(c.obj_name(x).to_string()));
    }
    if let Some(x) = c.initial_objects().next() {
        return Some(Certificate::InitialObject(c.obj_name(x).to_string()));
    }
    for top in c.objects() {
        for below in [true, false] {
            let members: Vec<ObjId> = c
                .objects()
                .filter(|&x| if below { !c.hom(x, top).is_empty() } else { !c.hom(top, x).is_empty() })
                .collect();
            if members.len() == c.object_count() || members.len() < 2 {
                continue;
            }
            let (sub, inclusion) = full_subcategory(c, &members);
            let inner = if below {
                sub.terminal_objects().next().map(|x| Certificate::TerminalObject(sub.obj_name(x).to_string()))
            } else {
                sub.initial_objects().next().map(|x| Certificate::InitialObject(sub.obj_name(x).to_string()))
            };
            let Some(inner) = inner else { continue };
            let step = if find_right_adjoint(&inclusion).is_some() {
                Certificate::RightAdjoint
            } else if find_left_adjoint(&inclusion).is_some() {
                Certificate::LeftAdjoint
            } else {
                continue;
            };
            return Some(Certificate::Composite(vec![step, inner]));
        }
    }
    None
}

/// Evidence that `N(C)` is weakly contractible.
pub fn is_weakly_contractible(c: &Arc<FinCategory>, t: usize, limits: &Limits) -> Result<Verdict> {
    if let Some(cert) = structural_contractibility(c) {
        return Ok(Verdict::Certified(cert));
    }
    let k = component_count(c);
    if k != 1 {
        return Ok(Verdict::Refuted(Discrepancy::Components { source: k, target: 1 }));
    }
    let s = skeleton(c);
    let chains = CategoryChains::new(&s.category, t, limits)?;
    Ok(reduced_homology_verdict(&chains.homology().groups, t))
}

/// Evidence that a simplicial set is weakly contractible.
pub fn is_weakly_contractible_sset(x: &SimplicialSet) -> Verdict {
    let groups = normalized_chains(x).complex.homology().groups;
    if groups[0].rank != 1 {
        return Verdict::Refuted(Discrepancy::Components { source: groups[0].rank, target: 1 });
    }
    reduced_homology_verdict(&groups, x.dim())
}

fn reduced_homology_verdict(groups: &[HomologyGroup], t: usize) -> Verdict {
    for (n, g) in groups.iter().enumerate() {
        let expected = if n == 0 { HomologyGroup::free(1) } else { HomologyGroup::zero() };
        if *g != expected {
            return Verdict::Refuted(Discrepancy::Homology { degree: n, source: g.clone(), target: expected });
        }
    }
    Verdict::Consistent { checked_through: t.saturating_sub(1) }
}

/// Evidence that every comma category `d ↓ F` is weakly contractible.
/// The first refuted target object, in id order, is reported.
pub fn is_homotopy_cofinal(f: &Functor, t: usize, limits: &Limits) -> Result<Verdict> {
    let mut consistent = false;
    for d in f.target().objects() {
        let comma = comma_under(f, d, limits)?;
        match is_weakly_contractible(&comma.category, t, limits)? {
            Verdict::Refuted(inner) => {
                return Ok(Verdict::Refuted(Discrepancy::Comma {
                    object: f.target().obj_name(d).to_string(),
                    inner: Box::new(inner),
                }))
            }
            Verdict::Consistent { .. } => consistent = true,
            Verdict::Certified(_) => {}
        }
    }
    Ok(if consistent {
        Verdict::Consistent { checked_through: t.saturating_sub(1) }
    } else {
        Verdict::Certified(Certificate::AllCommas)
    })
}
