//! Relative categories, zigzags and the homotopical calculus of right
//! fractions.
//!
//! A zigzag of type `[k₀; …; kₙ]` is stored as its list of arrows together
//! with the per-arrow direction of the type. Morphisms of a category of
//! zigzags are width-1 hammocks: ladders of vertical weak equivalences that fix
//! both ends and make every square commute.

mod fractions;
mod zigzag;

pub use fractions::{
    aggregate_fractions, check_right_fractions, evaluate_instance, fraction_instances, FractionsConfig,
    FractionsInstance, FractionsReport, InstanceKey, InstanceOutcome, Subject,
};
pub use zigzag::{
    cocycle_pushforward, insertion_functor, normalize_zigzag_type, zigzag_category, zigzag_index_category, Direction,
    Zigzag, ZigzagCategory, ZigzagType,
};

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fincat::{subcategory, FinCategory, Functor, MorId};

/// A category with a wide subcategory of weak equivalences.
#[derive(Clone, Debug)]
pub struct RelCategory {
    base: Arc<FinCategory>,
    weq: Vec<bool>,
}

impl RelCategory {
    /// Checks that `weq` contains every identity and is closed under
    /// composition.
    pub fn new(base: Arc<FinCategory>, weq: impl IntoIterator<Item = MorId>) -> Result<Self> {
        let mut flags = alloc::vec![false; base.morphism_count()];
        for f in weq {
            if f.idx() >= flags.len() {
                return Err(Error::UnknownMorphism(format!("#{}", f.0)));
            }
            flags[f.idx()] = true;
        }
        let rel = RelCategory { base, weq: flags };
        let c = &rel.base;
        if let Some(x) = c.objects().find(|&x| !rel.weq[c.id(x).idx()]) {
            return Err(Error::Precondition(format!("identity of {} is not a weak equivalence", c.obj_name(x))));
        }
        if let Some((g, f, _)) = c.composition_triples().find(|&(g, f, gf)| rel.weq[g.idx()] && rel.weq[f.idx()] && !rel.weq[gf.idx()]) {
            return Err(Error::Precondition(format!(
                "weak equivalences not closed under composition: {} o {}",
                c.mor_name(g),
                c.mor_name(f)
            )));
        }
        Ok(rel)
    }

    /// Only identities are weak equivalences.
    pub fn minimal(base: Arc<FinCategory>) -> Self {
        let ids: Vec<MorId> = base.objects().map(|x| base.id(x)).collect();
        Self::new(base, ids).expect("identities form a subcategory")
    }

    /// Every morphism is a weak equivalence.
    pub fn maximal(base: Arc<FinCategory>) -> Self {
        let weq = alloc::vec![true; base.morphism_count()];
        RelCategory { base, weq }
    }

    /// Weak equivalences are the isomorphisms.
    pub fn isomorphisms(base: Arc<FinCategory>) -> Self {
        let isos: Vec<MorId> = base.morphisms().filter(|&f| base.is_isomorphism(f)).collect();
        Self::new(base, isos).expect("isomorphisms form a subcategory")
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    #[inline]
    pub fn is_weq(&self, f: MorId) -> bool {
        self.weq[f.idx()]
    }

    pub fn weq_flags(&self) -> &[bool] {
        &self.weq
    }

    pub fn weq_morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        self.base.morphisms().filter(move |&f| self.weq[f.idx()])
    }

    /// A composable pair `(g, f)` where two of `f`, `g`, `g∘f` are weak
    /// equivalences but the third is not.
    pub fn two_out_of_three_violation(&self) -> Option<(MorId, MorId)> {
        self.base.composition_triples().find_map(|(g, f, gf)| {
            let n = [g, f, gf].iter().filter(|m| self.weq[m.idx()]).count();
            (n == 2).then_some((g, f))
        })
    }

    pub fn two_out_of_three(&self) -> bool {
        self.two_out_of_three_violation().is_none()
    }

    pub fn contains_all_isos(&self) -> bool {
        self.base.morphisms().all(|f| self.weq[f.idx()] || !self.base.is_isomorphism(f))
    }

    /// 2-out-of-3 and all isomorphisms.
    pub fn is_category_with_weak_equivalences(&self) -> bool {
        self.two_out_of_three() && self.contains_all_isos()
    }

    /// The subcategory of weak equivalences, in which every morphism is a weak
    /// equivalence, with its inclusion.
    pub fn weq_subcategory(&self) -> (RelCategory, Functor) {
        let objects: Vec<_> = self.base.objects().collect();
        let mors: Vec<MorId> = self.weq_morphisms().collect();
        let (w, inclusion) = subcategory(&self.base, &objects, &mors);
        (RelCategory::maximal(w), inclusion)
    }
}

/// A functor sending weak equivalences to weak equivalences.
#[derive(Clone, Debug)]
pub struct RelFunctor {
    functor: Functor,
}

impl RelFunctor {
    pub fn new(source: &RelCategory, target: &RelCategory, functor: Functor) -> Result<Self> {
        if let Some(f) = source.weq_morphisms().find(|&f| !target.is_weq(functor.mor(f))) {
            return Err(Error::NotAFunctor(format!("weak equivalence {} is not preserved", source.base.mor_name(f))));
        }
        Ok(RelFunctor { functor })
    }

    pub fn functor(&self) -> &Functor {
        &self.functor
    }
}

#[cfg(test)]
mod tests;
