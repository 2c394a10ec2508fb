//! Finite categories given by explicit composition tables, and the standard
//! constructions on them: functors, comma categories, strict pullbacks,
//! Grothendieck fibrations, adjoints and the oplax colimit.
//!
//! Every derived category is assembled through the same dense table
//! representation as a validated one, so the category laws of a construction
//! can always be rechecked with [`FinCategory::law_violations`].

mod adjoint;
mod category;
mod comma;
mod enumerate;
mod fibration;
mod functor;
mod grothendieck;
mod skeleton;

pub use adjoint::{find_left_adjoint, find_right_adjoint, Adjunction};
pub use category::{validate_category, CategoryParts, FinCategory, MorId, ObjId, RawCategory};
pub(crate) use category::KeyedBuilder;
pub use comma::{comma_over, comma_under, product_category, pullback_category, CommaCategory, PullbackCategory};
pub use enumerate::{enumerate_functors, find_isomorphism};
pub use fibration::{cartesian_witness, is_cartesian, is_grothendieck_fibration, strict_fibre, CartesianWitness, FibrationCheck};
pub use functor::{full_subcategory, subcategory, Functor};
pub use grothendieck::{category_of_elements, oplax_colimit, CatDiagram, OplaxColimit, SetDiagram};
pub use skeleton::{skeleton, Skeleton};

use alloc::vec::Vec;

/// `d ↓ F`, the comma category used for homotopy cofinality.
pub use comma::comma_under as comma_category;

/// Connected component label of every object (labels are `0..k`, in order of
/// first appearance).
pub fn components(c: &FinCategory) -> Vec<usize> {
    let n = c.object_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for f in c.morphisms() {
        let (a, b) = (root(&mut parent, c.dom(f).idx()), root(&mut parent, c.cod(f).idx()));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label = alloc::vec![usize::MAX; n];
    let mut next = 0;
    let mut out = Vec::with_capacity(n);
    for x in 0..n {
        let r = root(&mut parent, x);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        out.push(label[r]);
    }
    out
}

pub fn component_count(c: &FinCategory) -> usize {
    components(c).into_iter().max().map_or(0, |m| m + 1)
}

#[cfg(test)]
mod tests;
