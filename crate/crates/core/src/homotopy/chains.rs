use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::snf::{invariant_factors, SparseMatrix};
use super::simplicial::{SimplicialMap, SimplicialSet};
use crate::error::{Error, Limits, Result};
use crate::fincat::{FinCategory, Functor, MorId, ObjId};

/// A bounded chain complex of free abelian groups `C₀ … C_T` with boundaries
/// `∂ₙ: Cₙ -> Cₙ₋₁` stored as `rank Cₙ₋₁ x rank Cₙ` matrices.
#[derive(Clone, Debug, Default)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    /// `boundaries[n]` is `∂ₙ` for `n >= 1`; `boundaries[0]` is empty.
    pub boundaries: Vec<SparseMatrix>,
}

/// A chain map given by its matrices `fₙ: Cₙ -> C'ₙ`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub levels: Vec<SparseMatrix>,
}

/// `ℤ^rank ⊕ ⊕ ℤ/tᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<alloc::string::String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(alloc::format!("Z/{t}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

/// `Hₙ` for `n = 0 … T-1` of a complex with top degree `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl ChainComplex {
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    /// `Hₙ` for `n < T`.
    pub fn homology(&self) -> HomologyProfile {
        let t = self.top();
        let factors: Vec<Vec<BigUint>> = (0..=t).map(|n| if n == 0 { Vec::new() } else { invariant_factors(&self.boundaries[n]) }).collect();
        let groups = (0..t)
            .map(|n| {
                let rank_out = factors[n].len();
                let incoming = &factors[n + 1];
                HomologyGroup {
                    rank: self.ranks[n] - rank_out - incoming.len(),
                    torsion: incoming.iter().filter(|d| !d.is_one()).cloned().collect(),
                }
            })
            .collect();
        HomologyProfile { groups }
    }

    /// The mapping cone of `f: self -> other`, truncated at the same top
    /// degree: `cone_n = C_{n-1} ⊕ C'_n`, `∂(x, y) = (-∂x, f x + ∂y)`.
    pub fn cone(&self, other: &ChainComplex, f: &ChainMap) -> ChainComplex {
        let t = self.top();
        let ranks: Vec<usize> = (0..=t).map(|n| if n == 0 { other.ranks[0] } else { self.ranks[n - 1] + other.ranks[n] }).collect();
        let mut boundaries = vec![SparseMatrix::default()];
        for n in 1..=t {
            // Rows: C_{n-2} ⊕ C'_{n-1}; columns: C_{n-1} ⊕ C'_n.
            let (shift_r, shift_c) = (if n >= 2 { self.ranks[n - 2] } else { 0 }, self.ranks[n - 1]);
            let mut m = SparseMatrix::zero(ranks[n - 1], ranks[n]);
            if n >= 2 {
                for (r, row) in self.boundaries[n - 1].entries.iter().enumerate() {
                    for &(c, v) in row {
                        m.push(r, c as usize, -v);
                    }
                }
            }
            for (r, row) in f.levels[n - 1].entries.iter().enumerate() {
                for &(c, v) in row {
                    m.push(shift_r + r, c as usize, v);
                }
            }
            for (r, row) in other.boundaries[n].entries.iter().enumerate() {
                for &(c, v) in row {
                    m.push(shift_r + r, shift_c + c as usize, v);
                }
            }
            m.normalize();
            boundaries.push(m);
        }
        ChainComplex { ranks, boundaries }
    }
}

/// The normalized chain complex: free on nondegenerate simplices, with
/// degenerate faces dropped.
#[derive(Clone, Debug)]
pub struct NormalizedChains {
    pub complex: ChainComplex,
    /// Position of each simplex among the nondegenerate ones, if it is one.
    pub position: Vec<Vec<Option<u32>>>,
}

pub fn normalized_chains(x: &SimplicialSet) -> NormalizedChains {
    let t = x.dim();
    let position: Vec<Vec<Option<u32>>> = (0..=t)
        .map(|n| {
            let mut next = 0u32;
            (0..x.size(n) as u32)
                .map(|s| {
                    (!x.is_degenerate(n, s)).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let ranks: Vec<usize> = position.iter().map(|p| p.iter().flatten().count()).collect();
    let mut boundaries = vec![SparseMatrix::default()];
    for n in 1..=t {
        let mut m = SparseMatrix::zero(ranks[n - 1], ranks[n]);
        for s in 0..x.size(n) as u32 {
            let Some(col) = position[n][s as usize] else { continue };
            for i in 0..=n {
                if let Some(row) = position[n - 1][x.face(n, s, i) as usize] {
                    m.push(row as usize, col as usize, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        m.normalize();
        boundaries.push(m);
    }
    NormalizedChains { complex: ChainComplex { ranks, boundaries }, position }
}

/// The chain map induced by a simplicial map on normalized chains.
pub fn normalized_chain_map(f: &SimplicialMap, source: &NormalizedChains, target: &NormalizedChains) -> ChainMap {
    let levels = (0..source.position.len())
        .map(|n| {
            let mut m = SparseMatrix::zero(target.complex.ranks[n], source.complex.ranks[n]);
            for (s, pos) in source.position[n].iter().enumerate() {
                if let (Some(col), Some(row)) = (pos, target.position[n][f.maps[n][s] as usize]) {
                    m.push(row as usize, *col as usize, 1);
                }
            }
            m.normalize();
            m
        })
        .collect();
    ChainMap { levels }
}

pub fn homology(x: &SimplicialSet) -> HomologyProfile {
    normalized_chains(x).complex.homology()
}

/// The normalized chain complex of `N(C)` built directly from chains of
/// non-identity morphisms, without materializing degenerate simplices.
#[derive(Clone, Debug)]
pub struct CategoryChains {
    pub complex: ChainComplex,
    category: Arc<FinCategory>,
    /// Position of each non-identity morphism among the non-identities out
    /// of its domain.
    out_pos: Vec<u32>,
    /// Trie over chains, as for nerves.
    start: Vec<Vec<u32>>,
    last: Vec<Vec<MorId>>,
    prefix: Vec<Vec<u32>>,
}

impl CategoryChains {
    pub fn new(c: &Arc<FinCategory>, dim: usize, limits: &Limits) -> Result<Self> {
        let out: Vec<Vec<MorId>> = c.objects().map(|x| c.out(x).iter().copied().filter(|&f| !c.is_identity(f)).collect()).collect();
        let mut out_pos = vec![u32::MAX; c.morphism_count()];
        for list in &out {
            for (i, f) in list.iter().enumerate() {
                out_pos[f.idx()] = i as u32;
            }
        }
        let mut ranks = vec![c.object_count()];
        let mut start = Vec::new();
        let mut last = vec![Vec::new()];
        let mut prefix = vec![Vec::new()];
        let mut total = ranks[0];
        for n in 1..=dim {
            let mut st = Vec::with_capacity(ranks[n - 1]);
            let mut la = Vec::new();
            let mut pre = Vec::new();
            for s in 0..ranks[n - 1] as u32 {
                st.push(la.len() as u32);
                let end = if n == 1 { ObjId(s) } else { c.cod(last[n - 1][s as usize]) };
                for &f in &out[end.idx()] {
                    la.push(f);
                    pre.push(s);
                }
            }
            total += la.len();
            if total > limits.max_simplices {
                return Err(Error::SizeCapExceeded { what: "chain complex", limit: limits.max_simplices });
            }
            ranks.push(la.len());
            start.push(st);
            last.push(la);
            prefix.push(pre);
        }
        let mut chains = CategoryChains {
            complex: ChainComplex { ranks: ranks.clone(), boundaries: vec![SparseMatrix::default()] },
            category: c.clone(),
            out_pos,
            start,
            last,
            prefix,
        };
        let mut buf = Vec::new();
        let mut shorter = Vec::new();
        for n in 1..=dim {
            let mut m = SparseMatrix::zero(ranks[n - 1], ranks[n]);
            for s in 0..ranks[n] as u32 {
                chains.chain_into(n, s, &mut buf);
                for i in 0..=n {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    if n == 1 {
                        let obj = if i == 0 { c.cod(buf[0]) } else { c.dom(buf[0]) };
                        m.push(obj.idx(), s as usize, sign);
                        continue;
                    }
                    shorter.clear();
                    if i == 0 {
                        shorter.extend_from_slice(&buf[1..]);
                    } else if i == n {
                        shorter.extend_from_slice(&buf[..n - 1]);
                    } else {
                        let composite = c.compose(buf[i], buf[i - 1]);
                        if c.is_identity(composite) {
                            continue;
                        }
                        shorter.extend_from_slice(&buf[..i - 1]);
                        shorter.push(composite);
                        shorter.extend_from_slice(&buf[i + 1..]);
                    }
                    m.push(chains.index_of(&shorter) as usize, s as usize, sign);
                }
            }
            m.normalize();
            chains.complex.boundaries.push(m);
        }
        Ok(chains)
    }

    fn chain_into(&self, n: usize, s: u32, buf: &mut Vec<MorId>) {
        buf.clear();
        buf.resize(n, MorId(0));
        let mut s = s;
        for k in (1..=n).rev() {
            buf[k - 1] = self.last[k][s as usize];
            s = self.prefix[k][s as usize];
        }
    }

    /// Index of a chain of non-identity morphisms.
    pub fn index_of(&self, chain: &[MorId]) -> u32 {
        let c = &self.category;
        let mut s = c.dom(chain[0]).0;
        for (k, &f) in chain.iter().enumerate() {
            s = self.start[k][s as usize] + self.out_pos[f.idx()];
        }
        s
    }

    pub fn homology(&self) -> HomologyProfile {
        self.complex.homology()
    }
}

/// The chain map of `N(F)` on normalized chains; a chain goes to zero as soon
/// as one of its morphisms is sent to an identity.
pub fn functor_chain_map(f: &Functor, source: &CategoryChains, target: &CategoryChains) -> ChainMap {
    let dim = source.complex.top();
    let mut levels = Vec::with_capacity(dim + 1);
    let mut m0 = SparseMatrix::zero(target.complex.ranks[0], source.complex.ranks[0]);
    for x in source.category.objects() {
        m0.push(f.obj(x).idx(), x.idx(), 1);
    }
    m0.normalize();
    levels.push(m0);
    let mut buf = Vec::new();
    let mut image = Vec::new();
    for n in 1..=dim {
        let mut m = SparseMatrix::zero(target.complex.ranks[n], source.complex.ranks[n]);
        for s in 0..source.complex.ranks[n] as u32 {
            source.chain_into(n, s, &mut buf);
            image.clear();
            image.extend(buf.iter().map(|&g| f.mor(g)));
            if image.iter().any(|&g| target.category.is_identity(g)) {
                continue;
            }
            m.push(target.index_of(&image) as usize, s as usize, 1);
        }
        m.normalize();
        levels.push(m);
    }
    ChainMap { levels }
}
