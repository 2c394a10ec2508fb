use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Limits, Result};
use crate::fincat::{category_of_elements, CatDiagram, FinCategory, Functor, MorId, ObjId, OplaxColimit, SetDiagram};

/// A simplicial set truncated at dimension `T`, with every simplex (degenerate
/// or not) stored and all face and degeneracy operators tabulated.
///
/// `faces[n][s * (n + 1) + i] = d_i(s)` for `1 <= n <= T`;
/// `degens[n][s * (n + 1) + i] = s_i(s)` for `n < T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    sizes: Vec<usize>,
    faces: Vec<Vec<u32>>,
    degens: Vec<Vec<u32>>,
}

impl SimplicialSet {
    /// Checks table sizes, ranges and every simplicial identity.
    pub fn new(sizes: Vec<usize>, faces: Vec<Vec<u32>>, degens: Vec<Vec<u32>>) -> Result<Self> {
        let s = SimplicialSet { sizes, faces, degens };
        s.check()?;
        Ok(s)
    }

    pub(crate) fn new_unchecked(sizes: Vec<usize>, faces: Vec<Vec<u32>>, degens: Vec<Vec<u32>>) -> Self {
        let s = SimplicialSet { sizes, faces, degens };
        debug_assert!(s.check().is_ok(), "{:?}", s.check());
        s
    }

    /// The constant simplicial set on `n` points.
    pub fn discrete(n: usize, dim: usize) -> Self {
        let sizes = vec![n; dim + 1];
        let faces = (0..=dim).map(|k| if k == 0 { Vec::new() } else { (0..n as u32).flat_map(|s| core::iter::repeat_n(s, k + 1)).collect() }).collect();
        let degens = (0..dim).map(|k| (0..n as u32).flat_map(|s| core::iter::repeat_n(s, k + 1)).collect()).collect();
        SimplicialSet { sizes, faces, degens }
    }

    pub fn point(dim: usize) -> Self {
        Self::discrete(1, dim)
    }

    pub fn dim(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.sizes[n]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    #[inline]
    pub fn face(&self, n: usize, s: u32, i: usize) -> u32 {
        self.faces[n][s as usize * (n + 1) + i]
    }

    #[inline]
    pub fn degeneracy(&self, n: usize, s: u32, i: usize) -> u32 {
        self.degens[n][s as usize * (n + 1) + i]
    }

    /// `s` is degenerate iff `s = s_i d_i s` for some `i`.
    pub fn is_degenerate(&self, n: usize, s: u32) -> bool {
        n > 0 && (0..n).any(|i| self.degeneracy(n - 1, self.face(n, s, i), i) == s)
    }

    pub fn nondegenerate(&self, n: usize) -> impl Iterator<Item = u32> + '_ {
        (0..self.sizes[n] as u32).filter(move |&s| !self.is_degenerate(n, s))
    }

    /// The same simplicial set cut down to dimension `dim`.
    pub fn truncate(&self, dim: usize) -> SimplicialSet {
        assert!(dim <= self.dim());
        SimplicialSet {
            sizes: self.sizes[..=dim].to_vec(),
            faces: self.faces[..=dim].to_vec(),
            degens: self.degens[..dim].to_vec(),
        }
    }

    fn check(&self) -> Result<()> {
        let bad = |why: alloc::string::String| Err(Error::Precondition(why));
        let t = self.sizes.len().checked_sub(1).ok_or_else(|| Error::Precondition("no levels".into()))?;
        if self.faces.len() != t + 1 || self.degens.len() != t {
            return bad("operator table count does not match the dimension".into());
        }
        for n in 1..=t {
            if self.faces[n].len() != self.sizes[n] * (n + 1) || self.faces[n].iter().any(|&x| x as usize >= self.sizes[n - 1]) {
                return bad(format!("face table at level {n} malformed"));
            }
        }
        for n in 0..t {
            if self.degens[n].len() != self.sizes[n] * (n + 1) || self.degens[n].iter().any(|&x| x as usize >= self.sizes[n + 1]) {
                return bad(format!("degeneracy table at level {n} malformed"));
            }
        }
        for n in 2..=t {
            for s in 0..self.sizes[n] as u32 {
                for j in 0..=n {
                    for i in 0..j {
                        if self.face(n - 1, self.face(n, s, j), i) != self.face(n - 1, self.face(n, s, i), j - 1) {
                            return bad(format!("d{i} d{j} != d{} d{i} on simplex {s} of level {n}", j - 1));
                        }
                    }
                }
            }
        }
        for n in 0..t {
            for s in 0..self.sizes[n] as u32 {
                for j in 0..=n {
                    let sj = self.degeneracy(n, s, j);
                    for i in 0..=n + 1 {
                        let lhs = self.face(n + 1, sj, i);
                        let rhs = if i < j {
                            self.degeneracy(n - 1, self.face(n, s, i), j - 1)
                        } else if i == j || i == j + 1 {
                            s
                        } else {
                            self.degeneracy(n - 1, self.face(n, s, i - 1), j)
                        };
                        if lhs != rhs {
                            return bad(format!("d{i} s{j} identity fails on simplex {s} of level {n}"));
                        }
                    }
                    if n + 1 < t {
                        for i in 0..=j {
                            if self.degeneracy(n + 1, sj, i) != self.degeneracy(n + 1, self.degeneracy(n, s, i), j + 1) {
                                return bad(format!("s{i} s{j} identity fails on simplex {s} of level {n}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Levelwise maps commuting with all stored faces and degeneracies.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub source: Arc<SimplicialSet>,
    pub target: Arc<SimplicialSet>,
    pub maps: Vec<Vec<u32>>,
}

impl SimplicialMap {
    pub fn new(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, maps: Vec<Vec<u32>>) -> Result<Self> {
        let f = SimplicialMap { source, target, maps };
        f.check()?;
        Ok(f)
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let maps = x.sizes.iter().map(|&n| (0..n as u32).collect()).collect();
        SimplicialMap { source: x.clone(), target: x, maps }
    }

    fn check(&self) -> Result<()> {
        let (x, y) = (&*self.source, &*self.target);
        let bad = |why: alloc::string::String| Err(Error::NotASimplicialMap(why));
        if x.dim() != y.dim() || self.maps.len() != x.dim() + 1 {
            return bad("dimensions differ".into());
        }
        for n in 0..=x.dim() {
            if self.maps[n].len() != x.size(n) || self.maps[n].iter().any(|&v| v as usize >= y.size(n)) {
                return bad(format!("level {n} map malformed"));
            }
        }
        for n in 0..=x.dim() {
            for s in 0..x.size(n) as u32 {
                let fs = self.maps[n][s as usize];
                if n > 0 {
                    for i in 0..=n {
                        if self.maps[n - 1][x.face(n, s, i) as usize] != y.face(n, fs, i) {
                            return bad(format!("d{i} not preserved on simplex {s} of level {n}"));
                        }
                    }
                }
                if n < x.dim() {
                    for i in 0..=n {
                        if self.maps[n + 1][x.degeneracy(n, s, i) as usize] != y.degeneracy(n, fs, i) {
                            return bad(format!("s{i} not preserved on simplex {s} of level {n}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_isomorphism(&self) -> bool {
        (0..=self.source.dim()).all(|n| {
            let mut seen = vec![false; self.target.size(n)];
            self.source.size(n) == self.target.size(n) && self.maps[n].iter().all(|&v| !core::mem::replace(&mut seen[v as usize], true))
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> SimplicialMap {
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(n, m)| m.iter().map(|&v| other.maps[n][v as usize]).collect())
            .collect();
        SimplicialMap { source: self.source.clone(), target: other.target.clone(), maps }
    }
}

/// The nerve of a finite category with the chain behind every simplex.
///
/// An `n`-simplex (`n >= 1`) is a chain `f₁, …, fₙ` with `cod fᵢ = dom fᵢ₊₁`.
/// Simplices of level `n` are numbered so that the extensions of a chain by
/// one more morphism are contiguous, in the order of `out(cod fₙ)`.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub sset: Arc<SimplicialSet>,
    category: Arc<FinCategory>,
    /// `start[n][s]`: first `(n+1)`-simplex extending simplex `s` of level `n`.
    start: Vec<Vec<u32>>,
    /// `prefix[n][s]` and `last[n][s]` for `n >= 1`.
    prefix: Vec<Vec<u32>>,
    last: Vec<Vec<MorId>>,
}

impl Nerve {
    pub fn category(&self) -> &Arc<FinCategory> {
        &self.category
    }

    /// Final object of the chain.
    pub fn end(&self, n: usize, s: u32) -> ObjId {
        if n == 0 {
            ObjId(s)
        } else {
            self.category.cod(self.last[n][s as usize])
        }
    }

    /// Initial object of the chain.
    pub fn start_object(&self, n: usize, s: u32) -> ObjId {
        let mut s = s;
        let mut n = n;
        while n > 0 {
            s = self.prefix[n][s as usize];
            n -= 1;
        }
        ObjId(s)
    }

    pub fn chain(&self, n: usize, s: u32) -> Vec<MorId> {
        let mut out = vec![MorId(0); n];
        let mut s = s;
        for k in (1..=n).rev() {
            out[k - 1] = self.last[k][s as usize];
            s = self.prefix[k][s as usize];
        }
        out
    }

    /// Index of a chain of length `n >= 1`.
    pub fn index_of(&self, chain: &[MorId]) -> u32 {
        let c = &self.category;
        let mut s = c.dom(chain[0]).0;
        for (k, &f) in chain.iter().enumerate() {
            s = self.start[k][s as usize] + c.out_position(f) as u32;
        }
        s
    }

    pub fn object_index(&self, x: ObjId) -> u32 {
        x.0
    }
}

/// `N(C)` truncated at `dim`.
pub fn nerve(c: &Arc<FinCategory>, dim: usize, limits: &Limits) -> Result<Nerve> {
    let mut sizes = vec![c.object_count()];
    let mut start: Vec<Vec<u32>> = Vec::new();
    let mut prefix: Vec<Vec<u32>> = vec![Vec::new()];
    let mut last: Vec<Vec<MorId>> = vec![Vec::new()];
    let mut total = sizes[0];
    for n in 1..=dim {
        let mut st = Vec::with_capacity(sizes[n - 1]);
        let mut pre = Vec::new();
        let mut la = Vec::new();
        for s in 0..sizes[n - 1] as u32 {
            st.push(pre.len() as u32);
            let end = if n == 1 { ObjId(s) } else { c.cod(last[n - 1][s as usize]) };
            for &f in c.out(end) {
                pre.push(s);
                la.push(f);
            }
        }
        total += pre.len();
        if total > limits.max_simplices {
            return Err(Error::SizeCapExceeded { what: "nerve", limit: limits.max_simplices });
        }
        sizes.push(pre.len());
        start.push(st);
        prefix.push(pre);
        last.push(la);
    }
    let mut nerve = Nerve {
        sset: Arc::new(SimplicialSet { sizes: Vec::new(), faces: Vec::new(), degens: Vec::new() }),
        category: c.clone(),
        start,
        prefix,
        last,
    };
    let mut faces = vec![Vec::new()];
    let mut degens = Vec::new();
    for n in 1..=dim {
        let mut table = Vec::with_capacity(sizes[n] * (n + 1));
        for s in 0..sizes[n] as u32 {
            let chain = nerve.chain(n, s);
            for i in 0..=n {
                table.push(face_of_chain(&nerve, &chain, i));
            }
        }
        faces.push(table);
    }
    for n in 0..dim {
        let mut table = Vec::with_capacity(sizes[n] * (n + 1));
        for s in 0..sizes[n] as u32 {
            if n == 0 {
                table.push(nerve.index_of(&[c.id(ObjId(s))]));
                continue;
            }
            let chain = nerve.chain(n, s);
            for i in 0..=n {
                let mut longer = chain.clone();
                // s_i inserts the identity at the i-th object.
                let obj = if i == 0 { c.dom(chain[0]) } else { c.cod(chain[i - 1]) };
                longer.insert(i, c.id(obj));
                table.push(nerve.index_of(&longer));
            }
        }
        degens.push(table);
    }
    nerve.sset = Arc::new(SimplicialSet::new_unchecked(sizes, faces, degens));
    Ok(nerve)
}

fn face_of_chain(nerve: &Nerve, chain: &[MorId], i: usize) -> u32 {
    let c = &nerve.category;
    let n = chain.len();
    if n == 1 {
        return if i == 0 { c.cod(chain[0]).0 } else { c.dom(chain[0]).0 };
    }
    let mut shorter: Vec<MorId> = Vec::with_capacity(n - 1);
    if i == 0 {
        shorter.extend_from_slice(&chain[1..]);
    } else if i == n {
        shorter.extend_from_slice(&chain[..n - 1]);
    } else {
        shorter.extend_from_slice(&chain[..i - 1]);
        shorter.push(c.compose(chain[i], chain[i - 1]));
        shorter.extend_from_slice(&chain[i + 1..]);
    }
    nerve.index_of(&shorter)
}

/// `N(F)` between nerves of the same dimension.
pub fn nerve_map(f: &Functor, source: &Nerve, target: &Nerve) -> SimplicialMap {
    let dim = source.sset.dim();
    let mut levels = Vec::with_capacity(dim + 1);
    levels.push((0..source.sset.size(0) as u32).map(|s| f.obj(ObjId(s)).0).collect::<Vec<u32>>());
    for n in 1..=dim {
        levels.push(
            (0..source.sset.size(n) as u32)
                .map(|s| {
                    let chain: Vec<MorId> = source.chain(n, s).iter().map(|&g| f.mor(g)).collect();
                    target.index_of(&chain)
                })
                .collect(),
        );
    }
    SimplicialMap { source: source.sset.clone(), target: target.sset.clone(), maps: levels }
}

/// A contravariant diagram of simplicial sets: `X(f): X(c) -> X(c')` for every
/// `f: c' -> c`.
#[derive(Clone, Debug)]
pub struct SSetDiagram {
    index: Arc<FinCategory>,
    values: Vec<Arc<SimplicialSet>>,
    maps: Vec<SimplicialMap>,
}

impl SSetDiagram {
    pub fn new(index: Arc<FinCategory>, values: Vec<Arc<SimplicialSet>>, maps: Vec<SimplicialMap>) -> Result<Self> {
        if values.len() != index.object_count() || maps.len() != index.morphism_count() {
            return Err(Error::NotAFunctor("diagram sizes do not match the index category".into()));
        }
        for f in index.morphisms() {
            let m = &maps[f.idx()];
            if *m.source != *values[index.cod(f).idx()] || *m.target != *values[index.dom(f).idx()] {
                return Err(Error::NotAFunctor(format!("X({}) has the wrong endpoints", index.mor_name(f))));
            }
            if index.is_identity(f) && m.maps.iter().any(|l| l.iter().enumerate().any(|(i, &v)| v as usize != i)) {
                return Err(Error::NotAFunctor(format!("X({}) is not an identity", index.mor_name(f))));
            }
        }
        for (g, f, gf) in index.composition_triples() {
            if maps[g.idx()].then(&maps[f.idx()]).maps != maps[gf.idx()].maps {
                return Err(Error::NotAFunctor(format!(
                    "X({} o {}) differs from X({}) o X({})",
                    index.mor_name(g),
                    index.mor_name(f),
                    index.mor_name(f),
                    index.mor_name(g)
                )));
            }
        }
        Ok(SSetDiagram { index, values, maps })
    }

    pub fn index(&self) -> &Arc<FinCategory> {
        &self.index
    }

    pub fn value(&self, c: ObjId) -> &Arc<SimplicialSet> {
        &self.values[c.idx()]
    }

    pub fn map(&self, f: MorId) -> &SimplicialMap {
        &self.maps[f.idx()]
    }

    /// Every value viewed as a constant (discrete) simplicial set.
    pub fn from_sets(x: &SetDiagram, dim: usize) -> Self {
        let c = x.index().clone();
        let values: Vec<Arc<SimplicialSet>> = c.objects().map(|a| Arc::new(SimplicialSet::discrete(x.size(a), dim))).collect();
        let maps = c
            .morphisms()
            .map(|f| {
                let table: Vec<u32> = (0..x.size(c.cod(f)) as u32).map(|v| x.apply(f, v)).collect();
                SimplicialMap {
                    source: values[c.cod(f).idx()].clone(),
                    target: values[c.dom(f).idx()].clone(),
                    maps: vec![table; dim + 1],
                }
            })
            .collect();
        SSetDiagram { index: c, values, maps }
    }

    /// `N ∘ X` for a Cat-valued diagram.
    pub fn nerve_of(x: &CatDiagram, dim: usize, limits: &Limits) -> Result<(Self, Vec<Nerve>)> {
        let c = x.index().clone();
        let nerves: Vec<Nerve> = c.objects().map(|a| nerve(x.value(a), dim, limits)).collect::<Result<_>>()?;
        let maps = c
            .morphisms()
            .map(|f| nerve_map(x.functor(f), &nerves[c.cod(f).idx()], &nerves[c.dom(f).idx()]))
            .collect();
        let values = nerves.iter().map(|n| n.sset.clone()).collect();
        Ok((SSetDiagram { index: c, values, maps }, nerves))
    }
}

/// The Bousfield–Kan homotopy colimit of a contravariant diagram: the diagonal
/// of the bar construction, with simplices `(c₀ -> … -> cₙ, x ∈ X(cₙ)ₙ)`.
#[derive(Clone, Debug)]
pub struct HomotopyColimit {
    pub sset: Arc<SimplicialSet>,
    pub base: Nerve,
    /// `offset[n][σ]`: first simplex over the chain `σ`.
    offset: Vec<Vec<u32>>,
}

impl HomotopyColimit {
    pub fn index_of(&self, n: usize, chain: u32, x: u32) -> u32 {
        self.offset[n][chain as usize] + x
    }

    /// `(chain, x)` of a simplex.
    pub fn decompose(&self, n: usize, s: u32) -> (u32, u32) {
        let offsets = &self.offset[n];
        let chain = offsets.partition_point(|&o| o <= s) - 1;
        (chain as u32, s - offsets[chain])
    }
}

pub fn homotopy_colimit(x: &SSetDiagram, dim: usize, limits: &Limits) -> Result<HomotopyColimit> {
    let c = &x.index;
    if x.values.iter().any(|v| v.dim() < dim) {
        return Err(Error::Precondition("diagram values are truncated below the requested dimension".into()));
    }
    let base = nerve(c, dim, limits)?;
    let bn = base.sset.clone();
    let mut offset = Vec::with_capacity(dim + 1);
    let mut sizes = Vec::with_capacity(dim + 1);
    let mut total = 0usize;
    for n in 0..=dim {
        let mut off = Vec::with_capacity(bn.size(n));
        let mut acc = 0u32;
        for s in 0..bn.size(n) as u32 {
            off.push(acc);
            acc += x.values[base.end(n, s).idx()].size(n) as u32;
        }
        total += acc as usize;
        if total > limits.max_simplices {
            return Err(Error::SizeCapExceeded { what: "homotopy colimit", limit: limits.max_simplices });
        }
        offset.push(off);
        sizes.push(acc as usize);
    }
    let hocolim = HomotopyColimit { sset: Arc::new(SimplicialSet::point(0)), base, offset };
    let base = &hocolim.base;
    let mut faces = vec![Vec::new()];
    for n in 1..=dim {
        let mut table = Vec::with_capacity(sizes[n] * (n + 1));
        for sigma in 0..bn.size(n) as u32 {
            let cn = base.end(n, sigma);
            let xn = &x.values[cn.idx()];
            let last = base.chain(n, sigma)[n - 1];
            for v in 0..xn.size(n) as u32 {
                for i in 0..n {
                    table.push(hocolim.index_of(n - 1, bn.face(n, sigma, i), xn.face(n, v, i)));
                }
                // d_n drops cₙ and transports x along X(fₙ).
                let moved = x.maps[last.idx()].maps[n - 1][xn.face(n, v, n) as usize];
                table.push(hocolim.index_of(n - 1, bn.face(n, sigma, n), moved));
            }
        }
        faces.push(table);
    }
    let mut degens = Vec::new();
    for n in 0..dim {
        let mut table = Vec::with_capacity(sizes[n] * (n + 1));
        for sigma in 0..bn.size(n) as u32 {
            let xn = &x.values[base.end(n, sigma).idx()];
            for v in 0..xn.size(n) as u32 {
                for i in 0..=n {
                    table.push(hocolim.index_of(n + 1, bn.degeneracy(n, sigma, i), xn.degeneracy(n, v, i)));
                }
            }
        }
        degens.push(table);
    }
    let sset = SimplicialSet::new_unchecked(sizes, faces, degens);
    Ok(HomotopyColimit { sset: Arc::new(sset), ..hocolim })
}

/// The comparison `hocolim(N ∘ X) -> N(oplax colim X)`.
///
/// A simplex `(c₀ -> … -> cₙ, x₀ -> … -> xₙ in X(cₙ))` goes to the chain whose
/// `i`-th object is `⟨cᵢ, X(cᵢ -> cₙ)(xᵢ)⟩`; the `i`-th arrow is the pair of
/// `cᵢ₋₁ -> cᵢ` and `X(cᵢ₋₁ -> cₙ)(xᵢ₋₁ -> xᵢ)`.
pub fn thomason_comparison(x: &CatDiagram, dim: usize, limits: &Limits) -> Result<ThomasonComparison> {
    let (sd, nerves) = SSetDiagram::nerve_of(x, dim, limits)?;
    let hocolim = homotopy_colimit(&sd, dim, limits)?;
    let oplax = crate::fincat::oplax_colimit(x, limits)?;
    let target = nerve(&oplax.category, dim, limits)?;
    let c = x.index();
    let base = &hocolim.base;
    let mut maps: Vec<Vec<u32>> = Vec::with_capacity(dim + 1);
    let mut pairs: crate::HashMap<(MorId, MorId, ObjId), MorId> = crate::HashMap::default();
    for (k, &(f, g)) in oplax.morphisms.iter().enumerate() {
        pairs.insert((f, g, oplax.category.cod(MorId(k as u32))), MorId(k as u32));
    }
    let obj_index = |o: &OplaxColimit, a: ObjId, v: ObjId| o.find(a, v).expect("object of the oplax colimit");
    for n in 0..=dim {
        let mut level = Vec::with_capacity(hocolim.sset.size(n));
        for sigma in 0..base.sset.size(n) as u32 {
            let cn = base.end(n, sigma);
            let inner = &nerves[cn.idx()];
            let xc = x.value(cn);
            let chain = base.chain(n, sigma);
            // g_i = c_i -> c_n for each i.
            let mut to_end = vec![c.id(cn); n + 1];
            for i in (0..n).rev() {
                to_end[i] = c.compose(to_end[i + 1], chain[i]);
            }
            for v in 0..inner.sset.size(n) as u32 {
                if n == 0 {
                    level.push(obj_index(&oplax, cn, ObjId(v)).0);
                    continue;
                }
                let xs = inner.chain(n, v);
                let objs: Vec<ObjId> = (0..=n)
                    .map(|i| {
                        let xi = if i == 0 { xc.dom(xs[0]) } else { xc.cod(xs[i - 1]) };
                        let ci = if i == 0 { c.dom(chain[0]) } else { c.cod(chain[i - 1]) };
                        obj_index(&oplax, ci, x.functor(to_end[i]).obj(xi))
                    })
                    .collect();
                let arrows: Vec<MorId> = (1..=n)
                    .map(|i| {
                        let g = x.functor(to_end[i - 1]).mor(xs[i - 1]);
                        pairs[&(chain[i - 1], g, objs[i])]
                    })
                    .collect();
                level.push(target.index_of(&arrows));
            }
        }
        maps.push(level);
    }
    let map = SimplicialMap::new(hocolim.sset.clone(), target.sset.clone(), maps)?;
    Ok(ThomasonComparison { hocolim, oplax, target, map })
}

#[derive(Clone, Debug)]
pub struct ThomasonComparison {
    pub hocolim: HomotopyColimit,
    pub oplax: OplaxColimit,
    pub target: Nerve,
    pub map: SimplicialMap,
}

/// The isomorphism `hocolim X -> N(el X)` for a Set-valued diagram: a simplex
/// `(c₀ -> … -> cₙ, x ∈ X(cₙ))` goes to the chain through the elements
/// `(cᵢ, X(cᵢ -> cₙ)(x))`.
pub fn elements_comparison(x: &SetDiagram, dim: usize, limits: &Limits) -> Result<ElementsComparison> {
    let hocolim = homotopy_colimit(&SSetDiagram::from_sets(x, dim), dim, limits)?;
    let (elements, projection, objects) = category_of_elements(x, limits)?;
    let target = nerve(&elements, dim, limits)?;
    let c = x.index();
    let mut object_of: crate::HashMap<(ObjId, u32), ObjId> = crate::HashMap::default();
    for (k, &o) in objects.iter().enumerate() {
        object_of.insert(o, ObjId(k as u32));
    }
    let mut arrow_of: crate::HashMap<(MorId, ObjId), MorId> = crate::HashMap::default();
    for m in elements.morphisms() {
        arrow_of.insert((projection.mor(m), elements.cod(m)), m);
    }
    let base = &hocolim.base;
    let mut maps = Vec::with_capacity(dim + 1);
    for n in 0..=dim {
        let mut level = Vec::with_capacity(hocolim.sset.size(n));
        for sigma in 0..base.sset.size(n) as u32 {
            let cn = base.end(n, sigma);
            let chain = base.chain(n, sigma);
            for v in 0..x.size(cn) as u32 {
                if n == 0 {
                    level.push(object_of[&(cn, v)].0);
                    continue;
                }
                // Walk back from cₙ, transporting the element along each arrow.
                let mut arrows = vec![MorId(0); n];
                let mut here = v;
                for i in (0..n).rev() {
                    let f = chain[i];
                    arrows[i] = arrow_of[&(f, object_of[&(c.cod(f), here)])];
                    here = x.apply(f, here);
                }
                level.push(target.index_of(&arrows));
            }
        }
        maps.push(level);
    }
    let map = SimplicialMap::new(hocolim.sset.clone(), target.sset.clone(), maps)?;
    Ok(ElementsComparison { hocolim, elements, target, map })
}

#[derive(Clone, Debug)]
pub struct ElementsComparison {
    pub hocolim: HomotopyColimit,
    pub elements: Arc<FinCategory>,
    pub target: Nerve,
    pub map: SimplicialMap,
}
