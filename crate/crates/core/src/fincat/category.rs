use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::hash::Hash;

use crate::error::{Error, Result, Violation};
use crate::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub u32);

impl ObjId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A category description as it arrives from outside: string ids throughout,
/// nothing checked yet.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(id, dom, cod)`
    pub morphisms: Vec<(String, String, String)>,
    /// `(object, identity morphism)`
    pub identities: Vec<(String, String)>,
    /// `(g, f, g∘f)`
    pub composition: Vec<(String, String, String)>,
}

/// An explicit finite category with a total composition table.
///
/// Objects and morphisms are dense indices; their string ids are kept for
/// reporting and for lookups by name. Composition is stored per middle object
/// `b` as a dense `|in(b)| x |out(b)|` table, so `compose` is two array reads.
#[derive(Clone, Debug)]
pub struct FinCategory {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    identity: Vec<MorId>,
    is_id: Vec<bool>,
    // sorted by (cod, id) / (dom, id)
    out_mors: Vec<Vec<MorId>>,
    in_mors: Vec<Vec<MorId>>,
    out_pos: Vec<u32>,
    in_pos: Vec<u32>,
    table: Vec<Vec<MorId>>,
    obj_lookup: BTreeMap<String, ObjId>,
    mor_lookup: BTreeMap<String, MorId>,
}

/// Objects, morphisms and identities of a category whose composition is
/// supplied separately.
#[derive(Clone, Debug, Default)]
pub struct CategoryParts {
    pub obj_names: Vec<String>,
    pub mor_names: Vec<String>,
    pub dom: Vec<ObjId>,
    pub cod: Vec<ObjId>,
    pub identity: Vec<MorId>,
}

impl FinCategory {
    /// Assembles a category from its parts and a composition oracle.
    ///
    /// `compose(g, f)` is called exactly once for every composable pair. The
    /// category laws are not checked here; see [`FinCategory::law_violations`].
    pub fn assemble(
        parts: CategoryParts,
        mut compose: impl FnMut(MorId, MorId) -> Option<MorId>,
    ) -> core::result::Result<FinCategory, Violation> {
        let CategoryParts { obj_names, mor_names, dom, cod, identity } = parts;
        let n = obj_names.len();
        let m = mor_names.len();
        debug_assert_eq!(dom.len(), m);
        debug_assert_eq!(cod.len(), m);
        debug_assert_eq!(identity.len(), n);

        let mut out_mors: Vec<Vec<MorId>> = vec![Vec::new(); n];
        let mut in_mors: Vec<Vec<MorId>> = vec![Vec::new(); n];
        for k in 0..m {
            out_mors[dom[k].idx()].push(MorId(k as u32));
            in_mors[cod[k].idx()].push(MorId(k as u32));
        }
        for list in out_mors.iter_mut() {
            list.sort_by_key(|f| (cod[f.idx()], *f));
        }
        for list in in_mors.iter_mut() {
            list.sort_by_key(|f| (dom[f.idx()], *f));
        }
        let mut out_pos = vec![0u32; m];
        let mut in_pos = vec![0u32; m];
        for list in &out_mors {
            for (p, f) in list.iter().enumerate() {
                out_pos[f.idx()] = p as u32;
            }
        }
        for list in &in_mors {
            for (p, f) in list.iter().enumerate() {
                in_pos[f.idx()] = p as u32;
            }
        }
        let mut is_id = vec![false; m];
        for id in &identity {
            is_id[id.idx()] = true;
        }

        let mut table = Vec::with_capacity(n);
        for b in 0..n {
            let ins = &in_mors[b];
            let outs = &out_mors[b];
            let mut row = Vec::with_capacity(ins.len() * outs.len());
            for &f in ins {
                for &g in outs {
                    let gf = compose(g, f).ok_or_else(|| Violation::MissingComposite {
                        g: mor_names[g.idx()].clone(),
                        f: mor_names[f.idx()].clone(),
                    })?;
                    if gf.idx() >= m || dom[gf.idx()] != dom[f.idx()] || cod[gf.idx()] != cod[g.idx()]
                    {
                        return Err(Violation::DanglingComposite {
                            g: mor_names[g.idx()].clone(),
                            f: mor_names[f.idx()].clone(),
                            composite: mor_names.get(gf.idx()).cloned().unwrap_or_default(),
                        });
                    }
                    row.push(gf);
                }
            }
            table.push(row);
        }

        let obj_lookup = obj_names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), ObjId(i as u32)))
            .collect();
        let mor_lookup = mor_names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), MorId(i as u32)))
            .collect();

        Ok(FinCategory {
            obj_names,
            mor_names,
            dom,
            cod,
            identity,
            is_id,
            out_mors,
            in_mors,
            out_pos,
            in_pos,
            table,
            obj_lookup,
            mor_lookup,
        })
    }

    /// The terminal category: one object `*` and its identity.
    pub fn terminal() -> FinCategory {
        Self::discrete(&["*"])
    }

    /// The category with no objects.
    pub fn empty() -> FinCategory {
        Self::discrete::<&str>(&[])
    }

    pub fn discrete<S: AsRef<str>>(names: &[S]) -> FinCategory {
        let n = names.len();
        let parts = CategoryParts {
            obj_names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            mor_names: names.iter().map(|s| format!("id_{}", s.as_ref())).collect(),
            dom: (0..n as u32).map(ObjId).collect(),
            cod: (0..n as u32).map(ObjId).collect(),
            identity: (0..n as u32).map(MorId).collect(),
        };
        FinCategory::assemble(parts, |g, _| Some(g)).expect("discrete category")
    }

    /// The one-object category of a finite group given by its multiplication
    /// table `mul[a][b] = a·b`, with element 0 the unit.
    pub fn group(name: &str, mul: &[Vec<usize>]) -> FinCategory {
        let order = mul.len();
        let parts = CategoryParts {
            obj_names: vec![name.to_string()],
            mor_names: (0..order).map(|g| format!("g{g}")).collect(),
            dom: vec![ObjId(0); order],
            cod: vec![ObjId(0); order],
            identity: vec![MorId(0)],
        };
        FinCategory::assemble(parts, |g, f| Some(MorId(mul[g.idx()][f.idx()] as u32)))
            .expect("group category")
    }

    /// `B(Z/n)`: the cyclic group of order `n` as a one-object category.
    pub fn cyclic_group(n: usize) -> FinCategory {
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::group(&format!("BZ{n}"), &mul)
    }

    /// The poset on `0..n` with `i -> j` whenever `leq(i, j)`. `leq` must be a
    /// partial order (or at least a preorder).
    pub fn poset(names: &[String], leq: impl Fn(usize, usize) -> bool) -> FinCategory {
        let n = names.len();
        let mut parts = CategoryParts {
            obj_names: names.to_vec(),
            ..CategoryParts::default()
        };
        let mut index = HashMap::default();
        parts.identity = vec![MorId(0); n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    let k = MorId(parts.mor_names.len() as u32);
                    index.insert((i, j), k);
                    parts.mor_names.push(format!("{}<={}", names[i], names[j]));
                    parts.dom.push(ObjId(i as u32));
                    parts.cod.push(ObjId(j as u32));
                    if i == j {
                        parts.identity[i] = k;
                    }
                }
            }
        }
        let dom = parts.dom.clone();
        let cod = parts.cod.clone();
        FinCategory::assemble(parts, |g, f| {
            index.get(&(dom[f.idx()].idx(), cod[g.idx()].idx())).copied()
        })
        .expect("poset category")
    }

    /// The ordinal `[n]`: objects `0 < 1 < ... < n`.
    pub fn ordinal(n: usize) -> FinCategory {
        let names: Vec<String> = (0..=n).map(|i| format!("{i}")).collect();
        Self::poset(&names, |i, j| i <= j)
    }

    #[inline]
    pub fn object_count(&self) -> usize {
        self.obj_names.len()
    }

    #[inline]
    pub fn morphism_count(&self) -> usize {
        self.mor_names.len()
    }

    pub fn objects(&self) -> impl DoubleEndedIterator<Item = ObjId> + ExactSizeIterator + Clone {
        (0..self.obj_names.len() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl DoubleEndedIterator<Item = MorId> + ExactSizeIterator + Clone {
        (0..self.mor_names.len() as u32).map(MorId)
    }

    #[inline]
    pub fn dom(&self, f: MorId) -> ObjId {
        self.dom[f.idx()]
    }

    #[inline]
    pub fn cod(&self, f: MorId) -> ObjId {
        self.cod[f.idx()]
    }

    #[inline]
    pub fn id(&self, x: ObjId) -> MorId {
        self.identity[x.idx()]
    }

    #[inline]
    pub fn is_identity(&self, f: MorId) -> bool {
        self.is_id[f.idx()]
    }

    /// `g ∘ f`. Panics if `cod f != dom g`.
    #[inline]
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        let b = self.cod[f.idx()];
        assert_eq!(b, self.dom[g.idx()], "compose: {} o {} not composable", self.mor_name(g), self.mor_name(f));
        let width = self.out_mors[b.idx()].len();
        self.table[b.idx()][self.in_pos[f.idx()] as usize * width + self.out_pos[g.idx()] as usize]
    }

    #[inline]
    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        (self.cod[f.idx()] == self.dom[g.idx()]).then(|| self.compose(g, f))
    }

    /// Composite of a path given in diagrammatic order (`path[0]` first).
    pub fn compose_path(&self, path: &[MorId]) -> Option<MorId> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.try_compose(g, acc))
    }

    /// Morphisms out of `x`, sorted by codomain.
    #[inline]
    pub fn out(&self, x: ObjId) -> &[MorId] {
        &self.out_mors[x.idx()]
    }

    /// Morphisms into `x`, sorted by domain.
    #[inline]
    pub fn incoming(&self, x: ObjId) -> &[MorId] {
        &self.in_mors[x.idx()]
    }

    /// Position of `f` in `out(dom f)`.
    #[inline]
    pub fn out_position(&self, f: MorId) -> usize {
        self.out_pos[f.idx()] as usize
    }

    #[inline]
    pub fn in_position(&self, f: MorId) -> usize {
        self.in_pos[f.idx()] as usize
    }

    /// `Hom(a, b)` as a slice, in increasing id order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        let outs = &self.out_mors[a.idx()];
        let lo = outs.partition_point(|f| self.cod[f.idx()] < b);
        let hi = outs.partition_point(|f| self.cod[f.idx()] <= b);
        &outs[lo..hi]
    }

    pub fn obj_name(&self, x: ObjId) -> &str {
        &self.obj_names[x.idx()]
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.mor_names[f.idx()]
    }

    pub fn object_named(&self, name: &str) -> Option<ObjId> {
        self.obj_lookup.get(name).copied()
    }

    pub fn morphism_named(&self, name: &str) -> Option<MorId> {
        self.mor_lookup.get(name).copied()
    }

    pub fn object_names(&self) -> &[String] {
        &self.obj_names
    }

    pub fn morphism_names(&self) -> &[String] {
        &self.mor_names
    }

    /// Number of composable pairs `(g, f)`.
    pub fn composable_pairs(&self) -> usize {
        self.table.iter().map(Vec::len).sum()
    }

    /// All `(g, f, g∘f)` triples, grouped by middle object.
    pub fn composition_triples(&self) -> impl Iterator<Item = (MorId, MorId, MorId)> + '_ {
        self.objects().flat_map(move |b| {
            let outs = self.out(b);
            self.incoming(b).iter().flat_map(move |&f| outs.iter().map(move |&g| (g, f, self.compose(g, f))))
        })
    }

    /// Identity and associativity failures, exhaustively.
    pub fn law_violations(&self) -> Vec<Violation> {
        let mut found = Vec::new();
        for f in self.morphisms() {
            let left = self.id(self.cod(f));
            let right = self.id(self.dom(f));
            if self.compose(left, f) != f {
                found.push(Violation::NotUnital {
                    morphism: self.mor_name(f).to_string(),
                    identity: self.mor_name(left).to_string(),
                });
            }
            if self.compose(f, right) != f {
                found.push(Violation::NotUnital {
                    morphism: self.mor_name(f).to_string(),
                    identity: self.mor_name(right).to_string(),
                });
            }
        }
        for f in self.morphisms() {
            for &g in self.out(self.cod(f)) {
                let gf = self.compose(g, f);
                for &h in self.out(self.cod(g)) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        found.push(Violation::NonAssociative {
                            h: self.mor_name(h).to_string(),
                            g: self.mor_name(g).to_string(),
                            f: self.mor_name(f).to_string(),
                        });
                    }
                }
            }
        }
        found
    }

    pub fn is_isomorphism(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.dom(f), self.cod(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.is_identity(self.compose(g, f)) && self.is_identity(self.compose(f, g)))
    }

    /// `true` when every hom-set has at most one element.
    pub fn is_thin(&self) -> bool {
        self.objects().all(|a| {
            let outs = self.out(a);
            outs.windows(2).all(|w| self.cod(w[0]) != self.cod(w[1]))
        })
    }

    pub fn terminal_objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        self.objects().filter(move |&t| self.objects().all(|x| self.hom(x, t).len() == 1))
    }

    pub fn initial_objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        self.objects().filter(move |&i| self.objects().all(|x| self.hom(i, x).len() == 1))
    }

    pub fn opposite(&self) -> FinCategory {
        let parts = CategoryParts {
            obj_names: self.obj_names.clone(),
            mor_names: self.mor_names.clone(),
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            identity: self.identity.clone(),
        };
        FinCategory::assemble(parts, |g, f| Some(self.compose(f, g))).expect("opposite")
    }

    /// The same category with every id string replaced.
    pub fn relabeled(&self, obj_names: Vec<String>, mor_names: Vec<String>) -> FinCategory {
        assert_eq!(obj_names.len(), self.object_count());
        assert_eq!(mor_names.len(), self.morphism_count());
        let parts = CategoryParts {
            obj_names,
            mor_names,
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            identity: self.identity.clone(),
        };
        FinCategory::assemble(parts, |g, f| Some(self.compose(g, f))).expect("relabel")
    }

    /// Exports to the string-id description format.
    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.obj_names.clone(),
            morphisms: self
                .morphisms()
                .map(|f| {
                    (
                        self.mor_name(f).to_string(),
                        self.obj_name(self.dom(f)).to_string(),
                        self.obj_name(self.cod(f)).to_string(),
                    )
                })
                .collect(),
            identities: self
                .objects()
                .map(|x| (self.obj_name(x).to_string(), self.mor_name(self.id(x)).to_string()))
                .collect(),
            composition: self
                .composition_triples()
                .map(|(g, f, gf)| {
                    (
                        self.mor_name(g).to_string(),
                        self.mor_name(f).to_string(),
                        self.mor_name(gf).to_string(),
                    )
                })
                .collect(),
        }
    }
}

/// Checks a raw description and builds the category, or lists everything that
/// is wrong with it.
pub fn validate_category(raw: &RawCategory) -> core::result::Result<FinCategory, Vec<Violation>> {
    let mut violations = Vec::new();
    let mut obj_index: BTreeMap<&str, ObjId> = BTreeMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if obj_index.insert(o.as_str(), ObjId(i as u32)).is_some() {
            violations.push(Violation::DuplicateObject(o.clone()));
        }
    }
    let mut mor_index: BTreeMap<&str, MorId> = BTreeMap::new();
    let mut dom = Vec::with_capacity(raw.morphisms.len());
    let mut cod = Vec::with_capacity(raw.morphisms.len());
    for (i, (m, d, c)) in raw.morphisms.iter().enumerate() {
        if mor_index.insert(m.as_str(), MorId(i as u32)).is_some() {
            violations.push(Violation::DuplicateMorphism(m.clone()));
        }
        let mut endpoint = |name: &String| match obj_index.get(name.as_str()) {
            Some(&x) => x,
            None => {
                violations.push(Violation::UnknownObject {
                    context: format!("morphism {m}"),
                    name: name.clone(),
                });
                ObjId(0)
            }
        };
        dom.push(endpoint(d));
        cod.push(endpoint(c));
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    let mut identity: Vec<Option<MorId>> = vec![None; raw.objects.len()];
    for (o, m) in &raw.identities {
        let Some(&x) = obj_index.get(o.as_str()) else {
            violations.push(Violation::UnknownObject {
                context: "identities".to_string(),
                name: o.clone(),
            });
            continue;
        };
        let Some(&f) = mor_index.get(m.as_str()) else {
            violations.push(Violation::UnknownMorphism {
                context: format!("identity of {o}"),
                name: m.clone(),
            });
            continue;
        };
        if dom[f.idx()] != x || cod[f.idx()] != x {
            violations.push(Violation::BadIdentity { object: o.clone(), morphism: m.clone() });
        } else {
            identity[x.idx()] = Some(f);
        }
    }
    for (i, id) in identity.iter().enumerate() {
        if id.is_none() {
            violations.push(Violation::MissingIdentity { object: raw.objects[i].clone() });
        }
    }

    let mut table: HashMap<(MorId, MorId), MorId> = HashMap::default();
    for (g, f, gf) in &raw.composition {
        let lookup = |name: &String, violations: &mut Vec<Violation>| {
            let found = mor_index.get(name.as_str()).copied();
            if found.is_none() {
                violations.push(Violation::UnknownMorphism {
                    context: format!("composition {g} o {f}"),
                    name: name.clone(),
                });
            }
            found
        };
        let (Some(gi), Some(fi), Some(gfi)) =
            (lookup(g, &mut violations), lookup(f, &mut violations), lookup(gf, &mut violations))
        else {
            continue;
        };
        if cod[fi.idx()] != dom[gi.idx()]
            || dom[gfi.idx()] != dom[fi.idx()]
            || cod[gfi.idx()] != cod[gi.idx()]
        {
            violations.push(Violation::DanglingComposite {
                g: g.clone(),
                f: f.clone(),
                composite: gf.clone(),
            });
            continue;
        }
        if let Some(prev) = table.insert((gi, fi), gfi) {
            if prev != gfi {
                violations.push(Violation::ConflictingComposite { g: g.clone(), f: f.clone() });
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    let parts = CategoryParts {
        obj_names: raw.objects.clone(),
        mor_names: raw.morphisms.iter().map(|(m, _, _)| m.clone()).collect(),
        dom,
        cod,
        identity: identity.into_iter().map(Option::unwrap).collect(),
    };
    // Collect every missing pair rather than stopping at the first.
    let mut missing = Vec::new();
    let names = parts.mor_names.clone();
    let category = FinCategory::assemble(parts, |g, f| match table.get(&(g, f)) {
        Some(&gf) => Some(gf),
        None => {
            missing.push(Violation::MissingComposite {
                g: names[g.idx()].clone(),
                f: names[f.idx()].clone(),
            });
            Some(f)
        }
    });
    if !missing.is_empty() {
        return Err(missing);
    }
    let category = category.map_err(|v| vec![v])?;
    let laws = category.law_violations();
    if laws.is_empty() {
        Ok(category)
    } else {
        Err(laws)
    }
}

/// Builds a category whose morphisms are identified by `(dom, cod, key)`.
///
/// Derived constructions (comma categories, zigzag categories, pullbacks, ...)
/// describe a morphism by some structural key; composition is then given on
/// keys and resolved through this index.
pub(crate) struct KeyedBuilder<K> {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    keys: Vec<K>,
    identity: Vec<Option<MorId>>,
    index: HashMap<(ObjId, ObjId, K), MorId>,
    cap: usize,
    what: &'static str,
}

impl<K: Clone + Eq + Hash> KeyedBuilder<K> {
    pub fn new(what: &'static str, cap: usize) -> Self {
        KeyedBuilder {
            obj_names: Vec::new(),
            mor_names: Vec::new(),
            dom: Vec::new(),
            cod: Vec::new(),
            keys: Vec::new(),
            identity: Vec::new(),
            index: HashMap::default(),
            cap,
            what,
        }
    }

    pub fn add_object(&mut self, name: String) -> ObjId {
        self.obj_names.push(name);
        self.identity.push(None);
        ObjId(self.obj_names.len() as u32 - 1)
    }

    pub fn add_morphism(&mut self, dom: ObjId, cod: ObjId, key: K, name: String) -> Result<MorId> {
        if self.mor_names.len() >= self.cap {
            return Err(Error::SizeCapExceeded { what: self.what, limit: self.cap });
        }
        let id = MorId(self.mor_names.len() as u32);
        self.index.insert((dom, cod, key.clone()), id);
        self.mor_names.push(name);
        self.dom.push(dom);
        self.cod.push(cod);
        self.keys.push(key);
        Ok(id)
    }

    pub fn add_identity(&mut self, x: ObjId, key: K, name: String) -> Result<MorId> {
        let id = self.add_morphism(x, x, key, name)?;
        self.identity[x.idx()] = Some(id);
        Ok(id)
    }

    /// Resolves composition through `compose_keys(g, f)`. Returns the category
    /// and the key of every morphism.
    pub fn finish(self, compose_keys: impl Fn(&K, &K) -> K) -> Result<(FinCategory, Vec<K>)> {
        let KeyedBuilder { obj_names, mor_names, dom, cod, keys, identity, index, .. } = self;
        let identity: Vec<MorId> = identity
            .into_iter()
            .enumerate()
            .map(|(i, id)| id.ok_or_else(|| Error::Precondition(format!("object {} lacks identity", obj_names[i]))))
            .collect::<Result<_>>()?;
        let parts = CategoryParts {
            obj_names,
            mor_names,
            dom: dom.clone(),
            cod: cod.clone(),
            identity,
        };
        let category = FinCategory::assemble(parts, |g, f| {
            let key = compose_keys(&keys[g.idx()], &keys[f.idx()]);
            index.get(&(dom[f.idx()], cod[g.idx()], key)).copied()
        })
        .map_err(|v| Error::Invalid(vec![v]))?;
        Ok((category, keys))
    }
}
