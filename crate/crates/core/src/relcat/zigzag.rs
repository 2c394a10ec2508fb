use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::RelCategory;
use crate::error::{Error, Limits, Result};
use crate::fincat::{CategoryParts, FinCategory, Functor, KeyedBuilder, MorId, ObjId};
use crate::HashMap;

/// A finite sequence of integers `[k₀; …; kₙ]`; positive entries count
/// rightward arrows, negative ones leftward weak equivalences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZigzagType {
    pub entries: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `i -> i+1`
    Right,
    /// `i <- i+1`, a weak equivalence
    Left,
}

impl ZigzagType {
    pub fn new(entries: impl Into<Vec<i64>>) -> Self {
        ZigzagType { entries: entries.into() }
    }

    /// Number of arrows.
    pub fn length(&self) -> usize {
        self.entries.iter().map(|k| k.unsigned_abs() as usize).sum()
    }

    /// Direction of each arrow, left to right.
    pub fn directions(&self) -> Vec<Direction> {
        let mut dirs = Vec::with_capacity(self.length());
        for &k in &self.entries {
            let d = if k > 0 { Direction::Right } else { Direction::Left };
            dirs.extend(core::iter::repeat_n(d, k.unsigned_abs() as usize));
        }
        dirs
    }

    pub fn is_normalized(&self) -> bool {
        self.entries.iter().all(|&k| k != 0) && self.entries.windows(2).all(|w| (w[0] > 0) != (w[1] > 0))
    }
}

impl core::fmt::Display for ZigzagType {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("[")?;
        for (i, k) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("]")
    }
}

/// Drops zero entries and merges adjacent entries of equal sign.
pub fn normalize_zigzag_type(t: &ZigzagType) -> ZigzagType {
    let mut out: Vec<i64> = Vec::new();
    for &k in t.entries.iter().filter(|&&k| k != 0) {
        match out.last_mut() {
            Some(last) if (*last > 0) == (k > 0) => *last += k,
            _ => out.push(k),
        }
    }
    ZigzagType { entries: out }
}

/// The relative category `[k₀; …; kₙ]`: the free category on the linear graph
/// `0, 1, …, m` with arrows oriented by the type, whose weak equivalences
/// are generated by the leftward arrows.
pub fn zigzag_index_category(t: &ZigzagType) -> RelCategory {
    let dirs = t.directions();
    let m = dirs.len();
    let mut parts = CategoryParts {
        obj_names: (0..=m).map(|i| format!("{i}")).collect(),
        identity: vec![MorId(0); m + 1],
        ..CategoryParts::default()
    };
    let mut index: HashMap<(usize, usize), MorId> = HashMap::default();
    let mut weq = Vec::new();
    let mut add = |parts: &mut CategoryParts, a: usize, b: usize| {
        let id = MorId(parts.mor_names.len() as u32);
        parts.mor_names.push(format!("{a}->{b}"));
        parts.dom.push(ObjId(a as u32));
        parts.cod.push(ObjId(b as u32));
        index.insert((a, b), id);
        id
    };
    for i in 0..=m {
        let id = add(&mut parts, i, i);
        parts.identity[i] = id;
        weq.push(id);
        for j in i + 1..=m {
            if dirs[i..j].iter().all(|&d| d == Direction::Right) {
                add(&mut parts, i, j);
            }
            if dirs[i..j].iter().all(|&d| d == Direction::Left) {
                weq.push(add(&mut parts, j, i));
            }
        }
    }
    let (dom, cod) = (parts.dom.clone(), parts.cod.clone());
    let base = FinCategory::assemble(parts, |g, f| index.get(&(dom[f.idx()].idx(), cod[g.idx()].idx())).copied())
        .expect("free category on a linear graph");
    RelCategory::new(Arc::new(base), weq).expect("leftward arrows generate a subcategory")
}

/// A zigzag in a relative category: `objects[i]` and `objects[i+1]` are joined
/// by `arrows[i]`, pointing as `directions[i]` says.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Zigzag {
    pub objects: Vec<ObjId>,
    pub arrows: Vec<MorId>,
}

impl Zigzag {
    pub fn domain(&self) -> ObjId {
        self.objects[0]
    }

    pub fn codomain(&self) -> ObjId {
        *self.objects.last().unwrap()
    }

    /// Chaining and the weak-equivalence condition on leftward arrows.
    pub fn is_valid(&self, c: &RelCategory, dirs: &[Direction]) -> bool {
        let base = c.base();
        self.objects.len() == dirs.len() + 1
            && self.arrows.len() == dirs.len()
            && dirs.iter().enumerate().all(|(i, d)| {
                let a = self.arrows[i];
                match d {
                    Direction::Right => base.dom(a) == self.objects[i] && base.cod(a) == self.objects[i + 1],
                    Direction::Left => {
                        base.dom(a) == self.objects[i + 1] && base.cod(a) == self.objects[i] && c.is_weq(a)
                    }
                }
            })
    }
}

/// `C^t(X, Y)` together with the zigzag behind every object and the ladder of
/// verticals behind every morphism.
#[derive(Clone, Debug)]
pub struct ZigzagCategory {
    pub category: Arc<FinCategory>,
    pub ty: ZigzagType,
    pub directions: Vec<Direction>,
    pub zigzags: Vec<Zigzag>,
    /// `verticals[f][i]: source_i -> target_i`.
    pub verticals: Vec<Vec<MorId>>,
    lookup: HashMap<Vec<MorId>, ObjId>,
}

impl ZigzagCategory {
    /// The object with the given arrows (for length 0 there is at most one).
    pub fn find(&self, arrows: &[MorId]) -> Option<ObjId> {
        if self.directions.is_empty() {
            return (!self.zigzags.is_empty()).then_some(ObjId(0));
        }
        self.lookup.get(arrows).copied()
    }

    /// The morphism `dom -> cod` with the given verticals. Verticals alone do
    /// not fix the target when they are not epimorphisms.
    pub fn find_morphism(&self, dom: ObjId, cod: ObjId, verticals: &[MorId]) -> Option<MorId> {
        self.category.hom(dom, cod).iter().copied().find(|f| self.verticals[f.idx()] == verticals)
    }

    pub fn zigzag(&self, x: ObjId) -> &Zigzag {
        &self.zigzags[x.idx()]
    }
}

fn zigzag_name(c: &FinCategory, z: &Zigzag, dirs: &[Direction]) -> String {
    if dirs.is_empty() {
        return format!("({})", c.obj_name(z.objects[0]));
    }
    let mut s = String::from("(");
    for (i, (&a, d)) in z.arrows.iter().zip(dirs).enumerate() {
        if i > 0 {
            s.push(',');
        }
        if *d == Direction::Left {
            s.push('~');
        }
        s.push_str(c.mor_name(a));
    }
    s.push(')');
    s
}

/// Objects that can start the tail `dirs[i..]` of a zigzag ending at `y`.
fn feasible_sets(c: &RelCategory, dirs: &[Direction], y: ObjId) -> Vec<Vec<bool>> {
    let base = c.base();
    let n = base.object_count();
    let m = dirs.len();
    let mut feasible = vec![vec![false; n]; m + 1];
    feasible[m][y.idx()] = true;
    for i in (0..m).rev() {
        for o in base.objects() {
            feasible[i][o.idx()] = match dirs[i] {
                Direction::Right => base.out(o).iter().any(|&a| feasible[i + 1][base.cod(a).idx()]),
                Direction::Left => base.incoming(o).iter().any(|&a| c.is_weq(a) && feasible[i + 1][base.dom(a).idx()]),
            };
        }
    }
    feasible
}

/// Arrows that may occupy position `i` starting from `o`, with their far end.
fn steps<'a>(
    c: &'a RelCategory,
    dirs: &'a [Direction],
    feasible: &'a [Vec<bool>],
    i: usize,
    o: ObjId,
) -> impl Iterator<Item = (MorId, ObjId)> + 'a {
    let base = c.base();
    let (list, right) = match dirs[i] {
        Direction::Right => (base.out(o), true),
        Direction::Left => (base.incoming(o), false),
    };
    list.iter().filter_map(move |&a| {
        let next = if right { base.cod(a) } else { base.dom(a) };
        (feasible[i + 1][next.idx()] && (right || c.is_weq(a))).then_some((a, next))
    })
}

/// The category of zigzags of type `t` from `x` to `y`, enumerated
/// exhaustively.
pub fn zigzag_category(c: &RelCategory, t: &ZigzagType, x: ObjId, y: ObjId, limits: &Limits) -> Result<ZigzagCategory> {
    let base = c.base();
    for o in [x, y] {
        if o.idx() >= base.object_count() {
            return Err(Error::UnknownObject(format!("#{}", o.0)));
        }
    }
    let dirs = t.directions();
    let m = dirs.len();
    let feasible = feasible_sets(c, &dirs, y);

    let mut zigzags: Vec<Zigzag> = Vec::new();
    if feasible[0][x.idx()] {
        let mut objects = vec![x];
        let mut arrows = Vec::new();
        enumerate_zigzags(c, &dirs, &feasible, &mut objects, &mut arrows, &mut zigzags, limits.max_morphisms)?;
    }
    let mut lookup = HashMap::default();
    let mut builder: KeyedBuilder<Vec<MorId>> = KeyedBuilder::new("zigzag category", limits.max_morphisms);
    for (i, z) in zigzags.iter().enumerate() {
        builder.add_object(zigzag_name(base, z, &dirs));
        lookup.insert(z.arrows.clone(), ObjId(i as u32));
    }

    // Ladders out of each zigzag, found position by position.
    let mut ladder = Vec::with_capacity(m + 1);
    let mut target = Vec::with_capacity(m);
    for (i, z) in zigzags.iter().enumerate() {
        let src = ObjId(i as u32);
        ladder.clear();
        target.clear();
        ladder.push(base.id(x));
        let mut found = Vec::new();
        extend_ladder(c, &dirs, &feasible, z, &mut ladder, &mut target, &mut found);
        for (verticals, arrows) in found {
            let dst = if m == 0 { src } else { lookup[&arrows] };
            let name = format!(
                "[{}]:{}",
                verticals.iter().map(|&h| base.mor_name(h)).collect::<Vec<_>>().join(","),
                zigzag_name(base, z, &dirs)
            );
            if verticals.iter().all(|&h| base.is_identity(h)) {
                builder.add_identity(src, verticals, name)?;
            } else {
                builder.add_morphism(src, dst, verticals, name)?;
            }
        }
    }
    let (category, verticals) = builder.finish(|g, f| g.iter().zip(f).map(|(&a, &b)| base.compose(a, b)).collect())?;
    Ok(ZigzagCategory {
        category: Arc::new(category),
        ty: t.clone(),
        directions: dirs,
        zigzags,
        verticals,
        lookup,
    })
}

fn enumerate_zigzags(
    c: &RelCategory,
    dirs: &[Direction],
    feasible: &[Vec<bool>],
    objects: &mut Vec<ObjId>,
    arrows: &mut Vec<MorId>,
    out: &mut Vec<Zigzag>,
    cap: usize,
) -> Result<()> {
    let i = arrows.len();
    if i == dirs.len() {
        if out.len() >= cap {
            return Err(Error::SizeCapExceeded { what: "zigzag category", limit: cap });
        }
        out.push(Zigzag { objects: objects.clone(), arrows: arrows.clone() });
        return Ok(());
    }
    let here = objects[i];
    for (a, next) in steps(c, dirs, feasible, i, here) {
        objects.push(next);
        arrows.push(a);
        enumerate_zigzags(c, dirs, feasible, objects, arrows, out, cap)?;
        objects.pop();
        arrows.pop();
    }
    Ok(())
}

/// Extends a partial ladder `h₀..h_i` out of `z` with target arrows
/// `a'₀..a'_{i-1}`, recording every completion.
fn extend_ladder(
    c: &RelCategory,
    dirs: &[Direction],
    feasible: &[Vec<bool>],
    z: &Zigzag,
    ladder: &mut Vec<MorId>,
    target: &mut Vec<MorId>,
    found: &mut Vec<(Vec<MorId>, Vec<MorId>)>,
) {
    let base = c.base();
    let i = target.len();
    let m = dirs.len();
    if i == m {
        if base.is_identity(ladder[m]) && base.cod(ladder[m]) == z.objects[m] {
            found.push((ladder.clone(), target.clone()));
        }
        return;
    }
    let h = ladder[i];
    let here = base.cod(h);
    let last = i + 1 == m;
    for (a2, next) in steps(c, dirs, feasible, i, here) {
        let a = z.arrows[i];
        // The new vertical h' : z_{i+1} -> next must be a weak equivalence
        // closing the square; the last one must be the identity of Y.
        let id_slot;
        let candidates: &[MorId] = if last {
            if next != z.objects[m] {
                continue;
            }
            id_slot = [base.id(next)];
            &id_slot
        } else {
            base.hom(z.objects[i + 1], next)
        };
        for &h2 in candidates {
            if !c.is_weq(h2) {
                continue;
            }
            let commutes = match dirs[i] {
                Direction::Right => base.compose(a2, h) == base.compose(h2, a),
                Direction::Left => base.compose(a2, h2) == base.compose(h, a),
            };
            if commutes {
                ladder.push(h2);
                target.push(a2);
                extend_ladder(c, dirs, feasible, z, ladder, target, found);
                ladder.pop();
                target.pop();
            }
        }
    }
}

/// The functor `C^{[-1;k;l]}(X, Y) -> C^{[-1;k;-1;l]}(X, Y)` inserting an
/// identity weak equivalence after the first `1 + k` arrows.
pub fn insertion_functor(
    c: &RelCategory,
    k: usize,
    l: usize,
    x: ObjId,
    y: ObjId,
    limits: &Limits,
) -> Result<(ZigzagCategory, ZigzagCategory, Functor)> {
    let (k, l) = (k as i64, l as i64);
    let source = zigzag_category(c, &ZigzagType::new([-1, k, l]), x, y, limits)?;
    let target = zigzag_category(c, &ZigzagType::new([-1, k, -1, l]), x, y, limits)?;
    let functor = insertion_between(c, &source, &target, 1 + k as usize)?;
    Ok((source, target, functor))
}

/// Inserts an identity leftward arrow at object position `at`.
fn insertion_between(c: &RelCategory, source: &ZigzagCategory, target: &ZigzagCategory, at: usize) -> Result<Functor> {
    let base = c.base();
    let obj_map: Vec<ObjId> = source
        .zigzags
        .iter()
        .map(|z| {
            let mut arrows = z.arrows.clone();
            arrows.insert(at, base.id(z.objects[at]));
            target.find(&arrows).expect("inserted zigzag is enumerated")
        })
        .collect();
    let mor_map: Vec<MorId> = source
        .category
        .morphisms()
        .map(|f| {
            let mut v = source.verticals[f.idx()].clone();
            v.insert(at, v[at]);
            target
                .find_morphism(obj_map[source.category.dom(f).idx()], obj_map[source.category.cod(f).idx()], &v)
                .expect("inserted ladder is enumerated")
        })
        .collect();
    Functor::new(source.category.clone(), target.category.clone(), obj_map, mor_map)
}

/// The functor `C^t(X, Y) -> C^t(X', Y')` composing the first arrow with a
/// weak equivalence `x: X -> X'` and the last with `y: Y -> Y'`. The type must
/// begin with a leftward arrow and end with a rightward one.
pub fn cocycle_pushforward(
    c: &RelCategory,
    t: &ZigzagType,
    x: MorId,
    y: MorId,
    limits: &Limits,
) -> Result<(ZigzagCategory, ZigzagCategory, Functor)> {
    let base = c.base();
    let dirs = t.directions();
    if dirs.len() < 2 || dirs[0] != Direction::Left || dirs[dirs.len() - 1] != Direction::Right {
        return Err(Error::Precondition(format!("type {t} must start leftward and end rightward")));
    }
    if !c.is_weq(x) || !c.is_weq(y) {
        return Err(Error::Precondition("end maps must be weak equivalences".into()));
    }
    let source = zigzag_category(c, t, base.dom(x), base.dom(y), limits)?;
    let target = zigzag_category(c, t, base.cod(x), base.cod(y), limits)?;
    let m = dirs.len();
    let obj_map: Vec<ObjId> = source
        .zigzags
        .iter()
        .map(|z| {
            let mut arrows = z.arrows.clone();
            arrows[0] = base.compose(x, arrows[0]);
            arrows[m - 1] = base.compose(y, arrows[m - 1]);
            target.find(&arrows).expect("pushed-forward zigzag is enumerated")
        })
        .collect();
    let mor_map: Vec<MorId> = source
        .category
        .morphisms()
        .map(|f| {
            let mut v = source.verticals[f.idx()].clone();
            v[0] = base.id(base.cod(x));
            v[m] = base.id(base.cod(y));
            target
                .find_morphism(obj_map[source.category.dom(f).idx()], obj_map[source.category.cod(f).idx()], &v)
                .expect("pushed-forward ladder is enumerated")
        })
        .collect();
    let functor = Functor::new(source.category.clone(), target.category.clone(), obj_map, mor_map)?;
    Ok((source, target, functor))
}
