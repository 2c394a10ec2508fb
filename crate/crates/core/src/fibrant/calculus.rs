use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::cocycles::{
    correspondence_fibration, functional_correspondences, mapping_path_factorization, Cocycle,
    FunctionalCorrespondence,
};
use super::limits::{find_pullback, mediating};
use super::structure::CfoStructure;
use crate::error::{Error, Limits, Result};
use crate::fincat::{
    comma_under, is_cartesian, is_grothendieck_fibration, strict_fibre, CommaCategory, FibrationCheck, FinCategory,
    Functor, KeyedBuilder, MorId, ObjId,
};
use crate::homotopy::{is_homotopy_cofinal, Certificate, Verdict, DEFAULT_TRUNCATION};
use crate::relcat::{Direction, InstanceOutcome, Zigzag};

/// Outcome of one of the exact conditions 1–4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionStatus {
    Passed,
    Failed(String),
    SizeCap { what: &'static str, limit: usize },
}

impl ConditionStatus {
    pub fn passed(&self) -> bool {
        matches!(self, ConditionStatus::Passed)
    }

    fn from_witness(w: Option<String>) -> Self {
        w.map_or(ConditionStatus::Passed, ConditionStatus::Failed)
    }
}

/// Cofinality of `U_{X,Y}: FCorr(X, Y) -> Cocyc(X, Y)` for one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOutcome {
    pub x: ObjId,
    pub y: ObjId,
    pub outcome: InstanceOutcome,
}

impl PairOutcome {
    pub fn verdict(&self) -> Option<&Verdict> {
        match &self.outcome {
            InstanceOutcome::Evaluated { verdict, .. } => Some(verdict),
            InstanceOutcome::SizeCap { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalculusReport {
    /// Conditions 1–4, in order.
    pub conditions: [ConditionStatus; 4],
    /// Condition 5, one entry per ordered pair of objects.
    pub pairs: Vec<PairOutcome>,
}

impl CalculusReport {
    /// Refuted if condition 5 is refuted for some pair; certified if moreover
    /// conditions 1–4 pass and every pair is certified.
    pub fn condition5(&self) -> Verdict {
        if let Some(Verdict::Refuted(d)) = self.pairs.iter().find_map(|p| p.verdict().filter(|v| v.is_refuted())) {
            return Verdict::Refuted(d.clone());
        }
        if self.pairs.iter().all(|p| p.verdict().is_some_and(Verdict::is_certified)) {
            Verdict::Certified(Certificate::AllInstances)
        } else {
            Verdict::Consistent { checked_through: DEFAULT_TRUNCATION - 1 }
        }
    }
}

/// Condition 1: every pullback of a member of `v` exists, and every pullback
/// square (the chosen one precomposed with any isomorphism) has its pulled-back
/// leg in `v`.
pub fn pullback_closure_defect(s: &CfoStructure, v: &[bool]) -> Option<String> {
    let c = s.base();
    for f in c.morphisms().filter(|f| v[f.idx()]) {
        for &g in c.incoming(c.cod(f)) {
            let name = || format!("{} along {}", c.mor_name(f), c.mor_name(g));
            let Some(p) = find_pullback(c, f, g) else {
                return Some(format!("no pullback of {}", name()));
            };
            for &phi in c.incoming(p.object) {
                if c.is_isomorphism(phi) && !v[c.compose(p.pb, phi).idx()] {
                    return Some(format!(
                        "pullback {} of {} is not in V",
                        c.mor_name(c.compose(p.pb, phi)),
                        name()
                    ));
                }
            }
        }
    }
    None
}

fn condition3(s: &CfoStructure, limits: &Limits) -> Result<ConditionStatus> {
    let fib = correspondence_fibration(s, limits)?;
    let zc = &fib.zigzags;
    if let FibrationCheck::NoLift { e, g } = is_grothendieck_fibration(&fib.fcorr_projection) {
        return Ok(ConditionStatus::Failed(format!(
            "FCorr -> W x W has no cartesian lift of {} at {}",
            fib.base.mor_name(g),
            fib.fcorr.obj_name(e)
        )));
    }
    for phi in fib.fcorr.morphisms() {
        if is_cartesian(&fib.fcorr_projection, phi) && !is_cartesian(&fib.projection, fib.inclusion.mor(phi)) {
            return Ok(ConditionStatus::Failed(format!(
                "U does not preserve the cartesian morphism {}",
                zc.mor_name(fib.inclusion.mor(phi))
            )));
        }
    }
    Ok(ConditionStatus::Passed)
}

fn catch_cap(r: Result<ConditionStatus>) -> Result<ConditionStatus> {
    match r {
        Err(Error::SizeCapExceeded { what, limit }) => Ok(ConditionStatus::SizeCap { what, limit }),
        other => other,
    }
}

/// Condition 5 for one pair.
pub fn cofinality_instance(s: &CfoStructure, x: ObjId, y: ObjId, t: usize, limits: &Limits) -> Result<PairOutcome> {
    let outcome = match functional_correspondences(s, x, y, limits)
        .and_then(|fc| Ok((is_homotopy_cofinal(&fc.inclusion, t, limits)?, fc)))
    {
        Ok((verdict, fc)) => InstanceOutcome::Evaluated {
            source_objects: fc.category.object_count(),
            target_objects: fc.all.category.object_count(),
            verdict,
        },
        Err(Error::SizeCapExceeded { what, limit }) => InstanceOutcome::SizeCap { what, limit },
        Err(e) => return Err(e),
    };
    Ok(PairOutcome { x, y, outcome })
}

/// Conditions 1–4 for the class `v`.
pub fn calculus_conditions(s: &CfoStructure, v: &[bool], limits: &Limits) -> Result<[ConditionStatus; 4]> {
    let c = s.base();
    let c1 = ConditionStatus::from_witness(pullback_closure_defect(s, v));
    let c2 = ConditionStatus::from_witness(
        c.morphisms()
            .find(|&f| c.is_isomorphism(f) && !v[f.idx()])
            .map(|f| format!("isomorphism {} is not in V", c.mor_name(f))),
    );
    let c3 = catch_cap(condition3(s, limits))?;
    let c4 = catch_cap((|| {
        let fib = correspondence_fibration(s, limits)?;
        Ok(ConditionStatus::from_witness(fib.fcorr.objects().find_map(|o| {
            let z = fib.cocycles[fib.inclusion.obj(o).idx()];
            (!v[z.v.idx()]).then(|| format!("U E = {} is not a V-cocycle", fib.fcorr.obj_name(o)))
        })))
    })())?;
    Ok([c1, c2, c3, c4])
}

/// All five conditions with `V` given explicitly.
pub fn certify_with_class(s: &CfoStructure, v: &[bool], t: usize, limits: &Limits) -> Result<CalculusReport> {
    if v.len() != s.base().morphism_count() {
        return Err(Error::Precondition("class V has the wrong length".into()));
    }
    let conditions = calculus_conditions(s, v, limits)?;
    let mut pairs = Vec::new();
    for x in s.base().objects() {
        for y in s.base().objects() {
            pairs.push(cofinality_instance(s, x, y, t, limits)?);
        }
    }
    Ok(CalculusReport { conditions, pairs })
}

/// The five conditions with `V` the trivial fibrations.
pub fn certify_cocycle_calculus(s: &CfoStructure, t: usize, limits: &Limits) -> Result<CalculusReport> {
    certify_with_class(s, &s.trivial_fibrations(), t, limits)
}

/// `(X, Y, w, E, u)`: a weak equivalence `w: X -> Y`, a functional
/// correspondence `E = (Y <-v- Z -q-> X)` and a weak equivalence `u: X -> Z`
/// with `v ∘ u = w` and `q ∘ u = id`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RObject {
    pub x: ObjId,
    pub y: ObjId,
    pub w: MorId,
    pub correspondence: FunctionalCorrespondence,
    pub u: MorId,
}

/// The category `R` and its projection to `Zz^{[-1]}(C)`, the category of weak
/// equivalences and commuting squares of weak equivalences.
#[derive(Clone, Debug)]
pub struct RCategory {
    pub category: Arc<FinCategory>,
    pub objects: Vec<RObject>,
    /// `[g, h, f]` on `Y`, the apex and `X`.
    pub ladders: Vec<[MorId; 3]>,
    pub weqs: Arc<FinCategory>,
    /// The weak equivalence behind each object of `weqs`.
    pub weq_objects: Vec<MorId>,
    /// `[g, f]` for each morphism of `weqs`.
    pub weq_squares: Vec<[MorId; 2]>,
    pub projection: Functor,
}

impl RCategory {
    pub fn weq_object(&self, w: MorId) -> Option<ObjId> {
        self.weq_objects.iter().position(|&m| m == w).map(|i| ObjId(i as u32))
    }
}

fn is_functional(s: &CfoStructure, z: Cocycle) -> Result<Option<MorId>> {
    let pairing = s.pairing(z.f, z.v)?;
    Ok((s.is_weq(z.v) && s.is_fib(pairing)).then_some(pairing))
}

/// The R-object over `w: X -> Y` built from the mapping path factorisation of
/// `w`.
pub fn replacement_for(s: &CfoStructure, w: MorId) -> Result<RObject> {
    let c = s.base();
    if !s.is_weq(w) {
        return Err(Error::Precondition(format!("{} is not a weak equivalence", c.mor_name(w))));
    }
    let fac = mapping_path_factorization(s, w)?;
    let e = fac.correspondence.cocycle;
    let swapped = Cocycle { apex: e.apex, v: e.f, f: e.v };
    let pairing = is_functional(s, swapped)?.ok_or_else(|| {
        Error::Precondition(format!("swapped factorisation of {} is not functional", c.mor_name(w)))
    })?;
    Ok(RObject {
        x: c.dom(w),
        y: c.cod(w),
        w,
        correspondence: FunctionalCorrespondence { cocycle: swapped, pairing },
        u: fac.u,
    })
}

#[allow(non_snake_case)]
pub fn build_R(s: &CfoStructure, limits: &Limits) -> Result<RCategory> {
    let c = s.base();
    let weq_objects: Vec<MorId> = s.rel().weq_morphisms().collect();
    let mut wb: KeyedBuilder<[MorId; 2]> = KeyedBuilder::new("weak equivalence category", limits.max_morphisms);
    for &w in &weq_objects {
        wb.add_object(String::from(c.mor_name(w)));
    }
    let mut weq_index = crate::HashMap::default();
    for (i, &w) in weq_objects.iter().enumerate() {
        weq_index.insert(w, ObjId(i as u32));
    }
    for (i, &w0) in weq_objects.iter().enumerate() {
        for (j, &w1) in weq_objects.iter().enumerate() {
            for &f in c.hom(c.dom(w0), c.dom(w1)) {
                for &g in c.hom(c.cod(w0), c.cod(w1)) {
                    if !s.is_weq(f) || !s.is_weq(g) || c.compose(g, w0) != c.compose(w1, f) {
                        continue;
                    }
                    let name = format!("[{},{}]", c.mor_name(g), c.mor_name(f));
                    if i == j && c.is_identity(f) && c.is_identity(g) {
                        wb.add_identity(ObjId(i as u32), [g, f], name)?;
                    } else {
                        wb.add_morphism(ObjId(i as u32), ObjId(j as u32), [g, f], name)?;
                    }
                }
            }
        }
    }
    let (weqs, weq_squares) = wb.finish(|a, b| [c.compose(a[0], b[0]), c.compose(a[1], b[1])])?;
    let weqs = Arc::new(weqs);

    let mut objects = Vec::new();
    for &w in &weq_objects {
        let (x, y) = (c.dom(w), c.cod(w));
        for &u in c.out(x) {
            if !s.is_weq(u) {
                continue;
            }
            let z = c.cod(u);
            for &v in c.hom(z, y) {
                if c.compose(v, u) != w {
                    continue;
                }
                for &q in c.hom(z, x) {
                    if c.compose(q, u) != c.id(x) {
                        continue;
                    }
                    let cocycle = Cocycle { apex: z, v, f: q };
                    if let Some(pairing) = is_functional(s, cocycle)? {
                        if objects.len() >= limits.max_morphisms {
                            return Err(Error::SizeCapExceeded { what: "R", limit: limits.max_morphisms });
                        }
                        let correspondence = FunctionalCorrespondence { cocycle, pairing };
                        objects.push(RObject { x, y, w, correspondence, u });
                    }
                }
            }
        }
    }
    let mut by_apex: Vec<Vec<usize>> = alloc::vec![Vec::new(); c.object_count()];
    for (i, o) in objects.iter().enumerate() {
        by_apex[o.correspondence.cocycle.apex.idx()].push(i);
    }
    let mut rb: KeyedBuilder<[MorId; 3]> = KeyedBuilder::new("R", limits.max_morphisms);
    for o in &objects {
        let z = o.correspondence.cocycle;
        rb.add_object(format!("{}:({},{};{})", c.mor_name(o.w), c.mor_name(z.v), c.mor_name(z.f), c.mor_name(o.u)));
    }
    for (i, o0) in objects.iter().enumerate() {
        let z0 = o0.correspondence.cocycle;
        for &h in c.out(z0.apex) {
            if !s.is_weq(h) {
                continue;
            }
            for &j in &by_apex[c.cod(h).idx()] {
                let o1 = &objects[j];
                let z1 = o1.correspondence.cocycle;
                for &g in c.hom(o0.y, o1.y) {
                    if !s.is_weq(g) || c.compose(g, z0.v) != c.compose(z1.v, h) {
                        continue;
                    }
                    for &f in c.hom(o0.x, o1.x) {
                        let commutes = s.is_weq(f)
                            && c.compose(f, z0.f) == c.compose(z1.f, h)
                            && c.compose(g, o0.w) == c.compose(o1.w, f)
                            && c.compose(h, o0.u) == c.compose(o1.u, f);
                        if !commutes {
                            continue;
                        }
                        let name = format!("[{},{},{}]", c.mor_name(g), c.mor_name(h), c.mor_name(f));
                        let key = [g, h, f];
                        if i == j && key.iter().all(|&m| c.is_identity(m)) {
                            rb.add_identity(ObjId(i as u32), key, name)?;
                        } else {
                            rb.add_morphism(ObjId(i as u32), ObjId(j as u32), key, name)?;
                        }
                    }
                }
            }
        }
    }
    let (r, ladders) = rb.finish(|a, b| [c.compose(a[0], b[0]), c.compose(a[1], b[1]), c.compose(a[2], b[2])])?;
    let category = Arc::new(r);
    let obj_map: Vec<ObjId> = objects.iter().map(|o| weq_index[&o.w]).collect();
    let mor_map: Vec<MorId> = category
        .morphisms()
        .map(|m| {
            let [g, _, f] = ladders[m.idx()];
            let from = obj_map[category.dom(m).idx()];
            weqs.out(from)
                .iter()
                .copied()
                .find(|n| weq_squares[n.idx()] == [g, f])
                .expect("square of an R-morphism")
        })
        .collect();
    let projection = Functor::new(category.clone(), weqs.clone(), obj_map, mor_map)?;
    Ok(RCategory { category, objects, ladders, weqs, weq_objects, weq_squares, projection })
}

/// The strict fibre of `R` over `w: X -> Y`, the comma category
/// `(Y <-w- X -id-> X) ↓ U_{Y,X}` and an explicit isomorphism between them.
#[derive(Clone, Debug)]
pub struct FibreComparison {
    pub fibre: Arc<FinCategory>,
    pub comma: CommaCategory,
    pub isomorphism: Functor,
}

pub fn fibre_comma_isomorphism(s: &CfoStructure, r: &RCategory, w: MorId, limits: &Limits) -> Result<FibreComparison> {
    let c = s.base();
    let b = r
        .weq_object(w)
        .ok_or_else(|| Error::Precondition(format!("{} is not a weak equivalence", c.mor_name(w))))?;
    let (x, y) = (c.dom(w), c.cod(w));
    let (fibre, fibre_incl) = strict_fibre(&r.projection, b)?;
    let fc = functional_correspondences(s, y, x, limits)?;
    let d = fc
        .all
        .find(&[w, c.id(x)])
        .ok_or_else(|| Error::Precondition("(w, id) is not a cocycle".into()))?;
    let comma = comma_under(&fc.inclusion, d, limits)?;
    let fcorr_of = |z: Cocycle| -> Option<ObjId> {
        let o = fc.all.find(&[z.v, z.f])?;
        fc.inclusion.object_map().iter().position(|&p| p == o).map(|i| ObjId(i as u32))
    };
    let mut obj_map = Vec::with_capacity(fibre.object_count());
    for o in fibre.objects() {
        let ro = &r.objects[fibre_incl.obj(o).idx()];
        let e = fcorr_of(ro.correspondence.cocycle).ok_or_else(|| Error::Precondition("R-object outside FCorr".into()))?;
        let arrow = fc
            .all
            .find_morphism(d, fc.inclusion.obj(e), &[c.id(y), ro.u, c.id(x)])
            .ok_or_else(|| Error::Precondition("u is not a morphism of cocycles".into()))?;
        obj_map.push(comma.find(e, arrow).ok_or_else(|| Error::Precondition("missing comma object".into()))?);
    }
    let mut mor_map = Vec::with_capacity(fibre.morphism_count());
    for m in fibre.morphisms() {
        let [_, h, _] = r.ladders[fibre_incl.mor(m).idx()];
        let from = obj_map[fibre.dom(m).idx()];
        let to = obj_map[fibre.cod(m).idx()];
        let e_from = comma.objects[from.idx()].0;
        let inner = fc
            .category
            .out(e_from)
            .iter()
            .copied()
            .find(|&k| {
                fc.category.cod(k) == comma.objects[to.idx()].0
                    && fc.all.verticals[fc.inclusion.mor(k).idx()] == [c.id(y), h, c.id(x)]
            })
            .ok_or_else(|| Error::Precondition("fibre morphism outside FCorr".into()))?;
        let image = comma
            .category
            .hom(from, to)
            .iter()
            .copied()
            .find(|&n| comma.projection.mor(n) == inner)
            .ok_or_else(|| Error::Precondition("missing comma morphism".into()))?;
        mor_map.push(image);
    }
    let isomorphism = Functor::new(fibre.clone(), comma.category.clone(), obj_map, mor_map)?;
    if !isomorphism.is_bijective() {
        return Err(Error::Precondition(format!("fibre over {} is not isomorphic to the comma category", c.mor_name(w))));
    }
    Ok(FibreComparison { fibre, comma, isomorphism })
}

/// The output of the pullback reduction of a zigzag of type `[-1;k;-1;l]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// Type `[-1;k;l]`.
    pub output: Zigzag,
    /// The middle row, of type `[-1;k;-1;l]`.
    pub middle: Zigzag,
    /// Ladder `middle -> input` (the `v_i`).
    pub to_input: Vec<MorId>,
    /// Ladder `middle -> S(output)`.
    pub to_output: Vec<MorId>,
    /// When the inner weak equivalence is an identity: the ladder
    /// `z₀ -> output` (the `u_i`), `z₀` being the input with it removed.
    pub section: Option<Vec<MorId>>,
}

/// Directions of `[-1;k;l]` (`inner = false`) or `[-1;k;-1;l]`.
pub fn reduction_directions(k: usize, l: usize, inner: bool) -> Vec<Direction> {
    let mut d = alloc::vec![Direction::Left];
    d.extend(core::iter::repeat_n(Direction::Right, k));
    if inner {
        d.push(Direction::Left);
    }
    d.extend(core::iter::repeat_n(Direction::Right, l));
    d
}

/// `z` with an identity leftward arrow inserted at object position `at`.
pub fn insert_identity(c: &FinCategory, z: &Zigzag, at: usize) -> Zigzag {
    let mut objects = z.objects.clone();
    let mut arrows = z.arrows.clone();
    objects.insert(at, z.objects[at]);
    arrows.insert(at, c.id(z.objects[at]));
    Zigzag { objects, arrows }
}

/// Whether `verticals` is a ladder of weak equivalences from `a` to `b` with
/// every square commuting.
pub fn is_weq_ladder(s: &CfoStructure, dirs: &[Direction], a: &Zigzag, b: &Zigzag, verticals: &[MorId]) -> bool {
    let c = s.base();
    let n = dirs.len();
    if a.arrows.len() != n || b.arrows.len() != n || verticals.len() != n + 1 {
        return false;
    }
    let ends = verticals.iter().enumerate().all(|(i, &h)| {
        s.is_weq(h) && c.dom(h) == a.objects[i] && c.cod(h) == b.objects[i]
    });
    ends && dirs.iter().enumerate().all(|(i, d)| {
        let (h0, h1) = (verticals[i], verticals[i + 1]);
        match d {
            Direction::Right => c.compose(b.arrows[i], h0) == c.compose(h1, a.arrows[i]),
            Direction::Left => c.compose(b.arrows[i], h1) == c.compose(h0, a.arrows[i]),
        }
    })
}

/// Replaces the inner weak equivalence `w` of a zigzag of type `[-1;k;-1;l]`
/// using an R-object over `w`, by pulling its left leg back along `f_k, …, f_1`.
pub fn reduce_zigzag(s: &CfoStructure, z: &Zigzag, k: usize, replacement: &RObject) -> Result<Reduction> {
    let c = s.base();
    let n = z.arrows.len();
    if n < k + 2 {
        return Err(Error::Precondition(format!("zigzag of length {n} has no inner arrow after {k} steps")));
    }
    let l = n - k - 2;
    let dirs = reduction_directions(k, l, true);
    if !z.is_valid(s.rel(), &dirs) {
        return Err(Error::Precondition(format!("not a zigzag of type [-1;{k};-1;{l}]")));
    }
    let w = z.arrows[k + 1];
    if replacement.w != w {
        return Err(Error::Precondition("replacement lies over a different weak equivalence".into()));
    }
    let e = replacement.correspondence.cocycle;
    if !s.is_trivial_fibration(e.v) {
        return Err(Error::Precondition(format!("{} is not a trivial fibration", c.mor_name(e.v))));
    }
    let x = z.objects[0];
    let x0 = z.arrows[0];
    let tail_objects = &z.objects[k + 2..];
    let tail_arrows = &z.arrows[k + 2..];
    let ids = |objs: &[ObjId]| objs.iter().map(|&o| c.id(o)).collect::<Vec<_>>();

    if k == 0 {
        // No rightward arrows to pull back along: the leftward arrows compose.
        let mut output = Zigzag { objects: alloc::vec![x], arrows: alloc::vec![c.compose(x0, w)] };
        output.objects.extend_from_slice(tail_objects);
        output.arrows.extend_from_slice(tail_arrows);
        let middle = insert_identity(c, &output, 1);
        let mut to_input = alloc::vec![c.id(x), w];
        to_input.extend(ids(tail_objects));
        let to_output = ids(&middle.objects);
        let section = c.is_identity(w).then(|| ids(&output.objects));
        return Ok(Reduction { output, middle, to_input, to_output, section });
    }

    // primed[i] = X̃'_i, v[i]: X̃'_i -> X̃_i, fp[i] = f'_{i+1}: X̃'_i -> X̃'_{i+1}.
    let xt = &z.objects[1..=k + 1];
    let f = &z.arrows[1..=k];
    let mut primed = alloc::vec![ObjId(0); k + 1];
    let mut v = alloc::vec![MorId(0); k + 1];
    let mut fp = alloc::vec![MorId(0); k];
    primed[k] = e.apex;
    v[k] = e.v;
    for i in (0..k).rev() {
        let p = s.pullback(v[i + 1], f[i])?;
        primed[i] = p.object;
        v[i] = p.pb;
        fp[i] = p.pa;
    }
    let y0 = tail_objects[0];

    let mut middle = Zigzag { objects: alloc::vec![x], arrows: alloc::vec![c.compose(x0, v[0])] };
    middle.objects.extend_from_slice(&primed);
    middle.arrows.extend_from_slice(&fp);
    middle.objects.extend_from_slice(tail_objects);
    middle.arrows.push(replacement.u);
    middle.arrows.extend_from_slice(tail_arrows);

    let mut output = Zigzag { objects: alloc::vec![x], arrows: alloc::vec![c.compose(x0, v[0])] };
    output.objects.extend_from_slice(&primed[..k]);
    output.arrows.extend_from_slice(&fp[..k - 1]);
    output.arrows.push(c.compose(e.f, fp[k - 1]));
    output.objects.extend_from_slice(tail_objects);
    output.arrows.extend_from_slice(tail_arrows);

    let mut to_input = alloc::vec![c.id(x)];
    to_input.extend_from_slice(&v);
    to_input.extend(ids(tail_objects));

    let mut to_output = alloc::vec![c.id(x)];
    to_output.extend(ids(&primed[..k]));
    to_output.push(e.f);
    to_output.extend(ids(tail_objects));

    let section = if c.is_identity(w) {
        let mut u = alloc::vec![MorId(0); k + 1];
        u[k] = replacement.u;
        for i in (0..k).rev() {
            let a = c.compose(u[i + 1], f[i]);
            u[i] = mediating(c, primed[i], fp[i], v[i], a, c.id(xt[i]))
                .ok_or_else(|| Error::MissingPullback(format!("no induced map into {}", c.obj_name(primed[i]))))?;
        }
        let mut ladder = alloc::vec![c.id(x)];
        ladder.extend_from_slice(&u[..k]);
        ladder.extend(ids(tail_objects));
        debug_assert_eq!(y0, xt[k]);
        Some(ladder)
    } else {
        None
    };
    Ok(Reduction { output, middle, to_input, to_output, section })
}
