//! The theorem suite: every check on one fixture, collected into a report.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use fibrantkit_core::fibrant::{
    build_R, certify_with_class, check_cfo_axioms, check_cisinski_axioms, cocycle_category, compose_cocycles,
    correspondence_fibration, fibre_comma_isomorphism, find_pullback, homotopy_hom, insert_identity, is_weq_ladder,
    reduce_zigzag, reduction_directions, replacement_for, AxiomReport, CfoStructure, ConditionStatus,
    CorrespondenceFibration, HomotopyClasses,
};
use fibrantkit_core::fincat::{components, full_subcategory, is_grothendieck_fibration, strict_fibre, Functor};
use fibrantkit_core::homotopy::{is_weakly_contractible, weak_equivalence_evidence};
use fibrantkit_core::relcat::{
    aggregate_fractions, evaluate_instance, fraction_instances, insertion_functor, FractionsConfig, Subject,
};
use fibrantkit_core::{Error, FinCategory, Limits, MorId, ObjId, Verdict};
use rayon::prelude::*;

use crate::fixture::Fixture;
use crate::report::{Check, Report, Status};
use crate::sweeps::{self, SweepConfig, Tally};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Truncation `T`.
    pub dim: usize,
    pub kmax: usize,
    pub lmax: usize,
    pub limits: Limits,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
    /// Record wall time per check. Off by default so that reports are
    /// reproducible byte for byte.
    pub timings: bool,
    pub functor_limit: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            dim: fibrantkit_core::homotopy::DEFAULT_TRUNCATION,
            kmax: 1,
            lmax: 1,
            limits: Limits::default(),
            threads: None,
            timings: false,
            functor_limit: 2_000,
        }
    }
}

impl SuiteConfig {
    pub fn sweep(&self) -> SweepConfig {
        SweepConfig { dim: self.dim, limits: self.limits, functor_limit: self.functor_limit }
    }
}

struct Ctx<'a> {
    fixture: &'a Fixture,
    config: &'a SuiteConfig,
    axioms: AxiomReport,
    pool: Vec<Arc<FinCategory>>,
}

impl Ctx<'_> {
    fn s(&self) -> &CfoStructure {
        &self.fixture.structure
    }

    /// Why structure-dependent checks cannot run, if they cannot.
    fn invalid(&self) -> Option<String> {
        let failed = self.axioms.failed();
        (!failed.is_empty()).then(|| format!("structure fails axioms {}", failed.join(", ")))
    }
}

pub const EXPECT_ID: &str = "99.expect";

type Job = fn(&Ctx) -> Vec<Check>;

const JOBS: &[Job] = &[
    axioms_cfo,
    axioms_cisinski,
    sweep_fibre_cofinality,
    sweep_cofinal_composite,
    sweep_adjoint_pullback,
    sweep_theorem_a,
    sweep_elements,
    sweep_thomason,
    calculus,
    fractions,
    r_category,
    special_cocycles,
    replete_subcategories,
    hom_oracle,
    hom_composition,
    reduction_round_trip,
];

/// The categories the property sweeps run over: the base, its opposite,
/// its weak equivalences, the point and the arrow, when small enough.
pub fn sweep_pool(fixture: &Fixture) -> Vec<Arc<FinCategory>> {
    let c = fixture.category();
    let mut pool = Vec::new();
    sweeps::add_to_pool(&mut pool, c.clone());
    sweeps::add_to_pool(&mut pool, Arc::new(c.opposite()));
    let (w, _) = fixture.rel().weq_subcategory();
    sweeps::add_to_pool(&mut pool, w.base().clone());
    sweeps::add_to_pool(&mut pool, Arc::new(FinCategory::terminal()));
    sweeps::add_to_pool(&mut pool, Arc::new(FinCategory::ordinal(1)));
    pool
}

/// Runs every check on `fixture`.
pub fn run_suite(fixture: &Fixture, config: &SuiteConfig) -> Report {
    let ctx = Ctx { fixture, config, axioms: check_cfo_axioms(&fixture.structure), pool: sweep_pool(fixture) };
    let run = || -> Vec<Check> {
        JOBS.par_iter()
            .flat_map_iter(|job| {
                let start = Instant::now();
                let mut checks = job(&ctx);
                if config.timings {
                    let ms = start.elapsed().as_millis() as u64;
                    checks.iter_mut().for_each(|c| c.ms = ms);
                }
                checks
            })
            .collect()
    };
    let mut checks = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(run),
        None => run(),
    };
    checks.push(expectation(fixture, &checks));
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    Report { suite: "fibrantkit".into(), fixture: fixture.name.clone(), checks }
}

fn pass_fail(id: &str, anchor: &str, witness: Option<String>) -> Check {
    match witness {
        None => Check::new(id, anchor, Status::Pass, ""),
        Some(w) => Check::new(id, anchor, Status::Fail, w),
    }
}

fn verdict_check(id: &str, anchor: &str, v: &Verdict, witness: impl Into<String>) -> Check {
    let mut w: String = witness.into();
    if !w.is_empty() {
        w.push_str("; ");
    }
    w.push_str(&v.to_string());
    Check::new(id, anchor, Status::from_verdict(v), w)
}

fn error_check(id: &str, anchor: &str, e: &Error) -> Check {
    match e {
        Error::SizeCapExceeded { what, limit } => Check::new(id, anchor, Status::SizeCap, format!("{what} over {limit}")),
        other => Check::new(id, anchor, Status::Fail, other.to_string()),
    }
}

fn skipped(id: &str, anchor: &str, why: &str) -> Check {
    Check::new(id, anchor, Status::Skipped, why)
}

fn axioms_cfo(ctx: &Ctx) -> Vec<Check> {
    let anchors = [
        ("A", "category of fibrant objects, axiom A: weak equivalences satisfy 2-out-of-3 and contain the isomorphisms"),
        ("B", "category of fibrant objects, axiom B: fibrations contain the isomorphisms and compose"),
        ("C", "category of fibrant objects, axiom C: pullbacks along (trivial) fibrations"),
        ("D", "category of fibrant objects, axiom D: path objects"),
        ("E", "category of fibrant objects, axiom E: terminal object, all objects fibrant"),
        ("products", "category of fibrant objects: chosen binary products"),
    ];
    anchors
        .iter()
        .map(|&(axiom, anchor)| {
            let witness = ctx.axioms.outcome(axiom).and_then(|o| o.witness.clone());
            pass_fail(&format!("01.cfo.{axiom}"), anchor, witness)
        })
        .collect()
}

fn axioms_cisinski(ctx: &Ctx) -> Vec<Check> {
    let report = check_cisinski_axioms(&ctx.s().to_cisinski());
    let anchors = [
        ("D0", "fibration category axiom D0: terminal object, fibrant objects"),
        ("D1", "fibration category axiom D1: category with weak equivalences"),
        ("D2", "fibration category axiom D2: fibrations between fibrant objects"),
        ("D3", "fibration category axiom D3: trivial fibrations between fibrant objects"),
        ("D4", "fibration category axiom D4: factorisation into a weak equivalence and a fibration"),
    ];
    anchors
        .iter()
        .map(|&(axiom, anchor)| {
            let witness = report.outcome(axiom).and_then(|o| o.witness.clone());
            pass_fail(&format!("02.cisinski.{axiom}"), anchor, witness)
        })
        .collect()
}

fn tally_check(id: &str, anchor: &str, r: Result<Tally, Error>) -> Vec<Check> {
    vec![match r {
        Ok(t) if !t.holds() => Check::new(id, anchor, Status::Fail, t.to_string()),
        Ok(t) if t.instances == 0 && t.capped > 0 => Check::new(id, anchor, Status::SizeCap, t.to_string()),
        Ok(t) => Check::new(id, anchor, Status::Pass, t.to_string()),
        Err(e) => error_check(id, anchor, &e),
    }]
}

fn sweep_fibre_cofinality(ctx: &Ctx) -> Vec<Check> {
    tally_check(
        "03.sweep.fibre-cofinality",
        "Grothendieck fibrations: weakly contractible fibres iff homotopy cofinal",
        sweeps::fibre_cofinality(&ctx.pool, &ctx.config.sweep()),
    )
}

fn sweep_cofinal_composite(ctx: &Ctx) -> Vec<Check> {
    tally_check(
        "03.sweep.cofinal-composite",
        "GF homotopy cofinal and G fully faithful implies F homotopy cofinal",
        sweeps::cofinal_composite(&ctx.pool, &ctx.config.sweep()),
    )
}

fn sweep_adjoint_pullback(ctx: &Ctx) -> Vec<Check> {
    tally_check(
        "03.sweep.adjoint-pullback",
        "pullback of a left adjoint along a Grothendieck fibration is a left adjoint",
        sweeps::adjoint_pullback(&ctx.pool, &ctx.config.sweep()),
    )
}

fn sweep_theorem_a(ctx: &Ctx) -> Vec<Check> {
    tally_check("04.sweep.theorem-a", "Quillen's Theorem A", sweeps::theorem_a(&ctx.pool, &ctx.config.sweep()))
}

fn sweep_elements(ctx: &Ctx) -> Vec<Check> {
    tally_check(
        "05.bousfield-kan",
        "homotopy colimit of a set-valued diagram is the nerve of its category of elements",
        sweeps::elements_sweep(&ctx.pool, &ctx.config.sweep()),
    )
}

fn sweep_thomason(ctx: &Ctx) -> Vec<Check> {
    tally_check(
        "05.thomason",
        "Thomason's theorem: homotopy colimit of nerves versus nerve of the oplax colimit",
        sweeps::thomason_sweep(&ctx.pool, &ctx.config.sweep()),
    )
}

const CONDITION_ANCHORS: [&str; 5] = [
    "calculus of cocycles, condition 1: V closed under pullback",
    "calculus of cocycles, condition 2: isomorphisms lie in V",
    "calculus of cocycles, condition 3: functional correspondences form a Grothendieck fibration over W x W",
    "calculus of cocycles, condition 4: functional correspondences give V-cocycles",
    "calculus of cocycles, condition 5: functional correspondences homotopy cofinal in cocycles",
];

fn calculus(ctx: &Ctx) -> Vec<Check> {
    let ids: Vec<String> = (1..=5).map(|i| format!("06.calculus.condition{i}")).collect();
    if let Some(why) = ctx.invalid() {
        return ids.iter().zip(CONDITION_ANCHORS).map(|(id, a)| skipped(id, a, &why)).collect();
    }
    let report = ctx
        .fixture
        .v_class()
        .map_err(|e| Error::Precondition(e.to_string()))
        .and_then(|v| certify_with_class(ctx.s(), &v, ctx.config.dim, &ctx.config.limits));
    let report = match report {
        Ok(r) => r,
        Err(e) => return ids.iter().zip(CONDITION_ANCHORS).map(|(id, a)| error_check(id, a, &e)).collect(),
    };
    let mut checks: Vec<Check> = report
        .conditions
        .iter()
        .zip(&ids)
        .zip(CONDITION_ANCHORS)
        .map(|((c, id), anchor)| match c {
            ConditionStatus::Passed => Check::new(id, anchor, Status::Pass, ""),
            ConditionStatus::Failed(w) => Check::new(id, anchor, Status::Fail, w.clone()),
            ConditionStatus::SizeCap { what, limit } => {
                Check::new(id, anchor, Status::SizeCap, format!("{what} over {limit}"))
            }
        })
        .collect();
    let capped = report.pairs.iter().filter(|p| p.verdict().is_none()).count();
    let c = ctx.s().base();
    let refuted: Vec<String> = report
        .pairs
        .iter()
        .filter(|p| p.verdict().is_some_and(Verdict::is_refuted))
        .map(|p| format!("({},{})", c.obj_name(p.x), c.obj_name(p.y)))
        .collect();
    let mut witness = format!("{} pairs, {} capped", report.pairs.len(), capped);
    if !refuted.is_empty() {
        witness.push_str(&format!(", refuted at {}", refuted.join(" ")));
    }
    checks.push(verdict_check(&ids[4], CONDITION_ANCHORS[4], &report.condition5(), witness));
    checks
}

fn fractions(ctx: &Ctx) -> Vec<Check> {
    let (id, anchor) = ("07.fractions", "homotopical calculus of right fractions: insertion functors are weak equivalences");
    let c = ctx.fixture.rel();
    let config = FractionsConfig { kmax: ctx.config.kmax, lmax: ctx.config.lmax, dim: ctx.config.dim, include_w: None };
    let keys = fraction_instances(c, &config);
    let w = keys.iter().any(|k| k.subject == Subject::Weq).then(|| c.weq_subcategory().0);
    let instances: Result<Vec<_>, Error> = keys
        .into_par_iter()
        .map(|key| evaluate_instance(c, w.as_ref(), key, config.dim, &ctx.config.limits))
        .collect();
    match instances {
        Ok(instances) => {
            let report = aggregate_fractions(config, instances);
            let mut witness = format!("{} instances, {} capped", report.instances.len(), report.size_capped());
            if let Some(r) = report.refuted().next() {
                witness.push_str(&format!(", first refuted (k={}, l={}, {}, {})", r.key.k, r.key.l, r.x_name, r.y_name));
            }
            let all_capped = !report.instances.is_empty() && report.size_capped() == report.instances.len();
            if all_capped {
                vec![Check::new(id, anchor, Status::SizeCap, witness)]
            } else {
                vec![verdict_check(id, anchor, &report.overall, witness)]
            }
        }
        Err(e) => vec![error_check(id, anchor, &e)],
    }
}

fn r_category(ctx: &Ctx) -> Vec<Check> {
    let ids = [
        ("08.r.fibration", "auxiliary category R: projection to weak equivalences is a Grothendieck fibration"),
        ("08.r.fibres", "auxiliary category R: fibres weakly contractible"),
        ("08.r.comma", "auxiliary category R: fibre over w isomorphic to a comma category"),
    ];
    if let Some(why) = ctx.invalid() {
        return ids.iter().map(|(id, a)| skipped(id, a, &why)).collect();
    }
    let (s, limits) = (ctx.s(), &ctx.config.limits);
    let r = match build_R(s, limits) {
        Ok(r) => r,
        Err(e) => return ids.iter().map(|(id, a)| error_check(id, a, &e)).collect(),
    };
    let c = s.base();
    let fib = is_grothendieck_fibration(&r.projection);
    let mut out = vec![Check::new(
        ids[0].0,
        ids[0].1,
        if fib.is_fibration() { Status::Pass } else { Status::Fail },
        format!("{} objects, {} morphisms over {} weak equivalences", r.category.object_count(), r.category.morphism_count(), r.weq_objects.len()),
    )];
    let mut worst: Option<Verdict> = None;
    let mut comma_defect = None;
    let mut capped = 0;
    for &w in &r.weq_objects {
        let b = r.weq_object(w).expect("weq object");
        let v = strict_fibre(&r.projection, b).and_then(|(f, _)| is_weakly_contractible(&f, ctx.config.dim, limits));
        match v {
            Ok(v) => {
                let rank = |v: &Verdict| match v {
                    Verdict::Certified(_) => 0,
                    Verdict::Consistent { .. } => 1,
                    Verdict::Refuted(_) => 2,
                };
                if worst.as_ref().is_none_or(|cur| rank(&v) > rank(cur)) {
                    worst = Some(v);
                }
            }
            Err(Error::SizeCapExceeded { .. }) => capped += 1,
            Err(e) => return vec![out.remove(0), error_check(ids[1].0, ids[1].1, &e), error_check(ids[2].0, ids[2].1, &e)],
        }
        if comma_defect.is_none() {
            match fibre_comma_isomorphism(s, &r, w, limits) {
                Ok(cmp) if cmp.isomorphism.is_bijective() => {}
                Ok(_) => comma_defect = Some(format!("fibre over {} is not isomorphic to the comma category", c.mor_name(w))),
                Err(Error::SizeCapExceeded { .. }) => {}
                Err(e) => comma_defect = Some(e.to_string()),
            }
        }
    }
    let witness = format!("{} fibres, {} capped", r.weq_objects.len(), capped);
    out.push(match worst {
        Some(v) => verdict_check(ids[1].0, ids[1].1, &v, witness),
        None => Check::new(ids[1].0, ids[1].1, if capped > 0 { Status::SizeCap } else { Status::Pass }, witness),
    });
    out.push(pass_fail(ids[2].0, ids[2].1, comma_defect));
    out
}

fn special_cocycles(ctx: &Ctx) -> Vec<Check> {
    let (id, anchor) = ("09.cocycles.special", "special cocycles: Cocyc_V(X,Y) -> Cocyc(X,Y) is a weak homotopy equivalence");
    if let Some(why) = ctx.invalid() {
        return vec![skipped(id, anchor, &why)];
    }
    let s = ctx.s();
    let v = s.trivial_fibrations();
    let mut worst = Verdict::Certified(fibrantkit_core::homotopy::Certificate::AllInstances);
    let (mut pairs, mut capped) = (0, 0);
    for x in s.base().objects() {
        for y in s.base().objects() {
            pairs += 1;
            let verdict = cocycle_category(s, &v, x, y, &ctx.config.limits)
                .and_then(|coc| weak_equivalence_evidence(&coc.inclusion, ctx.config.dim, &ctx.config.limits));
            match verdict {
                Ok(Verdict::Refuted(d)) => {
                    let c = s.base();
                    return vec![verdict_check(id, anchor, &Verdict::Refuted(d), format!("at ({},{})", c.obj_name(x), c.obj_name(y)))];
                }
                Ok(v @ Verdict::Consistent { .. }) => worst = v,
                Ok(Verdict::Certified(_)) => {}
                Err(Error::SizeCapExceeded { .. }) => capped += 1,
                Err(e) => return vec![error_check(id, anchor, &e)],
            }
        }
    }
    if capped > 0 && worst.is_certified() {
        worst = Verdict::Consistent { checked_through: ctx.config.dim.saturating_sub(1) };
    }
    vec![verdict_check(id, anchor, &worst, format!("{pairs} pairs, {capped} capped"))]
}

/// Full subcategories that are unions of weak-equivalence components:
/// cocycles between their objects have their apex inside, trivial
/// fibrations pull back inside, and the correspondence fibration restricted
/// over `W_D x W_D` is still a Grothendieck fibration.
fn replete_subcategories(ctx: &Ctx) -> Vec<Check> {
    let (id, anchor) = ("09.cocycles.replete", "homotopically replete full subcategories inherit the calculus of cocycles");
    if let Some(why) = ctx.invalid() {
        return vec![skipped(id, anchor, &why)];
    }
    let s = ctx.s();
    let (w, _) = s.rel().weq_subcategory();
    let component = components(w.base());
    let count = component.iter().max().map_or(0, |m| m + 1);
    if count < 2 {
        return vec![Check::new(id, anchor, Status::Pass, "no proper replete subcategory")];
    }
    let fib = match correspondence_fibration(s, &ctx.config.limits) {
        Ok(f) => f,
        Err(e) => return vec![error_check(id, anchor, &e)],
    };
    let mut pair_of = vec![(ObjId(0), ObjId(0)); fib.base.object_count()];
    for (&pair, &b) in &fib.base_objects {
        pair_of[b.idx()] = pair;
    }
    let masks: Vec<u64> = (1..(1u64 << count.min(12)) - 1).take(32).collect();
    for &mask in &masks {
        let inside = |x: ObjId| mask >> component[x.idx()] & 1 == 1;
        if let Some(defect) = replete_defect(s, &fib, &pair_of, &inside) {
            return vec![Check::new(id, anchor, Status::Fail, format!("component set {mask:#b}: {defect}"))];
        }
    }
    vec![Check::new(id, anchor, Status::Pass, format!("{} replete subcategories", masks.len()))]
}

fn replete_defect(
    s: &CfoStructure,
    fib: &CorrespondenceFibration,
    pair_of: &[(ObjId, ObjId)],
    inside: &dyn Fn(ObjId) -> bool,
) -> Option<String> {
    let c = s.base();
    for z in &fib.cocycles {
        if inside(z.domain(c)) && inside(z.codomain(c)) && !inside(z.apex) {
            return Some(format!("cocycle apex {} escapes", c.obj_name(z.apex)));
        }
    }
    for f in c.morphisms().filter(|&f| s.is_trivial_fibration(f) && inside(c.dom(f)) && inside(c.cod(f))) {
        for &g in c.incoming(c.cod(f)).iter().filter(|&&g| inside(c.dom(g))) {
            match find_pullback(c, f, g) {
                Some(p) if inside(p.object) && s.is_trivial_fibration(p.pb) => {}
                Some(p) => return Some(format!("pullback {} of {} along {} leaves V or D", c.mor_name(p.pb), c.mor_name(f), c.mor_name(g))),
                None => return Some(format!("no pullback of {} along {}", c.mor_name(f), c.mor_name(g))),
            }
        }
    }
    let in_square = |b: ObjId| {
        let (x, y) = pair_of[b.idx()];
        inside(x) && inside(y)
    };
    let base_keep: Vec<ObjId> = fib.base.objects().filter(|&b| in_square(b)).collect();
    let total_keep: Vec<ObjId> = fib.fcorr.objects().filter(|&e| in_square(fib.fcorr_projection.obj(e))).collect();
    let (base, base_incl) = full_subcategory(&fib.base, &base_keep);
    let (total, total_incl) = full_subcategory(&fib.fcorr, &total_keep);
    let obj = total
        .objects()
        .map(|e| {
            let b = fib.fcorr_projection.obj(total_incl.obj(e));
            ObjId(base_keep.iter().position(|&k| k == b).expect("kept base object") as u32)
        })
        .collect();
    let mor = total
        .morphisms()
        .map(|m| {
            let b = fib.fcorr_projection.mor(total_incl.mor(m));
            MorId(base_incl.morphism_map().iter().position(|&k| k == b).expect("kept base morphism") as u32)
        })
        .collect();
    match Functor::new(total, base, obj, mor) {
        Ok(p) if is_grothendieck_fibration(&p).is_fibration() => None,
        Ok(_) => Some("restricted correspondence projection is not a fibration".into()),
        Err(e) => Some(e.to_string()),
    }
}

fn hom_oracle(ctx: &Ctx) -> Vec<Check> {
    let (id, anchor) = ("10.hom.oracle", "hom-sets of the homotopy category are components of V-cocycles");
    let f = ctx.fixture;
    if f.expect.hom.is_empty() {
        return vec![skipped(id, anchor, "no oracle declared")];
    }
    let results: Vec<Result<Option<String>, Error>> = f
        .expect
        .hom
        .par_iter()
        .map(|(key, &expected)| {
            let (x, y) = f.object_pair(key).map_err(|e| Error::Precondition(e.to_string()))?;
            match homotopy_hom(&f.structure, x, y, &ctx.config.limits) {
                Ok(h) if h.len() == expected => Ok(None),
                Ok(h) => Ok(Some(format!("|[{key}]| = {} but the oracle says {expected}", h.len()))),
                Err(Error::SizeCapExceeded { .. }) => Ok(Some(String::new())),
                Err(e) => Err(e),
            }
        })
        .collect();
    let mut capped = 0;
    for r in results {
        match r {
            Ok(None) => {}
            Ok(Some(w)) if w.is_empty() => capped += 1,
            Ok(Some(w)) => return vec![Check::new(id, anchor, Status::Fail, w)],
            Err(e) => return vec![error_check(id, anchor, &e)],
        }
    }
    let n = f.expect.hom.len();
    let status = if capped == n { Status::SizeCap } else { Status::Pass };
    vec![Check::new(id, anchor, status, format!("{} pairs, {capped} capped", n))]
}

fn hom_composition(ctx: &Ctx) -> Vec<Check> {
    let (id, anchor) = ("10.hom.composition", "composition of cocycles descends to homotopy classes");
    if let Some(why) = ctx.invalid() {
        return vec![skipped(id, anchor, &why)];
    }
    let s = ctx.s();
    let c = s.base();
    let n = c.object_count();
    let classes: Vec<Result<HomotopyClasses, Error>> =
        (0..n * n).into_par_iter().map(|k| homotopy_hom(s, ObjId((k / n) as u32), ObjId((k % n) as u32), &ctx.config.limits)).collect();
    let get = |x: usize, y: usize| classes[x * n + y].as_ref().ok();
    let mut triples = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (Some(h1), Some(h2), Some(h3)) = (get(x, y), get(y, z), get(x, z)) else { continue };
                triples += 1;
                let mut table = std::collections::BTreeMap::new();
                for (i, a) in h1.cocycles.cocycles().enumerate() {
                    for (j, b) in h2.cocycles.cocycles().enumerate() {
                        let class = match compose_cocycles(s, a, b).map(|ab| h3.class_of(ab)) {
                            Ok(Some(k)) => k,
                            Ok(None) => return vec![Check::new(id, anchor, Status::Fail, "composite is not a V-cocycle")],
                            Err(e) => return vec![error_check(id, anchor, &e)],
                        };
                        let key = (h1.component[i], h2.component[j]);
                        if *table.entry(key).or_insert(class) != class {
                            return vec![Check::new(
                                id,
                                anchor,
                                Status::Fail,
                                format!("composite class depends on representatives at ({},{},{})", c.obj_name(ObjId(x as u32)), c.obj_name(ObjId(y as u32)), c.obj_name(ObjId(z as u32))),
                            )];
                        }
                    }
                }
            }
        }
    }
    let capped = classes.iter().filter(|r| r.is_err()).count();
    vec![Check::new(id, anchor, Status::Pass, format!("{triples} triples, {capped} hom-sets capped"))]
}

fn reduction_round_trip(ctx: &Ctx) -> Vec<Check> {
    let (id, anchor) = ("11.reduction", "pullback reduction of zigzags: levelwise weak equivalences back to the input");
    if let Some(why) = ctx.invalid() {
        return vec![skipped(id, anchor, &why)];
    }
    let s = ctx.s();
    let c = s.base();
    let mut checked = 0;
    for x in c.objects() {
        for y in c.objects() {
            let (src, tgt, ins) = match insertion_functor(s.rel(), 1, 1, x, y, &ctx.config.limits) {
                Ok(t) => t,
                Err(e) => return vec![error_check(id, anchor, &e)],
            };
            for o in src.category.objects() {
                let z0 = src.zigzag(o);
                let z = tgt.zigzag(ins.obj(o));
                let red = match replacement_for(s, z.arrows[2]).and_then(|r| reduce_zigzag(s, z, 1, &r)) {
                    Ok(r) => r,
                    Err(e) => return vec![error_check(id, anchor, &e)],
                };
                let inner = reduction_directions(1, 1, true);
                let ok = red.section.as_ref().is_some_and(|u| is_weq_ladder(s, &reduction_directions(1, 1, false), z0, &red.output, u))
                    && is_weq_ladder(s, &inner, &red.middle, z, &red.to_input)
                    && is_weq_ladder(s, &inner, &red.middle, &insert_identity(c, &red.output, 2), &red.to_output);
                if !ok {
                    return vec![Check::new(id, anchor, Status::Fail, format!("ladder fails for a zigzag from {} to {}", c.obj_name(x), c.obj_name(y)))];
                }
                checked += 1;
            }
        }
    }
    vec![Check::new(id, anchor, Status::Pass, format!("{checked} zigzags"))]
}

/// Compares the failing checks with those the fixture declares.
fn expectation(fixture: &Fixture, checks: &[Check]) -> Check {
    let (id, anchor) = (EXPECT_ID, "fixture metadata: exactly the declared failures");
    let failing: BTreeSet<&str> = checks.iter().filter(|c| c.status.is_failure()).map(|c| c.id.as_str()).collect();
    let declared: BTreeSet<&str> = fixture.expect.failures.iter().map(String::as_str).collect();
    if failing == declared {
        return Check::new(id, anchor, Status::Pass, format!("{} declared failures", declared.len()));
    }
    let unexpected: Vec<&str> = failing.difference(&declared).copied().collect();
    let missing: Vec<&str> = declared.difference(&failing).copied().collect();
    Check::new(id, anchor, Status::Fail, format!("unexpected: [{}]; missing: [{}]", unexpected.join(", "), missing.join(", ")))
}
