//! Property sweeps over every functor between small categories: Quillen's
//! Theorem A, the fibre criterion for Grothendieck fibrations, cofinality
//! through fully faithful functors, pullbacks of left adjoints, and the
//! Thomason and Bousfield–Kan comparisons on derived diagrams.

use std::fmt;
use std::sync::Arc;

use fibrantkit_core::fincat::{
    enumerate_functors, find_isomorphism, find_right_adjoint, full_subcategory, is_grothendieck_fibration,
    pullback_category, strict_fibre, CatDiagram, SetDiagram,
};
use fibrantkit_core::homotopy::{
    elements_comparison, is_homotopy_cofinal, is_weakly_contractible, simplicial_map_evidence, thomason_comparison,
    weak_equivalence_evidence, Certificate,
};
use fibrantkit_core::{Error, FinCategory, Functor, Limits, MorId, ObjId, Verdict};

/// Categories larger than this are left out of sweeps.
pub const MAX_SWEEP_OBJECTS: usize = 5;
pub const MAX_SWEEP_MORPHISMS: usize = 64;

#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub dim: usize,
    pub limits: Limits,
    /// Functors enumerated per ordered pair of categories; a pair with more
    /// is counted as capped.
    pub functor_limit: usize,
}

/// Counts from one sweep. `premises` counts instances where the hypothesis
/// held, so that the conclusion was actually tested.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub instances: usize,
    pub premises: usize,
    pub capped: usize,
    pub contradictions: Vec<String>,
}

impl Tally {
    pub fn holds(&self) -> bool {
        self.contradictions.is_empty()
    }

    fn cap(&mut self, r: Result<Verdict, Error>) -> Result<Option<Verdict>, Error> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::SizeCapExceeded { .. }) => {
                self.capped += 1;
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    fn merge(&mut self, other: Tally) {
        self.instances += other.instances;
        self.premises += other.premises;
        self.capped += other.capped;
        self.contradictions.extend(other.contradictions);
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} instances, {} with premise, {} capped", self.instances, self.premises, self.capped)?;
        if let Some(c) = self.contradictions.first() {
            write!(f, "; {} contradictions, first: {c}", self.contradictions.len())?;
        }
        Ok(())
    }
}

/// Adds `c` to `pool` unless it is too big or isomorphic to a member.
pub fn add_to_pool(pool: &mut Vec<Arc<FinCategory>>, c: Arc<FinCategory>) {
    if c.object_count() > MAX_SWEEP_OBJECTS || c.morphism_count() > MAX_SWEEP_MORPHISMS {
        return;
    }
    let seen = pool.iter().any(|d| {
        d.object_count() == c.object_count() && d.morphism_count() == c.morphism_count() && find_isomorphism(d, &c).is_some()
    });
    if !seen {
        pool.push(c);
    }
}

/// Every functor between pool members, per ordered pair, or `None` for pairs
/// over the functor limit.
fn functor_pairs(pool: &[Arc<FinCategory>], limit: usize) -> Vec<(usize, usize, Option<Vec<Functor>>)> {
    let mut out = Vec::new();
    for (i, a) in pool.iter().enumerate() {
        for (j, b) in pool.iter().enumerate() {
            let fs = enumerate_functors(a, b, limit + 1);
            out.push((i, j, (fs.len() <= limit).then_some(fs)));
        }
    }
    out
}

fn describe(f: &Functor) -> String {
    let (s, t) = (f.source(), f.target());
    let objs: Vec<String> = s.objects().map(|x| format!("{}->{}", s.obj_name(x), t.obj_name(f.obj(x)))).collect();
    format!("[{}]", objs.join(" "))
}

/// Quillen's Theorem A: a homotopy cofinal functor is a weak equivalence.
pub fn theorem_a(pool: &[Arc<FinCategory>], cfg: &SweepConfig) -> Result<Tally, Error> {
    let mut t = Tally::default();
    for (_, _, fs) in functor_pairs(pool, cfg.functor_limit) {
        let Some(fs) = fs else {
            t.capped += 1;
            continue;
        };
        for f in fs {
            t.instances += 1;
            let Some(cof) = t.cap(is_homotopy_cofinal(&f, cfg.dim, &cfg.limits))? else { continue };
            if !cof.is_certified() {
                continue;
            }
            t.premises += 1;
            if let Some(w) = t.cap(weak_equivalence_evidence(&f, cfg.dim, &cfg.limits))? {
                if w.is_refuted() {
                    t.contradictions.push(format!("cofinal {} but nerve map {w}", describe(&f)));
                }
            }
        }
    }
    Ok(t)
}

/// Aggregated contractibility of the strict fibres of `p`.
pub fn fibre_verdict(p: &Functor, cfg: &SweepConfig) -> Result<Verdict, Error> {
    let mut all_certified = true;
    for b in p.target().objects() {
        let (fibre, _) = strict_fibre(p, b)?;
        let v = is_weakly_contractible(&fibre, cfg.dim, &cfg.limits)?;
        if v.is_refuted() {
            return Ok(v);
        }
        all_certified &= v.is_certified();
    }
    Ok(if all_certified {
        Verdict::Certified(Certificate::AllCommas)
    } else {
        Verdict::Consistent { checked_through: cfg.dim.saturating_sub(1) }
    })
}

/// For Grothendieck fibrations: contractible fibres and homotopy cofinality
/// never contradict each other.
pub fn fibre_cofinality(pool: &[Arc<FinCategory>], cfg: &SweepConfig) -> Result<Tally, Error> {
    let mut t = Tally::default();
    for (_, _, fs) in functor_pairs(pool, cfg.functor_limit) {
        let Some(fs) = fs else {
            t.capped += 1;
            continue;
        };
        for p in fs {
            t.instances += 1;
            if !is_grothendieck_fibration(&p).is_fibration() {
                continue;
            }
            t.premises += 1;
            let Some(fibres) = t.cap(fibre_verdict(&p, cfg))? else { continue };
            let Some(cof) = t.cap(is_homotopy_cofinal(&p, cfg.dim, &cfg.limits))? else { continue };
            if (fibres.is_certified() && cof.is_refuted()) || (fibres.is_refuted() && cof.is_certified()) {
                t.contradictions.push(format!("fibration {}: fibres {fibres}, cofinality {cof}", describe(&p)));
            }
        }
    }
    Ok(t)
}

/// If `G ∘ F` is homotopy cofinal and `G` fully faithful, then `F` is not
/// refuted cofinal.
pub fn cofinal_composite(pool: &[Arc<FinCategory>], cfg: &SweepConfig) -> Result<Tally, Error> {
    let mut t = Tally::default();
    let pairs = functor_pairs(pool, cfg.functor_limit);
    for (a, b, fs) in &pairs {
        let Some(fs) = fs else {
            t.capped += 1;
            continue;
        };
        for (b2, _, gs) in &pairs {
            if b2 != b {
                continue;
            }
            let Some(gs) = gs else { continue };
            for g in gs.iter().filter(|g| g.is_fully_faithful()) {
                for f in fs {
                    t.instances += 1;
                    let gf = f.then(g)?;
                    let Some(v) = t.cap(is_homotopy_cofinal(&gf, cfg.dim, &cfg.limits))? else { continue };
                    if !v.is_certified() {
                        continue;
                    }
                    t.premises += 1;
                    if let Some(vf) = t.cap(is_homotopy_cofinal(f, cfg.dim, &cfg.limits))? {
                        if vf.is_refuted() {
                            t.contradictions.push(format!("GF cofinal but F {} (pool {a}->{b}) {vf}", describe(f)));
                        }
                    }
                }
            }
        }
    }
    Ok(t)
}

/// In a pullback square along a Grothendieck fibration, the pullback of a
/// functor with a right adjoint has a right adjoint.
pub fn adjoint_pullback(pool: &[Arc<FinCategory>], cfg: &SweepConfig) -> Result<Tally, Error> {
    let mut t = Tally::default();
    let pairs = functor_pairs(pool, cfg.functor_limit);
    for (_, c, fs) in &pairs {
        let Some(fs) = fs else {
            t.capped += 1;
            continue;
        };
        let lefts: Vec<&Functor> = fs.iter().filter(|f| find_right_adjoint(f).is_some()).collect();
        if lefts.is_empty() {
            continue;
        }
        for (_, c2, ps) in &pairs {
            if c2 != c {
                continue;
            }
            let Some(ps) = ps else { continue };
            for p in ps.iter().filter(|p| is_grothendieck_fibration(p).is_fibration()) {
                for f in &lefts {
                    t.instances += 1;
                    t.premises += 1;
                    let pb = match pullback_category(f, p, &cfg.limits) {
                        Ok(pb) => pb,
                        Err(Error::SizeCapExceeded { .. }) => {
                            t.capped += 1;
                            continue;
                        }
                        Err(e) => return Err(e),
                    };
                    if find_right_adjoint(&pb.right).is_none() {
                        t.contradictions.push(format!(
                            "left adjoint {} pulled back along fibration {} has no right adjoint",
                            describe(f),
                            describe(p)
                        ));
                    }
                }
            }
        }
    }
    Ok(t)
}

/// Objects `a` with a morphism `x -> a`.
fn up_set(c: &FinCategory, x: ObjId) -> Vec<ObjId> {
    c.objects().filter(|&a| !c.hom(x, a).is_empty()).collect()
}

/// The diagram `x ↦ {a : Hom(x, a) ≠ ∅}` (full subcategories), where
/// `f: x' -> x` acts by the inclusion of the smaller up-set.
pub fn up_set_diagram(c: &Arc<FinCategory>) -> Result<CatDiagram, Error> {
    let sets: Vec<Vec<ObjId>> = c.objects().map(|x| up_set(c, x)).collect();
    let values: Vec<Arc<FinCategory>> = sets.iter().map(|s| full_subcategory(c, s).0).collect();
    let functors = c
        .morphisms()
        .map(|f| {
            let (from, to) = (c.cod(f).idx(), c.dom(f).idx());
            let (src, dst) = (&values[from], &values[to]);
            let obj: Vec<ObjId> = sets[from]
                .iter()
                .map(|a| ObjId(sets[to].iter().position(|b| b == a).expect("up-sets shrink along arrows") as u32))
                .collect();
            let mor: Vec<MorId> = src
                .morphisms()
                .map(|m| {
                    let (d, e) = (obj[src.dom(m).idx()], obj[src.cod(m).idx()]);
                    let name = src.mor_name(m);
                    *dst.hom(d, e).iter().find(|&&n| dst.mor_name(n) == name).expect("full subcategory")
                })
                .collect();
            Functor::new(src.clone(), dst.clone(), obj, mor)
        })
        .collect::<Result<Vec<_>, _>>()?;
    CatDiagram::new(c.clone(), values, functors)
}

/// The representable presheaf `Hom(-, d)`.
pub fn representable(c: &Arc<FinCategory>, d: ObjId) -> Result<SetDiagram, Error> {
    let sizes = c.objects().map(|x| c.hom(x, d).len()).collect();
    let maps = c
        .morphisms()
        .map(|f| {
            c.hom(c.cod(f), d)
                .iter()
                .map(|&u| c.hom(c.dom(f), d).iter().position(|&m| m == c.compose(u, f)).expect("composite") as u32)
                .collect()
        })
        .collect();
    SetDiagram::new(c.clone(), sizes, maps)
}

/// Thomason comparison on `x`: not refuted.
pub fn thomason_instance(x: &CatDiagram, cfg: &SweepConfig) -> Result<Tally, Error> {
    let mut t = Tally { instances: 1, ..Tally::default() };
    match thomason_comparison(x, cfg.dim, &cfg.limits) {
        Ok(cmp) => {
            t.premises += 1;
            let v = simplicial_map_evidence(&cmp.map);
            if v.is_refuted() {
                t.contradictions.push(format!("comparison over {} objects {v}", x.index().object_count()));
            }
        }
        Err(Error::SizeCapExceeded { .. }) => t.capped += 1,
        Err(e) => return Err(e),
    }
    Ok(t)
}

/// For a set-valued diagram both comparisons must be simplicial
/// isomorphisms.
pub fn elements_instance(x: &SetDiagram, cfg: &SweepConfig) -> Result<Tally, Error> {
    let mut t = Tally { instances: 1, ..Tally::default() };
    let run = || -> Result<(bool, bool), Error> {
        let e = elements_comparison(x, cfg.dim, &cfg.limits)?;
        let th = thomason_comparison(&x.to_cat_diagram(), cfg.dim, &cfg.limits)?;
        Ok((e.map.is_isomorphism(), th.map.is_isomorphism()))
    };
    match run() {
        Ok((elements, thomason)) => {
            t.premises += 1;
            if !elements {
                t.contradictions.push("hocolim -> N(el X) is not an isomorphism".into());
            }
            if !thomason {
                t.contradictions.push("Thomason comparison on a set-valued diagram is not an isomorphism".into());
            }
        }
        Err(Error::SizeCapExceeded { .. }) => t.capped += 1,
        Err(e) => return Err(e),
    }
    Ok(t)
}

/// Thomason on the up-set diagram of every pool member.
pub fn thomason_sweep(pool: &[Arc<FinCategory>], cfg: &SweepConfig) -> Result<Tally, Error> {
    let mut t = Tally::default();
    for c in pool {
        t.merge(thomason_instance(&up_set_diagram(c)?, cfg)?);
    }
    Ok(t)
}

/// Bousfield–Kan on every representable of every pool member.
pub fn elements_sweep(pool: &[Arc<FinCategory>], cfg: &SweepConfig) -> Result<Tally, Error> {
    let mut t = Tally::default();
    for c in pool {
        for d in c.objects() {
            t.merge(elements_instance(&representable(c, d)?, cfg)?);
        }
    }
    Ok(t)
}
