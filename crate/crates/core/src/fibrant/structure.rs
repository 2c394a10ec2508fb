use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::limits::{find_product, find_pullback, is_product, mediating, Product, Pullback};
use crate::error::{Error, Result};
use crate::fincat::{comma_over, FinCategory, Functor, MorId, ObjId};
use crate::relcat::RelCategory;
use crate::Limits;

/// A chosen path object: `i: X -> P`, `p0, p1: P -> X` with `p0 ∘ i = p1 ∘ i = id`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PathObject {
    pub object: ObjId,
    pub i: MorId,
    pub p0: MorId,
    pub p1: MorId,
}

/// A relative category with fibrations, a terminal object and chosen
/// products and path objects.
///
/// Nothing beyond the shapes of the chosen data is checked on construction;
/// [`check_cfo_axioms`] reports which axioms hold.
#[derive(Clone, Debug)]
pub struct CfoStructure {
    rel: RelCategory,
    fib: Vec<bool>,
    terminal: Option<ObjId>,
    products: BTreeMap<(ObjId, ObjId), Product>,
    path_objects: BTreeMap<ObjId, PathObject>,
}

impl CfoStructure {
    pub fn new(
        rel: RelCategory,
        fib: impl IntoIterator<Item = MorId>,
        terminal: Option<ObjId>,
        products: BTreeMap<(ObjId, ObjId), Product>,
        path_objects: BTreeMap<ObjId, PathObject>,
    ) -> Result<Self> {
        let c = rel.base().clone();
        let fib = flags(&c, fib)?;
        let obj = |x: ObjId| {
            if x.idx() < c.object_count() {
                Ok(x)
            } else {
                Err(Error::UnknownObject(format!("#{}", x.0)))
            }
        };
        let arrow = |f: MorId, dom: ObjId, cod: ObjId, what: &str| {
            if f.idx() >= c.morphism_count() {
                return Err(Error::UnknownMorphism(format!("#{}", f.0)));
            }
            if c.dom(f) != dom || c.cod(f) != cod {
                return Err(Error::Precondition(format!(
                    "{what}: {} is not a morphism {} -> {}",
                    c.mor_name(f),
                    c.obj_name(dom),
                    c.obj_name(cod)
                )));
            }
            Ok(())
        };
        if let Some(t) = terminal {
            obj(t)?;
        }
        for (&(x, y), p) in &products {
            obj(x)?;
            obj(y)?;
            obj(p.object)?;
            arrow(p.proj1, p.object, x, "product projection")?;
            arrow(p.proj2, p.object, y, "product projection")?;
        }
        for (&x, p) in &path_objects {
            obj(x)?;
            obj(p.object)?;
            arrow(p.i, x, p.object, "path object")?;
            arrow(p.p0, p.object, x, "path object")?;
            arrow(p.p1, p.object, x, "path object")?;
        }
        Ok(CfoStructure { rel, fib, terminal, products, path_objects })
    }

    /// Fills every missing product by exhaustive search, choosing the least
    /// candidate.
    pub fn with_searched_products(mut self) -> Self {
        let c = self.rel.base().clone();
        for x in c.objects() {
            for y in c.objects() {
                if !self.products.contains_key(&(x, y)) {
                    if let Some(p) = find_product(&c, x, y) {
                        self.products.insert((x, y), p);
                    }
                }
            }
        }
        self
    }

    pub fn rel(&self) -> &RelCategory {
        &self.rel
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.rel.base()
    }

    #[inline]
    pub fn is_weq(&self, f: MorId) -> bool {
        self.rel.is_weq(f)
    }

    #[inline]
    pub fn is_fib(&self, f: MorId) -> bool {
        self.fib[f.idx()]
    }

    pub fn is_trivial_fibration(&self, f: MorId) -> bool {
        self.is_weq(f) && self.is_fib(f)
    }

    pub fn fib_flags(&self) -> &[bool] {
        &self.fib
    }

    /// Flags of `weq ∩ fib`.
    pub fn trivial_fibrations(&self) -> Vec<bool> {
        self.base().morphisms().map(|f| self.is_trivial_fibration(f)).collect()
    }

    pub fn terminal(&self) -> Option<ObjId> {
        self.terminal
    }

    pub fn product(&self, x: ObjId, y: ObjId) -> Option<&Product> {
        self.products.get(&(x, y))
    }

    pub fn products(&self) -> &BTreeMap<(ObjId, ObjId), Product> {
        &self.products
    }

    pub fn path_object(&self, x: ObjId) -> Option<&PathObject> {
        self.path_objects.get(&x)
    }

    pub fn path_objects(&self) -> &BTreeMap<ObjId, PathObject> {
        &self.path_objects
    }

    fn chosen_product(&self, x: ObjId, y: ObjId) -> Result<&Product> {
        self.product(x, y).ok_or_else(|| {
            let c = self.base();
            Error::MissingProduct(format!("{} x {}", c.obj_name(x), c.obj_name(y)))
        })
    }

    /// `⟨a, b⟩: Z -> X × Y` into the chosen product.
    pub fn pairing(&self, a: MorId, b: MorId) -> Result<MorId> {
        let c = self.base();
        let p = self.chosen_product(c.cod(a), c.cod(b))?;
        mediating(c, p.object, p.proj1, p.proj2, a, b).ok_or_else(|| {
            Error::MissingProduct(format!("no pairing <{}, {}>", c.mor_name(a), c.mor_name(b)))
        })
    }

    /// `a × b: X' × Y' -> X × Y` between chosen products.
    pub fn product_map(&self, a: MorId, b: MorId) -> Result<MorId> {
        let c = self.base();
        let src = *self.chosen_product(c.dom(a), c.dom(b))?;
        self.pairing(c.compose(a, src.proj1), c.compose(b, src.proj2))
    }

    /// The least pullback of `f` along `g`.
    pub fn pullback(&self, f: MorId, g: MorId) -> Result<Pullback> {
        let c = self.base();
        find_pullback(c, f, g).ok_or_else(|| {
            Error::MissingPullback(format!("{} along {}", c.mor_name(f), c.mor_name(g)))
        })
    }

    /// The weaker axiom system carried by the same data.
    pub fn to_cisinski(&self) -> CisinskiStructure {
        CisinskiStructure { rel: self.rel.clone(), fib: self.fib.clone(), terminal: self.terminal }
    }
}

fn flags(c: &FinCategory, list: impl IntoIterator<Item = MorId>) -> Result<Vec<bool>> {
    let mut out = alloc::vec![false; c.morphism_count()];
    for f in list {
        *out.get_mut(f.idx()).ok_or_else(|| Error::UnknownMorphism(format!("#{}", f.0)))? = true;
    }
    Ok(out)
}

/// A relative category with fibrations and a designated terminal object,
/// where only fibrant objects need support pullbacks and factorisations.
#[derive(Clone, Debug)]
pub struct CisinskiStructure {
    rel: RelCategory,
    fib: Vec<bool>,
    terminal: Option<ObjId>,
}

impl CisinskiStructure {
    pub fn new(rel: RelCategory, fib: impl IntoIterator<Item = MorId>, terminal: Option<ObjId>) -> Result<Self> {
        let fib = flags(rel.base(), fib)?;
        if let Some(t) = terminal {
            if t.idx() >= rel.base().object_count() {
                return Err(Error::UnknownObject(format!("#{}", t.0)));
            }
        }
        Ok(CisinskiStructure { rel, fib, terminal })
    }

    pub fn rel(&self) -> &RelCategory {
        &self.rel
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.rel.base()
    }

    pub fn is_fib(&self, f: MorId) -> bool {
        self.fib[f.idx()]
    }

    pub fn terminal(&self) -> Option<ObjId> {
        self.terminal
    }

    /// `X -> 1` is a fibration.
    pub fn is_fibrant(&self, x: ObjId) -> bool {
        let c = self.base();
        self.terminal.is_some_and(|t| c.hom(x, t).len() == 1 && self.is_fib(c.hom(x, t)[0]))
    }
}

/// The slice `C/Y` with weak equivalences and fibrations created by the
/// forgetful functor; its terminal object is `id_Y`.
pub fn slice_structure(s: &CfoStructure, y: ObjId, limits: &Limits) -> Result<(CisinskiStructure, Functor)> {
    let c = s.base();
    let comma = comma_over(&Functor::identity(c.clone()), y, limits)?;
    let forget = comma.projection;
    let slice = comma.category;
    let weq: Vec<MorId> = slice.morphisms().filter(|&f| s.is_weq(forget.mor(f))).collect();
    let fib: Vec<MorId> = slice.morphisms().filter(|&f| s.is_fib(forget.mor(f))).collect();
    let terminal = comma.objects.iter().position(|&(x, u)| x == y && u == c.id(y)).map(|i| ObjId(i as u32));
    let rel = RelCategory::new(slice, weq)?;
    Ok((CisinskiStructure::new(rel, fib, terminal)?, forget))
}

/// One axiom and, when it fails, a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomOutcome {
    pub axiom: &'static str,
    pub witness: Option<String>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.outcomes.iter().filter(|o| !o.passed()).map(|o| o.axiom).collect()
    }

    pub fn outcome(&self, axiom: &str) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| o.axiom == axiom)
    }
}

fn outcome(axiom: &'static str, witness: Option<String>) -> AxiomOutcome {
    AxiomOutcome { axiom, witness }
}

fn weq_axiom(rel: &RelCategory) -> Option<String> {
    let c = rel.base();
    if let Some((g, f)) = rel.two_out_of_three_violation() {
        return Some(format!("2-out-of-3 fails for {} o {}", c.mor_name(g), c.mor_name(f)));
    }
    c.morphisms()
        .find(|&f| c.is_isomorphism(f) && !rel.is_weq(f))
        .map(|f| format!("isomorphism {} is not a weak equivalence", c.mor_name(f)))
}

fn composition_closed(c: &FinCategory, flags: &[bool]) -> Option<String> {
    c.composition_triples()
        .find(|&(g, f, gf)| flags[g.idx()] && flags[f.idx()] && !flags[gf.idx()])
        .map(|(g, f, _)| format!("{} o {} is not a fibration", c.mor_name(g), c.mor_name(f)))
}

/// Pullbacks of `f` along every `g` whose domain satisfies `admit`: they must
/// exist, stay in `fib` and, when `f` is also a weak equivalence, in `weq`.
fn pullback_stability(
    rel: &RelCategory,
    fib: &[bool],
    f: MorId,
    check_weq: bool,
    admit: impl Fn(ObjId) -> bool,
) -> Option<String> {
    let c = rel.base();
    for &g in c.incoming(c.cod(f)) {
        if !admit(c.dom(g)) {
            continue;
        }
        let name = || format!("{} along {}", c.mor_name(f), c.mor_name(g));
        let Some(p) = find_pullback(c, f, g) else {
            return Some(format!("no pullback of {}", name()));
        };
        if !fib[p.pb.idx()] {
            return Some(format!("pullback {} of {} is not a fibration", c.mor_name(p.pb), name()));
        }
        if check_weq && rel.is_weq(f) && !rel.is_weq(p.pb) {
            return Some(format!("pullback {} of {} is not a weak equivalence", c.mor_name(p.pb), name()));
        }
    }
    None
}

/// Whether `(i, p0, p1)` is a path object for `x`.
fn path_object_defect(s: &CfoStructure, x: ObjId, p: &PathObject) -> Option<String> {
    let c = s.base();
    let name = c.obj_name(x);
    if !s.is_weq(p.i) {
        return Some(format!("path object of {name}: {} is not a weak equivalence", c.mor_name(p.i)));
    }
    let id = c.id(x);
    if c.compose(p.p0, p.i) != id || c.compose(p.p1, p.i) != id {
        return Some(format!("path object of {name}: (p0, p1) o i is not the diagonal"));
    }
    match s.pairing(p.p0, p.p1) {
        Ok(pair) if s.is_fib(pair) => None,
        Ok(pair) => Some(format!("path object of {name}: {} is not a fibration", c.mor_name(pair))),
        Err(e) => Some(format!("path object of {name}: {e}")),
    }
}

/// The least path object for `x`, by exhaustive search.
pub fn find_path_object(s: &CfoStructure, x: ObjId) -> Option<PathObject> {
    let c = s.base();
    let id = c.id(x);
    for p in c.objects() {
        for &i in c.hom(x, p) {
            if !s.is_weq(i) {
                continue;
            }
            let sections: Vec<MorId> = c.hom(p, x).iter().copied().filter(|&q| c.compose(q, i) == id).collect();
            for &p0 in &sections {
                for &p1 in &sections {
                    let cand = PathObject { object: p, i, p0, p1 };
                    if path_object_defect(s, x, &cand).is_none() {
                        return Some(cand);
                    }
                }
            }
        }
    }
    None
}

/// Checks axioms A–E and the chosen products, each independently.
pub fn check_cfo_axioms(s: &CfoStructure) -> AxiomReport {
    let c = s.base();
    let rel = s.rel();

    let b = c
        .morphisms()
        .find(|&f| c.is_isomorphism(f) && !s.is_fib(f))
        .map(|f| format!("isomorphism {} is not a fibration", c.mor_name(f)))
        .or_else(|| composition_closed(c, s.fib_flags()));

    let axiom_c = c
        .morphisms()
        .filter(|&f| s.is_fib(f))
        .find_map(|f| pullback_stability(rel, s.fib_flags(), f, true, |_| true));

    let d = c.objects().find_map(|x| match s.path_object(x) {
        Some(p) => path_object_defect(s, x, p),
        None => find_path_object(s, x).is_none().then(|| format!("no path object for {}", c.obj_name(x))),
    });

    let e = match s.terminal() {
        None => Some(String::from("no terminal object designated")),
        Some(t) => c
            .objects()
            .find_map(|x| match c.hom(x, t) {
                [f] if s.is_fib(*f) => None,
                [f] => Some(format!("{} -> {} is not a fibration", c.obj_name(x), c.mor_name(*f))),
                hom => Some(format!(
                    "{} is not terminal: {} morphisms from {}",
                    c.obj_name(t),
                    hom.len(),
                    c.obj_name(x)
                )),
            }),
    };

    let products = c.objects().find_map(|x| {
        c.objects().find_map(|y| match s.product(x, y) {
            None => Some(format!("no product {} x {}", c.obj_name(x), c.obj_name(y))),
            Some(p) if !is_product(c, p) => Some(format!(
                "{} is not a product of {} and {}",
                c.obj_name(p.object),
                c.obj_name(x),
                c.obj_name(y)
            )),
            Some(_) => None,
        })
    });

    AxiomReport {
        outcomes: alloc::vec![
            outcome("A", weq_axiom(rel)),
            outcome("B", b),
            outcome("C", axiom_c),
            outcome("D", d),
            outcome("E", e),
            outcome("products", products),
        ],
    }
}

/// Checks D0–D4, each independently; D4 by exhaustive factorisation search.
pub fn check_cisinski_axioms(s: &CisinskiStructure) -> AxiomReport {
    let c = s.base();
    let rel = s.rel();
    let fibrant: Vec<bool> = c.objects().map(|x| s.is_fibrant(x)).collect();

    let d0 = match s.terminal() {
        None => Some(String::from("no terminal object designated")),
        Some(t) => c
            .objects()
            .find(|&x| c.hom(x, t).len() != 1)
            .map(|x| format!("{} is not terminal: {} morphisms from {}", c.obj_name(t), c.hom(x, t).len(), c.obj_name(x)))
            .or_else(|| (!fibrant[t.idx()]).then(|| format!("{} is not fibrant", c.obj_name(t))))
            .or_else(|| {
                c.morphisms()
                    .find(|&f| c.is_isomorphism(f) && fibrant[c.cod(f).idx()] != fibrant[c.dom(f).idx()])
                    .map(|f| format!("fibrancy not invariant under {}", c.mor_name(f)))
            }),
    };

    let between_fibrant = |f: MorId| fibrant[c.dom(f).idx()] && fibrant[c.cod(f).idx()];
    let d2 = composition_closed(c, &s.fib)
        .or_else(|| {
            c.morphisms()
                .find(|&f| c.is_isomorphism(f) && between_fibrant(f) && !s.is_fib(f))
                .map(|f| format!("isomorphism {} between fibrant objects is not a fibration", c.mor_name(f)))
        })
        .or_else(|| {
            c.morphisms().filter(|&p| s.is_fib(p) && fibrant[c.cod(p).idx()]).find_map(|p| {
                pullback_stability(rel, &s.fib, p, false, |y| fibrant[y.idx()])
            })
        });

    let d3 = c
        .morphisms()
        .filter(|&p| s.is_fib(p) && rel.is_weq(p) && fibrant[c.cod(p).idx()])
        .find_map(|p| pullback_stability(rel, &s.fib, p, true, |y| fibrant[y.idx()]));

    let d4 = c.morphisms().filter(|&f| fibrant[c.cod(f).idx()]).find_map(|f| {
        let factors = c.out(c.dom(f)).iter().any(|&i| {
            rel.is_weq(i) && c.hom(c.cod(i), c.cod(f)).iter().any(|&p| s.is_fib(p) && c.compose(p, i) == f)
        });
        (!factors).then(|| format!("{} has no (weq, fibration) factorisation", c.mor_name(f)))
    });

    AxiomReport {
        outcomes: alloc::vec![
            outcome("D0", d0),
            outcome("D1", weq_axiom(rel)),
            outcome("D2", d2),
            outcome("D3", d3),
            outcome("D4", d4),
        ],
    }
}
