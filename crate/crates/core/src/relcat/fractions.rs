use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{insertion_functor, RelCategory};
use crate::error::{Error, Limits, Result};
use crate::fincat::ObjId;
use crate::homotopy::{weak_equivalence_evidence, Certificate, Verdict, DEFAULT_TRUNCATION};

/// Ranges for the right-fractions check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FractionsConfig {
    pub kmax: usize,
    pub lmax: usize,
    /// Truncation `T` for the homology comparison.
    pub dim: usize,
    /// Also check the relative category in which every weak equivalence is a
    /// morphism and all morphisms are weak equivalences. `None` means "when
    /// 2-out-of-3 holds".
    pub include_w: Option<bool>,
}

impl Default for FractionsConfig {
    fn default() -> Self {
        FractionsConfig { kmax: 1, lmax: 1, dim: DEFAULT_TRUNCATION, include_w: None }
    }
}

/// Which relative category an instance was run on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subject {
    Base,
    /// The subcategory of weak equivalences.
    Weq,
}

/// One `(k, l, X, Y)` instance, before evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InstanceKey {
    pub subject: Subject,
    pub k: usize,
    pub l: usize,
    pub x: ObjId,
    pub y: ObjId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceOutcome {
    Evaluated { source_objects: usize, target_objects: usize, verdict: Verdict },
    SizeCap { what: &'static str, limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionsInstance {
    pub key: InstanceKey,
    pub x_name: String,
    pub y_name: String,
    pub outcome: InstanceOutcome,
}

impl FractionsInstance {
    pub fn verdict(&self) -> Option<&Verdict> {
        match &self.outcome {
            InstanceOutcome::Evaluated { verdict, .. } => Some(verdict),
            InstanceOutcome::SizeCap { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionsReport {
    pub config: FractionsConfig,
    /// Sorted by key.
    pub instances: Vec<FractionsInstance>,
    pub overall: Verdict,
}

impl FractionsReport {
    pub fn refuted(&self) -> impl Iterator<Item = &FractionsInstance> {
        self.instances.iter().filter(|i| i.verdict().is_some_and(Verdict::is_refuted))
    }

    pub fn size_capped(&self) -> usize {
        self.instances.iter().filter(|i| i.verdict().is_none()).count()
    }
}

fn runs_on_w(c: &RelCategory, config: &FractionsConfig) -> bool {
    config.include_w.unwrap_or_else(|| c.two_out_of_three())
}

/// All instances in evaluation order.
pub fn fraction_instances(c: &RelCategory, config: &FractionsConfig) -> Vec<InstanceKey> {
    let mut subjects = alloc::vec![Subject::Base];
    if runs_on_w(c, config) {
        subjects.push(Subject::Weq);
    }
    let mut keys = Vec::new();
    for subject in subjects {
        for k in 0..=config.kmax {
            for l in 0..=config.lmax {
                for x in c.base().objects() {
                    for y in c.base().objects() {
                        keys.push(InstanceKey { subject, k, l, x, y });
                    }
                }
            }
        }
    }
    keys
}

/// Evaluates one instance; `w` is the weak-equivalence subcategory when the
/// key asks for it.
pub fn evaluate_instance(
    c: &RelCategory,
    w: Option<&RelCategory>,
    key: InstanceKey,
    dim: usize,
    limits: &Limits,
) -> Result<FractionsInstance> {
    let subject = match key.subject {
        Subject::Base => c,
        Subject::Weq => w.ok_or_else(|| Error::Precondition("missing weak-equivalence subcategory".into()))?,
    };
    let names = c.base();
    let outcome = match evaluate(subject, key, dim, limits) {
        Ok(outcome) => outcome,
        Err(Error::SizeCapExceeded { what, limit }) => InstanceOutcome::SizeCap { what, limit },
        Err(e) => return Err(e),
    };
    Ok(FractionsInstance {
        key,
        x_name: names.obj_name(key.x).to_string(),
        y_name: names.obj_name(key.y).to_string(),
        outcome,
    })
}

fn evaluate(c: &RelCategory, key: InstanceKey, dim: usize, limits: &Limits) -> Result<InstanceOutcome> {
    let (source, target, functor) = insertion_functor(c, key.k, key.l, key.x, key.y, limits)?;
    let verdict = weak_equivalence_evidence(&functor, dim, limits)?;
    Ok(InstanceOutcome::Evaluated {
        source_objects: source.category.object_count(),
        target_objects: target.category.object_count(),
        verdict,
    })
}

/// Refuted if any instance is, certified only if every instance is.
pub fn aggregate_fractions(config: FractionsConfig, mut instances: Vec<FractionsInstance>) -> FractionsReport {
    instances.sort_by_key(|i| i.key);
    let first_refuted = instances.iter().find_map(|i| match i.verdict() {
        Some(Verdict::Refuted(d)) => Some(d.clone()),
        _ => None,
    });
    let overall = if let Some(d) = first_refuted {
        Verdict::Refuted(d)
    } else if instances.iter().all(|i| i.verdict().is_some_and(Verdict::is_certified)) {
        Verdict::Certified(Certificate::AllInstances)
    } else {
        Verdict::Consistent { checked_through: config.dim.saturating_sub(1) }
    };
    FractionsReport { config, instances, overall }
}

/// Runs every insertion functor `C^{[-1;k;l]}(X, Y) -> C^{[-1;k;-1;l]}(X, Y)`
/// for `k <= kmax`, `l <= lmax` and all ordered pairs of objects.
pub fn check_right_fractions(c: &RelCategory, config: FractionsConfig, limits: &Limits) -> Result<FractionsReport> {
    let w = runs_on_w(c, &config).then(|| c.weq_subcategory().0);
    let instances = fraction_instances(c, &config)
        .into_iter()
        .map(|key| evaluate_instance(c, w.as_ref(), key, config.dim, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(aggregate_fractions(config, instances))
}
