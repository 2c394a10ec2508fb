use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Size guards for constructions whose output can explode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of morphisms in any constructed category.
    pub max_morphisms: usize,
    /// Maximum number of simplices (summed over levels) in a constructed
    /// simplicial set or chain complex.
    pub max_simplices: usize,
}

impl Limits {
    pub const DEFAULT_MORPHISM_CAP: usize = 20_000;
    pub const DEFAULT_SIMPLEX_CAP: usize = 4_000_000;

    pub fn with_morphism_cap(max_morphisms: usize) -> Self {
        Limits {
            max_morphisms,
            ..Limits::default()
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_morphisms: Self::DEFAULT_MORPHISM_CAP,
            max_simplices: Self::DEFAULT_SIMPLEX_CAP,
        }
    }
}

/// A single defect found while validating a category description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateObject(String),
    DuplicateMorphism(String),
    UnknownObject { context: String, name: String },
    UnknownMorphism { context: String, name: String },
    MissingIdentity { object: String },
    BadIdentity { object: String, morphism: String },
    /// A composition entry whose pair is not composable, or whose composite
    /// has the wrong endpoints.
    DanglingComposite { g: String, f: String, composite: String },
    MissingComposite { g: String, f: String },
    ConflictingComposite { g: String, f: String },
    NotUnital { morphism: String, identity: String },
    NonAssociative { h: String, g: String, f: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DuplicateObject(o) => write!(out, "duplicate object id {o}"),
            DuplicateMorphism(m) => write!(out, "duplicate morphism id {m}"),
            UnknownObject { context, name } => write!(out, "unknown object {name} in {context}"),
            UnknownMorphism { context, name } => {
                write!(out, "unknown morphism {name} in {context}")
            }
            MissingIdentity { object } => write!(out, "object {object} has no identity"),
            BadIdentity { object, morphism } => {
                write!(out, "identity {morphism} of {object} is not an endomorphism of it")
            }
            DanglingComposite { g, f, composite } => {
                write!(out, "composition entry {g} o {f} = {composite} does not match endpoints")
            }
            MissingComposite { g, f } => write!(out, "composable pair {g} o {f} has no entry"),
            ConflictingComposite { g, f } => write!(out, "pair {g} o {f} has conflicting entries"),
            NotUnital { morphism, identity } => {
                write!(out, "identity {identity} is not neutral for {morphism}")
            }
            NonAssociative { h, g, f } => {
                write!(out, "({h} o {g}) o {f} differs from {h} o ({g} o {f})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Invalid(Vec<Violation>),
    UnknownObject(String),
    UnknownMorphism(String),
    SizeCapExceeded { what: &'static str, limit: usize },
    NotAFunctor(String),
    NotASimplicialMap(String),
    MissingPullback(String),
    MissingProduct(String),
    MissingPathObject(String),
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(vs) => {
                write!(out, "invalid category ({} violations)", vs.len())?;
                for v in vs.iter().take(5) {
                    write!(out, "; {v}")?;
                }
                Ok(())
            }
            Error::UnknownObject(o) => write!(out, "unknown object {o}"),
            Error::UnknownMorphism(m) => write!(out, "unknown morphism {m}"),
            Error::SizeCapExceeded { what, limit } => {
                write!(out, "size cap exceeded: {what} would exceed {limit}")
            }
            Error::NotAFunctor(why) => write!(out, "not a functor: {why}"),
            Error::NotASimplicialMap(why) => write!(out, "not a simplicial map: {why}"),
            Error::MissingPullback(what) => write!(out, "missing pullback: {what}"),
            Error::MissingProduct(what) => write!(out, "missing product: {what}"),
            Error::MissingPathObject(what) => write!(out, "missing path object: {what}"),
            Error::Precondition(why) => write!(out, "precondition failed: {why}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
