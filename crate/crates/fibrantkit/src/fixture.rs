//! The fixture file format: a finite category with weak equivalences,
//! fibrations, a terminal object and chosen products and path objects, all
//! referred to by string ids.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use fibrantkit_core::fibrant::{CfoStructure, PathObject, Product};
use fibrantkit_core::fincat::{validate_category, RawCategory};
use fibrantkit_core::{FinCategory, MorId, ObjId, RelCategory};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub object: String,
    pub proj1: String,
    pub proj2: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathObjectEntry {
    pub object: String,
    pub i: String,
    pub p0: String,
    pub p1: String,
}

/// What a suite run on the fixture should find.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Ids of the suite checks that are expected to fail.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    /// Oracle sizes of homotopy-category hom-sets, keyed `"X,Y"`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub hom: BTreeMap<String, usize>,
    /// Trivial fibrations left out of the class `V` of the calculus of
    /// cocycles.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub v_excluded: Vec<String>,
}

/// The on-disk JSON shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    /// object id -> identity morphism id
    pub identities: BTreeMap<String, String>,
    /// `[g, f, g∘f]`
    pub composition: Vec<[String; 3]>,
    pub weq: Vec<String>,
    pub fib: Vec<String>,
    pub terminal: Option<String>,
    #[serde(default)]
    pub products: BTreeMap<String, ProductEntry>,
    #[serde(default)]
    pub path_objects: BTreeMap<String, PathObjectEntry>,
    #[serde(default)]
    pub expect: Expect,
}

/// A loaded and validated fixture.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub structure: CfoStructure,
    pub expect: Expect,
}

impl Fixture {
    pub fn new(name: impl Into<String>, structure: CfoStructure, expect: Expect) -> Fixture {
        Fixture { name: name.into(), structure, expect }
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        self.structure.base()
    }

    pub fn rel(&self) -> &RelCategory {
        self.structure.rel()
    }

    pub fn object(&self, name: &str) -> Result<ObjId> {
        self.category().object_named(name).ok_or_else(|| unknown("object", name, "lookup"))
    }

    /// Parses a `"X,Y"` key into a pair of objects.
    pub fn object_pair(&self, key: &str) -> Result<(ObjId, ObjId)> {
        split_pair(self.category(), key).ok_or_else(|| unknown("object pair", key, "key"))
    }

    /// The classes `V` for the calculus of cocycles: trivial fibrations minus
    /// the excluded ones.
    pub fn v_class(&self) -> Result<Vec<bool>> {
        let mut v = self.structure.trivial_fibrations();
        for m in &self.expect.v_excluded {
            let f = self.category().morphism_named(m).ok_or_else(|| unknown("morphism", m, "expect.v_excluded"))?;
            v[f.idx()] = false;
        }
        Ok(v)
    }

    pub fn to_file(&self) -> FixtureFile {
        let c = self.category();
        let on = |x: ObjId| c.obj_name(x).to_string();
        let mn = |f: MorId| c.mor_name(f).to_string();
        FixtureFile {
            objects: c.object_names().to_vec(),
            morphisms: c.morphisms().map(|f| MorphismEntry { id: mn(f), dom: on(c.dom(f)), cod: on(c.cod(f)) }).collect(),
            identities: c.objects().map(|x| (on(x), mn(c.id(x)))).collect(),
            composition: c.composition_triples().map(|(g, f, gf)| [mn(g), mn(f), mn(gf)]).collect(),
            weq: c.morphisms().filter(|&f| self.structure.is_weq(f)).map(mn).collect(),
            fib: c.morphisms().filter(|&f| self.structure.is_fib(f)).map(mn).collect(),
            terminal: self.structure.terminal().map(on),
            products: self
                .structure
                .products()
                .iter()
                .map(|(&(x, y), p)| {
                    (format!("{},{}", on(x), on(y)), ProductEntry { object: on(p.object), proj1: mn(p.proj1), proj2: mn(p.proj2) })
                })
                .collect(),
            path_objects: self
                .structure
                .path_objects()
                .iter()
                .map(|(&x, p)| (on(x), PathObjectEntry { object: on(p.object), i: mn(p.i), p0: mn(p.p0), p1: mn(p.p1) }))
                .collect(),
            expect: self.expect.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("fixtures serialize");
        s.push('\n');
        s
    }
}

fn unknown(kind: &'static str, id: &str, context: &str) -> HarnessError {
    HarnessError::UnknownId { kind, id: id.to_string(), context: context.to_string() }
}

/// Splits `"X,Y"` at the unique comma that leaves two object ids.
fn split_pair(c: &FinCategory, key: &str) -> Option<(ObjId, ObjId)> {
    let mut found = None;
    for (i, ch) in key.char_indices() {
        if ch != ',' {
            continue;
        }
        if let (Some(x), Some(y)) = (c.object_named(&key[..i]), c.object_named(&key[i + 1..])) {
            if found.is_some() {
                return None;
            }
            found = Some((x, y));
        }
    }
    found
}

/// Parses fixture JSON. `name` labels the fixture in reports.
pub fn parse_fixture(name: &str, text: &str) -> Result<Fixture> {
    let file: FixtureFile = serde_json::from_str(text).map_err(|e| HarnessError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_file(name, file)
}

/// Validates a parsed file and builds the structure. Products missing from
/// the table are filled in by search.
pub fn from_file(name: &str, file: FixtureFile) -> Result<Fixture> {
    let raw = RawCategory {
        objects: file.objects.clone(),
        morphisms: file.morphisms.iter().map(|m| (m.id.clone(), m.dom.clone(), m.cod.clone())).collect(),
        identities: file.identities.iter().map(|(o, m)| (o.clone(), m.clone())).collect(),
        composition: file.composition.iter().map(|[g, f, gf]| (g.clone(), f.clone(), gf.clone())).collect(),
    };
    let c = Arc::new(validate_category(&raw).map_err(|v| HarnessError::from_violations(&v))?);
    let obj = |id: &str, context: &str| c.object_named(id).ok_or_else(|| unknown("object", id, context));
    let mor = |id: &str, context: &str| c.morphism_named(id).ok_or_else(|| unknown("morphism", id, context));

    let weq = file.weq.iter().map(|m| mor(m, "weq")).collect::<Result<Vec<_>>>()?;
    let fib = file.fib.iter().map(|m| mor(m, "fib")).collect::<Result<Vec<_>>>()?;
    let terminal = file.terminal.as_deref().map(|t| obj(t, "terminal")).transpose()?;
    let mut products = BTreeMap::new();
    for (key, p) in &file.products {
        let pair = split_pair(&c, key).ok_or_else(|| unknown("object pair", key, "products"))?;
        let context = format!("products[{key}]");
        let entry = Product { object: obj(&p.object, &context)?, proj1: mor(&p.proj1, &context)?, proj2: mor(&p.proj2, &context)? };
        products.insert(pair, entry);
    }
    let mut path_objects = BTreeMap::new();
    for (x, p) in &file.path_objects {
        let context = format!("path_objects[{x}]");
        let entry = PathObject {
            object: obj(&p.object, &context)?,
            i: mor(&p.i, &context)?,
            p0: mor(&p.p0, &context)?,
            p1: mor(&p.p1, &context)?,
        };
        path_objects.insert(obj(x, "path_objects")?, entry);
    }
    for m in &file.expect.v_excluded {
        mor(m, "expect.v_excluded")?;
    }
    for key in file.expect.hom.keys() {
        split_pair(&c, key).ok_or_else(|| unknown("object pair", key, "expect.hom"))?;
    }

    let invalid = |e: fibrantkit_core::Error| HarnessError::Validation(vec![e.to_string()]);
    let rel = RelCategory::new(c.clone(), weq).map_err(invalid)?;
    let structure = CfoStructure::new(rel, fib, terminal, products, path_objects).map_err(invalid)?.with_searched_products();
    Ok(Fixture::new(name, structure, file.expect))
}

/// Reads and validates a fixture file; its name is the file stem.
pub fn load_fixture(path: impl AsRef<Path>) -> Result<Fixture> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io { path: path.to_path_buf(), source })?;
    let name = path.file_stem().map_or_else(|| "fixture".to_string(), |s| s.to_string_lossy().into_owned());
    parse_fixture(&name, &text)
}

pub fn save_fixture(fixture: &Fixture, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, fixture.to_json()).map_err(|source| HarnessError::Io { path: path.to_path_buf(), source })
}
