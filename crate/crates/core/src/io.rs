//! JSON documents for spaces, separation relations and maps.
//!
//! Subsets are written as comma-joined element names in element order, with
//! the empty string standing for the empty set.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::enumerate::Instance;
use crate::error::{Error, Result};
use crate::maps::SpaceMap;
use crate::separation::SeparationRelation;
use crate::space::Space;
use crate::subset::{GroundSet, SubsetMask};

/// An object's key/value pairs in document order. Repeated keys are kept so
/// they can be reported instead of silently overwritten.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Entries(pub Vec<(String, String)>);

impl Serialize for Entries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Entries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct EntriesVisitor;

        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = Entries;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with string values")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<Entries, A::Error> {
                let mut entries = Vec::new();
                while let Some(entry) = access.next_entry::<String, String>()? {
                    entries.push(entry);
                }
                Ok(Entries(entries))
            }
        }

        deserializer.deserialize_map(EntriesVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub elements: Vec<String>,
    pub closure: Entries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDocument {
    pub elements: Vec<String>,
    pub pairs: Vec<[String; 2]>,
}

/// A space given inline or as a path to a space document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceSource {
    Path(String),
    Inline(SpaceDocument),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub domain: SpaceSource,
    pub codomain: SpaceSource,
    pub assignment: Entries,
}

fn syntax(err: serde_json::Error) -> Error {
    Error::Syntax(err.to_string())
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents always serialize");
    text.push('\n');
    text
}

impl SpaceDocument {
    pub fn from_space(space: &Space) -> Self {
        let g = space.ground();
        SpaceDocument {
            elements: g.labels().to_vec(),
            closure: Entries(
                g.subsets()
                    .map(|a| {
                        (
                            g.format_subset(a),
                            g.format_subset(space.table()[a.index()]),
                        )
                    })
                    .collect(),
            ),
        }
    }

    pub fn to_space(&self) -> Result<Space> {
        let ground = Arc::new(GroundSet::new(self.elements.iter().cloned())?);
        let mut table: Vec<Option<SubsetMask>> = vec![None; ground.subset_count()];
        for (key, value) in &self.closure.0 {
            let a = ground.parse_subset(key)?;
            let image = ground.parse_subset(value)?;
            if table[a.index()].replace(image).is_some() {
                return Err(Error::DuplicateSubsetKey(key.clone()));
            }
        }
        let table = ground
            .subsets()
            .map(|a| {
                table[a.index()].ok_or_else(|| Error::MissingSubsetKey(ground.format_subset(a)))
            })
            .collect::<Result<Vec<_>>>()?;
        Space::new(ground, table)
    }
}

impl RelationDocument {
    pub fn from_relation(rel: &SeparationRelation) -> Self {
        let g = rel.ground();
        RelationDocument {
            elements: g.labels().to_vec(),
            pairs: rel
                .iter()
                .map(|(a, b)| [g.format_subset(a), g.format_subset(b)])
                .collect(),
        }
    }

    pub fn to_relation(&self) -> Result<SeparationRelation> {
        let ground = Arc::new(GroundSet::new(self.elements.iter().cloned())?);
        let mut rel = SeparationRelation::new(ground.clone());
        for [a, b] in &self.pairs {
            let (ma, mb) = (ground.parse_subset(a)?, ground.parse_subset(b)?);
            if !rel.insert(ma, mb)? {
                let (lo, hi) = if ma <= mb { (a, b) } else { (b, a) };
                return Err(Error::DuplicatePair(lo.clone(), hi.clone()));
            }
        }
        Ok(rel)
    }
}

impl MapDocument {
    pub fn from_map(map: &SpaceMap) -> Self {
        let (x, y) = (map.domain().ground(), map.codomain().ground());
        MapDocument {
            domain: SpaceSource::Inline(SpaceDocument::from_space(map.domain())),
            codomain: SpaceSource::Inline(SpaceDocument::from_space(map.codomain())),
            assignment: Entries(
                map.assignment()
                    .iter()
                    .enumerate()
                    .map(|(i, &t)| (x.labels()[i].clone(), y.labels()[t].clone()))
                    .collect(),
            ),
        }
    }

    /// Resolves path sources relative to `base_dir` (or the working
    /// directory when `None`).
    pub fn to_map(&self, base_dir: Option<&Path>) -> Result<SpaceMap> {
        let domain = resolve_source(&self.domain, base_dir)?;
        let codomain = resolve_source(&self.codomain, base_dir)?;
        let (x, y) = (domain.ground().clone(), codomain.ground().clone());
        let mut assignment: Vec<Option<usize>> = vec![None; x.len()];
        for (from, to) in &self.assignment.0 {
            let i = x
                .index_of(from)
                .ok_or_else(|| Error::UnknownElement(from.clone()))?;
            let t = y
                .index_of(to)
                .ok_or_else(|| Error::UnknownElement(to.clone()))?;
            if assignment[i].replace(t).is_some() {
                return Err(Error::DuplicateElement(from.clone()));
            }
        }
        let assignment = assignment
            .iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| Error::PartialAssignment(x.labels()[i].clone())))
            .collect::<Result<Vec<_>>>()?;
        SpaceMap::new(domain, codomain, assignment)
    }
}

fn resolve_source(source: &SpaceSource, base_dir: Option<&Path>) -> Result<Space> {
    match source {
        SpaceSource::Inline(doc) => doc.to_space(),
        SpaceSource::Path(path) => {
            let full = match base_dir {
                Some(dir) => dir.join(path),
                None => Path::new(path).to_path_buf(),
            };
            let text = std::fs::read_to_string(&full).map_err(|e| Error::Io {
                path: full.display().to_string(),
                message: e.to_string(),
            })?;
            parse_space(&text)
        }
    }
}

pub fn parse_space(text: &str) -> Result<Space> {
    serde_json::from_str::<SpaceDocument>(text)
        .map_err(syntax)?
        .to_space()
}

/// Pretty-printed document with closure keys in table order.
pub fn serialize_space(space: &Space) -> String {
    to_json(&SpaceDocument::from_space(space))
}

pub fn parse_relation(text: &str) -> Result<SeparationRelation> {
    serde_json::from_str::<RelationDocument>(text)
        .map_err(syntax)?
        .to_relation()
}

/// Pretty-printed document with pairs in canonical order.
pub fn serialize_relation(rel: &SeparationRelation) -> String {
    to_json(&RelationDocument::from_relation(rel))
}

pub fn parse_map(text: &str, base_dir: Option<&Path>) -> Result<SpaceMap> {
    serde_json::from_str::<MapDocument>(text)
        .map_err(syntax)?
        .to_map(base_dir)
}

/// Pretty-printed document with both spaces inline.
pub fn serialize_map(map: &SpaceMap) -> String {
    to_json(&MapDocument::from_map(map))
}

pub fn serialize_instance(instance: &Instance) -> String {
    match instance {
        Instance::Space(s) => serialize_space(s),
        Instance::Relation(r) => serialize_relation(r),
        Instance::Map(f) => serialize_map(f),
    }
}

/// Parses any of the three document kinds, told apart by their fields.
pub fn parse_instance(text: &str, base_dir: Option<&Path>) -> Result<Instance> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(syntax)?;
    let has = |key: &str| value.get(key).is_some();
    if has("closure") {
        parse_space(text).map(Instance::Space)
    } else if has("pairs") {
        parse_relation(text).map(Instance::Relation)
    } else if has("assignment") {
        parse_map(text, base_dir).map(Instance::Map)
    } else {
        Err(Error::Syntax(
            "expected a space, relation or map document".into(),
        ))
    }
}
