//! JSON file formats.
//!
//! * semigroup: `{"size": n, "table": [[..], ..], "names": [..]}` (names optional)
//! * system: `{"base": B, "index_sizes": [..], "lambda": {"a,b": [..]}, "rho": {..}}`
//!   where `B` is an inline semigroup, a built-in name, or a path relative
//!   to the system file. Keys whose map is empty may be omitted.
//! * action: `{"carrier": m, "base": B, "act": [[..]]}` with `act[x][a] = x∗a`,
//!   or `"left"` (`left[a][x] = a\x`) and `"right"` (`right[x][a] = x/a`).
//! * transformation: `{"h": [..], "t": {"a": [..]}, "source": S, "target": T}`
//!   with optional system references `S`, `T`.
//! * partition: `[[..], ..]`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{system_by_name, RightAction, TwoSidedAction};
use crate::semigroup::{catalog, FiniteSemigroup, Partition};
use crate::system::SystemOfMaps;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("{path}: {message}")]
    Read { path: String, message: String },
    #[error("{path}: malformed JSON: {message}")]
    Json { path: String, message: String },
    #[error("{path}: field `{field}`: {message}")]
    Field { path: String, field: String, message: String },
}

type Result<T, E = IoError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupFile {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl From<&FiniteSemigroup> for SemigroupFile {
    fn from(s: &FiniteSemigroup) -> Self {
        Self {
            size: s.size(),
            table: s.rows(),
            names: s.names().map(<[String]>::to_vec),
        }
    }
}

/// A semigroup given inline, by built-in name, or by path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SemigroupRef {
    Name(String),
    Inline(SemigroupFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub base: SemigroupRef,
    pub index_sizes: Vec<usize>,
    #[serde(default)]
    pub lambda: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub rho: BTreeMap<String, Vec<usize>>,
}

impl From<&SystemOfMaps> for SystemFile {
    fn from(sys: &SystemOfMaps) -> Self {
        let n = sys.base().size();
        let keyed = |tables: &[Vec<usize>]| {
            (0..n * n)
                .filter(|&k| !tables[k].is_empty())
                .map(|k| (format!("{},{}", k / n, k % n), tables[k].clone()))
                .collect()
        };
        Self {
            base: SemigroupRef::Inline(sys.base().into()),
            index_sizes: sys.index_sizes().to_vec(),
            lambda: keyed(sys.lambda_tables()),
            rho: keyed(sys.rho_tables()),
        }
    }
}

/// A system given inline, by built-in name, or by path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemRef {
    Name(String),
    Inline(Box<SystemFile>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub carrier: usize,
    pub base: SemigroupRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub act: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Vec<Vec<usize>>>,
}

impl From<&RightAction> for ActionFile {
    fn from(a: &RightAction) -> Self {
        let n = a.base().size();
        Self {
            carrier: a.carrier(),
            base: SemigroupRef::Inline(a.base().into()),
            act: Some(a.table().chunks(n.max(1)).map(<[usize]>::to_vec).take(a.carrier()).collect()),
            left: None,
            right: None,
        }
    }
}

impl From<&TwoSidedAction> for ActionFile {
    fn from(a: &TwoSidedAction) -> Self {
        let (n, m) = (a.base().size(), a.carrier());
        Self {
            carrier: m,
            base: SemigroupRef::Inline(a.base().into()),
            act: None,
            left: Some((0..n).map(|s| (0..m).map(|x| a.left(s, x)).collect()).collect()),
            right: Some((0..m).map(|x| (0..n).map(|s| a.right(x, s)).collect()).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Right(RightAction),
    TwoSided(TwoSidedAction),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformationFile {
    pub h: Vec<usize>,
    pub t: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SystemRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<SystemRef>,
}

impl TransformationFile {
    pub fn new(h: &[usize], maps: &[Vec<usize>]) -> Self {
        Self {
            h: h.to_vec(),
            t: maps.iter().enumerate().map(|(a, m)| (a.to_string(), m.clone())).collect(),
            source: None,
            target: None,
        }
    }

    /// Component maps in element order; missing entries are empty maps.
    pub fn maps(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.h.len();
        if let Some(key) = self.t.keys().find(|k| k.parse::<usize>().map_or(true, |a| a >= n)) {
            return Err(field_error("<transformation>", &format!("t.\"{key}\""), "key is not an element of the target base"));
        }
        Ok((0..n).map(|a| self.t.get(&a.to_string()).cloned().unwrap_or_default()).collect())
    }
}

fn field_error(path: &str, field: &str, message: impl ToString) -> IoError {
    IoError::Field {
        path: path.to_string(),
        field: field.to_string(),
        message: message.to_string(),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| IoError::Json {
        path: path.to_string(),
        message: e.to_string(),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn resolve(dir: &Path, name: &str) -> PathBuf {
    let p = Path::new(name);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        dir.join(p)
    }
}

fn parent_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

pub fn semigroup_from_file(path: &str, file: &SemigroupFile) -> Result<FiniteSemigroup> {
    if file.table.len() != file.size {
        return Err(field_error(
            path,
            "table",
            format!("{} rows for size {}", file.table.len(), file.size),
        ));
    }
    let s = FiniteSemigroup::from_table(file.table.clone()).map_err(|e| field_error(path, "table", e))?;
    match &file.names {
        Some(names) => s.with_names(names.clone()).map_err(|e| field_error(path, "names", e)),
        None => Ok(s),
    }
}

fn semigroup_from_ref(dir: &Path, context: &str, r: &SemigroupRef) -> Result<FiniteSemigroup> {
    match r {
        SemigroupRef::Inline(file) => semigroup_from_file(context, file),
        SemigroupRef::Name(name) => load_semigroup_in(dir, name),
    }
}

/// A built-in name or a semigroup file.
pub fn load_semigroup(name_or_path: &str) -> Result<FiniteSemigroup> {
    load_semigroup_in(Path::new(""), name_or_path)
}

fn load_semigroup_in(dir: &Path, name_or_path: &str) -> Result<FiniteSemigroup> {
    if let Some(s) = catalog::by_name(name_or_path) {
        return Ok(s);
    }
    let path = resolve(dir, name_or_path);
    let shown = path.display().to_string();
    semigroup_from_file(&shown, &parse(&shown, &read(&path)?)?)
}

pub fn parse_semigroup(text: &str) -> Result<FiniteSemigroup> {
    semigroup_from_file("<input>", &parse("<input>", text)?)
}

fn parse_key(path: &str, field: &str, key: &str, n: usize) -> Result<usize> {
    let bad = || field_error(path, &format!("{field}.\"{key}\""), format!("key must be \"a,b\" with a, b < {n}"));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a >= n || b >= n {
        return Err(bad());
    }
    Ok(a * n + b)
}

pub fn system_from_file(dir: &Path, path: &str, file: &SystemFile) -> Result<SystemOfMaps> {
    let base = semigroup_from_ref(dir, path, &file.base)?;
    let n = base.size();
    let mut tables = Vec::with_capacity(2);
    for (field, entries) in [("lambda", &file.lambda), ("rho", &file.rho)] {
        let mut maps = vec![Vec::new(); n * n];
        for (key, map) in entries {
            maps[parse_key(path, field, key, n)?] = map.clone();
        }
        tables.push(maps);
    }
    let rho = tables.pop().expect("two tables");
    let lambda = tables.pop().expect("two tables");
    SystemOfMaps::new(base, file.index_sizes.clone(), lambda, rho).map_err(|e| {
        let field = match &e {
            crate::system::SystemError::IndexSizesLength { .. } => "index_sizes".to_string(),
            crate::system::SystemError::MapLength { kind, a, b, .. } | crate::system::SystemError::RangeError { kind, a, b, .. } => {
                let name = match kind {
                    crate::system::MapKind::Lambda => "lambda",
                    crate::system::MapKind::Rho => "rho",
                };
                format!("{name}.\"{a},{b}\"")
            }
            _ => "lambda".to_string(),
        };
        field_error(path, &field, e)
    })
}

fn system_from_ref(dir: &Path, context: &str, r: &SystemRef) -> Result<SystemOfMaps> {
    match r {
        SystemRef::Inline(file) => system_from_file(dir, context, file),
        SystemRef::Name(name) => load_system_in(dir, name),
    }
}

/// A built-in system name or a system file. The axioms are not checked.
pub fn load_system(name_or_path: &str) -> Result<SystemOfMaps> {
    load_system_in(Path::new(""), name_or_path)
}

fn load_system_in(dir: &Path, name_or_path: &str) -> Result<SystemOfMaps> {
    if let Some(s) = system_by_name(name_or_path) {
        return Ok(s.into_inner());
    }
    let path = resolve(dir, name_or_path);
    let shown = path.display().to_string();
    system_from_file(&parent_dir(&path), &shown, &parse(&shown, &read(&path)?)?)
}

pub fn parse_system(text: &str) -> Result<SystemOfMaps> {
    system_from_file(Path::new(""), "<input>", &parse("<input>", text)?)
}

fn flatten(path: &str, field: &str, rows: &[Vec<usize>], width: usize) -> Result<Vec<usize>> {
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != width) {
        return Err(field_error(path, &format!("{field}[{i}]"), format!("row has {} entries, expected {width}", row.len())));
    }
    Ok(rows.concat())
}

pub fn action_from_file(dir: &Path, path: &str, file: &ActionFile) -> Result<Action> {
    let base = semigroup_from_ref(dir, path, &file.base)?;
    let (n, m) = (base.size(), file.carrier);
    match (&file.act, &file.left, &file.right) {
        (Some(act), None, None) => {
            if act.len() != m {
                return Err(field_error(path, "act", format!("{} rows for carrier {m}", act.len())));
            }
            let flat = flatten(path, "act", act, n)?;
            RightAction::new(m, base, flat).map(Action::Right).map_err(|e| field_error(path, "act", e))
        }
        (None, Some(left), Some(right)) => {
            if left.len() != n {
                return Err(field_error(path, "left", format!("{} rows for a base of size {n}", left.len())));
            }
            if right.len() != m {
                return Err(field_error(path, "right", format!("{} rows for carrier {m}", right.len())));
            }
            let l = flatten(path, "left", left, m)?;
            let r = flatten(path, "right", right, n)?;
            TwoSidedAction::new(m, base, l, r).map(Action::TwoSided).map_err(|e| field_error(path, "left", e))
        }
        _ => Err(field_error(path, "act", "give either `act` or both `left` and `right`")),
    }
}

pub fn load_action(path: &str) -> Result<Action> {
    let p = Path::new(path);
    action_from_file(&parent_dir(p), path, &parse(path, &read(p)?)?)
}

pub fn parse_action(text: &str) -> Result<Action> {
    action_from_file(Path::new(""), "<input>", &parse("<input>", text)?)
}

pub fn load_partition(path: &str, size: usize) -> Result<Partition> {
    let classes: Vec<Vec<usize>> = parse(path, &read(Path::new(path))?)?;
    Partition::new(classes, size).map_err(|e| field_error(path, "classes", e))
}

pub fn parse_partition(text: &str, size: usize) -> Result<Partition> {
    let classes: Vec<Vec<usize>> = parse("<input>", text)?;
    Partition::new(classes, size).map_err(|e| field_error("<input>", "classes", e))
}

/// A transformation file with its referenced systems, when present.
pub struct LoadedTransformation {
    pub file: TransformationFile,
    pub source: Option<SystemOfMaps>,
    pub target: Option<SystemOfMaps>,
}

pub fn load_transformation(path: &str) -> Result<LoadedTransformation> {
    let p = Path::new(path);
    let file: TransformationFile = parse(path, &read(p)?)?;
    let dir = parent_dir(p);
    let source = file.source.as_ref().map(|r| system_from_ref(&dir, path, r)).transpose()?;
    let target = file.target.as_ref().map(|r| system_from_ref(&dir, path, r)).transpose()?;
    Ok(LoadedTransformation { file, source, target })
}
