//! Ledger of known exact values, generator matrices and point multisets for
//! codes with small locality, together with the engine that re-verifies
//! every witness.
//!
//! Data lives in `assets/` (embedded at compile time, overridable at run
//! time with [`ASSET_DIR_ENV`]):
//!
//! * `values.txt`: one record, family or rule per line;
//! * `matrices.txt`: named generator matrices in the code text format;
//! * `multisets.json`: point multisets as lists per multiplicity;
//! * `MANIFEST`: sha256 of each of the files above.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bounds::{griesmer, min_length_no_distance};
use crate::code::LinearCode;
use crate::constructions::{Construction, SolomonStifflerType};
use crate::error::{Error, Result};
use crate::geometry::{Geometry, PointEncoding, PointMultiset};
use crate::ilp::{feasible_at, solve_min_length, SolveOptions};
use crate::locality::locality;

/// Environment variable naming a directory that replaces the embedded assets.
pub const ASSET_DIR_ENV: &str = "LRC_ASSET_DIR";

const FILES: [&str; 3] = ["values.txt", "matrices.txt", "multisets.json"];

/// Raw registry data files.
#[derive(Debug, Clone)]
pub struct Assets {
    pub values: String,
    pub matrices: String,
    pub multisets: String,
    pub manifest: String,
}

impl Assets {
    pub fn embedded() -> Self {
        Assets {
            values: include_str!("../assets/values.txt").to_string(),
            matrices: include_str!("../assets/matrices.txt").to_string(),
            multisets: include_str!("../assets/multisets.json").to_string(),
            manifest: include_str!("../assets/MANIFEST").to_string(),
        }
    }

    pub fn from_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| {
            std::fs::read_to_string(dir.join(name))
                .map_err(|e| Error::DataCorrupt(format!("cannot read {}: {e}", dir.join(name).display())))
        };
        Ok(Assets {
            values: read(FILES[0])?,
            matrices: read(FILES[1])?,
            multisets: read(FILES[2])?,
            manifest: read("MANIFEST")?,
        })
    }

    /// The directory from [`ASSET_DIR_ENV`] if set, else the embedded copy.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(ASSET_DIR_ENV) {
            Some(dir) => Self::from_dir(Path::new(&dir)),
            None => Ok(Self::embedded()),
        }
    }

    fn contents(&self) -> [(&'static str, &str); 3] {
        [(FILES[0], &self.values), (FILES[1], &self.matrices), (FILES[2], &self.multisets)]
    }

    /// Manifest text matching the current contents.
    pub fn manifest_for_contents(&self) -> String {
        self.contents().iter().map(|(name, text)| format!("{}  {name}\n", sha256_hex(text))).collect()
    }

    /// Compares every file against the manifest.
    pub fn check(&self) -> Result<()> {
        let mut expected = BTreeMap::new();
        for line in self.manifest.lines().filter(|l| !l.trim().is_empty()) {
            let mut parts = line.split_whitespace();
            match (parts.next(), parts.next(), parts.next()) {
                (Some(hash), Some(name), None) => {
                    expected.insert(name.to_string(), hash.to_ascii_lowercase());
                }
                _ => return Err(Error::DataCorrupt(format!("malformed manifest line `{line}`"))),
            }
        }
        for (name, text) in self.contents() {
            let want = expected.get(name).ok_or_else(|| Error::DataCorrupt(format!("{name} missing from manifest")))?;
            if *want != sha256_hex(text) {
                return Err(Error::DataCorrupt(format!("checksum mismatch for {name}")));
            }
        }
        Ok(())
    }
}

fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Exact,
    LowerBound,
    UpperBound,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Exact => "exact",
            Kind::LowerBound => "lower_bound",
            Kind::UpperBound => "upper_bound",
        }
    }
}

/// Periodic form `d = d0 + d_step t`, `n = n0 + n_step t`; the record is the
/// member with the given `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula {
    pub d0: u64,
    pub d_step: u64,
    pub n0: u64,
    pub n_step: u64,
    pub t: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "name", rename_all = "snake_case")]
pub enum Witness {
    /// Value only.
    None,
    /// A named generator matrix from `matrices.txt`.
    Matrix(String),
    /// A named multiset from `multisets.json`.
    Multiset(String),
    /// A construction in the [`Construction`] grammar.
    Construction(String),
    /// Computed by the exact search, which also proves minimality.
    Search,
}

impl Witness {
    fn tag(&self) -> &'static str {
        match self {
            Witness::None => "none",
            Witness::Matrix(_) => "matrix",
            Witness::Multiset(_) => "multiset",
            Witness::Construction(_) => "construction",
            Witness::Search => "search",
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::None | Witness::Search => f.write_str(self.tag()),
            Witness::Matrix(s) | Witness::Multiset(s) | Witness::Construction(s) => write!(f, "{}:{s}", self.tag()),
        }
    }
}

/// One claimed value `n_q(k, d, r) = n` (or a bound on it).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRecord {
    pub id: String,
    pub q: u32,
    pub k: usize,
    pub d: u64,
    pub r: usize,
    pub n: u64,
    pub kind: Kind,
    pub formula: Option<Formula>,
    pub source: String,
    pub witness: Witness,
    /// Distance the witness is printed with, when it exceeds `d`.
    pub witness_d: Option<u64>,
    pub flags: Vec<String>,
    /// Known defect of the transcribed witness; verification is expected to
    /// fail with it.
    pub defect: Option<String>,
}

/// A multiset as printed: point codes grouped by multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListedMultiset {
    pub id: String,
    pub q: u32,
    pub k: usize,
    pub encoding: PointEncoding,
    pub lists: BTreeMap<u32, Vec<u64>>,
    /// `transcribed` for verbatim data, `repaired` for a replacement found
    /// by search.
    pub origin: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ListedMultiset {
    pub fn cardinality(&self) -> u64 {
        self.lists.iter().map(|(m, l)| *m as u64 * l.len() as u64).sum()
    }

    /// Decodes the lists, rejecting invalid and repeated point codes.
    pub fn decode(&self) -> Result<PointMultiset> {
        let g = Geometry::shared(self.q, self.k)?;
        let mut m = PointMultiset::empty(Arc::clone(&g));
        let mut seen = BTreeSet::new();
        for (&mult, codes) in &self.lists {
            for &c in codes {
                let p = g
                    .decode_point(c, self.encoding)
                    .map_err(|e| Error::VerificationFailed(format!("point code {c}: {e}")))?;
                if !seen.insert(p) {
                    return Err(Error::VerificationFailed(format!("point code {c} listed twice")));
                }
                m.add_point(p, mult);
            }
        }
        Ok(m)
    }
}

/// The loaded registry.
#[derive(Debug, Clone)]
pub struct Registry {
    records: Vec<ParamRecord>,
    matrices: BTreeMap<String, String>,
    multisets: BTreeMap<String, ListedMultiset>,
}

/// Loads the registry from the asset directory override or the embedded data.
pub fn load_registry() -> Result<Registry> {
    Registry::from_assets(&Assets::from_env()?)
}

impl Registry {
    pub fn from_assets(assets: &Assets) -> Result<Self> {
        assets.check()?;
        let matrices = parse_matrices(&assets.matrices)?;
        let list: Vec<ListedMultiset> =
            serde_json::from_str(&assets.multisets).map_err(|e| Error::DataCorrupt(format!("multisets.json: {e}")))?;
        let mut multisets = BTreeMap::new();
        for m in list {
            if multisets.insert(m.id.clone(), m).is_some() {
                return Err(Error::DataCorrupt("duplicate multiset id".into()));
            }
        }
        let records = parse_values(&assets.values)?;
        let mut ids = BTreeSet::new();
        for rec in &records {
            if !ids.insert(rec.id.as_str()) {
                return Err(Error::DataCorrupt(format!("duplicate record id {}", rec.id)));
            }
            let known = match &rec.witness {
                Witness::Matrix(name) => matrices.contains_key(name),
                Witness::Multiset(name) => multisets.contains_key(name),
                _ => true,
            };
            if !known {
                return Err(Error::DataCorrupt(format!("record {} names a missing witness {}", rec.id, rec.witness)));
            }
        }
        Ok(Registry { records, matrices, multisets })
    }

    pub fn records(&self) -> &[ParamRecord] {
        &self.records
    }

    pub fn record(&self, id: &str) -> Option<&ParamRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    /// Records for the given parameters.
    pub fn lookup(&self, q: u32, k: usize, d: u64, r: usize) -> impl Iterator<Item = &ParamRecord> {
        self.records.iter().filter(move |x| x.q == q && x.k == k && x.d == d && x.r == r)
    }

    /// The exact value, if recorded.
    pub fn exact_value(&self, q: u32, k: usize, d: u64, r: usize) -> Option<u64> {
        self.lookup(q, k, d, r).find(|x| x.kind == Kind::Exact).map(|x| x.n)
    }

    pub fn matrix_names(&self) -> impl Iterator<Item = &str> {
        self.matrices.keys().map(String::as_str)
    }

    pub fn matrix(&self, name: &str) -> Result<LinearCode> {
        let text = self.matrices.get(name).ok_or_else(|| Error::InconsistentInput(format!("no matrix `{name}`")))?;
        LinearCode::parse(text)
    }

    pub fn multisets(&self) -> impl Iterator<Item = &ListedMultiset> {
        self.multisets.values()
    }

    pub fn multiset(&self, name: &str) -> Option<&ListedMultiset> {
        self.multisets.get(name)
    }

    /// Violations of the cross-record consistency rules (empty if none).
    pub fn consistency_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut exact: BTreeMap<(u32, usize, usize), BTreeMap<u64, u64>> = BTreeMap::new();
        for rec in &self.records {
            let g = griesmer(rec.k, rec.d, rec.q);
            if rec.kind != Kind::UpperBound && rec.n < g {
                out.push(format!("{}: n={} below the Griesmer bound {g}", rec.id, rec.n));
            }
            if rec.r == 2 && rec.k >= 2 && rec.kind == Kind::Exact && rec.n < (3 * rec.k as u64).div_ceil(2) {
                out.push(format!("{}: n={} below ceil(3k/2)", rec.id, rec.n));
            }
            if let Some(f) = rec.formula {
                if rec.d != f.d0 + f.d_step * f.t || rec.n != f.n0 + f.n_step * f.t {
                    out.push(format!("{}: does not match its periodic form", rec.id));
                }
            }
            if rec.kind == Kind::Exact {
                let slot = exact.entry((rec.q, rec.k, rec.r)).or_default();
                if let Some(prev) = slot.insert(rec.d, rec.n) {
                    if prev != rec.n {
                        out.push(format!("{}: conflicting exact values {prev} and {}", rec.id, rec.n));
                    }
                }
            }
        }
        for ((q, k, r), by_d) in &exact {
            let mut last: Option<(u64, u64)> = None;
            for (&d, &n) in by_d {
                if let Some((d0, n0)) = last {
                    if n < n0 {
                        out.push(format!("q={q} k={k} r={r}: n drops from {n0} at d={d0} to {n} at d={d}"));
                    }
                }
                last = Some((d, n));
                if *r == 1 {
                    if let Some(&n2) = exact.get(&(*q, *k, 2)).and_then(|m| m.get(&d)) {
                        if n < n2 {
                            out.push(format!("q={q} k={k} d={d}: locality-1 value {n} below locality-2 value {n2}"));
                        }
                    }
                }
            }
        }
        out
    }
}

fn parse_matrices(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    let mut current: Option<(String, String)> = None;
    for line in text.lines() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            if let Some((n, body)) = current.take() {
                out.insert(n, body);
            }
            current = Some((name.to_string(), String::new()));
        } else {
            let (_, body) = current.as_mut().ok_or_else(|| Error::DataCorrupt("matrix rows before a name".into()))?;
            body.push_str(t);
            body.push('\n');
        }
    }
    if let Some((n, body)) = current {
        out.insert(n, body);
    }
    Ok(out)
}

fn tokenize(line: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for ch in line.chars() {
        match ch {
            '"' => quoted = !quoted,
            c if c.is_whitespace() && !quoted => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if quoted {
        return Err(Error::DataCorrupt(format!("unbalanced quote in `{line}`")));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

/// `a+bt` or a plain number.
fn parse_affine(s: &str) -> Option<(u64, u64)> {
    match s.strip_suffix('t') {
        Some(rest) => {
            let (a, b) = rest.split_once('+')?;
            Some((a.parse().ok()?, if b.is_empty() { 1 } else { b.parse().ok()? }))
        }
        None => Some((s.parse().ok()?, 0)),
    }
}

fn parse_range(s: &str) -> Option<(u64, u64)> {
    let (a, b) = s.split_once("..")?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

fn parse_witness(s: &str) -> Option<Witness> {
    Some(match s.split_once(':') {
        None if s == "none" => Witness::None,
        None if s == "search" => Witness::Search,
        Some(("matrix", name)) => Witness::Matrix(name.to_string()),
        Some(("multiset", name)) => Witness::Multiset(name.to_string()),
        Some(("construction", c)) => Witness::Construction(c.to_string()),
        _ => return None,
    })
}

fn parse_values(text: &str) -> Result<Vec<ParamRecord>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| Error::DataCorrupt(format!("values.txt line {}: {msg}", ln + 1));
        let toks = tokenize(line)?;
        let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
        let mut flags = Vec::new();
        for t in &toks[1..] {
            let (k, v) = t.split_once('=').ok_or_else(|| bad(&format!("token `{t}` is not key=value")))?;
            if k == "flag" {
                flags.push(v.to_string());
            } else if fields.insert(k, v).is_some() {
                return Err(bad(&format!("repeated key `{k}`")));
            }
        }
        let take = |key: &str| fields.get(key).copied().ok_or_else(|| bad(&format!("missing `{key}`")));
        let num = |key: &str| -> Result<u64> { take(key)?.parse().map_err(|_| bad(&format!("bad `{key}`"))) };
        let q = num("q")? as u32;
        let k = num("k")? as usize;
        let r = num("r")? as usize;
        let source = take("src")?.to_string();
        let kind = match fields.get("kind").copied().unwrap_or("exact") {
            "exact" => Kind::Exact,
            "lower_bound" => Kind::LowerBound,
            "upper_bound" => Kind::UpperBound,
            other => return Err(bad(&format!("unknown kind `{other}`"))),
        };
        let witness = match fields.get("witness") {
            Some(w) => parse_witness(w).ok_or_else(|| bad(&format!("bad witness `{w}`")))?,
            None => Witness::None,
        };
        let witness_d = fields.get("wd").map(|v| v.parse()).transpose().map_err(|_| bad("bad `wd`"))?;
        let defect = fields.get("defect").map(|s| s.to_string());
        let tag = fields.get("tag").map(|t| format!("-{t}")).unwrap_or_default();
        let id = |d: u64| format!("q{q}k{k}r{r}d{d}{tag}");
        let base = |d: u64, n: u64, formula: Option<Formula>, witness: Witness| ParamRecord {
            id: id(d),
            q,
            k,
            d,
            r,
            n,
            kind,
            formula,
            source: source.clone(),
            witness,
            witness_d,
            flags: flags.clone(),
            defect: defect.clone(),
        };
        match toks[0].as_str() {
            "record" => out.push(base(num("d")?, num("n")?, None, witness)),
            "family" => {
                let (d0, d_step) = parse_affine(take("d")?).ok_or_else(|| bad("bad periodic d"))?;
                let (n0, n_step) = parse_affine(take("n")?).ok_or_else(|| bad("bad periodic n"))?;
                let (t0, t1) = parse_range(take("t")?).ok_or_else(|| bad("bad t range"))?;
                let (sigma, eps) = take("type")?.split_once(':').ok_or_else(|| bad("bad type"))?;
                let (s0, s_step) = parse_affine(sigma).ok_or_else(|| bad("bad sigma"))?;
                for t in t0..=t1 {
                    let ty: SolomonStifflerType =
                        format!("{}:{eps}", s0 + s_step * t).parse().map_err(|_| bad("bad type"))?;
                    let w = Witness::Construction(format!("ss:k={k},q={q},type={ty}"));
                    let f = Formula { d0, d_step, n0, n_step, t };
                    out.push(base(d0 + d_step * t, n0 + n_step * t, Some(f), w));
                }
            }
            "rule" => {
                let (d0, d1) = parse_range(take("d")?).ok_or_else(|| bad("bad d range"))?;
                if take("n")? != "griesmer" {
                    return Err(bad("rules support n=griesmer only"));
                }
                for d in d0..=d1 {
                    out.push(base(d, griesmer(k, d, q), None, witness.clone()));
                }
            }
            other => return Err(bad(&format!("unknown line type `{other}`"))),
        }
    }
    Ok(out)
}

/// Record selector, e.g. `q=2,k=3`, `matrices`, `kind=lower_bound`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Filter {
    terms: Vec<(String, String)>,
}

impl Filter {
    pub fn all() -> Self {
        Filter::default()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = match part.split_once('=') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => match part {
                    "matrices" => ("witness", "matrix"),
                    "multisets" => ("witness", "multiset"),
                    "constructions" => ("witness", "construction"),
                    "exact" | "lower_bound" | "upper_bound" => ("kind", part),
                    "defects" => ("defect", "yes"),
                    _ => return Err(Error::InconsistentInput(format!("unknown filter term `{part}`"))),
                },
            };
            if !["q", "k", "r", "d", "n", "kind", "witness", "flag", "id", "defect"].contains(&k) {
                return Err(Error::InconsistentInput(format!("unknown filter key `{k}`")));
            }
            terms.push((k.to_string(), v.to_string()));
        }
        Ok(Filter { terms })
    }

    pub fn matches(&self, rec: &ParamRecord) -> bool {
        self.terms.iter().all(|(k, v)| match k.as_str() {
            "q" => rec.q.to_string() == *v,
            "k" => rec.k.to_string() == *v,
            "r" => rec.r.to_string() == *v,
            "d" => rec.d.to_string() == *v,
            "n" => rec.n.to_string() == *v,
            "kind" => rec.kind.name() == v,
            "witness" => rec.witness.tag() == v,
            "flag" => rec.flags.iter().any(|f| f == v),
            "id" => rec.id == *v,
            "defect" => rec.defect.is_some() == (v == "yes"),
            _ => false,
        })
    }
}

/// Settings for verification.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub solver: SolveOptions,
    /// Largest geometry on which minimality is checked by search.
    pub minimality_points: usize,
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            solver: SolveOptions { timeout: Some(Duration::from_secs(60)), ..SolveOptions::default() },
            minimality_points: 15,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Minimality {
    /// `n` meets the Griesmer bound.
    Griesmer,
    /// `n` meets the closed-form length without distance constraint.
    ClosedForm,
    /// The search found no multiset of length `n - 1`.
    Solver,
    /// Beyond the search caps, or the search timed out.
    Skipped,
    /// The record claims no lower bound.
    NotClaimed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    SolverSkipped,
    ValueOnly,
    SourceDefect,
    Fail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::SolverSkipped => "solver_skipped",
            Status::ValueOnly => "value_only",
            Status::SourceDefect => "source_defect",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measured {
    pub n: u64,
    pub k: usize,
    pub d: u64,
    /// `None` for infinite locality.
    pub r: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub kind: Kind,
    pub q: u32,
    pub claimed: Measured,
    pub witness: String,
    pub measured: Option<Measured>,
    pub minimality: Minimality,
    pub status: Status,
    pub detail: String,
}

fn fail(msg: String) -> Error {
    Error::VerificationFailed(msg)
}

/// Checks a witness code against a record: dimension, length, distance and
/// locality.
pub fn check_witness(rec: &ParamRecord, code: &LinearCode) -> Result<Measured> {
    if code.k() != rec.k {
        return Err(fail(format!("dimension {} but the record claims {}", code.k(), rec.k)));
    }
    if code.n() as u64 != rec.n {
        return Err(fail(format!("length {} but the record claims {}", code.n(), rec.n)));
    }
    let d = if code.is_degenerate() { code.minimum_distance()? } else { code.to_multiset()?.minimum_distance() as usize } as u64;
    match rec.witness_d {
        Some(w) if d != w => return Err(fail(format!("distance {d} but the witness is printed with {w}"))),
        _ if d < rec.d => return Err(fail(format!("distance {d} below the claimed {}", rec.d))),
        _ => {}
    }
    let r = locality(code).r;
    if !r.is_some_and(|x| x <= rec.r) {
        let shown = r.map_or("infinite".to_string(), |x| x.to_string());
        return Err(fail(format!("locality {shown} exceeds {}", rec.r)));
    }
    Ok(Measured { n: rec.n, k: code.k(), d, r })
}

impl Registry {
    /// Builds the witness code of a record; `None` for value-only records.
    pub fn witness_code(&self, rec: &ParamRecord) -> Result<Option<LinearCode>> {
        let m = match &rec.witness {
            Witness::None | Witness::Search => return Ok(None),
            Witness::Matrix(name) => return Ok(Some(self.matrix(name)?)),
            Witness::Multiset(name) => {
                let l = self.multisets.get(name).ok_or_else(|| Error::InconsistentInput(format!("no multiset `{name}`")))?;
                if l.q != rec.q || l.k != rec.k {
                    return Err(fail(format!("multiset {name} lives in the wrong geometry")));
                }
                l.decode()?
            }
            Witness::Construction(spec) => spec.parse::<Construction>()?.build()?,
        };
        if m.geometry().q() != rec.q {
            return Err(fail(format!("witness over GF({}) for a GF({}) record", m.geometry().q(), rec.q)));
        }
        Ok(Some(LinearCode::from_multiset(&m).map_err(|e| fail(format!("witness: {e}")))?))
    }

    /// Verifies one record; the error carries the first violated assertion.
    pub fn verify_record(&self, rec: &ParamRecord, opts: &VerifyOptions) -> Result<VerificationReport> {
        let claimed = Measured { n: rec.n, k: rec.k, d: rec.d, r: Some(rec.r) };
        let mut report = VerificationReport {
            id: rec.id.clone(),
            kind: rec.kind,
            q: rec.q,
            claimed,
            witness: rec.witness.to_string(),
            measured: None,
            minimality: Minimality::NotClaimed,
            status: Status::Pass,
            detail: String::new(),
        };
        let small = || -> Result<Option<Arc<Geometry>>> {
            let g = Geometry::shared(rec.q, rec.k)?;
            Ok((g.num_points() <= opts.minimality_points && (1..=2).contains(&rec.r)).then_some(g))
        };
        if rec.witness == Witness::Search {
            let g = Geometry::shared(rec.q, rec.k)?;
            let sol = solve_min_length(&g, rec.d, rec.r, &opts.solver)?;
            if sol.n != rec.n {
                return Err(fail(format!("search optimum {} differs from the claimed {}", sol.n, rec.n)));
            }
            let code = LinearCode::from_multiset(&sol.witness)?;
            report.measured = Some(check_witness(rec, &code)?);
            report.minimality = Minimality::Solver;
            return Ok(report);
        }
        if let Some(code) = self.witness_code(rec)? {
            report.measured = Some(check_witness(rec, &code)?);
        } else if rec.kind != Kind::LowerBound {
            report.status = Status::ValueOnly;
        }
        if rec.kind == Kind::UpperBound {
            return Ok(report);
        }
        let g = griesmer(rec.k, rec.d, rec.q);
        let closed = min_length_no_distance(rec.k, rec.r).ok().map(|x| x as u64);
        if rec.n <= g {
            report.minimality = Minimality::Griesmer;
        } else if closed.is_some_and(|c| rec.n <= c) {
            report.minimality = Minimality::ClosedForm;
        } else if let Some(geo) = small()? {
            let mut log = Vec::new();
            match feasible_at(&geo, rec.n - 1, rec.d, rec.r, &opts.solver, &mut log) {
                Ok(None) => report.minimality = Minimality::Solver,
                Ok(Some(w)) => {
                    return Err(fail(format!("a multiset of length {} exists: {:?}", rec.n - 1, w.mults())));
                }
                Err(Error::Timeout { .. }) => report.minimality = Minimality::Skipped,
                Err(e) => return Err(e),
            }
        } else {
            report.minimality = Minimality::Skipped;
        }
        if report.minimality == Minimality::Skipped && report.status == Status::Pass {
            report.status = if report.measured.is_some() || rec.kind == Kind::LowerBound {
                Status::SolverSkipped
            } else {
                Status::ValueOnly
            };
        }
        Ok(report)
    }

    /// Verifies every record matching the filter; failures are reported as
    /// rows, not errors. Records are processed in parallel, the output order
    /// is the registry order.
    pub fn verify_all(&self, filter: &Filter, opts: &VerifyOptions) -> Summary {
        let selected: Vec<&ParamRecord> = self.records.iter().filter(|r| filter.matches(r)).collect();
        let slots: Vec<Mutex<Option<VerificationReport>>> = selected.iter().map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        std::thread::scope(|s| {
            for _ in 0..opts.threads.max(1).min(selected.len().max(1)) {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(rec) = selected.get(i) else { break };
                    *slots[i].lock().unwrap() = Some(self.verify_outcome(rec, opts));
                });
            }
        });
        let reports = slots.into_iter().map(|m| m.into_inner().unwrap().expect("every slot filled")).collect();
        Summary { reports }
    }

    fn verify_outcome(&self, rec: &ParamRecord, opts: &VerifyOptions) -> VerificationReport {
        let result = self.verify_record(rec, opts);
        match (result, &rec.defect) {
            (Ok(rep), None) => rep,
            (Ok(mut rep), Some(defect)) => {
                rep.status = Status::Fail;
                rep.detail = format!("documented defect not reproduced: {defect}");
                rep
            }
            (Err(e), defect) => VerificationReport {
                id: rec.id.clone(),
                kind: rec.kind,
                q: rec.q,
                claimed: Measured { n: rec.n, k: rec.k, d: rec.d, r: Some(rec.r) },
                witness: rec.witness.to_string(),
                measured: self.measure_anyway(rec),
                minimality: Minimality::NotClaimed,
                status: if defect.is_some() { Status::SourceDefect } else { Status::Fail },
                detail: match defect {
                    Some(d) => format!("{e} ({d})"),
                    None => e.to_string(),
                },
            },
        }
    }

    /// Best-effort parameters of a failing witness, for the report.
    fn measure_anyway(&self, rec: &ParamRecord) -> Option<Measured> {
        let m = match &rec.witness {
            Witness::Multiset(name) => {
                let l = self.multisets.get(name)?;
                let g = Geometry::shared(l.q, l.k).ok()?;
                let mut m = PointMultiset::empty(Arc::clone(&g));
                for (&mult, codes) in &l.lists {
                    for &c in codes {
                        m.add_point(g.decode_point(c, l.encoding).ok()?, mult);
                    }
                }
                m
            }
            _ => self.witness_code(rec).ok()??.to_multiset().ok()?,
        };
        let code = LinearCode::from_multiset(&m).ok()?;
        Some(Measured { n: m.cardinality(), k: code.k(), d: m.minimum_distance(), r: locality(&code).r })
    }
}

/// Result of [`Registry::verify_all`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub reports: Vec<VerificationReport>,
}

impl Summary {
    pub fn count(&self, status: Status) -> usize {
        self.reports.iter().filter(|r| r.status == status).count()
    }

    /// True iff no record failed.
    pub fn ok(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    /// Aligned text table.
    pub fn to_table(&self) -> String {
        let fmt_r = |r: Option<usize>| r.map_or("inf".to_string(), |x| x.to_string());
        let fmt = |m: &Measured| format!("[{},{},{}] r={}", m.n, m.k, m.d, fmt_r(m.r));
        let rows: Vec<[String; 6]> = self
            .reports
            .iter()
            .map(|r| {
                [
                    r.id.clone(),
                    r.kind.name().to_string(),
                    fmt(&r.claimed),
                    r.measured.as_ref().map_or("-".to_string(), fmt),
                    r.status.name().to_string(),
                    r.detail.clone(),
                ]
            })
            .collect();
        let header = ["record", "kind", "claimed", "measured", "status", "detail"].map(String::from);
        let mut widths = [0usize; 6];
        for row in std::iter::once(&header).chain(rows.iter()) {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&header).chain(rows.iter()) {
            let cells: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out.push_str(&format!(
            "{} records: {} pass, {} solver_skipped, {} value_only, {} source_defect, {} failed\n",
            self.reports.len(),
            self.count(Status::Pass),
            self.count(Status::SolverSkipped),
            self.count(Status::ValueOnly),
            self.count(Status::SourceDefect),
            self.count(Status::Fail)
        ));
        out
    }
}
