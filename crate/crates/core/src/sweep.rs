//! Batch cop-number sweeps driven by a JSON spec.
//!
//! ```json
//! {
//!   "seed": 7,
//!   "k_max": 3,
//!   "entries": [
//!     { "family": "cycle:5", "orient": "given", "push": ["none", "strong"] },
//!     { "connected": { "n": 4, "max_degree": 3 }, "orient": "classes" },
//!     { "family": "circulant:8,1,2", "orient": { "random": 3 } }
//!   ]
//! }
//! ```
//!
//! Every entry expands to a list of orientations; each orientation is solved
//! once per push ability. Rows come out sorted by instance id regardless of
//! which worker finished first.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::format::{read_oriented, write_arc_list};
use crate::game::PushAbility;
use crate::generators::{
    enumerate_connected_graphs, enumerate_orientations, random_orientation, Family, OrientationMode,
};
use crate::graph::OrientedGraph;
use crate::solver::{cop_number_detail, CopNumber};

pub const CSV_HEADER: [&str; 13] = [
    "instance_id",
    "family",
    "n",
    "m",
    "class_index",
    "variant",
    "k",
    "verdict",
    "cop_number",
    "capture_rounds",
    "states",
    "runtime_ms",
    "error",
];

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("sweep spec: {0}")]
    Spec(String),
    #[error("entry {entry}: {message}")]
    Entry { entry: usize, message: String },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_k_max")]
    pub k_max: usize,
    #[serde(default)]
    pub entries: Vec<SweepEntry>,
}

fn default_k_max() -> usize {
    3
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SweepEntry {
    /// `name` or `name:params`, as accepted by [`Family`].
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub connected: Option<ConnectedSpec>,
    /// Path to an arc-list file, relative to the working directory.
    #[serde(default)]
    pub file: Option<String>,
    #[serde(default)]
    pub orient: Orient,
    #[serde(default = "default_push")]
    pub push: Vec<PushAbility>,
    #[serde(default)]
    pub k_max: Option<usize>,
}

fn default_push() -> Vec<PushAbility> {
    vec![PushAbility::Strong]
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectedSpec {
    pub n: usize,
    #[serde(default)]
    pub max_degree: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orient {
    /// The family's reference orientation, or the file as written.
    #[default]
    Given,
    /// One representative per push class.
    Classes,
    /// Every orientation.
    All,
    /// This many seeded uniform orientations.
    Random(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub instance_id: usize,
    pub family: String,
    pub n: usize,
    pub m: usize,
    /// Push class id of the orientation among the graph's classes.
    pub class_index: u64,
    pub variant: PushAbility,
    pub k: usize,
    pub verdict: String,
    pub cop_number: String,
    pub capture_rounds: Option<u64>,
    pub states: usize,
    pub runtime_ms: u64,
    pub error: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Flagged {
    pub instance_id: usize,
    pub arcs: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Counters {
    pub rows: usize,
    pub errors: usize,
    /// Strong-push rows whose cop number is not 1.
    pub strong_push_above_one: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub schema: u32,
    pub rows: Vec<SweepRow>,
    pub flagged: Vec<Flagged>,
    pub counters: Counters,
}

struct Instance {
    family: String,
    graph: OrientedGraph,
}

pub fn parse_spec(text: &str) -> Result<SweepSpec, SweepError> {
    if text.trim().is_empty() {
        return Ok(SweepSpec { k_max: default_k_max(), ..Default::default() });
    }
    serde_json::from_str(text).map_err(|e| SweepError::Spec(e.to_string()))
}

fn orient(base: &OrientedGraph, mode: Orient, seed: u64) -> Result<Vec<OrientedGraph>, String> {
    let g = base.graph_arc().clone();
    Ok(match mode {
        Orient::Given => vec![base.clone()],
        Orient::Classes => enumerate_orientations(g, OrientationMode::Classes).map_err(|e| e.to_string())?.collect(),
        Orient::All => enumerate_orientations(g, OrientationMode::All).map_err(|e| e.to_string())?.collect(),
        Orient::Random(count) => {
            (0..count as u64).map(|i| random_orientation(g.clone(), seed.wrapping_add(i))).collect()
        }
    })
}

fn expand(entry: &SweepEntry, index: usize, seed: u64) -> Result<Vec<Instance>, SweepError> {
    let err = |message: String| SweepError::Entry { entry: index, message };
    let seed = seed.wrapping_add((index as u64) << 32);
    let sources = [entry.family.is_some(), entry.connected.is_some(), entry.file.is_some()];
    if sources.iter().filter(|&&b| b).count() != 1 {
        return Err(err("give exactly one of `family`, `connected`, `file`".into()));
    }
    let mut out = Vec::new();
    let mut add = |label: String, base: &OrientedGraph| -> Result<(), SweepError> {
        for graph in orient(base, entry.orient, seed.wrapping_add(out.len() as u64)).map_err(err)? {
            out.push(Instance { family: label.clone(), graph });
        }
        Ok(())
    };
    if let Some(f) = &entry.family {
        let fam: Family = f.parse().map_err(|e: crate::generators::GeneratorError| err(e.to_string()))?;
        let base = fam.reference().map_err(|e| err(e.to_string()))?;
        add(fam.to_string(), &base)?;
    } else if let Some(c) = entry.connected {
        let graphs =
            enumerate_connected_graphs(c.n, c.max_degree.unwrap_or(usize::MAX)).map_err(|e| err(e.to_string()))?;
        for g in graphs {
            add(format!("connected({})", c.n), &OrientedGraph::ascending(Arc::new(g)))?;
        }
    } else if let Some(path) = &entry.file {
        let text = std::fs::read_to_string(path).map_err(|e| err(format!("{path}: {e}")))?;
        let base = read_oriented(&text).map_err(|e| err(format!("{path}: {e}")))?;
        add(format!("file({path})"), &base)?;
    }
    Ok(out)
}

fn solve_row(id: usize, inst: &Instance, ability: PushAbility, k_max: usize) -> SweepRow {
    let start = Instant::now();
    let mut row = SweepRow {
        instance_id: id,
        family: inst.family.clone(),
        n: inst.graph.n(),
        m: inst.graph.m(),
        class_index: inst.graph.class_id(),
        variant: ability,
        k: k_max,
        verdict: String::new(),
        cop_number: String::new(),
        capture_rounds: None,
        states: 0,
        runtime_ms: 0,
        error: String::new(),
    };
    match cop_number_detail(&inst.graph, ability, k_max) {
        Ok((number, result, states)) => {
            row.states = states;
            row.cop_number = number.to_string();
            row.verdict = match number {
                CopNumber::Exactly(_) => "cop-win".into(),
                CopNumber::Above(_) => "robber-win".into(),
            };
            row.capture_rounds = result.and_then(|r| r.capture_rounds());
        }
        Err(e) => row.error = e.to_string(),
    }
    row.runtime_ms = start.elapsed().as_millis() as u64;
    row
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepReport, SweepError> {
    let mut jobs = Vec::new();
    for (i, entry) in spec.entries.iter().enumerate() {
        let k_max = entry.k_max.unwrap_or(spec.k_max);
        if entry.push.is_empty() {
            return Err(SweepError::Entry { entry: i, message: "empty `push` list".into() });
        }
        for inst in expand(entry, i, spec.seed)? {
            let inst = Arc::new(inst);
            for &ability in &entry.push {
                jobs.push((inst.clone(), ability, k_max));
            }
        }
    }
    let mut rows: Vec<SweepRow> =
        jobs.par_iter().enumerate().map(|(id, (inst, ability, k_max))| solve_row(id, inst, *ability, *k_max)).collect();
    rows.sort_by_key(|r| r.instance_id);

    let mut counters = Counters { rows: rows.len(), ..Default::default() };
    let mut flagged = Vec::new();
    for (row, (inst, ability, _)) in rows.iter().zip(&jobs) {
        if !row.error.is_empty() {
            counters.errors += 1;
        } else if *ability == PushAbility::Strong && row.cop_number != "1" {
            counters.strong_push_above_one += 1;
            flagged.push(Flagged { instance_id: row.instance_id, arcs: write_arc_list(&inst.graph) });
        }
    }
    Ok(SweepReport { schema: 1, rows, flagged, counters })
}

impl SweepReport {
    pub fn to_csv(&self) -> Result<String, SweepError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.instance_id.to_string(),
                r.family.clone(),
                r.n.to_string(),
                r.m.to_string(),
                r.class_index.to_string(),
                r.variant.to_string(),
                r.k.to_string(),
                r.verdict.clone(),
                r.cop_number.clone(),
                r.capture_rounds.map(|c| c.to_string()).unwrap_or_default(),
                r.states.to_string(),
                r.runtime_ms.to_string(),
                r.error.clone(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| SweepError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Writes `sweep.csv`, `sweep.json` and one `flagged-<id>.arcs` per
    /// flagged instance into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<(), SweepError> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("sweep.csv"), self.to_csv()?)?;
        std::fs::write(dir.join("sweep.json"), self.to_json())?;
        for f in &self.flagged {
            std::fs::write(dir.join(format!("flagged-{}.arcs", f.instance_id)), &f.arcs)?;
        }
        Ok(())
    }
}
