//! Parallel, resumable driver for the arc search.
//!
//! The arc tree is split into prefixes; rayon workers exhaust them
//! independently. Finished prefixes are written to a JSON checkpoint so an
//! interrupted run resumes where it stopped. Outcomes merge through the core
//! reducer, so the report does not depend on scheduling.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicI64, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use cubispin_core::search::{
    arc_subtasks, merge_outcomes, run_arc_subtask, CertificateReport, KnottedArc, Point, SearchConstraints,
    SearchControl, SearchMode, SubtaskOutcome, DEFAULT_SPLIT_DEPTH,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug)]
pub struct RunnerConfig {
    pub jobs: usize,
    pub split_depth: usize,
    pub checkpoint: Option<PathBuf>,
    pub time_budget: Option<Duration>,
    pub node_budget: Option<u64>,
}

impl Default for RunnerConfig {
    fn default() -> Self {
        RunnerConfig {
            jobs: 1,
            split_depth: DEFAULT_SPLIT_DEPTH,
            checkpoint: None,
            time_budget: None,
            node_budget: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunnerError {
    #[error("checkpoint {path}: {message}")]
    Checkpoint { path: String, message: String },
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct ConstraintsRecord {
    max_height: i64,
    max_zsum: i64,
    max_len: usize,
    footprint: (i64, i64),
    require_knotted: bool,
}

impl From<&SearchConstraints> for ConstraintsRecord {
    fn from(c: &SearchConstraints) -> Self {
        ConstraintsRecord {
            max_height: c.max_height,
            max_zsum: c.max_zsum,
            max_len: c.max_len,
            footprint: c.footprint,
            require_knotted: c.require_knotted,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct KnottedRecord {
    arc: Vec<Point>,
    determinant: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct OutcomeRecord {
    arcs: u64,
    nodes: u64,
    knotted: Vec<KnottedRecord>,
    best: Option<KnottedRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Checkpoint {
    schema: u32,
    mode: String,
    constraints: ConstraintsRecord,
    split_depth: usize,
    subtasks_total: usize,
    /// Completed subtasks by index.
    done: BTreeMap<usize, OutcomeRecord>,
}

fn mode_name(mode: SearchMode) -> &'static str {
    match mode {
        SearchMode::Certify => "certify",
        SearchMode::Minimize => "minimize",
    }
}

fn to_record(k: &KnottedArc) -> KnottedRecord {
    KnottedRecord {
        arc: k.arc.clone(),
        determinant: k.determinant.to_string(),
    }
}

fn from_record(r: &KnottedRecord) -> Option<KnottedArc> {
    let det: u128 = r.determinant.parse().ok()?;
    Some(KnottedArc::from_arc(r.arc.clone(), det))
}

fn outcome_record(o: &SubtaskOutcome) -> OutcomeRecord {
    OutcomeRecord {
        arcs: o.arcs,
        nodes: o.nodes,
        knotted: o.knotted.iter().map(to_record).collect(),
        best: o.best.as_ref().map(to_record),
    }
}

fn outcome_from(r: &OutcomeRecord) -> Option<SubtaskOutcome> {
    Some(SubtaskOutcome {
        arcs: r.arcs,
        nodes: r.nodes,
        knotted: r.knotted.iter().map(from_record).collect::<Option<Vec<_>>>()?,
        best: match &r.best {
            Some(b) => Some(from_record(b)?),
            None => None,
        },
        complete: true,
    })
}

fn load_checkpoint(path: &Path) -> Result<Option<Checkpoint>, RunnerError> {
    if !path.exists() {
        return Ok(None);
    }
    let err = |message: String| RunnerError::Checkpoint {
        path: path.display().to_string(),
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    if text.trim().is_empty() {
        return Ok(None);
    }
    serde_json::from_str(&text).map(Some).map_err(|e| err(e.to_string()))
}

fn save_checkpoint(path: &Path, cp: &Checkpoint) -> Result<(), RunnerError> {
    let err = |message: String| RunnerError::Checkpoint {
        path: path.display().to_string(),
        message,
    };
    let text = serde_json::to_string(cp).map_err(|e| err(e.to_string()))?;
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, text).map_err(|e| err(e.to_string()))?;
    std::fs::rename(&tmp, path).map_err(|e| err(e.to_string()))
}

struct SharedControl {
    start: Instant,
    deadline: Option<Duration>,
    node_limit: Option<u64>,
    nodes: AtomicU64,
    stopped: AtomicBool,
    best: AtomicI64,
}

impl SearchControl for SharedControl {
    fn proceed(&self, new_nodes: u64) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        let used = self.nodes.fetch_add(new_nodes, Ordering::Relaxed) + new_nodes;
        let over_nodes = self.node_limit.is_some_and(|l| used > l);
        let over_time = self.deadline.is_some_and(|d| self.start.elapsed() > d);
        if over_nodes || over_time {
            self.stopped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn bound(&self) -> Option<i64> {
        let b = self.best.load(Ordering::Relaxed);
        (b != i64::MAX).then_some(b)
    }

    fn offer(&self, reduced_area: i64) {
        self.best.fetch_min(reduced_area, Ordering::Relaxed);
    }
}

/// Runs the search, resuming from and updating the checkpoint when one is configured.
pub fn run(c: &SearchConstraints, mode: SearchMode, cfg: &RunnerConfig) -> Result<CertificateReport, RunnerError> {
    let start = Instant::now();
    let tasks = arc_subtasks(c, cfg.split_depth);
    let mut cp = Checkpoint {
        schema: 1,
        mode: mode_name(mode).into(),
        constraints: c.into(),
        split_depth: cfg.split_depth,
        subtasks_total: tasks.len(),
        done: BTreeMap::new(),
    };
    if let Some(path) = &cfg.checkpoint {
        if let Some(old) = load_checkpoint(path)? {
            if old.constraints != cp.constraints
                || old.mode != cp.mode
                || old.split_depth != cp.split_depth
                || old.subtasks_total != cp.subtasks_total
            {
                return Err(RunnerError::Checkpoint {
                    path: path.display().to_string(),
                    message: "written by a run with different settings".into(),
                });
            }
            cp.done = old.done;
        }
    }

    let mut outcomes: BTreeMap<usize, SubtaskOutcome> = BTreeMap::new();
    for (id, rec) in &cp.done {
        let o = outcome_from(rec).ok_or_else(|| RunnerError::Checkpoint {
            path: cfg.checkpoint.as_ref().map(|p| p.display().to_string()).unwrap_or_default(),
            message: format!("unreadable entry {id}"),
        })?;
        outcomes.insert(*id, o);
    }
    let seed = outcomes.values().filter_map(|o| o.best.as_ref()).map(|b| b.reduced_area).min();

    let control = SharedControl {
        start,
        deadline: cfg.time_budget,
        node_limit: cfg.node_budget,
        nodes: AtomicU64::new(0),
        stopped: AtomicBool::new(false),
        best: AtomicI64::new(seed.unwrap_or(i64::MAX)),
    };
    let pending: Vec<usize> = (0..tasks.len()).filter(|i| !outcomes.contains_key(i)).collect();
    let shared = Mutex::new((cp, Instant::now()));
    let fresh = Mutex::new(Vec::new());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| RunnerError::Pool(e.to_string()))?;

    let save_error = Mutex::new(None);
    pool.install(|| {
        pending.par_iter().for_each(|&id| {
            let o = run_arc_subtask(c, mode, &tasks[id], &control);
            if !o.complete {
                return;
            }
            if let Some(path) = &cfg.checkpoint {
                let mut guard = shared.lock().expect("checkpoint lock");
                guard.0.done.insert(id, outcome_record(&o));
                if guard.1.elapsed() > Duration::from_secs(2) {
                    if let Err(e) = save_checkpoint(path, &guard.0) {
                        *save_error.lock().expect("error lock") = Some(e);
                    }
                    guard.1 = Instant::now();
                }
            }
            fresh.lock().expect("result lock").push((id, o));
        });
    });
    if let Some(e) = save_error.into_inner().expect("error lock") {
        return Err(e);
    }
    if let Some(path) = &cfg.checkpoint {
        let guard = shared.lock().expect("checkpoint lock");
        save_checkpoint(path, &guard.0)?;
    }
    for (id, o) in fresh.into_inner().expect("result lock") {
        outcomes.insert(id, o);
    }

    let mut report = merge_outcomes(c, tasks.len(), outcomes.values());
    if mode == SearchMode::Minimize {
        report.knotted_found.truncate(1);
    }
    report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubispin_core::search::Unlimited;

    fn slice() -> SearchConstraints {
        SearchConstraints {
            max_height: 2,
            max_zsum: 10,
            max_len: 16,
            footprint: (3, 3),
            require_knotted: true,
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let c = slice();
        let seq = cubispin_core::search::certify_lower_bound(&c, &Unlimited).unwrap();
        let cfg = RunnerConfig {
            jobs: 3,
            ..RunnerConfig::default()
        };
        let par = run(&c, SearchMode::Certify, &cfg).unwrap();
        assert_eq!(par.cycles_enumerated, seq.cycles_enumerated);
        assert_eq!(par.knotted_found, seq.knotted_found);
        assert!(par.complete);
    }

    #[test]
    fn checkpoint_resume() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.json");
        let c = slice();
        let stopped = RunnerConfig {
            checkpoint: Some(path.clone()),
            node_budget: Some(1),
            ..RunnerConfig::default()
        };
        let partial = run(&c, SearchMode::Certify, &stopped).unwrap();
        assert!(!partial.complete);
        let resumed = RunnerConfig {
            checkpoint: Some(path.clone()),
            ..RunnerConfig::default()
        };
        let full = run(&c, SearchMode::Certify, &resumed).unwrap();
        assert!(full.complete);
        let fresh = run(&c, SearchMode::Certify, &RunnerConfig::default()).unwrap();
        assert_eq!(full.cycles_enumerated, fresh.cycles_enumerated);

        let other = SearchConstraints { max_zsum: 9, ..c };
        assert!(matches!(run(&other, SearchMode::Certify, &resumed), Err(RunnerError::Checkpoint { .. })));
    }
}
