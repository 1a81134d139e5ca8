//! Conveyor flow shop: one worker processes an n x m 0/1 task matrix where
//! jobs flow through machines in fixed order and machines take jobs in fixed
//! order; the objective is the minimum number of machine switches. The exact
//! solver runs a 0/1-cost shortest path over per-machine progress vectors; a
//! linear-extension enumerator is the independent oracle.

use crate::budget::Budget;
use crate::exact_set::{ExactSet, ExactSetError};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CfspError {
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("search budget exhausted")]
    TimedOut,
    #[error("z must be even (got {0})")]
    OddZ(u64),
    #[error(transparent)]
    ExactSet(#[from] ExactSetError),
}

/// State-space guard for the exact solver.
pub const MAX_STATES: u64 = 100_000_000;
/// Task-count guard for the brute-force oracle.
pub const MAX_ORACLE_TASKS: usize = 10;

/// 0/1 job x machine work specification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "raw::MatrixJson", into = "raw::MatrixJson")]
pub struct TaskMatrix {
    n: usize,
    m: usize,
    cells: Vec<Vec<bool>>,
}

impl TaskMatrix {
    pub fn new(cells: Vec<Vec<bool>>) -> Result<Self, String> {
        let n = cells.len();
        if n == 0 {
            return Err("at least one job row required".into());
        }
        let m = cells[0].len();
        if m == 0 {
            return Err("at least one machine column required".into());
        }
        if cells.iter().any(|r| r.len() != m) {
            return Err("all rows must have the same length".into());
        }
        Ok(TaskMatrix { n, m, cells })
    }

    pub fn from_rows(rows: &[&str]) -> Result<Self, String> {
        let cells = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(format!("row character `{other}` is not 0/1")),
                    })
                    .collect::<Result<Vec<bool>, String>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        TaskMatrix::new(cells)
    }

    pub fn jobs(&self) -> usize {
        self.n
    }

    pub fn machines(&self) -> usize {
        self.m
    }

    pub fn has_task(&self, job: usize, machine: usize) -> bool {
        self.cells[job][machine]
    }

    pub fn task_count(&self) -> usize {
        self.cells.iter().map(|r| r.iter().filter(|&&b| b).count()).sum()
    }

    /// Tasks of one machine, in the fixed job order.
    fn machine_jobs(&self) -> Vec<Vec<u32>> {
        (0..self.m)
            .map(|p| (0..self.n).filter(|&j| self.cells[j][p]).map(|j| j as u32).collect())
            .collect()
    }
}

/// Where the worker stands before the first task.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StartPosition {
    /// The first task costs no switch wherever it runs.
    #[default]
    Free,
    At(usize),
}

/// Ordered list of (job, machine) tasks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub tasks: Vec<(u32, u32)>,
}

/// All three schedule invariants against the matrix: exact task coverage,
/// same-job tasks in increasing machine order, same-machine tasks in
/// increasing job order.
pub fn is_valid_schedule(mat: &TaskMatrix, s: &Schedule) -> bool {
    let mut seen = vec![vec![false; mat.machines()]; mat.jobs()];
    let mut last_machine_of_job = vec![None::<u32>; mat.jobs()];
    let mut last_job_of_machine = vec![None::<u32>; mat.machines()];
    for &(j, p) in &s.tasks {
        let (j_us, p_us) = (j as usize, p as usize);
        if j_us >= mat.jobs() || p_us >= mat.machines() || !mat.has_task(j_us, p_us) || seen[j_us][p_us] {
            return false;
        }
        seen[j_us][p_us] = true;
        if matches!(last_machine_of_job[j_us], Some(q) if q >= p) {
            return false;
        }
        last_machine_of_job[j_us] = Some(p);
        if matches!(last_job_of_machine[p_us], Some(i) if i >= j) {
            return false;
        }
        last_job_of_machine[p_us] = Some(j);
    }
    s.tasks.len() == mat.task_count()
}

/// Adjacent pairs processed on different machines; the start is free.
pub fn switch_count(s: &Schedule) -> usize {
    switch_count_from(StartPosition::Free, s)
}

pub fn switch_count_from(start: StartPosition, s: &Schedule) -> usize {
    let mut pos = match start {
        StartPosition::Free => None,
        StartPosition::At(p) => Some(p as u32),
    };
    let mut switches = 0;
    for &(_, p) in &s.tasks {
        if matches!(pos, Some(q) if q != p) {
            switches += 1;
        }
        pos = Some(p);
    }
    switches
}

/// Exact minimum switch count with a witnessing schedule, free start.
pub fn delta_min(mat: &TaskMatrix) -> Result<(usize, Schedule), CfspError> {
    delta_min_with(mat, StartPosition::Free, Budget::unlimited())
}

/// A task is schedulable when all earlier same-job and same-machine tasks
/// are done, so the done set is always a per-machine prefix in job order;
/// states are (per-machine progress, worker position) and arcs cost 1
/// exactly when the worker moves.
pub fn delta_min_with(
    mat: &TaskMatrix,
    start: StartPosition,
    budget: Budget,
) -> Result<(usize, Schedule), CfspError> {
    let machine_jobs = mat.machine_jobs();
    let m = mat.machines();
    let mut states: u64 = m as u64;
    for jobs in &machine_jobs {
        states = states.saturating_mul(jobs.len() as u64 + 1);
        if states > MAX_STATES {
            return Err(CfspError::TooLarge(format!("more than {MAX_STATES} search states")));
        }
    }

    // strides for the mixed-radix state index; position occupies the last digit
    let mut stride = vec![0u64; m];
    let mut acc = (m + 1) as u64;
    for p in 0..m {
        stride[p] = acc;
        acc *= machine_jobs[p].len() as u64 + 1;
    }
    let encode = |progress: &[u32], pos: usize| -> u64 {
        pos as u64 + (0..m).map(|p| progress[p] as u64 * stride[p]).sum::<u64>()
    };

    // requirements of machine p's next task at rank r: same-job tasks on
    // earlier machines, as (machine, rank-to-exceed)
    let rank_of: Vec<HashMap<u32, u32>> = machine_jobs
        .iter()
        .map(|jobs| jobs.iter().enumerate().map(|(r, &j)| (j, r as u32)).collect())
        .collect();
    let requirements: Vec<Vec<Vec<(u32, u32)>>> = (0..m)
        .map(|p| {
            machine_jobs[p]
                .iter()
                .map(|&j| {
                    (0..p)
                        .filter(|&q| mat.has_task(j as usize, q))
                        .map(|q| (q as u32, rank_of[q][&j]))
                        .collect()
                })
                .collect()
        })
        .collect();

    let start_pos = match start {
        StartPosition::Free => m,
        StartPosition::At(p) => {
            assert!(p < m, "start machine out of range");
            p
        }
    };
    let full: Vec<u32> = machine_jobs.iter().map(|j| j.len() as u32).collect();
    let init = vec![0u32; m];

    let mut dist: HashMap<u64, u32> = HashMap::new();
    let mut parent: HashMap<u64, (u64, (u32, u32))> = HashMap::new();
    let mut deque: VecDeque<(u32, Vec<u32>, usize)> = VecDeque::new();
    dist.insert(encode(&init, start_pos), 0);
    deque.push_back((0, init, start_pos));

    let mut ticks: u32 = 0;
    while let Some((d, progress, pos)) = deque.pop_front() {
        ticks = ticks.wrapping_add(1);
        if ticks & 0xFFFF == 0 && budget.expired() {
            return Err(CfspError::TimedOut);
        }
        let code = encode(&progress, pos);
        if dist.get(&code) != Some(&d) {
            continue;
        }
        if progress == full {
            let mut tasks = Vec::new();
            let mut cur = code;
            while let Some(&(prev, task)) = parent.get(&cur) {
                tasks.push(task);
                cur = prev;
            }
            tasks.reverse();
            return Ok((d as usize, Schedule { tasks }));
        }
        for q in 0..m {
            let r = progress[q] as usize;
            if r >= machine_jobs[q].len() {
                continue;
            }
            if !requirements[q][r].iter().all(|&(dep, rank)| progress[dep as usize] > rank) {
                continue;
            }
            let cost = u32::from(pos != m && pos != q);
            let mut next = progress.clone();
            next[q] += 1;
            let ncode = encode(&next, q);
            let nd = d + cost;
            if dist.get(&ncode).is_none_or(|&old| nd < old) {
                dist.insert(ncode, nd);
                parent.insert(ncode, (code, (machine_jobs[q][r], q as u32)));
                if cost == 0 {
                    deque.push_front((nd, next, q));
                } else {
                    deque.push_back((nd, next, q));
                }
            }
        }
    }
    unreachable!("the full-progress state is always reachable")
}

/// Minimum switch count by exhaustive enumeration of all valid schedules.
pub fn delta_min_bruteforce(mat: &TaskMatrix) -> Result<usize, CfspError> {
    delta_min_bruteforce_with(mat, StartPosition::Free)
}

pub fn delta_min_bruteforce_with(mat: &TaskMatrix, start: StartPosition) -> Result<usize, CfspError> {
    if mat.task_count() > MAX_ORACLE_TASKS {
        return Err(CfspError::TooLarge(format!(
            "{} tasks exceeds the {MAX_ORACLE_TASKS}-task enumeration guard",
            mat.task_count()
        )));
    }
    let machine_jobs = mat.machine_jobs();
    let m = mat.machines();
    let rank_of: Vec<HashMap<u32, u32>> = machine_jobs
        .iter()
        .map(|jobs| jobs.iter().enumerate().map(|(r, &j)| (j, r as u32)).collect())
        .collect();

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        mat: &TaskMatrix,
        machine_jobs: &[Vec<u32>],
        rank_of: &[HashMap<u32, u32>],
        progress: &mut [u32],
        pos: Option<usize>,
        switches: usize,
        remaining: usize,
        best: &mut usize,
    ) {
        if remaining == 0 {
            *best = (*best).min(switches);
            return;
        }
        for q in 0..machine_jobs.len() {
            let r = progress[q] as usize;
            if r >= machine_jobs[q].len() {
                continue;
            }
            let job = machine_jobs[q][r] as usize;
            let ready = (0..q)
                .filter(|&p| mat.has_task(job, p))
                .all(|p| progress[p] > rank_of[p][&(job as u32)]);
            if !ready {
                continue;
            }
            let cost = usize::from(matches!(pos, Some(p) if p != q));
            progress[q] += 1;
            recurse(mat, machine_jobs, rank_of, progress, Some(q), switches + cost, remaining - 1, best);
            progress[q] -= 1;
        }
    }

    let mut best = usize::MAX;
    let mut progress = vec![0u32; m];
    let pos = match start {
        StartPosition::Free => None,
        StartPosition::At(p) => Some(p),
    };
    recurse(mat, &machine_jobs, &rank_of, &mut progress, pos, 0, mat.task_count(), &mut best);
    Ok(best)
}

/// Stacks matrices on disjoint job rows and machine columns.
pub fn block_diagonal(blocks: &[TaskMatrix]) -> TaskMatrix {
    assert!(!blocks.is_empty(), "at least one block required");
    let n: usize = blocks.iter().map(|b| b.jobs()).sum();
    let m: usize = blocks.iter().map(|b| b.machines()).sum();
    let mut cells = vec![vec![false; m]; n];
    let (mut row0, mut col0) = (0, 0);
    for b in blocks {
        for j in 0..b.jobs() {
            for p in 0..b.machines() {
                cells[row0 + j][col0 + p] = b.has_task(j, p);
            }
        }
        row0 += b.jobs();
        col0 += b.machines();
    }
    TaskMatrix::new(cells).unwrap()
}

/// Measured difference between the composed optimum and the sum of block
/// optima under the free-start convention. Disjoint machine blocks force one
/// switch per transition between nonempty blocks, so this is expected to be
/// (nonempty blocks - 1) rather than zero.
pub fn composition_offset(blocks: &[TaskMatrix], budget: Budget) -> Result<i64, CfspError> {
    assert!(!blocks.is_empty(), "at least one block required");
    let mut parts = 0i64;
    for b in blocks {
        if budget.expired() {
            return Err(CfspError::TimedOut);
        }
        parts += delta_min_with(b, StartPosition::Free, budget)?.0 as i64;
    }
    let whole = delta_min_with(&block_diagonal(blocks), StartPosition::Free, budget)?.0 as i64;
    Ok(whole - parts)
}

/// True iff the exact minimum lands in the (noncontiguous) target set.
pub fn exact_cfsp(mat: &TaskMatrix, targets: &ExactSet, budget: Budget) -> Result<bool, CfspError> {
    let (d, _) = delta_min_with(mat, StartPosition::Free, budget)?;
    Ok(targets.contains(d as u64))
}

/// The k odd-spaced values starting just above an even base, shifted by a
/// measured composition offset: {z+off+1, z+off+3, ..., z+off+2k-1}.
pub fn sk_from_z(z: u64, k: usize, offset: i64) -> Result<ExactSet, CfspError> {
    if !z.is_multiple_of(2) {
        return Err(CfspError::OddZ(z));
    }
    assert!(k >= 1, "k must be positive");
    let values = (0..k)
        .map(|i| z as i64 + offset + 2 * i as i64 + 1)
        .map(|v| u64::try_from(v).map_err(|_| ExactSetError::NonPositive(0)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CfspError::ExactSet)?;
    Ok(ExactSet::new(values)?)
}

mod raw {
    use super::*;

    /// `{"n": int, "m": int, "rows": ["0110", ...]}`.
    #[derive(Serialize, Deserialize)]
    pub struct MatrixJson {
        pub n: usize,
        pub m: usize,
        pub rows: Vec<String>,
    }

    impl TryFrom<MatrixJson> for TaskMatrix {
        type Error = String;
        fn try_from(j: MatrixJson) -> Result<Self, Self::Error> {
            let refs: Vec<&str> = j.rows.iter().map(|s| s.as_str()).collect();
            let mat = TaskMatrix::from_rows(&refs)?;
            if mat.jobs() != j.n || mat.machines() != j.m {
                return Err(format!(
                    "declared {}x{} but rows encode {}x{}",
                    j.n,
                    j.m,
                    mat.jobs(),
                    mat.machines()
                ));
            }
            Ok(mat)
        }
    }

    impl From<TaskMatrix> for MatrixJson {
        fn from(mat: TaskMatrix) -> Self {
            MatrixJson {
                n: mat.jobs(),
                m: mat.machines(),
                rows: mat
                    .cells
                    .iter()
                    .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
                    .collect(),
            }
        }
    }
}
