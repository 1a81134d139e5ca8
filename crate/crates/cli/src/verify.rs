//! Built-in verification campaigns: each replays one of the library's
//! combinatorial identities over a seeded, hermetic corpus and reports
//! per-instance records.

use domatic_core::budget::{Budget, SolveOutcome};
use domatic_core::cfsp::{composition_offset, delta_min, delta_min_bruteforce, is_valid_schedule, sk_from_z, switch_count, TaskMatrix};
use domatic_core::dimacs::write_dimacs;
use domatic_core::gen;
use domatic_core::graph::{complete, cycle, wheel, DecoratedGraph, Graph};
use domatic_core::reductions::{
    alpha_beta_agree, domatic_target_set, gadget_join, kaplan_shamir, multi_gadget_join,
    nae_construct, one_in_three_graph, one_in_three_pair_join, parity_pair,
};
use domatic_core::sat::{nae3_decide, one_in_three_decide, Cnf3, Lit, TripleSystem};
use domatic_core::srp::{
    alpha, brute_force_partition, chromatic_number_classic, domatic_number, exists_partition,
    gamma, SigmaRhoSpec, SrpError,
};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Timeout,
}

#[derive(Serialize)]
pub struct Record {
    pub digest: String,
    pub expected: String,
    pub observed: String,
    pub status: Status,
}

#[derive(Serialize)]
pub struct Summary {
    pub ok: usize,
    pub fail: usize,
    pub timeout: usize,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub campaign: String,
    pub seed: u64,
    pub budget_seconds: f64,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl VerifyReport {
    fn assemble(campaign: &str, seed: u64, budget_seconds: f64, records: Vec<Record>) -> Self {
        let summary = Summary {
            ok: records.iter().filter(|r| r.status == Status::Ok).count(),
            fail: records.iter().filter(|r| r.status == Status::Fail).count(),
            timeout: records.iter().filter(|r| r.status == Status::Timeout).count(),
        };
        VerifyReport { campaign: campaign.into(), seed, budget_seconds, records, summary }
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "campaign {}  seed {}  budget {}s\n",
            self.campaign, self.seed, self.budget_seconds
        ));
        out.push_str(&format!("{:<14} {:<8} {:<40} observed\n", "digest", "status", "expected"));
        for r in &self.records {
            let status = match r.status {
                Status::Ok => "ok",
                Status::Fail => "FAIL",
                Status::Timeout => "timeout",
            };
            out.push_str(&format!("{:<14} {:<8} {:<40} {}\n", r.digest, status, r.expected, r.observed));
        }
        out.push_str(&format!(
            "summary: {} ok, {} fail, {} timeout\n",
            self.summary.ok, self.summary.fail, self.summary.timeout
        ));
        out
    }
}

fn digest_str(payload: &str) -> String {
    let mut h = Sha256::new();
    h.update(payload.as_bytes());
    hex_prefix(&h.finalize())
}

fn hex_prefix(bytes: &[u8]) -> String {
    bytes.iter().take(6).map(|b| format!("{b:02x}")).collect()
}

fn graph_digest(g: &Graph) -> String {
    digest_str(&write_dimacs(g))
}

fn cnf_digest(f: &Cnf3) -> String {
    digest_str(&serde_json::to_string(f).unwrap())
}

fn triples_digest(s: &TripleSystem) -> String {
    digest_str(&serde_json::to_string(s).unwrap())
}

fn matrix_digest(m: &TaskMatrix) -> String {
    digest_str(&serde_json::to_string(m).unwrap())
}

fn record(digest: String, expected: impl Into<String>, observed: impl Into<String>, ok: bool) -> Record {
    Record {
        digest,
        expected: expected.into(),
        observed: observed.into(),
        status: if ok { Status::Ok } else { Status::Fail },
    }
}

fn timeout_record(digest: String, expected: impl Into<String>) -> Record {
    Record { digest, expected: expected.into(), observed: "budget exhausted".into(), status: Status::Timeout }
}

pub const CAMPAIGNS: [&str; 11] = [
    "lemma3", "thm1", "thm3", "thm6", "thm8", "thm10-k1", "parity-k1", "fact1", "oracle-srp",
    "oracle-cfsp", "cfsp-compose",
];

pub fn run_campaign(name: &str, seed: u64, budget_seconds: f64) -> Option<VerifyReport> {
    let records = match name {
        "lemma3" => lemma3(seed, budget_seconds),
        "thm1" => thm1(budget_seconds),
        "thm3" => thm3(seed, budget_seconds),
        "thm6" => thm6(seed, budget_seconds),
        "thm8" => thm8(seed, budget_seconds),
        "thm10-k1" => thm10_k1(),
        "parity-k1" => parity_k1(seed, budget_seconds),
        "fact1" => fact1(seed, budget_seconds),
        "oracle-srp" => oracle_srp(seed, budget_seconds),
        "oracle-cfsp" => oracle_cfsp(seed, budget_seconds),
        "cfsp-compose" => cfsp_compose(budget_seconds),
        _ => return None,
    };
    Some(VerifyReport::assemble(name, seed, budget_seconds, records))
}

fn subdivision_corpus(seed: u64) -> Vec<Graph> {
    let mut corpus = vec![complete(3), cycle(5), complete(4), wheel(6)];
    corpus.extend(gen::non_bipartite_graphs(20, 6, seed));
    corpus
}

fn lemma3(seed: u64, budget_seconds: f64) -> Vec<Record> {
    subdivision_corpus(seed)
        .into_par_iter()
        .map(|g| {
            let budget = Budget::seconds(budget_seconds);
            let digest = graph_digest(&g);
            let expected = "delta(image) = 3 iff chi = 3, else 2".to_string();
            let chi = chromatic_number_classic(&g);
            let image = kaplan_shamir(&g).expect("corpus graphs satisfy the preconditions");
            match domatic_number(image.graph(), budget) {
                Ok(delta) => {
                    let want = if chi == 3 { 3 } else { 2 };
                    record(digest, expected, format!("chi={chi} delta={delta}"), delta == want)
                }
                Err(SrpError::TimedOut) => timeout_record(digest, expected),
                Err(e) => record(digest, expected, e.to_string(), false),
            }
        })
        .collect()
}

fn subdivision_pairs() -> Vec<(DecoratedGraph, DecoratedGraph, usize)> {
    let h3 = kaplan_shamir(&complete(3)).unwrap();
    let h4 = kaplan_shamir(&complete(4)).unwrap();
    vec![(h3.clone(), h3.clone(), 6), (h3, h4.clone(), 5), (h4.clone(), h4, 4)]
}

fn thm1(budget_seconds: f64) -> Vec<Record> {
    subdivision_pairs()
        .into_par_iter()
        .map(|(a, b, expect)| {
            let budget = Budget::seconds(budget_seconds);
            let g = gadget_join(&a, &b).unwrap();
            let digest = graph_digest(&g);
            let expected = format!("delta = {expect}");
            match domatic_number(&g, budget) {
                Ok(d) => record(digest, expected, format!("delta = {d}"), d == expect),
                Err(SrpError::TimedOut) => timeout_record(digest, expected),
                Err(e) => record(digest, expected, e.to_string(), false),
            }
        })
        .collect()
}

fn nae_pairs(seed: u64) -> Vec<(Cnf3, Cnf3)> {
    let lit = |s: i64| Lit::from_signed(s).unwrap();
    let display1 = Cnf3::new(3, vec![[lit(1), lit(-2), lit(3)], [lit(-1), lit(2), lit(3)]]).unwrap();
    let display2 = Cnf3::new(3, vec![[lit(1), lit(2), lit(3)], [lit(-1), lit(-2), lit(-3)]]).unwrap();
    let all_true = Cnf3::new(1, vec![[lit(1), lit(1), lit(1)]]).unwrap();
    let simple = Cnf3::new(3, vec![[lit(1), lit(2), lit(3)]]).unwrap();
    let mut pairs = vec![
        (display1, display2),
        (simple, all_true.clone()),
        (all_true.clone(), all_true),
    ];
    let mut rng = gen::rng(seed);
    while pairs.len() < 23 {
        let a = gen::gen_cnf3(4, 2, &mut rng);
        let b = gen::gen_cnf3(3, 2, &mut rng);
        pairs.push((a, b));
    }
    pairs
}

fn thm3(seed: u64, budget_seconds: f64) -> Vec<Record> {
    nae_pairs(seed)
        .into_par_iter()
        .map(|(a, b)| {
            let budget = Budget::seconds(budget_seconds);
            let (sa, sb) = (
                nae3_decide(&a).unwrap().is_some(),
                nae3_decide(&b).unwrap().is_some(),
            );
            let (a, b, sa, sb) = if !sa && sb { (b, a, sb, sa) } else { (a, b, sa, sb) };
            let digest = digest_str(&format!("{}|{}", cnf_digest(&a), cnf_digest(&b)));
            let expect = match (sa, sb) {
                (true, true) => 4usize,
                (true, false) => 3,
                _ => 2,
            };
            let expected = format!("gamma = {expect} for oracle outcome ({sa},{sb})");
            let g = nae_construct(&a, &b).unwrap();
            match gamma(&g, budget) {
                Ok(got) => record(digest, expected, format!("gamma = {got:?}"), got == Some(expect)),
                Err(SrpError::TimedOut) => timeout_record(digest, expected),
                Err(e) => record(digest, expected, e.to_string(), false),
            }
        })
        .collect()
}

fn triple_pools(seed: u64) -> (Vec<TripleSystem>, Vec<TripleSystem>) {
    let mut rng = gen::rng(seed);
    let mut solvable = Vec::new();
    let mut unsolvable = vec![TripleSystem::new(
        2,
        vec![
            [Lit::pos(0), Lit::pos(0), Lit::pos(1)],
            [Lit::pos(0), Lit::pos(1), Lit::pos(1)],
        ],
    )
    .unwrap()];
    while solvable.len() < 10 || unsolvable.len() < 10 {
        let vars = gen::range(&mut rng, 2, 5);
        let sets = gen::range(&mut rng, 2, 3);
        let s = gen::gen_triples(vars, sets, &mut rng);
        if one_in_three_decide(&s).unwrap().is_some() {
            if solvable.len() < 10 {
                solvable.push(s);
            }
        } else if unsolvable.len() < 10 {
            unsolvable.push(s);
        }
    }
    (solvable, unsolvable)
}

fn thm6(seed: u64, budget_seconds: f64) -> Vec<Record> {
    let (solvable, unsolvable) = triple_pools(seed);
    let mut instances: Vec<(TripleSystem, usize)> = Vec::new();
    instances.extend(solvable.iter().cloned().map(|s| (s, 2)));
    instances.extend(unsolvable.iter().cloned().map(|s| (s, 3)));
    let mut records: Vec<Record> = instances
        .into_par_iter()
        .map(|(s, expect)| {
            let budget = Budget::seconds(budget_seconds);
            let digest = triples_digest(&s);
            let expected = format!("alpha(image) = {expect}");
            let g = one_in_three_graph(&s).unwrap();
            match alpha(&g, budget) {
                Ok(a) => record(digest, expected, format!("alpha = {a}"), a == expect),
                Err(SrpError::TimedOut) => timeout_record(digest, expected),
                Err(e) => record(digest, expected, e.to_string(), false),
            }
        })
        .collect();

    let smallest = |pool: &[TripleSystem]| {
        pool.iter()
            .min_by_key(|s| one_in_three_graph(s).unwrap().n())
            .unwrap()
            .clone()
    };
    let (s_sat, s_uns) = (smallest(&solvable), smallest(&unsolvable));
    let joins = vec![
        (s_sat.clone(), s_sat.clone(), 4usize),
        (s_sat, s_uns.clone(), 5),
        (s_uns.clone(), s_uns, 6),
    ];
    records.par_extend(joins.into_par_iter().map(|(x, y, expect)| {
        let budget = Budget::seconds(budget_seconds);
        let digest = digest_str(&format!("{}|{}", triples_digest(&x), triples_digest(&y)));
        let expected = format!("alpha(join) = {expect}");
        let g = one_in_three_pair_join(&x, &y).unwrap();
        match alpha(&g, budget) {
            Ok(a) => record(digest, expected, format!("alpha = {a}"), a == expect),
            Err(SrpError::TimedOut) => timeout_record(digest, expected),
            Err(e) => record(digest, expected, e.to_string(), false),
        }
    }));
    records
}

fn thm8(seed: u64, budget_seconds: f64) -> Vec<Record> {
    let (solvable, unsolvable) = triple_pools(seed);
    solvable
        .into_iter()
        .chain(unsolvable)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|s| {
            let budget = Budget::seconds(budget_seconds);
            let digest = triples_digest(&s);
            let expected = "alpha(image) = beta(image)".to_string();
            let g = one_in_three_graph(&s).unwrap();
            match alpha_beta_agree(&g, budget) {
                Ok(agree) => record(digest, expected, format!("agree = {agree}"), agree),
                Err(e) => record(digest, expected, e.to_string(), false),
            }
        })
        .collect()
}

fn thm10_k1() -> Vec<Record> {
    let mut records = Vec::new();
    for (a, b, _) in subdivision_pairs() {
        let pair = gadget_join(&a, &b).unwrap();
        let multi = multi_gadget_join(&[a, b]).unwrap();
        records.push(record(
            graph_digest(&pair),
            "two-operand multi gadget equals pair gadget".to_string(),
            format!("identical = {}", pair == multi),
            pair == multi,
        ));
    }
    let h3 = kaplan_shamir(&complete(3)).unwrap();
    let g = multi_gadget_join(&[h3.clone(), h3.clone(), h3.clone(), h3.clone()]).unwrap();
    let core = 4 * 6;
    let degrees_ok = (core..g.n()).all(|v| g.degree(v) == 11);
    records.push(record(
        graph_digest(&g),
        "every gadget vertex has degree 11 at arity 4".to_string(),
        format!("ok = {degrees_ok}, n = {}", g.n()),
        degrees_ok && g.n() == core + 12 * 81,
    ));
    for (k, want) in [(1usize, vec![5u64]), (2, vec![9, 11]), (3, vec![13, 15, 17])] {
        let got = domatic_target_set(k);
        records.push(record(
            digest_str(&format!("target-set-{k}")),
            format!("target set {want:?}"),
            format!("{:?}", got.values()),
            got.values() == want.as_slice(),
        ));
    }
    records
}

fn parity_k1(seed: u64, budget_seconds: f64) -> Vec<Record> {
    // ordered pairs of subdivision images (3-chromatic operand first)
    let corpus = subdivision_corpus(seed);
    let mut pairs: Vec<(Graph, Graph)> = vec![
        (complete(3), complete(3)),
        (complete(3), complete(4)),
        (complete(4), complete(4)),
    ];
    for w in corpus.windows(2).take(6) {
        let (a, b) = (w[0].clone(), w[1].clone());
        let (ca, cb) = (chromatic_number_classic(&a), chromatic_number_classic(&b));
        if ca != 3 && cb == 3 {
            pairs.push((b, a));
        } else {
            pairs.push((a, b));
        }
    }
    pairs
        .into_par_iter()
        .map(|(ga, gb)| {
            let budget = Budget::seconds(budget_seconds);
            let ha = kaplan_shamir(&ga).unwrap();
            let hb = kaplan_shamir(&gb).unwrap();
            let (odd, even) = parity_pair(&[ha, hb]).unwrap();
            let digest =
                digest_str(&format!("{}|{}", graph_digest(odd.graph()), graph_digest(even.graph())));
            let threes = [&ga, &gb]
                .iter()
                .filter(|g| chromatic_number_classic(g) == 3)
                .count();
            let expected = if threes % 2 == 0 {
                "delta(odd) = delta(even)".to_string()
            } else {
                "delta(odd) - 1 = delta(even)".to_string()
            };
            let da = domatic_number(odd.graph(), budget);
            let db = domatic_number(even.graph(), budget);
            match (da, db) {
                (Ok(da), Ok(db)) => {
                    let ok = if threes % 2 == 0 { da == db } else { da == db + 1 };
                    record(digest, expected, format!("delta(odd)={da} delta(even)={db}"), ok)
                }
                (Err(SrpError::TimedOut), _) | (_, Err(SrpError::TimedOut)) => {
                    timeout_record(digest, expected)
                }
                (Err(e), _) | (_, Err(e)) => record(digest, expected, e.to_string(), false),
            }
        })
        .collect()
}

fn fact1(seed: u64, budget_seconds: f64) -> Vec<Record> {
    gen::distinct_small_graphs(60, 6, seed)
        .into_par_iter()
        .map(|g| {
            let budget = Budget::seconds(budget_seconds);
            let digest = graph_digest(&g);
            let expected = "minimum problems upward, maximum problems downward".to_string();
            let mut violation = None;
            'outer: for sigma in SigmaRhoSpec::MENU {
                for rho in SigmaRhoSpec::MENU {
                    let level: Vec<bool> = (1..=5)
                        .map(|k| exists_partition(&g, k, sigma, rho, budget).is_yes())
                        .collect();
                    let minimum = rho == SigmaRhoSpec::NATS || rho == SigmaRhoSpec::ZERO_ONE;
                    let maximum = rho == SigmaRhoSpec::POS
                        && (sigma == SigmaRhoSpec::NATS || sigma == SigmaRhoSpec::POS);
                    for k in 0..4 {
                        if minimum && level[k] && !level[k + 1] {
                            violation = Some(format!("sigma={sigma} rho={rho} up at k={}", k + 1));
                            break 'outer;
                        }
                        if maximum && level[k + 1] && !level[k] {
                            violation = Some(format!("sigma={sigma} rho={rho} down at k={}", k + 1));
                            break 'outer;
                        }
                    }
                }
            }
            match violation {
                None => record(digest, expected, "monotone", true),
                Some(v) => record(digest, expected, v, false),
            }
        })
        .collect()
}

fn oracle_srp(seed: u64, budget_seconds: f64) -> Vec<Record> {
    gen::distinct_small_graphs(100, 6, seed)
        .into_par_iter()
        .map(|g| {
            let budget = Budget::seconds(budget_seconds);
            let digest = graph_digest(&g);
            let expected = "solver agrees with enumeration on the 25 menu pairs, k <= 4".to_string();
            let mut bad = None;
            'outer: for sigma in SigmaRhoSpec::MENU {
                for rho in SigmaRhoSpec::MENU {
                    for k in 1..=4usize {
                        let fast = exists_partition(&g, k, sigma, rho, budget);
                        let slow = brute_force_partition(&g, k, sigma, rho).unwrap();
                        if matches!(fast, SolveOutcome::TimedOut) {
                            bad = Some("timeout".to_string());
                            break 'outer;
                        }
                        if fast.is_yes() != slow.is_some() {
                            bad = Some(format!("k={k} sigma={sigma} rho={rho}"));
                            break 'outer;
                        }
                    }
                }
            }
            match bad {
                None => record(digest, expected, "agree", true),
                Some(which) if which == "timeout" => timeout_record(digest, expected),
                Some(which) => record(digest, expected, format!("disagree at {which}"), false),
            }
        })
        .collect()
}

fn oracle_cfsp(seed: u64, _budget_seconds: f64) -> Vec<Record> {
    let mut instances: Vec<TaskMatrix> = Vec::new();
    for n in 1..=3usize {
        for m in 1..=3usize {
            for bits in 0u32..1 << (n * m) {
                let cells: Vec<Vec<bool>> = (0..n)
                    .map(|j| (0..m).map(|p| bits >> (m * j + p) & 1 == 1).collect())
                    .collect();
                instances.push(TaskMatrix::new(cells).unwrap());
            }
        }
    }
    let mut rng = gen::rng(seed);
    let mut seeded = 0;
    while seeded < 50 {
        let m = gen::gen_matrix(4, 4, 0.45, &mut rng);
        if m.task_count() <= 10 {
            instances.push(m);
            seeded += 1;
        }
    }
    instances
        .into_par_iter()
        .map(|m| {
            let digest = matrix_digest(&m);
            let expected = "exact solver equals enumeration, witness valid".to_string();
            let (d, s) = delta_min(&m).unwrap();
            let oracle = delta_min_bruteforce(&m).unwrap();
            let ok = d == oracle && is_valid_schedule(&m, &s) && switch_count(&s) == d;
            record(digest, expected, format!("delta={d} oracle={oracle}"), ok)
        })
        .collect()
}

fn cfsp_compose(budget_seconds: f64) -> Vec<Record> {
    let mut universe: Vec<TaskMatrix> = Vec::new();
    for (n, m) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2)] {
        for bits in 0u32..1 << (n * m) {
            let cells: Vec<Vec<bool>> =
                (0..n).map(|j| (0..m).map(|p| bits >> (m * j + p) & 1 == 1).collect()).collect();
            universe.push(TaskMatrix::new(cells).unwrap());
        }
    }
    let mut lists: Vec<Vec<TaskMatrix>> = Vec::new();
    for a in &universe {
        lists.push(vec![a.clone()]);
        for b in &universe {
            lists.push(vec![a.clone(), b.clone()]);
        }
    }
    let mut records: Vec<Record> = lists
        .into_par_iter()
        .map(|blocks| {
            let budget = Budget::seconds(budget_seconds);
            let digest = digest_str(
                &blocks.iter().map(matrix_digest).collect::<Vec<_>>().join("|"),
            );
            let busy = blocks.iter().filter(|b| b.task_count() > 0).count() as i64;
            let want = (busy - 1).max(0);
            let expected = format!("offset = {want}");
            match composition_offset(&blocks, budget) {
                Ok(got) => record(digest, expected, format!("offset = {got}"), got == want),
                Err(e) => record(digest, expected, e.to_string(), false),
            }
        })
        .collect();
    for (z, k) in [(0u64, 1usize), (4, 2), (10, 3)] {
        let want: Vec<u64> = (0..k).map(|i| z + 2 * i as u64 + 1).collect();
        let got = sk_from_z(z, k, 0).unwrap();
        records.push(record(
            digest_str(&format!("sk-{z}-{k}")),
            format!("targets {want:?}"),
            format!("{:?}", got.values()),
            got.values() == want.as_slice(),
        ));
    }
    records
}
