//! 3-literal formula types and brute-force oracles: plain satisfiability,
//! not-all-equal satisfiability, one-in-three hitting, and max-sat counts.
//! All oracles enumerate assignments exhaustively under a size guard.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SatError {
    #[error("instance too large for exhaustive enumeration ({0} variables)")]
    TooLarge(usize),
    #[error("clause {0} has a variable index out of range")]
    VarOutOfRange(usize),
    #[error("padding changed not-all-equal satisfiability")]
    PadFailure,
}

/// Enumeration guard: oracles refuse beyond 2^24 assignments.
pub const MAX_ORACLE_VARS: usize = 24;

/// A literal: 0-based variable index plus polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    pub var: u32,
    pub negated: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit { var: var as u32, negated: false }
    }

    pub fn neg(var: usize) -> Lit {
        Lit { var: var as u32, negated: true }
    }

    pub fn complement(self) -> Lit {
        Lit { var: self.var, negated: !self.negated }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var as usize] ^ self.negated
    }

    /// Signed 1-based wire form: `+v` positive, `-v` negated.
    pub fn to_signed(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn from_signed(s: i64) -> Result<Lit, String> {
        if s == 0 {
            return Err("literal 0 is not valid".into());
        }
        Ok(Lit { var: (s.unsigned_abs() - 1) as u32, negated: s < 0 })
    }
}

pub type Clause = [Lit; 3];

/// CNF with exactly three literals per clause. Repeated literals inside a
/// clause are permitted; degenerate clauses like (x v x v x) arise in the
/// standard reductions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "raw::Cnf3Json", into = "raw::Cnf3Json")]
pub struct Cnf3 {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
    /// Optional variable names; used only to detect accidental sharing when
    /// two formulas are combined.
    pub names: Option<Vec<String>>,
}

impl Cnf3 {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, SatError> {
        for (i, c) in clauses.iter().enumerate() {
            if c.iter().any(|l| l.var as usize >= num_vars) {
                return Err(SatError::VarOutOfRange(i));
            }
        }
        Ok(Cnf3 { num_vars, clauses, names: None })
    }
}

/// Collection of 3-member literal multisets; intersection counts are
/// multiplicity-aware.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "raw::TripleSystemJson", into = "raw::TripleSystemJson")]
pub struct TripleSystem {
    pub num_vars: usize,
    pub sets: Vec<[Lit; 3]>,
}

impl TripleSystem {
    pub fn new(num_vars: usize, sets: Vec<[Lit; 3]>) -> Result<Self, SatError> {
        for (i, s) in sets.iter().enumerate() {
            if s.iter().any(|l| l.var as usize >= num_vars) {
                return Err(SatError::VarOutOfRange(i));
            }
        }
        Ok(TripleSystem { num_vars, sets })
    }

    pub fn all_positive(&self) -> bool {
        self.sets.iter().all(|s| s.iter().all(|l| !l.negated))
    }
}

/// Truth value per variable.
pub type Assignment = Vec<bool>;

fn assignments(num_vars: usize) -> Result<impl Iterator<Item = Assignment>, SatError> {
    if num_vars > MAX_ORACLE_VARS {
        return Err(SatError::TooLarge(num_vars));
    }
    Ok((0u64..1 << num_vars).map(move |bits| (0..num_vars).map(|v| bits >> v & 1 == 1).collect()))
}

fn clause_true_count(c: &Clause, t: &[bool]) -> usize {
    c.iter().filter(|l| l.eval(t)).count()
}

/// Exhaustive satisfiability check; `Some` carries a satisfying assignment.
pub fn sat3_decide(f: &Cnf3) -> Result<Option<Assignment>, SatError> {
    Ok(assignments(f.num_vars)?
        .find(|t| f.clauses.iter().all(|c| clause_true_count(c, t) >= 1)))
}

/// Not-all-equal satisfiability: every clause needs at least one true and at
/// least one false literal.
pub fn nae3_decide(f: &Cnf3) -> Result<Option<Assignment>, SatError> {
    Ok(assignments(f.num_vars)?.find(|t| {
        f.clauses.iter().all(|c| {
            let k = clause_true_count(c, t);
            (1..3).contains(&k)
        })
    }))
}

/// One-in-three: some assignment makes exactly one literal (with
/// multiplicity) of every set true. `Some` carries the witness set of true
/// literals.
pub fn one_in_three_decide(s: &TripleSystem) -> Result<Option<Vec<Lit>>, SatError> {
    Ok(assignments(s.num_vars)?
        .find(|t| s.sets.iter().all(|set| set.iter().filter(|l| l.eval(t)).count() == 1))
        .map(|t| {
            (0..s.num_vars)
                .map(|v| if t[v] { Lit::pos(v) } else { Lit::neg(v) })
                .collect()
        }))
}

/// (max satisfiable clause count, min unsatisfied clause count); the two
/// always sum to the clause count.
pub fn max_sat_stats(f: &Cnf3) -> Result<(usize, usize), SatError> {
    let mut best = 0;
    for t in assignments(f.num_vars)? {
        let sat = f.clauses.iter().filter(|c| clause_true_count(c, &t) >= 1).count();
        best = best.max(sat);
        if best == f.clauses.len() {
            break;
        }
    }
    Ok((best, f.clauses.len() - best))
}

/// Appends the literal-wise negation of every clause. Not-all-equal
/// satisfiability is invariant under this closure: an assignment leaves at
/// least one true and one false literal in a clause exactly when it does so
/// in the clause's mirror.
pub fn nae_closure(f: &Cnf3) -> Cnf3 {
    let mut clauses = f.clauses.clone();
    clauses.extend(f.clauses.iter().map(|c| c.map(Lit::complement)));
    Cnf3 { num_vars: f.num_vars, clauses, names: f.names.clone() }
}

/// Report of what padding did to a formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PadReport {
    pub added_vars: usize,
    pub added_clause_pairs: usize,
}

/// Brings a formula into the shape the not-all-equal graph construction
/// assumes: at least two variables, and every literal occurring in some
/// clause. Gaps are filled with clause pairs of the form (l v w v ~w) plus
/// the literal-wise negation, which every assignment satisfies in the
/// not-all-equal sense; if nothing is missing one such canonical pair is
/// still appended so padded formulas have a uniform shape. The result is
/// checked against the oracle when small enough.
pub fn pad_for_nae(f: &Cnf3) -> Result<(Cnf3, PadReport), SatError> {
    let mut g = f.clone();
    let mut report = PadReport::default();
    while g.num_vars < 2 {
        if let Some(names) = &mut g.names {
            names.push(format!("_pad{}", g.num_vars));
        }
        g.num_vars += 1;
        report.added_vars += 1;
    }
    fn push_pair(g: &mut Cnf3, report: &mut PadReport, lit: Lit) {
        let w = if lit.var == 0 { 1 } else { 0 };
        let c: Clause = [lit, Lit::pos(w), Lit::neg(w)];
        g.clauses.push(c);
        g.clauses.push(c.map(Lit::complement));
        report.added_clause_pairs += 1;
    }
    loop {
        let missing = (0..g.num_vars)
            .flat_map(|v| [Lit::pos(v), Lit::neg(v)])
            .find(|l| !g.clauses.iter().any(|c| c.contains(l)));
        match missing {
            Some(l) => push_pair(&mut g, &mut report, l),
            None => break,
        }
    }
    if report.added_clause_pairs == 0 && report.added_vars == 0 {
        push_pair(&mut g, &mut report, Lit::pos(0));
    }
    if g.num_vars <= MAX_ORACLE_VARS && f.num_vars <= MAX_ORACLE_VARS {
        let before = nae3_decide(f)?.is_some();
        let after = nae3_decide(&g)?.is_some();
        if before != after {
            return Err(SatError::PadFailure);
        }
    }
    Ok((g, report))
}

mod raw {
    use super::*;

    /// `{"num_vars": int, "clauses": [[±int,±int,±int],...]}`, 1-based signed
    /// literals.
    #[derive(Serialize, Deserialize)]
    pub struct Cnf3Json {
        pub num_vars: usize,
        pub clauses: Vec<[i64; 3]>,
        #[serde(skip_serializing_if = "Option::is_none")]
        pub names: Option<Vec<String>>,
    }

    impl TryFrom<Cnf3Json> for Cnf3 {
        type Error = String;
        fn try_from(j: Cnf3Json) -> Result<Self, Self::Error> {
            let clauses = j
                .clauses
                .iter()
                .map(|c| Ok([Lit::from_signed(c[0])?, Lit::from_signed(c[1])?, Lit::from_signed(c[2])?]))
                .collect::<Result<Vec<_>, String>>()?;
            let mut f = Cnf3::new(j.num_vars, clauses).map_err(|e| e.to_string())?;
            if let Some(names) = j.names {
                if names.len() != j.num_vars {
                    return Err("names length must equal num_vars".into());
                }
                f.names = Some(names);
            }
            Ok(f)
        }
    }

    impl From<Cnf3> for Cnf3Json {
        fn from(f: Cnf3) -> Self {
            Cnf3Json {
                num_vars: f.num_vars,
                clauses: f.clauses.iter().map(|c| c.map(Lit::to_signed)).collect(),
                names: f.names,
            }
        }
    }

    /// Same literal wire form, under a `sets` key.
    #[derive(Serialize, Deserialize)]
    pub struct TripleSystemJson {
        pub num_vars: usize,
        pub sets: Vec<[i64; 3]>,
    }

    impl TryFrom<TripleSystemJson> for TripleSystem {
        type Error = String;
        fn try_from(j: TripleSystemJson) -> Result<Self, Self::Error> {
            let sets = j
                .sets
                .iter()
                .map(|c| Ok([Lit::from_signed(c[0])?, Lit::from_signed(c[1])?, Lit::from_signed(c[2])?]))
                .collect::<Result<Vec<_>, String>>()?;
            TripleSystem::new(j.num_vars, sets).map_err(|e| e.to_string())
        }
    }

    impl From<TripleSystem> for TripleSystemJson {
        fn from(s: TripleSystem) -> Self {
            TripleSystemJson {
                num_vars: s.num_vars,
                sets: s.sets.iter().map(|c| c.map(Lit::to_signed)).collect(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnf(num_vars: usize, clauses: &[[i64; 3]]) -> Cnf3 {
        let cs = clauses
            .iter()
            .map(|c| {
                [
                    Lit::from_signed(c[0]).unwrap(),
                    Lit::from_signed(c[1]).unwrap(),
                    Lit::from_signed(c[2]).unwrap(),
                ]
            })
            .collect();
        Cnf3::new(num_vars, cs).unwrap()
    }

    #[test]
    fn sat3_examples() {
        assert!(sat3_decide(&cnf(1, &[[1, 1, 1]])).unwrap().is_some());
        assert!(sat3_decide(&cnf(1, &[[1, 1, 1], [-1, -1, -1]])).unwrap().is_none());
        assert!(sat3_decide(&cnf(3, &[[1, 2, 3]])).unwrap().is_some());
    }

    #[test]
    fn nae3_examples() {
        let f = cnf(3, &[[1, 2, 3]]);
        let t = nae3_decide(&f).unwrap().expect("one true one false exists");
        let k = f.clauses[0].iter().filter(|l| l.eval(&t)).count();
        assert!((1..3).contains(&k));
        assert!(nae3_decide(&cnf(1, &[[1, 1, 1]])).unwrap().is_none());
        assert!(nae3_decide(&cnf(3, &[[1, 2, 3], [-1, -2, -3]])).unwrap().is_some());
    }

    #[test]
    fn nae3_agrees_with_direct_double_loop() {
        let pool: Vec<[i64; 3]> = vec![[1, 2, 3], [-1, 2, -3], [1, 1, -2], [3, 3, 3], [-2, -2, 1]];
        for a in 0..pool.len() {
            for b in a..pool.len() {
                for c in b..pool.len() {
                    let f = cnf(3, &[pool[a], pool[b], pool[c]]);
                    let direct = (0u8..8).any(|bits| {
                        let t: Vec<bool> = (0..3).map(|v| bits >> v & 1 == 1).collect();
                        f.clauses.iter().all(|cl| {
                            let trues = cl.iter().filter(|l| l.eval(&t)).count();
                            trues >= 1 && 3 - trues >= 1
                        })
                    });
                    assert_eq!(nae3_decide(&f).unwrap().is_some(), direct);
                }
            }
        }
    }

    #[test]
    fn one_in_three_examples() {
        let s = TripleSystem::new(3, vec![[Lit::pos(0), Lit::pos(1), Lit::pos(2)]]).unwrap();
        let t = one_in_three_decide(&s).unwrap().expect("pick exactly one");
        assert_eq!(s.sets[0].iter().filter(|l| t.contains(l)).count(), 1);

        let s2 = TripleSystem::new(
            5,
            vec![
                [Lit::pos(0), Lit::pos(1), Lit::pos(2)],
                [Lit::pos(0), Lit::pos(1), Lit::pos(3)],
                [Lit::pos(2), Lit::pos(3), Lit::pos(4)],
            ],
        )
        .unwrap();
        let w = one_in_three_decide(&s2).unwrap().expect("x true rest false works");
        for set in &s2.sets {
            assert_eq!(set.iter().filter(|l| w.contains(l)).count(), 1);
        }

        // multiplicity-aware: {x,x,y} forces x false, y true
        let s3 = TripleSystem::new(2, vec![[Lit::pos(0), Lit::pos(0), Lit::pos(1)]]).unwrap();
        let w3 = one_in_three_decide(&s3).unwrap().expect("y alone works");
        assert!(w3.contains(&Lit::neg(0)) && w3.contains(&Lit::pos(1)));
    }

    #[test]
    fn max_sat_examples() {
        let sat = cnf(3, &[[1, 2, 3], [-1, 2, 3]]);
        assert_eq!(max_sat_stats(&sat).unwrap(), (2, 0));
        assert_eq!(max_sat_stats(&cnf(1, &[[1, 1, 1], [-1, -1, -1]])).unwrap(), (1, 1));
        assert_eq!(max_sat_stats(&cnf(2, &[])).unwrap(), (0, 0));
    }

    #[test]
    fn max_sat_u_zero_iff_satisfiable() {
        let pool: Vec<[i64; 3]> = vec![[1, 2, 3], [-1, -2, -3], [1, 1, 1], [-1, -1, -1], [2, -3, 1]];
        for a in 0..pool.len() {
            for b in a..pool.len() {
                let f = cnf(3, &[pool[a], pool[b]]);
                let (_, u) = max_sat_stats(&f).unwrap();
                assert_eq!(u == 0, sat3_decide(&f).unwrap().is_some());
            }
        }
    }

    #[test]
    fn closure_doubles_and_negates() {
        let f = cnf(3, &[[1, 2, 3]]);
        let g = nae_closure(&f);
        assert_eq!(g.clauses.len(), 2);
        assert_eq!(g.clauses[1], [Lit::neg(0), Lit::neg(1), Lit::neg(2)]);
    }

    #[test]
    fn closure_idempotent_up_to_clause_set() {
        use std::collections::BTreeSet;
        let f = cnf(4, &[[1, -2, 3], [2, 3, 4]]);
        let once: BTreeSet<Clause> = nae_closure(&f).clauses.into_iter().collect();
        let twice: BTreeSet<Clause> = nae_closure(&nae_closure(&f)).clauses.into_iter().collect();
        assert_eq!(once, twice);
    }

    #[test]
    fn closure_preserves_nae_satisfiability() {
        let pool: Vec<[i64; 3]> = vec![[1, 2, 3], [-1, 2, 4], [1, 1, -1], [3, 3, 3], [-4, 2, -2]];
        for a in 0..pool.len() {
            for b in a..pool.len() {
                for c in b..pool.len() {
                    let f = cnf(4, &[pool[a], pool[b], pool[c]]);
                    assert_eq!(
                        nae3_decide(&f).unwrap().is_some(),
                        nae3_decide(&nae_closure(&f)).unwrap().is_some()
                    );
                }
            }
        }
    }

    #[test]
    fn padding_covers_all_literals_and_preserves_nae() {
        // ~x3 does not occur here
        let f = cnf(3, &[[1, -2, 3], [-1, 2, 3]]);
        let (g, report) = pad_for_nae(&f).unwrap();
        assert_eq!(report.added_clause_pairs, 1);
        assert_eq!(g.clauses.len(), 4);
        for v in 0..g.num_vars {
            for l in [Lit::pos(v), Lit::neg(v)] {
                assert!(g.clauses.iter().any(|c| c.contains(&l)), "literal {l:?} missing");
            }
        }
        // a complete formula still gets the canonical pair
        let h = cnf(3, &[[1, 2, 3], [-1, -2, -3]]);
        let (hp, rep) = pad_for_nae(&h).unwrap();
        assert_eq!(rep.added_clause_pairs, 1);
        assert_eq!(hp.clauses.len(), 4);
        // tiny formulas gain variables
        let tiny = cnf(1, &[[1, 1, 1]]);
        let (tp, rep) = pad_for_nae(&tiny).unwrap();
        assert!(tp.num_vars >= 2 && rep.added_vars >= 1);
    }

    #[test]
    fn json_round_trip_and_schema() {
        let f = cnf(3, &[[1, -2, 3]]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"num_vars":3,"clauses":[[1,-2,3]]}"#);
        let back: Cnf3 = serde_json::from_str(&s).unwrap();
        assert_eq!(f, back);

        let ts = TripleSystem::new(2, vec![[Lit::pos(0), Lit::pos(1), Lit::pos(0)]]).unwrap();
        let s = serde_json::to_string(&ts).unwrap();
        assert_eq!(s, r#"{"num_vars":2,"sets":[[1,2,1]]}"#);
        let back: TripleSystem = serde_json::from_str(&s).unwrap();
        assert_eq!(ts, back);
    }
}
