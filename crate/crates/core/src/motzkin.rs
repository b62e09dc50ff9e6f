//! Free rational Motzkin paths and the factor/prefix/suffix restrictions that
//! cut out the image of the core-partition map.
//!
//! Two counting routes are provided and kept independent of each other:
//! [`enumerate_paths`] lists every path of the requested type and filters it
//! through [`satisfies`], while [`count_paths_dp`] runs a transfer-matrix DP
//! over (height, automaton state) with big-integer weights.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{gcd, Error, Result};

/// One unit step. The derived order `U < D < F` is the enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    U,
    D,
    F,
}

impl Step {
    pub const ALL: [Step; 3] = [Step::U, Step::D, Step::F];

    pub fn rise(self) -> i64 {
        match self {
            Step::U => 1,
            Step::D => -1,
            Step::F => 0,
        }
    }

    pub fn from_rise(dy: i64) -> Option<Step> {
        match dy {
            1 => Some(Step::U),
            -1 => Some(Step::D),
            0 => Some(Step::F),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
            Step::F => 'F',
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MotzkinPath {
    steps: Vec<Step>,
}

impl MotzkinPath {
    pub fn new(steps: Vec<Step>) -> Self {
        MotzkinPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Type `x`: the number of steps.
    pub fn x(&self) -> usize {
        self.steps.len()
    }

    /// Type `y`: final height.
    pub fn y(&self) -> i64 {
        self.steps.iter().map(|s| s.rise()).sum()
    }

    pub fn up_count(&self) -> usize {
        self.count(Step::U)
    }

    pub fn down_count(&self) -> usize {
        self.count(Step::D)
    }

    pub fn flat_count(&self) -> usize {
        self.count(Step::F)
    }

    fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    pub fn last_step(&self) -> Option<Step> {
        self.steps.last().copied()
    }

    /// Heights after each step, starting from 0.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = 0;
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(0);
        for s in &self.steps {
            h += s.rise();
            out.push(h);
        }
        out
    }

    pub fn to_record(&self) -> PathRecord {
        PathRecord {
            steps: self.to_string(),
            x: self.x(),
            y: self.y(),
            flats: self.flat_count(),
        }
    }

    /// `steps,x,y,flats,last`; `last` is empty for the empty path.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self,
            self.x(),
            self.y(),
            self.flat_count(),
            self.last_step().map(|s| s.to_string()).unwrap_or_default()
        )
    }
}

pub const CSV_HEADER: &str = "steps,x,y,flats,last";

impl fmt::Display for MotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for MotzkinPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'U' => Ok(Step::U),
                'D' => Ok(Step::D),
                'F' => Ok(Step::F),
                other => Err(Error::InvalidPath(format!(
                    "unexpected step letter {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(MotzkinPath::new)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    pub steps: String,
    pub x: usize,
    pub y: i64,
    pub flats: usize,
}

/// Parities of `(s, d)`; both even never occurs for coprime parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityCase {
    OddEven,
    OddOdd,
    EvenOdd,
}

impl ParityCase {
    pub fn of(s: u64, d: u64) -> Option<ParityCase> {
        match (s % 2, d % 2) {
            (1, 0) => Some(ParityCase::OddEven),
            (1, 1) => Some(ParityCase::OddOdd),
            (0, 1) => Some(ParityCase::EvenOdd),
            _ => None,
        }
    }
}

/// Forbidden factors `UF^iU` (`i <= max_gap`), prefixes `F^jU`
/// (`j <= max_prefix`) and suffixes `UF^k` (`k <= max_suffix`).
/// `None` switches a family off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PathConstraintSet {
    pub p: u32,
    pub parity: Option<ParityCase>,
    pub max_gap: Option<usize>,
    pub max_prefix: Option<usize>,
    pub max_suffix: Option<usize>,
}

fn floor_half(n: i64) -> Option<usize> {
    // ⌊n/2⌋ as a range bound; negative means the family is empty
    if n < 0 {
        None
    } else {
        Some((n / 2) as usize)
    }
}

impl PathConstraintSet {
    /// No restriction at all.
    pub fn none() -> Self {
        PathConstraintSet {
            p: 2,
            parity: None,
            max_gap: None,
            max_prefix: None,
            max_suffix: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.max_gap.is_none() && self.max_prefix.is_none() && self.max_suffix.is_none()
    }

    pub fn forbidden_factors(&self) -> Vec<MotzkinPath> {
        self.max_gap
            .map(|m| {
                (0..=m)
                    .map(|i| Self::word(&[Step::U], i, &[Step::U]))
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn forbidden_prefixes(&self) -> Vec<MotzkinPath> {
        self.max_prefix
            .map(|m| (0..=m).map(|j| Self::word(&[], j, &[Step::U])).collect())
            .unwrap_or_default()
    }

    pub fn forbidden_suffixes(&self) -> Vec<MotzkinPath> {
        self.max_suffix
            .map(|m| (0..=m).map(|k| Self::word(&[Step::U], k, &[])).collect())
            .unwrap_or_default()
    }

    fn word(head: &[Step], flats: usize, tail: &[Step]) -> MotzkinPath {
        let mut steps = head.to_vec();
        steps.extend(std::iter::repeat_n(Step::F, flats));
        steps.extend_from_slice(tail);
        MotzkinPath::new(steps)
    }
}

/// The restrictions for self-conjugate `(s, s+d, ..., s+pd)`-cores.
pub fn constraints_for(s: u64, d: u64, p: u32) -> Result<PathConstraintSet> {
    if s == 0 || d == 0 {
        return Err(Error::invalid("s and d must be positive"));
    }
    if gcd(s, d) != 1 {
        return Err(Error::invalid(format!("gcd({s},{d}) is not 1")));
    }
    if p < 2 {
        return Err(Error::invalid("p must be at least 2"));
    }
    let parity = ParityCase::of(s, d).expect("coprime");
    let p_i = p as i64;
    let max_gap = (p >= 3).then(|| (p - 3) as usize);
    let (max_prefix, max_suffix) = match parity {
        ParityCase::OddEven => (
            if p >= 4 { floor_half(p_i - 4) } else { None },
            if p >= 3 { floor_half(p_i - 3) } else { None },
        ),
        ParityCase::OddOdd => (
            if p >= 4 { floor_half(p_i - 4) } else { None },
            Some((p - 2) as usize),
        ),
        ParityCase::EvenOdd => (
            if p >= 3 { floor_half(p_i - 3) } else { None },
            Some((p - 2) as usize),
        ),
    };
    Ok(PathConstraintSet {
        p,
        parity: Some(parity),
        max_gap,
        max_prefix,
        max_suffix,
    })
}

/// Direct scan of a path against type and restrictions.
pub fn satisfies(path: &MotzkinPath, c: &PathConstraintSet, x: usize, y: i64) -> bool {
    if path.x() != x || path.y() != y {
        return false;
    }
    let steps = path.steps();
    if let Some(max) = c.max_prefix {
        let lead = steps.iter().take_while(|&&s| s == Step::F).count();
        if lead <= max && steps.get(lead) == Some(&Step::U) {
            return false;
        }
    }
    if let Some(max) = c.max_gap {
        for (k, _) in steps.iter().enumerate().filter(|(_, &s)| s == Step::U) {
            let gap = steps[k + 1..].iter().take_while(|&&s| s == Step::F).count();
            if gap <= max && steps.get(k + 1 + gap) == Some(&Step::U) {
                return false;
            }
        }
    }
    if let Some(max) = c.max_suffix {
        let trail = steps.iter().rev().take_while(|&&s| s == Step::F).count();
        if trail <= max && trail < steps.len() && steps[steps.len() - 1 - trail] == Step::U {
            return false;
        }
    }
    true
}

/// Every path of type `(x, y)` passing `c`, in lexicographic order `U < D < F`.
pub fn enumerate_paths(x: usize, y: i64, c: &PathConstraintSet) -> Vec<MotzkinPath> {
    fn rec(
        left: usize,
        height: i64,
        y: i64,
        cur: &mut Vec<Step>,
        out: &mut Vec<MotzkinPath>,
        c: &PathConstraintSet,
        x: usize,
    ) {
        if left == 0 {
            let path = MotzkinPath::new(cur.clone());
            if satisfies(&path, c, x, y) {
                out.push(path);
            }
            return;
        }
        for step in Step::ALL {
            let h = height + step.rise();
            if (y - h).unsigned_abs() as usize > left - 1 {
                continue;
            }
            cur.push(step);
            rec(left - 1, h, y, cur, out, c, x);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if y.unsigned_abs() as usize <= x {
        rec(x, 0, y, &mut Vec::with_capacity(x), &mut out, c, x);
    }
    out
}

/// Automaton state for the DP: how many leading flats have been read (while
/// the path is still all flats), and how many flats follow the most recent
/// up step (while nothing else has).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Scan {
    lead: Option<usize>,
    tail: Option<usize>,
}

struct Automaton {
    c: PathConstraintSet,
    cap: usize,
}

impl Automaton {
    fn new(c: PathConstraintSet) -> Self {
        let cap = [c.max_gap, c.max_prefix, c.max_suffix]
            .into_iter()
            .flatten()
            .max()
            .map_or(0, |m| m + 1);
        Automaton { c, cap }
    }

    fn start(&self) -> Scan {
        Scan {
            lead: Some(0),
            tail: None,
        }
    }

    fn next(&self, st: Scan, step: Step) -> Option<Scan> {
        match step {
            Step::U => {
                if let (Some(n), Some(max)) = (st.lead, self.c.max_prefix) {
                    if n <= max {
                        return None;
                    }
                }
                if let (Some(n), Some(max)) = (st.tail, self.c.max_gap) {
                    if n <= max {
                        return None;
                    }
                }
                Some(Scan {
                    lead: None,
                    tail: Some(0),
                })
            }
            Step::D => Some(Scan {
                lead: None,
                tail: None,
            }),
            Step::F => Some(Scan {
                lead: st.lead.map(|n| (n + 1).min(self.cap)),
                tail: st.tail.map(|n| (n + 1).min(self.cap)),
            }),
        }
    }

    fn accepts(&self, st: Scan) -> bool {
        match (st.tail, self.c.max_suffix) {
            (Some(n), Some(max)) => n > max,
            _ => true,
        }
    }
}

/// Number of paths of type `(x, y)` passing `c`, by DP over
/// (height, automaton state).
pub fn count_paths_dp(x: usize, y: i64, c: &PathConstraintSet) -> BigUint {
    if y.unsigned_abs() as usize > x {
        return BigUint::zero();
    }
    let auto = Automaton::new(*c);
    let mut layer: HashMap<(i64, Scan), BigUint> = HashMap::new();
    layer.insert((0, auto.start()), BigUint::one());
    for done in 0..x {
        let left = x - done - 1;
        let mut next: HashMap<(i64, Scan), BigUint> = HashMap::with_capacity(layer.len() * 2);
        for ((h, st), ways) in layer {
            for step in Step::ALL {
                let nh = h + step.rise();
                if (y - nh).unsigned_abs() as usize > left {
                    continue;
                }
                if let Some(ns) = auto.next(st, step) {
                    *next.entry((nh, ns)).or_default() += &ways;
                }
            }
        }
        layer = next;
    }
    layer
        .into_iter()
        .filter(|((h, st), _)| *h == y && auto.accepts(*st))
        .map(|(_, w)| w)
        .sum()
}
