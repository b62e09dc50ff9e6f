//! Brute-force enumerators and the per-instance verifier.
//!
//! [`enumerate_md_sets`] searches diagonal-hook sets directly using the
//! closure and pair-sum core conditions; [`enumerate_by_partition_scan`]
//! builds self-conjugate partitions one outer hook at a time and tests every
//! candidate against its full hook table. Neither touches the abacus or the
//! path map, so both can check them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bijection::{self, PhiContext};
use crate::formulas;
use crate::motzkin::{self, Step};
use crate::partition::{MdSet, SelfConjugatePartition};
use crate::{abacus, gcd, moduli, Error, Result};

/// Parameters of one brute-force enumeration. `p = 1` asks for plain
/// `(s, s+d)`-cores.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationTask {
    pub s: u64,
    pub d: u64,
    pub p: u32,
    /// Largest diagonal hook considered; defaults to [`Self::default_bound`].
    pub bound: Option<u64>,
}

impl EnumerationTask {
    pub fn new(s: u64, d: u64, p: u32) -> Self {
        EnumerationTask {
            s,
            d,
            p,
            bound: None,
        }
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = Some(bound);
        self
    }

    /// `s(s+d) - s - (s+d)`, the largest hook of any `(s, s+d)`-core;
    /// 0 when it is negative (`s = 1`).
    pub fn default_bound(&self) -> u64 {
        let t = self.s + self.d;
        (self.s * t).saturating_sub(self.s + t)
    }

    pub fn bound(&self) -> u64 {
        self.bound.unwrap_or_else(|| self.default_bound())
    }

    pub fn moduli(&self) -> Vec<u64> {
        moduli(self.s, self.d, self.p)
    }

    /// `(s²-1)((s+d)²-1)/24`, the largest size of an `(s, s+d)`-core.
    pub fn max_core_size(&self) -> u64 {
        let t = self.s + self.d;
        (self.s * self.s - 1) * (t * t - 1) / 24
    }

    fn check(&self) -> Result<()> {
        if self.s == 0 || self.d == 0 || self.p == 0 {
            return Err(Error::invalid("s, d and p must be positive"));
        }
        if gcd(self.s, self.d) != 1 {
            return Err(Error::invalid(format!(
                "gcd({},{}) is not 1",
                self.s, self.d
            )));
        }
        Ok(())
    }
}

/// Incremental core test for hooks added in increasing order.
struct HookSearch {
    two_t: Vec<u64>,
    present: Vec<bool>,
    /// `residues[k][r]`: chosen hooks congruent to `r` mod `2t_k`
    residues: Vec<Vec<u32>>,
}

impl HookSearch {
    fn new(moduli: &[u64], bound: u64) -> Self {
        let two_t: Vec<u64> = moduli.iter().map(|t| 2 * t).collect();
        HookSearch {
            residues: two_t.iter().map(|&m| vec![0; m as usize]).collect(),
            two_t,
            present: vec![false; bound as usize + 1],
        }
    }

    fn admits(&self, h: u64) -> bool {
        self.two_t.iter().zip(&self.residues).all(|(&m, res)| {
            let r = h % m;
            (h <= m || self.present[(h - m) as usize])
                && !(2 * h).is_multiple_of(m)
                && res[((m - r) % m) as usize] == 0
        })
    }

    fn set(&mut self, h: u64, on: bool) {
        self.present[h as usize] = on;
        for (&m, res) in self.two_t.iter().zip(self.residues.iter_mut()) {
            let slot = &mut res[(h % m) as usize];
            if on {
                *slot += 1;
            } else {
                *slot -= 1;
            }
        }
    }
}

/// Every diagonal-hook set with elements at most the task bound that is a
/// self-conjugate core for each modulus `s, s+d, ..., s+pd`, sorted.
///
/// Candidates are tried in increasing order; a hook is admitted only if its
/// closure predecessor `h - 2t` is already present for every modulus and it
/// forms no forbidden pair sum with what is present. Both conditions only
/// look downward, so every prefix of a valid set is valid and the search
/// never needs to backtrack past a rejected hook.
pub fn enumerate_md_sets(task: &EnumerationTask) -> Result<Vec<MdSet>> {
    task.check()?;
    let bound = task.bound();
    let candidates: Vec<u64> = (1..=bound).step_by(2).collect();
    let mut search = HookSearch::new(&task.moduli(), bound);
    let mut out = Vec::new();
    let mut chosen = Vec::new();

    fn rec(
        start: usize,
        candidates: &[u64],
        search: &mut HookSearch,
        chosen: &mut Vec<u64>,
        out: &mut Vec<MdSet>,
    ) {
        out.push(MdSet::new(chosen.clone()).expect("distinct odd hooks"));
        for idx in start..candidates.len() {
            let h = candidates[idx];
            if search.admits(h) {
                search.set(h, true);
                chosen.push(h);
                rec(idx + 1, candidates, search, chosen, out);
                chosen.pop();
                search.set(h, false);
            }
        }
    }

    rec(0, &candidates, &mut search, &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

/// Self-conjugate partitions of size at most `n_max` with no hook equal to any
/// modulus, found by hook-table checks only.
///
/// Deleting the first row and column of a partition leaves every other hook
/// unchanged, so the inner partition of a core is a core. Partitions are
/// therefore grown by wrapping a new outer diagonal hook around a core and
/// re-testing the full hook table.
pub fn enumerate_by_partition_scan(
    task: &EnumerationTask,
    n_max: u64,
) -> Result<Vec<SelfConjugatePartition>> {
    task.check()?;
    let moduli = task.moduli();
    let is_core = |lambda: &SelfConjugatePartition| {
        moduli
            .iter()
            .all(|&t| lambda.partition().is_core(t).expect("positive modulus"))
    };

    fn rec(
        inner: &mut Vec<u64>,
        size: u64,
        n_max: u64,
        is_core: &dyn Fn(&SelfConjugatePartition) -> bool,
        out: &mut Vec<SelfConjugatePartition>,
    ) {
        let lambda = MdSet::new(inner.clone())
            .expect("distinct odd hooks")
            .to_partition();
        if !is_core(&lambda) {
            return;
        }
        out.push(lambda);
        let first = inner.last().map_or(1, |&h| h + 2);
        let mut h = first;
        while size + h <= n_max {
            inner.push(h);
            rec(inner, size + h, n_max, is_core, out);
            inner.pop();
            h += 2;
        }
    }

    let mut out = Vec::new();
    rec(&mut Vec::new(), 0, n_max, &is_core, &mut out);
    out.sort();
    Ok(out)
}

/// Knobs for [`verify_instance`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Overrides the diagonal-hook bound of the main oracle.
    pub bound: Option<u64>,
    /// Also run the partition-scan oracle up to this size and compare.
    pub n_max: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Pass,
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl Check {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }

    fn ok(self) -> bool {
        self != Check::Fail
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Pass => "pass",
            Check::Fail => "fail",
            Check::NotApplicable => "n/a",
        })
    }
}

fn json_count<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(n) => s.serialize_u64(n),
        None => s.serialize_str(&v.to_str_radix(10)),
    }
}

fn json_opt_count<S: Serializer>(
    v: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => json_count(v, s),
        None => s.serialize_none(),
    }
}

/// Outcome of checking one `(s, d, p)` from every side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub s: u64,
    pub d: u64,
    pub p: u32,
    pub n_md: u64,
    pub n_path: u64,
    #[serde(serialize_with = "json_count")]
    pub n_dp: BigUint,
    #[serde(serialize_with = "json_opt_count")]
    pub n_formula: Option<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_scan: Option<u64>,
    pub roundtrip: Check,
    pub corners: Check,
    pub pass: bool,
    #[serde(skip)]
    pub problems: Vec<String>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s={} d={} p={} n_md={} n_path={} n_dp={} n_formula={}",
            self.s,
            self.d,
            self.p,
            self.n_md,
            self.n_path,
            self.n_dp,
            self.n_formula
                .as_ref()
                .map_or("-".to_string(), |v| v.to_string())
        )?;
        if let Some(n) = self.n_scan {
            write!(f, " n_scan={n}")?;
        }
        write!(
            f,
            " roundtrip={} corners={} {}",
            self.roundtrip,
            self.corners,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// Checks one instance: oracle count, path enumeration, DP count and closed
/// forms agree; the path map is a bijection onto the restricted paths with
/// the stated inverse; for `d = 1`, `p ∈ {2, 3}` the corner refinement holds.
pub fn verify_instance(s: u64, d: u64, p: u32, opts: &VerifyOptions) -> Result<VerifyReport> {
    if p < 2 {
        return Err(Error::invalid("p must be at least 2"));
    }
    let ctx = PhiContext::new(s, d, p)?;
    let mut task = EnumerationTask::new(s, d, p);
    task.bound = opts.bound;
    let cores = enumerate_md_sets(&task)?;
    let constraints = *ctx.constraints();
    let paths = motzkin::enumerate_paths(ctx.x(), ctx.y(), &constraints);
    let n_dp = motzkin::count_paths_dp(ctx.x(), ctx.y(), &constraints);
    let formulas = formulas::formula_counts(s, d, p)?;

    let n_md = cores.len() as u64;
    let n_path = paths.len() as u64;
    let mut problems = Vec::new();
    if n_md != n_path {
        problems.push(format!("oracle found {n_md} cores but {n_path} paths"));
    }
    if n_dp != BigUint::from(n_path) {
        problems.push(format!(
            "dp count {n_dp} differs from {n_path} listed paths"
        ));
    }
    for f in &formulas {
        if f.value != BigUint::from(n_md) {
            problems.push(format!(
                "{} gives {} but oracle found {n_md}",
                f.method, f.value
            ));
        }
    }

    let mut images = BTreeMap::new();
    let mut round_ok = true;
    for md in &cores {
        match round_trip(md, &ctx) {
            Ok(path) => {
                if let Some(prev) = images.insert(path.clone(), md.clone()) {
                    problems.push(format!("{prev} and {md} share the path {path}"));
                    round_ok = false;
                }
            }
            Err(e) => {
                problems.push(format!("{md}: {e}"));
                round_ok = false;
            }
        }
    }
    let image: BTreeSet<_> = images.keys().cloned().collect();
    let listed: BTreeSet<_> = paths.iter().cloned().collect();
    if round_ok && image != listed {
        problems.push("image of the path map differs from the restricted path set".into());
        round_ok = false;
    }
    let roundtrip = Check::from_bool(round_ok);

    let corners = if d == 1 && (p == 2 || p == 3) {
        let (ok, mut why) = corner_check(&cores, &ctx);
        problems.append(&mut why);
        Check::from_bool(ok)
    } else {
        Check::NotApplicable
    };

    let n_scan = match opts.n_max {
        Some(n_max) => {
            let scanned = enumerate_by_partition_scan(&task, n_max)?;
            let from_md: BTreeSet<_> = cores.iter().map(MdSet::to_partition).collect();
            let from_scan: BTreeSet<_> = scanned.iter().cloned().collect();
            if from_md != from_scan {
                problems.push(format!(
                    "partition scan found {} cores, hook-set search {}",
                    from_scan.len(),
                    from_md.len()
                ));
            }
            Some(scanned.len() as u64)
        }
        None => None,
    };

    Ok(VerifyReport {
        s,
        d,
        p,
        n_md,
        n_path,
        n_dp,
        n_formula: formulas.first().map(|f| f.value.clone()),
        n_scan,
        pass: problems.is_empty() && roundtrip.ok() && corners.ok(),
        roundtrip,
        corners,
        problems,
    })
}

fn round_trip(md: &MdSet, ctx: &PhiContext) -> Result<motzkin::MotzkinPath> {
    let state = abacus::place_beads(ctx.spec(), md)?;
    let f = abacus::abacus_function(&state);
    if !abacus::validate_core_function(&f, ctx.spec(), ctx.p()) {
        return Err(Error::Internal(format!(
            "abacus function {:?} fails validation",
            f.values()
        )));
    }
    let path = bijection::phi(md, ctx)?;
    if !motzkin::satisfies(&path, ctx.constraints(), ctx.x(), ctx.y()) {
        return Err(Error::Internal(format!(
            "{path} violates the path restrictions"
        )));
    }
    let back = bijection::phi_inverse(&path, ctx)?;
    if &back != md {
        return Err(Error::Internal(format!("{path} inverts to {back}")));
    }
    Ok(path)
}

/// Corner histogram against the closed forms, and last step / flat count of
/// every core against the corner parity rule.
fn corner_check(cores: &[MdSet], ctx: &PhiContext) -> (bool, Vec<String>) {
    let s = ctx.s();
    let mut problems = Vec::new();
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    for md in cores {
        let stats = match bijection::corner_statistics(md, ctx) {
            Ok(st) => st,
            Err(e) => {
                problems.push(format!("{md}: {e}"));
                continue;
            }
        };
        *histogram.entry(stats.corners as u64).or_default() += 1;
        let want_last = if stats.corners % 2 == 0 {
            Step::D
        } else {
            Step::F
        };
        if stats.last != Some(want_last.letter()) {
            problems.push(format!(
                "{md}: {} corners but last step {:?}",
                stats.corners, stats.last
            ));
        }
        if stats.flats as i64 != bijection::expected_flats(s, stats.corners) {
            problems.push(format!(
                "{md}: {} corners but {} flats",
                stats.corners, stats.flats
            ));
        }
    }
    let top = histogram.keys().next_back().copied().unwrap_or(0).max(s);
    for m in 0..=top {
        let want = if ctx.p() == 2 {
            formulas::count_corners_p2(s, m)
        } else {
            formulas::count_corners_p3(s, m)
        }
        .expect("s positive")
        .value;
        let got = histogram.get(&m).copied().unwrap_or(0);
        if want != BigUint::from(got) {
            problems.push(format!("{got} cores with {m} corners, formula says {want}"));
        }
    }
    (problems.is_empty(), problems)
}

/// Runs [`verify_instance`] over a grid in parallel; results keep grid order.
pub fn verify_sweep(grid: &[(u64, u64, u32)], opts: &VerifyOptions) -> Vec<Result<VerifyReport>> {
    grid.par_iter()
        .map(|&(s, d, p)| verify_instance(s, d, p, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[u64]) -> MdSet {
        MdSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn md_enumeration_examples() {
        assert_eq!(
            enumerate_md_sets(&EnumerationTask::new(3, 2, 2)).unwrap(),
            vec![MdSet::empty(), md(&[1])]
        );
        assert_eq!(
            enumerate_md_sets(&EnumerationTask::new(2, 1, 1)).unwrap(),
            vec![MdSet::empty(), md(&[1])]
        );
        for d in 1..8 {
            for p in 1..5 {
                assert_eq!(
                    enumerate_md_sets(&EnumerationTask::new(1, d, p)).unwrap(),
                    vec![MdSet::empty()]
                );
            }
        }
        assert!(enumerate_md_sets(&EnumerationTask::new(4, 2, 2)).is_err());
    }

    #[test]
    fn partition_scan_examples() {
        let parts = |v: Vec<SelfConjugatePartition>| -> Vec<Vec<usize>> {
            v.iter().map(|l| l.parts().to_vec()).collect()
        };
        assert_eq!(
            parts(enumerate_by_partition_scan(&EnumerationTask::new(3, 2, 2), 10).unwrap()),
            vec![vec![], vec![1]]
        );
        for (s, d, p) in [(3, 2, 2), (5, 1, 3), (7, 4, 2)] {
            assert_eq!(
                parts(enumerate_by_partition_scan(&EnumerationTask::new(s, d, p), 0).unwrap()),
                vec![Vec::<usize>::new()]
            );
        }
        assert_eq!(
            parts(enumerate_by_partition_scan(&EnumerationTask::new(2, 1, 1), 5).unwrap()),
            vec![vec![], vec![1]]
        );
    }

    #[test]
    fn bound_is_not_binding() {
        for s in 1..8u64 {
            for d in 1..6u64 {
                if gcd(s, d) != 1 {
                    continue;
                }
                for p in 1..4 {
                    let task = EnumerationTask::new(s, d, p);
                    let base = enumerate_md_sets(&task).unwrap();
                    let wide =
                        enumerate_md_sets(&task.with_bound(2 * task.default_bound() + 11)).unwrap();
                    assert_eq!(base, wide, "s={s} d={d} p={p}");
                    let b = task.default_bound();
                    assert!(base.iter().all(|m| m.largest().is_none_or(|h| h <= b)));
                }
            }
        }
    }

    #[test]
    fn verify_examples() {
        let opts = VerifyOptions::default();
        let r = verify_instance(3, 2, 2, &opts).unwrap();
        assert!(r.pass, "{r} {:?}", r.problems);
        assert_eq!((r.n_md, r.n_path), (2, 2));
        assert_eq!(r.n_dp, BigUint::from(2u32));
        assert_eq!(r.n_formula, Some(BigUint::from(2u32)));

        let r = verify_instance(1, 1, 2, &opts).unwrap();
        assert!(r.pass);
        assert_eq!((r.n_md, r.n_path), (1, 1));
        assert_eq!(r.corners, Check::Pass);

        assert!(verify_instance(4, 2, 2, &opts).is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = verify_instance(3, 2, 2, &VerifyOptions::default()).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"s":3,"d":2,"p":2,"n_md":2,"n_path":2,"n_dp":2,"n_formula":2,"roundtrip":"pass","corners":"n/a","pass":true}"#
        );
        let r = verify_instance(5, 2, 4, &VerifyOptions::default()).unwrap();
        assert!(serde_json::to_string(&r)
            .unwrap()
            .contains(r#""n_formula":null"#));
        assert_eq!(
            r.to_string(),
            format!("s=5 d=2 p=4 n_md={0} n_path={0} n_dp={0} n_formula=- roundtrip=pass corners=n/a PASS", r.n_md)
        );
    }
}
