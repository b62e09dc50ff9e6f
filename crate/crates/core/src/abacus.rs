//! The `(s+d,d;a)`-abacus of a self-conjugate partition.
//!
//! Columns `j = 0..=⌊(s+d-1)/2⌋`, rows `i ∈ ℤ`, position `(i,j)` carries the odd
//! label `a + 2(s+d)i + 2dj`, where `-a` is the smaller odd number among `s`
//! and `s+d`. A bead sits on every position whose label has absolute value in
//! the diagonal-hook set. Every odd `h` not congruent to `s+d` mod `2(s+d)`
//! has exactly one position labelled `±h`.
//!
//! For an `(s+d)`-core the beads of a column form one contiguous run that
//! touches the sign boundary `r(j)` from above (positive labels) or from below
//! (negative labels), never both. The signed run length `b(j)` therefore
//! describes the whole column and the abacus function is `f(j) = r(j) - 1 + b(j)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::motzkin::ParityCase;
use crate::partition::MdSet;
use crate::{gcd, Error, Result};

/// Parameters `(s, d)` of the abacus together with the derived offset `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AbacusSpec {
    s: u64,
    d: u64,
    a: i64,
}

impl AbacusSpec {
    pub fn new(s: u64, d: u64) -> Result<Self> {
        if s == 0 || d == 0 {
            return Err(Error::invalid("s and d must be positive"));
        }
        if gcd(s, d) != 1 {
            return Err(Error::invalid(format!(
                "gcd({s},{d}) = {} is not 1",
                gcd(s, d)
            )));
        }
        let a = if s % 2 == 1 {
            -(s as i64)
        } else {
            -((s + d) as i64)
        };
        Ok(AbacusSpec { s, d, a })
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn parity_case(&self) -> ParityCase {
        ParityCase::of(self.s, self.d).expect("coprime s, d are never both even")
    }

    /// `⌊(s+d+1)/2⌋`.
    pub fn columns(&self) -> usize {
        (self.s + self.d).div_ceil(2) as usize
    }

    /// `⌊(s+d-1)/2⌋`.
    pub fn last_column(&self) -> usize {
        self.columns() - 1
    }

    fn row_step(&self) -> i64 {
        2 * (self.s + self.d) as i64
    }

    fn column_offset(&self, j: usize) -> i64 {
        self.a + 2 * self.d as i64 * j as i64
    }

    pub fn label(&self, i: i64, j: usize) -> Result<i64> {
        if j > self.last_column() {
            return Err(Error::invalid(format!(
                "column {j} outside 0..={}",
                self.last_column()
            )));
        }
        Ok(self.label_at(i, j))
    }

    pub(crate) fn label_at(&self, i: i64, j: usize) -> i64 {
        self.column_offset(j) + self.row_step() * i
    }

    /// `r(j)`: the lowest row of column `j` with a positive label.
    pub fn boundary_row(&self, j: usize) -> i64 {
        let r = Integer::div_floor(&(-self.column_offset(j)), &self.row_step()) + 1;
        debug_assert!(self.label_at(r, j) > 0 && self.label_at(r - 1, j) < 0);
        r
    }

    /// The unique position whose label is `h` or `-h`.
    pub fn locate(&self, h: u64) -> Result<(i64, usize)> {
        let m = self.s + self.d;
        if h.is_multiple_of(2) || h % (2 * m) == m {
            return Err(Error::UnplaceableHook {
                hook: h,
                modulus: m,
                d: self.d,
            });
        }
        let step = self.row_step();
        let h = h as i64;
        let mut found = None;
        for j in 0..self.columns() {
            let off = self.column_offset(j);
            for target in [h, -h] {
                let diff = target - off;
                if diff.rem_euclid(step) == 0 {
                    debug_assert!(found.is_none(), "two positions labelled ±{h}");
                    found = Some((diff / step, j));
                }
            }
        }
        found.ok_or(Error::UnplaceableHook {
            hook: h as u64,
            modulus: m,
            d: self.d,
        })
    }
}

/// Bead data of an abacus: one signed run length per column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbacusState {
    spec: AbacusSpec,
    beads: Vec<i64>,
}

impl AbacusState {
    pub fn empty(spec: AbacusSpec) -> Self {
        AbacusState {
            spec,
            beads: vec![0; spec.columns()],
        }
    }

    pub fn spec(&self) -> &AbacusSpec {
        &self.spec
    }

    /// `b(j)` for every column.
    pub fn beads(&self) -> &[i64] {
        &self.beads
    }

    /// Rows holding a bead in column `j`, ascending.
    pub fn bead_rows(&self, j: usize) -> Vec<i64> {
        let r = self.spec.boundary_row(j);
        let b = self.beads[j];
        if b >= 0 {
            (r..r + b).collect()
        } else {
            (r + b..r).collect()
        }
    }

    pub fn has_bead(&self, i: i64, j: usize) -> bool {
        let r = self.spec.boundary_row(j);
        let b = self.beads[j];
        if b >= 0 {
            i >= r && i < r + b
        } else {
            i >= r + b && i < r
        }
    }

    /// Diagonal hooks read back off the beads.
    pub fn md(&self) -> MdSet {
        let hooks = (0..self.beads.len())
            .flat_map(|j| {
                self.bead_rows(j)
                    .into_iter()
                    .map(move |i| self.spec.label_at(i, j).unsigned_abs())
            })
            .collect();
        MdSet::new(hooks).expect("abacus labels are distinct odd integers")
    }

    pub fn to_record(&self) -> AbacusRecord {
        let f = abacus_function(self);
        AbacusRecord {
            s: self.spec.s,
            d: self.spec.d,
            a: self.spec.a,
            columns: (0..self.beads.len())
                .map(|j| ColumnRecord {
                    j,
                    r: self.spec.boundary_row(j),
                    b: self.beads[j],
                    f: f.values()[j],
                })
                .collect(),
        }
    }
}

/// Values `f(0), ..., f(⌊(s+d-1)/2⌋)`.
///
/// For a self-conjugate `(s, s+d, s+2d)`-core, `f(0) = 0` and consecutive
/// values differ by at most one; other inputs are representable but fail
/// [`validate_core_function`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbacusFunction(Vec<i64>);

impl AbacusFunction {
    pub fn new(values: Vec<i64>) -> Self {
        AbacusFunction(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Places one bead per diagonal hook and checks the column structure.
pub fn place_beads(spec: &AbacusSpec, md: &MdSet) -> Result<AbacusState> {
    let mut by_column: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
    for &h in md.elements() {
        let (i, j) = spec.locate(h)?;
        by_column.entry(j).or_default().push(i);
    }
    let mut state = AbacusState::empty(*spec);
    for (j, mut rows) in by_column {
        rows.sort_unstable();
        let r = spec.boundary_row(j);
        let lo = rows[0];
        let hi = *rows.last().unwrap();
        let n = rows.len() as i64;
        if lo >= r {
            if lo != r || hi - lo + 1 != n {
                return Err(Error::Structure {
                    column: j,
                    reason: format!(
                        "positive beads on rows {rows:?} are not a run starting at row {r}"
                    ),
                });
            }
            state.beads[j] = n;
        } else if hi < r {
            if hi != r - 1 || hi - lo + 1 != n {
                return Err(Error::Structure {
                    column: j,
                    reason: format!(
                        "negative beads on rows {rows:?} are not a run ending at row {}",
                        r - 1
                    ),
                });
            }
            state.beads[j] = -n;
        } else {
            return Err(Error::Structure {
                column: j,
                reason: format!("beads on both sides of boundary row {r}"),
            });
        }
    }
    Ok(state)
}

/// `f(j)`: the top bead row when the column has positive beads, otherwise the
/// top spacer row with a negative label. Both read `r(j) - 1 + b(j)`.
pub fn abacus_function(state: &AbacusState) -> AbacusFunction {
    AbacusFunction(
        state
            .beads
            .iter()
            .enumerate()
            .map(|(j, &b)| state.spec.boundary_row(j) - 1 + b)
            .collect(),
    )
}

/// Inverse of [`abacus_function`]: `b(j) = f(j) - r(j) + 1`.
pub fn beads_from_function(spec: &AbacusSpec, f: &AbacusFunction) -> Result<AbacusState> {
    if f.len() != spec.columns() {
        return Err(Error::invalid(format!(
            "abacus function has {} values, expected {}",
            f.len(),
            spec.columns()
        )));
    }
    let beads = f
        .values()
        .iter()
        .enumerate()
        .map(|(j, &v)| v - spec.boundary_row(j) + 1)
        .collect();
    Ok(AbacusState { spec: *spec, beads })
}

/// Whether `f` has every property the abacus function of a self-conjugate
/// `(s, s+d, ..., s+pd)`-core must have.
///
/// Common part: `f(0) = 0`; steps of size at most one; for `p >= 3`, whenever
/// `f(j) = f(j-1) + 1`, all of `f(j-p+1..=j-2)` are at least `f(j-1)`.
/// Parity-dependent part (`J` the last column):
/// - odd `s`, even `d`: `f(J) = -d/2`; `f(J-k-1) >= -d/2` for
///   `k <= ⌊(p-3)/2⌋`; `f(l+1) <= 0` for `l <= ⌊(p-4)/2⌋`.
/// - odd `s`, odd `d`: `f(J) ∈ {-(d-1)/2, -(d+1)/2}`; `f(J-k-1) >= -(d+1)/2`
///   for `k <= p-3`; `f(l+1) <= 0` for `l <= ⌊(p-4)/2⌋`.
/// - even `s`, odd `d`: as odd/odd, but `f(l+1) <= 0` for `l <= ⌊(p-3)/2⌋`.
///
/// For even `s` and odd `d` the lower-bound range is taken as `k <= p-3`,
/// which together with the endpoint condition forbids exactly the path
/// suffixes `UF^k`, `k <= p-2`.
pub fn validate_core_function(f: &AbacusFunction, spec: &AbacusSpec, p: u32) -> bool {
    let v = f.values();
    if v.len() != spec.columns() || p < 2 {
        return false;
    }
    let p = p as i64;
    let last = spec.last_column() as i64;
    let at = |j: i64| -> Option<i64> {
        if (0..=last).contains(&j) {
            Some(v[j as usize])
        } else {
            None
        }
    };

    if v[0] != 0 {
        return false;
    }
    if v.windows(2).any(|w| (w[1] - w[0]).abs() > 1) {
        return false;
    }
    if p >= 3 {
        for j in 1..=last {
            let prev = v[j as usize - 1];
            if prev == v[j as usize] - 1 {
                let from = (j - p + 1).max(0);
                if (from..=j - 2).any(|k| v[k as usize] < prev) {
                    return false;
                }
            }
        }
    }

    let d = spec.d() as i64;
    let end = v[last as usize];
    let (end_ok, floor, tail_ks, head_ls) = match spec.parity_case() {
        ParityCase::OddEven => (
            end == -d / 2,
            -d / 2,
            Integer::div_floor(&(p - 3), &2),
            Integer::div_floor(&(p - 4), &2),
        ),
        ParityCase::OddOdd => (
            end == -(d - 1) / 2 || end == -(d + 1) / 2,
            -(d + 1) / 2,
            p - 3,
            Integer::div_floor(&(p - 4), &2),
        ),
        ParityCase::EvenOdd => (
            end == -(d - 1) / 2 || end == -(d + 1) / 2,
            -(d + 1) / 2,
            p - 3,
            Integer::div_floor(&(p - 3), &2),
        ),
    };
    if !end_ok {
        return false;
    }
    if (0..=tail_ks).any(|k| at(last - k - 1).is_some_and(|x| x < floor)) {
        return false;
    }
    if (0..=head_ls).any(|l| at(l + 1).is_some_and(|x| x > 0)) {
        return false;
    }
    true
}

/// JSON view of an abacus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbacusRecord {
    pub s: u64,
    pub d: u64,
    pub a: i64,
    pub columns: Vec<ColumnRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnRecord {
    pub j: usize,
    pub r: i64,
    pub b: i64,
    pub f: i64,
}

/// Default row window: every bead row and boundary pair, padded by one.
pub fn default_window(state: &AbacusState) -> (i64, i64) {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for j in 0..state.beads.len() {
        let r = state.spec.boundary_row(j);
        lo = lo.min(r - 1);
        hi = hi.max(r);
        for i in state.bead_rows(j) {
            lo = lo.min(i - 1);
            hi = hi.max(i + 1);
        }
    }
    (lo, hi)
}

/// Text grid of labels with beads in parentheses. Rows run from the top
/// (largest `i`) down, columns left to right, followed by a column-index line.
pub fn render_abacus(state: &AbacusState, window: Option<(i64, i64)>) -> String {
    let (lo, hi) = window.unwrap_or_else(|| default_window(state));
    let cols = state.beads.len();
    let cell = |i: i64, j: usize| {
        let label = state.spec.label_at(i, j);
        if state.has_bead(i, j) {
            format!("({label})")
        } else {
            label.to_string()
        }
    };
    let mut width = (lo..=hi)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .map(|(i, j)| cell(i, j).len())
        .max()
        .unwrap_or(1);
    width = width.max(cols.saturating_sub(1).to_string().len());
    let head = ["i / j".len(), lo.to_string().len(), hi.to_string().len()]
        .into_iter()
        .max()
        .unwrap();

    let mut out = String::new();
    for i in (lo..=hi).rev() {
        let _ = write!(out, "{i:>head$}");
        for j in 0..cols {
            let _ = write!(out, " {:>width$}", cell(i, j));
        }
        out.push('\n');
    }
    let _ = write!(out, "{:>head$}", "i / j");
    for j in 0..cols {
        let _ = write!(out, " {j:>width$}");
    }
    out.push('\n');
    out
}
