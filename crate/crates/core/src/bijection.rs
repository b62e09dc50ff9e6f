//! The path map on self-conjugate `(s, s+d, ..., s+pd)`-cores.
//!
//! The `j`-th step of the image path is `f(j) - f(j-1)` where `f` is the
//! abacus function. For odd `d` one extra value `f(⌊s/2⌋ + (d+1)/2) = -(d+1)/2`
//! is appended first, so the path always has type
//! `(⌊s/2⌋ + ⌈d/2⌉, -⌈d/2⌉)`. The extra value lives in [`PhiContext`]; the
//! abacus function itself stays as defined on the abacus columns.

use serde::{Deserialize, Serialize};

use crate::abacus::{self, AbacusFunction, AbacusSpec};
use crate::motzkin::{self, MotzkinPath, PathConstraintSet, Step};
use crate::partition::{is_simultaneous_core, MdSet};
use crate::{moduli, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiContext {
    spec: AbacusSpec,
    p: u32,
    constraints: PathConstraintSet,
}

impl PhiContext {
    pub fn new(s: u64, d: u64, p: u32) -> Result<Self> {
        let spec = AbacusSpec::new(s, d)?;
        let constraints = motzkin::constraints_for(s, d, p)?;
        Ok(PhiContext {
            spec,
            p,
            constraints,
        })
    }

    pub fn s(&self) -> u64 {
        self.spec.s()
    }

    pub fn d(&self) -> u64 {
        self.spec.d()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn spec(&self) -> &AbacusSpec {
        &self.spec
    }

    pub fn constraints(&self) -> &PathConstraintSet {
        &self.constraints
    }

    /// `⌊s/2⌋ + ⌈d/2⌉`.
    pub fn x(&self) -> usize {
        (self.s() / 2 + self.d().div_ceil(2)) as usize
    }

    /// `-⌈d/2⌉`.
    pub fn y(&self) -> i64 {
        -(self.d().div_ceil(2) as i64)
    }

    /// Appended value `-(d+1)/2` for odd `d`.
    pub fn convention_value(&self) -> Option<i64> {
        (self.d() % 2 == 1).then(|| -((self.d() as i64 + 1) / 2))
    }

    pub fn moduli(&self) -> Vec<u64> {
        moduli(self.s(), self.d(), self.p)
    }

    pub fn is_core(&self, md: &MdSet) -> bool {
        is_simultaneous_core(md, &self.moduli()).expect("moduli are positive")
    }
}

pub fn phi(md: &MdSet, ctx: &PhiContext) -> Result<MotzkinPath> {
    if !ctx.is_core(md) {
        return Err(Error::NotACore(format!(
            "{md} is not a self-conjugate {:?}-core",
            ctx.moduli()
        )));
    }
    let state = abacus::place_beads(ctx.spec(), md)?;
    let f = abacus::abacus_function(&state);
    let path = path_from_function(&f, ctx)?;
    debug_assert!(motzkin::satisfies(
        &path,
        ctx.constraints(),
        ctx.x(),
        ctx.y()
    ));
    Ok(path)
}

/// Differences of `f` (with the odd-`d` value appended) as steps.
pub fn path_from_function(f: &AbacusFunction, ctx: &PhiContext) -> Result<MotzkinPath> {
    let mut values = f.values().to_vec();
    values.extend(ctx.convention_value());
    values
        .windows(2)
        .map(|w| {
            Step::from_rise(w[1] - w[0])
                .ok_or_else(|| Error::Internal(format!("abacus function jumps by {}", w[1] - w[0])))
        })
        .collect::<Result<Vec<_>>>()
        .map(MotzkinPath::new)
}

/// Prefix sums of the steps from `f(0) = 0`, without the odd-`d` value.
pub fn function_from_path(path: &MotzkinPath, ctx: &PhiContext) -> AbacusFunction {
    let mut values = path.heights();
    if ctx.convention_value().is_some() {
        values.pop();
    }
    AbacusFunction::new(values)
}

pub fn phi_inverse(path: &MotzkinPath, ctx: &PhiContext) -> Result<MdSet> {
    if !motzkin::satisfies(path, ctx.constraints(), ctx.x(), ctx.y()) {
        return Err(Error::InvalidPath(format!(
            "{path} is not a restricted path of type ({}, {}) for (s,d,p) = ({}, {}, {})",
            ctx.x(),
            ctx.y(),
            ctx.s(),
            ctx.d(),
            ctx.p()
        )));
    }
    let f = function_from_path(path, ctx);
    let state = abacus::beads_from_function(ctx.spec(), &f)?;
    let md = state.md();
    if !ctx.is_core(&md) {
        return Err(Error::Internal(format!(
            "{path} reconstructs {md}, which is not a core"
        )));
    }
    Ok(md)
}

/// Corner count of a core together with the last step and flat count of its
/// path (`d = 1` only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerStats {
    pub corners: usize,
    pub last: Option<char>,
    pub flats: usize,
}

pub fn corner_statistics(md: &MdSet, ctx: &PhiContext) -> Result<CornerStats> {
    if ctx.d() != 1 {
        return Err(Error::Unsupported(format!(
            "corner statistics are defined for d = 1 only, got d = {}",
            ctx.d()
        )));
    }
    let path = phi(md, ctx)?;
    Ok(CornerStats {
        corners: md.to_partition().corners(),
        last: path.last_step().map(Step::letter),
        flats: path.flat_count(),
    })
}

/// Flat steps on the path of a `d = 1` core with `m` corners:
/// `⌊s/2⌋ - m` for even `m`, `⌊s/2⌋ - m + 1` for odd `m`.
pub fn expected_flats(s: u64, m: usize) -> i64 {
    let r = (s / 2) as i64;
    let m = m as i64;
    if m % 2 == 0 {
        r - m
    } else {
        r - m + 1
    }
}

/// JSON record of one core and its path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingRecord {
    pub md: Vec<u64>,
    pub s: u64,
    pub d: u64,
    pub p: u32,
    pub path: String,
    pub x: usize,
    pub y: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub corners: Option<usize>,
}

impl MappingRecord {
    pub fn new(md: &MdSet, path: &MotzkinPath, ctx: &PhiContext) -> Self {
        MappingRecord {
            md: md.elements().to_vec(),
            s: ctx.s(),
            d: ctx.d(),
            p: ctx.p(),
            path: path.to_string(),
            x: path.x(),
            y: path.y(),
            corners: (ctx.d() == 1).then(|| md.to_partition().corners()),
        }
    }
}
