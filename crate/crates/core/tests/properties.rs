use std::collections::BTreeSet;

use proptest::prelude::*;
use score_core::abacus::{self, AbacusFunction};
use score_core::bijection::{self, PhiContext};
use score_core::motzkin::{self, MotzkinPath, PathConstraintSet};
use score_core::oracle::{enumerate_md_sets, EnumerationTask};
use score_core::MdSet;

fn coprime(a: u64, b: u64) -> bool {
    num_integer::gcd(a, b) == 1
}

fn grid(max_sum: u64, max_d: u64, ps: std::ops::RangeInclusive<u32>) -> Vec<(u64, u64, u32)> {
    let mut out = Vec::new();
    for s in 1..max_sum {
        for d in 1..=max_d.min(max_sum - s) {
            if coprime(s, d) {
                for p in ps.clone() {
                    out.push((s, d, p));
                }
            }
        }
    }
    out
}

fn cores(s: u64, d: u64, p: u32) -> Vec<MdSet> {
    enumerate_md_sets(&EnumerationTask::new(s, d, p)).unwrap()
}

#[test]
fn phi_is_a_bijection_onto_restricted_paths() {
    for (s, d, p) in grid(13, 5, 2..=5) {
        let ctx = PhiContext::new(s, d, p).unwrap();
        let mds = cores(s, d, p);
        let mut image = BTreeSet::new();
        for md in &mds {
            let path = bijection::phi(md, &ctx).unwrap();
            assert_eq!(&bijection::phi_inverse(&path, &ctx).unwrap(), md);
            assert!(image.insert(path), "s={s} d={d} p={p}: {md} collides");
        }
        let paths: BTreeSet<_> = motzkin::enumerate_paths(ctx.x(), ctx.y(), ctx.constraints())
            .into_iter()
            .collect();
        assert_eq!(image, paths, "s={s} d={d} p={p}");
    }
}

#[test]
fn enumerated_cores_place_and_validate() {
    for (s, d, p) in grid(13, 5, 1..=4) {
        let spec = abacus::AbacusSpec::new(s, d).unwrap();
        for md in cores(s, d, p) {
            let state = abacus::place_beads(&spec, &md).unwrap();
            let f = abacus::abacus_function(&state);
            if p >= 2 {
                assert!(
                    abacus::validate_core_function(&f, &spec, p),
                    "s={s} d={d} p={p} {md}"
                );
            }
            assert_eq!(abacus::beads_from_function(&spec, &f).unwrap(), state);
        }
    }
}

#[test]
fn outer_hook_changes_flat_count_by_zero_or_two() {
    for s in 2..=13 {
        for p in [2, 3, 4] {
            let ctx = PhiContext::new(s, 1, p).unwrap();
            for md in cores(s, 1, p).iter().filter(|m| m.len() >= 2) {
                let inner = md.without_largest();
                let outer = bijection::phi(md, &ctx).unwrap().flat_count();
                let before = bijection::phi(&inner, &ctx).unwrap().flat_count();
                let (d1, d2) = (md.elements()[0], md.elements()[1]);
                let want = if d1 == d2 + 2 { before } else { before - 2 };
                assert_eq!(outer, want, "s={s} p={p} {md}");
            }
        }
    }
}

#[test]
fn validation_of_f_matches_path_restrictions() {
    for (s, d, p) in grid(13, 5, 2..=5) {
        let ctx = PhiContext::new(s, d, p).unwrap();
        for path in motzkin::enumerate_paths(ctx.x(), ctx.y(), &PathConstraintSet::none()) {
            let f: AbacusFunction = bijection::function_from_path(&path, &ctx);
            assert_eq!(
                abacus::validate_core_function(&f, ctx.spec(), p),
                motzkin::satisfies(&path, ctx.constraints(), ctx.x(), ctx.y()),
                "s={s} d={d} p={p} {path}"
            );
        }
    }
}

#[test]
fn oracle_output_is_sorted_and_unique() {
    for (s, d, p) in grid(12, 4, 2..=3) {
        let mds = cores(s, d, p);
        assert!(mds.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(mds.first(), Some(&MdSet::empty()));
    }
}

fn instance() -> impl Strategy<Value = (u64, u64, u32)> {
    (1u64..14, 1u64..6, 2u32..6).prop_filter("coprime", |&(s, d, _)| coprime(s, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn restricted_paths_map_back_and_forth((s, d, p) in instance(), pick in any::<prop::sample::Index>()) {
        let ctx = PhiContext::new(s, d, p).unwrap();
        let paths = motzkin::enumerate_paths(ctx.x(), ctx.y(), ctx.constraints());
        let path = &paths[pick.index(paths.len())];
        let md = bijection::phi_inverse(path, &ctx).unwrap();
        prop_assert_eq!(&bijection::phi(&md, &ctx).unwrap(), path);
    }

    #[test]
    fn path_text_round_trips(steps in "[UDF]{0,20}") {
        let path: MotzkinPath = steps.parse().unwrap();
        prop_assert_eq!(path.to_string(), steps);
        prop_assert_eq!(path.x(), path.up_count() + path.down_count() + path.flat_count());
    }
}
