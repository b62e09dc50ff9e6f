use std::process::{Command, Output};

fn run_args(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_score-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(line: &str) -> Output {
    run_args(&line.split_whitespace().collect::<Vec<_>>())
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(line: &str) -> i32 {
    run(line).status.code().unwrap()
}

fn ok(line: &str) -> String {
    let o = run(line);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{line}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn count_all_agrees() {
    assert_eq!(
        ok("count --s 3 --d 2 --p 2 --method all"),
        "formula-p2 2\ndp 2\nenumeration 2\nAGREE\n"
    );
}

#[test]
fn count_formula() {
    assert_eq!(ok("count --s 5 --d 1 --p 2 --method formula"), "5\n");
    assert_eq!(
        ok("count --s 5 --d 1 --p 2 --format json"),
        "{\"value\":\"5\",\"method\":\"formula-p2\"}\n"
    );
}

#[test]
fn count_errors() {
    assert_eq!(code("count --s 4 --d 2 --p 2"), 3);
    assert_eq!(code("count --s 5 --d 2 --p 4 --method formula"), 2);
    assert_eq!(code("count --s 3"), 64);
    assert_eq!(code("count --s 3 --d 2 --p 2 --method guess"), 64);
}

#[test]
fn count_p1_uses_two_moduli() {
    assert_eq!(
        ok("count --s 5 --d 2 --p 1 --method all"),
        "fms 10\nenumeration 10\nAGREE\n"
    );
}

#[test]
fn map_and_unmap_examples() {
    let out = ok("map --md 77,41,35,27,19,11,5,3 --s 21 --d 4 --p 4");
    assert_eq!(out.lines().next(), Some("FDUFFUDDDDUF"));
    let out = ok("unmap --path FDUFFUDDDDUFF --s 22 --d 3 --p 3");
    assert_eq!(out.lines().next(), Some("65,61,21,17,15,13,11,9,5,3"));
    let out = ok("unmap --path FDUFFUDDDDUFF --s 23 --d 3 --p 3");
    assert_eq!(out.lines().next(), Some("67,65,21,19,15,13,11,9,7,3,1"));
}

#[test]
fn map_rejects_non_cores_and_bad_paths() {
    assert_eq!(code("map --md 3 --s 3 --d 2 --p 2"), 3);
    assert_eq!(code("map --md 4 --s 3 --d 2 --p 2"), 3);
    assert_eq!(code("map --md x --s 3 --d 2 --p 2"), 64);
    assert_eq!(code("unmap --path UUU --s 5 --d 1 --p 2"), 3);
    assert_eq!(code("unmap --path UXU --s 5 --d 1 --p 2"), 3);
}

#[test]
fn map_fixes_md_order_with_warning() {
    let o = run("map --md 1,3,3 --s 5 --d 1 --p 2 --format json");
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(
        stdout(&o),
        "{\"md\":[3,1],\"s\":5,\"d\":1,\"p\":2,\"path\":\"DFF\",\"x\":3,\"y\":-1,\"corners\":1,\"parts\":[2,2]}\n"
    );
}

#[test]
fn enumerate_lists_cores_with_paths() {
    let text = ok("enumerate --s 5 --d 2 --p 2");
    assert_eq!(text.lines().count(), 6);
    assert_eq!(text.lines().next(), Some("{} FDF ()"));
    assert!(text.contains("{3,1} DUD (2,2)"));
    let csv = ok("enumerate --s 5 --d 2 --p 2 --format csv");
    assert_eq!(csv.lines().next(), Some("md,steps,x,y,flats,last,parts"));
}

#[test]
fn abacus_marks_beads() {
    let text = ok("abacus --md 5,1 --s 5 --d 2");
    assert!(text.contains("(-5)") && text.contains("(-1)"));
    assert!(text.ends_with("f = (-1,-1,-1,-1)\n"));
    assert_eq!(code("abacus --md 25 --s 21 --d 4"), 3);
}

#[test]
fn corners_match_enumeration() {
    assert_eq!(
        ok("corners --s 7 --method all"),
        "m formula enumerated\n0 1 1\n1 3 3\n2 6 6\n3 3 3\nAGREE\n"
    );
    assert_eq!(code("corners --s 7 --d 2"), 3);
    assert_eq!(code("corners --s 7 --p 4"), 2);
}

#[test]
fn verify_single_and_grid() {
    assert_eq!(
        ok("verify --s 3 --d 2 --p 2"),
        "s=3 d=2 p=2 n_md=2 n_path=2 n_dp=2 n_formula=2 roundtrip=pass corners=n/a PASS\n\
         1 instances: 1 pass, 0 fail\n"
    );
    let o = run("verify --s 1..6 --d 1..3 --p 2..3 --format json --n-max auto --jobs 2");
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        assert!(
            line.contains("\"pass\":true") && line.contains("\"n_scan\""),
            "{line}"
        );
    }
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipping s=2 d=2"));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(code("verify --s 0..0 --d 1 --p 2"), 64);
    assert_eq!(code("verify --s 5..3 --d 1 --p 2"), 64);
    assert_eq!(code("verify --s 3 --d 1 --p 1"), 64);
}

#[test]
fn output_is_byte_stable_and_can_go_to_a_file() {
    let line = "verify --s 1..8 --d 1..4 --p 2..4 --format json";
    assert_eq!(ok(line), ok(&format!("{line} --jobs 1")));

    let dir = std::env::temp_dir().join(format!("score-lab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("out.txt");
    let o = run_args(&[
        "count",
        "--s",
        "3",
        "--d",
        "2",
        "--p",
        "2",
        "--output",
        file.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&file).unwrap(), "2\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code("--help"), 0);
    assert_eq!(code("--version"), 0);
}
