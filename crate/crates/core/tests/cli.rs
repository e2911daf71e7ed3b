use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordcompact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_cover_reports_uncovered_point() {
    let out = run(&["check-cover", "--order", &data("finite4.ord"), "--cover", &data("split.cov")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "uncovered: 2\nintervals: 2\nscan: 64\n");

    let out = run(&["check-cover", "--order", &data("finite4.ord"), "--cover", &data("bridge.cov")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("covered\n"));
}

#[test]
fn subcover_found_and_missing() {
    let out = run(&["subcover", "--order", &data("finite4.ord"), "--cover", &data("bridge.cov")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "found: 0 1 2\nscan: 64\n");

    let out = run(&["subcover", "--order", &data("finite4.ord"), "--cover", &data("split.cov")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("none\n"));
}

#[test]
fn gap_find_stages_the_parity_cut() {
    let out = run(&["gap-find", "--order", "gallery:omega_plus_omega_star", "--cover", &data("gap.cov"), "--budget", "12"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("staged: 12\n"), "{text}");
    assert!(text.contains("lower: 0 2 4 6 8 10\n"));
    assert!(text.contains("upper: 1 3 5 7 9 11\n"));
    assert!(text.ends_with("budget: 12\nscan: 64\n"));
}

#[test]
fn gap_find_on_a_finite_order_finds_a_subcover() {
    let out = run(&["gap-find", "--order", &data("finite4.ord"), "--cover", &data("bridge.cov")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("subcover: "));
}

#[test]
fn kb_sort_and_neighbours() {
    let out = run(&["kb-sort", "--tree", &data("t3.tree")]);
    assert_eq!(stdout(&out), "0\n1\n-\n");

    let out = run(&["kb-neighbors", "--tree", &data("t3.tree"), "--sigma", "0"]);
    assert_eq!(stdout(&out), "pred: -inf\nsucc: 1\ndepth: 64\n");
    let out = run(&["kb-neighbors", "--tree", &data("t3.tree"), "--sigma", "-"]);
    assert_eq!(stdout(&out), "pred: 1\nsucc: +inf\ndepth: 64\n");
}

#[test]
fn extract_path_follows_the_path() {
    let out = run(&["extract-path", "--tree", "builtin:alt_path", "--budget", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "-\n1\n1,0\n1,0,1\n1,0,1,0\nbudget: 4\n");
}

#[test]
fn injection_demo_decodes_range() {
    let out = run(&["injection-demo", "--injection", "double", "--sample", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("0: in-range 0\n1: not-in-range\n2: in-range 1\n3: not-in-range\n"), "{text}");
}

#[test]
fn flatten_reports_absorption() {
    let out = run(&["flatten", "--cover", &data("honest.tbl"), "--order", &data("finite4.ord"), "--sample", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("fallback: (-inf, 2) from h(0, 0)\n"), "{text}");
    assert!(text.contains("absorbed: yes\n"));
}

#[test]
fn verify_base_is_clean_on_gallery_and_injections() {
    for args in [
        ["verify-base", "--order", "gallery:omega_plus_one"],
        ["verify-base", "--order", "gallery:dense_unbounded"],
        ["verify-base", "--injection", "square"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(stdout(&out).contains("violations: 0\n"), "{args:?}");
    }
}

#[test]
fn errors_go_to_stderr_with_exit_two() {
    let out = run(&["subcover", "--cover", &data("bridge.cov")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));

    let out = run(&["check-cover", "--order", "gallery:nope", "--cover", &data("bridge.cov")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let cases: Vec<Vec<String>> = vec![
        vec!["gap-find".into(), "--order".into(), "gallery:omega_plus_omega_star".into(), "--cover".into(), data("gap.cov")],
        vec!["kb-sort".into(), "--tree".into(), "builtin:binary".into(), "--depth".into(), "3".into()],
        vec!["injection-demo".into(), "--injection".into(), "square".into()],
        vec!["flatten".into(), "--cover".into(), data("honest.tbl")],
    ];
    for args in cases {
        let a = run(&args.iter().map(String::as_str).collect::<Vec<_>>());
        let b = run(&args.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
