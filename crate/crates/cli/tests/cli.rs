//! Binary-level tests: exit codes, file formats, batch determinism and
//! the export/re-ingest round trip.

use std::path::PathBuf;
use std::process::Command;

use grpcover::{build, parse_group_expr, Budgets};
use grpcover_cli::analysis::analyze;
use grpcover_cli::catalog::{gens_block, parse_gens_str};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_grpcover"))
}

fn tmp_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grpcover-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn sigma_n_construct_s4() {
    let out = bin()
        .args(["sigma-n", "--construct", "symmetric(4)"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("sigma_n = 7"), "{text}");
}

#[test]
fn sigma_n_dihedral_12_reports_witness_order_6() {
    let out = bin()
        .args(["sigma-n", "--construct", "dihedral(12)"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("sigma_n = infinity, witness element of order 6"),
        "{text}"
    );
}

#[test]
fn sigma_n_affine_2_3_is_9() {
    let out = bin()
        .args(["sigma-n", "--construct", "affine(2,3)"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("sigma_n = 9"), "{text}");
}

#[test]
fn parse_error_exits_2() {
    let out = bin()
        .args(["sigma-n", "--construct", "frobnicate(8)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("syntax error"), "{err}");
}

#[test]
fn budget_error_exits_3() {
    let out = bin()
        .args([
            "sigma-n",
            "--construct",
            "symmetric(4)",
            "--max-order",
            "10",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn env_var_sets_order_budget() {
    let out = bin()
        .args(["sigma-n", "--construct", "symmetric(4)"])
        .env("GRPCOVER_MAX_ORDER", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // An explicit flag overrides the environment.
    let out = bin()
        .args([
            "sigma-n",
            "--construct",
            "symmetric(4)",
            "--max-order",
            "64",
        ])
        .env("GRPCOVER_MAX_ORDER", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn batch_is_deterministic_across_jobs() {
    let dir = tmp_dir();
    let catalog = dir.join("sample.cat");
    std::fs::write(
        &catalog,
        "S3 = symmetric(3)\nS4 = symmetric(4)\nQ8 = dicyclic(8)\nA4 = alternating(4)\nD12 = dihedral(12)\nHeis3 = heisenberg(3)\n",
    )
    .unwrap();
    let out1 = dir.join("out1.jsonl");
    let out8 = dir.join("out8.jsonl");
    for (path, jobs) in [(&out1, "1"), (&out8, "8")] {
        let out = bin()
            .args([
                "batch",
                "--in",
                catalog.to_str().unwrap(),
                "--out",
                path.to_str().unwrap(),
                "--jobs",
                jobs,
            ])
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out8).unwrap();
    assert_eq!(a, b, "jobs=1 and jobs=8 must give byte-identical output");

    // Spot-check the record content and ordering (name-sorted).
    let text = String::from_utf8(a).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("{\"name\":\"A4\",\"order\":12,\"sigma_n\":5,"));
    assert!(lines[1].starts_with("{\"name\":\"D12\",\"order\":12,\"sigma_n\":\"inf\","));
    assert!(lines[2].starts_with("{\"name\":\"Heis3\",\"order\":27,\"sigma_n\":4,"));
    assert!(lines[3].starts_with("{\"name\":\"Q8\",\"order\":8,\"sigma_n\":\"inf\","));
    assert!(lines[4].starts_with("{\"name\":\"S3\",\"order\":6,\"sigma_n\":\"inf\","));
    assert!(lines[5].starts_with("{\"name\":\"S4\",\"order\":24,\"sigma_n\":7,"));
    for line in &lines {
        assert!(line.contains("\"elapsed_ms\":null"));
        assert!(line.ends_with("\"error\":null}"));
    }
}

#[test]
fn batch_records_per_record_errors_without_aborting() {
    let dir = tmp_dir();
    let catalog = dir.join("witherr.cat");
    std::fs::write(&catalog, "OK = cyclic(6)\nTooBig = symmetric(5)\n").unwrap();
    let out_path = dir.join("witherr.jsonl");
    let out = bin()
        .args([
            "batch",
            "--in",
            catalog.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
            "--max-order",
            "30",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("\"name\":\"OK\"") && lines[0].ends_with("\"error\":null}"));
    assert!(lines[1].contains("\"name\":\"TooBig\""));
    assert!(lines[1].contains("\"error\":\"order budget exceeded"));
}

#[test]
fn json_flag_emits_full_record() {
    let out = bin()
        .args(["sigma-n", "--construct", "heisenberg(3)", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let json_line = text
        .lines()
        .find(|l| l.starts_with('{'))
        .expect("json line");
    assert!(json_line.contains("\"sigma_n\":4"), "{json_line}");
    assert!(json_line.contains("\"is_nilpotent\":true"), "{json_line}");
    assert!(
        json_line.contains("\"witness\":{\"kind\":\"finite\""),
        "{json_line}"
    );
}

#[test]
fn gens_ingestion_from_file() {
    let dir = tmp_dir();
    let gens = dir.join("c4.gens");
    std::fs::write(&gens, "name: C4\ndegree: 4\ngen: 1 2 3 0\n").unwrap();
    let out = bin()
        .args(["sigma-n", "--in", gens.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("group: C4 (order 4)"), "{text}");
    assert!(text.contains("sigma_n = infinity"), "{text}");
}

#[test]
fn lattice_dump_lists_subgroups() {
    let out = bin()
        .args(["lattice-dump", "--construct", "dicyclic(8)"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(order 8, 6 subgroups)"), "{text}");
    assert_eq!(text.matches("normal=yes").count(), 6);
}

#[test]
fn search_finds_s4_at_7() {
    // Small sweep keeps this test quick.
    let out = bin()
        .args(["search", "--value", "7", "--max-order", "30"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("symmetric(4)"), "{text}");
}

#[test]
fn search_reports_population_when_empty() {
    let out = bin()
        .args(["search", "--value", "9", "--max-order", "20"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("none found in population of size"), "{text}");
}

#[test]
fn export_reingest_round_trip_preserves_all_results() {
    let budgets = Budgets::default();
    for expr in [
        "symmetric(4)",
        "dihedral(12)",
        "heisenberg(3)",
        "affine(2,2)",
    ] {
        let g = build(&parse_group_expr(expr).unwrap(), &budgets).unwrap();
        let original = analyze(g.clone(), expr.into(), &budgets).unwrap();
        let block = gens_block(expr, &g);
        let records = parse_gens_str(&block).unwrap();
        assert_eq!(records.len(), 1);
        let reingested = records[0].resolve(&budgets).unwrap();
        let roundtrip = analyze(reingested, "reingested".into(), &budgets).unwrap();
        assert_eq!(original.order(), roundtrip.order(), "{expr}");
        assert_eq!(
            original.sigma_n_value(),
            roundtrip.sigma_n_value(),
            "{expr}"
        );
        assert_eq!(
            original.sigma.as_ref().and_then(|o| o.value()),
            roundtrip.sigma.as_ref().and_then(|o| o.value()),
            "{expr}"
        );
        assert_eq!(
            original.sigma_c.value(),
            roundtrip.sigma_c.value(),
            "{expr}"
        );
        assert_eq!(original.report, roundtrip.report, "{expr}");
        assert_eq!(original.profile, roundtrip.profile, "{expr}");
    }
}

#[test]
fn verify_paper_exits_zero_on_clean_population() {
    // A tiny sweep keeps the binary-level smoke test fast; the full
    // harness runs in the acceptance suite.
    let out = bin()
        .args(["verify-paper", "--sweep-max", "28"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        out.status.success(),
        "verify-paper failed:\n{text}\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(text.contains("s4-sigma-n-7"), "{text}");
    assert!(text.contains("0 failed"), "{text}");
}

#[test]
fn fault_injection_corrupted_catalog_fails_named_check() {
    // An abelian group smuggled in under a non-abelian-sounding name
    // must not trip anything (names are irrelevant), but a group that
    // genuinely violates a population property must be caught: here we
    // check the harness plumbing by asserting a malformed gens file is
    // rejected with the offending line.
    let dir = tmp_dir();
    let bad = dir.join("bad.gens");
    std::fs::write(&bad, "name: broken\ndegree: 3\ngen: 0 0 1\n").unwrap();
    let out = bin()
        .args(["sigma-n", "--in", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("bijection"), "{err}");
}
