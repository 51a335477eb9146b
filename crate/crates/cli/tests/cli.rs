use std::process::{Command, Output};

use clap::Parser;
use subsum::verify::{ConjectureId, ConjectureReport, Record, Verdict};
use subsum_cli::{
    compute, run, Basis, Cli, Factored, OutputRecord, Payload, SpolEntry, TableRow, EXIT_FAILURE,
    EXIT_OK, EXIT_USAGE,
};

fn subsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subsum"))
        .args(args)
        .env_remove("SUBSUM_LOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_records(o: &Output) -> Vec<OutputRecord> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one record per line"))
        .collect()
}

fn strings(xs: &[i64]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn in_process(args: &[&str]) -> (i32, String) {
    let cli = Cli::try_parse_from(std::iter::once("subsum").chain(args.iter().copied())).unwrap();
    let mut buf = Vec::new();
    let code = run(cli, &mut buf).unwrap();
    (code, String::from_utf8(buf).unwrap())
}

#[test]
fn compute_num_four() {
    let out = subsum(&["compute", "--class", "ordinary", "--n", "4", "--what", "num", "--format", "json"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let rec = &json_records(&out)[0];
    assert_eq!(rec.class.as_deref(), Some("ordinary"));
    assert_eq!(rec.body, Payload::Polynomial(strings(&[5, 8, 15, 14, 24, 20, 24, 14, 15, 8, 5])));
}

#[test]
fn compute_num_zero_is_one() {
    let (code, text) = in_process(&["compute", "--class", "ordinary", "--n", "0", "--what", "num", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let rec: OutputRecord = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(rec.body, Payload::Polynomial(strings(&[1])));
}

#[test]
fn compute_binary_g_is_empty_product() {
    let (_, text) = in_process(&["compute", "--class", "binary", "--n", "4", "--what", "g", "--format", "json"]);
    let rec: OutputRecord = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(
        rec.body,
        Payload::Factored(Factored {
            basis: Basis::Cyclotomic,
            factors: vec![]
        })
    );
    let (_, text) = in_process(&["compute", "--class", "binary", "--n", "4", "--what", "g", "--expand"]);
    assert_eq!(text.trim(), "1");
}

#[test]
fn compute_text_matches_display_convention() {
    let (_, text) = in_process(&["compute", "--class", "ordinary", "--n", "4", "--what", "g"]);
    assert_eq!(text.trim(), "Phi_2");
    let (_, text) = in_process(&["compute", "--class", "ordinary", "--n", "4", "--what", "g", "--expand"]);
    assert_eq!(text.trim(), "1 + x");
    let (_, text) = in_process(&["compute", "--class", "ordinary", "--n", "2", "--what", "den-star"]);
    assert_eq!(text.trim(), "(1 + x)^2 (1 + x^2)");
}

#[test]
fn compute_spol_list_lists_every_partition() {
    let (_, text) = in_process(&["compute", "--class", "ordinary", "--n", "3", "--what", "spol-list", "--format", "json"]);
    let rec: OutputRecord = serde_json::from_str(text.trim()).unwrap();
    let Payload::PolynomialList(entries) = rec.body else { panic!("wrong kind") };
    let parts: Vec<Vec<usize>> = entries.iter().map(|e| e.partition.clone()).collect();
    assert_eq!(parts, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    assert_eq!(entries[1].spol, strings(&[1, 1, 1, 1]));
}

#[test]
fn engines_agree_on_num_star_for_all_classes() {
    for class in ["ordinary", "odd", "binary", "ternary"] {
        for n in 0..=15 {
            let n = n.to_string();
            let args = ["compute", "--class", class, "--n", &n, "--what", "num-star", "--engine", "both"];
            let cli = Cli::try_parse_from(std::iter::once("subsum").chain(args)).unwrap();
            let subsum_cli::Command::Compute(c) = cli.command else { unreachable!() };
            assert!(compute(&c).is_ok(), "{class} n={n}");
        }
    }
}

#[test]
fn json_round_trips_every_kind() {
    let report = ConjectureReport {
        conjecture: ConjectureId::RemainderReduction,
        n_range: (1, 3),
        verdict: Verdict::FailuresFound,
        failures: vec![Record::new(3, "x").with_d(2).with_index(1)],
        witnesses: vec![Record::new(1, "ok")],
        pipeline_errors: vec![],
        findings: vec![Record::new(3, "y")],
        elapsed_us: 17,
    };
    let records = [
        Payload::Polynomial(vec!["123456789012345678901234567890".into(), "-1".into()]),
        Payload::Factored(Factored {
            basis: Basis::Binomial,
            factors: vec![(1, 3), (2, 1)],
        }),
        Payload::Scalar("340282366920938463463374607431768211457".into()),
        Payload::Report(report),
        Payload::PolynomialList(vec![SpolEntry {
            partition: vec![2, 1],
            spol: strings(&[1, 1, 1, 1]),
        }]),
    ];
    for body in records {
        let rec = OutputRecord {
            class: Some("odd".into()),
            n: 3,
            body,
        };
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(serde_json::from_str::<OutputRecord>(&json).unwrap(), rec, "{json}");
    }
}

#[test]
fn verify_reports_round_trip_from_binary_output() {
    let out = subsum(&["verify", "--conjecture", "all", "--max-n", "8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let records = json_records(&out);
    assert_eq!(records.len(), 11);
    for rec in records {
        let again: OutputRecord = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
        assert_eq!(again, rec);
    }
}

#[test]
fn verify_ternary_minus_one_holds() {
    let out = subsum(&["verify", "--conjecture", "9", "--max-n", "27", "--format", "json"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let Payload::Report(r) = &json_records(&out)[0].body else { panic!("wrong kind") };
    assert_eq!(r.verdict, Verdict::AllHold);
}

#[test]
fn verify_binary_shape_shows_n4_counterexample() {
    let (code, text) = in_process(&["verify", "--conjecture", "6", "--max-n", "10"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.starts_with("conjecture 6 n=2..=10: WitnessOnly"), "{text}");
    assert!(text.contains("OBSERVED n=4 index=3: num_B(4,x) not log-concave at 3: 18^2 < 18*20"), "{text}");
}

#[test]
fn verify_trivial_coprimality() {
    let (code, text) = in_process(&["verify", "--conjecture", "2", "--max-n", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("AllHold"));
}

#[test]
fn injected_fault_forces_exit_one() {
    for id in ["2", "7", "8", "9", "10", "lemma4"] {
        let out = subsum(&["verify", "--conjecture", id, "--max-n", "6", "--inject-fault-n", "3", "--format", "json"]);
        assert_eq!(out.status.code(), Some(EXIT_FAILURE), "conjecture {id}");
    }
    let out = subsum(&["verify", "--conjecture", "3", "--max-n", "6", "--inject-fault-n", "3"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
}

#[test]
fn bad_flags_exit_two() {
    for args in [
        &["verify", "--conjecture", "11", "--max-n", "3"][..],
        &["compute", "--class", "even", "--n", "3", "--what", "num"],
        &["compute", "--class", "odd", "--n", "-1", "--what", "num"],
        &["table", "--sequence", "u", "--max-n", "3"],
        &["frobnicate"],
    ] {
        assert_eq!(subsum(args).status.code(), Some(EXIT_USAGE), "{args:?}");
    }
}

#[test]
fn jobs_do_not_change_output() {
    let base = ["verify", "--conjecture", "all", "--max-n", "12", "--format", "json", "--no-timing"];
    let serial = subsum(&base);
    let parallel = subsum(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(serial.status.code(), Some(EXIT_OK));
    assert_eq!(stdout(&serial), stdout(&parallel));
}

#[test]
fn tables() {
    let (_, t) = in_process(&["table", "--sequence", "t", "--max-n", "4"]);
    assert_eq!(t, "n,t\n0,1\n1,1\n2,1\n3,5\n4,5\n");
    let (_, s) = in_process(&["table", "--sequence", "s", "--max-n", "2", "--format", "json"]);
    let rows: Vec<TableRow> = serde_json::from_str(s.trim()).unwrap();
    assert_eq!(rows.iter().map(|r| r.value.as_str()).collect::<Vec<_>>(), ["1", "1"]);
    let (_, o) = in_process(&["table", "--sequence", "o-part", "--max-n", "4"]);
    assert_eq!(o, "n,o_part\n1,1\n2,1\n3,3\n4,3\n");
}

#[test]
fn large_values_stay_exact() {
    let (_, t) = in_process(&["table", "--sequence", "t", "--max-n", "150", "--format", "json"]);
    let rows: Vec<TableRow> = serde_json::from_str(t.trim()).unwrap();
    let last: num_bigint::BigUint = rows.last().unwrap().value.parse().unwrap();
    assert!(last > num_bigint::BigUint::from(u64::MAX));
    assert_eq!(last, subsum::subsum::t_direct(150));
}
