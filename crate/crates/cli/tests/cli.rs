use std::process::{Command, Output};
use std::str::FromStr;

use jacobsthal_core::Rational;

fn jacobsthal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacobsthal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn term_values() {
    for (args, want) in [
        (["--kind", "jhat", "--a", "2", "--b", "1", "--n", "5"], "20"),
        (["--kind", "jhat", "--a", "1", "--b", "1", "--n", "8"], "85"),
        (["--kind", "jhat", "--a", "2", "--b", "1", "--n", "-1"], "1/2"),
        (["--kind", "jlucas", "--a", "1", "--b", "1", "--n", "5"], "31"),
    ] {
        let o = jacobsthal(&[&["term"], &args[..]].concat());
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        assert_eq!(stdout(&o).trim(), want, "{args:?}");
    }
}

#[test]
fn term_fast_matches_recurrence() {
    let base = ["term", "--kind", "lucas", "--a", "3/2", "--b", "-2", "--n", "301"];
    let slow = jacobsthal(&base);
    let fast = jacobsthal(&[&base[..], &["--fast"]].concat());
    assert_eq!(code(&fast), 0);
    assert_eq!(stdout(&slow), stdout(&fast));
}

#[test]
fn term_domain_errors_exit_2() {
    for args in [
        vec!["term", "--kind", "fib", "--a", "1", "--b", "1", "--n", "-1"],
        vec!["term", "--kind", "jhat", "--a", "1", "--b", "1", "--n", "-2"],
        vec!["term", "--kind", "jhat", "--a", "0", "--b", "1", "--n", "3"],
        vec!["term", "--kind", "jhat", "--a", "1.5", "--b", "1", "--n", "3"],
        vec!["term", "--kind", "nope", "--a", "1", "--b", "1", "--n", "3"],
    ] {
        let o = jacobsthal(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn matrix_formats() {
    let o = jacobsthal(&["matrix", "--a", "2", "--b", "1", "--n", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), r#"{"e11":"4","e12":"2","e21":"2","e22":"2"}"#);

    let o = jacobsthal(&["matrix", "--a", "1", "--b", "1", "--n", "0"]);
    assert_eq!(stdout(&o).trim(), "[[1,0],[0,1]]");

    let o = jacobsthal(&["matrix", "--a", "2", "--b", "1", "--n", "3", "--method", "all"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "[[6,4],[4,2]]");

    let o = jacobsthal(&["matrix", "--a", "2", "--b", "1", "--n", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,e11,e12,e21,e22\n3,6,4,4,2\n");
}

#[test]
fn matrix_methods_agree_on_rational_params() {
    let outs: Vec<String> = ["recurrence", "closed", "binet", "fast", "all"]
        .iter()
        .map(|m| {
            let o = jacobsthal(&["matrix", "--a", "-2/3", "--b", "5/7", "--n", "41", "--method", m]);
            assert_eq!(code(&o), 0, "{m}: {}", stderr(&o));
            stdout(&o)
        })
        .collect();
    assert!(outs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn binet_on_degenerate_discriminant_exits_2() {
    let o = jacobsthal(&["matrix", "--a", "-2", "--b", "4", "--n", "5", "--method", "binet"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("degenerate"), "{}", stderr(&o));
    // the other routes still work there
    let o = jacobsthal(&["matrix", "--a", "-2", "--b", "4", "--n", "5", "--method", "all"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn series_prints_coefficients() {
    let o = jacobsthal(&["series", "--a", "2", "--b", "1", "--count", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "[[1,0],[0,1]]\n[[1,1],[1,0]]\n[[4,2],[2,2]]\n");
}

#[test]
fn sum_flags_weighted_mismatch() {
    let args = ["sum", "--a", "2", "--b", "1", "--x", "2", "--n", "2", "--both"];
    let o = jacobsthal(&args);
    let text = stdout(&o);
    assert_eq!(code(&o), 1);
    assert!(text.contains("oracle:          [[3/2,1/2],[1/2,1]]"), "{text}");
    assert!(text.contains("printed-formula: [[3,1],[1,2]]  MISMATCH"), "{text}");
    assert!(text.contains("corrected:       [[3/2,1/2],[1/2,1]]  MATCH"), "{text}");

    let o = jacobsthal(&[&args[..], &["--expect-errata"]].concat());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn sum_unweighted_and_unit_weight_match() {
    let o = jacobsthal(&["sum", "--a", "2", "--b", "1", "--n", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("closed-form:     [[12,7],[7,5]]  MATCH"));
    let o = jacobsthal(&["sum", "--a", "2", "--b", "1", "--x", "1", "--n", "9"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn verify_default_grid_with_errata_exits_0() {
    let o = jacobsthal(&["verify", "--suite", "all", "--a", "-3..3", "--b", "-3..3", "--n-max", "128", "--expect-errata"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn verify_without_errata_flag_exits_1() {
    let o = jacobsthal(&["verify", "--suite", "weighted_sum_t6", "--a", "2", "--b", "1", "--n-max", "4"]);
    assert_eq!(code(&o), 1);
    let o = jacobsthal(&["verify", "--suite", "weighted_sum_t6", "--a", "2", "--b", "1", "--n-max", "4", "--x", "1"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_usage_errors_exit_2() {
    for args in [
        vec!["verify", "--suite", "bogus"],
        vec!["verify", "--a", "0..0"],
        vec!["verify", "--b", "1,0"],
        vec!["verify", "--x", "0"],
        vec!["verify", "--n-max", "-4"],
    ] {
        let o = jacobsthal(&args);
        assert_eq!(code(&o), 2, "{args:?}");
    }
}

#[test]
fn verify_csv_layout_and_round_trip() {
    let o = jacobsthal(&["verify", "--a", "2,1/2", "--b", "-1", "--n-max", "12", "--x", "2,3", "--format", "csv"]);
    assert_eq!(code(&o), 1);
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header.join(","),
        "identity,a,b,x,n_max,status,first_failure,residual_e11,residual_e12,residual_e21,residual_e22"
    );
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        rows += 1;
        for (i, field) in rec.iter().enumerate() {
            if [1, 2, 3].contains(&i) || (i >= 7 && !field.is_empty()) {
                if field.is_empty() {
                    continue;
                }
                let r = Rational::from_str(field).expect(field);
                assert_eq!(r.to_string(), field);
            }
        }
    }
    // 2 points × (8 single suites + 2 weights)
    assert_eq!(rows, 20);
}

#[test]
fn verify_json_lines_round_trip() {
    let o = jacobsthal(&["verify", "--a", "1", "--b", "1", "--n-max", "10", "--format", "json"]);
    let text = stdout(&o);
    let mut seen = 0;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        seen += 1;
        for key in ["a", "b"] {
            let s = v[key].as_str().unwrap();
            assert_eq!(Rational::from_str(s).unwrap().to_string(), s);
        }
        if let Some(res) = v.get("residual").and_then(|r| r.as_object()) {
            for val in res.values() {
                let s = val.as_str().expect("rationals are strings");
                assert_eq!(Rational::from_str(s).unwrap().to_string(), s);
            }
        }
    }
    assert_eq!(seen, 12);
    // output ordering is deterministic
    let again = jacobsthal(&["verify", "--a", "1", "--b", "1", "--n-max", "10", "--format", "json"]);
    assert_eq!(text, stdout(&again));
}

#[test]
fn bench_emits_csv() {
    let o = jacobsthal(&["bench", "--a", "2", "--b", "3", "--ladder", "64,256", "--reps", "1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("method,n,wall_ms,term_bits"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][0], "recurrence");
    assert_eq!(rows[1][0], "fast");
    assert_eq!(rows[0][3], rows[1][3]);
}

#[test]
fn bench_binet_on_degenerate_exits_2() {
    let o = jacobsthal(&["bench", "--a", "-2", "--b", "4", "--ladder", "8", "--methods", "recurrence,binet"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn help_exits_0() {
    let o = jacobsthal(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verify"));
}
