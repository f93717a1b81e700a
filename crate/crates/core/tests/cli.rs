use std::process::{Command, Output};

use relbound::cli::compare_csv;

fn relbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relbound"))
        .args(args)
        .output()
        .expect("run relbound")
}

fn relbound_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relbound"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .expect("run relbound")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn critical_z_for_equal_masses() {
    let o = relbound(&["critical-z", "--m1", "1", "--m2", "1", "--alpha", "paper"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "z_c\n274\n");
}

#[test]
fn supercritical_spectrum_exits_one() {
    let o = relbound(&["spectrum", "--model", "kg", "--z", "200", "--alpha", "paper"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("supercritical coupling"));
    assert_eq!(err.trim_end().lines().count(), 1);
    assert!(stdout(&o).is_empty());
}

#[test]
fn usage_errors_exit_one_with_one_line() {
    for args in [
        vec!["frobnicate"],
        vec!["spectrum", "--model", "kg"],
        vec!["spectrum", "--model", "kg", "--z", "1", "--z-alpha", "0.1"],
        vec!["curve", "--model", "quark"],
        vec!["packet", "--model", "kg", "--v", "1.5"],
        vec!["critical-z", "--m1", "1", "--m2", "1", "--binding", "3"],
    ] {
        let o = relbound(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert_eq!(stderr(&o).trim_end().lines().count(), 1, "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn solver_failure_exits_two() {
    // the Bohr radius is 1e9 and the solver cannot bracket the level in range
    let o = relbound(&["oracle", "--model", "nonrel", "--z-alpha", "1e-9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("did not converge"));
}

#[test]
fn help_and_version_exit_zero() {
    let o = relbound(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for sub in ["spectrum", "curve", "packet", "rsse", "critical-z", "oracle"] {
        assert!(stdout(&o).contains(sub));
    }
    assert_eq!(relbound(&["--version"]).status.code(), Some(0));
}

#[test]
fn help_lists_units_and_defaults() {
    let packet = stdout(&relbound(&["packet", "--help"]));
    for needle in ["--sigma-rel", "units of m0^2", "[default: 0.0025]", "[default: 2001]", "--alpha", "--precision", "[default: 9]", "--output"] {
        assert!(packet.contains(needle), "missing {needle}");
    }
    let curve = stdout(&relbound(&["curve", "--help"]));
    assert!(curve.contains("[default: 101]") && curve.contains("[default: both]"));
    let rsse = stdout(&relbound(&["rsse", "--help"]));
    assert!(rsse.contains("mass units") && rsse.contains("inf"));
}

#[test]
fn dirac_curve_matches_golden() {
    let o = relbound(&["curve", "--model", "dirac", "--quantity", "both", "--steps", "101"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/curve_dirac_101.csv")).unwrap();
    compare_csv(&golden, &stdout(&o), 0.0).unwrap();
    assert!(stdout(&o).starts_with("z_alpha,z_over_137,E_over_m0,R\n"));
}

#[test]
fn output_file_and_precision() {
    let dir = std::env::temp_dir().join(format!("relbound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spectrum.csv");
    let o = relbound(&[
        "spectrum",
        "--model",
        "kg",
        "--z-alpha",
        "0.3",
        "--precision",
        "4",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().nth(1).unwrap(), "kg,41.1,0.3,0.9487,0.05132,0.003972");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn packet_is_deterministic_across_thread_counts() {
    let args = ["packet", "--model", "kg", "--v", "0.9", "--sigma-rel", "0.0025", "--points", "2001", "--precision", "17"];
    let one = relbound_threads(&args, "1");
    let many = relbound_threads(&args, "4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, relbound_threads(&args, "4").stdout);
    let text = stdout(&one);
    assert!(text.starts_with("xi,phi_sq,chi_sq,rho\n"));
    assert_eq!(text.lines().count(), 2002);
    compare_csv(&text, &text, 0.0).unwrap();
}

#[test]
fn every_command_emits_parseable_csv() {
    for args in [
        vec!["spectrum", "--model", "nonrel", "--z", "1"],
        vec!["curve", "--model", "nonrel", "--steps", "5"],
        vec!["curve", "--model", "kg", "--quantity", "energy", "--steps", "5", "--alpha", "codata"],
        vec!["packet", "--model", "dirac", "--v", "0.5", "--points", "101"],
        vec!["rsse", "--m1", "inf", "--m2", "1", "--z", "100"],
        vec!["critical-z", "--m1", "inf", "--m2", "1", "--binding", "1"],
        vec!["oracle", "--model", "kg", "--z-alpha", "0.3"],
    ] {
        let o = relbound(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let text = stdout(&o);
        compare_csv(&text, &text, 0.0).unwrap();
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let width = rd.headers().unwrap().len();
        for rec in rd.records() {
            assert_eq!(rec.unwrap().len(), width);
        }
    }
}

#[test]
fn rsse_advisory_goes_to_stderr() {
    let o = relbound(&["rsse", "--m1", "1836.152", "--m2", "1", "--z", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("M/mu"));
    let row = stdout(&o);
    assert!(row.lines().nth(1).unwrap().starts_with("1836.152,1,1,1,"));
    let o = relbound(&["rsse", "--m1", "1", "--m2", "1", "--z", "1"]);
    assert!(stderr(&o).is_empty());
}
