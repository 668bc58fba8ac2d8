use std::process::{Command, Output};

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_milnor-forge"))
        .args(args)
        .env_remove("MILNOR_FORGE_BOUNDS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(args: &[&str]) -> (i32, Vec<serde_json::Value>) {
    let mut a = args.to_vec();
    a.extend(["--format", "records"]);
    let o = forge(&a);
    let lines = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is one JSON record"))
        .collect();
    (o.status.code().unwrap(), lines)
}

fn output_of(args: &[&str]) -> String {
    let (code, r) = records(args);
    assert_eq!(code, 0, "{args:?}: {r:?}");
    r[0]["output"].as_str().unwrap().to_string()
}

#[test]
fn tame_of_five_two() {
    let (code, r) = records(&["tame", "{5,2}"]);
    assert_eq!(code, 0);
    assert_eq!(r.len(), 2);
    assert_eq!(r[0]["record"], "check");
    assert_eq!(r[0]["field"], "padic:5:8");
    assert_eq!(r[0]["output"], "deg:1 {ff(5,1):g^1}");
    assert_eq!(r[1]["record"], "summary");
    assert_eq!(r[1]["pass"], true);
}

#[test]
fn tame_with_other_uniformizer() {
    // with π = 10, {10, 3} has ∂ = {3}; with π = 5 it picks up {2, 3}-style terms
    assert_eq!(output_of(&["tame", "{10,3}", "--pi", "10"]), "deg:1 {ff(5,1):g^3}");
}

#[test]
fn hilbert_two_five_over_q2() {
    assert_eq!(output_of(&["hilbert", "2", "5", "--field", "padic:2"]), "1");
    assert_eq!(output_of(&["hilbert", "2", "7", "--field", "padic:2"]), "0");
}

#[test]
fn ff_kgroups() {
    assert_eq!(output_of(&["ff-kgroup", "--q", "7", "--n", "1"]), "Z/6");
    assert_eq!(output_of(&["ff-kgroup", "--q", "9", "--n", "2"]), "0");
}

#[test]
fn ratring_examples() {
    assert_eq!(output_of(&["s-member", "5*t + 1"]), "true");
    assert_eq!(output_of(&["s-member", "5*t + 10"]), "false");
    assert_eq!(output_of(&["s-member", "t1*t2 + 5"]), "true");
    assert_eq!(output_of(&["ratring-unit", "5/(t + 1)"]), "false");
    assert_eq!(output_of(&["ratring-residue", "(6*t + 1)/(t + 7)"]), "(t + 1)/(t + 2)");
}

#[test]
fn bass_tate_examples() {
    assert_eq!(output_of(&["section", "t -> 2; inf -> 2"]), "deg:2 {t,2}");
    assert_eq!(
        output_of(&["norm", "--field", "ff:5", "--pi", "X - 2", "{X, 3}"]),
        "deg:2 {ff(5,1):g^1,ff(5,1):g^3}"
    );
    let (code, _) = records(&["check-projection", "--pi", "X^2 + t", "--x", "{t+1}", "--y", "{X}"]);
    assert_eq!(code, 0);
    let (code, _) = records(&["check-tower", "--pi1", "X^2 - t", "--pi2", "Y^2 - X"]);
    assert_eq!(code, 0);
}

#[test]
fn exit_codes() {
    let o = forge(&["gersten-check", "--field", "padic:5", "--n", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mixed characteristic"));

    let o = forge(&["base-change-check", "--field", "padic:3:6", "--pi", "X^2 - 1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = forge(&["suite", "NOPE"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));

    // δ({t, 2}) does not vanish: a failed check, not an error
    let (code, r) = records(&["delta-check", "{t, 2}"]);
    assert_eq!(code, 1);
    assert_eq!(r.last().unwrap()["pass"], false);
}

#[test]
fn bounds_from_env() {
    let run = |bounds: &str| {
        Command::new(env!("CARGO_BIN_EXE_milnor-forge"))
            .args(["ff-kgroup", "--q", "16", "--n", "2", "--format", "records"])
            .env("MILNOR_FORGE_BOUNDS", bounds)
            .output()
            .unwrap()
    };
    assert_eq!(run("maxq=8").status.code(), Some(2));
    assert_eq!(run("maxq=0").status.code(), Some(2));
    let o = run("maxq=16,maxdeg=2");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#""bounds":"maxq=16,maxdeg=2,oracleprec=8""#));
}

#[test]
fn records_are_reproducible() {
    let runs: [&[&str]; 2] = [
        &["suite", "STEINBERG", "--seed", "42"],
        &["gersten-check", "--n", "2", "--m", "2", "--samples", "5", "--seed", "7"],
    ];
    for args in runs {
        let mut a = args.to_vec();
        a.extend(["--format", "records"]);
        let x = forge(&a);
        let y = forge(&a);
        assert_eq!(x.status.code(), Some(0));
        assert_eq!(x.stdout, y.stdout);
    }
    let a = forge(&["check-reciprocity", "--seed", "1", "--format", "records"]);
    let b = forge(&["check-reciprocity", "--seed", "2", "--format", "records"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn certificate_files_round_trip() {
    let dir = std::env::temp_dir().join(format!("milnor-forge-cert-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.txt");
    let p = path.to_str().unwrap();
    let (code, r) = records(&["divide", "{6,7}", "--ell", "3", "--cert", p]);
    assert_eq!(code, 0);
    assert_eq!(r.last().unwrap()["certificates"][0], p);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l == "divisor 3"));

    let (code, _) = records(&["verify-cert", p]);
    assert_eq!(code, 0);

    std::fs::write(&path, text.replace("divisor 3", "divisor 4")).unwrap();
    let (code, r) = records(&["verify-cert", p]);
    assert_eq!(code, 1);
    assert_eq!(r[0]["pass"], false);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_output_to_file() {
    let path = std::env::temp_dir().join(format!("milnor-forge-out-{}.txt", std::process::id()));
    let o = forge(&["hilbert", "-1", "-1", "--field", "padic:2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("command: hilbert  field: padic:2:8  seed: 0"));
    assert!(text.contains("PASS 1/1 checks passed"));
    std::fs::remove_file(&path).unwrap();
}
