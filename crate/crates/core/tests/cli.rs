use palsum::cli::{run, EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
use palsum::encoding::encode_nwa_input;
use palsum::format::{read_native, Machine};
use palsum::generators::gpal_checker;

fn palsum(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("palsum").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn value<'a>(out: &'a str, key: &str) -> Option<&'a str> {
    out.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

#[test]
fn prove_binary_holds() {
    let (code, out, err) = palsum(&["prove", "binary"]);
    assert_eq!(code, EXIT_OK, "{out}{err}");
    assert_eq!(value(&out, "holds"), Some("true"));
    assert_eq!(value(&out, "states.palChecker2"), Some("771"));
    assert!(err.contains("elapsed="));
}

#[test]
fn oracle_176_is_not_representable_with_three() {
    let (code, out, _) = palsum(&["oracle", "palindrome", "2", "3", "176"]);
    assert_eq!(code, EXIT_COUNTEREXAMPLE);
    assert!(out.contains("not representable"));
    let (code, out, _) = palsum(&["oracle", "palindrome", "2", "4", "176"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(value(&out, "result"), Some("representable"));
}

#[test]
fn oracle_min_and_ranges() {
    let (code, out, _) = palsum(&["oracle", "palindrome", "2", "5", "min", "176"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(value(&out, "min_summands"), Some("4"));
    let (code, out, _) = palsum(&["oracle", "palindrome", "2", "3", "170..190"]);
    assert_eq!(code, EXIT_COUNTEREXAMPLE);
    assert_eq!(value(&out, "not_representable"), Some("176,188"));
}

#[test]
fn oracle_exceptions_even_filter() {
    let (code, out, _) = palsum(&[
        "oracle",
        "antipal",
        "2",
        "3",
        "exceptions",
        "--limit",
        "200",
        "--even",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        value(&out, "exceptions"),
        Some("8,18,28,130,134,138,148,158,176")
    );
}

#[test]
fn density_prints_a_rational() {
    let (code, out, _) = palsum(&["density", "palindrome", "2", "1000"]);
    assert_eq!(code, EXIT_OK);
    let ratio = value(&out, "min_ratio").unwrap();
    assert!(ratio.contains('/'), "{ratio}");
    assert!(value(&out, "argmin").is_some());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(palsum(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(palsum(&[]).0, EXIT_USAGE);
    assert_eq!(palsum(&["prove", "nonsense"]).0, EXIT_USAGE);
    assert_eq!(palsum(&["sim", "noSuchMachine", "5"]).0, EXIT_USAGE);
    assert_eq!(
        palsum(&["oracle", "palindrome", "1", "3", "5"]).0,
        EXIT_USAGE
    );
    let (code, _, err) = palsum(&["prove", "genpal", "--negative-control", "zz"]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(err.lines().count(), 1, "{err}");
}

#[test]
fn resource_limit_exits_3() {
    let (code, _, err) = palsum(&["prove", "gap", "--budget", "1000"]);
    assert_eq!(code, EXIT_RESOURCE);
    assert!(err.contains("resource budget"));
}

#[test]
fn negative_control_exits_1() {
    let (code, out, _) = palsum(&["prove", "genpal", "--negative-control", "n"]);
    assert_eq!(code, EXIT_COUNTEREXAMPLE);
    assert_eq!(value(&out, "holds"), Some("false"));
    assert_eq!(value(&out, "counterexample.oracle_confirmed"), Some("true"));
}

#[test]
fn sim_agrees_with_oracle() {
    let (code, out, _) = palsum(&["sim", "palChecker2", "1..600"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(value(&out, "disagreements"), Some("0"));
    let (code, out, _) = palsum(&["sim", "base4:b.det", "1..1000"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = palsum(&["sim", "palChecker", "21"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(value(&out, "word"), Some("badef"));
    assert_eq!(value(&out, "accepted"), Some("true"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["prove", "genpal"][..],
        &["gen", "gapChecker"],
        &["export", "base3:c", "--format", "ats"],
        &["density", "palindrome", "3", "5000"],
    ] {
        assert_eq!(palsum(args).1, palsum(args).1, "{args:?}");
    }
}

#[test]
fn gen_writes_native_file() {
    let dir = std::env::temp_dir().join(format!("palsum-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gpal.nwa");
    let path_s = path.to_str().unwrap();
    let (code, out, _) = palsum(&["gen", "gpalChecker", "--out", path_s]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(value(&out, "states"), Some("39"));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(matches!(read_native(&text).unwrap(), Machine::Nwa(m) if m.num_states() == 39));
    let (code, out, _) = palsum(&["sim", path_s, "100"]);
    assert_eq!(code, EXIT_OK);
    assert!(value(&out, "accepted").is_some());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ats_export_reimports_with_same_language() {
    let dir = std::env::temp_dir().join(format!("palsum-ats-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gpal.ats");
    let path_s = path.to_str().unwrap();
    let (code, _, _) = palsum(&["export", "gpalChecker", "--format", "ats", "--out", path_s]);
    assert_eq!(code, EXIT_OK);
    // The file loader tries the native format first, then ats.
    let (code, out, _) = palsum(&["export", path_s, "--format", "native"]);
    assert_eq!(code, EXIT_OK);
    let back = match read_native(&out).unwrap() {
        Machine::Nwa(m) => m,
        Machine::Nfa(_) => panic!("expected an NWA"),
    };
    let orig = gpal_checker();
    for n in 1..2000 {
        let w = encode_nwa_input(n).unwrap();
        assert_eq!(
            back.accepts(&w).unwrap(),
            orig.accepts(&w).unwrap(),
            "n={n}"
        );
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
