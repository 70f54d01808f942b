use psigroups::cli::{run, EXIT_OK, EXIT_USAGE};
use psigroups::harness::build_catalog;
use psigroups::{group_from_expr, omega_filtration, psi_brute, Psi};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("psigroups")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn export_then_import_reproduces_psi() {
    let dir = tempfile::tempdir().unwrap();
    for expr in ["D16*C2", "Q8*C4", "H27", "M125", "C9*C3"] {
        let path = dir.path().join(format!("{}.gt1", expr.replace('*', "x")));
        let path_str = path.to_str().unwrap();
        let (code, out, err) = run_args(&["export", expr, "--out", path_str]);
        assert_eq!(code, EXIT_OK, "{err}");
        assert!(out.starts_with("wrote "), "{out}");

        let expected: Psi = psi_brute(&group_from_expr(expr).unwrap()).unwrap();
        let (code, out, err) = run_args(&["import", path_str, "--check-assoc", "psi"]);
        assert_eq!(code, EXIT_OK, "{err}");
        let value: Psi = out.trim().rsplit(" = ").next().unwrap().parse().unwrap();
        assert_eq!(value, expected, "{expr}");

        let (_, imported, _) = run_args(&["import", path_str, "spectrum"]);
        let (_, direct, _) = run_args(&["spectrum", expr]);
        assert_eq!(imported, direct);
    }
}

#[test]
fn import_rejects_broken_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.gt1");
    std::fs::write(&path, "GT1 3\n0 1 2\n1 1 0\n2 0 1\n").unwrap();
    let (code, out, err) = run_args(&["import", path.to_str().unwrap(), "psi"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("bad.gt1"), "{err}");

    let missing = dir.path().join("missing.gt1");
    assert_eq!(
        run_args(&["import", missing.to_str().unwrap(), "psi"]).0,
        EXIT_USAGE
    );
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["omega", "M16*C2"][..],
        &["compare", "C9*C3", "M27"],
        &["verify", "--p", "2", "--max-order", "32"],
    ] {
        let first = run_args(args);
        assert_eq!(first, run_args(args));
        assert!(first.1.is_ascii());
        assert!(!first.1.contains('\r'));
    }
}

#[test]
fn compare_reports_equal_filtrations() {
    let (code, out, _) = run_args(&["compare", "C9*C3", "M27"]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.contains(
            "psi(P) = 187\npsi(Q) = 187\nrelation: psi(P) = psi(Q)\ntheorem: T1.1 predicts =\n"
        ),
        "{out}"
    );
    assert!(out.ends_with("bijection: yes\n"), "{out}");
}

#[test]
fn catalog_filtrations_match_fresh_computation() {
    let cat = build_catalog(&[2, 3], 64).unwrap();
    for e in &cat.entries {
        assert_eq!(
            e.filtration(),
            &omega_filtration(&e.group).unwrap(),
            "{}",
            e.name()
        );
        assert_eq!(e.psi(), psi_brute::<Psi>(&e.group).unwrap(), "{}", e.name());
    }
}
