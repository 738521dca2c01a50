use std::process::Command;

use cli::{dex_report, family_derivations, parse_sca, select_family, write_sca, ScaFile};
use doubleext::{build_family, prepare};
use gf2core::BitVector;
use liesuper::{build_algebra, derived, verify_axioms, BasisElement, FamilyAlgebra, Parity, StructureConstants};
use superfunc::Family;

fn superdex(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_superdex")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn fam(f: Family) -> FamilyAlgebra {
    build_algebra(f).unwrap()
}

#[test]
fn sca_round_trip_is_exact() {
    for f in [Family::h("Pi", 0, 4).unwrap(), Family::h("II", 2, 2).unwrap(), Family::le(2).unwrap(), Family::h("Pi", 0, 5).unwrap()] {
        let fa = fam(f);
        let file = cli::build_file(&fa);
        let back = parse_sca(&write_sca(&file)).unwrap();
        assert_eq!(back, file, "{}", f.label());
    }
    let fa = fam(Family::le(2).unwrap());
    let d = deriv::closed_form_generators(&fa).unwrap().into_iter().find(|c| c.label == "D^(2)").unwrap();
    let data = prepare(&fa.alg, &fa.form, d.map, &d.label).unwrap();
    let ext = build_family(&fa, &data).unwrap();
    let file = ScaFile { comments: vec![ext.provenance()], alg: ext.alg, form: Some(ext.form) };
    assert_eq!(parse_sca(&write_sca(&file)).unwrap(), file);
}

#[test]
fn sca_records_only_upper_triangle() {
    let basis = vec![BasisElement::new("x", Parity::Even, 0, vec![]), BasisElement::new("y", Parity::Odd, 1, vec![]), BasisElement::new("z", Parity::Odd, 1, vec![])];
    let mut g = StructureConstants::abelian(basis);
    g.set_bracket(0, 1, BitVector::unit(3, 2));
    g.set_bracket(1, 2, BitVector::unit(3, 0));
    g.set_square(2, BitVector::unit(3, 0));
    let text = write_sca(&ScaFile { comments: vec![], alg: g.clone(), form: None });
    let body: Vec<&str> = text.lines().skip(7).collect();
    assert_eq!(body, ["0 1 2", "1 2 0", "sq 2 0", "end"]);
    assert!(text.contains("e x 0 0 -\n"));
    assert_eq!(parse_sca(&text).unwrap().alg, g);
}

#[test]
fn sca_parse_errors() {
    let good = write_sca(&cli::build_file(&fam(Family::h("Pi", 0, 4).unwrap())));
    let cases = [
        (good.replace("field GF2", "field GF3"), "GF2"),
        (good.replace("sdim 6|8", "sdim 7|7"), "sdim"),
        (good.replace("end\n", ""), "missing end"),
        (good.replace("end\n", "0 0 99\nend\n"), "out of range"),
        (good.replace("end\n", "3 1 0\nend\n"), "i <= j"),
        (good.replace("end\n", "end\n0 0 1\n"), "after end"),
        (good.replace("end\n", "sq 2 0\nend\n"), "square"),
        (good.replace("end\n", "bogus\nend\n"), "unrecognised"),
    ];
    for (text, want) in cases {
        let err = parse_sca(&text).expect_err(want);
        assert!(err.reason.contains(want), "{want}: {err}");
    }
}

#[test]
fn size_guard() {
    assert!(select_family("h", Some("Pi"), Some(0), Some(4), None, false).is_ok());
    assert!(select_family("h", Some("Pi"), Some(0), Some(7), None, false).is_ok());
    assert!(select_family("h", Some("Pi"), Some(0), Some(3), None, false).is_err());
    assert!(select_family("h", Some("Pi"), Some(0), Some(8), None, false).is_err());
    assert!(select_family("h", Some("Pi"), Some(0), Some(8), None, true).is_ok());
    assert!(select_family("le", None, None, None, Some(3), false).is_ok());
    assert!(select_family("le", None, None, None, Some(4), false).is_err());
    assert!(select_family("le", None, None, None, Some(4), true).is_ok());
    assert!(select_family("le", Some("Pi"), None, None, Some(2), false).is_err());
    assert!(select_family("h", Some("Q"), Some(0), Some(4), None, false).is_err());
    assert!(select_family("k", None, None, None, None, false).is_err());
}

#[test]
fn build_command_writes_the_algebra() {
    let dir = std::env::temp_dir().join(format!("superdex-build-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p04.sca");
    let (code, _, _) = superdex(&["build", "h", "--form", "Pi", "--even", "0", "--odd", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let file = parse_sca(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file.alg.dim(), 14);
    let series: Vec<usize> = (0..3).map(|i| derived(&file.alg, i).dim()).collect();
    assert_eq!(series, [14, 14, 14]);
    assert!(verify_axioms(&file.alg).passed());

    let (code, out, _) = superdex(&["build", "--family", "le", "--n", "2"]);
    assert_eq!(code, 0);
    let le = parse_sca(&out).unwrap();
    assert_eq!(le.alg, fam(Family::le(2).unwrap()).alg);
    assert_eq!(derived(&le.alg, 1).dim(), 14);

    let (code, out, _) = superdex(&["build", "h", "--form", "II", "--even", "2", "--odd", "2"]);
    assert_eq!(code, 0);
    assert_eq!(parse_sca(&out).unwrap().form.unwrap().parity, Parity::Even);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(superdex(&["build", "h", "--even", "0", "--odd", "9"]).0, 2);
    assert_eq!(superdex(&["build", "h", "--even", "0", "--odd", "9", "--override-size"]).0, 0);
    assert_eq!(superdex(&["build", "le", "--n", "4"]).0, 2);
    assert_eq!(superdex(&["build", "x", "--n", "2"]).0, 2);
    assert_eq!(superdex(&["frobnicate"]).0, 2);
    assert_eq!(superdex(&["derivations", "--input", "/nonexistent/file.sca"]).0, 2);
    assert_eq!(superdex(&["identify", "h", "--even", "0", "--odd", "4"]).0, 0);
    assert_eq!(superdex(&["identify", "h", "--even", "0", "--odd", "4", "--derivation", "D_xi1^(0)"]).0, 1);
    assert_eq!(superdex(&["identify", "h", "--even", "0", "--odd", "4", "--derivation", "nope"]).0, 2);
}

#[test]
fn derivation_reports() {
    let count_rows = |out: &str| {
        let start = out.lines().position(|l| l.starts_with("outer classes")).unwrap();
        out.lines().skip(start + 1).take_while(|l| l.starts_with("  ")).count()
    };
    let (code, out, _) = superdex(&["derivations", "h", "--form", "Pi", "--even", "0", "--odd", "4"]);
    assert_eq!(code, 0);
    assert_eq!(count_rows(&out), 7);
    assert!(out.contains("all 21 inner 14 outer 7"));

    let shapes = |out: &str| -> Vec<String> {
        let start = out.lines().position(|l| l.starts_with("outer classes")).unwrap();
        out.lines().skip(start + 1).take_while(|l| l.starts_with("  ")).map(|l| l.split_whitespace().take(2).collect::<Vec<_>>().join(" ")).collect()
    };
    let i04 = family_derivations(&fam(Family::h("I", 0, 4).unwrap()), false).unwrap().text;
    let i40 = family_derivations(&fam(Family::h("I", 4, 0).unwrap()), false).unwrap().text;
    let total: usize = i04.lines().skip_while(|l| !l.starts_with("outer classes")).skip(1).take_while(|l| l.starts_with("  ")).map(|l| l.split_whitespace().nth(3).unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(total, 6);
    let degrees = |v: Vec<String>| v.into_iter().map(|s| s.split(' ').next().unwrap().to_string()).collect::<Vec<_>>();
    assert_eq!(degrees(shapes(&i04)), degrees(shapes(&i40)));

    let le = family_derivations(&fam(Family::le(2).unwrap()), false).unwrap().text;
    let p04 = family_derivations(&fam(Family::h("Pi", 0, 4).unwrap()), false).unwrap().text;
    assert_eq!(shapes(&le), shapes(&p04));
    for line in le.lines().filter(|l| l.starts_with("  D_")) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let want = if f[0].starts_with("D_0") { "even" } else { "odd" };
        assert_eq!(f[3], want, "{line}");
    }
}

#[test]
fn dex_tables() {
    let out = dex_report(&fam(Family::h("Pi", 0, 5).unwrap()), false).unwrap();
    let m_rows: Vec<&str> = out.csv.lines().filter(|l| l.contains("Dodd_Bodd")).collect();
    assert_eq!(m_rows.len(), 2);
    assert!(m_rows[0].contains(",0,") && m_rows[1].contains(",1,"));

    let out = dex_report(&fam(Family::h("I", 0, 4).unwrap()), false).unwrap();
    let th = out.report.text.lines().find(|l| l.starts_with("D_th1")).unwrap();
    assert!(th.contains("- ("), "{th}");

    let out = dex_report(&fam(Family::le(3).unwrap()), false).unwrap();
    assert_eq!(out.files.len(), 1);
    assert!(out.files[0].0.contains("D_4"));
    let built: Vec<&str> = out.csv.lines().skip(1).filter(|l| l.split(',').nth(9) == Some("yes")).collect();
    assert_eq!(built.len(), 1);
    assert!(built[0].contains("D^(4),even"));
    for (_, file) in &out.files {
        assert_eq!(parse_sca(&write_sca(file)).unwrap(), *file);
    }
}

#[test]
fn dex_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("superdex-dex-{}", std::process::id()));
    let run = |sub: &str, parallel: bool| {
        let d = dir.join(sub);
        let mut args = vec!["dex", "h", "--form", "Pi", "--even", "0", "--odd", "4", "--out", d.to_str().unwrap()];
        if parallel {
            args.push("--parallel");
        }
        let (code, out, _) = superdex(&args);
        assert_eq!(code, 0);
        let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(&d).unwrap().map(|e| e.unwrap()).map(|e| (e.file_name().into_string().unwrap(), std::fs::read(e.path()).unwrap())).collect();
        files.sort();
        (out, files)
    };
    let a = run("a", false);
    let b = run("b", false);
    let c = run("c", true);
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert!(a.1.iter().any(|(n, _)| n.ends_with(".csv")));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fingerprint_of_file_matches_family() {
    let dir = std::env::temp_dir().join(format!("superdex-fp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("le2.sca");
    assert_eq!(superdex(&["build", "le", "--n", "2", "--out", path.to_str().unwrap()]).0, 0);
    let (c1, from_file, _) = superdex(&["fingerprint", "--input", path.to_str().unwrap()]);
    let (c2, from_family, _) = superdex(&["fingerprint", "le", "--n", "2"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(from_file, from_family);
    assert!(invariants::Fingerprint::from_text(&from_file).is_ok());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bench_reports_equality() {
    let (code, out, _) = superdex(&["bench", "h", "--even", "0", "--odd", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("equal yes"));
    assert!(out.lines().any(|l| l.starts_with("h_Pi(0|4),14,naive,")));
}
