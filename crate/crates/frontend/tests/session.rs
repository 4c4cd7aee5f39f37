use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;

use rdefect::ast::Stmt;
use rdefect::{parse_bytes, parse_session, run_session, ErrorKind, Options};

fn corpus() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "lrh"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&p).unwrap())
        })
        .collect()
}

fn run(src: &str) -> rdefect::Report {
    run_session(src, &Options::default()).unwrap_or_else(|d| panic!("{}", d.render(src, "<test>")))
}

fn value(report: &rdefect::Report, query: &str, subject: &str) -> serde_json::Value {
    let e = report.entries.iter().find(|e| e.query == query && e.subject == subject).unwrap();
    e.value.clone().or_else(|| e.verdict.clone()).unwrap()
}

#[test]
fn three_statement_session() {
    let s = parse_session("field QQ; ring A = local QQ[x,y]/(x*y); compute edim A;").unwrap();
    assert_eq!(s.stmts.len(), 3);
    assert!(matches!(s.stmts[1].node, Stmt::Ring { .. }));
    assert!(matches!(s.stmts[2].node, Stmt::Compute(_)));
    assert_eq!(value(&run(&s.to_string()), "edim", "A"), 2);
}

#[test]
fn ring_before_field_is_rejected() {
    let err = parse_session("ring A = local QQ[x];").unwrap_err();
    assert_eq!(err.span.line, 1);
}

#[test]
fn map_and_check_statements() {
    let src = "field QQ;\nring A = local QQ[t];\nring B = local QQ[y];\n\
               map f : A -> B = [y^2];\ncheck basically_regular f;\n";
    let s = parse_session(src).unwrap();
    assert!(matches!(s.stmts[3].node, Stmt::Map { .. }));
    assert!(matches!(s.stmts[4].node, Stmt::Check(_)));
}

#[test]
fn undeclared_name_points_at_use() {
    let src = "field QQ;\nring A = local QQ[x];\ncompute edim B;\n";
    let err = parse_session(src).unwrap_err();
    assert_eq!(err.kind, ErrorKind::UndeclaredName("B".into()));
    assert_eq!((err.span.line, err.span.column), (3, 14));
    assert_eq!(&src[err.span.start..err.span.end], "B");
}

#[test]
fn rd_of_square_map() {
    let src = "field QQ; ring A = local QQ[t]; ring B = local QQ[y];\n\
               map f : A -> B = [y^2]; compute rd f; check basically_regular f;";
    let r = run(src);
    assert_eq!(value(&r, "rd", "f"), 1);
    assert_eq!(value(&r, "basically_regular", "f"), false);
    assert_eq!(r.failures.len(), 1);
}

#[test]
fn truncation_by_m2_is_basically_regular() {
    let src = "field GF(5); ring A = local GF(5)[x,y];\n\
               ideal I = maximal^2 in A; quotient Q, p = A / I;\n\
               compute rd p; check basically_regular p;";
    let r = run(src);
    assert_eq!(value(&r, "rd", "p"), 0);
    assert_eq!(value(&r, "basically_regular", "p"), true);
    assert!(r.failures.is_empty());
}

#[test]
fn map_that_is_not_well_defined() {
    let src = "field QQ; ring A = local QQ[x]/(x^2); ring B = local QQ[y];\n\
               map f : A -> B = [y];";
    let err = run_session(src, &Options::default()).unwrap_err();
    assert!(matches!(err.kind, ErrorKind::Algebra(_)), "{err}");
    assert_eq!(err.span.line, 2);
}

#[test]
fn corpus_is_large_enough() {
    assert!(corpus().len() >= 20);
}

#[test]
fn corpus_round_trips_through_printer() {
    for (name, src) in corpus() {
        let Ok(s) = parse_session(&src) else {
            assert!(name.starts_with("err_"), "{name} does not parse");
            continue;
        };
        let printed = s.to_string();
        let again = parse_session(&printed).unwrap_or_else(|d| panic!("{name}: {d}\n{printed}"));
        assert_eq!(s, again, "{name}");
        assert_eq!(printed, again.to_string(), "{name}");
    }
}

#[test]
fn corpus_executes() {
    for (name, src) in corpus() {
        let out = run_session(&src, &Options::default());
        if name.starts_with("err_") {
            let d = out.expect_err(&name);
            assert!(d.span.line >= 1, "{name}");
            assert!(d.render(&src, &name).contains('^'), "{name}");
        } else {
            let r = out.unwrap_or_else(|d| panic!("{}", d.render(&src, &name)));
            assert!(!r.entries.is_empty(), "{name}");
        }
    }
}

#[test]
fn expected_corpus_values() {
    let corpus = corpus();
    let get = |n: &str| &corpus.iter().find(|(name, _)| name == n).unwrap().1;
    let r = run(get("eps2_examples"));
    assert_eq!(r.entries.iter().filter_map(|e| e.value.clone()).collect::<Vec<_>>(), [2, 1]);
    let r = run(get("undecidable_dimension"));
    assert_eq!(r.entries[0].value.as_ref().unwrap(), "unknown");
    assert_eq!(value(&run(get("triangle")), "rd", "T"), 0);
    assert_eq!(value(&run(get("quotient_square")), "rd", "S"), 0);
}

#[test]
fn trunc_option_changes_report() {
    let src = "field QQ; ring A = local QQ[x]; compute edim A;";
    let r = run_session(src, &Options { trunc_degree: 9 }).unwrap();
    assert_eq!(r.options.trunc_degree, 9);
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["version"], "1");
    assert_eq!(json["options"]["field"], "QQ");
}

#[test]
fn invalid_utf8_is_a_diagnostic() {
    let err = parse_bytes(b"field QQ;\n\xff\xfe").unwrap_err();
    assert_eq!(err.span.line, 2);
}

#[test]
fn huge_exponents_are_rejected() {
    let src = "field QQ; ring A = local QQ[x]/(x^99999999999);";
    assert!(parse_session(src).is_err());
    let src = "field QQ; ring A = local QQ[x,y]/((x+y)^60000);";
    assert!(run_session(src, &Options::default()).is_err());
}

fn expr() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        (0u32..20).prop_map(|n| n.to_string()),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})+({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})-({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), 0u32..4).prop_map(|(a, k)| format!("({a})^{k}")),
            (inner.clone(), 1u32..9).prop_map(|(a, k)| format!("({a})/{k}")),
            inner.prop_map(|a| format!("-({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printer_round_trip(rels in prop::collection::vec(expr(), 0..3), imgs in prop::collection::vec(expr(), 2)) {
        let src = format!(
            "field QQ;\nring A = local QQ[x,y]/({});\nring B = local QQ[x,y];\n\
             map f : A -> B = [{}];\nideal I = ({}) in A;\n",
            rels.join(", "), imgs.join(", "), imgs.join(", ")
        );
        let s = parse_session(&src).unwrap();
        let printed = s.to_string();
        let again = parse_session(&printed).unwrap();
        prop_assert_eq!(&s, &again);
        prop_assert_eq!(printed, again.to_string());
    }

    #[test]
    fn arbitrary_bytes_do_not_panic(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let _ = parse_bytes(&bytes);
    }
}
