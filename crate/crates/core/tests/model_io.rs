use prioritree::io::{
    load_model, nhs_document, nhs_model, parse_document, render_document, render_report,
    save_model, ModelDocument, ReportFormat, NHS_DOCUMENT,
};
use prioritree::{Element, ElicitationSession, Error, Hierarchy, Judgment, MatrixId};
use proptest::prelude::*;

#[test]
fn fixture_is_the_model_of_record() {
    let m = nhs_model();
    assert_eq!(m.hierarchy().criteria.len(), 11);
    assert_eq!(m.hierarchy().alternative_ids(), ["SAAS", "PAAS", "IAAS"]);
    let cm = m.criteria_matrix();
    let fun = cm.index_of("Fun").unwrap();
    let vel = cm.index_of("Vel").unwrap();
    assert_eq!(cm.get(fun, vel), Judgment::intensity(5).unwrap());
    assert_eq!(cm.get(vel, fun), Judgment::new(1, 5).unwrap());
    assert_eq!(cm.get(fun, cm.index_of("Vol").unwrap()), Judgment::ONE);
    let f = m.alternative_matrix("Fun").unwrap();
    assert_eq!(f.get(2, 0), Judgment::new(1, 7).unwrap());
}

#[test]
fn fixture_file_is_canonical() {
    let m = load_model(NHS_DOCUMENT.as_bytes()).unwrap();
    let doc = nhs_document();
    assert_eq!(render_document(&doc), NHS_DOCUMENT);
    // save drops metadata but is otherwise the same bytes
    let saved = save_model(&m);
    assert_eq!(load_model(&saved).unwrap(), m);
    assert_eq!(save_model(&load_model(&saved).unwrap()), saved);
    assert_eq!(save_model(&m), saved);
}

#[test]
fn lowest_terms_rendering() {
    let text = NHS_DOCUMENT.replace("\"value\": \"5\"", "\"value\": \"5/1\"");
    let doc = parse_document(text.as_bytes()).unwrap();
    assert_eq!(render_document(&doc), NHS_DOCUMENT);
}

#[test]
fn reversed_pairs_normalize() {
    let text = NHS_DOCUMENT.replacen(
        "\"a\": \"SAAS\",\n        \"b\": \"PAAS\",\n        \"value\": \"1/3\"",
        "\"a\": \"PAAS\",\n        \"b\": \"SAAS\",\n        \"value\": \"3\"",
        1,
    );
    assert_ne!(text, NHS_DOCUMENT);
    assert_eq!(
        render_document(&parse_document(text.as_bytes()).unwrap()),
        NHS_DOCUMENT
    );
}

#[test]
fn missing_matrix_is_named() {
    let mut v: serde_json::Value = serde_json::from_str(NHS_DOCUMENT).unwrap();
    v["alternative_matrices"]
        .as_object_mut()
        .unwrap()
        .remove("Vel");
    let err = load_model(v.to_string().as_bytes()).unwrap_err();
    assert!(
        matches!(&err, Error::Schema(m) if m.contains("\"Vel\"")),
        "{err}"
    );
    // still fine as a partial document
    let doc = parse_document(v.to_string().as_bytes()).unwrap();
    let s = doc.to_session().unwrap();
    assert_eq!(s.entered().len(), 85);
}

#[test]
fn missing_pair_is_named() {
    let mut v: serde_json::Value = serde_json::from_str(NHS_DOCUMENT).unwrap();
    v["alternative_matrices"]["Usa"]
        .as_array_mut()
        .unwrap()
        .pop();
    let err = load_model(v.to_string().as_bytes()).unwrap_err();
    assert!(err.to_string().contains("(PAAS, IAAS)"), "{err}");
}

#[test]
fn parse_errors_carry_position() {
    let err = load_model(b"{\n  \"version\": 1,\n  oops\n}").unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
    assert!(matches!(
        load_model(&[0xff, 0xfe]),
        Err(Error::Parse { .. })
    ));
}

#[test]
fn scale_errors() {
    let text = NHS_DOCUMENT.replacen("\"value\": \"1/3\"", "\"value\": \"10\"", 1);
    let err = load_model(text.as_bytes()).unwrap_err();
    assert!(
        matches!(&err, Error::Scale { location, .. } if location.contains("Arc")),
        "{err}"
    );
    let text = NHS_DOCUMENT.replacen("\"value\": \"1/3\"", "\"value\": 3", 1);
    assert!(matches!(
        load_model(text.as_bytes()),
        Err(Error::Parse { .. })
    ));
}

#[test]
fn schema_errors() {
    let mut v: serde_json::Value = serde_json::from_str(NHS_DOCUMENT).unwrap();
    v["version"] = 2.into();
    assert!(matches!(
        load_model(v.to_string().as_bytes()),
        Err(Error::Schema(_))
    ));

    let mut v: serde_json::Value = serde_json::from_str(NHS_DOCUMENT).unwrap();
    v["alternative_matrices"]["Bogus"] = serde_json::json!([]);
    assert!(matches!(
        load_model(v.to_string().as_bytes()),
        Err(Error::Schema(_))
    ));

    let mut v: serde_json::Value = serde_json::from_str(NHS_DOCUMENT).unwrap();
    v["criteria_matrix"]["pairs"][0]["b"] = "Nope".into();
    assert!(matches!(
        load_model(v.to_string().as_bytes()),
        Err(Error::Schema(_))
    ));
}

#[test]
fn broken_reciprocal_pair_names_the_cell() {
    let mut v: serde_json::Value = serde_json::from_str(NHS_DOCUMENT).unwrap();
    v["alternative_matrices"]["Fun"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!({"a": "PAAS", "b": "SAAS", "value": "1/2"}));
    let err = load_model(v.to_string().as_bytes()).unwrap_err();
    let msg = err.to_string();
    assert!(
        msg.contains("reciprocity") && msg.contains("(SAAS, PAAS)"),
        "{msg}"
    );
}

fn two_by_two() -> Hierarchy {
    Hierarchy::new(
        "g",
        vec![Element::new("c1", "first"), Element::new("c2", "second")],
        vec![Element::new("x", ""), Element::new("y", "")],
    )
    .unwrap()
}

#[test]
fn reports() {
    let snap = ElicitationSession::from_model(nhs_model()).evaluate::<f64>();
    let text = render_report(&snap, ReportFormat::Text).unwrap();
    assert!(text.contains("Best alternative: SAAS"));
    assert!(text.contains("Result"));
    assert!(text.contains("Warning: CR above threshold in criteria, Arc, Val, Ver"));

    let csv = render_report(&snap, ReportFormat::Csv).unwrap();
    let lines: Vec<&str> = csv.split("\r\n").filter(|l| !l.is_empty()).collect();
    assert_eq!(lines[0], "rank,alternative,score,tied");
    assert_eq!(lines.len(), 4);
    let total: f64 = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-6);
    assert!(lines[1].starts_with("1,SAAS,"));
}

#[test]
fn tied_report() {
    let mut s = ElicitationSession::new(two_by_two()).unwrap();
    s.set_judgment(&MatrixId::Criteria, 0, 1, Judgment::ONE)
        .unwrap();
    s.set_judgment(&MatrixId::parse("c1"), 0, 1, Judgment::ONE)
        .unwrap();
    s.set_judgment(&MatrixId::parse("c2"), 0, 1, Judgment::ONE)
        .unwrap();
    let snap = s.evaluate::<f64>();
    let text = render_report(&snap, ReportFormat::Text).unwrap();
    assert!(text.contains("Tied: x, y"), "{text}");
    let csv = render_report(&snap, ReportFormat::Csv).unwrap();
    assert_eq!(
        csv,
        "rank,alternative,score,tied\r\n1,x,0.5,true\r\n2,y,0.5,true\r\n"
    );
}

#[test]
fn partial_report() {
    let mut s = ElicitationSession::new(two_by_two()).unwrap();
    s.set_judgment(&MatrixId::Criteria, 0, 1, Judgment::intensity(3).unwrap())
        .unwrap();
    let snap = s.evaluate::<f64>();
    let text = render_report(&snap, ReportFormat::Text).unwrap();
    assert!(text.contains("100.0%") && text.contains("0.0%"));
    assert!(!text.contains("Result"));
    assert!(matches!(
        render_report(&snap, ReportFormat::Csv),
        Err(Error::IncompleteForCsv(_))
    ));
}

#[test]
fn partial_session_export_round_trips() {
    let mut s = ElicitationSession::new(two_by_two()).unwrap();
    s.set_judgment(
        &MatrixId::parse("c2"),
        1,
        0,
        Judgment::intensity(4).unwrap(),
    )
    .unwrap();
    let doc = ModelDocument::from_session(&s, None);
    let text = render_document(&doc);
    let back = parse_document(text.as_bytes()).unwrap();
    assert_eq!(back, doc);
    let s2 = back.to_session().unwrap();
    assert_eq!(s2.model(), s.model());
    assert_eq!(s2.entered(), s.entered());
    assert!(back.into_model().is_err());
}

fn arb_model() -> impl Strategy<Value = prioritree::DecisionModel> {
    let scale: Vec<Judgment> = Judgment::scale().collect();
    (2usize..6, 2usize..5).prop_flat_map(move |(n, m)| {
        let total = n * (n - 1) / 2 + n * m * (m - 1) / 2;
        proptest::collection::vec(proptest::sample::select(scale.clone()), total).prop_map(
            move |vals| {
                let h = Hierarchy::new(
                    "goal \"quoted\" ü",
                    (0..n)
                        .map(|k| Element::new(format!("c{k}"), format!("crit {k}")))
                        .collect(),
                    (0..m).map(|k| Element::new(format!("a{k}"), "")).collect(),
                )
                .unwrap();
                let mut s = ElicitationSession::new(h).unwrap();
                let mut it = vals.into_iter();
                let keys = std::iter::once((MatrixId::Criteria, n))
                    .chain((0..n).map(|k| (MatrixId::Alternatives(format!("c{k}")), m)));
                for (id, d) in keys {
                    for i in 0..d {
                        for j in i + 1..d {
                            s.set_judgment(&id, i, j, it.next().unwrap()).unwrap();
                        }
                    }
                }
                s.complete_model().unwrap().clone()
            },
        )
    })
}

proptest! {
    #[test]
    fn save_load_is_identity(m in arb_model()) {
        let bytes = save_model(&m);
        let back = load_model(&bytes).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(save_model(&back), bytes);
    }
}
