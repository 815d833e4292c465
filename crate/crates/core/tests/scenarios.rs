use c2sseq::picard::Conclusion;
use c2sseq::scenarios::{
    builtin, builtin_names, from_json, load, run_scenario, save, to_json, validate,
};
use c2sseq::specseq::{Overrides, DEFAULT_MAX_PAGE};

#[test]
fn builtins_round_trip_and_validate() {
    assert_eq!(builtin_names().len(), 4);
    for name in builtin_names() {
        let s = builtin(name).unwrap();
        assert!(validate(&s).is_empty(), "{name}: {:?}", validate(&s));
        let back = from_json(&to_json(&s)).unwrap();
        assert_eq!(back, s, "{name}");
    }
}

#[test]
fn file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ko.json");
    let s = builtin("ko-endo").unwrap();
    save(&s, &path).unwrap();
    assert_eq!(load(&path).unwrap(), s);
}

#[test]
fn builtin_fields() {
    let ko = builtin("ko-endo").unwrap();
    assert_eq!(ko.differentials.len(), 1);
    assert_eq!(ko.differentials[0].page, 3);
    assert_eq!(ko.differentials[0].generator, "a");
    let ring = ko.presentation.as_ref().unwrap();
    assert_eq!(ring.format(&ko.differentials[0].target), "h1^3");
    let pic = builtin("pic-kgl-2adic").unwrap();
    assert_eq!(pic.lower_bound.unwrap().to_group().symbol(), "Z ⊕ Z/4");
    let kq = builtin("kq-weight0").unwrap();
    let json = to_json(&kq);
    assert!(json.contains("\"lhs\": \"a^2\"") && json.contains("\"rhs\": \"4*b\""));
    assert!(builtin("nope").is_err());
}

fn edit(json: &str, from: &str, to: &str) -> String {
    assert!(json.contains(from), "{from}");
    json.replacen(from, to, 1)
}

fn ko_value() -> serde_json::Value {
    serde_json::from_str(&to_json(&builtin("ko-endo").unwrap())).unwrap()
}

fn violations_of(v: &serde_json::Value) -> Vec<String> {
    validate(&from_json(&v.to_string()).unwrap())
        .iter()
        .map(ToString::to_string)
        .collect()
}

#[test]
fn semantic_violations() {
    let mut v = ko_value();
    let g = &mut v["coefficients"]["periodic"]["groups"][0];
    g["names"] = serde_json::json!(["x", "y"]);
    g["orders"] = serde_json::json!([0, 0]);
    g["action"] = serde_json::json!([[0, 1], [1, 1]]);
    let found = violations_of(&v);
    assert!(
        found.iter().any(|x| x.contains("square to the identity")),
        "{found:?}"
    );

    let mut v = ko_value();
    v["coefficients"]["periodic"]["groups"][0]["action"] = serde_json::json!([[1, 0]]);
    let found = violations_of(&v);
    assert!(found.iter().any(|x| x.contains("square")), "{found:?}");

    let mut v = ko_value();
    v["differentials"][0]["target"] = serde_json::json!("h1^2");
    let found = violations_of(&v);
    assert!(
        found.iter().any(|x| x.contains("bidegree shift")),
        "{found:?}"
    );

    let mut v = ko_value();
    v["presentation"]["relations"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!({"lhs": "h1^2", "rhs": "a*z"}));
    let found = violations_of(&v);
    assert!(
        found.iter().any(|x| x.contains("non-terminating")),
        "{found:?}"
    );
}

#[test]
fn parse_errors() {
    let base = to_json(&builtin("ko-endo").unwrap());
    assert!(from_json(&edit(&base, "\"name\"", "\"nom\"")).is_err());
    assert!(from_json(&edit(&base, "\"permanent\"", "\"extra\": 1, \"permanent\"")).is_err());
    assert!(from_json(&edit(&base, "\"target\": \"h1^3\"", "\"target\": \"q^3\"")).is_err());
    assert!(from_json("{").is_err());
}

#[test]
fn all_builtins_succeed() {
    for name in builtin_names() {
        let out =
            run_scenario(&builtin(name).unwrap(), DEFAULT_MAX_PAGE, &Overrides::new()).unwrap();
        assert!(out.success(), "{name}");
    }
}

#[test]
fn classical_ko_gives_z8() {
    let out = run_scenario(
        &builtin("pic-ko-classical").unwrap(),
        DEFAULT_MAX_PAGE,
        &Overrides::new(),
    )
    .unwrap();
    let b = out.bound.unwrap();
    assert_eq!(b.free_rank_upper, 0);
    assert_eq!(b.torsion_order_upper, 8u32.into());
    match b.conclusion {
        Conclusion::Conclusive(g) => assert_eq!(g.symbol(), "Z/8"),
        other => panic!("{other}"),
    }
}

#[test]
fn wrong_expectation_fails() {
    let mut s = builtin("ko-endo").unwrap();
    s.expected_abutment[3] = c2sseq::scenarios::ExpectedStem::new(3, 0, &[2]);
    let out = run_scenario(&s, DEFAULT_MAX_PAGE, &Overrides::new()).unwrap();
    assert!(!out.success());
    assert!(!out.stem(3).unwrap().verdict.as_ref().unwrap().is_match());
}
