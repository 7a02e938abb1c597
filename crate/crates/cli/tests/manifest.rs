use mgce::{parse_manifest, ManifestError};
use mgce_core::lie::{fixtures, validate_lie, validate_rep, Representation};

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn sl2_fixture_shape() {
    let m = parse_manifest(&fixture("sl2")).unwrap();
    assert_eq!(m.generators.len(), 3);
    assert_eq!(m.bracket.len(), 3);
    assert_eq!(m.lie(), fixtures::sl2());
    let adj = m.representation("adjoint").unwrap();
    assert_eq!(adj.action_entries(), Representation::adjoint(&fixtures::sl2()).action_entries());
}

#[test]
fn fixtures_match_the_library_algebras() {
    let cases = [
        ("aff1", fixtures::aff1()),
        ("heis3", fixtures::heis3()),
        ("trivial_shifted", fixtures::trivial_shifted()),
        ("aff1_ext", fixtures::aff1_contractible_extension()),
        ("abelian_4", fixtures::abelian(4)),
    ];
    for (name, g) in cases {
        let m = parse_manifest(&fixture(name)).unwrap();
        assert_eq!(m.lie(), g, "{name}");
    }
    let m = parse_manifest(&fixture("aff1_x_sl2")).unwrap();
    assert_eq!(m.lie().bracket_entries().len(), fixtures::aff1_x_sl2().bracket_entries().len());
    assert!(validate_lie(&m.lie()).is_ok());
}

#[test]
fn every_fixture_validates() {
    let dir = format!("{}/fixtures", env!("CARGO_MANIFEST_DIR"));
    for entry in std::fs::read_dir(dir).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let m = parse_manifest(&text).unwrap();
        let g = m.lie();
        assert!(validate_lie(&g).is_ok(), "{}", m.name);
        for rep in m.representations.keys() {
            assert!(validate_rep(&g, &m.representation(rep).unwrap()).is_ok(), "{} / {rep}", m.name);
        }
    }
}

#[test]
fn empty_generator_list_is_the_zero_algebra() {
    let m = parse_manifest(r#"{"name": "zero", "generators": []}"#).unwrap();
    assert_eq!(m.lie().dim(), 0);
    assert!(validate_lie(&m.lie()).is_ok());
}

#[test]
fn undeclared_name_in_bracket() {
    let text = r#"{"name": "bad", "generators": [{"name": "x", "degree": 0}, {"name": "y", "degree": 0}],
        "bracket": [{"left": "x", "right": "y", "value": {"x": "1"}},
                    {"left": "x", "right": "w", "value": {"y": "1"}}]}"#;
    match parse_manifest(text) {
        Err(ManifestError::UnknownName { name, context }) => {
            assert_eq!(name, "w");
            assert!(context.contains("bracket entry 1"), "{context}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn duplicates_are_rejected() {
    let gens = r#"{"name": "d", "generators": [{"name": "x", "degree": 0}, {"name": "x", "degree": 1}]}"#;
    assert!(matches!(parse_manifest(gens), Err(ManifestError::DuplicateName { .. })));
    let pair = r#"{"name": "d", "generators": [{"name": "x", "degree": 0}, {"name": "y", "degree": 0}],
        "bracket": [{"left": "x", "right": "y", "value": {}}, {"left": "y", "right": "x", "value": {}}]}"#;
    assert!(matches!(parse_manifest(pair), Err(ManifestError::DuplicateName { .. })));
}

#[test]
fn scalars_must_be_exact() {
    let with = |v: &str| {
        format!(
            r#"{{"name": "q", "generators": [{{"name": "x", "degree": 0}}],
                "representations": {{"r": {{"basis": [{{"name": "v", "degree": 0}}],
                    "action": [{{"generator": "x", "vector": "v", "value": {{"v": {v}}}}}]}}}}}}"#
        )
    };
    for ok in [r#""1/3""#, r#""-2""#, "7", r#""4/6""#] {
        let m = parse_manifest(&with(ok)).unwrap();
        assert!(m.representation("r").is_ok());
    }
    for bad in ["0.5", r#""1/0""#, r#""abc""#, r#""1 /3""#, "null", "true"] {
        assert!(matches!(parse_manifest(&with(bad)), Err(ManifestError::BadRational { .. })), "{bad}");
    }
}

#[test]
fn syntax_errors_carry_a_position() {
    let text = "{\n  \"name\": \"x\",\n  \"generators\": [\n    {\"name\": \"a\" \"degree\": 0}\n  ]\n}";
    match parse_manifest(text) {
        Err(ManifestError::Parse { line, column, .. }) => assert_eq!((line, column), (4, 18)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        parse_manifest(r#"{"name": "x", "generators": [], "colour": 1}"#),
        Err(ManifestError::Parse { .. })
    ));
}

#[test]
fn serialization_round_trips() {
    for name in ["sl2", "aff1", "aff1_ext", "trivial_shifted"] {
        let m = parse_manifest(&fixture(name)).unwrap();
        let once = m.to_json();
        let again = parse_manifest(&once).unwrap();
        assert_eq!(again, m);
        assert_eq!(again.to_json(), once);
    }
}
