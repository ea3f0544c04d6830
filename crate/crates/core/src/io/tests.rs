use super::*;
use crate::mackey::check_axioms;
use crate::sheaf::{mackey_to_sheaf, StalkPolicy, WeylSheaf};

#[test]
fn group_presentations() {
    let cases = [
        (
            r#"{"name": "C3", "presentation": {"kind": "cyclic", "n": 3}}"#,
            3,
        ),
        (r#"{"presentation": {"kind": "dihedral", "n": 4}}"#, 8),
        (r#"{"presentation": {"kind": "symmetric", "n": 3}}"#, 6),
        (
            r#"{"presentation": {"kind": "perm", "degree": 4, "generators": [[1,2,3,0]]}}"#,
            4,
        ),
        (
            r#"{"presentation": {"kind": "cayley", "table": [[0,1],[1,0]]}}"#,
            2,
        ),
    ];
    for (text, order) in cases {
        let f: GroupFile = serde_json::from_str(text).unwrap();
        assert_eq!(f.build().unwrap().order(), order, "{text}");
    }
    let bad: GroupFile =
        serde_json::from_str(r#"{"presentation": {"kind": "cayley", "table": [[0,1],[1,1]]}}"#)
            .unwrap();
    assert!(bad.build().is_err());
    assert!(serde_json::from_str::<GroupFile>(r#"{"presentation": {"kind": "free"}}"#).is_err());
}

#[test]
fn tower_files() {
    let t: TowerRef = serde_json::from_str(r#"{"kind": "p-adic", "p": 2, "depth": 4}"#).unwrap();
    assert_eq!(t.build(384).unwrap().max_depth(), 4);
    let t: TowerRef = serde_json::from_str(r#""s3""#).unwrap();
    assert_eq!(t.build(384).unwrap().level(0).order(), 6);
    let t: TowerRef =
        serde_json::from_str(r#"{"levels": ["c2", "c4"], "maps": [[0,1,0,1]]}"#).unwrap();
    assert_eq!(t.build(384).unwrap().max_depth(), 1);
    let t: TowerRef =
        serde_json::from_str(r#"{"levels": ["c2", "c4"], "maps": [[0,0,0,0]]}"#).unwrap();
    assert!(t.build(384).is_err());
    let t: TowerRef = serde_json::from_str(r#""s4""#).unwrap();
    assert_eq!(
        t.build(10).unwrap_err(),
        Error::GroupTooLarge { order: 24, cap: 10 }
    );
}

#[test]
fn subgroup_names() {
    let t = Tower::from_spec("s3").unwrap();
    let lat = t.lattice(0);
    assert_eq!(parse_subgroup(lat, "0").unwrap(), lat.trivial());
    assert_eq!(parse_subgroup(lat, "{0}").unwrap(), lat.trivial());
    assert_eq!(
        parse_subgroup(lat, &lat.subgroup(lat.top()).to_string()).unwrap(),
        lat.top()
    );
    assert!(parse_subgroup(lat, "99").is_err());
    assert!(parse_subgroup(lat, "x").is_err());
}

#[test]
fn mackey_files_round_trip() {
    for spec in ["c2", "s3", "p-adic:2:2"] {
        let t = Arc::new(Tower::from_spec(spec).unwrap());
        let m = MackeyFunctor::burnside(t.clone(), t.max_depth()).unwrap();
        let f = MackeyFile::from_functor(&m);
        let text = to_json(&f);
        let back: MackeyFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        let m2 = back.build(384).unwrap();
        assert_eq!(m2.dims(), m.dims());
        assert!(check_axioms(&m2).passed());
        assert_eq!(to_json(&MackeyFile::from_functor(&m2)), text);
    }
}

#[test]
fn mackey_file_errors() {
    let t = Arc::new(Tower::from_spec("c2").unwrap());
    let m = MackeyFunctor::constant(t, 0, 1).unwrap();
    let mut f = MackeyFile::from_functor(&m);
    f.maps.remove("C:1");
    assert!(matches!(f.build(384), Err(Error::Invalid(_))));
    let mut f = MackeyFile::from_functor(&m);
    f.maps
        .insert("R:1>0".into(), serde_json::json!([["1/1", "2/1"]]));
    assert!(f.build(384).is_err());
    let mut f = MackeyFile::from_functor(&m);
    f.maps.insert("R:1>0".into(), serde_json::json!([["one"]]));
    assert!(matches!(f.build(384), Err(Error::Parse(_))));
    let mut f = MackeyFile::from_functor(&m);
    f.maps.insert("X:1".into(), serde_json::json!([]));
    assert!(matches!(f.build(384), Err(Error::Parse(_))));
}

#[test]
fn sheaf_files_round_trip() {
    let t = Arc::new(Tower::from_spec("d8").unwrap());
    let m = MackeyFunctor::burnside(t, 0).unwrap();
    let e = mackey_to_sheaf(&m, StalkPolicy::Terminal).unwrap().sheaf;
    let f = SheafFile::from_sheaf(&e);
    let back: SheafFile = serde_json::from_str(&to_json(&f)).unwrap();
    let (e2, sections) = back.build(384).unwrap();
    assert!(sections.is_empty());
    assert_eq!(e2.dims(), e.dims());
    assert!(WeylSheaf::new(e2).is_ok());

    let mut f = f;
    f.sections.push(SectionFile {
        domain: vec!["0".into()],
        germs: vec![vec!["1/2".into()]],
        equivariant_under: Some("0".into()),
    });
    let (_, sections) = f.build(384).unwrap();
    assert_eq!(sections[0].germs[0], vec![rational::frac(1, 2)]);
    f.sections[0].germs[0].push("1".into());
    assert!(f.build(384).is_err());
}
