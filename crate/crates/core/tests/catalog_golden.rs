use mori_core::catalog::{catalog_names, expected_e_set, expected_family, load_catalog};
use mori_core::config::arithmetic_genera;
use mori_core::lattice::Signature;
use mori_core::oracles::signature_by_descartes;
use mori_core::oriented::{recognize_e_set, recognize_elliptic_family, DiagramVerdict};
use mori_core::report::verify_expected;
use mori_core::schema::{parse_document, render_document, Payload};

#[test]
fn expected_blocks_reverify() {
    for name in catalog_names() {
        let doc = load_catalog(&name).unwrap();
        assert!(doc.meta.contains_key("source"), "{name}");
        assert!(doc.meta.contains_key("inferred"), "{name}");
        assert_eq!(verify_expected(&doc).unwrap(), Vec::<String>::new(), "{name}");
    }
}

#[test]
fn round_trip_is_byte_identical() {
    for name in catalog_names() {
        let doc = load_catalog(&name).unwrap();
        let text = render_document(&doc);
        let parsed = parse_document(&text).unwrap();
        assert_eq!(parsed, doc, "{name}");
        assert_eq!(render_document(&parsed), text, "{name}");
    }
}

#[test]
fn surface_signatures_match_oracle() {
    let expected = [("HE8~", 10, Signature::new(1, 0, 9)), ("HD8~", 11, Signature::new(1, 1, 9)), ("HA8~", 12, Signature::new(1, 2, 9))];
    for (name, curves, gram_sig) in expected {
        let doc = load_catalog(name).unwrap();
        let c = doc.surface().unwrap();
        assert_eq!(c.len(), curves);
        assert_eq!(c.gram_signature(), gram_sig, "{name}");
        assert_eq!(signature_by_descartes(c.gram()), gram_sig, "{name}");
        assert_eq!(c.lattice_signature(), Signature::new(1, 0, 9), "{name}");
        let basis = c.numerical_lattice().basis;
        assert_eq!(signature_by_descartes(&c.gram().principal(&basis)), Signature::new(1, 0, 9), "{name}");
        assert_eq!(c.rank(), 10);
        assert!(arithmetic_genera(c).unwrap().iter().all(|&g| g == 0));
        let graph = c.graph();
        assert!(graph.is_connected(&graph.all_vertices()));
    }
}

#[test]
fn he8_shape() {
    let doc = load_catalog("HE8~").unwrap();
    let c = doc.surface().unwrap();
    let black = (0..c.len()).filter(|&i| c.self_intersection(i) == -2).count();
    assert_eq!(black, 9);
    assert_eq!(c.self_intersection(9), -1);
    let degrees: Vec<usize> = (0..c.len()).map(|i| c.graph().neighbors(i).len()).collect();
    assert_eq!(degrees.iter().filter(|&&d| d == 3).count(), 1);
    assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 3);
}

#[test]
fn diagrams_recognized_as_labelled() {
    for name in catalog_names() {
        let doc = load_catalog(&name).unwrap();
        let Payload::Cy3(d) = &doc.payload else { continue };
        if let Some(f) = expected_family(&doc) {
            assert_eq!(recognize_elliptic_family(d).family().unwrap().to_string(), f, "{name}");
        }
        if let Some(p) = expected_e_set(&doc) {
            match recognize_e_set(d) {
                DiagramVerdict::ESet { pattern } => assert_eq!(pattern.to_string(), p, "{name}"),
                other => panic!("{name}: {other}"),
            }
        }
    }
}

#[test]
fn g2_is_a_weight_three_pair() {
    let doc = load_catalog("table1-G2").unwrap();
    let d = doc.diagram().unwrap();
    assert_eq!(d.len(), 2);
    assert_eq!(d.product(0, 1), mori_core::exact::rat(3, 1));
}

#[test]
fn k3_rows() {
    let doc = load_catalog("k3-counts").unwrap();
    let Payload::Reference(rows) = &doc.payload else { panic!() };
    let counts: Vec<u32> = rows.iter().map(|r| r.count).collect();
    assert_eq!(counts, [27, 17, 10, 10, 9, 12, 10, 9, 4, 4, 3, 3, 1, 1, 1, 1, 1, 0]);
    assert_eq!(rows[0].rho, "3");
    assert_eq!(rows[17].rho, ">=20");
}
