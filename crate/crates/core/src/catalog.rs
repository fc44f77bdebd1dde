//! Built-in datasets: the three rank-10 surface graphs, the K3 count table,
//! the classical elliptic diagrams and the classical E-set patterns.

use serde_json::{json, Map, Value};

use crate::bounds::reference;
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::lattice::GramMatrix;
use crate::oriented::{DynkinType, ESetPattern, OrientedDiagram};
use crate::schema::{Document, Payload, ReferenceRow};

/// `k` in `C . D(R) = -k` stored for every catalog ray.
pub const CATALOG_SELF_K: i64 = 2;

struct SurfaceGraph {
    name: &'static str,
    curves: usize,
    white: &'static [usize],
    edges: &'static [(usize, usize)],
    gram_signature: &'static str,
}

/// Curves are numbered from 1 as in the drawings.
const SURFACES: [SurfaceGraph; 3] = [
    SurfaceGraph {
        name: "HE8~",
        curves: 10,
        white: &[10],
        edges: &[(10, 9), (9, 8), (8, 7), (7, 6), (6, 5), (5, 4), (4, 3), (3, 2), (4, 1)],
        gram_signature: "(1,0,9)",
    },
    SurfaceGraph {
        name: "HD8~",
        curves: 11,
        white: &[11, 9],
        edges: &[(11, 10), (10, 7), (7, 5), (5, 3), (3, 2), (2, 6), (6, 8), (8, 9), (7, 1), (6, 4)],
        gram_signature: "(1,1,9)",
    },
    SurfaceGraph {
        name: "HA8~",
        curves: 12,
        white: &[10, 11, 12],
        edges: &[
            (4, 1),
            (1, 9),
            (9, 6),
            (6, 7),
            (7, 3),
            (3, 8),
            (8, 5),
            (5, 2),
            (2, 4),
            (12, 1),
            (10, 7),
            (11, 5),
        ],
        gram_signature: "(1,2,9)",
    },
];

const ELLIPTIC: [&str; 17] = [
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B4", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2",
];

const E_SETS: [ESetPattern; 7] = [
    ESetPattern::Pair,
    ESetPattern::Chain3,
    ESetPattern::Triangle3,
    ESetPattern::SquareOneDouble,
    ESetPattern::SquareTwoParallel,
    ESetPattern::SquareTwoCyclic,
    ESetPattern::PentagonOneDouble,
];

/// Every catalog name in listing order.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = SURFACES.iter().map(|s| s.name.to_string()).collect();
    names.push("k3-counts".into());
    names.extend(ELLIPTIC.iter().map(|f| format!("table1-{f}")));
    names.extend(E_SETS.iter().map(|p| format!("eset-{p}")));
    names
}

pub fn load_catalog(name: &str) -> Result<Document> {
    if let Some(s) = SURFACES.iter().find(|s| s.name == name) {
        return Ok(surface_document(s));
    }
    if name == "k3-counts" {
        return Ok(k3_document());
    }
    if let Some(f) = name.strip_prefix("table1-").filter(|f| ELLIPTIC.contains(f)) {
        return Ok(elliptic_document(f));
    }
    if let Some(p) = E_SETS.iter().find(|p| name == format!("eset-{p}")) {
        return Ok(e_set_document(*p));
    }
    Err(Error::UnknownCatalogEntry(name.to_string()))
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("catalog metadata is built from object literals"),
    }
}

fn surface_document(s: &SurfaceGraph) -> Document {
    let n = s.curves;
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = if s.white.contains(&(i + 1)) { -1 } else { -2 };
    }
    for &(a, b) in s.edges {
        rows[a - 1][b - 1] = 1;
        rows[b - 1][a - 1] = 1;
    }
    let canonical: Vec<i64> = (0..n).map(|i| if rows[i][i] == -1 { -1 } else { 0 }).collect();
    let labels = (1..=n).map(|i| format!("E{i}")).collect();
    let gram = GramMatrix::new(rows).expect("catalog matrices are symmetric");
    let config = Configuration::new(labels, gram, Some(canonical)).expect("catalog configurations are valid");
    let meta = object(json!({
        "source": format!("published graph {} of a surface with finite polyhedral Mori cone and rho = 10", s.name),
        "inferred": [
            "black vertices have E^2 = -2 (stated); white vertices are read as E^2 = -1",
            "every drawn edge is read as E_i.E_j = 1",
            "K.E from adjunction with p_a = 0: K.E = 0 for E^2 = -2, K.E = -1 for E^2 = -1"
        ],
        "expected": {
            "curves": n,
            "black": n - s.white.len(),
            "rho": 10,
            "lattice_signature": "(1,0,9)",
            "gram_signature": s.gram_signature,
            "connected": true,
            "all_genera_zero": true
        }
    }));
    Document { name: s.name.to_string(), payload: Payload::Surface(config), meta }
}

fn k3_document() -> Document {
    let rows = reference::k3_rows().into_iter().map(|(rho, count)| ReferenceRow { rho, count }).collect();
    let meta = object(json!({
        "source": "published count of K3 Picard lattices with finite polyhedral Mori cone, by rho",
        "inferred": [],
        "expected": {"total_rows": 18}
    }));
    Document { name: "k3-counts".into(), payload: Payload::Reference(rows), meta }
}

/// Symmetric unit weights on the given edges, with `-k` on the diagonal.
fn unit_weights(m: usize, edges: &[(usize, usize)]) -> Vec<Vec<Rational>> {
    let mut t = vec![vec![exact::rat(0, 1); m]; m];
    for (i, row) in t.iter_mut().enumerate() {
        row[i] = exact::rat(-CATALOG_SELF_K, 1);
    }
    for &(a, b) in edges {
        t[a][b] = exact::rat(1, 1);
        t[b][a] = exact::rat(1, 1);
    }
    t
}

fn chain_edges(m: usize) -> Vec<(usize, usize)> {
    (0..m.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

/// Branch vertex 0 with arms of the given lengths.
fn star_edges(arms: &[usize]) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    let mut next = 1;
    for &a in arms {
        let mut prev = 0;
        for _ in 0..a {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    (next, edges)
}

fn diagram(t: Vec<Vec<Rational>>) -> OrientedDiagram {
    let m = t.len();
    let labels = (1..=m).map(|i| format!("R{i}")).collect();
    let divisors = (1..=m).map(|i| format!("D{i}")).collect();
    OrientedDiagram::new(labels, divisors, t, vec![CATALOG_SELF_K; m], None).expect("catalog diagrams are valid")
}

fn elliptic_document(family: &str) -> Document {
    let (t, reading) = match family {
        "B4" => {
            let mut t = unit_weights(4, &chain_edges(4));
            t[1][0] = exact::rat(2, 1);
            (t, "the 2 under the end arrows is t21 = 2, toward the end ray R1")
        }
        "C4" => {
            let mut t = unit_weights(4, &chain_edges(4));
            t[0][1] = exact::rat(2, 1);
            (t, "the 2 over the end arrows is t12 = 2, away from the end ray R1")
        }
        "F4" => {
            let mut t = unit_weights(4, &chain_edges(4));
            t[1][2] = exact::rat(2, 1);
            (t, "the 2 on the middle arrows is t23 = 2")
        }
        "G2" => {
            let mut t = unit_weights(2, &chain_edges(2));
            t[0][1] = exact::rat(3, 1);
            (t, "the 3 is t12 = 3")
        }
        "D4" | "D5" | "E6" | "E7" | "E8" => {
            let arms: &[usize] = match family {
                "D4" => &[1, 1, 1],
                "D5" => &[1, 1, 2],
                "E6" => &[1, 2, 2],
                "E7" => &[1, 2, 3],
                _ => &[1, 2, 4],
            };
            let (m, edges) = star_edges(arms);
            (unit_weights(m, &edges), "branched shape with all doubled arrows of weight (1,1); R1 is the branch ray")
        }
        a => {
            let m: usize = a[1..].parse().expect("A family size");
            (unit_weights(m, &chain_edges(m)), "chain of doubled arrows of weight (1,1)")
        }
    };
    let meta = object(json!({
        "source": format!("classical elliptic diagram {family} without single arrows"),
        "inferred": [
            "unlabeled doubled arrows are t_ij = t_ji = 1",
            reading,
            format!("self_k = {CATALOG_SELF_K} and t_ii = -self_k for every ray")
        ],
        "expected": {"family": family}
    }));
    Document { name: format!("table1-{family}"), payload: Payload::Cy3(diagram(t)), meta }
}

fn e_set_document(p: ESetPattern) -> Document {
    let set = |t: &mut Vec<Vec<Rational>>, i: usize, j: usize, v: i64| t[i][j] = exact::rat(v, 1);
    let (t, reading) = match p {
        ESetPattern::Pair => {
            let mut t = unit_weights(2, &[(0, 1)]);
            set(&mut t, 0, 1, 5);
            (t, "t12 = 5, t21 = 1 (product 5 > 4)")
        }
        ESetPattern::Chain3 => {
            let mut t = unit_weights(3, &chain_edges(3));
            set(&mut t, 0, 1, 3);
            set(&mut t, 1, 2, 2);
            (t, "t12 = 3, t23 = 2, reverse weights 1 (products 3 + 2 > 4)")
        }
        ESetPattern::Triangle3 => {
            let mut t = unit_weights(3, &[(0, 1), (1, 2), (2, 0)]);
            set(&mut t, 0, 1, 2);
            (t, "t12 = 2, other weights 1 (products 2 + 1 + 1 > 3)")
        }
        ESetPattern::SquareOneDouble | ESetPattern::SquareTwoParallel | ESetPattern::SquareTwoCyclic => {
            // R1 top left, R2 bottom left, R3 top right, R4 bottom right.
            let mut t = unit_weights(4, &[(0, 1), (2, 3), (0, 2), (1, 3)]);
            set(&mut t, 0, 2, 2);
            let reading = match p {
                ESetPattern::SquareOneDouble => "top arrows carry the 2 on the rightward arrow: t13 = 2",
                ESetPattern::SquareTwoParallel => {
                    set(&mut t, 1, 3, 2);
                    "both horizontal pairs carry the 2 on the rightward arrow: t13 = t24 = 2"
                }
                _ => {
                    set(&mut t, 3, 1, 2);
                    "top pair carries the 2 rightward, bottom pair leftward: t13 = t42 = 2"
                }
            };
            (t, reading)
        }
        ESetPattern::PentagonOneDouble => {
            // R1 top left, R2 bottom left, R3 bottom middle, R4 top right, R5 bottom right.
            let mut t = unit_weights(5, &[(0, 1), (1, 2), (2, 4), (3, 4), (0, 3)]);
            set(&mut t, 0, 3, 2);
            (t, "the long top arrows carry the 2 rightward: t14 = 2")
        }
    };
    let meta = object(json!({
        "source": format!("classical E-set pattern {p} without single arrows"),
        "inferred": [
            "unlabeled doubled arrows are t_ij = t_ji = 1",
            reading,
            format!("self_k = {CATALOG_SELF_K} and t_ii = -self_k for every ray")
        ],
        "expected": {"e_set": p.to_string()}
    }));
    Document { name: format!("eset-{p}"), payload: Payload::Cy3(diagram(t)), meta }
}

/// Family expected by a catalog entry, parsed from its metadata.
pub fn expected_family(doc: &Document) -> Option<String> {
    doc.meta.get("expected")?.get("family")?.as_str().map(str::to_string)
}

/// E-set pattern expected by a catalog entry.
pub fn expected_e_set(doc: &Document) -> Option<String> {
    doc.meta.get("expected")?.get("e_set")?.as_str().map(str::to_string)
}

/// Name of a family as printed by the recognizer.
pub fn family_name(t: DynkinType) -> String {
    t.to_string()
}
