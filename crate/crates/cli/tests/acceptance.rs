//! One line per acceptance criterion. Tolerances and time limits are pinned
//! below; a failing criterion is reported and makes the target fail.

use std::collections::{BTreeSet, VecDeque};
use std::process::Command;
use std::time::{Duration, Instant};

use mori_core::bounds::{surface_rank_bound, threefold_rank_bound};
use mori_core::catalog::{catalog_names, load_catalog};
use mori_core::cone::{dual_cone, face_averages, face_lattice, ConeDescription, FacePolynomial};
use mori_core::config::{arithmetic_genera, classify_subset, narrow_parts_search, Configuration};
use mori_core::exact::{int, primitive, rat, Int, Rational};
use mori_core::lattice::{GramMatrix, Signature};
use mori_core::oracles::{cofactor_determinant, dual_cone_rays_brute, signature_by_descartes, verdict_by_minors};
use mori_core::oriented::{recognize_e_set, recognize_elliptic_family, OrientedDiagram};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BOUND_FORMULA_LIMIT: Duration = Duration::from_millis(1);
const SIGNATURE_LIMIT: Duration = Duration::from_secs(1);
const NARROW_LIMIT: Duration = Duration::from_secs(10);
const CLASSIFY_ORACLE_LIMIT: Duration = Duration::from_secs(30);
const DUAL_CONE_LIMIT: Duration = Duration::from_secs(30);
const RECOGNITION_LIMIT: Duration = Duration::from_secs(5);
const SEED: u64 = 0x6d6f7269;

type Check = Box<dyn Fn() -> Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed<F: FnOnce() -> Outcome>(limit: Duration, f: F) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if elapsed > limit {
        o.pass = false;
    }
    o.detail = format!("{}; {:.3?} (limit {:?})", o.detail, elapsed, limit);
    o
}

fn bound_formulas() -> Outcome {
    let cases = [
        ("surface", 0, 0, rat(68, 1)),
        ("threefold", 0, 0, rat(6, 1)),
        ("surface", 1, 1, rat(196, 1)),
        ("threefold", 3, 3, rat(34, 1)),
    ];
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    let mut parts = Vec::new();
    for (which, c1, c2, expected) in cases {
        let (a, b) = (rat(c1, 1), rat(c2, 1));
        let start = Instant::now();
        let got = if which == "surface" { surface_rank_bound(&a, &b) } else { threefold_rank_bound(&a, &b) }.unwrap();
        slowest = slowest.max(start.elapsed());
        ok &= got == expected;
        parts.push(format!("{which}({c1},{c2}) = {got}"));
    }
    ok &= slowest < BOUND_FORMULA_LIMIT;
    outcome(ok, format!("{}; exact, slowest {:.3?} (limit {:?})", parts.join(", "), slowest, BOUND_FORMULA_LIMIT))
}

fn catalog_signatures() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["HE8~", "HD8~", "HA8~"] {
        let doc = load_catalog(name).unwrap();
        let c = doc.surface().unwrap();
        let full = signature_by_descartes(c.gram());
        let basis = c.numerical_lattice().basis;
        let lattice = signature_by_descartes(&c.gram().principal(&basis));
        let rank = full.rank();
        let genera_zero = arithmetic_genera(c).map(|g| g.iter().all(|&x| x == 0)).unwrap_or(false);
        ok &= lattice == Signature::new(1, 0, 9)
            && c.lattice_signature() == lattice
            && c.gram_signature() == full
            && rank == 10
            && c.rank() == 10
            && genera_zero;
        parts.push(format!("{name}: lattice {lattice}, gram {full}, rank {rank}, p_a = 0: {genera_zero}"));
    }
    outcome(ok, parts.join("; "))
}

fn bfs_connected(c: &Configuration, subset: &[usize]) -> bool {
    let members: BTreeSet<usize> = subset.iter().copied().collect();
    let mut seen = BTreeSet::from([subset[0]]);
    let mut queue = VecDeque::from([subset[0]]);
    while let Some(i) = queue.pop_front() {
        for &j in &members {
            if c.gram().get(i, j) > 0 && i != j && seen.insert(j) {
                queue.push_back(j);
            }
        }
    }
    seen.len() == members.len()
}

fn narrow_certificates() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["HE8~", "HD8~", "HA8~"] {
        let doc = load_catalog(name).unwrap();
        let c = doc.surface().unwrap();
        let r = narrow_parts_search(c).unwrap();
        let chosen = &r.chosen;
        let minor: Vec<Vec<Int>> = chosen.iter().map(|&i| chosen.iter().map(|&j| int(c.gram().get(i, j))).collect()).collect();
        let spanning = chosen.len() == 10 && !cofactor_determinant(&minor).is_zero();
        let mut max_ratio = Rational::zero();
        for (a, &i) in chosen.iter().enumerate() {
            for &j in &chosen[a + 1..] {
                let g = c.gram().get(i, j);
                let ratio = rat(4 * g * g, c.gram().get(i, i) * c.gram().get(j, j));
                max_ratio = max_ratio.max(ratio);
            }
        }
        let ratio_ok = max_ratio < rat(62 * 62, 1) && max_ratio == r.max_ratio;
        let connected = bfs_connected(c, chosen);
        ok &= r.success && spanning && ratio_ok && connected;
        parts.push(format!(
            "{name}: success {}, spanning {spanning}, max ratio {max_ratio} < 3844 {ratio_ok}, connected {connected}",
            r.success
        ));
    }
    outcome(ok, parts.join("; "))
}

fn random_configuration(rng: &mut ChaCha8Rng) -> Configuration {
    let n = rng.gen_range(1..=6);
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        rows[i][i] = rng.gen_range(-4..=-1);
        for j in i + 1..n {
            let v = rng.gen_range(0..=3);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    Configuration::unlabeled(GramMatrix::new(rows).unwrap()).unwrap()
}

fn classification_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut subsets = 0;
    let mut mismatches = 0;
    for _ in 0..200 {
        let c = random_configuration(&mut rng);
        let n = c.len();
        for mask in 1u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            subsets += 1;
            if classify_subset(&c, &s).unwrap().verdict != verdict_by_minors(&c, &s) {
                mismatches += 1;
            }
        }
    }
    outcome(mismatches == 0, format!("200 configurations, {subsets} subsets, {mismatches} mismatches (tolerance 0)"))
}

fn prim_set(v: &[Vec<Int>]) -> BTreeSet<Vec<Int>> {
    v.iter().map(|x| primitive(x.clone())).collect()
}

fn dual_cone_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut compared, mut round_trips, mut failures) = (0, 0, 0);
    for trial in 0..400 {
        let dim = rng.gen_range(1..=4);
        let form = if trial % 2 == 0 {
            GramMatrix::identity(dim)
        } else {
            GramMatrix::new((0..dim).map(|i| (0..dim).map(|j| if i != j { 0 } else if i == 0 { 1 } else { -1 }).collect()).collect())
                .unwrap()
        };
        let count = rng.gen_range(1..=8);
        let normals: Vec<Vec<Int>> =
            (0..count).map(|_| (0..dim).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
        if normals.iter().all(|n| n.iter().all(Zero::is_zero)) {
            continue;
        }
        let nef = dual_cone(&normals, &form).unwrap();
        let Some(brute) = dual_cone_rays_brute(&normals, &form) else {
            failures += usize::from(nef.lineality.is_empty());
            continue;
        };
        compared += 1;
        if prim_set(&nef.generators) != brute.into_iter().collect() {
            failures += 1;
            continue;
        }
        if !nef.generators.is_empty() && nef.dimension() == dim {
            round_trips += 1;
            let back = ConeDescription::from_generators(&nef.generators, &form).unwrap();
            if prim_set(&back.facet_normals) != prim_set(&nef.facet_normals) {
                failures += 1;
            }
        }
    }
    outcome(
        failures == 0 && compared > 100 && round_trips > 50,
        format!("{compared} pointed cones compared up to scaling and order, {round_trips} duality round trips, {failures} failures"),
    )
}

fn cone_from_normals(normals: &[Vec<i64>]) -> ConeDescription {
    let dim = normals[0].len();
    let n: Vec<Vec<Int>> = normals.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
    dual_cone(&n, &GramMatrix::identity(dim)).unwrap()
}

fn face_polynomial_check() -> Outcome {
    let cube = FacePolynomial::from_face_vector(&[int(8), int(12), int(6)]);
    let pyramid = FacePolynomial::from_face_vector(&[int(5), int(8), int(5)]);
    let cube_cone = cone_from_normals(&[
        vec![1, 1, 0, 0],
        vec![1, -1, 0, 0],
        vec![1, 0, 1, 0],
        vec![1, 0, -1, 0],
        vec![1, 0, 0, 1],
        vec![1, 0, 0, -1],
    ]);
    let pyramid_cone =
        cone_from_normals(&[vec![1, 1, 0, -1], vec![1, -1, 0, -1], vec![1, 0, 1, -1], vec![1, 0, -1, -1], vec![0, 0, 0, 1]]);
    let cube_alpha = face_lattice(&cube_cone, 12).unwrap().alpha();
    let pyramid_alpha = face_lattice(&pyramid_cone, 12).unwrap().alpha();
    let ok = cube.render() == "s^3 + 3s^2 + 3s + 1"
        && cube.reversible
        && cube.positive_coeffs
        && !pyramid.reversible
        && cube_alpha == [8, 12, 6]
        && pyramid_alpha == [5, 8, 5];
    outcome(
        ok,
        format!(
            "cube {:?} -> R(s) = {} (reversible {}, positive {}); square pyramid {:?} -> R(s) = {} (reversible {})",
            cube_alpha,
            cube.render(),
            cube.reversible,
            cube.positive_coeffs,
            pyramid_alpha,
            pyramid.render(),
            pyramid.reversible
        ),
    )
}

/// Cone over a product of standard simplices of the given dimensions.
fn simplex_product(parts: &[usize]) -> ConeDescription {
    let dim = 1 + parts.iter().sum::<usize>();
    let mut normals = Vec::new();
    let mut offset = 1;
    for &p in parts {
        for i in 0..p {
            let mut v = vec![0; dim];
            v[offset + i] = 1;
            normals.push(v);
        }
        let mut v = vec![0; dim];
        v[0] = 1;
        for i in 0..p {
            v[offset + i] = -1;
        }
        normals.push(v);
        offset += p;
    }
    cone_from_normals(&normals)
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn face_average_bounds() -> Outcome {
    let mut ok = true;
    let mut checked = Vec::new();
    for n in 3..=6 {
        for parts in partitions(n, n) {
            let cone = simplex_product(&parts);
            let fl = face_lattice(&cone, 12).unwrap();
            let a = face_averages(&fl).unwrap();
            let a23_ok = if n >= 4 { a.a23_satisfied == Some(true) } else { a.a23.is_none() };
            ok &= fl.n() == n && a.a02_satisfied && a.a02 >= rat(3, 1) && a23_ok;
            let shape: Vec<String> = parts.iter().map(|p| format!("D{p}")).collect();
            checked.push(format!("{}: A02 {}{}", shape.join("x"), a.a02, a.a23.map(|x| format!(" A23 {x}")).unwrap_or_default()));
        }
    }
    outcome(ok, format!("{} products, exact; {}", checked.len(), checked.join(", ")))
}

fn e_set_boundary() -> Outcome {
    let d = |w: Vec<Vec<i64>>| {
        OrientedDiagram::from_weights(w.into_iter().map(|r| r.into_iter().map(|x| rat(x, 1)).collect()).collect()).unwrap()
    };
    let pair51 = recognize_e_set(&d(vec![vec![0, 5], vec![1, 0]])).is_e_set();
    let pair22 = recognize_e_set(&d(vec![vec![0, 2], vec![2, 0]])).is_e_set();
    let triangle = recognize_e_set(&d(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]])).is_e_set();
    outcome(pair51 && !pair22 && !triangle, format!("(5,1) e-set {pair51}; (2,2) e-set {pair22}; unit triangle e-set {triangle}"))
}

fn family_recognition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut ok = true;
    let mut names = Vec::new();
    for family in ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "F4", "G2"] {
        let doc = load_catalog(&format!("table1-{family}")).unwrap();
        let d = doc.diagram().unwrap();
        let got = recognize_elliptic_family(d).family().map(|t| t.to_string());
        ok &= got.as_deref() == Some(family);
        let mut perm: Vec<usize> = (0..d.len()).collect();
        let mut stable = 0;
        for _ in 0..100 {
            perm.shuffle(&mut rng);
            let p = d.permuted(&perm).unwrap();
            if recognize_elliptic_family(&p).family().map(|t| t.to_string()) == got {
                stable += 1;
            }
        }
        ok &= stable == 100;
        names.push(format!("{family}->{} ({stable}/100)", got.unwrap_or_default()));
    }
    outcome(ok, names.join(", "))
}

fn mori(args: &[&str], threads: &str) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_mori")).args(args).env("RAYON_NUM_THREADS", threads).output().unwrap()
}

fn k3_table() -> Outcome {
    let out = mori(&["catalog", "k3-counts"], "1");
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = value["rows"].as_array().cloned().unwrap_or_default();
    let counts: Vec<u64> = rows.iter().filter_map(|r| r["count"].as_u64()).collect();
    let labels: Vec<String> = rows.iter().filter_map(|r| r["rho"].as_str().map(str::to_string)).collect();
    let mut expected_labels: Vec<String> = (3..=19).map(|r| r.to_string()).collect();
    expected_labels.push(">=20".into());
    let ok = out.status.success()
        && counts == [27, 17, 10, 10, 9, 12, 10, 9, 4, 4, 3, 3, 1, 1, 1, 1, 1, 0]
        && labels == expected_labels;
    let shown: Vec<String> = counts.iter().map(u64::to_string).collect();
    outcome(ok, format!("rho {}..{}: {}", labels.first().cloned().unwrap_or_default(), labels.last().cloned().unwrap_or_default(), shown.join(",")))
}

fn determinism() -> Outcome {
    let mut runs = 0;
    let mut differing = Vec::new();
    for name in catalog_names() {
        let mut invocations: Vec<Vec<&str>> = vec![vec!["catalog", &name], vec!["export", &name]];
        for cmd in ["classify", "cone", "narrow", "bounds", "cy3"] {
            for format in ["text", "json"] {
                invocations.push(vec![cmd, &name, "--format", format]);
            }
        }
        for args in invocations {
            let a = mori(&args, "1");
            let b = mori(&args, "8");
            runs += 1;
            if a.stdout != b.stdout || a.stderr != b.stderr || a.status.code() != b.status.code() {
                differing.push(args.join(" "));
            }
        }
    }
    outcome(differing.is_empty(), format!("{runs} invocations run twice (1 and 8 threads), {} differ {:?}", differing.len(), differing))
}

fn main() {
    let criteria: Vec<(&str, Check)> = vec![
        ("bound formulas", Box::new(bound_formulas)),
        ("catalog signatures", Box::new(|| timed(SIGNATURE_LIMIT, catalog_signatures))),
        ("narrow-parts certificates", Box::new(|| timed(NARROW_LIMIT, narrow_certificates))),
        ("subset classification oracle", Box::new(|| timed(CLASSIFY_ORACLE_LIMIT, classification_oracle))),
        ("dual cone oracle", Box::new(|| timed(DUAL_CONE_LIMIT, dual_cone_oracle))),
        ("face polynomial", Box::new(face_polynomial_check)),
        ("face-average bounds", Box::new(face_average_bounds)),
        ("E-set boundary", Box::new(e_set_boundary)),
        ("elliptic family recognition", Box::new(|| timed(RECOGNITION_LIMIT, family_recognition))),
        ("K3 reference table", Box::new(k3_table)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
