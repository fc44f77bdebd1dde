//! Report assembly and rendering.
//!
//! Every command result is a [`Report`]. JSON output is the serde form with a
//! `"report"` tag; text output is a fixed line layout. Both are deterministic.

use std::fmt::Write;

use serde::Serialize;

use crate::bounds::{self, BoundOptions, BoundReport};
use crate::catalog;
use crate::cone::{self, ConeDescription, FaceAverages, FacePolynomial, SimplicialityReport, VertexKinds};
use crate::config::{
    self, enumerate_subsets, max_pair_ratio, AmpleCandidate, Configuration, DistanceMode, NarrowClause,
    NarrowPartsResult, SubsetClassification, SubsetVerdict, SurfaceInvariants,
};
use crate::error::{Error, Result};
use crate::exact::{self, serde_exact, Rational};
use crate::oriented::{
    self, DiagramVerdict, OrientedDiagram, OrientedDistances, OrientedInventory, StepACheck, ThreefoldApplicability,
    ThreefoldFlags,
};
use crate::schema::{Document, Payload};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "report", rename_all = "kebab-case")]
pub enum Report {
    SurfaceClassify(SurfaceClassifyReport),
    DiagramClassify(DiagramClassifyReport),
    Cone(ConeReport),
    Narrow(NarrowReport),
    Bounds(BoundsReport),
    Cy3(Cy3Report),
    CatalogList(CatalogList),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub components: Vec<Vec<usize>>,
    pub connected: bool,
    pub diameter: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub elliptic: usize,
    pub parabolic: usize,
    pub lanner: usize,
    pub hyperbolic_non_minimal: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceClassifyReport {
    pub name: String,
    pub curves: usize,
    pub labels: Vec<String>,
    pub rank: usize,
    pub gram_signature: String,
    pub lattice_signature: String,
    pub invariants: SurfaceInvariants,
    pub graph: GraphStats,
    pub max_subset: usize,
    pub complete: bool,
    pub counts: VerdictCounts,
    pub subsets: Vec<SubsetClassification>,
    pub caveats: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramClassifyReport {
    pub name: String,
    pub rays: usize,
    pub labels: Vec<String>,
    pub divisor_ids: Vec<String>,
    pub step_a: StepACheck,
    pub single_arrows: Vec<(usize, usize)>,
    pub distances: OrientedDistances,
    pub family: DiagramVerdict,
    pub e_set: DiagramVerdict,
    pub inventory: OrientedInventory,
    pub caveats: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub name: String,
    pub rank: usize,
    pub cap: usize,
    pub basis: Vec<usize>,
    pub nef: ConeDescription,
    pub vertex_kinds: VertexKinds,
    pub face_counts: Option<Vec<usize>>,
    pub simpliciality: Option<SimplicialityReport>,
    pub face_polynomial: Option<FacePolynomial>,
    pub face_polynomial_text: Option<String>,
    pub face_averages: Option<FaceAverages>,
    pub notes: Vec<String>,
}

/// Independent re-check of the three clauses for the chosen subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NarrowCertificate {
    pub subset: Vec<usize>,
    pub spanning: bool,
    #[serde(with = "serde_exact::rational")]
    pub max_ratio: Rational,
    #[serde(with = "serde_exact::rational")]
    pub ratio_bound: Rational,
    pub ratio_below_bound: bool,
    pub connected: bool,
    pub failed_clauses: Vec<NarrowClause>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NarrowReport {
    pub name: String,
    pub result: NarrowPartsResult,
    pub certificate: NarrowCertificate,
    pub ample: Option<AmpleCandidate>,
    pub ample_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub name: String,
    #[serde(flatten)]
    pub bound: BoundReport,
    /// Constants named in the boundedness statements that are not known in
    /// closed form; listed, never evaluated.
    pub opaque_constants: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cy3Report {
    pub name: String,
    pub rays: usize,
    pub family: DiagramVerdict,
    pub e_set: DiagramVerdict,
    pub step_a: StepACheck,
    pub single_arrows: Vec<(usize, usize)>,
    pub inventory: OrientedInventory,
    pub flags: ThreefoldFlags,
    pub applicability: ThreefoldApplicability,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntrySummary {
    pub name: String,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogList {
    pub entries: Vec<CatalogEntrySummary>,
}

fn surface_of(doc: &Document) -> Result<&Configuration> {
    doc.surface()
        .ok_or_else(|| Error::Invalid(format!("{}: expected a surface document, got kind {}", doc.name, doc.payload.kind())))
}

fn diagram_of(doc: &Document) -> Result<&OrientedDiagram> {
    doc.diagram()
        .ok_or_else(|| Error::Invalid(format!("{}: expected a cy3 document, got kind {}", doc.name, doc.payload.kind())))
}

pub fn graph_stats(c: &Configuration, mode: DistanceMode) -> GraphStats {
    let g = c.graph();
    let all = g.all_vertices();
    GraphStats {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        components: g.components(&all),
        connected: g.is_connected(&all),
        diameter: g.diameter(&all, mode),
    }
}

pub fn classify_report(doc: &Document, max_subset: usize, mode: DistanceMode) -> Result<Report> {
    match &doc.payload {
        Payload::Surface(c) => Ok(Report::SurfaceClassify(surface_classify(&doc.name, c, max_subset, mode))),
        Payload::Cy3(d) => Ok(Report::DiagramClassify(diagram_classify(&doc.name, d, max_subset)?)),
        Payload::Reference(_) => Err(Error::Invalid(format!("{}: reference tables cannot be classified", doc.name))),
    }
}

fn surface_classify(name: &str, c: &Configuration, max_subset: usize, mode: DistanceMode) -> SurfaceClassifyReport {
    let inv = enumerate_subsets(c, None, max_subset);
    let mut counts = VerdictCounts::default();
    for s in &inv.subsets {
        match s.verdict {
            SubsetVerdict::Elliptic => counts.elliptic += 1,
            SubsetVerdict::Parabolic => counts.parabolic += 1,
            SubsetVerdict::Lanner => counts.lanner += 1,
            SubsetVerdict::HyperbolicNonMinimal => counts.hyperbolic_non_minimal += 1,
        }
    }
    let mut caveats = Vec::new();
    if !inv.complete {
        caveats.push(format!("subsets enumerated only up to size {}: the Lanner inventory may be incomplete", inv.max_size));
    }
    if c.canonical().is_none() {
        caveats.push("no canonical pairings: arithmetic genera unavailable".into());
    }
    SurfaceClassifyReport {
        name: name.to_string(),
        curves: c.len(),
        labels: c.labels().to_vec(),
        rank: c.rank(),
        gram_signature: c.gram_signature().to_string(),
        lattice_signature: c.lattice_signature().to_string(),
        invariants: config::surface_invariants(c),
        graph: graph_stats(c, mode),
        max_subset: inv.max_size,
        complete: inv.complete,
        counts,
        subsets: inv.subsets,
        caveats,
    }
}

fn diagram_classify(name: &str, d: &OrientedDiagram, max_subset: usize) -> Result<DiagramClassifyReport> {
    let step_a = oriented::step_a_check(d);
    let inventory = oriented::oriented_inventory(d, max_subset)?;
    let mut caveats = Vec::new();
    for &(i, j) in &step_a.collisions {
        caveats.push(format!(
            "Step A violation: rays {} and {} share divisor {}",
            d.labels()[i],
            d.labels()[j],
            d.divisor_ids()[i]
        ));
    }
    if !inventory.complete {
        caveats.push(format!("subsets enumerated only up to size {}", inventory.max_size));
    }
    caveats.push(format!("subsets classified by {}", inventory.rule));
    Ok(DiagramClassifyReport {
        name: name.to_string(),
        rays: d.len(),
        labels: d.labels().to_vec(),
        divisor_ids: d.divisor_ids().to_vec(),
        single_arrows: d.single_arrows(),
        distances: oriented::oriented_distance(d),
        family: oriented::recognize_elliptic_family(d),
        e_set: oriented::recognize_e_set(d),
        step_a,
        inventory,
        caveats,
    })
}

/// Nef cone diagnostics; refuses when the rank exceeds `cap`.
pub fn cone_report(doc: &Document, cap: usize) -> Result<Report> {
    let c = surface_of(doc)?;
    let rank = c.rank();
    if rank > cap {
        return Err(Error::DimensionCap { dim: rank, cap });
    }
    let nef = cone::nef_cone(c)?;
    let kinds = cone::vertex_kinds(&nef);
    let mut notes = Vec::new();
    if !kinds.finite_volume {
        notes.push("some rays have v^2 < 0 and lie outside the hyperbolic model".into());
    }
    let (mut face_counts, mut simpliciality, mut poly, mut averages) = (None, None, None, None);
    match cone::face_lattice(&nef, cap) {
        Ok(fl) => {
            face_counts = Some(fl.cone_face_counts());
            simpliciality = Some(cone::simpliciality_report(&fl, &nef));
            poly = Some(cone::face_polynomial(&fl, kinds.all_finite));
            match cone::face_averages(&fl) {
                Ok(a) => averages = Some(a),
                Err(e) => notes.push(format!("face averages skipped: {e}")),
            }
        }
        Err(e) => notes.push(format!("face lattice skipped: {e}")),
    }
    let text = poly.as_ref().map(FacePolynomial::render);
    Ok(Report::Cone(ConeReport {
        name: doc.name.clone(),
        rank,
        cap,
        basis: c.numerical_lattice().basis,
        nef,
        vertex_kinds: kinds,
        face_counts,
        simpliciality,
        face_polynomial: poly,
        face_polynomial_text: text,
        face_averages: averages,
        notes,
    }))
}

/// Recomputes the spanning, ratio and connectivity clauses for `subset`.
pub fn narrow_certificate(c: &Configuration, subset: &[usize]) -> NarrowCertificate {
    let rows: Vec<Vec<Rational>> = c.gram().rational_rows();
    let chosen_rows: Vec<Vec<Rational>> = subset.iter().map(|&i| rows[i].clone()).collect();
    let spanning = !subset.is_empty() && subset.len() == c.rank() && exact::rank(&chosen_rows) == c.rank();
    let max_ratio = if subset.is_empty() { Rational::from_integer(0.into()) } else { max_pair_ratio(c, subset) };
    let ratio_bound = config::ratio_bound();
    let ratio_below_bound = max_ratio < ratio_bound;
    let connected = !subset.is_empty() && c.graph().is_connected(subset);
    let mut failed_clauses = Vec::new();
    if !spanning {
        failed_clauses.push(NarrowClause::Spanning);
    }
    if !ratio_below_bound {
        failed_clauses.push(NarrowClause::RatioBound);
    }
    if !connected {
        failed_clauses.push(NarrowClause::Connected);
    }
    NarrowCertificate {
        subset: subset.to_vec(),
        spanning,
        max_ratio,
        ratio_bound,
        ratio_below_bound,
        connected,
        failed_clauses,
    }
}

pub fn narrow_report(doc: &Document) -> Result<Report> {
    let c = surface_of(doc)?;
    let result = config::narrow_parts_search(c)?;
    let certificate = narrow_certificate(c, &result.chosen);
    let basis = if certificate.spanning { result.chosen.clone() } else { c.numerical_lattice().basis };
    let (ample, ample_error) = match config::build_ample_candidate(c, &basis) {
        Ok(a) => (Some(a), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(Report::Narrow(NarrowReport { name: doc.name.clone(), result, certificate, ample, ample_error }))
}

fn opaque_constants() -> Vec<String> {
    vec![
        "A(n): rho of the minimal resolution of a log del Pezzo surface is below A(maximal index of singularities) (not evaluated)".into(),
        "B(n): rho of the minimal resolution of a log del Pezzo surface is below B(maximal multiplicity of singularities) (not evaluated)".into(),
        "C: rho of the minimal resolution of a log del Pezzo surface is below C/epsilon(X) (not evaluated)".into(),
    ]
}

pub fn bounds_report(doc: &Document, opts: &BoundOptions) -> Result<Report> {
    let bound = match &doc.payload {
        Payload::Surface(c) => bounds::bound_report_surface(c, opts)?,
        Payload::Cy3(d) => oriented::bound_report_cy3(d, opts)?,
        Payload::Reference(_) => return Err(Error::Invalid(format!("{}: reference tables have no bounds", doc.name))),
    };
    Ok(Report::Bounds(BoundsReport { name: doc.name.clone(), bound, opaque_constants: opaque_constants() }))
}

pub fn cy3_report(doc: &Document, max_subset: usize, flags: ThreefoldFlags) -> Result<Report> {
    let d = diagram_of(doc)?;
    Ok(Report::Cy3(Cy3Report {
        name: doc.name.clone(),
        rays: d.len(),
        family: oriented::recognize_elliptic_family(d),
        e_set: oriented::recognize_e_set(d),
        step_a: oriented::step_a_check(d),
        single_arrows: d.single_arrows(),
        inventory: oriented::oriented_inventory(d, max_subset)?,
        flags,
        applicability: oriented::threefold_bound_applicability(flags),
    }))
}

pub fn catalog_list() -> Result<Report> {
    let entries = catalog::catalog_names()
        .into_iter()
        .map(|name| {
            let doc = catalog::load_catalog(&name)?;
            Ok(CatalogEntrySummary { kind: doc.payload.kind().to_string(), name })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::CatalogList(CatalogList { entries }))
}

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn list_of_lists(v: &[Vec<usize>]) -> String {
    let parts: Vec<String> = v.iter().map(|x| list(x)).collect();
    format!("[{}]", parts.join(", "))
}

fn ints(v: &[exact::Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), |x| x.to_string())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn caveats(out: &mut String, items: &[String]) {
    if items.is_empty() {
        return;
    }
    out.push_str("caveats:\n");
    for c in items {
        let _ = writeln!(out, "  - {c}");
    }
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::SurfaceClassify(r) => surface_classify_text(&mut out, r),
        Report::DiagramClassify(r) => diagram_classify_text(&mut out, r),
        Report::Cone(r) => cone_text(&mut out, r),
        Report::Narrow(r) => narrow_text(&mut out, r),
        Report::Bounds(r) => bounds_text(&mut out, r),
        Report::Cy3(r) => cy3_text(&mut out, r),
        Report::CatalogList(r) => {
            out.push_str("catalog entries:\n");
            for e in &r.entries {
                let _ = writeln!(out, "  {:<28} {}", e.name, e.kind);
            }
        }
    }
    out
}

fn surface_classify_text(out: &mut String, r: &SurfaceClassifyReport) {
    let _ = writeln!(out, "classification of {}", r.name);
    let _ = writeln!(out, "curves: {}", r.curves);
    let _ = writeln!(out, "labels: {}", r.labels.join(" "));
    let _ = writeln!(out, "rank (rho): {}", r.rank);
    let _ = writeln!(out, "gram signature (n+,n0,n-): {}", r.gram_signature);
    let _ = writeln!(out, "lattice signature (n+,n0,n-): {}", r.lattice_signature);
    let inv = &r.invariants;
    let _ = writeln!(out, "delta (max -E^2): {}", inv.delta);
    let _ = writeln!(out, "p (max arithmetic genus): {}", opt(&inv.p));
    if let Some(g) = &inv.per_curve_genus {
        let parts: Vec<String> = g.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "arithmetic genera: {}", parts.join(" "));
    }
    let g = &r.graph;
    let _ = writeln!(
        out,
        "graph: {} vertices, {} edges, {} components, connected: {}, diameter: {}",
        g.vertices,
        g.edges,
        g.components.len(),
        yes(g.connected),
        opt(&g.diameter)
    );
    let _ = writeln!(out, "subsets up to size {} (complete: {}):", r.max_subset, yes(r.complete));
    let k = &r.counts;
    let _ = writeln!(
        out,
        "  elliptic {}, parabolic {}, lanner {}, hyperbolic-non-minimal {}",
        k.elliptic, k.parabolic, k.lanner, k.hyperbolic_non_minimal
    );
    let lanner: Vec<&SubsetClassification> = r.subsets.iter().filter(|s| s.verdict == SubsetVerdict::Lanner).collect();
    out.push_str("lanner subsets:\n");
    for s in &lanner {
        let _ = writeln!(out, "  {} connected: {}", list(&s.subset), yes(s.connected));
    }
    out.push_str("all subsets:\n");
    for s in &r.subsets {
        let _ = writeln!(out, "  {} {}", list(&s.subset), s.verdict);
    }
    caveats(out, &r.caveats);
}

fn verdict_line(v: &DiagramVerdict) -> String {
    v.to_string()
}

fn diagram_classify_text(out: &mut String, r: &DiagramClassifyReport) {
    let _ = writeln!(out, "classification of {}", r.name);
    let _ = writeln!(out, "rays: {}", r.rays);
    let _ = writeln!(out, "labels: {}", r.labels.join(" "));
    let _ = writeln!(out, "divisors: {}", r.divisor_ids.join(" "));
    let _ = writeln!(out, "step A (divisors distinct): {}", if r.step_a.injective { "ok" } else { "VIOLATED" });
    let _ = writeln!(out, "single arrows: {}", pairs(&r.single_arrows));
    let dist = &r.distances;
    let _ = writeln!(
        out,
        "oriented diameter: {}, strongly connected: {}, unreachable pairs: {}",
        dist.diameter,
        yes(dist.strongly_connected),
        dist.unreachable.len()
    );
    let _ = writeln!(out, "elliptic family: {}", verdict_line(&r.family));
    let _ = writeln!(out, "e-set pattern: {}", verdict_line(&r.e_set));
    inventory_text(out, &r.inventory);
    caveats(out, &r.caveats);
}

fn pairs(v: &[(usize, usize)]) -> String {
    let parts: Vec<String> = v.iter().map(|(a, b)| format!("{a}->{b}")).collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

fn inventory_text(out: &mut String, inv: &OrientedInventory) {
    let _ = writeln!(
        out,
        "inventory up to size {} (complete: {}, rule: {}):",
        inv.max_size,
        yes(inv.complete),
        inv.rule
    );
    let _ = writeln!(out, "  elliptic subsets ({}): {}", inv.elliptic.len(), list_of_lists(&inv.elliptic));
    let _ = writeln!(out, "  e-sets ({}): {}", inv.e_sets.len(), list_of_lists(&inv.e_sets));
}

fn cone_text(out: &mut String, r: &ConeReport) {
    let _ = writeln!(out, "nef cone of {}", r.name);
    let _ = writeln!(out, "rank: {} (cap {})", r.rank, r.cap);
    let _ = writeln!(out, "basis curves: {}", list(&r.basis));
    let nef = &r.nef;
    let _ = writeln!(out, "lineality dimension: {}", nef.lineality.len());
    let _ = writeln!(out, "redundant curves: {}", list(&nef.redundant_inputs));
    let _ = writeln!(out, "facets (curve indices): {}", list(&nef.sources));
    let _ = writeln!(out, "extreme rays: {}", nef.generators.len());
    for (i, g) in nef.generators.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {} v^2 = {} ({})",
            ints(g),
            r.vertex_kinds.squares[i],
            r.vertex_kinds.kinds[i]
        );
    }
    let _ = writeln!(out, "finite volume: {}", yes(r.vertex_kinds.finite_volume));
    let _ = writeln!(out, "all vertices finite: {}", yes(r.vertex_kinds.all_finite));
    if let Some(f) = &r.face_counts {
        let _ = writeln!(out, "faces by cone dimension: {}", list(f));
    }
    if let Some(s) = &r.simpliciality {
        let _ = writeln!(
            out,
            "simple at vertices: {}, simplicial in edges: {}, acute: {}",
            yes(s.simple_at_vertices),
            yes(s.simplicial_in_edges),
            yes(s.acute)
        );
    }
    if let (Some(p), Some(t)) = (&r.face_polynomial, &r.face_polynomial_text) {
        let _ = writeln!(out, "R(s) = {t}");
        let _ = writeln!(out, "reversible: {}, positive coefficients: {}", yes(p.reversible), yes(p.positive_coeffs));
        if let Some(a) = &p.advisory {
            let _ = writeln!(out, "note: {a}");
        }
    }
    if let Some(a) = &r.face_averages {
        let _ = writeln!(
            out,
            "A02 = {} (bound {}, satisfied: {})",
            exact::format_rational(&a.a02),
            exact::format_rational(&a.a02_bound),
            yes(a.a02_satisfied)
        );
        if let (Some(v), Some(b), Some(ok)) = (&a.a23, &a.a23_bound, a.a23_satisfied) {
            let _ = writeln!(
                out,
                "A23 = {} (bound {}, satisfied: {})",
                exact::format_rational(v),
                exact::format_rational(b),
                yes(ok)
            );
        }
    }
    caveats(out, &r.notes);
}

fn clauses(v: &[NarrowClause]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
}

fn narrow_text(out: &mut String, r: &NarrowReport) {
    let res = &r.result;
    let _ = writeln!(out, "narrow-parts search on {}", r.name);
    let _ = writeln!(out, "rho: {}", res.rho);
    let _ = writeln!(out, "success: {}", yes(res.success));
    let _ = writeln!(out, "chosen subset: {}", list(&res.chosen));
    let _ = writeln!(out, "candidates examined: {}", res.candidates_examined);
    if let Some(w) = &res.warning {
        let _ = writeln!(out, "warning: {w}");
    }
    let c = &r.certificate;
    out.push_str("certificate:\n");
    let _ = writeln!(out, "  spanning: {}", if c.spanning { "ok" } else { "FAILED" });
    let _ = writeln!(
        out,
        "  ratio-bound: max 4(Ei.Ej)^2/(Ei^2 Ej^2) = {} < {}: {}",
        exact::format_rational(&c.max_ratio),
        exact::format_rational(&c.ratio_bound),
        if c.ratio_below_bound { "ok" } else { "FAILED" }
    );
    let _ = writeln!(out, "  connected: {}", if c.connected { "ok" } else { "FAILED" });
    let _ = writeln!(out, "  failed clauses: {}", clauses(&c.failed_clauses));
    match (&r.ample, &r.ample_error) {
        (Some(a), _) => {
            let _ = writeln!(out, "ample candidate H = sum a_i E_i over basis {}", list(&a.basis));
            let _ = writeln!(out, "  coefficients: {}", ints(&a.coefficients));
            let _ = writeln!(out, "  H^2 = {}", a.h_squared);
            let _ = writeln!(out, "  H.E: {}", ints(&a.pairings));
            out.push_str("  (numerical positivity against the listed curves only)\n");
        }
        (None, Some(e)) => {
            let _ = writeln!(out, "ample candidate: none ({e})");
        }
        (None, None) => {}
    }
}

fn bounds_text(out: &mut String, r: &BoundsReport) {
    let b = &r.bound;
    let _ = writeln!(out, "Picard-number bounds for {} ({} mode)", r.name, b.mode);
    let _ = writeln!(out, "rho: {}", opt(&b.rho));
    let _ = writeln!(out, "distance mode: {}", b.distance_mode);
    let _ = writeln!(out, "subsets up to size {} (complete: {})", b.max_subset, yes(b.enumeration_complete));
    let _ = writeln!(out, "{}: {}", b.nonelliptic_source, b.nonelliptic_count);
    let _ = writeln!(out, "elliptic subsets: {}", b.elliptic_count);
    let tag = |o: bool| if o { " (override)" } else { "" };
    let _ = writeln!(out, "d = {}{}", b.d, tag(b.d_overridden));
    let _ = writeln!(out, "C1 = {}{}", exact::format_rational(&b.c1), tag(b.c1_overridden));
    let _ = writeln!(out, "C2 = {}{}", exact::format_rational(&b.c2), tag(b.c2_overridden));
    let _ = writeln!(out, "surface bound 96(C1 + C2/3) + 68 = {}", exact::format_rational(&b.surface_bound));
    let _ = writeln!(out, "threefold bound (16/3)C1 + 4C2 + 6 = {}", exact::format_rational(&b.threefold_bound));
    let consistency = match b.consistent {
        Some(true) => "consistent",
        Some(false) => "INCONSISTENT",
        None => "not checked",
    };
    let _ = writeln!(out, "rho against {} bound: {consistency}", b.mode);
    out.push_str("opaque constants:\n");
    for c in &r.opaque_constants {
        let _ = writeln!(out, "  - {c}");
    }
    caveats(out, &b.caveats);
}

fn cy3_text(out: &mut String, r: &Cy3Report) {
    let _ = writeln!(out, "oriented diagram {}", r.name);
    let _ = writeln!(out, "rays: {}", r.rays);
    let _ = writeln!(out, "elliptic family: {}", verdict_line(&r.family));
    let _ = writeln!(out, "e-set pattern: {}", verdict_line(&r.e_set));
    let _ = writeln!(out, "step A (divisors distinct): {}", if r.step_a.injective { "ok" } else { "VIOLATED" });
    let _ = writeln!(out, "single arrows: {}", pairs(&r.single_arrows));
    inventory_text(out, &r.inventory);
    let f = &r.flags;
    let _ = writeln!(
        out,
        "flags: small ray {}, low Kodaira face {}, nef D with D^3 = 0 {}, cone finite {}",
        yes(f.has_small_ray),
        yes(f.has_low_kodaira_face),
        yes(f.has_nef_d_with_d3_zero),
        yes(f.cone_finite)
    );
    for (what, a) in [("Fano", &r.applicability.fano), ("Calabi-Yau", &r.applicability.calabi_yau)] {
        let _ = writeln!(out, "{what} bound rho <= {}: {}", a.bound, if a.applicable { "applicable" } else { "not applicable" });
        for e in &a.exceptions {
            let _ = writeln!(out, "  exception {e}");
        }
    }
}

/// Expected-properties block of a catalog entry, re-verified.
pub fn verify_expected(doc: &Document) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    let Some(expected) = doc.meta.get("expected") else { return Ok(failures) };
    let mut check = |what: &str, ok: bool| {
        if !ok {
            failures.push(format!("{}: {what} does not match", doc.name));
        }
    };
    match &doc.payload {
        Payload::Surface(c) => {
            let get = |k: &str| expected.get(k);
            if let Some(v) = get("curves") {
                check("curves", v.as_u64() == Some(c.len() as u64));
            }
            if let Some(v) = get("rho") {
                check("rho", v.as_u64() == Some(c.rank() as u64));
            }
            if let Some(v) = get("gram_signature") {
                check("gram_signature", v.as_str() == Some(c.gram_signature().to_string().as_str()));
            }
            if let Some(v) = get("lattice_signature") {
                check("lattice_signature", v.as_str() == Some(c.lattice_signature().to_string().as_str()));
            }
            if let Some(v) = get("connected") {
                check("connected", v.as_bool() == Some(c.graph().is_connected(&c.graph().all_vertices())));
            }
            if let Some(v) = get("black") {
                let black = (0..c.len()).filter(|&i| c.self_intersection(i) == -2).count();
                check("black", v.as_u64() == Some(black as u64));
            }
            if let Some(v) = get("all_genera_zero") {
                let zero = config::arithmetic_genera(c).map(|g| g.iter().all(|&x| x == 0)).unwrap_or(false);
                check("all_genera_zero", v.as_bool() == Some(zero));
            }
        }
        Payload::Cy3(d) => {
            if let Some(f) = catalog::expected_family(doc) {
                let got = oriented::recognize_elliptic_family(d).family().map(|t| t.to_string());
                check("family", got.as_deref() == Some(f.as_str()));
            }
            if let Some(p) = catalog::expected_e_set(doc) {
                let got = match oriented::recognize_e_set(d) {
                    DiagramVerdict::ESet { pattern } => Some(pattern.to_string()),
                    _ => None,
                };
                check("e_set", got.as_deref() == Some(p.as_str()));
            }
        }
        Payload::Reference(rows) => {
            if let Some(v) = expected.get("total_rows") {
                check("total_rows", v.as_u64() == Some(rows.len() as u64));
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_names, load_catalog};
    use crate::schema::parse_document;

    #[test]
    fn bounds_baseline_text() {
        let doc = parse_document(
            r#"{"name": "one", "kind": "surface", "labels": ["E1"], "gram": [[-1]], "canonical": [-1], "meta": {}}"#,
        )
        .unwrap();
        let text = render_text(&bounds_report(&doc, &BoundOptions::default()).unwrap());
        assert!(text.contains("= 68\n"), "{text}");
        assert!(text.contains("= 6\n"), "{text}");
    }

    #[test]
    fn he8_signature_in_classify_text() {
        let doc = load_catalog("HE8~").unwrap();
        let text = render_text(&classify_report(&doc, 2, DistanceMode::Induced).unwrap());
        assert!(text.contains("(1,0,9)"));
    }

    #[test]
    fn narrow_failure_names_clause() {
        let doc = parse_document(
            r#"{"name": "two", "kind": "surface", "labels": ["E1", "E2"], "gram": [[-1, 0], [0, -1]], "meta": {}}"#,
        )
        .unwrap();
        let text = render_text(&narrow_report(&doc).unwrap());
        assert!(text.contains("connected: FAILED"), "{text}");
        assert!(text.contains("failed clauses: diagram is connected"), "{text}");
    }

    #[test]
    fn catalog_expectations_hold() {
        for name in catalog_names() {
            let doc = load_catalog(&name).unwrap();
            assert_eq!(verify_expected(&doc).unwrap(), Vec::<String>::new());
        }
    }

    #[test]
    fn cone_refuses_above_cap() {
        let doc = load_catalog("HE8~").unwrap();
        assert_eq!(cone_report(&doc, 9), Err(Error::DimensionCap { dim: 10, cap: 9 }));
    }
}
