//! One function per subcommand. Each returns a [`Report`] or a [`CliError`]
//! carrying the exit code.

use std::path::{Path, PathBuf};

use num_rational::BigRational;
use plumb_core::graph::{random_negdef_graph, random_negdef_multigraph, BlowupRecord};
use plumb_core::invariants::{
    generic_e_z, generic_h1, realize_q, stability_bound, subgraph_genus_spectrum, verify_witness, InvariantsError,
};
use plumb_core::lattice::EcaDimension;
use plumb_core::search::{laufer_minimal_cycle, Certificate, MinChiSearch};
use plumb_core::{
    build_intersection, classify, fixtures, min_chi_oracle, Cycle, GraphError, IntersectionData, MinChiRegion,
    MinChiResult, PlumbingGraph, SearchError,
};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::expr::{self, ExprError};
use crate::format::{parse_graph, serialize_file, FormatError, GraphFile, NamedCycle};
use crate::report::{cycle_json, id_list_json, ids, int_json, rational_json, ratcycle_json, Report};

/// Label attached to every value that is attained by the generic analytic
/// structure rather than computed for a specific one.
pub const GENERIC_LABEL: &str = "generic-structure/topological bound";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("{0}")]
    Expr(#[from] ExprError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 1 for domain errors, 2 for usage, parse and I/O errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Format(e) if e.is_domain_error() => 1,
            CliError::Domain(_) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Format(e) if e.is_domain_error() => "invalid_graph",
            CliError::Format(_) => "parse",
            CliError::Expr(_) | CliError::Usage(_) => "usage",
            CliError::Domain(_) => "domain",
            CliError::Io { .. } => "io",
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::RegionTooLarge { .. } => CliError::Domain(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Disconnected { .. } | GraphError::NotNegativeDefinite { .. } => CliError::Domain(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<InvariantsError> for CliError {
    fn from(e: InvariantsError) -> Self {
        match e {
            InvariantsError::Graph(g) => g.into(),
            InvariantsError::Search(s) => s.into(),
            InvariantsError::QOutOfRange { .. } | InvariantsError::EmptyVertexSet | InvariantsError::NotEffective => {
                CliError::Usage(e.to_string())
            }
            InvariantsError::BudgetExhausted { ref stages } | InvariantsError::NotFound { ref stages } => {
                let trace: Vec<String> = stages.iter().map(|s| format!("{}:{}", s.move_count, s.p_a)).collect();
                CliError::Domain(format!("{e} (stages move_count:p_a = {})", trace.join(" ")))
            }
            _ => CliError::Domain(e.to_string()),
        }
    }
}

/// Flags shared by every command.
#[derive(Clone, Debug)]
pub struct Options {
    pub oracle: bool,
    pub oracle_cap: u128,
    /// Worker threads for the min-χ search; 0 means one per core.
    pub threads: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { oracle: false, oracle_cap: plumb_core::search::ORACLE_CAP, threads: 1 }
    }
}

/// Built-in graphs: `dpp`, `elliptic`, `star-<n>-<N>`, `single-<e>-<g>`,
/// and the ADE names `A<n>`, `D<n>`, `E6`..`E8`.
pub fn builtin(name: &str) -> Option<PlumbingGraph> {
    match name {
        "dpp" => return Some(fixtures::dpp()),
        "elliptic" => return Some(fixtures::elliptic()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("star-") {
        let (n, big_n) = rest.split_once('-')?;
        let (n, big_n): (usize, i64) = (n.parse().ok()?, big_n.parse().ok()?);
        return (n >= 1 && big_n >= 2).then(|| fixtures::star(n, big_n));
    }
    if let Some(rest) = name.strip_prefix("single-") {
        let (e, g) = rest.rsplit_once('-')?;
        let (e, g): (i64, u32) = (e.parse().ok()?, g.parse().ok()?);
        return PlumbingGraph::builder().name(name).vertex("a", e, g).build().ok();
    }
    fixtures::ade(name)
}

/// Reads a graph file; `ex:<name>` names a built-in graph and `-` is stdin.
pub fn load(path: &str) -> Result<GraphFile, CliError> {
    if let Some(name) = path.strip_prefix("ex:") {
        let g = builtin(name).ok_or_else(|| CliError::Usage(format!("unknown built-in graph `{name}`")))?;
        return Ok(GraphFile::new(g));
    }
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|source| CliError::Io { path: "-".into(), source })?
    } else {
        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?
    };
    let mut file = parse_graph(&text)?;
    if file.graph.name().is_none() {
        let stem = Path::new(path).file_stem().and_then(|s| s.to_str()).unwrap_or("unnamed");
        file.graph = file.graph.clone().with_name(stem);
    }
    Ok(file)
}

fn lattice(g: &PlumbingGraph) -> Result<IntersectionData, CliError> {
    build_intersection(g).map_err(|e| CliError::Domain(e.to_string()))
}

/// Min-χ search with the top coordinate's range split across threads.
pub fn parallel_min_chi(
    lat: &IntersectionData,
    region: &MinChiRegion,
    threads: usize,
) -> Result<MinChiResult, CliError> {
    let search = MinChiSearch::new(lat, region)?;
    if threads == 1 {
        return Ok(search.run());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    let acc = pool.install(|| {
        search
            .branches()
            .into_par_iter()
            .map(|b| search.run_branch(b))
            .reduce(|| search.accumulator(), |a, b| a.merge(b))
    });
    Ok(search.finish(acc))
}

fn volume(c: &Cycle) -> u128 {
    c.coeffs().iter().fold(1u128, |acc, &b| acc.saturating_mul(b as u128 + 1))
}

/// Re-runs the minimization exhaustively on a box that holds every minimizer.
fn oracle_check(
    g: &PlumbingGraph,
    lat: &IntersectionData,
    r: &MinChiResult,
    opts: &Options,
) -> Result<Value, CliError> {
    let bound = r.certificate.minimizer_bound();
    let o = min_chi_oracle(lat, bound, opts.oracle_cap)
        .map_err(|e| CliError::Domain(format!("oracle: {e} (raise --oracle-cap)")))?;
    let agree = o.minimum == r.minimum
        && o.min_minimizer == r.min_minimizer
        && o.max_minimizer == r.max_minimizer
        && o.minimizer_count == r.minimizer_count;
    if !agree {
        return Err(CliError::Domain(format!(
            "oracle disagrees with the pruned search: oracle minimum {}, search minimum {}",
            o.minimum, r.minimum
        )));
    }
    Ok(json!({"box": cycle_json(g, bound), "points": volume(bound).to_string(), "minimum": o.minimum}))
}

fn certificate_json(g: &PlumbingGraph, c: &Certificate) -> Value {
    match c {
        Certificate::Ellipsoid { seed_value, center, radius_sq, bound, minimizer_bound, order } => json!({
            "kind": "ellipsoid",
            "seed_value": seed_value,
            "center": ratcycle_json(g, center),
            "radius_sq": rational_json(radius_sq),
            "bound": cycle_json(g, bound),
            "minimizer_bound": cycle_json(g, minimizer_bound),
            "order": id_list_json(g, order),
        }),
        Certificate::Exhaustive { bound, volume } => json!({
            "kind": "exhaustive",
            "bound": cycle_json(g, bound),
            "volume": volume.to_string(),
        }),
    }
}

pub fn validate(file: &GraphFile) -> Result<Report, CliError> {
    let g = &file.graph;
    let lat = lattice(g)?;
    let pivots: Vec<Value> = lat.pivots().iter().map(rational_json).collect();
    let payload = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "negative_definite": true,
        "pivots": pivots,
        "determinant": int_json(lat.determinant()),
        "discriminant_order": int_json(&lat.discriminant_order()),
        "qhs_link": plumb_core::invariants::qhs_link(g),
        "cycles": file.cycles.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(),
    });
    Ok(Report::new("validate", Some(g), payload))
}

pub fn invariants(file: &GraphFile, opts: &Options) -> Result<Report, CliError> {
    let g = &file.graph;
    let r = classify(g)?;
    let mut oracle = Value::Null;
    if opts.oracle {
        let lat = lattice(g)?;
        let search = parallel_min_chi(&lat, &MinChiRegion::Unbounded, opts.threads)?;
        oracle = oracle_check(g, &lat, &search, opts)?;
    }
    let payload = json!({
        "min_chi_unbounded": r.min_chi_unbounded,
        "p_a": r.p_a,
        "verdict": r.verdict.as_str(),
        "reduction_bound": r.reduction_bound,
        "qhs_link": r.qhs_link,
        "discriminant_order": int_json(&r.discriminant_order),
        "z_min": cycle_json(g, &r.z_min),
        "chi_z_min": r.chi_z_min,
        "oracle": oracle,
        "label": GENERIC_LABEL,
    });
    let mut report = Report::new("invariants", Some(g), payload);
    report.oracle_checked = opts.oracle;
    report.notes.push(
        "p_a is the smallest geometric genus over analytic structures on this graph; a specific \
         singularity (e.g. a hypersurface) may have larger p_g"
            .into(),
    );
    if g.name() == Some("dpp") {
        report.notes.push(
            "the hypersurface z^3+x^13+y^13+x^2y^2 with this graph has analytic p_g = 5; \
             p_a = 2 is the generic-structure value"
                .into(),
        );
    }
    Ok(report)
}

pub fn minchi(
    file: &GraphFile,
    box_expr: Option<&str>,
    witness: bool,
    count: bool,
    opts: &Options,
) -> Result<Report, CliError> {
    let g = &file.graph;
    let lat = lattice(g)?;
    let region = match box_expr {
        Some(e) => MinChiRegion::Box(expr::eval_integral(e, file, &lat)?),
        None => MinChiRegion::Unbounded,
    };
    let r = parallel_min_chi(&lat, &region, opts.threads)?;
    let oracle = if opts.oracle { oracle_check(g, &lat, &r, opts)? } else { Value::Null };
    let (kind, boxed) = match &region {
        MinChiRegion::Unbounded => ("unbounded", Value::Null),
        MinChiRegion::Box(z) => ("box", cycle_json(g, z)),
    };
    let payload = json!({
        "region": kind,
        "box": boxed,
        "minimum": r.minimum,
        "min_minimizer": if witness { cycle_json(g, &r.min_minimizer) } else { Value::Null },
        "max_minimizer": if witness { cycle_json(g, &r.max_minimizer) } else { Value::Null },
        "minimizer_count": if count { json!(r.minimizer_count) } else { Value::Null },
        "meet_closed": r.meet_closed,
        "join_closed": r.join_closed,
        "certificate": certificate_json(g, &r.certificate),
        "oracle": oracle,
    });
    let mut report = Report::new("minchi", Some(g), payload);
    report.oracle_checked = opts.oracle;
    Ok(report)
}

pub fn laufer(file: &GraphFile) -> Result<Report, CliError> {
    let g = &file.graph;
    let lat = lattice(g)?;
    let trace = laufer_minimal_cycle(&lat);
    let steps: Vec<Value> =
        trace.steps.iter().map(|s| json!({"vertex": g.id(s.vertex).as_str(), "pairing": s.pairing})).collect();
    let payload = json!({
        "z_min": cycle_json(g, &trace.result),
        "chi_z_min": lat.chi_int(&trace.result),
        "steps": steps,
    });
    Ok(Report::new("laufer", Some(g), payload))
}

pub fn zk(file: &GraphFile) -> Result<Report, CliError> {
    let g = &file.graph;
    let lat = lattice(g)?;
    let z = lat.canonical_cycle();
    let k2 = lat.pairing(z, z).map_err(|e| CliError::Domain(e.to_string()))?;
    let payload = json!({
        "z_k": ratcycle_json(g, z),
        "floor": cycle_json(g, &z.floor()),
        "integral": z.is_integral(),
        "k_squared": rational_json(&k2),
    });
    Ok(Report::new("zk", Some(g), payload))
}

pub fn dual(file: &GraphFile, vertex: &str) -> Result<Report, CliError> {
    let g = &file.graph;
    let v = g.index_of(vertex).ok_or_else(|| CliError::Usage(format!("unknown vertex `{vertex}`")))?;
    let lat = lattice(g)?;
    let payload = json!({"vertex": vertex, "dual": ratcycle_json(g, lat.dual(v))});
    Ok(Report::new("dual", Some(g), payload))
}

pub fn chi(file: &GraphFile, cycle: &str) -> Result<Report, CliError> {
    let g = &file.graph;
    let lat = lattice(g)?;
    let l = expr::eval(cycle, file, &lat)?;
    let value = lat.chi(&l).map_err(|e| CliError::Usage(e.to_string()))?;
    let payload = json!({"cycle": ratcycle_json(g, &l), "chi": rational_json(&value)});
    Ok(Report::new("chi", Some(g), payload))
}

pub fn support(file: &GraphFile, cycle: &str) -> Result<Report, CliError> {
    let g = &file.graph;
    let lat = lattice(g)?;
    let l = expr::eval(cycle, file, &lat)?;
    let s = lat.estar_support(&l).map_err(|e| CliError::Usage(e.to_string()))?;
    let coefficients = plumb_core::RatCycle::new(s.coefficients.clone());
    let payload = json!({
        "cycle": ratcycle_json(g, &l),
        "coefficients": ratcycle_json(g, &coefficients),
        "support": id_list_json(g, &s.support),
        "in_dual_lattice": s.in_dual_lattice,
        "in_lipman_cone": lat.is_in_lipman_cone(&l),
    });
    Ok(Report::new("support", Some(g), payload))
}

pub fn ecadim(file: &GraphFile, l: &str, z: &str) -> Result<Report, CliError> {
    let g = &file.graph;
    let lat = lattice(g)?;
    let lv = expr::eval(l, file, &lat)?;
    let zv = expr::eval_integral(z, file, &lat)?;
    let dim = lat.eca_dimension(&lv, &zv).map_err(|e| CliError::Usage(e.to_string()))?;
    let (empty, dimension) = match &dim {
        EcaDimension::Empty => (true, Value::Null),
        EcaDimension::Dimension(d) => (false, rational_json(d)),
    };
    let payload = json!({
        "l": ratcycle_json(g, &lv),
        "z": cycle_json(g, &zv),
        "empty": empty,
        "dimension": dimension,
    });
    Ok(Report::new("ecadim", Some(g), payload))
}

/// A single graph transformation.
#[derive(Clone, Debug)]
pub enum Transform {
    BlowupVertex { vertex: String, times: usize },
    BlowupEdge { u: String, w: String },
    Subgraph { kept: Vec<String> },
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn record_json(r: &BlowupRecord) -> Value {
    json!({"kind": r.kind.to_string(), "new_vertex": r.new_vertex.as_str()})
}

pub fn transform(file: &GraphFile, op: &Transform, out: &Path) -> Result<Report, CliError> {
    let g = &file.graph;
    match op {
        Transform::BlowupVertex { .. } | Transform::BlowupEdge { .. } => {
            let (h, records, pullback) = match op {
                Transform::BlowupVertex { vertex, times } => {
                    let seq = g.blow_up_sequence_at(vertex, *times)?;
                    (seq.graph, seq.records, seq.pullback)
                }
                Transform::BlowupEdge { u, w } => {
                    let (h, rec) = g.blow_up_edge(u, w)?;
                    let pb = rec.pullback.clone();
                    (h, vec![rec], pb)
                }
                Transform::Subgraph { .. } => unreachable!(),
            };
            let cycles: Vec<NamedCycle> = file
                .cycles
                .iter()
                .map(|c| NamedCycle { name: c.name.clone(), cycle: pullback.apply(&c.cycle) })
                .collect();
            let out_file = GraphFile { graph: h, cycles };
            write_file(out, &serialize_file(&out_file))?;
            let h = &out_file.graph;
            let pullbacks: serde_json::Map<String, Value> =
                out_file.cycles.iter().map(|c| (c.name.clone(), cycle_json(h, &c.cycle))).collect();
            let payload = json!({
                "operation": if matches!(op, Transform::BlowupEdge { .. }) { "blowup_edge" } else { "blowup_vertex" },
                "records": records.iter().map(record_json).collect::<Vec<_>>(),
                "outputs": [out.display().to_string()],
                "vertices": h.vertex_count(),
                "edges": h.edge_count(),
                "pullbacks": pullbacks,
            });
            let mut report = Report::new("transform", Some(g), payload);
            report.id_lists.push(ids(h));
            report.dot_graph = Some(h.clone());
            Ok(report)
        }
        Transform::Subgraph { kept } => {
            let sub = g.full_subgraph(kept)?;
            let comps = sub.components();
            let graphs = sub.component_graphs()?;
            let mut components = Vec::new();
            let mut outputs = Vec::new();
            for (i, (comp, cg)) in comps.iter().zip(&graphs).enumerate() {
                let path = PathBuf::from(format!("{}.c{i}", out.display()));
                let cycles = file
                    .cycles
                    .iter()
                    .map(|c| NamedCycle { name: c.name.clone(), cycle: c.cycle.restrict(comp) })
                    .collect();
                write_file(&path, &serialize_file(&GraphFile { graph: cg.clone(), cycles }))?;
                outputs.push(path.display().to_string());
                components.push(json!({"path": path.display().to_string(), "vertices": id_list_json(g, comp)}));
            }
            let payload = json!({
                "operation": "subgraph",
                "kept": id_list_json(g, sub.kept()),
                "outputs": outputs,
                "components": components,
            });
            Ok(Report::new("transform", Some(g), payload))
        }
    }
}

fn vertex_list(g: &PlumbingGraph, names: &[String]) -> Result<Vec<usize>, CliError> {
    names.iter().map(|n| g.index_of(n).ok_or_else(|| CliError::Usage(format!("unknown vertex `{n}`")))).collect()
}

pub fn bounds(file: &GraphFile, z: &str, vertices: Option<&[String]>) -> Result<Report, CliError> {
    let g = &file.graph;
    let lat = lattice(g)?;
    let zc = expr::eval_integral(z, file, &lat)?;
    let stab = stability_bound(g, &zc)?;
    let h1 = generic_h1(g, &zc)?;
    let per_component: Vec<Value> = h1
        .per_component
        .iter()
        .map(|c| json!({"vertices": id_list_json(g, &c.vertices), "min_chi": c.min_chi, "value": c.value}))
        .collect();
    let e_z = match vertices {
        Some(names) => {
            let vs = vertex_list(g, names)?;
            json!({"vertices": id_list_json(g, &vs), "value": generic_e_z(g, &zc, &vs)?, "label": "generic-structure value"})
        }
        None => Value::Null,
    };
    let payload = json!({
        "z": cycle_json(g, &zc),
        "stability_bound": {"minimum": stab.minimum, "bound": stab.bound},
        "generic_h1": {"value": h1.value, "per_component": per_component},
        "generic_e_z": e_z,
        "label": GENERIC_LABEL,
    });
    Ok(Report::new("bounds", Some(g), payload))
}

pub fn spectrum(
    file: &GraphFile,
    max_blowups: usize,
    realize: Option<i64>,
    budget: usize,
    cap: u64,
) -> Result<Report, CliError> {
    let g = &file.graph;
    let s = subgraph_genus_spectrum(g, max_blowups, cap)?;
    let values: Vec<Value> = s
        .values
        .iter()
        .map(|(p, e)| {
            json!({
                "p_a": p,
                "moves": e.moves.iter().map(|m| m.kind.to_string()).collect::<Vec<_>>(),
                "kept": e.kept.iter().map(|v| v.as_str()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let realized = match realize {
        Some(q) => {
            let w = realize_q(g, q, budget)?;
            let stages: Vec<Value> = w
                .stages
                .iter()
                .map(|st| {
                    json!({
                        "move_count": st.move_count,
                        "p_a": st.p_a,
                        "kept": st.kept.iter().map(|v| v.as_str()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({
                "target_q": w.target_q,
                "moves": w.moves.iter().map(|m| m.kind.to_string()).collect::<Vec<_>>(),
                "kept": w.kept.iter().map(|v| v.as_str()).collect::<Vec<_>>(),
                "stages": stages,
                "verified": verify_witness(g, &w)?,
            })
        }
        None => Value::Null,
    };
    let payload = json!({
        "max_blowups": max_blowups,
        "values": values,
        "subsets_examined": s.subsets_examined,
        "partial": s.partial,
        "realize": realized,
        "label": GENERIC_LABEL,
    });
    Ok(Report::new("spectrum", Some(g), payload))
}

fn graph_text_report(command: &'static str, g: PlumbingGraph) -> Report {
    let text = serialize_file(&GraphFile::new(g.clone()));
    let payload = json!({"vertices": g.vertex_count(), "edges": g.edge_count(), "text": text});
    let mut report = Report::new(command, Some(&g), payload);
    report.raw_text = Some(text);
    report
}

/// `example dpp`, `example star --n 2 --N 20`, `example E8`, ...
pub fn example(name: &str, n: Option<usize>, big_n: Option<i64>) -> Result<Report, CliError> {
    let g = match name {
        "star" => {
            let (n, big_n) = (n.unwrap_or(2), big_n.unwrap_or(20));
            builtin(&format!("star-{n}-{big_n}"))
        }
        other => builtin(other),
    };
    let g = g.ok_or_else(|| CliError::Usage(format!("unknown example `{name}`")))?;
    Ok(graph_text_report("example", g))
}

/// A seeded random negative-definite graph.
pub fn gen(seed: u64, vertices: usize, multi: bool) -> Result<Report, CliError> {
    if vertices == 0 {
        return Err(CliError::Usage("--vertices must be at least 1".into()));
    }
    let g = if multi { random_negdef_multigraph(seed, vertices) } else { random_negdef_graph(seed, vertices) };
    Ok(graph_text_report("gen", g))
}

/// Parses `u,w` or `v1,v2,...`.
pub fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(str::to_owned).collect()
}

/// Rational helper for callers that need exact parsing of `p/q`.
pub fn rational(s: &str) -> Result<BigRational, CliError> {
    Ok(expr::parse_rational(s)?)
}
