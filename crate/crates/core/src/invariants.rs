//! Topological invariants built on the min-χ engine: arithmetic genus,
//! rational/elliptic classification, bounds on normal reduction numbers and
//! stability indices, generic-structure `h¹` and `e_Z`, and the subgraph
//! genus spectrum.
//!
//! Values named `generic_*` are the extremal values attained by the generic
//! analytic structure on the graph, not the `h¹` of any particular structure.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use thiserror::Error;

use crate::cycle::Cycle;
use crate::graph::{components_of, BlowupRecord, GraphError, PlumbingGraph, VertexData, VertexId};
use crate::lattice::{build_intersection, LatticeError};
use crate::search::{laufer_minimal_cycle, min_chi, MinChiRegion, SearchError};

/// Default cap on vertex subsets examined by subgraph enumeration.
pub const SUBSET_CAP: u64 = 1 << 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("rationality certificates disagree: min χ = {min_chi}, χ(Z_min) = {chi_z_min}")]
    CertificateMismatch { min_chi: i64, chi_z_min: i64 },
    #[error("graph is not a QHS link (needs a tree with all genera zero)")]
    NotQhsLink,
    #[error("target {q} outside [0, {p_a}]")]
    QOutOfRange { q: i64, p_a: i64 },
    #[error("move budget exhausted after {} stages", .stages.len())]
    BudgetExhausted { stages: Vec<Stage> },
    #[error("no witness found after {} stages", .stages.len())]
    NotFound { stages: Vec<Stage> },
    #[error("subgraph enumeration needs {needed} subsets, above the cap of {cap}")]
    SizeCapExceeded { needed: u64, cap: u64 },
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("cycle has a negative coefficient")]
    NotEffective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Rational,
    Elliptic,
    General,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Rational => "rational",
            Verdict::Elliptic => "elliptic",
            Verdict::General => "general",
        }
    }

    fn from_min_chi(m: i64) -> Verdict {
        match m {
            1 => Verdict::Rational,
            0 => Verdict::Elliptic,
            _ => Verdict::General,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub min_chi_unbounded: i64,
    /// Arithmetic genus `1 - min χ`.
    pub p_a: i64,
    pub verdict: Verdict,
    /// `2 - min χ`, an upper bound for the normal reduction number.
    pub reduction_bound: i64,
    pub qhs_link: bool,
    pub discriminant_order: BigInt,
    pub z_min: Cycle,
    pub chi_z_min: i64,
}

/// Arithmetic genus and both rationality certificates.
pub fn classify(g: &PlumbingGraph) -> Result<ClassificationReport, InvariantsError> {
    let lat = build_intersection(g)?;
    let min = min_chi(&lat, &MinChiRegion::Unbounded)?.minimum;
    let z_min = laufer_minimal_cycle(&lat).result;
    let chi_z_min = lat.chi_int(&z_min);
    if (min == 1) != (chi_z_min == 1) {
        return Err(InvariantsError::CertificateMismatch { min_chi: min, chi_z_min });
    }
    Ok(ClassificationReport {
        min_chi_unbounded: min,
        p_a: 1 - min,
        verdict: Verdict::from_min_chi(min),
        reduction_bound: 2 - min,
        qhs_link: qhs_link(g),
        discriminant_order: lat.discriminant_order(),
        z_min,
        chi_z_min,
    })
}

/// `1 - min_{l>0} χ(l)`.
pub fn arithmetic_genus(g: &PlumbingGraph) -> Result<i64, InvariantsError> {
    let lat = build_intersection(g)?;
    Ok(1 - min_chi(&lat, &MinChiRegion::Unbounded)?.minimum)
}

/// `2 - min_{l>0} χ(l)`.
pub fn reduction_number_bound(g: &PlumbingGraph) -> Result<i64, InvariantsError> {
    Ok(1 + arithmetic_genus(g)?)
}

/// A tree with every genus zero.
pub fn qhs_link(g: &PlumbingGraph) -> bool {
    g.edge_count() + 1 == g.vertex_count()
        && !g.has_multi_edges()
        && (0..g.vertex_count()).all(|v| g.genus(v) == 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityBound {
    pub z: Cycle,
    /// `min_{0<l≤Z} χ(l)`.
    pub minimum: i64,
    /// `1 - minimum`.
    pub bound: i64,
}

/// `1 - min_{0<l≤Z} χ(l)`: from this power on, `h¹(Z, L^n)` and the
/// Abel-map image dimension for `n·l'` are constant.
pub fn stability_bound(g: &PlumbingGraph, z: &Cycle) -> Result<StabilityBound, InvariantsError> {
    let lat = build_intersection(g)?;
    let minimum = min_chi(&lat, &MinChiRegion::Box(z.clone()))?.minimum;
    Ok(StabilityBound { z: z.clone(), minimum, bound: 1 - minimum })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentH1 {
    /// Vertex indices of the component in the ambient graph.
    pub vertices: Vec<usize>,
    pub min_chi: i64,
    pub value: i64,
}

/// Smallest `h¹(O_Z)` over analytic structures, per component of `|Z|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericH1 {
    pub z: Cycle,
    pub value: i64,
    pub per_component: Vec<ComponentH1>,
}

/// Sum over connected components `C` of `|Z|` of `1 - min_{0<l≤Z|_C} χ(l)`.
pub fn generic_h1(g: &PlumbingGraph, z: &Cycle) -> Result<GenericH1, InvariantsError> {
    if z.len() != g.vertex_count() {
        return Err(SearchError::DimensionMismatch { expected: g.vertex_count(), got: z.len() }.into());
    }
    if !z.is_nonnegative() {
        return Err(InvariantsError::NotEffective);
    }
    let mut per_component = Vec::new();
    for comp in components_of(g, &z.support()) {
        let sub = g.induced_graph(&comp)?;
        let lat = build_intersection(&sub)?;
        let min = min_chi(&lat, &MinChiRegion::Box(z.restrict(&comp)))?.minimum;
        per_component.push(ComponentH1 { vertices: comp, min_chi: min, value: 1 - min });
    }
    let value = per_component.iter().map(|c| c.value).sum();
    Ok(GenericH1 { z: z.clone(), value, per_component })
}

/// `e_Z(I) = h¹(O_Z) - h¹(O_{Z|V∖I})` with generic-structure values for both terms.
pub fn generic_e_z(g: &PlumbingGraph, z: &Cycle, vertices: &[usize]) -> Result<i64, InvariantsError> {
    if vertices.is_empty() {
        return Err(InvariantsError::EmptyVertexSet);
    }
    let full = generic_h1(g, z)?.value;
    let rest = generic_h1(g, &z.zeroed_on(vertices))?.value;
    Ok(full - rest)
}

/// Values of [`stability_bound`] on `k·Z_min` for `k = 1, 2, 4, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityProfile {
    pub z_min: Cycle,
    /// `(k, bound)` pairs in the order computed.
    pub values: Vec<(i64, i64)>,
    /// The bound once it stopped changing.
    pub stable_value: i64,
    /// Smallest computed `k` from which the value was constant.
    pub k0: i64,
}

/// Doubles `k` until the bound on `k·Z_min` has repeated twice.
pub fn stability_profile(g: &PlumbingGraph, max_doublings: u32) -> Result<StabilityProfile, InvariantsError> {
    let lat = build_intersection(g)?;
    let z_min = laufer_minimal_cycle(&lat).result;
    let mut values: Vec<(i64, i64)> = Vec::new();
    let mut k = 1i64;
    for _ in 0..=max_doublings {
        let min = min_chi(&lat, &MinChiRegion::Box(z_min.scaled(k)))?.minimum;
        values.push((k, 1 - min));
        let n = values.len();
        if n >= 3 && values[n - 1].1 == values[n - 2].1 && values[n - 2].1 == values[n - 3].1 {
            break;
        }
        k *= 2;
    }
    let stable_value = values.last().expect("at least one value").1;
    let k0 = values.iter().rev().take_while(|&&(_, b)| b == stable_value).last().expect("nonempty").0;
    Ok(StabilityProfile { z_min, values, stable_value, k0 })
}

/// One witness for a value in the genus spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub moves: Vec<BlowupRecord>,
    pub kept: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusSpectrum {
    /// Arithmetic genus → first witness found.
    pub values: BTreeMap<i64, SpectrumEntry>,
    pub subsets_examined: u64,
    /// Set when the cap stopped the enumeration early.
    pub partial: bool,
}

type SubgraphKey = (Vec<VertexData>, Vec<(usize, usize)>);

/// Memoized arithmetic genus of induced subgraphs, keyed by their shape.
#[derive(Default)]
struct GenusCache(BTreeMap<SubgraphKey, i64>);

impl GenusCache {
    fn p_a(&mut self, g: &PlumbingGraph, kept: &[usize]) -> Result<i64, InvariantsError> {
        let sub = g.induced_graph(kept)?;
        let mut edges: Vec<(usize, usize)> = sub.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        let key = ((0..sub.vertex_count()).map(|v| sub.vertex(v)).collect(), edges);
        if let Some(&p) = self.0.get(&key) {
            return Ok(p);
        }
        let p = arithmetic_genus(&sub)?;
        self.0.insert(key, p);
        Ok(p)
    }
}

fn indices_of(mask: u64, pool: &[usize]) -> Vec<usize> {
    pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
}

/// Arithmetic genera of connected full subgraphs of `g` and of graphs
/// reachable from it by at most `max_blowups` generic vertex blow-ups.
pub fn subgraph_genus_spectrum(
    g: &PlumbingGraph,
    max_blowups: usize,
    cap: u64,
) -> Result<GenusSpectrum, InvariantsError> {
    let base = 1u64.checked_shl(g.vertex_count() as u32).unwrap_or(u64::MAX);
    if g.vertex_count() >= 64 || base - 1 > cap {
        return Err(InvariantsError::SizeCapExceeded { needed: base.saturating_sub(1), cap });
    }
    let mut cache = GenusCache::default();
    let mut values = BTreeMap::new();
    let mut examined = 0u64;
    let mut partial = false;
    let mut frontier: Vec<(PlumbingGraph, Vec<BlowupRecord>)> = vec![(g.clone(), Vec::new())];
    'levels: for depth in 0..=max_blowups {
        for (graph, moves) in &frontier {
            let n = graph.vertex_count();
            let pool: Vec<usize> = (0..n).collect();
            for mask in 1..(1u64 << n) {
                if examined >= cap {
                    partial = true;
                    break 'levels;
                }
                examined += 1;
                let kept = indices_of(mask, &pool);
                if components_of(graph, &kept).len() != 1 {
                    continue;
                }
                let p = cache.p_a(graph, &kept)?;
                values.entry(p).or_insert_with(|| SpectrumEntry {
                    moves: moves.clone(),
                    kept: kept.iter().map(|&v| graph.id(v).clone()).collect(),
                });
            }
        }
        if depth == max_blowups {
            break;
        }
        let mut next = Vec::new();
        for (graph, moves) in &frontier {
            for v in graph.ids() {
                let (h, rec) = graph.blow_up_vertex(v.as_str())?;
                let mut m = moves.clone();
                m.push(rec);
                next.push((h, m));
            }
        }
        frontier = next;
    }
    Ok(GenusSpectrum { values, subsets_examined: examined, partial })
}

/// One stage of [`realize_q`]: the kept subgraph after `move_count` blow-ups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub move_count: usize,
    pub kept: Vec<VertexId>,
    pub graph: PlumbingGraph,
    pub p_a: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumWitness {
    pub target_q: i64,
    pub moves: Vec<BlowupRecord>,
    pub kept: Vec<VertexId>,
    pub stages: Vec<Stage>,
    /// The blown-up graph containing the final subgraph.
    pub ambient: PlumbingGraph,
}

fn ids_of(g: &PlumbingGraph, kept: &[usize]) -> Vec<VertexId> {
    kept.iter().map(|&v| g.id(v).clone()).collect()
}

fn stage(g: &PlumbingGraph, kept: &[usize], move_count: usize, p_a: i64) -> Result<Stage, InvariantsError> {
    Ok(Stage { move_count, kept: ids_of(g, kept), graph: g.induced_graph(kept)?, p_a })
}

/// Searches for a connected full subgraph with arithmetic genus `q`, using
/// blow-ups along a high-multiplicity vertex of the minimal χ-minimizer and
/// dropping the last exceptional curve.
///
/// Every stage is re-verified with the min-χ engine; a move is taken only
/// if it lowers `p_a` without passing `q`. When no such move exists the
/// connected full subgraphs of the current stage are searched directly.
pub fn realize_q(g: &PlumbingGraph, q: i64, budget: usize) -> Result<SpectrumWitness, InvariantsError> {
    if !qhs_link(g) {
        return Err(InvariantsError::NotQhsLink);
    }
    let mut cache = GenusCache::default();
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let p_a = cache.p_a(g, &all)?;
    if q < 0 || q > p_a {
        return Err(InvariantsError::QOutOfRange { q, p_a });
    }

    let mut ambient = g.clone();
    let mut kept = all;
    let mut current = p_a;
    let mut moves: Vec<BlowupRecord> = Vec::new();
    let mut stages = vec![stage(&ambient, &kept, 0, p_a)?];

    while current != q {
        if stages.len() > budget {
            return Err(InvariantsError::BudgetExhausted { stages });
        }
        let sub = ambient.induced_graph(&kept)?;
        let lat = build_intersection(&sub)?;
        let zcoh = min_chi(&lat, &MinChiRegion::Unbounded)?.min_minimizer;

        let mut advanced = false;
        for (i, &u) in kept.iter().enumerate() {
            let m = zcoh[i];
            if m < 2 {
                continue;
            }
            let seq = ambient.blow_up_sequence_at(ambient.id(u).as_str(), (m - 1) as usize)?;
            let mut next_kept = kept.clone();
            let new: Vec<usize> = seq.records.iter().map(|r| seq.graph.require(r.new_vertex.as_str())).collect::<Result<_, _>>()?;
            next_kept.extend(&new[..new.len() - 1]);
            next_kept.sort_unstable();
            let p = cache.p_a(&seq.graph, &next_kept)?;
            if p >= q && p < current {
                moves.extend(seq.records);
                ambient = seq.graph;
                kept = next_kept;
                current = p;
                stages.push(stage(&ambient, &kept, moves.len(), p)?);
                advanced = true;
                break;
            }
        }
        if advanced {
            continue;
        }

        // No admissible move: look for a connected full subgraph directly.
        let width = kept.len().min(63);
        let limit = (1u64 << width).min(SUBSET_CAP);
        for mask in 1..limit {
            let sub_kept = indices_of(mask, &kept);
            if components_of(&ambient, &sub_kept).len() != 1 {
                continue;
            }
            if cache.p_a(&ambient, &sub_kept)? == q {
                kept = sub_kept;
                current = q;
                stages.push(stage(&ambient, &kept, moves.len(), q)?);
                break;
            }
        }
        if current != q {
            return Err(InvariantsError::NotFound { stages });
        }
    }

    Ok(SpectrumWitness { target_q: q, moves, kept: ids_of(&ambient, &kept), stages, ambient })
}

/// Replays the moves of `w` on `g` and recomputes every stage's `p_a`.
pub fn verify_witness(g: &PlumbingGraph, w: &SpectrumWitness) -> Result<bool, InvariantsError> {
    let mut graph = g.clone();
    let mut applied = 0;
    for st in &w.stages {
        while applied < st.move_count {
            graph = graph.apply(&w.moves[applied].kind)?.0;
            applied += 1;
        }
        let sub = graph.full_subgraph(&st.kept)?;
        let induced = graph.induced_graph(sub.kept())?;
        if induced != st.graph || arithmetic_genus(&induced)? != st.p_a {
            return Ok(false);
        }
    }
    while applied < w.moves.len() {
        graph = graph.apply(&w.moves[applied].kind)?.0;
        applied += 1;
    }
    let last = w.stages.last().expect("at least the initial stage");
    Ok(graph == w.ambient && last.kept == w.kept && last.p_a == w.target_q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn a2_is_rational() {
        let r = classify(&fixtures::a_n(2)).unwrap();
        assert_eq!(r.verdict, Verdict::Rational);
        assert_eq!((r.p_a, r.reduction_bound), (0, 1));
        assert!(r.qhs_link);
        assert_eq!(r.discriminant_order, BigInt::from(3));
    }

    #[test]
    fn elliptic_vertex() {
        let r = classify(&fixtures::elliptic()).unwrap();
        assert_eq!(r.verdict, Verdict::Elliptic);
        assert_eq!((r.min_chi_unbounded, r.p_a, r.reduction_bound), (0, 1, 2));
        assert!(!r.qhs_link);
    }

    #[test]
    fn qhs_examples() {
        assert!(qhs_link(&fixtures::a_n(2)));
        assert!(!qhs_link(&fixtures::elliptic()));
        let double = PlumbingGraph::builder()
            .vertex("a", -3, 0)
            .vertex("b", -3, 0)
            .edge("a", "b")
            .edge("a", "b")
            .build()
            .unwrap();
        assert!(!qhs_link(&double));
    }

    #[test]
    fn stability_bound_small() {
        let g = fixtures::single(-2, 0);
        assert_eq!(stability_bound(&g, &Cycle::new(vec![1])).unwrap().bound, 0);
        let g = fixtures::d_n(5);
        let z = laufer_minimal_cycle(&build_intersection(&g).unwrap()).result;
        assert_eq!(stability_bound(&g, &z).unwrap().bound, 0);
        assert!(matches!(
            stability_bound(&g, &Cycle::zero(5)),
            Err(InvariantsError::Search(SearchError::EmptyRegion))
        ));
    }

    #[test]
    fn generic_h1_zero_cycle() {
        let g = fixtures::dpp();
        let h = generic_h1(&g, &Cycle::zero(10)).unwrap();
        assert_eq!(h.value, 0);
        assert!(h.per_component.is_empty());
    }

    #[test]
    fn e_z_on_all_vertices_is_h1() {
        let g = fixtures::elliptic();
        let z = Cycle::new(vec![4]);
        assert_eq!(generic_e_z(&g, &z, &[0]).unwrap(), generic_h1(&g, &z).unwrap().value);
        assert_eq!(generic_e_z(&g, &z, &[]), Err(InvariantsError::EmptyVertexSet));
    }

    #[test]
    fn spectrum_small_cases() {
        let s = subgraph_genus_spectrum(&fixtures::a_n(2), 0, SUBSET_CAP).unwrap();
        assert_eq!(s.values.keys().copied().collect::<Vec<_>>(), vec![0]);
        let s = subgraph_genus_spectrum(&fixtures::elliptic(), 0, SUBSET_CAP).unwrap();
        assert_eq!(s.values.keys().copied().collect::<Vec<_>>(), vec![1]);
        assert!(matches!(
            subgraph_genus_spectrum(&fixtures::a_n(20), 0, SUBSET_CAP),
            Err(InvariantsError::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn realize_trivial_target() {
        let g = fixtures::dpp();
        let w = realize_q(&g, 2, 10).unwrap();
        assert!(w.moves.is_empty());
        assert_eq!(w.kept.len(), 10);
        assert!(verify_witness(&g, &w).unwrap());
    }

    #[test]
    fn realize_rejects_bad_inputs() {
        assert_eq!(realize_q(&fixtures::elliptic(), 0, 5).unwrap_err(), InvariantsError::NotQhsLink);
        assert_eq!(
            realize_q(&fixtures::dpp(), 3, 5).unwrap_err(),
            InvariantsError::QOutOfRange { q: 3, p_a: 2 }
        );
    }
}
