//! Artin's minimal cycle and certified minimization of `χ` over effective cycles.
//!
//! For integral `l`, `2χ(l) = lᵀQl + Σ l_v (e_v + 2 - 2g_v)` with `Q = -I`
//! positive definite. Completing the square around `c = Z_K/2`,
//!
//! ```text
//! 2χ(l) = (l - c)ᵀ Q (l - c) - cᵀQc
//! ```
//!
//! so every cycle with `χ(l) ≤ c₀` lies in an ellipsoid. Taking
//! `c₀ = min_v χ(E_v)` bounds every minimizer; the per-coordinate extent of
//! the ellipsoid is `c_v + sqrt(T · (Q⁻¹)_vv)` with `T = 2c₀ + cᵀQc`, which
//! gives the finite search box. Inside it a Fincke–Pohst style depth-first
//! search over the `LDLᵀ` factorization of `Q` prunes every partial
//! assignment whose completed square already exceeds the current best.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cycle::{ceil_rational, floor_rational, sqrt_upper, Cycle, RatCycle};
use crate::lattice::{ldl, IntersectionData};

/// Default cap on the number of lattice points visited by [`min_chi_oracle`].
pub const ORACLE_CAP: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search region is empty (box cycle is zero)")]
    EmptyRegion,
    #[error("box cycle has a negative coefficient")]
    NotEffective,
    #[error("cycle has {got} coefficients, lattice has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("region has {volume} points, above the cap of {cap}")]
    RegionTooLarge { volume: u128, cap: u128 },
}

/// Where `χ` is minimized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinChiRegion {
    /// All `l ∈ L` with `l > 0`.
    Unbounded,
    /// All `l` with `0 < l ≤ Z`.
    Box(Cycle),
}

/// How the reported minimum was certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Branch-and-bound inside the ellipsoid `{2χ ≤ 2·seed_value}`.
    Ellipsoid {
        /// `min χ(E_v)` over vertices allowed by the region.
        seed_value: i64,
        /// `Z_K / 2`.
        center: RatCycle,
        /// `T = 2·seed_value + cᵀQc`.
        radius_sq: BigRational,
        /// Per-vertex upper bound `B_v` (clamped by the box, if any).
        bound: Cycle,
        /// Per-vertex bound of the smaller ellipsoid `{χ ≤ minimum}`; it
        /// contains every minimizer, so an exhaustive search over it
        /// re-certifies the minimum.
        minimizer_bound: Cycle,
        /// Vertex enumeration order, outermost first.
        order: Vec<usize>,
    },
    /// Plain enumeration of every point of a box.
    Exhaustive { bound: Cycle, volume: u128 },
}

impl Certificate {
    pub fn bound(&self) -> &Cycle {
        match self {
            Certificate::Ellipsoid { bound, .. } | Certificate::Exhaustive { bound, .. } => bound,
        }
    }

    /// A box containing every minimizer.
    pub fn minimizer_bound(&self) -> &Cycle {
        match self {
            Certificate::Ellipsoid { minimizer_bound, .. } => minimizer_bound,
            Certificate::Exhaustive { bound, .. } => bound,
        }
    }
}

/// Certified minimum of `χ` over a region, with its extreme minimizers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinChiResult {
    pub minimum: i64,
    /// Lattice-minimal minimizer: the meet of all minimizers when that meet
    /// lies in the region, otherwise the minimizer of least degree
    /// (ties broken toward earlier vertices).
    pub min_minimizer: Cycle,
    /// Lattice-maximal minimizer: the join of all minimizers when that join
    /// is itself a minimizer, otherwise the minimizer of greatest degree above
    /// `min_minimizer`.
    pub max_minimizer: Cycle,
    pub minimizer_count: u64,
    /// `min_minimizer` is the meet of all minimizers.
    pub meet_closed: bool,
    /// `max_minimizer` is the join of all minimizers.
    pub join_closed: bool,
    pub certificate: Certificate,
}

/// Accumulates every cycle attaining the smallest value seen so far.
///
/// Merging is associative and commutative, so partial searches may be
/// combined in any order.
#[derive(Clone, Debug)]
pub struct MinimizerSet {
    best: i64,
    members: Vec<Cycle>,
}

impl MinimizerSet {
    /// A set that only accepts values `≤ ceiling`.
    pub fn with_ceiling(ceiling: i64) -> Self {
        MinimizerSet { best: ceiling, members: Vec::new() }
    }

    pub fn best(&self) -> i64 {
        self.best
    }

    pub fn members(&self) -> &[Cycle] {
        &self.members
    }

    pub fn offer(&mut self, l: &Cycle, value: i64) {
        match value.cmp(&self.best) {
            core::cmp::Ordering::Less => {
                self.best = value;
                self.members.clear();
                self.members.push(l.clone());
            }
            core::cmp::Ordering::Equal => self.members.push(l.clone()),
            core::cmp::Ordering::Greater => {}
        }
    }

    pub fn merge(mut self, other: MinimizerSet) -> MinimizerSet {
        match self.best.cmp(&other.best) {
            core::cmp::Ordering::Less => self,
            core::cmp::Ordering::Greater => other,
            core::cmp::Ordering::Equal => {
                self.members.extend(other.members);
                self
            }
        }
    }

    /// Extracts the extreme minimizers. `None` if nothing was found.
    pub fn finish(mut self, certificate: Certificate) -> Option<MinChiResult> {
        if self.members.is_empty() {
            return None;
        }
        self.members.sort_by(Cycle::canonical_cmp);
        self.members.dedup();
        let members = self.members;

        let meet = members[1..].iter().fold(members[0].clone(), |a, b| a.meet(b));
        let meet_closed = !meet.is_zero() && members.binary_search_by(|m| m.canonical_cmp(&meet)).is_ok();
        let min_minimizer = if meet_closed { meet } else { members[0].clone() };

        let join = members[1..].iter().fold(members[0].clone(), |a, b| a.join(b));
        let join_closed = members.binary_search_by(|m| m.canonical_cmp(&join)).is_ok();
        let max_minimizer = if join_closed {
            join
        } else {
            members
                .iter()
                .rev()
                .find(|m| min_minimizer.le(m))
                .cloned()
                .unwrap_or_else(|| min_minimizer.clone())
        };

        Some(MinChiResult {
            minimum: self.best,
            min_minimizer,
            max_minimizer,
            minimizer_count: members.len() as u64,
            meet_closed,
            join_closed,
            certificate,
        })
    }
}

fn check_box(lat: &IntersectionData, z: &Cycle) -> Result<(), SearchError> {
    if z.len() != lat.rank() {
        return Err(SearchError::DimensionMismatch { expected: lat.rank(), got: z.len() });
    }
    if !z.is_nonnegative() {
        return Err(SearchError::NotEffective);
    }
    if z.is_zero() {
        return Err(SearchError::EmptyRegion);
    }
    Ok(())
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Per-coordinate integer bounds of `{l ≥ 0 : (l - c)ᵀQ(l - c) ≤ radius_sq}`,
/// clamped to the region: `B_v = ⌊c_v + sqrt(radius_sq · (Q⁻¹)_vv)⌋`.
fn level_box(
    lat: &IntersectionData,
    center: &RatCycle,
    radius_sq: &BigRational,
    region: &MinChiRegion,
    allowed: &[bool],
) -> Cycle {
    let bound = (0..lat.rank())
        .map(|v| {
            if !allowed[v] {
                return 0;
            }
            let qinv_vv = -&lat.inverse()[v][v];
            let reach = sqrt_upper(&(radius_sq * &qinv_vv));
            let b = floor_rational(&(&center[v] + reach)).to_i64().expect("bound fits i64").max(0);
            match region {
                MinChiRegion::Unbounded => b,
                MinChiRegion::Box(z) => b.min(z[v]),
            }
        })
        .collect();
    Cycle::new(bound)
}

/// Branch-and-bound minimization of `χ` over a region.
#[derive(Clone, Debug)]
pub struct MinChiSearch<'a> {
    lat: &'a IntersectionData,
    /// `order[pos]` is the vertex at position `pos`; the search fixes the
    /// highest position first.
    order: Vec<usize>,
    /// Unit lower-triangular factor of the permuted `Q`.
    lfac: Vec<Vec<BigRational>>,
    /// Positive pivots of the permuted `Q`.
    pivots: Vec<BigRational>,
    center: Vec<BigRational>,
    cap: Vec<i64>,
    /// `cᵀQc`.
    qc: BigRational,
    seed: i64,
    certificate: Certificate,
}

impl<'a> MinChiSearch<'a> {
    pub fn new(lat: &'a IntersectionData, region: &MinChiRegion) -> Result<Self, SearchError> {
        let n = lat.rank();
        let allowed: Vec<bool> = match region {
            MinChiRegion::Unbounded => vec![true; n],
            MinChiRegion::Box(z) => {
                check_box(lat, z)?;
                z.coeffs().iter().map(|&c| c > 0).collect()
            }
        };
        let seed = (0..n)
            .filter(|&v| allowed[v])
            .map(|v| 1 - i64::from(lat.genus(v)))
            .min()
            .expect("region contains a basis cycle");

        let center_cycle = lat.canonical_cycle().scaled(&BigRational::new(1.into(), 2.into()));
        let qc = -lat.pairing(&center_cycle, &center_cycle).expect("same rank");
        let radius_sq = int(2 * seed) + &qc;

        let bound = level_box(lat, &center_cycle, &radius_sq, region, &allowed);

        // Stiffest coordinates (largest |e_v|) are enumerated first.
        let mut enum_order: Vec<usize> = (0..n).collect();
        enum_order.sort_by(|&a, &b| lat.euler(b).abs().cmp(&lat.euler(a).abs()).then(a.cmp(&b)));
        let order: Vec<usize> = enum_order.iter().rev().copied().collect();

        let permuted: Vec<Vec<BigRational>> = order
            .iter()
            .map(|&a| order.iter().map(|&b| int(lat.matrix()[a][b])).collect())
            .collect();
        let (lfac, d) = ldl(&permuted).expect("lattice is negative definite");
        let pivots = d.into_iter().map(|x| -x).collect();

        let pcenter = order.iter().map(|&v| center_cycle[v].clone()).collect();
        let cap = order.iter().map(|&v| bound[v]).collect();

        Ok(MinChiSearch {
            lat,
            order,
            lfac,
            pivots,
            center: pcenter,
            cap,
            qc,
            seed,
            certificate: Certificate::Ellipsoid {
                seed_value: seed,
                center: center_cycle,
                radius_sq,
                minimizer_bound: bound.clone(),
                bound,
                order: enum_order,
            },
        })
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn seed_value(&self) -> i64 {
        self.seed
    }

    /// An empty accumulator with the search's initial ceiling.
    pub fn accumulator(&self) -> MinimizerSet {
        MinimizerSet::with_ceiling(self.seed)
    }

    fn budget(&self, best: i64) -> BigRational {
        int(2 * best) + &self.qc
    }

    /// Admissible integer range at `pos`, given the fixed higher positions.
    fn range(&self, pos: usize, shift: &BigRational, remaining: &BigRational) -> Option<(i64, i64)> {
        if remaining.is_negative() {
            return None;
        }
        let reach = sqrt_upper(&(remaining / &self.pivots[pos]));
        let lo = ceil_rational(&(shift - &reach)).to_i64()?.max(0);
        let hi = floor_rational(&(shift + &reach)).to_i64()?.min(self.cap[pos]);
        (lo <= hi).then_some((lo, hi))
    }

    /// `Σ_{j>pos} L[j][pos] · y_j`.
    fn offset(&self, pos: usize, y: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        #[allow(clippy::needless_range_loop)]
        for j in (pos + 1)..self.order.len() {
            let f = &self.lfac[j][pos];
            if !f.is_zero() && !y[j].is_zero() {
                s += f * &y[j];
            }
        }
        s
    }

    /// Values of the outermost coordinate that can lead to a minimizer.
    /// Each can be searched independently with [`MinChiSearch::run_branch`].
    pub fn branches(&self) -> Vec<i64> {
        let top = self.order.len() - 1;
        let shift = self.center[top].clone();
        match self.range(top, &shift, &self.budget(self.seed)) {
            Some((lo, hi)) => (lo..=hi).collect(),
            None => Vec::new(),
        }
    }

    /// Searches the subtree where the outermost coordinate equals `value`.
    pub fn run_branch(&self, value: i64) -> MinimizerSet {
        let mut acc = self.accumulator();
        let n = self.order.len();
        let mut y = vec![BigRational::zero(); n];
        let mut l = vec![0i64; n];
        self.visit(n - 1, value, &BigRational::zero(), &mut y, &mut l, &mut acc);
        acc
    }

    /// Full sequential search.
    pub fn run(&self) -> MinChiResult {
        let n = self.order.len();
        let mut acc = self.accumulator();
        let mut y = vec![BigRational::zero(); n];
        let mut l = vec![0i64; n];
        for value in self.branches() {
            self.visit(n - 1, value, &BigRational::zero(), &mut y, &mut l, &mut acc);
        }
        self.finish(acc)
    }

    pub fn finish(&self, acc: MinimizerSet) -> MinChiResult {
        let mut certificate = self.certificate.clone();
        if let Certificate::Ellipsoid { center, minimizer_bound, bound, .. } = &mut certificate {
            let level = int(2 * acc.best()) + &self.qc;
            let allowed: Vec<bool> = bound.coeffs().iter().map(|&b| b > 0).collect();
            let region = MinChiRegion::Box(bound.clone());
            *minimizer_bound = level_box(self.lat, center, &level, &region, &allowed);
        }
        acc.finish(certificate).expect("the seed basis cycle lies inside the ellipsoid")
    }

    /// Fix position `pos` to `value` and continue below it.
    fn visit(
        &self,
        pos: usize,
        value: i64,
        partial: &BigRational,
        y: &mut [BigRational],
        l: &mut [i64],
        acc: &mut MinimizerSet,
    ) {
        let shift = &self.center[pos] - self.offset(pos, y);
        let t = int(value) - &shift;
        let partial = partial + &self.pivots[pos] * &t * &t;
        if partial > self.budget(acc.best()) {
            return;
        }
        y[pos] = int(value) - &self.center[pos];
        l[pos] = value;
        if pos == 0 {
            self.leaf(l, acc);
        } else {
            self.descend(pos - 1, &partial, y, l, acc);
        }
        y[pos] = BigRational::zero();
        l[pos] = 0;
    }

    fn descend(&self, pos: usize, partial: &BigRational, y: &mut [BigRational], l: &mut [i64], acc: &mut MinimizerSet) {
        let shift = &self.center[pos] - self.offset(pos, y);
        let Some((lo, hi)) = self.range(pos, &shift, &(self.budget(acc.best()) - partial)) else {
            return;
        };
        for value in lo..=hi {
            let t = int(value) - &shift;
            let next = partial + &self.pivots[pos] * &t * &t;
            if next > self.budget(acc.best()) {
                continue;
            }
            y[pos] = t.clone() + &shift - &self.center[pos];
            l[pos] = value;
            if pos == 0 {
                self.leaf(l, acc);
            } else {
                self.descend(pos - 1, &next, y, l, acc);
            }
        }
        y[pos] = BigRational::zero();
        l[pos] = 0;
    }

    fn leaf(&self, l: &[i64], acc: &mut MinimizerSet) {
        if l.iter().all(|&x| x == 0) {
            return;
        }
        let mut coeffs = vec![0i64; l.len()];
        for (pos, &v) in self.order.iter().enumerate() {
            coeffs[v] = l[pos];
        }
        let cycle = Cycle::new(coeffs);
        let value = self.lat.chi_int(&cycle);
        acc.offer(&cycle, value);
    }
}

/// Exact minimum of `χ` over `region`.
pub fn min_chi(lat: &IntersectionData, region: &MinChiRegion) -> Result<MinChiResult, SearchError> {
    Ok(MinChiSearch::new(lat, region)?.run())
}

/// The extreme minimizers `(min_minimizer, max_minimizer)` of `χ` over `region`.
pub fn chi_minimizer_lattice(lat: &IntersectionData, region: &MinChiRegion) -> Result<(Cycle, Cycle), SearchError> {
    let r = min_chi(lat, region)?;
    Ok((r.min_minimizer, r.max_minimizer))
}

/// Brute-force minimum of `χ` over `0 < l ≤ bound`, visiting every point.
///
/// Values are updated incrementally with `χ(l + E_v) = χ(l) + χ(E_v) - (l, E_v)`.
pub fn min_chi_oracle(lat: &IntersectionData, bound: &Cycle, cap: u128) -> Result<MinChiResult, SearchError> {
    check_box(lat, bound)?;
    let n = lat.rank();
    let volume = bound
        .coeffs()
        .iter()
        .try_fold(1u128, |acc, &b| acc.checked_mul(b as u128 + 1))
        .unwrap_or(u128::MAX);
    if volume > cap {
        return Err(SearchError::RegionTooLarge { volume, cap });
    }
    let chi_basis: Vec<i64> = (0..n).map(|v| 1 - i64::from(lat.genus(v))).collect();
    // Sparse columns of the intersection matrix; `pairing[w] = (l, E_w)` is
    // kept up to date so a step costs O(deg v).
    let columns: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|v| (0..n).filter_map(|w| Some((w, lat.matrix()[w][v])).filter(|&(_, x)| x != 0)).collect())
        .collect();
    let mut pairing = vec![0i64; n];
    let mut acc = MinimizerSet::with_ceiling(i64::MAX);
    let mut l = Cycle::zero(n);
    let mut value = 0i64;
    'odometer: loop {
        let mut v = 0;
        loop {
            if v == n {
                break 'odometer;
            }
            if l[v] < bound[v] {
                value += chi_basis[v] - pairing[v];
                l.set(v, l[v] + 1);
                for &(w, x) in &columns[v] {
                    pairing[w] += x;
                }
                break;
            }
            // Carry l = l' + bE_v to l': χ(l') = χ(l) - bχ(E_v) + e_v·b(b-1)/2 + b(l', E_v).
            let (b, e) = (l[v], lat.euler(v));
            value += -b * chi_basis[v] + e * b * (b - 1) / 2 + b * (pairing[v] - b * e);
            l.set(v, 0);
            for &(w, x) in &columns[v] {
                pairing[w] -= b * x;
            }
            v += 1;
        }
        acc.offer(&l, value);
    }
    Ok(acc
        .finish(Certificate::Exhaustive { bound: bound.clone(), volume })
        .expect("box contains a nonzero point"))
}

/// One step of Laufer's sequence: `E_v` was added because `(z, E_v) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LauferStep {
    pub vertex: usize,
    pub pairing: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LauferTrace {
    pub result: Cycle,
    pub steps: Vec<LauferStep>,
}

/// Which violating vertex Laufer's sequence adds when several qualify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    Smallest,
    Largest,
}

/// Artin's fundamental cycle via Laufer's computation sequence, starting at
/// `E` and breaking ties by smallest vertex index.
pub fn laufer_minimal_cycle(lat: &IntersectionData) -> LauferTrace {
    laufer_minimal_cycle_with(lat, TieBreak::Smallest)
}

pub fn laufer_minimal_cycle_with(lat: &IntersectionData, tie: TieBreak) -> LauferTrace {
    let n = lat.rank();
    let mut z = Cycle::reduced(n);
    let mut steps = Vec::new();
    loop {
        let mut violators = (0..n).map(|v| (v, lat.pair_basis(&z, v))).filter(|&(_, p)| p > 0);
        let pick = match tie {
            TieBreak::Smallest => violators.next(),
            TieBreak::Largest => violators.next_back(),
        };
        match pick {
            Some((v, p)) => {
                z.set(v, z[v] + 1);
                steps.push(LauferStep { vertex: v, pairing: p });
            }
            None => return LauferTrace { result: z, steps },
        }
    }
}

/// `(z, E_v) ≤ 0` for every `v`.
pub fn is_anti_nef(lat: &IntersectionData, z: &Cycle) -> bool {
    (0..lat.rank()).all(|v| lat.pair_basis(z, v) <= 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::build_intersection;

    fn lat(g: &crate::graph::PlumbingGraph) -> IntersectionData {
        build_intersection(g).unwrap()
    }

    #[test]
    fn laufer_single_and_chain() {
        let l = lat(&fixtures::single(-2, 0));
        assert_eq!(laufer_minimal_cycle(&l).result, Cycle::new(vec![1]));
        for n in 1..=8 {
            let l = lat(&fixtures::a_n(n));
            let t = laufer_minimal_cycle(&l);
            assert_eq!(t.result, Cycle::reduced(n));
            assert!(t.steps.is_empty());
        }
    }

    #[test]
    fn laufer_d4_and_e8() {
        // D4: central coefficient 2.
        let l = lat(&fixtures::d_n(4));
        let z = laufer_minimal_cycle(&l).result;
        assert_eq!(z.total(), 5);
        assert!(is_anti_nef(&l, &z));
        // E8 fundamental cycle = highest root, height 29.
        let l = lat(&fixtures::e_n(8));
        let z = laufer_minimal_cycle(&l).result;
        assert_eq!(z.total(), 29);
        assert_eq!(laufer_minimal_cycle_with(&l, TieBreak::Largest).result, z);
    }

    #[test]
    fn oracle_small_boxes() {
        let l = lat(&fixtures::single(-2, 0));
        let r = min_chi_oracle(&l, &Cycle::new(vec![5]), ORACLE_CAP).unwrap();
        assert_eq!(r.minimum, 1);
        assert_eq!(r.min_minimizer, Cycle::new(vec![1]));
        assert_eq!(r.minimizer_count, 1);

        let l = lat(&fixtures::single(-1, 1));
        let r = min_chi_oracle(&l, &Cycle::new(vec![5]), ORACLE_CAP).unwrap();
        assert_eq!(r.minimum, 0);
        assert_eq!(r.min_minimizer, Cycle::new(vec![1]));
        assert_eq!(r.max_minimizer, Cycle::new(vec![1]));
    }

    #[test]
    fn oracle_rejects_bad_boxes() {
        let l = lat(&fixtures::a_n(2));
        assert_eq!(min_chi_oracle(&l, &Cycle::zero(2), ORACLE_CAP).unwrap_err(), SearchError::EmptyRegion);
        assert_eq!(
            min_chi_oracle(&l, &Cycle::new(vec![-1, 2]), ORACLE_CAP).unwrap_err(),
            SearchError::NotEffective
        );
        assert!(matches!(
            min_chi_oracle(&l, &Cycle::new(vec![100, 100]), 1000),
            Err(SearchError::RegionTooLarge { .. })
        ));
    }

    #[test]
    fn elliptic_single_vertex() {
        let l = lat(&fixtures::elliptic());
        let r = min_chi(&l, &MinChiRegion::Unbounded).unwrap();
        assert_eq!(r.minimum, 0);
        assert_eq!(r.min_minimizer, Cycle::new(vec![1]));
        assert_eq!(r.max_minimizer, Cycle::new(vec![1]));
        assert_eq!(r.minimizer_count, 1);
    }

    #[test]
    fn rational_min_minimizer_is_basis() {
        let l = lat(&fixtures::a_n(3));
        let r = min_chi(&l, &MinChiRegion::Unbounded).unwrap();
        assert_eq!(r.minimum, 1);
        assert_eq!(r.min_minimizer.total(), 1);
        assert!(!r.meet_closed);
        assert_eq!(r.max_minimizer, Cycle::reduced(3));
        assert!(r.join_closed);
        // intervals of A_3
        assert_eq!(r.minimizer_count, 6);
    }

    #[test]
    fn box_region_errors() {
        let l = lat(&fixtures::a_n(2));
        let e = min_chi(&l, &MinChiRegion::Box(Cycle::zero(2))).unwrap_err();
        assert_eq!(e, SearchError::EmptyRegion);
        let e = min_chi(&l, &MinChiRegion::Box(Cycle::zero(3))).unwrap_err();
        assert!(matches!(e, SearchError::DimensionMismatch { .. }));
    }

    #[test]
    fn box_with_frozen_coordinates() {
        let g = fixtures::dpp();
        let l = lat(&g);
        let mut z = Cycle::zero(g.vertex_count());
        z.set(0, 3);
        let r = min_chi(&l, &MinChiRegion::Box(z.clone())).unwrap();
        let o = min_chi_oracle(&l, &z, ORACLE_CAP).unwrap();
        assert_eq!(r.minimum, o.minimum);
        assert_eq!(r.min_minimizer, Cycle::basis(g.vertex_count(), 0));
    }

    #[test]
    fn branches_cover_sequential_run() {
        let g = fixtures::dpp();
        let l = lat(&g);
        let s = MinChiSearch::new(&l, &MinChiRegion::Unbounded).unwrap();
        let merged = s
            .branches()
            .into_iter()
            .map(|b| s.run_branch(b))
            .fold(s.accumulator(), MinimizerSet::merge);
        assert_eq!(s.finish(merged), s.run());
    }
}
