//! Exact linear algebra on the intersection lattice `L` of a plumbing graph.
//!
//! Negative definiteness is certified by an exact `LDLᵀ` factorization with
//! all pivots negative. The same factorization provides the rational inverse,
//! the dual cycles `E*_v` (characterized by `(E*_v, E_w) = -δ_vw`), the
//! determinant and the canonical cycle `Z_K`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cycle::{Cycle, RatCycle};
use crate::graph::PlumbingGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("intersection form is not negative definite (pivot {index} is non-negative)")]
    NotNegativeDefinite { index: usize },
    #[error("cycle has {got} coefficients, lattice has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// First failing pivot of an `LDLᵀ` attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotFailure {
    /// Zero-based index of the first non-negative pivot.
    pub index: usize,
    /// Value of the leading principal minor of order `index + 1`.
    pub minor: BigInt,
}

/// Exact `LDLᵀ` factorization of a symmetric matrix, without pivoting.
///
/// Returns the unit lower-triangular factor (row-major, diagonal implied) and
/// the pivots. On failure returns the index of the first pivot that is `>= 0`
/// together with the pivots computed so far (including the failing one).
#[allow(clippy::type_complexity)]
pub(crate) fn ldl(
    matrix: &[Vec<BigRational>],
) -> Result<(Vec<Vec<BigRational>>, Vec<BigRational>), (usize, Vec<BigRational>)> {
    let n = matrix.len();
    let mut l = vec![vec![BigRational::zero(); n]; n];
    let mut d: Vec<BigRational> = Vec::with_capacity(n);
    for j in 0..n {
        let mut dj = matrix[j][j].clone();
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &d[k];
        }
        if !dj.is_negative() {
            d.push(dj);
            return Err((j, d));
        }
        for i in (j + 1)..n {
            let mut s = matrix[i][j].clone();
            for k in 0..j {
                s -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = s / &dj;
        }
        d.push(dj);
    }
    Ok((l, d))
}

fn to_rational_matrix(matrix: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect()
}

/// Certifies that `matrix` is negative definite; returns the `LDLᵀ` pivots.
pub fn negative_definite_pivots(matrix: &[Vec<i64>]) -> Result<Vec<BigRational>, PivotFailure> {
    let rat = to_rational_matrix(matrix);
    ldl(&rat).map(|(_, d)| d).map_err(|(index, d)| {
        let minor = d.iter().fold(BigRational::one(), |acc, x| acc * x);
        PivotFailure { index, minor: minor.to_integer() }
    })
}

/// Leading principal minors `det(A[..k, ..k])` for `k = 1..=n`, by
/// fraction-free Bareiss elimination. Independent of [`ldl`].
pub fn leading_minors(matrix: &[Vec<i64>]) -> Vec<BigInt> {
    let n = matrix.len();
    let mut a: Vec<Vec<BigInt>> =
        matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            // Later minors are not produced by elimination without pivoting.
            break;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                a[i][j] = (&a[i][j] * &pivot - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = pivot;
    }
    minors
}

/// The intersection lattice of a plumbing graph with everything derived from it.
#[derive(Clone, Debug)]
pub struct IntersectionData {
    matrix: Vec<Vec<i64>>,
    genus: Vec<u32>,
    /// `(Z_K, E_v) = e_v + 2 - 2 g_v`.
    adjunction: Vec<i64>,
    pivots: Vec<BigRational>,
    inverse: Vec<Vec<BigRational>>,
    det: BigInt,
    duals: Vec<RatCycle>,
    canonical: RatCycle,
}

/// Builds the lattice data; fails only if the form is not negative definite.
pub fn build_intersection(g: &PlumbingGraph) -> Result<IntersectionData, LatticeError> {
    IntersectionData::from_parts(
        g.intersection_matrix(),
        (0..g.vertex_count()).map(|v| g.genus(v)).collect(),
    )
}

impl IntersectionData {
    pub fn from_parts(matrix: Vec<Vec<i64>>, genus: Vec<u32>) -> Result<Self, LatticeError> {
        let n = matrix.len();
        assert_eq!(genus.len(), n);
        let rat = to_rational_matrix(&matrix);
        let (l, d) = ldl(&rat).map_err(|(index, _)| LatticeError::NotNegativeDefinite { index })?;
        let det = d.iter().fold(BigRational::one(), |acc, x| acc * x);
        debug_assert!(det.is_integer());
        let det = det.to_integer();

        // I⁻¹ column by column: L y = e_j, D z = y, Lᵀ x = z.
        let mut inverse = vec![vec![BigRational::zero(); n]; n];
        #[allow(clippy::needless_range_loop)]
        for j in 0..n {
            let mut y = vec![BigRational::zero(); n];
            for i in 0..n {
                let mut s = if i == j { BigRational::one() } else { BigRational::zero() };
                for k in 0..i {
                    s -= &l[i][k] * &y[k];
                }
                y[i] = s;
            }
            for i in 0..n {
                y[i] = &y[i] / &d[i];
            }
            let mut x = vec![BigRational::zero(); n];
            for i in (0..n).rev() {
                let mut s = y[i].clone();
                for k in (i + 1)..n {
                    s -= &l[k][i] * &x[k];
                }
                x[i] = s;
            }
            for i in 0..n {
                inverse[i][j] = x[i].clone();
            }
        }

        // E*_v = -I⁻¹ e_v
        let duals = (0..n)
            .map(|v| RatCycle::new((0..n).map(|w| -inverse[w][v].clone()).collect()))
            .collect();

        let adjunction: Vec<i64> =
            (0..n).map(|v| matrix[v][v] + 2 - 2 * i64::from(genus[v])).collect();
        let canonical = RatCycle::new(
            (0..n)
                .map(|w| {
                    (0..n)
                        .map(|v| &inverse[w][v] * BigRational::from_integer(adjunction[v].into()))
                        .sum()
                })
                .collect(),
        );

        Ok(IntersectionData { matrix, genus, adjunction, pivots: d, inverse, det, duals, canonical })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn inverse(&self) -> &[Vec<BigRational>] {
        &self.inverse
    }

    /// The `LDLᵀ` pivots; all negative.
    pub fn pivots(&self) -> &[BigRational] {
        &self.pivots
    }

    pub fn determinant(&self) -> &BigInt {
        &self.det
    }

    /// Order of the discriminant group `L'/L`, i.e. `|det I|`.
    pub fn discriminant_order(&self) -> BigInt {
        self.det.abs()
    }

    pub fn euler(&self, v: usize) -> i64 {
        self.matrix[v][v]
    }

    pub fn genus(&self, v: usize) -> u32 {
        self.genus[v]
    }

    /// Right-hand sides `(Z_K, E_v) = e_v + 2 - 2g_v`.
    pub fn adjunction(&self) -> &[i64] {
        &self.adjunction
    }

    /// The dual cycle `E*_v`.
    pub fn dual(&self, v: usize) -> &RatCycle {
        &self.duals[v]
    }

    pub fn duals(&self) -> &[RatCycle] {
        &self.duals
    }

    /// The canonical cycle `Z_K`.
    pub fn canonical_cycle(&self) -> &RatCycle {
        &self.canonical
    }

    fn check_dim(&self, len: usize) -> Result<(), LatticeError> {
        if len != self.rank() {
            return Err(LatticeError::DimensionMismatch { expected: self.rank(), got: len });
        }
        Ok(())
    }

    /// `xᵀ I y`.
    pub fn pairing(&self, x: &RatCycle, y: &RatCycle) -> Result<BigRational, LatticeError> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        let mut acc = BigRational::zero();
        for (v, row) in self.matrix.iter().enumerate() {
            if x[v].is_zero() {
                continue;
            }
            let mut s = BigRational::zero();
            for (w, &a) in row.iter().enumerate() {
                if a != 0 && !y[w].is_zero() {
                    s += &y[w] * BigRational::from_integer(a.into());
                }
            }
            acc += &x[v] * s;
        }
        Ok(acc)
    }

    /// `(x, E_v)` for a rational cycle.
    pub fn pairing_with_basis(&self, x: &RatCycle, v: usize) -> BigRational {
        self.matrix[v]
            .iter()
            .zip(x.coeffs())
            .filter(|(&a, _)| a != 0)
            .map(|(&a, q)| q * BigRational::from_integer(a.into()))
            .sum()
    }

    /// `(l, E_v)` for an integral cycle.
    pub fn pair_basis(&self, l: &Cycle, v: usize) -> i64 {
        self.matrix[v].iter().zip(l.coeffs()).map(|(a, b)| a * b).sum()
    }

    /// `(x, y)` for integral cycles. Panics on length mismatch.
    pub fn pair(&self, x: &Cycle, y: &Cycle) -> i64 {
        assert_eq!(x.len(), self.rank(), "cycle length mismatch");
        assert_eq!(y.len(), self.rank(), "cycle length mismatch");
        let mut acc: i128 = 0;
        for (v, row) in self.matrix.iter().enumerate() {
            let xv = x[v];
            if xv == 0 {
                continue;
            }
            let s: i128 = row.iter().zip(y.coeffs()).map(|(&a, &b)| i128::from(a) * i128::from(b)).sum();
            acc += i128::from(xv) * s;
        }
        i64::try_from(acc).expect("pairing overflows i64")
    }

    /// `χ(x) = -(x, x - Z_K)/2`, exact.
    pub fn chi(&self, x: &RatCycle) -> Result<BigRational, LatticeError> {
        let diff = x - &self.canonical;
        Ok(-self.pairing(x, &diff)? / BigRational::from_integer(2.into()))
    }

    /// `χ(l)` for an integral cycle, computed as
    /// `(-(l, l) + Σ l_v (e_v + 2 - 2g_v)) / 2` without using `Z_K`.
    pub fn chi_int(&self, l: &Cycle) -> i64 {
        let lin: i64 = l.coeffs().iter().zip(&self.adjunction).map(|(a, b)| a * b).sum();
        let twice = -self.pair(l, l) + lin;
        debug_assert!(twice % 2 == 0);
        twice / 2
    }

    /// Membership in `L'`: `(x, E_v)` integral for every `v`.
    pub fn is_in_dual_lattice(&self, x: &RatCycle) -> bool {
        (0..self.rank()).all(|v| self.pairing_with_basis(x, v).is_integer())
    }

    /// Membership in the Lipman cone `S' = {l' ∈ L' : (l', E_v) ≤ 0 ∀v}`.
    pub fn is_in_lipman_cone(&self, x: &RatCycle) -> bool {
        x.len() == self.rank()
            && (0..self.rank()).all(|v| {
                let p = self.pairing_with_basis(x, v);
                p.is_integer() && !p.is_positive()
            })
    }

    /// Coordinates of `x` in the dual basis and its `E*`-support.
    pub fn estar_support(&self, x: &RatCycle) -> Result<EstarSupport, LatticeError> {
        self.check_dim(x.len())?;
        let coefficients: Vec<BigRational> =
            (0..self.rank()).map(|v| -self.pairing_with_basis(x, v)).collect();
        let support = (0..self.rank()).filter(|&v| !coefficients[v].is_zero()).collect();
        let in_dual_lattice = coefficients.iter().all(BigRational::is_integer);
        Ok(EstarSupport { coefficients, support, in_dual_lattice })
    }

    /// `dim ECa^{l'}(Z) = (l', Z)`, or [`EcaDimension::Empty`] when `-l' ∉ S'`.
    pub fn eca_dimension(&self, l: &RatCycle, z: &Cycle) -> Result<EcaDimension, LatticeError> {
        self.check_dim(l.len())?;
        self.check_dim(z.len())?;
        if l.is_zero() {
            return Ok(EcaDimension::Dimension(BigRational::zero()));
        }
        if !self.is_in_lipman_cone(&-l) {
            return Ok(EcaDimension::Empty);
        }
        Ok(EcaDimension::Dimension(self.pairing(l, &z.to_rational())?))
    }
}

/// Result of [`IntersectionData::estar_support`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EstarSupport {
    /// `a_v = -(l', E_v)`, so that `l' = Σ a_v E*_v`.
    pub coefficients: Vec<BigRational>,
    /// Vertices with `a_v ≠ 0`.
    pub support: Vec<usize>,
    /// False when some `a_v` is not an integer.
    pub in_dual_lattice: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EcaDimension {
    Empty,
    Dimension(BigRational),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn single_vertex_inverse() {
        let lat = build_intersection(&fixtures::single(-5, 0)).unwrap();
        assert_eq!(lat.dual(0), &RatCycle::new(vec![q(1, 5)]));
        assert_eq!(lat.discriminant_order(), BigInt::from(5));
    }

    #[test]
    fn a2_duals_and_det() {
        let lat = build_intersection(&fixtures::a_n(2)).unwrap();
        assert_eq!(lat.dual(0), &RatCycle::new(vec![q(2, 3), q(1, 3)]));
        assert_eq!(lat.discriminant_order(), BigInt::from(3));
        assert_eq!(lat.pairing(lat.dual(0), lat.dual(0)).unwrap(), q(-2, 3));
    }

    #[test]
    fn zero_euler_rejected() {
        let err = IntersectionData::from_parts(vec![vec![0]], vec![0]).unwrap_err();
        assert_eq!(err, LatticeError::NotNegativeDefinite { index: 0 });
    }

    #[test]
    fn dimension_mismatch() {
        let lat = build_intersection(&fixtures::a_n(2)).unwrap();
        let x = RatCycle::zero(3);
        assert!(matches!(lat.pairing(&x, &x), Err(LatticeError::DimensionMismatch { .. })));
    }

    #[test]
    fn canonical_cycles() {
        let lat = build_intersection(&fixtures::single(-2, 0)).unwrap();
        assert!(lat.canonical_cycle().is_zero());
        let lat = build_intersection(&fixtures::single(-1, 0)).unwrap();
        assert_eq!(lat.canonical_cycle(), &RatCycle::from_integers(&[-1]));
        let lat = build_intersection(&fixtures::single(-1, 1)).unwrap();
        assert_eq!(lat.canonical_cycle(), &RatCycle::from_integers(&[1]));
    }

    #[test]
    fn chi_basics() {
        let g = fixtures::dpp();
        let lat = build_intersection(&g).unwrap();
        let n = lat.rank();
        assert!(lat.chi(&RatCycle::zero(n)).unwrap().is_zero());
        assert!(lat.chi(lat.canonical_cycle()).unwrap().is_zero());
        for v in 0..n {
            assert_eq!(lat.chi_int(&Cycle::basis(n, v)), 1 - i64::from(lat.genus(v)));
        }
    }

    #[test]
    fn lipman_cone_membership() {
        let lat = build_intersection(&fixtures::a_n(2)).unwrap();
        for v in 0..2 {
            assert!(lat.is_in_lipman_cone(lat.dual(v)));
        }
        assert!(lat.is_in_lipman_cone(&RatCycle::zero(2)));
        assert!(!lat.is_in_lipman_cone(&RatCycle::from_integers(&[1, 0])));
        let single = build_intersection(&fixtures::single(-2, 0)).unwrap();
        assert!(single.is_in_lipman_cone(&RatCycle::from_integers(&[1])));
        // not in L'
        assert!(!lat.is_in_lipman_cone(&RatCycle::new(vec![q(1, 2), q(0, 1)])));
    }

    #[test]
    fn estar_support_examples() {
        let lat = build_intersection(&fixtures::a_n(2)).unwrap();
        let s = lat.estar_support(lat.dual(1)).unwrap();
        assert_eq!(s.support, vec![1]);
        let s = lat.estar_support(&RatCycle::zero(2)).unwrap();
        assert!(s.support.is_empty());
        let s = lat.estar_support(&RatCycle::from_integers(&[1, 0])).unwrap();
        assert_eq!(s.coefficients, vec![q(2, 1), q(-1, 1)]);
        assert_eq!(s.support, vec![0, 1]);
        assert!(s.in_dual_lattice);
        let s = lat.estar_support(&RatCycle::new(vec![q(1, 2), q(0, 1)])).unwrap();
        assert!(!s.in_dual_lattice);
    }

    #[test]
    fn eca_dimension_examples() {
        let lat = build_intersection(&fixtures::single(-2, 0)).unwrap();
        let z = Cycle::new(vec![3]);
        assert_eq!(
            lat.eca_dimension(&RatCycle::zero(1), &z).unwrap(),
            EcaDimension::Dimension(BigRational::zero())
        );
        let minus_dual = -lat.dual(0);
        assert_eq!(
            lat.eca_dimension(&minus_dual, &z).unwrap(),
            EcaDimension::Dimension(q(3, 1))
        );
        assert_eq!(lat.eca_dimension(lat.dual(0), &z).unwrap(), EcaDimension::Empty);
    }

    #[test]
    fn minors_alternate_for_negative_definite() {
        let g = fixtures::e_n(8);
        let m = g.intersection_matrix();
        let minors = leading_minors(&m);
        for (k, d) in minors.iter().enumerate() {
            let expected_negative = k % 2 == 0;
            assert_eq!(d.is_negative(), expected_negative, "minor {k}");
        }
        assert_eq!(minors.last().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn failing_minor_reported() {
        let err = negative_definite_pivots(&[vec![-2, 1, 0], vec![1, -1, 1], vec![0, 1, -1]]).unwrap_err();
        // minors: -2, 1, 1 → third should be negative
        assert_eq!(err.index, 2);
        assert_eq!(err.minor, leading_minors(&[vec![-2, 1, 0], vec![1, -1, 1], vec![0, 1, -1]])[2]);
    }
}
