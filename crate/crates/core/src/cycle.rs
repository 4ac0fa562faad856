//! Integral and rational cycles over the vertex set of a plumbing graph.
//!
//! Coefficients are stored densely in the vertex order of the graph the
//! cycle belongs to. A [`Cycle`] is an element of the lattice `L`, a
//! [`RatCycle`] an element of `L ⊗ Q` (which contains the dual lattice).

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An integral cycle `Σ n_v E_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Vec<i64>);

impl Cycle {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Cycle(coeffs)
    }

    pub fn zero(len: usize) -> Self {
        Cycle(vec![0; len])
    }

    /// The basis element `E_v`.
    pub fn basis(len: usize, v: usize) -> Self {
        let mut c = vec![0; len];
        c[v] = 1;
        Cycle(c)
    }

    /// The reduced cycle `E = Σ E_v`.
    pub fn reduced(len: usize) -> Self {
        Cycle(vec![1; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.0
    }

    pub fn get(&self, v: usize) -> i64 {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, value: i64) {
        self.0[v] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// All coefficients non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Effective and nonzero, i.e. `l > 0`.
    pub fn is_effective(&self) -> bool {
        self.is_nonnegative() && !self.is_zero()
    }

    /// Vertices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.0[v] != 0).collect()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Coordinate-wise partial order `self ≤ other`.
    pub fn le(&self, other: &Cycle) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Coordinate-wise minimum.
    pub fn meet(&self, other: &Cycle) -> Cycle {
        Cycle(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Coordinate-wise maximum.
    pub fn join(&self, other: &Cycle) -> Cycle {
        Cycle(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn scaled(&self, k: i64) -> Cycle {
        Cycle(self.0.iter().map(|c| c * k).collect())
    }

    /// Copy with the coefficients on `vertices` set to zero.
    pub fn zeroed_on(&self, vertices: &[usize]) -> Cycle {
        let mut out = self.clone();
        for &v in vertices {
            out.0[v] = 0;
        }
        out
    }

    /// Restriction to a list of vertex indices, in that order.
    pub fn restrict(&self, vertices: &[usize]) -> Cycle {
        Cycle(vertices.iter().map(|&v| self.0[v]).collect())
    }

    pub fn to_rational(&self) -> RatCycle {
        RatCycle(self.0.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// Ordering used to pick canonical representatives: total degree first,
    /// then the coefficient vector compared in reverse, so that among cycles
    /// of equal degree the one with mass on earlier vertices is smaller.
    pub(crate) fn canonical_cmp(&self, other: &Cycle) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl Index<usize> for Cycle {
    type Output = i64;
    fn index(&self, v: usize) -> &i64 {
        &self.0[v]
    }
}

impl Add for &Cycle {
    type Output = Cycle;
    fn add(self, rhs: &Cycle) -> Cycle {
        assert_eq!(self.len(), rhs.len(), "cycle length mismatch");
        Cycle(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Cycle {
    type Output = Cycle;
    fn sub(self, rhs: &Cycle) -> Cycle {
        assert_eq!(self.len(), rhs.len(), "cycle length mismatch");
        Cycle(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Cycle {
    type Output = Cycle;
    fn neg(self) -> Cycle {
        Cycle(self.0.iter().map(|c| -c).collect())
    }
}

impl From<Vec<i64>> for Cycle {
    fn from(v: Vec<i64>) -> Self {
        Cycle(v)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A rational cycle `Σ q_v E_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatCycle(Vec<BigRational>);

impl RatCycle {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        RatCycle(coeffs)
    }

    pub fn zero(len: usize) -> Self {
        RatCycle(vec![BigRational::zero(); len])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Cycle::new(coeffs.to_vec()).to_rational()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(BigRational::is_integer)
    }

    /// The integral cycle, if every coefficient is an integer that fits `i64`.
    pub fn to_cycle(&self) -> Option<Cycle> {
        self.0
            .iter()
            .map(|q| if q.is_integer() { q.to_integer().to_i64() } else { None })
            .collect::<Option<Vec<_>>>()
            .map(Cycle)
    }

    /// Coordinate-wise floor.
    pub fn floor(&self) -> Cycle {
        Cycle(
            self.0
                .iter()
                .map(|q| floor_rational(q).to_i64().expect("floor exceeds i64"))
                .collect(),
        )
    }

    pub fn scaled(&self, k: &BigRational) -> RatCycle {
        RatCycle(self.0.iter().map(|q| q * k).collect())
    }
}

impl Index<usize> for RatCycle {
    type Output = BigRational;
    fn index(&self, v: usize) -> &BigRational {
        &self.0[v]
    }
}

impl Add for &RatCycle {
    type Output = RatCycle;
    fn add(self, rhs: &RatCycle) -> RatCycle {
        assert_eq!(self.len(), rhs.len(), "cycle length mismatch");
        RatCycle(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatCycle {
    type Output = RatCycle;
    fn sub(self, rhs: &RatCycle) -> RatCycle {
        assert_eq!(self.len(), rhs.len(), "cycle length mismatch");
        RatCycle(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RatCycle {
    type Output = RatCycle;
    fn neg(self) -> RatCycle {
        RatCycle(self.0.iter().map(|q| -q).collect())
    }
}

impl From<&Cycle> for RatCycle {
    fn from(c: &Cycle) -> Self {
        c.to_rational()
    }
}

impl fmt::Display for RatCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", DisplayRational(q))?;
        }
        Ok(())
    }
}

/// Formats a rational as `p/q` in lowest terms, or `p` when integral.
pub struct DisplayRational<'a>(pub &'a BigRational);

impl fmt::Display for DisplayRational<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

pub(crate) fn floor_rational(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub(crate) fn ceil_rational(q: &BigRational) -> BigInt {
    q.numer().div_ceil(q.denom())
}

/// Smallest integer `s` with `s*s >= n`, for `n >= 0`.
pub(crate) fn ceil_isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    let r = n.sqrt();
    if &(&r * &r) == n {
        r
    } else {
        r + BigInt::one()
    }
}

/// A rational upper bound of `sqrt(q)` for `q >= 0`, of the form `s / denom(q)`.
pub(crate) fn sqrt_upper(q: &BigRational) -> BigRational {
    if q.is_negative() || q.is_zero() {
        return BigRational::zero();
    }
    // sqrt(p/d) = sqrt(p*d)/d
    let pd = q.numer() * q.denom();
    BigRational::new(ceil_isqrt(&pd), q.denom().clone())
}
