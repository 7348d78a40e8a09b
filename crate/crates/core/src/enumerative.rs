//! Extended f-vectors, h-numbers and Hilbert series.
//!
//! All series are in `t` with even support, kept as exact integer
//! polynomials over a power of `(1 - t^2)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sponge::{check_acyclic, SpongeComplex, SpongeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("f-vector has length {found}, expected n - 1 = {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("the Euler relation gives b = {0}, which is negative")]
    NegativeB(BigInt),
    #[error("sponge is not acyclic")]
    NotAcyclicSponge,
    #[error("Euler relation fails: alternating face sum {alternating}, b = {b}")]
    EulerMismatch { alternating: i64, b: u64 },
    #[error(transparent)]
    Sponge(#[from] SpongeError),
}

/// Dense integer polynomial in `t`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    /// `(1 - t^2)^k`.
    pub fn one_minus_t2_pow(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); 2 * k + 1];
        for j in 0..=k {
            let c = binomial(BigInt::from(k), BigInt::from(j));
            coeffs[2 * j] = if j % 2 == 0 { c } else { -c };
        }
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients through `t^up_to`, zero-padded.
    pub fn padded(&self, up_to: usize) -> Vec<BigInt> {
        (0..=up_to).map(|k| self.coeff(k)).collect()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact quotient by `1 - t^2`, if it divides.
    pub fn div_one_minus_t2(&self) -> Option<IntPoly> {
        let Some(d) = self.degree() else {
            return Some(IntPoly::zero());
        };
        if d < 2 {
            return None;
        }
        // Match from the top: -q_{k-2} = p_k.
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); d - 1];
        for k in (2..=d).rev() {
            let c = -rem[k].clone();
            rem[k - 2] -= &c;
            rem[k] = BigInt::zero();
            q[k - 2] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(q))
    }

    /// Only even powers carry nonzero coefficients.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{a}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{a}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Finite Laurent polynomial `sum c_k t^(min_power + k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub min_power: i64,
    pub coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn from_poly(p: &IntPoly) -> Self {
        Laurent {
            min_power: 0,
            coeffs: p.coefficients().to_vec(),
        }
        .normalized()
    }

    /// `t^shift * p(1/t)`.
    pub fn reflect(p: &IntPoly, shift: i64) -> Self {
        let coeffs: Vec<BigInt> = p.coefficients().iter().rev().cloned().collect();
        let top = p.degree().map_or(0, |d| d as i64);
        Laurent {
            min_power: shift - top,
            coeffs,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.min_power += lead as i64;
        if self.coeffs.is_empty() {
            self.min_power = 0;
        }
        self
    }
}

/// `numerator / (1 - t^2)^denominator_power`, normalized so the numerator is
/// not divisible by `1 - t^2` unless the power is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: IntPoly,
    pub denominator_power: usize,
}

impl HilbertSeries {
    pub fn new(numerator: IntPoly, denominator_power: usize) -> Self {
        let mut s = HilbertSeries {
            numerator,
            denominator_power,
        };
        while s.denominator_power > 0 {
            match s.numerator.div_one_minus_t2() {
                Some(q) if !s.numerator.is_zero() => {
                    s.numerator = q;
                    s.denominator_power -= 1;
                }
                _ => break,
            }
        }
        if s.numerator.is_zero() {
            s.denominator_power = 0;
        }
        s
    }

    pub fn polynomial(p: IntPoly) -> Self {
        Self::new(p, 0)
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        let k = self.denominator_power.max(other.denominator_power);
        let a = self
            .numerator
            .mul(&IntPoly::one_minus_t2_pow(k - self.denominator_power));
        let b = other
            .numerator
            .mul(&IntPoly::one_minus_t2_pow(k - other.denominator_power));
        HilbertSeries::new(a.add(&b), k)
    }

    /// Multiplies by `(1 - t^2)^k`.
    pub fn times_one_minus_t2_pow(&self, k: usize) -> HilbertSeries {
        if k >= self.denominator_power {
            let extra = IntPoly::one_minus_t2_pow(k - self.denominator_power);
            HilbertSeries::new(self.numerator.mul(&extra), 0)
        } else {
            HilbertSeries::new(self.numerator.clone(), self.denominator_power - k)
        }
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, other: &HilbertSeries) -> bool {
        let k = self.denominator_power.max(other.denominator_power);
        let a = self
            .numerator
            .mul(&IntPoly::one_minus_t2_pow(k - self.denominator_power));
        let b = other
            .numerator
            .mul(&IntPoly::one_minus_t2_pow(k - other.denominator_power));
        a == b
    }

    /// Power-series coefficients through `t^up_to`.
    pub fn expand(&self, up_to: usize) -> Vec<BigInt> {
        let k = self.denominator_power;
        let inverse: Vec<BigInt> = (0..=up_to)
            .map(|p| {
                if k == 0 {
                    if p == 0 {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                } else if p % 2 == 1 {
                    BigInt::zero()
                } else {
                    binomial(BigInt::from(p / 2 + k - 1), BigInt::from(k - 1))
                }
            })
            .collect();
        (0..=up_to)
            .map(|p| {
                (0..=p)
                    .map(|j| self.numerator.coeff(j) * &inverse[p - j])
                    .sum()
            })
            .collect()
    }
}

/// Series coefficients of `s` through `t^up_to`.
pub fn series_expand(s: &HilbertSeries, up_to: usize) -> Vec<BigInt> {
    s.expand(up_to)
}

/// Face counts `f_0..f_{n-2}` of a sponge with parameter `n`, plus its
/// b-number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtendedFVector {
    pub n: usize,
    pub f: Vec<u64>,
    pub b: u64,
}

impl ExtendedFVector {
    pub fn new(n: usize, f: Vec<u64>, b: u64) -> Result<Self, EnumError> {
        if n < 2 || f.len() != n - 1 {
            return Err(EnumError::LengthMismatch {
                expected: n.saturating_sub(1),
                found: f.len(),
            });
        }
        Ok(ExtendedFVector { n, f, b })
    }

    /// Takes `b` from the Euler relation.
    pub fn from_faces(n: usize, f: Vec<u64>) -> Result<Self, EnumError> {
        let b = b_from_euler(&f, n)?;
        Self::new(n, f, b)
    }

    pub fn alternating_sum(&self) -> i64 {
        alternating_sum(&self.f)
    }

    /// `f_0 - f_1 + ... = 1 + (-1)^(n-2) b`.
    pub fn satisfies_euler(&self) -> bool {
        let sign = if self.n.is_multiple_of(2) { 1 } else { -1 };
        self.alternating_sum() == 1 + sign * self.b as i64
    }
}

impl fmt::Display for ExtendedFVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let faces: Vec<String> = self.f.iter().map(u64::to_string).collect();
        write!(f, "(({}),{})", faces.join(","), self.b)
    }
}

fn alternating_sum(f: &[u64]) -> i64 {
    f.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// `b = (-1)^(n-2) (f_0 - f_1 + ... + (-1)^(n-2) f_{n-2} - 1)`.
pub fn b_from_euler(f: &[u64], n: usize) -> Result<u64, EnumError> {
    if n < 2 || f.len() != n - 1 {
        return Err(EnumError::LengthMismatch {
            expected: n.saturating_sub(1),
            found: f.len(),
        });
    }
    let s = alternating_sum(f) - 1;
    let b = if n.is_multiple_of(2) { s } else { -s };
    u64::try_from(b).map_err(|_| EnumError::NegativeB(b.into()))
}

/// Extended f-vector of an acyclic sponge, with `b` read from its top
/// reduced cohomology.
pub fn fvector_of(z: &SpongeComplex) -> Result<ExtendedFVector, EnumError> {
    let report = check_acyclic(z)?;
    if !report.acyclic {
        return Err(EnumError::NotAcyclicSponge);
    }
    let f: Vec<u64> = z.face_counts().iter().map(|&c| c as u64).collect();
    let fv = ExtendedFVector::new(z.n(), f, report.b_number as u64)?;
    if !fv.satisfies_euler() {
        return Err(EnumError::EulerMismatch {
            alternating: fv.alternating_sum(),
            b: fv.b,
        });
    }
    Ok(fv)
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// `sum f_i t^(2n-2i) / (1-t^2)^(n-1-i) + (1 + b t^2)`, summed as rational
/// functions.
pub fn hilbert_equivariant(fv: &ExtendedFVector) -> HilbertSeries {
    let n = fv.n;
    let mut total =
        HilbertSeries::polynomial(IntPoly::new(vec![BigInt::one(), BigInt::zero(), big(fv.b)]));
    for (i, &fi) in fv.f.iter().enumerate() {
        let term = HilbertSeries::new(IntPoly::monomial(big(fi), 2 * n - 2 * i), n - 1 - i);
        total = total.add(&term);
    }
    total
}

/// `sum f_i t^(2n-2i) (1-t^2)^i + (1 + b t^2)(1-t^2)^(n-1)`.
pub fn betti_polynomial(fv: &ExtendedFVector) -> IntPoly {
    let n = fv.n;
    let mut p = IntPoly::new(vec![BigInt::one(), BigInt::zero(), big(fv.b)])
        .mul(&IntPoly::one_minus_t2_pow(n - 1));
    for (i, &fi) in fv.f.iter().enumerate() {
        p = p.add(&IntPoly::monomial(big(fi), 2 * n - 2 * i).mul(&IntPoly::one_minus_t2_pow(i)));
    }
    p
}

/// `sum (-1)^i f_i (1-t^2)^i + (-1)^(n-1) (b + t^2)(1-t^2)^(n-1)`.
pub fn betti_polynomial_alt(fv: &ExtendedFVector) -> IntPoly {
    let n = fv.n;
    let sign = |k: usize| {
        if k.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    };
    let mut p = IntPoly::new(vec![big(fv.b), BigInt::zero(), BigInt::one()])
        .mul(&IntPoly::one_minus_t2_pow(n - 1))
        .scale(&sign(n - 1));
    for (i, &fi) in fv.f.iter().enumerate() {
        p = p.add(&IntPoly::one_minus_t2_pow(i).scale(&(sign(i) * big(fi))));
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub betti: IntPoly,
    pub betti_alt: IntPoly,
    pub reflected_alt: Laurent,
    pub holds: bool,
}

/// Checks `t^(2n) * betti_alt(1/t) = betti(t)`.
pub fn duality_check(fv: &ExtendedFVector) -> DualityReport {
    let betti = betti_polynomial(fv);
    let betti_alt = betti_polynomial_alt(fv);
    let reflected_alt = Laurent::reflect(&betti_alt, 2 * fv.n as i64);
    let holds = reflected_alt == Laurent::from_poly(&betti);
    DualityReport {
        betti,
        betti_alt,
        reflected_alt,
        holds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    pub h: Vec<BigInt>,
    pub symmetric: bool,
    pub nonnegative: bool,
}

impl HVector {
    pub fn new(h: Vec<BigInt>) -> Self {
        let symmetric = h.iter().eq(h.iter().rev());
        let nonnegative = h.iter().all(|x| !x.is_negative());
        HVector {
            h,
            symmetric,
            nonnegative,
        }
    }

    pub fn as_i64(&self) -> Option<Vec<i64>> {
        self.h.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn polynomial(&self) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); 2 * self.h.len()];
        for (i, x) in self.h.iter().enumerate() {
            coeffs[2 * i] = x.clone();
        }
        IntPoly::new(coeffs)
    }
}

/// `h_i` = coefficient of `t^(2i)` in the Betti polynomial, `i = 0..=n`.
pub fn hvector_of(fv: &ExtendedFVector) -> HVector {
    let p = betti_polynomial(fv);
    debug_assert!(p.is_even());
    let h = HVector::new((0..=fv.n).map(|i| p.coeff(2 * i)).collect());
    debug_assert_eq!(h.polynomial(), p);
    h
}

/// Classical h-vector of a simple polytope from all of its face counts
/// `f_0..f_n`, via `sum h_i t^(2i) = sum f_i (1-t^2)^i t^(2n-2i)`.
pub fn polytope_hvector(face_counts: &[u64]) -> Vec<BigInt> {
    let n = face_counts.len() - 1;
    let mut p = IntPoly::zero();
    for (i, &fi) in face_counts.iter().enumerate() {
        p = p.add(&IntPoly::monomial(big(fi), 2 * n - 2 * i).mul(&IntPoly::one_minus_t2_pow(i)));
    }
    (0..=n).map(|i| p.coeff(2 * i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn paper_polynomials() {
        let g42 = ExtendedFVector::new(4, vec![6, 12, 11], 4).unwrap();
        assert_eq!(
            betti_polynomial(&g42),
            IntPoly::from_i64(&[1, 0, 1, 0, 2, 0, 1, 0, 1])
        );
        assert_eq!(betti_polynomial_alt(&g42), betti_polynomial(&g42));
        let f3 = ExtendedFVector::new(3, vec![6, 9], 4).unwrap();
        assert_eq!(
            betti_polynomial(&f3),
            IntPoly::from_i64(&[1, 0, 2, 0, 2, 0, 1])
        );
        let hp2 = ExtendedFVector::new(4, vec![3, 6, 7], 3).unwrap();
        assert_eq!(hvector_of(&hp2).h, ints(&[1, 0, 1, 0, 1]));
        assert!(duality_check(&g42).holds && duality_check(&f3).holds);
    }

    #[test]
    fn b_numbers() {
        assert_eq!(b_from_euler(&[6, 12, 11], 4).unwrap(), 4);
        assert_eq!(b_from_euler(&[6, 9], 3).unwrap(), 4);
        assert_eq!(b_from_euler(&[3, 6, 7], 4).unwrap(), 3);
        assert_eq!(b_from_euler(&[3], 2).unwrap(), 2);
        assert!(matches!(
            b_from_euler(&[1, 3, 0], 4),
            Err(EnumError::NegativeB(_))
        ));
    }

    #[test]
    fn series() {
        let geo = HilbertSeries::new(IntPoly::one(), 1);
        assert_eq!(geo.expand(6), ints(&[1, 0, 1, 0, 1, 0, 1]));
        let shifted = HilbertSeries::new(IntPoly::from_i64(&[0, 0, 0, 0, 1]), 1);
        assert_eq!(shifted.expand(6), ints(&[0, 0, 0, 0, 1, 0, 1]));
        let n2 = hilbert_equivariant(&ExtendedFVector::new(2, vec![3], 2).unwrap());
        assert_eq!(n2.expand(6), ints(&[1, 0, 2, 0, 3, 0, 3]));
        let reduced = HilbertSeries::new(IntPoly::from_i64(&[1, 0, -1]), 1);
        assert_eq!(reduced, HilbertSeries::polynomial(IntPoly::one()));
    }

    #[test]
    fn cube_and_simplex() {
        assert_eq!(polytope_hvector(&[8, 12, 6, 1]), ints(&[1, 3, 3, 1]));
        let cube = ExtendedFVector::new(3, vec![8, 12], 5).unwrap();
        assert_eq!(hvector_of(&cube).h, ints(&[1, 3, 3, 1]));
        let simplex = ExtendedFVector::new(3, vec![4, 6], 3).unwrap();
        assert_eq!(hvector_of(&simplex).h, ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(
            IntPoly::from_i64(&[1, 0, -2, 0, 1]).to_string(),
            "1 - 2t^2 + t^4"
        );
    }
}
