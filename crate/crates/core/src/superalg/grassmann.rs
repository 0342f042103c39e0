//! Finite-dimensional Grassmann algebras Λ_n, stored densely by subset mask.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gens::Parity;
use super::poly::render_terms;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Largest supported number of odd generators (dimension 2^12).
pub const MAX_GRASSMANN_GENERATORS: usize = 12;

/// Sign of `ξ_A · ξ_B` for disjoint ascending subsets given as masks:
/// parity of the pairs `(i ∈ A, j ∈ B)` with `i > j`.
#[inline]
pub fn merge_sign(a: u32, b: u32) -> bool {
    let mut crossings = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        crossings += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    crossings % 2 == 1
}

/// An element of Λ_n over a field. Coefficient `k` belongs to the basis
/// monomial whose generator subset is the bit mask `k` (bit `i` is ξ_{i+1}).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrassmannElement {
    field: Field,
    n: u8,
    coeffs: Vec<Scalar>,
}

impl GrassmannElement {
    pub fn zero(field: Field, n: usize) -> GrassmannElement {
        assert!(n <= MAX_GRASSMANN_GENERATORS, "at most {MAX_GRASSMANN_GENERATORS} odd generators");
        GrassmannElement { field, n: n as u8, coeffs: vec![Scalar::zero(field); 1 << n] }
    }

    pub fn scalar(field: Field, n: usize, c: Scalar) -> GrassmannElement {
        let mut e = GrassmannElement::zero(field, n);
        e.coeffs[0] = c;
        e
    }

    pub fn one(field: Field, n: usize) -> GrassmannElement {
        GrassmannElement::scalar(field, n, Scalar::one(field))
    }

    /// The generator ξ_{i+1} (zero-based `i`).
    pub fn generator(field: Field, n: usize, i: usize) -> GrassmannElement {
        assert!(i < n);
        let mut e = GrassmannElement::zero(field, n);
        e.coeffs[1 << i] = Scalar::one(field);
        e
    }

    pub fn from_coeffs(field: Field, n: usize, coeffs: Vec<Scalar>) -> GrassmannElement {
        assert_eq!(coeffs.len(), 1 << n);
        GrassmannElement { field, n: n as u8, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of odd generators of the ambient algebra.
    pub fn generators(&self) -> usize {
        self.n as usize
    }

    pub fn coeff(&self, mask: u32) -> &Scalar {
        &self.coeffs[mask as usize]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, mask: u32, c: Scalar) {
        self.coeffs[mask as usize] = c;
    }

    /// Nonzero terms in ascending (degree, lexicographic) order.
    pub fn terms(&self) -> Vec<(u32, &Scalar)> {
        let mut masks: Vec<u32> =
            (0..self.coeffs.len() as u32).filter(|&m| !self.coeffs[m as usize].is_zero()).collect();
        masks.sort_by_key(|&m| (m.count_ones(), m.reverse_bits()));
        masks.into_iter().map(|m| (m, &self.coeffs[m as usize])).collect()
    }

    pub fn scalar_part(&self) -> &Scalar {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Scalar::is_zero)
    }

    fn check_ambient(&self, other: &GrassmannElement) -> Result<()> {
        if self.n != other.n || self.field != other.field {
            return Err(Error::AmbientMismatch { left: self.n as usize, right: other.n as usize });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &GrassmannElement) -> Result<GrassmannElement> {
        self.check_ambient(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(self.with_coeffs(coeffs))
    }

    /// Bilinear product; overlapping subsets annihilate and merging disjoint
    /// subsets contributes the sign of the required transpositions.
    pub fn checked_mul(&self, other: &GrassmannElement) -> Result<GrassmannElement> {
        self.check_ambient(other)?;
        let mut out = GrassmannElement::zero(self.field, self.n as usize);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() || a & b != 0 {
                    continue;
                }
                let prod = ca * cb;
                let slot = &mut out.coeffs[a | b];
                *slot = if merge_sign(a as u32, b as u32) { &*slot - &prod } else { &*slot + &prod };
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> GrassmannElement {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        self.with_coeffs(coeffs)
    }

    pub fn pow(&self, k: u32) -> GrassmannElement {
        let mut acc = GrassmannElement::one(self.field, self.n as usize);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Two-sided inverse `c⁻¹ Σ_k (−c⁻¹·nil)^k` where `self = c + nil`; the
    /// series stops because `nil^(n+1) = 0`.
    pub fn inverse(&self) -> Result<GrassmannElement> {
        let c_inv = self.coeffs[0].inverse().ok_or(Error::NotInvertible)?;
        let mut nil = self.clone();
        nil.coeffs[0] = Scalar::zero(self.field);
        let step = nil.scale(&-&c_inv);
        let mut term = GrassmannElement::one(self.field, self.n as usize);
        let mut sum = term.clone();
        for _ in 0..self.n {
            term = &term * &step;
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        Ok(sum.scale(&c_inv))
    }

    pub fn parity_split(&self) -> (GrassmannElement, GrassmannElement) {
        let mut even = GrassmannElement::zero(self.field, self.n as usize);
        let mut odd = even.clone();
        for (m, c) in self.coeffs.iter().enumerate() {
            if (m as u32).count_ones().is_multiple_of(2) {
                even.coeffs[m] = c.clone();
            } else {
                odd.coeffs[m] = c.clone();
            }
        }
        (even, odd)
    }

    pub fn is_homogeneous_of(&self, p: Parity) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(m, c)| c.is_zero() || Parity::from_count((m as u32).count_ones() as usize) == p)
    }

    pub fn homogeneous_parity(&self) -> Option<Parity> {
        if self.is_zero() {
            return None;
        }
        [Parity::Even, Parity::Odd].into_iter().find(|&p| self.is_homogeneous_of(p))
    }

    /// Multiplies every odd-degree coefficient by `q`.
    pub fn scale_odd(&self, q: &Scalar) -> GrassmannElement {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| if (m as u32).count_ones() % 2 == 1 { c * q } else { c.clone() })
            .collect();
        self.with_coeffs(coeffs)
    }

    fn with_coeffs(&self, coeffs: Vec<Scalar>) -> GrassmannElement {
        GrassmannElement { field: self.field, n: self.n, coeffs }
    }
}

pub fn render_mask(mask: u32) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| format!("xi{}", i + 1)).collect::<Vec<_>>().join("*")
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        f.write_str(&render_terms(terms.into_iter().map(|(m, c)| (vec![render_mask(m)], c))))
    }
}

impl<'a> Add<&'a GrassmannElement> for &'a GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, rhs: &'a GrassmannElement) -> GrassmannElement {
        self.checked_add(rhs).expect("Grassmann ambients must match")
    }
}

impl<'a> Sub<&'a GrassmannElement> for &'a GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, rhs: &'a GrassmannElement) -> GrassmannElement {
        self.checked_add(&-rhs).expect("Grassmann ambients must match")
    }
}

impl<'a> Mul<&'a GrassmannElement> for &'a GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: &'a GrassmannElement) -> GrassmannElement {
        self.checked_mul(rhs).expect("Grassmann ambients must match")
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        self.with_coeffs(coeffs)
    }
}
