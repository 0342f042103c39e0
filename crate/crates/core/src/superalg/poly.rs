//! Normal-form elements of a free supercommutative algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::gens::{GeneratorSet, Parity, Slot, Symbol};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// `x^a y^b ... θ_i θ_j ...` with signed even exponents (negative only at
/// invertible generators) and a strictly increasing odd support.
///
/// The derived order (even exponents lexicographically, then odd support) is
/// the canonical monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperMonomial {
    even: Vec<i32>,
    odd: Vec<u16>,
}

impl SuperMonomial {
    pub fn one(gens: &GeneratorSet) -> SuperMonomial {
        SuperMonomial { even: vec![0; gens.even_count()], odd: vec![] }
    }

    /// The monomial of a generator or of a declared inverse (`x^-1`).
    pub fn of_symbol(gens: &GeneratorSet, symbol: Symbol) -> SuperMonomial {
        let mut m = SuperMonomial::one(gens);
        match symbol {
            Symbol::Gen(i) => match gens.slot(i) {
                Slot::Even(k) => m.even[k] = 1,
                Slot::Odd(k) => m.odd.push(k as u16),
            },
            Symbol::Inverse(i) => match gens.slot(i) {
                Slot::Even(k) => m.even[k] = -1,
                Slot::Odd(_) => unreachable!("odd generators are never invertible"),
            },
        }
        m
    }

    /// Builds a monomial from raw parts; `odd` must be strictly increasing.
    pub fn from_parts(gens: &GeneratorSet, even: Vec<i32>, odd: Vec<u16>) -> Result<SuperMonomial> {
        if even.len() != gens.even_count() {
            return Err(Error::Invalid("even exponent vector has the wrong length".into()));
        }
        for (k, &e) in even.iter().enumerate() {
            if e < 0 && !gens.is_invertible(gens.even_gen(k)) {
                return Err(Error::Invalid(format!(
                    "negative exponent at non-invertible `{}`",
                    gens.gens()[gens.even_gen(k)].name
                )));
            }
        }
        if odd.windows(2).any(|w| w[0] >= w[1]) || odd.iter().any(|&k| k as usize >= gens.odd_count()) {
            return Err(Error::Invalid("odd support must be strictly increasing".into()));
        }
        Ok(SuperMonomial { even, odd })
    }

    pub fn even_exponents(&self) -> &[i32] {
        &self.even
    }

    pub fn odd_support(&self) -> &[u16] {
        &self.odd
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.odd.len())
    }

    pub fn is_one(&self) -> bool {
        self.odd.is_empty() && self.even.iter().all(|&e| e == 0)
    }

    pub fn has_odd(&self) -> bool {
        !self.odd.is_empty()
    }

    /// Product in normal form: `None` when an odd generator repeats, otherwise
    /// the monomial and whether the sign flipped while sorting odd factors.
    pub fn mul(&self, other: &SuperMonomial) -> Option<(SuperMonomial, bool)> {
        let even = self.even.iter().zip(&other.even).map(|(a, b)| a + b).collect();
        let (odd, negate) = merge_odd(&self.odd, &other.odd)?;
        Some((SuperMonomial { even, odd }, negate))
    }

    pub fn render(&self, gens: &GeneratorSet) -> String {
        let mut parts = Vec::new();
        for (k, &e) in self.even.iter().enumerate() {
            let name = &gens.gens()[gens.even_gen(k)].name;
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        for &k in &self.odd {
            parts.push(gens.gens()[gens.odd_gen(k as usize)].name.clone());
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Merges two increasing index lists; the sign counts pairs `(i in a, j in b)`
/// with `i > j`, i.e. the transpositions needed to sort `a ++ b`.
pub(crate) fn merge_odd(a: &[u16], b: &[u16]) -> Option<(Vec<u16>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => return None,
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, inversions % 2 == 1))
}

pub(crate) fn same_gens(a: &Arc<GeneratorSet>, b: &Arc<GeneratorSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An element of a finitely presented supercommutative algebra in normal form:
/// a map from monomials to nonzero scalars.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperPoly {
    gens: Arc<GeneratorSet>,
    terms: BTreeMap<SuperMonomial, Scalar>,
}

impl SuperPoly {
    pub fn zero(gens: &Arc<GeneratorSet>) -> SuperPoly {
        SuperPoly { gens: gens.clone(), terms: BTreeMap::new() }
    }

    pub fn one(gens: &Arc<GeneratorSet>) -> SuperPoly {
        SuperPoly::constant(gens, Scalar::one(gens.field()))
    }

    pub fn constant(gens: &Arc<GeneratorSet>, c: Scalar) -> SuperPoly {
        SuperPoly::monomial(gens, SuperMonomial::one(gens), c)
    }

    pub fn monomial(gens: &Arc<GeneratorSet>, m: SuperMonomial, c: Scalar) -> SuperPoly {
        let mut p = SuperPoly::zero(gens);
        p.add_term(m, c);
        p
    }

    /// The generator (or inverse) named by `symbol`.
    pub fn symbol(gens: &Arc<GeneratorSet>, symbol: Symbol) -> SuperPoly {
        SuperPoly::monomial(gens, SuperMonomial::of_symbol(gens, symbol), Scalar::one(gens.field()))
    }

    /// Looks a generator or inverse up by name.
    pub fn var(gens: &Arc<GeneratorSet>, name: &str) -> Result<SuperPoly> {
        let s = gens.lookup(name).ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        Ok(SuperPoly::symbol(gens, s))
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn field(&self) -> Field {
        self.gens.field()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&SuperMonomial, &Scalar)> {
        self.terms.iter()
    }

    /// Number of terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub(crate) fn add_term(&mut self, m: SuperMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&SuperMonomial::one(&self.gens)).cloned().unwrap_or_else(|| Scalar::zero(self.field()))
    }

    pub fn scale(&self, c: &Scalar) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.gens);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    pub fn checked_add(&self, other: &SuperPoly) -> Result<SuperPoly> {
        if !same_gens(&self.gens, &other.gens) {
            return Err(Error::GeneratorMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Supercommutative normal-form product.
    pub fn checked_mul(&self, other: &SuperPoly) -> Result<SuperPoly> {
        if !same_gens(&self.gens, &other.gens) {
            return Err(Error::GeneratorMismatch);
        }
        let mut out = SuperPoly::zero(&self.gens);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negate)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if negate { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> SuperPoly {
        let mut acc = SuperPoly::one(&self.gens);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Splits into even and odd parts.
    pub fn parity_split(&self) -> (SuperPoly, SuperPoly) {
        let mut even = SuperPoly::zero(&self.gens);
        let mut odd = SuperPoly::zero(&self.gens);
        for (m, c) in &self.terms {
            match m.parity() {
                Parity::Even => even.add_term(m.clone(), c.clone()),
                Parity::Odd => odd.add_term(m.clone(), c.clone()),
            }
        }
        (even, odd)
    }

    /// True when every term has parity `p` (vacuously for zero).
    pub fn is_homogeneous_of(&self, p: Parity) -> bool {
        self.terms.keys().all(|m| m.parity() == p)
    }

    /// The parity of a nonzero homogeneous element.
    pub fn homogeneous_parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Sets every odd generator to zero.
    pub fn drop_odd(&self) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.gens);
        for (m, c) in &self.terms {
            if !m.has_odd() {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Re-expresses this element over `target`, which must contain the same
    /// generator names; used for base change and reduction.
    pub fn transport(&self, target: &Arc<GeneratorSet>) -> Result<SuperPoly> {
        let mut out = SuperPoly::zero(target);
        for (m, c) in &self.terms {
            let mut prod = SuperPoly::constant(target, c.convert(target.field())?);
            for (k, &e) in m.even_exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = &self.gens.gens()[self.gens.even_gen(k)].name;
                let sym = match target.lookup(name) {
                    Some(Symbol::Gen(i)) if e > 0 => Symbol::Gen(i),
                    Some(Symbol::Gen(i)) if target.is_invertible(i) => Symbol::Inverse(i),
                    _ => return Err(Error::UnknownGenerator(name.clone())),
                };
                prod = &prod * &SuperPoly::symbol(target, sym).pow(e.unsigned_abs());
            }
            for &k in m.odd_support() {
                let name = &self.gens.gens()[self.gens.odd_gen(k as usize)].name;
                prod = &prod * &SuperPoly::var(target, name)?;
            }
            out = out.checked_add(&prod)?;
        }
        Ok(out)
    }

    pub(crate) fn map_coefficients(&self, f: impl Fn(&SuperMonomial, &Scalar) -> Scalar) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.gens);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(m, c));
        }
        out
    }
}

/// Renders signed terms joined by ` + ` / ` - `. Each term is a list of
/// tensor factors (one factor for plain elements, none for scalars); the
/// coefficient is merged into the first factor.
pub(crate) fn render_terms<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (Vec<String>, &'a Scalar)>,
{
    let mut out = String::new();
    for (i, (mut factors, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if !abs.is_one() {
            match factors.first_mut() {
                None => factors.push(abs.to_string()),
                Some(f) if f == "1" => *f = abs.to_string(),
                Some(f) => *f = format!("{abs}*{f}"),
            }
        } else if factors.is_empty() {
            factors.push("1".into());
        }
        let body = factors.join(" # ");
        out.push_str(match (i, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        });
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render_terms(self.terms.iter().rev().map(|(m, c)| (vec![m.render(&self.gens)], c)));
        f.write_str(&s)
    }
}

impl<'a> Add<&'a SuperPoly> for &'a SuperPoly {
    type Output = SuperPoly;
    fn add(self, rhs: &'a SuperPoly) -> SuperPoly {
        self.checked_add(rhs).expect("generator sets must match")
    }
}

impl<'a> Sub<&'a SuperPoly> for &'a SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: &'a SuperPoly) -> SuperPoly {
        self.checked_add(&-rhs).expect("generator sets must match")
    }
}

impl<'a> Mul<&'a SuperPoly> for &'a SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: &'a SuperPoly) -> SuperPoly {
        self.checked_mul(rhs).expect("generator sets must match")
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        self.map_coefficients(|_, c| -c)
    }
}
