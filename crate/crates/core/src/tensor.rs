//! Graded tensor powers `X^{⊗k}` with Koszul-signed multiplication, signed
//! permutations of factors, multiplication collapses and the structure maps
//! `m135` / `m246`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::superalg::poly::{render_terms, same_gens};
use crate::superalg::{GeneratorSet, Parity, Scalar, SuperMonomial, SuperPoly};

/// How the swap of tensor factors 1 and 3 is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SwapConvention {
    /// Koszul signs for every pair of odd factors that cross.
    #[default]
    Graded,
    /// Plain set-theoretic rearrangement, no signs.
    Plain,
}

/// `m_1 ⊗ … ⊗ m_k` of canonical monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorMonomial(pub Vec<SuperMonomial>);

impl TensorMonomial {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn factors(&self) -> &[SuperMonomial] {
        &self.0
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.0.iter().filter(|m| m.parity().is_odd()).count())
    }

    pub fn parities(&self) -> Vec<usize> {
        self.0.iter().map(|m| m.parity().bit()).collect()
    }
}

/// An element of the `arity`-fold graded tensor power of a presentation.
/// Arity 0 is the base field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    gens: Arc<GeneratorSet>,
    arity: usize,
    terms: BTreeMap<TensorMonomial, Scalar>,
}

impl TensorElement {
    pub fn zero(gens: &Arc<GeneratorSet>, arity: usize) -> TensorElement {
        TensorElement { gens: gens.clone(), arity, terms: BTreeMap::new() }
    }

    /// `1 ⊗ … ⊗ 1`.
    pub fn one(gens: &Arc<GeneratorSet>, arity: usize) -> TensorElement {
        let mut t = TensorElement::zero(gens, arity);
        t.add_term(TensorMonomial(vec![SuperMonomial::one(gens); arity]), Scalar::one(gens.field()));
        t
    }

    pub fn scalar(gens: &Arc<GeneratorSet>, c: Scalar) -> TensorElement {
        let mut t = TensorElement::zero(gens, 0);
        t.add_term(TensorMonomial(vec![]), c);
        t
    }

    pub fn from_poly(p: &SuperPoly) -> TensorElement {
        let mut t = TensorElement::zero(p.gens(), 1);
        for (m, c) in p.terms() {
            t.add_term(TensorMonomial(vec![m.clone()]), c.clone());
        }
        t
    }

    /// The decomposable tensor `p_1 ⊗ … ⊗ p_k`, expanded bilinearly.
    pub fn decomposable(gens: &Arc<GeneratorSet>, factors: &[SuperPoly]) -> Result<TensorElement> {
        let mut acc = TensorElement::one(gens, 0);
        for f in factors {
            if !same_gens(gens, f.gens()) {
                return Err(Error::GeneratorMismatch);
            }
            acc = acc.concat(&TensorElement::from_poly(f))?;
        }
        Ok(acc)
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&TensorMonomial, &Scalar)> {
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

    pub(crate) fn add_term(&mut self, m: TensorMonomial, c: Scalar) {
        debug_assert_eq!(m.arity(), self.arity);
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

    /// Arity-1 element as a plain algebra element.
    pub fn to_poly(&self) -> Result<SuperPoly> {
        if self.arity != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: self.arity });
        }
        let mut p = SuperPoly::zero(&self.gens);
        for (m, c) in &self.terms {
            p.add_term(m.0[0].clone(), c.clone());
        }
        Ok(p)
    }

    /// Arity-0 element as a scalar.
    pub fn to_scalar(&self) -> Result<Scalar> {
        if self.arity != 0 {
            return Err(Error::ArityMismatch { expected: 0, found: self.arity });
        }
        Ok(self.terms.values().next().cloned().unwrap_or_else(|| Scalar::zero(self.gens.field())))
    }

    fn check_compatible(&self, other: &TensorElement) -> Result<()> {
        if !same_gens(&self.gens, &other.gens) {
            return Err(Error::GeneratorMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero(&self.gens, self.arity);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    /// Factorwise product with sign `(−1)^{Σ_{i>j} ã_i b̃_j}`.
    pub fn checked_mul(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_compatible(other)?;
        let mut out = TensorElement::zero(&self.gens, self.arity);
        for (ma, ca) in &self.terms {
            let pa = ma.parities();
            for (mb, cb) in &other.terms {
                let pb = mb.parities();
                let mut crossings = 0usize;
                let mut odd_after = 0usize;
                for j in (0..self.arity).rev() {
                    crossings += pb[j] * odd_after;
                    odd_after += pa[j];
                }
                let mut negate = crossings % 2 == 1;
                let mut factors = Vec::with_capacity(self.arity);
                let mut dead = false;
                for (a, b) in ma.0.iter().zip(&mb.0) {
                    match a.mul(b) {
                        Some((m, s)) => {
                            negate ^= s;
                            factors.push(m);
                        }
                        None => {
                            dead = true;
                            break;
                        }
                    }
                }
                if dead {
                    continue;
                }
                let c = ca * cb;
                out.add_term(TensorMonomial(factors), if negate { -c } else { c });
            }
        }
        Ok(out)
    }

    /// External tensor product `self ⊗ other`: factors are juxtaposed, so no
    /// sign arises.
    pub fn concat(&self, other: &TensorElement) -> Result<TensorElement> {
        if !same_gens(&self.gens, &other.gens) {
            return Err(Error::GeneratorMismatch);
        }
        let mut out = TensorElement::zero(&self.gens, self.arity + other.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut f = ma.0.clone();
                f.extend(mb.0.iter().cloned());
                out.add_term(TensorMonomial(f), ca * cb);
            }
        }
        Ok(out)
    }

    /// Rearranges factors: output position `j` receives source factor
    /// `perm[j]`. Under the graded convention every pair of odd factors whose
    /// relative order is inverted contributes a factor −1.
    pub fn koszul_permute(&self, perm: &[usize], convention: SwapConvention) -> Result<TensorElement> {
        if perm.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: perm.len() });
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        let mut out = TensorElement::zero(&self.gens, self.arity);
        for (m, c) in &self.terms {
            let par = m.parities();
            let mut sign = 0usize;
            if convention == SwapConvention::Graded {
                for j in 0..perm.len() {
                    for k in j + 1..perm.len() {
                        if perm[j] > perm[k] {
                            sign += par[perm[j]] * par[perm[k]];
                        }
                    }
                }
            }
            let factors = perm.iter().map(|&p| m.0[p].clone()).collect();
            out.add_term(TensorMonomial(factors), if sign % 2 == 1 { -c } else { c.clone() });
        }
        Ok(out)
    }

    /// The ordered product `x_1 x_2 … x_k` of all factors.
    pub fn mult_collapse(&self) -> SuperPoly {
        let collapsed = self.collapse_range(0, self.arity).expect("full range is valid");
        if self.arity == 0 {
            return SuperPoly::constant(&self.gens, collapsed.to_scalar().expect("arity 0"));
        }
        collapsed.to_poly().expect("arity 1")
    }

    /// Multiplies the `len` consecutive factors starting at `start` into one
    /// factor; the other factors are untouched. Multiplication is even, so only
    /// the normal-forming of the product produces signs.
    pub fn collapse_range(&self, start: usize, len: usize) -> Result<TensorElement> {
        if start + len > self.arity || (len == 0 && self.arity > 0) {
            return Err(Error::ArityMismatch { expected: self.arity, found: start + len });
        }
        if self.arity == 0 {
            return Ok(self.clone());
        }
        let mut out = TensorElement::zero(&self.gens, self.arity - len + 1);
        'terms: for (m, c) in &self.terms {
            let mut prod = m.0[start].clone();
            let mut negate = false;
            for f in &m.0[start + 1..start + len] {
                match prod.mul(f) {
                    Some((p, s)) => {
                        prod = p;
                        negate ^= s;
                    }
                    None => continue 'terms,
                }
            }
            let mut factors = m.0[..start].to_vec();
            factors.push(prod);
            factors.extend(m.0[start + len..].iter().cloned());
            out.add_term(TensorMonomial(factors), if negate { -c } else { c.clone() });
        }
        Ok(out)
    }

    /// `x_1⊗…⊗x_6 ↦ (−1)^ε (x_1 x_3 x_5) ⊗ x_2 ⊗ x_4 ⊗ x_6`,
    /// `ε = x̃_2 x̃_3 + x̃_5 x̃_4 + x̃_5 x̃_2`.
    pub fn m135(&self) -> Result<TensorElement> {
        self.six_to_four(|f| {
            [
                [f[0].clone(), f[2].clone(), f[4].clone()].to_vec(),
                vec![f[1].clone()],
                vec![f[3].clone()],
                vec![f[5].clone()],
            ]
        })
    }

    /// `x_1⊗…⊗x_6 ↦ (−1)^ε x_1 ⊗ x_3 ⊗ x_5 ⊗ (x_2 x_4 x_6)` with the same ε.
    pub fn m246(&self) -> Result<TensorElement> {
        self.six_to_four(|f| {
            [
                vec![f[0].clone()],
                vec![f[2].clone()],
                vec![f[4].clone()],
                [f[1].clone(), f[3].clone(), f[5].clone()].to_vec(),
            ]
        })
    }

    fn six_to_four(&self, group: impl Fn(&[SuperMonomial]) -> [Vec<SuperMonomial>; 4]) -> Result<TensorElement> {
        if self.arity != 6 {
            return Err(Error::ArityMismatch { expected: 6, found: self.arity });
        }
        let mut out = TensorElement::zero(&self.gens, 4);
        'terms: for (m, c) in &self.terms {
            let p = m.parities();
            let eps = p[1] * p[2] + p[4] * p[3] + p[4] * p[1];
            let mut negate = eps % 2 == 1;
            let mut factors = Vec::with_capacity(4);
            for chunk in group(&m.0) {
                let mut prod = chunk[0].clone();
                for f in &chunk[1..] {
                    match prod.mul(f) {
                        Some((q, s)) => {
                            prod = q;
                            negate ^= s;
                        }
                        None => continue 'terms,
                    }
                }
                factors.push(prod);
            }
            out.add_term(TensorMonomial(factors), if negate { -c } else { c.clone() });
        }
        Ok(out)
    }

    /// Sets every odd generator to zero in every factor.
    pub fn drop_odd(&self) -> TensorElement {
        let mut out = TensorElement::zero(&self.gens, self.arity);
        for (m, c) in &self.terms {
            if m.0.iter().all(|f| !f.has_odd()) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Total parity of a nonzero homogeneous element.
    pub fn homogeneous_parity(&self) -> Option<crate::superalg::Parity> {
        let mut it = self.terms.keys().map(TensorMonomial::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, p: Parity) -> bool {
        self.terms.keys().all(|m| m.parity() == p)
    }

    /// Rebuilds the element over another generator set by name, applying
    /// `f` to each factor (used by reduction and base change).
    pub(crate) fn map_factors_poly(
        &self,
        target: &Arc<GeneratorSet>,
        f: impl Fn(&SuperPoly) -> Result<SuperPoly>,
    ) -> Result<TensorElement> {
        let mut out = TensorElement::zero(target, self.arity);
        for (m, c) in &self.terms {
            let mut acc = TensorElement::scalar(target, c.convert(target.field())?);
            for factor in &m.0 {
                let p = SuperPoly::monomial(&self.gens, factor.clone(), Scalar::one(self.gens.field()));
                acc = acc.concat(&TensorElement::from_poly(&f(&p)?))?;
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s =
            render_terms(self.terms.iter().rev().map(|(m, c)| (m.0.iter().map(|x| x.render(&self.gens)).collect(), c)));
        f.write_str(&s)
    }
}

impl<'a> Add<&'a TensorElement> for &'a TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &'a TensorElement) -> TensorElement {
        self.checked_add(rhs).expect("tensor operands must match")
    }
}

impl<'a> Sub<&'a TensorElement> for &'a TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &'a TensorElement) -> TensorElement {
        self.checked_add(&-rhs).expect("tensor operands must match")
    }
}

impl<'a> Mul<&'a TensorElement> for &'a TensorElement {
    type Output = TensorElement;
    fn mul(self, rhs: &'a TensorElement) -> TensorElement {
        self.checked_mul(rhs).expect("tensor operands must match")
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self.scale(&-Scalar::one(self.gens.field()))
    }
}
