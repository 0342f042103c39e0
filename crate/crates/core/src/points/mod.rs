//! The functor of points: homomorphisms from a presentation into Grassmann
//! test algebras, with the truss and semi-brace operations they carry.

mod naturality;
mod truss;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use naturality::{check_naturality, NaturalityCheck, NaturalityReport};
pub use truss::{check_truss, Identity, IdentityResult, Method, Mode, Tables, TrussReport, DEFAULT_BUDGET};

use crate::cotruss::CotrussPresentation;
use crate::error::{Error, Result};
use crate::homs::GenHom;
use crate::superalg::grassmann::MAX_GRASSMANN_GENERATORS;
use crate::superalg::{Field, GrassmannElement, Parity, Scalar, SuperMonomial, Symbol};

/// Half-width of the integer box sampled coefficients are drawn from.
pub const SAMPLE_BOX: i64 = 3;

/// The Grassmann algebra Λ_n over a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TestAlgebra {
    field: Field,
    n: usize,
}

impl TestAlgebra {
    pub fn new(field: Field, n: usize) -> Result<TestAlgebra> {
        if n > MAX_GRASSMANN_GENERATORS {
            return Err(Error::Invalid(format!("at most {MAX_GRASSMANN_GENERATORS} Grassmann generators")));
        }
        Ok(TestAlgebra { field, n })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> GrassmannElement {
        GrassmannElement::zero(self.field, self.n)
    }

    pub fn one(&self) -> GrassmannElement {
        GrassmannElement::one(self.field, self.n)
    }

    pub fn scalar(&self, c: Scalar) -> GrassmannElement {
        GrassmannElement::scalar(self.field, self.n, c)
    }

    pub fn generator(&self, i: usize) -> GrassmannElement {
        GrassmannElement::generator(self.field, self.n, i)
    }

    /// Basis masks of the given parity, ascending.
    pub fn basis(&self, parity: Parity) -> Vec<u32> {
        (0..1u32 << self.n).filter(|m| m.count_ones() as usize % 2 == parity.bit()).collect()
    }

    /// Every element of the given parity, in lexicographic coefficient order
    /// (ascending masks, coefficients `0..p`).
    pub fn elements(&self, parity: Parity) -> Result<Vec<GrassmannElement>> {
        let values = self.field.elements().map_err(|_| Error::InfiniteBase)?;
        let masks = self.basis(parity);
        let p = values.len();
        let count = p.checked_pow(masks.len() as u32).ok_or(Error::Invalid("too many elements".into()))?;
        let mut out = Vec::with_capacity(count);
        for mut code in 0..count {
            let mut e = self.zero();
            for &m in masks.iter().rev() {
                e.set_coeff(m, values[code % p].clone());
                code /= p;
            }
            out.push(e);
        }
        Ok(out)
    }

    /// A random element of the given parity with coefficients from the
    /// sampling box (reduced into the field).
    pub fn random(&self, parity: Parity, rng: &mut ChaCha8Rng) -> GrassmannElement {
        let mut e = self.zero();
        for m in self.basis(parity) {
            e.set_coeff(m, Scalar::from_int(self.field, rng.random_range(-SAMPLE_BOX..=SAMPLE_BOX)));
        }
        e
    }
}

impl fmt::Display for TestAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ{}({})", self.n, self.field)
    }
}

/// A homomorphism from a presentation into a test algebra, stored as the
/// images of all symbols (generators first, then declared inverses).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    images: Vec<GrassmannElement>,
}

impl Point {
    pub fn images(&self) -> &[GrassmannElement] {
        &self.images
    }

    pub fn image(&self, symbol: usize) -> &GrassmannElement {
        &self.images[symbol]
    }
}

/// A normal-form monomial as the ordered list of symbols to multiply.
type Word = Vec<usize>;

/// An image of a structure map, compiled for point evaluation.
#[derive(Debug, Clone)]
struct Compiled {
    terms: Vec<(Scalar, Vec<Word>)>,
}

fn word(p: &CotrussPresentation, m: &SuperMonomial) -> Word {
    let g = p.gens();
    let mut w = Vec::new();
    for (k, &e) in m.even_exponents().iter().enumerate() {
        let gen = g.even_gen(k);
        let sym = if e >= 0 { gen } else { g.symbol_index(Symbol::Inverse(gen)) };
        w.extend(std::iter::repeat_n(sym, e.unsigned_abs() as usize));
    }
    w.extend(m.odd_support().iter().map(|&k| g.odd_gen(k as usize)));
    w
}

fn compile(p: &CotrussPresentation, h: &GenHom) -> Vec<Compiled> {
    h.images()
        .iter()
        .map(|img| Compiled {
            terms: img.terms().map(|(m, c)| (c.clone(), m.factors().iter().map(|f| word(p, f)).collect())).collect(),
        })
        .collect()
}

/// `T(A)`: the points of a presentation over one test algebra, with the
/// product, heap and brace operations.
#[derive(Debug, Clone)]
pub struct PointSpace {
    presentation: Arc<CotrussPresentation>,
    algebra: TestAlgebra,
    delta2: Vec<Compiled>,
    delta3: Vec<Compiled>,
    unit: Option<Point>,
    zero: Option<Point>,
}

impl PointSpace {
    /// Points of `p` over `algebra`; the presentation is moved to the
    /// algebra's field first.
    pub fn new(p: &CotrussPresentation, algebra: TestAlgebra) -> Result<PointSpace> {
        let p = Arc::new(p.base_change(algebra.field())?);
        let constant = |h: &GenHom| Point {
            images: h.images().iter().map(|c| algebra.scalar(c.to_scalar().expect("arity 0"))).collect(),
        };
        Ok(PointSpace {
            delta2: compile(&p, p.delta2()),
            delta3: compile(&p, p.delta3()),
            unit: p.counit().map(constant),
            zero: p.cozero().map(constant),
            algebra,
            presentation: p,
        })
    }

    pub fn presentation(&self) -> &Arc<CotrussPresentation> {
        &self.presentation
    }

    pub fn algebra(&self) -> TestAlgebra {
        self.algebra
    }

    fn symbols(&self) -> usize {
        self.presentation.gens().symbol_count()
    }

    /// Builds a point from generator images, computing inverse images, and
    /// validates it.
    pub fn point(&self, gen_images: Vec<GrassmannElement>) -> Result<Point> {
        let g = self.presentation.gens();
        if gen_images.len() != g.len() {
            return Err(Error::ArityMismatch { expected: g.len(), found: gen_images.len() });
        }
        let mut images = gen_images;
        for i in 0..g.len() {
            if g.is_invertible(i) {
                let inv = images[i].inverse().map_err(|_| Error::InvertibilityViolation(g.gens()[i].name.clone()))?;
                images.push(inv);
            }
        }
        let p = Point { images };
        self.validate(&p)?;
        Ok(p)
    }

    /// Parity, Grassmann relation and invertible-pair checks.
    pub fn validate(&self, p: &Point) -> Result<()> {
        let g = self.presentation.gens();
        if p.images.len() != self.symbols() {
            return Err(Error::ArityMismatch { expected: self.symbols(), found: p.images.len() });
        }
        for (s, img) in p.images.iter().enumerate() {
            if img.generators() != self.algebra.n || img.field() != self.algebra.field {
                return Err(Error::AmbientMismatch { left: self.algebra.n, right: img.generators() });
            }
            let parity = g.symbol_parity(s);
            if !img.is_homogeneous_of(parity) {
                return Err(Error::ParityViolation(g.symbol_name(s).into()));
            }
            if parity == Parity::Odd && !(img * img).is_zero() {
                return Err(Error::GrassmannRelationViolation(g.symbol_name(s).into()));
            }
        }
        for i in 0..g.len() {
            if let Some(inv) = g.inverse_symbol(i) {
                if !(&p.images[i] * &p.images[inv]).is_one() {
                    return Err(Error::InvertibilityViolation(g.gens()[i].name.clone()));
                }
            }
        }
        Ok(())
    }

    fn eval(&self, map: &[Compiled], pts: &[&Point]) -> Point {
        let images = map
            .iter()
            .map(|c| {
                let mut sum = self.algebra.zero();
                for (coeff, words) in &c.terms {
                    let mut acc = self.algebra.scalar(coeff.clone());
                    for (w, p) in words.iter().zip(pts) {
                        for &s in w {
                            acc = &acc * &p.images[s];
                        }
                    }
                    sum = &sum + &acc;
                }
                sum
            })
            .collect();
        Point { images }
    }

    /// `st := m⁽²⁾ ∘ (s ⊗ t) ∘ Δ²`.
    pub fn mul(&self, s: &Point, t: &Point) -> Point {
        self.eval(&self.delta2, &[s, t])
    }

    /// `[s,t,u] := m⁽³⁾ ∘ (s ⊗ t ⊗ u) ∘ Δ³`.
    pub fn heap(&self, s: &Point, t: &Point, u: &Point) -> Point {
        self.eval(&self.delta3, &[s, t, u])
    }

    /// `e := ! ∘ ε_unit`.
    pub fn unit(&self) -> Result<&Point> {
        self.unit.as_ref().ok_or(Error::MissingMap("counit"))
    }

    /// `z := ! ∘ ε_zero`.
    pub fn zero(&self) -> Result<&Point> {
        self.zero.as_ref().ok_or(Error::MissingMap("cozero"))
    }

    /// `t +_e u := [t, e, u]`.
    pub fn brace_add(&self, t: &Point, u: &Point) -> Result<Point> {
        Ok(self.heap(t, self.unit()?, u))
    }

    /// `−_e t := [e, t, e]`.
    pub fn brace_neg(&self, t: &Point) -> Result<Point> {
        let e = self.unit()?;
        Ok(self.heap(e, t, e))
    }

    /// `a −_e b := a +_e (−_e b)`.
    pub fn brace_sub(&self, a: &Point, b: &Point) -> Result<Point> {
        self.brace_add(a, &self.brace_neg(b)?)
    }

    /// Multiplies the images of the odd generators by `q`.
    pub fn scale_odd(&self, p: &Point, q: &Scalar) -> Point {
        let g = self.presentation.gens();
        let images = p
            .images
            .iter()
            .enumerate()
            .map(|(s, img)| if g.symbol_parity(s) == Parity::Odd { img.scale(q) } else { img.clone() })
            .collect();
        Point { images }
    }

    /// Number of points, or `None` over an infinite field.
    pub fn point_count(&self) -> Option<u128> {
        let q = self.algebra.field.order()? as u128;
        let g = self.presentation.gens();
        let half = if self.algebra.n == 0 { 1 } else { 1u32 << (self.algebra.n - 1) };
        let mut total = 1u128;
        for i in 0..g.len() {
            let per = match g.gens()[i].parity {
                Parity::Odd if self.algebra.n == 0 => 1,
                Parity::Odd => q.checked_pow(half)?,
                Parity::Even if g.is_invertible(i) => (q - 1) * q.checked_pow(half - 1)?,
                Parity::Even => q.checked_pow(half)?,
            };
            total = total.checked_mul(per)?;
        }
        Some(total)
    }

    /// All points in deterministic order: generator images vary
    /// lexicographically, the last generator fastest. Invertible generators
    /// range over elements with nonzero scalar part.
    pub fn enumerate(&self) -> Result<Vec<Point>> {
        let g = self.presentation.gens().clone();
        let mut choices = Vec::with_capacity(g.len());
        for (i, gen) in g.gens().iter().enumerate() {
            let mut elems = self.algebra.elements(gen.parity)?;
            if g.is_invertible(i) {
                elems.retain(|e| !e.scalar_part().is_zero());
            }
            choices.push(elems);
        }
        let total: usize = choices.iter().map(Vec::len).product();
        let mut out = Vec::with_capacity(total);
        for mut code in 0..total {
            let mut imgs = vec![self.algebra.zero(); g.len()];
            for i in (0..g.len()).rev() {
                let c = &choices[i];
                imgs[i] = c[code % c.len()].clone();
                code /= c.len();
            }
            out.push(self.point(imgs)?);
        }
        Ok(out)
    }

    /// A pseudorandom point; coefficients come from the sampling box and
    /// invertible generators are resampled until their scalar part is nonzero.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Point {
        let g = self.presentation.gens();
        let imgs = g
            .gens()
            .iter()
            .enumerate()
            .map(|(i, gen)| loop {
                let e = self.algebra.random(gen.parity, rng);
                if !g.is_invertible(i) || !e.scalar_part().is_zero() {
                    break e;
                }
            })
            .collect();
        self.point(imgs).expect("sampled images satisfy the relations")
    }

    /// `{x: …, theta: …}` over the generators.
    pub fn render(&self, p: &Point) -> String {
        let g = self.presentation.gens();
        let body: Vec<String> =
            g.gens().iter().zip(&p.images).map(|(gen, img)| format!("{}: {}", gen.name, img)).collect();
        format!("{{{}}}", body.join(", "))
    }
}

/// A superalgebra homomorphism `Λ_m → Λ_n`, fixed by the (odd) images of
/// the generators ξ_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestAlgebraHom {
    source: TestAlgebra,
    target: TestAlgebra,
    images: Vec<GrassmannElement>,
}

impl TestAlgebraHom {
    pub fn new(source: TestAlgebra, target: TestAlgebra, images: Vec<GrassmannElement>) -> Result<TestAlgebraHom> {
        if source.field != target.field {
            return Err(Error::Invalid("test algebras over different fields".into()));
        }
        if images.len() != source.n {
            return Err(Error::ArityMismatch { expected: source.n, found: images.len() });
        }
        for (i, img) in images.iter().enumerate() {
            if img.generators() != target.n || img.field() != target.field {
                return Err(Error::AmbientMismatch { left: target.n, right: img.generators() });
            }
            if !img.is_homogeneous_of(Parity::Odd) {
                return Err(Error::ParityViolation(format!("xi{}", i + 1)));
            }
            if !(img * img).is_zero() {
                return Err(Error::GrassmannRelationViolation(format!("xi{}", i + 1)));
            }
        }
        Ok(TestAlgebraHom { source, target, images })
    }

    pub fn identity(a: TestAlgebra) -> TestAlgebraHom {
        let images = (0..a.n).map(|i| a.generator(i)).collect();
        TestAlgebraHom { source: a, target: a, images }
    }

    /// Random odd images, coefficients from the sampling box.
    pub fn random(source: TestAlgebra, target: TestAlgebra, rng: &mut ChaCha8Rng) -> Result<TestAlgebraHom> {
        let images = (0..source.n).map(|_| target.random(Parity::Odd, rng)).collect();
        TestAlgebraHom::new(source, target, images)
    }

    pub fn source(&self) -> TestAlgebra {
        self.source
    }

    pub fn target(&self) -> TestAlgebra {
        self.target
    }

    pub fn apply(&self, a: &GrassmannElement) -> GrassmannElement {
        let mut out = self.target.zero();
        for (mask, c) in a.terms() {
            let mut term = self.target.scalar(c.clone());
            for i in 0..self.source.n {
                if mask >> i & 1 == 1 {
                    term = &term * &self.images[i];
                }
            }
            out = &out + &term;
        }
        out
    }

    /// `T(ψ)(s) = ψ ∘ s`.
    pub fn pushforward(&self, p: &Point) -> Point {
        Point { images: p.images.iter().map(|img| self.apply(img)).collect() }
    }
}

#[cfg(test)]
mod tests;
