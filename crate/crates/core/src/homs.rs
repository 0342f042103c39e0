//! Superalgebra homomorphisms given by their values on generators.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::superalg::poly::same_gens;
use crate::superalg::{GeneratorSet, Parity, Scalar, SuperMonomial, SuperPoly, Symbol};
use crate::tensor::{TensorElement, TensorMonomial};

/// An even superalgebra homomorphism `X → Y^{⊗arity}` (arity 0 means the
/// base field) determined by the images of all symbols of `X`: generators
/// first, then the declared inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenHom {
    source: Arc<GeneratorSet>,
    target: Arc<GeneratorSet>,
    arity: usize,
    images: Vec<TensorElement>,
    identity: bool,
}

impl GenHom {
    pub fn new(
        source: &Arc<GeneratorSet>,
        target: &Arc<GeneratorSet>,
        arity: usize,
        images: Vec<TensorElement>,
    ) -> Result<GenHom> {
        if images.len() != source.symbol_count() {
            let missing = source.symbol_name(images.len().min(source.symbol_count().saturating_sub(1)));
            return Err(Error::MissingImage(missing.to_string()));
        }
        for img in &images {
            if !same_gens(img.gens(), target) {
                return Err(Error::GeneratorMismatch);
            }
            if img.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: img.arity() });
            }
        }
        Ok(GenHom { source: source.clone(), target: target.clone(), arity, images, identity: false })
    }

    /// Builds a map into `X` itself (arity 1) from plain images.
    pub fn from_polys(source: &Arc<GeneratorSet>, target: &Arc<GeneratorSet>, images: &[SuperPoly]) -> Result<GenHom> {
        GenHom::new(source, target, 1, images.iter().map(TensorElement::from_poly).collect())
    }

    /// A map into the base field from scalar images.
    pub fn from_scalars(source: &Arc<GeneratorSet>, images: &[Scalar]) -> Result<GenHom> {
        let imgs = images.iter().map(|c| TensorElement::scalar(source, c.clone())).collect();
        GenHom::new(source, source, 0, imgs)
    }

    pub fn identity(gens: &Arc<GeneratorSet>) -> GenHom {
        let images = (0..gens.symbol_count())
            .map(|i| TensorElement::from_poly(&SuperPoly::symbol(gens, gens.symbol(i))))
            .collect();
        GenHom { source: gens.clone(), target: gens.clone(), arity: 1, images, identity: true }
    }

    pub fn source(&self) -> &Arc<GeneratorSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GeneratorSet> {
        &self.target
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn images(&self) -> &[TensorElement] {
        &self.images
    }

    pub fn image(&self, symbol: usize) -> &TensorElement {
        &self.images[symbol]
    }

    /// Verifies parity preservation, `h(θ)² = 0` for odd generators and
    /// `h(x)·h(x⁻¹) = 1` for invertible pairs.
    pub fn check_well_defined(&self) -> Result<()> {
        let gens = &self.source;
        for s in 0..gens.symbol_count() {
            let img = &self.images[s];
            let parity = gens.symbol_parity(s);
            if !img.is_homogeneous_of(parity) {
                return Err(Error::ParityViolation(gens.symbol_name(s).into()));
            }
            if parity == Parity::Odd && !img.checked_mul(img)?.is_zero() {
                return Err(Error::GrassmannRelationViolation(gens.symbol_name(s).into()));
            }
        }
        let one = TensorElement::one(&self.target, self.arity);
        for g in 0..gens.len() {
            if let Some(inv) = gens.inverse_symbol(g) {
                let prod = self.images[g].checked_mul(&self.images[inv])?;
                if prod != one {
                    return Err(Error::InvertibilityViolation(gens.gens()[g].name.clone()));
                }
            }
        }
        Ok(())
    }

    /// Image of a normal-form monomial: the ordered product of symbol images,
    /// using the inverse image for negative exponents.
    pub fn apply_monomial(&self, m: &SuperMonomial) -> TensorElement {
        let gens = &self.source;
        if self.identity {
            let mut t = TensorElement::zero(&self.target, 1);
            t.add_term(TensorMonomial(vec![m.clone()]), Scalar::one(gens.field()));
            return t;
        }
        let mut acc = TensorElement::one(&self.target, self.arity);
        for (k, &e) in m.even_exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let g = gens.even_gen(k);
            let sym = if e > 0 { g } else { gens.symbol_index(Symbol::Inverse(g)) };
            for _ in 0..e.unsigned_abs() {
                acc = &acc * &self.images[sym];
            }
        }
        for &k in m.odd_support() {
            acc = &acc * &self.images[gens.odd_gen(k as usize)];
        }
        acc
    }

    pub fn apply(&self, a: &SuperPoly) -> Result<TensorElement> {
        if !same_gens(a.gens(), &self.source) {
            return Err(Error::GeneratorMismatch);
        }
        let mut out = TensorElement::zero(&self.target, self.arity);
        for (m, c) in a.terms() {
            out = out.checked_add(&self.apply_monomial(m).scale(c))?;
        }
        Ok(out)
    }

    /// `g ∘ self`: applies `g` factorwise to every image of `self`.
    pub fn then(&self, g: &GenHom) -> Result<GenHom> {
        let maps = vec![g; self.arity];
        let images =
            self.images.iter().map(|img| apply_factorwise(&maps, img, g.target())).collect::<Result<Vec<_>>>()?;
        GenHom::new(&self.source, g.target(), g.arity * self.arity, images)
    }
}

/// `compose(g, h) = g ∘ h`.
pub fn compose(g: &GenHom, h: &GenHom) -> Result<GenHom> {
    if !same_gens(h.target(), g.source()) {
        return Err(Error::GeneratorMismatch);
    }
    h.then(g)
}

/// Applies `h_1 ⊗ … ⊗ h_k` to an arity-`k` tensor. All maps are even, so
/// tensoring them introduces no signs. `target` is needed for arity 0.
pub fn apply_factorwise(maps: &[&GenHom], t: &TensorElement, target: &Arc<GeneratorSet>) -> Result<TensorElement> {
    if maps.len() != t.arity() {
        return Err(Error::ArityMismatch { expected: t.arity(), found: maps.len() });
    }
    for h in maps {
        if !same_gens(h.source(), t.gens()) || !same_gens(h.target(), target) {
            return Err(Error::GeneratorMismatch);
        }
    }
    let arity = maps.iter().map(|h| h.arity()).sum();
    let mut out = TensorElement::zero(target, arity);
    for (m, c) in t.terms() {
        let mut acc = TensorElement::scalar(target, c.clone());
        for (h, f) in maps.iter().zip(m.factors()) {
            acc = acc.concat(&h.apply_monomial(f))?;
            if acc.is_zero() {
                break;
            }
        }
        if !acc.is_zero() {
            out = out.checked_add(&acc)?;
        }
    }
    Ok(out)
}

/// `h_1 ⊗ … ⊗ h_k` as a map `X^{⊗k} → Y^{⊗Σ arity}` applied to a tensor;
/// convenience over [`apply_factorwise`] when all maps share a target.
pub fn tensor_hom(maps: &[&GenHom], t: &TensorElement) -> Result<TensorElement> {
    let target = maps.first().map(|h| h.target().clone()).unwrap_or_else(|| t.gens().clone());
    apply_factorwise(maps, t, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::{Field, Generator};

    fn gens() -> Arc<GeneratorSet> {
        Arc::new(GeneratorSet::new(Field::Rational, vec![Generator::even("x"), Generator::odd("theta")]).unwrap())
    }

    fn t(g: &Arc<GeneratorSet>, terms: &[(i64, &[&str])]) -> TensorElement {
        let mut acc: Option<TensorElement> = None;
        for (c, names) in terms {
            let f: Vec<SuperPoly> = names
                .iter()
                .map(|n| if *n == "1" { SuperPoly::one(g) } else { SuperPoly::var(g, n).unwrap() })
                .collect();
            let e = TensorElement::decomposable(g, &f).unwrap().scale(&Scalar::from_int(Field::Rational, *c));
            acc = Some(match acc {
                None => e,
                Some(a) => &a + &e,
            });
        }
        acc.unwrap()
    }

    fn delta2(g: &Arc<GeneratorSet>) -> GenHom {
        GenHom::new(
            g,
            g,
            2,
            vec![
                t(g, &[(1, &["x", "x"]), (1, &["theta", "theta"])]),
                t(g, &[(1, &["x", "theta"]), (1, &["theta", "x"])]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn coproduct_is_well_defined() {
        let g = gens();
        assert_eq!(delta2(&g).check_well_defined(), Ok(()));
    }

    #[test]
    fn parity_violation_names_generator() {
        let g = gens();
        let x = SuperPoly::var(&g, "x").unwrap();
        let h = GenHom::from_polys(&g, &g, &[x.clone(), x]).unwrap();
        assert_eq!(h.check_well_defined(), Err(Error::ParityViolation("theta".into())));
    }

    #[test]
    fn invertibility_violation() {
        let g = Arc::new(GeneratorSet::new(Field::Rational, vec![Generator::invertible("x", "xinv")]).unwrap());
        let x = SuperPoly::var(&g, "x").unwrap();
        let h = GenHom::from_polys(&g, &g, &[x.clone(), x]).unwrap();
        assert_eq!(h.check_well_defined(), Err(Error::InvertibilityViolation("x".into())));
    }

    #[test]
    fn apply_is_multiplicative_on_a_product() {
        let g = gens();
        let d = delta2(&g);
        let x = SuperPoly::var(&g, "x").unwrap();
        let th = SuperPoly::var(&g, "theta").unwrap();
        let lhs = d.apply(&(&x * &th)).unwrap();
        let rhs = &d.apply(&x).unwrap() * &d.apply(&th).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(d.apply(&SuperPoly::one(&g)).unwrap(), TensorElement::one(&g, 2));
    }

    #[test]
    fn counit_on_the_left_recovers_x() {
        let g = gens();
        let one = Scalar::one(Field::Rational);
        let eps = GenHom::from_scalars(&g, &[one, Scalar::zero(Field::Rational)]).unwrap();
        let id = GenHom::identity(&g);
        let x = SuperPoly::var(&g, "x").unwrap();
        let d = delta2(&g).apply(&x).unwrap();
        let out = apply_factorwise(&[&eps, &id], &d, &g).unwrap();
        assert_eq!(out.to_poly().unwrap(), x);
    }

    #[test]
    fn identity_is_neutral_for_composition() {
        let g = gens();
        let d = delta2(&g);
        let id = GenHom::identity(&g);
        assert_eq!(compose(&d, &id).unwrap().images(), d.images());
        assert_eq!(compose(&id, &GenHom::identity(&g)).unwrap().images(), id.images());
    }
}
