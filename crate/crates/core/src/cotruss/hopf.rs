use super::CotrussPresentation;
use crate::error::{Error, Result};
use crate::homs::{apply_factorwise, GenHom};
use crate::superalg::poly::same_gens;

/// How the double coproduct `Δ₂ : X → X^{⊗3}` is bracketed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Bracketing {
    /// `(Δ ⊗ 1) ∘ Δ`
    #[default]
    Left,
    /// `(1 ⊗ Δ) ∘ Δ`
    Right,
}

/// Turns an abelian Hopf superalgebra into a supercotruss with
/// `Δ² := Δ` and `Δ³ := (1 ⊗ S ⊗ 1) ∘ Δ₂`.
pub fn trussify_hopf(
    delta: &GenHom,
    antipode: &GenHom,
    counit: Option<&GenHom>,
    bracketing: Bracketing,
) -> Result<CotrussPresentation> {
    let g = delta.source();
    if delta.arity() != 2 {
        return Err(Error::ArityMismatch { expected: 2, found: delta.arity() });
    }
    if antipode.arity() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: antipode.arity() });
    }
    if !same_gens(antipode.source(), g) || !same_gens(antipode.target(), g) {
        return Err(Error::GeneratorMismatch);
    }
    delta.check_well_defined()?;
    antipode.check_well_defined()?;
    let id = GenHom::identity(g);
    let images = delta
        .images()
        .iter()
        .map(|d| {
            let twice = match bracketing {
                Bracketing::Left => apply_factorwise(&[delta, &id], d, g)?,
                Bracketing::Right => apply_factorwise(&[&id, delta], d, g)?,
            };
            apply_factorwise(&[&id, antipode, &id], &twice, g)
        })
        .collect::<Result<Vec<_>>>()?;
    let delta3 = GenHom::new(g, g, 3, images)?;
    CotrussPresentation::new(delta.clone(), delta3, counit.cloned(), None)
}
