use serde::Serialize;

use super::{CotrussPresentation, Witness};
use crate::error::{Error, Result};
use crate::homs::{apply_factorwise, GenHom};
use crate::superalg::poly::same_gens;
use crate::tensor::TensorElement;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismCheck {
    pub condition: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub checks: Vec<MorphismCheck>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks that `φ : X → X'` intertwines the structure maps:
/// `Δ'² ∘ φ = (φ⊗φ) ∘ Δ²`, `Δ'³ ∘ φ = (φ⊗φ⊗φ) ∘ Δ³`, and `ε' ∘ φ = ε` for the
/// counit and cozero whenever both sides carry one.
pub fn check_morphism(phi: &GenHom, p: &CotrussPresentation, q: &CotrussPresentation) -> Result<MorphismReport> {
    if !same_gens(phi.source(), p.gens()) || !same_gens(phi.target(), q.gens()) {
        return Err(Error::GeneratorMismatch);
    }
    if phi.arity() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: phi.arity() });
    }
    phi.check_well_defined()?;
    let symbols = p.symbol_elements();
    let images = phi.images().iter().map(TensorElement::to_poly).collect::<Result<Vec<_>>>()?;

    let mut checks = Vec::new();
    let mut compare =
        |condition: &'static str, sides: &dyn Fn(usize) -> Result<(TensorElement, TensorElement)>| -> Result<()> {
            let mut witness = None;
            for (s, (name, _)) in symbols.iter().enumerate() {
                let (lhs, rhs) = sides(s)?;
                if lhs != rhs {
                    witness = Some(Witness { element: name.clone(), lhs: lhs.to_string(), rhs: rhs.to_string() });
                    break;
                }
            }
            checks.push(MorphismCheck { condition, passed: witness.is_none(), checked: symbols.len(), witness });
            Ok(())
        };

    compare("delta2", &|s| {
        Ok((q.delta2().apply(&images[s])?, apply_factorwise(&[phi, phi], p.delta2().image(s), q.gens())?))
    })?;
    compare("delta3", &|s| {
        Ok((q.delta3().apply(&images[s])?, apply_factorwise(&[phi, phi, phi], p.delta3().image(s), q.gens())?))
    })?;
    // Scalars are compared as scalars since the two sides live over different
    // generator sets.
    let scalar_pair = |e_q: &GenHom, e_p: &GenHom, s: usize| -> Result<(TensorElement, TensorElement)> {
        let l = e_q.apply(&images[s])?.to_scalar()?;
        let r = e_p.image(s).to_scalar()?;
        Ok((TensorElement::scalar(q.gens(), l), TensorElement::scalar(q.gens(), r)))
    };
    if let (Some(eq), Some(ep)) = (q.counit(), p.counit()) {
        compare("counit", &|s| scalar_pair(eq, ep, s))?;
    }
    if let (Some(eq), Some(ep)) = (q.cozero(), p.cozero()) {
        compare("cozero", &|s| scalar_pair(eq, ep, s))?;
    }
    Ok(MorphismReport { checks })
}
