use std::sync::Arc;

use super::{trussify_hopf, Bracketing, CotrussPresentation};
use crate::error::{Error, Result};
use crate::homs::GenHom;
use crate::stx::parse_expr;
use crate::superalg::{Field, Generator, GeneratorSet};

pub const BUILTIN_NAMES: [&str; 4] = ["trivial", "poly_theta", "laurent_theta", "laurent_theta_via_hopf"];

fn map(g: &Arc<GeneratorSet>, arity: usize, images: &[&str]) -> GenHom {
    let imgs = images.iter().map(|e| parse_expr(g, e, arity).expect("built-in image parses")).collect();
    GenHom::new(g, g, arity, imgs).expect("built-in map has one image per symbol")
}

/// The built-in presentations over ℚ.
pub fn builtin(name: &str) -> Result<CotrussPresentation> {
    let q = Field::Rational;
    match name {
        // X = 𝕂 with only the two comultiplications, as given.
        "trivial" => {
            let g = Arc::new(GeneratorSet::empty(q));
            CotrussPresentation::new(map(&g, 2, &[]), map(&g, 3, &[]), None, None)
        }
        "poly_theta" => {
            let g = Arc::new(GeneratorSet::new(q, vec![Generator::even("x"), Generator::odd("theta")])?);
            CotrussPresentation::new(
                map(&g, 2, &["x # x + theta # theta", "x # theta + theta # x"]),
                map(&g, 3, &["x # 1 # 1 - 1 # x # 1 + 1 # 1 # x", "theta # 1 # 1 - 1 # theta # 1 + 1 # 1 # theta"]),
                Some(map(&g, 0, &["1", "0"])),
                Some(map(&g, 0, &["0", "0"])),
            )
        }
        "laurent_theta" => {
            let g = laurent_gens()?;
            CotrussPresentation::new(
                map(&g, 2, &["x # x", "x # theta + theta # x", "xinv # xinv"]),
                map(
                    &g,
                    3,
                    &["x # xinv # x", "x # xinv # theta - x # x^-2*theta # x + theta # xinv # x", "xinv # x # xinv"],
                ),
                Some(map(&g, 0, &["1", "0", "1"])),
                None,
            )
        }
        "laurent_theta_via_hopf" => {
            let (delta, antipode, counit) = laurent_hopf_data()?;
            trussify_hopf(&delta, &antipode, Some(&counit), Bracketing::Left)
        }
        other => Err(Error::UnknownBuiltin(other.into())),
    }
}

fn laurent_gens() -> Result<Arc<GeneratorSet>> {
    Ok(Arc::new(GeneratorSet::new(Field::Rational, vec![Generator::invertible("x", "xinv"), Generator::odd("theta")])?))
}

/// Coproduct, antipode and counit of the multiplicative supergroup
/// `𝕂[x, x⁻¹, θ]`.
pub fn laurent_hopf_data() -> Result<(GenHom, GenHom, GenHom)> {
    let g = laurent_gens()?;
    Ok((
        map(&g, 2, &["x # x", "x # theta + theta # x", "xinv # xinv"]),
        map(&g, 1, &["xinv", "-x^-2*theta", "x"]),
        map(&g, 0, &["1", "0", "1"]),
    ))
}
