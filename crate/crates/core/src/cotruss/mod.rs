//! Supercotruss presentations: the representing objects of affine
//! supertrusses, with their axiom checker, reduction, Hopf trussification,
//! morphism checker and the built-in examples.

mod axioms;
mod builtin;
mod hopf;
mod morphism;

use std::sync::Arc;

pub use axioms::{
    check_all, check_axioms, check_counit, check_cozero, Axiom, AxiomCheck, AxiomOptions, AxiomReport, Witness,
};
pub use builtin::{builtin, laurent_hopf_data, BUILTIN_NAMES};
pub use hopf::{trussify_hopf, Bracketing};
pub use morphism::{check_morphism, MorphismReport};

use crate::error::{Error, Result};
use crate::homs::GenHom;
use crate::superalg::poly::same_gens;
use crate::superalg::{Field, GeneratorSet, SuperPoly};
use crate::tensor::TensorElement;

/// `(X, Δ², Δ³)` with optional counit and cozero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotrussPresentation {
    gens: Arc<GeneratorSet>,
    delta2: GenHom,
    delta3: GenHom,
    counit: Option<GenHom>,
    cozero: Option<GenHom>,
}

/// Which structure map a mutation touched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureMap {
    Delta2,
    Delta3,
}

/// A presentation with exactly one term of one image negated.
#[derive(Debug, Clone)]
pub struct SignMutation {
    pub map: StructureMap,
    pub symbol: String,
    pub term: usize,
    pub presentation: CotrussPresentation,
}

impl CotrussPresentation {
    /// Assembles and validates a presentation: arities, generator sets and
    /// well-definedness of every map.
    pub fn new(
        delta2: GenHom,
        delta3: GenHom,
        counit: Option<GenHom>,
        cozero: Option<GenHom>,
    ) -> Result<CotrussPresentation> {
        let p = CotrussPresentation::from_parts_unchecked(delta2, delta3, counit, cozero)?;
        p.check_well_defined()?;
        Ok(p)
    }

    /// Assembles a presentation checking only shapes, not well-definedness.
    /// Used to study deliberately broken presentations.
    pub fn from_parts_unchecked(
        delta2: GenHom,
        delta3: GenHom,
        counit: Option<GenHom>,
        cozero: Option<GenHom>,
    ) -> Result<CotrussPresentation> {
        let gens = delta2.source().clone();
        let shapes = [(Some(&delta2), 2), (Some(&delta3), 3), (counit.as_ref(), 0), (cozero.as_ref(), 0)];
        for (map, arity) in shapes {
            let Some(map) = map else { continue };
            if !same_gens(map.source(), &gens) || !same_gens(map.target(), &gens) {
                return Err(Error::GeneratorMismatch);
            }
            if map.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: map.arity() });
            }
        }
        Ok(CotrussPresentation { gens, delta2, delta3, counit, cozero })
    }

    pub fn check_well_defined(&self) -> Result<()> {
        self.delta2.check_well_defined()?;
        self.delta3.check_well_defined()?;
        if let Some(c) = &self.counit {
            c.check_well_defined()?;
        }
        if let Some(c) = &self.cozero {
            c.check_well_defined()?;
        }
        Ok(())
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn field(&self) -> Field {
        self.gens.field()
    }

    pub fn delta2(&self) -> &GenHom {
        &self.delta2
    }

    pub fn delta3(&self) -> &GenHom {
        &self.delta3
    }

    pub fn counit(&self) -> Option<&GenHom> {
        self.counit.as_ref()
    }

    pub fn cozero(&self) -> Option<&GenHom> {
        self.cozero.as_ref()
    }

    /// The reduced presentation: odd generators are deleted and every image
    /// is projected by setting odd generators to zero in every factor.
    pub fn reduce(&self) -> CotrussPresentation {
        let red = Arc::new(self.gens.even_part());
        let project = |h: &GenHom| -> GenHom {
            let images = (0..red.symbol_count())
                .map(|s| {
                    let old = self.gens.lookup(red.symbol_name(s)).expect("even symbols survive");
                    let img = h.image(self.gens.symbol_index(old)).drop_odd();
                    img.map_factors_poly(&red, |p| p.transport(&red)).expect("even monomials transport")
                })
                .collect();
            GenHom::new(&red, &red, h.arity(), images).expect("shapes are preserved")
        };
        CotrussPresentation {
            gens: red.clone(),
            delta2: project(&self.delta2),
            delta3: project(&self.delta3),
            counit: self.counit.as_ref().map(project),
            cozero: self.cozero.as_ref().map(project),
        }
    }

    /// The same presentation over another field; fails if a coefficient's
    /// denominator vanishes there.
    pub fn base_change(&self, field: Field) -> Result<CotrussPresentation> {
        if field == self.field() {
            return Ok(self.clone());
        }
        let gens = Arc::new(self.gens.with_field(field));
        let convert = |h: &GenHom| -> Result<GenHom> {
            let images = h
                .images()
                .iter()
                .map(|img| img.map_factors_poly(&gens, |p| p.transport(&gens)))
                .collect::<Result<Vec<_>>>()?;
            GenHom::new(&gens, &gens, h.arity(), images)
        };
        Ok(CotrussPresentation {
            delta2: convert(&self.delta2)?,
            delta3: convert(&self.delta3)?,
            counit: self.counit.as_ref().map(convert).transpose()?,
            cozero: self.cozero.as_ref().map(convert).transpose()?,
            gens,
        })
    }

    /// Replaces Δ² or Δ³ without re-validating.
    pub fn with_map_unchecked(&self, which: StructureMap, map: GenHom) -> Result<CotrussPresentation> {
        let (d2, d3) = match which {
            StructureMap::Delta2 => (map, self.delta3.clone()),
            StructureMap::Delta3 => (self.delta2.clone(), map),
        };
        CotrussPresentation::from_parts_unchecked(d2, d3, self.counit.clone(), self.cozero.clone())
    }

    /// Every presentation obtained by negating a single term of a single Δ²
    /// or Δ³ image, in map, symbol, term order.
    pub fn sign_mutations(&self) -> Vec<SignMutation> {
        let mut out = Vec::new();
        for (which, map) in [(StructureMap::Delta2, &self.delta2), (StructureMap::Delta3, &self.delta3)] {
            for s in 0..self.gens.symbol_count() {
                let img = map.image(s);
                for k in 0..img.len() {
                    let mut flipped = TensorElement::zero(&self.gens, img.arity());
                    for (i, (m, c)) in img.terms().enumerate() {
                        let c = if i == k { -c } else { c.clone() };
                        flipped.add_term(m.clone(), c);
                    }
                    let mut images = map.images().to_vec();
                    images[s] = flipped;
                    let new_map = GenHom::new(&self.gens, &self.gens, map.arity(), images).expect("same shape");
                    out.push(SignMutation {
                        map: which,
                        symbol: self.gens.symbol_name(s).to_string(),
                        term: k,
                        presentation: self.with_map_unchecked(which, new_map).expect("same shape"),
                    });
                }
            }
        }
        out
    }

    /// `g ↦ g` as an element, for every symbol; used as evaluation points.
    pub(crate) fn symbol_elements(&self) -> Vec<(String, SuperPoly)> {
        (0..self.gens.symbol_count())
            .map(|s| (self.gens.symbol_name(s).to_string(), SuperPoly::symbol(&self.gens, self.gens.symbol(s))))
            .collect()
    }
}
