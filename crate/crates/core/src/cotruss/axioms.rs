use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::CotrussPresentation;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::homs::{apply_factorwise, GenHom};
use crate::superalg::{Scalar, SuperPoly};
use crate::tensor::{SwapConvention, TensorElement};

/// The identities a presentation is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Con1,
    Con2,
    Con3,
    Con4,
    Con5,
    Con6,
    Con7,
    CounitLeft,
    CounitRight,
    CozeroLeft,
    CozeroRight,
}

impl Axiom {
    pub const STRUCTURE: [Axiom; 7] =
        [Axiom::Con1, Axiom::Con2, Axiom::Con3, Axiom::Con4, Axiom::Con5, Axiom::Con6, Axiom::Con7];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Con1 => "con1",
            Axiom::Con2 => "con2",
            Axiom::Con3 => "con3",
            Axiom::Con4 => "con4",
            Axiom::Con5 => "con5",
            Axiom::Con6 => "con6",
            Axiom::Con7 => "con7",
            Axiom::CounitLeft => "counit_left",
            Axiom::CounitRight => "counit_right",
            Axiom::CozeroLeft => "cozero_left",
            Axiom::CozeroRight => "cozero_right",
        }
    }

    /// The two composite maps, evaluated at `a`.
    fn sides(
        self,
        p: &CotrussPresentation,
        a: &SuperPoly,
        sigma13: SwapConvention,
    ) -> Result<(TensorElement, TensorElement)> {
        let g = p.gens();
        let id = GenHom::identity(g);
        let (d2, d3) = (p.delta2(), p.delta3());
        let one = SuperPoly::one(g);
        Ok(match self {
            Axiom::Con1 => {
                let t = d3.apply(a)?;
                (apply_factorwise(&[&id, &id, d3], &t, g)?, apply_factorwise(&[d3, &id, &id], &t, g)?)
            }
            Axiom::Con2 => (d3.apply(a)?.collapse_range(1, 2)?, TensorElement::decomposable(g, &[a.clone(), one])?),
            Axiom::Con3 => (d3.apply(a)?.collapse_range(0, 2)?, TensorElement::decomposable(g, &[one, a.clone()])?),
            Axiom::Con4 => {
                let t = d3.apply(a)?;
                let swapped = t.koszul_permute(&[2, 1, 0], sigma13)?;
                (t, swapped)
            }
            Axiom::Con5 => {
                let t = d2.apply(a)?;
                (apply_factorwise(&[d2, &id], &t, g)?, apply_factorwise(&[&id, d2], &t, g)?)
            }
            Axiom::Con6 | Axiom::Con7 => {
                let t = d2.apply(a)?;
                let lhs = if self == Axiom::Con6 {
                    apply_factorwise(&[&id, d3], &t, g)?
                } else {
                    apply_factorwise(&[d3, &id], &t, g)?
                };
                let six = apply_factorwise(&[d2, d2, d2], &d3.apply(a)?, g)?;
                let rhs = if self == Axiom::Con6 { six.m135()? } else { six.m246()? };
                (lhs, rhs)
            }
            Axiom::CounitLeft | Axiom::CounitRight => {
                let eps = p.counit().ok_or(Error::MissingMap("counit"))?;
                let t = d2.apply(a)?;
                let maps: [&GenHom; 2] = if self == Axiom::CounitLeft { [eps, &id] } else { [&id, eps] };
                (apply_factorwise(&maps, &t, g)?, TensorElement::from_poly(a))
            }
            Axiom::CozeroLeft | Axiom::CozeroRight => {
                let z = p.cozero().ok_or(Error::MissingMap("cozero"))?;
                let t = d2.apply(a)?;
                let maps: [&GenHom; 2] = if self == Axiom::CozeroLeft { [z, &id] } else { [&id, z] };
                let value = z.apply(a)?.to_scalar()?;
                (apply_factorwise(&maps, &t, g)?, TensorElement::from_poly(&SuperPoly::constant(g, value)))
            }
        })
    }
}

/// Both sides of a failed identity at the first element where they differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub element: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// Number of elements both sides were compared on.
    pub checked: usize,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub sigma13: SwapConvention,
    /// True over 𝔽₂, where every Koszul sign is invisible.
    pub sign_blind: bool,
    /// Random extra elements compared in slow mode.
    pub random_elements: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomOptions {
    pub sigma13: SwapConvention,
    pub exec: Exec,
    /// Slow mode: also compare on this many random elements of degree ≤ 3.
    pub random_elements: usize,
    pub seed: u64,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions { sigma13: SwapConvention::Graded, exec: Exec::default(), random_elements: 0, seed: 0 }
    }
}

/// Evaluation points: every symbol, the unit, then random elements.
fn elements(p: &CotrussPresentation, opts: &AxiomOptions) -> Vec<(String, SuperPoly)> {
    let mut out = p.symbol_elements();
    out.push(("1".into(), SuperPoly::one(p.gens())));
    let count = p.gens().symbol_count();
    if opts.random_elements == 0 || count == 0 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let field = p.field();
    for _ in 0..opts.random_elements {
        let mut a = SuperPoly::zero(p.gens());
        for _ in 0..rng.random_range(1..=3) {
            let mut term = SuperPoly::constant(p.gens(), Scalar::from_int(field, rng.random_range(1..=3)));
            for _ in 0..rng.random_range(0..=3) {
                let s = rng.random_range(0..count);
                term = &term * &SuperPoly::symbol(p.gens(), p.gens().symbol(s));
            }
            a = &a + &term;
        }
        out.push((a.to_string(), a));
    }
    out
}

fn run(p: &CotrussPresentation, axioms: &[Axiom], opts: &AxiomOptions) -> Result<Vec<AxiomCheck>> {
    let elems = elements(p, opts);
    let per = elems.len();
    let results = opts.exec.map_range(axioms.len() * per, |i| {
        let (ax, (_, a)) = (axioms[i / per], &elems[i % per]);
        ax.sides(p, a, opts.sigma13)
    });
    let mut checks = Vec::with_capacity(axioms.len());
    for (k, &axiom) in axioms.iter().enumerate() {
        let mut witness = None;
        for (j, r) in results[k * per..(k + 1) * per].iter().enumerate() {
            let (lhs, rhs) = r.as_ref().map_err(Clone::clone)?;
            if lhs != rhs {
                witness = Some(Witness { element: elems[j].0.clone(), lhs: lhs.to_string(), rhs: rhs.to_string() });
                break;
            }
        }
        checks.push(AxiomCheck { axiom, passed: witness.is_none(), checked: per, witness });
    }
    Ok(checks)
}

/// Checks (Con1)–(Con7). Every map involved is a superalgebra homomorphism,
/// so agreement on generators implies agreement everywhere; the unit and any
/// random elements are an extra safety net.
pub fn check_axioms(p: &CotrussPresentation, opts: &AxiomOptions) -> AxiomReport {
    let checks = run(p, &Axiom::STRUCTURE, opts).expect("shapes were validated at construction");
    AxiomReport {
        sigma13: opts.sigma13,
        sign_blind: p.field().is_sign_blind(),
        random_elements: opts.random_elements,
        checks,
    }
}

pub fn check_counit(p: &CotrussPresentation, opts: &AxiomOptions) -> Result<Vec<AxiomCheck>> {
    p.counit().ok_or(Error::MissingMap("counit"))?;
    run(p, &[Axiom::CounitLeft, Axiom::CounitRight], opts)
}

pub fn check_cozero(p: &CotrussPresentation, opts: &AxiomOptions) -> Result<Vec<AxiomCheck>> {
    p.cozero().ok_or(Error::MissingMap("cozero"))?;
    run(p, &[Axiom::CozeroLeft, Axiom::CozeroRight], opts)
}

/// Structure axioms plus whichever of counit and cozero are present.
pub fn check_all(p: &CotrussPresentation, opts: &AxiomOptions) -> AxiomReport {
    let mut report = check_axioms(p, opts);
    if p.counit().is_some() {
        report.checks.extend(check_counit(p, opts).expect("counit present"));
    }
    if p.cozero().is_some() {
        report.checks.extend(check_cozero(p, opts).expect("cozero present"));
    }
    report
}
