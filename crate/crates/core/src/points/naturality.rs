use serde::Serialize;

use super::{PointSpace, Tables, TestAlgebraHom};
use crate::cotruss::CotrussPresentation;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// One operation's commutation with pushforward, over every homomorphism.
#[derive(Debug, Clone, Serialize)]
pub struct NaturalityCheck {
    pub operation: &'static str,
    pub passed: bool,
    pub tuples: u128,
    /// Index of the offending homomorphism and the rendered source tuple.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, Vec<String>)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NaturalityReport {
    pub homomorphisms: usize,
    pub source_points: usize,
    pub target_points: usize,
    pub checks: Vec<NaturalityCheck>,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks that `T(ψ)` commutes with the product, heap, brace addition and
/// negation and preserves the unit and zero points, on all enumerated
/// points of the source, for every `ψ`. All `ψ` share source and target.
pub fn check_naturality(p: &CotrussPresentation, homs: &[TestAlgebraHom], exec: Exec) -> Result<NaturalityReport> {
    let Some(first) = homs.first() else {
        return Err(Error::Invalid("no homomorphisms given".into()));
    };
    let (a, b) = (first.source(), first.target());
    if homs.iter().any(|h| h.source() != a || h.target() != b) {
        return Err(Error::Invalid("homomorphisms must share source and target".into()));
    }
    let (sa, sb) = (PointSpace::new(p, a)?, PointSpace::new(p, b)?);
    let (owned_a, owned_b) = (Tables::build(&sa, exec)?, Tables::build(&sb, exec)?);
    let (ta, tb) = (&owned_a, &owned_b);
    let n = ta.len();
    let units = ta.unit().zip(tb.unit());
    let zeros = ta.zero().zip(tb.zero());

    type Law<'a> = Box<dyn Fn(&[usize], usize) -> Option<Vec<usize>> + Sync + Send + 'a>;
    // Each law maps (pushforward table, tuple code) to a failing tuple, if any.
    let mut laws: Vec<(&'static str, u32, Law)> = vec![
        (
            "mul",
            2,
            Box::new(move |f: &[usize], i: usize| {
                let (x, y) = (i / n, i % n);
                (f[ta.mul(x, y)] != tb.mul(f[x], f[y])).then(|| vec![x, y])
            }),
        ),
        (
            "heap",
            3,
            Box::new(move |f: &[usize], i: usize| {
                let (x, y, z) = (i / (n * n), i / n % n, i % n);
                (f[ta.heap(x, y, z)] != tb.heap(f[x], f[y], f[z])).then(|| vec![x, y, z])
            }),
        ),
    ];
    if let Some((ea, eb)) = units {
        laws.push((
            "brace_add",
            2,
            Box::new(move |f: &[usize], i: usize| {
                let (x, y) = (i / n, i % n);
                (f[ta.heap(x, ea, y)] != tb.heap(f[x], eb, f[y])).then(|| vec![x, y])
            }),
        ));
        laws.push((
            "brace_neg",
            1,
            Box::new(move |f: &[usize], x: usize| (f[ta.heap(ea, x, ea)] != tb.heap(eb, f[x], eb)).then(|| vec![x])),
        ));
        laws.push(("unit", 0, Box::new(move |f: &[usize], _| (f[ea] != eb).then(Vec::new))));
    }
    if let Some((za, zb)) = zeros {
        laws.push(("zero", 0, Box::new(move |f: &[usize], _| (f[za] != zb).then(Vec::new))));
    }

    let mut checks: Vec<NaturalityCheck> = laws
        .iter()
        .map(|(op, _, _)| NaturalityCheck { operation: op, passed: true, tuples: 0, witness: None })
        .collect();
    for (h, psi) in homs.iter().enumerate() {
        let f: Vec<usize> = exec
            .map_slice(ta.points(), |s| tb.index_of(&psi.pushforward(s)))
            .into_iter()
            .collect::<Option<_>>()
            .ok_or(Error::NotClosed)?;
        for ((_, k, law), check) in laws.iter().zip(checks.iter_mut()) {
            let total = n.pow(*k);
            check.tuples += total as u128;
            if check.witness.is_some() {
                continue;
            }
            if let Some(i) = exec.find_first(total, |i| law(&f, i).is_some()) {
                let idx = law(&f, i).expect("found above");
                check.passed = false;
                check.witness = Some((h, idx.iter().map(|&j| sa.render(&ta.points()[j])).collect()));
            }
        }
    }
    Ok(NaturalityReport { homomorphisms: homs.len(), source_points: n, target_points: tb.len(), checks })
}
