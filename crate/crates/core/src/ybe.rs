//! Yang–Baxter maps `r(s,t) = (λ_s(t), ρ_t(s))` on point sets, with braid,
//! component and non-degeneracy checks.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::points::{Point, PointSpace};
use crate::superalg::{Field, Scalar};

/// Automorphisms that can be applied after another map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outer {
    /// `α`: negate the odd generator images.
    Parity,
    /// `σ_q` on the λ side and `σ_{q⁻¹}` on the ρ side.
    OddScaling(Scalar),
}

/// The catalogue of maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapKind {
    /// `(t, s)`
    Flip,
    /// `(α(t), α(s))`
    Superflip,
    /// `λ_s(t) = st −_e se +_e e`, `ρ_t(s) = s`
    LeftAction,
    /// `(−_e t, −_e s)`, the group inverses when brace negation is one.
    InverseMap,
    /// `(σ_q(t), σ_{q⁻¹}(s))`
    OddScaling(Scalar),
    /// `(outer(λ_s(t)), outer'(ρ_t(s)))`
    Composed { outer: Outer, inner: Box<MapKind> },
}

impl MapKind {
    /// Parses `flip`, `superflip`, `left-action`, `inverse-map`,
    /// `odd-scaling`, or `parity(KIND)` / `odd-scaling(KIND)`. Every
    /// `odd-scaling` uses `q`.
    pub fn parse(text: &str, q: Option<&Scalar>) -> Result<MapKind> {
        let text = text.trim();
        let need_q = || q.cloned().ok_or_else(|| Error::Invalid("odd-scaling needs a value of q".into()));
        if let Some(open) = text.find('(') {
            let inner = text[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Invalid(format!("unbalanced map kind `{text}`")))?;
            let outer = match &text[..open] {
                "parity" => Outer::Parity,
                "odd-scaling" => Outer::OddScaling(need_q()?),
                other => return Err(Error::Invalid(format!("unknown outer map `{other}`"))),
            };
            return Ok(MapKind::Composed { outer, inner: Box::new(MapKind::parse(inner, q)?) });
        }
        Ok(match text {
            "flip" => MapKind::Flip,
            "superflip" => MapKind::Superflip,
            "left-action" => MapKind::LeftAction,
            "inverse-map" => MapKind::InverseMap,
            "odd-scaling" => MapKind::OddScaling(need_q()?),
            other => return Err(Error::Invalid(format!("unknown map kind `{other}`"))),
        })
    }

    /// Scalars whose scaling map must be multiplicative.
    fn scalings(&self) -> Vec<Scalar> {
        match self {
            MapKind::OddScaling(q) => vec![q.clone()],
            MapKind::Composed { outer, inner } => {
                let mut v = inner.scalings();
                if let Outer::OddScaling(q) = outer {
                    v.push(q.clone());
                }
                v
            }
            _ => vec![],
        }
    }

    fn uses_parity(&self) -> bool {
        match self {
            MapKind::Superflip => true,
            MapKind::Composed { outer, inner } => *outer == Outer::Parity || inner.uses_parity(),
            _ => false,
        }
    }

    fn uses_inverse(&self) -> bool {
        match self {
            MapKind::InverseMap => true,
            MapKind::Composed { inner, .. } => inner.uses_inverse(),
            _ => false,
        }
    }

    fn convert(&self, field: Field) -> Result<MapKind> {
        let conv = |q: &Scalar| q.convert(field);
        Ok(match self {
            MapKind::OddScaling(q) => MapKind::OddScaling(conv(q)?),
            MapKind::Composed { outer, inner } => MapKind::Composed {
                outer: match outer {
                    Outer::OddScaling(q) => Outer::OddScaling(conv(q)?),
                    Outer::Parity => Outer::Parity,
                },
                inner: Box::new(inner.convert(field)?),
            },
            other => other.clone(),
        })
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapKind::Flip => write!(f, "flip"),
            MapKind::Superflip => write!(f, "superflip"),
            MapKind::LeftAction => write!(f, "left-action"),
            MapKind::InverseMap => write!(f, "inverse-map"),
            MapKind::OddScaling(_) => write!(f, "odd-scaling"),
            MapKind::Composed { outer: Outer::Parity, inner } => write!(f, "parity({inner})"),
            MapKind::Composed { outer: Outer::OddScaling(_), inner } => write!(f, "odd-scaling({inner})"),
        }
    }
}

/// A catalogued map instantiated on the points of one presentation over one
/// test algebra.
#[derive(Debug, Clone)]
pub struct YBMap {
    kind: MapKind,
    space: Arc<PointSpace>,
}

/// Checks that `σ_q` is multiplicative on `points`.
fn check_multiplicative(space: &PointSpace, q: &Scalar, points: &[Point], exec: Exec) -> Result<()> {
    let n = points.len();
    let bad = exec.find_first(n * n, |i| {
        let (s, t) = (&points[i / n], &points[i % n]);
        space.scale_odd(&space.mul(s, t), q) != space.mul(&space.scale_odd(s, q), &space.scale_odd(t, q))
    });
    match bad {
        Some(i) => Err(Error::NotMultiplicative(format!(
            "q = {q} at s = {}, t = {}",
            space.render(&points[i / n]),
            space.render(&points[i % n])
        ))),
        None => Ok(()),
    }
}

/// Builds a map after checking its preconditions on `points`: a counit,
/// invertible and multiplicative scalings, and brace negation being a
/// two-sided multiplicative inverse for `inverse-map`.
pub fn make_map(kind: MapKind, space: Arc<PointSpace>, points: &[Point], exec: Exec) -> Result<YBMap> {
    let e = space.unit()?.clone();
    let kind = kind.convert(space.algebra().field())?;
    let mut scalings = kind.scalings();
    if kind.uses_parity() {
        scalings.push(-Scalar::one(space.algebra().field()));
    }
    for q in &scalings {
        if q.inverse().is_none() {
            return Err(Error::ScalarNotInvertible(q.to_string()));
        }
        check_multiplicative(&space, q, points, exec)?;
    }
    if kind.uses_inverse() {
        let bad = exec.find_first(points.len(), |i| {
            let s = &points[i];
            let neg = space.brace_neg(s).expect("counit present");
            space.mul(&neg, s) != e || space.mul(s, &neg) != e
        });
        if let Some(i) = bad {
            return Err(Error::NotGroupLike(format!("at s = {}", space.render(&points[i]))));
        }
    }
    Ok(YBMap { kind, space })
}

impl YBMap {
    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn space(&self) -> &Arc<PointSpace> {
        &self.space
    }

    fn parts(&self, kind: &MapKind, s: &Point, t: &Point) -> (Point, Point) {
        let sp = &self.space;
        let minus_one = -Scalar::one(sp.algebra().field());
        match kind {
            MapKind::Flip => (t.clone(), s.clone()),
            MapKind::Superflip => (sp.scale_odd(t, &minus_one), sp.scale_odd(s, &minus_one)),
            MapKind::LeftAction => {
                let e = sp.unit().expect("checked at construction");
                let st = sp.mul(s, t);
                let se = sp.mul(s, e);
                let diff = sp.brace_sub(&st, &se).expect("counit");
                (sp.brace_add(&diff, e).expect("counit"), s.clone())
            }
            MapKind::InverseMap => (sp.brace_neg(t).expect("counit"), sp.brace_neg(s).expect("counit")),
            MapKind::OddScaling(q) => (sp.scale_odd(t, q), sp.scale_odd(s, &q.inverse().expect("checked"))),
            MapKind::Composed { outer, inner } => {
                let (l, r) = self.parts(inner, s, t);
                let (a, b) = match outer {
                    Outer::Parity => (minus_one.clone(), minus_one),
                    Outer::OddScaling(q) => (q.clone(), q.inverse().expect("checked")),
                };
                (sp.scale_odd(&l, &a), sp.scale_odd(&r, &b))
            }
        }
    }

    /// `r(s,t) = (λ_s(t), ρ_t(s))`.
    pub fn apply(&self, s: &Point, t: &Point) -> (Point, Point) {
        self.parts(&self.kind, s, t)
    }

    pub fn lambda(&self, s: &Point, t: &Point) -> Point {
        self.apply(s, t).0
    }

    pub fn rho(&self, t: &Point, s: &Point) -> Point {
        self.apply(s, t).1
    }

    /// The same construction over the reduced presentation.
    pub fn reduced(&self) -> Result<YBMap> {
        let p = self.space.presentation().reduce();
        let space = Arc::new(PointSpace::new(&p, self.space.algebra())?);
        Ok(YBMap { kind: self.kind.clone(), space })
    }
}

/// `reduced_map(r)`: see [`YBMap::reduced`].
pub fn reduced_map(r: &YBMap) -> Result<YBMap> {
    r.reduced()
}

/// λ and ρ as functions of point handles.
trait Solution: Sync {
    type P: Clone + PartialEq + Send + Sync;
    fn lam(&self, s: &Self::P, t: &Self::P) -> Self::P;
    fn rho(&self, t: &Self::P, s: &Self::P) -> Self::P;
}

impl Solution for YBMap {
    type P = Point;
    fn lam(&self, s: &Point, t: &Point) -> Point {
        self.lambda(s, t)
    }
    fn rho(&self, t: &Point, s: &Point) -> Point {
        YBMap::rho(self, t, s)
    }
}

/// `λ_s(t)` at `s·n + t` and `ρ_t(s)` at `t·n + s`.
struct Tabulated {
    n: usize,
    lam: Vec<usize>,
    rho: Vec<usize>,
}

impl Solution for Tabulated {
    type P = usize;
    fn lam(&self, s: &usize, t: &usize) -> usize {
        self.lam[s * self.n + t]
    }
    fn rho(&self, t: &usize, s: &usize) -> usize {
        self.rho[t * self.n + s]
    }
}

/// `(r×1)(1×r)(r×1)` and `(1×r)(r×1)(1×r)` at `(s,t,u)`.
fn braid_sides<S: Solution>(m: &S, s: &S::P, t: &S::P, u: &S::P) -> ([S::P; 3], [S::P; 3]) {
    let r = |a: &S::P, b: &S::P| (m.lam(a, b), m.rho(b, a));
    let (a1, b1) = r(s, t);
    let (b2, c2) = r(&b1, u);
    let (a3, b3) = r(&a1, &b2);
    let left = [a3, b3, c2];
    let (t1, u1) = r(t, u);
    let (s2, t2) = r(s, &t1);
    let (t3, u3) = r(&t2, &u1);
    (left, [s2, t3, u3])
}

fn yb1<S: Solution>(m: &S, s: &S::P, t: &S::P, u: &S::P) -> bool {
    m.lam(s, &m.lam(t, u)) == m.lam(&m.lam(s, t), &m.lam(&m.rho(t, s), u))
}

fn yb2<S: Solution>(m: &S, s: &S::P, t: &S::P, u: &S::P) -> bool {
    m.rho(u, &m.rho(t, s)) == m.rho(&m.rho(u, t), &m.rho(&m.lam(t, u), s))
}

fn yb3<S: Solution>(m: &S, s: &S::P, t: &S::P, u: &S::P) -> bool {
    m.lam(&m.rho(&m.lam(t, u), s), &m.rho(u, t)) == m.rho(&m.lam(&m.rho(t, s), u), &m.lam(s, t))
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub passed: bool,
    /// The least failing triple `(s, t, u)`, rendered.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NondegeneracyReport {
    pub lambda_bijective: bool,
    pub rho_bijective: bool,
    /// A point whose λ- or ρ-translation is not injective, with two
    /// arguments it identifies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

impl NondegeneracyReport {
    pub fn passed(&self) -> bool {
        self.lambda_bijective && self.rho_bijective
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YbeMode {
    Exhaustive { budget: u64 },
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct YbeReport {
    pub map: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    pub mode: &'static str,
    pub algebra: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub triples: u128,
    pub braid: Verdict,
    pub yb1: Verdict,
    pub yb2: Verdict,
    pub yb3: Verdict,
    /// Braid holds on a triple iff YB1, YB2 and YB3 all do, for every triple.
    pub components_agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nondegenerate: Option<NondegeneracyReport>,
}

impl YbeReport {
    pub fn passed(&self) -> bool {
        self.braid.passed
            && self.yb1.passed
            && self.yb2.passed
            && self.yb3.passed
            && self.components_agree
            && self.nondegenerate.as_ref().is_none_or(|n| n.passed())
    }
}

fn q_of(kind: &MapKind) -> Option<String> {
    match kind {
        MapKind::OddScaling(q) | MapKind::Composed { outer: Outer::OddScaling(q), .. } => Some(q.to_string()),
        MapKind::Composed { inner, .. } => q_of(inner),
        _ => None,
    }
}

/// Runs braid, components and agreement over `count` triples.
fn verdicts<S: Solution, F>(m: &S, count: usize, triple: F, exec: Exec) -> (Vec<Option<usize>>, bool)
where
    F: Fn(usize) -> [S::P; 3] + Sync + Send,
{
    let braid_ok = |i: usize| {
        let [s, t, u] = triple(i);
        let (l, r) = braid_sides(m, &s, &t, &u);
        l == r
    };
    type Component<'a, S> =
        &'a (dyn Fn(&S, &<S as Solution>::P, &<S as Solution>::P, &<S as Solution>::P) -> bool + Sync);
    let checks: [Component<S>; 3] = [&yb1::<S>, &yb2::<S>, &yb3::<S>];
    let mut first = vec![exec.find_first(count, |i| !braid_ok(i))];
    for c in checks {
        first.push(exec.find_first(count, |i| {
            let [s, t, u] = triple(i);
            !c(m, &s, &t, &u)
        }));
    }
    let disagree = exec.find_first(count, |i| {
        let [s, t, u] = triple(i);
        let comps = checks.iter().all(|c| c(m, &s, &t, &u));
        comps != braid_ok(i)
    });
    (first, disagree.is_none())
}

/// Checks the braid relation and the component equations on all triples of
/// points (exhaustive) or on sampled triples, and non-degeneracy when the
/// point set is finite.
pub fn check_ybe(kind: &MapKind, space: &Arc<PointSpace>, mode: YbeMode, exec: Exec) -> Result<YbeReport> {
    match mode {
        YbeMode::Exhaustive { budget } => {
            let count = space.point_count().ok_or(Error::InfiniteBase)?;
            let required = count.saturating_pow(3).saturating_add(2 * count * count);
            if required > budget as u128 {
                return Err(Error::BudgetExceeded { required, budget });
            }
            let points = space.enumerate()?;
            let map = make_map(kind.clone(), space.clone(), &points, exec)?;
            exhaustive(&map, &points, exec)
        }
        YbeMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let points: Vec<Point> = (0..3 * samples).map(|_| space.sample(&mut rng)).collect();
            let map = make_map(kind.clone(), space.clone(), &points, exec)?;
            let triple = |i: usize| [points[3 * i].clone(), points[3 * i + 1].clone(), points[3 * i + 2].clone()];
            let (first, agree) = verdicts(&map, samples, triple, exec);
            let verdict = |f: Option<usize>| Verdict {
                passed: f.is_none(),
                witness: f.map(|i| triple(i).iter().map(|p| space.render(p)).collect()),
            };
            Ok(YbeReport {
                map: map.kind.to_string(),
                q: q_of(&map.kind),
                mode: "sampled",
                algebra: space.algebra().to_string(),
                points: None,
                seed: Some(seed),
                triples: samples as u128,
                braid: verdict(first[0]),
                yb1: verdict(first[1]),
                yb2: verdict(first[2]),
                yb3: verdict(first[3]),
                components_agree: agree,
                nondegenerate: None,
            })
        }
    }
}

fn tabulate(map: &YBMap, points: &[Point], exec: Exec) -> Result<Tabulated> {
    let n = points.len();
    let index: std::collections::HashMap<&Point, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let pairs = exec.map_range(n * n, |i| {
        let (s, t) = (&points[i / n], &points[i % n]);
        let (l, r) = map.apply(s, t);
        Some((*index.get(&l)?, *index.get(&r)?))
    });
    let mut lam = vec![0; n * n];
    let mut rho = vec![0; n * n];
    for (i, pair) in pairs.into_iter().enumerate() {
        let (l, r) = pair.ok_or(Error::NotClosed)?;
        let (s, t) = (i / n, i % n);
        lam[s * n + t] = l;
        rho[t * n + s] = r;
    }
    Ok(Tabulated { n, lam, rho })
}

/// First `s` whose row `table[s·n + ·]` repeats a value, with the two
/// colliding arguments.
fn first_collision(table: &[usize], n: usize) -> Option<(usize, usize, usize)> {
    for s in 0..n {
        let mut seen = vec![usize::MAX; n];
        for t in 0..n {
            let v = table[s * n + t];
            if seen[v] != usize::MAX {
                return Some((s, seen[v], t));
            }
            seen[v] = t;
        }
    }
    None
}

fn exhaustive(map: &YBMap, points: &[Point], exec: Exec) -> Result<YbeReport> {
    let space = map.space();
    let tab = tabulate(map, points, exec)?;
    let n = points.len();
    let triple = |i: usize| [i / (n * n), i / n % n, i % n];
    let (first, agree) = verdicts(&tab, n * n * n, triple, exec);
    let render = |idx: &[usize]| idx.iter().map(|&i| space.render(&points[i])).collect::<Vec<_>>();
    let verdict = |f: Option<usize>| Verdict { passed: f.is_none(), witness: f.map(|i| render(&triple(i))) };
    let lam_bad = first_collision(&tab.lam, n);
    let rho_bad = first_collision(&tab.rho, n);
    let nondegenerate = NondegeneracyReport {
        lambda_bijective: lam_bad.is_none(),
        rho_bijective: rho_bad.is_none(),
        witness: lam_bad.or(rho_bad).map(|(s, a, b)| render(&[s, a, b])),
    };
    Ok(YbeReport {
        map: map.kind.to_string(),
        q: q_of(&map.kind),
        mode: "exhaustive",
        algebra: space.algebra().to_string(),
        points: Some(n),
        seed: None,
        triples: (n as u128).pow(3),
        braid: verdict(first[0]),
        yb1: verdict(first[1]),
        yb2: verdict(first[2]),
        yb3: verdict(first[3]),
        components_agree: agree,
        nondegenerate: Some(nondegenerate),
    })
}

/// Non-degeneracy on its own; needs a finite point set.
pub fn check_nondegenerate(map: &YBMap, exec: Exec) -> Result<NondegeneracyReport> {
    let space = map.space();
    if space.point_count().is_none() {
        return Err(Error::InfinitePointSet);
    }
    let points = space.enumerate()?;
    let tab = tabulate(map, &points, exec)?;
    let n = points.len();
    let (lam_bad, rho_bad) = (first_collision(&tab.lam, n), first_collision(&tab.rho, n));
    Ok(NondegeneracyReport {
        lambda_bijective: lam_bad.is_none(),
        rho_bijective: rho_bad.is_none(),
        witness: lam_bad.or(rho_bad).map(|(s, a, b)| [s, a, b].iter().map(|&i| space.render(&points[i])).collect()),
    })
}
