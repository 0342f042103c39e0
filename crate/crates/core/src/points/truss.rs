use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Point, PointSpace};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Default cap on tuple evaluations in exhaustive mode.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The truss, unit, absorber and semi-brace identities checked at points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `[a,b,b] = a`
    HeapRightCancel,
    /// `[b,b,a] = a`
    HeapLeftCancel,
    /// `[a,b,c] = [c,b,a]`
    Abelian,
    /// `[[a,b,c],d,e] = [a,[d,c,b],e]`
    ParaAssociativity,
    /// `[[a₁,a₂,a₃],[b₁,b₂,b₃],[c₁,c₂,c₃]] = [[a₁,b₁,c₁],[a₂,b₂,c₂],[a₃,b₃,c₃]]`
    Transposition,
    Associativity,
    /// `s[t₁,t₂,t₃] = [st₁,st₂,st₃]`
    LeftDistributivity,
    /// `[t₁,t₂,t₃]s = [t₁s,t₂s,t₃s]`
    RightDistributivity,
    /// `et = t = te`
    Unit,
    /// `zt = z = tz`
    Absorber,
    /// `s(t +_e u) = st −_e s +_e su`
    LeftSemiBrace,
    /// `(t +_e u)s = ts −_e s +_e us`
    RightSemiBrace,
}

impl Identity {
    pub const ALL: [Identity; 12] = [
        Identity::HeapRightCancel,
        Identity::HeapLeftCancel,
        Identity::Abelian,
        Identity::ParaAssociativity,
        Identity::Transposition,
        Identity::Associativity,
        Identity::LeftDistributivity,
        Identity::RightDistributivity,
        Identity::Unit,
        Identity::Absorber,
        Identity::LeftSemiBrace,
        Identity::RightSemiBrace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::HeapRightCancel => "heap_right_cancel",
            Identity::HeapLeftCancel => "heap_left_cancel",
            Identity::Abelian => "abelian",
            Identity::ParaAssociativity => "para_associativity",
            Identity::Transposition => "transposition",
            Identity::Associativity => "associativity",
            Identity::LeftDistributivity => "left_distributivity",
            Identity::RightDistributivity => "right_distributivity",
            Identity::Unit => "unit",
            Identity::Absorber => "absorber",
            Identity::LeftSemiBrace => "left_semi_brace",
            Identity::RightSemiBrace => "right_semi_brace",
        }
    }

    /// Number of points in one instance.
    pub fn arity(self) -> u32 {
        match self {
            Identity::Unit | Identity::Absorber => 1,
            Identity::HeapRightCancel | Identity::HeapLeftCancel => 2,
            Identity::Abelian | Identity::Associativity | Identity::LeftSemiBrace | Identity::RightSemiBrace => 3,
            Identity::LeftDistributivity | Identity::RightDistributivity => 4,
            Identity::ParaAssociativity => 5,
            Identity::Transposition => 9,
        }
    }

    fn needs_unit(self) -> bool {
        matches!(self, Identity::Unit | Identity::LeftSemiBrace | Identity::RightSemiBrace)
    }

    /// The lemma that lets an exhaustive run replace the identity by
    /// checks of lower arity.
    fn reduction(self) -> Option<&'static str> {
        match self {
            Identity::ParaAssociativity => Some("group heap certificate"),
            Identity::Transposition => Some("group heap certificate with commutative retract"),
            Identity::LeftDistributivity | Identity::RightDistributivity => {
                Some("group heap certificate with affine multiplication maps")
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Every tuple of enumerated points.
    Exhaustive,
    /// An equivalent family of lower-arity identities, checked on every tuple.
    Reduced,
    /// Independently sampled tuples.
    Sampled,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityResult {
    pub identity: Identity,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma: Option<&'static str>,
    pub tuples: u128,
    pub passed: bool,
    /// The least failing tuple, rendered.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive { budget: u64 },
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct TrussReport {
    pub mode: &'static str,
    pub algebra: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Tuple evaluations spent, including tabulation.
    pub evaluations: u128,
    pub identities: Vec<IdentityResult>,
}

impl TrussReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|r| r.passed)
    }

    pub fn get(&self, id: Identity) -> Option<&IdentityResult> {
        self.identities.iter().find(|r| r.identity == id)
    }
}

/// The operations the identities are phrased in.
trait TrussOps: Sync {
    type P: Clone + PartialEq + Send + Sync;
    fn mul(&self, a: &Self::P, b: &Self::P) -> Self::P;
    fn heap(&self, a: &Self::P, b: &Self::P, c: &Self::P) -> Self::P;
    fn unit(&self) -> Self::P;
    fn zero(&self) -> Self::P;
}

impl TrussOps for PointSpace {
    type P = Point;
    fn mul(&self, a: &Point, b: &Point) -> Point {
        PointSpace::mul(self, a, b)
    }
    fn heap(&self, a: &Point, b: &Point, c: &Point) -> Point {
        PointSpace::heap(self, a, b, c)
    }
    fn unit(&self) -> Point {
        PointSpace::unit(self).expect("identity list respects the counit").clone()
    }
    fn zero(&self) -> Point {
        PointSpace::zero(self).expect("identity list respects the cozero").clone()
    }
}

fn holds<O: TrussOps>(o: &O, id: Identity, x: &[O::P]) -> bool {
    let h = |a: &O::P, b: &O::P, c: &O::P| o.heap(a, b, c);
    let m = |a: &O::P, b: &O::P| o.mul(a, b);
    match id {
        Identity::HeapRightCancel => h(&x[0], &x[1], &x[1]) == x[0],
        Identity::HeapLeftCancel => h(&x[1], &x[1], &x[0]) == x[0],
        Identity::Abelian => h(&x[0], &x[1], &x[2]) == h(&x[2], &x[1], &x[0]),
        Identity::ParaAssociativity => {
            h(&h(&x[0], &x[1], &x[2]), &x[3], &x[4]) == h(&x[0], &h(&x[3], &x[2], &x[1]), &x[4])
        }
        Identity::Transposition => {
            let rows = [0, 3, 6].map(|i| h(&x[i], &x[i + 1], &x[i + 2]));
            let cols = [0, 1, 2].map(|j| h(&x[j], &x[j + 3], &x[j + 6]));
            h(&rows[0], &rows[1], &rows[2]) == h(&cols[0], &cols[1], &cols[2])
        }
        Identity::Associativity => m(&m(&x[0], &x[1]), &x[2]) == m(&x[0], &m(&x[1], &x[2])),
        Identity::LeftDistributivity => {
            let s = &x[0];
            m(s, &h(&x[1], &x[2], &x[3])) == h(&m(s, &x[1]), &m(s, &x[2]), &m(s, &x[3]))
        }
        Identity::RightDistributivity => {
            let s = &x[0];
            m(&h(&x[1], &x[2], &x[3]), s) == h(&m(&x[1], s), &m(&x[2], s), &m(&x[3], s))
        }
        Identity::Unit => {
            let e = o.unit();
            m(&e, &x[0]) == x[0] && m(&x[0], &e) == x[0]
        }
        Identity::Absorber => {
            let z = o.zero();
            m(&z, &x[0]) == z && m(&x[0], &z) == z
        }
        Identity::LeftSemiBrace | Identity::RightSemiBrace => {
            let e = o.unit();
            let (s, t, u) = (&x[0], &x[1], &x[2]);
            let prod = |a: &O::P, b: &O::P| if id == Identity::LeftSemiBrace { m(a, b) } else { m(b, a) };
            let lhs = prod(s, &h(t, &e, u));
            let minus_s = h(&e, s, &e);
            lhs == h(&h(&prod(s, t), &e, &minus_s), &e, &prod(s, u))
        }
    }
}

/// Product and heap tabulated over all enumerated points.
#[derive(Debug, Clone)]
pub struct Tables {
    points: Vec<Point>,
    index: HashMap<Point, u32>,
    mul: Vec<u32>,
    heap: Vec<u32>,
    unit: Option<u32>,
    zero: Option<u32>,
}

impl Tables {
    /// Enumerates the points and tabulates `st` and `[s,t,u]`; fails with
    /// `NotClosed` if a result is not an enumerated point.
    pub fn build(space: &PointSpace, exec: Exec) -> Result<Tables> {
        let points = space.enumerate()?;
        let n = points.len();
        let index: HashMap<Point, u32> = points.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let look = |p: Point| index.get(&p).copied();
        let collect = |v: Vec<Option<u32>>| v.into_iter().collect::<Option<Vec<u32>>>().ok_or(Error::NotClosed);
        let mul = collect(exec.map_range(n * n, |i| look(space.mul(&points[i / n], &points[i % n]))))?;
        let heap = collect(
            exec.map_range(n * n * n, |i| look(space.heap(&points[i / (n * n)], &points[i / n % n], &points[i % n]))),
        )?;
        let unit = space.unit().ok().map(|e| look(e.clone()).ok_or(Error::NotClosed)).transpose()?;
        let zero = space.zero().ok().map(|z| look(z.clone()).ok_or(Error::NotClosed)).transpose()?;
        Ok(Tables { points, index, mul, heap, unit, zero })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b] as usize
    }

    pub fn heap(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.len();
        self.heap[(a * n + b) * n + c] as usize
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit.map(|i| i as usize)
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero.map(|i| i as usize)
    }

    /// Evaluations spent building the tables.
    pub fn cost(n: u128) -> u128 {
        n * n + n * n * n
    }
}

impl TrussOps for Tables {
    type P = usize;
    fn mul(&self, a: &usize, b: &usize) -> usize {
        Tables::mul(self, *a, *b)
    }
    fn heap(&self, a: &usize, b: &usize, c: &usize) -> usize {
        Tables::heap(self, *a, *b, *c)
    }
    fn unit(&self) -> usize {
        Tables::unit(self).expect("identity list respects the counit")
    }
    fn zero(&self) -> usize {
        Tables::zero(self).expect("identity list respects the cozero")
    }
}

/// Digits of `code` in base `n`, most significant first.
fn tuple(code: usize, n: usize, k: u32) -> Vec<usize> {
    let mut out = vec![0; k as usize];
    let mut c = code;
    for slot in out.iter_mut().rev() {
        *slot = c % n;
        c /= n;
    }
    out
}

fn identities_for(space: &PointSpace) -> Vec<Identity> {
    Identity::ALL
        .into_iter()
        .filter(|id| !id.needs_unit() || space.unit().is_ok())
        .filter(|id| *id != Identity::Absorber || space.zero().is_ok())
        .collect()
}

/// Cost of the shared group heap certificate: associativity of the
/// retract, inverses, and the decomposition of the heap.
fn certificate_cost(n: u128) -> u128 {
    2 * n * n * n + n
}

fn reduced_cost(id: Identity, n: u128) -> u128 {
    match id {
        Identity::ParaAssociativity => 0,
        Identity::Transposition => n * n,
        _ => n * n * n,
    }
}

/// Chooses exhaustive or reduced per identity, reducing the most expensive
/// identities first until the plan fits the budget.
fn plan(ids: &[Identity], n: u128, budget: u64) -> Result<(Vec<Method>, u128)> {
    let exhaustive = |id: Identity| n.saturating_pow(id.arity());
    let mut methods = vec![Method::Exhaustive; ids.len()];
    let total = |methods: &[Method]| -> u128 {
        let mut t = Tables::cost(n);
        let mut certificate = false;
        for (id, m) in ids.iter().zip(methods) {
            t = t.saturating_add(match m {
                Method::Reduced => {
                    certificate = true;
                    reduced_cost(*id, n)
                }
                _ => exhaustive(*id),
            });
        }
        if certificate {
            t = t.saturating_add(certificate_cost(n));
        }
        t
    };
    let mut order: Vec<usize> = (0..ids.len()).filter(|&i| ids[i].reduction().is_some()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(exhaustive(ids[i])));
    for i in order {
        if total(&methods) <= budget as u128 {
            break;
        }
        if reduced_cost(ids[i], n) < exhaustive(ids[i]) {
            methods[i] = Method::Reduced;
        }
    }
    let required = total(&methods);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok((methods, required))
}

/// A failing certificate check: its description and tuple.
type CertificateFailure = (&'static str, Vec<usize>);

/// With base point `o = 0`, checks that `a∘c := [a,o,c]` is associative,
/// that `[o,a,o]` inverts `a`, and that `[a,b,c] = a∘[o,b,o]∘c`. Together
/// with the cancellation laws this makes the heap the heap of a group,
/// hence para-associative.
fn group_certificate(t: &Tables, exec: Exec) -> Option<CertificateFailure> {
    let n = t.len();
    if n == 0 {
        return None;
    }
    let comp = |a: usize, c: usize| t.heap(a, 0, c);
    let inv = |b: usize| t.heap(0, b, 0);
    if let Some(i) = exec.find_first(n * n * n, |i| {
        let [a, b, c] = [i / (n * n), i / n % n, i % n];
        comp(comp(a, b), c) != comp(a, comp(b, c))
    }) {
        return Some(("retract is not associative", tuple(i, n, 3)));
    }
    if let Some(a) = exec.find_first(n, |a| comp(a, inv(a)) != 0) {
        return Some(("retract has no inverse", vec![a]));
    }
    if let Some(i) = exec.find_first(n * n * n, |i| {
        let [a, b, c] = [i / (n * n), i / n % n, i % n];
        t.heap(a, b, c) != comp(comp(a, inv(b)), c)
    }) {
        return Some(("heap does not decompose through the retract", tuple(i, n, 3)));
    }
    None
}

/// The lower-arity checks a reduction adds on top of the certificate.
fn reduced_check(id: Identity, t: &Tables, exec: Exec) -> Option<CertificateFailure> {
    let n = t.len();
    let comp = |a: usize, c: usize| t.heap(a, 0, c);
    match id {
        Identity::Transposition => exec
            .find_first(n * n, |i| comp(i / n, i % n) != comp(i % n, i / n))
            .map(|i| ("retract is not commutative", tuple(i, n, 2))),
        Identity::LeftDistributivity | Identity::RightDistributivity => {
            let m = |a: usize, b: usize| if id == Identity::LeftDistributivity { t.mul(a, b) } else { t.mul(b, a) };
            exec.find_first(n * n * n, |i| {
                let [s, a, c] = [i / (n * n), i / n % n, i % n];
                m(s, comp(a, c)) != t.heap(m(s, a), m(s, 0), m(s, c))
            })
            .map(|i| ("multiplication map is not affine", tuple(i, n, 3)))
        }
        _ => None,
    }
}

fn render(space: &PointSpace, points: &[Point], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| space.render(&points[i])).collect()
}

/// Checks the truss, unit, absorber and semi-brace identities at points.
/// Unit and semi-brace laws need a counit, the absorber law a cozero.
pub fn check_truss(space: &PointSpace, mode: Mode, exec: Exec) -> Result<TrussReport> {
    match mode {
        Mode::Exhaustive { budget } => exhaustive(space, budget, exec),
        Mode::Sampled { samples, seed } => Ok(sampled(space, samples, seed, exec)),
    }
}

fn exhaustive(space: &PointSpace, budget: u64, exec: Exec) -> Result<TrussReport> {
    let count = space.point_count().ok_or(Error::InfiniteBase)?;
    let ids = identities_for(space);
    let (methods, evaluations) = plan(&ids, count, budget)?;
    let t = Tables::build(space, exec)?;
    let n = t.len();
    let certificate = methods.contains(&Method::Reduced).then(|| group_certificate(&t, exec));
    let mut results = Vec::with_capacity(ids.len());
    for (&id, &method) in ids.iter().zip(&methods) {
        let mut r = IdentityResult {
            identity: id,
            method,
            lemma: None,
            tuples: (n as u128).pow(id.arity()),
            passed: true,
            witness: None,
            note: None,
        };
        if method == Method::Exhaustive {
            let k = id.arity();
            let total = n.pow(k);
            if let Some(i) = exec.find_first(total, |i| !holds(&t, id, &tuple(i, n, k))) {
                r.passed = false;
                r.witness = Some(render(space, t.points(), &tuple(i, n, k)));
            }
        } else {
            r.lemma = id.reduction();
            r.tuples = certificate_cost(n as u128) + reduced_cost(id, n as u128);
            let cancel = results
                .iter()
                .filter(|c: &&IdentityResult| {
                    matches!(c.identity, Identity::HeapLeftCancel | Identity::HeapRightCancel)
                })
                .all(|c| c.passed);
            let failure = if !cancel {
                Some(("heap cancellation fails", vec![]))
            } else {
                certificate.clone().flatten().or_else(|| reduced_check(id, &t, exec))
            };
            if let Some((why, idx)) = failure {
                r.passed = false;
                r.note = Some(why.to_string());
                r.witness = (!idx.is_empty()).then(|| render(space, t.points(), &idx));
            }
        }
        results.push(r);
    }
    Ok(TrussReport {
        mode: "exhaustive",
        algebra: space.algebra().to_string(),
        points: Some(n),
        samples: None,
        seed: None,
        budget: Some(budget),
        evaluations,
        identities: results,
    })
}

fn sampled(space: &PointSpace, samples: usize, seed: u64, exec: Exec) -> TrussReport {
    let ids = identities_for(space);
    let mut evaluations = 0u128;
    let results = ids
        .iter()
        .enumerate()
        .map(|(stream, &id)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream as u64);
            let k = id.arity() as usize;
            let tuples: Vec<Vec<Point>> =
                (0..samples).map(|_| (0..k).map(|_| space.sample(&mut rng)).collect()).collect();
            evaluations += samples as u128;
            let fail = exec.find_first(samples, |i| !holds(space, id, &tuples[i]));
            IdentityResult {
                identity: id,
                method: Method::Sampled,
                lemma: None,
                tuples: samples as u128,
                passed: fail.is_none(),
                witness: fail.map(|i| tuples[i].iter().map(|p| space.render(p)).collect()),
                note: None,
            }
        })
        .collect();
    TrussReport {
        mode: "sampled",
        algebra: space.algebra().to_string(),
        points: None,
        samples: Some(samples),
        seed: Some(seed),
        budget: None,
        evaluations,
        identities: results,
    }
}
