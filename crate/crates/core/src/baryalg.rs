//! Barycentric algebras: the interface, concrete instances, law checkers,
//! barycenters, scalar multiplication on pointed algebras and cones.
//!
//! An algebra is a set with operations `x +_a y` for `a ∈ [0, 1]`. Finite
//! instances expose their carrier so that laws can be checked exhaustively;
//! symbolic instances (countable carriers with closed-form operations) expose
//! a sample instead.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{parse_q, Rat, UnitRat, XRat, Q};
use crate::finspace::FinPoset;
use crate::lp::{LinearSystem, LpOutcome, Relation, Sense};
use crate::valuation::{stochastic_le, SimpleValuation};

pub trait BarycentricAlgebra {
    type Elem: Clone + Eq + Ord + fmt::Debug;

    fn kind(&self) -> &'static str;

    /// `x +_a y`.
    fn mix(&self, x: &Self::Elem, a: &UnitRat, y: &Self::Elem) -> Self::Elem;

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    fn bottom(&self) -> Option<Self::Elem> {
        None
    }

    fn is_pointed(&self) -> bool {
        self.bottom().is_some()
    }

    /// `mix(x, a, y)` does not depend on `a` for `a ∈ (0, 1)`.
    fn is_interval_flat(&self) -> bool {
        false
    }

    fn is_ordered(&self) -> bool {
        true
    }

    fn carrier(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Elements used when laws are checked on a symbolic instance.
    fn sample(&self) -> Vec<Self::Elem> {
        self.carrier().unwrap_or_default()
    }

    fn elem_to_json(&self, x: &Self::Elem) -> Value;

    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;

    /// Coordinates for instances living in `ℚ≥0^d`.
    fn vector_coords(&self, _x: &Self::Elem) -> Option<Vec<Rat>> {
        None
    }

    /// All `z` with `c·z = y`, when that set is finite and computable.
    fn scalar_preimages(&self, c: &UnitRat, y: &Self::Elem) -> Option<Vec<Self::Elem>> {
        let bot = self.bottom()?;
        let carrier = self.carrier()?;
        Some(carrier.into_iter().filter(|z| self.mix(z, c, &bot) == *y).collect())
    }

    /// Some `s` such that `α^j·x = α^j·y` for some `j` iff `α^s·x = α^s·y`,
    /// for every `α ∈ (0, 1)`. Finite carriers compute this themselves.
    fn scalar_stabilization(&self) -> Option<usize> {
        None
    }

    /// Decides `∃x'. mix(x, c, x') ≤ y` and returns a witness.
    fn le_witness(&self, x: &Self::Elem, c: &UnitRat, y: &Self::Elem) -> Result<Option<Self::Elem>> {
        if let Some(carrier) = self.carrier() {
            return Ok(carrier.into_iter().find(|z| self.leq(&self.mix(x, c, z), y)));
        }
        match self.bottom() {
            Some(bot) if self.is_ordered() => {
                Ok(if self.leq(&self.mix(x, c, &bot), y) { Some(bot) } else { None })
            }
            _ => Err(Error::Unsupported(format!("{}: no witness oracle for the cone order", self.kind()))),
        }
    }
}

/// `a·x = x +_a ⊥`.
pub fn scalar<A: BarycentricAlgebra>(alg: &A, a: &UnitRat, x: &A::Elem) -> Result<A::Elem> {
    let bot = alg.bottom().ok_or(Error::NotPointed)?;
    Ok(alg.mix(x, a, &bot))
}

/// The coefficient grid `{0, 1/4, 1/3, 1/2, 2/3, 3/4, 1}`.
pub fn coefficient_grid() -> Vec<UnitRat> {
    [(0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1)]
        .iter()
        .map(|&(n, d)| UnitRat::frac(n, d))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Schedule<E> {
    pub grid: Vec<UnitRat>,
    pub elements: Vec<E>,
}

impl<E: Clone> Schedule<E> {
    /// The whole carrier (or the sample) over the standard grid.
    pub fn standard<A: BarycentricAlgebra<Elem = E>>(alg: &A) -> Schedule<E> {
        Schedule { grid: coefficient_grid(), elements: alg.sample() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }

    fn record(&mut self, ok: bool, law: &'static str, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation { law, witness: witness() });
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass(),
            "checked": self.checked,
            "violations": self.violations.iter()
                .map(|v| json!({"law": v.law, "witness": v.witness}))
                .collect::<Vec<_>>(),
        })
    }
}

fn ratio(n: &Rat, d: &Rat) -> UnitRat {
    UnitRat::new(n / d).expect("ratio within [0, 1]")
}

/// Checks `x +_1 y = x`, `x +_a x = x`, `x +_a y = y +_{1-a} x` and
/// `(x +_a y) +_b z = x +_{ab} (y +_{(1-a)b/(1-ab)} z)` for `a, b < 1`.
pub fn check_axioms<A: BarycentricAlgebra>(alg: &A, sched: &Schedule<A::Elem>) -> Report {
    let mut rep = Report::default();
    let els = &sched.elements;
    let one = UnitRat::one();
    for x in els {
        for y in els {
            rep.record(alg.mix(x, &one, y) == *x, "unit", || format!("x={x:?} y={y:?}"));
        }
        for a in &sched.grid {
            rep.record(alg.mix(x, a, x) == *x, "idempotence", || format!("x={x:?} a={a}"));
        }
    }
    for x in els {
        for y in els {
            for a in &sched.grid {
                rep.record(
                    alg.mix(x, a, y) == alg.mix(y, &a.complement(), x),
                    "skew-commutativity",
                    || format!("x={x:?} y={y:?} a={a}"),
                );
            }
        }
    }
    for a in sched.grid.iter().filter(|a| !a.is_one()) {
        for b in sched.grid.iter().filter(|b| !b.is_one()) {
            let ab = a.mul(b);
            let inner = ratio(&(a.complement().rat() * b.rat()), ab.complement().rat());
            for x in els {
                for y in els {
                    let xy = alg.mix(x, a, y);
                    for z in els {
                        let lhs = alg.mix(&xy, b, z);
                        let rhs = alg.mix(x, &ab, &alg.mix(y, &inner, z));
                        rep.record(lhs == rhs, "skew-associativity", || {
                            format!("x={x:?} y={y:?} z={z:?} a={a} b={b}")
                        });
                    }
                }
            }
        }
    }
    rep
}

/// Checks `(x +_a y) +_b (z +_a t) = (x +_b z) +_a (y +_b t)`.
pub fn check_entropic<A: BarycentricAlgebra>(alg: &A, sched: &Schedule<A::Elem>) -> Report {
    let mut rep = Report::default();
    let els = &sched.elements;
    for a in &sched.grid {
        for b in &sched.grid {
            for x in els {
                for y in els {
                    let xy = alg.mix(x, a, y);
                    for z in els {
                        let xz = alg.mix(x, b, z);
                        for t in els {
                            let lhs = alg.mix(&xy, b, &alg.mix(z, a, t));
                            let rhs = alg.mix(&xz, a, &alg.mix(y, b, t));
                            rep.record(lhs == rhs, "entropic", || {
                                format!("x={x:?} y={y:?} z={z:?} t={t:?} a={a} b={b}")
                            });
                        }
                    }
                }
            }
        }
    }
    rep
}

/// Checks the six scalar laws of a pointed algebra:
/// `0·x = ⊥`, `(ab)·x = a·(b·x)`, `1·x = x`, `a·⊥ = ⊥`,
/// `a·(x +_b y) = a·x +_b a·y`, `a·x +_r b·x = (ra + (1-r)b)·x`.
pub fn check_pointed_laws<A: BarycentricAlgebra>(alg: &A, sched: &Schedule<A::Elem>) -> Result<Report> {
    let bot = alg.bottom().ok_or(Error::NotPointed)?;
    let s = |a: &UnitRat, x: &A::Elem| alg.mix(x, a, &bot);
    let mut rep = Report::default();
    let els = &sched.elements;
    let g = &sched.grid;
    for x in els {
        rep.record(s(&UnitRat::zero(), x) == bot, "zero scalar", || format!("x={x:?}"));
        rep.record(s(&UnitRat::one(), x) == *x, "unit scalar", || format!("x={x:?}"));
        for a in g {
            for b in g {
                rep.record(s(&a.mul(b), x) == s(a, &s(b, x)), "scalar associativity", || {
                    format!("x={x:?} a={a} b={b}")
                });
                for r in g {
                    let lhs = alg.mix(&s(a, x), r, &s(b, x));
                    let c = UnitRat::new(r.rat() * a.rat() + r.complement().rat() * b.rat())
                        .expect("convex combination of coefficients");
                    rep.record(lhs == s(&c, x), "scalar convexity", || {
                        format!("x={x:?} a={a} b={b} r={r}")
                    });
                }
            }
        }
    }
    for a in g {
        rep.record(s(a, &bot) == bot, "scalar of bottom", || format!("a={a}"));
        for b in g {
            for x in els {
                for y in els {
                    let lhs = s(a, &alg.mix(x, b, y));
                    let rhs = alg.mix(&s(a, x), b, &s(a, y));
                    rep.record(lhs == rhs, "scalar distributivity", || {
                        format!("x={x:?} y={y:?} a={a} b={b}")
                    });
                }
            }
        }
    }
    Ok(rep)
}

fn check_weights<E>(weighted: &[(Rat, E)], max_total: bool) -> Result<Rat> {
    if weighted.is_empty() && !max_total {
        return Err(Error::Precondition("barycenter of an empty family".into()));
    }
    let total: Rat = weighted.iter().map(|(a, _)| a).sum();
    if max_total {
        if total > Rat::one() {
            return Err(Error::Precondition(format!("weights sum to {total} > 1")));
        }
    } else if !total.is_one() {
        return Err(Error::Precondition(format!("weights sum to {total}, not 1")));
    }
    Ok(total)
}

/// `Σ a_i x_i` for weights summing to 1, computed as `x_n` when `a_n = 1`
/// and `(Σ_{i<n} a_i/(1-a_n)·x_i) +_{1-a_n} x_n` otherwise.
pub fn barycenter<A: BarycentricAlgebra>(alg: &A, weighted: &[(Rat, A::Elem)]) -> Result<A::Elem> {
    check_weights(weighted, false)?;
    Ok(barycenter_rec(alg, weighted))
}

fn barycenter_rec<A: BarycentricAlgebra>(alg: &A, w: &[(Rat, A::Elem)]) -> A::Elem {
    let (an, xn) = w.last().expect("nonempty");
    if an.is_one() || w.len() == 1 {
        return xn.clone();
    }
    let rest = Rat::one().checked_sub(an).expect("weight at most 1");
    let head: Vec<(Rat, A::Elem)> = w[..w.len() - 1].iter().map(|(a, x)| (a / &rest, x.clone())).collect();
    let y = barycenter_rec(alg, &head);
    alg.mix(&y, &UnitRat::new(rest).expect("unit"), xn)
}

/// Barycenter with total weight at most 1 in a pointed algebra:
/// `(Σa_i)·barycenter(renormalised)`, or `⊥` when every weight is 0.
pub fn barycenter_sub<A: BarycentricAlgebra>(alg: &A, weighted: &[(Rat, A::Elem)]) -> Result<A::Elem> {
    let bot = alg.bottom().ok_or(Error::NotPointed)?;
    let total = check_weights(weighted, true)?;
    if total.is_zero() {
        return Ok(bot);
    }
    let renorm: Vec<_> = weighted.iter().map(|(a, x)| (a / &total, x.clone())).collect();
    let b = barycenter_rec(alg, &renorm);
    Ok(alg.mix(&b, &UnitRat::new(total).expect("unit"), &bot))
}

/// A cone: commutative monoid with an action of `ℚ≥0`.
pub trait Cone {
    type V: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::V;
    fn add(&self, x: &Self::V, y: &Self::V) -> Self::V;
    fn smul(&self, a: &Rat, x: &Self::V) -> Self::V;
}

/// `ℚ≥0` with ordinary operations.
#[derive(Clone, Copy, Debug, Default)]
pub struct RatCone;

impl Cone for RatCone {
    type V = Rat;
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn add(&self, x: &Rat, y: &Rat) -> Rat {
        x + y
    }
    fn smul(&self, a: &Rat, x: &Rat) -> Rat {
        a * x
    }
}

/// `ℚ≥0 ∪ {∞}` with `0·∞ = 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct XRatCone;

impl Cone for XRatCone {
    type V = XRat;
    fn zero(&self) -> XRat {
        XRat::zero()
    }
    fn add(&self, x: &XRat, y: &XRat) -> XRat {
        x.clone() + y.clone()
    }
    fn smul(&self, a: &Rat, x: &XRat) -> XRat {
        x.scale(a)
    }
}

/// `ℚ≥0^d`.
#[derive(Clone, Copy, Debug)]
pub struct VectorCone(pub usize);

impl Cone for VectorCone {
    type V = Vec<Rat>;
    fn zero(&self) -> Vec<Rat> {
        vec![Rat::zero(); self.0]
    }
    fn add(&self, x: &Vec<Rat>, y: &Vec<Rat>) -> Vec<Rat> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }
    fn smul(&self, a: &Rat, x: &Vec<Rat>) -> Vec<Rat> {
        x.iter().map(|v| a * v).collect()
    }
}

/// Bounded simple valuations on a fixed space.
#[derive(Clone, Debug)]
pub struct ValuationCone(pub Arc<FinPoset>);

impl Cone for ValuationCone {
    type V = SimpleValuation;
    fn zero(&self) -> SimpleValuation {
        SimpleValuation::zero(self.0.clone())
    }
    fn add(&self, x: &SimpleValuation, y: &SimpleValuation) -> SimpleValuation {
        x.add(y).expect("valuations on the cone's space")
    }
    fn smul(&self, a: &Rat, x: &SimpleValuation) -> SimpleValuation {
        x.scale(a)
    }
}

/// The cone structure induced on a pointed algebra by a doubling map:
/// `x + y = dbl(x +_{1/2} y)`, `0 = ⊥`, `a·x = dbl^k((a/2^k)·x)`.
pub struct DoublingCone<'a, A: BarycentricAlgebra, F> {
    alg: &'a A,
    dbl: F,
    bot: A::Elem,
}

impl<'a, A, F> DoublingCone<'a, A, F>
where
    A: BarycentricAlgebra,
    F: Fn(&A::Elem) -> A::Elem,
{
    pub fn dbl(&self, x: &A::Elem) -> A::Elem {
        (self.dbl)(x)
    }
}

impl<'a, A, F> Cone for DoublingCone<'a, A, F>
where
    A: BarycentricAlgebra,
    F: Fn(&A::Elem) -> A::Elem,
{
    type V = A::Elem;
    fn zero(&self) -> A::Elem {
        self.bot.clone()
    }
    fn add(&self, x: &A::Elem, y: &A::Elem) -> A::Elem {
        (self.dbl)(&self.alg.mix(x, &UnitRat::half(), y))
    }
    fn smul(&self, a: &Rat, x: &A::Elem) -> A::Elem {
        let mut k = 0u32;
        let mut scaled = a.clone();
        while scaled > Rat::one() {
            scaled = &scaled / &Rat::from_int(2);
            k += 1;
        }
        let mut y = self.alg.mix(x, &UnitRat::new(scaled).expect("scaled into [0, 1]"), &self.bot);
        for _ in 0..k {
            y = (self.dbl)(&y);
        }
        y
    }
}

/// Builds the doubling cone after spot-checking, on the schedule, that
/// `dbl(½·x) = x`, `dbl(⊥) = ⊥` and `dbl(x +_a y) = dbl(x) +_a dbl(y)`.
pub fn cone_from_doubling<'a, A, F>(
    alg: &'a A,
    dbl: F,
    sched: &Schedule<A::Elem>,
) -> Result<DoublingCone<'a, A, F>>
where
    A: BarycentricAlgebra,
    F: Fn(&A::Elem) -> A::Elem,
{
    let bot = alg.bottom().ok_or(Error::NotPointed)?;
    let half = UnitRat::half();
    if dbl(&bot) != bot {
        return Err(Error::Validation("doubling map does not fix bottom".into()));
    }
    for x in &sched.elements {
        if dbl(&alg.mix(x, &half, &bot)) != *x {
            return Err(Error::Validation(format!("dbl(½·x) ≠ x at {x:?}")));
        }
        for y in &sched.elements {
            for a in &sched.grid {
                if dbl(&alg.mix(x, a, y)) != alg.mix(&dbl(x), a, &dbl(y)) {
                    return Err(Error::Validation(format!("doubling map not affine at {x:?}, {y:?}")));
                }
            }
        }
    }
    Ok(DoublingCone { alg, dbl, bot })
}

/// Extends an affine map on probability valuations to all bounded ones:
/// `0 ↦ 0`, otherwise `ν ↦ total(ν)·f(ν/total(ν))`.
pub fn extend_prob_to_bounded<C: Cone>(
    cone: &C,
    f: impl Fn(&SimpleValuation) -> C::V,
    nu: &SimpleValuation,
) -> C::V {
    let total = nu.total();
    match total.recip() {
        None => cone.zero(),
        Some(inv) => cone.smul(&total, &f(&nu.scale(&inv))),
    }
}

/// Checks, for every sampled pair, the six cone equations:
/// associativity and commutativity of `+`, `x + 0 = x`, `1·x = x`,
/// `(ab)·x = a·(b·x)`, `a·(x+y) = a·x + a·y`, `(a+b)·x = a·x + b·x`, `0·x = 0`.
pub fn check_cone_laws<C: Cone>(cone: &C, els: &[C::V], scalars: &[Rat]) -> Report {
    let mut rep = Report::default();
    let z = cone.zero();
    for x in els {
        rep.record(cone.add(x, &z) == *x, "additive unit", || format!("x={x:?}"));
        rep.record(cone.smul(&Rat::one(), x) == *x, "unit scalar", || format!("x={x:?}"));
        rep.record(cone.smul(&Rat::zero(), x) == z, "zero scalar", || format!("x={x:?}"));
        for a in scalars {
            for b in scalars {
                rep.record(
                    cone.smul(&(a * b), x) == cone.smul(a, &cone.smul(b, x)),
                    "scalar associativity",
                    || format!("x={x:?} a={a} b={b}"),
                );
                rep.record(
                    cone.smul(&(a + b), x) == cone.add(&cone.smul(a, x), &cone.smul(b, x)),
                    "scalar additivity",
                    || format!("x={x:?} a={a} b={b}"),
                );
            }
        }
        for y in els {
            rep.record(cone.add(x, y) == cone.add(y, x), "commutativity", || format!("x={x:?} y={y:?}"));
            for a in scalars {
                rep.record(
                    cone.smul(a, &cone.add(x, y)) == cone.add(&cone.smul(a, x), &cone.smul(a, y)),
                    "distributivity",
                    || format!("x={x:?} y={y:?} a={a}"),
                );
            }
            for w in els {
                rep.record(
                    cone.add(&cone.add(x, y), w) == cone.add(x, &cone.add(y, w)),
                    "associativity",
                    || format!("x={x:?} y={y:?} z={w:?}"),
                );
            }
        }
    }
    rep
}

/// The polytope of monotone affine maps `h` on a finite interval-flat
/// carrier, normalised by `0 ≤ h ≤ 1`: one variable per carrier element,
/// `h(x) ≤ h(y)` for `x ≤ y` and `h(x) = h(y) = h(m(x,y))` for every pair.
pub(crate) fn affine_polytope<A: BarycentricAlgebra>(
    alg: &A,
    carrier: &[A::Elem],
    bounded: bool,
) -> Result<LinearSystem> {
    let pos = |e: &A::Elem| carrier.iter().position(|c| c == e).expect("closed carrier");
    let mut sys = LinearSystem::new();
    for x in carrier {
        sys.add_var(format!("h[{x:?}]"), true);
    }
    let one = Rat::one().into_q();
    let minus = -one.clone();
    let half = UnitRat::half();
    for (i, x) in carrier.iter().enumerate() {
        if bounded {
            sys.add_constraint(&[(i, one.clone())], Relation::Le, one.clone())?;
        }
        for (j, y) in carrier.iter().enumerate() {
            if i == j {
                continue;
            }
            if alg.leq(x, y) {
                sys.add_constraint(&[(i, one.clone()), (j, minus.clone())], Relation::Le, Q::zero())?;
            }
            if i < j {
                let k = pos(&alg.mix(x, &half, y));
                sys.add_constraint(&[(i, one.clone()), (j, minus.clone())], Relation::Eq, Q::zero())?;
                if k != i {
                    sys.add_constraint(&[(i, one.clone()), (k, minus.clone())], Relation::Eq, Q::zero())?;
                }
            }
        }
    }
    Ok(sys)
}

/// Decides whether `x₀` is a barycenter of `ν`: `Λ(x₀) = ∫Λ dν` for every
/// monotone affine `Λ`.
///
/// On `ℚ≥0^d` the coordinate functionals suffice. On finite interval-flat
/// carriers the functional `Λ ↦ Λ(x₀) − Σ a_i Λ(x_i)` must vanish on the
/// normalised polytope of monotone affine maps, which is decided by two LPs.
pub fn verify_barycenter_choquet<A: BarycentricAlgebra>(
    alg: &A,
    nu: &[(Rat, A::Elem)],
    x0: &A::Elem,
) -> Result<bool> {
    let total = check_weights(nu, alg.is_pointed())?;
    if !total.is_one() && nu.is_empty() && !alg.is_pointed() {
        return Err(Error::Precondition("empty valuation".into()));
    }
    if let Some(c0) = alg.vector_coords(x0) {
        if !total.is_one() {
            return Err(Error::Precondition("valuation must be normalised".into()));
        }
        let mut acc = vec![Rat::zero(); c0.len()];
        for (a, x) in nu {
            let cx = alg.vector_coords(x).expect("same instance");
            for (s, v) in acc.iter_mut().zip(cx) {
                *s = &*s + &(a * &v);
            }
        }
        return Ok(acc == c0);
    }
    let carrier = match alg.carrier() {
        Some(c) if alg.is_interval_flat() => c,
        _ => {
            return Err(Error::Unsupported(format!(
                "{}: barycenter verification needs a vector or finite interval-flat instance",
                alg.kind()
            )))
        }
    };
    let pos = |e: &A::Elem| {
        carrier
            .iter()
            .position(|c| c == e)
            .ok_or_else(|| Error::UnknownPoint(format!("{e:?}")))
    };
    let mut sys = affine_polytope(alg, &carrier, true)?;
    if !total.is_one() {
        let bot = alg.bottom().expect("pointed");
        sys.add_constraint(&[(pos(&bot)?, Rat::one().into_q())], Relation::Eq, Q::zero())?;
    }
    let mut obj: BTreeMap<usize, Q> = BTreeMap::new();
    *obj.entry(pos(x0)?).or_insert_with(Q::zero) += Rat::one().into_q();
    for (a, x) in nu {
        *obj.entry(pos(x)?).or_insert_with(Q::zero) -= a.as_q().clone();
    }
    let terms: Vec<(usize, Q)> = obj.into_iter().collect();
    sys.set_objective(&terms)?;
    for sense in [Sense::Max, Sense::Min] {
        match sys.optimize(sense)? {
            LpOutcome::Optimal { value, .. } if value.is_zero() => {}
            LpOutcome::Optimal { .. } => return Ok(false),
            _ => return Err(Error::Validation("normalised affine polytope must be bounded and nonempty".into())),
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// instances

/// A finite algebra whose mix is a fixed binary operation `m` on `(0, 1)`.
/// Sup-semilattices, with `m` the join, are the motivating case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatAlgebra {
    order: FinPoset,
    table: Vec<usize>,
}

impl FlatAlgebra {
    /// The join semilattice of a poset with all binary joins.
    pub fn semilattice(order: FinPoset) -> Result<FlatAlgebra> {
        let n = order.len();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(order.join(i, j).ok_or_else(|| {
                    Error::InvalidSpace(format!("no join of {} and {}", order.name(i), order.name(j)))
                })?);
            }
        }
        Ok(FlatAlgebra { order, table })
    }

    /// An arbitrary midpoint table `m[i][j]`; no laws are enforced.
    pub fn from_table(order: FinPoset, table: Vec<Vec<usize>>) -> Result<FlatAlgebra> {
        let n = order.len();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&k| k >= n)) {
            return Err(Error::InvalidSpace("midpoint table must be n×n over the elements".into()));
        }
        Ok(FlatAlgebra { order, table: table.into_iter().flatten().collect() })
    }

    pub fn diamond() -> FlatAlgebra {
        FlatAlgebra::semilattice(FinPoset::diamond()).expect("the diamond is a lattice")
    }

    pub fn order(&self) -> &FinPoset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The midpoint operation `m(x, y)`.
    pub fn m(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order.len() + y]
    }

    pub fn is_semilattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.order.join(i, j) == Some(self.m(i, j))))
    }

    fn table_json(&self) -> Value {
        let n = self.len();
        Value::Array(
            (0..n)
                .map(|i| Value::Array((0..n).map(|j| json!(self.order.name(self.m(i, j)))).collect()))
                .collect(),
        )
    }

    fn read_table(order: &FinPoset, v: &Value) -> Result<Vec<Vec<usize>>> {
        let rows = v.as_array().ok_or_else(|| Error::Parse("table must be an array of rows".into()))?;
        rows.iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("table row must be an array".into()))?
                    .iter()
                    .map(|c| {
                        let s = c.as_str().ok_or_else(|| Error::Parse("table entries are names".into()))?;
                        order.index_of(s)
                    })
                    .collect()
            })
            .collect()
    }
}

impl BarycentricAlgebra for FlatAlgebra {
    type Elem = usize;

    fn kind(&self) -> &'static str {
        if self.is_semilattice() {
            "semilattice"
        } else {
            "flat"
        }
    }

    fn mix(&self, x: &usize, a: &UnitRat, y: &usize) -> usize {
        if a.is_one() {
            *x
        } else if a.is_zero() {
            *y
        } else {
            self.m(*x, *y)
        }
    }

    fn leq(&self, x: &usize, y: &usize) -> bool {
        self.order.leq(*x, *y)
    }

    fn bottom(&self) -> Option<usize> {
        self.order.least()
    }

    fn is_interval_flat(&self) -> bool {
        true
    }

    fn carrier(&self) -> Option<Vec<usize>> {
        Some((0..self.len()).collect())
    }

    fn elem_to_json(&self, x: &usize) -> Value {
        json!(self.order.name(*x))
    }

    fn elem_from_json(&self, v: &Value) -> Result<usize> {
        let s = v.as_str().ok_or_else(|| Error::Parse(format!("expected an element name, got {v}")))?;
        self.order.index_of(s)
    }
}

/// `ℚ≥0^d` with affine combinations, pointed by the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalConvex {
    pub dim: usize,
}

impl RationalConvex {
    pub fn new(dim: usize) -> RationalConvex {
        RationalConvex { dim }
    }

    pub fn point(&self, coords: &[(u64, u64)]) -> Vec<Rat> {
        assert_eq!(coords.len(), self.dim);
        coords.iter().map(|&(n, d)| Rat::new(n, d)).collect()
    }
}

impl BarycentricAlgebra for RationalConvex {
    type Elem = Vec<Rat>;

    fn kind(&self) -> &'static str {
        "rational_convex"
    }

    fn mix(&self, x: &Vec<Rat>, a: &UnitRat, y: &Vec<Rat>) -> Vec<Rat> {
        let b = a.complement();
        x.iter().zip(y).map(|(u, v)| a.rat() * u + b.rat() * v).collect()
    }

    fn leq(&self, x: &Vec<Rat>, y: &Vec<Rat>) -> bool {
        x.iter().zip(y).all(|(u, v)| u <= v)
    }

    fn bottom(&self) -> Option<Vec<Rat>> {
        Some(vec![Rat::zero(); self.dim])
    }

    fn sample(&self) -> Vec<Vec<Rat>> {
        let vals = [Rat::zero(), Rat::one(), Rat::new(1, 2), Rat::new(5, 3), Rat::new(3, 4)];
        (0..5)
            .map(|k| (0..self.dim).map(|i| vals[(k + 2 * i) % vals.len()].clone()).collect())
            .collect()
    }

    fn elem_to_json(&self, x: &Vec<Rat>) -> Value {
        Value::Array(x.iter().map(|r| json!(r.to_string())).collect())
    }

    fn elem_from_json(&self, v: &Value) -> Result<Vec<Rat>> {
        let x: Vec<Rat> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if x.len() != self.dim {
            return Err(Error::Parse(format!("expected a vector of length {}", self.dim)));
        }
        Ok(x)
    }

    fn vector_coords(&self, x: &Vec<Rat>) -> Option<Vec<Rat>> {
        Some(x.clone())
    }

    fn scalar_preimages(&self, c: &UnitRat, y: &Vec<Rat>) -> Option<Vec<Vec<Rat>>> {
        let inv = c.rat().recip()?;
        Some(vec![y.iter().map(|v| v * &inv).collect()])
    }

    fn scalar_stabilization(&self) -> Option<usize> {
        Some(0)
    }

    fn le_witness(&self, x: &Vec<Rat>, c: &UnitRat, y: &Vec<Rat>) -> Result<Option<Vec<Rat>>> {
        let bot = vec![Rat::zero(); self.dim];
        Ok(if self.leq(&self.mix(x, c, &bot), y) { Some(bot) } else { None })
    }
}

/// An element of the Keimel–Plotkin algebra: an interval `(−∞, s)` with
/// `s ∈ [0, 1]`, or the interval `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum KpElem {
    Low(Rat),
    Top,
}

/// Intervals with pointwise operations and order; `⊥ = (−∞, 0)`.
/// `a·x = a·y` for `x = (0,1)`, `y = (−∞,1)` and every `a < 1`, although
/// `x ≰ y`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Kp;

impl BarycentricAlgebra for Kp {
    type Elem = KpElem;

    fn kind(&self) -> &'static str {
        "kp"
    }

    fn mix(&self, x: &KpElem, a: &UnitRat, y: &KpElem) -> KpElem {
        if a.is_one() {
            return x.clone();
        }
        if a.is_zero() {
            return y.clone();
        }
        let b = a.complement();
        match (x, y) {
            (KpElem::Top, KpElem::Top) => KpElem::Top,
            (KpElem::Low(s), KpElem::Low(t)) => KpElem::Low(a.rat() * s + b.rat() * t),
            (KpElem::Low(s), KpElem::Top) => KpElem::Low(a.rat() * s + b.rat().clone()),
            (KpElem::Top, KpElem::Low(t)) => KpElem::Low(a.rat().clone() + b.rat() * t),
        }
    }

    fn leq(&self, x: &KpElem, y: &KpElem) -> bool {
        match (x, y) {
            (_, KpElem::Top) => true,
            (KpElem::Top, KpElem::Low(_)) => false,
            (KpElem::Low(s), KpElem::Low(t)) => s <= t,
        }
    }

    fn bottom(&self) -> Option<KpElem> {
        Some(KpElem::Low(Rat::zero()))
    }

    fn sample(&self) -> Vec<KpElem> {
        vec![
            KpElem::Low(Rat::zero()),
            KpElem::Low(Rat::new(1, 4)),
            KpElem::Low(Rat::new(2, 3)),
            KpElem::Low(Rat::one()),
            KpElem::Top,
        ]
    }

    fn elem_to_json(&self, x: &KpElem) -> Value {
        match x {
            KpElem::Low(s) => json!({"lo": "-inf", "hi": s.to_string()}),
            KpElem::Top => json!({"lo": "0", "hi": "1"}),
        }
    }

    fn elem_from_json(&self, v: &Value) -> Result<KpElem> {
        let lo = v.get("lo").and_then(Value::as_str);
        let hi = v.get("hi").and_then(Value::as_str);
        match (lo, hi) {
            (Some("-inf"), Some(h)) => {
                let s: Rat = h.parse()?;
                if s > Rat::one() {
                    return Err(Error::Parse("upper end must be at most 1".into()));
                }
                Ok(KpElem::Low(s))
            }
            (Some("0"), Some("1")) => Ok(KpElem::Top),
            _ => Err(Error::Parse(format!("not an interval of the KP algebra: {v}"))),
        }
    }

    fn scalar_preimages(&self, c: &UnitRat, y: &KpElem) -> Option<Vec<KpElem>> {
        if c.is_zero() {
            return None;
        }
        if c.is_one() {
            return Some(vec![y.clone()]);
        }
        let mut out = Vec::new();
        if let KpElem::Low(t) = y {
            let s = t / c.rat();
            if s <= Rat::one() {
                out.push(KpElem::Low(s));
            }
            if t == c.rat() {
                out.push(KpElem::Top);
            }
        }
        Some(out)
    }

    fn scalar_stabilization(&self) -> Option<usize> {
        Some(1)
    }
}

/// `]−∞, 0] ∩ ℚ` with affine combinations; ordered but not pointed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BMinus;

impl BarycentricAlgebra for BMinus {
    type Elem = Q;

    fn kind(&self) -> &'static str {
        "bminus"
    }

    fn mix(&self, x: &Q, a: &UnitRat, y: &Q) -> Q {
        a.rat().as_q() * x + a.complement().rat().as_q() * y
    }

    fn leq(&self, x: &Q, y: &Q) -> bool {
        x <= y
    }

    fn sample(&self) -> Vec<Q> {
        ["0", "-1/2", "-1", "-3", "-2/3"].iter().map(|s| parse_q(s).unwrap()).collect()
    }

    fn elem_to_json(&self, x: &Q) -> Value {
        json!(crate::exactnum::fmt_q(x))
    }

    fn elem_from_json(&self, v: &Value) -> Result<Q> {
        let s = v.as_str().ok_or_else(|| Error::Parse("expected a rational string".into()))?;
        let x = parse_q(s)?;
        if x.is_positive() {
            return Err(Error::Parse(format!("{s} is positive")));
        }
        Ok(x)
    }

    /// `mix(x, c, x') ≤ y` iff `x' ≤ (y − c·x)/(1 − c)`; the witness is
    /// `min(0, that bound)`.
    fn le_witness(&self, x: &Q, c: &UnitRat, y: &Q) -> Result<Option<Q>> {
        if c.is_one() {
            return Ok(if x <= y { Some(Q::zero()) } else { None });
        }
        let bound = (y - c.rat().as_q() * x) / c.complement().rat().as_q();
        Ok(Some(if bound.is_negative() { bound } else { Q::zero() }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValuationMode {
    Prob,
    Subprob,
}

/// Simple valuations on a finite space with pointwise mixing.
/// Subprobability valuations are pointed by `0`; probability valuations are
/// pointed by `δ_⊥` when the space has a least element.
#[derive(Clone, Debug)]
pub struct ValuationAlgebra {
    space: Arc<FinPoset>,
    mode: ValuationMode,
}

impl ValuationAlgebra {
    pub fn new(space: Arc<FinPoset>, mode: ValuationMode) -> ValuationAlgebra {
        ValuationAlgebra { space, mode }
    }

    pub fn space(&self) -> &Arc<FinPoset> {
        &self.space
    }

    pub fn mode(&self) -> ValuationMode {
        self.mode
    }
}

impl BarycentricAlgebra for ValuationAlgebra {
    type Elem = SimpleValuation;

    fn kind(&self) -> &'static str {
        "valuations"
    }

    fn mix(&self, x: &SimpleValuation, a: &UnitRat, y: &SimpleValuation) -> SimpleValuation {
        x.mix(a.rat(), y).expect("same space")
    }

    fn leq(&self, x: &SimpleValuation, y: &SimpleValuation) -> bool {
        stochastic_le(x, y).expect("same space").related
    }

    fn bottom(&self) -> Option<SimpleValuation> {
        match self.mode {
            ValuationMode::Subprob => Some(SimpleValuation::zero(self.space.clone())),
            ValuationMode::Prob => self.space.least().map(|b| SimpleValuation::dirac(self.space.clone(), b)),
        }
    }

    fn sample(&self) -> Vec<SimpleValuation> {
        let n = self.space.len();
        let mut out = Vec::new();
        let sp = self.space.clone();
        let spread = |k: usize| {
            SimpleValuation::new(sp.clone(), (0..n).map(|i| (i, Rat::new(((i + k) % 3) as u64, 1))))
                .expect("indices in range")
        };
        for k in 0..3 {
            let v = spread(k);
            let t = v.total();
            out.push(match t.recip() {
                Some(inv) => v.scale(&inv),
                None => SimpleValuation::dirac(sp.clone(), 0),
            });
        }
        out.push(SimpleValuation::dirac(sp.clone(), n - 1));
        if self.mode == ValuationMode::Subprob {
            out.push(SimpleValuation::new(sp.clone(), [(n / 2, Rat::new(1, 3))]).expect("in range"));
            out.push(SimpleValuation::zero(sp));
        }
        out
    }

    fn elem_to_json(&self, x: &SimpleValuation) -> Value {
        x.to_json()
    }

    fn elem_from_json(&self, v: &Value) -> Result<SimpleValuation> {
        let nu = SimpleValuation::from_json(v, Some(self.space.clone()))?;
        let t = nu.total();
        match self.mode {
            ValuationMode::Prob if !t.is_one() => Err(Error::Precondition("not a probability valuation".into())),
            ValuationMode::Subprob if t > Rat::one() => {
                Err(Error::Precondition("not a subprobability valuation".into()))
            }
            _ => Ok(nu),
        }
    }

    fn scalar_preimages(&self, c: &UnitRat, y: &SimpleValuation) -> Option<Vec<SimpleValuation>> {
        let inv = c.rat().recip()?;
        let base = match self.mode {
            ValuationMode::Subprob => y.clone(),
            ValuationMode::Prob => {
                let bot = self.space.least()?;
                let deficit = c.complement().into_rat();
                match y.mass(bot).checked_sub(&deficit) {
                    None => return Some(vec![]),
                    Some(rest) => SimpleValuation::new(
                        self.space.clone(),
                        y.masses().iter().map(|(&x, m)| (x, if x == bot { rest.clone() } else { m.clone() })),
                    )
                    .ok()?,
                }
            }
        };
        let z = base.scale(&inv);
        Some(if z.total() <= Rat::one() { vec![z] } else { vec![] })
    }

    fn scalar_stabilization(&self) -> Option<usize> {
        Some(0)
    }
}

/// A JSON-described algebra of any supported kind.
#[derive(Clone, Debug)]
pub enum Instance {
    Flat(FlatAlgebra),
    RationalConvex(RationalConvex),
    Kp(Kp),
    BMinus(BMinus),
    Valuations(ValuationAlgebra),
}

/// Runs generic code against whichever instance an [`Instance`] holds.
pub trait InstanceVisitor {
    type Output;
    fn visit<A: BarycentricAlgebra>(self, alg: &A) -> Self::Output;
}

impl Instance {
    pub fn visit<V: InstanceVisitor>(&self, v: V) -> V::Output {
        match self {
            Instance::Flat(a) => v.visit(a),
            Instance::RationalConvex(a) => v.visit(a),
            Instance::Kp(a) => v.visit(a),
            Instance::BMinus(a) => v.visit(a),
            Instance::Valuations(a) => v.visit(a),
        }
    }

    pub fn from_json(v: &Value) -> Result<Instance> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("instance needs a \"kind\"".into()))?;
        match kind {
            "semilattice" => {
                if let Some(space) = v.get("space") {
                    return Ok(Instance::Flat(FlatAlgebra::semilattice(FinPoset::from_json(space)?)?));
                }
                let names: Vec<String> = serde_json::from_value(v.get("elements").cloned().unwrap_or(Value::Null))
                    .map_err(|e| Error::Parse(format!("elements: {e}")))?;
                let n = names.len();
                let probe = FinPoset::antichain(&names);
                let join = FlatAlgebra::read_table(
                    &probe,
                    v.get("join").ok_or_else(|| Error::Parse("semilattice needs \"join\"".into()))?,
                )?;
                if join.len() != n || join.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidSpace("join table must be n×n".into()));
                }
                let rel = (0..n * n).map(|k| join[k / n][k % n] == k % n).collect();
                let order = FinPoset::from_relation(names, rel)?;
                let alg = FlatAlgebra::semilattice(order)?;
                if (0..n).any(|i| (0..n).any(|j| alg.m(i, j) != join[i][j])) {
                    return Err(Error::InvalidSpace("join table is not the join of its order".into()));
                }
                Ok(Instance::Flat(alg))
            }
            "flat" => {
                let order = FinPoset::from_json(
                    v.get("space").ok_or_else(|| Error::Parse("flat instance needs \"space\"".into()))?,
                )?;
                let table = FlatAlgebra::read_table(
                    &order,
                    v.get("mid").ok_or_else(|| Error::Parse("flat instance needs \"mid\"".into()))?,
                )?;
                Ok(Instance::Flat(FlatAlgebra::from_table(order, table)?))
            }
            "rational_convex" => {
                let d = v
                    .get("dim")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse("rational_convex needs \"dim\"".into()))?;
                Ok(Instance::RationalConvex(RationalConvex::new(d as usize)))
            }
            "kp" => Ok(Instance::Kp(Kp)),
            "bminus" => Ok(Instance::BMinus(BMinus)),
            "valuations" => {
                let space = Arc::new(FinPoset::from_json(
                    v.get("space").ok_or_else(|| Error::Parse("valuations need \"space\"".into()))?,
                )?);
                let mode = match v.get("mode").and_then(Value::as_str).unwrap_or("prob") {
                    "prob" => ValuationMode::Prob,
                    "subprob" => ValuationMode::Subprob,
                    m => return Err(Error::Parse(format!("unknown mode {m:?}"))),
                };
                Ok(Instance::Valuations(ValuationAlgebra::new(space, mode)))
            }
            k => Err(Error::Parse(format!("unknown instance kind {k:?}"))),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Instance::Flat(a) if a.is_semilattice() => json!({
                "kind": "semilattice",
                "elements": a.order().names(),
                "join": a.table_json(),
            }),
            Instance::Flat(a) => json!({"kind": "flat", "space": a.order().to_json(), "mid": a.table_json()}),
            Instance::RationalConvex(a) => json!({"kind": "rational_convex", "dim": a.dim}),
            Instance::Kp(_) => json!({"kind": "kp"}),
            Instance::BMinus(_) => json!({"kind": "bminus"}),
            Instance::Valuations(a) => json!({
                "kind": "valuations",
                "space": a.space().to_json(),
                "mode": match a.mode() { ValuationMode::Prob => "prob", ValuationMode::Subprob => "subprob" },
            }),
        }
    }
}

/// Reads `{"points": [{"weight": "1/2", "x": <elem>}, ...]}`.
pub fn weighted_from_json<A: BarycentricAlgebra>(alg: &A, v: &Value) -> Result<Vec<(Rat, A::Elem)>> {
    let pts = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("expected {\"points\": [...]}".into()))?;
    pts.iter()
        .map(|p| {
            let w: Rat = serde_json::from_value(p.get("weight").cloned().unwrap_or(Value::Null))
                .map_err(|e| Error::Parse(format!("weight: {e}")))?;
            let x = alg.elem_from_json(p.get("x").ok_or_else(|| Error::Parse("point needs \"x\"".into()))?)?;
            Ok((w, x))
        })
        .collect()
}

pub fn weighted_to_json<A: BarycentricAlgebra>(alg: &A, w: &[(Rat, A::Elem)]) -> Value {
    json!({
        "points": w.iter()
            .map(|(a, x)| json!({"weight": a.to_string(), "x": alg.elem_to_json(x)}))
            .collect::<Vec<_>>()
    })
}
