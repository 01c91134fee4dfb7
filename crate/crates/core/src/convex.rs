//! Convex sets, semi-concave maps, consistency and separation checks, and
//! the sandwich solver.
//!
//! Finite instances here are interval-flat: `x +_a y` is a fixed midpoint
//! `m(x, y)` for every `a ∈ (0, 1)`. Quantifiers over `a` then collapse to
//! statements about `m`, and affine maps become LP constraints.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::baryalg::{affine_polytope, BarycentricAlgebra};
use crate::error::{Error, Result};
use crate::exactnum::{Rat, UnitRat, XRat, Q};
use crate::finspace::OpenSet;
use crate::free::ConifyElem;
use crate::lp::{Feasibility, LinearSystem, LpOutcome, Relation, Sense};
use crate::valuation::{schroder_simpson_split, second_split, SimpleValuation};

fn flat_carrier<A: BarycentricAlgebra>(alg: &A) -> Result<Vec<A::Elem>> {
    match alg.carrier() {
        Some(c) if alg.is_interval_flat() => Ok(c),
        _ => Err(Error::Unsupported(format!("{}: needs a finite interval-flat instance", alg.kind()))),
    }
}

fn finite_carrier<A: BarycentricAlgebra>(alg: &A) -> Result<Vec<A::Elem>> {
    alg.carrier()
        .ok_or_else(|| Error::Unsupported(format!("{}: needs a finite instance", alg.kind())))
}

fn mid<A: BarycentricAlgebra>(alg: &A, x: &A::Elem, y: &A::Elem) -> A::Elem {
    alg.mix(x, &UnitRat::half(), y)
}

/// `↑A` inside a finite carrier.
pub fn up_closure<A: BarycentricAlgebra>(alg: &A, a: &BTreeSet<A::Elem>) -> Result<BTreeSet<A::Elem>> {
    let carrier = finite_carrier(alg)?;
    Ok(carrier.into_iter().filter(|y| a.iter().any(|x| alg.leq(x, y))).collect())
}

/// `↓A` inside a finite carrier; the Alexandroff closure.
pub fn down_closure<A: BarycentricAlgebra>(alg: &A, a: &BTreeSet<A::Elem>) -> Result<BTreeSet<A::Elem>> {
    let carrier = finite_carrier(alg)?;
    Ok(carrier.into_iter().filter(|y| a.iter().any(|x| alg.leq(y, x))).collect())
}

/// Closure of `A` under the midpoint operation.
pub fn conv<A: BarycentricAlgebra>(alg: &A, a: &BTreeSet<A::Elem>) -> Result<BTreeSet<A::Elem>> {
    flat_carrier(alg)?;
    let mut out = a.clone();
    let mut frontier: Vec<A::Elem> = a.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        let current: Vec<A::Elem> = out.iter().cloned().collect();
        for y in current {
            for z in [mid(alg, &x, &y), mid(alg, &y, &x)] {
                if out.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
    }
    Ok(out)
}

/// `↑conv A`.
pub fn upconv<A: BarycentricAlgebra>(alg: &A, a: &BTreeSet<A::Elem>) -> Result<BTreeSet<A::Elem>> {
    up_closure(alg, &conv(alg, a)?)
}

/// `cl(conv A) = ↓conv A`, checked convex.
pub fn closed_conv<A: BarycentricAlgebra>(alg: &A, a: &BTreeSet<A::Elem>) -> Result<BTreeSet<A::Elem>> {
    let c = down_closure(alg, &conv(alg, a)?)?;
    if !is_convex(alg, &c)? {
        return Err(Error::Validation("closure of a convex set is not convex; mix is not monotone".into()));
    }
    Ok(c)
}

pub fn is_convex<A: BarycentricAlgebra>(alg: &A, a: &BTreeSet<A::Elem>) -> Result<bool> {
    flat_carrier(alg)?;
    Ok(a.iter().all(|x| a.iter().all(|y| a.contains(&mid(alg, x, y)))))
}

/// Convex with convex complement.
pub fn is_halfspace<A: BarycentricAlgebra>(alg: &A, a: &BTreeSet<A::Elem>) -> Result<bool> {
    let carrier = flat_carrier(alg)?;
    let rest: BTreeSet<A::Elem> = carrier.into_iter().filter(|x| !a.contains(x)).collect();
    Ok(is_convex(alg, a)? && is_convex(alg, &rest)?)
}

/// The convex hull of finitely many points of `ℚ≥0^d`, with membership by LP.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorHull {
    gens: Vec<Vec<Rat>>,
}

impl VectorHull {
    pub fn new(gens: Vec<Vec<Rat>>) -> VectorHull {
        VectorHull { gens }
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.gens
    }

    /// Convex weights expressing `p`, if any.
    pub fn weights_for(&self, p: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if self.gens.is_empty() {
            return Ok(None);
        }
        if self.gens.iter().any(|g| g.len() != p.len()) {
            return Err(Error::Precondition("dimension mismatch".into()));
        }
        let mut sys = LinearSystem::new();
        let vars: Vec<usize> = (0..self.gens.len()).map(|i| sys.add_var(format!("l{i}"), true)).collect();
        let one = Rat::one().into_q();
        let all: Vec<(usize, Q)> = vars.iter().map(|&v| (v, one.clone())).collect();
        sys.add_constraint(&all, Relation::Eq, one)?;
        for (k, pk) in p.iter().enumerate() {
            let terms: Vec<(usize, Q)> = vars.iter().map(|&v| (v, self.gens[v][k].as_q().clone())).collect();
            sys.add_constraint(&terms, Relation::Eq, pk.as_q().clone())?;
        }
        match sys.feasible()? {
            Feasibility::Infeasible => Ok(None),
            Feasibility::Solution(s) => Ok(Some(
                s.into_iter()
                    .map(|v| Rat::from_q(v).ok_or_else(|| Error::Validation("negative weight".into())))
                    .collect::<Result<_>>()?,
            )),
        }
    }

    pub fn contains(&self, p: &[Rat]) -> Result<bool> {
        Ok(self.weights_for(p)?.is_some())
    }
}

fn values_on<E: Ord + std::fmt::Debug, V: Clone>(h: &BTreeMap<E, V>, carrier: &[E]) -> Result<Vec<V>> {
    carrier
        .iter()
        .map(|x| {
            h.get(x)
                .cloned()
                .ok_or_else(|| Error::Precondition(format!("map undefined at {x:?}")))
        })
        .collect()
}

fn pos<E: PartialEq>(carrier: &[E], x: &E) -> usize {
    carrier.iter().position(|c| c == x).expect("closed carrier")
}

/// `h(x +_a y) ≥ a·h(x)` for all `a`: on an interval-flat carrier, `h`
/// monotone and `h(m(x, y)) ≥ h(x)`.
pub fn is_semiconcave<A: BarycentricAlgebra>(alg: &A, h: &BTreeMap<A::Elem, XRat>) -> Result<bool> {
    let carrier = flat_carrier(alg)?;
    let hv = values_on(h, &carrier)?;
    for (i, x) in carrier.iter().enumerate() {
        for (j, y) in carrier.iter().enumerate() {
            if alg.leq(x, y) && hv[i] > hv[j] {
                return Ok(false);
            }
            if hv[pos(&carrier, &mid(alg, x, y))] < hv[i] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `h^cext(u)`: `0` at zero and `r·h(x)` at `(r, x)`.
pub fn minkowski_of_semiconcave<A: BarycentricAlgebra>(
    alg: &A,
    h: &BTreeMap<A::Elem, XRat>,
    u: &ConifyElem<A::Elem>,
) -> Result<XRat> {
    if !is_semiconcave(alg, h)? {
        return Err(Error::Precondition("map is not semi-concave".into()));
    }
    Ok(match u {
        ConifyElem::Zero => XRat::zero(),
        ConifyElem::Pair(r, x) => h
            .get(x)
            .ok_or_else(|| Error::Precondition(format!("map undefined at {x:?}")))?
            .scale(r),
    })
}

/// Computes `↑{x +_a y | x ∈ U, y ∈ V}` for upsets `U`, `V` and reports
/// whether it is open.
pub fn check_strong_consistency<A: BarycentricAlgebra>(
    alg: &A,
    u: &BTreeSet<A::Elem>,
    v: &BTreeSet<A::Elem>,
    a: &UnitRat,
) -> Result<(bool, BTreeSet<A::Elem>)> {
    flat_carrier(alg)?;
    for s in [u, v] {
        if up_closure(alg, s)? != *s {
            return Err(Error::NotOpen(format!("{s:?}")));
        }
    }
    let pointwise: BTreeSet<A::Elem> = u.iter().flat_map(|x| v.iter().map(move |y| alg.mix(x, a, y))).collect();
    let sat = up_closure(alg, &pointwise)?;
    let open = up_closure(alg, &sat)? == sat;
    Ok((open, sat))
}

/// From `c·a·μ + c·(1−a)·ν ≤ ϖ` on a lattice of opens, builds `μ'`, `ν'`
/// with `μ' + ν' ≤ ϖ` pointwise, `c·a·μ ≤ μ'` and `c·(1−a)·ν ≤ ν'` on the
/// lattice, and totals `c·a·total(μ)` and `c·(1−a)·total(ν)`.
pub fn consistency_witness(
    mu: &SimpleValuation,
    nu: &SimpleValuation,
    varpi: &SimpleValuation,
    a: &UnitRat,
    c: &UnitRat,
    lattice: &[OpenSet],
) -> Result<(SimpleValuation, SimpleValuation)> {
    if !a.is_interior() || !c.is_interior() {
        return Err(Error::Precondition("a and c must lie strictly between 0 and 1".into()));
    }
    let mu_s = mu.scale(&(c.rat() * a.rat()));
    let nu_s = nu.scale(&(c.rat() * a.complement().rat()));
    let (mu2, nu2) = second_split(&mu_s, &nu_s, varpi, lattice)?;
    let (mu1, _) = schroder_simpson_split(&mu_s, &mu2, lattice)?;
    let (nu1, _) = schroder_simpson_split(&nu_s, &nu2, lattice)?;
    if !mu1.add(&nu1)?.le_pointwise(varpi) || mu1.total() != mu_s.total() || nu1.total() != nu_s.total() {
        return Err(Error::Validation("witness fails its postconditions".into()));
    }
    Ok((mu1, nu1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation<E> {
    pub separated: bool,
    pub counterexample: Option<(E, E)>,
}

/// For each `x ≰ y`, asks an LP for a monotone affine `h ≤ 1` with
/// `h(x) > h(y)`.
pub fn is_linearly_separated<A: BarycentricAlgebra>(alg: &A) -> Result<Separation<A::Elem>> {
    let carrier = flat_carrier(alg)?;
    let base = affine_polytope(alg, &carrier, true)?;
    let one = Rat::one().into_q();
    for (i, x) in carrier.iter().enumerate() {
        for (j, y) in carrier.iter().enumerate() {
            if alg.leq(x, y) {
                continue;
            }
            let mut sys = base.clone();
            sys.set_objective(&[(i, one.clone()), (j, -one.clone())])?;
            let positive = match sys.optimize(Sense::Max)? {
                LpOutcome::Optimal { value, .. } => value > Q::zero(),
                _ => return Err(Error::Validation("normalised affine polytope must be bounded".into())),
            };
            if !positive {
                return Ok(Separation { separated: false, counterexample: Some((x.clone(), y.clone())) });
            }
        }
    }
    Ok(Separation { separated: true, counterexample: None })
}

/// Linear separation of a finite point set in `ℚ≥0^d` under the
/// componentwise order, by monotone linear functionals `c ≥ 0`, `c ≤ 1`.
pub fn vectors_linearly_separated(points: &[Vec<Rat>]) -> Result<Separation<usize>> {
    let d = points.first().map_or(0, Vec::len);
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::Precondition("dimension mismatch".into()));
    }
    let leq = |x: &Vec<Rat>, y: &Vec<Rat>| x.iter().zip(y).all(|(a, b)| a <= b);
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate() {
            if leq(x, y) {
                continue;
            }
            let mut sys = LinearSystem::new();
            let one = Rat::one().into_q();
            let vars: Vec<usize> = (0..d).map(|k| sys.add_var(format!("c{k}"), true)).collect();
            for &v in &vars {
                sys.add_constraint(&[(v, one.clone())], Relation::Le, one.clone())?;
            }
            let obj: Vec<(usize, Q)> = vars.iter().map(|&v| (v, x[v].as_q() - y[v].as_q())).collect();
            sys.set_objective(&obj)?;
            let positive = match sys.optimize(Sense::Max)? {
                LpOutcome::Optimal { value, .. } => value > Q::zero(),
                _ => return Err(Error::Validation("bounded box LP".into())),
            };
            if !positive {
                return Ok(Separation { separated: false, counterexample: Some((i, j)) });
            }
        }
    }
    Ok(Separation { separated: true, counterexample: None })
}

/// `q(m(x, y)) ≥ max(q(x), q(y))` for all pairs.
pub fn is_concave_map<A: BarycentricAlgebra>(alg: &A, q: &BTreeMap<A::Elem, Rat>) -> Result<bool> {
    let carrier = flat_carrier(alg)?;
    let v = values_on(q, &carrier)?;
    Ok(carrier.iter().enumerate().all(|(i, x)| {
        carrier
            .iter()
            .enumerate()
            .all(|(j, y)| v[pos(&carrier, &mid(alg, x, y))] >= v[i].clone().max(v[j].clone()))
    }))
}

/// `p(m(x, y)) ≤ min(p(x), p(y))` for all pairs.
pub fn is_convex_map<A: BarycentricAlgebra>(alg: &A, p: &BTreeMap<A::Elem, Rat>) -> Result<bool> {
    let carrier = flat_carrier(alg)?;
    let v = values_on(p, &carrier)?;
    Ok(carrier.iter().enumerate().all(|(i, x)| {
        carrier
            .iter()
            .enumerate()
            .all(|(j, y)| v[pos(&carrier, &mid(alg, x, y))] <= v[i].clone().min(v[j].clone()))
    }))
}

pub fn is_monotone_map<A: BarycentricAlgebra>(alg: &A, q: &BTreeMap<A::Elem, Rat>) -> Result<bool> {
    let carrier = finite_carrier(alg)?;
    let v = values_on(q, &carrier)?;
    Ok(carrier
        .iter()
        .enumerate()
        .all(|(i, x)| carrier.iter().enumerate().all(|(j, y)| !alg.leq(x, y) || v[i] <= v[j])))
}

/// Monotone and affine: `h(x) = h(y) = h(m(x, y))` for every pair.
pub fn is_affine_monotone_map<A: BarycentricAlgebra>(alg: &A, h: &BTreeMap<A::Elem, Rat>) -> Result<bool> {
    let carrier = flat_carrier(alg)?;
    let v = values_on(h, &carrier)?;
    let affine = carrier.iter().enumerate().all(|(i, x)| {
        carrier
            .iter()
            .enumerate()
            .all(|(j, y)| i == j || (v[i] == v[j] && v[i] == v[pos(&carrier, &mid(alg, x, y))]))
    });
    Ok(affine && is_monotone_map(alg, h)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SandwichOutcome<E: Ord> {
    Found(BTreeMap<E, Rat>),
    Infeasible,
}

/// Finds a monotone affine `h` with `q ≤ h ≤ p`.
///
/// With `validate`, `q` must be monotone and concave, `p` convex, and
/// `q ≤ p`; a solution then always exists.
pub fn sandwich<A: BarycentricAlgebra>(
    alg: &A,
    q: &BTreeMap<A::Elem, Rat>,
    p: &BTreeMap<A::Elem, Rat>,
    validate: bool,
) -> Result<SandwichOutcome<A::Elem>> {
    let carrier = flat_carrier(alg)?;
    let qv = values_on(q, &carrier)?;
    let pv = values_on(p, &carrier)?;
    if validate {
        if !is_monotone_map(alg, q)? {
            return Err(Error::Precondition("lower map is not monotone".into()));
        }
        if !is_concave_map(alg, q)? {
            return Err(Error::Precondition("lower map is not concave".into()));
        }
        if !is_convex_map(alg, p)? {
            return Err(Error::Precondition("upper map is not convex".into()));
        }
        if qv.iter().zip(&pv).any(|(a, b)| a > b) {
            return Err(Error::Precondition("lower map exceeds upper map".into()));
        }
    }
    let mut sys = affine_polytope(alg, &carrier, false)?;
    let one = Rat::one().into_q();
    for i in 0..carrier.len() {
        sys.add_constraint(&[(i, one.clone())], Relation::Ge, qv[i].as_q().clone())?;
        sys.add_constraint(&[(i, one.clone())], Relation::Le, pv[i].as_q().clone())?;
    }
    match sys.feasible()? {
        Feasibility::Infeasible => Ok(SandwichOutcome::Infeasible),
        Feasibility::Solution(s) => {
            let mut h = BTreeMap::new();
            for (x, v) in carrier.iter().zip(s) {
                h.insert(x.clone(), Rat::from_q(v).ok_or_else(|| Error::Validation("negative value".into()))?);
            }
            let hv = values_on(&h, &carrier)?;
            let within = (0..carrier.len()).all(|i| qv[i] <= hv[i] && hv[i] <= pv[i]);
            if !within || !is_affine_monotone_map(alg, &h)? {
                return Err(Error::Validation("sandwich solution fails its constraints".into()));
            }
            Ok(SandwichOutcome::Found(h))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baryalg::FlatAlgebra;
    use crate::finspace::{generate_lattice, FinPoset};
    use std::sync::Arc;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    // diamond indices: bot 0, a 1, b 2, top 3
    #[test]
    fn hull_examples() {
        let d = FlatAlgebra::diamond();
        assert_eq!(conv(&d, &set(&[1])).unwrap(), set(&[1]));
        assert_eq!(conv(&d, &set(&[1, 2])).unwrap(), set(&[1, 2, 3]));
        assert_eq!(upconv(&d, &set(&[3])).unwrap(), set(&[3]));
        assert_eq!(upconv(&d, &set(&[1, 2])).unwrap(), set(&[1, 2, 3]));
        assert_eq!(upconv(&d, &set(&[])).unwrap(), set(&[]));
        assert_eq!(closed_conv(&d, &set(&[0])).unwrap(), set(&[0]));
        assert_eq!(closed_conv(&d, &set(&[1, 2])).unwrap(), set(&[0, 1, 2, 3]));
        assert_eq!(closed_conv(&d, &set(&[0, 1, 2, 3])).unwrap(), set(&[0, 1, 2, 3]));

        let hull = VectorHull::new(vec![vec![r("0"), r("0")], vec![r("1"), r("0")], vec![r("0"), r("1")]]);
        assert!(hull.contains(&[r("1/3"), r("1/3")]).unwrap());
        assert!(!hull.contains(&[r("1"), r("1")]).unwrap());
    }

    #[test]
    fn convexity_examples() {
        let d = FlatAlgebra::diamond();
        for u in d.order().upsets() {
            assert!(is_convex(&d, u.members()).unwrap());
        }
        assert!(is_convex(&d, &set(&[1])).unwrap());
        assert!(!is_convex(&d, &set(&[1, 2])).unwrap());
        assert!(is_halfspace(&d, &set(&[])).unwrap());
        assert!(is_halfspace(&d, &set(&[0, 1, 2, 3])).unwrap());
    }

    #[test]
    fn semiconcave_examples() {
        let d = FlatAlgebra::diamond();
        let konst: BTreeMap<usize, XRat> = (0..4).map(|x| (x, XRat::fin(2, 1))).collect();
        assert!(is_semiconcave(&d, &konst).unwrap());
        let rank: BTreeMap<usize, XRat> =
            [(0, XRat::zero()), (1, XRat::one()), (2, XRat::one()), (3, XRat::Infinity)].into();
        assert!(is_semiconcave(&d, &rank).unwrap());
        let anti: BTreeMap<usize, XRat> =
            [(0, XRat::one()), (1, XRat::zero()), (2, XRat::zero()), (3, XRat::zero())].into();
        assert!(!is_semiconcave(&d, &anti).unwrap());

        assert_eq!(
            minkowski_of_semiconcave(&d, &konst, &ConifyElem::Pair(r("3/2"), 1)).unwrap(),
            XRat::fin(3, 1)
        );
        assert_eq!(minkowski_of_semiconcave(&d, &konst, &ConifyElem::Zero).unwrap(), XRat::zero());
        assert!(minkowski_of_semiconcave(&d, &anti, &ConifyElem::Zero).is_err());
    }

    #[test]
    fn strong_consistency_examples() {
        let d = FlatAlgebra::diamond();
        let ua = d.order().principal_open(1);
        let ub = d.order().principal_open(2);
        let (ok, s) = check_strong_consistency(&d, ua.members(), ub.members(), &UnitRat::half()).unwrap();
        assert!(ok);
        assert_eq!(s, ua.intersection(&ub).members().clone());
        let (_, s) = check_strong_consistency(&d, ua.members(), ub.members(), &UnitRat::one()).unwrap();
        assert_eq!(&s, ua.members());
        let (_, s) = check_strong_consistency(&d, ua.members(), ub.members(), &UnitRat::zero()).unwrap();
        assert_eq!(&s, ub.members());
        assert!(check_strong_consistency(&d, &set(&[0]), ub.members(), &UnitRat::half()).is_err());
    }

    #[test]
    fn witness_examples() {
        let c = Arc::new(FinPoset::chain(&["a", "b"]));
        let l = generate_lattice(&c, &[c.principal_open(1)]);
        let h = UnitRat::half();
        let da = SimpleValuation::dirac(c.clone(), 0);
        let db = SimpleValuation::dirac(c.clone(), 1);
        let (m1, n1) = consistency_witness(&da, &da, &db, &h, &h, &l).unwrap();
        assert_eq!(m1.total(), r("1/4"));
        assert_eq!(n1.total(), r("1/4"));
        assert!(m1.add(&n1).unwrap().le_pointwise(&db));

        let z = SimpleValuation::zero(c.clone());
        let (m1, n1) = consistency_witness(&z, &z, &db, &h, &h, &l).unwrap();
        assert!(m1.is_zero() && n1.is_zero());

        let exact = da.scale(&r("1/4")).add(&db.scale(&r("1/4"))).unwrap();
        let (m1, n1) = consistency_witness(&da, &db, &exact, &h, &h, &l).unwrap();
        assert!(m1.add(&n1).unwrap().le_pointwise(&exact));
        assert!(consistency_witness(&da, &da, &db, &UnitRat::one(), &h, &l).is_err());
    }

    #[test]
    fn separation_examples() {
        let d = FlatAlgebra::diamond();
        let s = is_linearly_separated(&d).unwrap();
        assert!(!s.separated);
        assert!(s.counterexample.is_some());
        let one = FlatAlgebra::semilattice(FinPoset::chain(&["x"])).unwrap();
        assert!(is_linearly_separated(&one).unwrap().separated);
        let grid: Vec<Vec<Rat>> =
            (0..3).flat_map(|i| (0..3).map(move |j| vec![Rat::from_int(i), Rat::from_int(j)])).collect();
        assert!(vectors_linearly_separated(&grid).unwrap().separated);
    }

    #[test]
    fn sandwich_examples() {
        let d = FlatAlgebra::diamond();
        let k = |v: &str| -> BTreeMap<usize, Rat> { (0..4).map(|x| (x, r(v))).collect() };
        assert_eq!(sandwich(&d, &k("1/2"), &k("1/2"), true).unwrap(), SandwichOutcome::Found(k("1/2")));
        match sandwich(&d, &k("0"), &k("1"), true).unwrap() {
            SandwichOutcome::Found(h) => {
                let c = h[&0].clone();
                assert!(h.values().all(|v| *v == c) && c <= Rat::one());
            }
            SandwichOutcome::Infeasible => panic!("constants fit"),
        }
        let q: BTreeMap<usize, Rat> = [(0, r("0")), (1, r("1/3")), (2, r("1/4")), (3, r("1/2"))].into();
        let p: BTreeMap<usize, Rat> = [(0, r("2")), (1, r("1")), (2, r("3/2")), (3, r("1/2"))].into();
        match sandwich(&d, &q, &p, true).unwrap() {
            SandwichOutcome::Found(h) => assert!(h.values().all(|v| *v == r("1/2"))),
            SandwichOutcome::Infeasible => panic!("sandwich must exist"),
        }
        assert!(sandwich(&d, &p, &q, true).is_err());
        let bad_p: BTreeMap<usize, Rat> = [(0, r("0")), (1, r("0")), (2, r("0")), (3, r("1"))].into();
        assert_eq!(sandwich(&d, &q, &bad_p, false).unwrap(), SandwichOutcome::Infeasible);
    }
}
