//! Simple valuations on finite spaces.
//!
//! On a finite space every valuation is simple, so a [`SimpleValuation`] is
//! just a finite table of point masses. The interesting operations are the
//! stochastic order (decided by transport synthesis over the exact LP), the
//! recovery of masses from a table of open-set values, and the two
//! decomposition lemmas that split a dominating valuation along the crescents
//! of a finite lattice of opens.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{Rat, XRat};
use crate::finspace::{classify, FinPoset, OpenSet, PointSet};
use crate::lp::{Feasibility, LinearSystem, Relation};

/// A finite nonnegative combination of point masses on a finite space.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleValuation {
    space: Arc<FinPoset>,
    masses: BTreeMap<usize, Rat>,
}

impl fmt::Debug for SimpleValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .masses
            .iter()
            .map(|(&x, m)| format!("{m}·δ_{}", self.space.name(x)))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl PartialOrd for SimpleValuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

// Arbitrary but fixed total order, used for canonical choices and sorting.
impl Ord for SimpleValuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.masses
            .cmp(&other.masses)
            .then_with(|| self.space.names().cmp(other.space.names()))
            .then_with(|| self.space.relation().cmp(other.space.relation()))
    }
}

impl SimpleValuation {
    pub fn new(space: Arc<FinPoset>, masses: impl IntoIterator<Item = (usize, Rat)>) -> Result<Self> {
        let mut m: BTreeMap<usize, Rat> = BTreeMap::new();
        for (x, r) in masses {
            if x >= space.len() {
                return Err(Error::UnknownPoint(format!("#{x}")));
            }
            let e = m.entry(x).or_insert_with(Rat::zero);
            *e = &*e + &r;
        }
        m.retain(|_, r| !r.is_zero());
        Ok(SimpleValuation { space, masses: m })
    }

    pub fn from_named<S: AsRef<str>>(space: Arc<FinPoset>, masses: &[(S, Rat)]) -> Result<Self> {
        let mut v = Vec::with_capacity(masses.len());
        for (name, r) in masses {
            v.push((space.index_of(name.as_ref())?, r.clone()));
        }
        SimpleValuation::new(space, v)
    }

    pub fn zero(space: Arc<FinPoset>) -> Self {
        SimpleValuation { space, masses: BTreeMap::new() }
    }

    pub fn dirac(space: Arc<FinPoset>, x: usize) -> Self {
        SimpleValuation::new(space, [(x, Rat::one())]).expect("point in range")
    }

    pub fn space(&self) -> &Arc<FinPoset> {
        &self.space
    }

    pub fn masses(&self) -> &BTreeMap<usize, Rat> {
        &self.masses
    }

    pub fn mass(&self, x: usize) -> Rat {
        self.masses.get(&x).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> PointSet {
        self.masses.keys().copied().collect()
    }

    pub fn total(&self) -> Rat {
        self.masses.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.masses.is_empty()
    }

    fn same_space(&self, other: &SimpleValuation) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn add(&self, other: &SimpleValuation) -> Result<SimpleValuation> {
        self.same_space(other)?;
        SimpleValuation::new(
            self.space.clone(),
            self.masses.iter().chain(other.masses.iter()).map(|(&x, r)| (x, r.clone())),
        )
    }

    pub fn scale(&self, a: &Rat) -> SimpleValuation {
        SimpleValuation::new(self.space.clone(), self.masses.iter().map(|(&x, r)| (x, r * a)))
            .expect("same support")
    }

    /// `a·self + (1-a)·other`, computed pointwise.
    pub fn mix(&self, a: &Rat, other: &SimpleValuation) -> Result<SimpleValuation> {
        let b = Rat::one()
            .checked_sub(a)
            .ok_or_else(|| Error::Precondition("mixing coefficient above 1".into()))?;
        self.scale(a).add(&other.scale(&b))
    }

    /// Pointwise comparison of masses.
    pub fn le_pointwise(&self, other: &SimpleValuation) -> bool {
        self.masses.iter().all(|(&x, m)| *m <= other.mass(x))
    }

    /// `ν(U) = Σ_{x∈U} ν({x})`.
    pub fn eval(&self, u: &OpenSet) -> Result<Rat> {
        self.eval_set(u.members())
    }

    /// Total mass of an arbitrary point set (the Smiley–Horn–Tarski
    /// extension evaluated on it).
    pub fn eval_set(&self, s: &PointSet) -> Result<Rat> {
        if let Some(&bad) = s.iter().find(|&&i| i >= self.space.len()) {
            return Err(Error::UnknownPoint(format!("#{bad}")));
        }
        Ok(self.masses.iter().filter(|(x, _)| s.contains(x)).map(|(_, m)| m).sum())
    }

    /// `∫ h dν = Σ_x ν({x})·h(x)` with `0·∞ = 0`.
    pub fn integrate(&self, h: impl Fn(usize) -> XRat) -> XRat {
        self.masses
            .iter()
            .fold(XRat::zero(), |acc, (&x, m)| acc + h(x).scale(m))
    }

    /// Restriction to a crescent (or any point set): `U ↦ ν(U ∩ C)`.
    pub fn constrict(&self, c: &PointSet) -> SimpleValuation {
        SimpleValuation {
            space: self.space.clone(),
            masses: self
                .masses
                .iter()
                .filter(|(x, _)| c.contains(x))
                .map(|(&x, m)| (x, m.clone()))
                .collect(),
        }
    }

    /// The image valuation `f[ν]`, `f[ν](A) = ν(f⁻¹(A))`, along a monotone
    /// map given as target indices.
    pub fn image(&self, f: &[usize], target: Arc<FinPoset>) -> Result<SimpleValuation> {
        check_monotone(&self.space, f, &target)?;
        SimpleValuation::new(target, self.masses.iter().map(|(&x, m)| (f[x], m.clone())))
    }

    /// `ν(U) ≤ other(U)` for every `U` in `opens`; returns the first failure.
    pub fn first_violation<'a>(
        &self,
        other: &SimpleValuation,
        opens: &'a [OpenSet],
    ) -> Result<Option<&'a OpenSet>> {
        self.same_space(other)?;
        for u in opens {
            if self.eval(u)? > other.eval(u)? {
                return Ok(Some(u));
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> Value {
        let masses: serde_json::Map<String, Value> = self
            .masses
            .iter()
            .map(|(&x, m)| (self.space.name(x).to_string(), Value::String(m.to_string())))
            .collect();
        json!({ "masses": masses })
    }

    /// Reads `{"space": {...}?, "masses": {"a": "1/2"}}`. When the document
    /// carries no inline space, `default_space` is used.
    pub fn from_json(v: &Value, default_space: Option<Arc<FinPoset>>) -> Result<SimpleValuation> {
        let space = match v.get("space") {
            Some(s) if s.is_object() => Arc::new(FinPoset::from_json(s)?),
            _ => default_space.ok_or_else(|| Error::Parse("valuation needs a space".into()))?,
        };
        let masses = v
            .get("masses")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("valuation needs a \"masses\" object".into()))?;
        let mut out = Vec::new();
        for (name, m) in masses {
            let r: Rat = serde_json::from_value(m.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            out.push((space.index_of(name)?, r));
        }
        SimpleValuation::new(space, out)
    }
}

pub(crate) fn check_monotone(src: &FinPoset, f: &[usize], target: &FinPoset) -> Result<()> {
    if f.len() != src.len() {
        return Err(Error::Precondition("map must be defined on every point".into()));
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= target.len()) {
        return Err(Error::UnknownPoint(format!("#{bad}")));
    }
    for x in 0..src.len() {
        for y in 0..src.len() {
            if src.leq(x, y) && !target.leq(f[x], f[y]) {
                return Err(Error::NotMonotone(format!(
                    "{} <= {} but {} !<= {}",
                    src.name(x),
                    src.name(y),
                    target.name(f[x]),
                    target.name(f[y])
                )));
            }
        }
    }
    Ok(())
}

/// A nonnegative matrix witnessing stochastic dominance between two mass
/// assignments on the same poset.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TransportMatrix {
    pub entries: BTreeMap<(usize, usize), Rat>,
}

impl TransportMatrix {
    pub fn row_sum(&self, x: usize) -> Rat {
        self.entries.iter().filter(|((i, _), _)| *i == x).map(|(_, t)| t).sum()
    }

    pub fn col_sum(&self, y: usize) -> Rat {
        self.entries.iter().filter(|((_, j), _)| *j == y).map(|(_, t)| t).sum()
    }

    /// Checks the three transport conditions against masses `a` (rows) and
    /// `b` (columns): support on `x ≤ y`, exact row sums, bounded column sums.
    pub fn is_valid_for(
        &self,
        space: &FinPoset,
        a: &BTreeMap<usize, Rat>,
        b: &BTreeMap<usize, Rat>,
    ) -> bool {
        let get = |m: &BTreeMap<usize, Rat>, k: usize| m.get(&k).cloned().unwrap_or_else(Rat::zero);
        self.entries.iter().all(|(&(x, y), t)| t.is_zero() || space.leq(x, y))
            && (0..space.len()).all(|x| self.row_sum(x) == get(a, x))
            && (0..space.len()).all(|y| self.col_sum(y) <= get(b, y))
    }

    pub fn check(&self, mu: &SimpleValuation, nu: &SimpleValuation) -> bool {
        self.is_valid_for(mu.space(), mu.masses(), nu.masses())
    }

    pub fn to_json(&self, space: &FinPoset) -> Value {
        let mut out = serde_json::Map::new();
        for (&(x, y), t) in &self.entries {
            let row = out
                .entry(space.name(x).to_string())
                .or_insert_with(|| Value::Object(Default::default()));
            row.as_object_mut()
                .unwrap()
                .insert(space.name(y).to_string(), Value::String(t.to_string()));
        }
        Value::Object(out)
    }
}

/// Synthesises a transport matrix from `a` to `b` on `space`, or `None` when
/// none exists. The LP vertex returned is whatever Bland's rule reaches first.
pub fn synthesize_transport(
    space: &FinPoset,
    a: &BTreeMap<usize, Rat>,
    b: &BTreeMap<usize, Rat>,
) -> Result<Option<TransportMatrix>> {
    let mut sys = LinearSystem::new();
    let mut vars = Vec::new();
    for (&x, ax) in a {
        if ax.is_zero() {
            continue;
        }
        for (&y, by) in b {
            if !by.is_zero() && space.leq(x, y) {
                let v = sys.add_var(format!("t_{}_{}", space.name(x), space.name(y)), true);
                vars.push((x, y, v));
            }
        }
    }
    let one = Rat::one().into_q();
    for (&x, ax) in a {
        if ax.is_zero() {
            continue;
        }
        let terms: Vec<_> = vars.iter().filter(|(i, _, _)| *i == x).map(|&(_, _, v)| (v, one.clone())).collect();
        if terms.is_empty() {
            return Ok(None);
        }
        sys.add_constraint(&terms, Relation::Eq, ax.as_q().clone())?;
    }
    for (&y, by) in b {
        let terms: Vec<_> = vars.iter().filter(|(_, j, _)| *j == y).map(|&(_, _, v)| (v, one.clone())).collect();
        if !terms.is_empty() {
            sys.add_constraint(&terms, Relation::Le, by.as_q().clone())?;
        }
    }
    match sys.feasible()? {
        Feasibility::Infeasible => Ok(None),
        Feasibility::Solution(sol) => {
            let mut t = TransportMatrix::default();
            for (x, y, v) in vars {
                let r = Rat::from_q(sol[v].clone())
                    .ok_or_else(|| Error::Validation("negative transport entry".into()))?;
                if !r.is_zero() {
                    t.entries.insert((x, y), r);
                }
            }
            if !t.is_valid_for(space, a, b) {
                return Err(Error::Validation("synthesised transport fails its conditions".into()));
            }
            Ok(Some(t))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dominance {
    pub related: bool,
    pub witness: Option<TransportMatrix>,
}

/// Decides `μ ≤ ν` in the stochastic order, with a transport witness.
pub fn stochastic_le(mu: &SimpleValuation, nu: &SimpleValuation) -> Result<Dominance> {
    mu.same_space(nu)?;
    let witness = synthesize_transport(mu.space(), mu.masses(), nu.masses())?;
    Ok(Dominance { related: witness.is_some(), witness })
}

/// Recovers point masses from the values of a valuation on every open set.
pub fn masses_from_table(space: Arc<FinPoset>, table: &BTreeMap<OpenSet, Rat>) -> Result<SimpleValuation> {
    let ups = space.upsets();
    let get = |u: &OpenSet| -> Result<&Rat> {
        table.get(u).ok_or_else(|| {
            Error::InvalidTable(format!("missing value for {:?}", space.names_of(u.members())))
        })
    };
    for u in table.keys() {
        if !space.is_upset(u.members()) || u.members().iter().any(|&i| i >= space.len()) {
            return Err(Error::InvalidTable("table key is not an open set".into()));
        }
    }
    if !get(&space.empty_open())?.is_zero() {
        return Err(Error::InvalidTable("not strict: value on the empty set is nonzero".into()));
    }
    for u in &ups {
        for v in &ups {
            let (tu, tv) = (get(u)?, get(v)?);
            if u.is_subset(v) && tu > tv {
                return Err(Error::InvalidTable(format!(
                    "not monotone on {:?} ⊆ {:?}",
                    space.names_of(u.members()),
                    space.names_of(v.members())
                )));
            }
            let lhs = tu + tv;
            let rhs = get(&u.union(v))? + get(&u.intersection(v))?;
            if lhs != rhs {
                return Err(Error::InvalidTable(format!(
                    "not modular on {:?}, {:?}",
                    space.names_of(u.members()),
                    space.names_of(v.members())
                )));
            }
        }
    }
    let mut masses = Vec::new();
    for x in 0..space.len() {
        let up = space.principal_open(x);
        let mut strict_up = up.members().clone();
        strict_up.remove(&x);
        let strict_up = OpenSet::new(&space, strict_up).expect("↑x minus x is open");
        let m = get(&up)?
            .checked_sub(get(&strict_up)?)
            .ok_or_else(|| Error::InvalidTable(format!("negative mass at {}", space.name(x))))?;
        masses.push((x, m));
    }
    let nu = SimpleValuation::new(space.clone(), masses)?;
    for u in &ups {
        if nu.eval(u)? != *get(u)? {
            return Err(Error::InvalidTable("table is not induced by point masses".into()));
        }
    }
    Ok(nu)
}

/// The value table of `ν` on every open set.
pub fn eval_table(nu: &SimpleValuation) -> BTreeMap<OpenSet, Rat> {
    nu.space()
        .upsets()
        .into_iter()
        .map(|u| {
            let v = nu.eval(&u).expect("same space");
            (u, v)
        })
        .collect()
}

/// Checks that `lattice` contains `X` and is closed under binary unions and
/// intersections.
pub fn check_lattice(space: &FinPoset, lattice: &[OpenSet]) -> Result<()> {
    for u in lattice {
        if u.members().iter().any(|&i| i >= space.len()) || !space.is_upset(u.members()) {
            return Err(Error::Precondition("lattice member is not an open set".into()));
        }
    }
    let set: BTreeSet<&OpenSet> = lattice.iter().collect();
    if !set.contains(&space.whole()) {
        return Err(Error::Precondition("lattice must contain the whole space".into()));
    }
    for u in lattice {
        for v in lattice {
            if !set.contains(&u.union(v)) || !set.contains(&u.intersection(v)) {
                return Err(Error::Precondition(format!(
                    "lattice not closed at {:?}, {:?}",
                    space.names_of(u.members()),
                    space.names_of(v.members())
                )));
            }
        }
    }
    Ok(())
}

/// Nonempty crescents of the lattice as a poset of labels ordered by
/// inclusion, with each point's label index.
struct CrescentImage {
    labels: Vec<BTreeSet<usize>>,
    members: Vec<PointSet>,
    poset: FinPoset,
}

impl CrescentImage {
    fn new(space: &FinPoset, lattice: &[OpenSet]) -> CrescentImage {
        let f = classify(space, lattice);
        let labels: Vec<BTreeSet<usize>> =
            f.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let members = labels
            .iter()
            .map(|l| (0..space.len()).filter(|&x| &f[x] == l).collect())
            .collect();
        let names: Vec<String> = labels.iter().map(label_name).collect();
        let n = labels.len();
        let rel = (0..n * n).map(|k| labels[k / n].is_subset(&labels[k % n])).collect();
        let poset = FinPoset::from_relation(names, rel).expect("inclusion is a partial order");
        CrescentImage { labels, members, poset }
    }

    fn image_masses(&self, nu: &SimpleValuation) -> BTreeMap<usize, Rat> {
        self.members
            .iter()
            .enumerate()
            .map(|(k, c)| (k, nu.eval_set(c).expect("same space")))
            .filter(|(_, m)| !m.is_zero())
            .collect()
    }
}

pub(crate) fn label_name(l: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = l.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// The powerset poset of `{0..n-1}` and the classification map `x ↦ {i | x ∈ U_i}`.
pub fn classification_map(space: &FinPoset, opens: &[OpenSet]) -> (Arc<FinPoset>, Vec<usize>) {
    let n = opens.len();
    assert!(n < 16, "powerset poset too large");
    let labels: Vec<BTreeSet<usize>> =
        (0..(1usize << n)).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect();
    let k = labels.len();
    let rel = (0..k * k).map(|p| labels[p / k].is_subset(&labels[p % k])).collect();
    let poset =
        FinPoset::from_relation(labels.iter().map(label_name).collect(), rel).expect("powerset order");
    let f = classify(space, opens)
        .into_iter()
        .map(|l| l.iter().fold(0usize, |acc, i| acc | 1 << i))
        .collect();
    (Arc::new(poset), f)
}

fn combination(nu: &SimpleValuation, parts: &[(Rat, &PointSet)]) -> SimpleValuation {
    let mut masses = Vec::new();
    for (c, members) in parts {
        for (&x, m) in nu.masses() {
            if members.contains(&x) {
                masses.push((x, c * m));
            }
        }
    }
    SimpleValuation::new(nu.space().clone(), masses).expect("same space")
}

/// The Schröder–Simpson decomposition `ν = ν₁ + ν₂` with `μ ≤ ν₁` on the
/// lattice and `ν₁(X) = μ(X)`.
///
/// `lattice` must be closed under unions and intersections and contain `X`;
/// `μ(U) ≤ ν(U)` must hold on every member.
pub fn schroder_simpson_split(
    mu: &SimpleValuation,
    nu: &SimpleValuation,
    lattice: &[OpenSet],
) -> Result<(SimpleValuation, SimpleValuation)> {
    mu.same_space(nu)?;
    let space = mu.space().clone();
    check_lattice(&space, lattice)?;
    if let Some(u) = mu.first_violation(nu, lattice)? {
        return Err(Error::Precondition(format!(
            "mu exceeds nu on {:?}",
            space.names_of(u.members())
        )));
    }
    let img = CrescentImage::new(&space, lattice);
    let a = img.image_masses(mu);
    let b = img.image_masses(nu);
    let t = synthesize_transport(&img.poset, &a, &b)?
        .ok_or_else(|| Error::Validation("no transport between image valuations".into()))?;
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (j, members) in img.members.iter().enumerate() {
        let bj = b.get(&j).cloned().unwrap_or_else(Rat::zero);
        let c = if bj.is_zero() { Rat::zero() } else { &t.col_sum(j) / &bj };
        let rest = Rat::one()
            .checked_sub(&c)
            .ok_or_else(|| Error::Validation("split coefficient above 1".into()))?;
        first.push((c, members));
        second.push((rest, members));
    }
    let nu1 = combination(nu, &first);
    let nu2 = combination(nu, &second);
    debug_assert_eq!(img.labels.len(), img.members.len());
    if nu1.add(&nu2)? != *nu
        || mu.first_violation(&nu1, lattice)?.is_some()
        || nu1.total() != mu.total()
    {
        return Err(Error::Validation("decomposition fails its postconditions".into()));
    }
    Ok((nu1, nu2))
}

/// The second decomposition: from `μ + ν ≤ ϖ` on the lattice, builds `μ'`,
/// `ν'` with `μ' + ν' ≤ ϖ` everywhere and `μ ≤ μ'`, `ν ≤ ν'` on the lattice.
pub fn second_split(
    mu: &SimpleValuation,
    nu: &SimpleValuation,
    varpi: &SimpleValuation,
    lattice: &[OpenSet],
) -> Result<(SimpleValuation, SimpleValuation)> {
    mu.same_space(nu)?;
    mu.same_space(varpi)?;
    let space = mu.space().clone();
    check_lattice(&space, lattice)?;
    for u in lattice {
        if mu.eval(u)? + nu.eval(u)? > varpi.eval(u)? {
            return Err(Error::Precondition(format!(
                "mu + nu exceeds varpi on {:?}",
                space.names_of(u.members())
            )));
        }
    }
    let img = CrescentImage::new(&space, lattice);
    let a = img.image_masses(mu);
    let b = img.image_masses(nu);
    let c = img.image_masses(varpi);
    let get = |m: &BTreeMap<usize, Rat>, k: usize| m.get(&k).cloned().unwrap_or_else(Rat::zero);
    let ab: BTreeMap<usize, Rat> = (0..img.members.len())
        .map(|k| (k, get(&a, k) + get(&b, k)))
        .filter(|(_, m)| !m.is_zero())
        .collect();
    let t = synthesize_transport(&img.poset, &ab, &c)?
        .ok_or_else(|| Error::Validation("no transport for the second decomposition".into()))?;
    // u_IJ = a_I/(a_I+b_I)·t_IJ, v_IJ = b_I/(a_I+b_I)·t_IJ
    let mut u_col = vec![Rat::zero(); img.members.len()];
    let mut v_col = vec![Rat::zero(); img.members.len()];
    for (&(i, j), tij) in &t.entries {
        let s = get(&ab, i);
        if s.is_zero() {
            continue;
        }
        u_col[j] = &u_col[j] + &(&(&get(&a, i) / &s) * tij);
        v_col[j] = &v_col[j] + &(&(&get(&b, i) / &s) * tij);
    }
    let mut mu_parts = Vec::new();
    let mut nu_parts = Vec::new();
    for (j, members) in img.members.iter().enumerate() {
        let cj = get(&c, j);
        let (aj, bj) = if cj.is_zero() {
            (Rat::zero(), Rat::zero())
        } else {
            (&u_col[j] / &cj, &v_col[j] / &cj)
        };
        mu_parts.push((aj, members));
        nu_parts.push((bj, members));
    }
    let mu2 = combination(varpi, &mu_parts);
    let nu2 = combination(varpi, &nu_parts);
    if !mu2.add(&nu2)?.le_pointwise(varpi)
        || mu.first_violation(&mu2, lattice)?.is_some()
        || nu.first_violation(&nu2, lattice)?.is_some()
    {
        return Err(Error::Validation("second decomposition fails its postconditions".into()));
    }
    Ok((mu2, nu2))
}

/// The subspace `X ∖ ↓⊥` of a pointed space, with the inclusion map.
pub fn remove_bottom(space: &FinPoset) -> Result<(Arc<FinPoset>, Vec<usize>)> {
    let bot = space
        .least()
        .ok_or_else(|| Error::Precondition("space has no least element".into()))?;
    let keep: Vec<usize> = (0..space.len()).filter(|&x| x != bot).collect();
    let names: Vec<String> = keep.iter().map(|&x| space.name(x).to_string()).collect();
    let k = keep.len();
    let rel = (0..k * k).map(|p| space.leq(keep[p / k], keep[p % k])).collect();
    Ok((Arc::new(FinPoset::from_relation(names, rel)?), keep))
}

/// Edalat's correspondence, forward: a probability valuation on a pointed
/// space becomes a subprobability valuation on `X ∖ ↓⊥`.
pub fn edalat_to_sub(nu: &SimpleValuation) -> Result<SimpleValuation> {
    if !nu.total().is_one() {
        return Err(Error::Precondition("not a probability valuation".into()));
    }
    let (sub, keep) = remove_bottom(nu.space())?;
    SimpleValuation::new(
        sub,
        keep.iter().enumerate().map(|(k, &x)| (k, nu.mass(x))),
    )
}

/// Edalat's correspondence, backward: puts the missing mass `1 - total` on ⊥.
pub fn edalat_to_prob(sub: &SimpleValuation, space: Arc<FinPoset>) -> Result<SimpleValuation> {
    let (expected, keep) = remove_bottom(&space)?;
    if **sub.space() != *expected {
        return Err(Error::SpaceMismatch);
    }
    let deficit = Rat::one()
        .checked_sub(&sub.total())
        .ok_or_else(|| Error::Precondition("total mass exceeds 1".into()))?;
    let bot = space.least().expect("checked by remove_bottom");
    let mut masses: Vec<(usize, Rat)> = sub.masses().iter().map(|(&k, m)| (keep[k], m.clone())).collect();
    masses.push((bot, deficit));
    SimpleValuation::new(space, masses)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn chain_ab() -> Arc<FinPoset> {
        Arc::new(FinPoset::chain(&["a", "b"]))
    }

    #[test]
    fn eval_examples() {
        let c = chain_ab();
        let d = SimpleValuation::dirac(c.clone(), 0);
        assert_eq!(d.eval(&c.whole()).unwrap(), Rat::one());
        assert_eq!(d.eval(&c.principal_open(1)).unwrap(), Rat::zero());
        let z = SimpleValuation::zero(c.clone());
        assert_eq!(z.eval(&c.whole()).unwrap(), Rat::zero());
        let nu = SimpleValuation::from_named(c.clone(), &[("a", r("1/2")), ("b", r("1/3"))]).unwrap();
        assert_eq!(nu.eval(&c.principal_open(1)).unwrap(), r("1/3"));
    }

    #[test]
    fn integrate_examples() {
        let c = chain_ab();
        let nu = SimpleValuation::from_named(c.clone(), &[("a", r("1/2")), ("b", r("1/2"))]).unwrap();
        let h = |x: usize| if x == 0 { XRat::one() } else { XRat::fin(3, 1) };
        assert_eq!(nu.integrate(h), XRat::fin(2, 1));
        assert_eq!(nu.integrate(|_| XRat::Infinity), XRat::Infinity);
        let d = SimpleValuation::dirac(c.clone(), 1);
        assert_eq!(d.integrate(h), XRat::fin(3, 1));
        assert_eq!(SimpleValuation::zero(c).integrate(|_| XRat::Infinity), XRat::zero());
    }

    #[test]
    fn order_examples() {
        let c = chain_ab();
        let da = SimpleValuation::dirac(c.clone(), 0);
        let db = SimpleValuation::dirac(c.clone(), 1);
        let d = stochastic_le(&da, &db).unwrap();
        assert!(d.related);
        let t = d.witness.unwrap();
        assert_eq!(t.entries.get(&(0, 1)), Some(&Rat::one()));
        assert!(t.check(&da, &db));
        assert!(!stochastic_le(&db, &da).unwrap().related);

        let ac = Arc::new(FinPoset::antichain(&["x", "y"]));
        let mu = SimpleValuation::from_named(ac.clone(), &[("x", r("1/2")), ("y", r("1/2"))]).unwrap();
        let nu = SimpleValuation::dirac(ac, 0);
        assert!(!stochastic_le(&mu, &nu).unwrap().related);
    }

    #[test]
    fn space_mismatch() {
        let a = SimpleValuation::dirac(chain_ab(), 0);
        let b = SimpleValuation::dirac(Arc::new(FinPoset::antichain(&["x", "y"])), 0);
        assert_eq!(stochastic_le(&a, &b), Err(Error::SpaceMismatch));
    }

    #[test]
    fn image_examples() {
        let d = Arc::new(FinPoset::diamond());
        let nu = SimpleValuation::from_named(d.clone(), &[("a", r("1/2")), ("bot", r("1/2"))]).unwrap();
        let id: Vec<usize> = (0..4).collect();
        assert_eq!(nu.image(&id, d.clone()).unwrap(), nu);
        let top = vec![3; 4];
        assert_eq!(nu.image(&top, d.clone()).unwrap(), SimpleValuation::dirac(d.clone(), 3));
        let swap = vec![3, 1, 2, 0];
        assert!(matches!(nu.image(&swap, d), Err(Error::NotMonotone(_))));
    }

    #[test]
    fn classification_image() {
        let d = Arc::new(FinPoset::diamond());
        let opens = vec![d.principal_open(1), d.principal_open(2)];
        let (m, f) = classification_map(&d, &opens);
        let mu = SimpleValuation::from_named(
            d.clone(),
            &[("bot", r("1/4")), ("a", r("1/4")), ("top", r("1/2"))],
        )
        .unwrap();
        let img = mu.image(&f, m.clone()).unwrap();
        assert_eq!(img.mass(m.index_of("{}").unwrap()), r("1/4"));
        assert_eq!(img.mass(m.index_of("{0}").unwrap()), r("1/4"));
        assert_eq!(img.mass(m.index_of("{0,1}").unwrap()), r("1/2"));
        for a in m.upsets() {
            let pre: PointSet = (0..d.len()).filter(|&x| a.contains(f[x])).collect();
            assert_eq!(img.eval(&a).unwrap(), mu.eval_set(&pre).unwrap());
        }
    }

    #[test]
    fn constrict_examples() {
        let c = chain_ab();
        let nu = SimpleValuation::from_named(c.clone(), &[("a", r("1/2")), ("b", r("1/3"))]).unwrap();
        assert_eq!(nu.constrict(&c.all()), nu);
        assert!(nu.constrict(&PointSet::new()).is_zero());
        assert_eq!(
            nu.constrict(&[1].into_iter().collect()),
            SimpleValuation::from_named(c, &[("b", r("1/3"))]).unwrap()
        );
    }

    #[test]
    fn table_examples() {
        let c = chain_ab();
        let db = SimpleValuation::dirac(c.clone(), 1);
        assert_eq!(masses_from_table(c.clone(), &eval_table(&db)).unwrap(), db);
        let zero = SimpleValuation::zero(c.clone());
        assert_eq!(masses_from_table(c.clone(), &eval_table(&zero)).unwrap(), zero);
        let d = Arc::new(FinPoset::diamond());
        let nu = SimpleValuation::from_named(d.clone(), &[("a", r("1/2")), ("top", r("1/2"))]).unwrap();
        assert_eq!(masses_from_table(d.clone(), &eval_table(&nu)).unwrap(), nu);

        let mut bad = eval_table(&nu);
        bad.insert(d.whole(), r("1/4"));
        assert!(matches!(masses_from_table(d.clone(), &bad), Err(Error::InvalidTable(_))));
        let mut bad = eval_table(&nu);
        bad.insert(d.empty_open(), r("1/4"));
        assert!(matches!(masses_from_table(d.clone(), &bad), Err(Error::InvalidTable(_))));
        let mut bad = eval_table(&nu);
        bad.remove(&d.whole());
        assert!(matches!(masses_from_table(d, &bad), Err(Error::InvalidTable(_))));
    }

    fn chain_lattice(c: &FinPoset) -> Vec<OpenSet> {
        crate::finspace::generate_lattice(c, &[c.principal_open(1)])
    }

    #[test]
    fn split_examples() {
        let c = chain_ab();
        let l = chain_lattice(&c);
        let mu = SimpleValuation::dirac(c.clone(), 0);
        let nu = SimpleValuation::from_named(c.clone(), &[("b", r("2"))]).unwrap();
        let (n1, n2) = schroder_simpson_split(&mu, &nu, &l).unwrap();
        let db = SimpleValuation::dirac(c.clone(), 1);
        assert_eq!(n1, db);
        assert_eq!(n2, db);

        let (n1, n2) = schroder_simpson_split(&nu, &nu, &l).unwrap();
        assert_eq!(n1, nu);
        assert!(n2.is_zero());

        let zero = SimpleValuation::zero(c.clone());
        let (n1, n2) = schroder_simpson_split(&zero, &nu, &l).unwrap();
        assert!(n1.is_zero());
        assert_eq!(n2, nu);

        // μ(X) > ν(X) violates the precondition on X
        assert!(matches!(
            schroder_simpson_split(&nu, &mu, &l),
            Err(Error::Precondition(_))
        ));
        // lattice without X
        assert!(matches!(
            schroder_simpson_split(&mu, &nu, &[c.empty_open()]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn second_split_examples() {
        let c = chain_ab();
        let l = chain_lattice(&c);
        let half_a = SimpleValuation::from_named(c.clone(), &[("a", r("1/2"))]).unwrap();
        let varpi = SimpleValuation::from_named(c.clone(), &[("b", r("2"))]).unwrap();
        let (m2, n2) = second_split(&half_a, &half_a, &varpi, &l).unwrap();
        let half_b = SimpleValuation::from_named(c.clone(), &[("b", r("1/2"))]).unwrap();
        assert_eq!(m2, half_b);
        assert_eq!(n2, half_b);

        let zero = SimpleValuation::zero(c.clone());
        let (m2, n2) = second_split(&zero, &zero, &varpi, &l).unwrap();
        assert!(m2.is_zero() && n2.is_zero());

        let (m2, _) = second_split(&half_a, &zero, &varpi, &l).unwrap();
        assert!(half_a.first_violation(&m2, &l).unwrap().is_none());

        assert!(matches!(
            second_split(&varpi, &half_a, &half_a, &l),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn edalat_examples() {
        let d = Arc::new(FinPoset::diamond());
        let bot = SimpleValuation::dirac(d.clone(), 0);
        assert!(edalat_to_sub(&bot).unwrap().is_zero());

        let nu = SimpleValuation::from_named(d.clone(), &[("bot", r("1/2")), ("a", r("1/2"))]).unwrap();
        let sub = edalat_to_sub(&nu).unwrap();
        assert_eq!(sub.total(), r("1/2"));
        assert_eq!(sub.mass(sub.space().index_of("a").unwrap()), r("1/2"));
        assert_eq!(edalat_to_prob(&sub, d.clone()).unwrap(), nu);

        let da = SimpleValuation::dirac(d.clone(), 1);
        let sub = edalat_to_sub(&da).unwrap();
        assert_eq!(sub.total(), Rat::one());
        assert_eq!(edalat_to_prob(&sub, d.clone()).unwrap(), da);

        let half = SimpleValuation::from_named(d.clone(), &[("a", r("1/2"))]).unwrap();
        assert!(edalat_to_sub(&half).is_err());
        let ac = Arc::new(FinPoset::antichain(&["x", "y"]));
        assert!(edalat_to_sub(&SimpleValuation::dirac(ac, 0)).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let d = Arc::new(FinPoset::diamond());
        let nu = SimpleValuation::from_named(d.clone(), &[("a", r("1/2")), ("top", r("1/3"))]).unwrap();
        let back = SimpleValuation::from_json(&nu.to_json(), Some(d)).unwrap();
        assert_eq!(back, nu);
    }
}
