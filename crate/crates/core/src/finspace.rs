//! Finite T₀ spaces, presented as posets with their Alexandroff topology.
//!
//! In a finite space the open sets are exactly the upward-closed sets of the
//! specialization order, so an [`OpenSet`] is just a validated upset and the
//! closure of a set is its downward closure. Points are addressed by index
//! (declared order); their string names only matter at the JSON boundary.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of point indices.
pub type PointSet = BTreeSet<usize>;

/// A finite partially ordered set of named points.
#[derive(Clone, PartialEq, Eq)]
pub struct FinPoset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    // row-major n*n, leq[i*n + j] iff i <= j
    leq: Vec<bool>,
}

impl fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinPoset")
            .field("elements", &self.names)
            .field("covers", &self.covering_pairs_named())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    elements: Vec<String>,
    #[serde(default)]
    leq: Vec<(String, String)>,
}

impl FinPoset {
    /// Builds a poset from element names and generating pairs `(x, y)`
    /// meaning `x <= y`. The reflexive-transitive closure is taken and
    /// antisymmetry is checked.
    pub fn new<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<FinPoset> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, nm) in names.iter().enumerate() {
            if index.insert(nm.clone(), i).is_some() {
                return Err(Error::InvalidSpace(format!("duplicate element {nm:?}")));
            }
        }
        let n = names.len();
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for (a, b) in pairs {
            let i = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownPoint(a.as_ref().to_string()))?;
            let j = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownPoint(b.as_ref().to_string()))?;
            rel[i * n + j] = true;
        }
        FinPoset::from_relation(names, rel)
    }

    /// Builds a poset from a (not necessarily transitive) relation matrix.
    pub fn from_relation(names: Vec<String>, mut rel: Vec<bool>) -> Result<FinPoset> {
        let n = names.len();
        if rel.len() != n * n {
            return Err(Error::InvalidSpace("relation matrix has wrong size".into()));
        }
        for i in 0..n {
            rel[i * n + i] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rel[i * n + j] && rel[j * n + i] {
                    return Err(Error::InvalidSpace(format!(
                        "antisymmetry fails between {:?} and {:?}",
                        names[i], names[j]
                    )));
                }
            }
        }
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(FinPoset { names, index, leq: rel })
    }

    /// The chain `e0 < e1 < ...`.
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> FinPoset {
        let pairs: Vec<(&str, &str)> =
            elements.windows(2).map(|w| (w[0].as_ref(), w[1].as_ref())).collect();
        let names: Vec<&str> = elements.iter().map(|s| s.as_ref()).collect();
        FinPoset::new(&names, &pairs).expect("a chain is a poset")
    }

    /// Discrete order on the given elements.
    pub fn antichain<S: AsRef<str>>(elements: &[S]) -> FinPoset {
        let names: Vec<&str> = elements.iter().map(|s| s.as_ref()).collect();
        FinPoset::new::<&str>(&names, &[]).expect("an antichain is a poset")
    }

    /// The diamond `bot < a, b < top`.
    pub fn diamond() -> FinPoset {
        FinPoset::new(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .expect("diamond")
    }

    /// The order relation as a row-major boolean matrix.
    pub fn relation(&self) -> &[bool] {
        &self.leq
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    /// Converts point names into a point set.
    pub fn points<S: AsRef<str>>(&self, names: &[S]) -> Result<PointSet> {
        names.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn all(&self) -> PointSet {
        (0..self.len()).collect()
    }

    pub fn up(&self, i: usize) -> PointSet {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    pub fn down(&self, i: usize) -> PointSet {
        (0..self.len()).filter(|&j| self.leq(j, i)).collect()
    }

    pub fn up_closure(&self, a: &PointSet) -> PointSet {
        (0..self.len()).filter(|&j| a.iter().any(|&i| self.leq(i, j))).collect()
    }

    pub fn down_closure(&self, a: &PointSet) -> PointSet {
        (0..self.len()).filter(|&j| a.iter().any(|&i| self.leq(j, i))).collect()
    }

    pub fn is_upset(&self, a: &PointSet) -> bool {
        a.iter().all(|&i| (0..self.len()).all(|j| !self.leq(i, j) || a.contains(&j)))
    }

    pub fn is_downset(&self, a: &PointSet) -> bool {
        a.iter().all(|&i| (0..self.len()).all(|j| !self.leq(j, i) || a.contains(&j)))
    }

    pub fn minimal_elements(&self, a: &PointSet) -> PointSet {
        a.iter().copied().filter(|&i| !a.iter().any(|&j| self.lt(j, i))).collect()
    }

    pub fn maximal_elements(&self, a: &PointSet) -> PointSet {
        a.iter().copied().filter(|&i| !a.iter().any(|&j| self.lt(i, j))).collect()
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(i, j)))
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(j, i)))
    }

    /// Least upper bound of two points, when it exists.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let ub: PointSet = (0..self.len()).filter(|&k| self.leq(i, k) && self.leq(j, k)).collect();
        let mins = self.minimal_elements(&ub);
        if mins.len() == 1 {
            let m = *mins.iter().next().unwrap();
            if ub.iter().all(|&k| self.leq(m, k)) {
                return Some(m);
            }
        }
        None
    }

    /// Pairs `(x, y)` with `y` covering `x`.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn covering_pairs_named(&self) -> Vec<(String, String)> {
        self.covering_pairs()
            .into_iter()
            .map(|(i, j)| (self.names[i].clone(), self.names[j].clone()))
            .collect()
    }

    /// A linear extension of the order (ascending), stable in declared order.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&i| !placed[i] && (0..n).all(|j| placed[j] || j == i || !self.lt(j, i)))
                .expect("finite posets have minimal elements");
            placed[next] = true;
            out.push(next);
        }
        out
    }

    /// Every open set (upset) of the space, in a deterministic order.
    pub fn upsets(&self) -> Vec<OpenSet> {
        // Decide points top-down; a point may join only if everything above
        // it already has.
        let mut order = self.linear_extension();
        order.reverse();
        let mut out = Vec::new();
        let mut cur = PointSet::new();
        self.upsets_rec(&order, 0, &mut cur, &mut out);
        out.sort_by(|a, b| a.members.len().cmp(&b.members.len()).then(a.members.cmp(&b.members)));
        out
    }

    fn upsets_rec(&self, order: &[usize], k: usize, cur: &mut PointSet, out: &mut Vec<OpenSet>) {
        if k == order.len() {
            out.push(OpenSet { members: cur.clone() });
            return;
        }
        let x = order[k];
        self.upsets_rec(order, k + 1, cur, out);
        if (0..self.len()).all(|y| !self.lt(x, y) || cur.contains(&y)) {
            cur.insert(x);
            self.upsets_rec(order, k + 1, cur, out);
            cur.remove(&x);
        }
    }

    pub fn open(&self, members: PointSet) -> Result<OpenSet> {
        OpenSet::new(self, members)
    }

    pub fn open_named<S: AsRef<str>>(&self, names: &[S]) -> Result<OpenSet> {
        OpenSet::new(self, self.points(names)?)
    }

    /// `↑x` as an open set.
    pub fn principal_open(&self, i: usize) -> OpenSet {
        OpenSet { members: self.up(i) }
    }

    pub fn whole(&self) -> OpenSet {
        OpenSet { members: self.all() }
    }

    pub fn empty_open(&self) -> OpenSet {
        OpenSet { members: PointSet::new() }
    }

    pub fn names_of(&self, s: &PointSet) -> Vec<String> {
        s.iter().map(|&i| self.names[i].clone()).collect()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FinPoset> {
        let pj: PosetJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        FinPoset::new(&pj.elements, &pj.leq)
    }

    /// JSON form listing the covering relation.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PosetJson {
            elements: self.names.clone(),
            leq: self.covering_pairs_named(),
        })
        .expect("serializable")
    }
}

/// An open subset of a finite space: an upward-closed set of points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct OpenSet {
    members: PointSet,
}

impl OpenSet {
    pub fn new(space: &FinPoset, members: PointSet) -> Result<OpenSet> {
        if let Some(&bad) = members.iter().find(|&&i| i >= space.len()) {
            return Err(Error::UnknownPoint(format!("#{bad}")));
        }
        if !space.is_upset(&members) {
            return Err(Error::NotOpen(format!("{:?}", space.names_of(&members))));
        }
        Ok(OpenSet { members })
    }

    pub fn members(&self) -> &PointSet {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn union(&self, other: &OpenSet) -> OpenSet {
        OpenSet { members: self.members.union(&other.members).copied().collect() }
    }

    pub fn intersection(&self, other: &OpenSet) -> OpenSet {
        OpenSet { members: self.members.intersection(&other.members).copied().collect() }
    }

    pub fn is_subset(&self, other: &OpenSet) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// The crescent `C_I = ⋂_{i∈I} U_i ∖ ⋃_{i∉I} U_i` of a family of opens.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Crescent {
    pub label: BTreeSet<usize>,
    pub members: PointSet,
}

/// The smallest open set containing `a`, i.e. its upward closure.
pub fn saturate(space: &FinPoset, a: &PointSet) -> Result<OpenSet> {
    if let Some(&bad) = a.iter().find(|&&i| i >= space.len()) {
        return Err(Error::UnknownPoint(format!("#{bad}")));
    }
    Ok(OpenSet { members: space.up_closure(a) })
}

/// Closes `opens ∪ {∅, X}` under binary unions and intersections.
///
/// The result is sorted by size, then lexicographically.
pub fn generate_lattice(space: &FinPoset, opens: &[OpenSet]) -> Vec<OpenSet> {
    let mut family: BTreeSet<OpenSet> = opens.iter().cloned().collect();
    family.insert(space.empty_open());
    family.insert(space.whole());
    loop {
        let cur: Vec<OpenSet> = family.iter().cloned().collect();
        let before = family.len();
        for (i, u) in cur.iter().enumerate() {
            for v in &cur[i + 1..] {
                family.insert(u.union(v));
                family.insert(u.intersection(v));
            }
        }
        if family.len() == before {
            break;
        }
    }
    let mut out: Vec<OpenSet> = family.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.members.cmp(&b.members)));
    out
}

/// `f(x) = {i | x ∈ U_i}` for every point.
pub fn classify(space: &FinPoset, opens: &[OpenSet]) -> Vec<BTreeSet<usize>> {
    (0..space.len())
        .map(|x| opens.iter().enumerate().filter(|(_, u)| u.contains(x)).map(|(i, _)| i).collect())
        .collect()
}

/// All `2^n` crescents of `U_1..U_n`, empty ones included, ordered by the
/// bitmask of their label.
pub fn crescent_partition(space: &FinPoset, opens: &[OpenSet]) -> Vec<Crescent> {
    let n = opens.len();
    assert!(n < usize::BITS as usize, "too many opens for an explicit crescent partition");
    let f = classify(space, opens);
    (0..(1usize << n))
        .map(|mask| {
            let label: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let members = (0..space.len()).filter(|&x| f[x] == label).collect();
            Crescent { label, members }
        })
        .collect()
}

/// Only the crescents that contain at least one point, keyed by label.
pub fn nonempty_crescents(space: &FinPoset, opens: &[OpenSet]) -> BTreeMap<BTreeSet<usize>, PointSet> {
    let mut out: BTreeMap<BTreeSet<usize>, PointSet> = BTreeMap::new();
    for (x, label) in classify(space, opens).into_iter().enumerate() {
        out.entry(label).or_default().insert(x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> PointSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn closure_and_antisymmetry() {
        let p = FinPoset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.leq(0, 2));
        assert!(FinPoset::new(&["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
        assert!(matches!(
            FinPoset::new(&["a"], &[("a", "z")]),
            Err(Error::UnknownPoint(_))
        ));
        assert!(FinPoset::new(&["a", "a"], &[]).is_err());
    }

    #[test]
    fn saturate_examples() {
        let c = FinPoset::chain(&["a", "b", "c"]);
        assert_eq!(saturate(&c, &set(&[0])).unwrap().members(), &set(&[0, 1, 2]));
        assert!(saturate(&c, &set(&[])).unwrap().is_empty());
        let d = FinPoset::diamond();
        let a = d.index_of("a").unwrap();
        assert_eq!(saturate(&d, &set(&[a])).unwrap().members(), &set(&[1, 3]));
        assert!(saturate(&c, &set(&[7])).is_err());
    }

    #[test]
    fn lattice_examples() {
        let c = FinPoset::chain(&["a", "b"]);
        let l = generate_lattice(&c, &[]);
        assert_eq!(l, vec![c.empty_open(), c.whole()]);
        let l = generate_lattice(&c, &[c.principal_open(1)]);
        assert_eq!(l, vec![c.empty_open(), c.principal_open(1), c.whole()]);
        let ac = FinPoset::antichain(&["x", "y"]);
        let l = generate_lattice(&ac, &[ac.principal_open(0), ac.principal_open(1)]);
        let ms: Vec<PointSet> = l.iter().map(|u| u.members().clone()).collect();
        assert_eq!(ms, vec![set(&[]), set(&[0]), set(&[1]), set(&[0, 1])]);
    }

    #[test]
    fn crescent_examples() {
        let c = FinPoset::chain(&["a", "b"]);
        let cr = crescent_partition(&c, &[c.principal_open(1)]);
        assert_eq!(cr.len(), 2);
        assert_eq!(cr[0].label, set(&[]));
        assert_eq!(cr[0].members, set(&[0]));
        assert_eq!(cr[1].label, set(&[0]));
        assert_eq!(cr[1].members, set(&[1]));

        let cr = crescent_partition(&c, &[]);
        assert_eq!(cr.len(), 1);
        assert_eq!(cr[0].members, c.all());

        let ac = FinPoset::antichain(&["x", "y"]);
        let cr = crescent_partition(&ac, &[ac.principal_open(0), ac.principal_open(1)]);
        let by_label: BTreeMap<_, _> = cr.into_iter().map(|c| (c.label, c.members)).collect();
        assert_eq!(by_label[&set(&[0])], set(&[0]));
        assert_eq!(by_label[&set(&[1])], set(&[1]));
        assert!(by_label[&set(&[])].is_empty());
        assert!(by_label[&set(&[0, 1])].is_empty());
    }

    #[test]
    fn upsets_of_diamond() {
        let d = FinPoset::diamond();
        let ups = d.upsets();
        // ∅, {⊤}, {a,⊤}, {b,⊤}, {a,b,⊤}, X
        assert_eq!(ups.len(), 6);
        for u in &ups {
            assert!(d.is_upset(u.members()));
        }
    }

    #[test]
    fn open_validation() {
        let c = FinPoset::chain(&["a", "b"]);
        assert!(c.open(set(&[0])).is_err());
        assert!(c.open(set(&[1])).is_ok());
    }

    #[test]
    fn json_roundtrip() {
        let d = FinPoset::diamond();
        let back = FinPoset::from_json(&d.to_json()).unwrap();
        assert_eq!(d, back);
    }

    #[test]
    fn joins() {
        let d = FinPoset::diamond();
        assert_eq!(d.join(1, 2), Some(3));
        let ac = FinPoset::antichain(&["x", "y"]);
        assert_eq!(ac.join(0, 1), None);
        assert_eq!(d.least(), Some(0));
    }
}
