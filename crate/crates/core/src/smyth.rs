//! The Smyth convex poweralgebra over a finite interval-flat algebra.
//!
//! Elements are non-empty convex upsets (compact saturated sets of a finite
//! space), mixed by `↑{x +_a y}` and ordered by reverse inclusion.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::baryalg::BarycentricAlgebra;
use crate::convex::{conv, is_convex, up_closure};
use crate::error::{Error, Result};
use crate::exactnum::{Rat, UnitRat, XRat};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConvexUpset<E: Ord> {
    members: BTreeSet<E>,
}

impl<E: Ord + Clone + std::fmt::Debug> ConvexUpset<E> {
    /// Validates non-emptiness, upward closure and convexity.
    pub fn new<A: BarycentricAlgebra<Elem = E>>(alg: &A, members: BTreeSet<E>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Precondition("convex upsets are non-empty".into()));
        }
        if up_closure(alg, &members)? != members {
            return Err(Error::NotOpen(format!("{members:?}")));
        }
        if !is_convex(alg, &members)? {
            return Err(Error::Precondition(format!("{members:?} is not convex")));
        }
        Ok(ConvexUpset { members })
    }

    pub fn members(&self) -> &BTreeSet<E> {
        &self.members
    }

    pub fn to_json<A: BarycentricAlgebra<Elem = E>>(&self, alg: &A) -> Value {
        json!({"members": self.members.iter().map(|x| alg.elem_to_json(x)).collect::<Vec<_>>()})
    }

    pub fn from_json<A: BarycentricAlgebra<Elem = E>>(alg: &A, v: &Value) -> Result<Self> {
        let ms = v
            .get("members")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("expected {\"members\": [...]}".into()))?;
        let members = ms.iter().map(|m| alg.elem_from_json(m)).collect::<Result<_>>()?;
        ConvexUpset::new(alg, members)
    }
}

/// `Q₁ +♯_a Q₂ = ↑{x +_a y | x ∈ Q₁, y ∈ Q₂}`.
pub fn smyth_mix<A: BarycentricAlgebra>(
    alg: &A,
    q1: &ConvexUpset<A::Elem>,
    a: &UnitRat,
    q2: &ConvexUpset<A::Elem>,
) -> Result<ConvexUpset<A::Elem>> {
    let pointwise: BTreeSet<A::Elem> = q1
        .members
        .iter()
        .flat_map(|x| q2.members.iter().map(move |y| alg.mix(x, a, y)))
        .collect();
    ConvexUpset::new(alg, up_closure(alg, &pointwise)?)
        .map_err(|e| Error::Validation(format!("mix is not a convex upset: {e}")))
}

/// `η(x) = ↑x`.
pub fn smyth_eta<A: BarycentricAlgebra>(alg: &A, x: &A::Elem) -> Result<ConvexUpset<A::Elem>> {
    ConvexUpset::new(alg, up_closure(alg, &[x.clone()].into())?)
}

/// `Q₁ ⊑ Q₂` iff `Q₁ ⊇ Q₂`.
pub fn smyth_order<E: Ord>(q1: &ConvexUpset<E>, q2: &ConvexUpset<E>) -> bool {
    q1.members.is_superset(&q2.members)
}

/// `minΛ(Q) = min_{x∈Q} Λ(x)`.
pub fn min_affine<E: Ord>(q: &ConvexUpset<E>, lambda: impl Fn(&E) -> XRat) -> XRat {
    q.members.iter().map(lambda).min().expect("non-empty")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmythBarycenter<E: Ord> {
    Point(E),
    NotPrincipal { set: ConvexUpset<E>, minimal: BTreeSet<E> },
}

/// `↑conv` of all barycenters of `(a_i, y_i)` with `y_i ∈ ↑x_i`; returns its
/// least element when there is one.
///
/// Weights must sum to 1, or to at most 1 on a pointed instance (the
/// deficit then sits on `⊥`).
pub fn smyth_barycenter_set<A: BarycentricAlgebra>(
    alg: &A,
    nu: &[(Rat, A::Elem)],
) -> Result<ConvexUpset<A::Elem>> {
    let total: Rat = nu.iter().map(|(a, _)| a).sum();
    let mut weighted: Vec<(Rat, A::Elem)> = nu.iter().filter(|(a, _)| !a.is_zero()).cloned().collect();
    if !total.is_one() {
        let bot = alg
            .bottom()
            .filter(|_| total < Rat::one())
            .ok_or_else(|| Error::Precondition(format!("weights sum to {total}")))?;
        weighted.push((Rat::one().checked_sub(&total).expect("below 1"), bot));
    }
    let mut iter = weighted.into_iter();
    let (mut seen, first) = iter.next().ok_or_else(|| Error::Precondition("empty valuation".into()))?;
    let mut bary = up_closure(alg, &[first].into())?;
    for (a, x) in iter {
        let next = &seen + &a;
        let c = UnitRat::new(&seen / &next).expect("partial sums grow");
        let ups = up_closure(alg, &[x].into())?;
        bary = bary.iter().flat_map(|b| ups.iter().map(|y| alg.mix(b, &c, y))).collect();
        seen = next;
    }
    ConvexUpset::new(alg, up_closure(alg, &conv(alg, &bary)?)?)
        .map_err(|e| Error::Validation(format!("barycenter set is not a convex upset: {e}")))
}

pub fn smyth_barycenter<A: BarycentricAlgebra>(
    alg: &A,
    nu: &[(Rat, A::Elem)],
) -> Result<SmythBarycenter<A::Elem>> {
    let set = smyth_barycenter_set(alg, nu)?;
    Ok(principal(alg, set))
}

/// The least element of `Q`, or the antichain of its minimal elements.
pub fn principal<A: BarycentricAlgebra>(alg: &A, set: ConvexUpset<A::Elem>) -> SmythBarycenter<A::Elem> {
    let minimal: BTreeSet<A::Elem> = set
        .members
        .iter()
        .filter(|x| !set.members.iter().any(|y| y != *x && alg.leq(y, x)))
        .cloned()
        .collect();
    if minimal.len() == 1 {
        SmythBarycenter::Point(minimal.into_iter().next().expect("one element"))
    } else {
        SmythBarycenter::NotPrincipal { set, minimal }
    }
}

/// The poweralgebra itself as a [`BarycentricAlgebra`], carrying every
/// non-empty convex upset of a finite instance.
pub struct SmythAlgebra<'a, A: BarycentricAlgebra> {
    base: &'a A,
    carrier: Vec<ConvexUpset<A::Elem>>,
}

impl<'a, A: BarycentricAlgebra> SmythAlgebra<'a, A> {
    pub fn new(base: &'a A) -> Result<Self> {
        let elems = base
            .carrier()
            .ok_or_else(|| Error::Unsupported(format!("{}: needs a finite instance", base.kind())))?;
        if elems.len() > 12 {
            return Err(Error::BoundExceeded("carrier too large to enumerate subsets".into()));
        }
        let mut carrier = Vec::new();
        for mask in 1u32..(1 << elems.len()) {
            let s: BTreeSet<A::Elem> =
                (0..elems.len()).filter(|i| mask >> i & 1 == 1).map(|i| elems[i].clone()).collect();
            if let Ok(q) = ConvexUpset::new(base, s) {
                carrier.push(q);
            }
        }
        carrier.sort();
        Ok(SmythAlgebra { base, carrier })
    }
}

impl<'a, A: BarycentricAlgebra> BarycentricAlgebra for SmythAlgebra<'a, A> {
    type Elem = ConvexUpset<A::Elem>;

    fn kind(&self) -> &'static str {
        "smyth"
    }

    fn mix(&self, x: &Self::Elem, a: &UnitRat, y: &Self::Elem) -> Self::Elem {
        smyth_mix(self.base, x, a, y).expect("convex upsets of a valid instance")
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        smyth_order(x, y)
    }

    fn is_interval_flat(&self) -> bool {
        self.base.is_interval_flat()
    }

    fn carrier(&self) -> Option<Vec<Self::Elem>> {
        Some(self.carrier.clone())
    }

    fn elem_to_json(&self, x: &Self::Elem) -> Value {
        x.to_json(self.base)
    }

    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem> {
        ConvexUpset::from_json(self.base, v)
    }
}
