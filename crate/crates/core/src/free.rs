//! Free constructions over barycentric algebras.
//!
//! [`ConifyElem`] is the free cone `conify(B)`: formal pairs `(r, x)` with
//! `r > 0`, plus a zero. [`Telescope`] is the free cone over a pointed
//! algebra, the colimit of `B → B → …` under multiplication by a fixed
//! `α ∈ (0, 1)`, with classes `[(n, x)]`.

use std::fmt;

use serde_json::{json, Value};

use crate::baryalg::{BarycentricAlgebra, Cone};
use crate::error::{Error, Result};
use crate::exactnum::{Rat, UnitRat};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConifyElem<E> {
    Zero,
    Pair(Rat, E),
}

impl<E: fmt::Debug> fmt::Debug for ConifyElem<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConifyElem::Zero => f.write_str("0"),
            ConifyElem::Pair(r, x) => write!(f, "({r}, {x:?})"),
        }
    }
}

impl<E> ConifyElem<E> {
    /// `(r, x)`; `None` when `r = 0`.
    pub fn pair(r: Rat, x: E) -> Option<ConifyElem<E>> {
        if r.is_zero() {
            None
        } else {
            Some(ConifyElem::Pair(r, x))
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ConifyElem::Zero)
    }
}

/// `η(x) = (1, x)`.
pub fn eta<E>(x: E) -> ConifyElem<E> {
    ConifyElem::Pair(Rat::one(), x)
}

/// `(r, x) + (s, y) = (r+s, x +_{r/(r+s)} y)`, with `0` neutral.
pub fn conify_add<A: BarycentricAlgebra>(
    alg: &A,
    u: &ConifyElem<A::Elem>,
    v: &ConifyElem<A::Elem>,
) -> ConifyElem<A::Elem> {
    match (u, v) {
        (ConifyElem::Zero, w) | (w, ConifyElem::Zero) => w.clone(),
        (ConifyElem::Pair(r, x), ConifyElem::Pair(s, y)) => {
            let t = r + s;
            let a = UnitRat::new(r / &t).expect("r ≤ r+s");
            ConifyElem::Pair(t, alg.mix(x, &a, y))
        }
    }
}

/// `a·(r, x) = (ar, x)`, `0·u = 0`.
pub fn conify_smul<E: Clone>(a: &Rat, u: &ConifyElem<E>) -> ConifyElem<E> {
    match u {
        ConifyElem::Pair(r, x) if !a.is_zero() => ConifyElem::Pair(a * r, x.clone()),
        _ => ConifyElem::Zero,
    }
}

/// The level map `ℓ(0) = 0`, `ℓ(r, x) = r`.
pub fn level<E>(u: &ConifyElem<E>) -> Rat {
    match u {
        ConifyElem::Zero => Rat::zero(),
        ConifyElem::Pair(r, _) => r.clone(),
    }
}

/// The free preordered-cone relation `≤_c`.
///
/// `(r, x) ≤_c (s, y)` fails for `r > s`, is `x ≤ y` for `r = s`, and for
/// `r < s` asks for some `x'` with `x +_{r/s} x' ≤ y`.
pub fn conify_le<A: BarycentricAlgebra>(
    alg: &A,
    u: &ConifyElem<A::Elem>,
    v: &ConifyElem<A::Elem>,
) -> Result<bool> {
    match (u, v) {
        (ConifyElem::Zero, _) => Ok(true),
        (_, ConifyElem::Zero) => Ok(false),
        (ConifyElem::Pair(r, x), ConifyElem::Pair(s, y)) => {
            if r > s {
                Ok(false)
            } else if r == s {
                Ok(alg.leq(x, y))
            } else {
                let c = UnitRat::new(r / s).expect("r < s");
                Ok(alg.le_witness(x, &c, y)?.is_some())
            }
        }
    }
}

/// `f^cext(0) = 0`, `f^cext(r, x) = r·f(x)`.
pub fn conify_extend<C: Cone, E>(cone: &C, f: impl Fn(&E) -> C::V, u: &ConifyElem<E>) -> C::V {
    match u {
        ConifyElem::Zero => cone.zero(),
        ConifyElem::Pair(r, x) => cone.smul(r, &f(x)),
    }
}

/// Membership in `conify_{≤1}(B)`: level at most 1.
pub fn conify_le1_member<E>(u: &ConifyElem<E>) -> bool {
    level(u) <= Rat::one()
}

/// `a·u + (1-a)·v` inside `conify_{≤1}(B)`.
pub fn conify_le1_mix<A: BarycentricAlgebra>(
    alg: &A,
    u: &ConifyElem<A::Elem>,
    a: &UnitRat,
    v: &ConifyElem<A::Elem>,
) -> Result<ConifyElem<A::Elem>> {
    if !conify_le1_member(u) || !conify_le1_member(v) {
        return Err(Error::Precondition("operands must have level at most 1".into()));
    }
    Ok(conify_add(alg, &conify_smul(a.rat(), u), &conify_smul(&a.complement().into_rat(), v)))
}

/// The homogeneous extension of `f: B → C` into a pointed algebra `C`:
/// `0 ↦ ⊥`, `(r, x) ↦ r·f(x)`.
pub fn conify_le1_extend<A: BarycentricAlgebra, E>(
    target: &A,
    f: impl Fn(&E) -> A::Elem,
    u: &ConifyElem<E>,
) -> Result<A::Elem> {
    let bot = target.bottom().ok_or(Error::NotPointed)?;
    match u {
        ConifyElem::Zero => Ok(bot),
        ConifyElem::Pair(r, x) => {
            let r = UnitRat::new(r.clone())
                .ok_or_else(|| Error::Precondition("level above 1".into()))?;
            Ok(target.mix(&f(x), &r, &bot))
        }
    }
}

/// `conify(B)` as a [`Cone`].
pub struct ConifyCone<'a, A>(pub &'a A);

impl<'a, A: BarycentricAlgebra> Cone for ConifyCone<'a, A> {
    type V = ConifyElem<A::Elem>;
    fn zero(&self) -> Self::V {
        ConifyElem::Zero
    }
    fn add(&self, x: &Self::V, y: &Self::V) -> Self::V {
        conify_add(self.0, x, y)
    }
    fn smul(&self, a: &Rat, x: &Self::V) -> Self::V {
        conify_smul(a, x)
    }
}

/// `{"zero": true}` or `{"r": "3/4", "x": <elem>}`.
pub fn conify_to_json<A: BarycentricAlgebra>(alg: &A, u: &ConifyElem<A::Elem>) -> Value {
    match u {
        ConifyElem::Zero => json!({"zero": true}),
        ConifyElem::Pair(r, x) => json!({"r": r.to_string(), "x": alg.elem_to_json(x)}),
    }
}

pub fn conify_from_json<A: BarycentricAlgebra>(alg: &A, v: &Value) -> Result<ConifyElem<A::Elem>> {
    if v.get("zero").and_then(Value::as_bool) == Some(true) {
        return Ok(ConifyElem::Zero);
    }
    let r: Rat = serde_json::from_value(v.get("r").cloned().unwrap_or(Value::Null))
        .map_err(|e| Error::Parse(format!("r: {e}")))?;
    let x = alg.elem_from_json(v.get("x").ok_or_else(|| Error::Parse("pair needs \"x\"".into()))?)?;
    ConifyElem::pair(r, x).ok_or_else(|| Error::Parse("pair level must be positive".into()))
}

/// A telescope class in canonical form: the least level carrying a
/// representative, and the least such representative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TeleElem<E> {
    pub n: usize,
    pub x: E,
}

impl<E: fmt::Debug> fmt::Debug for TeleElem<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[({}, {:?})]", self.n, self.x)
    }
}

/// The telescope `tscope_α(B)` of a pointed algebra.
///
/// Equivalence is decided through a stabilisation index `s`: `α^j·x = α^j·y`
/// for some `j` iff `α^s·x = α^s·y`. Finite carriers compute `s` from the
/// shrinking images of `α·_`; symbolic instances supply it.
pub struct Telescope<'a, A: BarycentricAlgebra> {
    alg: &'a A,
    alpha: UnitRat,
    bot: A::Elem,
    stab: usize,
    slack: usize,
    cap: usize,
}

impl<'a, A: BarycentricAlgebra> Telescope<'a, A> {
    pub const DEFAULT_CAP: usize = 64;

    pub fn new(alg: &'a A, alpha: UnitRat) -> Result<Self> {
        Telescope::with_cap(alg, alpha, Self::DEFAULT_CAP)
    }

    pub fn with_cap(alg: &'a A, alpha: UnitRat, cap: usize) -> Result<Self> {
        if !alpha.is_interior() {
            return Err(Error::Precondition("α must lie strictly between 0 and 1".into()));
        }
        let bot = alg.bottom().ok_or(Error::NotPointed)?;
        let (stab, slack) = match alg.carrier() {
            Some(carrier) => {
                let mut img: Vec<A::Elem> = carrier.clone();
                let mut s = 0;
                loop {
                    let mut next: Vec<A::Elem> = img.iter().map(|x| alg.mix(x, &alpha, &bot)).collect();
                    next.sort();
                    next.dedup();
                    if next.len() == img.len() {
                        break;
                    }
                    img = next;
                    s += 1;
                    if s > cap {
                        return Err(Error::BoundExceeded(format!("scalar orbits do not stabilise within {cap}")));
                    }
                }
                (s, s + img.len() * img.len())
            }
            None => {
                let s = alg.scalar_stabilization().ok_or_else(|| {
                    Error::Unsupported(format!("{}: no equivalence oracle for the telescope", alg.kind()))
                })?;
                (s, s + 1)
            }
        };
        Ok(Telescope { alg, alpha, bot, stab, slack, cap })
    }

    pub fn alpha(&self) -> &UnitRat {
        &self.alpha
    }

    pub fn stabilization(&self) -> usize {
        self.stab
    }

    /// `α^k·x`.
    pub fn pow_scalar(&self, k: usize, x: &A::Elem) -> A::Elem {
        if k == 0 {
            return x.clone();
        }
        self.alg.mix(x, &self.alpha.pow(k as u32), &self.bot)
    }

    fn preimages(&self, k: usize, y: &A::Elem) -> Vec<A::Elem> {
        if k == 0 {
            return vec![y.clone()];
        }
        let mut v = self
            .alg
            .scalar_preimages(&self.alpha.pow(k as u32), y)
            .expect("instance with a stabilisation index supplies preimages");
        v.sort();
        v
    }

    /// `(m, x) ≡_α (n, y)`.
    pub fn equiv(&self, m: usize, x: &A::Elem, n: usize, y: &A::Elem) -> bool {
        let l = m.max(n);
        self.pow_scalar(self.stab + l - m, x) == self.pow_scalar(self.stab + l - n, y)
    }

    /// Representatives of `(n, x)`'s class at level `m`.
    fn reps_at(&self, n: usize, x: &A::Elem, m: usize) -> Vec<A::Elem> {
        if m >= n {
            self.preimages(self.stab, &self.pow_scalar(self.stab + m - n, x))
        } else {
            self.preimages(self.stab + n - m, &self.pow_scalar(self.stab, x))
        }
    }

    pub fn canonicalize(&self, n: usize, x: &A::Elem) -> TeleElem<A::Elem> {
        for m in 0..n {
            if let Some(z) = self.reps_at(n, x, m).into_iter().next() {
                return TeleElem { n: m, x: z };
            }
        }
        let z = self.reps_at(n, x, n).into_iter().next().unwrap_or_else(|| x.clone());
        TeleElem { n, x: z }
    }

    /// `η(x) = [(0, x)]`.
    pub fn eta(&self, x: &A::Elem) -> TeleElem<A::Elem> {
        self.canonicalize(0, x)
    }

    pub fn zero(&self) -> TeleElem<A::Elem> {
        self.canonicalize(0, &self.bot)
    }

    /// `[(n,x)] +_a [(n,y)] = [(n, x +_a y)]` after lifting to a common level.
    pub fn mix(&self, u: &TeleElem<A::Elem>, a: &UnitRat, v: &TeleElem<A::Elem>) -> TeleElem<A::Elem> {
        let l = u.n.max(v.n);
        let x = self.pow_scalar(l - u.n, &u.x);
        let y = self.pow_scalar(l - v.n, &v.x);
        self.canonicalize(l, &self.alg.mix(&x, a, &y))
    }

    /// `a·[(n, x)] = [(n+k, (α^k a)·x)]` for the least `k` with `α^k a ≤ 1`.
    pub fn smul(&self, a: &Rat, u: &TeleElem<A::Elem>) -> TeleElem<A::Elem> {
        if a.is_zero() {
            return self.zero();
        }
        let mut k = 0;
        let mut c = a.clone();
        while c > Rat::one() {
            c = &c * self.alpha.rat();
            k += 1;
        }
        let c = UnitRat::new(c).expect("scaled into [0, 1]");
        self.canonicalize(u.n + k, &self.alg.mix(&u.x, &c, &self.bot))
    }

    /// `u + v = 2·(u +_{1/2} v)`.
    pub fn add(&self, u: &TeleElem<A::Elem>, v: &TeleElem<A::Elem>) -> TeleElem<A::Elem> {
        self.smul(&Rat::from_int(2), &self.mix(u, &UnitRat::half(), v))
    }

    /// Searches common levels upward from the larger canonical level for
    /// representatives `x̃ ≤ ỹ`.
    pub fn le(&self, u: &TeleElem<A::Elem>, v: &TeleElem<A::Elem>) -> Result<bool> {
        let l = u.n.max(v.n);
        let span = self.slack.min(self.cap);
        for m in l..=l + span {
            let xs = self.reps_at(u.n, &u.x, m);
            let ys = self.reps_at(v.n, &v.x, m);
            if xs.iter().any(|x| ys.iter().any(|y| self.alg.leq(x, y))) {
                return Ok(true);
            }
        }
        if self.slack > self.cap {
            return Err(Error::BoundExceeded(format!("no common level found within {}", self.cap)));
        }
        Ok(false)
    }

    /// `[(n, x)] ↦ (1/α)^n·f(x)`.
    pub fn extend<C: Cone>(&self, cone: &C, f: impl Fn(&A::Elem) -> C::V, u: &TeleElem<A::Elem>) -> C::V {
        let inv = self.alpha.rat().recip().expect("α > 0");
        cone.smul(&inv.pow(u.n as u32), &f(&u.x))
    }

    /// Spot-checks `f(α·x) = α·f(x)` on `samples`.
    pub fn check_commutes<C: Cone>(
        &self,
        cone: &C,
        f: impl Fn(&A::Elem) -> C::V,
        samples: &[A::Elem],
    ) -> Result<()> {
        for x in samples {
            if f(&self.pow_scalar(1, x)) != cone.smul(self.alpha.rat(), &f(x)) {
                return Err(Error::Validation(format!("map does not commute with α· at {x:?}")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self, u: &TeleElem<A::Elem>) -> Value {
        json!({"n": u.n, "x": self.alg.elem_to_json(&u.x), "alpha": self.alpha.to_string()})
    }

    pub fn from_json(&self, v: &Value) -> Result<TeleElem<A::Elem>> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("telescope element needs a level \"n\"".into()))?;
        if let Some(a) = v.get("alpha").and_then(Value::as_str) {
            if a.parse::<UnitRat>()? != self.alpha {
                return Err(Error::Parse(format!("element built for α = {a}, not {}", self.alpha)));
            }
        }
        let x = self
            .alg
            .elem_from_json(v.get("x").ok_or_else(|| Error::Parse("telescope element needs \"x\"".into()))?)?;
        Ok(self.canonicalize(n as usize, &x))
    }
}

impl<'a, A: BarycentricAlgebra> Cone for Telescope<'a, A> {
    type V = TeleElem<A::Elem>;
    fn zero(&self) -> Self::V {
        Telescope::zero(self)
    }
    fn add(&self, x: &Self::V, y: &Self::V) -> Self::V {
        Telescope::add(self, x, y)
    }
    fn smul(&self, a: &Rat, x: &Self::V) -> Self::V {
        Telescope::smul(self, a, x)
    }
}
