#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use barycentric::baryalg::FlatAlgebra;
use barycentric::finspace::{FinPoset, OpenSet, PointSet};
use barycentric::valuation::SimpleValuation;
use barycentric::Rat;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(s: &str) -> Rat {
    s.parse().unwrap()
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Every partial order on `{0..n-1}`, as relation matrices, found by
/// filtering all antisymmetric orientations for transitivity.
pub fn all_labeled_posets(n: usize) -> Vec<FinPoset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => rel[i * n + j] = true,
                2 => rel[j * n + i] = true,
                _ => {}
            }
            c /= 3;
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(rel[i * n + j] && rel[j * n + k]) || rel[i * n + k]))
        });
        if transitive {
            out.push(FinPoset::from_relation(names(n), rel).unwrap());
        }
    }
    out
}

fn canonical_code(p: &FinPoset) -> Vec<bool> {
    let n = p.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    permute(&mut perm, 0, &mut |pm| {
        let code: Vec<bool> = (0..n * n).map(|k| p.leq(pm[k / n], pm[k % n])).collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    });
    best.unwrap_or_default()
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Join semilattices with 1..=max_n elements, one per isomorphism class.
pub fn semilattices_up_to(max_n: usize) -> Vec<FlatAlgebra> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut seen = BTreeSet::new();
        for p in all_labeled_posets(n) {
            let has_joins = (0..n).all(|i| (0..n).all(|j| p.join(i, j).is_some()));
            if has_joins && seen.insert(canonical_code(&p)) {
                out.push(FlatAlgebra::semilattice(p).unwrap());
            }
        }
    }
    out
}

/// A random poset: a random linear order thinned out, then closed.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> FinPoset {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let density = rng.gen_range(0.15..0.6);
    let mut rel = vec![false; n * n];
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.gen_bool(density) {
                rel[order[a] * n + order[b]] = true;
            }
        }
    }
    FinPoset::from_relation(names(n), rel).unwrap()
}

/// A random poset with an extra least point named `bot`.
pub fn random_pointed_poset(rng: &mut ChaCha8Rng, n: usize) -> FinPoset {
    let base = random_poset(rng, n);
    let mut nm = vec!["bot".to_string()];
    nm.extend(base.names().iter().cloned());
    let m = n + 1;
    let mut rel = vec![false; m * m];
    rel[..m].fill(true);
    for i in 0..n {
        for j in 0..n {
            rel[(i + 1) * m + j + 1] = base.leq(i, j);
        }
    }
    FinPoset::from_relation(nm, rel).unwrap()
}

/// A random rational with denominator at most `max_den` in `[0, max]`.
pub fn random_rat(rng: &mut ChaCha8Rng, max_den: u64, max: u64) -> Rat {
    let d = rng.gen_range(1..=max_den);
    Rat::new(rng.gen_range(0..=max * d), d)
}

pub fn random_masses(rng: &mut ChaCha8Rng, n: usize, max_den: u64) -> Vec<Rat> {
    (0..n)
        .map(|_| if rng.gen_bool(0.4) { Rat::zero() } else { random_rat(rng, max_den, 2) })
        .collect()
}

pub fn valuation(space: &Arc<FinPoset>, masses: &[Rat]) -> SimpleValuation {
    SimpleValuation::new(space.clone(), masses.iter().cloned().enumerate()).unwrap()
}

pub fn random_valuation(rng: &mut ChaCha8Rng, space: &Arc<FinPoset>, max_den: u64) -> SimpleValuation {
    valuation(space, &random_masses(rng, space.len(), max_den))
}

pub fn random_probability(rng: &mut ChaCha8Rng, space: &Arc<FinPoset>) -> SimpleValuation {
    loop {
        let v = random_valuation(rng, space, 6);
        if let Some(inv) = v.total().recip() {
            return v.scale(&inv);
        }
    }
}

/// Moves each point's mass to a random point above it (`up`) or below it.
pub fn push(rng: &mut ChaCha8Rng, nu: &SimpleValuation, up: bool) -> SimpleValuation {
    let sp = nu.space();
    let moved: Vec<(usize, Rat)> = nu
        .masses()
        .iter()
        .map(|(&x, m)| {
            let cands: Vec<usize> =
                (0..sp.len()).filter(|&y| if up { sp.leq(x, y) } else { sp.leq(y, x) }).collect();
            (*cands.choose(rng).unwrap(), m.clone())
        })
        .collect();
    SimpleValuation::new(sp.clone(), moved).unwrap()
}

/// All upsets, by filtering every subset against the definition.
pub fn brute_upsets(space: &FinPoset) -> Vec<PointSet> {
    let n = space.len();
    (0u32..(1 << n))
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<PointSet>())
        .filter(|s| s.iter().all(|&x| (0..n).all(|y| !space.leq(x, y) || s.contains(&y))))
        .collect()
}

pub fn mass_of(nu: &SimpleValuation, s: &PointSet) -> Rat {
    s.iter().map(|&x| nu.mass(x)).sum()
}

/// `μ(U) ≤ ν(U)` for every upset, by enumeration.
pub fn brute_le(mu: &SimpleValuation, nu: &SimpleValuation) -> bool {
    brute_upsets(mu.space()).iter().all(|u| mass_of(mu, u) <= mass_of(nu, u))
}

pub fn le_on(mu: &SimpleValuation, nu: &SimpleValuation, opens: &[OpenSet]) -> bool {
    opens.iter().all(|u| mass_of(mu, u.members()) <= mass_of(nu, u.members()))
}

/// A random upset: the up-closure of a random subset.
pub fn random_open(rng: &mut ChaCha8Rng, space: &FinPoset) -> OpenSet {
    let seed: PointSet = (0..space.len()).filter(|_| rng.gen_bool(0.3)).collect();
    space.open(space.up_closure(&seed)).unwrap()
}

/// A random semilattice: a union-closed family of subsets of a small set,
/// ordered by inclusion.
pub fn random_union_semilattice(rng: &mut ChaCha8Rng) -> FlatAlgebra {
    let base = rng.gen_range(2..=4u32);
    let k = rng.gen_range(1..=4);
    let mut fam: BTreeSet<u32> = (0..k).map(|_| rng.gen_range(0..(1u32 << base))).collect();
    loop {
        let cur: Vec<u32> = fam.iter().copied().collect();
        let before = fam.len();
        for a in &cur {
            for b in &cur {
                fam.insert(a | b);
            }
        }
        if fam.len() == before {
            break;
        }
    }
    let sets: Vec<u32> = fam.into_iter().collect();
    let n = sets.len();
    let nm: Vec<String> = sets.iter().map(|s| format!("s{s}")).collect();
    let rel = (0..n * n).map(|k| sets[k / n] & !sets[k % n] == 0).collect();
    FlatAlgebra::semilattice(FinPoset::from_relation(nm, rel).unwrap()).unwrap()
}

pub fn to_map<V: Clone>(vals: &[V]) -> BTreeMap<usize, V> {
    vals.iter().cloned().enumerate().collect()
}
