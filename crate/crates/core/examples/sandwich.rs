//! Fit a monotone affine map between a concave lower bound and a convex
//! upper bound on a finite semilattice.
//!
//! ```bash
//! cargo run --example sandwich
//! ```

use std::collections::BTreeMap;

use barycentric::baryalg::FlatAlgebra;
use barycentric::convex::{is_concave_map, is_convex_map, sandwich, SandwichOutcome};
use barycentric::{FinPoset, Rat};

fn main() -> barycentric::Result<()> {
    // subsets of {0, 1} ordered by inclusion
    let order = FinPoset::new(&["{}", "{0}", "{1}", "{0,1}"], &[("{}", "{0}"), ("{}", "{1}"), ("{0}", "{0,1}"), ("{1}", "{0,1}")])?;
    let alg = FlatAlgebra::semilattice(order)?;
    let r = |s: &str| s.parse::<Rat>().unwrap();
    let map = |vals: [&str; 4]| -> BTreeMap<usize, Rat> { vals.iter().enumerate().map(|(i, v)| (i, r(v))).collect() };

    let q = map(["0", "1/3", "0", "1/2"]);
    let p = map(["1", "2/3", "1", "2/3"]);
    println!("q concave: {}, p convex: {}", is_concave_map(&alg, &q)?, is_convex_map(&alg, &p)?);

    match sandwich(&alg, &q, &p, true)? {
        SandwichOutcome::Found(h) => {
            for (x, v) in &h {
                println!("  {:<6} q = {:<4} h = {:<4} p = {}", alg.order().name(*x), q[x].to_string(), v.to_string(), p[x]);
            }
        }
        SandwichOutcome::Infeasible => println!("no affine map fits"),
    }

    // without validation the solver just reports infeasibility
    let tight = map(["1/2", "1/2", "1/2", "1/3"]);
    println!("q <= h <= tight: {:?}", sandwich(&alg, &q, &tight, false)?);
    Ok(())
}
