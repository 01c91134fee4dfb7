//! Valuations as tables of open-set values, integration, images and the
//! correspondence between probability and subprobability valuations.
//!
//! ```bash
//! cargo run --example valuations
//! ```

use std::sync::Arc;

use barycentric::valuation::{edalat_to_prob, edalat_to_sub, eval_table, masses_from_table, SimpleValuation};
use barycentric::{FinPoset, Rat, XRat};

fn main() -> barycentric::Result<()> {
    let space = Arc::new(FinPoset::new(&["bot", "a", "b"], &[("bot", "a"), ("bot", "b")])?);
    let r = |s: &str| s.parse::<Rat>().unwrap();
    let nu = SimpleValuation::from_named(space.clone(), &[("bot", r("1/6")), ("a", r("1/3")), ("b", r("1/2"))])?;

    let table = eval_table(&nu);
    println!("values on the {} open sets:", table.len());
    for (u, v) in &table {
        println!("  nu({:?}) = {v}", space.names_of(u.members()));
    }
    println!("masses recovered: {}", masses_from_table(space.clone(), &table)? == nu);

    let h = |x: usize| [XRat::zero(), XRat::fin(2, 1), XRat::Infinity][x].clone();
    println!("integral of h = {}", nu.integrate(h));
    let h0 = |x: usize| [XRat::zero(), XRat::fin(2, 1), XRat::fin(5, 1)][x].clone();
    println!("integral of h0 = {}", nu.integrate(h0));

    let two = Arc::new(FinPoset::chain(&["lo", "hi"]));
    let img = nu.image(&[0, 1, 1], two)?;
    println!("image collapsing a and b: {}", img.to_json());

    let sub = edalat_to_sub(&nu)?;
    println!("subprobability part: {} (total {})", sub.to_json(), sub.total());
    println!("back again: {}", edalat_to_prob(&sub, space)? == nu);
    Ok(())
}
