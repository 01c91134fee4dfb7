//! Split a valuation along a lattice of opens, then build the pair of
//! witnesses used for strong consistency.
//!
//! ```bash
//! cargo run --example decomposition
//! ```

use std::sync::Arc;

use barycentric::convex::consistency_witness;
use barycentric::finspace::generate_lattice;
use barycentric::valuation::{schroder_simpson_split, second_split, SimpleValuation};
use barycentric::{FinPoset, Rat, UnitRat};

fn show(label: &str, v: &SimpleValuation) {
    println!("{label:>8}: {}", v.to_json());
}

fn main() -> barycentric::Result<()> {
    let space = Arc::new(FinPoset::new(
        &["x", "y", "z", "w"],
        &[("x", "z"), ("y", "z"), ("y", "w")],
    )?);
    let r = |s: &str| s.parse::<Rat>().unwrap();

    let gens = [space.open_named(&["z"])?, space.open_named(&["w"])?];
    let lattice = generate_lattice(&space, &gens);
    println!("lattice:");
    for u in &lattice {
        println!("  {:?}", space.names_of(u.members()));
    }

    let mu = SimpleValuation::from_named(space.clone(), &[("x", r("1/3")), ("y", r("1/3"))])?;
    let nu = SimpleValuation::from_named(space.clone(), &[("z", r("1/2")), ("w", r("1/2")), ("y", r("1/4"))])?;
    let (nu1, nu2) = schroder_simpson_split(&mu, &nu, &lattice)?;
    show("mu", &mu);
    show("nu", &nu);
    show("nu1", &nu1);
    show("nu2", &nu2);
    println!("nu1(X) = {} = mu(X)", nu1.total());

    let varpi = SimpleValuation::from_named(space.clone(), &[("z", r("1")), ("w", r("1"))])?;
    let (mu2, nu2) = second_split(&mu, &nu1, &varpi, &lattice)?;
    println!("second split under varpi = {}", varpi.to_json());
    show("mu'", &mu2);
    show("nu'", &nu2);

    let (mu3, nu3) = consistency_witness(&mu, &nu, &varpi, &UnitRat::half(), &UnitRat::frac(2, 3), &lattice)?;
    println!("consistency witness for a = 1/2, c = 2/3:");
    show("mu'", &mu3);
    show("nu'", &nu3);
    Ok(())
}
