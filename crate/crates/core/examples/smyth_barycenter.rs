//! Barycenters in the Smyth poweralgebra of convex upsets.
//!
//! ```bash
//! cargo run --example smyth_barycenter
//! ```

use std::collections::BTreeSet;

use barycentric::baryalg::{barycenter, BarycentricAlgebra, FlatAlgebra};
use barycentric::smyth::{min_affine, smyth_barycenter, smyth_eta, smyth_mix, smyth_order, SmythAlgebra, SmythBarycenter};
use barycentric::{Rat, UnitRat, XRat};

fn main() -> barycentric::Result<()> {
    let d = FlatAlgebra::diamond();
    let name = |s: &BTreeSet<usize>| d.order().names_of(s);

    let smyth = SmythAlgebra::new(&d)?;
    let carrier = smyth.carrier().unwrap_or_default();
    println!("{} convex upsets of the diamond:", carrier.len());
    for q in &carrier {
        println!("  {:?}", name(q.members()));
    }

    let ua = smyth_eta(&d, &1)?;
    let ub = smyth_eta(&d, &2)?;
    let m = smyth_mix(&d, &ua, &UnitRat::frac(1, 3), &ub)?;
    println!("up a +_1/3 up b = {:?}", name(m.members()));
    println!("up a below it in the Smyth order: {}", smyth_order(&ua, &m));

    let nu = [(Rat::new(1, 4), 1), (Rat::new(3, 4), 2)];
    match smyth_barycenter(&d, &nu)? {
        SmythBarycenter::Point(x) => println!("Smyth barycenter = {}", d.order().name(x)),
        SmythBarycenter::NotPrincipal { minimal, .. } => println!("not principal, minimal {:?}", name(&minimal)),
    }
    println!("ordinary barycenter = {}", d.order().name(barycenter(&d, &nu)?));

    let rank = |x: &usize| XRat::fin([0, 1, 1, 2][*x], 1);
    println!("min of rank over up a = {}", min_affine(&ua, rank));

    // a subprobability valuation puts the deficit on bot
    match smyth_barycenter(&d, &[(Rat::new(1, 2), 1)])? {
        SmythBarycenter::Point(x) => println!("1/2 a with deficit = {}", d.order().name(x)),
        SmythBarycenter::NotPrincipal { minimal, .. } => println!("not principal, minimal {:?}", name(&minimal)),
    }
    Ok(())
}
