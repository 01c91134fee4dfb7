//! Convex hulls and closures in a finite semilattice, and exact hull
//! membership for rational vectors.
//!
//! ```bash
//! cargo run --example convex_hulls
//! ```

use std::collections::BTreeSet;

use barycentric::baryalg::FlatAlgebra;
use barycentric::convex::{
    check_strong_consistency, closed_conv, conv, is_halfspace, is_linearly_separated, upconv,
    vectors_linearly_separated, VectorHull,
};
use barycentric::{FinPoset, Rat, UnitRat};

fn names(alg: &FlatAlgebra, s: &BTreeSet<usize>) -> Vec<String> {
    alg.order().names_of(s)
}

fn main() -> barycentric::Result<()> {
    let d = FlatAlgebra::diamond();
    let ab: BTreeSet<usize> = [1, 2].into();
    println!("conv{{a, b}}        = {:?}", names(&d, &conv(&d, &ab)?));
    println!("upconv{{a, b}}      = {:?}", names(&d, &upconv(&d, &ab)?));
    println!("closed conv{{a, b}} = {:?}", names(&d, &closed_conv(&d, &ab)?));
    for s in [BTreeSet::from([3]), BTreeSet::from([1, 3]), BTreeSet::from([0, 1])] {
        println!("{:?} is a halfspace: {}", names(&d, &s), is_halfspace(&d, &s)?);
    }

    let (open, sat) = check_strong_consistency(&d, &[1, 3].into(), &[2, 3].into(), &UnitRat::half())?;
    println!("up{{x +_1/2 y}} for x in up a, y in up b = {:?}, open: {open}", names(&d, &sat));

    let sep = is_linearly_separated(&d)?;
    println!("diamond linearly separated: {}", sep.separated);
    let v = FlatAlgebra::semilattice(FinPoset::new(&["p", "q", "r"], &[("p", "r"), ("q", "r")])?)?;
    println!("V shape linearly separated: {}", is_linearly_separated(&v)?.separated);

    let r = |s: &str| s.parse::<Rat>().unwrap();
    let tri = VectorHull::new(vec![vec![r("0"), r("0")], vec![r("2"), r("0")], vec![r("0"), r("2")]]);
    for p in [[r("1/2"), r("1/2")], [r("1"), r("1")], [r("3/2"), r("1")]] {
        println!("{:?} in triangle: {:?}", p, tri.weights_for(&p)?);
    }
    println!("triangle corners separated: {}", vectors_linearly_separated(tri.generators())?.separated);
    Ok(())
}
