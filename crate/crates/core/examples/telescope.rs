//! The telescope construction on the Keimel-Plotkin algebra, where two
//! distinct elements with equal scalar multiples get identified.
//!
//! ```bash
//! cargo run --example telescope
//! ```

use barycentric::baryalg::{BarycentricAlgebra, Kp, KpElem, RatCone};
use barycentric::free::Telescope;
use barycentric::{Rat, UnitRat};

fn main() -> barycentric::Result<()> {
    let tele = Telescope::new(&Kp, UnitRat::half())?;
    println!("alpha = {}, stabilization index = {}", tele.alpha(), tele.stabilization());

    let x = KpElem::Top;
    let y = KpElem::Low(Rat::one());
    println!("x <= y in KP: {}", Kp.leq(&x, &y));
    println!("(0, x) ~ (0, y): {}", tele.equiv(0, &x, 0, &y));
    println!("eta(x) = {}, eta(y) = {}", tele.to_json(&tele.eta(&x)), tele.to_json(&tele.eta(&y)));

    let u = tele.canonicalize(2, &KpElem::Low(Rat::new(1, 4)));
    let v = tele.eta(&KpElem::Low(Rat::one()));
    println!("[(2, (-inf,1/4))] = {}", tele.to_json(&u));
    println!("u <= v: {}", tele.le(&u, &v)?);
    println!("u + v = {}", tele.to_json(&tele.add(&u, &v)));
    println!("3 . u = {}", tele.to_json(&tele.smul(&Rat::from_int(3), &u)));
    println!("u +_(1/3) v = {}", tele.to_json(&tele.mix(&u, &UnitRat::frac(1, 3), &v)));

    let sup = |e: &KpElem| match e {
        KpElem::Low(s) => s.clone(),
        KpElem::Top => Rat::one(),
    };
    tele.check_commutes(&RatCone, sup, &Kp.sample())?;
    println!("sup extended to u: {}", tele.extend(&RatCone, sup, &u));
    Ok(())
}
