//! The free cone over a barycentric algebra: sums, scalars, the cone order
//! and the extension of an affine map to a linear one.
//!
//! ```bash
//! cargo run --example free_cone
//! ```

use barycentric::baryalg::{check_cone_laws, BarycentricAlgebra, Kp, KpElem, RatCone};
use barycentric::free::{conify_add, conify_extend, conify_le, conify_smul, eta, level, ConifyCone, ConifyElem};
use barycentric::Rat;

fn show(u: &ConifyElem<KpElem>) -> String {
    match u {
        ConifyElem::Zero => "0".into(),
        ConifyElem::Pair(r, x) => format!("({r}, {})", Kp.elem_to_json(x)),
    }
}

fn main() -> barycentric::Result<()> {
    let x = eta(KpElem::Top);
    let y = eta(KpElem::Low(Rat::new(1, 2)));
    let s = conify_add(&Kp, &x, &y);
    println!("eta(0,1) + eta(-inf,1/2) = {}", show(&s));
    println!("level = {}", level(&s));

    let t = conify_smul(&Rat::new(3, 2), &y);
    println!("3/2 . eta(-inf,1/2) = {}", show(&t));

    for (u, v) in [(&y, &x), (&x, &y), (&y, &s), (&s, &t)] {
        println!("{} <=c {} : {}", show(u), show(v), conify_le(&Kp, u, v)?);
    }

    // sup of the interval is affine and monotone, so it extends linearly
    let sup = |e: &KpElem| match e {
        KpElem::Low(s) => s.clone(),
        KpElem::Top => Rat::one(),
    };
    let lhs = conify_extend(&RatCone, sup, &s);
    println!("sup^cext of the sum = {lhs} = {} + {}", sup(&KpElem::Top), sup(&KpElem::Low(Rat::new(1, 2))));

    let els = vec![ConifyElem::Zero, x, y, s, t];
    let scalars = [Rat::zero(), Rat::new(1, 3), Rat::one(), Rat::from_int(2)];
    let rep = check_cone_laws(&ConifyCone(&Kp), &els, &scalars);
    println!("cone laws: {} checks, pass = {}", rep.checked, rep.pass());
    Ok(())
}
