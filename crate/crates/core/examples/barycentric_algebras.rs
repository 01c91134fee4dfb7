//! Check the barycentric algebra laws on the built-in instances and compute
//! a few barycenters.
//!
//! ```bash
//! cargo run --example barycentric_algebras
//! ```

use std::sync::Arc;

use barycentric::baryalg::{
    barycenter, check_axioms, check_entropic, check_pointed_laws, BarycentricAlgebra, FlatAlgebra, Kp, KpElem,
    RationalConvex, Schedule, ValuationAlgebra, ValuationMode,
};
use barycentric::{FinPoset, Rat};

fn laws<A: BarycentricAlgebra>(alg: &A) {
    let sched = Schedule::standard(alg);
    let mut rep = check_axioms(alg, &sched);
    rep.merge(check_entropic(alg, &sched));
    if alg.is_pointed() {
        rep.merge(check_pointed_laws(alg, &sched).expect("pointed"));
    }
    println!("{:<18} {} checks, {} violations", alg.kind(), rep.checked, rep.violations.len());
}

fn main() -> barycentric::Result<()> {
    let diamond = FlatAlgebra::diamond();
    let plane = RationalConvex::new(2);
    let chain = Arc::new(FinPoset::chain(&["lo", "mid", "hi"]));
    let probs = ValuationAlgebra::new(chain, ValuationMode::Prob);

    laws(&diamond);
    laws(&plane);
    laws(&Kp);
    laws(&probs);

    let third = Rat::new(1, 3);
    let d = barycenter(&diamond, &[(third.clone(), 1), (Rat::new(2, 3), 2)])?;
    println!("diamond: 1/3 a + 2/3 b = {}", diamond.order().name(d));

    let p = barycenter(
        &plane,
        &[(third.clone(), plane.point(&[(1, 1), (0, 1)])), (Rat::new(2, 3), plane.point(&[(0, 1), (1, 1)]))],
    )?;
    println!("plane: 1/3 e1 + 2/3 e2 = {:?}", p);

    let k = barycenter(&Kp, &[(Rat::new(1, 2), KpElem::Top), (Rat::new(1, 2), KpElem::Low(Rat::one()))])?;
    println!("kp: 1/2 (0,1) + 1/2 (-inf,1) = {}", Kp.elem_to_json(&k));
    Ok(())
}
