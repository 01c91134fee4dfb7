//! The exact rational simplex solver on its own.
//!
//! ```bash
//! cargo run --example lp
//! ```

use barycentric::exactnum::{fmt_q, q};
use barycentric::lp::{Feasibility, LinearSystem, LpOutcome, Relation, Sense};

fn main() -> barycentric::Result<()> {
    // maximise 3x + 2y with x + y <= 4, x + 3y <= 6, x <= 3
    let mut sys = LinearSystem::new();
    let x = sys.add_var("x", true);
    let y = sys.add_var("y", true);
    sys.add_constraint(&[(x, q(1, 1)), (y, q(1, 1))], Relation::Le, q(4, 1))?;
    sys.add_constraint(&[(x, q(1, 1)), (y, q(3, 1))], Relation::Le, q(6, 1))?;
    sys.add_constraint(&[(x, q(1, 1))], Relation::Le, q(3, 1))?;
    sys.set_objective(&[(x, q(3, 1)), (y, q(2, 1))])?;
    println!("{sys}");

    let (out, trace) = sys.optimize_traced(Sense::Max)?;
    for (i, step) in trace.iter().enumerate() {
        println!("tableau {i}:\n{step}");
    }
    if let LpOutcome::Optimal { value, point } = &out {
        let pt: Vec<String> = point.iter().map(fmt_q).collect();
        println!("optimum {} at {:?}", fmt_q(value), pt);
    }

    // thirds stay exact
    let mut sys = LinearSystem::new();
    let a = sys.add_var("a", false);
    let b = sys.add_var("b", false);
    sys.add_constraint(&[(a, q(3, 1)), (b, q(1, 1))], Relation::Eq, q(1, 1))?;
    sys.add_constraint(&[(a, q(1, 1)), (b, q(-3, 1))], Relation::Eq, q(0, 1))?;
    if let Feasibility::Solution(s) = sys.feasible()? {
        println!("a = {}, b = {}", fmt_q(&s[a]), fmt_q(&s[b]));
    }

    // minimising -a alone is unbounded along a ray
    let mut sys = LinearSystem::new();
    let a = sys.add_var("a", true);
    sys.add_constraint(&[(a, q(1, 1))], Relation::Ge, q(1, 2))?;
    sys.set_objective(&[(a, q(-1, 1))])?;
    match sys.optimize(Sense::Min)? {
        LpOutcome::Unbounded { point, ray } => println!("unbounded from {} along {}", fmt_q(&point[0]), fmt_q(&ray[0])),
        other => println!("{other:?}"),
    }
    Ok(())
}
