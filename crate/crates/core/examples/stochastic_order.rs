//! Compare two valuations on a finite poset and print the transport plan
//! that certifies dominance.
//!
//! ```bash
//! cargo run --example stochastic_order
//! ```

use std::sync::Arc;

use barycentric::valuation::{stochastic_le, SimpleValuation};
use barycentric::{FinPoset, Rat};

fn main() -> barycentric::Result<()> {
    let space = Arc::new(FinPoset::diamond());
    let r = |s: &str| s.parse::<Rat>().unwrap();

    let mu = SimpleValuation::from_named(space.clone(), &[("bot", r("1/2")), ("a", r("1/4"))])?;
    let nu = SimpleValuation::from_named(space.clone(), &[("a", r("1/2")), ("top", r("1/2"))])?;

    for (name, x, y) in [("mu <= nu", &mu, &nu), ("nu <= mu", &nu, &mu)] {
        let d = stochastic_le(x, y)?;
        println!("{name}: {}", d.related);
        if let Some(t) = d.witness {
            for ((i, j), m) in &t.entries {
                if i == j {
                    println!("  keep {m} at {}", space.name(*i));
                } else {
                    println!("  move {m} from {} up to {}", space.name(*i), space.name(*j));
                }
            }
        }
    }

    // the same answer by checking every upset
    let upsets = space.upsets();
    let by_upsets = upsets.iter().all(|u| mu.eval(u).unwrap() <= nu.eval(u).unwrap());
    println!("checked on {} upsets: {by_upsets}", upsets.len());
    Ok(())
}
