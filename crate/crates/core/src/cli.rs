//! Command-line front end. Every argument that takes JSON accepts either a
//! file path or the JSON text itself.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::baryalg::{
    barycenter, barycenter_sub, check_axioms, check_entropic, check_pointed_laws, verify_barycenter_choquet,
    weighted_from_json, BarycentricAlgebra, Instance, InstanceVisitor, Schedule,
};
use crate::convex::{consistency_witness, sandwich, SandwichOutcome};
use crate::error::{Error, Result};
use crate::exactnum::{parse_q, Rat, UnitRat};
use crate::finspace::{generate_lattice, nonempty_crescents, FinPoset, OpenSet};
use crate::free::{conify_add, conify_from_json, conify_le, conify_smul, conify_to_json, level, Telescope};
use crate::smyth::{smyth_barycenter, smyth_eta, smyth_mix, smyth_order, ConvexUpset, SmythBarycenter};
use crate::valuation::{schroder_simpson_split, second_split, stochastic_le, SimpleValuation};

#[derive(Parser, Debug)]
#[command(name = "barycentric", version, about = "Exact computations with valuations and barycentric algebras")]
pub struct Cli {
    /// Add approximate decimal renderings next to the exact output.
    #[arg(long, global = true)]
    pub decimal: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide the stochastic order between two valuations.
    Order {
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
    },
    /// Split ν into ν₁ + ν₂ with μ ≤ ν₁ on the lattice generated by the opens.
    Split {
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        opens: String,
    },
    /// From μ + ν ≤ ϖ on a lattice, build μ', ν' with μ' + ν' ≤ ϖ.
    Split2 {
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        varpi: String,
        #[arg(long)]
        opens: String,
    },
    /// Consistency witness for c·a·μ + c·(1−a)·ν ≤ ϖ.
    Witness {
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        varpi: String,
        #[arg(long)]
        opens: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        c: String,
    },
    /// Barycenter of weighted points in an algebra.
    Barycenter {
        #[arg(long)]
        instance: String,
        #[arg(long)]
        valuation: String,
        /// Allow total weight below 1 on a pointed instance.
        #[arg(long)]
        sub: bool,
    },
    /// Check whether a point is the barycenter of a valuation.
    ChoquetVerify {
        #[arg(long)]
        instance: String,
        #[arg(long)]
        valuation: String,
        #[arg(long)]
        point: String,
    },
    /// Operations of the free cone.
    Conify {
        #[arg(long)]
        instance: String,
        #[arg(long, value_enum)]
        op: ConifyOp,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: Option<String>,
        #[arg(long)]
        scalar: Option<String>,
    },
    /// Operations of the telescope over a pointed algebra.
    Telescope {
        #[arg(long)]
        instance: String,
        #[arg(long, default_value = "1/2")]
        alpha: String,
        #[arg(long, value_enum)]
        op: TeleOp,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: Option<String>,
        #[arg(long)]
        scalar: Option<String>,
    },
    /// Check the algebra laws on the instance's carrier or sample.
    Axioms {
        #[arg(long)]
        instance: String,
    },
    /// Find a monotone affine map between a concave and a convex map.
    Sandwich {
        #[arg(long)]
        instance: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        no_validate: bool,
    },
    /// Smyth poweralgebra operations.
    Smyth {
        #[arg(long)]
        instance: String,
        #[arg(long, value_enum)]
        op: SmythOp,
        #[arg(long)]
        valuation: Option<String>,
        #[arg(long)]
        q1: Option<String>,
        #[arg(long)]
        q2: Option<String>,
        #[arg(long)]
        scalar: Option<String>,
        #[arg(long)]
        point: Option<String>,
    },
    /// Lattice generated by opens, with its nonempty crescents.
    Lattice {
        #[arg(long)]
        space: String,
        #[arg(long)]
        opens: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ConifyOp {
    Add,
    Smul,
    Le,
    Level,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum TeleOp {
    Canon,
    Equiv,
    Mix,
    Smul,
    Add,
    Le,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SmythOp {
    Barycenter,
    Mix,
    Eta,
    Order,
}

/// Parses `argv`, runs the command and writes JSON to `out`.
/// Returns 0 on success, 1 on domain errors and 2 on usage or parse errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(mut v) => {
            if cli.decimal {
                let approx = approximate(&v);
                if let Value::Object(m) = &mut v {
                    m.insert("approximate_non_authoritative".into(), approx);
                }
            }
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serialisable"));
            0
        }
        Err(e) => {
            let code = match e {
                Error::Parse(_) => 2,
                _ => 1,
            };
            let _ = writeln!(out, "{}", json!({"error": e.to_string()}));
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

fn approximate(v: &Value) -> Value {
    match v {
        Value::String(s) if s.chars().any(|c| c.is_ascii_digit()) => match parse_q(s) {
            Ok(q) => match Rat::from_q(q.clone()) {
                Some(r) => json!(r.to_f64()),
                None => json!(-Rat::from_q(-q).map(|r| r.to_f64()).unwrap_or(0.0)),
            },
            Err(_) => v.clone(),
        },
        Value::Array(a) => Value::Array(a.iter().map(approximate).collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, x)| (k.clone(), approximate(x))).collect()),
        _ => v.clone(),
    }
}

/// Reads JSON from a file path or inline text.
pub fn load(arg: &str) -> Result<Value> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') || t.starts_with('"') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))
}

fn load_space(space: &Option<String>, mu: &Value) -> Result<Arc<FinPoset>> {
    match space {
        Some(s) => Ok(Arc::new(FinPoset::from_json(&load(s)?)?)),
        None => match mu.get("space") {
            Some(s) => Ok(Arc::new(FinPoset::from_json(s)?)),
            None => Err(Error::Parse("a space is required (--space or inline)".into())),
        },
    }
}

fn load_valuation(arg: &str, space: &Arc<FinPoset>) -> Result<SimpleValuation> {
    let v = load(arg)?;
    let nu = SimpleValuation::from_json(&v, Some(space.clone()))?;
    if nu.space() != space {
        return Err(Error::SpaceMismatch);
    }
    Ok(nu)
}

/// `[["b"], ["a", "b"]]` or `{"opens": [...]}`.
fn load_opens(arg: &str, space: &FinPoset) -> Result<Vec<OpenSet>> {
    let v = load(arg)?;
    let list = v.get("opens").cloned().unwrap_or(v);
    let names: Vec<Vec<String>> =
        serde_json::from_value(list).map_err(|e| Error::Parse(format!("opens: {e}")))?;
    names.iter().map(|ns| space.open_named(ns)).collect()
}

fn unit(s: &str) -> Result<UnitRat> {
    s.parse()
}

fn lattice_json(space: &FinPoset, lattice: &[OpenSet]) -> Value {
    Value::Array(lattice.iter().map(|u| json!(space.names_of(u.members()))).collect())
}

fn execute(cmd: &Command) -> Result<Value> {
    match cmd {
        Command::Order { space, mu, nu } => {
            let sp = load_space(space, &load(mu)?)?;
            let (mu, nu) = (load_valuation(mu, &sp)?, load_valuation(nu, &sp)?);
            let d = stochastic_le(&mu, &nu)?;
            let mut out = json!({"related": d.related});
            if let Some(t) = d.witness {
                out["transport"] = t.to_json(&sp);
            }
            Ok(out)
        }
        Command::Split { space, mu, nu, opens } => {
            let sp = load_space(space, &load(mu)?)?;
            let (mu, nu) = (load_valuation(mu, &sp)?, load_valuation(nu, &sp)?);
            let lattice = generate_lattice(&sp, &load_opens(opens, &sp)?);
            let (n1, n2) = schroder_simpson_split(&mu, &nu, &lattice)?;
            Ok(json!({"nu1": n1.to_json(), "nu2": n2.to_json(), "lattice": lattice_json(&sp, &lattice)}))
        }
        Command::Split2 { space, mu, nu, varpi, opens } => {
            let sp = load_space(space, &load(mu)?)?;
            let (mu, nu, w) = (load_valuation(mu, &sp)?, load_valuation(nu, &sp)?, load_valuation(varpi, &sp)?);
            let lattice = generate_lattice(&sp, &load_opens(opens, &sp)?);
            let (m2, n2) = second_split(&mu, &nu, &w, &lattice)?;
            Ok(json!({"mu_prime": m2.to_json(), "nu_prime": n2.to_json(), "lattice": lattice_json(&sp, &lattice)}))
        }
        Command::Witness { space, mu, nu, varpi, opens, a, c } => {
            let sp = load_space(space, &load(mu)?)?;
            let (mu, nu, w) = (load_valuation(mu, &sp)?, load_valuation(nu, &sp)?, load_valuation(varpi, &sp)?);
            let lattice = generate_lattice(&sp, &load_opens(opens, &sp)?);
            let (m1, n1) = consistency_witness(&mu, &nu, &w, &unit(a)?, &unit(c)?, &lattice)?;
            Ok(json!({"mu_prime": m1.to_json(), "nu_prime": n1.to_json()}))
        }
        Command::Lattice { space, opens } => {
            let sp = FinPoset::from_json(&load(space)?)?;
            let gens = load_opens(opens, &sp)?;
            let lattice = generate_lattice(&sp, &gens);
            let crescents: Vec<Value> = nonempty_crescents(&sp, &gens)
                .into_iter()
                .map(|(label, members)| json!({"label": label, "members": sp.names_of(&members)}))
                .collect();
            Ok(json!({"lattice": lattice_json(&sp, &lattice), "crescents": crescents}))
        }
        _ => {
            let instance = match cmd {
                Command::Barycenter { instance, .. }
                | Command::ChoquetVerify { instance, .. }
                | Command::Conify { instance, .. }
                | Command::Telescope { instance, .. }
                | Command::Axioms { instance }
                | Command::Sandwich { instance, .. }
                | Command::Smyth { instance, .. } => instance,
                _ => unreachable!("space commands handled above"),
            };
            Instance::from_json(&load(instance)?)?.visit(AlgebraCommand(cmd))
        }
    }
}

struct AlgebraCommand<'a>(&'a Command);

fn required<'a>(v: &'a Option<String>, name: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Parse(format!("--{name} is required for this operation")))
}

fn map_from_json<A: BarycentricAlgebra>(alg: &A, arg: &str) -> Result<BTreeMap<A::Elem, Rat>> {
    let v = load(arg)?;
    let vals = v
        .get("values")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Parse("expected {\"values\": {...}}".into()))?;
    vals.iter()
        .map(|(k, x)| {
            let r: Rat = serde_json::from_value(x.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            Ok((alg.elem_from_json(&Value::String(k.clone()))?, r))
        })
        .collect()
}

impl<'a> InstanceVisitor for AlgebraCommand<'a> {
    type Output = Result<Value>;

    fn visit<A: BarycentricAlgebra>(self, alg: &A) -> Result<Value> {
        match self.0 {
            Command::Barycenter { valuation, sub, .. } => {
                let w = weighted_from_json(alg, &load(valuation)?)?;
                let x = if *sub { barycenter_sub(alg, &w)? } else { barycenter(alg, &w)? };
                Ok(json!({"point": alg.elem_to_json(&x)}))
            }
            Command::ChoquetVerify { valuation, point, .. } => {
                let w = weighted_from_json(alg, &load(valuation)?)?;
                let x0 = alg.elem_from_json(&load(point)?)?;
                Ok(json!({"barycenter": verify_barycenter_choquet(alg, &w, &x0)?}))
            }
            Command::Axioms { .. } => {
                let sched = Schedule::standard(alg);
                let mut rep = check_axioms(alg, &sched);
                rep.merge(check_entropic(alg, &sched));
                if alg.is_pointed() {
                    rep.merge(check_pointed_laws(alg, &sched)?);
                }
                Ok(rep.to_json())
            }
            Command::Conify { op, u, v, scalar, .. } => {
                let u = conify_from_json(alg, &load(u)?)?;
                let v = || -> Result<_> { conify_from_json(alg, &load(required(v, "v")?)?) };
                match op {
                    ConifyOp::Add => Ok(json!({"result": conify_to_json(alg, &conify_add(alg, &u, &v()?))})),
                    ConifyOp::Smul => {
                        let a: Rat = required(scalar, "scalar")?.parse()?;
                        Ok(json!({"result": conify_to_json(alg, &conify_smul(&a, &u))}))
                    }
                    ConifyOp::Le => Ok(json!({"le": conify_le(alg, &u, &v()?)?})),
                    ConifyOp::Level => Ok(json!({"level": level(&u).to_string()})),
                }
            }
            Command::Telescope { alpha, op, u, v, scalar, .. } => {
                let t = Telescope::new(alg, unit(alpha)?)?;
                let u = t.from_json(&load(u)?)?;
                let v = || -> Result<_> { t.from_json(&load(required(v, "v")?)?) };
                let a = || -> Result<Rat> { required(scalar, "scalar")?.parse() };
                match op {
                    TeleOp::Canon => Ok(json!({"result": t.to_json(&u)})),
                    TeleOp::Equiv => Ok(json!({"equiv": u == v()?})),
                    TeleOp::Mix => {
                        let c = UnitRat::new(a()?).ok_or_else(|| Error::Parse("coefficient above 1".into()))?;
                        Ok(json!({"result": t.to_json(&t.mix(&u, &c, &v()?))}))
                    }
                    TeleOp::Smul => Ok(json!({"result": t.to_json(&t.smul(&a()?, &u))})),
                    TeleOp::Add => Ok(json!({"result": t.to_json(&t.add(&u, &v()?))})),
                    TeleOp::Le => Ok(json!({"le": t.le(&u, &v()?)?})),
                }
            }
            Command::Sandwich { q, p, no_validate, .. } => {
                let q = map_from_json(alg, q)?;
                let p = map_from_json(alg, p)?;
                match sandwich(alg, &q, &p, !no_validate)? {
                    SandwichOutcome::Found(h) => {
                        let values: serde_json::Map<String, Value> = h
                            .iter()
                            .map(|(x, r)| {
                                let key = match alg.elem_to_json(x) {
                                    Value::String(s) => s,
                                    other => other.to_string(),
                                };
                                (key, json!(r.to_string()))
                            })
                            .collect();
                        Ok(json!({"h": {"values": values}}))
                    }
                    SandwichOutcome::Infeasible => Ok(json!({"infeasible": true})),
                }
            }
            Command::Smyth { op, valuation, q1, q2, scalar, point, .. } => match op {
                SmythOp::Barycenter => {
                    let w = weighted_from_json(alg, &load(required(valuation, "valuation")?)?)?;
                    match smyth_barycenter(alg, &w)? {
                        SmythBarycenter::Point(x) => Ok(json!({"point": alg.elem_to_json(&x)})),
                        SmythBarycenter::NotPrincipal { set, minimal } => Ok(json!({
                            "not_principal": set.to_json(alg),
                            "minimal": minimal.iter().map(|x| alg.elem_to_json(x)).collect::<Vec<_>>(),
                        })),
                    }
                }
                SmythOp::Mix => {
                    let a = unit(required(scalar, "scalar")?)?;
                    let q1 = ConvexUpset::from_json(alg, &load(required(q1, "q1")?)?)?;
                    let q2 = ConvexUpset::from_json(alg, &load(required(q2, "q2")?)?)?;
                    Ok(json!({"result": smyth_mix(alg, &q1, &a, &q2)?.to_json(alg)}))
                }
                SmythOp::Eta => {
                    let x = alg.elem_from_json(&load(required(point, "point")?)?)?;
                    Ok(json!({"result": smyth_eta(alg, &x)?.to_json(alg)}))
                }
                SmythOp::Order => {
                    let q1 = ConvexUpset::from_json(alg, &load(required(q1, "q1")?)?)?;
                    let q2 = ConvexUpset::from_json(alg, &load(required(q2, "q2")?)?)?;
                    Ok(json!({"below": smyth_order(&q1, &q2)}))
                }
            },
            _ => unreachable!("space commands are not dispatched to instances"),
        }
    }
}
