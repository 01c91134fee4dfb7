//! Exact finite models of continuous valuations, barycentric algebras and
//! their free cones.

pub mod baryalg;
pub mod cli;
pub mod convex;
pub mod error;
pub mod exactnum;
pub mod finspace;
pub mod free;
pub mod lp;
pub mod smyth;
pub mod valuation;

pub use error::{Error, Result};
pub use exactnum::{Rat, UnitRat, XRat, Q};
pub use finspace::{FinPoset, OpenSet, PointSet};
