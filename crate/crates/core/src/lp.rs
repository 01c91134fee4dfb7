//! Exact rational linear programming.
//!
//! A dense two-phase simplex over [`Q`] with Bland's rule. Pivoting is fully
//! deterministic, so repeated solves of the same system return the same
//! vertex. Sizes here are desk scale (tens of variables); nothing is sparse.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{fmt_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub rel: Relation,
    pub rhs: Q,
}

/// A system of linear constraints over named rational variables.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    names: Vec<String>,
    nonneg: Vec<bool>,
    constraints: Vec<Constraint>,
    objective: Option<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    Solution(Vec<Q>),
    Infeasible,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Q, point: Vec<Q> },
    /// `point + t·ray` stays feasible for every `t >= 0` and the objective
    /// improves strictly along `ray`.
    Unbounded { point: Vec<Q>, ray: Vec<Q> },
    Infeasible,
}

impl LinearSystem {
    pub fn new() -> LinearSystem {
        LinearSystem::default()
    }

    /// Adds a variable and returns its index.
    pub fn add_var(&mut self, name: impl Into<String>, nonneg: bool) -> usize {
        self.names.push(name.into());
        self.nonneg.push(nonneg);
        for c in &mut self.constraints {
            c.coeffs.push(Q::zero());
        }
        if let Some(obj) = &mut self.objective {
            obj.push(Q::zero());
        }
        self.names.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Adds `Σ coeff·var  rel  rhs` from sparse terms. Repeated variables
    /// accumulate.
    pub fn add_constraint(&mut self, terms: &[(usize, Q)], rel: Relation, rhs: Q) -> Result<()> {
        let row = self.dense(terms)?;
        self.constraints.push(Constraint { coeffs: row, rel, rhs });
        Ok(())
    }

    pub fn add_dense_constraint(&mut self, coeffs: Vec<Q>, rel: Relation, rhs: Q) -> Result<()> {
        if coeffs.len() != self.num_vars() {
            return Err(Error::Malformed(format!(
                "row has {} coefficients for {} variables",
                coeffs.len(),
                self.num_vars()
            )));
        }
        self.constraints.push(Constraint { coeffs, rel, rhs });
        Ok(())
    }

    pub fn set_objective(&mut self, terms: &[(usize, Q)]) -> Result<()> {
        self.objective = Some(self.dense(terms)?);
        Ok(())
    }

    fn dense(&self, terms: &[(usize, Q)]) -> Result<Vec<Q>> {
        let mut row = vec![Q::zero(); self.num_vars()];
        for (j, c) in terms {
            if *j >= row.len() {
                return Err(Error::Malformed(format!("unknown variable #{j}")));
            }
            row[*j] += c;
        }
        Ok(row)
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.nonneg.len() != n {
            return Err(Error::Malformed("nonnegativity flags out of sync".into()));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::Malformed(format!("constraint {i} has wrong width")));
            }
        }
        if let Some(obj) = &self.objective {
            if obj.len() != n {
                return Err(Error::Malformed("objective has wrong width".into()));
            }
        }
        Ok(())
    }

    /// True iff `point` satisfies every constraint and sign restriction
    /// exactly.
    pub fn satisfied_by(&self, point: &[Q]) -> bool {
        if point.len() != self.num_vars() {
            return false;
        }
        if self.nonneg.iter().zip(point).any(|(&nn, v)| nn && v.is_negative()) {
            return false;
        }
        self.constraints.iter().all(|c| {
            let lhs = dot(&c.coeffs, point);
            match c.rel {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            }
        })
    }

    pub fn objective_value(&self, point: &[Q]) -> Option<Q> {
        self.objective.as_ref().map(|o| dot(o, point))
    }

    pub fn feasible(&self) -> Result<Feasibility> {
        self.validate()?;
        let mut st = StandardForm::build(self, None);
        match st.phase_one(&mut None) {
            None => Ok(Feasibility::Infeasible),
            Some(()) => {
                let x = st.extract(self);
                debug_assert!(self.satisfied_by(&x));
                Ok(Feasibility::Solution(x))
            }
        }
    }

    pub fn optimize(&self, sense: Sense) -> Result<LpOutcome> {
        self.solve(sense, &mut None)
    }

    /// Like [`optimize`](Self::optimize), also returning a text dump of the
    /// tableau after every pivot.
    pub fn optimize_traced(&self, sense: Sense) -> Result<(LpOutcome, Vec<String>)> {
        let mut trace = Some(Vec::new());
        let out = self.solve(sense, &mut trace)?;
        Ok((out, trace.unwrap_or_default()))
    }

    fn solve(&self, sense: Sense, trace: &mut Option<Vec<String>>) -> Result<LpOutcome> {
        self.validate()?;
        let obj = self
            .objective
            .as_ref()
            .ok_or_else(|| Error::Malformed("optimize needs an objective".into()))?;
        // internally we minimise
        let cost: Vec<Q> = match sense {
            Sense::Min => obj.clone(),
            Sense::Max => obj.iter().map(|c| -c).collect(),
        };
        let mut st = StandardForm::build(self, Some(&cost));
        if st.phase_one(trace).is_none() {
            return Ok(LpOutcome::Infeasible);
        }
        match st.phase_two(trace) {
            PhaseTwo::Optimal => {
                let x = st.extract(self);
                debug_assert!(self.satisfied_by(&x));
                let value = dot(obj, &x);
                Ok(LpOutcome::Optimal { value, point: x })
            }
            PhaseTwo::Unbounded(col) => {
                let x = st.extract(self);
                let ray = st.ray(self, col);
                Ok(LpOutcome::Unbounded { point: x, ray })
            }
        }
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |coeffs: &[Q]| -> String {
            let parts: Vec<String> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| format!("{}*{}", fmt_q(c), self.names[j]))
                .collect();
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        };
        if let Some(o) = &self.objective {
            writeln!(f, "objective: {}", term(o))?;
        }
        for c in &self.constraints {
            writeln!(f, "  {} {} {}", term(&c.coeffs), c.rel, fmt_q(&c.rhs))?;
        }
        let nn: Vec<&str> = self
            .names
            .iter()
            .zip(&self.nonneg)
            .filter(|(_, &b)| b)
            .map(|(n, _)| n.as_str())
            .collect();
        if !nn.is_empty() {
            writeln!(f, "  nonneg: {}", nn.join(", "))?;
        }
        Ok(())
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

enum PhaseTwo {
    Optimal,
    Unbounded(usize),
}

/// `A x = b, x >= 0, b >= 0` together with a simplex tableau.
struct StandardForm {
    // column layout: [original parts | slacks | artificials]
    // original variable i maps to column pos[i] (and neg[i] when free)
    pos: Vec<usize>,
    neg: Vec<Option<usize>>,
    n_struct: usize,
    n_art: usize,
    rows: Vec<Vec<Q>>, // each row: ncols coefficients followed by rhs
    basis: Vec<usize>,
    cost: Option<Vec<Q>>, // phase-two cost over structural+slack columns
}

impl StandardForm {
    fn build(sys: &LinearSystem, cost: Option<&Vec<Q>>) -> StandardForm {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut col = 0;
        for &nn in &sys.nonneg {
            pos.push(col);
            col += 1;
            if nn {
                neg.push(None);
            } else {
                neg.push(Some(col));
                col += 1;
            }
        }
        let n_orig_cols = col;
        let n_slack = sys.constraints.iter().filter(|c| c.rel != Relation::Eq).count();
        let n_struct = n_orig_cols + n_slack;
        let m = sys.constraints.len();
        // Every row gets an artificial; simple and exact.
        let n_art = m;
        let ncols = n_struct + n_art;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = n_orig_cols;
        for (i, c) in sys.constraints.iter().enumerate() {
            let mut row = vec![Q::zero(); ncols + 1];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[pos[j]] = a.clone();
                if let Some(nj) = neg[j] {
                    row[nj] = -a;
                }
            }
            match c.rel {
                Relation::Le => {
                    row[slack] = Q::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Q::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[ncols] = c.rhs.clone();
            if row[ncols].is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
            }
            row[n_struct + i] = Q::one();
            rows.push(row);
            basis.push(n_struct + i);
        }
        let cost = cost.map(|c| {
            let mut full = vec![Q::zero(); n_struct];
            for (j, v) in c.iter().enumerate() {
                full[pos[j]] = v.clone();
                if let Some(nj) = neg[j] {
                    full[nj] = -v;
                }
            }
            full
        });
        StandardForm { pos, neg, n_struct, n_art, rows, basis, cost }
    }

    fn ncols(&self) -> usize {
        self.n_struct + self.n_art
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let ncols = self.ncols();
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in 0..=ncols {
                if !prow[j].is_zero() {
                    let d = &factor * &prow[j];
                    row[j] -= d;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs `c_j - c_B B⁻¹ A_j` for the given cost over `allowed`
    /// columns.
    fn reduced_costs(&self, cost: &[Q], allowed: usize) -> Vec<Q> {
        (0..allowed)
            .map(|j| {
                let mut r = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    let b = self.basis[i];
                    if !cost[b].is_zero() && !row[j].is_zero() {
                        r -= &cost[b] * &row[j];
                    }
                }
                r
            })
            .collect()
    }

    /// Minimises `cost` with Bland's rule, pivoting only on columns below
    /// `allowed`. Returns the entering column when unbounded.
    fn run(&mut self, cost: &[Q], allowed: usize, trace: &mut Option<Vec<String>>) -> Option<usize> {
        let rhs = self.ncols();
        loop {
            if let Some(t) = trace.as_mut() {
                t.push(self.dump());
            }
            let red = self.reduced_costs(cost, allowed);
            let entering = (0..allowed).find(|&j| red[j].is_negative())?;
            let mut leave: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[entering].is_positive() {
                    let ratio = &row[rhs] / &row[entering];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                None => return Some(entering),
                Some((r, _)) => self.pivot(r, entering),
            }
        }
    }

    /// Drives the artificial variables to zero; `None` when infeasible.
    fn phase_one(&mut self, trace: &mut Option<Vec<String>>) -> Option<()> {
        let ncols = self.ncols();
        let mut cost = vec![Q::zero(); ncols];
        for c in cost.iter_mut().skip(self.n_struct) {
            *c = Q::one();
        }
        let unbounded = self.run(&cost, ncols, trace);
        debug_assert!(unbounded.is_none(), "phase one is bounded below by zero");
        let infeas: Q = self
            .rows
            .iter()
            .zip(&self.basis)
            .filter(|(_, &b)| b >= self.n_struct)
            .map(|(row, _)| row[ncols].clone())
            .fold(Q::zero(), |a, b| a + b);
        if infeas.is_positive() {
            return None;
        }
        // Pivot remaining (zero-valued) artificials out, dropping redundant rows.
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.n_struct {
                match (0..self.n_struct).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => {
                        self.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        Some(())
    }

    fn phase_two(&mut self, trace: &mut Option<Vec<String>>) -> PhaseTwo {
        let mut cost = self.cost.clone().expect("phase two needs a cost");
        cost.resize(self.ncols(), Q::zero());
        match self.run(&cost, self.n_struct, trace) {
            None => PhaseTwo::Optimal,
            Some(c) => PhaseTwo::Unbounded(c),
        }
    }

    fn column_values(&self) -> Vec<Q> {
        let rhs = self.ncols();
        let mut vals = vec![Q::zero(); self.ncols()];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            vals[b] = row[rhs].clone();
        }
        vals
    }

    fn to_original(&self, vals: &[Q], sys: &LinearSystem) -> Vec<Q> {
        (0..sys.num_vars())
            .map(|i| {
                let mut v = vals[self.pos[i]].clone();
                if let Some(nj) = self.neg[i] {
                    v -= &vals[nj];
                }
                v
            })
            .collect()
    }

    fn extract(&self, sys: &LinearSystem) -> Vec<Q> {
        self.to_original(&self.column_values(), sys)
    }

    fn ray(&self, sys: &LinearSystem, entering: usize) -> Vec<Q> {
        let mut d = vec![Q::zero(); self.ncols()];
        d[entering] = Q::one();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            d[b] = -row[entering].clone();
        }
        self.to_original(&d, sys)
    }

    fn dump(&self) -> String {
        let mut s = String::new();
        for (row, b) in self.rows.iter().zip(&self.basis) {
            let cells: Vec<String> = row.iter().map(fmt_q).collect();
            s.push_str(&format!("x{b:<3}| {}\n", cells.join(" ")));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    #[test]
    fn single_equality() {
        let mut s = LinearSystem::new();
        let x = s.add_var("x", false);
        s.add_constraint(&[(x, q(1, 1))], Relation::Eq, q(1, 1)).unwrap();
        assert_eq!(s.feasible().unwrap(), Feasibility::Solution(vec![q(1, 1)]));
    }

    #[test]
    fn contradictory_bounds() {
        let mut s = LinearSystem::new();
        let x = s.add_var("x", false);
        s.add_constraint(&[(x, q(1, 1))], Relation::Ge, q(1, 1)).unwrap();
        s.add_constraint(&[(x, q(1, 1))], Relation::Le, q(0, 1)).unwrap();
        assert_eq!(s.feasible().unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn max_bounded_and_unbounded() {
        let mut s = LinearSystem::new();
        let x = s.add_var("x", false);
        s.add_constraint(&[(x, q(1, 1))], Relation::Le, q(3, 1)).unwrap();
        s.set_objective(&[(x, q(1, 1))]).unwrap();
        match s.optimize(Sense::Max).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(3, 1)),
            o => panic!("{o:?}"),
        }

        let mut s = LinearSystem::new();
        let x = s.add_var("x", false);
        s.add_constraint(&[(x, q(1, 1))], Relation::Ge, q(0, 1)).unwrap();
        s.set_objective(&[(x, q(1, 1))]).unwrap();
        match s.optimize(Sense::Max).unwrap() {
            LpOutcome::Unbounded { point, ray } => {
                assert!(s.satisfied_by(&point));
                assert!(ray[0].is_positive());
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn transport_min_total() {
        // rows fixed to masses 1/2 and 1/3, columns bounded by 1
        let mut s = LinearSystem::new();
        let v: Vec<usize> = (0..4).map(|i| s.add_var(format!("t{i}"), true)).collect();
        s.add_constraint(&[(v[0], q(1, 1)), (v[1], q(1, 1))], Relation::Eq, q(1, 2)).unwrap();
        s.add_constraint(&[(v[2], q(1, 1)), (v[3], q(1, 1))], Relation::Eq, q(1, 3)).unwrap();
        s.add_constraint(&[(v[0], q(1, 1)), (v[2], q(1, 1))], Relation::Le, q(1, 1)).unwrap();
        s.add_constraint(&[(v[1], q(1, 1)), (v[3], q(1, 1))], Relation::Le, q(1, 1)).unwrap();
        let all: Vec<(usize, Q)> = v.iter().map(|&i| (i, q(1, 1))).collect();
        s.set_objective(&all).unwrap();
        match s.optimize(Sense::Min).unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, q(5, 6));
                assert!(s.satisfied_by(&point));
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn missing_objective_is_malformed() {
        let mut s = LinearSystem::new();
        s.add_var("x", true);
        assert!(matches!(s.optimize(Sense::Max), Err(Error::Malformed(_))));
        assert!(s.add_constraint(&[(5, q(1, 1))], Relation::Le, q(0, 1)).is_err());
    }

    #[test]
    fn redundant_equalities() {
        let mut s = LinearSystem::new();
        let x = s.add_var("x", true);
        let y = s.add_var("y", true);
        s.add_constraint(&[(x, q(1, 1)), (y, q(1, 1))], Relation::Eq, q(1, 1)).unwrap();
        s.add_constraint(&[(x, q(2, 1)), (y, q(2, 1))], Relation::Eq, q(2, 1)).unwrap();
        s.set_objective(&[(x, q(1, 1))]).unwrap();
        match s.optimize(Sense::Max).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1, 1)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn trace_is_deterministic() {
        let mut s = LinearSystem::new();
        let x = s.add_var("x", true);
        let y = s.add_var("y", true);
        s.add_constraint(&[(x, q(1, 1)), (y, q(2, 1))], Relation::Le, q(4, 1)).unwrap();
        s.add_constraint(&[(x, q(3, 1)), (y, q(1, 1))], Relation::Le, q(6, 1)).unwrap();
        s.set_objective(&[(x, q(1, 1)), (y, q(1, 1))]).unwrap();
        let (a, ta) = s.optimize_traced(Sense::Max).unwrap();
        let (b, tb) = s.optimize_traced(Sense::Max).unwrap();
        assert_eq!(a, b);
        assert_eq!(ta, tb);
        assert!(!ta.is_empty());
        match a {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(14, 5)),
            o => panic!("{o:?}"),
        }
    }
}
