//! Exact linear programming over the rationals.
//!
//! Minimization problems with nonnegative variables are solved by a dense
//! two-phase tableau simplex. Pivoting follows Bland's rule (lowest eligible
//! index enters, ratio ties broken by lowest basis index), which guarantees
//! termination and makes every returned vertex reproducible. Integral
//! problems go through depth-first branch and bound with LP bounding,
//! branching on the lowest-index fractional variable with the "round down"
//! child explored first.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::rational::Rat;
use crate::{Error, Result};

/// Constraint sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

/// A single linear constraint `sum coeffs . x  cmp  rhs` with sparse
/// coefficients.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rat)>,
    pub cmp: Cmp,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<(usize, Rat)>, cmp: Cmp, rhs: Rat) -> Self {
        Self { coeffs, cmp, rhs }
    }
}

/// `minimize objective . x  subject to  constraints, x >= 0`.
#[derive(Debug, Clone)]
pub struct Lp {
    pub num_vars: usize,
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
}

/// Exact optimum and the vertex attaining it.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: Rat,
    pub x: Vec<Rat>,
}

/// Default branch-and-bound node budget.
pub const NODE_BUDGET: u64 = 200_000;

struct Tableau {
    ncols: usize,
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    obj: Vec<Rat>,
    value: Rat,
    basis: Vec<usize>,
}

impl Tableau {
    fn set_objective(&mut self, costs: &[Rat]) {
        self.obj = costs.to_vec();
        self.obj.resize(self.ncols, Rat::zero());
        self.value = Rat::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            if !self.obj[b].is_zero() {
                let cb = costs.get(b).cloned().unwrap_or_else(Rat::zero);
                for j in 0..self.ncols {
                    if !self.rows[i][j].is_zero() {
                        let delta = &cb * &self.rows[i][j];
                        self.obj[j] -= delta;
                    }
                }
                self.value += &cb * &self.rhs[i];
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        debug_assert!(!p.is_zero());
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..self.ncols {
                if !self.rows[r][j].is_zero() {
                    let delta = &f * &self.rows[r][j];
                    self.rows[i][j] -= delta;
                }
            }
            let delta = &f * &self.rhs[r];
            self.rhs[i] -= delta;
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for j in 0..self.ncols {
                if !self.rows[r][j].is_zero() {
                    let delta = &f * &self.rows[r][j];
                    self.obj[j] -= delta;
                }
            }
            self.value += &f * &self.rhs[r];
        }
        self.basis[r] = c;
    }

    /// Runs Bland-pivoting to optimality of the current objective.
    fn optimize(&mut self) -> Result<()> {
        loop {
            let Some(c) = (0..self.ncols).find(|&j| self.obj[j].is_negative()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][c];
                    let better = match &leave {
                        None => true,
                        Some((li, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Err(Error::Unbounded),
            }
        }
    }
}

/// Solves the LP exactly. Variables are implicitly nonnegative.
pub fn solve_lp(lp: &Lp) -> Result<LpSolution> {
    let n = lp.num_vars;
    let m = lp.constraints.len();
    debug_assert_eq!(lp.objective.len(), n);

    // Normalize rows to nonnegative right-hand sides, then lay out columns as
    // [structural | slack/surplus | artificial].
    let mut dense: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    let mut cmps: Vec<Cmp> = Vec::with_capacity(m);
    for con in &lp.constraints {
        let mut row = vec![Rat::zero(); n];
        for (j, v) in &con.coeffs {
            debug_assert!(*j < n);
            row[*j] += v;
        }
        let mut b = con.rhs.clone();
        let mut cmp = con.cmp;
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            b = -b;
            cmp = match cmp {
                Cmp::Le => Cmp::Ge,
                Cmp::Ge => Cmp::Le,
                Cmp::Eq => Cmp::Eq,
            };
        }
        dense.push(row);
        rhs.push(b);
        cmps.push(cmp);
    }

    let num_slack = cmps.iter().filter(|c| **c != Cmp::Eq).count();
    let num_art = cmps.iter().filter(|c| **c != Cmp::Le).count();
    let art_start = n + num_slack;
    let ncols = art_start + num_art;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_slack = n;
    let mut next_art = art_start;
    for (i, mut row) in dense.into_iter().enumerate() {
        row.resize(ncols, Rat::zero());
        match cmps[i] {
            Cmp::Le => {
                row[next_slack] = Rat::one();
                basis.push(next_slack);
                next_slack += 1;
            }
            Cmp::Ge => {
                row[next_slack] = -Rat::one();
                next_slack += 1;
                row[next_art] = Rat::one();
                basis.push(next_art);
                next_art += 1;
            }
            Cmp::Eq => {
                row[next_art] = Rat::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
        rows.push(row);
    }

    let mut t = Tableau {
        ncols,
        rows,
        rhs,
        obj: Vec::new(),
        value: Rat::zero(),
        basis,
    };

    if num_art > 0 {
        let mut phase1 = vec![Rat::zero(); ncols];
        for c in phase1.iter_mut().skip(art_start) {
            *c = Rat::one();
        }
        t.set_objective(&phase1);
        t.optimize()?;
        if t.value.is_positive() {
            return Err(Error::Infeasible);
        }
        // Drive remaining artificials out of the basis; rows that cannot be
        // pivoted are redundant and get dropped.
        let mut drop_rows = Vec::new();
        for i in 0..t.rows.len() {
            if t.basis[i] < art_start {
                continue;
            }
            match (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => drop_rows.push(i),
            }
        }
        for &i in drop_rows.iter().rev() {
            t.rows.remove(i);
            t.rhs.remove(i);
            t.basis.remove(i);
        }
        for row in t.rows.iter_mut() {
            row.truncate(art_start);
        }
        t.ncols = art_start;
    }

    t.set_objective(&lp.objective);
    t.optimize()?;

    let mut x = vec![Rat::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs[i].clone();
        }
    }
    Ok(LpSolution { value: t.value, x })
}

/// Solves the LP with the variables flagged in `integer` restricted to
/// integral values.
pub fn solve_ilp(lp: &Lp, integer: &[bool], node_budget: u64) -> Result<LpSolution> {
    debug_assert_eq!(integer.len(), lp.num_vars);
    type Bounds = Vec<(usize, Cmp, BigInt)>;
    let solve_node = |bounds: &Bounds| -> Result<LpSolution> {
        let mut node = lp.clone();
        for (var, cmp, val) in bounds {
            node.constraints.push(Constraint::new(
                vec![(*var, Rat::one())],
                *cmp,
                Rat::from_integer(val.clone()),
            ));
        }
        solve_lp(&node)
    };

    let mut incumbent: Option<LpSolution> = None;
    let mut stack: Vec<Bounds> = vec![Vec::new()];
    let mut nodes = 0u64;
    while let Some(bounds) = stack.pop() {
        nodes += 1;
        if nodes > node_budget {
            return Err(Error::NodeBudget(node_budget));
        }
        let sol = match solve_node(&bounds) {
            Ok(s) => s,
            Err(Error::Infeasible) => continue,
            Err(e) => return Err(e),
        };
        if let Some(best) = &incumbent {
            if sol.value >= best.value {
                continue;
            }
        }
        match (0..lp.num_vars).find(|&j| integer[j] && !sol.x[j].is_integer()) {
            None => incumbent = Some(sol),
            Some(j) => {
                let fl = sol.x[j].floor().to_integer();
                let mut up = bounds.clone();
                up.push((j, Cmp::Ge, &fl + BigInt::one()));
                let mut down = bounds;
                down.push((j, Cmp::Le, fl));
                stack.push(up);
                stack.push(down);
            }
        }
    }
    incumbent.ok_or(Error::Infeasible)
}
