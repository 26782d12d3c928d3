//! Exact feasibility of small systems of linear constraints over the rationals.
//!
//! Equalities are removed by substitution, then inequalities by
//! Fourier–Motzkin elimination. Strictness is tracked through every
//! combination, so systems mixing `<`, `≤` and `=` are decided exactly.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

/// `coeffs · x  (relation)  rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Whether `0 (relation) rhs` holds; only meaningful when trivial.
    fn holds_at_zero(&self) -> bool {
        match self.relation {
            Relation::Le => !self.rhs.is_negative(),
            Relation::Lt => self.rhs.is_positive(),
            Relation::Eq => self.rhs.is_zero(),
        }
    }

    /// Scales so the first nonzero coefficient has absolute value 1.
    fn normalized(mut self) -> Self {
        let pivot = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.abs())
            .or_else(|| (!self.rhs.is_zero()).then(|| self.rhs.abs()));
        if let Some(p) = pivot {
            for c in &mut self.coeffs {
                *c /= &p;
            }
            self.rhs /= &p;
        }
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    vars: usize,
    constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        Self {
            vars,
            constraints: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn push(&mut self, coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) {
        assert_eq!(
            coeffs.len(),
            self.vars,
            "coefficient count must match variable count"
        );
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    /// `x_i (relation) rhs`.
    pub fn push_bound(&mut self, var: usize, relation: Relation, rhs: BigRational) {
        let mut coeffs = vec![BigRational::zero(); self.vars];
        coeffs[var] = BigRational::from_integer(1.into());
        self.push(coeffs, relation, rhs);
    }

    /// `x_i ≥ 0` (or `> 0` when `strict`), written as `-x_i ≤ 0`.
    pub fn push_nonnegative(&mut self, var: usize, strict: bool) {
        let mut coeffs = vec![BigRational::zero(); self.vars];
        coeffs[var] = BigRational::from_integer((-1).into());
        let relation = if strict { Relation::Lt } else { Relation::Le };
        self.push(coeffs, relation, BigRational::zero());
    }

    pub fn is_feasible(&self) -> bool {
        let mut rows = self.constraints.clone();
        let mut live: Vec<bool> = vec![true; self.vars];

        while let Some(pos) = rows
            .iter()
            .position(|r| r.relation == Relation::Eq && !r.is_trivial())
        {
            let eq = rows.swap_remove(pos);
            let j = eq
                .coeffs
                .iter()
                .position(|c| !c.is_zero())
                .expect("nontrivial");
            live[j] = false;
            for row in &mut rows {
                substitute(row, &eq, j);
            }
        }
        let mut current: Vec<Constraint> = Vec::new();
        for row in rows {
            if row.is_trivial() {
                if !row.holds_at_zero() {
                    return false;
                }
            } else {
                current.push(row.normalized());
            }
        }

        for j in (0..self.vars).filter(|&j| live[j]) {
            let mut upper = Vec::new();
            let mut lower = Vec::new();
            let mut rest = HashSet::new();
            for row in current.drain(..) {
                if row.coeffs[j].is_positive() {
                    upper.push(row);
                } else if row.coeffs[j].is_negative() {
                    lower.push(row);
                } else {
                    rest.insert(row);
                }
            }
            for p in &upper {
                for q in &lower {
                    let a = p.coeffs[j].clone();
                    let b = -q.coeffs[j].clone();
                    let coeffs = p
                        .coeffs
                        .iter()
                        .zip(&q.coeffs)
                        .map(|(x, y)| x * &b + y * &a)
                        .collect();
                    let relation = if p.relation == Relation::Lt || q.relation == Relation::Lt {
                        Relation::Lt
                    } else {
                        Relation::Le
                    };
                    let combined = Constraint {
                        coeffs,
                        relation,
                        rhs: &p.rhs * &b + &q.rhs * &a,
                    };
                    if combined.is_trivial() {
                        if !combined.holds_at_zero() {
                            return false;
                        }
                    } else {
                        rest.insert(combined.normalized());
                    }
                }
            }
            current = rest.into_iter().collect();
        }
        current.iter().all(Constraint::holds_at_zero)
    }
}

/// Eliminates `x_j` from `row` using the equality `eq`.
fn substitute(row: &mut Constraint, eq: &Constraint, j: usize) {
    if row.coeffs[j].is_zero() {
        return;
    }
    let factor = &row.coeffs[j] / &eq.coeffs[j];
    for (c, e) in row.coeffs.iter_mut().zip(&eq.coeffs) {
        *c -= &factor * e;
    }
    row.rhs -= &factor * &eq.rhs;
}
