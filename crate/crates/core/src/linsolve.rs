//! Fraction-free Gauss–Jordan elimination over Laurent polynomials in `c`.
//!
//! Rows are combined as `a'·r_i − b'·r_p` with `a', b'` the cofactors of
//! `gcd(a, b)`, and every row is divided by the gcd of its entries, so the
//! intermediate entries stay small and never leave the Laurent ring.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::scalar::Field;

/// Reduced row-echelon data of a matrix over `Laurent<F>`.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    rows: Vec<Vec<Laurent<F>>>,
    /// `(row, column)` of each pivot, by increasing column.
    pivots: Vec<(usize, usize)>,
    cols: usize,
}

impl<F: Field> Echelon<F> {
    /// Reduces `rows`, pivoting only in the first `pivot_cols` columns (the
    /// remaining columns ride along, e.g. a right-hand side).
    pub fn new(mut rows: Vec<Vec<Laurent<F>>>, pivot_cols: usize) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..pivot_cols.min(cols) {
            let candidate = (rank..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by_key(|&r| (rows[r][col].len(), r));
            let Some(p) = candidate else { continue };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            let a = pivot_row[col].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == rank || row[col].is_zero() {
                    continue;
                }
                let b = row[col].clone();
                let g = a.gcd(&b);
                let a_co = a.div_exact(&g).expect("gcd divides");
                let b_co = b.div_exact(&g).expect("gcd divides");
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &(&a_co * &*x) - &(&b_co * y);
                }
                debug_assert!(row[col].is_zero());
                remove_content(row);
            }
            pivots.push((rank, col));
            rank += 1;
        }
        Echelon { rows, pivots, cols }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[(usize, usize)] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Laurent<F>>] {
        &self.rows
    }

    /// Basis of `{x : A x = 0}` restricted to the pivoting columns, each
    /// vector scaled to be content-free.
    pub fn nullspace(&self, pivot_cols: usize) -> Vec<Vec<Laurent<F>>> {
        let pivot_of: Vec<Option<usize>> = (0..pivot_cols)
            .map(|c| self.pivots.iter().find(|p| p.1 == c).map(|p| p.0))
            .collect();
        let mut basis = Vec::new();
        for free in (0..pivot_cols).filter(|&c| pivot_of[c].is_none()) {
            let mut scale = Laurent::one();
            for &(r, c) in &self.pivots {
                if !self.rows[r][free].is_zero() {
                    scale = lcm(&scale, &self.rows[r][c]);
                }
            }
            let mut v = vec![Laurent::zero(); pivot_cols];
            v[free] = scale.clone();
            for &(r, c) in &self.pivots {
                let entry = &self.rows[r][free];
                if entry.is_zero() {
                    continue;
                }
                let factor = scale.div_exact(&self.rows[r][c]).expect("lcm is a multiple");
                v[c] = -(&factor * entry);
            }
            remove_content(&mut v);
            basis.push(v);
        }
        basis
    }
}

/// Unique solution of `A x = b`; columns of `a` are the unknowns.
pub fn solve_unique<F: Field>(a: &[Vec<Laurent<F>>], b: &[Laurent<F>]) -> Result<Vec<Laurent<F>>> {
    let n = a.first().map_or(0, |r| r.len());
    let rows: Vec<Vec<Laurent<F>>> = a
        .iter()
        .zip(b)
        .map(|(r, rhs)| {
            let mut row = r.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    let ech = Echelon::new(rows, n);
    if ech
        .rows
        .iter()
        .any(|r| r[..n].iter().all(Zero::is_zero) && !r[n].is_zero())
    {
        return Err(Error::NoSolution);
    }
    if ech.rank() < n {
        return Err(Error::NonUniqueSolution(n - ech.rank()));
    }
    let mut x = vec![Laurent::zero(); n];
    for &(r, c) in &ech.pivots {
        let row = &ech.rows[r];
        x[c] = row[n]
            .div_exact(&row[c])
            .ok_or_else(|| Error::NonLaurentSolution(format!("({}) / ({})", row[n], row[c])))?;
    }
    Ok(x)
}

fn lcm<F: Field>(a: &Laurent<F>, b: &Laurent<F>) -> Laurent<F> {
    let g = a.gcd(b);
    (a * b).div_exact(&g).expect("gcd divides")
}

/// Divides a vector by the gcd of its entries.
fn remove_content<F: Field>(v: &mut [Laurent<F>]) {
    let mut g = Laurent::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = x.div_exact(&g).expect("content divides");
    }
}
