//! The τ-table: column `j` of the order-`n` table lists the factors of the
//! `j`-th product in the expansion of the order-`n` continuant.

use std::fmt;

use super::coeffs::CoefficientSet;
use super::fib::{reduce_column, FibSeq};
use crate::error::Result;
use crate::scalar::Real;

/// A symbolic table entry. Indices are unshifted (shift `m = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    Lam(usize),
    Mu(usize),
    Unit,
}

impl Cell {
    pub fn resolve<T: Real>(self, shift: i64, coeffs: &CoefficientSet<T>) -> Result<T> {
        match self {
            Cell::Lam(k) => coeffs.lam(shift + k as i64),
            Cell::Mu(k) => coeffs.mu(shift + k as i64),
            Cell::Unit => Ok(T::one()),
        }
    }

    /// Plain-ASCII label (`lam_3`, `mu_0`, `1`).
    pub fn ascii(self) -> String {
        match self {
            Cell::Lam(k) => format!("lam_{k}"),
            Cell::Mu(k) => format!("mu_{k}"),
            Cell::Unit => "1".to_string(),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Lam(k) => write!(f, "λ_{k}"),
            Cell::Mu(k) => write!(f, "μ_{k}"),
            Cell::Unit => f.write_str("1"),
        }
    }
}

/// Entry in row `i`, column `j` (both 1-based) of any table of order `>= i`
/// wide enough to contain column `j`.
pub fn tau_cell(i: usize, j: u64) -> Cell {
    let f = FibSeq::get().as_slice();
    let j = reduce_column(j, i);
    if j <= f[i - 1] {
        Cell::Lam(i - 1)
    } else if j <= f[i] {
        Cell::Mu(i - 2)
    } else {
        Cell::Unit
    }
}

/// Numeric value of τ with shift `m`.
pub fn tau<T: Real>(i: usize, j: u64, shift: i64, coeffs: &CoefficientSet<T>) -> Result<T> {
    tau_cell(i, j).resolve(shift, coeffs)
}

/// A τ-table built from the block recursion: `F_{n+1}` places `F_n` over a row
/// of `λ_n`, next to `F_{n-1}` over a row of ones and a row of `μ_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauTable {
    order: usize,
    columns: usize,
    rows: Vec<Vec<Cell>>,
}

impl TauTable {
    pub fn build(order: usize) -> Self {
        let mut prev = TauTable { order: 0, columns: 1, rows: Vec::new() };
        if order == 0 {
            return prev;
        }
        let mut cur = TauTable { order: 1, columns: 1, rows: vec![vec![Cell::Lam(0)]] };
        for n in 1..order {
            // cur = F_n, prev = F_{n-1}; assemble F_{n+1}
            let columns = cur.columns + prev.columns;
            let mut rows = Vec::with_capacity(n + 1);
            for r in 0..n {
                let mut row = cur.rows[r].clone();
                if r + 1 < n {
                    row.extend_from_slice(&prev.rows[r]);
                } else {
                    row.extend(std::iter::repeat_n(Cell::Unit, prev.columns));
                }
                rows.push(row);
            }
            let mut last = vec![Cell::Lam(n); cur.columns];
            last.extend(std::iter::repeat_n(Cell::Mu(n - 1), prev.columns));
            rows.push(last);
            prev = std::mem::replace(&mut cur, TauTable { order: n + 1, columns, rows });
        }
        cur
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    /// 1-based access; `None` outside the table.
    pub fn cell(&self, i: usize, j: usize) -> Option<Cell> {
        self.rows.get(i.checked_sub(1)?)?.get(j.checked_sub(1)?).copied()
    }

    /// Rows for display; the order-0 table is the single unit cell.
    pub fn grid(&self) -> Vec<Vec<Cell>> {
        if self.order == 0 {
            vec![vec![Cell::Unit]]
        } else {
            self.rows.clone()
        }
    }
}

impl fmt::Display for TauTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.grid() {
            let cells: Vec<String> = row.iter().map(|c| format!("{:>4}", c.to_string())).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
