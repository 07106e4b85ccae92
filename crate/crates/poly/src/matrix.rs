use std::collections::HashMap;

use num_integer::Integer;
use num_traits::Signed;

use crate::{Coeff, Context, PolyError, Polynomial, Result};

/// Dense matrix of polynomials sharing one context.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<C> {
    ctx: Context,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<C>>,
}

impl<C: Coeff> std::fmt::Debug for PolyMatrix<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "PolyMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<C: Coeff> PolyMatrix<C> {
    pub fn zeros(ctx: &Context, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ctx); rows * cols],
        }
    }

    pub fn from_rows(ctx: &Context, rows: Vec<Vec<Polynomial<C>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(PolyError::NotSquare {
                    rows: r,
                    cols: row.len(),
                });
            }
            for p in row {
                if p.context() != ctx {
                    return Err(PolyError::ContextMismatch);
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            ctx: ctx.clone(),
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial<C> {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial<C>) -> Result<()> {
        if p.context() != &self.ctx {
            return Err(PolyError::ContextMismatch);
        }
        self.entries[r * self.cols + c] = p;
        Ok(())
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix {
            ctx: self.ctx.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Deletes the listed rows and columns.
    pub fn minor(&self, del_rows: &[usize], del_cols: &[usize]) -> Self {
        let rows: Vec<_> = (0..self.rows).filter(|r| !del_rows.contains(r)).collect();
        let cols: Vec<_> = (0..self.cols).filter(|c| !del_cols.contains(c)).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix {
            ctx: self.ctx.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn neg(&self) -> Self {
        PolyMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Polynomial::neg).collect(),
        }
    }

    pub fn row_sum(&self, r: usize) -> Polynomial<C> {
        (0..self.cols).fold(Polynomial::zero(&self.ctx), |acc, c| &acc + self.get(r, c))
    }

    pub fn col_sum(&self, c: usize) -> Polynomial<C> {
        (0..self.rows).fold(Polynomial::zero(&self.ctx), |acc, r| &acc + self.get(r, c))
    }

    pub fn determinant(&self) -> Result<Polynomial<C>> {
        self.determinant_with_budget(None)
    }

    /// Laplace expansion along rows, memoized on the set of remaining
    /// columns. Aborts once any intermediate minor exceeds `budget` terms.
    pub fn determinant_with_budget(&self, budget: Option<usize>) -> Result<Polynomial<C>> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let k = self.rows;
        if k == 0 {
            return Ok(Polynomial::one(&self.ctx));
        }
        assert!(k <= 64, "determinant limited to 64 columns");
        let full: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let mut memo = HashMap::new();
        self.laplace(full, &mut memo, budget)
    }

    fn laplace(
        &self,
        cols: u64,
        memo: &mut HashMap<u64, Polynomial<C>>,
        budget: Option<usize>,
    ) -> Result<Polynomial<C>> {
        let size = cols.count_ones() as usize;
        if size == 0 {
            return Ok(Polynomial::one(&self.ctx));
        }
        if let Some(p) = memo.get(&cols) {
            return Ok(p.clone());
        }
        let row = self.rows - size;
        let mut acc = Polynomial::zero(&self.ctx);
        let mut position = 0;
        for c in 0..self.cols {
            if cols & (1 << c) == 0 {
                continue;
            }
            let entry = self.get(row, c);
            if !entry.is_zero() {
                let sub = self.laplace(cols & !(1 << c), memo, budget)?;
                if !sub.is_zero() {
                    let term = entry.checked_mul(&sub)?;
                    acc = if position % 2 == 0 {
                        acc.checked_add(&term)?
                    } else {
                        acc.checked_sub(&term)?
                    };
                }
            }
            position += 1;
        }
        if let Some(b) = budget {
            if acc.len() > b {
                return Err(PolyError::Budget {
                    terms: acc.len(),
                    budget: b,
                });
            }
        }
        memo.insert(cols, acc.clone());
        Ok(acc)
    }
}

impl<C: Coeff + Integer + Signed> PolyMatrix<C> {
    /// Fraction-free (Bareiss) elimination over the polynomial ring; every
    /// division is exact and checked.
    pub fn determinant_bareiss(&self) -> Result<Polynomial<C>> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one(&self.ctx));
        }
        let mut a: Vec<Vec<Polynomial<C>>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut sign_flip = false;
        let mut prev = Polynomial::one(&self.ctx);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(Polynomial::zero(&self.ctx)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(&a[k][k])?
                        .checked_sub(&a[i][k].checked_mul(&a[k][j])?)?;
                    a[i][j] = num.div_exact(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if sign_flip { det.neg() } else { det })
    }
}
