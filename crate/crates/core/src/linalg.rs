//! Exact dense linear algebra over [`Field`].
//!
//! Over `F_p` the work happens on raw `u64` residues with plain Gauss-Jordan
//! elimination. Over `Q` rows are cleared of denominators and reduced with
//! fraction-free (Bareiss) forward elimination; only the final
//! back-substitution touches rationals. Pivots are always the first nonzero
//! entry in column order, so results are reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_entries(field: Field, rows: usize, cols: usize, entries: Vec<FieldElem>) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entries length");
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn from_i64_rows(field: Field, data: &[&[i64]]) -> Matrix {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let entries = data
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&v| field.from_i64(v))
            })
            .collect();
        Matrix::from_entries(field, rows, cols, entries)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<FieldElem>]) -> Matrix {
        let cols = columns.len();
        let mut m = Matrix::zeros(field, rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElem) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// Appends `b` as an extra column.
    pub fn augment(&self, b: &[FieldElem]) -> Result<Matrix> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for (i, bi) in b.iter().enumerate() {
            entries.extend_from_slice(self.row(i));
            entries.push(bi.clone());
        }
        Ok(Matrix::from_entries(self.field, self.rows, self.cols + 1, entries))
    }

    fn residues(&self) -> Vec<u64> {
        self.entries
            .iter()
            .map(|x| x.residue().expect("prime field entry"))
            .collect()
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let (mut base, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// In-place elimination over `F_p`. With `full` the result is reduced
/// row-echelon form, otherwise only a (normalized) echelon form.
fn eliminate_mod(a: &mut [u64], rows: usize, cols: usize, p: u64, full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in c..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p);
        for j in c..cols {
            a[r * cols + j] = a[r * cols + j] * inv % p;
        }
        let (head, tail) = a.split_at_mut(r * cols);
        let (pivot_row, below) = tail.split_at_mut(cols);
        let targets = below
            .chunks_exact_mut(cols)
            .chain(if full { head.chunks_exact_mut(cols) } else { head[..0].chunks_exact_mut(cols) });
        for row in targets {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for j in c..cols {
                let x = pivot_row[j];
                if x != 0 {
                    row[j] = (row[j] + nf * x) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Integer rows with denominators cleared.
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| {
                acc.lcm(x.as_rational().expect("rational entry").denom())
            });
            row.iter()
                .map(|x| {
                    let q = x.as_rational().unwrap();
                    q.numer() * (&lcm / q.denom())
                })
                .collect()
        })
        .collect()
}

/// Bareiss forward elimination. Returns the echelon rows (integers) and the
/// pivot columns.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(pr, r);
        let piv = a[r][c].clone();
        for i in r + 1..rows {
            let lead = a[i][c].clone();
            for j in c + 1..cols {
                let num = &piv * &a[i][j] - &lead * &a[r][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        // rows above r keep their entries; they are only used as-is
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r.max(pivots.len()));
    (a, pivots)
}

fn rref_rational(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (ech, pivots) = bareiss(integer_rows(m), m.cols);
    let mut rows: Vec<Vec<BigRational>> = ech
        .into_iter()
        .take(pivots.len())
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for (i, &c) in pivots.iter().enumerate() {
        let inv = rows[i][c].recip();
        for x in rows[i].iter_mut() {
            *x = &*x * &inv;
        }
    }
    for (i, &c) in pivots.iter().enumerate().rev() {
        for k in 0..i {
            let f = rows[k][c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..m.cols {
                let delta = &f * &rows[i][j];
                rows[k][j] -= delta;
            }
        }
    }
    let mut out = Matrix::zeros(Field::Rational, m.rows, m.cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            out.set(i, j, FieldElem::Rational(x));
        }
    }
    (out, pivots)
}

/// Reduced row-echelon form and strictly increasing pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    match m.field {
        Field::Prime(p) => {
            let mut a = m.residues();
            let pivots = eliminate_mod(&mut a, m.rows, m.cols, p, true);
            let entries = a
                .into_iter()
                .map(|v| FieldElem::Modular { value: v, modulus: p })
                .collect();
            (Matrix::from_entries(m.field, m.rows, m.cols, entries), pivots)
        }
        Field::Rational => rref_rational(m),
    }
}

pub fn rank(m: &Matrix) -> usize {
    match m.field {
        Field::Prime(p) => {
            let mut a = m.residues();
            eliminate_mod(&mut a, m.rows, m.cols, p, false).len()
        }
        Field::Rational => bareiss(integer_rows(m), m.cols).1.len(),
    }
}

/// Basis of the right kernel, one vector per free column.
pub fn nullspace(m: &Matrix) -> Vec<Vec<FieldElem>> {
    let (r, pivots) = rref(m);
    let field = m.field;
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); m.cols];
            v[f] = field.one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -r.get(i, f);
            }
            v
        })
        .collect()
}

/// One particular solution of `m x = b` (free variables set to zero), or
/// `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[FieldElem]) -> Result<Option<Vec<FieldElem>>> {
    let aug = m.augment(b)?;
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![m.field.zero(); m.cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = r.get(i, m.cols).clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> [Field; 2] {
        [Field::Rational, Field::Prime(101)]
    }

    #[test]
    fn rref_examples() {
        for f in fields() {
            let id = Matrix::identity(f, 3);
            assert_eq!(rref(&id), (id.clone(), vec![0, 1, 2]));
            let z = Matrix::zeros(f, 2, 3);
            assert_eq!(rref(&z), (z.clone(), vec![]));
            let m = Matrix::from_i64_rows(f, &[&[1, 2], &[2, 4]]);
            let expect = Matrix::from_i64_rows(f, &[&[1, 2], &[0, 0]]);
            assert_eq!(rref(&m), (expect, vec![0]));
        }
    }

    #[test]
    fn rank_examples() {
        for f in fields() {
            assert_eq!(rank(&Matrix::identity(f, 4)), 4);
            assert_eq!(rank(&Matrix::zeros(f, 3, 3)), 0);
            assert_eq!(rank(&Matrix::from_i64_rows(f, &[&[1, 1], &[1, 1], &[0, 1]])), 2);
        }
    }

    #[test]
    fn nullspace_examples() {
        for f in fields() {
            assert!(nullspace(&Matrix::identity(f, 3)).is_empty());
            let ns = nullspace(&Matrix::from_i64_rows(f, &[&[1, 1]]));
            assert_eq!(ns, vec![vec![f.from_i64(-1), f.one()]]);
            assert_eq!(nullspace(&Matrix::zeros(f, 2, 3)).len(), 3);
        }
    }

    #[test]
    fn solve_examples() {
        for f in fields() {
            let b = vec![f.from_i64(3), f.from_i64(-2), f.from_i64(7)];
            assert_eq!(solve(&Matrix::identity(f, 3), &b).unwrap(), Some(b.clone()));

            let m = Matrix::from_i64_rows(f, &[&[1, 1]]);
            let x = solve(&m, &[f.from_i64(2)]).unwrap().unwrap();
            assert_eq!(m.mul_vec(&x).unwrap(), vec![f.from_i64(2)]);

            let m = Matrix::from_i64_rows(f, &[&[1], &[1]]);
            assert_eq!(solve(&m, &[f.zero(), f.one()]).unwrap(), None);
            assert!(solve(&m, &[f.zero()]).is_err());
        }
    }

    #[test]
    fn rational_rref_with_fractions() {
        let q = Field::Rational;
        let entries = ["1/2", "1/3", "1", "2/3", "4/9", "4/3", "1", "0", "5"]
            .iter()
            .map(|s| q.parse(s).unwrap())
            .collect();
        let m = Matrix::from_entries(q, 3, 3, entries);
        let (r, piv) = rref(&m);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rank(&m), 2);
        assert_eq!(r.get(0, 2), &q.from_i64(5));
        assert_eq!(r.get(1, 2), &q.parse("-9/2").unwrap());
        for v in nullspace(&m) {
            assert!(m.mul_vec(&v).unwrap().iter().all(FieldElem::is_zero));
        }
    }
}
