use super::FieldModulus;
use crate::error::{Error, Result};

/// Row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: FieldModulus,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn new(p: FieldModulus, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data.into_iter().map(|a| a % p.get()).collect();
        Ok(FpMatrix {
            p,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(p: FieldModulus, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: FieldModulus, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from equally sized rows; `cols` is needed for the empty case.
    pub fn from_rows(p: FieldModulus, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::new(p, rows.len(), cols, data)
    }

    pub fn modulus(&self) -> FieldModulus {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p.get();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<FpMatrix> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::DimensionMismatch(format!(
                "column {bad} out of range for {} columns",
                self.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: cols.len(),
            data,
        })
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p.get() as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let s = (0..self.cols).fold(0u64, |acc, i| {
                    (acc + self.get(r, i) as u64 * other.get(i, c) as u64) % p
                });
                out.data[r * other.cols + c] = s as u32;
            }
        }
        Ok(out)
    }

    /// `A * x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                x.len(),
                self.cols
            )));
        }
        let p = self.p.get() as u64;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p)
                    as u32
            })
            .collect())
    }

    /// `u * A` for a row vector `u`.
    pub fn vec_mul(&self, u: &[u32]) -> Result<Vec<u32>> {
        if u.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} rows",
                u.len(),
                self.rows
            )));
        }
        let mut out = vec![0u32; self.cols];
        for (r, &ur) in u.iter().enumerate() {
            if ur == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(r)) {
                *o = self.p.add(*o, self.p.mul(ur, a));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(self.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Whether both matrices span the same row space.
    pub fn same_row_space(&self, other: &FpMatrix) -> Result<bool> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        if self.cols != other.cols {
            return Ok(false);
        }
        let r = self.rank();
        if r != other.rank() {
            return Ok(false);
        }
        let mut stacked = self.clone();
        stacked.data.extend_from_slice(&other.data);
        stacked.rows += other.rows;
        Ok(stacked.rank() == r)
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[u32]) -> bool {
        if v.len() != self.cols {
            return false;
        }
        let mut stacked = self.clone();
        stacked.data.extend_from_slice(v);
        stacked.rows += 1;
        stacked.rank() == self.rank()
    }

    /// In-place Gauss-Jordan elimination restricted to the first `limit` columns.
    /// The first nonzero entry at or below the current row is used as pivot.
    fn eliminate(&mut self, limit: usize) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            let inv = p.inv(self.get(row, col)).expect("pivot is nonzero");
            for c in 0..self.cols {
                let v = p.mul(self.get(row, c), inv);
                self.data[row * self.cols + c] = v;
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..self.cols {
                    let v = p.sub(self.get(r, c), p.mul(factor, self.get(row, c)));
                    self.data[r * self.cols + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

/// Solves `A x = b` over F_p.
///
/// Returns `Ok(None)` when the system is inconsistent. Free variables are set
/// to zero, so the returned solution is deterministic.
pub fn solve_linear(a: &FpMatrix, b: &[u32]) -> Result<Option<Vec<u32>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows
        )));
    }
    let p = a.p;
    let cols = a.cols + 1;
    let mut data = Vec::with_capacity(a.rows * cols);
    for (r, &rhs) in b.iter().enumerate() {
        data.extend_from_slice(a.row(r));
        data.push(rhs % p.get());
    }
    let mut aug = FpMatrix {
        p,
        rows: a.rows,
        cols,
        data,
    };
    let pivots = aug.eliminate(a.cols);
    if (pivots.len()..a.rows).any(|r| aug.get(r, a.cols) != 0) {
        return Ok(None);
    }
    let mut x = vec![0u32; a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, a.cols);
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64) -> FieldModulus {
        FieldModulus::new(p).unwrap()
    }

    /// Systematic generator of the [10,8,3] dual code over F_11.
    pub(crate) fn systematic_h() -> FpMatrix {
        let rows: Vec<Vec<u32>> = vec![
            vec![1, 0, 0, 0, 0, 0, 0, 0, 10, 10],
            vec![0, 1, 0, 0, 0, 0, 0, 0, 10, 9],
            vec![0, 0, 1, 0, 0, 0, 0, 0, 9, 8],
            vec![0, 0, 0, 1, 0, 0, 0, 0, 8, 6],
            vec![0, 0, 0, 0, 1, 0, 0, 0, 6, 3],
            vec![0, 0, 0, 0, 0, 1, 0, 0, 3, 9],
            vec![0, 0, 0, 0, 0, 0, 1, 0, 9, 1],
            vec![0, 0, 0, 0, 0, 0, 0, 1, 1, 10],
        ];
        FpMatrix::from_rows(fp(11), 10, &rows).unwrap()
    }

    #[test]
    fn identity_system() {
        let a = FpMatrix::identity(fp(13), 4);
        let b = vec![3, 0, 12, 7];
        assert_eq!(solve_linear(&a, &b).unwrap(), Some(b));
    }

    #[test]
    fn inconsistent_system() {
        let a = FpMatrix::from_rows(fp(3), 1, &[vec![1], vec![1]]).unwrap();
        assert_eq!(solve_linear(&a, &[1, 2]).unwrap(), None);
    }

    #[test]
    fn dimension_mismatch() {
        let a = FpMatrix::identity(fp(5), 2);
        assert!(matches!(
            solve_linear(&a, &[1]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(FpMatrix::new(fp(5), 2, 2, vec![1, 2, 3]).is_err());
    }

    #[test]
    fn recombination_on_a_minimal_access_set() {
        // columns 2..=9 of H must combine to column 0; the coefficients are the
        // negated entries of the codeword 1,0,1,1,2,3,5,8,2,10 of the dual of H
        let h = systematic_h();
        let access: Vec<usize> = (2..=9).collect();
        let a = h.select_columns(&access).unwrap();
        let target = h.column(0);
        let x = solve_linear(&a, &target).unwrap().unwrap();
        assert_eq!(x, vec![10, 10, 9, 8, 6, 3, 9, 1]);
        assert_eq!(a.mul_vec(&x).unwrap(), target);
    }

    #[test]
    fn row_space_comparison_ignores_basis() {
        let p = fp(11);
        let a = FpMatrix::from_rows(p, 3, &[vec![1, 2, 3], vec![0, 1, 1]]).unwrap();
        let b = FpMatrix::from_rows(p, 3, &[vec![1, 3, 4], vec![2, 4, 6]]).unwrap();
        assert!(a.same_row_space(&b).unwrap());
        let c = FpMatrix::from_rows(p, 3, &[vec![1, 0, 0], vec![0, 1, 1]]).unwrap();
        assert!(!a.same_row_space(&c).unwrap());
    }

    proptest! {
        #[test]
        fn solutions_satisfy_the_system(
            rows in 1usize..6,
            cols in 1usize..6,
            seed in proptest::collection::vec(0u32..7, 36),
            rhs in proptest::collection::vec(0u32..7, 6),
        ) {
            let a = FpMatrix::new(fp(7), rows, cols, seed[..rows * cols].to_vec()).unwrap();
            let b = &rhs[..rows];
            if let Some(x) = solve_linear(&a, b).unwrap() {
                prop_assert_eq!(a.mul_vec(&x).unwrap(), b.to_vec());
            } else {
                // inconsistent means b is outside the column space
                let mut aug = a.transpose();
                aug.data.extend_from_slice(b);
                aug.rows += 1;
                let augmented_rank = aug.rank();
                prop_assert!(a.rank() < augmented_rank);
            }
        }
    }
}
