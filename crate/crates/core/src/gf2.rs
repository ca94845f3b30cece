//! Square matrices over GF(2) with bit-packed rows.
//!
//! Rows are stored as runs of `u64` words and reduced with word-parallel
//! XOR. All operations take `&self`; elimination always runs on a copy.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("index {index} out of range for a {dim}x{dim} matrix")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("row {row} has length {len}, expected {dim}")]
    RaggedRow { row: usize, len: usize, dim: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    dim: usize,
    words: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(dim: usize) -> Self {
        let words = dim.div_ceil(WORD);
        Gf2Matrix { dim, words, data: vec![0; dim * words] }
    }

    /// Builds a matrix from dense 0/1 rows. Any nonzero entry counts as 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, Gf2Error> {
        let dim = rows.len();
        let mut m = Gf2Matrix::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Gf2Error::RaggedRow { row: i, len: row.len(), dim });
            }
            for (j, &x) in row.iter().enumerate() {
                if x != 0 {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    /// Like [`Gf2Matrix::from_rows`] but rejects non-symmetric input.
    pub fn symmetric_from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, Gf2Error> {
        let m = Self::from_rows(rows)?;
        m.check_symmetric()?;
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    /// Row `i` as packed 64-bit words.
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.dim && j < self.dim, "({i}, {j}) outside {0}x{0}", self.dim);
        self.data[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.dim && j < self.dim, "({i}, {j}) outside {0}x{0}", self.dim);
        let w = &mut self.data[i * self.words + j / WORD];
        let bit = 1u64 << (j % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, value: bool) {
        self.set(i, j, value);
        self.set(j, i, value);
    }

    pub fn is_symmetric(&self) -> bool {
        self.check_symmetric().is_ok()
    }

    pub fn check_symmetric(&self) -> Result<(), Gf2Error> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.get(i, j) != self.get(j, i) {
                    return Err(Gf2Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(())
    }

    /// Row `i` as a single word. Only valid when `dim <= 64`.
    #[inline]
    pub fn row_bits(&self, i: usize) -> u64 {
        debug_assert!(self.dim <= WORD);
        self.data[i]
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let words = self.words;
        let mut rank = 0;
        for col in 0..self.dim {
            let (w, bit) = (col / WORD, 1u64 << (col % WORD));
            let Some(pivot) = (rank..self.dim).find(|&r| rows[r * words + w] & bit != 0) else {
                continue;
            };
            if pivot != rank {
                for x in 0..words {
                    rows.swap(pivot * words + x, rank * words + x);
                }
            }
            for r in rank + 1..self.dim {
                if rows[r * words + w] & bit != 0 {
                    // columns before `w` are already zero in both rows
                    for x in w..words {
                        rows[r * words + x] ^= rows[rank * words + x];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn corank(&self) -> usize {
        self.dim - self.rank()
    }

    /// Restriction to the rows and columns in `indices`, taken in ascending
    /// order. Duplicates are collapsed.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<Gf2Matrix, Gf2Error> {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.dim) {
            return Err(Gf2Error::IndexOutOfRange { index: bad, dim: self.dim });
        }
        let mut out = Gf2Matrix::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                if self.get(i, j) {
                    out.set(a, b, true);
                }
            }
        }
        Ok(out)
    }

    /// Rank of the principal submatrix selected by `mask` (bit `i` = index
    /// `i`), without materialising it. Requires `dim <= 64`.
    ///
    /// Uses the rows `i in mask` restricted to the columns in `mask`; the
    /// zero columns outside the mask do not change the rank.
    pub fn principal_rank(&self, mask: u64) -> usize {
        assert!(self.dim <= WORD, "principal_rank needs dim <= 64, got {}", self.dim);
        let mut basis = [0u64; WORD];
        let mut rank = 0;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut v = self.data[i] & mask;
            while v != 0 {
                let h = 63 - v.leading_zeros() as usize;
                if basis[h] == 0 {
                    basis[h] = v;
                    rank += 1;
                    break;
                }
                v ^= basis[h];
            }
        }
        rank
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            f.write_str("\n  ")?;
            for j in 0..self.dim {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            if i > 0 {
                f.write_str("\n")?;
            }
            for j in 0..self.dim {
                if j > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}
