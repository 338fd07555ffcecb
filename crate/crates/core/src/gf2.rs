// Copyright contributors to the magic-circuits project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Dense linear algebra over GF(2).
//!
//! Vectors and matrices are bit-packed into `u64` words. Matrices are stored
//! column-major so that extracting a column or adding one column onto another
//! touches `rows / 64` words; column additions are the inner loop of CNOT
//! synthesis.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("index error: {0}")]
    Index(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid bit string {0:?}: expected only '0' and '1'")]
    Parse(String),
}

/// Fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector from the low `len` bits of `mask`; bit `i` of the mask is entry `i`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "from_mask supports at most 64 entries");
        let mut v = Self::zeros(len);
        if len > 0 {
            let keep = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = mask & keep;
        }
        v
    }

    /// Parses a bit string with entry 0 leftmost, e.g. `"1011"`.
    pub fn parse(s: &str) -> Result<Self, Gf2Error> {
        let mut v = Self::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(Gf2Error::Parse(s.to_string())),
            }
        }
        Ok(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ ((a & b).count_ones() & 1))
            == 1
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Low 64 bits as a mask (entry `i` is bit `i`).
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= WORD, "to_mask supports at most 64 entries");
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// Dense `rows x cols` matrix over GF(2), stored column-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(rows).max(1);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; stride * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from row-major 0/1 entries.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, Gf2Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != ncols {
                return Err(Gf2Error::Dimension(format!(
                    "row {r} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(r, c, true),
                    _ => return Err(Gf2Error::Domain(format!("entry ({r},{c}) = {v} is not a bit"))),
                }
            }
        }
        Ok(m)
    }

    pub fn from_columns(columns: &[BitVec]) -> Result<Self, Gf2Error> {
        let rows = columns.first().map_or(0, BitVec::len);
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Gf2Error::Dimension(format!(
                    "column {c} has length {}, expected {rows}",
                    col.len()
                )));
            }
            m.set_column(c, col);
        }
        Ok(m)
    }

    /// Permutation matrix with a one at `(perm[c], c)` for every column `c`.
    pub fn from_permutation(perm: &[usize]) -> Result<Self, Gf2Error> {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut m = Self::zeros(n, n);
        for (c, &r) in perm.iter().enumerate() {
            if r >= n || seen[r] {
                return Err(Gf2Error::Domain(format!("{perm:?} is not a permutation")));
            }
            seen[r] = true;
            m.set(r, c, true);
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    fn col_words(&self, c: usize) -> &[u64] {
        &self.data[c * self.stride..(c + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        (self.data[c * self.stride + r / WORD] >> (r % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        let idx = c * self.stride + r / WORD;
        let mask = 1u64 << (r % WORD);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn column(&self, c: usize) -> BitVec {
        assert!(c < self.cols, "column {c} out of range");
        BitVec {
            len: self.rows,
            words: self.col_words(c)[..words_for(self.rows)].to_vec(),
        }
    }

    pub fn columns(&self) -> Vec<BitVec> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &BitVec) {
        assert_eq!(v.len(), self.rows, "column length mismatch");
        let start = c * self.stride;
        for (k, w) in v.words.iter().enumerate() {
            self.data[start + k] = *w;
        }
    }

    pub fn row(&self, r: usize) -> BitVec {
        let mut v = BitVec::zeros(self.cols);
        for c in 0..self.cols {
            if self.get(r, c) {
                v.set(c, true);
            }
        }
        v
    }

    /// Column `j` becomes column `i` XOR column `j`, in place.
    pub fn col_add_in_place(&mut self, i: usize, j: usize) -> Result<(), Gf2Error> {
        if i == j {
            return Err(Gf2Error::Index(format!("col_add needs distinct columns, got {i} twice")));
        }
        if i >= self.cols || j >= self.cols {
            return Err(Gf2Error::Index(format!(
                "columns ({i},{j}) out of range for {} columns",
                self.cols
            )));
        }
        let s = self.stride;
        for k in 0..s {
            let src = self.data[i * s + k];
            self.data[j * s + k] ^= src;
        }
        Ok(())
    }

    /// Returns a copy with column `j` replaced by column `i` XOR column `j`.
    pub fn col_add(&self, i: usize, j: usize) -> Result<Gf2Matrix, Gf2Error> {
        let mut out = self.clone();
        out.col_add_in_place(i, j)?;
        Ok(out)
    }

    /// Row `j` becomes row `i` XOR row `j`, in place.
    pub fn row_add_in_place(&mut self, i: usize, j: usize) -> Result<(), Gf2Error> {
        if i == j {
            return Err(Gf2Error::Index(format!("row_add needs distinct rows, got {i} twice")));
        }
        if i >= self.rows || j >= self.rows {
            return Err(Gf2Error::Index(format!(
                "rows ({i},{j}) out of range for {} rows",
                self.rows
            )));
        }
        for c in 0..self.cols {
            if self.get(i, c) {
                let idx = c * self.stride + j / WORD;
                self.data[idx] ^= 1u64 << (j % WORD);
            }
        }
        Ok(())
    }

    pub fn swap_columns(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let s = self.stride;
        for k in 0..s {
            self.data.swap(i * s + k, j * s + k);
        }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for c in 0..self.cols {
            for r in 0..self.rows {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        let s = self.stride;
        for c in 0..other.cols {
            for k in 0..other.rows {
                if other.get(k, c) {
                    for w in 0..s {
                        out.data[c * s + w] ^= self.data[k * s + w];
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = BitVec::zeros(self.rows);
        for c in v.ones() {
            for (w, src) in out.words.iter_mut().zip(self.col_words(c)) {
                *w ^= src;
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut cols = self.columns();
        let mut rank = 0;
        for r in 0..self.rows {
            let Some(p) = (rank..cols.len()).find(|&c| cols[c].get(r)) else {
                continue;
            };
            cols.swap(rank, p);
            let pivot = cols[rank].clone();
            for c in cols.iter_mut().skip(rank + 1) {
                if c.get(r) {
                    c.xor_assign(&pivot);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> Result<bool, Gf2Error> {
        self.require_square("is_invertible")?;
        Ok(self.rank() == self.rows)
    }

    pub fn invert(&self) -> Result<Gf2Matrix, Gf2Error> {
        self.require_square("invert")?;
        let n = self.rows;
        // Gauss-Jordan on columns: reduce self to I with column ops, mirror on I.
        let mut a = self.clone();
        let mut inv = Gf2Matrix::identity(n);
        for r in 0..n {
            let p = (r..n).find(|&c| a.get(r, c)).ok_or(Gf2Error::Singular)?;
            a.swap_columns(r, p);
            inv.swap_columns(r, p);
            for c in 0..n {
                if c != r && a.get(r, c) {
                    a.col_add_in_place(r, c)?;
                    inv.col_add_in_place(r, c)?;
                }
            }
        }
        Ok(inv)
    }

    pub fn row_sums(&self) -> Vec<u32> {
        let mut sums = vec![0u32; self.rows];
        for c in 0..self.cols {
            for r in 0..self.rows {
                if self.get(r, c) {
                    sums[r] += 1;
                }
            }
        }
        sums
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.cols)
            .map(|c| self.col_words(c).iter().map(|w| w.count_ones()).sum())
            .collect()
    }

    /// Total number of ones.
    pub fn weight(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_permutation(&self) -> Result<bool, Gf2Error> {
        self.require_square("is_permutation")?;
        Ok(self.row_sums().iter().all(|&s| s == 1) && self.col_sums().iter().all(|&s| s == 1))
    }

    /// For a permutation matrix, the row holding the single one of each column.
    pub fn permutation_rows(&self) -> Option<Vec<usize>> {
        if !self.is_permutation().ok()? {
            return None;
        }
        Some(
            (0..self.cols)
                .map(|c| (0..self.rows).find(|&r| self.get(r, c)).unwrap())
                .collect(),
        )
    }

    /// Deterministic uniformly random invertible `n x n` matrix.
    pub fn random_invertible(n: usize, seed: u64) -> Result<Gf2Matrix, Gf2Error> {
        if n == 0 {
            return Err(Gf2Error::Domain("random_invertible needs n >= 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut m = Gf2Matrix::zeros(n, n);
            for c in 0..n {
                for r in 0..n {
                    if rng.random::<bool>() {
                        m.set(r, c, true);
                    }
                }
            }
            if m.rank() == n {
                return Ok(m);
            }
        }
    }

    fn require_square(&self, op: &str) -> Result<(), Gf2Error> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Gf2Error::Dimension(format!(
                "{op} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Row-major 0/1 entries.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) as u8).collect())
            .collect()
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix[{}x{}](", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(" ")?;
            }
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn u0() -> Gf2Matrix {
        Gf2Matrix::from_rows(&[[1, 0, 1, 1], [0, 1, 1, 0], [1, 1, 1, 0], [1, 1, 1, 1]]).unwrap()
    }

    fn u1() -> Gf2Matrix {
        Gf2Matrix::from_rows(&[[0, 0, 0, 1], [0, 0, 1, 1], [1, 0, 0, 0], [1, 1, 1, 1]]).unwrap()
    }

    // Independent oracle: determinant over GF(2) by Laplace expansion.
    fn det_laplace(m: &[Vec<u8>]) -> u8 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        let mut acc = 0;
        for c in 0..n {
            if m[0][c] == 0 {
                continue;
            }
            let minor: Vec<Vec<u8>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &v)| v).collect())
                .collect();
            acc ^= det_laplace(&minor);
        }
        acc
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::identity(4).rank(), 4);
        assert_eq!(u0().rank(), 4);
        assert_eq!(Gf2Matrix::zeros(3, 3).rank(), 0);
    }

    #[test]
    fn invertibility_examples() {
        assert!(u1().is_invertible().unwrap());
        let dup = Gf2Matrix::from_rows(&[[1, 1, 0], [0, 0, 1], [1, 1, 1]]).unwrap();
        assert!(!dup.is_invertible().unwrap());
        assert!(matches!(
            Gf2Matrix::zeros(2, 3).is_invertible(),
            Err(Gf2Error::Dimension(_))
        ));
    }

    #[test]
    fn invertibility_agrees_with_laplace_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.random_range(1..=6);
            let rows: Vec<Vec<u8>> = (0..n)
                .map(|_| (0..n).map(|_| rng.random_range(0..2u8)).collect())
                .collect();
            let m = Gf2Matrix::from_rows(&rows).unwrap();
            assert_eq!(m.is_invertible().unwrap(), det_laplace(&rows) == 1, "{m:?}");
        }
    }

    #[test]
    fn invert_examples() {
        assert_eq!(Gf2Matrix::identity(5).invert().unwrap(), Gf2Matrix::identity(5));
        let p = Gf2Matrix::from_permutation(&[2, 0, 3, 1]).unwrap();
        assert_eq!(p.invert().unwrap(), p.transpose());
        let inv = u0().invert().unwrap();
        assert_eq!(u0().mul(&inv).unwrap(), Gf2Matrix::identity(4));
        assert_eq!(inv.mul(&u0()).unwrap(), Gf2Matrix::identity(4));
        assert_eq!(Gf2Matrix::zeros(2, 2).invert(), Err(Gf2Error::Singular));
    }

    #[test]
    fn col_add_examples() {
        let m = Gf2Matrix::identity(2).col_add(0, 1).unwrap();
        assert_eq!(m.column(1), BitVec::parse("11").unwrap());
        assert_eq!(m.column(0), BitVec::parse("10").unwrap());
        assert_eq!(m.col_add(0, 1).unwrap(), Gf2Matrix::identity(2));
        assert!(matches!(m.col_add(1, 1), Err(Gf2Error::Index(_))));
    }

    #[test]
    fn permutation_examples() {
        assert!(Gf2Matrix::identity(5).is_permutation().unwrap());
        let heavy = Gf2Matrix::identity(3).col_add(0, 2).unwrap();
        assert!(!heavy.is_permutation().unwrap());
    }

    #[test]
    fn random_invertible_examples() {
        for seed in 0..5 {
            assert_eq!(Gf2Matrix::random_invertible(1, seed).unwrap(), Gf2Matrix::identity(1));
        }
        assert_eq!(
            Gf2Matrix::random_invertible(4, 7).unwrap(),
            Gf2Matrix::random_invertible(4, 7).unwrap()
        );
        assert!((0..100).all(|s| Gf2Matrix::random_invertible(6, s).unwrap().is_invertible().unwrap()));
        assert!(matches!(Gf2Matrix::random_invertible(0, 1), Err(Gf2Error::Domain(_))));
    }

    #[test]
    fn bitvec_parse_and_dot() {
        let a = BitVec::parse("1011").unwrap();
        let b = BitVec::parse("0011").unwrap();
        assert!(!a.dot(&b));
        assert_eq!(a.weight(), 3);
        assert_eq!(a.ones().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert_eq!(a.to_string(), "1011");
        assert!(BitVec::parse("10x").is_err());
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let n = 70;
        let mut m = Gf2Matrix::identity(n);
        m.col_add_in_place(3, 69).unwrap();
        m.col_add_in_place(68, 1).unwrap();
        assert!(m.is_invertible().unwrap());
        let inv = m.invert().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Gf2Matrix::identity(n));
        assert_eq!(m.transpose().transpose(), m);
    }

    proptest! {
        #[test]
        fn double_inverse_is_identity(n in 1usize..9, seed in any::<u64>()) {
            let m = Gf2Matrix::random_invertible(n, seed).unwrap();
            prop_assert_eq!(m.invert().unwrap().invert().unwrap(), m);
        }

        #[test]
        fn col_add_preserves_rank(n in 2usize..9, seed in any::<u64>(), i in 0usize..8, j in 0usize..8) {
            let m = Gf2Matrix::random_invertible(n, seed).unwrap();
            let (i, j) = (i % n, j % n);
            prop_assume!(i != j);
            let a = m.col_add(i, j).unwrap();
            prop_assert_eq!(a.rank(), m.rank());
            prop_assert!(a.is_invertible().unwrap());
        }

        #[test]
        fn permutations_are_invertible(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
            let p = Gf2Matrix::from_permutation(&perm).unwrap();
            prop_assert!(p.is_permutation().unwrap());
            prop_assert!(p.is_invertible().unwrap());
        }
    }
}
