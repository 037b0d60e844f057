//! Dense linear algebra over GF(2).
//!
//! Vectors and matrix rows are packed into a single `u64`, so every
//! dimension is capped at [`MAX_DIM`]. Instances in this crate are tiny
//! (a few dozen unknowns at most).

use std::fmt;

use crate::error::{dim_err, Error, Result};

/// Largest supported vector length / column count.
pub const MAX_DIM: usize = 64;

fn mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A vector over GF(2) of length at most [`MAX_DIM`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vec {
    len: usize,
    bits: u64,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_DIM, "GF(2) vector length {len} exceeds {MAX_DIM}");
        Self { len, bits: 0 }
    }

    pub fn ones(len: usize) -> Self {
        Self::from_bits(len, mask(len))
    }

    pub fn unit(len: usize, i: usize) -> Self {
        assert!(i < len, "unit index {i} out of range {len}");
        Self::from_bits(len, 1 << i)
    }

    /// Builds a vector from the low `len` bits of `bits`; higher bits are dropped.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_DIM, "GF(2) vector length {len} exceeds {MAX_DIM}");
        Self {
            len,
            bits: bits & mask(len),
        }
    }

    pub fn from_slice(entries: &[u8]) -> Result<Self> {
        if entries.len() > MAX_DIM {
            return Err(Error::TooLarge {
                dim: entries.len(),
                max: MAX_DIM,
            });
        }
        let mut bits = 0u64;
        for (i, &e) in entries.iter().enumerate() {
            match e {
                0 => {}
                1 => bits |= 1 << i,
                _ => return Err(Error::Invalid(format!("GF(2) entry {e} is not 0 or 1"))),
            }
        }
        Ok(Self {
            len: entries.len(),
            bits,
        })
    }

    pub const fn len(&self) -> usize {
        self.len
    }

    pub const fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub const fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        (self.bits >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Indices of the nonzero entries, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| (self.bits >> i) & 1 == 1)
    }

    /// Standard dot product.
    pub fn dot(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &Self) -> Self {
        Self::from_bits(self.len + other.len, self.bits | (other.bits << self.len))
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (0..self.len).map(|i| u8::from(self.get(i))).collect()
    }
}

impl std::ops::Add for Gf2Vec {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.len, rhs.len);
        Self {
            len: self.len,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl std::ops::AddAssign for Gf2Vec {
    fn add_assign(&mut self, rhs: Self) {
        debug_assert_eq!(self.len, rhs.len);
        self.bits ^= rhs.bits;
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vec({self})")
    }
}

impl fmt::Display for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols <= MAX_DIM, "column count {cols} exceeds {MAX_DIM}");
        Self {
            rows,
            cols,
            data: vec![0; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i] = 1 << i;
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Gf2Vec]) -> Result<Self> {
        if cols > MAX_DIM {
            return Err(Error::TooLarge {
                dim: cols,
                max: MAX_DIM,
            });
        }
        let mut data = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return dim_err(format!("row {i} has length {}, expected {cols}", r.len()));
            }
            data.push(r.bits());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Parses rows given as 0/1 nested slices.
    pub fn from_nested(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let vecs = rows
            .iter()
            .map(|r| Gf2Vec::from_slice(r))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(cols, &vecs)
    }

    pub const fn rows(&self) -> usize {
        self.rows
    }

    pub const fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r] >> c) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        if value {
            self.data[r] |= 1 << c;
        } else {
            self.data[r] &= !(1 << c);
        }
    }

    pub fn row(&self, r: usize) -> Gf2Vec {
        Gf2Vec::from_bits(self.cols, self.data[r])
    }

    pub fn row_bits(&self, r: usize) -> u64 {
        self.data[r]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn diagonal(&self) -> Gf2Vec {
        let n = self.rows.min(self.cols);
        let mut bits = 0u64;
        for i in 0..n {
            if self.get(i, i) {
                bits |= 1 << i;
            }
        }
        Gf2Vec::from_bits(n, bits)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &Gf2Vec) -> Result<Gf2Vec> {
        if x.len() != self.cols {
            return dim_err(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            ));
        }
        let mut bits = 0u64;
        for r in 0..self.rows {
            if (self.data[r] & x.bits()).count_ones() & 1 == 1 {
                bits |= 1 << r;
            }
        }
        Ok(Gf2Vec::from_bits(self.rows, bits))
    }

    /// Bilinear pairing `xᵀ · self · y`.
    pub fn pair(&self, x: &Gf2Vec, y: &Gf2Vec) -> bool {
        debug_assert_eq!(x.len(), self.rows);
        debug_assert_eq!(y.len(), self.cols);
        let mut acc = 0u32;
        for r in x.support() {
            acc ^= (self.data[r] & y.bits()).count_ones() & 1;
        }
        acc == 1
    }

    /// Block-diagonal sum.
    pub fn block_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        m.data[..self.rows].copy_from_slice(&self.data);
        for r in 0..other.rows {
            m.data[self.rows + r] = other.data[r] << self.cols;
        }
        m
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let bit = 1u64 << c;
            let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of [`gf2_solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Solution {
    pub particular: Gf2Vec,
    pub kernel: Vec<Gf2Vec>,
    pub rank: usize,
}

/// Solves `a · x = b`. Returns `None` when the system is inconsistent.
///
/// The particular solution has zeros in every free column; the kernel basis
/// has one vector per free column, ordered by that column.
pub fn gf2_solve(a: &Gf2Matrix, b: &Gf2Vec) -> Result<Option<Gf2Solution>> {
    if b.len() != a.rows() {
        return dim_err(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        ));
    }
    let cols = a.cols();
    // Augmented rows: coefficient bits plus the rhs bit tracked separately.
    let mut rows: Vec<(u64, bool)> = (0..a.rows()).map(|r| (a.row_bits(r), b.get(r))).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let bit = 1u64 << c;
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].0 & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.0 & bit != 0 {
                row.0 ^= pivot.0;
                row.1 ^= pivot.1;
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|&(_, rhs)| rhs) {
        return Ok(None);
    }
    let mut particular = Gf2Vec::zeros(cols);
    for (r, &c) in pivots.iter().enumerate() {
        particular.set(c, rows[r].1);
    }
    let mut kernel = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    for free in 0..cols {
        if pivot_iter.peek() == Some(&&free) {
            pivot_iter.next();
            continue;
        }
        let mut k = Gf2Vec::unit(cols, free);
        for (r, &c) in pivots.iter().enumerate() {
            if rows[r].0 & (1 << free) != 0 {
                k.set(c, true);
            }
        }
        kernel.push(k);
    }
    Ok(Some(Gf2Solution {
        particular,
        kernel,
        rank,
    }))
}

/// Kernel basis of `a`.
pub fn kernel(a: &Gf2Matrix) -> Vec<Gf2Vec> {
    gf2_solve(a, &Gf2Vec::zeros(a.rows()))
        .expect("homogeneous system has matching dimensions")
        .expect("homogeneous system is always consistent")
        .kernel
}

/// Row-reduced basis of the span of `vectors` (all of length `len`).
pub fn span_basis(len: usize, vectors: &[Gf2Vec]) -> Vec<Gf2Vec> {
    let mut basis: Vec<u64> = Vec::new();
    for v in vectors {
        let mut x = v.bits();
        for &b in &basis {
            let lead = 63 - b.leading_zeros();
            if x >> lead & 1 == 1 {
                x ^= b;
            }
        }
        if x != 0 {
            let lead = 63 - x.leading_zeros();
            for b in basis.iter_mut() {
                if *b >> lead & 1 == 1 {
                    *b ^= x;
                }
            }
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.into_iter().map(|b| Gf2Vec::from_bits(len, b)).collect()
}

/// Whether `v` lies in the span of `basis` (any spanning list).
pub fn in_span(basis: &[Gf2Vec], v: &Gf2Vec) -> bool {
    let reduced = span_basis(v.len(), basis);
    let mut x = v.bits();
    for b in &reduced {
        let lead = 63 - b.bits().leading_zeros();
        if x >> lead & 1 == 1 {
            x ^= b.bits();
        }
    }
    x == 0
}

/// All `2^k` elements of the span of `k` independent vectors, in binary-counter order.
pub fn enumerate_span(len: usize, basis: &[Gf2Vec]) -> Vec<Gf2Vec> {
    assert!(basis.len() <= 24, "refusing to enumerate a span of dimension {}", basis.len());
    (0u64..1 << basis.len())
        .map(|mask| {
            basis
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(Gf2Vec::zeros(len), |acc, (_, v)| acc + *v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &[u8]) -> Gf2Vec {
        Gf2Vec::from_slice(e).unwrap()
    }

    #[test]
    fn identity_system() {
        let sol = gf2_solve(&Gf2Matrix::identity(3), &v(&[1, 0, 0])).unwrap().unwrap();
        assert_eq!(sol.particular, v(&[1, 0, 0]));
        assert!(sol.kernel.is_empty());
        assert_eq!(sol.rank, 3);
    }

    #[test]
    fn inconsistent_zero_system() {
        let a = Gf2Matrix::zeros(2, 2);
        assert_eq!(gf2_solve(&a, &v(&[1, 0])).unwrap(), None);
    }

    #[test]
    fn one_equation_system() {
        let a = Gf2Matrix::from_nested(&[vec![1, 1]]).unwrap();
        let sol = gf2_solve(&a, &v(&[1])).unwrap().unwrap();
        assert_eq!(sol.particular, v(&[1, 0]));
        assert_eq!(sol.kernel, vec![v(&[1, 1])]);
        assert_eq!(sol.rank, 1);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = Gf2Matrix::identity(3);
        assert!(matches!(gf2_solve(&a, &v(&[1, 0])), Err(Error::Dimension(_))));
        assert!(a.mul_vec(&v(&[1])).is_err());
    }

    #[test]
    fn zero_sized_matrices() {
        let a = Gf2Matrix::zeros(0, 2);
        let sol = gf2_solve(&a, &Gf2Vec::zeros(0)).unwrap().unwrap();
        assert_eq!(sol.kernel.len(), 2);
        assert_eq!(sol.rank, 0);
    }

    #[test]
    fn span_helpers() {
        let b = [v(&[1, 1, 0]), v(&[0, 1, 1]), v(&[1, 0, 1])];
        assert_eq!(span_basis(3, &b).len(), 2);
        assert!(in_span(&b, &v(&[1, 0, 1])));
        assert!(!in_span(&b, &v(&[1, 0, 0])));
        assert_eq!(enumerate_span(3, &span_basis(3, &b)).len(), 4);
    }

    #[test]
    fn block_sum_and_pairing() {
        let a = Gf2Matrix::from_nested(&[vec![0, 1], vec![1, 0]]).unwrap();
        let s = a.block_sum(&Gf2Matrix::identity(1));
        assert!(s.is_symmetric());
        assert!(s.pair(&v(&[1, 0, 0]), &v(&[0, 1, 0])));
        assert!(s.pair(&v(&[0, 0, 1]), &v(&[0, 0, 1])));
        assert!(!s.pair(&v(&[1, 0, 0]), &v(&[0, 0, 1])));
        assert_eq!(s.rank(), 3);
    }
}
