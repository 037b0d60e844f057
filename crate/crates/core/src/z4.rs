//! Linear systems over the local ring Z/4.
//!
//! Elimination pivots on units first, then on entries equal to 2 once only
//! even entries remain, which diagonalises any matrix to `diag(1,…,1,2,…,2,0,…)`.
//! Solution modules are put into Howell normal form so that generator lists and
//! particular solutions are canonical.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{dim_err, Error, Result};

/// A residue modulo 4.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Z4(u8);

impl Z4 {
    pub const ZERO: Z4 = Z4(0);
    pub const ONE: Z4 = Z4(1);
    pub const TWO: Z4 = Z4(2);
    pub const THREE: Z4 = Z4(3);

    pub const fn new(v: u8) -> Self {
        Z4(v & 3)
    }

    pub fn from_i64(v: i64) -> Self {
        Z4(v.rem_euclid(4) as u8)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub const fn is_odd(self) -> bool {
        self.0 & 1 == 1
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(self) -> Option<Self> {
        // 1·1 = 3·3 = 1 mod 4
        self.is_odd().then_some(self)
    }

    /// `2·x` for `x` taken mod 2.
    pub const fn double_of_bit(bit: bool) -> Self {
        if bit {
            Z4::TWO
        } else {
            Z4::ZERO
        }
    }
}

impl fmt::Debug for Z4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Z4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Z4 {
    type Output = Z4;
    fn add(self, rhs: Z4) -> Z4 {
        Z4((self.0 + rhs.0) & 3)
    }
}

impl AddAssign for Z4 {
    fn add_assign(&mut self, rhs: Z4) {
        *self = *self + rhs;
    }
}

impl Sub for Z4 {
    type Output = Z4;
    fn sub(self, rhs: Z4) -> Z4 {
        Z4((self.0 + 4 - rhs.0) & 3)
    }
}

impl Neg for Z4 {
    type Output = Z4;
    fn neg(self) -> Z4 {
        Z4((4 - self.0) & 3)
    }
}

impl Mul for Z4 {
    type Output = Z4;
    fn mul(self, rhs: Z4) -> Z4 {
        Z4((self.0 * rhs.0) & 3)
    }
}

impl From<u8> for Z4 {
    fn from(v: u8) -> Self {
        Z4::new(v)
    }
}

pub fn z4_vec(values: &[i64]) -> Vec<Z4> {
    values.iter().map(|&v| Z4::from_i64(v)).collect()
}

/// Dense row-major matrix over Z/4.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Z4Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Z4>,
}

impl Z4Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Z4::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Z4::ONE);
        }
        m
    }

    /// Builds a `rows × cols` matrix from integer rows reduced mod 4.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return dim_err(format!("row {r} has length {}, expected {cols}", row.len()));
            }
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, Z4::from_i64(v));
            }
        }
        Ok(m)
    }

    pub const fn rows(&self) -> usize {
        self.rows
    }

    pub const fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Z4 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Z4) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Z4] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Z4]) -> Result<Vec<Z4>> {
        if x.len() != self.cols {
            return dim_err(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            ));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(Z4::ZERO, |acc, (&a, &b)| acc + a * b)
            })
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += factor · row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: Z4) {
        for c in 0..self.cols {
            let v = self.get(dst, c) + factor * self.get(src, c);
            self.set(dst, c, v);
        }
    }

    /// col[dst] += factor · col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: Z4) {
        for r in 0..self.rows {
            let v = self.get(r, dst) + factor * self.get(r, src);
            self.set(r, dst, v);
        }
    }

    fn scale_row(&mut self, r: usize, factor: Z4) {
        for c in 0..self.cols {
            let v = self.get(r, c) * factor;
            self.set(r, c, v);
        }
    }
}

/// Constraint on one unknown of a parity-constrained system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityMask(pub Vec<Parity>);

impl ParityMask {
    pub fn all_free(n: usize) -> Self {
        Self(vec![Parity::Free; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn admits(&self, x: &[Z4]) -> bool {
        x.len() == self.0.len()
            && self
                .0
                .iter()
                .zip(x)
                .all(|(p, v)| *p == Parity::Free || v.is_odd())
    }
}

/// A rank-one row of a Howell basis: its pivot column and pivot value (1 or 2).
#[derive(Clone, Debug, PartialEq, Eq)]
struct HowellRow {
    pivot: usize,
    row: Vec<Z4>,
}

/// Howell normal form of a submodule of `(Z/4)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellBasis {
    len: usize,
    rows: Vec<HowellRow>,
}

impl HowellBasis {
    pub fn new(len: usize, generators: &[Vec<Z4>]) -> Self {
        let mut pool: Vec<Vec<Z4>> = generators
            .iter()
            .filter(|g| g.iter().any(|v| !v.is_zero()))
            .cloned()
            .collect();
        let mut rows: Vec<HowellRow> = Vec::new();
        for c in 0..len {
            let pick = pool
                .iter()
                .position(|r| r[c].is_odd())
                .or_else(|| pool.iter().position(|r| r[c] == Z4::TWO));
            let Some(p) = pick else { continue };
            let mut pivot = pool.swap_remove(p);
            if let Some(inv) = pivot[c].inverse() {
                for v in pivot.iter_mut() {
                    *v = *v * inv;
                }
            }
            let pv = pivot[c];
            for r in pool.iter_mut() {
                let t = if pv == Z4::ONE {
                    r[c]
                } else {
                    // no unit remains in column c, so r[c] ∈ {0, 2}
                    Z4::new(r[c].value() / 2)
                };
                if !t.is_zero() {
                    for (x, &y) in r.iter_mut().zip(&pivot) {
                        *x = *x - t * y;
                    }
                }
            }
            if pv == Z4::TWO {
                let doubled: Vec<Z4> = pivot.iter().map(|&v| v * Z4::TWO).collect();
                if doubled.iter().any(|v| !v.is_zero()) {
                    pool.push(doubled);
                }
            }
            pool.retain(|r| r.iter().any(|v| !v.is_zero()));
            rows.push(HowellRow { pivot: c, row: pivot });
        }
        // back-substitution so entries above pivots are reduced
        for i in 0..rows.len() {
            let (head, tail) = rows.split_at_mut(i);
            let cur = &tail[0];
            for earlier in head.iter_mut() {
                let t = Self::quotient(earlier.row[cur.pivot], cur.row[cur.pivot]);
                if !t.is_zero() {
                    for (x, &y) in earlier.row.iter_mut().zip(&cur.row) {
                        *x = *x - t * y;
                    }
                }
            }
        }
        Self { len, rows }
    }

    fn quotient(value: Z4, pivot: Z4) -> Z4 {
        if pivot == Z4::ONE {
            value
        } else {
            Z4::new(value.value() / 2)
        }
    }

    pub fn generators(&self) -> Vec<Vec<Z4>> {
        self.rows.iter().map(|r| r.row.clone()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical representative of the coset `v + span`.
    pub fn reduce(&self, v: &[Z4]) -> Vec<Z4> {
        assert_eq!(v.len(), self.len);
        let mut out = v.to_vec();
        for r in &self.rows {
            let t = Self::quotient(out[r.pivot], r.row[r.pivot]);
            if !t.is_zero() {
                for (x, &y) in out.iter_mut().zip(&r.row) {
                    *x = *x - t * y;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Z4]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

/// A particular solution plus generators of the relevant homogeneous module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z4SolutionSpace {
    pub particular: Vec<Z4>,
    pub generators: Vec<Vec<Z4>>,
}

struct Diagonalised {
    /// number of unit pivots, then number of pivots equal to 2
    units: usize,
    twos: usize,
    /// transformed right-hand side `P·b`
    rhs: Vec<Z4>,
    /// column transform `Q`, so that `x = Q·z`
    col_transform: Z4Matrix,
}

fn diagonalise(a: &Z4Matrix, b: &[Z4]) -> Diagonalised {
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    let mut q = Z4Matrix::identity(a.cols());
    let mut r = 0;
    let mut units = 0;
    for want_unit in [true, false] {
        loop {
            let found = (r..m.rows()).find_map(|i| {
                (r..m.cols())
                    .find(|&j| {
                        let v = m.get(i, j);
                        if want_unit {
                            v.is_odd()
                        } else {
                            v == Z4::TWO
                        }
                    })
                    .map(|j| (i, j))
            });
            let Some((i, j)) = found else { break };
            m.swap_rows(r, i);
            rhs.swap(r, i);
            m.swap_cols(r, j);
            q.swap_cols(r, j);
            let pv = m.get(r, r);
            if let Some(inv) = pv.inverse() {
                m.scale_row(r, inv);
                rhs[r] = rhs[r] * inv;
            }
            let pv = m.get(r, r);
            for k in 0..m.rows() {
                if k == r {
                    continue;
                }
                let t = HowellBasis::quotient(m.get(k, r), pv);
                if !t.is_zero() {
                    m.add_row(k, r, -t);
                    rhs[k] = rhs[k] - t * rhs[r];
                }
            }
            for c in r + 1..m.cols() {
                let t = HowellBasis::quotient(m.get(r, c), pv);
                if !t.is_zero() {
                    m.add_col(c, r, -t);
                    q.add_col(c, r, -t);
                }
            }
            r += 1;
            if want_unit {
                units += 1;
            }
        }
    }
    Diagonalised {
        units,
        twos: r - units,
        rhs,
        col_transform: q,
    }
}

/// Solves `a·x = b` over Z/4 with no parity constraint.
pub fn z4_solve(a: &Z4Matrix, b: &[Z4]) -> Result<Option<Z4SolutionSpace>> {
    z4_solution_space(a, b, &ParityMask::all_free(a.cols()))
}

/// Solves `a·x = b` over Z/4 with `x_i` odd wherever the mask says [`Parity::Odd`].
///
/// The returned solution is the canonical (Howell-reduced) representative.
pub fn z4_solve_parity(a: &Z4Matrix, b: &[Z4], mask: &ParityMask) -> Result<Option<Vec<Z4>>> {
    Ok(z4_solution_space(a, b, mask)?.map(|s| s.particular))
}

/// Particular solution plus generators of every parity-preserving difference `d`
/// (`a·d = 0`, `d` even at odd-constrained positions).
pub fn z4_solution_space(
    a: &Z4Matrix,
    b: &[Z4],
    mask: &ParityMask,
) -> Result<Option<Z4SolutionSpace>> {
    if b.len() != a.rows() {
        return dim_err(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        ));
    }
    if mask.len() != a.cols() {
        return Err(Error::Dimension(format!(
            "parity mask of length {} for {} unknowns",
            mask.len(),
            a.cols()
        )));
    }
    let n = a.cols();
    // x_i = 1 + 2·y_i at odd positions
    let mut sub = a.clone();
    let mut rhs = b.to_vec();
    for (c, p) in mask.0.iter().enumerate() {
        if *p == Parity::Odd {
            for r in 0..a.rows() {
                rhs[r] = rhs[r] - a.get(r, c);
                sub.set(r, c, a.get(r, c) * Z4::TWO);
            }
        }
    }
    let d = diagonalise(&sub, &rhs);
    let rank = d.units + d.twos;
    let mut z = vec![Z4::ZERO; n];
    for i in 0..d.units {
        z[i] = d.rhs[i];
    }
    for i in d.units..rank {
        if d.rhs[i].is_odd() {
            return Ok(None);
        }
        z[i] = Z4::new(d.rhs[i].value() / 2);
    }
    if d.rhs[rank..].iter().any(|v| !v.is_zero()) {
        return Ok(None);
    }
    let mut kernel_z: Vec<Vec<Z4>> = Vec::new();
    for i in d.units..rank {
        let mut g = vec![Z4::ZERO; n];
        g[i] = Z4::TWO;
        kernel_z.push(g);
    }
    for i in rank..n {
        let mut g = vec![Z4::ZERO; n];
        g[i] = Z4::ONE;
        kernel_z.push(g);
    }
    let q = &d.col_transform;
    let to_x = |z: &[Z4], offset: bool| -> Vec<Z4> {
        let y = q.mul_vec(z).expect("column transform is square");
        y.iter()
            .zip(&mask.0)
            .map(|(&v, p)| match p {
                Parity::Odd => Z4::TWO * v + if offset { Z4::ONE } else { Z4::ZERO },
                Parity::Free => v,
            })
            .collect()
    };
    let particular = to_x(&z, true);
    let generators: Vec<Vec<Z4>> = kernel_z.iter().map(|g| to_x(g, false)).collect();
    let howell = HowellBasis::new(n, &generators);
    Ok(Some(Z4SolutionSpace {
        particular: howell.reduce(&particular),
        generators: howell.generators(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::z4::Parity::{Free, Odd};

    fn brute_force(a: &Z4Matrix, b: &[Z4], mask: &ParityMask) -> Vec<Vec<Z4>> {
        let n = a.cols();
        let mut out = Vec::new();
        for code in 0..4usize.pow(n as u32) {
            let x: Vec<Z4> = (0..n).map(|i| Z4::new((code >> (2 * i)) as u8 & 3)).collect();
            if mask.admits(&x) && a.mul_vec(&x).unwrap() == b {
                out.push(x);
            }
        }
        out
    }

    #[test]
    fn arithmetic() {
        assert_eq!(Z4::THREE + Z4::THREE, Z4::TWO);
        assert_eq!(-Z4::ONE, Z4::THREE);
        assert_eq!(Z4::TWO * Z4::TWO, Z4::ZERO);
        assert_eq!(Z4::from_i64(-5), Z4::THREE);
        assert_eq!(Z4::TWO.inverse(), None);
        assert_eq!(Z4::THREE.inverse(), Some(Z4::THREE));
    }

    #[test]
    fn odd_pair_summing_to_zero() {
        let a = Z4Matrix::from_rows(2, &[vec![1, 1]]).unwrap();
        let mask = ParityMask(vec![Odd, Odd]);
        let b = z4_vec(&[0]);
        let all = brute_force(&a, &b, &mask);
        assert_eq!(all.len(), 2);
        assert!(all.contains(&z4_vec(&[1, 3])));
        let x = z4_solve_parity(&a, &b, &mask).unwrap().unwrap();
        assert_eq!(x, z4_vec(&[1, 3]));
        let space = z4_solution_space(&a, &b, &mask).unwrap().unwrap();
        assert_eq!(space.generators, vec![z4_vec(&[2, 2])]);
    }

    #[test]
    fn two_times_x_is_never_one() {
        let a = Z4Matrix::from_rows(1, &[vec![2]]).unwrap();
        let r = z4_solve_parity(&a, &z4_vec(&[1]), &ParityMask(vec![Free])).unwrap();
        assert_eq!(r, None);
    }

    #[test]
    fn unconstrained_odd_unknown() {
        let a = Z4Matrix::zeros(0, 1);
        let x = z4_solve_parity(&a, &[], &ParityMask(vec![Odd])).unwrap().unwrap();
        assert_eq!(x, z4_vec(&[1]));
    }

    #[test]
    fn identity_has_no_generators() {
        let a = Z4Matrix::identity(3);
        let s = z4_solution_space(&a, &z4_vec(&[0, 0, 0]), &ParityMask::all_free(3))
            .unwrap()
            .unwrap();
        assert_eq!(s.particular, z4_vec(&[0, 0, 0]));
        assert!(s.generators.is_empty());
    }

    #[test]
    fn free_zero_column() {
        let a = Z4Matrix::from_rows(1, &[vec![0]]).unwrap();
        let s = z4_solution_space(&a, &z4_vec(&[0]), &ParityMask(vec![Free]))
            .unwrap()
            .unwrap();
        assert_eq!(s.particular, z4_vec(&[0]));
        assert_eq!(s.generators, vec![z4_vec(&[1])]);
    }

    #[test]
    fn dimension_errors() {
        let a = Z4Matrix::identity(2);
        assert!(z4_solve_parity(&a, &z4_vec(&[0]), &ParityMask::all_free(2)).is_err());
        assert!(z4_solve_parity(&a, &z4_vec(&[0, 0]), &ParityMask::all_free(3)).is_err());
    }

    #[test]
    fn howell_membership() {
        let h = HowellBasis::new(3, &[z4_vec(&[2, 1, 0]), z4_vec(&[0, 2, 2])]);
        assert!(h.contains(&z4_vec(&[2, 1, 0])));
        assert!(h.contains(&z4_vec(&[0, 2, 0])));
        assert!(h.contains(&z4_vec(&[0, 0, 2])));
        assert!(!h.contains(&z4_vec(&[0, 1, 0])));
        assert!(!h.contains(&z4_vec(&[1, 0, 0])));
    }
}
