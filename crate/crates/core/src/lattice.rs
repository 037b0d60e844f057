//! Unimodular integral lattices: exact signature and reduction mod 2.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::quadspace::{mod8, BrownValue, QuadraticSpace};
use crate::z4::Z4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularLattice {
    gram: Vec<Vec<i64>>,
    name: Option<String>,
}

/// Result of comparing the Brown invariant of the mod-2 reduction with the signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BrownSignatureCheck {
    pub signature: i64,
    pub signature_mod8: u8,
    pub brown: BrownValue,
    pub equal: bool,
}

fn rational_matrix(gram: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    gram.iter()
        .map(|row| row.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect()
}

fn determinant(gram: &[Vec<i64>]) -> BigRational {
    let n = gram.len();
    let mut m = rational_matrix(gram);
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for k in c..n {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    det
}

impl UnimodularLattice {
    pub fn new(gram: Vec<Vec<i64>>, name: Option<String>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Invalid(format!(
                        "gram matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let det = determinant(&gram);
        if det.abs() != BigRational::one() {
            return Err(Error::Invalid(format!("determinant {det} is not ±1")));
        }
        Ok(Self { gram, name })
    }

    /// Negative definite E8 (minus the Cartan matrix of the tree with arms 1, 2, 4).
    pub fn e8() -> Self {
        let mut g = vec![vec![0i64; 8]; 8];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = -2;
        }
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        for (a, b) in edges {
            g[a][b] = 1;
            g[b][a] = 1;
        }
        Self {
            gram: g,
            name: Some("E8".into()),
        }
    }

    pub fn hyperbolic_plane() -> Self {
        Self {
            gram: vec![vec![0, 1], vec![1, 0]],
            name: Some("U".into()),
        }
    }

    pub fn plus_one() -> Self {
        Self {
            gram: vec![vec![1]],
            name: Some("+1".into()),
        }
    }

    pub fn minus_one() -> Self {
        Self {
            gram: vec![vec![-1]],
            name: Some("-1".into()),
        }
    }

    pub fn zero() -> Self {
        Self {
            gram: Vec::new(),
            name: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.rank(), other.rank());
        let mut g = vec![vec![0i64; a + b]; a + b];
        for i in 0..a {
            g[i][..a].copy_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            g[a + i][a..].copy_from_slice(&other.gram[i]);
        }
        let name = match (&self.name, &other.name) {
            (None, n) | (n, None) if a == 0 || b == 0 => n.clone(),
            (Some(x), Some(y)) => Some(format!("{x}⊕{y}")),
            _ => None,
        };
        Self { gram: g, name }
    }

    /// Gram matrix in the basis given by the rows of `p` (`P·G·Pᵀ`); `p` must be unimodular.
    pub fn change_basis(&self, p: &[Vec<i64>]) -> Result<Self> {
        let n = self.rank();
        if p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("basis change must be square of the lattice rank".into()));
        }
        if determinant(p).abs() != BigRational::one() {
            return Err(Error::Invalid("basis change is not invertible over Z".into()));
        }
        let mut pg = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in 0..n {
                if p[i][k] != 0 {
                    for j in 0..n {
                        pg[i][j] += p[i][k] * self.gram[k][j];
                    }
                }
            }
        }
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = (0..n).map(|k| pg[i][k] * p[j][k]).sum();
            }
        }
        Ok(Self {
            gram: out,
            name: self.name.clone(),
        })
    }

    /// Positive minus negative inertia, by congruence diagonalisation over Q.
    pub fn signature(&self) -> i64 {
        let n = self.rank();
        let mut m = rational_matrix(&self.gram);
        let mut sig = 0i64;
        for k in 0..n {
            if m[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                    m.swap(k, j);
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                    // e_k += e_j turns the diagonal entry into 2·m[k][j]
                    for c in 0..n {
                        let v = m[j][c].clone();
                        m[k][c] += v;
                    }
                    for r in 0..n {
                        let v = m[r][j].clone();
                        m[r][k] += v;
                    }
                } else {
                    unreachable!("unimodular gram matrix has a zero row");
                }
            }
            let pivot = m[k][k].clone();
            sig += if pivot.is_positive() { 1 } else { -1 };
            for r in k + 1..n {
                if m[r][k].is_zero() {
                    continue;
                }
                let f = &m[r][k] / &pivot;
                for c in k..n {
                    let sub = &f * &m[k][c];
                    m[r][c] -= sub;
                }
                for rr in k..n {
                    let sub = &f * &m[rr][k];
                    m[rr][r] -= sub;
                }
            }
        }
        sig
    }

    /// `V = L/2L` with `q(x) = x̄² mod 4`.
    pub fn reduce_mod2(&self) -> QuadraticSpace {
        let n = self.rank();
        let mut b = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                b.set(i, j, self.gram[i][j].rem_euclid(2) == 1);
            }
        }
        let q = (0..n).map(|i| Z4::from_i64(self.gram[i][i])).collect();
        QuadraticSpace::new(b, q).expect("reduction of a symmetric integer matrix is parity-legal")
    }

    pub fn brown_signature_check(&self) -> BrownSignatureCheck {
        let signature = self.signature();
        let brown = self.reduce_mod2().brown();
        assert!(brown.is_defined(), "mod-2 reduction of a unimodular lattice is nonsingular");
        let signature_mod8 = mod8(signature);
        BrownSignatureCheck {
            signature,
            signature_mod8,
            brown,
            equal: brown == BrownValue::Residue(signature_mod8),
        }
    }

    fn named(keyword: &str) -> Option<Self> {
        match keyword {
            "E8" | "e8" => Some(Self::e8()),
            "U" | "u" => Some(Self::hyperbolic_plane()),
            "+1" | "1" => Some(Self::plus_one()),
            "-1" => Some(Self::minus_one()),
            _ => None,
        }
    }
}

impl fmt::Display for UnimodularLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}", self.rank())?;
        for row in &self.gram {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, "\n{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Accepts `rank n` followed by `n` integer rows, a single keyword
/// (`E8`, `U`, `+1`, `-1`), or `sum:` with comma-separated, optionally
/// multiplied keywords such as `sum:E8,U,3*+1`.
impl FromStr for UnimodularLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        if let Some(l) = Self::named(text) {
            return Ok(l);
        }
        if let Some(list) = text.strip_prefix("sum:") {
            let mut acc = Self::zero();
            for item in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (count, key) = match item.split_once('*') {
                    Some((n, k)) => (
                        n.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad multiplicity in `{item}`")))?,
                        k.trim(),
                    ),
                    None => (1, item),
                };
                let block = Self::named(key)
                    .ok_or_else(|| Error::Parse(format!("unknown lattice keyword `{key}`")))?;
                for _ in 0..count {
                    acc = acc.direct_sum(&block);
                }
            }
            acc.name = Some(text.to_string());
            return Ok(acc);
        }
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty lattice description".into()))?;
        let n: usize = header
            .strip_prefix("rank")
            .map(str::trim)
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected `rank <n>` or a keyword, got `{header}`")))?;
        let mut gram = Vec::with_capacity(n);
        for r in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing gram row {r}")))?;
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "gram row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            gram.push(row);
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("unexpected trailing line `{extra}`")));
        }
        Self::new(gram, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(values: &[i64]) -> UnimodularLattice {
        let n = values.len();
        let mut g = vec![vec![0; n]; n];
        for (i, &v) in values.iter().enumerate() {
            g[i][i] = v;
        }
        UnimodularLattice::new(g, None).unwrap()
    }

    #[test]
    fn signatures() {
        assert_eq!(UnimodularLattice::hyperbolic_plane().signature(), 0);
        assert_eq!(UnimodularLattice::e8().signature(), -8);
        assert_eq!(diag(&[1, -1]).signature(), 0);
    }

    #[test]
    fn e8_is_unimodular_and_even() {
        let e8 = UnimodularLattice::e8();
        assert!(UnimodularLattice::new(e8.gram().to_vec(), None).is_ok());
        let v = e8.reduce_mod2();
        assert_eq!(v.dim(), 8);
        assert!(v.q_basis().iter().all(|q| !q.is_odd()));
        assert_eq!(v.brown(), BrownValue::Residue(0));
    }

    #[test]
    fn reductions() {
        let p = UnimodularLattice::plus_one().reduce_mod2();
        assert_eq!(p.q_basis(), &[Z4::ONE]);
        let u = UnimodularLattice::hyperbolic_plane().reduce_mod2();
        assert_eq!(u.q_basis(), &[Z4::ZERO, Z4::ZERO]);
        assert!(u.bilinear().get(0, 1) && !u.bilinear().get(0, 0));
    }

    #[test]
    fn brown_signature_examples() {
        let l = UnimodularLattice::e8().direct_sum(&UnimodularLattice::hyperbolic_plane());
        let c = l.brown_signature_check();
        assert_eq!((c.signature, c.brown, c.equal), (-8, BrownValue::Residue(0), true));
        let c = diag(&[1, 1, 1]).brown_signature_check();
        assert_eq!((c.signature, c.brown, c.equal), (3, BrownValue::Residue(3), true));
        let c = UnimodularLattice::minus_one().brown_signature_check();
        assert_eq!((c.signature, c.brown, c.equal), (-1, BrownValue::Residue(7), true));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(UnimodularLattice::new(vec![vec![2]], None).is_err());
        assert!(UnimodularLattice::new(vec![vec![0, 1], vec![0, 0]], None).is_err());
        assert!(UnimodularLattice::new(vec![vec![1, 0]], None).is_err());
    }

    #[test]
    fn parsing() {
        let l: UnimodularLattice = "sum:E8,U,3*+1".parse().unwrap();
        assert_eq!(l.rank(), 13);
        assert_eq!(l.signature(), -5);
        let l: UnimodularLattice = "rank 2\n0 1\n1 0".parse().unwrap();
        assert_eq!(l.gram(), UnimodularLattice::hyperbolic_plane().gram());
        assert!("sum:E7".parse::<UnimodularLattice>().is_err());
        assert!("rank 2\n1 0".parse::<UnimodularLattice>().is_err());
        assert_eq!(l.to_string(), "rank 2\n0 1\n1 0");
    }

    #[test]
    fn change_basis_preserves_invariants() {
        let l = UnimodularLattice::e8().direct_sum(&UnimodularLattice::plus_one());
        let n = l.rank();
        let mut p: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        p[0][3] = 2;
        p[5][1] = -1;
        let m = l.change_basis(&p).unwrap();
        assert_eq!(m.signature(), l.signature());
        assert!(m.brown_signature_check().equal);
    }
}
