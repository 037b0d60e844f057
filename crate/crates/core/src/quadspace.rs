//! Quadratic spaces over GF(2) with Z/4-valued refinements, and their Brown invariant.
//!
//! A space stores the symmetric bilinear form on a basis together with the
//! value of `q` on each basis vector; every other value follows from
//! `q(x + y) = q(x) + q(y) + 2(x∘y)`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{dim_err, Error, Result};
use crate::gf2::{self, Gf2Matrix, Gf2Vec};
use crate::z4::Z4;

/// Largest dimension for which Gauss sums are enumerated.
pub const MAX_ENUM_DIM: usize = 30;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSpace {
    bilinear: Gf2Matrix,
    q_basis: Vec<Z4>,
}

/// Counts `n_k = #{x : q(x) = k}` for `k = 0..3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussSumProfile {
    pub counts: [u64; 4],
}

impl GaussSumProfile {
    /// Real and imaginary part of `Σ i^{q(x)}`.
    pub fn gauss_sum(&self) -> (i64, i64) {
        let [n0, n1, n2, n3] = self.counts.map(|c| c as i64);
        (n0 - n2, n1 - n3)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Brown invariant: a residue mod 8, or `Undefined` for non-informative spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BrownValue {
    Residue(u8),
    Undefined,
}

impl BrownValue {
    pub fn residue(self) -> Option<u8> {
        match self {
            BrownValue::Residue(r) => Some(r),
            BrownValue::Undefined => None,
        }
    }

    pub fn is_defined(self) -> bool {
        matches!(self, BrownValue::Residue(_))
    }
}

impl fmt::Display for BrownValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrownValue::Residue(r) => write!(f, "{r}"),
            BrownValue::Undefined => f.write_str("undefined"),
        }
    }
}

/// Outcome of [`QuadraticSpace::informative_subspace_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubspaceCheck {
    pub informative: bool,
    /// Brown invariant of the restriction, present only when `informative`.
    pub brown: Option<BrownValue>,
}

pub(crate) fn mod8(v: i64) -> u8 {
    v.rem_euclid(8) as u8
}

impl QuadraticSpace {
    pub fn new(bilinear: Gf2Matrix, q_basis: Vec<Z4>) -> Result<Self> {
        if !bilinear.is_symmetric() {
            return Err(Error::Invalid("bilinear form is not symmetric".into()));
        }
        if q_basis.len() != bilinear.rows() {
            return dim_err(format!(
                "{} basis values for a form of dimension {}",
                q_basis.len(),
                bilinear.rows()
            ));
        }
        for (i, q) in q_basis.iter().enumerate() {
            if q.is_odd() != bilinear.get(i, i) {
                return Err(Error::Invalid(format!(
                    "q(e{i}) = {q} does not reduce to e{i}∘e{i} mod 2"
                )));
            }
        }
        Ok(Self { bilinear, q_basis })
    }

    pub fn zero() -> Self {
        Self {
            bilinear: Gf2Matrix::zeros(0, 0),
            q_basis: Vec::new(),
        }
    }

    /// One-dimensional space `⟨v⟩` with `e∘e = v mod 2`.
    pub fn line(value: Z4) -> Self {
        let mut b = Gf2Matrix::zeros(1, 1);
        b.set(0, 0, value.is_odd());
        Self {
            bilinear: b,
            q_basis: vec![value],
        }
    }

    /// Hyperbolic pair `a∘b = 1`, `a∘a = b∘b = 0` with the given (even) values.
    pub fn hyperbolic(qa: Z4, qb: Z4) -> Result<Self> {
        let b = Gf2Matrix::from_nested(&[vec![0, 1], vec![1, 0]])?;
        Self::new(b, vec![qa, qb])
    }

    pub fn dim(&self) -> usize {
        self.q_basis.len()
    }

    pub fn bilinear(&self) -> &Gf2Matrix {
        &self.bilinear
    }

    pub fn q_basis(&self) -> &[Z4] {
        &self.q_basis
    }

    pub fn pair(&self, x: &Gf2Vec, y: &Gf2Vec) -> bool {
        self.bilinear.pair(x, y)
    }

    fn check_len(&self, x: &Gf2Vec) -> Result<()> {
        if x.len() != self.dim() {
            return dim_err(format!(
                "vector of length {} in a space of dimension {}",
                x.len(),
                self.dim()
            ));
        }
        Ok(())
    }

    /// Value of `q` on `x`, folding the extension rule over the support.
    pub fn q_eval(&self, x: &Gf2Vec) -> Result<Z4> {
        self.check_len(x)?;
        Ok(self.q_eval_unchecked(x))
    }

    pub(crate) fn q_eval_unchecked(&self, x: &Gf2Vec) -> Z4 {
        let mut acc = Z4::ZERO;
        let mut seen = 0u64;
        for i in x.support() {
            let cross = (self.bilinear.row_bits(i) & seen).count_ones() & 1 == 1;
            acc = acc + self.q_basis[i] + Z4::double_of_bit(cross);
            seen |= 1 << i;
        }
        acc
    }

    /// Counts of `q`-values over the whole space (Gray-code walk).
    pub fn gauss_profile(&self) -> GaussSumProfile {
        let n = self.dim();
        assert!(n <= MAX_ENUM_DIM, "Gauss sum over dimension {n} is too large");
        let mut counts = [0u64; 4];
        counts[0] = 1;
        let mut x = 0u64;
        let mut q = Z4::ZERO;
        for step in 1u64..(1u64 << n) {
            let k = step.trailing_zeros() as usize;
            let cross = (x & self.bilinear.row_bits(k)).count_ones() & 1 == 1;
            // q(x ± e_k) = q(x) + q(e_k) + 2(x∘e_k); the sign is irrelevant mod 2 on the cross term
            if x >> k & 1 == 1 {
                // removing e_k: q(x) = q(x - e_k) + q(e_k) + 2((x - e_k)∘e_k)
                let x_minus = x ^ (1 << k);
                let cross_minus = (x_minus & self.bilinear.row_bits(k)).count_ones() & 1 == 1;
                q = q - self.q_basis[k] - Z4::double_of_bit(cross_minus);
                x = x_minus;
            } else {
                q = q + self.q_basis[k] + Z4::double_of_bit(cross);
                x |= 1 << k;
            }
            counts[q.value() as usize] += 1;
        }
        GaussSumProfile { counts }
    }

    /// Basis of the radical `V⊥`.
    pub fn radical(&self) -> Vec<Gf2Vec> {
        gf2::kernel(&self.bilinear)
    }

    /// Radical basis and whether `q` vanishes on it.
    ///
    /// `q` is additive on `V⊥`, so checking a basis suffices.
    pub fn radical_and_informative(&self) -> (Vec<Gf2Vec>, bool) {
        let rad = self.radical();
        let informative = rad.iter().all(|v| self.q_eval_unchecked(v).is_zero());
        (rad, informative)
    }

    pub fn is_informative(&self) -> bool {
        self.radical_and_informative().1
    }

    /// Brown invariant read off the Gauss sum.
    pub fn brown(&self) -> BrownValue {
        let (rad, informative) = self.radical_and_informative();
        if !informative {
            return BrownValue::Undefined;
        }
        brown_from_profile(&self.gauss_profile(), self.dim(), rad.len())
    }

    /// Brown invariant via an explicit orthogonal splitting into rank-one
    /// blocks `⟨1⟩`, `⟨3⟩` and hyperbolic planes. Independent of the Gauss sum.
    pub fn brown_by_decomposition(&self) -> BrownValue {
        let n = self.dim();
        let mut pool: Vec<Gf2Vec> = (0..n).map(|i| Gf2Vec::unit(n, i)).collect();
        let mut total: i64 = 0;
        loop {
            if let Some(pos) = pool.iter().position(|v| self.pair(v, v)) {
                let x = pool.swap_remove(pos);
                total += if self.q_eval_unchecked(&x) == Z4::ONE { 1 } else { 7 };
                for y in pool.iter_mut() {
                    if self.pair(y, &x) {
                        *y += x;
                    }
                }
                continue;
            }
            let pair = (0..pool.len()).find_map(|i| {
                (i + 1..pool.len())
                    .find(|&j| self.pair(&pool[i], &pool[j]))
                    .map(|j| (i, j))
            });
            let Some((i, j)) = pair else { break };
            let (x, y) = (pool[i], pool[j]);
            pool.remove(j);
            pool.remove(i);
            let (qx, qy) = (self.q_eval_unchecked(&x), self.q_eval_unchecked(&y));
            if qx == Z4::TWO && qy == Z4::TWO {
                total += 4;
            }
            for z in pool.iter_mut() {
                let zx = self.pair(z, &x);
                let zy = self.pair(z, &y);
                if zy {
                    *z += x;
                }
                if zx {
                    *z += y;
                }
            }
        }
        // what is left spans the radical
        if pool.iter().any(|v| !self.q_eval_unchecked(v).is_zero()) {
            return BrownValue::Undefined;
        }
        BrownValue::Residue(mod8(total))
    }

    /// `q + v`: `q'(x) = q(x) + 2(v∘x)`.
    pub fn shift(&self, v: &Gf2Vec) -> Result<Self> {
        self.check_len(v)?;
        let n = self.dim();
        let q_basis = (0..n)
            .map(|i| self.q_basis[i] + Z4::double_of_bit(self.pair(v, &Gf2Vec::unit(n, i))))
            .collect();
        Ok(Self {
            bilinear: self.bilinear.clone(),
            q_basis,
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut q_basis = self.q_basis.clone();
        q_basis.extend_from_slice(&other.q_basis);
        Self {
            bilinear: self.bilinear.block_sum(&other.bilinear),
            q_basis,
        }
    }

    /// All `u` with `u∘x = x∘x` for every `x`.
    pub fn characteristic_elements(&self) -> Vec<Gf2Vec> {
        let diag = self.bilinear.diagonal();
        match gf2::gf2_solve(&self.bilinear, &diag).expect("square system") {
            None => Vec::new(),
            Some(sol) => gf2::enumerate_span(self.dim(), &sol.kernel)
                .into_iter()
                .map(|k| k + sol.particular)
                .collect(),
        }
    }

    /// Space `(W, q|_W)` on the given basis of `W` (dependent vectors are dropped).
    pub fn restrict(&self, w: &[Gf2Vec]) -> Result<Self> {
        for v in w {
            self.check_len(v)?;
        }
        let basis = gf2::span_basis(self.dim(), w);
        let k = basis.len();
        let mut b = Gf2Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                b.set(i, j, self.pair(&basis[i], &basis[j]));
            }
        }
        let q_basis = basis.iter().map(|v| self.q_eval_unchecked(v)).collect();
        Ok(Self { bilinear: b, q_basis })
    }

    /// Basis of `W⊥ = {x : x∘w = 0 for all w ∈ W}`.
    pub fn orthogonal_complement(&self, w: &[Gf2Vec]) -> Result<Vec<Gf2Vec>> {
        let rows = w
            .iter()
            .map(|v| self.bilinear.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        let m = Gf2Matrix::from_rows(self.dim(), &rows)?;
        Ok(gf2::kernel(&m))
    }

    /// Whether `W` is informative (`W⊥ ⊆ W` and `q|_{W⊥} = 0`); if so, the Brown
    /// invariant of `(W, q|_W)` is reported as well.
    pub fn informative_subspace_check(&self, w: &[Gf2Vec]) -> Result<SubspaceCheck> {
        let perp = self.orthogonal_complement(w)?;
        let contained = perp.iter().all(|x| gf2::in_span(w, x));
        let informative = contained && perp.iter().all(|x| self.q_eval_unchecked(x).is_zero());
        let brown = if informative {
            Some(self.restrict(w)?.brown())
        } else {
            None
        };
        Ok(SubspaceCheck { informative, brown })
    }

    /// A basis of some `H` with `H⊥ = H` and `q|_H = 0`, found by exhaustive search.
    ///
    /// Errors on non-informative input.
    pub fn null_cobordant_witness(&self) -> Result<Option<Vec<Gf2Vec>>> {
        let (rad, informative) = self.radical_and_informative();
        if !informative {
            return Err(Error::Precondition(
                "null-cobordance is only defined for informative spaces".into(),
            ));
        }
        let n = self.dim();
        assert!(n <= 20, "witness search over dimension {n} is too large");
        if (n + rad.len()) % 2 == 1 {
            return Ok(None);
        }
        let target = (n + rad.len()) / 2;
        let start = gf2::span_basis(n, &rad);
        Ok(self.extend_isotropic(start, 1, target))
    }

    fn extend_isotropic(&self, basis: Vec<Gf2Vec>, min: u64, target: usize) -> Option<Vec<Gf2Vec>> {
        if basis.len() == target {
            return Some(basis);
        }
        let n = self.dim();
        let span = gf2::enumerate_span(n, &basis);
        for bits in min..(1u64 << n) {
            let x = Gf2Vec::from_bits(n, bits);
            if !self.q_eval_unchecked(&x).is_zero() {
                continue;
            }
            if basis.iter().any(|h| self.pair(&x, h)) {
                continue;
            }
            // x must be the least element of its coset x + span(basis)
            if span.iter().any(|s| (x + *s).bits() <= bits && !s.is_zero()) {
                continue;
            }
            let mut next = basis.clone();
            next.push(x);
            if let Some(found) = self.extend_isotropic(next, bits + 1, target) {
                return Some(found);
            }
        }
        None
    }

    /// Every parity-legal space of dimension `n`: all symmetric forms × all refinements.
    pub fn enumerate_all(n: usize) -> impl Iterator<Item = QuadraticSpace> {
        assert!(n <= 6, "exhaustive enumeration limited to dimension 6");
        let entries: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let forms = 1u64 << entries.len();
        (0..forms).flat_map(move |fcode| {
            let mut b = Gf2Matrix::zeros(n, n);
            for (k, &(i, j)) in entries.iter().enumerate() {
                if fcode >> k & 1 == 1 {
                    b.set(i, j, true);
                    b.set(j, i, true);
                }
            }
            (0..1u64 << n).map(move |rcode| {
                let q = (0..n)
                    .map(|i| {
                        Z4::new(u8::from(b.get(i, i)) + 2 * (rcode >> i & 1) as u8)
                    })
                    .collect();
                QuadraticSpace {
                    bilinear: b.clone(),
                    q_basis: q,
                }
            })
        })
    }

    /// Uniformly random symmetric form of dimension `n` with a random refinement.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut b = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let bit = rng.gen::<bool>();
                b.set(i, j, bit);
                b.set(j, i, bit);
            }
        }
        let q = (0..n)
            .map(|i| Z4::new(u8::from(b.get(i, i)) + 2 * u8::from(rng.gen::<bool>())))
            .collect();
        Self {
            bilinear: b,
            q_basis: q,
        }
    }
}

/// Reads the Brown residue from a Gauss-sum profile of an informative space
/// of dimension `dim` with radical of dimension `rad`.
pub fn brown_from_profile(profile: &GaussSumProfile, dim: usize, rad: usize) -> BrownValue {
    let (re, im) = profile.gauss_sum();
    let m = dim - rad;
    let half = (rad + m / 2) as u32;
    let s = 1i64 << half;
    let k = if m % 2 == 0 {
        match (re, im) {
            (r, 0) if r == s => 0,
            (0, i) if i == s => 2,
            (r, 0) if r == -s => 4,
            (0, i) if i == -s => 6,
            _ => return BrownValue::Undefined,
        }
    } else {
        match (re, im) {
            (r, i) if r == s && i == s => 1,
            (r, i) if r == -s && i == s => 3,
            (r, i) if r == -s && i == -s => 5,
            (r, i) if r == s && i == -s => 7,
            _ => return BrownValue::Undefined,
        }
    };
    BrownValue::Residue(k)
}

impl fmt::Debug for QuadraticSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticSpace({})", self.to_string().replace('\n', "; "))
    }
}

/// Text form: `dim n`, then `n` rows of 0/1 characters, then one line of `n` residues.
impl fmt::Display for QuadraticSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim())?;
        for r in 0..self.dim() {
            writeln!(f, "{}", self.bilinear.row(r))?;
        }
        let q: Vec<String> = self.q_basis.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", q.join(" "))
    }
}

impl FromStr for QuadraticSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty quadratic space description".into()))?;
        let n: usize = header
            .strip_prefix("dim")
            .map(str::trim)
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected `dim <n>`, got `{header}`")))?;
        if n > gf2::MAX_DIM {
            return Err(Error::TooLarge {
                dim: n,
                max: gf2::MAX_DIM,
            });
        }
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing bilinear row {r}")))?;
            let digits: String = line.chars().filter(|c| !c.is_whitespace()).collect();
            let entries = digits
                .chars()
                .map(|c| match c {
                    '0' => Ok(0u8),
                    '1' => Ok(1u8),
                    other => Err(Error::Parse(format!("bad bilinear entry `{other}`"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if entries.len() != n {
                return Err(Error::Parse(format!(
                    "bilinear row {r} has {} entries, expected {n}",
                    entries.len()
                )));
            }
            rows.push(entries);
        }
        let q_basis: Vec<Z4> = if n == 0 {
            Vec::new()
        } else {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing line of q values".into()))?;
            line.split_whitespace()
                .map(|t| {
                    t.parse::<i64>()
                        .map(Z4::from_i64)
                        .map_err(|_| Error::Parse(format!("bad residue `{t}`")))
                })
                .collect::<Result<_>>()?
        };
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("unexpected trailing line `{extra}`")));
        }
        let bilinear = if n == 0 {
            Gf2Matrix::zeros(0, 0)
        } else {
            Gf2Matrix::from_nested(&rows)?
        };
        QuadraticSpace::new(bilinear, q_basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &[u8]) -> Gf2Vec {
        Gf2Vec::from_slice(e).unwrap()
    }

    fn diag(values: &[u8]) -> QuadraticSpace {
        values
            .iter()
            .fold(QuadraticSpace::zero(), |acc, &q| acc.direct_sum(&QuadraticSpace::line(Z4::new(q))))
    }

    fn radical_line(q: u8) -> QuadraticSpace {
        QuadraticSpace::new(Gf2Matrix::zeros(1, 1), vec![Z4::new(q)]).unwrap()
    }

    #[test]
    fn q_eval_examples() {
        let d = diag(&[1, 1]);
        assert_eq!(d.q_eval(&v(&[0, 0])).unwrap(), Z4::ZERO);
        assert_eq!(d.q_eval(&v(&[1, 1])).unwrap(), Z4::TWO);
        let h = QuadraticSpace::hyperbolic(Z4::ZERO, Z4::ZERO).unwrap();
        assert_eq!(h.q_eval(&v(&[1, 1])).unwrap(), Z4::TWO);
        assert!(h.q_eval(&v(&[1])).is_err());
    }

    #[test]
    fn parity_invariant_enforced() {
        let r = QuadraticSpace::new(Gf2Matrix::identity(1), vec![Z4::TWO]);
        assert!(r.is_err());
        let asym = Gf2Matrix::from_nested(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert!(QuadraticSpace::new(asym, vec![Z4::ZERO; 2]).is_err());
    }

    #[test]
    fn radical_examples() {
        let (rad, inf) = diag(&[1, 3]).radical_and_informative();
        assert!(rad.is_empty() && inf);
        let (rad, inf) = radical_line(0).radical_and_informative();
        assert_eq!(rad, vec![v(&[1])]);
        assert!(inf);
        let (rad, inf) = radical_line(2).radical_and_informative();
        assert_eq!(rad.len(), 1);
        assert!(!inf);
    }

    #[test]
    fn brown_examples() {
        // Gauss sums computed by hand: 1, 1+i, -2, 2i
        assert_eq!(QuadraticSpace::zero().brown(), BrownValue::Residue(0));
        assert_eq!(diag(&[1]).brown(), BrownValue::Residue(1));
        let h22 = QuadraticSpace::hyperbolic(Z4::TWO, Z4::TWO).unwrap();
        assert_eq!(h22.gauss_profile().gauss_sum(), (-2, 0));
        assert_eq!(h22.brown(), BrownValue::Residue(4));
        assert_eq!(diag(&[1, 1]).gauss_profile().gauss_sum(), (0, 2));
        assert_eq!(diag(&[1, 1]).brown(), BrownValue::Residue(2));
        assert_eq!(radical_line(2).brown(), BrownValue::Undefined);
        assert_eq!(radical_line(0).brown(), BrownValue::Residue(0));
    }

    #[test]
    fn shift_examples() {
        let h = QuadraticSpace::hyperbolic(Z4::ZERO, Z4::ZERO).unwrap();
        assert_eq!(h.shift(&v(&[0, 0])).unwrap(), h);
        let s = h.shift(&v(&[1, 0])).unwrap();
        assert_eq!(s.q_basis(), &[Z4::ZERO, Z4::TWO]);
        assert_eq!(s.brown(), BrownValue::Residue(0));
        let one = diag(&[1]);
        let s = one.shift(&v(&[1])).unwrap();
        assert_eq!(s.q_basis(), &[Z4::THREE]);
        assert_eq!(s.gauss_profile().gauss_sum(), (1, -1));
        assert_eq!(s.brown(), BrownValue::Residue(7));
    }

    #[test]
    fn direct_sum_examples() {
        let a = diag(&[1, 3]);
        assert_eq!(a.direct_sum(&QuadraticSpace::zero()), a);
        assert_eq!(diag(&[1, 1]).brown(), BrownValue::Residue(2));
        assert_eq!(diag(&[1, 3]).brown(), BrownValue::Residue(0));
    }

    #[test]
    fn characteristic_examples() {
        assert_eq!(diag(&[1, 1, 1]).characteristic_elements(), vec![v(&[1, 1, 1])]);
        let h = QuadraticSpace::hyperbolic(Z4::ZERO, Z4::ZERO).unwrap();
        assert_eq!(h.characteristic_elements(), vec![v(&[0, 0])]);
        let mut chars = radical_line(0).characteristic_elements();
        chars.sort();
        assert_eq!(chars, vec![v(&[0]), v(&[1])]);
    }

    #[test]
    fn null_cobordant_examples() {
        let h = QuadraticSpace::hyperbolic(Z4::ZERO, Z4::ZERO).unwrap();
        assert_eq!(h.null_cobordant_witness().unwrap(), Some(vec![v(&[1, 0])]));
        assert_eq!(diag(&[1, 3]).null_cobordant_witness().unwrap(), Some(vec![v(&[1, 1])]));
        assert_eq!(diag(&[1]).null_cobordant_witness().unwrap(), None);
        assert!(radical_line(2).null_cobordant_witness().is_err());
    }

    #[test]
    fn informative_subspace_examples() {
        let d = diag(&[1, 3, 1]);
        let all: Vec<Gf2Vec> = (0..3).map(|i| Gf2Vec::unit(3, i)).collect();
        let c = d.informative_subspace_check(&all).unwrap();
        assert!(c.informative);
        assert_eq!(c.brown, Some(d.brown()));

        let h = QuadraticSpace::hyperbolic(Z4::ZERO, Z4::ZERO).unwrap();
        let c = h.informative_subspace_check(&[v(&[1, 0])]).unwrap();
        assert!(c.informative);
        assert_eq!(c.brown, Some(BrownValue::Residue(0)));

        let c = diag(&[1, 1]).informative_subspace_check(&[v(&[1, 0])]).unwrap();
        assert!(!c.informative);
        assert_eq!(c.brown, None);
    }

    #[test]
    fn text_round_trip() {
        let h = QuadraticSpace::hyperbolic(Z4::TWO, Z4::ZERO).unwrap().direct_sum(&diag(&[3]));
        let text = h.to_string();
        assert_eq!(text, "dim 3\n010\n100\n001\n2 0 3");
        assert_eq!(text.parse::<QuadraticSpace>().unwrap(), h);
        assert_eq!("dim 0".parse::<QuadraticSpace>().unwrap(), QuadraticSpace::zero());
        assert!("dim 1\n1\n2".parse::<QuadraticSpace>().is_err());
        assert!("dim 2\n01\n1".parse::<QuadraticSpace>().is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(QuadraticSpace::enumerate_all(0).count(), 1);
        assert_eq!(QuadraticSpace::enumerate_all(2).count(), 8 * 4);
        assert_eq!(QuadraticSpace::enumerate_all(3).count(), 64 * 8);
    }
}
