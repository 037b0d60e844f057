//! Closed surfaces and their unions: first homology mod 2, intersection forms,
//! w₁-duals, refinements and achievable Brown sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Matrix, Gf2Vec};
use crate::quadspace::{BrownValue, QuadraticSpace};
use crate::z4::Z4;

/// Largest first-homology rank for which refinements are enumerated.
pub const MAX_REFINEMENT_RANK: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Sphere,
    /// `S_p`, connected sum of `p` tori.
    Orientable(u32),
    /// `V_p`, connected sum of `p` projective planes.
    Nonorientable(u32),
}

impl SurfaceKind {
    pub fn euler_char(self) -> i64 {
        match self {
            SurfaceKind::Sphere => 2,
            SurfaceKind::Orientable(p) => 2 - 2 * i64::from(p),
            SurfaceKind::Nonorientable(p) => 2 - i64::from(p),
        }
    }

    pub fn h1_rank(self) -> usize {
        match self {
            SurfaceKind::Sphere => 0,
            SurfaceKind::Orientable(p) => 2 * p as usize,
            SurfaceKind::Nonorientable(p) => p as usize,
        }
    }

    pub fn is_orientable(self) -> bool {
        !matches!(self, SurfaceKind::Nonorientable(_))
    }

    /// Nonorientable with even Euler characteristic.
    pub fn is_even_nonorientable(self) -> bool {
        matches!(self, SurfaceKind::Nonorientable(p) if p % 2 == 0)
    }

    /// Order used inside a union: ascending χ, orientable first on ties.
    fn sort_key(self) -> (i64, bool, u32) {
        let p = match self {
            SurfaceKind::Sphere => 0,
            SurfaceKind::Orientable(p) | SurfaceKind::Nonorientable(p) => p,
        };
        (self.euler_char(), !self.is_orientable(), p)
    }

    fn intersection_block(self) -> Gf2Matrix {
        match self {
            SurfaceKind::Sphere => Gf2Matrix::zeros(0, 0),
            SurfaceKind::Nonorientable(p) => Gf2Matrix::identity(p as usize),
            SurfaceKind::Orientable(p) => {
                let n = 2 * p as usize;
                let mut m = Gf2Matrix::zeros(n, n);
                for k in 0..p as usize {
                    m.set(2 * k, 2 * k + 1, true);
                    m.set(2 * k + 1, 2 * k, true);
                }
                m
            }
        }
    }
}

impl Ord for SurfaceKind {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for SurfaceKind {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::Sphere => f.write_str("S"),
            SurfaceKind::Orientable(p) => write!(f, "S{p}"),
            SurfaceKind::Nonorientable(p) => write!(f, "V{p}"),
        }
    }
}

impl FromStr for SurfaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown surface token `{s}`"));
        let (head, tail) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        match head {
            "S" if tail.is_empty() => Ok(SurfaceKind::Sphere),
            "S" | "V" => {
                if !tail.chars().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                let p: u32 = tail.parse().map_err(|_| bad())?;
                if p == 0 {
                    return Err(Error::Parse(format!("surface parameter must be positive in `{s}`")));
                }
                Ok(if head == "S" {
                    SurfaceKind::Orientable(p)
                } else {
                    SurfaceKind::Nonorientable(p)
                })
            }
            _ => Err(bad()),
        }
    }
}

/// A multiset of closed connected surfaces, kept in canonical component order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SurfaceUnion {
    components: Vec<SurfaceKind>,
}

impl SurfaceUnion {
    pub fn new(mut components: Vec<SurfaceKind>) -> Self {
        components.sort();
        Self { components }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn components(&self) -> &[SurfaceKind] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn euler_char(&self) -> i64 {
        self.components.iter().map(|c| c.euler_char()).sum()
    }

    pub fn h1_rank(&self) -> usize {
        self.components.iter().map(|c| c.h1_rank()).sum()
    }

    /// Total mod-2 Betti number `Σ (2 + rank H₁)` over components.
    pub fn total_betti(&self) -> usize {
        self.components.iter().map(|c| 2 + c.h1_rank()).sum()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut c = self.components.clone();
        c.extend_from_slice(&other.components);
        Self::new(c)
    }

    pub fn has_even_nonorientable(&self) -> bool {
        self.components.iter().any(|c| c.is_even_nonorientable())
    }

    pub fn count(&self, kind: SurfaceKind) -> usize {
        self.components.iter().filter(|&&c| c == kind).count()
    }

    /// Distinct kinds with multiplicities, in canonical order.
    pub fn multiplicities(&self) -> Vec<(SurfaceKind, usize)> {
        let mut out: Vec<(SurfaceKind, usize)> = Vec::new();
        for &c in &self.components {
            match out.last_mut() {
                Some((k, n)) if *k == c => *n += 1,
                _ => out.push((c, 1)),
            }
        }
        out
    }

    /// Every split into `(A, self − A)`, one per sub-multiset `A`.
    pub fn splits(&self) -> Vec<(SurfaceUnion, SurfaceUnion)> {
        let mult = self.multiplicities();
        let mut out = vec![(Vec::new(), Vec::new())];
        for (kind, n) in mult {
            let mut next = Vec::with_capacity(out.len() * (n + 1));
            for (a, b) in &out {
                for k in 0..=n {
                    let mut a2: Vec<SurfaceKind> = a.clone();
                    let mut b2: Vec<SurfaceKind> = b.clone();
                    a2.extend(std::iter::repeat(kind).take(k));
                    b2.extend(std::iter::repeat(kind).take(n - k));
                    next.push((a2, b2));
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|(a, b)| (SurfaceUnion::new(a), SurfaceUnion::new(b)))
            .collect()
    }

    /// Unordered splits `{A, B}`, each listed once.
    pub fn unordered_splits(&self) -> Vec<(SurfaceUnion, SurfaceUnion)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (a, b) in self.splits() {
            let (x, y) = if a.to_string() <= b.to_string() { (a, b) } else { (b, a) };
            if seen.insert((x.to_string(), y.to_string())) {
                out.push((x, y));
            }
        }
        out
    }

    pub fn homology_model(&self) -> FirstHomology {
        FirstHomology::of(self)
    }

    /// All `2^rank` refinements of the intersection form, in the order of the
    /// binary code whose bit `i` adds 2 to the value on basis vector `i`.
    pub fn refinements(&self) -> Result<impl Iterator<Item = QuadraticSpace>> {
        let h = self.homology_model();
        let n = h.rank;
        if n > MAX_REFINEMENT_RANK {
            return Err(Error::TooLarge {
                dim: n,
                max: MAX_REFINEMENT_RANK,
            });
        }
        Ok((0..1u64 << n).map(move |code| h.refinement(code)))
    }

    pub fn achievable_brown_set(&self) -> Result<BTreeSet<u8>> {
        Ok(self
            .refinements()?
            .filter_map(|s| s.brown().residue())
            .collect())
    }

    /// Brown residues of `(W, q|_W)` for `W` the annihilator of `w₁`, over all
    /// refinements for which the restriction is informative.
    pub fn annihilator_brown_set(&self) -> Result<BTreeSet<u8>> {
        let w = self.homology_model().w1_annihilator();
        let mut out = BTreeSet::new();
        for s in self.refinements()? {
            if let BrownValue::Residue(b) = s.restrict(&w)?.brown() {
                out.insert(b);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SurfaceUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .multiplicities()
            .into_iter()
            .map(|(k, n)| if n == 1 { k.to_string() } else { format!("{n}{k}") })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

/// Token grammar `4V1+2S`; whitespace and order are ignored. An empty string,
/// `0` or `∅` denotes the empty union.
impl FromStr for SurfaceUnion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() || text == "0" || text == "∅" {
            return Ok(Self::empty());
        }
        let mut comps = Vec::new();
        for term in text.split('+') {
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
            let (count, token) = term.split_at(digits);
            let n: usize = if count.is_empty() {
                1
            } else {
                count
                    .parse()
                    .ok()
                    .filter(|&n: &usize| n > 0)
                    .ok_or_else(|| Error::Parse(format!("malformed multiplicity in `{term}`")))?
            };
            let kind: SurfaceKind = token.parse()?;
            comps.extend(std::iter::repeat(kind).take(n));
        }
        Ok(Self::new(comps))
    }
}

/// First homology mod 2 of a surface union with its intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstHomology {
    pub rank: usize,
    pub bilinear: Gf2Matrix,
    pub w1_dual: Gf2Vec,
    pub component_blocks: Vec<Range<usize>>,
}

impl FirstHomology {
    fn of(u: &SurfaceUnion) -> Self {
        let mut bilinear = Gf2Matrix::zeros(0, 0);
        let mut blocks = Vec::with_capacity(u.len());
        let mut w1_bits = Vec::new();
        for &c in u.components() {
            let start = bilinear.rows();
            bilinear = bilinear.block_sum(&c.intersection_block());
            blocks.push(start..bilinear.rows());
            w1_bits.extend(std::iter::repeat(u8::from(!c.is_orientable())).take(c.h1_rank()));
        }
        let rank = bilinear.rows();
        let w1_dual = Gf2Vec::from_slice(&w1_bits).expect("rank within bit-vector capacity");
        let h = Self {
            rank,
            bilinear,
            w1_dual,
            component_blocks: blocks,
        };
        assert!(h.w1_is_characteristic(), "w1 dual must be characteristic");
        h
    }

    /// `e_i∘w₁ = e_i∘e_i` on every basis vector.
    pub fn w1_is_characteristic(&self) -> bool {
        (0..self.rank).all(|i| {
            let e = Gf2Vec::unit(self.rank, i);
            self.bilinear.pair(&e, &self.w1_dual) == self.bilinear.get(i, i)
        })
    }

    /// The refinement with `q(e_i) = e_i∘e_i + 2·(bit i of code)`.
    pub fn refinement(&self, code: u64) -> QuadraticSpace {
        let q = (0..self.rank)
            .map(|i| Z4::new(u8::from(self.bilinear.get(i, i)) + 2 * (code >> i & 1) as u8))
            .collect();
        QuadraticSpace::new(self.bilinear.clone(), q).expect("parity-legal by construction")
    }

    /// `w₁` restricted to one component's block.
    pub fn component_w1(&self, component: usize) -> Result<Gf2Vec> {
        let block = self
            .component_blocks
            .get(component)
            .ok_or_else(|| Error::Invalid(format!("no component {component}")))?;
        if block.is_empty() {
            return Err(Error::Invalid(format!(
                "component {component} has no first homology"
            )));
        }
        let mut v = Gf2Vec::zeros(self.rank);
        for i in block.clone() {
            v.set(i, self.w1_dual.get(i));
        }
        Ok(v)
    }

    /// Basis of `{x : x∘w₁ = 0}`.
    pub fn w1_annihilator(&self) -> Vec<Gf2Vec> {
        let row = self.bilinear.mul_vec(&self.w1_dual).expect("square form");
        let m = Gf2Matrix::from_rows(self.rank, &[row]).expect("one row of matching length");
        gf2::kernel(&m)
    }
}

/// Value of `q` on the `w₁`-dual of one component.
pub fn w1_value(space: &QuadraticSpace, h: &FirstHomology, component: usize) -> Result<Z4> {
    if space.bilinear() != &h.bilinear {
        return Err(Error::Invalid("quadratic space does not refine this homology".into()));
    }
    space.q_eval(&h.component_w1(component)?)
}

/// One refinement choice on a single component, summarised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentState {
    pub brown: u8,
    pub w1: Z4,
}

/// Distinct `(Br q, q(w₁))` over all refinements of one component, each with a
/// representative list of basis values.
pub fn component_profile(kind: SurfaceKind) -> Result<BTreeMap<ComponentState, Vec<Z4>>> {
    let u = SurfaceUnion::new(vec![kind]);
    let h = u.homology_model();
    let mut out = BTreeMap::new();
    for s in u.refinements()? {
        let brown = s
            .brown()
            .residue()
            .expect("surface intersection forms are nonsingular");
        let w1 = s.q_eval(&h.w1_dual)?;
        out.entry(ComponentState { brown, w1 })
            .or_insert_with(|| s.q_basis().to_vec());
    }
    Ok(out)
}

/// Arithmetic data of a membrane: normal Euler number, self-intersections, Euler characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MembraneData {
    pub normal_euler: i64,
    pub self_intersections: u64,
    pub euler_char: i64,
}

/// `P₂[M] = M∘M + 2χ(M)` with `M∘M = e + 2i`.
pub fn pontrjagin_square_surface(m: &MembraneData) -> Z4 {
    Z4::from_i64(m.normal_euler)
        + Z4::from_i64(2 * (m.self_intersections % 2) as i64)
        + Z4::from_i64(2 * m.euler_char)
}

/// Fixed-point data: two-sided circles, one-sided circles, isolated points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct FixedPointData {
    pub two_sided_circles: usize,
    pub one_sided_circles: usize,
    pub isolated_points: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClassTerm {
    /// `[l_i]`
    TwoSided(usize),
    /// `[n_j]`
    OneSided(usize),
    /// `[P_k]`
    Point(usize),
    /// `⟨n_j⟩`, the point class carried by a one-sided circle
    OneSidedPoint(usize),
}

impl fmt::Display for ClassTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTerm::TwoSided(i) => write!(f, "[l{i}]"),
            ClassTerm::OneSided(j) => write!(f, "[n{j}]"),
            ClassTerm::Point(k) => write!(f, "[P{k}]"),
            ClassTerm::OneSidedPoint(j) => write!(f, "⟨n{j}⟩"),
        }
    }
}

/// Symbolic Kalinin class `Σ[l_i] + Σ[n_j] + Σ[P_k] + Σ⟨n_j⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KalininClass {
    pub terms: Vec<ClassTerm>,
    pub one_cycles: usize,
    pub zero_classes: usize,
}

impl KalininClass {
    pub fn zero_parity(&self) -> usize {
        self.zero_classes % 2
    }
}

impl fmt::Display for KalininClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn kalinin_class(f: &FixedPointData) -> KalininClass {
    let mut terms = Vec::new();
    terms.extend((1..=f.two_sided_circles).map(ClassTerm::TwoSided));
    terms.extend((1..=f.one_sided_circles).map(ClassTerm::OneSided));
    terms.extend((1..=f.isolated_points).map(ClassTerm::Point));
    terms.extend((1..=f.one_sided_circles).map(ClassTerm::OneSidedPoint));
    KalininClass {
        terms,
        one_cycles: f.two_sided_circles + f.one_sided_circles,
        zero_classes: f.isolated_points + f.one_sided_circles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(s: &str) -> SurfaceUnion {
        s.parse().unwrap()
    }

    fn set(v: &[u8]) -> BTreeSet<u8> {
        v.iter().copied().collect()
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(u("4V1+2S").euler_char(), 8);
        assert_eq!(u("V10").euler_char(), -8);
        assert_eq!(u("").euler_char(), 0);
    }

    #[test]
    fn parsing_and_rendering() {
        assert_eq!(u("4V1+2S").components().len(), 6);
        assert_eq!(u("S+4V1+S").to_string(), "4V1+2S");
        assert_eq!(u("S1+V2+4S").to_string(), "S1+V2+4S");
        assert_eq!(u(" 2S + V2 ").to_string(), "V2+2S");
        assert!("3X".parse::<SurfaceUnion>().is_err());
        assert!("0V1".parse::<SurfaceUnion>().is_err());
        assert!("V0".parse::<SurfaceUnion>().is_err());
        assert!("V1++S".parse::<SurfaceUnion>().is_err());
        assert!("S1x".parse::<SurfaceUnion>().is_err());
    }

    #[test]
    fn homology_models() {
        assert_eq!(u("S").homology_model().rank, 0);
        let t = u("S1").homology_model();
        assert_eq!(t.rank, 2);
        assert!(t.bilinear.get(0, 1) && !t.bilinear.get(0, 0));
        assert!(t.w1_dual.is_zero());
        let v = u("V3").homology_model();
        assert_eq!(v.bilinear, Gf2Matrix::identity(3));
        assert_eq!(v.w1_dual, Gf2Vec::ones(3));
    }

    #[test]
    fn refinement_counts() {
        assert_eq!(u("V1").refinements().unwrap().count(), 2);
        assert_eq!(u("S").refinements().unwrap().count(), 1);
        assert_eq!(u("S1").refinements().unwrap().count(), 4);
        assert!(u("V25").refinements().is_err());
    }

    #[test]
    fn achievable_sets() {
        assert_eq!(u("V1").achievable_brown_set().unwrap(), set(&[1, 7]));
        assert_eq!(u("V2").achievable_brown_set().unwrap(), set(&[0, 2, 6]));
        assert_eq!(u("S1").achievable_brown_set().unwrap(), set(&[0, 4]));
        assert_eq!(u("2S").achievable_brown_set().unwrap(), set(&[0]));
        assert_eq!(u("").achievable_brown_set().unwrap(), set(&[0]));
    }

    #[test]
    fn annihilator_sets() {
        assert_eq!(u("V2").annihilator_brown_set().unwrap(), set(&[0]));
        assert_eq!(u("V1").annihilator_brown_set().unwrap(), set(&[0]));
        assert_eq!(u("S1").annihilator_brown_set().unwrap(), set(&[0, 4]));
    }

    #[test]
    fn w1_values() {
        let h = u("V2").homology_model();
        let q11 = QuadraticSpace::new(h.bilinear.clone(), vec![Z4::ONE, Z4::ONE]).unwrap();
        assert_eq!(w1_value(&q11, &h, 0).unwrap(), Z4::TWO);
        let q13 = QuadraticSpace::new(h.bilinear.clone(), vec![Z4::ONE, Z4::THREE]).unwrap();
        assert_eq!(w1_value(&q13, &h, 0).unwrap(), Z4::ZERO);
        let h1 = u("V1").homology_model();
        let q = QuadraticSpace::new(h1.bilinear.clone(), vec![Z4::ONE]).unwrap();
        assert_eq!(w1_value(&q, &h1, 0).unwrap(), Z4::ONE);
        let hs = u("S+V1").homology_model();
        let q = hs.refinement(0);
        assert!(w1_value(&q, &hs, 1).is_err());
    }

    #[test]
    fn pontrjagin_square_examples() {
        let p = |e, i, c| {
            pontrjagin_square_surface(&MembraneData {
                normal_euler: e,
                self_intersections: i,
                euler_char: c,
            })
        };
        assert_eq!(p(0, 0, 2), Z4::ZERO);
        assert_eq!(p(2, 0, 0), Z4::TWO);
        assert_eq!(p(-1, 1, 1), Z4::THREE);
    }

    #[test]
    fn kalinin_examples() {
        let k = kalinin_class(&FixedPointData {
            two_sided_circles: 1,
            ..Default::default()
        });
        assert_eq!(k.to_string(), "{[l1]}");
        let k = kalinin_class(&FixedPointData {
            one_sided_circles: 1,
            isolated_points: 1,
            ..Default::default()
        });
        assert_eq!(k.to_string(), "{[n1],[P1],⟨n1⟩}");
        assert_eq!(k.zero_parity(), 0);
        assert!(kalinin_class(&FixedPointData::default()).terms.is_empty());
    }

    #[test]
    fn splits_cover_all_submultisets() {
        assert_eq!(u("4V1+2S").splits().len(), 15);
        assert_eq!(u("2S").unordered_splits().len(), 2);
    }
}
