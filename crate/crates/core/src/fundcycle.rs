//! Fundamental cycles of abstract real-curve arrangements over Z/4, the
//! separation they induce, and closed-form values of the form along loops.
//!
//! Homology of the real curves is the free Z/4-module on the circles. The
//! unknowns are ordered `λ` (per P-circle), `κ⁻` (per minus-region), `μ` (per
//! Q-circle), `κ⁺` (per plus-region), with one equation per circle:
//! `Σλ[P] + Σκ⁻∂Z⁻ − 2Σμ[Q] − 2Σκ⁺∂Z⁺ = 0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::z4::{
    z4_solution_space, z4_solve_parity, HowellBasis, Parity, ParityMask, Z4Matrix, Z4,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub label: String,
    /// Euler characteristic, recorded for minus-regions
    pub chi: Option<i64>,
    /// Minus-region tagged as lying on the `+` side
    pub plus_side: bool,
    /// `(circle index, ±1)`; circles are numbered P first, then Q
    pub boundary: Vec<(usize, i8)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CurveArrangement {
    pub p_circles: Vec<String>,
    pub q_circles: Vec<String>,
    pub minus_regions: Vec<Region>,
    pub plus_regions: Vec<Region>,
}

/// Coefficients `λ, κ⁻, μ, κ⁺` of a fundamental cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCycle {
    pub lambda: Vec<Z4>,
    pub kappa_minus: Vec<Z4>,
    pub mu: Vec<Z4>,
    pub kappa_plus: Vec<Z4>,
}

impl FundamentalCycle {
    pub fn to_vec(&self) -> Vec<Z4> {
        [&self.lambda, &self.kappa_minus, &self.mu, &self.kappa_plus]
            .into_iter()
            .flatten()
            .copied()
            .collect()
    }
}

impl fmt::Display for FundamentalCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Z4]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "lambda=({}) kappa-=({}) mu=({}) kappa+=({})",
            show(&self.lambda),
            show(&self.kappa_minus),
            show(&self.mu),
            show(&self.kappa_plus)
        )
    }
}

impl CurveArrangement {
    pub fn circle_count(&self) -> usize {
        self.p_circles.len() + self.q_circles.len()
    }

    pub fn unknown_count(&self) -> usize {
        self.p_circles.len() + self.minus_regions.len() + self.q_circles.len() + self.plus_regions.len()
    }

    pub fn circle_label(&self, c: usize) -> &str {
        let np = self.p_circles.len();
        if c < np {
            &self.p_circles[c]
        } else {
            &self.q_circles[c - np]
        }
    }

    fn incidence(&self, region: &Region) -> Vec<Z4> {
        let mut v = vec![Z4::ZERO; self.circle_count()];
        for &(c, s) in &region.boundary {
            v[c] += Z4::from_i64(i64::from(s));
        }
        v
    }

    /// Checks coefficient signs, labels, and the incidence conditions under
    /// which the two feasibility formulations coincide: each P-circle bounds
    /// at most one minus-region, each Q-circle bounds none or two.
    pub fn validate(&self) -> Result<()> {
        let mut labels = BTreeSet::new();
        for l in self
            .p_circles
            .iter()
            .chain(&self.q_circles)
            .chain(self.minus_regions.iter().map(|r| &r.label))
            .chain(self.plus_regions.iter().map(|r| &r.label))
        {
            if !labels.insert(l.as_str()) {
                return Err(Error::Invalid(format!("duplicate label `{l}`")));
            }
        }
        let n = self.circle_count();
        for r in self.minus_regions.iter().chain(&self.plus_regions) {
            let mut seen = BTreeSet::new();
            for &(c, s) in &r.boundary {
                if c >= n {
                    return Err(Error::Invalid(format!("region `{}` names an undeclared circle", r.label)));
                }
                if s != 1 && s != -1 {
                    return Err(Error::Invalid(format!("region `{}` has a coefficient other than ±1", r.label)));
                }
                if !seen.insert(c) {
                    return Err(Error::Invalid(format!(
                        "region `{}` lists circle `{}` twice",
                        r.label,
                        self.circle_label(c)
                    )));
                }
            }
        }
        let mut minus_count = vec![0usize; n];
        for r in &self.minus_regions {
            for &(c, _) in &r.boundary {
                minus_count[c] += 1;
            }
        }
        let np = self.p_circles.len();
        for (c, &k) in minus_count.iter().enumerate() {
            if c < np && k > 1 {
                return Err(Error::Invalid(format!(
                    "P-circle `{}` bounds {k} minus-regions (at most one allowed)",
                    self.circle_label(c)
                )));
            }
            if c >= np && k != 0 && k != 2 {
                return Err(Error::Invalid(format!(
                    "Q-circle `{}` bounds {k} minus-regions (none or two allowed)",
                    self.circle_label(c)
                )));
            }
        }
        Ok(())
    }

    /// Coefficient matrix of the cycle equation (circles × unknowns) and its parity mask.
    pub fn system(&self) -> (Z4Matrix, ParityMask) {
        let n = self.circle_count();
        let np = self.p_circles.len();
        let mut a = Z4Matrix::zeros(n, self.unknown_count());
        let mut col = 0;
        let mut mask = Vec::with_capacity(self.unknown_count());
        for i in 0..np {
            a.set(i, col, Z4::ONE);
            mask.push(Parity::Odd);
            col += 1;
        }
        for r in &self.minus_regions {
            for (c, v) in self.incidence(r).into_iter().enumerate() {
                a.set(c, col, v);
            }
            mask.push(Parity::Odd);
            col += 1;
        }
        for j in 0..self.q_circles.len() {
            a.set(np + j, col, -Z4::TWO);
            mask.push(Parity::Free);
            col += 1;
        }
        for r in &self.plus_regions {
            for (c, v) in self.incidence(r).into_iter().enumerate() {
                a.set(c, col, -(Z4::TWO * v));
            }
            mask.push(Parity::Free);
            col += 1;
        }
        (a, ParityMask(mask))
    }

    fn split(&self, x: &[Z4]) -> FundamentalCycle {
        let np = self.p_circles.len();
        let nm = self.minus_regions.len();
        let nq = self.q_circles.len();
        FundamentalCycle {
            lambda: x[..np].to_vec(),
            kappa_minus: x[np..np + nm].to_vec(),
            mu: x[np + nm..np + nm + nq].to_vec(),
            kappa_plus: x[np + nm + nq..].to_vec(),
        }
    }

    /// Whether `c` satisfies the cycle equation and the oddness of `λ`, `κ⁻`.
    pub fn is_fundamental_cycle(&self, c: &FundamentalCycle) -> bool {
        let (a, mask) = self.system();
        let x = c.to_vec();
        x.len() == a.cols()
            && mask.admits(&x)
            && a.mul_vec(&x).map(|r| r.iter().all(|v| v.is_zero())).unwrap_or(false)
    }
}

fn parse_boundary(text: &str, circles: &BTreeMap<&str, usize>) -> Result<Vec<(usize, i8)>> {
    text.split_whitespace()
        .map(|term| {
            let (coef, name) = term
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("boundary term `{term}` must read ±1*<circle>")))?;
            let s: i8 = match coef {
                "1" | "+1" => 1,
                "-1" => -1,
                _ => return Err(Error::Parse(format!("coefficient `{coef}` is not ±1"))),
            };
            let c = circles
                .get(name)
                .copied()
                .ok_or_else(|| Error::Parse(format!("undeclared circle `{name}`")))?;
            Ok((c, s))
        })
        .collect()
}

/// Line-oriented format: `P <label>`, `Q <label>`,
/// `Z- <label> chi=<int> [side=+] : ±1*<circle> …`, `Z+ <label> : ±1*<circle> …`.
/// Circle declarations may appear anywhere; `#` starts a comment.
impl FromStr for CurveArrangement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let mut arr = CurveArrangement::default();
        for &(no, line) in &lines {
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("P") | Some("Q") => {
                    let label = parts
                        .next()
                        .ok_or_else(|| Error::Parse(format!("line {no}: missing circle label")))?;
                    if parts.next().is_some() {
                        return Err(Error::Parse(format!("line {no}: trailing text after circle label")));
                    }
                    if line.starts_with('P') {
                        arr.p_circles.push(label.to_string());
                    } else {
                        arr.q_circles.push(label.to_string());
                    }
                }
                Some("Z-") | Some("Z+") => {}
                Some(other) => {
                    return Err(Error::Parse(format!("line {no}: unknown record `{other}`")))
                }
                None => {}
            }
        }
        let mut circles = BTreeMap::new();
        for (i, l) in arr.p_circles.iter().chain(&arr.q_circles).enumerate() {
            if circles.insert(l.as_str(), i).is_some() {
                return Err(Error::Parse(format!("duplicate circle `{l}`")));
            }
        }
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        for &(no, line) in &lines {
            let is_minus = line.starts_with("Z-");
            if !is_minus && !line.starts_with("Z+") {
                continue;
            }
            let (head, body) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {no}: region needs `:` before its boundary")))?;
            let mut fields = head.split_whitespace().skip(1);
            let label = fields
                .next()
                .ok_or_else(|| Error::Parse(format!("line {no}: missing region label")))?
                .to_string();
            let mut chi = None;
            let mut plus_side = false;
            for f in fields {
                if let Some(v) = f.strip_prefix("chi=") {
                    chi = Some(
                        v.parse::<i64>()
                            .map_err(|_| Error::Parse(format!("line {no}: bad chi `{v}`")))?,
                    );
                } else if f == "side=+" && is_minus {
                    plus_side = true;
                } else {
                    return Err(Error::Parse(format!("line {no}: unknown field `{f}`")));
                }
            }
            if is_minus && chi.is_none() {
                return Err(Error::Parse(format!("line {no}: minus-region needs chi=<int>")));
            }
            let region = Region {
                label,
                chi,
                plus_side,
                boundary: parse_boundary(body, &circles).map_err(|e| match e {
                    Error::Parse(m) => Error::Parse(format!("line {no}: {m}")),
                    other => other,
                })?,
            };
            if is_minus {
                minus.push(region);
            } else {
                plus.push(region);
            }
        }
        arr.minus_regions = minus;
        arr.plus_regions = plus;
        Ok(arr)
    }
}

impl fmt::Display for CurveArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.p_circles {
            writeln!(f, "P {p}")?;
        }
        for q in &self.q_circles {
            writeln!(f, "Q {q}")?;
        }
        let terms = |r: &Region| {
            r.boundary
                .iter()
                .map(|&(c, s)| format!("{}1*{}", if s > 0 { "+" } else { "-" }, self.circle_label(c)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        for r in &self.minus_regions {
            let side = if r.plus_side { " side=+" } else { "" };
            writeln!(f, "Z- {} chi={}{} : {}", r.label, r.chi.unwrap_or(0), side, terms(r))?;
        }
        for r in &self.plus_regions {
            writeln!(f, "Z+ {} : {}", r.label, terms(r))?;
        }
        Ok(())
    }
}

pub fn solve_fundamental_cycle(arr: &CurveArrangement) -> Result<Option<FundamentalCycle>> {
    arr.validate()?;
    let (a, mask) = arr.system();
    let zero = vec![Z4::ZERO; a.rows()];
    Ok(z4_solve_parity(&a, &zero, &mask)?.map(|x| arr.split(&x)))
}

/// Whether `Σ[P]` lies in the subgroup generated by `2[P]`, `2[Q]`, `2∂Z⁺`
/// and the relations `∂Z⁻`.
pub fn subgroup_membership(arr: &CurveArrangement) -> Result<bool> {
    arr.validate()?;
    let n = arr.circle_count();
    let np = arr.p_circles.len();
    let mut gens: Vec<Vec<Z4>> = Vec::new();
    for c in 0..n {
        let mut g = vec![Z4::ZERO; n];
        g[c] = Z4::TWO;
        gens.push(g);
    }
    for r in &arr.plus_regions {
        gens.push(arr.incidence(r).into_iter().map(|v| Z4::TWO * v).collect());
    }
    for r in &arr.minus_regions {
        gens.push(arr.incidence(r));
    }
    let mut a = Z4Matrix::zeros(n, gens.len());
    for (k, g) in gens.iter().enumerate() {
        for (c, &v) in g.iter().enumerate() {
            a.set(c, k, v);
        }
    }
    let target: Vec<Z4> = (0..n).map(|c| if c < np { Z4::ONE } else { Z4::ZERO }).collect();
    Ok(z4_solve_parity(&a, &target, &ParityMask::all_free(gens.len()))?.is_some())
}

/// Feasibility by exhaustive search over all parity-legal coefficient vectors.
pub fn brute_force_cycles(arr: &CurveArrangement) -> Result<Vec<FundamentalCycle>> {
    arr.validate()?;
    let (a, mask) = arr.system();
    let n = a.cols();
    if n > 10 {
        return Err(Error::TooLarge { dim: n, max: 10 });
    }
    let mut out = Vec::new();
    for code in 0..4u64.pow(n as u32) {
        let x: Vec<Z4> = (0..n).map(|i| Z4::new((code >> (2 * i)) as u8)).collect();
        if mask.admits(&x) && a.mul_vec(&x)?.iter().all(|v| v.is_zero()) {
            out.push(arr.split(&x));
        }
    }
    Ok(out)
}

/// Indices split by the parity of their coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParityGrouping {
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
}

impl ParityGrouping {
    fn of(values: &[Z4]) -> Self {
        let mut g = ParityGrouping::default();
        for (i, v) in values.iter().enumerate() {
            if v.is_odd() {
                g.odd.push(i)
            } else {
                g.even.push(i)
            }
        }
        g
    }

    pub fn same_group(&self, a: usize, b: usize) -> bool {
        self.even.contains(&a) == self.even.contains(&b)
    }
}

/// Quoters read off a cycle: Q-circles by parity of `μ`, plus-regions by parity of `κ⁺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub q_circles: ParityGrouping,
    pub plus_regions: ParityGrouping,
}

pub fn separation_from_cycle(c: &FundamentalCycle) -> Separation {
    Separation {
        q_circles: ParityGrouping::of(&c.mu),
        plus_regions: ParityGrouping::of(&c.kappa_plus),
    }
}

/// Parity-preserving homogeneous solutions compared with the three standard shifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguityReport {
    pub particular: FundamentalCycle,
    /// Howell-reduced generators of all differences between fundamental cycles
    pub generators: Vec<Vec<Z4>>,
    /// `2[Z]`, `2([Z⁺] + [P])`, `2([Z⁻⁺] + [Q])` in coefficient coordinates
    pub canonical: [Vec<Z4>; 3],
    /// Which standard shifts solve the homogeneous system
    pub canonical_are_solutions: [bool; 3],
    pub solutions_within_canonical_span: bool,
    pub canonical_within_solutions: bool,
}

pub fn canonical_shifts(arr: &CurveArrangement) -> [Vec<Z4>; 3] {
    let np = arr.p_circles.len();
    let nm = arr.minus_regions.len();
    let nq = arr.q_circles.len();
    let n = arr.unknown_count();
    let mut z = vec![Z4::ZERO; n];
    let mut zp = vec![Z4::ZERO; n];
    let mut zq = vec![Z4::ZERO; n];
    for (k, r) in arr.minus_regions.iter().enumerate() {
        z[np + k] = Z4::TWO;
        if r.plus_side {
            zq[np + k] = Z4::TWO;
        }
    }
    for l in 0..arr.plus_regions.len() {
        z[np + nm + nq + l] = Z4::ONE;
        zp[np + nm + nq + l] = Z4::ONE;
    }
    for i in 0..np {
        zp[i] = Z4::TWO;
    }
    for j in 0..nq {
        zq[np + nm + j] = Z4::ONE;
    }
    [z, zp, zq]
}

pub fn ambiguity_generators(arr: &CurveArrangement) -> Result<AmbiguityReport> {
    arr.validate()?;
    let (a, mask) = arr.system();
    let zero = vec![Z4::ZERO; a.rows()];
    let space = z4_solution_space(&a, &zero, &mask)?
        .ok_or_else(|| Error::Precondition("the arrangement admits no fundamental cycle".into()))?;
    let n = a.cols();
    let canonical = canonical_shifts(arr);
    let canonical_are_solutions = canonical.clone().map(|v| {
        a.mul_vec(&v).map(|r| r.iter().all(|x| x.is_zero())).unwrap_or(false)
    });
    let canon_span = HowellBasis::new(n, &canonical);
    let sol_span = HowellBasis::new(n, &space.generators);
    Ok(AmbiguityReport {
        particular: arr.split(&space.particular),
        solutions_within_canonical_span: space.generators.iter().all(|g| canon_span.contains(g)),
        canonical_within_solutions: canonical.iter().all(|g| sol_span.contains(g)),
        generators: space.generators,
        canonical,
        canonical_are_solutions,
    })
}

/// Random arrangement satisfying [`CurveArrangement::validate`] with at most
/// `max_unknowns` unknowns.
pub fn random_arrangement<R: Rng + ?Sized>(rng: &mut R, max_unknowns: usize) -> CurveArrangement {
    loop {
        let np = rng.gen_range(0..=3);
        let nq = rng.gen_range(0..=3);
        let nm = rng.gen_range(0..=3);
        let npl = rng.gen_range(0..=2);
        if np + nq + nm + npl > max_unknowns || np + nq == 0 {
            continue;
        }
        let mut arr = CurveArrangement {
            p_circles: (1..=np).map(|i| format!("p{i}")).collect(),
            q_circles: (1..=nq).map(|i| format!("q{i}")).collect(),
            minus_regions: (1..=nm)
                .map(|k| Region {
                    label: format!("m{k}"),
                    chi: Some(rng.gen_range(-2..=2)),
                    plus_side: rng.gen(),
                    boundary: Vec::new(),
                })
                .collect(),
            plus_regions: (1..=npl)
                .map(|l| Region {
                    label: format!("z{l}"),
                    chi: None,
                    plus_side: false,
                    boundary: Vec::new(),
                })
                .collect(),
        };
        let sign = |rng: &mut R| if rng.gen() { 1i8 } else { -1 };
        for c in 0..np {
            if nm > 0 && rng.gen_bool(0.8) {
                let k = rng.gen_range(0..nm);
                let s = sign(rng);
                arr.minus_regions[k].boundary.push((c, s));
            }
        }
        for j in 0..nq {
            if nm >= 2 && rng.gen_bool(0.7) {
                let a = rng.gen_range(0..nm);
                let mut b = rng.gen_range(0..nm - 1);
                if b >= a {
                    b += 1;
                }
                for k in [a, b] {
                    let s = sign(rng);
                    arr.minus_regions[k].boundary.push((np + j, s));
                }
            }
        }
        for l in 0..npl {
            for c in 0..np + nq {
                if rng.gen_bool(0.5) {
                    let s = sign(rng);
                    arr.plus_regions[l].boundary.push((c, s));
                }
            }
        }
        debug_assert!(arr.validate().is_ok());
        return arr;
    }
}

/// Loop data: disorienting flag, isolated hits with Q and the plus side, P∩Q points passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct LoopData {
    pub disorienting: bool,
    pub isolated_q_hits: u64,
    pub isolated_plus_hits: u64,
    pub pq_points_passed: u64,
}

/// `2e + 2i_Q + 2i⁺ + i_{P∩Q}` mod 4.
pub fn loop_form_value(d: &LoopData) -> Z4 {
    Z4::double_of_bit(d.disorienting)
        + Z4::double_of_bit(d.isolated_q_hits % 2 == 1)
        + Z4::double_of_bit(d.isolated_plus_hits % 2 == 1)
        + Z4::new((d.pq_points_passed % 4) as u8)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    Tangency,
    MinusRegion { chi: i64 },
    /// A real component of P with the given self-intersection `[P_i]²`
    PComponent { self_intersection: i64 },
    /// Points of `Q⁺_j` on `P⁺` and on `P⁻`
    Linking { plus: i64, minus: i64 },
}

pub fn boundary_value(kind: BoundaryKind) -> Result<Z4> {
    match kind {
        BoundaryKind::Tangency => Ok(Z4::ONE),
        BoundaryKind::MinusRegion { chi } => Ok(Z4::from_i64(2 * chi)),
        BoundaryKind::PComponent { self_intersection } => {
            if self_intersection % 2 != 0 {
                return Err(Error::Invalid(format!(
                    "self-intersection {self_intersection} is odd"
                )));
            }
            Ok(Z4::from_i64(self_intersection / 2))
        }
        BoundaryKind::Linking { plus, minus } => Ok(Z4::from_i64(plus - minus)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::z4::z4_vec;
    use rand::SeedableRng;

    fn arr(s: &str) -> CurveArrangement {
        s.parse().unwrap()
    }

    const DISK: &str = "P p\nZ- d chi=1 : +1*p\n";
    const FREE: &str = "P p\n";
    const PQ: &str = "P p\nQ q\nZ- d chi=1 : +1*p\nZ+ e : +1*q\n";
    const ANNULUS: &str = "P a\nP b\nZ- m chi=0 : +1*a +1*b\n";

    #[test]
    fn solver_examples() {
        let c = solve_fundamental_cycle(&arr(DISK)).unwrap().unwrap();
        assert_eq!(c.lambda, z4_vec(&[1]));
        assert_eq!(c.kappa_minus, z4_vec(&[3]));
        assert!(solve_fundamental_cycle(&arr(FREE)).unwrap().is_none());
        let a = arr(PQ);
        let c = solve_fundamental_cycle(&a).unwrap().unwrap();
        assert!(a.is_fundamental_cycle(&c));
        let all = brute_force_cycles(&a).unwrap();
        let expected = FundamentalCycle {
            lambda: z4_vec(&[1]),
            kappa_minus: z4_vec(&[3]),
            mu: z4_vec(&[0]),
            kappa_plus: z4_vec(&[0]),
        };
        assert!(all.contains(&expected));
    }

    #[test]
    fn membership_examples() {
        assert!(subgroup_membership(&arr(DISK)).unwrap());
        assert!(!subgroup_membership(&arr(FREE)).unwrap());
        let a = arr(ANNULUS);
        assert!(subgroup_membership(&a).unwrap());
        let c = solve_fundamental_cycle(&a).unwrap().unwrap();
        assert!(a.is_fundamental_cycle(&c));
    }

    #[test]
    fn separation_examples() {
        let c = FundamentalCycle {
            lambda: vec![],
            kappa_minus: vec![],
            mu: z4_vec(&[0, 1]),
            kappa_plus: z4_vec(&[0, 2]),
        };
        let s = separation_from_cycle(&c);
        assert!(!s.q_circles.same_group(0, 1));
        assert!(s.plus_regions.same_group(0, 1));
        let c = solve_fundamental_cycle(&arr(PQ)).unwrap().unwrap();
        let s = separation_from_cycle(&c);
        assert_eq!(s.q_circles.even, vec![0]);
        assert_eq!(s.plus_regions.even, vec![0]);
    }

    #[test]
    fn ambiguity_examples() {
        let a = arr(PQ);
        let r = ambiguity_generators(&a).unwrap();
        let all = brute_force_cycles(&a).unwrap();
        let base = r.particular.to_vec();
        let span = HowellBasis::new(a.unknown_count(), &r.generators);
        for c in &all {
            let d: Vec<Z4> = c.to_vec().iter().zip(&base).map(|(&x, &y)| x - y).collect();
            assert!(span.contains(&d));
        }
        assert!(span.contains(&z4_vec(&[2, 2, 0, 0])));
        assert!(ambiguity_generators(&arr(FREE)).is_err());
    }

    #[test]
    fn validation() {
        assert!(solve_fundamental_cycle(&arr("P p\nZ- a chi=1 : +1*p\nZ- b chi=1 : +1*p\n")).is_err());
        assert!(solve_fundamental_cycle(&arr("Q q\nZ- a chi=1 : +1*q\n")).is_err());
        assert!("P p\nZ- a chi=1 : +2*p\n".parse::<CurveArrangement>().is_err());
        assert!("P p\nZ- a : +1*p\n".parse::<CurveArrangement>().is_err());
        assert!("P p\nZ+ a : +1*x\n".parse::<CurveArrangement>().is_err());
        assert!("P p\nQ p\n".parse::<CurveArrangement>().is_err());
    }

    #[test]
    fn text_round_trip() {
        let a = arr("P p\nQ q\nZ- d chi=1 side=+ : +1*p -1*q\nZ- f chi=0 : +1*q\nZ+ e : +1*q\n");
        assert_eq!(a.to_string().parse::<CurveArrangement>().unwrap(), a);
    }

    #[test]
    fn random_arrangements_validate() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..200 {
            let a = random_arrangement(&mut rng, 8);
            assert!(a.validate().is_ok());
            assert!(a.unknown_count() <= 8);
        }
    }

    #[test]
    fn solver_membership_and_brute_force_agree() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let a = random_arrangement(&mut rng, 8);
            let solved = solve_fundamental_cycle(&a).unwrap();
            let brute = brute_force_cycles(&a).unwrap();
            assert_eq!(solved.is_some(), !brute.is_empty(), "{a}");
            assert_eq!(subgroup_membership(&a).unwrap(), !brute.is_empty(), "{a}");
            if let Some(c) = solved {
                assert!(brute.contains(&c));
            }
        }
    }

    #[test]
    fn formula_examples() {
        assert_eq!(loop_form_value(&LoopData::default()), Z4::ZERO);
        let d = LoopData {
            disorienting: true,
            ..Default::default()
        };
        assert_eq!(loop_form_value(&d), Z4::TWO);
        let d = LoopData {
            isolated_q_hits: 1,
            isolated_plus_hits: 1,
            ..Default::default()
        };
        assert_eq!(loop_form_value(&d), Z4::ZERO);
        assert_eq!(boundary_value(BoundaryKind::Tangency).unwrap(), Z4::ONE);
        assert_eq!(boundary_value(BoundaryKind::MinusRegion { chi: 1 }).unwrap(), Z4::TWO);
        assert_eq!(
            boundary_value(BoundaryKind::PComponent { self_intersection: 4 }).unwrap(),
            Z4::TWO
        );
        assert!(boundary_value(BoundaryKind::PComponent { self_intersection: 3 }).is_err());
        assert_eq!(boundary_value(BoundaryKind::Linking { plus: 3, minus: 1 }).unwrap(), Z4::TWO);
    }
}
