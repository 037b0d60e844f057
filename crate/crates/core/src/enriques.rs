//! Complex separations of real Enriques surfaces: quoter partitions, the
//! congruence system relating Euler characteristics to Brown invariants, the
//! value set of `P(w₁)`, and enumeration of admissible separations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::quadspace::{mod8, BrownValue, QuadraticSpace};
use crate::surface::{component_profile, w1_value, ComponentState, SurfaceKind, SurfaceUnion};
use crate::z4::Z4;

const SIGN: [i64; 2] = [1, -1];

pub fn chi_congruence(u: &SurfaceUnion) -> bool {
    u.euler_char().rem_euclid(8) == 0
}

/// Total mod-2 Betti number equals 16.
pub fn m_surface_check(u: &SurfaceUnion) -> bool {
    u.total_betti() == 16
}

/// Four quoters: `halves[h][i]` is quoter `i` of half `h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuoterPartition {
    halves: [[SurfaceUnion; 2]; 2],
}

fn quoter_key(q: &SurfaceUnion) -> (bool, i64, String) {
    (q.is_empty(), -q.euler_char(), q.to_string())
}

fn render_half(h: &[SurfaceUnion; 2]) -> String {
    if h[0].is_empty() && h[1].is_empty() {
        "{}".to_string()
    } else {
        format!("{{({})+({})}}", h[0], h[1])
    }
}

impl QuoterPartition {
    pub fn new(half1: [SurfaceUnion; 2], half2: [SurfaceUnion; 2]) -> Result<Self> {
        let p = Self {
            halves: [half1, half2],
        };
        if p.half_is_empty(0) && p.half_is_empty(1) {
            return Err(Error::Invalid("a partition needs at least one component".into()));
        }
        Ok(p)
    }

    pub fn quoter(&self, half: usize, index: usize) -> &SurfaceUnion {
        &self.halves[half][index]
    }

    pub fn half(&self, half: usize) -> SurfaceUnion {
        self.halves[half][0].union(&self.halves[half][1])
    }

    pub fn half_is_empty(&self, half: usize) -> bool {
        self.halves[half].iter().all(SurfaceUnion::is_empty)
    }

    pub fn union(&self) -> SurfaceUnion {
        self.half(0).union(&self.half(1))
    }

    pub fn quoters(&self) -> impl Iterator<Item = &SurfaceUnion> {
        self.halves.iter().flatten()
    }

    /// Quoters inside a half by descending χ then token string (empty last);
    /// halves by ascending total χ then rendering (empty last).
    pub fn canonical(&self) -> Self {
        let mut halves = self.halves.clone();
        for h in halves.iter_mut() {
            h.sort_by_key(quoter_key);
        }
        halves.sort_by_key(|h| {
            let empty = h.iter().all(SurfaceUnion::is_empty);
            (empty, h[0].euler_char() + h[1].euler_char(), render_half(h))
        });
        Self { halves }
    }

    /// Each `S1` component forms a half by itself.
    pub fn respects_s1_rule(&self) -> bool {
        (0..2).all(|h| {
            let half = self.half(h);
            half.count(SurfaceKind::Orientable(1)) == 0 || half.len() == 1
        })
    }
}

impl fmt::Display for QuoterPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", render_half(&self.halves[0]), render_half(&self.halves[1]))
    }
}

fn parse_half(text: &str) -> Result<[SurfaceUnion; 2]> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("half `{text}` is not enclosed in braces")))?;
    if inner.is_empty() {
        return Ok([SurfaceUnion::empty(), SurfaceUnion::empty()]);
    }
    let body = inner
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("half `{text}` must read {{(A)+(B)}}")))?;
    let parts: Vec<&str> = body.split(")+(").collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("half `{text}` must contain exactly two quoters")));
    }
    if parts.iter().any(|p| p.contains(['(', ')', '{', '}'])) {
        return Err(Error::Parse(format!("malformed quoter in `{text}`")));
    }
    Ok([parts[0].parse()?, parts[1].parse()?])
}

impl FromStr for QuoterPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (a, b) = text
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("partition `{s}` lacks `|`")))?;
        Self::new(parse_half(a)?, parse_half(b)?)
    }
}

/// Per-kind refinement summaries, shared by all quoters of one enumeration.
#[derive(Clone, Debug, Default)]
pub struct ProfileCache {
    kinds: BTreeMap<SurfaceKind, BTreeMap<ComponentState, Vec<Z4>>>,
}

impl ProfileCache {
    pub fn for_union(u: &SurfaceUnion) -> Result<Self> {
        let mut kinds = BTreeMap::new();
        for (k, _) in u.multiplicities() {
            kinds.insert(k, component_profile(k)?);
        }
        Ok(Self { kinds })
    }

    fn component(&self, k: SurfaceKind) -> &BTreeMap<ComponentState, Vec<Z4>> {
        &self.kinds[&k]
    }

    /// Summaries of all refinements of a quoter, built component by component.
    fn quoter(&self, q: &SurfaceUnion) -> BTreeMap<QuoterState, Vec<Z4>> {
        let mut acc: BTreeMap<QuoterState, Vec<Z4>> = BTreeMap::new();
        acc.insert(
            QuoterState {
                brown: 0,
                w1: Z4::ZERO,
                readings: Vec::new(),
            },
            Vec::new(),
        );
        for &k in q.components() {
            let mut next = BTreeMap::new();
            for (state, rep) in &acc {
                for (cs, crep) in self.component(k) {
                    let mut readings = state.readings.clone();
                    if k.is_even_nonorientable() {
                        readings.push(cs.w1);
                    }
                    let s = QuoterState {
                        brown: (state.brown + cs.brown) % 8,
                        w1: state.w1 + cs.w1,
                        readings,
                    };
                    next.entry(s).or_insert_with(|| {
                        let mut r = rep.clone();
                        r.extend_from_slice(crep);
                        r
                    });
                }
            }
            acc = next;
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct QuoterState {
    brown: u8,
    w1: Z4,
    /// `q(w₁)` on each even nonorientable component, in component order
    readings: Vec<Z4>,
}

impl QuoterState {
    /// Brown invariant of `q` restricted to the annihilator of `w₁`.
    fn annihilator_brown(&self, w1_self: bool) -> Option<u8> {
        if w1_self {
            let line = if self.w1 == Z4::ONE { 1 } else { 7 };
            Some(mod8(i64::from(self.brown) - line))
        } else if self.w1.is_zero() {
            Some(self.brown)
        } else {
            None
        }
    }
}

fn w1_self_pairing(q: &SurfaceUnion) -> bool {
    q.components()
        .iter()
        .map(|c| if c.is_orientable() { 0 } else { c.h1_rank() })
        .sum::<usize>()
        % 2
        == 1
}

/// Brown residues assigned to the quoters, with witness refinements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrownAssignment {
    /// `β_i` for the quoters of the first half
    pub beta: [u8; 2],
    /// `γ_j` for the quoters of the second half, absent when it is empty
    pub gamma: Option<[u8; 2]>,
    /// A refinement of each quoter's first homology realising its residue
    pub witnesses: [[Option<QuadraticSpace>; 2]; 2],
}

impl BrownAssignment {
    /// Recomputes every congruence from the witnesses' own Brown invariants.
    pub fn verify(&self, p: &QuoterPartition) -> bool {
        let c = p.union().euler_char() / 4;
        let chi = |h: usize, i: usize| p.quoter(h, i).euler_char();
        match self.gamma {
            Some(gamma) => {
                let witness_ok = (0..2).all(|h| {
                    (0..2).all(|i| {
                        let want = if h == 0 { self.beta[i] } else { gamma[i] };
                        self.witnesses[h][i]
                            .as_ref()
                            .is_some_and(|w| w.brown() == BrownValue::Residue(want))
                    })
                });
                witness_ok
                    && (0..2).all(|i| {
                        (0..2).all(|j| {
                            let lhs = chi(0, i) + chi(1, j) - 2 - c;
                            let rhs = SIGN[j] * i64::from(self.beta[i]) + SIGN[i] * i64::from(gamma[j]);
                            mod8(lhs - rhs) == 0
                        })
                    })
            }
            None => (0..2).all(|i| {
                let Some(w) = &self.witnesses[0][i] else { return false };
                let ann = p.quoter(0, i).homology_model().w1_annihilator();
                let restricted = w.restrict(&ann).map(|r| r.brown()).ok();
                restricted == Some(BrownValue::Residue(self.beta[i]))
                    && mod8(chi(0, i) - 2 - c - i64::from(self.beta[i])) == 0
            }),
        }
    }
}

/// Satisfying residues and the resulting `P(w₁)` values for one partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub assignments: Vec<([u8; 2], Option<[u8; 2]>)>,
    /// `None` when no even nonorientable component exists
    pub pw1: Option<BTreeSet<u8>>,
}

impl Analysis {
    pub fn satisfiable(&self) -> bool {
        !self.assignments.is_empty()
    }
}

fn oriented(p: &QuoterPartition) -> QuoterPartition {
    if p.half_is_empty(0) {
        QuoterPartition {
            halves: [p.halves[1].clone(), p.halves[0].clone()],
        }
    } else {
        p.clone()
    }
}

fn require_congruence(u: &SurfaceUnion) -> Result<()> {
    if !chi_congruence(u) {
        return Err(Error::Precondition(format!(
            "χ = {} is not divisible by 8",
            u.euler_char()
        )));
    }
    Ok(())
}

/// Shared core of satisfiability and `P(w₁)`: works on per-quoter summaries.
fn analyse_with(p: &QuoterPartition, cache: &ProfileCache) -> Analysis {
    let p = oriented(p);
    let c = p.union().euler_char() / 4;
    let chi = |h: usize, i: usize| p.quoter(h, i).euler_char();
    let states: Vec<Vec<BTreeMap<QuoterState, Vec<Z4>>>> = (0..2)
        .map(|h| (0..2).map(|i| cache.quoter(p.quoter(h, i))).collect())
        .collect();
    let mut assignments = Vec::new();
    // readings sets per quoter for each satisfying assignment
    let mut witness_readings: Vec<Vec<BTreeSet<Vec<Z4>>>> = Vec::new();

    if p.half_is_empty(1) {
        let need: [u8; 2] = [0, 1].map(|i| mod8(chi(0, i) - 2 - c));
        let per: Vec<BTreeSet<Vec<Z4>>> = (0..2)
            .map(|i| {
                let w1_self = w1_self_pairing(p.quoter(0, i));
                states[0][i]
                    .keys()
                    .filter(|s| s.annihilator_brown(w1_self) == Some(need[i]))
                    .map(|s| s.readings.clone())
                    .collect()
            })
            .collect();
        if per.iter().all(|r| !r.is_empty()) {
            assignments.push((need, None));
            witness_readings.push(per);
        }
    } else {
        let brown_sets: Vec<Vec<BTreeSet<u8>>> = states
            .iter()
            .map(|h| h.iter().map(|m| m.keys().map(|s| s.brown).collect()).collect())
            .collect();
        for &b0 in &brown_sets[0][0] {
            for &b1 in &brown_sets[0][1] {
                for &g0 in &brown_sets[1][0] {
                    for &g1 in &brown_sets[1][1] {
                        let beta = [b0, b1];
                        let gamma = [g0, g1];
                        let ok = (0..2).all(|i| {
                            (0..2).all(|j| {
                                let lhs = chi(0, i) + chi(1, j) - 2 - c;
                                let rhs = SIGN[j] * i64::from(beta[i]) + SIGN[i] * i64::from(gamma[j]);
                                mod8(lhs - rhs) == 0
                            })
                        });
                        if !ok {
                            continue;
                        }
                        assignments.push((beta, Some(gamma)));
                        let targets = [b0, b1, g0, g1];
                        let per = (0..4)
                            .map(|k| {
                                states[k / 2][k % 2]
                                    .keys()
                                    .filter(|s| s.brown == targets[k])
                                    .map(|s| s.readings.clone())
                                    .collect()
                            })
                            .collect();
                        witness_readings.push(per);
                    }
                }
            }
        }
    }

    let pw1 = if p.union().has_even_nonorientable() {
        let mut values = BTreeSet::new();
        for per in &witness_readings {
            collect_equal_readings(per, 0, None, &mut values);
        }
        Some(values)
    } else {
        None
    };
    Analysis { assignments, pw1 }
}

/// Walks the product of per-quoter reading choices, keeping combinations in
/// which every even nonorientable component reads the same value.
fn collect_equal_readings(
    per: &[BTreeSet<Vec<Z4>>],
    k: usize,
    common: Option<Z4>,
    out: &mut BTreeSet<u8>,
) {
    if k == per.len() {
        if let Some(v) = common {
            out.insert(v.value());
        }
        return;
    }
    for r in &per[k] {
        let mut cur = common;
        let mut consistent = true;
        for &v in r {
            match cur {
                None => cur = Some(v),
                Some(c) if c == v => {}
                Some(_) => {
                    consistent = false;
                    break;
                }
            }
        }
        if consistent {
            collect_equal_readings(per, k + 1, cur, out);
        }
    }
}

pub fn analyse(p: &QuoterPartition) -> Result<Analysis> {
    let u = p.union();
    require_congruence(&u)?;
    Ok(analyse_with(p, &ProfileCache::for_union(&u)?))
}

/// Finds residues satisfying the congruence system, with witness refinements.
pub fn ergm_satisfiable(p: &QuoterPartition) -> Result<Option<BrownAssignment>> {
    let u = p.union();
    require_congruence(&u)?;
    let cache = ProfileCache::for_union(&u)?;
    let o = oriented(p);
    let analysis = analyse_with(&o, &cache);
    let Some(&(beta, gamma)) = analysis.assignments.first() else {
        return Ok(None);
    };
    let mut witnesses: [[Option<QuadraticSpace>; 2]; 2] = Default::default();
    for h in 0..2 {
        if h == 1 && gamma.is_none() {
            break;
        }
        for i in 0..2 {
            let q = o.quoter(h, i);
            let target = if h == 0 { beta[i] } else { gamma.expect("second half present")[i] };
            let w1_self = w1_self_pairing(q);
            let rep = cache
                .quoter(q)
                .into_iter()
                .find(|(s, _)| {
                    if gamma.is_some() {
                        s.brown == target
                    } else {
                        s.annihilator_brown(w1_self) == Some(target)
                    }
                })
                .map(|(_, rep)| rep)
                .expect("satisfying residue has a witness");
            let h1 = q.homology_model();
            witnesses[h][i] = Some(QuadraticSpace::new(h1.bilinear, rep)?);
        }
    }
    Ok(Some(BrownAssignment {
        beta,
        gamma,
        witnesses,
    }))
}

/// `P(w₁)` over all witnesses; `None` when no even nonorientable component exists.
pub fn pw1_set(p: &QuoterPartition) -> Result<Option<BTreeSet<u8>>> {
    let a = analyse(p)?;
    if !a.satisfiable() {
        return Err(Error::Precondition(format!("partition {p} admits no Brown assignment")));
    }
    Ok(a.pw1)
}

/// Admissible χ among {−8, 0, 8} for a one-component real part: the nonempty
/// quoter's partner is empty, so `0 ≡ 2 + χ/4 (mod 8)` must hold.
pub fn empty_quoter_chi(u: &SurfaceUnion) -> Result<BTreeSet<i64>> {
    if u.len() != 1 {
        return Err(Error::Precondition(format!(
            "expected exactly one component, got {}",
            u.len()
        )));
    }
    Ok([-8i64, 0, 8]
        .into_iter()
        .filter(|chi| mod8(2 + chi / 4) == 0)
        .collect())
}

/// One row of a classification table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassificationRow {
    pub partition: QuoterPartition,
    pub pw1: Option<BTreeSet<u8>>,
    /// Realisation markers carried through from reference data, never computed
    pub flags: String,
}

pub fn render_pw1(pw1: &Option<BTreeSet<u8>>) -> String {
    match pw1 {
        None => "-".to_string(),
        Some(s) => s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
    }
}

impl ClassificationRow {
    pub fn new(partition: QuoterPartition, pw1: Option<BTreeSet<u8>>) -> Self {
        Self {
            partition: partition.canonical(),
            pw1,
            flags: String::new(),
        }
    }

    /// Rendering without flags, used for comparisons.
    pub fn key(&self) -> String {
        format!("{}  pw1={}", self.partition, render_pw1(&self.pw1))
    }
}

impl fmt::Display for ClassificationRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())?;
        if !self.flags.is_empty() {
            write!(f, "  {}", self.flags)?;
        }
        Ok(())
    }
}

impl FromStr for ClassificationRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s.split_whitespace();
        let partition: QuoterPartition = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty row".into()))?
            .parse()?;
        let pw = tokens
            .next()
            .and_then(|t| t.strip_prefix("pw1="))
            .ok_or_else(|| Error::Parse(format!("row `{s}` lacks a pw1= field")))?;
        let pw1 = if pw == "-" {
            None
        } else {
            let vals = pw
                .split(',')
                .map(|v| match v {
                    "0" => Ok(0u8),
                    "2" => Ok(2u8),
                    _ => Err(Error::Parse(format!("bad pw1 value `{v}`"))),
                })
                .collect::<Result<BTreeSet<u8>>>()?;
            Some(vals)
        };
        let flags: Vec<&str> = tokens.collect();
        if flags.iter().any(|f| !f.chars().all(|c| c == '*')) {
            return Err(Error::Parse(format!("unknown flags in `{s}`")));
        }
        Ok(Self {
            partition: partition.canonical(),
            pw1,
            flags: flags.join(" "),
        })
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    pub s1_rule: bool,
    /// Restrict to these half splits (unordered); every split must cover the input.
    pub half_splits: Option<Vec<(SurfaceUnion, SurfaceUnion)>>,
    pub execution: Execution,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            s1_rule: true,
            half_splits: None,
            execution: Execution::default(),
        }
    }
}

fn unordered_key(a: &SurfaceUnion, b: &SurfaceUnion) -> (String, String) {
    let (x, y) = (a.to_string(), b.to_string());
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// All partitions of `u` into halves and quoters that would be examined.
pub fn candidate_partitions(u: &SurfaceUnion, opts: &EnumerationOptions) -> Result<Vec<QuoterPartition>> {
    let splits = match &opts.half_splits {
        Some(list) => {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for (a, b) in list {
                if &a.union(b) != u {
                    return Err(Error::Invalid(format!(
                        "half split {a} | {b} does not cover {u}"
                    )));
                }
                if seen.insert(unordered_key(a, b)) {
                    out.push((a.clone(), b.clone()));
                }
            }
            out
        }
        None => u.unordered_splits(),
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (a, b) in splits {
        let (h1, h2) = if a.is_empty() { (b, a) } else { (a, b) };
        if h1.is_empty() {
            continue;
        }
        let q1 = h1.unordered_splits();
        let q2 = if h2.is_empty() {
            vec![(SurfaceUnion::empty(), SurfaceUnion::empty())]
        } else {
            h2.unordered_splits()
        };
        for (x, y) in &q1 {
            for (z, w) in &q2 {
                let p = QuoterPartition {
                    halves: [[x.clone(), y.clone()], [z.clone(), w.clone()]],
                };
                if opts.s1_rule && !p.respects_s1_rule() {
                    continue;
                }
                let canon = p.canonical();
                if seen.insert(canon.to_string()) {
                    out.push(canon);
                }
            }
        }
    }
    Ok(out)
}

/// Every admissible separation of `u`, canonicalised and sorted.
pub fn enumerate_separations(
    u: &SurfaceUnion,
    opts: &EnumerationOptions,
) -> Result<Vec<ClassificationRow>> {
    require_congruence(u)?;
    let cache = ProfileCache::for_union(u)?;
    let candidates = candidate_partitions(u, opts)?;
    let results = opts.execution.map(&candidates, |p| {
        let a = analyse_with(p, &cache);
        a.satisfiable().then(|| ClassificationRow::new(p.clone(), a.pw1))
    });
    let rows: BTreeMap<String, ClassificationRow> = results
        .into_iter()
        .flatten()
        .map(|r| (r.key(), r))
        .collect();
    Ok(rows.into_values().collect())
}

/// Direct computation from refinements, independent of the summary engine.
pub mod oracle {
    use super::*;

    struct Reading {
        brown: u8,
        annihilator: Option<u8>,
        readings: Vec<Z4>,
    }

    fn readings_of(q: &SurfaceUnion) -> Result<Vec<Reading>> {
        let h = q.homology_model();
        let ann = h.w1_annihilator();
        let even: Vec<usize> = q
            .components()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_even_nonorientable())
            .map(|(i, _)| i)
            .collect();
        q.refinements()?
            .map(|s| {
                let brown = s.brown().residue().expect("nonsingular");
                let annihilator = s.restrict(&ann)?.brown().residue();
                let readings = even
                    .iter()
                    .map(|&i| w1_value(&s, &h, i))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Reading {
                    brown,
                    annihilator,
                    readings,
                })
            })
            .collect()
    }

    /// Brute force over the full product of achievable residues.
    pub fn analyse(p: &QuoterPartition) -> Result<Analysis> {
        let u = p.union();
        require_congruence(&u)?;
        let p = oriented(p);
        let c = u.euler_char() / 4;
        let chi = |h: usize, i: usize| p.quoter(h, i).euler_char();
        let data: Vec<Vec<Vec<Reading>>> = (0..2)
            .map(|h| (0..2).map(|i| readings_of(p.quoter(h, i))).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut assignments = Vec::new();
        let mut combos: Vec<Vec<Vec<Z4>>> = Vec::new();
        if p.half_is_empty(1) {
            let need: [u8; 2] = [0, 1].map(|i| mod8(chi(0, i) - 2 - c));
            let ok = (0..2).all(|i| data[0][i].iter().any(|r| r.annihilator == Some(need[i])));
            if ok {
                assignments.push((need, None));
                for a in data[0][0].iter().filter(|r| r.annihilator == Some(need[0])) {
                    for b in data[0][1].iter().filter(|r| r.annihilator == Some(need[1])) {
                        combos.push(vec![a.readings.clone(), b.readings.clone()]);
                    }
                }
            }
        } else {
            for r0 in &data[0][0] {
                for r1 in &data[0][1] {
                    for s0 in &data[1][0] {
                        for s1 in &data[1][1] {
                            let beta = [r0.brown, r1.brown];
                            let gamma = [s0.brown, s1.brown];
                            let ok = (0..2).all(|i| {
                                (0..2).all(|j| {
                                    mod8(
                                        chi(0, i) + chi(1, j) - 2 - c
                                            - SIGN[j] * i64::from(beta[i])
                                            - SIGN[i] * i64::from(gamma[j]),
                                    ) == 0
                                })
                            });
                            if ok {
                                if !assignments.contains(&(beta, Some(gamma))) {
                                    assignments.push((beta, Some(gamma)));
                                }
                                combos.push(vec![
                                    r0.readings.clone(),
                                    r1.readings.clone(),
                                    s0.readings.clone(),
                                    s1.readings.clone(),
                                ]);
                            }
                        }
                    }
                }
            }
        }
        assignments.sort();
        let pw1 = if u.has_even_nonorientable() {
            let mut values = BTreeSet::new();
            for combo in &combos {
                let flat: Vec<Z4> = combo.iter().flatten().copied().collect();
                if let Some(&first) = flat.first() {
                    if flat.iter().all(|&v| v == first) {
                        values.insert(first.value());
                    }
                }
            }
            Some(values)
        } else {
            None
        };
        Ok(Analysis { assignments, pw1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(s: &str) -> SurfaceUnion {
        s.parse().unwrap()
    }

    fn part(s: &str) -> QuoterPartition {
        s.parse().unwrap()
    }

    fn set(v: &[u8]) -> Option<BTreeSet<u8>> {
        Some(v.iter().copied().collect())
    }

    #[test]
    fn congruence_and_m_surface() {
        assert!(chi_congruence(&u("4V1+2S")));
        assert!(chi_congruence(&u("V10")));
        assert!(!chi_congruence(&u("V1")));
        assert!(m_surface_check(&u("4V1+2S")));
        assert!(m_surface_check(&u("2V2+4S")));
        assert!(!m_surface_check(&u("V10")));
    }

    #[test]
    fn partition_grammar() {
        let p = part("{(V1)+()}|{(2V1+S)+(V1+S)}");
        assert_eq!(p.to_string(), "{(V1)+()}|{(2V1+S)+(V1+S)}");
        assert_eq!(p.canonical().to_string(), "{(V1)+()}|{(2V1+S)+(V1+S)}");
        let q = part("{}|{(S)+(V4)}").canonical();
        assert_eq!(q.to_string(), "{(S)+(V4)}|{}");
        assert!("{(V1)}|{}".parse::<QuoterPartition>().is_err());
        assert!("{}|{}".parse::<QuoterPartition>().is_err());
        let row: ClassificationRow = "{(2V2)+()}|{(2S)+(2S)}  pw1=0,2".parse().unwrap();
        assert_eq!(row.to_string(), "{(2V2)+()}|{(2S)+(2S)}  pw1=0,2");
        let flagged: ClassificationRow = "{(2S)+(2S)}|{}  pw1=-  **".parse().unwrap();
        assert_eq!(flagged.flags, "**");
    }

    #[test]
    fn satisfiability_examples() {
        let a = ergm_satisfiable(&part("{(2V1+S)+(2V1+S)}|{}")).unwrap().unwrap();
        assert_eq!(a.beta, [0, 0]);
        assert!(a.gamma.is_none());

        let p = part("{(2V1+S)+(V1+S)}|{(V1)+()}");
        let a = ergm_satisfiable(&p).unwrap().unwrap();
        assert!(a.verify(&p));

        assert!(ergm_satisfiable(&part("{(4V1+2S)+()}|{}")).unwrap().is_none());

        let p = part("{(V8)+()}|{(V4)+()}");
        let a = analyse(&p).unwrap();
        assert!(a.assignments.iter().any(|(b, g)| b[0] == 6 && g.unwrap()[0] == 2));
        assert!(ergm_satisfiable(&p).unwrap().unwrap().verify(&p));
    }

    #[test]
    fn pw1_examples() {
        assert_eq!(pw1_set(&part("{(V2)+(V2)}|{(2S)+(2S)}")).unwrap(), set(&[0]));
        assert_eq!(pw1_set(&part("{(V2)+(V2)}|{(3S)+(S)}")).unwrap(), set(&[2]));
        assert_eq!(pw1_set(&part("{(2V2)+()}|{(2S)+(2S)}")).unwrap(), set(&[0, 2]));
        assert_eq!(pw1_set(&part("{(V8)+()}|{(V4)+()}")).unwrap(), set(&[2]));
        assert!(pw1_set(&part("{(4V1+2S)+()}|{}")).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let rows = enumerate_separations(&u("S1+V2+4S"), &EnumerationOptions::default()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].to_string(), "{(S1)+()}|{(2S)+(V2+2S)}  pw1=0");
        let opts = EnumerationOptions {
            half_splits: Some(vec![(u("V4+S"), u(""))]),
            ..Default::default()
        };
        let rows = enumerate_separations(&u("V4+S"), &opts).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].to_string(), "{(S)+(V4)}|{}  pw1=0");
        assert!(enumerate_separations(&u("V1"), &EnumerationOptions::default()).is_err());
    }

    #[test]
    fn empty_quoter_chi_values() {
        let expected: BTreeSet<i64> = [-8].into_iter().collect();
        assert_eq!(empty_quoter_chi(&u("V10")).unwrap(), expected);
        assert!(empty_quoter_chi(&u("V10+S")).is_err());
        let rows = enumerate_separations(&u("V10"), &EnumerationOptions::default()).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(enumerate_separations(&u("V2"), &EnumerationOptions::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn oracle_agrees_on_table_examples() {
        for s in [
            "{(V2)+(V2)}|{(2S)+(2S)}",
            "{(2V2)+()}|{(2S)+(2S)}",
            "{(V2+2S)+(2S)}|{(V2)+()}",
            "{(2V1+S)+(2V1+S)}|{}",
            "{(V2+2V1+S)+(2S)}|{}",
            "{(V4)+(S)}|{}",
        ] {
            let p = part(s);
            assert_eq!(analyse(&p).unwrap(), oracle::analyse(&p).unwrap(), "{s}");
        }
    }
}
