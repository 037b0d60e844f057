//! Self-check suite: ten numbered criteria, each with an exact verdict and a
//! wall-clock budget.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::enriques::empty_quoter_chi;
use crate::error::Result;
use crate::fundcycle::{
    boundary_value, brute_force_cycles, loop_form_value, random_arrangement,
    solve_fundamental_cycle, subgroup_membership, BoundaryKind, LoopData,
};
use crate::gf2::Gf2Vec;
use crate::lattice::UnimodularLattice;
use crate::par::Execution;
use crate::quadspace::{mod8, BrownValue, QuadraticSpace};
use crate::surface::{pontrjagin_square_surface, MembraneData, SurfaceKind, SurfaceUnion};
use crate::tables::{check_table, load_table, TableReport};
use crate::z4::Z4;

/// Fixed seed for every sampled criterion.
pub const SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.budget.is_none_or(|b| self.elapsed <= b)
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let budget = self
            .budget
            .map(|b| format!(" (budget {} s)", b.as_secs()))
            .unwrap_or_default();
        write!(
            f,
            "criterion {:>2} {} [{}] {:.2} s{}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_secs_f64(),
            budget,
            self.detail
        )
    }
}

fn timed(
    id: u8,
    name: &'static str,
    budget: Option<u64>,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionResult {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let budget = budget.map(Duration::from_secs);
    let (ok, detail) = match outcome {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    let mut r = CriterionResult {
        id,
        name,
        passed: ok,
        detail,
        elapsed,
        budget,
    };
    if ok && !r.within_budget() {
        r.passed = false;
        r.detail.push_str("; over time budget");
    }
    r
}

pub fn run_all(execution: Execution) -> Vec<CriterionResult> {
    (1..=10).map(|id| run_criterion(id, execution)).collect()
}

pub fn run_criterion(id: u8, execution: Execution) -> CriterionResult {
    match id {
        1 => timed(1, "quadratic-space laws", Some(60), || law_suite(execution)),
        2 => timed(2, "dual-path Brown", Some(30), || dual_brown(execution)),
        3 => timed(3, "Brown = signature mod 8", Some(60), || lattice_suite(execution)),
        4 => timed(4, "table 4V+2S", Some(120), || table_criterion("elliptic-4V1-2S", execution)),
        5 => timed(5, "table parabolic", Some(300), || table_criterion("parabolic", execution)),
        6 => timed(6, "table hyperbolic", None, || table_criterion("hyperbolic", execution)),
        7 => timed(7, "table other", None, || table_criterion("other", execution)),
        8 => timed(8, "empty quoter", None, empty_quoter),
        9 => timed(9, "fundamental-cycle oracle", Some(60), || fundcycle_oracle(execution)),
        10 => timed(10, "formula evaluators", None, formula_grid),
        _ => CriterionResult {
            id,
            name: "unknown",
            passed: false,
            detail: format!("no criterion {id}"),
            elapsed: Duration::ZERO,
            budget: None,
        },
    }
}

// ---------------------------------------------------------------- criterion 1

/// Checks every law on one space; `None` when all hold.
fn laws(s: &QuadraticSpace, subspaces: &[Vec<Gf2Vec>], shifts: &[Gf2Vec]) -> Result<Option<String>> {
    let br = s.brown();
    let (rad, informative) = s.radical_and_informative();
    if !informative {
        return Ok(br.is_defined().then(|| "Brown defined on a non-informative space".into()));
    }
    let Some(b) = br.residue() else {
        return Ok(Some("Brown undefined on an informative space".into()));
    };
    if usize::from(b) % 2 != (s.dim() - rad.len()) % 2 {
        return Ok(Some(format!("parity law: Br={b}, rank {}", s.dim() - rad.len())));
    }
    for u in s.characteristic_elements() {
        if s.q_eval(&u)?.value() != b % 4 {
            return Ok(Some(format!("characteristic law: q({u}) differs from Br mod 4")));
        }
    }
    for v in shifts {
        let want = BrownValue::Residue(mod8(i64::from(b) - 2 * i64::from(s.q_eval(v)?.value())));
        if s.shift(v)?.brown() != want {
            return Ok(Some(format!("shift law: shift by {v}")));
        }
    }
    match s.null_cobordant_witness()? {
        Some(h) => {
            if b != 0 {
                return Ok(Some(format!("null-cobordism law: witness found with Br={b}")));
            }
            let isotropic = h.iter().all(|x| {
                s.q_eval(x).map(|v| v.is_zero()).unwrap_or(false) && h.iter().all(|y| !s.pair(x, y))
            });
            let perp = s.orthogonal_complement(&h)?;
            if !isotropic || perp.len() != h.len() {
                return Ok(Some("null-cobordism law: witness is not a null-cobordism".into()));
            }
        }
        None if b == 0 => return Ok(Some("null-cobordism law: Br=0 but no witness".into())),
        None => {}
    }
    for w in subspaces {
        let c = s.informative_subspace_check(w)?;
        if c.informative && c.brown != Some(br) {
            return Ok(Some(format!("informative subspace law: subspace {w:?}")));
        }
    }
    Ok(None)
}

fn exhaustive_subspaces(n: usize) -> Vec<Vec<Gf2Vec>> {
    let all: Vec<Gf2Vec> = (0..1u64 << n).map(|b| Gf2Vec::from_bits(n, b)).collect();
    let mut out = vec![Vec::new(), all.iter().skip(1).cloned().collect()];
    for (i, x) in all.iter().enumerate().skip(1) {
        out.push(vec![*x]);
        for y in all.iter().skip(i + 1) {
            out.push(vec![*x, *y]);
        }
    }
    out
}

fn law_suite(execution: Execution) -> Result<(bool, String)> {
    let mut spaces: Vec<QuadraticSpace> = (0..=4).flat_map(QuadraticSpace::enumerate_all).collect();
    let exhaustive = spaces.len();
    let mut rng = StdRng::seed_from_u64(SEED);
    for _ in 0..1000 {
        let n = rng.gen_range(5..=8);
        spaces.push(QuadraticSpace::random(n, &mut rng));
    }
    let seeds: Vec<u64> = (0..spaces.len()).map(|_| rng.gen()).collect();
    let subspace_cache: Vec<Vec<Vec<Gf2Vec>>> = (0..=4).map(exhaustive_subspaces).collect();
    let work: Vec<(usize, &QuadraticSpace)> = spaces.iter().enumerate().collect();
    let failures = execution.map(&work, |&(k, s)| -> Result<Option<String>> {
        let n = s.dim();
        let mut r = StdRng::seed_from_u64(seeds[k]);
        let (subspaces, shifts) = if n <= 4 {
            let shifts: Vec<Gf2Vec> = (0..1u64 << n).map(|b| Gf2Vec::from_bits(n, b)).collect();
            (subspace_cache[n].clone(), shifts)
        } else {
            let rand_vec = |r: &mut StdRng| Gf2Vec::from_bits(n, r.gen_range(0..1u64 << n));
            let mut subs = vec![Vec::new()];
            for _ in 0..16 {
                let k = r.gen_range(1..=n);
                subs.push((0..k).map(|_| rand_vec(&mut r)).collect());
            }
            let shifts: Vec<Gf2Vec> = (0..8).map(|_| rand_vec(&mut r)).collect();
            (subs, shifts)
        };
        Ok(laws(s, &subspaces, &shifts)?.map(|m| format!("{m} on\n{s}")))
    });
    // additivity over pairs drawn from the exhaustive part and the random part
    let pairs: Vec<(usize, usize)> = (0..2000)
        .map(|_| (rng.gen_range(0..spaces.len()), rng.gen_range(0..spaces.len())))
        .filter(|&(a, b)| spaces[a].dim() + spaces[b].dim() <= 12)
        .collect();
    let additivity = execution.map(&pairs, |&(a, b)| {
        let (x, y) = (&spaces[a], &spaces[b]);
        let want = match (x.brown().residue(), y.brown().residue()) {
            (Some(p), Some(q)) => BrownValue::Residue((p + q) % 8),
            _ => BrownValue::Undefined,
        };
        (x.direct_sum(y).brown() != want).then(|| format!("additivity on pair ({a}, {b})"))
    });
    let mut first = None;
    let mut bad = 0;
    for f in failures {
        if let Some(m) = f? {
            bad += 1;
            first.get_or_insert(m);
        }
    }
    for m in additivity.into_iter().flatten() {
        bad += 1;
        first.get_or_insert(m);
    }
    let detail = format!(
        "{exhaustive} exhaustive + 1000 random spaces, {} sum pairs; {bad} violations{}",
        pairs.len(),
        first.map(|m| format!(", first: {m}")).unwrap_or_default()
    );
    Ok((bad == 0, detail))
}

// ---------------------------------------------------------------- criterion 2

fn dual_brown(execution: Execution) -> Result<(bool, String)> {
    let spaces: Vec<QuadraticSpace> = (0..=5).flat_map(QuadraticSpace::enumerate_all).collect();
    let mismatches: Vec<usize> = execution
        .map(&spaces, |s| s.brown() != s.brown_by_decomposition())
        .into_iter()
        .enumerate()
        .filter_map(|(i, bad)| bad.then_some(i))
        .collect();
    Ok((
        mismatches.is_empty(),
        format!("{} spaces of dimension ≤ 5, {} mismatches", spaces.len(), mismatches.len()),
    ))
}

// ---------------------------------------------------------------- criterion 3

fn random_unimodular(n: usize, rng: &mut StdRng) -> Vec<Vec<i64>> {
    let mut p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        return p;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = if rng.gen() { 1 } else { -1 };
        for k in 0..n {
            p[i][k] += c * p[j][k];
        }
    }
    p
}

fn lattice_suite(execution: Execution) -> Result<(bool, String)> {
    let mut lattices = vec![UnimodularLattice::e8(), UnimodularLattice::hyperbolic_plane()];
    for k in 1..=6 {
        for plus in 0..=k {
            let mut l = UnimodularLattice::zero();
            for i in 0..k {
                let b = if i < plus { UnimodularLattice::plus_one() } else { UnimodularLattice::minus_one() };
                l = l.direct_sum(&b);
            }
            lattices.push(l);
        }
    }
    let blocks = [
        UnimodularLattice::e8(),
        UnimodularLattice::hyperbolic_plane(),
        UnimodularLattice::plus_one(),
        UnimodularLattice::minus_one(),
    ];
    let mut rng = StdRng::seed_from_u64(SEED ^ 3);
    let mut sampled = 0;
    while sampled < 240 {
        let mut l = UnimodularLattice::zero();
        loop {
            let b = &blocks[rng.gen_range(0..blocks.len())];
            if l.rank() + b.rank() > 10 {
                break;
            }
            l = l.direct_sum(b);
            if rng.gen_bool(0.3) {
                break;
            }
        }
        if l.rank() == 0 {
            continue;
        }
        let p = random_unimodular(l.rank(), &mut rng);
        lattices.push(l.change_basis(&p)?);
        sampled += 1;
    }
    let bad = execution
        .map(&lattices, |l| !l.brown_signature_check().equal)
        .into_iter()
        .filter(|&b| b)
        .count();
    Ok((
        bad == 0,
        format!("{} lattices ({sampled} sampled sums), {bad} mismatches", lattices.len()),
    ))
}

// ------------------------------------------------------------ criteria 4 to 7

fn table_criterion(label: &str, execution: Execution) -> Result<(bool, String)> {
    let table = load_table(label)?;
    let report = check_table(&table, execution)?;
    Ok((report.passed(), summarize(&report)))
}

fn summarize(r: &TableReport) -> String {
    let parts: Vec<String> = r
        .cases
        .iter()
        .map(|c| {
            let mut s = format!("{}: {}/{}", c.heading, c.found, c.expected);
            if !c.missing.is_empty() || !c.extra.is_empty() {
                s.push_str(&format!(" (missing {}, extra {})", c.missing.len(), c.extra.len()));
            }
            if let Some(n) = c.notes.first().filter(|n| n.starts_with("unrestricted")) {
                s.push_str(&format!(" [{n}]"));
            }
            s
        })
        .collect();
    parts.join("; ")
}

// ---------------------------------------------------------------- criterion 8

fn empty_quoter() -> Result<(bool, String)> {
    let mut kinds = vec![SurfaceKind::Sphere];
    for p in 1..=12 {
        kinds.push(SurfaceKind::Orientable(p));
        kinds.push(SurfaceKind::Nonorientable(p));
    }
    let want: BTreeSet<i64> = [-8].into();
    let mut bad = Vec::new();
    for k in &kinds {
        let u = SurfaceUnion::new(vec![*k]);
        if empty_quoter_chi(&u)? != want {
            bad.push(u.to_string());
        }
    }
    Ok((
        bad.is_empty(),
        format!("{} single components, survivors always {{-8}}{}", kinds.len(), if bad.is_empty() {
            String::new()
        } else {
            format!("; failed for {}", bad.join(", "))
        }),
    ))
}

// ---------------------------------------------------------------- criterion 9

fn fundcycle_oracle(execution: Execution) -> Result<(bool, String)> {
    let mut rng = StdRng::seed_from_u64(SEED ^ 9);
    let arrangements: Vec<_> = (0..150).map(|_| random_arrangement(&mut rng, 8)).collect();
    let outcomes = execution.map(&arrangements, |a| -> Result<(bool, bool)> {
        let solved = solve_fundamental_cycle(a)?;
        let brute = brute_force_cycles(a)?;
        let feasible = !brute.is_empty();
        let agree = solved.is_some() == feasible
            && solved.as_ref().is_none_or(|c| brute.contains(c))
            && subgroup_membership(a)? == feasible;
        Ok((agree, feasible))
    });
    let mut disagreements = 0;
    let mut feasible = 0;
    for o in outcomes {
        let (agree, f) = o?;
        disagreements += usize::from(!agree);
        feasible += usize::from(f);
    }
    Ok((
        disagreements == 0,
        format!(
            "{} arrangements ({feasible} feasible), {disagreements} disagreements",
            arrangements.len()
        ),
    ))
}

// --------------------------------------------------------------- criterion 10

fn formula_grid() -> Result<(bool, String)> {
    let z = |v: i64| v.rem_euclid(4) as u8;
    let mut checked = 0;
    let mut bad = 0;
    let mut check = |ok: bool| {
        checked += 1;
        bad += usize::from(!ok);
    };
    for e in -4..=4 {
        for i in 0..=4u64 {
            for chi in -4..=4 {
                let m = MembraneData {
                    normal_euler: e,
                    self_intersections: i,
                    euler_char: chi,
                };
                check(pontrjagin_square_surface(&m).value() == z(e + 2 * i as i64 + 2 * chi));
            }
        }
    }
    for disorienting in [false, true] {
        for iq in 0..=4u64 {
            for ip in 0..=4u64 {
                for pq in 0..=4u64 {
                    let d = LoopData {
                        disorienting,
                        isolated_q_hits: iq,
                        isolated_plus_hits: ip,
                        pq_points_passed: pq,
                    };
                    let want = z(2 * i64::from(disorienting) + 2 * iq as i64 + 2 * ip as i64 + pq as i64);
                    check(loop_form_value(&d).value() == want);
                }
            }
        }
    }
    check(boundary_value(BoundaryKind::Tangency)? == Z4::ONE);
    for v in -4..=4 {
        check(boundary_value(BoundaryKind::MinusRegion { chi: v })?.value() == z(2 * v));
        let p = boundary_value(BoundaryKind::PComponent { self_intersection: v });
        check(if v % 2 == 0 { p?.value() == z(v / 2) } else { p.is_err() });
        for w in -4..=4 {
            check(boundary_value(BoundaryKind::Linking { plus: v, minus: w })?.value() == z(v - w));
        }
    }
    Ok((bad == 0, format!("{checked} grid points, {bad} mismatches")))
}
