use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use pvform::enriques::{enumerate_separations, oracle, analyse, EnumerationOptions, QuoterPartition};
use pvform::fundcycle::{brute_force_cycles, random_arrangement, solve_fundamental_cycle, subgroup_membership};
use pvform::gf2::{gf2_solve, Gf2Matrix, Gf2Vec};
use pvform::lattice::UnimodularLattice;
use pvform::par::Execution;
use pvform::quadspace::{BrownValue, QuadraticSpace};
use pvform::surface::SurfaceUnion;
use pvform::z4::{z4_solution_space, Parity, ParityMask, Z4Matrix, Z4};

fn space(max_dim: usize) -> impl Strategy<Value = QuadraticSpace> {
    (0..=max_dim, any::<u64>()).prop_map(|(n, seed)| QuadraticSpace::random(n, &mut StdRng::seed_from_u64(seed)))
}

fn z4_system() -> impl Strategy<Value = (Z4Matrix, Vec<Z4>, ParityMask)> {
    (1usize..=4, 1usize..=6).prop_flat_map(|(r, c)| {
        (
            prop::collection::vec(0u8..4, r * c),
            prop::collection::vec(0u8..4, r),
            prop::collection::vec(any::<bool>(), c),
        )
            .prop_map(move |(a, b, m)| {
                let mut mat = Z4Matrix::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        mat.set(i, j, Z4::new(a[i * c + j]));
                    }
                }
                let mask = m.into_iter().map(|odd| if odd { Parity::Odd } else { Parity::Free }).collect();
                (mat, b.into_iter().map(Z4::new).collect(), ParityMask(mask))
            })
    })
}

fn brute_z4(a: &Z4Matrix, b: &[Z4], mask: &ParityMask) -> Vec<Vec<Z4>> {
    let n = a.cols();
    (0..4u64.pow(n as u32))
        .map(|code| (0..n).map(|i| Z4::new((code >> (2 * i)) as u8)).collect::<Vec<_>>())
        .filter(|x| mask.admits(x) && a.mul_vec(x).unwrap() == b)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gf2_solution_and_kernel((rows, cols, seed) in (1usize..6, 1usize..7, any::<u64>())) {
        use rand::Rng;
        let mut rng = StdRng::seed_from_u64(seed);
        let vecs: Vec<Gf2Vec> = (0..rows).map(|_| Gf2Vec::from_bits(cols, rng.gen_range(0..1u64 << cols))).collect();
        let a = Gf2Matrix::from_rows(cols, &vecs).unwrap();
        let b = Gf2Vec::from_bits(rows, rng.gen_range(0..1u64 << rows));
        if let Some(sol) = gf2_solve(&a, &b).unwrap() {
            prop_assert_eq!(a.mul_vec(&sol.particular).unwrap(), b);
            for k in &sol.kernel {
                prop_assert!(a.mul_vec(k).unwrap().is_zero());
            }
            prop_assert_eq!(sol.kernel.len(), cols - sol.rank);
        }
    }

    #[test]
    fn z4_solver_matches_search((a, b, mask) in z4_system()) {
        let all = brute_z4(&a, &b, &mask);
        match z4_solution_space(&a, &b, &mask).unwrap() {
            None => prop_assert!(all.is_empty()),
            Some(space) => {
                prop_assert!(all.contains(&space.particular));
                for g in &space.generators {
                    let shifted: Vec<Z4> = space.particular.iter().zip(g).map(|(&x, &y)| x + y).collect();
                    prop_assert!(all.contains(&shifted));
                }
            }
        }
    }

    #[test]
    fn parity_invariant_of_refinements(s in space(8)) {
        for (i, q) in s.q_basis().iter().enumerate() {
            prop_assert_eq!(q.value() % 2, u8::from(s.bilinear().get(i, i)));
        }
    }

    #[test]
    fn gauss_sum_magnitude(s in space(8)) {
        let (rad, informative) = s.radical_and_informative();
        if informative {
            let (re, im) = s.gauss_profile().gauss_sum();
            prop_assert_eq!(re * re + im * im, 1i64 << (s.dim() + rad.len()));
        }
    }

    #[test]
    fn extension_rule(s in space(8), x in any::<u64>(), y in any::<u64>()) {
        let n = s.dim();
        let mask = if n == 0 { 0 } else { (1u64 << n) - 1 };
        let (x, y) = (Gf2Vec::from_bits(n, x & mask), Gf2Vec::from_bits(n, y & mask));
        let lhs = s.q_eval(&(x.clone() + y.clone())).unwrap();
        let two = Z4::double_of_bit(s.pair(&x, &y));
        prop_assert_eq!(lhs, s.q_eval(&x).unwrap() + s.q_eval(&y).unwrap() + two);
    }

    #[test]
    fn brown_paths_agree(s in space(9)) {
        prop_assert_eq!(s.brown(), s.brown_by_decomposition());
    }

    #[test]
    fn brown_is_additive(a in space(6), b in space(6)) {
        let want = match (a.brown().residue(), b.brown().residue()) {
            (Some(x), Some(y)) => BrownValue::Residue((x + y) % 8),
            _ => BrownValue::Undefined,
        };
        prop_assert_eq!(a.direct_sum(&b).brown(), want);
    }

    #[test]
    fn text_form_round_trips(s in space(8)) {
        prop_assert_eq!(s.to_string().parse::<QuadraticSpace>().unwrap(), s);
    }

    #[test]
    fn fundcycle_agrees_with_search(seed in any::<u64>()) {
        let a = random_arrangement(&mut StdRng::seed_from_u64(seed), 8);
        let brute = brute_force_cycles(&a).unwrap();
        let solved = solve_fundamental_cycle(&a).unwrap();
        prop_assert_eq!(solved.is_some(), !brute.is_empty());
        prop_assert_eq!(subgroup_membership(&a).unwrap(), !brute.is_empty());
        if let Some(c) = solved {
            prop_assert!(a.is_fundamental_cycle(&c));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn lattice_brown_equals_signature(blocks in prop::collection::vec(0usize..4, 1..5)) {
        let mut l = UnimodularLattice::zero();
        for b in blocks {
            l = l.direct_sum(&match b {
                0 => UnimodularLattice::e8(),
                1 => UnimodularLattice::hyperbolic_plane(),
                2 => UnimodularLattice::plus_one(),
                _ => UnimodularLattice::minus_one(),
            });
        }
        prop_assert!(l.brown_signature_check().equal);
    }
}

fn small_unions() -> Vec<SurfaceUnion> {
    ["4V1+2S", "V2+2V1+3S", "2V2+4S", "V3+V1+4S", "V4+2V1", "V10+S1", "S+S+S+S", "V6+2S", "S1+V2+4S"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

#[test]
fn engine_matches_oracle_on_every_candidate() {
    for u in small_unions() {
        let opts = EnumerationOptions::default();
        for p in pvform::enriques::candidate_partitions(&u, &opts).unwrap() {
            let fast = analyse(&p).unwrap();
            let slow = oracle::analyse(&p).unwrap();
            assert_eq!(fast.satisfiable(), slow.satisfiable(), "{p}");
            if fast.satisfiable() {
                assert_eq!(fast.pw1, slow.pw1, "{p}");
            }
        }
    }
}

#[test]
fn sequential_and_parallel_enumerations_agree() {
    for u in small_unions() {
        let run = |execution| {
            enumerate_separations(&u, &EnumerationOptions { execution, ..Default::default() }).unwrap()
        };
        assert_eq!(run(Execution::Sequential), run(Execution::Parallel));
    }
}

#[test]
fn enumerated_rows_verify() {
    for u in small_unions() {
        for row in enumerate_separations(&u, &EnumerationOptions::default()).unwrap() {
            let a = pvform::enriques::ergm_satisfiable(&row.partition).unwrap().expect("row is satisfiable");
            assert!(a.verify(&row.partition), "{row}");
            let reparsed: QuoterPartition = row.partition.to_string().parse().unwrap();
            assert_eq!(reparsed, row.partition);
        }
    }
}
