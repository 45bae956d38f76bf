mod common;

use common::*;
use flagcode::channel::{inject, trial_trace, ChannelConfig};
use flagcode::codes::{divisor_type_code, full_flag_code, puncture};
use flagcode::flags::{flag_distance, is_optimum_distance, max_flag_distance_bound, Flag, FlagType};
use flagcode::geometry::Subspace;
use flagcode::linalg::MatrixFq;
use flagcode::PrimePowerField;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field_strategy() -> impl Strategy<Value = PrimePowerField> {
    prop::sample::select(vec![(2, 1), (3, 1), (2, 2), (5, 1)]).prop_map(|(p, m)| gf(p, m))
}

fn random_matrix(rng: &mut ChaCha8Rng, f: &PrimePowerField, rows: usize, cols: usize) -> MatrixFq {
    let data = (0..rows * cols).map(|_| rng.random_range(0..f.q())).collect();
    MatrixFq::from_flat(f, rows, cols, data).unwrap()
}

fn random_invertible(rng: &mut ChaCha8Rng, f: &PrimePowerField, n: usize) -> MatrixFq {
    loop {
        let m = random_matrix(rng, f, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

proptest! {
    #[test]
    fn rref_is_idempotent_and_keeps_the_row_space(
        f in field_strategy(), rows in 0usize..6, cols in 1usize..6, seed in any::<u64>()
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, &f, rows, cols);
        let r = a.rref();
        prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
        prop_assert_eq!(r.rank, r.pivots.len());
        let p = random_invertible(&mut rng, &f, rows.max(1));
        if rows > 0 {
            let pa = p.mul(&a).unwrap();
            prop_assert_eq!(Subspace::from_matrix(&pa), Subspace::from_matrix(&a));
            prop_assert_eq!(pa.rank(), a.rank());
        }
    }

    #[test]
    fn intersection_dimension_matches_vector_count(
        f in prop::sample::select(vec![(2u64, 1u32), (3, 1), (2, 2)]).prop_map(|(p, m)| gf(p, m)),
        n in 1usize..5, du in 0usize..5, dv in 0usize..5, seed in any::<u64>()
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = Subspace::from_matrix(&random_matrix(&mut rng, &f, du, n));
        let v = Subspace::from_matrix(&random_matrix(&mut rng, &f, dv, n));
        prop_assert_eq!(u.intersection_dim(&v).unwrap(), brute_intersection_dim(&u, &v));
        prop_assert_eq!(u.distance(&v).unwrap(), brute_subspace_distance(&u, &v));
        prop_assert_eq!(u.contains(&v).unwrap(), brute_intersection_dim(&u, &v) == v.dim());
    }

    #[test]
    fn subspace_distance_is_a_metric(f in field_strategy(), n in 1usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = || {
            let d = rng.random_range(0..=n);
            Subspace::from_matrix(&random_matrix(&mut rng, &f, d, n))
        };
        let (a, b, c) = (pick(), pick(), pick());
        let d = |x: &Subspace, y: &Subspace| x.distance(y).unwrap();
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert_eq!(d(&a, &a), 0);
        prop_assert_eq!(d(&a, &b) == 0, a == b);
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
    }

    #[test]
    fn flag_distance_never_exceeds_the_bound(
        f in field_strategy(), n in 2usize..7, seed in any::<u64>()
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ty = random_type(&mut rng, n);
        let a = Flag::random(&f, ty.clone(), &mut rng);
        let b = Flag::random(&f, ty.clone(), &mut rng);
        let d = flag_distance(&a, &b).unwrap();
        let bound: usize = ty.dims().iter().map(|&t| brute_max_subspace_distance(t, n)).sum();
        prop_assert_eq!(max_flag_distance_bound(&ty), bound);
        prop_assert!(d <= bound);
        prop_assert_eq!(d, flag_distance(&b, &a).unwrap());
        prop_assert_eq!(d == 0, a == b);
    }

    #[test]
    fn optimum_verdicts_agree_on_random_codes(
        n in 2usize..7, size in 2usize..8, seed in any::<u64>()
    ) {
        let f = gf(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ty = random_type(&mut rng, n);
        if let Some(code) = random_code(&mut rng, &f, &ty, size) {
            let r = is_optimum_distance(&code).unwrap();
            prop_assert_eq!(r.min_distance, brute_min_distance(&code));
            prop_assert_eq!(r.optimum, r.characterization);
        }
    }

    #[test]
    fn channel_traces_stay_inside_the_sent_flag(
        f in prop::sample::select(vec![(2u64, 1u32), (3, 1), (2, 2)]).prop_map(|(p, m)| gf(p, m)),
        k in 1usize..3,
        eps in 0.0f64..=1.0, beta in 0.0f64..=1.0,
        packets in prop::collection::vec(0usize..5, 1),
        seed in any::<u64>(), trial in 0u64..1000,
    ) {
        let code = full_flag_code(&f, k).unwrap();
        let cfg = ChannelConfig::new(eps, beta, seed).unwrap().with_packets(packets);
        let t = trial_trace(&code, &cfg, trial, None).unwrap();
        let sent = &code.flags()[t.sent_flag_index];
        let xs = t.received.subspaces();
        for (i, x) in xs.iter().enumerate() {
            prop_assert!(sent.get(i).contains(x).unwrap());
            if i > 0 {
                prop_assert!(x.contains(&xs[i - 1]).unwrap());
            }
            prop_assert_eq!(t.shot_errors[i], code.flag_type().dims()[i] - x.dim());
        }
        prop_assert_eq!(t.total_error, t.shot_errors.iter().sum::<usize>());
        // Accumulating shots never hurts.
        for (i, z) in t.single_shot_subspaces().iter().enumerate() {
            prop_assert!(sent.get(i).distance(&xs[i]).unwrap() <= sent.get(i).distance(z).unwrap());
        }
    }
}

#[test]
fn accumulation_dominates_single_shots_on_1000_traces() {
    let code = full_flag_code(&gf(2, 1), 2).unwrap();
    for seed in 0..1000u64 {
        let cfg = ChannelConfig::new(0.3, 0.1, seed).unwrap();
        let t = trial_trace(&code, &cfg, seed, None).unwrap();
        let sent = &code.flags()[t.sent_flag_index];
        for (i, z) in t.single_shot_subspaces().iter().enumerate() {
            let acc = sent.get(i).distance(t.received.get(i)).unwrap();
            assert!(acc <= sent.get(i).distance(z).unwrap(), "seed {seed} shot {}", i + 1);
        }
    }
}

#[test]
fn injected_trace_matches_hand_computation() {
    let code = full_flag_code(&gf(2, 1), 2).unwrap();
    let f = code.field();
    // Shot 3 carries three independent combinations of the first three rows.
    let y3 = MatrixFq::from_rows(f, 3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 1, 1]]).unwrap();
    let t = inject(&code, 1, vec![MatrixFq::zeros(f, 0, 1), MatrixFq::zeros(f, 1, 2), y3]).unwrap();
    assert_eq!(t.shot_errors, vec![1, 2, 0]);
    assert_eq!(t.received.get(2), code.flags()[1].get(2));
}

#[test]
fn punctures_of_optimum_codes_stay_optimum() {
    let f = gf(2, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let parents = [
        full_flag_code(&f, 2).unwrap(),
        full_flag_code(&gf(3, 1), 2).unwrap(),
        full_flag_code(&f, 3).unwrap(),
        divisor_type_code(&f, 6, &FlagType::new(vec![1, 2, 3], 6).unwrap()).unwrap(),
    ];
    for parent in &parents {
        for _ in 0..8 {
            let dims: Vec<usize> = parent.flag_type().dims().iter().copied().filter(|_| rng.random_bool(0.5)).collect();
            if dims.is_empty() {
                continue;
            }
            let ty = FlagType::new(dims, parent.ambient()).unwrap();
            let p = puncture(parent, &ty).unwrap();
            assert_eq!(p.len(), parent.len());
            let r = is_optimum_distance(&p).unwrap();
            assert!(r.optimum && r.characterization, "{ty}");
            assert_eq!(brute_min_distance(&p), max_flag_distance_bound(&ty));
        }
    }
}
