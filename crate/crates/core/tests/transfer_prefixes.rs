mod common;

use std::collections::BTreeSet;

use lightsout_core::rowfinite::{cut_points, window, PeriodicSpec, RowFiniteMatrix};
use lightsout_core::transfer::{
    consistent_prefixes, exact_prefixes, solve_prefix, Certificate, PrefixPolicy, Target, TransferAutomaton,
    TruncatedSystem,
};
use lightsout_core::{Gf2Matrix, Gf2Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{mask_to_vector, random_periodic_spec, row_masks};

/// `S_H(p)` by enumerating every assignment of the horizon window.
fn brute_force_prefixes(m: &RowFiniteMatrix, n: usize, p: usize, horizon: usize) -> BTreeSet<Gf2Vector> {
    let cuts = cut_points(m, n, horizon).unwrap();
    let rows = n + if horizon >= 2 { cuts[horizon - 2] } else { 0 };
    let cols = n + cuts[horizon - 1];
    assert!(cols <= 22, "window too large for brute force");
    let masks = row_masks(&m.leading_block(rows, cols));
    let d: Vec<bool> = (1..=rows).map(|i| m.diagonal_bit(i)).collect();
    (0..1u64 << cols)
        .filter(|&x| masks.iter().zip(&d).all(|(&r, &t)| ((r & x).count_ones() % 2 == 1) == t))
        .map(|x| mask_to_vector(x & ((1 << p) - 1), p))
        .collect()
}

fn set(items: &[&str]) -> BTreeSet<Gf2Vector> {
    items.iter().map(|s| s.parse().unwrap()).collect()
}

#[test]
fn closed_path_matches_period_three_recurrence() {
    // x_{i+1} = 1 + x_i + x_{i-1}, x_0 = 0: the seed x_1 decides everything.
    let recurrence = |seed: bool, len: usize| {
        let mut x = vec![false, seed];
        while x.len() < len + 1 {
            let k = x.len();
            x.push(!(x[k - 1] ^ x[k - 2]));
        }
        Gf2Vector::from_bits(x[1..].iter().copied())
    };
    let expected: BTreeSet<Gf2Vector> = [false, true].iter().map(|&s| recurrence(s, 6)).collect();
    assert_eq!(expected, set(&["100100", "010010"]));
    let exact = exact_prefixes(&PeriodicSpec::path(true), 6, &Target::Diagonal).unwrap();
    assert_eq!(exact.prefixes, expected);
    assert_eq!(exact.horizon, Certificate::Exact);

    let m = RowFiniteMatrix::path(true);
    for h in 2..=10 {
        let s = consistent_prefixes(&m, 3, 3, h, &Target::Diagonal).unwrap();
        assert_eq!(s.prefixes, set(&["100", "010"]), "H = {h}");
        assert_eq!(s.prefixes, brute_force_prefixes(&m, 3, 3, h));
    }
}

#[test]
fn spec_examples() {
    let id = RowFiniteMatrix::identity_diagonal();
    for h in 1..6 {
        assert_eq!(consistent_prefixes(&id, 4, 4, h, &Target::Diagonal).unwrap().prefixes, set(&["1111"]));
    }
    assert_eq!(exact_prefixes(&PeriodicSpec::identity(), 4, &Target::Diagonal).unwrap().prefixes, set(&["1111"]));
    assert!(exact_prefixes(&PeriodicSpec::path(false), 2, &Target::Diagonal)
        .unwrap()
        .contains(&"00".parse().unwrap()));

    let closed = RowFiniteMatrix::periodic(PeriodicSpec::path(true));
    let a = solve_prefix(&closed, 3, PrefixPolicy::Exact, &Target::Diagonal).unwrap();
    assert_eq!((a.prefix.to_string(), a.certificate.to_string()), ("010".into(), "EXACT".into()));
    let id = RowFiniteMatrix::periodic(PeriodicSpec::identity());
    assert_eq!(solve_prefix(&id, 2, PrefixPolicy::Exact, &Target::Diagonal).unwrap().prefix.to_string(), "11");
    let open = RowFiniteMatrix::periodic(PeriodicSpec::path(false));
    assert_eq!(solve_prefix(&open, 3, PrefixPolicy::Exact, &Target::Diagonal).unwrap().prefix.to_string(), "000");
    let h = solve_prefix(&closed, 3, PrefixPolicy::Horizon { n: 3, horizon: 8 }, &Target::Diagonal).unwrap();
    assert_eq!(h.certificate.to_string(), "HORIZON(8)");
}

#[test]
fn horizon_sets_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 40 {
        let m = RowFiniteMatrix::periodic(random_periodic_spec(&mut rng, 3));
        let n = rng.gen_range(1..=4);
        let h = rng.gen_range(1..=4);
        let cuts = cut_points(&m, n, h).unwrap();
        if n + cuts[h - 1] > 16 {
            continue;
        }
        let p = rng.gen_range(0..=n + cuts[0]);
        let got = consistent_prefixes(&m, n, p, h, &Target::Diagonal).unwrap();
        assert_eq!(got.prefixes, brute_force_prefixes(&m, n, p, h), "{m:?} n={n} p={p} H={h}");
        checked += 1;
    }
}

#[test]
fn horizon_sets_shrink_and_settle_on_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let spec = random_periodic_spec(&mut rng, 3);
        let m = RowFiniteMatrix::periodic(spec.clone());
        let n = 8;
        for p in [1, 4, 8] {
            let mut prev: Option<BTreeSet<Gf2Vector>> = None;
            for h in 1..=32 {
                let s = consistent_prefixes(&m, n, p, h, &Target::Diagonal).unwrap().prefixes;
                assert!(!s.is_empty());
                if let Some(prev) = &prev {
                    assert!(s.is_subset(prev), "{spec:?}: S_{h}({p}) grew");
                }
                prev = Some(s);
            }
            let exact = exact_prefixes(&spec, p, &Target::Diagonal).unwrap().prefixes;
            let least = solve_prefix(&m, p, PrefixPolicy::Exact, &Target::Diagonal).unwrap().prefix;
            assert_eq!(exact.iter().next(), Some(&least));
            assert_eq!(Some(exact), prev, "{spec:?} p={p}");
        }
    }
}

#[test]
fn truncated_solutions_satisfy_nested_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let m = RowFiniteMatrix::periodic(random_periodic_spec(&mut rng, 3));
        let n = rng.gen_range(1..=5);
        let level = rng.gen_range(1..=5);
        let sys = TruncatedSystem::new(&m, n, level).unwrap();
        let sols = sys.solutions().unwrap();
        let mut z = sols.particular().expect("diagonal is in the range").clone();
        for v in sols.nullspace_basis() {
            if rng.gen_bool(0.5) {
                z ^= v;
            }
        }
        assert!(sys.nested_sums_hold(&z).unwrap());
        let mut broken = z.clone();
        broken.toggle(0);
        let solves = sys.window.matvec(&broken).unwrap() == sys.diagonal;
        assert_eq!(sys.nested_sums_hold(&broken).unwrap(), solves);
    }
}

#[test]
fn exact_prefixes_extend_to_window_solutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..40 {
        let spec = random_periodic_spec(&mut rng, 3);
        let auto = TransferAutomaton::new(&spec, &Target::Diagonal).unwrap();
        let live = auto.live_states();
        let p = rng.gen_range(1..=8);
        for prefix in auto.prefixes(p, &live).unwrap() {
            for cells in [2, 5, 10] {
                let x = auto.extend_prefix(&prefix, cells, &live).unwrap().expect("member extends");
                assert_eq!(x.prefix(p), prefix);
                // rows whose support fits inside x
                let rows = spec.preamble_size() + (cells - 1) * spec.cell_size();
                let a = Gf2Matrix::from_rows(
                    x.len(),
                    (0..rows).map(|i| window(&RowFiniteMatrix::periodic(spec.clone()), x.len()).row(i).clone()).collect(),
                )
                .unwrap();
                let d = RowFiniteMatrix::periodic(spec.clone()).diagonal_prefix(rows);
                assert_eq!(a.matvec(&x).unwrap(), d, "{spec:?} prefix {prefix}");
            }
        }
    }
}

#[test]
fn eventually_periodic_solution_solves_long_windows() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let spec = random_periodic_spec(&mut rng, 3);
        let auto = TransferAutomaton::new(&spec, &Target::Diagonal).unwrap();
        let sol = auto.eventually_periodic(&auto.live_states()).unwrap();
        let m = RowFiniteMatrix::periodic(spec.clone());
        let len = spec.preamble_size() + 30 * spec.cell_size();
        let x = sol.expand(len + spec.cell_size());
        let w = window(&m, len + spec.cell_size());
        let ax = w.matvec(&x).unwrap();
        assert_eq!(ax.prefix(len), m.diagonal_prefix(len), "{spec:?}");
    }
}

#[test]
fn prefix_query_errors() {
    let m = RowFiniteMatrix::path(true);
    assert!(consistent_prefixes(&m, 1, 3, 4, &Target::Diagonal).is_err());
    assert!(consistent_prefixes(&m, 1, 2, 0, &Target::Diagonal).is_err());
    assert!(solve_prefix(&m, 3, PrefixPolicy::Exact, &Target::Diagonal).is_err());
    let asym = RowFiniteMatrix::from_fn(|i| if i == 2 { vec![1, 2] } else { vec![i] });
    assert!(consistent_prefixes(&asym, 2, 2, 2, &Target::Diagonal).is_err());
}
