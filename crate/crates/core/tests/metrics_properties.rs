use photonchip::metrics::{logical_fidelity, similarity, Permutation, TruthTable};
use photonchip::TruthTable64;
use proptest::prelude::*;

fn row_stochastic() -> impl Strategy<Value = TruthTable64> {
    proptest::array::uniform4(proptest::array::uniform4(0.0f64..1.0)).prop_filter_map("non-zero rows", |raw| {
        let mut rows = [[0.0; 4]; 4];
        for (row, r) in rows.iter_mut().zip(raw) {
            let s: f64 = r.iter().sum();
            if s < 1e-6 {
                return None;
            }
            for (x, y) in row.iter_mut().zip(r) {
                *x = y / s;
            }
        }
        Some(TruthTable { rows, success: [1.0; 4] })
    })
}

fn permutation() -> impl Strategy<Value = Permutation> {
    Just(vec![0usize, 1, 2, 3]).prop_shuffle().prop_map(|v| Permutation([v[0], v[1], v[2], v[3]]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn similarity_range_and_symmetry(a in row_stochastic(), b in row_stochastic()) {
        let s = similarity(&a, &b);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&s));
        prop_assert!((s - similarity(&b, &a)).abs() < 1e-15);
        prop_assert!((similarity(&a, &a) - 1.0).abs() < 1e-12);
        a.validate().unwrap();
    }

    #[test]
    fn fidelity_is_mean_of_target_entries(t in row_stochastic(), p in permutation()) {
        let expected = (t.rows[0][p.0[0]] + t.rows[1][p.0[1]] + t.rows[2][p.0[2]] + t.rows[3][p.0[3]]) / 4.0;
        prop_assert_eq!(logical_fidelity(&t, p), expected);
    }

    #[test]
    fn similarity_one_only_for_equal_tables(a in row_stochastic(), b in row_stochastic()) {
        let max_diff = a.rows.iter().flatten().zip(b.rows.iter().flatten()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        if max_diff > 1e-3 {
            prop_assert!(similarity(&a, &b) < 1.0 - 1e-12);
        }
    }
}
