use bfcurve::boolfn::{
    divisibility_check, spectrum_stats, walsh_transform, walsh_transform_dot, FamilyPolynomial,
    Polynomial, SparsePolynomial, TruthTable,
};
use bfcurve::FieldParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn naive_walsh(f: &FieldParams, tt: &TruthTable) -> Vec<i64> {
    f.elements()
        .map(|v| {
            f.elements()
                .map(|x| {
                    let bit = tt.values()[x.bits() as usize] ^ f.trace(f.mul(v, x));
                    1 - 2 * bit as i64
                })
                .sum()
        })
        .collect()
}

fn random_table(m: u32, rng: &mut ChaCha8Rng) -> TruthTable {
    TruthTable::new(m, (0..1usize << m).map(|_| rng.gen_range(0..2)).collect()).unwrap()
}

#[test]
fn fwht_matches_double_loop() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for m in 2..=8 {
        let f = FieldParams::new(m).unwrap();
        for _ in 0..50 {
            let tt = random_table(m, &mut rng);
            assert_eq!(walsh_transform(&f, &tt).values(), naive_walsh(&f, &tt).as_slice());
        }
    }
}

#[test]
fn parseval_and_norm_chain_on_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for m in 3..=17 {
        let f = FieldParams::new(m).unwrap();
        let count = if m <= 10 { 30 } else { 100 };
        for k in 0..count {
            let s = (k % 3).min(m - 1);
            let g = FamilyPolynomial::random(&f, s, &mut rng).unwrap();
            let sp = walsh_transform(&f, &TruthTable::from_trace_poly(&f, &g));
            // spectrum_stats fails unless Parseval holds exactly
            let st = spectrum_stats(&sp).unwrap();
            assert_eq!(st.l2sq, f.q() as u128);
            assert!(st.norm_chain_holds().unwrap());
            assert!(st.amplitude_bounds_hold());
            assert_eq!(st.nl, (1 << (m - 1)) - st.linf / 2);
        }
    }
}

#[test]
fn parseval_on_random_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in 2..=10 {
        let f = FieldParams::new(m).unwrap();
        for _ in 0..20 {
            let st = spectrum_stats(&walsh_transform(&f, &random_table(m, &mut rng))).unwrap();
            assert!(st.norm_chain_holds().unwrap());
            assert!(st.amplitude_bounds_hold());
        }
    }
}

#[test]
fn trace_and_dot_pairings_give_same_multiset() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for m in 2..=8 {
        let f = FieldParams::new(m).unwrap();
        for _ in 0..10 {
            let tt = random_table(m, &mut rng);
            let mut a = walsh_transform(&f, &tt).values().to_vec();
            let mut b = walsh_transform_dot(&tt).values().to_vec();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn divisibility_for_binary_degree_three() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in [7, 9, 11] {
        let f = FieldParams::new(m).unwrap();
        for s in 0..3 {
            let g = FamilyPolynomial::random(&f, s, &mut rng).unwrap();
            let d = g.to_sparse().binary_degree().unwrap();
            assert_eq!(d, 3);
            let sp = walsh_transform(&f, &TruthTable::from_trace_poly(&f, &g));
            let rep = divisibility_check(&sp, d).unwrap();
            assert_eq!(rep.modulus, 1 << m.div_ceil(3));
            assert!(rep.holds, "m={m}: {rep:?}");
            assert!(rep.all_coefficients_divisible, "m={m}: {rep:?}");
        }
    }
}

#[test]
fn quadratic_gold_spectrum_is_plateaued() {
    for m in [5, 7, 9] {
        let f = FieldParams::new(m).unwrap();
        let g = SparsePolynomial::monomial(3, f.one());
        let sp = walsh_transform(&f, &TruthTable::from_trace_poly(&f, &g));
        let amp = 1i64 << m.div_ceil(2);
        assert!(sp.values().iter().all(|&w| w == 0 || w.abs() == amp));
        let st = spectrum_stats(&sp).unwrap();
        assert_eq!(st.l4p4, 2 * (f.q() as u128).pow(2));
    }
}

#[test]
fn linear_forms_spike_at_their_coefficient() {
    let f = FieldParams::new(7).unwrap();
    for a in f.nonzero_elements().step_by(9) {
        let tt = TruthTable::from_trace_poly(&f, &SparsePolynomial::monomial(1, a));
        assert_eq!(tt.weight(), 64);
        let sp = walsh_transform(&f, &tt);
        assert_eq!(sp.values()[a.bits() as usize], 128);
        assert_eq!(sp.values().iter().filter(|&&w| w != 0).count(), 1);
    }
}

#[test]
fn b0_term_only_shifts_the_spectrum() {
    let f = FieldParams::new(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let a7 = f.random_nonzero(&mut rng);
    let b0 = f.random_nonzero(&mut rng);
    let plain = FamilyPolynomial::new(&f, a7, vec![]).unwrap();
    let shifted = FamilyPolynomial::new_allowing_b0(&f, a7, vec![(0, b0)]).unwrap();
    assert!(shifted.has_b0());
    assert_eq!(shifted.s(), 0);
    let sp1 = walsh_transform(&f, &TruthTable::from_trace_poly(&f, &plain));
    let sp2 = walsh_transform(&f, &TruthTable::from_trace_poly(&f, &shifted));
    // Tr(b0 x^2) = Tr(sqrt(b0) x): f^_2(v) = f^_1(v + sqrt(b0))
    let r = f.sqrt(b0).bits() as usize;
    for v in 0..f.q() as usize {
        assert_eq!(sp2.values()[v], sp1.values()[v ^ r]);
    }
}
