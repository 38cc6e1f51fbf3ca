//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line per
//! criterion, and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bfcurve::apn::{cv_sum, differential_uniformity};
use bfcurve::boolfn::{
    analyze_trace_function, FamilyPolynomial, PowerSums, SparsePolynomial, SpectrumStats,
};
use bfcurve::curves::{self, analyze, ArtinSchreierQuintic};
use bfcurve::xalpha::{derivative_curve, ell, l4_bound_holds, n2_bound_holds, n8_bound_holds};
use bfcurve::FieldParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn(&mut Shared) -> Outcome,
}

/// Data computed by one criterion and checked again by a later one.
#[derive(Default)]
struct Shared {
    corpus_stats: Vec<(u32, SpectrumStats)>,
    sweeps: Vec<Sweep>,
}

struct Sweep {
    m: u32,
    s: u32,
    x_values: Vec<u128>,
    tr_ell: Vec<u8>,
    l4p4_fwht: u128,
}

fn field(m: u32) -> FieldParams {
    FieldParams::new(m).expect("default field")
}

/// Random family members with s cycling through 0, 1, 2.
fn family_corpus(f: &FieldParams, count: usize, seed: u64) -> Vec<FamilyPolynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let s = (k as u32 % 3).min(f.m() - 1);
            FamilyPolynomial::random(f, s, &mut rng).unwrap()
        })
        .collect()
}

fn c1_parseval(sh: &mut Shared) -> Outcome {
    let mut n = 0;
    for m in [3, 5, 7, 9, 11, 13, 15] {
        let f = field(m);
        for g in family_corpus(&f, 100, 100 + m as u64) {
            // spectrum_stats rejects any spectrum whose (1/q) sum f^2 != q
            let (_, st) = analyze_trace_function(&f, &g).map_err(|e| format!("m={m}: {e}"))?;
            if st.l2sq != f.q() as u128 {
                return Err(format!("m={m}: l2sq = {}", st.l2sq));
            }
            sh.corpus_stats.push((m, st));
            n += 1;
        }
    }
    Ok(format!("{n} spectra, (1/q) sum f^2 = q in every one"))
}

fn c2_norm_chain(sh: &mut Shared) -> Outcome {
    if sh.corpus_stats.is_empty() {
        return Err("criterion 1 corpus missing".into());
    }
    for (m, st) in &sh.corpus_stats {
        let q = 1u128 << m;
        let PowerSums { linf, sum2, sum4 } = st.sums;
        let l2 = (linf as u128) * (linf as u128);
        if sum2 * sum2 > q * sum4 || sum4 > l2 * sum2 {
            return Err(format!("m={m}: chain broken (linf={linf})"));
        }
    }
    Ok(format!("{} spectra", sh.corpus_stats.len()))
}

fn c3_curve_triangle(_: &mut Shared) -> Outcome {
    let mut total = 0;
    for m in [3, 5, 7, 9, 11] {
        let f = field(m);
        let q = f.q();
        let mut rng = ChaCha8Rng::seed_from_u64(300 + m as u64);
        for _ in 0..1000 {
            let c = ArtinSchreierQuintic::random(&f, &mut rng);
            let rep = analyze(&f, &c).map_err(|e| format!("m={m}: {e}"))?;
            let s = curves::exp_sum(&f, &c);
            if rep.count_direct as i64 != 1 + q as i64 + s {
                return Err(format!("m={m}: count {} vs 1+q+S", rep.count_direct));
            }
            if !rep.admissible.contains(&rep.count_direct) {
                return Err(format!("m={m}: count {} not admissible", rep.count_direct));
            }
            total += 1;
        }
    }
    Ok(format!("{total} curves, zero failures"))
}

fn c4_value_set(sh: &mut Shared) -> Outcome {
    let mut failures = 0u64;
    let mut alphas = 0u64;
    for m in [5, 7, 9, 11, 13] {
        let f = field(m);
        let q = f.q() as u128;
        for g in family_corpus(&f, 20, 400 + m as u64) {
            let mut x_values = Vec::with_capacity(f.q() as usize - 1);
            let mut tr_ell = Vec::with_capacity(f.q() as usize - 1);
            for alpha in f.nonzero_elements() {
                let c = derivative_curve(&f, &g, alpha).map_err(|e| e.to_string())?;
                let x = curves::squared_deviation(&f, &c);
                if x != 0 && x != 2 * q && x != 8 * q {
                    failures += 1;
                }
                x_values.push(x);
                tr_ell.push(f.trace(ell(&f, g.a7(), alpha).map_err(|e| e.to_string())?));
                alphas += 1;
            }
            let (_, st) = analyze_trace_function(&f, &g).map_err(|e| e.to_string())?;
            sh.sweeps.push(Sweep {
                m,
                s: g.s(),
                x_values,
                tr_ell,
                l4p4_fwht: st.l4p4,
            });
        }
    }
    if failures > 0 {
        return Err(format!("{failures} of {alphas} X_alpha outside {{0, 2q, 8q}}"));
    }
    Ok(format!("{} polynomials, {alphas} alphas", sh.sweeps.len()))
}

fn c5_two_q_criterion(sh: &mut Shared) -> Outcome {
    if sh.sweeps.is_empty() {
        return Err("criterion 4 sweeps missing".into());
    }
    let mut exceptions = 0;
    let mut checked = 0;
    for sw in &sh.sweeps {
        let q = 1u128 << sw.m;
        for (&x, &t) in sw.x_values.iter().zip(&sw.tr_ell) {
            if (t == 1) != (x == 2 * q) {
                exceptions += 1;
            }
            checked += 1;
        }
    }
    if exceptions > 0 {
        return Err(format!("{exceptions} exceptions in {checked} alphas"));
    }
    Ok(format!("Tr(ell)=1 <=> X=2q on all {checked} alphas"))
}

fn c6_l4_identity(sh: &mut Shared) -> Outcome {
    if sh.sweeps.is_empty() {
        return Err("criterion 4 sweeps missing".into());
    }
    for sw in &sh.sweeps {
        let q = 1u128 << sw.m;
        let curve_route = q * q + sw.x_values.iter().sum::<u128>();
        if curve_route != sw.l4p4_fwht {
            return Err(format!(
                "m={}: q^2 + sum X = {curve_route} but FWHT gives {}",
                sw.m, sw.l4p4_fwht
            ));
        }
    }
    Ok(format!("{} polynomials, exact agreement", sh.sweeps.len()))
}

fn c7_l4_bound(sh: &mut Shared) -> Outcome {
    if sh.sweeps.is_empty() {
        return Err("criterion 4 sweeps missing".into());
    }
    let mut eval_fail = 0;
    let (mut n8_ok, mut n2_ok) = (0, 0);
    let mut per_s = [0usize; 3];
    for sw in &sh.sweeps {
        let q = 1u128 << sw.m;
        let n8 = sw.x_values.iter().filter(|&&x| x == 8 * q).count() as u64;
        let n2 = sw.x_values.iter().filter(|&&x| x == 2 * q).count() as u64;
        if !l4_bound_holds(sw.m, sw.s, sw.l4p4_fwht).map_err(|e| e.to_string())? {
            eval_fail += 1;
        }
        n8_ok += n8_bound_holds(sw.m, sw.s, n8) as usize;
        n2_ok += n2_bound_holds(sw.m, n2) as usize;
        per_s[sw.s as usize] += 1;
    }
    let n = sh.sweeps.len();
    let detail = format!(
        "eval bound {}/{n} (s=0,1,2: {:?}); n8 bound {n8_ok}/{n}; n2 bound {n2_ok}/{n}",
        n - eval_fail,
        per_s
    );
    if eval_fail > 0 {
        return Err(detail);
    }
    Ok(detail)
}

fn c8_lower_bounds(_: &mut Shared) -> Outcome {
    let mut n = 0;
    for m in [5, 7, 9, 11, 15] {
        let f = field(m);
        let q = f.q() as u128;
        let modulus = 1u64 << m.div_ceil(3);
        let mut rng = ChaCha8Rng::seed_from_u64(800 + m as u64);
        for _ in 0..20 {
            let g = FamilyPolynomial::random(&f, 0, &mut rng).unwrap();
            let (_, st) = analyze_trace_function(&f, &g).map_err(|e| e.to_string())?;
            let l2 = (st.linf as u128) * (st.linf as u128);
            if l2 < 2 * q {
                return Err(format!("m={m}: linf^2 = {l2} < 2q"));
            }
            if m == 15 {
                if l2 <= 2 * q {
                    return Err(format!("m=15: linf^2 = {l2} not > 2q"));
                }
                if st.linf % modulus != 0 {
                    return Err(format!("m=15: linf = {} not divisible by {modulus}", st.linf));
                }
            }
            n += 1;
        }
    }
    Ok(format!("{n} random a7 (s=0)"))
}

fn c9_apn_triangle(_: &mut Shared) -> Outcome {
    for m in [3, 5, 7, 9] {
        let f = field(m);
        let g = SparsePolynomial::monomial(3, f.one());
        let delta = differential_uniformity(&f, &g);
        let cv = cv_sum(&f, &g).map_err(|e| e.to_string())?;
        let q = f.q() as u128;
        if delta != 2 || cv.sum != 2 * q * q * (q - 1) {
            return Err(format!("x^3 at m={m}: delta={delta}, cv_sum={}", cv.sum));
        }
    }
    let mut n = 0;
    let mut apn = 0;
    for m in [7, 9] {
        let f = field(m);
        for g in family_corpus(&f, 20, 900 + m as u64) {
            let delta = differential_uniformity(&f, &g);
            let cv = cv_sum(&f, &g).map_err(|e| e.to_string())?;
            if (delta <= 2) != cv.equality || cv.sum < cv.bound {
                return Err(format!("m={m}: delta={delta}, cv equality={}", cv.equality));
            }
            apn += (delta <= 2) as usize;
            n += 1;
        }
    }
    Ok(format!("x^3 APN at m=3..9; {n} family members consistent ({apn} APN)"))
}

fn c10_non_apn(_: &mut Shared) -> Outcome {
    let mut deltas = Vec::new();
    for m in [11, 13] {
        let f = field(m);
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + m as u64);
        for _ in 0..10 {
            let g = FamilyPolynomial::random(&f, 0, &mut rng).unwrap();
            let delta = differential_uniformity(&f, &g);
            if delta < 4 {
                return Err(format!("m={m}: a7={} has delta={delta}", g.a7()));
            }
            deltas.push(delta);
        }
    }
    Ok(format!(
        "20 polynomials, min delta {}",
        deltas.iter().min().unwrap()
    ))
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "Parseval", limit: Some(Duration::from_secs(5)), run: c1_parseval },
    Criterion { id: 2, name: "norm chain", limit: Some(Duration::from_secs(1)), run: c2_norm_chain },
    Criterion { id: 3, name: "curve-count triangle", limit: Some(Duration::from_secs(30)), run: c3_curve_triangle },
    Criterion { id: 4, name: "X_alpha value set", limit: Some(Duration::from_secs(60)), run: c4_value_set },
    Criterion { id: 5, name: "2q trace criterion", limit: None, run: c5_two_q_criterion },
    Criterion { id: 6, name: "L4 identity", limit: None, run: c6_l4_identity },
    Criterion { id: 7, name: "L4 deviation bound", limit: None, run: c7_l4_bound },
    Criterion { id: 8, name: "amplitude lower bounds", limit: Some(Duration::from_secs(10)), run: c8_lower_bounds },
    Criterion { id: 9, name: "APN triangle", limit: Some(Duration::from_secs(60)), run: c9_apn_triangle },
    Criterion { id: 10, name: "non-APN desk check", limit: Some(Duration::from_secs(120)), run: c10_non_apn },
];

fn main() -> ExitCode {
    let mut shared = Shared::default();
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)(&mut shared);
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} criterion {:>2} {:<24} {:>9.2?}  {detail}",
            c.id, c.name, elapsed
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", CRITERIA.len());
        ExitCode::FAILURE
    } else {
        println!("all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    }
}
