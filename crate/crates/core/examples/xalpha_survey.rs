//! Squared derivative sums X_alpha for every nonzero alpha, and the
//! trace criterion that singles out the 2q class.
//!
//!     cargo run --release --example xalpha_survey -- 13

use bfcurve::boolfn::FamilyPolynomial;
use bfcurve::xalpha::{classify_all, survey, XAlphaClass};
use bfcurve::FieldParams;

fn main() -> bfcurve::Result<()> {
    let m: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(13);
    let f = FieldParams::new(m)?;
    let g = FamilyPolynomial::sample(&f, 1, 1, 7)?.remove(0);
    println!("G = {g} over {f}");

    let records = classify_all(&f, &g)?;
    for r in records.iter().take(6) {
        println!(
            "  alpha = {:>6}  ell = {:>6}  Tr(ell) = {}  X = {}",
            r.alpha, r.ell, r.tr_ell, r.x_alpha
        );
    }
    let twos = records.iter().filter(|r| r.klass == XAlphaClass::TwoQ).count();
    let trace_one = records.iter().filter(|r| r.tr_ell == 1).count();
    println!("X = 2q for {twos} alphas, Tr(ell) = 1 for {trace_one}");

    let rep = survey(&f, &g)?;
    println!("n0 = {}, n2 = {}, n8 = {}", rep.n0, rep.n2, rep.n8);
    println!(
        "fourth moment: {} from curves, {} from the spectrum",
        rep.l4p4_curve, rep.l4p4_fwht
    );
    Ok(())
}
