//! Differential uniformity, the Chabaud-Vaudenay sum and the non-APN
//! predicate for a Gold map and for family members.
//!
//!     cargo run --release --example apn_check

use bfcurve::apn::apn_report;
use bfcurve::boolfn::{FamilyPolynomial, SparsePolynomial};
use bfcurve::FieldParams;

fn main() -> bfcurve::Result<()> {
    let f = FieldParams::new(7)?;
    let gold = SparsePolynomial::monomial(3, f.one());
    let rep = apn_report(&f, &gold, None)?;
    println!(
        "x^3 over {f}: delta = {}, cv sum = {} (bound {})",
        rep.delta, rep.cv_sum, rep.cv_bound
    );

    for m in [9u32, 11, 13] {
        let f = FieldParams::new(m)?;
        let g = FamilyPolynomial::sample(&f, 0, 1, 1)?.remove(0);
        let rep = apn_report(&f, &g, Some(g.s()))?;
        println!(
            "{g} over {f}: delta = {}, apn = {}, predicate {:?} {}",
            rep.delta,
            rep.is_apn,
            rep.predicate.verdict,
            rep.predicate.reason.as_deref().unwrap_or("")
        );
    }
    Ok(())
}
