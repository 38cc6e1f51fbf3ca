//! Deviation and amplitude bounds over a few fields and sample sizes.
//!
//!     cargo run --release --example lower_bounds

use bfcurve::boolfn::FamilyPolynomial;
use bfcurve::xalpha::survey;
use bfcurve::FieldParams;

fn main() -> bfcurve::Result<()> {
    println!(" m  s      linf  eval  n8  n2  lower  strict  scope");
    for m in [9u32, 11, 13, 15] {
        let f = FieldParams::new(m)?;
        for s in 0..3 {
            for g in FamilyPolynomial::sample(&f, s, 2, 100 + m as u64)? {
                let r = survey(&f, &g)?;
                println!(
                    "{m:>2} {s:>2} {:>9} {:>5} {:>3} {:>3} {:>6} {:>7}  {:?}",
                    r.linf,
                    r.bound_eval_holds,
                    r.bound_n8_holds,
                    r.bound_n2_holds,
                    r.lower_bound_holds,
                    r.strict_lower_holds,
                    r.lower_bound_scope
                );
            }
        }
    }
    Ok(())
}
