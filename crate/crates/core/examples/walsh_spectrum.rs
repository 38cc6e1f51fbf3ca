//! Walsh spectrum of x -> Tr(G(x)) for a family polynomial, with the
//! norm chain and divisibility checks.
//!
//!     cargo run --release --example walsh_spectrum -- 11

use bfcurve::boolfn::{analyze_trace_function, divisibility_check, FamilyPolynomial};
use bfcurve::FieldParams;

fn main() -> bfcurve::Result<()> {
    let m: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(11);
    let f = FieldParams::new(m)?;
    let g = FamilyPolynomial::parse(&f, "0x3", "1:0x5", false)?;
    println!("G = {g} over {f}");

    let (sp, st) = analyze_trace_function(&f, &g)?;
    println!("linf = {}, nonlinearity = {}", st.linf, st.nl);
    println!("sum of squares / q = {} (q = {})", st.l2sq, f.q());
    println!("sum of fourth powers / q = {}", st.l4p4);
    println!("norm chain holds: {}", st.norm_chain_holds()?);

    let div = divisibility_check(&sp, 3)?;
    println!(
        "every coefficient divisible by {}: {}",
        div.modulus, div.all_coefficients_divisible
    );

    let mut peaks: Vec<(usize, i64)> = sp.values().iter().copied().enumerate().collect();
    peaks.sort_by_key(|&(v, w)| (std::cmp::Reverse(w.abs()), v));
    for (v, w) in peaks.into_iter().take(5) {
        println!("  W({v:#x}) = {w}");
    }
    Ok(())
}
