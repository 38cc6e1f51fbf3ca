//! Arithmetic in GF(2^m): products, inverses, roots and the trace.
//!
//!     cargo run --example field_arithmetic -- 7

use bfcurve::FieldParams;

fn main() -> bfcurve::Result<()> {
    let m: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let f = FieldParams::new(m)?;
    println!("field {f} (q = {})", f.q());

    let a = f.element(0x5)?;
    let b = f.element(0x3)?;
    println!("a = {a}, b = {b}");
    println!("a + b   = {}", f.add(a, b));
    println!("a * b   = {}", f.mul(a, b));
    println!("a^-1    = {}", f.inv(a)?);
    println!("sqrt(a) = {}", f.sqrt(a));
    println!("Tr(a)   = {}, Tr(b) = {}", f.trace(a), f.trace(b));
    if m % 2 == 1 {
        let r = f.cube_root(a)?;
        println!("cbrt(a) = {r}, check {}", f.pow(r, 3));
    }

    // v^2 + v = c is solvable exactly when Tr(c) = 0
    for c in f.nonzero_elements().take(4) {
        match f.half_trace_solve(c) {
            Some((v0, v1)) => println!("v^2 + v = {c}: v in {{{v0}, {v1}}}"),
            None => println!("v^2 + v = {c}: no solution (Tr = 1)"),
        }
    }
    Ok(())
}
