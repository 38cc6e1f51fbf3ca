//! Point counts of y^2 + y = a x^5 + b x^3 + c x + d from the radical of
//! the associated quadratic form, checked against direct enumeration.
//!
//!     cargo run --example curve_point_count -- 9

use bfcurve::curves::{analyze, ArtinSchreierQuintic};
use bfcurve::FieldParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bfcurve::Result<()> {
    let m: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(9);
    let f = FieldParams::new(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    println!("{:>8} {:>8} {:>8} {:>8}  w  count  admissible", "a", "b", "c", "d");
    for _ in 0..8 {
        let curve = ArtinSchreierQuintic::random(&f, &mut rng);
        let rep = analyze(&f, &curve)?;
        println!(
            "{:>8} {:>8} {:>8} {:>8} {:>2} {:>6}  {:?}",
            curve.a.to_hex(), curve.b.to_hex(), curve.c.to_hex(), curve.d.to_hex(), rep.w, rep.count_direct, rep.admissible
        );
    }
    Ok(())
}
