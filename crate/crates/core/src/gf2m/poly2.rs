//! Polynomials over F2 packed in a `u64` (bit i = coefficient of X^i).

#[inline]
fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

pub(super) fn rem(mut a: u64, b: u64) -> u64 {
    debug_assert!(b != 0);
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, rem(a, b));
    }
    a
}

/// `a * b mod modulus` for `deg a, deg b < deg modulus <= 32`.
fn mulmod(a: u64, b: u64, modulus: u64) -> u64 {
    let mut acc = 0u64;
    let mut x = a;
    let mut y = b;
    let dm = degree(modulus);
    while y != 0 {
        if y & 1 != 0 {
            acc ^= x;
        }
        y >>= 1;
        x <<= 1;
        if degree(x) == dm {
            x ^= modulus;
        }
    }
    acc
}

/// Smallest divisor of degree 1..=m/2 found by trial division, if any.
pub(super) fn trial_division_factor(poly: u64, m: u32) -> Option<u64> {
    for d in 1..=m / 2 {
        for low in 0..(1u64 << d) {
            let divisor = (1u64 << d) | low;
            if rem(poly, divisor) == 0 {
                return Some(divisor);
            }
        }
    }
    None
}

/// Ben-Or test: `poly` is irreducible iff gcd(X^(2^k) - X, poly) = 1 for all
/// k <= m/2. Returns the first nontrivial gcd found.
pub(super) fn ben_or_factor(poly: u64, m: u32) -> Option<u64> {
    let x = 0b10u64;
    let mut power = x;
    for _ in 1..=m / 2 {
        power = mulmod(power, power, poly);
        let g = gcd(poly, power ^ x);
        if g != 1 {
            return Some(g);
        }
    }
    None
}
