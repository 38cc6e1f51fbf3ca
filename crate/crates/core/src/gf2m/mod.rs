//! Arithmetic in GF(2^m) with an explicit reduction polynomial.
//!
//! Elements are `m`-bit masks in the monomial basis: bit `i` is the
//! coefficient of `X^i` modulo the reduction polynomial. A [`FieldElement`]
//! remembers which reduction polynomial it belongs to, and every
//! [`FieldParams`] operation panics when handed an element of another field.

mod linearized;
mod poly2;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

pub use self::linearized::{span, F2Elimination, LinearizedPolynomial};
use crate::error::{Error, Result};

/// Largest supported extension degree. Elements fit in a `u32` and unreduced
/// products in a `u64`.
pub const MAX_DEGREE: u32 = 31;

/// Degree bound up to which irreducibility is decided by trial division.
const TRIAL_DIVISION_MAX_DEGREE: u32 = 24;

/// An element of GF(2^m).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    bits: u32,
    // low 32 bits of the reduction polynomial of the owning field
    tag: u32,
}

impl FieldElement {
    /// Coefficient mask in the monomial basis.
    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.bits == 1
    }

    pub fn to_hex(self) -> String {
        format!("{:#x}", self.bits)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.tag, rhs.tag, "field elements from different fields");
        FieldElement {
            bits: self.bits ^ rhs.bits,
            tag: self.tag,
        }
    }
}

impl std::ops::AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

/// Parses `0x`-prefixed (or bare) hexadecimal into an integer.
pub fn parse_hex(s: &str) -> Result<u64> {
    let t = s.trim();
    let digits = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    if digits.is_empty() {
        return Err(Error::Parse(format!("empty hex literal {s:?}")));
    }
    u64::from_str_radix(digits, 16).map_err(|e| Error::Parse(format!("bad hex {s:?}: {e}")))
}

/// GF(2^m) described by its extension degree and reduction polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldParams {
    m: u32,
    reduction: u64,
    // bit i set iff Tr(X^i) = 1
    trace_mask: u32,
}

impl fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldParams({self})")
    }
}

impl fmt::Display for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={},poly={:#x}", self.m, self.reduction)
    }
}

impl FromStr for FieldParams {
    type Err = Error;

    /// Parses the `m=<int>,poly=0x<hex>` form produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let mut m = None;
        let mut poly = None;
        for part in s.split(',') {
            match part.trim().split_once('=') {
                Some(("m", v)) => {
                    m = Some(
                        v.parse::<u32>()
                            .map_err(|e| Error::Parse(format!("bad m {v:?}: {e}")))?,
                    )
                }
                Some(("poly", v)) => poly = Some(parse_hex(v)?),
                _ => return Err(Error::Parse(format!("unrecognised field component {part:?}"))),
            }
        }
        let m = m.ok_or_else(|| Error::Parse(format!("missing m in {s:?}")))?;
        field_params(m, poly)
    }
}

/// Builds field parameters for GF(2^m). Without an override the reduction
/// polynomial is the smallest irreducible degree-`m` polynomial when read as
/// an integer bitmask.
pub fn field_params(m: u32, reduction_override: Option<u64>) -> Result<FieldParams> {
    match reduction_override {
        Some(poly) => FieldParams::with_reduction(m, poly),
        None => FieldParams::new(m),
    }
}

impl FieldParams {
    /// GF(2^m) with the default reduction polynomial.
    pub fn new(m: u32) -> Result<Self> {
        check_degree(m)?;
        let start = (1u64 << m) | 1;
        let end = 1u64 << (m + 1);
        for poly in (start..end).step_by(2) {
            if find_factor(poly, m).is_none() {
                return Ok(Self::from_irreducible(m, poly));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// GF(2^m) with a caller-supplied reduction polynomial, which must be
    /// monic of degree `m` and irreducible.
    pub fn with_reduction(m: u32, poly: u64) -> Result<Self> {
        check_degree(m)?;
        if poly >> m != 1 {
            return Err(Error::WrongDegree { m, poly });
        }
        if poly & 1 == 0 {
            return Err(Error::ZeroConstantTerm(poly));
        }
        if let Some(factor) = find_factor(poly, m) {
            return Err(Error::Reducible { poly, factor });
        }
        Ok(Self::from_irreducible(m, poly))
    }

    fn from_irreducible(m: u32, reduction: u64) -> Self {
        let mut params = FieldParams {
            m,
            reduction,
            trace_mask: 0,
        };
        let mut mask = 0u32;
        for i in 0..m {
            let x = 1u32 << i;
            let mut t = 0u32;
            let mut p = x;
            for _ in 0..m {
                t ^= p;
                p = params.mul_raw(p, p);
            }
            debug_assert!(t <= 1, "trace must land in the prime field");
            mask |= t << i;
        }
        params.trace_mask = mask;
        params
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field size 2^m.
    #[inline]
    pub fn q(&self) -> u64 {
        1u64 << self.m
    }

    /// Reduction polynomial as an (m+1)-bit mask.
    #[inline]
    pub fn reduction(&self) -> u64 {
        self.reduction
    }

    #[inline]
    fn tag(&self) -> u32 {
        self.reduction as u32
    }

    #[inline]
    fn check(&self, a: FieldElement) -> u32 {
        assert_eq!(
            a.tag,
            self.tag(),
            "element {a} does not belong to field {self}"
        );
        a.bits
    }

    /// Wraps a bitmask that is already known to be below q.
    #[inline]
    pub(crate) fn wrap(&self, bits: u32) -> FieldElement {
        debug_assert!((bits as u64) < self.q());
        FieldElement {
            bits,
            tag: self.tag(),
        }
    }

    /// Element with the given coefficient mask.
    pub fn element(&self, bits: u64) -> Result<FieldElement> {
        if bits >= self.q() {
            return Err(Error::NotAnElement { m: self.m, bits });
        }
        Ok(self.wrap(bits as u32))
    }

    /// Parses a hex-encoded element.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        self.element(parse_hex(s)?)
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// All q elements in ascending bitmask order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q()).map(move |b| self.wrap(b as u32))
    }

    /// The q-1 nonzero elements in ascending bitmask order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q()).map(move |b| self.wrap(b as u32))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        self.wrap(rng.gen_range(0..self.q()) as u32)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        self.wrap(rng.gen_range(1..self.q()) as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.wrap(self.check(a) ^ self.check(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.wrap(self.mul_raw(self.check(a), self.check(b)))
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        let x = self.check(a);
        self.wrap(self.mul_raw(x, x))
    }

    /// Carryless product of two reduced masks, reduced again.
    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let mut acc = 0u64;
        let mut x = a as u64;
        let mut y = b;
        while y != 0 {
            if y & 1 != 0 {
                acc ^= x;
            }
            x <<= 1;
            y >>= 1;
        }
        self.reduce(acc)
    }

    #[inline]
    fn reduce(&self, mut acc: u64) -> u32 {
        let m = self.m;
        while acc >> m != 0 {
            let top = 63 - acc.leading_zeros();
            acc ^= self.reduction << (top - m);
        }
        acc as u32
    }

    /// `a^e` on raw masks, with `e` already reduced as the caller sees fit.
    #[inline]
    pub(crate) fn pow_raw(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e != 0 {
            if e & 1 != 0 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(2^k)`, i.e. k applications of Frobenius. `k` is taken mod m.
    #[inline]
    pub(crate) fn frobenius_raw(&self, a: u32, k: u32) -> u32 {
        let mut x = a;
        for _ in 0..(k % self.m) {
            x = self.mul_raw(x, x);
        }
        x
    }

    /// `a^(2^k)`; negative `k` gives the inverse Frobenius powers `a^(2^-k)`.
    pub fn frobenius(&self, a: FieldElement, k: i64) -> FieldElement {
        let k = k.rem_euclid(self.m as i64) as u32;
        self.wrap(self.frobenius_raw(self.check(a), k))
    }

    /// `a^e`. For nonzero `a` the exponent is reduced mod q-1; `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        let x = self.check(a);
        if x == 0 {
            return if e == 0 { self.one() } else { self.zero() };
        }
        self.wrap(self.pow_raw(x, e % (self.q() - 1)))
    }

    /// `a^e` for a signed exponent; negative exponents need `a != 0`.
    pub fn pow_signed(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            return Ok(self.pow(a, e as u64));
        }
        if a.is_zero() {
            return Err(Error::InverseOfZero);
        }
        let order = (self.q() - 1) as i128;
        let r = (e as i128).rem_euclid(order) as u64;
        Ok(self.pow(a, r))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let x = self.check(a);
        if x == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(self.wrap(self.pow_raw(x, self.q() - 2)))
    }

    /// Absolute trace Tr(a) = a + a^2 + ... + a^(2^(m-1)).
    #[inline]
    pub fn trace(&self, a: FieldElement) -> u8 {
        self.trace_raw(self.check(a))
    }

    #[inline]
    pub(crate) fn trace_raw(&self, a: u32) -> u8 {
        ((a & self.trace_mask).count_ones() & 1) as u8
    }

    /// Mask `t` such that `Tr(a) = popcount(a & t) mod 2`.
    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    /// The unique square root `a^(2^(m-1))`.
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        self.frobenius(a, self.m as i64 - 1)
    }

    /// Exponent `e` with `3e = 1 (mod q-1)`, defined for odd m.
    pub fn cube_root_exponent(&self) -> Result<u64> {
        if self.m.is_multiple_of(2) {
            return Err(Error::EvenDegree("cube root", self.m));
        }
        let order = self.q() - 1;
        let e = mod_inverse(3, order).expect("gcd(3, 2^m - 1) = 1 for odd m");
        Ok(e)
    }

    /// The unique cube root for odd m; `cube_root(0) = 0`.
    pub fn cube_root(&self, a: FieldElement) -> Result<FieldElement> {
        let e = self.cube_root_exponent()?;
        Ok(self.pow(a, e))
    }

    /// Solves `v^2 + v = c`. Returns both roots `(v, v + 1)`, or `None` when
    /// `Tr(c) = 1`.
    pub fn half_trace_solve(&self, c: FieldElement) -> Option<(FieldElement, FieldElement)> {
        let cb = self.check(c);
        if self.trace_raw(cb) == 1 {
            return None;
        }
        let v = if self.m % 2 == 1 {
            // half-trace: sum of c^(4^i), i = 0..=(m-1)/2
            let mut acc = 0u32;
            let mut p = cb;
            for _ in 0..=(self.m - 1) / 2 {
                acc ^= p;
                p = self.frobenius_raw(p, 2);
            }
            acc
        } else {
            let l = LinearizedPolynomial::new(vec![(1, self.one()), (0, self.one())]);
            let sols = l.solve(self, c);
            sols.first()?.bits()
        };
        assert_eq!(
            self.mul_raw(v, v) ^ v,
            cb,
            "half-trace root failed substitution"
        );
        Some((self.wrap(v), self.wrap(v ^ 1)))
    }
}

fn check_degree(m: u32) -> Result<()> {
    if !(2..=MAX_DEGREE).contains(&m) {
        return Err(Error::UnsupportedDegree(m));
    }
    Ok(())
}

/// Returns a nontrivial factor of `poly` (degree `m`), or `None` when it is
/// irreducible.
fn find_factor(poly: u64, m: u32) -> Option<u64> {
    if m <= TRIAL_DIVISION_MAX_DEGREE {
        poly2::trial_division_factor(poly, m)
    } else {
        poly2::ben_or_factor(poly, m)
    }
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i128) as u64)
}
