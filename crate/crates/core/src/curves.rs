//! Point counts of `C: y^2 + y = a x^5 + b x^3 + c x + d` over GF(2^m) from
//! the quadratic form `Q(x) = Tr(x R(x))`, `R(x) = a x^4 + b x^2 + c^2 x`.
//!
//! The radical `W` of the symplectic form `<x, y> = Tr(x R(y) + y R(x))` is
//! the kernel of `E = R + R^`, where `R^` is the trace-adjoint of `R`. With
//! `V = {x in W : Q(x) = 0}`, the count is `1 + q` when `V != W` and
//! `1 + q +- sqrt(2^w q)` otherwise. The sign is never predicted; it is read
//! off the direct count.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2m::{span, FieldElement, FieldParams, LinearizedPolynomial};

/// `y^2 + y = a x^5 + b x^3 + c x + d` with `a != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArtinSchreierQuintic {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

impl ArtinSchreierQuintic {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Domain("quintic coefficient a must be nonzero".into()));
        }
        Ok(ArtinSchreierQuintic { a, b, c, d })
    }

    pub fn random<R: rand::Rng + ?Sized>(field: &FieldParams, rng: &mut R) -> Self {
        ArtinSchreierQuintic {
            a: field.random_nonzero(rng),
            b: field.random(rng),
            c: field.random(rng),
            d: field.random(rng),
        }
    }

    /// `a x^5 + b x^3 + c x + d`.
    pub fn rhs(&self, field: &FieldParams, x: FieldElement) -> FieldElement {
        field.wrap(self.rhs_raw(field, x.bits()))
    }

    #[inline]
    fn rhs_raw(&self, field: &FieldParams, x: u32) -> u32 {
        let x2 = field.mul_raw(x, x);
        let x3 = field.mul_raw(x2, x);
        let x5 = field.mul_raw(x3, x2);
        field.mul_raw(self.a.bits(), x5)
            ^ field.mul_raw(self.b.bits(), x3)
            ^ field.mul_raw(self.c.bits(), x)
            ^ self.d.bits()
    }

    fn check_field(&self, field: &FieldParams) {
        for e in [self.a, self.b, self.c, self.d] {
            field.add(e, field.zero());
        }
    }

    /// `R(x) = a x^4 + b x^2 + c^2 x`.
    pub fn r_poly(&self, field: &FieldParams) -> LinearizedPolynomial {
        LinearizedPolynomial::new(vec![(2, self.a), (1, self.b), (0, field.square(self.c))])
    }

    /// `E = R + R^`, whose kernel is the radical.
    pub fn radical_poly(&self, field: &FieldParams) -> LinearizedPolynomial {
        let r = self.r_poly(field);
        r.plus(&r.trace_adjoint(field))
    }
}

/// `Q(x) = Tr(x R(x))`.
pub fn quadratic_form_eval(field: &FieldParams, curve: &ArtinSchreierQuintic, x: FieldElement) -> u8 {
    let r = curve.r_poly(field);
    field.trace(field.mul(x, r.eval(field, x)))
}

/// Radical of the symplectic form: an F2-basis of `W` and `w = dim W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical {
    pub basis: Vec<FieldElement>,
    pub w: u32,
}

pub fn radical(field: &FieldParams, curve: &ArtinSchreierQuintic) -> Radical {
    curve.check_field(field);
    let basis = curve.radical_poly(field).kernel(field);
    let w = basis.len() as u32;
    Radical { basis, w }
}

/// Whether `Q` vanishes on all of `W`, by evaluating it on the span.
fn q_vanishes_on(field: &FieldParams, curve: &ArtinSchreierQuintic, rad: &Radical) -> bool {
    let r = curve.r_poly(field);
    span(field, &rad.basis)
        .into_iter()
        .all(|x| field.trace(field.mul(x, r.eval(field, x))) == 0)
}

/// `S = sum_x (-1)^Tr(a x^5 + b x^3 + c x + d)`.
pub fn exp_sum(field: &FieldParams, curve: &ArtinSchreierQuintic) -> i64 {
    curve.check_field(field);
    let ones: i64 = (0..field.q() as u32)
        .map(|x| field.trace_raw(curve.rhs_raw(field, x)) as i64)
        .sum();
    field.q() as i64 - 2 * ones
}

/// `(#C - 1 - q)^2` from the radical alone: `2^w q` if `Q` vanishes on `W`,
/// else 0. No point enumeration.
pub fn squared_deviation(field: &FieldParams, curve: &ArtinSchreierQuintic) -> u128 {
    let rad = radical(field, curve);
    if q_vanishes_on(field, curve, &rad) {
        (1u128 << rad.w) * field.q() as u128
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFormReport {
    pub r: LinearizedPolynomial,
    pub radical_basis: Vec<FieldElement>,
    pub w: u32,
    pub v_equals_w: bool,
    /// `#C(k)` including the single point at infinity
    pub count_direct: u64,
    pub exp_sum: i64,
    /// counts allowed by the theorem given `w` and `V = W`
    pub admissible: Vec<u64>,
    /// `#{x : Q(x) = 0}`
    pub q_zero_count: u64,
}

/// Full analysis: radical, `V = W` test, direct count and admissibility.
pub fn analyze(field: &FieldParams, curve: &ArtinSchreierQuintic) -> Result<QuadraticFormReport> {
    if curve.a.is_zero() {
        return Err(Error::Domain("quintic coefficient a must be nonzero".into()));
    }
    let q = field.q();
    let rad = radical(field, curve);
    let v_equals_w = q_vanishes_on(field, curve, &rad);

    let s = exp_sum(field, curve);
    let count_direct = (1 + q as i64 + s) as u64;

    let r = curve.r_poly(field);
    let q_zero_count = field
        .elements()
        .filter(|&x| field.trace(field.mul(x, r.eval(field, x))) == 0)
        .count() as u64;

    let admissible = admissible_counts(q, rad.w, v_equals_w);
    if !admissible.contains(&count_direct) {
        let e = if v_equals_w && (rad.w + field.m()) % 2 == 1 {
            format!(
                "V = W with odd w + m = {} but count {count_direct} != 1 + q",
                rad.w + field.m()
            )
        } else {
            format!("count {count_direct} not in admissible set {admissible:?} (w = {})", rad.w)
        };
        return Err(Error::InvariantViolation(e));
    }

    Ok(QuadraticFormReport {
        r,
        radical_basis: rad.basis,
        w: rad.w,
        v_equals_w,
        count_direct,
        exp_sum: s,
        admissible,
        q_zero_count,
    })
}

/// `{1 + q}` when `V != W`; otherwise `{1 + q - D, 1 + q, 1 + q + D}` with
/// `D = sqrt(2^w q)`, dropping the outer two when `D` is not an integer.
pub fn admissible_counts(q: u64, w: u32, v_equals_w: bool) -> Vec<u64> {
    let base = 1 + q;
    if !v_equals_w {
        return vec![base];
    }
    let e = w + q.trailing_zeros();
    if e % 2 == 1 {
        return vec![base];
    }
    let dev = 1u64 << (e / 2);
    let mut out = Vec::with_capacity(3);
    if dev <= base {
        out.push(base - dev);
    }
    out.push(base);
    out.push(base + dev);
    out
}

/// JSON form of a curve and its analysis.
#[derive(Clone, Debug, Serialize)]
pub struct CurveReport {
    pub m: u32,
    pub poly: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub w: u32,
    pub v_equals_w: bool,
    pub count: u64,
    pub exp_sum: i64,
    pub admissible: Vec<u64>,
    pub q_zero_count: u64,
    pub radical_basis: Vec<String>,
}

impl CurveReport {
    pub fn new(field: &FieldParams, curve: &ArtinSchreierQuintic, rep: &QuadraticFormReport) -> Self {
        CurveReport {
            m: field.m(),
            poly: format!("{:#x}", field.reduction()),
            a: curve.a.to_hex(),
            b: curve.b.to_hex(),
            c: curve.c.to_hex(),
            d: curve.d.to_hex(),
            w: rep.w,
            v_equals_w: rep.v_equals_w,
            count: rep.count_direct,
            exp_sum: rep.exp_sum,
            admissible: rep.admissible.clone(),
            q_zero_count: rep.q_zero_count,
            radical_basis: rep.radical_basis.iter().map(|e| e.to_hex()).collect(),
        }
    }
}
