//! Derivative curves of `f = Tr(G)` for `G = a7 x^7 + sum b_i x^(2^i + 1)`.
//!
//! For each `alpha != 0` the derivative `Tr(G(x) + G(x + alpha))` agrees
//! pointwise with `Tr` of a quintic `a x^5 + b x^3 + c x + d`, so
//! `X_alpha = (sum_x (-1)^Tr(G(x) + G(x + alpha)))^2 = (#C - 1 - q)^2` and
//! `||f^||_4^4 = q^2 + sum_alpha X_alpha`. For odd m each `X_alpha` is
//! `0`, `2q` or `8q`, with `2q` exactly when `Tr(a7^(-1/3) alpha^(-7/3)) = 1`.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::boolfn::{analyze_trace_function, FamilyPolynomial, Polynomial};
use crate::curves::{self, ArtinSchreierQuintic};
use crate::error::{Error, Result};
use crate::gf2m::{FieldElement, FieldParams, LinearizedPolynomial};

/// Reading of the n8/n2 counting bounds used in every survey: the
/// deviations are measured from `q/8` and `q/2`.
pub const COUNT_BOUND_INTERPRETATION: &str =
    "n8 and n2 deviations measured from q/8 and q/2 (fractions of the field size)";

/// The quintic whose trace agrees with `x -> G(x) + G(x + alpha)`.
pub fn derivative_curve(
    field: &FieldParams,
    g: &FamilyPolynomial,
    alpha: FieldElement,
) -> Result<ArtinSchreierQuintic> {
    if field.add(alpha, field.zero()).is_zero() {
        return Err(Error::Domain("alpha must be nonzero".into()));
    }
    let a7 = g.a7();
    let al2 = field.square(alpha);
    let al3 = field.mul(al2, alpha);
    let al4 = field.square(al2);
    let al5 = field.mul(al4, alpha);
    let al6 = field.mul(al4, al2);

    let a = field.mul(a7, al2);
    // a7 alpha^4 + (a7 alpha)^(1/2)
    let b = field.add(field.mul(a7, al4), field.sqrt(field.mul(a7, alpha)));
    // a7 alpha^6 + (a7 alpha^3)^(1/4) + (a7 alpha^5)^(1/2)
    let mut c = field.mul(a7, al6);
    c += field.frobenius(field.mul(a7, al3), -2);
    c += field.sqrt(field.mul(a7, al5));
    for &(i, bi) in g.b() {
        c += field.frobenius(field.mul(bi, alpha), -(i as i64));
        c += field.mul(bi, field.frobenius(alpha, i as i64));
    }
    let d = g.eval(field, alpha);
    ArtinSchreierQuintic::new(a, b, c, d)
}

/// `X_alpha`, from the radical of the derivative curve.
pub fn x_alpha(field: &FieldParams, g: &FamilyPolynomial, alpha: FieldElement) -> Result<u128> {
    let curve = derivative_curve(field, g, alpha)?;
    Ok(curves::squared_deviation(field, &curve))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum XAlphaClass {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "2q")]
    TwoQ,
    #[serde(rename = "8q")]
    EightQ,
}

impl XAlphaClass {
    pub fn of(x_alpha: u128, q: u64) -> Option<Self> {
        let q = q as u128;
        match x_alpha {
            0 => Some(XAlphaClass::Zero),
            x if x == 2 * q => Some(XAlphaClass::TwoQ),
            x if x == 8 * q => Some(XAlphaClass::EightQ),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            XAlphaClass::Zero => "0",
            XAlphaClass::TwoQ => "2q",
            XAlphaClass::EightQ => "8q",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaRecord {
    pub alpha: FieldElement,
    /// `a7^(-1/3) alpha^(-7/3)`
    pub ell: FieldElement,
    pub tr_ell: u8,
    pub x_alpha: u128,
    pub klass: XAlphaClass,
    /// radical dimension of the derivative curve
    pub w: u32,
    /// for `8q`: the trace-zero `v` with `v + v^4 = ell`
    pub v_witness: Option<FieldElement>,
}

/// `a7^(-1/3) alpha^(-7/3)`, odd m only.
pub fn ell(field: &FieldParams, a7: FieldElement, alpha: FieldElement) -> Result<FieldElement> {
    let e = field.cube_root_exponent()?;
    let inv_a7 = field.inv(a7)?;
    let inv_alpha = field.inv(alpha)?;
    let order = field.q() - 1;
    let e7 = ((7 * e as u128) % order as u128) as u64;
    Ok(field.mul(field.pow(inv_a7, e), field.pow(inv_alpha, e7)))
}

/// Trace-zero solution of `v + v^4 = ell`, if one exists.
pub fn v_plus_v4_preimage(field: &FieldParams, ell: FieldElement) -> Option<FieldElement> {
    let l = LinearizedPolynomial::new(vec![(0, field.one()), (2, field.one())]);
    l.solve(field, ell)
        .into_iter()
        .find(|&v| field.trace(v) == 0)
}

/// Classifies `alpha` and checks the value set, the `2q` trace criterion and
/// the `8q` preimage condition; any mismatch is an invariant violation.
pub fn classify_alpha(
    field: &FieldParams,
    g: &FamilyPolynomial,
    alpha: FieldElement,
) -> Result<AlphaRecord> {
    if field.m().is_multiple_of(2) {
        return Err(Error::EvenDegree("X_alpha classification", field.m()));
    }
    let curve = derivative_curve(field, g, alpha)?;
    let rad = curves::radical(field, &curve);
    let x = curves::squared_deviation(field, &curve);
    let q = field.q();
    let klass = XAlphaClass::of(x, q).ok_or_else(|| {
        Error::InvariantViolation(format!("X_alpha = {x} at alpha = {alpha} is not 0, 2q or 8q"))
    })?;
    let ell = ell(field, g.a7(), alpha)?;
    let tr_ell = field.trace(ell);
    if (tr_ell == 1) != (klass == XAlphaClass::TwoQ) {
        return Err(Error::InvariantViolation(format!(
            "alpha = {alpha}: Tr(ell) = {tr_ell} but X_alpha = {}",
            klass.label()
        )));
    }
    let v_witness = if klass == XAlphaClass::EightQ {
        let v = v_plus_v4_preimage(field, ell).ok_or_else(|| {
            Error::InvariantViolation(format!(
                "alpha = {alpha}: X_alpha = 8q but ell = {ell} is not v + v^4 with Tr v = 0"
            ))
        })?;
        Some(v)
    } else {
        None
    };
    Ok(AlphaRecord {
        alpha,
        ell,
        tr_ell,
        x_alpha: x,
        klass,
        w: rad.w,
        v_witness,
    })
}

/// Every `alpha in k*`, in ascending bitmask order.
pub fn classify_all(field: &FieldParams, g: &FamilyPolynomial) -> Result<Vec<AlphaRecord>> {
    (1..field.q() as u32)
        .into_par_iter()
        .map(|a| classify_alpha(field, g, field.wrap(a)))
        .collect()
}

/// Writes the `alpha_hex,tr_ell,x_alpha,class` CSV.
pub fn write_records_csv<W: Write>(records: &[AlphaRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "alpha_hex,tr_ell,x_alpha,class")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{}",
            r.alpha,
            r.tr_ell,
            r.x_alpha,
            r.klass.label()
        )?;
    }
    Ok(())
}

/// Position of `m` relative to the two ranges of the lower-bound statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundScope {
    /// `m <= 11 + 2s`: `sqrt(2q) <= linf`
    NonStrict,
    /// `m = 13 + 2s`: not covered, comparison reported only
    OutsideScope,
    /// `m >= 15 + 2s`: `sqrt(2q) < linf`
    Strict,
}

impl LowerBoundScope {
    pub fn of(m: u32, s: u32) -> Self {
        if m <= 11 + 2 * s {
            LowerBoundScope::NonStrict
        } else if m >= 15 + 2 * s {
            LowerBoundScope::Strict
        } else {
            LowerBoundScope::OutsideScope
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    pub m: u32,
    pub s: u32,
    pub linf: u64,
    pub l4p4: u128,
    pub scope: LowerBoundScope,
    /// `2q <= linf^2`, evaluated regardless of scope
    pub lower_bound_holds: bool,
    /// `2q < linf^2`, evaluated regardless of scope
    pub strict_lower_holds: bool,
    /// `l4p4 <= q linf^2`
    pub l4_linf_inequality_holds: bool,
    pub divisibility_modulus: u64,
    /// `2^ceil(m/3) | linf`
    pub divisibility_holds: bool,
}

impl LowerBoundReport {
    fn from_spectrum(m: u32, s: u32, linf: u64, l4p4: u128) -> Self {
        let q = 1u128 << m;
        let l2 = (linf as u128) * (linf as u128);
        let modulus = 1u64 << m.div_ceil(3);
        LowerBoundReport {
            m,
            s,
            linf,
            l4p4,
            scope: LowerBoundScope::of(m, s),
            lower_bound_holds: 2 * q <= l2,
            strict_lower_holds: 2 * q < l2,
            l4_linf_inequality_holds: l4p4 <= q * l2,
            divisibility_modulus: modulus,
            divisibility_holds: linf.is_multiple_of(modulus),
        }
    }

    /// True unless a statement that applies at this `(m, s)` failed.
    pub fn consistent(&self) -> bool {
        let scoped = match self.scope {
            LowerBoundScope::NonStrict => self.lower_bound_holds,
            LowerBoundScope::Strict => self.strict_lower_holds,
            LowerBoundScope::OutsideScope => true,
        };
        scoped && self.l4_linf_inequality_holds && self.divisibility_holds
    }
}

/// Lower bounds on `linf` read from the FWHT spectrum of `Tr(G)`.
pub fn lower_bound_check(field: &FieldParams, g: &FamilyPolynomial) -> Result<LowerBoundReport> {
    if field.m().is_multiple_of(2) {
        return Err(Error::EvenDegree("lower bound check", field.m()));
    }
    let (_, stats) = analyze_trace_function(field, g)?;
    Ok(LowerBoundReport::from_spectrum(
        field.m(),
        g.s(),
        stats.linf,
        stats.l4p4,
    ))
}

/// `|l4p4 - 3q^2| <= 185 2^(s-1) q^(3/2)`, squared and scaled by 4 to stay in
/// integers: `4 (l4p4 - 3q^2)^2 <= 185^2 4^s q^3`.
pub fn l4_bound_holds(m: u32, s: u32, l4p4: u128) -> Result<bool> {
    let q = 1i128 << m;
    let dev = (l4p4 as i128) - 3 * q * q;
    let lhs = dev
        .checked_mul(dev)
        .and_then(|v| v.checked_mul(4))
        .ok_or(Error::Overflow("L4 bound"))?;
    let rhs = 185i128 * 185 * (1i128 << (2 * s)) * q * q * q;
    Ok(lhs <= rhs)
}

/// `|n8 - q/8| <= 23 2^(s-1) sqrt(q)`, i.e. `4 (8 n8 - q)^2 <= 184^2 4^s q`.
pub fn n8_bound_holds(m: u32, s: u32, n8: u64) -> bool {
    let q = 1i128 << m;
    let dev = 8 * n8 as i128 - q;
    4 * dev * dev <= 184i128 * 184 * (1i128 << (2 * s)) * q
}

/// `|n2 - q/2| <= 3 sqrt(q) + 1`, i.e. `|2 n2 - q| - 2 <= 6 sqrt(q)`.
pub fn n2_bound_holds(m: u32, n2: u64) -> bool {
    let q = 1i128 << m;
    let dev = (2 * n2 as i128 - q).abs() - 2;
    dev <= 0 || dev * dev <= 36 * q
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyReport {
    pub m: u32,
    pub poly: String,
    pub s: u32,
    pub a7: String,
    pub b: Vec<(u32, String)>,
    pub n0: u64,
    pub n2: u64,
    pub n8: u64,
    pub sum_x_alpha: u128,
    pub l4p4_curve: u128,
    pub l4p4_fwht: u128,
    pub l4_identity_holds: bool,
    pub linf: u64,
    pub bound_eval_holds: bool,
    pub bound_n8_holds: bool,
    pub bound_n2_holds: bool,
    pub lower_bound_scope: LowerBoundScope,
    pub lower_bound_holds: bool,
    pub strict_lower_holds: bool,
    pub l4_linf_inequality_holds: bool,
    pub divisibility_holds: bool,
    pub count_bound_interpretation: &'static str,
    pub b0_present: bool,
    #[serde(skip)]
    pub records: Vec<AlphaRecord>,
}

impl SurveyReport {
    /// All named bounds hold and both `||f^||_4^4` routes agree.
    pub fn all_bounds_hold(&self) -> bool {
        let lb = match self.lower_bound_scope {
            LowerBoundScope::NonStrict => self.lower_bound_holds,
            LowerBoundScope::Strict => self.strict_lower_holds,
            LowerBoundScope::OutsideScope => true,
        };
        self.l4_identity_holds
            && self.bound_eval_holds
            && self.bound_n8_holds
            && self.bound_n2_holds
            && lb
            && self.l4_linf_inequality_holds
            && self.divisibility_holds
    }
}

/// Classifies every `alpha`, sums `X_alpha`, and checks the sum against the
/// FWHT route and the family bounds.
pub fn survey(field: &FieldParams, g: &FamilyPolynomial) -> Result<SurveyReport> {
    if field.m().is_multiple_of(2) {
        return Err(Error::EvenDegree("survey", field.m()));
    }
    let m = field.m();
    let q = field.q();
    let s = g.s();
    let records = classify_all(field, g)?;
    let (mut n0, mut n2, mut n8) = (0u64, 0u64, 0u64);
    let mut sum = 0u128;
    for r in &records {
        match r.klass {
            XAlphaClass::Zero => n0 += 1,
            XAlphaClass::TwoQ => n2 += 1,
            XAlphaClass::EightQ => n8 += 1,
        }
        sum += r.x_alpha;
    }
    let l4p4_curve = (q as u128) * (q as u128) + sum;
    let (_, stats) = analyze_trace_function(field, g)?;
    let lb = LowerBoundReport::from_spectrum(m, s, stats.linf, stats.l4p4);

    Ok(SurveyReport {
        m,
        poly: format!("{:#x}", field.reduction()),
        s,
        a7: g.a7().to_hex(),
        b: g.b().iter().map(|&(i, c)| (i, c.to_hex())).collect(),
        n0,
        n2,
        n8,
        sum_x_alpha: sum,
        l4p4_curve,
        l4p4_fwht: stats.l4p4,
        l4_identity_holds: l4p4_curve == stats.l4p4,
        linf: stats.linf,
        bound_eval_holds: l4_bound_holds(m, s, stats.l4p4)?,
        bound_n8_holds: n8_bound_holds(m, s, n8),
        bound_n2_holds: n2_bound_holds(m, n2),
        lower_bound_scope: lb.scope,
        lower_bound_holds: lb.lower_bound_holds,
        strict_lower_holds: lb.strict_lower_holds,
        l4_linf_inequality_holds: lb.l4_linf_inequality_holds,
        divisibility_holds: lb.divisibility_holds,
        count_bound_interpretation: COUNT_BOUND_INTERPRETATION,
        b0_present: g.has_b0(),
        records,
    })
}

/// JSON form of one [`AlphaRecord`].
#[derive(Clone, Debug, Serialize)]
pub struct AlphaReport {
    pub m: u32,
    pub poly: String,
    pub alpha: String,
    pub ell: String,
    pub tr_ell: u8,
    pub x_alpha: u128,
    pub class: XAlphaClass,
    pub w: u32,
    pub curve: [String; 4],
    pub v_witness: Option<String>,
}

impl AlphaReport {
    pub fn new(field: &FieldParams, g: &FamilyPolynomial, r: &AlphaRecord) -> Result<Self> {
        let c = derivative_curve(field, g, r.alpha)?;
        Ok(AlphaReport {
            m: field.m(),
            poly: format!("{:#x}", field.reduction()),
            alpha: r.alpha.to_hex(),
            ell: r.ell.to_hex(),
            tr_ell: r.tr_ell,
            x_alpha: r.x_alpha,
            class: r.klass,
            w: r.w,
            curve: [c.a.to_hex(), c.b.to_hex(), c.c.to_hex(), c.d.to_hex()],
            v_witness: r.v_witness.map(|v| v.to_hex()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn derivative_sum(field: &FieldParams, g: &FamilyPolynomial, alpha: FieldElement) -> i64 {
        field
            .elements()
            .map(|x| {
                let y = field.add(g.eval(field, x), g.eval(field, field.add(x, alpha)));
                1 - 2 * field.trace(y) as i64
            })
            .sum()
    }

    #[test]
    fn curve_trace_matches_derivative_pointwise() {
        let f = FieldParams::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for s in 0..3 {
            let g = FamilyPolynomial::random(&f, s, &mut rng).unwrap();
            for alpha in f.nonzero_elements() {
                let c = derivative_curve(&f, &g, alpha).unwrap();
                for x in f.elements() {
                    let lhs = f.add(g.eval(&f, x), g.eval(&f, f.add(x, alpha)));
                    assert_eq!(f.trace(lhs), f.trace(c.rhs(&f, x)));
                }
                assert_eq!(curves::exp_sum(&f, &c), derivative_sum(&f, &g, alpha));
            }
        }
    }

    #[test]
    fn pure_monomial_coefficients() {
        let f = FieldParams::new(7).unwrap();
        let a7 = f.element(0x35).unwrap();
        let g = FamilyPolynomial::new(&f, a7, vec![]).unwrap();
        let alpha = f.element(0x4b).unwrap();
        let c = derivative_curve(&f, &g, alpha).unwrap();
        let expect_c = f.add(
            f.add(f.mul(a7, f.pow(alpha, 6)), f.frobenius(f.mul(a7, f.pow(alpha, 3)), -2)),
            f.sqrt(f.mul(a7, f.pow(alpha, 5))),
        );
        assert_eq!(c.c, expect_c);
        assert_eq!(c.a, f.mul(a7, f.square(alpha)));
        assert!(derivative_curve(&f, &g, f.zero()).is_err());
    }

    #[test]
    fn ell_cubes_back() {
        let f = FieldParams::new(9).unwrap();
        let a7 = f.element(0x1a3).unwrap();
        for alpha in f.nonzero_elements() {
            let l = ell(&f, a7, alpha).unwrap();
            // ell^3 a7 alpha^7 = 1
            let prod = f.mul(f.mul(f.pow(l, 3), a7), f.pow(alpha, 7));
            assert_eq!(prod, f.one());
        }
        let even = FieldParams::new(6).unwrap();
        assert!(ell(&even, even.one(), even.one()).is_err());
    }

    #[test]
    fn classification_is_exact_on_small_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for m in [5, 7] {
            let f = FieldParams::new(m).unwrap();
            for s in 0..3 {
                let g = FamilyPolynomial::random(&f, s, &mut rng).unwrap();
                for r in classify_all(&f, &g).unwrap() {
                    let direct = derivative_sum(&f, &g, r.alpha);
                    assert_eq!((direct * direct) as u128, r.x_alpha);
                }
            }
        }
    }

    #[test]
    fn even_degree_unsupported() {
        let f = FieldParams::new(6).unwrap();
        let g = FamilyPolynomial::new(&f, f.one(), vec![]).unwrap();
        assert!(matches!(
            classify_alpha(&f, &g, f.one()),
            Err(Error::EvenDegree(..))
        ));
        assert!(survey(&f, &g).is_err());
    }

    #[test]
    fn scope_ranges() {
        assert_eq!(LowerBoundScope::of(11, 0), LowerBoundScope::NonStrict);
        assert_eq!(LowerBoundScope::of(13, 0), LowerBoundScope::OutsideScope);
        assert_eq!(LowerBoundScope::of(15, 0), LowerBoundScope::Strict);
        assert_eq!(LowerBoundScope::of(15, 1), LowerBoundScope::OutsideScope);
        assert_eq!(LowerBoundScope::of(13, 1), LowerBoundScope::NonStrict);
    }

    #[test]
    fn integer_bound_forms() {
        // m = 5, s = 0: 185/2 * 32^(3/2) ~ 16744.3
        let q2 = 3 * 32 * 32;
        assert!(l4_bound_holds(5, 0, q2 + 16744).unwrap());
        assert!(!l4_bound_holds(5, 0, q2 + 16745).unwrap());
        // m = 9: 3 sqrt(512) + 1 ~ 68.88 around q/2 = 256
        assert!(n2_bound_holds(9, 256 + 68));
        assert!(!n2_bound_holds(9, 256 + 69));
        assert!(n2_bound_holds(9, 256 - 68));
        // m = 9, s = 0: 11.5 sqrt(512) ~ 260.2 around q/8 = 64
        assert!(n8_bound_holds(9, 0, 64 + 260));
        assert!(!n8_bound_holds(9, 0, 64 + 261));
    }
}
