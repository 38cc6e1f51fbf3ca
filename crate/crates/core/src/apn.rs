//! Differential uniformity and APN tests.
//!
//! Two independent routes decide APN-ness: the derivative histogram
//! (`delta <= 2`) and the Chabaud-Vaudenay sum
//! `sum_{gamma != 0} sigma(Tr(G(gamma x))) >= 2 q^2 (q - 1)`, with equality
//! exactly for APN maps.

use rayon::prelude::*;
use serde::Serialize;

use crate::boolfn::{fwht_in_place, PowerSums, Polynomial};
use crate::error::{Error, Result};
use crate::gf2m::FieldParams;

/// `max_{a != 0, b} #{z : G(z + a) + G(z) = b}`.
pub fn differential_uniformity<P: Polynomial + ?Sized>(field: &FieldParams, g: &P) -> u64 {
    let table = g.value_table(field);
    differential_uniformity_of_table(&table)
}

/// Differential uniformity of a map given by its full value table.
pub fn differential_uniformity_of_table(table: &[u32]) -> u64 {
    let q = table.len();
    assert!(q.is_power_of_two());
    (1..q)
        .into_par_iter()
        .map_init(
            || vec![0u32; q],
            |counts, a| {
                let mut best = 0u32;
                for z in 0..q {
                    let z2 = z ^ a;
                    // each unordered pair {z, z + a} is visited once
                    if z < z2 {
                        let b = (table[z] ^ table[z2]) as usize;
                        counts[b] += 2;
                        best = best.max(counts[b]);
                    }
                }
                for z in 0..q {
                    counts[(table[z] ^ table[z ^ a]) as usize] = 0;
                }
                best as u64
            },
        )
        .max()
        .unwrap_or(0)
}

/// Result of the Chabaud-Vaudenay comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CvSum {
    /// `sum_{gamma != 0} sigma(f_gamma)`
    pub sum: u128,
    /// `2 q^2 (q - 1)`
    pub bound: u128,
    pub equality: bool,
}

/// Accumulates `sigma(f_gamma)` for `f_gamma(x) = Tr(G(gamma x))` over all
/// `gamma != 0`.
pub fn cv_sum<P: Polynomial + ?Sized>(field: &FieldParams, g: &P) -> Result<CvSum> {
    let table = g.value_table(field);
    let q = field.q() as usize;
    let sigmas: Vec<Result<u128>> = (1..q as u32)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(q),
            |buf: &mut Vec<i64>, gamma| {
                buf.clear();
                buf.extend((0..q as u32).map(|x| {
                    let y = field.mul_raw(gamma, table[x as usize]);
                    1 - 2 * field.trace_raw(y) as i64
                }));
                // sigma does not depend on which pairing indexes the spectrum
                fwht_in_place(buf);
                let sums = PowerSums::of(buf)?;
                if sums.sum4 % q as u128 != 0 {
                    return Err(Error::CorruptedSpectrum(format!(
                        "sum of fourth powers not divisible by q at gamma = {gamma:#x}"
                    )));
                }
                Ok(sums.sum4 / q as u128)
            },
        )
        .collect();
    let mut sum = 0u128;
    for s in sigmas {
        sum = sum.checked_add(s?).ok_or(Error::Overflow("Chabaud-Vaudenay sum"))?;
    }
    let qq = q as u128;
    let bound = 2 * qq * qq * (qq - 1);
    Ok(CvSum {
        sum,
        bound,
        equality: sum == bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NotApn,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Predicate {
    pub verdict: Verdict,
    pub reason: Option<String>,
    /// extra context that does not change the verdict
    pub advisory: Option<String>,
}

pub const REASON_FAMILY: &str = "family, m >= 13+2s";
pub const REASON_DEGREE: &str = "degree bound, smoothness assumed";

/// `d < q^(1/6) + 3.9`, decided in integers as `(10d - 39)^6 < 10^6 q`.
/// Degrees `d <= 3` give no curve of positive degree and are excluded.
pub fn degree_bound_applies(m: u32, d: u64) -> bool {
    if m < 6 || d <= 3 {
        return false;
    }
    let lhs = (10 * d as u128).checked_sub(39).and_then(|t| t.checked_pow(6));
    match lhs {
        Some(l) => l < 1_000_000u128 << m,
        None => false,
    }
}

/// Sufficient conditions for non-APN-ness that need no computation.
///
/// `s` is the family index bound when `G` belongs to the degree-7 family, `d`
/// the ordinary degree. The degree criterion presumes the associated curve
/// at infinity is smooth; that hypothesis is not checked.
pub fn non_apn_predicate(m: u32, s: Option<u32>, d: Option<u64>) -> Predicate {
    let advisory = match s {
        Some(s) if s <= 2 && m >= 11 => Some(
            "for s <= 2 the degree-7 criterion gives not APN for m >= 11 (smoothness assumed)"
                .to_string(),
        ),
        _ => None,
    };
    if let Some(s) = s {
        if m >= 13 + 2 * s {
            return Predicate {
                verdict: Verdict::NotApn,
                reason: Some(REASON_FAMILY.into()),
                advisory,
            };
        }
    }
    if let Some(d) = d {
        if degree_bound_applies(m, d) {
            return Predicate {
                verdict: Verdict::NotApn,
                reason: Some(REASON_DEGREE.into()),
                advisory,
            };
        }
    }
    Predicate {
        verdict: Verdict::Unknown,
        reason: None,
        advisory,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ApnReport {
    pub m: u32,
    pub poly: String,
    pub delta: u64,
    pub is_apn: bool,
    #[serde(serialize_with = "as_decimal")]
    pub cv_sum: u128,
    #[serde(serialize_with = "as_decimal")]
    pub cv_bound: u128,
    pub cv_equality: bool,
    pub predicate: Predicate,
    /// delta even, cv_sum >= cv_bound, cv_equality iff is_apn
    pub invariants_hold: bool,
}

fn as_decimal<S: serde::Serializer>(v: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Runs both APN routes and the predicate. `s` is `Some` for members of the
/// degree-7 family.
pub fn apn_report<P: Polynomial + ?Sized>(
    field: &FieldParams,
    g: &P,
    s: Option<u32>,
) -> Result<ApnReport> {
    let table = g.value_table(field);
    let delta = differential_uniformity_of_table(&table);
    let cv = cv_sum(field, g)?;
    let is_apn = delta <= 2;
    let predicate = non_apn_predicate(field.m(), s, g.to_sparse().degree());
    let invariants_hold = delta.is_multiple_of(2) && cv.sum >= cv.bound && cv.equality == is_apn;
    Ok(ApnReport {
        m: field.m(),
        poly: format!("{:#x}", field.reduction()),
        delta,
        is_apn,
        cv_sum: cv.sum,
        cv_bound: cv.bound,
        cv_equality: cv.equality,
        predicate,
        invariants_hold,
    })
}
