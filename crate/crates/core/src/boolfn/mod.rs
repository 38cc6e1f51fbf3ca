//! Boolean functions `f = Tr(G(x))`: truth tables, Walsh spectra and the
//! quantities read off them (nonlinearity, L2/L4/L-infinity norms, the
//! sum-of-square indicator and 2-adic divisibility of the spectrum).

mod poly;

use std::io::{self, Write};

use serde::Serialize;

pub use self::poly::{binary_degree, FamilyPolynomial, Polynomial, SparsePolynomial};
use crate::error::{Error, Result};
use crate::gf2m::FieldParams;

/// Values of a Boolean function on GF(2^m), indexed by the bitmask of x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    m: u32,
    values: Vec<u8>,
}

impl TruthTable {
    pub fn new(m: u32, values: Vec<u8>) -> Result<Self> {
        if values.len() as u64 != 1u64 << m {
            return Err(Error::Domain(format!(
                "truth table has {} entries, expected 2^{m}",
                values.len()
            )));
        }
        if values.iter().any(|&v| v > 1) {
            return Err(Error::Domain("truth table entries must be 0 or 1".into()));
        }
        Ok(TruthTable { m, values })
    }

    /// `x -> Tr(G(x))`.
    pub fn from_trace_poly<P: Polynomial + ?Sized>(field: &FieldParams, g: &P) -> Self {
        let values = g
            .value_table(field)
            .into_iter()
            .map(|y| field.trace_raw(y))
            .collect();
        TruthTable { m: field.m(), values }
    }

    /// `x -> Tr(table[x])` for a precomputed value table.
    pub fn from_value_table(field: &FieldParams, table: &[u32]) -> Self {
        assert_eq!(table.len() as u64, field.q());
        TruthTable {
            m: field.m(),
            values: table.iter().map(|&y| field.trace_raw(y)).collect(),
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn weight(&self) -> u64 {
        self.values.iter().map(|&v| v as u64).sum()
    }
}

/// Walsh coefficients `f^(v) = sum_x (-1)^(f(x) + Tr(v x))`, indexed by the
/// bitmask of v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    m: u32,
    values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Writes the `v_hex,walsh` CSV dump.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "v_hex,walsh")?;
        for (v, w) in self.values.iter().enumerate() {
            writeln!(out, "{v:#x},{w}")?;
        }
        Ok(())
    }
}

/// In-place fast Walsh-Hadamard transform on a length-2^k buffer.
pub fn fwht_in_place(buf: &mut [i64]) {
    let n = buf.len();
    assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in buf.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

fn signed_buffer(tt: &TruthTable, buf: &mut Vec<i64>) {
    buf.clear();
    buf.extend(tt.values.iter().map(|&b| 1 - 2 * b as i64));
}

/// Walsh spectrum under the bit-vector dot product `v . x`.
pub fn walsh_transform_dot(tt: &TruthTable) -> WalshSpectrum {
    let mut buf = Vec::with_capacity(tt.values.len());
    signed_buffer(tt, &mut buf);
    fwht_in_place(&mut buf);
    WalshSpectrum { m: tt.m, values: buf }
}

/// Maps v to the dot-product index u with `u . x = Tr(v x)` for all x, i.e.
/// bit i of u is `Tr(v X^i)`.
pub fn trace_pairing_index(field: &FieldParams) -> Vec<u32> {
    let m = field.m();
    let basis_images: Vec<u32> = (0..m)
        .map(|j| {
            (0..m).fold(0u32, |u, i| {
                let t = field.trace_raw(field.mul_raw(1 << j, 1 << i)) as u32;
                u | (t << i)
            })
        })
        .collect();
    let q = field.q() as usize;
    let mut index = vec![0u32; q];
    for v in 1..q {
        let low = v.trailing_zeros() as usize;
        index[v] = index[v & (v - 1)] ^ basis_images[low];
    }
    index
}

/// Walsh spectrum `f^(v) = sum_x (-1)^(f(x) + Tr(v x))` by one fast
/// transform followed by a reindexing.
pub fn walsh_transform(field: &FieldParams, tt: &TruthTable) -> WalshSpectrum {
    let index = trace_pairing_index(field);
    let mut buf = Vec::with_capacity(tt.values.len());
    walsh_with_index(tt, &index, &mut buf)
}

/// Same as [`walsh_transform`], reusing a precomputed pairing index and a
/// scratch buffer.
pub fn walsh_with_index(tt: &TruthTable, index: &[u32], scratch: &mut Vec<i64>) -> WalshSpectrum {
    assert_eq!(tt.values.len(), index.len());
    signed_buffer(tt, scratch);
    fwht_in_place(scratch);
    let values = index.iter().map(|&u| scratch[u as usize]).collect();
    WalshSpectrum { m: tt.m, values }
}

/// Power sums of a spectrum, accumulated exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerSums {
    pub linf: u64,
    pub sum2: u128,
    pub sum4: u128,
}

impl PowerSums {
    pub fn of(values: &[i64]) -> Result<Self> {
        let mut linf = 0u64;
        let mut sum2 = 0u128;
        let mut sum4 = 0u128;
        for &w in values {
            let a = w.unsigned_abs();
            linf = linf.max(a);
            let sq = (a as u128) * (a as u128);
            sum2 = sum2.checked_add(sq).ok_or(Error::Overflow("sum of squares"))?;
            let p4 = sq.checked_mul(sq).ok_or(Error::Overflow("fourth power"))?;
            sum4 = sum4.checked_add(p4).ok_or(Error::Overflow("sum of fourth powers"))?;
        }
        Ok(PowerSums { linf, sum2, sum4 })
    }
}

/// Exact spectral statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumStats {
    pub m: u32,
    /// max |f^(v)|
    pub linf: u64,
    /// nonlinearity 2^(m-1) - linf/2
    pub nl: u64,
    /// (1/q) sum f^(v)^2, equal to q by Parseval
    pub l2sq: u128,
    /// (1/q) sum f^(v)^4, the sum-of-square indicator
    pub l4p4: u128,
    #[serde(skip)]
    pub sums: PowerSums,
}

impl SpectrumStats {
    /// Integer form of `||f^||_2 <= ||f^||_4 <= ||f^||_inf`:
    /// `(sum f^2)^2 <= q sum f^4` and `sum f^4 <= linf^2 sum f^2`.
    pub fn norm_chain_holds(&self) -> Result<bool> {
        let q = 1u128 << self.m;
        let s2 = self.sums.sum2;
        let s4 = self.sums.sum4;
        let lhs1 = s2.checked_mul(s2).ok_or(Error::Overflow("norm chain"))?;
        let rhs1 = q.checked_mul(s4).ok_or(Error::Overflow("norm chain"))?;
        let l2 = (self.linf as u128) * (self.linf as u128);
        let rhs2 = l2.checked_mul(s2).ok_or(Error::Overflow("norm chain"))?;
        Ok(lhs1 <= rhs1 && s4 <= rhs2)
    }

    /// `sqrt(q) <= linf <= q`.
    pub fn amplitude_bounds_hold(&self) -> bool {
        let q = 1u128 << self.m;
        let l2 = (self.linf as u128) * (self.linf as u128);
        q <= l2 && self.linf as u128 <= q
    }
}

/// Computes the exact statistics; fails if the power sums are not divisible
/// by q or Parseval does not hold.
pub fn spectrum_stats(sp: &WalshSpectrum) -> Result<SpectrumStats> {
    let sums = PowerSums::of(&sp.values)?;
    let q = 1u128 << sp.m;
    if sums.sum2 % q != 0 || sums.sum4 % q != 0 {
        return Err(Error::CorruptedSpectrum(format!(
            "power sums not divisible by q = {q}"
        )));
    }
    let l2sq = sums.sum2 / q;
    if l2sq != q {
        return Err(Error::CorruptedSpectrum(format!(
            "Parseval fails: (1/q) sum f^2 = {l2sq}, expected {q}"
        )));
    }
    if sums.linf % 2 != 0 {
        return Err(Error::CorruptedSpectrum("odd Walsh amplitude".into()));
    }
    Ok(SpectrumStats {
        m: sp.m,
        linf: sums.linf,
        nl: (1u64 << (sp.m - 1)) - sums.linf / 2,
        l2sq,
        l4p4: sums.sum4 / q,
        sums,
    })
}

/// 2-adic divisibility of the spectrum by `2^ceil(m/d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub binary_degree: u32,
    pub modulus: u64,
    /// `modulus | linf`
    pub holds: bool,
    /// linf when it is not divisible
    pub witness: Option<u64>,
    /// `modulus | f^(v)` for every v (informational)
    pub all_coefficients_divisible: bool,
    /// first `(v, f^(v))` that is not divisible
    pub coefficient_witness: Option<(u32, i64)>,
}

pub fn divisibility_check(sp: &WalshSpectrum, d: u32) -> Result<DivisibilityReport> {
    if d == 0 {
        return Err(Error::Domain(
            "binary degree 0 (constant polynomial) has no divisibility modulus".into(),
        ));
    }
    let k = sp.m.div_ceil(d);
    let modulus = 1u64 << k;
    let linf = sp.values.iter().map(|w| w.unsigned_abs()).max().unwrap_or(0);
    let holds = linf % modulus == 0;
    let coefficient_witness = sp
        .values
        .iter()
        .enumerate()
        .find(|(_, &w)| w.unsigned_abs() % modulus != 0)
        .map(|(v, &w)| (v as u32, w));
    Ok(DivisibilityReport {
        binary_degree: d,
        modulus,
        holds,
        witness: (!holds).then_some(linf),
        all_coefficients_divisible: coefficient_witness.is_none(),
        coefficient_witness,
    })
}

/// The stats JSON object emitted for a spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub m: u32,
    pub poly: String,
    pub linf: u64,
    pub nl: u64,
    pub l2sq: u128,
    pub l4p4: u128,
    pub divisibility_modulus: u64,
    pub divisibility_holds: bool,
    pub all_coefficients_divisible: bool,
}

impl SpectrumReport {
    pub fn new(field: &FieldParams, stats: &SpectrumStats, div: &DivisibilityReport) -> Self {
        SpectrumReport {
            m: stats.m,
            poly: format!("{:#x}", field.reduction()),
            linf: stats.linf,
            nl: stats.nl,
            l2sq: stats.l2sq,
            l4p4: stats.l4p4,
            divisibility_modulus: div.modulus,
            divisibility_holds: div.holds,
            all_coefficients_divisible: div.all_coefficients_divisible,
        }
    }
}

/// Truth table, spectrum and stats of `Tr(G)` in one go.
pub fn analyze_trace_function<P: Polynomial + ?Sized>(
    field: &FieldParams,
    g: &P,
) -> Result<(WalshSpectrum, SpectrumStats)> {
    let tt = TruthTable::from_trace_poly(field, g);
    let sp = walsh_transform(field, &tt);
    let stats = spectrum_stats(&sp)?;
    Ok((sp, stats))
}
