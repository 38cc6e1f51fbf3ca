//! Polynomial maps GF(2^m) -> GF(2^m): the degree-7 family
//! `a7 x^7 + sum b_i x^(2^i + 1)` and general sparse polynomials.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2m::{parse_hex, FieldElement, FieldParams};

/// A polynomial evaluated pointwise on the field.
pub trait Polynomial: Sync {
    fn eval(&self, field: &FieldParams, x: FieldElement) -> FieldElement;

    /// Sparse form with every term spelled out.
    fn to_sparse(&self) -> SparsePolynomial;

    /// `G(x)` for every x, indexed by the bitmask of x.
    fn value_table(&self, field: &FieldParams) -> Vec<u32> {
        field.elements().map(|x| self.eval(field, x).bits()).collect()
    }
}

/// `G(x) = a7 x^7 + sum_i b_i x^(2^i + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPolynomial {
    a7: FieldElement,
    b: Vec<(u32, FieldElement)>,
}

impl FamilyPolynomial {
    /// Builds the polynomial with indices restricted to `1 <= i <= m-1`.
    pub fn new(field: &FieldParams, a7: FieldElement, b: Vec<(u32, FieldElement)>) -> Result<Self> {
        Self::build(field, a7, b, false)
    }

    /// Like [`FamilyPolynomial::new`] but also accepts `i = 0`, i.e. a
    /// `b_0 x^2` term. Under the trace that term is the linear form
    /// `Tr(sqrt(b_0) x)`, so it only shifts the Walsh spectrum.
    pub fn new_allowing_b0(
        field: &FieldParams,
        a7: FieldElement,
        b: Vec<(u32, FieldElement)>,
    ) -> Result<Self> {
        Self::build(field, a7, b, true)
    }

    fn build(
        field: &FieldParams,
        a7: FieldElement,
        mut b: Vec<(u32, FieldElement)>,
        allow_b0: bool,
    ) -> Result<Self> {
        // touch every coefficient so foreign elements are caught here
        let a7 = field.add(a7, field.zero());
        if a7.is_zero() {
            return Err(Error::Domain("a7 must be nonzero".into()));
        }
        let mut seen = BTreeSet::new();
        for &(i, c) in &b {
            field.add(c, field.zero());
            if i == 0 && !allow_b0 {
                return Err(Error::Domain(
                    "index i = 0 (a b0 x^2 term) needs the explicit b0 opt-in".into(),
                ));
            }
            if i >= field.m() {
                return Err(Error::Domain(format!(
                    "index i = {i} outside 1..={}",
                    field.m() - 1
                )));
            }
            if !seen.insert(i) {
                return Err(Error::Domain(format!("duplicate index i = {i}")));
            }
        }
        b.sort_by_key(|&(i, _)| i);
        Ok(FamilyPolynomial { a7, b })
    }

    /// Random member with `a7 != 0` and every index `1..=s` present,
    /// `b_s != 0` so that `s` is exact.
    pub fn random<R: Rng + ?Sized>(field: &FieldParams, s: u32, rng: &mut R) -> Result<Self> {
        let a7 = field.random_nonzero(rng);
        let b = (1..=s)
            .map(|i| {
                let c = if i == s {
                    field.random_nonzero(rng)
                } else {
                    field.random(rng)
                };
                (i, c)
            })
            .collect();
        Self::new(field, a7, b)
    }

    /// `count` random members drawn from a ChaCha8 stream seeded with `seed`.
    pub fn sample(field: &FieldParams, s: u32, count: usize, seed: u64) -> Result<Vec<Self>> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| Self::random(field, s, &mut rng)).collect()
    }

    pub fn a7(&self) -> FieldElement {
        self.a7
    }

    pub fn b(&self) -> &[(u32, FieldElement)] {
        &self.b
    }

    /// Largest index present in the b-list, 0 when the list is empty.
    pub fn s(&self) -> u32 {
        self.b.iter().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn has_b0(&self) -> bool {
        self.b.iter().any(|&(i, _)| i == 0)
    }

    /// Parses `--a7`/`--b` style arguments: a hex `a7` and `i:hex[,i:hex...]`.
    pub fn parse(field: &FieldParams, a7: &str, b: &str, allow_b0: bool) -> Result<Self> {
        let a7 = field.parse_element(a7)?;
        let terms = parse_term_list(b)?
            .into_iter()
            .map(|(i, c)| {
                let i = u32::try_from(i).map_err(|_| Error::Parse(format!("index {i} too large")))?;
                Ok((i, field.element(c)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::build(field, a7, terms, allow_b0)
    }

    #[inline]
    pub(crate) fn eval_raw(&self, field: &FieldParams, x: u32) -> u32 {
        let x2 = field.mul_raw(x, x);
        let x3 = field.mul_raw(x2, x);
        let x4 = field.mul_raw(x2, x2);
        let x7 = field.mul_raw(x4, x3);
        let mut acc = field.mul_raw(self.a7.bits(), x7);
        for &(i, c) in &self.b {
            let xi = field.frobenius_raw(x, i);
            acc ^= field.mul_raw(c.bits(), field.mul_raw(xi, x));
        }
        acc
    }
}

impl Polynomial for FamilyPolynomial {
    fn eval(&self, field: &FieldParams, x: FieldElement) -> FieldElement {
        let x = field.add(x, field.zero());
        field.add(self.a7, field.zero());
        field.wrap(self.eval_raw(field, x.bits()))
    }

    fn to_sparse(&self) -> SparsePolynomial {
        let mut terms = vec![(7u64, self.a7)];
        for &(i, c) in &self.b {
            terms.push(((1u64 << i) + 1, c));
        }
        SparsePolynomial { terms }
    }

    fn value_table(&self, field: &FieldParams) -> Vec<u32> {
        field.add(self.a7, field.zero());
        (0..field.q() as u32)
            .map(|x| self.eval_raw(field, x))
            .collect()
    }
}

impl fmt::Display for FamilyPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*x^7", self.a7)?;
        for &(i, c) in &self.b {
            write!(f, " + {}*x^{}", c, (1u64 << i) + 1)?;
        }
        Ok(())
    }
}

/// `G(x) = sum c_e x^e` over distinct exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    terms: Vec<(u64, FieldElement)>,
}

impl SparsePolynomial {
    pub fn new(mut terms: Vec<(u64, FieldElement)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(e, _) in &terms {
            if !seen.insert(e) {
                return Err(Error::Domain(format!("duplicate exponent {e}")));
            }
        }
        terms.sort_by_key(|&(e, _)| e);
        Ok(SparsePolynomial { terms })
    }

    /// `c x^e`.
    pub fn monomial(e: u64, c: FieldElement) -> Self {
        SparsePolynomial {
            terms: vec![(e, c)],
        }
    }

    pub fn zero() -> Self {
        SparsePolynomial { terms: Vec::new() }
    }

    /// Parses the `exp:coefHex[,exp:coefHex...]` grammar.
    pub fn parse(field: &FieldParams, s: &str) -> Result<Self> {
        let terms = parse_term_list(s)?
            .into_iter()
            .map(|(e, c)| Ok((e, field.element(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(terms)
    }

    pub fn terms(&self) -> &[(u64, FieldElement)] {
        &self.terms
    }

    fn nonzero_terms(&self) -> impl Iterator<Item = &(u64, FieldElement)> {
        self.terms.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_terms().next().is_none()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<u64> {
        self.nonzero_terms().map(|&(e, _)| e).max()
    }

    /// Largest binary weight of an exponent with nonzero coefficient.
    pub fn binary_degree(&self) -> Result<u32> {
        self.nonzero_terms()
            .map(|&(e, _)| e.count_ones())
            .max()
            .ok_or_else(|| Error::Domain("binary degree of the zero polynomial".into()))
    }
}

impl Polynomial for SparsePolynomial {
    fn eval(&self, field: &FieldParams, x: FieldElement) -> FieldElement {
        self.terms.iter().fold(field.zero(), |acc, &(e, c)| {
            field.add(acc, field.mul(c, field.pow(x, e)))
        })
    }

    fn to_sparse(&self) -> SparsePolynomial {
        self.clone()
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, &(e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*x^{e}")?;
        }
        Ok(())
    }
}

/// Parses `n:hex[,n:hex...]`; an empty string is an empty list.
fn parse_term_list(s: &str) -> Result<Vec<(u64, u64)>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (n, c) = t
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("term {t:?} is not of the form n:hex")))?;
            let n = n
                .trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("bad exponent/index {n:?}: {e}")))?;
            Ok((n, parse_hex(c)?))
        })
        .collect()
}

/// Binary degree of any polynomial, via its sparse form.
pub fn binary_degree(g: &SparsePolynomial) -> Result<u32> {
    g.binary_degree()
}
