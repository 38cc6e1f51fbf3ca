//! Linearized polynomials `L(x) = sum c_i x^(2^i)` and F2-linear algebra on
//! their matrices in the monomial basis.

use super::{FieldElement, FieldParams};

/// `L(x) = sum c x^(2^i)` over the listed `(i, c)` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPolynomial {
    terms: Vec<(u32, FieldElement)>,
}

impl LinearizedPolynomial {
    pub fn new(terms: Vec<(u32, FieldElement)>) -> Self {
        LinearizedPolynomial { terms }
    }

    pub fn terms(&self) -> &[(u32, FieldElement)] {
        &self.terms
    }

    pub fn eval(&self, field: &FieldParams, x: FieldElement) -> FieldElement {
        field.wrap(self.eval_raw(field, field.check(x)))
    }

    pub(crate) fn eval_raw(&self, field: &FieldParams, x: u32) -> u32 {
        self.terms.iter().fold(0u32, |acc, &(i, c)| {
            acc ^ field.mul_raw(field.check(c), field.frobenius_raw(x, i))
        })
    }

    /// Adjoint under the trace pairing: `Tr(x L(y)) = Tr(y L^(x))`.
    /// For `L = sum r_i x^(2^i)` this is `sum (r_i x)^(2^(m-i))`.
    pub fn trace_adjoint(&self, field: &FieldParams) -> LinearizedPolynomial {
        let m = field.m();
        let terms = self
            .terms
            .iter()
            .map(|&(i, c)| {
                let k = (m - i % m) % m;
                (k, field.frobenius(c, k as i64))
            })
            .collect();
        LinearizedPolynomial { terms }
    }

    /// Sum of two linearized polynomials (terms concatenated).
    pub fn plus(&self, other: &LinearizedPolynomial) -> LinearizedPolynomial {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        LinearizedPolynomial { terms }
    }

    /// Images of the monomial basis `X^0 .. X^(m-1)`.
    pub fn matrix_columns(&self, field: &FieldParams) -> Vec<u32> {
        (0..field.m())
            .map(|j| self.eval_raw(field, 1u32 << j))
            .collect()
    }

    pub fn elimination(&self, field: &FieldParams) -> F2Elimination {
        F2Elimination::new(&self.matrix_columns(field))
    }

    /// F2-basis of the kernel of `x -> L(x)`.
    pub fn kernel(&self, field: &FieldParams) -> Vec<FieldElement> {
        self.elimination(field)
            .kernel()
            .iter()
            .map(|&b| field.wrap(b))
            .collect()
    }

    /// Every solution of `L(x) = t`, in ascending bitmask order.
    pub fn solve(&self, field: &FieldParams, t: FieldElement) -> Vec<FieldElement> {
        let t = field.check(t);
        let mut sols: Vec<FieldElement> = self
            .elimination(field)
            .solve(t)
            .into_iter()
            .map(|b| field.wrap(b))
            .collect();
        sols.sort();
        sols
    }
}

/// Column reduction of an F2 matrix whose columns are bitmasks.
///
/// Each pivot remembers which combination of original columns produced it,
/// so kernel vectors fall out of the columns that reduce to zero.
#[derive(Clone, Debug)]
pub struct F2Elimination {
    // pivots[bit] = (reduced column with leading bit `bit`, combination)
    pivots: Vec<Option<(u32, u32)>>,
    kernel: Vec<u32>,
}

impl F2Elimination {
    pub fn new(columns: &[u32]) -> Self {
        assert!(columns.len() <= 32);
        let mut pivots: Vec<Option<(u32, u32)>> = vec![None; 32];
        let mut kernel = Vec::new();
        for (j, &col) in columns.iter().enumerate() {
            let mut v = col;
            let mut comb = 1u32 << j;
            loop {
                if v == 0 {
                    kernel.push(comb);
                    break;
                }
                let top = 31 - v.leading_zeros() as usize;
                match pivots[top] {
                    Some((pv, pc)) => {
                        v ^= pv;
                        comb ^= pc;
                    }
                    None => {
                        pivots[top] = Some((v, comb));
                        break;
                    }
                }
            }
        }
        F2Elimination { pivots, kernel }
    }

    pub fn rank(&self) -> usize {
        self.pivots.iter().flatten().count()
    }

    pub fn kernel(&self) -> &[u32] {
        &self.kernel
    }

    /// One `x` with `M x = t`, if the system is consistent.
    pub fn particular_solution(&self, t: u32) -> Option<u32> {
        let mut v = t;
        let mut x = 0u32;
        while v != 0 {
            let top = 31 - v.leading_zeros() as usize;
            let (pv, pc) = self.pivots[top]?;
            v ^= pv;
            x ^= pc;
        }
        Some(x)
    }

    /// All solutions of `M x = t`: empty, or a coset of the kernel.
    pub fn solve(&self, t: u32) -> Vec<u32> {
        match self.particular_solution(t) {
            None => Vec::new(),
            Some(x0) => span_raw(&self.kernel).into_iter().map(|k| k ^ x0).collect(),
        }
    }
}

fn span_raw(basis: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32];
    for &b in basis {
        let n = out.len();
        for i in 0..n {
            out.push(out[i] ^ b);
        }
    }
    out
}

/// All `2^k` F2-combinations of a basis, starting with zero.
pub fn span(field: &FieldParams, basis: &[FieldElement]) -> Vec<FieldElement> {
    let raw: Vec<u32> = basis.iter().map(|&b| field.check(b)).collect();
    span_raw(&raw).into_iter().map(|b| field.wrap(b)).collect()
}
