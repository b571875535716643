//! Small multivariate polynomials with exact coefficients, used by the
//! quotient-ring builder and the definition-language parser. Monomials are
//! ordered degree-lexicographically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::field::{FieldKind, Scalar};

/// Exponent vector over a fixed variable list.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn var_power(nvars: usize, i: usize, k: u32) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = k;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divisible_by(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn label(&self, vars: &[String]) -> String {
        if self.degree() == 0 {
            return "1".to_string();
        }
        let mut s = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            s.push_str(&vars[i]);
            if e > 1 {
                s.push_str(&format!("^{e}"));
            }
        }
        s
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Degree first, then lexicographic on exponents (earlier variable wins).
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `nvars` variables of total degree exactly `d`.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, pos: usize, rem: usize) {
        if pos + 1 == cur.len() {
            cur[pos] = rem as u32;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=rem {
            cur[pos] = e as u32;
            rec(out, cur, pos + 1, rem - e);
        }
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(&mut out, &mut cur, 0, d);
    out
}

/// All monomials of total degree <= d, sorted deglex ascending.
pub fn monomials_up_to(nvars: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for k in 0..=d {
        let mut layer = monomials_of_degree(nvars, k);
        layer.sort();
        out.extend(layer);
    }
    out
}

/// A polynomial in a fixed number of variables; terms keyed by monomial.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Poly {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Scalar) -> Poly {
        let mut p = Poly::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                p.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        p
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| (mm.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn low_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn field(&self) -> Option<FieldKind> {
        self.terms.values().next().map(|c| c.field())
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        // Largest terms first for readability.
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let ms = m.label(vars);
            let piece = if m.degree() == 0 {
                format!("{c}")
            } else if c.is_one() {
                ms
            } else {
                format!("{c}*{ms}")
            };
            parts.push(piece);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.to_string_with(&vars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order_is_deglex() {
        let x = Monomial(vec![1, 0]);
        let y = Monomial(vec![0, 1]);
        let x2 = Monomial(vec![2, 0]);
        assert!(x > y); // same degree, earlier variable wins
        assert!(x2 > x);
        assert!(x2 > y);
    }

    #[test]
    fn enumeration_counts() {
        // C(d+n-1, n-1) monomials of degree d in n vars.
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_up_to(3, 3).len(), 20);
    }

    #[test]
    fn poly_arith() {
        let f = FieldKind::Fp(101);
        let x = Poly::monomial(2, Monomial::var(2, 0), f.one());
        let y = Poly::monomial(2, Monomial::var(2, 1), f.one());
        let p = x.add(&y).mul(&x.sub(&y)); // x^2 - y^2
        assert_eq!(p.terms.len(), 2);
        assert_eq!(p.degree(), Some(2));
        assert!(p.sub(&p).is_zero());
    }
}
