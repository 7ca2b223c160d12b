//! Sparse integer Laurent polynomials in one variable.

use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial with integer coefficients; no zero coefficient is
/// ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = LaurentPoly::default();
        for &(e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(exp).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, exp: i64, coeff: i64) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (&e, &c) in &self.terms {
            out.add_term(e + exp, c * coeff);
        }
        out
    }

    /// Nonnegative integer power.
    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    /// Substitute the variable by `var^k` (k may be negative).
    pub fn substitute_power(&self, k: i64) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (&e, &c) in &self.terms {
            out.add_term(e * k, c);
        }
        out
    }

    /// True iff every exponent is divisible by `k`.
    pub fn exponents_divisible_by(&self, k: i64) -> bool {
        self.terms.keys().all(|&e| e % k == 0)
    }

    /// Render with the given variable name, lowest exponent first.
    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if i == 0 { "" } else { "+" };
            if i > 0 || c < 0 {
                s.push_str(sign);
            }
            let mag = c.abs();
            let body = match e {
                0 => format!("{mag}"),
                1 if mag == 1 => var.to_string(),
                1 => format!("{mag}{var}"),
                _ if mag == 1 => format!("{var}^{e}"),
                _ => format!("{mag}{var}^{e}"),
            };
            s.push_str(&body);
        }
        s
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("A"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = LaurentPoly::from_terms(&[(2, 1), (-2, -1)]);
        let q = LaurentPoly::from_terms(&[(2, 1), (-2, 1)]);
        assert_eq!(p.mul(&q), LaurentPoly::from_terms(&[(4, 1), (-4, -1)]));
        assert!(p.add(&p.scale(0, -1)).is_zero());
    }

    #[test]
    fn delta_squared() {
        // delta = -A^2 - A^-2; delta^2 = A^4 + 2 + A^-4
        let delta = LaurentPoly::from_terms(&[(2, -1), (-2, -1)]);
        assert_eq!(delta.pow(2), LaurentPoly::from_terms(&[(4, 1), (0, 2), (-4, 1)]));
    }
}
