//! Sparse multivariate polynomials over a [`Field`], enough for evaluating
//! certificate forms, differentiating them and dividing by a conic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;
use crate::varieties::VeroneseChart;

/// Exponent vector ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
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

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<E> {
    nvars: usize,
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone + PartialEq + fmt::Display> Poly<E> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// `sum_beta coeffs[beta] * u^{exponents[beta]}` over a chart's monomials.
    pub fn from_chart<F: Field<Elem = E>>(field: &F, chart: &VeroneseChart, coeffs: &[E]) -> Self {
        let mut p = Poly::zero(chart.n());
        for (e, c) in chart.exponents().iter().zip(coeffs) {
            p.add_term(field, Monomial(e.clone()), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    fn add_term<F: Field<Elem = E>>(&mut self, field: &F, m: Monomial, c: E) {
        let sum = match self.terms.get(&m) {
            Some(old) => field.add(old, &c),
            None => c,
        };
        if field.is_zero(&sum) {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, point: &[E]) -> E {
        assert_eq!(point.len(), self.nvars, "point arity must match");
        self.terms.iter().fold(field.zero(), |acc, (m, c)| {
            let v =
                m.0.iter()
                    .zip(point)
                    .fold(c.clone(), |t, (&e, x)| field.mul(&t, &field.pow(x, e)));
            field.add(&acc, &v)
        })
    }

    pub fn partial<F: Field<Elem = E>>(&self, field: &F, var: usize) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(
                field,
                Monomial(exps),
                field.mul(c, &field.from_i64(e as i64)),
            );
        }
        out
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m, x) in &self.terms {
            out.add_term(field, m.clone(), field.mul(x, c));
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), c.clone());
        }
        out
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let m = Monomial(a.0.iter().zip(&b.0).map(|(i, j)| i + j).collect());
                out.add_term(field, m, field.mul(x, y));
            }
        }
        out
    }

    /// Division with remainder by a single polynomial in graded-lex order.
    /// A principal ideal's generator is a Groebner basis of it, so the
    /// remainder is zero exactly when `divisor` divides `self`.
    pub fn div_rem<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> (Self, Self) {
        let (lead_m, lead_c) = divisor
            .terms
            .iter()
            .next_back()
            .expect("division by the zero polynomial");
        let lead_inv = field.inv(lead_c).expect("leading coefficient is nonzero");
        let mut quotient = Poly::zero(self.nvars);
        let mut remainder = Poly::zero(self.nvars);
        let mut rest = self.clone();
        while let Some((m, c)) = rest
            .terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
        {
            if lead_m.divides(&m) {
                let qm = Monomial(m.0.iter().zip(&lead_m.0).map(|(a, b)| a - b).collect());
                let qc = field.mul(&c, &lead_inv);
                let mut step = Poly::zero(self.nvars);
                step.add_term(field, qm, qc);
                quotient = quotient.add(field, &step);
                let sub = divisor.mul(field, &step).scale(field, &field.from_i64(-1));
                rest = rest.add(field, &sub);
            } else {
                rest.terms.remove(&m);
                remainder.add_term(field, m, c);
            }
        }
        (quotient, remainder)
    }
}

impl<E: fmt::Display> fmt::Display for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*u{}", i + 1)?,
                    _ => write!(f, "*u{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}
