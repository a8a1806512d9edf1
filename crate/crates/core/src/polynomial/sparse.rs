use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};

pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariant: no stored coefficient is zero and every exponent vector has
/// one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, Rational>,
}

impl SparsePolynomial {
    pub fn zero(vars: Vec<String>) -> Self {
        SparsePolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: Rational) -> Self {
        let mut p = SparsePolynomial::zero(vars);
        let arity = p.vars.len();
        p.add_term(vec![0; arity], c);
        p
    }

    /// The polynomial `vars[index]`.
    pub fn variable(vars: Vec<String>, index: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        let mut p = SparsePolynomial::zero(vars);
        p.add_term(exps, Rational::one());
        p
    }

    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Exponents, Rational)>,
    ) -> Result<Self> {
        let mut p = SparsePolynomial::zero(vars);
        for (exps, c) in terms {
            if exps.len() != p.vars.len() {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector of length {} for {} variables",
                    exps.len(),
                    p.vars.len()
                )));
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    /// Univariate polynomial from a dense coefficient list (index = degree).
    pub fn univariate(var: &str, coeffs: &[Rational]) -> Self {
        let mut p = SparsePolynomial::zero(vec![var.to_string()]);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], c.clone());
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Adds `c * x^exps`, dropping the term if it cancels.
    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.vars.len()])
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Dense coefficients of a univariate polynomial.
    pub fn univariate_coeffs(&self) -> Result<Vec<Rational>> {
        if self.vars.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "expected a univariate polynomial, found {} variables",
                self.vars.len()
            )));
        }
        let deg = self.degree_in(0).unwrap_or(0) as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        Ok(out)
    }

    /// Exact value at a point binding every variable.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let values: Vec<&Rational> = self
            .vars
            .iter()
            .map(|v| point.get(v).ok_or_else(|| Error::MissingVariable(v.clone())))
            .collect::<Result<_>>()?;
        let mut total = Rational::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in values.iter().zip(exps) {
                if k > 0 {
                    term *= num_traits::pow((*x).clone(), k as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Binds the variables present in `point` and keeps the rest symbolic.
    pub fn partial_eval(&self, point: &BTreeMap<String, Rational>) -> SparsePolynomial {
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|&i| !point.contains_key(&self.vars[i]))
            .collect();
        let mut out = SparsePolynomial::zero(keep.iter().map(|&i| self.vars[i].clone()).collect());
        for (exps, c) in &self.terms {
            let mut coeff = c.clone();
            for (i, var) in self.vars.iter().enumerate() {
                if let Some(x) = point.get(var) {
                    coeff *= num_traits::pow(x.clone(), exps[i] as usize);
                }
            }
            out.add_term(keep.iter().map(|&i| exps[i]).collect(), coeff);
        }
        out
    }

    /// Re-expresses the polynomial over `vars` (a superset of the current
    /// variables, in any order).
    pub fn with_vars(&self, vars: &[String]) -> Result<SparsePolynomial> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::InvalidArgument(format!("variable `{v}` not in target list")))
            })
            .collect::<Result<_>>()?;
        let mut out = SparsePolynomial::zero(vars.to_vec());
        for (exps, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &k) in exps.iter().enumerate() {
                e[map[i]] = k;
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * factor);
        }
        out
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            variables: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.numer().to_string(), c.denom().to_string()))
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self> {
        let terms = json
            .terms
            .iter()
            .map(|(e, n, d)| {
                let bad = || Error::InvalidArgument(format!("bad coefficient `{n}/{d}`"));
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok((e.clone(), Rational::new(n, d)))
            })
            .collect::<Result<Vec<_>>>()?;
        SparsePolynomial::from_terms(json.variables.clone(), terms)
    }
}

impl std::ops::Add for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.vars, rhs.vars, "adding polynomials over different variables");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Mul for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.vars, rhs.vars, "multiplying polynomials over different variables");
        let mut out = SparsePolynomial::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

/// Wire form: variable list plus `(exponents, numerator, denominator)` triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub variables: Vec<String>,
    pub terms: Vec<(Vec<u32>, String, String)>,
}

impl fmt::Display for SparsePolynomial {
    /// Terms by ascending total degree, e.g. `1 + 3*w + 3*w^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        for (i, (exps, c)) in terms.into_iter().enumerate() {
            let monomial: Vec<String> = self
                .vars
                .iter()
                .zip(exps.iter())
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let negative = c.is_negative();
            let magnitude = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if monomial.is_empty() {
                f.write_str(&fmt_rational(&magnitude))?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{}*", fmt_rational(&magnitude))?;
                }
                f.write_str(&monomial.join("*"))?;
            }
        }
        Ok(())
    }
}
