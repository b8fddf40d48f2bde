//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("exponent vector has {got} entries, polynomial has {expected} variables")]
    Arity { got: usize, expected: usize },
    #[error("zero denominator in coefficient")]
    ZeroDenominator,
    #[error("malformed integer literal {0:?}")]
    BadInteger(String),
    #[error("substitution needs {expected} images, got {got}")]
    ImageCount { got: usize, expected: usize },
}

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// A polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn monomial(exps: Exponents, c: BigRational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `Σ cᵢ xᵢ`.
    pub fn linear(coeffs: &[BigRational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Exponents, BigRational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(PolyError::Arity {
                    got: e.len(),
                    expected: nvars,
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// The sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Smallest exponent of `x_i` over all terms: the largest `j` with `x_i^j | self`.
    pub fn order_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    /// Whether every term is divisible by at least one of `vars`.
    pub fn in_monomial_ideal(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|e| vars.iter().any(|&v| e[v] > 0))
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exchanges the variables `x_i` and `x_j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(i, j);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Replaces `x_i` by `images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::ImageCount {
                got: images.len(),
                expected: self.nvars,
            });
        }
        let target = images.first().map_or(0, Poly::nvars);
        let max_exp: Vec<u32> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Poly>> = images
            .iter()
            .zip(&max_exp)
            .map(|(img, &top)| {
                let mut v = vec![Poly::one(target)];
                for _ in 0..top {
                    let next = v.last().expect("nonempty") * img;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong arity");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// `λ` with `self = λ · other`, if one exists and both are nonzero.
    pub fn ratio_to(&self, other: &Poly) -> Option<BigRational> {
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let (e, c) = other.terms.iter().next()?;
        let lambda = self.terms.get(e)? / c;
        (other.scale(&lambda) == *self).then_some(lambda)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), IntLiteral::from(c.numer()), IntLiteral::from(c.denom())))
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Poly, PolyError> {
        let mut terms = Vec::with_capacity(json.terms.len());
        for (e, n, d) in &json.terms {
            let d = d.to_bigint()?;
            if d.is_zero() {
                return Err(PolyError::ZeroDenominator);
            }
            terms.push((e.clone(), BigRational::new(n.to_bigint()?, d)));
        }
        Poly::from_terms(json.nvars, terms)
    }
}

/// Wire form: `{"nvars": n, "terms": [[exponents, numerator, denominator], …]}`
/// in increasing exponent order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<(Exponents, IntLiteral, IntLiteral)>,
}

/// An integer written as a JSON number when it fits in `i64`, else as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLiteral {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for IntLiteral {
    fn from(x: &BigInt) -> Self {
        x.to_i64()
            .map_or_else(|| IntLiteral::Big(x.to_string()), IntLiteral::Small)
    }
}

impl IntLiteral {
    fn to_bigint(&self) -> Result<BigInt, PolyError> {
        match self {
            IntLiteral::Small(v) => Ok(BigInt::from(*v)),
            IntLiteral::Big(s) => s.parse().map_err(|_| PolyError::BadInteger(s.clone())),
        }
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let json = PolyJson::deserialize(d)?;
        Poly::from_json(&json).map_err(serde::de::Error::custom)
    }
}

fn combine(a: &Poly, b: &Poly, sign: bool) -> Poly {
    assert_eq!(a.nvars, b.nvars, "polynomials live in different rings");
    let mut out = a.clone();
    for (e, c) in &b.terms {
        out.add_term(e.clone(), if sign { c.clone() } else { -c });
    }
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        combine(self, rhs, true)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        combine(self, rhs, false)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomials live in different rings");
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&rat(-1))
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest-degree terms first reads more naturally.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.iter().sum::<u32>().cmp(&a.0.iter().sum::<u32>()).then(b.0.cmp(a.0)));
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("z{i}") } else { format!("z{i}^{k}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn ring_operations() {
        let p = &x(0) + &x(1);
        let sq = &p * &p;
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coeff(&[1, 1, 0]), rat(2));
        assert!((&sq - &sq).is_zero());
        assert_eq!(sq.homogeneous_degree(), Some(2));
        assert_eq!(p.pow(3).coeff(&[2, 1, 0]), rat(3));
    }

    #[test]
    fn substitution_and_evaluation() {
        let p = &(&x(0) * &x(1)) + &x(2).scale(&frac(1, 2));
        let images = [Poly::var(2, 0), Poly::var(2, 0).scale(&rat(3)), Poly::var(2, 1)];
        let q = p.substitute(&images).unwrap();
        assert_eq!(q.coeff(&[2, 0]), rat(3));
        assert_eq!(q.coeff(&[0, 1]), frac(1, 2));
        assert_eq!(p.eval(&[rat(2), rat(5), rat(4)]), rat(12));
    }

    #[test]
    fn ideal_membership_and_order() {
        let p = &(&x(0) * &x(0)) * &x(1);
        assert_eq!(p.order_in(0), Some(2));
        assert!(p.in_monomial_ideal(&[1]));
        assert!(!x(2).in_monomial_ideal(&[0, 1]));
    }

    #[test]
    fn ratio_detection() {
        let p = &x(0) + &x(2).scale(&rat(2));
        assert_eq!(p.scale(&frac(-3, 4)).ratio_to(&p), Some(frac(-3, 4)));
        assert_eq!((&p + &x(1)).ratio_to(&p), None);
    }

    #[test]
    fn json_round_trip() {
        let big = BigRational::from_integer("123456789012345678901234567890".parse().unwrap());
        let p = &Poly::monomial(vec![1, 0, 2], big) - &x(1).scale(&frac(5, 3));
        let text = serde_json::to_string(&p).unwrap();
        let back: Poly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert!(text.contains("\"123456789012345678901234567890\""));
    }

    #[test]
    fn display_is_readable() {
        let p = &(&x(0) * &x(0)) - &x(2).scale(&frac(1, 2));
        assert_eq!(p.to_string(), "z0^2 - 1/2*z2");
    }
}
