//! Picard lattice of a blow-up of ℙ¹×ℙ¹ at `n` conjugate point pairs.
//!
//! The lattice has rank `2n + 2` with generators `H1`, `H2` (the two rulings),
//! `e1..en` and their conjugates `ē1..ēn` (exceptional curves). The form is
//! `H1·H2 = 1`, `H1² = H2² = 0`, `eᵢ·eⱼ = ēᵢ·ēⱼ = −δᵢⱼ` and zero otherwise.
//! The real structure fixes the rulings and swaps `eᵢ ↔ ēᵢ`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Errors raised by lattice arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("classes live on incompatible lattices (n = {left} and n = {right})")]
    BasisMismatch { left: usize, right: usize },
    #[error("exceptional index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("coefficient vector has length {got}, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error(
        "cannot shrink a lattice of n = {from} to n = {to} while {index}-th exceptional coefficients are non-zero"
    )]
    NonzeroTail { from: usize, to: usize, index: usize },
}

/// The generator set for a fixed number of blown-up conjugate pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeBasis {
    n: usize,
}

impl LatticeBasis {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    /// Number of conjugate point pairs blown up.
    pub fn n(self) -> usize {
        self.n
    }

    pub fn rank(self) -> usize {
        2 * self.n + 2
    }

    pub fn zero(self) -> CurveClass {
        CurveClass {
            n: self.n,
            coeffs: vec![BigInt::zero(); self.rank()],
        }
    }

    pub fn h1(self) -> CurveClass {
        self.unit(0)
    }

    pub fn h2(self) -> CurveClass {
        self.unit(1)
    }

    /// Exceptional class `eᵢ`, with `i` counted from one.
    pub fn e(self, i: usize) -> Result<CurveClass, LatticeError> {
        self.check_index(i)?;
        Ok(self.unit(1 + i))
    }

    /// Conjugate exceptional class `ēᵢ`, with `i` counted from one.
    pub fn ebar(self, i: usize) -> Result<CurveClass, LatticeError> {
        self.check_index(i)?;
        Ok(self.unit(1 + self.n + i))
    }

    /// The anti-canonical class `2H1 + 2H2 − Σeᵢ − Σēᵢ`.
    pub fn anticanonical(self) -> CurveClass {
        let mut coeffs = vec![BigInt::from(-1); self.rank()];
        coeffs[0] = BigInt::from(2);
        coeffs[1] = BigInt::from(2);
        CurveClass { n: self.n, coeffs }
    }

    /// Builds a class from `(a, b, m₁..mₙ, m̄₁..m̄ₙ)` meaning
    /// `a·H1 + b·H2 + Σ mᵢ eᵢ + Σ m̄ᵢ ēᵢ`.
    pub fn class_from<I, T>(self, coeffs: I) -> Result<CurveClass, LatticeError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        if coeffs.len() != self.rank() {
            return Err(LatticeError::WrongLength {
                got: coeffs.len(),
                expected: self.rank(),
            });
        }
        Ok(CurveClass { n: self.n, coeffs })
    }

    fn unit(self, pos: usize) -> CurveClass {
        let mut c = self.zero();
        c.coeffs[pos] = BigInt::one();
        c
    }

    fn check_index(self, i: usize) -> Result<(), LatticeError> {
        if i == 0 || i > self.n {
            Err(LatticeError::IndexOutOfRange { index: i, n: self.n })
        } else {
            Ok(())
        }
    }
}

/// An element of the Picard lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl CurveClass {
    pub fn basis(&self) -> LatticeBasis {
        LatticeBasis::new(self.n)
    }

    /// Coefficients in the order `(a, b, m₁..mₙ, m̄₁..m̄ₙ)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn h1_coeff(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn h2_coeff(&self) -> &BigInt {
        &self.coeffs[1]
    }

    /// Coefficient of `eᵢ` (one-based).
    pub fn e_coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[1 + i]
    }

    /// Coefficient of `ēᵢ` (one-based).
    pub fn ebar_coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[1 + self.n + i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The intersection pairing.
    pub fn intersect(&self, other: &CurveClass) -> Result<BigInt, LatticeError> {
        self.same_basis(other)?;
        let mut acc = &self.coeffs[0] * &other.coeffs[1] + &self.coeffs[1] * &other.coeffs[0];
        for (x, y) in self.coeffs[2..].iter().zip(&other.coeffs[2..]) {
            acc -= x * y;
        }
        Ok(acc)
    }

    /// Self-intersection `c·c`.
    pub fn square(&self) -> BigInt {
        self.intersect(self).expect("a class shares its own basis")
    }

    /// Intersection with a class on the same basis, returned as `i64`.
    ///
    /// # Panics
    /// Panics if the bases differ or the value overflows `i64`; use
    /// [`CurveClass::intersect`] when either is possible.
    pub fn dot(&self, other: &CurveClass) -> i64 {
        self.intersect(other)
            .expect("dot requires a shared basis")
            .to_i64()
            .expect("intersection number fits in i64")
    }

    /// Image under the real structure: swaps `eᵢ` and `ēᵢ`.
    pub fn conjugate(&self) -> CurveClass {
        let n = self.n;
        let mut coeffs = self.coeffs.clone();
        let (head, tail) = coeffs[2..].split_at_mut(n);
        head.swap_with_slice(tail);
        CurveClass { n, coeffs }
    }

    /// Pull-back to the lattice with `to ≥ n` pairs: the old coefficients are
    /// kept and the new exceptional classes get coefficient zero.
    pub fn extend_to(&self, to: usize) -> CurveClass {
        assert!(to >= self.n, "extend_to cannot shrink a lattice");
        let mut coeffs = Vec::with_capacity(2 * to + 2);
        coeffs.extend_from_slice(&self.coeffs[..2 + self.n]);
        coeffs.resize(2 + to, BigInt::zero());
        coeffs.extend_from_slice(&self.coeffs[2 + self.n..]);
        coeffs.resize(2 * to + 2, BigInt::zero());
        CurveClass { n: to, coeffs }
    }

    /// Drops exceptional pairs above `to`; fails unless their coefficients vanish.
    pub fn restrict_to(&self, to: usize) -> Result<CurveClass, LatticeError> {
        assert!(to <= self.n, "restrict_to cannot grow a lattice");
        for i in to + 1..=self.n {
            if !self.e_coeff(i).is_zero() || !self.ebar_coeff(i).is_zero() {
                return Err(LatticeError::NonzeroTail {
                    from: self.n,
                    to,
                    index: i,
                });
            }
        }
        let mut coeffs = Vec::with_capacity(2 * to + 2);
        coeffs.extend_from_slice(&self.coeffs[..2 + to]);
        coeffs.extend_from_slice(&self.coeffs[2 + self.n..2 + self.n + to]);
        Ok(CurveClass { n: to, coeffs })
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: &BigInt) -> CurveClass {
        CurveClass {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn checked_add(&self, other: &CurveClass) -> Result<CurveClass, LatticeError> {
        self.same_basis(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &CurveClass) -> Result<CurveClass, LatticeError> {
        self.same_basis(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    fn zip_with(&self, other: &CurveClass, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> CurveClass {
        CurveClass {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn same_basis(&self, other: &CurveClass) -> Result<(), LatticeError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(LatticeError::BasisMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }
}

/// Free function form of [`CurveClass::intersect`].
pub fn intersect(c1: &CurveClass, c2: &CurveClass) -> Result<BigInt, LatticeError> {
    c1.intersect(c2)
}

/// Free function form of [`CurveClass::conjugate`].
pub fn conjugate(c: &CurveClass) -> CurveClass {
    c.conjugate()
}

/// Free function form of [`LatticeBasis::anticanonical`].
pub fn anticanonical(basis: LatticeBasis) -> CurveClass {
    basis.anticanonical()
}

impl Add for &CurveClass {
    type Output = CurveClass;

    /// # Panics
    /// Panics on a basis mismatch; see [`CurveClass::checked_add`].
    fn add(self, rhs: &CurveClass) -> CurveClass {
        self.checked_add(rhs).expect("adding classes on different lattices")
    }
}

impl Sub for &CurveClass {
    type Output = CurveClass;

    /// # Panics
    /// Panics on a basis mismatch; see [`CurveClass::checked_sub`].
    fn sub(self, rhs: &CurveClass) -> CurveClass {
        self.checked_sub(rhs)
            .expect("subtracting classes on different lattices")
    }
}

impl Add for CurveClass {
    type Output = CurveClass;
    fn add(self, rhs: CurveClass) -> CurveClass {
        &self + &rhs
    }
}

impl Sub for CurveClass {
    type Output = CurveClass;
    fn sub(self, rhs: CurveClass) -> CurveClass {
        &self - &rhs
    }
}

impl Neg for &CurveClass {
    type Output = CurveClass;
    fn neg(self) -> CurveClass {
        CurveClass {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CurveClass {
    /// Writes the class as a signed sum such as `H1+H2-e1-ē2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(BigInt, String)> = vec![
            (self.coeffs[0].clone(), "H1".into()),
            (self.coeffs[1].clone(), "H2".into()),
        ];
        for i in 1..=self.n {
            terms.push((self.e_coeff(i).clone(), format!("e{i}")));
        }
        for i in 1..=self.n {
            terms.push((self.ebar_coeff(i).clone(), format!("ē{i}")));
        }
        let mut first = true;
        for (c, name) in terms.into_iter().filter(|(c, _)| !c.is_zero()) {
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{mag}{name}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
