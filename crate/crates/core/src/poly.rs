//! Univariate polynomial arithmetic over an exact scalar ring.
//!
//! Coefficients are stored in ascending order of degree: `coeffs[i]` is the
//! coefficient of λ^i. The representation is canonical: the highest stored
//! coefficient is nonzero unless the polynomial is identically zero, so
//! equality is plain coefficient-wise equality. The crate instantiates this
//! at [`num_bigint::BigInt`] (see [`crate::IntPoly`]); degree-product bounds
//! on compositions overflow machine integers quickly, and the composition
//! identities verified downstream require exact equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Float, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient ring for [`Poly`]: exact integers, floats, or complex floats.
pub trait Scalar: Num + Neg<Output = Self> + Clone {}

impl<T: Num + Neg<Output = T> + Clone> Scalar for T {}

/// Parity of a polynomial as a function: even (only even powers), odd (only
/// odd powers), or neither. The zero polynomial reports even.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Neither,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros into canonical form.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The identity polynomial λ.
    pub fn identity() -> Self {
        Poly {
            coeffs: vec![T::zero(), T::one()],
        }
    }

    /// c·λ^power.
    pub fn monomial(c: T, power: usize) -> Self {
        let mut coeffs = vec![T::zero(); power + 1];
        coeffs[power] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the highest nonzero coefficient; `None` for the zero
    /// polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients in canonical form.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of λ^i (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scaled(&self, c: &T) -> Self {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .map(|a| a.clone() * c.clone())
                .collect(),
        )
    }

    /// Exact composition `self(inner(λ))` by Horner over polynomials.
    ///
    /// For nonconstant factors the degree is the product of the degrees; the
    /// result is monic whenever both factors are monic.
    pub fn compose(&self, inner: &Poly<T>) -> Poly<T> {
        let Some(d) = self.degree() else {
            return Poly::zero();
        };
        let mut acc = Poly::constant(self.coeffs[d].clone());
        for i in (0..d).rev() {
            acc = &acc * inner;
            if !self.coeffs[i].is_zero() {
                acc = &acc + &Poly::constant(self.coeffs[i].clone());
            }
        }
        acc
    }

    pub fn parity(&self) -> Parity {
        let odd_vanish = self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero);
        let even_vanish = self.coeffs.iter().step_by(2).all(Zero::is_zero);
        if odd_vanish {
            Parity::Even
        } else if even_vanish {
            Parity::Odd
        } else {
            Parity::Neither
        }
    }

    /// Parses the ascending coefficient-list text form `"c0,c1,...,cd"`.
    pub fn parse_coeff_list(s: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for token in s.split(',') {
            let token = token.trim();
            let c = T::from_str_radix(token, 10).map_err(|_| Error::InvalidCoeffToken {
                token: token.to_string(),
            })?;
            coeffs.push(c);
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl<T: Scalar + fmt::Display> Poly<T> {
    /// Ascending coefficient-list text form; `"0"` for the zero polynomial.
    pub fn coeff_list(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl<T: Scalar + ToPrimitive> Poly<T> {
    /// Horner evaluation at a complex point, with coefficients converted to
    /// the target float type.
    pub fn eval<F: Float>(&self, z: Complex<F>) -> Complex<F> {
        let mut acc = Complex::new(F::zero(), F::zero());
        for c in self.coeffs.iter().rev() {
            let cf = F::from(c.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(F::nan);
            acc = acc * z + Complex::new(cf, F::zero());
        }
        acc
    }

    /// Largest coefficient magnitude as `f64` (zero for the zero polynomial).
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY).abs())
            .fold(0.0, f64::max)
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(out)
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::from_coeffs(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<T: Scalar + Signed + fmt::Display> fmt::Display for Poly<T> {
    /// Pretty form in descending powers, e.g. `λ^5 - 3λ^3 + λ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if !mag.is_one() || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}
