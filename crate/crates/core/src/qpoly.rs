//! Exact polynomials in the formal variable `q`.
//!
//! Coefficients are arbitrary-precision rationals so that product/quotient
//! formulas can be assembled term by term; anything handed to callers as a
//! count is checked to be integral first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense univariate polynomial, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> QPoly {
        QPoly::constant(1)
    }

    pub fn constant(c: i64) -> QPoly {
        QPoly::from_ints(&[c])
    }

    /// From integer coefficients, constant term first.
    pub fn from_ints(c: &[i64]) -> QPoly {
        QPoly::from_rationals(
            c.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn from_bigints(c: Vec<BigInt>) -> QPoly {
        QPoly::from_rationals(c.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn from_rationals(mut coeffs: Vec<BigRational>) -> QPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// `q^k`
    pub fn q_pow(k: usize) -> QPoly {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        QPoly { coeffs: c }
    }

    /// `q^k - 1`
    pub fn q_pow_minus_one(k: usize) -> QPoly {
        &QPoly::q_pow(k) - &QPoly::one()
    }

    /// `q^k + c`
    pub fn q_pow_plus(k: usize, c: i64) -> QPoly {
        &QPoly::q_pow(k) + &QPoly::constant(c)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NonIntegral)
                }
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> QPoly {
        (0..k).fold(QPoly::one(), |acc, _| &acc * self)
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a QPoly>) -> QPoly {
        factors.into_iter().fold(QPoly::one(), |acc, f| &acc * f)
    }

    /// Quotient `c` with `self = divisor * c` exactly.
    pub fn exact_div(&self, divisor: &QPoly) -> Result<QPoly> {
        let (quot, rem) = self.div_rem(divisor)?;
        if !rem.is_zero() {
            return Err(Error::NotDivisible);
        }
        Ok(quot)
    }

    pub fn div_rem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::ZeroDivisor);
        };
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((QPoly::zero(), self.clone()));
        };
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        Ok((QPoly::from_rationals(quot), QPoly::from_rationals(rem)))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Exact value at an integer point.
    pub fn eval_at(&self, q0: &BigInt) -> Result<BigInt> {
        let v = self.eval_rational(&BigRational::from_integer(q0.clone()));
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NonIntegral)
        }
    }

    pub fn eval_u64(&self, q0: u64) -> Result<BigInt> {
        self.eval_at(&BigInt::from(q0))
    }

    /// Coefficients `c_k` with `self(q) = sum c_k (q-1)^k`.
    pub fn to_qminus1_basis(&self) -> Result<QMinus1Expansion> {
        let a = self.integer_coeffs()?;
        // substitute q = x + 1: c_k = sum_{i >= k} a_i binom(i, k)
        let n = a.len();
        let mut c = vec![BigInt::zero(); n];
        let mut row = vec![BigInt::one()];
        for (i, ai) in a.iter().enumerate() {
            if i > 0 {
                let mut next = vec![BigInt::one(); i + 1];
                for k in 1..i {
                    next[k] = &row[k - 1] + &row[k];
                }
                row = next;
            }
            for k in 0..=i {
                c[k] += ai * &row[k];
            }
        }
        Ok(QMinus1Expansion { coeffs: c })
    }

    /// Inverse of [`QPoly::to_qminus1_basis`].
    pub fn from_qminus1_basis(c: &[BigInt]) -> QPoly {
        let x = QPoly::from_ints(&[-1, 1]);
        let mut acc = QPoly::zero();
        for ck in c.iter().rev() {
            acc = &(&acc * &x) + &QPoly::from_bigints(vec![ck.clone()]);
        }
        acc
    }
}

/// Expansion of a polynomial in powers of `q - 1`, lowest power first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMinus1Expansion {
    pub coeffs: Vec<BigInt>,
}

impl QMinus1Expansion {
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

/// The Gaussian binomial `[n choose r]_q`, the number of `r`-dimensional
/// subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, r: usize) -> Result<QPoly> {
    if r > n {
        return Err(Error::RankOutOfRange { n, r });
    }
    let num = QPoly::product(
        &((n - r + 1..=n)
            .map(QPoly::q_pow_minus_one)
            .collect::<Vec<_>>()),
    );
    let den = QPoly::product(&((1..=r).map(QPoly::q_pow_minus_one).collect::<Vec<_>>()));
    num.exact_div(&den)
}

macro_rules! ring_op {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&QPoly> for &QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &QPoly) -> QPoly {
                $body(self, rhs)
            }
        }
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                $body(&self, &rhs)
            }
        }
    };
}

fn add_impl(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = BigRational::zero();
    QPoly::from_rationals(
        (0..n)
            .map(|i| a.coeffs.get(i).unwrap_or(&zero) + b.coeffs.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn sub_impl(a: &QPoly, b: &QPoly) -> QPoly {
    add_impl(a, &-b)
}

fn mul_impl(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() || b.is_zero() {
        return QPoly::zero();
    }
    let mut c = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    QPoly::from_rationals(c)
}

ring_op!(Add, add, add_impl);
ring_op!(Sub, sub, sub_impl);
ring_op!(Mul, mul, mul_impl);

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = abs.is_one();
            match k {
                0 => write!(f, "{abs}")?,
                _ if !unit => write!(f, "{abs}*")?,
                _ => {}
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// JSON array of decimal strings, constant term first.
impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<QPoly, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(QPoly::from_rationals(coeffs))
    }
}
