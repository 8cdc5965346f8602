//! Finite fields of odd characteristic, built as towers of quadratic
//! extensions over a prime field.
//!
//! Elements are small indices into the field. An element of a quadratic
//! extension `K = k[t]/(t^2 - s)` is `a + b t` with `a, b` in `k`, encoded as
//! `a + |k| * b`; applied recursively this is the base-`p` encoding of the
//! element's coordinates, constant coordinate first. The subfield `k` sits
//! inside `K` as the indices below `|k|`, so embedding is the identity.
//!
//! Multiplication goes through discrete log tables; addition through a full
//! table for small extension fields and through the tower otherwise.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order supported by the index representation.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 1024;

/// An element of a [`Field`], canonical by construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A finite field context `F_{p^m}` with `m` in `{1, 2, 4}`.
///
/// Cloning is cheap; contexts are immutable and shareable across threads.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    p: u32,
    degree: u32,
    order: u32,
    /// Subfield this field is a quadratic extension of.
    sub: Option<Field>,
    /// `s` in the defining polynomial `x^2 - s`, an element of `sub`.
    nonresidue: FieldElement,
    add: Option<Vec<u16>>,
    neg: Vec<u16>,
    /// `exp[i] = g^i` for `i < 2 (order - 1)`.
    exp: Vec<u16>,
    log: Vec<u32>,
    /// `x -> x^{|sub|}` when this is a quadratic extension.
    frob: Option<Vec<u16>>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Splits `q` as `p^m` with `p` an odd prime.
pub fn odd_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 3 || q.is_multiple_of(2) {
        return Err(Error::OddPrimePowerRequired(q));
    }
    let mut p = 3;
    while !q.is_multiple_of(p) {
        p += 2;
    }
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest != 1 || !is_prime(p) {
        return Err(Error::OddPrimePowerRequired(q));
    }
    Ok((p, m))
}

impl Field {
    /// Builds `F_{p^m}`. `m = 2` uses `x^2 - s` with `s` the least quadratic
    /// nonresidue mod `p`.
    pub fn new(p: u64, m: u32) -> Result<Field> {
        if p == 2 || !is_prime(p) {
            return Err(Error::OddPrimeRequired(p));
        }
        if p >= MAX_FIELD_ORDER as u64 {
            return Err(Error::FieldTooLarge(p));
        }
        let prime = Field::prime(p as u32);
        match m {
            1 => Ok(prime),
            2 => prime.quadratic_extension(),
            _ => Err(Error::UnsupportedExtensionDegree(m)),
        }
    }

    /// Builds the field with `q` elements.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, m) = odd_prime_power(q)?;
        Field::new(p, m)
    }

    fn prime(p: u32) -> Field {
        let order = p;
        let neg = (0..p).map(|a| ((p - a) % p) as u16).collect();
        let mul = |a: u32, b: u32| (a as u64 * b as u64 % p as u64) as u32;
        let (exp, log) = log_tables(order, mul);
        Field(Arc::new(Inner {
            p,
            degree: 1,
            order,
            sub: None,
            nonresidue: FieldElement::ZERO,
            add: None,
            neg,
            exp,
            log,
            frob: None,
        }))
    }

    /// Builds `F_{q^2} = F_q[t]/(t^2 - s)` over this field, with `s` the least
    /// (by index) nonsquare of `F_q`.
    pub fn quadratic_extension(&self) -> Result<Field> {
        let degree = self.degree() * 2;
        if degree > 4 {
            return Err(Error::UnsupportedExtensionDegree(degree));
        }
        let q = self.order();
        let order64 = q as u64 * q as u64;
        if order64 > MAX_FIELD_ORDER as u64 {
            return Err(Error::FieldTooLarge(order64));
        }
        let order = order64 as u32;
        let s = self
            .elements()
            .skip(1)
            .find(|&s| !self.is_square(s))
            .expect("odd-order field has a nonsquare");
        // x^2 - s has no root in F_q.
        debug_assert!(self.elements().all(|x| self.mul(x, x) != s));

        let k = self.clone();
        let split = move |a: u32| (FieldElement((a % q) as u16), FieldElement((a / q) as u16));
        let join = move |a: FieldElement, b: FieldElement| a.0 as u32 + q * b.0 as u32;

        let raw_add = |a: u32, b: u32| {
            let (a0, a1) = split(a);
            let (b0, b1) = split(b);
            join(k.add(a0, b0), k.add(a1, b1))
        };
        let raw_mul = |a: u32, b: u32| {
            let (a0, a1) = split(a);
            let (b0, b1) = split(b);
            let c0 = k.add(k.mul(a0, b0), k.mul(s, k.mul(a1, b1)));
            let c1 = k.add(k.mul(a0, b1), k.mul(a1, b0));
            join(c0, c1)
        };
        let add = (order <= ADD_TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity((order * order) as usize);
            for a in 0..order {
                for b in 0..order {
                    t.push(raw_add(a, b) as u16);
                }
            }
            t
        });
        let neg = (0..order)
            .map(|a| {
                let (a0, a1) = split(a);
                join(k.neg(a0), k.neg(a1)) as u16
            })
            .collect();
        let (exp, log) = log_tables(order, raw_mul);
        let frob = (0..order)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    let l = log[a as usize] as u64 * q as u64 % (order as u64 - 1);
                    exp[l as usize]
                }
            })
            .collect();

        Ok(Field(Arc::new(Inner {
            p: self.p(),
            degree,
            order,
            sub: Some(self.clone()),
            nonresidue: s,
            add,
            neg,
            exp,
            log,
            frob: Some(frob),
        })))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// The subfield `F_q` when this field is `F_{q^2}` built over it.
    pub fn base(&self) -> Option<&Field> {
        self.0.sub.as_ref()
    }

    /// The constant `s` of the defining quadratic `x^2 - s`.
    pub fn defining_constant(&self) -> Option<FieldElement> {
        self.0.sub.as_ref().map(|_| self.0.nonresidue)
    }

    /// The adjoined square root `t` of the defining constant.
    pub fn generator(&self) -> Option<FieldElement> {
        self.0.sub.as_ref().map(|k| FieldElement(k.order() as u16))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(|i| FieldElement(i as u16))
    }

    #[inline]
    pub fn contains(&self, a: FieldElement) -> bool {
        (a.0 as u32) < self.order()
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.order() {
            Ok(FieldElement(index as u16))
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Image of an integer under `Z -> F_p -> F`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p() as i64) as u16)
    }

    /// Builds an element from its coordinates over `F_p` (constant first).
    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() != self.degree() as usize || coords.iter().any(|&c| c >= self.p()) {
            return Err(Error::ContextMismatch);
        }
        let idx = coords.iter().rev().fold(0u32, |acc, &c| acc * self.p() + c);
        Ok(FieldElement(idx as u16))
    }

    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        let mut v = a.0 as u32;
        (0..self.degree())
            .map(|_| {
                let c = v % self.p();
                v /= self.p();
                c
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.0;
        match (&inner.add, &inner.sub) {
            (Some(t), _) => FieldElement(t[a.index() * inner.order as usize + b.index()]),
            (None, None) => {
                let s = a.0 as u32 + b.0 as u32;
                FieldElement(if s >= inner.p { s - inner.p } else { s } as u16)
            }
            (None, Some(k)) => {
                let q = k.order();
                let (a0, a1) = (a.0 as u32 % q, a.0 as u32 / q);
                let (b0, b1) = (b.0 as u32 % q, b.0 as u32 / q);
                let c0 = k.add(FieldElement(a0 as u16), FieldElement(b0 as u16));
                let c1 = k.add(FieldElement(a1 as u16), FieldElement(b1 as u16));
                FieldElement((c0.0 as u32 + q * c1.0 as u32) as u16)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.0.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let inner = &*self.0;
        FieldElement(inner.exp[(inner.log[a.index()] + inner.log[b.index()]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let inner = &*self.0;
        let l = inner.log[a.index()];
        let m = inner.order - 1;
        Ok(FieldElement(inner.exp[((m - l) % m) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn arith(&self, a: FieldElement, b: FieldElement, op: ArithOp) -> Result<FieldElement> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::ContextMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let inner = &*self.0;
        let m = (inner.order - 1) as u64;
        let l = inner.log[a.index()] as u64 * (e % m) % m;
        FieldElement(inner.exp[l as usize])
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        a.is_zero() || self.0.log[a.index()].is_multiple_of(2)
    }

    /// `x -> x^q` on `F_{q^2}`.
    pub fn frobenius(&self, a: FieldElement) -> Result<FieldElement> {
        match &self.0.frob {
            Some(f) if self.contains(a) => Ok(FieldElement(f[a.index()])),
            Some(_) => Err(Error::ContextMismatch),
            None => Err(Error::NoConjugation),
        }
    }

    /// Unchecked conjugation for hot loops; identity on fields without a
    /// quadratic subfield.
    #[inline]
    pub(crate) fn conj(&self, a: FieldElement) -> FieldElement {
        match &self.0.frob {
            Some(f) => FieldElement(f[a.index()]),
            None => a,
        }
    }

    /// `a + a^q`, an element of the base field `F_q`.
    pub fn relative_trace(&self, a: FieldElement) -> Result<FieldElement> {
        let c = self.frobenius(a)?;
        Ok(self.add(a, c))
    }

    /// `a^{q+1}`, an element of the base field `F_q`.
    pub fn norm(&self, a: FieldElement) -> Result<FieldElement> {
        let c = self.frobenius(a)?;
        Ok(self.mul(a, c))
    }

    /// The `q` elements with `a + a^q = 0`, as `c t` for `c` in `F_q` in index
    /// order.
    pub fn trace_zero_line(&self) -> Result<Vec<FieldElement>> {
        let (k, t) = match (self.base(), self.generator()) {
            (Some(k), Some(t)) => (k, t),
            _ => return Err(Error::NoConjugation),
        };
        Ok(k.elements().map(|c| self.mul(c, t)).collect())
    }

    pub fn same_as(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.p() == other.p()
                && self.degree() == other.degree()
                && self.base().map(Field::order) == other.base().map(Field::order))
    }

    /// Renders an element as a polynomial in the tower generators.
    pub fn format(&self, a: FieldElement) -> String {
        match self.base() {
            None => a.0.to_string(),
            Some(k) => {
                let q = k.order();
                let (a0, a1) = (
                    FieldElement((a.0 as u32 % q) as u16),
                    FieldElement((a.0 as u32 / q) as u16),
                );
                let name = if k.degree() == 1 { "t" } else { "u" };
                let lo = k.format(a0);
                let hi = k.format(a1);
                let wrap = |s: String| if s.contains('+') { format!("({s})") } else { s };
                match (a0.is_zero(), a1.is_zero()) {
                    (_, true) => lo,
                    (true, false) if a1 == FieldElement::ONE => name.to_string(),
                    (true, false) => format!("{}{name}", wrap(hi)),
                    (false, false) if a1 == FieldElement::ONE => format!("{lo}+{name}"),
                    (false, false) => format!("{lo}+{}{name}", wrap(hi)),
                }
            }
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base() {
            Some(k) => write!(f, "F_{} over F_{}", self.order(), k.order()),
            None => write!(f, "F_{}", self.order()),
        }
    }
}

fn log_tables(order: u32, mul: impl Fn(u32, u32) -> u32) -> (Vec<u16>, Vec<u32>) {
    let m = order - 1;
    let mut exp = vec![0u16; 2 * m as usize];
    let mut log = vec![0u32; order as usize];
    for g in 1..order {
        let mut x = 1u32;
        let mut k = 0u32;
        loop {
            exp[k as usize] = x as u16;
            k += 1;
            x = mul(x, g);
            if x == 1 || k > m {
                break;
            }
        }
        if k == m {
            for i in 0..m {
                let v = exp[i as usize];
                exp[(i + m) as usize] = v;
                log[v as usize] = i;
            }
            return (exp, log);
        }
    }
    unreachable!("multiplicative group of a finite field is cyclic")
}
