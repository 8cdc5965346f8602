//! The radical `R = A ⋊ H` of a maximal standard parabolic, realised inside
//! `2n x 2n` matrices, together with its coadjoint orbits.
//!
//! Elements are stored as parameter blocks and multiplied as ambient
//! matrices. An element `a(V) h(P)` has ambient form `[[L, V N], [0, N]]` where
//! `h(P) = diag(L, N)` and `a(V) = [[I, V], [0, I]]`:
//!
//! | type | `L`                    | `N`                        | `V`                     |
//! |------|------------------------|----------------------------|-------------------------|
//! | C, D | `[[I_d, P], [0, I]]`   | `[[I_d, 0], [-P^t, I]]`    | `[[B1, B2], [B3, 0]]`   |
//! | U    | `[[I_d, P], [0, I]]`   | `[[I_{n-d}, P2], [0, I_d]]`| `[[B1, B2], [0, B3]]`   |
//!
//! with `V` symmetric (C) or skew-symmetric (D), and for U the constraints
//! `B1 = -J_d conj(B3^t) J_{n-d}`, `B2 J_d` skew-Hermitian,
//! `P = -J_d conj(P2^t) J_{n-d}`.
//!
//! Characters of `A` are indexed by dual matrices `T` in the transposed
//! support; `H` acts on them by `T -> [g T g^{-1}]`, the projection keeping
//! only entries `(i, j)` with `(j, i)` in the support of `Lie(A)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::falinalg::{pairing_gram, FfMatrix};
use crate::gf::{Field, FieldElement};
use crate::qpoly::QPoly;
use crate::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RadicalType {
    C,
    D,
    U,
}

impl FromStr for RadicalType {
    type Err = Error;
    fn from_str(s: &str) -> Result<RadicalType> {
        match s {
            "C" | "c" => Ok(RadicalType::C),
            "D" | "d" => Ok(RadicalType::D),
            "U" | "u" => Ok(RadicalType::U),
            _ => Err(Error::InvalidParams(format!("unknown type {s:?}"))),
        }
    }
}

impl fmt::Display for RadicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// `(X, n, d)` naming the radical `R_u^{X,d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RadicalParams {
    #[serde(rename = "type")]
    pub kind: RadicalType,
    pub n: usize,
    pub d: usize,
}

impl RadicalParams {
    pub fn new(kind: RadicalType, n: usize, d: usize) -> Result<RadicalParams> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("n = {n}, need n >= 2")));
        }
        let max_d = match kind {
            RadicalType::C | RadicalType::D => n,
            RadicalType::U => n - 1,
        };
        if d < 1 || d > max_d {
            return Err(Error::InvalidParams(format!(
                "d = {d} out of range 1..={max_d} for type {kind}"
            )));
        }
        Ok(RadicalParams { kind, n, d })
    }

    /// Every valid `d` for `(kind, n)`.
    pub fn all(kind: RadicalType, n: usize) -> Vec<RadicalParams> {
        (1..=n)
            .filter_map(|d| RadicalParams::new(kind, n, d).ok())
            .collect()
    }

    /// Rank conditions below the classical Dynkin range; the constructions
    /// are still well defined.
    pub fn warnings(&self) -> Vec<String> {
        let min = match self.kind {
            RadicalType::C => 3,
            RadicalType::D => 4,
            RadicalType::U => 2,
        };
        if self.n < min {
            vec![format!(
                "type {} with n = {} is below the Dynkin range n >= {min}",
                self.kind, self.n
            )]
        } else {
            vec![]
        }
    }

    /// `|k| = q^{k_exponent}`.
    pub fn k_exponent(&self) -> usize {
        match self.kind {
            RadicalType::U => 2,
            _ => 1,
        }
    }

    /// `|H| = q^{h_exponent}`.
    pub fn h_exponent(&self) -> usize {
        self.k_exponent() * self.d * (self.n - self.d)
    }

    /// `|A| = q^{a_exponent}`; also the size of the dual space.
    pub fn a_exponent(&self) -> usize {
        let (n, d) = (self.n, self.d);
        match self.kind {
            RadicalType::C => d * (d + 1) / 2 + d * (n - d),
            RadicalType::D => d * (d - 1) / 2 + d * (n - d),
            RadicalType::U => d * d + 2 * d * (n - d),
        }
    }

    pub fn order_exponent(&self) -> usize {
        self.h_exponent() + self.a_exponent()
    }

    /// `H` is trivial, so the radical equals the abelian group `A`.
    pub fn h_is_trivial(&self) -> bool {
        self.d == self.n
    }
}

impl fmt::Display for RadicalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.kind, self.n, self.d)
    }
}

/// `|R_u^{X,d}|` as a power of `q`.
pub fn radical_order(params: RadicalParams) -> QPoly {
    QPoly::q_pow(params.order_exponent())
}

/// An element `a(V) h(P)`.
#[derive(Clone, PartialEq, Eq)]
pub struct RadicalElement {
    /// `d x (n-d)` parameter of the `H` part (`A` for C/D, `A_1` for U).
    pub h: FfMatrix,
    /// `n x n` block `V` of the `A` part.
    pub v: FfMatrix,
}

impl fmt::Debug for RadicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a({:?}) h({:?})", self.v, self.h)
    }
}

/// A point `P_X(B1, B3, B2, 0)` of the dual of `Lie(A)`.
///
/// Shapes: C/D `b1: d x d`, `b3: d x (n-d)`, `b2: (n-d) x d`;
/// U `b1: (n-d) x d`, `b2: d x d`, `b3: d x (n-d)`.
#[derive(Clone, PartialEq, Eq)]
pub struct DualElement {
    pub b1: FfMatrix,
    pub b3: FfMatrix,
    pub b2: FfMatrix,
}

impl fmt::Debug for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P(B1={:?}, B3={:?}, B2={:?})", self.b1, self.b3, self.b2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub representative: DualElement,
    pub orbit_size: u64,
    pub stabilizer_order: u64,
    /// Orbit size is `|k|^e`.
    pub e: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SlotKind {
    /// Any element of `k`.
    Full,
    /// `c t` with `c` in `F_q`.
    TraceZero,
}

/// One free coordinate: `(i, j)` inside the block it parameterises.
#[derive(Clone, Copy, Debug)]
struct Slot {
    kind: SlotKind,
    i: usize,
    j: usize,
    /// Which of the two parameter matrices the slot belongs to.
    second: bool,
}

/// Mixed-radix indexing of a list of slots, last slot fastest.
#[derive(Clone, Debug)]
struct SlotSpace {
    slots: Vec<Slot>,
}

impl SlotSpace {
    fn radix(&self, r: &Radical, s: &Slot) -> u64 {
        match s.kind {
            SlotKind::Full => r.k.order() as u64,
            SlotKind::TraceZero => r.base.order() as u64,
        }
    }

    fn len(&self, r: &Radical) -> u128 {
        self.slots
            .iter()
            .fold(1u128, |acc, s| acc.saturating_mul(self.radix(r, s) as u128))
    }

    fn decode(&self, r: &Radical, mut idx: u64) -> Vec<FieldElement> {
        let mut out = vec![FieldElement::ZERO; self.slots.len()];
        for (k, s) in self.slots.iter().enumerate().rev() {
            let rad = self.radix(r, s);
            let digit = (idx % rad) as u32;
            idx /= rad;
            out[k] = match s.kind {
                SlotKind::Full => r.k.element(digit).expect("digit below order"),
                SlotKind::TraceZero => r.trace_zero[digit as usize],
            };
        }
        out
    }

    fn encode(&self, r: &Radical, values: &[FieldElement]) -> u64 {
        let mut idx = 0u64;
        for (s, &v) in self.slots.iter().zip(values) {
            let digit = match s.kind {
                SlotKind::Full => v.index() as u64,
                SlotKind::TraceZero => r.k.mul(v, r.t_inv).index() as u64,
            };
            idx = idx * self.radix(r, s) + digit;
        }
        idx
    }

    /// Additive generators of the slot's values over `F_p`.
    fn fp_generators(&self, r: &Radical, s: &Slot) -> Vec<FieldElement> {
        let p = r.k.p();
        match s.kind {
            SlotKind::Full => (0..r.k.degree())
                .map(|i| r.k.element(p.pow(i)).unwrap())
                .collect(),
            SlotKind::TraceZero => (0..r.base.degree())
                .map(|i| r.k.mul(r.k.element(p.pow(i)).unwrap(), r.t))
                .collect(),
        }
    }

    /// Basis of the slot's values over `F_q`.
    fn fq_basis(&self, r: &Radical, s: &Slot) -> Vec<FieldElement> {
        match (s.kind, r.params.kind) {
            (SlotKind::Full, RadicalType::U) => vec![FieldElement::ONE, r.t],
            (SlotKind::Full, _) => vec![FieldElement::ONE],
            (SlotKind::TraceZero, _) => vec![r.t],
        }
    }

    /// Value vectors with a single nonzero slot, one per generator.
    fn unit_vectors(
        &self,
        per_slot: impl Fn(&Slot) -> Vec<FieldElement>,
    ) -> Vec<Vec<FieldElement>> {
        let mut out = vec![];
        for (k, s) in self.slots.iter().enumerate() {
            for g in per_slot(s) {
                let mut v = vec![FieldElement::ZERO; self.slots.len()];
                v[k] = g;
                out.push(v);
            }
        }
        out
    }
}

/// `R_u^{X,d}` realised over a concrete field.
#[derive(Clone)]
pub struct Radical {
    params: RadicalParams,
    /// `F_q`
    base: Field,
    /// `k`: `F_q` for C/D, `F_{q^2}` for U.
    k: Field,
    /// Generator of `F_{q^2}` over `F_q` (U only; 1 otherwise).
    t: FieldElement,
    t_inv: FieldElement,
    trace_zero: Vec<FieldElement>,
    h_slots: SlotSpace,
    a_slots: SlotSpace,
    dual_slots: SlotSpace,
    /// `support[i][j]`: ambient `(i, j)` can be nonzero in `Lie(A)`.
    support: Vec<bool>,
}

impl fmt::Debug for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_u{} over {:?}", self.params, self.k)
    }
}

impl Radical {
    /// The radical over `F_q`, building `F_{q^2}` for type U.
    pub fn new(params: RadicalParams, q: u64) -> Result<Radical> {
        Radical::over(params, &Field::with_order(q)?)
    }

    pub fn over(params: RadicalParams, base: &Field) -> Result<Radical> {
        let params = RadicalParams::new(params.kind, params.n, params.d)?;
        let (n, d) = (params.n, params.d);
        let m = n - d;
        let k = match params.kind {
            RadicalType::U => base.quadratic_extension()?,
            _ => base.clone(),
        };
        let (t, trace_zero) = match params.kind {
            RadicalType::U => (k.generator().expect("extension"), k.trace_zero_line()?),
            _ => (FieldElement::ONE, vec![]),
        };
        let t_inv = k.inv(t)?;
        let full = |i, j, second| Slot {
            kind: SlotKind::Full,
            i,
            j,
            second,
        };
        let grid = |rows: usize, cols: usize, second: bool| {
            (0..rows).flat_map(move |i| (0..cols).map(move |j| full(i, j, second)))
        };
        // upper triangle of a d x d block, with or without the diagonal
        let upper = |diag: Option<SlotKind>| {
            let mut v = vec![];
            for i in 0..d {
                for j in i..d {
                    if i == j {
                        if let Some(kind) = diag {
                            v.push(Slot {
                                kind,
                                i,
                                j,
                                second: false,
                            });
                        }
                    } else {
                        v.push(full(i, j, false));
                    }
                }
            }
            v
        };

        let h_slots = SlotSpace {
            slots: grid(d, m, false).collect(),
        };
        // A part: (B1 upper, B2) for C/D; (S = B2 J upper, B3) for U.
        // Dual:   (b1 upper, b3) for C/D; (S = b2 J upper, b3) for U.
        let (a_slots, dual_slots) = match params.kind {
            RadicalType::C => {
                let mut a = upper(Some(SlotKind::Full));
                a.extend(grid(d, m, true));
                (a.clone(), a)
            }
            RadicalType::D => {
                let mut a = upper(None);
                a.extend(grid(d, m, true));
                (a.clone(), a)
            }
            RadicalType::U => {
                let mut a = upper(Some(SlotKind::TraceZero));
                let mut dual = a.clone();
                a.extend(grid(m, d, true));
                dual.extend(grid(d, m, true));
                (a, dual)
            }
        };

        let mut r = Radical {
            params,
            base: base.clone(),
            k,
            t,
            t_inv,
            trace_zero,
            h_slots: SlotSpace {
                slots: h_slots.slots,
            },
            a_slots: SlotSpace { slots: a_slots },
            dual_slots: SlotSpace { slots: dual_slots },
            support: vec![],
        };
        // Supp(Lie(A)): union of supports over a spanning set
        let dim = 2 * n;
        let mut support = vec![false; dim * dim];
        for vals in r.a_slots.unit_vectors(|s| r.a_slots.fp_generators(&r, s)) {
            let v = r.v_from_values(&vals);
            for i in 0..n {
                for j in 0..n {
                    if !v.get(i, j).is_zero() {
                        support[i * dim + n + j] = true;
                    }
                }
            }
        }
        r.support = support;
        Ok(r)
    }

    pub fn params(&self) -> RadicalParams {
        self.params
    }

    /// `F_q`
    pub fn base_field(&self) -> &Field {
        &self.base
    }

    /// `k`
    pub fn field(&self) -> &Field {
        &self.k
    }

    pub fn q(&self) -> u64 {
        self.base.order() as u64
    }

    pub fn k_order(&self) -> u64 {
        self.k.order() as u64
    }

    pub fn h_order(&self) -> u128 {
        self.h_slots.len(self)
    }

    pub fn a_order(&self) -> u128 {
        self.a_slots.len(self)
    }

    pub fn dual_size(&self) -> u128 {
        self.dual_slots.len(self)
    }

    pub fn order(&self) -> u128 {
        self.h_order().saturating_mul(self.a_order())
    }

    fn zeros(&self, r: usize, c: usize) -> FfMatrix {
        FfMatrix::zeros(&self.k, r, c)
    }

    fn j(&self, size: usize) -> FfMatrix {
        FfMatrix::antidiagonal(&self.k, size)
    }

    fn conj(&self, m: &FfMatrix) -> FfMatrix {
        match self.params.kind {
            RadicalType::U => m.conjugate().expect("F_{q^2}"),
            _ => m.clone(),
        }
    }

    /// `-J_a conj(M^t) J_b` for `M: b x a`.
    fn twisted_adjoint(&self, m: &FfMatrix) -> FfMatrix {
        let mt = self.conj(&m.transpose());
        self.j(mt.rows())
            .mul(&mt)
            .and_then(|x| x.mul(&self.j(mt.cols())))
            .expect("conformal")
            .neg()
    }

    /// Assembles a `d x d` block from its upper-triangle slot values.
    fn square_from_upper(&self, vals: &[FieldElement], slots: &[Slot]) -> FfMatrix {
        let f = &self.k;
        let mut b = self.zeros(self.params.d, self.params.d);
        for (s, &v) in slots.iter().zip(vals).filter(|(s, _)| !s.second) {
            b.set(s.i, s.j, v);
            if s.i != s.j {
                let mirror = match self.params.kind {
                    RadicalType::C => v,
                    RadicalType::D => f.neg(v),
                    RadicalType::U => f.neg(f.frobenius(v).expect("F_{q^2}")),
                };
                b.set(s.j, s.i, mirror);
            }
        }
        b
    }

    fn second_block(
        &self,
        vals: &[FieldElement],
        slots: &[Slot],
        rows: usize,
        cols: usize,
    ) -> FfMatrix {
        let mut b = self.zeros(rows, cols);
        for (s, &v) in slots.iter().zip(vals).filter(|(s, _)| s.second) {
            b.set(s.i, s.j, v);
        }
        b
    }

    fn v_from_values(&self, vals: &[FieldElement]) -> FfMatrix {
        let (n, d) = (self.params.n, self.params.d);
        let m = n - d;
        let slots = &self.a_slots.slots;
        let mut v = self.zeros(n, n);
        match self.params.kind {
            RadicalType::C | RadicalType::D => {
                let b1 = self.square_from_upper(vals, slots);
                let b2 = self.second_block(vals, slots, d, m);
                let b3 = match self.params.kind {
                    RadicalType::C => b2.transpose(),
                    _ => b2.transpose().neg(),
                };
                v.set_block(0, 0, &b1);
                v.set_block(0, d, &b2);
                v.set_block(d, 0, &b3);
            }
            RadicalType::U => {
                let s = self.square_from_upper(vals, slots);
                let b2 = s.mul(&self.j(d)).expect("d x d");
                let b3 = self.second_block(vals, slots, m, d);
                let b1 = self.twisted_adjoint(&b3);
                v.set_block(0, 0, &b1);
                v.set_block(0, m, &b2);
                v.set_block(d, m, &b3);
            }
        }
        v
    }

    fn values_from_v(&self, v: &FfMatrix) -> Vec<FieldElement> {
        let d = self.params.d;
        let m = self.params.n - d;
        let s = match self.params.kind {
            RadicalType::U => v.block(0, m, d, d).mul(&self.j(d)).expect("d x d"),
            _ => v.block(0, 0, d, d),
        };
        self.a_slots
            .slots
            .iter()
            .map(|sl| match (sl.second, self.params.kind) {
                (false, _) => s.get(sl.i, sl.j),
                (true, RadicalType::U) => v.get(d + sl.i, m + sl.j),
                (true, _) => v.get(sl.i, d + sl.j),
            })
            .collect()
    }

    fn h_from_values(&self, vals: &[FieldElement]) -> FfMatrix {
        let (d, m) = (self.params.d, self.params.n - self.params.d);
        let mut h = self.zeros(d, m);
        for (s, &v) in self.h_slots.slots.iter().zip(vals) {
            h.set(s.i, s.j, v);
        }
        h
    }

    pub fn identity(&self) -> RadicalElement {
        let (n, d) = (self.params.n, self.params.d);
        RadicalElement {
            h: self.zeros(d, n - d),
            v: self.zeros(n, n),
        }
    }

    /// Pure `H` element with parameter `P` (`d x (n-d)` over `k`).
    pub fn h_element(&self, p: &FfMatrix) -> Result<RadicalElement> {
        let (n, d) = (self.params.n, self.params.d);
        if p.rows() != d || p.cols() != n - d || !p.field().same_as(&self.k) {
            return Err(Error::ShapeMismatch(format!(
                "H parameter must be {d}x{} over {:?}",
                n - d,
                self.k
            )));
        }
        Ok(RadicalElement {
            h: p.clone(),
            v: self.zeros(n, n),
        })
    }

    /// Pure `A` element; `v` must satisfy the type's constraints.
    pub fn a_element(&self, v: &FfMatrix) -> Result<RadicalElement> {
        let n = self.params.n;
        if v.rows() != n || v.cols() != n || !v.field().same_as(&self.k) {
            return Err(Error::ShapeMismatch(format!("V must be {n}x{n}")));
        }
        if self.v_from_values(&self.values_from_v(v)) != *v {
            return Err(Error::ShapeViolation(format!("V = {v:?} is not in Lie(A)")));
        }
        Ok(RadicalElement {
            h: self.zeros(self.params.d, n - self.params.d),
            v: v.clone(),
        })
    }

    fn l_block(&self, p: &FfMatrix) -> FfMatrix {
        let (n, d) = (self.params.n, self.params.d);
        let mut l = FfMatrix::identity(&self.k, n);
        l.set_block(0, d, p);
        l
    }

    fn n_block(&self, p: &FfMatrix) -> FfMatrix {
        let (n, d) = (self.params.n, self.params.d);
        let mut nb = FfMatrix::identity(&self.k, n);
        match self.params.kind {
            RadicalType::C | RadicalType::D => nb.set_block(d, 0, &p.transpose().neg()),
            RadicalType::U => {
                // P = -J_d conj(P2^t) J_{n-d}  <=>  P2 = -J_{n-d} conj(P^t) J_d
                nb.set_block(0, n - d, &self.twisted_adjoint(p));
            }
        }
        nb
    }

    pub fn to_ambient(&self, g: &RadicalElement) -> FfMatrix {
        let n = self.params.n;
        let l = self.l_block(&g.h);
        let nb = self.n_block(&g.h);
        let mut x = FfMatrix::identity(&self.k, 2 * n);
        x.set_block(0, 0, &l);
        x.set_block(0, n, &g.v.mul(&nb).expect("n x n"));
        x.set_block(n, n, &nb);
        x
    }

    /// Splits an ambient matrix back into `a(V) h(P)`, rejecting anything
    /// outside the radical.
    pub fn from_ambient(&self, x: &FfMatrix) -> Result<RadicalElement> {
        let (n, d) = (self.params.n, self.params.d);
        if x.rows() != 2 * n || x.cols() != 2 * n {
            return Err(Error::ShapeViolation(format!("expected {0}x{0}", 2 * n)));
        }
        let p = x.block(0, d, d, n - d);
        if x.block(0, 0, n, n) != self.l_block(&p) {
            return Err(Error::ShapeViolation("L block".into()));
        }
        if !x.block(n, 0, n, n).is_zero() {
            return Err(Error::ShapeViolation("lower-left block".into()));
        }
        if x.block(n, n, n, n) != self.n_block(&p) {
            return Err(Error::ShapeViolation("N block".into()));
        }
        let n_inv = self.n_block(&p.neg());
        let v = x.block(0, n, n, n).mul(&n_inv)?;
        if self.v_from_values(&self.values_from_v(&v)) != v {
            return Err(Error::ShapeViolation(format!("V = {v:?}")));
        }
        Ok(RadicalElement { h: p, v })
    }

    /// Product in the ambient algebra, re-decomposed.
    pub fn group_mul(&self, g: &RadicalElement, h: &RadicalElement) -> Result<RadicalElement> {
        let x = self.to_ambient(g).mul(&self.to_ambient(h))?;
        self.from_ambient(&x)
    }

    /// Index of an element in `0..order`.
    pub fn element_index(&self, g: &RadicalElement) -> u64 {
        let a = self.a_slots.encode(self, &self.values_from_v(&g.v));
        let h_vals: Vec<_> = self
            .h_slots
            .slots
            .iter()
            .map(|s| g.h.get(s.i, s.j))
            .collect();
        let h = self.h_slots.encode(self, &h_vals);
        a * self.h_order() as u64 + h
    }

    pub fn element_at(&self, idx: u64) -> RadicalElement {
        let ho = self.h_order() as u64;
        let v = self.v_from_values(&self.a_slots.decode(self, idx / ho));
        let h = self.h_from_values(&self.h_slots.decode(self, idx % ho));
        RadicalElement { h, v }
    }

    pub fn h_element_at(&self, idx: u64) -> RadicalElement {
        let n = self.params.n;
        RadicalElement {
            h: self.h_from_values(&self.h_slots.decode(self, idx)),
            v: self.zeros(n, n),
        }
    }

    /// Generators of `H` over `F_p`: one nonzero coordinate each.
    pub fn h_generators(&self) -> Vec<RadicalElement> {
        let n = self.params.n;
        self.h_slots
            .unit_vectors(|s| self.h_slots.fp_generators(self, s))
            .iter()
            .map(|vals| RadicalElement {
                h: self.h_from_values(vals),
                v: self.zeros(n, n),
            })
            .collect()
    }

    pub fn a_generators(&self) -> Vec<RadicalElement> {
        let (n, d) = (self.params.n, self.params.d);
        self.a_slots
            .unit_vectors(|s| self.a_slots.fp_generators(self, s))
            .iter()
            .map(|vals| RadicalElement {
                h: self.zeros(d, n - d),
                v: self.v_from_values(vals),
            })
            .collect()
    }

    fn dual_from_values(&self, vals: &[FieldElement]) -> DualElement {
        let (n, d) = (self.params.n, self.params.d);
        let m = n - d;
        let slots = &self.dual_slots.slots;
        match self.params.kind {
            RadicalType::C | RadicalType::D => {
                let b1 = self.square_from_upper(vals, slots);
                let b3 = self.second_block(vals, slots, d, m);
                let b2 = match self.params.kind {
                    RadicalType::C => b3.transpose(),
                    _ => b3.transpose().neg(),
                };
                DualElement { b1, b3, b2 }
            }
            RadicalType::U => {
                let s = self.square_from_upper(vals, slots);
                let b2 = s.mul(&self.j(d)).expect("d x d");
                let b3 = self.second_block(vals, slots, d, m);
                // B1 = -J_{n-d} conj(B3^t) J_d
                let b1 = self.twisted_adjoint(&b3);
                DualElement { b1, b3, b2 }
            }
        }
    }

    fn dual_values(&self, a: &DualElement) -> Vec<FieldElement> {
        let d = self.params.d;
        let s = match self.params.kind {
            RadicalType::U => a.b2.mul(&self.j(d)).expect("d x d"),
            _ => a.b1.clone(),
        };
        self.dual_slots
            .slots
            .iter()
            .map(|sl| {
                if sl.second {
                    a.b3.get(sl.i, sl.j)
                } else {
                    s.get(sl.i, sl.j)
                }
            })
            .collect()
    }

    pub fn dual_at(&self, idx: u64) -> DualElement {
        self.dual_from_values(&self.dual_slots.decode(self, idx))
    }

    pub fn dual_index(&self, a: &DualElement) -> u64 {
        self.dual_slots.encode(self, &self.dual_values(a))
    }

    pub fn dual_zero(&self) -> DualElement {
        self.dual_at(0)
    }

    /// Builds a dual element from its free blocks (`b1, b3` for C/D,
    /// `b2, b3` for U), deriving the rest and checking the constraints.
    pub fn dual_element(&self, a: DualElement) -> Result<DualElement> {
        let rebuilt = self.dual_from_values(&self.dual_values(&a));
        if rebuilt != a {
            return Err(Error::ShapeViolation(format!("{a:?} is not in Lie(A)^t")));
        }
        Ok(a)
    }

    /// Ambient `2n x 2n` matrix of `P_X(B1, B3, B2, 0)`.
    pub fn dual_ambient(&self, a: &DualElement) -> FfMatrix {
        let (n, d) = (self.params.n, self.params.d);
        let mut x = self.zeros(2 * n, 2 * n);
        match self.params.kind {
            RadicalType::C | RadicalType::D => {
                x.set_block(n, 0, &a.b1);
                x.set_block(n, d, &a.b3);
                x.set_block(n + d, 0, &a.b2);
            }
            RadicalType::U => {
                x.set_block(n, 0, &a.b1);
                x.set_block(2 * n - d, 0, &a.b2);
                x.set_block(2 * n - d, d, &a.b3);
            }
        }
        x
    }

    fn dual_from_ambient(&self, x: &FfMatrix) -> Result<DualElement> {
        let (n, d) = (self.params.n, self.params.d);
        let a = match self.params.kind {
            RadicalType::C | RadicalType::D => DualElement {
                b1: x.block(n, 0, d, d),
                b3: x.block(n, d, d, n - d),
                b2: x.block(n + d, 0, n - d, d),
            },
            RadicalType::U => DualElement {
                b1: x.block(n, 0, n - d, d),
                b2: x.block(2 * n - d, 0, d, d),
                b3: x.block(2 * n - d, d, d, n - d),
            },
        };
        if self.dual_ambient(&a) != *x {
            return Err(Error::ShapeViolation("outside the dual support".into()));
        }
        self.dual_element(a)
    }

    /// `[m]_B`: keep `(i, j)` only when `(j, i)` is in `Supp(Lie(A))`.
    pub fn project(&self, m: &FfMatrix) -> FfMatrix {
        let dim = 2 * self.params.n;
        let mut out = self.zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                if self.support[j * dim + i] {
                    out.set(i, j, m.get(i, j));
                }
            }
        }
        out
    }

    /// `g . alpha = [g alpha g^{-1}]_B` for `g` in `H`.
    pub fn coadjoint_act(&self, g: &RadicalElement, alpha: &DualElement) -> Result<DualElement> {
        if !g.v.is_zero() {
            return Err(Error::ShapeViolation(
                "coadjoint action needs g in H".into(),
            ));
        }
        let x = self.to_ambient(g);
        self.coadjoint_by_ambient(&x, &x.inverse()?, alpha)
    }

    fn coadjoint_by_ambient(
        &self,
        g: &FfMatrix,
        g_inv: &FfMatrix,
        alpha: &DualElement,
    ) -> Result<DualElement> {
        let m = g.mul(&self.dual_ambient(alpha))?.mul(g_inv)?;
        self.dual_from_ambient(&self.project(&m))
    }

    /// Coefficient matrix of the linear stabiliser equations of `alpha`, in
    /// the `d(n-d)` entries of the `H` parameter taken column by column.
    ///
    /// The action moves only the `B3` block, by `-B1 P` (C, D) or `-B2 P`
    /// (U); column `v` is minus the increment for the unit parameter `E_v`,
    /// giving `blockdiag(B1, ..., B1)` or `blockdiag(B2, ..., B2)`.
    pub fn coefficient_matrix(&self, alpha: &DualElement) -> Result<FfMatrix> {
        let (d, m) = (self.params.d, self.params.n - self.params.d);
        let vars = d * m;
        let mut out = self.zeros(vars, vars);
        for col in 0..m {
            for row in 0..d {
                let mut p = self.zeros(d, m);
                p.set(row, col, FieldElement::ONE);
                let moved = self.coadjoint_act(&self.h_element(&p)?, alpha)?;
                let inc = alpha.b3.sub(&moved.b3)?;
                let v = col * d + row;
                for jc in 0..m {
                    for ir in 0..d {
                        out.set(jc * d + ir, v, inc.get(ir, jc));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The stabiliser rank `e` of `alpha`.
    pub fn degree_exponent(&self, alpha: &DualElement) -> Result<usize> {
        Ok(self.coefficient_matrix(alpha)?.rank())
    }

    fn h_ambient_generators(&self) -> Result<Vec<(FfMatrix, FfMatrix)>> {
        self.h_generators()
            .iter()
            .map(|g| {
                let x = self.to_ambient(g);
                let inv = x.inverse()?;
                Ok((x, inv))
            })
            .collect()
    }

    fn check_budget(&self, size: u128, budget: Budget) -> Result<()> {
        if size > budget.0 as u128 {
            return Err(Error::EnumerationTooLarge {
                size,
                budget: budget.0,
            });
        }
        Ok(())
    }

    fn log_k(&self, size: u64) -> Option<usize> {
        let k = self.k_order();
        let (mut s, mut e) = (size, 0);
        while s > 1 {
            if s % k != 0 {
                return None;
            }
            s /= k;
            e += 1;
        }
        (s == 1).then_some(e)
    }

    /// The `H`-orbit of `alpha`, by closure under the generators of `H`.
    pub fn orbit_of(&self, alpha: &DualElement, budget: Budget) -> Result<OrbitRecord> {
        self.check_budget(self.h_order(), budget)?;
        let gens = self.h_ambient_generators()?;
        let orbit = self.close_orbit(alpha, &gens, &mut |_| Ok(()))?;
        self.orbit_record(alpha, orbit.len() as u64)
    }

    fn orbit_record(&self, alpha: &DualElement, size: u64) -> Result<OrbitRecord> {
        let h = self.h_order() as u64;
        let e = self.log_k(size).ok_or_else(|| {
            Error::OrbitInvariant(format!("orbit size {size} is not a power of |k|"))
        })?;
        let rank = self.degree_exponent(alpha)?;
        if rank != e {
            return Err(Error::OrbitInvariant(format!(
                "orbit of {alpha:?} has size |k|^{e} but its coefficient matrix has rank {rank}"
            )));
        }
        if !h.is_multiple_of(size) {
            return Err(Error::OrbitInvariant(format!(
                "orbit size {size} does not divide |H| = {h}"
            )));
        }
        Ok(OrbitRecord {
            representative: alpha.clone(),
            orbit_size: size,
            stabilizer_order: h / size,
            e,
        })
    }

    fn close_orbit(
        &self,
        alpha: &DualElement,
        gens: &[(FfMatrix, FfMatrix)],
        visit: &mut dyn FnMut(u64) -> Result<()>,
    ) -> Result<Vec<u64>> {
        let start = self.dual_index(alpha);
        let mut seen = std::collections::HashSet::from([start]);
        let mut stack = vec![alpha.clone()];
        let mut members = vec![start];
        visit(start)?;
        while let Some(x) = stack.pop() {
            for (g, gi) in gens {
                let y = self.coadjoint_by_ambient(g, gi, &x)?;
                let idx = self.dual_index(&y);
                if seen.insert(idx) {
                    visit(idx)?;
                    members.push(idx);
                    stack.push(y);
                }
            }
        }
        Ok(members)
    }

    /// Table `act[h][alpha]` of dual indices for every `h` in `H`.
    pub fn action_table(&self, budget: Budget) -> Result<Vec<Vec<u32>>> {
        let size = self.h_order().saturating_mul(self.dual_size());
        self.check_budget(size, budget)?;
        let duals: Vec<_> = (0..self.dual_size() as u64)
            .map(|i| self.dual_at(i))
            .collect();
        (0..self.h_order() as u64)
            .map(|hi| {
                let g = self.to_ambient(&self.h_element_at(hi));
                let gi = g.inverse()?;
                duals
                    .iter()
                    .map(|a| Ok(self.dual_index(&self.coadjoint_by_ambient(&g, &gi, a)?) as u32))
                    .collect()
            })
            .collect()
    }
}

/// One row of an [`OrbitCensus`]: characters of degree `|k|^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCensusRow {
    pub e: usize,
    pub degree: u128,
    /// Number of coadjoint orbits of size `|k|^e`.
    pub orbits: u128,
    /// `|P~(e)|`: dual elements whose coefficient matrix has rank `e`.
    pub dual_elements: u128,
    /// Irreducible characters of degree `|k|^e`.
    pub characters: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub params: RadicalParams,
    pub q: u64,
    pub h_order: u128,
    pub dual_size: u128,
    pub rows: Vec<OrbitCensusRow>,
}

impl OrbitCensus {
    pub fn total_characters(&self) -> u128 {
        self.rows.iter().map(|r| r.characters).sum()
    }

    /// `sum characters * degree^2`, which must equal the group order.
    pub fn sum_of_squares(&self) -> u128 {
        self.rows
            .iter()
            .map(|r| r.characters * r.degree * r.degree)
            .sum()
    }
}

/// Character degree census from an explicit partition of the dual space into
/// coadjoint orbits: each orbit of size `s` contributes `|H|/s` characters of
/// degree `s`. The rank route (`|k|^{-2e} |P~(e)| |H|`) is computed alongside
/// and must agree, as must the rank of every orbit member.
pub fn orbit_census(params: RadicalParams, q: u64, budget: Budget) -> Result<OrbitCensus> {
    let r = Radical::new(params, q)?;
    r.check_budget(r.dual_size(), budget)?;
    r.check_budget(r.h_order(), budget)?;
    let h = r.h_order();
    let k = r.k_order() as u128;
    let n_dual = r.dual_size() as u64;
    let gens = r.h_ambient_generators()?;

    let mut rank_of = vec![usize::MAX; n_dual as usize];
    let mut dual_by_e: BTreeMap<usize, u128> = BTreeMap::new();
    for idx in 0..n_dual {
        let e = r.degree_exponent(&r.dual_at(idx))?;
        rank_of[idx as usize] = e;
        *dual_by_e.entry(e).or_default() += 1;
    }

    let mut visited = vec![false; n_dual as usize];
    let mut orbits_by_e: BTreeMap<usize, u128> = BTreeMap::new();
    let mut chars_by_e: BTreeMap<usize, u128> = BTreeMap::new();
    for idx in 0..n_dual {
        if visited[idx as usize] {
            continue;
        }
        let alpha = r.dual_at(idx);
        let members = r.close_orbit(&alpha, &gens, &mut |i| {
            visited[i as usize] = true;
            Ok(())
        })?;
        let size = members.len() as u64;
        let e = r.log_k(size).ok_or_else(|| {
            Error::OrbitInvariant(format!("orbit size {size} is not a power of |k|"))
        })?;
        if let Some(&bad) = members.iter().find(|&&m| rank_of[m as usize] != e) {
            return Err(Error::OrbitInvariant(format!(
                "dual element {bad} lies in an orbit of size |k|^{e} but has rank {}",
                rank_of[bad as usize]
            )));
        }
        if h % size as u128 != 0 {
            return Err(Error::OrbitInvariant(format!(
                "orbit size {size} does not divide |H|"
            )));
        }
        *orbits_by_e.entry(e).or_default() += 1;
        *chars_by_e.entry(e).or_default() += h / size as u128;
    }

    let mut rows = vec![];
    for (&e, &dual) in &dual_by_e {
        let ke = k.pow(e as u32);
        let orbits = orbits_by_e.get(&e).copied().unwrap_or(0);
        let characters = chars_by_e.get(&e).copied().unwrap_or(0);
        if dual % ke != 0 || orbits != dual / ke || characters * ke * ke != dual * h {
            return Err(Error::OrbitInvariant(format!(
                "e = {e}: {orbits} orbits, {characters} characters, |P~(e)| = {dual}"
            )));
        }
        rows.push(OrbitCensusRow {
            e,
            degree: ke,
            orbits,
            dual_elements: dual,
            characters,
        });
    }
    Ok(OrbitCensus {
        params: r.params,
        q,
        h_order: h,
        dual_size: r.dual_size(),
        rows,
    })
}

/// Number of conjugacy classes of the radical, by closing every element under
/// conjugation by a generating set of the whole group.
pub fn class_count_brute(params: RadicalParams, q: u64, budget: Budget) -> Result<u64> {
    let r = Radical::new(params, q)?;
    r.check_budget(r.order(), budget)?;
    let order = r.order() as u64;
    let gens: Vec<(FfMatrix, FfMatrix)> = r
        .a_generators()
        .into_iter()
        .chain(r.h_generators())
        .map(|g| {
            let x = r.to_ambient(&g);
            let inv = x.inverse()?;
            Ok((x, inv))
        })
        .collect::<Result<_>>()?;
    let mut visited = vec![false; order as usize];
    let mut classes = 0u64;
    for start in 0..order {
        if visited[start as usize] {
            continue;
        }
        classes += 1;
        visited[start as usize] = true;
        let mut stack = vec![r.to_ambient(&r.element_at(start))];
        while let Some(x) = stack.pop() {
            for (g, gi) in &gens {
                let y = g.mul(&x)?.mul(gi)?;
                let idx = r.element_index(&r.from_ambient(&y)?) as usize;
                if !visited[idx] {
                    visited[idx] = true;
                    stack.push(y);
                }
            }
        }
    }
    Ok(classes)
}

/// Lie algebra elements `[[0, V], [0, 0]]` spanning `Lie(A)` over `F_q`, and
/// dual elements spanning its transpose, for the pairing checks.
pub fn pairing_bases(r: &Radical) -> (Vec<FfMatrix>, Vec<FfMatrix>) {
    let n = r.params.n;
    let xs = r
        .a_slots
        .unit_vectors(|s| r.a_slots.fq_basis(r, s))
        .iter()
        .map(|vals| {
            let mut x = r.zeros(2 * n, 2 * n);
            x.set_block(0, n, &r.v_from_values(vals));
            x
        })
        .collect();
    let ys = r
        .dual_slots
        .unit_vectors(|s| r.dual_slots.fq_basis(r, s))
        .iter()
        .map(|vals| r.dual_ambient(&r.dual_from_values(vals)))
        .collect();
    (xs, ys)
}

/// Whether the trace pairing (C, D) or twisted trace pairing (U) between
/// `Lie(A)` and its transpose is perfect over `F_q`.
pub fn pairing_nondegeneracy_check(params: RadicalParams, q: u64) -> Result<bool> {
    let r = Radical::new(params, q)?;
    let (xs, ys) = pairing_bases(&r);
    if xs.len() != ys.len() || xs.len() != params.a_exponent() {
        return Ok(false);
    }
    let gram = pairing_gram(&xs, &ys, params.kind == RadicalType::U)?;
    Ok(gram.rank() == xs.len())
}
