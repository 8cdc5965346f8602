//! Dense matrices over the fields of [`crate::gf`].

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::Budget;

#[derive(Clone, PartialEq, Eq)]
pub struct FfMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryClass {
    Symmetric,
    SkewSymmetric,
    /// `M = -conj(M^t)` over a quadratic extension.
    SkewHermitian,
}

impl SymmetryClass {
    pub fn name(self) -> &'static str {
        match self {
            SymmetryClass::Symmetric => "sym",
            SymmetryClass::SkewSymmetric => "skew",
            SymmetryClass::SkewHermitian => "herm",
        }
    }
}

impl FfMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> FfMatrix {
        FfMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> FfMatrix {
        let mut m = FfMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    /// The antidiagonal permutation matrix `J_n`.
    pub fn antidiagonal(field: &Field, n: usize) -> FfMatrix {
        let mut m = FfMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, n - 1 - i, FieldElement::ONE);
        }
        m
    }

    /// Elementary matrix `E_{ij}`.
    pub fn unit(field: &Field, rows: usize, cols: usize, i: usize, j: usize) -> FfMatrix {
        let mut m = FfMatrix::zeros(field, rows, cols);
        m.set(i, j, FieldElement::ONE);
        m
    }

    pub fn from_elements(
        field: &Field,
        rows: usize,
        cols: usize,
        data: Vec<FieldElement>,
    ) -> Result<FfMatrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|&a| !field.contains(a)) {
            return Err(Error::ContextMismatch);
        }
        Ok(FfMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Matrix with integer entries reduced into the prime field.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> FfMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| field.from_int(x)))
            .collect();
        FfMatrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn transpose(&self) -> FfMatrix {
        let mut t = FfMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entrywise Frobenius `a -> a^q`.
    pub fn conjugate(&self) -> Result<FfMatrix> {
        let data = self
            .data
            .iter()
            .map(|&a| self.field.frobenius(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(FfMatrix {
            data,
            ..self.clone()
        })
    }

    /// `(M^*)_{ij} = M_{ji}^q`.
    pub fn conj_transpose(&self) -> Result<FfMatrix> {
        self.transpose().conjugate()
    }

    fn check_same_shape(&self, other: &FfMatrix) -> Result<()> {
        if !self.field.same_as(&other.field) {
            return Err(Error::ContextMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &FfMatrix) -> Result<FfMatrix> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(FfMatrix {
            data,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &FfMatrix) -> Result<FfMatrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FfMatrix {
        self.map(|f, a| f.neg(a))
    }

    pub fn scale(&self, c: FieldElement) -> FfMatrix {
        self.map(|f, a| f.mul(c, a))
    }

    fn map(&self, g: impl Fn(&Field, FieldElement) -> FieldElement) -> FfMatrix {
        let data = self.data.iter().map(|&a| g(&self.field, a)).collect();
        FfMatrix {
            data,
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &FfMatrix) -> Result<FfMatrix> {
        if !self.field.same_as(&other.field) {
            return Err(Error::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = FfMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).fold(FieldElement::ZERO, |acc, i| {
            self.field.add(acc, self.get(i, i))
        }))
    }

    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        rank_in_place(&self.field, &mut data, self.rows, self.cols)
    }

    pub fn inverse(&self) -> Result<FfMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let f = &self.field;
        let mut a = self.clone();
        let mut inv = FfMatrix::identity(f, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let s = f.inv(a.get(col, col))?;
            a.scale_row(col, s);
            inv.scale_row(col, s);
            for r in 0..n {
                let c = a.get(r, col);
                if r != col && !c.is_zero() {
                    let c = f.neg(c);
                    a.add_row_multiple(r, col, c);
                    inv.add_row_multiple(r, col, c);
                }
            }
        }
        Ok(inv)
    }

    /// Copy of the `h x w` block with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> FfMatrix {
        let mut b = FfMatrix::zeros(&self.field, h, w);
        for i in 0..h {
            for j in 0..w {
                b.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        b
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &FfMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    pub fn block_diagonal(field: &Field, blocks: &[FfMatrix]) -> FfMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = FfMatrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    pub fn is_in_class(&self, class: SymmetryClass) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = &self.field;
        let n = self.rows;
        let entry_ok = |a: FieldElement, b: FieldElement| -> Result<bool> {
            Ok(match class {
                SymmetryClass::Symmetric => a == b,
                SymmetryClass::SkewSymmetric => a == f.neg(b),
                SymmetryClass::SkewHermitian => a == f.neg(f.frobenius(b)?),
            })
        };
        for i in 0..n {
            for j in i..n {
                if !entry_ok(self.get(i, j), self.get(j, i))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: FieldElement) {
        for j in 0..self.cols {
            let v = self.field.mul(c, self.get(r, j));
            self.set(r, j, v);
        }
    }

    fn scale_col(&mut self, col: usize, c: FieldElement) {
        for i in 0..self.rows {
            let v = self.field.mul(self.get(i, col), c);
            self.set(i, col, v);
        }
    }

    /// `row[dst] += c * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: FieldElement) {
        for j in 0..self.cols {
            let v = self
                .field
                .add(self.get(dst, j), self.field.mul(c, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// `col[dst] += col[src] * c`
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: FieldElement) {
        for i in 0..self.rows {
            let v = self
                .field
                .add(self.get(i, dst), self.field.mul(self.get(i, src), c));
            self.set(i, dst, v);
        }
    }
}

impl fmt::Debug for FfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.field.format(self.get(i, j)))
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Row-reduces a row-major `rows x cols` buffer and returns its rank.
pub fn rank_in_place(field: &Field, m: &mut [FieldElement], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in col..cols {
                m.swap(p * cols + j, rank * cols + j);
            }
        }
        let inv = field.inv(m[rank * cols + col]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let lead = m[r * cols + col];
            if lead.is_zero() {
                continue;
            }
            let c = field.neg(field.mul(lead, inv));
            for j in col..cols {
                let v = m[rank * cols + j];
                if !v.is_zero() {
                    m[r * cols + j] = field.add(m[r * cols + j], field.mul(c, v));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Index-addressable enumeration of one symmetry class of `n x n` matrices.
///
/// Free entries are the upper triangle (with the diagonal, except for
/// skew-symmetric matrices) in row-major order; the matrix with index `k`
/// takes the mixed-radix digits of `k` as the indices of its free values,
/// last free entry fastest. Dependent entries are derived.
#[derive(Clone, Debug)]
pub struct ClassSpace {
    field: Field,
    n: usize,
    class: SymmetryClass,
    /// `(i, j, values)` per free entry.
    slots: Vec<(usize, usize, Vec<FieldElement>)>,
    len: u128,
}

impl ClassSpace {
    /// For `SkewHermitian`, `field` is `F_{q^2}` built over `F_q`.
    pub fn new(n: usize, class: SymmetryClass, field: &Field) -> Result<ClassSpace> {
        let all: Vec<FieldElement> = field.elements().collect();
        let mut slots = vec![];
        for i in 0..n {
            for j in i..n {
                let values = match (class, i == j) {
                    (SymmetryClass::SkewSymmetric, true) => continue,
                    (SymmetryClass::SkewHermitian, true) => field.trace_zero_line()?,
                    (SymmetryClass::SkewHermitian, false) => {
                        field.base().ok_or(Error::NoConjugation)?;
                        all.clone()
                    }
                    _ => all.clone(),
                };
                slots.push((i, j, values));
            }
        }
        let len = slots
            .iter()
            .fold(1u128, |acc, s| acc.saturating_mul(s.2.len() as u128));
        Ok(ClassSpace {
            field: field.clone(),
            n,
            class,
            slots,
            len,
        })
    }

    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn check_budget(&self, budget: Budget) -> Result<()> {
        if self.len > budget.0 as u128 {
            return Err(Error::EnumerationTooLarge {
                size: self.len,
                budget: budget.0,
            });
        }
        Ok(())
    }

    /// Writes matrix number `index` into a row-major buffer of length `n^2`.
    pub fn fill(&self, mut index: u128, out: &mut [FieldElement]) {
        let f = &self.field;
        let n = self.n;
        out.fill(FieldElement::ZERO);
        for (i, j, values) in self.slots.iter().rev() {
            let r = values.len() as u128;
            let v = values[(index % r) as usize];
            index /= r;
            out[i * n + j] = v;
            if i != j {
                out[j * n + i] = match self.class {
                    SymmetryClass::Symmetric => v,
                    SymmetryClass::SkewSymmetric => f.neg(v),
                    SymmetryClass::SkewHermitian => f.neg(f.conj(v)),
                };
            }
        }
    }

    pub fn matrix(&self, index: u128) -> FfMatrix {
        let mut data = vec![FieldElement::ZERO; self.n * self.n];
        self.fill(index, &mut data);
        FfMatrix {
            field: self.field.clone(),
            rows: self.n,
            cols: self.n,
            data,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = FfMatrix> + '_ {
        (0..self.len).map(move |k| self.matrix(k))
    }
}

/// Every matrix of the class exactly once, in the order of [`ClassSpace`].
pub fn enumerate_class(
    n: usize,
    class: SymmetryClass,
    field: &Field,
    budget: Budget,
) -> Result<impl Iterator<Item = FfMatrix>> {
    let space = ClassSpace::new(n, class, field)?;
    space.check_budget(budget)?;
    Ok((0..space.len).map(move |k| space.matrix(k)))
}

/// `tr(X Y)`.
pub fn trace_pairing(x: &FfMatrix, y: &FfMatrix) -> Result<FieldElement> {
    if x.cols != y.rows || x.rows != y.cols {
        return Err(Error::ShapeMismatch(format!(
            "tr(XY) undefined for {}x{} and {}x{}",
            x.rows, x.cols, y.rows, y.cols
        )));
    }
    if !x.field.same_as(&y.field) {
        return Err(Error::ContextMismatch);
    }
    let f = &x.field;
    let mut acc = FieldElement::ZERO;
    for i in 0..x.rows {
        for k in 0..x.cols {
            acc = f.add(acc, f.mul(x.get(i, k), y.get(k, i)));
        }
    }
    Ok(acc)
}

/// `tr(X Y) + tr(X Y)^q`, valued in `F_q`.
pub fn twisted_trace_pairing(x: &FfMatrix, y: &FfMatrix) -> Result<FieldElement> {
    let t = trace_pairing(x, y)?;
    x.field.relative_trace(t)
}

/// Gram matrix `G[i][j] = <xs[i], ys[j]>` of the trace pairing, or of the
/// twisted pairing with values read in the base field `F_q`.
pub fn pairing_gram(xs: &[FfMatrix], ys: &[FfMatrix], twisted: bool) -> Result<FfMatrix> {
    let Some(first) = xs.first().or(ys.first()) else {
        return Err(Error::ShapeMismatch("empty basis".into()));
    };
    let target = if twisted {
        first.field.base().ok_or(Error::NoConjugation)?.clone()
    } else {
        first.field.clone()
    };
    let mut g = FfMatrix::zeros(&target, xs.len(), ys.len());
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            let v = if twisted {
                twisted_trace_pairing(x, y)?
            } else {
                trace_pairing(x, y)?
            };
            g.set(i, j, v);
        }
    }
    Ok(g)
}

/// Congruence normal form of a skew-Hermitian matrix.
#[derive(Clone, Debug)]
pub struct SkewHermitianNormalForm {
    /// Invertible `A` with `A C A^* = alpha diag(I_r, 0)`.
    pub transform: FfMatrix,
    pub rank: usize,
    /// Always the adjoined generator `t` of `F_{q^2}`.
    pub alpha: FieldElement,
}

/// Finds invertible `A` with `A C A^* = t diag(I_r, 0)`.
///
/// `t^{-1} C` is Hermitian, so it is diagonalised by congruence one line at a
/// time; each nonzero diagonal entry `d` lies in `F_q^*` and is scaled to 1 by
/// a `c` with `c^{q+1} = d^{-1}`.
pub fn skew_hermitian_normal_form(c: &FfMatrix) -> Result<SkewHermitianNormalForm> {
    if !c.is_in_class(SymmetryClass::SkewHermitian)? {
        return Err(Error::NotSkewHermitian);
    }
    let f = c.field().clone();
    let t = f.generator().ok_or(Error::NoConjugation)?;
    let n = c.rows();
    let mut h = c.scale(f.inv(t)?);
    let mut a = FfMatrix::identity(&f, n);

    // E = I + lam E_{dst,src}; H <- E H E^*, A <- E A
    let add_multiple = |h: &mut FfMatrix, a: &mut FfMatrix, dst: usize, src: usize, lam| {
        h.add_row_multiple(dst, src, lam);
        h.add_col_multiple(dst, src, f.conj(lam));
        a.add_row_multiple(dst, src, lam);
    };

    let mut k = 0;
    while k < n {
        if let Some(i) = (k..n).find(|&i| !h.get(i, i).is_zero()) {
            h.swap_rows(k, i);
            h.swap_cols(k, i);
            a.swap_rows(k, i);
        } else {
            let off = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .find(|&(i, j)| i != j && !h.get(i, j).is_zero());
            let Some((i, j)) = off else { break };
            // with H_ii = H_jj = 0 the new diagonal entry is tr(lam H_ji) = 2
            let lam = f.inv(h.get(j, i))?;
            add_multiple(&mut h, &mut a, i, j, lam);
            h.swap_rows(k, i);
            h.swap_cols(k, i);
            a.swap_rows(k, i);
        }
        let d = h.get(k, k);
        for j in k + 1..n {
            let x = h.get(j, k);
            if !x.is_zero() {
                let mu = f.neg(f.div(x, d)?);
                add_multiple(&mut h, &mut a, j, k, mu);
            }
        }
        k += 1;
    }
    let rank = k;
    for i in 0..rank {
        let d = h.get(i, i);
        let target = f.inv(d)?;
        let s = f
            .elements()
            .find(|&x| f.norm(x).ok() == Some(target))
            .expect("norm map onto F_q^*");
        h.scale_row(i, s);
        h.scale_col(i, f.conj(s));
        a.scale_row(i, s);
    }
    Ok(SkewHermitianNormalForm {
        transform: a,
        rank,
        alpha: t,
    })
}
