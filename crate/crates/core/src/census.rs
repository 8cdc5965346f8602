//! Number of symmetric, skew-symmetric and skew-Hermitian matrices of a given
//! rank over a finite field, as polynomials in `q`, with an enumeration-based
//! counterpart for each.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::falinalg::{rank_in_place, ClassSpace, SymmetryClass};
use crate::gf::{Field, FieldElement};
use crate::qpoly::QPoly;
use crate::Budget;

/// Which skew-Hermitian count to use.
///
/// `Printed` carries an extra factor `q - 1`; it breaks `sum_r U(n, r) = q^{n^2}`
/// and disagrees with enumeration already at `n = 1`. It is kept so the
/// discrepancy can be reported, never as a default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HermVariant {
    Printed,
    #[default]
    Corrected,
}

impl HermVariant {
    pub fn name(self) -> &'static str {
        match self {
            HermVariant::Printed => "printed",
            HermVariant::Corrected => "corrected",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankCensusQuery {
    pub class: SymmetryClass,
    pub n: usize,
    pub r: usize,
    pub variant: HermVariant,
}

impl RankCensusQuery {
    pub fn new(class: SymmetryClass, n: usize, r: usize) -> RankCensusQuery {
        RankCensusQuery {
            class,
            n,
            r,
            variant: HermVariant::Corrected,
        }
    }

    pub fn evaluate(&self) -> Result<QPoly> {
        rank_census(self.class, self.n, self.r, self.variant)
    }
}

fn prod(it: impl Iterator<Item = QPoly>) -> QPoly {
    it.fold(QPoly::one(), |acc, f| &acc * &f)
}

fn finalize(num: QPoly, den: QPoly) -> Result<QPoly> {
    let p = num.exact_div(&den)?;
    if !p.is_integral() {
        return Err(Error::NonIntegral);
    }
    Ok(p)
}

/// Symmetric `n x n` matrices of rank `r`, `r = 2s` or `2s + 1`:
/// `prod_{i=1}^{s} q^{2i}/(q^{2i}-1) * prod_{i=0}^{r-1} (q^{n-i}-1)`.
pub fn sym_rank_census(n: usize, r: usize) -> Result<QPoly> {
    if r > n {
        return Err(Error::RankOutOfRange { n, r });
    }
    let s = r / 2;
    let num = &QPoly::q_pow(s * (s + 1)) * &prod((0..r).map(|i| QPoly::q_pow_minus_one(n - i)));
    let den = prod((1..=s).map(|i| QPoly::q_pow_minus_one(2 * i)));
    finalize(num, den)
}

/// Skew-symmetric `n x n` matrices of rank `2s`:
/// `q^{s^2-s} prod_{i=0}^{2s-1} (q^{n-i}-1) / prod_{i=1}^{s} (q^{2i}-1)`.
pub fn skew_rank_census(n: usize, r: usize) -> Result<QPoly> {
    if r % 2 == 1 {
        return Err(Error::OddSkewRank);
    }
    if r > n {
        return Err(Error::RankOutOfRange { n, r });
    }
    let s = r / 2;
    let num = &QPoly::q_pow(s * s - s) * &prod((0..r).map(|i| QPoly::q_pow_minus_one(n - i)));
    let den = prod((1..=s).map(|i| QPoly::q_pow_minus_one(2 * i)));
    finalize(num, den)
}

/// Skew-Hermitian `n x n` matrices over `F_{q^2}` of rank `r`:
/// `q^{r(r-1)/2} prod_{i=n-r+1}^{n} (q^{2i}-1) / prod_{s=1}^{r} (q^s - (-1)^s)`,
/// times `q - 1` for [`HermVariant::Printed`].
pub fn skewherm_rank_census(n: usize, r: usize, variant: HermVariant) -> Result<QPoly> {
    if r > n {
        return Err(Error::RankOutOfRange { n, r });
    }
    let mut num = &QPoly::q_pow(r * (r.saturating_sub(1)) / 2)
        * &prod((n - r + 1..=n).map(|i| QPoly::q_pow_minus_one(2 * i)));
    if variant == HermVariant::Printed {
        num = &num * &QPoly::from_ints(&[-1, 1]);
    }
    let den = prod((1..=r).map(|s| QPoly::q_pow_plus(s, if s % 2 == 0 { -1 } else { 1 })));
    finalize(num, den)
}

pub fn rank_census(
    class: SymmetryClass,
    n: usize,
    r: usize,
    variant: HermVariant,
) -> Result<QPoly> {
    match class {
        SymmetryClass::Symmetric => sym_rank_census(n, r),
        SymmetryClass::SkewSymmetric => skew_rank_census(n, r),
        SymmetryClass::SkewHermitian => skewherm_rank_census(n, r, variant),
    }
}

/// Ranks with a nonzero count for the class.
pub fn admissible_ranks(class: SymmetryClass, n: usize) -> Vec<usize> {
    match class {
        SymmetryClass::SkewSymmetric => (0..=n).step_by(2).collect(),
        _ => (0..=n).collect(),
    }
}

/// `q^{n(n+1)/2}`, `q^{n(n-1)/2}` or `q^{n^2}`: the size of the class.
pub fn class_size_poly(class: SymmetryClass, n: usize) -> QPoly {
    QPoly::q_pow(match class {
        SymmetryClass::Symmetric => n * (n + 1) / 2,
        SymmetryClass::SkewSymmetric => n * n.saturating_sub(1) / 2,
        SymmetryClass::SkewHermitian => n * n,
    })
}

/// `sum_r census(n, r) == class size` as a polynomial identity.
pub fn completeness_holds(class: SymmetryClass, n: usize, variant: HermVariant) -> Result<bool> {
    let mut total = QPoly::zero();
    for r in admissible_ranks(class, n) {
        total = &total + &rank_census(class, n, r, variant)?;
    }
    Ok(total == class_size_poly(class, n))
}

/// Rank histogram of the whole class, by enumeration. For `SkewHermitian`,
/// `field` is `F_{q^2}`.
pub fn brute_rank_census(
    class: SymmetryClass,
    n: usize,
    field: &Field,
    budget: Budget,
) -> Result<BTreeMap<usize, u64>> {
    let space = ClassSpace::new(n, class, field)?;
    space.check_budget(budget)?;
    let len = space.len() as u64;
    let chunk = 4096u64;
    let hist = (0..len.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut h = vec![0u64; n + 1];
            let mut buf = vec![FieldElement::ZERO; n * n];
            for k in c * chunk..((c + 1) * chunk).min(len) {
                space.fill(k as u128, &mut buf);
                h[rank_in_place(field, &mut buf, n, n)] += 1;
            }
            h
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(hist
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect())
}

/// Field over which the class lives for a given `q`: `F_q`, or `F_{q^2}` for
/// skew-Hermitian matrices.
pub fn class_field(class: SymmetryClass, q: u64) -> Result<Field> {
    let base = Field::with_order(q)?;
    match class {
        SymmetryClass::SkewHermitian => base.quadratic_extension(),
        _ => Ok(base),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn symmetric_examples() {
        for n in 0..5 {
            assert_eq!(sym_rank_census(n, 0).unwrap(), QPoly::one());
        }
        assert_eq!(sym_rank_census(2, 1).unwrap(), p(&[-1, 0, 1]));
        assert_eq!(sym_rank_census(2, 2).unwrap(), p(&[0, 0, -1, 1]));
        assert_eq!(
            sym_rank_census(2, 2).unwrap().eval_u64(3).unwrap(),
            BigInt::from(18)
        );
        assert!(sym_rank_census(2, 3).is_err());
    }

    #[test]
    fn skew_examples() {
        assert_eq!(skew_rank_census(4, 0).unwrap(), QPoly::one());
        assert_eq!(skew_rank_census(2, 2).unwrap(), p(&[-1, 1]));
        assert_eq!(skew_rank_census(3, 2).unwrap(), p(&[-1, 0, 0, 1]));
        assert_eq!(
            skew_rank_census(3, 2).unwrap().eval_u64(3).unwrap(),
            BigInt::from(26)
        );
        assert_eq!(skew_rank_census(2, 1).unwrap_err(), Error::OddSkewRank);
    }

    #[test]
    fn skew_hermitian_examples() {
        let c = HermVariant::Corrected;
        assert_eq!(skewherm_rank_census(3, 0, c).unwrap(), QPoly::one());
        assert_eq!(
            skewherm_rank_census(1, 1, HermVariant::Printed).unwrap(),
            p(&[1, -2, 1])
        );
        assert_eq!(skewherm_rank_census(1, 1, c).unwrap(), p(&[-1, 1]));
        // (q - 1)(q^2 + 1)
        assert_eq!(skewherm_rank_census(2, 1, c).unwrap(), p(&[-1, 1, -1, 1]));
        let total: Vec<BigInt> = (0..=2)
            .map(|r| skewherm_rank_census(2, r, c).unwrap().eval_u64(3).unwrap())
            .collect();
        assert_eq!(total, vec![1.into(), 20.into(), 60.into()]);
        assert_eq!(
            skewherm_rank_census(1, 0, HermVariant::Printed).unwrap(),
            p(&[-1, 1])
        );
    }

    #[test]
    fn brute_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let b = Budget::ENUMERATION;
        let h = brute_rank_census(SymmetryClass::Symmetric, 2, &f3, b).unwrap();
        assert_eq!(h, BTreeMap::from([(0, 1), (1, 8), (2, 18)]));
        let h = brute_rank_census(SymmetryClass::SkewSymmetric, 3, &f3, b).unwrap();
        assert_eq!(h, BTreeMap::from([(0, 1), (2, 26)]));
        let f9 = class_field(SymmetryClass::SkewHermitian, 3).unwrap();
        let h = brute_rank_census(SymmetryClass::SkewHermitian, 1, &f9, b).unwrap();
        assert_eq!(h, BTreeMap::from([(0, 1), (1, 2)]));
        assert!(matches!(
            brute_rank_census(SymmetryClass::Symmetric, 3, &f3, Budget(10)),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn completeness_identities() {
        for n in 0..=8 {
            for class in [
                SymmetryClass::Symmetric,
                SymmetryClass::SkewSymmetric,
                SymmetryClass::SkewHermitian,
            ] {
                assert!(completeness_holds(class, n, HermVariant::Corrected).unwrap());
            }
            if n > 0 {
                assert!(
                    !completeness_holds(SymmetryClass::SkewHermitian, n, HermVariant::Printed)
                        .unwrap()
                );
            }
        }
    }

    #[test]
    fn positivity_in_q_minus_one() {
        for n in 0..=10 {
            for class in [
                SymmetryClass::Symmetric,
                SymmetryClass::SkewSymmetric,
                SymmetryClass::SkewHermitian,
            ] {
                for r in admissible_ranks(class, n) {
                    let e = rank_census(class, n, r, HermVariant::Corrected)
                        .unwrap()
                        .to_qminus1_basis()
                        .unwrap();
                    assert!(e.is_nonnegative(), "{class:?} n={n} r={r}");
                }
            }
        }
    }

    /// The congruence classes of `alpha diag(I_r, 0)` for the different
    /// nonzero trace-zero `alpha` are all the same set: every rank-`r`
    /// skew-Hermitian matrix.
    #[test]
    fn skew_hermitian_alpha_classes_coincide() {
        use crate::falinalg::FfMatrix;
        use std::collections::HashSet;

        let f = class_field(SymmetryClass::SkewHermitian, 3).unwrap();
        let n = 2;
        // GL_2(F_9) is generated by transvections and invertible diagonals
        let mut gens = vec![];
        for (i, j) in [(0, 1), (1, 0)] {
            for x in f.elements().filter(|x| !x.is_zero()) {
                let mut m = FfMatrix::identity(&f, n);
                m.set(i, j, x);
                gens.push(m);
            }
        }
        for x in f.elements().filter(|x| !x.is_zero()) {
            let mut m = FfMatrix::identity(&f, n);
            m.set(0, 0, x);
            gens.push(m);
        }
        let gens_star: Vec<_> = gens.iter().map(|m| m.conj_transpose().unwrap()).collect();
        for r in 1..=n {
            let mut classes: Vec<HashSet<Vec<FieldElement>>> = vec![];
            for alpha in f
                .trace_zero_line()
                .unwrap()
                .into_iter()
                .filter(|a| !a.is_zero())
            {
                let mut x = FfMatrix::zeros(&f, n, n);
                for i in 0..r {
                    x.set(i, i, alpha);
                }
                let mut seen = HashSet::from([x.entries().to_vec()]);
                let mut stack = vec![x];
                while let Some(m) = stack.pop() {
                    for (a, a_star) in gens.iter().zip(&gens_star) {
                        let y = a.mul(&m).unwrap().mul(a_star).unwrap();
                        if seen.insert(y.entries().to_vec()) {
                            stack.push(y);
                        }
                    }
                }
                classes.push(seen);
            }
            let want = skewherm_rank_census(n, r, HermVariant::Corrected)
                .unwrap()
                .eval_u64(3)
                .unwrap();
            for c in &classes {
                assert_eq!(BigInt::from(c.len()), want);
                assert_eq!(c, &classes[0]);
            }
        }
    }
}
