//! Closed-form counts `N_{(X,d),e}` of irreducible characters of degree
//! `|k|^e` of `R_u^{X,d}`.
//!
//! With `m = n - d` the nonempty degrees come from the rank `r` of the
//! `d x d` block `B1` (C, D) or `B2` (U), with `e = m r`:
//!
//! * C: `q^{2dm - 2e} N(d, r)` (symmetric rank census)
//! * D: `q^{2dm - 2e} S(d, r)`, `r` even (skew-symmetric)
//! * U: `q^{4dm - 4e} U(d, r)` (skew-Hermitian), degree `q^{2e}`
//!
//! When `d = n` the group is abelian and everything sits at `e = 0`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::census::{rank_census, HermVariant};
use crate::error::Result;
use crate::falinalg::SymmetryClass;
use crate::orbitmethod::{radical_order, RadicalParams, RadicalType};
use crate::qpoly::QPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    /// Rank of the block that determines the degree.
    pub r: usize,
    pub e: usize,
    pub degree: QPoly,
    pub count: QPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCensus {
    pub params: RadicalParams,
    pub variant: HermVariant,
    pub rows: Vec<DegreeRow>,
    pub sum_of_squares_holds: bool,
    pub notes: Vec<String>,
}

impl DegreeCensus {
    pub fn row(&self, e: usize) -> Option<&DegreeRow> {
        self.rows.iter().find(|r| r.e == e)
    }

    /// `sum_e count(e)`: the number of conjugacy classes.
    pub fn total_count(&self) -> QPoly {
        self.rows
            .iter()
            .fold(QPoly::zero(), |acc, r| &acc + &r.count)
    }

    /// `sum_e count(e) degree(e)^2`.
    pub fn sum_of_squares(&self) -> QPoly {
        self.rows.iter().fold(QPoly::zero(), |acc, r| {
            &acc + &(&r.count * &r.degree.pow(2))
        })
    }
}

fn symmetry_class(kind: RadicalType) -> SymmetryClass {
    match kind {
        RadicalType::C => SymmetryClass::Symmetric,
        RadicalType::D => SymmetryClass::SkewSymmetric,
        RadicalType::U => SymmetryClass::SkewHermitian,
    }
}

/// Admissible `(r, e)` pairs, in increasing `e`.
pub fn degree_exponents(params: RadicalParams) -> Vec<(usize, usize)> {
    if params.h_is_trivial() {
        return vec![(0, 0)];
    }
    let m = params.n - params.d;
    let step = match params.kind {
        RadicalType::D => 2,
        _ => 1,
    };
    (0..=params.d).step_by(step).map(|r| (r, m * r)).collect()
}

/// `|k|^e` as a polynomial in `q`.
pub fn degree_poly(params: RadicalParams, e: usize) -> QPoly {
    QPoly::q_pow(params.k_exponent() * e)
}

/// `N_{(X,d),e}`; the zero polynomial when `e` is not an admissible exponent.
pub fn char_count_poly(params: RadicalParams, e: usize, variant: HermVariant) -> Result<QPoly> {
    let params = RadicalParams::new(params.kind, params.n, params.d)?;
    let Some(&(r, _)) = degree_exponents(params).iter().find(|(_, ee)| *ee == e) else {
        return Ok(QPoly::zero());
    };
    if params.h_is_trivial() {
        return Ok(radical_order(params));
    }
    let kx = params.k_exponent();
    let (d, m) = (params.d, params.n - params.d);
    let shift = QPoly::q_pow(2 * kx * (d * m - e));
    let census = rank_census(symmetry_class(params.kind), d, r, variant)?;
    Ok(&shift * &census)
}

pub fn census_table(params: RadicalParams, variant: HermVariant) -> Result<DegreeCensus> {
    let params = RadicalParams::new(params.kind, params.n, params.d)?;
    let rows = degree_exponents(params)
        .into_iter()
        .map(|(r, e)| {
            Ok(DegreeRow {
                r,
                e,
                degree: degree_poly(params, e),
                count: char_count_poly(params, e, variant)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut notes = params.warnings();
    if params.kind == RadicalType::U {
        notes.push("type U degrees are |k|^e = q^(2e)".into());
        if variant == HermVariant::Printed {
            notes.push("printed skew-Hermitian census carries an extra factor q-1".into());
        }
    }
    let mut table = DegreeCensus {
        params,
        variant,
        rows,
        sum_of_squares_holds: false,
        notes,
    };
    table.sum_of_squares_holds = table.sum_of_squares() == radical_order(params);
    Ok(table)
}

/// `sum_e N_e |k|^{2e} = |R_u|` as a polynomial identity.
pub fn sum_of_squares_check(params: RadicalParams, variant: HermVariant) -> bool {
    census_table(params, variant).is_ok_and(|t| t.sum_of_squares_holds)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QMinus1Row {
    pub e: usize,
    /// Coefficients of `(q-1)^k`, lowest first; `None` if the count is not
    /// integral.
    #[serde(serialize_with = "decimal_strings")]
    pub coeffs: Option<Vec<BigInt>>,
    pub nonnegative: bool,
}

fn decimal_strings<S: serde::Serializer>(
    v: &Option<Vec<BigInt>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strings: Option<Vec<String>> = v
        .as_ref()
        .map(|c| c.iter().map(|x| x.to_string()).collect());
    strings.serialize(s)
}

/// Expansion of every count in powers of `q - 1`, flagging negative or
/// non-integral coefficients.
pub fn qminus1_report(params: RadicalParams, variant: HermVariant) -> Result<Vec<QMinus1Row>> {
    let table = census_table(params, variant)?;
    Ok(table
        .rows
        .iter()
        .map(|row| match row.count.to_qminus1_basis() {
            Ok(x) => QMinus1Row {
                e: row.e,
                nonnegative: x.is_nonnegative(),
                coeffs: Some(x.coeffs),
            },
            Err(_) => QMinus1Row {
                e: row.e,
                coeffs: None,
                nonnegative: false,
            },
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(kind: RadicalType, n: usize, d: usize) -> RadicalParams {
        RadicalParams::new(kind, n, d).unwrap()
    }

    fn count(params: RadicalParams, e: usize) -> QPoly {
        char_count_poly(params, e, HermVariant::Corrected).unwrap()
    }

    #[test]
    fn count_examples() {
        let c21 = p(RadicalType::C, 2, 1);
        assert_eq!(count(c21, 0), QPoly::q_pow(2));
        assert_eq!(count(c21, 1), QPoly::from_ints(&[-1, 1]));
        assert_eq!(count(c21, 2), QPoly::zero());

        let d42 = p(RadicalType::D, 4, 2);
        assert_eq!(count(d42, 4), QPoly::from_ints(&[-1, 1]));
        assert_eq!(degree_poly(d42, 4), QPoly::q_pow(4));
        assert_eq!(count(d42, 2), QPoly::zero());

        let u21 = p(RadicalType::U, 2, 1);
        assert_eq!(count(u21, 1), QPoly::from_ints(&[-1, 1]));
        assert_eq!(degree_poly(u21, 1), QPoly::q_pow(2));

        assert_eq!(count(p(RadicalType::C, 2, 2), 0), QPoly::q_pow(3));
    }

    #[test]
    fn exponent_sets() {
        let es =
            |params| -> Vec<usize> { degree_exponents(params).into_iter().map(|x| x.1).collect() };
        assert_eq!(es(p(RadicalType::C, 5, 2)), vec![0, 3, 6]);
        assert_eq!(es(p(RadicalType::D, 5, 3)), vec![0, 4]);
        assert_eq!(es(p(RadicalType::C, 4, 4)), vec![0]);
        assert_eq!(es(p(RadicalType::D, 4, 4)), vec![0]);
        assert_eq!(es(p(RadicalType::D, 4, 1)), vec![0]);
        assert_eq!(es(p(RadicalType::U, 4, 3)), vec![0, 1, 2, 3]);
    }

    #[test]
    fn table_examples() {
        let t = census_table(p(RadicalType::C, 2, 1), HermVariant::Corrected).unwrap();
        let rows: Vec<_> = t
            .rows
            .iter()
            .map(|r| (r.r, r.e, r.degree.clone(), r.count.clone()))
            .collect();
        assert_eq!(
            rows,
            vec![
                (0, 0, QPoly::one(), QPoly::q_pow(2)),
                (1, 1, QPoly::q_pow(1), QPoly::from_ints(&[-1, 1])),
            ]
        );
        assert!(t.sum_of_squares_holds);

        let t = census_table(p(RadicalType::U, 2, 1), HermVariant::Corrected).unwrap();
        assert_eq!(t.rows[0].count, QPoly::q_pow(4));
        assert_eq!(t.rows[1].degree, QPoly::q_pow(2));

        let t = census_table(p(RadicalType::D, 4, 1), HermVariant::Corrected).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].count, QPoly::q_pow(6));
    }

    #[test]
    fn sum_of_squares_examples() {
        assert!(sum_of_squares_check(
            p(RadicalType::C, 2, 1),
            HermVariant::Corrected
        ));
        assert!(sum_of_squares_check(
            p(RadicalType::D, 4, 2),
            HermVariant::Corrected
        ));
        assert!(sum_of_squares_check(
            p(RadicalType::U, 2, 1),
            HermVariant::Corrected
        ));
        assert!(!sum_of_squares_check(
            p(RadicalType::U, 2, 1),
            HermVariant::Printed
        ));
    }

    #[test]
    fn sum_of_squares_up_to_eight() {
        for kind in [RadicalType::C, RadicalType::D, RadicalType::U] {
            for n in 2..=8 {
                for params in RadicalParams::all(kind, n) {
                    assert!(
                        sum_of_squares_check(params, HermVariant::Corrected),
                        "{params}"
                    );
                }
            }
        }
    }

    /// The D count written as `q^{2dm - 2e + s^2 - s} prod (q^{d-i} - 1) / prod (q^{2i} - 1)`.
    #[test]
    fn type_d_printed_form_agrees() {
        for n in 2..=8 {
            for params in RadicalParams::all(RadicalType::D, n) {
                if params.h_is_trivial() {
                    continue;
                }
                let (d, m) = (params.d, n - params.d);
                for (r, e) in degree_exponents(params) {
                    let s = r / 2;
                    let num = (0..2 * s)
                        .map(|i| QPoly::q_pow_minus_one(d - i))
                        .fold(QPoly::q_pow(2 * d * m - 2 * e + s * s - s), |a, f| &a * &f);
                    let den = QPoly::product(
                        &(1..=s)
                            .map(|i| QPoly::q_pow_minus_one(2 * i))
                            .collect::<Vec<_>>(),
                    );
                    assert_eq!(
                        num.exact_div(&den).unwrap(),
                        count(params, e),
                        "{params} e={e}"
                    );
                }
            }
        }
    }

    #[test]
    fn qminus1_examples() {
        let rep = qminus1_report(p(RadicalType::C, 2, 1), HermVariant::Corrected).unwrap();
        let as_ints = |v: &Option<Vec<BigInt>>| -> Vec<i64> {
            v.as_ref()
                .unwrap()
                .iter()
                .map(|c| c.try_into().unwrap())
                .collect()
        };
        assert_eq!(as_ints(&rep[0].coeffs), vec![1, 2, 1]);
        assert_eq!(as_ints(&rep[1].coeffs), vec![0, 1]);
        assert!(rep.iter().all(|r| r.nonnegative));

        let rep = qminus1_report(p(RadicalType::D, 4, 2), HermVariant::Corrected).unwrap();
        assert_eq!(rep[1].e, 4);
        assert_eq!(as_ints(&rep[1].coeffs), vec![0, 1]);
    }
}
