//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the verdicts are always printed.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use radchar::census::{
    brute_rank_census, class_field, completeness_holds, rank_census, HermVariant,
};
use radchar::charcensus::{census_table, qminus1_report, sum_of_squares_check};
use radchar::orbitmethod::{
    class_count_brute, orbit_census, pairing_nondegeneracy_check, radical_order, Radical,
};
use radchar::{Budget, RadicalParams, RadicalType, SymmetryClass};

type Outcome = Result<String, String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn p(kind: RadicalType, n: usize, d: usize) -> RadicalParams {
    RadicalParams::new(kind, n, d).unwrap()
}

fn all_params(max_n: usize) -> Vec<RadicalParams> {
    [RadicalType::C, RadicalType::D, RadicalType::U]
        .into_iter()
        .flat_map(|k| (2..=max_n).flat_map(move |n| RadicalParams::all(k, n)))
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closed_rank_histogram(class: SymmetryClass, n: usize, q: u64) -> BTreeMap<usize, u64> {
    (0..=n)
        .filter_map(|r| {
            let v = rank_census(class, n, r, HermVariant::Corrected)
                .ok()?
                .eval_u64(q)
                .ok()?;
            let v = u64::try_from(v).ok()?;
            (v != 0).then_some((r, v))
        })
        .collect()
}

fn rank_oracle() -> Outcome {
    let mut cases = vec![];
    for q in [3, 5] {
        for n in 1..=3 {
            cases.push((SymmetryClass::Symmetric, n, q));
        }
        for n in 1..=2 {
            cases.push((SymmetryClass::SkewHermitian, n, q));
        }
    }
    for n in 1..=4 {
        cases.push((SymmetryClass::SkewSymmetric, n, 3));
    }
    cases.push((SymmetryClass::SkewHermitian, 3, 3));
    for &(class, n, q) in &cases {
        let field = class_field(class, q).map_err(|e| e.to_string())?;
        let brute =
            brute_rank_census(class, n, &field, Budget::ENUMERATION).map_err(|e| e.to_string())?;
        let closed = closed_rank_histogram(class, n, q);
        ensure(brute == closed, || {
            format!(
                "{} n={n} q={q}: closed {closed:?} vs enumeration {brute:?}",
                class.name()
            )
        })?;
    }
    Ok(format!("{} histograms match", cases.len()))
}

fn completeness() -> Outcome {
    for n in 1..=8 {
        for class in [
            SymmetryClass::Symmetric,
            SymmetryClass::SkewSymmetric,
            SymmetryClass::SkewHermitian,
        ] {
            let ok =
                completeness_holds(class, n, HermVariant::Corrected).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{} n={n} fails completeness", class.name()))?;
        }
        let printed = completeness_holds(SymmetryClass::SkewHermitian, n, HermVariant::Printed)
            .map_err(|e| e.to_string())?;
        ensure(!printed, || {
            format!("printed skew-Hermitian count satisfies completeness at n={n}")
        })?;
    }
    Ok("n <= 8, printed variant fails as expected".into())
}

fn table_at(params: RadicalParams, q: u64) -> Result<Vec<(usize, u128)>, String> {
    let t = census_table(params, HermVariant::Corrected).map_err(|e| e.to_string())?;
    let mut v = vec![];
    for row in &t.rows {
        let c = row.count.eval_u64(q).map_err(|e| e.to_string())?;
        let c = u128::try_from(c).map_err(|e| e.to_string())?;
        if c != 0 {
            v.push((row.e, c));
        }
    }
    Ok(v)
}

fn orbits_at(params: RadicalParams, q: u64) -> Result<Vec<(usize, u128)>, String> {
    let c = orbit_census(params, q, Budget::ENUMERATION).map_err(|e| e.to_string())?;
    Ok(c.rows.iter().map(|r| (r.e, r.characters)).collect())
}

fn orbit_equivalence() -> Outcome {
    let cases = [
        (p(RadicalType::C, 2, 1), 3),
        (p(RadicalType::C, 3, 1), 3),
        (p(RadicalType::C, 3, 2), 3),
        (p(RadicalType::D, 4, 1), 3),
        (p(RadicalType::D, 4, 2), 3),
        (p(RadicalType::U, 2, 1), 3),
        (p(RadicalType::C, 2, 1), 5),
    ];
    for &(params, q) in &cases {
        let (closed, orbits) = (table_at(params, q)?, orbits_at(params, q)?);
        ensure(closed == orbits, || {
            format!("{params} q={q}: closed {closed:?} vs orbits {orbits:?}")
        })?;
    }
    Ok(format!("{} instances", cases.len()))
}

fn extraspecial() -> Outcome {
    let params = p(RadicalType::C, 2, 1);
    let orbits = orbits_at(params, 3)?;
    ensure(orbits == vec![(0, 9), (1, 2)], || {
        format!("orbit census {orbits:?}")
    })?;
    let closed = table_at(params, 3)?;
    ensure(closed == orbits, || format!("closed form {closed:?}"))?;
    let classes = class_count_brute(params, 3, Budget::GROUP).map_err(|e| e.to_string())?;
    ensure(classes == 11, || format!("{classes} conjugacy classes"))?;
    Ok("9 linear, 2 of degree 3, 11 classes".into())
}

fn global_identities() -> Outcome {
    for params in all_params(8) {
        ensure(sum_of_squares_check(params, HermVariant::Corrected), || {
            format!("{params}: sum of squares fails symbolically")
        })?;
    }
    // every instance whose whole group fits a 10^5 sweep
    let budget = Budget(100_000);
    let mut checked = 0;
    for q in [3u64, 5] {
        for params in all_params(4) {
            let order = radical_order(params)
                .eval_u64(q)
                .map_err(|e| e.to_string())?;
            if order > BigInt::from(budget.0) {
                continue;
            }
            let closed = table_at(params, q)?;
            let squares: u128 = closed
                .iter()
                .map(|&(e, c)| c * (q as u128).pow((2 * e * params.k_exponent()) as u32))
                .sum();
            ensure(BigInt::from(squares) == order, || {
                format!("{params} q={q}: sum of squares {squares}")
            })?;
            let total: u128 = closed.iter().map(|x| x.1).sum();
            let classes = class_count_brute(params, q, budget).map_err(|e| e.to_string())?;
            ensure(total == classes as u128, || {
                format!("{params} q={q}: {total} characters vs {classes} classes")
            })?;
            checked += 1;
        }
    }
    Ok(format!("symbolic n <= 8; {checked} brute instances"))
}

fn positivity() -> Outcome {
    let mut counts = 0;
    for params in all_params(10) {
        for row in qminus1_report(params, HermVariant::Corrected).map_err(|e| e.to_string())? {
            ensure(row.nonnegative, || {
                format!("{params} e={}: {:?}", row.e, row.coeffs)
            })?;
            counts += 1;
        }
    }
    Ok(format!("{counts} count polynomials"))
}

fn pairings() -> Outcome {
    let mut n_checked = 0;
    for q in [3, 5] {
        for params in all_params(4) {
            let ok = pairing_nondegeneracy_check(params, q).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{params} q={q}: degenerate"))?;
            n_checked += 1;
        }
    }
    Ok(format!("{n_checked} Gram matrices invertible"))
}

fn action_invariants() -> Outcome {
    let cases = [
        p(RadicalType::C, 3, 1),
        p(RadicalType::C, 3, 2),
        p(RadicalType::D, 4, 2),
        p(RadicalType::U, 2, 1),
    ];
    let mut evaluations = 0u64;
    for params in cases {
        let r = Radical::new(params, 3).map_err(|e| e.to_string())?;
        let table = r
            .action_table(Budget::ENUMERATION)
            .map_err(|e| e.to_string())?;
        let h = r.h_order() as u64;
        let duals = r.dual_size() as usize;
        // act(g h, a) == act(g, act(h, a))
        for gi in 0..h {
            let g = r.h_element_at(gi);
            for hi in 0..h {
                let gh = r
                    .group_mul(&g, &r.h_element_at(hi))
                    .map_err(|e| e.to_string())?;
                let ghi = r.element_index(&gh) as usize;
                ensure(gh.v.is_zero(), || format!("{params}: H not closed"))?;
                for a in 0..duals {
                    let lhs = table[ghi][a];
                    let rhs = table[gi as usize][table[hi as usize][a] as usize];
                    ensure(lhs == rhs, || {
                        format!("{params}: action law fails at g={gi} h={hi} a={a}")
                    })?;
                    evaluations += 1;
                }
            }
        }
        // fixed points are exactly the duals with a vanishing block
        for a in 0..duals {
            let fixed = table.iter().all(|row| row[a] as usize == a);
            let alpha = r.dual_at(a as u64);
            let block = if params.kind == RadicalType::U {
                &alpha.b2
            } else {
                &alpha.b1
            };
            ensure(fixed == block.is_zero(), || {
                format!("{params}: fixed-point mismatch at {a}")
            })?;
        }
        // orbit_census checks orbit size == |k|^rank for every dual element
        let oc = orbit_census(params, 3, Budget::ENUMERATION).map_err(|e| e.to_string())?;
        let covered: u128 = oc.rows.iter().map(|row| row.orbits * row.degree).sum();
        ensure(covered == oc.dual_size, || {
            format!("{params}: orbits cover {covered} of {}", oc.dual_size)
        })?;
    }
    Ok(format!("{evaluations} action-law evaluations"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 rank-census oracle equivalence", 60, rank_oracle),
        ("2 completeness identities", 1, completeness),
        ("3 orbit-method equivalence", 60, orbit_equivalence),
        ("4 extraspecial group of order 27", 5, extraspecial),
        ("5 global identities", 120, global_identities),
        ("6 (q-1)-positivity", 10, positivity),
        ("7 pairing nondegeneracy", 10, pairings),
        (
            "8 action law and orbit-rank invariants",
            120,
            action_invariants,
        ),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let over = took > Duration::from_secs(limit);
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {limit} s limit")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "{tag} criterion {name}: {detail} [{:.2} s, limit {limit} s]",
            took.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
