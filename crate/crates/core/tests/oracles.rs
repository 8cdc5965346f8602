use radchar::census::HermVariant;
use radchar::charcensus::{census_table, degree_exponents};
use radchar::orbitmethod::{class_count_brute, orbit_census, Radical};
use radchar::{Budget, RadicalParams, RadicalType};

fn params(kind: RadicalType, n: usize, d: usize) -> RadicalParams {
    RadicalParams::new(kind, n, d).unwrap()
}

/// `(e, characters)` from the closed form at `q`.
fn table_at(p: RadicalParams, q: u64) -> Vec<(usize, u128)> {
    census_table(p, HermVariant::Corrected)
        .unwrap()
        .rows
        .iter()
        .map(|r| (r.e, r.count.eval_u64(q).unwrap().try_into().unwrap()))
        .filter(|&(_, c)| c != 0)
        .collect()
}

fn orbits_at(p: RadicalParams, q: u64) -> Vec<(usize, u128)> {
    orbit_census(p, q, Budget::ENUMERATION)
        .unwrap()
        .rows
        .iter()
        .map(|r| (r.e, r.characters))
        .collect()
}

#[test]
fn closed_form_matches_orbits_small_instances() {
    let cases = [
        (RadicalType::C, 2, 1),
        (RadicalType::C, 2, 2),
        (RadicalType::C, 3, 1),
        (RadicalType::C, 3, 2),
        (RadicalType::C, 3, 3),
        (RadicalType::D, 2, 1),
        (RadicalType::D, 3, 1),
        (RadicalType::D, 3, 2),
        (RadicalType::D, 3, 3),
        (RadicalType::D, 4, 1),
        (RadicalType::D, 4, 2),
        (RadicalType::D, 4, 3),
        (RadicalType::U, 2, 1),
        (RadicalType::U, 3, 1),
    ];
    for (kind, n, d) in cases {
        let p = params(kind, n, d);
        assert_eq!(table_at(p, 3), orbits_at(p, 3), "{p}");
    }
}

#[test]
fn closed_form_matches_orbits_at_five_and_nine() {
    let p = params(RadicalType::C, 2, 1);
    assert_eq!(table_at(p, 5), orbits_at(p, 5));
    assert_eq!(table_at(p, 9), orbits_at(p, 9));
    let p = params(RadicalType::D, 3, 2);
    assert_eq!(table_at(p, 5), orbits_at(p, 5));
}

/// `d = n - 1` in type D is not abelian once `d >= 2`.
#[test]
fn type_d_corank_one_has_nonlinear_characters() {
    let p = params(RadicalType::D, 3, 2);
    let es: Vec<usize> = degree_exponents(p).iter().map(|x| x.1).collect();
    assert_eq!(es, vec![0, 2]);
    let orbits = orbits_at(p, 3);
    assert_eq!(orbits.len(), 2);
    assert_eq!(class_count_brute(p, 3, Budget::GROUP).unwrap(), 81 + 2);
}

#[test]
fn total_count_is_class_count() {
    let cases = [
        (RadicalType::C, 2, 1, 3),
        (RadicalType::C, 2, 1, 5),
        (RadicalType::C, 3, 1, 3),
        (RadicalType::D, 3, 2, 3),
        (RadicalType::D, 4, 1, 3),
        (RadicalType::U, 2, 1, 3),
    ];
    for (kind, n, d, q) in cases {
        let p = params(kind, n, d);
        let total: u128 = table_at(p, q).iter().map(|x| x.1).sum();
        let classes = class_count_brute(p, q, Budget(100_000)).unwrap();
        assert_eq!(total, classes as u128, "{p} q={q}");
    }
}

#[test]
fn orbit_sizes_partition_the_dual() {
    for (kind, n, d) in [(RadicalType::C, 3, 2), (RadicalType::U, 3, 1)] {
        let c = orbit_census(params(kind, n, d), 3, Budget::ENUMERATION).unwrap();
        let covered: u128 = c.rows.iter().map(|r| r.orbits * r.degree).sum();
        assert_eq!(covered, c.dual_size);
        assert_eq!(c.sum_of_squares(), c.h_order * c.dual_size);
    }
}

/// `alpha` is fixed by all of `H` exactly when the block `B1` (C, D) or `B2`
/// (U) vanishes.
#[test]
fn fixed_points_are_zero_block_duals() {
    for (kind, n, d) in [
        (RadicalType::C, 3, 1),
        (RadicalType::C, 3, 2),
        (RadicalType::D, 4, 2),
        (RadicalType::U, 2, 1),
    ] {
        let r = Radical::new(params(kind, n, d), 3).unwrap();
        let table = r.action_table(Budget::ENUMERATION).unwrap();
        for a in 0..r.dual_size() as usize {
            let fixed = table.iter().all(|row| row[a] as usize == a);
            let alpha = r.dual_at(a as u64);
            let block = if kind == RadicalType::U {
                &alpha.b2
            } else {
                &alpha.b1
            };
            assert_eq!(fixed, block.is_zero(), "{} {a}", r.params());
        }
    }
}
