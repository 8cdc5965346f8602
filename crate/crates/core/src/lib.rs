//! Character degree censuses for the unipotent radicals of maximal standard
//! parabolic subgroups of `Sp_2n(q)`, `SO_2n(q)` and `U_2n(q^2)`.
//!
//! The closed forms live in [`census`] and [`charcensus`]; every one of them
//! has a brute-force counterpart ([`census::brute_rank_census`],
//! [`orbitmethod::orbit_census`], [`orbitmethod::class_count_brute`]) that
//! works directly with matrices over small finite fields.

pub mod error;
pub mod gf;

pub use error::{Error, Result};
pub use gf::{ArithOp, Field, FieldElement};

pub mod falinalg;

pub use falinalg::{FfMatrix, SymmetryClass};

/// Upper bound on the number of objects a brute-force routine may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Budget(pub u64);

impl Budget {
    /// Default for matrix-class and dual-space enumerations.
    pub const ENUMERATION: Budget = Budget(100_000_000);
    /// Default for whole-group sweeps such as conjugacy-class counting.
    pub const GROUP: Budget = Budget(10_000);
    /// No budget may be raised past this.
    pub const CEILING: u64 = 1_000_000_000;

    pub fn new(n: u64) -> Result<Budget> {
        if n > Budget::CEILING {
            return Err(Error::InvalidParams(format!(
                "budget {n} exceeds the ceiling {}",
                Budget::CEILING
            )));
        }
        Ok(Budget(n))
    }
}

pub mod qpoly;

pub use qpoly::{gaussian_binomial, QMinus1Expansion, QPoly};

pub mod census;

pub use census::HermVariant;

pub mod orbitmethod;

pub use orbitmethod::{
    class_count_brute, orbit_census, pairing_nondegeneracy_check, radical_order, Radical,
    RadicalParams, RadicalType,
};

pub mod charcensus;

pub use charcensus::{census_table, char_count_poly, DegreeCensus};

pub mod cli;
