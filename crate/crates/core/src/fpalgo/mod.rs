//! Coset enumeration, subgroup presentations and abelianization.

pub mod abelian;
pub mod coset;
pub mod schreier;

use thiserror::Error;

pub use abelian::{abelianization, AbelianInvariants};
pub use coset::{coset_enumerate, CosetTable, DEFAULT_MAX_COSETS};
pub use schreier::{reidemeister_schreier, tietze_short, SchreierPresentation, Simplified};

use crate::presentations::{Presentation, SubgroupSpec, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("coset enumeration exceeded the budget of {max} cosets")]
    BudgetExceeded { max: usize },
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("abelianization is infinite; the derived subgroup has infinite index")]
    InfiniteAbelianization,
    #[error("internal error: {0}")]
    Internal(String),
}

/// Coset table of the derived subgroup, obtained by enumerating the
/// trivial subgroup of the presentation with all generator commutators
/// added. Requires a finite abelianization of order at most `max_cosets`.
pub fn derived_subgroup_table(p: &Presentation, max_cosets: usize) -> Result<CosetTable, FpError> {
    let ab = abelianization(p);
    let order = ab.order().ok_or(FpError::InfiniteAbelianization)?;
    if order > BigInt::from(max_cosets) {
        return Err(FpError::BudgetExceeded { max: max_cosets });
    }
    let n = p.gen_count();
    let mut extra = Vec::new();
    for j in 0..n {
        for i in 0..j {
            extra.push(Word::commutator(&Word::gen(j), &Word::gen(i)));
        }
    }
    let aug = p.with_relators(extra);
    let t = coset_enumerate(&aug, &SubgroupSpec::trivial(aug.clone()), max_cosets)?;
    let mut table = t.clone();
    table.parent = p.clone();
    table.subgroup = SubgroupSpec { name: "[G,G]".into(), parent: p.clone(), words: Vec::new() };
    if !table.verify() {
        return Err(FpError::Internal("derived subgroup table does not satisfy the relators".into()));
    }
    Ok(table)
}

use num_bigint::BigInt;
