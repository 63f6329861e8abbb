//! Executable checkers for the infinite-product axioms, the Conway and
//! group identities and the greatest post-fixed point characterization.
//!
//! Every checker compares two sides of one law and returns a [`LawReport`].
//! Exact comparisons pass or fail; the suprema over infinitely many
//! sequences are searched over lassos and report `Unknown` when the search
//! falls short, never `Pass`. The suites in [`suite`] derive every case
//! from a seed recorded with each finding.

mod energy;
pub mod gen;
mod identities;
mod report;
pub mod suite;

use crate::matrix::{EnergyAlgebra, OmegaAlgebra};
use crate::scalar::Scalar;
use crate::wordmodel::LanguageAlgebra;

pub use energy::{check_ax0, check_ax1_ax2, check_ax3, check_ax4, check_bi_inductive, regroup, Regrouping};
pub use identities::{check_conway, check_group_identity, group_matrix, Conway, GroupTable};
pub use report::{Failure, LawReport, LawsError, Verdict};

/// An algebra the generic checkers can report on.
pub trait Render: OmegaAlgebra {
    fn name(&self) -> &'static str;
    fn show(&self, e: &Self::Elem) -> String;
    fn show_vector(&self, v: &Self::Vector) -> String;
}

impl<T: Scalar> Render for EnergyAlgebra<T> {
    fn name(&self) -> &'static str {
        "energy"
    }

    fn show(&self, e: &Self::Elem) -> String {
        e.to_string()
    }

    fn show_vector(&self, v: &Self::Vector) -> String {
        v.to_string()
    }
}

impl Render for LanguageAlgebra {
    fn name(&self) -> &'static str {
        "word"
    }

    fn show(&self, e: &Self::Elem) -> String {
        format!("{e:?}")
    }

    fn show_vector(&self, v: &Self::Vector) -> String {
        format!("{v:?}")
    }
}
