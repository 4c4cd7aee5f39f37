//! Randomized verification of identities and implications between the
//! invariants.

mod campaign;
mod catalog;
mod check;
mod gen;
mod session;

pub use campaign::{
    campaign, run_trial, trial_instance, trial_seed, CampaignReport, StatementSummary, Verdict,
};
pub use catalog::{Shape, StatementId};
pub use check::{check_statement, Outcome, SkipReason};
pub use gen::{quotient_square, GenParams, Generator, Instance};
pub use session::{digest, instance_session, SessionWriter};
