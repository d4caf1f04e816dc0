//! Simplification rules S1-S4 and branching rules B2.1-B4.1.
//!
//! Simplifications never lose optimality and are applied one at a time;
//! branching rules return alternatives that together cover an optimum of the
//! current instance, and every alternative deletes an endpoint of at least
//! one bisection edge.

mod branching;
mod simplify;

use std::fmt;

use serde::Serialize;

pub use branching::{match_branching, match_rule};
pub use simplify::{apply_s1, apply_s4, find_s3, find_s4, solve_small_s2, S3Match};

use crate::graph::NodeId;
use crate::state::Alternative;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RuleLabel {
    S1,
    S2,
    S3,
    S4,
    #[serde(rename = "B2.1")]
    B21,
    #[serde(rename = "B2.2")]
    B22,
    #[serde(rename = "B3.1")]
    B31,
    #[serde(rename = "B3.2")]
    B32,
    #[serde(rename = "B3.3")]
    B33,
    #[serde(rename = "B4.1")]
    B41,
}

impl RuleLabel {
    pub const BRANCHING: [RuleLabel; 6] =
        [RuleLabel::B21, RuleLabel::B22, RuleLabel::B31, RuleLabel::B32, RuleLabel::B33, RuleLabel::B41];

    pub const ALL: [RuleLabel; 10] = [
        RuleLabel::S1,
        RuleLabel::S2,
        RuleLabel::S3,
        RuleLabel::S4,
        RuleLabel::B21,
        RuleLabel::B22,
        RuleLabel::B31,
        RuleLabel::B32,
        RuleLabel::B33,
        RuleLabel::B41,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleLabel::S1 => "S1",
            RuleLabel::S2 => "S2",
            RuleLabel::S3 => "S3",
            RuleLabel::S4 => "S4",
            RuleLabel::B21 => "B2.1",
            RuleLabel::B22 => "B2.2",
            RuleLabel::B31 => "B3.1",
            RuleLabel::B32 => "B3.2",
            RuleLabel::B33 => "B3.3",
            RuleLabel::B41 => "B4.1",
        }
    }
}

impl fmt::Display for RuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A matched branching rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleMatch {
    pub rule: RuleLabel,
    /// Matched nodes in the order the rule names them.
    pub anchor: Vec<NodeId>,
    pub alternatives: Vec<Alternative>,
}
