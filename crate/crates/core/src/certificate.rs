//! Aggregated hypothesis checks for a single attaching word.

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::complex::{attach_disk, build_z};
use crate::geometry::{build_link_curves, pl_linking_number, realize_h, GeometryError};
use crate::vk::{obstruction_verdict, ObstructionError};
use crate::word::{milnor_invariants, unlink_criterion, LcsDepth, Word};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// `φ ∈ [F,F]`.
    Commutator,
    /// `φ ∈ [F,[F,F]]` and the link read from `φ` is link-homotopically trivial.
    F3,
}

impl std::str::FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "commutator" => Ok(Level::Commutator),
            "f3" => Ok(Level::F3),
            other => Err(format!("unknown level '{other}' (expected commutator or f3)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Field order is the serialized order; output is byte-stable for a given
/// word, level, seed and version.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub phi: String,
    pub level: Level,
    pub in_commutator: bool,
    pub lcs_depth: LcsDepth,
    pub lk_g1_g2: i64,
    pub lk_g1_g2_note: &'static str,
    pub lk_g3_g1: i64,
    pub lk_g3_g2: i64,
    /// Geometric linking numbers equal the exponent sums.
    pub linking_concordant: bool,
    /// Integer, or the string `"undefined"` when a pairwise linking number is nonzero.
    pub mu123: Value,
    pub unlink_criterion: bool,
    pub vk_verdict: Value,
    pub h_realized: bool,
    pub h_note: &'static str,
    pub warnings: Vec<String>,
    pub passed: bool,
    pub tool_version: &'static str,
    pub seed: u64,
}

impl Certificate {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

pub fn certify(phi: &Word, level: Level, seed: u64) -> Result<Certificate, CertifyError> {
    let inv = milnor_invariants(phi);
    let unlink = unlink_criterion(phi);
    let kphi = attach_disk(&build_z(), phi);
    let mut warnings = kphi.warnings.clone();

    let curves = build_link_curves(phi);
    let lk_g1_g2 = pl_linking_number(&curves.g1, &curves.g2)?;
    let lk_g3_g1 = pl_linking_number(&curves.g3, &curves.g1)?;
    let lk_g3_g2 = pl_linking_number(&curves.g3, &curves.g2)?;
    let linking_concordant = lk_g3_g1 == inv.exp_a && lk_g3_g2 == inv.exp_b && lk_g1_g2 == 0;
    if !linking_concordant {
        warnings.push("geometric linking numbers disagree with exponent sums".to_string());
    }

    let verdict = obstruction_verdict(&kphi.complex, seed)?;
    let vk_vanishes = verdict.vanishes_over_z && verdict.vanishes_mod_2;
    let realized = realize_h(phi)?;

    let in_commutator = inv.exp_a == 0 && inv.exp_b == 0;
    let nontrivial = !phi.is_identity();
    let word_ok = match level {
        Level::Commutator => in_commutator,
        Level::F3 => inv.lcs_depth.at_least(3) && unlink.pass,
    };
    let passed = nontrivial && word_ok && vk_vanishes && realized.report.ok && linking_concordant;

    Ok(Certificate {
        phi: phi.to_string(),
        level,
        in_commutator,
        lcs_depth: inv.lcs_depth,
        lk_g1_g2,
        lk_g1_g2_note: "disjoint balls",
        lk_g3_g1,
        lk_g3_g2,
        linking_concordant,
        mu123: inv.mu12.map_or_else(|| Value::from("undefined"), Value::from),
        unlink_criterion: unlink.pass,
        vk_verdict: verdict.summary(),
        h_realized: realized.report.ok,
        h_note: realized.note,
        warnings,
        passed,
        tool_version: TOOL_VERSION,
        seed,
    })
}
