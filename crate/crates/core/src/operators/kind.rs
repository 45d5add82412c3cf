use std::fmt;
use std::str::FromStr;

use crate::invariants::InvariantKind;

/// Nonlinear operator identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OperatorKind {
    RotaBaxter,
    Nijenhuis,
    Averaging,
    Reynolds,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 4] =
        [OperatorKind::RotaBaxter, OperatorKind::Nijenhuis, OperatorKind::Averaging, OperatorKind::Reynolds];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::RotaBaxter => "rota-baxter",
            OperatorKind::Nijenhuis => "nijenhuis",
            OperatorKind::Averaging => "averaging",
            OperatorKind::Reynolds => "reynolds",
        }
    }

    /// Equation families per product.
    pub fn families(self) -> usize {
        match self {
            OperatorKind::Averaging => 2,
            _ => 1,
        }
    }
}

/// Anything a single candidate matrix can be checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyKind {
    Operator(OperatorKind),
    Automorphism,
    /// Single-slot linear kinds only.
    Linear(InvariantKind),
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Operator(k) => k.name(),
            FamilyKind::Automorphism => "automorphism",
            FamilyKind::Linear(k) => k.name(),
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown operator kind `{s}`"))
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "automorphism" {
            return Ok(FamilyKind::Automorphism);
        }
        if let Ok(k) = s.parse::<OperatorKind>() {
            return Ok(FamilyKind::Operator(k));
        }
        match s.parse::<InvariantKind>() {
            Ok(k) if k.slots().len() == 1 => Ok(FamilyKind::Linear(k)),
            Ok(_) => Err(format!("`{s}` needs several maps and cannot be checked on one matrix")),
            Err(_) => Err(format!("unknown kind `{s}`")),
        }
    }
}
