use std::fmt;
use std::str::FromStr;

/// The linear invariants of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InvariantKind {
    Derivation,
    Centroid,
    QuasiCentroid,
    QuasiDerivation,
    GeneralizedDerivation,
}

impl InvariantKind {
    pub const ALL: [InvariantKind; 5] = [
        InvariantKind::Derivation,
        InvariantKind::Centroid,
        InvariantKind::QuasiCentroid,
        InvariantKind::QuasiDerivation,
        InvariantKind::GeneralizedDerivation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InvariantKind::Derivation => "derivation",
            InvariantKind::Centroid => "centroid",
            InvariantKind::QuasiCentroid => "quasi-centroid",
            InvariantKind::QuasiDerivation => "quasi-derivation",
            InvariantKind::GeneralizedDerivation => "generalized-derivation",
        }
    }

    /// Names of the unknown maps, in stacking order.
    pub fn slots(self) -> &'static [&'static str] {
        match self {
            InvariantKind::Derivation => &["d"],
            InvariantKind::Centroid => &["eta"],
            InvariantKind::QuasiCentroid => &["delta"],
            InvariantKind::QuasiDerivation => &["d", "d'"],
            InvariantKind::GeneralizedDerivation => &["d", "d'", "d''"],
        }
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InvariantKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        InvariantKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown invariant kind `{s}`"))
    }
}
