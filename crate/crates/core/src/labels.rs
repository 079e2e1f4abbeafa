//! Identity names and their printed labels.
//!
//! Every equation number that appears in rendered output comes from
//! [`Identity::label`]; nothing else in the crate hard-codes one.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An identity (or structural property) a checker evaluates.
///
/// Indexed families count from 1 in the order the identities are usually
/// listed: `Novikov(1)` is left-symmetry of associators, `Novikov(2)` is
/// right-commutativity, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    Novikov(u8),
    NovikovRep(u8),
    PreNovikov(u8),
    OOperatorNovikov,
    FormSkew,
    FormNondegenerate,
    FormCocycle,
    MatchedPair(u8),
    Coalgebra(u8),
    Compatibility(u8),
    CoboundaryCondition(u8),
    CoboundaryResidual(u8),
    YangBaxter,
    PreNovikovRep(u8),
    OOperatorPreNovikov(u8),
    /// `flip(r) = r`.
    Symmetry,
    /// A block of a product on a direct sum differs from the expected table.
    BlockRestriction,
    /// A form differs from the expected matrix.
    FormMatch,
    /// Two products that must agree entrywise do not.
    TableMatch,
}

struct Family {
    key: &'static str,
    size: u8,
    labels: &'static [&'static str],
}

const FAMILIES: &[(fn(u8) -> Identity, Family)] = &[
    (Identity::Novikov, Family { key: "novikov", size: 2, labels: &["Eq (2.1)", "Eq (2.2)"] }),
    (
        Identity::NovikovRep,
        Family { key: "novikov_rep", size: 4, labels: &["Eq (2.3)", "Eq (2.4)", "Eq (2.5)", "Eq (2.6)"] },
    ),
    (
        Identity::PreNovikov,
        Family { key: "pre_novikov", size: 4, labels: &["Eq (2.8)", "Eq (2.9)", "Eq (2.10)", "Eq (2.11)"] },
    ),
    (
        Identity::MatchedPair,
        Family {
            key: "matched_pair",
            size: 8,
            labels: &["Eq (3.1)", "Eq (3.2)", "Eq (3.3)", "Eq (3.4)", "Eq (3.5)", "Eq (3.6)", "Eq (3.7)", "Eq (3.8)"],
        },
    ),
    (
        Identity::Coalgebra,
        Family { key: "coalgebra", size: 4, labels: &["Eq (3.11)", "Eq (3.12)", "Eq (3.13)", "Eq (3.14)"] },
    ),
    (
        Identity::Compatibility,
        Family {
            key: "compatibility",
            size: 8,
            labels: &[
                "Eq (3.16)", "Eq (3.17)", "Eq (3.18)", "Eq (3.19)", "Eq (3.20)", "Eq (3.21)", "Eq (3.22)", "Eq (3.23)",
            ],
        },
    ),
    (
        Identity::CoboundaryCondition,
        Family { key: "coboundary_condition", size: 4, labels: &["Eq (4.3)", "Eq (4.4)", "Eq (4.5)", "Eq (4.6)"] },
    ),
    (
        Identity::CoboundaryResidual,
        Family { key: "coboundary_residual", size: 4, labels: &["Eq (4.7)", "Eq (4.8)", "Eq (4.9)", "Eq (4.10)"] },
    ),
    (
        Identity::PreNovikovRep,
        Family {
            key: "pre_novikov_rep",
            size: 10,
            labels: &[
                "Eq (4.18)", "Eq (4.19)", "Eq (4.20)", "Eq (4.21)", "Eq (4.22)", "Eq (4.23)", "Eq (4.24)", "Eq (4.25)",
                "Eq (4.26)", "Eq (4.27)",
            ],
        },
    ),
    (
        Identity::OOperatorPreNovikov,
        Family { key: "o_operator_pre_novikov", size: 2, labels: &["Eq (4.29)", "Eq (4.30)"] },
    ),
];

const SINGLES: &[(Identity, &str, &str)] = &[
    (Identity::OOperatorNovikov, "o_operator_novikov", "Eq (2.13)"),
    (Identity::FormSkew, "form_skew", "skewsymmetry"),
    (Identity::FormNondegenerate, "form_nondegenerate", "nondegeneracy"),
    (Identity::FormCocycle, "form_cocycle", "Eq (2.14)"),
    (Identity::YangBaxter, "yang_baxter", "Eq (4.13)"),
    (Identity::Symmetry, "symmetry", "symmetry of r"),
    (Identity::BlockRestriction, "block_restriction", "block restriction"),
    (Identity::FormMatch, "form_match", "form table"),
    (Identity::TableMatch, "table_match", "product table"),
];

impl Identity {
    fn family(self) -> Option<(&'static Family, u8)> {
        let (ctor_key, idx) = match self {
            Identity::Novikov(i) => ("novikov", i),
            Identity::NovikovRep(i) => ("novikov_rep", i),
            Identity::PreNovikov(i) => ("pre_novikov", i),
            Identity::MatchedPair(i) => ("matched_pair", i),
            Identity::Coalgebra(i) => ("coalgebra", i),
            Identity::Compatibility(i) => ("compatibility", i),
            Identity::CoboundaryCondition(i) => ("coboundary_condition", i),
            Identity::CoboundaryResidual(i) => ("coboundary_residual", i),
            Identity::PreNovikovRep(i) => ("pre_novikov_rep", i),
            Identity::OOperatorPreNovikov(i) => ("o_operator_pre_novikov", i),
            _ => return None,
        };
        FAMILIES.iter().find(|(_, f)| f.key == ctor_key).map(|(_, f)| (f, idx))
    }

    /// Printed label, e.g. `Eq (2.2)`.
    pub fn label(self) -> &'static str {
        if let Some((fam, idx)) = self.family() {
            return fam.labels.get(idx as usize - 1).copied().unwrap_or("Eq (?)");
        }
        SINGLES.iter().find(|(id, _, _)| *id == self).map(|(_, _, l)| *l).unwrap_or("?")
    }

    /// Stable machine key, e.g. `novikov.2`.
    pub fn key(self) -> String {
        if let Some((fam, idx)) = self.family() {
            return format!("{}.{}", fam.key, idx);
        }
        SINGLES.iter().find(|(id, _, _)| *id == self).map(|(_, k, _)| k.to_string()).unwrap_or_default()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown identity key {0:?}")]
pub struct UnknownIdentity(String);

impl FromStr for Identity {
    type Err = UnknownIdentity;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some((id, _, _)) = SINGLES.iter().find(|(_, k, _)| *k == s) {
            return Ok(*id);
        }
        let bad = || UnknownIdentity(s.to_string());
        let (fam_key, idx) = s.rsplit_once('.').ok_or_else(bad)?;
        let idx: u8 = idx.parse().map_err(|_| bad())?;
        let (ctor, fam) = FAMILIES.iter().find(|(_, f)| f.key == fam_key).ok_or_else(bad)?;
        if idx == 0 || idx > fam.size {
            return Err(bad());
        }
        Ok(ctor(idx))
    }
}

impl Serialize for Identity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.key())
    }
}

impl<'de> Deserialize<'de> for Identity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all() -> Vec<Identity> {
        let mut out: Vec<Identity> = SINGLES.iter().map(|(id, _, _)| *id).collect();
        for (ctor, fam) in FAMILIES {
            out.extend((1..=fam.size).map(ctor));
        }
        out
    }

    #[test]
    fn keys_round_trip_and_are_unique() {
        let ids = all();
        let mut keys: Vec<String> = ids.iter().map(|i| i.key()).collect();
        for (id, key) in ids.iter().zip(&keys) {
            assert_eq!(key.parse::<Identity>().unwrap(), *id);
        }
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), ids.len());
    }

    #[test]
    fn family_sizes_match_label_lists() {
        for (_, fam) in FAMILIES {
            assert_eq!(fam.labels.len(), fam.size as usize, "{}", fam.key);
        }
        assert_eq!(Identity::Novikov(2).label(), "Eq (2.2)");
        assert_eq!(Identity::Compatibility(1).label(), "Eq (3.16)");
        assert!("novikov.3".parse::<Identity>().is_err());
    }
}
