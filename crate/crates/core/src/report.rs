//! Structured verdicts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::labels::Identity;
use crate::scalar::Scalar;
use crate::tensor::{Element, Tensor2, Tensor3};

/// Which space a witness basis vector lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Space {
    /// The algebra, rendered `e1, e2, ...`.
    Algebra,
    /// The second algebra of a matched pair, or a dual space: `e1*, ...`.
    Dual,
    /// A representation space: `v1, ...`.
    Module,
}

/// A basis vector used as a witness, e.g. `e2*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisRef {
    pub space: Space,
    pub index: usize,
}

impl BasisRef {
    pub fn a(index: usize) -> Self {
        BasisRef { space: Space::Algebra, index }
    }
    pub fn dual(index: usize) -> Self {
        BasisRef { space: Space::Dual, index }
    }
    pub fn module(index: usize) -> Self {
        BasisRef { space: Space::Module, index }
    }
}

impl fmt::Display for BasisRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.space {
            Space::Algebra => write!(f, "e{}", self.index + 1),
            Space::Dual => write!(f, "e{}*", self.index + 1),
            Space::Module => write!(f, "v{}", self.index + 1),
        }
    }
}

impl FromStr for BasisRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("bad basis reference {s:?}");
        let (space, rest) = if let Some(rest) = s.strip_prefix('e') {
            match rest.strip_suffix('*') {
                Some(r) => (Space::Dual, r),
                None => (Space::Algebra, rest),
            }
        } else if let Some(rest) = s.strip_prefix('v') {
            (Space::Module, rest)
        } else {
            return Err(bad());
        };
        let one_based: usize = rest.parse().map_err(|_| bad())?;
        if one_based == 0 || rest.starts_with('0') {
            return Err(bad());
        }
        Ok(BasisRef { space, index: one_based - 1 })
    }
}

impl Serialize for BasisRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BasisRef {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One nonzero coordinate of a residual.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coord {
    pub index: Vec<usize>,
    pub value: Scalar,
}

/// Sparse residual: the nonzero coordinates of whatever the identity
/// evaluates to (a vector, a 2-tensor, a 3-tensor or a scalar).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Residual(pub Vec<Coord>);

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scalar(v: Scalar) -> Self {
        if v.is_zero() {
            Residual::default()
        } else {
            Residual(vec![Coord { index: vec![], value: v }])
        }
    }
}

impl From<&Element> for Residual {
    fn from(e: &Element) -> Self {
        Residual(
            e.coords()
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| Coord { index: vec![i], value: v.clone() })
                .collect(),
        )
    }
}

impl From<&Tensor2> for Residual {
    fn from(t: &Tensor2) -> Self {
        let mut out = Vec::new();
        for i in 0..t.rows() {
            for j in 0..t.cols() {
                let v = t.get(i, j);
                if !v.is_zero() {
                    out.push(Coord { index: vec![i, j], value: v.clone() });
                }
            }
        }
        Residual(out)
    }
}

impl From<&Tensor3> for Residual {
    fn from(t: &Tensor3) -> Self {
        let n = t.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = t.get(i, j, k);
                    if !v.is_zero() {
                        out.push(Coord { index: vec![i, j, k], value: v.clone() });
                    }
                }
            }
        }
        Residual(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Violation {
    pub identity: Identity,
    pub witness: Vec<BasisRef>,
    pub residual: Residual,
}

impl Violation {
    pub fn new(identity: Identity, witness: Vec<BasisRef>, residual: impl Into<Residual>) -> Self {
        Violation { identity, witness, residual: residual.into() }
    }
}

/// Outcome of a checker. A report passes iff it and all nested sections
/// have no violations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub title: String,
    /// Identities evaluated directly in this section.
    pub checked: Vec<Identity>,
    pub violations: Vec<Violation>,
    pub sections: Vec<Report>,
}

impl Report {
    pub fn new(title: impl Into<String>, checked: Vec<Identity>, mut violations: Vec<Violation>) -> Self {
        violations.sort();
        Report { title: title.into(), checked, violations, sections: Vec::new() }
    }

    /// A report that only groups other reports.
    pub fn group(title: impl Into<String>, sections: Vec<Report>) -> Self {
        Report { title: title.into(), checked: Vec::new(), violations: Vec::new(), sections }
    }

    pub fn with_section(mut self, section: Report) -> Self {
        self.sections.push(section);
        self
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.sections.iter().all(Report::passed)
    }

    /// Every violation in this report and its sections, depth first.
    pub fn all_violations(&self) -> Vec<&Violation> {
        let mut out: Vec<&Violation> = self.violations.iter().collect();
        for s in &self.sections {
            out.extend(s.all_violations());
        }
        out
    }

    /// Identities with at least one violation anywhere in the tree.
    pub fn failed_identities(&self) -> Vec<Identity> {
        let mut ids: Vec<Identity> = self.all_violations().iter().map(|v| v.identity).collect();
        ids.sort();
        ids.dedup();
        ids
    }

    /// Witness tuples violating `id`, anywhere in the tree.
    pub fn witnesses(&self, id: Identity) -> Vec<Vec<BasisRef>> {
        self.all_violations().iter().filter(|v| v.identity == id).map(|v| v.witness.clone()).collect()
    }

    /// Rewrites every witness, e.g. to move them into another space.
    pub fn relabel(mut self, f: &impl Fn(BasisRef) -> BasisRef) -> Report {
        for v in &mut self.violations {
            for w in &mut v.witness {
                *w = f(*w);
            }
        }
        self.sections = self.sections.into_iter().map(|s| s.relabel(f)).collect();
        self
    }

    pub fn find_section(&self, title: &str) -> Option<&Report> {
        if self.title == title {
            return Some(self);
        }
        self.sections.iter().find_map(|s| s.find_section(title))
    }
}

/// Evaluates `f` on every item in parallel and gathers the violations.
pub(crate) fn scan<T, F>(items: &[T], f: F) -> Vec<Violation>
where
    T: Sync,
    F: Fn(&T) -> Vec<Violation> + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().flat_map_iter(|t| f(t)).collect()
}

pub(crate) fn triples(a: usize, b: usize, c: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(a * b * c);
    for i in 0..a {
        for j in 0..b {
            for k in 0..c {
                out.push((i, j, k));
            }
        }
    }
    out
}

pub(crate) fn pairs(a: usize, b: usize) -> Vec<(usize, usize)> {
    (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_refs_round_trip() {
        for s in ["e1", "e12", "e3*", "v2"] {
            assert_eq!(s.parse::<BasisRef>().unwrap().to_string(), s);
        }
        for s in ["e0", "x1", "e", "e01", "v*"] {
            assert!(s.parse::<BasisRef>().is_err(), "{s}");
        }
    }

    #[test]
    fn nested_failure_propagates() {
        let bad = Report::new(
            "inner",
            vec![Identity::Novikov(2)],
            vec![Violation::new(Identity::Novikov(2), vec![BasisRef::a(0)], Residual::scalar(Scalar::one()))],
        );
        let outer = Report::group("outer", vec![Report::new("ok", vec![], vec![]), bad]);
        assert!(!outer.passed());
        assert_eq!(outer.failed_identities(), vec![Identity::Novikov(2)]);
        assert_eq!(outer.witnesses(Identity::Novikov(2)), vec![vec![BasisRef::a(0)]]);
    }
}
