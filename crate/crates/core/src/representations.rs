//! Representations of Novikov and pre-Novikov algebras.

use std::ops::Deref;

use crate::algebras::{associated_novikov, NovikovAlgebra, PreNovikovAlgebra, PreNovikovTables};
use crate::error::{ensure_dim, Error, Result};
use crate::labels::Identity;
use crate::report::{pairs, scan, BasisRef, Report, Residual, Violation};
use crate::scalar::Scalar;
use crate::structure::{Side, StructureConstants};
use crate::tensor::{dual_map, DualMode, Element, LinMap};

/// One `m×m` matrix per basis element of the algebra, extended linearly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMaps {
    module_dim: usize,
    maps: Vec<LinMap>,
}

impl RepMaps {
    pub fn new(maps: Vec<LinMap>) -> Result<Self> {
        let m = maps.first().map(LinMap::rows).ok_or_else(|| Error::Shape("empty map family".into()))?;
        if let Some((i, bad)) = maps.iter().enumerate().find(|(_, x)| x.rows() != m || x.cols() != m) {
            return Err(Error::Shape(format!("map {i} is {}x{}, expected {m}x{m}", bad.rows(), bad.cols())));
        }
        Ok(RepMaps { module_dim: m, maps })
    }

    pub fn zeros(algebra_dim: usize, module_dim: usize) -> Self {
        RepMaps { module_dim, maps: vec![LinMap::zeros(module_dim, module_dim); algebra_dim] }
    }

    /// Left (`Side::Left`) or right multiplication matrices of a product.
    pub fn from_product(op: &StructureConstants, side: Side) -> Self {
        let n = op.dim();
        RepMaps {
            module_dim: n,
            maps: (0..n)
                .map(|i| match side {
                    Side::Left => op.left_basis(i),
                    Side::Right => op.right_basis(i),
                })
                .collect(),
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.maps.len()
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn basis(&self, i: usize) -> &LinMap {
        &self.maps[i]
    }

    pub fn maps(&self) -> &[LinMap] {
        &self.maps
    }

    /// `ρ(a)` for a general element.
    pub fn at(&self, a: &Element) -> LinMap {
        assert_eq!(a.dim(), self.maps.len(), "representation argument dimension mismatch");
        let mut out = LinMap::zeros(self.module_dim, self.module_dim);
        for (i, x) in a.support() {
            out = &out + &self.maps[i].scale(x);
        }
        out
    }

    fn map(&self, f: impl Fn(&LinMap) -> LinMap) -> RepMaps {
        RepMaps { module_dim: self.module_dim, maps: self.maps.iter().map(f).collect() }
    }

    /// `ρ*` with `⟨ρ*(a) f, v⟩ = -⟨f, ρ(a) v⟩`.
    pub fn dual(&self) -> RepMaps {
        self.map(|m| dual_map(m, DualMode::Rep))
    }

    pub fn plus(&self, other: &RepMaps) -> RepMaps {
        assert_eq!(self.maps.len(), other.maps.len());
        RepMaps { module_dim: self.module_dim, maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a + b).collect() }
    }

    pub fn neg(&self) -> RepMaps {
        self.map(|m| -m)
    }

    pub fn scale(&self, s: &Scalar) -> RepMaps {
        self.map(|m| m.scale(s))
    }
}

/// `(V, l, r)` with no validity claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovRep {
    pub l: RepMaps,
    pub r: RepMaps,
}

impl NovikovRep {
    pub fn new(l: RepMaps, r: RepMaps) -> Result<Self> {
        ensure_dim("l and r algebra dimension", l.algebra_dim(), r.algebra_dim())?;
        ensure_dim("l and r module dimension", l.module_dim(), r.module_dim())?;
        Ok(NovikovRep { l, r })
    }

    pub fn zeros(algebra_dim: usize, module_dim: usize) -> Self {
        NovikovRep { l: RepMaps::zeros(algebra_dim, module_dim), r: RepMaps::zeros(algebra_dim, module_dim) }
    }

    pub fn algebra_dim(&self) -> usize {
        self.l.algebra_dim()
    }

    pub fn module_dim(&self) -> usize {
        self.l.module_dim()
    }

    /// Checks against `alg`, refusing with the failing report.
    pub fn verify(self, alg: &NovikovAlgebra) -> Result<VerifiedNovikovRep> {
        let report = check_novikov_rep(alg, &self)?;
        if report.passed() {
            Ok(VerifiedNovikovRep { alg: alg.clone(), rep: self })
        } else {
            Err(Error::refused("Novikov representation", report))
        }
    }
}

/// A representation checked against its algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifiedNovikovRep {
    alg: NovikovAlgebra,
    rep: NovikovRep,
}

impl VerifiedNovikovRep {
    pub fn algebra(&self) -> &NovikovAlgebra {
        &self.alg
    }

    pub fn rep(&self) -> &NovikovRep {
        &self.rep
    }
}

impl Deref for VerifiedNovikovRep {
    type Target = NovikovRep;
    fn deref(&self) -> &NovikovRep {
        &self.rep
    }
}

/// `(V, l▷, r▷, l◁, r◁)` with no validity claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreNovikovRep {
    pub l_rhd: RepMaps,
    pub r_rhd: RepMaps,
    pub l_lhd: RepMaps,
    pub r_lhd: RepMaps,
}

impl PreNovikovRep {
    pub fn new(l_rhd: RepMaps, r_rhd: RepMaps, l_lhd: RepMaps, r_lhd: RepMaps) -> Result<Self> {
        for m in [&r_rhd, &l_lhd, &r_lhd] {
            ensure_dim("representation algebra dimension", l_rhd.algebra_dim(), m.algebra_dim())?;
            ensure_dim("representation module dimension", l_rhd.module_dim(), m.module_dim())?;
        }
        Ok(PreNovikovRep { l_rhd, r_rhd, l_lhd, r_lhd })
    }

    pub fn zeros(algebra_dim: usize, module_dim: usize) -> Self {
        let z = RepMaps::zeros(algebra_dim, module_dim);
        PreNovikovRep { l_rhd: z.clone(), r_rhd: z.clone(), l_lhd: z.clone(), r_lhd: z }
    }

    pub fn algebra_dim(&self) -> usize {
        self.l_rhd.algebra_dim()
    }

    pub fn module_dim(&self) -> usize {
        self.l_rhd.module_dim()
    }

    pub fn verify(self, alg: &PreNovikovAlgebra) -> Result<VerifiedPreNovikovRep> {
        let report = check_pre_novikov_rep(alg, &self)?;
        if report.passed() {
            Ok(VerifiedPreNovikovRep { alg: alg.clone(), rep: self })
        } else {
            Err(Error::refused("pre-Novikov representation", report))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifiedPreNovikovRep {
    alg: PreNovikovAlgebra,
    rep: PreNovikovRep,
}

impl VerifiedPreNovikovRep {
    pub fn algebra(&self) -> &PreNovikovAlgebra {
        &self.alg
    }

    pub fn rep(&self) -> &PreNovikovRep {
        &self.rep
    }
}

impl Deref for VerifiedPreNovikovRep {
    type Target = PreNovikovRep;
    fn deref(&self) -> &PreNovikovRep {
        &self.rep
    }
}

fn abv(i: usize, j: usize, k: usize) -> Vec<BasisRef> {
    vec![BasisRef::a(i), BasisRef::a(j), BasisRef::module(k)]
}

/// One violation per module basis vector `v` with `M v ≠ 0`.
fn column_violations(id: Identity, i: usize, j: usize, m: &LinMap) -> Vec<Violation> {
    (0..m.cols())
        .map(|k| (k, m.column(k)))
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| Violation::new(id, abv(i, j, k), Residual::from(&c)))
        .collect()
}

fn rep_dims(alg_dim: usize, rep_alg_dim: usize) -> Result<()> {
    ensure_dim("representation indexed by algebra basis", alg_dim, rep_alg_dim)
}

/// The four representation identities on all `(a, b, v)` basis triples.
pub fn check_novikov_rep(op: &StructureConstants, rep: &NovikovRep) -> Result<Report> {
    rep_dims(op.dim(), rep.algebra_dim())?;
    let n = op.dim();
    let (l, r) = (&rep.l, &rep.r);
    let violations = scan(&pairs(n, n), |&(i, j)| {
        let ab = op.basis_product(i, j);
        let ba = op.basis_product(j, i);
        let (la, lb, ra, rb) = (l.basis(i), l.basis(j), r.basis(i), r.basis(j));
        // l(a∘b - b∘a) = l(a)l(b) - l(b)l(a)
        let q1 = &(&l.at(&(&ab - &ba)) - &(la * lb)) + &(lb * la);
        // l(a)r(b) - r(b)l(a) = r(a∘b) - r(b)r(a)
        let q2 = &(&(&(la * rb) - &(rb * la)) - &r.at(&ab)) + &(rb * ra);
        // l(a∘b) = r(b)l(a)
        let q3 = &l.at(&ab) - &(rb * la);
        // r(a)r(b) = r(b)r(a)
        let q4 = &(ra * rb) - &(rb * ra);
        [q1, q2, q3, q4]
            .iter()
            .enumerate()
            .flat_map(|(idx, q)| column_violations(Identity::NovikovRep(idx as u8 + 1), i, j, q))
            .collect()
    });
    Ok(Report::new("Novikov representation", (1..=4).map(Identity::NovikovRep).collect(), violations))
}

/// The ten pre-Novikov representation identities on all basis triples.
pub fn check_pre_novikov_rep(alg: &PreNovikovTables, rep: &PreNovikovRep) -> Result<Report> {
    rep_dims(alg.dim(), rep.algebra_dim())?;
    let n = alg.dim();
    let circ = alg.circ();
    let (lr, rr, ll, rl) = (&rep.l_rhd, &rep.r_rhd, &rep.l_lhd, &rep.r_lhd);
    let violations = scan(&pairs(n, n), |&(i, j)| {
        let a_circ_b = circ.basis_product(i, j);
        let b_circ_a = circ.basis_product(j, i);
        let a_rhd_b = alg.rhd.basis_product(i, j);
        let a_lhd_b = alg.lhd.basis_product(i, j);
        let b_lhd_a = alg.lhd.basis_product(j, i);
        let (lr_a, lr_b) = (lr.basis(i), lr.basis(j));
        let (ll_a, ll_b) = (ll.basis(i), ll.basis(j));
        let (rr_a, rr_b) = (rr.basis(i), rr.basis(j));
        let (rl_a, rl_b) = (rl.basis(i), rl.basis(j));
        let r_sum_a = rr_a + rl_a;
        let r_sum_b = rr_b + rl_b;
        let l_sum_a = lr_a + ll_a;

        let q = [
            // l▷(a)l▷(b) - l▷(b)l▷(a) = l▷(a∘b - b∘a)
            &(&(lr_a * lr_b) - &(lr_b * lr_a)) - &lr.at(&(&a_circ_b - &b_circ_a)),
            // l▷(a)l◁(b) - l◁(b)l▷(a) = l◁(a▷b - b◁a) + l◁(b)l◁(a)
            &(&(&(lr_a * ll_b) - &(ll_b * lr_a)) - &ll.at(&(&a_rhd_b - &b_lhd_a))) - &(ll_b * ll_a),
            // r▷(a▷b) = r▷(b)(r▷+r◁)(a) + l▷(a)r▷(b) - r▷(b)(l◁+l▷)(a)
            &(&(&rr.at(&a_rhd_b) - &(rr_b * &r_sum_a)) - &(lr_a * rr_b)) + &(rr_b * &l_sum_a),
            // r▷(a◁b) = r◁(b)r▷(a) + l◁(a)(r▷+r◁)(b) - r◁(b)l◁(a)
            &(&(&rr.at(&a_lhd_b) - &(rl_b * rr_a)) - &(ll_a * &r_sum_b)) + &(rl_b * ll_a),
            // l▷(a)r◁(b) - r◁(b)l▷(a) = r◁(a∘b) - r◁(b)r◁(a)
            &(&(&(lr_a * rl_b) - &(rl_b * lr_a)) - &rl.at(&a_circ_b)) + &(rl_b * rl_a),
            // r▷(a)(r▷+r◁)(b) = r◁(b)r▷(a)
            &(rr_a * &r_sum_b) - &(rl_b * rr_a),
            // l◁(a▷b) = r▷(b)(l▷+l◁)(a)
            &ll.at(&a_rhd_b) - &(rr_b * &l_sum_a),
            // l▷(a∘b) = r◁(b)l▷(a)
            &lr.at(&a_circ_b) - &(rl_b * lr_a),
            // r◁(a)r◁(b) = r◁(b)r◁(a)
            &(rl_a * rl_b) - &(rl_b * rl_a),
            // l◁(a◁b) = r◁(b)l◁(a)
            &ll.at(&a_lhd_b) - &(rl_b * ll_a),
        ];
        q.iter()
            .enumerate()
            .flat_map(|(idx, m)| column_violations(Identity::PreNovikovRep(idx as u8 + 1), i, j, m))
            .collect()
    });
    Ok(Report::new("pre-Novikov representation", (1..=10).map(Identity::PreNovikovRep).collect(), violations))
}

/// `(V*, l* + r*, -r*)`.
pub fn dual_novikov_rep_maps(rep: &NovikovRep) -> NovikovRep {
    let (ls, rs) = (rep.l.dual(), rep.r.dual());
    NovikovRep { l: ls.plus(&rs), r: rs.neg() }
}

/// Dual of a verified representation; the result is re-verified.
pub fn dual_novikov_rep(rep: &VerifiedNovikovRep) -> Result<VerifiedNovikovRep> {
    dual_novikov_rep_maps(rep)
        .verify(&rep.alg)
        .map_err(|e| Error::Internal(format!("dual of a verified Novikov representation fails: {e}")))
}

/// `(V*, l▷* + l◁* + r▷* + r◁*, r▷*, -(r▷* + l◁*), -(r▷* + r◁*))`.
pub fn dual_pre_novikov_rep_maps(rep: &PreNovikovRep) -> PreNovikovRep {
    let (lr, rr, ll, rl) = (rep.l_rhd.dual(), rep.r_rhd.dual(), rep.l_lhd.dual(), rep.r_lhd.dual());
    PreNovikovRep {
        l_rhd: lr.plus(&ll).plus(&rr).plus(&rl),
        r_rhd: rr.clone(),
        l_lhd: rr.plus(&ll).neg(),
        r_lhd: rr.plus(&rl).neg(),
    }
}

pub fn dual_pre_novikov_rep(rep: &VerifiedPreNovikovRep) -> Result<VerifiedPreNovikovRep> {
    dual_pre_novikov_rep_maps(rep)
        .verify(&rep.alg)
        .map_err(|e| Error::Internal(format!("dual of a verified pre-Novikov representation fails: {e}")))
}

/// `(A, L∘, R∘)`.
pub fn adjoint_novikov_rep(alg: &NovikovAlgebra) -> Result<VerifiedNovikovRep> {
    NovikovRep { l: RepMaps::from_product(alg, Side::Left), r: RepMaps::from_product(alg, Side::Right) }
        .verify(alg)
        .map_err(|e| Error::Internal(format!("adjoint representation fails: {e}")))
}

/// `(A, L▷, R◁)` over the associated Novikov algebra, and the pre-Novikov
/// adjoint `(A, L▷, R▷, L◁, R◁)`.
pub fn adjoint_reps(alg: &PreNovikovAlgebra) -> Result<(VerifiedNovikovRep, VerifiedPreNovikovRep)> {
    let nov = associated_novikov(alg)?;
    let nrep = NovikovRep { l: RepMaps::from_product(&alg.rhd, Side::Left), r: RepMaps::from_product(&alg.lhd, Side::Right) }
        .verify(&nov)
        .map_err(|e| Error::Internal(format!("(L▷, R◁) is not a representation: {e}")))?;
    let prep = PreNovikovRep {
        l_rhd: RepMaps::from_product(&alg.rhd, Side::Left),
        r_rhd: RepMaps::from_product(&alg.rhd, Side::Right),
        l_lhd: RepMaps::from_product(&alg.lhd, Side::Left),
        r_lhd: RepMaps::from_product(&alg.lhd, Side::Right),
    }
    .verify(alg)
    .map_err(|e| Error::Internal(format!("pre-Novikov adjoint is not a representation: {e}")))?;
    Ok((nrep, prep))
}

/// Products on `A ⊕ V`: `(a+u)◁(b+v) = a◁b + l◁(a)v + r◁(b)u`, likewise ▷.
/// No validity claim.
pub fn semidirect_tables(alg: &PreNovikovTables, rep: &PreNovikovRep) -> Result<PreNovikovTables> {
    rep_dims(alg.dim(), rep.algebra_dim())?;
    let n = alg.dim();
    let m = rep.module_dim();
    let build = |op: &StructureConstants, l: &RepMaps, r: &RepMaps| {
        let big = n + m;
        let mut out = StructureConstants::zeros(big);
        for p in 0..big {
            for q in 0..big {
                let (block, offset) = match (p < n, q < n) {
                    (true, true) => (op.basis_product(p, q), 0),
                    (true, false) => (l.basis(p).column(q - n), n),
                    (false, true) => (r.basis(q).column(p - n), n),
                    (false, false) => continue,
                };
                for (k, x) in block.support() {
                    out.set(p, q, offset + k, x.clone());
                }
            }
        }
        out
    };
    Ok(PreNovikovTables {
        lhd: build(&alg.lhd, &rep.l_lhd, &rep.r_lhd),
        rhd: build(&alg.rhd, &rep.l_rhd, &rep.r_rhd),
    })
}

/// The semidirect product of a verified representation; re-verified.
pub fn semidirect_pre_novikov(rep: &VerifiedPreNovikovRep) -> Result<PreNovikovAlgebra> {
    let t = semidirect_tables(&rep.alg, rep)?;
    PreNovikovAlgebra::from_tables(t)
        .map_err(|e| Error::Internal(format!("semidirect product of a verified representation fails: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::check_pre_novikov;

    fn ex1() -> PreNovikovAlgebra {
        let lhd = StructureConstants::from_products(2, &[((0, 0), &[1, 0]), ((0, 1), &[0, 1]), ((1, 0), &[0, 1])]);
        PreNovikovAlgebra::new(lhd, StructureConstants::zeros(2)).unwrap()
    }

    #[test]
    fn novikov_rep_examples() {
        let alg = ex1();
        let nov = associated_novikov(&alg).unwrap();
        let adj = adjoint_novikov_rep(&nov).unwrap();
        assert!(NovikovRep::zeros(2, 3).verify(&nov).is_ok());
        // ∘ is commutative here, so swapping l and r changes nothing
        let swapped = NovikovRep { l: adj.r.clone(), r: adj.l.clone() };
        assert_eq!(&swapped, adj.rep());
        // doubling r breaks l(a∘b) = r(b)l(a) at a = b = e1: I vs 2I
        let doubled = NovikovRep { l: adj.l.clone(), r: adj.r.scale(&Scalar::from_int(2)) };
        let rep = check_novikov_rep(&nov, &doubled).unwrap();
        assert!(rep.witnesses(Identity::NovikovRep(3)).contains(&vec![BasisRef::a(0), BasisRef::a(0), BasisRef::module(0)]));
    }

    #[test]
    fn dual_of_adjoint() {
        let nov = associated_novikov(&ex1()).unwrap();
        let adj = adjoint_novikov_rep(&nov).unwrap();
        let d = dual_novikov_rep(&adj).unwrap();
        let i2 = LinMap::identity(2);
        assert_eq!(*d.l.basis(0), i2.scale(&Scalar::from_int(-2)));
        assert_eq!(*d.r.basis(0), i2);
        let back = dual_novikov_rep(&d).unwrap();
        assert_eq!(back.rep(), adj.rep());
    }

    #[test]
    fn pre_rep_examples() {
        let alg = ex1();
        let (nrep, prep) = adjoint_reps(&alg).unwrap();
        assert!(nrep.l.maps().iter().all(LinMap::is_zero));
        assert_eq!(*nrep.r.basis(0), LinMap::identity(2));
        let mut bad = prep.rep().clone();
        bad.r_lhd = bad.r_lhd.neg();
        let rep = check_pre_novikov_rep(&alg, &bad).unwrap();
        assert!(rep.failed_identities().contains(&Identity::PreNovikovRep(10)));
        let d = dual_pre_novikov_rep(&prep).unwrap();
        assert_eq!(*d.l_rhd.basis(0), LinMap::identity(2).scale(&Scalar::from_int(-2)));
        assert_eq!(dual_pre_novikov_rep(&d).unwrap().rep(), prep.rep());
    }

    #[test]
    fn semidirect_with_zero_rep_and_perturbation() {
        let alg = ex1();
        let zero = PreNovikovRep::zeros(2, 2).verify(&alg).unwrap();
        let sd = semidirect_pre_novikov(&zero).unwrap();
        for p in 0..4 {
            for q in 0..4 {
                if p >= 2 || q >= 2 {
                    assert!(sd.lhd.basis_product(p, q).is_zero() && sd.rhd.basis_product(p, q).is_zero());
                }
            }
        }
        let (_, prep) = adjoint_reps(&alg).unwrap();
        let dual = dual_pre_novikov_rep(&prep).unwrap();
        let mut bad = dual.rep().clone();
        let mut m = bad.r_lhd.basis(0).clone();
        m.set(0, 0, m.get(0, 0) + &Scalar::one());
        let mut maps = bad.r_lhd.maps().to_vec();
        maps[0] = m;
        bad.r_lhd = RepMaps::new(maps).unwrap();
        assert!(!check_pre_novikov_rep(&alg, &bad).unwrap().passed());
        let t = semidirect_tables(&alg, &bad).unwrap();
        assert!(!check_pre_novikov(&t.lhd, &t.rhd).unwrap().passed());
    }
}
