//! Novikov and pre-Novikov algebras, derived products and quasi-Frobenius forms.

use std::ops::Deref;

use crate::error::{ensure_dim, Error, Result};
use crate::labels::Identity;
use crate::linalg;
use crate::report::{pairs, scan, triples, BasisRef, Report, Residual, Violation};
use crate::scalar::Scalar;
use crate::structure::{Side, StructureConstants};
use crate::tensor::{dual_map, DualMode, Element, LinMap};

/// A verified Novikov product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovAlgebra(StructureConstants);

impl NovikovAlgebra {
    /// Checks the Novikov identities, refusing with the failing report.
    pub fn new(op: StructureConstants) -> Result<Self> {
        let report = check_novikov(&op);
        if report.passed() {
            Ok(NovikovAlgebra(op))
        } else {
            Err(Error::refused("Novikov algebra", report))
        }
    }

    pub fn op(&self) -> &StructureConstants {
        &self.0
    }

    pub fn into_inner(self) -> StructureConstants {
        self.0
    }
}

impl Deref for NovikovAlgebra {
    type Target = StructureConstants;
    fn deref(&self) -> &StructureConstants {
        &self.0
    }
}

/// A pair of products `(◁, ▷)` with no validity claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreNovikovTables {
    pub lhd: StructureConstants,
    pub rhd: StructureConstants,
}

impl PreNovikovTables {
    pub fn new(lhd: StructureConstants, rhd: StructureConstants) -> Result<Self> {
        ensure_dim("◁ and ▷ tables", lhd.dim(), rhd.dim())?;
        Ok(PreNovikovTables { lhd, rhd })
    }

    pub fn zeros(n: usize) -> Self {
        PreNovikovTables { lhd: StructureConstants::zeros(n), rhd: StructureConstants::zeros(n) }
    }

    pub fn dim(&self) -> usize {
        self.lhd.dim()
    }

    /// `a ∘ b = a ◁ b + a ▷ b`.
    pub fn circ(&self) -> StructureConstants {
        self.lhd.plus(&self.rhd)
    }

    pub fn check(&self) -> Report {
        check_pre_novikov(&self.lhd, &self.rhd).expect("dims agree by construction")
    }
}

/// A verified pre-Novikov algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreNovikovAlgebra(PreNovikovTables);

impl PreNovikovAlgebra {
    pub fn new(lhd: StructureConstants, rhd: StructureConstants) -> Result<Self> {
        PreNovikovAlgebra::from_tables(PreNovikovTables::new(lhd, rhd)?)
    }

    pub fn from_tables(t: PreNovikovTables) -> Result<Self> {
        let report = t.check();
        if report.passed() {
            Ok(PreNovikovAlgebra(t))
        } else {
            Err(Error::refused("pre-Novikov algebra", report))
        }
    }

    pub fn zero(n: usize) -> Self {
        PreNovikovAlgebra(PreNovikovTables::zeros(n))
    }

    pub fn tables(&self) -> &PreNovikovTables {
        &self.0
    }

    pub fn into_tables(self) -> PreNovikovTables {
        self.0
    }
}

impl Deref for PreNovikovAlgebra {
    type Target = PreNovikovTables;
    fn deref(&self) -> &PreNovikovTables {
        &self.0
    }
}

/// `w[i][j] = ω(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatrix(LinMap);

impl FormMatrix {
    pub fn new(w: LinMap) -> Result<Self> {
        if !w.is_square() {
            return Err(Error::Shape(format!("form matrix is {}x{}", w.rows(), w.cols())));
        }
        Ok(FormMatrix(w))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &LinMap {
        &self.0
    }

    /// `ω(x, y) = xᵀ W y`.
    pub fn eval(&self, x: &Element, y: &Element) -> Scalar {
        let wy = &self.0 * y;
        x.coords().iter().zip(wy.coords()).map(|(a, b)| a * b).sum()
    }
}

fn a3(i: usize, j: usize, k: usize) -> Vec<BasisRef> {
    vec![BasisRef::a(i), BasisRef::a(j), BasisRef::a(k)]
}

fn violation_if(id: Identity, witness: impl FnOnce() -> Vec<BasisRef>, residual: &Element) -> Option<Violation> {
    (!residual.is_zero()).then(|| Violation::new(id, witness(), Residual::from(residual)))
}

/// Left-symmetry of associators and right-commutativity on all basis triples.
pub fn check_novikov(op: &StructureConstants) -> Report {
    let n = op.dim();
    let e = |i| Element::basis(n, i);
    let violations = scan(&triples(n, n, n), |&(i, j, k)| {
        let (a, b, c) = (e(i), e(j), e(k));
        let ab = op.basis_product(i, j);
        let ba = op.basis_product(j, i);
        let ac = op.basis_product(i, k);
        let bc = op.basis_product(j, k);
        let ab_c = op.mul(&ab, &c);
        // (a∘b)∘c - a∘(b∘c) - (b∘a)∘c + b∘(a∘c)
        let r1 = &(&(&ab_c - &op.mul(&a, &bc)) - &op.mul(&ba, &c)) + &op.mul(&b, &ac);
        // (a∘b)∘c - (a∘c)∘b
        let r2 = &ab_c - &op.mul(&ac, &b);
        [violation_if(Identity::Novikov(1), || a3(i, j, k), &r1), violation_if(Identity::Novikov(2), || a3(i, j, k), &r2)]
            .into_iter()
            .flatten()
            .collect()
    });
    Report::new("Novikov identities", vec![Identity::Novikov(1), Identity::Novikov(2)], violations)
}

/// The four pre-Novikov identities on all basis triples, with `∘ = ◁ + ▷`.
pub fn check_pre_novikov(lhd: &StructureConstants, rhd: &StructureConstants) -> Result<Report> {
    ensure_dim("◁ and ▷ tables", lhd.dim(), rhd.dim())?;
    let n = lhd.dim();
    let circ = lhd.plus(rhd);
    let e = |i| Element::basis(n, i);
    let violations = scan(&triples(n, n, n), |&(i, j, k)| {
        let (a, b, c) = (e(i), e(j), e(k));
        let l = |x: &Element, y: &Element| lhd.mul(x, y);
        let r = |x: &Element, y: &Element| rhd.mul(x, y);
        let o = |x: &Element, y: &Element| circ.mul(x, y);
        // a▷(b▷c) = (a∘b)▷c + b▷(a▷c) - (b∘a)▷c
        let r1 = &(&(&r(&a, &r(&b, &c)) - &r(&o(&a, &b), &c)) - &r(&b, &r(&a, &c))) + &r(&o(&b, &a), &c);
        // a▷(b◁c) = (a▷b)◁c + b◁(a∘c) - (b◁a)◁c
        let r2 = &(&(&r(&a, &l(&b, &c)) - &l(&r(&a, &b), &c)) - &l(&b, &o(&a, &c))) + &l(&l(&b, &a), &c);
        // (a∘b)▷c = (a▷c)◁b
        let r3 = &r(&o(&a, &b), &c) - &l(&r(&a, &c), &b);
        // (a◁b)◁c = (a◁c)◁b
        let r4 = &l(&l(&a, &b), &c) - &l(&l(&a, &c), &b);
        [(1, r1), (2, r2), (3, r3), (4, r4)]
            .into_iter()
            .filter_map(|(idx, res)| violation_if(Identity::PreNovikov(idx), || a3(i, j, k), &res))
            .collect()
    });
    Ok(Report::new("pre-Novikov identities", (1..=4).map(Identity::PreNovikov).collect(), violations))
}

/// The associated Novikov product `∘ = ◁ + ▷`.
pub fn associated_novikov(alg: &PreNovikovAlgebra) -> Result<NovikovAlgebra> {
    NovikovAlgebra::new(alg.circ()).map_err(|e| {
        Error::Internal(format!("associated product of a verified pre-Novikov algebra is not Novikov: {e}"))
    })
}

/// `(⊙, ★)` with `a⊙b = a▷b + b◁a` and `a★b = a∘b + b∘a`.
pub fn derived_ops(alg: &PreNovikovTables) -> (StructureConstants, StructureConstants) {
    let odot = alg.rhd.plus(&alg.lhd.opposite());
    let circ = alg.circ();
    let star = circ.plus(&circ.opposite());
    (odot, star)
}

/// Skewsymmetry, nondegeneracy and the cocycle identity of `ω`.
pub fn check_quasi_frobenius(op: &StructureConstants, w: &FormMatrix) -> Result<Report> {
    ensure_dim("form", op.dim(), w.dim())?;
    let n = op.dim();
    let m = w.matrix();
    let mut violations: Vec<Violation> = pairs(n, n)
        .into_iter()
        .filter(|&(i, j)| i <= j)
        .filter_map(|(i, j)| {
            let s = m.get(i, j) + m.get(j, i);
            (!s.is_zero()).then(|| Violation::new(Identity::FormSkew, vec![BasisRef::a(i), BasisRef::a(j)], Residual::scalar(s)))
        })
        .collect();
    let nullity = n - linalg::rank(m);
    if nullity > 0 {
        // residual is the dimension of the radical
        violations.push(Violation::new(Identity::FormNondegenerate, vec![], Residual::scalar(Scalar::from_int(nullity as i64))));
    }
    let e = |i| Element::basis(n, i);
    violations.extend(scan(&triples(n, n, n), |&(i, j, k)| {
        let (a, b, c) = (e(i), e(j), e(k));
        let v = w.eval(&op.mul(&a, &b), &c) - w.eval(&(&op.mul(&a, &c) + &op.mul(&c, &a)), &b)
            + w.eval(&op.mul(&c, &b), &a);
        if v.is_zero() {
            vec![]
        } else {
            vec![Violation::new(Identity::FormCocycle, a3(i, j, k), Residual::scalar(v))]
        }
    }));
    Ok(Report::new(
        "quasi-Frobenius form",
        vec![Identity::FormSkew, Identity::FormNondegenerate, Identity::FormCocycle],
        violations,
    ))
}

/// The map `T: A* → A` with `ω(T(f), a) = ⟨f, a⟩`, i.e. `T = (Wᵀ)⁻¹`.
pub fn form_iso(w: &FormMatrix) -> Result<LinMap> {
    linalg::inverse(&w.matrix().transpose())
}

/// The compatible pre-Novikov structure of a quasi-Frobenius Novikov
/// algebra: `ω(a▷b, c) = ω(a∘c + c∘a, b)` and `ω(a◁b, c) = ω(a, c∘b)`.
///
/// Solved directly, then recomputed through `T = form_iso(w)` and the dual
/// representation; disagreement is reported as `Error::Internal`.
pub fn pre_novikov_from_qf(op: &StructureConstants, w: &FormMatrix) -> Result<PreNovikovAlgebra> {
    let qf = check_quasi_frobenius(op, w)?;
    let nov = check_novikov(op);
    if !qf.passed() || !nov.passed() {
        return Err(Error::refused("quasi-Frobenius Novikov algebra", Report::group("quasi-Frobenius Novikov", vec![nov, qf])));
    }
    let n = op.dim();
    let e = |i| Element::basis(n, i);
    let wt = w.matrix().transpose();
    let wt_inv = linalg::inverse(&wt)?;
    let mut lhd = StructureConstants::zeros(n);
    let mut rhd = StructureConstants::zeros(n);
    for (i, j) in pairs(n, n) {
        let (a, b) = (e(i), e(j));
        // ω(x, e_k) = (Wᵀ x)_k, so x = (Wᵀ)⁻¹ rhs
        let rhs_r: Vec<Scalar> = (0..n).map(|k| w.eval(&(&op.mul(&a, &e(k)) + &op.mul(&e(k), &a)), &b)).collect();
        let rhs_l: Vec<Scalar> = (0..n).map(|k| w.eval(&a, &op.mul(&e(k), &b))).collect();
        let xr = &wt_inv * &Element::new(rhs_r)?;
        let xl = &wt_inv * &Element::new(rhs_l)?;
        for k in 0..n {
            rhd.set(i, j, k, xr.get(k).clone());
            lhd.set(i, j, k, xl.get(k).clone());
        }
    }

    // T is an O-operator for (A*, L∘* + R∘*, -R∘*); the structure it induces on A*, moved back to A.
    let t = form_iso(w)?;
    let t_inv = linalg::inverse(&t)?;
    let star = |m: LinMap| dual_map(&m, DualMode::Rep);
    for (i, j) in pairs(n, n) {
        let (a, b) = (e(i), e(j));
        let l_a = &star(op.mat(&a, Side::Left)) + &star(op.mat(&a, Side::Right));
        let r_b = -&star(op.mat(&b, Side::Right));
        let via_r = &t * &(&l_a * &(&t_inv * &b));
        let via_l = &t * &(&r_b * &(&t_inv * &a));
        let direct_r = rhd.basis_product(i, j);
        let direct_l = lhd.basis_product(i, j);
        if via_r != direct_r || via_l != direct_l {
            return Err(Error::Internal(format!(
                "direct and dual-route constructions disagree at (e{},e{})",
                i + 1,
                j + 1
            )));
        }
    }

    let tables = PreNovikovTables { lhd, rhd };
    if tables.circ() != *op {
        return Err(Error::Internal("constructed ◁ + ▷ differs from ∘".into()));
    }
    PreNovikovAlgebra::from_tables(tables)
        .map_err(|e| Error::Internal(format!("constructed tables are not pre-Novikov: {e}")))
}
