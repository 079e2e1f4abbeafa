//! The pre-Novikov Yang-Baxter equation, coboundary bialgebras and
//! O-operators.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebras::{derived_ops, NovikovAlgebra, PreNovikovAlgebra, PreNovikovTables};
use crate::bialgebra::{check_bialgebra, PreNovikovBialgebra, PreNovikovCoalgebra};
use crate::error::{ensure_dim, Error, Result};
use crate::labels::Identity;
use crate::report::{pairs, BasisRef, Report, Residual, Violation};
use crate::representations::{
    dual_novikov_rep_maps, dual_pre_novikov_rep, dual_pre_novikov_rep_maps, semidirect_pre_novikov, NovikovRep,
    PreNovikovRep, RepMaps, VerifiedPreNovikovRep,
};
use crate::scalar::Scalar;
use crate::structure::{placed_product, Side, StructureConstants};
use crate::tensor::{Element, LinMap, SlotPattern, Tensor2, Tensor3, TensorOp};

/// Default cap on the number of candidates [`search_symmetric_ybe`] visits.
pub const DEFAULT_SEARCH_BUDGET: u128 = 1 << 20;

fn slots(s: &str) -> SlotPattern {
    s.parse().expect("built-in slot pattern")
}

fn square(alg_dim: usize, r: &Tensor2) -> Result<()> {
    if r.dims() != (alg_dim, alg_dim) {
        return Err(Error::dims(format!("tensor is {:?}, algebra has dimension {alg_dim}", r.dims())));
    }
    Ok(())
}

/// `r12∘r13 + r23⊙r13 - r12◁r23`.
pub fn ybe_residual(alg: &PreNovikovTables, r: &Tensor2) -> Result<Tensor3> {
    square(alg.dim(), r)?;
    let (odot, _) = derived_ops(alg);
    let circ = alg.circ();
    let t1 = placed_product(r, r, &circ, slots("12,13"))?;
    let t2 = placed_product(r, r, &odot, slots("23,13"))?;
    let t3 = placed_product(r, r, &alg.lhd, slots("12,23"))?;
    Ok(&(&t1 + &t2) - &t3)
}

/// `α(a) = (L∘(a) ⊗ id + id ⊗ (L▷ + R◁)(a)) τr` and
/// `β(a) = -(L▷(a) ⊗ id + id ⊗ (L∘ + R∘)(a)) r`. No validity claim.
pub fn coboundary_maps(alg: &PreNovikovTables, r: &Tensor2) -> Result<PreNovikovCoalgebra> {
    square(alg.dim(), r)?;
    let n = alg.dim();
    let circ = alg.circ();
    let tr = r.transposed();
    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n);
    for i in 0..n {
        let a = Element::basis(n, i);
        let lc = circ.mat(&a, Side::Left);
        let lr = alg.rhd.mat(&a, Side::Left);
        let rl = alg.lhd.mat(&a, Side::Right);
        let rc = circ.mat(&a, Side::Right);
        alpha.push(&tr.lift(Some(&lc), None) + &tr.lift(None, Some(&(&lr + &rl))));
        beta.push(-(&r.lift(Some(&lr), None) + &r.lift(None, Some(&(&lc + &rc)))));
    }
    PreNovikovCoalgebra::from_values(&alpha, &beta)
}

fn symmetry_violations(r: &Tensor2) -> Vec<Violation> {
    let (rows, _) = r.dims();
    pairs(rows, rows)
        .into_iter()
        .filter(|&(i, j)| i < j)
        .filter_map(|(i, j)| {
            let d = r.get(i, j) - r.get(j, i);
            (!d.is_zero()).then(|| Violation::new(Identity::Symmetry, vec![BasisRef::a(i), BasisRef::a(j)], Residual::scalar(d)))
        })
        .collect()
}

/// Symmetry of `r` and the vanishing of its Yang-Baxter residual.
pub fn solution_report(alg: &PreNovikovTables, r: &Tensor2) -> Result<Report> {
    let mut violations = symmetry_violations(r);
    let res = ybe_residual(alg, r)?;
    if !res.is_zero() {
        violations.push(Violation::new(Identity::YangBaxter, vec![], Residual::from(&res)));
    }
    Ok(Report::new("symmetric Yang-Baxter solution", vec![Identity::Symmetry, Identity::YangBaxter], violations))
}

/// The coboundary bialgebra of a symmetric solution `r`, with its passing
/// report. Refuses if `r` is not symmetric or not a solution.
pub fn bialgebra_from_r(alg: &PreNovikovAlgebra, r: &Tensor2) -> Result<(PreNovikovBialgebra, Report)> {
    let pre = solution_report(alg, r)?;
    if !pre.passed() {
        return Err(Error::refused("coboundary bialgebra", pre));
    }
    let co = coboundary_maps(alg, r)?;
    let report = check_bialgebra(alg, &co)?;
    if !report.passed() {
        return Err(Error::Internal("coboundary of a symmetric solution is not a bialgebra".into()));
    }
    let bialg = PreNovikovBialgebra::new(alg.tables().clone(), co)?;
    Ok((bialg, report))
}

/// One of the seven intermediate tensors of the coboundary expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RTensor {
    R11,
    R12,
    R13,
    R21,
    R22,
    R31,
    R41,
}

impl RTensor {
    pub const ALL: [RTensor; 7] =
        [RTensor::R11, RTensor::R12, RTensor::R13, RTensor::R21, RTensor::R22, RTensor::R31, RTensor::R41];

    pub fn name(self) -> &'static str {
        match self {
            RTensor::R11 => "R11",
            RTensor::R12 => "R12",
            RTensor::R13 => "R13",
            RTensor::R21 => "R21",
            RTensor::R22 => "R22",
            RTensor::R31 => "R31",
            RTensor::R41 => "R41",
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Circ,
    Odot,
    Star,
    Lhd,
    Rhd,
}

/// `(sign, product, r-slots, r'-slots)`.
type Term = (i64, Op, &'static str, &'static str);

fn r_tensor_terms(t: RTensor) -> &'static [Term] {
    use Op::*;
    match t {
        RTensor::R11 => &[(1, Circ, "21", "31"), (-1, Circ, "21", "32"), (-1, Odot, "31", "32"), (1, Rhd, "21", "23"), (1, Star, "31", "23")],
        RTensor::R12 => &[(-1, Circ, "21", "31"), (-1, Odot, "23", "31"), (1, Lhd, "21", "32")],
        RTensor::R13 => &[
            (1, Circ, "31", "21"),
            (1, Odot, "32", "21"),
            (1, Rhd, "23", "31"),
            (-1, Lhd, "31", "23"),
            (1, Rhd, "32", "21"),
            (1, Star, "31", "21"),
        ],
        RTensor::R21 => &[(1, Rhd, "21", "13"), (1, Rhd, "12", "23"), (1, Star, "13", "23")],
        RTensor::R22 => &[
            (1, Circ, "13", "21"),
            (1, Odot, "23", "21"),
            (-1, Rhd, "13", "12"),
            (-1, Star, "23", "12"),
            (-1, Circ, "23", "12"),
            (-1, Odot, "13", "12"),
            (1, Rhd, "23", "21"),
            (1, Star, "13", "21"),
            (1, Circ, "23", "13"),
            (-1, Circ, "13", "23"),
        ],
        RTensor::R31 => &[(-1, Circ, "13", "23"), (1, Circ, "13", "21"), (1, Odot, "23", "21"), (-1, Rhd, "13", "12"), (-1, Star, "23", "12")],
        RTensor::R41 => &[(-1, Circ, "31", "21"), (-1, Odot, "32", "21"), (1, Lhd, "31", "23")],
    }
}

struct Ops {
    circ: StructureConstants,
    odot: StructureConstants,
    star: StructureConstants,
    lhd: StructureConstants,
    rhd: StructureConstants,
}

impl Ops {
    fn new(alg: &PreNovikovTables) -> Self {
        let (odot, star) = derived_ops(alg);
        Ops { circ: alg.circ(), odot, star, lhd: alg.lhd.clone(), rhd: alg.rhd.clone() }
    }

    fn get(&self, op: Op) -> &StructureConstants {
        match op {
            Op::Circ => &self.circ,
            Op::Odot => &self.odot,
            Op::Star => &self.star,
            Op::Lhd => &self.lhd,
            Op::Rhd => &self.rhd,
        }
    }

    fn left(&self, op: Op, a: &Element) -> LinMap {
        self.get(op).mat(a, Side::Left)
    }

    fn right(&self, op: Op, a: &Element) -> LinMap {
        self.get(op).mat(a, Side::Right)
    }
}

/// The named tensor `t` built from placed products of `r` with itself.
pub fn r_tensor(alg: &PreNovikovTables, r: &Tensor2, t: RTensor) -> Result<Tensor3> {
    square(alg.dim(), r)?;
    r_tensor_with(&Ops::new(alg), r, t)
}

fn r_tensor_with(ops: &Ops, r: &Tensor2, t: RTensor) -> Result<Tensor3> {
    let mut acc = Tensor3::zeros(ops.circ.dim());
    for &(sign, op, first, second) in r_tensor_terms(t) {
        let p = placed_product(r, r, ops.get(op), slots(&format!("{first},{second}")))?;
        acc = if sign > 0 { &acc + &p } else { &acc - &p };
    }
    Ok(acc)
}

/// Everything the coboundary expansion is made of: the four conditions on
/// `(a, b)` applied to `τr - r`, the seven named tensors, and the four
/// residual equations on each basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub conditions: Report,
    pub tensors: Vec<(RTensor, Tensor3)>,
    pub residuals: Report,
}

impl Diagnostics {
    pub fn report(&self) -> Report {
        Report::group("coboundary diagnostics", vec![self.conditions.clone(), self.residuals.clone()])
    }

    pub fn tensor(&self, t: RTensor) -> &Tensor3 {
        &self.tensors.iter().find(|(k, _)| *k == t).expect("all seven are computed").1
    }
}

pub fn coboundary_diagnostics(alg: &PreNovikovTables, r: &Tensor2) -> Result<Diagnostics> {
    square(alg.dim(), r)?;
    let ops = Ops::new(alg);
    let n = alg.dim();
    let d = &r.transposed() - r;
    let two = Scalar::from_int(2);
    let e = |i| Element::basis(n, i);
    let left = TensorOp::left;
    let right = TensorOp::right;

    let conditions: Vec<Violation> = pairs(n, n)
        .into_par_iter()
        .flat_map_iter(|(i, j)| {
            let (a, b) = (e(i), e(j));
            let lr = |x: &Element| ops.left(Op::Rhd, x);
            let rr = |x: &Element| ops.right(Op::Rhd, x);
            let ll = |x: &Element| ops.left(Op::Lhd, x);
            let rl = |x: &Element| ops.right(Op::Lhd, x);
            let lc = |x: &Element| ops.left(Op::Circ, x);
            let rc = |x: &Element| ops.right(Op::Circ, x);
            let k = |x: &Element| left(lc(x)).plus(right(&lr(x) + &rl(x)));
            let (ka, kb) = (k(&a), k(&b));
            let aob = ops.odot.mul(&a, &b);
            let bla = ops.lhd.mul(&b, &a);
            let neg = -Scalar::one();

            let t3 = left(&lr(&a) + &rl(&a).scale(&two))
                .plus(right(&lr(&a) + &rl(&a)))
                .after(&kb)
                .minus(left(ll(&b)).after(&ka))
                .minus(k(&aob));
            let t4 = right(rl(&a))
                .after(&kb)
                .plus(left(rl(&a)).after(&left(&lc(&b) + &rc(&b)).plus(right(lr(&b)))))
                .minus(left(ll(&b)).after(&right(rl(&a)).plus(left(rc(&a).scale(&neg)))))
                .minus(right(&lr(&bla).scale(&two) + &rl(&bla)).plus(left(&lc(&bla).scale(&two) + &rc(&bla))));
            let t5 = left(&rr(&b) + &ll(&b))
                .after(&ka)
                .minus(right(&lr(&a) + &rl(&a)).after(&right(lr(&b)).plus(left(&lc(&b) + &rc(&b)))))
                .minus(left(&lr(&a) + &rl(&a)).after(&kb));
            let t6 = left(rl(&a)).after(&kb).minus(k(&bla));
            [t3, t4, t5, t6]
                .iter()
                .enumerate()
                .filter_map(|(idx, t)| {
                    let v = t.apply(&d);
                    (!v.is_zero()).then(|| {
                        Violation::new(
                            Identity::CoboundaryCondition(idx as u8 + 1),
                            vec![BasisRef::a(i), BasisRef::a(j)],
                            Residual::from(&v),
                        )
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let conditions = Report::new("coboundary conditions", (1..=4).map(Identity::CoboundaryCondition).collect(), conditions);

    let tensors = RTensor::ALL.iter().map(|&t| Ok((t, r_tensor_with(&ops, r, t)?))).collect::<Result<Vec<_>>>()?;
    let get = |t: RTensor| &tensors.iter().find(|(k, _)| *k == t).unwrap().1;
    let (r11, r12, r13, r21, r22, r31, r41) = (
        get(RTensor::R11),
        get(RTensor::R12),
        get(RTensor::R13),
        get(RTensor::R21),
        get(RTensor::R22),
        get(RTensor::R31),
        get(RTensor::R41),
    );
    let residuals: Vec<Violation> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let a = e(i);
            let lc = ops.left(Op::Circ, &a);
            let lr = ops.left(Op::Rhd, &a);
            let lod = ops.left(Op::Odot, &a);
            let lst = ops.left(Op::Star, &a);
            let mut t7 = &(&r11.lift(Some(&lc), None, None) + &r12.lift(None, Some(&lr), None)) + &r13.lift(None, None, Some(&lod));
            let mut t8 = &(&r21.lift(Some(&lr), None, None) - &r21.lift(None, Some(&lr), None)) + &r22.lift(None, None, Some(&lst));
            let mut t9 = &r31.lift(None, None, Some(&lst)) - &r21.lift(None, Some(&lod), None);
            let t10 = &r41.lift(None, None, Some(&lod)) - &r12.lift(None, Some(&lod), None);
            for (p, q, w) in r.support() {
                let (x, y) = (e(p), e(q));
                let aox = ops.odot.mul(&a, &x);
                let arx = ops.rhd.mul(&a, &x);
                let y_d = Tensor3::outer_left(&y, &d);
                let d_y = Tensor3::outer_right(&d, &y);
                t7 = &t7 - &y_d.lift(None, Some(&ops.left(Op::Rhd, &aox).scale(w)), None);
                t7 = &t7 - &y_d.lift(None, None, Some(&ops.left(Op::Odot, &aox).scale(w)));
                let m = (&ops.left(Op::Rhd, &arx).scale(&two) + &ops.right(Op::Lhd, &arx)).scale(w);
                t8 = &t8 + &d_y.lift(Some(&m), None, None);
                t8 = &t8 + &d_y.lift(None, Some(&m), None);
                t9 = &t9 + &d_y.lift(Some(&ops.left(Op::Rhd, &arx).scale(w)), None, None);
                t9 = &t9 + &d_y.lift(None, Some(&ops.left(Op::Odot, &arx).scale(w)), None);
            }
            [t7, t8, t9, t10]
                .iter()
                .enumerate()
                .filter(|(_, t)| !t.is_zero())
                .map(|(idx, t)| Violation::new(Identity::CoboundaryResidual(idx as u8 + 1), vec![BasisRef::a(i)], Residual::from(t)))
                .collect::<Vec<_>>()
        })
        .collect();
    let residuals = Report::new("coboundary residuals", (1..=4).map(Identity::CoboundaryResidual).collect(), residuals);
    Ok(Diagnostics { conditions, tensors, residuals })
}

/// `T_r : A* → A` with `⟨f ⊗ g, r⟩ = ⟨f, T_r(g)⟩`; in dual bases this is
/// the coefficient matrix of `r`.
pub fn t_r_from_tensor(r: &Tensor2) -> Result<LinMap> {
    if !r.is_square() {
        return Err(Error::Shape(format!("tensor is {:?}, expected a square array", r.dims())));
    }
    Ok(r.as_linmap())
}

fn check_o_operator(
    id: Identity,
    op: &StructureConstants,
    l: &RepMaps,
    r: &RepMaps,
    t: &LinMap,
) -> Result<Vec<Violation>> {
    ensure_dim("O-operator target", op.dim(), t.rows())?;
    ensure_dim("representation algebra dimension", op.dim(), l.algebra_dim())?;
    ensure_dim("O-operator source", l.module_dim(), t.cols())?;
    let m = t.cols();
    Ok(pairs(m, m)
        .into_par_iter()
        .filter_map(|(i, j)| {
            let (tu, tv) = (t.column(i), t.column(j));
            let (u, v) = (Element::basis(m, i), Element::basis(m, j));
            let lhs = op.mul(&tu, &tv);
            let rhs = &(t * &(&l.at(&tu) * &v)) + &(t * &(&r.at(&tv) * &u));
            let res = &lhs - &rhs;
            (!res.is_zero())
                .then(|| Violation::new(id, vec![BasisRef::module(i), BasisRef::module(j)], Residual::from(&res)))
        })
        .collect())
}

/// `T(u)∘T(v) = T(l(T(u))v) + T(r(T(v))u)` on all module basis pairs.
pub fn check_o_operator_novikov(op: &StructureConstants, rep: &NovikovRep, t: &LinMap) -> Result<Report> {
    let v = check_o_operator(Identity::OOperatorNovikov, op, &rep.l, &rep.r, t)?;
    Ok(Report::new("O-operator", vec![Identity::OOperatorNovikov], v))
}

/// The `▷` and `◁` O-operator identities on all module basis pairs.
pub fn check_o_operator_pre_novikov(alg: &PreNovikovTables, rep: &PreNovikovRep, t: &LinMap) -> Result<Report> {
    let mut v = check_o_operator(Identity::OOperatorPreNovikov(1), &alg.rhd, &rep.l_rhd, &rep.r_rhd, t)?;
    v.extend(check_o_operator(Identity::OOperatorPreNovikov(2), &alg.lhd, &rep.l_lhd, &rep.r_lhd, t)?);
    Ok(Report::new("pre-Novikov O-operator", vec![Identity::OOperatorPreNovikov(1), Identity::OOperatorPreNovikov(2)], v))
}

/// Which identities an [`OOperator`] is meant to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Novikov,
    PreNovikov,
}

/// A map `T: V → A` together with the kind of O-operator it is claimed to be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OOperator {
    pub map: LinMap,
    pub flavor: Flavor,
}

/// `u ▷ v = l(T(u))v`, `u ◁ v = r(T(v))u` on the module. Refuses unless `T`
/// is an O-operator; the result is re-verified.
pub fn pre_novikov_from_o(alg: &NovikovAlgebra, rep: &NovikovRep, t: &LinMap) -> Result<PreNovikovAlgebra> {
    let report = check_o_operator_novikov(alg, rep, t)?;
    if !report.passed() {
        return Err(Error::refused("O-operator", report));
    }
    let m = t.cols();
    let mut lhd = StructureConstants::zeros(m);
    let mut rhd = StructureConstants::zeros(m);
    for (i, j) in pairs(m, m) {
        let (u, v) = (Element::basis(m, i), Element::basis(m, j));
        let r = &rep.l.at(&t.column(i)) * &v;
        let l = &rep.r.at(&t.column(j)) * &u;
        for k in 0..m {
            rhd.set(i, j, k, r.get(k).clone());
            lhd.set(i, j, k, l.get(k).clone());
        }
    }
    PreNovikovAlgebra::new(lhd, rhd).map_err(|e| Error::Internal(format!("structure induced by an O-operator: {e}")))
}

/// The three equivalent conditions on a symmetric `r`, each computed on its
/// own path: the residual vanishes; `T_r` is an O-operator for the dual of
/// `(L▷, R◁)`; `T_r` is a pre-Novikov O-operator for the dual adjoint.
pub fn co2_equivalence(alg: &PreNovikovTables, r: &Tensor2) -> Result<(bool, bool, bool)> {
    square(alg.dim(), r)?;
    let sym = symmetry_violations(r);
    if !sym.is_empty() {
        return Err(Error::refused("symmetric tensor", Report::new("symmetry", vec![Identity::Symmetry], sym)));
    }
    let a = ybe_residual(alg, r)?.is_zero();
    let t = t_r_from_tensor(r)?;
    let circ = alg.circ();
    let lr_rl = NovikovRep {
        l: RepMaps::from_product(&alg.rhd, Side::Left),
        r: RepMaps::from_product(&alg.lhd, Side::Right),
    };
    let b = check_o_operator_novikov(&circ, &dual_novikov_rep_maps(&lr_rl), &t)?.passed();
    let adj = PreNovikovRep {
        l_rhd: RepMaps::from_product(&alg.rhd, Side::Left),
        r_rhd: RepMaps::from_product(&alg.rhd, Side::Right),
        l_lhd: RepMaps::from_product(&alg.lhd, Side::Left),
        r_lhd: RepMaps::from_product(&alg.lhd, Side::Right),
    };
    let c = check_o_operator_pre_novikov(alg, &dual_pre_novikov_rep_maps(&adj), &t)?.passed();
    Ok((a, b, c))
}

/// The outcome of lifting `T: V → A` to `A ⋉ V*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    /// `A ⋉ V*` with the dual representation.
    pub algebra: PreNovikovAlgebra,
    /// `r_T + τ(r_T)` with `r_T = Σ T(v_i) ⊗ v_i*`.
    pub r: Tensor2,
    /// Whether `r` solves the Yang-Baxter equation (equivalently, `T` is an
    /// O-operator).
    pub solution: bool,
}

/// Lifts `T` to a symmetric tensor on `A ⋉ V*`. `r` is a solution exactly
/// when `T` is an O-operator; disagreement is reported as `Error::Internal`.
pub fn lift_o_operator(rep: &VerifiedPreNovikovRep, t: &LinMap) -> Result<Lift> {
    let alg = rep.algebra();
    let n = alg.dim();
    let m = rep.module_dim();
    ensure_dim("O-operator target", n, t.rows())?;
    ensure_dim("O-operator source", m, t.cols())?;
    let is_o = check_o_operator_pre_novikov(alg, rep, t)?.passed();
    let algebra = semidirect_pre_novikov(&dual_pre_novikov_rep(rep)?)?;
    let mut r = Tensor2::zeros(n + m, n + m);
    for p in 0..n {
        for i in 0..m {
            let x = t.get(p, i);
            if !x.is_zero() {
                r.add_at(p, n + i, x);
                r.add_at(n + i, p, x);
            }
        }
    }
    let solution = ybe_residual(&algebra, &r)?.is_zero();
    if solution != is_o {
        return Err(Error::Internal(format!(
            "lifted tensor {} a solution but the map {} an O-operator",
            if solution { "is" } else { "is not" },
            if is_o { "is" } else { "is not" }
        )));
    }
    Ok(Lift { algebra, r, solution })
}

/// Every symmetric `r` with entries in `values` whose residual vanishes,
/// in lexicographic order of upper-triangle coordinates (row by row), with
/// coordinates ordered by their position in `values`.
pub fn search_symmetric_ybe(alg: &PreNovikovTables, values: &[Scalar], budget: u128) -> Result<Vec<Tensor2>> {
    if values.is_empty() {
        return Err(Error::Precondition("value set is empty".into()));
    }
    let n = alg.dim();
    let coords: Vec<(usize, usize)> = pairs(n, n).into_iter().filter(|&(i, j)| i <= j).collect();
    let size = (values.len() as u128).checked_pow(coords.len() as u32).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::Budget { size, budget });
    }
    let sym_basis: Vec<Tensor2> = coords
        .iter()
        .map(|&(i, j)| {
            let mut t = Tensor2::zeros(n, n);
            t.set(i, j, Scalar::one());
            t.set(j, i, Scalar::one());
            t
        })
        .collect();
    // The residual is a quadratic form in the coordinates:
    // Y(Σ c_u s_u) = Σ_u c_u² Y(s_u) + Σ_{u<v} c_u c_v (Y(s_u+s_v) - Y(s_u) - Y(s_v)).
    let diag: Vec<Tensor3> = sym_basis.iter().map(|s| ybe_residual(alg, s)).collect::<Result<_>>()?;
    let k = coords.len();
    let mut quad: Vec<(usize, usize, Vec<Scalar>)> = Vec::new();
    for u in 0..k {
        let d = flat(&diag[u]);
        if d.iter().any(|x| !x.is_zero()) {
            quad.push((u, u, d));
        }
        for v in u + 1..k {
            let both = ybe_residual(alg, &(&sym_basis[u] + &sym_basis[v]))?;
            let cross = flat(&(&(&both - &diag[u]) - &diag[v]));
            if cross.iter().any(|x| !x.is_zero()) {
                quad.push((u, v, cross));
            }
        }
    }
    let entries = n * n * n;
    let total = size as u64;
    let base = values.len() as u64;
    let mut found: Vec<u64> = (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let c = digits(idx, base, k);
            (0..entries).all(|e| {
                let mut acc = Scalar::zero();
                for (u, v, q) in &quad {
                    if q[e].is_zero() {
                        continue;
                    }
                    let (cu, cv) = (&values[c[*u]], &values[c[*v]]);
                    if cu.is_zero() || cv.is_zero() {
                        continue;
                    }
                    acc += &(cu * cv) * &q[e];
                }
                acc.is_zero()
            })
        })
        .collect();
    found.sort_unstable();
    found
        .into_iter()
        .map(|idx| {
            let c = digits(idx, base, k);
            let mut r = Tensor2::zeros(n, n);
            for (u, &(i, j)) in coords.iter().enumerate() {
                r.set(i, j, values[c[u]].clone());
                r.set(j, i, values[c[u]].clone());
            }
            if !ybe_residual(alg, &r)?.is_zero() {
                return Err(Error::Internal("search accepted a tensor with nonzero residual".into()));
            }
            Ok(r)
        })
        .collect()
}

fn flat(t: &Tensor3) -> Vec<Scalar> {
    let n = t.dim();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out.push(t.get(i, j, k).clone());
            }
        }
    }
    out
}

/// Base-`base` digits of `idx`, most significant first.
fn digits(mut idx: u64, base: u64, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (idx % base) as usize;
        idx /= base;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::associated_novikov;
    use crate::representations::adjoint_reps;

    fn ex1() -> PreNovikovAlgebra {
        let lhd = StructureConstants::from_products(2, &[((0, 0), &[1, 0]), ((0, 1), &[0, 1]), ((1, 0), &[0, 1])]);
        PreNovikovAlgebra::new(lhd, StructureConstants::zeros(2)).unwrap()
    }

    fn t2(n: usize, entries: &[(usize, usize, i64)]) -> Tensor2 {
        let mut t = Tensor2::zeros(n, n);
        for &(i, j, v) in entries {
            t.set(i, j, Scalar::from_int(v));
        }
        t
    }

    #[test]
    fn residual_of_e1e1() {
        let alg = ex1();
        let res = ybe_residual(&alg, &t2(2, &[(0, 0, 1)])).unwrap();
        let mut expected = Tensor3::zeros(2);
        expected.set(0, 0, 0, Scalar::one());
        assert_eq!(res, expected);
        assert!(ybe_residual(&alg, &Tensor2::zeros(2, 2)).unwrap().is_zero());
        assert!(matches!(bialgebra_from_r(&alg, &t2(2, &[(0, 0, 1)])), Err(Error::Refused { .. })));
        assert!(bialgebra_from_r(&alg, &t2(2, &[(0, 1, 1)])).is_err());
        assert!(co2_equivalence(&alg, &t2(2, &[(0, 1, 1)])).is_err());
        assert_eq!(co2_equivalence(&alg, &t2(2, &[(0, 0, 1)])).unwrap(), (false, false, false));
    }

    #[test]
    fn o_operator_examples() {
        let alg = ex1();
        let (nrep, prep) = adjoint_reps(&alg).unwrap();
        let t = LinMap::from_int_rows(&[&[0, 0], &[1, 0]]);
        assert!(check_o_operator_pre_novikov(&alg, &prep, &t).unwrap().passed());
        assert!(check_o_operator_novikov(&alg.circ(), &nrep, &t).unwrap().passed());
        let id = LinMap::identity(2);
        assert!(!check_o_operator_pre_novikov(&alg, &prep, &id).unwrap().passed());
        let nov = associated_novikov(&alg).unwrap();
        let adj = crate::representations::adjoint_novikov_rep(&nov).unwrap();
        let bad = check_o_operator_novikov(&nov, &adj, &id).unwrap();
        assert!(bad.witnesses(Identity::OOperatorNovikov).contains(&vec![BasisRef::module(0), BasisRef::module(0)]));
        let induced = pre_novikov_from_o(&nov, &nrep, &t).unwrap();
        // e1◁e1 = e2, everything else zero
        assert_eq!(induced.lhd, StructureConstants::from_products(2, &[((0, 0), &[0, 1])]));
        assert!(induced.rhd.is_zero());
        assert!(matches!(pre_novikov_from_o(&nov, &adj, &id), Err(Error::Refused { .. })));
    }

    #[test]
    fn lift_and_search() {
        let alg = ex1();
        let (_, prep) = adjoint_reps(&alg).unwrap();
        let t = LinMap::from_int_rows(&[&[0, 0], &[1, 0]]);
        let lift = lift_o_operator(&prep, &t).unwrap();
        assert!(lift.solution);
        assert_eq!(lift.r, t2(4, &[(1, 2, 1), (2, 1, 1)]));
        let bad = lift_o_operator(&prep, &LinMap::identity(2)).unwrap();
        assert!(!bad.solution);

        let vals: Vec<Scalar> = [-1, 0, 1].into_iter().map(Scalar::from_int).collect();
        let sols = search_symmetric_ybe(&alg, &vals, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(sols, vec![t2(2, &[(1, 1, -1)]), Tensor2::zeros(2, 2), t2(2, &[(1, 1, 1)])]);
        assert_eq!(search_symmetric_ybe(&alg, &[Scalar::zero()], 1).unwrap(), vec![Tensor2::zeros(2, 2)]);
        assert!(matches!(search_symmetric_ybe(&alg, &vals, 10), Err(Error::Budget { size: 27, budget: 10 })));
    }

    #[test]
    fn diagnostics_of_symmetric_tensors() {
        let alg = ex1();
        for r in [t2(2, &[(0, 0, 1)]), t2(2, &[(0, 1, 1), (1, 0, 1)]), Tensor2::zeros(2, 2)] {
            let d = coboundary_diagnostics(&alg, &r).unwrap();
            assert!(d.conditions.passed());
        }
        let d = coboundary_diagnostics(&alg, &t2(2, &[(1, 1, 1)])).unwrap();
        assert!(d.report().passed());
    }
}
