//! Pre-Novikov coalgebras and bialgebras.

use std::ops::Deref;

use crate::algebras::{check_pre_novikov, PreNovikovAlgebra, PreNovikovTables};
use crate::error::{ensure_dim, Error, Result};
use crate::labels::Identity;
use crate::report::{pairs, scan, BasisRef, Report, Residual, Violation};
use crate::scalar::Scalar;
use crate::structure::{Side, StructureConstants};
use crate::tensor::{Element, LinMap, Perm3, Tensor2, Tensor3};

/// Co-operations `α, β : A → A ⊗ A`, stored like structure constants:
/// `alpha[a][f][g]` is the coefficient of `e_f ⊗ e_g` in `α(e_a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreNovikovCoalgebra {
    pub alpha: Tensor3,
    pub beta: Tensor3,
}

impl PreNovikovCoalgebra {
    pub fn new(alpha: Tensor3, beta: Tensor3) -> Result<Self> {
        ensure_dim("α and β", alpha.dim(), beta.dim())?;
        Ok(PreNovikovCoalgebra { alpha, beta })
    }

    pub fn zeros(n: usize) -> Self {
        PreNovikovCoalgebra { alpha: Tensor3::zeros(n), beta: Tensor3::zeros(n) }
    }

    /// Builds both maps from their values on basis elements.
    pub fn from_values(alpha: &[Tensor2], beta: &[Tensor2]) -> Result<Self> {
        let n = alpha.len();
        ensure_dim("number of β values", n, beta.len())?;
        let stack = |vals: &[Tensor2]| -> Result<Tensor3> {
            let mut t = Tensor3::zeros(n);
            for (a, v) in vals.iter().enumerate() {
                if v.dims() != (n, n) {
                    return Err(Error::dims(format!("value on e{} is {:?}, expected ({n}, {n})", a + 1, v.dims())));
                }
                for (f, g, x) in v.support() {
                    t.set(a, f, g, x.clone());
                }
            }
            Ok(t)
        };
        Ok(PreNovikovCoalgebra { alpha: stack(alpha)?, beta: stack(beta)? })
    }

    pub fn dim(&self) -> usize {
        self.alpha.dim()
    }

    pub fn alpha_at(&self, v: &Element) -> Tensor2 {
        co_at(&self.alpha, v)
    }

    pub fn beta_at(&self, v: &Element) -> Tensor2 {
        co_at(&self.beta, v)
    }
}

fn co_at(co: &Tensor3, v: &Element) -> Tensor2 {
    let n = co.dim();
    assert_eq!(v.dim(), n, "co-operation argument dimension mismatch");
    let mut out = Tensor2::zeros(n, n);
    for ([a, f, g], x) in co.support() {
        let c = v.get(a);
        if !c.is_zero() {
            out.add_at(f, g, &(c * x));
        }
    }
    out
}

/// `(co ⊗ id) t`.
fn co_left(co: &Tensor3, t: &Tensor2) -> Tensor3 {
    let mut out = Tensor3::zeros(co.dim());
    for (i, j, x) in t.support() {
        for (p, q, y) in co_at(co, &Element::basis(co.dim(), i)).support() {
            out.add_at(p, q, j, &(x * y));
        }
    }
    out
}

/// `(id ⊗ co) t`.
fn co_right(co: &Tensor3, t: &Tensor2) -> Tensor3 {
    let mut out = Tensor3::zeros(co.dim());
    for (i, j, x) in t.support() {
        for (p, q, y) in co_at(co, &Element::basis(co.dim(), j)).support() {
            out.add_at(i, p, q, &(x * y));
        }
    }
    out
}

/// The products on `A*` dual to `(α, β)`: `⟨f ◁* g, a⟩ = ⟨f⊗g, α(a)⟩`
/// and `⟨f ▷* g, a⟩ = ⟨f⊗g, β(a)⟩`.
pub fn coalgebra_to_dual_algebra(co: &PreNovikovCoalgebra) -> PreNovikovTables {
    let dual = |t: &Tensor3| StructureConstants::from_fn(t.dim(), |f, g, a| t.get(a, f, g).clone());
    PreNovikovTables { lhd: dual(&co.alpha), rhd: dual(&co.beta) }
}

/// Inverse of [`coalgebra_to_dual_algebra`].
pub fn dual_algebra_to_coalgebra(t: &PreNovikovTables) -> PreNovikovCoalgebra {
    let co = |c: &StructureConstants| Tensor3::from_fn(c.dim(), |a, f, g| c.get(f, g, a).clone());
    PreNovikovCoalgebra { alpha: co(&t.lhd), beta: co(&t.rhd) }
}

/// The four co-identities on every basis element, cross-checked against
/// the pre-Novikov identities of the dual algebra. The two verdicts must
/// agree; if they do not, that is reported as `Error::Internal`.
pub fn check_coalgebra(co: &PreNovikovCoalgebra) -> Result<Report> {
    let n = co.dim();
    let (al, be) = (&co.alpha, &co.beta);
    let ab = al + be;
    let s12 = Perm3::swap(1, 2);
    let s23 = Perm3::swap(2, 3);
    let violations = scan(&(0..n).collect::<Vec<_>>(), |&i| {
        let a = co_at(al, &Element::basis(n, i));
        let b = co_at(be, &Element::basis(n, i));
        let c1 = &(&(&co_left(al, &a) + &co_right(al, &b).permute(s12)) - &co_right(&ab, &a))
            - &co_left(be, &a).permute(s12);
        let c2 = &(&(&co_right(be, &b) + &co_left(&ab, &b).permute(s12)) - &co_left(&ab, &b))
            - &co_right(be, &b).permute(s12);
        let c3 = &co_left(be, &a).permute(s23) - &co_left(&ab, &b);
        let c4 = &co_left(al, &a).permute(s23) - &co_left(al, &a);
        [c1, c2, c3, c4]
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(k, t)| Violation::new(Identity::Coalgebra(k as u8 + 1), vec![BasisRef::a(i)], Residual::from(t)))
            .collect()
    });
    let direct = Report::new("coalgebra identities", (1..=4).map(Identity::Coalgebra).collect(), violations);
    let dual = coalgebra_to_dual_algebra(co);
    let dual_report = check_pre_novikov(&dual.lhd, &dual.rhd)?
        .relabel(&|b: BasisRef| BasisRef::dual(b.index));
    let dual_report = Report { title: "dual algebra".into(), ..dual_report };
    if direct.passed() != dual_report.passed() {
        return Err(Error::Internal(format!(
            "coalgebra identities say {} but the dual algebra says {}",
            verdict(direct.passed()),
            verdict(dual_report.passed())
        )));
    }
    Ok(Report::group("pre-Novikov coalgebra", vec![direct, dual_report]))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// The eight compatibility identities on every basis pair `(a, b)`.
pub fn check_compatibility(alg: &PreNovikovTables, co: &PreNovikovCoalgebra) -> Result<Report> {
    ensure_dim("coalgebra", alg.dim(), co.dim())?;
    let n = alg.dim();
    let circ = alg.circ();
    let two = Scalar::from_int(2);
    let violations = scan(&pairs(n, n), |&(i, j)| {
        let (a, b) = (Element::basis(n, i), Element::basis(n, j));
        let lr = |x: &Element| alg.rhd.mat(x, Side::Left);
        let rr = |x: &Element| alg.rhd.mat(x, Side::Right);
        let ll = |x: &Element| alg.lhd.mat(x, Side::Left);
        let rl = |x: &Element| alg.lhd.mat(x, Side::Right);
        let lc = |x: &Element| circ.mat(x, Side::Left);
        let rc = |x: &Element| circ.mat(x, Side::Right);
        let al = |x: &Element| co.alpha_at(x);
        let be = |x: &Element| co.beta_at(x);
        let t_al = |x: &Element| al(x).transposed();
        let t_be = |x: &Element| be(x).transposed();
        let tab = |x: &Element| &t_al(x) + &be(x);
        let lift = |x: Option<&LinMap>, y: Option<&LinMap>, t: &Tensor2| t.lift(x, y);
        let ab = circ.mul(&a, &b);
        let ba = circ.mul(&b, &a);
        let lr_2rl_a = &lr(&a) + &rl(&a).scale(&two);
        let lr_rl_a = &lr(&a) + &rl(&a);
        let rr_ll_b = &rr(&b) + &ll(&b);
        let two_tal_be_a = &t_al(&a).scale(&two) + &be(&a);
        let al_be = |x: &Element| &al(x) + &be(x);

        let e16 = tab(&ab)
            - (lift(Some(&lr_2rl_a), None, &tab(&b))
                + lift(None, Some(&lc(&a)), &tab(&b))
                + lift(None, Some(&rc(&b)), &two_tal_be_a)
                - lift(Some(&rl(&b)), None, &t_al(&a)));
        let lr_rl_b = &lr(&b) + &rl(&b);
        let e17 = t_al(&(&ab - &ba))
            - (lift(Some(&lr_rl_a), None, &t_al(&b)) + lift(None, Some(&lc(&a)), &t_al(&b))
                - lift(Some(&lr_rl_b), None, &t_al(&a))
                - lift(None, Some(&lc(&b)), &t_al(&a)));
        let x = &alg.rhd.mul(&a, &b) + &alg.lhd.mul(&b, &a);
        let e18 = al_be(&x)
            - (lift(None, Some(&rr_ll_b), &two_tal_be_a) - lift(Some(&ll(&b)), None, &al(&a))
                + lift(Some(&lr_2rl_a), None, &al_be(&b))
                + lift(None, Some(&lr_rl_a), &al_be(&b)));
        let y = alg.lhd.mul(&b, &a);
        let e19 = (&(&al_be(&y) - &t_al(&y)) - &t_be(&y))
            - (lift(None, Some(&ll(&b)), &tab(&a)) - lift(Some(&ll(&b)), None, &(&al(&a) + &t_be(&a)))
                + lift(None, Some(&rl(&a)), &al_be(&b))
                - lift(Some(&rl(&a)), None, &(&t_al(&b) + &t_be(&b))));
        let e20 = lift(None, Some(&rc(&b)), &tab(&a)) - lift(Some(&rl(&b)), None, &tab(&a))
            - lift(None, Some(&rc(&a)), &tab(&b))
            + lift(Some(&rl(&a)), None, &tab(&b));
        let e21 = t_al(&ab) - (lift(None, Some(&rc(&b)), &t_al(&a)) + lift(Some(&lr_rl_a), None, &tab(&b)));
        let e22 = lift(None, Some(&rr_ll_b), &t_al(&a))
            - (lift(Some(&rr_ll_b), None, &al(&a)) + lift(None, Some(&lr_rl_a), &(&t_al(&b) + &t_be(&b)))
                - lift(Some(&lr_rl_a), None, &al_be(&b)));
        let e23 = al_be(&y) - (lift(None, Some(&rr_ll_b), &tab(&a)) + lift(Some(&rl(&a)), None, &al_be(&b)));
        [e16, e17, e18, e19, e20, e21, e22, e23]
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(k, t)| {
                Violation::new(Identity::Compatibility(k as u8 + 1), vec![BasisRef::a(i), BasisRef::a(j)], Residual::from(t))
            })
            .collect()
    });
    Ok(Report::new("compatibility", (1..=8).map(Identity::Compatibility).collect(), violations))
}

/// Pre-Novikov identities, coalgebra identities and compatibility.
pub fn check_bialgebra(alg: &PreNovikovTables, co: &PreNovikovCoalgebra) -> Result<Report> {
    ensure_dim("coalgebra", alg.dim(), co.dim())?;
    Ok(Report::group(
        "pre-Novikov bialgebra",
        vec![check_pre_novikov(&alg.lhd, &alg.rhd)?, check_coalgebra(co)?, check_compatibility(alg, co)?],
    ))
}

/// A verified pre-Novikov bialgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreNovikovBialgebra {
    algebra: PreNovikovAlgebra,
    coalgebra: PreNovikovCoalgebra,
}

impl PreNovikovBialgebra {
    pub fn new(alg: PreNovikovTables, co: PreNovikovCoalgebra) -> Result<Self> {
        let report = check_bialgebra(&alg, &co)?;
        if !report.passed() {
            return Err(Error::refused("pre-Novikov bialgebra", report));
        }
        let algebra = PreNovikovAlgebra::from_tables(alg)
            .map_err(|e| Error::Internal(format!("bialgebra passed but its algebra is refused: {e}")))?;
        Ok(PreNovikovBialgebra { algebra, coalgebra: co })
    }

    pub fn algebra(&self) -> &PreNovikovAlgebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &PreNovikovCoalgebra {
        &self.coalgebra
    }

    /// The dual pre-Novikov algebra `(A*, ◁*, ▷*)`.
    pub fn dual_algebra(&self) -> PreNovikovTables {
        coalgebra_to_dual_algebra(&self.coalgebra)
    }
}

impl Deref for PreNovikovBialgebra {
    type Target = PreNovikovAlgebra;
    fn deref(&self) -> &PreNovikovAlgebra {
        &self.algebra
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn t2(n: usize, entries: &[(usize, usize, i64)]) -> Tensor2 {
        let mut t = Tensor2::zeros(n, n);
        for &(i, j, v) in entries {
            t.set(i, j, Scalar::from_int(v));
        }
        t
    }

    fn ex1() -> (PreNovikovTables, PreNovikovCoalgebra) {
        let lhd = StructureConstants::from_products(2, &[((0, 0), &[1, 0]), ((0, 1), &[0, 1]), ((1, 0), &[0, 1])]);
        let alg = PreNovikovTables::new(lhd, StructureConstants::zeros(2)).unwrap();
        let z = Tensor2::zeros(2, 2);
        let co = PreNovikovCoalgebra::from_values(&[t2(2, &[(1, 1, 1)]), z.clone()], &[t2(2, &[(1, 1, -1)]), z])
            .unwrap();
        (alg, co)
    }

    #[test]
    fn dual_algebra_examples() {
        let (_, co) = ex1();
        let d = coalgebra_to_dual_algebra(&co);
        // e2*◁*e2* = e1*, e2*▷*e2* = -e1*, all else zero
        assert_eq!(d.lhd, StructureConstants::from_products(2, &[((1, 1), &[1, 0])]));
        assert_eq!(d.rhd, StructureConstants::from_products(2, &[((1, 1), &[-1, 0])]));
        assert_eq!(dual_algebra_to_coalgebra(&d), co);
        assert!(coalgebra_to_dual_algebra(&PreNovikovCoalgebra::zeros(3)).lhd.is_zero());
    }

    #[test]
    fn coalgebra_examples() {
        let (_, co) = ex1();
        assert!(check_coalgebra(&co).unwrap().passed());
        assert!(check_coalgebra(&PreNovikovCoalgebra::zeros(2)).unwrap().passed());
        // α(e1) = e1⊗e1 alone is fine: its dual is the one-dimensional e1*◁*e1* = e1*
        let ok = PreNovikovCoalgebra::from_values(&[t2(2, &[(0, 0, 1)]), Tensor2::zeros(2, 2)], &[
            Tensor2::zeros(2, 2),
            Tensor2::zeros(2, 2),
        ])
        .unwrap();
        assert!(check_coalgebra(&ok).unwrap().passed());
        // adding α(e2) = e1⊗e2 makes ◁* fail right-commutativity
        let bad = PreNovikovCoalgebra::from_values(&[t2(2, &[(0, 0, 1)]), t2(2, &[(0, 1, 1)])], &[
            Tensor2::zeros(2, 2),
            Tensor2::zeros(2, 2),
        ])
        .unwrap();
        let rep = check_coalgebra(&bad).unwrap();
        assert!(!rep.find_section("coalgebra identities").unwrap().witnesses(Identity::Coalgebra(4)).is_empty());
        assert!(!rep.find_section("dual algebra").unwrap().witnesses(Identity::PreNovikov(4)).is_empty());
    }

    #[test]
    fn dual_route_agrees_on_random_coalgebras() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut failing = 0;
        for _ in 0..300 {
            let mut pick = |w: &[i64]| Tensor3::from_fn(2, |_, _, _| Scalar::from_int(w[rng.gen_range(0..w.len())]));
            let co = PreNovikovCoalgebra::new(pick(&[0, 0, 0, 1, -1]), pick(&[0, 0, 0, 0, 1, -1])).unwrap();
            // errors here would mean the two routes disagree
            failing += usize::from(!check_coalgebra(&co).unwrap().passed());
        }
        assert!(failing > 0);
    }

    #[test]
    fn compatibility_examples() {
        let (alg, co) = ex1();
        assert!(check_compatibility(&alg, &co).unwrap().passed());
        assert!(check_compatibility(&alg, &PreNovikovCoalgebra::zeros(2)).unwrap().passed());
        let neg = PreNovikovCoalgebra::new(co.alpha.clone(), -&co.beta).unwrap();
        let rep = check_compatibility(&alg, &neg).unwrap();
        let at_e1e1 = vec![BasisRef::a(0), BasisRef::a(0)];
        for k in [1, 3, 6, 8] {
            assert!(rep.witnesses(Identity::Compatibility(k)).contains(&at_e1e1), "{k}");
        }
        assert!(check_bialgebra(&alg, &co).unwrap().passed());
        assert!(PreNovikovBialgebra::new(alg.clone(), co).is_ok());
        assert!(matches!(PreNovikovBialgebra::new(alg, neg), Err(Error::Refused { .. })));
        assert!(check_compatibility(&PreNovikovTables::zeros(3), &PreNovikovCoalgebra::zeros(2)).is_err());
    }
}
