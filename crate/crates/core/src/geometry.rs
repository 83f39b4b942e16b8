//! Complex structures, symplectic forms and complex symplectic pairs.
//!
//! A complex symplectic structure on a real Lie algebra is stored as the
//! pair `(J, Ω1)`: `J` integrable with `J² = −I`, `Ω1` closed, nondegenerate
//! and `J`-compatible in the sense `Ω1(JX, Y) = Ω1(X, JY)`. The imaginary
//! part is then `Ω2 = −Ω1∘J`, and `Ω1 + iΩ2` is a closed (2,0)-form.
//!
//! Two-forms are handled both as [`ExteriorForm`]s and as matrices with
//! `M[(i, j)] = Ω(e_i, e_j)`. Precomposition `Ω∘A`, meaning
//! `(X, Y) ↦ Ω(AX, Y)`, is the matrix `Aᵀ M`.
//!
//! ```
//! use csymlie::exact::{int, ExteriorForm, Matrix};
//! use csymlie::geometry::certify_complex_symplectic;
//! use csymlie::lie::LieAlgebra;
//!
//! let kt4 = LieAlgebra::from_structure(4, "f", &[(0, 2, 3, int(1))]).unwrap();
//! let j = Matrix::from_ints(&[&[0, 0, -1, 0], &[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
//! let omega1 = ExteriorForm::parse(4, "-f1^f4 + f2^f3").unwrap();
//! let cs = certify_complex_symplectic(&kt4, &j, &omega1).unwrap();
//! assert_eq!(cs.omega2, ExteriorForm::parse(4, "f1^f2 - f3^f4").unwrap());
//! ```

use crate::exact::matrix::{is_zero_vec, sub_vec, unit};
use crate::exact::{signature, ExteriorForm, Field, GaussianScalar, Matrix, Scalar, Signature, Subspace};
use crate::lie::{fmt_combination, LieAlgebra};
use crate::report::{law, Check, Report};
use crate::Error;

/// `Ω∘A` as a matrix: `(X, Y) ↦ Ω(AX, Y)` is `Aᵀ M`.
pub fn precompose<F: Field>(m: &Matrix<F>, a: &Matrix<F>) -> Result<Matrix<F>, Error> {
    a.transpose().mul(m)
}

/// `N(x, y) = [Jx, Jy] − J[Jx, y] − J[x, Jy] − [x, y]` on basis pairs
/// `j < k`, keeping only nonzero values. Requires `J² = −I`.
pub fn nijenhuis<F: Field>(
    g: &LieAlgebra<F>,
    j: &Matrix<F>,
) -> Result<Vec<((usize, usize), Vec<F>)>, Error> {
    if let Some(c) = j_squared_check(j)? {
        return Err(Error::Rejected(crate::Rejection(vec![c])));
    }
    let n = g.dim();
    let cols: Vec<Vec<F>> = (0..n).map(|i| j.column(i)).collect();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let v = nijenhuis_at(g, j, &cols, a, b)?;
            if !is_zero_vec(&v) {
                out.push(((a, b), v));
            }
        }
    }
    Ok(out)
}

fn nijenhuis_at<F: Field>(
    g: &LieAlgebra<F>,
    j: &Matrix<F>,
    cols: &[Vec<F>],
    a: usize,
    b: usize,
) -> Result<Vec<F>, Error> {
    let n = g.dim();
    let (ea, eb) = (unit::<F>(n, a), unit::<F>(n, b));
    let t1 = g.bracket(&cols[a], &cols[b]);
    let t2 = j.mul_vec(&g.bracket(&cols[a], &eb))?;
    let t3 = j.mul_vec(&g.bracket(&ea, &cols[b]))?;
    let t4 = g.bracket_basis(a, b);
    Ok(sub_vec(&sub_vec(&sub_vec(&t1, &t2), &t3), &t4))
}

/// `None` when `J² = −I`, otherwise the failed check.
fn j_squared_check<F: Field>(j: &Matrix<F>) -> Result<Option<Check>, Error> {
    if !j.is_square() {
        return Err(Error::NotSquare {
            rows: j.rows(),
            cols: j.cols(),
        });
    }
    let sq = j.mul(j)?;
    let minus_id = Matrix::<F>::identity(j.rows()).neg();
    Ok(sq.first_difference(&minus_id).map(|(r, c)| {
        Check::fail(
            law::J_SQUARED,
            vec![r, c],
            format!("(J²)[{},{}] = {}", r + 1, c + 1, sq[(r, c)]),
        )
    }))
}

/// Checks `J² = −I` and integrability.
pub fn check_complex_structure<F: Field>(g: &LieAlgebra<F>, j: &Matrix<F>) -> Result<Vec<Check>, Error> {
    if j.rows() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: j.rows(),
        });
    }
    if let Some(c) = j_squared_check(j)? {
        return Ok(vec![c]);
    }
    let table = nijenhuis(g, j)?;
    let nij = match table.first() {
        None => Check::pass(law::NIJENHUIS),
        Some(((a, b), v)) => Check::fail(
            law::NIJENHUIS,
            vec![*a, *b],
            format!(
                "N({}, {}) = {}",
                g.label(*a),
                g.label(*b),
                fmt_combination(v, g.labels())
            ),
        ),
    };
    Ok(vec![Check::pass(law::J_SQUARED), nij])
}

/// First `(i, j)` with `Ω(Je_i, e_j) ≠ Ω(e_i, Je_j)`.
pub fn compatibility_witness<F: Field>(m: &Matrix<F>, j: &Matrix<F>) -> Result<Option<(usize, usize)>, Error> {
    let lhs = precompose(m, j)?;
    let rhs = m.mul(j)?;
    Ok(lhs.first_difference(&rhs))
}

fn closed_check(g: &LieAlgebra, form: &ExteriorForm, id: &'static str) -> Result<Check, Error> {
    let d = g.ce_differential(form)?;
    let first = d.terms().next().map(|(idx, _)| idx.clone());
    Ok(match first {
        None => Check::pass(id),
        Some(idx) => Check::fail(id, idx, format!("d = {}", d.display_with(&g.dual_labels()))),
    })
}

fn nondegenerate_check(m: &Matrix, id: &'static str) -> Result<Check, Error> {
    let det = m.determinant()?;
    Ok(if det.is_zero() {
        Check::fail(id, vec![], "determinant is 0")
    } else {
        Check::pass(id).with_detail(format!("determinant {det}"))
    })
}

fn compat_check(g: &LieAlgebra, m: &Matrix, j: &Matrix, id: &'static str) -> Result<Check, Error> {
    Ok(match compatibility_witness(m, j)? {
        None => Check::pass(id),
        Some((a, b)) => {
            let lhs = precompose(m, j)?[(a, b)].clone();
            let rhs = m.mul(j)?[(a, b)].clone();
            Check::fail(
                id,
                vec![a, b],
                format!(
                    "Ω(J{x}, {y}) = {lhs} but Ω({x}, J{y}) = {rhs}",
                    x = g.label(a),
                    y = g.label(b)
                ),
            )
        }
    })
}

/// A certified complex symplectic structure.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSymplectic {
    pub j: Matrix,
    pub omega1: ExteriorForm,
    pub omega2: ExteriorForm,
}

impl ComplexSymplectic {
    pub fn omega1_matrix(&self) -> Matrix {
        self.omega1.to_matrix().expect("2-form")
    }

    pub fn omega2_matrix(&self) -> Matrix {
        self.omega2.to_matrix().expect("2-form")
    }

    /// `Ω1 + iΩ2` as a complex matrix.
    pub fn omega_c(&self) -> Matrix<GaussianScalar> {
        let (a, b) = (self.omega1_matrix(), self.omega2_matrix());
        Matrix::from_fn(a.rows(), a.cols(), |r, c| {
            GaussianScalar::new(a[(r, c)].clone(), b[(r, c)].clone())
        })
    }
}

/// Runs every check on `(J, Ω1)` and reports them all, including the
/// consequences for `Ω2 = −Ω1∘J` and the (2,0)-type of `Ω1 + iΩ2`.
pub fn complex_symplectic_report(g: &LieAlgebra, j: &Matrix, omega1: &ExteriorForm) -> Result<Report, Error> {
    let mut r = Report::new("complex symplectic structure");
    let m = omega1.to_matrix()?;
    if m.rows() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: m.rows(),
        });
    }
    let jchecks = check_complex_structure(g, j)?;
    let j_ok = jchecks.iter().all(|c| !c.is_fail());
    let j_square_ok = jchecks[0].law == law::J_SQUARED && !jchecks[0].is_fail();
    for c in jchecks {
        r.push(c);
    }
    r.push(closed_check(g, omega1, law::CLOSED)?);
    r.push(nondegenerate_check(&m, law::NONDEGENERATE)?);
    let compat = compat_check(g, &m, j, law::COMPATIBLE)?;
    let compat_ok = !compat.is_fail();
    r.push(compat);
    if !(compat_ok && j_square_ok) {
        return Ok(r);
    }
    let m2 = precompose(&m, j)?.neg();
    let omega2 = ExteriorForm::from_matrix(&m2)?;
    // consequences, re-verified rather than assumed
    let back = precompose(&m2, j)?;
    r.push(match back.first_difference(&m) {
        None => Check::pass(law::OMEGA2_DEFINITION).with_detail(format!(
            "Ω2 = {}",
            omega2.display_with(&g.dual_labels())
        )),
        Some((a, b)) => Check::fail(law::OMEGA2_DEFINITION, vec![a, b], "Ω2∘J ≠ Ω1"),
    });
    r.push(closed_check(g, &omega2, law::OMEGA2_CLOSED)?);
    r.push(nondegenerate_check(&m2, law::OMEGA2_NONDEGENERATE)?);
    r.push(compat_check(g, &m2, j, law::OMEGA2_COMPATIBLE)?);
    if j_ok {
        let cs = ComplexSymplectic {
            j: j.clone(),
            omega1: omega1.clone(),
            omega2,
        };
        r.push(type_20_check(&cs));
    }
    Ok(r)
}

/// Certifies `(J, Ω1)`, rejecting with every failed law.
pub fn certify_complex_symplectic(
    g: &LieAlgebra,
    j: &Matrix,
    omega1: &ExteriorForm,
) -> Result<ComplexSymplectic, Error> {
    complex_symplectic_report(g, j, omega1)?.into_result()?;
    let omega2 = ExteriorForm::from_matrix(&precompose(&omega1.to_matrix()?, j)?.neg())?;
    Ok(ComplexSymplectic {
        j: j.clone(),
        omega1: omega1.clone(),
        omega2,
    })
}

/// `Ω2 = −Ω1∘J`, after checking that `Ω1` is closed and `J`-compatible.
pub fn derive_omega2(g: &LieAlgebra, j: &Matrix, omega1: &ExteriorForm) -> Result<ExteriorForm, Error> {
    let m = omega1.to_matrix()?;
    let mut r = Report::new("derive Ω2");
    r.push(compat_check(g, &m, j, law::COMPATIBLE)?);
    r.push(closed_check(g, omega1, law::CLOSED)?);
    r.into_result()?;
    let m2 = precompose(&m, j)?.neg();
    let omega2 = ExteriorForm::from_matrix(&m2)?;
    let mut post = Report::new("derive Ω2");
    post.push(closed_check(g, &omega2, law::OMEGA2_CLOSED)?);
    post.push(nondegenerate_check(&m2, law::OMEGA2_NONDEGENERATE)?);
    post.push(compat_check(g, &m2, j, law::OMEGA2_COMPATIBLE)?);
    post.into_result()?;
    Ok(omega2)
}

/// `Ω_c(X + iJX, Y) = 0` for all basis `X`, `Y`, over ℚ(i).
pub fn type_20_witness(cs: &ComplexSymplectic) -> Option<(usize, usize)> {
    let oc = cs.omega_c();
    let jc = cs.j.complexify();
    let n = oc.rows();
    let i = GaussianScalar::i();
    for k in 0..n {
        let z: Vec<GaussianScalar> = (0..n)
            .map(|r| {
                let e = if r == k { GaussianScalar::one() } else { GaussianScalar::zero() };
                e + i.clone() * jc[(r, k)].clone()
            })
            .collect();
        for l in 0..n {
            let v = oc.bilinear(&z, &unit(n, l)).expect("square");
            if !v.is_zero() {
                return Some((k, l));
            }
        }
    }
    None
}

pub fn type_20_check(cs: &ComplexSymplectic) -> Check {
    match type_20_witness(cs) {
        None => Check::pass(law::TYPE_20),
        Some((k, l)) => Check::fail(law::TYPE_20, vec![k, l], "Ω_c(e_k + iJe_k, e_l) ≠ 0"),
    }
}

/// Verifies that `𝔤 ⊕ V` is a special Lagrangian splitting of `(h, J, Ω1)`:
/// `V` an ideal, `𝔤` a subalgebra, both totally real and isotropic. Also
/// checks that an isotropic totally real ideal is abelian and that its image
/// under `J` is a subalgebra.
///
/// Witnesses are the pivot coordinates of the offending basis vectors, which
/// for coordinate subspaces are just the basis indices.
pub fn check_lagrangian_splitting(
    h: &LieAlgebra,
    j: &Matrix,
    omega1: &Matrix,
    g: &Subspace,
    v: &Subspace,
) -> Result<Report, Error> {
    let n = h.dim();
    if g.ambient() != n || v.ambient() != n || omega1.rows() != n || j.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g.ambient().max(v.ambient()),
        });
    }
    let mut r = Report::new("special Lagrangian splitting");
    let sum = g.sum(v);
    r.push(if sum.dim() == n && g.dim() + v.dim() == n {
        Check::pass(law::COMPLEMENTARY)
    } else {
        Check::fail(
            law::COMPLEMENTARY,
            vec![],
            format!("dims {} + {} span {}", g.dim(), v.dim(), sum.dim()),
        )
    });
    let piv = |s: &Subspace, i: usize| s.pivots()[i];
    r.push(match h.subalgebra_witness(g) {
        None => Check::pass(law::SUBALGEBRA),
        Some((a, b)) => Check::fail(law::SUBALGEBRA, vec![piv(g, a), piv(g, b)], "bracket leaves 𝔤"),
    });
    let ideal_ok = match h.ideal_witness(v) {
        None => {
            r.push(Check::pass(law::IDEAL));
            true
        }
        Some((a, b)) => {
            let br = h.bracket(&unit(n, a), &v.basis()[b]);
            r.push(Check::fail(
                law::IDEAL,
                vec![a, piv(v, b)],
                format!(
                    "[{}, {}] = {} is not in V",
                    h.label(a),
                    h.label(piv(v, b)),
                    fmt_combination(&br, h.labels())
                ),
            ));
            false
        }
    };
    let jg = g.image(j)?;
    let jv = v.image(j)?;
    let real_ok = jg == *v && jv == *g;
    r.push(if real_ok {
        Check::pass(law::TOTALLY_REAL)
    } else if jg != *v {
        let bad = g.basis().iter().position(|x| !v.contains(&j.mul_vec(x).expect("dims")));
        let w = bad.map(|b| vec![piv(g, b)]).unwrap_or_default();
        Check::fail(law::TOTALLY_REAL, w, "J𝔤 ≠ V")
    } else {
        let bad = v.basis().iter().position(|x| !g.contains(&j.mul_vec(x).expect("dims")));
        let w = bad.map(|b| vec![piv(v, b)]).unwrap_or_default();
        Check::fail(law::TOTALLY_REAL, w, "JV ≠ 𝔤")
    });
    let iso = isotropy_witness(omega1, g).map(|w| (g, w)).or_else(|| isotropy_witness(omega1, v).map(|w| (v, w)));
    let iso_ok = iso.is_none();
    r.push(match iso {
        None => Check::pass(law::ISOTROPIC).with_detail(format!(
            "Lagrangian: dims {} and {} of {}",
            g.dim(),
            v.dim(),
            n
        )),
        Some((s, (a, b, val))) => Check::fail(
            law::ISOTROPIC,
            vec![piv(s, a), piv(s, b)],
            format!(
                "Ω1({}, {}) = {val}",
                fmt_combination(&s.basis()[a], h.labels()),
                fmt_combination(&s.basis()[b], h.labels())
            ),
        ),
    });
    // consequences for an isotropic totally real ideal
    if ideal_ok && real_ok && iso_ok {
        let vv = h.bracket_spaces(v, v);
        r.push(if vv.dim() == 0 {
            Check::pass(law::IDEAL_ABELIAN)
        } else {
            Check::fail(law::IDEAL_ABELIAN, vec![], "[V, V] ≠ 0")
        });
        r.push(match h.subalgebra_witness(&jv) {
            None => Check::pass(law::J_IDEAL_SUBALGEBRA),
            Some((a, b)) => Check::fail(law::J_IDEAL_SUBALGEBRA, vec![piv(&jv, a), piv(&jv, b)], "bracket leaves JV"),
        });
    } else {
        r.push(Check::pass(law::IDEAL_ABELIAN).with_detail("hypotheses not met"));
        r.push(Check::pass(law::J_IDEAL_SUBALGEBRA).with_detail("hypotheses not met"));
    }
    Ok(r)
}

/// First pair of basis vectors of `s` on which the form is nonzero.
pub fn isotropy_witness(omega: &Matrix, s: &Subspace) -> Option<(usize, usize, Scalar)> {
    let b = s.basis();
    for a in 0..b.len() {
        for c in a + 1..b.len() {
            let val = omega.bilinear(&b[a], &b[c]).expect("dims");
            if !val.is_zero() {
                return Some((a, c, val));
            }
        }
    }
    None
}

/// Checks that `E` is an integrable product structure (`E² = I`, both
/// eigenspaces subalgebras) anticommuting with `J`.
pub fn check_product_structure(h: &LieAlgebra, e: &Matrix, j: &Matrix) -> Result<Vec<Check>, Error> {
    let n = h.dim();
    let id = Matrix::identity(n);
    let sq = e.mul(e)?;
    let mut out = vec![match sq.first_difference(&id) {
        None => Check::pass(law::E_SQUARED),
        Some((a, b)) => Check::fail(law::E_SQUARED, vec![a, b], "E² ≠ I"),
    }];
    let plus = e.sub(&id)?.nullspace();
    let minus = e.add(&id)?.nullspace();
    let integrable = h.subalgebra_witness(&plus).is_none() && h.subalgebra_witness(&minus).is_none();
    out.push(if integrable && plus.dim() + minus.dim() == n {
        Check::pass(law::E_INTEGRABLE).with_detail(format!("eigenspaces of dims {} and {}", plus.dim(), minus.dim()))
    } else {
        Check::fail(law::E_INTEGRABLE, vec![], "an eigenspace of E is not a subalgebra")
    });
    let je = j.mul(e)?;
    let ej = e.mul(j)?.neg();
    out.push(match je.first_difference(&ej) {
        None => Check::pass(law::JE_ANTICOMMUTE),
        Some((a, b)) => Check::fail(law::JE_ANTICOMMUTE, vec![a, b], "JE ≠ −EJ"),
    });
    Ok(out)
}

/// Checks that `g` is symmetric with signature `(m, m, 0)`.
pub fn check_neutral_metric(g: &Matrix) -> Vec<Check> {
    match g.first_asymmetry() {
        Some((a, b)) => vec![
            Check::fail(law::METRIC_SYMMETRIC, vec![a, b], "g is not symmetric"),
            Check::fail(law::METRIC_NEUTRAL, vec![], "signature undefined"),
        ],
        None => {
            let s: Signature = signature(g).expect("symmetric");
            let neutral = if s.is_neutral() {
                Check::pass(law::METRIC_NEUTRAL).with_detail(format!("signature {s}"))
            } else {
                Check::fail(law::METRIC_NEUTRAL, vec![], format!("signature {s}"))
            };
            vec![Check::pass(law::METRIC_SYMMETRIC), neutral]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::report::Status;

    fn standard_j() -> Matrix {
        // f1 ↦ f3, f2 ↦ f4, f3 ↦ −f1, f4 ↦ −f2
        Matrix::from_ints(&[&[0, 0, -1, 0], &[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0]])
    }

    fn form(s: &str) -> ExteriorForm {
        ExteriorForm::parse(4, s).unwrap()
    }

    fn kt4() -> LieAlgebra {
        LieAlgebra::from_structure(4, "f", &[(0, 2, 3, int(1))]).unwrap()
    }

    #[test]
    fn nijenhuis_of_nonintegrable_example() {
        let g = LieAlgebra::from_structure(4, "f", &[(0, 1, 2, int(1))]).unwrap();
        let table = nijenhuis(&g, &standard_j()).unwrap();
        assert_eq!(table[0], ((0, 1), vec![int(0), int(0), int(-1), int(0)]));
        let checks = check_complex_structure(&g, &standard_j()).unwrap();
        assert_eq!(checks[1].status, Status::Fail);
        assert_eq!(checks[1].witness, vec![0, 1]);
    }

    #[test]
    fn nijenhuis_rejects_non_complex_j() {
        let g = kt4();
        assert!(nijenhuis(&g, &Matrix::identity(4)).is_err());
    }

    #[test]
    fn kt4_omega2() {
        let o2 = derive_omega2(&kt4(), &standard_j(), &form("-f1^f4 + f2^f3")).unwrap();
        assert_eq!(o2, form("f1^f2 - f3^f4"));
    }

    #[test]
    fn kt4_rejects_f1_f2() {
        let r = complex_symplectic_report(&kt4(), &standard_j(), &form("f1^f2")).unwrap();
        assert!(!r.passed());
        let c = r.find(law::COMPATIBLE).unwrap();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness, vec![0, 3]);
        assert_eq!(r.status(law::NONDEGENERATE), Some(Status::Fail));
        let err = certify_complex_symplectic(&kt4(), &standard_j(), &form("f1^f2")).unwrap_err();
        assert_eq!(err.failures().len(), 2);
    }

    #[test]
    fn type_20_on_kt4() {
        let cs = certify_complex_symplectic(&kt4(), &standard_j(), &form("-f1^f4 + f2^f3")).unwrap();
        assert_eq!(type_20_witness(&cs), None);
        let bad = ComplexSymplectic {
            omega2: cs.omega2.neg(),
            ..cs
        };
        assert!(type_20_witness(&bad).is_some());
    }

    #[test]
    fn splittings_of_kt4() {
        let h = kt4();
        let m = form("-f1^f4 + f2^f3").to_matrix().unwrap();
        let good = check_lagrangian_splitting(
            &h,
            &standard_j(),
            &m,
            &Subspace::coordinate(4, &[0, 1]),
            &Subspace::coordinate(4, &[2, 3]),
        )
        .unwrap();
        assert!(good.passed(), "{good}");
        let bad = check_lagrangian_splitting(
            &h,
            &standard_j(),
            &m,
            &Subspace::coordinate(4, &[0, 3]),
            &Subspace::coordinate(4, &[1, 2]),
        )
        .unwrap();
        assert_eq!(bad.status(law::IDEAL), Some(Status::Fail));
        assert_eq!(bad.status(law::TOTALLY_REAL), Some(Status::Pass));
        let iso = bad.find(law::ISOTROPIC).unwrap();
        assert_eq!(iso.witness, vec![0, 3]);
        assert!(iso.detail.ends_with("= -1"));
    }

    #[test]
    fn product_and_metric() {
        let h = kt4();
        let e = Matrix::diagonal(&[int(1), int(1), int(-1), int(-1)]);
        let checks = check_product_structure(&h, &e, &standard_j()).unwrap();
        assert!(checks.iter().all(|c| c.status == Status::Pass));
        let g = Matrix::from_ints(&[&[0, 0, 0, 1], &[0, 0, -1, 0], &[0, -1, 0, 0], &[1, 0, 0, 0]]);
        let checks = check_neutral_metric(&g);
        assert!(checks.iter().all(|c| c.status == Status::Pass));
        let checks = check_neutral_metric(&Matrix::identity(4));
        assert_eq!(checks[1].status, Status::Fail);
    }
}
