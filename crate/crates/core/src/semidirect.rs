//! Semi-direct products and the mirror construction.
//!
//! A torsion-free flat connection `γ` on a symplectic Lie algebra `(𝔤, ω)`
//! that preserves `ω` ([`ConnectionData`]) gives a complex symplectic
//! structure on `𝔥 = 𝔤⋉_γ V`, where `V` is a second copy of `𝔤` with basis
//! `v_j` aligned to `e_j`. On `𝔥`:
//!
//! - `J(x, u) = (−u, x)` and `E(x, u) = (x, −u)`;
//! - `Ω1((x,u),(y,v)) = −ω(x,v) − ω(u,y)`, `Ω2 = ω(x,y) − ω(u,v)`,
//!   `Ω3 = ω(x,y) + ω(u,v)`;
//! - `g = Ω2∘(JE)`, a neutral metric.
//!
//! The mirror of `(𝔥, J)` is the dual product `𝔥̂ = 𝔤⋉_{γ*} V*` with
//! `Ω̂((x,μ),(y,ν)) = ν(Jx) − μ(Jy)`, and the mirror of `(𝔥, Ω1)` is
//! `Ĵ(x,μ) = (−Ω⁻¹(μ), Ω(x))` on the same space. [`verify_self_mirror`]
//! checks that `ϖ(x, u) = (x, ω(·, u))` is a Lie isomorphism `𝔥 → 𝔥̂` taking
//! `Ω1` to `−Ω̂` and `J` to `Ĵ`.
//!
//! Note the contraction slot in `ϖ`: with `ω(·, u)` both identities hold
//! exactly, while the first-slot contraction `ι_u ω = −ω(·, u)` flips both
//! signs (see the tests).

use serde::{Deserialize, Serialize};

use crate::exact::matrix::{is_zero_vec, sub_vec, unit};
use crate::exact::{ExteriorForm, Field, FormFile, Matrix, Scalar, Subspace};
use crate::geometry::{
    check_complex_structure, check_lagrangian_splitting, check_neutral_metric, check_product_structure,
    complex_symplectic_report, isotropy_witness, precompose,
};
use crate::lie::{fmt_combination, numbered_labels, AlgebraFile, LieAlgebra};
use crate::report::{law, Check, Report};
use crate::Error;

/// A linear representation `γ: 𝔤 → End(V)`, one matrix per basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub algebra: LieAlgebra,
    pub matrices: Vec<Matrix>,
}

impl Representation {
    pub fn new(algebra: LieAlgebra, matrices: Vec<Matrix>) -> Result<Self, Error> {
        if matrices.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: matrices.len(),
            });
        }
        let m = matrices.first().map_or(0, Matrix::rows);
        if let Some(bad) = matrices.iter().find(|a| a.rows() != m || a.cols() != m) {
            return Err(Error::NotSquare {
                rows: bad.rows(),
                cols: bad.cols(),
            });
        }
        Ok(Representation { algebra, matrices })
    }

    pub fn v_dim(&self) -> usize {
        self.matrices.first().map_or(0, Matrix::rows)
    }

    /// `γ(x)` for `x` in coordinates.
    pub fn at(&self, x: &[Scalar]) -> Matrix {
        let m = self.v_dim();
        let mut out = Matrix::zeros(m, m);
        for (c, a) in x.iter().zip(&self.matrices) {
            if !c.is_zero() {
                out = out.add(&a.scale(c)).expect("same size");
            }
        }
        out
    }

    /// First basis pair with `γ([x,y]) ≠ γ(x)γ(y) − γ(y)γ(x)`.
    pub fn law_witness(&self) -> Option<(usize, usize)> {
        let n = self.algebra.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.at(&self.algebra.bracket_basis(i, j));
                let (a, b) = (&self.matrices[i], &self.matrices[j]);
                let rhs = a.mul(b).and_then(|ab| ab.sub(&b.mul(a)?)).expect("square");
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn check(&self, id: &'static str) -> Check {
        match self.law_witness() {
            None => Check::pass(id),
            Some((i, j)) => Check::fail(
                id,
                vec![i, j],
                format!(
                    "γ([{a}, {b}]) ≠ [γ({a}), γ({b})]",
                    a = self.algebra.label(i),
                    b = self.algebra.label(j)
                ),
            ),
        }
    }

    /// `γ*(x) = −γ(x)ᵀ` in the dual basis.
    pub fn dual(&self) -> Representation {
        Representation {
            algebra: self.algebra.clone(),
            matrices: self.matrices.iter().map(|a| a.transpose().neg()).collect(),
        }
    }
}

/// `𝔤⋉_γ V` with `[(x,u),(y,v)] = ([x,y], γ(x)v − γ(y)u)`. The basis is
/// that of `𝔤` followed by `v_labels`.
pub fn semidirect_product(rep: &Representation, v_labels: Vec<String>) -> Result<LieAlgebra, Error> {
    let mut r = Report::new("semi-direct product");
    r.push(rep.check(law::REPRESENTATION));
    r.into_result()?;
    let g = &rep.algebra;
    let (n, m) = (g.dim(), rep.v_dim());
    if v_labels.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: v_labels.len(),
        });
    }
    let mut labels = g.labels().to_vec();
    labels.extend(v_labels);
    let mut h = LieAlgebra::abelian(labels);
    for (&(j, k), v) in g.brackets() {
        let mut w = v.clone();
        w.resize(n + m, Scalar::zero());
        h.set_bracket(j, k, w)?;
    }
    for i in 0..n {
        for b in 0..m {
            let col = rep.matrices[i].column(b);
            if is_zero_vec(&col) {
                continue;
            }
            let mut w = vec![Scalar::zero(); n];
            w.extend(col);
            h.set_bracket(i, n + b, w)?;
        }
    }
    Ok(h)
}

/// Labels for `𝔤 ⊕ V`: `f1…f2n` when `𝔤` uses `e`-labels, otherwise the
/// labels of `𝔤` followed by a fresh letter.
pub fn product_labels(g_labels: &[String]) -> Vec<String> {
    let n = g_labels.len();
    if g_labels.iter().all(|l| l.starts_with('e')) {
        return numbered_labels("f", 2 * n);
    }
    let fresh = ["v", "w", "u", "z", "y", "x"]
        .into_iter()
        .find(|p| !g_labels.iter().any(|l| l.starts_with(p)))
        .unwrap_or("v");
    let mut labels = g_labels.to_vec();
    labels.extend(numbered_labels(fresh, n));
    labels
}

/// A symplectic Lie algebra `(𝔤, ω)` with a connection `γ` on it.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionData {
    pub algebra: LieAlgebra,
    pub omega: ExteriorForm,
    pub gamma: Vec<Matrix>,
}

impl ConnectionData {
    pub fn new(algebra: LieAlgebra, omega: ExteriorForm, gamma: Vec<Matrix>) -> Result<Self, Error> {
        let n = algebra.dim();
        if omega.dim() != n || omega.degree() != 2 {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: omega.dim(),
            });
        }
        Representation::new(algebra.clone(), gamma.clone())?;
        if let Some(a) = gamma.first() {
            if a.rows() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: a.rows(),
                });
            }
        }
        Ok(ConnectionData { algebra, omega, gamma })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn representation(&self) -> Representation {
        Representation {
            algebra: self.algebra.clone(),
            matrices: self.gamma.clone(),
        }
    }

    pub fn omega_matrix(&self) -> Matrix {
        self.omega.to_matrix().expect("2-form")
    }

    /// First pair with `γ(e_i)e_j − γ(e_j)e_i ≠ [e_i, e_j]`.
    pub fn torsion_witness(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let t = sub_vec(&self.gamma[i].column(j), &self.gamma[j].column(i));
                if t != self.algebra.bracket_basis(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First triple with `ω(γ(e_i)e_j, e_k) + ω(e_j, γ(e_i)e_k) ≠ 0`.
    pub fn symplectic_witness(&self) -> Option<(usize, usize, usize)> {
        let w = self.omega_matrix();
        for (i, a) in self.gamma.iter().enumerate() {
            // γᵀW + Wγ must vanish
            let s = a.transpose().mul(&w).and_then(|x| x.add(&w.mul(a)?)).expect("square");
            if let Some((j, k)) = (0..self.dim())
                .flat_map(|j| (0..self.dim()).map(move |k| (j, k)))
                .find(|&(j, k)| !s[(j, k)].is_zero())
            {
                return Some((i, j, k));
            }
        }
        None
    }

    /// Torsion-free, flat, `ω`-preserving, and `ω` symplectic.
    pub fn check(&self) -> Result<Report, Error> {
        let labels = self.algebra.labels();
        let mut r = Report::new("connection");
        r.push(match self.torsion_witness() {
            None => Check::pass(law::TORSION_FREE),
            Some((i, j)) => {
                let t = sub_vec(&self.gamma[i].column(j), &self.gamma[j].column(i));
                Check::fail(
                    law::TORSION_FREE,
                    vec![i, j],
                    format!(
                        "γ({a}){b} − γ({b}){a} = {} but [{a}, {b}] = {}",
                        fmt_combination(&t, labels),
                        fmt_combination(&self.algebra.bracket_basis(i, j), labels),
                        a = labels[i],
                        b = labels[j]
                    ),
                )
            }
        });
        r.push(match self.symplectic_witness() {
            None => Check::pass(law::PRESERVES_OMEGA),
            Some((i, j, k)) => Check::fail(law::PRESERVES_OMEGA, vec![i, j, k], format!("γ({}) is not in sp(ω)", labels[i])),
        });
        r.push(self.representation().check(law::FLAT));
        r.push(if self.algebra.is_closed(&self.omega)? {
            Check::pass(law::OMEGA_CLOSED)
        } else {
            Check::fail(law::OMEGA_CLOSED, vec![], "dω ≠ 0")
        });
        r.push(if self.omega_matrix().is_invertible() {
            Check::pass(law::OMEGA_NONDEGENERATE)
        } else {
            Check::fail(law::OMEGA_NONDEGENERATE, vec![], "det ω = 0")
        });
        Ok(r)
    }

    pub fn to_file(&self) -> ConnectionFile {
        ConnectionFile {
            algebra: self.algebra.to_file(),
            omega: self.omega.to_file(),
            gamma: self.gamma.clone(),
        }
    }

    pub fn from_file(file: &ConnectionFile) -> Result<Self, Error> {
        let algebra = LieAlgebra::from_file(&file.algebra)?;
        let omega = ExteriorForm::from_file(algebra.dim(), &file.omega)?;
        Self::new(algebra, omega, file.gamma.clone())
    }
}

/// Wire format `{ "algebra": …, "omega": …, "gamma": [matrix per basis element] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConnectionFile {
    pub algebra: AlgebraFile,
    pub omega: FormFile,
    pub gamma: Vec<Matrix>,
}

/// Everything built on `𝔥 = 𝔤⋉_γ V` from a connection.
#[derive(Clone, Debug)]
pub struct SpecialLagrangian {
    pub connection: ConnectionData,
    pub h: LieAlgebra,
    pub j: Matrix,
    pub e: Matrix,
    pub omega1: ExteriorForm,
    pub omega2: ExteriorForm,
    pub omega3: ExteriorForm,
    pub metric: Matrix,
}

impl SpecialLagrangian {
    /// Dimension of `𝔤`.
    pub fn n(&self) -> usize {
        self.connection.dim()
    }

    pub fn g_space(&self) -> Subspace {
        Subspace::coordinate(2 * self.n(), &(0..self.n()).collect::<Vec<_>>())
    }

    pub fn v_space(&self) -> Subspace {
        Subspace::coordinate(2 * self.n(), &(self.n()..2 * self.n()).collect::<Vec<_>>())
    }

    pub fn omega_matrices(&self) -> [Matrix; 3] {
        [&self.omega1, &self.omega2, &self.omega3].map(|f| f.to_matrix().expect("2-form"))
    }

    /// Every property the construction promises, checked exactly.
    pub fn verify(&self) -> Result<Report, Error> {
        let mut r = Report::new("special Lagrangian structure");
        r.push(self.h.check_jacobi());
        r.absorb(complex_symplectic_report(&self.h, &self.j, &self.omega1)?);
        let [m1, m2, m3] = self.omega_matrices();
        r.absorb(check_lagrangian_splitting(&self.h, &self.j, &m1, &self.g_space(), &self.v_space())?);
        r.push(if self.h.is_closed(&self.omega3)? && m3.is_invertible() {
            Check::pass(law::OMEGA3_CLOSED)
        } else {
            Check::fail(law::OMEGA3_CLOSED, vec![], "Ω3 is not a closed nondegenerate form")
        });
        for c in check_product_structure(&self.h, &self.e, &self.j)? {
            r.push(c);
        }
        for c in check_neutral_metric(&self.metric) {
            r.push(c);
        }
        r.push(relations_check(&self.j, &self.e, &m1, &m2, &m3)?);
        r.push(metric_relations_check(&self.j, &self.e, &self.metric, &m1, &m2, &m3)?);
        r.push(self.gamma_consistency());
        Ok(r)
    }

    /// `−J[x, Jy] = γ(x)y` for `x, y ∈ 𝔤`.
    pub fn gamma_consistency(&self) -> Check {
        let n = self.n();
        for i in 0..n {
            for k in 0..n {
                let jy = self.j.column(k);
                let br = self.h.bracket(&unit(2 * n, i), &jy);
                let lhs = self.j.mul_vec(&br).expect("dims");
                let mut rhs = self.connection.gamma[i].column(k);
                rhs.resize(2 * n, Scalar::zero());
                let lhs: Vec<Scalar> = lhs.into_iter().map(|c| -c).collect();
                if lhs != rhs {
                    return Check::fail(law::GAMMA_CONSISTENT, vec![i, k], "−J[x, Jy] ≠ γ(x)y");
                }
            }
        }
        Check::pass(law::GAMMA_CONSISTENT)
    }
}

/// `Ω1 = Ω2∘J`, `Ω3 = Ω2∘E`, `Ω2 = −Ω1∘J`, `Ω2 = Ω3∘E`.
pub fn relations_check(j: &Matrix, e: &Matrix, m1: &Matrix, m2: &Matrix, m3: &Matrix) -> Result<Check, Error> {
    let pairs = [
        ("Ω1 = Ω2∘J", m1.clone(), precompose(m2, j)?),
        ("Ω3 = Ω2∘E", m3.clone(), precompose(m2, e)?),
        ("Ω2 = −Ω1∘J", m2.clone(), precompose(m1, j)?.neg()),
        ("Ω2 = Ω3∘E", m2.clone(), precompose(m3, e)?),
    ];
    for (name, a, b) in pairs {
        if let Some((r, c)) = a.first_difference(&b) {
            return Ok(Check::fail(law::RELATIONS, vec![r, c], format!("{name} fails")));
        }
    }
    Ok(Check::pass(law::RELATIONS))
}

/// `Ω1 = g(E·,·)`, `Ω2 = g(JE·,·)`, `Ω3 = g(J·,·)` and `g = Ω2∘(JE)`.
pub fn metric_relations_check(
    j: &Matrix,
    e: &Matrix,
    g: &Matrix,
    m1: &Matrix,
    m2: &Matrix,
    m3: &Matrix,
) -> Result<Check, Error> {
    let je = j.mul(e)?;
    let pairs = [
        ("Ω1 = g(E·,·)", m1.clone(), precompose(g, e)?),
        ("Ω2 = g(JE·,·)", m2.clone(), precompose(g, &je)?),
        ("Ω3 = g(J·,·)", m3.clone(), precompose(g, j)?),
        ("g = Ω2∘(JE)", g.clone(), precompose(m2, &je)?),
    ];
    for (name, a, b) in pairs {
        if let Some((r, c)) = a.first_difference(&b) {
            return Ok(Check::fail(law::METRIC_RELATIONS, vec![r, c], format!("{name} fails")));
        }
    }
    Ok(Check::pass(law::METRIC_RELATIONS))
}

/// Builds `𝔥 = 𝔤⋉_γ V` with `J`, `E`, `Ω1`, `Ω2`, `Ω3` and `g`, rejecting
/// connections that break one of the three laws and verifying the result.
pub fn build_special_lagrangian(c: &ConnectionData) -> Result<SpecialLagrangian, Error> {
    c.check()?.into_result()?;
    let n = c.dim();
    let labels = product_labels(c.algebra.labels());
    let v_labels = labels[n..].to_vec();
    let h = semidirect_product(&c.representation(), v_labels)?;
    let h = {
        let mut h2 = LieAlgebra::abelian(labels);
        for (&(a, b), v) in h.brackets() {
            h2.set_bracket(a, b, v.clone())?;
        }
        h2
    };
    let w = c.omega_matrix();
    let id = Matrix::identity(n);
    let zero = Matrix::zeros(n, n);
    let j = Matrix::block(&zero, &id.neg(), &id, &zero)?;
    let e = Matrix::block_diagonal(&id, &id.neg());
    let m1 = Matrix::block(&zero, &w.neg(), &w.neg(), &zero)?;
    let m2 = Matrix::block_diagonal(&w, &w.neg());
    let m3 = Matrix::block_diagonal(&w, &w);
    let metric = precompose(&m2, &j.mul(&e)?)?;
    let sl = SpecialLagrangian {
        connection: c.clone(),
        h,
        j,
        e,
        omega1: ExteriorForm::from_matrix(&m1)?,
        omega2: ExteriorForm::from_matrix(&m2)?,
        omega3: ExteriorForm::from_matrix(&m3)?,
        metric,
    };
    sl.verify()?.into_result()?;
    Ok(sl)
}

/// `Ω̂((x,μ),(y,ν)) = ν(Jx) − μ(Jy)` on `𝔤 ⊕ V*`, for `J` on `𝔤 ⊕ V` with
/// `dim 𝔤 = n`.
pub fn mirror_form_matrix(j: &Matrix, n: usize) -> Matrix {
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for k in 0..n {
            let c = j[(n + k, i)].clone();
            m[(i, n + k)] = c.clone();
            m[(n + k, i)] = -c;
        }
    }
    m
}

/// `Ĵ(x,μ) = (−Ω⁻¹(μ), Ω(x))` on `𝔤 ⊕ V*`, where `Ω(x) = Ω(x, ·)|_V`.
pub fn mirror_complex_matrix(omega: &Matrix, n: usize) -> Result<Matrix, Error> {
    let b = Matrix::from_fn(n, n, |k, i| omega[(i, n + k)].clone());
    let binv = b.inverse()?;
    let zero = Matrix::zeros(n, n);
    Matrix::block(&zero, &binv.neg(), &b, &zero)
}

/// The dual product `𝔥̂ = 𝔤⋉_{γ*} V*`, with `V*` labelled by the dual
/// basis `v^k`.
pub fn dual_product(c: &ConnectionData) -> Result<LieAlgebra, Error> {
    let n = c.dim();
    let dual_v: Vec<String> = if c.algebra.labels().iter().all(|l| l.starts_with('e')) {
        (1..=n).map(|k| format!("v^{k}")).collect()
    } else {
        let labels = product_labels(c.algebra.labels());
        labels[n..].iter().map(|l| crate::lie::dual_label(l)).collect()
    };
    semidirect_product(&c.representation().dual(), dual_v)
}

/// `(𝔥̂, Ω̂)` from `(𝔥, J)`; checks that `J` makes the splitting totally real.
pub fn mirror_symplectic(sl: &SpecialLagrangian) -> Result<(LieAlgebra, ExteriorForm), Error> {
    let n = sl.n();
    if sl.g_space().image(&sl.j)? != sl.v_space() {
        return Err(Error::Rejected(crate::Rejection(vec![Check::fail(
            law::TOTALLY_REAL,
            vec![],
            "J𝔤 ≠ V",
        )])));
    }
    let hat = dual_product(&sl.connection)?;
    Ok((hat, ExteriorForm::from_matrix(&mirror_form_matrix(&sl.j, n))?))
}

/// `(𝔥̂, Ĵ)` from `(𝔥, Ω1)`; checks that the splitting is Lagrangian.
pub fn mirror_complex(sl: &SpecialLagrangian) -> Result<(LieAlgebra, Matrix), Error> {
    let n = sl.n();
    let m1 = sl.omega1.to_matrix()?;
    if isotropy_witness(&m1, &sl.g_space()).is_some() || isotropy_witness(&m1, &sl.v_space()).is_some() {
        return Err(Error::Rejected(crate::Rejection(vec![Check::fail(
            law::ISOTROPIC,
            vec![],
            "splitting is not Lagrangian",
        )])));
    }
    let hat = dual_product(&sl.connection)?;
    Ok((hat, mirror_complex_matrix(&m1, n)?))
}

/// `ϖ(x, u) = (x, ω(·, u))` as a matrix `𝔥 → 𝔥̂`.
pub fn varpi(c: &ConnectionData) -> Matrix {
    Matrix::block_diagonal(&Matrix::identity(c.dim()), &c.omega_matrix())
}

/// Full mirror verification of a connection: the construction itself, the
/// mirror structures, `ϖ` as a Lie isomorphism, `Ω̂ = −Ω̃`, `Ĵ = J̃`, and
/// that mirroring twice gives back `(J, Ω1)`.
pub fn verify_self_mirror(c: &ConnectionData) -> Result<Report, Error> {
    let mut r = Report::new("self-mirror");
    let pre = c.check()?;
    let ok = pre.passed();
    r.absorb(pre);
    if !ok {
        return Ok(r);
    }
    let sl = build_special_lagrangian(c)?;
    let n = sl.n();
    let (hat, omega_hat) = mirror_symplectic(&sl)?;
    let (_, j_hat) = mirror_complex(&sl)?;
    let oh = omega_hat.to_matrix()?;

    let mut sym = Vec::new();
    if !hat.is_closed(&omega_hat)? {
        sym.push("Ω̂ not closed");
    }
    if !oh.is_invertible() {
        sym.push("Ω̂ degenerate");
    }
    r.push(if sym.is_empty() {
        Check::pass(law::MIRROR_SYMPLECTIC)
    } else {
        Check::fail(law::MIRROR_SYMPLECTIC, vec![], sym.join(", "))
    });
    r.push(
        match isotropy_witness(&oh, &sl.g_space()).or_else(|| isotropy_witness(&oh, &sl.v_space())) {
            None => Check::pass(law::MIRROR_LAGRANGIAN),
            Some((a, b, _)) => Check::fail(law::MIRROR_LAGRANGIAN, vec![a, b], "Ω̂ nonzero on a summand"),
        },
    );
    let jc = check_complex_structure(&hat, &j_hat)?;
    r.push(match jc.iter().find(|c| c.is_fail()) {
        None => Check::pass(law::MIRROR_COMPLEX),
        Some(f) => Check::fail(law::MIRROR_COMPLEX, f.witness.clone(), f.summary()),
    });
    r.push(if sl.g_space().image(&j_hat)? == sl.v_space() && sl.v_space().image(&j_hat)? == sl.g_space() {
        Check::pass(law::MIRROR_TOTALLY_REAL)
    } else {
        Check::fail(law::MIRROR_TOTALLY_REAL, vec![], "Ĵ does not swap 𝔤 and V*")
    });

    let p = varpi(c);
    let iso = sl.h.check_isomorphism(&p, &hat)?;
    let iso_ok = iso.iter().all(|c| !c.is_fail());
    r.push(if iso_ok {
        Check::pass(law::VARPI_ISOMORPHISM)
    } else {
        let f = iso.iter().find(|c| c.is_fail()).expect("some failure");
        Check::fail(law::VARPI_ISOMORPHISM, f.witness.clone(), f.summary())
    });
    if !iso_ok {
        return Ok(r);
    }
    let pinv = p.inverse()?;
    let m1 = sl.omega1.to_matrix()?;
    let omega_tilde = pinv.transpose().mul(&m1)?.mul(&pinv)?;
    let j_tilde = p.mul(&sl.j)?.mul(&pinv)?;
    r.push(match oh.first_difference(&omega_tilde.neg()) {
        None => Check::pass(law::OMEGA_HAT),
        Some((a, b)) => Check::fail(
            law::OMEGA_HAT,
            vec![a, b],
            format!("Ω̂ = {} but Ω̃ = {}", oh[(a, b)], omega_tilde[(a, b)]),
        ),
    });
    r.push(match j_hat.first_difference(&j_tilde) {
        None => Check::pass(law::J_HAT),
        Some((a, b)) => Check::fail(
            law::J_HAT,
            vec![a, b],
            format!("Ĵ = {} but J̃ = {}", j_hat[(a, b)], j_tilde[(a, b)]),
        ),
    });
    // mirror again, identifying V** with V
    let j_back = mirror_complex_matrix(&oh, n)?;
    let omega_back = mirror_form_matrix(&j_hat, n);
    r.push(if j_back == sl.j && omega_back == m1 {
        Check::pass(law::ROUND_TRIP)
    } else {
        Check::fail(law::ROUND_TRIP, vec![], "double mirror differs from (J, Ω1)")
    });
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};
    use crate::lie::numbered_labels;
    use crate::report::Status;

    fn plane() -> ExteriorForm {
        ExteriorForm::parse(2, "e1^e2").unwrap()
    }

    fn kt4_data() -> ConnectionData {
        let g = LieAlgebra::abelian(numbered_labels("e", 2));
        let g1 = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        ConnectionData::new(g, plane(), vec![g1, Matrix::zeros(2, 2)]).unwrap()
    }

    fn aff_case3() -> ConnectionData {
        let g = LieAlgebra::from_structure(2, "e", &[(0, 1, 1, int(1))]).unwrap();
        let g1 = Matrix::diagonal(&[frac(-1, 2), frac(1, 2)]);
        let g2 = Matrix::from_rows(vec![vec![int(0), int(0)], vec![frac(-1, 2), int(0)]]).unwrap();
        ConnectionData::new(g, plane(), vec![g1, g2]).unwrap()
    }

    #[test]
    fn kt4_product() {
        let sl = build_special_lagrangian(&kt4_data()).unwrap();
        assert_eq!(sl.h.describe(), "[f1, f3] = f4");
        let f = |s| ExteriorForm::parse(4, s).unwrap();
        assert_eq!(sl.omega1, f("-f1^f4 + f2^f3"));
        assert_eq!(sl.omega2, f("f1^f2 - f3^f4"));
        assert_eq!(sl.omega3, f("f1^f2 + f3^f4"));
    }

    #[test]
    fn aff_case3_product() {
        let sl = build_special_lagrangian(&aff_case3()).unwrap();
        assert_eq!(
            sl.h.describe(),
            "[f1, f2] = f2, [f1, f3] = -1/2 f3, [f1, f4] = 1/2 f4, [f2, f3] = -1/2 f4"
        );
    }

    #[test]
    fn dual_representation_of_kt4() {
        let d = kt4_data().representation().dual();
        assert_eq!(d.matrices[0], Matrix::from_ints(&[&[0, -1], &[0, 0]]));
        let hat = dual_product(&kt4_data()).unwrap();
        assert_eq!(hat.describe(), "[e1, v^2] = -v^1");
    }

    #[test]
    fn rejects_bad_connection() {
        let g = LieAlgebra::abelian(numbered_labels("e", 2));
        let bad = ConnectionData::new(g, plane(), vec![Matrix::identity(2), Matrix::zeros(2, 2)]).unwrap();
        let err = build_special_lagrangian(&bad).unwrap_err();
        let laws: Vec<&str> = err.failures().iter().map(|c| c.law).collect();
        assert!(laws.contains(&law::TORSION_FREE));
        assert!(laws.contains(&law::PRESERVES_OMEGA));
    }

    #[test]
    fn self_mirror_holds() {
        for c in [kt4_data(), aff_case3()] {
            let r = verify_self_mirror(&c).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!(r.status(law::OMEGA_HAT), Some(Status::Pass));
            assert_eq!(r.status(law::J_HAT), Some(Status::Pass));
        }
    }

    #[test]
    fn first_slot_contraction_flips_signs() {
        let c = kt4_data();
        let sl = build_special_lagrangian(&c).unwrap();
        let n = c.dim();
        // ϖ with ι_u ω instead of ω(·, u)
        let p = Matrix::block_diagonal(&Matrix::identity(n), &c.omega_matrix().transpose());
        let hat = dual_product(&c).unwrap();
        assert!(sl.h.check_homomorphism(&p, &hat).unwrap().status == Status::Pass);
        let pinv = p.inverse().unwrap();
        let m1 = sl.omega1.to_matrix().unwrap();
        let omega_tilde = pinv.transpose().mul(&m1).unwrap().mul(&pinv).unwrap();
        let j_tilde = p.mul(&sl.j).unwrap().mul(&pinv).unwrap();
        let oh = mirror_form_matrix(&sl.j, n);
        let jh = mirror_complex_matrix(&m1, n).unwrap();
        assert_eq!(oh, omega_tilde);
        assert_eq!(jh, j_tilde.neg());
    }
}
