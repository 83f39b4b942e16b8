//! The hypersymplectic structure on `𝔥 = 𝔤⋉_ρ V` and the tower it starts.
//!
//! The connection `Γ_(x,x')(y,y') = (ρ(x)y, ρ(x)y')` on `𝔥` is torsion-free,
//! flat, and parallelizes `J`, `E`, `Ω1`, `Ω2`, `Ω3` and the neutral metric.
//! So `(𝔥, Ωi, Γ)` is again a [`ConnectionData`], and the construction
//! repeats on `𝔥⋉_Γ W`, doubling the dimension each time.
//!
//! ```
//! use csymlie::{catalog, tower};
//!
//! let kt4 = catalog::entry("kt4").unwrap();
//! let sl = csymlie::semidirect::build_special_lagrangian(&kt4.connection).unwrap();
//! let up = tower::extend_tower(&sl, &tower::Polarization::Omega1).unwrap();
//! assert_eq!(up.next.h.dim(), 8);
//! assert_eq!(up.next.h.center().dim(), 4);
//! ```

use std::fmt;

use crate::exact::matrix::{sub_vec, unit};
use crate::exact::{ExteriorForm, Field, Matrix, Scalar};
use crate::geometry::check_neutral_metric;
use crate::report::{law, Check, Report};
use crate::semidirect::{build_special_lagrangian, metric_relations_check, relations_check, ConnectionData, SpecialLagrangian};
use crate::Error;

/// `Γ` on `𝔥`, one matrix per basis vector of `𝔥`.
#[derive(Clone, Debug, PartialEq)]
pub struct TowerConnection {
    pub gamma: Vec<Matrix>,
}

/// `Γ_{e_j} = diag(γ(e_j), γ(e_j))` and `Γ_{v_j} = 0`.
pub fn build_tower_connection(sl: &SpecialLagrangian) -> Result<TowerConnection, Error> {
    let n = sl.n();
    // the splitting must match the brackets of 𝔥: [e_i, v_j] = γ(e_i)v_j
    for i in 0..n {
        for j in 0..n {
            let br = sl.h.bracket(&unit(2 * n, i), &unit(2 * n, n + j));
            let mut expected = vec![Scalar::zero(); n];
            expected.extend(sl.connection.gamma[i].column(j));
            if br != expected {
                return Err(Error::Rejected(crate::Rejection(vec![Check::fail(
                    law::TOWER_FORMULA,
                    vec![i, n + j],
                    "splitting data disagrees with the brackets",
                )])));
            }
        }
    }
    let mut gamma = Vec::with_capacity(2 * n);
    for g in &sl.connection.gamma {
        gamma.push(Matrix::block_diagonal(g, g));
    }
    for _ in 0..n {
        gamma.push(Matrix::zeros(2 * n, 2 * n));
    }
    Ok(TowerConnection { gamma })
}

impl TowerConnection {
    fn at(&self, x: &[Scalar]) -> Matrix {
        let m = self.gamma.len();
        let mut out = Matrix::zeros(m, m);
        for (c, a) in x.iter().zip(&self.gamma) {
            if !c.is_zero() {
                out = out.add(&a.scale(c)).expect("same size");
            }
        }
        out
    }

    /// Every property of `Γ`, each checked on all basis pairs.
    pub fn check(&self, sl: &SpecialLagrangian) -> Result<Report, Error> {
        let h = &sl.h;
        let m = h.dim();
        let n = sl.n();
        let mut r = Report::new("tower connection");

        let mut formula = None;
        for i in 0..n {
            let g = &sl.connection.gamma[i];
            if self.gamma[i] != Matrix::block_diagonal(g, g) || !self.gamma[n + i].is_zero() {
                formula = Some((vec![i], String::new()));
                break;
            }
        }
        r.push(Check::from_witness(law::TOWER_FORMULA, formula));

        let mut torsion = None;
        let mut flat = None;
        for a in 0..m {
            for b in a + 1..m {
                let t = sub_vec(&self.gamma[a].column(b), &self.gamma[b].column(a));
                if torsion.is_none() && t != h.bracket_basis(a, b) {
                    torsion = Some((vec![a, b], String::new()));
                }
                let lhs = self.at(&h.bracket_basis(a, b));
                let (x, y) = (&self.gamma[a], &self.gamma[b]);
                let rhs = x.mul(y)?.sub(&y.mul(x)?)?;
                if flat.is_none() && lhs != rhs {
                    flat = Some((vec![a, b], String::new()));
                }
            }
        }
        r.push(Check::from_witness(law::TOWER_TORSION_FREE, torsion));
        r.push(Check::from_witness(law::TOWER_FLAT, flat));

        let [m1, m2, m3] = sl.omega_matrices();
        let mut parallel = None;
        let mut levi = None;
        for (a, gx) in self.gamma.iter().enumerate() {
            for (name, t) in [("J", &sl.j), ("E", &sl.e)] {
                if parallel.is_none() && gx.mul(t)? != t.mul(gx)? {
                    parallel = Some((vec![a], format!("Γ{name} ≠ 0")));
                }
            }
            for (name, f) in [("Ω1", &m1), ("Ω2", &m2), ("Ω3", &m3)] {
                if parallel.is_none() && !gx.transpose().mul(f)?.add(&f.mul(gx)?)?.is_zero() {
                    parallel = Some((vec![a], format!("Γ{name} ≠ 0")));
                }
            }
            if levi.is_none() && !gx.transpose().mul(&sl.metric)?.add(&sl.metric.mul(gx)?)?.is_zero() {
                levi = Some((vec![a], String::new()));
            }
        }
        r.push(Check::from_witness(law::PARALLEL, parallel));
        r.push(Check::from_witness(law::LEVI_CIVITA, levi));

        // on 𝔤: Γ_x y = γ(x)y = −J[x, Jy]
        let mut restriction = None;
        'outer: for i in 0..n {
            for k in 0..n {
                let lhs = self.gamma[i].column(k);
                let mut gy = sl.connection.gamma[i].column(k);
                gy.resize(m, Scalar::zero());
                let jb = sl.j.mul_vec(&h.bracket(&unit(m, i), &sl.j.column(k)))?;
                let neg: Vec<Scalar> = jb.into_iter().map(|c| -c).collect();
                if lhs != gy || lhs != neg {
                    restriction = Some((vec![i, k], String::new()));
                    break 'outer;
                }
            }
        }
        r.push(Check::from_witness(law::TOWER_RESTRICTION, restriction));
        Ok(r)
    }
}

/// Checks of the hypersymplectic package on a special Lagrangian structure.
pub fn hypersymplectic_report(sl: &SpecialLagrangian) -> Result<Report, Error> {
    let mut r = Report::new("hypersymplectic structure");
    let [m1, m2, m3] = sl.omega_matrices();
    let m = sl.h.dim();
    let id = Matrix::identity(m);
    r.push(match sl.j.mul(&sl.j)?.first_difference(&id.neg()) {
        None => Check::pass(law::J_SQUARED),
        Some((a, b)) => Check::fail(law::J_SQUARED, vec![a, b], ""),
    });
    r.push(match sl.e.mul(&sl.e)?.first_difference(&id) {
        None => Check::pass(law::E_SQUARED),
        Some((a, b)) => Check::fail(law::E_SQUARED, vec![a, b], ""),
    });
    r.push(match sl.j.mul(&sl.e)?.first_difference(&sl.e.mul(&sl.j)?.neg()) {
        None => Check::pass(law::JE_ANTICOMMUTE),
        Some((a, b)) => Check::fail(law::JE_ANTICOMMUTE, vec![a, b], ""),
    });
    for (id, f, mat) in [
        (law::CLOSED, &sl.omega1, &m1),
        (law::OMEGA2_CLOSED, &sl.omega2, &m2),
        (law::OMEGA3_CLOSED, &sl.omega3, &m3),
    ] {
        r.push(if sl.h.is_closed(f)? && mat.is_invertible() {
            Check::pass(id)
        } else {
            Check::fail(id, vec![], "not a closed nondegenerate form")
        });
    }
    r.push(relations_check(&sl.j, &sl.e, &m1, &m2, &m3)?);
    r.push(metric_relations_check(&sl.j, &sl.e, &sl.metric, &m1, &m2, &m3)?);
    for c in check_neutral_metric(&sl.metric) {
        r.push(c);
    }
    let tc = build_tower_connection(sl)?;
    r.absorb(tc.check(sl)?);
    Ok(r)
}

/// Which symplectic form on `𝔥` seeds the next level.
#[derive(Clone, Debug, PartialEq)]
pub enum Polarization {
    Omega1,
    Omega2,
    Omega3,
    /// `aΩ1 + bΩ2 + cΩ3`.
    Combination(Scalar, Scalar, Scalar),
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarization::Omega1 => write!(f, "Ω1"),
            Polarization::Omega2 => write!(f, "Ω2"),
            Polarization::Omega3 => write!(f, "Ω3"),
            Polarization::Combination(a, b, c) => write!(f, "{a} Ω1 + {b} Ω2 + {c} Ω3"),
        }
    }
}

impl Polarization {
    pub fn form(&self, sl: &SpecialLagrangian) -> Result<ExteriorForm, Error> {
        Ok(match self {
            Polarization::Omega1 => sl.omega1.clone(),
            Polarization::Omega2 => sl.omega2.clone(),
            Polarization::Omega3 => sl.omega3.clone(),
            Polarization::Combination(a, b, c) => sl
                .omega1
                .scale(a)
                .add(&sl.omega2.scale(b))?
                .add(&sl.omega3.scale(c))?,
        })
    }
}

/// One step up the tower.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub connection: TowerConnection,
    pub polarization: Polarization,
    pub next: SpecialLagrangian,
}

/// Builds `𝔥⋉_Γ W` with the structures induced by the chosen form.
/// A degenerate combination is rejected with its determinant.
pub fn extend_tower(sl: &SpecialLagrangian, polarization: &Polarization) -> Result<TowerLevel, Error> {
    let tc = build_tower_connection(sl)?;
    tc.check(sl)?.into_result()?;
    let form = polarization.form(sl)?;
    let det = form.to_matrix()?.determinant()?;
    if det.is_zero() {
        return Err(Error::Rejected(crate::Rejection(vec![Check::fail(
            law::NONDEGENERATE,
            vec![],
            format!("det({polarization}) = {det}"),
        )])));
    }
    let data = ConnectionData::new(sl.h.clone(), form, tc.gamma.clone())?;
    let next = build_special_lagrangian(&data)?;
    Ok(TowerLevel {
        connection: tc,
        polarization: polarization.clone(),
        next,
    })
}

/// `levels` successive extensions, all with the same polarization.
pub fn iterate_tower(start: &SpecialLagrangian, levels: usize, polarization: &Polarization) -> Result<Vec<TowerLevel>, Error> {
    let mut out: Vec<TowerLevel> = Vec::with_capacity(levels);
    for _ in 0..levels {
        let cur = out.last().map_or(start, |l| &l.next);
        let step = extend_tower(cur, polarization)?;
        out.push(step);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::lie::{numbered_labels, LieAlgebra};
    use crate::exact::Subspace;
    use crate::semidirect::{product_labels, semidirect_product};

    fn kt4_sl() -> SpecialLagrangian {
        let g = LieAlgebra::abelian(numbered_labels("e", 2));
        let g1 = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let c = ConnectionData::new(g, ExteriorForm::parse(2, "e1^e2").unwrap(), vec![g1, Matrix::zeros(2, 2)]).unwrap();
        build_special_lagrangian(&c).unwrap()
    }

    #[test]
    fn kt4_connection_entries() {
        let sl = kt4_sl();
        let tc = build_tower_connection(&sl).unwrap();
        // γ(e1)e1 = e2 acts on both halves: Γ_{f1} f1 = f2 and Γ_{f1} f3 = f4
        for (a, g) in tc.gamma.iter().enumerate() {
            for r in 0..4 {
                for c in 0..4 {
                    let hit = a == 0 && ((r, c) == (1, 0) || (r, c) == (3, 2));
                    let expected = if hit { int(1) } else { int(0) };
                    assert_eq!(g[(r, c)], expected);
                }
            }
        }
        assert!(tc.check(&sl).unwrap().passed());
        assert!(hypersymplectic_report(&sl).unwrap().passed());
    }

    #[test]
    fn tower8_facts() {
        let up = extend_tower(&kt4_sl(), &Polarization::Omega1).unwrap();
        let h = &up.next.h;
        assert_eq!(h.describe(), "[f1, f3] = f4, [f1, v1] = v2, [f1, v3] = v4");
        assert_eq!(h.center(), Subspace::coordinate(8, &[1, 3, 5, 7]));
        assert_eq!(h.commutator(), Subspace::coordinate(8, &[3, 5, 7]));
        assert_eq!(h.nilpotency_step(), Some(2));
    }

    // Keeping only Γ_{f1} f3 = f4 gives a torsion-free flat connection whose
    // semidirect product has a five-dimensional center, but it moves Ω1 and J.
    #[test]
    fn dropping_the_g_block_breaks_parallelism() {
        let sl = kt4_sl();
        let mut tc = build_tower_connection(&sl).unwrap();
        tc.gamma[0][(1, 0)] = int(0);
        let r = tc.check(&sl).unwrap();
        assert!(!r.find(law::TOWER_TORSION_FREE).unwrap().is_fail());
        assert!(!r.find(law::TOWER_FLAT).unwrap().is_fail());
        assert!(r.find(law::PARALLEL).unwrap().is_fail());
        let data = ConnectionData::new(sl.h.clone(), sl.omega1.clone(), tc.gamma.clone()).unwrap();
        let c = data.check().unwrap();
        assert!(c.find(law::PRESERVES_OMEGA).unwrap().is_fail());
        let h8 = semidirect_product(&data.representation(), product_labels(sl.h.labels())[4..].to_vec()).unwrap();
        assert_eq!(h8.describe(), "[f1, f3] = f4, [f1, v3] = v4");
        assert_eq!(h8.center().dim(), 5);
    }

    #[test]
    fn degenerate_combination_is_rejected() {
        let sl = kt4_sl();
        for (a, b, c) in [(1, 0, 1), (3, 4, 5)] {
            let p = Polarization::Combination(int(a), int(b), int(c));
            let err = extend_tower(&sl, &p).unwrap_err();
            assert_eq!(err.failures()[0].law, law::NONDEGENERATE);
        }
        let p = Polarization::Combination(int(1), int(1), int(2));
        assert!(extend_tower(&sl, &p).is_ok());
    }
}
