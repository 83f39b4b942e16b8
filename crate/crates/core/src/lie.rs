//! Lie algebras given by structure constants.
//!
//! Only brackets `[e_j, e_k]` with `j < k` are stored, so antisymmetry holds
//! by construction. The Chevalley–Eilenberg differential uses the convention
//! `dα(x, y) = −α([x, y])` on 1-forms, which gives
//! `d e^l = −Σ_{j<k} c_{jk}^l e^j∧e^k`.
//!
//! ```
//! use csymlie::lie::LieAlgebra;
//! use csymlie::exact::{int, ExteriorForm};
//!
//! // [f1, f3] = f4
//! let kt4 = LieAlgebra::from_structure(4, "f", &[(0, 2, 3, int(1))]).unwrap();
//! assert!(kt4.check_jacobi().status == csymlie::Status::Pass);
//! let df4 = kt4.ce_differential(&ExteriorForm::basis(4, 3)).unwrap();
//! assert_eq!(df4, ExteriorForm::parse(4, "-f1^f3").unwrap());
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exact::matrix::{add_vec, axpy, is_zero_vec, scale_vec, sub_vec, unit};
use crate::exact::{ExteriorForm, Field, GaussianScalar, Matrix, Scalar, Subspace};
use crate::report::{law, Check};
use crate::Error;

#[derive(Clone, PartialEq, Debug)]
pub struct LieAlgebra<F = Scalar> {
    dim: usize,
    labels: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vec<F>>,
}

/// Labels `prefix1 … prefixN`.
pub fn numbered_labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// The covector label for a basis label: `f3 ↦ f^3`.
pub fn dual_label(label: &str) -> String {
    match label.find(|c: char| c.is_ascii_digit()) {
        Some(p) if p > 0 => format!("{}^{}", &label[..p], &label[p..]),
        _ => format!("{label}*"),
    }
}

impl<F: Field> LieAlgebra<F> {
    pub fn abelian(labels: Vec<String>) -> Self {
        LieAlgebra {
            dim: labels.len(),
            labels,
            brackets: BTreeMap::new(),
        }
    }

    /// Builds an algebra from `(j, k, l, c)` entries meaning
    /// `[e_j, e_k] ∋ c·e_l` (0-based). Entries with `j > k` are antisymmetrized;
    /// repeated entries accumulate.
    pub fn from_entries(
        labels: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, F)>,
    ) -> Result<Self, Error> {
        let mut g = Self::abelian(labels);
        for (j, k, l, c) in entries {
            g.add_constant(j, k, l, c)?;
        }
        Ok(g)
    }

    /// Adds `c·e_l` to `[e_j, e_k]`.
    pub fn add_constant(&mut self, j: usize, k: usize, l: usize, c: F) -> Result<(), Error> {
        let n = self.dim;
        if let Some(&bad) = [j, k, l].iter().find(|&&i| i >= n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad + 1,
            });
        }
        if j == k {
            if c.is_zero() {
                return Ok(());
            }
            return Err(Error::parse(
                format!("bracket [{}, {}]", j + 1, k + 1),
                "a basis vector must commute with itself",
            ));
        }
        let (key, c) = if j < k { ((j, k), c) } else { ((k, j), -c) };
        let entry = self.brackets.entry(key).or_insert_with(|| vec![F::zero(); n]);
        entry[l] += c;
        if is_zero_vec(entry) {
            self.brackets.remove(&key);
        }
        Ok(())
    }

    /// Sets `[e_j, e_k] = v` for `j ≠ k`.
    pub fn set_bracket(&mut self, j: usize, k: usize, v: Vec<F>) -> Result<(), Error> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        if j == k || j >= self.dim || k >= self.dim {
            return Err(Error::parse(
                format!("bracket [{}, {}]", j + 1, k + 1),
                "indices must be distinct basis vectors",
            ));
        }
        let (key, v) = if j < k {
            ((j, k), v)
        } else {
            ((k, j), scale_vec(&-F::one(), &v))
        };
        if is_zero_vec(&v) {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, v);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Covector labels `f^1, …` matching the basis labels.
    pub fn dual_labels(&self) -> Vec<String> {
        self.labels.iter().map(|l| dual_label(l)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Nonzero brackets `[e_j, e_k]` with `j < k`.
    pub fn brackets(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<F>)> {
        self.brackets.iter()
    }

    /// `[e_j, e_k]` in coordinates.
    pub fn bracket_basis(&self, j: usize, k: usize) -> Vec<F> {
        if j < k {
            self.brackets
                .get(&(j, k))
                .cloned()
                .unwrap_or_else(|| vec![F::zero(); self.dim])
        } else if j > k {
            match self.brackets.get(&(k, j)) {
                Some(v) => scale_vec(&-F::one(), v),
                None => vec![F::zero(); self.dim],
            }
        } else {
            vec![F::zero(); self.dim]
        }
    }

    pub fn structure_constant(&self, j: usize, k: usize, l: usize) -> F {
        self.bracket_basis(j, k)[l].clone()
    }

    /// Bracket of two vectors given in coordinates.
    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (&(j, k), v) in &self.brackets {
            // [x,y] ∋ (x_j y_k − x_k y_j) [e_j, e_k]
            let c = x[j].clone() * y[k].clone() - x[k].clone() * y[j].clone();
            if !c.is_zero() {
                axpy(&mut out, &c, v);
            }
        }
        out
    }

    /// Matrix of `ad(x) = [x, ·]`.
    pub fn ad(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim)
            .map(|k| self.bracket(x, &unit(self.dim, k)))
            .collect();
        Matrix::from_columns(self.dim, &cols).expect("square")
    }

    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<F> {
        let e = |a| unit::<F>(self.dim, a);
        let a = self.bracket(&e(i), &self.bracket_basis(j, k));
        let b = self.bracket(&e(j), &self.bracket_basis(k, i));
        let c = self.bracket(&e(k), &self.bracket_basis(i, j));
        add_vec(&add_vec(&a, &b), &c)
    }

    /// First basis triple `i < j < k` with nonzero Jacobiator.
    pub fn jacobi_witness(&self) -> Option<((usize, usize, usize), Vec<F>)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let v = self.jacobiator(i, j, k);
                    if !is_zero_vec(&v) {
                        return Some(((i, j, k), v));
                    }
                }
            }
        }
        None
    }

    pub fn check_jacobi(&self) -> Check {
        match self.jacobi_witness() {
            None => Check::pass(law::JACOBI),
            Some(((i, j, k), v)) => Check::fail(
                law::JACOBI,
                vec![i, j, k],
                format!(
                    "jacobiator of ({}, {}, {}) is {}",
                    self.labels[i],
                    self.labels[j],
                    self.labels[k],
                    fmt_vec(&v)
                ),
            ),
        }
    }

    /// `d e^l = −Σ_{j<k} c_{jk}^l e^j∧e^k`.
    pub fn d_generator(&self, l: usize) -> ExteriorForm<F> {
        let mut f = ExteriorForm::zero(self.dim, 2);
        for (&(j, k), v) in &self.brackets {
            if !v[l].is_zero() {
                f.add_term(vec![j, k], -v[l].clone()).expect("in range");
            }
        }
        f
    }

    /// Chevalley–Eilenberg differential, extended as an antiderivation.
    pub fn ce_differential(&self, form: &ExteriorForm<F>) -> Result<ExteriorForm<F>, Error> {
        if form.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: form.dim(),
            });
        }
        let images: Vec<ExteriorForm<F>> = (0..self.dim).map(|l| self.d_generator(l)).collect();
        form.apply_derivation(&images)
    }

    pub fn is_closed(&self, form: &ExteriorForm<F>) -> Result<bool, Error> {
        Ok(self.ce_differential(form)?.is_zero())
    }

    /// Kernel of `x ↦ ad(x)`, as a reduced echelon basis.
    pub fn center(&self) -> Subspace<F> {
        // rows: for each (k, l), the linear functional x ↦ [x, e_k]_l
        let n = self.dim;
        let mut rows = Vec::new();
        for k in 0..n {
            for l in 0..n {
                let row: Vec<F> = (0..n).map(|j| self.structure_constant(j, k, l)).collect();
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
        let m = Matrix::from_fn(rows.len(), n, |i, j| rows[i][j].clone());
        m.nullspace()
    }

    /// `[a, b]` for subspaces.
    pub fn bracket_spaces(&self, a: &Subspace<F>, b: &Subspace<F>) -> Subspace<F> {
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                let v = self.bracket(x, y);
                if !is_zero_vec(&v) {
                    vs.push(v);
                }
            }
        }
        Subspace::span(self.dim, &vs)
    }

    /// `[𝔤, 𝔤]`.
    pub fn commutator(&self) -> Subspace<F> {
        let vs: Vec<Vec<F>> = self.brackets.values().cloned().collect();
        Subspace::span(self.dim, &vs)
    }

    /// `𝔤 ⊇ [𝔤,𝔤] ⊇ [𝔤,[𝔤,𝔤]] ⊇ …`, stopping once a term repeats.
    pub fn lower_central_series(&self) -> Vec<Subspace<F>> {
        let whole = Subspace::whole(self.dim);
        let mut series = vec![whole.clone()];
        loop {
            let next = self.bracket_spaces(&whole, series.last().expect("nonempty"));
            if next.dim() == series.last().expect("nonempty").dim() {
                return series;
            }
            let done = next.dim() == 0;
            series.push(next);
            if done {
                return series;
            }
        }
    }

    pub fn lower_central_dims(&self) -> Vec<usize> {
        self.lower_central_series().iter().map(Subspace::dim).collect()
    }

    /// Smallest `s` with `𝔤^{(s)} = 0` (0 for the zero algebra, 1 when
    /// abelian), or `None` when the algebra is not nilpotent.
    pub fn nilpotency_step(&self) -> Option<usize> {
        let dims = self.lower_central_dims();
        match dims.last() {
            Some(0) => Some(dims.len() - 1),
            _ => None,
        }
    }

    /// First pair of basis vectors of `s` whose bracket leaves `s`.
    pub fn subalgebra_witness(&self, s: &Subspace<F>) -> Option<(usize, usize)> {
        let b = s.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !s.contains(&self.bracket(&b[i], &b[j])) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First pair (algebra basis index, subspace basis index) with
    /// `[e_i, v_j] ∉ s`.
    pub fn ideal_witness(&self, s: &Subspace<F>) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for (j, v) in s.basis().iter().enumerate() {
                if !s.contains(&self.bracket(&unit(self.dim, i), v)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `[φx, φy] − φ[x, y]` on the first failing basis pair, where `φ` has
    /// `self.dim()` columns and `target.dim()` rows.
    pub fn homomorphism_witness(
        &self,
        phi: &Matrix<F>,
        target: &LieAlgebra<F>,
    ) -> Result<Option<((usize, usize), Vec<F>)>, Error> {
        if phi.cols() != self.dim || phi.rows() != target.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: phi.cols(),
            });
        }
        let images: Vec<Vec<F>> = (0..self.dim).map(|i| phi.column(i)).collect();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = phi.mul_vec(&self.bracket_basis(i, j))?;
                let rhs = target.bracket(&images[i], &images[j]);
                let diff = sub_vec(&rhs, &lhs);
                if !is_zero_vec(&diff) {
                    return Ok(Some(((i, j), diff)));
                }
            }
        }
        Ok(None)
    }

    pub fn check_homomorphism(&self, phi: &Matrix<F>, target: &LieAlgebra<F>) -> Result<Check, Error> {
        Ok(match self.homomorphism_witness(phi, target)? {
            None => Check::pass(law::HOMOMORPHISM),
            Some(((i, j), diff)) => Check::fail(
                law::HOMOMORPHISM,
                vec![i, j],
                format!(
                    "[φ{a}, φ{b}] − φ[{a}, {b}] = {}",
                    fmt_vec(&diff),
                    a = self.labels[i],
                    b = self.labels[j]
                ),
            ),
        })
    }

    /// Homomorphism check plus invertibility.
    pub fn check_isomorphism(&self, phi: &Matrix<F>, target: &LieAlgebra<F>) -> Result<Vec<Check>, Error> {
        let hom = self.check_homomorphism(phi, target)?;
        let inv = if phi.is_square() && phi.is_invertible() {
            Check::pass(law::INVERTIBLE)
        } else {
            Check::fail(law::INVERTIBLE, vec![], "determinant is zero")
        };
        Ok(vec![hom, inv])
    }

    /// The algebra with basis changed by `p` (columns of `p` become the new
    /// basis vectors).
    pub fn change_basis(&self, p: &Matrix<F>) -> Result<Self, Error> {
        let pinv = p.inverse()?;
        let mut g = Self::abelian(self.labels.clone());
        for j in 0..self.dim {
            for k in j + 1..self.dim {
                let v = pinv.mul_vec(&self.bracket(&p.column(j), &p.column(k)))?;
                g.set_bracket(j, k, v)?;
            }
        }
        Ok(g)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> LieAlgebra<G> {
        let mut brackets = BTreeMap::new();
        for (key, v) in &self.brackets {
            let w: Vec<G> = v.iter().map(&f).collect();
            if !is_zero_vec(&w) {
                brackets.insert(*key, w);
            }
        }
        LieAlgebra {
            dim: self.dim,
            labels: self.labels.clone(),
            brackets,
        }
    }

    /// Multi-line listing of the nonzero brackets.
    pub fn describe(&self) -> String {
        if self.brackets.is_empty() {
            return "abelian".to_string();
        }
        self.brackets
            .iter()
            .map(|(&(j, k), v)| {
                format!(
                    "[{}, {}] = {}",
                    self.labels[j],
                    self.labels[k],
                    fmt_combination(v, &self.labels)
                )
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl LieAlgebra<Scalar> {
    /// Shorthand for tests and examples: labels `prefix1…` and 0-based
    /// `(j, k, l, c)` entries.
    pub fn from_structure(
        dim: usize,
        prefix: &str,
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self, Error> {
        Self::from_entries(numbered_labels(prefix, dim), entries.iter().cloned())
    }

    pub fn complexify(&self) -> LieAlgebra<GaussianScalar> {
        self.map(|c| GaussianScalar::from(c.clone()))
    }

    pub fn to_file(&self) -> AlgebraFile {
        let mut brackets = Vec::new();
        for (&(j, k), v) in &self.brackets {
            for (l, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    brackets.push((j + 1, k + 1, l + 1, c.clone()));
                }
            }
        }
        AlgebraFile {
            dim: self.dim,
            basis: self.labels.clone(),
            brackets,
        }
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Self, Error> {
        if file.basis.len() != file.dim {
            return Err(Error::parse(
                "basis",
                format!("{} labels for dimension {}", file.basis.len(), file.dim),
            ));
        }
        let mut g = Self::abelian(file.basis.clone());
        for (n, (j, k, l, c)) in file.brackets.iter().enumerate() {
            let loc = format!("brackets[{n}]");
            if [*j, *k, *l].iter().any(|&i| i == 0 || i > file.dim) {
                return Err(Error::parse(loc, "indices are 1-based and at most dim"));
            }
            g.add_constant(j - 1, k - 1, l - 1, c.clone())
                .map_err(|e| Error::parse(loc, e.to_string()))?;
        }
        Ok(g)
    }
}

/// Wire format: `{ "dim": n, "basis": [...], "brackets": [[j, k, l, "c"], ...] }`
/// with 1-based indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<(usize, usize, usize, Scalar)>,
}

pub(crate) fn fmt_vec<F: Field>(v: &[F]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// `2 f3 - 1/2 f4` style rendering of a coordinate vector.
pub fn fmt_combination<F: Field>(v: &[F], labels: &[String]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let piece = if c.is_one() {
            labels[i].clone()
        } else if *c == -F::one() {
            format!("-{}", labels[i])
        } else if s.contains(' ') {
            format!("({s}) {}", labels[i])
        } else {
            format!("{s} {}", labels[i])
        };
        if !out.is_empty() {
            out.push_str(if piece.starts_with('-') { " " } else { " + " });
        }
        out.push_str(&piece);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};
    use crate::report::Status;

    fn kt4() -> LieAlgebra {
        LieAlgebra::from_structure(4, "f", &[(0, 2, 3, int(1))]).unwrap()
    }

    fn form(s: &str) -> ExteriorForm {
        ExteriorForm::parse(4, s).unwrap()
    }

    #[test]
    fn antisymmetric_lookup() {
        let g = kt4();
        assert_eq!(g.bracket_basis(2, 0), vec![int(0), int(0), int(0), int(-1)]);
        assert!(is_zero_vec(&g.bracket_basis(1, 1)));
    }

    #[test]
    fn jacobi_failure_witness() {
        let g = LieAlgebra::from_structure(
            3,
            "e",
            &[(0, 1, 2, int(1)), (0, 2, 0, int(1)), (1, 2, 1, int(1))],
        )
        .unwrap();
        let c = g.check_jacobi();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness, vec![0, 1, 2]);
        assert_eq!(g.jacobiator(0, 1, 2), vec![int(0), int(0), int(2)]);
    }

    #[test]
    fn kt4_differential() {
        let g = kt4();
        assert_eq!(g.d_generator(3), form("-f1^f3"));
        for l in 0..3 {
            assert!(g.d_generator(l).is_zero());
        }
        assert!(g.is_closed(&form("-f1^f4 + f2^f3")).unwrap());
        assert!(g.is_closed(&form("f1^f2 - f3^f4")).unwrap());
        // d(f1∧f4) = −f1∧df4 = f1∧f1∧f3 = 0, so this one is closed too
        assert!(g.is_closed(&form("f1^f4")).unwrap());
        // but f2∧f4 is not: d(f2∧f4) = −f2∧(−f1∧f3) = −f1∧f2∧f3
        assert_eq!(
            g.ce_differential(&form("f2^f4")).unwrap(),
            ExteriorForm::parse(4, "-f1^f2^f3").unwrap()
        );
    }

    #[test]
    fn centers_and_series() {
        let g = kt4();
        assert_eq!(g.center(), Subspace::coordinate(4, &[1, 3]));
        assert_eq!(g.lower_central_dims(), vec![4, 1, 0]);
        assert_eq!(g.nilpotency_step(), Some(2));
        let ab = LieAlgebra::<Scalar>::abelian(numbered_labels("e", 4));
        assert_eq!(ab.center().dim(), 4);
        assert_eq!(ab.lower_central_dims(), vec![4, 0]);
        let aff = LieAlgebra::from_structure(2, "e", &[(0, 1, 1, int(1))]).unwrap();
        assert_eq!(aff.lower_central_dims(), vec![2, 1]);
        assert_eq!(aff.nilpotency_step(), None);
        assert_eq!(aff.center().dim(), 0);
    }

    #[test]
    fn homomorphism_swap_fails_on_f1_f3() {
        let g = kt4();
        let swap = Matrix::from_ints(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let c = g.check_homomorphism(&swap, &g).unwrap();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness, vec![0, 2]);
        let id = Matrix::identity(4);
        assert_eq!(g.check_homomorphism(&id, &g).unwrap().status, Status::Pass);
    }

    #[test]
    fn change_basis_gives_isomorphic_algebra() {
        let g = kt4();
        let p = Matrix::from_ints(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 0, 2, 0], &[0, 0, 1, 1]]);
        let h = g.change_basis(&p).unwrap();
        let checks = h.check_isomorphism(&p, &g).unwrap();
        assert!(checks.iter().all(|c| c.status == Status::Pass));
    }

    #[test]
    fn file_round_trip() {
        let g = LieAlgebra::from_structure(2, "e", &[(0, 1, 1, frac(-1, 2))]).unwrap();
        let json = serde_json::to_string(&g.to_file()).unwrap();
        assert_eq!(json, r#"{"dim":2,"basis":["e1","e2"],"brackets":[[1,2,2,"-1/2"]]}"#);
        let back: AlgebraFile = serde_json::from_str(&json).unwrap();
        assert_eq!(LieAlgebra::from_file(&back).unwrap(), g);
    }

    #[test]
    fn file_rejects_bad_index() {
        let f = AlgebraFile {
            dim: 2,
            basis: numbered_labels("e", 2),
            brackets: vec![(1, 3, 1, int(1))],
        };
        let err = LieAlgebra::from_file(&f).unwrap_err();
        assert!(err.to_string().contains("brackets[0]"));
    }
}
