//! Sparse elements of an exterior algebra.
//!
//! An [`ExteriorForm`] of degree `p` over an `n`-dimensional space is a map
//! from strictly increasing index tuples to nonzero coefficients. The same
//! type serves for covector forms `e^{i1}∧…∧e^{ip}` and for multivectors in
//! the Gerstenhaber algebras, where the "indices" are generators.
//!
//! Evaluation uses the determinant convention: `(e^1∧e^2)(e_1, e_2) = 1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::scalar::{Field, GaussianScalar, Scalar};
use crate::Error;

#[derive(Clone, PartialEq)]
pub struct ExteriorForm<F = Scalar> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, F>,
}

/// Sign of the permutation that sorts `idx`, or `None` when an index repeats.
pub fn sort_sign(idx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    // insertion sort, counting transpositions
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(negative)
}

impl<F: Field> ExteriorForm<F> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        ExteriorForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The constant `c` in degree zero.
    pub fn constant(dim: usize, c: F) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(vec![], c).expect("empty index is valid");
        f
    }

    /// The basis covector `e^i` (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        Self::monomial(dim, &[i], F::one())
    }

    /// `c · e^{i1}∧…∧e^{ip}` for arbitrary (possibly unsorted) indices.
    pub fn monomial(dim: usize, indices: &[usize], c: F) -> Self {
        let mut f = Self::zero(dim, indices.len());
        f.add_term(indices.to_vec(), c).expect("index out of range");
        f
    }

    /// Builds a form from `(indices, coefficient)` pairs; indices may be
    /// unsorted and repeated terms accumulate.
    pub fn from_terms(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, F)>,
    ) -> Result<Self, Error> {
        let mut f = Self::zero(dim, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DimensionMismatch {
                    expected: degree,
                    found: idx.len(),
                });
            }
            f.add_term(idx, c)?;
        }
        Ok(f)
    }

    /// Adds `c · e^{idx}`; indices are sorted with the permutation sign.
    pub fn add_term(&mut self, mut idx: Vec<usize>, c: F) -> Result<(), Error> {
        if idx.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: idx.len(),
            });
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: bad + 1,
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        let Some(negative) = sort_sign(&mut idx) else {
            return Ok(());
        };
        let c = if negative { -c } else { c };
        match self.terms.get_mut(&idx) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, c);
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the sorted index tuple `idx`.
    pub fn coefficient(&self, idx: &[usize]) -> F {
        let mut sorted = idx.to_vec();
        match sort_sign(&mut sorted) {
            None => F::zero(),
            Some(neg) => {
                let c = self.terms.get(&sorted).cloned().unwrap_or_else(F::zero);
                if neg {
                    -c
                } else {
                    c
                }
            }
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<(), Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_space(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        if c.is_zero() {
            return out;
        }
        for (idx, x) in &self.terms {
            out.terms.insert(idx.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    /// Exterior product. Degrees add; `α∧β = (−1)^{pq} β∧α`.
    pub fn wedge(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_space(other)?;
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_term(idx, x.clone() * y.clone())?;
            }
        }
        Ok(out)
    }

    /// Extends a linear map on degree-1 generators to a degree-`k`
    /// derivation of the exterior algebra:
    /// `D(a1∧…∧ap) = Σ_r (−1)^{rk} a1∧…∧D(a_r)∧…∧ap`.
    ///
    /// `images[i]` is `D(e^i)`; all images must share one degree `k + 1`.
    pub fn apply_derivation(&self, images: &[ExteriorForm<F>]) -> Result<Self, Error> {
        if images.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: images.len(),
            });
        }
        let image_degree = images.first().map_or(1, |f| f.degree);
        if let Some(bad) = images.iter().find(|f| f.degree != image_degree) {
            return Err(Error::DegreeMismatch {
                expected: image_degree,
                found: bad.degree,
            });
        }
        let shift = image_degree as isize - 1;
        let out_degree = (self.degree as isize + shift).max(0) as usize;
        let mut out = Self::zero(self.dim, out_degree);
        if self.degree == 0 {
            return Ok(out);
        }
        for (idx, c) in &self.terms {
            for r in 0..idx.len() {
                let img = &images[idx[r]];
                if img.is_zero() {
                    continue;
                }
                let negative = shift.rem_euclid(2) == 1 && r % 2 == 1;
                let left = Self::monomial(self.dim, &idx[..r], F::one());
                let right = Self::monomial(self.dim, &idx[r + 1..], F::one());
                let term = left.wedge(img)?.wedge(&right)?;
                let coef = if negative { -c.clone() } else { c.clone() };
                out = out.add(&term.scale(&coef))?;
            }
        }
        Ok(out)
    }

    /// Pulls back along a linear map given by the images of the degree-1
    /// generators (`images[i]` is the image of `e^i`, a degree-1 form on a
    /// space of dimension `target_dim`).
    pub fn pullback(&self, target_dim: usize, images: &[ExteriorForm<F>]) -> Result<Self, Error> {
        if images.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: images.len(),
            });
        }
        let mut out = Self::zero(target_dim, self.degree);
        for (idx, c) in &self.terms {
            let mut acc = ExteriorForm::constant(target_dim, c.clone());
            for &i in idx {
                acc = acc.wedge(&images[i])?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Evaluates on vectors given in coordinates (determinant convention).
    pub fn evaluate(&self, vectors: &[Vec<F>]) -> Result<F, Error> {
        if vectors.len() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: vectors.len(),
            });
        }
        let mut acc = F::zero();
        for (idx, c) in &self.terms {
            let m = Matrix::from_fn(self.degree, self.degree, |r, s| vectors[s][idx[r]].clone());
            let d = m.determinant()?;
            if !d.is_zero() {
                acc += c.clone() * d;
            }
        }
        Ok(acc)
    }

    /// Contraction in the first slot: `(ι_v α)(x2,…) = α(v, x2, …)`.
    pub fn interior(&self, v: &[F]) -> Result<Self, Error> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        if self.degree == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (idx, c) in &self.terms {
            for (r, &i) in idx.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(r);
                let mut coef = c.clone() * v[i].clone();
                if r % 2 == 1 {
                    coef = -coef;
                }
                out.add_term(rest, coef)?;
            }
        }
        Ok(out)
    }

    /// Matrix `M[i][j] = α(e_i, e_j)` of a 2-form.
    pub fn to_matrix(&self) -> Result<Matrix<F>, Error> {
        if self.degree != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: self.degree,
            });
        }
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (idx, c) in &self.terms {
            m[(idx[0], idx[1])] = c.clone();
            m[(idx[1], idx[0])] = -c.clone();
        }
        Ok(m)
    }

    /// The 2-form with `α(e_i, e_j) = M[i][j]`; `M` must be antisymmetric.
    pub fn from_matrix(m: &Matrix<F>) -> Result<Self, Error> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let mut f = Self::zero(n, 2);
        for i in 0..n {
            if !m[(i, i)].is_zero() {
                return Err(Error::NotAntisymmetric(i, i));
            }
            for j in i + 1..n {
                if m[(i, j)].clone() + m[(j, i)].clone() != F::zero() {
                    return Err(Error::NotAntisymmetric(i, j));
                }
                f.add_term(vec![i, j], m[(i, j)].clone())?;
            }
        }
        Ok(f)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> ExteriorForm<G> {
        let mut out = ExteriorForm::zero(self.dim, self.degree);
        for (idx, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(idx.clone(), v);
            }
        }
        out
    }

    /// Renders with the given single-character-free labels, e.g. `-f^1∧f^4`.
    pub fn display_with(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            let mono = if idx.is_empty() {
                String::new()
            } else {
                idx.iter()
                    .map(|&i| labels.get(i).cloned().unwrap_or_else(|| format!("e^{}", i + 1)))
                    .collect::<Vec<_>>()
                    .join("∧")
            };
            let coef = c.to_string();
            let piece = if mono.is_empty() {
                coef
            } else if c.is_one() {
                mono
            } else if *c == -F::one() {
                format!("-{mono}")
            } else if coef.contains(' ') || coef[1..].contains(['+', '-']) {
                format!("({coef}) {mono}")
            } else {
                format!("{coef} {mono}")
            };
            if n > 0 && !piece.starts_with('-') {
                out.push('+');
            }
            out.push_str(&piece);
        }
        out
    }
}

impl ExteriorForm<Scalar> {
    pub fn complexify(&self) -> ExteriorForm<GaussianScalar> {
        self.map(|c| GaussianScalar::from(c.clone()))
    }

    /// Parses a sum like `"-f1^f4 + f2^f3"` or `"1/2 e1^e2"`; index `k` in
    /// a token `xk` is 1-based. Intended for tests and the book.
    pub fn parse(dim: usize, s: &str) -> Result<Self, Error> {
        let mut degree = None;
        let mut terms = Vec::new();
        let cleaned = s.replace('-', "+-");
        for raw in cleaned.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let (coef, mono) = match raw.rsplit_once(' ') {
                Some((c, m)) => (c.trim(), m.trim()),
                None if raw.starts_with('-') => ("-1", &raw[1..]),
                None => ("1", raw),
            };
            let coef: Scalar = match coef {
                "-" => Scalar::from(-1),
                c => c.parse()?,
            };
            let idx = mono
                .split('^')
                .map(|tok| {
                    let digits: String = tok.chars().filter(char::is_ascii_digit).collect();
                    digits
                        .parse::<usize>()
                        .ok()
                        .filter(|&k| k >= 1)
                        .map(|k| k - 1)
                        .ok_or_else(|| Error::parse("form", format!("bad factor {tok:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if *degree.get_or_insert(idx.len()) != idx.len() {
                return Err(Error::parse("form", "mixed degrees"));
            }
            terms.push((idx, coef));
        }
        Self::from_terms(dim, degree.unwrap_or(0), terms)
    }
}

impl<F: Field> fmt::Debug for ExteriorForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=self.dim).map(|i| format!("e^{i}")).collect();
        write!(f, "{}", self.display_with(&labels))
    }
}

/// Wire format: `{ "degree": d, "terms": [[i1, …, id, "c"], …] }` with
/// 1-based indices.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FormFile {
    pub degree: usize,
    pub terms: Vec<Vec<serde_json::Value>>,
}

impl<F: Field + Serialize> ExteriorForm<F> {
    pub fn to_file(&self) -> FormFile {
        let terms = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let mut row: Vec<serde_json::Value> =
                    idx.iter().map(|&i| serde_json::Value::from(i + 1)).collect();
                row.push(serde_json::to_value(c).expect("scalars serialize"));
                row
            })
            .collect();
        FormFile {
            degree: self.degree,
            terms,
        }
    }
}

impl<F: Field + for<'de> Deserialize<'de>> ExteriorForm<F> {
    pub fn from_file(dim: usize, file: &FormFile) -> Result<Self, Error> {
        let mut terms = Vec::new();
        for (n, row) in file.terms.iter().enumerate() {
            let loc = format!("terms[{n}]");
            if row.len() != file.degree + 1 {
                return Err(Error::parse(
                    loc,
                    format!("expected {} indices and a coefficient", file.degree),
                ));
            }
            let idx = row[..file.degree]
                .iter()
                .map(|v| {
                    v.as_u64()
                        .filter(|&k| k >= 1 && (k as usize) <= dim)
                        .map(|k| k as usize - 1)
                        .ok_or_else(|| Error::parse(&loc, format!("bad index {v}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let c: F = serde_json::from_value(row[file.degree].clone())
                .map_err(|e| Error::parse(&loc, e.to_string()))?;
            terms.push((idx, c));
        }
        Self::from_terms(dim, file.degree, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    fn f(dim: usize, s: &str) -> ExteriorForm {
        ExteriorForm::parse(dim, s).unwrap()
    }

    #[test]
    fn basis_wedge() {
        let e1 = ExteriorForm::<Scalar>::basis(2, 0);
        let e2 = ExteriorForm::<Scalar>::basis(2, 1);
        let w = e1.wedge(&e2).unwrap();
        assert_eq!(w.terms().collect::<Vec<_>>(), vec![(&vec![0, 1], &int(1))]);
        assert!(e1.wedge(&e1).unwrap().is_zero());
    }

    #[test]
    fn square_of_neutral_two_form() {
        let a = f(4, "-f1^f4 + f2^f3");
        let sq = a.wedge(&a).unwrap();
        assert_eq!(sq, f(4, "-2 f1^f2^f3^f4"));
    }

    #[test]
    fn wedge_rejects_dimension_mismatch() {
        let a = ExteriorForm::<Scalar>::basis(2, 0);
        let b = ExteriorForm::<Scalar>::basis(3, 0);
        assert!(a.wedge(&b).is_err());
    }

    #[test]
    fn matrix_round_trip_and_evaluate() {
        let a = f(4, "-f1^f4 + f2^f3");
        let m = a.to_matrix().unwrap();
        assert_eq!(m[(0, 3)], int(-1));
        assert_eq!(m[(3, 0)], int(1));
        assert_eq!(ExteriorForm::from_matrix(&m).unwrap(), a);
        let e = |i| crate::exact::matrix::unit::<Scalar>(4, i);
        assert_eq!(a.evaluate(&[e(1), e(2)]).unwrap(), int(1));
        assert_eq!(a.evaluate(&[e(2), e(1)]).unwrap(), int(-1));
    }

    #[test]
    fn interior_is_first_slot() {
        let w = f(2, "e1^e2");
        let e1 = crate::exact::matrix::unit::<Scalar>(2, 0);
        let e2 = crate::exact::matrix::unit::<Scalar>(2, 1);
        assert_eq!(w.interior(&e1).unwrap(), f(2, "e2"));
        assert_eq!(w.interior(&e2).unwrap(), f(2, "-e1"));
    }

    #[test]
    fn file_round_trip() {
        let a = f(4, "-f1^f4 + 1/2 f2^f3");
        let file = a.to_file();
        let json = serde_json::to_string(&file).unwrap();
        assert_eq!(json, r#"{"degree":2,"terms":[[1,4,"-1"],[2,3,"1/2"]]}"#);
        let back: FormFile = serde_json::from_str(&json).unwrap();
        assert_eq!(ExteriorForm::<Scalar>::from_file(4, &back).unwrap(), a);
    }
}
