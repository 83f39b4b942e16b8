//! Differential Gerstenhaber algebras generated in degree one.
//!
//! Both algebras attached to a complex symplectic structure are exterior
//! algebras `ΛG` on a finite generator space `G` over ℚ(i). On generators
//! the bracket is a Lie bracket and `d` is a map `G → Λ²G`; both extend
//! uniquely, `d` as a degree +1 derivation and the bracket by the Schouten
//! rule
//!
//! `[a1∧…∧ap, b1∧…∧bq] = Σ (−1)^{i+j} [a_i, b_j]∧a1…â_i…ap∧b1…b̂_j…bq`.
//!
//! - [`dga_from_symplectic`]: `G = 𝔥*`, `d` the Chevalley–Eilenberg
//!   differential, and on 1-forms `[α, β] = ι_{π#α}dβ − ι_{π#β}dα` with
//!   `π# = (Ω♭)⁻¹`.
//! - [`dga_from_complex`]: `G = 𝔥^{0,1} ⊕ 𝔥^{*(1,0)}` inside the double
//!   `𝔥 ⋉ 𝔥*`. The bracket is the bracket of the double restricted to `G`
//!   (Lie bracket on vectors, coadjoint action on forms, zero between
//!   forms). The differential is dual to the bracket on the conjugate space
//!   `𝔥^{1,0} ⊕ 𝔥^{*(0,1)}` under the pairing `⟨(X,ξ),(Y,η)⟩ = ξ(Y) + η(X)`.
//!
//! Axioms are never assumed: [`DGAPresentation::check_axioms`] verifies them
//! exhaustively on generators and on seeded random elements up to degree 3.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exact::matrix::{is_zero_vec, unit};
use crate::exact::{ExteriorForm, Field, FormFile, GaussianScalar, Matrix, Scalar};
use crate::geometry::check_complex_structure;
use crate::lie::{dual_label, fmt_combination, LieAlgebra};
use crate::report::{law, Check, Report};
use crate::semidirect::{varpi, Representation, SpecialLagrangian};
use crate::Error;

type C = GaussianScalar;
type Form = ExteriorForm<C>;

/// Default seed for the sampled axiom checks.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// A DGA presented by its degree-1 generators.
#[derive(Clone, Debug, PartialEq)]
pub struct DGAPresentation {
    /// Generator labels, and the bracket `G × G → G`.
    pub bracket: LieAlgebra<C>,
    /// `d` of each generator, a degree-2 element.
    pub d: Vec<Form>,
    /// Conventions this presentation depends on.
    pub notes: Vec<String>,
}

impl DGAPresentation {
    pub fn new(bracket: LieAlgebra<C>, d: Vec<Form>) -> Result<Self, Error> {
        let m = bracket.dim();
        if d.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: d.len(),
            });
        }
        if let Some(f) = d.iter().find(|f| f.dim() != m || f.degree() != 2) {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: f.degree(),
            });
        }
        Ok(DGAPresentation {
            bracket,
            d,
            notes: Vec::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.bracket.labels()
    }

    pub fn generator(&self, i: usize) -> Form {
        Form::basis(self.dim(), i)
    }

    /// `d` extended as a derivation of degree +1.
    pub fn differential(&self, x: &Form) -> Result<Form, Error> {
        x.apply_derivation(&self.d)
    }

    fn bracket_generators(&self, a: usize, b: usize) -> Form {
        vec_to_form(&self.bracket.bracket_basis(a, b))
    }

    /// The Schouten extension of the generator bracket.
    pub fn bracket(&self, x: &Form, y: &Form) -> Result<Form, Error> {
        let m = self.dim();
        if x.dim() != m || y.dim() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: x.dim().max(y.dim()),
            });
        }
        let (p, q) = (x.degree(), y.degree());
        let mut out = Form::zero(m, (p + q).saturating_sub(1));
        if p == 0 || q == 0 {
            return Ok(out);
        }
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let coef = ca.clone() * cb.clone();
                for i in 0..p {
                    for j in 0..q {
                        let br = self.bracket_generators(a[i], b[j]);
                        if br.is_zero() {
                            continue;
                        }
                        let mut rest: Vec<usize> = a.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
                        rest.extend(b.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v));
                        let tail = Form::monomial(m, &rest, C::one());
                        let mut term = br.wedge(&tail)?.scale(&coef);
                        if (i + j) % 2 == 1 {
                            term = term.neg();
                        }
                        out = out.add(&term)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Checks `d² = 0`, graded antisymmetry, graded Jacobi, the graded
    /// Leibniz rule and that `d` is a derivation of the bracket. Generator
    /// pairs and triples are covered exhaustively; `samples` random triples
    /// of degrees up to 3 are drawn from `seed`.
    pub fn check_axioms(&self, seed: u64, samples: usize) -> Result<Report, Error> {
        let m = self.dim();
        let mut r = Report::new("dga axioms");
        let gens: Vec<Form> = (0..m).map(|i| self.generator(i)).collect();

        let mut d2 = None;
        for (i, g) in gens.iter().enumerate() {
            let dd = self.differential(&self.differential(g)?)?;
            if !dd.is_zero() {
                d2 = Some((vec![i], format!("d²{} ≠ 0", self.labels()[i])));
                break;
            }
        }
        r.push(Check::from_witness(law::D_SQUARED, d2));

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sampled: Vec<(Form, Form, Form)> = Vec::new();
        for _ in 0..samples {
            let degs = [rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3)];
            let [a, b, c] = degs.map(|p| random_element(&mut rng, m, p.min(m)));
            sampled.push((a, b, c));
        }

        let mut anti = None;
        'anti: for i in 0..m {
            for j in 0..m {
                if !self.antisymmetry_defect(&gens[i], &gens[j])?.is_zero() {
                    anti = Some((vec![i, j], String::new()));
                    break 'anti;
                }
            }
        }
        if anti.is_none() {
            for (n, (a, b, _)) in sampled.iter().enumerate() {
                if !self.antisymmetry_defect(a, b)?.is_zero() {
                    anti = Some((vec![], format!("sample {n}")));
                    break;
                }
            }
        }
        r.push(Check::from_witness(law::ANTISYMMETRY, anti));

        let mut jac = None;
        let mut leib = None;
        'triples: for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let (a, b, c) = (&gens[i], &gens[j], &gens[k]);
                    if jac.is_none() && !self.jacobi_defect(a, b, c)?.is_zero() {
                        jac = Some((vec![i, j, k], String::new()));
                    }
                    if leib.is_none() && !self.leibniz_defect(a, b, c)?.is_zero() {
                        leib = Some((vec![i, j, k], String::new()));
                    }
                    if jac.is_some() && leib.is_some() {
                        break 'triples;
                    }
                }
            }
        }
        for (n, (a, b, c)) in sampled.iter().enumerate() {
            if jac.is_none() && !self.jacobi_defect(a, b, c)?.is_zero() {
                jac = Some((vec![], format!("sample {n}")));
            }
            if leib.is_none() && !self.leibniz_defect(a, b, c)?.is_zero() {
                leib = Some((vec![], format!("sample {n}")));
            }
        }
        r.push(Check::from_witness(law::GRADED_JACOBI, jac));
        r.push(Check::from_witness(law::LEIBNIZ, leib));

        let mut der = None;
        'pairs: for i in 0..m {
            for j in 0..m {
                if !self.derivation_defect(&gens[i], &gens[j])?.is_zero() {
                    der = Some((vec![i, j], String::new()));
                    break 'pairs;
                }
            }
        }
        if der.is_none() {
            for (n, (a, b, _)) in sampled.iter().enumerate() {
                if !self.derivation_defect(a, b)?.is_zero() {
                    der = Some((vec![], format!("sample {n}")));
                    break;
                }
            }
        }
        r.push(Check::from_witness(law::D_DERIVATION, der));
        for note in &self.notes {
            r.push(Check::note(law::CONVENTION, note.clone()));
        }
        Ok(r)
    }

    /// `[a,b] + (−1)^{(|a|−1)(|b|−1)}[b,a]`.
    pub fn antisymmetry_defect(&self, a: &Form, b: &Form) -> Result<Form, Error> {
        let ab = self.bracket(a, b)?;
        let ba = self.bracket(b, a)?;
        let s = shifted_sign(a.degree(), b.degree());
        ab.add(&ba.scale(&s))
    }

    /// `[a,[b,c]] − [[a,b],c] − (−1)^{(|a|−1)(|b|−1)}[b,[a,c]]`.
    pub fn jacobi_defect(&self, a: &Form, b: &Form, c: &Form) -> Result<Form, Error> {
        let lhs = self.bracket(a, &self.bracket(b, c)?)?;
        let t1 = self.bracket(&self.bracket(a, b)?, c)?;
        let t2 = self.bracket(b, &self.bracket(a, c)?)?;
        let s = shifted_sign(a.degree(), b.degree());
        lhs.sub(&t1)?.sub(&t2.scale(&s))
    }

    /// `[a, b∧c] − [a,b]∧c − (−1)^{(|a|−1)|b|} b∧[a,c]`.
    pub fn leibniz_defect(&self, a: &Form, b: &Form, c: &Form) -> Result<Form, Error> {
        let lhs = self.bracket(a, &b.wedge(c)?)?;
        let t1 = self.bracket(a, b)?.wedge(c)?;
        let t2 = b.wedge(&self.bracket(a, c)?)?;
        let odd = (a.degree() + 1) * b.degree() % 2 == 1;
        let t2 = if odd { t2.neg() } else { t2 };
        lhs.sub(&t1)?.sub(&t2)
    }

    /// `d[a,b] − [da,b] − (−1)^{|a|−1}[a,db]`.
    pub fn derivation_defect(&self, a: &Form, b: &Form) -> Result<Form, Error> {
        let lhs = self.differential(&self.bracket(a, b)?)?;
        let t1 = self.bracket(&self.differential(a)?, b)?;
        let t2 = self.bracket(a, &self.differential(b)?)?;
        let t2 = if a.degree() % 2 == 0 { t2.neg() } else { t2 };
        // degree bookkeeping: zero forms of different degree compare equal
        let t1 = if t1.is_zero() { Form::zero(lhs.dim(), lhs.degree()) } else { t1 };
        let t2 = if t2.is_zero() { Form::zero(lhs.dim(), lhs.degree()) } else { t2 };
        if lhs.is_zero() && !t1.is_zero() {
            return t1.add(&t2).map(|x| x.neg());
        }
        lhs.sub(&t1)?.sub(&t2)
    }

    /// Ranks of `d` on `Λ^p G` for `p ≤ max_degree`.
    pub fn differential_ranks(&self, max_degree: usize) -> Result<Vec<usize>, Error> {
        let m = self.dim();
        let mut ranks = Vec::new();
        for p in 0..=max_degree.min(m) {
            let source = subsets(m, p);
            let target: BTreeMap<Vec<usize>, usize> =
                subsets(m, p + 1).into_iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut cols = Vec::new();
            for s in &source {
                let img = self.differential(&Form::monomial(m, s, C::one()))?;
                let mut col = vec![C::zero(); target.len()];
                for (idx, c) in img.terms() {
                    col[target[idx]] = c.clone();
                }
                cols.push(col);
            }
            let mat = Matrix::from_fn(target.len(), source.len(), |r, c| cols[c][r].clone());
            ranks.push(mat.rank());
        }
        Ok(ranks)
    }

    pub fn to_file(&self) -> DgaFile {
        let mut bracket = Vec::new();
        for (&(a, b), v) in self.bracket.brackets() {
            for (c, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    bracket.push((a + 1, b + 1, c + 1, x.clone()));
                }
            }
        }
        DgaFile {
            generators: self.labels().to_vec(),
            d: self.d.iter().map(Form::to_file).collect(),
            bracket,
        }
    }

    pub fn from_file(file: &DgaFile) -> Result<Self, Error> {
        let m = file.generators.len();
        let mut br = LieAlgebra::abelian(file.generators.clone());
        for (n, (a, b, c, x)) in file.bracket.iter().enumerate() {
            let loc = format!("bracket[{n}]");
            if [*a, *b, *c].iter().any(|&i| i == 0 || i > m) {
                return Err(Error::parse(loc, "indices are 1-based and at most the generator count"));
            }
            br.add_constant(a - 1, b - 1, c - 1, x.clone())
                .map_err(|e| Error::parse(loc, e.to_string()))?;
        }
        let d = file
            .d
            .iter()
            .map(|f| Form::from_file(m, f))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(br, d)
    }

    /// Readable listing of `d` and the nonzero brackets.
    pub fn describe(&self) -> String {
        let labels = self.labels();
        let mut out = String::new();
        for (i, f) in self.d.iter().enumerate() {
            out.push_str(&format!("d {} = {}\n", labels[i], f.display_with(labels)));
        }
        for (&(a, b), v) in self.bracket.brackets() {
            out.push_str(&format!("[{}, {}] = {}\n", labels[a], labels[b], fmt_combination(v, labels)));
        }
        out
    }
}

/// Wire format `{ "generators": [...], "d": [form per generator],
/// "bracket": [[a, b, c, "x"], ...] }` with 1-based indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DgaFile {
    pub generators: Vec<String>,
    pub d: Vec<FormFile>,
    pub bracket: Vec<(usize, usize, usize, GaussianScalar)>,
}

fn shifted_sign(p: usize, q: usize) -> C {
    // (−1)^{(p−1)(q−1)}, with p, q ≥ 0
    if (p + 1) * (q + 1) % 2 == 1 {
        -C::one()
    } else {
        C::one()
    }
}

fn vec_to_form(v: &[C]) -> Form {
    let m = v.len();
    let mut f = Form::zero(m, 1);
    for (i, c) in v.iter().enumerate() {
        f.add_term(vec![i], c.clone()).expect("in range");
    }
    f
}

fn form_to_vec(f: &Form) -> Vec<C> {
    let mut v = vec![C::zero(); f.dim()];
    for (idx, c) in f.terms() {
        v[idx[0]] = c.clone();
    }
    v
}

fn subsets(m: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, p, &mut Vec::new(), &mut out);
    out
}

fn random_element(rng: &mut ChaCha8Rng, m: usize, p: usize) -> Form {
    let all = subsets(m, p);
    let mut f = Form::zero(m, p);
    for _ in 0..3 {
        let idx = all[rng.gen_range(0..all.len())].clone();
        let c = C::new(Scalar::from(rng.gen_range(-3i64..=3)), Scalar::from(rng.gen_range(-2i64..=2)));
        f.add_term(idx, c).expect("in range");
    }
    if f.is_zero() {
        f.add_term(all[0].clone(), C::one()).expect("in range");
    }
    f
}

/// `π# = (Ω♭)⁻¹` where `Ω♭(X) = Ω(X, ·)`; columns are images of `e^i`.
pub fn anchor(omega: &Matrix) -> Result<Matrix, Error> {
    omega.transpose().inverse()
}

/// `DGA(𝔥, Ω)`: generators `𝔥*`, Chevalley–Eilenberg `d`, and the
/// bracket `ι_{π#α}dβ − ι_{π#β}dα` on 1-forms.
pub fn dga_from_symplectic(h: &LieAlgebra, omega: &ExteriorForm) -> Result<DGAPresentation, Error> {
    let n = h.dim();
    let m = omega.to_matrix()?;
    let mut pre = Report::new("DGA(h, Ω)");
    pre.push(if h.is_closed(omega)? {
        Check::pass(law::CLOSED)
    } else {
        Check::fail(law::CLOSED, vec![], "Ω is not closed")
    });
    pre.push(if m.is_invertible() {
        Check::pass(law::NONDEGENERATE)
    } else {
        Check::fail(law::NONDEGENERATE, vec![], "Ω is degenerate")
    });
    pre.into_result()?;
    let pi = anchor(&m)?;
    let hc = h.complexify();
    let dgen: Vec<Form> = (0..n).map(|l| hc.d_generator(l)).collect();
    let pic = pi.complexify();
    let mut br = LieAlgebra::abelian(h.dual_labels());
    for a in 0..n {
        for b in a + 1..n {
            let x = dgen[b].interior(&pic.column(a))?;
            let y = dgen[a].interior(&pic.column(b))?;
            br.set_bracket(a, b, form_to_vec(&x.sub(&y)?))?;
        }
    }
    DGAPresentation::new(br, dgen)
}

/// `π#[α, β] = [π#α, π#β]` on all generator pairs.
pub fn check_anchor(h: &LieAlgebra, omega: &ExteriorForm, dga: &DGAPresentation) -> Result<Check, Error> {
    let pi = anchor(&omega.to_matrix()?)?.complexify();
    let hc = h.complexify();
    let n = h.dim();
    for a in 0..n {
        for b in a + 1..n {
            let lhs = pi.mul_vec(&dga.bracket.bracket_basis(a, b))?;
            let rhs = hc.bracket(&pi.column(a), &pi.column(b));
            if lhs != rhs {
                return Ok(Check::fail(law::ANCHOR, vec![a, b], "π#[α,β] ≠ [π#α, π#β]"));
            }
        }
    }
    Ok(Check::pass(law::ANCHOR))
}

/// Vectors `X_1 … X_m` chosen greedily from the standard basis so that
/// `X_1 … X_m, JX_1 … JX_m` is a basis.
pub fn adapted_basis(j: &Matrix) -> Vec<usize> {
    let n = j.rows();
    let mut chosen = Vec::new();
    let mut span: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..n {
        let mut trial = span.clone();
        trial.push(unit(n, i));
        trial.push(j.column(i));
        let rank = Matrix::from_fn(trial.len(), n, |r, c| trial[r][c].clone()).rank();
        if rank == trial.len() {
            chosen.push(i);
            span = trial;
        }
    }
    chosen
}

/// The double `𝔥 ⋉ 𝔥*` (coadjoint action), basis `e_i` then `e^i`.
pub fn double(h: &LieAlgebra) -> Result<LieAlgebra, Error> {
    let n = h.dim();
    let ad: Vec<Matrix> = (0..n).map(|i| h.ad(&unit(n, i))).collect();
    let rep = Representation::new(h.clone(), ad)?.dual();
    crate::semidirect::semidirect_product(&rep, h.dual_labels())
}

/// `DGA(𝔥, J)` for an integrable `J`. Generators are `Z̄_k = X_k + iJX_k`
/// (labels `zb1…`) followed by `α_k = ξ^k + iη^k` (labels `a1…`), where
/// `ξ, η` is the basis dual to `X, JX` from [`adapted_basis`].
pub fn dga_from_complex(h: &LieAlgebra, j: &Matrix) -> Result<DGAPresentation, Error> {
    let n = h.dim();
    let mut pre = Report::new("DGA(h, J)");
    for c in check_complex_structure(h, j)? {
        pre.push(c);
    }
    pre.into_result()?;
    let m = n / 2;
    let xs = adapted_basis(j);
    let mut basis_cols: Vec<Vec<Scalar>> = xs.iter().map(|&i| unit(n, i)).collect();
    basis_cols.extend(xs.iter().map(|&i| j.column(i)));
    let b = Matrix::from_columns(n, &basis_cols)?;
    let dual = b.inverse()?; // rows: ξ^1…ξ^m, η^1…η^m
    let i = C::i();
    let lift = |v: &[Scalar]| -> Vec<C> { v.iter().map(|c| C::from(c.clone())).collect() };
    let zero_n = vec![C::zero(); n];

    // generators G and conjugates Ḡ as vectors in the double
    let mut gens = Vec::new();
    let mut conj = Vec::new();
    for k in 0..m {
        for sign in [C::one(), -C::one()] {
            let v: Vec<C> = lift(&basis_cols[k])
                .into_iter()
                .zip(lift(&basis_cols[m + k]))
                .map(|(x, jx)| x + sign.clone() * i.clone() * jx)
                .collect();
            let mut full = v;
            full.extend(zero_n.clone());
            if sign.is_one() {
                gens.push(full);
            } else {
                conj.push(full);
            }
        }
    }
    for k in 0..m {
        for sign in [C::one(), -C::one()] {
            let v: Vec<C> = lift(dual.row(k))
                .into_iter()
                .zip(lift(dual.row(m + k)))
                .map(|(xi, eta)| xi + sign.clone() * i.clone() * eta)
                .collect();
            let mut full = zero_n.clone();
            full.extend(v);
            if sign.is_one() {
                gens.push(full);
            } else {
                conj.push(full);
            }
        }
    }

    let dbl = double(h)?.complexify();
    let gmat = Matrix::from_columns(2 * n, &gens)?;
    let coords = |v: &[C]| -> Result<Vec<C>, Error> {
        gmat.solve_any(v).ok_or_else(|| {
            Error::Rejected(crate::Rejection(vec![Check::fail(
                law::NIJENHUIS,
                vec![],
                "generator space is not closed under the bracket",
            )]))
        })
    };
    let mut labels: Vec<String> = (1..=m).map(|k| format!("zb{k}")).collect();
    labels.extend((1..=m).map(|k| format!("a{k}")));
    let mut br = LieAlgebra::abelian(labels);
    for a in 0..n {
        for c in a + 1..n {
            let v = dbl.bracket(&gens[a], &gens[c]);
            if !is_zero_vec(&v) {
                br.set_bracket(a, c, coords(&v)?)?;
            }
        }
    }

    // pairing ⟨g_a, ḡ_b⟩ and the dual basis u of Ḡ
    let pair = |x: &[C], y: &[C]| -> C {
        let mut s = C::zero();
        for k in 0..n {
            s += x[n + k].clone() * y[k].clone() + x[k].clone() * y[n + k].clone();
        }
        s
    };
    let q = Matrix::from_fn(n, n, |a, b| pair(&gens[a], &conj[b]));
    let t = q.inverse()?;
    let u: Vec<Vec<C>> = (0..n)
        .map(|a| {
            let mut v = vec![C::zero(); 2 * n];
            for (b, cb) in conj.iter().enumerate() {
                crate::exact::matrix::axpy(&mut v, &t[(b, a)], cb);
            }
            v
        })
        .collect();
    let mut d = vec![Form::zero(n, 2); n];
    for a in 0..n {
        for b in a + 1..n {
            let w = dbl.bracket(&u[a], &u[b]);
            if is_zero_vec(&w) {
                continue;
            }
            for (c, g) in gens.iter().enumerate() {
                let coef = -pair(g, &w);
                d[c].add_term(vec![a, b], coef)?;
            }
        }
    }
    let mut dga = DGAPresentation::new(br, d)?;
    dga.notes.push("the bracket of two (1,0)-forms is zero".into());
    Ok(dga)
}

/// Checks that `φ` (columns: images of the generators of `a` in the
/// generators of `b`) commutes with `d` and the bracket, and is invertible.
pub fn check_dga_isomorphism(a: &DGAPresentation, b: &DGAPresentation, phi: &Matrix<C>) -> Result<Report, Error> {
    let (ma, mb) = (a.dim(), b.dim());
    if phi.cols() != ma || phi.rows() != mb {
        return Err(Error::DimensionMismatch {
            expected: ma,
            found: phi.cols(),
        });
    }
    let mut r = Report::new("DGA isomorphism");
    // witness: the first column that depends on the earlier ones
    let (_, pivots) = phi.rref();
    r.push(match (0..ma).find(|c| !pivots.contains(c)) {
        None if phi.is_square() => Check::pass(law::INVERTIBLE),
        None => Check::fail(law::INVERTIBLE, vec![], "φ is not square"),
        Some(c) => Check::fail(law::INVERTIBLE, vec![c], format!("φ({}) depends on earlier images", a.labels()[c])),
    });
    let images: Vec<Form> = (0..ma).map(|i| vec_to_form(&phi.column(i))).collect();
    let mut chain = None;
    for i in 0..ma {
        let lhs = a.d[i].pullback(mb, &images)?;
        let rhs = b.differential(&images[i])?;
        if lhs != rhs {
            chain = Some((vec![i], format!("φ(d {}) ≠ d(φ {})", a.labels()[i], a.labels()[i])));
            break;
        }
    }
    r.push(Check::from_witness(law::DGA_CHAIN, chain));
    let mut brk = None;
    'pairs: for i in 0..ma {
        for j in i + 1..ma {
            let lhs = phi.mul_vec(&a.bracket.bracket_basis(i, j))?;
            let rhs = b.bracket.bracket(&phi.column(i), &phi.column(j));
            if lhs != rhs {
                brk = Some((
                    vec![i, j],
                    format!("φ[{x}, {y}] ≠ [φ{x}, φ{y}]", x = a.labels()[i], y = a.labels()[j]),
                ));
                break 'pairs;
            }
        }
    }
    r.push(Check::from_witness(law::DGA_BRACKET, brk));
    Ok(r)
}

/// The explicit isomorphism `DGA(𝔥, J) → DGA(𝔥, Ω1)` for a special
/// Lagrangian structure built from a connection. With `Ω♭(X) = Ω1(X, ·)`
/// and `ϖ(x, u) = (x, ω(·, u))`:
///
/// - `Z̄_k = (e_k, i v_k) ↦ Ω♭(e_k, 0)`;
/// - `α_k = e^k + i v^k ↦ 2 Ω♭(0, ϖ_V⁻¹ v^k)`.
///
/// It factors through the mirror `𝔥̂`: `G_J ≅ 𝔥̂` as Lie algebras, the scaling
/// `(x, μ) ↦ (x, −2iμ)` matches the pairing on `G_J` with `2iΩ̂`, and `ϖ⁻¹`
/// carries `Ω̂` back to `−Ω1`.
pub fn explicit_isomorphism(sl: &SpecialLagrangian) -> Result<Matrix<C>, Error> {
    let n = sl.n();
    let xs = adapted_basis(&sl.j);
    if xs != (0..n).collect::<Vec<_>>() {
        return Err(Error::parse("explicit isomorphism", "unexpected adapted basis"));
    }
    let flat = sl.omega1.to_matrix()?.transpose(); // column i is Ω♭(e_i)
    let w = varpi(&sl.connection);
    let winv = w.inverse()?;
    let mut cols: Vec<Vec<C>> = Vec::new();
    for k in 0..n {
        cols.push(flat.column(k).into_iter().map(C::from).collect());
    }
    for k in 0..n {
        // (0, ϖ_V⁻¹ v^k) is column n+k of ϖ⁻¹
        let x = winv.column(n + k);
        let img = flat.mul_vec(&x)?;
        cols.push(img.into_iter().map(|c| C::from(c) * C::from_int(2)).collect());
    }
    Matrix::from_columns(2 * n, &cols)
}

/// Labels of `𝔥*` generators, for display.
pub fn form_labels(h: &LieAlgebra) -> Vec<String> {
    h.labels().iter().map(|l| dual_label(l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::semidirect::{build_special_lagrangian, ConnectionData};
    use crate::lie::numbered_labels;

    fn kt4_sl() -> SpecialLagrangian {
        let g = LieAlgebra::abelian(numbered_labels("e", 2));
        let g1 = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let c = ConnectionData::new(g, ExteriorForm::parse(2, "e1^e2").unwrap(), vec![g1, Matrix::zeros(2, 2)]).unwrap();
        build_special_lagrangian(&c).unwrap()
    }

    #[test]
    fn schouten_on_generators_matches_bracket() {
        let sl = kt4_sl();
        let dga = dga_from_symplectic(&sl.h, &sl.omega1).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let x = dga.bracket(&dga.generator(a), &dga.generator(b)).unwrap();
                assert_eq!(form_to_vec(&x), dga.bracket.bracket_basis(a, b));
            }
        }
    }

    #[test]
    fn symplectic_dga_of_kt4() {
        let sl = kt4_sl();
        let dga = dga_from_symplectic(&sl.h, &sl.omega1).unwrap();
        assert_eq!(dga.d[3], ExteriorForm::parse(4, "-f1^f3").unwrap().complexify());
        let r = dga.check_axioms(DEFAULT_SEED, 20).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(check_anchor(&sl.h, &sl.omega1, &dga).unwrap().status, crate::Status::Pass);
    }

    #[test]
    fn complex_dga_of_kt4() {
        let sl = kt4_sl();
        let dga = dga_from_complex(&sl.h, &sl.j).unwrap();
        assert_eq!(dga.dim(), 4);
        let r = dga.check_axioms(DEFAULT_SEED, 20).unwrap();
        assert!(r.passed(), "{r}\n{}", dga.describe());
    }

    #[test]
    fn explicit_isomorphism_kt4() {
        let sl = kt4_sl();
        let a = dga_from_complex(&sl.h, &sl.j).unwrap();
        let b = dga_from_symplectic(&sl.h, &sl.omega1).unwrap();
        let phi = explicit_isomorphism(&sl).unwrap();
        let r = check_dga_isomorphism(&a, &b, &phi).unwrap();
        assert!(r.passed(), "{r}\n{}\n{}\n{:?}", a.describe(), b.describe(), phi);
        // f^4 is not closed but d a1 = 0, so a1 ↦ f^4 breaks the chain law
        let mut bad = phi.clone();
        bad[(3, 2)] = bad[(3, 2)].clone() + C::from(int(1));
        let r = check_dga_isomorphism(&a, &b, &bad).unwrap();
        let c = r.find(law::DGA_CHAIN).unwrap();
        assert!(c.is_fail());
        assert!(!c.witness.is_empty());
    }

    #[test]
    fn file_round_trip() {
        let sl = kt4_sl();
        let dga = dga_from_complex(&sl.h, &sl.j).unwrap();
        let json = serde_json::to_string(&dga.to_file()).unwrap();
        let back: DgaFile = serde_json::from_str(&json).unwrap();
        let mut again = DGAPresentation::from_file(&back).unwrap();
        again.notes = dga.notes.clone();
        assert_eq!(again, dga);
    }
}
