//! Worked examples, and the 2-step nilpotent families `ℝ^{2n}⋉_γℝ^{2n}`.
//!
//! Every entry is stored as a [`ConnectionData`] `(𝔤, ω, γ)` together with
//! facts about `𝔥 = 𝔤⋉_γ V` that the entry is expected to satisfy. The
//! facts were worked out by hand and are compared with what the library
//! computes in [`entry_report`].
//!
//! ```
//! use csymlie::catalog;
//!
//! let ids: Vec<_> = catalog::entries().into_iter().map(|e| e.id).collect();
//! assert_eq!(ids, ["abelian4", "kt4", "aff-case2", "aff-case3", "tower8"]);
//! let kt4 = catalog::entry("kt4").unwrap();
//! assert!(catalog::entry_report(&kt4).unwrap().passed());
//! ```

use std::fs;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exact::{frac, int, ExteriorForm, Matrix, Scalar, Subspace};
use crate::geometry::certify_complex_symplectic;
use crate::lie::{numbered_labels, LieAlgebra};
use crate::report::{law, Check, Report};
use crate::semidirect::{build_special_lagrangian, semidirect_product, ConnectionData, ConnectionFile};
use crate::tower::build_tower_connection;
use crate::Error;

/// Facts about `𝔥` recorded with an entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    /// `𝔥.describe()`.
    pub brackets: String,
    pub center_dim: usize,
    pub lower_central_dims: Vec<usize>,
    pub nilpotency_step: Option<usize>,
    /// `Ω1` and `Ω2` in the syntax of [`ExteriorForm::parse`], indices
    /// counted through the whole basis of `𝔥`.
    pub omega1: String,
    pub omega2: String,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub connection: ConnectionData,
    pub expected: Expected,
    /// Conventions chosen where the source data was ambiguous.
    pub notes: Vec<String>,
}

/// Wire format of an entry, as read from `CSYMLIE_CATALOG_DIR`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryFile {
    pub id: String,
    #[serde(default)]
    pub description: String,
    pub connection: ConnectionFile,
    pub expected: Expected,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl CatalogEntry {
    pub fn to_file(&self) -> EntryFile {
        EntryFile {
            id: self.id.clone(),
            description: self.description.clone(),
            connection: self.connection.to_file(),
            expected: self.expected.clone(),
            notes: self.notes.clone(),
        }
    }

    pub fn from_file(file: &EntryFile) -> Result<Self, Error> {
        Ok(CatalogEntry {
            id: file.id.clone(),
            description: file.description.clone(),
            connection: ConnectionData::from_file(&file.connection)?,
            expected: file.expected.clone(),
            notes: file.notes.clone(),
        })
    }
}

const J_READING: &str = "the complex structure listed as Je1 = e3, Je2 = e4 is read as Jf1 = f3, Jf2 = f4";

fn plane(brackets: &[(usize, usize, usize, Scalar)]) -> LieAlgebra {
    LieAlgebra::from_structure(2, "e", brackets).expect("valid structure")
}

fn four_dim(
    id: &str,
    description: &str,
    g: LieAlgebra,
    gamma: [Matrix; 2],
    brackets: &str,
    center_dim: usize,
    lower_central_dims: Vec<usize>,
    nilpotency_step: Option<usize>,
) -> CatalogEntry {
    let omega = ExteriorForm::parse(2, "e1^e2").expect("valid form");
    CatalogEntry {
        id: id.into(),
        description: description.into(),
        connection: ConnectionData::new(g, omega, gamma.to_vec()).expect("consistent sizes"),
        expected: Expected {
            brackets: brackets.into(),
            center_dim,
            lower_central_dims,
            nilpotency_step,
            omega1: "-f1^f4 + f2^f3".into(),
            omega2: "f1^f2 - f3^f4".into(),
        },
        notes: vec![J_READING.into()],
    }
}

fn m(rows: [[Scalar; 2]; 2]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("rectangular")
}

pub fn abelian4() -> CatalogEntry {
    four_dim(
        "abelian4",
        "ℝ² with the trivial connection; 𝔥 = ℝ⁴",
        plane(&[]),
        [Matrix::zeros(2, 2), Matrix::zeros(2, 2)],
        "abelian",
        4,
        vec![4, 0],
        Some(1),
    )
}

pub fn kt4() -> CatalogEntry {
    four_dim(
        "kt4",
        "ℝ² with γ(e1) = [[0,0],[1,0]]; 𝔥 is the Heisenberg algebra times ℝ",
        plane(&[]),
        [Matrix::from_ints(&[&[0, 0], &[1, 0]]), Matrix::zeros(2, 2)],
        "[f1, f3] = f4",
        2,
        vec![4, 1, 0],
        Some(2),
    )
}

pub fn aff_case2() -> CatalogEntry {
    four_dim(
        "aff-case2",
        "aff(ℝ) with γ(e1) = diag(−1, 1), γ(e2) = 0",
        plane(&[(0, 1, 1, int(1))]),
        [Matrix::diagonal(&[int(-1), int(1)]), Matrix::zeros(2, 2)],
        "[f1, f2] = f2, [f1, f3] = -f3, [f1, f4] = f4",
        0,
        vec![4, 3],
        None,
    )
}

pub fn aff_case3() -> CatalogEntry {
    four_dim(
        "aff-case3",
        "aff(ℝ) with γ(e1) = diag(−1/2, 1/2), γ(e2) = [[0,0],[−1/2,0]]",
        plane(&[(0, 1, 1, int(1))]),
        [
            Matrix::diagonal(&[frac(-1, 2), frac(1, 2)]),
            m([[int(0), int(0)], [frac(-1, 2), int(0)]]),
        ],
        "[f1, f2] = f2, [f1, f3] = -1/2 f3, [f1, f4] = 1/2 f4, [f2, f3] = -1/2 f4",
        0,
        vec![4, 3],
        None,
    )
}

/// `(kt4, Ω1, Γ)` with `Γ` the hypersymplectic connection of kt4.
///
/// `γ(e1)e1 = e2` contributes `Γ_{f1}f1 = f2` next to `Γ_{f1}f3 = f4`, so
/// `𝔥` has the bracket `[f1, v1] = v2` and a four-dimensional center.
pub fn tower8() -> CatalogEntry {
    let base = kt4();
    let sl = build_special_lagrangian(&base.connection).expect("kt4 is certified");
    let gamma = build_tower_connection(&sl).expect("kt4 splitting").gamma;
    CatalogEntry {
        id: "tower8".into(),
        description: "kt4 with Ω1 and its hypersymplectic connection; 𝔥 is 8-dimensional".into(),
        connection: ConnectionData::new(sl.h, sl.omega1, gamma).expect("consistent sizes"),
        expected: Expected {
            brackets: "[f1, f3] = f4, [f1, v1] = v2, [f1, v3] = v4".into(),
            center_dim: 4,
            lower_central_dims: vec![8, 3, 0],
            nilpotency_step: Some(2),
            omega1: "e1^e8 - e2^e7 + e3^e6 - e4^e5".into(),
            omega2: "-e1^e4 + e2^e3 + e5^e8 - e6^e7".into(),
        },
        notes: Vec::new(),
    }
}

/// The built-in catalog, in a fixed order.
pub fn entries() -> Vec<CatalogEntry> {
    vec![abelian4(), kt4(), aff_case2(), aff_case3(), tower8()]
}

pub fn entry(id: &str) -> Result<CatalogEntry, Error> {
    entries()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownEntry(id.into()))
}

/// Reads every `*.json` entry in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<CatalogEntry>, Error> {
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p)?;
            let file: EntryFile =
                serde_json::from_str(&text).map_err(|e| Error::parse(p.display().to_string(), e.to_string()))?;
            CatalogEntry::from_file(&file)
        })
        .collect()
}

/// The built-in entries with those in `dir` layered on top: an entry with
/// a known id replaces it, new ids are appended.
pub fn entries_with_overrides(dir: Option<&Path>) -> Result<Vec<CatalogEntry>, Error> {
    let mut out = entries();
    if let Some(dir) = dir {
        for e in load_dir(dir)? {
            match out.iter_mut().find(|x| x.id == e.id) {
                Some(slot) => *slot = e,
                None => out.push(e),
            }
        }
    }
    Ok(out)
}

/// Connection laws, the special Lagrangian package, certification of
/// `(J, Ω1)`, and the recorded facts.
pub fn entry_report(e: &CatalogEntry) -> Result<Report, Error> {
    let mut r = Report::new(e.id.clone());
    r.absorb(e.connection.check()?);
    if !r.passed() {
        return Ok(r);
    }
    let sl = build_special_lagrangian(&e.connection)?;
    r.absorb(sl.verify()?);
    let certified = certify_complex_symplectic(&sl.h, &sl.j, &sl.omega1);
    r.push(match certified {
        Ok(_) => Check::pass(law::CLOSED).with_detail("(J, Ω1) certified"),
        Err(err) => Check::fail(law::CLOSED, vec![], err.to_string()),
    });
    for c in expected_checks(&sl.h, &sl.omega1, &sl.omega2, &e.expected)? {
        r.push(c);
    }
    for n in &e.notes {
        r.push(Check::note(law::CONVENTION, n.clone()));
    }
    Ok(r)
}

fn expected_checks(
    h: &LieAlgebra,
    omega1: &ExteriorForm,
    omega2: &ExteriorForm,
    x: &Expected,
) -> Result<Vec<Check>, Error> {
    let fact = |name: &str, ok: bool, found: String| {
        if ok {
            Check::pass(law::EXPECTED).with_detail(name.to_string())
        } else {
            Check::fail(law::EXPECTED, vec![], format!("{name}: found {found}"))
        }
    };
    let desc = h.describe();
    let center = h.center().dim();
    let lcs = h.lower_central_dims();
    let step = h.nilpotency_step();
    let o1 = ExteriorForm::parse(h.dim(), &x.omega1)?;
    let o2 = ExteriorForm::parse(h.dim(), &x.omega2)?;
    Ok(vec![
        fact("brackets", desc == x.brackets, desc),
        fact("center dimension", center == x.center_dim, center.to_string()),
        fact("lower central series", lcs == x.lower_central_dims, format!("{lcs:?}")),
        fact("nilpotency step", step == x.nilpotency_step, format!("{step:?}")),
        fact("Ω1", *omega1 == o1, omega1.display_with(&h.dual_labels())),
        fact("Ω2", *omega2 == o2, omega2.display_with(&h.dual_labels())),
    ])
}

/// `n` symmetric `n×n` matrices `A_1, …, A_n` defining
/// `γ(e_i) = [[0,0],[A_i,0]]`, `γ(e_{i+n}) = 0` on `ℝ^{2n}` with
/// `ω = Σ e^i∧e^{i+n}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NilpotentFamilySpec {
    pub n: usize,
    pub a: Vec<Matrix>,
}

impl NilpotentFamilySpec {
    pub fn new(a: Vec<Matrix>) -> Result<Self, Error> {
        let n = a.len();
        for m in &a {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: if m.rows() != n { m.rows() } else { m.cols() },
                });
            }
        }
        Ok(NilpotentFamilySpec { n, a })
    }

    /// First `(i, r, c)` with `A_i[r][c] ≠ A_i[c][r]`.
    pub fn symmetry_witness(&self) -> Option<(usize, usize, usize)> {
        self.a
            .iter()
            .enumerate()
            .find_map(|(i, m)| m.first_asymmetry().map(|(r, c)| (i, r, c)))
    }

    /// First `(i, j)` with column `j` of `A_i` different from column `i` of `A_j`.
    pub fn column_witness(&self) -> Option<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.a[i].column(j) != self.a[j].column(i))
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new(format!("family n = {}", self.n));
        r.push(match self.symmetry_witness() {
            None => Check::pass(law::SYMMETRIC_BLOCKS),
            Some((i, a, b)) => Check::fail(law::SYMMETRIC_BLOCKS, vec![i, a, b], format!("A_{} is not symmetric", i + 1)),
        });
        r.push(match self.column_witness() {
            None => Check::pass(law::COLUMN_CONDITION),
            Some((i, j)) => Check::fail(
                law::COLUMN_CONDITION,
                vec![i, j],
                format!("column {} of A_{} ≠ column {} of A_{}", j + 1, i + 1, i + 1, j + 1),
            ),
        });
        r
    }

    /// `ω = Σ e^i∧e^{i+n}` and the block connection, without validation.
    pub fn connection(&self) -> ConnectionData {
        let n = self.n;
        let g = LieAlgebra::abelian(numbered_labels("e", 2 * n));
        let mut omega = ExteriorForm::zero(2 * n, 2);
        for i in 0..n {
            omega.add_term(vec![i, i + n], int(1)).expect("indices in range");
        }
        let mut gamma = Vec::with_capacity(2 * n);
        for a in &self.a {
            let z = Matrix::zeros(n, n);
            gamma.push(Matrix::block(&z, &z, a, &z).expect("square blocks"));
        }
        gamma.extend((0..n).map(|_| Matrix::zeros(2 * n, 2 * n)));
        ConnectionData::new(g, omega, gamma).expect("consistent sizes")
    }

    /// `n` matrices with entries in `{−3, …, 3}/{1, 2}`. When `valid`, the
    /// entries come from a fully symmetric tensor `T_{ijk}` so that both
    /// invariants hold; otherwise each `A_i` is only symmetric.
    pub fn random(n: usize, valid: bool, rng: &mut impl Rng) -> Self {
        let mut entry = || frac(rng.gen_range(-3..=3), rng.gen_range(1..=2));
        let mut a = vec![Matrix::zeros(n, n); n];
        if valid {
            for i in 0..n {
                for j in i..n {
                    for k in j..n {
                        let t = entry();
                        for (x, y, z) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                            a[x][(z, y)] = t.clone();
                        }
                    }
                }
            }
        } else {
            for m in a.iter_mut() {
                for r in 0..n {
                    for c in r..n {
                        let t = entry();
                        m[(r, c)] = t.clone();
                        m[(c, r)] = t;
                    }
                }
            }
        }
        NilpotentFamilySpec { n, a }
    }
}

#[derive(Clone, Debug)]
pub struct NilpotentFamily {
    pub spec: NilpotentFamilySpec,
    pub connection: ConnectionData,
    /// `𝔥` on `e_1, …, e_{2n}, v_1, …, v_{2n}`.
    pub algebra: LieAlgebra,
}

/// Rejects with the failing indices when a block is not symmetric or the
/// column condition fails; the latter is the torsion-free failure.
pub fn build_nilpotent_family(spec: &NilpotentFamilySpec) -> Result<NilpotentFamily, Error> {
    let mut r = spec.check();
    let connection = spec.connection();
    r.absorb(connection.check()?);
    r.into_result()?;
    let algebra = semidirect_product(&connection.representation(), numbered_labels("v", 2 * spec.n))?;
    Ok(NilpotentFamily {
        spec: spec.clone(),
        connection,
        algebra,
    })
}

impl NilpotentFamily {
    /// 2-step (or abelian) with `[𝔥,𝔥] ⊆ span{v_{n+1}, …, v_{2n}} ⊆ center`.
    pub fn structure_report(&self) -> Report {
        let n = self.spec.n;
        let h = &self.algebra;
        let mut r = Report::new("family structure");
        let abelian = self.spec.a.iter().all(Matrix::is_zero);
        let step_ok = match h.nilpotency_step() {
            Some(1) => abelian,
            Some(2) => !abelian,
            _ => false,
        };
        r.push(if step_ok {
            Check::pass(law::TWO_STEP)
        } else {
            Check::fail(law::TWO_STEP, vec![], format!("lower central series {:?}", h.lower_central_dims()))
        });
        let top: Vec<usize> = (3 * n..4 * n).collect();
        let top = Subspace::coordinate(4 * n, &top);
        let center = h.center();
        let commutator = h.commutator();
        r.push(if top.contains_subspace(&commutator) && center.contains_subspace(&top) {
            Check::pass(law::COMMUTATOR_CENTRAL)
        } else {
            Check::fail(law::COMMUTATOR_CENTRAL, vec![], "commutator not inside span{v_{n+1}, …, v_{2n}} ⊆ center")
        });
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semidirect::verify_self_mirror;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_entry_reports_clean() {
        for e in entries() {
            let r = entry_report(&e).unwrap();
            assert!(r.passed(), "{}: {r}", e.id);
        }
    }

    #[test]
    fn notes_fail_only_under_strict() {
        let r = entry_report(&kt4()).unwrap();
        assert!(r.passed());
        assert!(!r.passed_strict());
        assert!(entry_report(&tower8()).unwrap().passed_strict());
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(entry("kt5"), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn family_n1_is_kt4() {
        let spec = NilpotentFamilySpec::new(vec![Matrix::from_ints(&[&[1]])]).unwrap();
        let fam = build_nilpotent_family(&spec).unwrap();
        let k = kt4().connection;
        assert_eq!(fam.connection.gamma, k.gamma);
        assert_eq!(fam.connection.omega, k.omega);
        assert_eq!(fam.algebra.describe(), "[e1, v1] = v2");
    }

    #[test]
    fn family_n2_brackets() {
        let a1 = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        let a2 = Matrix::from_ints(&[&[0, 0], &[0, 1]]);
        let fam = build_nilpotent_family(&NilpotentFamilySpec::new(vec![a1, a2]).unwrap()).unwrap();
        assert_eq!(fam.algebra.describe(), "[e1, v1] = v3, [e2, v2] = v4");
        assert!(fam.structure_report().passed());
        assert!(verify_self_mirror(&fam.connection).unwrap().passed());
    }

    #[test]
    fn column_condition_rejection() {
        let a1 = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let a2 = Matrix::zeros(2, 2);
        let spec = NilpotentFamilySpec::new(vec![a1, a2]).unwrap();
        let err = build_nilpotent_family(&spec).unwrap_err();
        let laws: Vec<_> = err.failures().iter().map(|c| (c.law, c.witness.clone())).collect();
        assert_eq!(laws, [(law::COLUMN_CONDITION, vec![0, 1]), (law::TORSION_FREE, vec![0, 1])]);
    }

    #[test]
    fn asymmetric_block_rejected() {
        let spec = NilpotentFamilySpec::new(vec![Matrix::from_ints(&[&[0, 1], &[0, 0]]), Matrix::zeros(2, 2)]).unwrap();
        let err = build_nilpotent_family(&spec).unwrap_err();
        assert_eq!(err.failures()[0].law, law::SYMMETRIC_BLOCKS);
        assert_eq!(err.failures()[0].witness, vec![0, 0, 1]);
    }

    #[test]
    fn random_valid_specs_build() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=3 {
            let spec = NilpotentFamilySpec::random(n, true, &mut rng);
            assert!(spec.check().passed());
            assert!(build_nilpotent_family(&spec).is_ok());
        }
    }

    #[test]
    fn entry_file_round_trip() {
        let e = aff_case3();
        let json = serde_json::to_string(&e.to_file()).unwrap();
        let back = CatalogEntry::from_file(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.connection, e.connection);
        assert_eq!(back.expected, e.expected);
    }
}
