//! Structured verification results.
//!
//! Every checker returns a [`Report`]: a list of [`Check`]s, one per law,
//! each with a status and, on failure, the first witness in basis order.
//! Witness indices are 0-based in memory and 1-based when rendered.

use std::fmt;

use serde::{Serialize, Serializer};

/// Law identifiers. Each string is stable and used verbatim in reports.
pub mod law {
    pub const JACOBI: &str = "jacobi";
    pub const HOMOMORPHISM: &str = "homomorphism";
    pub const INVERTIBLE: &str = "invertible";
    pub const J_SQUARED: &str = "j-squared";
    pub const NIJENHUIS: &str = "nijenhuis";
    pub const CLOSED: &str = "closed";
    pub const NONDEGENERATE: &str = "nondegenerate";
    pub const COMPATIBLE: &str = "j-compatible";
    pub const OMEGA2_DEFINITION: &str = "omega2-definition";
    pub const OMEGA2_CLOSED: &str = "omega2-closed";
    pub const OMEGA2_NONDEGENERATE: &str = "omega2-nondegenerate";
    pub const OMEGA2_COMPATIBLE: &str = "omega2-j-compatible";
    pub const TYPE_20: &str = "type-2-0";
    pub const COMPLEMENTARY: &str = "complementary";
    pub const SUBALGEBRA: &str = "subalgebra";
    pub const IDEAL: &str = "ideal";
    pub const TOTALLY_REAL: &str = "totally-real";
    pub const ISOTROPIC: &str = "isotropic";
    pub const IDEAL_ABELIAN: &str = "isotropic-ideal-abelian";
    pub const J_IDEAL_SUBALGEBRA: &str = "j-ideal-subalgebra";
    pub const REPRESENTATION: &str = "representation";
    pub const TORSION_FREE: &str = "torsion-free";
    pub const PRESERVES_OMEGA: &str = "preserves-omega";
    pub const FLAT: &str = "flat";
    pub const OMEGA_CLOSED: &str = "omega-closed";
    pub const OMEGA_NONDEGENERATE: &str = "omega-nondegenerate";
    pub const GAMMA_CONSISTENT: &str = "gamma-consistent";
    pub const OMEGA3_CLOSED: &str = "omega3-closed";
    pub const E_SQUARED: &str = "e-squared";
    pub const E_INTEGRABLE: &str = "e-integrable";
    pub const JE_ANTICOMMUTE: &str = "je-anticommute";
    pub const METRIC_SYMMETRIC: &str = "metric-symmetric";
    pub const METRIC_NEUTRAL: &str = "metric-neutral";
    pub const RELATIONS: &str = "form-relations";
    pub const METRIC_RELATIONS: &str = "metric-relations";
    pub const MIRROR_SYMPLECTIC: &str = "mirror-symplectic";
    pub const MIRROR_LAGRANGIAN: &str = "mirror-lagrangian";
    pub const MIRROR_COMPLEX: &str = "mirror-complex";
    pub const MIRROR_TOTALLY_REAL: &str = "mirror-totally-real";
    pub const VARPI_ISOMORPHISM: &str = "varpi-isomorphism";
    pub const OMEGA_HAT: &str = "omega-hat-eq-minus-omega-tilde";
    pub const J_HAT: &str = "j-hat-eq-j-tilde";
    pub const ROUND_TRIP: &str = "mirror-round-trip";
    pub const D_SQUARED: &str = "d-squared";
    pub const ANTISYMMETRY: &str = "graded-antisymmetry";
    pub const GRADED_JACOBI: &str = "graded-jacobi";
    pub const LEIBNIZ: &str = "graded-leibniz";
    pub const D_DERIVATION: &str = "d-derivation-of-bracket";
    pub const ANCHOR: &str = "anchor-intertwines";
    pub const DGA_CHAIN: &str = "dga-chain-map";
    pub const DGA_BRACKET: &str = "dga-bracket-map";
    pub const TOWER_FORMULA: &str = "tower-connection-formula";
    pub const TOWER_TORSION_FREE: &str = "tower-torsion-free";
    pub const TOWER_FLAT: &str = "tower-flat";
    pub const PARALLEL: &str = "tower-parallel";
    pub const TOWER_RESTRICTION: &str = "tower-restriction";
    pub const LEVI_CIVITA: &str = "tower-levi-civita";
    pub const SYMMETRIC_BLOCKS: &str = "family-symmetric";
    pub const COLUMN_CONDITION: &str = "family-column-condition";
    pub const TWO_STEP: &str = "family-two-step";
    pub const COMMUTATOR_CENTRAL: &str = "family-commutator-central";
    pub const EXPECTED: &str = "expected-fact";
    pub const CONVENTION: &str = "convention";

    /// One-line description of what a law asserts.
    pub fn describe(id: &str) -> &'static str {
        match id {
            JACOBI => "Jacobi identity on all basis triples",
            HOMOMORPHISM => "φ[x,y] = [φx,φy] on all basis pairs",
            INVERTIBLE => "linear map has nonzero determinant",
            J_SQUARED => "J² = −I",
            NIJENHUIS => "Nijenhuis tensor of J vanishes",
            CLOSED => "Ω1 is closed under the Chevalley–Eilenberg differential",
            NONDEGENERATE => "Ω1 has nonzero determinant",
            COMPATIBLE => "Ω1(JX,Y) = Ω1(X,JY)",
            OMEGA2_DEFINITION => "Ω2 = −Ω1∘J",
            OMEGA2_CLOSED => "Ω2 is closed",
            OMEGA2_NONDEGENERATE => "Ω2 has nonzero determinant",
            OMEGA2_COMPATIBLE => "Ω2(JX,Y) = Ω2(X,JY)",
            TYPE_20 => "Ω1 + iΩ2 annihilates every X + iJX",
            COMPLEMENTARY => "𝔤 ⊕ V is the whole algebra",
            SUBALGEBRA => "𝔤 is a subalgebra",
            IDEAL => "V is an ideal",
            TOTALLY_REAL => "J𝔤 = V and JV = 𝔤",
            ISOTROPIC => "Ω1 vanishes on 𝔤 and on V",
            IDEAL_ABELIAN => "an isotropic totally real ideal is abelian",
            J_IDEAL_SUBALGEBRA => "J of a totally real isotropic ideal is a subalgebra",
            REPRESENTATION => "γ([x,y]) = [γ(x),γ(y)]",
            TORSION_FREE => "γ(x)y − γ(y)x = [x,y]",
            PRESERVES_OMEGA => "ω(γ(x)y,z) + ω(y,γ(x)z) = 0",
            FLAT => "γ([x,y]) = [γ(x),γ(y)] for the connection",
            OMEGA_CLOSED => "ω is closed on 𝔤",
            OMEGA_NONDEGENERATE => "ω has nonzero determinant",
            GAMMA_CONSISTENT => "−Jρ(x)Jy = γ(x)y on 𝔤",
            OMEGA3_CLOSED => "Ω3 is closed",
            E_SQUARED => "E² = I",
            E_INTEGRABLE => "±1 eigenspaces of E are subalgebras",
            JE_ANTICOMMUTE => "JE = −EJ",
            METRIC_SYMMETRIC => "g is symmetric",
            METRIC_NEUTRAL => "g has neutral signature",
            RELATIONS => "Ω1 = Ω2∘J, Ω3 = Ω2∘E, Ω2 = −Ω1∘J, Ω2 = Ω3∘E",
            METRIC_RELATIONS => "Ω1 = g(E·,·), Ω2 = g(JE·,·), Ω3 = g(J·,·), g = Ω2∘(JE)",
            MIRROR_SYMPLECTIC => "Ω̂ is closed and nondegenerate on the dual product",
            MIRROR_LAGRANGIAN => "𝔤 and V* are Lagrangian for Ω̂",
            MIRROR_COMPLEX => "Ĵ² = −I and Ĵ is integrable",
            MIRROR_TOTALLY_REAL => "Ĵ𝔤 = V* and ĴV* = 𝔤",
            VARPI_ISOMORPHISM => "ϖ is a Lie algebra isomorphism onto the dual product",
            OMEGA_HAT => "Ω̂ = −Ω̃ entrywise",
            J_HAT => "Ĵ = J̃ entrywise",
            ROUND_TRIP => "mirroring twice recovers the structures under ϖ",
            D_SQUARED => "d² = 0",
            ANTISYMMETRY => "bracket is graded antisymmetric",
            GRADED_JACOBI => "graded Jacobi identity",
            LEIBNIZ => "graded Leibniz rule",
            D_DERIVATION => "d is a derivation of the bracket",
            ANCHOR => "π# intertwines the bracket on 1-forms with the Lie bracket",
            DGA_CHAIN => "φ∘d = d∘φ on generators",
            DGA_BRACKET => "φ[a,b] = [φa,φb] on generators",
            TOWER_FORMULA => "Γ_(x,x')(y,y') = (ρ(x)y, ρ(x)y')",
            TOWER_TORSION_FREE => "Γ is torsion-free",
            TOWER_FLAT => "Γ is flat",
            PARALLEL => "ΓJ = ΓE = 0 and ΓΩ1 = ΓΩ2 = ΓΩ3 = 0",
            TOWER_RESTRICTION => "Γ restricted to 𝔤 is γ",
            LEVI_CIVITA => "Γg = 0",
            SYMMETRIC_BLOCKS => "each A_i is symmetric",
            COLUMN_CONDITION => "column j of A_i equals column i of A_j",
            TWO_STEP => "algebra is 2-step nilpotent or abelian",
            COMMUTATOR_CENTRAL => "commutator lies in the center",
            EXPECTED => "recorded fact about a catalog entry",
            CONVENTION => "a convention fixed by this library",
            _ => "",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Holds, but depends on a convention fixed here; fails under `--strict`.
    Note,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub law: &'static str,
    pub status: Status,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl Check {
    pub fn pass(law: &'static str) -> Self {
        Check {
            law,
            status: Status::Pass,
            witness: Vec::new(),
            detail: String::new(),
        }
    }

    pub fn fail(law: &'static str, witness: Vec<usize>, detail: impl Into<String>) -> Self {
        Check {
            law,
            status: Status::Fail,
            witness,
            detail: detail.into(),
        }
    }

    pub fn note(law: &'static str, detail: impl Into<String>) -> Self {
        Check {
            law,
            status: Status::Note,
            witness: Vec::new(),
            detail: detail.into(),
        }
    }

    /// `Pass` when `witness` is `None`, otherwise a failure carrying it.
    pub fn from_witness(law: &'static str, witness: Option<(Vec<usize>, String)>) -> Self {
        match witness {
            None => Check::pass(law),
            Some((w, d)) => Check::fail(law, w, d),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{} {:?}", self.law, self.status).to_lowercase();
        if !self.witness.is_empty() {
            let w: Vec<String> = self.witness.iter().map(|i| (i + 1).to_string()).collect();
            s.push_str(&format!(" at ({})", w.join(",")));
        }
        if !self.detail.is_empty() {
            s.push_str(&format!(": {}", self.detail));
        }
        s
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Check", 5)?;
        st.serialize_field("law", self.law)?;
        st.serialize_field("status", &self.status)?;
        let w: Vec<usize> = self.witness.iter().map(|i| i + 1).collect();
        st.serialize_field("witness", &w)?;
        st.serialize_field("detail", &self.detail)?;
        st.serialize_field("about", law::describe(self.law))?;
        st.end()
    }
}

/// An ordered list of checks about one subject.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Appends another report's checks, prefixing their details with its
    /// subject when that differs from ours.
    pub fn absorb(&mut self, other: Report) {
        for mut c in other.checks {
            if !other.subject.is_empty() && other.subject != self.subject {
                c.detail = if c.detail.is_empty() {
                    other.subject.clone()
                } else {
                    format!("{}: {}", other.subject, c.detail)
                };
            }
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        !self.checks.iter().any(Check::is_fail)
    }

    /// Like [`Report::passed`], but notes also count as failures.
    pub fn passed_strict(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.is_fail())
    }

    pub fn find(&self, law: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.law == law)
    }

    /// Status of the first check with this law, if any.
    pub fn status(&self, law: &str) -> Option<Status> {
        self.find(law).map(|c| c.status)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "subject": self.subject,
            "passed": self.passed(),
            "checks": self.checks,
        })
    }

    /// Ok when no check failed, otherwise the failures as an error.
    pub fn into_result(self) -> Result<Report, crate::Error> {
        if self.passed() {
            Ok(self)
        } else {
            Err(self.into())
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.subject)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Note => "NOTE",
            };
            write!(f, "  {tag} {}", c.law)?;
            if !c.witness.is_empty() {
                let w: Vec<String> = c.witness.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, " ({})", w.join(","))?;
            }
            if !c.detail.is_empty() {
                write!(f, " - {}", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_is_one_based_on_the_wire() {
        let c = Check::fail(law::JACOBI, vec![0, 1, 2], "jacobiator (0,0,2)");
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["witness"], serde_json::json!([1, 2, 3]));
        assert_eq!(v["status"], "fail");
        assert_eq!(c.summary(), "jacobi fail at (1,2,3): jacobiator (0,0,2)");
    }

    #[test]
    fn notes_only_fail_strictly() {
        let mut r = Report::new("x");
        r.push(Check::pass(law::JACOBI));
        r.push(Check::note(law::CONVENTION, "form-form bracket is zero"));
        assert!(r.passed());
        assert!(!r.passed_strict());
        r.push(Check::fail(law::CLOSED, vec![], ""));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn every_law_is_described() {
        for id in [law::JACOBI, law::J_HAT, law::LEIBNIZ, law::COLUMN_CONDITION] {
            assert!(!law::describe(id).is_empty());
        }
    }
}
