//! Acceptance criteria, each an exact check. Prints one line per criterion
//! and exits nonzero if any fails.

use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use csymlie::catalog::{self, build_nilpotent_family, NilpotentFamilySpec};
use csymlie::dga::{self, check_dga_isomorphism, dga_from_complex, dga_from_symplectic, explicit_isomorphism};
use csymlie::exact::{frac, int, signature, Field, GaussianScalar};
use csymlie::geometry::{certify_complex_symplectic, check_lagrangian_splitting, precompose, type_20_check};
use csymlie::lie::numbered_labels;
use csymlie::report::law;
use csymlie::semidirect::{
    build_special_lagrangian, dual_product, mirror_complex, mirror_symplectic, varpi, verify_self_mirror,
    SpecialLagrangian,
};
use csymlie::tower::{build_tower_connection, extend_tower, iterate_tower, Polarization};
use csymlie::{ExteriorForm, LieAlgebra, Matrix, Scalar, Subspace};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sl_of(id: &str) -> SpecialLagrangian {
    build_special_lagrangian(&catalog::entry(id).unwrap().connection).unwrap()
}

const FOUR_DIM: [&str; 4] = ["abelian4", "kt4", "aff-case2", "aff-case3"];

fn catalog_certification() -> Outcome {
    let omega1 = ExteriorForm::parse(4, "-f1^f4 + f2^f3").unwrap();
    let omega2 = ExteriorForm::parse(4, "f1^f2 - f3^f4").unwrap();
    let brackets = [
        ("abelian4", "abelian"),
        ("kt4", "[f1, f3] = f4"),
        ("aff-case2", "[f1, f2] = f2, [f1, f3] = -f3, [f1, f4] = f4"),
        ("aff-case3", "[f1, f2] = f2, [f1, f3] = -1/2 f3, [f1, f4] = 1/2 f4, [f2, f3] = -1/2 f4"),
    ];
    for (id, expected) in brackets {
        let e = catalog::entry(id).unwrap();
        let conn = e.connection.check().unwrap();
        ensure(conn.passed(), || format!("{id}: {conn}"))?;
        let sl = build_special_lagrangian(&e.connection).map_err(|err| format!("{id}: {err}"))?;
        let cs = certify_complex_symplectic(&sl.h, &sl.j, &sl.omega1).map_err(|err| format!("{id}: {err}"))?;
        ensure(sl.h.describe() == expected, || format!("{id}: brackets {}", sl.h.describe()))?;
        ensure(sl.omega1 == omega1, || format!("{id}: Ω1 = {:?}", sl.omega1))?;
        ensure(sl.omega2 == omega2 && cs.omega2 == omega2, || format!("{id}: Ω2 = {:?}", sl.omega2))?;
    }
    let r = catalog::entry_report(&catalog::entry("tower8").unwrap()).unwrap();
    ensure(r.passed(), || format!("tower8: {r}"))?;
    Ok("4 four-dimensional entries and tower8 certified; Ω1, Ω2 verbatim".into())
}

fn self_mirror() -> Outcome {
    for e in catalog::entries() {
        let id = &e.id;
        let c = &e.connection;
        let r = verify_self_mirror(c).unwrap();
        ensure(r.passed(), || format!("{id}: {r}"))?;
        // recompute the three identities here
        let sl = build_special_lagrangian(c).unwrap();
        let (hat, omega_hat) = mirror_symplectic(&sl).unwrap();
        let (_, j_hat) = mirror_complex(&sl).unwrap();
        ensure(hat == dual_product(c).unwrap(), || format!("{id}: mirror algebra"))?;
        let w = varpi(c);
        let iso = sl.h.check_isomorphism(&w, &hat).unwrap();
        ensure(iso.iter().all(|c| !c.is_fail()), || format!("{id}: ϖ is not an isomorphism"))?;
        let winv = w.inverse().unwrap();
        let m1 = sl.omega1.to_matrix().unwrap();
        let omega_tilde = winv.transpose().mul(&m1).unwrap().mul(&winv).unwrap();
        ensure(omega_hat.to_matrix().unwrap() == omega_tilde.neg(), || format!("{id}: Ω̂ ≠ −Ω̃"))?;
        let j_tilde = w.mul(&sl.j).unwrap().mul(&winv).unwrap();
        ensure(j_hat == j_tilde, || format!("{id}: Ĵ ≠ J̃"))?;
    }
    Ok("ϖ isomorphism, Ω̂ = −Ω̃, Ĵ = J̃ on all 5 entries".into())
}

fn tower_reproduction() -> Outcome {
    let sl = sl_of("kt4");
    let up = extend_tower(&sl, &Polarization::Omega1).map_err(|e| e.to_string())?;
    let h = &up.next.h;
    let mut problems = Vec::new();
    let found = h.describe();
    if found != "[f1, f3] = f4, [f1, v3] = v4" {
        problems.push(format!("brackets are {found}"));
    }
    let center = h.center();
    if center != Subspace::coordinate(8, &[1, 3, 4, 5, 7]) {
        let labels: Vec<String> = center
            .pivots()
            .iter()
            .map(|&i| h.label(i).to_string())
            .collect();
        problems.push(format!("center has dimension {} spanned by {{{}}}", center.dim(), labels.join(",")));
    }
    if h.commutator() != Subspace::coordinate(8, &[3, 7]) {
        problems.push(format!("commutator has dimension {}", h.commutator().dim()));
    }
    if h.nilpotency_step() != Some(2) {
        problems.push("not 2-step nilpotent".into());
    }
    for f in [&up.next.omega1, &up.next.omega2, &up.next.omega3] {
        if !h.is_closed(f).unwrap() {
            problems.push("a form is not closed".into());
        }
    }
    // aE + bJE + cJ squares to (a² + b² − c²)I, so the combination is
    // nondegenerate exactly when a² + b² ≠ c²
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut triples: Vec<(Scalar, Scalar, Scalar)> =
        vec![(int(1), int(0), int(1)), (int(3), int(4), int(5)), (int(0), int(0), int(1))];
    for _ in 0..12 {
        let mut s = || frac(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        triples.push((s(), s(), s()));
    }
    let mut certified = 0;
    for (a, b, c) in triples {
        let nondeg = a.clone() * a.clone() + b.clone() * b.clone() != c.clone() * c.clone();
        let p = Polarization::Combination(a, b, c);
        match extend_tower(&sl, &p) {
            Ok(level) if nondeg => {
                if level.next.verify().unwrap().passed() {
                    certified += 1;
                } else {
                    problems.push(format!("{p} not certified"));
                }
            }
            Err(e) if !nondeg && e.failures().first().is_some_and(|c| c.law == law::NONDEGENERATE) => {}
            _ => problems.push(format!("{p}: unexpected outcome")),
        }
    }
    if problems.is_empty() {
        Ok(format!("8-dim, center {{f2,f4,v1,v2,v4}}, 2-step; {certified} combinations certified"))
    } else {
        Err(format!(
            "{} ({certified} nondegenerate combinations certified, Ω1, Ω2, Ω3 closed)",
            problems.join("; ")
        ))
    }
}

fn tower_outputs() -> Vec<(String, SpecialLagrangian)> {
    let mut out = Vec::new();
    for id in ["abelian4", "kt4", "aff-case2", "aff-case3"] {
        for (name, p) in [("Ω1", Polarization::Omega1), ("Ω2", Polarization::Omega2), ("Ω3", Polarization::Omega3)] {
            let levels = if id == "kt4" && name == "Ω1" { 2 } else { 1 };
            for (k, level) in iterate_tower(&sl_of(id), levels, &p).unwrap().into_iter().enumerate() {
                out.push((format!("{id}/{name}/level{}", k + 1), level.next));
            }
        }
    }
    out
}

fn hypersymplectic_identities() -> Outcome {
    let outputs = tower_outputs();
    for (name, sl) in &outputs {
        let m = sl.h.dim();
        let id = Matrix::identity(m);
        let [m1, m2, m3] = sl.omega_matrices();
        let (j, e) = (&sl.j, &sl.e);
        let je = j.mul(e).unwrap();
        ensure(m1 == precompose(&m2, j).unwrap(), || format!("{name}: Ω1 ≠ Ω2∘J"))?;
        ensure(m3 == precompose(&m2, e).unwrap(), || format!("{name}: Ω3 ≠ Ω2∘E"))?;
        ensure(m2 == precompose(&m3, e).unwrap(), || format!("{name}: Ω2 ≠ Ω3∘E"))?;
        ensure(sl.metric == precompose(&m2, &je).unwrap(), || format!("{name}: g ≠ Ω2∘(JE)"))?;
        ensure(sl.metric.is_symmetric(), || format!("{name}: g not symmetric"))?;
        let sig = signature(&sl.metric).unwrap();
        ensure(
            (sig.positive, sig.negative, sig.zero) == (m / 2, m / 2, 0),
            || format!("{name}: signature {sig}"),
        )?;
        ensure(je == e.mul(j).unwrap().neg(), || format!("{name}: JE ≠ −EJ"))?;
        ensure(j.mul(j).unwrap() == id.neg(), || format!("{name}: J² ≠ −I"))?;
        ensure(e.mul(e).unwrap() == id, || format!("{name}: E² ≠ I"))?;
        let tc = build_tower_connection(sl).unwrap();
        for (a, gx) in tc.gamma.iter().enumerate() {
            ensure(gx.mul(j).unwrap() == j.mul(gx).unwrap(), || format!("{name}: ΓJ ≠ 0 at {a}"))?;
            ensure(gx.mul(e).unwrap() == e.mul(gx).unwrap(), || format!("{name}: ΓE ≠ 0 at {a}"))?;
            let gg = gx.transpose().mul(&sl.metric).unwrap().add(&sl.metric.mul(gx).unwrap()).unwrap();
            ensure(gg.is_zero(), || format!("{name}: Γg ≠ 0 at {a}"))?;
        }
        let r = tc.check(sl).unwrap();
        for l in [law::TOWER_FLAT, law::TOWER_TORSION_FREE] {
            ensure(!r.find(l).unwrap().is_fail(), || format!("{name}: {l} fails"))?;
        }
    }
    Ok(format!("{} tower outputs (dims 8 and 16)", outputs.len()))
}

fn nilpotent_families() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfa);
    let (mut built, mut rejected) = (0, 0);
    for n in 1..=3 {
        for k in 0..24 {
            let spec = NilpotentFamilySpec::random(n, k % 2 == 0, &mut rng);
            let column = spec.column_witness().is_none();
            let torsion = spec.connection().torsion_witness().is_none();
            ensure(column == torsion, || format!("n = {n}: column condition {column}, torsion-free {torsion}"))?;
            match build_nilpotent_family(&spec) {
                Ok(fam) => {
                    ensure(column, || format!("n = {n}: built despite column failure"))?;
                    let r = fam.structure_report();
                    ensure(r.passed(), || format!("n = {n}: {r}"))?;
                    let m = verify_self_mirror(&fam.connection).unwrap();
                    ensure(m.passed(), || format!("n = {n}: {m}"))?;
                    built += 1;
                }
                Err(_) => {
                    ensure(!column, || format!("n = {n}: valid spec rejected"))?;
                    rejected += 1;
                }
            }
        }
    }
    ensure(built > 0 && rejected > 0, || "random specs did not cover both outcomes".into())?;
    let spec = NilpotentFamilySpec::new(vec![Matrix::from_ints(&[&[1]])]).unwrap();
    let fam = build_nilpotent_family(&spec).unwrap();
    let kt4 = catalog::entry("kt4").unwrap().connection;
    ensure(fam.connection == kt4, || "n = 1, a = 1 differs from kt4".into())?;
    ensure(
        build_special_lagrangian(&fam.connection).unwrap().h.describe() == "[f1, f3] = f4",
        || "n = 1, a = 1 brackets".into(),
    )?;
    Ok(format!("72 specs: {built} built and certified, {rejected} rejected; n = 1 gives kt4"))
}

fn dga_axioms_and_isomorphism() -> Outcome {
    let mut perturbed = Vec::new();
    for e in catalog::entries() {
        let id = &e.id;
        let sl = build_special_lagrangian(&e.connection).unwrap();
        let cx = dga_from_complex(&sl.h, &sl.j).unwrap();
        let sy = dga_from_symplectic(&sl.h, &sl.omega1).unwrap();
        for (name, d) in [("DGA(J)", &cx), ("DGA(Ω)", &sy)] {
            let r = d.check_axioms(dga::DEFAULT_SEED, 8).unwrap();
            ensure(r.passed(), || format!("{id} {name}: {r}"))?;
        }
        let phi = explicit_isomorphism(&sl).unwrap();
        let r = check_dga_isomorphism(&cx, &sy, &phi).unwrap();
        ensure(r.passed(), || format!("{id} φ: {r}"))?;
        // first single-entry perturbation that is detected
        let m = phi.rows();
        let hit = (0..m).flat_map(|r| (0..m).map(move |c| (r, c))).find_map(|(r, c)| {
            let mut bad = phi.clone();
            bad[(r, c)] = bad[(r, c)].clone() + GaussianScalar::one();
            let rep = check_dga_isomorphism(&cx, &sy, &bad).ok()?;
            let law = rep.failures().find(|c| !c.witness.is_empty()).map(|c| c.law);
            law
        });
        match hit {
            Some(l) => perturbed.push(format!("{id}:{l}")),
            None => return Err(format!("{id}: no perturbation of φ detected")),
        }
    }
    Ok(format!("axioms and φ on all entries; perturbed φ fails ({})", perturbed.join(", ")))
}

fn random_dim3(rng: &mut ChaCha8Rng) -> LieAlgebra {
    let labels = numbered_labels("e", 3);
    if rng.gen_bool(0.5) {
        let mut g = LieAlgebra::abelian(labels);
        for (j, k) in [(0, 1), (0, 2), (1, 2)] {
            for l in 0..3 {
                g.add_constant(j, k, l, int(rng.gen_range(-1..=1))).unwrap();
            }
        }
        g
    } else {
        // a Lie algebra in a random basis
        let base = match rng.gen_range(0..3) {
            0 => LieAlgebra::from_structure(3, "e", &[(0, 1, 2, int(1))]),
            1 => LieAlgebra::from_structure(3, "e", &[(0, 1, 2, int(1)), (1, 2, 0, int(1)), (2, 0, 1, int(1))]),
            _ => LieAlgebra::from_structure(3, "e", &[(0, 1, 1, int(1)), (0, 2, 2, frac(-1, 2))]),
        }
        .unwrap();
        loop {
            let p = Matrix::from_fn(3, 3, |_, _| int(rng.gen_range(-2..=2)));
            if p.is_invertible() {
                return base.change_basis(&p).unwrap();
            }
        }
    }
}

fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3d);
    let (mut lie, mut not_lie) = (0, 0);
    for t in 0..100 {
        let g = random_dim3(&mut rng);
        let jacobi = g.jacobi_witness().is_none();
        let d2 = (0..3).all(|l| g.ce_differential(&g.d_generator(l)).unwrap().is_zero());
        ensure(jacobi == d2, || format!("table {t}: Jacobi {jacobi}, d² = 0 {d2}"))?;
        if jacobi {
            lie += 1;
        } else {
            not_lie += 1;
        }
    }
    ensure(lie > 0 && not_lie > 0, || "tables did not cover both outcomes".into())?;

    let mut structures: Vec<(String, SpecialLagrangian)> =
        FOUR_DIM.iter().map(|id| (id.to_string(), sl_of(id))).collect();
    structures.push(("tower8".into(), sl_of("tower8")));
    structures.extend(tower_outputs());
    for (name, sl) in &structures {
        let r = check_lagrangian_splitting(&sl.h, &sl.j, &sl.omega1.to_matrix().unwrap(), &sl.g_space(), &sl.v_space())
            .unwrap();
        ensure(r.passed(), || format!("{name}: {r}"))?;
        for l in [law::IDEAL_ABELIAN, law::J_IDEAL_SUBALGEBRA] {
            let c = r.find(l).unwrap();
            ensure(c.detail.is_empty(), || format!("{name}: {l} not exercised"))?;
        }
        let cs = certify_complex_symplectic(&sl.h, &sl.j, &sl.omega1).unwrap();
        let c = type_20_check(&cs);
        ensure(!c.is_fail(), || format!("{name}: {}", c.summary()))?;
    }
    Ok(format!(
        "100 tables ({lie} Lie, {not_lie} not); isotropic-ideal facts and type (2,0) on {} structures",
        structures.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("catalog certification", catalog_certification),
        ("self-mirror", self_mirror),
        ("tower reproduction", tower_reproduction),
        ("hypersymplectic identities", hypersymplectic_identities),
        ("nilpotent families", nilpotent_families),
        ("DGA axioms and isomorphism", dga_axioms_and_isomorphism),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
