//! Acceptance suite: one PASS/FAIL line per criterion, each against its
//! runtime budget. Runs as a plain binary (`harness = false`) so the lines
//! reach the terminal in order.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hcourant::check::{CheckResult, Failure};
use hcourant::courant::{
    check_deformation, check_gauge_isomorphism, courant_bracket, dorfman_bracket, leibniz_residual, pairing, t_map,
};
use hcourant::dsl::{self, Value};
use hcourant::exterior::{ext_d, interior, lie_form, pairing_full};
use hcourant::nambu::{check_nambu_leibniz_algebroid, graph_closure_check, np_fundamental_check, NambuCandidate};
use hcourant::plectic::{
    check_admissible_lie_algebroid, check_hamiltonian_identities, deformed_graph_check, graph_closure_omega,
    PlecticCandidate,
};
use hcourant::random::{random_form, random_multivec, random_poly, random_vector, rng_for};
use hcourant::scalar::{int, rational, Monomial};
use hcourant::{Context, Form, MultiIndex, MultiVec, Poly, Section};
use rand::Rng;

const SEED: u64 = 20240611;
const CONTEXTS: [(usize, usize); 4] = [(2, 1), (3, 1), (3, 2), (4, 3)];

fn ctx(m: usize, n: usize) -> Context {
    Context::new(m, n).expect("valid context")
}

type Outcome = Result<String, String>;

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn require_passed(r: &CheckResult, label: &str) -> Result<(), String> {
    require(r.passed, || {
        let w = r.failures.first().map(|f| format!("{:?} -> {}", f.inputs, f.residual));
        format!("{label}: {} failed ({} cases), first witness {}", r.name, r.cases, w.unwrap_or_default())
    })
}

fn sections3(c: Context, rng: &mut impl Rng) -> (Section, Section, Section) {
    (Section::random(c, rng), Section::random(c, rng), Section::random(c, rng))
}

fn section_case(inputs: &[&Section], residual: Section) -> Option<Failure> {
    (!residual.is_zero()).then(|| Failure::new(inputs.iter().map(|s| s.to_string()).collect(), residual))
}

fn dorf(a: &Section, b: &Section) -> Section {
    dorfman_bracket(a, b).unwrap()
}

fn cour(a: &Section, b: &Section) -> Section {
    courant_bracket(a, b).unwrap()
}

fn pair(a: &Section, b: &Section) -> Form {
    pairing(a, b).unwrap()
}

// --- 1-3: the bracket identities -------------------------------------------

fn dorfman_leibniz() -> Outcome {
    let mut total = 0;
    for (i, &(m, n)) in CONTEXTS.iter().enumerate() {
        let c = ctx(m, n);
        let r = CheckResult::sampled("dorfman-leibniz", "", SEED, 100 + i as u32, 100, |rng| {
            let (e1, e2, e3) = sections3(c, rng);
            section_case(&[&e1, &e2, &e3], leibniz_residual(dorf, &e1, &e2, &e3))
        });
        require_passed(&r, &format!("(m,n)=({m},{n})"))?;
        total += r.cases;
    }
    Ok(format!("{total} triples over 4 contexts, all residuals zero"))
}

fn courant_jacobiator() -> Outcome {
    let mut total = 0;
    for (i, &(m, n)) in CONTEXTS.iter().enumerate() {
        let c = ctx(m, n);
        let r = CheckResult::sampled("courant-jacobiator", "", SEED, 110 + i as u32, 50, |rng| {
            let (e1, e2, e3) = sections3(c, rng);
            let jac = cour(&e1, &cour(&e2, &e3))
                .add(&cour(&e2, &cour(&e3, &e1)))
                .add(&cour(&e3, &cour(&e1, &e2)));
            let dt = ext_d(&t_map(&e1, &e2, &e3).unwrap());
            section_case(&[&e1, &e2, &e3], jac.sub(&Section::from_form(c, dt).unwrap()))
        });
        require_passed(&r, &format!("(m,n)=({m},{n})"))?;
        total += r.cases;
    }
    Ok(format!("{total} triples, Jacobiator - dT = 0"))
}

fn pairing_compat() -> Outcome {
    let mut total = 0;
    for (i, &(m, n)) in CONTEXTS.iter().enumerate() {
        let c = ctx(m, n);
        let r = CheckResult::sampled("pairing-compat", "", SEED, 120 + i as u32, 50, |rng| {
            let (e1, e2, e3) = sections3(c, rng);
            let lhs = lie_form(e1.vec(), &pair(&e2, &e3));
            let rhs = pair(&dorf(&e1, &e2), &e3) + pair(&e2, &dorf(&e1, &e3));
            let res = lhs - rhs;
            (!res.is_zero()).then(|| Failure::new(vec![e1.to_string(), e2.to_string(), e3.to_string()], res))
        });
        require_passed(&r, &format!("(m,n)=({m},{n})"))?;
        total += r.cases;
    }
    Ok(format!("{total} triples"))
}

// --- 4-5: twisting and gauge ------------------------------------------------

fn deformation_panel() -> Outcome {
    let c = ctx(4, 1);
    let x = |i| Poly::var(4, i);
    let closed = [
        Form::basis(4, &[0, 1, 2]),
        Form::monomial(x(0), &[0, 1, 2]),
        Form::monomial(x(3), &[1, 2, 3]),
        ext_d(&random_form(&mut rng_for(SEED, 1), 4, 2)),
        ext_d(&random_form(&mut rng_for(SEED, 2), 4, 2)),
    ];
    let open = [
        Form::monomial(x(3), &[0, 1, 2]),
        Form::monomial(x(0), &[1, 2, 3]),
        Form::monomial(&x(1) * &x(2), &[0, 1, 3]),
        random_form(&mut rng_for(SEED, 3), 4, 3),
    ];
    require(closed.iter().all(|t| ext_d(t).is_zero()), || "closed fixture is not closed".into())?;
    require(open.iter().all(|t| !ext_d(t).is_zero()), || "non-closed fixture is closed".into())?;
    for theta in closed.iter().chain(&open) {
        let r = check_deformation(c, theta, SEED, 10).map_err(|e| e.to_string())?;
        require(r[0].passed == r[1].passed, || {
            format!("verdicts disagree on {theta}: dTheta=0 is {}, Leibniz is {}", r[0].passed, r[1].passed)
        })?;
    }
    Ok(format!("{} closed / {} non-closed Theta, verdicts agree", closed.len(), open.len()))
}

fn gauge_panel() -> Outcome {
    let c = ctx(3, 1);
    let x = |i| Poly::var(3, i);
    let panel = [
        Form::basis(3, &[0, 1]),
        ext_d(&Form::monomial(&x(0) * &x(1), &[2])),
        Form::monomial(x(2), &[0, 1]),
        random_form(&mut rng_for(SEED, 4), 3, 2),
    ];
    require(panel.iter().any(|p| !ext_d(p).is_zero()), || "panel lacks a non-closed Phi".into())?;
    let mut pairs = 0;
    for phi in &panel {
        for r in check_gauge_isomorphism(c, phi, SEED, 50).map_err(|e| e.to_string())? {
            require_passed(&r, &format!("Phi = {phi}"))?;
            if r.name == "gauge-intertwines-twist" {
                pairs += r.cases;
            }
        }
    }
    Ok(format!("{pairs} pairs over {} Phi", panel.len()))
}

// --- 6-7: Nambu-Poisson -----------------------------------------------------

/// `{f1,…,f_{n+1}} = π(df1,…,df_{n+1})`.
fn nambu_bracket(pi: &MultiVec, fs: &[Poly]) -> Poly {
    let m = pi.dim();
    let wedge = fs
        .iter()
        .map(|f| ext_d(&Form::scalar(f.clone())))
        .fold(Form::scalar(Poly::one(m)), |acc, df| acc.wedge(&df));
    pairing_full(pi, &wedge)
}

/// Fundamental identity on functions, read as "`{f1..fn, ·}` is a derivation
/// of the bracket". Both sides are derivations in each `g`, so coordinate
/// functions suffice for the `g`s; the `f`s range over every monomial of
/// degree ≤ 2. Returns a violating `(f, g)` if any.
fn brute_force_sweep(pi: &MultiVec, n: usize) -> Option<(Vec<Poly>, Vec<usize>)> {
    let m = pi.dim();
    let monos: Vec<Poly> = Monomial::all_up_to(m, 2)
        .into_iter()
        .filter(|mo| mo.degree() > 0)
        .map(|mo| Poly::term(mo, int(1)))
        .collect();
    let coords: Vec<MultiIndex> = MultiIndex::all(m, n + 1);
    for fi in MultiIndex::all(monos.len(), n) {
        let fs: Vec<Poly> = fi.as_slice().iter().map(|&i| monos[i].clone()).collect();
        let derive = |g: &Poly| {
            let mut args = fs.clone();
            args.push(g.clone());
            nambu_bracket(pi, &args)
        };
        for gi in &coords {
            let gs: Vec<Poly> = gi.as_slice().iter().map(|&i| Poly::var(m, i)).collect();
            let lhs = derive(&nambu_bracket(pi, &gs));
            let mut rhs = Poly::zero(m);
            for k in 0..gs.len() {
                let mut args = gs.clone();
                args[k] = derive(&gs[k]);
                rhs = &rhs + &nambu_bracket(pi, &args);
            }
            if lhs != rhs {
                return Some((fs, gi.as_slice().to_vec()));
            }
        }
    }
    None
}

struct NambuMember {
    candidate: NambuCandidate,
    /// Verdict of the independent sweep.
    certified_np: bool,
}

fn nambu_panel() -> Vec<NambuMember> {
    let c3 = ctx(3, 2);
    let c4 = ctx(4, 2);
    let top = |f: Poly| MultiVec::monomial(f, &[0, 1, 2]);
    let x3 = |i| Poly::var(3, i);
    let x4 = |i| Poly::var(4, i);
    let raw = vec![
        (c3, MultiVec::basis(3, &[0, 1, 2])),
        (c3, top(x3(0))),
        (c3, top(&(&x3(0) * &x3(1)) + &Poly::from_int(3, -2))),
        (c3, top(random_poly(&mut rng_for(SEED, 5), 3))),
        (c3, top(random_poly(&mut rng_for(SEED, 6), 3))),
        (c4, MultiVec::monomial(x4(0), &[0, 1, 2]) + MultiVec::basis(4, &[1, 2, 3])),
        (c4, MultiVec::basis(4, &[0, 1, 2]) + MultiVec::monomial(x4(0), &[0, 1, 3])),
    ];
    raw.into_iter()
        .map(|(c, pi)| {
            let certified_np = brute_force_sweep(&pi, c.n()).is_none();
            NambuMember {
                candidate: NambuCandidate::new(c, pi).expect("panel tensors are well graded"),
                certified_np,
            }
        })
        .collect()
}

fn nambu_biconditional(panel: &[NambuMember]) -> Outcome {
    let negatives = panel.iter().filter(|p| !p.certified_np).count();
    require(negatives > 0, || "sweep certified no negative member".into())?;
    for p in panel {
        let pi = p.candidate.pi();
        let fi = np_fundamental_check(&p.candidate, 2).map_err(|e| e.to_string())?;
        let gc = graph_closure_check(&p.candidate, SEED, 5, 2).map_err(|e| e.to_string())?;
        require(fi.passed == p.certified_np, || {
            format!("{pi}: np_fundamental_check says {}, sweep says {}", fi.passed, p.certified_np)
        })?;
        require(fi.passed == gc.passed, || {
            format!("{pi}: fundamental {} vs graph closure {}", fi.passed, gc.passed)
        })?;
    }
    Ok(format!("{} members ({negatives} certified negative), verdicts agree", panel.len()))
}

fn induced_leibniz(panel: &[NambuMember]) -> Outcome {
    let mut members = 0;
    for p in panel.iter().filter(|p| p.certified_np) {
        let checks = check_nambu_leibniz_algebroid(&p.candidate, SEED, 50).map_err(|e| e.to_string())?;
        for r in &checks {
            require(r.cases >= 50, || format!("{} ran only {} cases", r.name, r.cases))?;
            require_passed(r, &p.candidate.pi().to_string())?;
        }
        members += 1;
    }
    Ok(format!("{members} NP members x 50 samples, every identity exact"))
}

// --- 8-10: multisymplectic --------------------------------------------------

fn plectic_panel() -> Outcome {
    let mut panel = Vec::new();
    let x3 = |i| Poly::var(3, i);
    for omega in [
        Form::basis(3, &[0, 1]),
        Form::monomial(x3(2), &[0, 1]),
        Form::monomial(x3(0), &[1, 2]),
        ext_d(&random_form(&mut rng_for(SEED, 7), 3, 1)),
        random_form(&mut rng_for(SEED, 8), 3, 2),
    ] {
        panel.push((ctx(3, 1), omega));
    }
    let x4 = |i| Poly::var(4, i);
    panel.push((ctx(4, 2), Form::basis(4, &[0, 1, 2]) + Form::basis(4, &[0, 1, 3])));
    panel.push((ctx(4, 2), Form::monomial(x4(3), &[0, 1, 2])));
    let (mut closed, mut open) = (0, 0);
    for (c, omega) in &panel {
        let p = PlecticCandidate::new(*c, omega.clone()).map_err(|e| e.to_string())?;
        let m = c.m();
        let r = graph_closure_omega(&p, SEED, 10).map_err(|e| e.to_string())?;
        require(r[0].passed == r[1].passed, || format!("{omega}: closed {} vs graph {}", r[0].passed, r[1].passed))?;
        require_passed(&r[2], &omega.to_string())?;
        if r[0].passed {
            closed += 1;
        } else {
            open += 1;
        }
        // matched twist: dω + Θ = 0 must close the deformed graph
        let matched = -ext_d(omega);
        let r = deformed_graph_check(&p, &matched, SEED, 10).map_err(|e| e.to_string())?;
        for check in &r {
            require_passed(check, &format!("{omega} with matched Theta"))?;
        }
        // mismatched twist: both verdicts must fail together
        let off = matched + Form::basis(m, &(0..c.n() + 2).collect::<Vec<_>>());
        let r = deformed_graph_check(&p, &off, SEED, 10).map_err(|e| e.to_string())?;
        require(!r[0].passed && r[0].passed == r[1].passed, || {
            format!("{omega} with mismatched Theta: closed {} vs graph {}", r[0].passed, r[1].passed)
        })?;
        require_passed(&r[2], &format!("{omega} isotropy under mismatched Theta"))?;
    }
    require(closed > 0 && open > 0, || "panel needs closed and non-closed omega".into())?;
    Ok(format!("{closed} closed / {open} non-closed omega, matched and mismatched Theta"))
}

fn plectic_fixtures() -> [PlecticCandidate; 2] {
    [
        PlecticCandidate::new(ctx(3, 2), Form::basis(3, &[0, 1, 2])).unwrap(),
        PlecticCandidate::new(ctx(4, 1), Form::basis(4, &[0, 1]) + Form::basis(4, &[2, 3])).unwrap(),
    ]
}

fn admissible_algebroid() -> Outcome {
    let mut names = Vec::new();
    for p in plectic_fixtures() {
        for r in check_admissible_lie_algebroid(&p, SEED, 50).map_err(|e| e.to_string())? {
            require(r.cases >= 50, || format!("{} ran only {} cases", r.name, r.cases))?;
            require_passed(&r, &p.omega().to_string())?;
            if !names.contains(&r.name) {
                names.push(r.name);
            }
        }
    }
    Ok(format!("{} for both omega, 50 samples each", names.join(", ")))
}

fn hemi_semi() -> Outcome {
    let mut names = Vec::new();
    for p in plectic_fixtures() {
        for r in check_hamiltonian_identities(&p, SEED, 30).map_err(|e| e.to_string())? {
            require(r.cases >= 30, || format!("{} ran only {} cases", r.name, r.cases))?;
            require_passed(&r, &p.omega().to_string())?;
            if !names.contains(&r.name) {
                names.push(r.name);
            }
        }
    }
    Ok(format!("{} on 30 Hamiltonian pairs per omega", names.join(", ")))
}

// --- 11: infrastructure -----------------------------------------------------

fn random_value(r: &mut impl Rng, m: usize, n: usize) -> Value {
    let scale = rational(r.gen_range(-5..=5), r.gen_range(1..=6));
    match r.gen_range(0..4) {
        0 => Value::Scalar(random_poly(r, m).scale(&scale)),
        1 => {
            let k = r.gen_range(0..=m);
            Value::Form(random_form(r, m, k).scale(&scale))
        }
        2 => {
            let k = r.gen_range(0..=m);
            Value::MultiVec(random_multivec(r, m, k).scale(&scale))
        }
        _ => Value::Section(Section::random(ctx(m, n), r).scale_by(&Poly::constant(m, scale))),
    }
}

fn cli(args: &[&str]) -> Result<(Vec<u8>, Option<i32>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hcourant"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run hcourant: {e}"))?;
    Ok((out.stdout, out.status.code()))
}

/// Every `check` target on representative inputs, passing and failing.
fn suite_matrix() -> Vec<Vec<&'static str>> {
    let base = ["--seed", "11", "--samples", "3", "--json"];
    let rows: Vec<Vec<&str>> = vec![
        vec!["-m", "3", "-n", "1", "check", "courant-axioms"],
        vec!["-m", "3", "-n", "2", "check", "dorfman-axioms"],
        vec!["-m", "4", "-n", "1", "check", "deformation", "--theta", "dx1^dx2^dx3"],
        vec!["-m", "4", "-n", "1", "check", "deformation", "--theta", "x4*dx1^dx2^dx3"],
        vec!["-m", "3", "-n", "1", "check", "gauge", "--phi", "x3*dx1^dx2"],
        vec!["-m", "3", "check", "nambu", "--pi", "@1^@2^@3"],
        vec!["-m", "4", "check", "nambu", "--pi", "@1^@2^@3 + x1*@1^@2^@4"],
        vec!["-m", "3", "check", "plectic", "--omega", "dx1^dx2"],
        vec!["-m", "3", "check", "plectic", "--omega", "x1*dx2^dx3", "--theta", "-dx1^dx2^dx3"],
        vec!["-m", "3", "check", "admissible", "--omega", "dx1^dx2^dx3"],
        vec!["-m", "4", "check", "admissible", "--omega", "dx1^dx2 + dx3^dx4"],
    ];
    rows.into_iter()
        .map(|mut r| {
            r.extend(base);
            r
        })
        .collect()
}

fn infrastructure() -> Outcome {
    let contexts = [(2, 1), (3, 1), (3, 2), (4, 3), (5, 2)];
    for i in 0..500u64 {
        let (m, n) = contexts[i as usize % contexts.len()];
        let v = random_value(&mut rng_for(SEED, 1000 + i), m, n);
        let text = dsl::print(&v);
        let back = dsl::parse(&text, ctx(m, n), v.kind()).map_err(|e| e.render(&text))?;
        require(back == v, || format!("round trip changed {text}"))?;
    }
    for i in 0..200u64 {
        let r = &mut rng_for(SEED, 2000 + i);
        let m = r.gen_range(1..=4);
        let k = r.gen_range(0..=m);
        let x = random_vector(r, m);
        let a = random_form(r, m, k);
        require(lie_form(&x, &a) == oracle::lie_form_components(&x, &a), || format!("L_X mismatch: X={x}, a={a}"))?;
        require(interior(&x, &a) == oracle::interior_components(&x, &a), || format!("i_X mismatch: X={x}, a={a}"))?;
    }
    let matrix = suite_matrix();
    let (mut passing, mut failing) = (0, 0);
    for args in &matrix {
        let (first, code) = cli(args)?;
        let (second, _) = cli(args)?;
        require(first == second, || format!("JSON differs between runs: {}", args.join(" ")))?;
        require(!first.is_empty(), || format!("no JSON from: {}", args.join(" ")))?;
        match code {
            Some(0) => passing += 1,
            Some(1) => failing += 1,
            other => return Err(format!("exit {other:?} from: {}", args.join(" "))),
        }
    }
    Ok(format!(
        "500 round trips, 200 oracle inputs, {} CLI suites byte-identical ({passing} pass / {failing} fail)",
        matrix.len()
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let simple: [Criterion; 5] = [
        ("dorfman leibniz identity", 30, dorfman_leibniz),
        ("courant jacobiator = dT", 30, courant_jacobiator),
        ("pairing compatibility", 10, pairing_compat),
        ("deformation biconditional", 20, deformation_panel),
        ("gauge identity", 10, gauge_panel),
    ];
    let mut all = true;
    let mut report = |id: usize, title: &str, budget: u64, elapsed: Duration, outcome: Outcome| {
        let secs = elapsed.as_secs_f64();
        let outcome = outcome.and_then(|msg| {
            if elapsed > Duration::from_secs(budget) {
                Err(format!("{msg}; over budget"))
            } else {
                Ok(msg)
            }
        });
        let (tag, msg) = match outcome {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        all &= tag == "PASS";
        println!("{tag} [{id:>2}] {title}: {msg} ({secs:.1}s / {budget}s)");
    };
    for (i, (title, budget, run)) in simple.into_iter().enumerate() {
        let t = Instant::now();
        let out = run();
        report(i + 1, title, budget, t.elapsed(), out);
    }

    // the panel sweep is part of criterion 6; criterion 7 reuses its verdicts
    let t = Instant::now();
    let panel = nambu_panel();
    let out = nambu_biconditional(&panel);
    report(6, "nambu-poisson biconditional", 60, t.elapsed(), out);
    let t = Instant::now();
    let out = induced_leibniz(&panel);
    report(7, "induced leibniz structures", 30, t.elapsed(), out);

    let rest: [Criterion; 4] = [
        ("multisymplectic closure", 20, plectic_panel),
        ("admissible lie algebroid", 30, admissible_algebroid),
        ("hemi/semi bracket identities", 15, hemi_semi),
        ("infrastructure", 30, infrastructure),
    ];
    for (i, (title, budget, run)) in rest.into_iter().enumerate() {
        let t = Instant::now();
        let out = run();
        report(i + 8, title, budget, t.elapsed(), out);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
