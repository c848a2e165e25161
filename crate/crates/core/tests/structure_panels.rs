mod common;

use common::{ctx, rng};
use hcourant::nambu::{
    check_nambu_leibniz_algebroid, graph_closure_check, graph_closure_courant_check, np_fundamental_check,
    NambuCandidate,
};
use hcourant::plectic::{
    check_hamiltonian_identities, deformed_graph_check, graph_closure_omega, random_hamiltonian, solve_admissible,
    solve_hamiltonian, PlecticCandidate,
};
use hcourant::exterior::ext_d;
use hcourant::random::{random_form, random_poly};
use hcourant::{Form, MultiVec, Poly};

fn scaled_top(seed: u64) -> NambuCandidate {
    let f = random_poly(&mut rng(seed), 3);
    NambuCandidate::new(ctx(3, 2), MultiVec::monomial(f, &[0, 1, 2])).unwrap()
}

#[test]
fn scaled_top_vectors_pass_both_sides() {
    for seed in 0..4 {
        let c = scaled_top(seed);
        assert!(np_fundamental_check(&c, 2).unwrap().passed, "{}", c.pi());
        assert!(graph_closure_check(&c, seed, 3, 2).unwrap().passed, "{}", c.pi());
    }
}

#[test]
fn courant_and_dorfman_closure_agree() {
    let non_np = NambuCandidate::new(
        ctx(4, 2),
        MultiVec::basis(4, &[0, 1, 2]) + MultiVec::monomial(Poly::var(4, 0), &[0, 1, 3]),
    )
    .unwrap();
    for c in [scaled_top(9), non_np] {
        let d = graph_closure_check(&c, 1, 3, 2).unwrap();
        let k = graph_closure_courant_check(&c, 1, 3, 2).unwrap();
        assert_eq!(d.passed, k.passed, "{}", c.pi());
    }
}

#[test]
fn induced_brackets_on_a_scaled_normal_form() {
    for r in check_nambu_leibniz_algebroid(&scaled_top(3), 0, 4).unwrap() {
        assert!(r.passed, "{}: {:?}", r.name, r.failures);
    }
}

#[test]
fn plectic_panel_verdicts_agree() {
    let c3 = ctx(3, 1);
    let panel = [
        Form::basis(3, &[0, 1]),
        Form::monomial(Poly::var(3, 2), &[0, 1]),
        Form::monomial(Poly::var(3, 0), &[1, 2]),
        ext_d(&random_form(&mut rng(4), 3, 1)),
        random_form(&mut rng(5), 3, 2),
    ];
    for omega in panel {
        let c = PlecticCandidate::new(c3, omega.clone()).unwrap();
        let r = graph_closure_omega(&c, 0, 4).unwrap();
        assert_eq!(r[0].passed, r[1].passed, "{omega}");
        assert!(r[2].passed, "isotropy for {omega}");
        // the matching twist always closes the deformed graph
        let theta = -ext_d(&omega);
        let r = deformed_graph_check(&c, &theta, 0, 4).unwrap();
        assert!(r.iter().all(|r| r.passed), "{omega}: {r:?}");
    }
}

#[test]
fn hamiltonian_exactly_when_differential_is_admissible() {
    let c = PlecticCandidate::new(ctx(4, 2), Form::basis(4, &[0, 1, 2]) + Form::basis(4, &[0, 1, 3])).unwrap();
    let mut seen = [0usize; 2];
    for seed in 0..30 {
        let xi = random_form(&mut rng(seed), 4, 1);
        let admissible = solve_admissible(&c, &ext_d(&xi)).is_ok();
        let hamiltonian = solve_hamiltonian(&c, &xi).is_ok();
        assert_eq!(admissible, hamiltonian, "{xi}");
        seen[usize::from(hamiltonian)] += 1;
    }
    assert!(seen[0] > 0, "panel should contain non-Hamiltonian forms");
    for seed in 0..10 {
        let p = random_hamiltonian(&c, &mut rng(seed)).unwrap();
        assert!(solve_admissible(&c, &ext_d(p.xi())).is_ok());
    }
    for r in check_hamiltonian_identities(&c, 0, 5).unwrap() {
        assert!(r.passed, "{}: {:?}", r.name, r.failures);
    }
}
