mod common;

use common::{catalog_logics, naive_strongest_implicate_check, random_instance, random_valid_implication};
use tabint::catalog::{make_frame, make_logic, FrameFamily, LogicName};
use tabint::formula::{f, Formula};
use tabint::gen;
use tabint::interpolation::{
    diagram_satisfiable, has_cip, modal_craig_interpolant, modal_craig_interpolant_single, strongest_implicate,
    strongest_implicate_single, uniform_interpolant, verify_craig, verify_strongest_implicate,
};
use tabint::kripke::{member_of_logic, Logic, PointedFrame};
use tabint::Error;

#[test]
fn implicates_pass_the_pairwise_oracle() {
    let mut rng = gen::rng(21);
    for l in catalog_logics(3) {
        for _ in 0..25 {
            let (phi, sigma) = random_instance(&mut rng);
            let chi = strongest_implicate(&l, &phi, &sigma).unwrap();
            assert!(naive_strongest_implicate_check(&l, &phi, &sigma, &chi), "{phi} in {}", l.name());
        }
    }
}

#[test]
fn library_oracle_agrees_with_pairwise_oracle() {
    let mut rng = gen::rng(22);
    for l in catalog_logics(3) {
        for _ in 0..25 {
            let (phi, sigma) = random_instance(&mut rng);
            let sig_atoms: Vec<_> = sigma.iter().cloned().collect();
            let candidates = [
                Formula::top(),
                phi.clone(),
                gen::random_formula(&mut rng, &sig_atoms, 2, 4),
            ];
            for chi in candidates {
                if !chi.signature().is_subset(&sigma) {
                    continue;
                }
                let fast = verify_strongest_implicate(&l, &phi, &sigma, &chi).unwrap().holds;
                assert_eq!(fast, naive_strongest_implicate_check(&l, &phi, &sigma, &chi), "{chi} for {phi}");
            }
        }
    }
}

#[test]
fn implicates_are_unique_up_to_equivalence() {
    let mut rng = gen::rng(23);
    for l in catalog_logics(3) {
        for _ in 0..20 {
            let (phi, sigma) = random_instance(&mut rng);
            let a = strongest_implicate(&l, &phi, &sigma).unwrap();
            let b = strongest_implicate_single(&l, &phi, &sigma).unwrap();
            assert!(verify_strongest_implicate(&l, &phi, &sigma, &b).unwrap().holds);
            assert!(member_of_logic(&l, &a.iff(&b)).unwrap(), "{phi} in {}", l.name());
        }
    }
}

#[test]
fn craig_interpolants_on_cip_logics() {
    let mut rng = gen::rng(24);
    for name in [LogicName::Lo(1), LogicName::Lo(3), LogicName::Fork(1), LogicName::Eq(2)] {
        let l = make_logic(name).unwrap();
        for i in 0..30 {
            let (phi, psi) = random_valid_implication(&mut rng, &l);
            let chi = if i % 2 == 0 {
                modal_craig_interpolant(&l, &phi, &psi).unwrap()
            } else {
                modal_craig_interpolant_single(&l, &phi, &psi).unwrap()
            };
            assert!(verify_craig(&l, &phi, &psi, &chi).unwrap().holds, "{phi} -> {psi} in {}", l.name());
        }
    }
}

#[test]
fn refusals() {
    let l13 = make_logic(LogicName::L13).unwrap();
    let phi = f("<>(p & q) & <>(p & ~q)");
    let psi = f("<>(~p & r) -> [](~p -> r)");
    assert!(member_of_logic(&l13, &phi.implies(&psi)).unwrap());
    assert!(matches!(modal_craig_interpolant(&l13, &phi, &psi), Err(Error::NoCip(_))));
    assert!(matches!(uniform_interpolant(&l13, &phi, &tabint::formula::signature(["p"])), Err(Error::NoCip(_))));
    let eq1 = make_logic(LogicName::Eq(1)).unwrap();
    match modal_craig_interpolant(&eq1, &f("p"), &f("q")) {
        Err(Error::NotInLogic { countermodel }) => assert!(!countermodel.satisfies_root(&f("p -> q"))),
        other => panic!("{other:?}"),
    }
}

#[test]
fn cip_table() {
    let table = [
        (LogicName::Eq(1), true),
        (LogicName::Eq(2), true),
        (LogicName::Eq(3), false),
        (LogicName::Lo(1), true),
        (LogicName::Lo(2), true),
        (LogicName::Lo(3), true),
        (LogicName::L13, false),
    ];
    for (name, expected) in table {
        assert_eq!(has_cip(&make_logic(name).unwrap()).unwrap(), expected, "{name:?}");
    }
}

/// A surjective map from `host` onto `image` sending root to root that
/// preserves edges forth and back, by brute force.
fn p_morphic_image(image: &PointedFrame, host: &PointedFrame) -> bool {
    let (n, m) = (host.len(), image.len());
    (0..m.pow(n as u32)).any(|mut code| {
        let h: Vec<usize> = (0..n)
            .map(|_| {
                let x = code % m;
                code /= m;
                x
            })
            .collect();
        h[host.root()] == image.root()
            && (0..m).all(|v| h.contains(&v))
            && (0..n).all(|x| {
                host.succ(x).iter().all(|&y| image.has_edge(h[x], h[y]))
                    && image.succ(h[x]).iter().all(|&z| host.succ(x).iter().any(|&y| h[y] == z))
            })
    })
}

#[test]
fn diagrams_detect_p_morphic_images() {
    let mut frames = Vec::new();
    for n in 0..=2 {
        for fam in [
            FrameFamily::Cluster(n + 1),
            FrameFamily::IrreflChain(n),
            FrameFamily::ReflChain(n + 1),
            FrameFamily::Fork(n + 1),
            FrameFamily::F2(n + 1),
        ] {
            let fr = make_frame(fam).unwrap();
            if fr.len() <= 3 {
                frames.push(fr);
            }
        }
    }
    let mut rng = gen::rng(25);
    let atoms = gen::atoms(2);
    for a in &frames {
        for b in &frames {
            let sat = diagram_satisfiable(a, b, 3).unwrap();
            assert_eq!(sat, p_morphic_image(a, b), "{} in {}", a.name(), b.name());
            if sat && diagram_satisfiable(b, a, 3).unwrap() {
                let (la, lb) = (Logic::singleton(a.clone()), Logic::singleton(b.clone()));
                for _ in 0..30 {
                    let g = gen::random_formula(&mut rng, &atoms, 3, 7);
                    assert_eq!(member_of_logic(&la, &g).unwrap(), member_of_logic(&lb, &g).unwrap());
                }
            }
        }
    }
}
