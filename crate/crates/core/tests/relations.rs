mod common;

use braidrep::rep::{classify_adjointness, verify_braid_relations, Relation};
use braidrep::{MonomialMatrix, QTable, Representation, Scalar};
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn phi_m_relations_agree_with_dense_oracle() {
    for n in 3..=6 {
        for m in 1..n {
            let rep = Representation::build_phi_m(n, m).unwrap();
            assert!(verify_braid_relations(&rep).all_passed(), "n={n} m={m}");
            assert!(dense_relations_hold(&rep), "n={n} m={m}");
        }
    }
}

#[test]
fn random_q_tables_satisfy_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..60 {
        let (seed, q) = random_generic(&mut rng);
        let rep = Representation::build_generic(&seed, &q).unwrap();
        assert!(verify_braid_relations(&rep).all_passed(), "seed {seed}");
        assert!(dense_relations_hold(&rep), "seed {seed}");
    }
}

#[test]
fn tampered_generator_is_caught_with_witness() {
    let rep = Representation::build_phi_m(4, 2).unwrap();
    let g = rep.generator(2).unwrap();
    let mut scale = g.scale().to_vec();
    scale[0] = &scale[0] * &Scalar::t();
    let bad = rep
        .with_generator(2, MonomialMatrix::new(g.perm().to_vec(), scale).unwrap())
        .unwrap();
    let report = verify_braid_relations(&bad);
    assert!(!report.all_passed());
    assert!(!dense_relations_hold(&bad));
    let failed: Vec<_> = report.failures().map(|c| c.relation).collect();
    assert!(
        failed.contains(&Relation::Braid { k: 1 }) || failed.contains(&Relation::Braid { k: 2 })
    );
    assert!(report.failures().all(|c| c.witness.is_some()));
}

#[test]
fn unit_modulus_table_is_unitary_and_self_adjoint() {
    let mut q = QTable::new();
    let i = Scalar::constant(braidrep::GaussianRational::i());
    q.insert(0, 0, Scalar::one());
    q.insert(1, 1, Scalar::one());
    q.insert(0, 1, i.clone());
    q.insert(1, 0, -&i);
    for seed in [
        tuple(&[1, 0, 0]),
        tuple(&[1, 1, 0, 0]),
        tuple(&[0, 1, 0, 1, 1]),
    ] {
        let rep = Representation::build_generic(&seed, &q).unwrap();
        assert!(verify_braid_relations(&rep).all_passed());
        for c in classify_adjointness(&rep) {
            assert!(c.self_adjoint && c.unitary && c.consistent(), "{c:?}");
        }
    }
}

#[test]
fn phi_m_is_self_adjoint_but_not_unitary() {
    let rep = Representation::build_phi_m(5, 2).unwrap();
    for c in classify_adjointness(&rep) {
        assert!(c.self_adjoint && !c.unitary && c.consistent());
    }
}

#[test]
fn non_hermitian_table_is_neither() {
    // q(0,1) = 2t, q(1,0) = t
    let q = QTable::from_fn(&[0, 1], |a, b| match (a, b) {
        (0, 1) => &Scalar::from_integer(2) * &Scalar::t(),
        (1, 0) => Scalar::t(),
        _ => Scalar::one(),
    });
    let rep = Representation::build_generic(&tuple(&[1, 0, 0]), &q).unwrap();
    assert!(verify_braid_relations(&rep).all_passed());
    for c in classify_adjointness(&rep) {
        assert_eq!(c.label(), "neither");
        assert!(c.consistent());
    }
}
