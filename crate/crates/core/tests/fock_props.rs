use std::sync::Arc;

use proptest::prelude::*;

use pimsner::fock::*;
use pimsner::funcmod::Side;
use pimsner::leavitt::{edge_sym, ghost_sym, quiver_correspondence, Edge, Quiver};
use pimsner::ringcore::{CoeffRing, LinComb, Monomial, RingElement};

const Z: CoeffRing = CoeffRing::Integers;

fn quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 1..=4).prop_map(move |es| {
            let vertices = (0..n).map(|i| format!("v{}", i)).collect();
            let edges = es
                .into_iter()
                .enumerate()
                .map(|(i, (s, r))| Edge { name: format!("e{}", i), source: s, range: r })
                .collect();
            Quiver::new(vertices, edges).unwrap()
        })
    })
}

fn fock(q: &Quiver, depth: usize) -> TruncatedFock {
    TruncatedFock::new(Arc::new(quiver_correspondence(q, Z)), depth).unwrap()
}

fn letter(q: &Quiver, code: usize) -> Letter {
    let e = (code / 3) % q.edge_count();
    match code % 3 {
        0 => Letter::Create(LinComb::basis(edge_sym(q, e), &Z)),
        1 => Letter::Annihilate(LinComb::basis(ghost_sym(q, e), &Z)),
        _ => Letter::Scalar(LinComb::basis(Monomial::Vertex((code / 3) % q.vertex_count()), &Z)),
    }
}

fn word(q: &Quiver, codes: &[usize]) -> FockWord {
    FockWord::new(codes.iter().map(|&c| letter(q, c)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn annihilate_after_create_is_pairing(q in quiver(), a in 0usize..100, b in 0usize..100) {
        let f = fock(&q, 3);
        let x = LinComb::basis(edge_sym(&q, a % q.edge_count()), &Z);
        let phi = LinComb::basis(ghost_sym(&q, b % q.edge_count()), &Z);
        let lhs = annihilation(&f, &phi).unwrap().compose(&creation(&f, &x).unwrap()).unwrap();
        let g = f.correspondence().module().pair(&phi, &x).unwrap();
        let rhs = scalar_operator(&f, &g).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
        for n in 0..3 {
            prop_assert!(lhs.coverage().contains(&n));
        }
    }

    #[test]
    fn adjoint_law(q in quiver(), codes in prop::collection::vec(0usize..60, 0..=3), i in 0usize..1000, j in 0usize..1000, n in 0usize..=3) {
        let f = fock(&q, 3);
        let w = word(&q, &codes);
        let m = n as i64 + w.shift();
        prop_assume!(n as i64 + w.max_prefix_shift() <= 3);
        prop_assume!((0..=3).contains(&m));
        let m = m as usize;
        prop_assume!(m as i64 + w.adjoint().max_prefix_shift() <= 3);
        let (ps, psis) = (f.basis(Side::X, n), f.basis(Side::Dual, m));
        prop_assume!(!ps.is_empty() && !psis.is_empty());
        let p = basis_vector(&f, &ps[i % ps.len()]);
        let psi = basis_vector(&f, &psis[j % psis.len()]);
        let lhs = f.pairing(&apply_word(&f, &w.adjoint(), &psi).unwrap(), &p).unwrap();
        let rhs = f.pairing(&psi, &apply_word(&f, &w, &p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn defect_is_a_derivation(q in quiver(), u in prop::collection::vec(0usize..60, 0..=2), v in prop::collection::vec(0usize..60, 0..=2)) {
        let f = fock(&q, 3);
        let mut ev = Evaluator::new(&f);
        let (t1, t2) = (word(&q, &u), word(&q, &v));
        let d = |ev: &mut Evaluator, w: &FockWord| {
            ev.word(Rep::Pi0, w).unwrap().minus(&ev.word(Rep::Pi1, w).unwrap()).unwrap()
        };
        let lhs = d(&mut ev, &t1.concat(&t2));
        let rhs = ev.word(Rep::Pi0, &t1).unwrap().compose(&d(&mut ev, &t2)).unwrap()
            .plus(&d(&mut ev, &t1).compose(&ev.word(Rep::Pi1, &t2).unwrap()).unwrap())
            .unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn normal_form_preserves_both_representations(q in quiver(), codes in prop::collection::vec(0usize..60, 0..=4)) {
        let f = fock(&q, 3);
        let mut ev = Evaluator::new(&f);
        let w = word(&q, &codes);
        let nf = normal_form(&f, &w).unwrap();
        for rep in [Rep::Pi0, Rep::Pi1] {
            let a = ev.word(rep, &w).unwrap();
            match &nf {
                Some(nf) => prop_assert!(a.agrees_with(&ev.word(rep, nf).unwrap())),
                None => prop_assert!(a.is_zero()),
            }
        }
        if let Some(nf) = nf {
            prop_assert!(nf.normal_shape().is_some());
        }
    }

    #[test]
    fn matrix_picture(q in quiver(), a in 0usize..100, v in 0usize..3) {
        let f = fock(&q, 3);
        let x = LinComb::basis(edge_sym(&q, a % q.edge_count()), &Z);
        let phi = LinComb::basis(ghost_sym(&q, a % q.edge_count()), &Z);
        prop_assert!(creation(&f, &x).unwrap().nonzero_blocks().iter().all(|&(t, s)| t == s + 1));
        prop_assert!(annihilation(&f, &phi).unwrap().nonzero_blocks().iter().all(|&(t, s)| t + 1 == s));
        let v = v % q.vertex_count();
        if q.is_regular(v) {
            let i = RingElement::vertex(f.ring(), v).unwrap();
            let op = p0_compact_form(&f, &i).unwrap();
            prop_assert!(op.nonzero_blocks().iter().all(|&b| b == (0, 0)));
            let one = basis_vector(&f, &FockKey::Scalar(Monomial::Vertex(v)));
            prop_assert_eq!(op.apply(&f, &one).unwrap(), one);
        }
    }

    #[test]
    fn homotopy_respects_relations(q in quiver(), a in 0usize..100, b in 0usize..100, v in 0usize..3, seed in any::<u64>()) {
        let f = fock(&q, 3);
        let suite = HomotopySuite::new(&f, 2, 3, seed);
        let x = LinComb::basis(edge_sym(&q, a % q.edge_count()), &Z);
        let phi = LinComb::basis(ghost_sym(&q, b % q.edge_count()), &Z);
        let r = LinComb::basis(Monomial::Vertex(v % q.vertex_count()), &Z);
        prop_assert!(suite.pairing(&x, &phi).unwrap());
        prop_assert!(suite.bimodule(&x, &phi, &r).unwrap());
        prop_assert!(suite.endpoint_zero(&Letter::Create(x.clone())).unwrap());
        prop_assert!(suite.endpoint_one(&Letter::Annihilate(phi)).unwrap());
    }
}
