use std::sync::Arc;

use proptest::prelude::*;

use pimsner::leavitt::{Edge, LpaWord, Quiver};
use pimsner::ringcore::{local_unit_for, CoeffRing, LinComb, Monomial, RingDescriptor, RingElement};

fn quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=6).prop_map(move |es| {
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

fn words(q: &Quiver, ring: &RingDescriptor, len: usize) -> Vec<Monomial> {
    let mut paths: Vec<Vec<usize>> = vec![Vec::new()];
    for n in 1..=len {
        paths.extend(q.paths(n));
    }
    let mut out = Vec::new();
    for p in &paths {
        for r in &paths {
            if p.len() + r.len() > len {
                continue;
            }
            for v in 0..q.vertex_count() {
                let m = Monomial::Path(LpaWord { p: p.clone(), q: r.clone(), vertex: v });
                if ring.contains(&m) {
                    out.push(m);
                }
            }
        }
    }
    out
}

fn pick(ring: &Arc<RingDescriptor>, pool: &[Monomial], i: usize) -> RingElement {
    RingElement::monomial(ring, pool[i % pool.len()].clone()).unwrap()
}

fn degree(m: &Monomial) -> i64 {
    match m {
        Monomial::Path(w) => w.degree(),
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn lpa_associative_and_graded(q in quiver(), idx in prop::collection::vec(0usize..10_000, 3)) {
        let q = Arc::new(q);
        let ring = RingDescriptor::leavitt(CoeffRing::Integers, q.clone());
        let pool = words(&q, &ring, 3);
        let (a, b, c) = (pick(&ring, &pool, idx[0]), pick(&ring, &pool, idx[1]), pick(&ring, &pool, idx[2]));
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&l, &r);
        let da = degree(a.terms().keys().next().unwrap());
        let db = degree(b.terms().keys().next().unwrap());
        for m in a.mul(&b).unwrap().terms().keys() {
            prop_assert_eq!(degree(m), da + db);
        }
    }

    #[test]
    fn vertices_are_local_units(q in quiver(), idx in prop::collection::vec(0usize..10_000, 0..5)) {
        let q = Arc::new(q);
        let ring = RingDescriptor::leavitt(CoeffRing::Rationals, q.clone());
        let pool = words(&q, &ring, 3);
        let elems: Vec<RingElement> = idx.iter().map(|&i| pick(&ring, &pool, i)).collect();
        let e = local_unit_for(&ring, &elems).unwrap();
        prop_assert!(e.is_idempotent());
        for r in &elems {
            prop_assert_eq!(&e.mul(r).unwrap(), r);
            prop_assert_eq!(&r.mul(&e).unwrap(), r);
        }
    }
}

#[test]
fn contraction_and_vertex_relation() {
    let q = Arc::new(Quiver::rose(2));
    let ring = RingDescriptor::leavitt(CoeffRing::Integers, q.clone());
    let m = |w: LpaWord| RingElement::monomial(&ring, Monomial::Path(w)).unwrap();
    let (e, f) = (m(LpaWord::edge(&q, 0)), m(LpaWord::edge(&q, 1)));
    let (es, fs) = (m(LpaWord::ghost(&q, 0)), m(LpaWord::ghost(&q, 1)));
    let v = m(LpaWord::vertex(0));
    assert_eq!(es.mul(&e).unwrap(), v);
    assert!(es.mul(&f).unwrap().is_zero());
    let sum = e.mul(&es).unwrap().add(&f.mul(&fs).unwrap()).unwrap();
    assert_eq!(sum, v);
    let k = CoeffRing::Integers;
    assert_eq!(sum.terms(), &LinComb::basis(Monomial::Path(LpaWord::vertex(0)), &k));
}
