use std::sync::Arc;

use pimsner::funcmod::*;
use pimsner::leavitt::{edge_sym, ghost_sym, quiver_correspondence, Quiver};
use pimsner::ringcore::{local_unit_for, CoeffRing, LinComb, Monomial, RingDescriptor, RingElement};

fn z() -> CoeffRing {
    CoeffRing::Integers
}

fn vec_of(s: Sym) -> ModVector {
    LinComb::basis(s, &z())
}

fn three_edges() -> Quiver {
    Quiver::from_names(&["v", "w"], &[("e", "v", "w"), ("f", "v", "v"), ("g", "w", "v")]).unwrap()
}

#[test]
fn quiver_pairing_table() {
    let q = three_edges();
    let c = quiver_correspondence(&q, z());
    let m = c.module();
    for e in 0..3 {
        for f in 0..3 {
            let got = m.pair(&vec_of(ghost_sym(&q, e)), &vec_of(edge_sym(&q, f))).unwrap();
            let want = if e == f {
                RingElement::monomial(m.ring(), Monomial::Vertex(q.range(e))).unwrap()
            } else {
                RingElement::zero(m.ring())
            };
            assert_eq!(got, want);
        }
    }
    assert!(m.pair(&ModVector::zero(), &vec_of(edge_sym(&q, 0))).unwrap().is_zero());
    assert!(m.check_pairing_laws().unwrap());
    assert!(m.check_non_degenerate());
}

#[test]
fn free_module_pairing() {
    let k = CoeffRing::Rationals;
    let r = RingDescriptor::scalar(k.clone());
    let m = FunctionalModule::free(r.clone(), vec!["1".into(), "2".into(), "3".into()]);
    let a: ModVector = [(Sym::Coord(0, Monomial::One), k.from_int(2)), (Sym::Coord(2, Monomial::One), k.from_int(5))]
        .into_iter()
        .collect();
    let b: ModVector = [
        (Sym::Coord(0, Monomial::One), k.from_int(3)),
        (Sym::Coord(1, Monomial::One), k.from_int(7)),
        (Sym::Coord(2, Monomial::One), k.from_int(-1)),
    ]
    .into_iter()
    .collect();
    let p = m.pair(&a, &b).unwrap();
    assert_eq!(p, RingElement::scaled_monomial(&r, Monomial::One, k.from_int(1)).unwrap());
}

#[test]
fn mismatched_module_rejected() {
    let q = three_edges();
    let c = quiver_correspondence(&q, z());
    let bogus = vec_of(Sym::named("nope"));
    assert!(c.module().pair(&bogus, &vec_of(edge_sym(&q, 0))).is_err());
}

#[test]
fn elementary_idempotent() {
    let q = three_edges();
    let c = quiver_correspondence(&q, z());
    let m = c.module().clone();
    let x = vec_of(edge_sym(&q, 0));
    let p = vec_of(ghost_sym(&q, 0));
    let t = CompactOperator::elementary(m.clone(), &x, &p).unwrap();
    assert_eq!(compact_mul(&t, &t).unwrap(), t);
    assert!(compact_mul(&t, &CompactOperator::zero(m.clone())).unwrap().is_zero());
    assert_eq!(theta_apply(&t, &x).unwrap(), x);
    assert!(theta_apply(&t, &ModVector::zero()).unwrap().is_zero());
    assert!(theta_apply(&t, &vec_of(edge_sym(&q, 1))).unwrap().is_zero());
    assert_eq!(theta_apply_right(&p, &t).unwrap(), p);
    assert!(theta_apply_right(&ModVector::zero(), &t).unwrap().is_zero());
    assert!(theta_apply_right(&vec_of(ghost_sym(&q, 2)), &t).unwrap().is_zero());
}

#[test]
fn matrix_units() {
    let r = RingDescriptor::scalar(z());
    let idx = vec!["1".to_string(), "2".to_string()];
    let m = Arc::new(FunctionalModule::free(r.clone(), idx.clone()));
    let e = |i| vec_of(Sym::Coord(i, Monomial::One));
    let e12 = CompactOperator::elementary(m.clone(), &e(0), &e(1)).unwrap();
    let e21 = CompactOperator::elementary(m.clone(), &e(1), &e(0)).unwrap();
    let e11 = CompactOperator::elementary(m.clone(), &e(0), &e(0)).unwrap();
    assert_eq!(compact_mul(&e12, &e21).unwrap(), e11);
    let mr = RingDescriptor::matrix(r.clone(), idx);
    let unit = |i, j| {
        RingElement::monomial(
            &mr,
            Monomial::MatrixUnit {
                row: i,
                col: j,
                entry: Box::new(Monomial::One),
            },
        )
        .unwrap()
    };
    assert_eq!(e12.to_matrix(&mr).unwrap(), unit(0, 1));
    assert_eq!(CompactOperator::from_matrix(m.clone(), &unit(1, 0)).unwrap(), e21);
}

#[test]
fn fs_witness_quiver() {
    let q = Quiver::a2();
    let c = quiver_correspondence(&q, z());
    let m = c.module().clone();
    let x = vec_of(edge_sym(&q, 0));
    let p = vec_of(ghost_sym(&q, 0));
    let (t1, t2) = fs_witness(&m, std::slice::from_ref(&x), std::slice::from_ref(&p)).unwrap().unwrap();
    let want = CompactOperator::elementary(m.clone(), &x, &p).unwrap();
    assert_eq!(t1, want);
    assert_eq!(t2, want);
    let (a, b) = fs_witness(&m, &[], &[]).unwrap().unwrap();
    assert!(a.is_zero() && b.is_zero());

    // every edge at once: Θ·1_e = 1_e for all e
    let q = three_edges();
    let c = quiver_correspondence(&q, z());
    let m = c.module().clone();
    let xs: Vec<ModVector> = (0..3).map(|e| vec_of(edge_sym(&q, e))).collect();
    let ps: Vec<ModVector> = (0..3).map(|e| vec_of(ghost_sym(&q, e))).collect();
    let (t1, t2) = fs_witness(&m, &xs, &ps).unwrap().unwrap();
    for x in &xs {
        assert_eq!(&theta_apply(&t1, x).unwrap(), x);
    }
    for p in &ps {
        assert_eq!(&theta_apply_right(p, &t2).unwrap(), p);
    }
}

#[test]
fn fs_witness_free_module_local_unit() {
    let r = RingDescriptor::direct_sum(z(), vec!["a".into(), "b".into()]);
    let m = Arc::new(FunctionalModule::free(r.clone(), vec!["1".into(), "2".into()]));
    // x = ε₁·(1_a + 2·1_b)
    let elt = RingElement::new(
        r.clone(),
        [(Monomial::Vertex(0), z().from_int(1)), (Monomial::Vertex(1), z().from_int(2))].into_iter().collect(),
    )
    .unwrap();
    let x: ModVector = elt.terms().iter().map(|(mm, c)| (Sym::Coord(0, mm.clone()), c.clone())).collect();
    let (t1, _) = fs_witness(&m, std::slice::from_ref(&x), &[]).unwrap().unwrap();
    assert_eq!(theta_apply(&t1, &x).unwrap(), x);
    let u = local_unit_for(&r, &[elt]).unwrap();
    let ux: ModVector = u.terms().iter().map(|(mm, c)| (Sym::Coord(0, mm.clone()), c.clone())).collect();
    let want = CompactOperator::elementary(m.clone(), &ux, &ux).unwrap();
    assert_eq!(t1, want);
}

#[test]
fn functional_homs() {
    let q = three_edges();
    let c = quiver_correspondence(&q, z());
    let h = c.hom().unwrap();
    assert!(check_functional_hom(h));
    assert!(check_functional_hom(&FunctionalHom::identity(c.module().clone())));
    assert!(!check_functional_hom(&h.with_scaled_u(&z().from_int(2))));
    assert!(hom_is_injective(h));
    assert_eq!(c.index_set().unwrap().len(), 3);
}

#[test]
fn induced_map_on_quiver() {
    let q = three_edges();
    let c = quiver_correspondence(&q, z());
    let h = c.hom().unwrap();
    let m = c.module().clone();
    let k = CompactOperator::elementary(m.clone(), &vec_of(edge_sym(&q, 0)), &vec_of(ghost_sym(&q, 2))).unwrap();
    // r(e) = w, r(g) = v: 1_e ⊗ 1_{g*} = 1_e ⊗ 1_w·1_{g*} = 0
    assert!(k.is_zero());
    let mr = RingDescriptor::matrix(m.ring().clone(), q.edges().iter().map(|e| e.name.clone()).collect());
    let k = CompactOperator::elementary(m.clone(), &vec_of(edge_sym(&q, 1)), &vec_of(ghost_sym(&q, 2))).unwrap();
    let img = induced_compact_map(h, &k).unwrap().to_matrix(&mr).unwrap();
    let want = RingElement::monomial(
        &mr,
        Monomial::MatrixUnit {
            row: 1,
            col: 2,
            entry: Box::new(Monomial::Vertex(0)),
        },
    )
    .unwrap();
    assert_eq!(img, want);
    assert!(induced_compact_map(h, &CompactOperator::zero(m.clone())).unwrap().is_zero());
    let id = FunctionalHom::identity(m.clone());
    assert_eq!(induced_compact_map(&id, &k).unwrap(), k);
}

#[test]
fn direct_sums() {
    let q = three_edges();
    let c = quiver_correspondence(&q, z());
    let m = c.module().clone();
    let zero = Arc::new(FunctionalModule::zero(m.ring().clone()));
    let s = direct_sum(&m, &zero).unwrap();
    assert_eq!(s.finite_basis(Side::X).unwrap().len(), 3);
    let r = Arc::new(FunctionalModule::free(m.ring().clone(), vec!["1".into()]));
    let s = Arc::new(direct_sum(&r, &m).unwrap());
    let left = vec_of(Sym::Left(Box::new(Sym::Coord(0, Monomial::Vertex(1)))));
    let right = vec_of(Sym::Right(Box::new(ghost_sym(&q, 0))));
    assert!(s.pair(&right, &left).unwrap().is_zero());
    let rx = vec_of(Sym::Right(Box::new(edge_sym(&q, 0))));
    assert_eq!(s.pair(&right, &rx).unwrap(), m.pair(&vec_of(ghost_sym(&q, 0)), &vec_of(edge_sym(&q, 0))).unwrap());
    let other = Arc::new(FunctionalModule::free(RingDescriptor::scalar(z()), vec!["1".into()]));
    assert!(direct_sum(&m, &other).is_err());
}

#[test]
fn tensor_a2_vanishes() {
    let q = Quiver::a2();
    let c = Arc::new(quiver_correspondence(&q, z()));
    let t = tensor(&c, &c).unwrap();
    assert_eq!(t.module().finite_basis(Side::X).unwrap(), Vec::<Sym>::new());
    assert_eq!(t.module().finite_basis(Side::Dual).unwrap(), Vec::<Sym>::new());
}

#[test]
fn tensor_rose_and_identity() {
    let q = Quiver::rose(2);
    let c = Arc::new(quiver_correspondence(&q, z()));
    let t = tensor(&c, &c).unwrap();
    assert_eq!(t.module().finite_basis(Side::X).unwrap().len(), 4);
    assert!(check_functional_hom(t.hom().unwrap()));
    assert!(t.check_adjoint_law());
    assert!(t.check_non_degenerate_action());

    let id = Arc::new(Correspondence::identity(c.ring().clone()));
    let t = tensor(&c, &id).unwrap();
    assert_eq!(t.module().finite_basis(Side::X).unwrap().len(), 2);
    // (ψ⊗φ)(x⊗y) = ψ(φ(x)·y): pair of e*⊗ε with f⊗ε is δ_{e,f}
    let x = t.module().tensor_basis(&edge_sym(&q, 0), &Sym::Coord(0, Monomial::Vertex(0)));
    let p0 = t.module().tensor_basis_dual(&Sym::Coord(0, Monomial::Vertex(0)), &ghost_sym(&q, 0));
    let p1 = t.module().tensor_basis_dual(&Sym::Coord(0, Monomial::Vertex(0)), &ghost_sym(&q, 1));
    assert_eq!(
        t.module().pair(&p0, &x).unwrap(),
        RingElement::monomial(c.ring(), Monomial::Vertex(0)).unwrap()
    );
    assert!(t.module().pair(&p1, &x).unwrap().is_zero());
    assert!(check_functional_hom(t.hom().unwrap()));
}

#[test]
fn quiver_action_laws() {
    let q = three_edges();
    let c = quiver_correspondence(&q, z());
    assert!(c.check_adjoint_law());
    assert!(c.check_action_laws());
    let a2 = Quiver::a2();
    let c2 = quiver_correspondence(&a2, z());
    assert!(c2.check_non_degenerate_action());
    // the sink acts by zero
    let w = RingElement::monomial(c2.left_ring(), Monomial::Vertex(1)).unwrap();
    assert!(c2.compact_left_action(&w).unwrap().is_zero());
    let v = RingElement::monomial(c2.left_ring(), Monomial::Vertex(0)).unwrap();
    let dv = c2.compact_left_action(&v).unwrap();
    let x = vec_of(edge_sym(&a2, 0));
    assert_eq!(theta_apply(&dv, &x).unwrap(), x);
}
