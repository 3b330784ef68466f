use std::collections::BTreeMap;
use std::sync::Arc;

use crate::funcmod::{Correspondence, FunctionalHom, FunctionalModule, HomMap, LeftAction, Sym, TableData};
use crate::ringcore::{CoeffRing, LinComb, Monomial, RingDescriptor};

use super::Quiver;

/// Symbol of `1_e` in `X`.
pub fn edge_sym(q: &Quiver, e: usize) -> Sym {
    Sym::named(&q.edges()[e].name)
}

/// Symbol of `1_{e*}` in `X′`.
pub fn ghost_sym(q: &Quiver, e: usize) -> Sym {
    Sym::named(&format!("{}*", q.edges()[e].name))
}

/// The vertex ring `k^{(Q⁰)}`.
pub fn vertex_ring(q: &Quiver, k: CoeffRing) -> Arc<RingDescriptor> {
    RingDescriptor::direct_sum(k, q.vertices().to_vec())
}

/// `X = ⊕_e k·1_e` over `R = k^{(Q⁰)}` with `⟨1_{e*}, 1_f⟩ = δ_{e,f}1_{r(e)}`,
/// left action by source and the hom into `R^{(Q¹)}`.
pub fn quiver_correspondence(q: &Quiver, k: CoeffRing) -> Correspondence {
    let ring = vertex_ring(q, k.clone());
    let mut table = TableData {
        x_basis: Vec::new(),
        xp_basis: Vec::new(),
        right_action: BTreeMap::new(),
        left_action: BTreeMap::new(),
        pairing: BTreeMap::new(),
        right_units: BTreeMap::new(),
        left_units: BTreeMap::new(),
    };
    let mut on_x = BTreeMap::new();
    let mut on_dual = BTreeMap::new();
    let mut u = BTreeMap::new();
    let mut v = BTreeMap::new();
    for (i, e) in q.edges().iter().enumerate() {
        let x = edge_sym(q, i);
        let p = ghost_sym(q, i);
        let r = Monomial::Vertex(e.range);
        let s = Monomial::Vertex(e.source);
        table.x_basis.push(x.clone());
        table.xp_basis.push(p.clone());
        table.right_action.insert((x.clone(), r.clone()), LinComb::basis(x.clone(), &k));
        table.left_action.insert((r.clone(), p.clone()), LinComb::basis(p.clone(), &k));
        table.pairing.insert((p.clone(), x.clone()), LinComb::basis(r.clone(), &k));
        table.right_units.insert(x.clone(), r.clone());
        table.left_units.insert(p.clone(), r.clone());
        on_x.insert((s.clone(), x.clone()), LinComb::basis(x.clone(), &k));
        on_dual.insert((p.clone(), s), LinComb::basis(p.clone(), &k));
        u.insert(x, LinComb::basis(Sym::Coord(i, r.clone()), &k));
        v.insert(p, LinComb::basis(Sym::Coord(i, r), &k));
    }
    let module = Arc::new(FunctionalModule::from_table(ring.clone(), table).expect("finite vertex ring"));
    let target = Arc::new(FunctionalModule::free(
        ring.clone(),
        q.edges().iter().map(|e| e.name.clone()).collect(),
    ));
    let hom = FunctionalHom::new(module.clone(), target, HomMap::Table(u), HomMap::Table(v))
        .expect("hom tables use module symbols");
    Correspondence::new(module, ring, LeftAction::Table { on_x, on_dual }, Some(Arc::new(hom)))
        .expect("table correspondence")
}
