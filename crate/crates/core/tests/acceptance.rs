use std::collections::HashSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pimsner::abgroup::{cokernel, les_segment, smith_normal_form, FgAbelianGroup, IntMatrix};
use pimsner::fock::*;
use pimsner::funcmod::{compact_mul, CompactOperator, FunctionalModule, ModVector, Side, Sym};
use pimsner::leavitt::{k_groups, quiver_correspondence, Edge, KGroup, KPresets, LpaWord, Quiver};
use pimsner::ringcore::{CoeffRing, LinComb, Monomial, RingDescriptor, RingElement};
use pimsner::selfsim::{build_nek_correspondence, nek_k_groups, GroupWord, SelfSimilarGroup};

const SEED: u64 = 0x5eed_2024;
const SNF_SAMPLES: usize = 10_000;
const SNF_BUDGET: Duration = Duration::from_secs(30);
const QUIVERS: usize = 20;
const FOCK_DEPTH: usize = 6;
const WORD_BOUND: usize = 3;
const DEFECT_MAX_LETTERS: usize = 4;
const DEFECT_DEPTH: usize = DEFECT_MAX_LETTERS + 1;
const COLUMNS_PER_DEGREE: usize = 6;
const MATRIX_PAIRS: usize = 1_000;
const ODOMETER_LENGTH: usize = 10;
const LPA_TRIPLES: usize = 500;
const P0_DEPTH: usize = 4;

const Z: CoeffRing = CoeffRing::Integers;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_quivers() -> Vec<Quiver> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    (0..QUIVERS)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            let m = rng.gen_range(1..=6);
            let edges = (0..m)
                .map(|i| Edge {
                    name: format!("e{}", i),
                    source: rng.gen_range(0..n),
                    range: rng.gen_range(0..n),
                })
                .collect();
            Quiver::new((0..n).map(|i| format!("v{}", i)).collect(), edges).unwrap()
        })
        .collect()
}

fn fock_of(q: &Quiver, depth: usize) -> TruncatedFock {
    TruncatedFock::new(Arc::new(quiver_correspondence(q, Z)), depth).unwrap()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let start = Instant::now();
    for i in 0..SNF_SAMPLES {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let a = IntMatrix::from_rows(&rows).unwrap();
        let f = smith_normal_form(&a);
        let uav = f.u.checked_mul(&a).unwrap().checked_mul(&f.v).unwrap();
        ensure(uav == f.s, || format!("sample {}: U·A·V ≠ S", i))?;
        ensure(f.u.is_unimodular() && f.v.is_unimodular(), || format!("sample {}: transform not unimodular", i))?;
        for p in 0..r {
            for q in 0..c {
                ensure(p == q || f.s.get(p, q).is_zero(), || format!("sample {}: S not diagonal", i))?;
            }
        }
        let d = f.diagonal();
        ensure(d.iter().all(|x| !x.is_negative()), || format!("sample {}: negative factor", i))?;
        for w in d.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            ensure(ok, || format!("sample {}: divisibility chain broken", i))?;
        }
        let g = rows.iter().flatten().fold(BigInt::zero(), |acc, &x| acc.gcd(&BigInt::from(x)));
        ensure(d[0] == g, || format!("sample {}: first factor is not the entry gcd", i))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < SNF_BUDGET, || format!("took {:.1?}", elapsed))?;
    Ok(format!("{} matrices in {:.1?}", SNF_SAMPLES, elapsed))
}

fn criterion_2() -> Outcome {
    let z = KPresets::for_coeff(&Z).map_err(|e| e.to_string())?;
    let k0 = |q: &Quiver| k_groups(q, &z).sequence.degree(0).unwrap().cokernel.clone();
    for d in 2..=6i64 {
        let oracle = cokernel(&IntMatrix::from_rows(&[[1 - d]]).unwrap());
        ensure(oracle == FgAbelianGroup::cyclic(d - 1), || format!("oracle for d = {}", d))?;
        let got = k0(&Quiver::rose(d as usize));
        ensure(got == KGroup::fg(oracle), || format!("K0(L_{}) = {:?}", d, got))?;
    }
    let a2 = cokernel(&IntMatrix::from_rows(&[[1], [-1]]).unwrap());
    ensure(a2 == FgAbelianGroup::free(1), || "A2 oracle".into())?;
    ensure(k0(&Quiver::a2()) == KGroup::fg(a2), || "K0(L(A2))".into())?;
    let r1 = k_groups(&Quiver::rose(1), &z);
    let zfree = KGroup::fg(FgAbelianGroup::free(1));
    ensure(r1.sequence.degree(0).unwrap().cokernel == zfree, || "K0 of rose_1".into())?;
    ensure(r1.sequence.degree(1).unwrap().kernel == zfree, || "kernel for rose_1".into())?;
    Ok("rose_2..6, A2, rose_1".into())
}

fn basis_syms(f: &TruncatedFock, side: Side) -> Vec<Sym> {
    if f.depth() == 0 {
        return Vec::new();
    }
    f.basis(side, 1)
        .iter()
        .filter_map(|k| match k {
            FockKey::Tensor(_, s) => Some(s.clone()),
            FockKey::Scalar(_) => None,
        })
        .collect()
}

fn criterion_3(quivers: &[Quiver], focks: &[TruncatedFock]) -> Outcome {
    let mut pairs = 0;
    for (q, f) in quivers.iter().zip(focks) {
        let mut ev = Evaluator::new(f);
        let module = f.correspondence().module();
        for p in basis_syms(f, Side::Dual) {
            let phi: ModVector = LinComb::basis(p, &Z);
            let s = ev.pi0(&WordSum::word(Z.one(), FockWord::letter(Letter::Annihilate(phi.clone())))).unwrap();
            for x in basis_syms(f, Side::X) {
                let x: ModVector = LinComb::basis(x, &Z);
                let t = ev.pi0(&WordSum::word(Z.one(), FockWord::letter(Letter::Create(x.clone())))).unwrap();
                let g = module.pair(&phi, &x).unwrap();
                let lhs = ev.pi0(&WordSum::word(Z.one(), FockWord::letter(Letter::scalar(&g)))).unwrap();
                let rhs = s.compose(&t).unwrap();
                ensure(lhs.agrees_with(&rhs), || format!("{:?}: pair fails", q.edges()))?;
                ensure((0..FOCK_DEPTH).all(|n| rhs.coverage().contains(&n)), || "coverage".into())?;
                pairs += 1;
            }
        }
        let report = covariant_check(f, &Representation::canonical(f)).unwrap();
        ensure(report.holds, || format!("bimodule laws: {:?}", report.failures))?;
    }
    Ok(format!("{} basis pairs over {} quivers at depth {}", pairs, quivers.len(), FOCK_DEPTH))
}

fn normal_words(f: &TruncatedFock, max_letters: usize) -> Vec<FockWord> {
    let xs: Vec<Letter> = basis_syms(f, Side::X)
        .into_iter()
        .map(|s| Letter::Create(LinComb::basis(s, &Z)))
        .collect();
    let ps: Vec<Letter> = basis_syms(f, Side::Dual)
        .into_iter()
        .map(|s| Letter::Annihilate(LinComb::basis(s, &Z)))
        .collect();
    let words_of = |pool: &[Letter], n: usize| -> Vec<Vec<Letter>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    pool.iter().map(move |l| {
                        let mut v = w.clone();
                        v.push(l.clone());
                        v
                    })
                })
                .collect();
        }
        out
    };
    let mut out = Vec::new();
    for k in 0..=max_letters {
        for l in 0..=max_letters - k {
            for a in words_of(&xs, k) {
                for b in words_of(&ps, l) {
                    let mut w = a.clone();
                    w.extend(b);
                    out.push(FockWord::new(w));
                }
            }
        }
    }
    out
}

fn criterion_4(quivers: &[Quiver]) -> Outcome {
    let mut words = 0;
    for q in quivers {
        let f = fock_of(q, DEFECT_DEPTH);
        let mut ev = Evaluator::new(&f);
        for w in normal_words(&f, DEFECT_MAX_LETTERS) {
            let d = quasi_hom_defect(&mut ev, &w).map_err(|e| e.to_string())?;
            let shape = w.normal_shape().unwrap();
            ensure(d.operator.is_zero() || d.shape == shape, || format!("{} rewrote to {:?}", w, d.shape))?;
            ensure(d.support_ok(), || format!("{}: blocks {:?}", w, d.operator.nonzero_blocks()))?;
            words += 1;
        }
    }
    Ok(format!("{} normal-form words with k + l ≤ {}", words, DEFECT_MAX_LETTERS))
}

fn criterion_5(focks: &[TruncatedFock]) -> Outcome {
    ensure(coefficient_identity(), || "t(2t − t³) + (1 − t²)² ≠ 1".into())?;
    let mut checks = 0;
    for (i, f) in focks.iter().enumerate() {
        let suite = HomotopySuite::new(f, WORD_BOUND, COLUMNS_PER_DEGREE, SEED + i as u64);
        ensure(!suite.columns().is_empty(), || format!("quiver {}: no columns", i))?;
        let xs: Vec<ModVector> = basis_syms(f, Side::X).into_iter().map(|s| LinComb::basis(s, &Z)).collect();
        let ps: Vec<ModVector> = basis_syms(f, Side::Dual).into_iter().map(|s| LinComb::basis(s, &Z)).collect();
        let mut letters: Vec<Letter> = xs.iter().cloned().map(Letter::Create).collect();
        letters.extend(ps.iter().cloned().map(Letter::Annihilate));
        for m in f.basis(Side::X, 0) {
            if let FockKey::Scalar(m) = m {
                letters.push(Letter::Scalar(LinComb::basis(m.clone(), &Z)));
            }
        }
        for l in &letters {
            ensure(suite.endpoint_zero(l).unwrap(), || format!("H(0) fails at {}", l))?;
            ensure(suite.endpoint_one(l).unwrap(), || format!("H(1) fails at {}", l))?;
            checks += 2;
        }
        for x in &xs {
            for p in &ps {
                ensure(suite.pairing(x, p).unwrap(), || format!("pairing fails at {} / {}", p, x))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{} endpoint and pairing checks at depth {}, word bound {}", checks, FOCK_DEPTH, WORD_BOUND))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let r = RingDescriptor::scalar(Z);
    for trial in 0..MATRIX_PAIRS {
        let n = rng.gen_range(1..=5);
        let idx: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let m = Arc::new(FunctionalModule::free(r.clone(), idx.clone()));
        let mr = RingDescriptor::matrix(r.clone(), idx);
        let e = |i| -> ModVector { LinComb::basis(Sym::Coord(i, Monomial::One), &Z) };
        let dense = |rng: &mut ChaCha8Rng| -> (Vec<Vec<i64>>, CompactOperator) {
            let a: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
            let mut op = CompactOperator::zero(m.clone());
            for (i, row) in a.iter().enumerate() {
                for (j, &c) in row.iter().enumerate() {
                    let t = CompactOperator::elementary(m.clone(), &e(i), &e(j)).unwrap();
                    op = op.plus_scaled(&t, &Z.from_int(c)).unwrap();
                }
            }
            (a, op)
        };
        let (a, ka) = dense(&mut rng);
        let (b, kb) = dense(&mut rng);
        let prod = compact_mul(&ka, &kb).unwrap().to_matrix(&mr).unwrap();
        let mut want = LinComb::zero();
        for (i, row) in a.iter().enumerate() {
            for j in 0..n {
                let c: i64 = row.iter().zip(&b).map(|(x, brow)| x * brow[j]).sum();
                want.add_term(
                    Monomial::MatrixUnit { row: i, col: j, entry: Box::new(Monomial::One) },
                    Z.from_int(c),
                );
            }
        }
        ensure(prod.terms() == &want, || format!("pair {} (n = {})", trial, n))?;
        let via_ring = ka.to_matrix(&mr).unwrap().mul(&kb.to_matrix(&mr).unwrap()).unwrap();
        ensure(via_ring == prod, || format!("pair {}: ring product differs", trial))?;
    }
    Ok(format!("{} pairs, |I| ≤ 5", MATRIX_PAIRS))
}

fn criterion_7() -> Outcome {
    let g = SelfSimilarGroup::odometer();
    let a = GroupWord::generator(0);
    let elems = [GroupWord::identity(), a.clone(), a.inverse(), a.mul(&a), a.inverse().mul(&a.inverse())];
    let mut checked = 0usize;
    for n in 0..=ODOMETER_LENGTH {
        let level: Vec<Vec<usize>> = (0..1usize << n)
            .map(|v| (0..n).map(|i| (v >> i) & 1).collect())
            .collect();
        for h in &elems {
            let images: HashSet<Vec<usize>> = level.iter().map(|w| g.act(h, w)).collect();
            ensure(images.len() == level.len(), || format!("not bijective on level {}", n))?;
        }
        for (v, w) in level.iter().enumerate() {
            let inc: Vec<usize> = (0..n).map(|i| (((v + 1) % (1 << n)) >> i) & 1).collect();
            ensure(g.act(&a, w) == inc, || format!("increment fails on {:?}", w))?;
            if let Some((&x, rest)) = w.split_first() {
                for h in &elems {
                    let mut rhs = g.act(h, &[x]);
                    rhs.extend(g.act(&g.restriction(h, &[x]), rest));
                    ensure(g.act(h, w) == rhs, || format!("recursion fails on {:?}", w))?;
                }
            }
            checked += 1;
        }
        let ones = vec![1; n];
        ensure(g.act(&a, &ones) == vec![0; n], || format!("1^{} does not wrap", n))?;
    }
    for h1 in &elems {
        for h2 in &elems {
            for x in 0..2 {
                let lhs = g.restriction(&h1.mul(h2), &[x]);
                let rhs = g.restriction(h1, &g.act(h2, &[x])).mul(&g.restriction(h2, &[x]));
                ensure(g.group_equal(&lhs, &rhs), || "cocycle".into())?;
            }
        }
    }
    Ok(format!("{} words of length ≤ {}", checked, ODOMETER_LENGTH))
}

fn criterion_8() -> Outcome {
    let z = KPresets::for_coeff(&Z).map_err(|e| e.to_string())?;
    let free = FgAbelianGroup::free(1);
    for d in 2..=5 {
        let nek = build_nek_correspondence(Arc::new(SelfSimilarGroup::trivial(d).unwrap()), Z).unwrap();
        ensure(nek.checks.all_pass(), || format!("d = {}: relation checks", d))?;
        let r = nek_k_groups(&nek, None, &z).unwrap().unwrap();
        let l = k_groups(&Quiver::rose(d), &z);
        let a = les_segment(&r.map, &free).unwrap();
        let b = les_segment(&l.sequence.map, &free).unwrap();
        ensure(a == b, || format!("d = {}: segments differ", d))?;
        ensure(r.degrees == l.sequence.degrees, || format!("d = {}: degree data differs", d))?;
    }
    Ok("d = 2..5".into())
}

fn lpa_words(q: &Quiver, ring: &RingDescriptor, len: usize) -> Vec<Monomial> {
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

fn criterion_9(quivers: &[Quiver]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for _ in 0..LPA_TRIPLES {
        let q = Arc::new(quivers[rng.gen_range(0..quivers.len())].clone());
        let ring = RingDescriptor::leavitt(Z, q.clone());
        let pool = lpa_words(&q, &ring, 3);
        let mut pick = || {
            let m = pool[rng.gen_range(0..pool.len())].clone();
            RingElement::monomial(&ring, m).unwrap().scale(&Z.from_int(rng.gen_range(-3..=3)))
        };
        let (a, b, c) = (pick(), pick(), pick());
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        ensure(l == r, || "associativity".into())?;
    }
    let mut relations = 0;
    for q in quivers {
        let qa = Arc::new(q.clone());
        let ring = RingDescriptor::leavitt(Z, qa.clone());
        let m = |w: LpaWord| RingElement::monomial(&ring, Monomial::Path(w)).unwrap();
        for e in 0..q.edge_count() {
            let ee = m(LpaWord::ghost(q, e)).mul(&m(LpaWord::edge(q, e))).unwrap();
            ensure(ee == m(LpaWord::vertex(q.range(e))), || format!("e*e for edge {}", e))?;
            relations += 1;
        }
        for v in q.regular_vertices() {
            let mut sum = RingElement::zero(&ring);
            for &e in q.out_edges(v) {
                sum = sum.add(&m(LpaWord::edge(q, e)).mul(&m(LpaWord::ghost(q, e))).unwrap()).unwrap();
            }
            ensure(sum == m(LpaWord::vertex(v)), || format!("Σ ee* at vertex {}", v))?;
            relations += 1;
        }
        let f = fock_of(q, P0_DEPTH);
        for v in q.regular_vertices() {
            let i = RingElement::vertex(f.ring(), v).unwrap();
            let op = p0_compact_form(&f, &i).unwrap();
            ensure((0..=P0_DEPTH).all(|n| op.coverage().contains(&n)), || "i·P0 coverage".into())?;
            for n in 0..=P0_DEPTH {
                for key in f.basis(Side::X, n) {
                    let b = basis_vector(&f, key);
                    let got = op.apply(&f, &b).unwrap();
                    let want = if n == 0 {
                        scalar_operator(&f, &i).unwrap().apply(&f, &b).unwrap()
                    } else {
                        LinComb::zero()
                    };
                    ensure(got == want, || format!("i·P0 at vertex {} on {}", v, key))?;
                }
            }
        }
    }
    Ok(format!("{} triples, {} relations, i·P0 on degrees 0..={}", LPA_TRIPLES, relations, P0_DEPTH))
}

fn main() -> ExitCode {
    let quivers = random_quivers();
    let focks: Vec<TruncatedFock> = quivers.iter().map(|q| fock_of(q, FOCK_DEPTH)).collect();
    let runs: Vec<(usize, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(criterion_2)),
        (3, Box::new(|| criterion_3(&quivers, &focks))),
        (4, Box::new(|| criterion_4(&quivers))),
        (5, Box::new(|| criterion_5(&focks))),
        (6, Box::new(criterion_6)),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
        (9, Box::new(|| criterion_9(&quivers))),
    ];
    let mut failed = 0;
    for (n, run) in runs {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS criterion {}: {} [{:.1?}]", n, detail, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {} [{:.1?}]", n, why, start.elapsed());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
