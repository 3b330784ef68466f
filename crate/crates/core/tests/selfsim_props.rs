use std::collections::HashSet;

use proptest::prelude::*;

use pimsner::selfsim::{parse_group, GroupLetter, GroupWord, SelfSimilarGroup};

const GRIGORCHUK: &str = "alphabet: 0 1\na = (0 1)(e, e)\nb = (a, c)\nc = (a, d)\nd = (e, b)\n";
const ADDING3: &str = "alphabet: 0 1 2\nt = (0 1 2)(e, e, t)\ns = (0 1)(s, t, e)\n";

fn groups() -> Vec<SelfSimilarGroup> {
    vec![
        SelfSimilarGroup::odometer(),
        parse_group(GRIGORCHUK).unwrap(),
        parse_group(ADDING3).unwrap().with_equality_depth(6),
    ]
}

fn all_words(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..d).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

#[test]
fn generators_permute_levels() {
    for g in groups() {
        let d = g.degree();
        let depth = g.equality_depth();
        for n in 0..=depth {
            if d.pow(n as u32) > 100_000 {
                break;
            }
            let level = all_words(d, n);
            for i in 0..g.generators().len() {
                for gen in [GroupWord::generator(i), GroupWord::generator(i).inverse()] {
                    let images: HashSet<Vec<usize>> = level.iter().map(|w| g.act(&gen, w)).collect();
                    assert_eq!(images.len(), level.len());
                    assert!(images.iter().all(|w| w.len() == n));
                }
            }
        }
    }
}

fn word(ngens: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0..ngens, any::<bool>()), 0..=4).prop_map(|ls| {
        GroupWord::from_letters(ls.into_iter().map(|(generator, inverse)| GroupLetter { generator, inverse }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn self_similarity(gi in 0usize..3, g in word(4), x in 0usize..3, w in prop::collection::vec(0usize..3, 0..7)) {
        let grp = &groups()[gi];
        let d = grp.degree();
        let g = GroupWord::from_letters(g.letters().iter().copied().filter(|l| l.generator < grp.generators().len()));
        let x = x % d;
        let w: Vec<usize> = w.into_iter().map(|y| y % d).collect();
        let mut xw = vec![x];
        xw.extend(&w);
        let lhs = grp.act(&g, &xw);
        let mut rhs = grp.act(&g, &[x]);
        rhs.extend(grp.act(&grp.restriction(&g, &[x]), &w));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cocycle(gi in 0usize..3, g in word(4), h in word(4), x in 0usize..3) {
        let grp = &groups()[gi];
        let n = grp.generators().len();
        let clip = |w: GroupWord| GroupWord::from_letters(w.letters().iter().copied().filter(|l| l.generator < n));
        let (g, h) = (clip(g), clip(h));
        let x = x % grp.degree();
        let lhs = grp.restriction(&g.mul(&h), &[x]);
        let hx = grp.act(&h, &[x]);
        let rhs = grp.restriction(&g, &hx).mul(&grp.restriction(&h, &[x]));
        prop_assert!(grp.equal_to_depth(&lhs, &rhs, grp.equality_depth() - 1));
    }
}

#[test]
fn odometer_examples() {
    let g = SelfSimilarGroup::odometer();
    let a = g.parse_word("a").unwrap();
    let w = |s: &str| g.parse_letters(s).unwrap();
    assert_eq!(g.act(&GroupWord::identity(), &w("0110")), w("0110"));
    assert_eq!(g.act(&a, &w("11")), w("00"));
    assert_eq!(g.act(&a, &w("01")), w("11"));
    assert_eq!(g.restriction(&a, &w("1")), a);
    assert_eq!(g.restriction(&a.mul(&a), &w("1")), a);
    assert!(g.restriction(&GroupWord::identity(), &w("0101")).is_identity());
    assert!(g.group_equal(&a, &a));
    assert!(!g.equal_to_depth(&a.mul(&a), &a, 3));
    assert!(g.group_equal(&a.mul(&a.inverse()), &GroupWord::identity()));
}
