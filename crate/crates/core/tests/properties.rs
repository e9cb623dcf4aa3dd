use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use planegroups::algebra::snf::{smith_normal_form, IntMatrix};
use planegroups::fpalgo::{coset_enumerate, DEFAULT_MAX_COSETS};
use planegroups::pquotient::{PcElement, PcPresentation};
use planegroups::presentations::{catalog, parse_presentation, to_text, Loaded, Presentation, SubgroupSpec, Word};
use planegroups::ramification::{disjoint, paper_tuples, sigma_set, system_type, DenseGroup};
use planegroups::scenarios::{h3k, SubgroupQuotient};

fn h32() -> &'static (SubgroupQuotient, DenseGroup) {
    static H: OnceLock<(SubgroupQuotient, DenseGroup)> = OnceLock::new();
    H.get_or_init(|| {
        let q = h3k(2, Default::default()).unwrap();
        let g = DenseGroup::new(&q.quotient.pc, 1 << 12).unwrap();
        (q, g)
    })
}

fn element(pc: &PcPresentation) -> impl Strategy<Value = PcElement> {
    proptest::collection::vec(0..pc.p, pc.gen_count()).prop_map(PcElement)
}

fn word(gens: i32, len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec((1..=gens, any::<bool>()), 0..len).prop_map(|v| Word(v.into_iter().map(|(g, s)| if s { g } else { -g }).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn pc_multiplication_is_associative(
        (x, y, z) in { let pc = &h32().0.quotient.pc; (element(pc), element(pc), element(pc)) }
    ) {
        let c = h32().0.quotient.pc.collector();
        prop_assert_eq!(c.mul(&c.mul(&x, &y), &z), c.mul(&x, &c.mul(&y, &z)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sigma_is_conjugation_invariant(h in element(&h32().0.quotient.pc)) {
        let (q, g) = h32();
        let c = q.quotient.pc.collector();
        let (t1, t2) = paper_tuples("thm-main", Default::default(), &q.quotient.pc, &q.images).unwrap();
        for t in [&t1, &t2] {
            let twisted: Vec<PcElement> = t.iter().map(|x| c.conj(x, &h)).collect();
            prop_assert_eq!(sigma_set(g, &twisted), sigma_set(g, t));
            prop_assert_eq!(system_type(&c, &twisted), system_type(&c, t));
        }
    }

    #[test]
    fn disjointness_survives_conjugating_one_entry(h in element(&h32().0.quotient.pc), i in 0usize..4) {
        let (q, g) = h32();
        let c = q.quotient.pc.collector();
        let (mut t1, t2) = paper_tuples("thm-main", Default::default(), &q.quotient.pc, &q.images).unwrap();
        let before = disjoint(g, &t1, &t2);
        t1[i] = c.conj(&t1[i], &h);
        prop_assert_eq!(disjoint(g, &t1, &t2), before);
    }

    #[test]
    fn type_ignores_order(perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let (q, _) = h32();
        let c = q.quotient.pc.collector();
        let (_, t2) = paper_tuples("thm-main", Default::default(), &q.quotient.pc, &q.images).unwrap();
        let shuffled: Vec<PcElement> = perm.iter().map(|&i| t2[i].clone()).collect();
        prop_assert_eq!(system_type(&c, &shuffled), system_type(&c, &t2));
    }
}

proptest! {
    #[test]
    fn smith_factors_form_a_divisibility_chain(rows in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-30i64..=30, c), r)
    })) {
        let m = IntMatrix::from_rows(&rows);
        let f = smith_normal_form(&m);
        for w in f.factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero(), "{:?}", f.factors);
        }
        prop_assert!(f.factors.iter().all(|d| d > &BigInt::zero()));
        prop_assert_eq!(f.factors.len() + f.free_rank, m.cols);
        // transposing keeps the invariant factors
        let t: Vec<Vec<i64>> = (0..m.cols).map(|c| (0..m.rows).map(|r| m.get(r, c)).collect()).collect();
        prop_assert_eq!(smith_normal_form(&IntMatrix::from_rows(&t)).factors, f.factors);
    }

    #[test]
    fn free_reduction_is_idempotent(w in word(4, 40)) {
        let r = w.reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.reduce(), r.clone());
        prop_assert_eq!(w.mul(&w.inverse()).reduce(), Word::empty());
        prop_assert!(w.cyclic_reduce().len() <= r.len());
    }

    #[test]
    fn index_ignores_relator_order_and_duplicates(perm in Just((0..26).collect::<Vec<usize>>()).prop_shuffle(), dup in 0usize..26, rot in 0usize..3) {
        let g = catalog::g();
        let mut rel: Vec<Word> = perm.iter().map(|&i| g.relators[i].clone()).collect();
        rel.push(g.relators[dup].rotate(rot));
        let p = Presentation::new(g.names.clone(), rel, Default::default()).unwrap();
        let h = SubgroupSpec::new("H", p.clone(), vec![Word::gen(0), Word::gen(1), Word::gen(2)]).unwrap();
        prop_assert_eq!(coset_enumerate(&p, &h, DEFAULT_MAX_COSETS).unwrap().index(), 3);
    }

    #[test]
    fn text_format_round_trip(rel in proptest::collection::vec(word(3, 8).prop_filter("nonempty", |w| !w.reduce().is_empty()), 1..5)) {
        let p = Presentation::new(Presentation::indexed_names("x", 3), rel, Default::default()).unwrap();
        match parse_presentation(&to_text(&p), "prop", Default::default()).unwrap() {
            Loaded::Presentation(back) => {
                prop_assert_eq!(back.names, p.names);
                let reduced: Vec<Word> = p.relators.iter().map(Word::reduce).collect();
                prop_assert_eq!(back.relators, reduced);
            }
            Loaded::Subgroup(_) => prop_assert!(false, "no sub lines were written"),
        }
    }
}
