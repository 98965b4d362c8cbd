//! Invariants over randomly relabelled corpus algebras, random subsets and
//! random words.

use proptest::prelude::*;

use mlat_core::algebra::{direct_product, ElementId, GroupTable, MlaTables, UncheckedMla};
use mlat_core::fixtures;
use mlat_core::format::{load_valid_algebra, store_algebra};
use mlat_core::isoclinism::{find_isoclinism, invert_witness, verify_isoclinism};
use mlat_core::morph::{are_isomorphic, find_isomorphism, fingerprint, is_isomorphism};
use mlat_core::structure::{closure_ideal, closure_subalgebra, quotient, SubSet};
use mlat_core::tensor::presentation::{free_reduce, inverse_word};
use mlat_core::tensor::{cyclic_decomposition, Letter};
use mlat_core::{validate_axioms, validate_axioms_parallel, FiniteMla, MlaMap};

fn corpus() -> Vec<FiniteMla> {
    fixtures::corpus_algebras()
}

/// Relabels `g` by a permutation fixing the identity.
fn relabel(g: &FiniteMla, perm: &[usize]) -> FiniteMla {
    let n = g.order();
    let mut inverse = vec![0; n];
    for (x, &p) in perm.iter().enumerate() {
        inverse[p] = x;
    }
    let table = |op: &dyn Fn(ElementId, ElementId) -> ElementId| -> Vec<Vec<u32>> {
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        perm[op(ElementId::new(inverse[a]), ElementId::new(inverse[b])).index()]
                            as u32
                    })
                    .collect()
            })
            .collect()
    };
    let mul = table(&|x, y| g.mul(x, y));
    let star: Vec<u32> = table(&|x, y| g.star(x, y)).into_iter().flatten().collect();
    let group = GroupTable::from_rows(&mul).unwrap();
    let tables = MlaTables::new(group, star).unwrap();
    UncheckedMla::new(format!("{}'", g.name()), tables, None)
        .unwrap()
        .into_validated()
        .unwrap()
}

fn algebra_and_perm() -> impl Strategy<Value = (FiniteMla, Vec<usize>)> {
    (0..corpus().len()).prop_flat_map(|i| {
        let g = corpus().swap_remove(i);
        let rest: Vec<usize> = (1..g.order()).collect();
        (Just(g), Just(rest).prop_shuffle()).prop_map(|(g, rest)| {
            let mut perm = vec![0];
            perm.extend(rest);
            (g, perm)
        })
    })
}

fn word() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0usize..3, any::<bool>()), 0..12).prop_map(|v| {
        v.into_iter()
            .map(|(g, inv)| if inv { Letter::inv(g) } else { Letter::gen(g) })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabelling_gives_an_isomorphic_algebra((g, perm) in algebra_and_perm()) {
        let h = relabel(&g, &perm);
        let map = MlaMap::new(perm.iter().map(|&p| ElementId::new(p)).collect());
        prop_assert!(is_isomorphism(&g, &h, &map));
        prop_assert_eq!(fingerprint(&g), fingerprint(&h));
        prop_assert!(find_isomorphism(&g, &h).is_some());
        let w = find_isoclinism(&g, &h).expect("isomorphic algebras are isoclinic");
        prop_assert!(verify_isoclinism(&g, &h, &w).is_ok());
    }

    #[test]
    fn isoclinism_is_symmetric(i in 0..corpus().len(), j in 0..corpus().len()) {
        let (a, b) = (&corpus()[i], &corpus()[j]);
        let forward = find_isoclinism(a, b);
        let backward = find_isoclinism(b, a);
        prop_assert_eq!(forward.is_some(), backward.is_some());
        if let Some(w) = forward {
            let inv = invert_witness(&w).expect("witness maps are bijections");
            prop_assert!(verify_isoclinism(b, a, &inv).is_ok());
        }
    }

    #[test]
    fn closures_are_idempotent((g, perm) in algebra_and_perm(), k in 1usize..4) {
        let seed: Vec<ElementId> = perm.iter().take(k).map(|&p| ElementId::new(p)).collect();
        let s = closure_subalgebra(&g, seed.clone());
        prop_assert!(s.is_subalgebra(&g));
        prop_assert_eq!(closure_subalgebra(&g, s.members().to_vec()), s.clone());
        let i = closure_ideal(&g, seed);
        prop_assert!(i.is_ideal(&g));
        prop_assert!(s.is_subset_of(&i));
        prop_assert_eq!(closure_ideal(&g, i.members().to_vec()), i.clone());
        let (q, proj) = quotient(&g, &i).unwrap();
        prop_assert_eq!(q.order() * i.len(), g.order());
        prop_assert_eq!(SubSet::new(g.order(), proj.kernel()), i);
    }

    #[test]
    fn file_round_trip_preserves_tables((g, perm) in algebra_and_perm()) {
        let h = relabel(&g, &perm);
        let back = load_valid_algebra(&store_algebra(&h)).unwrap();
        prop_assert_eq!(back.order(), h.order());
        for x in h.elements() {
            for y in h.elements() {
                prop_assert_eq!(back.mul(x, y), h.mul(x, y));
                prop_assert_eq!(back.star(x, y), h.star(x, y));
            }
        }
    }

    #[test]
    fn parallel_validation_agrees(i in 0..corpus().len(), x in 1u32..16, y in 1u32..16, v in 1u32..16) {
        let g = &corpus()[i];
        let n = g.order() as u32;
        let mut star: Vec<u32> = g.tables().star_rows().into_iter().flatten().collect();
        if n > 1 {
            // corrupt one off-identity entry
            let (x, y) = (x % (n - 1) + 1, y % (n - 1) + 1);
            star[(x * n + y) as usize] = v % n;
        }
        let t = MlaTables::new(g.group().clone(), star).unwrap();
        prop_assert_eq!(validate_axioms(&t), validate_axioms_parallel(&t));
    }

    #[test]
    fn free_reduction_is_idempotent_and_inverts(w in word()) {
        let r = free_reduce(&w);
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert!(r.windows(2).all(|p| p[0] != p[1].inverse()));
        prop_assert_eq!(inverse_word(&inverse_word(&w)), w.clone());
        let mut both = w.clone();
        both.extend(inverse_word(&w));
        prop_assert!(free_reduce(&both).is_empty());
    }

    #[test]
    fn cyclic_decomposition_of_products(a in 1usize..7, b in 1usize..7) {
        let g = direct_product(&fixtures::cyclic_trivial(a), &fixtures::cyclic_trivial(b), 64).unwrap();
        let d = cyclic_decomposition(g.group()).unwrap();
        prop_assert_eq!(d.orders.iter().product::<u64>(), (a * b) as u64);
        prop_assert!(d.orders.windows(2).all(|w| w[1] % w[0] == 0));
        let gcd = (1..=a.min(b)).rev().find(|k| a % k == 0 && b % k == 0).unwrap();
        prop_assert_eq!(are_isomorphic(&g, &fixtures::cyclic_trivial(a * b)), gcd == 1);
    }
}
