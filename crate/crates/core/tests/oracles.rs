//! Library results against independent brute-force oracles that work only
//! from the multiplication and star tables.

use mlat_core::algebra::ElementId;
use mlat_core::fixtures;
use mlat_core::isoclinism::{find_isoclinism, make_extension, pullback_extension, stem_criterion};
use mlat_core::morph::{find_isomorphisms, fingerprint};
use mlat_core::structure::{
    enumerate_ideals, group_center, joint_center, lie_center, m_derived, SubSet,
};
use mlat_core::tensor::{
    check_defining_relations, tensor_square, MethodChoice, TensorMethod, TensorOptions,
};
use mlat_core::FiniteMla;

fn e(i: usize) -> ElementId {
    ElementId::new(i)
}

/// All permutations of `items`, by Heap's algorithm.
fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut a = items.to_vec();
    let mut out = vec![a.clone()];
    let n = a.len();
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn preserves(g: &FiniteMla, h: &FiniteMla, f: &[usize]) -> bool {
    let n = g.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            f[g.mul(e(x), e(y)).index()] == h.mul(e(f[x]), e(f[y])).index()
                && f[g.star(e(x), e(y)).index()] == h.star(e(f[x]), e(f[y])).index()
        })
    })
}

fn automorphism_count(g: &FiniteMla) -> usize {
    let rest: Vec<usize> = (1..g.order()).collect();
    permutations(&rest)
        .into_iter()
        .filter(|p| {
            let mut f = vec![0];
            f.extend(p);
            preserves(g, g, &f)
        })
        .count()
}

fn oracle_ideal(g: &FiniteMla, seed: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    for &s in seed {
        inside[s] = true;
    }
    loop {
        let members: Vec<usize> = (0..n).filter(|&i| inside[i]).collect();
        let mut grew = false;
        for &a in &members {
            for x in 0..n {
                let new = [
                    if inside[x] {
                        g.mul(e(a), e(x)).index()
                    } else {
                        0
                    },
                    g.conj(e(x), e(a)).index(),
                    g.star(e(x), e(a)).index(),
                    g.inv(e(a)).index(),
                ];
                for v in new {
                    if !inside[v] {
                        inside[v] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return (0..n).filter(|&i| inside[i]).collect();
        }
    }
}

fn oracle_joint_center(g: &FiniteMla) -> Vec<usize> {
    let n = g.order();
    (0..n)
        .filter(|&x| {
            (0..n)
                .all(|y| g.mul(e(x), e(y)) == g.mul(e(y), e(x)) && g.star(e(x), e(y)).is_identity())
        })
        .collect()
}

fn oracle_m_derived(g: &FiniteMla) -> Vec<usize> {
    let n = g.order();
    let mut seed = Vec::new();
    for x in 0..n {
        for y in 0..n {
            seed.push(g.comm(e(x), e(y)).index());
            seed.push(g.star(e(x), e(y)).index());
        }
    }
    oracle_ideal(g, &seed)
}

/// Brute-force isoclinism test: bijections of central cosets and of derived
/// ideals, both structure preserving, with commuting squares.
fn oracle_isoclinic(g1: &FiniteMla, g2: &FiniteMla) -> bool {
    let coset = |g: &FiniteMla| -> (Vec<usize>, Vec<usize>) {
        let z = oracle_joint_center(g);
        let mut class = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if class[x] == usize::MAX {
                for &c in &z {
                    class[g.mul(e(x), e(c)).index()] = reps.len();
                }
                reps.push(x);
            }
        }
        (class, reps)
    };
    let (c1, r1) = coset(g1);
    let (c2, r2) = coset(g2);
    let (d1, d2) = (oracle_m_derived(g1), oracle_m_derived(g2));
    if r1.len() != r2.len() || d1.len() != d2.len() {
        return false;
    }
    let q = r1.len();
    for lambda in permutations(&(0..q).collect::<Vec<_>>()) {
        let hom = (0..q).all(|a| {
            (0..q).all(|b| {
                let ab = c1[g1.mul(e(r1[a]), e(r1[b])).index()];
                lambda[ab] == c2[g2.mul(e(r2[lambda[a]]), e(r2[lambda[b]])).index()]
                    && lambda[c1[g1.star(e(r1[a]), e(r1[b])).index()]]
                        == c2[g2.star(e(r2[lambda[a]]), e(r2[lambda[b]])).index()]
            })
        });
        if !hom {
            continue;
        }
        for mu in permutations(&(0..d1.len()).collect::<Vec<_>>()) {
            // μ sends d1[i] to d2[mu[i]]
            let image = |x: usize| d2[mu[d1.iter().position(|&d| d == x).expect("in derived")]];
            let iso = d1.iter().all(|&x| {
                d1.iter().all(|&y| {
                    image(g1.mul(e(x), e(y)).index()) == g2.mul(e(image(x)), e(image(y))).index()
                        && image(g1.star(e(x), e(y)).index())
                            == g2.star(e(image(x)), e(image(y))).index()
                })
            });
            if !iso {
                continue;
            }
            let squares = (0..q).all(|a| {
                (0..q).all(|b| {
                    let (x, y) = (e(r1[a]), e(r1[b]));
                    let (u, v) = (e(r2[lambda[a]]), e(r2[lambda[b]]));
                    image(g1.comm(x, y).index()) == g2.comm(u, v).index()
                        && image(g1.star(x, y).index()) == g2.star(u, v).index()
                })
            });
            if squares {
                return true;
            }
        }
    }
    false
}

#[test]
fn centres_match_their_definitions() {
    for g in fixtures::corpus_algebras() {
        let n = g.order();
        let z: Vec<usize> = (0..n)
            .filter(|&x| (0..n).all(|y| g.mul(e(x), e(y)) == g.mul(e(y), e(x))))
            .collect();
        let lz: Vec<usize> = (0..n)
            .filter(|&x| (0..n).all(|y| g.star(e(x), e(y)).is_identity()))
            .collect();
        let as_ids = |v: &[usize]| v.iter().map(|&i| e(i)).collect::<Vec<_>>();
        assert_eq!(group_center(&g).members(), as_ids(&z), "{}", g.name());
        assert_eq!(lie_center(&g).members(), as_ids(&lz), "{}", g.name());
        assert_eq!(
            joint_center(&g).members(),
            as_ids(&oracle_joint_center(&g)),
            "{}",
            g.name()
        );
        assert_eq!(
            joint_center(&g),
            group_center(&g).intersection(&lie_center(&g))
        );
        assert_eq!(
            m_derived(&g).members(),
            as_ids(&oracle_m_derived(&g)),
            "{}",
            g.name()
        );
    }
}

#[test]
fn ideals_match_subset_enumeration() {
    for g in fixtures::corpus_algebras()
        .into_iter()
        .filter(|g| g.order() <= 8)
    {
        let n = g.order();
        let mut expected: Vec<SubSet> = (0u32..1 << n)
            .filter(|mask| mask & 1 == 1)
            .map(|mask| SubSet::new(n, (0..n).filter(|i| mask >> i & 1 == 1).map(e)))
            .filter(|s| {
                oracle_ideal(
                    &g,
                    &s.members().iter().map(|x| x.index()).collect::<Vec<_>>(),
                )
                .len()
                    == s.len()
            })
            .collect();
        expected.sort_by_key(|s| (s.len(), s.members().to_vec()));
        assert_eq!(enumerate_ideals(&g).unwrap(), expected, "{}", g.name());
    }
}

#[test]
fn automorphism_counts_match_brute_force() {
    for g in fixtures::corpus_algebras()
        .into_iter()
        .filter(|g| g.order() <= 8)
    {
        let found = find_isomorphisms(&g, &g, None);
        assert_eq!(found.len(), automorphism_count(&g), "{}", g.name());
        for m in &found {
            assert!(preserves(
                &g,
                &g,
                &m.image().iter().map(|x| x.index()).collect::<Vec<_>>()
            ));
        }
    }
}

#[test]
fn fingerprint_inequality_excludes_isomorphism() {
    let corpus = fixtures::corpus_algebras();
    for a in &corpus {
        for b in &corpus {
            if fingerprint(a) != fingerprint(b) {
                assert!(
                    find_isomorphisms(a, b, Some(1)).is_empty(),
                    "{} {}",
                    a.name(),
                    b.name()
                );
            }
        }
    }
}

#[test]
fn isoclinism_matches_brute_force() {
    let small: Vec<FiniteMla> = fixtures::corpus_algebras()
        .into_iter()
        .filter(|g| g.order() <= 8)
        .collect();
    for a in &small {
        for b in &small {
            assert_eq!(
                find_isoclinism(a, b).is_some(),
                oracle_isoclinic(a, b),
                "{} vs {}",
                a.name(),
                b.name()
            );
        }
    }
}

#[test]
fn cyclic_tensor_squares() {
    let snf = TensorOptions::default().with_method(MethodChoice::Snf);
    let enumeration = TensorOptions::default().with_method(MethodChoice::Enumeration);
    for n in 2..=9 {
        let c = fixtures::cyclic_trivial(n);
        let t = tensor_square(&c, &snf).unwrap();
        assert_eq!(t.method, TensorMethod::Snf);
        // cyclic of order n: some element has order n
        assert_eq!(t.algebra.order(), n);
        assert!(t
            .algebra
            .elements()
            .any(|x| t.algebra.element_order(x) == n));
        // the generator symbol 1⊗1 generates
        assert_eq!(t.algebra.element_order(t.symbol(e(1), e(1))), n);
        check_defining_relations(&c, &t).unwrap();
        if n <= 4 {
            let u = tensor_square(&c, &enumeration).unwrap();
            assert_eq!(u.method, TensorMethod::Enumeration);
            assert!(mlat_core::morph::are_isomorphic(&t.algebra, &u.algebra));
            check_defining_relations(&c, &u).unwrap();
        }
    }
}

#[test]
fn klein_tensor_square_is_elementary_of_order_16() {
    let v4 = fixtures::klein_trivial();
    for method in [MethodChoice::Snf, MethodChoice::Enumeration] {
        let t = tensor_square(&v4, &TensorOptions::default().with_method(method)).unwrap();
        assert_eq!(t.algebra.order(), 16);
        assert!(t
            .algebra
            .elements()
            .all(|x| t.algebra.element_order(x) <= 2));
        check_defining_relations(&v4, &t).unwrap();
    }
}

#[test]
fn methods_agree_on_small_abelian_corpus() {
    for g in fixtures::corpus_algebras()
        .into_iter()
        .filter(|g| g.order() <= 9 && g.is_abelian() && g.star_is_trivial())
    {
        let a =
            tensor_square(&g, &TensorOptions::default().with_method(MethodChoice::Snf)).unwrap();
        let b = tensor_square(
            &g,
            &TensorOptions::default().with_method(MethodChoice::Enumeration),
        )
        .unwrap();
        assert!(
            mlat_core::morph::are_isomorphic(&a.algebra, &b.algebra),
            "{}",
            g.name()
        );
    }
}

#[test]
fn defining_relations_hold_for_enumerated_squares() {
    for g in fixtures::corpus_algebras()
        .into_iter()
        .filter(|g| g.order() <= 8)
    {
        let t = tensor_square(&g, &TensorOptions::default()).unwrap();
        check_defining_relations(&g, &t).unwrap_or_else(|f| panic!("{}: {f:?}", g.name()));
        for x in g.elements() {
            assert!(t.symbol(x, e(0)).is_identity() && t.symbol(e(0), x).is_identity());
        }
    }
}

#[test]
fn stem_criterion_matches_subset_oracle() {
    for g in fixtures::corpus_algebras()
        .into_iter()
        .filter(|g| g.order() <= 8)
    {
        let z = joint_center(&g);
        let derived = oracle_m_derived(&g);
        for h in enumerate_ideals(&g)
            .unwrap()
            .into_iter()
            .filter(|h| h.is_subset_of(&z))
        {
            let ext = make_extension(&g, h.members().to_vec()).unwrap();
            let c = stem_criterion(&ext, 64).unwrap();
            let stem = h.members().iter().all(|x| derived.contains(&x.index()));
            assert_eq!(c.is_stem, stem);
            // every subgroup of a central kernel is an ideal: test all subsets
            let members: Vec<usize> = h.members().iter().map(|x| x.index()).collect();
            let mut missing = false;
            for mask in 1u32..1 << members.len() {
                let s: Vec<usize> = (0..members.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| members[i])
                    .collect();
                if !s.contains(&0) || oracle_ideal(&g, &s).len() != s.len() || s.len() == 1 {
                    continue;
                }
                if s.iter().all(|x| *x == 0 || !derived.contains(x)) {
                    missing = true;
                }
            }
            assert_eq!(c.holds, !missing, "{} {h}", g.name());
        }
    }
}

#[test]
fn pullback_order_counts_matching_pairs() {
    let d4 = make_extension(&fixtures::dihedral_trivial(4), [e(0), e(2)]).unwrap();
    let q8 = make_extension(&fixtures::quaternion_trivial(), [e(0), e(2)]).unwrap();
    let nu = mlat_core::morph::find_isomorphism(&d4.quotient, &q8.quotient).unwrap();
    let pb = pullback_extension(&d4, &q8, &nu).unwrap();
    let count = (0..8)
        .flat_map(|a| (0..8).map(move |b| (a, b)))
        .filter(|&(a, b)| nu.apply(d4.proj.apply(e(a))) == q8.proj.apply(e(b)))
        .count();
    assert_eq!(pb.extension.total.order(), count);
    assert_eq!(count, 16);
    assert!(pb.kernel_matches);
    assert_eq!(pb.extension.kernel.len(), 4);
    assert_eq!(pb.extension.quotient.order(), 4);
}
