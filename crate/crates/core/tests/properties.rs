mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use purecycle::bijection::{check_label_ranges, is_phi_image, phi, phi_labeled, psi, psi_on, unique_labeling};
use purecycle::factorization::{count_bruteforce, enumerate_factorizations};
use purecycle::graph::{graph_of, graph_of_default};
use purecycle::mnr::{enumerate_mnr, mnr_decode, mnr_encode};
use purecycle::{json, Cycle, LabeledMnr, MultiNodedRootedTree, Permutation, PruferMatrix, SVertexSet};

fn perm(d: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=d).collect::<Vec<_>>()).prop_shuffle()
}

fn perm_pair() -> impl Strategy<Value = (Vec<usize>, Vec<usize>, Vec<usize>)> {
    (1usize..9).prop_flat_map(|d| (perm(d), perm(d), perm(d)))
}

/// A random `d`-cycle on `1..=d`.
fn long_cycle(d: usize) -> impl Strategy<Value = Cycle> {
    perm(d).prop_map(move |order| Cycle::new(d, order).unwrap())
}

/// A genus-zero type for `d` together with `d`.
fn genus_zero_type(max_d: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    (2..=max_d).prop_flat_map(|d| {
        let types = common::genus_zero(d);
        (Just(d), proptest::sample::select(types))
    })
}

/// A random member of `H` for random vertex data.
fn prufer_matrix() -> impl Strategy<Value = PruferMatrix> {
    proptest::collection::vec(1usize..4, 2..7).prop_flat_map(|vd| {
        let n = vd.len() - 1;
        let nodes: Vec<(usize, usize)> = vd
            .iter()
            .enumerate()
            .flat_map(|(w, &f)| (1..=f).map(move |b| (w, b)))
            .collect();
        let cols = proptest::collection::vec(proptest::sample::select(nodes), n - 1);
        (Just(vd.clone()), cols, 1..=vd[0]).prop_map(move |(vd, cols, last)| {
            let s: Vec<i64> = (1..=n as i64).map(|x| 3 * x + 1).collect();
            let value = |w: usize| if w == 0 { 0 } else { s[w - 1] };
            let mut top: Vec<i64> = cols.iter().map(|&(w, _)| value(w)).collect();
            let mut bottom: Vec<usize> = cols.iter().map(|&(_, b)| b).collect();
            top.push(0);
            bottom.push(last);
            PruferMatrix::new(s, vd, top, bottom).unwrap()
        })
    })
}

/// A random tree whose vertex data is `(1, e₁ − 1, …)`, i.e. the image side of
/// a factorization type.
fn factorization_tree(max_d: usize) -> impl Strategy<Value = (usize, MultiNodedRootedTree)> {
    genus_zero_type(max_d).prop_flat_map(|(d, e)| {
        let vd: Vec<usize> = std::iter::once(1).chain(e.iter().map(|k| k - 1)).collect();
        let n = e.len();
        let nodes: Vec<(usize, usize)> = vd
            .iter()
            .enumerate()
            .flat_map(|(w, &f)| (1..=f).map(move |b| (w, b)))
            .collect();
        proptest::collection::vec(proptest::sample::select(nodes), n - 1).prop_map(move |cols| {
            let s: Vec<i64> = (1..=n).map(|j| (d + j) as i64).collect();
            let value = |w: usize| if w == 0 { 0 } else { s[w - 1] };
            let mut top: Vec<i64> = cols.iter().map(|&(w, _)| value(w)).collect();
            let mut bottom: Vec<usize> = cols.iter().map(|&(_, b)| b).collect();
            top.push(0);
            bottom.push(1);
            let h = PruferMatrix::new(s, vd.clone(), top, bottom).unwrap();
            (d, mnr_decode(&h).unwrap())
        })
    })
}

proptest! {
    #[test]
    fn composition_matches_the_oracle((a, b, c) in perm_pair()) {
        let pa = Permutation::from_images(a.clone()).unwrap();
        let pb = Permutation::from_images(b.clone()).unwrap();
        let pc = Permutation::from_images(c).unwrap();
        let zero = |v: &[usize]| v.iter().map(|x| x - 1).collect::<Vec<_>>();
        let want: Vec<usize> = common::mul(&zero(&a), &zero(&b)).iter().map(|x| x + 1).collect();
        let ab = pa.compose(&pb).unwrap();
        prop_assert_eq!(ab.images(), &want[..]);
        prop_assert_eq!(ab.compose(&pc).unwrap(), pa.compose(&pb.compose(&pc).unwrap()).unwrap());
        prop_assert!(pa.compose(&pa.inverse()).unwrap().is_identity());
    }

    #[test]
    fn cycle_decomposition_round_trips((a, _, _) in perm_pair()) {
        let p = Permutation::from_images(a).unwrap();
        let d = p.degree();
        prop_assert_eq!(Permutation::from_cycles(d, &p.cycles()).unwrap(), p.clone());
        prop_assert_eq!(Permutation::parse(d, &p.to_string()).unwrap(), p.clone());
        prop_assert_eq!(p.cycle_type().total(), d);
        prop_assert_eq!(p.index(), d - p.num_cycles());
        for c in p.cycles() {
            prop_assert_eq!(c.elements()[0], *c.elements().iter().min().unwrap());
        }
    }

    #[test]
    fn count_does_not_depend_on_the_long_cycle(
        (d, e, tau) in genus_zero_type(5).prop_flat_map(|(d, e)| (Just(d), Just(e), long_cycle(d)))
    ) {
        let got = count_bruteforce(&tau, &e).unwrap();
        prop_assert_eq!(got, (d as u64).pow(e.len() as u32 - 1));
    }

    #[test]
    fn factorizations_of_any_long_cycle_round_trip(
        (e, tau, pick) in genus_zero_type(6).prop_flat_map(|(d, e)| (Just(e), long_cycle(d), any::<prop::sample::Index>()))
    ) {
        let all: Vec<_> = enumerate_factorizations(&tau, &e).unwrap().collect();
        let f = pick.get(&all).clone();
        prop_assert!(f.validate_type(&e));
        let g = graph_of_default(&f).unwrap();
        prop_assert!(g.is_factorization_graph());
        prop_assert_eq!(g.factorization_of().unwrap(), f.clone());
        let lm = phi_labeled(&g).unwrap();
        prop_assert!(check_label_ranges(&lm).is_some());
        prop_assert_eq!(&unique_labeling(lm.mnr()).unwrap().0, &lm);
        prop_assert_eq!(psi_on(&lm, &tau).unwrap(), g.clone());
        prop_assert_eq!(json::factorization_from_json(&json::factorization_to_json(&f)).unwrap(), f);
        prop_assert_eq!(json::graph_from_json(&json::graph_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn prufer_codec_is_bijective(h in prufer_matrix()) {
        let m = mnr_decode(&h).unwrap();
        prop_assert_eq!(&mnr_encode(&m).unwrap(), &h);
        prop_assert_eq!(json::mnr_from_json(&json::mnr_to_json(&m)).unwrap(), m.clone());
        prop_assert_eq!(json::prufer_from_json(&json::prufer_to_json(&h)).unwrap(), h);
        // every non-root vertex hangs from an existing node
        for i in 1..=m.n() {
            let (p, b) = m.attachment(i).unwrap();
            prop_assert!(b >= 1 && b <= m.vertex_data()[p]);
        }
    }

    #[test]
    fn random_trees_round_trip_through_graphs((d, m) in factorization_tree(8)) {
        let (lm, _) = unique_labeling(&m).unwrap();
        prop_assert!(check_label_ranges(&lm).is_some());
        prop_assert!(is_phi_image(&lm));
        let g = psi(&lm).unwrap();
        prop_assert_eq!(g.d(), d);
        prop_assert!(g.is_factorization_graph());
        prop_assert_eq!(phi(&g).unwrap(), m);
        let (back, tau) = json::labeled_from_json(&json::labeled_to_json(&lm, None)).unwrap();
        prop_assert_eq!(back, lm);
        prop_assert!(tau.is_none());
    }
}

/// Every labeling of every tree for small `d`: the interval test accepts
/// exactly the images of factorization graphs, and each tree has one.
#[test]
fn label_ranges_agree_with_image_membership() {
    let mut trees = 0;
    for d in 2..=5 {
        for e in common::genus_zero(d) {
            let s: Vec<i64> = (1..=e.len()).map(|j| (d + j) as i64).collect();
            let vd: Vec<usize> = std::iter::once(1).chain(e.iter().map(|k| k - 1)).collect();
            for (t, m) in enumerate_mnr(&s, &vd).unwrap().enumerate() {
                // all trees up to d = 4, every third one at d = 5
                if d == 5 && t % 3 != 0 {
                    continue;
                }
                let keys: Vec<(i64, usize)> = m
                    .vertex_data()
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &f)| {
                        let v = if i == 0 { 0 } else { s[i - 1] };
                        (1..=f).map(move |p| (v, p))
                    })
                    .collect();
                let mut accepted = Vec::new();
                for labels in common::all_perms(d) {
                    let map: BTreeMap<(i64, usize), usize> =
                        keys.iter().zip(&labels).map(|(&k, &l)| (k, l + 1)).collect();
                    let lm = LabeledMnr::from_map(m.clone(), &map).unwrap();
                    let by_ranges = check_label_ranges(&lm).is_some();
                    assert_eq!(by_ranges, is_phi_image(&lm), "d={d} {map:?}");
                    if by_ranges {
                        accepted.push(lm);
                    }
                }
                assert_eq!(accepted.len(), 1, "d={d} {m:?}");
                assert_eq!(accepted[0], unique_labeling(&m).unwrap().0);
                trees += 1;
            }
        }
    }
    assert!(trees > 100);
}

/// Graphs built with non-default S-vertex values behave the same.
#[test]
fn shifted_s_vertices() {
    let tau = Cycle::standard(4);
    for f in enumerate_factorizations(&tau, &[2, 3]).unwrap() {
        let s = SVertexSet::new(vec![-7, 40], 4).unwrap();
        let g = graph_of(&f, &s).unwrap();
        assert!(g.is_factorization_graph());
        let lm = phi_labeled(&g).unwrap();
        assert_eq!(lm.mnr().s(), &[-7, 40]);
        assert_eq!(psi(&lm).unwrap(), g);
    }
}

/// The count is the same for every long cycle, not only `(1 2 … d)`.
#[test]
fn count_is_independent_of_tau_exhaustively() {
    for d in 2..=5 {
        for order in common::all_perms(d).into_iter().filter(|p| p[0] == 0) {
            let tau = Cycle::new(d, order.iter().map(|x| x + 1).collect()).unwrap();
            for e in common::genus_zero(d) {
                assert_eq!(count_bruteforce(&tau, &e).unwrap(), (d as u64).pow(e.len() as u32 - 1), "{tau} {e:?}");
            }
        }
    }
}
