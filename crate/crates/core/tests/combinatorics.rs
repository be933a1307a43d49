//! Properties of patterns, hosts, signed counts and the classifier.

use std::collections::HashSet;

use num::{BigInt, Zero};
use proptest::prelude::*;
use toursid::classify::{classify_cycle, classify_path, Verdict};
use toursid::hom::hom_generic;
use toursid::pattern::alternating_cycle;
use toursid::signed::{path_counts, path_window_count, signed_count, walk_fractions};
use toursid::spectral::{eigenvalues, expand_path, Monomial};
use toursid::tournament::{enumerate_tournaments, pair_count, random_rational_skew, random_skew};
use toursid::{Digraph, Orientation, OrientedCycle, Pattern, Rational, Scalar, Tournament, WeightedTournament};

fn orientation(max_e: usize) -> impl Strategy<Value = Orientation> {
    (1..=max_e).prop_flat_map(|e| (Just(e), 0u64..1 << e)).prop_map(|(e, bits)| Orientation::from_bits(e, bits))
}

fn directed_path(edges: usize) -> Digraph {
    Orientation::directed(edges).to_digraph()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orientation_text_round_trip(text in "[<>RL]{1,30}") {
        let o = Orientation::parse(&text).unwrap();
        let canonical: String = text.chars().map(|c| match c { 'R' => '>', 'L' => '<', c => c }).collect();
        prop_assert_eq!(o.to_string(), canonical.clone());
        prop_assert_eq!(Orientation::parse(&o.to_string()).unwrap(), o.clone());
        prop_assert_eq!(Pattern::parse(&canonical).unwrap(), Pattern::Path(o));
    }

    #[test]
    fn digraph_text_round_trip(o in orientation(12), k in 1usize..4) {
        let d = o.to_digraph().subdivide(k).unwrap();
        prop_assert_eq!(Digraph::parse(&d.to_text()).unwrap(), d);
    }

    #[test]
    fn subdivision_sizes(o in orientation(10), k in 1usize..5) {
        let d = o.to_digraph();
        let s = d.subdivide(k).unwrap();
        prop_assert_eq!(s.v(), d.v() + d.e() * (k - 1));
        prop_assert_eq!(s.e(), d.e() * k);
    }

    #[test]
    fn alternating_cycle_flips(l in 2usize..20) {
        let c = alternating_cycle(2 * l).unwrap();
        prop_assert_eq!(c.flips(), l);
        prop_assert_eq!(c.len(), 2 * l);
    }

    #[test]
    fn weighted_rows_complement(n in 1usize..7, bits in any::<u64>(), seed in any::<u64>()) {
        let t = Tournament::from_upper_bits(n, bits & ((1u64 << pair_count(n)) - 1));
        let w = toursid::tournament::with_half_loops(&t);
        let b = random_rational_skew(n, 10, seed).to_weighted().unwrap();
        for host in [&w, &b] {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        prop_assert_eq!(host.get(i, j).clone() + host.get(j, i).clone(), Rational::from_usize(1));
                    }
                }
            }
            let skew = host.skew_decompose().unwrap();
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(skew.get(i, j).clone(), -skew.get(j, i).clone());
                }
            }
        }
    }

    #[test]
    fn cut_norm_sandwich(n in 2usize..=12, seed in any::<u64>()) {
        let b = random_skew(n, 0.5, seed);
        let cut = b.cutnorm_bruteforce().unwrap();
        let lmax = eigenvalues(&b).unwrap().lmax;
        let nf = n as f64;
        let tol = 1e-9 * nf;
        prop_assert!(nf * cut <= lmax + tol);
        prop_assert!(lmax <= nf * (2.0 * cut).sqrt() + tol);
    }

    #[test]
    fn p3_coefficient_is_scaled_wedge_count(o in orientation(12)) {
        let p = expand_path(&o).unwrap();
        let (e, v) = (o.edges(), o.vertices() as u32);
        let coeff = p.coefficient(&Monomial::new(v.saturating_sub(3), vec![2]));
        let want = if e >= 2 {
            Rational::new(BigInt::from(path_counts(&o).c_p3), BigInt::from(1u64 << (e - 2)))
        } else {
            Rational::zero()
        };
        prop_assert_eq!(coeff, want);
    }

    #[test]
    fn classification_is_deterministic(o in orientation(16)) {
        let a = classify_path(&o, true).unwrap();
        let b = classify_path(&o, true).unwrap();
        prop_assert_eq!(&a, &b);
        let r = classify_path(&o.reversed(), true).unwrap();
        prop_assert_eq!((a.verdict, a.rule), (r.verdict, r.rule));
    }
}

#[test]
fn enumeration_counts_distinct() {
    for n in 1..=6 {
        let all: Vec<Tournament> = enumerate_tournaments(n).unwrap().collect();
        let distinct: HashSet<String> = all.iter().map(Tournament::to_text).collect();
        assert_eq!(all.len(), 1usize << pair_count(n));
        assert_eq!(distinct.len(), all.len());
    }
}

#[test]
fn windows_match_generic_count() {
    let p3 = directed_path(2);
    let patterns = [
        (1usize, directed_path(2)),
        (2, directed_path(4)),
        (3, directed_path(6)),
        (4, directed_path(8)),
    ];
    for e in 1..=10 {
        for o in Orientation::all(e) {
            let d = o.to_digraph();
            for (k, q) in &patterns {
                assert_eq!(path_window_count(o.dirs(), *k), signed_count(q, &d).unwrap(), "{o} k={k}");
            }
            assert_eq!(path_counts(&o).c_2p3, signed_count(&p3.disjoint_union(&p3), &d).unwrap(), "{o}");
        }
    }
}

#[test]
fn wedge_count_is_a_walk() {
    for e in 2..=13 {
        let mut hist = [0u64; 3];
        for o in Orientation::all(e) {
            hist[(path_counts(&o).c_p3.signum() + 1) as usize] += 1;
        }
        let w = walk_fractions(e - 1).unwrap();
        let total = Rational::from_usize(1 << e);
        assert_eq!(Rational::from_usize(hist[1] as usize) / total.clone(), w.p_zero);
        assert_eq!(Rational::from_usize(hist[2] as usize) / total.clone(), w.p_pos);
        assert_eq!(Rational::from_usize(hist[0] as usize) / total, w.p_neg);
    }
}

#[test]
fn p5_never_cancels_2p3_when_v_is_2_mod_4() {
    for e in [5usize, 9, 13] {
        for o in Orientation::all(e) {
            let c = path_counts(&o);
            if c.c_p3 == 0 {
                assert_ne!(c.c_p5, -c.c_2p3, "{o}");
            }
        }
    }
}

#[test]
fn odd_walks_split_evenly_between_lts_and_ltas() {
    for e in (2..=12).step_by(2) {
        let (mut lts, mut ltas) = (0u64, 0u64);
        for o in Orientation::all(e) {
            match classify_path(&o, false).unwrap().verdict {
                Verdict::Lts => lts += 1,
                Verdict::Ltas => ltas += 1,
                v => panic!("{o}: {v}"),
            }
        }
        assert_eq!((lts, ltas), (1 << (e - 1), 1 << (e - 1)), "e={e}");
    }
}

#[test]
fn cycle_classification_is_deterministic() {
    for l in [5usize, 6, 7, 9, 10] {
        for o in Orientation::all(l) {
            let c = OrientedCycle::new(o).unwrap();
            let a = classify_cycle(&c, true).unwrap();
            assert_eq!(a, classify_cycle(&c, true).unwrap());
        }
    }
}

#[test]
fn impartial_single_arc() {
    let arc = Digraph::single_arc();
    for n in 1..=5 {
        for t in enumerate_tournaments(n).unwrap() {
            let w: WeightedTournament<Rational> = toursid::tournament::with_half_loops(&t);
            let h = hom_generic(&arc, &w).unwrap();
            assert_eq!(h.raw, Rational::new(BigInt::from(n * n), BigInt::from(2)));
        }
    }
}
