mod support;

use loopcheck::congruence::{
    congruence_closure, derived_series_loop, smallest_abelian_group_congruence,
    smallest_group_congruence, Congruence,
};
use loopcheck::group::{cyclic, dihedral, symmetric, DEFAULT_SUBGROUP_ENUM_CAP};
use loopcheck::transversal::CosetSpace;
use loopcheck::RightLoop;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::*;

fn labels(c: &Congruence) -> Vec<usize> {
    normalize(&(0..c.order()).map(|x| c.class_of(x)).collect::<Vec<_>>())
}

fn random_pairs(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let k = rng.gen_range(0..=3);
    (0..k)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect()
}

#[test]
fn set_partition_counts_are_bell_numbers() {
    let bell = [1, 1, 2, 5, 15, 52, 203];
    for (n, b) in bell.iter().enumerate() {
        assert_eq!(set_partitions(n).len(), *b);
    }
}

#[test]
fn closure_matches_partition_scan_on_random_loops() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=5 {
        for _ in 0..15 {
            let s = random_right_loop(n, &mut rng);
            let pairs = random_pairs(n, &mut rng);
            let got = congruence_closure(&s, pairs.clone());
            got.check(&s).unwrap();
            assert_eq!(
                labels(&got),
                minimal_congruence_oracle(&s, &pairs),
                "{:?} {pairs:?}",
                s.rows()
            );
        }
    }
}

#[test]
fn every_scanned_congruence_passes_check() {
    for (name, s) in corpus().into_iter().filter(|(_, s)| s.order() <= 5) {
        for p in set_partitions(s.order()) {
            let classes: Vec<Vec<usize>> = (0..=*p.iter().max().unwrap())
                .map(|c| (0..s.order()).filter(|&x| p[x] == c).collect())
                .collect();
            let lib = Congruence::from_partition(&s, &classes);
            assert_eq!(lib.is_ok(), is_congruence_literal(&s, &p), "{name} {p:?}");
        }
    }
}

#[test]
fn group_congruences_are_least() {
    for (name, s) in corpus() {
        let n = s.order();
        let group_pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|y| (0..n).flat_map(move |z| (0..n).map(move |x| (x, y, z))))
            .map(|(x, y, z)| (x, s.f_s_at(x, y, z)))
            .collect();
        assert_eq!(
            labels(&smallest_group_congruence(&s)),
            minimal_congruence_oracle(&s, &group_pairs),
            "{name}"
        );
        let mut ab = group_pairs.clone();
        ab.extend(
            (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .map(|(x, y)| (s.mul(x, y), s.mul(y, x))),
        );
        assert_eq!(
            labels(&smallest_abelian_group_congruence(&s)),
            minimal_congruence_oracle(&s, &ab),
            "{name}"
        );
    }
}

fn series_elements(s: &RightLoop) -> Vec<Vec<usize>> {
    derived_series_loop(s)
        .iter()
        .map(|t| t.elements().to_vec())
        .collect()
}

#[test]
fn derived_series_matches_partition_scan() {
    for (name, s) in corpus() {
        assert_eq!(series_elements(&s), derived_series_bruteforce(&s), "{name}");
    }
    for g in [
        symmetric(3).unwrap(),
        dihedral(4).unwrap(),
        cyclic(6).unwrap(),
    ] {
        for h in g.all_subgroups(DEFAULT_SUBGROUP_ENUM_CAP).unwrap() {
            let space = CosetSpace::new(&g, &h);
            for t in space.transversals(1000).unwrap() {
                let s = space.induced_loop(&t).right_loop().clone();
                assert_eq!(
                    series_elements(&s),
                    derived_series_bruteforce(&s),
                    "{:?}",
                    t.reps()
                );
            }
        }
    }
}

#[test]
fn group_validation_matches_axiom_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=5 {
        for _ in 0..200 {
            let s = random_right_loop(n, &mut rng);
            let rows = s.rows();
            let lib = loopcheck::FiniteGroup::from_table(&rows).err();
            assert_eq!(lib, first_group_failure(&rows), "{rows:?}");
        }
    }
    // a Latin square that is not associative is rejected as such
    let rows = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
    assert!(loopcheck::FiniteGroup::from_table(&rows).is_err());
}
