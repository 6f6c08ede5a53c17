//! Brute-force oracles shared by the integration tests. None of these use
//! the library's algorithms beyond reading tables.
#![allow(dead_code, clippy::needless_range_loop)]

use std::fs;
use std::path::PathBuf;

use loopcheck::cay::parse_loop;
use loopcheck::{Error, RightLoop};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
}

/// Every `.cay` loop in the test corpus, sorted by file name.
pub fn corpus() -> Vec<(String, RightLoop)> {
    let mut paths: Vec<PathBuf> = fs::read_dir(data_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "cay"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, parse_loop(&fs::read_to_string(&p).unwrap()).unwrap())
        })
        .collect()
}

/// Set partitions of `0..n` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            go(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![vec![]];
    }
    let mut prefix = vec![0];
    go(&mut prefix, 0, n, &mut out);
    out
}

/// Renumbers labels so the first occurrence of each class is increasing.
pub fn normalize(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

/// The relation is a sub right loop of `S × S`: closed under the product
/// and right division of related pairs.
pub fn is_congruence_literal(s: &RightLoop, labels: &[usize]) -> bool {
    let n = s.order();
    let div = |a: usize, b: usize| (0..n).find(|&x| s.mul(x, a) == b).unwrap();
    for a in 0..n {
        for b in 0..n {
            if labels[a] != labels[b] {
                continue;
            }
            for c in 0..n {
                for d in 0..n {
                    if labels[c] != labels[d] {
                        continue;
                    }
                    if labels[s.mul(a, c)] != labels[s.mul(b, d)] {
                        return false;
                    }
                    if labels[div(c, a)] != labels[div(d, b)] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    let n = fine.len();
    (0..n).all(|a| (0..n).all(|b| fine[a] != fine[b] || coarse[a] == coarse[b]))
}

/// The least congruence containing `pairs`, found by scanning every set
/// partition. Panics if the candidates have no least element.
pub fn minimal_congruence_oracle(s: &RightLoop, pairs: &[(usize, usize)]) -> Vec<usize> {
    let candidates: Vec<Vec<usize>> = set_partitions(s.order())
        .into_iter()
        .filter(|p| pairs.iter().all(|&(a, b)| p[a] == p[b]))
        .filter(|p| is_congruence_literal(s, p))
        .collect();
    let least = candidates
        .iter()
        .find(|p| candidates.iter().all(|q| refines(p, q)))
        .expect("congruences containing a set of pairs have a least element");
    least.clone()
}

/// A uniformly random right loop of order `n`: column `a` is a random
/// bijection sending 0 to `a`, column 0 is the identity.
pub fn random_right_loop<R: Rng>(n: usize, rng: &mut R) -> RightLoop {
    let mut rows = vec![vec![0; n]; n];
    for (x, row) in rows.iter_mut().enumerate() {
        row[0] = x;
    }
    for a in 1..n {
        let mut rest: Vec<usize> = (0..n).filter(|&x| x != a).collect();
        rest.shuffle(rng);
        rows[0][a] = a;
        for (x, v) in (1..n).zip(rest) {
            rows[x][a] = v;
        }
    }
    RightLoop::from_table(&rows).unwrap()
}

/// First failing group axiom in the documented order: associativity
/// (lexicographic first triple), identity, inverses.
pub fn first_group_failure(rows: &[Vec<usize>]) -> Option<Error> {
    let n = rows.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if rows[rows[i][j]][k] != rows[i][rows[j][k]] {
                    return Some(Error::NotAssociative(i, j, k));
                }
            }
        }
    }
    for j in 0..n {
        if rows[0][j] != j || rows[j][0] != j {
            return Some(Error::NoIdentity);
        }
    }
    for i in 0..n {
        if !(0..n).any(|j| rows[i][j] == 0 && rows[j][i] == 0) {
            return Some(Error::NoInverse(i));
        }
    }
    None
}

/// Loop isomorphism by trying every bijection fixing 0.
pub fn isomorphic_bruteforce(a: &RightLoop, b: &RightLoop) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    permutations(&mut rest, 0, &mut |p| {
        let map = |x: usize| if x == 0 { 0 } else { p[x - 1] };
        (0..n).all(|x| (0..n).all(|y| map(a.mul(x, y)) == b.mul(map(x), map(y))))
    })
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == v.len() {
        return f(v);
    }
    for i in k..v.len() {
        v.swap(k, i);
        if permutations(v, k + 1, f) {
            v.swap(k, i);
            return true;
        }
        v.swap(k, i);
    }
    false
}

/// Derived series of a right loop by partition scanning: each term is the
/// identity class of the least congruence with an abelian group quotient.
pub fn derived_series_bruteforce(s: &RightLoop) -> Vec<Vec<usize>> {
    let mut series = vec![(0..s.order()).collect::<Vec<_>>()];
    loop {
        let last = series.last().unwrap().clone();
        if last.len() == 1 {
            return series;
        }
        let k = last.len();
        let pos = |x: usize| last.iter().position(|&y| y == x).unwrap();
        let rows: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| pos(s.mul(last[i], last[j]))).collect())
            .collect();
        let sub = RightLoop::from_table(&rows).unwrap();
        let abelian_quotient = |p: &Vec<usize>| {
            let classes = p.iter().max().unwrap() + 1;
            let rep = |c: usize| p.iter().position(|&l| l == c).unwrap();
            let q = |a: usize, b: usize| p[sub.mul(rep(a), rep(b))];
            (0..classes).all(|a| {
                (0..classes).all(|b| {
                    q(a, b) == q(b, a) && (0..classes).all(|c| q(q(a, b), c) == q(a, q(b, c)))
                })
            })
        };
        let candidates: Vec<Vec<usize>> = set_partitions(k)
            .into_iter()
            .filter(|p| is_congruence_literal(&sub, p) && abelian_quotient(p))
            .collect();
        let least = candidates
            .iter()
            .find(|p| candidates.iter().all(|q| refines(p, q)))
            .unwrap();
        let next: Vec<usize> = (0..k)
            .filter(|&i| least[i] == least[0])
            .map(|i| last[i])
            .collect();
        if next == last {
            series.push(next);
            return series;
        }
        series.push(next);
    }
}
