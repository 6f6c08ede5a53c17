use super::RightLoop;
use crate::error::{Error, Result};

/// Largest loop order accepted by the isomorphism search.
pub const MAX_ISO_ORDER: usize = 32;

const UNSET: usize = usize::MAX;

/// Isomorphism-invariant fingerprint: sorted column cycle types, plus counts
/// of commuting pairs, associating triples and self-inverse elements.
pub fn loop_invariant(s: &RightLoop) -> (Vec<Vec<usize>>, usize, usize, usize) {
    let n = s.order();
    let mut cols: Vec<Vec<usize>> = (0..n)
        .map(|a| s.right_translation(a).cycle_type())
        .collect();
    cols.sort();
    let commuting = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| s.mul(x, y) == s.mul(y, x))
        .count();
    let mut assoc = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if s.mul(s.mul(x, y), z) == s.mul(x, s.mul(y, z)) {
                    assoc += 1;
                }
            }
        }
    }
    let involutive = (0..n).filter(|&x| s.mul(x, x) == 0).count();
    (cols, commuting, assoc, involutive)
}

struct Search<'a> {
    a: &'a RightLoop,
    b: &'a RightLoop,
    class_a: Vec<Vec<usize>>,
    class_b: Vec<Vec<usize>>,
}

impl RightLoop {
    pub fn is_isomorphic(&self, other: &RightLoop) -> Result<bool> {
        Ok(self.find_isomorphism(other)?.is_some())
    }

    /// Searches for an identity-preserving bijection `phi` with
    /// `phi(x ∘ y) = phi(x) ∘ phi(y)`. Candidates are restricted to elements
    /// whose right translations have the same cycle type; products of
    /// assigned elements are propagated eagerly.
    pub fn find_isomorphism(&self, other: &RightLoop) -> Result<Option<Vec<usize>>> {
        if self.order() > MAX_ISO_ORDER || other.order() > MAX_ISO_ORDER {
            return Err(Error::CapExceeded {
                what: "loop order for isomorphism test",
                cap: MAX_ISO_ORDER,
            });
        }
        if self.order() != other.order() {
            return Ok(None);
        }
        let n = self.order();
        let class_a: Vec<Vec<usize>> = (0..n)
            .map(|x| self.right_translation(x).cycle_type())
            .collect();
        let class_b: Vec<Vec<usize>> = (0..n)
            .map(|x| other.right_translation(x).cycle_type())
            .collect();
        let (mut sa, mut sb) = (class_a.clone(), class_b.clone());
        sa.sort();
        sb.sort();
        if sa != sb {
            return Ok(None);
        }
        let search = Search {
            a: self,
            b: other,
            class_a,
            class_b,
        };
        let mut map = vec![UNSET; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        Ok(search.extend(map, used))
    }
}

impl Search<'_> {
    fn extend(&self, mut map: Vec<usize>, mut used: Vec<bool>) -> Option<Vec<usize>> {
        if !self.propagate(&mut map, &mut used) {
            return None;
        }
        let Some(x) = map.iter().position(|&m| m == UNSET) else {
            return Some(map);
        };
        for y in 0..map.len() {
            if used[y] || self.class_a[x] != self.class_b[y] {
                continue;
            }
            let (mut m2, mut u2) = (map.clone(), used.clone());
            m2[x] = y;
            u2[y] = true;
            if let Some(found) = self.extend(m2, u2) {
                return Some(found);
            }
        }
        None
    }

    /// Forces `phi(x ∘ y) = phi(x) ∘ phi(y)` over assigned pairs until stable.
    fn propagate(&self, map: &mut [usize], used: &mut [bool]) -> bool {
        let n = map.len();
        loop {
            let mut changed = false;
            for x in 0..n {
                if map[x] == UNSET {
                    continue;
                }
                for y in 0..n {
                    if map[y] == UNSET {
                        continue;
                    }
                    let xy = self.a.mul(x, y);
                    let img = self.b.mul(map[x], map[y]);
                    if map[xy] == UNSET {
                        if used[img] || self.class_a[xy] != self.class_b[img] {
                            return false;
                        }
                        map[xy] = img;
                        used[img] = true;
                        changed = true;
                    } else if map[xy] != img {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::order3_nonassoc;
    use super::*;
    use crate::group::{cyclic, direct_product};

    fn brute_iso(a: &RightLoop, b: &RightLoop) -> bool {
        // all bijections fixing 0, order <= 4
        let n = a.order();
        let mut perm: Vec<usize> = (0..n).collect();
        fn next(p: &mut [usize]) -> bool {
            let n = p.len();
            if n < 2 {
                return false;
            }
            let mut i = n - 1;
            while i > 0 && p[i - 1] >= p[i] {
                i -= 1;
            }
            if i == 0 {
                return false;
            }
            let mut j = n - 1;
            while p[j] <= p[i - 1] {
                j -= 1;
            }
            p.swap(i - 1, j);
            p[i..].reverse();
            true
        }
        loop {
            if perm[0] == 0
                && (0..n).all(|x| (0..n).all(|y| perm[a.mul(x, y)] == b.mul(perm[x], perm[y])))
            {
                return true;
            }
            if !next(&mut perm) {
                return false;
            }
        }
    }

    #[test]
    fn reflexive_and_separates_associativity() {
        let s = order3_nonassoc();
        assert!(s.is_isomorphic(&s).unwrap());
        let c3 = RightLoop::from_group(&cyclic(3).unwrap());
        assert!(!c3.is_isomorphic(&s).unwrap());
    }

    #[test]
    fn agrees_with_brute_force_on_order_4_loops() {
        let c4 = RightLoop::from_group(&cyclic(4).unwrap());
        let v4 = RightLoop::from_group(
            &direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap(),
        );
        let relabeled = c4.relabel(&[0, 2, 1, 3]);
        let loops = [c4, v4, relabeled];
        for a in &loops {
            for b in &loops {
                assert_eq!(a.is_isomorphic(b).unwrap(), brute_iso(a, b));
            }
        }
    }

    #[test]
    fn witness_is_an_isomorphism() {
        let s = order3_nonassoc();
        let t = s.relabel(&[0, 2, 1]);
        let phi = s.find_isomorphism(&t).unwrap().unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(phi[s.mul(x, y)], t.mul(phi[x], phi[y]));
            }
        }
    }

    #[test]
    fn rejects_large_orders() {
        let big = RightLoop::from_group(&cyclic(33).unwrap());
        assert!(matches!(
            big.is_isomorphic(&big),
            Err(Error::CapExceeded { .. })
        ));
    }
}
