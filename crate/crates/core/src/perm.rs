//! Permutations on `0..n` and breadth-first closure of permutation groups.
//!
//! Composition is written left to right: `p.then(&q)` applies `p` first,
//! matching the right-action notation `x θ h = h(x)` used for torsion maps.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported degree; images are stored as `u16`.
pub const MAX_DEGREE: usize = u16::MAX as usize;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree {n} too large");
        Perm((0..n as u16).collect())
    }

    /// Builds a permutation from its image array, or `None` if `images` is
    /// not a bijection on `0..images.len()`.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return None;
        }
        let mut seen = vec![false; n];
        for &i in images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images.iter().map(|&i| i as u16).collect()))
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= n || b >= n {
                    return None;
                }
                images[a] = b;
            }
        }
        Perm::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.apply(i) == i
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Sorted multiset of all cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let mut ty: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        ty.extend(std::iter::repeat_n(1, self.degree() - moved));
        ty.sort_unstable();
        ty
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Closes `generators` under composition, returning every element of the
/// generated group sorted lexicographically by image array. The identity is
/// the lexicographic minimum, so it always comes first.
pub fn closure(generators: &[Perm], degree: usize, cap: usize) -> Result<Vec<Perm>> {
    let identity = Perm::identity(degree);
    let gens: Vec<&Perm> = generators.iter().filter(|g| !g.is_identity()).collect();
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let q = p.then(g);
            if !seen.contains(&q) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "permutation group order",
                        cap,
                    });
                }
                seen.insert(q.clone());
                frontier.push(q);
            }
        }
    }
    let mut all: Vec<Perm> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_left_to_right() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a).is_identity());
        assert!(a.then(&b).then(&a.then(&b).inverse()).is_identity());
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Perm::from_images(&[0, 0]).is_none());
        assert!(Perm::from_images(&[0, 2]).is_none());
        assert!(Perm::from_images(&[1, 0]).is_some());
    }

    #[test]
    fn closure_of_s3_generators() {
        let t = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let g = closure(&[t, c], 3, 100).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g[0].is_identity());
        assert!(closure(&[], 4, 10).unwrap().len() == 1);
    }

    #[test]
    fn closure_respects_cap() {
        let c = Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert!(matches!(
            closure(&[c], 5, 3),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn cycle_type_counts_fixed_points() {
        let p = Perm::from_cycles(5, &[&[0, 3]]).unwrap();
        assert_eq!(p.cycle_type(), vec![1, 1, 1, 2]);
        assert_eq!(p.to_string(), "(0 3)");
    }
}
