use std::collections::HashMap;

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::perm::{self, Perm};

/// Default bound on the order of any constructed group.
pub const DEFAULT_GROUP_CAP: usize = 120;

fn check_cap(order: usize) -> Result<()> {
    if order > DEFAULT_GROUP_CAP {
        return Err(Error::CapExceeded {
            what: "group order",
            cap: DEFAULT_GROUP_CAP,
        });
    }
    Ok(())
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::MalformedTable("cyclic group of order 0".into()));
    }
    check_cap(n)?;
    Ok(FiniteGroup::from_fn(n, |a, b| (a + b) % n))
}

/// Dihedral group of order `2n`: element `k + n*e` is `r^k s^e`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::MalformedTable("dihedral group with n = 0".into()));
    }
    check_cap(2 * n)?;
    Ok(FiniteGroup::from_fn(2 * n, |x, y| {
        let (a, e) = (x % n, x / n);
        let (b, f) = (y % n, y / n);
        let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
        k + n * ((e + f) % 2)
    }))
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n > 5 {
        return Err(Error::CapExceeded {
            what: "symmetric group degree",
            cap: 5,
        });
    }
    if n <= 1 {
        return cyclic(1);
    }
    let t = Perm::from_cycles(n, &[&[0, 1]]).unwrap();
    let c: Vec<usize> = (0..n).collect();
    let c = Perm::from_cycles(n, &[&c]).unwrap();
    from_permutations(&[t, c], n)
}

/// Alternating group on `n <= 5` points, generated by the 3-cycles `(0 1 i)`.
pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n > 5 {
        return Err(Error::CapExceeded {
            what: "alternating group degree",
            cap: 5,
        });
    }
    let gens: Vec<Perm> = (2..n)
        .map(|i| Perm::from_cycles(n, &[&[0, 1, i]]).unwrap())
        .collect();
    from_permutations(&gens, n.max(1))
}

/// Quaternion group: element `u + 4*s` is `(-1)^s` times unit `u` of `1, i, j, k`.
pub fn quaternion8() -> Result<FiniteGroup> {
    // unit products: (sign, unit) for u*v
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    Ok(FiniteGroup::from_fn(8, |x, y| {
        let (s, u) = UNIT[x % 4][y % 4];
        u + 4 * ((s + x / 4 + y / 4) % 2)
    }))
}

/// `G1 x G2` with `(a, b)` stored at `a * |G2| + b`.
pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<FiniteGroup> {
    let m = g2.order();
    check_cap(g1.order() * m)?;
    Ok(FiniteGroup::from_fn(g1.order() * m, |x, y| {
        g1.mul(x / m, y / m) * m + g2.mul(x % m, y % m)
    }))
}

pub fn from_permutations(generators: &[Perm], degree: usize) -> Result<FiniteGroup> {
    from_permutations_capped(generators, degree, DEFAULT_GROUP_CAP).map(|(g, _)| g)
}

/// Closes permutation generators into a group. Elements are indexed by the
/// lexicographic order of their image arrays (identity first) and
/// `i * j` is "apply `i`, then `j`". Also returns the permutation behind each
/// index.
pub fn from_permutations_capped(
    generators: &[Perm],
    degree: usize,
    cap: usize,
) -> Result<(FiniteGroup, Vec<Perm>)> {
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::MalformedTable(format!(
            "generator {g} has degree {}, expected {degree}",
            g.degree()
        )));
    }
    let elements = perm::closure(generators, degree, cap)?;
    let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let group = FiniteGroup::from_fn(elements.len(), |a, b| {
        index[&elements[a].then(&elements[b])]
    });
    Ok((group, elements))
}
