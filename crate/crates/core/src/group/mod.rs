//! Finite groups given by Cayley tables over `0..n`, identity at index 0.

mod build;
mod iso;

pub use build::{
    alternating, cyclic, dihedral, direct_product, from_permutations, from_permutations_capped,
    quaternion8, symmetric, DEFAULT_GROUP_CAP,
};

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};

/// Default bound on the group order accepted by [`FiniteGroup::all_subgroups`].
pub const DEFAULT_SUBGROUP_ENUM_CAP: usize = 48;

/// A sorted, duplicate-free set of element indices of some group or loop.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElementSet(Vec<usize>);

impl ElementSet {
    pub fn new(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        ElementSet(elements)
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet(
            self.0
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSet::new(iter.into_iter().collect())
    }
}

/// A subgroup, stored as its sorted element set. Only produced by closure or
/// by [`FiniteGroup::as_subgroup`], so closure under product and inverse
/// holds for the group it came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup(ElementSet);

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        self.0.elements()
    }

    pub fn as_set(&self) -> &ElementSet {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.0.is_subset(&other.0)
    }
}

/// A quotient `G/N` together with the projection `G -> G/N`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table. Checks run in the order shape, associativity,
    /// identity, inverses; each error names the first witness in row-major
    /// scan order.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::MalformedTable(format!(
                    "entry {v} in row {i} out of range"
                )));
            }
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        let at = |i: usize, j: usize| table[i * n + j];
        for i in 0..n {
            for j in 0..n {
                let ij = at(i, j);
                for k in 0..n {
                    if at(ij, k) != at(i, at(j, k)) {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        if (0..n).any(|j| at(0, j) != j || at(j, 0) != j) {
            return Err(Error::NoIdentity);
        }
        let mut inv = vec![usize::MAX; n];
        for (i, slot) in inv.iter_mut().enumerate() {
            match (0..n).find(|&j| at(i, j) == 0 && at(j, i) == 0) {
                Some(j) => *slot = j,
                None => return Err(Error::NoInverse(i)),
            }
        }
        Ok(FiniteGroup { n, table, inv })
    }

    /// Builds a group from a product function known to define a group with
    /// identity 0. Used by constructors; still fully validated in debug builds.
    pub(crate) fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| mul(i, j)).collect())
            .collect();
        if cfg!(debug_assertions) {
            return FiniteGroup::from_table(&rows).expect("constructor produced an invalid group");
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let mut inv = vec![0; n];
        for i in 0..n {
            inv[i] = (0..n)
                .find(|&j| table[i * n + j] == 0)
                .expect("missing inverse");
        }
        FiniteGroup { n, table, inv }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        // a^-1 b^-1 a b
        let ab = self.mul(a, b);
        self.mul(self.mul(self.inv(a), self.inv(b)), ab)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup(ElementSet((0..self.n).collect()))
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup(ElementSet(vec![0]))
    }

    /// Smallest subgroup containing `seed`.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Subgroup {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut gens: Vec<usize> = Vec::new();
        for &s in seed {
            if s != 0 && !gens.contains(&s) {
                gens.push(s);
            }
        }
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup(ElementSet((0..self.n).filter(|&i| inside[i]).collect()))
    }

    /// Checks that `set` is a subgroup.
    pub fn as_subgroup(&self, set: &ElementSet) -> Result<Subgroup> {
        if let Some(x) = set.iter().find(|&x| x >= self.n) {
            return Err(Error::NotSubgroup(format!("index {x} out of range")));
        }
        if !set.contains(0) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        for a in set.iter() {
            if !set.contains(self.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for b in set.iter() {
                if !set.contains(self.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(Subgroup(set.clone()))
    }

    /// Every subgroup exactly once, sorted by (order, elements).
    pub fn all_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        if self.n > cap {
            return Err(Error::CapExceeded {
                what: "group order for subgroup enumeration",
                cap,
            });
        }
        let mut found: BTreeSet<Subgroup> = BTreeSet::new();
        let trivial = self.trivial();
        found.insert(trivial.clone());
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            for x in 0..self.n {
                if h.contains(x) {
                    continue;
                }
                let mut seed = h.elements().to_vec();
                seed.push(x);
                let k = self.subgroup_closure(&seed);
                if found.insert(k.clone()) {
                    queue.push_back(k);
                }
            }
        }
        let mut all: Vec<Subgroup> = found.into_iter().collect();
        all.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        Ok(all)
    }

    /// Right cosets `Hx`. The coset `H` comes first, the rest ordered by
    /// their least element; each coset is sorted.
    pub fn right_cosets(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.n];
        let mut cosets = Vec::new();
        for x in 0..self.n {
            if assigned[x] {
                continue;
            }
            let mut coset: Vec<usize> = h.elements().iter().map(|&k| self.mul(k, x)).collect();
            coset.sort_unstable();
            for &y in &coset {
                assigned[y] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    pub fn conjugate(&self, h: &Subgroup, g: usize) -> ElementSet {
        let gi = self.inv(g);
        h.elements()
            .iter()
            .map(|&x| self.mul(self.mul(g, x), gi))
            .collect()
    }

    /// Intersection of all conjugates `gHg^-1`.
    pub fn core(&self, h: &Subgroup) -> Subgroup {
        let mut core = h.as_set().clone();
        for g in 0..self.n {
            core = core.intersection(&self.conjugate(h, g));
            if core.len() == 1 {
                break;
            }
        }
        Subgroup(core)
    }

    pub fn is_core_free(&self, h: &Subgroup) -> bool {
        self.core(h).is_trivial()
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        (0..self.n).all(|g| {
            let gi = self.inv(g);
            n.elements()
                .iter()
                .all(|&x| n.contains(self.mul(self.mul(g, x), gi)))
        })
    }

    pub fn set_product(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut hit = vec![false; self.n];
        for x in a.iter() {
            for y in b.iter() {
                hit[self.mul(x, y)] = true;
            }
        }
        ElementSet((0..self.n).filter(|&i| hit[i]).collect())
    }

    /// Commutator subgroup of the subgroup `h`.
    pub fn derived_subgroup_of(&self, h: &Subgroup) -> Subgroup {
        let mut comms: HashSet<usize> = HashSet::new();
        for &a in h.elements() {
            for &b in h.elements() {
                comms.insert(self.commutator(a, b));
            }
        }
        let mut seed: Vec<usize> = comms.into_iter().collect();
        seed.sort_unstable();
        self.subgroup_closure(&seed)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        self.derived_subgroup_of(&self.whole())
    }

    /// `[H, H^(1), H^(2), ...]` ending at the first repeated term; a single
    /// entry when `h` is already perfect or trivial.
    pub fn derived_series_of(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![h.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = self.derived_subgroup_of(last);
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn derived_series(&self) -> Vec<Subgroup> {
        self.derived_series_of(&self.whole())
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    /// Quotient by a normal subgroup. Coset indices follow [`Self::right_cosets`],
    /// so `N` itself is coset 0.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let cosets = self.right_cosets(n);
        let mut projection = vec![0; self.n];
        for (c, coset) in cosets.iter().enumerate() {
            for &x in coset {
                projection[x] = c;
            }
        }
        let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
        let group =
            FiniteGroup::from_fn(cosets.len(), |a, b| projection[self.mul(reps[a], reps[b])]);
        Ok(Quotient { group, projection })
    }

    /// True iff every element squares to the identity. Commutativity is then
    /// forced; it is re-checked in debug builds.
    pub fn is_elementary_abelian_2(&self) -> bool {
        let exp2 = (0..self.n).all(|x| self.mul(x, x) == 0);
        debug_assert!(!exp2 || self.is_abelian());
        exp2
    }

    pub fn subgroup_is_elementary_abelian_2(&self, h: &Subgroup) -> bool {
        let exp2 = h.elements().iter().all(|&x| self.mul(x, x) == 0);
        debug_assert!(
            !exp2
                || h.elements().iter().all(|&a| h
                    .elements()
                    .iter()
                    .all(|&b| self.mul(a, b) == self.mul(b, a)))
        );
        exp2
    }

    /// The subgroup as a group in its own right, elements relabeled in
    /// sorted order. The returned map sends new indices to parent indices.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let map = h.elements().to_vec();
        let mut back = vec![usize::MAX; self.n];
        for (i, &x) in map.iter().enumerate() {
            back[x] = i;
        }
        let group = FiniteGroup::from_fn(map.len(), |a, b| back[self.mul(map[a], map[b])]);
        (group, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        symmetric(3).unwrap()
    }

    fn order(g: &FiniteGroup, k: usize) -> Vec<Subgroup> {
        g.all_subgroups(DEFAULT_SUBGROUP_ENUM_CAP)
            .unwrap()
            .into_iter()
            .filter(|h| h.order() == k)
            .collect()
    }

    #[test]
    fn validate_small_tables() {
        assert_eq!(FiniteGroup::from_table(&[vec![0]]).unwrap().order(), 1);
        let c2 = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(c2.is_abelian());
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1]]),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]),
            Err(Error::MalformedTable(_))
        ));
        assert_eq!(
            FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]),
            Err(Error::NoIdentity)
        );
        // associative monoid with identity 0 but 1*1 = 1
        assert_eq!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]),
            Err(Error::NoInverse(1))
        );
    }

    #[test]
    fn subgroup_closure_examples() {
        let g = s3();
        assert_eq!(g.subgroup_closure(&[]).elements(), &[0]);
        assert_eq!(g.subgroup_closure(&(0..6).collect::<Vec<_>>()).order(), 6);
        let three_cycle = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        assert_eq!(g.subgroup_closure(&[three_cycle]).order(), 3);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(cyclic(1).unwrap().all_subgroups(48).unwrap().len(), 1);
        let subs = s3().all_subgroups(48).unwrap();
        let orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(quaternion8().unwrap().all_subgroups(48).unwrap().len(), 6);
        assert!(matches!(
            symmetric(5).unwrap().all_subgroups(48),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn cosets_partition_the_group() {
        let g = s3();
        assert_eq!(g.right_cosets(&g.whole()).len(), 1);
        assert_eq!(g.right_cosets(&g.trivial()).len(), 6);
        let h = &order(&g, 2)[0];
        let cosets = g.right_cosets(h);
        assert_eq!(cosets.len(), 3);
        assert_eq!(cosets[0], h.elements());
        assert!(cosets.iter().all(|c| c.len() == 2));
        // each block really is Hx
        for c in &cosets {
            let hx: ElementSet = h.elements().iter().map(|&k| g.mul(k, c[0])).collect();
            assert_eq!(hx.elements(), &c[..]);
        }
    }

    #[test]
    fn core_and_normality() {
        let g = s3();
        assert_eq!(g.core(&g.whole()), g.whole());
        for h in order(&g, 2) {
            assert!(g.is_core_free(&h));
            assert!(!g.is_normal(&h));
        }
        assert!(g.is_normal(&order(&g, 3)[0]));
        assert!(g.is_normal(&g.trivial()));

        let d4 = dihedral(4).unwrap();
        let center: Vec<usize> = (0..8)
            .filter(|&z| (0..8).all(|x| d4.mul(z, x) == d4.mul(x, z)))
            .collect();
        let z = d4.as_subgroup(&ElementSet::new(center)).unwrap();
        assert_eq!(z.order(), 2);
        assert_eq!(d4.core(&z), z);
    }

    #[test]
    fn set_product_examples() {
        let g = s3();
        let b = ElementSet::new(vec![1, 3]);
        assert_eq!(g.set_product(&ElementSet::new(vec![0]), &b), b);
        let h = &order(&g, 2)[0];
        assert_eq!(&g.set_product(h.as_set(), h.as_set()), h.as_set());
        let a3 = &order(&g, 3)[0];
        assert_eq!(g.set_product(h.as_set(), a3.as_set()).len(), 6);
    }

    #[test]
    fn derived_series_examples() {
        let c6 = cyclic(6).unwrap();
        assert!(c6.derived_subgroup().is_trivial());
        assert!(c6.is_solvable());
        let series = s3().derived_series();
        let orders: Vec<usize> = series.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![6, 3, 1]);
        let a5 = alternating(5).unwrap();
        assert_eq!(a5.derived_subgroup().order(), 60);
        assert!(!a5.is_solvable());
    }

    #[test]
    fn quotients() {
        let g = s3();
        assert_eq!(g.quotient(&g.whole()).unwrap().group.order(), 1);
        let copy = g.quotient(&g.trivial()).unwrap().group;
        assert!(copy.is_isomorphic(&g).unwrap());
        let q = g.quotient(&order(&g, 3)[0]).unwrap();
        assert!(q.group.is_isomorphic(&cyclic(2).unwrap()).unwrap());
        assert_eq!(q.projection[0], 0);
        assert_eq!(g.quotient(&order(&g, 2)[0]).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn elementary_abelian() {
        assert!(cyclic(1).unwrap().is_elementary_abelian_2());
        let v4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert!(v4.is_elementary_abelian_2());
        assert!(!cyclic(4).unwrap().is_elementary_abelian_2());
    }

    #[test]
    fn subgroup_as_group_relabels() {
        let g = symmetric(4).unwrap();
        let a4 = g.derived_subgroup();
        let (h, map) = g.subgroup_as_group(&a4);
        assert_eq!(h.order(), 12);
        assert_eq!(map[0], 0);
        assert!(h.is_isomorphic(&alternating(4).unwrap()).unwrap());
    }
}
