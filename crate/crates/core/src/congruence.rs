//! Congruences on right loops, invariant sub right loops, quotients and the
//! right-loop derived series.
//!
//! A congruence is an equivalence relation that is a sub right loop of
//! `S x S`: compatible with `∘` and with right division. Classes are the
//! translates `I ∘ x` of the identity class `I`, so they all have the same
//! size.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rightloop::RightLoop;

/// Largest loop order for [`all_invariant_subloops`].
pub const MAX_SUBLOOP_ENUM_ORDER: usize = 32;

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// A partition of the loop elements, in canonical form: classes sorted
/// internally and ordered by least element, so the identity class is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Congruence {
    classes: Vec<Vec<usize>>,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl Congruence {
    fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        let mut first_seen: Vec<Option<usize>> = vec![None; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; n];
        for x in 0..n {
            let c = *first_seen[labels[x]].get_or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(x);
            class_of[x] = c;
        }
        Congruence { classes, class_of }
    }

    pub fn discrete(n: usize) -> Self {
        Congruence::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn full(n: usize) -> Self {
        Congruence::from_labels(&vec![0; n])
    }

    /// Validates an arbitrary partition of `0..|S|` against every congruence
    /// invariant.
    pub fn from_partition(s: &RightLoop, classes: &[Vec<usize>]) -> Result<Self> {
        let n = s.order();
        let mut labels = vec![usize::MAX; n];
        for (c, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= n || labels[x] != usize::MAX {
                    return Err(Error::NotInvariant(format!(
                        "element {x} out of range or in two classes"
                    )));
                }
                labels[x] = c;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::NotInvariant(format!("element {x} in no class")));
        }
        let r = Congruence::from_labels(&labels);
        r.check(s)?;
        Ok(r)
    }

    pub fn order(&self) -> usize {
        self.class_of.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn is_discrete(&self) -> bool {
        self.classes.len() == self.order()
    }

    pub fn is_full(&self) -> bool {
        self.classes.len() == 1
    }

    /// True iff every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&x| other.related(x, c[0])))
    }

    pub fn identity_class(&self) -> InvariantSubloop {
        InvariantSubloop {
            elements: self.classes[0].clone(),
        }
    }

    /// Checks compatibility with `∘` and right division, and equal class sizes.
    pub fn check(&self, s: &RightLoop) -> Result<()> {
        let n = s.order();
        if self.order() != n {
            return Err(Error::NotInvariant(format!(
                "partition of {} elements on a loop of order {n}",
                self.order()
            )));
        }
        for a in 0..n {
            let b = self.classes[self.class_of[a]][0];
            if a == b {
                continue;
            }
            for c in 0..n {
                let rules = [
                    (s.mul(a, c), s.mul(b, c), "a∘c ≢ b∘c"),
                    (s.mul(c, a), s.mul(c, b), "c∘a ≢ c∘b"),
                    (s.right_solve(c, a), s.right_solve(c, b), "a/c ≢ b/c"),
                    (s.right_solve(a, c), s.right_solve(b, c), "c/a ≢ c/b"),
                ];
                for (x, y, what) in rules {
                    if !self.related(x, y) {
                        return Err(Error::NotInvariant(format!(
                            "{what} for a={a}, b={b}, c={c}"
                        )));
                    }
                }
            }
        }
        let size = self.classes[0].len();
        if let Some(c) = self.classes.iter().find(|c| c.len() != size) {
            return Err(Error::NotInvariant(format!(
                "class {c:?} has size {}, identity class has {size}",
                c.len()
            )));
        }
        Ok(())
    }
}

/// The identity class of some congruence; the loop analogue of a normal
/// subgroup. Elements are sorted and include 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InvariantSubloop {
    elements: Vec<usize>,
}

impl InvariantSubloop {
    pub fn whole(n: usize) -> Self {
        InvariantSubloop {
            elements: (0..n).collect(),
        }
    }

    pub fn trivial() -> Self {
        InvariantSubloop { elements: vec![0] }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

struct Closure<'a> {
    s: &'a RightLoop,
    uf: UnionFind,
    pending: Vec<(usize, usize)>,
    classes: usize,
}

impl<'a> Closure<'a> {
    fn new(s: &'a RightLoop) -> Self {
        Closure {
            s,
            uf: UnionFind::new(s.order()),
            pending: Vec::new(),
            classes: s.order(),
        }
    }

    #[inline]
    fn merge(&mut self, a: usize, b: usize) {
        if a != b && self.uf.union(a, b) {
            self.pending.push((a, b));
            self.classes -= 1;
        }
    }

    fn finish(mut self) -> Congruence {
        let n = self.s.order();
        while let Some((a, b)) = self.pending.pop() {
            if self.classes == 1 {
                break;
            }
            for c in 0..n {
                let s = self.s;
                self.merge(s.mul(a, c), s.mul(b, c));
                self.merge(s.mul(c, a), s.mul(c, b));
                self.merge(s.right_solve(c, a), s.right_solve(c, b));
                self.merge(s.right_solve(a, c), s.right_solve(b, c));
            }
        }
        let labels: Vec<usize> = (0..n).map(|x| self.uf.find(x)).collect();
        Congruence::from_labels(&labels)
    }
}

/// Smallest congruence containing every pair. Union-find with a worklist of
/// merged pairs; each merged `(a, b)` is pushed through the four unary
/// translations `x∘c`, `c∘x`, `x/c`, `c/x`.
pub fn congruence_closure<I>(s: &RightLoop, pairs: I) -> Congruence
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let mut cl = Closure::new(s);
    for (a, b) in pairs {
        cl.merge(a, b);
    }
    cl.finish()
}

/// Smallest congruence with a group quotient: generated by `(x, x θ^S f^S(y,z))`.
pub fn smallest_group_congruence(s: &RightLoop) -> Congruence {
    let n = s.order();
    let mut cl = Closure::new(s);
    for y in 0..n {
        for z in 0..n {
            for x in 0..n {
                cl.merge(x, s.f_s_at(x, y, z));
            }
        }
    }
    cl.finish()
}

/// Smallest congruence with an abelian group quotient: the group congruence
/// generators plus `(x∘y, y∘x)`.
pub fn smallest_abelian_group_congruence(s: &RightLoop) -> Congruence {
    let n = s.order();
    let mut cl = Closure::new(s);
    for x in 0..n {
        for y in x + 1..n {
            cl.merge(s.mul(x, y), s.mul(y, x));
        }
    }
    for y in 0..n {
        for z in 0..n {
            for x in 0..n {
                cl.merge(x, s.f_s_at(x, y, z));
                if cl.classes == 1 {
                    return cl.finish();
                }
            }
        }
    }
    cl.finish()
}

/// The classes `I ∘ y` of the relation `{(x∘y, y) : x ∈ I}`, or `None` if
/// that relation is not an equivalence relation.
fn translate_blocks(s: &RightLoop, subset: &[usize]) -> Option<Vec<usize>> {
    let n = s.order();
    let blocks: Vec<BTreeSet<usize>> = (0..n)
        .map(|y| subset.iter().map(|&x| s.mul(x, y)).collect())
        .collect();
    let mut labels = vec![usize::MAX; n];
    for y in 0..n {
        if !blocks[y].contains(&y) {
            return None;
        }
        for &a in &blocks[y] {
            if blocks[a] != blocks[y] {
                return None;
            }
        }
        labels[y] = *blocks[y].iter().next().unwrap();
    }
    Some(labels)
}

/// Builds the congruence `{(x∘y, y) : x ∈ I, y ∈ S}` from an invariant
/// subloop and checks that its identity class is `I`.
pub fn congruence_from_invariant(s: &RightLoop, i: &InvariantSubloop) -> Result<Congruence> {
    congruence_from_subset(s, i.elements())
}

fn congruence_from_subset(s: &RightLoop, subset: &[usize]) -> Result<Congruence> {
    if subset.first() != Some(&0) {
        return Err(Error::NotInvariant("identity missing".into()));
    }
    if let Some(&x) = subset.iter().find(|&&x| x >= s.order()) {
        return Err(Error::NotInvariant(format!("index {x} out of range")));
    }
    let labels = translate_blocks(s, subset)
        .ok_or_else(|| Error::NotInvariant("translates I∘y do not partition S".into()))?;
    let r = Congruence::from_labels(&labels);
    r.check(s)?;
    if r.classes[0] != subset {
        return Err(Error::NotInvariant(format!(
            "identity class {:?} differs from I",
            r.classes[0]
        )));
    }
    Ok(r)
}

/// Checks that `set` is an invariant sub right loop, returning the reason on
/// failure.
pub fn check_invariant_subloop(s: &RightLoop, set: &[usize]) -> Result<InvariantSubloop> {
    let mut elements = set.to_vec();
    elements.sort_unstable();
    elements.dedup();
    if elements.first() != Some(&0) {
        return Err(Error::NotInvariant("identity missing".into()));
    }
    if let Some(&x) = elements.iter().find(|&&x| x >= s.order()) {
        return Err(Error::NotInvariant(format!("index {x} out of range")));
    }
    for &a in &elements {
        for &b in &elements {
            let ab = s.mul(a, b);
            if elements.binary_search(&ab).is_err() {
                return Err(Error::NotInvariant(format!("not closed: {a}∘{b} = {ab}")));
            }
            let q = s.right_solve(b, a);
            if elements.binary_search(&q).is_err() {
                return Err(Error::NotInvariant(format!(
                    "not closed under division: {a}/{b} = {q}"
                )));
            }
        }
    }
    congruence_from_subset(s, &elements)?;
    Ok(InvariantSubloop { elements })
}

pub fn is_invariant_subloop(s: &RightLoop, set: &[usize]) -> bool {
    check_invariant_subloop(s, set).is_ok()
}

/// Smallest sub right loop containing `seed` (closure under `∘`; division is
/// then automatic in a finite loop).
pub fn subloop_closure(s: &RightLoop, seed: &[usize]) -> Vec<usize> {
    let n = s.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0];
    for &x in seed {
        if !inside[x] {
            inside[x] = true;
            members.push(x);
        }
    }
    let mut queue: VecDeque<usize> = members.iter().copied().collect();
    while let Some(a) = queue.pop_front() {
        let snapshot = members.clone();
        for &b in &snapshot {
            for c in [s.mul(a, b), s.mul(b, a)] {
                if !inside[c] {
                    inside[c] = true;
                    members.push(c);
                    queue.push_back(c);
                }
            }
        }
    }
    members.sort_unstable();
    members
}

/// Every invariant sub right loop, sorted by (size, elements).
pub fn all_invariant_subloops(s: &RightLoop) -> Result<Vec<InvariantSubloop>> {
    if s.order() > MAX_SUBLOOP_ENUM_ORDER {
        return Err(Error::CapExceeded {
            what: "loop order for subloop enumeration",
            cap: MAX_SUBLOOP_ENUM_ORDER,
        });
    }
    let mut subloops: BTreeSet<Vec<usize>> = BTreeSet::new();
    subloops.insert(vec![0]);
    let mut queue = VecDeque::from([vec![0]]);
    while let Some(sub) = queue.pop_front() {
        for x in 0..s.order() {
            if sub.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = sub.clone();
            seed.push(x);
            let next = subloop_closure(s, &seed);
            if subloops.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<InvariantSubloop> = subloops
        .into_iter()
        .filter_map(|sub| check_invariant_subloop(s, &sub).ok())
        .collect();
    out.sort_by(|a, b| (a.len(), a.elements()).cmp(&(b.len(), b.elements())));
    Ok(out)
}

/// Invariant subloops of order 2. These have the form `{0, t}` with
/// `t ∘ t = 0`.
pub fn order2_invariant_subloops(s: &RightLoop) -> Vec<InvariantSubloop> {
    (1..s.order())
        .filter(|&t| s.mul(t, t) == 0)
        .filter_map(|t| check_invariant_subloop(s, &[0, t]).ok())
        .collect()
}

/// A quotient loop `S/R` and the projection `S -> S/R`.
#[derive(Debug, Clone)]
pub struct QuotientLoop {
    pub right_loop: RightLoop,
    pub projection: Vec<usize>,
}

/// `(R_1∘x) ∘ (R_1∘y) = R_1∘(x∘y)` on classes; class indices as in
/// [`Congruence::classes`].
pub fn quotient_loop(s: &RightLoop, r: &Congruence) -> QuotientLoop {
    let k = r.num_classes();
    let reps: Vec<usize> = r.classes().iter().map(|c| c[0]).collect();
    let mut table = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            table[a * k + b] = r.class_of(s.mul(reps[a], reps[b]));
        }
    }
    debug_assert!(r.classes().iter().all(|ca| r.classes().iter().all(|cb| {
        ca.iter().all(|&x| {
            cb.iter()
                .all(|&y| r.class_of(s.mul(x, y)) == r.class_of(s.mul(ca[0], cb[0])))
        })
    })));
    QuotientLoop {
        right_loop: RightLoop::from_flat(k, table)
            .expect("quotient of a right loop is a right loop"),
        projection: (0..s.order()).map(|x| r.class_of(x)).collect(),
    }
}

/// `S^(1)`: the identity class of the smallest abelian-group congruence.
pub fn derived_subloop(s: &RightLoop) -> InvariantSubloop {
    smallest_abelian_group_congruence(s).identity_class()
}

/// The sub right loop on `elements` (which must contain 0 and be closed)
/// as a loop in its own right, relabeled in sorted order. The returned map
/// sends new indices to old ones.
pub fn subloop_as_loop(s: &RightLoop, elements: &[usize]) -> (RightLoop, Vec<usize>) {
    let map = elements.to_vec();
    let mut back = vec![usize::MAX; s.order()];
    for (i, &x) in map.iter().enumerate() {
        back[x] = i;
    }
    let k = map.len();
    let table = (0..k * k)
        .map(|t| back[s.mul(map[t / k], map[t % k])])
        .collect();
    let sub = RightLoop::from_flat(k, table).expect("a closed subset containing 0 is a subloop");
    (sub, map)
}

/// `[S, S^(1), S^(2), ...]` in the indices of `s`, where each term is the
/// derived subloop of the previous one taken as a loop. Stops at `{0}` or at
/// the first repeated term.
pub fn derived_series_loop(s: &RightLoop) -> Vec<InvariantSubloop> {
    let mut series = vec![InvariantSubloop::whole(s.order())];
    loop {
        let last = series.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let (sub, map) = subloop_as_loop(s, last.elements());
        let d = derived_subloop(&sub);
        let mut next: Vec<usize> = d.elements().iter().map(|&i| map[i]).collect();
        next.sort_unstable();
        let next = InvariantSubloop { elements: next };
        if &next == last {
            series.push(next);
            break;
        }
        series.push(next);
    }
    series
}

pub fn is_solvable_loop(s: &RightLoop) -> bool {
    derived_series_loop(s).last().unwrap().is_trivial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric, FiniteGroup};

    fn order3_nonassoc() -> RightLoop {
        RightLoop::from_table(&[vec![0, 1, 2], vec![1, 0, 1], vec![2, 2, 0]]).unwrap()
    }

    fn s3_loop() -> (FiniteGroup, RightLoop) {
        let g = symmetric(3).unwrap();
        let l = RightLoop::from_group(&g);
        (g, l)
    }

    #[test]
    fn closure_extremes() {
        let s = order3_nonassoc();
        assert!(congruence_closure(&s, []).is_discrete());
        let all: Vec<(usize, usize)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        assert!(congruence_closure(&s, all).is_full());
    }

    #[test]
    fn identity_classes() {
        assert!(Congruence::discrete(4).identity_class().is_trivial());
        assert_eq!(Congruence::full(4).identity_class().len(), 4);
        let s = order3_nonassoc();
        assert_eq!(smallest_group_congruence(&s).identity_class().len(), 3);
    }

    #[test]
    fn congruence_from_invariant_examples() {
        let (g, l) = s3_loop();
        let d = congruence_from_invariant(&l, &InvariantSubloop::trivial()).unwrap();
        assert!(d.is_discrete());
        let f = congruence_from_invariant(&l, &InvariantSubloop::whole(6)).unwrap();
        assert!(f.is_full());
        let a3 = g.derived_subgroup();
        let i = check_invariant_subloop(&l, a3.elements()).unwrap();
        let r = congruence_from_invariant(&l, &i).unwrap();
        assert_eq!(r.num_classes(), 2);
        assert_eq!(r.classes()[0], a3.elements());
        let q = quotient_loop(&l, &r);
        assert!(q
            .right_loop
            .is_isomorphic(&RightLoop::from_group(&cyclic(2).unwrap()))
            .unwrap());
    }

    #[test]
    fn invariance_checks() {
        let (g, l) = s3_loop();
        assert!(is_invariant_subloop(&l, &[0]));
        assert!(is_invariant_subloop(&l, &(0..6).collect::<Vec<_>>()));
        // an order-2 subgroup of S3 is a subloop but not normal
        let t = (1..6).find(|&x| g.element_order(x) == 2).unwrap();
        assert!(!is_invariant_subloop(&l, &[0, t]));
        assert!(matches!(
            check_invariant_subloop(&l, &[1, 2]),
            Err(Error::NotInvariant(_))
        ));
    }

    #[test]
    fn order3_loop_has_only_trivial_invariant_subloops() {
        let s = order3_nonassoc();
        let subs = all_invariant_subloops(&s).unwrap();
        let sizes: Vec<usize> = subs.iter().map(InvariantSubloop::len).collect();
        assert_eq!(sizes, vec![1, 3]);
        assert!(order2_invariant_subloops(&s).is_empty());
    }

    #[test]
    fn c2_invariant_subloops() {
        let c2 = RightLoop::from_group(&cyclic(2).unwrap());
        let subs = all_invariant_subloops(&c2).unwrap();
        assert_eq!(
            subs,
            vec![InvariantSubloop::trivial(), InvariantSubloop::whole(2)]
        );
        assert_eq!(order2_invariant_subloops(&c2).len(), 1);
    }

    #[test]
    fn quotient_extremes() {
        let s = order3_nonassoc();
        let q = quotient_loop(&s, &Congruence::discrete(3));
        assert_eq!(q.right_loop, s);
        let q = quotient_loop(&s, &Congruence::full(3));
        assert_eq!(q.right_loop.order(), 1);
    }

    #[test]
    fn group_congruences() {
        let (_, l) = s3_loop();
        assert!(smallest_group_congruence(&l).is_discrete());
        assert!(smallest_group_congruence(&order3_nonassoc()).is_full());
        let c6 = RightLoop::from_group(&cyclic(6).unwrap());
        assert!(smallest_abelian_group_congruence(&c6).is_discrete());
        let ab = smallest_abelian_group_congruence(&l);
        assert_eq!(ab.num_classes(), 2);
        assert_eq!(ab.classes()[0].len(), 3);
    }

    #[test]
    fn derived_series_examples() {
        let c4 = RightLoop::from_group(&cyclic(4).unwrap());
        let series = derived_series_loop(&c4);
        assert_eq!(series.len(), 2);
        assert!(is_solvable_loop(&c4));

        let (g, l) = s3_loop();
        assert_eq!(
            derived_subloop(&l).elements(),
            g.derived_subgroup().elements()
        );
        let sizes: Vec<usize> = derived_series_loop(&l)
            .iter()
            .map(InvariantSubloop::len)
            .collect();
        assert_eq!(sizes, vec![6, 3, 1]);

        let s = order3_nonassoc();
        let sizes: Vec<usize> = derived_series_loop(&s)
            .iter()
            .map(InvariantSubloop::len)
            .collect();
        assert_eq!(sizes, vec![3, 3]);
        assert!(!is_solvable_loop(&s));

        let one = RightLoop::from_table(&[vec![0]]).unwrap();
        assert!(is_solvable_loop(&one));
    }

    #[test]
    fn subloop_as_loop_examples() {
        let (g, l) = s3_loop();
        let (triv, _) = subloop_as_loop(&l, &[0]);
        assert_eq!(triv.order(), 1);
        let (same, _) = subloop_as_loop(&l, &(0..6).collect::<Vec<_>>());
        assert_eq!(same, l);
        let (a3, map) = subloop_as_loop(&l, g.derived_subgroup().elements());
        assert_eq!(map.len(), 3);
        assert!(a3
            .is_isomorphic(&RightLoop::from_group(&cyclic(3).unwrap()))
            .unwrap());
    }

    #[test]
    fn from_partition_rejects_bad_input() {
        let (_, l) = s3_loop();
        assert!(Congruence::from_partition(&l, &[vec![0, 1], vec![2, 3, 4, 5]]).is_err());
        assert!(Congruence::from_partition(&l, &[vec![0], vec![1]]).is_err());
        assert!(Congruence::from_partition(&l, &[(0..6).collect()]).is_ok());
    }
}
