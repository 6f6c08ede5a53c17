//! Right transversals of a subgroup, the right loop they induce, the maps
//! `f` and `θ`, and certificate checks tying loop quotients back to group
//! quotients.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::congruence::{
    check_invariant_subloop, congruence_closure, congruence_from_invariant, derived_series_loop,
    quotient_loop, Congruence,
};
use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteGroup, Subgroup};
use crate::rightloop::{loop_invariant, RightLoop};

/// Default bound on the number of transversals enumerated exhaustively.
pub const DEFAULT_TRANSVERSAL_CAP: u128 = 100_000;

/// One chosen element per right coset; `reps[i]` lies in coset `i` and
/// `reps[0] = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Transversal {
    reps: Vec<usize>,
}

impl Transversal {
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// A group, a subgroup and its right cosets in canonical order.
#[derive(Debug, Clone)]
pub struct CosetSpace<'a> {
    group: &'a FiniteGroup,
    subgroup: &'a Subgroup,
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
}

impl<'a> CosetSpace<'a> {
    pub fn new(group: &'a FiniteGroup, subgroup: &'a Subgroup) -> Self {
        let cosets = group.right_cosets(subgroup);
        let mut coset_of = vec![0; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of[x] = i;
            }
        }
        CosetSpace {
            group,
            subgroup,
            cosets,
            coset_of,
        }
    }

    pub fn group(&self) -> &'a FiniteGroup {
        self.group
    }

    pub fn subgroup(&self) -> &'a Subgroup {
        self.subgroup
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn index(&self) -> usize {
        self.cosets.len()
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// `|H|^(index - 1)`, saturating.
    pub fn transversal_count(&self) -> u128 {
        let h = self.subgroup.order() as u128;
        (1..self.index()).fold(1u128, |acc, _| acc.saturating_mul(h))
    }

    /// Validates a list of representatives given in coset order.
    pub fn transversal(&self, reps: Vec<usize>) -> Result<Transversal> {
        if reps.len() != self.index() {
            return Err(Error::PreconditionFailed(format!(
                "{} representatives for {} cosets",
                reps.len(),
                self.index()
            )));
        }
        if reps[0] != 0 {
            return Err(Error::PreconditionFailed(
                "representative of H must be the identity".into(),
            ));
        }
        for (i, &r) in reps.iter().enumerate() {
            if r >= self.group.order() || self.coset_of[r] != i {
                return Err(Error::PreconditionFailed(format!(
                    "element {r} is not in coset {i}"
                )));
            }
        }
        Ok(Transversal { reps })
    }

    /// Every transversal, lexicographic in the representative list.
    pub fn transversals(&self, cap: u128) -> Result<TransversalIter<'_, 'a>> {
        if self.transversal_count() > cap {
            return Err(Error::CapExceeded {
                what: "transversal count (use sampling)",
                cap: cap.min(usize::MAX as u128) as usize,
            });
        }
        Ok(self.transversals_unbounded())
    }

    fn transversals_unbounded(&self) -> TransversalIter<'_, 'a> {
        TransversalIter {
            space: self,
            choice: vec![0; self.index()],
            done: false,
        }
    }

    /// `k` transversals drawn independently, one uniform choice per coset.
    pub fn sample<R: Rng>(&self, k: usize, rng: &mut R) -> Vec<Transversal> {
        (0..k)
            .map(|_| {
                let mut reps = vec![0];
                for c in &self.cosets[1..] {
                    reps.push(c[rng.gen_range(0..c.len())]);
                }
                Transversal { reps }
            })
            .collect()
    }

    pub fn is_generating(&self, t: &Transversal) -> bool {
        self.group.subgroup_closure(t.reps()).order() == self.group.order()
    }

    /// Greedy choice maximizing closure growth coset by coset, then an
    /// exhaustive scan if the greedy pick does not generate.
    pub fn find_generating_transversal(&self) -> Result<Transversal> {
        if !self.group.is_core_free(self.subgroup) {
            return Err(Error::NotCoreFree);
        }
        let mut reps = vec![0];
        for c in &self.cosets[1..] {
            let best = c
                .iter()
                .copied()
                .max_by_key(|&x| {
                    let mut seed = reps.clone();
                    seed.push(x);
                    // prefer larger closures, then smaller elements
                    (
                        self.group.subgroup_closure(&seed).order(),
                        std::cmp::Reverse(x),
                    )
                })
                .unwrap();
            reps.push(best);
        }
        let t = Transversal { reps };
        if self.is_generating(&t) {
            return Ok(t);
        }
        self.transversals_unbounded()
            .find(|t| self.is_generating(t))
            .ok_or(Error::ExhaustedWithoutWitness)
    }

    pub fn induced_loop<'s>(&'s self, t: &Transversal) -> InducedLoop<'s> {
        let n = self.index();
        let g = self.group;
        let reps = t.reps();
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = self.coset_of[g.mul(reps[x], reps[y])];
            }
        }
        let right_loop =
            RightLoop::from_flat(n, table).expect("a transversal induces a right loop");
        InducedLoop {
            space: self,
            transversal: t.clone(),
            right_loop,
        }
    }

    /// Partitions every transversal's induced loop into isomorphism classes.
    pub fn transversal_iso_classes(&self, cap: u128) -> Result<IsoClasses> {
        let mut buckets: BTreeMap<_, Vec<(Transversal, RightLoop)>> = BTreeMap::new();
        let mut total = 0u64;
        for t in self.transversals(cap)? {
            total += 1;
            let l = self.induced_loop(&t).right_loop;
            let key = loop_invariant(&l);
            let bucket = buckets.entry(key).or_default();
            let mut known = false;
            for (_, rep) in bucket.iter() {
                if rep.is_isomorphic(&l)? {
                    known = true;
                    break;
                }
            }
            if !known {
                bucket.push((t, l));
            }
        }
        let mut representatives: Vec<Transversal> =
            buckets.into_values().flatten().map(|(t, _)| t).collect();
        representatives.sort();
        Ok(IsoClasses {
            transversals: total,
            representatives,
        })
    }
}

pub struct TransversalIter<'s, 'a> {
    space: &'s CosetSpace<'a>,
    choice: Vec<usize>,
    done: bool,
}

impl Iterator for TransversalIter<'_, '_> {
    type Item = Transversal;

    fn next(&mut self) -> Option<Transversal> {
        if self.done {
            return None;
        }
        let cosets = &self.space.cosets;
        let reps = self.choice.iter().zip(cosets).map(|(&i, c)| c[i]).collect();
        // odometer, last coset fastest; coset 0 stays on the identity
        let mut k = cosets.len();
        loop {
            if k <= 1 {
                self.done = true;
                break;
            }
            k -= 1;
            self.choice[k] += 1;
            if self.choice[k] < cosets[k].len() {
                break;
            }
            self.choice[k] = 0;
        }
        Some(Transversal { reps })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoClasses {
    pub transversals: u64,
    pub representatives: Vec<Transversal>,
}

impl IsoClasses {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// A transversal together with the right loop it induces. Loop element `x`
/// is the representative `reps[x]` of coset `x`.
#[derive(Debug, Clone)]
pub struct InducedLoop<'a> {
    space: &'a CosetSpace<'a>,
    transversal: Transversal,
    right_loop: RightLoop,
}

impl<'a> InducedLoop<'a> {
    pub fn right_loop(&self) -> &RightLoop {
        &self.right_loop
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    pub fn space(&self) -> &'a CosetSpace<'a> {
        self.space
    }

    /// Group element behind loop element `x`.
    pub fn element(&self, x: usize) -> usize {
        self.transversal.reps[x]
    }

    pub fn elements_of(&self, xs: &[usize]) -> ElementSet {
        xs.iter().map(|&x| self.element(x)).collect()
    }

    /// Loop elements whose representative lies in `set`.
    pub fn loop_part(&self, set: &ElementSet) -> Vec<usize> {
        (0..self.right_loop.order())
            .filter(|&x| set.contains(self.element(x)))
            .collect()
    }

    /// `f(x, y) = x y (x∘y)^-1`, an element of `H`.
    pub fn f_map(&self, x: usize, y: usize) -> usize {
        let g = self.space.group;
        let xy = g.mul(self.element(x), self.element(y));
        let h = g.mul(xy, g.inv(self.element(self.right_loop.mul(x, y))));
        assert!(self.space.subgroup.contains(h), "f({x},{y}) = {h} not in H");
        h
    }

    /// `x θ h`: the representative of the coset `H x h`.
    pub fn theta(&self, x: usize, h: usize) -> usize {
        self.space
            .coset_of(self.space.group.mul(self.element(x), h))
    }

    /// All pairs `(x, x θ h)` for `x ∈ S`, `h ∈ H`.
    pub fn theta_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.right_loop.order();
        let h = self.space.subgroup.elements();
        (0..n)
            .flat_map(|x| h.iter().map(move |&k| (x, k)))
            .map(|(x, k)| (x, self.theta(x, k)))
            .collect()
    }

    /// `x θ^S f^S(y,z) = x θ f(y,z)` for every triple.
    pub fn check_lemma4(&self) -> Result<()> {
        let n = self.right_loop.order();
        for y in 0..n {
            for z in 0..n {
                let h = self.f_map(y, z);
                for x in 0..n {
                    let lhs = self.right_loop.f_s_at(x, y, z);
                    let rhs = self.theta(x, h);
                    if lhs != rhs {
                        return Err(Error::violation(
                            "x θ^S f^S(y,z) = x θ f(y,z)",
                            format!("x={x} y={y} z={z}: {lhs} != {rhs}"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Certifies that `class(x) -> x N` is a well-defined isomorphism from
    /// `S/R` onto `G/N`.
    fn certify_quotient_iso(
        &self,
        r: &Congruence,
        n: &Subgroup,
        check: &'static str,
    ) -> Result<Vec<usize>> {
        let g = self.space.group;
        let gq = g
            .quotient(n)
            .map_err(|_| Error::violation(check, "N is not normal"))?;
        let sq = quotient_loop(&self.right_loop, r);
        let k = sq.right_loop.order();
        if k != gq.group.order() {
            return Err(Error::violation(
                check,
                format!("|S/R| = {k} but |G/N| = {}", gq.group.order()),
            ));
        }
        let mut map = vec![usize::MAX; k];
        for x in 0..self.right_loop.order() {
            let c = sq.projection[x];
            let img = gq.projection[self.element(x)];
            if map[c] == usize::MAX {
                map[c] = img;
            } else if map[c] != img {
                return Err(Error::violation(
                    check,
                    format!("class {c} maps to both coset {} and {img}", map[c]),
                ));
            }
        }
        let mut hit = vec![false; k];
        for &m in &map {
            if hit[m] {
                return Err(Error::violation(check, format!("coset {m} hit twice")));
            }
            hit[m] = true;
        }
        for a in 0..k {
            for b in 0..k {
                if map[sq.right_loop.mul(a, b)] != gq.group.mul(map[a], map[b]) {
                    return Err(Error::violation(
                        check,
                        format!("classes {a},{b}: x ↦ xN is not multiplicative"),
                    ));
                }
            }
        }
        Ok(map)
    }

    /// For `H ≤ N ⊴ G`: `S ∩ N` is an invariant subloop and
    /// `G/N ≅ S/(S ∩ N)` through `x ↦ xN`. Returns the class-to-coset map.
    pub fn lemma_a_check(&self, n: &Subgroup) -> Result<Vec<usize>> {
        let g = self.space.group;
        if !g.is_normal(n) {
            return Err(Error::PreconditionFailed("N is not normal in G".into()));
        }
        if !self.space.subgroup.is_subgroup_of(n) {
            return Err(Error::PreconditionFailed("H is not contained in N".into()));
        }
        const CHECK: &str = "G/N ≅ S/(N∩S)";
        let part = self.loop_part(n.as_set());
        let inv = check_invariant_subloop(&self.right_loop, &part)
            .map_err(|e| Error::violation(CHECK, format!("S∩N = {part:?}: {e}")))?;
        let r = congruence_from_invariant(&self.right_loop, &inv)
            .map_err(|e| Error::violation(CHECK, e.to_string()))?;
        self.certify_quotient_iso(&r, n, CHECK)
    }

    /// The smallest congruence containing every `(x, x θ h)`.
    pub fn theta_congruence(&self) -> Congruence {
        congruence_closure(&self.right_loop, self.theta_pairs())
    }

    /// For a congruence `T` containing every `(x, x θ h)`: `S/T` is a group,
    /// `N = H T_1` is a normal subgroup containing `H` with `N ∩ S = T_1`, and
    /// `G/N ≅ S/T`. Returns `N`.
    pub fn lemma_b_check(&self, t: &Congruence) -> Result<Subgroup> {
        let s = &self.right_loop;
        if t.order() != s.order() {
            return Err(Error::PreconditionFailed(
                "congruence on a different loop".into(),
            ));
        }
        if let Some((x, y)) = self
            .theta_pairs()
            .into_iter()
            .find(|&(x, y)| !t.related(x, y))
        {
            return Err(Error::PreconditionFailed(format!(
                "({x}, {y}) is a θ-pair outside T"
            )));
        }
        let g = self.space.group;
        let h = self.space.subgroup;
        let q = quotient_loop(s, t);
        if let Some((a, b, c)) = q.right_loop.associativity_witness() {
            return Err(Error::violation(
                "S/T is a group",
                format!("classes ({a},{b},{c}) do not associate"),
            ));
        }
        let t1 = t.identity_class();
        let n_set = g.set_product(h.as_set(), &self.elements_of(t1.elements()));
        let n = g
            .as_subgroup(&n_set)
            .map_err(|e| Error::violation("HT_1 is a subgroup", e.to_string()))?;
        if !g.is_normal(&n) {
            return Err(Error::violation("HT_1 ⊴ G", format!("{:?}", n.elements())));
        }
        if !h.is_subgroup_of(&n) {
            return Err(Error::violation("H ≤ N", format!("{:?}", n.elements())));
        }
        let meet = self.loop_part(n.as_set());
        if meet != t1.elements() {
            return Err(Error::violation(
                "N∩S = T_1",
                format!("N∩S = {meet:?}, T_1 = {:?}", t1.elements()),
            ));
        }
        self.certify_quotient_iso(t, &n, "G/N ≅ S/T")?;
        Ok(n)
    }

    /// Recomputes both sides of the set identities in the solvability
    /// argument for a generating transversal of a core-free subgroup.
    pub fn proof_chain_check(&self) -> Result<ProofChainReport> {
        let g = self.space.group;
        let h = self.space.subgroup;
        if !g.is_core_free(h) {
            return Err(Error::PreconditionFailed("H is not core-free".into()));
        }
        if !self.space.is_generating(&self.transversal) {
            return Err(Error::PreconditionFailed("S does not generate G".into()));
        }
        let loop_series: Vec<ElementSet> = derived_series_loop(&self.right_loop)
            .iter()
            .map(|t| self.elements_of(t.elements()))
            .collect();
        let group_series: Vec<ElementSet> = g
            .derived_series()
            .into_iter()
            .map(|k| k.as_set().clone())
            .collect();
        let depth = loop_series.len().max(group_series.len());
        let s_term = |k: usize| &loop_series[k.min(loop_series.len() - 1)];
        let g_term = |k: usize| &group_series[k.min(group_series.len() - 1)];
        let hs = |set: &ElementSet| g.set_product(h.as_set(), set);
        let s_all = self.elements_of(&(0..self.right_loop.order()).collect::<Vec<_>>());

        let mut report = ProofChainReport::default();
        let hg1 = hs(g_term(1));
        report.record(
            "S∩HG^(1) = S^(1)",
            1,
            &s_all.intersection(&hg1),
            s_term(1),
            Relation::Equal,
        );
        report.record("HG^(1) = HS^(1)", 1, &hg1, &hs(s_term(1)), Relation::Equal);
        for k in 1..=depth {
            let prev = hs(s_term(k - 1));
            let lhs = hs(s_term(k));
            match g.as_subgroup(&prev) {
                Ok(p) => {
                    let rhs = hs(g.derived_subgroup_of(&p).as_set());
                    report.record("HS^(n) = H(HS^(n-1))^(1)", k, &lhs, &rhs, Relation::Equal);
                }
                Err(e) => report.fail("HS^(n) = H(HS^(n-1))^(1)", k, format!("HS^(n-1) {e}")),
            }
            report.record(
                "HS^(n) ⊇ HG^(n)",
                k,
                &lhs,
                &hs(g_term(k)),
                Relation::Superset,
            );
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, Copy)]
enum Relation {
    Equal,
    Superset,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainStep {
    pub equation: &'static str,
    pub n: usize,
    pub holds: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ProofChainReport {
    pub steps: Vec<ChainStep>,
}

impl ProofChainReport {
    fn record(
        &mut self,
        equation: &'static str,
        n: usize,
        lhs: &ElementSet,
        rhs: &ElementSet,
        rel: Relation,
    ) {
        let holds = match rel {
            Relation::Equal => lhs == rhs,
            Relation::Superset => rhs.is_subset(lhs),
        };
        let detail = (!holds).then(|| format!("lhs {:?} rhs {:?}", lhs.elements(), rhs.elements()));
        self.steps.push(ChainStep {
            equation,
            n,
            holds,
            detail,
        });
    }

    fn fail(&mut self, equation: &'static str, n: usize, detail: String) {
        self.steps.push(ChainStep {
            equation,
            n,
            holds: false,
            detail: Some(detail),
        });
    }

    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }

    pub fn first_failure(&self) -> Option<&ChainStep> {
        self.steps.iter().find(|s| !s.holds)
    }
}
