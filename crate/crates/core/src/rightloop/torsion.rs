use std::collections::HashMap;

use super::RightLoop;
use crate::error::{Error, Result};
use crate::group::{from_permutations_capped, ElementSet, FiniteGroup, Subgroup};
use crate::perm::{self, Perm};

/// Default bound on the number of permutations produced by a closure.
pub const DEFAULT_TORSION_CAP: usize = 1_000_000;

/// The group torsion `G_S`: the permutation group generated by all `f^S(y,z)`.
#[derive(Debug, Clone)]
pub struct TorsionGroup {
    degree: usize,
    elements: Vec<Perm>,
    /// `((y, z), f^S(y,z))` for every non-identity generator, in `(y, z)` order.
    generators: Vec<((usize, usize), Perm)>,
}

impl TorsionGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Sorted by image array; the identity is first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[((usize, usize), Perm)] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// `x θ^S h = h(x)`.
    pub fn act(x: usize, h: &Perm) -> usize {
        h.apply(x)
    }

    /// The torsion group as an abstract group; index `i` is `elements()[i]`.
    pub fn as_group(&self) -> FiniteGroup {
        let index: HashMap<&Perm, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        FiniteGroup::from_fn(self.elements.len(), |a, b| {
            index[&self.elements[a].then(&self.elements[b])]
        })
    }
}

/// `G_S S`: the group generated by the right translations of a loop, with
/// the image of `G_S` and the translations `R_x` located inside it.
#[derive(Debug, Clone)]
pub struct GSS {
    pub group: FiniteGroup,
    pub elements: Vec<Perm>,
    pub torsion: Subgroup,
    /// `translations[x]` is the index of `R_x`.
    pub translations: Vec<usize>,
}

impl RightLoop {
    pub fn torsion_group(&self) -> Result<TorsionGroup> {
        self.torsion_group_capped(DEFAULT_TORSION_CAP)
    }

    pub fn torsion_group_capped(&self, cap: usize) -> Result<TorsionGroup> {
        let n = self.order();
        let mut generators = Vec::new();
        for y in 0..n {
            for z in 0..n {
                let f = self.f_s(y, z);
                if !f.is_identity() {
                    generators.push(((y, z), f));
                }
            }
        }
        let mut distinct: Vec<Perm> = generators.iter().map(|(_, p)| p.clone()).collect();
        distinct.sort();
        distinct.dedup();
        let elements = perm::closure(&distinct, n, cap)?;
        Ok(TorsionGroup {
            degree: n,
            elements,
            generators,
        })
    }

    pub fn g_ss(&self) -> Result<GSS> {
        self.g_ss_capped(DEFAULT_TORSION_CAP)
    }

    pub fn g_ss_capped(&self, cap: usize) -> Result<GSS> {
        let n = self.order();
        let translations: Vec<Perm> = (0..n).map(|a| self.right_translation(a)).collect();
        let (group, elements) = from_permutations_capped(&translations, n, cap)?;
        let index: HashMap<&Perm, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let torsion = self.torsion_group_capped(cap)?;
        let mut torsion_idx = Vec::with_capacity(torsion.order());
        for p in torsion.elements() {
            match index.get(p) {
                Some(&i) => torsion_idx.push(i),
                None => {
                    return Err(Error::violation(
                        "G_S inside G_S S",
                        format!("torsion element {p} is not generated by right translations"),
                    ))
                }
            }
        }
        let torsion = group.as_subgroup(&ElementSet::new(torsion_idx))?;
        let translations = translations.iter().map(|p| index[p]).collect();
        Ok(GSS {
            group,
            elements,
            torsion,
            translations,
        })
    }
}
