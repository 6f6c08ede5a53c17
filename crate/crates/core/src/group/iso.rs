use super::FiniteGroup;
use crate::error::{Error, Result};

impl FiniteGroup {
    /// Small generating set, picked greedily from elements of largest order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.order()).collect();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut span = self.trivial();
        for x in by_order {
            if span.order() == self.order() {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = self.subgroup_closure(&gens);
            }
        }
        gens
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> Result<bool> {
        Ok(self.find_isomorphism(other)?.is_some())
    }

    /// Searches for an isomorphism `self -> other`, returned as an image
    /// array. Backtracks over images of a generating set, restricted to
    /// elements of matching order.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Result<Option<Vec<usize>>> {
        let cap = super::DEFAULT_GROUP_CAP;
        if self.order() > cap || other.order() > cap {
            return Err(Error::CapExceeded {
                what: "group order for isomorphism test",
                cap,
            });
        }
        if self.order() != other.order() {
            return Ok(None);
        }
        let ord_a: Vec<usize> = (0..self.order()).map(|x| self.element_order(x)).collect();
        let ord_b: Vec<usize> = (0..other.order()).map(|x| other.element_order(x)).collect();
        let (mut sa, mut sb) = (ord_a.clone(), ord_b.clone());
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return Ok(None);
        }
        let gens = self.generating_set();
        let mut images = Vec::with_capacity(gens.len());
        Ok(self.extend_iso(other, &gens, &mut images, &ord_a, &ord_b))
    }

    fn extend_iso(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        images: &mut Vec<usize>,
        ord_a: &[usize],
        ord_b: &[usize],
    ) -> Option<Vec<usize>> {
        let map = partial_hom(self, other, &gens[..images.len()], images)?;
        if images.len() == gens.len() {
            return map.iter().all(|&m| m != usize::MAX).then_some(map);
        }
        let g = gens[images.len()];
        for cand in 0..other.order() {
            if ord_b[cand] != ord_a[g] {
                continue;
            }
            images.push(cand);
            if let Some(found) = self.extend_iso(other, gens, images, ord_a, ord_b) {
                return Some(found);
            }
            images.pop();
        }
        None
    }
}

/// Extends `gens[i] -> images[i]` over the subgroup they generate by walking
/// the Cayley graph. Returns `None` if the extension is inconsistent or not
/// injective; unreached elements stay `usize::MAX`.
fn partial_hom(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; a.order()];
    let mut used = vec![false; b.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &img) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let want = b.mul(map[x], img);
            if map[y] == usize::MAX {
                if used[want] {
                    return None;
                }
                map[y] = want;
                used[want] = true;
                queue.push(y);
            } else if map[y] != want {
                return None;
            }
        }
    }
    Some(map)
}
