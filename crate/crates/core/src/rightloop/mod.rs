//! Right loops: finite sets with a two-sided identity 0 in which every
//! equation `X ∘ a = b` has exactly one solution.

mod iso;
mod torsion;

pub use iso::{loop_invariant, MAX_ISO_ORDER};
pub use torsion::{TorsionGroup, DEFAULT_TORSION_CAP, GSS};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RightLoop {
    n: usize,
    table: Vec<usize>,
    // div[b * n + a] = the x with x ∘ a = b
    div: Vec<usize>,
}

impl RightLoop {
    /// Validates a table with `table[x][a] = x ∘ a`. Groups pass as loops.
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
        RightLoop::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<usize>) -> Result<Self> {
        if (0..n).any(|j| table[j] != j || table[j * n] != j) {
            return Err(Error::NoIdentity);
        }
        let mut div = vec![usize::MAX; n * n];
        for a in 0..n {
            for x in 0..n {
                let b = table[x * n + a];
                if div[b * n + a] != usize::MAX {
                    return Err(Error::ColumnNotBijective(a));
                }
                div[b * n + a] = x;
            }
        }
        Ok(RightLoop { n, table, div })
    }

    /// The Cayley table of a group viewed as a right loop.
    pub fn from_group(g: &FiniteGroup) -> Self {
        let n = g.order();
        let table = (0..n * n).map(|k| g.mul(k / n, k % n)).collect();
        RightLoop::from_flat(n, table).expect("a group is a right loop")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `x ∘ a`
    #[inline]
    pub fn mul(&self, x: usize, a: usize) -> usize {
        self.table[x * self.n + a]
    }

    /// The unique `x` with `x ∘ a = b`.
    #[inline]
    pub fn right_solve(&self, a: usize, b: usize) -> usize {
        self.div[b * self.n + a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// Right translation `u -> u ∘ a`.
    pub fn right_translation(&self, a: usize) -> Perm {
        let images: Vec<usize> = (0..self.n).map(|u| self.mul(u, a)).collect();
        Perm::from_images(&images).expect("columns are bijective")
    }

    /// `f^S(y,z)`: sends `x` to the solution of `X ∘ (y∘z) = (x∘y) ∘ z`.
    pub fn f_s(&self, y: usize, z: usize) -> Perm {
        let images: Vec<usize> = (0..self.n).map(|x| self.f_s_at(x, y, z)).collect();
        Perm::from_images(&images).expect("f^S(y,z) is a bijection")
    }

    #[inline]
    pub fn f_s_at(&self, x: usize, y: usize, z: usize) -> usize {
        self.right_solve(self.mul(y, z), self.mul(self.mul(x, y), z))
    }

    /// First non-associating triple in lexicographic order.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.n {
            for y in 0..self.n {
                let xy = self.mul(x, y);
                for z in 0..self.n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Triple scan. Debug builds also check that the torsion generators are
    /// all trivial exactly when the scan passes.
    pub fn is_associative(&self) -> bool {
        let assoc = self.associativity_witness().is_none();
        debug_assert_eq!(assoc, self.torsion_generators_trivial());
        assoc
    }

    pub fn torsion_generators_trivial(&self) -> bool {
        (0..self.n).all(|y| (0..self.n).all(|z| (0..self.n).all(|x| self.f_s_at(x, y, z) == x)))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// The table as a group, if it is associative.
    pub fn as_group(&self) -> Option<FiniteGroup> {
        if !self.is_associative() {
            return None;
        }
        FiniteGroup::from_table(&self.rows()).ok()
    }

    /// Relabels elements: `perm[old] = new`. `perm[0]` must be 0.
    pub fn relabel(&self, perm: &[usize]) -> RightLoop {
        let n = self.n;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for a in 0..n {
                table[perm[x] * n + perm[a]] = perm[self.mul(x, a)];
            }
        }
        RightLoop::from_flat(n, table).expect("relabeling preserves the axioms")
    }
}
