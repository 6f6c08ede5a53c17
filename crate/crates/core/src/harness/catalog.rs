use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::{
    alternating, cyclic, dihedral, direct_product, from_permutations, quaternion8, symmetric,
    FiniteGroup, Subgroup, DEFAULT_SUBGROUP_ENUM_CAP,
};
use crate::perm::Perm;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub group: FiniteGroup,
    /// Stress entries always run in sampling mode, on one subgroup per
    /// conjugacy class.
    pub stress: bool,
}

impl CatalogEntry {
    /// Subgroups to sweep: all of them, or conjugacy-class representatives
    /// for stress entries.
    pub fn subgroups(&self) -> Result<Vec<Subgroup>> {
        let g = &self.group;
        let cap = if self.stress {
            g.order()
        } else {
            DEFAULT_SUBGROUP_ENUM_CAP
        };
        let all = g.all_subgroups(cap)?;
        if !self.stress {
            return Ok(all);
        }
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut reps = Vec::new();
        for h in all {
            if seen.contains(h.elements()) {
                continue;
            }
            for x in 0..g.order() {
                seen.insert(g.conjugate(&h, x).elements().to_vec());
            }
            reps.push(h);
        }
        Ok(reps)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

fn c(n: usize) -> FiniteGroup {
    cyclic(n).expect("catalog order within cap")
}

fn x(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    direct_product(a, b).expect("catalog order within cap")
}

/// SL(2,3) acting on the eight nonzero vectors of F_3^2.
fn sl23() -> FiniteGroup {
    let vectors: Vec<(usize, usize)> = (0..9)
        .map(|k| (k / 3, k % 3))
        .filter(|&v| v != (0, 0))
        .collect();
    let act = |m: [[usize; 2]; 2]| {
        let images: Vec<usize> = vectors
            .iter()
            .map(|&(a, b)| {
                let w = (
                    (m[0][0] * a + m[0][1] * b) % 3,
                    (m[1][0] * a + m[1][1] * b) % 3,
                );
                vectors.iter().position(|&v| v == w).unwrap()
            })
            .collect();
        Perm::from_images(&images).unwrap()
    };
    from_permutations(&[act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])], 8).unwrap()
}

impl Catalog {
    /// The built-in groups of order at most `max_order`, smallest first.
    /// `A5` is not included; see [`Catalog::stress`].
    pub fn builtin(max_order: usize) -> Catalog {
        let mut groups: Vec<(String, FiniteGroup)> = Vec::new();
        for n in 1..=16 {
            groups.push((format!("C{n}"), c(n)));
        }
        groups.push(("V4".into(), x(&c(2), &c(2))));
        groups.push(("S3".into(), symmetric(3).unwrap()));
        for n in 3..=8 {
            groups.push((format!("D{}", 2 * n), dihedral(n).unwrap()));
        }
        groups.push(("Q8".into(), quaternion8().unwrap()));
        groups.push(("C2xC4".into(), x(&c(2), &c(4))));
        groups.push(("C2xC2xC2".into(), x(&c(2), &x(&c(2), &c(2)))));
        groups.push(("C3xC3".into(), x(&c(3), &c(3))));
        groups.push(("A4".into(), alternating(4).unwrap()));
        groups.push(("C2xC6".into(), x(&c(2), &c(6))));
        groups.push(("C2xC8".into(), x(&c(2), &c(8))));
        groups.push(("C4xC4".into(), x(&c(4), &c(4))));
        groups.push(("C2xC2xC4".into(), x(&c(2), &x(&c(2), &c(4)))));
        groups.push(("C2^4".into(), x(&x(&c(2), &c(2)), &x(&c(2), &c(2)))));
        groups.push(("C2xD8".into(), x(&c(2), &dihedral(4).unwrap())));
        groups.push(("C2xQ8".into(), x(&c(2), &quaternion8().unwrap())));
        groups.push(("C3xS3".into(), x(&c(3), &symmetric(3).unwrap())));
        groups.push(("S4".into(), symmetric(4).unwrap()));
        groups.push(("C2xA4".into(), x(&c(2), &alternating(4).unwrap())));
        groups.push(("C4xS3".into(), x(&c(4), &symmetric(3).unwrap())));
        groups.push(("C2xD12".into(), x(&c(2), &dihedral(6).unwrap())));
        groups.push(("SL(2,3)".into(), sl23()));
        groups.retain(|(_, g)| g.order() <= max_order);
        groups.sort_by_key(|(_, g)| g.order());
        Catalog {
            entries: groups
                .into_iter()
                .map(|(name, group)| CatalogEntry {
                    name,
                    group,
                    stress: false,
                })
                .collect(),
        }
    }

    /// The non-solvable stress case `A5`.
    pub fn stress() -> Catalog {
        Catalog {
            entries: vec![CatalogEntry {
                name: "A5".into(),
                group: alternating(5).unwrap(),
                stress: true,
            }],
        }
    }

    pub fn single(name: &str, group: FiniteGroup) -> Catalog {
        Catalog {
            entries: vec![CatalogEntry {
                name: name.into(),
                group,
                stress: false,
            }],
        }
    }

    pub fn add(&mut self, name: &str, group: FiniteGroup) -> Result<()> {
        if self.entries.iter().any(|e| e.name == name) {
            return Err(Error::PreconditionFailed(format!(
                "duplicate catalog name {name}"
            )));
        }
        self.entries.push(CatalogEntry {
            name: name.into(),
            group,
            stress: false,
        });
        Ok(())
    }

    pub fn extend(&mut self, other: Catalog) -> Result<()> {
        for e in other.entries {
            if self.entries.iter().any(|f| f.name == e.name) {
                return Err(Error::PreconditionFailed(format!(
                    "duplicate catalog name {}",
                    e.name
                )));
            }
            self.entries.push(e);
        }
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_is_filtered_and_unique() {
        let cat = Catalog::builtin(24);
        let names: BTreeSet<&str> = cat.entries().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names.len(), cat.entries().len());
        assert!(cat.entries().iter().all(|e| e.group.order() <= 24));
        assert!(Catalog::builtin(16)
            .entries()
            .iter()
            .all(|e| e.group.order() <= 16));
        assert!(cat.get("S4").is_some());
    }

    #[test]
    fn sl23_has_a_unique_involution() {
        let g = sl23();
        assert_eq!(g.order(), 24);
        assert_eq!((0..24).filter(|&x| g.element_order(x) == 2).count(), 1);
        assert!(g.is_solvable());
    }

    #[test]
    fn stress_uses_class_representatives() {
        let cat = Catalog::stress();
        let subs = cat.entries()[0].subgroups().unwrap();
        // A5 has 9 conjugacy classes of subgroups
        assert_eq!(subs.len(), 9);
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut cat = Catalog::builtin(4);
        assert!(cat.add("C2", c(2)).is_err());
        assert!(cat.add("mine", c(2)).is_ok());
    }
}
