//! Green's relations, regular D-classes and Schützenberger groups.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{table_isomorphism, FinSemigroupZ};

/// Multiplication table of a finite group, with identity `0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupTable {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub fingerprint: GroupFingerprint,
}

/// Isomorphism-invariant summary of a group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupFingerprint {
    pub order: usize,
    pub abelian: bool,
    /// Sorted multiset of element orders.
    pub element_orders: Vec<usize>,
}

impl GroupTable {
    pub fn trivial() -> Self {
        Self::from_table(vec![vec![0]])
    }

    /// Wraps a group table whose identity is element `0`.
    pub fn from_table(table: Vec<Vec<usize>>) -> Self {
        let order = table.len();
        let abelian = (0..order).all(|a| (0..order).all(|b| table[a][b] == table[b][a]));
        let mut element_orders: Vec<usize> = (0..order)
            .map(|g| {
                let (mut x, mut k) = (g, 1);
                while x != 0 {
                    x = table[x][g];
                    k += 1;
                }
                k
            })
            .collect();
        element_orders.sort_unstable();
        GroupTable {
            order,
            table,
            fingerprint: GroupFingerprint { order, abelian, element_orders },
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Checks identity, inverses and associativity.
    pub fn is_group(&self) -> bool {
        let n = self.order;
        let t = &self.table;
        (0..n).all(|a| t[0][a] == a && t[a][0] == a)
            && (0..n).all(|a| (0..n).any(|b| t[a][b] == 0))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
    }

    pub fn is_isomorphic(&self, other: &GroupTable) -> bool {
        self.fingerprint == other.fingerprint
            && table_isomorphism(&self.table, &other.table).is_some()
    }

    /// Short human-readable name: `1`, `C2`, ... or `G<order>` when not cyclic.
    pub fn label(&self) -> String {
        let fp = &self.fingerprint;
        if fp.order == 1 {
            "1".into()
        } else if fp.element_orders.last() == Some(&fp.order) {
            format!("C{}", fp.order)
        } else {
            format!("G{}{}", fp.order, if fp.abelian { "ab" } else { "" })
        }
    }
}

/// One D-class (equivalently J-class) of a finite semigroup.
#[derive(Debug, Clone)]
pub struct DClass {
    pub members: Vec<usize>,
    pub regular: bool,
    pub idempotents: Vec<usize>,
    /// H-classes contained in this D-class.
    pub h_classes: Vec<usize>,
    pub group: GroupTable,
}

#[derive(Debug, Clone)]
pub struct GreenStructure {
    pub r_class: Vec<usize>,
    pub l_class: Vec<usize>,
    pub h_class: Vec<usize>,
    pub d_class: Vec<usize>,
    pub h_classes: Vec<Vec<usize>>,
    pub d_classes: Vec<DClass>,
    pub idempotents: Vec<usize>,
    /// `ideal[x]` is the two-sided ideal `S¹xS¹` as a bit set.
    ideal: Vec<FixedBitSet>,
}

impl GreenStructure {
    pub fn r_count(&self) -> usize {
        self.r_class.iter().max().map_or(0, |m| m + 1)
    }

    pub fn l_count(&self) -> usize {
        self.l_class.iter().max().map_or(0, |m| m + 1)
    }

    /// Whether `x` lies in the ideal generated by `y` (`y` is a factor of `x`).
    pub fn divides(&self, y: usize, x: usize) -> bool {
        self.ideal[y].contains(x)
    }

    /// D-class order: `below(a, b)` iff members of `b` are factors of members of `a`.
    pub fn d_below(&self, a: usize, b: usize) -> bool {
        self.divides(self.d_classes[b].members[0], self.d_classes[a].members[0])
    }

    pub fn same_d(&self, x: usize, y: usize) -> bool {
        self.d_class[x] == self.d_class[y]
    }
}

fn classes(sets: &[FixedBitSet]) -> Vec<usize> {
    let mut ids: HashMap<&FixedBitSet, usize> = HashMap::new();
    sets.iter()
        .map(|s| {
            let n = ids.len();
            *ids.entry(s).or_insert(n)
        })
        .collect()
}

/// Computes R, L, H and D (= J) from principal ideals over `S¹`, regularity,
/// and the Schützenberger group of each D-class.
pub fn green_structure(s: &FinSemigroupZ) -> GreenStructure {
    let n = s.len();
    let mut right = vec![FixedBitSet::with_capacity(n); n];
    let mut left = vec![FixedBitSet::with_capacity(n); n];
    for x in 0..n {
        right[x].insert(x);
        left[x].insert(x);
        for y in 0..n {
            right[x].insert(s.mul(x, y));
            left[x].insert(s.mul(y, x));
        }
    }
    let mut ideal = vec![FixedBitSet::with_capacity(n); n];
    for x in 0..n {
        for u in left[x].ones() {
            ideal[x].union_with(&right[u]);
        }
    }
    let r_class = classes(&right);
    let l_class = classes(&left);
    let d_class = classes(&ideal);
    let mut h_ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut h_classes: Vec<Vec<usize>> = Vec::new();
    let h_class: Vec<usize> = (0..n)
        .map(|x| {
            let id = *h_ids.entry((r_class[x], l_class[x])).or_insert_with(|| {
                h_classes.push(Vec::new());
                h_classes.len() - 1
            });
            h_classes[id].push(x);
            id
        })
        .collect();
    let idempotents = s.idempotents();
    let d_count = d_class.iter().max().map_or(0, |m| m + 1);
    let mut d_classes: Vec<DClass> = (0..d_count)
        .map(|_| DClass {
            members: Vec::new(),
            regular: false,
            idempotents: Vec::new(),
            h_classes: Vec::new(),
            group: GroupTable::trivial(),
        })
        .collect();
    for x in 0..n {
        d_classes[d_class[x]].members.push(x);
    }
    for &e in &idempotents {
        let d = &mut d_classes[d_class[e]];
        d.regular = true;
        d.idempotents.push(e);
    }
    for (h, members) in h_classes.iter().enumerate() {
        d_classes[d_class[members[0]]].h_classes.push(h);
    }
    for d in &mut d_classes {
        let h = match d.idempotents.first() {
            Some(&e) => h_class[e],
            None => d.h_classes[0],
        };
        d.group = schutzenberger_group(s, &h_classes[h]);
    }
    GreenStructure {
        r_class,
        l_class,
        h_class,
        d_class,
        h_classes,
        d_classes,
        idempotents,
        ideal,
    }
}

/// Schützenberger group of an H-class: the permutations of `h` induced by
/// left multiplication by its left stabilizer in `S¹`.
pub(crate) fn schutzenberger_group(s: &FinSemigroupZ, h: &[usize]) -> GroupTable {
    let pos: HashMap<usize, usize> = h.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let identity: Vec<usize> = (0..h.len()).collect();
    let mut perms: Vec<Vec<usize>> = vec![identity];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(perms[0].clone(), 0)]);
    for x in 0..s.len() {
        let image: Option<Vec<usize>> = h.iter().map(|&y| pos.get(&s.mul(x, y)).copied()).collect();
        if let Some(p) = image {
            if !index.contains_key(&p) {
                index.insert(p.clone(), perms.len());
                perms.push(p);
            }
        }
    }
    // Left action: (xy)·h = x·(y·h), so the product of x and y maps h to x[y[h]].
    let table = perms
        .iter()
        .map(|px| {
            perms
                .iter()
                .map(|py| index[&py.iter().map(|&i| px[i]).collect::<Vec<_>>()])
                .collect()
        })
        .collect();
    GroupTable::from_table(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{minimal_automaton, Presentation};
    use crate::semigroup::{brandt_semigroup, transition_semigroup};

    fn sg(text: &str) -> FinSemigroupZ {
        transition_semigroup(&minimal_automaton(&Presentation::parse(text).unwrap()))
    }

    #[test]
    fn brandt_two() {
        let s = brandt_semigroup(2);
        let g = green_structure(&s);
        assert_eq!(g.d_classes.len(), 2);
        let nz = &g.d_classes[g.d_class[0]];
        assert_eq!(nz.members.len(), 4);
        assert_eq!(nz.idempotents.len(), 2);
        assert!(nz.group.is_trivial());
        assert_eq!(g.h_classes.len(), 5);
    }

    #[test]
    fn golden_mean_single_nonzero_class() {
        let s = sg("1 a 1\n1 b 2\n2 a 1\n");
        let g = green_structure(&s);
        assert_eq!(g.d_classes.len(), 2);
        let nz = &g.d_classes[g.d_class[0]];
        assert_eq!(nz.members.len(), 4);
        assert!(nz.regular);
        assert!(nz.group.is_trivial());
    }

    #[test]
    fn two_element_semigroup() {
        let s = sg("x a x\n");
        let g = green_structure(&s);
        assert_eq!(g.d_classes.len(), 2);
        assert!(g.d_classes.iter().all(|d| d.members.len() == 1 && d.regular));
    }

    #[test]
    fn even_shift_has_cyclic_group_of_order_two() {
        let s = sg("A 1 A\nA 0 B\nB 0 A\n");
        let g = green_structure(&s);
        let groups: Vec<String> = g.d_classes.iter().map(|d| d.group.label()).collect();
        assert!(groups.contains(&"C2".to_string()), "{groups:?}");
        for d in &g.d_classes {
            assert!(d.group.is_group());
        }
    }

    #[test]
    fn group_order_equals_h_class_size() {
        for text in ["A 1 A\nA 0 B\nB 0 A\n", "1 a 2\n2 a 3\n3 a 1\n3 b 3\n"] {
            let s = sg(text);
            let g = green_structure(&s);
            for d in &g.d_classes {
                let h = &g.h_classes[d.h_classes[0]];
                assert_eq!(d.group.order, h.len());
            }
        }
    }

    #[test]
    fn fingerprints() {
        let c3 = GroupTable::from_table(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
        assert_eq!(c3.label(), "C3");
        assert_eq!(c3.fingerprint.element_orders, vec![1, 3, 3]);
        let v4 = GroupTable::from_table(vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ]);
        assert_eq!(v4.label(), "G4ab");
        assert!(!c3.is_isomorphic(&v4));
        assert!(v4.is_isomorphic(&v4.clone()));
    }
}
