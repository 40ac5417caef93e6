use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;

use super::FinSemigroupZ;

/// The local monoid `eSe` at an idempotent `e`.
#[derive(Debug, Clone)]
pub struct LocalMonoid {
    pub idempotent: usize,
    /// Elements of `eSe` (as elements of `S`), sorted.
    pub elements: Vec<usize>,
    /// Multiplication table indexed by positions in `elements`.
    pub table: Vec<Vec<usize>>,
    /// Position of `e` in `elements`.
    pub identity: usize,
}

#[derive(Debug, Clone)]
pub struct LocalStructure {
    pub monoids: Vec<LocalMonoid>,
    /// `LU(S) = E(S)·S·E(S)`, sorted.
    pub lu: Vec<usize>,
}

impl LocalMonoid {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub fn local_monoid(s: &FinSemigroupZ, e: usize) -> LocalMonoid {
    let elements: Vec<usize> = (0..s.len())
        .map(|x| s.mul(s.mul(e, x), e))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let pos = |x: usize| elements.binary_search(&x).unwrap();
    let table = elements
        .iter()
        .map(|&x| elements.iter().map(|&y| pos(s.mul(x, y))).collect())
        .collect();
    LocalMonoid { idempotent: e, identity: pos(e), table, elements }
}

pub fn local_monoids_and_lu(s: &FinSemigroupZ) -> LocalStructure {
    let idem = s.idempotents();
    let monoids = idem.iter().map(|&e| local_monoid(s, e)).collect();
    let mut lu = FixedBitSet::with_capacity(s.len());
    for &e in &idem {
        for x in 0..s.len() {
            let ex = s.mul(e, x);
            for &f in &idem {
                lu.insert(s.mul(ex, f));
            }
        }
    }
    LocalStructure { monoids, lu: lu.ones().collect() }
}

/// Elements of `S` represented by words whose length is a multiple of `k`,
/// together with the zero: the image of the `k`-th higher power's
/// syntactic semigroup under its natural embedding.
pub fn power_subsemigroup(s: &FinSemigroupZ, k: &BigUint) -> Vec<usize> {
    let n = s.len();
    let product = |x: &FixedBitSet, y: &FixedBitSet| {
        let mut out = FixedBitSet::with_capacity(n);
        for a in x.ones() {
            for b in y.ones() {
                out.insert(s.mul(a, b));
            }
        }
        out
    };
    let mut letters = FixedBitSet::with_capacity(n);
    for &g in s.letter_map() {
        letters.insert(g);
    }
    // Elements of words of length exactly k, by binary exponentiation.
    let mut result: Option<FixedBitSet> = None;
    let mut base = letters;
    let bits = k.bits();
    for i in 0..bits {
        if k.bit(i) {
            result = Some(match result {
                None => base.clone(),
                Some(r) => product(&r, &base),
            });
        }
        if i + 1 < bits {
            base = product(&base, &base);
        }
    }
    let mut gens: Vec<usize> = result.map(|r| r.ones().collect()).unwrap_or_default();
    gens.push(s.zero());
    s.closure(&gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{minimal_automaton, Presentation};
    use crate::semigroup::transition_semigroup;

    fn sg(text: &str) -> FinSemigroupZ {
        transition_semigroup(&minimal_automaton(&Presentation::parse(text).unwrap()))
    }

    #[test]
    fn two_element_semigroup() {
        let s = sg("x a x\n");
        let l = local_monoids_and_lu(&s);
        assert_eq!(l.lu, vec![0, 1]);
        let m = l.monoids.iter().find(|m| m.idempotent == 0).unwrap();
        assert_eq!(m.order(), 2);
    }

    #[test]
    fn golden_mean_has_local_units() {
        let s = sg("1 a 1\n1 b 2\n2 a 1\n");
        let l = local_monoids_and_lu(&s);
        assert_eq!(l.lu.len(), s.len());
        let ab = s.element("[ab]").unwrap();
        let m = l.monoids.iter().find(|m| m.idempotent == ab).unwrap();
        assert_eq!(m.order(), 2);
    }

    #[test]
    fn null_semigroup_has_only_zero() {
        let s = FinSemigroupZ::parse("elements: n 0\nzero: 0\n0 0\n0 0\n").unwrap();
        assert_eq!(local_monoids_and_lu(&s).lu, vec![1]);
    }

    #[test]
    fn power_of_one_is_everything_generated() {
        let s = sg("1 a 1\n1 b 2\n2 a 1\n");
        assert_eq!(power_subsemigroup(&s, &BigUint::from(1u32)).len(), 5);
        // Words of even length in the golden mean: a, b, ab, ba classes all
        // have even-length representatives (aa, baab, ab, ba) except none missing.
        let two = power_subsemigroup(&s, &BigUint::from(2u32));
        assert_eq!(two.len(), 5);
    }
}
