//! Equivalence of categories decided as isomorphism of skeletons.
//!
//! A category is encoded by its consolidation: the morphisms plus an extra
//! element `⊥`, with `g·f = g∘f` when composable and `⊥` otherwise. Two
//! categories are isomorphic iff their consolidations are isomorphic
//! semigroups: identities are recovered as the idempotents `u` with
//! `u·m ∈ {m, ⊥}` and `m·u ∈ {m, ⊥}` for all `m`, and composability as
//! `g·f ≠ ⊥`.

use std::collections::HashMap;

use serde::Serialize;

use super::{skeleton, Morphism, ZeroCategory};
use crate::error::Result;
use crate::semigroup::enumerate_table_isomorphisms;

/// An isomorphism between two skeletal categories.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Functor {
    /// Objects of the source skeleton, as idempotents.
    pub source_objects: Vec<usize>,
    /// Objects of the target skeleton, as idempotents.
    pub target_objects: Vec<usize>,
    /// `objects[i]` is the image of source object `i`.
    pub objects: Vec<usize>,
    /// Morphism images, sorted by source morphism.
    pub morphisms: Vec<(Morphism, Morphism)>,
    /// Whether the zero object and all zero morphisms are sent to zero.
    pub preserves_zero: bool,
}

impl Functor {
    pub fn apply(&self, m: Morphism) -> Morphism {
        let i = self.morphisms.binary_search_by(|(a, _)| a.cmp(&m)).expect("morphism of the source");
        self.morphisms[i].1
    }
}

struct Consolidation {
    morphisms: Vec<Morphism>,
    table: Vec<Vec<usize>>,
}

fn consolidate(c: &ZeroCategory) -> Consolidation {
    let morphisms = c.morphisms();
    let bottom = morphisms.len();
    let n = c.object_count();
    let size = c.semigroup().len();
    let mut index = vec![usize::MAX; n * n * size];
    for (i, m) in morphisms.iter().enumerate() {
        index[(m.range * n + m.domain) * size + m.elem] = i;
    }
    let mut table = vec![vec![bottom; bottom + 1]; bottom + 1];
    for (i, g) in morphisms.iter().enumerate() {
        for (j, f) in morphisms.iter().enumerate() {
            if let Some(h) = c.compose(*g, *f) {
                table[i][j] = index[(h.range * n + h.domain) * size + h.elem];
            }
        }
    }
    Consolidation { morphisms, table }
}

/// Enumerates the isomorphisms between two skeletal categories, calling
/// `visit` on each until it returns `true`. Object colors, when given, must
/// be preserved and are comparable across the two categories.
///
/// Returns whether `visit` stopped the enumeration.
pub fn enumerate_equivalences(
    k1: &ZeroCategory,
    k2: &ZeroCategory,
    object_colors: Option<(&[u64], &[u64])>,
    budget: u64,
    visit: &mut dyn FnMut(&Functor) -> bool,
) -> Result<bool> {
    if k1.object_count() != k2.object_count() || k1.morphism_count() != k2.morphism_count() {
        return Ok(false);
    }
    let a = consolidate(k1);
    let b = consolidate(k2);
    let mut interner: HashMap<(u64, u64, bool, bool), usize> = HashMap::new();
    let mut colors = |c: &ZeroCategory, cons: &Consolidation, obj: Option<&[u64]>| -> Vec<usize> {
        let oc = |o: usize| obj.map_or(0, |v| v[o]);
        let mut out: Vec<usize> = cons
            .morphisms
            .iter()
            .map(|m| {
                let key = (oc(m.range), oc(m.domain), c.identity(m.range) == *m, c.is_zero(*m));
                let len = interner.len() + 1;
                *interner.entry(key).or_insert(len)
            })
            .collect();
        out.push(0);
        out
    };
    let (o1, o2) = match object_colors {
        Some((x, y)) => (Some(x), Some(y)),
        None => (None, None),
    };
    let pa = colors(k1, &a, o1);
    let pb = colors(k2, &b, o2);
    let zero_ok = |f: &Functor| {
        let z1 = k1.zero_object();
        let z2 = k2.zero_object();
        let objects_ok = match (z1, z2) {
            (Some(x), Some(y)) => f.objects[x] == y,
            (None, None) => true,
            _ => false,
        };
        objects_ok && f.morphisms.iter().all(|(m, n)| k1.is_zero(*m) == k2.is_zero(*n))
    };
    enumerate_table_isomorphisms(&a.table, &b.table, &pa, &pb, budget, &mut |map| {
        let mut objects = vec![0; k1.object_count()];
        let mut morphisms = Vec::with_capacity(a.morphisms.len());
        for (i, m) in a.morphisms.iter().enumerate() {
            let n = b.morphisms[map[i]];
            if *m == k1.identity(m.range) {
                objects[m.range] = n.range;
            }
            morphisms.push((*m, n));
        }
        let mut functor = Functor {
            source_objects: k1.objects().to_vec(),
            target_objects: k2.objects().to_vec(),
            objects,
            morphisms,
            preserves_zero: false,
        };
        functor.preserves_zero = zero_ok(&functor);
        visit(&functor)
    })
}

/// Decides whether two categories with zero are equivalent, returning an
/// isomorphism of their skeletons when they are.
pub fn decide_equivalence(c1: &ZeroCategory, c2: &ZeroCategory, budget: u64) -> Result<Option<Functor>> {
    let k1 = skeleton(c1);
    let k2 = skeleton(c2);
    let mut found = None;
    enumerate_equivalences(&k1, &k2, None, budget, &mut |f| {
        found = Some(f.clone());
        true
    })?;
    Ok(found)
}
