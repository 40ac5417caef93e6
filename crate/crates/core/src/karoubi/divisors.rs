//! Non-zero divisors, isomorphism classes of morphisms and the Krieger
//! semigroup.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{skeleton, Morphism, ZeroCategory};
use crate::error::{Error, Result};
use crate::semigroup::FinSemigroupZ;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorSubcategories {
    /// Non-zero morphisms with only non-zero composites.
    pub nzd: Vec<Morphism>,
    /// Strong non-zero divisors.
    pub snzd: Vec<Morphism>,
}

fn annihilators(s: &FinSemigroupZ) -> (Vec<FixedBitSet>, Vec<FixedBitSet>) {
    let n = s.len();
    let z = s.zero();
    let mut left = vec![FixedBitSet::with_capacity(n); n];
    let mut right = vec![FixedBitSet::with_capacity(n); n];
    for x in 0..n {
        for y in 0..n {
            if s.mul(y, x) == z {
                left[x].insert(y);
            }
            if s.mul(x, y) == z {
                right[x].insert(y);
            }
        }
    }
    (left, right)
}

/// `(e,x,f)` is a strong non-zero divisor when `x ≠ 0` and for all `r, t`:
/// `re ≠ 0 ⇒ rx ≠ 0` and `ft ≠ 0 ⇒ xt ≠ 0`.
fn snzd_test(c: &ZeroCategory) -> impl Fn(Morphism) -> bool + '_ {
    let s = c.semigroup();
    let (left, right) = annihilators(s);
    move |m: Morphism| {
        let (e, f) = (c.objects()[m.range], c.objects()[m.domain]);
        m.elem != s.zero() && left[m.elem].is_subset(&left[e]) && right[m.elem].is_subset(&right[f])
    }
}

pub fn divisor_subcategories(c: &ZeroCategory) -> DivisorSubcategories {
    let morphisms = c.morphisms();
    let nonzero: Vec<Morphism> = morphisms.iter().copied().filter(|&m| !c.is_zero(m)).collect();
    let nzd = nonzero
        .iter()
        .copied()
        .filter(|&m| {
            nonzero.iter().all(|&g| c.compose(g, m).is_none_or(|h| !c.is_zero(h)))
                && nonzero.iter().all(|&h| c.compose(m, h).is_none_or(|k| !c.is_zero(k)))
        })
        .collect();
    let is_snzd = snzd_test(c);
    let snzd = nonzero.into_iter().filter(|&m| is_snzd(m)).collect();
    DivisorSubcategories { nzd, snzd }
}

/// Whether each hom-set contains at most one strong non-zero divisor.
pub fn is_snzd_preorder(c: &ZeroCategory) -> bool {
    let is_snzd = snzd_test(c);
    let n = c.object_count();
    (0..n).all(|range| {
        (0..n).all(|domain| {
            c.hom(range, domain)
                .iter()
                .filter(|&&elem| is_snzd(Morphism { range, elem, domain }))
                .nth(1)
                .is_none()
        })
    })
}

/// A class of morphisms under `f ≅₀ g` (`f = φgψ` with `φ, ψ`
/// isomorphisms, or both zero).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismClass {
    pub representative: Morphism,
    pub members: Vec<Morphism>,
}

impl MorphismClass {
    pub fn is_zero(&self, c: &ZeroCategory) -> bool {
        c.is_zero(self.representative)
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Partition of the morphisms into `≅₀` classes, each sorted, classes
/// ordered by their least member.
pub fn morphism_iso_classes(c: &ZeroCategory) -> Vec<MorphismClass> {
    let morphisms = c.morphisms();
    let index = |m: Morphism| morphisms.binary_search(&m).unwrap();
    let isos: Vec<Morphism> = morphisms.iter().copied().filter(|&m| c.inverse(m).is_some()).collect();
    let mut parent: Vec<usize> = (0..morphisms.len()).collect();
    let union = |a: usize, b: usize, parent: &mut Vec<usize>| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    let mut first_zero = None;
    for (i, &m) in morphisms.iter().enumerate() {
        if c.is_zero(m) {
            match first_zero {
                None => first_zero = Some(i),
                Some(z) => union(z, i, &mut parent),
            }
            continue;
        }
        for &phi in &isos {
            if let Some(g) = c.compose(phi, m) {
                union(i, index(g), &mut parent);
            }
            if let Some(g) = c.compose(m, phi) {
                union(i, index(g), &mut parent);
            }
        }
    }
    let mut classes: Vec<Vec<Morphism>> = Vec::new();
    let mut slot = vec![usize::MAX; morphisms.len()];
    for (i, &m) in morphisms.iter().enumerate() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(m);
    }
    classes
        .into_iter()
        .map(|members| MorphismClass { representative: members[0], members })
        .collect()
}

/// The semigroup of `≅₀` classes with the product mediated by the unique
/// strong non-zero divisor between objects.
#[derive(Debug, Clone)]
pub struct KriegerSemigroup {
    pub semigroup: FinSemigroupZ,
    /// `classes[i]` is the class of element `i`; the zero class is the
    /// semigroup's zero.
    pub classes: Vec<MorphismClass>,
}

/// Builds the Krieger semigroup on the skeleton of `c`.
///
/// `⟨f₁⟩∘⟨f₂⟩ = ⟨f₁hf₂⟩` where `h: r(f₂) → d(f₁)` is the unique strong
/// non-zero divisor, and `0` when there is none.
pub fn krieger_semigroup(c: &ZeroCategory) -> Result<KriegerSemigroup> {
    if !is_snzd_preorder(c) {
        return Err(Error::NotAPreorder);
    }
    let k = skeleton(c);
    let is_snzd = snzd_test(&k);
    let n = k.object_count();
    let mut mediator = vec![vec![None; n]; n];
    for (range, row) in mediator.iter_mut().enumerate() {
        for (domain, slot) in row.iter_mut().enumerate() {
            *slot = k
                .hom(range, domain)
                .iter()
                .map(|&elem| Morphism { range, elem, domain })
                .find(|&m| is_snzd(m));
        }
    }
    let classes = morphism_iso_classes(&k);
    let zero_class = classes.iter().position(|cl| cl.is_zero(&k));
    let mut class_of = std::collections::HashMap::new();
    for (i, cl) in classes.iter().enumerate() {
        for &m in &cl.members {
            class_of.insert(m, i);
        }
    }
    // Order: non-zero classes first, zero last.
    let mut order: Vec<usize> = (0..classes.len()).filter(|&i| Some(i) != zero_class).collect();
    let zero = order.len();
    let mut pos = vec![zero; classes.len()];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }
    let mut table = vec![vec![zero; zero + 1]; zero + 1];
    for (p, &i) in order.iter().enumerate() {
        let f1 = classes[i].representative;
        for (q, &j) in order.iter().enumerate() {
            let f2 = classes[j].representative;
            table[p][q] = match mediator[f1.domain][f2.range] {
                Some(h) => {
                    let m = k.compose(f1, k.compose(h, f2).unwrap()).unwrap();
                    pos[class_of[&m]]
                }
                None => zero,
            };
        }
    }
    let s = k.semigroup();
    let name = |m: Morphism| {
        format!("({},{},{})", s.name(k.objects()[m.range]), s.name(m.elem), s.name(k.objects()[m.domain]))
    };
    let mut names: Vec<String> = order.iter().map(|&i| name(classes[i].representative)).collect();
    names.push("0".into());
    if let Some(zc) = zero_class {
        order.push(zc);
    }
    let semigroup = FinSemigroupZ::from_table(names, zero, table)?;
    let mut ordered: Vec<MorphismClass> = order.iter().map(|&i| classes[i].clone()).collect();
    if zero_class.is_none() {
        let z = k.zero_morphism(0, 0);
        ordered.push(MorphismClass { representative: z, members: vec![z] });
    }
    Ok(KriegerSemigroup { semigroup, classes: ordered })
}
