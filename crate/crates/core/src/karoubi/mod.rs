//! Finite categories with zero built from a semigroup: the Karoubi envelope
//! and its full subcategories.
//!
//! A morphism `(e, s, f)` with `s ∈ eSf` points from `f` to `e`: its domain
//! is `f` and its range is `e`. Composition is `(e,s,f)(f,t,g) = (e,st,g)`.

mod divisors;
mod equivalence;

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::semigroup::{green_structure, FinSemigroupZ};

pub use divisors::{
    divisor_subcategories, is_snzd_preorder, krieger_semigroup, morphism_iso_classes,
    DivisorSubcategories, KriegerSemigroup, MorphismClass,
};
pub use equivalence::{decide_equivalence, enumerate_equivalences, Functor};

/// A morphism `(range, elem, domain)`; objects are indices into the
/// category's object list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Morphism {
    pub range: usize,
    pub elem: usize,
    pub domain: usize,
}

/// How an object of the full envelope is identified with a skeleton object:
/// `to` is `(rep, u, obj)` and `from` is `(obj, v, rep)`, mutually inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObjectIso {
    pub object: usize,
    pub representative: usize,
    pub to: usize,
    pub from: usize,
}

/// A full subcategory of the Karoubi envelope of a semigroup with zero.
#[derive(Debug, Clone)]
pub struct ZeroCategory {
    semigroup: Arc<FinSemigroupZ>,
    /// Objects as idempotents of the semigroup, sorted.
    objects: Vec<usize>,
    /// `hom[e][f]`: elements `s ∈ eSf`, i.e. the morphisms `f → e`.
    hom: Vec<Vec<Vec<usize>>>,
    /// For a skeleton: how each idempotent of the semigroup is identified
    /// with an object of the skeleton.
    object_isos: Vec<ObjectIso>,
}

impl ZeroCategory {
    fn full_on(semigroup: Arc<FinSemigroupZ>, objects: Vec<usize>) -> Self {
        let s = &semigroup;
        let hom = objects
            .iter()
            .map(|&e| {
                objects
                    .iter()
                    .map(|&f| (0..s.len()).filter(|&x| s.mul(s.mul(e, x), f) == x).collect())
                    .collect()
            })
            .collect();
        ZeroCategory { semigroup, objects, hom, object_isos: Vec::new() }
    }

    pub fn semigroup(&self) -> &FinSemigroupZ {
        &self.semigroup
    }

    /// Objects as idempotents of the underlying semigroup.
    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    /// Index of the zero object, if the zero idempotent is an object.
    pub fn zero_object(&self) -> Option<usize> {
        let z = self.semigroup.zero();
        self.objects.iter().position(|&e| e == z)
    }

    /// Elements `s` of the morphisms `domain → range`.
    pub fn hom(&self, range: usize, domain: usize) -> &[usize] {
        &self.hom[range][domain]
    }

    pub fn identity(&self, object: usize) -> Morphism {
        Morphism { range: object, elem: self.objects[object], domain: object }
    }

    pub fn zero_morphism(&self, range: usize, domain: usize) -> Morphism {
        Morphism { range, elem: self.semigroup.zero(), domain }
    }

    pub fn is_zero(&self, m: Morphism) -> bool {
        m.elem == self.semigroup.zero()
    }

    /// `g ∘ f`, defined when the domain of `g` is the range of `f`.
    pub fn compose(&self, g: Morphism, f: Morphism) -> Option<Morphism> {
        (g.domain == f.range).then(|| Morphism {
            range: g.range,
            elem: self.semigroup.mul(g.elem, f.elem),
            domain: f.domain,
        })
    }

    /// All morphisms, sorted.
    pub fn morphisms(&self) -> Vec<Morphism> {
        let n = self.objects.len();
        let mut out = Vec::new();
        for range in 0..n {
            for domain in 0..n {
                out.extend(self.hom[range][domain].iter().map(|&elem| Morphism { range, elem, domain }));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn morphism_count(&self) -> usize {
        self.hom.iter().flatten().map(Vec::len).sum()
    }

    /// Whether `m` has an inverse; returns it if so.
    pub fn inverse(&self, m: Morphism) -> Option<Morphism> {
        let s = &self.semigroup;
        let (e, f) = (self.objects[m.range], self.objects[m.domain]);
        self.hom[m.domain][m.range]
            .iter()
            .find(|&&y| s.mul(m.elem, y) == e && s.mul(y, m.elem) == f)
            .map(|&elem| Morphism { range: m.domain, elem, domain: m.range })
    }

    /// Isomorphism witnesses recorded by [`skeleton`]; empty otherwise.
    pub fn object_isos(&self) -> &[ObjectIso] {
        &self.object_isos
    }

    pub fn object_name(&self, object: usize) -> &str {
        self.semigroup.name(self.objects[object])
    }

    /// DOT rendering: one node per object and one edge per non-empty set of
    /// non-zero morphisms, annotated with its size.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{}\" {{\n", name.replace('"', "\\\""));
        for (i, _) in self.objects.iter().enumerate() {
            let _ = writeln!(out, "  o{} [label=\"{}\"];", i, self.object_name(i).replace('"', "\\\""));
        }
        let z = self.semigroup.zero();
        for range in 0..self.objects.len() {
            for domain in 0..self.objects.len() {
                let count = self.hom[range][domain].iter().filter(|&&x| x != z).count();
                if count > 0 {
                    let _ = writeln!(out, "  o{domain} -> o{range} [label=\"{count}\"];");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The Karoubi envelope: objects are all idempotents (the zero included).
pub fn karoubi_envelope(s: &FinSemigroupZ) -> ZeroCategory {
    let s = Arc::new(s.clone());
    let objects = s.idempotents();
    ZeroCategory::full_on(s, objects)
}

/// One object per isomorphism class of objects (for the Karoubi envelope,
/// per D-class of idempotents), taking the least idempotent as
/// representative, with recorded isomorphisms from every idempotent of
/// the input category.
pub fn skeleton(c: &ZeroCategory) -> ZeroCategory {
    let s = &c.semigroup;
    let g = green_structure(s);
    let mut reps: Vec<usize> = Vec::new();
    for &e in &c.objects {
        if !reps.iter().any(|&r| g.same_d(r, e)) {
            reps.push(e);
        }
    }
    reps.sort_unstable();
    let mut sk = ZeroCategory::full_on(Arc::clone(s), reps.clone());
    sk.object_isos = c
        .objects
        .iter()
        .map(|&e| {
            let rep = *reps.iter().find(|&&r| g.same_d(r, e)).unwrap();
            let (to, from) = object_iso(s, rep, e).expect("D-equivalent idempotents are isomorphic");
            ObjectIso { object: e, representative: rep, to, from }
        })
        .collect();
    sk
}

/// A pair `u ∈ eSf`, `v ∈ fSe` with `uv = e` and `vu = f`, if any.
pub(crate) fn object_iso(s: &FinSemigroupZ, e: usize, f: usize) -> Option<(usize, usize)> {
    let ef: Vec<usize> = (0..s.len()).filter(|&x| s.mul(s.mul(e, x), f) == x).collect();
    let fe: Vec<usize> = (0..s.len()).filter(|&x| s.mul(s.mul(f, x), e) == x).collect();
    ef.iter()
        .flat_map(|&u| fe.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| s.mul(u, v) == e && s.mul(v, u) == f)
}
