//! Top-level decisions: property (𝒜), class membership, the poset of
//! subsynchronizing subshifts, invariant reports and pairwise comparison.

mod compare;

use serde::Serialize;

use crate::covers::{
    cyclic_poset, dclass_labeled_preorder, fischer_cover, krieger_cover, LabeledPreorder, Poset,
};
use crate::error::Result;
use crate::karoubi::{is_snzd_preorder, karoubi_envelope, krieger_semigroup, skeleton};
use crate::presentation::ShiftHandle;
use crate::semigroup::{
    green_structure, is_aperiodic, semigroup_predicates, synchronizing_and_magic, FinSemigroupZ, Predicates,
};

pub use compare::{compare_shifts, CompareOptions, ComparisonVerdict, Outcome, PartialComparison, Row, RowStatus};

/// Property (𝒜) of the syntactic semigroup: the strong non-zero divisors
/// of its Karoubi envelope form a preorder. Non-aperiodic semigroups fail
/// it without building the envelope.
pub fn semigroup_property_a(s: &FinSemigroupZ) -> bool {
    is_aperiodic(s) && is_snzd_preorder(&karoubi_envelope(s))
}

pub fn property_a(h: &ShiftHandle) -> bool {
    semigroup_property_a(h.semigroup())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub irreducible: bool,
    /// Irreducible with a synchronizing word.
    pub synchronizing: bool,
    pub finite_type: bool,
    pub almost_finite_type: bool,
    pub aperiodic: bool,
}

pub fn semigroup_class_flags(s: &FinSemigroupZ) -> ClassFlags {
    let p = semigroup_predicates(s);
    ClassFlags {
        irreducible: p.irreducible_language,
        synchronizing: p.irreducible_language && !synchronizing_and_magic(s).synchronizing.is_empty(),
        finite_type: p.irreducible_language && p.local_sl,
        almost_finite_type: p.irreducible_language && p.local_ecom,
        aperiodic: p.aperiodic,
    }
}

pub fn classify_shift(h: &ShiftHandle) -> ClassFlags {
    semigroup_class_flags(h.semigroup())
}

/// Magic idempotents up to D-equivalence, with `e ≤ f` iff `fSe ≠ {0}`.
pub fn semigroup_subs_poset(s: &FinSemigroupZ) -> Poset {
    let magic = synchronizing_and_magic(s).magic;
    let g = green_structure(s);
    let mut reps: Vec<usize> = Vec::new();
    for &e in &magic {
        if !reps.iter().any(|&r| g.same_d(r, e)) {
            reps.push(e);
        }
    }
    let z = s.zero();
    let leq = reps
        .iter()
        .map(|&e| reps.iter().map(|&f| (0..s.len()).any(|x| s.mul(s.mul(f, x), e) != z)).collect())
        .collect();
    Poset::new(reps.iter().map(|&e| s.name(e).to_string()).collect(), leq)
}

pub fn subsynchronizing_poset(h: &ShiftHandle) -> Poset {
    semigroup_subs_poset(h.semigroup())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemigroupSummary {
    pub order: usize,
    pub idempotents: usize,
    pub d_classes: usize,
    pub regular_d_classes: usize,
    pub is_monoid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KaroubiSummary {
    pub objects: usize,
    pub morphisms: usize,
    pub skeleton_objects: Vec<String>,
    pub skeleton_morphisms: usize,
    /// Order of the endomorphism monoid of each skeleton object.
    pub local_monoid_orders: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverSummary {
    pub states: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KriegerSemigroupSummary {
    pub order: usize,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    #[serde(flatten)]
    pub class: ClassFlags,
    pub property_a: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub name: String,
    pub semigroup: SemigroupSummary,
    pub karoubi: KaroubiSummary,
    pub predicates: Predicates,
    pub flags: Flags,
    pub krieger_cover: Option<CoverSummary>,
    pub fischer_cover: Option<CoverSummary>,
    pub p: Option<Poset>,
    pub kd: Option<LabeledPreorder>,
    pub fd: Option<LabeledPreorder>,
    pub krieger_semigroup: Option<KriegerSemigroupSummary>,
    pub subs: Poset,
}

fn semigroup_part(name: &str, s: &FinSemigroupZ) -> Result<InvariantReport> {
    let g = green_structure(s);
    let k = karoubi_envelope(s);
    let sk = skeleton(&k);
    let class = semigroup_class_flags(s);
    let property_a = class.aperiodic && is_snzd_preorder(&k);
    let krieger = if property_a {
        let ks = krieger_semigroup(&k)?;
        Some(KriegerSemigroupSummary {
            order: ks.semigroup.len(),
            elements: ks.semigroup.names().to_vec(),
            table: ks.semigroup.table().to_vec(),
        })
    } else {
        None
    };
    Ok(InvariantReport {
        name: name.to_string(),
        semigroup: SemigroupSummary {
            order: s.len(),
            idempotents: g.idempotents.len(),
            d_classes: g.d_classes.len(),
            regular_d_classes: g.d_classes.iter().filter(|d| d.regular).count(),
            is_monoid: s.identity().is_some(),
        },
        karoubi: KaroubiSummary {
            objects: k.object_count(),
            morphisms: k.morphism_count(),
            skeleton_objects: (0..sk.object_count()).map(|i| sk.object_name(i).to_string()).collect(),
            skeleton_morphisms: sk.morphism_count(),
            local_monoid_orders: (0..sk.object_count()).map(|i| sk.hom(i, i).len()).collect(),
        },
        predicates: semigroup_predicates(s),
        flags: Flags { class, property_a },
        krieger_cover: None,
        fischer_cover: None,
        p: None,
        kd: None,
        fd: None,
        krieger_semigroup: krieger,
        subs: semigroup_subs_poset(s),
    })
}

/// Report for a semigroup given directly by its table (no cover data).
pub fn semigroup_report(name: &str, s: &FinSemigroupZ) -> Result<InvariantReport> {
    semigroup_part(name, s)
}

/// Full invariant report of a shift.
pub fn analyze_shift(h: &ShiftHandle) -> Result<InvariantReport> {
    let s = h.semigroup();
    let mut report = semigroup_part(&h.name, s)?;
    let (kg, ka) = krieger_cover(h)?;
    report.krieger_cover = Some(CoverSummary { states: kg.vertex_count(), edges: kg.edges().len() });
    report.p = Some(cyclic_poset(&ka));
    report.kd = Some(dclass_labeled_preorder(s, &ka));
    if report.flags.class.irreducible {
        let (fg, fa) = fischer_cover(h)?;
        report.fischer_cover = Some(CoverSummary { states: fg.vertex_count(), edges: fg.edges().len() });
        report.fd = Some(dclass_labeled_preorder(s, &fa));
    }
    Ok(report)
}
