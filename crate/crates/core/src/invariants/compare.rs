use std::cell::OnceCell;
use std::fmt;

use serde::Serialize;

use super::{semigroup_class_flags, semigroup_subs_poset, ClassFlags};
use crate::covers::{
    cyclic_poset, dclass_labeled_preorder, decide_action_equivalence, fischer_cover, krieger_cover,
    labeled_preorder_isomorphism, LabeledPreorder, PointedAction, Poset,
};
use crate::error::{Error, Result};
use crate::karoubi::{decide_equivalence, is_snzd_preorder, karoubi_envelope, krieger_semigroup, Functor, ZeroCategory};
use crate::presentation::ShiftHandle;
use crate::semigroup::{semigroup_isomorphism, FinSemigroupZ, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompareOptions {
    /// Node budget for each backtracking search.
    pub budget: u64,
    /// Evaluate every row even after a mismatch.
    pub exhaustive: bool,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions { budget: DEFAULT_BUDGET, exhaustive: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Match,
    Mismatch,
    NotApplicable,
    Skipped,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub invariant: &'static str,
    pub status: RowStatus,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Distinguished { invariant: &'static str, left: String, right: String },
    /// All computed invariants agree; flow equivalence is not decided.
    KaroubiEquivalent { witness: Option<Functor> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonVerdict {
    pub verdict: &'static str,
    pub outcome: Outcome,
    pub rows: Vec<Row>,
}

impl ComparisonVerdict {
    pub fn is_distinguished(&self) -> bool {
        matches!(self.outcome, Outcome::Distinguished { .. })
    }

    /// Whether every row that applies matched.
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| matches!(r.status, RowStatus::Match | RowStatus::NotApplicable))
    }
}

/// A comparison cut short by an error, with the rows computed so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialComparison {
    pub error: Error,
    pub rows: Vec<Row>,
}

impl fmt::Display for PartialComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (after {} rows)", self.error, self.rows.len())
    }
}

impl std::error::Error for PartialComparison {}

/// Lazily computed data of one side of a comparison.
struct Side<'a> {
    h: &'a ShiftHandle,
    flags: OnceCell<ClassFlags>,
    envelope: OnceCell<ZeroCategory>,
    property_a: OnceCell<bool>,
    krieger: OnceCell<Result<PointedAction>>,
    fischer: OnceCell<Result<PointedAction>>,
    kd: OnceCell<Result<LabeledPreorder>>,
}

impl<'a> Side<'a> {
    fn new(h: &'a ShiftHandle) -> Self {
        Side {
            h,
            flags: OnceCell::new(),
            envelope: OnceCell::new(),
            property_a: OnceCell::new(),
            krieger: OnceCell::new(),
            fischer: OnceCell::new(),
            kd: OnceCell::new(),
        }
    }

    fn s(&self) -> &FinSemigroupZ {
        self.h.semigroup()
    }

    fn flags(&self) -> ClassFlags {
        *self.flags.get_or_init(|| semigroup_class_flags(self.s()))
    }

    fn envelope(&self) -> &ZeroCategory {
        self.envelope.get_or_init(|| karoubi_envelope(self.s()))
    }

    fn property_a(&self) -> bool {
        *self.property_a.get_or_init(|| self.flags().aperiodic && is_snzd_preorder(self.envelope()))
    }

    fn krieger(&self) -> Result<&PointedAction> {
        self.krieger
            .get_or_init(|| krieger_cover(self.h).map(|(_, a)| a))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn fischer(&self) -> Result<&PointedAction> {
        self.fischer
            .get_or_init(|| fischer_cover(self.h).map(|(_, a)| a))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn kd(&self) -> Result<&LabeledPreorder> {
        self.kd
            .get_or_init(|| Ok(dclass_labeled_preorder(self.s(), self.krieger()?)))
            .as_ref()
            .map_err(Clone::clone)
    }
}

type Check = (RowStatus, String, String);

fn same(equal: bool, left: String, right: String) -> Check {
    (if equal { RowStatus::Match } else { RowStatus::Mismatch }, left, right)
}

fn flag(a: bool, b: bool) -> Check {
    same(a == b, a.to_string(), b.to_string())
}

fn poset_row(p: &Poset, q: &Poset) -> Check {
    same(p.isomorphism(q).is_some(), format!("{} elements", p.len()), format!("{} elements", q.len()))
}

fn preorder_row(p: &LabeledPreorder, q: &LabeledPreorder) -> Check {
    let describe = |x: &LabeledPreorder| {
        let labels: Vec<String> = x.labels.iter().map(|l| l.display()).collect();
        format!("{} classes [{}]", x.len(), labels.join(" "))
    };
    same(labeled_preorder_isomorphism(p, q).is_some(), describe(p), describe(q))
}

/// Equivalent envelopes have isomorphic local monoids, so two shifts whose
/// syntactic semigroups are both monoids must have isomorphic ones.
fn monoid_row(a: &Side, b: &Side) -> Check {
    let (s, t) = (a.s(), b.s());
    let (m1, m2) = (s.identity().is_some(), t.identity().is_some());
    let describe = |x: &FinSemigroupZ, m: bool| {
        if m {
            format!("monoid of order {}", x.len())
        } else {
            format!("semigroup of order {}", x.len())
        }
    };
    if !(m1 && m2) {
        return (RowStatus::NotApplicable, describe(s, m1), describe(t, m2));
    }
    same(s.len() == t.len() && semigroup_isomorphism(s, t).is_some(), describe(s, m1), describe(t, m2))
}

const ROWS: &[&str] = &[
    "monoid",
    "aperiodic",
    "irreducible",
    "finite_type",
    "almost_finite_type",
    "synchronizing",
    "property_a",
    "kd",
    "p",
    "subs",
    "krieger_semigroup",
    "karoubi",
    "krieger_action",
    "fd",
    "fischer_action",
];

fn evaluate(name: &str, a: &Side, b: &Side, opts: &CompareOptions, witness: &mut Option<Functor>) -> Result<Check> {
    let both_irreducible = a.flags().irreducible && b.flags().irreducible;
    Ok(match name {
        "monoid" => monoid_row(a, b),
        "aperiodic" => flag(a.flags().aperiodic, b.flags().aperiodic),
        "irreducible" => flag(a.flags().irreducible, b.flags().irreducible),
        "finite_type" => flag(a.flags().finite_type, b.flags().finite_type),
        "almost_finite_type" => flag(a.flags().almost_finite_type, b.flags().almost_finite_type),
        "synchronizing" => flag(a.flags().synchronizing, b.flags().synchronizing),
        "property_a" => flag(a.property_a(), b.property_a()),
        "kd" => preorder_row(a.kd()?, b.kd()?),
        "p" => poset_row(&cyclic_poset(a.krieger()?), &cyclic_poset(b.krieger()?)),
        "subs" => poset_row(&semigroup_subs_poset(a.s()), &semigroup_subs_poset(b.s())),
        "krieger_semigroup" => {
            if a.property_a() && b.property_a() {
                let s = krieger_semigroup(a.envelope())?.semigroup;
                let t = krieger_semigroup(b.envelope())?.semigroup;
                same(
                    s.len() == t.len() && semigroup_isomorphism(&s, &t).is_some(),
                    format!("order {}", s.len()),
                    format!("order {}", t.len()),
                )
            } else {
                (RowStatus::NotApplicable, String::new(), String::new())
            }
        }
        "karoubi" => {
            let w = decide_equivalence(a.envelope(), b.envelope(), opts.budget)?;
            let found = w.is_some();
            *witness = w;
            let describe = |c: &ZeroCategory| format!("{} objects", c.object_count());
            same(found, describe(a.envelope()), describe(b.envelope()))
        }
        "krieger_action" => {
            let (x, y) = (a.krieger()?, b.krieger()?);
            let found = decide_action_equivalence(x, y, opts.budget)?.is_some();
            same(found, format!("{} states", x.state_count()), format!("{} states", y.state_count()))
        }
        "fd" if both_irreducible => {
            let (x, y) = (a.fischer()?, b.fischer()?);
            preorder_row(&dclass_labeled_preorder(a.s(), x), &dclass_labeled_preorder(b.s(), y))
        }
        "fischer_action" if both_irreducible => {
            let (x, y) = (a.fischer()?, b.fischer()?);
            let found = decide_action_equivalence(x, y, opts.budget)?.is_some();
            same(found, format!("{} states", x.state_count()), format!("{} states", y.state_count()))
        }
        _ => (RowStatus::NotApplicable, String::new(), String::new()),
    })
}

/// Compares two shifts invariant by invariant, cheapest first. The first
/// mismatch proves the shifts are not flow equivalent; agreement on every
/// row is reported as `karoubi_equivalent`, which does not decide flow
/// equivalence.
pub fn compare_shifts(
    h1: &ShiftHandle,
    h2: &ShiftHandle,
    opts: &CompareOptions,
) -> std::result::Result<ComparisonVerdict, PartialComparison> {
    let a = Side::new(h1);
    let b = Side::new(h2);
    let mut rows: Vec<Row> = Vec::new();
    let mut first_mismatch: Option<usize> = None;
    let mut witness = None;
    for &name in ROWS {
        if first_mismatch.is_some() && !opts.exhaustive {
            rows.push(Row { invariant: name, status: RowStatus::Skipped, left: String::new(), right: String::new() });
            continue;
        }
        match evaluate(name, &a, &b, opts, &mut witness) {
            Ok((status, left, right)) => {
                if status == RowStatus::Mismatch && first_mismatch.is_none() {
                    first_mismatch = Some(rows.len());
                }
                rows.push(Row { invariant: name, status, left, right });
            }
            Err(error) => {
                let status = if matches!(error, Error::BudgetExceeded(_)) {
                    RowStatus::BudgetExceeded
                } else {
                    RowStatus::NotApplicable
                };
                rows.push(Row { invariant: name, status, left: String::new(), right: String::new() });
                return Err(PartialComparison { error, rows });
            }
        }
    }
    let outcome = match first_mismatch {
        Some(i) => Outcome::Distinguished {
            invariant: rows[i].invariant,
            left: rows[i].left.clone(),
            right: rows[i].right.clone(),
        },
        None => Outcome::KaroubiEquivalent { witness },
    };
    let verdict = if first_mismatch.is_some() { "distinguished" } else { "karoubi_equivalent" };
    Ok(ComparisonVerdict { verdict, outcome, rows })
}
