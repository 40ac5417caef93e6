use serde::Serialize;

use super::local::local_monoid;
use super::FinSemigroupZ;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub aperiodic: bool,
    pub zero_disjunctive: bool,
    pub irreducible_language: bool,
    pub local_sl: bool,
    pub local_ecom: bool,
}

/// `s^n = s^(n+1)` for every element, with `n = |S|`.
pub fn is_aperiodic(s: &FinSemigroupZ) -> bool {
    let n = s.len();
    (0..n).all(|x| {
        let mut p = x;
        for _ in 1..n {
            p = s.mul(p, x);
        }
        s.mul(p, x) == p
    })
}

/// Whether the coarsest congruence saturating `{0}` is the identity.
///
/// Starts from the partition `{0} | S∖{0}` and splits blocks until
/// multiplication on either side respects it.
pub fn is_zero_disjunctive(s: &FinSemigroupZ) -> bool {
    let n = s.len();
    let mut block: Vec<usize> = (0..n).map(|x| usize::from(x != s.zero())).collect();
    let mut count = if n > 1 { 2 } else { 1 };
    loop {
        let mut ids = std::collections::HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|x| {
                let mut sig = vec![block[x]];
                sig.extend((0..n).map(|y| block[s.mul(x, y)]));
                sig.extend((0..n).map(|y| block[s.mul(y, x)]));
                let len = ids.len();
                *ids.entry(sig).or_insert(len)
            })
            .collect();
        let new_count = ids.len();
        block = next;
        if new_count == count {
            return count == n;
        }
        count = new_count;
    }
}

/// For all non-zero `s, t` there is `r ∈ S¹` with `srt ≠ 0`.
pub fn has_irreducible_language(s: &FinSemigroupZ) -> bool {
    let z = s.zero();
    s.nonzero().all(|a| {
        s.nonzero().all(|b| s.mul(a, b) != z || (0..s.len()).any(|r| s.mul(s.mul(a, r), b) != z))
    })
}

pub fn semigroup_predicates(s: &FinSemigroupZ) -> Predicates {
    let mut local_sl = true;
    let mut local_ecom = true;
    for e in s.idempotents() {
        let m = local_monoid(s, e);
        let t = &m.table;
        let k = m.order();
        let idem: Vec<usize> = (0..k).filter(|&x| t[x][x] == x).collect();
        let commute = |x: usize, y: usize| t[x][y] == t[y][x];
        if idem.len() != k || !(0..k).all(|x| (0..k).all(|y| commute(x, y))) {
            local_sl = false;
        }
        if !idem.iter().all(|&x| idem.iter().all(|&y| commute(x, y))) {
            local_ecom = false;
        }
    }
    Predicates {
        aperiodic: is_aperiodic(s),
        zero_disjunctive: is_zero_disjunctive(s),
        irreducible_language: has_irreducible_language(s),
        local_sl,
        local_ecom,
    }
}
