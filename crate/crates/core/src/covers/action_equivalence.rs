//! Equivalence of Karoubi actions: an equivalence `F` of the envelopes
//! together with base-point preserving bijections `η_e: Q₁e → Q₂F(e)`
//! natural in every morphism.

use std::collections::HashMap;

use serde::Serialize;

use super::{karoubi_action, PointedAction};
use crate::error::{Error, Result};
use crate::karoubi::{enumerate_equivalences, karoubi_envelope, skeleton, Functor, Morphism, ZeroCategory};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionWitness {
    pub functor: Functor,
    /// For each source skeleton object, pairs `(q, η(q))` of state indices.
    pub eta: Vec<Vec<(usize, usize)>>,
}

struct Naturality<'a> {
    a1: &'a PointedAction,
    a2: &'a PointedAction,
    /// Morphisms of the source skeleton grouped by range, with their images.
    out: Vec<Vec<(Morphism, Morphism)>>,
    sets1: Vec<Vec<usize>>,
    sets2: Vec<Vec<usize>>,
    objects: Vec<usize>,
    /// `eta[i][q]`, indexed by state.
    eta: Vec<Vec<Option<usize>>>,
    used: Vec<Vec<bool>>,
    nodes: u64,
    budget: u64,
}

impl Naturality<'_> {
    /// Assigns `η_i(q) = r` and propagates along all morphisms leaving the
    /// action at object `i`. Returns the trail of assignments, or `None` on
    /// a contradiction (after undoing its own assignments).
    fn assign(&mut self, i: usize, q: usize, r: usize) -> Option<Vec<(usize, usize)>> {
        let mut trail = Vec::new();
        let mut queue = vec![(i, q, r)];
        while let Some((i, q, r)) = queue.pop() {
            match self.eta[i][q] {
                Some(x) if x == r => continue,
                Some(_) => {
                    self.undo(&trail);
                    return None;
                }
                None => {
                    if self.used[i][r] || !self.sets2[self.objects[i]].contains(&r) {
                        self.undo(&trail);
                        return None;
                    }
                    self.eta[i][q] = Some(r);
                    self.used[i][r] = true;
                    trail.push((i, q));
                }
            }
            for &(m, fm) in &self.out[i] {
                queue.push((m.domain, self.a1.act(q, m.elem), self.a2.act(r, fm.elem)));
            }
        }
        Some(trail)
    }

    fn undo(&mut self, trail: &[(usize, usize)]) {
        for &(i, q) in trail {
            let r = self.eta[i][q].take().unwrap();
            self.used[i][r] = false;
        }
    }

    fn search(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let next = (0..self.sets1.len())
            .flat_map(|i| self.sets1[i].iter().map(move |&q| (i, q)))
            .find(|&(i, q)| self.eta[i][q].is_none());
        let Some((i, q)) = next else {
            return Ok(true);
        };
        let candidates: Vec<usize> =
            self.sets2[self.objects[i]].iter().copied().filter(|&r| !self.used[i][r]).collect();
        for r in candidates {
            if let Some(trail) = self.assign(i, q, r) {
                if self.search()? {
                    return Ok(true);
                }
                self.undo(&trail);
            }
        }
        Ok(false)
    }
}

fn natural_bijections(
    k1: &ZeroCategory,
    a1: &PointedAction,
    a2: &PointedAction,
    sets1: &[Vec<usize>],
    sets2: &[Vec<usize>],
    f: &Functor,
    budget: u64,
) -> Result<Option<Vec<Vec<(usize, usize)>>>> {
    if (0..sets1.len()).any(|i| sets1[i].len() != sets2[f.objects[i]].len()) {
        return Ok(None);
    }
    let mut out = vec![Vec::new(); k1.object_count()];
    for &(m, fm) in &f.morphisms {
        out[m.range].push((m, fm));
    }
    let mut nat = Naturality {
        a1,
        a2,
        out,
        sets1: sets1.to_vec(),
        sets2: sets2.to_vec(),
        objects: f.objects.clone(),
        eta: vec![vec![None; a1.state_count()]; sets1.len()],
        used: vec![vec![false; a2.state_count()]; sets1.len()],
        nodes: 0,
        budget,
    };
    for i in 0..sets1.len() {
        if nat.assign(i, a1.base(), a2.base()).is_none() {
            return Ok(None);
        }
    }
    if !nat.search()? {
        return Ok(None);
    }
    Ok(Some(
        nat.eta
            .iter()
            .enumerate()
            .map(|(i, row)| sets1[i].iter().map(|&q| (q, row[q].unwrap())).collect())
            .collect(),
    ))
}

/// Searches all equivalences of the Karoubi envelopes (as skeleton
/// isomorphisms) for one that carries a natural isomorphism of the actions.
pub fn decide_action_equivalence(
    a1: &PointedAction,
    a2: &PointedAction,
    budget: u64,
) -> Result<Option<ActionWitness>> {
    let k1 = skeleton(&karoubi_envelope(a1.semigroup()));
    let k2 = skeleton(&karoubi_envelope(a2.semigroup()));
    let sets1 = karoubi_action(a1, &k1).sets;
    let sets2 = karoubi_action(a2, &k2).sets;
    // Objects are colored by the size of their state set.
    let mut sizes: HashMap<usize, u64> = HashMap::new();
    let mut color = |n: usize| {
        let len = sizes.len() as u64;
        *sizes.entry(n).or_insert(len)
    };
    let c1: Vec<u64> = sets1.iter().map(|s| color(s.len())).collect();
    let c2: Vec<u64> = sets2.iter().map(|s| color(s.len())).collect();
    let mut found = None;
    let mut failure = None;
    enumerate_equivalences(&k1, &k2, Some((&c1, &c2)), budget, &mut |f| {
        match natural_bijections(&k1, a1, a2, &sets1, &sets2, f, budget) {
            Ok(Some(eta)) => {
                found = Some(ActionWitness { functor: f.clone(), eta });
                true
            }
            Ok(None) => false,
            Err(e) => {
                failure = Some(e);
                true
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(found)
}
