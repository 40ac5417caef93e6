//! Randomized structural properties over small presentations.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{all_words, enumeration_depth, path_labels, presentation_from_seed};
use sofic_core::covers::{krieger_cover, pointed_communication_graph, cyclic_poset};
use sofic_core::invariants::{classify_shift, compare_shifts, property_a, subsynchronizing_poset, CompareOptions};
use sofic_core::karoubi::{decide_equivalence, is_snzd_preorder, karoubi_envelope};
use sofic_core::presentation::{higher_power_with_words, minimal_automaton, symbol_expansion};
use sofic_core::semigroup::{
    context_oracle, green_structure, semigroup_isomorphism, synchronizing_and_magic, transition_semigroup,
    ContextVerdict, DEFAULT_BUDGET,
};
use sofic_core::{Presentation, ShiftHandle};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn automaton_accepts_exactly_the_path_labels(seed in any::<u64>()) {
        let p = presentation_from_seed(seed, 5, 3);
        let dfa = minimal_automaton(&p);
        let v = p.vertex_count();
        let depth = enumeration_depth(p.alphabet().len(), 2 * v * v);
        let labels = path_labels(&p, depth);
        for w in all_words(p.alphabet().len(), depth) {
            prop_assert_eq!(dfa.accepts(&w), labels.contains(&w), "word {:?}", w);
        }
    }

    #[test]
    fn expansion_stays_essential_and_right_resolving(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let p = presentation_from_seed(seed, 5, 3);
        let letter = p.alphabet()[pick.index(p.alphabet().len())].clone();
        let q = symbol_expansion(&p, &letter, "◊").unwrap();
        let mut seen = BTreeSet::new();
        for e in q.edges() {
            prop_assert!(seen.insert((e.src, e.label)), "two edges leave {} with one label", e.src);
        }
        for v in 0..q.vertex_count() {
            prop_assert!(q.edges().iter().any(|e| e.src == v));
            prop_assert!(q.edges().iter().any(|e| e.dst == v));
        }
        prop_assert_eq!(Presentation::parse(&q.serialize()).unwrap(), q);
    }

    #[test]
    fn power_language_is_blocked_language(seed in any::<u64>(), n in 2usize..=3) {
        let p = presentation_from_seed(seed, 4, 2);
        let (q, words) = higher_power_with_words(&p, n).unwrap();
        let dfa = minimal_automaton(&p);
        let power_dfa = minimal_automaton(&q);
        let depth = enumeration_depth(q.alphabet().len().max(1), 3);
        for w in all_words(q.alphabet().len(), depth) {
            let flat: Vec<usize> = w.iter().flat_map(|&a| words[a].clone()).collect();
            prop_assert_eq!(power_dfa.accepts(&w), dfa.accepts(&flat));
        }
        // Every accepted word of length n is a letter.
        for w in all_words(p.alphabet().len(), n).into_iter().filter(|w| w.len() == n) {
            prop_assert_eq!(dfa.accepts(&w), words.contains(&w));
        }
    }

    #[test]
    fn semigroups_satisfy_laws(seed in any::<u64>()) {
        let p = presentation_from_seed(seed, 5, 3);
        let s = transition_semigroup(&minimal_automaton(&p));
        prop_assert_eq!(s.check_laws(), Ok(()));
    }

    #[test]
    fn oracle_matches_semigroup_equality(seed in any::<u64>(), picks in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 24)) {
        let p = presentation_from_seed(seed, 4, 3);
        let dfa = minimal_automaton(&p);
        let s = transition_semigroup(&dfa);
        let words = all_words(p.alphabet().len(), 5);
        let bound = 2 * dfa.state_count() * dfa.state_count();
        // Random pairs plus pairs known to share an element.
        let mut pairs: Vec<(usize, usize)> = picks.iter().map(|(a, b)| (a.index(words.len()), b.index(words.len()))).collect();
        for x in 0..s.len() {
            let same: Vec<usize> = (0..words.len()).filter(|&i| s.eval(&words[i]) == Some(x)).take(2).collect();
            if let [a, b] = same[..] {
                pairs.push((a, b));
            }
        }
        for (i, j) in pairs {
            let (u, v) = (&words[i], &words[j]);
            let equal = s.eval(u) == s.eval(v);
            let verdict = context_oracle(&p, u, v, bound).unwrap();
            prop_assert_eq!(verdict == ContextVerdict::Equal, equal, "{:?} vs {:?}", u, v);
        }
    }

    #[test]
    fn synchronizing_elements_form_an_ideal_with_zero(seed in any::<u64>()) {
        let p = presentation_from_seed(seed, 5, 3);
        let s = transition_semigroup(&minimal_automaton(&p));
        let sync: BTreeSet<usize> = synchronizing_and_magic(&s).synchronizing.into_iter().chain([s.zero()]).collect();
        for &x in &sync {
            for t in 0..s.len() {
                prop_assert!(sync.contains(&s.mul(x, t)));
                prop_assert!(sync.contains(&s.mul(t, x)));
            }
        }
    }

    #[test]
    fn synchronizing_contexts_come_from_idempotents(seed in any::<u64>()) {
        let h = ShiftHandle::new("x", presentation_from_seed(seed, 5, 3));
        prop_assume!(classify_shift(&h).irreducible);
        let (dfa, s) = (h.dfa(), h.semigroup());
        let start = dfa.initial();
        let idem: Vec<usize> = s.idempotents().into_iter().filter(|&e| e != s.zero()).collect();
        for x in synchronizing_and_magic(s).synchronizing {
            let q = dfa.run(start, s.witness(x).unwrap());
            prop_assert!(idem.iter().any(|&e| dfa.run(start, s.witness(e).unwrap()) == q), "element {}", s.name(x));
        }
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(a in any::<u64>(), b in any::<u64>()) {
        let s1 = ShiftHandle::new("a", presentation_from_seed(a, 4, 2)).semigroup().clone();
        let s2 = ShiftHandle::new("b", presentation_from_seed(b, 4, 2)).semigroup().clone();
        let (k1, k2) = (karoubi_envelope(&s1), karoubi_envelope(&s2));
        prop_assert!(decide_equivalence(&k1, &k1, DEFAULT_BUDGET).unwrap().is_some());
        let forward = decide_equivalence(&k1, &k2, DEFAULT_BUDGET).unwrap();
        let backward = decide_equivalence(&k2, &k1, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(forward.is_some(), backward.is_some());
        if let Some(f) = forward {
            prop_assert!(f.preserves_zero);
        }
    }

    #[test]
    fn compare_outcome_is_symmetric(a in any::<u64>(), b in any::<u64>()) {
        let h1 = ShiftHandle::new("a", presentation_from_seed(a, 4, 2));
        let h2 = ShiftHandle::new("b", presentation_from_seed(b, 4, 2));
        let opts = CompareOptions::default();
        let forward = compare_shifts(&h1, &h2, &opts).unwrap();
        let backward = compare_shifts(&h2, &h1, &opts).unwrap();
        prop_assert_eq!(forward.verdict, backward.verdict);
    }

    #[test]
    fn krieger_cover_is_faithful(seed in any::<u64>()) {
        let h = ShiftHandle::new("x", presentation_from_seed(seed, 5, 3));
        let (_, a) = krieger_cover(&h).unwrap();
        prop_assert!(a.is_faithful());
        prop_assert_eq!(a.check_laws(), Ok(()));
        prop_assert!(cyclic_poset(&a).isomorphism(&pointed_communication_graph(&a)).is_some());
    }

    #[test]
    fn property_a_implies_aperiodic(seed in any::<u64>()) {
        let h = ShiftHandle::new("x", presentation_from_seed(seed, 5, 3));
        if is_snzd_preorder(&karoubi_envelope(h.semigroup())) {
            prop_assert!(classify_shift(&h).aperiodic);
        }
        if property_a(&h) {
            prop_assert!(classify_shift(&h).aperiodic);
        }
    }

    #[test]
    fn subs_survives_expansion(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let p = presentation_from_seed(seed, 5, 3);
        let letter = p.alphabet()[pick.index(p.alphabet().len())].clone();
        let x = ShiftHandle::new("y", symbol_expansion(&p, &letter, "◊").unwrap());
        let h = ShiftHandle::new("x", p);
        prop_assert!(subsynchronizing_poset(&h).isomorphism(&subsynchronizing_poset(&x)).is_some());
    }

    #[test]
    fn green_d_classes_partition(seed in any::<u64>()) {
        let p = presentation_from_seed(seed, 5, 3);
        let s = transition_semigroup(&minimal_automaton(&p));
        let g = green_structure(&s);
        let mut all: Vec<usize> = g.d_classes.iter().flat_map(|d| d.members.clone()).collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..s.len()).collect::<Vec<_>>());
        prop_assert!(semigroup_isomorphism(&s, &s).is_some());
    }
}
