use std::collections::{HashMap, VecDeque};

use super::FinSemigroupZ;
use crate::presentation::{spell, Dfa, Presentation, Word};

/// Closure of letter transformations of a complete automaton whose state
/// `sink` is absorbing. Elements are numbered in shortlex order of their
/// least witnesses; the all-to-sink map is adjoined as zero when no word
/// produces it.
fn closure_of_maps(letters: Vec<Vec<usize>>, sink: usize, alphabet: &[String]) -> FinSemigroupZ {
    let states = letters.first().map_or(sink + 1, Vec::len);
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let mut witnesses: Vec<Option<Word>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut letter_map = Vec::with_capacity(letters.len());
    for (a, m) in letters.iter().enumerate() {
        let id = *index.entry(m.clone()).or_insert_with(|| {
            maps.push(m.clone());
            witnesses.push(Some(vec![a]));
            queue.push_back(maps.len() - 1);
            maps.len() - 1
        });
        letter_map.push(id);
    }
    while let Some(x) = queue.pop_front() {
        for (a, m) in letters.iter().enumerate() {
            let y: Vec<usize> = maps[x].iter().map(|&q| m[q]).collect();
            if !index.contains_key(&y) {
                index.insert(y.clone(), maps.len());
                maps.push(y);
                let mut w = witnesses[x].clone().unwrap();
                w.push(a);
                witnesses.push(Some(w));
                queue.push_back(maps.len() - 1);
            }
        }
    }
    let zero_map = vec![sink; states];
    let zero = match index.get(&zero_map) {
        Some(&z) => z,
        None => {
            index.insert(zero_map.clone(), maps.len());
            maps.push(zero_map);
            witnesses.push(None);
            maps.len() - 1
        }
    };
    let table = maps
        .iter()
        .map(|s| {
            maps.iter()
                .map(|t| index[&s.iter().map(|&q| t[q]).collect::<Vec<_>>()])
                .collect()
        })
        .collect();
    let names = (0..maps.len())
        .map(|x| {
            if x == zero {
                "0".to_string()
            } else {
                format!("[{}]", spell(alphabet, witnesses[x].as_ref().unwrap()))
            }
        })
        .collect();
    FinSemigroupZ::from_parts(table, zero, names, witnesses, alphabet.to_vec(), letter_map)
}

/// Syntactic semigroup of the language recognized by a minimal automaton,
/// realized as the semigroup of its state transformations (sink included).
pub fn transition_semigroup(d: &Dfa) -> FinSemigroupZ {
    let letters = (0..d.alphabet().len())
        .map(|a| (0..d.state_count()).map(|q| d.step(q, a)).collect())
        .collect();
    closure_of_maps(letters, d.sink(), d.alphabet())
}

/// Transition semigroup of a right-resolving labeled graph: the partial maps
/// on its vertices generated by the letters, with an adjoined sink state.
pub fn graph_transition_semigroup(p: &Presentation) -> FinSemigroupZ {
    let sink = p.vertex_count();
    let letters = (0..p.alphabet().len())
        .map(|a| {
            (0..=sink)
                .map(|v| if v == sink { sink } else { p.step(v, a).unwrap_or(sink) })
                .collect()
        })
        .collect();
    closure_of_maps(letters, sink, p.alphabet())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{minimal_automaton, Presentation};

    fn sg(text: &str) -> FinSemigroupZ {
        transition_semigroup(&minimal_automaton(&Presentation::parse(text).unwrap()))
    }

    #[test]
    fn full_shift_is_two_elements() {
        let s = sg("x a x\nx b x\n");
        assert_eq!(s.len(), 2);
        assert_eq!(s.names(), ["[a]", "0"]);
        assert!(s.witness(s.zero()).is_none());
        assert!(s.is_idempotent(0));
    }

    #[test]
    fn golden_mean_has_five_elements() {
        let s = sg("1 a 1\n1 b 2\n2 a 1\n");
        assert_eq!(s.names(), ["[a]", "[b]", "[ab]", "[ba]", "0"]);
        let idem: Vec<&str> = s.idempotents().iter().map(|&x| s.name(x)).collect();
        assert_eq!(idem, ["[a]", "[ab]", "[ba]", "0"]);
        assert!(s.check_laws().is_ok());
    }

    #[test]
    fn even_shift_contains_a_swap() {
        let p = Presentation::parse("A 1 A\nA 0 B\nB 0 A\n").unwrap();
        let d = minimal_automaton(&p);
        let s = transition_semigroup(&d);
        let zero_letter = s.letter_map()[p.letter("0").unwrap()];
        // [0] is not idempotent but [00] is, and [000] = [0]: a group of order 2.
        let sq = s.mul(zero_letter, zero_letter);
        assert_ne!(sq, zero_letter);
        assert!(s.is_idempotent(sq));
        assert_eq!(s.mul(sq, zero_letter), zero_letter);
    }

    #[test]
    fn graph_semigroup_of_minimal_presentation_matches() {
        let p = Presentation::parse("1 a 1\n1 b 2\n2 a 1\n").unwrap();
        assert_eq!(graph_transition_semigroup(&p).len(), 5);
    }
}
