//! Shift transformations: symbol expansion, higher block and higher power
//! presentations.

use std::collections::BTreeSet;

use super::{spell, Letter, Presentation, Word};
use crate::error::{Error, Result};

/// Presentation of the symbol expansion relative to `letter`: each
/// `letter`-edge `s → t` becomes `s → m → t` through a fresh vertex `m`,
/// the second edge labeled `fresh`.
pub fn symbol_expansion(p: &Presentation, letter: &str, fresh: &str) -> Result<Presentation> {
    let alpha = p
        .letter(letter)
        .ok_or_else(|| Error::LetterNotInAlphabet(letter.to_string()))?;
    if p.letter(fresh).is_some() {
        return Err(Error::LetterCollision(fresh.to_string()));
    }
    let mut names: BTreeSet<String> = p.vertex_names().iter().cloned().collect();
    let mut triples = Vec::new();
    for e in p.edges() {
        let src = &p.vertex_names()[e.src];
        let dst = &p.vertex_names()[e.dst];
        if e.label == alpha {
            let mut mid = format!("{src}~{letter}");
            while names.contains(&mid) {
                mid.push('\'');
            }
            names.insert(mid.clone());
            triples.push((src.clone(), letter.to_string(), mid.clone()));
            triples.push((mid, fresh.to_string(), dst.clone()));
        } else {
            triples.push((src.clone(), p.alphabet()[e.label].clone(), dst.clone()));
        }
    }
    Presentation::from_edges(triples)
}

/// All label paths of length `len`, as `(start, word, end)`.
fn paths(p: &Presentation, len: usize) -> Vec<(usize, Word, usize)> {
    let mut cur: Vec<(usize, Word, usize)> =
        (0..p.vertex_count()).map(|v| (v, Vec::new(), v)).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for (s, w, v) in &cur {
            for a in 0..p.alphabet().len() {
                if let Some(t) = p.step(*v, a) {
                    let mut w2 = w.clone();
                    w2.push(a);
                    next.push((*s, w2, t));
                }
            }
        }
        cur = next;
    }
    cur
}

/// Higher block presentation: vertices are pairs (label path of length
/// `n - 1`, its endpoint) and edges are labeled by `n`-blocks. The presented
/// shift is conjugate to the original.
pub fn higher_block(p: &Presentation, n: usize) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::InvalidArgument("block length must be positive".into()));
    }
    if n == 1 {
        return Ok(p.clone());
    }
    let alphabet = p.alphabet();
    let states: BTreeSet<(Word, usize)> =
        paths(p, n - 1).into_iter().map(|(_, w, v)| (w, v)).collect();
    let name = |w: &[Letter], v: usize| format!("{}@{}", spell(alphabet, w), p.vertex_names()[v]);
    let mut triples = Vec::new();
    for (w, v) in &states {
        for a in 0..alphabet.len() {
            if let Some(t) = p.step(*v, a) {
                let mut block = w.clone();
                block.push(a);
                triples.push((name(w, *v), spell(alphabet, &block), name(&block[1..], t)));
            }
        }
    }
    Presentation::from_edges(triples)
}

/// Higher power presentation over the alphabet of `n`-words, together with
/// the word each new letter stands for.
pub fn higher_power_with_words(p: &Presentation, n: usize) -> Result<(Presentation, Vec<Word>)> {
    if n == 0 {
        return Err(Error::InvalidArgument("power must be positive".into()));
    }
    if n == 1 {
        let words = (0..p.alphabet().len()).map(|a| vec![a]).collect();
        return Ok((p.clone(), words));
    }
    let names = p.vertex_names();
    let triples: Vec<(String, String, String)> = paths(p, n)
        .into_iter()
        .map(|(s, w, t)| (names[s].clone(), spell(p.alphabet(), &w), names[t].clone()))
        .collect();
    let mut spelled: Vec<(String, Word)> = paths(p, n)
        .into_iter()
        .map(|(_, w, _)| (spell(p.alphabet(), &w), w))
        .collect();
    spelled.sort();
    spelled.dedup();
    let q = Presentation::from_edges(triples)?;
    let words = q
        .alphabet()
        .iter()
        .map(|a| {
            let i = spelled.binary_search_by(|(s, _)| s.as_str().cmp(a)).expect("letter spelled");
            spelled[i].1.clone()
        })
        .collect();
    Ok((q, words))
}

/// Higher power presentation: same vertices, one edge per label path of
/// length `n`.
pub fn higher_power(p: &Presentation, n: usize) -> Result<Presentation> {
    higher_power_with_words(p, n).map(|(q, _)| q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gm() -> Presentation {
        Presentation::parse("1 a 1\n1 b 2\n2 a 1\n").unwrap()
    }

    #[test]
    fn expanding_a_loop_gives_a_two_cycle() {
        let p = Presentation::parse("1 a 1\n").unwrap();
        let q = symbol_expansion(&p, "a", "d").unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.edges().len(), 2);
        assert!(q.is_strongly_connected());
    }

    #[test]
    fn expanding_golden_mean() {
        let q = symbol_expansion(&gm(), "a", "d").unwrap();
        assert_eq!(q.vertex_count(), 4);
        assert_eq!(q.edges().len(), 5);
        assert_eq!(q.alphabet(), ["a", "b", "d"]);
    }

    #[test]
    fn expansion_errors() {
        assert_eq!(
            symbol_expansion(&gm(), "c", "d").unwrap_err(),
            Error::LetterNotInAlphabet("c".into())
        );
        assert_eq!(
            symbol_expansion(&gm(), "a", "b").unwrap_err(),
            Error::LetterCollision("b".into())
        );
    }

    #[test]
    fn expansion_names_avoid_existing_vertices() {
        let p = Presentation::parse("1 a 1~a\n1~a b 1\n").unwrap();
        let q = symbol_expansion(&p, "a", "d").unwrap();
        assert_eq!(q.vertex_count(), 3);
    }

    #[test]
    fn block_and_power_of_one_are_identities() {
        assert_eq!(higher_block(&gm(), 1).unwrap(), gm());
        assert_eq!(higher_power(&gm(), 1).unwrap(), gm());
    }

    #[test]
    fn golden_mean_two_blocks() {
        let q = higher_block(&gm(), 2).unwrap();
        assert_eq!(q.alphabet(), ["aa", "ab", "ba"]);
        // Blocks of the original shift of length 2 are exactly aa, ab, ba.
        let bb = q.letter("ab").unwrap();
        let ba = q.letter("ba").unwrap();
        assert!(q.accepts(&[bb, ba]));
        assert!(!q.accepts(&[bb, bb]));
    }

    #[test]
    fn golden_mean_square() {
        let (q, words) = higher_power_with_words(&gm(), 2).unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.alphabet(), ["aa", "ab", "ba"]);
        // Paths of length 2: 1aa1, 1ab2, 1ba1, 2aa1, 2ab2.
        assert_eq!(q.edges().len(), 5);
        assert_eq!(words[1], vec![0, 1]);
    }

    #[test]
    fn full_shift_square_is_full_on_four_letters() {
        let p = Presentation::parse("x a x\nx b x\n").unwrap();
        let q = higher_power(&p, 2).unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.alphabet().len(), 4);
    }

    #[test]
    fn zero_parameters_are_rejected() {
        assert!(higher_block(&gm(), 0).is_err());
        assert!(higher_power(&gm(), 0).is_err());
    }
}
