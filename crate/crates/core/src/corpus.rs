//! Named example shifts and seeded random presentations for property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::presentation::Presentation;

fn parse(text: &str) -> Presentation {
    Presentation::parse(text).expect("built-in example is valid")
}

/// No two consecutive `b`s.
pub fn golden_mean() -> Presentation {
    parse("1 a 1\n1 b 2\n2 a 1\n")
}

/// Even runs of `0` between `1`s.
pub fn even_shift() -> Presentation {
    parse("A 1 A\nA 0 B\nB 0 A\n")
}

pub fn full_shift(letters: &[&str]) -> Presentation {
    Presentation::from_edges(letters.iter().map(|&a| ("x", a, "x"))).expect("non-empty alphabet")
}

pub fn named_examples() -> Vec<(&'static str, Presentation)> {
    vec![
        ("golden_mean", golden_mean()),
        ("even", even_shift()),
        ("full_1", full_shift(&["a"])),
        ("full_2", full_shift(&["a", "b"])),
        ("bridge", parse("1 a 1\n1 b 2\n2 c 2\n")),
        ("disjoint_full", parse("x a x\ny b y\n")),
    ]
}

/// A random essential right-resolving presentation with at most
/// `max_vertices` vertices over at most `max_letters` letters.
pub fn random_presentation<R: Rng>(rng: &mut R, max_vertices: usize, max_letters: usize) -> Presentation {
    const LETTERS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
    loop {
        let n = rng.gen_range(1..=max_vertices);
        let k = rng.gen_range(1..=max_letters.min(LETTERS.len()));
        let density: f64 = rng.gen_range(0.3..0.9);
        let mut edges = Vec::new();
        for v in 0..n {
            for &a in &LETTERS[..k] {
                if rng.gen_bool(density) {
                    edges.push((v.to_string(), a.to_string(), rng.gen_range(0..n).to_string()));
                }
            }
        }
        if let Ok(p) = Presentation::from_edges(edges) {
            return p;
        }
    }
}

/// `count` random presentations (at most 5 vertices, 3 letters) from a
/// fixed seed.
pub fn random_corpus(seed: u64, count: usize) -> Vec<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_presentation(&mut rng, 5, 3)).collect()
}

/// A letter of `p` chosen by the seeded generator.
pub fn random_letter<R: Rng>(rng: &mut R, p: &Presentation) -> String {
    p.alphabet().choose(rng).expect("non-empty alphabet").clone()
}

/// Strongly connected graphs with every edge carrying its own label.
pub fn edge_shift_graphs(seed: u64, count: usize) -> Vec<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(1..=4);
        let mut edges = Vec::new();
        // A spanning cycle keeps the graph strongly connected.
        for v in 0..n {
            edges.push((v, (v + 1) % n));
        }
        for _ in 0..rng.gen_range(0..=n + 1) {
            edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
        }
        let labeled = edges
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| (s.to_string(), format!("e{i}"), t.to_string()));
        let p = Presentation::from_edges(labeled).expect("cycle-based graph is essential");
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic() {
        let a = random_corpus(7, 20);
        let b = random_corpus(7, 20);
        assert_eq!(a, b);
        for p in &a {
            assert!(p.vertex_count() <= 5 && p.alphabet().len() <= 3);
        }
    }

    #[test]
    fn edge_shifts_are_edge_injective() {
        for p in edge_shift_graphs(3, 10) {
            assert!(p.is_edge_injective());
            assert!(p.is_strongly_connected());
        }
    }
}
