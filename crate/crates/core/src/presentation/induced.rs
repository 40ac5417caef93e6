use super::Presentation;
use crate::error::{Error, Result};
use crate::semigroup::FinSemigroupZ;

/// Presentation of the shift whose factors are the words mapped off zero by
/// the letter assignment `gens`.
///
/// Built from the right Cayley graph on the non-zero elements and trimmed.
pub fn induced_shift(s: &FinSemigroupZ, gens: &[(String, usize)]) -> Result<Presentation> {
    let z = s.zero();
    let images: Vec<usize> = gens.iter().map(|&(_, g)| g).collect();
    let mut generated = s.closure(&images);
    if !generated.contains(&z) {
        generated.push(z);
    }
    if generated.len() != s.len() {
        return Err(Error::GensDoNotGenerate);
    }
    for x in s.nonzero() {
        let inside = (0..s.len()).any(|l| {
            let lx = s.mul(l, x);
            lx != z && (0..s.len()).any(|r| s.mul(lx, r) != z)
        });
        if !inside {
            return Err(Error::NotProlongable { element: s.name(x).to_string() });
        }
    }
    let mut edges = Vec::new();
    for x in s.nonzero() {
        for (name, g) in gens {
            let y = s.mul(x, *g);
            if y != z {
                edges.push((s.name(x).to_string(), name.clone(), s.name(y).to_string()));
            }
        }
    }
    Presentation::from_edges(edges)
}
