use super::FinSemigroupZ;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncStructure {
    /// Non-zero synchronizing elements, sorted.
    pub synchronizing: Vec<usize>,
    /// Non-zero synchronizing idempotents.
    pub magic: Vec<usize>,
}

/// `s` is synchronizing iff `rs ≠ 0` and `st ≠ 0` imply `rst ≠ 0`.
pub fn is_synchronizing(s: &FinSemigroupZ, x: usize) -> bool {
    let z = s.zero();
    let left: Vec<usize> = (0..s.len()).filter(|&r| s.mul(r, x) != z).collect();
    let right: Vec<usize> = (0..s.len()).filter(|&t| s.mul(x, t) != z).collect();
    left.iter().all(|&r| {
        let rx = s.mul(r, x);
        right.iter().all(|&t| s.mul(rx, t) != z)
    })
}

pub fn synchronizing_and_magic(s: &FinSemigroupZ) -> SyncStructure {
    let synchronizing: Vec<usize> = s.nonzero().filter(|&x| is_synchronizing(s, x)).collect();
    let magic = synchronizing.iter().copied().filter(|&x| s.is_idempotent(x)).collect();
    SyncStructure { synchronizing, magic }
}
