use serde::{Deserialize, Serialize};

/// A `p`-cyclotomic coset modulo `q - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicCoset {
    pub leader: u64,
    /// Sorted members.
    pub members: Vec<u64>,
    pub modulus: u64,
}

impl CyclotomicCoset {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: u64) -> bool {
        self.members.binary_search(&(i % self.modulus)).is_ok()
    }
}

/// `C_i = {i·p^j mod (q-1)}`; `i` is taken modulo `q - 1`.
pub fn cyclotomic_coset(i: u64, p: u64, q: u64) -> CyclotomicCoset {
    let modulus = q - 1;
    let start = i % modulus;
    let mut members = vec![start];
    let mut cur = (start as u128 * p as u128 % modulus as u128) as u64;
    while cur != start {
        members.push(cur);
        cur = (cur as u128 * p as u128 % modulus as u128) as u64;
    }
    members.sort_unstable();
    CyclotomicCoset {
        leader: members[0],
        members,
        modulus,
    }
}
