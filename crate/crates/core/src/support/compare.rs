/// Two-party comparison between `P1` (holding `s1`) and `P_M` (holding
/// `s_M`): is `(s1 + s_M) mod q` in the lower half of `Z_q`? Implementations
/// must reveal nothing but the bit.
pub trait Comparator {
    fn lower_half(&mut self, s1: u64, s_m: u64, q: u64) -> bool;
}

/// `(s1 + s_M) mod q < q/2`, i.e. `2·((s1 + s_M) mod q) < q`.
pub fn ideal_compare(s1: u64, s_m: u64, q: u64) -> bool {
    let q = u128::from(q);
    let sum = (u128::from(s1) + u128::from(s_m)) % q;
    2 * sum < q
}

/// A trusted black box computing [`ideal_compare`]. Counts invocations.
#[derive(Clone, Debug, Default)]
pub struct IdealComparator {
    invocations: u64,
}

impl IdealComparator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn invocations(&self) -> u64 {
        self.invocations
    }
}

impl Comparator for IdealComparator {
    fn lower_half(&mut self, s1: u64, s_m: u64, q: u64) -> bool {
        self.invocations += 1;
        ideal_compare(s1, s_m, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_cases() {
        assert!(ideal_compare(5, 14, 17));
        assert!(ideal_compare(0, 0, 17));
        assert!(!ideal_compare(16, 0, 17));
        assert!(ideal_compare(8, 0, 17));
        assert!(!ideal_compare(9, 0, 17));
    }

    #[test]
    fn counts_calls() {
        let mut c = IdealComparator::new();
        c.lower_half(1, 2, 17);
        c.lower_half(1, 2, 17);
        assert_eq!(c.invocations(), 2);
    }
}
