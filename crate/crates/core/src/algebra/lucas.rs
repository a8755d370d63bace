//! Binomial coefficients modulo 2.

/// `C(n, k) mod 2`: by Lucas' congruence this is 1 exactly when the binary
/// digits of `k` are a subset of those of `n`.
pub fn binom_mod2(n: u64, k: u64) -> bool {
    k <= n && (k & !n) == 0
}

/// `C(i + j, i) mod 2`, the coefficient of the iteration rule. Odd iff adding
/// `i` and `j` in binary produces no carry.
pub fn lucas_binom(i: u64, j: u64) -> bool {
    i & j == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(!lucas_binom(1, 1));
        assert!(lucas_binom(2, 1));
        for k in 0..64 {
            assert!(lucas_binom(0, k));
        }
        assert!(binom_mod2(3, 1) && binom_mod2(3, 2) && !binom_mod2(4, 2));
    }
}
