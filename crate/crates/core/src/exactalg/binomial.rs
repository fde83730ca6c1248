use super::Int;

/// `C(n, k)`, zero when `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> Int {
    if n < 0 || k < 0 || k > n {
        return Int::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = Int::ONE;
    for j in 0..k {
        acc = (&acc * &Int::small(n - j))
            .div_exact(&Int::small(j + 1))
            .expect("exact");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn pascal_rule() {
        for n in 1..40 {
            for k in -1..=n + 1 {
                assert_eq!(
                    binomial(n, k),
                    &binomial(n - 1, k - 1) + &binomial(n - 1, k)
                );
            }
        }
        assert_eq!(binomial(5, 2), Int::small(10));
        assert_eq!(binomial(-1, 0), Int::ZERO);
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }
}
