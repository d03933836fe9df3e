use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const BASES: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

/// Miller-Rabin over the first 12 prime bases, which is exact below
/// 3.3e24. Larger inputs use all 20 bases.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for &b in &BASES {
            if small == u64::from(b) {
                return true;
            }
            if small % u64::from(b) == 0 {
                return false;
            }
        }
    } else if BASES.iter().any(|&b| (n % b).is_zero()) {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let exact_below: BigUint = "3317044064679887385961981".parse().unwrap();
    let rounds = if *n < exact_below { 12 } else { BASES.len() };
    'bases: for &b in &BASES[..rounds] {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Least prime strictly greater than `x`.
pub fn smallest_prime_above(x: &BigUint) -> BigUint {
    let mut n = x + 1u32;
    if n <= BigUint::from(2u32) {
        return BigUint::from(2u32);
    }
    if n.is_even() {
        n += 1u32;
    }
    while !is_prime(&n) {
        n += 2u32;
    }
    n
}
