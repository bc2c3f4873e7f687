//! Integer factorization at desk scale: trial division, deterministic
//! Miller-Rabin, perfect-power reduction together with Brent's variant of
//! Pollard rho. All randomness is seeded from the input, so results are
//! reproducible across runs and thread schedules.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Effort cap for the rho stage. Numbers whose remaining cofactor resists
/// this many iterations produce `Error::BudgetExceeded` instead of a wrong
/// or never-terminating answer.
#[derive(Clone, Copy, Debug)]
pub struct FactorEffort {
    pub rho_iters_u64: u64,
    pub rho_iters_big: u64,
}

impl Default for FactorEffort {
    fn default() -> Self {
        FactorEffort {
            rho_iters_u64: 1 << 26,
            rho_iters_big: 1 << 21,
        }
    }
}

const TRIAL_BOUND: u64 = 4096;

fn small_primes() -> Vec<u64> {
    let mut sieve = vec![true; TRIAL_BOUND as usize + 1];
    let mut out = Vec::new();
    for i in 2..=TRIAL_BOUND as usize {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= TRIAL_BOUND as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn mulmod64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod64(acc, b, m);
        }
        b = mulmod64(b, b, m);
        e >>= 1;
    }
    acc
}

fn miller_rabin_u64(n: u64, bases: &[u64]) -> bool {
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'base: for &a in bases {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = powmod64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod64(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn miller_rabin_big(n: &BigUint, bases: &[BigUint]) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'base: for a in bases {
        let a = a % n;
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Primality test. Deterministic (fixed witness set) below 3.3e24; above
/// that, 64 Miller-Rabin rounds with witnesses derived from the input.
pub fn is_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    // the first 12 primes are a proven witness set below 3,317,044,064,679,887,385,961,981
    let det_bound = BigUint::parse_bytes(b"3317044064679887385961981", 10).unwrap();
    let bases: Vec<BigUint> = if *n < det_bound {
        [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
            .iter()
            .map(|&b| BigUint::from(b))
            .collect()
    } else {
        let mut st = n.iter_u64_digits().fold(0xd1b54a32d192ed03u64, |a, d| {
            a.rotate_left(17) ^ d
        });
        (0..64)
            .map(|_| BigUint::from(splitmix(&mut st) | 1))
            .collect()
    };
    if let Some(n64) = n.to_u64() {
        return miller_rabin_u64(
            n64,
            &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37],
        );
    }
    miller_rabin_big(n, &bases)
}

fn rho_u64(n: u64, effort: u64) -> Option<u64> {
    let mut st = n ^ 0x9e3779b97f4a7c15;
    for _ in 0..40 {
        let c = splitmix(&mut st) % (n - 2) + 1;
        let mut x = splitmix(&mut st) % n;
        let mut y = x;
        let mut iters = 0u64;
        let mut prod = 1u64;
        let f = |v: u64| (mulmod64(v, v, n) + c) % n;
        let mut count = 0u32;
        let mut saved_x = x;
        let mut saved_y = y;
        loop {
            x = f(x);
            y = f(f(y));
            iters += 1;
            if iters > effort / 40 {
                break;
            }
            let diff = x.abs_diff(y);
            if diff == 0 {
                break; // cycle without factor; retry with a new c
            }
            prod = mulmod64(prod, diff, n);
            count += 1;
            if count == 128 {
                let g = prod.gcd(&n);
                if g > 1 && g < n {
                    return Some(g);
                }
                if g == n {
                    // backtrack one batch step by step
                    let (mut bx, mut by) = (saved_x, saved_y);
                    for _ in 0..128 {
                        bx = f(bx);
                        by = f(f(by));
                        let g = bx.abs_diff(by).gcd(&n);
                        if g > 1 && g < n {
                            return Some(g);
                        }
                    }
                    break;
                }
                prod = 1;
                count = 0;
                saved_x = x;
                saved_y = y;
            }
        }
    }
    None
}

fn rho_big(n: &BigUint, effort: u64) -> Option<BigUint> {
    let mut st = n.iter_u64_digits().fold(0x2545f4914f6cdd1du64, |a, d| {
        a.rotate_left(23) ^ d
    });
    let two = BigUint::from(2u32);
    for _ in 0..20 {
        let c = BigUint::from(splitmix(&mut st)) % (n - &two) + BigUint::one();
        let mut x = BigUint::from(splitmix(&mut st)) % n;
        let mut y = x.clone();
        let f = |v: &BigUint| (v * v + &c) % n;
        let mut prod = BigUint::one();
        let mut count = 0u32;
        let mut iters = 0u64;
        let (mut saved_x, mut saved_y) = (x.clone(), y.clone());
        loop {
            x = f(&x);
            y = f(&f(&y));
            iters += 1;
            if iters > effort / 20 {
                break;
            }
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            prod = (prod * diff) % n;
            count += 1;
            if count == 64 {
                let g = prod.gcd(n);
                if !g.is_one() && &g != n {
                    return Some(g);
                }
                if &g == n {
                    let (mut bx, mut by) = (saved_x.clone(), saved_y.clone());
                    for _ in 0..64 {
                        bx = f(&bx);
                        by = f(&f(&by));
                        let diff = if bx > by { &bx - &by } else { &by - &bx };
                        let g = diff.gcd(n);
                        if !g.is_one() && &g != n {
                            return Some(g);
                        }
                    }
                    break;
                }
                prod = BigUint::one();
                count = 0;
                saved_x = x.clone();
                saved_y = y.clone();
            }
        }
    }
    None
}

fn factor_into(
    n: BigUint,
    out: &mut BTreeMap<BigUint, u32>,
    mult: u32,
    effort: &FactorEffort,
) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += mult;
        return Ok(());
    }
    // perfect powers: x-coordinate denominators are often squares
    for k in [2u32, 3, 5, 7] {
        let r = n.nth_root(k);
        if r.pow(k) == n {
            return factor_into(r, out, mult * k, effort);
        }
    }
    let d = if let Some(n64) = n.to_u64() {
        rho_u64(n64, effort.rho_iters_u64).map(BigUint::from)
    } else {
        rho_big(&n, effort.rho_iters_big)
    };
    match d {
        Some(d) => {
            let q = &n / &d;
            factor_into(d, out, mult, effort)?;
            factor_into(q, out, mult, effort)
        }
        None => Err(Error::BudgetExceeded(format!(
            "integer factorization stalled on a {}-bit cofactor",
            n.bits()
        ))),
    }
}

/// Full factorization of a positive integer. Errors with `BudgetExceeded`
/// when the rho effort cap is hit.
pub fn factor(n: &BigUint, effort: &FactorEffort) -> Result<BTreeMap<BigUint, u32>> {
    assert!(!n.is_zero(), "factor(0) is undefined");
    let mut out = BTreeMap::new();
    let mut n = n.clone();
    for p in small_primes() {
        let p = BigUint::from(p);
        if &p * &p > n {
            break;
        }
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.insert(p, e);
        }
    }
    factor_into(n, &mut out, 1, effort)?;
    Ok(out)
}

/// Factor a signed integer, returning prime -> exponent for |n|.
pub fn factor_int(n: &BigInt, effort: &FactorEffort) -> Result<BTreeMap<BigUint, u32>> {
    factor(n.magnitude(), effort)
}

/// p-adic valuation of a nonzero rational n/d as (v_p(n) - v_p(d)).
pub fn valuation_int(n: &BigInt, p: &BigUint) -> u32 {
    assert!(!n.is_zero());
    let mut m = n.magnitude().clone();
    let mut v = 0;
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: u64) -> BTreeMap<BigUint, u32> {
        factor(&BigUint::from(n), &FactorEffort::default()).unwrap()
    }

    #[test]
    fn small_factorizations() {
        let f = fac(599074580); // 2^2 * 5 * 13^2 * 421^2 -- norm of phi^42 + 1
        assert_eq!(f[&BigUint::from(2u32)], 2);
        assert_eq!(f[&BigUint::from(5u32)], 1);
        assert_eq!(f[&BigUint::from(13u32)], 2);
        assert_eq!(f[&BigUint::from(421u32)], 2);
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 2u64..2000 {
            let trial = (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(&BigUint::from(n)), trial, "n = {}", n);
        }
    }

    #[test]
    fn fibonacci_primality_spots() {
        // F_19 = 4181 = 37 * 113, F_17 = 1597 prime
        assert!(!is_prime(&BigUint::from(4181u32)));
        assert!(is_prime(&BigUint::from(1597u32)));
        let f = fac(4181);
        assert_eq!(f[&BigUint::from(37u32)], 1);
        assert_eq!(f[&BigUint::from(113u32)], 1);
    }

    #[test]
    fn large_semiprime_within_effort() {
        // two 9-digit primes
        let a = BigUint::from(1_000_000_007u64);
        let b = BigUint::from(999_999_937u64);
        let f = factor(&(&a * &b), &FactorEffort::default()).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[&a], 1);
        assert_eq!(f[&b], 1);
    }

    #[test]
    fn perfect_square_reduction() {
        let a = BigUint::from(1_000_000_007u64);
        let f = factor(&(&a * &a), &FactorEffort::default()).unwrap();
        assert_eq!(f[&a], 2);
    }
}
