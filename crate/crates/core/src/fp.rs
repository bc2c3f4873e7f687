//! Polynomial arithmetic and factorization over a prime field F_p.
//!
//! The modulus is an arbitrary-precision prime (rho factors of norms can
//! exceed 64 bits), coefficients are `BigUint` reduced mod p. Factorization
//! is squarefree decomposition + distinct-degree + equal-degree splitting;
//! the equal-degree stage enumerates candidate divisors outright when p^i
//! is tiny and otherwise runs Cantor-Zassenhaus with input-seeded
//! randomness so results are reproducible.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::ZPoly;

#[derive(Clone, Debug)]
pub struct Fp {
    pub p: BigUint,
}

pub type FpPoly = Vec<BigUint>;

fn trim(mut f: FpPoly) -> FpPoly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

fn deg(f: &FpPoly) -> usize {
    f.len().saturating_sub(1)
}

impl Fp {
    pub fn new(p: BigUint) -> Self {
        Fp { p }
    }

    fn reduce_int(&self, c: &BigInt) -> BigUint {
        let p = BigInt::from(self.p.clone());
        let mut r = c % &p;
        if r.is_negative() {
            r += &p;
        }
        r.magnitude().clone()
    }

    pub fn from_zpoly(&self, f: &ZPoly) -> FpPoly {
        trim(f.coeffs.iter().map(|c| self.reduce_int(c)).collect())
    }

    /// Lift with coefficients in [0, p).
    pub fn lift(&self, f: &FpPoly) -> ZPoly {
        ZPoly::new(f.iter().map(|c| BigInt::from(c.clone())).collect())
    }

    pub fn inv(&self, a: &BigUint) -> BigUint {
        let e = BigInt::from(a.clone()).extended_gcd(&BigInt::from(self.p.clone()));
        assert!(e.gcd.is_one(), "inverse of a non-unit mod p");
        self.reduce_int(&e.x)
    }

    pub fn add(&self, f: &FpPoly, g: &FpPoly) -> FpPoly {
        let n = f.len().max(g.len());
        trim(
            (0..n)
                .map(|i| {
                    let a = f.get(i).cloned().unwrap_or_default();
                    let b = g.get(i).cloned().unwrap_or_default();
                    (a + b) % &self.p
                })
                .collect(),
        )
    }

    pub fn sub(&self, f: &FpPoly, g: &FpPoly) -> FpPoly {
        let n = f.len().max(g.len());
        trim(
            (0..n)
                .map(|i| {
                    let a = f.get(i).cloned().unwrap_or_default();
                    let b = g.get(i).cloned().unwrap_or_default();
                    (&self.p + a - b % &self.p) % &self.p
                })
                .collect(),
        )
    }

    pub fn mul(&self, f: &FpPoly, g: &FpPoly) -> FpPoly {
        if f.is_empty() || g.is_empty() {
            return vec![];
        }
        let mut out = vec![BigUint::zero(); f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                out[i + j] = (&out[i + j] + a * b) % &self.p;
            }
        }
        trim(out)
    }

    pub fn divrem(&self, f: &FpPoly, g: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!g.is_empty(), "division by zero polynomial");
        let dg = deg(g);
        let lead_inv = self.inv(g.last().unwrap());
        let mut rem = f.clone();
        let mut quo = vec![BigUint::zero(); rem.len().saturating_sub(dg)];
        while rem.len() > dg {
            let c = (rem.last().unwrap() * &lead_inv) % &self.p;
            let k = rem.len() - 1 - dg;
            if !c.is_zero() {
                quo[k] = c.clone();
                for (i, gc) in g.iter().enumerate() {
                    let sub = (&c * gc) % &self.p;
                    rem[k + i] = (&self.p + &rem[k + i] - sub) % &self.p;
                }
            }
            rem.pop();
        }
        (trim(quo), trim(rem))
    }

    pub fn rem(&self, f: &FpPoly, g: &FpPoly) -> FpPoly {
        self.divrem(f, g).1
    }

    pub fn monic(&self, f: &FpPoly) -> FpPoly {
        if f.is_empty() {
            return vec![];
        }
        let inv = self.inv(f.last().unwrap());
        trim(f.iter().map(|c| (c * &inv) % &self.p).collect())
    }

    pub fn gcd(&self, f: &FpPoly, g: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.monic(&a)
        }
    }

    /// Extended gcd: (g, s, t) with s*f + t*h = g, g monic.
    pub fn gcd_ext(&self, f: &FpPoly, h: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (f.clone(), h.clone());
        let (mut s0, mut s1) = (vec![BigUint::one()], vec![]);
        let (mut t0, mut t1) = (vec![], vec![BigUint::one()]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let ns = self.sub(&s0, &self.mul(&q, &s1));
            let nt = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
            t0 = t1;
            t1 = nt;
        }
        if r0.is_empty() {
            return (r0, s0, t0);
        }
        let inv = self.inv(r0.last().unwrap());
        let scale = |v: &FpPoly| trim(v.iter().map(|c| (c * &inv) % &self.p).collect());
        (scale(&r0), scale(&s0), scale(&t0))
    }

    pub fn powmod(&self, base: &FpPoly, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = vec![BigUint::one()];
        let mut b = self.rem(base, m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
            if i + 1 < bits {
                b = self.rem(&self.mul(&b, &b), m);
            }
        }
        acc
    }

    fn derivative(&self, f: &FpPoly) -> FpPoly {
        if f.len() <= 1 {
            return vec![];
        }
        trim(
            f.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| (c * BigUint::from(i)) % &self.p)
                .collect(),
        )
    }

    /// Irreducible factors of a monic polynomial with multiplicities,
    /// sorted by (degree, coefficient vector) for reproducibility.
    pub fn factor_monic(&self, f: &FpPoly) -> Vec<(FpPoly, u32)> {
        assert!(f.last().is_some_and(|c| c.is_one()), "factor_monic wants a monic input");
        let mut acc: Vec<(FpPoly, u32)> = Vec::new();
        self.factor_rec(f.clone(), 1, &mut acc);
        // merge duplicates, then canonical order
        acc.sort_by(|a, b| (deg(&a.0), &a.0).cmp(&(deg(&b.0), &b.0)));
        let mut merged: Vec<(FpPoly, u32)> = Vec::new();
        for (g, m) in acc {
            match merged.last_mut() {
                Some((h, k)) if *h == g => *k += m,
                _ => merged.push((g, m)),
            }
        }
        merged
    }

    fn factor_rec(&self, f: FpPoly, mult: u32, acc: &mut Vec<(FpPoly, u32)>) {
        if deg(&f) == 0 {
            return;
        }
        let fd = self.derivative(&f);
        if fd.is_empty() {
            // f = h(x^p) = h(x)^p over the prime field
            let p = self.p.to_usize().expect("p-th power collapse only for small p");
            let h: FpPoly = trim(f.iter().step_by(p).cloned().collect());
            self.factor_rec(h, mult * p as u32, acc);
            return;
        }
        let g = self.gcd(&f, &fd);
        if deg(&g) == 0 {
            self.factor_squarefree(f, mult, acc);
            return;
        }
        let (q, r) = self.divrem(&f, &g);
        debug_assert!(r.is_empty());
        self.factor_rec(q, mult, acc);
        self.factor_rec(g, mult, acc);
    }

    fn factor_squarefree(&self, f: FpPoly, mult: u32, acc: &mut Vec<(FpPoly, u32)>) {
        // distinct-degree stage
        let mut f = f;
        let x: FpPoly = vec![BigUint::zero(), BigUint::one()];
        let mut h = x.clone();
        let mut i = 1usize;
        while deg(&f) >= 2 * i {
            h = self.powmod(&h, &self.p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if deg(&g) > 0 {
                self.split_equal_degree(&g, i, mult, acc);
                let (q, r) = self.divrem(&f, &g);
                debug_assert!(r.is_empty());
                f = q;
                h = self.rem(&h, &f);
            }
            i += 1;
        }
        if deg(&f) > 0 {
            acc.push((self.monic(&f), mult));
        }
    }

    fn split_equal_degree(&self, g: &FpPoly, i: usize, mult: u32, acc: &mut Vec<(FpPoly, u32)>) {
        let g = self.monic(g);
        if deg(&g) == i {
            acc.push((g, mult));
            return;
        }
        // small fields: trial-divide by every monic polynomial of degree i
        if let Some(p) = self.p.to_u64() {
            if (p as f64).powi(i as i32) <= 65536.0 {
                self.split_by_enumeration(g, i, p, mult, acc);
                return;
            }
        }
        self.split_cz(g, i, mult, acc);
    }

    fn split_by_enumeration(
        &self,
        mut g: FpPoly,
        i: usize,
        p: u64,
        mult: u32,
        acc: &mut Vec<(FpPoly, u32)>,
    ) {
        let total = (p as u128).pow(i as u32);
        for code in 0..total {
            if deg(&g) == i {
                acc.push((g, mult));
                return;
            }
            let mut c = code;
            let mut cand: FpPoly = Vec::with_capacity(i + 1);
            for _ in 0..i {
                cand.push(BigUint::from((c % p as u128) as u64));
                c /= p as u128;
            }
            cand.push(BigUint::one());
            let (q, r) = self.divrem(&g, &cand);
            if r.is_empty() {
                acc.push((trim(cand), mult));
                g = q;
            }
        }
        if deg(&g) == i {
            acc.push((g, mult));
            return;
        }
        debug_assert!(deg(&g) == 0, "enumeration must exhaust the factors");
    }

    fn split_cz(&self, g: FpPoly, i: usize, mult: u32, acc: &mut Vec<(FpPoly, u32)>) {
        if deg(&g) == i {
            acc.push((g, mult));
            return;
        }
        // exponent (p^i - 1)/2; p odd here (p = 2 always takes the enumeration path)
        let e = (self.p.pow(i as u32) - BigUint::one()) / BigUint::from(2u32);
        let mut seed = self
            .p
            .iter_u64_digits()
            .fold(0x6a09e667f3bcc909u64, |a, d| a.rotate_left(13) ^ d)
            ^ g.iter().map(|c| c.bits()).sum::<u64>();
        loop {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let mut r: FpPoly = Vec::new();
            let mut s = seed;
            for _ in 0..deg(&g) {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                r.push(BigUint::from(s) % &self.p);
            }
            let r = trim(r);
            if r.is_empty() {
                continue;
            }
            let t = self.powmod(&r, &e, &g);
            let t1 = self.sub(&t, &vec![BigUint::one()]);
            let h = self.gcd(&t1, &g);
            if deg(&h) > 0 && deg(&h) < deg(&g) {
                let (q, rr) = self.divrem(&g, &h);
                debug_assert!(rr.is_empty());
                self.split_cz(h, i, mult, acc);
                self.split_cz(q, i, mult, acc);
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn factor_degrees(poly: &[i64], p: u64) -> Vec<(usize, u32)> {
        let fp = Fp::new(BigUint::from(p));
        let f = fp.from_zpoly(&zp(poly));
        fp.factor_monic(&f)
            .iter()
            .map(|(g, m)| (deg(g), *m))
            .collect()
    }

    #[test]
    fn splitting_patterns_match_hand_checks() {
        // x^2 - x - 1 mod 5 = (x+2)^2: one factor of degree 1, multiplicity 2
        assert_eq!(factor_degrees(&[-1, -1, 1], 5), vec![(1, 2)]);
        // x^2 - x - 1 irreducible mod 2 (no roots: f(0)=1, f(1)=1)
        assert_eq!(factor_degrees(&[-1, -1, 1], 2), vec![(2, 1)]);
        // x^2 + 1 mod 5 = (x+2)(x+3)
        assert_eq!(factor_degrees(&[1, 0, 1], 5), vec![(1, 1), (1, 1)]);
        // x^2 + 1 mod 3 irreducible
        assert_eq!(factor_degrees(&[1, 0, 1], 3), vec![(2, 1)]);
        // x^3 - 2 mod 5: 2^3 = 8 = 3, so x = 3 is a root; 3 is the only cube root since gcd(3, 4) != ... enumerate: 0,1,8=3,27=2,64=4 -> x=3 only
        assert_eq!(factor_degrees(&[-2, 0, 0, 1], 5), vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn product_of_factors_reconstructs() {
        let fp = Fp::new(BigUint::from(13u32));
        let f = fp.from_zpoly(&zp(&[6, 0, 5, 0, 1])); // x^4 + 5x^2 + 6 = (x^2+2)(x^2+3)
        let factors = fp.factor_monic(&f);
        let mut prod: FpPoly = vec![BigUint::one()];
        let mut total = 0;
        for (g, m) in &factors {
            for _ in 0..*m {
                prod = fp.mul(&prod, g);
                total += deg(g);
            }
        }
        assert_eq!(prod, f);
        assert_eq!(total, 4);
    }

    #[test]
    fn large_prime_split() {
        // x^2 + 1 mod 1000000007 splits (p = 3 mod 4? 1000000007 mod 4 = 3 -> inert)
        assert_eq!(factor_degrees(&[1, 0, 1], 1_000_000_007), vec![(2, 1)]);
        // p = 1000000009 = 1 mod 4 -> splits
        assert_eq!(
            factor_degrees(&[1, 0, 1], 1_000_000_009),
            vec![(1, 1), (1, 1)]
        );
    }

    #[test]
    fn char_p_power_collapse() {
        // (x+1)^2 = x^2 + 2x + 1 mod 2 = x^2 + 1: derivative vanishes
        assert_eq!(factor_degrees(&[1, 0, 1], 2), vec![(1, 2)]);
    }
}
