//! Irreducibility over Q for monic integer polynomials, by small-degree
//! Zassenhaus: factor modulo a good prime, Hensel-lift past the Mignotte
//! bound, and trial-divide subset products exactly over Z. Degrees here are
//! desk scale (<= 8), so the subset stage is trivial.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::fp::{Fp, FpPoly};
use crate::poly::ZPoly;

/// `Ok(())` if `g` is irreducible over Q; otherwise returns a proper monic
/// integer factor as the error payload.
pub fn check_irreducible(g: &ZPoly) -> Result<(), ZPoly> {
    assert!(g.is_monic());
    let d = g.degree();
    if d == 1 {
        return Ok(());
    }
    if g.coeffs[0].is_zero() {
        return Err(ZPoly::x());
    }
    let disc = g.discriminant_monic();
    if disc.is_zero() {
        // shares a factor with its derivative; gcd over Q gives a witness,
        // but a subset search below p works too. Cheapest honest witness:
        // factor mod a good prime is unavailable (none squarefree), so fall
        // back to rational-root / gcd route.
        return Err(squarefree_witness(g));
    }

    // pick a prime where g stays squarefree; keep the factorization with
    // the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 4 {
        let pb = BigUint::from(p);
        if !(&disc % BigInt::from(p)).is_zero() {
            let fp = Fp::new(pb);
            let fbar = fp.from_zpoly(g);
            let factors = fp.factor_monic(&fbar);
            debug_assert!(factors.iter().all(|(_, m)| *m == 1));
            let flat: Vec<FpPoly> = factors.into_iter().map(|(f, _)| f).collect();
            if flat.len() == 1 {
                return Ok(());
            }
            if best.as_ref().is_none_or(|(_, b)| flat.len() < b.len()) {
                best = Some((p, flat));
            }
            tried += 1;
        }
        p = next_prime(p);
    }
    let (p, factors) = best.expect("some squarefree prime exists");

    // Hensel-lift the factorization past twice the Mignotte bound
    let mut norm2 = BigInt::zero();
    for c in &g.coeffs {
        norm2 += c * c;
    }
    let bound = BigInt::from(2).pow(d as u32) * (norm2.sqrt() + 1);
    let target = BigInt::from(2) * &bound + 1;
    let mut modulus = BigInt::from(p);
    let mut k = 1u32;
    while modulus < target {
        modulus = &modulus * &modulus;
        k *= 2;
    }
    let lifted = hensel_lift_tree(g, &factors, p, k);
    let modulus = BigInt::from(p).pow(k);

    // subset products, symmetric lift, exact trial division
    let r = lifted.len();
    for mask in 1u32..(1 << r) - 1 {
        // subsets of at most half the factors; the complement covers the rest
        if mask.count_ones() * 2 > r as u32 {
            continue;
        }
        let mut prod = ZPoly::constant(BigInt::one());
        for (i, f) in lifted.iter().enumerate() {
            if mask & (1 << i) != 0 {
                prod = mul_mod(&prod, f, &modulus);
            }
        }
        let cand = sym_lift(&prod, &modulus);
        if !cand.is_monic() || cand.degree() == 0 {
            continue;
        }
        if g.divides_monic(&cand) {
            return Err(cand);
        }
    }
    Ok(())
}

fn squarefree_witness(g: &ZPoly) -> ZPoly {
    // gcd(g, g') over Q via the subresultant-free rational route
    let mut a = g.to_qpoly();
    let mut b = g.derivative().to_qpoly();
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    let z = a.primitive_zpoly();
    debug_assert!(z.degree() >= 1);
    z
}

fn next_prime(p: u64) -> u64 {
    let mut q = p + 1;
    loop {
        if crate::zfactor::is_prime(&BigUint::from(q)) {
            return q;
        }
        q += 1;
    }
}

fn reduce_sym(c: &BigInt, m: &BigInt) -> BigInt {
    let mut r = c.mod_floor(m);
    if &r * 2 > *m {
        r -= m;
    }
    r
}

fn sym_lift(f: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(f.coeffs.iter().map(|c| reduce_sym(c, m)).collect())
}

fn mod_reduce(f: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(f.coeffs.iter().map(|c| c.mod_floor(m)).collect())
}

fn mul_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    mod_reduce(&a.mul(b), m)
}

/// Multifactor Hensel lifting by recursive splitting: lift `f = prod(fs)`
/// from mod p to mod p^k (k a power of two).
fn hensel_lift_tree(f: &ZPoly, fs: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let fp = Fp::new(BigUint::from(p));
    if fs.len() == 1 {
        return vec![f.clone()];
    }
    let half = fs.len() / 2;
    let (left, right) = fs.split_at(half);
    let mut gbar = vec![BigUint::one()];
    for q in left {
        gbar = fp.mul(&gbar, q);
    }
    let mut hbar = vec![BigUint::one()];
    for q in right {
        hbar = fp.mul(&hbar, q);
    }
    let (one, s, t) = fp.gcd_ext(&gbar, &hbar);
    debug_assert!(one.len() == 1 && one[0].is_one(), "modular factors must be coprime");

    let (gk, hk) = hensel_pair(
        f,
        &fp.lift(&gbar),
        &fp.lift(&hbar),
        &fp.lift(&s),
        &fp.lift(&t),
        &BigInt::from(p),
        k,
    );
    let mut out = hensel_lift_tree(&gk, left, p, k);
    out.extend(hensel_lift_tree(&hk, right, p, k));
    out
}

/// Quadratic two-factor Hensel step iterated to mod p^k: given
/// f = g*h (mod p) and s*g + t*h = 1 (mod p), returns (g*, h*) monic with
/// f = g*h* (mod p^k).
#[allow(clippy::too_many_arguments)]
fn hensel_pair(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    p: &BigInt,
    k: u32,
) -> (ZPoly, ZPoly) {
    let mut m = p.clone();
    let (mut g, mut h) = (g.clone(), h.clone());
    let (mut s, mut t) = (s.clone(), t.clone());
    let mut reached = 1u32;
    while reached < k {
        let m2 = &m * &m;
        // lift the factorization
        let e = mod_reduce(&f.sub(&g.mul(&h)), &m2);
        let se = mul_mod(&s, &e, &m2);
        let (q, r) = se.divrem_monic(&h);
        let gstar = mod_reduce(&g.add(&mul_mod(&t, &e, &m2)).add(&mul_mod(&q, &g, &m2)), &m2);
        let hstar = mod_reduce(&h.add(&r), &m2);
        // lift the Bezout pair
        let b = mod_reduce(
            &s.mul(&gstar).add(&t.mul(&hstar)).sub(&ZPoly::constant(BigInt::one())),
            &m2,
        );
        let sb = mul_mod(&s, &b, &m2);
        let (c, dd) = sb.divrem_monic(&hstar);
        let sstar = mod_reduce(&s.sub(&dd), &m2);
        let tstar = mod_reduce(&t.sub(&mul_mod(&t, &b, &m2)).sub(&mul_mod(&c, &gstar, &m2)), &m2);
        g = gstar;
        h = hstar;
        s = sstar;
        t = tstar;
        m = m2;
        reached *= 2;
    }
    (sym_lift_monic(&g, &m), sym_lift_monic(&h, &m))
}

fn sym_lift_monic(f: &ZPoly, m: &BigInt) -> ZPoly {
    let mut z = sym_lift(f, m);
    // the lift of a monic polynomial is monic; enforce in case the leading
    // coefficient reduced to m - (small)
    if !z.is_monic() {
        let d = z.degree();
        let mut coeffs = z.coeffs.clone();
        coeffs[d] = BigInt::one();
        z = ZPoly::new(coeffs);
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn irreducible_cases() {
        assert!(check_irreducible(&zp(&[-1, -1, 1])).is_ok()); // x^2-x-1
        assert!(check_irreducible(&zp(&[1, 0, 1])).is_ok()); // x^2+1
        assert!(check_irreducible(&zp(&[-2, 0, 0, 1])).is_ok()); // x^3-2
        assert!(check_irreducible(&zp(&[-1, -1, 0, 1])).is_ok()); // x^3-x-1
        assert!(check_irreducible(&zp(&[1, 1, 1, 1, 1])).is_ok()); // Phi_5
        assert!(check_irreducible(&zp(&[-1, 1])).is_ok()); // x - 1, degree 1
        assert!(check_irreducible(&zp(&[2, 2, 1])).is_ok()); // x^2+2x+2
    }

    #[test]
    fn reducible_cases_produce_factors() {
        for coeffs in [
            vec![-1i64, 0, 1],     // x^2-1
            vec![0, 0, 1],         // x^2
            vec![-6, 11, -6, 1],   // (x-1)(x-2)(x-3)
            vec![1, 2, 3, 2, 1],   // (x^2+x+1)^2
            vec![4, 0, 4, 0, 1],   // (x^2+2)^2
            vec![-2, 1, -2, 1],    // (x^2+1)(x-2): mixed degrees
        ] {
            let g = ZPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect());
            let factor = check_irreducible(&g).unwrap_err();
            assert!(factor.degree() >= 1 && factor.degree() < g.degree());
            assert!(g.divides_monic(&factor), "witness must divide: {:?}", factor);
        }
    }

    #[test]
    fn irreducible_despite_splitting_mod_every_prime() {
        // x^4 + 1 is irreducible over Q but reducible mod every prime;
        // the Hensel + subset stage must reach the right answer.
        assert!(check_irreducible(&zp(&[1, 0, 0, 0, 1])).is_ok());
    }

    #[test]
    fn large_coefficient_factor_found() {
        // (x^2 + 30x + 1)(x^2 - 31x + 2)
        let a = zp(&[1, 30, 1]);
        let b = zp(&[2, -31, 1]);
        let g = a.mul(&b);
        let f = check_irreducible(&g).unwrap_err();
        assert!(g.divides_monic(&f));
    }
}
