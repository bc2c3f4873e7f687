//! Certified complex root isolation for the defining polynomial.
//!
//! Aberth-Ehrlich in f64 supplies starting points, Newton in high-precision
//! complex arithmetic refines them, and the a posteriori bound
//! `min_i |z - alpha_i| <= d |g(z)/g'(z)|` certifies one root per disk once
//! the disks are pairwise disjoint. Real roots are identified by combining
//! disk geometry with an exact Sturm count, never by floating-point fiat.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::ZPoly;
use crate::real::{CReal, Real};

#[derive(Clone, Debug)]
pub struct EmbeddingRoot {
    pub z: CReal,
    pub is_real: bool,
    /// Index of the complex-conjugate partner for non-real roots.
    pub conj_partner: Option<usize>,
}

pub struct IsolatedRoots {
    pub roots: Vec<EmbeddingRoot>,
    /// One certified radius valid for every root.
    pub radius: Real,
}

pub fn isolate(g: &ZPoly, prec: usize) -> Result<IsolatedRoots> {
    assert!(g.is_monic());
    let d = g.degree();
    assert!(d >= 1);
    if d == 1 {
        let c = Real::from_bigint(&(-g.coeff(0)), prec);
        return Ok(IsolatedRoots {
            roots: vec![EmbeddingRoot {
                z: CReal::from_real(c),
                is_real: true,
                conj_partner: None,
            }],
            radius: Real::zero(prec),
        });
    }

    let coeffs_f64: Vec<f64> = g
        .coeffs
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    if coeffs_f64.iter().any(|c| !c.is_finite()) {
        return Err(Error::PrecisionExhausted(
            "coefficients exceed the double-precision seeding range".into(),
        ));
    }

    let real_count = g.real_root_count();
    let mut wp = prec + 64;
    for attempt in 0..4 {
        let seeds = aberth(&coeffs_f64, 0.37 + 0.11 * attempt as f64);
        match refine_and_certify(g, &seeds, prec, wp, real_count) {
            Some(ok) => return Ok(ok),
            None => wp *= 2,
        }
    }
    Err(Error::PrecisionExhausted(format!(
        "root isolation of a degree-{} polynomial failed at {} bits",
        d, prec
    )))
}

fn refine_and_certify(
    g: &ZPoly,
    seeds: &[Complex64],
    prec: usize,
    wp: usize,
    real_count: usize,
) -> Option<IsolatedRoots> {
    let d = g.degree();
    let gc: Vec<Real> = g.coeffs.iter().map(|c| Real::from_bigint(c, wp)).collect();
    let dgc: Vec<Real> = g
        .derivative()
        .coeffs
        .iter()
        .map(|c| Real::from_bigint(c, wp))
        .collect();
    let eval = |cs: &[Real], z: &CReal| -> CReal {
        let mut acc = CReal::zero(wp);
        for c in cs.iter().rev() {
            acc = acc.mul(z).add(&CReal::from_real(c.clone()));
        }
        acc
    };

    let newton_iters = (usize::BITS - (wp / 30).leading_zeros()) as usize + 3;
    let mut zs: Vec<CReal> = Vec::with_capacity(d);
    let mut radius = Real::zero(wp);
    let slack = Real::from_f64(1.0 + 1e-9, wp);
    for s in seeds {
        let mut z = CReal::new(Real::from_f64(s.re, wp), Real::from_f64(s.im, wp));
        for _ in 0..newton_iters {
            let num = eval(&gc, &z);
            let den = eval(&dgc, &z);
            if den.abs_sq().is_zero() {
                return None;
            }
            z = z.sub(&num.div(&den));
        }
        let num = eval(&gc, &z).abs();
        let den = eval(&dgc, &z).abs();
        if den.is_zero() {
            return None;
        }
        let r = num
            .div(&den)
            .mul(&Real::from_u64(d as u64, wp))
            .mul(&slack);
        radius = radius.max(&r);
        zs.push(z);
    }

    // required accuracy and pairwise separation
    let threshold = Real::pow2(-((prec / 2) as i32), wp);
    if radius.cmp(&threshold) != std::cmp::Ordering::Less {
        return None;
    }
    let sep = radius.mul(&Real::from_u64(4, wp));
    for i in 0..d {
        for j in 0..i {
            if zs[i].sub(&zs[j]).abs().cmp(&sep) != std::cmp::Ordering::Greater {
                return None;
            }
        }
    }

    // real roots: disks meeting the real axis, cross-checked against Sturm
    let touching: Vec<bool> = zs
        .iter()
        .map(|z| z.im.abs().cmp(&radius) != std::cmp::Ordering::Greater)
        .collect();
    if touching.iter().filter(|&&t| t).count() != real_count {
        return None;
    }

    let mut roots: Vec<EmbeddingRoot> = Vec::with_capacity(d);
    let mut used = vec![false; d];
    for i in 0..d {
        if touching[i] {
            // project onto the axis; the true root is real and within radius
            roots.push(EmbeddingRoot {
                z: CReal::from_real(zs[i].re.clone()),
                is_real: true,
                conj_partner: None,
            });
            used[i] = true;
        }
    }
    // pair the remaining roots with their conjugates
    let two_r = radius.mul(&Real::from_u64(2, wp));
    let mut pair_of = vec![usize::MAX; d];
    for i in 0..d {
        if touching[i] || pair_of[i] != usize::MAX {
            continue;
        }
        let conj = zs[i].conj();
        let mut partner = None;
        for (j, zj) in zs.iter().enumerate() {
            if j == i || touching[j] || pair_of[j] != usize::MAX {
                continue;
            }
            if conj.sub(zj).abs().cmp(&two_r) != std::cmp::Ordering::Greater {
                partner = Some(j);
                break;
            }
        }
        let j = partner?;
        pair_of[i] = j;
        pair_of[j] = i;
        // canonicalize: store z and conj(z) exactly
        let (up, down) = if zs[i].im.is_positive() {
            (zs[i].clone(), zs[i].conj())
        } else {
            (zs[j].clone(), zs[j].conj())
        };
        let base = roots.len();
        roots.push(EmbeddingRoot {
            z: up,
            is_real: false,
            conj_partner: Some(base + 1),
        });
        roots.push(EmbeddingRoot {
            z: down,
            is_real: false,
            conj_partner: Some(base),
        });
    }
    if roots.len() != d {
        return None;
    }

    // canonical order: by (re, im); fix partner indices afterwards
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        roots[a]
            .z
            .re
            .cmp(&roots[b].z.re)
            .then(roots[a].z.im.cmp(&roots[b].z.im))
    });
    let mut inverse = vec![0usize; d];
    for (new_i, &old_i) in order.iter().enumerate() {
        inverse[old_i] = new_i;
    }
    let mut sorted: Vec<EmbeddingRoot> = order
        .iter()
        .map(|&i| roots[i].clone())
        .collect();
    for r in sorted.iter_mut() {
        if let Some(p) = r.conj_partner {
            r.conj_partner = Some(inverse[p]);
        }
    }

    Some(IsolatedRoots {
        roots: sorted,
        radius,
    })
}

/// Aberth-Ehrlich simultaneous iteration in double precision.
fn aberth(coeffs: &[f64], angle_offset: f64) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lc = coeffs[d];
    let c: Vec<f64> = coeffs.iter().map(|x| x / lc).collect();
    let radius = 1.0 + c[..d].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tau = std::f64::consts::TAU;
    let mut z: Vec<Complex64> = (0..d)
        .map(|i| Complex64::from_polar(radius, tau * (i as f64 + angle_offset) / d as f64))
        .collect();
    let horner = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for k in (0..=d).rev() {
            dp = dp * x + p;
            p = p * x + c[k];
        }
        (p, dp)
    };
    for _ in 0..600 {
        let mut worst = 0.0f64;
        let snapshot = z.clone();
        for i in 0..d {
            let (p, dp) = horner(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = if dp.norm() == 0.0 {
                Complex64::new(1e-8, 1e-8)
            } else {
                p / dp
            };
            let mut s = Complex64::new(0.0, 0.0);
            for (j, other) in snapshot.iter().enumerate() {
                if j != i {
                    let diff = z[i] - other;
                    if diff.norm() > 0.0 {
                        s += diff.inv();
                    }
                }
            }
            let den = Complex64::new(1.0, 0.0) - w * s;
            let delta = if den.norm() == 0.0 { w } else { w / den };
            z[i] -= delta;
            worst = worst.max(delta.norm() / (1.0 + z[i].norm()));
        }
        if worst < 1e-13 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use std::cmp::Ordering;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn golden_ratio_roots() {
        let iso = isolate(&zp(&[-1, -1, 1]), 192).unwrap();
        assert_eq!(iso.roots.len(), 2);
        assert!(iso.roots.iter().all(|r| r.is_real));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(close(iso.roots[0].z.re.to_f64(), 1.0 - phi));
        assert!(close(iso.roots[1].z.re.to_f64(), phi));
    }

    #[test]
    fn gaussian_roots_pair_up() {
        let iso = isolate(&zp(&[1, 0, 1]), 192).unwrap();
        assert_eq!(iso.roots.len(), 2);
        assert!(iso.roots.iter().all(|r| !r.is_real));
        assert_eq!(iso.roots[0].conj_partner, Some(1));
        assert_eq!(iso.roots[1].conj_partner, Some(0));
        // exact conjugates after canonicalization
        let s = iso.roots[0].z.im.add(&iso.roots[1].z.im);
        assert!(s.is_zero());
    }

    #[test]
    fn cubic_mixed_roots() {
        let iso = isolate(&zp(&[-2, 0, 0, 1]), 192).unwrap();
        let real: Vec<_> = iso.roots.iter().filter(|r| r.is_real).collect();
        assert_eq!(real.len(), 1);
        assert!(close(real[0].z.re.to_f64(), 2f64.powf(1.0 / 3.0)));
        assert!(iso.radius.cmp(&Real::pow2(-96, 192)) == Ordering::Less);
    }

    #[test]
    fn degree_one_is_exact() {
        let iso = isolate(&zp(&[-7, 1]), 192).unwrap();
        assert_eq!(iso.roots[0].z.re.to_f64(), 7.0);
        assert!(iso.radius.is_zero());
    }

    #[test]
    fn coefficients_reconstruct() {
        // product of (x - root_i) must reproduce g within the certified error
        let g = zp(&[-1, -1, 0, 1]);
        let iso = isolate(&g, 192).unwrap();
        let p = 256;
        let mut acc = vec![CReal::from_real(Real::from_u64(1, p))];
        for r in &iso.roots {
            let mut next = vec![CReal::zero(p); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c);
                next[i] = next[i].sub(&c.mul(&r.z));
            }
            acc = next;
        }
        for (i, c) in acc.iter().enumerate() {
            let expect = g.coeff(i).to_f64().unwrap();
            assert!((c.re.to_f64() - expect).abs() < 1e-30);
            assert!(c.im.to_f64().abs() < 1e-30);
        }
    }
}
