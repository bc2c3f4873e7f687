//! Exact arithmetic in a number field k = Q[x]/(g) presented by a monic
//! irreducible integer polynomial, together with certified complex
//! embeddings, automorphisms, minimal polynomials, and root-of-unity
//! detection.
//!
//! Elements are coordinate vectors over the power basis 1, theta, ...,
//! theta^(d-1) with exact rational entries. All operations are pure; a
//! `NumberField` is immutable after construction and safe to share across
//! threads.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{QPoly, ZPoly};
use crate::real::{CReal, Real};
use crate::roots::{self, EmbeddingRoot};
use crate::zfactor::{self, FactorEffort};

/// Torsion order scan bound: any root of unity in a degree-d field has
/// order at most 2d^2 at desk scale (phi(order) <= d already forces
/// order <= 2d^2 with a wide margin).
pub fn torsion_order_bound(degree: usize) -> u32 {
    (2 * degree * degree) as u32
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    pub coords: Vec<BigRational>,
}

#[derive(Clone, Debug)]
pub struct Automorphism {
    pub image_of_theta: FieldElement,
    pub order: u32,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct NumberField {
    g: ZPoly,
    degree: usize,
    disc: BigInt,
    index_primes: BTreeSet<BigInt>,
    precision: usize,
    roots: Vec<EmbeddingRoot>,
    root_radius: Real,
    automorphisms: Vec<Automorphism>,
}

/// An archimedean place: an embedding index plus its multiplicity in the
/// product formula (1 for a real embedding, 2 for a conjugate pair).
#[derive(Clone, Copy, Debug)]
pub struct ArchPlace {
    pub root_index: usize,
    pub weight: u32,
}

pub fn make_field(g: &ZPoly, precision: usize) -> Result<NumberField> {
    if g.is_zero() || !g.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = g.degree();
    if d == 0 {
        return Err(Error::invalid("constant polynomial does not define a field"));
    }
    if let Err(factor) = crate::zass::check_irreducible(g) {
        return Err(Error::NotIrreducible {
            factor: crate::parse::zpoly_to_string(&factor, 'x'),
        });
    }
    let disc = g.discriminant_monic();
    let mut index_primes = BTreeSet::new();
    if d > 1 {
        for (p, e) in zfactor::factor_int(&disc, &FactorEffort::default())? {
            if e >= 2 {
                index_primes.insert(BigInt::from(p));
            }
        }
    }
    let iso = roots::isolate(g, precision)?;
    let mut field = NumberField {
        g: g.clone(),
        degree: d,
        disc,
        index_primes,
        precision,
        roots: iso.roots,
        root_radius: iso.radius,
        automorphisms: vec![],
    };
    if d == 2 {
        // theta + sigma(theta) = -g1, so the conjugation is theta -> -g1 - theta
        let b = BigRational::from(g.coeff(1));
        let image = FieldElement {
            coords: vec![-b, -BigRational::one()],
        };
        field = field.with_automorphism(image, 2, "conj")?;
    }
    Ok(field)
}

impl NumberField {
    pub fn defining_poly(&self) -> &ZPoly {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn index_primes(&self) -> &BTreeSet<BigInt> {
        &self.index_primes
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn embeddings(&self) -> &[EmbeddingRoot] {
        &self.roots
    }

    pub fn embedding_radius(&self) -> &Real {
        &self.root_radius
    }

    pub fn automorphisms(&self) -> &[Automorphism] {
        &self.automorphisms
    }

    /// Register a verified automorphism: g(sigma(theta)) must vanish and
    /// iterating `order` times must return theta.
    pub fn with_automorphism(
        mut self,
        image_of_theta: FieldElement,
        order: u32,
        label: &str,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("automorphism order must be positive"));
        }
        let img = self.normalize(image_of_theta)?;
        let val = self.eval_zpoly(&self.g, &img);
        if !self.is_zero_el(&val) {
            return Err(Error::invalid(format!(
                "g(sigma(theta)) != 0 for automorphism '{}'",
                label
            )));
        }
        let sigma = Automorphism {
            image_of_theta: img,
            order,
            label: label.to_string(),
        };
        let mut cur = self.theta();
        for _ in 0..order {
            cur = self.apply_automorphism(&sigma, &cur);
        }
        if cur != self.theta() {
            return Err(Error::invalid(format!(
                "automorphism '{}' does not have order {}",
                label, order
            )));
        }
        self.automorphisms.push(sigma);
        Ok(self)
    }

    /// Archimedean places: every real embedding with weight 1 plus one
    /// representative (positive imaginary part) per conjugate pair with
    /// weight 2; total weight is the degree.
    pub fn arch_places(&self) -> Vec<ArchPlace> {
        let mut out = Vec::new();
        for (i, r) in self.roots.iter().enumerate() {
            if r.is_real {
                out.push(ArchPlace {
                    root_index: i,
                    weight: 1,
                });
            } else if r.z.im.is_positive() {
                out.push(ArchPlace {
                    root_index: i,
                    weight: 2,
                });
            }
        }
        debug_assert_eq!(
            out.iter().map(|p| p.weight as usize).sum::<usize>(),
            self.degree
        );
        out
    }

    // ---- element constructors ----

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coords: vec![BigRational::zero(); self.degree],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    pub fn theta(&self) -> FieldElement {
        let mut coords = vec![BigRational::zero(); self.degree];
        if self.degree == 1 {
            // theta is the rational root of the degree-one polynomial
            coords[0] = BigRational::from(-self.g.coeff(0));
        } else {
            coords[1] = BigRational::one();
        }
        FieldElement { coords }
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        let mut coords = vec![BigRational::zero(); self.degree];
        coords[0] = q;
        FieldElement { coords }
    }

    pub fn from_integer(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from(BigInt::from(n)))
    }

    /// Build an element from arbitrary-length coordinates, reducing mod g.
    pub fn normalize(&self, el: FieldElement) -> Result<FieldElement> {
        let mut v = el.coords;
        if v.len() > self.degree {
            self.reduce_mod_g(&mut v);
            v.truncate(self.degree);
        }
        v.resize(self.degree, BigRational::zero());
        Ok(FieldElement { coords: v })
    }

    pub fn is_zero_el(&self, a: &FieldElement) -> bool {
        a.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self, a: &FieldElement) -> bool {
        a.coords.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rational(&self, a: &FieldElement) -> Option<BigRational> {
        if self.is_rational(a) {
            Some(a.coords[0].clone())
        } else {
            None
        }
    }

    // ---- ring operations ----

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.degree;
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = &prod[i + j] + x * y;
                }
            }
        }
        self.reduce_mod_g(&mut prod);
        prod.truncate(d);
        prod.resize(d, BigRational::zero());
        FieldElement { coords: prod }
    }

    pub fn mul_rational(&self, a: &FieldElement, q: &BigRational) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().map(|c| c * q).collect(),
        }
    }

    fn reduce_mod_g(&self, v: &mut Vec<BigRational>) {
        let d = self.degree;
        let mut i = v.len();
        while i > d {
            i -= 1;
            let c = std::mem::replace(&mut v[i], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            // x^i = -sum_j g_j x^(i-d+j)
            for j in 0..d {
                let gj = self.g.coeff(j);
                if !gj.is_zero() {
                    v[i - d + j] = &v[i - d + j] - &c * BigRational::from(gj);
                }
            }
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero_el(a) {
            return Err(Error::ZeroElement);
        }
        // extended Euclid of the coordinate polynomial against g over Q
        let gq = self.g.to_qpoly();
        let aq = QPoly::new(a.coords.clone());
        let (mut r0, mut r1) = (gq, aq);
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::new(vec![BigRational::one()]));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let nt = t0.sub_q(&q.mul_q(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = nt;
        }
        debug_assert_eq!(r0.degree(), 0, "g irreducible, gcd must be constant");
        let c = r0.coeff(0);
        let inv_coeffs: Vec<BigRational> = t0.coeffs.iter().map(|t| t / &c).collect();
        self.normalize(FieldElement { coords: inv_coeffs })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        if e < 0 {
            let inv = self.inv(a)?;
            return self.pow(&inv, -e);
        }
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Field norm N^k_Q(a), exact: Res(g, A)/m^d for a = A(theta)/m.
    pub fn norm(&self, a: &FieldElement) -> BigRational {
        if self.is_zero_el(a) {
            return BigRational::zero();
        }
        let (apoly, m) = self.clear_denominators(a);
        let res = ZPoly::resultant(&self.g, &apoly);
        BigRational::new(res, m.pow(self.degree as u32))
    }

    /// (A, m) with a = A(theta)/m, A integral, m > 0 the coordinate lcm.
    pub fn clear_denominators(&self, a: &FieldElement) -> (ZPoly, BigInt) {
        let mut m = BigInt::one();
        for c in &a.coords {
            m = m.lcm(c.denom());
        }
        let coeffs = a
            .coords
            .iter()
            .map(|c| {
                let t = c * BigRational::from(m.clone());
                debug_assert!(t.is_integer());
                t.to_integer()
            })
            .collect();
        (ZPoly::new(coeffs), m)
    }

    pub fn is_integral(&self, a: &FieldElement) -> bool {
        a.coords.iter().all(|c| c.is_integer())
    }

    /// Evaluate an integer polynomial at a field element.
    pub fn eval_zpoly(&self, f: &ZPoly, a: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for c in f.coeffs.iter().rev() {
            acc = self.mul(&acc, a);
            acc = self.add(&acc, &self.from_rational(BigRational::from(c.clone())));
        }
        acc
    }

    /// Evaluate a polynomial with field coefficients (little-endian) at a.
    pub fn eval_kpoly(&self, coeffs: &[FieldElement], a: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.mul(&acc, a);
            acc = self.add(&acc, c);
        }
        acc
    }

    // ---- spec operations ----

    /// Minimal polynomial over Q by exact linear algebra on the powers of a.
    pub fn element_minimal_poly(&self, a: &FieldElement) -> QPoly {
        let d = self.degree;
        let mut powers: Vec<Vec<BigRational>> = vec![self.one().coords];
        let mut cur = self.one();
        for _ in 0..d {
            cur = self.mul(&cur, a);
            powers.push(cur.coords.clone());
        }
        for m in 1..=d {
            // does a^m lie in the span of 1, a, ..., a^(m-1)?
            if let Some(combo) = solve_linear(&powers[..m], &powers[m]) {
                let mut coeffs: Vec<BigRational> = combo.iter().map(|c| -c).collect();
                coeffs.push(BigRational::one());
                debug_assert!(d % m == 0, "degree of a subfield element divides d");
                return QPoly::new(coeffs);
            }
        }
        unreachable!("a^d always depends on lower powers");
    }

    pub fn apply_automorphism(&self, sigma: &Automorphism, a: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for c in a.coords.iter().rev() {
            acc = self.mul(&acc, &sigma.image_of_theta);
            acc = self.add(&acc, &self.from_rational(c.clone()));
        }
        acc
    }

    /// Complex values of a under every embedding, with a certified shared
    /// error bound.
    pub fn complex_values(&self, a: &FieldElement) -> Result<(Vec<CReal>, Real)> {
        let wp = self.precision;
        let coeff_abs: Vec<Real> = a
            .coords
            .iter()
            .map(|c| Real::from_ratio(c, wp).abs())
            .collect();
        let coeffs: Vec<Real> = a.coords.iter().map(|c| Real::from_ratio(c, wp)).collect();
        let mut values = Vec::with_capacity(self.degree);
        let mut err = Real::zero(wp);
        let slack = Real::from_f64(1.0 + 1e-9, wp);
        for root in &self.roots {
            let mut acc = CReal::zero(wp);
            for c in coeffs.iter().rev() {
                acc = acc.mul(&root.z).add(&CReal::from_real(c.clone()));
            }
            // error: |a'(z)|-type bound times the root radius, plus rounding
            let r_big = root.z.abs().add(&self.root_radius).max(&Real::from_u64(1, wp));
            let mut deriv_bound = Real::zero(wp);
            let mut mag_bound = Real::zero(wp);
            let mut pw = Real::from_u64(1, wp);
            for (i, c) in coeff_abs.iter().enumerate() {
                if i > 0 {
                    deriv_bound = deriv_bound.add(&c.mul(&Real::from_u64(i as u64, wp)).mul(&pw));
                }
                pw = pw.mul(&r_big);
                mag_bound = mag_bound.add(&c.mul(&pw));
            }
            let rounding = mag_bound
                .mul(&Real::pow2(-(wp as i32) + 6, wp))
                .mul(&Real::from_u64(2 * self.degree as u64 + 4, wp));
            let e = deriv_bound
                .mul(&self.root_radius)
                .add(&rounding)
                .mul(&slack);
            err = err.max(&e);
            values.push(acc);
        }
        let guard = Real::pow2(-((self.precision / 4) as i32), wp);
        if err.cmp(&guard) == std::cmp::Ordering::Greater {
            return Err(Error::PrecisionExhausted(format!(
                "embedding values have error bound {} at {} bits; rebuild the field with higher precision",
                err, self.precision
            )));
        }
        Ok((values, err))
    }

    /// Root-of-unity test with witness order: a magnitude screen over the
    /// embeddings (reject-only) followed by an exact power check up to the
    /// documented torsion bound 2d^2.
    pub fn is_root_of_unity(&self, a: &FieldElement) -> Result<Option<u32>> {
        if self.is_zero_el(a) {
            return Err(Error::ZeroElement);
        }
        let (values, err) = self.complex_values(a)?;
        let one = Real::from_u64(1, self.precision);
        let tol = err
            .add(&err)
            .add(&Real::pow2(-((self.precision / 2) as i32), self.precision));
        for v in &values {
            let dev = v.abs().sub(&one).abs();
            if dev.cmp(&tol) == std::cmp::Ordering::Greater {
                return Ok(None);
            }
        }
        let bound = torsion_order_bound(self.degree);
        let mut cur = a.clone();
        for n in 1..=bound {
            if cur == self.one() {
                return Ok(Some(n));
            }
            cur = self.mul(&cur, a);
        }
        Ok(None)
    }
}

/// Solve sum_i x_i rows[i] = rhs over Q, if consistent.
fn solve_linear(rows: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = rows.len();
    let d = rhs.len();
    // columns are the row vectors; Gaussian elimination on the d x (m+1) system
    let mut a: Vec<Vec<BigRational>> = (0..d)
        .map(|j| {
            let mut row: Vec<BigRational> = rows.iter().map(|r| r[j].clone()).collect();
            row.push(rhs[j].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..m {
        let Some(pr) = (r..d).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = a[r][c].clone();
        for v in a[r].iter_mut() {
            *v = &*v / &inv;
        }
        for i in 0..d {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=m {
                    a[i][j] = &a[i][j] - &f * &a[r][j];
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    // consistent iff no row reads 0 = nonzero
    for row in a.iter().skip(r) {
        if !row[m].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); m];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = a[i][m].clone();
    }
    Some(x)
}

impl QPoly {
    pub fn divrem(&self, div: &QPoly) -> (QPoly, QPoly) {
        assert!(!div.is_zero());
        let dd = div.degree();
        let dl = div.coeffs.last().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let c = rem.last().unwrap() / &dl;
            let k = rem.len() - 1 - dd;
            if !c.is_zero() {
                quo[k] = c.clone();
                for (i, dc) in div.coeffs.iter().enumerate() {
                    rem[k + i] = &rem[k + i] - &c * dc;
                }
            }
            rem.pop();
        }
        (QPoly::new(quo), QPoly::new(rem))
    }

    pub fn sub_q(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul_q(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        QPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn golden() -> NumberField {
        make_field(&zp(&[-1, -1, 1]), 192).unwrap()
    }

    fn gaussian() -> NumberField {
        make_field(&zp(&[1, 0, 1]), 192).unwrap()
    }

    #[test]
    fn make_field_basics() {
        let k = golden();
        assert_eq!(k.degree(), 2);
        assert_eq!(*k.disc(), BigInt::from(5));
        assert!(k.index_primes().is_empty());
        assert_eq!(k.automorphisms().len(), 1);
    }

    #[test]
    fn degree_one_allowed() {
        let k = make_field(&zp(&[-1, 1]), 192).unwrap();
        assert_eq!(k.degree(), 1);
        let t = k.theta();
        assert_eq!(k.as_rational(&t).unwrap(), BigRational::one());
    }

    #[test]
    fn reducible_rejected() {
        assert!(matches!(
            make_field(&zp(&[-1, 0, 1]), 192),
            Err(Error::NotIrreducible { .. })
        ));
        assert!(matches!(
            make_field(&ZPoly::new(vec![BigInt::from(1), BigInt::from(2)]), 192),
            Err(Error::NotMonic)
        ));
    }

    #[test]
    fn field_inverse_and_norm() {
        let k = golden();
        let phi = k.theta();
        let inv = k.inv(&phi).unwrap();
        assert_eq!(k.mul(&phi, &inv), k.one());
        // N(phi) = -1, N(sqrt5) = N(2 phi - 1) = -5
        assert_eq!(k.norm(&phi), q(-1, 1));
        let sqrt5 = k.sub(&k.add(&phi, &phi), &k.one());
        assert_eq!(k.norm(&sqrt5), q(-5, 1));
    }

    #[test]
    fn minimal_polys() {
        let k = golden();
        let phi = k.theta();
        assert_eq!(
            k.element_minimal_poly(&phi),
            zp(&[-1, -1, 1]).to_qpoly()
        );
        assert_eq!(k.element_minimal_poly(&k.one()), zp(&[-1, 1]).to_qpoly());
        // 1 + 2i has minimal polynomial x^2 - 2x + 5, by expanding (x-1-2i)(x-1+2i)
        let kq = gaussian();
        let a = kq.add(&kq.one(), &kq.mul(&kq.theta(), &kq.from_integer(2)));
        assert_eq!(kq.element_minimal_poly(&a), zp(&[5, -2, 1]).to_qpoly());
    }

    #[test]
    fn minimal_poly_annihilates() {
        let k = golden();
        let a = FieldElement {
            coords: vec![q(1, 2), q(3, 1)],
        };
        let mp = k.element_minimal_poly(&a);
        let mut acc = k.zero();
        for c in mp.coeffs.iter().rev() {
            acc = k.mul(&acc, &a);
            acc = k.add(&acc, &k.from_rational(c.clone()));
        }
        assert!(k.is_zero_el(&acc));
        assert!(k.degree() % mp.degree() == 0);
    }

    #[test]
    fn automorphism_action() {
        let k = golden();
        let sigma = &k.automorphisms()[0];
        let phi = k.theta();
        // sigma(phi) = 1 - phi
        let img = k.apply_automorphism(sigma, &phi);
        assert_eq!(img, k.sub(&k.one(), &phi));
        // rationals are fixed
        let three = k.from_integer(3);
        assert_eq!(k.apply_automorphism(sigma, &three), three);
        // i -> -i in the Gaussian field
        let kq = gaussian();
        let sigma = &kq.automorphisms()[0];
        let a = kq.add(&kq.one(), &kq.mul(&kq.theta(), &kq.from_integer(2)));
        let expect = kq.sub(&kq.one(), &kq.mul(&kq.theta(), &kq.from_integer(2)));
        assert_eq!(kq.apply_automorphism(sigma, &a), expect);
    }

    #[test]
    fn automorphism_is_ring_hom() {
        let k = gaussian();
        let sigma = &k.automorphisms()[0];
        let a = FieldElement {
            coords: vec![q(2, 3), q(-5, 1)],
        };
        let b = FieldElement {
            coords: vec![q(7, 2), q(1, 4)],
        };
        assert_eq!(
            k.apply_automorphism(sigma, &k.mul(&a, &b)),
            k.mul(
                &k.apply_automorphism(sigma, &a),
                &k.apply_automorphism(sigma, &b)
            )
        );
        assert_eq!(
            k.apply_automorphism(sigma, &k.add(&a, &b)),
            k.add(
                &k.apply_automorphism(sigma, &a),
                &k.apply_automorphism(sigma, &b)
            )
        );
    }

    #[test]
    fn roots_of_unity() {
        let k = golden();
        let minus_one = k.from_integer(-1);
        assert_eq!(k.is_root_of_unity(&minus_one).unwrap(), Some(2));
        assert_eq!(k.is_root_of_unity(&k.theta()).unwrap(), None);
        let kq = gaussian();
        assert_eq!(k.is_root_of_unity(&k.one()).unwrap(), Some(1));
        assert_eq!(kq.is_root_of_unity(&kq.theta()).unwrap(), Some(4));
        assert!(matches!(
            kq.is_root_of_unity(&kq.zero()),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn complex_values_match_known_embeddings() {
        let k = golden();
        let (vals, err) = k.complex_values(&k.theta()).unwrap();
        assert!(err.to_f64() < 1e-40);
        let mut got: Vec<f64> = vals.iter().map(|v| v.re.to_f64()).collect();
        got.sort_by(f64::total_cmp);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((got[0] - (1.0 - phi)).abs() < 1e-12);
        assert!((got[1] - phi).abs() < 1e-12);

        let kq = gaussian();
        let a = kq.add(&kq.one(), &kq.mul(&kq.theta(), &kq.from_integer(2)));
        let (vals, _) = kq.complex_values(&a).unwrap();
        for v in vals {
            assert!((v.abs().to_f64() - 5f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn rational_constant_embeds_everywhere() {
        let k = golden();
        let (vals, _) = k.complex_values(&k.from_integer(2)).unwrap();
        for v in vals {
            assert!((v.re.to_f64() - 2.0).abs() < 1e-30);
            assert_eq!(v.im.to_f64(), 0.0);
        }
    }
}
