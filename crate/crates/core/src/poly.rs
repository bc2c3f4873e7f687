//! Dense univariate polynomials over Z and over Q.
//!
//! Coefficients are stored little-endian (index = degree of the term) with
//! trailing zeros trimmed, so the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly {
    pub coeffs: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    pub coeffs: Vec<BigRational>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        ZPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for the zero polynomial (callers must check `is_zero`).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_q(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> ZPoly {
        if self.coeffs.len() <= 1 {
            return ZPoly::zero();
        }
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn scale(&self, s: &BigInt) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Exact division by a scalar; panics if any coefficient is not divisible.
    pub fn div_scalar_exact(&self, s: &BigInt) -> ZPoly {
        ZPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(s);
                    assert!(r.is_zero(), "non-exact scalar division");
                    q
                })
                .collect(),
        )
    }

    /// Quotient and remainder by a monic divisor (exact over Z).
    pub fn divrem_monic(&self, div: &ZPoly) -> (ZPoly, ZPoly) {
        assert!(div.is_monic(), "divrem_monic requires a monic divisor");
        let dd = div.degree();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone();
            if !c.is_zero() {
                quo[k] = c.clone();
                for (i, dc) in div.coeffs.iter().enumerate() {
                    let idx = k + i;
                    rem[idx] = &rem[idx] - &c * dc;
                }
            }
            rem.pop();
        }
        (ZPoly::new(quo), ZPoly::new(rem))
    }

    /// Whether `div` (monic) divides `self` exactly over Z.
    pub fn divides_monic(&self, div: &ZPoly) -> bool {
        self.divrem_monic(div).1.is_zero()
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect(),
        }
    }

    /// Resultant Res(f, g) via fraction-free (Bareiss) elimination of the
    /// Sylvester matrix. Res of two nonzero constants is 1.
    pub fn resultant(f: &ZPoly, g: &ZPoly) -> BigInt {
        assert!(!f.is_zero() && !g.is_zero(), "resultant of zero polynomial");
        let m = f.degree();
        let n = g.degree();
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        if m == 0 {
            return f.coeffs[0].pow(n as u32);
        }
        if n == 0 {
            return g.coeffs[0].pow(m as u32);
        }
        let size = m + n;
        let mut a = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for (j, c) in f.coeffs.iter().rev().enumerate() {
                a[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in g.coeffs.iter().rev().enumerate() {
                a[n + i][i + j] = c.clone();
            }
        }
        bareiss_det(a)
    }

    /// Discriminant of a monic polynomial: (-1)^{d(d-1)/2} Res(f, f').
    pub fn discriminant_monic(&self) -> BigInt {
        assert!(self.is_monic());
        let d = self.degree();
        if d <= 1 {
            return BigInt::one();
        }
        let r = ZPoly::resultant(self, &self.derivative());
        if (d * (d - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// Number of distinct real roots, by Sturm's theorem (exact).
    pub fn real_root_count(&self) -> usize {
        assert!(!self.is_zero());
        let q = self.to_qpoly();
        let mut seq = vec![q.clone(), q.derivative()];
        while !seq.last().unwrap().is_zero() {
            let k = seq.len();
            let r = seq[k - 2].rem(&seq[k - 1]);
            seq.push(r.neg());
        }
        seq.pop();
        let signs_at = |at_plus_inf: bool| -> usize {
            let mut changes = 0;
            let mut last: Option<bool> = None;
            for p in &seq {
                if p.is_zero() {
                    continue;
                }
                let lc = p.coeffs.last().unwrap();
                let mut pos = lc.is_positive();
                if !at_plus_inf && p.degree() % 2 == 1 {
                    pos = !pos;
                }
                if let Some(prev) = last {
                    if prev != pos {
                        changes += 1;
                    }
                }
                last = Some(pos);
            }
            changes
        };
        signs_at(false) - signs_at(true)
    }
}

/// Determinant by Bareiss fraction-free elimination (exact over Z).
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let pivot = (k + 1..n).find(|&i| !a[i][k].is_zero());
            match pivot {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn rem(&self, div: &QPoly) -> QPoly {
        assert!(!div.is_zero());
        let dd = div.degree();
        let dl = div.coeffs.last().unwrap().clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let c = rem.last().unwrap() / &dl;
            let k = rem.len() - 1 - dd;
            if !c.is_zero() {
                for (i, dc) in div.coeffs.iter().enumerate() {
                    let idx = k + i;
                    rem[idx] = &rem[idx] - &c * dc;
                }
            }
            rem.pop();
        }
        QPoly::new(rem)
    }

    /// Clear denominators and content: the unique primitive integer
    /// polynomial with positive leading coefficient and the same roots.
    pub fn primitive_zpoly(&self) -> ZPoly {
        assert!(!self.is_zero());
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let z = ZPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let t = c * BigRational::from(lcm.clone());
                    assert!(t.is_integer());
                    t.to_integer()
                })
                .collect(),
        );
        z.primitive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn resultant_and_discriminant() {
        // disc(x^2 - x - 1) = 5, computed by the b^2 - 4ac formula by hand
        assert_eq!(zp(&[-1, -1, 1]).discriminant_monic(), BigInt::from(5));
        // disc(x^2 + 1) = -4
        assert_eq!(zp(&[1, 0, 1]).discriminant_monic(), BigInt::from(-4));
        // disc(x^3 - 2) = -27*4 = -108
        assert_eq!(zp(&[-2, 0, 0, 1]).discriminant_monic(), BigInt::from(-108));
        // disc(x^3 - x - 1) = -23
        assert_eq!(zp(&[-1, -1, 0, 1]).discriminant_monic(), BigInt::from(-23));
    }

    #[test]
    fn divrem_monic_works() {
        let f = zp(&[2, 0, 3, 1]); // x^3 + 3x^2 + 2
        let g = zp(&[1, 1]); // x + 1
        let (q, r) = f.divrem_monic(&g);
        assert_eq!(g.mul(&q).add(&r), f);
        assert!(r.degree() < 1 || r.is_zero());
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(zp(&[-1, -1, 1]).real_root_count(), 2); // x^2-x-1
        assert_eq!(zp(&[1, 0, 1]).real_root_count(), 0); // x^2+1
        assert_eq!(zp(&[-2, 0, 0, 1]).real_root_count(), 1); // x^3-2
        assert_eq!(zp(&[-1, -1, 0, 1]).real_root_count(), 1); // x^3-x-1
        assert_eq!(zp(&[0, -1, 0, 1]).real_root_count(), 3); // x^3-x
    }

    #[test]
    fn primitive_zpoly_clears_denominators() {
        let q = QPoly::new(vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-1), BigInt::from(3)),
            BigRational::from(BigInt::from(1)),
        ]);
        let z = q.primitive_zpoly();
        assert_eq!(z, zp(&[3, -2, 6]));
    }
}
