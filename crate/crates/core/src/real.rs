//! Fixed-precision real and complex arithmetic on top of `astro-float`.
//!
//! Every [`Real`] carries its working precision in bits. Binary operations
//! use the larger of the two operand precisions, so precision set at
//! construction time flows through a computation. Exact integers and
//! rationals enter through [`Real::from_bigint`] / [`Real::from_ratio`];
//! the integer conversion is exact (it temporarily raises the precision to
//! the bit length of the integer before rounding back).

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    prec: usize,
}

impl fmt::Debug for Real {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "Real({})", self.v)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{}", self.v)
    }
}

impl Real {
    pub fn zero(prec: usize) -> Self {
        Real {
            v: BigFloat::from_u64(0, prec),
            prec,
        }
    }

    pub fn from_u64(n: u64, prec: usize) -> Self {
        Real {
            v: BigFloat::from_u64(n, prec),
            prec,
        }
    }

    pub fn from_i64(n: i64, prec: usize) -> Self {
        let r = Self::from_u64(n.unsigned_abs(), prec);
        if n < 0 {
            r.neg()
        } else {
            r
        }
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        assert!(x.is_finite(), "Real::from_f64 requires a finite input");
        Real {
            v: BigFloat::from_f64(x, prec),
            prec,
        }
    }

    /// Exact conversion; the result is rounded to `prec` only at the end.
    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        let (sign, digits) = n.to_u64_digits();
        let wide = prec.max(64 * digits.len() + 2);
        let mut acc = BigFloat::from_u64(0, wide);
        for d in digits.iter().rev() {
            if !acc.is_zero() {
                let e = acc.exponent().expect("finite");
                acc.set_exponent(e + 64);
            }
            acc = acc.add(&BigFloat::from_u64(*d, wide), wide, RM);
        }
        if sign == Sign::Minus {
            acc = acc.neg();
        }
        // round back down to the working precision
        let v = acc.add(&BigFloat::from_u64(0, prec), prec, RM);
        Real { v, prec }
    }

    pub fn from_ratio(q: &BigRational, prec: usize) -> Self {
        let num = Self::from_bigint(q.numer(), prec + 32);
        let den = Self::from_bigint(q.denom(), prec + 32);
        let v = num.v.div(&den.v, prec, RM);
        Real { v, prec }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// 2^e at this precision (exact).
    pub fn pow2(e: i32, prec: usize) -> Self {
        let mut v = BigFloat::from_u64(1, prec);
        v.set_exponent(v.exponent().unwrap() + e - 1);
        Real { v, prec }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive() && !self.v.is_zero()
    }

    pub fn add(&self, rhs: &Real) -> Real {
        let p = self.prec.max(rhs.prec);
        Real {
            v: self.v.add(&rhs.v, p, RM),
            prec: p,
        }
    }

    pub fn sub(&self, rhs: &Real) -> Real {
        let p = self.prec.max(rhs.prec);
        Real {
            v: self.v.sub(&rhs.v, p, RM),
            prec: p,
        }
    }

    pub fn mul(&self, rhs: &Real) -> Real {
        let p = self.prec.max(rhs.prec);
        Real {
            v: self.v.mul(&rhs.v, p, RM),
            prec: p,
        }
    }

    pub fn div(&self, rhs: &Real) -> Real {
        assert!(!rhs.is_zero(), "Real division by zero");
        let p = self.prec.max(rhs.prec);
        Real {
            v: self.v.div(&rhs.v, p, RM),
            prec: p,
        }
    }

    pub fn neg(&self) -> Real {
        Real {
            v: self.v.neg(),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Real {
        Real {
            v: self.v.abs(),
            prec: self.prec,
        }
    }

    pub fn sqrt(&self) -> Real {
        assert!(!self.is_negative(), "Real::sqrt of a negative number");
        Real {
            v: self.v.sqrt(self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn ln(&self) -> Real {
        assert!(self.is_positive(), "Real::ln requires a positive argument");
        let v = CONSTS.with(|c| self.v.ln(self.prec, RM, &mut c.borrow_mut()));
        Real { v, prec: self.prec }
    }

    pub fn exp(&self) -> Real {
        let v = CONSTS.with(|c| self.v.exp(self.prec, RM, &mut c.borrow_mut()));
        Real { v, prec: self.prec }
    }

    pub fn powi(&self, e: usize) -> Real {
        Real {
            v: self.v.powi(e, self.prec, RM),
            prec: self.prec,
        }
    }

    /// max{0, ln(self)}; zero for any input <= 1.
    pub fn ln_plus(&self) -> Real {
        if self.cmp(&Real::from_u64(1, self.prec)) == Ordering::Greater {
            self.ln()
        } else {
            Real::zero(self.prec)
        }
    }

    pub fn max(&self, rhs: &Real) -> Real {
        if self.cmp(rhs) == Ordering::Less {
            rhs.clone()
        } else {
            self.clone()
        }
    }

    pub fn cmp(&self, rhs: &Real) -> Ordering {
        match self.v.cmp(&rhs.v) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            Some(_) => Ordering::Equal,
            None => panic!("Real comparison involving NaN"),
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        format!("{}", self.v)
            .parse::<f64>()
            .expect("astro-float Display output parses as f64")
    }
}

/// Complex number with `Real` components.
#[derive(Clone, Debug)]
pub struct CReal {
    pub re: Real,
    pub im: Real,
}

impl CReal {
    pub fn new(re: Real, im: Real) -> Self {
        CReal { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec();
        CReal {
            re,
            im: Real::zero(prec),
        }
    }

    pub fn zero(prec: usize) -> Self {
        CReal {
            re: Real::zero(prec),
            im: Real::zero(prec),
        }
    }

    pub fn add(&self, o: &CReal) -> CReal {
        CReal {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &CReal) -> CReal {
        CReal {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn mul(&self, o: &CReal) -> CReal {
        CReal {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn div(&self, o: &CReal) -> CReal {
        let d = o.abs_sq();
        assert!(!d.is_zero(), "CReal division by zero");
        let num = self.mul(&o.conj());
        CReal {
            re: num.re.div(&d),
            im: num.im.div(&d),
        }
    }

    pub fn conj(&self) -> CReal {
        CReal {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn neg(&self) -> CReal {
        CReal {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn abs_sq(&self) -> Real {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Real {
        self.abs_sq().sqrt()
    }

    pub fn scale(&self, s: &Real) -> CReal {
        CReal {
            re: self.re.mul(s),
            im: self.im.mul(s),
        }
    }
}
