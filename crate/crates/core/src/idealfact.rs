//! Dedekind-Kummer prime splitting, valuations by HNF-power membership,
//! and factorization of fractional ideals in the monogenic case.
//!
//! A prime failing Dedekind's criterion is a hard `IndexDivisor` error:
//! this backend refuses to guess at non-monogenic orders.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::fp::Fp;
use crate::hnf::{self, Mat};
use crate::poly::ZPoly;
use crate::qfield::{FieldElement, NumberField};
use crate::zfactor::{self, FactorEffort};

#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    pub p: BigInt,
    pub e: u32,
    pub f: u32,
    /// Monic integer lift h with the ideal generated by (p, h(theta)).
    pub gen_poly: ZPoly,
    /// Canonical HNF basis of the ideal as a Z-lattice in the power basis.
    pub hnf_basis: Mat,
}

impl PrimeIdeal {
    /// Absolute norm N(p) = p^f.
    pub fn norm(&self) -> BigInt {
        self.p.pow(self.f)
    }

    fn key(&self) -> (&BigInt, u32, u32, &Mat) {
        (&self.p, self.f, self.e, &self.hnf_basis)
    }
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for PrimeIdeal {}
impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// A fractional-ideal factorization: prime -> nonzero exponent. The empty
/// map is the unit ideal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdealFactorization {
    pub factors: BTreeMap<PrimeIdeal, i64>,
}

/// Finite set of places; `include_archimedean` is part of the data even
/// though the archimedean places need no explicit listing.
#[derive(Clone, Debug)]
pub struct PlaceSet {
    pub finite: BTreeSet<PrimeIdeal>,
    pub include_archimedean: bool,
}

impl PlaceSet {
    /// S from a list of rational primes: all places above each of them,
    /// automatically satisfying the same-rational-prime closure rule.
    pub fn from_rational_primes(k: &NumberField, primes: &[BigInt]) -> Result<PlaceSet> {
        let mut finite = BTreeSet::new();
        for p in primes {
            for pr in split_prime(k, p)? {
                finite.insert(pr);
            }
        }
        Ok(PlaceSet {
            finite,
            include_archimedean: true,
        })
    }

    /// Raw constructor for place sets that are not closed under the
    /// same-rational-prime rule (the elliptic-side convention).
    pub fn from_primes(primes: BTreeSet<PrimeIdeal>, include_archimedean: bool) -> PlaceSet {
        PlaceSet {
            finite: primes,
            include_archimedean,
        }
    }

    pub fn contains(&self, p: &PrimeIdeal) -> bool {
        self.finite.contains(p)
    }

    pub fn rational_primes(&self) -> BTreeSet<BigInt> {
        self.finite.iter().map(|p| p.p.clone()).collect()
    }
}

/// Dedekind-Kummer splitting of a rational prime.
pub fn split_prime(k: &NumberField, p: &BigInt) -> Result<Vec<PrimeIdeal>> {
    if !zfactor::is_prime(p.magnitude()) || p.is_negative() {
        return Err(Error::invalid(format!("{} is not a positive prime", p)));
    }
    if k.index_primes().contains(p) && !dedekind_criterion_ok(k, p) {
        return Err(Error::IndexDivisor { p: p.clone() });
    }
    let d = k.degree();
    let fp = Fp::new(p.magnitude().clone());
    let gbar = fp.from_zpoly(k.defining_poly());
    let factors = fp.factor_monic(&gbar);
    let mut out = Vec::with_capacity(factors.len());
    let mut total = 0usize;
    for (hbar, e) in &factors {
        let h = fp.lift(hbar);
        let f = h.degree() as u32;
        total += (*e as usize) * f as usize;
        out.push(PrimeIdeal {
            p: p.clone(),
            e: *e,
            f,
            hnf_basis: ideal_lattice(k, p, &h),
            gen_poly: h,
        });
    }
    debug_assert_eq!(total, d, "sum of e_i f_i must equal the degree");
    out.sort();
    Ok(out)
}

/// HNF lattice of (p, h(theta)) in the power basis.
fn ideal_lattice(k: &NumberField, p: &BigInt, h: &ZPoly) -> Mat {
    let d = k.degree();
    let mut rows: Mat = Vec::with_capacity(2 * d);
    for j in 0..d {
        let mut row = vec![BigInt::zero(); d];
        row[j] = p.clone();
        rows.push(row);
    }
    // h(theta) * theta^j, reduced mod g over Z
    let (_, hred) = h.divrem_monic(k.defining_poly());
    let mut cur = hred;
    for _ in 0..d {
        let mut row = vec![BigInt::zero(); d];
        for (i, c) in cur.coeffs.iter().enumerate() {
            row[i] = c.clone();
        }
        rows.push(row);
        cur = shift_reduce(k, &cur);
    }
    let basis = hnf::hnf(rows);
    debug_assert_eq!(
        hnf::det(&basis),
        p.pow(h.degree() as u32),
        "lattice index must be p^f with f the degree of the generator"
    );
    basis
}

/// Multiply by theta and reduce mod g, over Z.
fn shift_reduce(k: &NumberField, a: &ZPoly) -> ZPoly {
    let mut coeffs = vec![BigInt::zero()];
    coeffs.extend(a.coeffs.iter().cloned());
    ZPoly::new(coeffs).divrem_monic(k.defining_poly()).1
}

/// Dedekind's criterion: with gbar = prod fbar_i^{e_i}, g1 = lift(prod fbar_i),
/// h1 = lift(gbar/g1bar), T = (g1 h1 - g)/p, the prime is an index divisor
/// iff gcd(Tbar, g1bar, h1bar) != 1.
fn dedekind_criterion_ok(k: &NumberField, p: &BigInt) -> bool {
    let fp = Fp::new(p.magnitude().clone());
    let gbar = fp.from_zpoly(k.defining_poly());
    let factors = fp.factor_monic(&gbar);
    let mut g1bar = vec![BigUint::one()];
    for (fac, _) in &factors {
        g1bar = fp.mul(&g1bar, fac);
    }
    let (h1bar, rem) = fp.divrem(&gbar, &g1bar);
    debug_assert!(rem.is_empty());
    let g1 = fp.lift(&g1bar);
    let h1 = fp.lift(&h1bar);
    let num = g1.mul(&h1).sub(k.defining_poly());
    let t = num.div_scalar_exact(p);
    let tbar = fp.from_zpoly(&t);
    let mut g = fp.gcd(&tbar, &g1bar);
    g = fp.gcd(&g, &h1bar);
    g.len() <= 1
}

thread_local! {
    #[allow(clippy::type_complexity)]
    static POWER_CACHE: RefCell<BTreeMap<(Vec<BigInt>, BigInt, Mat), Vec<Mat>>> =
        const { RefCell::new(BTreeMap::new()) };
}

/// v_p(a) for a nonzero element, by membership in successive HNF powers of
/// the prime lattice (with the content and denominator pulled out first).
pub fn valuation(k: &NumberField, pr: &PrimeIdeal, a: &FieldElement) -> Result<i64> {
    if k.is_zero_el(a) {
        return Err(Error::ZeroElement);
    }
    let (apoly, m) = k.clear_denominators(a);
    let content = apoly.content();
    let body = apoly.div_scalar_exact(&content);
    let vp_m = zfactor::valuation_int(&m, pr.p.magnitude()) as i64;
    let vp_c = zfactor::valuation_int(&content, pr.p.magnitude()) as i64;
    let mut v = (pr.e as i64) * (vp_c - vp_m);
    v += lattice_level(k, pr, &body)?;
    Ok(v)
}

fn lattice_level(k: &NumberField, pr: &PrimeIdeal, body: &ZPoly) -> Result<i64> {
    let d = k.degree();
    let mut coords = vec![BigInt::zero(); d];
    for (i, c) in body.coeffs.iter().enumerate() {
        coords[i] = c.clone();
    }
    // safety cap: v_p(body) <= e * v_p(N(body))
    let n = ZPoly::resultant(k.defining_poly(), body);
    let cap = (pr.e as i64) * zfactor::valuation_int(&n, pr.p.magnitude()) as i64 + 1;

    let key = (
        k.defining_poly().coeffs.clone(),
        pr.p.clone(),
        pr.hnf_basis.clone(),
    );
    POWER_CACHE.with(|cache| {
        let mut cache = cache.borrow_mut();
        let powers = cache.entry(key).or_insert_with(|| vec![pr.hnf_basis.clone()]);
        let mut level = 0i64;
        loop {
            if level >= cap {
                return Err(Error::invalid(
                    "valuation exceeded its norm bound; lattice arithmetic bug",
                ));
            }
            let idx = level as usize;
            if powers.len() <= idx {
                let next = hnf::mul_lattices(&powers[idx - 1], &powers[0], |x, y| {
                    mul_coords(k, x, y)
                });
                powers.push(next);
            }
            if hnf::member(&powers[idx], &coords) {
                level += 1;
            } else {
                return Ok(level);
            }
        }
    })
}

fn mul_coords(k: &NumberField, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let d = k.degree();
    let prod = ZPoly::new(x.to_vec()).mul(&ZPoly::new(y.to_vec()));
    let red = prod.divrem_monic(k.defining_poly()).1;
    let mut out = vec![BigInt::zero(); d];
    for (i, c) in red.coeffs.iter().enumerate() {
        out[i] = c.clone();
    }
    out
}

/// Full factorization of the principal fractional ideal (a).
pub fn factor_principal(
    k: &NumberField,
    a: &FieldElement,
    effort: &FactorEffort,
) -> Result<IdealFactorization> {
    if k.is_zero_el(a) {
        return Err(Error::ZeroElement);
    }
    let n = k.norm(a);
    let mut primes: BTreeSet<BigUint> = BTreeSet::new();
    primes.extend(zfactor::factor_int(&n.numer().clone(), effort)?.into_keys());
    primes.extend(zfactor::factor_int(&n.denom().clone(), effort)?.into_keys());
    factor_at_primes(k, a, &n, primes, false)
}

/// Factorization restricted to the denominator support: exactly the primes
/// with negative valuation. Only the coordinate denominator is factored,
/// which keeps elliptic denominator ideals affordable when numerators are
/// out of factoring range.
pub fn factor_principal_denominator(
    k: &NumberField,
    a: &FieldElement,
    effort: &FactorEffort,
) -> Result<IdealFactorization> {
    if k.is_zero_el(a) {
        return Err(Error::ZeroElement);
    }
    let (_, m) = k.clear_denominators(a);
    let n = k.norm(a);
    let primes: BTreeSet<BigUint> = zfactor::factor_int(&m, effort)?.into_keys().collect();
    factor_at_primes(k, a, &n, primes, true)
}

fn factor_at_primes(
    k: &NumberField,
    a: &FieldElement,
    n: &BigRational,
    primes: BTreeSet<BigUint>,
    negatives_only: bool,
) -> Result<IdealFactorization> {
    let mut factors = BTreeMap::new();
    for p in primes {
        let pint = BigInt::from(p.clone());
        let v_norm =
            zfactor::valuation_int(n.numer(), &p) as i64 - zfactor::valuation_int(n.denom(), &p) as i64;
        let mut check = 0i64;
        for pr in split_prime(k, &pint)? {
            let v = valuation(k, &pr, a)?;
            check += (pr.f as i64) * v;
            if v != 0 && (!negatives_only || v < 0) {
                factors.insert(pr, v);
            }
        }
        if check != v_norm {
            return Err(Error::invalid(format!(
                "valuation bookkeeping failed at p = {}: sum f*v = {} but v_p(N) = {}",
                pint, check, v_norm
            )));
        }
    }
    Ok(IdealFactorization { factors })
}

/// Drop the places of S; the remainder must be effective (an honest ideal
/// of the ring of S-integers).
pub fn s_reduce(f: &IdealFactorization, s: &PlaceSet) -> Result<IdealFactorization> {
    let mut factors = BTreeMap::new();
    for (pr, &e) in &f.factors {
        if s.contains(pr) {
            continue;
        }
        if e < 0 {
            return Err(Error::NegativeExponentOutsideS);
        }
        factors.insert(pr.clone(), e);
    }
    Ok(IdealFactorization { factors })
}

/// The part supported on residue degree > 1: J when applied to I(f(u)).
pub fn deg_gt1_part(f: &IdealFactorization) -> IdealFactorization {
    debug_assert!(f.factors.values().all(|&e| e >= 0));
    IdealFactorization {
        factors: f
            .factors
            .iter()
            .filter(|(pr, _)| pr.f > 1)
            .map(|(pr, &e)| (pr.clone(), e))
            .collect(),
    }
}

/// Exact norm prod N(p)^e as a positive rational.
pub fn ideal_norm(f: &IdealFactorization) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (pr, &e) in &f.factors {
        let n = pr.norm().pow(e.unsigned_abs() as u32);
        if e > 0 {
            num *= n;
        } else {
            den *= n;
        }
    }
    BigRational::new(num, den)
}

pub fn ideal_equal(f1: &IdealFactorization, f2: &IdealFactorization) -> bool {
    f1.factors == f2.factors
}

impl IdealFactorization {
    pub fn unit() -> Self {
        IdealFactorization::default()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponentwise sum (ideal product).
    pub fn mul(&self, other: &IdealFactorization) -> IdealFactorization {
        let mut factors = self.factors.clone();
        for (pr, &e) in &other.factors {
            let entry = factors.entry(pr.clone()).or_insert(0);
            *entry += e;
            if *entry == 0 {
                factors.remove(pr);
            }
        }
        IdealFactorization { factors }
    }

    /// Whether `self` divides `other` exponentwise (both effective).
    pub fn divides(&self, other: &IdealFactorization) -> bool {
        self.factors
            .iter()
            .all(|(pr, &e)| other.factors.get(pr).copied().unwrap_or(0) >= e)
    }

    /// JSON per the fixed schema: [{"p":13,"f":2,"e":1,"exp":1}, ...],
    /// sorted by (p, f, e, hnf).
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .factors
            .iter()
            .map(|(pr, &e)| {
                let p = pr
                    .p
                    .to_u64()
                    .map(|v| json!(v))
                    .unwrap_or_else(|| json!(pr.p.to_string()));
                json!({"p": p, "f": pr.f, "e": pr.e, "exp": e})
            })
            .collect();
        serde_json::Value::Array(entries)
    }
}
