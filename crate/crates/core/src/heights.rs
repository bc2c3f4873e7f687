//! Weil heights in absolute logarithmic normalization, local heights for
//! divisors on the multiplicative group, and the decomposition of a height
//! into the degree-one and degree->1 parts.
//!
//! Heights are computed twice, by the Mahler-measure route (minimal
//! polynomial) and by the places route (embeddings + valuations), and the
//! two must agree; the residual rides along in the returned value. The
//! relative height identity H_k(f(u)) = C_u N(I(f(u))) for S-units is
//! checked on every report and a violation is a hard error, because it
//! can only come from a valuation bug.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::idealfact::{
    self, deg_gt1_part, factor_principal, factor_principal_denominator, ideal_norm, s_reduce,
    IdealFactorization, PlaceSet, PrimeIdeal,
};
use crate::qfield::{ArchPlace, FieldElement, NumberField};
use crate::real::Real;
use crate::zfactor::FactorEffort;

/// Divisor on P^1 minus {0, infinity} cut out by a polynomial with
/// integral coefficients and f(0) != 0.
#[derive(Clone, Debug)]
pub struct DivisorSpecGm {
    pub f_coeffs: Vec<FieldElement>,
    /// Descriptors of the monic irreducible factors over the Galois
    /// closure, when the caller supplies them (labels only).
    pub factors_over_l: Option<Vec<String>>,
}

impl DivisorSpecGm {
    pub fn new(k: &NumberField, f_coeffs: Vec<FieldElement>) -> Result<Self> {
        if f_coeffs.len() < 2 {
            return Err(Error::invalid("divisor polynomial must be nonconstant"));
        }
        for c in &f_coeffs {
            if !k.is_integral(c) {
                return Err(Error::invalid(
                    "divisor polynomial needs integral coefficients",
                ));
            }
        }
        if k.is_zero_el(&f_coeffs[0]) {
            return Err(Error::invalid("divisor polynomial must not vanish at 0"));
        }
        Ok(DivisorSpecGm {
            f_coeffs,
            factors_over_l: None,
        })
    }

    pub fn eval(&self, k: &NumberField, a: &FieldElement) -> FieldElement {
        k.eval_kpoly(&self.f_coeffs, a)
    }
}

/// Which places enter the two height buckets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SBucketMode {
    /// Every place, archimedean ones counted as degree one (the
    /// definition used throughout).
    #[default]
    IncludeAll,
    /// Drop the places of S from both buckets; finitely many local
    /// heights are negligible for the asymptotic statements.
    ExcludeS,
}

#[derive(Clone, Debug)]
pub struct HeightConfig {
    pub bucket_mode: SBucketMode,
    pub tolerance: f64,
    pub effort: FactorEffort,
}

impl Default for HeightConfig {
    fn default() -> Self {
        HeightConfig {
            bucket_mode: SBucketMode::IncludeAll,
            tolerance: 1e-9,
            effort: FactorEffort::default(),
        }
    }
}

/// A height value with its certified error bound and the residual of the
/// two-route cross-check.
#[derive(Clone, Debug)]
pub struct HeightValue {
    pub value: Real,
    pub err: Real,
    pub cross_residual: Real,
}

/// Norm of an ideal carried both exactly (when it is rational) and in log
/// form for comparisons.
#[derive(Clone, Debug)]
pub struct NormValue {
    pub exact: Option<BigRational>,
    pub ln: Real,
}

impl NormValue {
    pub fn from_exact(n: BigRational, prec: usize) -> Self {
        assert!(n.is_positive());
        NormValue {
            ln: Real::from_ratio(&n, prec).ln(),
            exact: Some(n),
        }
    }

    pub fn one(prec: usize) -> Self {
        NormValue::from_exact(BigRational::from(BigInt::from(1)), prec)
    }

    pub fn display(&self) -> String {
        match &self.exact {
            Some(q) if q.is_integer() => q.numer().to_string(),
            Some(q) => format!("{}/{}", q.numer(), q.denom()),
            None => format!("{:.12e}", self.ln.exp().to_f64()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HeightReport {
    /// Absolute logarithmic height of the input element or point.
    pub h_abs: Real,
    pub h_d: Real,
    pub h_deg1: Real,
    pub h_deg_gt1: Real,
    pub norm_i: NormValue,
    pub norm_j: NormValue,
    /// The archimedean/S residual of the relative height identity; absent
    /// in elliptic reports.
    pub c_u_log: Option<Real>,
    pub ratio: Real,
    pub err_bound: Real,
    pub cu_residual: Option<Real>,
    pub ideal_i: IdealFactorization,
    pub ideal_j: IdealFactorization,
}

/// A place of k for the local-height interface.
#[derive(Clone, Debug)]
pub enum Place {
    Arch(ArchPlace),
    Finite(PrimeIdeal),
}

/// Interval width of log+ over [max(x-e,0), x+e]: a certified bound for
/// the error of log+ x given |x_true - x| <= e.
fn ln_plus_err(x: &Real, e: &Real) -> Real {
    let hi = x.add(e);
    let lo = {
        let l = x.sub(e);
        if l.is_negative() {
            Real::zero(x.prec())
        } else {
            l
        }
    };
    hi.ln_plus().sub(&lo.ln_plus())
}

/// Absolute logarithmic Weil height, h(0) = 0 by convention.
///
/// Route (i) is the Mahler-measure formula on the minimal polynomial,
/// route (ii) replaces the leading-coefficient term with the denominator
/// ideal; the returned value is route (i) and the residual is recorded.
pub fn abs_height(k: &NumberField, a: &FieldElement) -> Result<HeightValue> {
    let prec = k.precision();
    if k.is_zero_el(a) {
        return Ok(HeightValue {
            value: Real::zero(prec),
            err: Real::zero(prec),
            cross_residual: Real::zero(prec),
        });
    }
    let d = k.degree();
    let d_real = Real::from_u64(d as u64, prec);

    let mp = k.element_minimal_poly(a);
    let m = mp.degree();
    let lead = mp.primitive_zpoly().lc();
    debug_assert!(lead.is_positive());

    let (values, raw_err) = k.complex_values(a)?;
    let mut arch_sum = Real::zero(prec);
    let mut arch_err = Real::zero(prec);
    for v in &values {
        let mag = v.abs();
        arch_sum = arch_sum.add(&mag.ln_plus());
        arch_err = arch_err.add(&ln_plus_err(&mag, &raw_err));
    }

    let lead_term = Real::from_bigint(&lead, prec)
        .ln()
        .div(&Real::from_u64(m as u64, prec));
    let route1 = lead_term.add(&arch_sum.div(&d_real));

    // route (ii): finite part from the denominator ideal
    let den = factor_principal_denominator(k, a, &FactorEffort::default())?;
    let mut fin = Real::zero(prec);
    for (pr, &v) in &den.factors {
        debug_assert!(v < 0);
        let n = Real::from_bigint(&pr.norm(), prec).ln();
        fin = fin.add(&n.mul(&Real::from_i64(-v, prec)));
    }
    let route2 = arch_sum.add(&fin).div(&d_real);

    let err = arch_err
        .div(&d_real)
        .add(&Real::pow2(-((prec / 2) as i32), prec));
    Ok(HeightValue {
        cross_residual: route1.sub(&route2).abs(),
        value: route1,
        err,
    })
}

/// Local height for the divisor of f on Gm at one place, in absolute
/// normalization: max{-log |f(a)|_v, 0}.
pub fn local_height_gm(
    k: &NumberField,
    div: &DivisorSpecGm,
    place: &Place,
    a: &FieldElement,
) -> Result<Real> {
    let prec = k.precision();
    let fa = div.eval(k, a);
    if k.is_zero_el(&fa) {
        return Err(Error::OnDivisor);
    }
    let d_real = Real::from_u64(k.degree() as u64, prec);
    match place {
        Place::Finite(pr) => {
            let v = idealfact::valuation(k, pr, &fa)?;
            if v <= 0 {
                return Ok(Real::zero(prec));
            }
            let n = Real::from_bigint(&pr.norm(), prec).ln();
            Ok(n.mul(&Real::from_i64(v, prec)).div(&d_real))
        }
        Place::Arch(ap) => {
            let (values, _) = k.complex_values(&fa)?;
            let mag = values[ap.root_index].abs();
            let inv_ln_plus = if mag.cmp(&Real::from_u64(1, prec)) == std::cmp::Ordering::Less {
                mag.ln().neg()
            } else {
                Real::zero(prec)
            };
            Ok(inv_ln_plus
                .mul(&Real::from_u64(ap.weight as u64, prec))
                .div(&d_real))
        }
    }
}

/// The full report for one S-unit u: ideals I and J, their norms, the
/// bucketed height decomposition, C_u, and the identity checks.
pub fn gm_height_report(
    k: &NumberField,
    div: &DivisorSpecGm,
    s: &PlaceSet,
    u: &FieldElement,
    cfg: &HeightConfig,
) -> Result<HeightReport> {
    let prec = k.precision();
    let d_real = Real::from_u64(k.degree() as u64, prec);

    // u must be an S-unit
    let fu_support = factor_principal(k, u, &cfg.effort)?;
    if !fu_support.factors.keys().all(|pr| s.contains(pr)) {
        return Err(Error::NotAnSUnit);
    }

    let fu = div.eval(k, u);
    if k.is_zero_el(&fu) {
        return Err(Error::OnDivisor);
    }

    let full = factor_principal(k, &fu, &cfg.effort)?;
    let ideal_i = s_reduce(&full, s)?;
    let ideal_j = deg_gt1_part(&ideal_i);
    let norm_i = NormValue::from_exact(ideal_norm(&ideal_i), prec);
    let norm_j = NormValue::from_exact(ideal_norm(&ideal_j), prec);

    // local heights, finite places first (map order), then archimedean
    let (values, _) = k.complex_values(&fu)?;
    let mut h_deg1 = Real::zero(prec);
    let mut h_deg_gt1 = Real::zero(prec);
    for (pr, &v) in &full.factors {
        if v <= 0 {
            continue;
        }
        if cfg.bucket_mode == SBucketMode::ExcludeS && s.contains(pr) {
            continue;
        }
        let lam = Real::from_bigint(&pr.norm(), prec)
            .ln()
            .mul(&Real::from_i64(v, prec))
            .div(&d_real);
        if pr.f == 1 {
            h_deg1 = h_deg1.add(&lam);
        } else {
            h_deg_gt1 = h_deg_gt1.add(&lam);
        }
    }
    if cfg.bucket_mode == SBucketMode::IncludeAll {
        for ap in k.arch_places() {
            let mag = values[ap.root_index].abs();
            if mag.cmp(&Real::from_u64(1, prec)) == std::cmp::Ordering::Less {
                let lam = mag
                    .ln()
                    .neg()
                    .mul(&Real::from_u64(ap.weight as u64, prec))
                    .div(&d_real);
                h_deg1 = h_deg1.add(&lam); // archimedean places carry f_v = 1
            }
        }
    }
    let h_d = h_deg1.add(&h_deg_gt1);

    // C_u in relative normalization: sum over S of max(0, -log ||f(u)||_v)
    let mut c_u_log = Real::zero(prec);
    for ap in k.arch_places() {
        let mag = values[ap.root_index].abs();
        if mag.cmp(&Real::from_u64(1, prec)) == std::cmp::Ordering::Less {
            c_u_log = c_u_log.add(
                &mag.ln()
                    .neg()
                    .mul(&Real::from_u64(ap.weight as u64, prec)),
            );
        }
    }
    for pr in &s.finite {
        let v = full.factors.get(pr).copied().unwrap_or(0);
        if v > 0 {
            c_u_log = c_u_log.add(
                &Real::from_bigint(&pr.norm(), prec)
                    .ln()
                    .mul(&Real::from_i64(v, prec)),
            );
        }
    }

    // identity: log H_k(f(u)) = log C_u + log N(I)
    let h_fu = abs_height(k, &fu)?;
    let lhs = h_fu.value.mul(&d_real);
    let residual = lhs.sub(&c_u_log).sub(&norm_i.ln).abs();
    let tol = Real::from_f64(cfg.tolerance, prec);
    if residual.cmp(&tol) == std::cmp::Ordering::Greater {
        return Err(Error::invalid(format!(
            "relative height identity violated by {:.3e} (valuation bug)",
            residual.to_f64()
        )));
    }

    let h_u = abs_height(k, u)?;
    let ratio = if h_u.value.is_positive() {
        norm_j.ln.div(&h_u.value.mul(&d_real))
    } else {
        Real::zero(prec)
    };

    Ok(HeightReport {
        h_abs: h_u.value.clone(),
        h_d,
        h_deg1,
        h_deg_gt1,
        norm_i,
        norm_j,
        c_u_log: Some(c_u_log),
        ratio,
        err_bound: h_fu
            .err
            .add(&h_u.err)
            .add(&Real::pow2(-((prec / 2) as i32), prec)),
        cu_residual: Some(residual),
        ideal_i,
        ideal_j,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ZPoly;
    use crate::qfield::make_field;
    use num_traits::One;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn golden() -> NumberField {
        make_field(&zp(&[-1, -1, 1]), 192).unwrap()
    }

    fn gaussian() -> NumberField {
        make_field(&zp(&[1, 0, 1]), 192).unwrap()
    }

    fn x_plus_1(k: &NumberField) -> DivisorSpecGm {
        DivisorSpecGm::new(k, vec![k.one(), k.one()]).unwrap()
    }

    #[test]
    fn height_reference_values() {
        // h(phi) = (1/2) log phi: Mahler measure of x^2 - x - 1 is phi
        let k = golden();
        let h = abs_height(&k, &k.theta()).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((h.value.to_f64() - phi.ln() / 2.0).abs() < 1e-12);
        assert!(h.cross_residual.to_f64() < 1e-40);

        // h(2) = log 2 in any field
        let h2 = abs_height(&k, &k.from_integer(2)).unwrap();
        assert!((h2.value.to_f64() - 2f64.ln()).abs() < 1e-12);

        // h(1 + 2i) = (1/2) log 5
        let kq = gaussian();
        let a = kq.add(&kq.one(), &kq.mul(&kq.theta(), &kq.from_integer(2)));
        let h = abs_height(&kq, &a).unwrap();
        assert!((h.value.to_f64() - 5f64.ln() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn height_of_zero_and_one() {
        let k = golden();
        assert!(abs_height(&k, &k.zero()).unwrap().value.is_zero());
        assert!(abs_height(&k, &k.one()).unwrap().value.is_zero());
    }

    #[test]
    fn power_scaling() {
        let k = golden();
        let h1 = abs_height(&k, &k.theta()).unwrap().value.to_f64();
        let h7 = abs_height(&k, &k.pow(&k.theta(), 7).unwrap())
            .unwrap()
            .value
            .to_f64();
        assert!((h7 - 7.0 * h1).abs() < 1e-12);
    }

    #[test]
    fn local_height_example_from_fibonacci_chain() {
        // v = p13 (inert), a = phi^14, f = x + 1: local height is
        // (1 * log 169)/2 = log 13
        let k = golden();
        let div = x_plus_1(&k);
        let a = k.pow(&k.theta(), 14).unwrap();
        let p13 = idealfact::split_prime(&k, &BigInt::from(13)).unwrap();
        assert_eq!(p13.len(), 1);
        let lam = local_height_gm(&k, &div, &Place::Finite(p13[0].clone()), &a).unwrap();
        assert!((lam.to_f64() - 13f64.ln()).abs() < 1e-12);
        // a place where |f(a)|_v >= 1 contributes zero
        let p7 = idealfact::split_prime(&k, &BigInt::from(7)).unwrap();
        let lam7 = local_height_gm(&k, &div, &Place::Finite(p7[0].clone()), &a).unwrap();
        assert!(lam7.is_zero());
    }

    #[test]
    fn on_divisor_rejected() {
        let k = golden();
        let div = x_plus_1(&k);
        let minus_one = k.from_integer(-1);
        let p2 = idealfact::split_prime(&k, &BigInt::from(2)).unwrap();
        assert!(matches!(
            local_height_gm(&k, &div, &Place::Finite(p2[0].clone()), &minus_one),
            Err(Error::OnDivisor)
        ));
    }

    #[test]
    fn report_u_equals_one() {
        // u = 1, f(u) = 2 in Q(sqrt 5): I = (2) inert, norms 4
        let k = golden();
        let div = x_plus_1(&k);
        let s = PlaceSet::from_rational_primes(&k, &[BigInt::from(5)]).unwrap();
        let rep = gm_height_report(&k, &div, &s, &k.one(), &HeightConfig::default()).unwrap();
        let four = BigRational::from(BigInt::from(4));
        assert_eq!(rep.norm_i.exact.as_ref().unwrap(), &four);
        assert_eq!(rep.norm_j.exact.as_ref().unwrap(), &four);
        assert!(rep.ratio.is_zero());
    }

    #[test]
    fn report_fibonacci_spot_n7() {
        let k = golden();
        let div = x_plus_1(&k);
        let s = PlaceSet::from_rational_primes(&k, &[BigInt::from(5)]).unwrap();
        let u = k.pow(&k.theta(), 14).unwrap();
        let rep = gm_height_report(&k, &div, &s, &u, &HeightConfig::default()).unwrap();
        assert_eq!(
            rep.norm_j.exact.as_ref().unwrap(),
            &BigRational::from(BigInt::from(169))
        );
        // ratio = log 169 / (2 * 7 * h(phi))
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let expect = 169f64.ln() / (2.0 * 7.0 * (phi.ln() / 2.0));
        assert!((rep.ratio.to_f64() - expect).abs() < 1e-9);
        // partition
        let total = rep.h_deg1.add(&rep.h_deg_gt1);
        assert_eq!(total.cmp(&rep.h_d), std::cmp::Ordering::Equal);
    }

    #[test]
    fn non_s_unit_rejected() {
        let k = golden();
        let div = x_plus_1(&k);
        let s = PlaceSet::from_rational_primes(&k, &[BigInt::from(5)]).unwrap();
        assert!(matches!(
            gm_height_report(&k, &div, &s, &k.from_integer(3), &HeightConfig::default()),
            Err(Error::NotAnSUnit)
        ));
    }

    #[test]
    fn unit_f_value_gives_trivial_ideals() {
        // u = phi: f(u) = phi + 1 = phi^2 is a unit, so I = J = (1)
        let k = golden();
        let div = x_plus_1(&k);
        let s = PlaceSet::from_rational_primes(&k, &[BigInt::from(5)]).unwrap();
        let rep = gm_height_report(&k, &div, &s, &k.theta(), &HeightConfig::default()).unwrap();
        assert!(rep.ideal_i.is_unit());
        assert!(rep.norm_i.exact.as_ref().unwrap().is_one());
    }
}
