//! Experiment driver for S-unit power families on the multiplicative
//! group: norm-ratio scans, exceptionality classification of the base,
//! coset membership tests, and the Fibonacci demonstration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::heights::{gm_height_report, DivisorSpecGm, HeightConfig};
use crate::idealfact::{
    deg_gt1_part, factor_principal, ideal_equal, ideal_norm, s_reduce, PlaceSet,
};
use crate::parse::element_to_string;
use crate::poly::ZPoly;
use crate::qfield::{make_field, Automorphism, FieldElement, NumberField};
use crate::real::Real;
use crate::report::ExperimentRow;
use crate::zfactor;

#[derive(Clone, Debug)]
pub struct GmExperiment {
    pub field: NumberField,
    pub divisor: DivisorSpecGm,
    pub s: PlaceSet,
    pub base: FieldElement,
    pub n_lo: i64,
    pub n_hi: i64,
    pub epsilon: f64,
    pub m_max: u32,
    pub height_cfg: HeightConfig,
}

/// Outcome of the cyclic-family exceptionality test: condition (a) is a
/// power falling into a proper subfield, condition (b) is a quadratic
/// subfield with relative norm a root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Corollary22Class {
    Clean,
    ViolatesA { m: u32 },
    ViolatesB { sigma: String },
}

impl std::fmt::Display for Corollary22Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Corollary22Class::Clean => write!(f, "clean"),
            Corollary22Class::ViolatesA { m } => write!(f, "violates_a(m={})", m),
            Corollary22Class::ViolatesB { sigma } => write!(f, "violates_b(sigma={})", sigma),
        }
    }
}

/// A translate u0 * (fixed subgroup of sigma), twisted meaning the
/// subgroup of units with sigma(u) = u^(-1).
#[derive(Clone, Debug)]
pub struct CosetSpec {
    pub u0: FieldElement,
    pub sigma: Automorphism,
    pub twisted: bool,
}

/// Scan u = base^n over the range, one report row per n; rows where the
/// divisor vanishes carry a skip marker, rows that exhaust the factoring
/// budget are marked `budget`.
pub fn run_gm_family(x: &GmExperiment) -> Result<Vec<ExperimentRow>> {
    if x.n_lo > x.n_hi {
        return Ok(vec![]);
    }
    if x.epsilon <= 0.0 {
        return Err(Error::invalid("epsilon must be positive"));
    }
    let k = &x.field;
    // base must be an S-unit before any row is computed
    let base_support = factor_principal(k, &x.base, &x.height_cfg.effort)?;
    if !base_support.factors.keys().all(|pr| x.s.contains(pr)) {
        return Err(Error::NotAnSUnit);
    }

    let prec = k.precision();
    let d_real = Real::from_u64(k.degree() as u64, prec);
    let eps = Real::from_f64(x.epsilon, prec);

    let ns: Vec<i64> = (x.n_lo..=x.n_hi).collect();
    let rows: Vec<Result<ExperimentRow>> = ns
        .par_iter()
        .map(|&n| {
            let u = k.pow(&x.base, n)?;
            let u_text = element_to_string(k, &u);
            let fu = x.divisor.eval(k, &u);
            if k.is_zero_el(&fu) {
                return Ok(ExperimentRow::skipped(n, u_text, "divisor-zero"));
            }
            let rep = match gm_height_report(k, &x.divisor, &x.s, &u, &x.height_cfg) {
                Ok(r) => r,
                Err(Error::BudgetExceeded(_)) => {
                    return Ok(ExperimentRow::skipped(n, u_text, "budget"));
                }
                Err(e) => return Err(e),
            };
            // N(J(f(a^n))) < H(a^n)^epsilon, compared as
            // log N(J) < eps * d * h(a^n)
            let rhs = eps.mul(&d_real).mul(&rep.h_abs);
            let flag = rep.norm_j.ln.cmp(&rhs) == std::cmp::Ordering::Less;
            Ok(ExperimentRow {
                n,
                u: u_text,
                h_u: Some(rep.h_abs.to_f64()),
                h_d: Some(rep.h_d.to_f64()),
                h_deg1: Some(rep.h_deg1.to_f64()),
                h_deg_gt1: Some(rep.h_deg_gt1.to_f64()),
                norm_i: Some(rep.norm_i.display()),
                norm_j: Some(rep.norm_j.display()),
                c_u: rep.c_u_log.as_ref().map(|l| l.exp().to_f64()),
                flag_eps: Some(flag),
                skip: String::new(),
                ..Default::default()
            })
        })
        .collect();
    rows.into_iter().collect()
}

/// Check conditions (a)/(b) for the base of a cyclic family.
pub fn check_corollary22_conditions(
    k: &NumberField,
    a: &FieldElement,
    m_max: u32,
) -> Result<Corollary22Class> {
    if k.is_zero_el(a) {
        return Err(Error::ZeroElement);
    }
    if k.is_root_of_unity(a)?.is_some() {
        return Err(Error::invalid(
            "base is a root of unity; the family is degenerate",
        ));
    }
    let d = k.degree();
    let mut cur = a.clone();
    for m in 1..=m_max {
        if k.element_minimal_poly(&cur).degree() < d {
            return Ok(Corollary22Class::ViolatesA { m });
        }
        cur = k.mul(&cur, a);
    }
    for sigma in k.automorphisms() {
        if sigma.order != 2 {
            continue;
        }
        let rel_norm = k.mul(a, &k.apply_automorphism(sigma, a));
        if k.is_root_of_unity(&rel_norm)?.is_some() {
            return Ok(Corollary22Class::ViolatesB {
                sigma: sigma.label.clone(),
            });
        }
    }
    Ok(Corollary22Class::Clean)
}

/// Membership of u in the coset u0 * H where H is the sigma-fixed unit
/// subgroup (untwisted) or the sigma-inverted one (twisted).
pub fn coset_member(k: &NumberField, spec: &CosetSpec, u: &FieldElement) -> Result<bool> {
    let q = k.div(u, &spec.u0)?;
    let image = k.apply_automorphism(&spec.sigma, &q);
    if spec.twisted {
        Ok(image == k.inv(&q)?)
    } else {
        Ok(image == q)
    }
}

#[derive(Clone, Debug)]
pub struct FibRow {
    pub n: u32,
    pub fib: BigInt,
    pub norm_i: BigRational,
    pub norm_j: BigRational,
    /// F_n is a prime that stays inert in Q(sqrt 5), i.e. is +-2 mod 5.
    pub inert_prime: bool,
}

#[derive(Clone, Debug)]
pub struct FibReport {
    pub rows: Vec<FibRow>,
}

/// Verify, for odd n up to `n_max`, the exact ideal identity
/// (phi^(2n) + 1) O_{k,S} = F_n O_{k,S} with S = {infinity, p5}, and the
/// scalar identity (phi^(2n) + 1)/(phi^n sqrt 5) = F_n. Any mismatch is a
/// hard error.
pub fn fib_demo(n_max: u32, precision: usize) -> Result<FibReport> {
    if n_max % 2 == 0 || n_max < 1 {
        return Err(Error::invalid("n_max must be odd and >= 1"));
    }
    let g = ZPoly::new(vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]);
    let k = make_field(&g, precision)?;
    let s = PlaceSet::from_rational_primes(&k, &[BigInt::from(5)])?;
    let phi = k.theta();
    let sqrt5 = k.sub(&k.add(&phi, &phi), &k.one());
    let effort = crate::zfactor::FactorEffort::default();

    let mut rows = Vec::new();
    let (mut f_prev, mut f_cur) = (BigInt::from(0), BigInt::from(1)); // F_0, F_1
    for n in 1..=n_max {
        if n >= 2 {
            let next = &f_prev + &f_cur;
            f_prev = std::mem::replace(&mut f_cur, next);
        }
        if n % 2 == 0 {
            continue;
        }
        let fib = f_cur.clone();
        let u = k.pow(&phi, 2 * n as i64)?;
        let fu = k.add(&u, &k.one());

        // scalar identity, in both quotient and product form
        let fib_el = k.from_rational(BigRational::from(fib.clone()));
        let denom = k.mul(&k.pow(&phi, n as i64)?, &sqrt5);
        if k.div(&fu, &denom)? != fib_el || k.mul(&fib_el, &denom) != fu {
            return Err(Error::invalid(format!(
                "scalar Fibonacci identity failed at n = {}",
                n
            )));
        }

        let lhs = s_reduce(&factor_principal(&k, &fu, &effort)?, &s)?;
        let rhs = s_reduce(&factor_principal(&k, &fib_el, &effort)?, &s)?;
        if !ideal_equal(&lhs, &rhs) {
            return Err(Error::invalid(format!(
                "ideal Fibonacci identity failed at n = {}",
                n
            )));
        }
        let j = deg_gt1_part(&lhs);
        let inert_prime = zfactor::is_prime(fib.magnitude()) && {
            let r = (&fib % BigInt::from(5)).to_string();
            r == "2" || r == "3"
        };
        rows.push(FibRow {
            n,
            fib,
            norm_i: ideal_norm(&lhs),
            norm_j: ideal_norm(&j),
            inert_prime,
        });
    }
    Ok(FibReport { rows })
}

impl FibReport {
    pub fn table(&self) -> String {
        let mut out = String::from("n,F_n,norm_I,norm_J,inert_prime,identity\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},pass\n",
                r.n,
                r.fib,
                r.norm_i,
                r.norm_j,
                r.inert_prime
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::make_field;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn golden() -> NumberField {
        make_field(&zp(&[-1, -1, 1]), 192).unwrap()
    }

    fn gaussian() -> NumberField {
        make_field(&zp(&[1, 0, 1]), 192).unwrap()
    }

    #[test]
    fn fib_demo_small() {
        let rep = fib_demo(7, 192).unwrap();
        assert_eq!(rep.rows.len(), 4); // n = 1, 3, 5, 7
        let r7 = rep.rows.last().unwrap();
        assert_eq!(r7.fib, BigInt::from(13));
        assert_eq!(r7.norm_i, BigRational::from(BigInt::from(169)));
        assert_eq!(r7.norm_j, BigRational::from(BigInt::from(169)));
        assert!(r7.inert_prime);
        // n = 1: F_1 = 1, unit ideal
        assert!(rep.rows[0].norm_i.is_one());
        // n = 5: F_5 = 5 is absorbed by S
        let r5 = &rep.rows[2];
        assert!(r5.norm_i.is_one());
        assert!(!r5.inert_prime);
    }

    #[test]
    fn fib_demo_rejects_even() {
        assert!(fib_demo(6, 128).is_err());
    }

    #[test]
    fn classification_examples() {
        // a = phi^2: N(phi^2) = 1, so condition (b) fails
        let k = golden();
        let phi2 = k.pow(&k.theta(), 2).unwrap();
        assert_eq!(
            check_corollary22_conditions(&k, &phi2, 12).unwrap(),
            Corollary22Class::ViolatesB {
                sigma: "conj".into()
            }
        );
        // a = 1 + 2i is clean
        let kq = gaussian();
        let a = kq.add(&kq.one(), &kq.mul(&kq.theta(), &kq.from_integer(2)));
        assert_eq!(
            check_corollary22_conditions(&kq, &a, 12).unwrap(),
            Corollary22Class::Clean
        );
        // a rational lies in a proper subfield immediately
        assert_eq!(
            check_corollary22_conditions(&kq, &kq.from_integer(3), 12).unwrap(),
            Corollary22Class::ViolatesA { m: 1 }
        );
        // a root of unity is rejected up front
        assert!(check_corollary22_conditions(&kq, &kq.theta(), 12).is_err());
    }

    #[test]
    fn coset_membership_phi_squared() {
        let k = golden();
        let sigma = k.automorphisms()[0].clone();
        let phi = k.theta();
        // sigma(phi) = 1 - phi = -1/phi != 1/phi: not twisted-fixed
        let spec = CosetSpec {
            u0: k.one(),
            sigma: sigma.clone(),
            twisted: true,
        };
        assert!(!coset_member(&k, &spec, &phi).unwrap());
        // sigma(phi^2) = phi^(-2): twisted-fixed
        let phi2 = k.pow(&phi, 2).unwrap();
        assert!(coset_member(&k, &spec, &phi2).unwrap());
        // u = u0 is always a member
        let spec2 = CosetSpec {
            u0: phi.clone(),
            sigma: sigma.clone(),
            twisted: false,
        };
        assert!(coset_member(&k, &spec2, &phi).unwrap());
        // rational u/u0 is fixed by any automorphism
        let spec3 = CosetSpec {
            u0: k.one(),
            sigma,
            twisted: false,
        };
        assert!(coset_member(&k, &spec3, &k.from_integer(7)).unwrap());
    }

    #[test]
    fn untwisted_membership_invariant_under_fixed_multipliers() {
        // multiplying u by a sigma-fixed element preserves membership
        let k = golden();
        let sigma = k.automorphisms()[0].clone();
        let spec = CosetSpec {
            u0: k.from_integer(2),
            sigma,
            twisted: false,
        };
        let fixed = k.from_integer(5); // rationals are fixed
        let u = k.from_integer(6);
        assert!(coset_member(&k, &spec, &u).unwrap());
        assert!(coset_member(&k, &spec, &k.mul(&u, &fixed)).unwrap());
        let non_member = k.theta();
        assert!(!coset_member(&k, &spec, &non_member).unwrap());
    }

    #[test]
    fn gm_family_small_scan() {
        let k = gaussian();
        let a = k.add(&k.one(), &k.mul(&k.theta(), &k.from_integer(2)));
        let x = GmExperiment {
            divisor: DivisorSpecGm::new(&k, vec![k.one(), k.one()]).unwrap(),
            s: PlaceSet::from_rational_primes(&k, &[BigInt::from(5)]).unwrap(),
            base: a,
            n_lo: 0,
            n_hi: 6,
            epsilon: 0.5,
            m_max: 12,
            height_cfg: HeightConfig::default(),
            field: k,
        };
        let rows = run_gm_family(&x).unwrap();
        assert_eq!(rows.len(), 7);
        // n = 0: u = 1, f(u) = 2, a normal row
        assert_eq!(rows[0].norm_i.as_deref(), Some("4"));
        assert!(rows.iter().all(|r| r.skip.is_empty()));
        // norm_J divides norm_I for every row
        for r in &rows {
            let ni: BigInt = r.norm_i.as_ref().unwrap().parse().unwrap();
            let nj: BigInt = r.norm_j.as_ref().unwrap().parse().unwrap();
            assert!((&ni % &nj) == BigInt::from(0));
        }
    }

    #[test]
    fn gm_family_requires_s_unit_base() {
        let k = gaussian();
        let x = GmExperiment {
            divisor: DivisorSpecGm::new(&k, vec![k.one(), k.one()]).unwrap(),
            s: PlaceSet::from_rational_primes(&k, &[BigInt::from(5)]).unwrap(),
            base: k.from_integer(3),
            n_lo: 1,
            n_hi: 2,
            epsilon: 0.5,
            m_max: 12,
            height_cfg: HeightConfig::default(),
            field: k,
        };
        assert!(matches!(run_gm_family(&x), Err(Error::NotAnSUnit)));
    }
}
