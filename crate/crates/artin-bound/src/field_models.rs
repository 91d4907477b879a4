//! Concrete abelian field families over ℚ and the invariants every bound
//! formula consumes: degree, signature, discriminant (factored and as a log),
//! and the per-class data (g_c, δ_C, S_g) derived from a chosen Galois class.
//!
//! Only three families are modelled — ℚ itself, quadratic ℚ(√d) and
//! cyclotomic ℚ(ζ_m) — because over ℚ the Artin symbol of an abelian
//! extension is elementary (a Kronecker symbol or a residue class), which
//! lets the census stay exact without any general number-field machinery.

use crate::arith::{euler_phi, factorize, is_squarefree, mult_order, pow_mod, valuation};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("quadratic parameter d = {0} must be squarefree and not 0 or 1")]
    BadQuadratic(i64),
    #[error("cyclotomic parameter m = {0} must be >= 3 and not 2 mod 4")]
    BadCyclotomic(u64),
    #[error("class element {0} is not valid for this family")]
    BadClassElement(String),
}

/// Degree, signature and discriminant data of a number field L.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldInvariants {
    /// Field degree n_L over ℚ.
    pub degree: u64,
    /// Number of real places.
    pub r1: u64,
    /// Number of complex places.
    pub r2: u64,
    /// Natural log of |D_L|, recomputed from the factorization below.
    pub log_abs_disc: f64,
    /// |D_L| factored as (prime, exponent), ascending.
    pub disc_prime_factors: Vec<(u64, u32)>,
}

impl FieldInvariants {
    fn from_factors(degree: u64, r1: u64, r2: u64, factors: Vec<(u64, u32)>) -> Self {
        debug_assert_eq!(degree, r1 + 2 * r2);
        let log_abs_disc = factors
            .iter()
            .map(|&(p, e)| e as f64 * (p as f64).ln())
            .sum();
        FieldInvariants {
            degree,
            r1,
            r2,
            log_abs_disc,
            disc_prime_factors: factors,
        }
    }

    pub fn rational() -> Self {
        FieldInvariants::from_factors(1, 1, 0, Vec::new())
    }

    /// |D_L| as an integer, if it fits in u64.
    pub fn abs_disc(&self) -> Option<u64> {
        let mut d = 1u64;
        for &(p, e) in &self.disc_prime_factors {
            d = d.checked_mul(p.checked_pow(e)?)?;
        }
        Some(d)
    }
}

/// |D_L|^(1/n_L), the scale-invariant size of the discriminant.
pub fn root_discriminant(inv: &FieldInvariants) -> f64 {
    (inv.log_abs_disc / inv.degree as f64).exp()
}

/// One of the three supported abelian families over ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldFamily {
    Rational,
    /// ℚ(√d) with d squarefree, d ∉ {0, 1}.
    Quadratic(i64),
    /// ℚ(ζ_m) with m ≥ 3 and m ≢ 2 mod 4 (one canonical label per field).
    Cyclotomic(u64),
}

impl FieldFamily {
    pub fn quadratic(d: i64) -> Result<Self, FieldError> {
        if d == 0 || d == 1 || !is_squarefree(d.unsigned_abs()) {
            return Err(FieldError::BadQuadratic(d));
        }
        Ok(FieldFamily::Quadratic(d))
    }

    pub fn cyclotomic(m: u64) -> Result<Self, FieldError> {
        if m < 3 || m % 4 == 2 {
            return Err(FieldError::BadCyclotomic(m));
        }
        Ok(FieldFamily::Cyclotomic(m))
    }

    pub fn invariants(&self) -> FieldInvariants {
        match *self {
            FieldFamily::Rational => FieldInvariants::rational(),
            FieldFamily::Quadratic(d) => quadratic_invariants(d).expect("validated on construction"),
            FieldFamily::Cyclotomic(m) => {
                cyclotomic_invariants(m).expect("validated on construction")
            }
        }
    }

    /// The fundamental discriminant (with sign) for quadratic fields.
    pub fn fundamental_discriminant(&self) -> Option<i64> {
        match *self {
            FieldFamily::Quadratic(d) => {
                Some(if d.rem_euclid(4) == 1 { d } else { 4 * d })
            }
            _ => None,
        }
    }

    /// All Galois classes of the family, in a fixed deterministic order.
    pub fn class_elements(&self) -> Vec<ClassElement> {
        match *self {
            FieldFamily::Rational => vec![ClassElement::Trivial],
            FieldFamily::Quadratic(_) => vec![ClassElement::Sign(1), ClassElement::Sign(-1)],
            FieldFamily::Cyclotomic(m) => (1..m)
                .filter(|&a| crate::arith::gcd(a, m) == 1)
                .map(ClassElement::Unit)
                .collect(),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            FieldFamily::Rational => "Q".to_string(),
            FieldFamily::Quadratic(d) => format!("Q(sqrt({d}))"),
            FieldFamily::Cyclotomic(m) => format!("Q(zeta_{m})"),
        }
    }
}

/// An element of the (abelian) Galois group, labelling a singleton class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassElement {
    /// The only element of Gal(ℚ/ℚ).
    Trivial,
    /// Quadratic: +1 is the identity, -1 the nontrivial element.
    Sign(i8),
    /// Cyclotomic: a unit a mod m.
    Unit(u64),
}

impl ClassElement {
    pub fn label(&self) -> String {
        match *self {
            ClassElement::Trivial => "trivial".to_string(),
            ClassElement::Sign(1) => "trivial".to_string(),
            ClassElement::Sign(_) => "nontrivial".to_string(),
            ClassElement::Unit(a) => format!("a={a}"),
        }
    }
}

/// A (family, class) pair with everything the bound formulas need:
/// g_c = |G|/|C|, the trivial-class indicator δ_C, the order of the chosen
/// element and the signature-derived integer S_g.
#[derive(Debug, Clone, PartialEq)]
pub struct GaloisClassSpec {
    pub family: FieldFamily,
    pub class_elem: ClassElement,
    /// |G|/|C| = |G| (all classes are singletons here).
    pub g_c: u64,
    /// 1 iff the class is the identity.
    pub delta_c: bool,
    pub order_g: u64,
    /// r1+r2 for the identity, r2(L) - 2 r2(E) for order 2, 0 otherwise.
    pub s_g: i64,
    /// r2 of the fixed field E = L^<g>.
    pub fixed_field_r2: u64,
}

impl GaloisClassSpec {
    pub fn delta(&self) -> u64 {
        self.delta_c as u64
    }

    pub fn invariants(&self) -> FieldInvariants {
        self.family.invariants()
    }
}

/// Invariants of ℚ(√d): degree 2, signature by the sign of d, discriminant
/// D = d if d ≡ 1 mod 4 and 4d otherwise.
pub fn quadratic_invariants(d: i64) -> Result<FieldInvariants, FieldError> {
    if d == 0 || d == 1 || !is_squarefree(d.unsigned_abs()) {
        return Err(FieldError::BadQuadratic(d));
    }
    let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
    let factors = factorize(disc.unsigned_abs());
    let (r1, r2) = if d > 0 { (2, 0) } else { (0, 1) };
    Ok(FieldInvariants::from_factors(2, r1, r2, factors))
}

/// Invariants of ℚ(ζ_m): degree φ(m), totally complex, and
/// |D| = m^φ(m) / ∏_{p|m} p^{φ(m)/(p-1)} (conductor–discriminant formula),
/// stored factored so the log value is exactly the factorization's.
pub fn cyclotomic_invariants(m: u64) -> Result<FieldInvariants, FieldError> {
    if m < 3 || m % 4 == 2 {
        return Err(FieldError::BadCyclotomic(m));
    }
    let phi = euler_phi(m);
    let mut factors = Vec::new();
    for (p, _) in factorize(m) {
        let v = valuation(m, p);
        debug_assert_eq!(phi % (p - 1), 0);
        let e = phi * v as u64 - phi / (p - 1);
        if e > 0 {
            factors.push((p, u32::try_from(e).expect("desk-scale exponent")));
        }
    }
    Ok(FieldInvariants::from_factors(phi, 0, phi / 2, factors))
}

/// Builds the class context for a family and class element, filling g_c,
/// δ_C, the element order, S_g and r2 of the fixed field E = L^<g>.
///
/// For cyclotomic elements, E is totally real iff -1 mod m lies in <a>;
/// that criterion is the only subfield information the formulas need.
pub fn class_context(
    family: FieldFamily,
    class_elem: ClassElement,
) -> Result<GaloisClassSpec, FieldError> {
    let inv = family.invariants();
    let bad = || FieldError::BadClassElement(format!("{class_elem:?} in {}", family.label()));
    let (g_c, delta_c, order_g, fixed_field_r2) = match (family, class_elem) {
        (FieldFamily::Rational, ClassElement::Trivial) => (1, true, 1, 0),
        (FieldFamily::Quadratic(_), ClassElement::Sign(s)) => {
            if s != 1 && s != -1 {
                return Err(bad());
            }
            let identity = s == 1;
            let order = if identity { 1 } else { 2 };
            // E = L for the identity, E = Q for the nontrivial element
            let e_r2 = if identity { inv.r2 } else { 0 };
            (2, identity, order, e_r2)
        }
        (FieldFamily::Cyclotomic(m), ClassElement::Unit(a)) => {
            let a = a % m;
            if crate::arith::gcd(a, m) != 1 {
                return Err(bad());
            }
            let order = mult_order(a, m);
            // E real iff complex conjugation (-1 mod m) lies in <a>
            let minus_one = m - 1;
            let real = (0..order).any(|j| pow_mod(a, j, m) == minus_one);
            let e_degree = inv.degree / order;
            let e_r2 = if real { 0 } else { e_degree / 2 };
            (inv.degree, a == 1, order, e_r2)
        }
        _ => return Err(bad()),
    };
    let s_g = match order_g {
        1 => (inv.r1 + inv.r2) as i64,
        2 => inv.r2 as i64 - 2 * fixed_field_r2 as i64,
        _ => 0,
    };
    Ok(GaloisClassSpec {
        family,
        class_elem,
        g_c,
        delta_c,
        order_g,
        s_g,
        fixed_field_r2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gcd, moebius};
    use proptest::prelude::*;

    #[test]
    fn rational_invariants() {
        let q = FieldInvariants::rational();
        assert_eq!((q.degree, q.r1, q.r2), (1, 1, 0));
        assert_eq!(q.log_abs_disc, 0.0);
        assert_eq!(root_discriminant(&q), 1.0);
    }

    // oracle: disc(x^2 - x + 1) = -3, disc(x^2 + 1) = -4, disc(x^2 - x - 1) = 5
    #[test]
    fn quadratic_examples() {
        let m3 = quadratic_invariants(-3).unwrap();
        assert_eq!(m3.abs_disc(), Some(3));
        assert_eq!((m3.r1, m3.r2), (0, 1));
        let m1 = quadratic_invariants(-1).unwrap();
        assert_eq!(m1.abs_disc(), Some(4));
        assert_eq!((m1.r1, m1.r2), (0, 1));
        let p5 = quadratic_invariants(5).unwrap();
        assert_eq!(p5.abs_disc(), Some(5));
        assert_eq!((p5.r1, p5.r2), (2, 0));
        assert!((root_discriminant(&m3) - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn quadratic_rejects_degenerate() {
        assert!(quadratic_invariants(0).is_err());
        assert!(quadratic_invariants(1).is_err());
        assert!(quadratic_invariants(12).is_err());
        assert!(quadratic_invariants(-4).is_err());
    }

    // oracle: disc(x^2+x+1) = -3, disc(x^2+1) = -4, and for m = 5 the product
    // of the conductors of the 4 characters mod 5 is 1*5*5*5 = 125
    #[test]
    fn cyclotomic_examples() {
        let z3 = cyclotomic_invariants(3).unwrap();
        assert_eq!(z3.abs_disc(), Some(3));
        assert_eq!(z3.degree, 2);
        let z4 = cyclotomic_invariants(4).unwrap();
        assert_eq!(z4.abs_disc(), Some(4));
        assert_eq!(z4.degree, 2);
        let z5 = cyclotomic_invariants(5).unwrap();
        assert_eq!(z5.abs_disc(), Some(125));
        assert_eq!(z5.degree, 4);
        assert!((root_discriminant(&z5) - 125f64.powf(0.25)).abs() < 1e-12);
    }

    #[test]
    fn cyclotomic_rejects_bad_m() {
        assert!(cyclotomic_invariants(2).is_err());
        assert!(cyclotomic_invariants(6).is_err());
        assert!(cyclotomic_invariants(10).is_err());
        assert!(cyclotomic_invariants(1).is_err());
    }

    /// Number of characters mod m with conductor exactly f, by Möbius
    /// inversion of "conductor divides f ⇒ φ(f) characters" over divisors.
    fn conductor_count(f: u64) -> i64 {
        let mut n = 0i64;
        let mut d = 1;
        while d <= f {
            if f % d == 0 {
                n += moebius(f / d) * euler_phi(d) as i64;
            }
            d += 1;
        }
        n
    }

    // conductor-discriminant: log|D| = sum over characters of log(conductor)
    #[test]
    fn cyclotomic_matches_conductor_oracle() {
        for m in 3..=60u64 {
            if m % 4 == 2 {
                continue;
            }
            let inv = cyclotomic_invariants(m).unwrap();
            let mut log_d = 0.0;
            let mut total = 0i64;
            let mut f = 1;
            while f <= m {
                if m % f == 0 {
                    let c = conductor_count(f);
                    assert!(c >= 0);
                    total += c;
                    log_d += c as f64 * (f as f64).ln();
                }
                f += 1;
            }
            assert_eq!(total as u64, euler_phi(m), "character count for m={m}");
            assert!(
                (log_d - inv.log_abs_disc).abs() < 1e-9,
                "m={m}: {log_d} vs {}",
                inv.log_abs_disc
            );
        }
    }

    #[test]
    fn class_context_examples() {
        let s = class_context(FieldFamily::quadratic(5).unwrap(), ClassElement::Sign(1)).unwrap();
        assert_eq!((s.g_c, s.delta_c, s.s_g), (2, true, 2));
        let s = class_context(FieldFamily::quadratic(-1).unwrap(), ClassElement::Sign(-1)).unwrap();
        assert_eq!((s.order_g, s.s_g, s.fixed_field_r2), (2, 1, 0));
        let s = class_context(FieldFamily::cyclotomic(5).unwrap(), ClassElement::Unit(2)).unwrap();
        assert_eq!((s.order_g, s.s_g), (4, 0));
    }

    #[test]
    fn class_context_order_two_cyclotomic() {
        // m = 8: units 1,3,5,7; all nontrivial elements have order 2.
        // a = 7 = -1: E = maximal real subfield, totally real.
        let s = class_context(FieldFamily::cyclotomic(8).unwrap(), ClassElement::Unit(7)).unwrap();
        assert_eq!((s.fixed_field_r2, s.s_g), (0, 2));
        // a = 3: -1 not in <3> = {1,3}, E totally complex of degree 2.
        let s = class_context(FieldFamily::cyclotomic(8).unwrap(), ClassElement::Unit(3)).unwrap();
        assert_eq!((s.fixed_field_r2, s.s_g), (1, 0));
    }

    #[test]
    fn class_context_rejects_invalid() {
        assert!(class_context(FieldFamily::cyclotomic(8).unwrap(), ClassElement::Unit(4)).is_err());
        assert!(class_context(FieldFamily::quadratic(5).unwrap(), ClassElement::Sign(2)).is_err());
        assert!(class_context(FieldFamily::Rational, ClassElement::Sign(1)).is_err());
    }

    #[test]
    fn identity_class_always_delta_one() {
        let mut specs = vec![
            class_context(FieldFamily::Rational, ClassElement::Trivial).unwrap(),
            class_context(FieldFamily::quadratic(7).unwrap(), ClassElement::Sign(1)).unwrap(),
        ];
        for m in [3u64, 4, 5, 8, 12, 40] {
            specs.push(
                class_context(FieldFamily::cyclotomic(m).unwrap(), ClassElement::Unit(1)).unwrap(),
            );
        }
        for s in specs {
            let inv = s.invariants();
            assert!(s.delta_c);
            assert_eq!(s.s_g, (inv.r1 + inv.r2) as i64);
        }
    }

    proptest! {
        // |D| of a quadratic field is always 0 or 1 mod 4
        #[test]
        fn quadratic_disc_mod_four(d in -100i64..=100) {
            if let Ok(inv) = quadratic_invariants(d) {
                let disc = inv.abs_disc().unwrap() as i64
                    * if d < 0 { -1 } else { 1 };
                let r = disc.rem_euclid(4);
                prop_assert!(r == 0 || r == 1, "D = {disc}");
            }
        }

        #[test]
        fn invariants_consistent(m in 3u64..=80) {
            if m % 4 != 2 {
                let inv = cyclotomic_invariants(m).unwrap();
                prop_assert_eq!(inv.degree, inv.r1 + 2 * inv.r2);
                let from_factors: f64 = inv.disc_prime_factors.iter()
                    .map(|&(p, e)| e as f64 * (p as f64).ln()).sum();
                prop_assert_eq!(from_factors, inv.log_abs_disc);
                prop_assert!(root_discriminant(&inv) > 1.0);
            }
        }

        // closed formula phi(m)(log m - sum log p/(p-1)) agrees with the
        // factored discriminant
        #[test]
        fn cyclotomic_closed_formula(m in 3u64..=200) {
            if m % 4 != 2 {
                let inv = cyclotomic_invariants(m).unwrap();
                let phi = euler_phi(m) as f64;
                let correction: f64 = factorize(m).iter()
                    .map(|&(p, _)| (p as f64).ln() / (p as f64 - 1.0)).sum();
                let closed = phi * ((m as f64).ln() - correction);
                prop_assert!((closed - inv.log_abs_disc).abs() < 1e-9);
            }
        }

        #[test]
        fn cyclotomic_class_sg_branches(m in 3u64..=60, a in 1u64..=59) {
            if m % 4 != 2 && a < m && gcd(a, m) == 1 {
                let spec = class_context(
                    FieldFamily::cyclotomic(m).unwrap(), ClassElement::Unit(a)).unwrap();
                let inv = spec.invariants();
                match spec.order_g {
                    1 => prop_assert_eq!(spec.s_g, (inv.r1 + inv.r2) as i64),
                    2 => prop_assert_eq!(
                        spec.s_g, inv.r2 as i64 - 2 * spec.fixed_field_r2 as i64),
                    _ => prop_assert_eq!(spec.s_g, 0),
                }
            }
        }
    }
}
