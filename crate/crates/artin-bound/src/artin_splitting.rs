//! Splitting of rational primes in the supported families, Frobenius/Artin
//! classes, and the inertia-averaged weights θ(C;p^m) that extend the class
//! indicator to ramified primes.
//!
//! θ weights are exact rationals throughout; any float conversion happens in
//! the census, once, at the end of a sum.

use crate::arith::{crt, euler_phi, mult_order, pow_mod, valuation};
use crate::field_models::{ClassElement, FieldFamily, GaloisClassSpec};
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplittingError {
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// How a rational prime p behaves in L: ramification, residue degree f,
/// number of primes above g, inertia order e and a Frobenius representative
/// (defined mod inertia when p ramifies).
#[derive(Debug, Clone, PartialEq)]
pub struct SplittingDatum {
    pub p: u64,
    pub ramified: bool,
    pub residue_degree: u64,
    pub num_primes: u64,
    pub inertia_order: u64,
    pub frobenius: ClassElement,
}

/// Exact rational in [0, 1] with denominator dividing |I|.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaWeight(pub Ratio<u64>);

impl ThetaWeight {
    pub fn value(&self) -> Ratio<u64> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

fn require_prime(p: u64) -> Result<(), SplittingError> {
    let prime = p >= 2 && (2..).take_while(|q| q * q <= p).all(|q| p % q != 0);
    if prime {
        Ok(())
    } else {
        Err(SplittingError::NotPrime(p))
    }
}

fn is_fundamental_discriminant(disc: i64) -> bool {
    match disc.rem_euclid(4) {
        1 => disc != 1 && crate::arith::is_squarefree(disc.unsigned_abs()),
        0 => {
            let q = disc / 4;
            let r = q.rem_euclid(4);
            (r == 2 || r == 3) && crate::arith::is_squarefree(q.unsigned_abs())
        }
        _ => false,
    }
}

/// Kronecker symbol (D|p) for a fundamental discriminant D and a prime p:
/// 0 iff p | D, +1 iff p splits in the field of discriminant D, -1 iff inert.
pub fn kronecker_symbol(disc: i64, p: u64) -> Result<i32, SplittingError> {
    if !is_fundamental_discriminant(disc) {
        return Err(SplittingError::NotFundamental(disc));
    }
    require_prime(p)?;
    if p == 2 {
        return Ok(match disc.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        });
    }
    let d = disc.rem_euclid(p as i64) as u64;
    if d == 0 {
        return Ok(0);
    }
    // Euler's criterion: d^((p-1)/2) is 1 for residues, p-1 otherwise
    match pow_mod(d, (p - 1) / 2, p) {
        1 => Ok(1),
        r if r == p - 1 => Ok(-1),
        r => unreachable!("euler criterion returned {r} mod {p}"),
    }
}

/// Classifies a prime in the family: e, f, g with e·f·g = n_L, plus the
/// Frobenius class (a coset representative mod inertia when p ramifies).
pub fn splitting_datum(family: FieldFamily, p: u64) -> Result<SplittingDatum, SplittingError> {
    require_prime(p)?;
    match family {
        FieldFamily::Rational => Ok(SplittingDatum {
            p,
            ramified: false,
            residue_degree: 1,
            num_primes: 1,
            inertia_order: 1,
            frobenius: ClassElement::Trivial,
        }),
        FieldFamily::Quadratic(_) => {
            let disc = family.fundamental_discriminant().unwrap();
            let (e, f, g, sign) = match kronecker_symbol(disc, p)? {
                1 => (1, 1, 2, 1),
                -1 => (1, 2, 1, -1),
                // ramified: Frobenius is only defined modulo the whole group
                _ => (2, 1, 1, 1),
            };
            Ok(SplittingDatum {
                p,
                ramified: e > 1,
                residue_degree: f,
                num_primes: g,
                inertia_order: e,
                frobenius: ClassElement::Sign(sign),
            })
        }
        FieldFamily::Cyclotomic(m) => {
            let v = valuation(m, p);
            if v == 0 {
                let f = mult_order(p % m, m);
                Ok(SplittingDatum {
                    p,
                    ramified: false,
                    residue_degree: f,
                    num_primes: euler_phi(m) / f,
                    inertia_order: 1,
                    frobenius: ClassElement::Unit(p % m),
                })
            } else {
                // inertia is the kernel of (Z/m)* -> (Z/m')*, m' = m / p^v
                let m_tame = m / p.pow(v);
                let e = euler_phi(p.pow(v));
                let (f, frob) = if m_tame == 1 {
                    (1, 1)
                } else {
                    (
                        mult_order(p % m_tame, m_tame),
                        crt(p % m_tame, m_tame, 1 % p.pow(v), p.pow(v)),
                    )
                };
                Ok(SplittingDatum {
                    p,
                    ramified: true,
                    residue_degree: f,
                    num_primes: euler_phi(m_tame) / f,
                    inertia_order: e,
                    frobenius: ClassElement::Unit(frob.max(1)),
                })
            }
        }
    }
}

/// θ(C;p^m) = (1/|I|) Σ_{a∈I} ε_C(τ^m a): the inertia-group average of the
/// class indicator at the m-th Frobenius power. Exact rational; equals the
/// 0/1 indicator ε_C(Frob^m ∈ C) when p is unramified.
pub fn theta_weight(spec: &GaloisClassSpec, p: u64, m: u64) -> Result<ThetaWeight, SplittingError> {
    assert!(m >= 1);
    let datum = splitting_datum(spec.family, p)?;
    Ok(theta_weight_from_datum(spec, &datum, m))
}

/// Same as [`theta_weight`] but reusing an already-computed splitting datum.
pub fn theta_weight_from_datum(
    spec: &GaloisClassSpec,
    datum: &SplittingDatum,
    m: u64,
) -> ThetaWeight {
    let one = Ratio::from_integer(1u64);
    let zero = Ratio::from_integer(0u64);
    match (spec.family, spec.class_elem, datum.frobenius) {
        (FieldFamily::Rational, ClassElement::Trivial, _) => ThetaWeight(one),
        (FieldFamily::Quadratic(_), ClassElement::Sign(c), ClassElement::Sign(s)) => {
            if datum.ramified {
                // the coset τ^m·I is the whole 2-element group
                ThetaWeight(Ratio::new(1, 2))
            } else {
                let frob_pow = if m % 2 == 0 { 1 } else { s };
                ThetaWeight(if frob_pow == c { one } else { zero })
            }
        }
        (FieldFamily::Cyclotomic(modulus), ClassElement::Unit(a), ClassElement::Unit(tau)) => {
            if datum.ramified {
                // tau^m·I = {x : x ≡ tau^m mod m'}; the singleton class {a}
                // meets it iff a ≡ tau^m mod m', contributing 1/|I|
                let v = valuation(modulus, datum.p);
                let m_tame = modulus / datum.p.pow(v);
                let hit = if m_tame == 1 {
                    true
                } else {
                    a % m_tame == pow_mod(tau, m, m_tame)
                };
                ThetaWeight(if hit {
                    Ratio::new(1, datum.inertia_order)
                } else {
                    zero
                })
            } else {
                ThetaWeight(if pow_mod(tau, m, modulus) == a { one } else { zero })
            }
        }
        _ => unreachable!("class element and family checked at construction"),
    }
}
