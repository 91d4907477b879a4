//! Elementary integer arithmetic shared by the field and splitting modules.
//!
//! Everything here is desk-scale (trial division up to ~10⁷); no clever
//! factoring is needed because inputs are small discriminants and moduli.

/// Prime factorization by trial division, ascending, as (prime, exponent).
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// True iff no square > 1 divides n.
pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = 1u64;
    for (p, e) in factorize(n) {
        phi *= p.pow(e - 1) * (p - 1);
    }
    phi
}

/// a^e mod m, with u128 intermediates.
pub fn pow_mod(a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = (a % m) as u128;
    let m = m as u128;
    let mut acc = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// Multiplicative order of a modulo m; requires gcd(a, m) = 1.
pub fn mult_order(a: u64, m: u64) -> u64 {
    assert!(m >= 1 && gcd(a % m, m) == 1, "order of non-unit {a} mod {m}");
    if m == 1 {
        return 1;
    }
    // the order divides phi(m); scan divisors in ascending order
    let phi = euler_phi(m);
    let mut divs: Vec<u64> = Vec::new();
    let mut d = 1;
    while d * d <= phi {
        if phi % d == 0 {
            divs.push(d);
            divs.push(phi / d);
        }
        d += 1;
    }
    divs.sort_unstable();
    divs.dedup();
    for d in divs {
        if pow_mod(a, d, m) == 1 {
            return d;
        }
    }
    unreachable!("order must divide phi(m)")
}

/// p-adic valuation of n.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Möbius function of n.
pub fn moebius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Solve x ≡ a (mod m), x ≡ b (mod n) for coprime m, n; result mod m·n.
pub fn crt(a: u64, m: u64, b: u64, n: u64) -> u64 {
    assert_eq!(gcd(m, n), 1);
    let mn = m * n;
    for k in 0..n {
        let x = a + k * m;
        if x % n == b % n {
            return x % mn;
        }
    }
    unreachable!("crt: no solution for coprime moduli")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_basics() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn phi_small() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(40), 16);
    }

    #[test]
    fn order_divides_phi() {
        for m in [3u64, 4, 5, 8, 9, 15, 16, 40] {
            for a in 1..m {
                if gcd(a, m) == 1 {
                    let d = mult_order(a, m);
                    assert_eq!(pow_mod(a, d, m), 1);
                    assert_eq!(euler_phi(m) % d, 0);
                }
            }
        }
    }

    #[test]
    fn crt_roundtrip() {
        let x = crt(3, 8, 2, 5);
        assert_eq!(x % 8, 3);
        assert_eq!(x % 5, 2);
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(4), 0);
    }
}
