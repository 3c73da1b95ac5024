//! Small integer helpers: gcd, trial-division primality and factoring,
//! radicals, valuations and square extraction.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// gcd of a signed value with a positive modulus, always nonnegative.
pub fn gcd_signed(a: i64, b: u64) -> u64 {
    gcd(a.unsigned_abs(), b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Product of the distinct primes dividing `n`; `rad(1) = 1`.
pub fn rad(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, _)| p).product()
}

/// Exponent of the prime `t` in `n`. `n` must be nonzero.
pub fn valuation(t: u64, mut n: u64) -> u32 {
    assert!(t >= 2 && n != 0);
    let mut v = 0;
    while n.is_multiple_of(t) {
        n /= t;
        v += 1;
    }
    v
}

pub fn least_prime_factor(n: u64) -> Option<u64> {
    factorize(n).first().map(|&(p, _)| p)
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Writes `n = s^2 * d` with `d` squarefree; returns `(s, d)`.
pub fn square_part(n: u64) -> (u64, u64) {
    let mut s = 1;
    let mut d = 1;
    for (p, e) in factorize(n) {
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
    }
    (s, d)
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Splits a prime power into `(p, k)`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc = 1u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}
