//! Small-integer number theory helpers: factorization by trial division,
//! divisor sums, the Möbius function and the Kronecker symbol.

use num_integer::Integer;

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = isqrt(n);
        r * r == n
    }
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
/// `n` must be non-zero; the sign is ignored.
pub fn factorize(n: i64) -> Vec<(i64, u32)> {
    assert!(n != 0, "factorize(0)");
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
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

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: i64) -> Vec<i64> {
    let mut out = vec![1];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Exponent of the prime `p` in `n` (`n != 0`).
pub fn valuation(mut n: i64, p: i64) -> u32 {
    assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Number of distinct prime divisors.
pub fn omega(n: i64) -> u32 {
    factorize(n).len() as u32
}

/// Sum of positive divisors.
pub fn sigma(n: i64) -> i64 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| (p.pow(e + 1) - 1) / (p - 1))
        .product()
}

pub fn mobius(n: i64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Twisted divisor sum `sum_{d | n} (d/5) * n/d`.
pub fn sigma5(n: i64) -> i64 {
    divisors(n).into_iter().map(|d| kronecker(d, 5) * (n / d)).sum()
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: i64) -> i64 {
    assert!(n > 0 && n % 2 == 1, "jacobi needs odd positive modulus");
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol `(a/n)` with the usual extension to even and negative `n`:
/// `(a/2)` is 0 for even `a`, 1 for `a = ±1 (mod 8)` and -1 for `a = ±3 (mod 8)`,
/// `(a/-1)` is the sign of `a`, and `(a/0)` is 1 exactly when `a = ±1`.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -1;
        }
    }
    let v = n.trailing_zeros();
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= v;
        if v % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
    }
    if n == 1 {
        return result;
    }
    result * jacobi(a, n)
}

/// Splits a discriminant `d < 0` (`d = 0, 1 mod 4`) as `d = fundamental * conductor^2`.
pub fn fundamental_part(d: i64) -> (i64, i64) {
    assert!(d < 0 && (d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1), "not a negative discriminant: {d}");
    let mut f = 1;
    for (p, e) in factorize(d) {
        let mut k = e / 2;
        while k > 0 {
            let pk = p.pow(k);
            let rest = d / (f * f * pk * pk);
            let r = rest.rem_euclid(4);
            if r == 0 || r == 1 {
                f *= pk;
                break;
            }
            k -= 1;
        }
    }
    (d / (f * f), f)
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    d < 0 && (d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1) && fundamental_part(d).1 == 1
}

pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}
