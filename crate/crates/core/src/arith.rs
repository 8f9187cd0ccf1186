//! Small integer helpers: primes, prime-power parts of orders.

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as `(p, exponent)` pairs with increasing `p`.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: usize) -> Vec<usize> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut part = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// Product of the `p`-parts of `n` over the primes accepted by `in_pi`.
pub fn pi_part(n: usize, in_pi: impl Fn(usize) -> bool) -> usize {
    factorize(n)
        .into_iter()
        .filter(|&(p, _)| in_pi(p))
        .map(|(p, e)| p.pow(e))
        .product()
}

/// `Some(p)` when `n` is a positive power of the prime `p`.
pub fn prime_power_base(n: usize) -> Option<usize> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}
