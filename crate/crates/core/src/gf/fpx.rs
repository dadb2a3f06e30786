//! Raw dense polynomials over F_p as `Vec<u64>` (index i = coefficient of X^i).
//!
//! This is the low-level layer used to build extension fields. Zero is the
//! empty vector; every function returns trimmed output.

use super::PrimeField;

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn sub(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            f.sub(x, y)
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(f: PrimeField, a: &[u64], m: &[u64]) -> Vec<u64> {
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = f.mul(r[top], lead_inv);
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, mi));
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mulmod(f: PrimeField, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    rem(f, &mul(f, a, b), m)
}

pub(crate) fn powmod(f: PrimeField, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = rem(f, &[1], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &b, m);
        }
        b = mulmod(f, &b, &b, m);
        e >>= 1;
    }
    acc
}

pub(crate) fn gcd(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = std::mem::replace(&mut y, r);
    }
    make_monic(f, &mut x);
    x
}

pub(crate) fn make_monic(f: PrimeField, v: &mut [u64]) {
    if let Some(&lead) = v.last() {
        let inv = f.inv(lead).expect("nonzero leading coefficient");
        for c in v.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
}

/// Inverse of `a` modulo `m`, or `None` when they share a factor.
pub(crate) fn invmod(f: PrimeField, a: &[u64], m: &[u64]) -> Option<Vec<u64>> {
    // extended Euclid tracking only the coefficient of `a`
    let mut r0 = m.to_vec();
    let mut r1 = rem(f, a, m);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divmod(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = f.inv(r0[0]).ok()?;
    let out: Vec<u64> = s0.iter().map(|&x| f.mul(x, c)).collect();
    Some(rem(f, &out, m))
}

pub(crate) fn divmod(f: PrimeField, a: &[u64], m: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - dm];
    while r.len() > dm {
        let top = r.len() - 1;
        let c = f.mul(r[top], lead_inv);
        let shift = top - dm;
        q[shift] = c;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, mi));
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Rabin's test for a monic polynomial of degree `d >= 1`.
pub(crate) fn is_irreducible(f: PrimeField, m: &[u64]) -> bool {
    let d = m.len() - 1;
    if d == 1 {
        return true;
    }
    let x = vec![0, 1];
    let p = f.p();
    // x^(p^k) mod m for k = 0..=d
    let mut frob = Vec::with_capacity(d + 1);
    let mut cur = rem(f, &x, m);
    frob.push(cur.clone());
    for _ in 0..d {
        cur = powmod(f, &cur, p, m);
        frob.push(cur.clone());
    }
    if !sub(f, &frob[d], &x).is_empty() {
        return false;
    }
    for r in prime_divisors(d as u64) {
        let k = d / r as usize;
        let g = gcd(f, m, &sub(f, &frob[k], &x));
        if g.len() != 1 {
            return false;
        }
    }
    true
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut r = 2u64;
    while r.saturating_mul(r) <= n {
        if n % r == 0 {
            out.push(r);
            while n % r == 0 {
                n /= r;
            }
        }
        r += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
