//! Dense univariate polynomials over Q, lowest degree first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn sub_scaled_shifted(a: &mut Poly, b: &Poly, c: &BigRational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigRational::zero());
    }
    for (i, bi) in b.iter().enumerate() {
        if !bi.is_zero() {
            a[i + shift] -= c * bi;
        }
    }
}

fn div_rem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = &r[r.len() - 1] / lead;
        sub_scaled_shifted(&mut r, b, &c, shift);
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `m`, or `None` if `a ≡ 0`.
pub(crate) fn inverse_mod(a: &[BigRational], m: &[BigInt]) -> Option<Poly> {
    let mut r0: Poly = m.iter().cloned().map(BigRational::from_integer).collect();
    let mut r1: Poly = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut t0: Poly = Vec::new();
    let mut t1: Poly = vec![BigRational::one()];
    while r1.len() > 1 {
        let (q, r) = div_rem(&r0, &r1);
        let t = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
        if r1.is_empty() {
            // gcd of positive degree: m was not irreducible
            return None;
        }
    }
    let c = r1[0].clone();
    let mut inv: Poly = t1.into_iter().map(|x| x / &c).collect();
    let (_, rem) = div_rem(
        &inv,
        &m.iter().cloned().map(BigRational::from_integer).collect(),
    );
    inv = rem;
    Some(inv)
}
