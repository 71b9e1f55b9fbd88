//! Rational interval enclosures with outward rounding.
//!
//! Transcendental constants are enclosed in fixed point: an integer pair
//! `(lo, hi)` stands for `[lo / 2^bits, hi / 2^bits]`. Every truncation
//! rounds `lo` down and `hi` up, so enclosures are rigorous at any precision.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(RatInterval { lo, hi })
    }

    pub fn point(q: BigRational) -> Self {
        RatInterval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub(crate) fn from_fixed(lo: BigInt, hi: BigInt, bits: u32) -> Self {
        let scale = BigInt::one() << bits;
        RatInterval {
            lo: BigRational::new(lo, scale.clone()),
            hi: BigRational::new(hi, scale),
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= BigRational::zero() && self.hi >= BigRational::zero()
    }

    /// `Some(±1)` if the interval excludes zero.
    pub fn strict_sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    /// Widens the endpoints to the grid `2^-bits`, keeping denominators small.
    pub fn round_outward(&self, bits: u32) -> Self {
        let scale = BigInt::one() << bits;
        let lo = (self.lo.numer() * &scale).div_floor(self.lo.denom());
        let hi = (self.hi.numer() * &scale).div_ceil(self.hi.denom());
        Self::from_fixed(lo, hi, bits)
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

impl Add for &RatInterval {
    type Output = RatInterval;
    fn add(self, rhs: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &RatInterval {
    type Output = RatInterval;
    fn sub(self, rhs: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Mul for &RatInterval {
    type Output = RatInterval;
    fn mul(self, rhs: &RatInterval) -> RatInterval {
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = c.iter().min().cloned().unwrap();
        let hi = c.iter().max().cloned().unwrap();
        RatInterval { lo, hi }
    }
}

impl Neg for &RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        RatInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Serialize for RatInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RatInterval", 2)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.end()
    }
}

/// Fixed-point interval; the scale is carried by the owning table.
#[derive(Clone, Debug)]
pub(crate) struct Fixed {
    pub lo: BigInt,
    pub hi: BigInt,
}

#[derive(Debug)]
pub(crate) struct FixedTable {
    pub entries: Vec<Fixed>,
}

const GUARD_BITS: u32 = 32;

fn shift_floor(x: &BigInt, by: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << by))
}

fn shift_ceil(x: &BigInt, by: u32) -> BigInt {
    x.div_ceil(&(BigInt::one() << by))
}

/// Enclosure of `atan(1/x)` scaled by `2^bits`.
fn atan_inv(x: u32, bits: u32) -> Fixed {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    // p_j approximates 2^bits / x^(2j+1) from below, error < 2 ulp.
    let mut p = (BigInt::one() << bits).div_floor(&x);
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut j = 0u64;
    while !p.is_zero() {
        let t = p.div_floor(&BigInt::from(2 * j + 1));
        if j.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        terms += 1;
        p = p.div_floor(&x2);
        j += 1;
    }
    let err = BigInt::from(3 * terms + 4);
    Fixed {
        lo: &sum - &err,
        hi: &sum + &err,
    }
}

/// Machin's formula `π = 16 atan(1/5) - 4 atan(1/239)`, scaled by `2^bits`.
pub(crate) fn pi_fixed(bits: u32) -> Fixed {
    static CACHE: OnceLock<Mutex<HashMap<u32, Fixed>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("pi cache poisoned").get(&bits) {
        return p.clone();
    }
    let w = bits + GUARD_BITS;
    let a = atan_inv(5, w);
    let b = atan_inv(239, w);
    let lo = BigInt::from(16) * &a.lo - BigInt::from(4) * &b.hi;
    let hi = BigInt::from(16) * &a.hi - BigInt::from(4) * &b.lo;
    let pi = Fixed {
        lo: shift_floor(&lo, GUARD_BITS),
        hi: shift_ceil(&hi, GUARD_BITS),
    };
    cache
        .lock()
        .expect("pi cache poisoned")
        .insert(bits, pi.clone());
    pi
}

/// Taylor enclosure of `cos(x)` for `0 <= x <= 2` given in fixed point.
fn cos_fixed(x: &Fixed, bits: u32) -> Fixed {
    let one = BigInt::one() << bits;
    let x2_lo = shift_floor(&(&x.lo * &x.lo), bits);
    let x2_hi = shift_ceil(&(&x.hi * &x.hi), bits);
    let mut sum_lo = one.clone();
    let mut sum_hi = one.clone();
    let mut t_lo = one.clone();
    let mut t_hi = one;
    let mut j: u64 = 1;
    loop {
        let d = BigInt::from((2 * j - 1) * (2 * j)) << bits;
        t_lo = (&t_lo * &x2_lo).div_floor(&d);
        t_hi = (&t_hi * &x2_hi).div_ceil(&d);
        if j % 2 == 1 {
            sum_lo -= &t_hi;
            sum_hi -= &t_lo;
        } else {
            sum_lo += &t_lo;
            sum_hi += &t_hi;
        }
        // Terms decrease once x^2 < (2j+1)(2j+2); the alternating tail is
        // bounded by the last term.
        if t_hi <= BigInt::one() && j >= 2 {
            sum_lo -= 2;
            sum_hi += 2;
            break;
        }
        j += 1;
    }
    Fixed {
        lo: sum_lo,
        hi: sum_hi,
    }
}

/// Enclosures of `cos(2πk/n)` for `k in 0..count`, at `bits` fractional bits.
pub(crate) fn cos_two_pi_table(n: u32, count: usize, bits: u32) -> FixedTable {
    let w = bits + GUARD_BITS;
    let pi = pi_fixed(w);
    let n = n as i64;
    let entries = (0..count as i64)
        .map(|k| {
            let mut m = k.rem_euclid(n);
            if 2 * m > n {
                m = n - m;
            }
            // angle 2πm/n in [0, π]; fold to [0, π/2]
            let (m, negate) = if 4 * m > n {
                (n / 2 - m, true)
            } else {
                (m, false)
            };
            let num = BigInt::from(2 * m);
            let den = BigInt::from(n);
            let x = Fixed {
                lo: (&pi.lo * &num).div_floor(&den),
                hi: (&pi.hi * &num).div_ceil(&den),
            };
            let c = cos_fixed(&x, w);
            let (lo, hi) = if negate { (-c.hi, -c.lo) } else { (c.lo, c.hi) };
            Fixed {
                lo: shift_floor(&lo, GUARD_BITS),
                hi: shift_ceil(&hi, GUARD_BITS),
            }
        })
        .collect();
    FixedTable { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_f64(x: &BigInt, bits: u32) -> f64 {
        BigRational::new(x.clone(), BigInt::one() << bits)
            .to_f64()
            .unwrap()
    }

    #[test]
    fn pi_enclosure_is_tight_and_correct() {
        for bits in [64, 200, 1000] {
            let p = pi_fixed(bits);
            assert!(to_f64(&p.lo, bits) <= std::f64::consts::PI + 1e-15);
            assert!(to_f64(&p.hi, bits) >= std::f64::consts::PI - 1e-15);
            assert!(&p.hi - &p.lo < BigInt::from(8));
        }
        // digits of π well beyond f64: 3.14159265358979323846264338327950288...
        let bits = 256;
        let p = pi_fixed(bits);
        let known = BigRational::new(
            "314159265358979323846264338327950288419716939937510"
                .parse()
                .unwrap(),
            BigInt::from(10).pow(50),
        );
        let iv = RatInterval::from_fixed(p.lo, p.hi, bits);
        let eps = BigRational::new(BigInt::one(), BigInt::from(10).pow(49));
        assert!(iv.lo() <= &(&known + &eps) && iv.hi() >= &(&known - &eps));
    }

    #[test]
    fn cosine_table_encloses_float_values() {
        let n = 28;
        let t = cos_two_pi_table(n, n as usize, 80);
        for (k, e) in t.entries.iter().enumerate() {
            let truth = (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos();
            assert!(to_f64(&e.lo, 80) <= truth + 1e-14, "k={k}");
            assert!(to_f64(&e.hi, 80) >= truth - 1e-14, "k={k}");
            assert!(&e.hi - &e.lo <= BigInt::from(4));
        }
    }

    #[test]
    fn interval_mul_covers_sign_changes() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let a = RatInterval::new(q(-1, 1), q(2, 1)).unwrap();
        let b = RatInterval::new(q(-3, 1), q(1, 2)).unwrap();
        let c = &a * &b;
        assert_eq!(c.lo(), &q(-6, 1));
        assert_eq!(c.hi(), &q(3, 1));
        assert!(RatInterval::new(q(1, 1), q(0, 1)).is_err());
    }

    #[test]
    fn outward_rounding_keeps_enclosure() {
        let third = BigRational::new(1.into(), 3.into());
        let r = RatInterval::point(third.clone()).round_outward(10);
        assert!(r.contains(&third));
        assert!(r.width() <= BigRational::new(1.into(), 1024.into()));
    }
}
