//! Exact real numbers in the cyclotomic field `Q(ζ_n)`.
//!
//! A [`CycloReal`] is stored as an integer coefficient vector over the power
//! basis `1, ζ, …, ζ^(φ(n)-1)` together with one positive common denominator.
//! Reduction modulo `Φ_n` is eager and the pair is kept coprime, so equality
//! and the zero test are structural.

mod field;
mod interval;
mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use field::{cyclo_field, cyclotomic_polynomial, CycloField};
pub use interval::RatInterval;

use crate::error::{Error, Result};

const SIGN_START_BITS: u32 = 64;
const SIGN_CAP_BITS: u32 = 4096;

#[derive(Clone)]
pub struct CycloReal {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloReal {
    fn from_parts(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CycloReal { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero_in(field: &Arc<CycloField>) -> Self {
        CycloReal {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree()],
            den: BigInt::one(),
        }
    }

    pub fn ratio_in(field: &Arc<CycloField>, p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        let q = q.into();
        assert!(!q.is_zero(), "zero denominator");
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = p.into();
        Self::from_parts(field.clone(), num, q)
    }

    pub fn zero(conductor: u32) -> Result<Self> {
        Ok(Self::zero_in(&cyclo_field(conductor)?))
    }

    pub fn one(conductor: u32) -> Result<Self> {
        Self::from_integer(conductor, 1)
    }

    pub fn from_integer(conductor: u32, n: i64) -> Result<Self> {
        Ok(Self::ratio_in(&cyclo_field(conductor)?, n, 1))
    }

    pub fn from_rational(conductor: u32, q: &BigRational) -> Result<Self> {
        Ok(Self::ratio_in(
            &cyclo_field(conductor)?,
            q.numer().clone(),
            q.denom().clone(),
        ))
    }

    pub fn from_ratio(conductor: u32, p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::ratio_in(&cyclo_field(conductor)?, p, q))
    }

    /// The rational `p/q` in the same field as `self`.
    pub fn constant(&self, p: i64, q: i64) -> Self {
        Self::ratio_in(&self.field, p, q)
    }

    /// Exact `(cos(kπ/d), sin(kπ/d))`. Requires `2d | conductor`.
    pub fn cos_sin_pi_multiple(k: i64, d: u32, conductor: u32) -> Result<(Self, Self)> {
        let field = cyclo_field(conductor)?;
        Self::cos_sin_in(&field, k, d)
    }

    pub fn cos_sin_in(field: &Arc<CycloField>, k: i64, d: u32) -> Result<(Self, Self)> {
        let n = field.conductor();
        if d == 0 || !n.is_multiple_of(2 * d) {
            return Err(Error::Domain(format!(
                "cos(kπ/{d}) is not in the field of conductor {n}"
            )));
        }
        let m = k * (n / (2 * d)) as i64;
        let zp = Self::zeta_in(field, m);
        let zm = Self::zeta_in(field, -m);
        let two = BigInt::from(2);
        let cos = Self::from_parts(
            field.clone(),
            zp.num.iter().zip(&zm.num).map(|(a, b)| a + b).collect(),
            two.clone(),
        );
        // 1/i = ζ^(3n/4)
        let diff = Self::from_parts(
            field.clone(),
            zp.num.iter().zip(&zm.num).map(|(a, b)| a - b).collect(),
            two,
        );
        let sin = diff.mul_ref(&Self::zeta_in(field, 3 * (n / 4) as i64));
        Ok((cos, sin))
    }

    /// `ζ^m`; not real in general, used only internally.
    fn zeta_in(field: &Arc<CycloField>, m: i64) -> Self {
        CycloReal {
            field: field.clone(),
            num: field.zeta_pow(m).to_vec(),
            den: BigInt::one(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Rational power-basis coefficients.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Image under `ζ ↦ ζ⁻¹`.
    pub fn conjugate(&self) -> Self {
        let d = self.field.degree();
        let mut out = vec![BigInt::zero(); d];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, z) in out.iter_mut().zip(self.field.zeta_pow(-(k as i64))) {
                if !z.is_zero() {
                    *o += c * z;
                }
            }
        }
        Self::from_parts(self.field.clone(), out, self.den.clone())
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    /// Rational value if the element lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.conductor() == other.conductor() {
            Ok(())
        } else {
            Err(Error::ConductorMismatch {
                left: self.conductor(),
                right: other.conductor(),
            })
        }
    }

    fn assert_field(&self, other: &Self) {
        if let Err(e) = self.check_field(other) {
            panic!("{e}");
        }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self.assert_field(rhs);
        let num = if self.den == rhs.den {
            self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect()
        } else {
            self.num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| a * &rhs.den + b * &self.den)
                .collect()
        };
        let den = if self.den == rhs.den {
            self.den.clone()
        } else {
            &self.den * &rhs.den
        };
        Self::from_parts(self.field.clone(), num, den)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.assert_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero_in(&self.field);
        }
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let num = self.field.reduce(prod);
        Self::from_parts(self.field.clone(), num, &self.den * &rhs.den)
    }

    pub fn square(&self) -> Self {
        self.mul_ref(self)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.constant(1, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        let coeffs = self.coeffs();
        let inv = poly::inverse_mod(&coeffs, self.field.modulus()).ok_or(Error::DivisionByZero)?;
        let den = inv.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = inv.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        num.resize(self.field.degree(), BigInt::zero());
        Ok(Self::from_parts(self.field.clone(), num, den))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        Ok(self.mul_ref(&rhs.inv()?))
    }

    /// Interval enclosure of the numerator sum at `bits` fractional bits,
    /// as fixed-point integers.
    fn enclose_numerator(&self, bits: u32) -> (BigInt, BigInt) {
        let table = self.field.cos_table(bits);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (c, e) in self.num.iter().zip(&table.entries) {
            if c.is_zero() {
                continue;
            }
            if c.is_positive() {
                lo += c * &e.lo;
                hi += c * &e.hi;
            } else {
                lo += c * &e.hi;
                hi += c * &e.lo;
            }
        }
        (lo, hi)
    }

    /// Rigorous enclosure of the real value, computed with `bits` bits of
    /// precision for each basis cosine.
    pub fn enclose(&self, bits: u32) -> RatInterval {
        let (lo, hi) = self.enclose_numerator(bits);
        let scale = &self.den << bits;
        RatInterval::new(
            BigRational::new(lo, scale.clone()),
            BigRational::new(hi, scale),
        )
        .expect("enclosure endpoints out of order")
    }

    /// Exact sign: `-1`, `0` or `1`.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let mut bits = SIGN_START_BITS;
        loop {
            if let Some(s) = self.numerator_sign_at(bits) {
                return s;
            }
            if bits >= SIGN_CAP_BITS {
                break;
            }
            bits *= 2;
        }
        // A nonzero algebraic integer has norm at least 1 while every
        // conjugate is bounded by the l1 norm B, so |x| >= B^-(φ-1).
        let b = field::l1_norm(&self.num);
        let phi = self.field.degree() as u64;
        let mut bits = (phi * b.bits() + 8).min(u32::MAX as u64) as u32;
        loop {
            if let Some(s) = self.numerator_sign_at(bits) {
                return s;
            }
            bits = bits.saturating_mul(2);
        }
    }

    fn numerator_sign_at(&self, bits: u32) -> Option<i8> {
        let (lo, hi) = self.enclose_numerator(bits);
        if lo.is_positive() {
            Some(1)
        } else if hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(q) = self.to_rational() {
            return q.to_f64().unwrap_or(f64::NAN);
        }
        self.enclose(96).midpoint_f64()
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// `sign(self - other)`.
    pub fn cmp_exact(&self, other: &Self) -> std::cmp::Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl PartialEq for CycloReal {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloReal {}

impl fmt::Debug for CycloReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloReal(n={}, ", self.conductor())?;
        let mut first = true;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}ζ^{k}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")/{} ≈ {}", self.den, self.to_f64())
    }
}

impl fmt::Display for CycloReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "{}", self.to_f64()),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&CycloReal> for &CycloReal {
            type Output = CycloReal;
            fn $m(self, rhs: &CycloReal) -> CycloReal {
                let f: fn(&CycloReal, &CycloReal) -> CycloReal = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycloReal> for CycloReal {
            type Output = CycloReal;
            fn $m(self, rhs: CycloReal) -> CycloReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloReal> for CycloReal {
            type Output = CycloReal;
            fn $m(self, rhs: &CycloReal) -> CycloReal {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycloReal> for &CycloReal {
            type Output = CycloReal;
            fn $m(self, rhs: CycloReal) -> CycloReal {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b));
binop!(Sub, sub, |a, b| a.add_ref(&-b));
binop!(Mul, mul, |a, b| a.mul_ref(b));
binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by exact zero"));

impl Neg for &CycloReal {
    type Output = CycloReal;
    fn neg(self) -> CycloReal {
        CycloReal {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloReal {
    type Output = CycloReal;
    fn neg(self) -> CycloReal {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRealRepr {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRealRepr {
            conductor: self.conductor(),
            coeffs: self.coeffs().iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CycloRealRepr::deserialize(d)?;
        let field = cyclo_field(repr.conductor).map_err(D::Error::custom)?;
        if repr.coeffs.len() != field.degree() {
            return Err(D::Error::custom(format!(
                "expected {} coefficients, got {}",
                field.degree(),
                repr.coeffs.len()
            )));
        }
        let mut acc = CycloReal::zero_in(&field);
        for (k, s) in repr.coeffs.iter().enumerate() {
            let q: BigRational = s.parse().map_err(D::Error::custom)?;
            if q.is_zero() {
                continue;
            }
            let term = CycloReal::ratio_in(&field, q.numer().clone(), q.denom().clone())
                .mul_ref(&CycloReal::zeta_in(&field, k as i64));
            acc = acc.add_ref(&term);
        }
        if !acc.is_real() {
            return Err(D::Error::custom("element is not fixed by conjugation"));
        }
        Ok(acc)
    }
}
