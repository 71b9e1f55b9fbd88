//! Cyclotomic field contexts, shared between all scalars of one conductor.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::{cos_two_pi_table, FixedTable};
use crate::error::{Error, Result};

/// Arithmetic context for `Q(ζ_n)`: the cyclotomic modulus, a reduction table
/// for products and a cache of cosine enclosures used by the sign oracle.
pub struct CycloField {
    conductor: u32,
    degree: usize,
    modulus: Vec<BigInt>,
    /// `x^(degree + j) mod Φ_n` for `j in 0..degree - 1`.
    reduce_rows: Vec<Vec<BigInt>>,
    /// `x^j mod Φ_n` for `j in 0..conductor`.
    zeta_pows: Vec<Vec<BigInt>>,
    cos_tables: Mutex<HashMap<u32, Arc<FixedTable>>>,
}

impl std::fmt::Debug for CycloField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CycloField")
            .field("conductor", &self.conductor)
            .field("degree", &self.degree)
            .finish()
    }
}

static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();

/// Returns the shared context for conductor `n`. The conductor must be a
/// positive multiple of 4 so that `i = ζ^(n/4)` lies in the field.
pub fn cyclo_field(conductor: u32) -> Result<Arc<CycloField>> {
    if conductor == 0 || !conductor.is_multiple_of(4) {
        return Err(Error::Domain(format!(
            "conductor must be a positive multiple of 4, got {conductor}"
        )));
    }
    let cache = FIELDS.get_or_init(Default::default);
    if let Some(f) = cache.read().expect("field cache poisoned").get(&conductor) {
        return Ok(f.clone());
    }
    let field = Arc::new(CycloField::build(conductor));
    let mut guard = cache.write().expect("field cache poisoned");
    Ok(guard.entry(conductor).or_insert(field).clone())
}

impl CycloField {
    fn build(conductor: u32) -> Self {
        let modulus = cyclotomic_polynomial(conductor as usize);
        let degree = modulus.len() - 1;

        // x^j mod Φ for j up to max(conductor, 2*degree - 1).
        let top = (conductor as usize).max(2 * degree);
        let mut pows: Vec<Vec<BigInt>> = Vec::with_capacity(top);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..top {
            pows.push(cur.clone());
            // multiply by x
            let carry = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !carry.is_zero() {
                for i in 0..degree {
                    cur[i] -= &carry * &modulus[i];
                }
            }
        }
        let reduce_rows = pows[degree..2 * degree - 1].to_vec();
        let zeta_pows = pows[..conductor as usize].to_vec();
        CycloField {
            conductor,
            degree,
            modulus,
            reduce_rows,
            zeta_pows,
            cos_tables: Mutex::new(HashMap::new()),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Euler totient of the conductor, the dimension of the power basis.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of `Φ_n`, lowest degree first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Reduced coefficient vector of `ζ^m` (any integer `m`).
    pub(crate) fn zeta_pow(&self, m: i64) -> &[BigInt] {
        let n = self.conductor as i64;
        &self.zeta_pows[m.rem_euclid(n) as usize]
    }

    /// Reduces a product polynomial of degree `< 2*degree - 1` in place and
    /// truncates it to `degree` coefficients.
    pub(crate) fn reduce(&self, mut prod: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree;
        for t in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[t]);
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.reduce_rows[t - d].iter().enumerate() {
                if !r.is_zero() {
                    prod[i] += &c * r;
                }
            }
        }
        prod.truncate(d);
        prod.resize(d, BigInt::zero());
        prod
    }

    /// Fixed-point enclosures of `cos(2πk/n)` for `k < degree` at `bits`
    /// fractional bits.
    pub(crate) fn cos_table(&self, bits: u32) -> Arc<FixedTable> {
        let mut guard = self.cos_tables.lock().expect("cos cache poisoned");
        guard
            .entry(bits)
            .or_insert_with(|| Arc::new(cos_two_pi_table(self.conductor, self.degree, bits)))
            .clone()
    }
}

/// `Φ_n` by exact division of `x^n - 1` by `Φ_d` for the proper divisors `d`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n > 0);
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = -BigInt::one();
    p[n] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = exact_monic_div(&p, &cyclotomic_polynomial(d));
    }
    p
}

fn exact_monic_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(
        rem.iter().all(|r| r.is_zero()),
        "non-exact cyclotomic division"
    );
    quot
}

/// Sum of absolute values, the bound on every complex embedding of an
/// integer coefficient vector.
pub(crate) fn l1_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|c| c.abs()).sum()
}
