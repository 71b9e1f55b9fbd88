//! The reflection matrices `A, B, C`, the pairing `J` and the scalar
//! constants attached to the parameter `N`.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::Mat4;
use crate::report::Report;
use crate::scalar::{cyclo_field, CycloField, CycloReal};

/// Local exponents of the hypergeometric equation, as rationals in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypergeoParams {
    #[serde(serialize_with = "ser_rats")]
    pub alpha: [BigRational; 4],
    #[serde(serialize_with = "ser_rats")]
    pub beta: [BigRational; 4],
}

fn ser_rats<S: serde::Serializer>(
    v: &[BigRational; 4],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

impl HypergeoParams {
    pub fn new(n: u32) -> Self {
        let n = i64::from(n);
        let q = |p: i64| BigRational::new(BigInt::from(p), BigInt::from(2 * n));
        HypergeoParams {
            alpha: [q(n - 3), q(n - 1), q(n + 1), q(n + 3)],
            beta: std::array::from_fn(|_| BigRational::from_integer(1.into())),
        }
    }

    pub fn check(&self) -> bool {
        let zero = BigRational::from_integer(0.into());
        let one = BigRational::from_integer(1.into());
        let three = BigRational::from_integer(3.into());
        self.alpha.iter().all(|a| *a >= zero && *a < one)
            && self.beta.iter().all(|b| *b > zero && *b <= one)
            && -&self.alpha[0] + &three * &self.alpha[1] == one
    }
}

/// Everything derived from `N`. Angles are stored as rational multiples of π.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub n: u32,
    pub params: HypergeoParams,
    pub theta: BigRational,
    pub mu1: BigRational,
    pub mu2: BigRational,
    pub c1: CycloReal,
    pub c2: CycloReal,
    pub s1: CycloReal,
    pub s2: CycloReal,
    pub cc1: CycloReal,
    pub cc2: CycloReal,
    pub r1: CycloReal,
    pub r2: CycloReal,
    pub l1: CycloReal,
    pub l2: CycloReal,
    pub a: Mat4,
    pub b: Mat4,
    pub c: Mat4,
    pub j: Mat4,
    /// `R = BC`.
    pub r: Mat4,
    /// `T = AB`.
    pub t: Mat4,
    field: Arc<CycloField>,
}

/// Order of the rotation `R` and the value of `R^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RotationOrder {
    /// `R^N = Id`.
    N,
    /// `R^N = -Id`, so `R` has order `2N`.
    TwoN,
}

pub fn build_group(n: u32) -> Result<GroupData> {
    if n < 4 {
        return Err(Error::Domain(format!("N must be at least 4, got {n}")));
    }
    let field = cyclo_field(4 * n)?;
    let q = |p: i64| CycloReal::ratio_in(&field, p, 1);
    let ni = i64::from(n);

    let (c1, s1) = CycloReal::cos_sin_in(&field, ni - 3, n)?;
    let (c2, s2) = CycloReal::cos_sin_in(&field, ni - 1, n)?;
    let cc1 = q(1) - &c1;
    let cc2 = q(1) - &c2;
    let two = q(2);
    let three = q(3);

    let r1 = (&two * (&c1 - q(1)).square()).checked_div(&(&s1 * (&c1 - &c2)))?;
    let r2 = (&two * (&c2 - q(1)).square()).checked_div(&(&s2 * (&c2 - &c1)))?;
    let prod = &cc1 * &cc2;
    let den = -&prod + &three * (&cc1 + &cc2);
    let l1 = (&prod - &three * (&cc2 - &cc1)).checked_div(&den)?;
    let l2 = (&prod + &three * (&cc2 - &cc1)).checked_div(&den)?;

    let z = || q(0);
    let a = Mat4::from_rows([
        [q(-1), z(), z(), z()],
        [-&r1, q(1), -&r1, z()],
        [z(), z(), q(-1), z()],
        [-&r2, z(), -&r2, q(1)],
    ]);
    let b = Mat4::diag([q(-1), q(1), q(-1), q(1)]);
    let c = Mat4::from_rows([
        [-&c1, s1.clone(), z(), z()],
        [s1.clone(), c1.clone(), z(), z()],
        [z(), z(), -&c2, s2.clone()],
        [z(), z(), s2.clone(), c2.clone()],
    ]);
    let j = Mat4::from_rows([
        [z(), r2.clone(), z(), z()],
        [-&r2, z(), z(), z()],
        [z(), z(), z(), r1.clone()],
        [z(), z(), -&r1, z()],
    ]);
    let r = &b * &c;
    let t = &a * &b;

    let rat = |p: i64, d: i64| BigRational::new(BigInt::from(p), BigInt::from(d));
    let data = GroupData {
        n,
        params: HypergeoParams::new(n),
        theta: rat(1, ni),
        mu1: rat(ni - 3, ni),
        mu2: rat(ni - 1, ni),
        c1,
        c2,
        s1,
        s2,
        cc1,
        cc2,
        r1,
        r2,
        l1,
        l2,
        a,
        b,
        c,
        j,
        r,
        t,
        field,
    };
    data.check_invariants()?;
    Ok(data)
}

impl GroupData {
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    /// The rational `p/q` as a field element.
    pub fn q(&self, p: i64, q: i64) -> CycloReal {
        CycloReal::ratio_in(&self.field, p, q)
    }

    pub fn identity(&self) -> Mat4 {
        Mat4::identity(&self.field)
    }

    /// `-R`, the rotation by `-3θ` and `-θ` in the two blocks.
    pub fn minus_r(&self) -> Mat4 {
        -&self.r
    }

    /// `(cos(kπ/d), sin(kπ/d))` in this field.
    pub fn cos_sin(&self, k: i64, d: u32) -> (CycloReal, CycloReal) {
        CycloReal::cos_sin_in(&self.field, k, d).expect("angle must lie in the field")
    }

    fn check_invariants(&self) -> Result<()> {
        let fail = |id: &str, detail: String| Err(Error::invariant(id, detail));
        if !self.params.check() {
            return fail("params", format!("{:?}", self.params));
        }
        let one = self.q(1, 1);
        let three = self.q(3, 1);
        let lhs = &three * (&self.l1 + &self.l2);
        let mid = (&self.l1 + &one) * &self.cc2;
        let rhs = (&self.l2 + &one) * &self.cc1;
        if lhs != mid || mid != rhs {
            return fail("L_identity", format!("{lhs} {mid} {rhs}"));
        }
        if (&self.l1 - self.q(1, 2)).sign() >= 0 {
            return fail("L1_lt_half", format!("L1 = {}", self.l1));
        }
        if (&self.l1 + &self.l2 - &one).sign() >= 0 {
            return fail("L_sum_lt_1", format!("L1 + L2 = {}", &self.l1 + &self.l2));
        }
        if self.cc1.sign() <= 0 || (&self.cc2 - &self.cc1).sign() <= 0 {
            return fail(
                "cc_order",
                format!("cc1 = {}, cc2 = {}", self.cc1, self.cc2),
            );
        }
        if (&self.l2 - &self.l1).sign() <= 0 {
            return fail("L_order", format!("L1 = {}, L2 = {}", self.l1, self.l2));
        }
        let id = self.identity();
        let neg_j = -&self.j;
        for (name, m) in [("A", &self.a), ("B", &self.b), ("C", &self.c)] {
            if (m * m) != id {
                return fail(&format!("{name}_involution"), format!("{name}^2 != Id"));
            }
            if &(&m.transpose() * &self.j) * m != neg_j {
                return fail(
                    &format!("{name}_antisymplectic"),
                    format!("{name}^t J {name} != -J"),
                );
            }
        }
        Ok(())
    }
}

/// `(t^2 - 2 x t + 1)(t^2 - 2 y t + 1)`, coefficients lowest first.
fn rotation_pair_poly(x: &CycloReal, y: &CycloReal) -> [CycloReal; 5] {
    let one = x.constant(1, 1);
    let two = x.constant(2, 1);
    let s = &two * (x + y);
    [one.clone(), -&s, &two + x.constant(4, 1) * x * y, -&s, one]
}

pub fn verify_conjugacy(data: &GroupData) -> Report {
    let start = Instant::now();
    let mut rep = Report::new(data.n);
    let id = data.identity();

    let cp = data.r.char_poly();
    let want = rotation_pair_poly(&data.c1, &data.c2);
    rep.check("charpoly_R", cp == want);

    // eigenvalues exp(2πi α_j), paired into conjugate quadratics
    let cos_of = |a: &BigRational| {
        let d = a.denom().clone();
        let k: i64 = (a.numer() * 2i64).try_into().expect("small numerator");
        let d: u32 = d.try_into().expect("small denominator");
        data.cos_sin(k, d).0
    };
    let al = &data.params.alpha;
    let paired = al[0].clone() + al[3].clone() == BigRational::from_integer(1.into())
        && al[1].clone() + al[2].clone() == BigRational::from_integer(1.into());
    let from_params = rotation_pair_poly(&cos_of(&al[0]), &cos_of(&al[1]));
    rep.check("charpoly_R_params", paired && cp == from_params);

    let tm = &data.t - &id;
    let rank = tm.rank();
    rep.check_with("rank_T_minus_id", rank == 1, json!(rank));
    rep.check("det_T", data.t.det() == data.q(1, 1));

    let ca = &data.c * &data.a;
    let u = &ca - &id;
    let u3 = &(&u * &u) * &u;
    let u4 = &u3 * &u;
    rep.check("CA_minus_id_pow4_zero", u4.is_zero());
    rep.check("CA_minus_id_pow3_nonzero", !u3.is_zero());
    let one = data.q(1, 1);
    let unip = [one.clone(), data.q(-4, 1), data.q(6, 1), data.q(-4, 1), one];
    rep.check("charpoly_CA", ca.char_poly() == unip);

    // C respects the filtration spanned by the cone generators
    let g = crate::cones::cone_generators(data);
    let filtration = match g.inverse() {
        Some(gi) => {
            let cg = &(&gi * &data.c) * &g;
            let signs = [1, -1, 1, -1];
            (0..4).all(|i| {
                cg[(i, i)] == data.q(signs[i], 1) && (i + 1..4).all(|j| cg[(i, j)].is_zero())
            })
        }
        None => false,
    };
    rep.check("C_filtration", filtration);
    rep.timed(start)
}

/// The defining relations: `A`, `B`, `C` are anti-symplectic involutions
/// and `R^N = ±Id` with the sign fixed by the parity of `N`.
pub fn verify_relations(data: &GroupData) -> Report {
    let start = Instant::now();
    let mut rep = Report::new(data.n);
    let id = data.identity();
    let neg_j = -&data.j;
    for (name, m) in [("A", &data.a), ("B", &data.b), ("C", &data.c)] {
        rep.check(format!("{name}_involution"), (m * m) == id);
        rep.check(
            format!("{name}_antisymplectic"),
            &(&m.transpose() * &data.j) * m == neg_j,
        );
    }
    match order_of_r(data) {
        Ok(o) => rep.check_with("R_order", true, json!(o)),
        Err(e) => rep.check_with("R_order", false, json!(e.to_string())),
    };
    rep.timed(start)
}

pub fn order_of_r(data: &GroupData) -> Result<RotationOrder> {
    let rn = data.r.pow(data.n);
    let id = data.identity();
    let got = if rn == id {
        RotationOrder::N
    } else if rn == -&id {
        RotationOrder::TwoN
    } else {
        return Err(Error::invariant("R_order", "R^N is not ±Id"));
    };
    let expected = if data.n % 2 == 1 {
        RotationOrder::N
    } else {
        RotationOrder::TwoN
    };
    if got != expected {
        return Err(Error::invariant(
            "R_order_parity",
            format!("N = {}: got {got:?}", data.n),
        ));
    }
    Ok(got)
}
