//! The fundamental cone, its face functionals and the ping-pong certificate.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat4, Vec4};
use crate::monodromy::GroupData;
use crate::report::Status;
use crate::scalar::{CycloReal, RatInterval};

/// Simplicial cone in R^4 given by generators (columns) and face functionals
/// (rows): `v` lies in the closed cone iff `faces · v >= 0`.
#[derive(Clone, Debug, Serialize)]
pub struct Cone4 {
    pub gens: Mat4,
    pub faces: Mat4,
    pub duality_scalar: CycloReal,
}

/// Generators `v0, v1, v2, v3` of the fundamental cone as columns.
pub fn cone_generators(d: &GroupData) -> Mat4 {
    let z = || d.q(0, 1);
    let (l1, l2, cc1, cc2, s1, s2) = (&d.l1, &d.l2, &d.cc1, &d.cc2, &d.s1, &d.s2);
    let k1 = cc1 / s1;
    let k2 = cc2 / s2;
    Mat4::from_rows([
        [z(), -(l2 * cc1), z(), cc1.clone()],
        [-(l1 * &k1), -(cc1 * &k1), -&k1, -(cc1 * &k1)],
        [z(), l1 * cc2, z(), -cc2],
        [l2 * &k2, cc2 * &k2, k2.clone(), cc2 * &k2],
    ])
}

/// Face matrix `M` written out entrywise.
fn explicit_faces(d: &GroupData) -> Mat4 {
    let z = || d.q(0, 1);
    let one = || d.q(1, 1);
    let (l1, l2, cc1, cc2, s1, s2) = (&d.l1, &d.l2, &d.cc1, &d.cc2, &d.s1, &d.s2);
    let i1 = cc1.inv().expect("cc1 != 0");
    let i2 = cc2.inv().expect("cc2 != 0");
    Mat4::from_rows([
        [-(l1 * &i1), z(), -(l2 * &i2), z()],
        [one(), -(l2 * s1 * &i1), one(), -(l1 * s2 * &i2)],
        [-&i1, z(), -&i2, z()],
        [one(), s1 * &i1, one(), s2 * &i2],
    ])
}

/// Self-duality scalar `α = 2 (L1 - L2)/(cc1 - cc2) · cc1² cc2² / (s1 s2)`.
pub fn alpha(d: &GroupData) -> CycloReal {
    let num = d.q(2, 1) * (&d.l1 - &d.l2) * (&d.cc1 * &d.cc2).square();
    num / ((&d.cc1 - &d.cc2) * &d.s1 * &d.s2)
}

/// Normalisation `α' = 2/(cc2 - cc1) · cc1² cc2² / (s1 s2)`.
pub fn alpha_prime(d: &GroupData) -> CycloReal {
    let num = d.q(2, 1) * (&d.cc1 * &d.cc2).square();
    num / ((&d.cc2 - &d.cc1) * &d.s1 * &d.s2)
}

pub fn fundamental_cone(d: &GroupData) -> Result<Cone4> {
    let g = cone_generators(d);
    let fail = |id: &str, detail: &str| Err(Error::invariant(id, detail));

    let a = alpha(d);
    if a.sign() <= 0 {
        return fail("alpha_positive", "α <= 0");
    }
    let gram = &(&g.transpose() * &d.j) * &g;
    match gram.anti_diagonal() {
        Some(e) if e == [a.clone(), -&a, a.clone(), -&a] => {}
        Some(_) => return fail("self_duality", "unexpected anti-diagonal pattern"),
        None => return fail("self_duality", "G^t J G is not anti-diagonal"),
    }

    let s = Mat4::diag([d.q(1, 1), d.q(-1, 1), d.q(1, 1), d.q(-1, 1)]);
    let ap = alpha_prime(d);
    let faces = (&(&s * &g.transpose()) * &d.j).scale(&ap.inv()?);
    if faces != explicit_faces(d) {
        return fail(
            "face_matrix",
            "normalised S' G^t J differs from the explicit M",
        );
    }

    let eig = Mat4::diag([d.q(1, 1), d.q(-1, 1), d.q(1, 1), d.q(-1, 1)]);
    if &d.a * &g != &g * &eig {
        return fail("generator_eigenvectors", "A G != G diag(1,-1,1,-1)");
    }
    let ma = &faces * &d.a;
    for i in 0..4 {
        let (r, rm) = (ma.row(i), faces.row(i));
        let ok = if i % 2 == 0 { r == -&rm } else { r == rm };
        if !ok {
            return fail("MA_rows", &format!("row {} of MA", i + 1));
        }
    }
    let lid = (&d.l1 * &d.cc2 - &d.l2 * &d.cc1) / (&d.cc1 - &d.cc2);
    if lid != d.q(1, 1) {
        return fail("MA_identity", "(L1 cc2 - L2 cc1)/(cc1 - cc2) != 1");
    }
    let (v0, v2, v3) = (g.col(0), g.col(2), g.col(3));
    if d.b.mul_vec(&v0) != v0 || d.b.mul_vec(&v2) != v2 {
        return fail("B_fixes_v0_v2", "B v0 != v0 or B v2 != v2");
    }
    if d.c.mul_vec(&v3) != -&v3 {
        return fail("C_v3", "C v3 != -v3");
    }
    Ok(Cone4 {
        gens: g,
        faces,
        duality_scalar: a,
    })
}

/// The cone `R^k C0`, or `R^k B C0` when `primed`.
pub fn rotated_cone(d: &GroupData, base: &Cone4, k: u32, primed: bool) -> Result<Cone4> {
    if k >= d.n {
        return Err(Error::Domain(format!("k = {k} out of range 0..{}", d.n)));
    }
    let rk = d.r.pow(k);
    let g = if primed { &rk * &d.b } else { rk };
    let gi = g.inverse().expect("group elements are invertible");
    Ok(Cone4 {
        gens: &g * &base.gens,
        faces: &base.faces * &gi,
        duality_scalar: base.duality_scalar.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MembershipVerdict {
    /// Every functional is strictly positive.
    Inside,
    /// All functionals are `>= 0`; `zeros` marks the vanishing ones.
    Boundary { zeros: [bool; 4] },
    /// Functional `pos` is strictly positive and `neg` strictly negative.
    OutsideProjective { pos: usize, neg: usize },
    /// All functionals are `<= 0`: the vector lies in the closed opposite cone.
    OutsideHalf { zeros: [bool; 4] },
}

impl MembershipVerdict {
    pub fn from_signs(s: [i8; 4]) -> Self {
        let zeros = s.map(|x| x == 0);
        if s.iter().all(|&x| x > 0) {
            MembershipVerdict::Inside
        } else if s.iter().all(|&x| x >= 0) {
            MembershipVerdict::Boundary { zeros }
        } else if s.iter().all(|&x| x <= 0) {
            MembershipVerdict::OutsideHalf { zeros }
        } else {
            let pos = s.iter().position(|&x| x > 0).unwrap();
            let neg = s.iter().position(|&x| x < 0).unwrap();
            MembershipVerdict::OutsideProjective { pos, neg }
        }
    }

    pub fn in_closed_cone(&self) -> bool {
        matches!(
            self,
            MembershipVerdict::Inside | MembershipVerdict::Boundary { .. }
        )
    }
}

pub fn membership(cone: &Cone4, v: &Vec4) -> Result<MembershipVerdict> {
    if v.is_zero() {
        return Err(Error::Domain("membership of the zero vector".into()));
    }
    Ok(MembershipVerdict::from_signs(cone.faces.mul_vec(v).signs()))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    #[default]
    Exact,
    /// Screen signs with rational intervals and decide exactly only when an
    /// enclosure contains zero.
    IntervalFirst,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::IntervalFirst => "interval-first",
        })
    }
}

impl std::str::FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "interval-first" => Ok(Backend::IntervalFirst),
            _ => Err(Error::Domain(format!("unknown backend {s:?}"))),
        }
    }
}

pub const VECTOR_IDS: [&str; 5] = ["v0", "v1", "v2", "v3", "Bv1"];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorCheck {
    pub k: u32,
    pub vector_id: String,
    pub entry_signs: [i8; 4],
    pub status: Status,
    /// Exact entries of `MA (-R)^k v`, present when witnesses are requested.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<CycloReal>>,
}

impl PartialEq for VectorCheck {
    fn eq(&self, o: &Self) -> bool {
        self.k == o.k
            && self.vector_id == o.vector_id
            && self.entry_signs == o.entry_signs
            && self.status == o.status
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PingPongCertificate {
    #[serde(rename = "N")]
    pub n: u32,
    pub backend: Backend,
    pub checks: Vec<VectorCheck>,
    pub passed: bool,
}

impl PingPongCertificate {
    /// The first failing check as a structured error.
    pub fn first_failure(&self) -> Option<Error> {
        let c = self.checks.iter().find(|c| c.status == Status::Fail)?;
        let (entry, sign) = c
            .entry_signs
            .iter()
            .enumerate()
            .find(|(_, &s)| s < 0)
            .map(|(i, &s)| (i + 1, s))
            .unwrap_or((0, 0));
        Some(Error::Certificate {
            k: c.k as usize,
            vector: c.vector_id.clone(),
            entry,
            sign,
        })
    }

    /// Same checks, signs and verdict, regardless of backend and witnesses.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.n == other.n && self.checks == other.checks && self.passed == other.passed
    }

    /// Entry signs for `(k, vector_id)`.
    pub fn signs(&self, k: u32, vector_id: &str) -> Option<[i8; 4]> {
        self.checks
            .iter()
            .find(|c| c.k == k && c.vector_id == vector_id)
            .map(|c| c.entry_signs)
    }
}

/// The five test vectors `v0, v1, v2, v3, B v1`.
pub fn test_vectors(d: &GroupData, cone: &Cone4) -> [Vec4; 5] {
    let g = &cone.gens;
    [
        g.col(0),
        g.col(1),
        g.col(2),
        g.col(3),
        d.b.mul_vec(&g.col(1)),
    ]
}

fn pattern_ok(s: &[i8; 4]) -> bool {
    s.iter().all(|&x| x >= 0) && (s[0] > 0 || s[2] > 0) && (s[1] > 0 || s[3] > 0)
}

const SCREEN_BITS: u32 = 128;

fn enclose_vec(v: &Vec4) -> Enc4 {
    std::array::from_fn(|i| v[i].enclose(SCREEN_BITS))
}

type Enc4 = [RatInterval; 4];

fn enclose_mat(m: &Mat4) -> [Enc4; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)].enclose(SCREEN_BITS)))
}

fn enc_mul_vec(m: &[Enc4; 4], v: &Enc4) -> Enc4 {
    std::array::from_fn(|i| {
        let mut acc = &m[i][0] * &v[0];
        for j in 1..4 {
            acc = &acc + &(&m[i][j] * &v[j]);
        }
        acc.round_outward(SCREEN_BITS)
    })
}

/// Interval screen of `MA P v`; entries whose enclosure contains zero are
/// recomputed exactly. Returns the signs and the number of escalations.
fn screened_signs(
    ma: &Mat4,
    p: &Mat4,
    v: &Vec4,
    ma_enc: &[Enc4; 4],
    p_enc: &[Enc4; 4],
    v_enc: &Enc4,
) -> ([i8; 4], usize) {
    let w = enc_mul_vec(ma_enc, &enc_mul_vec(p_enc, v_enc));
    let mut exact_pv: Option<Vec4> = None;
    let mut escalated = 0;
    let signs = std::array::from_fn(|i| match w[i].strict_sign() {
        Some(s) => s,
        None => {
            escalated += 1;
            let pv = exact_pv.get_or_insert_with(|| p.mul_vec(v));
            ma.row(i).dot(pv).sign()
        }
    });
    (signs, escalated)
}

pub fn verify_ping_pong(d: &GroupData) -> Result<PingPongCertificate> {
    verify_ping_pong_with(d, Backend::Exact, false)
}

/// Evaluates the signs of `MA (-R)^k v` for `k in 1..N` and the five test
/// vectors, plus the endpoint `k = N` for `v3`.
pub fn verify_ping_pong_with(
    d: &GroupData,
    backend: Backend,
    witnesses: bool,
) -> Result<PingPongCertificate> {
    let cone = fundamental_cone(d)?;
    let ma = &cone.faces * &d.a;
    let vs = test_vectors(d, &cone);
    let mr = d.minus_r();
    let mut powers = Vec::with_capacity(d.n as usize + 1);
    powers.push(d.identity());
    for k in 1..=d.n as usize {
        powers.push(&powers[k - 1] * &mr);
    }
    let (ma_enc, p_enc, v_enc) = if backend == Backend::IntervalFirst {
        (
            Some(enclose_mat(&ma)),
            powers.iter().map(enclose_mat).collect(),
            vs.iter().map(enclose_vec).collect(),
        )
    } else {
        (None, Vec::new(), Vec::new())
    };

    let grid: Vec<(u32, usize)> = (1..d.n)
        .flat_map(|k| (0..5).map(move |v| (k, v)))
        .chain(std::iter::once((d.n, 3)))
        .collect();

    let checks: Vec<VectorCheck> = grid
        .par_iter()
        .map(|&(k, vi)| {
            let p = &powers[k as usize];
            let v = &vs[vi];
            let (signs, witness) = match backend {
                Backend::Exact => {
                    let w = ma.mul_vec(&p.mul_vec(v));
                    (w.signs(), witnesses.then(|| w.0.to_vec()))
                }
                Backend::IntervalFirst => {
                    let (s, _) = screened_signs(
                        &ma,
                        p,
                        v,
                        ma_enc.as_ref().unwrap(),
                        &p_enc[k as usize],
                        &v_enc[vi],
                    );
                    let w = witnesses.then(|| ma.mul_vec(&p.mul_vec(v)).0.to_vec());
                    (s, w)
                }
            };
            let ok = if k == d.n {
                // endpoint: (-R)^N = -Id and A v3 = -v3 put it back in C0
                signs.iter().all(|&s| s >= 0) && *p == -&d.identity() && d.a.mul_vec(v) == -v
            } else {
                pattern_ok(&signs)
            };
            VectorCheck {
                k,
                vector_id: VECTOR_IDS[vi].to_string(),
                entry_signs: signs,
                status: ok.into(),
                witness,
            }
        })
        .collect();
    let passed = checks.iter().all(|c| c.status == Status::Pass);
    Ok(PingPongCertificate {
        n: d.n,
        backend,
        checks,
        passed,
    })
}
