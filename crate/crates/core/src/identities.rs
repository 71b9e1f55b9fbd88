//! Exact checks of the trigonometric identities used to bound the entries of
//! `MA (-R)^k v`.

use std::time::Instant;

use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::Mat4;
use crate::monodromy::{build_group, GroupData};
use crate::report::Report;
use crate::scalar::CycloReal;

struct Ctx<'a> {
    d: &'a GroupData,
    k: i64,
}

impl Ctx<'_> {
    /// `(cos, sin)` of `(h/2)·θ` with `θ = π/N`.
    fn half(&self, h: i64) -> (CycloReal, CycloReal) {
        self.d.cos_sin(h, 2 * self.d.n)
    }

    fn cos(&self, h: i64) -> CycloReal {
        self.half(h).0
    }

    fn sin(&self, h: i64) -> CycloReal {
        self.half(h).1
    }

    fn q(&self, p: i64) -> CycloReal {
        self.d.q(p, 1)
    }

    /// `cp1, cp2, sp1, sp2`.
    fn powers(&self) -> [CycloReal; 4] {
        let k = self.k;
        [
            self.cos(6 * k),
            self.cos(2 * k),
            -self.sin(6 * k),
            -self.sin(2 * k),
        ]
    }
}

fn eq(rep: &mut Report, id: &str, lhs: &CycloReal, rhs: &CycloReal) {
    let ok = lhs == rhs;
    if ok {
        rep.check(id, true);
    } else {
        rep.check_with(id, false, json!({"lhs": lhs.to_f64(), "rhs": rhs.to_f64()}));
    }
}

fn sign_claim(rep: &mut Report, id: &str, x: &CycloReal, ok: impl Fn(i8) -> bool) {
    let s = x.sign();
    rep.check_with(id, ok(s), json!({"sign": s}));
}

fn check_range(n: u32, k: i64, lo: i64) -> Result<()> {
    if n < 4 || k < lo || k > i64::from(n) - 1 {
        return Err(Error::Domain(format!(
            "need N >= 4 and {lo} <= k <= N-1, got N = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// The trigonometric identity bank and its sign claims for one `(N, k)`.
pub fn check_identity_bank(n: u32, k: i64) -> Result<Report> {
    check_range(n, k, 1)?;
    let d = build_group(n)?;
    Ok(identity_bank(&d, k))
}

pub fn identity_bank(d: &GroupData, k: i64) -> Report {
    let start = Instant::now();
    let mut rep = Report::new(d.n);
    let x = Ctx { d, k };
    let (one, two, three, four) = (x.q(1), x.q(2), x.q(3), x.q(4));

    for (tag, h) in [("theta", 2), ("k_theta", 2 * k)] {
        let (c, s) = x.half(h);
        let (c2, _) = x.half(2 * h);
        let (c3, s3) = x.half(3 * h);
        let (_, s2) = x.half(2 * h);
        eq(
            &mut rep,
            &format!("sin_triple_a[{tag}]"),
            &s3,
            &(&s * (&three - &four * s.square())),
        );
        eq(
            &mut rep,
            &format!("sin_triple_b[{tag}]"),
            &s3,
            &(&s * (&two * &c2 + &one)),
        );
        eq(
            &mut rep,
            &format!("cos_triple_a[{tag}]"),
            &c3,
            &(&c * (&four * c.square() - &three)),
        );
        eq(
            &mut rep,
            &format!("cos_triple_b[{tag}]"),
            &c3,
            &(&c * (&two * &c2 - &one)),
        );
        let dc = &c3 - &c;
        eq(
            &mut rep,
            &format!("cos_diff_a[{tag}]"),
            &dc,
            &(&two * &c * (&c2 - &one)),
        );
        eq(
            &mut rep,
            &format!("cos_diff_b[{tag}]"),
            &dc,
            &(-(&four * &c * s.square())),
        );
        eq(
            &mut rep,
            &format!("cos_diff_c[{tag}]"),
            &dc,
            &(-(&two * &s * &s2)),
        );
        eq(
            &mut rep,
            &format!("sin_diff[{tag}]"),
            &(&s3 - &s),
            &(&two * &s * &c2),
        );
    }

    let (ct, st) = x.half(2);
    let (c3t, s3t) = x.half(6);
    eq(&mut rep, "c1_theta", &d.c1, &-&c3t);
    eq(&mut rep, "s1_theta", &d.s1, &s3t);
    eq(&mut rep, "c2_theta", &d.c2, &-&ct);
    eq(&mut rep, "s2_theta", &d.s2, &st);

    let (ch, sh) = x.half(1);
    let (c3h, s3h) = x.half(3);
    let r1 = &d.cc1 / &d.s1;
    let r2 = &d.cc2 / &d.s2;
    eq(&mut rep, "cc1_over_s1", &r1, &(&c3h / &s3h));
    eq(&mut rep, "cc2_over_s2", &r2, &(&ch / &sh));

    let l_common = &three * (&d.l1 + &d.l2);
    let prod = &d.cc1 * &d.cc2;
    let closed = (x.q(6) * &prod) / (-&prod + &three * (&d.cc1 + &d.cc2));
    eq(
        &mut rep,
        "L_identity_cc2",
        &l_common,
        &((&d.l1 + &one) * &d.cc2),
    );
    eq(
        &mut rep,
        "L_identity_cc1",
        &l_common,
        &((&d.l2 + &one) * &d.cc1),
    );
    eq(&mut rep, "L_identity_closed", &l_common, &closed);

    let dc12 = &d.c1 - &d.c2;
    eq(
        &mut rep,
        "c1_minus_c2_a",
        &dc12,
        &(-(&four * &d.c2 * d.s2.square())),
    );
    eq(
        &mut rep,
        "c1_minus_c2_b",
        &dc12,
        &(&four * (&d.c2 - &one) * &d.c2 * (&d.c2 + &one)),
    );
    sign_claim(&mut rep, "c1_minus_c2_positive", &dc12, |s| s > 0);

    let rd = &r2 - &r1;
    eq(&mut rep, "ratio_difference_a", &rd, &(&st / (&sh * &s3h)));
    eq(&mut rep, "ratio_difference_b", &rd, &(&two * &ch / &s3h));

    let [cp1, cp2, sp1, sp2] = x.powers();
    let z = || x.q(0);
    let rk = Mat4::from_rows([
        [cp1.clone(), -&sp1, z(), z()],
        [sp1.clone(), cp1.clone(), z(), z()],
        [z(), z(), cp2.clone(), -&sp2],
        [z(), z(), sp2.clone(), cp2.clone()],
    ]);
    rep.check("minus_R_power", d.minus_r().pow(k as u32) == rk);

    let (c2k, s_k) = (x.cos(4 * k), x.sin(2 * k));
    let s3k = x.sin(6 * k);
    let c2t = x.cos(4);
    let q1 = &sp1 / &d.s1;
    let q2 = &sp2 / &d.s2;

    let diff = &q1 - &q2;
    let inner = (-(&s3k / &s_k)) + &s3t / &st;
    eq(
        &mut rep,
        "sine_powers_difference_a",
        &diff,
        &(&s_k / &s3t * inner),
    );
    eq(
        &mut rep,
        "sine_powers_difference_b",
        &diff,
        &(&two * &s_k / &s3t * (&c2t - &c2k)),
    );
    let edge = k == 1 || k == i64::from(d.n) - 1;
    sign_claim(&mut rep, "sine_powers_difference_sign", &diff, |s| {
        if edge {
            s == 0
        } else {
            s > 0
        }
    });

    let sum = &q1 + &q2;
    let inner = -(&s_k / &s3t) * (&s3k / &s_k + &s3t / &st);
    eq(&mut rep, "sine_powers_sum_a", &sum, &inner);
    eq(
        &mut rep,
        "sine_powers_sum_b",
        &sum,
        &(-(&two * &s_k / &s3t) * (&c2k + &c2t + &one)),
    );
    sign_claim(&mut rep, "sine_powers_sum_sign", &sum, |s| s <= 0);

    let hd = &r1 * &sp1 - &r2 * &sp2;
    let cot3 = &c3h / &s3h;
    let coth = &ch / &sh;
    eq(
        &mut rep,
        "half_angle_difference_a",
        &hd,
        &(-(&cot3 * &s3k) + &coth * &s_k),
    );
    eq(
        &mut rep,
        "half_angle_difference_b",
        &hd,
        &(&s_k * (-(&cot3 * (&two * &c2k + &one)) + &coth)),
    );
    eq(
        &mut rep,
        "half_angle_difference_c",
        &hd,
        &(&s_k * (-(&two * &c2k * &cot3) + &st / (&s3h * &sh))),
    );
    eq(
        &mut rep,
        "half_angle_difference_d",
        &hd,
        &(&two * &s_k / &s3h * (&ch - &c2k * &c3h)),
    );
    sign_claim(&mut rep, "half_angle_difference_sign", &hd, |s| s > 0);

    let hs = &r1 * &sp1 + &r2 * &sp2;
    let s2t = x.sin(4);
    eq(
        &mut rep,
        "half_angle_sum_a",
        &hs,
        &(-(&cot3 * &s3k) - &coth * &s_k),
    );
    eq(
        &mut rep,
        "half_angle_sum_b",
        &hs,
        &(&s_k * (-(&two * &c2k * &cot3) - &s2t / (&s3h * &sh))),
    );
    eq(
        &mut rep,
        "half_angle_sum_c",
        &hs,
        &(-(&two * &s_k / &s3h) * (&c2k * &c3h + &two * &ct * &ch)),
    );
    sign_claim(&mut rep, "half_angle_sum_sign", &hs, |s| s < 0);

    rep.timed(start)
}

/// The six closed forms for combinations of `cp_i`, `sp_i` and the ratios
/// `cc_i/s_i`, in both sign branches. `k = 0` is accepted.
pub fn check_prop_formulas(n: u32, k: i64) -> Result<Report> {
    check_range(n, k, 0)?;
    let d = build_group(n)?;
    Ok(prop_formulas(&d, k))
}

pub fn prop_formulas(d: &GroupData, k: i64) -> Report {
    let start = Instant::now();
    let mut rep = Report::new(d.n);
    let x = Ctx { d, k };
    let [cp1, cp2, sp1, sp2] = x.powers();
    let four = x.q(4);
    let (ch, sh) = x.half(1);
    let (c3h, s3h) = x.half(3);
    let a1 = &d.cc1 / &d.s1;
    let a2 = &d.cc2 / &d.s2;
    let b1 = &d.s1 / &d.cc1;
    let b2 = &d.s2 / &d.cc2;
    let s_k = x.sin(2 * k);

    for (tag, sg) in [("upper", 1i64), ("lower", -1i64)] {
        let g = x.q(sg);
        // the cosine term carries the opposite sign to the half-step
        eq(
            &mut rep,
            &format!("cc_s_1[{tag}]"),
            &(-(&g * &cp1) - &a1 * &sp1),
            &(x.sin(3 * (2 * k - sg)) / &s3h),
        );
        eq(
            &mut rep,
            &format!("cc_s_2[{tag}]"),
            &(-(&g * &cp2) - &a2 * &sp2),
            &(x.sin(2 * k - sg) / &sh),
        );
        eq(
            &mut rep,
            &format!("cc_s_3[{tag}]"),
            &(&g * (&cp1 - &cp2) - &a1 * &sp1 + &a2 * &sp2),
            &(-(&four * x.sin(2 * k + sg) / &s3h * &s_k * x.sin(2 * (k + sg)))),
        );
        eq(
            &mut rep,
            &format!("s_cc_1[{tag}]"),
            &(&cp1 + &g * &b1 * &sp1),
            &(x.cos(3 * (2 * k + sg)) / &c3h),
        );
        eq(
            &mut rep,
            &format!("s_cc_2[{tag}]"),
            &(&cp2 + &g * &b2 * &sp2),
            &(x.cos(2 * k + sg) / &ch),
        );
        eq(
            &mut rep,
            &format!("s_cc_3[{tag}]"),
            &(&cp1 - &cp2 + &g * (&b1 * &sp1 - &b2 * &sp2)),
            &(-(&four * x.cos(2 * k + sg) / &c3h * &s_k * x.sin(2 * (k + sg)))),
        );
    }
    rep.timed(start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bank_examples() {
        let r = check_identity_bank(6, 1).unwrap();
        let bad: Vec<_> = r.failures().map(|c| c.id.clone()).collect();
        assert!(r.passed, "{bad:?}");
        let d = build_group(6).unwrap();
        let [_, _, sp1, sp2] = Ctx { d: &d, k: 1 }.powers();
        assert!((&sp1 / &d.s1 - &sp2 / &d.s2).is_zero());
        let [_, _, sp1, sp2] = Ctx { d: &d, k: 3 }.powers();
        assert!((&sp1 / &d.s1 + &sp2 / &d.s2).sign() <= 0);
    }

    #[test]
    fn prop_examples() {
        let r = check_prop_formulas(5, 2).unwrap();
        let bad: Vec<_> = r.failures().map(|c| c.id.clone()).collect();
        assert!(r.passed, "{bad:?}");
        assert!(check_prop_formulas(5, 0).unwrap().passed);
        assert!(check_identity_bank(5, 0).is_err());
        assert!(check_identity_bank(5, 5).is_err());
    }
}
