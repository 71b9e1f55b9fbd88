//! Acceptance criteria, one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sp4_pingpong::cones::{
    alpha, cone_generators, fundamental_cone, verify_ping_pong_with, Backend, PingPongCertificate,
};
use sp4_pingpong::einstein::{
    fundamental_frame, group_frames, in_open_cones, photon_disjoint_from_surface,
    surfaces_relation, CrookedFrame, SurfaceRelation,
};
use sp4_pingpong::identities::{identity_bank, prop_formulas};
use sp4_pingpong::limitset::*;
use sp4_pingpong::linalg::{Mat4, Vec4};
use sp4_pingpong::monodromy::{build_group, verify_conjugacy, verify_relations, GroupData};
use sp4_pingpong::scalar::cyclo_field;
use sp4_pingpong::CycloReal;

const RANGE: std::ops::RangeInclusive<u32> = 4..=30;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

struct Shared {
    groups: Vec<GroupData>,
    exact: Vec<(PingPongCertificate, f64)>,
    interval: Vec<PingPongCertificate>,
}

fn shared() -> Shared {
    let groups: Vec<GroupData> = RANGE
        .into_par_iter()
        .map(|n| build_group(n).unwrap())
        .collect();
    let exact = groups
        .par_iter()
        .map(|d| {
            let t = Instant::now();
            let c = verify_ping_pong_with(d, Backend::Exact, false).unwrap();
            (c, t.elapsed().as_secs_f64())
        })
        .collect();
    let interval = groups
        .par_iter()
        .map(|d| verify_ping_pong_with(d, Backend::IntervalFirst, false).unwrap())
        .collect();
    Shared {
        groups,
        exact,
        interval,
    }
}

fn c1_certificate(s: &Shared) -> Outcome {
    let mut bad = Vec::new();
    let mut slowest: f64 = 0.0;
    for (d, (c, t)) in s.groups.iter().zip(&s.exact) {
        slowest = slowest.max(*t);
        let count = (d.n as usize - 1) * 5 + 1;
        if !c.passed || c.checks.len() != count || *t >= 10.0 {
            bad.push(d.n);
        }
    }
    outcome(
        bad.is_empty(),
        format!("N=4..=30 exact, (N-1)*5+1 checks each, slowest {slowest:.3}s, failing {bad:?}"),
    )
}

fn c2_boundary(s: &Shared) -> Outcome {
    let mut bad = Vec::new();
    for (d, (c, _)) in s.groups.iter().zip(&s.exact) {
        let n = d.n;
        let ok = (1..n).all(|k| (c.signs(k, "v2").unwrap()[2] == 0) == (k == 1 || k == n - 1));
        if !ok {
            bad.push(n);
        }
    }
    outcome(
        bad.is_empty(),
        format!("zero entry exactly at k in {{1, N-1}}, failing {bad:?}"),
    )
}

fn c3_relations(s: &Shared) -> Outcome {
    let bad: Vec<u32> = s
        .groups
        .par_iter()
        .filter(|d| !verify_relations(d).passed)
        .map(|d| d.n)
        .collect();
    outcome(
        bad.is_empty(),
        format!("involutions, anti-symplectic, R^N = ±Id by parity, failing {bad:?}"),
    )
}

fn c4_conjugacy(s: &Shared) -> Outcome {
    let bad: Vec<u32> = s
        .groups
        .par_iter()
        .filter(|d| !verify_conjugacy(d).passed)
        .map(|d| d.n)
        .collect();
    outcome(
        bad.is_empty(),
        format!("charpoly(R), rank(T-Id)=1, (CA-Id)^4=0≠(CA-Id)^3, failing {bad:?}"),
    )
}

fn c5_self_duality(s: &Shared) -> Outcome {
    let bad: Vec<u32> = s
        .groups
        .iter()
        .filter(|d| {
            let g = cone_generators(d);
            let gram = &(&g.transpose() * &d.j) * &g;
            !(fundamental_cone(d).is_ok()
                && alpha(d).is_positive()
                && gram.anti_diagonal().is_some())
        })
        .map(|d| d.n)
        .collect();
    outcome(
        bad.is_empty(),
        format!("anti-diagonal Gram matrix with alpha > 0, failing {bad:?}"),
    )
}

fn c6_l_constants(s: &Shared) -> Outcome {
    let bad: Vec<u32> = s
        .groups
        .iter()
        .filter(|d| {
            let one = d.q(1, 1);
            let lhs = &d.q(3, 1) * &(&d.l1 + &d.l2);
            !(lhs == &(&d.l1 + &one) * &d.cc2
                && lhs == &(&d.l2 + &one) * &d.cc1
                && (&d.l1 - &d.q(1, 2)).is_negative()
                && (&(&d.l1 + &d.l2) - &one).is_negative())
        })
        .map(|d| d.n)
        .collect();
    outcome(
        bad.is_empty(),
        format!("3(L1+L2) = (L1+1)cc2 = (L2+1)cc1, L1 < 1/2, L1+L2 < 1, failing {bad:?}"),
    )
}

fn c7_identities(s: &Shared) -> Outcome {
    let results: Vec<(u32, usize, bool)> = s
        .groups
        .par_iter()
        .filter(|d| d.n <= 20)
        .flat_map_iter(|d| {
            (1..i64::from(d.n)).map(move |k| {
                let a = identity_bank(d, k);
                let b = prop_formulas(d, k);
                (
                    d.n,
                    a.conditions.len() + b.conditions.len(),
                    a.passed && b.passed,
                )
            })
        })
        .collect();
    let total: usize = results.iter().map(|r| r.1).sum();
    let bad: Vec<u32> = results.iter().filter(|r| !r.2).map(|r| r.0).collect();
    outcome(
        bad.is_empty(),
        format!("N=4..=20, all k, {total} exact conditions, failing N {bad:?}"),
    )
}

fn c8_photon_equivalence(s: &Shared) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = 0;
    let mut positives = 0;
    let mut total = 0;
    for d in s.groups.iter().filter(|d| [4, 5, 7].contains(&d.n)) {
        let f = fundamental_frame(d).unwrap();
        for _ in 0..1000 {
            let v = loop {
                let v = Vec4(std::array::from_fn(|_| {
                    d.q(rng.gen_range(-40..=40), rng.gen_range(1..=12))
                }));
                if !v.is_zero() {
                    break v;
                }
            };
            let ii = photon_disjoint_from_surface(&v, &f);
            mismatches += (ii != in_open_cones(&v, &f)) as usize;
            positives += ii as usize;
            total += 1;
        }
    }
    outcome(
        mismatches == 0 && total == 3000 && positives > 0,
        format!("{total} random rational vectors over N in {{4,5,7}}, {positives} disjoint, {mismatches} mismatches"),
    )
}

fn c9_tangency() -> Outcome {
    let f = CrookedFrame::standard(&cyclo_field(16).unwrap());
    let q = |p, r| CycloReal::ratio_in(f.field(), p, r);
    let e1 = &(&(&f.e1 + &f.f2) + &f.e2.scale(&q(1, 2))) + &f.f1.scale(&q(1, 6));
    let e2 = &f.e2 + &f.f1;
    let f2 = &(&f.f2 + &f.e2) + &f.f1.scale(&q(1, 2));
    let u = &Mat4::from_cols([e1, f.f1.clone(), e2, f2]) * &f.matrix().inverse().unwrap();
    let nil = &u - &Mat4::identity(f.field());
    let n3 = &(&nil * &nil) * &nil;
    let mum = (&n3 * &nil).is_zero() && !n3.is_zero();
    let symplectic = &(&u.transpose() * &f.pairing) * &u == f.pairing;
    let g = f.transform(&u).unwrap();
    let tangent = surfaces_relation(&f, &g)
        == SurfaceRelation::PhotonTangent {
            photon: f.f1.clone(),
        };
    outcome(
        mum && symplectic && tangent,
        format!("PhotonTangent along phi(f1) {tangent}, U symplectic {symplectic}, maximally unipotent {mum}"),
    )
}

fn c10_backends(s: &Shared) -> Outcome {
    let bad: Vec<u32> = s
        .exact
        .iter()
        .zip(&s.interval)
        .filter(|((e, _), i)| !e.agrees_with(i))
        .map(|((e, _), _)| e.n)
        .collect();
    outcome(
        bad.is_empty(),
        format!("interval-first equals exact for N=4..=30, failing {bad:?}"),
    )
}

fn c11_limit_set(s: &Shared) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    // equivariance of sampled curve points
    let mut equiv: f64 = 0.0;
    for d in s.groups.iter().filter(|d| d.n <= 6) {
        let refl = Reflections::new(d).unwrap();
        let seeds = curve_seeds(d).unwrap();
        let samples = limit_curve_samples(d, 4, SampleLimits::default()).unwrap();
        for smp in samples.iter().filter(|x| x.depth < 4) {
            let SamplePoint::Projective(p) = smp.point else {
                unreachable!()
            };
            for j in 0..2 * d.n as u16 {
                let moved = projective_normalize(
                    &(refl.mats[j as usize] * nalgebra::Vector4::from(p)).into(),
                );
                let target =
                    projective_normalize(&refl.apply(&smp.word.left_mul(j), &seeds[smp.source]));
                equiv = equiv.max(angular_distance(&moved, &target));
            }
        }
    }
    // floating against exact transport of frame vertices
    let mut transport: f64 = 0.0;
    for d in s.groups.iter().filter(|d| d.n <= 8) {
        let refl = Reflections::new(d).unwrap();
        let frames = group_frames(d).unwrap();
        let letters = 2 * d.n as u16;
        let mut words = enumerate_words(d.n, 2).unwrap();
        for _ in 0..40 {
            let len = rng.gen_range(3..=6);
            let mut w: Vec<u16> = Vec::with_capacity(len);
            while w.len() < len {
                let l = rng.gen_range(0..letters);
                if w.last() != Some(&l) {
                    w.push(l);
                }
            }
            words.push(Word(w));
        }
        for w in &words {
            let m = word_matrix_exact(d, w).unwrap();
            let fr = &frames[rng.gen_range(0..frames.len())];
            for v in fr.vertices() {
                let exact = m.mul_vec(v).to_f64();
                let float = refl.apply(w, &v.to_f64());
                let en = exact.iter().map(|x| x * x).sum::<f64>().sqrt();
                let rel = (0..4)
                    .map(|i| (exact[i] / en - float[i]).powi(2))
                    .sum::<f64>()
                    .sqrt();
                transport = transport.max(rel);
            }
        }
    }
    // null quadric
    let mut qmax: f64 = 0.0;
    let mut count = 0;
    for d in s.groups.iter().filter(|d| d.n <= 7) {
        for smp in limit_surface_samples(d, 2, 4, SampleLimits::default()).unwrap() {
            let SamplePoint::Lagrangian(w) = smp.point else {
                unreachable!()
            };
            qmax = qmax.max(q_f64(&w).abs());
            count += 1;
        }
    }
    // byte-determinism of exports
    let dir = tempfile::tempdir().unwrap();
    let mut deterministic = true;
    for fmt in [ExportFormat::Csv, ExportFormat::Ply, ExportFormat::Json] {
        let render = |name: &str| {
            let d = &s.groups[1];
            let samples = limit_surface_samples(d, 1, 3, SampleLimits::default()).unwrap();
            let cloud = PointCloud::new(PointKind::Lagrangian, samples).unwrap();
            let p = dir.path().join(name);
            export_point_cloud(&cloud, &p, fmt).unwrap();
            std::fs::read(p).unwrap()
        };
        deterministic &= render("a") == render("b");
    }
    let ok = equiv <= 1e-8 && transport <= 1e-10 && qmax <= 1e-9 && deterministic;
    outcome(
        ok,
        format!(
            "equivariance {equiv:.1e} (≤1e-8), transport {transport:.1e} (≤1e-10), |q| max {qmax:.1e} over {count} samples (≤1e-9), exports deterministic {deterministic}"
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let s = shared();
    let criteria: Vec<(&str, Outcome)> = vec![
        ("ping-pong certificate", c1_certificate(&s)),
        ("boundary sharpness", c2_boundary(&s)),
        ("group relations", c3_relations(&s)),
        ("conjugacy data", c4_conjugacy(&s)),
        ("cone self-duality", c5_self_duality(&s)),
        ("L-constants", c6_l_constants(&s)),
        ("identity bank", c7_identities(&s)),
        ("photon disjointness equivalence", c8_photon_equivalence(&s)),
        ("tangency", c9_tangency()),
        ("backend consistency", c10_backends(&s)),
        ("limit-set properties", c11_limit_set(&s)),
    ];
    let mut all = true;
    for (i, (name, o)) in criteria.iter().enumerate() {
        all &= o.ok;
        println!(
            "criterion {:>2} {:<32} {}  {}",
            i + 1,
            name,
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} in {:.1}s",
        if all { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
