use nalgebra::Vector4;
use sp4_pingpong::einstein::group_frames;
use sp4_pingpong::limitset::*;
use sp4_pingpong::monodromy::build_group;

#[test]
fn curve_depth_one_is_reflection_of_seed() {
    let d = build_group(4).unwrap();
    let refl = Reflections::new(&d).unwrap();
    let seeds = curve_seeds(&d).unwrap();
    let samples = limit_curve_samples(&d, 1, SampleLimits::default()).unwrap();
    let mut checked = 0;
    for s in samples.iter().filter(|s| s.word == Word(vec![0])) {
        let v = refl.mats[0] * Vector4::from(seeds[s.source]);
        let expect = projective_normalize(&v.into());
        match &s.point {
            SamplePoint::Projective(p) => assert!(angular_distance(p, &expect) < 1e-14),
            _ => panic!("curve samples are projective"),
        }
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn curve_samples_are_normalized_and_distinct() {
    let d = build_group(5).unwrap();
    let samples = limit_curve_samples(&d, 3, SampleLimits::default()).unwrap();
    let pts: Vec<[f64; 4]> = samples
        .iter()
        .map(|s| match s.point {
            SamplePoint::Projective(p) => p,
            _ => unreachable!(),
        })
        .collect();
    for p in &pts {
        let n: f64 = p.iter().map(|x| x * x).sum();
        assert!((n - 1.0).abs() < 1e-12);
        let first = p.iter().find(|x| x.abs() > 1e-12).unwrap();
        assert!(*first > 0.0);
    }
    for (i, p) in pts.iter().enumerate().take(200) {
        for q in &pts[i + 1..] {
            assert!(angular_distance(p, q) > DEDUP_TOL);
        }
    }
    assert!(samples
        .windows(2)
        .all(|w| w[0].word.key() <= w[1].word.key()));
}

#[test]
fn curve_is_equivariant() {
    let d = build_group(4).unwrap();
    let refl = Reflections::new(&d).unwrap();
    let seeds = curve_seeds(&d).unwrap();
    let samples = limit_curve_samples(&d, 3, SampleLimits::default()).unwrap();
    let mut worst: f64 = 0.0;
    for s in samples.iter().filter(|s| s.depth < 3) {
        let SamplePoint::Projective(p) = s.point else {
            unreachable!()
        };
        for j in 0..8u16 {
            let moved = projective_normalize(&(refl.mats[j as usize] * Vector4::from(p)).into());
            let shifted = s.word.left_mul(j);
            let target = projective_normalize(&refl.apply(&shifted, &seeds[s.source]));
            worst = worst.max(angular_distance(&moved, &target));
        }
    }
    assert!(worst <= 1e-8, "equivariance residual {worst}");
}

#[test]
fn surface_samples_are_null() {
    let d = build_group(4).unwrap();
    let samples = limit_surface_samples(&d, 2, 4, SampleLimits::default()).unwrap();
    assert!(!samples.is_empty());
    for s in &samples {
        let SamplePoint::Lagrangian(w) = s.point else {
            unreachable!()
        };
        assert!(q_f64(&w).abs() <= 1e-9);
        assert!(s.word.0.last().is_none_or(|&l| l as usize != s.source));
    }
    let attractors = samples
        .iter()
        .filter(|s| s.depth == 0 && s.flags.contains(&"attractor"))
        .map(|s| s.source)
        .collect::<std::collections::BTreeSet<_>>();
    assert_eq!(attractors.len(), 8);
}

#[test]
fn depth_zero_surface_samples_lie_on_their_surfaces() {
    let d = build_group(4).unwrap();
    let frames = group_frames(&d).unwrap();
    let ff = frames_f64(&d).unwrap();
    let j = d.j.to_f64();
    let samples = limit_surface_samples(&d, 0, 3, SampleLimits::default()).unwrap();
    let reference = ff[0];
    for s in samples.iter().filter(|s| s.flags.contains(&"wing_e")) {
        let SamplePoint::Lagrangian(w) = s.point else {
            unreachable!()
        };
        let e1 = ff[s.source][0];
        let e2 = ff[s.source][2];
        let edge = plucker_f64(&e1, &e2, &reference, &j);
        // photons over [e1, e2] meet L_{e1 e2}, so their members pair to zero with it
        assert!(pair_f64(&w, &edge).abs() < 1e-9);
    }
    assert_eq!(frames.len(), 8);
}

#[test]
fn float_and_exact_frame_transport_agree() {
    for n in [4u32, 6, 8] {
        let d = build_group(n).unwrap();
        let refl = Reflections::new(&d).unwrap();
        let frames = group_frames(&d).unwrap();
        let words = enumerate_words(n, 6).unwrap();
        let step = words.len() / 25;
        let mut worst: f64 = 0.0;
        for w in words.iter().step_by(step.max(1)).chain(words.last()) {
            let m = word_matrix_exact(&d, w).unwrap();
            for v in frames[1].vertices() {
                let exact = projective_normalize(&m.mul_vec(v).to_f64());
                let float = projective_normalize(&refl.apply(w, &v.to_f64()));
                worst = worst.max(angular_distance(&exact, &float));
            }
        }
        assert!(worst <= 1e-10, "N={n}: {worst}");
    }
}

#[test]
fn chart_is_finite_off_the_null_cone() {
    let d = build_group(4).unwrap();
    let chart = MinkowskiChart::new(&DEFAULT_BASEPOINT).unwrap();
    let samples = limit_surface_samples(&d, 1, 3, SampleLimits::default()).unwrap();
    let mut hits = 0;
    for s in &samples {
        let SamplePoint::Lagrangian(w) = s.point else {
            unreachable!()
        };
        match chart.coords(&w) {
            ChartPoint::Point(p) => {
                assert!(p.iter().all(|x| x.is_finite()));
                hits += 1;
            }
            ChartPoint::ChartMiss => assert!(pair_f64(&w, &DEFAULT_BASEPOINT).abs() < 1e-9),
        }
    }
    assert!(hits > samples.len() / 2);
    assert!(minkowski_chart(&[1.0, 0.0, 1.0, 0.0, 0.0], &DEFAULT_BASEPOINT).is_err());
}

#[test]
fn chart_accepts_transverse_null_points() {
    let chart = MinkowskiChart::new(&DEFAULT_BASEPOINT).unwrap();
    let (w0, w2, w3, w4) = (0.3, -0.7, 2.0, 0.9);
    let p = [w0, (w0 * w4 + w2 * w2) / w3, w2, w3, w4];
    assert!(q_f64(&p).abs() < 1e-12);
    assert!(matches!(chart.coords(&p), ChartPoint::Point(_)));
}

fn cloud(n: usize) -> PointCloud {
    let d = build_group(4).unwrap();
    let mut s = limit_curve_samples(&d, 1, SampleLimits::default()).unwrap();
    s.truncate(n);
    PointCloud::new(PointKind::Projective, s).unwrap()
}

#[test]
fn exports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for fmt in [ExportFormat::Csv, ExportFormat::Ply, ExportFormat::Json] {
        let a = dir.path().join(format!("a.{fmt:?}"));
        let b = dir.path().join(format!("b.{fmt:?}"));
        export_point_cloud(&cloud(20), &a, fmt).unwrap();
        export_point_cloud(&cloud(20), &b, fmt).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
}

#[test]
fn export_shapes() {
    let csv = cloud(3).render(ExportFormat::Csv);
    assert_eq!(csv.lines().count(), 4);
    assert_eq!(csv.lines().next().unwrap(), "depth,word,x0,x1,x2,x3,flags");
    let empty = cloud(0).render(ExportFormat::Csv);
    assert_eq!(empty.lines().count(), 1);
    let ply = cloud(0).render(ExportFormat::Ply);
    assert!(ply.starts_with("ply\nformat ascii 1.0\n"));
    assert!(ply.contains("element vertex 0\n") && ply.ends_with("end_header\n"));
    let json: serde_json::Value =
        serde_json::from_str(&cloud(3).render(ExportFormat::Json)).unwrap();
    assert_eq!(json["schema"], SCHEMA);
    assert_eq!(json["count"], 3);
    assert_eq!(json["samples"].as_array().unwrap().len(), 3);
}

#[test]
fn export_reports_path_on_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("x.csv");
    let err = export_point_cloud(&cloud(1), &path, ExportFormat::Csv).unwrap_err();
    assert!(err.to_string().contains("missing"));
}

#[test]
fn mixed_kinds_are_rejected() {
    let c = cloud(2);
    assert!(PointCloud::new(PointKind::Lagrangian, c.samples).is_err());
}
