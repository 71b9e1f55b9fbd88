use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sp4_pingpong::cones::cone_generators;
use sp4_pingpong::einstein::*;
use sp4_pingpong::linalg::{Mat4, Vec4};
use sp4_pingpong::monodromy::build_group;
use sp4_pingpong::scalar::cyclo_field;
use sp4_pingpong::CycloReal;

fn comb(f: &CrookedFrame, c: [i64; 4]) -> Vec4 {
    let k = |n| CycloReal::ratio_in(f.field(), n, 1);
    let t = [
        f.e1.scale(&k(c[0])),
        f.f1.scale(&k(c[1])),
        f.e2.scale(&k(c[2])),
        f.f2.scale(&k(c[3])),
    ];
    &(&t[0] + &t[1]) + &(&t[2] + &t[3])
}

fn random_vec(f: &CrookedFrame, rng: &mut ChaCha8Rng) -> Vec4 {
    loop {
        let v = comb(f, std::array::from_fn(|_| rng.gen_range(-6..=6)));
        if !v.is_zero() {
            return v;
        }
    }
}

fn random_lagrangian(f: &CrookedFrame, rng: &mut ChaCha8Rng) -> Lagrangian {
    loop {
        let x = random_vec(f, rng);
        let y = random_vec(f, rng);
        let z = random_vec(f, rng);
        let ixz = f.pair(&x, &z);
        if ixz.is_zero() {
            continue;
        }
        let y = &y - &z.scale(&(&f.pair(&x, &y) / &ixz));
        if let Ok(l) = f.lagrangian(&x, &y) {
            return l;
        }
    }
}

fn rational(f: &CrookedFrame, p: i64, q: i64) -> CycloReal {
    CycloReal::ratio_in(f.field(), p, q)
}

#[test]
fn photon_members_are_null_and_contain_base() {
    let f = CrookedFrame::standard(&cyclo_field(16).unwrap());
    let v = comb(&f, [2, -1, 3, 1]);
    let ph = photon(&v, &f.pairing).unwrap();
    for (s, t) in [(1, 0), (0, 1), (3, -2), (-5, 7)] {
        let l = ph.member(&rational(&f, s, 1), &rational(&f, t, 1));
        assert!(l.plucker(&f).q().is_zero());
        assert!(f.pair(&l.x, &l.y).is_zero());
        assert!(ph.contains(&l));
    }
}

#[test]
fn involution_preserves_photons_over_the_e_edge() {
    let f = CrookedFrame::standard(&cyclo_field(16).unwrap());
    let v = comb(&f, [1, 0, 1, 0]);
    let ph = photon(&v, &f.pairing).unwrap();
    for (s, t) in [(1, 0), (0, 1), (1, 1), (2, -5)] {
        let l = ph.member(&rational(&f, s, 1), &rational(&f, t, 1));
        assert!(ph.contains(&l.transform(&f.involution)));
    }
}

#[test]
fn small_component_example() {
    let f = CrookedFrame::standard(&cyclo_field(16).unwrap());
    let l = f
        .lagrangian(&comb(&f, [1, 1, 1, 1]), &comb(&f, [1, 0, -1, 0]))
        .unwrap();
    assert_eq!(classify_lagrangian(&l, &f), Position::SmallComponent);
    let al = l.transform(&f.involution);
    assert_eq!(classify_lagrangian(&al, &f), Position::BigComponent);
}

#[test]
fn involution_swaps_components_and_stems() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = CrookedFrame::standard(&cyclo_field(16).unwrap());
    let mut seen = std::collections::HashSet::new();
    for _ in 0..400 {
        let l = random_lagrangian(&f, &mut rng);
        let p = classify_lagrangian(&l, &f);
        seen.insert(format!("{p:?}"));
        assert!(l.plucker(&f).q().is_zero());
        assert_eq!(
            classify_lagrangian(&l.transform(&f.involution), &f),
            p.reflected()
        );
    }
    assert!(seen.contains("SmallComponent") && seen.contains("BigComponent"));
}

#[test]
fn surface_members_classify_to_their_part() {
    let f = CrookedFrame::standard(&cyclo_field(16).unwrap());
    let params = [(1, 2), (2, 1), (1, 5), (3, 3)];
    for part in SurfacePart::ALL {
        for &(a0, a1) in &params {
            for &(b0, b1) in &params {
                let (a, b) = match part {
                    SurfacePart::WingE | SurfacePart::WingF => ((a0, a1), (b0, -b1)),
                    SurfacePart::StemPlus => ((a0, a1), (b0, -b1)),
                    SurfacePart::StemMinus => ((a0, -a1), (b0, b1)),
                };
                let r = |x| rational(&f, x, 1);
                let l = surface_member(&f, part, [&r(a.0), &r(a.1)], [&r(b.0), &r(b.1)]).unwrap();
                assert_eq!(classify_lagrangian(&l, &f), part.position());
                let m = maslov_index(&l, &f);
                match part {
                    SurfacePart::StemPlus => assert_eq!(m.index, 2),
                    SurfacePart::StemMinus => assert_eq!(m.index, -2),
                    _ => {}
                }
                let al = l.transform(&f.involution);
                assert_eq!(classify_lagrangian(&al, &f), part.position().reflected());
            }
        }
    }
    let r = |x| rational(&f, x, 1);
    assert!(surface_member(&f, SurfacePart::StemPlus, [&r(1), &r(-1)], [&r(1), &r(-1)]).is_err());
    assert!(surface_member(&f, SurfacePart::WingE, [&r(-1), &r(1)], [&r(1), &r(0)]).is_err());
}

#[test]
fn photon_disjointness_conditions_agree_on_group_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [4, 5, 7] {
        let d = build_group(n).unwrap();
        let frames = group_frames(&d).unwrap();
        for f in [&frames[0], &frames[3]] {
            let mut hits = 0;
            for _ in 0..200 {
                let v = random_vec(f, &mut rng);
                let ii = photon_disjoint_from_surface(&v, f);
                assert_eq!(ii, in_open_cones(&v, f));
                hits += ii as usize;
            }
            assert!(hits > 0);
        }
    }
}

#[test]
fn fundamental_frame_matches_cone_generators() {
    let d = build_group(6).unwrap();
    let f = fundamental_frame(&d).unwrap();
    let g = cone_generators(&d);
    assert_eq!(f.e1, g.col(0));
    assert_eq!(f.e2, g.col(2));
    assert!(f.f1.positively_proportional(&g.col(3)));
    assert!(f.f2.positively_proportional(&g.col(1)));
    assert_eq!(f.involution, d.a);
}

#[test]
fn rotated_cones_for_n4() {
    let d = build_group(4).unwrap();
    let frames = group_frames(&d).unwrap();
    // index 4 is C_2
    assert_eq!(
        surfaces_relation(&frames[0], &frames[4]),
        SurfaceRelation::Disjoint
    );
    assert_eq!(
        surfaces_relation(&frames[4], &frames[0]),
        SurfaceRelation::Disjoint
    );
}

#[test]
fn nonadjacent_surfaces_lie_in_the_big_component() {
    let d = build_group(5).unwrap();
    let frames = group_frames(&d).unwrap();
    let f0 = &frames[0];
    let r = |p| CycloReal::ratio_in(d.field(), p, 1);
    for j in 4..7 {
        assert_eq!(surfaces_relation(f0, &frames[j]), SurfaceRelation::Disjoint);
        for part in SurfacePart::ALL {
            let (a, b) = match part {
                SurfacePart::StemMinus => ((1, -2), (1, 3)),
                _ => ((1, 2), (3, -1)),
            };
            let l =
                surface_member(&frames[j], part, [&r(a.0), &r(a.1)], [&r(b.0), &r(b.1)]).unwrap();
            assert_eq!(classify_lagrangian(&l, f0), Position::BigComponent);
            let al = l.transform(&f0.involution);
            assert_eq!(classify_lagrangian(&al, f0), Position::SmallComponent);
        }
    }
}

#[test]
fn wing_tangency_example() {
    let f = CrookedFrame::standard(&cyclo_field(16).unwrap());
    let f1 = comb(&f, [1, 1, 1, 0]);
    let f2 = comb(&f, [1, 0, 1, 1]);
    let u = &Mat4::from_cols([f.e1.clone(), f1, f.e2.clone(), f2]) * &f.matrix().inverse().unwrap();
    assert_eq!(&(&u.transpose() * &f.pairing) * &u, f.pairing);
    let g = f.transform(&u).unwrap();
    assert_eq!(
        surfaces_relation(&f, &g),
        SurfaceRelation::WingTangent { wing: Wing::E }
    );
}

#[test]
fn unipotent_images_of_the_fundamental_frame_are_wing_tangent() {
    for n in [4, 5, 9] {
        let d = build_group(n).unwrap();
        let f = fundamental_frame(&d).unwrap();
        for g in [d.t.clone(), d.t.inverse().unwrap(), &d.b * &d.a] {
            let h = f.transform(&g).unwrap();
            assert!(matches!(
                surfaces_relation(&f, &h),
                SurfaceRelation::WingTangent { .. }
            ));
        }
    }
}

#[test]
fn photon_tangency_frame_is_maximally_unipotent() {
    let f = CrookedFrame::standard(&cyclo_field(16).unwrap());
    let q = |p, r| rational(&f, p, r);
    let e1 = &(&(&f.e1 + &f.f2) + &f.e2.scale(&q(1, 2))) + &f.f1.scale(&q(1, 6));
    let e2 = &f.e2 + &f.f1;
    let f2 = &(&f.f2 + &f.e2) + &f.f1.scale(&q(1, 2));
    let u = &Mat4::from_cols([e1, f.f1.clone(), e2, f2]) * &f.matrix().inverse().unwrap();
    let id = Mat4::identity(f.field());
    let n = &u - &id;
    let n3 = &(&n * &n) * &n;
    assert!((&n3 * &n).is_zero());
    assert!(!n3.is_zero());
    assert_eq!(&(&u.transpose() * &f.pairing) * &u, f.pairing);
    let g = f.transform(&u).unwrap();
    assert_eq!(frame_transition(&f, &g).unwrap(), u);
    assert_eq!(
        surfaces_relation(&f, &g),
        SurfaceRelation::PhotonTangent {
            photon: f.f1.clone()
        }
    );
    // positive rescaling of the second frame keeps the verdict
    let s = q(3, 1);
    let h = CrookedFrame::new(
        g.e1.scale(&s),
        g.f1.scale(&s.inv().unwrap()),
        g.e2.scale(&q(1, 5)),
        g.f2.scale(&q(5, 1)),
        g.involution.clone(),
        g.pairing.clone(),
    )
    .unwrap();
    assert!(matches!(
        surfaces_relation(&f, &h),
        SurfaceRelation::PhotonTangent { .. }
    ));
}

#[test]
fn frame_validation_rejects_bad_input() {
    let f = CrookedFrame::standard(&cyclo_field(16).unwrap());
    let two = rational(&f, 2, 1);
    let bad = CrookedFrame::new(
        f.e1.scale(&two),
        f.f1.clone(),
        f.e2.clone(),
        f.f2.clone(),
        f.involution.clone(),
        f.pairing.clone(),
    );
    assert!(bad.is_err());
    let id = Mat4::identity(f.field());
    let bad = CrookedFrame::new(
        f.e1.clone(),
        f.f1.clone(),
        f.e2.clone(),
        f.f2.clone(),
        id,
        f.pairing.clone(),
    );
    assert!(bad.is_err());
    assert!(f.lagrangian(&f.e1, &f.f1).is_err());
    assert!(f.lagrangian(&f.e1, &f.e1.scale(&two)).is_err());
}
