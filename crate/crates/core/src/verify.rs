//! Bundled checks behind the command-line subcommands.

use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use crate::cones::{alpha, fundamental_cone, verify_ping_pong_with, Backend, PingPongCertificate};
use crate::einstein::{group_frames, surfaces_relation, SurfaceRelation};
use crate::error::Result;
use crate::identities::{identity_bank, prop_formulas};
use crate::limitset::{reflection_exact, Word};
use crate::monodromy::{build_group, verify_conjugacy, verify_relations, GroupData};
use crate::report::Report;

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    #[serde(rename = "N")]
    pub n: u32,
    pub backend: Backend,
    pub passed: bool,
    pub relations: Report,
    pub conjugacy: Report,
    pub cone: Report,
    pub certificate: Option<PingPongCertificate>,
    pub wall_time_ms: u64,
}

fn cone_report(d: &GroupData) -> Report {
    let mut rep = Report::new(d.n);
    let a = alpha(d);
    rep.check_with("alpha_positive", a.is_positive(), json!(a.to_f64()));
    match fundamental_cone(d) {
        Ok(_) => rep.check("self_duality", true),
        Err(e) => rep.check_with("self_duality", false, json!(e.to_string())),
    };
    rep
}

/// Group relations, conjugacy data, cone self-duality and the ping-pong
/// certificate for one `N`. Errors only on invalid input.
pub fn verify(n: u32, backend: Backend) -> Result<VerifyReport> {
    let start = Instant::now();
    let d = build_group(n)?;
    let relations = verify_relations(&d);
    let conjugacy = verify_conjugacy(&d);
    let cone = cone_report(&d);
    let certificate = if cone.passed {
        Some(verify_ping_pong_with(&d, backend, false)?)
    } else {
        None
    };
    let passed = relations.passed
        && conjugacy.passed
        && cone.passed
        && certificate.as_ref().is_some_and(|c| c.passed);
    Ok(VerifyReport {
        n,
        backend,
        passed,
        relations,
        conjugacy,
        cone,
        certificate,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// The identity bank and the closed-form propositions for every
/// `k in 1..N`, condition ids prefixed by `k`.
pub fn identities_report(n: u32) -> Result<Report> {
    let start = Instant::now();
    let d = build_group(n)?;
    let mut rep = Report::new(n);
    for k in 1..i64::from(n) {
        for mut part in [identity_bank(&d, k), prop_formulas(&d, k)] {
            for c in &mut part.conditions {
                c.id = format!("k{k}:{}", c.id);
            }
            rep.extend(part);
        }
    }
    Ok(rep.timed(start))
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationEntry {
    pub left: String,
    pub right: String,
    pub relation: SurfaceRelation,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrookedReport {
    #[serde(rename = "N")]
    pub n: u32,
    pub pairs: Vec<RelationEntry>,
    pub images: Vec<RelationEntry>,
    pub checks: Report,
    pub passed: bool,
}

fn label(i: usize) -> String {
    Word(vec![i as u16]).to_string()
}

/// Cyclic distance between the rotation indices of cones `i` and `j`.
fn cone_distance(n: usize, i: usize, j: usize) -> usize {
    let k = (i / 2).abs_diff(j / 2);
    k.min(n - k)
}

/// Relations among the `2N` crooked surfaces, and between each surface `i`
/// and the images `A_i·WS_j`. Surfaces of cones two or more rotation steps
/// apart must be disjoint.
pub fn crooked_report(n: u32) -> Result<CrookedReport> {
    let start = Instant::now();
    let d = build_group(n)?;
    let frames = group_frames(&d)?;
    let m = frames.len();
    let nn = n as usize;
    let mut pairs = Vec::new();
    let mut far_disjoint = true;
    for i in 0..m {
        for j in i + 1..m {
            let relation = surfaces_relation(&frames[i], &frames[j]);
            if cone_distance(nn, i, j) >= 2 {
                far_disjoint &= relation == SurfaceRelation::Disjoint;
            }
            pairs.push(RelationEntry {
                left: label(i),
                right: label(j),
                relation,
            });
        }
    }
    let mut images = Vec::new();
    let mut images_disjoint = true;
    for i in 0..m {
        let ai = reflection_exact(&d, i)?;
        for j in (0..m).filter(|&j| j != i) {
            let img = frames[j].transform(&ai)?;
            let relation = surfaces_relation(&frames[i], &img);
            if cone_distance(nn, i, j) >= 2 {
                images_disjoint &= relation == SurfaceRelation::Disjoint;
            }
            images.push(RelationEntry {
                left: label(i),
                right: format!("A{}·{}", label(i), label(j)),
                relation,
            });
        }
    }
    let mut checks = Report::new(n);
    checks.check("far_surfaces_disjoint", far_disjoint);
    checks.check("far_images_disjoint", images_disjoint);
    let checks = checks.timed(start);
    Ok(CrookedReport {
        n,
        passed: checks.passed,
        pairs,
        images,
        checks,
    })
}
