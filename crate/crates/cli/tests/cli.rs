use std::process::{Command, Output};

use serde_json::Value;

fn pingpong(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pingpong"))
        .args(args)
        .env_remove("PINGPONG_JOBS")
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn verify_4_passes() {
    let o = pingpong(&["verify", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["passed"], true);
    assert_eq!(r["N"], 4);
    assert_eq!(
        r["certificate"]["checks"].as_array().unwrap().len(),
        3 * 5 + 1
    );
}

#[test]
fn verify_3_is_a_usage_error() {
    let o = pingpong(&["verify", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at least 4"));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(pingpong(&["verify"]).status.code(), Some(2));
    assert_eq!(
        pingpong(&["verify", "5", "--backend", "fast"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pingpong(&["batch", "--from", "6", "--to", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pingpong(&["limit-curve", "4", "--depth", "8", "--cap", "10"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn batch_4_to_12() {
    let o = pingpong(&["--jobs", "2", "batch", "--from", "4", "--to", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let reports = r["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 9);
    assert!(reports.iter().all(|x| x["passed"] == true));
}

#[test]
fn interval_backend_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = pingpong(&[
        "verify",
        "6",
        "--backend",
        "interval-first",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["backend"], "interval-first");
    assert_eq!(r["passed"], true);
}

#[test]
fn reports_are_stable_modulo_timing() {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("wall_time_ms");
                m.values_mut().for_each(strip);
            }
            Value::Array(a) => a.iter_mut().for_each(strip),
            _ => {}
        }
    }
    let mut a = json(&pingpong(&["verify", "5"]));
    let mut b = json(&pingpong(&["verify", "5"]));
    strip(&mut a);
    strip(&mut b);
    assert_eq!(a, b);
}

#[test]
fn other_subcommands() {
    let info = pingpong(&["info", "7"]);
    assert_eq!(info.status.code(), Some(0));
    assert_eq!(json(&info)["rotation_order"], "N");
    let ids = pingpong(&["identities", "6"]);
    assert_eq!(ids.status.code(), Some(0));
    assert_eq!(json(&ids)["passed"], true);
    let cr = pingpong(&["crooked", "4"]);
    assert_eq!(cr.status.code(), Some(0));
    assert_eq!(json(&cr)["pairs"].as_array().unwrap().len(), 28);
}

#[test]
fn point_cloud_exports() {
    let csv = pingpong(&["limit-curve", "4", "--depth", "1"]);
    assert_eq!(csv.status.code(), Some(0));
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("depth,word,x0,x1,x2,x3,flags\n"));
    let again = pingpong(&["limit-curve", "4", "--depth", "1"]);
    assert_eq!(text.as_bytes(), &again.stdout[..]);

    let js = pingpong(&[
        "limit-surface",
        "4",
        "--depth",
        "1",
        "--density",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(js.status.code(), Some(0));
    let v = json(&js);
    assert_eq!(v["schema"], "pingpong-sp4/v1");
    assert_eq!(v["kind"], "lagrangian");

    let ply = pingpong(&[
        "limit-surface",
        "4",
        "--depth",
        "0",
        "--density",
        "2",
        "--chart",
        "--format",
        "ply",
    ]);
    assert_eq!(ply.status.code(), Some(0));
    let text = String::from_utf8(ply.stdout).unwrap();
    assert!(text.starts_with("ply\nformat ascii 1.0\n"));
    assert!(text.contains("property double z\n"));
}
