//! Floating-point sampling of the limit curve in `P(R^4)` and of the limit
//! set in the Lagrangian Grassmannian, with point-cloud export.
//!
//! Cone indices run `0, 0', 1, 1', …` and are stored as `0..2N`; index `i`
//! denotes `C_{i/2}` when even and `C'_{i/2}` when odd.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Write;
use std::path::Path;

use nalgebra::{Matrix4, Vector4};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::einstein::{cone_element, group_frames};
use crate::error::{Error, Result};
use crate::linalg::{Mat4, Vec4};
use crate::monodromy::GroupData;

pub const SCHEMA: &str = "pingpong-sp4/v1";
pub const DEDUP_TOL: f64 = 1e-10;
pub const DEFAULT_SAMPLE_CAP: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `j·w`, reduced with `A_j² = Id`.
    pub fn left_mul(&self, j: u16) -> Word {
        match self.0.first() {
            Some(&f) if f == j => Word(self.0[1..].to_vec()),
            _ => {
                let mut v = Vec::with_capacity(self.len() + 1);
                v.push(j);
                v.extend_from_slice(&self.0);
                Word(v)
            }
        }
    }

    /// Ordering key: length first, then letters.
    pub fn key(&self) -> (usize, &[u16]) {
        (self.len(), &self.0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{}{}", l / 2, if l % 2 == 1 { "'" } else { "" })?;
        }
        Ok(())
    }
}

fn words_of_length(letters: u16, len: usize) -> Vec<Word> {
    let mut out = vec![Word(Vec::new())];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                let last = w.0.last().copied();
                (0..letters)
                    .filter(move |&l| Some(l) != last)
                    .map(move |l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        Word(v)
                    })
            })
            .collect();
    }
    out
}

/// Words of length `1..=depth` with no letter repeated twice in a row, in
/// (length, lex) order.
pub fn enumerate_words(n: u32, depth: usize) -> Result<Vec<Word>> {
    if depth == 0 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    let letters = 2 * n as u16;
    Ok((1..=depth)
        .flat_map(|l| words_of_length(letters, l))
        .collect())
}

/// Number of reduced words of length at most `depth`, empty word included.
pub fn word_count(n: u32, depth: usize) -> usize {
    let k = 2 * n as usize;
    let mut total = 1usize;
    let mut layer = 1usize;
    for l in 1..=depth {
        layer = layer.saturating_mul(if l == 1 { k } else { k - 1 });
        total = total.saturating_add(layer);
    }
    total
}

fn all_words(n: u32, depth: usize) -> Vec<Word> {
    let mut v = vec![Word(Vec::new())];
    if depth > 0 {
        v.extend(enumerate_words(n, depth).expect("depth ≥ 1"));
    }
    v
}

/// Exact reflection `A_i = g_i A g_i⁻¹` in the wall of cone `i`.
pub fn reflection_exact(d: &GroupData, i: usize) -> Result<Mat4> {
    let g = cone_element(d, i);
    let gi = g
        .inverse()
        .ok_or_else(|| Error::invariant("cone_element", "singular"))?;
    Ok(&(&g * &d.a) * &gi)
}

/// Exact `ρ(w) = A_{i1} ⋯ A_{in}`.
pub fn word_matrix_exact(d: &GroupData, w: &Word) -> Result<Mat4> {
    let mut m = d.identity();
    for &l in &w.0 {
        m = &m * &reflection_exact(d, l as usize)?;
    }
    Ok(m)
}

/// The reflections in double precision together with the pairing.
#[derive(Clone, Debug)]
pub struct Reflections {
    pub n: u32,
    pub mats: Vec<Matrix4<f64>>,
    pub pairing: Matrix4<f64>,
}

impl Reflections {
    pub fn new(d: &GroupData) -> Result<Self> {
        let mats = (0..2 * d.n as usize)
            .map(|i| reflection_exact(d, i).map(|m| m.to_f64()))
            .collect::<Result<_>>()?;
        Ok(Reflections {
            n: d.n,
            mats,
            pairing: d.j.to_f64(),
        })
    }

    /// Applies `ρ(w)` letter by letter, right to left, rescaling to unit
    /// length after each step. Signs are preserved.
    pub fn apply(&self, w: &Word, v: &[f64; 4]) -> [f64; 4] {
        let mut x = Vector4::from(*v);
        x /= x.norm();
        for &l in w.0.iter().rev() {
            x = self.mats[l as usize] * x;
            x /= x.norm();
        }
        x.into()
    }

    /// Applies `ρ(w)` to a plane, re-orthonormalising the spanning pair
    /// after each step.
    pub fn apply_plane(&self, w: &Word, p: &[[f64; 4]; 2]) -> [[f64; 4]; 2] {
        let (mut x, mut y) = orthonormal(Vector4::from(p[0]), Vector4::from(p[1]));
        for &l in w.0.iter().rev() {
            let m = &self.mats[l as usize];
            (x, y) = orthonormal(m * x, m * y);
        }
        [x.into(), y.into()]
    }
}

fn orthonormal(x: Vector4<f64>, y: Vector4<f64>) -> (Vector4<f64>, Vector4<f64>) {
    let x = x / x.norm();
    let y = y - x * x.dot(&y);
    (x, y / y.norm())
}

/// Unit vector with first coordinate of magnitude above `1e-12` positive.
pub fn projective_normalize(v: &[f64; 4]) -> [f64; 4] {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let s = v
        .iter()
        .find(|x| x.abs() > 1e-12 * n)
        .map_or(1.0, |x| x.signum());
    v.map(|x| s * x / n)
}

/// Distance between projective points given by unit representatives.
pub fn angular_distance<const D: usize>(a: &[f64; D], b: &[f64; D]) -> f64 {
    let d = |s: f64| {
        (0..D)
            .map(|i| (a[i] - s * b[i]).powi(2))
            .sum::<f64>()
            .sqrt()
    };
    d(1.0).min(d(-1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplePoint {
    Projective([f64; 4]),
    Lagrangian([f64; 5]),
    Chart([f64; 3]),
}

impl SamplePoint {
    pub fn coords(&self) -> &[f64] {
        match self {
            SamplePoint::Projective(p) => p,
            SamplePoint::Lagrangian(p) => p,
            SamplePoint::Chart(p) => p,
        }
    }

    pub fn kind(&self) -> PointKind {
        match self {
            SamplePoint::Projective(_) => PointKind::Projective,
            SamplePoint::Lagrangian(_) => PointKind::Lagrangian,
            SamplePoint::Chart(_) => PointKind::Chart,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Projective,
    Lagrangian,
    Chart,
}

impl PointKind {
    fn columns(self) -> Vec<String> {
        let (p, k) = match self {
            PointKind::Projective => ("x", 4),
            PointKind::Lagrangian => ("w", 5),
            PointKind::Chart => return vec!["x".into(), "y".into(), "z".into()],
        };
        (0..k).map(|i| format!("{p}{i}")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitSample {
    pub point: SamplePoint,
    pub word: Word,
    pub depth: usize,
    /// Index of the seed (curve) or of the source cone (surface).
    pub source: usize,
    pub flags: Vec<&'static str>,
}

#[derive(Clone, Copy, Debug)]
pub struct SampleLimits {
    pub max_samples: usize,
}

impl Default for SampleLimits {
    fn default() -> Self {
        SampleLimits {
            max_samples: DEFAULT_SAMPLE_CAP,
        }
    }
}

fn check_cap(count: usize, limits: SampleLimits) -> Result<()> {
    if count > limits.max_samples {
        return Err(Error::Resource(format!(
            "{count} samples requested, cap is {}",
            limits.max_samples
        )));
    }
    Ok(())
}

fn nonzero_column(m: &Mat4) -> Option<Vec4> {
    (0..4).map(|j| m.col(j)).find(|c| !c.is_zero())
}

/// Fixed lines of the unipotents attached to each cone: `g_i·v3`, fixed by
/// the maximally unipotent `g_i CA g_i⁻¹`, and `g_i·t`, spanning the image of
/// `g_i (AB - Id) g_i⁻¹`.
pub fn curve_seeds(d: &GroupData) -> Result<Vec<[f64; 4]>> {
    let v3 = crate::cones::cone_generators(d).col(3);
    let t = nonzero_column(&(&d.t - &d.identity()))
        .ok_or_else(|| Error::invariant("rank_T_minus_id", "AB = Id"))?;
    let mut out = Vec::new();
    for i in 0..2 * d.n as usize {
        let g = cone_element(d, i);
        out.push(projective_normalize(&g.mul_vec(&v3).to_f64()));
        out.push(projective_normalize(&g.mul_vec(&t).to_f64()));
    }
    Ok(out)
}

/// Grid-hashed projective deduplication at `tol`.
struct Dedup<const D: usize> {
    tol: f64,
    cells: HashMap<[i64; D], Vec<[f64; D]>>,
}

impl<const D: usize> Dedup<D> {
    fn new(tol: f64) -> Self {
        Dedup {
            tol,
            cells: HashMap::new(),
        }
    }

    fn cell(&self, p: &[f64; D]) -> [i64; D] {
        p.map(|x| (x / (4.0 * self.tol)).floor() as i64)
    }

    /// Inserts `p` (a normalised representative) unless a point within `tol`
    /// is already present.
    fn insert(&mut self, p: [f64; D]) -> bool {
        let c = self.cell(&p);
        let mut off = [0i64; D];
        loop {
            let key: [i64; D] = std::array::from_fn(|i| c[i] + off[i]);
            if let Some(v) = self.cells.get(&key) {
                if v.iter().any(|q| angular_distance(q, &p) <= self.tol) {
                    return false;
                }
            }
            // odometer over {-1, 0, 1}^D
            let mut i = 0;
            while i < D {
                off[i] += 1;
                if off[i] <= 1 {
                    break;
                }
                off[i] = -1;
                i += 1;
            }
            if i == D {
                break;
            }
            if off.iter().all(|&o| o == 0) {
                break;
            }
        }
        self.cells.entry(c).or_default().push(p);
        true
    }
}

/// Images of the seeds under all reduced words of length at most `depth`.
/// Duplicates within `1e-10` are dropped, keeping the first in
/// (length, lex word, seed) order.
pub fn limit_curve_samples(
    d: &GroupData,
    depth: usize,
    limits: SampleLimits,
) -> Result<Vec<LimitSample>> {
    let seeds = curve_seeds(d)?;
    check_cap(word_count(d.n, depth).saturating_mul(seeds.len()), limits)?;
    let refl = Reflections::new(d)?;
    let words = all_words(d.n, depth);
    let raw: Vec<LimitSample> = words
        .par_iter()
        .flat_map_iter(|w| {
            let refl = &refl;
            seeds.iter().enumerate().map(move |(s, v)| LimitSample {
                point: SamplePoint::Projective(projective_normalize(&refl.apply(w, v))),
                word: w.clone(),
                depth: w.len(),
                source: s,
                flags: Vec::new(),
            })
        })
        .collect();
    let mut dd = Dedup::<4>::new(DEDUP_TOL);
    Ok(raw
        .into_iter()
        .filter(|s| match &s.point {
            SamplePoint::Projective(p) => dd.insert(*p),
            _ => true,
        })
        .collect())
}

/// A plane sample of a crooked surface before transport.
#[derive(Clone, Debug)]
struct PlaneSample {
    span: [[f64; 4]; 2],
    flags: Vec<&'static str>,
}

fn lin(a: f64, u: &[f64; 4], b: f64, v: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|i| a * u[i] + b * v[i])
}

/// Samples of the crooked surface with vertices `e1, f1, e2, f2` (in this
/// order): each wing as `m` photons over its edge with `m` members each, and
/// each stem component on an `m × m` grid of angles. `attractor`, if given,
/// adds the photon over that edge point, flagged.
fn surface_planes(
    v: &[[f64; 4]; 4],
    m: usize,
    attractor: Option<(usize, [f64; 2])>,
) -> Vec<PlaneSample> {
    use std::f64::consts::PI;
    let [e1, f1, e2, f2] = v;
    let mut out = Vec::new();
    let wing = |p1: &[f64; 4],
                p2: &[f64; 4],
                q1: &[f64; 4],
                q2: &[f64; 4],
                a: [f64; 2],
                flag,
                out: &mut Vec<PlaneSample>| {
        let base = lin(a[0], p1, a[1], p2);
        let along = lin(-a[1], p1, a[0], p2);
        let across = lin(a[1], q1, -a[0], q2);
        for k in 0..m {
            let s = PI * k as f64 / m as f64;
            let mut flags = vec![flag];
            if let Some((_, at)) = attractor {
                if at == a {
                    flags.push("attractor");
                }
            }
            out.push(PlaneSample {
                span: [base, lin(s.cos(), &along, s.sin(), &across)],
                flags,
            });
        }
    };
    let steps = |k: usize| (k as f64 + 0.5) / m as f64 * PI / 2.0;
    for k in 0..m {
        let t = steps(k);
        let a = [t.cos(), t.sin()];
        wing(e1, e2, f1, f2, a, "wing_e", &mut out);
        wing(f1, f2, e1, e2, a, "wing_f", &mut out);
    }
    if let Some((w, a)) = attractor {
        if w == 0 {
            wing(e1, e2, f1, f2, a, "wing_e", &mut out);
        } else {
            wing(f1, f2, e1, e2, a, "wing_f", &mut out);
        }
    }
    for (flag, s) in [("stem_plus", 1.0), ("stem_minus", -1.0)] {
        for i in 0..m {
            for j in 0..m {
                let (u, w) = (steps(i), steps(j));
                let w1 = lin(u.cos(), e1, s * u.sin(), f1);
                let w2 = lin(w.cos(), e2, -s * w.sin(), f2);
                out.push(PlaneSample {
                    span: [w1, w2],
                    flags: vec![flag],
                });
            }
        }
    }
    out
}

/// Plücker coordinates of `span(x, y)` relative to the frame with vertices
/// `e1, f1, e2, f2` and pairing `J`, unit-normalised with the first
/// significant coordinate positive.
pub fn plucker_f64(
    x: &[f64; 4],
    y: &[f64; 4],
    frame: &[[f64; 4]; 4],
    pairing: &Matrix4<f64>,
) -> [f64; 5] {
    let pr = |u: &[f64; 4], w: &[f64; 4]| Vector4::from(*u).dot(&(pairing * Vector4::from(*w)));
    let [e1, f1, e2, f2] = frame;
    let c = |v| [pr(v, f1), pr(e1, v), pr(v, f2), pr(e2, v)];
    let (a, b) = (c(x), c(y));
    let p = |u: usize, v: usize| a[u] * b[v] - b[u] * a[v];
    let w = [p(0, 2), p(0, 3), p(0, 1), p(1, 2), p(1, 3)];
    let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    let s = w
        .iter()
        .find(|x| x.abs() > 1e-12 * n)
        .map_or(1.0, |x| x.signum());
    w.map(|x| s * x / n)
}

pub fn q_f64(w: &[f64; 5]) -> f64 {
    w[1] * w[3] - w[0] * w[4] - w[2] * w[2]
}

pub fn pair_f64(a: &[f64; 5], b: &[f64; 5]) -> f64 {
    0.5 * (a[1] * b[3] + a[3] * b[1] - a[0] * b[4] - a[4] * b[0]) - a[2] * b[2]
}

/// Double-precision vertices `e1, f1, e2, f2` of the `2N` cone frames.
pub fn frames_f64(d: &GroupData) -> Result<Vec<[[f64; 4]; 4]>> {
    Ok(group_frames(d)?
        .iter()
        .map(|f| f.vertices().map(|v| v.to_f64()))
        .collect())
}

/// Edge coordinates of the attractor point `g_i·t` on the wing of frame `i`
/// that contains it: `(0, [a0, a1])` for the `e`-wing, `1` for the `f`-wing.
fn attractor_on_frame(
    frame: &[[f64; 4]; 4],
    pairing: &Matrix4<f64>,
    t: &[f64; 4],
) -> Option<(usize, [f64; 2])> {
    let pr = |u: &[f64; 4], w: &[f64; 4]| Vector4::from(*u).dot(&(pairing * Vector4::from(*w)));
    let [e1, f1, e2, f2] = frame;
    let c = [pr(t, f1), pr(e1, t), pr(t, f2), pr(e2, t)];
    let n = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    let tiny = |x: f64| x.abs() <= 1e-9 * n;
    // e-wing: β coordinates vanish, edge weights are (α1, α2); f-wing dually
    for (w, [p, q], others) in [
        (0usize, [0usize, 2usize], [1usize, 3usize]),
        (1, [1, 3], [0, 2]),
    ] {
        if others.iter().all(|&i| tiny(c[i])) {
            let s = if c[p] + c[q] < 0.0 { -1.0 } else { 1.0 };
            let (a0, a1) = (s * c[p], s * c[q]);
            if a0 >= -1e-9 * n && a1 >= -1e-9 * n {
                let r = (a0 * a0 + a1 * a1).sqrt();
                return Some((w, [a0 / r, a1 / r]));
            }
        }
    }
    None
}

/// Samples of the transported crooked surfaces `ρ(w)·WS_i` for reduced words
/// `w` of length at most `depth` not ending in `i`, as unit Plücker vectors
/// relative to the frame of `C_0`. The attractor photon of each surface is
/// included and flagged.
pub fn limit_surface_samples(
    d: &GroupData,
    depth: usize,
    photons_per_surface: usize,
    limits: SampleLimits,
) -> Result<Vec<LimitSample>> {
    if photons_per_surface == 0 {
        return Err(Error::Domain("density must be positive".into()));
    }
    let m = photons_per_surface;
    let per_surface = 2 * m * m + m + 2 * m * m;
    check_cap(
        word_count(d.n, depth)
            .saturating_mul(2 * d.n as usize)
            .saturating_mul(per_surface),
        limits,
    )?;
    let refl = Reflections::new(d)?;
    let frames = frames_f64(d)?;
    let t = nonzero_column(&(&d.t - &d.identity()))
        .ok_or_else(|| Error::invariant("rank_T_minus_id", "AB = Id"))?;
    let bases: Vec<Vec<PlaneSample>> = frames
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let ti = cone_element(d, i).mul_vec(&t).to_f64();
            surface_planes(f, m, attractor_on_frame(f, &refl.pairing, &ti))
        })
        .collect();
    let words = all_words(d.n, depth);
    let reference = frames[0];
    Ok(words
        .par_iter()
        .flat_map_iter(|w| {
            let (refl, bases) = (&refl, &bases);
            let last = w.0.last().map(|&l| l as usize);
            (0..frames.len())
                .filter(move |&i| Some(i) != last)
                .flat_map(move |i| {
                    bases[i].iter().map(move |p| {
                        let [x, y] = refl.apply_plane(w, &p.span);
                        LimitSample {
                            point: SamplePoint::Lagrangian(plucker_f64(
                                &x,
                                &y,
                                &reference,
                                &refl.pairing,
                            )),
                            word: w.clone(),
                            depth: w.len(),
                            source: i,
                            flags: p.flags.clone(),
                        }
                    })
                })
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ChartPoint {
    Point([f64; 3]),
    ChartMiss,
}

/// Affine chart of the null quadric in `P(W)`: the complement of the null
/// cone of `basepoint`, identified with Minkowski space `R^{1,2}`.
#[derive(Clone, Debug)]
pub struct MinkowskiChart {
    base: [f64; 5],
    dual: [f64; 5],
    basis: [[f64; 5]; 3],
    tol: f64,
}

fn axpy(a: f64, x: &[f64; 5], y: &[f64; 5]) -> [f64; 5] {
    std::array::from_fn(|i| a * x[i] + y[i])
}

impl MinkowskiChart {
    pub const TOL: f64 = 1e-12;

    pub fn new(basepoint: &[f64; 5]) -> Result<Self> {
        let n = basepoint.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n == 0.0 || q_f64(basepoint).abs() > 1e-9 * n * n {
            return Err(Error::Domain(
                "chart basepoint must be a nonzero null vector".into(),
            ));
        }
        let b = basepoint.map(|x| x / n);
        let unit =
            |k: usize| -> [f64; 5] { std::array::from_fn(|i| if i == k { 1.0 } else { 0.0 }) };
        let k = (0..5)
            .max_by(|&i, &j| {
                pair_f64(&b, &unit(i))
                    .abs()
                    .total_cmp(&pair_f64(&b, &unit(j)).abs())
            })
            .expect("five coordinates");
        let y = unit(k);
        let by = pair_f64(&b, &y);
        let dual = axpy(-q_f64(&y) / (2.0 * by), &b, &y).map(|x| x / by);
        let mut chart = MinkowskiChart {
            base: b,
            dual,
            basis: [[0.0; 5]; 3],
            tol: Self::TOL,
        };
        // B-orthonormal basis of span(b, b*)^⊥, timelike vector first
        let mut found: Vec<[f64; 5]> = Vec::new();
        let mut cands: Vec<[f64; 5]> = (0..5).map(|i| chart.project(&unit(i))).collect();
        for i in 0..5 {
            for j in i + 1..5 {
                cands.push(std::array::from_fn(|k| cands[i][k] + cands[j][k]));
            }
        }
        for c in cands {
            let mut v = c;
            for u in &found {
                let s = pair_f64(u, u);
                v = axpy(-pair_f64(u, &v) / s, u, &v);
            }
            let s = pair_f64(&v, &v);
            if s.abs() > 1e-6 {
                found.push(v.map(|x| x / s.abs().sqrt()));
            }
            if found.len() == 3 {
                break;
            }
        }
        if found.len() < 3 {
            return Err(Error::invariant("chart", "degenerate complement"));
        }
        found.sort_by(|a, b| pair_f64(b, b).total_cmp(&pair_f64(a, a)));
        chart.basis = [found[0], found[1], found[2]];
        Ok(chart)
    }

    /// Projection onto `span(b, b*)^⊥`.
    fn project(&self, p: &[f64; 5]) -> [f64; 5] {
        let u = axpy(-pair_f64(p, &self.dual), &self.base, p);
        axpy(-pair_f64(p, &self.base), &self.dual, &u)
    }

    pub fn coords(&self, p: &[f64; 5]) -> ChartPoint {
        let n = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        let s = pair_f64(&self.base, p);
        if n == 0.0 || s.abs() <= self.tol * n {
            return ChartMiss;
        }
        let u = self.project(&p.map(|x| x / s));
        ChartPoint::Point(std::array::from_fn(|i| {
            let e = &self.basis[i];
            pair_f64(e, &u) / pair_f64(e, e)
        }))
    }
}

use ChartPoint::ChartMiss;

/// Chart coordinates of `p` relative to `basepoint`.
pub fn minkowski_chart(basepoint: &[f64; 5], p: &[f64; 5]) -> Result<ChartPoint> {
    Ok(MinkowskiChart::new(basepoint)?.coords(p))
}

/// Default basepoint: `L_{e1 f2}` of the frame of `C_0`, i.e. `(0,1,0,0,0)`.
pub const DEFAULT_BASEPOINT: [f64; 5] = [0.0, 1.0, 0.0, 0.0, 0.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Csv,
    Ply,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "ply" => Ok(ExportFormat::Ply),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::Domain(format!("unknown format {s:?}"))),
        }
    }
}

/// Samples of one kind plus free-form metadata, exported in
/// (length, lex word, sample index) order.
#[derive(Clone, Debug)]
pub struct PointCloud {
    pub kind: PointKind,
    pub samples: Vec<LimitSample>,
    pub metadata: BTreeMap<String, String>,
}

impl PointCloud {
    pub fn new(kind: PointKind, samples: Vec<LimitSample>) -> Result<Self> {
        if samples.iter().any(|s| s.point.kind() != kind) {
            return Err(Error::Domain("mixed sample kinds".into()));
        }
        Ok(PointCloud {
            kind,
            samples,
            metadata: BTreeMap::new(),
        })
    }

    fn sorted(&self) -> Vec<&LimitSample> {
        let mut v: Vec<&LimitSample> = self.samples.iter().collect();
        v.sort_by(|a, b| a.word.key().cmp(&b.word.key()));
        v
    }

    pub fn render(&self, format: ExportFormat) -> String {
        let rows = self.sorted();
        let cols = self.kind.columns();
        let mut s = String::new();
        match format {
            ExportFormat::Csv => {
                s.push_str(&format!("depth,word,{},flags\n", cols.join(",")));
                for r in rows {
                    let xs: Vec<String> = r.point.coords().iter().map(|x| format!("{x}")).collect();
                    s.push_str(&format!(
                        "{},{},{},{}\n",
                        r.depth,
                        r.word,
                        xs.join(","),
                        r.flags.join(";")
                    ));
                }
            }
            ExportFormat::Ply => {
                s.push_str("ply\nformat ascii 1.0\n");
                for (k, v) in &self.metadata {
                    s.push_str(&format!("comment {k}={v}\n"));
                }
                s.push_str(&format!("element vertex {}\n", rows.len()));
                for c in &cols {
                    s.push_str(&format!("property double {c}\n"));
                }
                s.push_str("end_header\n");
                for r in rows {
                    let xs: Vec<String> = r.point.coords().iter().map(|x| format!("{x}")).collect();
                    s.push_str(&xs.join(" "));
                    s.push('\n');
                }
            }
            ExportFormat::Json => {
                let samples: Vec<_> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "depth": r.depth,
                            "word": r.word.to_string(),
                            "source": r.source,
                            "point": r.point.coords(),
                            "flags": r.flags,
                        })
                    })
                    .collect();
                let doc = json!({
                    "schema": SCHEMA,
                    "kind": self.kind,
                    "columns": cols,
                    "count": samples.len(),
                    "metadata": self.metadata,
                    "samples": samples,
                });
                s = serde_json::to_string_pretty(&doc).expect("plain JSON values");
                s.push('\n');
            }
        }
        s
    }
}

pub fn export_point_cloud(cloud: &PointCloud, path: &Path, format: ExportFormat) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut f = std::fs::File::create(path).map_err(io)?;
    f.write_all(cloud.render(format).as_bytes()).map_err(io)?;
    Ok(())
}
