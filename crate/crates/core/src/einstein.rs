//! Lagrangian Grassmannian of a symplectic 4-space in the Plücker model:
//! photons, crooked surfaces and the disjointness and tangency criteria.
//!
//! Frame coordinates of a vector `v = α1 e1 + β1 f1 + α2 e2 + β2 f2` are read
//! off with the pairing: `α_i = I(v, f_i)` and `β_i = I(e_i, v)`.

use std::sync::Arc;

use serde::Serialize;

use crate::cones::fundamental_cone;
use crate::error::{Error, Result};
use crate::linalg::{Mat4, Vec4};
use crate::monodromy::GroupData;
use crate::scalar::{CycloField, CycloReal};

/// Point of `W = Λ²₀V` in the basis
/// `(e1∧e2, e1∧f2, e1∧f1 - e2∧f2, f1∧e2, f1∧f2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PluckerPoint {
    pub w: [CycloReal; 5],
}

impl PluckerPoint {
    /// The signature (2,3) form `w1 w3 - w0 w4 - w2²`.
    pub fn q(&self) -> CycloReal {
        let w = &self.w;
        &w[1] * &w[3] - &w[0] * &w[4] - w[2].square()
    }

    /// Polarisation of [`PluckerPoint::q`].
    pub fn pair(&self, o: &PluckerPoint) -> CycloReal {
        let (a, b) = (&self.w, &o.w);
        let half = a[0].constant(1, 2);
        (&a[1] * &b[3] + &a[3] * &b[1] - &a[0] * &b[4] - &a[4] * &b[0]) * half - &a[2] * &b[2]
    }

    pub fn to_f64(&self) -> [f64; 5] {
        std::array::from_fn(|i| self.w[i].to_f64())
    }
}

/// A Lagrangian plane given by two spanning vectors.
#[derive(Clone, Debug, Serialize)]
pub struct Lagrangian {
    pub x: Vec4,
    pub y: Vec4,
}

fn independent(x: &Vec4, y: &Vec4) -> bool {
    (0..4).any(|i| (i + 1..4).any(|j| !(&x[i] * &y[j] - &x[j] * &y[i]).is_zero()))
}

impl Lagrangian {
    pub fn new(x: Vec4, y: Vec4, pairing: &Mat4) -> Result<Self> {
        if !independent(&x, &y) {
            return Err(Error::Domain("Lagrangian generators are dependent".into()));
        }
        if !pairing_of(pairing, &x, &y).is_zero() {
            return Err(Error::Domain("generators are not isotropic".into()));
        }
        Ok(Lagrangian { x, y })
    }

    /// Plücker coordinates relative to `frame`.
    pub fn plucker(&self, frame: &CrookedFrame) -> PluckerPoint {
        let a = frame.coords(&self.x);
        let b = frame.coords(&self.y);
        // coordinate slots: α1 = 0, β1 = 1, α2 = 2, β2 = 3
        let p = |u: usize, v: usize| &a[u] * &b[v] - &b[u] * &a[v];
        PluckerPoint {
            w: [p(0, 2), p(0, 3), p(0, 1), p(1, 2), p(1, 3)],
        }
    }

    pub fn transform(&self, g: &Mat4) -> Lagrangian {
        Lagrangian {
            x: g.mul_vec(&self.x),
            y: g.mul_vec(&self.y),
        }
    }

    /// True if both planes are the same subspace.
    pub fn same_plane(&self, o: &Lagrangian) -> bool {
        let in_span = |v: &Vec4| {
            let m = Mat4::from_cols([
                self.x.clone(),
                self.y.clone(),
                v.clone(),
                Vec4::zero(v.field()),
            ]);
            m.rank() == 2
        };
        in_span(&o.x) && in_span(&o.y)
    }
}

fn pairing_of(p: &Mat4, u: &Vec4, v: &Vec4) -> CycloReal {
    u.dot(&p.mul_vec(v))
}

/// Symplectic basis `e1, f1, e2, f2` with an anti-symplectic involution
/// fixing the `e` lines and the `f` lines.
#[derive(Clone, Debug, Serialize)]
pub struct CrookedFrame {
    pub e1: Vec4,
    pub f1: Vec4,
    pub e2: Vec4,
    pub f2: Vec4,
    pub involution: Mat4,
    #[serde(skip)]
    pub pairing: Mat4,
}

impl CrookedFrame {
    pub fn new(
        e1: Vec4,
        f1: Vec4,
        e2: Vec4,
        f2: Vec4,
        involution: Mat4,
        pairing: Mat4,
    ) -> Result<Self> {
        let fr = CrookedFrame {
            e1,
            f1,
            e2,
            f2,
            involution,
            pairing,
        };
        fr.validate()?;
        Ok(fr)
    }

    /// Standard basis of `R^4` ordered `(e1, f1, e2, f2)`, with the standard
    /// pairing and the involution `e ↦ e, f ↦ -f`.
    pub fn standard(field: &Arc<CycloField>) -> Self {
        let q = |p: i64| CycloReal::ratio_in(field, p, 1);
        let z = || q(0);
        let pairing = Mat4::from_rows([
            [z(), q(1), z(), z()],
            [q(-1), z(), z(), z()],
            [z(), z(), z(), q(1)],
            [z(), z(), q(-1), z()],
        ]);
        let inv = Mat4::diag([q(1), q(-1), q(1), q(-1)]);
        let b = |i| Vec4::basis(field, i);
        CrookedFrame::new(b(0), b(1), b(2), b(3), inv, pairing).expect("standard frame")
    }

    /// Frame from cone generators `[g0 | g1 | g2 | g3]` whose pairing matrix
    /// is anti-diagonal: the pairs `(g0, g3)` and `(g2, g1)` become `(e, f)`
    /// pairs, swapped and rescaled so that `I(e, f) = 1`.
    pub fn from_cone(gens: &Mat4, involution: Mat4, pairing: Mat4) -> Result<Self> {
        let norm = |a: Vec4, b: Vec4| -> Result<(Vec4, Vec4)> {
            let g = pairing_of(&pairing, &a, &b);
            match g.sign() {
                1 => Ok((a, b.scale(&g.inv()?))),
                -1 => Ok((b, a.scale(&(-g).inv()?))),
                _ => Err(Error::Domain("cone vertices pair to zero".into())),
            }
        };
        let (e1, f1) = norm(gens.col(0), gens.col(3))?;
        let (e2, f2) = norm(gens.col(2), gens.col(1))?;
        CrookedFrame::new(e1, f1, e2, f2, involution, pairing)
    }

    fn validate(&self) -> Result<()> {
        let i = |u: &Vec4, v: &Vec4| pairing_of(&self.pairing, u, v);
        let f = self.e1.field();
        let one = CycloReal::ratio_in(f, 1, 1);
        let ok = i(&self.e1, &self.f1) == one
            && i(&self.e2, &self.f2) == one
            && [
                i(&self.e1, &self.e2),
                i(&self.e1, &self.f2),
                i(&self.f1, &self.e2),
                i(&self.f1, &self.f2),
            ]
            .iter()
            .all(CycloReal::is_zero);
        if !ok {
            return Err(Error::invariant(
                "frame_symplectic",
                "frame is not symplectic",
            ));
        }
        let a = &self.involution;
        let id = Mat4::identity(f);
        if (a * a) != id || &(&a.transpose() * &self.pairing) * a != -&self.pairing {
            return Err(Error::invariant(
                "frame_involution",
                "involution is not an anti-symplectic involution",
            ));
        }
        // e ↦ εe and f ↦ -εf for a common sign ε
        let ae = a.mul_vec(&self.e1);
        let eps = if ae == self.e1 {
            one
        } else if ae == -&self.e1 {
            -one
        } else {
            return Err(Error::invariant("frame_involution", "A e1 ≠ ±e1"));
        };
        let fixed = a.mul_vec(&self.e2) == self.e2.scale(&eps)
            && a.mul_vec(&self.f1) == self.f1.scale(&-&eps)
            && a.mul_vec(&self.f2) == self.f2.scale(&-&eps);
        if !fixed {
            return Err(Error::invariant(
                "frame_involution",
                "involution does not preserve the frame lines",
            ));
        }
        Ok(())
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.e1.field()
    }

    pub fn pair(&self, u: &Vec4, v: &Vec4) -> CycloReal {
        pairing_of(&self.pairing, u, v)
    }

    /// `(α1, β1, α2, β2)`.
    pub fn coords(&self, v: &Vec4) -> [CycloReal; 4] {
        [
            self.pair(v, &self.f1),
            self.pair(&self.e1, v),
            self.pair(v, &self.f2),
            self.pair(&self.e2, v),
        ]
    }

    /// Vertices in the order `e1, f1, e2, f2`.
    pub fn vertices(&self) -> [&Vec4; 4] {
        [&self.e1, &self.f1, &self.e2, &self.f2]
    }

    /// Columns `e1, f1, e2, f2`.
    pub fn matrix(&self) -> Mat4 {
        Mat4::from_cols([
            self.e1.clone(),
            self.f1.clone(),
            self.e2.clone(),
            self.f2.clone(),
        ])
    }

    /// Image frame under `g ∈ GSp`, renormalised, with involution `g A g⁻¹`.
    pub fn transform(&self, g: &Mat4) -> Result<Self> {
        let gi = g
            .inverse()
            .ok_or_else(|| Error::Domain("singular transformation".into()))?;
        let gens = Mat4::from_cols([
            g.mul_vec(&self.e1),
            g.mul_vec(&self.f2),
            g.mul_vec(&self.e2),
            g.mul_vec(&self.f1),
        ]);
        let inv = &(g * &self.involution) * &gi;
        CrookedFrame::from_cone(&gens, inv, self.pairing.clone())
    }

    pub fn lagrangian(&self, x: &Vec4, y: &Vec4) -> Result<Lagrangian> {
        Lagrangian::new(x.clone(), y.clone(), &self.pairing)
    }
}

/// The photon `φ(v)`: all Lagrangians through `v`, parametrised by `P¹` as
/// `span(v, s·u1 + t·u2)`.
#[derive(Clone, Debug, Serialize)]
pub struct Photon {
    pub v: Vec4,
    pub u1: Vec4,
    pub u2: Vec4,
}

impl Photon {
    pub fn member(&self, s: &CycloReal, t: &CycloReal) -> Lagrangian {
        Lagrangian {
            x: self.v.clone(),
            y: &self.u1.scale(s) + &self.u2.scale(t),
        }
    }

    pub fn contains(&self, l: &Lagrangian) -> bool {
        let m = Mat4::from_cols([
            l.x.clone(),
            l.y.clone(),
            self.v.clone(),
            Vec4::zero(self.v.field()),
        ]);
        m.rank() == 2
    }
}

pub fn photon(v: &Vec4, pairing: &Mat4) -> Result<Photon> {
    if v.is_zero() {
        return Err(Error::Domain("photon of the zero vector".into()));
    }
    let field = v.field().clone();
    let r = pairing.transpose().mul_vec(v);
    let p = (0..4)
        .find(|&i| !r[i].is_zero())
        .expect("pairing is nondegenerate");
    let basis: Vec<Vec4> = (0..4)
        .filter(|&j| j != p)
        .map(|j| {
            let c = -(&r[j] / &r[p]);
            Vec4(std::array::from_fn(|i| {
                if i == j {
                    CycloReal::ratio_in(&field, 1, 1)
                } else if i == p {
                    c.clone()
                } else {
                    CycloReal::ratio_in(&field, 0, 1)
                }
            }))
        })
        .collect();
    for a in 0..3 {
        for b in a + 1..3 {
            let m = Mat4::from_cols([
                v.clone(),
                basis[a].clone(),
                basis[b].clone(),
                Vec4::zero(&field),
            ]);
            if m.rank() == 3 {
                return Ok(Photon {
                    v: v.clone(),
                    u1: basis[a].clone(),
                    u2: basis[b].clone(),
                });
            }
        }
    }
    unreachable!("v^⊥ is three-dimensional and contains v")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Maslov {
    pub index: i8,
    pub degenerate: bool,
}

/// Signature of `Q12 = α1 β1 - α2 β2` restricted to `L`.
pub fn maslov_index(l: &Lagrangian, frame: &CrookedFrame) -> Maslov {
    let a = frame.coords(&l.x);
    let b = frame.coords(&l.y);
    let half = a[0].constant(1, 2);
    let qf = |u: &[CycloReal; 4], w: &[CycloReal; 4]| {
        (&u[0] * &w[1] + &w[0] * &u[1] - &u[2] * &w[3] - &w[2] * &u[3]) * &half
    };
    let (gxx, gxy, gyy) = (qf(&a, &a), qf(&a, &b), qf(&b, &b));
    let det = &gxx * &gyy - gxy.square();
    let tr = &gxx + &gyy;
    match det.sign() {
        1 => Maslov {
            index: 2 * tr.sign(),
            degenerate: false,
        },
        -1 => Maslov {
            index: 0,
            degenerate: false,
        },
        _ => Maslov {
            index: tr.sign(),
            degenerate: true,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Position {
    WingE,
    WingF,
    StemPlus,
    StemMinus,
    /// Component of the complement determined by the cone `C`.
    SmallComponent,
    /// Component determined by `A·C`.
    BigComponent,
}

impl Position {
    /// Position of `A·L` given the position of `L`.
    pub fn reflected(self) -> Self {
        match self {
            Position::StemPlus => Position::StemMinus,
            Position::StemMinus => Position::StemPlus,
            Position::SmallComponent => Position::BigComponent,
            Position::BigComponent => Position::SmallComponent,
            p => p,
        }
    }

    pub fn on_surface(self) -> bool {
        !matches!(self, Position::SmallComponent | Position::BigComponent)
    }
}

/// Common zero direction `(cx, cy)` of two linear forms with values
/// `(p0, p1)` and `(r0, r1)` on the basis `x, y`. `None` if only the origin.
fn common_zero(p: [&CycloReal; 2], r: [&CycloReal; 2]) -> Option<Option<[CycloReal; 2]>> {
    let det = p[0] * r[1] - p[1] * r[0];
    if !det.is_zero() {
        return None;
    }
    if let Some(row) = [p, r]
        .into_iter()
        .find(|row| !row[0].is_zero() || !row[1].is_zero())
    {
        Some(Some([-row[1], row[0].clone()]))
    } else {
        // both forms vanish on L
        Some(None)
    }
}

fn comb(c: &[CycloReal; 2], a: &[CycloReal; 4], b: &[CycloReal; 4]) -> [CycloReal; 4] {
    std::array::from_fn(|i| &c[0] * &a[i] + &c[1] * &b[i])
}

pub fn classify_lagrangian(l: &Lagrangian, frame: &CrookedFrame) -> Position {
    let a = frame.coords(&l.x);
    let b = frame.coords(&l.y);
    // slots: α1 = 0, β1 = 1, α2 = 2, β2 = 3
    for (pos, (s, t), (u, w)) in [
        (Position::WingE, (1, 3), (0, 2)),
        (Position::WingF, (0, 2), (1, 3)),
    ] {
        match common_zero([&a[s], &b[s]], [&a[t], &b[t]]) {
            Some(None) => return pos,
            Some(Some(c)) => {
                let p = comb(&c, &a, &b);
                if (&p[u] * &p[w]).sign() >= 0 {
                    return pos;
                }
            }
            None => {}
        }
    }

    let s1 = common_zero([&a[2], &b[2]], [&a[3], &b[3]]);
    let s2 = common_zero([&a[0], &b[0]], [&a[1], &b[1]]);
    if let (Some(Some(c1)), Some(Some(c2))) = (&s1, &s2) {
        let w1 = comb(c1, &a, &b);
        let w2 = comb(c2, &a, &b);
        let m1 = (&w1[0] * &w1[1]).sign();
        let m2 = (&w2[2] * &w2[3]).sign();
        if m1 > 0 && m2 < 0 {
            return Position::StemPlus;
        }
        if m1 < 0 && m2 > 0 {
            return Position::StemMinus;
        }
    }

    match interior_point(&a, &b) {
        Some(p) => {
            if (&p[0] * &p[1]).sign() > 0 {
                Position::SmallComponent
            } else {
                Position::BigComponent
            }
        }
        None => unreachable!("a Lagrangian off the crooked surface meets an open cone"),
    }
}

/// A point of `L` with `α1 α2 > 0` and `β1 β2 > 0`, searched among directions
/// inside every sector cut out by the zero lines of the four coordinates.
fn interior_point(a: &[CycloReal; 4], b: &[CycloReal; 4]) -> Option<[CycloReal; 4]> {
    let f = a[0].field().clone();
    let q = |p: i64| CycloReal::ratio_in(&f, p, 1);
    let zeros: Vec<[CycloReal; 2]> = (0..4)
        .filter(|&i| !(a[i].is_zero() && b[i].is_zero()))
        .map(|i| [-&b[i], a[i].clone()])
        .collect();
    let mut cands: Vec<[CycloReal; 2]> = vec![[q(1), q(0)], [q(0), q(1)]];
    for (i, z) in zeros.iter().enumerate() {
        let perp = [-&z[1], z[0].clone()];
        cands.push([&z[0] + &perp[0], &z[1] + &perp[1]]);
        cands.push([&z[0] - &perp[0], &z[1] - &perp[1]]);
        for w in &zeros[i + 1..] {
            cands.push([&z[0] + &w[0], &z[1] + &w[1]]);
            cands.push([&z[0] - &w[0], &z[1] - &w[1]]);
        }
    }
    cands
        .iter()
        .filter(|c| !(c[0].is_zero() && c[1].is_zero()))
        .map(|c| comb(c, a, b))
        .find(|p| (&p[0] * &p[2]).sign() > 0 && (&p[1] * &p[3]).sign() > 0)
}

/// Condition (ii): `α1 α2 > 0` and `β1 β2 > 0`.
pub fn photon_disjoint_from_surface(v: &Vec4, frame: &CrookedFrame) -> bool {
    let c = frame.coords(v);
    (&c[0] * &c[2]).sign() > 0 && (&c[1] * &c[3]).sign() > 0
}

fn same_strict_sign(c: &[CycloReal; 4]) -> bool {
    let s = c.each_ref().map(CycloReal::sign);
    s.iter().all(|&x| x > 0) || s.iter().all(|&x| x < 0)
}

/// Condition (iii): `v` lies in the open projective cone `C` or in `A·C`,
/// tested through the involution matrix.
pub fn in_open_cones(v: &Vec4, frame: &CrookedFrame) -> bool {
    same_strict_sign(&frame.coords(v))
        || same_strict_sign(&frame.coords(&frame.involution.mul_vec(v)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Wing {
    E,
    F,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SurfaceRelation {
    Disjoint,
    /// The surfaces share the given wing.
    WingTangent {
        wing: Wing,
    },
    /// The surfaces meet along the photon of `photon`.
    PhotonTangent {
        photon: Vec4,
    },
    /// Neither criterion applies.
    Undetermined,
}

pub fn surfaces_relation(f: &CrookedFrame, g: &CrookedFrame) -> SurfaceRelation {
    let disjoint = f.vertices().iter().all(|v| in_open_cones(v, g))
        && g.vertices().iter().all(|v| in_open_cones(v, f));
    if disjoint {
        return SurfaceRelation::Disjoint;
    }
    for (p, q) in [(f, g), (g, f)] {
        if let Some(photon) = photon_tangent(p, q) {
            return SurfaceRelation::PhotonTangent { photon };
        }
    }
    for (p, q) in [(f, g), (g, f)] {
        if let Some(wing) = wing_tangent(p, q) {
            return SurfaceRelation::WingTangent { wing };
        }
    }
    SurfaceRelation::Undetermined
}

/// Checks the unipotent normal form of `g` relative to `f`, up to positive
/// rescaling of the frame vectors:
/// `f1' = p f1`, `e2' = q f1 + r e2`, `f2' = x f1 + y e2 + z f2`,
/// `e1' = a e1 + b f1 + c e2 + d f2`, all ten coefficients positive, with the
/// scale-invariant relations `pa = 1`, `rz = 1`, `qyz = 2x`, `3bp = xq`,
/// `xq = p²cd` and `yd = 2cz`.
fn photon_tangent(f: &CrookedFrame, g: &CrookedFrame) -> Option<Vec4> {
    let [f1c, e2c, f2c, e1c] = [&g.f1, &g.e2, &g.f2, &g.e1].map(|v| f.coords(v));
    // coordinates (α1, β1, α2, β2) are the e1, f1, e2, f2 components
    let zero = |c: &[CycloReal; 4], idx: &[usize]| idx.iter().all(|&i| c[i].is_zero());
    if !(zero(&f1c, &[0, 2, 3]) && zero(&e2c, &[0, 3]) && zero(&f2c, &[0])) {
        return None;
    }
    let p = &f1c[1];
    let (q, r) = (&e2c[1], &e2c[2]);
    let (x, y, z) = (&f2c[1], &f2c[2], &f2c[3]);
    let (a, b, c, d) = (&e1c[0], &e1c[1], &e1c[2], &e1c[3]);
    if ![p, q, r, x, y, z, a, b, c, d].iter().all(|t| t.sign() > 0) {
        return None;
    }
    let k = |n: i64| p.constant(n, 1);
    let rel = (p * a) == k(1)
        && (r * z) == k(1)
        && (q * y * z) == k(2) * x
        && k(3) * b * p == x * q
        && x * q == p.square() * c * d
        && y * d == k(2) * c * z;
    rel.then(|| f.f1.clone())
}

/// One wing is shared and the two remaining vertices of `g` lie in the
/// relative interiors of facets of the same closed cone `K ∈ {C, A·C}` of
/// `f`, with their sum in the interior of `K`.
fn wing_tangent(f: &CrookedFrame, g: &CrookedFrame) -> Option<Wing> {
    let same_edge = |p: [&Vec4; 2], q: [&Vec4; 2]| {
        (p[0].positively_proportional(q[0]) && p[1].positively_proportional(q[1]))
            || (p[0].positively_proportional(q[1]) && p[1].positively_proportional(q[0]))
    };
    let (wing, others) = if same_edge([&f.e1, &f.e2], [&g.e1, &g.e2]) {
        (Wing::E, [&g.f1, &g.f2])
    } else if same_edge([&f.f1, &f.f2], [&g.f1, &g.f2]) {
        (Wing::F, [&g.e1, &g.e2])
    } else {
        return None;
    };
    let id = Mat4::identity(f.field());
    for k in [&id, &f.involution] {
        let facet = |v: &Vec4| {
            let s = f.coords(&k.mul_vec(v)).map(|c| c.sign());
            s.iter().all(|&x| x >= 0) && s.iter().filter(|&&x| x == 0).count() == 1
        };
        if facet(others[0]) && facet(others[1]) {
            let sum = k.mul_vec(&(others[0] + others[1]));
            if f.coords(&sum).iter().all(|c| c.sign() > 0) {
                return Some(wing);
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurfacePart {
    WingE,
    WingF,
    StemPlus,
    StemMinus,
}

impl SurfacePart {
    pub const ALL: [SurfacePart; 4] = [
        SurfacePart::WingE,
        SurfacePart::WingF,
        SurfacePart::StemPlus,
        SurfacePart::StemMinus,
    ];

    pub fn position(self) -> Position {
        match self {
            SurfacePart::WingE => Position::WingE,
            SurfacePart::WingF => Position::WingF,
            SurfacePart::StemPlus => Position::StemPlus,
            SurfacePart::StemMinus => Position::StemMinus,
        }
    }
}

/// A Lagrangian on the crooked surface of `frame`.
///
/// Wings: `a` picks the point `a0 x1 + a1 x2` of the edge (`x = e` or `f`,
/// `a0, a1 ≥ 0`) and `b` the member of its photon. Stem: the plane spanned by
/// `a0 e1 + a1 f1` and `b0 e2 + b1 f2`, with the sign conditions of `part`.
pub fn surface_member(
    frame: &CrookedFrame,
    part: SurfacePart,
    a: [&CycloReal; 2],
    b: [&CycloReal; 2],
) -> Result<Lagrangian> {
    let lin = |c: [&CycloReal; 2], u: &Vec4, w: &Vec4| &u.scale(c[0]) + &w.scale(c[1]);
    let (x, y) = match part {
        SurfacePart::WingE | SurfacePart::WingF => {
            if a[0].sign() < 0 || a[1].sign() < 0 {
                return Err(Error::Domain("edge parameters must be nonnegative".into()));
            }
            let (p1, p2, q1, q2) = if part == SurfacePart::WingE {
                (&frame.e1, &frame.e2, &frame.f1, &frame.f2)
            } else {
                (&frame.f1, &frame.f2, &frame.e1, &frame.e2)
            };
            let v = lin(a, p1, p2);
            let na1 = -a[1];
            let na0 = -a[0];
            let along = lin([&na1, a[0]], p1, p2);
            let across = lin([a[1], &na0], q1, q2);
            (v, lin(b, &along, &across))
        }
        SurfacePart::StemPlus | SurfacePart::StemMinus => {
            let s = if part == SurfacePart::StemPlus { 1 } else { -1 };
            if (a[0] * a[1]).sign() != s || (b[0] * b[1]).sign() != -s {
                return Err(Error::Domain(
                    "stem parameters violate the sign conditions".into(),
                ));
            }
            (lin(a, &frame.e1, &frame.f1), lin(b, &frame.e2, &frame.f2))
        }
    };
    frame.lagrangian(&x, &y)
}

/// The matrix `U` with `U·(e1, f1, e2, f2) = (e1', f1', e2', f2')`.
pub fn frame_transition(f: &CrookedFrame, g: &CrookedFrame) -> Result<Mat4> {
    let fi = f
        .matrix()
        .inverse()
        .ok_or_else(|| Error::Domain("frame vectors are dependent".into()))?;
    Ok(&g.matrix() * &fi)
}

/// Frame of the fundamental cone: `e1 = v0`, `f1 = v3/α`, `e2 = v2`,
/// `f2 = v1/α`, with involution `A`.
pub fn fundamental_frame(d: &GroupData) -> Result<CrookedFrame> {
    let cone = fundamental_cone(d)?;
    CrookedFrame::from_cone(&cone.gens, d.a.clone(), d.j.clone())
}

/// Index `i` of the cyclic index set `0, 0', 1, 1', …` to the group element
/// carrying the fundamental cone onto cone `i`.
pub fn cone_element(d: &GroupData, i: usize) -> Mat4 {
    let rk = d.r.pow((i / 2) as u32);
    if i % 2 == 1 {
        &rk * &d.b
    } else {
        rk
    }
}

/// The `2N` frames of the cones `C_k` and `C'_k`, in index order.
pub fn group_frames(d: &GroupData) -> Result<Vec<CrookedFrame>> {
    let base = fundamental_frame(d)?;
    (0..2 * d.n as usize)
        .map(|i| base.transform(&cone_element(d, i)))
        .collect()
}
