//! Certificates: canonical JSON records of a decomposition, a torus or an
//! openness sweep, and an independent checker that recomputes every residual
//! from the stored witnesses.
//!
//! Floats are stored as decimal strings with 17 significant digits and object
//! keys are sorted, so serialising a parsed certificate reproduces the input
//! byte for byte.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::algebra::{bracket, inner, su, trace_form, AlgebraElement, CompactAlgebra};
use crate::error::{Error, Result};
use crate::numkit::{self, mexp, CMatrix, I};
use crate::rootsys::{compact_form_from_roots, CartanType, RootSystemPresentation, TorusBasis, UnitaryFrame};
use crate::solver::{fit_power_law, AlgebraDecomposition, GroupDecomposition, OpennessReport, OpennessRow};

pub const SCHEMA: &str = "liecomm-cert/1";

/// Tolerance for stored norms and residuals against recomputed ones.
pub const STORED_TOL: f64 = 1e-12;
/// Tolerance for unitarity, determinant and structural identities.
pub const STRUCTURE_TOL: f64 = 1e-10;
pub const TORAL_TOL: f64 = 1e-9;
pub const ORTHONORMAL_TOL: f64 = 1e-10;
pub const ORTHOGONAL_TOL: f64 = 1e-9;

/// A float written as a 17-significant-digit decimal string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dec(pub f64);

impl Serialize for Dec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{:.16e}", self.0))
    }
}

impl<'de> Deserialize<'de> for Dec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Ok(Dec(x)),
            Raw::Text(t) => t
                .trim()
                .parse()
                .map(Dec)
                .map_err(|_| de::Error::custom(format!("invalid decimal {t:?}"))),
        }
    }
}

/// A complex matrix as rows of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat(pub CMatrix);

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = &self.0;
        let rows: Vec<Vec<[Dec; 2]>> = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| [Dec(m[(i, j)].re), Dec(m[(i, j)].im)]).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<[Dec; 2]>>::deserialize(d)?;
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if n == 0 || m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(de::Error::custom("matrix must be a non-empty rectangular array"));
        }
        Ok(Mat(CMatrix::from_fn(n, m, |i, j| Complex64::new(rows[i][j][0].0, rows[i][j][1].0))))
    }
}

/// Settings echoed into a certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub tol: Dec,
    pub z_max: Option<Dec>,
    pub seed: Option<u64>,
    pub eps: Option<Dec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraCert {
    pub group: String,
    pub n: usize,
    pub target: Mat,
    pub x: Mat,
    pub y: Mat,
    pub conjugator: Mat,
    pub residual: Dec,
    pub norm_target: Dec,
    pub norm_x: Dec,
    pub norm_y: Dec,
    pub config: ConfigEcho,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupCert {
    pub group: String,
    pub n: usize,
    pub target: Mat,
    pub a: Mat,
    pub b: Mat,
    pub x: Mat,
    pub y: Mat,
    pub p: Mat,
    pub q: Mat,
    pub residual: Dec,
    pub distance_a: Dec,
    pub distance_b: Dec,
    pub log_norm: Dec,
    pub config: ConfigEcho,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusCert {
    /// `"su"` for frame tori, otherwise the Cartan type letter.
    pub group: String,
    pub rank: usize,
    /// Reference frame for `su(n)` tori.
    pub frame: Option<Mat>,
    /// Coordinates of the orthonormal torus basis in the algebra's basis.
    pub basis: Vec<Vec<Dec>>,
    pub toral: Dec,
    pub orthonormal: Dec,
    pub orthogonal: Dec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowCert {
    pub eps: Dec,
    pub max_norm: Dec,
    pub max_residual: Dec,
    pub succeeded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureCert {
    pub eps: Dec,
    pub sample: usize,
    pub seed: u64,
    pub error: String,
    pub stage: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpennessCert {
    pub level: String,
    pub group: String,
    pub n: usize,
    pub samples: usize,
    pub rows: Vec<RowCert>,
    pub exponent: Option<Dec>,
    pub prefactor: Option<Dec>,
    pub constant: Dec,
    pub failures: Vec<FailureCert>,
    pub config: ConfigEcho,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Algebra(AlgebraCert),
    Group(GroupCert),
    Torus(TorusCert),
    OpennessReport(OpennessCert),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: String,
    #[serde(flatten)]
    pub payload: Payload,
}

fn su_size(algebra: &Arc<CompactAlgebra>) -> Result<usize> {
    algebra.matrix_size().ok_or(Error::NoRealization)
}

impl Certificate {
    fn wrap(payload: Payload) -> Self {
        Certificate {
            schema_version: SCHEMA.to_string(),
            payload,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::Algebra(_) => "algebra",
            Payload::Group(_) => "group",
            Payload::Torus(_) => "torus",
            Payload::OpennessReport(_) => "openness-report",
        }
    }

    pub fn from_algebra(d: &AlgebraDecomposition, config: ConfigEcho) -> Result<Self> {
        Ok(Self::wrap(Payload::Algebra(AlgebraCert {
            group: "su".into(),
            n: su_size(d.target.algebra())?,
            target: Mat(d.target.to_matrix()?),
            x: Mat(d.x.to_matrix()?),
            y: Mat(d.y.to_matrix()?),
            conjugator: Mat(d.conjugator.matrix().clone()),
            residual: Dec(d.residual),
            norm_target: Dec(d.target.norm()),
            norm_x: Dec(d.norm_x),
            norm_y: Dec(d.norm_y),
            config,
        })))
    }

    pub fn from_group(d: &GroupDecomposition, config: ConfigEcho) -> Result<Self> {
        Ok(Self::wrap(Payload::Group(GroupCert {
            group: "su".into(),
            n: d.target.n(),
            target: Mat(d.target.matrix().clone()),
            a: Mat(d.a.matrix().clone()),
            b: Mat(d.b.matrix().clone()),
            x: Mat(d.x.to_matrix()?),
            y: Mat(d.y.to_matrix()?),
            p: Mat(d.p.matrix().clone()),
            q: Mat(d.q.matrix().clone()),
            residual: Dec(d.residual),
            distance_a: Dec(d.distance_a),
            distance_b: Dec(d.distance_b),
            log_norm: Dec(d.log_target.norm()),
            config,
        })))
    }

    /// Torus of `su(n)` orthogonal to the torus of `frame`.
    pub fn from_su_torus(torus: &TorusBasis, reference: &TorusBasis, frame: &UnitaryFrame) -> Result<Self> {
        let checks = torus.checks(Some(reference))?;
        Ok(Self::wrap(Payload::Torus(TorusCert {
            group: "su".into(),
            rank: torus.algebra().rank(),
            frame: Some(Mat(frame.matrix().clone())),
            basis: coords_of(torus),
            toral: Dec(checks.toral),
            orthonormal: Dec(checks.orthonormal),
            orthogonal: Dec(checks.orthogonal.unwrap_or(0.0)),
        })))
    }

    /// Torus of a root-system compact form, orthogonal to the span of the `k_α`.
    pub fn from_root_torus(cartan_type: CartanType, torus: &TorusBasis, reference: &TorusBasis) -> Result<Self> {
        let checks = torus.checks(Some(reference))?;
        Ok(Self::wrap(Payload::Torus(TorusCert {
            group: cartan_type.to_string(),
            rank: torus.algebra().rank(),
            frame: None,
            basis: coords_of(torus),
            toral: Dec(checks.toral),
            orthonormal: Dec(checks.orthonormal),
            orthogonal: Dec(checks.orthogonal.unwrap_or(0.0)),
        })))
    }

    pub fn from_openness(r: &OpennessReport, n: usize, tol: f64) -> Self {
        Self::wrap(Payload::OpennessReport(OpennessCert {
            level: r.level.to_string(),
            group: "su".into(),
            n,
            samples: r.samples,
            rows: r
                .rows
                .iter()
                .map(|row| RowCert {
                    eps: Dec(row.eps),
                    max_norm: Dec(row.max_norm),
                    max_residual: Dec(row.max_residual),
                    succeeded: row.succeeded,
                })
                .collect(),
            exponent: r.exponent.map(Dec),
            prefactor: r.prefactor.map(Dec),
            constant: Dec(r.constant),
            failures: r
                .failures
                .iter()
                .map(|f| FailureCert {
                    eps: Dec(f.eps),
                    sample: f.sample,
                    seed: f.seed,
                    error: f.error.clone(),
                    stage: f.stage.clone(),
                })
                .collect(),
            config: ConfigEcho {
                tol: Dec(tol),
                z_max: None,
                seed: Some(r.seed),
                eps: None,
            },
        }))
    }

    /// Canonical text: sorted keys, two-space indentation, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let value = serde_json::to_value(self).expect("certificates serialise to JSON");
        let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialise");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let cert: Certificate = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        if cert.schema_version != SCHEMA {
            return Err(Error::Malformed(format!(
                "unsupported schema version {:?}",
                cert.schema_version
            )));
        }
        cert.check_shapes()?;
        Ok(cert)
    }

    fn check_shapes(&self) -> Result<()> {
        let square = |name: &str, m: &Mat, n: usize| {
            if m.0.nrows() == n && m.0.ncols() == n {
                Ok(())
            } else {
                Err(Error::Malformed(format!(
                    "{name} is {}x{}, expected {n}x{n}",
                    m.0.nrows(),
                    m.0.ncols()
                )))
            }
        };
        let su_group = |g: &str, n: usize| {
            if g == "su" && n >= 2 {
                Ok(())
            } else {
                Err(Error::Malformed(format!("unsupported group {g}({n})")))
            }
        };
        match &self.payload {
            Payload::Algebra(c) => {
                su_group(&c.group, c.n)?;
                for (name, m) in [("target", &c.target), ("x", &c.x), ("y", &c.y), ("conjugator", &c.conjugator)] {
                    square(name, m, c.n)?;
                }
            }
            Payload::Group(c) => {
                su_group(&c.group, c.n)?;
                for (name, m) in [
                    ("target", &c.target),
                    ("a", &c.a),
                    ("b", &c.b),
                    ("x", &c.x),
                    ("y", &c.y),
                    ("p", &c.p),
                    ("q", &c.q),
                ] {
                    square(name, m, c.n)?;
                }
            }
            Payload::Torus(c) => {
                if c.group == "su" {
                    let frame = c.frame.as_ref().ok_or_else(|| Error::Malformed("su torus without frame".into()))?;
                    square("frame", frame, c.rank + 1)?;
                } else {
                    c.group.parse::<CartanType>().map_err(|e| Error::Malformed(e.to_string()))?;
                }
            }
            Payload::OpennessReport(c) => {
                su_group(&c.group, c.n)?;
                if c.level != "algebra" && c.level != "group" {
                    return Err(Error::Malformed(format!("unknown level {:?}", c.level)));
                }
            }
        }
        Ok(())
    }

    /// Recompute every check from the stored data.
    ///
    /// Errors only when the certificate cannot be interpreted at all (for
    /// instance an unsupported root system); failed checks are reported in
    /// the returned table.
    pub fn verify(&self) -> Result<Verification> {
        self.check_shapes()?;
        let mut v = Verification::default();
        match &self.payload {
            Payload::Algebra(c) => verify_algebra(c, &mut v),
            Payload::Group(c) => verify_group(c, &mut v),
            Payload::Torus(c) => verify_torus(c, &mut v)?,
            Payload::OpennessReport(c) => verify_openness(c, &mut v),
        }
        Ok(v)
    }
}

fn coords_of(torus: &TorusBasis) -> Vec<Vec<Dec>> {
    torus.vectors().iter().map(|t| t.coords().iter().map(|&c| Dec(c)).collect()).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.value <= self.limit
    }
}

/// Outcome of [`Certificate::verify`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Verification {
    pub checks: Vec<Check>,
}

impl Verification {
    fn push(&mut self, name: impl Into<String>, value: f64, limit: f64) {
        self.checks.push(Check {
            name: name.into(),
            value,
            limit,
        });
    }

    fn stored(&mut self, name: &str, stored: f64, recomputed: f64) {
        self.push(format!("stored {name}"), (stored - recomputed).abs(), STORED_TOL);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        writeln!(f, "{:width$}  {:>12}  {:>12}  status", "check", "value", "limit")?;
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            writeln!(f, "{:width$}  {:>12.3e}  {:>12.3e}  {status}", c.name, c.value, c.limit)?;
        }
        Ok(())
    }
}

fn norm(m: &CMatrix) -> f64 {
    trace_form(m, m).max(0.0).sqrt()
}

fn su_member(v: &mut Verification, name: &str, m: &CMatrix) {
    let scale = numkit::frob(m).max(1.0);
    v.push(format!("{name} skew-Hermitian"), numkit::skew_defect(m) / scale, STRUCTURE_TOL);
    v.push(format!("{name} traceless"), numkit::trace(m).norm() / scale, STRUCTURE_TOL);
}

fn group_member(v: &mut Verification, name: &str, m: &CMatrix) {
    v.push(format!("{name} unitary"), numkit::unitarity_defect(m), STRUCTURE_TOL);
    v.push(
        format!("{name} unit determinant"),
        (numkit::det(m) - Complex64::new(1.0, 0.0)).norm(),
        STRUCTURE_TOL,
    );
}

fn verify_algebra(c: &AlgebraCert, v: &mut Verification) {
    let (z, x, y) = (&c.target.0, &c.x.0, &c.y.0);
    for (name, m) in [("target", z), ("x", x), ("y", y)] {
        su_member(v, name, m);
    }
    group_member(v, "conjugator", &c.conjugator.0);
    let residual = numkit::frob(&(numkit::commutator(x, y) - z));
    v.push("commutator residual", residual, c.config.tol.0);
    v.stored("residual", c.residual.0, residual);
    v.stored("target norm", c.norm_target.0, norm(z));
    v.stored("x norm", c.norm_x.0, norm(x));
    v.stored("y norm", c.norm_y.0, norm(y));
}

fn verify_group(c: &GroupCert, v: &mut Verification) {
    let (a, b, p, q) = (&c.a.0, &c.b.0, &c.p.0, &c.q.0);
    for (name, m) in [("target", &c.target.0), ("A", a), ("B", b), ("P", p), ("Q", q)] {
        group_member(v, name, m);
    }
    su_member(v, "x", &c.x.0);
    su_member(v, "y", &c.y.0);
    let pinv = p.adjoint();
    v.push(
        "A = P exp(x) P^-1",
        numkit::frob(&(p * mexp(&c.x.0) * &pinv - a)),
        STRUCTURE_TOL,
    );
    v.push(
        "B = Q exp(y) P^-1",
        numkit::frob(&(q * mexp(&c.y.0) * &pinv - b)),
        STRUCTURE_TOL,
    );
    let comm = a * b * a.adjoint() * b.adjoint();
    let residual = numkit::frob(&(comm - &c.target.0));
    v.push("commutator residual", residual, c.config.tol.0);
    v.stored("residual", c.residual.0, residual);
    let id = numkit::identity(c.n);
    v.stored("distance A", c.distance_a.0, numkit::frob(&(a - &id)));
    v.stored("distance B", c.distance_b.0, numkit::frob(&(b - &id)));
}

fn verify_torus(c: &TorusCert, v: &mut Verification) -> Result<()> {
    let (algebra, reference): (Arc<CompactAlgebra>, Vec<AlgebraElement>) = if c.group == "su" {
        let n = c.rank + 1;
        let algebra = su(n);
        let f = &c.frame.as_ref().expect("shape checked").0;
        group_member_frame(v, f);
        let reference = (0..n - 1)
            .map(|j| {
                let a = f.column(j);
                let b = f.column(j + 1);
                AlgebraElement::from_matrix(&algebra, &((a * a.adjoint() - b * b.adjoint()) * I))
            })
            .collect::<Result<Vec<_>>>()?;
        (algebra, reference)
    } else {
        let t: CartanType = c.group.parse()?;
        let form = compact_form_from_roots(&RootSystemPresentation::classical(t, c.rank)?)?;
        let reference = (0..c.rank).map(|i| AlgebraElement::basis(&form.algebra, i)).collect();
        (form.algebra, reference)
    };
    let dim = algebra.dim();
    if c.basis.iter().any(|b| b.len() != dim) {
        return Err(Error::Malformed(format!("torus coordinates must have length {dim}")));
    }
    let basis: Vec<AlgebraElement> = c
        .basis
        .iter()
        .map(|b| AlgebraElement::new(algebra.clone(), b.iter().map(|d| d.0).collect::<Vec<_>>().into()))
        .collect();
    let reference = orthonormalised(&reference)?;
    let (mut toral, mut orthonormal, mut orthogonal) = (0.0f64, 0.0f64, 0.0f64);
    for (i, s) in basis.iter().enumerate() {
        for (j, t) in basis.iter().enumerate() {
            toral = toral.max(bracket(s, t)?.norm());
            let delta = if i == j { 1.0 } else { 0.0 };
            orthonormal = orthonormal.max((inner(s, t)? - delta).abs());
        }
        for r in &reference {
            orthogonal = orthogonal.max(inner(s, r)?.abs());
        }
    }
    v.push("basis size minus rank", (basis.len() as f64 - algebra.rank() as f64).abs(), 0.0);
    v.push("toral", toral, TORAL_TOL);
    v.push("orthonormal", orthonormal, ORTHONORMAL_TOL);
    v.push("orthogonal to reference", orthogonal, ORTHOGONAL_TOL);
    v.stored("toral", c.toral.0, toral);
    v.stored("orthonormal", c.orthonormal.0, orthonormal);
    v.stored("orthogonal", c.orthogonal.0, orthogonal);
    Ok(())
}

fn group_member_frame(v: &mut Verification, f: &CMatrix) {
    v.push("frame unitary", numkit::unitarity_defect(f), STRUCTURE_TOL);
}

fn orthonormalised(vectors: &[AlgebraElement]) -> Result<Vec<AlgebraElement>> {
    let mut out: Vec<AlgebraElement> = Vec::with_capacity(vectors.len());
    for w in vectors {
        let mut w = w.clone();
        for e in &out {
            w = &w - &(e * inner(e, &w)?);
        }
        let n = w.norm();
        if n > 1e-12 {
            out.push(w * (1.0 / n));
        }
    }
    Ok(out)
}

fn verify_openness(c: &OpennessCert, v: &mut Verification) {
    v.push("failed samples", c.failures.len() as f64, 0.0);
    for r in &c.rows {
        v.push(
            format!("eps {:.1e} samples missing", r.eps.0),
            (c.samples as f64 - r.succeeded as f64).abs(),
            0.0,
        );
        v.push(format!("eps {:.1e} max residual", r.eps.0), r.max_residual.0, c.config.tol.0);
    }
    let rows: Vec<OpennessRow> = c
        .rows
        .iter()
        .map(|r| OpennessRow {
            eps: r.eps.0,
            max_norm: r.max_norm.0,
            max_residual: r.max_residual.0,
            succeeded: r.succeeded,
        })
        .collect();
    let fit = fit_power_law(&rows);
    match (fit, c.exponent, c.prefactor) {
        (Some((beta, pre)), Some(sb), Some(sp)) => {
            v.stored("exponent", sb.0, beta);
            v.stored("prefactor", sp.0, pre);
        }
        (None, None, None) => {}
        _ => v.push("fit present", 1.0, 0.0),
    }
    let constant = rows
        .iter()
        .filter(|r| r.succeeded > 0)
        .map(|r| r.max_norm / r.eps.sqrt())
        .fold(0.0, f64::max);
    v.stored("constant", c.constant.0, constant);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;
    use crate::rootsys::{fourier_orthogonal_torus, frame_torus, orthogonal_torus_for};
    use crate::solver::{decompose_algebra, decompose_group, measure_openness, AlgebraConfig, GroupConfig, Level, OpennessConfig};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn echo(tol: f64) -> ConfigEcho {
        ConfigEcho {
            tol: Dec(tol),
            z_max: None,
            seed: Some(3),
            eps: None,
        }
    }

    fn algebra_cert(seed: u64) -> Certificate {
        let a = su(3);
        let z = AlgebraElement::random(&a, 1e-3, &mut ChaCha8Rng::seed_from_u64(seed));
        let d = decompose_algebra(&a, &z, &AlgebraConfig::default()).unwrap();
        Certificate::from_algebra(&d, echo(1e-9)).unwrap()
    }

    #[test]
    fn decimal_format_round_trips() {
        for x in [0.1, -1e-300, 1.0 / 3.0, 123456.789, 0.0, -0.0, 5e-324] {
            let s = serde_json::to_string(&Dec(x)).unwrap();
            let back: Dec = serde_json::from_str(&s).unwrap();
            assert_eq!(back.0.to_bits(), x.to_bits(), "{s}");
        }
        let from_number: Dec = serde_json::from_str("0.25").unwrap();
        assert_eq!(from_number.0, 0.25);
    }

    #[test]
    fn algebra_certificate_round_trip_and_verify() {
        let cert = algebra_cert(1);
        let text = cert.to_canonical_string();
        let parsed = Certificate::parse(&text).unwrap();
        assert_eq!(parsed.to_canonical_string(), text);
        let v = parsed.verify().unwrap();
        assert!(v.passed(), "{v}");
        assert!(text.contains("\"kind\": \"algebra\""));
        assert!(text.contains("\"schema_version\": \"liecomm-cert/1\""));
    }

    #[test]
    fn perturbed_witness_fails() {
        let mut cert = algebra_cert(2);
        if let Payload::Algebra(c) = &mut cert.payload {
            c.y.0[(0, 1)].re += 1e-3;
        }
        let v = cert.verify().unwrap();
        assert!(!v.passed());
        assert!(v.failures().any(|c| c.name == "commutator residual"));
    }

    #[test]
    fn group_certificate() {
        let a = su(2);
        let z = AlgebraElement::random(&a, 1e-3, &mut ChaCha8Rng::seed_from_u64(4));
        let d = decompose_group(&a, &GroupElement::exp(&z).unwrap(), &GroupConfig::default()).unwrap();
        let cert = Certificate::from_group(&d, echo(1e-8)).unwrap();
        let text = cert.to_canonical_string();
        let parsed = Certificate::parse(&text).unwrap();
        assert_eq!(parsed.to_canonical_string(), text);
        assert!(parsed.verify().unwrap().passed());
        let mut bad = parsed.clone();
        if let Payload::Group(c) = &mut bad.payload {
            c.a.0[(1, 1)].im += 1e-3;
        }
        assert!(!bad.verify().unwrap().passed());
    }

    #[test]
    fn torus_certificates() {
        let a = su(4);
        let frame = UnitaryFrame::random(4, &mut ChaCha8Rng::seed_from_u64(5));
        let t = fourier_orthogonal_torus(&a, &frame).unwrap();
        let r = frame_torus(&a, &frame).unwrap();
        let cert = Certificate::from_su_torus(&t, &r, &frame).unwrap();
        let parsed = Certificate::parse(&cert.to_canonical_string()).unwrap();
        assert!(parsed.verify().unwrap().passed());

        let form = compact_form_from_roots(&RootSystemPresentation::classical(CartanType::C, 3).unwrap()).unwrap();
        let t = orthogonal_torus_for(&form).unwrap();
        let cert = Certificate::from_root_torus(CartanType::C, &t, &form.torus).unwrap();
        let parsed = Certificate::parse(&cert.to_canonical_string()).unwrap();
        let v = parsed.verify().unwrap();
        assert!(v.passed(), "{v}");
    }

    #[test]
    fn openness_certificate() {
        let a = su(2);
        let cfg = OpennessConfig::new(Level::Algebra, vec![1e-2, 1e-4], 3, 1);
        let r = measure_openness(&a, &cfg).unwrap();
        let cert = Certificate::from_openness(&r, 2, 1e-9);
        let text = cert.to_canonical_string();
        assert_eq!(Certificate::parse(&text).unwrap().to_canonical_string(), text);
        assert!(cert.verify().unwrap().passed());
    }

    #[test]
    fn malformed_inputs() {
        let text = algebra_cert(6).to_canonical_string();
        assert_eq!(Certificate::parse(&text[..text.len() / 2]).unwrap_err().name(), "Malformed");
        let wrong = text.replace("liecomm-cert/1", "liecomm-cert/9");
        assert_eq!(Certificate::parse(&wrong).unwrap_err().name(), "Malformed");
        let shape = text.replacen("\"n\": 3", "\"n\": 4", 1);
        assert_eq!(Certificate::parse(&shape).unwrap_err().name(), "Malformed");
    }
}
