use std::sync::Arc;

use num_complex::Complex64;

use super::compact::{compact_form_from_roots, BasisLabel, CompactForm};
use super::frames::{fourier_frame, UnitaryFrame};
use super::presentation::{CartanType, RootSystemPresentation};
use crate::algebra::{bracket, inner, trace_form, AlgebraElement, CompactAlgebra};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::numkit::{self, herm_eig, CMatrix, RMatrix, RVector, DEFAULT_HERMITIAN_TOL, I};

/// An orthonormal basis of a toral subalgebra.
#[derive(Debug, Clone)]
pub struct TorusBasis {
    vectors: Vec<AlgebraElement>,
}

/// Residuals of the torus invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusChecks {
    /// `max ‖[t_i, t_j]‖`.
    pub toral: f64,
    /// `max |⟨t_i, t_j⟩ − δ_ij|`.
    pub orthonormal: f64,
    /// `max |⟨t_i, s_j⟩|` against a reference torus, when one is given.
    pub orthogonal: Option<f64>,
    pub count: usize,
    pub rank: usize,
}

impl TorusBasis {
    /// Gram–Schmidt (two passes) in the algebra's inner product, in the given order.
    pub fn orthonormalize(spanning: Vec<AlgebraElement>) -> Result<Self> {
        let first = spanning
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty torus".into()))?;
        let algebra = first.algebra().clone();
        let mut out: Vec<AlgebraElement> = Vec::with_capacity(spanning.len());
        for v in spanning {
            let mut w = v;
            for _ in 0..2 {
                for b in &out {
                    let c = inner(b, &w)?;
                    w = &w - &(b * c);
                }
            }
            let norm = w.norm();
            if norm < 1e-10 {
                return Err(Error::DimensionMismatch("torus generators are linearly dependent".into()));
            }
            out.push(w * (1.0 / norm));
        }
        debug_assert!(out.iter().all(|v| Arc::ptr_eq(v.algebra(), &algebra) || v.algebra().label() == algebra.label()));
        Ok(TorusBasis { vectors: out })
    }

    pub fn algebra(&self) -> &Arc<CompactAlgebra> {
        self.vectors[0].algebra()
    }

    pub fn vectors(&self) -> &[AlgebraElement] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn toral_residual(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for (i, a) in self.vectors.iter().enumerate() {
            for b in &self.vectors[i + 1..] {
                worst = worst.max(bracket(a, b)?.norm());
            }
        }
        Ok(worst)
    }

    pub fn orthonormal_residual(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((inner(a, b)? - target).abs());
            }
        }
        Ok(worst)
    }

    pub fn orthogonality_to(&self, other: &TorusBasis) -> Result<f64> {
        let mut worst = 0.0f64;
        for a in &self.vectors {
            for b in &other.vectors {
                worst = worst.max(inner(a, b)?.abs());
            }
        }
        Ok(worst)
    }

    pub fn checks(&self, reference: Option<&TorusBasis>) -> Result<TorusChecks> {
        Ok(TorusChecks {
            toral: self.toral_residual()?,
            orthonormal: self.orthonormal_residual()?,
            orthogonal: reference.map(|r| self.orthogonality_to(r)).transpose()?,
            count: self.len(),
            rank: self.algebra().rank(),
        })
    }
}

pub(crate) fn require_su(algebra: &Arc<CompactAlgebra>, n: usize) -> Result<()> {
    match algebra.matrix_size() {
        Some(m) if m == n && algebra.dim() == n * n - 1 => Ok(()),
        _ => Err(Error::DimensionMismatch(format!(
            "expected su({n}) with its defining realization, got {}",
            algebra.label()
        ))),
    }
}

/// `𝔱_v`: the traceless skew-Hermitian matrices diagonal in the frame `v`,
/// spanned by `i(v_j v_j† − v_{j+1} v_{j+1}†)`.
pub fn frame_torus(algebra: &Arc<CompactAlgebra>, frame: &UnitaryFrame) -> Result<TorusBasis> {
    let n = frame.n();
    require_su(algebra, n)?;
    let gens = (0..n - 1)
        .map(|j| {
            let a = frame.column(j);
            let b = frame.column(j + 1);
            let m = (a * a.adjoint() - b * b.adjoint()) * I;
            AlgebraElement::from_matrix(algebra, &m)
        })
        .collect::<Result<Vec<_>>>()?;
    TorusBasis::orthonormalize(gens)
}

/// The torus of the Fourier frame of `u`, orthogonal to `𝔱_u`.
pub fn fourier_orthogonal_torus(algebra: &Arc<CompactAlgebra>, u: &UnitaryFrame) -> Result<TorusBasis> {
    frame_torus(algebra, &fourier_frame(u))
}

/// A maximal torus orthogonal to the torus spanned by the `k_α`.
pub fn orthogonal_torus_inductive(p: &RootSystemPresentation) -> Result<TorusBasis> {
    let form = compact_form_from_roots(p)?;
    orthogonal_torus_for(&form)
}

/// As [`orthogonal_torus_inductive`], on an already built compact form.
///
/// Each simple factor is handled separately. Type A factors get the Fourier
/// torus transported through their defining representation. Otherwise the
/// highest root satisfies `θ = m·ω_α`; the recursion runs on the subsystem
/// obtained by deleting `α`, and `u_θ`, which commutes with that Levi factor,
/// completes the torus.
pub fn orthogonal_torus_for(form: &CompactForm) -> Result<TorusBasis> {
    let p = &form.presentation;
    if matches!(p.cartan_type, CartanType::E | CartanType::F | CartanType::G) {
        return Err(Error::UnsupportedType(format!("{}{}", p.cartan_type, p.rank)));
    }
    let nodes: Vec<usize> = (0..p.rank).collect();
    let mut out = Vec::with_capacity(p.rank);
    for comp in p.components(&nodes) {
        induct(form, &comp, &mut out)?;
    }
    TorusBasis::orthonormalize(out)
}

fn induct(form: &CompactForm, nodes: &[usize], out: &mut Vec<AlgebraElement>) -> Result<()> {
    let p = &form.presentation;
    if p.is_type_a(nodes) {
        out.extend(type_a_fourier(form, nodes)?);
        return Ok(());
    }
    let (theta, alpha, _) = p.highest_root_on(nodes)?;
    let rest: Vec<usize> = nodes.iter().copied().filter(|&i| i != alpha).collect();
    for comp in p.components(&rest) {
        induct(form, &comp, out)?;
    }
    out.push(form.element(BasisLabel::U(theta)));
    Ok(())
}

/// Pull the Fourier torus of `su(m+1)` back to the type `A_m` factor on `nodes`.
fn type_a_fourier(form: &CompactForm, nodes: &[usize]) -> Result<Vec<AlgebraElement>> {
    let p = &form.presentation;
    let m = nodes.len();
    let size = m + 1;
    let path = path_order(p, nodes);
    let pos = |i: usize| path.iter().position(|&x| x == i).expect("node on path");

    let n_map = p.structure_map();
    let index = p.root_index();
    let roots = p.positive_roots_on(nodes);
    let mut rho: std::collections::HashMap<usize, RMatrix> = std::collections::HashMap::new();
    for &k in &roots {
        let gamma = &p.positive_roots[k];
        if RootSystemPresentation::height(gamma) == 1 {
            let i = gamma.iter().position(|&c| c == 1).expect("simple root");
            let mut e = RMatrix::zeros(size, size);
            e[(pos(i), pos(i) + 1)] = 1.0;
            rho.insert(k, e);
            continue;
        }
        let (i, rest) = nodes
            .iter()
            .find_map(|&i| {
                let mut b = gamma.clone();
                b[i] -= 1;
                index.get(&b).filter(|&&bk| bk < p.num_positive()).map(|&bk| (i, bk))
            })
            .ok_or_else(|| Error::InvalidPresentation(format!("root {gamma:?} is not reachable from simple roots")))?;
        let n = *n_map
            .get(&(i, rest))
            .ok_or_else(|| Error::InvalidPresentation(format!("missing N for roots {i}, {rest}")))?;
        let (a, b) = (&rho[&i], &rho[&rest]);
        rho.insert(k, (a * b - b * a) / n as f64);
    }

    let to_c = numkit::to_complex;
    let mut images: Vec<(usize, CMatrix)> = Vec::new();
    for &i in nodes {
        let e = &rho[&i];
        let h = e * e.transpose() - e.transpose() * e;
        images.push((form.k_index(i), to_c(&h) * I));
    }
    for &k in &roots {
        let x = &rho[&k];
        images.push((form.u_index(k), to_c(&(x - x.transpose()))));
        images.push((form.v_index(k), to_c(&(x + x.transpose())) * I));
    }
    let dim = images.len();
    let gram = RMatrix::from_fn(dim, dim, |a, b| trace_form(&images[a].1, &images[b].1));
    let chol = gram
        .cholesky()
        .ok_or_else(|| Error::InvalidPresentation("type A images are linearly dependent".into()))?;

    let frame = fourier_frame(&UnitaryFrame::standard(size));
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let a = frame.column(j);
        let b = frame.column(j + 1);
        let target: CMatrix = (a * a.adjoint() - b * b.adjoint()) * I;
        let rhs = RVector::from_iterator(dim, images.iter().map(|(_, im)| trace_form(im, &target)));
        let c = chol.solve(&rhs);
        let mut back = CMatrix::zeros(size, size);
        for (cj, (_, im)) in c.iter().zip(&images) {
            back += im.scale(*cj);
        }
        let miss = numkit::frob(&(back - &target));
        if miss > 1e-10 {
            return Err(Error::InvalidPresentation(format!(
                "Fourier torus is not in the image of the type A factor (miss {miss:.3e})"
            )));
        }
        let mut coords = RVector::zeros(form.algebra.dim());
        for (cj, (idx, _)) in c.iter().zip(&images) {
            coords[*idx] = *cj;
        }
        out.push(AlgebraElement::new(form.algebra.clone(), coords));
    }
    Ok(out)
}

/// Nodes of a path-shaped Dynkin diagram in order, starting from the end
/// with the smaller index.
fn path_order(p: &RootSystemPresentation, nodes: &[usize]) -> Vec<usize> {
    let neighbours = |i: usize| -> Vec<usize> {
        nodes.iter().copied().filter(|&j| j != i && p.cartan[i][j] != 0).collect()
    };
    let start = nodes
        .iter()
        .copied()
        .filter(|&i| neighbours(i).len() <= 1)
        .min()
        .unwrap_or(nodes[0]);
    let mut path = vec![start];
    while path.len() < nodes.len() {
        let last = *path.last().unwrap();
        let next = neighbours(last).into_iter().find(|j| !path.contains(j)).expect("connected path");
        path.push(next);
    }
    path
}

/// Conjugate `z ∈ su(n)` into the torus of `frame`.
///
/// With `i·z = W D W†` (eigenvalues descending) and `F` the frame matrix,
/// `g = W F† δ` where `δ` normalises the determinant, so that
/// `Ad_{g⁻¹} z = F diag(−i D) F†`.
pub fn conjugate_into_torus(
    algebra: &Arc<CompactAlgebra>,
    z: &AlgebraElement,
    frame: &UnitaryFrame,
) -> Result<(GroupElement, AlgebraElement)> {
    let n = frame.n();
    require_su(algebra, n)?;
    let zm = z.to_matrix()?;
    let eig = herm_eig(&(zm * I), DEFAULT_HERMITIAN_TOL)?;
    let f = frame.matrix();
    let g = GroupElement::from_unitary(&eig.vectors * f.adjoint())?;
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        eig.values.iter().map(|&l| Complex64::new(0.0, -l)),
    ));
    let zp = AlgebraElement::from_matrix(algebra, &(f * d * f.adjoint()))?;
    Ok((g, zp))
}
