use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::presentation::RootSystemPresentation;
use super::torus::TorusBasis;
use crate::algebra::{AlgebraElement, CompactAlgebra};
use crate::error::{Error, Result};
use crate::numkit::RMatrix;

/// Jacobi residual above which a presentation is rejected.
pub const JACOBI_TOL: f64 = 1e-10;

/// Name of a basis vector of the compact form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    /// `k_α = i·h_α` for the simple root with this index.
    K(usize),
    /// `u_α = x_α − x_{−α}` for the positive root with this index.
    U(usize),
    /// `v_α = i(x_α + x_{−α})`.
    V(usize),
}

/// The compact real form spanned by `{k_α : α ∈ Δ} ∪ {u_α, v_α : α ∈ Φ⁺}`.
#[derive(Debug, Clone)]
pub struct CompactForm {
    pub presentation: RootSystemPresentation,
    pub algebra: Arc<CompactAlgebra>,
    /// Orthonormalised span of the `k_α`.
    pub torus: TorusBasis,
    pub labels: Vec<BasisLabel>,
}

impl CompactForm {
    pub fn k_index(&self, simple: usize) -> usize {
        simple
    }

    pub fn u_index(&self, positive: usize) -> usize {
        self.presentation.rank + 2 * positive
    }

    pub fn v_index(&self, positive: usize) -> usize {
        self.presentation.rank + 2 * positive + 1
    }

    pub fn element(&self, label: BasisLabel) -> AlgebraElement {
        let idx = match label {
            BasisLabel::K(i) => self.k_index(i),
            BasisLabel::U(k) => self.u_index(k),
            BasisLabel::V(k) => self.v_index(k),
        };
        AlgebraElement::basis(&self.algebra, idx)
    }
}

/// Complex Chevalley basis: `h_i` at index `i`, then `x_a` at `rank + a`.
struct Chevalley<'a> {
    p: &'a RootSystemPresentation,
    n: HashMap<(usize, usize), i64>,
    index: HashMap<Vec<i64>, usize>,
}

impl Chevalley<'_> {
    fn len(&self) -> usize {
        self.p.rank + self.p.num_roots()
    }

    /// Accumulate `coef · [b_s, b_t]` into `out`.
    fn bracket_into(&self, s: usize, t: usize, coef: Complex64, out: &mut [Complex64]) {
        let r = self.p.rank;
        match (s < r, t < r) {
            (true, true) => {}
            (true, false) => {
                let a = t - r;
                out[t] += coef * self.p.pairing(&self.p.root(a), s) as f64;
            }
            (false, true) => {
                let a = s - r;
                out[s] -= coef * self.p.pairing(&self.p.root(a), t) as f64;
            }
            (false, false) => {
                let (a, b) = (s - r, t - r);
                if b == self.p.negate(a) {
                    // [x_γ, x_{−γ}] = h_γ
                    for (i, c) in self.p.coroot_coeffs(&self.p.root(a)).into_iter().enumerate() {
                        out[i] += coef * c as f64;
                    }
                } else if let Some(&value) = self.n.get(&(a, b)) {
                    let sum: Vec<i64> = self.p.root(a).iter().zip(self.p.root(b)).map(|(x, y)| x + y).collect();
                    out[r + self.index[&sum]] += coef * value as f64;
                }
            }
        }
    }
}

fn compact_vector(p: &RootSystemPresentation, label: BasisLabel) -> Vec<(usize, Complex64)> {
    let r = p.rank;
    let np = p.num_positive();
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    match label {
        BasisLabel::K(a) => vec![(a, i)],
        BasisLabel::U(k) => vec![(r + k, one), (r + k + np, -one)],
        BasisLabel::V(k) => vec![(r + k, i), (r + k + np, i)],
    }
}

/// Structure constants of the compact form over `{k_α} ∪ {u_α, v_α}`,
/// computed from the Chevalley relations stored in the presentation, with the
/// negative Killing form as invariant inner product.
pub fn compact_form_from_roots(p: &RootSystemPresentation) -> Result<CompactForm> {
    let r = p.rank;
    let np = p.num_positive();
    let mut labels: Vec<BasisLabel> = (0..r).map(BasisLabel::K).collect();
    for k in 0..np {
        labels.push(BasisLabel::U(k));
        labels.push(BasisLabel::V(k));
    }
    let dim = labels.len();
    let chev = Chevalley {
        p,
        n: p.structure_map(),
        index: p.root_index(),
    };
    let vectors: Vec<Vec<(usize, Complex64)>> = labels.iter().map(|&l| compact_vector(p, l)).collect();

    let mut constants = vec![0.0; dim * dim * dim];
    let mut worst_imag = 0.0f64;
    for s in 0..dim {
        for t in (s + 1)..dim {
            let mut w = vec![Complex64::new(0.0, 0.0); chev.len()];
            for &(a, ca) in &vectors[s] {
                for &(b, cb) in &vectors[t] {
                    chev.bracket_into(a, b, ca * cb, &mut w);
                }
            }
            // back to compact coordinates
            let mut coords = vec![0.0; dim];
            for i in 0..r {
                worst_imag = worst_imag.max(w[i].re.abs());
                coords[i] = w[i].im;
            }
            for k in 0..np {
                let bp = w[r + k];
                let bm = w[r + k + np];
                let su = (bp - bm) / 2.0;
                let sv = (bp + bm) / Complex64::new(0.0, 2.0);
                worst_imag = worst_imag.max(su.im.abs()).max(sv.im.abs());
                coords[r + 2 * k] = su.re;
                coords[r + 2 * k + 1] = sv.re;
            }
            for (k, c) in coords.into_iter().enumerate() {
                constants[(s * dim + t) * dim + k] = c;
                constants[(t * dim + s) * dim + k] = -c;
            }
        }
    }
    if worst_imag > 1e-9 {
        return Err(Error::InvalidPresentation(format!(
            "brackets leave the compact form (defect {worst_imag:.3e}); structure signs are inconsistent"
        )));
    }
    let label = format!("compact {}{}", p.cartan_type, p.rank);
    let provisional = CompactAlgebra::from_structure_constants(
        label.clone(),
        r,
        constants.clone(),
        RMatrix::identity(dim, dim),
        None,
    )?;
    let jacobi = provisional.identity_residuals().jacobi;
    if jacobi > JACOBI_TOL {
        return Err(Error::InvalidPresentation(format!("Jacobi identity fails (residual {jacobi:.3e})")));
    }
    let gram = -provisional.killing_gram();
    let algebra = CompactAlgebra::from_structure_constants(label, r, constants, gram, None)?;
    let torus = TorusBasis::orthonormalize((0..r).map(|i| AlgebraElement::basis(&algebra, i)).collect())?;
    Ok(CompactForm {
        presentation: p.clone(),
        algebra,
        torus,
        labels,
    })
}
