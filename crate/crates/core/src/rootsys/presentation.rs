use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::RMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E" => Ok(CartanType::E),
            "F" => Ok(CartanType::F),
            "G" => Ok(CartanType::G),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// `N_{αβ}` in `[x_α, x_β] = N_{αβ} x_{α+β}`, roots given by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstant {
    pub alpha: usize,
    pub beta: usize,
    pub value: i64,
}

/// Root datum of a classical simple Lie algebra with a Chevalley basis.
///
/// Roots are written in the simple-root basis. Positive roots are sorted by
/// height, ties broken by reverse lexicographic order of the coordinates, so
/// the first `rank` entries are `α_1, …, α_rank` in Bourbaki numbering. Root
/// index `k < P` is `positive_roots[k]`; index `P + k` is its negative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSystemPresentation {
    pub cartan_type: CartanType,
    pub rank: usize,
    /// `cartan[i][j] = ⟨α_j, α_i^∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// `(α_i, α_i)`, long roots of types A, B, D have squared length 2.
    pub root_lengths: Vec<i64>,
    pub positive_roots: Vec<Vec<i64>>,
    /// `ω_i` in the simple-root basis.
    pub fundamental_weights: Vec<Vec<Rational64>>,
    pub highest_root: Vec<i64>,
    /// Nonzero `N_{αβ}` over all ordered pairs of roots whose sum is a root.
    pub structure_constants: Vec<StructureConstant>,
}

/// Chevalley generators realized as real matrices in the defining
/// representation, `x_{−γ} = x_γᵀ`.
#[derive(Debug, Clone)]
pub struct DefiningRep {
    /// Indexed like the roots of the presentation.
    pub root_vectors: Vec<RMatrix>,
    /// `h_i = [x_{α_i}, x_{−α_i}]`.
    pub simple_coroots: Vec<RMatrix>,
}

impl RootSystemPresentation {
    /// Presentation of `A_n (n ≥ 1)`, `B_n (n ≥ 2)`, `C_n (n ≥ 2)` or `D_n (n ≥ 4)`.
    ///
    /// Structure constants are fixed by declaring every extraspecial pair
    /// positive: for a non-simple positive root `ξ` the pair is
    /// `(α_i, ξ − α_i)` with the smallest admissible `i`, and
    /// `x_ξ = [x_{α_i}, x_{ξ−α_i}]/(p+1)`.
    pub fn classical(cartan_type: CartanType, rank: usize) -> Result<Self> {
        let min_rank = match cartan_type {
            CartanType::A => 1,
            CartanType::B | CartanType::C => 2,
            CartanType::D => 4,
            other => return Err(Error::UnsupportedType(format!("{other}{rank}"))),
        };
        if rank < min_rank {
            return Err(Error::InvalidPresentation(format!(
                "{cartan_type}{rank}: rank must be at least {min_rank}"
            )));
        }
        let eps = simple_roots_in_epsilon(cartan_type, rank);
        let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
        let root_lengths: Vec<i64> = eps.iter().map(|a| dot(a, a)).collect();
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * dot(&eps[i], &eps[j]) / root_lengths[i]).collect())
            .collect();
        let positive_roots = positive_roots_from_cartan(&cartan);
        let highest_root = positive_roots.last().cloned().expect("root system is nonempty");
        let fundamental_weights = fundamental_weights(&cartan)?;
        let mut p = RootSystemPresentation {
            cartan_type,
            rank,
            cartan,
            root_lengths,
            positive_roots,
            fundamental_weights,
            highest_root,
            structure_constants: Vec::new(),
        };
        let rep = p.build_defining_rep()?;
        p.structure_constants = p.structure_constants_from(&rep)?;
        Ok(p)
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive_roots.len()
    }

    /// Root `k` in the simple-root basis.
    pub fn root(&self, k: usize) -> Vec<i64> {
        let p = self.num_positive();
        if k < p {
            self.positive_roots[k].clone()
        } else {
            self.positive_roots[k - p].iter().map(|c| -c).collect()
        }
    }

    pub fn negate(&self, k: usize) -> usize {
        let p = self.num_positive();
        if k < p {
            k + p
        } else {
            k - p
        }
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    pub fn root_index(&self) -> HashMap<Vec<i64>, usize> {
        (0..self.num_roots()).map(|k| (self.root(k), k)).collect()
    }

    /// `⟨λ, α_i^∨⟩` for `λ` in the simple-root basis.
    pub fn pairing(&self, lambda: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| self.cartan[i][j] * lambda[j]).sum()
    }

    /// Coordinates of `λ` in the fundamental-weight basis.
    pub fn weight_coords(&self, lambda: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| self.pairing(lambda, i)).collect()
    }

    /// `(λ, μ)` for the normalisation fixed by `root_lengths`.
    pub fn inner(&self, lambda: &[i64], mu: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += lambda[i] * mu[j] * self.cartan[i][j] * self.root_lengths[i];
            }
        }
        s / 2
    }

    /// Coordinates of `γ^∨` in the basis of simple coroots.
    pub fn coroot_coeffs(&self, root: &[i64]) -> Vec<i64> {
        let len = self.inner(root, root);
        (0..self.rank).map(|i| root[i] * self.root_lengths[i] / len).collect()
    }

    /// Length of the `α`-string running down from `β`: the largest `p` with `β − pα` a root.
    pub fn string_down(&self, index: &HashMap<Vec<i64>, usize>, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut p = 0;
        let mut cur: Vec<i64> = beta.to_vec();
        loop {
            for (c, a) in cur.iter_mut().zip(alpha) {
                *c -= a;
            }
            if index.contains_key(&cur) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// Lookup `(α, β) ↦ N_{αβ}` of the stored constants.
    pub fn structure_map(&self) -> HashMap<(usize, usize), i64> {
        self.structure_constants.iter().map(|s| ((s.alpha, s.beta), s.value)).collect()
    }

    /// Connected components of the Dynkin subdiagram on `nodes`.
    pub fn components(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.rank];
        let mut out = Vec::new();
        for &start in nodes {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for &j in nodes {
                    if !seen[j] && self.cartan[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Positive root indices supported on `nodes`, in presentation order.
    pub fn positive_roots_on(&self, nodes: &[usize]) -> Vec<usize> {
        (0..self.num_positive())
            .filter(|&k| {
                self.positive_roots[k]
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || nodes.contains(&i))
            })
            .collect()
    }

    /// Whether the connected subdiagram on `nodes` is of type A (simply laced path).
    pub fn is_type_a(&self, nodes: &[usize]) -> bool {
        nodes.iter().all(|&i| {
            let mut degree = 0;
            for &j in nodes {
                if i != j && self.cartan[i][j] != 0 {
                    if self.cartan[i][j] != -1 || self.cartan[j][i] != -1 {
                        return false;
                    }
                    degree += 1;
                }
            }
            degree <= 2
        })
    }

    /// For the irreducible subsystem on `nodes`: its highest root `θ` (by index)
    /// and the node `α` with `θ = m·ω_α` restricted to the subsystem.
    pub fn highest_root_on(&self, nodes: &[usize]) -> Result<(usize, usize, i64)> {
        let roots = self.positive_roots_on(nodes);
        let theta = *roots.last().ok_or_else(|| Error::InvalidPresentation("empty subsystem".into()))?;
        let top = Self::height(&self.positive_roots[theta]);
        if roots
            .iter()
            .filter(|&&k| Self::height(&self.positive_roots[k]) == top)
            .count()
            != 1
        {
            return Err(Error::InvalidPresentation(
                "highest root is not unique; subsystem is reducible".into(),
            ));
        }
        let root = &self.positive_roots[theta];
        let nonzero: Vec<(usize, i64)> = nodes
            .iter()
            .map(|&i| (i, self.pairing(root, i)))
            .filter(|&(_, w)| w != 0)
            .collect();
        match nonzero.as_slice() {
            [(alpha, m)] if *m == 1 || *m == 2 => Ok((theta, *alpha, *m)),
            _ => Err(Error::NotApplicable(format!(
                "highest root has weight coordinates {nonzero:?}, not a multiple of one fundamental weight"
            ))),
        }
    }

    /// Chevalley generators in the defining representation, normalised so
    /// that `[h_i, x_{α_i}] = 2 x_{α_i}` and extraspecial pairs are positive.
    pub fn defining_rep(&self) -> Result<DefiningRep> {
        self.build_defining_rep()
    }

    fn build_defining_rep(&self) -> Result<DefiningRep> {
        let simple = simple_root_matrices(self.cartan_type, self.rank);
        let simple: Vec<RMatrix> = simple
            .into_iter()
            .map(|e| {
                let h = &e * e.transpose() - e.transpose() * &e;
                let he = &h * &e - &e * &h;
                let lambda = he.dot(&e) / e.dot(&e);
                e * (2.0 / lambda).sqrt()
            })
            .collect();
        let simple_coroots: Vec<RMatrix> = simple
            .iter()
            .map(|e| e * e.transpose() - e.transpose() * e)
            .collect();
        for i in 0..self.rank {
            for j in 0..self.rank {
                let lhs = &simple_coroots[i] * &simple[j] - &simple[j] * &simple_coroots[i];
                if (lhs - &simple[j] * self.cartan[i][j] as f64).amax() > 1e-12 {
                    return Err(Error::InvalidPresentation(format!(
                        "defining representation disagrees with the Cartan matrix at ({i},{j})"
                    )));
                }
            }
        }
        let index = self.root_index();
        let p = self.num_positive();
        let mut root_vectors: Vec<Option<RMatrix>> = vec![None; 2 * p];
        for k in 0..p {
            let xi = &self.positive_roots[k];
            if Self::height(xi) == 1 {
                let i = xi.iter().position(|&c| c == 1).expect("simple root");
                root_vectors[k] = Some(simple[i].clone());
                continue;
            }
            let (i, beta) = (0..self.rank)
                .find_map(|i| {
                    let mut b = xi.clone();
                    b[i] -= 1;
                    index.get(&b).filter(|&&bk| bk < p).map(|&bk| (i, bk))
                })
                .ok_or_else(|| Error::InvalidPresentation(format!("no extraspecial pair for {xi:?}")))?;
            let mut alpha = vec![0; self.rank];
            alpha[i] = 1;
            let pp = self.string_down(&index, &alpha, &self.positive_roots[beta]);
            let xa = root_vectors[i].as_ref().expect("simple roots come first");
            let xb = root_vectors[beta].as_ref().expect("lower height already built");
            let br = xa * xb - xb * xa;
            root_vectors[k] = Some(br / (pp + 1) as f64);
        }
        for k in 0..p {
            root_vectors[k + p] = Some(root_vectors[k].as_ref().unwrap().transpose());
        }
        Ok(DefiningRep {
            root_vectors: root_vectors.into_iter().map(Option::unwrap).collect(),
            simple_coroots,
        })
    }

    fn structure_constants_from(&self, rep: &DefiningRep) -> Result<Vec<StructureConstant>> {
        let index = self.root_index();
        let mut out = Vec::new();
        for a in 0..self.num_roots() {
            for b in 0..self.num_roots() {
                let ra = self.root(a);
                let rb = self.root(b);
                let sum: Vec<i64> = ra.iter().zip(&rb).map(|(x, y)| x + y).collect();
                let Some(&c) = index.get(&sum) else { continue };
                let xa = &rep.root_vectors[a];
                let xb = &rep.root_vectors[b];
                let br = xa * xb - xb * xa;
                let target = &rep.root_vectors[c];
                let ratio = br.dot(target) / target.dot(target);
                let value = ratio.round();
                if (ratio - value).abs() > 1e-9 || (br - target * value).amax() > 1e-9 || value == 0.0 {
                    return Err(Error::InvalidPresentation(format!(
                        "bracket of roots {a} and {b} is not an integer multiple of root {c} (ratio {ratio})"
                    )));
                }
                out.push(StructureConstant {
                    alpha: a,
                    beta: b,
                    value: value as i64,
                });
            }
        }
        Ok(out)
    }
}

/// Simple roots in the orthonormal `ε` basis (Bourbaki).
fn simple_roots_in_epsilon(t: CartanType, n: usize) -> Vec<Vec<i64>> {
    let width = if t == CartanType::A { n + 1 } else { n };
    let unit = |i: usize| {
        let mut v = vec![0; width];
        v[i] = 1;
        v
    };
    let diff = |i: usize, j: usize| -> Vec<i64> { unit(i).iter().zip(unit(j)).map(|(a, b)| a - b).collect() };
    let mut out: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(i, i + 1)).collect();
    out.push(match t {
        CartanType::A => diff(n - 1, n),
        CartanType::B => unit(n - 1),
        CartanType::C => unit(n - 1).iter().map(|c| 2 * c).collect(),
        CartanType::D => unit(n - 2).iter().zip(unit(n - 1)).map(|(a, b)| a + b).collect(),
        _ => unreachable!("exceptional types are rejected earlier"),
    });
    out
}

/// Positive roots by the root-string algorithm, sorted by height and then
/// reverse lexicographically.
fn positive_roots_from_cartan(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut level: Vec<Vec<i64>> = roots.clone();
    while !level.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &level {
            for i in 0..r {
                let mut p = 0;
                let mut cur = beta.clone();
                loop {
                    cur[i] -= 1;
                    if roots.contains(&cur) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..r).map(|j| cartan[i][j] * beta[j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        level = next;
    }
    roots.sort_by(|a, b| {
        let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

/// Columns of the inverse Cartan matrix: `ω_i = Σ_j (A⁻¹)_{ji} α_j`.
fn fundamental_weights(cartan: &[Vec<i64>]) -> Result<Vec<Vec<Rational64>>> {
    let r = cartan.len();
    let mut m: Vec<Vec<Rational64>> = (0..r)
        .map(|i| {
            let mut row: Vec<Rational64> = cartan[i].iter().map(|&x| Rational64::from_integer(x)).collect();
            row.extend((0..r).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            row
        })
        .collect();
    for col in 0..r {
        let pivot = (col..r)
            .find(|&i| !m[i][col].is_zero())
            .ok_or_else(|| Error::InvalidPresentation("singular Cartan matrix".into()))?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= inv;
        }
        for i in 0..r {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    // weight i is column i of the inverse
    Ok((0..r).map(|i| (0..r).map(|j| m[j][r + i]).collect()).collect())
}

/// Raising operators for the simple roots in the defining representation,
/// before normalisation. Their transposes are the lowering operators.
fn simple_root_matrices(t: CartanType, n: usize) -> Vec<RMatrix> {
    let unit = |size: usize, a: usize, b: usize| {
        let mut m = RMatrix::zeros(size, size);
        m[(a, b)] = 1.0;
        m
    };
    match t {
        CartanType::A => (0..n).map(|i| unit(n + 1, i, i + 1)).collect(),
        CartanType::B => {
            let size = 2 * n + 1;
            let bar = |a: usize| 2 * n - a;
            (0..n)
                .map(|i| unit(size, i, i + 1) - unit(size, bar(i + 1), bar(i)))
                .collect()
        }
        CartanType::C => {
            let size = 2 * n;
            let mut v: Vec<RMatrix> = (0..n - 1)
                .map(|i| unit(size, i, i + 1) - unit(size, n + i + 1, n + i))
                .collect();
            v.push(unit(size, n - 1, 2 * n - 1));
            v
        }
        CartanType::D => {
            let size = 2 * n;
            let bar = |a: usize| 2 * n - 1 - a;
            let mut v: Vec<RMatrix> = (0..n - 1)
                .map(|i| unit(size, i, i + 1) - unit(size, bar(i + 1), bar(i)))
                .collect();
            v.push(unit(size, n - 2, bar(n - 1)) - unit(size, n - 1, bar(n - 2)));
            v
        }
        _ => unreachable!("exceptional types are rejected earlier"),
    }
}

/// `(α, m)` with `θ = m·ω_α`; only meaningful outside type A.
pub fn highest_root_is_fund_weight(p: &RootSystemPresentation) -> Result<(usize, i64)> {
    if p.cartan_type == CartanType::A {
        return Err(Error::NotApplicable(
            "type A: the highest root is ω_1 + ω_n".into(),
        ));
    }
    let nodes: Vec<usize> = (0..p.rank).collect();
    let (_, alpha, m) = p.highest_root_on(&nodes)?;
    Ok((alpha, m))
}
