//! Splits the register into subspaces invariant under the dynamical Lie algebra
//! and classifies the algebra restricted to each one.
//!
//! The model commutes with permutations of C and of P separately, so images of
//! product symmetrizers `Π_C ⊗ Π_P` are invariant. On a subspace with
//! orthonormal basis `B` the restriction of `A` is `B† A B`. A block is
//! `su(m)` when the traceless parts of the restricted elements span all `m² - 1`
//! directions and only scalars commute with them; `u(m)` if in addition the
//! identity direction is present.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie::{closure, default_max_dim, LieBasis};
use crate::model::{model_generators, ModelParams};
use crate::pauli::RegisterSpec;
use crate::symgroup::{gys_projectors, Partition};

/// Leakage tolerated before a restriction is flagged in the report.
pub const LEAKAGE_TOL: f64 = 1e-8;

/// Leakage above this means the operator is not symmetric; restriction fails.
pub const LEAKAGE_FATAL: f64 = 1e-6;

/// Relative singular-value cutoff used for ranks and null spaces.
pub const RANK_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct InvariantSubspace {
    pub shape_c: Partition,
    pub idx_c: usize,
    pub shape_p: Partition,
    pub idx_p: usize,
    /// Orthonormal columns, `2^n × m`.
    pub basis: DMatrix<Complex64>,
}

impl InvariantSubspace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

/// All images of `Π_C ⊗ Π_P`, C shapes outermost, in the order of
/// [`gys_projectors`]. Dimensions add up to `2^n`.
pub fn invariant_subspaces(reg: RegisterSpec, seed: u64) -> Result<Vec<InvariantSubspace>> {
    if reg.is_uniform() {
        return Err(Error::InvalidRegister("invariant subspaces need a C/P split".into()));
    }
    let pc = gys_projectors(reg.n_c(), seed)?;
    let pp = gys_projectors(reg.n_p(), seed)?;
    let bp: Vec<DMatrix<f64>> = pp.iter().map(|p| p.image_basis()).collect();
    let mut out = Vec::with_capacity(pc.len() * pp.len());
    for c in &pc {
        let bc = c.image_basis();
        for (p, bp) in pp.iter().zip(&bp) {
            out.push(InvariantSubspace {
                shape_c: c.shape().clone(),
                idx_c: c.label(),
                shape_p: p.shape().clone(),
                idx_p: p.label(),
                basis: to_complex(&bc.kronecker(bp)),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Restriction {
    pub matrix: DMatrix<Complex64>,
    /// `‖A B - B (B† A B)‖_F`
    pub leakage: f64,
}

/// `B† A B` for a dense operator `A`.
pub fn restrict_dense(a: &DMatrix<Complex64>, sub: &InvariantSubspace) -> Result<Restriction> {
    let b = &sub.basis;
    if a.nrows() != b.nrows() || a.ncols() != b.nrows() {
        return Err(Error::DimensionMismatch {
            expected: b.nrows(),
            found: a.nrows(),
        });
    }
    let ab = a * b;
    let matrix = b.adjoint() * &ab;
    let leakage = (ab - b * &matrix).norm();
    if leakage > LEAKAGE_FATAL {
        return Err(Error::SymmetryViolation { leakage });
    }
    Ok(Restriction { matrix, leakage })
}

pub fn restrict(a: &crate::pauli::Operator, sub: &InvariantSubspace) -> Result<Restriction> {
    restrict_dense(&a.to_dense(), sub)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Su,
    U,
    Deficient,
    Trivial,
}

impl Verdict {
    /// Full control on the subspace (up to a global phase).
    pub fn is_controllable(self) -> bool {
        !matches!(self, Verdict::Deficient)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub shape_c: Partition,
    pub idx_c: usize,
    pub shape_p: Partition,
    pub idx_p: usize,
    pub m: usize,
    pub restricted_dim: usize,
    pub verdict: Verdict,
    pub leakage: f64,
    #[serde(skip)]
    pub traceless_dim: usize,
    #[serde(skip)]
    pub commutant_dim: usize,
}

/// Real rank of a list of complex matrices viewed as vectors in `R^{2 m²}`.
pub fn real_rank(mats: &[DMatrix<Complex64>]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let len = mats[0].len();
    let mut rows = DMatrix::<f64>::zeros(mats.len(), 2 * len);
    for (r, m) in mats.iter().enumerate() {
        for (k, z) in m.iter().enumerate() {
            rows[(r, 2 * k)] = z.re;
            rows[(r, 2 * k + 1)] = z.im;
        }
    }
    let sv = rows.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOL * top).count()
}

fn traceless(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let k = m.nrows();
    let shift = m.trace() / k as f64;
    let mut out = m.clone();
    for i in 0..k {
        out[(i, i)] -= shift;
    }
    out
}

/// Dimension of `{X : [b, X] = 0 for all b}`, found by shrinking a candidate
/// basis one element at a time.
pub fn commutant_dim(mats: &[DMatrix<Complex64>], m: usize) -> usize {
    let mut cands: Vec<DMatrix<Complex64>> = (0..m * m)
        .map(|k| {
            let mut e = DMatrix::zeros(m, m);
            e[(k / m, k % m)] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    for b in mats {
        if cands.len() <= 1 {
            break;
        }
        let scale = b.norm();
        if scale == 0.0 {
            continue;
        }
        let d = cands.len();
        let mut k = DMatrix::<Complex64>::zeros(m * m, d);
        for (j, x) in cands.iter().enumerate() {
            let c = b * x - x * b;
            for (i, z) in c.iter().enumerate() {
                k[(i, j)] = *z;
            }
        }
        let svd = k.svd(false, true);
        let v_t = svd.v_t.expect("requested V^T");
        let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
        sv.resize(d, 0.0);
        let next: Vec<DMatrix<Complex64>> = (0..v_t.nrows())
            .filter(|&r| sv[r] <= RANK_TOL * scale)
            .chain(v_t.nrows()..d)
            .map(|r| {
                let mut x = DMatrix::zeros(m, m);
                for (j, c) in cands.iter().enumerate() {
                    x += c * v_t[(r, j)].conj();
                }
                x
            })
            .collect();
        if next.len() < d {
            cands = next;
        }
    }
    cands.len()
}

/// Classifies a set of restricted matrices (skew-Hermitian, `m × m`).
pub fn classify(mats: &[DMatrix<Complex64>], m: usize) -> (Verdict, usize, usize, usize) {
    let restricted_dim = real_rank(mats);
    if m == 1 {
        return (Verdict::Trivial, restricted_dim, 0, 1);
    }
    let parts: Vec<DMatrix<Complex64>> = mats.iter().map(traceless).collect();
    let traceless_dim = real_rank(&parts);
    let comm = commutant_dim(mats, m);
    let verdict = if traceless_dim == m * m - 1 && comm == 1 {
        if restricted_dim > traceless_dim {
            Verdict::U
        } else {
            Verdict::Su
        }
    } else {
        Verdict::Deficient
    };
    (verdict, restricted_dim, traceless_dim, comm)
}

/// Restricts every element of `dense` to `sub` and classifies the result.
pub fn classify_block(dense: &[DMatrix<Complex64>], sub: &InvariantSubspace) -> Result<BlockReport> {
    let mut leakage = 0.0f64;
    let mut mats = Vec::with_capacity(dense.len());
    for a in dense {
        let r = restrict_dense(a, sub)?;
        leakage = leakage.max(r.leakage);
        mats.push(r.matrix);
    }
    let m = sub.dim();
    let (verdict, restricted_dim, traceless_dim, commutant_dim) = classify(&mats, m);
    Ok(BlockReport {
        shape_c: sub.shape_c.clone(),
        idx_c: sub.idx_c,
        shape_p: sub.shape_p.clone(),
        idx_p: sub.idx_p,
        m,
        restricted_dim,
        verdict,
        leakage,
        traceless_dim,
        commutant_dim,
    })
}

/// Blocks of `basis` on every invariant subspace of its register.
pub fn decompose(basis: &LieBasis, seed: u64) -> Result<Vec<BlockReport>> {
    let subs = invariant_subspaces(basis.register(), seed)?;
    let dense: Vec<DMatrix<Complex64>> = basis.elements().iter().map(|e| e.to_dense()).collect();
    #[cfg(feature = "parallel")]
    let iter = subs.par_iter();
    #[cfg(not(feature = "parallel"))]
    let iter = subs.iter();
    iter.map(|s| classify_block(&dense, s)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ControllabilityReport {
    pub nc: usize,
    pub np: usize,
    pub gamma: [f64; 2],
    pub dla_dim: usize,
    pub blocks: Vec<BlockReport>,
    pub subspace_controllable: bool,
    /// `|γ_C| = |γ_P|`
    #[serde(skip)]
    pub outside_assumption: bool,
    #[serde(skip)]
    pub max_leakage: f64,
}

impl ControllabilityReport {
    pub fn largest_block(&self) -> usize {
        self.blocks.iter().map(|b| b.m).max().unwrap_or(0)
    }
}

/// Closes the model generators and classifies every block.
pub fn analyze(p: &ModelParams, seed: u64) -> Result<ControllabilityReport> {
    let dla = closure(&model_generators(p)?, default_max_dim(p.register))?;
    let blocks = decompose(&dla, seed)?;
    let max_leakage = blocks.iter().map(|b| b.leakage).fold(0.0, f64::max);
    Ok(ControllabilityReport {
        nc: p.n_c(),
        np: p.n_p(),
        gamma: [p.gamma_c, p.gamma_p],
        dla_dim: dla.dim(),
        subspace_controllable: blocks.iter().all(|b| b.verdict.is_controllable()) && max_leakage <= LEAKAGE_TOL,
        blocks,
        outside_assumption: p.outside_assumption(),
        max_leakage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{Operator, PauliWord};

    fn params(n_c: usize, n_p: usize) -> ModelParams {
        ModelParams::with_default_gammas(RegisterSpec::new(n_c, n_p).unwrap()).unwrap()
    }

    #[test]
    fn subspace_dimensions() {
        let dims = |nc, np| -> Vec<usize> {
            invariant_subspaces(RegisterSpec::new(nc, np).unwrap(), 42)
                .unwrap()
                .iter()
                .map(|s| s.dim())
                .collect()
        };
        assert_eq!(dims(1, 3), [8, 4, 4]);
        assert_eq!(dims(2, 2), [9, 3, 3, 1]);
        assert_eq!(dims(1, 1), [4]);
    }

    #[test]
    fn commutant_of_full_and_diagonal_sets() {
        let m = 3;
        let mut full = Vec::new();
        for a in 0..m {
            for b in 0..m {
                let mut e = DMatrix::zeros(m, m);
                e[(a, b)] = Complex64::new(0.0, 1.0);
                e[(b, a)] = Complex64::new(0.0, 1.0);
                full.push(e.clone());
                if a != b {
                    let mut f = DMatrix::zeros(m, m);
                    f[(a, b)] = Complex64::new(1.0, 0.0);
                    f[(b, a)] = Complex64::new(-1.0, 0.0);
                    full.push(f);
                }
            }
        }
        assert_eq!(commutant_dim(&full, m), 1);
        assert_eq!(classify(&full, m).0, Verdict::U);
        let diag: Vec<_> = full.iter().filter(|e| (*e - DMatrix::from_diagonal(&e.diagonal())).norm() == 0.0).cloned().collect();
        assert_eq!(commutant_dim(&diag, m), 3);
        assert_eq!(classify(&diag, m).0, Verdict::Deficient);
    }

    #[test]
    fn smallest_register_is_su4() {
        let r = analyze(&params(1, 1), 42).unwrap();
        assert_eq!(r.dla_dim, 15);
        assert_eq!(r.blocks.len(), 1);
        assert_eq!(r.blocks[0].verdict, Verdict::Su);
        assert!(r.subspace_controllable);
    }

    #[test]
    fn asymmetric_operator_is_rejected() {
        let reg = RegisterSpec::new(1, 2).unwrap();
        let subs = invariant_subspaces(reg, 42).unwrap();
        let op = Operator::from_word(reg, "IXI".parse::<PauliWord>().unwrap(), Complex64::new(0.0, 1.0));
        let err = subs.iter().map(|s| restrict(&op, s)).find(|r| r.is_err());
        assert!(matches!(err, Some(Err(Error::SymmetryViolation { .. }))));
    }

    #[test]
    fn report_json_field_order() {
        let r = analyze(&params(1, 2), 42).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with(r#"{"nc":1,"np":2,"gamma":[1.0,2.0],"dla_dim":38,"blocks":[{"shape_c":[1],"idx_c":0,"shape_p":[2],"idx_p":0,"m":6,"restricted_dim":"#));
        assert!(s.ends_with(r#""subspace_controllable":true}"#));
        assert!(!s.contains("outside_assumption"));
    }
}
