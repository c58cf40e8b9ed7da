//! Numerical re-verification of the structural claims about the model.
//!
//! Each check runs at one parameter point and returns a [`CheckResult`]. The
//! [`CLAIMS`] manifest maps every claim to the check that witnesses it, and
//! [`run_all`] expands the checks over all parameter points within a size cap.

use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::decomposition::{analyze, invariant_subspaces, Verdict};
use crate::error::Result;
use crate::lie::{closure, commutes_with_group, default_max_dim, LieBasis, MEMBERSHIP_TOL};
use crate::model::{
    build_ghz_closure, build_hat_l, build_l_basis, build_lg_basis, build_predicted_dla, build_structural_spaces,
    complement_spaces_2x2, complement_witness, invariant_algebra_dim, model_generators, symmetric_orbit_sums,
    ModelParams,
};
use crate::pauli::{
    build_i, build_j, build_s, collective_spins, quadratic_basis, quadratic_traceless_basis, Axis, Operator, Pauli,
    PauliWord, Region, RegisterSpec,
};
use crate::symgroup::{gys_axiom_residuals, gys_projectors, group_actions, num_standard_tableaux, partitions, subspace_dim};

/// Termwise operator identities.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Commutators and inner products that must vanish.
pub const VANISH_TOL: f64 = 1e-9;
/// Span and rank decisions.
pub const SPAN_TOL: f64 = MEMBERSHIP_TOL;
/// Symmetrizer axioms.
pub const GYS_TOL: f64 = 1e-10;

/// Default cap on total qubits for closure-based checks.
pub const DEFAULT_MAX_N: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nc: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub np: Option<usize>,
}

impl Params {
    pub fn n(n: usize) -> Self {
        Self { n: Some(n), ..Self::default() }
    }

    pub fn split(nc: usize, np: usize) -> Self {
        Self {
            nc: Some(nc),
            np: Some(np),
            ..Self::default()
        }
    }

    pub fn none() -> Self {
        Self::default()
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(n) = self.nc {
            parts.push(format!("nc={n}"));
        }
        if let Some(n) = self.np {
            parts.push(format!("np={n}"));
        }
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub params: Params,
    pub passed: bool,
    /// Largest defect found; dimension mismatches count as their difference.
    pub residual: f64,
    /// Seconds.
    pub elapsed: f64,
    pub detail: String,
}

/// Accumulates defects for one check.
struct Tally {
    name: &'static str,
    params: Params,
    start: Instant,
    tol: f64,
    residual: f64,
    notes: Vec<String>,
}

impl Tally {
    fn new(name: &'static str, params: Params, tol: f64) -> Self {
        Self {
            name,
            params,
            start: Instant::now(),
            tol,
            residual: 0.0,
            notes: Vec::new(),
        }
    }

    fn defect(&mut self, r: f64) {
        if r.is_nan() {
            self.residual = f64::INFINITY;
        } else if r > self.residual {
            self.residual = r;
        }
    }

    fn dim(&mut self, what: &str, found: usize, expected: usize) {
        self.notes.push(format!("{what} {found} (expected {expected})"));
        self.defect(found.abs_diff(expected) as f64);
    }

    fn flag(&mut self, what: &str, ok: bool) {
        if !ok {
            self.notes.push(format!("{what} failed"));
            self.defect(f64::INFINITY);
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            params: self.params,
            passed: self.residual < self.tol,
            residual: self.residual,
            elapsed: self.start.elapsed().as_secs_f64(),
            detail: self.notes.join("; "),
        }
    }

    fn error(mut self, e: crate::error::Error) -> CheckResult {
        self.notes.push(format!("error: {e}"));
        self.residual = f64::INFINITY;
        self.finish()
    }
}

fn uniform(n: usize) -> Result<RegisterSpec> {
    RegisterSpec::uniform(n)
}

fn relative(op: &Operator, scale: f64) -> f64 {
    if scale == 0.0 {
        op.norm()
    } else {
        op.norm() / scale
    }
}

fn random_element(basis: &[Operator], rng: &mut ChaCha8Rng) -> Result<Operator> {
    let reg = basis[0].register();
    let mut acc = Operator::zero(reg);
    for e in basis {
        acc = acc.checked_add(&(e * rng.gen_range(-1.0..1.0)))?;
    }
    Ok(acc)
}

fn max_residual_in(basis: &LieBasis, ops: &[Operator]) -> Result<f64> {
    let mut worst = 0.0f64;
    for op in ops {
        worst = worst.max(basis.relative_residual(op)?);
    }
    Ok(worst)
}

fn max_projection_on(basis: &LieBasis, ops: &[Operator]) -> Result<f64> {
    let mut worst = 0.0f64;
    for op in ops {
        worst = worst.max(basis.relative_projection(op)?);
    }
    Ok(worst)
}

/// Mutual containment residual and dimension difference.
fn span_defect(a: &LieBasis, b: &LieBasis) -> Result<f64> {
    let r = max_residual_in(b, a.elements())?.max(max_residual_in(a, b.elements())?);
    Ok(r.max(a.dim().abs_diff(b.dim()) as f64))
}

/// If `A` commutes with `B` and `C` it commutes with and is orthogonal to
/// `[B, C]`. Triples: `A ∈ span{i1, iJ}`, `B, C ∈ L^G`.
pub fn check_commuting_bracket(n: usize, trials: usize, seed: u64) -> CheckResult {
    let mut t = Tally::new("commuting_bracket", Params::n(n), VANISH_TOL);
    let run = |t: &mut Tally| -> Result<()> {
        let reg = uniform(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lg = build_lg_basis(n)?;
        let center = [Operator::identity(reg).times_i(), build_j(Region::All, reg)?.times_i()];
        let mut used = 0;
        let mut skipped = 0;
        for _ in 0..trials {
            let a = random_element(&center, &mut rng)?;
            let b = random_element(lg.elements(), &mut rng)?;
            let c = random_element(lg.elements(), &mut rng)?;
            let scale = a.norm() * b.norm();
            if relative(&a.commutator(&b)?, scale) > VANISH_TOL || relative(&a.commutator(&c)?, a.norm() * c.norm()) > VANISH_TOL {
                skipped += 1;
                continue;
            }
            used += 1;
            let bc = b.commutator(&c)?;
            let denom = a.norm() * bc.norm();
            t.defect(relative(&a.commutator(&bc)?, denom));
            if denom > 0.0 {
                t.defect(a.inner_product(&bc)?.norm() / denom);
            }
        }
        // A generic pair from L^G does not commute; the precondition must reject it.
        let a = random_element(lg.elements(), &mut rng)?;
        let b = random_element(lg.elements(), &mut rng)?;
        t.flag(
            "precondition filter",
            n < 2 || relative(&a.commutator(&b)?, a.norm() * b.norm()) > VANISH_TOL,
        );
        t.note(format!("{used} triples checked, {skipped} rejected"));
        t.flag("at least one triple", used > 0);
        Ok(())
    };
    match run(&mut t) {
        Ok(()) => t.finish(),
        Err(e) => t.error(e),
    }
}

/// `[S, iI] = [S, iI_0] = iI_0`, and for `A = iI_aa`,
/// `[S, A] + [S, [S, A]] = iI_0`.
pub fn check_spin_quadratic_brackets(n: usize) -> CheckResult {
    let mut t = Tally::new("spin_quadratic_brackets", Params::n(n), SPAN_TOL);
    let run = |t: &mut Tally| -> Result<()> {
        let reg = uniform(n)?;
        let s: Vec<Operator> = collective_spins(Region::All, reg)?.iter().map(Operator::times_i).collect();
        let brackets = |ops: &[Operator]| -> Result<Vec<Operator>> {
            let mut out = Vec::new();
            for g in &s {
                for o in ops {
                    out.push(g.commutator(o)?);
                }
            }
            Ok(out)
        };
        let i_full: Vec<Operator> = quadratic_basis(Region::All, reg)?.iter().map(Operator::times_i).collect();
        let i0: Vec<Operator> = quadratic_traceless_basis(Region::All, reg)?
            .iter()
            .map(Operator::times_i)
            .collect();
        let target = LieBasis::span_of(reg, &i0)?;
        t.dim("dim iI0", target.dim(), 5);
        let from_full = LieBasis::span_of(reg, &brackets(&i_full)?)?;
        let from_i0 = LieBasis::span_of(reg, &brackets(&i0)?)?;
        t.defect(span_defect(&from_full, &target)?);
        t.defect(span_defect(&from_i0, &target)?);
        for axis in Axis::ALL {
            let a = build_i(&[axis, axis], Region::All, reg)?.times_i();
            let x1 = brackets(std::slice::from_ref(&a))?;
            let x2 = brackets(&x1)?;
            let b1 = LieBasis::span_of(reg, &x1)?;
            let b2 = LieBasis::span_of(reg, &x2)?;
            let sum: Vec<Operator> = x1.iter().chain(&x2).cloned().collect();
            let b = LieBasis::span_of(reg, &sum)?;
            t.defect(span_defect(&b, &target)?);
            t.note(format!(
                "I_{a}{a}: dims {} + {} -> {} (overlap {})",
                b1.dim(),
                b2.dim(),
                b.dim(),
                b1.dim() + b2.dim() - b.dim(),
                a = axis.letter().as_char(),
            ));
        }
        Ok(())
    };
    match run(&mut t) {
        Ok(()) => t.finish(),
        Err(e) => t.error(e),
    }
}

/// `L^G ∩ su = L ⊕ span{iJ}` with dimension `M(n) - 1`.
pub fn check_invariant_su_split(n: usize) -> CheckResult {
    let mut t = Tally::new("invariant_su_split", Params::n(n), SPAN_TOL);
    let run = |t: &mut Tally| -> Result<()> {
        let reg = uniform(n)?;
        let l = build_l_basis(n)?;
        let ij = build_j(Region::All, reg)?.times_i();
        t.defect(l.relative_projection(&ij)?);
        let mut sum = l.clone();
        sum.extend_with(&ij)?;
        let traceless: Vec<Operator> = symmetric_orbit_sums(n)?
            .into_iter()
            .filter(|o| o.coefficient(&PauliWord::identity(n)) == Complex64::default())
            .collect();
        let target = LieBasis::span_of(reg, &traceless)?;
        t.dim("dim L", l.dim(), invariant_algebra_dim(n) - 2);
        t.dim("dim L^G cap su", target.dim(), invariant_algebra_dim(n) - 1);
        t.defect(span_defect(&sum, &target)?);
        Ok(())
    };
    match run(&mut t) {
        Ok(()) => t.finish(),
        Err(e) => t.error(e),
    }
}

/// `iJ` commutes with `L` and with `L^G`; at `n = 2`, `JA = AJ = A` on `L`.
pub fn check_heisenberg_commutation(n: usize) -> CheckResult {
    let mut t = Tally::new("heisenberg_commutation", Params::n(n), VANISH_TOL);
    let run = |t: &mut Tally| -> Result<()> {
        let reg = uniform(n)?;
        let j = build_j(Region::All, reg)?;
        let ij = j.times_i();
        let scale = ij.norm().max(1.0);
        for e in build_l_basis(n)?.elements().iter().chain(build_lg_basis(n)?.elements()) {
            t.defect(relative(&ij.commutator(e)?, scale * e.norm()));
        }
        if n == 2 {
            for a in build_l_basis(2)?.elements() {
                t.defect(relative(&(&j.multiply(a)? - a), a.norm()));
                t.defect(relative(&(&a.multiply(&j)? - a), a.norm()));
            }
        }
        Ok(())
    };
    match run(&mut t) {
        Ok(()) => t.finish(),
        Err(e) => t.error(e),
    }
}

/// `i I_zz`, `i S_{x,y,z}` generate `L^G ∩ su`, of dimension `M(n) - 1`.
pub fn check_ghz_generation(n: usize) -> CheckResult {
    let mut t = Tally::new("ghz_generation", Params::n(n), SPAN_TOL);
    let run = |t: &mut Tally| -> Result<()> {
        let g = build_ghz_closure(n)?;
        t.dim("closure", g.dim(), invariant_algebra_dim(n) - 1);
        t.flag("permutation invariance", commutes_with_group(&g));
        Ok(())
    };
    match run(&mut t) {
        Ok(()) => t.finish(),
        Err(e) => t.error(e),
    }
}

fn default_params(nc: usize, np: usize) -> Result<ModelParams> {
    ModelParams::with_default_gammas(RegisterSpec::new(nc, np)?)
}

fn model_closure(p: &ModelParams) -> Result<LieBasis> {
    closure(&model_generators(p)?, default_max_dim(p.register))
}

/// The closure of the model equals the predicted span. For `n_c = 2` the
/// complement pieces of the super-algebra are orthogonal to it.
pub fn check_dla_structure(nc: usize, np: usize) -> CheckResult {
    let mut t = Tally::new("dla_structure", Params::split(nc, np), SPAN_TOL);
    let run = |t: &mut Tally| -> Result<()> {
        let p = default_params(nc, np)?;
        let g = model_closure(&p)?;
        let predicted = build_predicted_dla(&p)?;
        t.dim("dla", g.dim(), predicted.dim());
        t.defect(span_defect(&g, &predicted)?);
        if nc == 2 {
            if np == 2 {
                let (o1, o2) = complement_spaces_2x2()?;
                t.defect(max_projection_on(&g, &o1)?);
                t.defect(max_projection_on(&g, &o2)?);
            } else {
                let w = complement_witness(np)?;
                t.defect(max_projection_on(&g, &w)?);
                let hat = build_hat_l(&p)?;
                t.note(format!("complement in hat-L: {}", hat.dim() as isize - g.dim() as isize));
                t.flag("proper subalgebra", hat.dim() > g.dim());
            }
        }
        Ok(())
    };
    match run(&mut t) {
        Ok(()) => t.finish(),
        Err(e) => t.error(e),
    }
}

/// `i(L ⊗ L^G) + i(L^G ⊗ L)` is a Lie algebra containing the model closure;
/// equal for one central spin, strictly larger for two.
pub fn check_hat_l(nc: usize, np: usize) -> CheckResult {
    let mut t = Tally::new("hat_l_superalgebra", Params::split(nc, np), SPAN_TOL);
    let run = |t: &mut Tally| -> Result<()> {
        let p = default_params(nc, np)?;
        let g = model_closure(&p)?;
        let hat = build_hat_l(&p)?;
        t.defect(max_residual_in(&hat, g.elements())?);
        t.defect(hat.closure_defect());
        t.note(format!("dla {} in hat-L {}", g.dim(), hat.dim()));
        if nc == 1 {
            t.dim("hat-L", hat.dim(), g.dim());
        } else {
            t.flag("strict containment", hat.dim() > g.dim());
        }
        Ok(())
    };
    match run(&mut t) {
        Ok(()) => t.finish(),
        Err(e) => t.error(e),
    }
}

/// Every named structural space lies inside the model closure.
pub fn check_structural_spaces(nc: usize, np: usize) -> CheckResult {
    let mut t = Tally::new("structural_containment", Params::split(nc, np), SPAN_TOL);
    let run = |t: &mut Tally| -> Result<()> {
        let p = default_params(nc, np)?;
        let g = model_closure(&p)?;
        for (space, ops) in build_structural_spaces(&p)? {
            let r = max_residual_in(&g, &ops)?;
            if r >= SPAN_TOL {
                t.note(format!("{space} not contained (residual {r:.2e})"));
            }
            t.defect(r);
        }
        Ok(())
    };
    match run(&mut t) {
        Ok(()) => t.finish(),
        Err(e) => t.error(e),
    }
}

/// Symmetrizer axioms, ranks from the hook formula, and `J` acting as a scalar
/// on each image.
pub fn check_gys(n: usize, seed: u64) -> CheckResult {
    let mut t = Tally::new("symmetrizer_axioms", Params::n(n), GYS_TOL);
    let run = |t: &mut Tally| -> Result<()> {
        let projs = gys_projectors(n, seed)?;
        let axioms = gys_axiom_residuals(&projs, &group_actions(n));
        t.defect(axioms.max());
        for shape in partitions(n) {
            let m = subspace_dim(&shape);
            let of_shape: Vec<_> = projs.iter().filter(|p| p.shape() == &shape).collect();
            let expected = if m == 0 { 0 } else { num_standard_tableaux(&shape) };
            t.defect(of_shape.len().abs_diff(expected) as f64);
            for p in of_shape {
                t.defect(p.rank.abs_diff(m) as f64);
                t.defect((p.matrix.trace() - m as f64).abs());
            }
        }
        let j = build_j(Region::All, uniform(n)?)?.to_dense();
        for p in &projs {
            let b = p.image_basis().map(|x| Complex64::new(x, 0.0));
            let r = b.adjoint() * &j * &b;
            let scalar = r.trace() / r.nrows() as f64;
            let off = &r - DMatrix::<Complex64>::identity(r.nrows(), r.nrows()) * scalar;
            t.defect(off.norm() / j.norm().max(1.0));
        }
        Ok(())
    };
    match run(&mut t) {
        Ok(()) => t.finish(),
        Err(e) => t.error(e),
    }
}

/// Every invariant subspace of the model carries `su(m)` or `u(m)` (or is
/// one-dimensional).
pub fn check_subspace_controllability(nc: usize, np: usize, seed: u64) -> CheckResult {
    let mut t = Tally::new("subspace_controllability", Params::split(nc, np), SPAN_TOL);
    let run = |t: &mut Tally| -> Result<()> {
        let report = analyze(&default_params(nc, np)?, seed)?;
        let total: usize = report.blocks.iter().map(|b| b.m).sum();
        t.dim("sum of block dims", total, 1 << (nc + np));
        for b in &report.blocks {
            t.defect(b.leakage);
            if b.verdict == Verdict::Deficient {
                t.note(format!(
                    "block {}x{} (m={}) deficient: restricted dim {}, commutant {}",
                    b.shape_c, b.shape_p, b.m, b.restricted_dim, b.commutant_dim
                ));
                t.defect(f64::INFINITY);
            }
        }
        Ok(())
    };
    match run(&mut t) {
        Ok(()) => t.finish(),
        Err(e) => t.error(e),
    }
}

/// Largest invariant subspace is `2(n_p + 1)` for one central spin and
/// `3(n_p + 1)` for two.
pub fn check_block_growth(nc: usize, np: usize, seed: u64) -> CheckResult {
    let mut t = Tally::new("block_growth", Params::split(nc, np), 0.5);
    let run = |t: &mut Tally| -> Result<()> {
        let subs = invariant_subspaces(RegisterSpec::new(nc, np)?, seed)?;
        let largest = subs.iter().map(|s| s.dim()).max().unwrap_or(0);
        let factor = if nc == 1 { 2 } else { 3 };
        t.dim("largest block", largest, factor * (np + 1));
        let total: usize = subs.iter().map(|s| s.dim()).sum();
        t.dim("sum", total, 1 << (nc + np));
        Ok(())
    };
    match run(&mut t) {
        Ok(()) => t.finish(),
        Err(e) => t.error(e),
    }
}

fn termwise(a: &Operator, b: &Operator) -> f64 {
    (a - b).terms().values().map(|c| c.norm()).fold(0.0, f64::max)
}

/// `S_a² = n 1 + 2 I_aa`; `(1/3n) Σ S_a² = 1 + (2/3n) J`; at two spins
/// `J² = 3·1 - 2J` and `(1 + J/3)² = (4/3)(1 + J/3)`.
pub fn check_identities(np: usize) -> CheckResult {
    let mut t = Tally::new("operator_identities", Params::n(np), IDENTITY_TOL);
    let run = |t: &mut Tally| -> Result<()> {
        let reg = uniform(np)?;
        let one = Operator::identity(reg);
        let mut sum = Operator::zero(reg);
        for axis in Axis::ALL {
            let s = build_s(axis, Region::All, reg)?;
            let sq = s.multiply(&s)?;
            let i = if np >= 2 { build_i(&[axis, axis], Region::All, reg)? } else { Operator::zero(reg) };
            t.defect(termwise(&sq, &(&(&one * np as f64) + &(&i * 2.0))));
            sum = &sum + &sq;
        }
        let j = build_j(Region::All, reg)?;
        let lhs = &sum * (1.0 / (3.0 * np as f64));
        t.defect(termwise(&lhs, &(&one + &(&j * (2.0 / (3.0 * np as f64))))));
        if np == 2 {
            t.defect(termwise(&j.multiply(&j)?, &(&(&one * 3.0) - &(&j * 2.0))));
            let d = &one + &(&j * (1.0 / 3.0));
            t.defect(termwise(&d.multiply(&d)?, &(&d * (4.0 / 3.0))));
        }
        Ok(())
    };
    match run(&mut t) {
        Ok(()) => t.finish(),
        Err(e) => t.error(e),
    }
}

/// Single-site products and brackets against literal 2×2 matrices with
/// `σ_y = [[0, i], [-i, 0]]`.
pub fn check_pauli_relations() -> CheckResult {
    let mut t = Tally::new("pauli_relations", Params::none(), IDENTITY_TOL);
    let run = |t: &mut Tally| -> Result<()> {
        let z = Complex64::default();
        let o = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let dense = |p: Pauli| -> DMatrix<Complex64> {
            match p {
                Pauli::I => DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
                Pauli::X => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
                Pauli::Y => DMatrix::from_row_slice(2, 2, &[z, i, -i, z]),
                Pauli::Z => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
            }
        };
        let reg = uniform(1)?;
        let op = |p: Pauli| Operator::from_word(reg, PauliWord::from_letters(&[p]), o);
        let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        for a in letters {
            for b in letters {
                let prod = op(a).multiply(&op(b))?.to_dense();
                t.defect((prod - dense(a) * dense(b)).norm());
            }
        }
        for (a, b, c) in [(Pauli::X, Pauli::Y, Pauli::Z), (Pauli::Y, Pauli::Z, Pauli::X), (Pauli::Z, Pauli::X, Pauli::Y)] {
            let br = op(a).times_i().commutator(&op(b).times_i())?;
            t.defect(termwise(&br, &op(c).times_i().scale(Complex64::new(2.0, 0.0))));
        }
        Ok(())
    };
    match run(&mut t) {
        Ok(()) => t.finish(),
        Err(e) => t.error(e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Lemmas,
    Theorems,
    Identities,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(Suite::All),
            "lemmas" => Ok(Suite::Lemmas),
            "theorems" => Ok(Suite::Theorems),
            "identities" => Ok(Suite::Identities),
            _ => Err(format!("unknown suite '{s}' (expected all, lemmas, theorems or identities)")),
        }
    }
}

/// One statement and the check that witnesses it.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub check: &'static str,
    pub suite: Suite,
}

pub const CLAIMS: &[Claim] = &[
    Claim { id: "pauli-products", statement: "single-site Pauli products and su(2) brackets", check: "pauli_relations", suite: Suite::Identities },
    Claim { id: "commuting-element-kills-bracket", statement: "if A commutes with B and C, A commutes with and is orthogonal to [B,C]", check: "commuting_bracket", suite: Suite::Lemmas },
    Claim { id: "spin-brackets-fill-quadratics", statement: "[S, iI] = [S, iI0] = iI0, and [S,A] + [S,[S,A]] = iI0 for A = iI_aa", check: "spin_quadratic_brackets", suite: Suite::Lemmas },
    Claim { id: "ising-and-spins-generate-invariants", statement: "iI_zz and iS generate the traceless permutation-invariant algebra", check: "ghz_generation", suite: Suite::Theorems },
    Claim { id: "invariant-su-is-l-plus-heisenberg", statement: "traceless invariants = L + span{iJ}", check: "invariant_su_split", suite: Suite::Lemmas },
    Claim { id: "heisenberg-commutes-with-l", statement: "iJ commutes with L", check: "heisenberg_commutation", suite: Suite::Lemmas },
    Claim { id: "heisenberg-commutes-with-invariants", statement: "iJ commutes with all permutation invariants", check: "heisenberg_commutation", suite: Suite::Lemmas },
    Claim { id: "heisenberg-is-identity-on-l-pair", statement: "JA = AJ = A for A in L on two spins", check: "heisenberg_commutation", suite: Suite::Lemmas },
    Claim { id: "separate-rotations-from-distinct-gammas", statement: "iS^C and iS^P lie in the algebra when |gamma_C| != |gamma_P|", check: "structural_containment", suite: Suite::Lemmas },
    Claim { id: "hat-l-contains-dla", statement: "i(L x L^G) + i(L^G x L) is a Lie algebra containing the model algebra", check: "hat_l_superalgebra", suite: Suite::Theorems },
    Claim { id: "spin-spin-and-spin-quadratic-spaces", statement: "iS x S, iS x I and iI x S lie in the algebra", check: "structural_containment", suite: Suite::Lemmas },
    Claim { id: "quadratic-on-periphery-one-center", statement: "1 x iI0 lies in the algebra for one central spin", check: "structural_containment", suite: Suite::Lemmas },
    Claim { id: "one-center-dla", statement: "one central spin: algebra = sigma x L^G + 1 x L", check: "dla_structure", suite: Suite::Theorems },
    Claim { id: "quadratic-pairs-two-centers", statement: "two central spins: iI0 x I0 and (1+J/3) x iI0 lie in the algebra", check: "structural_containment", suite: Suite::Lemmas },
    Claim { id: "spin-times-invariants-two-centers", statement: "two central spins: S x L^G lies in the algebra", check: "structural_containment", suite: Suite::Lemmas },
    Claim { id: "anisotropy-times-l-two-centers", statement: "two central spins: (I_aa - I_zz) x L lies in the algebra", check: "structural_containment", suite: Suite::Lemmas },
    Claim { id: "dressed-identity-times-l", statement: "two central spins: (1+J/3) x L lies in the algebra", check: "structural_containment", suite: Suite::Lemmas },
    Claim { id: "two-center-summary-spaces", statement: "two central spins: iL x L and L x (1 + 2J/(3 n_p)) lie in the algebra", check: "structural_containment", suite: Suite::Lemmas },
    Claim { id: "two-by-two-dla", statement: "two plus two spins: algebra is the five-space sum, orthogonal to (1-J) x iI0 and iI0 x (1-J)", check: "dla_structure", suite: Suite::Theorems },
    Claim { id: "two-center-larger-periphery-dla", statement: "two central spins, n_p > 2: algebra = iL x L^G + (1+J/3) x L + 1 x S, orthogonal to (1-J) x C", check: "dla_structure", suite: Suite::Theorems },
    Claim { id: "square-of-collective-spin", statement: "S_a^2 = n 1 + 2 I_aa", check: "operator_identities", suite: Suite::Identities },
    Claim { id: "sum-of-squares", statement: "(1/3n) sum S_a^2 = 1 + 2J/(3n)", check: "operator_identities", suite: Suite::Identities },
    Claim { id: "heisenberg-square-two-spins", statement: "J^2 = 3 - 2J and (1+J/3)^2 = (4/3)(1+J/3) on two spins", check: "operator_identities", suite: Suite::Identities },
    Claim { id: "symmetrizer-axioms", statement: "projectors are complete, orthogonal, primitive and Hermitian", check: "symmetrizer_axioms", suite: Suite::Theorems },
    Claim { id: "symmetrizer-rank-formula", statement: "image dimension is the content product over the hook length", check: "symmetrizer_axioms", suite: Suite::Theorems },
    Claim { id: "heisenberg-scalar-on-images", statement: "J acts as a scalar on every symmetrizer image", check: "symmetrizer_axioms", suite: Suite::Theorems },
    Claim { id: "product-symmetrizers", statement: "tensor products of symmetrizers give the invariant subspaces of the split register", check: "block_growth", suite: Suite::Theorems },
    Claim { id: "largest-block", statement: "largest invariant subspace has dimension 2(n_p+1) or 3(n_p+1)", check: "block_growth", suite: Suite::Theorems },
    Claim { id: "subspace-controllable", statement: "one or two central spins: every invariant subspace is controllable", check: "subspace_controllability", suite: Suite::Theorems },
];

/// Check names in manifest order.
pub const CHECKS: &[&str] = &[
    "pauli_relations",
    "operator_identities",
    "commuting_bracket",
    "spin_quadratic_brackets",
    "invariant_su_split",
    "heisenberg_commutation",
    "structural_containment",
    "ghz_generation",
    "hat_l_superalgebra",
    "dla_structure",
    "symmetrizer_axioms",
    "block_growth",
    "subspace_controllability",
];

/// Every claim names a known check and every check witnesses some claim.
pub fn manifest_defects() -> Vec<String> {
    let mut out = Vec::new();
    for c in CLAIMS {
        if !CHECKS.contains(&c.check) {
            out.push(format!("claim {} maps to unknown check {}", c.id, c.check));
        }
    }
    for name in CHECKS {
        if !CLAIMS.iter().any(|c| c.check == *name) {
            out.push(format!("check {name} witnesses no claim"));
        }
    }
    out
}

fn suite_of(check: &str) -> Suite {
    CLAIMS
        .iter()
        .find(|c| c.check == check)
        .map(|c| c.suite)
        .unwrap_or(Suite::All)
}

type Job = Box<dyn Fn() -> CheckResult + Send + Sync>;

/// Parameter points for every check within `max_n` total qubits; symmetrizer
/// checks go one qubit further.
fn jobs(max_n: usize, seed: u64) -> Vec<(&'static str, Job)> {
    let mut out: Vec<(&'static str, Job)> = Vec::new();
    let gys_n = (max_n + 1).min(crate::symgroup::MAX_GROUP_QUBITS);
    let small = 2..=max_n.min(4);
    let splits = |cap: usize| -> Vec<(usize, usize)> {
        (1..=2)
            .flat_map(|nc| (nc..=cap.saturating_sub(nc)).map(move |np| (nc, np)))
            .filter(|&(nc, np)| nc + np <= cap && np >= 1)
            .collect()
    };
    let model_points: Vec<(usize, usize)> =
        [(1, 2), (1, 3), (2, 2), (2, 3)].into_iter().filter(|&(c, p)| c + p <= max_n).collect();

    out.push(("pauli_relations", Box::new(check_pauli_relations)));
    for np in 2..=max_n.max(2) {
        out.push(("operator_identities", Box::new(move || check_identities(np))));
    }
    for n in small.clone() {
        out.push(("commuting_bracket", Box::new(move || check_commuting_bracket(n, 20, seed))));
    }
    for n in small.clone() {
        out.push(("spin_quadratic_brackets", Box::new(move || check_spin_quadratic_brackets(n))));
    }
    for n in small.clone() {
        out.push(("invariant_su_split", Box::new(move || check_invariant_su_split(n))));
    }
    for n in small.clone() {
        out.push(("heisenberg_commutation", Box::new(move || check_heisenberg_commutation(n))));
    }
    for (nc, np) in splits(max_n) {
        out.push(("structural_containment", Box::new(move || check_structural_spaces(nc, np))));
    }
    for n in small {
        out.push(("ghz_generation", Box::new(move || check_ghz_generation(n))));
    }
    for (nc, np) in splits(max_n) {
        out.push(("hat_l_superalgebra", Box::new(move || check_hat_l(nc, np))));
    }
    for (nc, np) in model_points {
        out.push(("dla_structure", Box::new(move || check_dla_structure(nc, np))));
    }
    for n in 2..=gys_n {
        out.push(("symmetrizer_axioms", Box::new(move || check_gys(n, seed))));
    }
    for (nc, np) in splits(gys_n).into_iter().filter(|&(_, np)| (2..=4).contains(&np)) {
        out.push(("block_growth", Box::new(move || check_block_growth(nc, np, seed))));
    }
    for (nc, np) in splits(max_n) {
        out.push(("subspace_controllability", Box::new(move || check_subspace_controllability(nc, np, seed))));
    }
    out
}

/// Runs the checks belonging to `suite`, ordered as in [`CHECKS`].
pub fn run_suite(suite: Suite, max_n: usize, seed: u64) -> Vec<CheckResult> {
    let selected: Vec<Job> = jobs(max_n, seed)
        .into_iter()
        .filter(|(name, _)| suite == Suite::All || suite_of(name) == suite)
        .map(|(_, job)| job)
        .collect();
    #[cfg(feature = "parallel")]
    let results = selected.par_iter().map(|job| job()).collect();
    #[cfg(not(feature = "parallel"))]
    let results = selected.iter().map(|job| job()).collect();
    results
}

pub fn run_all(max_n: usize, seed: u64) -> Vec<CheckResult> {
    run_suite(Suite::All, max_n, seed)
}
