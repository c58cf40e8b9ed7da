//! Lie closure of skew-Hermitian operators and span queries on the result.
//!
//! Every basis element is stored twice: as an [`Operator`] (used for brackets)
//! and as a real coordinate vector of length `4^n`. A skew-Hermitian operator
//! `i * sum_w r_w P_w` has coordinates `sqrt(2^n) * r_w`, so the Euclidean dot
//! product of coordinates equals `Tr(A B†)` and Gram-Schmidt is real-valued.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{Operator, PauliWord, RegisterSpec};

/// Relative residual below which a candidate is considered dependent.
pub const INDEPENDENCE_TOL: f64 = 1e-9;

/// Relative residual accepted by membership and closedness checks.
pub const MEMBERSHIP_TOL: f64 = 1e-8;

/// Real part allowed on coefficients of an operator declared skew-Hermitian.
pub const SKEW_TOL: f64 = 1e-10;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Orthonormal basis (under `Tr(A B†)`) of a real span of skew-Hermitian operators.
#[derive(Clone, Debug)]
pub struct LieBasis {
    register: RegisterSpec,
    elements: Vec<Operator>,
    coords: Vec<Vec<f64>>,
    depths: Vec<usize>,
}

impl LieBasis {
    pub fn empty(register: RegisterSpec) -> Self {
        Self {
            register,
            elements: Vec::new(),
            coords: Vec::new(),
            depths: Vec::new(),
        }
    }

    /// Orthonormalizes `ops` without taking any brackets. Non-skew-Hermitian
    /// input is rejected.
    pub fn span_of<'a>(register: RegisterSpec, ops: impl IntoIterator<Item = &'a Operator>) -> Result<Self> {
        let mut basis = Self::empty(register);
        for (index, op) in ops.into_iter().enumerate() {
            basis.validate(op, index)?;
            basis.try_insert(op, 0);
        }
        Ok(basis)
    }

    pub fn register(&self) -> RegisterSpec {
        self.register
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Operator] {
        &self.elements
    }

    /// Number of brackets used to produce each element (0 for generators).
    pub fn depths(&self) -> &[usize] {
        &self.depths
    }

    pub fn depth_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &d in &self.depths {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }

    fn validate(&self, op: &Operator, index: usize) -> Result<()> {
        if op.register() != self.register {
            return Err(Error::RegisterMismatch {
                left: self.register.to_string(),
                right: op.register().to_string(),
            });
        }
        let scale = op.terms().values().map(|c| c.norm()).fold(0.0, f64::max);
        let real = op.max_real_part();
        if real > SKEW_TOL * scale.max(1.0) {
            return Err(Error::NotSkewHermitian { index, real_part: real });
        }
        Ok(())
    }

    fn coordinates(&self, op: &Operator) -> Vec<f64> {
        let n = self.register.n();
        let scale = (self.register.dim() as f64).sqrt();
        let mut v = vec![0.0; 1usize << (2 * n)];
        for (w, c) in op.terms() {
            v[w.index()] = c.im * scale;
        }
        v
    }

    fn operator_from_coords(&self, v: &[f64]) -> Operator {
        let n = self.register.n();
        let scale = 1.0 / (self.register.dim() as f64).sqrt();
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0.0)
            .map(|(i, &x)| (PauliWord::from_index(n, i), Complex64::new(0.0, x * scale)));
        Operator::from_terms(self.register, terms).expect("coordinates match register")
    }

    /// Subtracts the projection onto the span twice; returns the residual.
    fn residual(&self, mut v: Vec<f64>) -> Vec<f64> {
        for _ in 0..2 {
            for e in &self.coords {
                let d = dot(e, &v);
                if d != 0.0 {
                    for (x, y) in v.iter_mut().zip(e) {
                        *x -= d * y;
                    }
                }
            }
        }
        v
    }

    /// Appends the normalized residual of `op` if it is independent.
    fn try_insert(&mut self, op: &Operator, depth: usize) -> bool {
        let v = self.coordinates(op);
        let norm = dot(&v, &v).sqrt();
        if norm < 1e-300 {
            return false;
        }
        let r = self.residual(v);
        let rn = dot(&r, &r).sqrt();
        if rn <= INDEPENDENCE_TOL * norm {
            return false;
        }
        let r: Vec<f64> = r.iter().map(|x| x / rn).collect();
        self.elements.push(self.operator_from_coords(&r));
        self.coords.push(r);
        self.depths.push(depth);
        true
    }

    /// Adds an operator to the span (no brackets are taken). Returns whether
    /// the dimension grew.
    pub fn extend_with(&mut self, op: &Operator) -> Result<bool> {
        self.validate(op, self.dim())?;
        Ok(self.try_insert(op, 0))
    }

    /// Norm of the component of `op` orthogonal to the span, relative to `op`.
    /// The real (Hermitian) part of `op` counts fully toward the residual.
    pub fn relative_residual(&self, op: &Operator) -> Result<f64> {
        if op.register() != self.register {
            return Err(Error::RegisterMismatch {
                left: self.register.to_string(),
                right: op.register().to_string(),
            });
        }
        let total = op.norm();
        if total == 0.0 {
            return Ok(0.0);
        }
        let hermitian_sq = op.terms().values().map(|c| c.re * c.re).sum::<f64>() * self.register.dim() as f64;
        let r = self.residual(self.coordinates(op));
        Ok((dot(&r, &r) + hermitian_sq).sqrt() / total)
    }

    /// Norm of the projection of `op` onto the span, relative to `op`.
    pub fn relative_projection(&self, op: &Operator) -> Result<f64> {
        let total = op.norm();
        if total == 0.0 {
            return Ok(0.0);
        }
        let v = self.coordinates(op);
        let sq: f64 = self.coords.iter().map(|e| dot(e, &v).powi(2)).sum();
        Ok(sq.sqrt() / total)
    }

    pub fn contains(&self, op: &Operator) -> bool {
        self.relative_residual(op).map(|r| r < MEMBERSHIP_TOL).unwrap_or(false)
    }

    /// Whether `op` is orthogonal to every element of the span.
    pub fn is_orthogonal_to(&self, op: &Operator) -> bool {
        self.relative_projection(op).map(|r| r < MEMBERSHIP_TOL).unwrap_or(false)
    }

    /// Largest `|<e_i, e_j>|` for `i != j`, and largest `| |e_i|^2 - 1 |`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.coords.iter().enumerate() {
            worst = worst.max((dot(a, a) - 1.0).abs());
            for b in &self.coords[i + 1..] {
                worst = worst.max(dot(a, b).abs());
            }
        }
        worst
    }

    /// Largest relative residual of `[e_i, e_j]` against the span over all pairs.
    /// Brackets are evaluated on dense matrices, so this is meant for modest `n`.
    pub fn closure_defect(&self) -> f64 {
        let dense: Vec<_> = self.elements.iter().map(Operator::to_dense).collect();
        let pairs: Vec<(usize, usize)> = (0..self.dim())
            .flat_map(|i| (i + 1..self.dim()).map(move |j| (i, j)))
            .collect();
        let defect = |&(i, j): &(usize, usize)| {
            let m = &dense[i] * &dense[j] - &dense[j] * &dense[i];
            let op = Operator::from_dense(self.register, &m).expect("same register");
            self.relative_residual(&op).expect("same register")
        };
        #[cfg(feature = "parallel")]
        let it = pairs.par_iter().map(defect);
        #[cfg(not(feature = "parallel"))]
        let it = pairs.iter().map(defect);
        it.reduce_max()
    }

    pub fn is_closed(&self) -> bool {
        self.closure_defect() < MEMBERSHIP_TOL
    }
}

trait ReduceMax {
    fn reduce_max(self) -> f64;
}

#[cfg(feature = "parallel")]
impl<I: ParallelIterator<Item = f64>> ReduceMax for I {
    fn reduce_max(self) -> f64 {
        self.reduce(|| 0.0, f64::max)
    }
}

#[cfg(not(feature = "parallel"))]
impl<I: Iterator<Item = f64>> ReduceMax for I {
    fn reduce_max(self) -> f64 {
        self.fold(0.0, f64::max)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Real Lie algebra generated by skew-Hermitian `generators`.
///
/// The span is grown by applying `ad_g` for every generator `g` to every new
/// element until nothing independent appears. Right-nested brackets of
/// generators span the generated algebra, so the fixed point is bracket-closed.
/// Within a round brackets are computed in parallel and inserted in
/// (element, generator) index order, so the output does not depend on
/// scheduling.
pub fn closure(generators: &[Operator], max_dim: usize) -> Result<LieBasis> {
    let register = match generators.first() {
        Some(g) => g.register(),
        None => return Err(Error::EmptyOperator("no generators".into())),
    };
    let mut basis = LieBasis::empty(register);
    for (index, g) in generators.iter().enumerate() {
        basis.validate(g, index)?;
    }
    let mut frontier = Vec::new();
    for (index, g) in generators.iter().enumerate() {
        if basis.try_insert(g, 0) {
            if basis.dim() > max_dim {
                return Err(Error::DimensionOverflow {
                    max_dim,
                    generator: index,
                    element: index,
                });
            }
            frontier.push(basis.dim() - 1);
        }
    }

    while !frontier.is_empty() {
        let jobs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&e| (0..generators.len()).map(move |g| (e, g)))
            .collect();
        let bracket = |&(e, g): &(usize, usize)| {
            generators[g]
                .commutator(&basis.elements[e])
                .expect("registers checked above")
        };
        #[cfg(feature = "parallel")]
        let brackets: Vec<Operator> = jobs.par_iter().map(bracket).collect();
        #[cfg(not(feature = "parallel"))]
        let brackets: Vec<Operator> = jobs.iter().map(bracket).collect();

        let mut next = Vec::new();
        for ((e, g), b) in jobs.into_iter().zip(brackets) {
            if basis.try_insert(&b, basis.depths[e] + 1) {
                if basis.dim() > max_dim {
                    return Err(Error::DimensionOverflow {
                        max_dim,
                        generator: g,
                        element: e,
                    });
                }
                next.push(basis.dim() - 1);
            }
        }
        frontier = next;
    }
    Ok(basis)
}

/// Default growth cap: `4^n`.
pub fn default_max_dim(register: RegisterSpec) -> usize {
    1usize << (2 * register.n())
}

/// Equal dimensions and mutual containment.
pub fn span_equal(a: &LieBasis, b: &LieBasis) -> bool {
    a.register() == b.register()
        && a.dim() == b.dim()
        && a.elements().iter().all(|e| b.contains(e))
        && b.elements().iter().all(|e| a.contains(e))
}

/// Whether every element is invariant under `S_{n_c} x S_{n_p}`, tested on
/// adjacent transpositions of each region (they generate the group).
pub fn commutes_with_group(basis: &LieBasis) -> bool {
    let reg = basis.register();
    group_generators(reg).iter().all(|(pc, pp)| {
        basis.elements().iter().all(|e| {
            let moved = e.permute(pc, pp).expect("permutation sized to register");
            (&moved - e).norm() <= MEMBERSHIP_TOL * e.norm().max(1.0)
        })
    })
}

/// Adjacent transpositions of C (with P fixed) and of P (with C fixed).
pub fn group_generators(reg: RegisterSpec) -> Vec<(Vec<usize>, Vec<usize>)> {
    let id_c: Vec<usize> = (0..reg.n_c()).collect();
    let id_p: Vec<usize> = (0..reg.n_p()).collect();
    let mut out = Vec::new();
    for k in 0..reg.n_c().saturating_sub(1) {
        let mut p = id_c.clone();
        p.swap(k, k + 1);
        out.push((p, id_p.clone()));
    }
    for k in 0..reg.n_p().saturating_sub(1) {
        let mut p = id_p.clone();
        p.swap(k, k + 1);
        out.push((id_c.clone(), p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{build_i, build_s, Axis, Region};

    fn i_op(reg: RegisterSpec, word: &str) -> Operator {
        Operator::from_word(reg, word.parse().unwrap(), Complex64::new(0.0, 1.0))
    }

    #[test]
    fn su2_from_two_generators() {
        let reg = RegisterSpec::uniform(1).unwrap();
        let b = closure(&[i_op(reg, "X"), i_op(reg, "Y")], 16).unwrap();
        assert_eq!(b.dim(), 3);
        assert!(b.orthonormality_defect() < 1e-12);
        assert!(b.is_closed());
        assert_eq!(b.depth_histogram(), BTreeMap::from([(0, 2), (1, 1)]));
    }

    #[test]
    fn rejects_hermitian_generator() {
        let reg = RegisterSpec::uniform(1).unwrap();
        let h = Operator::from_word(reg, "X".parse().unwrap(), Complex64::new(1.0, 0.0));
        assert!(matches!(
            closure(&[i_op(reg, "Y"), h], 16),
            Err(Error::NotSkewHermitian { index: 1, .. })
        ));
    }

    #[test]
    fn overflow_is_reported() {
        let reg = RegisterSpec::uniform(2).unwrap();
        let err = closure(&[i_op(reg, "XI"), i_op(reg, "YZ"), i_op(reg, "ZX")], 4).unwrap_err();
        assert!(matches!(err, Error::DimensionOverflow { max_dim: 4, .. }));
    }

    #[test]
    fn zero_and_dependent_generators_are_dropped() {
        let reg = RegisterSpec::uniform(1).unwrap();
        let x = i_op(reg, "X");
        let b = LieBasis::span_of(reg, [&x, &(&x * 2.0), &Operator::zero(reg)]).unwrap();
        assert_eq!(b.dim(), 1);
        assert!(b.contains(&Operator::zero(reg)));
        assert!(!b.contains(&i_op(reg, "Y")));
    }

    #[test]
    fn membership_ignores_scale() {
        let reg = RegisterSpec::uniform(2).unwrap();
        let b = LieBasis::span_of(reg, [&i_op(reg, "XX"), &i_op(reg, "ZI")]).unwrap();
        let combo = &(&i_op(reg, "XX") * 1e-6) + &(&i_op(reg, "ZI") * 3e4);
        assert!(b.contains(&combo));
        // a Hermitian operator is never in a span of skew-Hermitian ones
        let h = Operator::from_word(reg, "XX".parse().unwrap(), Complex64::new(1.0, 0.0));
        assert!(!b.contains(&h));
    }

    #[test]
    fn group_commutation() {
        let reg = RegisterSpec::new(1, 2).unwrap();
        let sym = build_s(Axis::X, Region::P, reg).unwrap().times_i();
        let b = LieBasis::span_of(reg, [&sym]).unwrap();
        assert!(commutes_with_group(&b));
        let single = i_op(reg, "IZI");
        let b = LieBasis::span_of(reg, [&single]).unwrap();
        assert!(!commutes_with_group(&b));
    }

    #[test]
    fn ghz_generators_two_qubits() {
        let reg = RegisterSpec::uniform(2).unwrap();
        let mut gens = vec![build_i(&[Axis::Z, Axis::Z], Region::All, reg).unwrap().times_i()];
        for a in Axis::ALL {
            gens.push(build_s(a, Region::All, reg).unwrap().times_i());
        }
        let b = closure(&gens, 16).unwrap();
        assert_eq!(b.dim(), 9);
        assert!(b.is_closed());
        assert!(commutes_with_group(&b));
    }
}
