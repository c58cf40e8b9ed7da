//! The central-spin model: drift and control generators, the invariant
//! algebras `L` and `L^G` on a symmetric block of spins, and the explicit spans
//! predicted for the model's dynamical Lie algebra.
//!
//! Tensor products are always formed C-side first. Operator spans are
//! orthogonalized as given and never closed under brackets here, so comparing
//! them with a computed closure is a real test of closedness.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lie::{closure, default_max_dim, LieBasis};
use crate::pauli::{
    build_i, build_j, build_s, collective_spins, quadratic_basis, quadratic_traceless_basis, Axis, Operator,
    PauliWord, Region, RegisterSpec, HARD_MAX_QUBITS,
};

/// Register split and gyromagnetic factors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub register: RegisterSpec,
    pub gamma_c: f64,
    pub gamma_p: f64,
}

impl ModelParams {
    pub fn new(register: RegisterSpec, gamma_c: f64, gamma_p: f64) -> Result<Self> {
        if register.is_uniform() {
            return Err(Error::InvalidRegister("the model needs both a C and a P region".into()));
        }
        for g in [gamma_c, gamma_p] {
            if !g.is_finite() || g == 0.0 {
                return Err(Error::InvalidRegister(format!("gyromagnetic factor {g} must be finite and nonzero")));
            }
        }
        Ok(Self { register, gamma_c, gamma_p })
    }

    /// Defaults `γ_C = 1`, `γ_P = 2`.
    pub fn with_default_gammas(register: RegisterSpec) -> Result<Self> {
        Self::new(register, 1.0, 2.0)
    }

    /// Equal magnitudes: the collective spins of C and P can no longer be
    /// separated by brackets, and the structure results do not apply.
    pub fn outside_assumption(&self) -> bool {
        (self.gamma_c.abs() - self.gamma_p.abs()).abs() <= 1e-12 * self.gamma_c.abs().max(self.gamma_p.abs())
    }

    pub fn n_c(&self) -> usize {
        self.register.n_c()
    }

    pub fn n_p(&self) -> usize {
        self.register.n_p()
    }
}

/// `M(n) = binomial(n + 3, 3)`, the dimension of `L^G` on `n` spins.
pub fn invariant_algebra_dim(n: usize) -> usize {
    (n + 1) * (n + 2) * (n + 3) / 6
}

/// Drift `i S_z^C S_z^P` and the two controls `i(γ_C S_a^C + γ_P S_a^P)`, `a = x, y`.
pub fn model_generators(p: &ModelParams) -> Result<Vec<Operator>> {
    let reg = p.register;
    let drift = build_s(Axis::Z, Region::C, reg)?
        .multiply(&build_s(Axis::Z, Region::P, reg)?)?
        .times_i();
    let control = |axis| -> Result<Operator> {
        let c = &build_s(axis, Region::C, reg)? * p.gamma_c;
        let q = &build_s(axis, Region::P, reg)? * p.gamma_p;
        Ok((&c + &q).times_i())
    };
    Ok(vec![drift, control(Axis::X)?, control(Axis::Y)?])
}

fn uniform(n: usize) -> Result<RegisterSpec> {
    RegisterSpec::uniform_with_cap(n, HARD_MAX_QUBITS)
}

/// `L`: generated by `i S_{x,y,z}`, `i(I_xx - I_yy)`, `i(I_yy - I_zz)` on `n` spins.
/// Dimension `M(n) - 2` for `n ≥ 2`; `su(2)` for `n = 1`.
pub fn build_l_basis(n: usize) -> Result<LieBasis> {
    let reg = uniform(n)?;
    let mut gens: Vec<Operator> = collective_spins(Region::All, reg)?.iter().map(Operator::times_i).collect();
    if n >= 2 {
        let [.., a, b]: [Operator; 5] = quadratic_traceless_basis(Region::All, reg)?
            .try_into()
            .expect("five quadratic invariants");
        gens.push(a.times_i());
        gens.push(b.times_i());
    }
    closure(&gens, default_max_dim(reg))
}

/// `L^G`: all skew-Hermitian operators on `n` spins commuting with every
/// permutation, spanned by `i` times the orbit sums of Pauli words. Dimension `M(n)`.
pub fn build_lg_basis(n: usize) -> Result<LieBasis> {
    let reg = uniform(n)?;
    LieBasis::span_of(reg, &symmetric_orbit_sums(n)?)
}

/// `i Σ_{w ∈ orbit}` w for every `S_n` orbit of Pauli words, one per multiset of letters.
pub fn symmetric_orbit_sums(n: usize) -> Result<Vec<Operator>> {
    let reg = uniform(n)?;
    let mut orbits: BTreeMap<[usize; 4], Vec<PauliWord>> = BTreeMap::new();
    for k in 0..1usize << (2 * n) {
        let w = PauliWord::from_index(n, k);
        let mut counts = [0; 4];
        for l in w.letters() {
            counts[l as usize] += 1;
        }
        orbits.entry(counts).or_default().push(w);
    }
    orbits
        .into_values()
        .map(|words| Operator::from_terms(reg, words.into_iter().map(|w| (w, I))))
        .collect()
}

/// Closure of `i I_zz, i S_{x,y,z}` without the identity direction.
pub fn build_ghz_closure(n: usize) -> Result<LieBasis> {
    let reg = uniform(n)?;
    let mut gens = vec![];
    if n >= 2 {
        gens.push(build_i(&[Axis::Z, Axis::Z], Region::All, reg)?.times_i());
    }
    gens.extend(collective_spins(Region::All, reg)?.iter().map(Operator::times_i));
    closure(&gens, default_max_dim(reg))
}

fn kron_all(left: &[Operator], right: &[Operator], factor: Complex64) -> Result<Vec<Operator>> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for a in left {
        for b in right {
            out.push(Operator::kron(a, b)?.scale(factor));
        }
    }
    Ok(out)
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `1 + κ J` on `n` spins.
fn dressed_identity(n: usize, kappa: f64) -> Result<Operator> {
    let reg = uniform(n)?;
    Ok(&Operator::identity(reg) + &(&build_j(Region::All, reg)? * kappa))
}

fn pauli_singles(n: usize) -> Result<Vec<Operator>> {
    collective_spins(Region::All, uniform(n)?)
}

/// Invariant algebras for one side of the register.
struct Side {
    l: LieBasis,
    lg: LieBasis,
}

impl Side {
    fn new(n: usize) -> Result<Self> {
        Ok(Self {
            l: build_l_basis(n)?,
            lg: build_lg_basis(n)?,
        })
    }
}

/// The super-algebra `i(L ⊗ L^G) + i(L^G ⊗ L)`: the orthogonal complement of
/// `span{i 1⊗1, i 1⊗J, i J⊗1, i J⊗J}` inside `i L^G ⊗ L^G`.
pub fn build_hat_l(p: &ModelParams) -> Result<LieBasis> {
    let c = Side::new(p.n_c())?;
    let q = Side::new(p.n_p())?;
    let mut ops = kron_all(c.l.elements(), q.lg.elements(), I)?;
    ops.extend(kron_all(c.lg.elements(), q.l.elements(), I)?);
    LieBasis::span_of(p.register, &ops)
}

/// Explicit span predicted for the model's dynamical Lie algebra.
///
/// * `n_c = 1, n_p = 1`: all of `su(4)`.
/// * `n_c = 1, n_p ≥ 2`: `σ_{x,y,z} ⊗ L^G + 1 ⊗ L`.
/// * `n_c = 2, n_p = 2`: `i L⊗L + (1 + J/3)⊗L + L⊗(1 + J/3) + A^C + A^P`.
/// * `n_c = 2, n_p > 2`: `i L⊗L^G + (1 + J/3)⊗L + 1⊗S`.
pub fn build_predicted_dla(p: &ModelParams) -> Result<LieBasis> {
    let (n_c, n_p) = (p.n_c(), p.n_p());
    let ops = match (n_c, n_p) {
        (1, 1) => {
            let reg = p.register;
            (1..16)
                .map(|k| Operator::from_word(reg, PauliWord::from_index(2, k), I))
                .collect()
        }
        (1, _) => {
            let q = Side::new(n_p)?;
            let mut ops = kron_all(&pauli_singles(1)?, q.lg.elements(), ONE)?;
            ops.extend(kron_all(&[Operator::identity(uniform(1)?)], q.l.elements(), ONE)?);
            ops
        }
        (2, 2) => {
            let c = Side::new(2)?;
            let l = c.l.elements();
            let dressed = dressed_identity(2, 1.0 / 3.0)?;
            let mut ops = kron_all(l, l, I)?;
            ops.extend(kron_all(std::slice::from_ref(&dressed), l, ONE)?);
            ops.extend(kron_all(l, &[dressed], ONE)?);
            ops.extend(a_spaces(p.register)?);
            ops
        }
        (2, _) if n_p > 2 => {
            let c = Side::new(2)?;
            let q = Side::new(n_p)?;
            let mut ops = kron_all(c.l.elements(), q.lg.elements(), I)?;
            ops.extend(kron_all(&[dressed_identity(2, 1.0 / 3.0)?], q.l.elements(), ONE)?);
            ops.extend(collective_spins(Region::P, p.register)?.iter().map(Operator::times_i));
            ops
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "predicted algebra needs n_c in {{1, 2}} and n_p >= n_c, got n_c = {n_c}, n_p = {n_p}"
            )))
        }
    };
    LieBasis::span_of(p.register, &ops)
}

fn a_spaces(reg: RegisterSpec) -> Result<Vec<Operator>> {
    let mut ops: Vec<Operator> = collective_spins(Region::C, reg)?.iter().map(Operator::times_i).collect();
    ops.extend(collective_spins(Region::P, reg)?.iter().map(Operator::times_i));
    Ok(ops)
}

/// Named subspaces shown to lie inside the dynamical Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    /// `i S^C ⊗ 1`
    CentralSpins,
    /// `i 1 ⊗ S^P`
    PeripheralSpins,
    /// `i S^C_a ⊗ S^P_b`
    SpinSpin,
    /// `i S^C ⊗ I^P_{ab}`
    SpinQuadratic,
    /// `i I^C_{ab} ⊗ S^P`
    QuadraticSpin,
    /// `1 ⊗ i I_0^P` (one central spin)
    PeripheralQuadratic,
    /// `i I_0^C ⊗ I_0^P` (two central spins)
    QuadraticQuadratic,
    /// `(1 + J/3) ⊗ i I_0^P` (two central spins)
    DressedQuadratic,
    /// `S^C ⊗ L^G`
    SpinInvariant,
    /// `(I_xx - I_zz) ⊗ L` and `(I_yy - I_zz) ⊗ L`
    AnisotropyL,
    /// `(1 + J/3) ⊗ L`
    DressedL,
    /// `i L ⊗ L`
    LL,
    /// `L ⊗ (1 + 2J/(3 n_p))`
    LDressed,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Space::CentralSpins => "iS^C(x)1",
            Space::PeripheralSpins => "1(x)iS^P",
            Space::SpinSpin => "iS^C(x)S^P",
            Space::SpinQuadratic => "iS^C(x)I^P",
            Space::QuadraticSpin => "iI^C(x)S^P",
            Space::PeripheralQuadratic => "1(x)iI0^P",
            Space::QuadraticQuadratic => "iI0^C(x)I0^P",
            Space::DressedQuadratic => "(1+J/3)(x)iI0^P",
            Space::SpinInvariant => "S^C(x)L^G",
            Space::AnisotropyL => "(I_aa-I_zz)(x)L",
            Space::DressedL => "(1+J/3)(x)L",
            Space::LL => "iL(x)L",
            Space::LDressed => "L(x)(1+2J/(3n_p))",
        };
        f.write_str(s)
    }
}

/// Every structural space for the register, as explicit operator lists. Spaces
/// that vanish for the given sizes are returned empty.
pub fn build_structural_spaces(p: &ModelParams) -> Result<Vec<(Space, Vec<Operator>)>> {
    let reg = p.register;
    let (n_c, n_p) = (p.n_c(), p.n_p());
    if !(1..=2).contains(&n_c) {
        return Err(Error::Unsupported(format!("structural spaces need n_c in {{1, 2}}, got {n_c}")));
    }
    let sc = collective_spins(Region::C, reg)?;
    let sp = collective_spins(Region::P, reg)?;
    let products = |left: &[Operator], right: &[Operator]| -> Result<Vec<Operator>> {
        let mut out = Vec::new();
        for a in left {
            for b in right {
                out.push(a.multiply(b)?.times_i());
            }
        }
        Ok(out)
    };
    let quad_p = if n_p >= 2 { quadratic_basis(Region::P, reg)? } else { vec![] };
    let quad_c = if n_c >= 2 { quadratic_basis(Region::C, reg)? } else { vec![] };

    let mut spaces = vec![
        (Space::CentralSpins, sc.iter().map(Operator::times_i).collect()),
        (Space::PeripheralSpins, sp.iter().map(Operator::times_i).collect()),
        (Space::SpinSpin, products(&sc, &sp)?),
        (Space::SpinQuadratic, products(&sc, &quad_p)?),
        (Space::QuadraticSpin, products(&quad_c, &sp)?),
    ];
    let i0_p = if n_p >= 2 { quadratic_traceless_basis(Region::P, reg)? } else { vec![] };
    if n_c == 1 {
        spaces.push((Space::PeripheralQuadratic, i0_p.iter().map(Operator::times_i).collect()));
        return Ok(spaces);
    }

    let i0_c = quadratic_traceless_basis(Region::C, reg)?;
    let dressed_c = {
        let j = build_j(Region::C, reg)?;
        &Operator::identity(reg) + &(&j * (1.0 / 3.0))
    };
    spaces.push((Space::QuadraticQuadratic, products(&i0_c, &i0_p)?));
    spaces.push((Space::DressedQuadratic, products(&[dressed_c], &i0_p)?));

    let c = Side::new(n_c)?;
    let q = Side::new(n_p)?;
    let singles = pauli_singles(n_c)?;
    spaces.push((Space::SpinInvariant, kron_all(&collective_spins(Region::All, uniform(n_c)?)?, q.lg.elements(), ONE)?));
    let creg = uniform(n_c)?;
    let izz = build_i(&[Axis::Z, Axis::Z], Region::All, creg)?;
    let anis = [
        &build_i(&[Axis::X, Axis::X], Region::All, creg)? - &izz,
        &build_i(&[Axis::Y, Axis::Y], Region::All, creg)? - &izz,
    ];
    spaces.push((Space::AnisotropyL, kron_all(&anis, q.l.elements(), ONE)?));
    spaces.push((Space::DressedL, kron_all(&[dressed_identity(n_c, 1.0 / 3.0)?], q.l.elements(), ONE)?));
    spaces.push((Space::LL, kron_all(c.l.elements(), q.l.elements(), I)?));
    let kappa = 2.0 / (3.0 * n_p as f64);
    spaces.push((Space::LDressed, kron_all(c.l.elements(), &[dressed_identity(n_p, kappa)?], ONE)?));
    debug_assert_eq!(singles.len(), 3);
    Ok(spaces)
}

/// `O_1 = (1 - J) ⊗ i I_0` and `O_2 = i I_0 ⊗ (1 - J)` for `n_c = n_p = 2`.
pub fn complement_spaces_2x2() -> Result<(Vec<Operator>, Vec<Operator>)> {
    let r2 = uniform(2)?;
    let one_minus_j = &Operator::identity(r2) - &build_j(Region::All, r2)?;
    let i0: Vec<Operator> = quadratic_traceless_basis(Region::All, r2)?
        .iter()
        .map(Operator::times_i)
        .collect();
    Ok((
        kron_all(std::slice::from_ref(&one_minus_j), &i0, ONE)?,
        kron_all(&i0, &[one_minus_j], ONE)?,
    ))
}

/// `(1 - J) ⊗ C` for `n_c = 2`, where `C` runs over an orthonormal basis of the
/// part of `L` on the P side orthogonal to `i S`.
pub fn complement_witness(n_p: usize) -> Result<Vec<Operator>> {
    let r2 = uniform(2)?;
    let one_minus_j = &Operator::identity(r2) - &build_j(Region::All, r2)?;
    let l = build_l_basis(n_p)?;
    let spins: Vec<Operator> = pauli_singles(n_p)?.iter().map(Operator::times_i).collect();
    let mut s_span = LieBasis::span_of(l.register(), &spins)?;
    let mut complement = Vec::new();
    for e in l.elements() {
        let before = s_span.dim();
        if s_span.extend_with(e)? {
            debug_assert_eq!(s_span.dim(), before + 1);
            complement.push(s_span.elements()[before].clone());
        }
    }
    kron_all(&[one_minus_j], &complement, ONE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::commutes_with_group;

    fn params(n_c: usize, n_p: usize) -> ModelParams {
        ModelParams::with_default_gammas(RegisterSpec::new(n_c, n_p).unwrap()).unwrap()
    }

    #[test]
    fn binomial_dimension() {
        assert_eq!(invariant_algebra_dim(1), 4);
        assert_eq!(invariant_algebra_dim(2), 10);
        assert_eq!(invariant_algebra_dim(3), 20);
        assert_eq!(invariant_algebra_dim(4), 35);
    }

    #[test]
    fn generator_words() {
        let g = model_generators(&params(1, 1)).unwrap();
        assert_eq!(g[0].len(), 1);
        assert_eq!(g[0].coefficient(&"ZZ".parse().unwrap()), I);
        assert_eq!(g[1].coefficient(&"XI".parse().unwrap()), Complex64::new(0.0, 1.0));
        assert_eq!(g[1].coefficient(&"IX".parse().unwrap()), Complex64::new(0.0, 2.0));
        let g = model_generators(&params(1, 2)).unwrap();
        let words: Vec<String> = g[0].terms().keys().map(|w| w.to_string()).collect();
        assert_eq!(words, ["ZIZ", "ZZI"]);
        for op in &g {
            assert!(op.is_skew_hermitian(0.0));
        }
    }

    #[test]
    fn generators_are_permutation_invariant() {
        let p = params(2, 3);
        for g in model_generators(&p).unwrap() {
            for perm_c in [[1, 0]] {
                for perm_p in [[1, 0, 2], [0, 2, 1], [2, 0, 1]] {
                    assert_eq!(g.permute(&perm_c, &perm_p).unwrap(), g);
                }
            }
        }
    }

    #[test]
    fn parameter_validation() {
        let reg = RegisterSpec::new(1, 2).unwrap();
        assert!(ModelParams::new(reg, 0.0, 1.0).is_err());
        assert!(ModelParams::new(reg, f64::NAN, 1.0).is_err());
        assert!(ModelParams::new(RegisterSpec::uniform(3).unwrap(), 1.0, 2.0).is_err());
        assert!(ModelParams::new(reg, 1.0, -1.0).unwrap().outside_assumption());
        assert!(!ModelParams::new(reg, 1.0, 2.0).unwrap().outside_assumption());
    }

    #[test]
    fn invariant_algebra_dimensions() {
        assert_eq!(build_l_basis(1).unwrap().dim(), 3);
        assert_eq!(build_l_basis(2).unwrap().dim(), 8);
        assert_eq!(build_l_basis(3).unwrap().dim(), 18);
        assert_eq!(build_lg_basis(1).unwrap().dim(), 4);
        for n in 2..=4 {
            let lg = build_lg_basis(n).unwrap();
            assert_eq!(lg.dim(), invariant_algebra_dim(n));
            assert!(commutes_with_group(&lg));
        }
    }

    // Blocks of the symmetric commutant have sizes n - 2k + 1. Brackets are
    // traceless on each block, and only i I_zz carries block traces, so the
    // generated algebra is the direct sum of the su parts plus one direction.
    fn block_sizes(n: usize) -> Vec<usize> {
        (0..=n / 2).map(|k| n - 2 * k + 1).collect()
    }

    #[test]
    fn generated_algebras_match_block_bound() {
        for n in 2..=5 {
            let su: usize = block_sizes(n).iter().map(|d| d * d - 1).sum();
            assert_eq!(build_ghz_closure(n).unwrap().dim(), su + 1, "n = {n}");
            assert_eq!(build_l_basis(n).unwrap().dim(), su, "n = {n}");
            let total: usize = block_sizes(n).iter().map(|d| d * d).sum();
            assert_eq!(total, invariant_algebra_dim(n));
        }
    }

    #[test]
    fn ghz_closure_fills_invariants_for_small_n() {
        for n in 2..=3 {
            let mut g = build_ghz_closure(n).unwrap();
            g.extend_with(&Operator::identity(uniform(n).unwrap()).times_i()).unwrap();
            assert!(crate::lie::span_equal(&g, &build_lg_basis(n).unwrap()));
        }
    }

    #[test]
    fn structural_space_dimensions() {
        let dims = |p: &ModelParams| -> Vec<(Space, usize)> {
            build_structural_spaces(p)
                .unwrap()
                .into_iter()
                .map(|(s, ops)| (s, LieBasis::span_of(p.register, &ops).unwrap().dim()))
                .collect()
        };
        let d = dims(&params(1, 1));
        assert!(d.contains(&(Space::SpinSpin, 9)));
        assert!(d.contains(&(Space::SpinQuadratic, 0)));
        assert!(d.contains(&(Space::QuadraticSpin, 0)));
        let d = dims(&params(1, 3));
        assert!(d.contains(&(Space::SpinQuadratic, 18)));
        assert!(d.contains(&(Space::PeripheralQuadratic, 5)));
        let d = dims(&params(2, 2));
        assert!(d.contains(&(Space::SpinSpin, 9)));
        assert!(d.contains(&(Space::SpinQuadratic, 18)));
        assert!(d.contains(&(Space::QuadraticSpin, 18)));
        assert!(d.contains(&(Space::QuadraticQuadratic, 25)));
        assert!(d.contains(&(Space::DressedQuadratic, 5)));
        assert!(build_structural_spaces(&params(3, 3)).is_err());
    }

    #[test]
    fn predicted_dimensions() {
        assert_eq!(build_predicted_dla(&params(1, 1)).unwrap().dim(), 15);
        assert_eq!(build_predicted_dla(&params(1, 2)).unwrap().dim(), 38);
        assert_eq!(build_predicted_dla(&params(2, 2)).unwrap().dim(), 86);
        assert!(build_predicted_dla(&params(3, 3)).is_err());
    }
}
