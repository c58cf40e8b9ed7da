//! Symmetric group acting on qubit registers by permuting tensor factors.
//!
//! Provides partitions, standard Young tableaux, hook lengths, the dimension of
//! the qubit multiplicity space for each shape, irreducible characters, and
//! orthogonal Hermitian projectors (generalized Young symmetrizers) whose
//! images are the irreducible invariant subspaces.
//!
//! Projectors are built in two stages. The character projector
//! `P_λ = (d_λ / n!) Σ_σ χ_λ(σ) U(σ)` cuts out the isotypic component of shape
//! `λ`. On that component the group algebra acts as `End(V_λ) ⊗ 1`, so a
//! generic Hermitian group-algebra element `Σ_σ c_σ (U(σ) + U(σ⁻¹))` has exactly
//! `d_λ` eigenvalue clusters, each of multiplicity `dim W_λ`. Their eigenspaces
//! are the invariant subspaces; orthogonality and hermiticity follow from the
//! eigendecomposition.

use std::collections::HashMap;
use std::fmt;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Group iteration is exhaustive; `8! = 40320` elements acting on 256 states.
pub const MAX_GROUP_QUBITS: usize = 8;

/// Relative gap separating eigenvalue clusters.
pub const CLUSTER_TOL: f64 = 1e-6;

/// Extra seeds tried when clusters are not separated.
pub const MAX_RETRIES: usize = 5;

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.is_empty() || rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidRegister(format!("{rows:?} is not a partition")));
        }
        Ok(Self(rows))
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of column `k` (0-based).
    fn column_len(&self, k: usize) -> usize {
        self.0.iter().take_while(|&&r| r > k).count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// All partitions of `n` in reverse lexicographic order: `(3), (2,1), (1,1,1)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Entries `1..=n`, row by row.
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// Every standard filling of `shape`, generated by placing `1..=n` in order
/// and trying rows from the top.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    fn rec(shape: &[usize], next: usize, n: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if next > n {
            out.push(rows.clone());
            return;
        }
        for r in 0..shape.len() {
            let len = rows[r].len();
            let fits = len < shape[r] && (r == 0 || rows[r - 1].len() > len);
            if fits {
                rows[r].push(next);
                rec(shape, next + 1, n, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); shape.len()];
    rec(shape.rows(), 1, shape.size(), &mut rows, &mut out);
    out.into_iter()
        .map(|rows| StandardTableau { shape: shape.clone(), rows })
        .collect()
}

/// Product over boxes of `arm + leg + 1`.
pub fn hook_length(shape: &Partition) -> u128 {
    let mut h: u128 = 1;
    for (i, &len) in shape.rows().iter().enumerate() {
        for j in 0..len {
            let arm = len - j - 1;
            let leg = shape.column_len(j) - i - 1;
            h *= (arm + leg + 1) as u128;
        }
    }
    h
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Number of standard tableaux, `n! / hook`.
pub fn num_standard_tableaux(shape: &Partition) -> usize {
    (factorial(shape.size()) / hook_length(shape)) as usize
}

/// Dimension of the image of a symmetrizer of this shape on qubits:
/// `Π_{boxes (l,k)} (2 - l + k) / hook`, zero for more than two rows.
pub fn subspace_dim(shape: &Partition) -> usize {
    let mut num: u128 = 1;
    for (l, &len) in shape.rows().iter().enumerate() {
        for k in 0..len {
            // 1-based row l+1 and column k+1: 2 - (l+1) + (k+1)
            let factor = 2 + k as i64 - l as i64;
            if factor <= 0 {
                return 0;
            }
            num *= factor as u128;
        }
    }
    (num / hook_length(shape)) as usize
}

/// Permutation of `0..n` stored by images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &p in &images {
            if p >= images.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidRegister(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a, b);
        p
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (k, &p) in self.0.iter().enumerate() {
            inv[p] = k;
        }
        Self(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Self(other.0.iter().map(|&k| self.0[k]).collect())
    }

    pub fn cycle_type(&self) -> Partition {
        let mut seen = vec![false; self.0.len()];
        let mut cycles = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.0[k];
                len += 1;
            }
            cycles.push(len);
        }
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        Partition(cycles)
    }
}

/// All `n!` permutations in lexicographic order of images.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation(cur.clone())];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation(cur.clone()));
    }
}

/// Basis-state map of `U(σ)`: the bit on site `k` moves to site `σ(k)`.
/// Site 0 is the most significant bit.
pub fn perm_action(perm: &Permutation) -> Vec<usize> {
    let n = perm.len();
    (0..1usize << n)
        .map(|b| {
            let mut out = 0;
            for (k, &target) in perm.images().iter().enumerate() {
                if b >> (n - 1 - k) & 1 == 1 {
                    out |= 1 << (n - 1 - target);
                }
            }
            out
        })
        .collect()
}

/// Dense `2^n x 2^n` permutation matrix of `σ` acting on tensor factors.
pub fn perm_unitary(perm: &Permutation) -> DMatrix<f64> {
    let action = perm_action(perm);
    let dim = action.len();
    let mut u = DMatrix::zeros(dim, dim);
    for (b, &img) in action.iter().enumerate() {
        u[(img, b)] = 1.0;
    }
    u
}

/// Irreducible character `χ_λ(μ)` by the Murnaghan-Nakayama rule on beta-sets.
pub fn character(shape: &Partition, cycle_type: &Partition) -> i64 {
    assert_eq!(shape.size(), cycle_type.size(), "character arguments must have equal size");
    let d = shape.len();
    let mut beads: Vec<usize> = shape.rows().iter().enumerate().map(|(i, &r)| r + d - 1 - i).collect();
    beads.sort_unstable();
    mn(&mut beads, cycle_type.rows())
}

fn mn(beads: &mut [usize], parts: &[usize]) -> i64 {
    let Some((&r, rest)) = parts.split_first() else {
        return 1;
    };
    let mut total = 0;
    for idx in 0..beads.len() {
        let b = beads[idx];
        if b < r || beads.contains(&(b - r)) {
            continue;
        }
        let between = beads.iter().filter(|&&x| x > b - r && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        beads[idx] = b - r;
        let mut sorted = beads.to_vec();
        sorted.sort_unstable();
        total += sign * mn(&mut sorted, rest);
        beads[idx] = b;
    }
    total
}

/// Identifies a projector factor: its shape and index within that shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GysLabel {
    pub shape: Partition,
    pub index: usize,
}

/// Real symmetric idempotent on the register. Products built by [`tensor_gys`]
/// carry one label per factor.
#[derive(Clone, Debug)]
pub struct GysProjector {
    pub matrix: DMatrix<f64>,
    pub labels: Vec<GysLabel>,
    pub rank: usize,
}

impl GysProjector {
    pub fn shape(&self) -> &Partition {
        &self.labels[0].shape
    }

    pub fn label(&self) -> usize {
        self.labels[0].index
    }

    /// Orthonormal columns spanning the image (eigenvectors with eigenvalue ≈ 1).
    pub fn image_basis(&self) -> DMatrix<f64> {
        eigen_columns(&self.matrix, |v| v > 0.5)
    }
}

fn eigen_columns(m: &DMatrix<f64>, keep: impl Fn(f64) -> bool) -> DMatrix<f64> {
    let eig = m.clone().symmetric_eigen();
    let cols: Vec<_> = (0..eig.eigenvalues.len())
        .filter(|&k| keep(eig.eigenvalues[k]))
        .map(|k| eig.eigenvectors.column(k).into_owned())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(m.nrows(), 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Kronecker product of a C-register and a P-register projector.
pub fn tensor_gys(c: &GysProjector, p: &GysProjector) -> GysProjector {
    GysProjector {
        matrix: c.matrix.kronecker(&p.matrix),
        labels: c.labels.iter().chain(&p.labels).cloned().collect(),
        rank: c.rank * p.rank,
    }
}

/// Seeded generic Hermitian element `Σ_σ c_σ (U(σ) + U(σ⁻¹))`.
fn generic_group_element(actions: &[Vec<usize>], seed: u64) -> DMatrix<f64> {
    let dim = actions[0].len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = DMatrix::zeros(dim, dim);
    for act in actions {
        let c: f64 = rng.gen_range(-1.0..1.0);
        for (b, &img) in act.iter().enumerate() {
            a[(img, b)] += c;
            a[(b, img)] += c;
        }
    }
    a
}

/// Splits sorted eigenvalues into clusters; `None` unless there are exactly
/// `count` clusters of size `size`.
fn clusters(values: &[(f64, usize)], count: usize, size: usize) -> Option<Vec<Vec<usize>>> {
    let scale = values.iter().map(|v| v.0.abs()).fold(1e-300, f64::max);
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &(v, k) in values {
        if v - last > CLUSTER_TOL * scale {
            out.push(Vec::new());
        }
        out.last_mut().expect("cluster opened").push(k);
        last = v;
    }
    (out.len() == count && out.iter().all(|c| c.len() == size)).then_some(out)
}

/// Projectors for every shape with a nonzero image on `n` qubits: `d_λ`
/// projectors of rank `subspace_dim(λ)` per shape, shapes in the order of
/// [`partitions`], clusters in increasing eigenvalue order.
pub fn gys_projectors(n: usize, seed: u64) -> Result<Vec<GysProjector>> {
    if n == 0 || n > MAX_GROUP_QUBITS {
        return Err(Error::InvalidRegister(format!(
            "symmetrizers need 1..={MAX_GROUP_QUBITS} qubits, got {n}"
        )));
    }
    let perms = all_permutations(n);
    let actions: Vec<Vec<usize>> = perms.iter().map(perm_action).collect();
    let cycle_types: Vec<Partition> = perms.iter().map(Permutation::cycle_type).collect();
    let dim = 1usize << n;
    let order = factorial(n) as f64;

    let mut generic: HashMap<u64, DMatrix<f64>> = HashMap::new();
    let mut out = Vec::new();
    for shape in partitions(n) {
        let m = subspace_dim(&shape);
        if m == 0 {
            continue;
        }
        let d = num_standard_tableaux(&shape);
        let mut chars: HashMap<&Partition, i64> = HashMap::new();
        let mut p = DMatrix::<f64>::zeros(dim, dim);
        for (act, ct) in actions.iter().zip(&cycle_types) {
            let chi = *chars.entry(ct).or_insert_with(|| character(&shape, ct));
            if chi != 0 {
                for (b, &img) in act.iter().enumerate() {
                    p[(img, b)] += chi as f64;
                }
            }
        }
        p *= d as f64 / order;
        let q = eigen_columns(&p, |v| v > 0.5);
        debug_assert_eq!(q.ncols(), d * m);

        let mut built = None;
        for attempt in 0..=MAX_RETRIES as u64 {
            let s = seed.wrapping_add(attempt);
            let a = generic.entry(s).or_insert_with(|| generic_group_element(&actions, s));
            let restricted = q.transpose() * &*a * &q;
            let eig = restricted.symmetric_eigen();
            let mut values: Vec<(f64, usize)> =
                eig.eigenvalues.iter().copied().zip(0..).collect();
            values.sort_by(|x, y| x.0.total_cmp(&y.0));
            if let Some(groups) = clusters(&values, d, m) {
                built = Some(
                    groups
                        .iter()
                        .enumerate()
                        .map(|(index, group)| {
                            let cols: Vec<_> = group.iter().map(|&k| eig.eigenvectors.column(k).into_owned()).collect();
                            let v = &q * DMatrix::from_columns(&cols);
                            GysProjector {
                                matrix: &v * v.transpose(),
                                labels: vec![GysLabel { shape: shape.clone(), index }],
                                rank: m,
                            }
                        })
                        .collect::<Vec<_>>(),
                );
                break;
            }
        }
        match built {
            Some(ps) => out.extend(ps),
            None => {
                return Err(Error::EigenvalueClusters {
                    shape: shape.to_string(),
                    attempts: MAX_RETRIES + 1,
                })
            }
        }
    }
    Ok(out)
}

/// Basis-state actions of `S_{n_c} x S_{n_p}` on the joint register.
pub fn product_group_actions(n_c: usize, n_p: usize) -> Vec<Vec<usize>> {
    let ac: Vec<Vec<usize>> = all_permutations(n_c).iter().map(perm_action).collect();
    let ap: Vec<Vec<usize>> = all_permutations(n_p).iter().map(perm_action).collect();
    let mut out = Vec::with_capacity(ac.len() * ap.len());
    for c in &ac {
        for p in &ap {
            out.push(
                (0..1usize << (n_c + n_p))
                    .map(|b| (c[b >> n_p] << n_p) | p[b & ((1 << n_p) - 1)])
                    .collect(),
            );
        }
    }
    out
}

/// Basis-state actions of all of `S_n`.
pub fn group_actions(n: usize) -> Vec<Vec<usize>> {
    all_permutations(n).iter().map(perm_action).collect()
}

/// Worst residual of each defining property over a projector family.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct GysAxioms {
    pub completeness: f64,
    pub orthogonality: f64,
    pub idempotence: f64,
    pub hermiticity: f64,
    pub primitivity: f64,
}

impl GysAxioms {
    pub fn max(&self) -> f64 {
        [
            self.completeness,
            self.orthogonality,
            self.idempotence,
            self.hermiticity,
            self.primitivity,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `Π_j U(g) Π_j` restricted to the image of `Π_j`, for every group element.
fn compressions<'a>(basis: &'a DMatrix<f64>, actions: &'a [Vec<usize>]) -> impl Iterator<Item = DMatrix<f64>> + 'a {
    actions.iter().map(move |act| {
        let mut moved = DMatrix::zeros(basis.nrows(), basis.ncols());
        for (b, &img) in act.iter().enumerate() {
            moved.row_mut(img).copy_from(&basis.row(b));
        }
        basis.transpose() * moved
    })
}

/// Checks completeness, orthogonality (with idempotence), hermiticity, and
/// primitivity. Primitivity is measured per projector: the compression of
/// every group element to the image of `Π_j` must be a multiple of the identity.
pub fn gys_axiom_residuals(projs: &[GysProjector], actions: &[Vec<usize>]) -> GysAxioms {
    let dim = projs.first().map_or(0, |p| p.matrix.nrows());
    let mut ax = GysAxioms::default();
    let mut sum = DMatrix::<f64>::zeros(dim, dim);
    for (j, pj) in projs.iter().enumerate() {
        sum += &pj.matrix;
        ax.hermiticity = ax.hermiticity.max((&pj.matrix - pj.matrix.transpose()).norm());
        ax.idempotence = ax.idempotence.max((&pj.matrix * &pj.matrix - &pj.matrix).norm());
        for pk in &projs[j + 1..] {
            ax.orthogonality = ax.orthogonality.max((&pj.matrix * &pk.matrix).norm());
        }
        let basis = pj.image_basis();
        let m = basis.ncols();
        for comp in compressions(&basis, actions) {
            let lambda = comp.trace() / m as f64;
            let defect = comp - DMatrix::<f64>::identity(m, m) * lambda;
            ax.primitivity = ax.primitivity.max(defect.norm());
        }
    }
    ax.completeness = (sum - DMatrix::<f64>::identity(dim, dim)).norm();
    ax.orthogonality = ax.orthogonality.max(ax.idempotence);
    ax
}

/// The scalars `λ_{g,j}` with `Π_j U(g) Π_j = λ_{g,j} Π_j`, one row per projector.
pub fn primitivity_scalars(projs: &[GysProjector], actions: &[Vec<usize>]) -> Vec<Vec<f64>> {
    projs
        .iter()
        .map(|p| {
            let basis = p.image_basis();
            let m = basis.ncols() as f64;
            compressions(&basis, actions).map(|c| c.trace() / m).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(rows: &[usize]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    /// Independent count of partitions by dynamic programming over part sizes.
    fn partition_count(n: usize) -> usize {
        let mut ways = vec![0usize; n + 1];
        ways[0] = 1;
        for part in 1..=n {
            for total in part..=n {
                ways[total] += ways[total - part];
            }
        }
        ways[n]
    }

    /// Brute force: all fillings of the shape by a permutation of 1..n,
    /// keep those increasing along rows and columns.
    fn brute_force_tableaux(shape: &Partition) -> usize {
        let n = shape.size();
        all_permutations(n)
            .iter()
            .filter(|p| {
                let mut rows = Vec::new();
                let mut k = 0;
                for &len in shape.rows() {
                    rows.push(p.images()[k..k + len].to_vec());
                    k += len;
                }
                let rows_ok = rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
                let cols_ok = (1..rows.len()).all(|i| (0..rows[i].len()).all(|j| rows[i - 1][j] < rows[i][j]));
                rows_ok && cols_ok
            })
            .count()
    }

    #[test]
    fn partitions_in_reverse_lexicographic_order() {
        let p3: Vec<String> = partitions(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(p3, ["(3)", "(2,1)", "(1,1,1)"]);
        assert_eq!(partitions(1), vec![part(&[1])]);
        for n in 1..=8 {
            assert_eq!(partitions(n).len(), partition_count(n));
        }
        assert_eq!(partitions(5).len(), 7);
    }

    #[test]
    fn invalid_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_err());
    }

    #[test]
    fn tableaux_counts() {
        let t = standard_tableaux(&part(&[2, 1]));
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].rows(), &[vec![1, 2], vec![3]]);
        assert_eq!(t[1].rows(), &[vec![1, 3], vec![2]]);
        assert_eq!(standard_tableaux(&part(&[5])).len(), 1);
        assert_eq!(standard_tableaux(&part(&[2, 2])).len(), 2);
        for n in 1..=6 {
            for shape in partitions(n) {
                let enumerated = standard_tableaux(&shape).len();
                assert_eq!(enumerated, brute_force_tableaux(&shape), "{shape}");
                assert_eq!(enumerated, num_standard_tableaux(&shape), "{shape}");
            }
        }
    }

    #[test]
    fn subspace_dimensions() {
        assert_eq!(subspace_dim(&part(&[10])), 11);
        assert_eq!(subspace_dim(&part(&[7, 3])), 5);
        assert_eq!(subspace_dim(&part(&[1, 1, 1])), 0);
        assert_eq!(subspace_dim(&part(&[2, 1])), 2);
        assert_eq!(hook_length(&part(&[3])), 6);
        for n in 1..=12 {
            for k in 0..=n / 2 {
                let shape = if k == 0 { part(&[n]) } else { part(&[n - k, k]) };
                assert_eq!(subspace_dim(&shape), n - 2 * k + 1);
            }
        }
    }

    #[test]
    fn dimension_bookkeeping_fills_register() {
        for n in 1..=10 {
            let total: usize = partitions(n)
                .iter()
                .map(|s| num_standard_tableaux(s) * subspace_dim(s))
                .sum();
            assert_eq!(total, 1 << n);
        }
    }

    #[test]
    fn characters_match_trace_of_isotypic_dimension() {
        // χ(identity) = d_λ, and row orthogonality Σ_g χ_λ(g)^2 = n!
        for n in 1..=6 {
            let id = part(&vec![1; n]);
            for shape in partitions(n) {
                assert_eq!(character(&shape, &id), num_standard_tableaux(&shape) as i64);
            }
            let perms = all_permutations(n);
            for shape in partitions(n) {
                let norm: i64 = perms.iter().map(|p| character(&shape, &p.cycle_type()).pow(2)).sum();
                assert_eq!(norm as u128, factorial(n));
            }
        }
        // sign character
        assert_eq!(character(&part(&[1, 1, 1]), &part(&[2, 1])), -1);
        assert_eq!(character(&part(&[2, 1]), &part(&[3])), -1);
    }

    #[test]
    fn permutation_unitary_basics() {
        let u = perm_unitary(&Permutation::identity(3));
        assert_eq!(u, DMatrix::identity(8, 8));
        let swap = perm_unitary(&Permutation::transposition(2, 0, 1));
        let expected = DMatrix::from_row_slice(4, 4, &[
            1.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
        ]);
        assert_eq!(swap, expected);
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        let q = Permutation::new(vec![0, 2, 1]).unwrap();
        let lhs = perm_unitary(&p) * perm_unitary(&q);
        assert_eq!(lhs, perm_unitary(&p.compose(&q)));
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn projector_ranks() {
        let ranks = |n| gys_projectors(n, 42).unwrap().iter().map(|p| p.rank).collect::<Vec<_>>();
        assert_eq!(ranks(1), [2]);
        assert_eq!(ranks(2), [3, 1]);
        assert_eq!(ranks(3), [4, 2, 2]);
        assert_eq!(ranks(4), [5, 3, 3, 3, 1, 1]);
    }

    #[test]
    fn projector_axioms_small() {
        for n in 1..=4 {
            let projs = gys_projectors(n, 42).unwrap();
            let ax = gys_axiom_residuals(&projs, &group_actions(n));
            assert!(ax.max() < 1e-10, "n = {n}: {ax:?}");
            for p in &projs {
                assert_eq!(p.image_basis().ncols(), p.rank);
            }
        }
    }

    #[test]
    fn primitivity_scalars_obey_schur_orthogonality() {
        // Σ_g λ_{g,j}^2 = n! / d_λ for every projector. A j-independent scalar
        // would force χ(g)/d_λ on every j and give n!/d_λ² instead, so for
        // d_λ ≥ 2 the scalar necessarily depends on the projector.
        let n = 3;
        let projs = gys_projectors(n, 42).unwrap();
        let scalars = primitivity_scalars(&projs, &group_actions(n));
        for (p, row) in projs.iter().zip(&scalars) {
            let d = num_standard_tableaux(p.shape()) as f64;
            let sum_sq: f64 = row.iter().map(|x| x * x).sum();
            assert!((sum_sq - 6.0 / d).abs() < 1e-9);
        }
        let spread = scalars[1].iter().zip(&scalars[2]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(spread > 0.1);
    }

    #[test]
    fn tensor_products_keep_axioms() {
        let c = gys_projectors(2, 42).unwrap();
        let p = gys_projectors(2, 7).unwrap();
        let prods: Vec<_> = c.iter().flat_map(|a| p.iter().map(|b| tensor_gys(a, b))).collect();
        assert_eq!(prods.iter().map(|g| g.rank).collect::<Vec<_>>(), [9, 3, 3, 1]);
        let ax = gys_axiom_residuals(&prods, &product_group_actions(2, 2));
        assert!(ax.max() < 1e-10, "{ax:?}");
    }

    #[test]
    fn cluster_split_requires_exact_shape() {
        let vals = [(0.0, 0), (1e-12, 1), (1.0, 2), (1.0, 3)];
        assert!(clusters(&vals, 2, 2).is_some());
        assert!(clusters(&vals, 1, 4).is_none());
        assert!(clusters(&vals, 4, 1).is_none());
    }

    #[test]
    fn oversized_group_rejected() {
        assert!(gys_projectors(9, 42).is_err());
        assert!(gys_projectors(0, 42).is_err());
    }
}
