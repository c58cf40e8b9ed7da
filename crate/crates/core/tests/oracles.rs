//! Independent dense-matrix oracles: a Lie closure on explicit matrices with
//! literal Pauli matrices, compared with the library's sparse machinery.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use spindla::decomposition::{analyze, Verdict};
use spindla::model::{build_ghz_closure, build_l_basis, model_generators, ModelParams};
use spindla::pauli::RegisterSpec;

type M = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sigma(k: usize) -> M {
    let (z, o, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match k {
        0 => M::from_row_slice(2, 2, &[o, z, z, o]),
        1 => M::from_row_slice(2, 2, &[z, o, o, z]),
        2 => M::from_row_slice(2, 2, &[z, i, -i, z]),
        _ => M::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

/// `σ_k` on `site` of `n` qubits, site 0 leftmost.
fn on_site(k: usize, site: usize, n: usize) -> M {
    (0..n).fold(M::identity(1, 1), |acc, s| acc.kronecker(&if s == site { sigma(k) } else { sigma(0) }))
}

fn collective(k: usize, sites: std::ops::Range<usize>, n: usize) -> M {
    sites.fold(M::zeros(1 << n, 1 << n), |acc, s| acc + on_site(k, s, n))
}

fn pair_sum(k: usize, n: usize) -> M {
    let mut out = M::zeros(1 << n, 1 << n);
    for a in 0..n {
        for b in a + 1..n {
            out += on_site(k, a, n) * on_site(k, b, n);
        }
    }
    out
}

fn vectorize(m: &M) -> DVector<f64> {
    DVector::from_iterator(2 * m.len(), m.iter().flat_map(|z| [z.re, z.im]))
}

/// Dimension of the real Lie algebra generated by dense skew-Hermitian matrices,
/// by brute force: bracket every pair until the span stops growing.
fn dense_closure_dim(gens: &[M]) -> usize {
    let mut basis: Vec<M> = Vec::new();
    let mut vecs: Vec<DVector<f64>> = Vec::new();
    let insert = |m: &M, basis: &mut Vec<M>, vecs: &mut Vec<DVector<f64>>| -> bool {
        let mut v = vectorize(m);
        let norm = v.norm();
        if norm < 1e-12 {
            return false;
        }
        for _ in 0..2 {
            for e in vecs.iter() {
                let d = e.dot(&v);
                v -= e * d;
            }
        }
        if v.norm() < 1e-9 * norm {
            return false;
        }
        vecs.push(&v / v.norm());
        basis.push(m.clone());
        true
    };
    for g in gens {
        insert(g, &mut basis, &mut vecs);
    }
    let mut i = 0;
    while i < basis.len() {
        for j in 0..i {
            let b = &basis[i] * &basis[j] - &basis[j] * &basis[i];
            insert(&b, &mut basis, &mut vecs);
        }
        i += 1;
    }
    basis.len()
}

fn model(nc: usize, np: usize, gc: f64, gp: f64) -> Vec<M> {
    let n = nc + np;
    let i = c(0.0, 1.0);
    let drift = collective(3, 0..nc, n) * collective(3, nc..n, n) * i;
    let ctrl = |k| (collective(k, 0..nc, n) * c(gc, 0.0) + collective(k, nc..n, n) * c(gp, 0.0)) * i;
    vec![drift, ctrl(1), ctrl(2)]
}

#[test]
fn dense_model_closure_matches_library() {
    for (nc, np, expected) in [(1, 1, 15), (1, 2, 38), (2, 2, 86)] {
        assert_eq!(dense_closure_dim(&model(nc, np, 1.0, 2.0)), expected);
        let p = ModelParams::with_default_gammas(RegisterSpec::new(nc, np).unwrap()).unwrap();
        let dense_from_lib: Vec<M> = model_generators(&p).unwrap().iter().map(|g| g.to_dense()).collect();
        for (a, b) in dense_from_lib.iter().zip(model(nc, np, 1.0, 2.0)) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}

#[test]
fn equal_gammas_lose_separate_rotations() {
    // Equal couplings leave only total-spin rotations. (1,2) happens to recover
    // the full algebra anyway; the others lose dimensions.
    assert_eq!(dense_closure_dim(&model(1, 1, 1.0, 1.0)), 9);
    assert_eq!(dense_closure_dim(&model(1, 2, 1.0, 1.0)), 38);
    assert_eq!(dense_closure_dim(&model(1, 3, 1.0, 1.0)), 72);
    assert_eq!(dense_closure_dim(&model(2, 2, 1.0, 1.0)), 47);
}

#[test]
fn ising_closure_dimensions_follow_block_sizes() {
    let i = c(0.0, 1.0);
    for n in 2..=4 {
        let mut gens = vec![pair_sum(3, n) * i];
        gens.extend((1..=3).map(|k| collective(k, 0..n, n) * i));
        let dense = dense_closure_dim(&gens);
        assert_eq!(dense, build_ghz_closure(n).unwrap().dim(), "n = {n}");
        // Spin blocks of size n + 1, n - 1, ...: su parts plus one trace direction.
        let expected: usize = (0..=n / 2).map(|k| (n - 2 * k + 1).pow(2) - 1).sum::<usize>() + 1;
        assert_eq!(dense, expected, "n = {n}");
    }
}

#[test]
fn l_closure_dimension_n4() {
    let i = c(0.0, 1.0);
    let n = 4;
    let mut gens: Vec<M> = (1..=3).map(|k| collective(k, 0..n, n) * i).collect();
    gens.push((pair_sum(1, n) - pair_sum(2, n)) * i);
    gens.push((pair_sum(2, n) - pair_sum(3, n)) * i);
    let dense = dense_closure_dim(&gens);
    assert_eq!(dense, build_l_basis(n).unwrap().dim());
    assert_eq!(dense, 24 + 8);
}

/// On `singlet(C) ⊗ V` the central spins drop out: every generator acts as
/// `i γ_P S_a^P`, so the restricted algebra is a spin representation of su(2).
#[test]
fn central_singlet_blocks_carry_only_su2() {
    let (nc, np) = (2, 2);
    let n = nc + np;
    let s = 1.0 / 2f64.sqrt();
    // (|01> - |10>)/√2 on C, with site 0 the most significant bit.
    let mut singlet = DVector::<Complex64>::zeros(4);
    singlet[1] = c(s, 0.0);
    singlet[2] = c(-s, 0.0);
    // Symmetric triplet on P.
    let mut trip = M::zeros(4, 3);
    trip[(0, 0)] = c(1.0, 0.0);
    trip[(1, 1)] = c(s, 0.0);
    trip[(2, 1)] = c(s, 0.0);
    trip[(3, 2)] = c(1.0, 0.0);
    let basis = M::from_column_slice(4, 1, singlet.as_slice()).kronecker(&trip);
    let restricted: Vec<M> = model(nc, np, 1.0, 2.0)
        .iter()
        .map(|g| {
            let r = basis.adjoint() * g * &basis;
            assert!((g * &basis - &basis * &r).norm() < 1e-12, "block is invariant");
            r
        })
        .collect();
    assert!(restricted[0].norm() < 1e-12, "drift vanishes on the singlet");
    assert_eq!(dense_closure_dim(&restricted), 3);
    assert!(dense_closure_dim(&restricted) < 3 * 3 - 1);
    assert_eq!(n, 4);

    let report = analyze(&ModelParams::with_default_gammas(RegisterSpec::new(nc, np).unwrap()).unwrap(), 42).unwrap();
    let block = report
        .blocks
        .iter()
        .find(|b| b.shape_c.rows() == [1, 1] && b.shape_p.rows() == [2])
        .unwrap();
    assert_eq!(block.restricted_dim, 3);
    assert_eq!(block.verdict, Verdict::Deficient);
}
