//! Jacobson radical. In characteristic zero it is the kernel of the trace form
//! `(x, y) -> tr(L_{xy})`. In characteristic p we use Rónyai's descending chain
//! of ideals cut out by the functionals `g_i(z) = (Tr(lift(L_z)^{p^i}) mod p^{i+1}) / p^i`.

use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{axpy, Matrix, Subspace, Vector};

pub(super) fn compute(a: &Algebra) -> Result<Subspace> {
    let rad = if a.field().is_rational() { trace_form_kernel(a) } else { ronyai(a) };
    certify(a, &rad)?;
    Ok(rad)
}

fn trace_form_kernel(a: &Algebra) -> Subspace {
    let n = a.dim();
    let f = a.field();
    let traces: Vec<_> = a.left_regular().iter().map(Matrix::trace).collect();
    // t[i][j] = tr(L_{b_i b_j}); x is radical iff x^T t = 0
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = vec![f.zero(); n];
        for (i, slot) in row.iter_mut().enumerate() {
            for (k, c) in a.product(i, j) {
                *slot = &*slot + &(c * &traces[*k]);
            }
        }
        rows.push(row);
    }
    Subspace::kernel(&Matrix::from_rows(f, n, rows))
}

fn ronyai(a: &Algebra) -> Subspace {
    let n = a.dim();
    let f = a.field();
    let p = f.characteristic() as u128;
    let mut ideal = Subspace::full(f, n);
    let mut i = 0u32;
    while p.pow(i) <= n as u128 {
        let basis = ideal.basis().to_vec();
        if basis.is_empty() {
            break;
        }
        // column k: g_i(x_k * b_j) for each j
        let mut rows = Vec::with_capacity(n);
        for j in 0..n {
            let bj = a.basis_vector(j);
            let row: Vector = basis
                .iter()
                .map(|x| f.from_i64(g_functional(a, &a.mul(x, &bj), p, i) as i64))
                .collect();
            rows.push(row);
        }
        let g = Matrix::from_rows(f, basis.len(), rows);
        let mut next = Subspace::zero(f, n);
        for c in g.kernel_basis() {
            let mut x = a.zero();
            for (ck, xk) in c.iter().zip(&basis) {
                axpy(&mut x, ck, xk);
            }
            next.extend([x]);
        }
        ideal = next;
        i += 1;
    }
    ideal
}

fn g_functional(a: &Algebra, z: &[crate::linalg::Scalar], p: u128, i: u32) -> u128 {
    let modulus = p.pow(i + 1);
    let lz = a.combine(a.left_regular(), z);
    let n = lz.rows();
    let lifted: Vec<u128> = lz.entries().iter().map(|s| s.residue().expect("modular") as u128).collect();
    let m = matpow(&lifted, n, p.pow(i), modulus);
    let tr = (0..n).fold(0u128, |acc, k| (acc + m[k * n + k]) % modulus);
    let scale = p.pow(i);
    // the trace is divisible by p^i on I_{i-1}; the remainder is discarded
    (tr / scale) % p
}

fn matmul(x: &[u128], y: &[u128], n: usize, m: u128) -> Vec<u128> {
    let mut out = vec![0u128; n * n];
    for r in 0..n {
        for k in 0..n {
            let a = x[r * n + k];
            if a == 0 {
                continue;
            }
            for c in 0..n {
                out[r * n + c] = (out[r * n + c] + a * y[k * n + c]) % m;
            }
        }
    }
    out
}

fn matpow(x: &[u128], n: usize, mut e: u128, m: u128) -> Vec<u128> {
    let mut acc = vec![0u128; n * n];
    for k in 0..n {
        acc[k * n + k] = 1 % m;
    }
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = matmul(&acc, &base, n, m);
        }
        e >>= 1;
        if e > 0 {
            base = matmul(&base, &base, n, m);
        }
    }
    acc
}

fn certify(a: &Algebra, rad: &Subspace) -> Result<()> {
    if !a.is_two_sided_ideal(rad) {
        return Err(Error::Invariant("computed radical is not a two-sided ideal".into()));
    }
    if a.nilpotency_index(rad).is_none() {
        return Err(Error::Invariant("computed radical is not nilpotent".into()));
    }
    if !rad.is_zero() {
        let q = super::corner::quotient_algebra(a, rad);
        if !compute(&q)?.is_zero() {
            return Err(Error::Invariant("quotient by the computed radical is not semisimple".into()));
        }
    }
    Ok(())
}
