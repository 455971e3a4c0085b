//! Hom spaces, isomorphism certificates and split-summand certificates.
//!
//! Homomorphisms preserve the vertex decomposition `M = ⊕ e_v M`, so the
//! unknowns are one block per vertex and the equations come from a generating
//! set of the algebra.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::FModule;
use crate::linalg::{Matrix, Scalar, Vector};

const RANDOM_TRIES: usize = 200;

/// `M` in a basis adapted to the vertex idempotents.
struct Adapted {
    offsets: Vec<usize>,
    sizes: Vec<usize>,
    change: Matrix,
    inverse: Matrix,
}

impl Adapted {
    fn new(m: &FModule) -> Adapted {
        let f = m.algebra().field();
        let mut cols: Vec<Vector> = Vec::new();
        let mut offsets = Vec::new();
        let mut sizes = Vec::new();
        for e in m.algebra().vertex_idempotents() {
            offsets.push(cols.len());
            let img = m.idempotent_image(e);
            sizes.push(img.dim());
            cols.extend(img.basis().iter().cloned());
        }
        let change = Matrix::from_columns(f, m.dim(), &cols);
        let inverse = change.inverse().expect("vertex idempotents decompose the module");
        Adapted { offsets, sizes, change, inverse }
    }

    fn block(&self, g: &Matrix, w: usize, v: usize) -> Matrix {
        let rows: Vec<usize> = (self.offsets[w]..self.offsets[w] + self.sizes[w]).collect();
        let cols: Vec<usize> = (self.offsets[v]..self.offsets[v] + self.sizes[v]).collect();
        g.select_rows(&rows).select_columns(&cols)
    }
}

/// Basis of `Hom_A(M, N)` as `dim N x dim M` matrices.
pub fn hom_space(m: &FModule, n: &FModule) -> Vec<Matrix> {
    let a = m.algebra();
    let f = a.field();
    if m.dim() == 0 || n.dim() == 0 {
        return Vec::new();
    }
    let am = Adapted::new(m);
    let an = Adapted::new(n);
    let nv = a.vertex_idempotents().len();
    // unknown X_v is an (sizes_n[v] x sizes_m[v]) block, row-major
    let mut var_offset = Vec::with_capacity(nv);
    let mut total = 0;
    for v in 0..nv {
        var_offset.push(total);
        total += an.sizes[v] * am.sizes[v];
    }
    if total == 0 {
        return Vec::new();
    }
    let var = |v: usize, r: usize, c: usize| var_offset[v] + r * am.sizes[v] + c;
    let mut rows: Vec<Vector> = Vec::new();
    for g in a.generators() {
        let gm = am.inverse.mul(&m.act(g)).mul(&am.change);
        let gn = an.inverse.mul(&n.act(g)).mul(&an.change);
        for v in 0..nv {
            for w in 0..nv {
                let bm = am.block(&gm, w, v);
                let bn = an.block(&gn, w, v);
                if (bm.is_zero() && bn.is_zero()) || an.sizes[w] == 0 || am.sizes[v] == 0 {
                    continue;
                }
                // X_w * bm - bn * X_v = 0
                for r in 0..an.sizes[w] {
                    for c in 0..am.sizes[v] {
                        let mut row = vec![f.zero(); total];
                        for t in 0..am.sizes[w] {
                            let x = &bm[(t, c)];
                            if !x.is_zero() {
                                let i = var(w, r, t);
                                row[i] = &row[i] + x;
                            }
                        }
                        for s in 0..an.sizes[v] {
                            let x = &bn[(r, s)];
                            if !x.is_zero() {
                                let i = var(v, s, c);
                                row[i] = &row[i] - x;
                            }
                        }
                        if row.iter().any(|x| !x.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..total).map(|i| crate::linalg::unit_vector(f, total, i)).collect()
    } else {
        Matrix::from_rows(f, total, rows).kernel_basis()
    };
    kernel
        .into_iter()
        .map(|x| {
            let mut block = Matrix::zeros(f, n.dim(), m.dim());
            for v in 0..nv {
                for r in 0..an.sizes[v] {
                    for c in 0..am.sizes[v] {
                        block[(an.offsets[v] + r, am.offsets[v] + c)] = x[var(v, r, c)].clone();
                    }
                }
            }
            an.change.mul(&block).mul(&am.inverse)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub enum IsoResult {
    /// An invertible intertwiner `M -> N`.
    Yes(Matrix),
    No(String),
    Inconclusive,
}

impl IsoResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoResult::Yes(_))
    }
}

/// Candidate elements of a Hom space: basis elements, sums of up to three of
/// them, then seeded pseudorandom combinations.
fn candidates(basis: &[Matrix], seed: u64, mut accept: impl FnMut(&Matrix) -> bool) -> Option<Matrix> {
    let h = basis.len();
    if h == 0 {
        return None;
    }
    for x in basis {
        if accept(x) {
            return Some(x.clone());
        }
    }
    for i in 0..h {
        for j in i + 1..h {
            let s = basis[i].add(&basis[j]);
            if accept(&s) {
                return Some(s);
            }
            for k in j + 1..h {
                let t = s.add(&basis[k]);
                if accept(&t) {
                    return Some(t);
                }
            }
        }
    }
    let f = basis[0].field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let mut x = Matrix::zeros(f, basis[0].rows(), basis[0].cols());
        for b in basis {
            let c: Scalar = f.random(&mut rng);
            if !c.is_zero() {
                x.add_scaled(&c, b);
            }
        }
        if accept(&x) {
            return Some(x);
        }
    }
    None
}

/// Decides isomorphism where an invariant differs, otherwise searches for an
/// invertible homomorphism.
pub fn is_isomorphic(m: &FModule, n: &FModule, seed: u64) -> IsoResult {
    if m.dim() != n.dim() {
        return IsoResult::No(format!("dimensions {} and {}", m.dim(), n.dim()));
    }
    let (dm, dn) = (m.vertex_dimensions(), n.vertex_dimensions());
    if dm != dn {
        return IsoResult::No(format!("dimension vectors {dm:?} and {dn:?}"));
    }
    if let (Ok(lm), Ok(ln)) = (m.radical_layers(), n.radical_layers()) {
        if lm != ln {
            return IsoResult::No(format!("radical layers {lm:?} and {ln:?}"));
        }
    }
    if m.dim() == 0 {
        return IsoResult::Yes(Matrix::zeros(m.algebra().field(), 0, 0));
    }
    let basis = hom_space(m, n);
    let (em, en) = (hom_space(m, m).len(), hom_space(n, n).len());
    if em != en {
        return IsoResult::No(format!("endomorphism dimensions {em} and {en}"));
    }
    let dim = m.dim();
    match candidates(&basis, seed, |x| x.rank() == dim) {
        Some(x) => IsoResult::Yes(x),
        None => IsoResult::Inconclusive,
    }
}

/// Maps `s: X -> Y` and `r: Y -> X` with `r∘s = id_X`.
#[derive(Clone, Debug)]
pub struct SplitCertificate {
    pub section: Matrix,
    pub retraction: Matrix,
}

impl SplitCertificate {
    pub fn verify(&self, x: &FModule, y: &FModule) -> bool {
        let f = x.algebra().field();
        let s_ok = super::ModuleMap::new(x.clone(), y.clone(), self.section.clone()).is_ok();
        let r_ok = super::ModuleMap::new(y.clone(), x.clone(), self.retraction.clone()).is_ok();
        s_ok && r_ok && self.retraction.mul(&self.section) == Matrix::identity(f, x.dim())
    }
}

/// Searches for `X` as a direct summand of `Y`.
pub fn split_summand(x: &FModule, y: &FModule, seed: u64) -> Option<SplitCertificate> {
    if x.dim() == 0 || x.dim() > y.dim() {
        return None;
    }
    let (dx, dy) = (x.vertex_dimensions(), y.vertex_dimensions());
    if dx.iter().zip(&dy).any(|(a, b)| a > b) {
        return None;
    }
    let ss = hom_space(x, y);
    let rs = hom_space(y, x);
    if ss.is_empty() || rs.is_empty() {
        return None;
    }
    let f = x.algebra().field();
    let d = x.dim();
    let id: Vector = Matrix::identity(f, d).entries().to_vec();
    let mut found: Option<Matrix> = None;
    let section = candidates(&ss, seed, |s| {
        if s.rank() != d {
            return false;
        }
        let cols: Vec<Vector> = rs.iter().map(|r| r.mul(s).entries().to_vec()).collect();
        let sys = Matrix::from_columns(f, d * d, &cols);
        match sys.solve(&id) {
            Some(c) => {
                let mut r = Matrix::zeros(f, d, y.dim());
                for (ck, rk) in c.iter().zip(&rs) {
                    r.add_scaled(ck, rk);
                }
                found = Some(r);
                true
            }
            None => false,
        }
    })?;
    Some(SplitCertificate { section, retraction: found.expect("set with the section") })
}
