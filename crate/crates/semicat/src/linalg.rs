//! Dense exact matrices over a `FieldSpec` with the solving kit the rest of
//! the crate is built on: row reduction, solving, kernels, cokernel
//! projections, ranks and inverses. Everything is exact; no pivoting
//! heuristics are needed.

use crate::field::{FieldSpec, K};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    a: Vec<K>,
}

impl Mat {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, a: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, f: impl Fn(usize, usize) -> K) -> Mat {
        let mut a = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                a.push(f(i, j));
            }
        }
        Mat { field, rows, cols, a }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<K>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Mat { field, rows: r, cols: c, a: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(field: FieldSpec, cols: Vec<Vec<K>>) -> Mat {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        assert!(cols.iter().all(|x| x.len() == r));
        Mat::from_fn(field, r, c, |i, j| cols[j][i].clone())
    }

    pub fn col_vector(field: FieldSpec, v: &[K]) -> Mat {
        Mat::from_fn(field, v.len(), 1, |i, _| v[i].clone())
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.a[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<K> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j).add(o.get(i, j)))
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j).sub(o.get(i, j)))
    }

    pub fn scale(&self, c: &K) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j).mul(c))
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch in mul");
        let mut out = Mat::zero(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let s = self.get(i, k);
                if s.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = o.get(k, j);
                    if t.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&s.mul(t));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![self.field.zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = self.field.zero();
            for j in 0..self.cols {
                let s = self.get(i, j);
                if !s.is_zero() && !v[j].is_zero() {
                    acc = acc.add(&s.mul(&v[j]));
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        Mat::from_fn(self.field, self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { o.get(i, j - self.cols).clone() }
        })
    }

    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        Mat::from_fn(self.field, self.rows + o.rows, self.cols, |i, j| {
            if i < self.rows { self.get(i, j).clone() } else { o.get(i - self.rows, j).clone() }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Mat::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }
}

/// Row-reduce in place; returns pivot column per pivot row.
fn rref_in_place(m: &mut Mat) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
        if pr != r {
            for j in 0..m.cols {
                let tmp = m.get(r, j).clone();
                m.set(r, j, m.get(pr, j).clone());
                m.set(pr, j, tmp);
            }
        }
        let inv = m.get(r, c).inv().expect("pivot must be invertible");
        for j in 0..m.cols {
            let v = m.get(r, j).mul(&inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i != r && !m.get(i, c).is_zero() {
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let mut w = m.clone();
    let pivots = rref_in_place(&mut w);
    (w, pivots)
}

pub fn rank(m: &Mat) -> usize {
    rref(m).1.len()
}

/// Solve A X = B for any one solution (free variables set to zero).
pub fn solve(a: &Mat, b: &Mat) -> Option<Mat> {
    assert_eq!(a.rows, b.rows);
    let aug = a.hstack(b);
    let (red, pivots) = rref(&aug);
    // consistency: no pivot may land in the B block
    if pivots.iter().any(|&c| c >= a.cols) {
        return None;
    }
    let mut x = Mat::zero(a.field, a.cols, b.cols);
    for (r, &c) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(c, j, red.get(r, a.cols + j).clone());
        }
    }
    Some(x)
}

/// Column basis of the null space of A.
pub fn kernel(a: &Mat) -> Mat {
    let (red, pivots) = rref(a);
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; a.cols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let free: Vec<usize> = (0..a.cols).filter(|&c| !pivot_set[c]).collect();
    let mut out = Mat::zero(a.field, a.cols, free.len());
    for (k, &fc) in free.iter().enumerate() {
        out.set(fc, k, a.field.one());
        for (r, &pc) in pivots.iter().enumerate() {
            out.set(pc, k, red.get(r, fc).neg());
        }
    }
    out
}

pub fn inverse(a: &Mat) -> Option<Mat> {
    if a.rows != a.cols {
        return None;
    }
    let x = solve(a, &Mat::identity(a.field, a.rows))?;
    if a.mul(&x) == Mat::identity(a.field, a.rows) && x.mul(a) == Mat::identity(a.field, a.rows) {
        Some(x)
    } else {
        None
    }
}

/// Incremental echelon basis of a column space, used to absorb very wide
/// relation matrices one column at a time.
pub struct ColSpace {
    field: FieldSpec,
    dim: usize,
    // normalized columns sorted by pivot index; pivot entry is 1
    cols: Vec<(Vec<K>, usize)>,
}

impl ColSpace {
    pub fn new(field: FieldSpec, dim: usize) -> ColSpace {
        ColSpace { field, dim, cols: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn reduce(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (c, p) in &self.cols {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for i in 0..self.dim {
                    if !c[i].is_zero() {
                        v[i] = v[i].sub(&f.mul(&c[i]));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[K]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert a vector; returns true when it enlarged the space.
    pub fn insert(&mut self, v: &[K]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv().unwrap();
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        // back-reduce existing columns against the new pivot
        for (c, _) in self.cols.iter_mut() {
            if !c[p].is_zero() {
                let f = c[p].clone();
                for i in 0..v.len() {
                    if !v[i].is_zero() {
                        c[i] = c[i].sub(&f.mul(&v[i]));
                    }
                }
            }
        }
        let pos = self.cols.partition_point(|(_, q)| *q < p);
        self.cols.insert(pos, (v, p));
        true
    }

    pub fn basis_mat(&self) -> Mat {
        Mat::from_cols(self.field, self.cols.iter().map(|(c, _)| c.clone()).collect())
    }
}

/// Cokernel data: `proj * a == 0`, `proj * sect == id`, and
/// `rank(proj) == a.rows - rank(a)`.
pub fn cokernel(a: &Mat) -> (Mat, Mat) {
    let m = a.rows;
    let mut cs = ColSpace::new(a.field, m);
    for j in 0..a.cols {
        cs.insert(&a.col(j));
    }
    cokernel_of_colspace(&cs, a.field, m)
}

pub fn cokernel_of_colspace(cs: &ColSpace, field: FieldSpec, dim: usize) -> (Mat, Mat) {
    let mut probe = ColSpace { field, dim, cols: cs.cols.clone() };
    let mut complement = Vec::new();
    for i in 0..dim {
        let mut e = vec![field.zero(); dim];
        e[i] = field.one();
        if probe.insert(&e) {
            complement.push(i);
        }
    }
    let r = cs.rank();
    let q = complement.len();
    debug_assert_eq!(r + q, dim);
    // full basis [image | complement]; projection = last q rows of its inverse
    let mut full = Mat::zero(field, dim, dim);
    for (j, (c, _)) in cs.cols.iter().enumerate() {
        for i in 0..dim {
            full.set(i, j, c[i].clone());
        }
    }
    for (j, &ci) in complement.iter().enumerate() {
        full.set(ci, r + j, field.one());
    }
    let inv = inverse(&full).expect("basis completion must be invertible");
    let proj = Mat::from_fn(field, q, dim, |i, j| inv.get(r + i, j).clone());
    let mut sect = Mat::zero(field, dim, q);
    for (j, &ci) in complement.iter().enumerate() {
        sect.set(ci, j, field.one());
    }
    (proj, sect)
}

/// The bundled exact solver the specification calls the linear kit.
pub struct SolveData {
    pub particular: Option<Mat>,
    pub kernel: Mat,
    pub coker_proj: Mat,
    pub coker_sect: Mat,
    pub rank: usize,
}

pub fn linear_kit(a: &Mat, b: Option<&Mat>) -> SolveData {
    let particular = b.and_then(|b| solve(a, b));
    let ker = kernel(a);
    let (proj, sect) = cokernel(a);
    let rk = a.cols - ker.cols;
    debug_assert!(proj.mul(a).is_zero());
    debug_assert_eq!(proj.rows, a.rows - rk);
    SolveData { particular, kernel: ker, coker_proj: proj, coker_sect: sect, rank: rk }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> K {
        FieldSpec::Q.from_i64(n).div(&FieldSpec::Q.from_i64(d))
    }

    #[test]
    fn solve_scalar_equation() {
        // 2x = 4 over the rationals
        let f = FieldSpec::Q;
        let a = Mat::from_rows(f, vec![vec![f.from_i64(2)]]);
        let b = Mat::from_rows(f, vec![vec![f.from_i64(4)]]);
        let kit = linear_kit(&a, Some(&b));
        assert_eq!(kit.particular.unwrap().get(0, 0), &f.from_i64(2));
        assert_eq!(kit.kernel.cols, 0);
        assert_eq!(kit.rank, 1);
    }

    #[test]
    fn kernel_of_ones_matrix() {
        let f = FieldSpec::Q;
        let a = Mat::from_rows(f, vec![vec![f.one(), f.one()], vec![f.one(), f.one()]]);
        let k = kernel(&a);
        assert_eq!(k.cols, 1);
        // spanned by (1, -1)
        assert_eq!(k.get(0, 0).add(k.get(1, 0)), f.zero());
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn cokernel_of_zero_map() {
        // zero map k -> k^2 has two-dimensional cokernel
        let f = FieldSpec::Q;
        let a = Mat::zero(f, 2, 1);
        let (proj, sect) = cokernel(&a);
        assert_eq!(proj.rows, 2);
        assert_eq!(proj.mul(&sect), Mat::identity(f, 2));
    }

    #[test]
    fn inconsistent_system_is_not_a_fault() {
        let f = FieldSpec::Q;
        let a = Mat::from_rows(f, vec![vec![f.one()], vec![f.one()]]);
        let b = Mat::from_rows(f, vec![vec![f.one()], vec![f.from_i64(2)]]);
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn rational_pivots_stay_exact() {
        let f = FieldSpec::Q;
        let a = Mat::from_rows(f, vec![vec![q(1, 3), q(1, 2)], vec![q(2, 3), q(1, 1)]]);
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn gf2_inverse() {
        let f = FieldSpec::Fp(2);
        let a = Mat::from_rows(f, vec![vec![f.one(), f.one()], vec![f.zero(), f.one()]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(f, 2));
    }
}
