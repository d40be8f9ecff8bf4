//! Exact dense linear algebra over any field.
//!
//! The [`Field`] trait abstracts the coefficient field so the same
//! elimination code serves `Q(zeta_N)` ([`CycNum`]) and its quadratic
//! extensions ([`super::ext::ExtElem`]).  Everything is fraction-free in
//! spirit but works directly with exact field elements, so no pivoting
//! strategy or tolerance is ever needed: a pivot is usable exactly when
//! it is nonzero.

use super::CycNum;

/// Minimal exact-field interface for elimination.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Multiplicative inverse; `None` exactly for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl Field for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Option<Self> {
        CycNum::inv(self).ok()
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
}

/// Dense matrix over a field, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<F: Field> {
    pub rows: usize,
    pub cols: usize,
    d: Vec<F>,
}

/// Matrix over the cyclotomic numbers.
pub type CycMat = Mat<CycNum>;

impl<F: Field> Mat<F> {
    pub fn new(rows: usize, cols: usize, d: Vec<F>) -> Self {
        assert_eq!(d.len(), rows * cols);
        Mat { rows, cols, d }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut d = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                d.push(f(r, c));
            }
        }
        Mat { rows, cols, d }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            d: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { F::one() } else { F::zero() })
    }

    pub fn at(&self, r: usize, c: usize) -> &F {
        &self.d[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.d[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[F] {
        &self.d
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.d[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn matmul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        Self::from_fn(self.rows, o.cols, |r, c| {
            let mut acc = F::zero();
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(o.at(k, c)));
            }
            acc
        })
    }

    pub fn add_mat(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c).add(o.at(r, c)))
    }

    pub fn sub_mat(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c).sub(o.at(r, c)))
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c).mul(s))
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc = acc.add(&self.at(r, k).mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.rows);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.matmul(&sq);
            }
        }
        acc
    }

    /// Reduced row echelon form; returns the reduced matrix and the
    /// pivot column of each leading one.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for pc in 0..m.cols {
            let Some(r) = (pr..m.rows).find(|&r| !m.at(r, pc).is_zero()) else {
                continue;
            };
            for c in 0..m.cols {
                m.d.swap(pr * m.cols + c, r * m.cols + c);
            }
            let inv = m.at(pr, pc).inv().expect("pivot is nonzero");
            for c in 0..m.cols {
                let v = m.at(pr, c).mul(&inv);
                m.set(pr, c, v);
            }
            for r2 in 0..m.rows {
                if r2 != pr && !m.at(r2, pc).is_zero() {
                    let f = m.at(r2, pc).clone();
                    for c in 0..m.cols {
                        let v = m.at(r2, c).sub(&m.at(pr, c).mul(&f));
                        m.set(r2, c, v);
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
            if pr == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut piv_iter = pivots.iter().copied().collect::<Vec<_>>();
        piv_iter.sort_unstable();
        for free in 0..self.cols {
            if piv_iter.binary_search(&free).is_ok() {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = r.at(row, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.at(r, c).clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        let (reduced, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        aug = reduced;
        Some(Self::from_fn(n, n, |r, c| aug.at(r, n + c).clone()))
    }

    /// Determinant by elimination.
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for pc in 0..n {
            let Some(r) = (pc..n).find(|&r| !m.at(r, pc).is_zero()) else {
                return F::zero();
            };
            if r != pc {
                for c in 0..n {
                    m.d.swap(pc * n + c, r * n + c);
                }
                det = det.neg();
            }
            let pivot = m.at(pc, pc).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().expect("pivot nonzero");
            for r2 in pc + 1..n {
                if m.at(r2, pc).is_zero() {
                    continue;
                }
                let f = m.at(r2, pc).mul(&inv);
                for c in pc..n {
                    let v = m.at(r2, c).sub(&m.at(pc, c).mul(&f));
                    m.set(r2, c, v);
                }
            }
        }
        det
    }

    /// One solution of `self * x = b`, if consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = red.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let mut t = F::zero();
        for i in 0..self.rows {
            t = t.add(self.at(i, i));
        }
        t
    }
}

/// Scales a vector so its first nonzero entry is one.  Returns `None`
/// for the zero vector.
pub fn normalize_projective<F: Field>(v: &[F]) -> Option<Vec<F>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv().expect("nonzero entry inverts");
    Some(v.iter().map(|x| x.mul(&inv)).collect())
}

/// Eigenvalue/eigenspace decomposition of a matrix of finite
/// multiplicative order `m`: all eigenvalues are `m`-th roots of unity
/// and the matrix is diagonalizable, which the function asserts.
pub fn eigen_decomposition(mat: &CycMat, m: u32) -> Vec<(CycNum, Vec<Vec<CycNum>>)> {
    assert_eq!(mat.rows, mat.cols);
    let n = mat.rows;
    let mut out = Vec::new();
    let mut total = 0usize;
    for k in 0..m {
        let lambda = CycNum::zeta_pow(m, k as i64).expect("order fits conductor limit");
        let shifted = Mat::from_fn(n, n, |r, c| {
            if r == c {
                mat.at(r, c) - &lambda
            } else {
                mat.at(r, c).clone()
            }
        });
        let basis = shifted.kernel_basis();
        if !basis.is_empty() {
            total += basis.len();
            out.push((lambda, basis));
        }
    }
    assert_eq!(
        total, n,
        "finite-order matrix must be diagonalizable over a cyclotomic field"
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> CycMat {
        CycMat::new(
            2,
            2,
            vec![
                CycNum::from_int(a),
                CycNum::from_int(b),
                CycNum::from_int(c),
                CycNum::from_int(d),
            ],
        )
    }

    #[test]
    fn inverse_and_det() {
        let m = m2(2, 1, 1, 1);
        assert_eq!(m.det(), CycNum::from_int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), CycMat::identity(2));
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let m = m2(1, 2, 2, 4);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn eigen_decomposition_of_rotation() {
        // Order-4 rotation has eigenvalues i and -i.
        let m = m2(0, -1, 1, 0);
        let eig = eigen_decomposition(&m, 4);
        assert_eq!(eig.len(), 2);
        for (lambda, basis) in &eig {
            for v in basis {
                let mv = m.apply(v);
                for (a, b) in mv.iter().zip(v.iter()) {
                    assert_eq!(*a, lambda * b);
                }
            }
        }
    }

    #[test]
    fn solve_consistent_system() {
        let m = m2(1, 1, 0, 1);
        let b = vec![CycNum::from_int(3), CycNum::from_int(2)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
    }
}
