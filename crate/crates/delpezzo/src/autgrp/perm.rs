//! Permutation and matrix model elements for reference groups.
//!
//! These carriers exist to build known abstract groups (symmetric,
//! dihedral, matrix groups over small rings) for isomorphism testing
//! against the surface automorphism groups.

use super::{ElemKey, GroupElement};
use crate::cyclo::matrix::CycMat;

/// Permutation of `0..n`, by image vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermElem(Vec<u32>);

impl PermElem {
    pub fn new(images: Vec<u32>) -> Self {
        let n = images.len() as u32;
        debug_assert!({
            let mut seen = vec![false; n as usize];
            images.iter().all(|&i| {
                i < n && !std::mem::replace(&mut seen[i as usize], true)
            })
        });
        PermElem(images)
    }

    pub fn identity(n: usize) -> Self {
        PermElem((0..n as u32).collect())
    }

    /// Permutation from disjoint cycles over `0..n`.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Self {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for cyc in cycles {
            for w in 0..cyc.len() {
                let from = cyc[w] as usize;
                let to = cyc[(w + 1) % cyc.len()];
                img[from] = to;
            }
        }
        PermElem(img)
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }
}

impl GroupElement for PermElem {
    fn then(&self, other: &Self) -> Self {
        // Apply self first, then other.
        PermElem(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }
    fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        PermElem(inv)
    }
    fn identity_like(&self) -> Self {
        PermElem::identity(self.0.len())
    }
    fn key(&self) -> ElemKey {
        let mut k = ElemKey::new();
        for &x in &self.0 {
            k.push_int(x as i64);
        }
        k
    }
}

/// Cyclotomic matrix with literal (non-projective) equality, for model
/// groups like dicyclic groups realized by `2x2` matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatElem(pub CycMat);

impl GroupElement for MatElem {
    fn then(&self, other: &Self) -> Self {
        MatElem(other.0.matmul(&self.0))
    }
    fn inverse(&self) -> Self {
        MatElem(self.0.inverse().expect("group element is invertible"))
    }
    fn identity_like(&self) -> Self {
        MatElem(CycMat::identity(self.0.rows))
    }
    fn key(&self) -> ElemKey {
        let mut k = ElemKey::new();
        k.push_mat(&self.0);
        k
    }
}

/// Square matrix over `Z/m` with unit determinant, for groups like
/// `GL_2(F_3)` or `GL_2(Z/4)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModMatElem {
    modulus: u64,
    n: usize,
    entries: Vec<u64>,
}

fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

impl ModMatElem {
    pub fn new(modulus: u64, n: usize, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), n * n);
        let entries = entries.into_iter().map(|x| x % modulus).collect();
        ModMatElem {
            modulus,
            n,
            entries,
        }
    }

    pub fn from_i64(modulus: u64, n: usize, entries: &[i64]) -> Self {
        Self::new(
            modulus,
            n,
            entries
                .iter()
                .map(|&x| x.rem_euclid(modulus as i64) as u64)
                .collect(),
        )
    }

    fn at(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.n + c]
    }

    /// Determinant in `Z/m` via cofactor expansion (sizes here are tiny).
    fn det(&self) -> u64 {
        fn det_rec(e: &[u64], n: usize, m: u64) -> i128 {
            if n == 1 {
                return e[0] as i128;
            }
            let mut acc: i128 = 0;
            for c in 0..n {
                let mut minor = Vec::with_capacity((n - 1) * (n - 1));
                for r in 1..n {
                    for cc in 0..n {
                        if cc != c {
                            minor.push(e[r * n + cc]);
                        }
                    }
                }
                let term = (e[c] as i128) * det_rec(&minor, n - 1, m);
                if c % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
                acc = acc.rem_euclid(m as i128);
            }
            acc
        }
        det_rec(&self.entries, self.n, self.modulus).rem_euclid(self.modulus as i128) as u64
    }

    /// True when the determinant is a unit mod `m`.
    pub fn is_invertible(&self) -> bool {
        mod_inv(self.det(), self.modulus).is_some()
    }
}

impl GroupElement for ModMatElem {
    fn then(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.n, other.n);
        let n = self.n;
        let m = self.modulus as u128;
        let mut entries = vec![0u64; n * n];
        for r in 0..n {
            for c in 0..n {
                let mut acc: u128 = 0;
                for k in 0..n {
                    // other o self.
                    acc += other.at(r, k) as u128 * self.at(k, c) as u128;
                }
                entries[r * n + c] = (acc % m) as u64;
            }
        }
        ModMatElem {
            modulus: self.modulus,
            n,
            entries,
        }
    }

    fn inverse(&self) -> Self {
        // Adjugate / det, entries reduced mod m.
        let n = self.n;
        let m = self.modulus;
        let det = self.det();
        let det_inv = mod_inv(det, m).expect("group element has unit determinant");
        let mut entries = vec![0u64; n * n];
        for r in 0..n {
            for c in 0..n {
                // Cofactor C_{c,r} for the adjugate.
                let mut minor = Vec::with_capacity((n - 1) * (n - 1));
                for rr in 0..n {
                    if rr == c {
                        continue;
                    }
                    for cc in 0..n {
                        if cc == r {
                            continue;
                        }
                        minor.push(self.at(rr, cc));
                    }
                }
                let sub = ModMatElem {
                    modulus: m,
                    n: n - 1,
                    entries: minor,
                };
                let cof = if n == 1 { 1 } else { sub.det() };
                let sign_neg = (r + c) % 2 == 1;
                let val = (cof as u128 * det_inv as u128 % m as u128) as u64;
                entries[r * n + c] = if sign_neg && val != 0 { m - val } else { val };
            }
        }
        ModMatElem {
            modulus: m,
            n,
            entries,
        }
    }

    fn identity_like(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            entries[i * n + i] = 1 % self.modulus;
        }
        ModMatElem {
            modulus: self.modulus,
            n,
            entries,
        }
    }

    fn key(&self) -> ElemKey {
        let mut k = ElemKey::new();
        k.push_int(self.modulus as i64);
        for &e in &self.entries {
            k.push_int(e as i64);
        }
        k
    }
}
