//! Reference constructions for small-group library identifiers.
//!
//! Group tables in this crate are labelled by `(order, id)` pairs
//! following the widely used small-group library numbering.  This
//! module builds reference copies of the identifiers that actually
//! occur in the bundled data, so a computed automorphism group can be
//! checked against its claimed label by exact isomorphism testing.
//! Identifiers outside the catalog are reported as
//! [`GapCheck::UnknownId`] rather than guessed.

use std::collections::BTreeMap;

use once_cell::sync::Lazy;

use super::abstract_group::AbstractGroup;
use super::closure::FiniteGroup;
use super::perm::{ModMatElem, PermElem};

/// Outcome of checking a computed group against a claimed label.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GapCheck {
    /// Order and isomorphism type both match the catalog entry.
    Confirmed,
    /// The computed order differs from the claimed one.
    OrderMismatch { claimed: u32, computed: u32 },
    /// Orders agree but the groups are not isomorphic.
    IsoMismatch,
    /// The label is not in the catalog; only the order was checked.
    UnknownId { order_matches: bool },
}

/// Checks a computed group against a claimed `(order, id)` label.
pub fn check_gap_id(g: &AbstractGroup, order: u32, id: u32) -> GapCheck {
    if g.order() as u32 != order {
        return GapCheck::OrderMismatch {
            claimed: order,
            computed: g.order() as u32,
        };
    }
    match reference_group(order, id) {
        None => GapCheck::UnknownId {
            order_matches: true,
        },
        Some(reference) => {
            if g.is_isomorphic(&reference) {
                GapCheck::Confirmed
            } else {
                GapCheck::IsoMismatch
            }
        }
    }
}

/// Builds the reference group for a catalog label, if present.
pub fn reference_group(order: u32, id: u32) -> Option<AbstractGroup> {
    CATALOG.get(&(order, id)).map(|e| (e.build)())
}

/// Human-readable structure name for a catalog label.
pub fn structure_name(order: u32, id: u32) -> Option<&'static str> {
    CATALOG.get(&(order, id)).map(|e| e.name)
}

pub fn catalog_labels() -> Vec<(u32, u32)> {
    CATALOG.keys().copied().collect()
}

struct Entry {
    name: &'static str,
    build: fn() -> AbstractGroup,
}

static CATALOG: Lazy<BTreeMap<(u32, u32), Entry>> = Lazy::new(|| {
    let mut m: BTreeMap<(u32, u32), Entry> = BTreeMap::new();
    let mut add = |order: u32, id: u32, name: &'static str, build: fn() -> AbstractGroup| {
        let prev = m.insert((order, id), Entry { name, build });
        assert!(prev.is_none(), "duplicate catalog label");
    };

    add(1, 1, "1", || cyclic(1));
    add(2, 1, "C2", || cyclic(2));
    add(3, 1, "C3", || cyclic(3));
    add(4, 1, "C4", || cyclic(4));
    add(4, 2, "C2^2", || elementary_abelian(2, 2));
    add(5, 1, "C5", || cyclic(5));
    add(6, 1, "S3", || dihedral(3));
    add(6, 2, "C6", || cyclic(6));
    add(7, 1, "C7", || cyclic(7));
    add(8, 1, "C8", || cyclic(8));
    add(8, 2, "C4 x C2", || direct_product(&cyclic(4), &cyclic(2)));
    add(8, 3, "D4", || dihedral(4));
    add(8, 4, "Q8", || dicyclic(2));
    add(8, 5, "C2^3", || elementary_abelian(2, 3));
    add(9, 1, "C9", || cyclic(9));
    add(9, 2, "C3^2", || elementary_abelian(3, 2));
    add(10, 1, "D5", || dihedral(5));
    add(10, 2, "C10", || cyclic(10));
    add(11, 1, "C11", || cyclic(11));
    add(12, 1, "Dic3", || dicyclic(3));
    add(12, 2, "C12", || cyclic(12));
    add(12, 3, "A4", || alternating4());
    add(12, 4, "D6", || dihedral(6));
    add(12, 5, "C6 x C2", || direct_product(&cyclic(6), &cyclic(2)));
    add(13, 1, "C13", || cyclic(13));
    add(14, 1, "D7", || dihedral(7));
    add(14, 2, "C14", || cyclic(14));
    add(15, 1, "C15", || cyclic(15));
    add(16, 1, "C16", || cyclic(16));
    add(16, 2, "C4^2", || direct_product(&cyclic(4), &cyclic(4)));
    add(16, 3, "(C2^2) : C4", || klein_by_c4());
    add(16, 4, "C4 : C4", || semidirect_cyclic(4, 4, 3));
    add(16, 5, "C8 x C2", || direct_product(&cyclic(8), &cyclic(2)));
    add(16, 6, "C8 : C2 (modular)", || semidirect_cyclic(8, 2, 5));
    add(16, 7, "D8", || dihedral(8));
    add(16, 8, "SD16", || semidirect_cyclic(8, 2, 3));
    add(16, 9, "Q16", || dicyclic(4));
    add(16, 10, "C4 x C2^2", || {
        direct_product(&cyclic(4), &elementary_abelian(2, 2))
    });
    add(16, 11, "D4 x C2", || direct_product(&dihedral(4), &cyclic(2)));
    add(16, 12, "Q8 x C2", || direct_product(&dicyclic(2), &cyclic(2)));
    add(16, 13, "D4 o C4 (Pauli)", || pauli_group());
    add(16, 14, "C2^4", || elementary_abelian(2, 4));
    add(18, 1, "D9", || dihedral(9));
    add(18, 2, "C18", || cyclic(18));
    add(18, 3, "C3 x S3", || direct_product(&cyclic(3), &dihedral(3)));
    add(18, 4, "(C3^2) : C2", || generalized_dihedral_c3c3());
    add(18, 5, "C6 x C3", || direct_product(&cyclic(6), &cyclic(3)));
    add(20, 1, "Dic5", || dicyclic(5));
    add(20, 2, "C20", || cyclic(20));
    add(20, 3, "C5 : C4", || semidirect_cyclic(5, 4, 2));
    add(20, 4, "D10", || dihedral(10));
    add(20, 5, "C10 x C2", || direct_product(&cyclic(10), &cyclic(2)));
    add(21, 1, "C7 : C3", || semidirect_cyclic(7, 3, 2));
    add(21, 2, "C21", || cyclic(21));
    add(22, 1, "D11", || dihedral(11));
    add(22, 2, "C22", || cyclic(22));
    add(24, 1, "C3 : C8", || semidirect_cyclic(3, 8, 2));
    add(24, 2, "C24", || cyclic(24));
    add(24, 3, "SL(2,3)", || sl2_3());
    add(24, 4, "Dic6", || dicyclic(6));
    add(24, 5, "C4 x S3", || direct_product(&cyclic(4), &dihedral(3)));
    add(24, 6, "D12", || dihedral(12));
    add(24, 7, "C2 x Dic3", || direct_product(&cyclic(2), &dicyclic(3)));
    add(24, 9, "C12 x C2", || direct_product(&cyclic(12), &cyclic(2)));
    add(24, 10, "C3 x D4", || direct_product(&cyclic(3), &dihedral(4)));
    add(24, 11, "C3 x Q8", || direct_product(&cyclic(3), &dicyclic(2)));
    add(24, 12, "S4", || symmetric(4));
    add(24, 13, "C2 x A4", || direct_product(&cyclic(2), &alternating4()));
    add(24, 14, "C2^2 x S3", || {
        direct_product(&elementary_abelian(2, 2), &dihedral(3))
    });
    add(24, 15, "C2^3 x C3", || {
        direct_product(&elementary_abelian(2, 3), &cyclic(3))
    });
    add(25, 1, "C25", || cyclic(25));
    add(25, 2, "C5^2", || elementary_abelian(5, 2));
    add(27, 1, "C27", || cyclic(27));
    add(27, 2, "C9 x C3", || direct_product(&cyclic(9), &cyclic(3)));
    add(27, 3, "He3", || heisenberg3());
    add(27, 4, "C9 : C3", || semidirect_cyclic(9, 3, 4));
    add(27, 5, "C3^3", || elementary_abelian(3, 3));
    add(30, 1, "C5 x S3", || direct_product(&cyclic(5), &dihedral(3)));
    add(30, 2, "C3 x D5", || direct_product(&cyclic(3), &dihedral(5)));
    add(30, 3, "D15", || dihedral(15));
    add(30, 4, "C30", || cyclic(30));
    add(36, 10, "S3 x S3", || direct_product(&dihedral(3), &dihedral(3)));
    add(36, 12, "C6 x S3", || direct_product(&cyclic(6), &dihedral(3)));
    add(48, 29, "GL(2,3)", || gl2_3());
    add(48, 48, "C2 x S4", || direct_product(&cyclic(2), &symmetric(4)));
    add(60, 5, "A5", || alternating5());
    add(96, 195, "GL(2,Z/4)", || gl2_z4());
    add(120, 34, "S5", || symmetric(5));
    add(168, 42, "PSL(2,7)", || psl2_7());
    add(336, 208, "PGL(2,7)", || pgl2_7());

    m
});

/// Cyclic group of order `n` as a bare table.
pub fn cyclic(n: usize) -> AbstractGroup {
    let mut mult = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            mult[i * n + j] = ((i + j) % n) as u32;
        }
    }
    AbstractGroup::from_table(n, mult)
}

/// Dihedral group of order `2n` (symmetries of the regular `n`-gon).
pub fn dihedral(n: usize) -> AbstractGroup {
    let size = 2 * n;
    let idx = |i: usize, e: usize| e * n + i;
    let mut mult = vec![0u32; size * size];
    for i1 in 0..n {
        for e1 in 0..2 {
            for i2 in 0..n {
                for e2 in 0..2 {
                    // (r^i1 f^e1)(r^i2 f^e2) = r^(i1 +/- i2) f^(e1+e2).
                    let i = if e1 == 0 {
                        (i1 + i2) % n
                    } else {
                        (i1 + n - i2 % n) % n
                    };
                    let e = (e1 + e2) % 2;
                    mult[idx(i1, e1) * size + idx(i2, e2)] = idx(i, e) as u32;
                }
            }
        }
    }
    AbstractGroup::from_table(size, mult)
}

/// Dicyclic group of order `4n`: `a^(2n) = 1`, `b^2 = a^n`,
/// `b a b^(-1) = a^(-1)`.  `dicyclic(2)` is the quaternion group.
pub fn dicyclic(n: usize) -> AbstractGroup {
    let two_n = 2 * n;
    let size = 4 * n;
    let idx = |i: usize, j: usize| j * two_n + i;
    let mut mult = vec![0u32; size * size];
    for i1 in 0..two_n {
        for j1 in 0..2 {
            for i2 in 0..two_n {
                for j2 in 0..2 {
                    let (i, j) = if j1 == 0 {
                        ((i1 + i2) % two_n, j2)
                    } else if j2 == 0 {
                        ((i1 + two_n - i2 % two_n) % two_n, 1)
                    } else {
                        // b a^i2 b = a^(-i2) b^2 = a^(n - i2).
                        ((i1 + two_n - i2 % two_n + n) % two_n, 0)
                    };
                    mult[idx(i1, j1) * size + idx(i2, j2)] = idx(i, j) as u32;
                }
            }
        }
    }
    AbstractGroup::from_table(size, mult)
}

/// Elementary abelian group of order `p^k`.
pub fn elementary_abelian(p: usize, k: usize) -> AbstractGroup {
    let n = p.pow(k as u32);
    let mut mult = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            // Digitwise addition mod p.
            let mut x = a;
            let mut y = b;
            let mut s = 0usize;
            let mut place = 1usize;
            for _ in 0..k {
                s += ((x % p) + (y % p)) % p * place;
                x /= p;
                y /= p;
                place *= p;
            }
            mult[a * n + b] = s as u32;
        }
    }
    AbstractGroup::from_table(n, mult)
}

/// Direct product on index pairs `a * |B| + b`.
pub fn direct_product(a: &AbstractGroup, b: &AbstractGroup) -> AbstractGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut mult = vec![0u32; n * n];
    for a1 in 0..na {
        for b1 in 0..nb {
            for a2 in 0..na {
                for b2 in 0..nb {
                    let i = a1 * nb + b1;
                    let j = a2 * nb + b2;
                    mult[i * n + j] = (a.mul(a1, a2) * nb + b.mul(b1, b2)) as u32;
                }
            }
        }
    }
    AbstractGroup::from_table(n, mult)
}

/// Semidirect product `C_n : C_m` where the chosen generator of `C_m`
/// acts on `C_n` by raising to the `k`-th power (`k^m = 1 mod n`).
pub fn semidirect_cyclic(n: usize, m: usize, k: usize) -> AbstractGroup {
    assert_eq!(mod_pow(k, m, n), 1 % n, "action must have order dividing m");
    let size = n * m;
    let idx = |a: usize, b: usize| b * n + a;
    let mut mult = vec![0u32; size * size];
    for a1 in 0..n {
        for b1 in 0..m {
            let twist = mod_pow(k, b1, n);
            for a2 in 0..n {
                for b2 in 0..m {
                    // (a1, b1)(a2, b2) = (a1 + k^b1 a2, b1 + b2).
                    let a = (a1 + twist * a2) % n;
                    let b = (b1 + b2) % m;
                    mult[idx(a1, b1) * size + idx(a2, b2)] = idx(a, b) as u32;
                }
            }
        }
    }
    AbstractGroup::from_table(size, mult)
}

fn mod_pow(mut base: usize, mut exp: usize, modulus: usize) -> usize {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1usize;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// `(C2 x C2) : C4` with the order-4 generator swapping the two
/// factors through its quotient of order 2.
fn klein_by_c4() -> AbstractGroup {
    let n = 16;
    // Element (v, b): v in F2^2 (0..4, bits), b in Z4.
    let idx = |v: usize, b: usize| b * 4 + v;
    let swap = |v: usize| (v >> 1) | ((v & 1) << 1);
    let mut mult = vec![0u32; n * n];
    for v1 in 0..4 {
        for b1 in 0..4 {
            for v2 in 0..4 {
                for b2 in 0..4 {
                    let tv2 = if b1 % 2 == 1 { swap(v2) } else { v2 };
                    let v = v1 ^ tv2;
                    let b = (b1 + b2) % 4;
                    mult[idx(v1, b1) * n + idx(v2, b2)] = idx(v, b) as u32;
                }
            }
        }
    }
    AbstractGroup::from_table(n, mult)
}

/// Central product of D4 and C4 over their common center: the group
/// `<X, Z, c>` with `X^2 = Z^2 = 1`, `c` central of order 4, and
/// `Z X = X Z c^2`.  Elements are written `X^x Z^z c^k`.
fn pauli_group() -> AbstractGroup {
    let n = 16;
    let idx = |x: usize, z: usize, k: usize| (k * 2 + z) * 2 + x;
    let mut mult = vec![0u32; n * n];
    for x1 in 0..2 {
        for z1 in 0..2 {
            for k1 in 0..4 {
                for x2 in 0..2 {
                    for z2 in 0..2 {
                        for k2 in 0..4 {
                            // Moving X^x2 left past Z^z1 picks up c^(2 z1 x2).
                            let x = (x1 + x2) % 2;
                            let z = (z1 + z2) % 2;
                            let k = (k1 + k2 + 2 * z1 * x2) % 4;
                            mult[idx(x1, z1, k1) * n + idx(x2, z2, k2)] =
                                idx(x, z, k) as u32;
                        }
                    }
                }
            }
        }
    }
    AbstractGroup::from_table(n, mult)
}

/// Generalized dihedral group over `C3 x C3` (inversion on both
/// coordinates).
fn generalized_dihedral_c3c3() -> AbstractGroup {
    let n = 18;
    let idx = |a: usize, b: usize, e: usize| e * 9 + b * 3 + a;
    let mut mult = vec![0u32; n * n];
    for a1 in 0..3 {
        for b1 in 0..3 {
            for e1 in 0..2 {
                for a2 in 0..3 {
                    for b2 in 0..3 {
                        for e2 in 0..2 {
                            let (ta2, tb2) = if e1 == 1 {
                                ((3 - a2) % 3, (3 - b2) % 3)
                            } else {
                                (a2, b2)
                            };
                            let a = (a1 + ta2) % 3;
                            let b = (b1 + tb2) % 3;
                            let e = (e1 + e2) % 2;
                            mult[idx(a1, b1, e1) * n + idx(a2, b2, e2)] =
                                idx(a, b, e) as u32;
                        }
                    }
                }
            }
        }
    }
    AbstractGroup::from_table(n, mult)
}

/// Heisenberg group of order 27 (extraspecial, exponent 3).
fn heisenberg3() -> AbstractGroup {
    let n = 27;
    let idx = |a: usize, b: usize, c: usize| c * 9 + b * 3 + a;
    let mut mult = vec![0u32; n * n];
    for a1 in 0..3 {
        for b1 in 0..3 {
            for c1 in 0..3 {
                for a2 in 0..3 {
                    for b2 in 0..3 {
                        for c2 in 0..3 {
                            let a = (a1 + a2) % 3;
                            let b = (b1 + b2) % 3;
                            let c = (c1 + c2 + a1 * b2) % 3;
                            mult[idx(a1, b1, c1) * n + idx(a2, b2, c2)] =
                                idx(a, b, c) as u32;
                        }
                    }
                }
            }
        }
    }
    AbstractGroup::from_table(n, mult)
}

fn perm_group(degree: usize, cycles: &[&[u32]]) -> AbstractGroup {
    let gens: Vec<PermElem> = cycles
        .iter()
        .map(|c| PermElem::from_cycles(degree, &[c.to_vec()]))
        .collect();
    FiniteGroup::generate(&gens)
        .expect("permutation generators close to a finite group")
        .abstract_group()
}

fn perm_group_multi(degree: usize, gens: &[Vec<Vec<u32>>]) -> AbstractGroup {
    let gens: Vec<PermElem> = gens
        .iter()
        .map(|cycles| PermElem::from_cycles(degree, cycles))
        .collect();
    FiniteGroup::generate(&gens)
        .expect("permutation generators close to a finite group")
        .abstract_group()
}

pub fn symmetric(n: usize) -> AbstractGroup {
    let transposition: &[u32] = &[0, 1];
    let cycle: Vec<u32> = (0..n as u32).collect();
    perm_group(n, &[transposition, &cycle])
}

fn alternating4() -> AbstractGroup {
    perm_group_multi(4, &[vec![vec![0, 1, 2]], vec![vec![0, 1], vec![2, 3]]])
}

fn alternating5() -> AbstractGroup {
    perm_group_multi(5, &[vec![vec![0, 1, 2, 3, 4]], vec![vec![0, 1, 2]]])
}

/// PSL(2,7) acting on the projective line over F7 (8 points, the
/// eighth being infinity).
fn psl2_7() -> AbstractGroup {
    perm_group_multi(
        8,
        &[
            vec![vec![0, 1, 2, 3, 4, 5, 6]],
            vec![vec![0, 7], vec![1, 6], vec![2, 3], vec![4, 5]],
        ],
    )
}

fn pgl2_7() -> AbstractGroup {
    perm_group_multi(
        8,
        &[
            vec![vec![0, 1, 2, 3, 4, 5, 6]],
            vec![vec![0, 7], vec![1, 6], vec![2, 3], vec![4, 5]],
            // x -> 3x: 1 -> 3 -> 2 -> 6 -> 4 -> 5 -> 1.
            vec![vec![1, 3, 2, 6, 4, 5]],
        ],
    )
}

fn mod_mat_group(modulus: u64, gens: &[[i64; 4]]) -> AbstractGroup {
    let gens: Vec<ModMatElem> = gens
        .iter()
        .map(|g| ModMatElem::from_i64(modulus, 2, &g[..]))
        .collect();
    FiniteGroup::generate(&gens)
        .expect("matrix generators close to a finite group")
        .abstract_group()
}

fn sl2_3() -> AbstractGroup {
    mod_mat_group(3, &[[1, 1, 0, 1], [1, 0, 1, 1]])
}

fn gl2_3() -> AbstractGroup {
    mod_mat_group(3, &[[1, 1, 0, 1], [1, 0, 1, 1], [2, 0, 0, 1]])
}

fn gl2_z4() -> AbstractGroup {
    mod_mat_group(4, &[[1, 1, 0, 1], [1, 0, 1, 1], [3, 0, 0, 1], [0, 1, 1, 0]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders_match_labels() {
        for (order, id) in catalog_labels() {
            let g = reference_group(order, id).unwrap();
            assert_eq!(
                g.order() as u32,
                order,
                "catalog entry ({order},{id}) has wrong order"
            );
        }
    }

    #[test]
    fn catalog_entries_of_equal_order_are_distinct() {
        let labels = catalog_labels();
        for (i, &(o1, id1)) in labels.iter().enumerate() {
            for &(o2, id2) in &labels[i + 1..] {
                if o1 != o2 || o1 > 30 {
                    continue;
                }
                let a = reference_group(o1, id1).unwrap();
                let b = reference_group(o2, id2).unwrap();
                assert!(
                    !a.is_isomorphic(&b),
                    "catalog entries ({o1},{id1}) and ({o2},{id2}) are isomorphic"
                );
            }
        }
    }

    #[test]
    fn named_groups_have_expected_structure() {
        let q8 = reference_group(8, 4).unwrap();
        let involutions = q8
            .element_orders()
            .iter()
            .filter(|&&o| o == 2)
            .count();
        assert_eq!(involutions, 1, "Q8 has a unique involution");

        let sl23 = reference_group(24, 3).unwrap();
        assert_eq!(sl23.center().len(), 2);
        assert_eq!(sl23.abelian_invariants(), vec![3]);

        let gl23 = reference_group(48, 29).unwrap();
        assert_eq!(gl23.order(), 48);
        assert_eq!(gl23.derived_subgroup().len(), 24);

        let psl = reference_group(168, 42).unwrap();
        assert_eq!(psl.order(), 168);
        assert_eq!(psl.derived_subgroup().len(), 168, "PSL(2,7) is perfect");

        let pgl = reference_group(336, 208).unwrap();
        assert_eq!(pgl.order(), 336);
        assert_eq!(pgl.abelian_invariants(), vec![2]);

        let g96 = reference_group(96, 195).unwrap();
        assert_eq!(g96.order(), 96);
        assert_eq!(g96.center().len(), 2);

        let pauli = reference_group(16, 13).unwrap();
        assert_eq!(pauli.center().len(), 4);
        let exponent2 = pauli
            .element_orders()
            .iter()
            .filter(|&&o| o <= 2)
            .count();
        // D4 o C4 has 8 elements of order dividing 2 and center C4.
        assert_eq!(exponent2, 8);
    }

    #[test]
    fn check_reports_each_outcome() {
        let s4 = symmetric(4);
        assert_eq!(check_gap_id(&s4, 24, 12), GapCheck::Confirmed);
        assert_eq!(
            check_gap_id(&s4, 12, 3),
            GapCheck::OrderMismatch {
                claimed: 12,
                computed: 24
            }
        );
        assert_eq!(check_gap_id(&s4, 24, 13), GapCheck::IsoMismatch);
        assert_eq!(
            check_gap_id(&s4, 24, 8),
            GapCheck::UnknownId {
                order_matches: true
            }
        );
    }

    #[test]
    fn dihedral_and_dicyclic_tables_are_consistent() {
        assert_eq!(dihedral(6).order(), 12);
        assert!(!dihedral(6).is_abelian());
        assert_eq!(dicyclic(3).order(), 12);
        // Dic3 has a unique involution; D6 has seven.
        let count = |g: &AbstractGroup| {
            g.element_orders().iter().filter(|&&o| o == 2).count()
        };
        assert_eq!(count(&dicyclic(3)), 1);
        assert_eq!(count(&dihedral(6)), 7);
    }
}
