//! Abstract group analysis on multiplication tables.
//!
//! An [`AbstractGroup`] is a full multiplication table over element
//! indices plus cached structural data: element orders, conjugacy
//! classes, center, derived series, abelian invariants.  On top of the
//! table sit exact isomorphism testing by generator-image backtracking,
//! enumeration of the full automorphism group, quotients, and a
//! join-closure enumeration of all subgroups.

use std::collections::{BTreeMap, BTreeSet};

use once_cell::sync::OnceCell;

use super::perm::PermElem;
use super::AutError;

/// Finite group given by its multiplication table.
#[derive(Debug)]
pub struct AbstractGroup {
    n: usize,
    mult: Vec<u32>,
    id: usize,
    inverses: OnceCell<Vec<u32>>,
    orders: OnceCell<Vec<u32>>,
    classes: OnceCell<Vec<Vec<usize>>>,
    class_of: OnceCell<Vec<usize>>,
    fingerprint: OnceCell<Fingerprint>,
}

impl Clone for AbstractGroup {
    fn clone(&self) -> Self {
        AbstractGroup::from_table(self.n, self.mult.clone())
    }
}

/// Cheap-to-compare structural summary used to rule out isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Fingerprint {
    pub order: u32,
    pub order_histogram: Vec<(u32, u32)>,
    pub abelian_invariants: Vec<u32>,
    pub center_order: u32,
    pub derived_series_orders: Vec<u32>,
    pub class_size_histogram: Vec<(u32, u32)>,
}

impl AbstractGroup {
    /// Builds from a flat row-major table `mult[i*n + j] = i * j`
    /// (apply `i` first, then `j`; any consistent convention works).
    pub fn from_table(n: usize, mult: Vec<u32>) -> Self {
        assert_eq!(mult.len(), n * n);
        let id = (0..n)
            .find(|&e| (0..n).all(|x| mult[e * n + x] as usize == x && mult[x * n + e] as usize == x))
            .expect("multiplication table has an identity");
        AbstractGroup {
            n,
            mult,
            id,
            inverses: OnceCell::new(),
            orders: OnceCell::new(),
            classes: OnceCell::new(),
            class_of: OnceCell::new(),
            fingerprint: OnceCell::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses()[a] as usize
    }

    fn inverses(&self) -> &Vec<u32> {
        self.inverses.get_or_init(|| {
            let mut inv = vec![0u32; self.n];
            for a in 0..self.n {
                let b = (0..self.n)
                    .find(|&b| self.mul(a, b) == self.id)
                    .expect("every element has an inverse");
                inv[a] = b as u32;
            }
            inv
        })
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.element_orders()[a]
    }

    pub fn element_orders(&self) -> &Vec<u32> {
        self.orders.get_or_init(|| {
            (0..self.n)
                .map(|a| {
                    let mut x = a;
                    let mut k = 1u32;
                    while x != self.id {
                        x = self.mul(x, a);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn order_histogram(&self) -> Vec<(u32, u32)> {
        let mut h: BTreeMap<u32, u32> = BTreeMap::new();
        for &o in self.element_orders() {
            *h.entry(o).or_insert(0) += 1;
        }
        h.into_iter().collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugacy_classes(&self) -> &Vec<Vec<usize>> {
        self.classes.get_or_init(|| {
            let mut seen = vec![false; self.n];
            let mut classes = Vec::new();
            for x in 0..self.n {
                if seen[x] {
                    continue;
                }
                let mut class = Vec::new();
                for g in 0..self.n {
                    let y = self.mul(self.mul(self.inv(g), x), g);
                    if !seen[y] {
                        seen[y] = true;
                        class.push(y);
                    }
                }
                class.sort_unstable();
                classes.push(class);
            }
            classes
        })
    }

    pub fn class_of(&self) -> &Vec<usize> {
        self.class_of.get_or_init(|| {
            let classes = self.conjugacy_classes();
            let mut map = vec![0usize; self.n];
            for (ci, class) in classes.iter().enumerate() {
                for &x in class {
                    map[x] = ci;
                }
            }
            map
        })
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| (0..self.n).all(|g| self.mul(x, g) == self.mul(g, x)))
            .collect()
    }

    /// Closure of a seed set under multiplication (and inverses, which
    /// follow from finiteness).
    pub fn subgroup_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_sub = vec![false; self.n];
        in_sub[self.id] = true;
        let mut elems = vec![self.id];
        let mut frontier = vec![self.id];
        let gens: Vec<usize> = seed.to_vec();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !in_sub[y] {
                    in_sub[y] = true;
                    elems.push(y);
                    frontier.push(y);
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms = BTreeSet::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.mul(
                    self.mul(self.inv(a), self.inv(b)),
                    self.mul(a, b),
                );
                comms.insert(c);
            }
        }
        let seed: Vec<usize> = comms.into_iter().collect();
        self.subgroup_closure(&seed)
    }

    pub fn derived_series(&self) -> Vec<Vec<usize>> {
        let mut series = vec![(0..self.n).collect::<Vec<_>>()];
        loop {
            let last = series.last().unwrap();
            let (sub, _) = self.subgroup_table(last);
            let derived_local = sub.derived_subgroup();
            let derived: Vec<usize> = derived_local.iter().map(|&i| last[i]).collect();
            if derived.len() == last.len() {
                break;
            }
            let stop = derived.len() == 1;
            series.push(derived);
            if stop {
                break;
            }
        }
        series
    }

    /// The abstract group structure of a subgroup, with the index map
    /// back into this group.
    pub fn subgroup_table(&self, elems: &[usize]) -> (AbstractGroup, Vec<usize>) {
        let mut pos = BTreeMap::new();
        for (i, &e) in elems.iter().enumerate() {
            pos.insert(e, i);
        }
        let m = elems.len();
        let mut mult = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                let p = self.mul(elems[i], elems[j]);
                mult[i * m + j] = *pos
                    .get(&p)
                    .expect("subgroup closure must contain products") as u32;
            }
        }
        (AbstractGroup::from_table(m, mult), elems.to_vec())
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        for &x in elems {
            for g in 0..self.n {
                let y = self.mul(self.mul(self.inv(g), x), g);
                if !set.contains(&y) {
                    return false;
                }
            }
        }
        true
    }

    /// Quotient by a normal subgroup: the quotient table and the coset
    /// projection for each element.
    pub fn quotient(&self, normal: &[usize]) -> (AbstractGroup, Vec<usize>) {
        debug_assert!(self.is_normal(normal));
        let mut coset_rep = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n {
            if coset_rep[x] != usize::MAX {
                continue;
            }
            let r = reps.len();
            for &h in normal {
                coset_rep[self.mul(x, h)] = r;
            }
            reps.push(x);
        }
        let m = reps.len();
        let mut mult = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                mult[i * m + j] = coset_rep[self.mul(reps[i], reps[j])] as u32;
            }
        }
        (AbstractGroup::from_table(m, mult), coset_rep)
    }

    /// Invariant factors `d_1 | d_2 | ...` of the abelianization.
    pub fn abelian_invariants(&self) -> Vec<u32> {
        let derived = self.derived_subgroup();
        let (ab, _) = self.quotient(&derived);
        abelian_invariant_factors(&ab)
    }

    pub fn centralizer(&self, elems: &[usize]) -> Vec<usize> {
        (0..self.n)
            .filter(|&g| elems.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect()
    }

    pub fn normalizer(&self, sub: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = sub.iter().copied().collect();
        (0..self.n)
            .filter(|&g| {
                sub.iter()
                    .all(|&x| set.contains(&self.mul(self.mul(self.inv(g), x), g)))
            })
            .collect()
    }

    /// All subgroups by join closure from cyclic subgroups; errors out
    /// past `cap` subgroups.
    pub fn all_subgroups(&self, cap: usize) -> Result<Vec<Vec<usize>>, AutError> {
        let mut cyclics: BTreeSet<Vec<usize>> = BTreeSet::new();
        for x in 0..self.n {
            cyclics.insert(self.subgroup_closure(&[x]));
        }
        let cyclics: Vec<Vec<usize>> = cyclics.into_iter().collect();
        let mut known: BTreeSet<Vec<usize>> = cyclics.iter().cloned().collect();
        let mut frontier: Vec<Vec<usize>> = cyclics.clone();
        while let Some(h) = frontier.pop() {
            for c in &cyclics {
                if c.iter().all(|x| h.binary_search(x).is_ok()) {
                    continue;
                }
                let mut seed = h.clone();
                seed.extend_from_slice(c);
                let j = self.subgroup_closure(&seed);
                if !known.contains(&j) {
                    if known.len() >= cap {
                        return Err(AutError::ClosureCap { cap });
                    }
                    known.insert(j.clone());
                    frontier.push(j);
                }
            }
        }
        Ok(known.into_iter().collect())
    }

    /// Subgroups of index at most `max_index`.
    pub fn subgroups_of_index_at_most(
        &self,
        max_index: usize,
        cap: usize,
    ) -> Result<Vec<Vec<usize>>, AutError> {
        let all = self.all_subgroups(cap)?;
        Ok(all
            .into_iter()
            .filter(|h| self.n / h.len() <= max_index)
            .collect())
    }

    pub fn fingerprint(&self) -> &Fingerprint {
        self.fingerprint.get_or_init(|| {
            let mut class_hist: BTreeMap<u32, u32> = BTreeMap::new();
            for c in self.conjugacy_classes() {
                *class_hist.entry(c.len() as u32).or_insert(0) += 1;
            }
            Fingerprint {
                order: self.n as u32,
                order_histogram: self.order_histogram(),
                abelian_invariants: self.abelian_invariants(),
                center_order: self.center().len() as u32,
                derived_series_orders: self
                    .derived_series()
                    .iter()
                    .map(|s| s.len() as u32)
                    .collect(),
                class_size_histogram: class_hist.into_iter().collect(),
            }
        })
    }

    /// Per-element invariant preserved by isomorphisms, for candidate
    /// filtering.
    fn element_invariant(&self, x: usize) -> (u32, u32, u32) {
        let order = self.element_order(x);
        let class_size = self.conjugacy_classes()[self.class_of()[x]].len() as u32;
        let centralizer = self.centralizer(&[x]).len() as u32;
        (order, class_size, centralizer)
    }

    /// A short generating sequence, preferring elements whose
    /// invariants are rare (to keep isomorphism search narrow).
    pub fn generating_sequence(&self) -> Vec<usize> {
        let mut inv_count: BTreeMap<(u32, u32, u32), u32> = BTreeMap::new();
        for x in 0..self.n {
            *inv_count.entry(self.element_invariant(x)).or_insert(0) += 1;
        }
        let mut order: Vec<usize> = (1..self.n).collect();
        order.sort_by_key(|&x| {
            let inv = self.element_invariant(x);
            (inv_count[&inv], std::cmp::Reverse(inv.0), x as u32)
        });
        let mut gens = Vec::new();
        let mut closure = vec![self.id];
        for x in order {
            if closure.binary_search(&x).is_ok() {
                continue;
            }
            gens.push(x);
            let mut seed = gens.clone();
            seed.push(self.id);
            closure = self.subgroup_closure(&seed);
            if closure.len() == self.n {
                break;
            }
        }
        gens
    }

    /// Searches for an isomorphism onto `other`, returned as the image
    /// of each element index.
    pub fn isomorphism(&self, other: &AbstractGroup) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        if self.fingerprint() != other.fingerprint() {
            return None;
        }
        let gens = self.generating_sequence();
        // Candidate images per generator, filtered by invariants.
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let inv = self.element_invariant(g);
                (0..other.n)
                    .filter(|&c| other.element_invariant(c) == inv)
                    .collect()
            })
            .collect();
        let mut img = vec![usize::MAX; self.n];
        let mut used = vec![false; other.n];
        img[self.id] = other.id;
        used[other.id] = true;
        let mut mapped = vec![self.id];
        self.extend_iso(other, &gens, &candidates, 0, &mut img, &mut used, &mut mapped)
            .then(|| img.iter().map(|&x| x).collect())
    }

    /// Depth-first extension of a partial isomorphism.
    #[allow(clippy::too_many_arguments)]
    fn extend_iso(
        &self,
        other: &AbstractGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        k: usize,
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        mapped: &mut Vec<usize>,
    ) -> bool {
        if k == gens.len() {
            return mapped.len() == self.n;
        }
        let g = gens[k];
        for &c in &candidates[k] {
            if used[c] {
                continue;
            }
            // Tentatively map g -> c and close under the known maps.
            let mut added: Vec<usize> = Vec::new();
            img[g] = c;
            used[c] = true;
            added.push(g);
            mapped.push(g);
            let mut ok = true;
            let mut cursor = 0usize;
            let active_gens: Vec<usize> = gens[..=k].to_vec();
            while ok && cursor < mapped.len() {
                let x = mapped[cursor];
                cursor += 1;
                for &h in &active_gens {
                    let y = self.mul(x, h);
                    let y_img = other.mul(img[x], img[h]);
                    if img[y] == usize::MAX {
                        if used[y_img] {
                            ok = false;
                            break;
                        }
                        img[y] = y_img;
                        used[y_img] = true;
                        added.push(y);
                        mapped.push(y);
                    } else if img[y] != y_img {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                // Also verify products of mapped elements against the
                // generator-closure: x*y for x,y mapped is determined by
                // words in gens, so generator consistency suffices.
                if self.extend_iso(other, gens, candidates, k + 1, img, used, mapped) {
                    return true;
                }
            }
            for &a in added.iter().rev() {
                used[img[a]] = false;
                img[a] = usize::MAX;
                mapped.pop();
            }
        }
        false
    }

    pub fn is_isomorphic(&self, other: &AbstractGroup) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Enumerates every automorphism, as permutations of the element
    /// indices.
    pub fn automorphisms(&self) -> Vec<PermElem> {
        let gens = self.generating_sequence();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let inv = self.element_invariant(g);
                (0..self.n)
                    .filter(|&c| self.element_invariant(c) == inv)
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut img = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        img[self.id] = self.id;
        used[self.id] = true;
        let mut mapped = vec![self.id];
        self.collect_autos(&gens, &candidates, 0, &mut img, &mut used, &mut mapped, &mut out);
        out.sort_by_key(|p| p.images().to_vec());
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn collect_autos(
        &self,
        gens: &[usize],
        candidates: &[Vec<usize>],
        k: usize,
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        mapped: &mut Vec<usize>,
        out: &mut Vec<PermElem>,
    ) {
        if k == gens.len() {
            if mapped.len() == self.n {
                out.push(PermElem::new(img.iter().map(|&x| x as u32).collect()));
            }
            return;
        }
        let g = gens[k];
        for ci in 0..candidates[k].len() {
            let c = candidates[k][ci];
            if used[c] {
                continue;
            }
            let mut added: Vec<usize> = Vec::new();
            img[g] = c;
            used[c] = true;
            added.push(g);
            mapped.push(g);
            let mut ok = true;
            let mut cursor = 0usize;
            let active_gens: Vec<usize> = gens[..=k].to_vec();
            while ok && cursor < mapped.len() {
                let x = mapped[cursor];
                cursor += 1;
                for &h in &active_gens {
                    let y = self.mul(x, h);
                    let y_img = self.mul(img[x], img[h]);
                    if img[y] == usize::MAX {
                        if used[y_img] {
                            ok = false;
                            break;
                        }
                        img[y] = y_img;
                        used[y_img] = true;
                        added.push(y);
                        mapped.push(y);
                    } else if img[y] != y_img {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                self.collect_autos(gens, candidates, k + 1, img, used, mapped, out);
            }
            for &a in added.iter().rev() {
                used[img[a]] = false;
                img[a] = usize::MAX;
                mapped.pop();
            }
        }
    }

    /// Conjugation by `g` as a permutation of element indices.
    pub fn inner_automorphism(&self, g: usize) -> PermElem {
        PermElem::new(
            (0..self.n)
                .map(|x| self.mul(self.mul(self.inv(g), x), g) as u32)
                .collect(),
        )
    }
}

/// Invariant factors of a finite abelian group from its order
/// statistics: for each prime, the partition is recovered from the
/// counts of elements of order dividing `p^j`.
fn abelian_invariant_factors(g: &AbstractGroup) -> Vec<u32> {
    assert!(g.is_abelian());
    let n = g.order() as u32;
    if n == 1 {
        return Vec::new();
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2u32;
    while p * p <= m {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    // For each prime, the multiset of exponents of the cyclic factors.
    let mut primary: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &p in &primes {
        let orders = g.element_orders();
        let mut f = vec![0u32]; // f[j] = log_p #{x : x^{p^j} = id} = sum_i min(lambda_i, j).
        let mut j = 1usize;
        loop {
            let pj = p.checked_pow(j as u32).expect("group order is small");
            let count = orders.iter().filter(|&&o| pj % o == 0).count() as u32;
            let mut log = 0u32;
            let mut c = count;
            while c > 1 {
                assert_eq!(c % p, 0, "subgroup count must be a power of p");
                c /= p;
                log += 1;
            }
            f.push(log);
            if f[j] == f[j - 1] {
                // Stabilized: no cyclic factor has exponent >= j.
                f.pop();
                break;
            }
            j += 1;
        }
        // Parts >= j appear d_j = f[j] - f[j-1] times.
        let mut parts = Vec::new();
        for j in 1..f.len() as u32 {
            let d = f[j as usize] - f[(j - 1) as usize];
            // d = number of cyclic factors with exponent >= j.
            parts.push(d);
        }
        let mut exps = Vec::new();
        for (jm1, &d) in parts.iter().enumerate() {
            let j = jm1 as u32 + 1;
            let next = parts.get(jm1 + 1).copied().unwrap_or(0);
            for _ in 0..(d - next) {
                exps.push(j);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        primary.insert(p, exps);
    }
    // Zip primary parts into invariant factors d_1 | d_2 | ...
    let max_len = primary.values().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = vec![1u32; max_len];
    for (p, exps) in primary {
        for (i, &e) in exps.iter().enumerate() {
            factors[i] *= p.pow(e);
        }
    }
    factors.reverse(); // ascending, d_1 | d_2 | ...
    factors
}
