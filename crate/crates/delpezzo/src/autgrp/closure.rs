//! Breadth-first closure of generator sets into finite groups.
//!
//! [`FiniteGroup`] keeps the concrete elements, a word over the
//! generators for each element, and the canonical-key index used for
//! deduplication.  Element order inside the vector is the breadth-first
//! discovery order, which is deterministic for a fixed generator list.

use std::collections::BTreeMap;

use super::abstract_group::AbstractGroup;
use super::{AutError, ElemKey, GroupElement};

/// Default cap on closure size.
pub const CLOSURE_CAP: usize = 2048;

/// A finite group of concrete elements, closed under composition.
#[derive(Clone, Debug)]
pub struct FiniteGroup<E: GroupElement> {
    elements: Vec<E>,
    index: BTreeMap<ElemKey, usize>,
    gens: Vec<usize>,
    words: Vec<Vec<usize>>,
}

impl<E: GroupElement> FiniteGroup<E> {
    /// Closes the generator list under composition, up to `cap`
    /// elements.  The identity always gets index 0.
    pub fn generate_capped(gens: &[E], cap: usize) -> Result<Self, AutError> {
        if gens.is_empty() {
            return Err(AutError::EmptyGenerators);
        }
        let id = gens[0].identity_like();
        let mut elements = vec![id.clone()];
        let mut index = BTreeMap::new();
        index.insert(id.key(), 0usize);
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for (gi, g) in gens.iter().enumerate() {
                let next = elements[i].then(g);
                let k = next.key();
                if !index.contains_key(&k) {
                    if elements.len() >= cap {
                        return Err(AutError::ClosureCap { cap });
                    }
                    let mut w = words[i].clone();
                    w.push(gi);
                    index.insert(k, elements.len());
                    frontier.push(elements.len());
                    elements.push(next);
                    words.push(w);
                }
            }
        }
        let gen_indices = gens.iter().map(|g| index[&g.key()]).collect();
        Ok(FiniteGroup {
            elements,
            index,
            gens: gen_indices,
            words,
        })
    }

    pub fn generate(gens: &[E]) -> Result<Self, AutError> {
        Self::generate_capped(gens, CLOSURE_CAP)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    /// Indices of the generators inside the element list.
    pub fn generator_indices(&self) -> &[usize] {
        &self.gens
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(&e.key()).copied()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(&e.key())
    }

    /// A word over generator indices evaluating to element `i`, read
    /// left to right in application order.
    pub fn word_for(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// Index of the composition `elements[i].then(elements[j])`.
    pub fn compose_indices(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].then(&self.elements[j]).key()]
    }

    /// The abstract multiplication table of this group, built from the
    /// regular action of the generators.
    pub fn abstract_group(&self) -> AbstractGroup {
        let n = self.order();
        // Right-translation permutation of each generator.
        let gen_perm: Vec<Vec<u32>> = self
            .gens
            .iter()
            .map(|&g| {
                (0..n)
                    .map(|x| self.compose_indices(x, g) as u32)
                    .collect()
            })
            .collect();
        // Right translation by element i, via its generator word.
        let mut perms: Vec<Vec<u32>> = Vec::with_capacity(n);
        let id_perm: Vec<u32> = (0..n as u32).collect();
        for i in 0..n {
            let mut p = id_perm.clone();
            for &gi in &self.words[i] {
                let gp = &gen_perm[gi];
                for x in p.iter_mut() {
                    *x = gp[*x as usize];
                }
            }
            perms.push(p);
        }
        // mult[i][j] = perms[j][i].
        let mut mult = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mult[i * n + j] = perms[j][i];
            }
        }
        AbstractGroup::from_table(n, mult)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgrp::perm::PermElem;

    #[test]
    fn closure_of_symmetric_group_on_three_points() {
        let s = PermElem::new(vec![1, 0, 2]);
        let c = PermElem::new(vec![1, 2, 0]);
        let g = FiniteGroup::generate(&[s, c]).unwrap();
        assert_eq!(g.order(), 6);
        let a = g.abstract_group();
        assert_eq!(a.order(), 6);
        assert!(!a.is_abelian());
    }

    #[test]
    fn closure_cap_is_enforced() {
        let c = PermElem::new(vec![1, 2, 3, 4, 0]);
        let err = FiniteGroup::generate_capped(&[c], 3);
        assert!(matches!(err, Err(AutError::ClosureCap { cap: 3 })));
    }

    #[test]
    fn words_evaluate_to_their_elements() {
        let s = PermElem::new(vec![1, 0, 2, 3]);
        let c = PermElem::new(vec![1, 2, 3, 0]);
        let gens = [s, c];
        let g = FiniteGroup::generate(&gens).unwrap();
        assert_eq!(g.order(), 24);
        for i in 0..g.order() {
            let mut acc = gens[0].identity_like();
            for &gi in g.word_for(i) {
                acc = acc.then(&gens[gi]);
            }
            assert_eq!(&acc, g.element(i));
        }
    }
}
