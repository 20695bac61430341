//! The lattice of nonzero proper principal ideals of `Z_n[x]/(x^2)`.
//!
//! Each [`IdealRecord`] is one distinct ideal `R*e` together with the number of
//! elements that generate it. Vertices of the cozero-divisor graph that
//! generate the same ideal are never adjacent, and adjacency between two
//! generator classes is all-or-nothing, so the weighted incomparability graph
//! on the records (the reduced graph) determines the whole graph.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::families;
use crate::ring::{ElementSet, PolyElement, RingContext};

/// One distinct nonzero proper principal ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealRecord {
    /// Lexicographically smallest `(a, b)` among the generators.
    pub canonical_generator: PolyElement,
    pub element_set: ElementSet,
    /// Number of ring elements generating exactly this ideal.
    pub weight: usize,
    /// Display tag in the notation of the matching ring family, if any.
    pub family_label: Option<String>,
}

impl IdealRecord {
    /// Family label when available, otherwise `<generator>`.
    pub fn label(&self) -> String {
        self.family_label
            .clone()
            .unwrap_or_else(|| format!("<{}>", self.canonical_generator))
    }
}

#[derive(Debug, Clone)]
pub struct IdealLattice {
    ctx: RingContext,
    ideals: Vec<IdealRecord>,
    // contained_in[i] holds j whenever ideal i is a subset of ideal j.
    contained_in: Vec<FixedBitSet>,
    // Record index per element index; None for zero and units.
    class: Vec<Option<u32>>,
}

impl IdealLattice {
    /// Enumerates every principal ideal generated by a nonzero non-unit.
    ///
    /// Elements are visited in index order; each unvisited element `e`
    /// contributes the ideal `R*e`, and its generator class is collected as
    /// the orbit `{u*e : u unit}`. Orbits that land on an ideal seen before
    /// are merged into that record, so records are exactly the distinct sets.
    pub fn enumerate(ctx: &RingContext) -> Result<Self> {
        ctx.ensure_enumerable()?;
        let units: Vec<PolyElement> = ctx.units().collect();
        let mut class: Vec<Option<u32>> = vec![None; ctx.element_count()];
        let mut ideals: Vec<IdealRecord> = Vec::new();
        let mut by_set: HashMap<ElementSet, usize> = HashMap::new();

        for e in ctx.non_units() {
            if class[ctx.index_of(e)].is_some() {
                continue;
            }
            let set = ctx.principal_ideal(e);
            let idx = *by_set.entry(set.clone()).or_insert_with(|| {
                ideals.push(IdealRecord {
                    canonical_generator: e,
                    element_set: set,
                    weight: 0,
                    family_label: None,
                });
                ideals.len() - 1
            });
            for &u in &units {
                let g = ctx.mul(u, e);
                let slot = &mut class[ctx.index_of(g)];
                if slot.is_none() {
                    *slot = Some(idx as u32);
                    let rec = &mut ideals[idx];
                    rec.weight += 1;
                    rec.canonical_generator = rec.canonical_generator.min(g);
                }
            }
        }

        let k = ideals.len();
        let mut contained_in = vec![FixedBitSet::with_capacity(k); k];
        for i in 0..k {
            for j in 0..k {
                if ideals[i].element_set.is_subset(&ideals[j].element_set) {
                    contained_in[i].insert(j);
                }
            }
        }

        let mut lattice = Self {
            ctx: ctx.clone(),
            ideals,
            contained_in,
            class,
        };
        families::assign_labels(&mut lattice);
        Ok(lattice)
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn ideals(&self) -> &[IdealRecord] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub(crate) fn set_label(&mut self, index: usize, label: String) {
        self.ideals[index].family_label = Some(label);
    }

    /// `ideal i ⊆ ideal j`.
    pub fn is_included(&self, i: usize, j: usize) -> bool {
        self.contained_in[i].contains(j)
    }

    /// Neither ideal contains the other.
    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        !self.is_included(i, j) && !self.is_included(j, i)
    }

    /// Index of the record whose ideal is `R*e`.
    pub fn class_of(&self, e: PolyElement) -> Result<usize> {
        self.ctx.validate(e)?;
        self.class[self.ctx.index_of(e)]
            .map(|i| i as usize)
            .ok_or(Error::NotAVertex { a: e.a, b: e.b })
    }

    /// Elements generating record `i`, in index order.
    pub fn generators(&self, i: usize) -> Vec<PolyElement> {
        self.class
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == Some(i as u32))
            .map(|(idx, _)| self.ctx.element_at(idx))
            .collect()
    }

    /// Index of the record with the given canonical generator.
    pub fn find(&self, generator: PolyElement) -> Option<usize> {
        self.class_of(generator).ok()
    }

    /// Weighted incomparability graph on the records.
    pub fn reduced_graph(&self) -> ReducedGraph {
        let k = self.len();
        let adjacency = (0..k)
            .map(|i| {
                (0..k)
                    .filter(|&j| i != j && self.incomparable(i, j))
                    .collect()
            })
            .collect();
        ReducedGraph {
            labels: self.ideals.iter().map(IdealRecord::label).collect(),
            generators: self.ideals.iter().map(|r| r.canonical_generator).collect(),
            weights: self.ideals.iter().map(|r| r.weight).collect(),
            adjacency,
        }
    }
}

/// Frame graph of the generalized join: one vertex per ideal record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGraph {
    pub labels: Vec<String>,
    pub generators: Vec<PolyElement>,
    pub weights: Vec<usize>,
    /// Sorted neighbor lists.
    pub adjacency: Vec<Vec<usize>>,
}

impl ReducedGraph {
    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, nbrs)| nbrs.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Unweighted degree in the frame.
    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    /// Sum of neighbor weights, which is the full-graph degree of every
    /// vertex in class `i`.
    pub fn weighted_degree(&self, i: usize) -> usize {
        self.adjacency[i].iter().map(|&j| self.weights[j]).sum()
    }

    pub fn total_weight(&self) -> usize {
        self.weights.iter().sum()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Compares the unit-congruence criterion for `<p^k a1 x + p^l b1> = <p^k a2 x + p^l b2>`
/// in `Z_{p^3}[x]/(x^2)` with brute-force ideal equality.
///
/// Returns `(a2 b1 ≡ a1 b2 mod p^(l-k), ideals equal)`.
pub fn ideal_equality_congruence_check(
    ctx: &RingContext,
    k: u32,
    l: u32,
    (a1, b1): (u64, u64),
    (a2, b2): (u64, u64),
) -> Result<(bool, bool)> {
    let p = match ctx.factorization() {
        [(p, 3)] => *p,
        _ => {
            return Err(Error::InvalidInstance(format!(
                "congruence check needs n = p^3, got {}",
                ctx.n()
            )))
        }
    };
    if !(k < l && l <= 2) {
        return Err(Error::InvalidInstance(format!(
            "exponents must satisfy 0 <= k < l <= 2, got k={k}, l={l}"
        )));
    }
    let n = ctx.n();
    for u in [a1, b1, a2, b2] {
        if u >= n || u.gcd(&p) != 1 {
            return Err(Error::InvalidInstance(format!("{u} is not a unit mod {n}")));
        }
    }
    let modulus = p.pow(l - k) as i128;
    let lhs = (a2 as i128) * (b1 as i128) - (a1 as i128) * (b2 as i128);
    let congruent = lhs.rem_euclid(modulus) == 0;

    let (pk, pl) = (p.pow(k), p.pow(l));
    let g1 = PolyElement::new(pk * a1 % n, pl * b1 % n);
    let g2 = PolyElement::new(pk * a2 % n, pl * b2 % n);
    let equal = ctx.principal_ideal(g1) == ctx.principal_ideal(g2);
    Ok((congruent, equal))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(n: u64) -> IdealLattice {
        IdealLattice::enumerate(&RingContext::new(n).unwrap()).unwrap()
    }

    #[test]
    fn record_counts_for_families() {
        assert_eq!(lattice(7).len(), 1);
        assert_eq!(lattice(7).ideals()[0].weight, 6);
        assert_eq!(lattice(9).len(), 5);
        assert_eq!(lattice(25).len(), 7);
        assert_eq!(lattice(27).len(), 11);
        assert_eq!(lattice(10).len(), 7);
        assert_eq!(lattice(30).len(), 25);
        assert_eq!(lattice(12).len(), 16);
        assert_eq!(lattice(18).len(), 19);
    }

    #[test]
    fn class_of_examples() {
        let l10 = lattice(10);
        let two = l10.class_of(PolyElement::new(0, 2)).unwrap();
        assert_eq!(
            l10.ideals()[two].element_set,
            l10.ctx().principal_ideal(PolyElement::new(0, 2))
        );
        assert_eq!(
            l10.class_of(PolyElement::new(3, 0)).unwrap(),
            l10.class_of(PolyElement::new(7, 0)).unwrap()
        );
        assert!(matches!(
            l10.class_of(PolyElement::ZERO),
            Err(Error::NotAVertex { .. })
        ));
        assert!(matches!(
            l10.class_of(PolyElement::new(4, 3)),
            Err(Error::NotAVertex { .. })
        ));

        let l9 = lattice(9);
        let i = l9.class_of(PolyElement::new(3, 0)).unwrap();
        assert_eq!(l9.ideals()[i].canonical_generator, PolyElement::new(3, 0));
        assert_eq!(l9.ideals()[i].weight, 2);
    }

    #[test]
    fn weights_cover_vertices() {
        for n in 2..=40 {
            let l = lattice(n);
            let total: usize = l.ideals().iter().map(|r| r.weight).sum();
            assert_eq!(total, l.ctx().vertex_count(), "n = {n}");
        }
    }

    #[test]
    fn p_squared_reduced_graph_shape() {
        for p in [3u64, 5] {
            let l = lattice(p * p);
            let g = l.reduced_graph();
            let px = l.class_of(PolyElement::new(p, 0)).unwrap();
            assert_eq!(g.degree(px), 0);
            for i in (0..g.vertex_count()).filter(|&i| i != px) {
                assert_eq!(g.degree(i), p as usize, "clique of p+1 vertices");
            }
        }
    }

    #[test]
    fn congruence_check_examples() {
        let ctx = RingContext::new(27).unwrap();
        assert_eq!(
            ideal_equality_congruence_check(&ctx, 0, 1, (1, 1), (1, 4)).unwrap(),
            (true, true)
        );
        assert_eq!(
            ideal_equality_congruence_check(&ctx, 0, 1, (1, 1), (1, 2)).unwrap(),
            (false, false)
        );
        assert_eq!(
            ideal_equality_congruence_check(&ctx, 0, 2, (1, 1), (1, 1)).unwrap(),
            (true, true)
        );
        assert!(ideal_equality_congruence_check(
            &RingContext::new(9).unwrap(),
            0,
            1,
            (1, 1),
            (1, 1)
        )
        .is_err());
        assert!(ideal_equality_congruence_check(&ctx, 1, 1, (1, 1), (1, 1)).is_err());
        assert!(ideal_equality_congruence_check(&ctx, 0, 1, (3, 1), (1, 1)).is_err());
    }
}
