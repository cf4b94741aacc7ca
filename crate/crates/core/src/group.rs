use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::Budgets;

/// Index of a group element inside one specific `GroupTable`.
/// Index 0 is always the identity.
pub type ElementId = u16;

/// A permutation of the points `0..degree`, the input encoding for
/// ingested groups.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Build from the image list of each point; must be a bijection.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &img in &images {
            if (img as usize) >= d || seen[img as usize] {
                return Err(Error::BadParameter(format!(
                    "image list {:?} is not a bijection on 0..{}",
                    images, d
                )));
            }
            seen[img as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// `self` applied first, then `other`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &img)| i == img as usize)
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "perm{:?}", self.images)
    }
}

/// A finite group as a normalized multiplication table over element
/// indices, with cached inverses and element orders.
///
/// Immutable after construction; share freely across threads.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    order: usize,
    product: Vec<ElementId>,
    inverse: Vec<ElementId>,
    element_order: Vec<u16>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.product[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inverse[a as usize]
    }

    /// Multiplicative order of the element.
    #[inline]
    pub fn order_of(&self, a: ElementId) -> usize {
        self.element_order[a as usize] as usize
    }

    /// `g^-1 a g`.
    #[inline]
    pub fn conj(&self, a: ElementId, g: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// `a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: ElementId, k: usize) -> ElementId {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        0..self.order as ElementId
    }

    pub fn check_index(&self, e: ElementId) -> Result<()> {
        if (e as usize) < self.order {
            Ok(())
        } else {
            Err(Error::BadIndex {
                index: e as usize,
                order: self.order,
            })
        }
    }

    /// Multiset of element orders, as sorted (order, count) pairs.
    pub fn order_histogram(&self) -> Vec<(u16, u32)> {
        let mut counts: HashMap<u16, u32> = HashMap::new();
        for &o in &self.element_order {
            *counts.entry(o).or_insert(0) += 1;
        }
        let mut v: Vec<_> = counts.into_iter().collect();
        v.sort_unstable();
        v
    }

    /// Number of conjugacy classes.
    pub fn conjugacy_class_count(&self) -> usize {
        let n = self.order;
        let mut seen = ElementSet::empty(n);
        let mut classes = 0;
        for x in 0..n as ElementId {
            if seen.contains(x) {
                continue;
            }
            classes += 1;
            for g in 0..n as ElementId {
                seen.insert(self.conj(x, g));
            }
        }
        classes
    }

    /// A small generating set: repeatedly adjoin the least element
    /// outside the closure so far. Deterministic.
    pub fn small_generating_set(&self) -> Vec<ElementId> {
        let mut gens = Vec::new();
        let mut closure = ElementSet::from_members(self.order, [0]);
        while closure.len() < self.order {
            let next = (0..self.order as ElementId)
                .find(|&e| !closure.contains(e))
                .expect("closure is proper");
            gens.push(next);
            closure = crate::lattice::generated_subgroup(
                self,
                &closure.union(&ElementSet::from_members(self.order, [next])),
            )
            .expect("valid seed");
        }
        gens
    }

    /// The right regular representation of `gens` (or of
    /// `small_generating_set()` when `gens` is None): one permutation of
    /// the element indices per generator, mapping x to x*g.
    pub fn regular_generators(&self) -> Vec<Permutation> {
        self.small_generating_set()
            .into_iter()
            .map(|g| Permutation {
                images: (0..self.order as ElementId)
                    .map(|x| self.mul(x, g))
                    .collect(),
            })
            .collect()
    }
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupTable({:?}, order {})", self.name, self.order)
    }
}

/// Validate a raw table and package it, relocating the identity to
/// index 0 if needed.
pub fn group_from_cayley(rows: &[Vec<usize>], name: &str, budgets: &Budgets) -> Result<GroupTable> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::NotAGroup {
            reason: "empty table".into(),
            counterexample: None,
        });
    }
    if n > budgets.max_order {
        return Err(Error::OrderBudgetExceeded {
            required: n,
            budget: budgets.max_order,
        });
    }
    for row in rows {
        if row.len() != n {
            return Err(Error::NotAGroup {
                reason: format!(
                    "table is not square: row of length {} in order-{} table",
                    row.len(),
                    n
                ),
                counterexample: None,
            });
        }
        for &v in row {
            if v >= n {
                return Err(Error::BadIndex { index: v, order: n });
            }
        }
    }

    // Locate the identity: the e with row e and column e both the identity map.
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| rows[e][g] == g && rows[g][e] == g))
        .ok_or_else(|| Error::NotAGroup {
            reason: "no two-sided identity element".into(),
            counterexample: None,
        })?;

    // Relabel so the identity sits at index 0.
    let relabel = |x: usize| -> usize {
        if x == identity {
            0
        } else if x == 0 {
            identity
        } else {
            x
        }
    };
    let mut product = vec![0 as ElementId; n * n];
    for a in 0..n {
        for b in 0..n {
            product[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as ElementId;
        }
    }

    finish_table(name.to_string(), n, product, budgets)
}

/// Shared validation tail: rows/columns bijective, inverses exist,
/// associativity holds (fully below the configured bound, sampled above),
/// element orders divide the group order.
fn finish_table(
    name: String,
    n: usize,
    product: Vec<ElementId>,
    budgets: &Budgets,
) -> Result<GroupTable> {
    for g in 0..n {
        if product[g] != g as ElementId || product[g * n] != g as ElementId {
            return Err(Error::NotAGroup {
                reason: format!("identity law fails at element {g}"),
                counterexample: None,
            });
        }
    }

    // Latin-square check gives cancellation and pins down inverses.
    let mut inverse = vec![None; n];
    for a in 0..n {
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for b in 0..n {
            let r = product[a * n + b] as usize;
            let c = product[b * n + a] as usize;
            if seen_row[r] || seen_col[c] {
                return Err(Error::NotAGroup {
                    reason: format!("row or column {a} is not a permutation"),
                    counterexample: None,
                });
            }
            seen_row[r] = true;
            seen_col[c] = true;
            if r == 0 {
                if product[b * n + a] != 0 {
                    return Err(Error::NotAGroup {
                        reason: format!("element {b} is a right but not left inverse of {a}"),
                        counterexample: None,
                    });
                }
                inverse[a] = Some(b as ElementId);
            }
        }
    }
    let inverse: Vec<ElementId> = inverse
        .into_iter()
        .enumerate()
        .map(|(a, i)| {
            i.ok_or_else(|| Error::NotAGroup {
                reason: format!("element {a} has no inverse"),
                counterexample: None,
            })
        })
        .collect::<Result<_>>()?;

    let assoc = |a: usize, b: usize, c: usize| -> bool {
        let ab = product[a * n + b] as usize;
        let bc = product[b * n + c] as usize;
        product[ab * n + c] == product[a * n + bc]
    };
    if n <= budgets.assoc_full_check_limit {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !assoc(a, b, c) {
                        return Err(Error::NotAGroup {
                            reason: "associativity fails".into(),
                            counterexample: Some((a as u16, b as u16, c as u16)),
                        });
                    }
                }
            }
        }
    } else {
        // Fixed-seed sampling keeps everything reproducible.
        let mut state = 0x9E37_79B9_7F4A_7C15u64 ^ (n as u64);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..10 * n * n {
            let a = (next() % n as u64) as usize;
            let b = (next() % n as u64) as usize;
            let c = (next() % n as u64) as usize;
            if !assoc(a, b, c) {
                return Err(Error::NotAGroup {
                    reason: "associativity fails (sampled)".into(),
                    counterexample: Some((a as u16, b as u16, c as u16)),
                });
            }
        }
    }

    let mut element_order = vec![0u16; n];
    for g in 0..n {
        let mut acc = product[g] as usize; // g itself
        let mut k = 1usize;
        while acc != 0 {
            acc = product[acc * n + g] as usize;
            k += 1;
            if k > n {
                return Err(Error::NotAGroup {
                    reason: format!("element {g} has order exceeding the group order"),
                    counterexample: None,
                });
            }
        }
        if !n.is_multiple_of(k) {
            return Err(Error::NotAGroup {
                reason: format!("element {g} has order {k}, which does not divide {n}"),
                counterexample: None,
            });
        }
        element_order[g] = k as u16;
    }

    Ok(GroupTable {
        name,
        order: n,
        product,
        inverse,
        element_order,
    })
}

/// Breadth-first closure of a permutation generating set.
///
/// Elements are indexed in discovery order with the identity first, so
/// the same generator list always yields the identical table.
pub fn group_from_generators(
    gens: &[Permutation],
    name: &str,
    budgets: &Budgets,
) -> Result<GroupTable> {
    let degree = match gens.first() {
        Some(g) => g.degree(),
        None => 1,
    };
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }

    let mut index: HashMap<Permutation, ElementId> = HashMap::new();
    let mut elems: Vec<Permutation> = Vec::new();
    let identity = Permutation::identity(degree);
    index.insert(identity.clone(), 0);
    elems.push(identity);

    let mut head = 0;
    while head < elems.len() {
        let current = elems[head].clone();
        head += 1;
        for g in gens {
            let next = current.compose(g);
            if !index.contains_key(&next) {
                if elems.len() >= budgets.max_order {
                    return Err(Error::OrderBudgetExceeded {
                        required: elems.len() + 1,
                        budget: budgets.max_order,
                    });
                }
                index.insert(next.clone(), elems.len() as ElementId);
                elems.push(next);
            }
        }
    }

    let n = elems.len();
    let mut product = vec![0 as ElementId; n * n];
    for a in 0..n {
        for b in 0..n {
            let p = elems[a].compose(&elems[b]);
            product[a * n + b] = index[&p];
        }
    }
    finish_table(name.to_string(), n, product, budgets)
}

/// The center Z(G).
pub fn center(g: &GroupTable) -> ElementSet {
    let n = g.order();
    let mut set = ElementSet::empty(n);
    for x in 0..n as ElementId {
        if (0..n as ElementId).all(|h| g.mul(x, h) == g.mul(h, x)) {
            set.insert(x);
        }
    }
    set
}

/// The centralizer of a single element.
pub fn centralizer(g: &GroupTable, x: ElementId) -> Result<ElementSet> {
    g.check_index(x)?;
    let n = g.order();
    let mut set = ElementSet::empty(n);
    for h in 0..n as ElementId {
        if g.mul(x, h) == g.mul(h, x) {
            set.insert(h);
        }
    }
    Ok(set)
}

/// The subgroup generated by all commutators.
pub fn commutator_subgroup(g: &GroupTable) -> ElementSet {
    let n = g.order();
    let mut seed = ElementSet::empty(n);
    seed.insert(0);
    for a in 0..n as ElementId {
        for b in 0..n as ElementId {
            seed.insert(g.commutator(a, b));
        }
    }
    crate::lattice::generated_subgroup(g, &seed).expect("commutator seed is valid")
}

/// Quotient G/N with its projection map. N must be a normal subgroup.
///
/// Cosets are indexed by first appearance scanning elements in index
/// order, which puts the identity coset at index 0.
pub fn quotient_group(g: &GroupTable, n_set: &ElementSet) -> Result<(GroupTable, Vec<ElementId>)> {
    if !crate::lattice::is_subgroup(g, n_set) {
        return Err(Error::NotASubgroup);
    }
    for x in 0..g.order() as ElementId {
        for h in n_set.iter() {
            if !n_set.contains(g.conj(h, x)) {
                return Err(Error::NotNormal);
            }
        }
    }

    let n = g.order();
    let mut proj: Vec<Option<ElementId>> = vec![None; n];
    let mut reps: Vec<ElementId> = Vec::new();
    for x in 0..n as ElementId {
        if proj[x as usize].is_some() {
            continue;
        }
        let id = reps.len() as ElementId;
        reps.push(x);
        for h in n_set.iter() {
            proj[g.mul(x, h) as usize] = Some(id);
        }
    }
    let proj: Vec<ElementId> = proj
        .into_iter()
        .map(|p| p.expect("cosets partition G"))
        .collect();

    let q = reps.len();
    let mut product = vec![0 as ElementId; q * q];
    for (a, &ra) in reps.iter().enumerate() {
        for (b, &rb) in reps.iter().enumerate() {
            product[a * q + b] = proj[g.mul(ra, rb) as usize];
        }
    }
    let name = format!("{}/N{}", g.name(), n_set.len());
    let table = finish_table(name, q, product, &Budgets::default())?;
    Ok((table, proj))
}

/// Componentwise product on pairs, enumerated row-major with (0,0) first.
pub fn direct_product(a: &GroupTable, b: &GroupTable, budgets: &Budgets) -> Result<GroupTable> {
    let n = a.order() * b.order();
    if n > budgets.max_order {
        return Err(Error::OrderBudgetExceeded {
            required: n,
            budget: budgets.max_order,
        });
    }
    let bo = b.order();
    let mut product = vec![0 as ElementId; n * n];
    for a1 in 0..a.order() {
        for b1 in 0..bo {
            let x = a1 * bo + b1;
            for a2 in 0..a.order() {
                for b2 in 0..bo {
                    let y = a2 * bo + b2;
                    let pa = a.mul(a1 as ElementId, a2 as ElementId) as usize;
                    let pb = b.mul(b1 as ElementId, b2 as ElementId) as usize;
                    product[x * n + y] = (pa * bo + pb) as ElementId;
                }
            }
        }
    }
    let name = format!("product({},{})", a.name(), b.name());
    finish_table(name, n, product, budgets)
}

/// Build a table directly from a closed multiplication closure given as
/// a function over indices; used by the construction builders, which
/// guarantee well-formed input but still get full validation.
pub(crate) fn table_from_fn(
    name: String,
    n: usize,
    budgets: &Budgets,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<GroupTable> {
    if n > budgets.max_order {
        return Err(Error::OrderBudgetExceeded {
            required: n,
            budget: budgets.max_order,
        });
    }
    let mut product = vec![0 as ElementId; n * n];
    for a in 0..n {
        for b in 0..n {
            let v = mul(a, b);
            if v >= n {
                return Err(Error::BadIndex { index: v, order: n });
            }
            product[a * n + b] = v as ElementId;
        }
    }
    finish_table(name, n, product, budgets)
}
