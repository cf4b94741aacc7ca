use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{ElementId, GroupTable};
use crate::set::ElementSet;
use crate::Budgets;

/// One subgroup inside an enumerated lattice.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub id: usize,
    pub members: ElementSet,
    pub is_normal: bool,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }
}

/// The complete, deduplicated list of subgroups of one group, with
/// normality flags and inclusion order.
///
/// Ids are deterministic: sorted by (order, canonical member list).
pub struct SubgroupLattice {
    order: usize,
    subgroups: Vec<Subgroup>,
    /// supersets[i] = ids j (other than i) with members[i] subset of members[j].
    supersets: Vec<Vec<usize>>,
    normalizers: Vec<ElementSet>,
}

impl std::fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SubgroupLattice(group order {}, {} subgroups)",
            self.order,
            self.subgroups.len()
        )
    }
}

impl SubgroupLattice {
    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: usize) -> &Subgroup {
        &self.subgroups[id]
    }

    /// Proper supersets of `id` within the lattice.
    pub fn supersets(&self, id: usize) -> &[usize] {
        &self.supersets[id]
    }

    /// Cached normalizer of subgroup `id`.
    pub fn normalizer_of(&self, id: usize) -> &ElementSet {
        &self.normalizers[id]
    }

    /// Id of the whole group (always the last, largest entry).
    pub fn whole_group_id(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Id of the trivial subgroup (always 0).
    pub fn trivial_id(&self) -> usize {
        0
    }

    /// Look up a member set, if it is a subgroup in the lattice.
    pub fn find(&self, members: &ElementSet) -> Option<usize> {
        self.subgroups.iter().position(|s| s.members == *members)
    }

    pub fn normal_subgroups(&self) -> impl Iterator<Item = &Subgroup> {
        self.subgroups.iter().filter(|s| s.is_normal)
    }

    /// All proper subgroups maximal under inclusion.
    pub fn maximal_subgroups(&self) -> Vec<&Subgroup> {
        let whole = self.whole_group_id();
        self.subgroups
            .iter()
            .filter(|s| s.id != whole && self.supersets[s.id].iter().all(|&j| j == whole))
            .collect()
    }

    /// Intersection of all maximal subgroups (the whole group when there
    /// are none, i.e. for the trivial group).
    pub fn frattini(&self) -> ElementSet {
        let maximal = self.maximal_subgroups();
        let mut acc = self.subgroups[self.whole_group_id()].members.clone();
        for m in maximal {
            acc.intersect_with(&m.members);
        }
        acc
    }
}

/// Does `set` describe a subgroup (identity present, closed under product)?
pub fn is_subgroup(g: &GroupTable, set: &ElementSet) -> bool {
    if set.universe() != g.order() || !set.contains(0) {
        return false;
    }
    let members = set.members();
    for &a in &members {
        for &b in &members {
            if !set.contains(g.mul(a, b)) {
                return false;
            }
        }
    }
    true
}

/// Least subgroup containing `seed` (closure under product; inverses
/// follow from finiteness).
pub fn generated_subgroup(g: &GroupTable, seed: &ElementSet) -> Result<ElementSet> {
    if seed.universe() != g.order() {
        return Err(Error::BadIndex {
            index: seed.universe(),
            order: g.order(),
        });
    }
    if seed.is_empty() {
        return Err(Error::BadParameter("empty generating seed".into()));
    }
    let mut closure = ElementSet::empty(g.order());
    closure.insert(0);
    let mut frontier: Vec<ElementId> = vec![0];
    let gens: Vec<ElementId> = seed.members();
    let mut head = 0;
    while head < frontier.len() {
        let x = frontier[head];
        head += 1;
        for &s in &gens {
            let y = g.mul(x, s);
            if !closure.contains(y) {
                closure.insert(y);
                frontier.push(y);
            }
        }
    }
    Ok(closure)
}

/// Closure of the union of an existing subgroup with extra elements;
/// the workhorse join used during enumeration.
fn join(g: &GroupTable, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut closure = a.union(b);
    let mut frontier: Vec<ElementId> = closure.members();
    let mut head = 0;
    while head < frontier.len() {
        let x = frontier[head];
        head += 1;
        // Multiply with every current member, both sides.
        for i in 0..frontier.len() {
            let y = frontier[i];
            let p = g.mul(x, y);
            if !closure.contains(p) {
                closure.insert(p);
                frontier.push(p);
            }
            let q = g.mul(y, x);
            if !closure.contains(q) {
                closure.insert(q);
                frontier.push(q);
            }
        }
    }
    closure
}

/// {g : H^g = H}. Contains H; equals G iff H is normal.
pub fn normalizer(g: &GroupTable, h: &ElementSet) -> Result<ElementSet> {
    if !is_subgroup(g, h) {
        return Err(Error::NotASubgroup);
    }
    Ok(normalizer_unchecked(g, h))
}

pub(crate) fn normalizer_unchecked(g: &GroupTable, h: &ElementSet) -> ElementSet {
    let n = g.order();
    let members = h.members();
    let mut result = ElementSet::empty(n);
    'outer: for x in 0..n as ElementId {
        for &m in &members {
            if !h.contains(g.conj(m, x)) {
                continue 'outer;
            }
        }
        result.insert(x);
    }
    result
}

/// {g^-1 h g : h in H}.
pub fn conjugate_subgroup(g: &GroupTable, h: &ElementSet, x: ElementId) -> Result<ElementSet> {
    g.check_index(x)?;
    if !is_subgroup(g, h) {
        return Err(Error::NotASubgroup);
    }
    let mut result = ElementSet::empty(g.order());
    for m in h.iter() {
        result.insert(g.conj(m, x));
    }
    Ok(result)
}

/// Complete subgroup enumeration.
///
/// Seeds with all cyclic subgroups, then joins every known subgroup with
/// every cyclic one to a fixpoint. Every subgroup is a join of cyclic
/// subgroups built up one generator at a time, so the fixpoint is the
/// full lattice.
pub fn enumerate_subgroups(g: &GroupTable, budgets: &Budgets) -> Result<SubgroupLattice> {
    let n = g.order();
    let mut index: HashMap<ElementSet, usize> = HashMap::new();
    let mut sets: Vec<ElementSet> = Vec::new();

    let insert = |sets: &mut Vec<ElementSet>,
                  index: &mut HashMap<ElementSet, usize>,
                  s: ElementSet|
     -> Result<bool> {
        if index.contains_key(&s) {
            return Ok(false);
        }
        if sets.len() >= budgets.lattice_cap {
            return Err(Error::LatticeBudgetExceeded {
                cap: budgets.lattice_cap,
            });
        }
        index.insert(s.clone(), sets.len());
        sets.push(s);
        Ok(true)
    };

    let trivial = ElementSet::from_members(n, [0]);
    insert(&mut sets, &mut index, trivial)?;

    let mut cyclics: Vec<ElementSet> = Vec::new();
    for x in 1..n as ElementId {
        let c = generated_subgroup(g, &ElementSet::from_members(n, [x]))?;
        if insert(&mut sets, &mut index, c.clone())? {
            cyclics.push(c);
        }
    }

    let mut head = 0;
    while head < sets.len() {
        let current = sets[head].clone();
        head += 1;
        for c in &cyclics {
            if c.is_subset_of(&current) {
                continue;
            }
            let joined = join(g, &current, c);
            insert(&mut sets, &mut index, joined)?;
        }
    }

    // Deterministic ids.
    sets.sort_by(|a, b| a.canonical_cmp(b));

    let normalizers: Vec<ElementSet> = sets.iter().map(|s| normalizer_unchecked(g, s)).collect();
    let subgroups: Vec<Subgroup> = sets
        .into_iter()
        .enumerate()
        .map(|(id, members)| {
            let is_normal = normalizers[id].len() == n;
            Subgroup {
                id,
                members,
                is_normal,
            }
        })
        .collect();

    let mut supersets = vec![Vec::new(); subgroups.len()];
    for a in &subgroups {
        for b in &subgroups {
            if a.id != b.id && a.order() <= b.order() && a.members.is_subset_of(&b.members) {
                supersets[a.id].push(b.id);
            }
        }
    }

    Ok(SubgroupLattice {
        order: n,
        subgroups,
        supersets,
        normalizers,
    })
}

/// Extract a subgroup as a standalone group table, relabelling members
/// in increasing index order (so the identity stays first), together
/// with the member list mapping new indices back to elements of G.
pub fn subgroup_table(
    g: &GroupTable,
    h: &ElementSet,
    name: &str,
) -> Result<(GroupTable, Vec<ElementId>)> {
    if !is_subgroup(g, h) {
        return Err(Error::NotASubgroup);
    }
    let members = h.members();
    let mut back = vec![0 as ElementId; g.order()];
    for (i, &m) in members.iter().enumerate() {
        back[m as usize] = i as ElementId;
    }
    let k = members.len();
    let mut rows = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            rows[i][j] = back[g.mul(members[i], members[j]) as usize] as usize;
        }
    }
    let table = crate::group::group_from_cayley(&rows, name, &Budgets::default())?;
    Ok((table, members))
}
