//! Finite posets with a canonical element order.
//!
//! Every [`Poset`] stores its elements in a fixed linear extension: among the
//! elements whose predecessors have all been placed, the one with the smallest
//! sort key (then label) comes next. Matrices built from a poset are therefore
//! upper triangular in the zeta direction and reproducible run to run.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt::Write as _;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Default cap on the number of order ideals [`ideal_lattice`] will enumerate.
pub const DEFAULT_IDEAL_CAP: usize = 20_000;

#[derive(Clone, Debug)]
pub struct Poset {
    /// `up[a]` holds every `b` with `a <= b` (reflexive).
    up: Vec<FixedBitSet>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    labels: Vec<String>,
    keys: Vec<Vec<i64>>,
    grid: Option<(usize, usize)>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.up == other.up && self.labels == other.labels
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from its cover relation. `covers` holds `(lower, upper)`
    /// pairs; they must generate an acyclic relation.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let keys = vec![Vec::new(); labels.len()];
        Self::assemble(keys, labels, Relation::Covers(covers.to_vec()), None)
    }

    /// Builds a poset from an order predicate, which must be a partial order.
    pub fn from_leq(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let up = (0..n)
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(n);
                for b in 0..n {
                    if a == b || leq(a, b) {
                        row.insert(b);
                    }
                }
                row
            })
            .collect();
        let keys = vec![Vec::new(); n];
        Self::assemble(keys, labels, Relation::Full(up), None)
    }

    fn assemble(
        keys: Vec<Vec<i64>>,
        labels: Vec<String>,
        relation: Relation,
        grid: Option<(usize, usize)>,
    ) -> Result<Self> {
        Self::assemble_ordered(keys, labels, relation, grid).map(|(p, _)| p)
    }

    /// Also returns the canonical order: `order[new] = old`.
    fn assemble_ordered(
        keys: Vec<Vec<i64>>,
        labels: Vec<String>,
        relation: Relation,
        grid: Option<(usize, usize)>,
    ) -> Result<(Self, Vec<usize>)> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        debug_assert_eq!(keys.len(), n);

        // Strict successor lists drive the canonical topological sort.
        let successors: Vec<Vec<usize>> = match &relation {
            Relation::Covers(covers) => {
                let mut succ = vec![Vec::new(); n];
                for &(lo, hi) in covers {
                    if lo >= n || hi >= n {
                        return Err(Error::ElementOutOfRange(lo.max(hi)));
                    }
                    succ[lo].push(hi);
                }
                succ
            }
            Relation::Full(up) => (0..n)
                .map(|a| up[a].ones().filter(|&b| b != a).collect())
                .collect(),
        };

        let mut pending = vec![0usize; n];
        for succ in &successors {
            for &b in succ {
                pending[b] += 1;
            }
        }
        let mut heap: BinaryHeap<Reverse<(&[i64], &str, usize)>> = (0..n)
            .filter(|&a| pending[a] == 0)
            .map(|a| Reverse((keys[a].as_slice(), labels[a].as_str(), a)))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse((_, _, a))) = heap.pop() {
            order.push(a);
            for &b in &successors[a] {
                pending[b] -= 1;
                if pending[b] == 0 {
                    heap.push(Reverse((keys[b].as_slice(), labels[b].as_str(), b)));
                }
            }
        }
        if order.len() != n {
            return Err(Error::NotAPartialOrder("the relation contains a cycle"));
        }
        let mut position = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }

        let new_labels: Vec<String> = order.iter().map(|&o| labels[o].clone()).collect();
        let new_keys: Vec<Vec<i64>> = order.iter().map(|&o| keys[o].clone()).collect();

        let (up, lower_covers, upper_covers) = match relation {
            Relation::Covers(covers) => {
                let mut upper_covers = vec![Vec::new(); n];
                let mut lower_covers = vec![Vec::new(); n];
                for &(lo, hi) in &covers {
                    upper_covers[position[lo]].push(position[hi]);
                    lower_covers[position[hi]].push(position[lo]);
                }
                for list in upper_covers.iter_mut().chain(lower_covers.iter_mut()) {
                    list.sort_unstable();
                    list.dedup();
                }
                let mut up = vec![FixedBitSet::with_capacity(n); n];
                for a in (0..n).rev() {
                    let mut row = FixedBitSet::with_capacity(n);
                    row.insert(a);
                    for &b in &upper_covers[a] {
                        row.union_with(&up[b]);
                    }
                    up[a] = row;
                }
                // Supplied covers may include redundant pairs; reduce them.
                let (lower, upper) = reduce(&up);
                (up, lower, upper)
            }
            Relation::Full(old_up) => {
                let mut up = vec![FixedBitSet::with_capacity(n); n];
                for (old_a, row) in old_up.iter().enumerate() {
                    let a = position[old_a];
                    for old_b in row.ones() {
                        up[a].insert(position[old_b]);
                    }
                }
                for a in 0..n {
                    for b in up[a].ones() {
                        if !up[a].is_superset(&up[b]) {
                            return Err(Error::NotAPartialOrder("not transitive"));
                        }
                        if b != a && up[b].contains(a) {
                            return Err(Error::NotAPartialOrder("not antisymmetric"));
                        }
                    }
                }
                let (lower, upper) = reduce(&up);
                (up, lower, upper)
            }
        };

        let poset = Poset {
            up,
            lower_covers,
            upper_covers,
            labels: new_labels,
            keys: new_keys,
            grid,
        };
        Ok((poset, order))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// The principal filter `{b : a <= b}` as a bitset.
    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    /// The principal ideal `{b : b <= a}`, in canonical order.
    pub fn down_set(&self, a: usize) -> Vec<usize> {
        (0..=a).filter(|&b| self.leq(b, a)).collect()
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    /// All cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.size())
            .flat_map(|a| self.upper_covers[a].iter().map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `(rows, cols)` when this poset was built by [`grid`].
    pub fn grid_shape(&self) -> Option<(usize, usize)> {
        self.grid
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&a| self.lower_covers[a].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&a| self.upper_covers[a].is_empty())
            .collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    /// Elements `x` with `lo <= x <= hi`, in canonical order.
    pub fn interval(&self, lo: usize, hi: usize) -> Result<Vec<usize>> {
        self.check(lo)?;
        self.check(hi)?;
        if !self.leq(lo, hi) {
            return Err(Error::EmptyInterval {
                lo: self.labels[lo].clone(),
                hi: self.labels[hi].clone(),
            });
        }
        Ok(self.up[lo].ones().filter(|&x| self.leq(x, hi)).collect())
    }

    /// Induced subposet on `elements`, keeping labels.
    pub fn subposet(&self, elements: &[usize]) -> Result<Poset> {
        for &e in elements {
            self.check(e)?;
        }
        let labels = elements.iter().map(|&e| self.labels[e].clone()).collect();
        let keys = elements.iter().map(|&e| self.keys[e].clone()).collect();
        let k = elements.len();
        let up = (0..k)
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(k);
                for b in 0..k {
                    if self.leq(elements[a], elements[b]) {
                        row.insert(b);
                    }
                }
                row
            })
            .collect();
        Self::assemble(keys, labels, Relation::Full(up), None)
    }

    /// Least upper bound of `a` and `b`, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let mut common = self.up[a].clone();
        common.intersect_with(&self.up[b]);
        let candidates: Vec<usize> = common
            .ones()
            .filter(|&c| common.ones().all(|d| self.leq(c, d)))
            .collect();
        match candidates.as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    /// Greatest lower bound of `a` and `b`, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let common: Vec<usize> = (0..self.size())
            .filter(|&c| self.leq(c, a) && self.leq(c, b))
            .collect();
        let candidates: Vec<usize> = common
            .iter()
            .copied()
            .filter(|&c| common.iter().all(|&d| self.leq(d, c)))
            .collect();
        match candidates.as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    /// Length of the longest chain ending at each element (minimal elements have rank 0).
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0usize; self.size()];
        for a in 0..self.size() {
            rank[a] = self.lower_covers[a]
                .iter()
                .map(|&b| rank[b] + 1)
                .max()
                .unwrap_or(0);
        }
        rank
    }

    /// Isomorphism invariant: rank sizes plus the sorted multiset of
    /// `(rank, #lower covers, #upper covers, |down set|, |up set|)` profiles.
    pub fn fingerprint(&self) -> Fingerprint {
        let ranks = self.ranks();
        let height = ranks.iter().copied().max().unwrap_or(0);
        let mut rank_sizes = vec![0usize; height + 1];
        for &r in &ranks {
            rank_sizes[r] += 1;
        }
        let mut profile: Vec<[usize; 5]> = (0..self.size())
            .map(|a| {
                [
                    ranks[a],
                    self.lower_covers[a].len(),
                    self.upper_covers[a].len(),
                    self.down_set(a).len(),
                    self.up[a].count_ones(..),
                ]
            })
            .collect();
        profile.sort_unstable();
        Fingerprint {
            rank_sizes,
            profile,
        }
    }

    /// Exact isomorphism test by backtracking over fingerprint-compatible maps.
    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        if self.size() != other.size() || self.fingerprint() != other.fingerprint() {
            return false;
        }
        let sig = |p: &Poset| -> Vec<[usize; 5]> {
            let ranks = p.ranks();
            (0..p.size())
                .map(|a| {
                    [
                        ranks[a],
                        p.lower_covers[a].len(),
                        p.upper_covers[a].len(),
                        p.down_set(a).len(),
                        p.up[a].count_ones(..),
                    ]
                })
                .collect()
        };
        let sa = sig(self);
        let sb = sig(other);
        let n = self.size();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_iso(other, &sa, &sb, 0, &mut map, &mut used)
    }

    fn extend_iso(
        &self,
        other: &Poset,
        sa: &[[usize; 5]],
        sb: &[[usize; 5]],
        a: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if a == self.size() {
            return true;
        }
        for b in 0..other.size() {
            if used[b] || sa[a] != sb[b] {
                continue;
            }
            let consistent = (0..a).all(|x| {
                self.leq(x, a) == other.leq(map[x], b) && self.leq(a, x) == other.leq(b, map[x])
            });
            if !consistent {
                continue;
            }
            map[a] = b;
            used[b] = true;
            if self.extend_iso(other, sa, sb, a + 1, map, used) {
                return true;
            }
            used[b] = false;
            map[a] = usize::MAX;
        }
        false
    }

    fn check(&self, a: usize) -> Result<()> {
        if a < self.size() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange(a))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub rank_sizes: Vec<usize>,
    pub profile: Vec<[usize; 5]>,
}

enum Relation {
    Covers(Vec<(usize, usize)>),
    Full(Vec<FixedBitSet>),
}

/// Transitive reduction of a reflexive, transitive relation given by up-sets.
fn reduce(up: &[FixedBitSet]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = up.len();
    let mut lower = vec![Vec::new(); n];
    let mut upper = vec![Vec::new(); n];
    for a in 0..n {
        // Indices follow a linear extension, so the smallest element not yet
        // above a known cover is itself a cover.
        let mut open = up[a].clone();
        open.set(a, false);
        while let Some(c) = open.ones().next() {
            open.difference_with(&up[c]);
            upper[a].push(c);
            lower[c].push(a);
        }
    }
    (lower, upper)
}

/// The total order on `k` elements, labelled `1..=k`.
pub fn chain(k: usize) -> Result<Poset> {
    if k == 0 {
        return Err(Error::EmptyPoset);
    }
    let labels = (1..=k).map(|i| i.to_string()).collect();
    let keys = (1..=k).map(|i| vec![i as i64]).collect();
    let covers = (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Poset::assemble(keys, labels, Relation::Covers(covers), None)
}

/// `k` pairwise incomparable elements.
pub fn antichain(k: usize) -> Result<Poset> {
    if k == 0 {
        return Err(Error::EmptyPoset);
    }
    let labels = (1..=k).map(|i| i.to_string()).collect();
    let keys = (1..=k).map(|i| vec![i as i64]).collect();
    Poset::assemble(keys, labels, Relation::Covers(Vec::new()), None)
}

/// Cartesian product ordered entry-wise.
pub fn product(p: &Poset, q: &Poset) -> Result<Poset> {
    product_with(p, q, None)
}

fn product_with(p: &Poset, q: &Poset, grid: Option<(usize, usize)>) -> Result<Poset> {
    let (np, nq) = (p.size(), q.size());
    let idx = |a: usize, b: usize| a * nq + b;
    let mut labels = Vec::with_capacity(np * nq);
    let mut keys = Vec::with_capacity(np * nq);
    for a in 0..np {
        for b in 0..nq {
            labels.push(format!("({},{})", p.label(a), q.label(b)));
            keys.push(vec![a as i64, b as i64]);
        }
    }
    let mut covers = Vec::new();
    for a in 0..np {
        for b in 0..nq {
            for &c in p.upper_covers(a) {
                covers.push((idx(a, b), idx(c, b)));
            }
            for &d in q.upper_covers(b) {
                covers.push((idx(a, b), idx(a, d)));
            }
        }
    }
    Poset::assemble(keys, labels, Relation::Covers(covers), grid)
}

/// The grid poset: product of an `m`-chain and an `n`-chain, labels `(i,j)`.
pub fn grid(m: usize, n: usize) -> Result<Poset> {
    product_with(&chain(m)?, &chain(n)?, Some((m, n)))
}

/// `p` with a new global maximum labelled `max`.
pub fn add_max(p: &Poset) -> Poset {
    extend(p, true)
}

/// `p` with a new global minimum labelled `min`.
pub fn add_min(p: &Poset) -> Poset {
    extend(p, false)
}

fn extend(p: &Poset, on_top: bool) -> Poset {
    let n = p.size();
    let mut labels = p.labels.clone();
    let mut keys = p.keys.clone();
    labels.push(if on_top { "max".into() } else { "min".into() });
    keys.push(vec![if on_top { i64::MAX } else { i64::MIN }]);
    let mut covers = p.covers();
    if on_top {
        covers.extend(p.maximal_elements().into_iter().map(|a| (a, n)));
    } else {
        covers.extend(p.minimal_elements().into_iter().map(|a| (n, a)));
    }
    Poset::assemble(keys, labels, Relation::Covers(covers), None)
        .expect("extending a poset by an extremal element stays acyclic")
}

/// Removes the unique maximum of `p` and adds a global minimum instead. The
/// result and `p` arise from a common poset by adding a maximum and a
/// minimum respectively.
pub fn flip_flop(p: &Poset) -> Result<Poset> {
    let top = p.top().ok_or(Error::NoUniqueExtremum("maximum"))?;
    if p.size() == 1 {
        return Ok(p.clone());
    }
    let rest: Vec<usize> = (0..p.size()).filter(|&a| a != top).collect();
    Ok(add_min(&p.subposet(&rest)?))
}

/// Poset whose Hasse diagram is the Dynkin diagram `D_k` (k >= 4): a chain of
/// `k - 2` elements with two incomparable elements covering its top.
pub fn dynkin_d_tree(k: usize) -> Result<Poset> {
    if k < 4 {
        return Err(Error::EmptyPoset);
    }
    let labels: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
    let mut covers: Vec<(usize, usize)> = (0..k - 3).map(|i| (i, i + 1)).collect();
    covers.push((k - 3, k - 2));
    covers.push((k - 3, k - 1));
    Poset::from_covers(labels, &covers)
}

/// The Hasse diagram as a DOT digraph, edges pointing from each element to the
/// elements it covers.
pub fn to_dot(p: &Poset) -> String {
    to_dot_named(p, "hasse")
}

pub fn to_dot_named(p: &Poset, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    for a in 0..p.size() {
        let label = p.label(a).replace('\\', "\\\\").replace('"', "\\\"");
        let _ = writeln!(out, "  v{a} [label=\"{label}\"];");
    }
    let mut edges: Vec<(usize, usize)> = p.covers().into_iter().map(|(lo, hi)| (hi, lo)).collect();
    edges.sort_unstable();
    for (hi, lo) in edges {
        let _ = writeln!(out, "  v{hi} -> v{lo};");
    }
    out.push_str("}\n");
    out
}

pub fn interval_elements(p: &Poset, lo: usize, hi: usize) -> Result<Vec<usize>> {
    p.interval(lo, hi)
}

/// The distributive lattice `J(P)` of order ideals, ordered by containment.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    pub base: Poset,
    pub lattice: Poset,
    ideals: Vec<FixedBitSet>,
    parts: Option<Vec<Vec<usize>>>,
    parts_index: OnceLock<HashMap<Vec<usize>, usize>>,
}

impl IdealLattice {
    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    /// Base elements making up the ideal at lattice element `x`.
    pub fn ideal_of(&self, x: usize) -> Vec<usize> {
        self.ideals[x].ones().collect()
    }

    /// Row counts `(a_1 <= ... <= a_m)` of an ideal of a grid, read from the
    /// top row down.
    pub fn parts(&self, x: usize) -> Option<&[usize]> {
        self.parts.as_ref().map(|p| p[x].as_slice())
    }

    pub fn index_of_parts(&self, parts: &[usize]) -> Option<usize> {
        let index = self.parts_index.get_or_init(|| {
            self.parts
                .iter()
                .flatten()
                .enumerate()
                .map(|(i, v)| (v.clone(), i))
                .collect()
        });
        index.get(parts).copied()
    }

    pub fn grid_shape(&self) -> Option<(usize, usize)> {
        self.base.grid_shape()
    }
}

pub fn ideal_lattice(p: &Poset) -> Result<IdealLattice> {
    ideal_lattice_with_cap(p, DEFAULT_IDEAL_CAP)
}

pub fn ideal_lattice_with_cap(p: &Poset, cap: usize) -> Result<IdealLattice> {
    let n = p.size();
    let mut ideals = Vec::new();
    let mut current = FixedBitSet::with_capacity(n);
    enumerate_ideals(p, 0, &mut current, &mut ideals, cap)?;

    let index: HashMap<&FixedBitSet, usize> =
        ideals.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut covers = Vec::new();
    for (i, ideal) in ideals.iter().enumerate() {
        for x in 0..n {
            if !ideal.contains(x) && p.lower_covers(x).iter().all(|&y| ideal.contains(y)) {
                let mut bigger = ideal.clone();
                bigger.insert(x);
                covers.push((i, index[&bigger]));
            }
        }
    }

    let grid = p.grid_shape();
    let parts: Option<Vec<Vec<usize>>> = grid.map(|(m, cols)| {
        ideals
            .iter()
            .map(|ideal| {
                // Canonical grid order is row-major over (i, j).
                let mut rows = vec![0usize; m];
                for e in ideal.ones() {
                    rows[e / cols] += 1;
                }
                rows.reverse();
                rows
            })
            .collect()
    });

    let (keys, labels): (Vec<Vec<i64>>, Vec<String>) = match &parts {
        Some(parts) => parts
            .iter()
            .map(|pt| {
                let key = pt.iter().map(|&v| v as i64).collect();
                (key, partition_label(pt))
            })
            .unzip(),
        None => ideals
            .iter()
            .map(|ideal| {
                let mut key = vec![ideal.count_ones(..) as i64];
                key.extend(ideal.ones().map(|e| e as i64));
                let names: Vec<&str> = ideal.ones().map(|e| p.label(e)).collect();
                (key, format!("{{{}}}", names.join(",")))
            })
            .unzip(),
    };

    let (lattice, order) = Poset::assemble_ordered(keys, labels, Relation::Covers(covers), None)?;

    // Reorder ideals to match the lattice's canonical order.
    let mut ideals: Vec<Option<FixedBitSet>> = ideals.into_iter().map(Some).collect();
    let sorted_ideals: Vec<FixedBitSet> = order
        .iter()
        .map(|&old| ideals[old].take().expect("order is a permutation"))
        .collect();
    let sorted_parts: Option<Vec<Vec<usize>>> = parts.map(|mut pt| {
        order
            .iter()
            .map(|&old| std::mem::take(&mut pt[old]))
            .collect()
    });
    Ok(IdealLattice {
        base: p.clone(),
        lattice,
        ideals: sorted_ideals,
        parts: sorted_parts,
        parts_index: OnceLock::new(),
    })
}

fn enumerate_ideals(
    p: &Poset,
    next: usize,
    current: &mut FixedBitSet,
    out: &mut Vec<FixedBitSet>,
    cap: usize,
) -> Result<()> {
    if next == p.size() {
        if out.len() == cap {
            return Err(Error::ResourceCap {
                what: "ideal lattice",
                size: cap + 1,
                cap,
            });
        }
        out.push(current.clone());
        return Ok(());
    }
    enumerate_ideals(p, next + 1, current, out, cap)?;
    if p.lower_covers(next).iter().all(|&y| current.contains(y)) {
        current.insert(next);
        enumerate_ideals(p, next + 1, current, out, cap)?;
        current.set(next, false);
    }
    Ok(())
}

pub(crate) fn partition_label(parts: &[usize]) -> String {
    let mut out = Vec::with_capacity(2 * parts.len() + 2);
    out.push(b'(');
    let mut digits = [0u8; 20];
    for (i, &v) in parts.iter().enumerate() {
        if i > 0 {
            out.push(b',');
        }
        if v < 10 {
            out.push(b'0' + v as u8);
            continue;
        }
        let mut v = v;
        let mut d = digits.len();
        loop {
            d -= 1;
            digits[d] = b'0' + (v % 10) as u8;
            v /= 10;
            if v == 0 {
                break;
            }
        }
        out.extend_from_slice(&digits[d..]);
    }
    out.push(b')');
    String::from_utf8(out).expect("ascii digits")
}
