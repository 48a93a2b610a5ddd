//! Partitions in an `m × n` box and their enhanced (barred) forms.
//!
//! An enhanced partition `(0^a | λ_1^{α_1}, …, λ_r^{α_r} | n^b)` marks `a`
//! leading zeros and `b` trailing `n`s as fixed. It is stored in block form:
//! the unfixed middle is a list of `(λ_i, α_i)` with strictly increasing
//! values. Block indices in the public API (`R_α`, `δ_J`) are 1-based.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::k0lin::{self, IntMatrix, K0Vector};
use crate::poset::{partition_label, IdealLattice};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlainPartition {
    n: usize,
    parts: Vec<usize>,
}

impl PlainPartition {
    pub fn new(n: usize, parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition(
                "a partition needs at least one row".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{} is not non-decreasing",
                partition_label(&parts)
            )));
        }
        if parts.iter().any(|&p| p > n) {
            return Err(Error::InvalidPartition(format!(
                "{} has an entry above n = {n}",
                partition_label(&parts)
            )));
        }
        Ok(PlainPartition { n, parts })
    }

    /// Parses `(a1,...,am)`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let inner = strip_parens(text)?;
        let parts = inner
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad entry {s:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, parts)
    }

    pub fn m(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Entry-wise comparison, the order of the ideal lattice.
    pub fn leq(&self, other: &PlainPartition) -> bool {
        self.parts.len() == other.parts.len()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for PlainPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&partition_label(&self.parts))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedPartition {
    n: usize,
    alpha0: usize,
    blocks: Vec<(usize, usize)>,
    alpha_last: usize,
}

impl EnhancedPartition {
    /// `alpha0` fixed zeros, unfixed `blocks` of `(value, multiplicity)`, and
    /// `alpha_last` fixed `n`s.
    pub fn new(
        n: usize,
        alpha0: usize,
        blocks: Vec<(usize, usize)>,
        alpha_last: usize,
    ) -> Result<Self> {
        let e = EnhancedPartition {
            n,
            alpha0,
            blocks,
            alpha_last,
        };
        if e.m() == 0 {
            return Err(Error::InvalidPartition(
                "a partition needs at least one row".into(),
            ));
        }
        if e.blocks.iter().any(|&(_, a)| a == 0) {
            return Err(Error::InvalidPartition(
                "block multiplicities must be positive".into(),
            ));
        }
        if e.blocks.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidPartition(
                "block values must increase strictly".into(),
            ));
        }
        if e.blocks.iter().any(|&(l, _)| l > n) {
            return Err(Error::InvalidPartition(format!(
                "block value above n = {n}"
            )));
        }
        Ok(e)
    }

    /// Groups a non-decreasing middle section into blocks.
    pub fn from_sections(
        n: usize,
        alpha0: usize,
        middle: &[usize],
        alpha_last: usize,
    ) -> Result<Self> {
        if middle.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPartition(
                "middle section is not non-decreasing".into(),
            ));
        }
        Self::new(n, alpha0, group(middle), alpha_last)
    }

    /// Parses the barred notation, e.g. `(0^2|2^3,5,6^4,9^2|13^2)`. The left
    /// section may only hold zeros and the right section only `n`s.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let normalized = normalize_superscripts(text);
        let inner = strip_parens(&normalized)?;
        let sections: Vec<&str> = inner.split('|').collect();
        if sections.len() != 3 {
            return Err(Error::Parse(format!(
                "expected two bars in {text:?}, found {}",
                sections.len().saturating_sub(1)
            )));
        }
        let left = expand_section(sections[0])?;
        let middle = expand_section(sections[1])?;
        let right = expand_section(sections[2])?;
        if left.iter().any(|&v| v != 0) {
            return Err(Error::Parse(format!(
                "fixed entries before the first bar must be 0 in {text:?}"
            )));
        }
        if right.iter().any(|&v| v != n) {
            return Err(Error::Parse(format!(
                "fixed entries after the second bar must equal n = {n} in {text:?}"
            )));
        }
        Self::from_sections(n, left.len(), &middle, right.len())
    }

    pub fn m(&self) -> usize {
        self.alpha0 + self.blocks.iter().map(|b| b.1).sum::<usize>() + self.alpha_last
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha0(&self) -> usize {
        self.alpha0
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn alpha_last(&self) -> usize {
        self.alpha_last
    }

    /// Number of unfixed blocks `r`.
    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    /// Forgets the bars.
    pub fn chi(&self) -> PlainPartition {
        let mut parts = vec![0; self.alpha0];
        for &(l, a) in &self.blocks {
            parts.extend(std::iter::repeat_n(l, a));
        }
        parts.extend(std::iter::repeat_n(self.n, self.alpha_last));
        PlainPartition { n: self.n, parts }
    }

    /// No unfixed zeros.
    pub fn is_el(&self) -> bool {
        self.blocks.first().is_none_or(|b| b.0 != 0)
    }

    /// No unfixed `n`s.
    pub fn is_er(&self) -> bool {
        self.blocks.last().is_none_or(|b| b.0 != self.n)
    }

    /// 1-based indices of the unfixed blocks with nonzero value.
    pub fn r_alpha(&self) -> Vec<usize> {
        let start = if self.is_el() { 1 } else { 2 };
        (start..=self.r()).collect()
    }

    /// `χ(α)` minus one at every position of the blocks in `subset`.
    pub fn delta(&self, subset: &[usize]) -> Result<PlainPartition> {
        let allowed = self.r_alpha();
        if subset.iter().any(|i| !allowed.contains(i)) {
            return Err(Error::SubsetOutsideR {
                subset: subset.to_vec(),
                allowed,
            });
        }
        let mut parts = vec![0; self.alpha0];
        for (k, &(l, a)) in self.blocks.iter().enumerate() {
            let v = if subset.contains(&(k + 1)) { l - 1 } else { l };
            parts.extend(std::iter::repeat_n(v, a));
        }
        parts.extend(std::iter::repeat_n(self.n, self.alpha_last));
        Ok(PlainPartition { n: self.n, parts })
    }

    fn require_left(&self) -> Result<()> {
        if self.is_el() {
            Ok(())
        } else {
            Err(Error::NotLeft(self.to_string()))
        }
    }

    fn require_right(&self) -> Result<()> {
        if self.is_er() {
            Ok(())
        } else {
            Err(Error::NotRight(self.to_string()))
        }
    }

    /// Keeps the last occurrence of every `λ_i` and lowers all other
    /// occurrences, fixed `n`s included, as far as possible.
    pub fn f(&self) -> Result<EnhancedPartition> {
        self.require_left()?;
        let n = self.n;
        let Some(&(last_value, _)) = self.blocks.last() else {
            let blocks = if self.alpha_last > 0 {
                vec![(0, self.alpha_last)]
            } else {
                vec![]
            };
            return Self::new(n, self.alpha0, blocks, 0);
        };
        let mut middle: Vec<usize> = Vec::new();
        let mut previous = 0;
        for &(l, a) in &self.blocks {
            middle.extend(std::iter::repeat_n(previous, a - 1));
            middle.push(l);
            previous = l;
        }
        // `middle` ends with one copy of λ_r; the fixed ns collapse onto it.
        middle.pop();
        let tail = 1 + self.alpha_last;
        if last_value == n {
            Self::from_sections(n, self.alpha0, &middle, tail)
        } else {
            middle.extend(std::iter::repeat_n(last_value, tail));
            Self::from_sections(n, self.alpha0, &middle, 0)
        }
    }

    /// Keeps the first occurrence of every `λ_i` and raises all other
    /// occurrences as far as possible.
    pub fn g(&self) -> Result<EnhancedPartition> {
        self.require_right()?;
        let n = self.n;
        let mut blocks = self.blocks.iter().copied().peekable();
        let mut carry = 0;
        if let Some(&(0, b)) = blocks.peek() {
            carry = b;
            blocks.next();
        }
        let mut out = Vec::new();
        for (mu, b) in blocks {
            out.push((mu, carry + 1));
            carry = b - 1;
        }
        if self.alpha_last == 0 {
            Self::new(n, self.alpha0, out, carry)
        } else {
            out.push((n, carry + 1));
            Self::new(n, self.alpha0, out, self.alpha_last - 1)
        }
    }

    /// `α - δ_{R_α}` with its bars: the fixed `n`s are kept; the zeros are
    /// fixed only up to the first position of `λ_1` when `λ_1 = 1`.
    pub fn enhance_minus_delta(&self) -> Result<EnhancedPartition> {
        self.require_left()?;
        let n = self.n;
        let lowered: Vec<(usize, usize)> = self.blocks.iter().map(|&(l, a)| (l - 1, a)).collect();
        match lowered.first() {
            Some(&(0, a1)) => {
                let mut middle = vec![0; a1 - 1];
                for &(l, a) in &lowered[1..] {
                    middle.extend(std::iter::repeat_n(l, a));
                }
                Self::from_sections(n, self.alpha0 + 1, &middle, self.alpha_last)
            }
            _ => {
                let mut middle = vec![0; self.alpha0];
                for &(l, a) in &lowered {
                    middle.extend(std::iter::repeat_n(l, a));
                }
                Self::from_sections(n, 0, &middle, self.alpha_last)
            }
        }
    }

    /// Lowers the first occurrence of each `λ_i` by one and raises all other
    /// entries as far as possible.
    pub fn f_tilde(&self) -> Result<EnhancedPartition> {
        self.require_left()?;
        let n = self.n;
        if self.blocks.is_empty() {
            return if self.alpha_last == 0 {
                Self::new(n, 0, vec![], self.alpha0)
            } else {
                Self::new(n, 0, vec![(n, self.alpha0 + 1)], self.alpha_last - 1)
            };
        }
        let r = self.r();
        // Multiplicity of λ_i - 1 is the size of the section in front of λ_i.
        let mut counts = vec![self.alpha0 + 1];
        counts.extend(self.blocks[..r - 1].iter().map(|b| b.1));
        let mut alpha0 = 0;
        let mut blocks = Vec::new();
        for (&(l, _), c) in self.blocks.iter().zip(counts) {
            if l == 1 {
                alpha0 = c;
            } else {
                blocks.push((l - 1, c));
            }
        }
        let last = self.blocks[r - 1].1;
        if self.alpha_last > 0 {
            blocks.push((n, last));
            Self::new(n, alpha0, blocks, self.alpha_last - 1)
        } else {
            Self::new(n, alpha0, blocks, last - 1)
        }
    }
}

impl fmt::Display for EnhancedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |v: usize, k: usize| {
            if k == 1 {
                v.to_string()
            } else {
                format!("{v}^{k}")
            }
        };
        let left = if self.alpha0 > 0 {
            power(0, self.alpha0)
        } else {
            String::new()
        };
        let middle: Vec<String> = self.blocks.iter().map(|&(l, a)| power(l, a)).collect();
        let right = if self.alpha_last > 0 {
            power(self.n, self.alpha_last)
        } else {
            String::new()
        };
        write!(f, "({left}|{}|{right})", middle.join(","))
    }
}

fn group(values: &[usize]) -> Vec<(usize, usize)> {
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    for &v in values {
        match blocks.last_mut() {
            Some((l, a)) if *l == v => *a += 1,
            _ => blocks.push((v, 1)),
        }
    }
    blocks
}

fn strip_parens(text: &str) -> Result<&str> {
    let t = text.trim();
    t.strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected parentheses around {text:?}")))
}

fn normalize_superscripts(text: &str) -> String {
    let mut out = String::new();
    let mut in_power = false;
    for c in text.chars() {
        let digit = "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|s| s == c);
        match digit {
            Some(d) => {
                if !in_power {
                    out.push('^');
                    in_power = true;
                }
                out.push(char::from(b'0' + d as u8));
            }
            None => {
                in_power = false;
                out.push(c);
            }
        }
    }
    out
}

fn expand_section(section: &str) -> Result<Vec<usize>> {
    let section = section.trim();
    if section.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for item in section.split(',') {
        let item = item.trim();
        let (value, count) = match item.split_once('^') {
            Some((v, k)) => (v.trim(), k.trim()),
            None => (item, "1"),
        };
        let value: usize = value
            .parse()
            .map_err(|_| Error::Parse(format!("bad entry {item:?}")))?;
        let count: usize = count
            .parse()
            .map_err(|_| Error::Parse(format!("bad multiplicity in {item:?}")))?;
        if count == 0 {
            return Err(Error::Parse(format!("zero multiplicity in {item:?}")));
        }
        out.extend(std::iter::repeat_n(value, count));
    }
    Ok(out)
}

/// Fixes all leading zeros and no `n`s.
pub fn default_enhance(p: &PlainPartition) -> EnhancedPartition {
    let zeros = p.parts.iter().take_while(|&&v| v == 0).count();
    EnhancedPartition::from_sections(p.n, zeros, &p.parts[zeros..], 0)
        .expect("a valid partition has a valid enhancement")
}

/// Enhanced partitions of the `m × n` box with no unfixed zeros.
pub fn enumerate_el(m: usize, n: usize) -> Vec<EnhancedPartition> {
    enumerate_with(m, n, 1, n)
}

/// Enhanced partitions of the `m × n` box with no unfixed `n`s.
pub fn enumerate_er(m: usize, n: usize) -> Vec<EnhancedPartition> {
    enumerate_with(m, n, 0, n.saturating_sub(1))
        .into_iter()
        .filter(|e| e.is_er())
        .collect()
}

/// Every enhanced partition of the `m × n` box.
pub fn enumerate_all(m: usize, n: usize) -> Vec<EnhancedPartition> {
    enumerate_with(m, n, 0, n)
}

fn enumerate_with(m: usize, n: usize, lo: usize, hi: usize) -> Vec<EnhancedPartition> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    for alpha0 in 0..=m {
        for alpha_last in 0..=(m - alpha0) {
            let len = m - alpha0 - alpha_last;
            let mut middle = Vec::with_capacity(len);
            sequences(len, lo, hi, &mut middle, &mut |mid| {
                out.push(
                    EnhancedPartition::from_sections(n, alpha0, mid, alpha_last)
                        .expect("enumerated sections are valid"),
                );
            });
        }
    }
    out
}

fn sequences(
    len: usize,
    lo: usize,
    hi: usize,
    cur: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if cur.len() == len {
        emit(cur);
        return;
    }
    if lo > hi {
        return;
    }
    let start = cur.last().copied().unwrap_or(lo).max(lo);
    for v in start..=hi {
        cur.push(v);
        sequences(len, lo, hi, cur, emit);
        cur.pop();
    }
}

/// All partitions in the `m × n` box in lexicographic order.
pub fn enumerate_plain(m: usize, n: usize) -> Vec<PlainPartition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    sequences(m, 0, n, &mut cur, &mut |p| {
        out.push(PlainPartition {
            n,
            parts: p.to_vec(),
        })
    });
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResolutionKind {
    Projective,
    Injective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionTerm {
    /// `-|subset|`.
    pub degree: i64,
    pub vertex: PlainPartition,
    /// 1-based block indices `J ⊆ R_α`, increasing.
    pub subset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub kind: ResolutionKind,
    pub terms: Vec<ResolutionTerm>,
}

/// One term `α - δ_J` per subset `J ⊆ R_α`, from degree `-r` up to `0`.
pub fn resolution_terms(e: &EnhancedPartition, kind: ResolutionKind) -> Result<Resolution> {
    e.require_left()?;
    let r_set = e.r_alpha();
    let r = r_set.len();
    let mut subsets: Vec<Vec<usize>> = (0u32..(1 << r))
        .map(|mask| {
            (0..r)
                .filter(|&t| mask & (1 << t) != 0)
                .map(|t| r_set[t])
                .collect()
        })
        .collect();
    subsets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let terms = subsets
        .into_iter()
        .map(|j| {
            Ok(ResolutionTerm {
                degree: -(j.len() as i64),
                vertex: e.delta(&j)?,
                subset: j,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Resolution { kind, terms })
}

/// Lattice element holding the ideal with the given row counts.
pub fn vertex_index(lattice: &IdealLattice, p: &PlainPartition) -> Result<usize> {
    if lattice.grid_shape().is_none() {
        return Err(Error::NotAGridLattice);
    }
    lattice
        .index_of_parts(p.parts())
        .ok_or_else(|| Error::VertexNotFound(p.to_string()))
}

/// Alternating sum of the projective (or injective) classes of the terms.
pub fn euler_class(res: &Resolution, lattice: &IdealLattice) -> Result<K0Vector> {
    let l = &lattice.lattice;
    let mut coords = vec![BigInt::from(0); l.size()];
    for t in &res.terms {
        let x = vertex_index(lattice, &t.vertex)?;
        let sign = if t.degree % 2 == 0 { 1 } else { -1 };
        let support: Vec<usize> = match res.kind {
            ResolutionKind::Projective => l.down_set(x),
            ResolutionKind::Injective => l.up_set(x).ones().collect(),
        };
        for y in support {
            coords[y] += sign;
        }
    }
    Ok(K0Vector::new(coords))
}

/// Sum of the simple classes over `[lo, hi]`.
pub fn interval_class(
    lattice: &IdealLattice,
    lo: &PlainPartition,
    hi: &PlainPartition,
) -> Result<K0Vector> {
    let a = vertex_index(lattice, lo)?;
    let b = vertex_index(lattice, hi)?;
    let l = &lattice.lattice;
    let mut coords = vec![BigInt::from(0); l.size()];
    for x in l.interval(a, b)? {
        coords[x] = BigInt::from(1);
    }
    Ok(K0Vector::new(coords))
}

/// `L_x = [[f(x), x]]`, the class of the projective resolution of `x`.
pub fn l_class(lattice: &IdealLattice, e: &EnhancedPartition) -> Result<K0Vector> {
    interval_class(lattice, &e.f()?.chi(), &e.chi())
}

/// Columns `L_α` for every lattice element `α` with its default enhancement,
/// in lattice order.
pub fn spanning_matrix(lattice: &IdealLattice) -> Result<IntMatrix> {
    let (_, n) = lattice.grid_shape().ok_or(Error::NotAGridLattice)?;
    let columns = (0..lattice.size())
        .map(|x| {
            let parts = lattice.parts(x).ok_or(Error::NotAGridLattice)?;
            l_class(
                lattice,
                &default_enhance(&PlainPartition::new(n, parts.to_vec())?),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_columns(&columns)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexHomology {
    pub vertex: String,
    /// Size of `J_β`: the largest `J` with `β <= α - δ_J` (projective), or
    /// the smallest `J` with `α - δ_J <= β` (injective).
    pub j_size: usize,
    /// Nonzero homology dimensions as `(degree, dimension)`.
    pub homology: Vec<(i64, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub alpha: String,
    pub kind: ResolutionKind,
    pub expected_degree: i64,
    /// Endpoints of the interval that should carry one-dimensional homology.
    pub expected_interval: (String, String),
    pub vertices: Vec<VertexHomology>,
    /// Deviations from the predicted homology; empty when the prediction holds.
    pub findings: Vec<String>,
}

impl HomologyReport {
    pub fn as_predicted(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn total_dimension(&self) -> usize {
        self.vertices
            .iter()
            .flat_map(|v| v.homology.iter().map(|h| h.1))
            .sum()
    }
}

/// Splits the resolution into scalar complexes, one per lattice vertex in its
/// support, and computes their homology from exact ranks of the face maps.
pub fn check_resolution_exact(
    e: &EnhancedPartition,
    lattice: &IdealLattice,
    kind: ResolutionKind,
) -> Result<HomologyReport> {
    let res = resolution_terms(e, kind)?;
    let r = e.r_alpha().len();
    let l = &lattice.lattice;

    let (expected_degree, lo, hi) = match kind {
        ResolutionKind::Projective => (0, e.f()?.chi(), e.chi()),
        ResolutionKind::Injective => {
            let lowered = e.enhance_minus_delta()?;
            (-(r as i64), lowered.chi(), lowered.g()?.chi())
        }
    };
    let lo_idx = vertex_index(lattice, &lo)?;
    let hi_idx = vertex_index(lattice, &hi)?;
    let mut predicted = vec![false; l.size()];
    if l.leq(lo_idx, hi_idx) {
        for x in l.interval(lo_idx, hi_idx)? {
            predicted[x] = true;
        }
    }

    // Term vertices keyed by subset bitmask over positions in R_α.
    let r_set = e.r_alpha();
    let mut term_vertex: HashMap<u32, usize> = HashMap::new();
    for t in &res.terms {
        let mask = t
            .subset
            .iter()
            .map(|i| 1u32 << r_set.iter().position(|x| x == i).expect("subset of R"))
            .sum();
        term_vertex.insert(mask, vertex_index(lattice, &t.vertex)?);
    }

    let mut in_support = vec![false; l.size()];
    for &x in term_vertex.values() {
        match kind {
            ResolutionKind::Projective => {
                l.down_set(x).into_iter().for_each(|y| in_support[y] = true)
            }
            ResolutionKind::Injective => l.up_set(x).ones().for_each(|y| in_support[y] = true),
        }
    }

    let mut cache: HashMap<Vec<u32>, Vec<(i64, usize)>> = HashMap::new();
    let mut vertices = Vec::new();
    let mut findings = Vec::new();
    for beta in (0..l.size()).filter(|&b| in_support[b]) {
        let present = |mask: u32| -> bool {
            let x = term_vertex[&mask];
            match kind {
                ResolutionKind::Projective => l.leq(beta, x),
                ResolutionKind::Injective => l.leq(x, beta),
            }
        };
        let family: Vec<u32> = (0u32..(1 << r)).filter(|&m| present(m)).collect();
        let j_size = match kind {
            ResolutionKind::Projective => (0..r).filter(|&t| present(1 << t)).count(),
            ResolutionKind::Injective => {
                let full = (1u32 << r) - 1;
                (0..r).filter(|&t| !present(full & !(1 << t))).count()
            }
        };
        let homology = cache
            .entry(family)
            .or_insert_with_key(|fam| face_homology(fam, r))
            .clone();
        let label = l.label(beta).to_string();
        let expect_here = predicted[beta];
        let matches = if expect_here {
            homology == vec![(expected_degree, 1)]
        } else {
            homology.is_empty()
        };
        if !matches {
            findings.push(format!(
                "vertex {label}: homology {homology:?}, expected {}",
                if expect_here {
                    format!("[({expected_degree}, 1)]")
                } else {
                    "none".into()
                }
            ));
        }
        vertices.push(VertexHomology {
            vertex: label,
            j_size,
            homology,
        });
    }
    for x in (0..l.size()).filter(|&x| predicted[x] && !in_support[x]) {
        findings.push(format!(
            "vertex {} is predicted but outside every term",
            l.label(x)
        ));
    }

    Ok(HomologyReport {
        alpha: e.to_string(),
        kind,
        expected_degree,
        expected_interval: (lo.to_string(), hi.to_string()),
        vertices,
        findings,
    })
}

/// Homology of the complex spanned by `family` (subsets of `{0..r}` as
/// bitmasks) with differential `J ↦ Σ_t (-1)^t (J \ j_t)`, where faces
/// outside the family are dropped. Degree of `J` is `-|J|`.
fn face_homology(family: &[u32], r: usize) -> Vec<(i64, usize)> {
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); r + 1];
    for &m in family {
        by_size[m.count_ones() as usize].push(m);
    }
    // boundary_rank[k] = rank of the map from size-k faces to size-(k-1) faces.
    let mut boundary_rank = vec![0usize; r + 2];
    for k in 1..=r {
        let (src, dst) = (&by_size[k], &by_size[k - 1]);
        if src.is_empty() || dst.is_empty() {
            continue;
        }
        let index: HashMap<u32, usize> = dst.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut rows = vec![vec![0i64; src.len()]; dst.len()];
        for (c, &m) in src.iter().enumerate() {
            let mut t = 0;
            for bit in 0..r {
                if m & (1 << bit) == 0 {
                    continue;
                }
                if let Some(&row) = index.get(&(m & !(1 << bit))) {
                    rows[row][c] = if t % 2 == 0 { 1 } else { -1 };
                }
                t += 1;
            }
        }
        boundary_rank[k] = k0lin::rank(&IntMatrix::from_rows(&rows).expect("rectangular"));
    }
    let mut out = Vec::new();
    for k in 0..=r {
        let dim = by_size[k].len();
        let h = dim - boundary_rank[k] - boundary_rank[k + 1];
        if h > 0 {
            out.push((-(k as i64), h));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k0lin::{coxeter_matrix, CoxeterOperator};
    use crate::poset::{grid, ideal_lattice};

    fn ep(text: &str, n: usize) -> EnhancedPartition {
        EnhancedPartition::parse(text, n).unwrap()
    }

    fn pp(text: &str, n: usize) -> PlainPartition {
        PlainPartition::parse(text, n).unwrap()
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn parse_and_print() {
        let e = ep("(0^2|2^3,5,6^4,9^2|13^2)", 13);
        assert_eq!(e.to_string(), "(0^2|2^3,5,6^4,9^2|13^2)");
        assert_eq!(e.m(), 14);
        assert_eq!(ep("(0²|2³,5,6⁴,9²|13²)", 13), e);
        assert_eq!(ep("(0|2,2,3,7|)", 7).to_string(), "(0|2^2,3,7|)");
        assert!(EnhancedPartition::parse("(||)", 3).is_err());
        assert!(EnhancedPartition::parse("(1|2|3)", 3).is_err());
        assert!(EnhancedPartition::parse("(0|2|2)", 3).is_err());
        assert!(EnhancedPartition::parse("(0|3,2|)", 3).is_err());
        assert!(EnhancedPartition::parse("0|2|", 3).is_err());
        assert!(EnhancedPartition::parse("(0|2)", 3).is_err());
        assert!(PlainPartition::parse("(2,1)", 3).is_err());
        assert!(PlainPartition::parse("(1,4)", 3).is_err());
        assert_eq!(pp("(0, 2,2,3,7)", 7).to_string(), "(0,2,2,3,7)");
    }

    #[test]
    fn chi_examples() {
        assert_eq!(ep("(0|2,2,3|7)", 7).chi(), pp("(0,2,2,3,7)", 7));
        assert_eq!(
            ep("(0^2|2^3,5,6^4,9^2|13^2)", 13).chi(),
            pp("(0,0,2,2,2,5,6,6,6,6,9,9,13,13)", 13)
        );
        assert!(EnhancedPartition::new(3, 0, vec![], 0).is_err());
    }

    #[test]
    fn left_right_and_r() {
        let a = ep("(0|2,2,3,7|)", 7);
        assert!(a.is_el());
        assert_eq!(a.r_alpha(), vec![1, 2, 3]);
        assert_eq!(ep("(0|2,2,3|7)", 7).r_alpha(), vec![1, 2]);
        let z = ep("(0^3||)", 4);
        assert!(z.is_el() && z.is_er());
        assert!(z.r_alpha().is_empty());
        let b = ep("(|0,1,4|)", 4);
        assert!(!b.is_el() && !b.is_er());
        assert_eq!(b.r_alpha(), vec![2, 3]);
    }

    #[test]
    fn delta_examples() {
        let a = ep("(0|2,2,3,7|)", 7);
        assert_eq!(a.delta(&[2]).unwrap(), pp("(0,2,2,2,7)", 7));
        assert_eq!(a.delta(&[]).unwrap(), a.chi());
        let b = ep("(|2,2,6,6,6,6,9,9,9,9,9|)", 9);
        assert_eq!(b.delta(&[2]).unwrap(), pp("(2,2,5,5,5,5,9,9,9,9,9)", 9));
        assert!(matches!(a.delta(&[4]), Err(Error::SubsetOutsideR { .. })));
        // Positionwise oracle.
        let j = [1, 3];
        let got = a.delta(&j).unwrap();
        let expected: Vec<usize> = a
            .chi()
            .parts()
            .iter()
            .map(|&v| if v == 2 || v == 7 { v - 1 } else { v })
            .collect();
        assert_eq!(got.parts(), expected.as_slice());
    }

    #[test]
    fn worked_values() {
        let a = ep("(0^2|2^3,5,6^4,9^2|13^2)", 13);
        assert_eq!(a.f().unwrap(), ep("(0^2|0^2,2,5^4,6^2,9^3|)", 13));
        assert_eq!(a.g().unwrap(), ep("(0^2|2,5^3,6,9^4,13^2|13)", 13));
        assert_eq!(a.f_tilde().unwrap(), ep("(|1^3,4^3,5,8^4,13^2|13)", 13));
        assert_eq!(
            ep("(|1,1,2,3,3|)", 3).f_tilde().unwrap(),
            ep("(0|1,1,2|3)", 3)
        );
        assert_eq!(
            ep("(0|2,2,3,7|)", 7).f().unwrap().chi(),
            pp("(0,0,2,3,7)", 7)
        );
        let b = ep("(|2,2,6^4,9^5|)", 9);
        let lowered = b.enhance_minus_delta().unwrap();
        assert_eq!(lowered, ep("(|1,1,5,5,5,5,8,8,8,8,8|)", 9));
        assert_eq!(lowered.g().unwrap(), ep("(|1,5,5,8,8,8,8|9,9,9,9)", 9));
        assert_eq!(
            ep("(0|1,1,2|3)", 3).enhance_minus_delta().unwrap(),
            ep("(0^2|0,1|3)", 3)
        );
    }

    #[test]
    fn degenerate_blocks() {
        assert_eq!(ep("(0^2||3^2)", 3).f().unwrap(), ep("(0^2|0^2|)", 3));
        assert_eq!(ep("(0^4||)", 3).f().unwrap(), ep("(0^4||)", 3));
        assert_eq!(ep("(0^4||)", 3).f_tilde().unwrap(), ep("(||3^4)", 3));
        assert_eq!(ep("(0^2||3^2)", 3).f_tilde().unwrap(), ep("(|3^3|3)", 3));
        assert_eq!(
            ep("(0^2||3^2)", 3).enhance_minus_delta().unwrap(),
            ep("(|0^2|3^2)", 3)
        );
        assert!(ep("(|0,1|)", 3).f().is_err());
        assert!(ep("(|1,3|)", 3).g().is_err());
    }

    #[test]
    fn default_enhancement() {
        assert_eq!(default_enhance(&pp("(0,0,0)", 2)), ep("(0^3||)", 2));
        assert_eq!(
            default_enhance(&pp("(0,2,2,3,7)", 7)),
            ep("(0|2,2,3,7|)", 7)
        );
        assert_eq!(
            default_enhance(&pp("(1,1,2,3,3)", 3)),
            ep("(|1,1,2,3,3|)", 3)
        );
    }

    #[test]
    fn enumeration_counts() {
        for m in 1..=5 {
            for n in 1..=5 {
                assert_eq!(enumerate_el(m, n).len(), binomial(m + n + 1, m));
                assert_eq!(enumerate_er(m, n).len(), binomial(m + n + 1, m));
                assert_eq!(enumerate_plain(m, n).len(), binomial(m + n, m));
                assert!(enumerate_el(m, n).iter().all(|e| e.is_el() && e.m() == m));
                assert!(enumerate_er(m, n).iter().all(|e| e.is_er() && e.m() == m));
            }
        }
    }

    #[test]
    fn bijections_small() {
        for m in 1..=5 {
            for n in 1..=10 - m {
                for a in enumerate_el(m, n) {
                    let fa = a.f().unwrap();
                    assert!(fa.is_er(), "{a}");
                    assert_eq!(fa.g().unwrap(), a, "{a}");
                    let ft = a.f_tilde().unwrap();
                    assert!(ft.is_el());
                    assert_eq!(ft, a.enhance_minus_delta().unwrap().g().unwrap(), "{a}");
                }
                for b in enumerate_er(m, n) {
                    assert_eq!(b.g().unwrap().f().unwrap(), b, "{b}");
                }
            }
        }
    }

    fn resolution_display(e: &EnhancedPartition) -> Vec<(i64, String)> {
        let mut v: Vec<(i64, String)> = resolution_terms(e, ResolutionKind::Projective)
            .unwrap()
            .terms
            .into_iter()
            .map(|t| (t.degree, t.vertex.to_string()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn resolution_examples() {
        let mut expected = vec![
            (-3, "(0,1,1,2,6)"),
            (-2, "(0,1,1,2,7)"),
            (-2, "(0,2,2,2,6)"),
            (-2, "(0,1,1,3,6)"),
            (-1, "(0,1,1,3,7)"),
            (-1, "(0,2,2,2,7)"),
            (-1, "(0,2,2,3,6)"),
            (0, "(0,2,2,3,7)"),
        ]
        .into_iter()
        .map(|(d, s)| (d, s.to_string()))
        .collect::<Vec<_>>();
        expected.sort();
        assert_eq!(resolution_display(&ep("(0|2,2,3,7|)", 7)), expected);
        let mut expected2: Vec<(i64, String)> = vec![
            (-2, "(0,1,1,2,7)".to_string()),
            (-1, "(0,1,1,3,7)".to_string()),
            (-1, "(0,2,2,2,7)".to_string()),
            (0, "(0,2,2,3,7)".to_string()),
        ];
        expected2.sort();
        assert_eq!(resolution_display(&ep("(0|2,2,3|7)", 7)), expected2);
        let single = resolution_terms(&ep("(0^2||4)", 4), ResolutionKind::Projective).unwrap();
        assert_eq!(single.terms.len(), 1);
        assert_eq!(single.terms[0].degree, 0);
    }

    #[test]
    fn euler_classes_are_intervals() {
        let lat = ideal_lattice(&grid(5, 7).unwrap()).unwrap();
        let a = ep("(0|2,2,3,7|)", 7);
        let proj = euler_class(
            &resolution_terms(&a, ResolutionKind::Projective).unwrap(),
            &lat,
        )
        .unwrap();
        assert_eq!(
            proj,
            interval_class(&lat, &pp("(0,0,2,3,7)", 7), &pp("(0,2,2,3,7)", 7)).unwrap()
        );
        let inj = euler_class(
            &resolution_terms(&a, ResolutionKind::Injective).unwrap(),
            &lat,
        )
        .unwrap();
        let lowered = a.enhance_minus_delta().unwrap();
        let target = interval_class(&lat, &lowered.chi(), &lowered.g().unwrap().chi()).unwrap();
        assert_eq!(inj, target.scale(-1));
        let x = vertex_index(&lat, &pp("(0,0,0,7,7)", 7)).unwrap();
        let c = euler_class(
            &resolution_terms(&ep("(0^3||7^2)", 7), ResolutionKind::Projective).unwrap(),
            &lat,
        )
        .unwrap();
        assert_eq!(c, k0lin::projective_class(&lat.lattice, x).unwrap());
    }

    #[test]
    fn interval_class_examples() {
        let lat = ideal_lattice(&grid(2, 3).unwrap()).unwrap();
        let p = pp("(1,2)", 3);
        let v = interval_class(&lat, &p, &p).unwrap();
        assert_eq!(v, K0Vector::unit(10, vertex_index(&lat, &p).unwrap()));
        assert!(matches!(
            interval_class(&lat, &pp("(0,3)", 3), &pp("(1,1)", 3)),
            Err(Error::EmptyInterval { .. })
        ));
        let lat53 = ideal_lattice(&grid(5, 3).unwrap()).unwrap();
        let src = interval_class(&lat53, &pp("(0,1,2,2,3)", 3), &pp("(1,1,2,3,3)", 3)).unwrap();
        let dst = interval_class(&lat53, &pp("(0,0,1,2,2)", 3), &pp("(0,1,1,2,3)", 3)).unwrap();
        let phi = coxeter_matrix(&lat53.lattice);
        assert_eq!(phi.mul_vec(&src).unwrap(), dst);
        assert!(matches!(
            vertex_index(&lat53, &pp("(0,1)", 3)),
            Err(Error::VertexNotFound(_))
        ));
    }

    #[test]
    fn coxeter_step_on_intervals() {
        for (m, n) in [(2, 2), (2, 3), (3, 3), (1, 4), (4, 2)] {
            let lat = ideal_lattice(&grid(m, n).unwrap()).unwrap();
            let op = CoxeterOperator::new(&lat.lattice);
            for a in enumerate_el(m, n) {
                let proj = euler_class(
                    &resolution_terms(&a, ResolutionKind::Projective).unwrap(),
                    &lat,
                )
                .unwrap();
                assert_eq!(
                    proj,
                    interval_class(&lat, &a.f().unwrap().chi(), &a.chi()).unwrap()
                );
                let sign = if a.r_alpha().len() % 2 == 0 { -1 } else { 1 };
                let lowered = a.enhance_minus_delta().unwrap();
                let target =
                    interval_class(&lat, &lowered.chi(), &a.f_tilde().unwrap().chi()).unwrap();
                assert_eq!(op.apply(&proj).unwrap(), target.scale(sign), "{a}");
            }
        }
    }

    #[test]
    fn exactness_examples() {
        let lat = ideal_lattice(&grid(5, 7).unwrap()).unwrap();
        let a = ep("(0|2,2,3,7|)", 7);
        let p = check_resolution_exact(&a, &lat, ResolutionKind::Projective).unwrap();
        assert!(p.as_predicted(), "{:?}", p.findings);
        assert_eq!(
            p.expected_interval,
            ("(0,0,2,3,7)".into(), "(0,2,2,3,7)".into())
        );
        let i = check_resolution_exact(&a, &lat, ResolutionKind::Injective).unwrap();
        assert!(i.as_predicted(), "{:?}", i.findings);
        assert_eq!(i.expected_degree, -3);
        let single = ep("(0^5||)", 7);
        let s = check_resolution_exact(&single, &lat, ResolutionKind::Projective).unwrap();
        assert!(s.as_predicted());
        assert_eq!(s.total_dimension(), 1);
    }

    #[test]
    fn exactness_exhaustive_small() {
        for (m, n) in [(1, 3), (2, 2), (2, 3), (3, 3), (4, 2)] {
            let lat = ideal_lattice(&grid(m, n).unwrap()).unwrap();
            for a in enumerate_el(m, n) {
                for kind in [ResolutionKind::Projective, ResolutionKind::Injective] {
                    let rep = check_resolution_exact(&a, &lat, kind).unwrap();
                    assert!(rep.as_predicted(), "{a} {kind:?}: {:?}", rep.findings);
                    let hi = vertex_index(
                        &lat,
                        &PlainPartition::parse(&rep.expected_interval.1, n).unwrap(),
                    )
                    .unwrap();
                    let lo = vertex_index(
                        &lat,
                        &PlainPartition::parse(&rep.expected_interval.0, n).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(
                        rep.total_dimension(),
                        lat.lattice.interval(lo, hi).unwrap().len()
                    );
                }
            }
        }
    }

    #[test]
    fn face_complexes() {
        // Full simplex on 3 vertices: acyclic.
        let full: Vec<u32> = (0..8).collect();
        assert!(face_homology(&full, 3).is_empty());
        // Only the empty face: homology in degree 0.
        assert_eq!(face_homology(&[0], 3), vec![(0, 1)]);
        // Only the top face: homology in degree -3.
        assert_eq!(face_homology(&[7], 3), vec![(-3, 1)]);
        // Boundary of a triangle with the empty face.
        let hollow: Vec<u32> = (0..7).collect();
        assert_eq!(face_homology(&hollow, 3), vec![(-2, 1)]);
    }
}
