//! Finite crystallographic root systems, their root posets, and the
//! cominuscule intervals `[σ, η]` below the highest root.
//!
//! Simple roots use Bourbaki numbering (1-based in the public API):
//!
//! * `B_n`: `α_n` is the short root. `C_n`: `α_n` is the long root.
//! * `D_n`: the branch node is `α_{n-2}`, joined to `α_{n-1}` and `α_n`.
//! * `E_6`, `E_7`: the chain `α_1 - α_3 - α_4 - … - α_r` with `α_2` attached to `α_4`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{grid, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
}

impl RootType {
    pub fn label(self) -> char {
        match self {
            RootType::A => 'A',
            RootType::B => 'B',
            RootType::C => 'C',
            RootType::D => 'D',
            RootType::E => 'E',
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(RootType::A),
            "B" => Ok(RootType::B),
            "C" => Ok(RootType::C),
            "D" => Ok(RootType::D),
            "E" => Ok(RootType::E),
            other => Err(Error::Parse(format!("unknown root system type {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub type_label: RootType,
    pub rank: usize,
    /// `cartan[i][j] = <α_j, α_i^∨>`.
    pub cartan: Vec<Vec<i64>>,
    /// Coefficient vectors over the simple roots, sorted by height then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    pub heights: Vec<i64>,
}

/// Symmetrized inner products of the simple roots.
fn gram(t: RootType, n: usize) -> Result<Vec<Vec<i64>>> {
    let unsupported = Err(Error::UnsupportedRootSystem {
        label: t.label(),
        rank: n,
    });
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let ok = match t {
        RootType::A => n >= 1,
        RootType::B | RootType::C => n >= 2,
        RootType::D => n >= 4,
        RootType::E => n == 6 || n == 7,
    };
    if !ok {
        return unsupported;
    }
    match t {
        RootType::A | RootType::B | RootType::C => {
            edges.extend((0..n - 1).map(|i| (i, i + 1)));
        }
        RootType::D => {
            edges.extend((0..n - 2).map(|i| (i, i + 1)));
            edges.push((n - 3, n - 1));
        }
        RootType::E => {
            edges.extend([(0, 2), (2, 3), (1, 3)]);
            edges.extend((3..n - 1).map(|i| (i, i + 1)));
        }
    }
    // Long roots have squared length 2 in types A, D, E and in B/C away from the last node.
    let mut g = vec![vec![0i64; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in &edges {
        g[i][j] = -1;
        g[j][i] = -1;
    }
    match t {
        RootType::B => {
            g[n - 1][n - 1] = 1;
        }
        RootType::C => {
            g[n - 1][n - 1] = 4;
            g[n - 2][n - 1] = -2;
            g[n - 1][n - 2] = -2;
        }
        _ => {}
    }
    Ok(g)
}

pub fn build_root_system(t: RootType, rank: usize) -> Result<RootSystem> {
    let g = gram(t, rank)?;
    let n = rank;
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| 2 * g[i][j] / g[i][i]).collect())
        .collect();

    let simple = |i: usize| -> Vec<i64> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    let mut known: HashSet<Vec<i64>> = (0..n).map(simple).collect();
    let mut level: Vec<Vec<i64>> = (0..n).map(simple).collect();
    let mut roots: Vec<Vec<i64>> = level.clone();
    while !level.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &level {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        roots.extend(next.iter().cloned());
        level = next;
    }
    roots.sort_by(|a, b| {
        let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    let heights = roots.iter().map(|r| r.iter().sum()).collect();
    Ok(RootSystem {
        type_label: t,
        rank,
        cartan,
        positive_roots: roots,
        heights,
    })
}

impl RootSystem {
    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots
            .last()
            .expect("root systems are nonempty")
    }

    /// Position of a coefficient vector among the positive roots.
    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == coeffs)
    }
}

/// `ht(η) + 1`.
pub fn coxeter_number(rs: &RootSystem) -> usize {
    rs.highest_root().iter().sum::<i64>() as usize + 1
}

/// 1-based indices of the simple roots with coefficient 1 in the highest root.
pub fn cominuscule_roots(rs: &RootSystem) -> Vec<usize> {
    rs.highest_root()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 1)
        .map(|(i, _)| i + 1)
        .collect()
}

fn root_label(coeffs: &[i64]) -> String {
    let items: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    format!("[{}]", items.join(","))
}

/// Positive roots ordered by the transitive closure of `β ⋖ β + α_i`.
pub fn root_poset(rs: &RootSystem) -> Poset {
    let index: HashMap<&[i64], usize> = rs
        .positive_roots
        .iter()
        .enumerate()
        .map(|(k, r)| (r.as_slice(), k))
        .collect();
    let mut covers = Vec::new();
    for (k, beta) in rs.positive_roots.iter().enumerate() {
        for i in 0..rs.rank {
            let mut up = beta.clone();
            up[i] += 1;
            if let Some(&u) = index.get(up.as_slice()) {
                covers.push((k, u));
            }
        }
    }
    let labels = rs.positive_roots.iter().map(|r| root_label(r)).collect();
    Poset::from_covers(labels, &covers).expect("root covers raise the height")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeTag {
    /// A grid poset.
    I,
    /// A shifted staircase.
    II,
    /// Two chains joined through a pair of incomparable elements.
    III,
    E6,
    E7,
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ShapeTag::I => "I",
            ShapeTag::II => "II",
            ShapeTag::III => "III",
            ShapeTag::E6 => "E6",
            ShapeTag::E7 => "E7",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct CominusculeData {
    /// 1-based index of the simple root σ.
    pub root_index: usize,
    /// The interval `[σ, η]` of the root poset.
    pub poset: Poset,
    pub shape: ShapeTag,
}

/// The interval `[α_i, η]` of the root poset for a cominuscule simple root `α_i`
/// (1-based), classified against a reference construction of its shape.
pub fn cominuscule_poset(rs: &RootSystem, i: usize) -> Result<CominusculeData> {
    if i == 0 || i > rs.rank {
        return Err(Error::ElementOutOfRange(i));
    }
    let coefficient = rs.highest_root()[i - 1];
    if coefficient != 1 {
        return Err(Error::NotCominuscule {
            index: i,
            coefficient,
        });
    }
    let full = root_poset(rs);
    let mut sigma = vec![0; rs.rank];
    sigma[i - 1] = 1;
    let lo = full
        .index_of(&root_label(&sigma))
        .expect("simple roots are roots");
    let hi = full
        .index_of(&root_label(rs.highest_root()))
        .expect("highest root is a root");
    let poset = full.subposet(&full.interval(lo, hi)?)?;

    let n = rs.rank;
    let (shape, reference) = match rs.type_label {
        RootType::A => (ShapeTag::I, Some(grid(i, n + 1 - i)?)),
        RootType::B => (ShapeTag::I, Some(grid(1, 2 * n - 1)?)),
        RootType::C => (ShapeTag::II, Some(shifted_staircase(n)?)),
        RootType::D if i == 1 => (ShapeTag::III, Some(fork_poset(n)?)),
        RootType::D => (ShapeTag::II, Some(shifted_staircase(n - 1)?)),
        RootType::E if n == 6 => (ShapeTag::E6, None),
        RootType::E => (ShapeTag::E7, None),
    };
    let matches = match &reference {
        Some(r) => r.size() == poset.size() && r.fingerprint() == poset.fingerprint(),
        None => poset.size() == if shape == ShapeTag::E6 { 16 } else { 27 },
    };
    if !matches || poset.bottom().is_none() || poset.top().is_none() {
        return Err(Error::ShapeMismatch {
            index: i,
            expected: shape.to_string(),
        });
    }
    Ok(CominusculeData {
        root_index: i,
        poset,
        shape,
    })
}

/// Pairs `(i, j)` with `1 <= i <= j <= k`, ordered entry-wise.
pub fn shifted_staircase(k: usize) -> Result<Poset> {
    let mut cells = Vec::new();
    for i in 1..=k {
        for j in i..=k {
            cells.push((i, j));
        }
    }
    let labels = cells.iter().map(|(i, j)| format!("({i},{j})")).collect();
    Poset::from_leq(labels, |a, b| {
        cells[a].0 <= cells[b].0 && cells[a].1 <= cells[b].1
    })
}

/// The `2n - 2` element poset of the `D_n` first-node interval: a chain
/// `1 < … < n-2`, the incomparable pair `n-1, n`, then `n+1 < … < 2n-2`.
pub fn fork_poset(n: usize) -> Result<Poset> {
    if n < 3 {
        return Err(Error::UnsupportedRootSystem {
            label: 'D',
            rank: n,
        });
    }
    let size = 2 * n - 2;
    let labels = (1..=size).map(|v| v.to_string()).collect();
    let mut covers: Vec<(usize, usize)> = (0..n - 3).map(|v| (v, v + 1)).collect();
    // 0-based: n-3 is the top of the lower chain, n-2 and n-1 the pair, n the next.
    covers.extend([(n - 3, n - 2), (n - 3, n - 1), (n - 2, n), (n - 1, n)]);
    covers.extend((n..size - 1).map(|v| (v, v + 1)));
    Poset::from_covers(labels, &covers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::ideal_lattice;

    fn classical_count(t: RootType, n: usize) -> usize {
        match t {
            RootType::A => n * (n + 1) / 2,
            RootType::B | RootType::C => n * n,
            RootType::D => n * (n - 1),
            RootType::E => [0, 0, 0, 0, 0, 0, 36, 63][n],
        }
    }

    fn supported() -> Vec<(RootType, usize)> {
        let mut v = Vec::new();
        for n in 1..=8 {
            v.push((RootType::A, n));
        }
        for n in 2..=7 {
            v.push((RootType::B, n));
            v.push((RootType::C, n));
        }
        for n in 4..=8 {
            v.push((RootType::D, n));
        }
        v.push((RootType::E, 6));
        v.push((RootType::E, 7));
        v
    }

    #[test]
    fn root_counts() {
        for (t, n) in supported() {
            let rs = build_root_system(t, n).unwrap();
            assert_eq!(rs.positive_roots.len(), classical_count(t, n), "{t}{n}");
            let h = coxeter_number(&rs);
            assert_eq!(rs.positive_roots.len() * 2, n * h, "{t}{n}");
            for i in 0..n {
                let mut s = vec![0; n];
                s[i] = 1;
                assert!(rs.root_index(&s).is_some());
            }
            let top = *rs.heights.iter().max().unwrap();
            assert_eq!(rs.heights.iter().filter(|&&h| h == top).count(), 1);
        }
    }

    #[test]
    fn examples() {
        let a3 = build_root_system(RootType::A, 3).unwrap();
        assert_eq!(a3.positive_roots.len(), 6);
        assert_eq!(a3.highest_root(), &[1, 1, 1]);
        assert_eq!(
            build_root_system(RootType::A, 1)
                .unwrap()
                .positive_roots
                .len(),
            1
        );
        let e6 = build_root_system(RootType::E, 6).unwrap();
        assert_eq!(e6.highest_root(), &[1, 2, 2, 3, 2, 1]);
        let e7 = build_root_system(RootType::E, 7).unwrap();
        assert_eq!(e7.highest_root(), &[2, 2, 3, 4, 3, 2, 1]);
        assert!(build_root_system(RootType::D, 3).is_err());
        assert!(build_root_system(RootType::E, 8).is_err());
        assert!(build_root_system(RootType::B, 1).is_err());
    }

    #[test]
    fn coxeter_numbers() {
        for n in 1..8 {
            assert_eq!(
                coxeter_number(&build_root_system(RootType::A, n).unwrap()),
                n + 1
            );
        }
        for n in 2..8 {
            assert_eq!(
                coxeter_number(&build_root_system(RootType::B, n).unwrap()),
                2 * n
            );
            assert_eq!(
                coxeter_number(&build_root_system(RootType::C, n).unwrap()),
                2 * n
            );
        }
        for n in 4..8 {
            assert_eq!(
                coxeter_number(&build_root_system(RootType::D, n).unwrap()),
                2 * n - 2
            );
        }
        assert_eq!(
            coxeter_number(&build_root_system(RootType::E, 6).unwrap()),
            12
        );
        assert_eq!(
            coxeter_number(&build_root_system(RootType::E, 7).unwrap()),
            18
        );
    }

    #[test]
    fn cominuscule_indices() {
        let rs = |t, n| build_root_system(t, n).unwrap();
        assert_eq!(cominuscule_roots(&rs(RootType::A, 3)), vec![1, 2, 3]);
        for n in 2..7 {
            assert_eq!(cominuscule_roots(&rs(RootType::B, n)), vec![1]);
            assert_eq!(cominuscule_roots(&rs(RootType::C, n)), vec![n]);
        }
        for n in 4..8 {
            assert_eq!(cominuscule_roots(&rs(RootType::D, n)), vec![1, n - 1, n]);
        }
        assert_eq!(cominuscule_roots(&rs(RootType::E, 6)), vec![1, 6]);
        assert_eq!(cominuscule_roots(&rs(RootType::E, 7)), vec![7]);
    }

    #[test]
    fn root_poset_a3() {
        let p = root_poset(&build_root_system(RootType::A, 3).unwrap());
        assert_eq!(p.size(), 6);
        assert_eq!(p.label(p.top().unwrap()), "[1,1,1]");
        assert_eq!(p.minimal_elements().len(), 3);
        let ranks = p.ranks();
        for a in 0..p.size() {
            let height: usize = p.label(a).matches('1').count();
            assert_eq!(ranks[a] + 1, height);
        }
    }

    #[test]
    fn cover_order_matches_coefficient_order() {
        for (t, n) in supported() {
            let rs = build_root_system(t, n).unwrap();
            let p = root_poset(&rs);
            let coeffs: HashMap<String, &Vec<i64>> = rs
                .positive_roots
                .iter()
                .map(|r| (root_label(r), r))
                .collect();
            for a in 0..p.size() {
                for b in 0..p.size() {
                    let (ca, cb) = (coeffs[p.label(a)], coeffs[p.label(b)]);
                    let dominated = ca.iter().zip(cb.iter()).all(|(x, y)| x <= y);
                    assert_eq!(p.leq(a, b), dominated, "{t}{n}");
                }
            }
        }
    }

    #[test]
    fn cominuscule_shapes() {
        for n in 1..=6 {
            let rs = build_root_system(RootType::A, n).unwrap();
            for k in 1..=n {
                let c = cominuscule_poset(&rs, k).unwrap();
                assert_eq!(c.shape, ShapeTag::I);
                assert!(c.poset.is_isomorphic(&grid(k, n + 1 - k).unwrap()));
            }
        }
        for n in 2..=6 {
            let c = cominuscule_poset(&build_root_system(RootType::B, n).unwrap(), 1).unwrap();
            assert!(c.poset.is_isomorphic(&grid(1, 2 * n - 1).unwrap()));
        }
        for n in 4..=7 {
            let rs = build_root_system(RootType::D, n).unwrap();
            let c = cominuscule_poset(&rs, 1).unwrap();
            assert_eq!(c.shape, ShapeTag::III);
            assert_eq!(c.poset.size(), 2 * n - 2);
            assert!(c.poset.is_isomorphic(&fork_poset(n).unwrap()));
            assert_eq!(ideal_lattice(&c.poset).unwrap().size(), 2 * n);
            let a = cominuscule_poset(&rs, n - 1).unwrap().poset;
            let b = cominuscule_poset(&rs, n).unwrap().poset;
            let cn1 = cominuscule_poset(&build_root_system(RootType::C, n - 1).unwrap(), n - 1)
                .unwrap()
                .poset;
            assert!(a.is_isomorphic(&b));
            assert!(a.is_isomorphic(&cn1));
            assert_eq!(a.size(), n * (n - 1) / 2);
        }
        for n in 2..=6 {
            let c = cominuscule_poset(&build_root_system(RootType::C, n).unwrap(), n).unwrap();
            assert_eq!(c.shape, ShapeTag::II);
            assert!(c.poset.is_isomorphic(&shifted_staircase(n).unwrap()));
        }
        let e6 = build_root_system(RootType::E, 6).unwrap();
        for i in [1, 6] {
            let c = cominuscule_poset(&e6, i).unwrap();
            assert_eq!(c.poset.size(), 16);
            assert_eq!(ideal_lattice(&c.poset).unwrap().size(), 27);
        }
        assert!(cominuscule_poset(&e6, 1)
            .unwrap()
            .poset
            .is_isomorphic(&cominuscule_poset(&e6, 6).unwrap().poset));
        let e7 = cominuscule_poset(&build_root_system(RootType::E, 7).unwrap(), 7).unwrap();
        assert_eq!(e7.poset.size(), 27);
        assert_eq!(ideal_lattice(&e7.poset).unwrap().size(), 56);
    }

    #[test]
    fn non_cominuscule_rejected() {
        let b3 = build_root_system(RootType::B, 3).unwrap();
        assert_eq!(
            cominuscule_poset(&b3, 2).unwrap_err(),
            Error::NotCominuscule {
                index: 2,
                coefficient: 2
            }
        );
        assert!(cominuscule_poset(&b3, 4).is_err());
        let e7 = build_root_system(RootType::E, 7).unwrap();
        assert!(matches!(
            cominuscule_poset(&e7, 4),
            Err(Error::NotCominuscule { coefficient: 4, .. })
        ));
    }

    #[test]
    fn every_cominuscule_interval_is_bounded() {
        for (t, n) in supported() {
            let rs = build_root_system(t, n).unwrap();
            for i in cominuscule_roots(&rs) {
                let c = cominuscule_poset(&rs, i).unwrap();
                assert!(c.poset.bottom().is_some() && c.poset.top().is_some());
            }
        }
    }
}
