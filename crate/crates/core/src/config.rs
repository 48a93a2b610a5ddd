//! Configurations: `m`-element subsets of `Z = {-m, …, n}`, read as
//! representatives of `ℤ/(m+n+1)`. The bijection `psi` carries `f̃` on
//! `E_L` to the cyclic shift by one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::EnhancedPartition;

/// Default cap on the number of configurations produced by an enumeration.
pub const DEFAULT_CONFIG_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Configuration {
    m: usize,
    n: usize,
    members: Vec<i64>,
}

impl Configuration {
    /// `members` must be strictly increasing, inside `[-m, n]` where `m` is
    /// the number of members.
    pub fn new(n: usize, members: Vec<i64>) -> Result<Self> {
        let m = members.len();
        if m == 0 {
            return Err(Error::InvalidConfiguration("no members".into()));
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfiguration(format!(
                "{members:?} is not strictly increasing"
            )));
        }
        let (lo, hi) = (-(m as i64), n as i64);
        if let Some(x) = members.iter().find(|&&x| x < lo || x > hi) {
            return Err(Error::InvalidConfiguration(format!(
                "{x} lies outside [{lo}, {hi}]"
            )));
        }
        Ok(Configuration { m, n, members })
    }

    /// Parses `{-4,-1,1,2,3}`; `<` and `≤` also separate members, and the
    /// unicode minus sign is accepted.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected braces around {text:?}")))?;
        let members = inner
            .replace('−', "-")
            .split([',', '<', '≤'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad member {s:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, members)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[i64] {
        &self.members
    }

    fn modulus(&self) -> i64 {
        (self.m + self.n + 1) as i64
    }

    /// Number of members in `(0, n]`.
    pub fn positive_count(&self) -> usize {
        self.members.iter().filter(|&&x| x > 0).count()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.members.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedConfiguration {
    pub config: Configuration,
    pub sign: i8,
}

impl SignedConfiguration {
    pub fn new(config: Configuration, sign: i8) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidConfiguration(format!(
                "sign must be ±1, got {sign}"
            )));
        }
        Ok(SignedConfiguration { config, sign })
    }
}

impl fmt::Display for SignedConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign > 0 { '+' } else { '-' };
        write!(f, "{s}{}", self.config)
    }
}

/// `sorted{μ(j)}` where `μ(j)` is the `j`-th entry when `j` ends the fixed
/// zeros or an unfixed block, and `-j` otherwise.
pub fn psi(e: &EnhancedPartition) -> Result<Configuration> {
    if !e.is_el() {
        return Err(Error::NotLeft(e.to_string()));
    }
    let parts = e.chi();
    let mut ends = Vec::with_capacity(e.r() + 1);
    let mut s = e.alpha0();
    ends.push(s);
    for &(_, a) in e.blocks() {
        s += a;
        ends.push(s);
    }
    let mut members: Vec<i64> = (1..=e.m())
        .map(|j| {
            if ends.contains(&j) {
                parts.parts()[j - 1] as i64
            } else {
                -(j as i64)
            }
        })
        .collect();
    members.sort_unstable();
    Configuration::new(e.n(), members)
}

/// Inverse of `psi`: a negative member `i_j` is replaced by the member
/// `|i_j| + j` places along, or by a fixed `n` when that runs off the end.
pub fn phi(d: &Configuration) -> Result<EnhancedPartition> {
    let m = d.m;
    let i = &d.members;
    let mut values: Vec<usize> = Vec::with_capacity(m);
    let mut starred = 0;
    for j in 1..=m {
        let x = i[j - 1];
        if x >= 0 {
            values.push(x as usize);
            continue;
        }
        let target = x.unsigned_abs() as usize + j;
        if target == m + 1 {
            starred += 1;
        } else if target < m + 1 && i[target - 1] >= 0 {
            values.push(i[target - 1] as usize);
        } else {
            return Err(Error::InvalidConfiguration(format!(
                "member {x} at position {j} of {d} has no image"
            )));
        }
    }
    values.sort_unstable();
    let zeros = values.iter().take_while(|&&v| v == 0).count();
    EnhancedPartition::from_sections(d.n, zeros, &values[zeros..], starred)
}

/// Subtracts `i` from every member modulo `m + n + 1`, with representatives
/// in `[-m, n]`.
pub fn shift(d: &Configuration, i: i64) -> Configuration {
    let modulus = d.modulus();
    let lo = -(d.m as i64);
    let mut members: Vec<i64> = d
        .members
        .iter()
        .map(|&x| (x - i - lo).rem_euclid(modulus) + lo)
        .collect();
    members.sort_unstable();
    Configuration {
        m: d.m,
        n: d.n,
        members,
    }
}

/// One shift, with the sign multiplied by `-1` and by `-1` once for every
/// member in `(0, n]` before the shift.
pub fn sign_step(sd: &SignedConfiguration) -> SignedConfiguration {
    let flips = 1 + sd.config.positive_count();
    let sign = if flips.is_multiple_of(2) {
        sd.sign
    } else {
        -sd.sign
    };
    SignedConfiguration {
        config: shift(&sd.config, 1),
        sign,
    }
}

/// `D{0}, D{1}, …, D{m+n}`.
pub fn orbit(d: &Configuration) -> Vec<Configuration> {
    (0..d.modulus()).map(|i| shift(d, i)).collect()
}

/// All configurations of the `m × n` box in lexicographic order.
pub fn enumerate_configs(m: usize, n: usize) -> Result<Vec<Configuration>> {
    enumerate_configs_with_cap(m, n, DEFAULT_CONFIG_CAP)
}

pub fn enumerate_configs_with_cap(m: usize, n: usize, cap: usize) -> Result<Vec<Configuration>> {
    if m == 0 {
        return Err(Error::InvalidConfiguration("no members".into()));
    }
    let total = binomial_capped(m + n + 1, m, cap);
    if total > cap {
        return Err(Error::ResourceCap {
            what: "configuration set",
            size: total,
            cap,
        });
    }
    let mut out = Vec::with_capacity(total);
    let mut cur = Vec::with_capacity(m);
    combinations(-(m as i64), n as i64, m, &mut cur, &mut |c| {
        out.push(Configuration {
            m,
            n,
            members: c.to_vec(),
        })
    });
    Ok(out)
}

fn combinations(lo: i64, hi: i64, k: usize, cur: &mut Vec<i64>, emit: &mut impl FnMut(&[i64])) {
    if cur.len() == k {
        emit(cur);
        return;
    }
    let need = (k - cur.len()) as i64;
    let start = cur.last().map_or(lo, |&x| x + 1);
    for x in start..=hi - need + 1 {
        cur.push(x);
        combinations(lo, hi, k, cur, emit);
        cur.pop();
    }
}

/// `C(n, k)`, saturating just above `cap`.
fn binomial_capped(n: usize, k: usize, cap: usize) -> usize {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 * (k as u128 + 1) {
            return cap + 1;
        }
    }
    usize::try_from(acc).unwrap_or(usize::MAX)
}
