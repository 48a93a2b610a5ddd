//! Verification suites behind the command line: each suite builds a lattice,
//! measures the Coxeter order, runs the invariant checks, and collects the
//! outcome in a serializable report.

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{self, phi, psi, shift, sign_step, SignedConfiguration};
use crate::error::{Error, Result};
use crate::k0lin::{
    self, char_poly, coxeter_matrix, default_order_bound, injective_class, projective_class,
    CoxeterOperator, K0Vector, SignedOrder,
};
use crate::partition::{
    self, check_resolution_exact, enumerate_el, enumerate_er, euler_class, interval_class, l_class,
    resolution_terms, spanning_matrix, EnhancedPartition, ResolutionKind,
};
use crate::poset::{dynkin_d_tree, flip_flop, grid, ideal_lattice_with_cap, IdealLattice, Poset};
use crate::rootsys::{build_root_system, cominuscule_poset, coxeter_number, RootType, ShapeTag};

pub const REPORT_SCHEMA: &str = "coxlab/1";
/// Largest lattice on which the full invariant sweep runs by default.
pub const DEFAULT_SWEEP_CAP: usize = 1000;
/// Largest lattice on which the order alone is computed by default.
pub const DEFAULT_ORDER_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Subject {
    Grid {
        m: usize,
        n: usize,
    },
    Cominuscule {
        #[serde(rename = "type")]
        type_label: String,
        rank: usize,
        root: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSummary {
    pub k: usize,
    pub sign: i8,
    pub exact: usize,
}

impl From<SignedOrder> for OrderSummary {
    fn from(o: SignedOrder) -> Self {
        OrderSummary {
            k: o.k,
            sign: o.sign,
            exact: o.exact_order,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    /// Predicted order, when one is known.
    pub order: Option<OrderSummary>,
    /// `Φ` raised to this power should be the identity.
    pub period: Option<usize>,
    /// No theorem covers this case; its checks never fail the run.
    pub open_case: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Counterexample or measured value.
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub open: bool,
}

impl Check {
    fn new(name: &str, pass: bool, detail: Option<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail,
            open: false,
        }
    }

    fn from_outcome(name: &str, outcome: std::result::Result<(), String>) -> Self {
        match outcome {
            Ok(()) => Check::new(name, true, None),
            Err(e) => Check::new(name, false, Some(e)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub subject: Subject,
    pub lattice_size: usize,
    pub order: Option<OrderSummary>,
    pub expected: Expectation,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
    pub ms: u64,
}

impl VerificationReport {
    /// True when every check outside the open cases passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass || c.open)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass && !c.open).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub sweep_cap: usize,
    pub order_cap: usize,
    pub skip_exactness: bool,
    /// Exponent bound for the order search; defaults to four times the lattice size.
    pub k_max: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            sweep_cap: DEFAULT_SWEEP_CAP,
            order_cap: DEFAULT_ORDER_CAP,
            skip_exactness: false,
            k_max: None,
        }
    }
}

/// `(m+n+1, (-1)^{(m+1)(n+1)})` as an order.
pub fn grid_expectation(m: usize, n: usize) -> OrderSummary {
    let sign = if ((m + 1) * (n + 1)).is_multiple_of(2) {
        1
    } else {
        -1
    };
    SignedOrder::new(m + n + 1, sign).into()
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

fn build_lattice(p: &Poset, cap: usize) -> Result<IdealLattice> {
    ideal_lattice_with_cap(p, cap)
}

fn order_checks(measured: &OrderSummary, expected: &OrderSummary) -> Vec<Check> {
    vec![
        Check::new(
            "order_minimal_k",
            measured.k == expected.k,
            Some(format!("measured {}, predicted {}", measured.k, expected.k)),
        ),
        Check::new(
            "order_sign",
            measured.sign == expected.sign,
            Some(format!(
                "measured {:+}, predicted {:+}",
                measured.sign, expected.sign
            )),
        ),
        Check::new(
            "exact_order",
            measured.exact == expected.exact,
            Some(format!(
                "measured {}, predicted {}",
                measured.exact, expected.exact
            )),
        ),
    ]
}

fn first_failure<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> std::result::Result<(), String> + Sync,
) -> std::result::Result<(), String> {
    match items.par_iter().find_map_first(|x| f(x).err()) {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn err_text(e: Error) -> String {
    e.to_string()
}

/// `Φ·[P_x] = -[I_x]` for every element.
pub fn check_projective_to_injective(p: &Poset, op: &CoxeterOperator) -> Check {
    let elements: Vec<usize> = (0..p.size()).collect();
    Check::from_outcome(
        "projective_to_injective",
        first_failure(&elements, |&x| {
            let image = op
                .apply(&projective_class(p, x).map_err(err_text)?)
                .map_err(err_text)?;
            let target = injective_class(p, x).map_err(err_text)?.scale(-1);
            if image == target {
                Ok(())
            } else {
                Err(format!("element {}", p.label(x)))
            }
        }),
    )
}

/// Runs the full grid suite on `J(P_{m,n})`.
pub fn verify_grid(m: usize, n: usize, opts: &SuiteOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    if m == 0 || n == 0 {
        return Err(Error::EmptyPoset);
    }
    let size = binomial(m + n, m);
    if size > opts.order_cap as u128 {
        return Err(Error::ResourceCap {
            what: "ideal lattice",
            size: usize::try_from(size).unwrap_or(usize::MAX),
            cap: opts.order_cap,
        });
    }
    let lattice = build_lattice(&grid(m, n)?, opts.order_cap)?;
    let l = &lattice.lattice;
    let op = CoxeterOperator::new(l);
    let k_max = opts.k_max.unwrap_or_else(|| default_order_bound(l.size()));
    let expected = grid_expectation(m, n);

    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    let order = match op.signed_order(k_max) {
        Ok(o) => {
            let o = OrderSummary::from(o);
            checks.extend(order_checks(&o, &expected));
            Some(o)
        }
        Err(e) => {
            checks.push(Check::new("order_minimal_k", false, Some(e.to_string())));
            None
        }
    };

    if l.size() <= opts.sweep_cap {
        checks.extend(grid_sweep(m, n, &lattice, &op, opts.skip_exactness));
        if opts.skip_exactness {
            skipped.push("exactness".to_string());
        }
    } else {
        skipped.push(format!(
            "invariant sweep (lattice above {} elements)",
            opts.sweep_cap
        ));
    }

    Ok(VerificationReport {
        schema: REPORT_SCHEMA.to_string(),
        subject: Subject::Grid { m, n },
        lattice_size: l.size(),
        order,
        expected: Expectation {
            order: Some(expected),
            period: Some(expected.exact),
            open_case: false,
            note: format!("Φ^{} = {:+}·I", expected.k, expected.sign),
        },
        checks,
        skipped,
        ms: start.elapsed().as_millis() as u64,
    })
}

fn grid_sweep(
    m: usize,
    n: usize,
    lattice: &IdealLattice,
    op: &CoxeterOperator,
    skip_exactness: bool,
) -> Vec<Check> {
    let l = &lattice.lattice;
    let el = enumerate_el(m, n);
    let er = enumerate_er(m, n);
    let mut checks = vec![check_projective_to_injective(l, op)];

    checks.push(Check::from_outcome(
        "fog",
        first_failure(&el, |a| {
            let back = a.f().and_then(|b| b.g()).map_err(err_text)?;
            (back == *a)
                .then_some(())
                .ok_or_else(|| format!("g(f({a})) = {back}"))
        })
        .and_then(|_| {
            first_failure(&er, |b| {
                let back = b.g().and_then(|a| a.f()).map_err(err_text)?;
                (back == *b)
                    .then_some(())
                    .ok_or_else(|| format!("f(g({b})) = {back}"))
            })
        }),
    ));

    checks.push(Check::from_outcome(
        "tilde_fog",
        first_failure(&el, |a| {
            let lhs = a.f_tilde().map_err(err_text)?;
            let rhs = a
                .enhance_minus_delta()
                .and_then(|b| b.g())
                .map_err(err_text)?;
            (lhs == rhs)
                .then_some(())
                .ok_or_else(|| format!("{a}: f̃ gives {lhs}, g∘(α-δ) gives {rhs}"))
        }),
    ));

    checks.push(Check::from_outcome(
        "psi_bijection",
        psi_bijection(m, n, &el),
    ));

    checks.push(Check::from_outcome(
        "commuting_square",
        first_failure(&el, |a| {
            let lhs = a.f_tilde().and_then(|b| psi(&b)).map_err(err_text)?;
            let rhs = shift(&psi(a).map_err(err_text)?, 1);
            (lhs == rhs)
                .then_some(())
                .ok_or_else(|| format!("{a}: ψ(f̃) = {lhs}, shift(ψ) = {rhs}"))
        }),
    ));

    checks.push(Check::from_outcome(
        "projective_interval",
        first_failure(&el, |a| {
            let res = resolution_terms(a, ResolutionKind::Projective).map_err(err_text)?;
            let lhs = euler_class(&res, lattice).map_err(err_text)?;
            let rhs = l_class(lattice, a).map_err(err_text)?;
            (lhs == rhs).then_some(()).ok_or_else(|| format!("{a}"))
        }),
    ));

    checks.push(Check::from_outcome(
        "injective_interval",
        first_failure(&el, |a| {
            let res = resolution_terms(a, ResolutionKind::Injective).map_err(err_text)?;
            let lhs = euler_class(&res, lattice).map_err(err_text)?;
            let lowered = a.enhance_minus_delta().map_err(err_text)?;
            let hi = lowered.g().map_err(err_text)?;
            let sign = if a.r_alpha().len() % 2 == 0 { 1 } else { -1 };
            let rhs = interval_class(lattice, &lowered.chi(), &hi.chi())
                .map_err(err_text)?
                .scale(sign);
            (lhs == rhs).then_some(()).ok_or_else(|| format!("{a}"))
        }),
    ));

    checks.push(Check::from_outcome(
        "tau_step",
        first_failure(&el, |a| {
            let image = op
                .apply(&l_class(lattice, a).map_err(err_text)?)
                .map_err(err_text)?;
            let sign = if a.r_alpha().len() % 2 == 0 { -1 } else { 1 };
            let lo = a.enhance_minus_delta().map_err(err_text)?.chi();
            let hi = a.f_tilde().map_err(err_text)?.chi();
            let target = interval_class(lattice, &lo, &hi)
                .map_err(err_text)?
                .scale(sign);
            (image == target)
                .then_some(())
                .ok_or_else(|| format!("{a}"))
        }),
    ));

    checks.push(Check::from_outcome(
        "sign_transport",
        first_failure(&el, |a| sign_transport(a, lattice, op, m + n + 1)),
    ));

    let configs = config::enumerate_configs(m, n).unwrap_or_default();
    let orbit_sign = grid_expectation(m, n).sign;
    checks.push(Check::from_outcome(
        "full_orbit_sign",
        first_failure(&configs, |d| {
            let mut sd = SignedConfiguration::new(d.clone(), 1).map_err(err_text)?;
            for _ in 0..m + n + 1 {
                sd = sign_step(&sd);
            }
            (sd.config == *d && sd.sign == orbit_sign)
                .then_some(())
                .ok_or_else(|| format!("{d} returns as {sd}"))
        }),
    ));

    if !skip_exactness {
        for (name, kind) in [
            ("exactness_projective", ResolutionKind::Projective),
            ("exactness_injective", ResolutionKind::Injective),
        ] {
            checks.push(Check::from_outcome(
                name,
                first_failure(&el, |a| {
                    let rep = check_resolution_exact(a, lattice, kind).map_err(err_text)?;
                    if rep.as_predicted() {
                        Ok(())
                    } else {
                        Err(format!("{a}: {}", rep.findings.join("; ")))
                    }
                }),
            ));
        }
    }

    checks.push(
        match spanning_matrix(lattice).and_then(|s| k0lin::determinant(&s)) {
            Ok(det) => {
                let pass = det == 1.into() || det == (-1).into();
                Check::new("spanning_unimodular", pass, Some(format!("det = {det}")))
            }
            Err(e) => Check::new("spanning_unimodular", false, Some(e.to_string())),
        },
    );
    checks
}

fn psi_bijection(m: usize, n: usize, el: &[EnhancedPartition]) -> std::result::Result<(), String> {
    let configs = config::enumerate_configs(m, n).map_err(err_text)?;
    let mut image = HashSet::with_capacity(el.len());
    for a in el {
        let d = psi(a).map_err(err_text)?;
        let back = phi(&d).map_err(err_text)?;
        if back != *a {
            return Err(format!("φ(ψ({a})) = {back}"));
        }
        if !image.insert(d.clone()) {
            return Err(format!("ψ repeats {d}"));
        }
    }
    if image.len() != configs.len() {
        return Err(format!(
            "ψ hits {} of {} configurations",
            image.len(),
            configs.len()
        ));
    }
    first_failure(&configs, |d| {
        let back = phi(d).and_then(|a| psi(&a)).map_err(err_text)?;
        (back == *d)
            .then_some(())
            .ok_or_else(|| format!("ψ(φ({d})) = {back}"))
    })
}

/// `Φ^k·L_α = s_k·L_{f̃^k(α)}` with `s_k` from iterating `sign_step`.
fn sign_transport(
    a: &EnhancedPartition,
    lattice: &IdealLattice,
    op: &CoxeterOperator,
    steps: usize,
) -> std::result::Result<(), String> {
    let mut v = l_class(lattice, a).map_err(err_text)?;
    let mut b = a.clone();
    let mut sd = SignedConfiguration::new(psi(a).map_err(err_text)?, 1).map_err(err_text)?;
    for k in 1..=steps {
        v = op.apply(&v).map_err(err_text)?;
        b = b.f_tilde().map_err(err_text)?;
        sd = sign_step(&sd);
        let target = l_class(lattice, &b)
            .map_err(err_text)?
            .scale(sd.sign as i64);
        if v != target {
            return Err(format!("{a}: step {k} disagrees with sign {:+}", sd.sign));
        }
    }
    Ok(())
}

/// Builds `J(C)` for a cominuscule root and measures its Coxeter order.
pub fn verify_cominuscule(
    t: RootType,
    rank: usize,
    root: usize,
    opts: &SuiteOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let rs = build_root_system(t, rank)?;
    let data = cominuscule_poset(&rs, root)?;
    let h = coxeter_number(&rs);
    let period = 2 * (h + 1);
    let lattice = build_lattice(&data.poset, opts.order_cap)?;
    let l = &lattice.lattice;
    let op = CoxeterOperator::new(l);
    let k_max = opts.k_max.unwrap_or_else(|| default_order_bound(l.size()));

    let open_case = data.shape == ShapeTag::II;
    let (predicted, note) = match (t, data.shape) {
        (RootType::A, _) => {
            let e = grid_expectation(root, rank + 1 - root);
            (Some(e), format!("grid {}x{}", root, rank + 1 - root))
        }
        (RootType::B, _) => (
            Some(grid_expectation(1, 2 * rank - 1)),
            format!("grid 1x{}", 2 * rank - 1),
        ),
        (RootType::D, ShapeTag::III) => (
            Some(SignedOrder::new(h + 1, -1).into()),
            format!("exact order 2(h+1) = {period}"),
        ),
        (_, ShapeTag::II) => (
            None,
            "open case: no theorem for the shifted staircase".to_string(),
        ),
        _ => (None, format!("Φ^{period} = I")),
    };

    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    let order = match op.signed_order(k_max) {
        Ok(o) => Some(OrderSummary::from(o)),
        Err(e) => {
            checks.push(Check::new("order_found", false, Some(e.to_string())));
            None
        }
    };
    if let (Some(o), Some(e)) = (&order, &predicted) {
        checks.extend(order_checks(o, e));
    }
    if let Some(o) = &order {
        let mut c = Check::new(
            "period_divides_2(h+1)",
            period.is_multiple_of(o.exact),
            Some(format!("exact order {}, 2(h+1) = {period}", o.exact)),
        );
        c.open = open_case;
        checks.push(c);
    }

    match data.shape {
        ShapeTag::E6 => checks.push(Check::new(
            "ideal_lattice_size",
            l.size() == 27,
            Some(format!("{} elements", l.size())),
        )),
        ShapeTag::E7 => checks.push(Check::new(
            "ideal_lattice_size",
            l.size() == 56,
            Some(format!("{} elements", l.size())),
        )),
        _ => {}
    }

    if t == RootType::A {
        let g = build_lattice(&grid(root, rank + 1 - root)?, opts.order_cap)?;
        let grid_order = CoxeterOperator::new(&g.lattice)
            .signed_order(k_max)
            .map(OrderSummary::from);
        checks.push(Check::new(
            "matches_grid",
            grid_order.as_ref().ok() == order.as_ref() && g.lattice.is_isomorphic(l),
            Some(format!("grid order {:?}", grid_order.ok())),
        ));
    }

    if l.size() <= opts.sweep_cap {
        checks.push(check_projective_to_injective(l, &op));
        let phi_matrix = coxeter_matrix(l);
        checks.push(Check::new(
            "coxeter_unimodular",
            k0lin::is_unimodular(&phi_matrix),
            None,
        ));
        if data.shape == ShapeTag::III {
            checks.extend(fork_checks(rank, l, &phi_matrix));
        }
    } else {
        skipped.push(format!(
            "invariant sweep (lattice above {} elements)",
            opts.sweep_cap
        ));
    }

    Ok(VerificationReport {
        schema: REPORT_SCHEMA.to_string(),
        subject: Subject::Cominuscule {
            type_label: t.to_string(),
            rank,
            root,
        },
        lattice_size: l.size(),
        order,
        expected: Expectation {
            order: predicted,
            period: Some(period),
            open_case,
            note,
        },
        checks,
        skipped,
        ms: start.elapsed().as_millis() as u64,
    })
}

/// For `(D_n, σ_1)`: the Coxeter polynomial of `J(C)` equals that of the
/// `D_{2n}` tree, and flip-flops lead from one to the other.
fn fork_checks(n: usize, lattice: &Poset, phi_matrix: &k0lin::IntMatrix) -> Vec<Check> {
    let mut checks = Vec::new();
    let tree = match dynkin_d_tree(2 * n) {
        Ok(t) => t,
        Err(e) => {
            return vec![Check::new(
                "flip_flop_char_poly",
                false,
                Some(e.to_string()),
            )]
        }
    };
    let ours = char_poly(phi_matrix);
    let theirs = char_poly(&coxeter_matrix(&tree));
    checks.push(Check::new(
        "flip_flop_char_poly",
        ours.is_ok() && ours == theirs,
        ours.as_ref().ok().map(|c| format!("{c:?}")),
    ));

    let mut current = lattice.clone();
    let mut outcome = Ok(());
    for step in 1..n {
        match flip_flop(&current) {
            Ok(next) => {
                if char_poly(&coxeter_matrix(&next)) != ours {
                    outcome = Err(format!("Coxeter polynomial changes at flip-flop {step}"));
                    break;
                }
                current = next;
            }
            Err(e) => {
                outcome = Err(format!("flip-flop {step}: {e}"));
                break;
            }
        }
    }
    if outcome.is_ok() && !current.is_isomorphic(&tree) {
        outcome = Err(format!(
            "after {} flip-flops the poset is not the D_{} tree",
            n - 1,
            2 * n
        ));
    }
    checks.push(Check::from_outcome("flip_flop_chain", outcome));
    checks
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub step: usize,
    pub alpha: String,
    pub interval: (String, String),
    pub config: String,
    pub sign: i8,
    /// Whether `Φ^step·L_α` equals the signed class in this row; absent when
    /// the lattice was too large to check.
    pub coxeter_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitTrace {
    pub schema: String,
    pub m: usize,
    pub n: usize,
    pub rows: Vec<OrbitRow>,
    /// The last row repeats the first with sign `(-1)^{(m+1)(n+1)}`.
    pub closes: bool,
}

impl OrbitTrace {
    pub fn passed(&self) -> bool {
        self.closes && self.rows.iter().all(|r| r.coxeter_agrees != Some(false))
    }
}

/// The `τ`-orbit of `α` through `m + n + 1` steps plus the closing row.
pub fn orbit_trace(
    m: usize,
    n: usize,
    alpha: &EnhancedPartition,
    check_cap: usize,
) -> Result<OrbitTrace> {
    if alpha.m() != m || alpha.n() != n {
        return Err(Error::InvalidPartition(format!(
            "{alpha} does not fit a {m}x{n} box"
        )));
    }
    if !alpha.is_el() {
        return Err(Error::NotLeft(alpha.to_string()));
    }
    let size = binomial(m + n, m);
    let lattice = if size <= check_cap as u128 {
        Some(build_lattice(&grid(m, n)?, check_cap)?)
    } else {
        None
    };
    let op = lattice.as_ref().map(|l| CoxeterOperator::new(&l.lattice));
    let start_class: Option<K0Vector> = match &lattice {
        Some(l) => Some(l_class(l, alpha)?),
        None => None,
    };

    let mut rows = Vec::with_capacity(m + n + 2);
    let mut current = alpha.clone();
    let mut sd = SignedConfiguration::new(psi(alpha)?, 1)?;
    let mut image = start_class;
    for step in 0..=m + n + 1 {
        if step > 0 {
            current = current.f_tilde()?;
            sd = sign_step(&sd);
            if let (Some(op), Some(v)) = (&op, image.as_mut()) {
                *v = op.apply(v)?;
            }
        }
        let agrees = match (&lattice, &image) {
            (Some(l), Some(v)) => Some(*v == l_class(l, &current)?.scale(sd.sign as i64)),
            _ => None,
        };
        rows.push(OrbitRow {
            step,
            alpha: current.to_string(),
            interval: (current.f()?.chi().to_string(), current.chi().to_string()),
            config: sd.config.to_string(),
            sign: sd.sign,
            coxeter_agrees: agrees,
        });
    }
    let last = rows.last().expect("at least two rows");
    let closes = last.alpha == rows[0].alpha && last.sign == grid_expectation(m, n).sign;
    Ok(OrbitTrace {
        schema: REPORT_SCHEMA.to_string(),
        m,
        n,
        rows,
        closes,
    })
}

/// `partition::spanning_matrix` is unimodular.
pub fn spanning_is_unimodular(lattice: &IdealLattice) -> Result<bool> {
    Ok(k0lin::is_unimodular(&partition::spanning_matrix(lattice)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SuiteOptions {
        SuiteOptions::default()
    }

    #[test]
    fn grid_reports() {
        let r = verify_grid(2, 3, &quick()).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(
            r.order,
            Some(OrderSummary {
                k: 6,
                sign: 1,
                exact: 6
            })
        );
        assert_eq!(r.lattice_size, 10);
        let r = verify_grid(2, 2, &quick()).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(r.order.unwrap().exact, 10);
        assert_eq!(r.order.unwrap().sign, -1);
        let r = verify_grid(1, 1, &quick()).unwrap();
        assert_eq!(r.order.unwrap().exact, 3);
        assert!(r.passed());
    }

    #[test]
    fn grid_caps() {
        let opts = SuiteOptions {
            order_cap: 100,
            ..quick()
        };
        assert!(matches!(
            verify_grid(5, 5, &opts),
            Err(Error::ResourceCap { .. })
        ));
        let opts = SuiteOptions {
            sweep_cap: 5,
            ..quick()
        };
        let r = verify_grid(2, 3, &opts).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks.len(), 3);
        assert_eq!(r.skipped.len(), 1);
    }

    #[test]
    fn report_json_shape() {
        let r = verify_grid(1, 2, &quick()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema"], "coxlab/1");
        assert_eq!(v["subject"]["kind"], "grid");
        assert_eq!(v["order"]["k"], 4);
        assert!(v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["pass"] == true));
        let back: VerificationReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn cominuscule_reports() {
        let a = verify_cominuscule(RootType::A, 4, 2, &quick()).unwrap();
        assert!(a.passed(), "{:?}", a.failures());
        assert_eq!(a.order, verify_grid(2, 3, &quick()).unwrap().order);
        let d = verify_cominuscule(RootType::D, 5, 1, &quick()).unwrap();
        assert!(d.passed(), "{:?}", d.failures());
        assert_eq!(d.order.unwrap().exact, 18);
        let b = verify_cominuscule(RootType::B, 3, 1, &quick()).unwrap();
        assert!(b.passed(), "{:?}", b.failures());
        assert_eq!(b.order.unwrap().exact, 7);
        let c = verify_cominuscule(RootType::C, 3, 3, &quick()).unwrap();
        assert!(c.expected.open_case);
        assert!(c.passed());
        assert!(matches!(
            verify_cominuscule(RootType::B, 3, 2, &quick()),
            Err(Error::NotCominuscule { .. })
        ));
    }

    #[test]
    fn orbit_example() {
        let alpha = EnhancedPartition::parse("(|1,1,2,3,3|)", 3).unwrap();
        let t = orbit_trace(5, 3, &alpha, DEFAULT_SWEEP_CAP).unwrap();
        assert_eq!(t.rows.len(), 10);
        assert_eq!(t.rows[1].alpha, "(0|1^2,2|3)");
        assert_eq!(
            t.rows[1].interval,
            ("(0,0,1,2,2)".to_string(), "(0,1,1,2,3)".to_string())
        );
        assert_eq!(t.rows[1].config, "{-5,-2,0,1,2}");
        assert!(t.closes);
        assert!(t.passed());
        let zero = EnhancedPartition::parse("(0^2||)", 3).unwrap();
        assert!(orbit_trace(2, 3, &zero, DEFAULT_SWEEP_CAP)
            .unwrap()
            .passed());
        assert!(orbit_trace(2, 4, &zero, DEFAULT_SWEEP_CAP).is_err());
    }
}
