//! Numeric verification of the maximisation lemmas and of the identity suite.
//!
//! The large verifiers are split into a [`Plan`] of independent [`Task`]s so
//! that a caller can run tasks in any order or in parallel; [`Plan::finish`]
//! merges the per-task tallies in task order, so the report only depends on
//! the plan.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::identities::{
    identity_check, point_identity_check, Identity, IdentityOutcome, Point, PointIdentity, Relation,
};
use super::{check_nk, enumerate_f, f, feasible_count, g_ell, g_small, Profile};
use crate::extremal::{e_max, family_counts};
use crate::{Error, Result};

/// Violations stored in a report; the count keeps going past this.
pub const VIOLATION_CAP: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Violation {
    pub label: String,
    pub profile: Option<Profile>,
    pub lhs: i64,
    pub rhs: i64,
}

/// Outcome of one verification run.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerifyReport {
    pub name: String,
    pub params: Vec<(String, i64)>,
    /// Points evaluated, samples included.
    pub points: u64,
    /// True when the whole domain was enumerated.
    pub exhaustive: bool,
    pub samples: u64,
    pub seed: Option<u64>,
    /// Smallest `rhs - lhs` seen (for `>=` relations, `lhs - rhs`).
    pub min_slack: Option<i64>,
    pub min_slack_at: Option<Profile>,
    pub violations: Vec<Violation>,
    pub violation_count: u64,
    pub max_value: Option<i64>,
    pub target: Option<i64>,
    /// Failed whole-run conditions, such as a maximum missing its target.
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn new(name: &str, params: Vec<(String, i64)>) -> Self {
        VerifyReport {
            name: name.into(),
            params,
            points: 0,
            exhaustive: false,
            samples: 0,
            seed: None,
            min_slack: None,
            min_slack_at: None,
            violations: Vec::new(),
            violation_count: 0,
            max_value: None,
            target: None,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0 && self.failures.is_empty()
    }

    fn absorb(&mut self, t: Tally) {
        self.points += t.points;
        self.samples += t.samples;
        if let Some((s, p)) = t.min_slack {
            if self.min_slack.is_none_or(|m| s < m) {
                self.min_slack = Some(s);
                self.min_slack_at = p;
            }
        }
        self.violation_count += t.violation_count;
        let room = VIOLATION_CAP.saturating_sub(self.violations.len());
        self.violations.extend(t.violations.into_iter().take(room));
    }
}

/// Partial result of one task.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub points: u64,
    pub samples: u64,
    pub min_slack: Option<(i64, Option<Profile>)>,
    pub violations: Vec<Violation>,
    pub violation_count: u64,
    /// Whether every `k` of the task was enumerated in full.
    pub exhaustive: bool,
}

impl Tally {
    /// Record `lhs <= rhs` at one point.
    pub fn record(&mut self, label: &str, p: Option<Profile>, lhs: i64, rhs: i64) {
        self.points += 1;
        let slack = rhs - lhs;
        if self.min_slack.is_none_or(|(s, _)| slack < s) {
            self.min_slack = Some((slack, p));
        }
        if slack < 0 {
            self.violation_count += 1;
            if self.violations.len() < VIOLATION_CAP {
                self.violations.push(Violation { label: label.into(), profile: p, lhs, rhs });
            }
        }
    }

    fn record_outcome(&mut self, o: &IdentityOutcome, p: Option<Profile>) {
        self.points += 1;
        let slack = match o.relation {
            Relation::Eq => -(o.lhs - o.rhs).abs(),
            Relation::Le | Relation::Lt => o.rhs - o.lhs,
            Relation::Ge => o.lhs - o.rhs,
        };
        if self.min_slack.is_none_or(|(s, _)| slack < s) {
            self.min_slack = Some((slack, p));
        }
        if !o.holds {
            self.violation_count += 1;
            if self.violations.len() < VIOLATION_CAP {
                self.violations.push(Violation { label: o.name.clone(), profile: p, lhs: o.lhs, rhs: o.rhs });
            }
        }
    }
}

fn max_of_first_three(n: i64, k: i64) -> Option<i64> {
    family_counts(n as usize, k as usize)[..3].iter().flatten().max().map(|&v| v as i64)
}

/// Exhaustive check that `f + i*m + m^2` over the `t3 = t4 = 0` slice of
/// `F(n,k)` peaks exactly at the best of the first three families, and that
/// a peak sits at `t1 = k` or `t2 = k`.
pub fn verify_lemma_maxf(n: i64, k: i64) -> Result<VerifyReport> {
    check_nk(n, k)?;
    if n < 3 * k + 2 {
        return Err(Error::InvalidRange(format!("need n >= 3k + 2, got n={n}, k={k}")));
    }
    let target = max_of_first_three(n, k).expect("first family is always defined");
    let mut rep = VerifyReport::new("maxf", alloc::vec![("n".to_string(), n), ("k".to_string(), k)]);
    let r = n - 3 * k;
    let mut t = Tally::default();
    let mut best: Option<(i64, Profile)> = None;
    let mut at_pure = false;
    for t1 in 0..=k {
        for m in 0..=r / 2 {
            let p = Profile::new(t1, k - t1, 0, 0, m, r - 2 * m);
            let v = f(&p) + p.i * p.m + p.m * p.m;
            t.record("maxf", Some(p), v, target);
            if best.is_none_or(|(b, _)| v > b) {
                best = Some((v, p));
                at_pure = false;
            }
            if best.is_some_and(|(b, _)| v == b) && (p.t1 == k || p.t2 == k) {
                at_pure = true;
            }
        }
    }
    rep.absorb(t);
    rep.exhaustive = true;
    rep.target = Some(target);
    let (bv, bp) = best.expect("slice is non-empty");
    rep.max_value = Some(bv);
    if bv != target {
        rep.failures.push(format!("maximum {bv} at {bp} differs from {target}"));
    }
    if !at_pure {
        rep.failures.push(format!("no maximiser with all triangles in one class (first at {bp})"));
    }
    Ok(rep)
}

/// Which lemma a [`Plan`] verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LemmaKind {
    /// `g_small <= max_j e(E_j)` on `F(n,k)`.
    MaxGSmall,
    /// `g_ell <= max_j e(E_j)` on `F(n,k)` for `n <= 5k + 8`.
    MaxGEll { kappa0: i64 },
}

impl LemmaKind {
    pub fn name(self) -> &'static str {
        match self {
            LemmaKind::MaxGSmall => "maxgsmall",
            LemmaKind::MaxGEll { .. } => "maxgl",
        }
    }

    pub fn eval(self, p: &Profile) -> i64 {
        match self {
            LemmaKind::MaxGSmall => g_small(p),
            LemmaKind::MaxGEll { kappa0 } => g_ell(p, kappa0),
        }
    }
}

/// Sampling knobs for the large verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Strategy {
    /// Enumerate `F(n,k)` in full when it has at most this many points.
    pub budget: u64,
    /// Uniform samples over the whole `k` range.
    pub samples: u64,
    pub seed: u64,
    /// Samples per task; each block has its own RNG stream.
    pub block: u64,
    /// `k` values per corner task.
    pub chunk: i64,
    /// Restrict `k` to this inclusive range (clipped to the lemma's range).
    pub k_range: Option<(i64, i64)>,
    /// Run even when the lemma's hypotheses fail.
    pub report_only: bool,
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy {
            budget: 1_000_000,
            samples: 1_000_000,
            seed: 0,
            block: 10_000,
            chunk: 256,
            k_range: None,
            report_only: false,
        }
    }
}

/// One unit of work.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Task {
    /// Corner profiles, or the full feasible set when small, for each `k`.
    Ks { lo: i64, hi: i64 },
    /// `count` uniform samples from RNG stream `block`.
    Samples { block: u64, count: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub kind: LemmaKind,
    pub n: i64,
    pub k_lo: i64,
    pub k_hi: i64,
    pub strategy: Strategy,
    pub tasks: Vec<Task>,
}

/// Plan the check of `g_small` at `n` (needs `n >= 8406`).
pub fn plan_maxgsmall(n: i64, strategy: Strategy) -> Result<Plan> {
    if n < 8406 && !strategy.report_only {
        return Err(Error::InvalidRange(format!("the g_small bound needs n >= 8406, got {n}")));
    }
    build_plan(LemmaKind::MaxGSmall, n, 0, n / 3, strategy)
}

/// Plan the check of `g_ell` at `n`, over `k >= (n-8)/5`.
pub fn plan_maxgl(n: i64, kappa0: i64, strategy: Strategy) -> Result<Plan> {
    if kappa0 < 1 {
        return Err(Error::InvalidRange(format!("kappa0 must be positive, got {kappa0}")));
    }
    let need = (40_000i64).max(900 * kappa0);
    if n < need && !strategy.report_only {
        return Err(Error::InvalidRange(format!("the g_ell bound needs n >= {need}, got {n}")));
    }
    let k_lo = (n - 8 + 4).div_euclid(5).max(0);
    build_plan(LemmaKind::MaxGEll { kappa0 }, n, k_lo, n / 3, strategy)
}

fn build_plan(kind: LemmaKind, n: i64, lo: i64, hi: i64, s: Strategy) -> Result<Plan> {
    if n < 0 || s.chunk < 1 || s.block < 1 {
        return Err(Error::InvalidRange("need n >= 0, chunk >= 1 and block >= 1".into()));
    }
    let (k_lo, k_hi) = match s.k_range {
        Some((a, b)) => (a.max(lo), b.min(hi)),
        None => (lo, hi),
    };
    if k_lo > k_hi {
        return Err(Error::InvalidRange(format!("empty k range {k_lo}..={k_hi}")));
    }
    let mut tasks = Vec::new();
    let mut k = k_lo;
    while k <= k_hi {
        let hi = (k + s.chunk - 1).min(k_hi);
        tasks.push(Task::Ks { lo: k, hi });
        k = hi + 1;
    }
    let mut left = s.samples;
    let mut block = 0;
    while left > 0 {
        let count = left.min(s.block);
        tasks.push(Task::Samples { block, count });
        left -= count;
        block += 1;
    }
    Ok(Plan { kind, n, k_lo, k_hi, strategy: s, tasks })
}

/// Corner profiles of `F(n,k)`: all triangles in one class, or one in the
/// first class and the rest in another; matching empty, a quarter or half.
pub fn corner_profiles(n: i64, k: i64) -> Vec<Profile> {
    let r = n - 3 * k;
    let mut taus: Vec<[i64; 4]> = Vec::new();
    for j in 0..4 {
        let mut t = [0; 4];
        t[j] = k;
        taus.push(t);
        if k >= 1 && j > 0 {
            let mut t = [1, 0, 0, 0];
            t[j] += k - 1;
            taus.push(t);
        }
    }
    let mut ms = alloc::vec![0, r / 4, r / 2];
    ms.dedup();
    let mut out: Vec<Profile> =
        taus.iter().flat_map(|t| ms.iter().map(move |&m| Profile::new(t[0], t[1], t[2], t[3], m, r - 2 * m))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// A uniform sample: `k` uniform in `lo..=hi`, a uniform composition of
/// `k` into four parts, then `m` uniform.
pub fn sample_profile<R: Rng>(rng: &mut R, n: i64, lo: i64, hi: i64) -> Profile {
    let k = rng.random_range(lo..=hi);
    let bars = index::sample(rng, (k + 3) as usize, 3);
    let mut b: [i64; 3] = [0; 3];
    for (slot, v) in b.iter_mut().zip(bars.iter()) {
        *slot = v as i64;
    }
    b.sort_unstable();
    let t = [b[0], b[1] - b[0] - 1, b[2] - b[1] - 1, k + 2 - b[2]];
    let r = n - 3 * k;
    let m = rng.random_range(0..=r / 2);
    Profile::new(t[0], t[1], t[2], t[3], m, r - 2 * m)
}

fn target(n: i64, k: i64) -> i64 {
    e_max(n as usize, k as usize).0 as i64
}

impl Plan {
    pub fn run_task(&self, task: &Task) -> Tally {
        let mut t = Tally { exhaustive: true, ..Tally::default() };
        let name = self.kind.name();
        match *task {
            Task::Ks { lo, hi } => {
                for k in lo..=hi {
                    let tgt = target(self.n, k);
                    let small = feasible_count(self.n, k).is_ok_and(|c| c <= self.strategy.budget as u128);
                    if small {
                        for p in enumerate_f(self.n, k).expect("k is in range") {
                            t.record(name, Some(p), self.kind.eval(&p), tgt);
                        }
                    } else {
                        t.exhaustive = false;
                        for p in corner_profiles(self.n, k) {
                            t.record(name, Some(p), self.kind.eval(&p), tgt);
                        }
                    }
                }
            }
            Task::Samples { block, count } => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.strategy.seed);
                rng.set_stream(block);
                for _ in 0..count {
                    let p = sample_profile(&mut rng, self.n, self.k_lo, self.k_hi);
                    t.record(name, Some(p), self.kind.eval(&p), target(self.n, p.k()));
                }
                t.samples = count;
                t.exhaustive = false;
            }
        }
        t
    }

    /// Merge tallies given in task order.
    pub fn finish(&self, tallies: Vec<Tally>) -> VerifyReport {
        let mut params = alloc::vec![
            ("n".to_string(), self.n),
            ("k_lo".to_string(), self.k_lo),
            ("k_hi".to_string(), self.k_hi),
            ("budget".to_string(), self.strategy.budget as i64),
        ];
        if let LemmaKind::MaxGEll { kappa0 } = self.kind {
            params.push(("kappa0".to_string(), kappa0));
        }
        let mut rep = VerifyReport::new(self.kind.name(), params);
        rep.exhaustive = tallies.iter().all(|t| t.exhaustive);
        rep.seed = (self.strategy.samples > 0).then_some(self.strategy.seed);
        for t in tallies {
            rep.absorb(t);
        }
        rep
    }

    /// Run every task in order on the current thread.
    pub fn run(&self) -> VerifyReport {
        self.finish(self.tasks.iter().map(|t| self.run_task(t)).collect())
    }
}

/// Sequential check of `g_small` at `n`.
pub fn verify_lemma_maxgsmall(n: i64, strategy: Strategy) -> Result<VerifyReport> {
    Ok(plan_maxgsmall(n, strategy)?.run())
}

/// Sequential check of `g_ell` at `n` with threshold `kappa0`.
pub fn verify_lemma_maxgl(n: i64, kappa0: i64, strategy: Strategy) -> Result<VerifyReport> {
    Ok(plan_maxgl(n, kappa0, strategy)?.run())
}

/// Every profile identity at every profile with coordinates `<= coord` and
/// every admissible shift `<= max_shift`.
pub fn verify_identity_grid(coord: i64, max_shift: i64) -> VerifyReport {
    let mut t = Tally::default();
    let side = coord + 1;
    let total = side.pow(6);
    for code in 0..total {
        let mut c = code;
        let mut a = [0i64; 6];
        for slot in a.iter_mut().rev() {
            *slot = c % side;
            c /= side;
        }
        let p = Profile::from_array(a);
        for id in Identity::ALL {
            if let Some((lo, hi)) = id.shift_range(&p) {
                for x in lo..=hi.min(max_shift) {
                    let o = identity_check(id, &p, x).expect("shift range respects the guard");
                    t.record_outcome(&o, Some(p));
                }
            }
        }
    }
    let mut rep = VerifyReport::new(
        "identities-grid",
        alloc::vec![("coord".to_string(), coord), ("max_shift".to_string(), max_shift)],
    );
    rep.exhaustive = true;
    rep.absorb(t);
    rep
}

/// Every profile identity at `count` random profiles with coordinates in
/// `0..=coord` and a random admissible shift.
pub fn verify_identity_random(count: u64, coord: i64, seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::default();
    for _ in 0..count {
        let p = Profile::from_array(core::array::from_fn(|_| rng.random_range(0..=coord)));
        for id in Identity::ALL {
            if let Some((lo, hi)) = id.shift_range(&p) {
                let x = rng.random_range(lo..=hi);
                let o = identity_check(id, &p, x).expect("shift range respects the guard");
                t.record_outcome(&o, Some(p));
            }
        }
    }
    t.samples = count;
    let mut rep = VerifyReport::new(
        "identities-random",
        alloc::vec![("count".to_string(), count as i64), ("coord".to_string(), coord)],
    );
    rep.seed = Some(seed);
    rep.absorb(t);
    rep
}

/// Every `(n, k)` relation for `n <= max_n`, all `k`, all `m`, both
/// selector values, with `kappa0 = 1` so the large regime is reachable.
pub fn verify_point_identities(max_n: i64) -> VerifyReport {
    let mut t = Tally::default();
    for n in 0..=max_n {
        for k in 0..=n / 3 {
            for m in 0..=(n - 3 * k) / 2 {
                for x in 0..2 {
                    for id in PointIdentity::ALL {
                        let pt = Point { n, k, m, x, kappa0: 1 };
                        if let Ok(o) = point_identity_check(id, &pt) {
                            t.record_outcome(&o, None);
                        }
                    }
                }
            }
        }
    }
    let mut rep = VerifyReport::new("identities-point", alloc::vec![("max_n".to_string(), max_n)]);
    rep.exhaustive = true;
    rep.absorb(t);
    rep
}
