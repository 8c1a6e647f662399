//! Profile functions bounding the edge count of a decomposed graph, the
//! feasible profile set, and exact checks of their algebra and maxima.

use alloc::format;

use crate::{choose2, Error, Result};

mod classical;
mod identities;
mod verify;

pub use classical::*;
pub use identities::*;
pub use verify::*;

/// Default for the large-regime size threshold of `g_ell`.
pub const KAPPA0_DEFAULT: i64 = 8000;

/// Size profile `(t1, t2, t3, t4, m, i)` of a decomposition: the four
/// triangle classes, the outside matching, and the leftover independent set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Profile {
    pub t1: i64,
    pub t2: i64,
    pub t3: i64,
    pub t4: i64,
    pub m: i64,
    pub i: i64,
}

impl Profile {
    pub const fn new(t1: i64, t2: i64, t3: i64, t4: i64, m: i64, i: i64) -> Self {
        Profile { t1, t2, t3, t4, m, i }
    }

    pub fn from_array(a: [i64; 6]) -> Self {
        Profile::new(a[0], a[1], a[2], a[3], a[4], a[5])
    }

    pub fn to_array(self) -> [i64; 6] {
        [self.t1, self.t2, self.t3, self.t4, self.m, self.i]
    }

    /// Number of packing triangles.
    pub fn k(&self) -> i64 {
        self.t1 + self.t2 + self.t3 + self.t4
    }

    /// Vertex count implied by the profile.
    pub fn n(&self) -> i64 {
        3 * self.k() + 2 * self.m + self.i
    }

    pub fn is_nonnegative(&self) -> bool {
        self.to_array().iter().all(|&x| x >= 0)
    }

    pub fn in_feasible(&self, n: i64, k: i64) -> bool {
        self.is_nonnegative() && self.k() == k && 2 * self.m + self.i == n - 3 * k
    }
}

impl core::fmt::Display for Profile {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({},{},{},{},{},{})", self.t1, self.t2, self.t3, self.t4, self.m, self.i)
    }
}

/// Sum of the pairwise edge bounds between decomposition parts, before the
/// corrections for an empty matching or independent set.
pub fn f_prime(p: &Profile) -> i64 {
    let Profile { t1, t2, t3, t4, m, i } = *p;
    4 * m * t1
        + 2 * i * t1
        + 7 * choose2(t1)
        + 3 * t1
        + 2 * i * t2
        + 8 * choose2(t2)
        + 3 * t2
        + 8 * choose2(t3)
        + 8 * t3 * t4
        + 3 * t3
        + 7 * t1 * t2
        + (2 + 3 * m) * t2
        + 7 * t1 * (t3 + t4)
        + (3 + 3 * m) * t3
        + 8 * t2 * (t3 + t4)
        + (2 + i) * t3
}

/// `f_prime` lowered where the matching or the independent set is empty.
pub fn f(p: &Profile) -> i64 {
    let base = f_prime(p);
    match (p.m >= 1, p.i >= 1) {
        (true, true) => base,
        (false, true) => base - (2 * p.t2 + 3 * p.t3),
        (true, false) => base - 2 * p.t3,
        (false, false) => base - (2 * p.t2 + 5 * p.t3),
    }
}

fn t4_terms(p: &Profile) -> i64 {
    p.i * p.m + p.m * p.m + (3 + 3 * p.m) * p.t4 + (2 + p.i) * p.t4
}

/// Edge bound using only the trivial bound on the densest class.
pub fn h_lemma(p: &Profile) -> i64 {
    f(p) + t4_terms(p) + choose2(3 * p.t4)
}

/// `h_lemma` with `f_prime` in place of `f` (no case split).
pub fn h_aux_small(p: &Profile) -> i64 {
    f_prime(p) + t4_terms(p) + choose2(3 * p.t4)
}

/// Large-regime auxiliary: `f_prime` plus the touching-set bound in its
/// sparse-set form.
pub fn h_aux_large(p: &Profile) -> i64 {
    let a = 2 * p.m + p.i;
    f_prime(p) + (a - 2) * (3 * p.t4 + 2) + choose2(3 * p.t4 - a + 4)
}

/// Edge bound when the densest class is sparse.
pub fn g_small(p: &Profile) -> i64 {
    f(p) + t4_terms(p) + 8 * choose2(p.t4) + 10 * p.t4 - 28
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GEllRegime {
    /// Few dense triangles: same as `h_lemma`.
    Small,
    /// Many dense triangles, `t1 != 1`.
    Large,
    /// Many dense triangles, `t1 == 1` (adds 20).
    LargeSingleT1,
}

/// Which branch of `g_ell` applies: large iff `t4 >= max(176, kappa0, (2m+i)/3)`.
pub fn g_ell_regime(p: &Profile, kappa0: i64) -> GEllRegime {
    let a = 2 * p.m + p.i;
    if 3 * p.t4 < (3 * 176).max(3 * kappa0).max(a) {
        GEllRegime::Small
    } else if p.t1 == 1 {
        GEllRegime::LargeSingleT1
    } else {
        GEllRegime::Large
    }
}

/// Edge bound when the densest class is dense.
pub fn g_ell(p: &Profile, kappa0: i64) -> i64 {
    let a = 2 * p.m + p.i;
    let touching = || p_fun(3 * p.t4 + a, a).expect("large regime has 3 t4 >= 2m + i");
    match g_ell_regime(p, kappa0) {
        GEllRegime::Small => h_lemma(p),
        GEllRegime::Large => f(p) + touching(),
        GEllRegime::LargeSingleT1 => f(p) + touching() + 20,
    }
}

/// Edge bound for an `h`-vertex graph with an `a`-set that no family of
/// disjoint triangles covers three times.
pub fn p_fun(h: i64, a: i64) -> Result<i64> {
    if a < 0 || h < 2 * a {
        return Err(Error::InvalidRange(format!("p({h},{a}) needs h >= 2a >= 0")));
    }
    Ok(if h < 9 * a {
        a * (h - a) + choose2(h - 2 * a) + 6 * h
    } else {
        (a - 2) * (h - a + 2) + choose2(h - 2 * a + 4)
    })
}

/// `|F(n,k)| = C(k+3,3) * (floor((n-3k)/2) + 1)`.
pub fn feasible_count(n: i64, k: i64) -> Result<u128> {
    check_nk(n, k)?;
    let (k, r) = (k as u128, (n - 3 * k) as u128);
    Ok((k + 3) * (k + 2) * (k + 1) / 6 * (r / 2 + 1))
}

pub(crate) fn check_nk(n: i64, k: i64) -> Result<()> {
    if k < 0 || 3 * k > n {
        Err(Error::InvalidRange(format!("need 0 <= 3k <= n, got n={n}, k={k}")))
    } else {
        Ok(())
    }
}

/// Feasible profiles: `t1+t2+t3+t4 = k`, `2m+i = n-3k`, all non-negative.
pub fn enumerate_f(n: i64, k: i64) -> Result<FeasibleIter> {
    check_nk(n, k)?;
    Ok(FeasibleIter { k, r: n - 3 * k, next: Some(Profile::new(0, 0, 0, k, 0, n - 3 * k)) })
}

/// Lexicographic iterator over `F(n,k)`.
#[derive(Clone, Debug)]
pub struct FeasibleIter {
    k: i64,
    r: i64,
    next: Option<Profile>,
}

impl Iterator for FeasibleIter {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        let cur = self.next?;
        let mut p = cur;
        self.next = if 2 * (p.m + 1) <= self.r {
            p.m += 1;
            p.i = self.r - 2 * p.m;
            Some(p)
        } else {
            p.m = 0;
            p.i = self.r;
            if p.t4 > 0 {
                p.t3 += 1;
                p.t4 -= 1;
                Some(p)
            } else if p.t1 + p.t2 < self.k {
                p.t2 += 1;
                p.t3 = 0;
                p.t4 = self.k - p.t1 - p.t2;
                Some(p)
            } else if p.t1 < self.k {
                p.t1 += 1;
                p.t2 = 0;
                p.t3 = 0;
                p.t4 = self.k - p.t1;
                Some(p)
            } else {
                None
            }
        };
        Some(cur)
    }
}
