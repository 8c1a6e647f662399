//! The four extremal families, their edge counts, the argmax over families,
//! the transition points between them, and the between-triangle edge table
//! for the fourth family.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::graph::{edges_between, Graph, Triangle};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Family {
    E1,
    E2,
    E3,
    E4,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::E1, Family::E2, Family::E3, Family::E4];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.index() + 1)
    }
}

impl core::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "E1" => Ok(Family::E1),
            "E2" => Ok(Family::E2),
            "E3" => Ok(Family::E3),
            "E4" => Ok(Family::E4),
            _ => Err(Error::InvalidRange(format!("unknown family {s:?}"))),
        }
    }
}

/// One member of a family. `variant` is |Y1| for E2 and E4; `None` picks the
/// default (⌈n/2⌉ for E2, ⌈(n-3k-2)/2⌉ for E4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExtremalSpec {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub variant: Option<usize>,
}

impl ExtremalSpec {
    pub fn new(family: Family, n: usize, k: usize) -> Self {
        ExtremalSpec { family, n, k, variant: None }
    }

    pub fn with_variant(mut self, v: usize) -> Self {
        self.variant = Some(v);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PartRole {
    X,
    Y1,
    Y2,
    Y3,
    Y4,
}

/// Contiguous vertex block of a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub role: PartRole,
    pub range: Range<usize>,
}

/// Whether `family` is defined at `(n, k)`.
pub fn is_valid(family: Family, n: usize, k: usize) -> bool {
    if 3 * k > n {
        return false;
    }
    match family {
        Family::E1 => true,
        Family::E2 => 4 * k + 2 <= n,
        Family::E3 => 2 * k < n,
        // |X| = 6k - n + 4 must be non-negative unless the graph is complete
        Family::E4 => 3 * k + 2 >= n || 6 * k + 4 >= n,
    }
}

/// E4 at `(n, k)` is the complete graph.
pub fn e4_is_complete(n: usize, k: usize) -> bool {
    3 * k + 2 >= n
}

fn invalid(family: Family, n: usize, k: usize) -> Error {
    Error::InvalidRange(format!("{family} is not defined at n={n}, k={k}"))
}

/// Allowed variant values for `(family, n, k)`; `[None]` when there is no choice.
pub fn variants(family: Family, n: usize, k: usize) -> Vec<Option<usize>> {
    match family {
        Family::E2 if is_valid(family, n, k) => {
            let mut v = vec![Some(n.div_ceil(2))];
            if n % 2 == 1 {
                v.push(Some(n / 2));
            }
            v
        }
        Family::E4 if is_valid(family, n, k) && !e4_is_complete(n, k) => (0..=n - 3 * k - 2).map(Some).collect(),
        _ => vec![None],
    }
}

/// Vertex blocks of the construction, in labeling order X, Y1, Y2, Y3, Y4.
pub fn parts(spec: &ExtremalSpec) -> Result<Vec<Part>> {
    let ExtremalSpec { family, n, k, variant } = *spec;
    if !is_valid(family, n, k) {
        return Err(invalid(family, n, k));
    }
    let sizes: Vec<(PartRole, usize)> = match family {
        Family::E1 => {
            if let Some(v) = variant {
                return Err(Error::VariantOutOfRange { variant: v, max: 0 });
            }
            let y1 = (n - k).div_ceil(2);
            vec![(PartRole::X, k), (PartRole::Y1, y1), (PartRole::Y2, n - k - y1)]
        }
        Family::E2 => {
            let y1 = variant.unwrap_or(n.div_ceil(2));
            if y1 != n / 2 && y1 != n.div_ceil(2) {
                return Err(Error::VariantOutOfRange { variant: y1, max: n.div_ceil(2) });
            }
            let x = 2 * k + 1;
            vec![(PartRole::X, x), (PartRole::Y1, y1), (PartRole::Y2, n - x - y1)]
        }
        Family::E3 => {
            if let Some(v) = variant {
                return Err(Error::VariantOutOfRange { variant: v, max: 0 });
            }
            vec![(PartRole::X, 2 * k + 1), (PartRole::Y1, n - 2 * k - 1)]
        }
        Family::E4 if e4_is_complete(n, k) => {
            if variant.is_some_and(|v| v != 0) {
                return Err(Error::VariantOutOfRange { variant: variant.unwrap(), max: 0 });
            }
            vec![(PartRole::X, n)]
        }
        Family::E4 => {
            let a = n - 3 * k - 2;
            let y1 = variant.unwrap_or(a.div_ceil(2));
            if y1 > a {
                return Err(Error::VariantOutOfRange { variant: y1, max: a });
            }
            let y2 = a - y1;
            vec![
                (PartRole::X, 6 * k + 4 - n),
                (PartRole::Y1, y1),
                (PartRole::Y2, y2),
                (PartRole::Y3, y1),
                (PartRole::Y4, y2),
            ]
        }
    };
    let mut start = 0;
    Ok(sizes
        .into_iter()
        .map(|(role, s)| {
            let p = Part { role, range: start..start + s };
            start += s;
            p
        })
        .collect())
}

fn range_of(parts: &[Part], role: PartRole) -> Range<usize> {
    parts.iter().find(|p| p.role == role).map(|p| p.range.clone()).unwrap_or(0..0)
}

/// Build the graph of `spec`.
pub fn build(spec: &ExtremalSpec) -> Result<Graph> {
    let ps = parts(spec)?;
    let n = spec.n;
    let mut g = Graph::empty(n)?;
    let x = range_of(&ps, PartRole::X);
    let y = |r| range_of(&ps, r);
    let join = |a: Range<usize>, b: Range<usize>, g: &mut Graph| {
        for u in a {
            for v in b.clone() {
                if u != v {
                    g.add_edge(u, v).expect("vertices in range");
                }
            }
        }
    };
    match spec.family {
        Family::E1 | Family::E3 => {
            // every edge meeting X
            join(x.clone(), 0..n, &mut g);
            if spec.family == Family::E1 {
                join(y(PartRole::Y1), y(PartRole::Y2), &mut g);
            }
        }
        Family::E2 => {
            join(x.clone(), x.clone(), &mut g);
            join(y(PartRole::Y1), x.start..x.end, &mut g);
            join(y(PartRole::Y1), y(PartRole::Y2), &mut g);
        }
        Family::E4 => {
            join(x.clone(), x.clone(), &mut g);
            join(x.clone(), y(PartRole::Y1), &mut g);
            join(x.clone(), y(PartRole::Y2), &mut g);
            for a in [PartRole::Y1, PartRole::Y4] {
                for b in [PartRole::Y2, PartRole::Y3] {
                    join(y(a), y(b), &mut g);
                }
            }
        }
    }
    Ok(g)
}

fn c2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Closed-form edge count of any member of `family` at `(n, k)`.
pub fn edge_formula(family: Family, n: usize, k: usize) -> Result<u64> {
    if !is_valid(family, n, k) {
        return Err(invalid(family, n, k));
    }
    let (n, k) = (n as u64, k as u64);
    Ok(match family {
        Family::E1 => c2(k) + k * (n - k) + (n - k).div_ceil(2) * ((n - k) / 2),
        Family::E2 => c2(2 * k + 1) + n.div_ceil(2) * (n / 2),
        Family::E3 => c2(2 * k + 1) + (2 * k + 1) * (n - 2 * k - 1),
        Family::E4 if 3 * k + 2 >= n => c2(n),
        Family::E4 => {
            let x = 6 * k + 4 - n;
            let a = n - 3 * k - 2;
            c2(x) + x * a + a * a
        }
    })
}

/// Edge counts of the four families at `(n, k)`, `None` where undefined.
pub fn family_counts(n: usize, k: usize) -> [Option<u64>; 4] {
    Family::ALL.map(|f| edge_formula(f, n, k).ok())
}

/// Largest family edge count at `(n, k)` and every family achieving it.
pub fn e_max(n: usize, k: usize) -> (u64, Vec<Family>) {
    let counts = family_counts(n, k);
    let best = counts.iter().flatten().copied().max().unwrap_or(0);
    let arg = Family::ALL.iter().copied().filter(|f| counts[f.index()] == Some(best)).collect();
    (best, arg)
}

/// Closed-form boundaries between consecutive families together with the
/// integer transitions found by comparing exact counts.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Thresholds {
    pub n: usize,
    /// E1→E2, E2→E3, E3→E4 boundaries as real numbers.
    pub closed_form: [f64; 3],
    /// First k ≥ 1 at which E2, E3, E4 respectively enter the argmax set.
    pub transitions: [Option<usize>; 3],
}

pub fn thresholds(n: usize) -> Thresholds {
    let nf = n as f64;
    let closed_form = [
        (2.0 * nf - 6.0) / 9.0,
        (nf - 1.0) / 4.0,
        (5.0 * nf - 12.0 + libm::sqrt(3.0 * nf * nf - 10.0 * nf + 12.0)) / 22.0,
    ];
    let mut transitions = [None; 3];
    for (slot, fam) in transitions.iter_mut().zip([Family::E2, Family::E3, Family::E4]) {
        *slot = (1..=n / 3).find(|&k| e_max(n, k).1.contains(&fam));
    }
    Thresholds { n, closed_form, transitions }
}

/// One `k` of the per-family table.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FamilyRow {
    pub k: usize,
    pub counts: [Option<u64>; 4],
    pub max: u64,
    pub argmax: Vec<Family>,
}

/// Edge counts of all families for `k = 0..=n/3`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FamilyTable {
    pub n: usize,
    pub rows: Vec<FamilyRow>,
    pub thresholds: Thresholds,
}

/// Rows `(k, e(E1), .., e(E4))` for `k = 0..=n/3`.
pub fn figure2_data(n: usize) -> Result<Vec<FamilyRow>> {
    if n < 3 {
        return Err(Error::InvalidRange(format!("need n >= 3, got {n}")));
    }
    Ok((0..=n / 3)
        .map(|k| {
            let (max, argmax) = e_max(n, k);
            FamilyRow { k, counts: family_counts(n, k), max, argmax }
        })
        .collect())
}

pub fn family_table(n: usize) -> Result<FamilyTable> {
    Ok(FamilyTable { n, rows: figure2_data(n)?, thresholds: thresholds(n) })
}

/// Triangle types inside the non-complete E4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TriangleType {
    XXX,
    XXY1,
    XXY2,
    XY1Y2,
}

impl TriangleType {
    pub const ALL: [TriangleType; 4] = [TriangleType::XXX, TriangleType::XXY1, TriangleType::XXY2, TriangleType::XY1Y2];
}

/// Edge counts between two disjoint triangles, indexed by type; `None` where
/// no pair of that type was seen.
pub type TypeMatrix = [[Option<u32>; 4]; 4];

/// Published between-triangle edge counts for the non-complete E4.
pub const E4_TYPE_TABLE: [[u32; 4]; 4] = [[9, 9, 9, 9], [9, 8, 9, 8], [9, 9, 8, 8], [9, 8, 8, 7]];

fn classify_e4(parts: &[Part], t: &Triangle) -> Result<TriangleType> {
    let (mut x, mut y1, mut y2) = (0, 0, 0);
    for v in t.vertices() {
        let role = parts.iter().find(|p| p.range.contains(&v)).map(|p| p.role);
        match role {
            Some(PartRole::X) => x += 1,
            Some(PartRole::Y1) => y1 += 1,
            Some(PartRole::Y2) => y2 += 1,
            _ => return Err(Error::UnclassifiableTriangle(t.0)),
        }
    }
    match (x, y1, y2) {
        (3, 0, 0) => Ok(TriangleType::XXX),
        (2, 1, 0) => Ok(TriangleType::XXY1),
        (2, 0, 1) => Ok(TriangleType::XXY2),
        (1, 1, 1) => Ok(TriangleType::XY1Y2),
        _ => Err(Error::UnclassifiableTriangle(t.0)),
    }
}

fn e4_parts(spec: &ExtremalSpec) -> Result<Vec<Part>> {
    if spec.family != Family::E4 || !is_valid(Family::E4, spec.n, spec.k) || e4_is_complete(spec.n, spec.k) {
        return Err(Error::InvalidRange(format!("{spec:?} is not a non-complete E4")));
    }
    parts(spec)
}

fn record(m: &mut TypeMatrix, a: TriangleType, b: TriangleType, count: u32) -> Result<()> {
    for (i, j) in [(a as usize, b as usize), (b as usize, a as usize)] {
        match m[i][j] {
            Some(c) if c != count => return Err(Error::InconsistentTypeCount(c, count)),
            _ => m[i][j] = Some(count),
        }
    }
    Ok(())
}

/// Between-triangle edge counts by type over all pairs of `packing`.
pub fn type_matrix(g: &Graph, spec: &ExtremalSpec, packing: &[Triangle]) -> Result<TypeMatrix> {
    let ps = e4_parts(spec)?;
    let typed: Vec<_> = packing.iter().map(|t| classify_e4(&ps, t).map(|ty| (*t, ty))).collect::<Result<_>>()?;
    let mut m = [[None; 4]; 4];
    for (i, (s, a)) in typed.iter().enumerate() {
        for (t, b) in &typed[i + 1..] {
            let c = edges_between(g, &s.set(), &t.set())? as u32;
            record(&mut m, *a, *b, c)?;
        }
    }
    Ok(m)
}

/// As [`type_matrix`] but over every disjoint pair of triangles of the
/// construction, which witnesses every type pair the sizes allow.
pub fn type_matrix_all(spec: &ExtremalSpec) -> Result<TypeMatrix> {
    let ps = e4_parts(spec)?;
    let g = build(spec)?;
    let tris = g.triangles();
    let mut m = [[None; 4]; 4];
    for (i, s) in tris.iter().enumerate() {
        let a = classify_e4(&ps, s)?;
        for t in tris[i + 1..].iter().filter(|t| t.is_disjoint(s)) {
            let b = classify_e4(&ps, t)?;
            let c = edges_between(&g, &s.set(), &t.set())? as u32;
            record(&mut m, a, b, c)?;
        }
    }
    Ok(m)
}
