//! Boundary paths and the graph groupoid, restricted to finite boundary
//! paths and eventually periodic infinite paths.
//!
//! An eventually periodic point is stored as `prefix · cycle^∞` in canonical
//! form: the cycle is primitive and the prefix is as short as possible. Two
//! descriptions denote the same point exactly when their canonical forms are
//! equal, so structural equality is point equality.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::GroupoidError;
use crate::graph::{EdgeId, Graph, Path, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryPath {
    /// A finite path ending at a singular vertex.
    Finite(Path),
    /// `prefix · cycle^∞`
    EvPeriodic { prefix: Path, cycle: Path },
}

/// Smallest `d` dividing `edges.len()` such that `edges` is a power of its
/// first `d` edges.
fn primitive_period(edges: &[EdgeId]) -> usize {
    let n = edges.len();
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| (d..n).all(|i| edges[i] == edges[i - d]))
        .unwrap_or(n)
}

fn rotate_left(g: &Graph, cycle: &Path, by: usize) -> Path {
    let n = cycle.len();
    let by = by % n;
    if by == 0 {
        return cycle.clone();
    }
    let mut edges = cycle.edges()[by..].to_vec();
    edges.extend_from_slice(&cycle.edges()[..by]);
    Path::from_edges(g, edges).expect("rotation of a cycle is a cycle")
}

impl BoundaryPath {
    /// A finite boundary path; its range must be singular.
    pub fn finite(g: &Graph, path: Path) -> Result<Self, GroupoidError> {
        if g.is_regular(path.range()) {
            return Err(GroupoidError::EndsAtRegular(
                g.vertex_name(path.range()).to_owned(),
            ));
        }
        Ok(BoundaryPath::Finite(path))
    }

    /// Canonical form of `prefix · cycle^∞`.
    pub fn periodic(g: &Graph, prefix: Path, cycle: Path) -> Result<Self, GroupoidError> {
        if cycle.is_vertex() {
            return Err(GroupoidError::EmptyCycle);
        }
        if cycle.source() != cycle.range() || prefix.range() != cycle.source() {
            return Err(GroupoidError::CycleMismatch);
        }
        let period = primitive_period(cycle.edges());
        let mut cycle = cycle.slice(g, 0, period);
        let mut prefix = prefix;
        while let (Some(p), Some(c)) = (prefix.last_edge(), cycle.last_edge()) {
            if p != c {
                break;
            }
            prefix = prefix.parent(g).expect("nonempty prefix");
            cycle = rotate_left(g, &cycle, cycle.len() - 1);
        }
        Ok(BoundaryPath::EvPeriodic { prefix, cycle })
    }

    pub fn source(&self) -> VertexId {
        match self {
            BoundaryPath::Finite(p) => p.source(),
            BoundaryPath::EvPeriodic { prefix, .. } => prefix.source(),
        }
    }

    /// Number of edges, `None` for infinite paths.
    pub fn len(&self) -> Option<usize> {
        match self {
            BoundaryPath::Finite(p) => Some(p.len()),
            BoundaryPath::EvPeriodic { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, BoundaryPath::Finite(_))
    }

    /// Edge at 0-based position `i`.
    pub fn edge_at(&self, i: usize) -> Option<EdgeId> {
        match self {
            BoundaryPath::Finite(p) => p.edges().get(i).copied(),
            BoundaryPath::EvPeriodic { prefix, cycle } => Some(if i < prefix.len() {
                prefix.edges()[i]
            } else {
                cycle.edges()[(i - prefix.len()) % cycle.len()]
            }),
        }
    }

    /// `σⁿ(x)`: drops the first `n` edges.
    pub fn shift(&self, g: &Graph, n: usize) -> Result<Self, GroupoidError> {
        match self {
            BoundaryPath::Finite(p) => {
                if n > p.len() {
                    return Err(GroupoidError::ShiftTooFar { len: p.len(), n });
                }
                Ok(BoundaryPath::Finite(p.slice(g, n, p.len())))
            }
            BoundaryPath::EvPeriodic { prefix, cycle } => {
                if n <= prefix.len() {
                    return Ok(BoundaryPath::EvPeriodic {
                        prefix: prefix.slice(g, n, prefix.len()),
                        cycle: cycle.clone(),
                    });
                }
                let cycle = rotate_left(g, cycle, n - prefix.len());
                Ok(BoundaryPath::EvPeriodic {
                    prefix: Path::vertex(cycle.source()),
                    cycle,
                })
            }
        }
    }

    /// `d ≥ 0` with `{k : (x, k, x) ∈ G_E} = dℤ`.
    pub fn isotropy(&self) -> usize {
        match self {
            BoundaryPath::Finite(_) => 0,
            BoundaryPath::EvPeriodic { cycle, .. } => cycle.len(),
        }
    }

    /// Whether `{x}` is open in `∂E`.
    pub fn is_isolated(&self, g: &Graph) -> bool {
        match self {
            BoundaryPath::Finite(p) => g.is_sink(p.range()),
            BoundaryPath::EvPeriodic { cycle, .. } => cycle.edges().iter().all(|&e| {
                let v = g.source(e);
                !g.is_infinite_emitter(v) && g.out_edges(v).len() == 1
            }),
        }
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> BoundaryDisplay<'a> {
        BoundaryDisplay { x: self, g }
    }
}

pub struct BoundaryDisplay<'a> {
    x: &'a BoundaryPath,
    g: &'a Graph,
}

/// Literal syntax: `e1 e2 !` for a finite path, `e1 . (e2 e3)^inf` for an
/// eventually periodic one (the `prefix .` part is omitted when empty).
impl fmt::Display for BoundaryDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.x {
            BoundaryPath::Finite(p) => write!(f, "{} !", p.display(self.g)),
            BoundaryPath::EvPeriodic { prefix, cycle } => {
                if !prefix.is_vertex() {
                    write!(f, "{} . ", prefix.display(self.g))?;
                }
                write!(f, "({})^inf", cycle.display(self.g))
            }
        }
    }
}

/// The basic open set `Z(μ ∖ F)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CylinderSet {
    mu: Path,
    excluded: BTreeSet<EdgeId>,
}

impl CylinderSet {
    pub fn new(
        g: &Graph,
        mu: Path,
        excluded: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Self, GroupoidError> {
        let excluded: BTreeSet<EdgeId> = excluded.into_iter().collect();
        if let Some(bad) = excluded.iter().find(|e| g.source(**e) != mu.range()) {
            return Err(GroupoidError::BadExclusion(g.edge_name(*bad).to_owned()));
        }
        Ok(Self { mu, excluded })
    }

    /// `Z(μ)`
    pub fn of(mu: Path) -> Self {
        Self {
            mu,
            excluded: BTreeSet::new(),
        }
    }

    pub fn mu(&self) -> &Path {
        &self.mu
    }

    pub fn excluded(&self) -> &BTreeSet<EdgeId> {
        &self.excluded
    }

    pub fn contains(&self, x: &BoundaryPath) -> bool {
        if x.source() != self.mu.source() {
            return false;
        }
        if let Some(len) = x.len() {
            if len < self.mu.len() {
                return false;
            }
        }
        let extends = self
            .mu
            .edges()
            .iter()
            .enumerate()
            .all(|(i, e)| x.edge_at(i) == Some(*e));
        extends
            && x.edge_at(self.mu.len())
                .is_none_or(|e| !self.excluded.contains(&e))
    }

    /// `None` when the intersection is empty for a structural reason
    /// (incomparable prefixes, or the longer prefix leaves through an edge
    /// the shorter one excludes).
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let (short, long) = if self.mu.len() <= other.mu.len() {
            (self, other)
        } else {
            (other, self)
        };
        if !short.mu.is_prefix_of(&long.mu) {
            return None;
        }
        if short.mu.len() == long.mu.len() {
            return Some(Self {
                mu: long.mu.clone(),
                excluded: short.excluded.union(&long.excluded).copied().collect(),
            });
        }
        let next = long.mu.edges()[short.mu.len()];
        if short.excluded.contains(&next) {
            return None;
        }
        Some(long.clone())
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> CylinderDisplay<'a> {
        CylinderDisplay { z: self, g }
    }
}

pub struct CylinderDisplay<'a> {
    z: &'a CylinderSet,
    g: &'a Graph,
}

impl fmt::Display for CylinderDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z({}", self.z.mu.display(self.g))?;
        if !self.z.excluded.is_empty() {
            let names: Vec<&str> = self
                .z
                .excluded
                .iter()
                .map(|e| self.g.edge_name(*e))
                .collect();
            write!(f, " \\ {{{}}}", names.join(", "))?;
        }
        f.write_str(")")
    }
}

/// `(x, k, y)` with witnesses `(m, n)`: `σᵐ(x) = σⁿ(y)` and `k = m − n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidElement {
    pub x: BoundaryPath,
    pub k: i64,
    pub y: BoundaryPath,
    pub witness: (usize, usize),
}

fn search_bound(x: &BoundaryPath) -> usize {
    match x {
        BoundaryPath::Finite(p) => p.len(),
        BoundaryPath::EvPeriodic { prefix, cycle } => prefix.len() + cycle.len(),
    }
}

impl GroupoidElement {
    /// Finds the minimal witness `(m, n)` with `m − n = k` and
    /// `σᵐ(x) = σⁿ(y)`.
    ///
    /// Past both prefixes the tails are periodic with the same primitive
    /// period, so any witness can be lowered by whole periods until one of
    /// `m`, `n` lies within its point's prefix plus one period. Searching up
    /// to the sum of both bounds plus `|k|` therefore decides existence.
    pub fn new(g: &Graph, x: BoundaryPath, k: i64, y: BoundaryPath) -> Result<Self, GroupoidError> {
        if x.is_finite() != y.is_finite() {
            return Err(GroupoidError::NoWitness);
        }
        let bound = search_bound(&x) + search_bound(&y) + k.unsigned_abs() as usize;
        let max_m = x.len().map_or(bound, |l| l.min(bound));
        let max_n = y.len().unwrap_or(bound);
        for m in k.max(0) as usize..=max_m {
            let n = (m as i64 - k) as usize;
            if n > max_n {
                break;
            }
            if x.shift(g, m)? == y.shift(g, n)? {
                return Ok(Self {
                    x,
                    k,
                    y,
                    witness: (m, n),
                });
            }
        }
        Err(GroupoidError::NoWitness)
    }

    /// `(x, 0, x)`
    pub fn unit(x: BoundaryPath) -> Self {
        Self {
            y: x.clone(),
            x,
            k: 0,
            witness: (0, 0),
        }
    }

    /// `(x, k, y)(y, l, z) = (x, k + l, z)`
    pub fn compose(&self, g: &Graph, other: &Self) -> Result<Self, GroupoidError> {
        if self.y != other.x {
            return Err(GroupoidError::NotComposable);
        }
        Self::new(g, self.x.clone(), self.k + other.k, other.y.clone())
    }

    /// `(x, k, y)⁻¹ = (y, −k, x)`
    pub fn inverse(&self, g: &Graph) -> Result<Self, GroupoidError> {
        Self::new(g, self.y.clone(), -self.k, self.x.clone())
    }

    pub fn is_unit(&self) -> bool {
        self.k == 0 && self.x == self.y
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> ElementDisplay<'a> {
        ElementDisplay { el: self, g }
    }
}

pub struct ElementDisplay<'a> {
    el: &'a GroupoidElement,
    g: &'a Graph,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}) witness ({}, {})",
            self.el.x.display(self.g),
            self.el.k,
            self.el.y.display(self.g),
            self.el.witness.0,
            self.el.witness.1
        )
    }
}
