//! Seeded random generators for property suites and benchmarks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::AlgebraElement;
use crate::graph::{Graph, Path, VertexId};
use crate::groupoid::BoundaryPath;
use crate::ring::{RingElement, StarRing};

/// All paths up to a length bound, indexed by range and by source.
pub struct PathTable {
    pub all: Vec<Path>,
    by_range: Vec<Vec<Path>>,
    by_source: Vec<Vec<Path>>,
}

impl PathTable {
    pub fn new(g: &Graph, max_len: usize) -> Self {
        let all = g.paths_up_to(max_len);
        let mut by_range = vec![Vec::new(); g.vertex_count()];
        let mut by_source = vec![Vec::new(); g.vertex_count()];
        for p in &all {
            by_range[p.range().index()].push(p.clone());
            by_source[p.source().index()].push(p.clone());
        }
        Self {
            all,
            by_range,
            by_source,
        }
    }

    pub fn ending_at(&self, v: VertexId) -> &[Path] {
        &self.by_range[v.index()]
    }

    pub fn starting_at(&self, v: VertexId) -> &[Path] {
        &self.by_source[v.index()]
    }

    pub fn closed_at(&self, v: VertexId) -> Vec<&Path> {
        self.by_source[v.index()]
            .iter()
            .filter(|p| !p.is_vertex() && p.range() == v)
            .collect()
    }
}

pub fn coefficient<R: Rng>(rng: &mut R, ring: StarRing, bound: i64) -> RingElement {
    loop {
        let c = match ring {
            StarRing::GaussianIntegers => RingElement::gaussian(
                ring,
                rng.gen_range(-bound..=bound),
                rng.gen_range(-bound..=bound),
            )
            .expect("gaussian integer"),
            _ => RingElement::from_integer(ring, rng.gen_range(-bound..=bound)),
        };
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random monomial `μν*` from the table.
pub fn monomial<R: Rng>(rng: &mut R, table: &PathTable) -> (Path, Path) {
    let mu = table.all.choose(rng).expect("table is nonempty").clone();
    let nu = table
        .ending_at(mu.range())
        .choose(rng)
        .expect("μ ends somewhere")
        .clone();
    (mu, nu)
}

/// Sum of up to `max_terms` random monomials with nonzero coefficients in
/// `[−bound, bound]`.
pub fn element<R: Rng>(
    rng: &mut R,
    graph: &Arc<Graph>,
    ring: StarRing,
    table: &PathTable,
    max_terms: usize,
    bound: i64,
) -> AlgebraElement {
    let n = rng.gen_range(1..=max_terms);
    let raw: Vec<_> = (0..n)
        .map(|_| {
            let (mu, nu) = monomial(rng, table);
            (coefficient(rng, ring, bound), mu, nu)
        })
        .collect();
    AlgebraElement::from_terms(graph.clone(), ring, raw).expect("monomials share ranges")
}

/// Random element whose raw monomials all have degree `degree`. Returns the
/// zero element when no monomial of that degree exists in the table.
pub fn homogeneous<R: Rng>(
    rng: &mut R,
    graph: &Arc<Graph>,
    ring: StarRing,
    table: &PathTable,
    degree: i64,
    max_terms: usize,
    bound: i64,
) -> AlgebraElement {
    let mut raw = Vec::new();
    for _ in 0..rng.gen_range(1..=max_terms) {
        for _ in 0..32 {
            let mu = table.all.choose(rng).unwrap();
            let want = mu.len() as i64 - degree;
            if want < 0 {
                continue;
            }
            let candidates: Vec<&Path> = table
                .ending_at(mu.range())
                .iter()
                .filter(|p| p.len() as i64 == want)
                .collect();
            if let Some(nu) = candidates.choose(rng) {
                raw.push((coefficient(rng, ring, bound), mu.clone(), (*nu).clone()));
                break;
            }
        }
    }
    AlgebraElement::from_terms(graph.clone(), ring, raw).expect("monomials share ranges")
}

fn comparable(a: &Path, b: &Path) -> bool {
    a.is_prefix_of(b) || b.is_prefix_of(a)
}

/// `Σ ββ*` over a random set of pairwise incomparable paths.
pub fn antichain_projection<R: Rng>(
    rng: &mut R,
    graph: &Arc<Graph>,
    ring: StarRing,
    table: &PathTable,
    max_paths: usize,
) -> AlgebraElement {
    let mut chosen: Vec<Path> = Vec::new();
    for _ in 0..rng.gen_range(1..=max_paths) {
        let p = table.all.choose(rng).unwrap();
        if chosen.iter().all(|q| !comparable(p, q)) {
            chosen.push(p.clone());
        }
    }
    let one = RingElement::one(ring);
    AlgebraElement::from_terms(
        graph.clone(),
        ring,
        chosen.into_iter().map(|p| (one.clone(), p.clone(), p)),
    )
    .expect("diagonal legs share a range")
}

/// The exchange unitary `u = μν* + νμ* + ηη* − μμ* − νν*` for incomparable
/// `μ`, `ν` with common source and range, under a common prefix `η`.
/// `u` is self-adjoint with `u² = ηη*`.
pub struct Exchange {
    pub mu: Path,
    pub nu: Path,
    pub eta: Path,
    pub unitary: AlgebraElement,
}

pub fn exchange<R: Rng>(
    rng: &mut R,
    graph: &Arc<Graph>,
    ring: StarRing,
    table: &PathTable,
) -> Option<Exchange> {
    let g = &**graph;
    for _ in 0..64 {
        let mu = table.all.choose(rng)?;
        let partners: Vec<&Path> = table
            .starting_at(mu.source())
            .iter()
            .filter(|p| p.range() == mu.range() && !comparable(p, mu))
            .collect();
        let Some(nu) = partners.choose(rng) else {
            continue;
        };
        let common = mu
            .edges()
            .iter()
            .zip(nu.edges())
            .take_while(|(a, b)| a == b)
            .count();
        let eta = mu.slice(g, 0, rng.gen_range(0..=common));
        let m = |a: &Path, b: &Path| {
            AlgebraElement::monomial(graph.clone(), ring, a.clone(), b.clone()).unwrap()
        };
        let unitary = m(mu, nu)
            .add(&m(nu, mu))
            .and_then(|u| u.add(&m(&eta, &eta)))
            .and_then(|u| u.sub(&m(mu, mu)))
            .and_then(|u| u.sub(&m(nu, nu)))
            .expect("same context");
        return Some(Exchange {
            mu: mu.clone(),
            nu: (*nu).clone(),
            eta,
            unitary,
        });
    }
    None
}

/// `p₀, p₁, …, p_steps` with `p₀` an antichain projection and
/// `p_{i+1} = u p_i u` for random exchange unitaries `u`.
pub fn projection_chain<R: Rng>(
    rng: &mut R,
    graph: &Arc<Graph>,
    ring: StarRing,
    table: &PathTable,
    steps: usize,
) -> Vec<AlgebraElement> {
    let mut chain = vec![antichain_projection(rng, graph, ring, table, 4)];
    for _ in 0..steps {
        let Some(x) = exchange(rng, graph, ring, table) else {
            break;
        };
        let p = chain.last().unwrap();
        let next = x
            .unitary
            .mul(p)
            .and_then(|up| up.mul(&x.unitary))
            .expect("same context");
        chain.push(next);
    }
    chain
}

/// A random eventually periodic point `α·c^∞` with `|α| ≤ max_prefix` and
/// `1 ≤ |c| ≤ table bound`. `None` if the graph has no cycles.
pub fn periodic_point<R: Rng>(
    rng: &mut R,
    g: &Graph,
    table: &PathTable,
    max_prefix: usize,
) -> Option<BoundaryPath> {
    let cyclic: Vec<VertexId> = g
        .vertex_ids()
        .filter(|v| !table.closed_at(*v).is_empty())
        .collect();
    let v = *cyclic.choose(rng)?;
    let cycle = (*table.closed_at(v).choose(rng)?).clone();
    let prefixes: Vec<&Path> = table
        .ending_at(v)
        .iter()
        .filter(|p| p.len() <= max_prefix)
        .collect();
    let prefix = (*prefixes.choose(rng)?).clone();
    BoundaryPath::periodic(g, prefix, cycle).ok()
}

/// Points `α·c^∞` sharing one tail, each with the offset `|α|`. Any two are
/// related by `k = |α| − |β| + t·|c|` for every integer `t`.
pub fn tail_equivalent_points<R: Rng>(
    rng: &mut R,
    g: &Graph,
    table: &PathTable,
    count: usize,
    max_prefix: usize,
) -> Option<(Path, Vec<(BoundaryPath, usize)>)> {
    let cyclic: Vec<VertexId> = g
        .vertex_ids()
        .filter(|v| !table.closed_at(*v).is_empty())
        .collect();
    let v = *cyclic.choose(rng)?;
    let cycle = (*table.closed_at(v).choose(rng)?).clone();
    let prefixes: Vec<&Path> = table
        .ending_at(v)
        .iter()
        .filter(|p| p.len() <= max_prefix)
        .collect();
    let points = (0..count)
        .map(|_| {
            let prefix = (*prefixes.choose(rng).unwrap()).clone();
            let n = prefix.len();
            (
                BoundaryPath::periodic(g, prefix, cycle.clone()).expect("valid cycle"),
                n,
            )
        })
        .collect();
    Some((cycle, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::is_projection;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exchange_unitaries_square_to_their_corner() {
        let g = Arc::new(Graph::build(&["v"], &[("e1", "v", "v"), ("e2", "v", "v")], &[]).unwrap());
        let table = PathTable::new(&g, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = exchange(&mut rng, &g, StarRing::Integers, &table).unwrap();
            let corner = AlgebraElement::monomial(
                g.clone(),
                StarRing::Integers,
                x.eta.clone(),
                x.eta.clone(),
            )
            .unwrap();
            assert_eq!(x.unitary.star(), x.unitary);
            assert_eq!(x.unitary.mul(&x.unitary).unwrap(), corner);
        }
    }

    #[test]
    fn chains_stay_projections() {
        let g = Arc::new(Graph::build(&["v"], &[("e1", "v", "v"), ("e2", "v", "v")], &[]).unwrap());
        let table = PathTable::new(&g, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in projection_chain(&mut rng, &g, StarRing::Integers, &table, 3) {
            assert!(is_projection(&p));
        }
    }
}
