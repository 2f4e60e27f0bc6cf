//! Projections, the diagonal subalgebra `D_R(E)`, and *-homomorphisms.
//!
//! Over a kind coefficient ring every projection of `L_R(E)` is diagonal and
//! every *-homomorphism maps diagonal to diagonal. The checks here decide
//! membership by inspecting normal forms, and report a result contradicting
//! those statements as [`AnalysisError::TheoremViolation`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraElement, Monomial, UniformTerm};
use crate::error::AnalysisError;
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::par::Exec;
use crate::ring::{RingElement, StarRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionFailure {
    NotSelfAdjoint,
    NotIdempotent,
}

impl fmt::Display for ProjectionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectionFailure::NotSelfAdjoint => f.write_str("p \u{2260} p^*"),
            ProjectionFailure::NotIdempotent => f.write_str("p \u{2260} p^2"),
        }
    }
}

/// First reason `p` fails to satisfy `p = p* = p²`, if any.
pub fn projection_failure(p: &AlgebraElement) -> Option<ProjectionFailure> {
    if p.star() != *p {
        return Some(ProjectionFailure::NotSelfAdjoint);
    }
    if p.mul(p).expect("same context") != *p {
        return Some(ProjectionFailure::NotIdempotent);
    }
    None
}

pub fn is_projection(p: &AlgebraElement) -> bool {
    projection_failure(p).is_none()
}

/// `p = Σ λ·ββ*`, entries in canonical path order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalDecomposition {
    pub entries: Vec<(Path, RingElement)>,
}

impl DiagonalDecomposition {
    pub fn reconstruct(&self, graph: Arc<Graph>, ring: StarRing) -> AlgebraElement {
        AlgebraElement::from_terms(
            graph,
            ring,
            self.entries
                .iter()
                .map(|(b, c)| (c.clone(), b.clone(), b.clone())),
        )
        .expect("diagonal legs share a range")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalAnalysis {
    pub member: bool,
    pub decomposition: Option<DiagonalDecomposition>,
}

fn diagonal_decomposition(p: &AlgebraElement) -> Option<DiagonalDecomposition> {
    p.terms()
        .map(|(m, c)| m.is_diagonal().then(|| (m.mu.clone(), c.clone())))
        .collect::<Option<Vec<_>>>()
        .map(|entries| DiagonalDecomposition { entries })
}

/// Decides `p ∈ D_R(E)` from the normal form: membership holds exactly when
/// every term has equal legs.
pub fn diagonal_analyze(p: &AlgebraElement) -> Result<DiagonalAnalysis, AnalysisError> {
    match diagonal_decomposition(p) {
        Some(d) => Ok(DiagonalAnalysis {
            member: true,
            decomposition: Some(d),
        }),
        None => {
            if p.ring().is_kind() && is_projection(p) {
                return Err(AnalysisError::TheoremViolation(format!(
                    "projection {} over kind ring {} has a non-diagonal normal form",
                    p,
                    p.ring()
                )));
            }
            Ok(DiagonalAnalysis {
                member: false,
                decomposition: None,
            })
        }
    }
}

/// Replay data for one `β ∈ B`.
#[derive(Clone, Debug)]
pub struct BetaRecord {
    pub beta: Path,
    /// Number of `β′ ∈ B` with `β′ < β`.
    pub m_beta: usize,
    pub f_beta: Vec<EdgeId>,
    /// `γ_β = β − β·Σ_{e ∈ F_β} ee*`
    pub gamma: AlgebraElement,
    /// Degree-zero part of `γ_β* p γ_β`, computed directly.
    pub lhs_degree_zero: AlgebraElement,
    /// Degree-zero part of `γ_β* p* p γ_β`, computed directly.
    pub rhs_degree_zero: AlgebraElement,
    /// Scalar of the closed form `(Σ_{β′ ≤ β} λ_{(β′,β′)})·(r(β) − Σ_{F_β} ee*)`.
    pub lhs_scalar: RingElement,
    /// Scalar of the closed form built from `B^{<β}` and the column `λ_{(·,β)}`.
    pub rhs_scalar: RingElement,
    pub diagonal_coeff: RingElement,
    /// Nonzero `λ_{(α,β)}` with `α ≠ β`, which must be empty.
    pub off_diagonal: Vec<(Path, RingElement)>,
}

impl BetaRecord {
    pub fn sign_law_holds(&self) -> bool {
        let expected = if self.m_beta.is_multiple_of(2) { 1 } else { -1 };
        self.diagonal_coeff == RingElement::from_integer(self.diagonal_coeff.ring(), expected)
    }
}

#[derive(Clone, Debug)]
pub struct ProofTrace {
    pub level: usize,
    pub a: Vec<Path>,
    pub b: Vec<Path>,
    pub coefficients: Vec<UniformTerm>,
    /// One record per `β ∈ B`, in ≤-topological (canonical) order.
    pub records: Vec<BetaRecord>,
}

impl ProofTrace {
    /// `true` when every record satisfies the sign law with vanishing
    /// off-diagonal coefficients. A successful [`proof_trace`] always
    /// yields a trace for which this holds.
    pub fn verified(&self) -> bool {
        self.records
            .iter()
            .all(|r| r.sign_law_holds() && r.off_diagonal.is_empty())
    }
}

/// Replays the argument that a projection over a kind ring is diagonal.
///
/// The projection is uniformized at level `k` into `Σ λ_{(α,β)} αβ*`. For
/// every `β ∈ B`, in canonical order (so each `β′ < β` is handled first),
/// both sides of `γ_β* p γ_β = γ_β* p* p γ_β` are computed in degree zero
/// and compared with their closed forms; the closed forms are scalar
/// multiples of the projection `r(β) − Σ_{F_β} ee*`, and equating the
/// scalars forces `λ_{(β,β)} = (−1)^{m_β}` with the rest of the column
/// vanishing. Each of those facts is checked against the actual coefficient
/// table.
pub fn proof_trace(p: &AlgebraElement, k: usize) -> Result<ProofTrace, AnalysisError> {
    let ring = p.ring();
    if !ring.is_kind() {
        return Err(AnalysisError::Precondition(format!(
            "ring {ring} is not kind"
        )));
    }
    if let Some(why) = projection_failure(p) {
        return Err(AnalysisError::Precondition(format!(
            "not a projection: {why}"
        )));
    }
    let coefficients = p.uniformize(k)?;
    let graph = p.graph().clone();
    let g = &*graph;

    let mut table: BTreeMap<(Path, Path), RingElement> = BTreeMap::new();
    let mut b_set = BTreeSet::new();
    let mut a_set = BTreeSet::new();
    for t in &coefficients {
        table.insert((t.alpha.clone(), t.beta.clone()), t.coeff.clone());
        a_set.insert(t.alpha.clone());
        b_set.insert(t.beta.clone());
    }
    a_set.extend(b_set.iter().cloned());
    let a: Vec<Path> = a_set.into_iter().collect();
    let b: Vec<Path> = b_set.into_iter().collect();
    let lambda = |alpha: &Path, beta: &Path| {
        table
            .get(&(alpha.clone(), beta.clone()))
            .cloned()
            .unwrap_or_else(|| RingElement::zero(ring))
    };

    let p_star_p = p.star().mul(p)?;
    let mut records = Vec::with_capacity(b.len());
    for beta in &b {
        let below: Vec<&Path> = b
            .iter()
            .filter(|x| *x != beta && x.is_prefix_of(beta))
            .collect();
        let m_beta = below.len();

        let f_beta: Vec<EdgeId> = g
            .out_edges(beta.range())
            .iter()
            .copied()
            .filter(|&e| {
                let ext = beta.extended(g, e);
                b.iter().any(|x| x != beta && ext.is_prefix_of(x))
            })
            .collect();

        let r = beta.range();
        let mut corner = AlgebraElement::vertex(graph.clone(), ring, r);
        for &e in &f_beta {
            let ep = Path::edge(g, e);
            corner = corner.sub(&AlgebraElement::monomial(
                graph.clone(),
                ring,
                ep.clone(),
                ep,
            )?)?;
        }
        let gamma = AlgebraElement::path(graph.clone(), ring, beta).mul(&corner)?;
        let gamma_star = gamma.star();
        let lhs_degree_zero = gamma_star.mul(p)?.mul(&gamma)?.graded_component(0);
        let rhs_degree_zero = gamma_star.mul(&p_star_p)?.mul(&gamma)?.graded_component(0);

        let diagonal_coeff = lambda(beta, beta);
        let mut lhs_scalar = diagonal_coeff.clone();
        let mut below_sum = RingElement::zero(ring);
        for x in &below {
            below_sum += &lambda(x, x);
        }
        lhs_scalar += &below_sum;

        let mut rhs_scalar = &below_sum.conj() * &below_sum;
        rhs_scalar += &(&below_sum.conj() * &diagonal_coeff);
        rhs_scalar += &(&below_sum * &diagonal_coeff.conj());
        let mut off_diagonal = Vec::new();
        for alpha in a.iter().filter(|x| x.range() == r) {
            let l = lambda(alpha, beta);
            rhs_scalar += &l.abs_sq();
            if alpha != beta && !l.is_zero() {
                off_diagonal.push((alpha.clone(), l));
            }
        }

        let name = beta.display(g).to_string();
        if lhs_degree_zero != corner.scale(&lhs_scalar)? {
            return Err(AnalysisError::Inconsistent(format!(
                "degree-zero part of the left side at {name} is {lhs_degree_zero}, closed form gives {}",
                corner.scale(&lhs_scalar)?
            )));
        }
        if rhs_degree_zero != corner.scale(&rhs_scalar)? {
            return Err(AnalysisError::Inconsistent(format!(
                "degree-zero part of the right side at {name} is {rhs_degree_zero}, closed form gives {}",
                corner.scale(&rhs_scalar)?
            )));
        }
        if lhs_scalar != rhs_scalar {
            return Err(AnalysisError::Inconsistent(format!(
                "both sides differ at {name} although p = p*p"
            )));
        }

        let record = BetaRecord {
            beta: beta.clone(),
            m_beta,
            f_beta,
            gamma,
            lhs_degree_zero,
            rhs_degree_zero,
            lhs_scalar,
            rhs_scalar,
            diagonal_coeff,
            off_diagonal,
        };
        if !record.sign_law_holds() || !record.off_diagonal.is_empty() {
            return Err(AnalysisError::TheoremViolation(format!(
                "coefficient column of {name} violates the sign law (m = {m_beta}, λ = {})",
                record.diagonal_coeff
            )));
        }
        records.push(record);
    }

    Ok(ProofTrace {
        level: k,
        a,
        b,
        coefficients,
        records,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// Vertex images are self-adjoint idempotents.
    VertexProjection,
    /// Images of distinct vertices are orthogonal.
    VertexOrthogonality,
    Lp1,
    Lp2,
    Lp3,
    Lp4,
    Lp5,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::VertexProjection => "vertex projection",
            Relation::VertexOrthogonality => "vertex orthogonality",
            Relation::Lp1 => "LP1",
            Relation::Lp2 => "LP2",
            Relation::Lp3 => "LP3",
            Relation::Lp4 => "LP4",
            Relation::Lp5 => "LP5",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFailure {
    pub relation: Relation,
    pub instance: String,
}

impl fmt::Display for RelationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.relation, self.instance)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomStatus {
    Unchecked,
    Valid,
    Invalid(RelationFailure),
}

/// Assignment of generator images defining a candidate *-homomorphism
/// `L_R(E) → L_R(F)`. The image of `e*` is always `star(image(e))`.
#[derive(Clone, Debug)]
pub struct HomSpec {
    source: Arc<Graph>,
    target: Arc<Graph>,
    ring: StarRing,
    vertex_images: Vec<AlgebraElement>,
    edge_images: Vec<AlgebraElement>,
    edge_star_images: Vec<AlgebraElement>,
    status: HomStatus,
}

impl HomSpec {
    pub fn new(
        source: Arc<Graph>,
        target: Arc<Graph>,
        ring: StarRing,
        mut vertex_images: BTreeMap<VertexId, AlgebraElement>,
        mut edge_images: BTreeMap<EdgeId, AlgebraElement>,
    ) -> Result<Self, AnalysisError> {
        let check = |a: &AlgebraElement| -> Result<(), AnalysisError> {
            let zero = AlgebraElement::zero(target.clone(), ring);
            zero.equals(a)?;
            Ok(())
        };
        let mut vs = Vec::with_capacity(source.vertex_count());
        for v in source.vertex_ids() {
            let img = vertex_images
                .remove(&v)
                .ok_or_else(|| AnalysisError::MissingImage(source.vertex_name(v).to_owned()))?;
            check(&img)?;
            vs.push(img);
        }
        let mut es = Vec::with_capacity(source.edge_count());
        for e in source.edge_ids() {
            let img = edge_images
                .remove(&e)
                .ok_or_else(|| AnalysisError::MissingImage(source.edge_name(e).to_owned()))?;
            check(&img)?;
            es.push(img);
        }
        let stars = es.iter().map(AlgebraElement::star).collect();
        Ok(Self {
            source,
            target,
            ring,
            vertex_images: vs,
            edge_images: es,
            edge_star_images: stars,
            status: HomStatus::Unchecked,
        })
    }

    /// The identity assignment on the generators of `g`.
    pub fn identity(g: Arc<Graph>, ring: StarRing) -> Self {
        let vs = g
            .vertex_ids()
            .map(|v| (v, AlgebraElement::vertex(g.clone(), ring, v)))
            .collect();
        let es = g
            .edge_ids()
            .map(|e| (e, AlgebraElement::path(g.clone(), ring, &Path::edge(&g, e))))
            .collect();
        Self::new(g.clone(), g, ring, vs, es).expect("identity images are complete")
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn ring(&self) -> StarRing {
        self.ring
    }

    pub fn status(&self) -> &HomStatus {
        &self.status
    }

    pub fn vertex_image(&self, v: VertexId) -> &AlgebraElement {
        &self.vertex_images[v.index()]
    }

    pub fn edge_image(&self, e: EdgeId) -> &AlgebraElement {
        &self.edge_images[e.index()]
    }

    /// Checks the defining relations on the images and records the first
    /// failing instance.
    pub fn validate(mut self) -> Self {
        self.status = match self.first_failure() {
            Ok(None) => HomStatus::Valid,
            Ok(Some(f)) => HomStatus::Invalid(f),
            Err(e) => HomStatus::Invalid(RelationFailure {
                relation: Relation::VertexProjection,
                instance: e.to_string(),
            }),
        };
        self
    }

    fn first_failure(&self) -> Result<Option<RelationFailure>, AnalysisError> {
        let g = &*self.source;
        let zero = AlgebraElement::zero(self.target.clone(), self.ring);
        let vname = |v: VertexId| g.vertex_name(v);
        let ename = |e: EdgeId| g.edge_name(e);
        let fail = |relation, instance: String| Ok(Some(RelationFailure { relation, instance }));

        for v in g.vertex_ids() {
            if let Some(why) = projection_failure(self.vertex_image(v)) {
                return fail(
                    Relation::VertexProjection,
                    format!("image of {}: {why}", vname(v)),
                );
            }
        }
        for v in g.vertex_ids() {
            for w in g.vertex_ids().filter(|w| *w != v) {
                if self.vertex_image(v).mul(self.vertex_image(w))? != zero {
                    return fail(
                        Relation::VertexOrthogonality,
                        format!("{} {} \u{2260} 0", vname(v), vname(w)),
                    );
                }
            }
        }
        for e in g.edge_ids() {
            for f in g.edge_ids().filter(|f| *f != e) {
                let prod = self.edge_star_images[e.index()].mul(&self.edge_images[f.index()])?;
                if prod != zero {
                    return fail(
                        Relation::Lp1,
                        format!("{}^* {} \u{2260} 0", ename(e), ename(f)),
                    );
                }
            }
        }
        for e in g.edge_ids() {
            let prod = self.edge_star_images[e.index()].mul(&self.edge_images[e.index()])?;
            if prod != *self.vertex_image(g.range(e)) {
                return fail(
                    Relation::Lp2,
                    format!("{}^* {} \u{2260} {}", ename(e), ename(e), vname(g.range(e))),
                );
            }
        }
        for e in g.edge_ids() {
            let img = &self.edge_images[e.index()];
            let (s, r) = (
                self.vertex_image(g.source(e)),
                self.vertex_image(g.range(e)),
            );
            if s.mul(img)? != *img {
                return fail(
                    Relation::Lp3,
                    format!("{} {} \u{2260} {}", vname(g.source(e)), ename(e), ename(e)),
                );
            }
            if img.mul(r)? != *img {
                return fail(
                    Relation::Lp3,
                    format!("{} {} \u{2260} {}", ename(e), vname(g.range(e)), ename(e)),
                );
            }
        }
        for e in g.edge_ids() {
            let img = &self.edge_star_images[e.index()];
            let (s, r) = (
                self.vertex_image(g.source(e)),
                self.vertex_image(g.range(e)),
            );
            if img.mul(s)? != *img {
                return fail(
                    Relation::Lp4,
                    format!(
                        "{}^* {} \u{2260} {}^*",
                        ename(e),
                        vname(g.source(e)),
                        ename(e)
                    ),
                );
            }
            if r.mul(img)? != *img {
                return fail(
                    Relation::Lp4,
                    format!(
                        "{} {}^* \u{2260} {}^*",
                        vname(g.range(e)),
                        ename(e),
                        ename(e)
                    ),
                );
            }
        }
        for v in g.vertex_ids().filter(|v| g.is_regular(*v)) {
            let mut sum = zero.clone();
            for &e in g.out_edges(v) {
                sum =
                    sum.add(&self.edge_images[e.index()].mul(&self.edge_star_images[e.index()])?)?;
            }
            if sum != *self.vertex_image(v) {
                return fail(
                    Relation::Lp5,
                    format!("{} \u{2260} \u{3a3} e e^*", vname(v)),
                );
            }
        }
        Ok(None)
    }

    fn require_valid(&self) -> Result<(), AnalysisError> {
        match &self.status {
            HomStatus::Valid => Ok(()),
            HomStatus::Unchecked => Err(AnalysisError::Unvalidated),
            HomStatus::Invalid(f) => Err(AnalysisError::InvalidHom(f.to_string())),
        }
    }

    fn path_image(&self, mu: &Path) -> Result<AlgebraElement, AnalysisError> {
        let Some((first, rest)) = mu.edges().split_first() else {
            return Ok(self.vertex_image(mu.source()).clone());
        };
        let mut acc = self.edge_images[first.index()].clone();
        for e in rest {
            acc = acc.mul(&self.edge_images[e.index()])?;
        }
        Ok(acc)
    }

    /// Extends the generator images to `L_R(E)`:
    /// `λ·μν* ↦ λ·h(μ)·star(h(ν))`.
    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement, AnalysisError> {
        self.require_valid()?;
        let zero = AlgebraElement::zero(self.source.clone(), self.ring);
        zero.equals(a)?;
        let mut out = AlgebraElement::zero(self.target.clone(), self.ring);
        for (Monomial { mu, nu }, c) in a.terms() {
            let img = self.path_image(mu)?.mul(&self.path_image(nu)?.star())?;
            out = out.add(&img.scale(c)?)?;
        }
        Ok(out)
    }

    /// Applies the homomorphism to `μμ*` for every path with `|μ| ≤ depth`
    /// and reports images that leave the diagonal.
    pub fn check_diagonal_preservation(
        &self,
        depth: usize,
        exec: Exec,
    ) -> Result<PreservationReport, AnalysisError> {
        self.require_valid()?;
        let paths = self.source.paths_up_to(depth);
        let results = exec.map(&paths, |mu| -> Result<_, AnalysisError> {
            let gen =
                AlgebraElement::monomial(self.source.clone(), self.ring, mu.clone(), mu.clone())?;
            let img = self.apply(&gen)?;
            Ok(diagonal_decomposition(&img)
                .is_none()
                .then_some((mu.clone(), img)))
        });
        let mut failures = Vec::new();
        for r in results {
            if let Some(f) = r? {
                failures.push(f);
            }
        }
        if self.ring.is_kind() && !failures.is_empty() {
            let (mu, img) = &failures[0];
            return Err(AnalysisError::TheoremViolation(format!(
                "valid *-homomorphism over kind ring {} maps {} {}^* to non-diagonal {}",
                self.ring,
                mu.display(&self.source),
                mu.display(&self.source),
                img
            )));
        }
        Ok(PreservationReport {
            checked: paths.len(),
            failures,
        })
    }
}

#[derive(Clone, Debug)]
pub struct PreservationReport {
    /// Number of diagonal generators `μμ*` examined.
    pub checked: usize,
    pub failures: Vec<(Path, AlgebraElement)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2() -> Arc<Graph> {
        Arc::new(Graph::build(&["v"], &[("e1", "v", "v"), ("e2", "v", "v")], &[]).unwrap())
    }

    fn path(g: &Graph, s: &str) -> Path {
        match g.vertex(s) {
            Some(v) => Path::vertex(v),
            None => g
                .path_from_names(&s.split_whitespace().collect::<Vec<_>>())
                .unwrap(),
        }
    }

    fn mono(g: &Arc<Graph>, ring: StarRing, mu: &str, nu: &str) -> AlgebraElement {
        AlgebraElement::monomial(g.clone(), ring, path(g, mu), path(g, nu)).unwrap()
    }

    /// `(1/2)(e1 + e2)(e1 + e2)*` over ℤ\[1/2\].
    fn half_projection(g: &Arc<Graph>) -> AlgebraElement {
        let zh = StarRing::DyadicRationals;
        let x = mono(g, zh, "e1", "v").add(&mono(g, zh, "e2", "v")).unwrap();
        x.mul(&x.star())
            .unwrap()
            .scale(&RingElement::rational(zh, 1, 2).unwrap())
            .unwrap()
    }

    #[test]
    fn projection_examples() {
        let g = e2();
        let z = StarRing::Integers;
        assert!(is_projection(&mono(&g, z, "v", "v")));
        assert!(is_projection(&mono(&g, z, "e1", "e1")));
        assert_eq!(
            projection_failure(&mono(&g, z, "e1", "v")),
            Some(ProjectionFailure::NotSelfAdjoint)
        );
        let two_v = mono(&g, z, "v", "v")
            .scale(&RingElement::from_integer(z, 2))
            .unwrap();
        assert_eq!(
            projection_failure(&two_v),
            Some(ProjectionFailure::NotIdempotent)
        );
    }

    #[test]
    fn diagonal_examples() {
        let g = e2();
        let z = StarRing::Integers;
        let p = mono(&g, z, "v", "v").sub(&mono(&g, z, "e1", "e1")).unwrap();
        let d = diagonal_analyze(&p).unwrap();
        assert!(d.member);
        assert_eq!(
            d.decomposition.as_ref().unwrap().entries,
            vec![(path(&g, "e2"), RingElement::one(z))]
        );
        assert_eq!(d.decomposition.unwrap().reconstruct(g.clone(), z), p);

        let d = diagonal_analyze(&mono(&g, z, "e1", "e2")).unwrap();
        assert_eq!(
            d,
            DiagonalAnalysis {
                member: false,
                decomposition: None
            }
        );

        let q = half_projection(&g);
        assert!(is_projection(&q));
        assert!(!diagonal_analyze(&q).unwrap().member);
    }

    #[test]
    fn sign_law_needs_an_infinite_emitter() {
        // v keeps its own ββ* term only when it cannot be expanded
        let g =
            Arc::new(Graph::build(&["v"], &[("e1", "v", "v"), ("e2", "v", "v")], &["v"]).unwrap());
        let z = StarRing::Integers;
        let p = mono(&g, z, "v", "v").sub(&mono(&g, z, "e2", "e2")).unwrap();
        let t = proof_trace(&p, 1).unwrap();
        assert_eq!(t.b, vec![path(&g, "v"), path(&g, "e2")]);
        let rec = &t.records[1];
        assert_eq!(rec.m_beta, 1);
        assert_eq!(rec.diagonal_coeff, RingElement::from_integer(z, -1));
        assert_eq!(t.records[0].f_beta, vec![g.edge("e2").unwrap()]);
        assert!(t.verified());
    }

    #[test]
    fn trace_examples() {
        let g = e2();
        let z = StarRing::Integers;
        let t = proof_trace(&mono(&g, z, "v", "v"), 0).unwrap();
        assert_eq!(t.b, vec![path(&g, "v")]);
        assert_eq!(t.records[0].m_beta, 0);
        assert!(t.records[0].diagonal_coeff.is_one());

        let p = mono(&g, z, "v", "v").sub(&mono(&g, z, "e2", "e2")).unwrap();
        let t = proof_trace(&p, 1).unwrap();
        assert_eq!(t.b, vec![path(&g, "e1")]);
        assert!(t.verified());
        assert_eq!(t.records[0].lhs_degree_zero, t.records[0].rhs_degree_zero);

        assert!(matches!(
            proof_trace(&mono(&g, z, "e1", "v"), 1),
            Err(AnalysisError::Precondition(_))
        ));
        assert!(matches!(
            proof_trace(&half_projection(&g), 1),
            Err(AnalysisError::Precondition(_))
        ));
    }

    fn hom_from(g: &Arc<Graph>, z: StarRing, e1: AlgebraElement, e2: AlgebraElement) -> HomSpec {
        let v = g.vertex("v").unwrap();
        HomSpec::new(
            g.clone(),
            g.clone(),
            z,
            [(v, AlgebraElement::vertex(g.clone(), z, v))].into(),
            [(g.edge("e1").unwrap(), e1), (g.edge("e2").unwrap(), e2)].into(),
        )
        .unwrap()
    }

    #[test]
    fn hom_validation_examples() {
        let g = e2();
        let z = StarRing::Integers;
        let e1 = mono(&g, z, "e1", "v");
        let e2m = mono(&g, z, "e2", "v");
        assert_eq!(
            HomSpec::identity(g.clone(), z).validate().status(),
            &HomStatus::Valid
        );
        assert_eq!(
            hom_from(&g, z, e2m.clone(), e1.clone()).validate().status(),
            &HomStatus::Valid
        );
        match hom_from(&g, z, e1.clone(), e1.clone()).validate().status() {
            HomStatus::Invalid(f) => assert_eq!(f.relation, Relation::Lp1),
            other => panic!("{other:?}"),
        }
        // e1 ↦ e1e1 keeps LP1–LP4 but breaks LP5
        let sq = e1.mul(&e1).unwrap();
        match hom_from(&g, z, sq, e2m).validate().status() {
            HomStatus::Invalid(f) => assert_eq!(f.relation, Relation::Lp5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn apply_hom_examples() {
        let g = e2();
        let z = StarRing::Integers;
        let id = HomSpec::identity(g.clone(), z);
        assert_eq!(
            id.apply(&mono(&g, z, "e1", "e2")),
            Err(AnalysisError::Unvalidated)
        );
        let id = id.validate();
        assert_eq!(
            id.apply(&mono(&g, z, "e1", "e2")).unwrap(),
            mono(&g, z, "e1", "e2")
        );

        let e1 = mono(&g, z, "e1", "v");
        let e2m = mono(&g, z, "e2", "v");
        let swap = hom_from(&g, z, e2m.clone(), e1.clone()).validate();
        assert_eq!(
            swap.apply(&mono(&g, z, "e1", "e1")).unwrap(),
            mono(&g, z, "e2", "e2")
        );
        let sign = hom_from(&g, z, e1.neg(), e2m.neg()).validate();
        assert_eq!(
            sign.apply(&mono(&g, z, "e1", "e1")).unwrap(),
            mono(&g, z, "e1", "e1")
        );
    }

    #[test]
    fn preservation_examples() {
        let g = e2();
        let z = StarRing::Integers;
        let id = HomSpec::identity(g.clone(), z).validate();
        let r = id.check_diagonal_preservation(3, Exec::default()).unwrap();
        assert_eq!(r.checked, 15);
        assert!(r.failures.is_empty());
    }

    #[test]
    fn rotation_over_rationals_leaves_the_diagonal() {
        // h(e_i) = w e_i with w the rotation by (3/5, 4/5) acting on span{e1, e2}
        let g = e2();
        let q = StarRing::Rationals;
        let c = |n| RingElement::rational(q, n, 5).unwrap();
        let w = mono(&g, q, "e1", "e1")
            .scale(&c(3))
            .unwrap()
            .add(&mono(&g, q, "e1", "e2").scale(&c(4)).unwrap())
            .unwrap()
            .add(&mono(&g, q, "e2", "e1").scale(&c(-4)).unwrap())
            .unwrap()
            .add(&mono(&g, q, "e2", "e2").scale(&c(3)).unwrap())
            .unwrap();
        let h = hom_from(
            &g,
            q,
            w.mul(&mono(&g, q, "e1", "v")).unwrap(),
            w.mul(&mono(&g, q, "e2", "v")).unwrap(),
        )
        .validate();
        assert_eq!(h.status(), &HomStatus::Valid);
        let r = h.check_diagonal_preservation(1, Exec::Sequential).unwrap();
        assert_eq!(r.checked, 3);
        assert_eq!(r.failures.len(), 2);
        let off = Monomial {
            mu: path(&g, "e1"),
            nu: path(&g, "e2"),
        };
        assert_eq!(
            r.failures[0].1.coefficient(&off),
            RingElement::rational(q, -12, 25).unwrap()
        );
    }
}
