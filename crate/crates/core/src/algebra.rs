//! Leavitt path algebras `L_R(E)` in normal form.
//!
//! Elements are finite sums `Σ λ·μν*` over monomials with `r(μ) = r(ν)`. The
//! spanning set is cut down to a basis by excluding monomials whose legs
//! both end in the special edge `e_v` of a regular vertex `v`; such a
//! monomial is rewritten with
//!
//! ```text
//! e_v e_v* = v − Σ_{f ∈ vE¹, f ≠ e_v} f f*
//! ```
//!
//! Each rewrite shortens both legs, so normalization terminates, and the
//! surviving monomials are linearly independent, so two elements are equal
//! exactly when their term maps coincide.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::graph::{Graph, Path, VertexId};
use crate::par::Exec;
use crate::ring::{RingElement, StarRing};

/// The monomial `μν*`. Ordered by `|μ|`, `μ`, `|ν|`, `ν`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub mu: Path,
    pub nu: Path,
}

impl Monomial {
    /// `|μ| − |ν|`
    pub fn degree(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }

    pub fn is_diagonal(&self) -> bool {
        self.mu == self.nu
    }

    pub fn is_normal(&self, g: &Graph) -> bool {
        match (self.mu.last_edge(), self.nu.last_edge()) {
            (Some(a), Some(b)) => a != b || !g.is_special(a),
            _ => true,
        }
    }

    /// Vertex of the two legs' common range.
    pub fn range(&self) -> VertexId {
        self.mu.range()
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, g }
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    g: &'a Graph,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Monomial { mu, nu } = self.m;
        if mu.is_vertex() && nu.is_vertex() {
            return f.write_str(self.g.vertex_name(mu.source()));
        }
        let mut first = true;
        for e in mu.edges() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(self.g.edge_name(*e))?;
        }
        for e in nu.edges().iter().rev() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}^*", self.g.edge_name(*e))?;
        }
        Ok(())
    }
}

/// One term `λ·αβ*` of a uniformized presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformTerm {
    pub coeff: RingElement,
    pub alpha: Path,
    pub beta: Path,
}

/// An element of `L_R(E)` bound to its graph and coefficient ring.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    graph: Arc<Graph>,
    ring: StarRing,
    terms: BTreeMap<Monomial, RingElement>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

fn accumulate(terms: &mut BTreeMap<Monomial, RingElement>, m: Monomial, c: RingElement) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            *slot.get_mut() += &c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// Adds `c·μν*` to `terms` in normal form.
fn accumulate_normalized(
    g: &Graph,
    terms: &mut BTreeMap<Monomial, RingElement>,
    mut mu: Path,
    mut nu: Path,
    c: RingElement,
) {
    debug_assert_eq!(mu.range(), nu.range());
    loop {
        match (mu.last_edge(), nu.last_edge()) {
            (Some(a), Some(b)) if a == b && g.is_special(a) => {
                let v = g.source(a);
                let mu_p = mu.parent(g).unwrap();
                let nu_p = nu.parent(g).unwrap();
                let minus = -&c;
                for &f in g.out_edges(v).iter().filter(|f| **f != a) {
                    accumulate(
                        terms,
                        Monomial {
                            mu: mu_p.extended(g, f),
                            nu: nu_p.extended(g, f),
                        },
                        minus.clone(),
                    );
                }
                mu = mu_p;
                nu = nu_p;
            }
            _ => {
                accumulate(terms, Monomial { mu, nu }, c);
                return;
            }
        }
    }
}

/// `(αβ*)(γδ*)` before normalization, or `None` when it vanishes.
fn monomial_product(a: &Monomial, b: &Monomial) -> Option<(Path, Path)> {
    if let Some(rest) = a.nu.strip_prefix(&b.mu) {
        // β ≤ γ: γ = βγ′, product αγ′δ*
        Some((a.mu.concat(&rest).ok()?, b.nu.clone()))
    } else {
        // γ ≤ β: β = γβ′, product α(δβ′)*
        let rest = b.mu.strip_prefix(&a.nu)?;
        Some((a.mu.clone(), b.nu.concat(&rest).ok()?))
    }
}

impl AlgebraElement {
    pub fn zero(graph: Arc<Graph>, ring: StarRing) -> Self {
        Self {
            graph,
            ring,
            terms: BTreeMap::new(),
        }
    }

    /// The normal form of `μν*`.
    pub fn monomial(
        graph: Arc<Graph>,
        ring: StarRing,
        mu: Path,
        nu: Path,
    ) -> Result<Self, AlgebraError> {
        Self::scaled_monomial(graph, RingElement::one(ring), mu, nu)
    }

    pub fn scaled_monomial(
        graph: Arc<Graph>,
        coeff: RingElement,
        mu: Path,
        nu: Path,
    ) -> Result<Self, AlgebraError> {
        if mu.range() != nu.range() {
            return Err(AlgebraError::RangeMismatch);
        }
        let ring = coeff.ring();
        let mut terms = BTreeMap::new();
        accumulate_normalized(&graph, &mut terms, mu, nu, coeff);
        Ok(Self { graph, ring, terms })
    }

    pub fn vertex(graph: Arc<Graph>, ring: StarRing, v: VertexId) -> Self {
        let p = Path::vertex(v);
        Self::monomial(graph, ring, p.clone(), p).expect("vertex legs share a range")
    }

    /// The path `μ` as the element `μ·r(μ)*`.
    pub fn path(graph: Arc<Graph>, ring: StarRing, mu: &Path) -> Self {
        let r = Path::vertex(mu.range());
        Self::monomial(graph, ring, mu.clone(), r).expect("range leg matches")
    }

    /// `μ*`
    pub fn path_star(graph: Arc<Graph>, ring: StarRing, mu: &Path) -> Self {
        let r = Path::vertex(mu.range());
        Self::monomial(graph, ring, r, mu.clone()).expect("range leg matches")
    }

    /// Builds an element from raw `(λ, μ, ν)` triples, normalizing each.
    pub fn from_terms(
        graph: Arc<Graph>,
        ring: StarRing,
        raw: impl IntoIterator<Item = (RingElement, Path, Path)>,
    ) -> Result<Self, AlgebraError> {
        let mut terms = BTreeMap::new();
        for (c, mu, nu) in raw {
            if c.ring() != ring {
                return Err(AlgebraError::RingMismatch(ring.tag(), c.ring().tag()));
            }
            if mu.range() != nu.range() {
                return Err(AlgebraError::RangeMismatch);
            }
            accumulate_normalized(&graph, &mut terms, mu, nu, c);
        }
        Ok(Self { graph, ring, terms })
    }

    /// Recombines a uniformized presentation.
    pub fn from_uniform(
        graph: Arc<Graph>,
        ring: StarRing,
        terms: &[UniformTerm],
    ) -> Result<Self, AlgebraError> {
        Self::from_terms(
            graph,
            ring,
            terms
                .iter()
                .map(|t| (t.coeff.clone(), t.alpha.clone(), t.beta.clone())),
        )
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn ring(&self) -> StarRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RingElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> RingElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(self.ring))
    }

    fn same_context(&self, other: &Self) -> bool {
        self.ring == other.ring
            && (Arc::ptr_eq(&self.graph, &other.graph) || *self.graph == *other.graph)
    }

    fn check_context(&self, other: &Self) -> Result<(), AlgebraError> {
        if !(Arc::ptr_eq(&self.graph, &other.graph) || *self.graph == *other.graph) {
            return Err(AlgebraError::GraphMismatch);
        }
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch(
                self.ring.tag(),
                other.ring.tag(),
            ));
        }
        Ok(())
    }

    fn with_terms(&self, terms: BTreeMap<Monomial, RingElement>) -> Self {
        Self {
            graph: self.graph.clone(),
            ring: self.ring,
            terms,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_context(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(self.with_terms(terms))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.with_terms(self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn scale(&self, s: &RingElement) -> Result<Self, AlgebraError> {
        if s.ring() != self.ring {
            return Err(AlgebraError::RingMismatch(self.ring.tag(), s.ring().tag()));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            accumulate(&mut terms, m.clone(), c * s);
        }
        Ok(self.with_terms(terms))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.mul_with(other, Exec::Sequential)
    }

    /// Product with an explicit execution strategy. The parallel strategy
    /// splits the left factor's terms across threads and merges the partial
    /// sums; the result is identical to the sequential one.
    pub fn mul_with(&self, other: &Self, exec: Exec) -> Result<Self, AlgebraError> {
        self.check_context(other)?;
        let g = &*self.graph;
        let left: Vec<(&Monomial, &RingElement)> = self.terms.iter().collect();
        let partial = |(ma, ca): &(&Monomial, &RingElement)| {
            let mut acc = BTreeMap::new();
            for (mb, cb) in &other.terms {
                if let Some((mu, nu)) = monomial_product(ma, mb) {
                    accumulate_normalized(g, &mut acc, mu, nu, *ca * cb);
                }
            }
            acc
        };
        let exec = if left.len() * other.terms.len() < 64 {
            Exec::Sequential
        } else {
            exec
        };
        let parts = exec.map(&left, partial);
        let mut terms = BTreeMap::new();
        for part in parts {
            for (m, c) in part {
                accumulate(&mut terms, m, c);
            }
        }
        Ok(self.with_terms(terms))
    }

    /// The involution `λ·μν* ↦ conj(λ)·νμ*`.
    pub fn star(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            accumulate_normalized(
                &self.graph,
                &mut terms,
                m.nu.clone(),
                m.mu.clone(),
                c.conj(),
            );
        }
        self.with_terms(terms)
    }

    /// Sum of the terms of degree `n = |μ| − |ν|`.
    pub fn graded_component(&self, n: i64) -> Self {
        self.with_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }

    /// Degrees that occur, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.terms.keys().map(Monomial::degree).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn equals(&self, other: &Self) -> Result<bool, AlgebraError> {
        self.check_context(other)?;
        Ok(self.terms == other.terms)
    }

    /// Rewrites the element as `Σ λ_{(α,β)} αβ*` where each `β` has length
    /// exactly `k` or is shorter and ends at a singular vertex.
    ///
    /// A term `αβ*` with `|β| < k` and `r(β)` regular is replaced by
    /// `Σ_{e ∈ r(β)E¹} αe(βe)*` until no such term remains. Terms are
    /// returned sorted by `(β, α)` with duplicates merged and zeros dropped.
    pub fn uniformize(&self, k: usize) -> Result<Vec<UniformTerm>, AlgebraError> {
        let needed = self.terms.keys().map(|m| m.nu.len()).max().unwrap_or(0);
        if k < needed {
            return Err(AlgebraError::LevelTooSmall { k, needed });
        }
        let g = &*self.graph;
        let mut table: BTreeMap<(Path, Path), RingElement> = BTreeMap::new();
        let mut stack: Vec<(Path, Path, RingElement)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.mu.clone(), m.nu.clone(), c.clone()))
            .collect();
        while let Some((alpha, beta, c)) = stack.pop() {
            let r = beta.range();
            if beta.len() < k && g.is_regular(r) {
                for &e in g.out_edges(r) {
                    stack.push((alpha.extended(g, e), beta.extended(g, e), c.clone()));
                }
                continue;
            }
            let key = (beta, alpha);
            match table.get_mut(&key) {
                Some(existing) => *existing += &c,
                None => {
                    table.insert(key, c);
                }
            }
        }
        Ok(table
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((beta, alpha), coeff)| UniformTerm { coeff, alpha, beta })
            .collect())
    }

    pub fn display(&self) -> ElementDisplay<'_> {
        ElementDisplay { a: self }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display().fmt(f)
    }
}

pub struct ElementDisplay<'a> {
    a: &'a AlgebraElement,
}

/// Canonical serialization: terms in monomial order as `λ·μ ν^*`, joined by
/// ` + ` and ` − `. Non-real coefficients are parenthesized.
impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a.terms.is_empty() {
            return f.write_str("0");
        }
        let g = &*self.a.graph;
        for (i, (m, c)) in self.a.terms.iter().enumerate() {
            let negative = c.is_negative_real();
            match (i, negative) {
                (0, false) => {}
                (0, true) => f.write_str("\u{2212}")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" \u{2212} ")?,
            }
            if negative {
                write!(f, "{}", -c)?;
            } else if c.is_real() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})")?;
            }
            write!(f, "\u{b7}{}", m.display(g))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Fx {
        g: Arc<Graph>,
        ring: StarRing,
    }

    impl Fx {
        fn e2() -> Self {
            Self::new(Graph::build(&["v"], &[("e1", "v", "v"), ("e2", "v", "v")], &[]).unwrap())
        }

        fn new(g: Graph) -> Self {
            Self {
                g: Arc::new(g),
                ring: StarRing::Integers,
            }
        }

        fn p(&self, names: &str) -> Path {
            match self.g.vertex(names) {
                Some(v) => Path::vertex(v),
                None => {
                    let ns: Vec<&str> = names.split_whitespace().collect();
                    self.g.path_from_names(&ns).unwrap()
                }
            }
        }

        fn m(&self, mu: &str, nu: &str) -> AlgebraElement {
            AlgebraElement::monomial(self.g.clone(), self.ring, self.p(mu), self.p(nu)).unwrap()
        }

        fn c(&self, n: i64) -> RingElement {
            RingElement::from_integer(self.ring, n)
        }
    }

    #[test]
    fn make_monomial_examples() {
        let fx = Fx::e2();
        assert_eq!(
            fx.m("e1", "e1").to_string(),
            "1\u{b7}v \u{2212} 1\u{b7}e2 e2^*"
        );
        assert_eq!(fx.m("e2", "e2").to_string(), "1\u{b7}e2 e2^*");
        assert_eq!(fx.m("v", "v").to_string(), "1\u{b7}v");
        assert_eq!(
            AlgebraElement::monomial(fx.g.clone(), fx.ring, fx.p("e1"), fx.p("v"))
                .unwrap()
                .len(),
            1
        );
        let g = Arc::new(Graph::build(&["v", "w"], &[("e", "v", "w")], &[]).unwrap());
        let v = Path::vertex(g.vertex("v").unwrap());
        let e = g.path_from_names(&["e"]).unwrap();
        assert_eq!(
            AlgebraElement::monomial(g, StarRing::Integers, e, v),
            Err(AlgebraError::RangeMismatch)
        );
    }

    #[test]
    fn nested_special_edges_normalize_fully() {
        let fx = Fx::e2();
        let a = fx.m("e1 e1", "e1 e1");
        // e1e1(e1e1)* = v − e2e2* − e1e2(e1e2)*
        assert_eq!(
            a.to_string(),
            "1\u{b7}v \u{2212} 1\u{b7}e2 e2^* \u{2212} 1\u{b7}e1 e2 e2^* e1^*"
        );
        assert!(a.terms().all(|(m, _)| m.is_normal(&fx.g)));
    }

    #[test]
    fn add_examples() {
        let fx = Fx::e2();
        let v = fx.m("v", "v");
        assert!(v.add(&v.neg()).unwrap().is_zero());
        assert_eq!(fx.m("e1", "e1").add(&fx.m("e2", "e2")).unwrap(), v);
        let e1 = fx.m("e1", "v");
        assert_eq!(e1.add(&e1).unwrap(), e1.scale(&fx.c(2)).unwrap());
    }

    #[test]
    fn multiply_examples() {
        let fx = Fx::e2();
        let e1s = fx.m("v", "e1");
        let e1 = fx.m("e1", "v");
        let e2 = fx.m("e2", "v");
        assert!(e1s.mul(&e2).unwrap().is_zero());
        assert_eq!(e1s.mul(&e1).unwrap(), fx.m("v", "v"));
        let prod = fx.m("e1", "e2").mul(&fx.m("e2", "e1")).unwrap();
        assert_eq!(prod, fx.m("v", "v").sub(&fx.m("e2", "e2")).unwrap());
    }

    #[test]
    fn star_examples() {
        let fx = Fx::e2();
        assert_eq!(fx.m("e1", "e2").star(), fx.m("e2", "e1"));
        let zi = StarRing::GaussianIntegers;
        let one_plus_i = RingElement::gaussian(zi, 1, 1).unwrap();
        let a = AlgebraElement::scaled_monomial(fx.g.clone(), one_plus_i, fx.p("e1"), fx.p("v"))
            .unwrap();
        let expected = AlgebraElement::scaled_monomial(
            fx.g.clone(),
            RingElement::gaussian(zi, 1, -1).unwrap(),
            fx.p("v"),
            fx.p("e1"),
        )
        .unwrap();
        assert_eq!(a.star(), expected);
        let d = fx.m("v", "v").sub(&fx.m("e2", "e2")).unwrap();
        assert_eq!(d.star(), d);
    }

    #[test]
    fn graded_component_examples() {
        let fx = Fx::e2();
        let a = fx
            .m("v", "v")
            .add(&fx.m("e1", "v"))
            .unwrap()
            .sub(&fx.m("v", "e2"))
            .unwrap();
        assert_eq!(a.graded_component(0), fx.m("v", "v"));
        assert_eq!(a.graded_component(1), fx.m("e1", "v"));
        assert!(a.graded_component(2).is_zero());
        assert_eq!(a.degrees(), vec![-1, 0, 1]);
    }

    #[test]
    fn uniformize_examples() {
        let fx = Fx::e2();
        let u = fx.m("v", "v").uniformize(1).unwrap();
        assert_eq!(
            u,
            vec![
                UniformTerm {
                    coeff: fx.c(1),
                    alpha: fx.p("e1"),
                    beta: fx.p("e1")
                },
                UniformTerm {
                    coeff: fx.c(1),
                    alpha: fx.p("e2"),
                    beta: fx.p("e2")
                },
            ]
        );
        let u = fx.m("e1", "e2").uniformize(1).unwrap();
        assert_eq!(
            u,
            vec![UniformTerm {
                coeff: fx.c(1),
                alpha: fx.p("e1"),
                beta: fx.p("e2")
            }]
        );
        assert_eq!(
            fx.m("v", "e1 e2").uniformize(1),
            Err(AlgebraError::LevelTooSmall { k: 1, needed: 2 })
        );

        let fx = Fx::new(Graph::build(&["v", "w"], &[("e", "v", "w")], &[]).unwrap());
        assert_eq!(
            fx.m("v", "v").uniformize(1).unwrap(),
            vec![UniformTerm {
                coeff: fx.c(1),
                alpha: fx.p("e"),
                beta: fx.p("e")
            }]
        );
        assert_eq!(
            fx.m("w", "w").uniformize(1).unwrap(),
            vec![UniformTerm {
                coeff: fx.c(1),
                alpha: fx.p("w"),
                beta: fx.p("w")
            }]
        );
    }

    #[test]
    fn uniformize_recombines() {
        let fx = Fx::e2();
        let a = fx
            .m("e1 e2", "e1")
            .add(&fx.m("v", "v"))
            .unwrap()
            .sub(&fx.m("e2", "e2 e1"))
            .unwrap();
        for k in 2..5 {
            let u = a.uniformize(k).unwrap();
            assert!(u.iter().all(|t| t.beta.len() == k));
            assert_eq!(
                AlgebraElement::from_uniform(fx.g.clone(), fx.ring, &u).unwrap(),
                a
            );
        }
    }

    #[test]
    fn equals_examples() {
        let fx = Fx::e2();
        let v = fx.m("v", "v");
        let rhs = fx.m("e1", "e1").add(&fx.m("e2", "e2")).unwrap();
        assert!(v
            .sub(&rhs)
            .unwrap()
            .equals(&AlgebraElement::zero(fx.g.clone(), fx.ring))
            .unwrap());
        assert!(fx
            .m("e1", "e1")
            .equals(&v.sub(&fx.m("e2", "e2")).unwrap())
            .unwrap());
        assert!(!fx.m("e1", "v").equals(&fx.m("e2", "v")).unwrap());

        let other = AlgebraElement::zero(fx.g.clone(), StarRing::Rationals);
        assert_eq!(v.equals(&other), Err(AlgebraError::RingMismatch("Z", "Q")));
        let fy = Fx::new(Graph::build(&["v"], &[("e", "v", "v")], &[]).unwrap());
        assert_eq!(v.add(&fy.m("v", "v")), Err(AlgebraError::GraphMismatch));
    }

    #[test]
    fn no_rewriting_at_infinite_emitters() {
        let fx =
            Fx::new(Graph::build(&["v"], &[("e1", "v", "v"), ("e2", "v", "v")], &["v"]).unwrap());
        assert_eq!(fx.m("e1", "e1").to_string(), "1\u{b7}e1 e1^*");
        let v = fx.m("v", "v");
        let sum = fx.m("e1", "e1").add(&fx.m("e2", "e2")).unwrap();
        assert!(!v.equals(&sum).unwrap());
    }

    #[test]
    fn parallel_product_matches_sequential() {
        let fx = Fx::e2();
        let paths = fx.g.paths_up_to(2);
        let mut a = AlgebraElement::zero(fx.g.clone(), fx.ring);
        for (i, mu) in paths.iter().enumerate() {
            for nu in paths.iter().skip(i % 3) {
                let t = AlgebraElement::monomial(fx.g.clone(), fx.ring, mu.clone(), nu.clone())
                    .unwrap();
                a = a.add(&t).unwrap();
            }
        }
        let b = a.star();
        assert_eq!(
            a.mul_with(&b, Exec::Parallel).unwrap(),
            a.mul_with(&b, Exec::Sequential).unwrap()
        );
    }
}
