//! The affine graph `H̃3(F)` on pairs `v⊗h` with `h(v) != 0`, the projective
//! graph `H3(F)` on non-incident point-hyperplane pairs, and the reduct map
//! between them. Both share one representation: a vertex is a (vector,
//! covector) pair drawn from a fixed list of "points" and "hyperplanes";
//! `(v, h) ⊥ (w, g)` iff `h(w) = 0` and `g(v) = 0`.
//!
//! The affine flavour uses every nonzero vector and covector, the projective
//! flavour only the normalized ones (first nonzero coordinate one). Vertex
//! ids follow the lexicographic order of (point, hyperplane) coordinates.

use std::collections::{HashMap, VecDeque};
use std::hash::{DefaultHasher, Hash, Hasher};

use rand::Rng;

use crate::field::Field;
use crate::linalg::{annihilator, kernel, random_combination, Covector, Matrix4, Vector};
use crate::{Error, Result};

const NONE: u32 = u32::MAX;

/// Default limit on enumerated vertices.
pub const DEFAULT_GRAPH_CAP: usize = 20_000_000;

/// Fields up to this order get a cached adjacency list on demand.
pub const MAX_CACHED_FIELD_ORDER: usize = 4;

/// A vertex `v⊗h` of the affine graph; `h(v) != 0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AffineVertex<F> {
    pub v: Vector<F>,
    pub h: Covector<F>,
}

impl<F: Field> AffineVertex<F> {
    pub fn new(v: Vector<F>, h: Covector<F>) -> Result<Self> {
        if h.eval(&v).is_zero() {
            return Err(Error::Domain(format!(
                "{:?} is incident with {:?}",
                v.bits(),
                h.bits()
            )));
        }
        Ok(AffineVertex { v, h })
    }

    /// `h(v)`, nonzero.
    #[inline]
    pub fn pairing(&self) -> F {
        self.h.eval(&self.v)
    }

    #[inline]
    pub fn is_adjacent(&self, other: &Self) -> bool {
        self.h.eval(&other.v).is_zero() && other.h.eval(&self.v).is_zero()
    }

    /// The image `(v·M, h·dual)`; `dual` must be [`Matrix4::dual`] of `m`.
    pub fn act(&self, m: &Matrix4<F>, dual: &Matrix4<F>) -> Self {
        AffineVertex {
            v: self.v.act(m),
            h: self.h.act(dual),
        }
    }

    /// Independent rescaling of the vector and the covector.
    pub fn rescaled(&self, lambda: F, mu: F) -> Self {
        AffineVertex {
            v: self.v.scale(lambda),
            h: self.h.scale(mu),
        }
    }
}

/// Non-incident point-hyperplane pair, both normalized.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ProjVertex<F>(AffineVertex<F>);

impl<F: Field> ProjVertex<F> {
    pub fn new(v: Vector<F>, h: Covector<F>) -> Result<Self> {
        AffineVertex::new(v, h).map(|a| reduct_class(&a))
    }

    /// The normalized representative, itself a vertex of the affine graph.
    pub fn affine(&self) -> AffineVertex<F> {
        self.0
    }

    pub fn point(&self) -> Vector<F> {
        self.0.v
    }

    pub fn hyperplane(&self) -> Covector<F> {
        self.0.h
    }

    pub fn is_adjacent(&self, other: &Self) -> bool {
        self.0.is_adjacent(&other.0)
    }
}

/// The reduct class: normalize the vector and the covector independently.
pub fn reduct_class<F: Field>(a: &AffineVertex<F>) -> ProjVertex<F> {
    ProjVertex(AffineVertex {
        v: a.v.normalized(),
        h: a.h.normalized(),
    })
}

pub fn adjacent<F: Field>(a: &AffineVertex<F>, b: &AffineVertex<F>) -> bool {
    a.is_adjacent(b)
}

/// Finite graph with vertices numbered `0..order()`.
pub trait IndexedGraph: Sync {
    type Vertex: Copy;

    fn order(&self) -> usize;

    fn vertex(&self, id: usize) -> Self::Vertex;

    /// Calls `f` on every neighbor of `id`, in increasing id order.
    fn for_each_neighbor<C: FnMut(usize)>(&self, id: usize, f: C);

    fn are_adjacent(&self, a: usize, b: usize) -> bool;

    fn neighbors(&self, id: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.for_each_neighbor(id, |n| out.push(n));
        out
    }

    fn degree(&self, id: usize) -> usize {
        let mut d = 0;
        self.for_each_neighbor(id, |_| d += 1);
        d
    }

    fn edge_count(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).sum::<usize>() / 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Affine,
    Projective,
}

/// `H̃3(F)` or `H3(F)`.
#[derive(Clone, Debug)]
pub struct IncidenceGraph<F> {
    flavor: Flavor,
    points: Vec<Vector<F>>,
    hyperplanes: Vec<Covector<F>>,
    point_by_code: Vec<u32>,
    hyperplane_by_code: Vec<u32>,
    points_on: Vec<Vec<u32>>,
    hyperplanes_through: Vec<Vec<u32>>,
    vertex_of: Vec<u32>,
    vertices: Vec<(u32, u32)>,
    cache: Option<Csr>,
}

#[derive(Clone, Debug)]
struct Csr {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

/// Number of vertices of `H3(F_q)`: `(q^4-1)/(q-1)` points times `q^3`
/// non-incident hyperplanes each.
pub fn projective_vertex_count(q: u64) -> u64 {
    (q.pow(4) - 1) / (q - 1) * q.pow(3)
}

/// Number of (vector, covector) pairs of `H̃3(F_q)`.
pub fn affine_vertex_count(q: u64) -> u64 {
    projective_vertex_count(q) * (q - 1) * (q - 1)
}

impl<F: Field> IncidenceGraph<F> {
    fn build(flavor: Flavor, cap: usize) -> Result<Self> {
        let q = F::ORDER as u64;
        let needed = match flavor {
            Flavor::Affine => affine_vertex_count(q),
            Flavor::Projective => projective_vertex_count(q),
        };
        if needed > cap as u64 {
            return Err(Error::CapExceeded {
                what: format!("{flavor:?} graph over {}", F::SPEC),
                needed,
                cap: cap as u64,
            });
        }
        let codes = F::ORDER.pow(4);
        let keep = |v: &Vector<F>| !v.is_zero() && (flavor == Flavor::Affine || v.is_normalized());
        // codes are already in lexicographic order
        let points: Vec<Vector<F>> = (0..codes).map(Vector::from_code).filter(keep).collect();
        let hyperplanes: Vec<Covector<F>> = points.iter().map(|p| Covector(p.0)).collect();
        let mut point_by_code = vec![NONE; codes];
        for (i, p) in points.iter().enumerate() {
            point_by_code[p.code()] = i as u32;
        }
        let hyperplane_by_code = point_by_code.clone();

        let (np, nh) = (points.len(), hyperplanes.len());
        let mut points_on = vec![Vec::new(); nh];
        let mut hyperplanes_through = vec![Vec::new(); np];
        let mut vertex_of = vec![NONE; np * nh];
        let mut vertices = Vec::with_capacity(needed as usize);
        for (pi, p) in points.iter().enumerate() {
            for (hi, h) in hyperplanes.iter().enumerate() {
                if h.eval(p).is_zero() {
                    points_on[hi].push(pi as u32);
                    hyperplanes_through[pi].push(hi as u32);
                } else {
                    vertex_of[pi * nh + hi] = vertices.len() as u32;
                    vertices.push((pi as u32, hi as u32));
                }
            }
        }
        debug_assert_eq!(vertices.len() as u64, needed);
        Ok(IncidenceGraph {
            flavor,
            points,
            hyperplanes,
            point_by_code,
            hyperplane_by_code,
            points_on,
            hyperplanes_through,
            vertex_of,
            vertices,
            cache: None,
        })
    }

    /// `H3(F)` with vertices in lexicographic order.
    pub fn projective(cap: usize) -> Result<Self> {
        Self::build(Flavor::Projective, cap)
    }

    /// `H̃3(F)` as (vector, covector) pairs.
    pub fn affine(cap: usize) -> Result<Self> {
        Self::build(Flavor::Affine, cap)
    }

    /// Stores the adjacency lists; refused above [`MAX_CACHED_FIELD_ORDER`]
    /// (and for the affine graph over fields above GF(2)).
    pub fn with_adjacency_cache(mut self) -> Result<Self> {
        let limit_ok = match self.flavor {
            Flavor::Projective => F::ORDER <= MAX_CACHED_FIELD_ORDER,
            Flavor::Affine => F::ORDER <= 2,
        };
        if !limit_ok {
            return Err(Error::Usage(format!(
                "adjacency cache not available for the {:?} graph over {}",
                self.flavor,
                F::SPEC
            )));
        }
        let mut offsets = Vec::with_capacity(self.order() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for id in 0..self.order() {
            self.enumerate_neighbors(id, |n| targets.push(n as u32));
            offsets.push(targets.len() as u32);
        }
        self.cache = Some(Csr { offsets, targets });
        Ok(self)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn points(&self) -> &[Vector<F>] {
        &self.points
    }

    pub fn hyperplanes(&self) -> &[Covector<F>] {
        &self.hyperplanes
    }

    pub fn id_of(&self, a: &AffineVertex<F>) -> Option<usize> {
        let (v, h) = match self.flavor {
            Flavor::Affine => (a.v, a.h),
            Flavor::Projective => (a.v.normalized(), a.h.normalized()),
        };
        let pi = *self.point_by_code.get(v.code())?;
        let hi = *self.hyperplane_by_code.get(h.code())?;
        if pi == NONE || hi == NONE {
            return None;
        }
        let id = self.vertex_of[pi as usize * self.hyperplanes.len() + hi as usize];
        (id != NONE).then_some(id as usize)
    }

    /// Indices of the hyperplanes containing point `p`.
    pub fn hyperplanes_through(&self, p: usize) -> &[u32] {
        &self.hyperplanes_through[p]
    }

    /// The vertex with point index `p` and hyperplane index `h`, if they
    /// are not incident.
    pub fn vertex_at(&self, p: usize, h: usize) -> Option<usize> {
        let id = self.vertex_of[p * self.hyperplanes.len() + h];
        (id != NONE).then_some(id as usize)
    }

    /// The (point, hyperplane) indices of a vertex.
    pub fn parts(&self, id: usize) -> (usize, usize) {
        let (p, h) = self.vertices[id];
        (p as usize, h as usize)
    }

    /// Image of vertex `id` under `g`; `dual` must be `g.dual()`.
    pub fn act(&self, id: usize, g: &Matrix4<F>, dual: &Matrix4<F>) -> usize {
        self.id_of(&self.vertex(id).act(g, dual))
            .expect("invertible maps preserve vertices")
    }

    fn enumerate_neighbors(&self, id: usize, mut f: impl FnMut(usize)) {
        let (p, h) = self.vertices[id];
        let nh = self.hyperplanes.len();
        let through = &self.hyperplanes_through[p as usize];
        for &y in &self.points_on[h as usize] {
            let row = &self.vertex_of[y as usize * nh..(y as usize + 1) * nh];
            for &yh in through {
                let n = row[yh as usize];
                if n != NONE {
                    f(n as usize);
                }
            }
        }
    }
}

impl<F: Field> IndexedGraph for IncidenceGraph<F> {
    type Vertex = AffineVertex<F>;

    fn order(&self) -> usize {
        self.vertices.len()
    }

    fn vertex(&self, id: usize) -> AffineVertex<F> {
        let (p, h) = self.vertices[id];
        AffineVertex {
            v: self.points[p as usize],
            h: self.hyperplanes[h as usize],
        }
    }

    fn for_each_neighbor<C: FnMut(usize)>(&self, id: usize, mut f: C) {
        match &self.cache {
            Some(csr) => {
                let (s, e) = (csr.offsets[id] as usize, csr.offsets[id + 1] as usize);
                csr.targets[s..e].iter().for_each(|&n| f(n as usize));
            }
            None => self.enumerate_neighbors(id, f),
        }
    }

    fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.vertex(a).is_adjacent(&self.vertex(b))
    }

    fn degree(&self, id: usize) -> usize {
        match &self.cache {
            Some(csr) => (csr.offsets[id + 1] - csr.offsets[id]) as usize,
            None => {
                let mut d = 0;
                self.enumerate_neighbors(id, |_| d += 1);
                d
            }
        }
    }
}

/// A graph given by explicit adjacency lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(order: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); order],
        }
    }

    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(order);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "loops are not allowed");
        if !self.adj[a].contains(&b) {
            self.adj[a].push(b);
            self.adj[a].sort_unstable();
            self.adj[b].push(a);
            self.adj[b].sort_unstable();
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }
}

impl IndexedGraph for SimpleGraph {
    type Vertex = usize;

    fn order(&self) -> usize {
        self.adj.len()
    }

    fn vertex(&self, id: usize) -> usize {
        id
    }

    fn for_each_neighbor<C: FnMut(usize)>(&self, id: usize, f: C) {
        self.adj[id].iter().copied().for_each(f)
    }

    fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }
}

pub const UNREACHED: u32 = u32::MAX;

/// A breadth-first search tree. Ties are broken towards the smaller vertex
/// id because neighbors are scanned in increasing order.
#[derive(Clone, Debug)]
pub struct BfsTree {
    pub root: usize,
    pub dist: Vec<u32>,
    pub parent: Vec<u32>,
    /// Reached vertices in visiting order.
    pub order: Vec<usize>,
}

impl BfsTree {
    /// The tree path from `v` up to the root, `v` first.
    pub fn path_to_root(&self, mut v: usize) -> Option<Vec<usize>> {
        if self.dist[v] == UNREACHED {
            return None;
        }
        let mut path = vec![v];
        while v != self.root {
            v = self.parent[v] as usize;
            path.push(v);
        }
        Some(path)
    }
}

pub fn bfs_tree<G: IndexedGraph>(graph: &G, root: usize) -> BfsTree {
    let n = graph.order();
    let mut dist = vec![UNREACHED; n];
    let mut parent = vec![UNREACHED; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    dist[root] = 0;
    parent[root] = root as u32;
    queue.push_back(root);
    let mut found = 1;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        if found == n {
            // nothing left to discover
            order.extend(queue.drain(..));
            break;
        }
        let du = dist[u];
        graph.for_each_neighbor(u, |w| {
            if dist[w] == UNREACHED {
                dist[w] = du + 1;
                parent[w] = u as u32;
                queue.push_back(w);
                found += 1;
            }
        });
    }
    BfsTree {
        root,
        dist,
        parent,
        order,
    }
}

/// Distances from `start`; [`UNREACHED`] marks other components.
pub fn bfs<G: IndexedGraph>(graph: &G, start: usize) -> Vec<u32> {
    bfs_tree(graph, start).dist
}

/// Largest distance from `start`, or `None` if some vertex is unreachable.
pub fn eccentricity<G: IndexedGraph>(graph: &G, start: usize) -> Option<u32> {
    let n = graph.order();
    let mut dist = vec![UNREACHED; n];
    let mut queue = VecDeque::new();
    dist[start] = 0;
    queue.push_back(start);
    let (mut reached, mut ecc) = (1, 0);
    while let Some(u) = queue.pop_front() {
        if reached == n {
            // every distance is final
            break;
        }
        let du = dist[u];
        graph.for_each_neighbor(u, |w| {
            if dist[w] == UNREACHED {
                dist[w] = du + 1;
                ecc = du + 1;
                reached += 1;
                queue.push_back(w);
            }
        });
    }
    (reached == n).then_some(ecc)
}

/// Maximum eccentricity over `sources`; `None` if the graph is disconnected.
pub fn diameter_from<G: IndexedGraph>(
    graph: &G,
    sources: impl IntoIterator<Item = usize>,
) -> Option<u32> {
    sources
        .into_iter()
        .try_fold(0, |m, s| eccentricity(graph, s).map(|e| m.max(e)))
}

/// Exact diameter: BFS from every vertex.
pub fn diameter<G: IndexedGraph>(graph: &G) -> Option<u32> {
    diameter_from(graph, 0..graph.order())
}

pub fn is_connected<G: IndexedGraph>(graph: &G) -> bool {
    graph.order() == 0 || bfs(graph, 0).iter().all(|&d| d != UNREACHED)
}

/// The subgraph induced on the neighbors of `v`, together with the ids of
/// those neighbors in `graph`.
pub fn local_graph<G: IndexedGraph>(graph: &G, v: usize) -> (SimpleGraph, Vec<usize>) {
    let ns = graph.neighbors(v);
    let mut local = SimpleGraph::new(ns.len());
    for i in 0..ns.len() {
        for j in i + 1..ns.len() {
            if graph.are_adjacent(ns[i], ns[j]) {
                local.add_edge(i, j);
            }
        }
    }
    (local, ns)
}

/// Outcome of comparing the neighborhood relation `v^⊥ = w^⊥` on `H̃3(F)`
/// with the normalization map onto `H3(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductCheck {
    pub affine_vertices: usize,
    pub classes: usize,
    /// Common size of all classes, if they agree.
    pub class_size: Option<usize>,
    /// Members of one class have identical neighbor sets.
    pub classes_have_equal_neighborhoods: bool,
    /// Distinct classes have distinct neighbor sets.
    pub distinct_classes_differ: bool,
    pub classes_are_cocliques: bool,
    /// Every affine edge maps to an edge of `H3(F)`, and every edge of
    /// `H3(F)` has adjacent representatives.
    pub edges_match: bool,
}

impl ReductCheck {
    pub fn passed(&self) -> bool {
        self.class_size.is_some()
            && self.classes_have_equal_neighborhoods
            && self.distinct_classes_differ
            && self.classes_are_cocliques
            && self.edges_match
    }
}

fn hash_list(xs: &[usize]) -> u64 {
    let mut h = DefaultHasher::new();
    xs.hash(&mut h);
    h.finish()
}

/// Exhaustive check that the reduct of `H̃3(F)` is `H3(F)`: two affine vertices
/// have the same neighbor set exactly when they normalize to the same pair.
pub fn verify_reduct_is_neighborhood_equality<F: Field>(cap: usize) -> Result<ReductCheck> {
    let affine = IncidenceGraph::<F>::affine(cap)?;
    let proj = IncidenceGraph::<F>::projective(cap)?;
    let units: Vec<F> = F::nonzero_elements().collect();

    let mut class_size = None;
    let mut uniform = true;
    let mut equal_within = true;
    let mut cocliques = true;
    let mut by_hash: HashMap<u64, usize> = HashMap::new();
    let mut distinct = true;
    for pid in 0..proj.order() {
        let rep = proj.vertex(pid);
        let members: Vec<usize> = units
            .iter()
            .flat_map(|&l| units.iter().map(move |&m| rep.rescaled(l, m)))
            .map(|a| affine.id_of(&a).expect("rescaled vertex"))
            .collect();
        // members are distinct pairs
        let mut sorted = members.clone();
        sorted.sort_unstable();
        sorted.dedup();
        match class_size {
            None => class_size = Some(sorted.len()),
            Some(s) if s != sorted.len() => uniform = false,
            _ => {}
        }
        let first = affine.neighbors(members[0]);
        for &m in &members[1..] {
            if affine.neighbors(m) != first {
                equal_within = false;
            }
        }
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if affine.are_adjacent(a, b) {
                    cocliques = false;
                }
            }
        }
        let h = hash_list(&first);
        if let Some(&other) = by_hash.get(&h) {
            // rare: confirm with the actual lists
            let other_rep = affine.id_of(&proj.vertex(other)).expect("representative");
            if affine.neighbors(other_rep) == first {
                distinct = false;
            }
        } else {
            by_hash.insert(h, pid);
        }
    }

    let mut edges_match = true;
    let mut affine_edges = 0usize;
    for a in 0..affine.order() {
        let ca = proj.id_of(&affine.vertex(a)).expect("class");
        affine.for_each_neighbor(a, |b| {
            affine_edges += 1;
            let cb = proj.id_of(&affine.vertex(b)).expect("class");
            if !proj.are_adjacent(ca, cb) {
                edges_match = false;
            }
        });
    }
    for p in 0..proj.order() {
        let rp = proj.vertex(p);
        proj.for_each_neighbor(p, |n| {
            if !rp.is_adjacent(&proj.vertex(n)) || affine.id_of(&proj.vertex(n)).is_none() {
                edges_match = false;
            }
        });
    }
    let q1 = F::ORDER - 1;
    if affine_edges != proj.edge_count() * 2 * q1.pow(4) {
        edges_match = false;
    }

    Ok(ReductCheck {
        affine_vertices: affine.order(),
        classes: proj.order(),
        class_size: if uniform { class_size } else { None },
        classes_have_equal_neighborhoods: equal_within,
        distinct_classes_differ: distinct,
        classes_are_cocliques: cocliques,
        edges_match,
    })
}

/// Uniformly random vertex of `H̃3(F)` (as a pair).
pub fn random_affine_vertex<F: Field, R: Rng + ?Sized>(rng: &mut R) -> AffineVertex<F> {
    loop {
        let v = Vector::<F>::random_nonzero(rng);
        let h = Covector::random_nonzero(rng);
        if !h.eval(&v).is_zero() {
            return AffineVertex { v, h };
        }
    }
}

/// Random common neighbor of every vertex in `of`, or `None` if the attempts
/// run out (or none exists).
pub fn random_common_neighbor<F: Field, R: Rng + ?Sized>(
    of: &[AffineVertex<F>],
    rng: &mut R,
) -> Option<AffineVertex<F>> {
    let hs: Vec<Covector<F>> = of.iter().map(|a| a.h).collect();
    let vs: Vec<Vector<F>> = of.iter().map(|a| a.v).collect();
    let ws = kernel(&hs);
    let gs = annihilator(&vs);
    if ws.is_empty() || gs.is_empty() {
        return None;
    }
    for _ in 0..64 {
        let w: Vector<F> = random_combination(&ws, rng);
        let g: Covector<F> = random_combination(&gs, rng);
        if !g.eval(&w).is_zero() {
            return Some(AffineVertex { v: w, h: g });
        }
    }
    None
}

pub fn random_neighbor<F: Field, R: Rng + ?Sized>(
    a: &AffineVertex<F>,
    rng: &mut R,
) -> AffineVertex<F> {
    random_common_neighbor(std::slice::from_ref(a), rng).expect("every vertex has neighbors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gf4, Gf8};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn av<F: Field>(vi: usize, hi: usize) -> AffineVertex<F> {
        AffineVertex::new(Vector::basis(vi), Covector::basis(hi)).unwrap()
    }

    #[test]
    fn adjacency_examples() {
        let a = av::<Gf2>(0, 0);
        assert!(a.is_adjacent(&av(2, 2)));
        let b = AffineVertex::<Gf2>::new(Vector::basis(0), Covector::basis(1));
        assert!(b.is_err(), "e1⊗f2 is not a vertex");
        // e1⊗f1 vs e1⊗(f1+f2): f1(e1) != 0
        let c = AffineVertex::new(
            Vector::basis(0),
            Covector::<Gf2>::basis(0) + Covector::basis(1),
        )
        .unwrap();
        assert!(!a.is_adjacent(&c));
        assert!(!a.is_adjacent(&a));
    }

    // Direct count: every (point, hyperplane) pair of the projective space.
    fn count_brute<F: Field>() -> (usize, usize) {
        let pts: Vec<Vector<F>> = (0..F::ORDER.pow(4))
            .map(Vector::from_code)
            .filter(|v| !v.is_zero() && v.is_normalized())
            .collect();
        let mut verts = Vec::new();
        for p in &pts {
            for h in &pts {
                let h = Covector(h.0);
                if !h.eval(p).is_zero() {
                    verts.push(AffineVertex { v: *p, h });
                }
            }
        }
        let deg = verts.iter().filter(|w| verts[0].is_adjacent(w)).count();
        (verts.len(), deg)
    }

    #[test]
    fn vertex_counts_and_degrees() {
        assert_eq!(count_brute::<Gf2>(), (120, 28));
        let g2 = IncidenceGraph::<Gf2>::projective(DEFAULT_GRAPH_CAP).unwrap();
        assert_eq!(g2.order(), 120);
        assert!((0..120).all(|v| g2.degree(v) == 28));
        assert_eq!(g2.edge_count(), 1680);

        let (n4, d4) = count_brute::<Gf4>();
        assert_eq!((n4, d4), (5440, 336));
        let g4 = IncidenceGraph::<Gf4>::projective(DEFAULT_GRAPH_CAP).unwrap();
        assert_eq!(g4.order(), 85 * 64);
        assert_eq!(g4.degree(17), 336);
        assert_eq!(projective_vertex_count(8), 585 * 512);
    }

    #[test]
    fn cached_adjacency_agrees() {
        let g = IncidenceGraph::<Gf4>::projective(DEFAULT_GRAPH_CAP).unwrap();
        let c = g.clone().with_adjacency_cache().unwrap();
        for v in (0..g.order()).step_by(97) {
            assert_eq!(g.neighbors(v), c.neighbors(v));
            let brute: Vec<usize> = (0..g.order()).filter(|&w| g.are_adjacent(v, w)).collect();
            assert_eq!(g.neighbors(v), brute);
        }
        assert!(IncidenceGraph::<Gf8>::projective(DEFAULT_GRAPH_CAP)
            .unwrap()
            .with_adjacency_cache()
            .is_err());
    }

    #[test]
    fn affine_cap_refuses_large_fields() {
        assert!(matches!(
            IncidenceGraph::<Gf8>::affine(1_000_000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn vertex_ids_are_lexicographic() {
        let g = IncidenceGraph::<Gf4>::projective(DEFAULT_GRAPH_CAP).unwrap();
        for id in 1..g.order() {
            assert!(g.vertex(id - 1) < g.vertex(id));
        }
        for id in (0..g.order()).step_by(13) {
            assert_eq!(g.id_of(&g.vertex(id)), Some(id));
        }
    }

    #[test]
    fn reduct_class_ignores_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = random_affine_vertex::<Gf8, _>(&mut rng);
            let (l, m) = (Gf8::random_nonzero(&mut rng), Gf8::random_nonzero(&mut rng));
            assert_eq!(reduct_class(&a.rescaled(l, m)), reduct_class(&a));
        }
    }

    #[test]
    fn reduct_over_gf2_and_gf4() {
        let r2 = verify_reduct_is_neighborhood_equality::<Gf2>(DEFAULT_GRAPH_CAP).unwrap();
        assert!(r2.passed(), "{r2:?}");
        assert_eq!(r2.class_size, Some(1));
        let r4 = verify_reduct_is_neighborhood_equality::<Gf4>(DEFAULT_GRAPH_CAP).unwrap();
        assert!(r4.passed(), "{r4:?}");
        assert_eq!(r4.affine_vertices, 5440 * 9);
        assert_eq!(r4.class_size, Some(9));
    }

    #[test]
    fn diameter_two_over_gf2() {
        let g = IncidenceGraph::<Gf2>::projective(DEFAULT_GRAPH_CAP).unwrap();
        assert_eq!(diameter(&g), Some(2));
        assert_eq!(bfs(&g, 5)[5], 0);
    }

    #[test]
    fn eccentricity_matches_full_bfs() {
        let path = SimpleGraph::from_edges(6, (0..5).map(|i| (i, i + 1)));
        for s in 0..6 {
            let full = bfs(&path, s).into_iter().max();
            assert_eq!(eccentricity(&path, s), full);
        }
        assert_eq!(diameter(&path), Some(5));
        let split = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]);
        assert_eq!(eccentricity(&split, 0), None);
        assert!(!is_connected(&split));
    }

    #[test]
    fn local_graphs_over_gf2() {
        let g = IncidenceGraph::<Gf2>::projective(DEFAULT_GRAPH_CAP).unwrap();
        let sizes: Vec<usize> = (0..g.order())
            .map(|v| local_graph(&g, v).0.order())
            .collect();
        assert!(sizes.iter().all(|&s| s == 28));
        let edges: Vec<usize> = (0..g.order())
            .map(|v| local_graph(&g, v).0.edges().count())
            .collect();
        assert!(edges.iter().all(|&e| e == edges[0]));
        let isolated = SimpleGraph::new(3);
        assert_eq!(local_graph(&isolated, 1).0.order(), 0);
    }

    #[test]
    fn random_walk_helpers() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..500 {
            let a = random_affine_vertex::<Gf4, _>(&mut rng);
            let b = random_neighbor(&a, &mut rng);
            assert!(a.is_adjacent(&b));
            let c = random_neighbor(&b, &mut rng);
            if let Some(d) = random_common_neighbor(&[a, c], &mut rng) {
                assert!(d.is_adjacent(&a) && d.is_adjacent(&c));
            }
        }
    }
}
