//! Voltage assignments with values in an elementary abelian 2-group,
//! written additively: path voltages, lifts, fundamental cycles, lifted
//! components and the action of `G ⋉ N` on a lift.
//!
//! Since every voltage group here has exponent two, `ℓ(u,v) = ℓ(v,u)` and the
//! lift rule `(u,m) ⊥ (v,n) ⟺ u ⊥ v, ℓ(u,v) = m + n` needs no orientation.
//! For a non-abelian group the subgroup generated by cycle voltages would
//! have to be replaced by its normal closure.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::field::Field;
use crate::graphs::{bfs_tree, AffineVertex, BfsTree, IndexedGraph, SimpleGraph};
use crate::linalg::f2::F2Span;
use crate::linalg::Matrix4;
use crate::multilinear::{InducedAction, NElement, SymTensor};
use crate::{Error, Result};

/// Default limit on the number of vertices of a lifted component.
pub const DEFAULT_LIFT_CAP: usize = 10_000_000;

pub trait VoltageGroup: Copy + Eq + Hash + Debug + Send + Sync {
    fn zero() -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
    /// Coordinates over F2 (at most 128 of them).
    fn to_f2(&self) -> u128;
}

impl VoltageGroup for u128 {
    fn zero() -> Self {
        0
    }
    fn plus(&self, other: &Self) -> Self {
        self ^ other
    }
    fn to_f2(&self) -> u128 {
        *self
    }
}

impl<F: Field> VoltageGroup for SymTensor<F> {
    fn zero() -> Self {
        SymTensor::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        *self + *other
    }
    fn to_f2(&self) -> u128 {
        SymTensor::to_f2(self)
    }
}

impl<F: Field> VoltageGroup for NElement<F> {
    fn zero() -> Self {
        NElement::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        *self + *other
    }
    fn to_f2(&self) -> u128 {
        self.rep().to_f2()
    }
}

/// Voltage groups carrying a linear action of `GL4(F)`.
pub trait ActedGroup<F: Field>: VoltageGroup {
    fn act_by(&self, g: &InducedAction<F>) -> Result<Self>;
}

impl<F: Field> ActedGroup<F> for SymTensor<F> {
    fn act_by(&self, g: &InducedAction<F>) -> Result<Self> {
        Ok(g.act_s2(self))
    }
}

impl<F: Field> ActedGroup<F> for NElement<F> {
    fn act_by(&self, g: &InducedAction<F>) -> Result<Self> {
        g.act_n(self)
    }
}

/// A voltage on the darts of a graph.
pub trait VoltageAssignment: Sync {
    type Vertex: Copy;
    type Group: VoltageGroup;

    fn adjacent(&self, a: &Self::Vertex, b: &Self::Vertex) -> bool;

    /// `ℓ(a, b)`; only meaningful when `a ⊥ b`.
    fn voltage(&self, a: &Self::Vertex, b: &Self::Vertex) -> Self::Group;
}

/// `ℓ(p0,p1) + ℓ(p1,p2) + ...`; zero for paths with fewer than two vertices.
pub fn path_voltage<L: VoltageAssignment>(ell: &L, path: &[L::Vertex]) -> Result<L::Group> {
    let mut total = L::Group::zero();
    for (i, pair) in path.windows(2).enumerate() {
        if !ell.adjacent(&pair[0], &pair[1]) {
            return Err(Error::Usage(format!(
                "path vertices {i} and {} are not adjacent",
                i + 1
            )));
        }
        total = total.plus(&ell.voltage(&pair[0], &pair[1]));
    }
    Ok(total)
}

/// Voltage of the closed walk `walk[0], ..., walk[n-1], walk[0]`.
pub fn closed_walk_voltage<L: VoltageAssignment>(ell: &L, walk: &[L::Vertex]) -> Result<L::Group> {
    let mut closed = walk.to_vec();
    if let Some(&first) = walk.first() {
        closed.push(first);
    }
    path_voltage(ell, &closed)
}

/// Triples `(w, u, v)` with `u ~ v` and `w ⊥ u` for which `ℓ(w,u) != ℓ(w,v)`.
pub fn reductive_violations<L, I>(ell: &L, triples: I) -> Vec<(L::Vertex, L::Vertex, L::Vertex)>
where
    L: VoltageAssignment,
    I: IntoIterator<Item = (L::Vertex, L::Vertex, L::Vertex)>,
{
    triples
        .into_iter()
        .filter(|(w, u, v)| ell.voltage(w, u) != ell.voltage(w, v))
        .collect()
}

/// Darts `(a, b)` and group elements for which `ℓ(a^g, b^g) != ℓ(a, b)^g`.
/// Returns the indices (dart, element) of the failures.
pub fn equivariance_violations<L, G>(
    ell: &L,
    darts: &[(L::Vertex, L::Vertex)],
    gs: &[G],
    act_vertex: impl Fn(&L::Vertex, &G) -> L::Vertex,
    act_group: impl Fn(&L::Group, &G) -> L::Group,
) -> Vec<(usize, usize)>
where
    L: VoltageAssignment,
{
    let mut bad = Vec::new();
    for (gi, g) in gs.iter().enumerate() {
        for (di, (a, b)) in darts.iter().enumerate() {
            let lhs = ell.voltage(&act_vertex(a, g), &act_vertex(b, g));
            if lhs != act_group(&ell.voltage(a, b), g) {
                bad.push((di, gi));
            }
        }
    }
    bad
}

/// `(u, m) ⊥ (v, n)` in the lift.
pub fn lift_adjacent<L: VoltageAssignment>(
    ell: &L,
    (u, m): (&L::Vertex, &L::Group),
    (v, n): (&L::Vertex, &L::Group),
) -> bool {
    ell.adjacent(u, v) && ell.voltage(u, v) == m.plus(n)
}

/// End point of the lift of `path` starting at `(path[0], start)`.
pub fn lift_path_end<L: VoltageAssignment>(
    ell: &L,
    path: &[L::Vertex],
    start: &L::Group,
) -> Result<(L::Vertex, L::Group)> {
    let last = *path
        .last()
        .ok_or_else(|| Error::Usage("empty path".into()))?;
    Ok((last, path_voltage(ell, path)?.plus(start)))
}

/// A BFS tree with the voltage of each tree path from the root.
#[derive(Clone, Debug)]
pub struct TreeVoltages<G> {
    pub tree: BfsTree,
    pub voltage: Vec<G>,
}

pub fn tree_voltages<L, Gr>(ell: &L, graph: &Gr, root: usize) -> TreeVoltages<L::Group>
where
    L: VoltageAssignment,
    Gr: IndexedGraph<Vertex = L::Vertex>,
{
    let tree = bfs_tree(graph, root);
    let mut voltage = vec![L::Group::zero(); graph.order()];
    for &v in tree.order.iter().skip(1) {
        let p = tree.parent[v] as usize;
        voltage[v] = voltage[p].plus(&ell.voltage(&graph.vertex(p), &graph.vertex(v)));
    }
    TreeVoltages { tree, voltage }
}

impl<G: VoltageGroup> TreeVoltages<G> {
    fn is_tree_edge(&self, a: usize, b: usize) -> bool {
        self.tree.parent[b] as usize == a || self.tree.parent[a] as usize == b
    }
}

/// Calls `f(a, b, voltage)` for every non-tree edge `a < b` of the root's
/// component, with the voltage of its fundamental cycle
/// `root → a → b → root`. Nothing is stored, so this scales to graphs whose
/// edge lists do not fit in memory.
pub fn for_each_fundamental_cycle<L, Gr>(
    ell: &L,
    graph: &Gr,
    tv: &TreeVoltages<L::Group>,
    mut f: impl FnMut(usize, usize, L::Group),
) where
    L: VoltageAssignment,
    Gr: IndexedGraph<Vertex = L::Vertex>,
{
    for &a in &tv.tree.order {
        let va = graph.vertex(a);
        graph.for_each_neighbor(a, |b| {
            if a < b && !tv.is_tree_edge(a, b) {
                let cyc = tv.voltage[a]
                    .plus(&ell.voltage(&va, &graph.vertex(b)))
                    .plus(&tv.voltage[b]);
                f(a, b, cyc);
            }
        });
    }
}

/// All fundamental-cycle voltages, in the order of the BFS.
pub fn fundamental_cycle_generators<L, Gr>(ell: &L, graph: &Gr, root: usize) -> Vec<L::Group>
where
    L: VoltageAssignment,
    Gr: IndexedGraph<Vertex = L::Vertex>,
{
    let tv = tree_voltages(ell, graph, root);
    let mut out = Vec::new();
    for_each_fundamental_cycle(ell, graph, &tv, |_, _, g| out.push(g));
    out
}

/// The F2-span of fundamental-cycle voltages, and how many of them fail
/// `accept`.
#[derive(Clone, Debug)]
pub struct CycleSpan {
    pub span: F2Span,
    pub generators: u64,
    pub rejected: u64,
    /// First rejected non-tree edge, if any.
    pub first_rejected: Option<(usize, usize)>,
}

/// Streams the fundamental cycles into an [`F2Span`] that starts from
/// `seed`. Once the span reaches `saturation` dimensions, generators are only
/// passed to `accept`.
pub fn cycle_span<L, Gr>(
    ell: &L,
    graph: &Gr,
    root: usize,
    seed: &[u128],
    saturation: Option<usize>,
    accept: impl Fn(&L::Group) -> bool,
) -> CycleSpan
where
    L: VoltageAssignment,
    Gr: IndexedGraph<Vertex = L::Vertex>,
{
    let tv = tree_voltages(ell, graph, root);
    let mut out = CycleSpan {
        span: F2Span::from_vectors(seed.iter().copied()),
        generators: 0,
        rejected: 0,
        first_rejected: None,
    };
    let full = saturation.unwrap_or(usize::MAX);
    for_each_fundamental_cycle(ell, graph, &tv, |a, b, g| {
        out.generators += 1;
        if !accept(&g) {
            out.rejected += 1;
            out.first_rejected.get_or_insert((a, b));
        }
        if out.span.dim() < full {
            out.span.insert(g.to_f2());
        }
    });
    out
}

/// The connected component of a lift, as an explicit graph on
/// (base vertex, tag) pairs.
#[derive(Clone, Debug)]
pub struct LiftedComponent<G> {
    pub base: Vec<usize>,
    pub tag: Vec<G>,
    pub graph: SimpleGraph,
    /// Number of component vertices above each base vertex.
    pub fiber_sizes: Vec<usize>,
}

impl<G: VoltageGroup> LiftedComponent<G> {
    pub fn order(&self) -> usize {
        self.base.len()
    }

    /// The common fiber size, if all base vertices have the same one.
    pub fn uniform_fiber_size(&self) -> Option<usize> {
        let first = *self.fiber_sizes.first()?;
        self.fiber_sizes
            .iter()
            .all(|&s| s == first)
            .then_some(first)
    }
}

/// Breadth-first exploration of the lift from `(root, root_tag)`. Refuses to
/// grow beyond `cap` vertices.
pub fn component_of<L, Gr>(
    ell: &L,
    graph: &Gr,
    root: usize,
    root_tag: L::Group,
    cap: usize,
) -> Result<LiftedComponent<L::Group>>
where
    L: VoltageAssignment,
    Gr: IndexedGraph<Vertex = L::Vertex>,
{
    let mut index: HashMap<(usize, L::Group), usize> = HashMap::new();
    let mut base = vec![root];
    let mut tag = vec![root_tag];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
    index.insert((root, root_tag), 0);
    let mut next = 0;
    while next < base.len() {
        let (u, m) = (base[next], tag[next]);
        let vu = graph.vertex(u);
        let mut found = Vec::new();
        graph.for_each_neighbor(u, |v| {
            found.push((v, m.plus(&ell.voltage(&vu, &graph.vertex(v)))))
        });
        for key in found {
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    if base.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "lifted component".into(),
                            needed: base.len() as u64 + 1,
                            cap: cap as u64,
                        });
                    }
                    let id = base.len();
                    index.insert(key, id);
                    base.push(key.0);
                    tag.push(key.1);
                    adj.push(Vec::new());
                    id
                }
            };
            adj[next].push(id);
        }
        next += 1;
    }
    let mut fiber_sizes = vec![0; graph.order()];
    for &b in &base {
        fiber_sizes[b] += 1;
    }
    fiber_sizes.retain(|&s| s > 0);
    let mut g = SimpleGraph::new(base.len());
    for (a, ns) in adj.iter().enumerate() {
        for &b in ns {
            if a < b {
                g.add_edge(a, b);
            }
        }
    }
    Ok(LiftedComponent {
        base,
        tag,
        graph: g,
        fiber_sizes,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalIsoCheck {
    pub checked: usize,
    /// Lift vertices where the projection is not a local isomorphism.
    pub failures: Vec<usize>,
}

impl LocalIsoCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks at each listed lift vertex `x` that the projection maps the
/// neighbors of `x` bijectively onto the neighbors of its base vertex, and
/// that two neighbors are adjacent in the lift exactly when their images
/// are. Lift adjacency is recomputed from `ell`, not read from the stored
/// graph.
pub fn verify_local_isomorphism<L, Gr>(
    ell: &L,
    graph: &Gr,
    comp: &LiftedComponent<L::Group>,
    at: impl IntoIterator<Item = usize>,
) -> LocalIsoCheck
where
    L: VoltageAssignment,
    Gr: IndexedGraph<Vertex = L::Vertex>,
{
    let mut out = LocalIsoCheck::default();
    for x in at {
        out.checked += 1;
        let ns = comp.graph.neighbors(x);
        let mut images: Vec<usize> = ns.iter().map(|&y| comp.base[y]).collect();
        images.sort_unstable();
        let bijective =
            images.windows(2).all(|w| w[0] != w[1]) && images == graph.neighbors(comp.base[x]);
        let preserves = bijective
            && ns.iter().enumerate().all(|(i, &y1)| {
                ns[i + 1..].iter().all(|&y2| {
                    let (b1, b2) = (comp.base[y1], comp.base[y2]);
                    let (v1, v2) = (graph.vertex(b1), graph.vertex(b2));
                    let lifted = lift_adjacent(ell, (&v1, &comp.tag[y1]), (&v2, &comp.tag[y2]));
                    lifted == graph.are_adjacent(b1, b2)
                })
            });
        if !preserves {
            out.failures.push(x);
        }
    }
    out
}

/// A vertex `(v, n)` of the lift of the affine graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LiftVertex<F, N> {
    pub base: AffineVertex<F>,
    pub tag: N,
}

/// `(g, k) ∈ G ⋉ N`, acting by `(v, n)^(g,k) = (v^g, n^g + k)`.
#[derive(Clone, Debug)]
pub struct ExtensionElement<F, N> {
    pub g: Matrix4<F>,
    pub n: N,
    induced: InducedAction<F>,
    dual: Matrix4<F>,
}

impl<F: Field, N: ActedGroup<F>> ExtensionElement<F, N> {
    pub fn new(g: Matrix4<F>, n: N) -> Result<Self> {
        let dual = g
            .dual()
            .ok_or_else(|| Error::Domain("singular matrix".into()))?;
        Ok(ExtensionElement {
            g,
            n,
            induced: InducedAction::new(&g),
            dual,
        })
    }

    pub fn identity() -> Self {
        Self::new(Matrix4::identity(), N::zero()).expect("identity is invertible")
    }

    pub fn induced(&self) -> &InducedAction<F> {
        &self.induced
    }

    /// `(g,k)(h,l) = (gh, k^h + l)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.g.mul(&other.g),
            self.n.act_by(&other.induced)?.plus(&other.n),
        )
    }

    pub fn act(&self, x: &LiftVertex<F, N>) -> Result<LiftVertex<F, N>> {
        Ok(LiftVertex {
            base: x.base.act(&self.g, &self.dual),
            tag: x.tag.act_by(&self.induced)?.plus(&self.n),
        })
    }
}

pub fn act_extension<F: Field, N: ActedGroup<F>>(
    x: &LiftVertex<F, N>,
    e: &ExtensionElement<F, N>,
) -> Result<LiftVertex<F, N>> {
    e.act(x)
}

/// `λ(g)`: the voltage of the tree path from `v^g` back to the root `v` of
/// `tv`, or `None` if `v^g` lies in another component. Tree paths come from
/// a BFS that scans neighbors in increasing id order.
pub fn lambda_of<G: VoltageGroup>(tv: &TreeVoltages<G>, image_of_root: usize) -> Option<G> {
    (tv.tree.dist[image_of_root] != crate::graphs::UNREACHED).then(|| tv.voltage[image_of_root])
}

/// `λ` along an explicitly chosen path from `v^g` to `v`.
pub fn lambda_along<L: VoltageAssignment>(ell: &L, path: &[L::Vertex]) -> Result<L::Group> {
    path_voltage(ell, path)
}

/// The 2-cocycle `λ(gh) + λ(g)^h + λ(h)` for one pair.
pub fn cocycle_value<F: Field, N: ActedGroup<F>>(
    lambda_g: &N,
    lambda_h: &N,
    lambda_gh: &N,
    h: &InducedAction<F>,
) -> Result<N> {
    Ok(lambda_gh.plus(&lambda_g.act_by(h)?).plus(lambda_h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::IndexedGraph;

    /// Voltages on a simple graph, stored per edge.
    struct Table {
        graph: SimpleGraph,
        values: HashMap<(usize, usize), u128>,
    }

    impl Table {
        fn new(graph: SimpleGraph, f: impl Fn(usize, usize) -> u128) -> Self {
            let values = graph.edges().map(|(a, b)| ((a, b), f(a, b))).collect();
            Table { graph, values }
        }
    }

    impl VoltageAssignment for Table {
        type Vertex = usize;
        type Group = u128;
        fn adjacent(&self, a: &usize, b: &usize) -> bool {
            self.graph.are_adjacent(*a, *b)
        }
        fn voltage(&self, a: &usize, b: &usize) -> u128 {
            self.values[&((*a).min(*b), (*a).max(*b))]
        }
    }

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    fn k4() -> SimpleGraph {
        SimpleGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn path_voltages() {
        let t = Table::new(cycle(5), |a, b| 1 << (a + b));
        assert_eq!(path_voltage(&t, &[]).unwrap(), 0);
        assert_eq!(path_voltage(&t, &[3]).unwrap(), 0);
        assert_eq!(path_voltage(&t, &[1, 2, 1]).unwrap(), 0);
        assert_eq!(path_voltage(&t, &[0, 1, 2]).unwrap(), (1 << 1) ^ (1 << 3));
        assert!(matches!(path_voltage(&t, &[0, 2]), Err(Error::Usage(_))));
        // reversal and concatenation
        let p = [0, 1, 2, 3];
        let rev: Vec<usize> = p.iter().rev().copied().collect();
        assert_eq!(
            path_voltage(&t, &p).unwrap(),
            path_voltage(&t, &rev).unwrap()
        );
        assert_eq!(
            path_voltage(&t, &p).unwrap(),
            path_voltage(&t, &p[..2]).unwrap() ^ path_voltage(&t, &p[1..]).unwrap()
        );
    }

    #[test]
    fn tree_graph_has_no_fundamental_cycles() {
        let path = SimpleGraph::from_edges(5, (0..4).map(|i| (i, i + 1)));
        let t = Table::new(path.clone(), |a, _| 1 << a);
        assert!(fundamental_cycle_generators(&t, &path, 2).is_empty());
        let span = cycle_span(&t, &path, 0, &[], None, |_| true);
        assert_eq!(span.span.dim(), 0);
    }

    #[test]
    fn fundamental_cycles_span_all_cycles() {
        let g = k4();
        let t = Table::new(g.clone(), |a, b| 1 << (a * 4 + b));
        let gens = fundamental_cycle_generators(&t, &g, 0);
        assert_eq!(gens.len(), 6 - 3);
        let span = F2Span::from_vectors(gens);
        // every triangle and quadrangle of K4
        for walk in [
            [0, 1, 2].as_slice(),
            &[1, 2, 3],
            &[0, 1, 2, 3],
            &[0, 2, 1, 3],
        ] {
            assert!(span.contains(closed_walk_voltage(&t, walk).unwrap()));
        }
    }

    #[test]
    fn lift_of_cycle() {
        // a 5-cycle with one edge of voltage 1 lifts to a 10-cycle
        let g = cycle(5);
        let t = Table::new(g.clone(), |a, b| u128::from((a, b) == (0, 4)));
        let comp = component_of(&t, &g, 0, 0, 100).unwrap();
        assert_eq!(comp.order(), 10);
        assert_eq!(comp.uniform_fiber_size(), Some(2));
        assert_eq!(comp.graph.edges().count(), 10);
        assert!(verify_local_isomorphism(&t, &g, &comp, 0..10).passed());
        assert!(matches!(
            component_of(&t, &g, 0, 0, 9),
            Err(Error::CapExceeded { .. })
        ));
        assert!(lift_adjacent(&t, (&0, &0), (&4, &1)));
        assert!(!lift_adjacent(&t, (&0, &0), (&4, &0)));
        assert_eq!(lift_path_end(&t, &[0, 4, 3], &0).unwrap(), (3, 1));
    }

    #[test]
    fn zero_voltage_lift_is_the_base() {
        let g = k4();
        let t = Table::new(g.clone(), |_, _| 0);
        let comp = component_of(&t, &g, 0, 0, 100).unwrap();
        assert_eq!(comp.order(), 4);
        assert_eq!(comp.uniform_fiber_size(), Some(1));
        assert!(verify_local_isomorphism(&t, &g, &comp, 0..4).passed());
    }

    #[test]
    fn nonzero_triangle_breaks_local_isomorphism() {
        let g = k4();
        let t = Table::new(g.clone(), |a, b| u128::from((a, b) == (1, 2)));
        let comp = component_of(&t, &g, 0, 0, 100).unwrap();
        let check = verify_local_isomorphism(&t, &g, &comp, 0..comp.order());
        assert!(!check.passed());
    }

    #[test]
    fn reductive_and_equivariance_helpers() {
        let g = k4();
        let t = Table::new(g, |a, b| 1 << (a + b));
        assert_eq!(
            reductive_violations(&t, [(0, 1, 1), (0, 1, 2)]),
            vec![(0, 1, 2)]
        );
        let darts: Vec<(usize, usize)> = t.graph.edges().collect();
        // the identity permutation is trivially compatible
        let id = |v: &usize, _: &()| *v;
        assert!(equivariance_violations(&t, &darts, &[()], id, |x, _| *x).is_empty());
        // swapping 0 and 3 does not preserve these voltages
        let swap = |v: &usize, _: &()| match v {
            0 => 3,
            3 => 0,
            x => *x,
        };
        assert!(!equivariance_violations(&t, &darts, &[()], swap, |x, _| *x).is_empty());
    }
}
