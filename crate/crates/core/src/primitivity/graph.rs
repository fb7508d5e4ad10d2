//! Whitehead graphs and the connected-without-cut-vertex test.

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

/// Simple undirected graph on the `2r` letters, vertices indexed by ordinal.
#[derive(Clone, PartialEq, Eq)]
pub struct WhiteheadGraph {
    rank: u32,
    adjacency: Vec<bool>,
    edges: usize,
}

impl WhiteheadGraph {
    pub fn empty(alphabet: Alphabet) -> Self {
        let n = alphabet.size();
        Self { rank: alphabet.rank(), adjacency: vec![false; n * n], edges: 0 }
    }

    /// Every pair of distinct letters joined.
    pub fn complete(alphabet: Alphabet) -> Self {
        let mut g = Self::empty(alphabet);
        for x in alphabet.letters() {
            for y in alphabet.letters() {
                if x < y {
                    g.add_edge(x, y);
                }
            }
        }
        g
    }

    #[inline]
    pub fn rank(&self) -> u32 {
        self.rank
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        2 * self.rank as usize
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, x: Letter, y: Letter) -> bool {
        self.adjacency[x.ordinal() * self.vertex_count() + y.ordinal()]
    }

    /// Inserts `{x, y}`; returns whether the edge is new. Loops are ignored.
    pub fn add_edge(&mut self, x: Letter, y: Letter) -> bool {
        if x == y || self.has_edge(x, y) {
            return false;
        }
        let n = self.vertex_count();
        self.adjacency[x.ordinal() * n + y.ordinal()] = true;
        self.adjacency[y.ordinal() * n + x.ordinal()] = true;
        self.edges += 1;
        true
    }

    pub fn remove_edge(&mut self, x: Letter, y: Letter) -> bool {
        if !self.has_edge(x, y) {
            return false;
        }
        let n = self.vertex_count();
        self.adjacency[x.ordinal() * n + y.ordinal()] = false;
        self.adjacency[y.ordinal() * n + x.ordinal()] = false;
        self.edges -= 1;
        true
    }

    pub fn neighbors(&self, x: Letter) -> impl Iterator<Item = Letter> + '_ {
        let n = self.vertex_count();
        let row = &self.adjacency[x.ordinal() * n..(x.ordinal() + 1) * n];
        row.iter().enumerate().filter(|(_, &e)| e).map(|(o, _)| Letter::from_ordinal(o))
    }

    /// Edges `{x, y}` with `x < y` in letter order.
    pub fn edges(&self) -> impl Iterator<Item = (Letter, Letter)> + '_ {
        let n = self.vertex_count();
        (0..n).flat_map(move |i| {
            (i + 1..n)
                .filter(move |&j| self.adjacency[i * n + j])
                .map(move |j| (Letter::from_ordinal(i), Letter::from_ordinal(j)))
        })
    }

    pub fn is_subgraph_of(&self, other: &WhiteheadGraph) -> bool {
        self.rank == other.rank && self.adjacency.iter().zip(&other.adjacency).all(|(&a, &b)| !a || b)
    }

    /// Articulation vertices by the lowpoint depth-first search, as ordinals,
    /// together with the number of vertices reached from ordinal 0.
    fn lowpoint(&self) -> (Vec<bool>, usize) {
        let n = self.vertex_count();
        let mut order = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut cut = vec![false; n];
        let mut counter = 0;
        self.visit(0, usize::MAX, &mut order, &mut low, &mut cut, &mut counter);
        (cut, counter)
    }

    fn visit(
        &self,
        v: usize,
        parent: usize,
        order: &mut [usize],
        low: &mut [usize],
        cut: &mut [bool],
        counter: &mut usize,
    ) {
        let n = self.vertex_count();
        order[v] = *counter;
        low[v] = *counter;
        *counter += 1;
        let mut children = 0;
        for u in 0..n {
            if !self.adjacency[v * n + u] || u == parent {
                continue;
            }
            if order[u] == usize::MAX {
                children += 1;
                self.visit(u, v, order, low, cut, counter);
                low[v] = low[v].min(low[u]);
                if parent != usize::MAX && low[u] >= order[v] {
                    cut[v] = true;
                }
            } else {
                low[v] = low[v].min(order[u]);
            }
        }
        if parent == usize::MAX && children > 1 {
            cut[v] = true;
        }
    }

    pub fn is_connected(&self) -> bool {
        self.lowpoint().1 == self.vertex_count()
    }

    /// Articulation vertices of the component of `a_1`.
    pub fn cut_vertices(&self) -> Vec<Letter> {
        let (cut, _) = self.lowpoint();
        cut.iter().enumerate().filter(|(_, &c)| c).map(|(o, _)| Letter::from_ordinal(o)).collect()
    }

    /// Connected on all `2r` vertices with no articulation vertex.
    pub fn connected_without_cutvertex(&self) -> bool {
        let (cut, reached) = self.lowpoint();
        reached == self.vertex_count() && !cut.contains(&true)
    }
}

impl std::fmt::Debug for WhiteheadGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.edges().map(|(x, y)| format!("{x}-{y}"))).finish()
    }
}

pub fn connected_without_cutvertex(g: &WhiteheadGraph) -> bool {
    g.connected_without_cutvertex()
}

/// `W(u)` when `cyclic` (the wrap-around pair included), `W'(u)` otherwise:
/// each adjacent pair `x y` contributes the edge `{x, y^{-1}}`.
pub fn whitehead_graph(alphabet: Alphabet, u: &Word, cyclic: bool) -> Result<WhiteheadGraph> {
    alphabet.check(u.letters())?;
    if u.len() < 2 {
        return Err(Error::TooShort { length: u.len(), required: 2 });
    }
    if cyclic && !u.is_cyclically_reduced() {
        return Err(Error::NotCyclicallyReduced);
    }
    let mut g = WhiteheadGraph::empty(alphabet);
    let letters = u.letters();
    for pair in letters.windows(2) {
        g.add_edge(pair[0], pair[1].inverse());
    }
    if cyclic {
        g.add_edge(letters[letters.len() - 1], letters[0].inverse());
    }
    Ok(g)
}
