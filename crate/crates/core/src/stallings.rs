//! Stallings graphs of finitely generated subgroups, their spanning-tree
//! bases, and the classical membership test by reading a word from the root.
//!
//! An `a`-labeled edge `p -> q` is stored as the two half-edges
//! `(p, a) -> q` and `(q, a^{-1}) -> p`, indexed by letter ordinal, so a
//! folded graph is a partial function `(vertex, letter) -> vertex`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

pub type VertexId = u32;

/// Path-compressing union-find with union by size.
#[derive(Debug, Clone)]
struct DisjointSet {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut v: u32) -> u32 {
        let mut root = v;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[v as usize] != root {
            let next = self.parent[v as usize];
            self.parent[v as usize] = root;
            v = next;
        }
        root
    }

    /// Returns `(kept, absorbed)`.
    fn union(&mut self, a: u32, b: u32) -> (u32, u32) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        (a, b)
    }
}

/// Reduced, rooted, folded graph of a subgroup. Vertex 0 is the root and
/// vertices are numbered in canonical breadth-first order (letters scanned
/// in the fixed order), so two graphs are isomorphic iff they are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StallingsGraph {
    alphabet: Alphabet,
    vertex_count: usize,
    adjacency: Vec<Option<VertexId>>,
}

impl StallingsGraph {
    /// Folds the wedge of circuits labeled by `generators`. Empty generators
    /// are dropped.
    pub fn build(alphabet: Alphabet, generators: &[Word]) -> Result<Self> {
        for g in generators {
            alphabet.check(g.letters())?;
        }
        let letters = alphabet.size();

        // wedge of loops at vertex 0
        let total: usize = generators.iter().map(|g| g.len().saturating_sub(1)).sum();
        let vertex_total = 1 + total;
        let mut out: Vec<Vec<(u32, u32)>> = vec![Vec::new(); vertex_total];
        let mut next = 1u32;
        for g in generators.iter().filter(|g| !g.is_empty()) {
            let mut prev = 0u32;
            for (j, &letter) in g.letters().iter().enumerate() {
                let target = if j + 1 == g.len() {
                    0
                } else {
                    next += 1;
                    next - 1
                };
                out[prev as usize].push((letter.ordinal() as u32, target));
                out[target as usize].push((letter.inverse().ordinal() as u32, prev));
                prev = target;
            }
        }

        // fold: identify equal-labeled half-edges at a vertex until deterministic
        let mut sets = DisjointSet::new(vertex_total);
        let mut queue: Vec<u32> = (0..vertex_total as u32).rev().collect();
        let mut seen: Vec<Option<u32>> = vec![None; letters];
        let mut merges: Vec<(u32, u32)> = Vec::new();
        while let Some(v) = queue.pop() {
            let v = sets.find(v);
            let list = std::mem::take(&mut out[v as usize]);
            let mut kept = Vec::with_capacity(list.len().min(letters));
            for (label, target) in list {
                let target = sets.find(target);
                match seen[label as usize] {
                    None => {
                        seen[label as usize] = Some(target);
                        kept.push((label, target));
                    }
                    Some(other) if other != target => merges.push((other, target)),
                    Some(_) => {}
                }
            }
            for &(label, _) in &kept {
                seen[label as usize] = None;
            }
            out[v as usize] = kept;
            for (a, b) in merges.drain(..) {
                if sets.find(a) == sets.find(b) {
                    continue;
                }
                let (kept_vertex, absorbed) = sets.union(a, b);
                let moved = std::mem::take(&mut out[absorbed as usize]);
                out[kept_vertex as usize].extend(moved);
                queue.push(kept_vertex);
            }
        }

        // slot table on representatives
        let root = sets.find(0);
        let mut slots: Vec<Option<u32>> = vec![None; vertex_total * letters];
        let mut alive = vec![false; vertex_total];
        for v in 0..vertex_total as u32 {
            if sets.find(v) != v {
                continue;
            }
            alive[v as usize] = true;
            for &(label, target) in &out[v as usize] {
                let target = sets.find(target);
                let slot = &mut slots[v as usize * letters + label as usize];
                debug_assert!(slot.is_none() || *slot == Some(target));
                *slot = Some(target);
            }
        }

        // prune non-root vertices of degree one
        let degree = |slots: &[Option<u32>], v: u32| -> usize {
            slots[v as usize * letters..(v as usize + 1) * letters].iter().filter(|s| s.is_some()).count()
        };
        let mut stack: Vec<u32> = (0..vertex_total as u32).filter(|&v| alive[v as usize]).collect();
        while let Some(v) = stack.pop() {
            if v == root || !alive[v as usize] || degree(&slots, v) > 1 {
                continue;
            }
            alive[v as usize] = false;
            for label in 0..letters {
                if let Some(t) = slots[v as usize * letters + label].take() {
                    let back = Letter::from_ordinal(label).inverse().ordinal();
                    slots[t as usize * letters + back] = None;
                    stack.push(t);
                }
            }
        }

        // canonical renumbering by breadth-first search from the root
        let mut number: Vec<Option<u32>> = vec![None; vertex_total];
        let mut order: Vec<u32> = vec![root];
        number[root as usize] = Some(0);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for label in 0..letters {
                if let Some(t) = slots[v as usize * letters + label] {
                    if number[t as usize].is_none() {
                        number[t as usize] = Some(order.len() as u32);
                        order.push(t);
                    }
                }
            }
        }
        let mut adjacency = vec![None; order.len() * letters];
        for (new, &old) in order.iter().enumerate() {
            for label in 0..letters {
                adjacency[new * letters + label] =
                    slots[old as usize * letters + label].map(|t| number[t as usize].expect("connected"));
            }
        }
        Ok(Self { alphabet, vertex_count: order.len(), adjacency })
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn root(&self) -> VertexId {
        0
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of (positively labeled) edges.
    pub fn edge_count(&self) -> usize {
        let letters = self.alphabet.size();
        (0..self.vertex_count)
            .map(|v| (0..letters).step_by(2).filter(|&l| self.adjacency[v * letters + l].is_some()).count())
            .sum()
    }

    /// Target of the half-edge `(v, letter)`.
    #[inline]
    pub fn follow(&self, v: VertexId, letter: Letter) -> Option<VertexId> {
        self.adjacency[v as usize * self.alphabet.size() + letter.ordinal()]
    }

    /// Positive-label edges `(p, a, q)` in vertex then letter order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, Letter, VertexId)> + '_ {
        let letters = self.alphabet.size();
        (0..self.vertex_count as u32).flat_map(move |p| {
            (0..letters)
                .step_by(2)
                .filter_map(move |l| self.adjacency[p as usize * letters + l].map(|q| (p, Letter::from_ordinal(l), q)))
        })
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let letters = self.alphabet.size();
        self.adjacency[v as usize * letters..(v as usize + 1) * letters].iter().filter(|s| s.is_some()).count()
    }

    /// Endpoint of the path labeled `w` from `from`, if it can be read.
    pub fn read(&self, from: VertexId, w: &[Letter]) -> Option<VertexId> {
        w.iter().try_fold(from, |v, &l| self.follow(v, l))
    }

    /// Does `w` label a circuit at the root?
    pub fn accepts(&self, w: &Word) -> bool {
        self.read(self.root(), w.letters()) == Some(self.root())
    }

    /// `|E| - |V| + 1`.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count
    }

    /// The index of the subgroup when it is finite (complete graph).
    pub fn finite_index(&self) -> Option<usize> {
        (self.edge_count() == self.vertex_count * self.alphabet.rank() as usize).then_some(self.vertex_count)
    }

    /// Graphviz rendering: vertices numbered from 1 in canonical order, the
    /// root double-circled, edges labeled by positive letters.
    pub fn to_dot(&self) -> String {
        let mut dot = String::from("digraph stallings {\n    rankdir=LR;\n");
        for v in 0..self.vertex_count {
            let shape = if v == 0 { "doublecircle" } else { "circle" };
            let _ = writeln!(dot, "    {} [shape={shape}];", v + 1);
        }
        for (p, a, q) in self.edges() {
            let _ = writeln!(dot, "    {} -> {} [label=\"{a}\"];", p + 1, q + 1);
        }
        dot.push_str("}\n");
        dot
    }
}

pub fn build_stallings(alphabet: Alphabet, generators: &[Word]) -> Result<StallingsGraph> {
    StallingsGraph::build(alphabet, generators)
}

pub fn finite_index(g: &StallingsGraph) -> Option<usize> {
    g.finite_index()
}

pub fn rank(g: &StallingsGraph) -> usize {
    g.rank()
}

/// A reduced word over a basis alphabet `{x_1, ..., x_k}` (signed indices).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct XWord(Word);

impl XWord {
    pub fn new(word: Word) -> Self {
        Self(word)
    }

    pub fn empty() -> Self {
        Self(Word::empty())
    }

    pub fn from_indices(indices: &[i32]) -> Result<Self> {
        Word::from_indices(indices).map(Self)
    }

    #[inline]
    pub fn as_word(&self) -> &Word {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> Vec<i32> {
        self.0.letters().iter().map(|l| l.index()).collect()
    }
}

impl std::fmt::Display for XWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .letters()
            .iter()
            .map(|l| if l.is_positive() { format!("x{}", l.generator()) } else { format!("x{}^-1", l.generator()) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl std::fmt::Debug for XWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "XWord({self})")
    }
}

/// Evaluates `x` in the basis: `phi(x_i) = basis[i - 1]`, then reduces.
pub fn expand_in_basis(x: &XWord, basis: &[Word]) -> Result<Word> {
    let mut letters: Vec<Letter> = Vec::new();
    for &l in x.as_word().letters() {
        let word = basis
            .get(l.generator() as usize - 1)
            .ok_or(Error::BasisIndex { index: l.index() as i64, size: basis.len() })?;
        let image = if l.is_positive() { word.clone() } else { word.inverse() };
        for &a in image.letters() {
            if letters.last() == Some(&a.inverse()) {
                letters.pop();
            } else {
                letters.push(a);
            }
        }
    }
    Ok(Word::from_reduced_unchecked(letters))
}

/// Depth-first spanning tree and the induced basis `b(e) = u(p) a u(q)^{-1}`,
/// one word per non-tree edge, numbered in the order the search meets them.
#[derive(Debug, Clone)]
pub struct SpanningBasis {
    /// `(parent, letter read from parent)` per vertex; `None` at the root.
    parent: Vec<Option<(VertexId, Letter)>>,
    non_tree: Vec<(VertexId, Letter, VertexId)>,
    words: Vec<Word>,
    /// Basis letter emitted when traversing a half-edge, indexed like the
    /// graph adjacency.
    crossing: Vec<Option<Letter>>,
}

impl SpanningBasis {
    pub fn new(g: &StallingsGraph) -> Self {
        let letters = g.alphabet().size();
        let n = g.vertex_count();
        let mut parent: Vec<Option<(VertexId, Letter)>> = vec![None; n];
        let mut visited = vec![false; n];
        let mut tree_slot = vec![false; n * letters];
        // non-tree edges in the order the search first meets them
        let mut found: Vec<(VertexId, Letter, VertexId)> = Vec::new();
        let mut met = vec![false; n * letters];
        visited[0] = true;
        let mut stack: Vec<(VertexId, usize)> = vec![(0, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            if next == letters {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let letter = Letter::from_ordinal(next);
            if let Some(t) = g.follow(v, letter) {
                if !visited[t as usize] {
                    visited[t as usize] = true;
                    parent[t as usize] = Some((v, letter));
                    tree_slot[v as usize * letters + letter.ordinal()] = true;
                    tree_slot[t as usize * letters + letter.inverse().ordinal()] = true;
                    stack.push((t, 0));
                } else if !tree_slot[v as usize * letters + letter.ordinal()]
                    && !met[v as usize * letters + letter.ordinal()]
                {
                    met[v as usize * letters + letter.ordinal()] = true;
                    met[t as usize * letters + letter.inverse().ordinal()] = true;
                    found.push(if letter.is_positive() { (v, letter, t) } else { (t, letter.inverse(), v) });
                }
            }
        }

        let mut basis = Self { parent, non_tree: Vec::new(), words: Vec::new(), crossing: vec![None; n * letters] };
        for (p, a, q) in found {
            let index = basis.non_tree.len() as u32 + 1;
            basis.crossing[p as usize * letters + a.ordinal()] = Some(Letter::gen(index));
            basis.crossing[q as usize * letters + a.inverse().ordinal()] = Some(Letter::gen(index).inverse());
            let word =
                basis.path_word(p).concat(&Word::from_reduced_unchecked(vec![a])).concat(&basis.path_word(q).inverse());
            basis.non_tree.push((p, a, q));
            basis.words.push(word);
        }
        basis
    }

    /// `u(p)`: the label of the tree path from the root to `p`.
    pub fn path_word(&self, p: VertexId) -> Word {
        let mut letters = Vec::new();
        let mut v = p;
        while let Some((up, letter)) = self.parent[v as usize] {
            letters.push(letter);
            v = up;
        }
        letters.reverse();
        Word::from_reduced_unchecked(letters)
    }

    pub fn parent(&self, v: VertexId) -> Option<(VertexId, Letter)> {
        self.parent[v as usize]
    }

    pub fn tree_edge_count(&self) -> usize {
        self.parent.iter().filter(|p| p.is_some()).count()
    }

    pub fn non_tree_edges(&self) -> &[(VertexId, Letter, VertexId)] {
        &self.non_tree
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

pub fn spanning_basis(g: &StallingsGraph) -> SpanningBasis {
    SpanningBasis::new(g)
}

/// Outcome of reading a word in the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub expression: Option<XWord>,
    pub letters_read: usize,
}

/// A subgroup given by its Stallings graph together with a fixed basis.
#[derive(Debug, Clone)]
pub struct Subgroup {
    graph: StallingsGraph,
    basis: SpanningBasis,
}

impl Subgroup {
    pub fn new(alphabet: Alphabet, generators: &[Word]) -> Result<Self> {
        let graph = StallingsGraph::build(alphabet, generators)?;
        let basis = SpanningBasis::new(&graph);
        Ok(Self { graph, basis })
    }

    pub fn graph(&self) -> &StallingsGraph {
        &self.graph
    }

    pub fn basis(&self) -> &SpanningBasis {
        &self.basis
    }

    /// Reads `w0` from the root, recording non-tree edge crossings.
    pub fn trace(&self, w0: &Word) -> Trace {
        let letters = self.graph.alphabet().size();
        let mut v = self.graph.root();
        let mut expression = Vec::new();
        for (read, &l) in w0.letters().iter().enumerate() {
            if !self.graph.alphabet().contains(l) {
                return Trace { expression: None, letters_read: read + 1 };
            }
            match self.graph.follow(v, l) {
                Some(t) => {
                    if let Some(x) = self.basis.crossing[v as usize * letters + l.ordinal()] {
                        expression.push(x);
                    }
                    v = t;
                }
                None => return Trace { expression: None, letters_read: read + 1 },
            }
        }
        let expression = (v == self.graph.root()).then(|| {
            XWord::new(Word::from_letters(expression).expect("a reduced word traces a reduced basis expression"))
        });
        Trace { expression, letters_read: w0.len() }
    }

    pub fn express(&self, w0: &Word) -> Option<XWord> {
        self.trace(w0).expression
    }

    pub fn contains(&self, w0: &Word) -> bool {
        self.graph.accepts(w0)
    }
}

/// Classical membership test: fold, pick a spanning tree, read `w0`.
/// Returns the expression of `w0` in the spanning-tree basis when `w0` is in
/// the subgroup.
pub fn membership_mp(alphabet: Alphabet, w0: &Word, generators: &[Word]) -> Result<Option<XWord>> {
    Ok(Subgroup::new(alphabet, generators)?.express(w0))
}

/// Breadth-first traversal from the root of a deterministic rooted graph
/// given as a successor function; used to compare graphs up to isomorphism.
pub fn canonical_form(g: &StallingsGraph) -> Vec<Option<VertexId>> {
    let letters = g.alphabet().size();
    let mut number = vec![None; g.vertex_count()];
    let mut order = VecDeque::from([g.root()]);
    let mut visited = vec![g.root()];
    number[g.root() as usize] = Some(0u32);
    while let Some(v) = order.pop_front() {
        for l in 0..letters {
            if let Some(t) = g.follow(v, Letter::from_ordinal(l)) {
                if number[t as usize].is_none() {
                    number[t as usize] = Some(visited.len() as u32);
                    visited.push(t);
                    order.push_back(t);
                }
            }
        }
    }
    let mut form = Vec::with_capacity(visited.len() * letters);
    for &v in &visited {
        for l in 0..letters {
            form.push(g.follow(v, Letter::from_ordinal(l)).map(|t| number[t as usize].unwrap()));
        }
    }
    form
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(list: &[&str]) -> Vec<Word> {
        list.iter().map(|s| Word::parse(s).unwrap()).collect()
    }

    fn graph(list: &[&str]) -> StallingsGraph {
        StallingsGraph::build(Alphabet::new(2).unwrap(), &words(list)).unwrap()
    }

    fn a() -> Letter {
        Letter::gen(1)
    }

    fn b() -> Letter {
        Letter::gen(2)
    }

    #[test]
    fn single_generator_loop() {
        let g = graph(&["a"]);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, a(), 0)]);
    }

    #[test]
    fn aa_b_graph() {
        let g = graph(&["aa", "b"]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.follow(0, a()), Some(1));
        assert_eq!(g.follow(1, a()), Some(0));
        assert_eq!(g.follow(0, b()), Some(0));
        assert_eq!(g.follow(1, b()), None);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.finite_index(), None);
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn index_two_subgroup() {
        let g = graph(&["aa", "b", "abA"]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.follow(1, b()), Some(1));
        assert_eq!(g.finite_index(), Some(2));
        assert_eq!(g.rank(), 3);
        assert_eq!(SpanningBasis::new(&g).len(), 3);
    }

    #[test]
    fn whole_group_and_ctp_pair() {
        let g = graph(&["a", "b"]);
        assert_eq!(g.finite_index(), Some(1));
        assert_eq!(g.rank(), 2);
        assert_eq!(graph(&["aba", "bab"]).rank(), 2);
        assert_eq!(graph(&["a"]).rank(), 1);
    }

    #[test]
    fn trivial_subgroup() {
        let g = graph(&[]);
        assert_eq!((g.vertex_count(), g.edge_count(), g.rank()), (1, 0, 0));
        let g = graph(&["", ""]);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(membership_mp(Alphabet::new(2).unwrap(), &Word::empty(), &[]).unwrap(), Some(XWord::empty()));
    }

    #[test]
    fn non_cyclically_reduced_generator_is_folded() {
        // <abA> = a<b>a^{-1}: root --a--> v with a b-loop at v
        let g = graph(&["abA"]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.follow(0, a()), Some(1));
        assert_eq!(g.follow(1, b()), Some(1));
        assert_eq!(g.rank(), 1);
        let sub = Subgroup::new(Alphabet::new(2).unwrap(), &words(&["abA"])).unwrap();
        assert_eq!(sub.basis().words(), &words(&["abA"])[..]);
    }

    #[test]
    fn pruning_removes_hanging_vertices() {
        // a and aba generate <a, b>... no: <a, aba> = <a, b>, complete on one vertex
        let g = graph(&["a", "aba"]);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.finite_index(), Some(1));
        for v in 1..g.vertex_count() as u32 {
            assert!(g.degree(v) >= 2);
        }
    }

    #[test]
    fn spanning_basis_examples() {
        let g = graph(&["a"]);
        assert_eq!(SpanningBasis::new(&g).words(), &words(&["a"])[..]);

        let g = graph(&["aa", "b"]);
        let basis = SpanningBasis::new(&g);
        assert_eq!(basis.tree_edge_count(), g.vertex_count() - 1);
        assert_eq!(basis.words(), &words(&["aa", "b"])[..]);
        for w in basis.words() {
            assert!(g.accepts(w));
        }
    }

    #[test]
    fn membership_examples() {
        let alphabet = Alphabet::new(2).unwrap();
        let gens = words(&["aa", "b"]);
        let x = membership_mp(alphabet, &Word::parse("aab").unwrap(), &gens).unwrap().unwrap();
        assert_eq!(x, XWord::from_indices(&[1, 2]).unwrap());
        assert_eq!(x.to_string(), "x1 x2");
        assert_eq!(membership_mp(alphabet, &Word::parse("aba").unwrap(), &gens).unwrap(), None);
        assert_eq!(membership_mp(alphabet, &Word::empty(), &gens).unwrap(), Some(XWord::empty()));
        let sub = Subgroup::new(alphabet, &gens).unwrap();
        let w = Word::parse("BaaBBAA").unwrap();
        let x = sub.express(&w).unwrap();
        assert_eq!(expand_in_basis(&x, sub.basis().words()).unwrap(), w);
    }

    #[test]
    fn expand_examples() {
        let basis = words(&["aa", "b"]);
        let x = XWord::from_indices(&[1, 2]).unwrap();
        assert_eq!(expand_in_basis(&x, &basis).unwrap(), Word::parse("aab").unwrap());
        assert_eq!(expand_in_basis(&XWord::empty(), &basis).unwrap(), Word::empty());
        assert!(XWord::from_indices(&[1, -1]).is_err());
        let x = XWord::from_indices(&[3]).unwrap();
        assert_eq!(expand_in_basis(&x, &basis), Err(Error::BasisIndex { index: 3, size: 2 }));
    }

    #[test]
    fn dot_export() {
        let dot = graph(&["aa", "b"]).to_dot();
        assert!(dot.contains("1 [shape=doublecircle];"));
        assert!(dot.contains("2 [shape=circle];"));
        assert!(dot.contains("1 -> 2 [label=\"a\"];"));
        assert!(dot.contains("2 -> 1 [label=\"a\"];"));
        assert!(dot.contains("1 -> 1 [label=\"b\"];"));
    }

    #[test]
    fn rejects_letters_outside_alphabet() {
        let alphabet = Alphabet::new(1).unwrap();
        assert!(StallingsGraph::build(alphabet, &words(&["ab"])).is_err());
    }

    #[test]
    fn canonical_form_matches_build_order() {
        let g = graph(&["aba", "bab", "aaB"]);
        let letters = g.alphabet().size();
        let direct: Vec<Option<u32>> = (0..g.vertex_count() as u32)
            .flat_map(|v| (0..letters).map(move |l| (v, l)))
            .map(|(v, l)| g.follow(v, Letter::from_ordinal(l)))
            .collect();
        assert_eq!(canonical_form(&g), direct);
    }
}
