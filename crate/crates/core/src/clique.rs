//! Exact maximum clique search (branch and bound with greedy colouring bounds).

/// Undirected simple graph on `0..n` with bitset adjacency.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self { n, words, adj: vec![0; n * words] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Adds the edge `{u, v}`; self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u * self.words..(u + 1) * self.words].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| !self.has_edge(u, u) && (0..self.n).all(|v| self.has_edge(u, v) == self.has_edge(v, u)))
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

/// Greedy colouring of `cands` in order; returns vertices sorted by colour
/// and the colour (1-based) of each.
fn colour_sort(g: &Graph, cands: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in cands {
        match classes.iter_mut().find(|c| c.iter().all(|&u| !g.has_edge(u, v))) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut order = Vec::with_capacity(cands.len());
    let mut colours = Vec::with_capacity(cands.len());
    for (i, c) in classes.into_iter().enumerate() {
        for v in c {
            order.push(v);
            colours.push(i + 1);
        }
    }
    (order, colours)
}

struct Search<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    /// Enumeration mode: collect cliques of exactly this size.
    target: Option<usize>,
    found: Vec<Vec<usize>>,
    limit: usize,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.target.is_some() && self.found.len() >= self.limit
    }

    fn expand(&mut self, current: &mut Vec<usize>, cands: Vec<usize>) {
        let (order, colours) = colour_sort(self.g, &cands);
        let mut remaining = order.clone();
        for i in (0..order.len()).rev() {
            if self.done() {
                return;
            }
            let bound = current.len() + colours[i];
            match self.target {
                None if bound <= self.best.len() => return,
                Some(t) if bound < t => return,
                _ => {}
            }
            let v = order[i];
            remaining.pop();
            current.push(v);
            let next: Vec<usize> = remaining.iter().copied().filter(|&u| self.g.has_edge(v, u)).collect();
            match self.target {
                Some(t) if current.len() == t => {
                    let mut c = current.clone();
                    c.sort_unstable();
                    self.found.push(c);
                }
                _ => {
                    if next.is_empty() {
                        if self.target.is_none() && current.len() > self.best.len() {
                            self.best = current.clone();
                        }
                    } else {
                        self.expand(current, next);
                    }
                }
            }
            current.pop();
        }
    }
}

fn initial_order(g: &Graph) -> Vec<usize> {
    let mut vs: Vec<usize> = (0..g.n).collect();
    vs.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    vs
}

/// A maximum clique, sorted ascending.
pub fn max_clique(g: &Graph) -> Vec<usize> {
    if g.is_empty() {
        return Vec::new();
    }
    let mut s = Search { g, best: vec![0], target: None, found: Vec::new(), limit: 0 };
    s.expand(&mut Vec::new(), initial_order(g));
    let mut best = s.best;
    best.sort_unstable();
    best
}

/// Up to `limit` distinct cliques of exactly `size` vertices, each sorted.
pub fn cliques_of_size(g: &Graph, size: usize, limit: usize) -> Vec<Vec<usize>> {
    if size == 0 || limit == 0 {
        return Vec::new();
    }
    let mut s = Search { g, best: Vec::new(), target: Some(size), found: Vec::new(), limit };
    s.expand(&mut Vec::new(), initial_order(g));
    s.found
}
