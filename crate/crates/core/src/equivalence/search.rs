//! Canonical labeling of vertex-colored digraphs by individualization and refinement.
//!
//! The search tree has an equitable ordered partition at each node; a child
//! individualizes one vertex of the first smallest non-singleton cell and refines
//! again. Leaves are discrete partitions, i.e. vertex orderings. The canonical
//! ordering is the leaf maximizing (refinement trace, relabeled graph).
//!
//! Pruning uses three facts. Leaves with identical relabeled graphs differ by an
//! automorphism; on finding one against the first leaf or the current best leaf the
//! search returns to their deepest common ancestor. Children in one orbit of the
//! automorphisms found so far that fix the current prefix have equivalent subtrees.
//! A node whose trace is below the best leaf's trace at the same depth, and which
//! cannot be equivalent to the first leaf, has no useful leaf.
//!
//! The automorphism group order is the product, along the first path, of the orbit
//! length of each individualized vertex under the pointwise stabilizer of the
//! vertices individualized before it.

use std::cmp::Ordering;
use std::collections::VecDeque;

use num_bigint::BigUint;

use super::digraph::ColoredDigraph;

/// Outcome of a full search.
#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Canonical ordering: position -> vertex.
    pub canonical_order: Vec<u32>,
    /// Relabeled graph under the canonical ordering.
    pub canonical_image: Vec<u32>,
    /// Automorphisms found, as vertex maps `v -> gamma[v]`. Together they generate the group.
    pub generators: Vec<Vec<u32>>,
    pub group_order: BigUint,
}

#[derive(Clone)]
struct Partition {
    elems: Vec<u32>,
    pos: Vec<u32>,
    /// Start of the cell containing each position.
    cell: Vec<u32>,
    /// End (exclusive) of the cell starting at each position.
    cell_end: Vec<u32>,
    cells: usize,
}

struct Scratch {
    out_count: Vec<u32>,
    in_count: Vec<u32>,
    touched: Vec<u32>,
    touched_cells: Vec<u32>,
    in_queue: Vec<bool>,
    queue: VecDeque<u32>,
    keyed: Vec<(u64, u32)>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            out_count: vec![0; n],
            in_count: vec![0; n],
            touched: Vec::new(),
            touched_cells: Vec::new(),
            in_queue: vec![false; n],
            queue: VecDeque::new(),
            keyed: Vec::new(),
        }
    }
}

impl Partition {
    /// Cells by ascending color.
    fn by_color(g: &ColoredDigraph) -> Self {
        let n = g.vertex_count();
        let mut elems: Vec<u32> = (0..n as u32).collect();
        elems.sort_by_key(|&v| (g.color(v), v));
        let mut pos = vec![0u32; n];
        for (p, &v) in elems.iter().enumerate() {
            pos[v as usize] = p as u32;
        }
        let mut cell = vec![0u32; n];
        let mut cell_end = vec![0u32; n];
        let mut cells = 0;
        let mut start = 0;
        while start < n {
            let color = g.color(elems[start]);
            let mut end = start;
            while end < n && g.color(elems[end]) == color {
                cell[end] = start as u32;
                end += 1;
            }
            cell_end[start] = end as u32;
            cells += 1;
            start = end;
        }
        Partition { elems, pos, cell, cell_end, cells }
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.len()
    }

    fn cell_starts(&self) -> impl Iterator<Item = u32> + '_ {
        let mut p = 0u32;
        std::iter::from_fn(move || {
            if (p as usize) < self.len() {
                let s = p;
                p = self.cell_end[s as usize];
                Some(s)
            } else {
                None
            }
        })
    }

    /// First cell of minimum size greater than one.
    fn target_cell(&self) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        for s in self.cell_starts() {
            let size = self.cell_end[s as usize] - s;
            if size > 1 && best.map_or(true, |(_, b)| size < b) {
                best = Some((s, size));
            }
        }
        best.map(|(s, _)| s)
    }

    fn cell_members(&self, start: u32) -> &[u32] {
        &self.elems[start as usize..self.cell_end[start as usize] as usize]
    }

    /// Splits `v` off the front of its cell and refines.
    fn individualize(&mut self, g: &ColoredDigraph, v: u32, scratch: &mut Scratch, trace: &mut Vec<u64>) {
        let p = self.pos[v as usize] as usize;
        let start = self.cell[p] as usize;
        let end = self.cell_end[start] as usize;
        debug_assert!(end - start > 1);
        let other = self.elems[start];
        self.elems.swap(start, p);
        self.pos[v as usize] = start as u32;
        self.pos[other as usize] = p as u32;
        self.cell_end[start] = start as u32 + 1;
        self.cell_end[start + 1] = end as u32;
        for q in start + 1..end {
            self.cell[q] = start as u32 + 1;
        }
        self.cells += 1;
        trace.push(start as u64);
        scratch.queue.push_back(start as u32);
        scratch.in_queue[start] = true;
        self.refine(g, scratch, trace);
    }

    /// Refines to the coarsest equitable partition below the current one, using the
    /// queued cells as splitters. Every step depends only on cell positions and
    /// counts, so the trace is invariant under relabeling.
    fn refine(&mut self, g: &ColoredDigraph, s: &mut Scratch, trace: &mut Vec<u64>) {
        while let Some(splitter) = s.queue.pop_front() {
            s.in_queue[splitter as usize] = false;
            if self.is_discrete() {
                continue;
            }
            let (lo, hi) = (splitter as usize, self.cell_end[splitter as usize] as usize);
            for &x in &self.elems[lo..hi] {
                for &u in g.in_neighbors(x) {
                    if s.out_count[u as usize] == 0 && s.in_count[u as usize] == 0 {
                        s.touched.push(u);
                    }
                    s.out_count[u as usize] += 1;
                }
                for &u in g.out_neighbors(x) {
                    if s.out_count[u as usize] == 0 && s.in_count[u as usize] == 0 {
                        s.touched.push(u);
                    }
                    s.in_count[u as usize] += 1;
                }
            }
            s.touched_cells.clear();
            for &u in &s.touched {
                let c = self.cell[self.pos[u as usize] as usize];
                if self.cell_end[c as usize] - c > 1 {
                    s.touched_cells.push(c);
                }
            }
            s.touched_cells.sort_unstable();
            s.touched_cells.dedup();
            trace.push(u64::from(splitter) << 32 | s.touched_cells.len() as u64);

            for ci in 0..s.touched_cells.len() {
                let c = s.touched_cells[ci] as usize;
                let end = self.cell_end[c] as usize;
                s.keyed.clear();
                for &v in &self.elems[c..end] {
                    let key = u64::from(s.out_count[v as usize]) << 32 | u64::from(s.in_count[v as usize]);
                    s.keyed.push((key, v));
                }
                let first = s.keyed[0].0;
                if s.keyed.iter().all(|&(k, _)| k == first) {
                    trace.push(first);
                    continue;
                }
                s.keyed.sort_unstable();
                for (i, &(_, v)) in s.keyed.iter().enumerate() {
                    self.elems[c + i] = v;
                    self.pos[v as usize] = (c + i) as u32;
                }
                let was_queued = s.in_queue[c];
                let mut fragments: Vec<(usize, usize)> = Vec::new();
                let mut i = 0;
                while i < s.keyed.len() {
                    let key = s.keyed[i].0;
                    let mut j = i;
                    while j < s.keyed.len() && s.keyed[j].0 == key {
                        j += 1;
                    }
                    fragments.push((c + i, c + j));
                    trace.push(key);
                    trace.push((j - i) as u64);
                    i = j;
                }
                for &(a, b) in &fragments {
                    self.cell_end[a] = b as u32;
                    for q in a..b {
                        self.cell[q] = a as u32;
                    }
                }
                self.cells += fragments.len() - 1;
                let largest = if was_queued {
                    None
                } else {
                    let mut best = 0;
                    for (fi, &(a, b)) in fragments.iter().enumerate() {
                        if b - a > fragments[best].1 - fragments[best].0 {
                            best = fi;
                        }
                    }
                    Some(best)
                };
                for (fi, &(a, _)) in fragments.iter().enumerate() {
                    if Some(fi) != largest && !s.in_queue[a] {
                        s.in_queue[a] = true;
                        s.queue.push_back(a as u32);
                    }
                }
            }
            for &u in &s.touched {
                s.out_count[u as usize] = 0;
                s.in_count[u as usize] = 0;
            }
            s.touched.clear();
        }
    }

    /// The graph relabeled by position, as `[color, out-degree, sorted out-neighbors...]` per vertex.
    fn image(&self, g: &ColoredDigraph) -> Vec<u32> {
        let mut out = Vec::with_capacity(2 * g.vertex_count() + g.arc_count());
        let mut nbrs = Vec::new();
        for &v in &self.elems {
            out.push(g.color(v));
            nbrs.clear();
            nbrs.extend(g.out_neighbors(v).iter().map(|&u| self.pos[u as usize]));
            nbrs.sort_unstable();
            out.push(nbrs.len() as u32);
            out.extend_from_slice(&nbrs);
        }
        out
    }
}

struct Leaf {
    order: Vec<u32>,
    image: Vec<u32>,
    traces: Vec<Vec<u64>>,
    prefix: Vec<u32>,
}

struct Search<'g> {
    g: &'g ColoredDigraph,
    scratch: Scratch,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<u32>>,
    /// Vertices individualized on the path currently being explored.
    prefix: Vec<u32>,
    /// Refinement trace of each node on the current path, root first.
    traces: Vec<Vec<u64>>,
    /// Whether the current path's traces agree with the first leaf's, per level.
    eq_first: Vec<bool>,
    /// Current path's traces compared with the best leaf's, per level.
    cmp_best: Vec<Ordering>,
    group_order: BigUint,
}

/// Union-find orbits of the group generated by the generators fixing `fixed` pointwise.
fn orbits_fixing(n: usize, generators: &[Vec<u32>], fixed: &[u32]) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for gen in generators.iter().filter(|gen| fixed.iter().all(|&f| gen[f as usize] == f)) {
        for (v, &w) in gen.iter().enumerate() {
            let (a, b) = (find(&mut parent, v as u32), find(&mut parent, w));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    (0..n as u32).map(|v| find(&mut parent, v)).collect()
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl<'g> Search<'g> {
    fn record_automorphism(&mut self, from: &[u32], to: &[u32]) {
        let mut gamma = vec![0u32; from.len()];
        for (&a, &b) in from.iter().zip(to) {
            gamma[a as usize] = b;
        }
        if gamma.iter().enumerate().any(|(v, &w)| v as u32 != w) && !self.generators.contains(&gamma) {
            self.generators.push(gamma);
        }
    }

    /// Handles a discrete partition. Returns the level to jump back to, if any.
    fn leaf(&mut self, p: &Partition) -> Option<usize> {
        let image = p.image(self.g);
        let depth = self.prefix.len();
        if self.first.is_none() {
            let leaf = || Leaf {
                order: p.elems.clone(),
                image: image.clone(),
                traces: self.traces.clone(),
                prefix: self.prefix.clone(),
            };
            self.best = Some(leaf());
            self.first = Some(leaf());
            return None;
        }
        let first = self.first.as_ref().unwrap();
        if first.image == image {
            let first_order = first.order.clone();
            let jump = self.eq_first[depth].then(|| common_prefix(&self.prefix, &first.prefix));
            self.record_automorphism(&first_order, &p.elems);
            if jump.is_some() {
                return jump;
            }
        }
        let best = self.best.as_ref().unwrap();
        let ord = self.cmp_best[depth].then_with(|| image.cmp(&best.image));
        match ord {
            Ordering::Equal => {
                let best_order = best.order.clone();
                let jump = common_prefix(&self.prefix, &best.prefix);
                self.record_automorphism(&best_order, &p.elems);
                Some(jump)
            }
            Ordering::Greater => {
                self.best = Some(Leaf {
                    order: p.elems.clone(),
                    image,
                    traces: self.traces.clone(),
                    prefix: self.prefix.clone(),
                });
                for c in self.cmp_best.iter_mut() {
                    *c = Ordering::Equal;
                }
                None
            }
            Ordering::Less => None,
        }
    }

    /// Explores the node with partition `p` at level `self.prefix.len()`.
    fn explore(&mut self, p: &Partition) -> Option<usize> {
        if p.is_discrete() {
            return self.leaf(p);
        }
        let depth = self.prefix.len();
        let first_descent = self.first.is_none();
        let target = p.target_cell().expect("non-discrete partition has a target cell");
        let mut children = p.cell_members(target).to_vec();
        children.sort_unstable();

        let mut explored: Vec<u32> = Vec::new();
        let mut orbits: Option<(usize, Vec<u32>)> = None;
        for (idx, &w) in children.iter().enumerate() {
            if idx > 0 {
                let gens = self.generators.len();
                if orbits.as_ref().map_or(true, |(count, _)| *count != gens) {
                    orbits = Some((gens, orbits_fixing(p.len(), &self.generators, &self.prefix)));
                }
                let orb = &orbits.as_ref().unwrap().1;
                if explored.iter().any(|&e| orb[e as usize] == orb[w as usize]) {
                    continue;
                }
            }
            explored.push(w);

            let mut child = p.clone();
            let mut trace = Vec::new();
            child.individualize(self.g, w, &mut self.scratch, &mut trace);

            let eq_first = match &self.first {
                None => true,
                Some(f) => self.eq_first[depth] && f.traces.get(depth + 1) == Some(&trace),
            };
            let cmp_best = match &self.best {
                None => Ordering::Equal,
                Some(b) => self.cmp_best[depth].then_with(|| match b.traces.get(depth + 1) {
                    Some(bt) => trace.cmp(bt),
                    None => Ordering::Greater,
                }),
            };
            if !eq_first && cmp_best == Ordering::Less {
                continue;
            }

            self.prefix.push(w);
            self.traces.push(trace);
            self.eq_first.push(eq_first);
            self.cmp_best.push(cmp_best);
            let jump = self.explore(&child);
            self.prefix.pop();
            self.traces.pop();
            self.eq_first.pop();
            self.cmp_best.pop();

            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }

        if first_descent {
            let orb = orbits_fixing(p.len(), &self.generators, &self.prefix);
            let v = children[0];
            let size = children.iter().filter(|&&w| orb[w as usize] == orb[v as usize]).count();
            self.group_order *= BigUint::from(size);
        }
        None
    }
}

/// Canonical ordering, automorphism generators and group order of a colored digraph.
pub fn canonical_search(g: &ColoredDigraph) -> SearchResult {
    let n = g.vertex_count();
    let mut scratch = Scratch::new(n);
    let mut root = Partition::by_color(g);
    let mut root_trace = Vec::new();
    for s in root.cell_starts().collect::<Vec<_>>() {
        scratch.in_queue[s as usize] = true;
        scratch.queue.push_back(s);
    }
    root.refine(g, &mut scratch, &mut root_trace);

    let mut search = Search {
        g,
        scratch,
        first: None,
        best: None,
        generators: Vec::new(),
        prefix: Vec::new(),
        traces: vec![root_trace],
        eq_first: vec![true],
        cmp_best: vec![Ordering::Equal],
        group_order: BigUint::from(1u32),
    };
    search.explore(&root);
    let best = search.best.expect("search visits at least one leaf");
    SearchResult {
        canonical_order: best.order,
        canonical_image: best.image,
        generators: search.generators,
        group_order: search.group_order,
    }
}
