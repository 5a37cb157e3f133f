use crate::code::LinearCode;
use crate::gf3::TritVector;

use super::WeightSet;

/// Color shared by all coordinate-value vertices; codeword vertices use their weight.
pub const COORDINATE_COLOR: u32 = 0;

/// A vertex-colored digraph with vertices `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredDigraph {
    colors: Vec<u32>,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
}

impl ColoredDigraph {
    pub fn new(colors: Vec<u32>) -> Self {
        let n = colors.len();
        ColoredDigraph { colors, out_adj: vec![Vec::new(); n], in_adj: vec![Vec::new(); n] }
    }

    pub fn add_arc(&mut self, from: u32, to: u32) {
        self.out_adj[from as usize].push(to);
        self.in_adj[to as usize].push(from);
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    pub fn color(&self, v: u32) -> u32 {
        self.colors[v as usize]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        &self.out_adj[v as usize]
    }

    pub fn in_neighbors(&self, v: u32) -> &[u32] {
        &self.in_adj[v as usize]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.out_adj.iter().enumerate().flat_map(|(u, nbrs)| nbrs.iter().map(move |&v| (u as u32, v)))
    }

    pub fn has_arc(&self, from: u32, to: u32) -> bool {
        self.out_adj[from as usize].contains(&to)
    }
}

/// Vertex id of the coordinate-value pair `(j, y)` with `y` in `{1, 2}`.
#[inline]
pub fn coordinate_vertex(j: usize, y: u8) -> u32 {
    debug_assert!(y == 1 || y == 2);
    (2 * j + (y as usize - 1)) as u32
}

/// The digraph on the selected codewords and the `2n` coordinate-value pairs.
///
/// Each selected codeword `c` is joined in both directions to `(j, c_j)` for every
/// nonzero `c_j`, and each `(j, y)` has an arc to `(j, 2y)`. Codeword vertices follow
/// the `2n` coordinate vertices, grouped by weight in the order of `words`.
pub fn build_digraph_from_words(n: usize, words: &[TritVector]) -> ColoredDigraph {
    let mut colors = vec![COORDINATE_COLOR; 2 * n];
    colors.extend(words.iter().map(|c| c.weight() as u32));
    let mut g = ColoredDigraph::new(colors);
    for j in 0..n {
        g.add_arc(coordinate_vertex(j, 1), coordinate_vertex(j, 2));
        g.add_arc(coordinate_vertex(j, 2), coordinate_vertex(j, 1));
    }
    for (i, c) in words.iter().enumerate() {
        let cv = (2 * n + i) as u32;
        for j in 0..n {
            let y = c.get(j).value();
            if y != 0 {
                let pv = coordinate_vertex(j, y);
                g.add_arc(cv, pv);
                g.add_arc(pv, cv);
            }
        }
    }
    g
}

/// Codewords whose weight lies in `w`, in enumeration order.
pub fn selected_words(code: &LinearCode, w: &WeightSet) -> crate::error::Result<Vec<TritVector>> {
    Ok(code.codewords()?.filter(|c| w.contains(c.weight())).collect())
}

/// The equivalence-testing digraph of `code` for the weight set `w`.
pub fn build_digraph(code: &LinearCode, w: &WeightSet) -> crate::error::Result<ColoredDigraph> {
    Ok(build_digraph_from_words(code.length(), &selected_words(code, w)?))
}
