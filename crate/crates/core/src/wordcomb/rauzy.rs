use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::factors::{factors_of, FactorSet};
use crate::capcore::{binary_string, word_string, CapParams, Letter, SteppingFn, Window};
use crate::exactnum::QuadraticReal;
use crate::Result;

/// Edge of a Rauzy graph: the factor of length `n+1` joining its prefix and suffix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RauzyEdge {
    pub from: usize,
    pub to: usize,
    pub word: Vec<Letter>,
    pub weight: QuadraticReal,
}

/// Rauzy graph `Γ_n` with edges weighted by factor densities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RauzyGraph {
    pub n: usize,
    pub vertices: Vec<Vec<Letter>>,
    pub edges: Vec<RauzyEdge>,
}

/// Contracted edge standing for a path whose inner vertices have in- and out-degree one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedEdge {
    pub from: usize,
    pub to: usize,
    pub weight: QuadraticReal,
    /// Number of original edges on the path.
    pub length: usize,
}

/// Rauzy graph restricted to vertices with in- or out-degree above one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedRauzyGraph {
    pub vertices: Vec<Vec<Letter>>,
    pub edges: Vec<ReducedEdge>,
}

pub fn rauzy(params: &CapParams, window: &Window, n: usize) -> Result<RauzyGraph> {
    let f = SteppingFn::new(params, window)?;
    let verts = factors_of(&f, n)?;
    let edges = factors_of(&f, n + 1)?;
    Ok(RauzyGraph::from_factors(&verts, &edges))
}

impl RauzyGraph {
    pub fn from_factors(verts: &FactorSet, edges: &FactorSet) -> Self {
        let vertices: Vec<Vec<Letter>> = verts.words().into_iter().collect();
        let index: BTreeMap<&[Letter], usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, w)| (w.as_slice(), i))
            .collect();
        let n = verts.n;
        let mut es: Vec<RauzyEdge> = edges
            .factors
            .iter()
            .map(|e| RauzyEdge {
                from: index[&e.word[..n]],
                to: index[&e.word[1..]],
                word: e.word.clone(),
                weight: e.len() / &edges.window_len,
            })
            .collect();
        es.sort_by(|a, b| a.word.cmp(&b.word));
        Self {
            n,
            vertices,
            edges: es,
        }
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.to == v).count()
    }

    /// Weight entering minus weight leaving each vertex.
    pub fn imbalance(&self, v: usize) -> QuadraticReal {
        let sum = |pick: &dyn Fn(&RauzyEdge) -> bool| {
            self.edges
                .iter()
                .filter(|e| pick(e))
                .fold(QuadraticReal::zero(), |a, e| a + &e.weight)
        };
        sum(&|e| e.to == v) - sum(&|e| e.from == v)
    }

    /// Every vertex reachable from every other.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for e in &self.edges {
                    let (a, b) = if forward {
                        (e.from, e.to)
                    } else {
                        (e.to, e.from)
                    };
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }

    /// Contracts every vertex with in-degree and out-degree one.
    pub fn reduce(&self) -> ReducedRauzyGraph {
        let keep: Vec<bool> = (0..self.vertices.len())
            .map(|v| self.in_degree(v) > 1 || self.out_degree(v) > 1)
            .collect();
        let mut new_index = vec![usize::MAX; keep.len()];
        let mut vertices = Vec::new();
        for (v, &k) in keep.iter().enumerate() {
            if k {
                new_index[v] = vertices.len();
                vertices.push(self.vertices[v].clone());
            }
        }
        let mut edges = Vec::new();
        for e in self.edges.iter().filter(|e| keep[e.from]) {
            let mut to = e.to;
            let mut length = 1;
            while !keep[to] {
                let next = self
                    .edges
                    .iter()
                    .find(|x| x.from == to)
                    .expect("out-degree one");
                to = next.to;
                length += 1;
                if length > self.edges.len() {
                    break;
                }
            }
            if keep[to] {
                edges.push(ReducedEdge {
                    from: new_index[e.from],
                    to: new_index[to],
                    weight: e.weight.clone(),
                    length,
                });
            }
        }
        ReducedRauzyGraph { vertices, edges }
    }

    /// Graphviz rendering; two-letter words over `{A, C}` print as binary when `binary` is set.
    pub fn to_dot(&self, weights: bool, binary: bool) -> String {
        let label = |w: &[Letter]| {
            if binary {
                binary_string(w).unwrap_or_else(|| word_string(w))
            } else {
                word_string(w)
            }
        };
        let mut s = format!("digraph rauzy_{} {{\n", self.n);
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{}\"];", label(v));
        }
        for e in &self.edges {
            let mut l = label(&e.word);
            if weights {
                let _ = write!(l, " {}", e.weight);
            }
            let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"];", e.from, e.to, l);
        }
        s.push_str("}\n");
        s
    }
}

impl ReducedRauzyGraph {
    /// Distinct edge weights.
    pub fn weight_values(&self) -> Vec<QuadraticReal> {
        let mut w: Vec<QuadraticReal> = self.edges.iter().map(|e| e.weight.clone()).collect();
        w.sort();
        w.dedup();
        w
    }

    /// Weight entering minus weight leaving a vertex.
    pub fn imbalance(&self, v: usize) -> QuadraticReal {
        let mut acc = QuadraticReal::zero();
        for e in &self.edges {
            if e.to == v {
                acc = acc + &e.weight;
            }
            if e.from == v {
                acc = acc - &e.weight;
            }
        }
        acc
    }

    /// Same graph with every edge reversed.
    pub fn reversed(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| ReducedEdge {
                from: e.to,
                to: e.from,
                weight: e.weight.clone(),
                length: e.length,
            })
            .collect();
        Self {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    /// Isomorphism of weighted digraphs by brute force over vertex permutations.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        let n = self.vertices.len();
        if n != other.vertices.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        let key = |g: &Self, perm: &[usize]| {
            let mut k: Vec<(usize, usize, QuadraticReal, usize)> = g
                .edges
                .iter()
                .map(|e| (perm[e.from], perm[e.to], e.weight.clone(), e.length))
                .collect();
            k.sort();
            k
        };
        let target = key(other, &(0..n).collect::<Vec<_>>());
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| key(self, p) == target)
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations(p, k + 1, f) {
            return true;
        }
        p.swap(k, i);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib() -> (CapParams, Window) {
        let eps = -(QuadraticReal::one() / QuadraticReal::tau());
        let p = CapParams::new(eps, QuadraticReal::tau()).unwrap();
        (
            p,
            Window::new(QuadraticReal::from_int(-1), QuadraticReal::one()).unwrap(),
        )
    }

    #[test]
    fn fibonacci_graph_sizes() {
        let (p, w) = fib();
        let g3 = rauzy(&p, &w, 3).unwrap();
        assert_eq!((g3.vertices.len(), g3.edges.len()), (4, 5));
        let g4 = rauzy(&p, &w, 4).unwrap();
        assert_eq!((g4.vertices.len(), g4.edges.len()), (5, 6));
        assert!(g4.is_strongly_connected());
        let dot = g4.to_dot(false, true);
        assert!(dot.contains("label=\"0110\""));
        assert_eq!(dot.matches("->").count(), 6);
    }

    #[test]
    fn conservation_and_reduction() {
        let (p, _) = fib();
        let w = Window::new(QuadraticReal::zero(), QuadraticReal::from_ratio(7, 10)).unwrap();
        for n in 1..=8 {
            let g = rauzy(&p, &w, n).unwrap();
            for v in 0..g.vertices.len() {
                assert!(g.imbalance(v).is_zero());
            }
            let r = g.reduce();
            assert!((1..=4).contains(&r.vertices.len()), "n = {n}");
            assert!(r.edges.len() <= 6);
            assert!(r.weight_values().len() <= 5);
            for v in 0..r.vertices.len() {
                assert!(r.imbalance(v).is_zero());
            }
            assert!(r.is_isomorphic(&r.reversed()));
            let total: usize = r.edges.iter().map(|e| e.length).sum();
            assert_eq!(total, g.edges.len());
        }
    }

    #[test]
    fn chain_contraction_keeps_weight() {
        let (p, w) = fib();
        let g = rauzy(&p, &w, 4).unwrap();
        let r = g.reduce();
        for e in &r.edges {
            let first = g
                .edges
                .iter()
                .find(|x| g.vertices[x.from] == r.vertices[e.from] && x.weight == e.weight);
            assert!(first.is_some());
        }
    }
}
