//! The matrix graph `M_{N×n}(q)`: vertices `F_q^{N×n}`, edges between
//! matrices whose difference has rank one.
//!
//! The graph is implicit. Neighbors are generated by adding every rank-one
//! matrix, and all traversal runs on vertex indices (see [`IndexSpace`]).

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gf_tower::FieldTower;
use crate::rank_linalg::{self, IndexSpace, MatFq};

/// Default vertex budget for explicit exports.
pub const EXPORT_BUDGET: Budget = Budget::EXPORT;

#[derive(Debug, Clone)]
pub struct GraphParams {
    tower: Arc<FieldTower>,
    cols: usize,
}

impl GraphParams {
    /// Builds the tower `F_{p^m} ⊂ F_{p^{m·N}}` with `N = max(rows, cols)`.
    pub fn new(p: u64, m: usize, rows: usize, cols: usize) -> Result<Self> {
        let (rows, cols) = if cols > rows { (cols, rows) } else { (rows, cols) };
        if cols == 0 {
            return Err(Error::InvalidParameter("matrix dimensions must be positive".into()));
        }
        let tower = FieldTower::build(p, m, rows)?;
        Ok(GraphParams { tower: Arc::new(tower), cols })
    }

    /// `N` is taken from the tower's extension degree.
    pub fn with_tower(tower: Arc<FieldTower>, cols: usize) -> Result<Self> {
        if cols == 0 || cols > tower.degree() {
            return Err(Error::InvalidParameter(format!("need 1 <= n <= N = {}, got n = {cols}", tower.degree())));
        }
        Ok(GraphParams { tower, cols })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    /// `N`.
    pub fn rows(&self) -> usize {
        self.tower.degree()
    }

    /// `n`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn q(&self) -> u64 {
        self.tower.q()
    }

    /// `q^{Nn}`.
    pub fn order(&self) -> BigUint {
        rank_linalg::space_size(self.rows(), self.cols, self.q())
    }

    /// `(q^N - 1)(q^n - 1)/(q - 1)`.
    pub fn degree(&self) -> BigUint {
        rank_linalg::rank_one_count(self.rows(), self.cols, self.q())
    }

    /// The graph diameter, `n`.
    pub fn diameter(&self) -> usize {
        self.cols
    }

    pub fn vertex(&self, index: u64) -> MatFq {
        MatFq::from_index(index, self.rows(), self.cols, self.q())
    }

    pub fn index_of(&self, m: &MatFq) -> Result<u64> {
        self.check_vertex(m)?;
        Ok(m.to_index(self.q()))
    }

    fn check_vertex(&self, m: &MatFq) -> Result<()> {
        if (m.rows(), m.cols()) != (self.rows(), self.cols) {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", self.rows(), self.cols),
                got: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        Ok(())
    }

    pub fn vertex_count(&self, budget: Budget) -> Result<u64> {
        budget.admit(&self.order())
    }

    /// Indices of all rank-one matrices (the neighbors of zero).
    pub fn rank_one_indices(&self, budget: Budget) -> Result<Vec<u64>> {
        let q = self.q();
        Ok(rank_linalg::enumerate_rank_one(self.tower.base(), self.rows(), self.cols, budget)?
            .map(|m| m.to_index(q))
            .collect())
    }

    pub fn neighbors<'a>(&'a self, m: &'a MatFq, budget: Budget) -> Result<impl Iterator<Item = MatFq> + 'a> {
        self.check_vertex(m)?;
        let f = self.tower.base();
        Ok(rank_linalg::enumerate_rank_one(f, self.rows(), self.cols, budget)?
            .map(move |r| m.add(f, &r).expect("same shape")))
    }

    /// Index-level BFS distances from `source`.
    pub fn bfs_from_index(&self, source: u64, rank_one: &[u64], budget: Budget) -> Result<Vec<u32>> {
        let n = self.vertex_count(budget)?;
        let space = IndexSpace::new(self.tower.base());
        let mut dist = vec![u32::MAX; n as usize];
        let mut queue = VecDeque::new();
        dist[source as usize] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize] + 1;
            for &r in rank_one {
                let w = space.add(v, r) as usize;
                if dist[w] == u32::MAX {
                    dist[w] = d;
                    queue.push_back(w as u64);
                }
            }
        }
        Ok(dist)
    }

    /// BFS distances from `source` to every vertex, indexed by vertex index.
    pub fn bfs_from(&self, source: &MatFq, budget: Budget) -> Result<Vec<u32>> {
        let s = self.index_of(source)?;
        let r1 = self.rank_one_indices(budget)?;
        self.bfs_from_index(s, &r1, budget)
    }

    /// Shortest-path length between two vertices.
    pub fn graph_distance_bfs(&self, a: &MatFq, b: &MatFq, budget: Budget) -> Result<usize> {
        let target = self.index_of(b)?;
        let dist = self.bfs_from(a, budget)?;
        Ok(dist[target as usize] as usize)
    }

    pub fn eccentricity(&self, m: &MatFq, budget: Budget) -> Result<usize> {
        Ok(self.bfs_from(m, budget)?.into_iter().max().unwrap_or(0) as usize)
    }

    /// For every ordered pair in `sample`, translation by `M2 - M1` maps `M1`
    /// to `M2`, and carries every edge at a sampled vertex to an edge.
    pub fn check_vertex_transitivity(&self, sample: &[MatFq], budget: Budget) -> Result<bool> {
        let f = self.tower.base();
        for m in sample {
            self.check_vertex(m)?;
        }
        let rank_one: Vec<MatFq> = rank_linalg::enumerate_rank_one(f, self.rows(), self.cols, budget)?.collect();
        for m1 in sample {
            for m2 in sample {
                let shift = m2.sub(f, m1)?;
                if m1.add(f, &shift)? != *m2 {
                    return Ok(false);
                }
                for a in sample {
                    let ta = a.add(f, &shift)?;
                    for r in &rank_one {
                        let tb = a.add(f, r)?.add(f, &shift)?;
                        if rank_linalg::rank_distance(f, &ta, &tb)? != 1 {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// Every translation maps the full edge set into itself.
    pub fn check_all_translations(&self, budget: Budget) -> Result<bool> {
        let f = self.tower.base();
        let n = self.vertex_count(budget)?;
        let vertices: Vec<MatFq> = (0..n).map(|i| self.vertex(i)).collect();
        let rank_one: Vec<MatFq> = rank_linalg::enumerate_rank_one(f, self.rows(), self.cols, budget)?.collect();
        for shift in &vertices {
            for a in &vertices {
                let ta = a.add(f, shift)?;
                for r in &rank_one {
                    let tb = a.add(f, r)?.add(f, shift)?;
                    if rank_linalg::rank(f, &tb.sub(f, &ta)?) != 1 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Two-coloring by BFS; the graph is connected so one sweep suffices.
    pub fn is_bipartite(&self, budget: Budget) -> Result<bool> {
        let r1 = self.rank_one_indices(budget)?;
        let dist = self.bfs_from_index(0, &r1, budget)?;
        let space = IndexSpace::new(self.tower.base());
        for v in 0..dist.len() as u64 {
            for &r in &r1 {
                let w = space.add(v, r);
                if dist[v as usize] % 2 == dist[w as usize] % 2 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in index order.
    pub fn edges(&self, budget: Budget) -> Result<Vec<(u64, u64)>> {
        let n = self.vertex_count(budget)?;
        let r1 = self.rank_one_indices(budget)?;
        let space = IndexSpace::new(self.tower.base());
        let mut out = Vec::new();
        for u in 0..n {
            let mut nb: Vec<u64> = r1.iter().map(|&r| space.add(u, r)).filter(|&v| v > u).collect();
            nb.sort_unstable();
            out.extend(nb.into_iter().map(|v| (u, v)));
        }
        Ok(out)
    }

    pub fn export_dot(&self, budget: Budget) -> Result<String> {
        let q = self.q();
        let n = self.vertex_count(budget)?;
        let mut s = String::new();
        writeln!(s, "graph M_{}x{}_{} {{", self.rows(), self.cols, q).unwrap();
        for v in 0..n {
            writeln!(s, "  \"{}\";", self.vertex(v).label(q)).unwrap();
        }
        for (u, v) in self.edges(budget)? {
            writeln!(s, "  \"{}\" -- \"{}\";", self.vertex(u).label(q), self.vertex(v).label(q)).unwrap();
        }
        s.push_str("}\n");
        Ok(s)
    }

    pub fn export_edgelist_csv(&self, budget: Budget) -> Result<String> {
        let q = self.q();
        let mut s = String::from("u_label,v_label\n");
        for (u, v) in self.edges(budget)? {
            writeln!(s, "{},{}", self.vertex(u).label(q), self.vertex(v).label(q)).unwrap();
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn degree_formula() {
        assert_eq!(GraphParams::new(2, 1, 2, 2).unwrap().degree(), BigUint::from(9u32));
        assert_eq!(GraphParams::new(3, 1, 1, 1).unwrap().degree(), BigUint::from(2u32));
        assert_eq!(GraphParams::new(2, 1, 3, 2).unwrap().degree(), BigUint::from(21u32));
        // wide request is normalized
        let g = GraphParams::new(2, 1, 2, 3).unwrap();
        assert_eq!((g.rows(), g.cols()), (3, 2));
    }

    #[test]
    fn every_vertex_has_nine_neighbors() {
        let g = GraphParams::new(2, 1, 2, 2).unwrap();
        let f = g.tower().base();
        for i in 0..16 {
            let m = g.vertex(i);
            let nb: Vec<MatFq> = g.neighbors(&m, Budget::DEFAULT).unwrap().collect();
            assert_eq!(nb.len(), 9);
            for x in &nb {
                assert!(g.neighbors(x, Budget::DEFAULT).unwrap().any(|y| y == m));
                assert_eq!(rank_linalg::rank_distance(f, x, &m).unwrap(), 1);
            }
        }
    }

    #[test]
    fn bfs_matches_rank_distance() {
        let g = GraphParams::new(2, 1, 2, 2).unwrap();
        let f = g.tower().base();
        for a in 0..16 {
            let ma = g.vertex(a);
            let dist = g.bfs_from(&ma, Budget::DEFAULT).unwrap();
            for b in 0..16 {
                let mb = g.vertex(b);
                assert_eq!(dist[b as usize] as usize, rank_linalg::rank_distance(f, &ma, &mb).unwrap());
            }
        }
        assert_eq!(g.eccentricity(&g.vertex(0), Budget::DEFAULT).unwrap(), 2);
        assert_eq!(g.graph_distance_bfs(&g.vertex(7), &g.vertex(7), Budget::DEFAULT).unwrap(), 0);
    }

    #[test]
    fn exports() {
        let k2 = GraphParams::new(2, 1, 1, 1).unwrap();
        assert_eq!(k2.export_edgelist_csv(EXPORT_BUDGET).unwrap(), "u_label,v_label\n0,1\n");
        let k3 = GraphParams::new(3, 1, 1, 1).unwrap();
        assert_eq!(k3.edges(EXPORT_BUDGET).unwrap(), vec![(0, 1), (0, 2), (1, 2)]);
        let g = GraphParams::new(2, 1, 2, 2).unwrap();
        let edges = g.edges(EXPORT_BUDGET).unwrap();
        assert_eq!(edges.len(), 72);
        assert_eq!(edges.len() as u64 * 2, g.order().to_u64().unwrap() * g.degree().to_u64().unwrap());
        let dot = g.export_dot(EXPORT_BUDGET).unwrap();
        assert_eq!(dot.matches(" -- ").count(), 72);
        assert!(dot.starts_with("graph "));
        let tiny = Budget::new(8).unwrap();
        assert!(matches!(g.export_dot(tiny), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn transitivity_and_bipartiteness() {
        let g = GraphParams::new(2, 1, 2, 2).unwrap();
        assert!(g.check_all_translations(Budget::DEFAULT).unwrap());
        let sample: Vec<MatFq> = [0, 3, 9, 15].iter().map(|&i| g.vertex(i)).collect();
        assert!(g.check_vertex_transitivity(&sample, Budget::DEFAULT).unwrap());
        assert!(g.check_vertex_transitivity(&[g.vertex(0)], Budget::DEFAULT).unwrap());
        assert!(!g.is_bipartite(Budget::DEFAULT).unwrap());
        // K_2 is the one bipartite instance
        assert!(GraphParams::new(2, 1, 1, 1).unwrap().is_bipartite(Budget::DEFAULT).unwrap());
        assert!(!GraphParams::new(2, 1, 2, 1).unwrap().is_bipartite(Budget::DEFAULT).unwrap());
    }
}
