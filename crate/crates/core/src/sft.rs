//! Transition-graph representation and structural analysis of subshifts of
//! finite type.
//!
//! States are dense integer indices; external names live in side tables kept
//! by callers. The alphabet of the shift is the edge set, and the transition
//! matrix is 0-1: multi-edges are rejected here (labeled multigraphs live in
//! [`crate::automaton`] and convert through an edge shift).

use crate::config::{Budget, Tolerances};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};

pub type StateId = usize;
pub type EdgeId = usize;

/// A subshift of finite type given by a finite directed graph without
/// multi-edges, equivalently a 0-1 transition matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sft {
    state_count: usize,
    edges: Vec<(StateId, StateId)>,
    out: Vec<Vec<EdgeId>>,
    into: Vec<Vec<EdgeId>>,
}

impl Sft {
    pub fn new(state_count: usize, edges: Vec<(StateId, StateId)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= state_count || v >= state_count {
                return Err(Error::InvalidSft(format!(
                    "edge ({u},{v}) out of range for {state_count} states"
                )));
            }
            if !seen.insert((u, v)) {
                return Err(Error::InvalidSft(format!("duplicate edge ({u},{v})")));
            }
        }
        let mut out = vec![Vec::new(); state_count];
        let mut into = vec![Vec::new(); state_count];
        for (i, &(u, v)) in edges.iter().enumerate() {
            out[u].push(i);
            into[v].push(i);
        }
        Ok(Sft {
            state_count,
            edges,
            out,
            into,
        })
    }

    /// Build from a 0-1 matrix (row = from, column = to).
    pub fn from_matrix(rows: &[Vec<u8>]) -> Result<Self> {
        let k = rows.len();
        let mut edges = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidSft("matrix is not square".into()));
            }
            for (j, &a) in row.iter().enumerate() {
                match a {
                    0 => {}
                    1 => edges.push((i, j)),
                    _ => return Err(Error::InvalidSft("matrix entries must be 0 or 1".into())),
                }
            }
        }
        Sft::new(k, edges)
    }

    /// The full shift on `k` symbols (all k*k edges).
    pub fn full_shift(k: usize) -> Self {
        let edges = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .collect();
        Sft::new(k, edges).expect("full shift is valid")
    }

    /// The directed n-cycle.
    pub fn cycle_graph(n: usize) -> Self {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Sft::new(n, edges).expect("cycle is valid")
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(StateId, StateId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (StateId, StateId) {
        self.edges[e]
    }

    pub fn out_edges(&self, s: StateId) -> &[EdgeId] {
        &self.out[s]
    }

    pub fn in_edges(&self, s: StateId) -> &[EdgeId] {
        &self.into[s]
    }

    /// Number of closed edge paths of length n, tr(A^n), as a big integer.
    pub fn trace_power(&self, n: usize) -> BigUint {
        let k = self.state_count;
        if k == 0 || n == 0 {
            return BigUint::zero();
        }
        // Column DP per starting state keeps this polynomial in k.
        let mut total = BigUint::zero();
        for s in 0..k {
            let mut v = vec![BigUint::zero(); k];
            v[s] = BigUint::one();
            for _ in 0..n {
                let mut nv = vec![BigUint::zero(); k];
                for (i, val) in v.iter().enumerate() {
                    if val.is_zero() {
                        continue;
                    }
                    for &e in &self.out[i] {
                        let (_, j) = self.edges[e];
                        nv[j] += val;
                    }
                }
                v = nv;
            }
            total += &v[s];
        }
        total
    }

    pub fn is_irreducible(&self) -> bool {
        if self.state_count == 0 {
            return false;
        }
        let scc = scc_decompose_with(self, &Tolerances::default());
        scc.components.len() == 1 && self.edge_count() > 0
    }

    pub fn is_aperiodic(&self) -> bool {
        self.is_irreducible()
            && primitivity_of_states(self, &(0..self.state_count).collect::<Vec<_>>())
                .map(|p| p.aperiodic)
                .unwrap_or(false)
    }
}

/// Strongly connected components with per-component spectral radii.
#[derive(Debug, Clone)]
pub struct SccDecomposition {
    /// Component id per state.
    pub component_of: Vec<usize>,
    /// States in each component.
    pub components: Vec<Vec<StateId>>,
    /// Condensation DAG: edges between component ids.
    pub dag: Vec<Vec<usize>>,
    /// Spectral radius of each component's sub-matrix.
    pub spectral_radius: Vec<f64>,
    /// Components attaining the global maximum radius.
    pub maximal: Vec<usize>,
}

pub fn scc_decompose(sft: &Sft) -> SccDecomposition {
    scc_decompose_with(sft, &Tolerances::default())
}

pub fn scc_decompose_with(sft: &Sft, tol: &Tolerances) -> SccDecomposition {
    let comps = tarjan(sft);
    let n = sft.state_count();
    let mut component_of = vec![usize::MAX; n];
    for (cid, comp) in comps.iter().enumerate() {
        for &v in comp {
            component_of[v] = cid;
        }
    }
    let mut dag = vec![Vec::new(); comps.len()];
    for &(u, v) in sft.edges() {
        let (cu, cv) = (component_of[u], component_of[v]);
        if cu != cv {
            dag[cu].push(cv);
        }
    }
    for row in &mut dag {
        row.sort_unstable();
        row.dedup();
    }
    let spectral_radius: Vec<f64> = comps
        .iter()
        .map(|comp| component_spectral_radius(sft, comp, tol))
        .collect();
    let global = spectral_radius.iter().cloned().fold(0.0f64, f64::max);
    let maximal = spectral_radius
        .iter()
        .enumerate()
        .filter(|(_, &r)| global > 0.0 && (global - r).abs() <= tol.spectral_rel.sqrt() * global)
        .map(|(i, _)| i)
        .collect();
    SccDecomposition {
        component_of,
        components: comps,
        dag,
        spectral_radius,
        maximal,
    }
}

fn tarjan(sft: &Sft) -> Vec<Vec<StateId>> {
    // Iterative Tarjan; recursion depth is unbounded on long chains.
    let n = sft.state_count();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0usize;
    let mut call: Vec<(StateId, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut ei)) = call.last_mut() {
            if *ei == 0 {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if *ei < sft.out[v].len() {
                let e = sft.out[v][*ei];
                *ei += 1;
                let (_, w) = sft.edges[e];
                if index[w] == usize::MAX {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
                call.pop();
                if let Some(&mut (u, _)) = call.last_mut() {
                    low[u] = low[u].min(low[v]);
                }
            }
        }
    }
    comps
}

/// Spectral radius of the adjacency sub-matrix on `states`.
///
/// Power iteration on A+I: same Perron vector, eigenvalue shifted by one and
/// strictly dominant, so periodic components converge too.
fn component_spectral_radius(sft: &Sft, states: &[StateId], tol: &Tolerances) -> f64 {
    let budget = Budget::default();
    let m = states.len();
    let mut local = vec![usize::MAX; sft.state_count()];
    for (i, &s) in states.iter().enumerate() {
        local[s] = i;
    }
    let mut has_edge = false;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &s in states {
        for &e in sft.out_edges(s) {
            let (_, t) = sft.edge(e);
            if local[t] != usize::MAX {
                adj[local[s]].push(local[t]);
                has_edge = true;
            }
        }
    }
    if !has_edge {
        return 0.0;
    }
    let mut v = vec![1.0f64; m];
    let mut lambda = 0.0f64;
    for _ in 0..budget.power_iter {
        let mut nv = vec![0.0f64; m];
        for i in 0..m {
            let mut acc = v[i]; // the +I shift
            for &j in &adj[i] {
                acc += v[j];
            }
            nv[i] = acc;
        }
        let norm = nv.iter().cloned().fold(0.0f64, f64::max);
        if norm == 0.0 {
            return 0.0;
        }
        for x in &mut nv {
            *x /= norm;
        }
        let new_lambda = norm;
        v = nv;
        if (new_lambda - lambda).abs() <= tol.spectral_rel * new_lambda.abs() {
            return new_lambda - 1.0;
        }
        lambda = new_lambda;
    }
    lambda - 1.0
}

/// Period, primitivity index and the state classes mod p of one strongly
/// connected component.
#[derive(Debug, Clone)]
pub struct PrimitivityInfo {
    /// gcd of cycle lengths in the component.
    pub period: usize,
    /// Least N with all entries of A^N positive; only defined when period 1.
    pub index: Option<usize>,
    pub aperiodic: bool,
    /// Class of each component state mod `period`, in component-local order.
    pub classes: Vec<usize>,
}

pub fn primitivity(sft: &Sft, scc: &SccDecomposition, component: usize) -> Result<PrimitivityInfo> {
    primitivity_of_states(sft, &scc.components[component])
}

fn primitivity_of_states(sft: &Sft, states: &[StateId]) -> Result<PrimitivityInfo> {
    let m = states.len();
    let mut local = vec![usize::MAX; sft.state_count()];
    for (i, &s) in states.iter().enumerate() {
        local[s] = i;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut has_edge = false;
    for &s in states {
        for &e in sft.out_edges(s) {
            let (_, t) = sft.edge(e);
            if local[t] != usize::MAX {
                adj[local[s]].push(local[t]);
                has_edge = true;
            }
        }
    }
    if !has_edge {
        return Err(Error::AcyclicComponent);
    }

    // Period = gcd over edges of (level(u) + 1 - level(v)) for BFS levels.
    let mut level = vec![i64::MIN; m];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut g: i64 = 0;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if level[v] == i64::MIN {
                level[v] = level[u] + 1;
                queue.push_back(v);
            } else {
                g = num_integer::gcd(g, level[u] + 1 - level[v]);
            }
        }
    }
    let period = g.unsigned_abs() as usize;
    let period = if period == 0 { 1 } else { period };
    let classes: Vec<usize> = level
        .iter()
        .map(|&l| (l.rem_euclid(period as i64)) as usize)
        .collect();

    if period > 1 {
        return Ok(PrimitivityInfo {
            period,
            index: None,
            aperiodic: false,
            classes,
        });
    }

    // Primitivity index by boolean matrix powering, capped by Wielandt's
    // bound (k-1)^2 + 1.
    let cap = (m.saturating_sub(1)).pow(2) + 1;
    let words = m.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = vec![vec![0u64; words]; m];
    for (i, row) in adj.iter().enumerate() {
        for &j in row {
            rows[i][j / 64] |= 1u64 << (j % 64);
        }
    }
    let base = rows.clone();
    let all_ones = |rows: &Vec<Vec<u64>>| {
        rows.iter().all(|r| {
            (0..m).all(|j| r[j / 64] >> (j % 64) & 1 == 1)
        })
    };
    let mut n = 1usize;
    while n <= cap {
        if all_ones(&rows) {
            return Ok(PrimitivityInfo {
                period: 1,
                index: Some(n),
                aperiodic: true,
                classes,
            });
        }
        // rows <- rows * base (boolean)
        let mut next = vec![vec![0u64; words]; m];
        for i in 0..m {
            for j in 0..m {
                if rows[i][j / 64] >> (j % 64) & 1 == 1 {
                    for w in 0..words {
                        next[i][w] |= base[j][w];
                    }
                }
            }
        }
        rows = next;
        n += 1;
    }
    Err(Error::InvalidSft(
        "primitivity index exceeded Wielandt bound; component not primitive".into(),
    ))
}

/// A component restriction with maps back to the parent shift.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub sft: Sft,
    /// New state index -> parent state index.
    pub state_map: Vec<StateId>,
    /// New edge index -> parent edge index.
    pub edge_map: Vec<EdgeId>,
}

pub fn restrict(sft: &Sft, scc: &SccDecomposition, component: usize) -> Restriction {
    let states = &scc.components[component];
    let mut local = vec![usize::MAX; sft.state_count()];
    for (i, &s) in states.iter().enumerate() {
        local[s] = i;
    }
    let mut edges = Vec::new();
    let mut edge_map = Vec::new();
    for (eid, &(u, v)) in sft.edges().iter().enumerate() {
        if local[u] != usize::MAX && local[v] != usize::MAX {
            edges.push((local[u], local[v]));
            edge_map.push(eid);
        }
    }
    let restricted = Sft::new(states.len(), edges).expect("restriction of valid sft");
    Restriction {
        sft: restricted,
        state_map: states.clone(),
        edge_map,
    }
}

/// One sigma^p-invariant class of the power shift, with each new edge
/// remembering its p-step path of parent edges.
#[derive(Debug, Clone)]
pub struct PowerSubshift {
    pub sft: Sft,
    /// New state -> parent state.
    pub state_map: Vec<StateId>,
    /// New edge -> the p parent edges it traverses.
    pub edge_paths: Vec<Vec<EdgeId>>,
    pub p: usize,
}

/// Power subshift: adjacency A^p restricted to one invariant class.
///
/// Parallel p-step paths between a pair of states make A^p a multigraph;
/// the returned shift is its edge shift in that case (states = p-paths'
/// distinct (from,to,path) triples collapse to distinct edges), realized by
/// keeping one Sft state per class state and splitting on paths via the
/// edge shift conversion when needed. Here we keep it exact by building the
/// path multigraph and converting through distinct path identities.
pub fn power_subshift(sft: &Sft, p: usize) -> Result<PowerSubshift> {
    if p == 0 {
        return Err(Error::InvalidSft("p must be positive".into()));
    }
    let scc = scc_decompose(sft);
    if scc.components.len() != 1 {
        return Err(Error::NotIrreducible(
            "power_subshift expects a transitive shift".into(),
        ));
    }
    let prim = primitivity(sft, &scc, 0)?;
    if prim.period % p != 0 {
        return Err(Error::InvalidSft(format!(
            "p = {p} does not divide the period {}",
            prim.period
        )));
    }

    // States of class 0, paths of length p between them.
    let class_states: Vec<StateId> = (0..sft.state_count())
        .filter(|&s| prim.classes[s] == 0)
        .collect();
    let mut local = vec![usize::MAX; sft.state_count()];
    for (i, &s) in class_states.iter().enumerate() {
        local[s] = i;
    }
    let mut multi_edges: Vec<(usize, usize, Vec<EdgeId>)> = Vec::new();
    for (i, &s) in class_states.iter().enumerate() {
        // DFS over p-step paths from s.
        let mut stack: Vec<(StateId, Vec<EdgeId>)> = vec![(s, Vec::new())];
        while let Some((v, path)) = stack.pop() {
            if path.len() == p {
                debug_assert_eq!(prim.classes[v], 0);
                multi_edges.push((i, local[v], path));
                continue;
            }
            for &e in sft.out_edges(v) {
                let (_, t) = sft.edge(e);
                let mut np = path.clone();
                np.push(e);
                stack.push((t, np));
            }
        }
    }

    // Multigraph -> Sft. If simple, states are the class states; otherwise
    // pass to the edge shift on the p-paths.
    let mut seen = std::collections::HashSet::new();
    let simple = multi_edges.iter().all(|&(u, v, _)| seen.insert((u, v)));
    if simple {
        let edges: Vec<(usize, usize)> = multi_edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let sub = Sft::new(class_states.len(), edges)?;
        Ok(PowerSubshift {
            sft: sub,
            state_map: class_states,
            edge_paths: multi_edges.into_iter().map(|(_, _, p)| p).collect(),
            p,
        })
    } else {
        // Edge shift: one state per p-path, transition when head meets tail.
        let m = multi_edges.len();
        let mut edges = Vec::new();
        let mut edge_paths = Vec::new();
        for (a, &(_, va, _)) in multi_edges.iter().enumerate() {
            for (b, &(ub, _, _)) in multi_edges.iter().enumerate() {
                if va == ub {
                    edges.push((a, b));
                    edge_paths.push(multi_edges[b].2.clone());
                }
            }
        }
        let sub = Sft::new(m, edges)?;
        let state_map = multi_edges
            .iter()
            .map(|&(u, _, _)| class_states[u])
            .collect();
        Ok(PowerSubshift {
            sft: sub,
            state_map,
            edge_paths,
            p,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_2_shift_one_component_radius_2() {
        let sft = Sft::full_shift(2);
        let scc = scc_decompose(&sft);
        assert_eq!(scc.components.len(), 1);
        assert!((scc.spectral_radius[0] - 2.0).abs() < 1e-10);
        assert_eq!(scc.maximal, vec![0]);
    }

    #[test]
    fn two_disjoint_loops_both_maximal() {
        let sft = Sft::new(2, vec![(0, 0), (1, 1)]).unwrap();
        let scc = scc_decompose(&sft);
        assert_eq!(scc.components.len(), 2);
        for r in &scc.spectral_radius {
            assert!((r - 1.0).abs() < 1e-10);
        }
        assert_eq!(scc.maximal.len(), 2);
    }

    #[test]
    fn self_loop_primitive_index_1() {
        let sft = Sft::new(1, vec![(0, 0)]).unwrap();
        let scc = scc_decompose(&sft);
        let p = primitivity(&sft, &scc, 0).unwrap();
        assert_eq!(p.period, 1);
        assert_eq!(p.index, Some(1));
        assert!(p.aperiodic);
    }

    #[test]
    fn two_cycle_period_2() {
        let sft = Sft::cycle_graph(2);
        let scc = scc_decompose(&sft);
        let p = primitivity(&sft, &scc, 0).unwrap();
        assert_eq!(p.period, 2);
        assert!(!p.aperiodic);
        assert_eq!(p.index, None);
    }

    #[test]
    fn acyclic_component_errors() {
        let sft = Sft::new(2, vec![(0, 1)]).unwrap();
        let scc = scc_decompose(&sft);
        // Each singleton component has no cycle.
        let c = scc.component_of[0];
        assert!(matches!(
            primitivity(&sft, &scc, c),
            Err(Error::AcyclicComponent)
        ));
    }

    #[test]
    fn trace_power_counts_closed_paths() {
        let sft = Sft::full_shift(2);
        assert_eq!(sft.trace_power(3), BigUint::from(8u32));
        let c2 = Sft::cycle_graph(2);
        assert_eq!(c2.trace_power(3), BigUint::zero());
        assert_eq!(c2.trace_power(4), BigUint::from(2u32));
    }

    #[test]
    fn restrict_identity_and_loops() {
        let sft = Sft::full_shift(2);
        let scc = scc_decompose(&sft);
        let r = restrict(&sft, &scc, 0);
        assert_eq!(r.sft.state_count(), 2);
        assert_eq!(r.sft.edge_count(), 4);

        let loops = Sft::new(2, vec![(0, 0), (1, 1)]).unwrap();
        let scc = scc_decompose(&loops);
        let r = restrict(&loops, &scc, 0);
        assert_eq!(r.sft.state_count(), 1);
        assert_eq!(r.sft.edge_count(), 1);
    }

    #[test]
    fn restrict_then_scc_is_single_component() {
        let sft = Sft::new(4, vec![(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)]).unwrap();
        let scc = scc_decompose(&sft);
        for c in 0..scc.components.len() {
            if scc.components[c].len() < 2 {
                continue;
            }
            let r = restrict(&sft, &scc, c);
            let inner = scc_decompose(&r.sft);
            assert_eq!(inner.components.len(), 1);
            assert_eq!(inner.components[0].len(), scc.components[c].len());
        }
    }

    #[test]
    fn power_of_2_cycle_is_loop() {
        let sft = Sft::cycle_graph(2);
        let p = power_subshift(&sft, 2).unwrap();
        assert_eq!(p.sft.state_count(), 1);
        assert_eq!(p.sft.edge_count(), 1);
        assert_eq!(p.edge_paths[0].len(), 2);
    }

    #[test]
    fn power_of_4_cycle_is_2_cycle() {
        let sft = Sft::cycle_graph(4);
        let p = power_subshift(&sft, 2).unwrap();
        assert_eq!(p.sft.state_count(), 2);
        assert_eq!(p.sft.edge_count(), 2);
    }

    #[test]
    fn power_rejects_bad_p() {
        let sft = Sft::cycle_graph(3);
        assert!(power_subshift(&sft, 2).is_err());
    }

    /// Brute-force gcd of cycle lengths for cross-checking the period.
    fn brute_period(sft: &Sft) -> usize {
        let mut g = 0usize;
        for n in 1..=sft.state_count() * 2 {
            if sft.trace_power(n) > BigUint::zero() {
                g = num_integer::gcd(g, n);
            }
        }
        g
    }

    #[test]
    fn power_of_period_2_graph_becomes_aperiodic() {
        // Bipartite-ish transitive graph of period 2.
        let sft = Sft::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 3), (3, 2), (2, 1), (1, 0)])
            .unwrap();
        assert_eq!(brute_period(&sft), 2);
        let p = power_subshift(&sft, 2).unwrap();
        let scc = scc_decompose(&p.sft);
        for c in 0..scc.components.len() {
            if let Ok(info) = primitivity(&p.sft, &scc, c) {
                assert_eq!(info.period, brute_period(&restrict(&p.sft, &scc, c).sft));
                assert!(info.aperiodic);
            }
        }
    }

    #[test]
    fn aperiodic_iff_gcd_one_on_small_graphs() {
        let graphs = vec![
            Sft::full_shift(2),
            Sft::full_shift(3),
            Sft::cycle_graph(3),
            Sft::new(3, vec![(0, 1), (1, 2), (2, 0), (0, 0)]).unwrap(),
        ];
        for g in graphs {
            let scc = scc_decompose(&g);
            let info = primitivity(&g, &scc, 0).unwrap();
            assert_eq!(info.aperiodic, brute_period(&g) == 1);
            if let Some(m) = info.index {
                // All entries of A^M positive, some entry of A^(M-1) zero.
                let k = g.state_count();
                let reach = |n: usize| -> Vec<Vec<bool>> {
                    let mut r = vec![vec![false; k]; k];
                    for i in 0..k {
                        r[i][i] = true;
                    }
                    for _ in 0..n {
                        let mut nr = vec![vec![false; k]; k];
                        for i in 0..k {
                            for j in 0..k {
                                if r[i][j] {
                                    for &e in g.out_edges(j) {
                                        nr[i][g.edge(e).1] = true;
                                    }
                                }
                            }
                        }
                        r = nr;
                    }
                    r
                };
                assert!(reach(m).iter().all(|row| row.iter().all(|&b| b)));
                if m > 0 {
                    assert!(!reach(m - 1).iter().all(|row| row.iter().all(|&b| b)));
                }
            }
        }
    }
}
