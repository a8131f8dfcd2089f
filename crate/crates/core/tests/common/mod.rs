#![allow(dead_code)]

use std::f64::consts::PI;

use graphent::optimizer::{
    optimize_with_escalation, restart_init, run_restart, stationarity_residual,
};
use graphent::state::{
    apply_lc_unitary, apply_stabilizer, graph_state_vector, product_state_vector,
};
use graphent::{optimize, Graph, OptimizerConfig, ProductState, UpdateMode, VertexSet};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if bits.get(k).copied().unwrap_or(false) {
                edges.push((a, b));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let bits: Vec<bool> = (0..n * (n - 1) / 2).map(|_| rng.gen_bool(0.5)).collect();
    graph_from_bits(n, &bits)
}

pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let g = random_graph(rng, n);
        if g.is_connected() {
            return g;
        }
    }
}

/// Every labeled graph on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let m = n * (n - 1) / 2;
    (0..1u32 << m)
        .map(|code| {
            let bits: Vec<bool> = (0..m).map(|k| code >> k & 1 == 1).collect();
            graph_from_bits(n, &bits)
        })
        .collect()
}

pub fn cfg(restarts: usize, seed: u64) -> OptimizerConfig<f64> {
    OptimizerConfig::default()
        .with_restarts(restarts)
        .with_seed(seed)
}

pub fn check_eigen(g: &Graph) -> Check {
    let psi = graph_state_vector::<f64>(g);
    for a in 0..g.n() {
        let k = apply_stabilizer(g, a, &psi).map_err(|e| e.to_string())?;
        let d = k.max_abs_diff(&psi);
        if d > 1e-12 {
            return Err(format!("K_{a} eigencheck off by {d:e} on {g:?}"));
        }
    }
    Ok(())
}

pub fn check_normalization(g: &Graph, seed: u64) -> Check {
    let psi = graph_state_vector::<f64>(g);
    let p = restart_init::<f64>(g.n(), seed, 0, None);
    let phi = product_state_vector(&p);
    for (what, v) in [("graph", psi.norm_sqr()), ("product", phi.norm_sqr())] {
        if (v - 1.0).abs() > 1e-12 {
            return Err(format!("{what} state norm {v} on {g:?}"));
        }
    }
    Ok(())
}

pub fn check_monotone(g: &Graph, seed: u64) -> Check {
    let c = cfg(1, seed).with_rounds(40);
    let init = restart_init::<f64>(g.n(), seed, 0, None);
    let rec = run_restart(g, &init, &c).map_err(|e| e.to_string())?;
    for w in rec.fidelity_trace.windows(2) {
        if w[1] < w[0] - 1e-12 {
            return Err(format!("fidelity dropped {} -> {} on {g:?}", w[0], w[1]));
        }
    }
    Ok(())
}

pub fn check_orthogonality(g: &Graph, seed: u64) -> Check {
    let c = cfg(1, seed);
    let init = restart_init::<f64>(g.n(), seed, 0, None);
    let rec = run_restart(g, &init, &c).map_err(|e| e.to_string())?;
    if !rec.converged {
        return Ok(());
    }
    let r = stationarity_residual(g, &rec.final_state, 0).map_err(|e| e.to_string())?;
    if r > 1e-8 {
        return Err(format!("residual {r:e} at convergence on {g:?}"));
    }
    Ok(())
}

pub fn check_lc_invariance(g: &Graph, a: usize, seed: u64) -> Check {
    let h = g.local_complement(a).map_err(|e| e.to_string())?;
    let e1 = optimize(g, &cfg(200, seed))
        .map_err(|e| e.to_string())?
        .entanglement;
    let e2 = optimize(&h, &cfg(200, seed ^ 1))
        .map_err(|e| e.to_string())?
        .entanglement;
    if (e1 - e2).abs() > 1e-6 {
        return Err(format!("E {e1} vs {e2} after LC at {a} on {g:?}"));
    }
    Ok(())
}

pub fn check_subgraph_recursion(g: &Graph, seed: u64) -> Check {
    let e = optimize(g, &cfg(200, seed))
        .map_err(|e| e.to_string())?
        .entanglement;
    let mut best_sub = f64::INFINITY;
    for v in 0..g.n() {
        let s = g.delete_vertex(v).map_err(|e| e.to_string())?;
        let es = optimize(&s, &cfg(200, seed + v as u64))
            .map_err(|e| e.to_string())?
            .entanglement;
        best_sub = best_sub.min(es);
    }
    if e > best_sub + 1.0 + 1e-9 {
        return Err(format!(
            "E = {e} exceeds min subgraph {best_sub} + 1 on {g:?}"
        ));
    }
    Ok(())
}

/// `|V_a G⟩` equals `|τ_a(G)⟩` up to a global phase.
pub fn check_lc_unitary(g: &Graph, a: usize) -> Check {
    let psi = graph_state_vector::<f64>(g);
    let v = apply_lc_unitary(g, a, &psi).map_err(|e| e.to_string())?;
    let target = graph_state_vector::<f64>(&g.local_complement(a).map_err(|e| e.to_string())?);
    let ip = target.inner(&v).map_err(|e| e.to_string())?.norm();
    if (ip - 1.0).abs() > 1e-12 {
        return Err(format!("|<tau_a G|V_a G>| = {ip} at {a} on {g:?}"));
    }
    Ok(())
}

/// Max of `|⟨G|φ⟩|²` over a grid with step `π/120` in `θ ∈ [0, π/2]` and
/// `φ ∈ [0, 2π)` on qubits `0..n−1`; the last qubit is maximized in closed
/// form (`|h|² + |g|²`), which can only raise the grid value.
pub fn grid_oracle(g: &Graph) -> f64 {
    let n = g.n();
    let step = PI / 120.0;
    let mut grid = Vec::new();
    for t in 0..=60 {
        let th = t as f64 * step;
        for k in 0..240 {
            let ph = k as f64 * step;
            grid.push([
                Complex64::new(th.cos(), 0.0),
                Complex64::from_polar(th.sin(), ph),
            ]);
        }
    }
    // sign of basis state mu, bit j of mu = qubit j
    let sign = |mu: usize| -> f64 {
        let mut c = 0;
        for a in 0..n {
            for b in a + 1..n {
                if g.has_edge(a, b) && mu >> a & 1 == 1 && mu >> b & 1 == 1 {
                    c += 1;
                }
            }
        }
        if c % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    };
    let last = n - 1;
    let norm = 1.0 / (1usize << n) as f64;
    let hg = |amps: &[&[Complex64; 2]]| -> f64 {
        let mut h = Complex64::new(0.0, 0.0);
        let mut gg = Complex64::new(0.0, 0.0);
        for mu in 0..1usize << last {
            let mut prod = Complex64::new(1.0, 0.0);
            for (j, a) in amps.iter().enumerate() {
                prod *= a[mu >> j & 1];
            }
            h += prod * sign(mu);
            gg += prod * sign(mu | 1 << last);
        }
        (h.norm_sqr() + gg.norm_sqr()) * norm
    };
    match n {
        1 => hg(&[]),
        2 => grid.iter().map(|a| hg(&[a])).fold(0.0, f64::max),
        3 => {
            // f = a1[0]·(A, C) + a1[1]·(B, D) with A..D fixed by qubit 0
            let s: Vec<f64> = (0..8).map(sign).collect();
            let mut best: f64 = 0.0;
            for a0 in &grid {
                let coef = |m1: usize, m2: usize| {
                    a0[0] * s[m1 << 1 | m2 << 2] + a0[1] * s[1 | m1 << 1 | m2 << 2]
                };
                let (ca, cb, cc, cd) = (coef(0, 0), coef(1, 0), coef(0, 1), coef(1, 1));
                for a1 in &grid {
                    let h = a1[0] * ca + a1[1] * cb;
                    let gg = a1[0] * cc + a1[1] * cd;
                    best = best.max(h.norm_sqr() + gg.norm_sqr());
                }
            }
            best * norm
        }
        _ => panic!("grid oracle is for n <= 3"),
    }
}

pub fn check_grid(g: &Graph, oracle: f64, seed: u64) -> Check {
    let f = optimize(g, &cfg(20, seed))
        .map_err(|e| e.to_string())?
        .best_f;
    if (f - oracle).abs() > 2e-3 || f < oracle - 2e-3 {
        return Err(format!("optimize F {f} vs grid {oracle} on {g:?}"));
    }
    Ok(())
}

pub fn check_per_round_agrees(g: &Graph, seed: u64) -> Check {
    let a = optimize(g, &cfg(300, seed))
        .map_err(|e| e.to_string())?
        .best_f;
    let b = optimize_with_escalation(g, &cfg(300, seed).with_mode(UpdateMode::PerRound))
        .map_err(|e| e.to_string())?
        .best_f;
    if (a - b).abs() > 1e-12 {
        return Err(format!("sequential {a} vs per-round {b} on {g:?}"));
    }
    Ok(())
}

pub fn vertex_set(vs: &[usize]) -> VertexSet {
    VertexSet::from_vertices(vs.iter().copied())
}

pub fn product(p: &ProductState<f64>) -> Vec<Complex64> {
    product_state_vector(p).amplitudes().to_vec()
}
