//! Normalized Laplacian and Steklov spectra.
//!
//! The Laplacian is `I − D^{-1/2} A D^{-1/2}` with `A` counting edge
//! multiplicity and a loop adding 2 to its diagonal entry (and 2 to the
//! degree), so the quadratic form is `Σ_edges (f(u) − f(v))²` and loops drop
//! out. Steklov eigenvalues are those of the Dirichlet-to-Neumann map,
//! computed as the Schur complement `L_BB − L_BI L_II⁻¹ L_IB` of the
//! combinatorial Laplacian `L = D − A`.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use num_traits::Num;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{topology, MultiGraph, Role};
use crate::sampler::trial_rng;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Largest vertex count handled by dense decomposition; beyond it only
/// `λ1` is computed, iteratively.
pub const DENSE_LIMIT: usize = 2000;

fn require_positive_degrees(g: &MultiGraph) -> Result<()> {
    match (0..g.vertex_count()).find(|&v| g.degree(v) == 0) {
        Some(v) => Err(Error::IsolatedVertex(v)),
        None => Ok(()),
    }
}

pub fn adjacency_matrix(g: &MultiGraph) -> DMatrix<f64> {
    let nv = g.vertex_count();
    let mut a = DMatrix::zeros(nv, nv);
    for &(u, v) in g.edges() {
        if u == v {
            a[(u, u)] += 2.0;
        } else {
            a[(u, v)] += 1.0;
            a[(v, u)] += 1.0;
        }
    }
    a
}

pub fn normalized_laplacian(g: &MultiGraph) -> Result<DMatrix<f64>> {
    require_positive_degrees(g)?;
    let nv = g.vertex_count();
    let a = adjacency_matrix(g);
    let inv_sqrt: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    Ok(DMatrix::from_fn(nv, nv, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - a[(i, j)] * inv_sqrt[i] * inv_sqrt[j]
    }))
}

pub fn combinatorial_laplacian(g: &MultiGraph) -> DMatrix<f64> {
    let mut l = -adjacency_matrix(g);
    for v in 0..g.vertex_count() {
        l[(v, v)] += g.degree(v) as f64;
    }
    l
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaplacianSpectrum {
    /// Full ascending spectrum when `dense`; otherwise `[0, λ1]`.
    pub eigenvalues: Vec<f64>,
    pub lambda1: f64,
    pub dense: bool,
}

fn sorted_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

pub fn laplacian_spectrum(g: &MultiGraph) -> Result<LaplacianSpectrum> {
    require_positive_degrees(g)?;
    if g.vertex_count() < 2 {
        return Err(Error::InvalidArgument("need at least two vertices".into()));
    }
    if g.vertex_count() <= DENSE_LIMIT {
        let (values, _) = sorted_eigen(normalized_laplacian(g)?);
        let lambda1 = values[1];
        Ok(LaplacianSpectrum { eigenvalues: values, lambda1, dense: true })
    } else {
        let (lambda1, _) = lambda1_lanczos(g)?;
        Ok(LaplacianSpectrum { eigenvalues: vec![0.0, lambda1], lambda1, dense: false })
    }
}

/// `λ1` and a corresponding eigenvector of the normalized Laplacian.
pub fn fiedler_pair(g: &MultiGraph) -> Result<(f64, Vec<f64>)> {
    require_positive_degrees(g)?;
    if g.vertex_count() < 2 {
        return Err(Error::InvalidArgument("need at least two vertices".into()));
    }
    if g.vertex_count() <= DENSE_LIMIT {
        let (values, vectors) = sorted_eigen(normalized_laplacian(g)?);
        Ok((values[1], vectors.column(1).iter().copied().collect()))
    } else {
        lambda1_lanczos(g)
    }
}

/// `λ1` by Lanczos with full reorthogonalization on `M = D^{-1/2} A D^{-1/2}`
/// restricted to the complement of `D^{1/2}·1`: the top Ritz value `θ` of
/// that restriction gives `λ1 = 1 − θ`.
pub fn lambda1_lanczos(g: &MultiGraph) -> Result<(f64, Vec<f64>)> {
    require_positive_degrees(g)?;
    let nv = g.vertex_count();
    if nv < 2 {
        return Err(Error::InvalidArgument("need at least two vertices".into()));
    }
    let inv_sqrt: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let total: f64 = g.degrees().iter().map(|&d| d as f64).sum();
    let null = DVector::from_iterator(nv, g.degrees().iter().map(|&d| (d as f64 / total).sqrt()));
    let apply = |x: &DVector<f64>| -> DVector<f64> {
        let mut y = DVector::zeros(nv);
        for &(u, v) in g.edges() {
            let w = inv_sqrt[u] * inv_sqrt[v];
            if u == v {
                y[u] += 2.0 * w * x[u];
            } else {
                y[u] += w * x[v];
                y[v] += w * x[u];
            }
        }
        y
    };
    let project = |x: &mut DVector<f64>| {
        let c = null.dot(x);
        x.axpy(-c, &null, 1.0);
    };

    let mut rng = trial_rng(0x5eed_1a2c, 0);
    let mut q = DVector::from_fn(nv, |_, _| rng.random::<f64>() - 0.5);
    project(&mut q);
    q /= q.norm();

    let max_steps = (nv - 1).min(1500);
    let mut basis: Vec<DVector<f64>> = vec![q];
    let mut alphas = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut last: Option<(f64, DVector<f64>)> = None;

    for j in 0..max_steps {
        let mut w = apply(&basis[j]);
        project(&mut w);
        let alpha = basis[j].dot(&w);
        alphas.push(alpha);
        // full reorthogonalization, twice for stability
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&w);
                w.axpy(-c, b, 1.0);
            }
            project(&mut w);
        }
        let beta = w.norm();

        let steps = alphas.len();
        if steps % 10 == 0 || beta < 1e-12 || steps == max_steps {
            let t = DMatrix::from_fn(steps, steps, |r, c| {
                if r == c {
                    alphas[r]
                } else if r + 1 == c {
                    betas[r]
                } else if c + 1 == r {
                    betas[c]
                } else {
                    0.0
                }
            });
            let (vals, vecs) = sorted_eigen(t);
            let theta = vals[steps - 1];
            let s = vecs.column(steps - 1);
            let residual = (beta * s[steps - 1]).abs();
            let mut ritz = DVector::zeros(nv);
            for (i, b) in basis.iter().enumerate() {
                ritz.axpy(s[i], b, 1.0);
            }
            last = Some((theta, ritz));
            if residual < 1e-10 || beta < 1e-12 {
                break;
            }
        }
        if beta < 1e-12 {
            break;
        }
        betas.push(beta);
        basis.push(w / beta);
    }
    let (theta, ritz) = last.ok_or_else(|| Error::Solver("Lanczos produced no Ritz pair".into()))?;
    Ok((1.0 - theta, ritz.iter().copied().collect()))
}

fn boundary_split(g: &MultiGraph) -> (Vec<usize>, Vec<usize>) {
    let interior = (0..g.vertex_count()).filter(|&v| g.role(v) == Role::Interior).collect();
    let boundary = (0..g.vertex_count()).filter(|&v| g.role(v) == Role::Boundary).collect();
    (interior, boundary)
}

/// The `|δG|` Steklov eigenvalues, ascending, with `σ0 = 0`.
pub fn steklov_spectrum(g: &MultiGraph) -> Result<Vec<f64>> {
    let (interior, boundary) = boundary_split(g);
    if boundary.is_empty() {
        return Err(Error::TooFewBoundary { found: 0, needed: 1 });
    }
    g.require_connected()?;
    let l = combinatorial_laplacian(g);
    let ni = interior.len();
    let nb = boundary.len();
    let l_bb = DMatrix::from_fn(nb, nb, |r, c| l[(boundary[r], boundary[c])]);
    let schur = if ni == 0 {
        l_bb
    } else {
        let l_ii = DMatrix::from_fn(ni, ni, |r, c| l[(interior[r], interior[c])]);
        let l_ib = DMatrix::from_fn(ni, nb, |r, c| l[(interior[r], boundary[c])]);
        let chol = Cholesky::new(l_ii).ok_or(Error::SingularInterior)?;
        let x = chol.solve(&l_ib);
        l_bb - l_ib.transpose() * x
    };
    let sym = (&schur + schur.transpose()) * 0.5;
    let (values, _) = sorted_eigen(sym);
    if values.len() > 1 && values[1] <= DEFAULT_TOL {
        return Err(Error::Solver(format!(
            "sigma1 = {:e} on a connected graph",
            values[1]
        )));
    }
    Ok(values)
}

/// `Σ_edges (f(u) − f(v))² / Σ_{x ∈ δG} f(x)²`, generic over exact and
/// floating arithmetic. Loops contribute nothing.
pub fn rayleigh_quotient<T>(g: &MultiGraph, f: &[T]) -> Result<T>
where
    T: Num + Clone,
{
    if f.len() != g.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "function has {} values for {} vertices",
            f.len(),
            g.vertex_count()
        )));
    }
    let mut num = T::zero();
    for &(u, v) in g.edges() {
        let d = f[u].clone() - f[v].clone();
        num = num + d.clone() * d;
    }
    let mut den = T::zero();
    for v in g.boundary_vertices() {
        den = den + f[v].clone() * f[v].clone();
    }
    if den.is_zero() {
        return Err(Error::ZeroBoundaryNorm);
    }
    Ok(num / den)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominationReport {
    pub holds: bool,
    pub sigma: Vec<f64>,
    pub lambda: Vec<f64>,
    /// `min_i (σ_i − λ_i)`.
    pub worst_margin: f64,
    pub tol: f64,
}

/// Checks `σ_i ≥ λ_i − tol` for `0 ≤ i < |δG|`.
pub fn verify_domination(g: &MultiGraph) -> Result<DominationReport> {
    let sigma = steklov_spectrum(g)?;
    let spectrum = laplacian_spectrum(g)?;
    if !spectrum.dense {
        return Err(Error::GuardExceeded {
            what: "domination check vertex count",
            size: g.vertex_count() as u128,
            guard: DENSE_LIMIT as u128,
        });
    }
    let lambda: Vec<f64> = spectrum.eigenvalues[..sigma.len()].to_vec();
    let worst_margin = sigma
        .iter()
        .zip(&lambda)
        .map(|(s, l)| s - l)
        .fold(f64::INFINITY, f64::min);
    Ok(DominationReport {
        holds: worst_margin >= -DEFAULT_TOL,
        sigma,
        lambda,
        worst_margin,
        tol: DEFAULT_TOL,
    })
}

/// Serialized as `{chi, n, genus, connected, lambda, sigma, lambda1, sigma1, tol}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub chi: usize,
    pub n: usize,
    pub genus: Option<i64>,
    pub connected: bool,
    #[serde(rename = "lambda")]
    pub laplacian_eigs: Vec<f64>,
    #[serde(rename = "sigma")]
    pub steklov_eigs: Vec<f64>,
    pub lambda1: f64,
    pub sigma1: Option<f64>,
    pub tol: f64,
}

/// Laplacian part always; Steklov part when connected with `n ≥ 1`.
pub fn spectral_report(g: &MultiGraph) -> Result<SpectralReport> {
    let spectrum = laplacian_spectrum(g)?;
    let connected = g.is_connected();
    let steklov_eigs = if connected && g.boundary_count() >= 1 {
        steklov_spectrum(g)?
    } else {
        Vec::new()
    };
    Ok(SpectralReport {
        chi: g.interior_count(),
        n: g.boundary_count(),
        genus: topology(g).ok().map(|t| t.genus),
        connected,
        sigma1: steklov_eigs.get(1).copied(),
        laplacian_eigs: spectrum.eigenvalues,
        steklov_eigs,
        lambda1: spectrum.lambda1,
        tol: DEFAULT_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn star(n: usize) -> MultiGraph {
        MultiGraph::with_counts(1, n, (1..=n).map(|j| (0, j)).collect()).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len(), "{a:?} vs {b:?}");
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-9, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn closed_form_spectra() {
        let s = laplacian_spectrum(&star(3)).unwrap();
        assert_close(&s.eigenvalues, &[0.0, 1.0, 1.0, 2.0]);
        let theta = MultiGraph::with_counts(2, 0, vec![(0, 1); 3]).unwrap();
        assert_close(&laplacian_spectrum(&theta).unwrap().eigenvalues, &[0.0, 2.0]);
        let lp = MultiGraph::with_counts(1, 1, vec![(0, 0), (0, 1)]).unwrap();
        let s = laplacian_spectrum(&lp).unwrap();
        assert_close(&s.eigenvalues, &[0.0, 4.0 / 3.0]);
    }

    #[test]
    fn isolated_vertex_rejected() {
        let g = MultiGraph::with_counts(2, 0, vec![(0, 0)]).unwrap();
        assert_eq!(laplacian_spectrum(&g), Err(Error::IsolatedVertex(1)));
    }

    #[test]
    fn steklov_of_stars() {
        for n in [3, 5, 7] {
            let mut expected = vec![1.0; n];
            expected[0] = 0.0;
            assert_close(&steklov_spectrum(&star(n)).unwrap(), &expected);
        }
        let lp = MultiGraph::with_counts(1, 1, vec![(0, 0), (0, 1)]).unwrap();
        assert_close(&steklov_spectrum(&lp).unwrap(), &[0.0]);
    }

    #[test]
    fn steklov_preconditions() {
        let k4 = MultiGraph::with_counts(4, 0, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(matches!(steklov_spectrum(&k4), Err(Error::TooFewBoundary { .. })));
        let two_stars = MultiGraph::with_counts(
            2,
            6,
            vec![(0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)],
        )
        .unwrap();
        assert_eq!(steklov_spectrum(&two_stars), Err(Error::Disconnected));
    }

    #[test]
    fn rayleigh_examples() {
        let g = star(3);
        let f = [-1.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0];
        assert!((rayleigh_quotient::<f64>(&g, &f).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(rayleigh_quotient(&g, &[0.0, 1.0, -1.0, 0.0]).unwrap(), 1.0);
        assert_eq!(rayleigh_quotient(&g, &[2.0; 4]).unwrap(), 0.0);
        assert_eq!(rayleigh_quotient(&g, &[1.0, 0.0, 0.0, 0.0]), Err(Error::ZeroBoundaryNorm));

        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        let exact = [r(-1, 3), r(2, 3), r(-1, 3), r(-1, 3)];
        assert_eq!(rayleigh_quotient(&g, &exact).unwrap(), r(3, 2));
    }

    #[test]
    fn domination_on_star_and_loop() {
        let rep = verify_domination(&star(3)).unwrap();
        assert!(rep.holds);
        assert_close(&rep.sigma, &[0.0, 1.0, 1.0]);
        assert_close(&rep.lambda, &[0.0, 1.0, 1.0]);
        let lp = MultiGraph::with_counts(1, 1, vec![(0, 0), (0, 1)]).unwrap();
        assert!(verify_domination(&lp).unwrap().holds);
    }

    #[test]
    fn lanczos_matches_dense() {
        use crate::graph::build_graph;
        use crate::sampler::{sample_partition, SampleConfig};
        let cfg = SampleConfig::new(150, 4, 1, 11).unwrap();
        let mut checked = 0;
        for t in 0..6 {
            let g = build_graph(&sample_partition(&cfg, t).unwrap());
            if !g.is_connected() {
                continue;
            }
            let dense = laplacian_spectrum(&g).unwrap().lambda1;
            let (iter, vec) = lambda1_lanczos(&g).unwrap();
            assert!((dense - iter).abs() < 1e-8, "{dense} vs {iter}");
            // the Ritz vector is an eigenvector of the normalized Laplacian
            let l = normalized_laplacian(&g).unwrap();
            let v = DVector::from_vec(vec);
            let res = (&l * &v - &v * iter).norm() / v.norm();
            assert!(res < 1e-6, "residual {res}");
            checked += 1;
        }
        assert!(checked >= 3);
    }

    #[test]
    fn report_serializes_with_documented_keys() {
        let json = serde_json::to_value(spectral_report(&star(3)).unwrap()).unwrap();
        for key in ["chi", "n", "genus", "connected", "lambda", "sigma", "lambda1", "sigma1", "tol"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["genus"], 0);
    }
}
