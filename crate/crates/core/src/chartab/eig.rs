//! Eigendecomposition of complex Hermitian matrices by cyclic Jacobi
//! rotations. Adequate for the class counts seen here (r <= 300), and
//! fully deterministic.

use num_complex::Complex64;

pub struct HermitianEig {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column t is the eigenvector of eigenvalues[t]; orthonormal.
    pub vectors: Vec<Vec<Complex64>>,
}

/// `a` is row-major n*n, Hermitian. Off-diagonal asymmetry is not checked.
pub fn hermitian_eig(a: &[Complex64], n: usize) -> HermitianEig {
    let mut m: Vec<Complex64> = a.to_vec();
    let mut v: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let fro: f64 = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let tol = 1e-15 * fro.max(1e-300);

    for _sweep in 0..200 {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| m[p * n + q].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = m[p * n + q];
                if g.norm() <= tol / (n as f64) {
                    continue;
                }
                // phase d makes the pivot real: d = e^{i arg(g)/2}
                let phi = g.arg();
                let d = Complex64::from_polar(1.0, phi / 2.0);
                let gr = g.norm();
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                // real rotation zeroing the (p,q) entry of [[app, gr],[gr, aqq]]:
                // with R = [[c,-s],[s,c]] the tangent solves t² - 2τt - 1 = 0
                let tau = (aqq - app) / (2.0 * gr);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = [[d c, -d s], [conj(d) s, conj(d) c]]
                let jpp = d * c;
                let jpq = -d * s;
                let jqp = d.conj() * s;
                let jqq = d.conj() * c;

                // columns: M <- M J
                for i in 0..n {
                    let mip = m[i * n + p];
                    let miq = m[i * n + q];
                    m[i * n + p] = mip * jpp + miq * jqp;
                    m[i * n + q] = mip * jpq + miq * jqq;
                }
                // rows: M <- J† M
                for i in 0..n {
                    let mpi = m[p * n + i];
                    let mqi = m[q * n + i];
                    m[p * n + i] = jpp.conj() * mpi + jqp.conj() * mqi;
                    m[q * n + i] = jpq.conj() * mpi + jqq.conj() * mqi;
                }
                // keep the diagonal exactly real and the pivot clean
                m[p * n + p] = Complex64::new(m[p * n + p].re, 0.0);
                m[q * n + q] = Complex64::new(m[q * n + q].re, 0.0);
                m[p * n + q] = Complex64::new(0.0, 0.0);
                m[q * n + p] = Complex64::new(0.0, 0.0);

                // V <- V J
                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = vip * jpp + viq * jqp;
                    v[i * n + q] = vip * jpq + viq * jqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[i * n + i]
            .re
            .partial_cmp(&m[j * n + j].re)
            .expect("finite eigenvalues")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[i * n + i].re).collect();
    let vectors: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&t| (0..n).map(|i| v[i * n + t]).collect())
        .collect();
    HermitianEig {
        eigenvalues,
        vectors,
    }
}
