//! Decategorification: split Grothendieck action matrices, reachability
//! triviality, the Perron-Frobenius idempotent via power iteration, and the
//! cone-idempotent conditions on module actions. Floating point lives only
//! here; every reported value carries its tolerance.

use crate::fincat::Fo;
use crate::semicat::SemigroupData;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum DecatError {
    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum GrSide {
    Left,
    Right,
}

/// Integer matrix of the split Grothendieck action of F on one side:
/// column X lists the multiplicities of each indecomposable in F ⊠ X
/// (left) or X ⊠ F (right).
pub fn gr_action(s: &SemigroupData, f: &Fo, side: GrSide) -> Vec<Vec<u64>> {
    let n = s.n();
    let mut m = vec![vec![0u64; n]; n];
    for x in 0..n {
        let prod = match side {
            GrSide::Left => s.tensor_fo(f, &Fo::one(x)),
            GrSide::Right => s.tensor_fo(&Fo::one(x), f),
        };
        for &y in &prod.0 {
            m[y][x] += 1;
        }
    }
    m
}

/// The matrix of multiplication by the sum of all indecomposables.
pub fn gr_sum_matrix(s: &SemigroupData, side: GrSide) -> Vec<Vec<u64>> {
    let all = Fo((0..s.n()).collect());
    gr_action(s, &all, side)
}

/// True when, for every pair (F, G), some H ⊠ G ⊠ K contains F as a
/// summand; the witness names an unreachable pair otherwise.
pub fn jcell_trivial(s: &SemigroupData) -> (bool, Option<(usize, usize)>) {
    let n = s.n();
    let nl = gr_sum_matrix(s, GrSide::Left);
    let nr = gr_sum_matrix(s, GrSide::Right);
    for g in 0..n {
        // support of N_L * N_R * e_g without cancellation
        let mut v = vec![0u64; n];
        v[g] = 1;
        let mut w = vec![0u64; n];
        for y in 0..n {
            for x in 0..n {
                w[y] += nr[y][x].min(1) * v[x].min(1);
            }
        }
        let mut u = vec![0u64; n];
        for y in 0..n {
            for x in 0..n {
                u[y] += nl[y][x].min(1) * w[x].min(1);
            }
        }
        if let Some(f) = (0..n).find(|&f| u[f] == 0) {
            return (false, Some((f, g)));
        }
    }
    (true, None)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct PfIdempotent {
    /// Spectral radius of the sum matrix, with the iteration tolerance.
    pub lambda: f64,
    pub tolerance: f64,
    /// Nonnegative coefficient vector over the indecomposables.
    pub e: Vec<f64>,
    /// Matrix of the right regular action of e.
    pub e_action: Vec<Vec<f64>>,
    pub idempotency_defect: f64,
    pub support_full: bool,
    /// Whether plain power iteration sufficed or oscillation forced an
    /// averaging pass over the detected period.
    pub averaged_period: Option<usize>,
}

fn matvec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Power iteration from a given start vector with a Rayleigh-quotient stop.
/// When the normalized directions oscillate with a short period instead of
/// converging, the limit direction is recovered by averaging one period,
/// and the period is reported.
pub fn power_limit(m: &[Vec<f64>], start: Vec<f64>, tol: f64) -> (f64, Vec<f64>, Option<usize>) {
    let n = start.len();
    let mut v = start;
    let mut lambda = 1.0;
    let mut averaged_period = None;
    let max_iter = 10_000;
    let mut history: Vec<Vec<f64>> = Vec::new();
    for it in 0..max_iter {
        let w = matvec(m, &v);
        let num: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
        let den: f64 = v.iter().map(|a| a * a).sum();
        let rayleigh = num / den;
        let norm: f64 = w.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            return (0.0, w, None);
        }
        let vn: Vec<f64> = w.iter().map(|a| a / norm).collect();
        let delta: f64 = vn.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);
        let rdelta = (rayleigh - lambda).abs();
        lambda = rayleigh;
        history.push(vn.clone());
        v = vn;
        if it > 2 && rdelta < tol && delta < tol {
            break;
        }
        // detect short oscillation periods in the direction sequence
        if it > 16 && rdelta < tol {
            for p in 2..=n.max(2) {
                if history.len() > p {
                    let prev = &history[history.len() - 1 - p];
                    let d: f64 =
                        prev.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);
                    if d < tol {
                        averaged_period = Some(p);
                        break;
                    }
                }
            }
            if averaged_period.is_some() {
                break;
            }
        }
    }
    if let Some(p) = averaged_period {
        let mlen = history.len();
        let mut acc = vec![0.0; n];
        for k in 0..p {
            for (i, val) in history[mlen - 1 - k].iter().enumerate() {
                acc[i] += val / p as f64;
            }
        }
        // the Rayleigh quotient along the oscillation is meaningless; take
        // it at the averaged direction instead
        if acc.iter().map(|a| a * a).sum::<f64>() > 0.0 {
            let w = matvec(m, &acc);
            let num: f64 = w.iter().zip(&acc).map(|(a, b)| a * b).sum();
            let den: f64 = acc.iter().map(|a| a * a).sum();
            lambda = num / den;
            v = acc;
        }
    }
    (lambda, v, averaged_period)
}

fn to_f64(m: &[Vec<u64>]) -> Vec<Vec<f64>> {
    m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect()
}

/// Limit of (sum of all indecomposables)^n / lambda^n in the real
/// Grothendieck group, normalized so its right regular action is
/// idempotent. Oscillating iterations are averaged over one period.
pub fn pf_idempotent(s: &SemigroupData, tol: f64) -> Result<PfIdempotent, DecatError> {
    let (trivial, witness) = jcell_trivial(s);
    if !trivial {
        let (f, g) = witness.unwrap();
        return Err(DecatError::Precondition(format!(
            "not reachability-trivial: {} never appears around {}",
            s.base.objects[f], s.base.objects[g]
        )));
    }
    let n = s.n();
    let nl = to_f64(&gr_sum_matrix(s, GrSide::Left));
    let (lambda, v, averaged_period) = power_limit(&nl, vec![1.0; n], tol);

    // the limit direction is v; normalize so that e * e = e in the ring,
    // i.e. scale by mu where v * v = mu v
    let ring_mult = |a: &[f64], x: &[f64]| -> Vec<f64> {
        // (a * x) as classes: sum over pairs of the tensor decomposition
        let mut out = vec![0.0; n];
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0.0 {
                continue;
            }
            for (j, xj) in x.iter().enumerate() {
                if *xj == 0.0 {
                    continue;
                }
                for &y in &s.obj_tensor[i][j].0 {
                    out[y] += ai * xj;
                }
            }
        }
        out
    };
    let vv = ring_mult(&v, &v);
    // fit v * v = mu v in least squares over the support
    let num: f64 = vv.iter().zip(&v).map(|(a, b)| a * b).sum();
    let den: f64 = v.iter().map(|a| a * a).sum();
    let mu = num / den;
    let e: Vec<f64> = v.iter().map(|a| a / mu).collect();

    // right regular action of e
    let mut e_action = vec![vec![0.0; n]; n];
    for (i, ei) in e.iter().enumerate() {
        let m = to_f64(&gr_action(s, &Fo::one(i), GrSide::Right));
        for r in 0..n {
            for cidx in 0..n {
                e_action[r][cidx] += ei * m[r][cidx];
            }
        }
    }
    let mut defect = 0.0f64;
    for r in 0..n {
        for cidx in 0..n {
            let mut sq = 0.0;
            for k in 0..n {
                sq += e_action[r][k] * e_action[k][cidx];
            }
            defect = defect.max((sq - e_action[r][cidx]).abs());
        }
    }
    let support_full = e.iter().all(|&x| x > tol);

    // the spectral radius on this orbit: lambda as iterated
    Ok(PfIdempotent {
        lambda,
        tolerance: tol,
        e,
        e_action,
        idempotency_defect: defect,
        support_full,
        averaged_period,
    })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ConeIdempotentReport {
    pub cone_membership: bool,
    pub idempotency: bool,
    pub idempotency_defect: f64,
    pub cone_injectivity: bool,
    pub pass: bool,
    pub tolerance: f64,
}

/// Check the three cone-idempotent conditions of an element e against a
/// module action given by per-generator integer matrices.
pub fn cone_idempotent_check(
    action: &[Vec<Vec<u64>>],
    e: &[f64],
    tol: f64,
) -> ConeIdempotentReport {
    let n = action.first().map_or(0, |m| m.len());
    let cone_membership = e.iter().all(|&x| x >= -tol) && e.iter().any(|&x| x > tol);
    // action of e on the module
    let mut ea = vec![vec![0.0; n]; n];
    for (i, ei) in e.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                ea[r][c] += ei * action[i][r][c] as f64;
            }
        }
    }
    let mut defect = 0.0f64;
    for r in 0..n {
        for c in 0..n {
            let mut sq = 0.0;
            for k in 0..n {
                sq += ea[r][k] * ea[k][c];
            }
            defect = defect.max((sq - ea[r][c]).abs());
        }
    }
    let idempotency = defect <= tol.max(1e-9);

    // support of e * M: columns of the supported generator actions
    let mut supp = vec![false; n];
    for (i, ei) in e.iter().enumerate() {
        if *ei > tol {
            for r in 0..n {
                for c in 0..n {
                    if action[i][r][c] > 0 {
                        supp[r] = true;
                        let _ = c;
                    }
                }
            }
        }
    }
    let cols: Vec<usize> = (0..n).filter(|&x| supp[x]).collect();
    // full column rank of the action restricted to the supported span
    let cone_injectivity = if cols.is_empty() {
        false
    } else {
        let mut m: Vec<Vec<f64>> =
            (0..n).map(|r| cols.iter().map(|&c| ea[r][c]).collect()).collect();
        numeric_rank(&mut m, 1e-9) == cols.len()
    };
    let pass = cone_membership && idempotency && cone_injectivity;
    ConeIdempotentReport {
        cone_membership,
        idempotency,
        idempotency_defect: defect,
        cone_injectivity,
        pass,
        tolerance: tol.max(1e-9),
    }
}

fn numeric_rank(m: &mut [Vec<f64>], tol: f64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        // partial pivoting
        let mut best = rank;
        for r in rank..rows {
            if m[r][c].abs() > m[best][c].abs() {
                best = r;
            }
        }
        if rank >= rows || m[best][c].abs() <= tol {
            continue;
        }
        m.swap(rank, best);
        let piv = m[rank][c];
        for r in 0..rows {
            if r != rank && m[r][c].abs() > 0.0 {
                let f = m[r][c] / piv;
                for k in c..cols {
                    m[r][k] -= f * m[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::*;
    use crate::field::FieldSpec;

    #[test]
    fn gr_matrices_on_fixtures() {
        let s = bimodule_proj(&algebra_dual_numbers(FieldSpec::Q)).unwrap();
        assert_eq!(gr_action(&s, &Fo::one(0), GrSide::Left), vec![vec![2]]);
        let s = zero_semigroup(FieldSpec::Q, &["A", "B"]);
        assert_eq!(gr_sum_matrix(&s, GrSide::Left), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn gr_action_is_multiplicative() {
        // matrix(F ⊠ G) = matrix(F) * matrix(G) on the k x k fixture
        let s = bimodule_proj(&algebra_k_times_k(FieldSpec::Q)).unwrap();
        let n = s.n();
        for f in 0..n {
            for g in 0..n {
                let fg = s.tensor_fo(&Fo::one(f), &Fo::one(g));
                let lhs = gr_action(&s, &fg, GrSide::Left);
                let mf = gr_action(&s, &Fo::one(f), GrSide::Left);
                let mg = gr_action(&s, &Fo::one(g), GrSide::Left);
                let mut prod = vec![vec![0u64; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            prod[i][j] += mf[i][k] * mg[k][j];
                        }
                    }
                }
                assert_eq!(lhs, prod);
            }
        }
        // delta-rule oracle: left action of P_ij has column P_kl supported
        // at P_il exactly when j = k
        let idx = |i: usize, j: usize| i * 2 + j;
        let m = gr_action(&s, &Fo::one(idx(0, 1)), GrSide::Left);
        for k in 0..2 {
            for l in 0..2 {
                for r in 0..4 {
                    let expect = if k == 1 && r == idx(0, l) { 1 } else { 0 };
                    assert_eq!(m[r][idx(k, l)], expect);
                }
            }
        }
    }

    #[test]
    fn reachability_triviality() {
        assert!(jcell_trivial(&bimodule_proj(&algebra_k(FieldSpec::Q)).unwrap()).0);
        assert!(jcell_trivial(&bimodule_proj(&algebra_k_times_k(FieldSpec::Q)).unwrap()).0);
        let (t, w) = jcell_trivial(&zero_semigroup(FieldSpec::Q, &["A", "B"]));
        assert!(!t);
        assert!(w.is_some());
        // single idempotent object
        let s = linear_semigroup(FieldSpec::Q, &["y"], &[vec![0]]).unwrap();
        assert!(jcell_trivial(&s).0);
    }

    #[test]
    fn pf_on_one_object_fixtures() {
        // N = (2): lambda = 2, e = [1/2], E = (1)
        let s = bimodule_proj(&algebra_dual_numbers(FieldSpec::Q)).unwrap();
        let pf = pf_idempotent(&s, 1e-12).unwrap();
        assert!((pf.lambda - 2.0).abs() < 1e-12);
        assert!((pf.e[0] - 0.5).abs() < 1e-9);
        assert!(pf.idempotency_defect < 1e-9);
        assert!(pf.support_full);

        // N = (1): lambda = 1, e = [1]
        let s = bimodule_proj(&algebra_k(FieldSpec::Q)).unwrap();
        let pf = pf_idempotent(&s, 1e-12).unwrap();
        assert!((pf.lambda - 1.0).abs() < 1e-12);
        assert!((pf.e[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn pf_on_k_times_k() {
        let s = bimodule_proj(&algebra_k_times_k(FieldSpec::Q)).unwrap();
        let pf = pf_idempotent(&s, 1e-12).unwrap();
        assert!((pf.lambda - 2.0).abs() < 1e-9);
        assert!(pf.idempotency_defect < 1e-9);
        assert!(pf.support_full);
        // dense oracle at 4 x 4: the sum matrix has row sums 2 and spectral
        // radius 2, and b squares to 2b in the ring, so e = b / 2
        for x in &pf.e {
            assert!((x - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn oscillating_iterations_are_averaged_over_one_period() {
        // a pure swap has period-two directions from an off-axis start; the
        // averaged limit is the balanced eigenvector with eigenvalue 1
        let m = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        let (lambda, v, period) = power_limit(&m, vec![1.0, 0.0], 1e-12);
        assert_eq!(period, Some(2));
        assert!((lambda - 1.0).abs() < 1e-9);
        assert!((v[0] - v[1]).abs() < 1e-9);
        // a convergent case reports no averaging
        let m = vec![vec![2.0]];
        let (lambda, _, period) = power_limit(&m, vec![1.0], 1e-12);
        assert!(period.is_none());
        assert!((lambda - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cone_check_on_pf_output() {
        let s = bimodule_proj(&algebra_dual_numbers(FieldSpec::Q)).unwrap();
        let pf = pf_idempotent(&s, 1e-12).unwrap();
        let action: Vec<Vec<Vec<u64>>> =
            (0..s.n()).map(|i| gr_action(&s, &Fo::one(i), GrSide::Left)).collect();
        let rep = cone_idempotent_check(&action, &pf.e, 1e-12);
        assert!(rep.pass);

        // e = 0 degenerates
        let rep = cone_idempotent_check(&action, &[0.0], 1e-12);
        assert!(!rep.pass);
        assert!(!rep.cone_membership);

        // e = [X] with N = (2) is not idempotent: E = (2)
        let rep = cone_idempotent_check(&action, &[1.0], 1e-12);
        assert!(!rep.idempotency);
    }
}
