//! Evaluation codes on multiplicative-affine point grids.
//!
//! Fix integers N_1..N_m with each N_j - 1 dividing q - 1 and a subset J
//! of coordinates. The point set takes, in coordinate j, all (N_j - 1)-th
//! roots of unity, plus 0 exactly when j is outside J. Codes are spanned
//! by evaluations of monomials X^a with exponents from the grid
//! H_J = prod [0, T_j], T_j = N_j - 1 (j outside J) or N_j - 2 (j in J),
//! under the convention 0^0 = 1.
//!
//! The combinatorial dual machinery: a monomial pair (a, b) has nonzero
//! inner product iff every coordinate passes a divisibility test, and the
//! dual of a span E_Delta is again a span E_{Delta^perp} for an explicit
//! complement set -- with one caveat: when a_j = 0 in a coordinate
//! outside J with p not dividing N_j, the pair (a, b) = (0, 0) couples
//! even though the complement formula never removes it, so the identity
//! can fail there. Callers that need the identity either stay in the
//! p | N_j regime or re-verify with matrices.

use crate::code::LinearCode;
use crate::error::{validation, Result};
use crate::field::{Felt, FiniteField};
use std::collections::HashSet;
use std::sync::Arc;

#[derive(Clone)]
pub struct VarietyParams {
    pub field: Arc<FiniteField>,
    /// N_j per coordinate
    pub big_n: Vec<u64>,
    /// 0-based membership flags for J
    pub j_set: Vec<bool>,
}

impl std::fmt::Debug for VarietyParams {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let j: Vec<usize> = (0..self.m()).filter(|&j| self.j_set[j]).collect();
        write!(fm, "{:?}, N = {:?}, J = {:?}", self.field, self.big_n, j)
    }
}

impl VarietyParams {
    /// `j_indices` are 0-based coordinate positions.
    pub fn new(field: Arc<FiniteField>, big_n: Vec<u64>, j_indices: &[usize]) -> Result<VarietyParams> {
        if big_n.is_empty() {
            return validation("at least one coordinate required");
        }
        let m = big_n.len();
        let mut j_set = vec![false; m];
        for &j in j_indices {
            if j >= m {
                return validation(format!("J index {j} out of range for {m} coordinates"));
            }
            j_set[j] = true;
        }
        for (j, &nj) in big_n.iter().enumerate() {
            if nj < 2 {
                return validation(format!("N_{} must be at least 2", j + 1));
            }
            if (field.size - 1) % (nj - 1) != 0 {
                return validation(format!(
                    "N_{} - 1 = {} does not divide {}",
                    j + 1,
                    nj - 1,
                    field.size - 1
                ));
            }
        }
        Ok(VarietyParams { field, big_n, j_set })
    }

    pub fn m(&self) -> usize {
        self.big_n.len()
    }

    /// Largest exponent in coordinate j.
    pub fn t_bound(&self, j: usize) -> u64 {
        if self.j_set[j] {
            self.big_n[j] - 2
        } else {
            self.big_n[j] - 1
        }
    }

    /// Number of evaluation points.
    pub fn n_points(&self) -> u64 {
        self.big_n
            .iter()
            .enumerate()
            .map(|(j, &nj)| if self.j_set[j] { nj - 1 } else { nj })
            .product()
    }

    /// All exponent tuples of the grid, first coordinate slowest.
    pub fn grid(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut cur = vec![0u64; self.m()];
        loop {
            out.push(cur.clone());
            let mut j = self.m();
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if cur[j] < self.t_bound(j) {
                    cur[j] += 1;
                    for c in cur.iter_mut().skip(j + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }

    pub fn contains_exponent(&self, a: &[u64]) -> bool {
        a.len() == self.m() && a.iter().enumerate().all(|(j, &x)| x <= self.t_bound(j))
    }

    /// Is the tuple inside the reduced grid (every coordinate <= N_j - 2)?
    pub fn in_reduced_grid(&self, a: &[u64]) -> bool {
        a.len() == self.m() && a.iter().zip(&self.big_n) .all(|(&x, &nj)| x <= nj - 2)
    }

    pub fn check_defining_set(&self, delta: &[Vec<u64>]) -> Result<()> {
        let mut seen = HashSet::new();
        for a in delta {
            if !self.contains_exponent(a) {
                return validation(format!("exponent {a:?} outside the grid"));
            }
            if !seen.insert(a.clone()) {
                return validation(format!("duplicate exponent {a:?} in defining set"));
            }
        }
        Ok(())
    }
}

pub struct PointGrid {
    pub params: VarietyParams,
    pub points: Vec<Vec<Felt>>,
}

/// Evaluation points in a fixed order: coordinate j runs through
/// xi_j^0, .., xi_j^(N_j - 2) and then 0 (the 0 only outside J), with the
/// first coordinate slowest.
pub fn build_grid(params: &VarietyParams) -> Result<PointGrid> {
    let f = &params.field;
    let mut axis_vals: Vec<Vec<Felt>> = Vec::with_capacity(params.m());
    for (j, &nj) in params.big_n.iter().enumerate() {
        let xi = f.unity_root(nj - 1)?;
        let mut vals: Vec<Felt> = (0..nj - 1).map(|i| f.pow(xi, i)).collect();
        if !params.j_set[j] {
            vals.push(Felt::ZERO);
        }
        axis_vals.push(vals);
    }
    let mut points = Vec::with_capacity(params.n_points() as usize);
    let mut idx = vec![0usize; params.m()];
    loop {
        points.push(idx.iter().zip(&axis_vals).map(|(&i, v)| v[i]).collect());
        let mut j = params.m();
        loop {
            if j == 0 {
                let grid = PointGrid { params: params.clone(), points };
                debug_assert_eq!(grid.points.len() as u64, params.n_points());
                return Ok(grid);
            }
            j -= 1;
            if idx[j] + 1 < axis_vals[j].len() {
                idx[j] += 1;
                for c in idx.iter_mut().skip(j + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

impl PointGrid {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// The evaluation vector of the monomial X^a over all points.
    pub fn eval_monomial(&self, a: &[u64]) -> Vec<Felt> {
        let f = &self.params.field;
        self.points
            .iter()
            .map(|pt| {
                pt.iter()
                    .zip(a)
                    .fold(Felt::ONE, |acc, (&x, &e)| f.mul(acc, f.pow(x, e)))
            })
            .collect()
    }
}

/// The code spanned by the evaluations of X^a for a in `delta`. Distinct
/// grid exponents always evaluate independently, so dim = |delta|.
pub fn evaluate_code(params: &VarietyParams, delta: &[Vec<u64>]) -> Result<LinearCode> {
    params.check_defining_set(delta)?;
    if delta.is_empty() {
        return Ok(LinearCode::zero_code(params.field.clone(), params.n_points() as usize));
    }
    let grid = build_grid(params)?;
    let rows: Vec<Vec<Felt>> = delta.iter().map(|a| grid.eval_monomial(a)).collect();
    let code = LinearCode::from_words(params.field.clone(), grid.n(), rows)?;
    assert_eq!(code.k(), delta.len(), "grid monomials must evaluate independently");
    Ok(code)
}

fn pair_nonzero_q(params: &VarietyParams, a: &[u64], b: &[u64], qmul: u64) -> bool {
    let p = params.field.p as u64;
    (0..params.m()).all(|j| {
        let nj = params.big_n[j];
        let s = qmul * a[j] + b[j];
        if params.j_set[j] {
            s % (nj - 1) == 0
        } else {
            (s > 0 && s % (nj - 1) == 0) || (a[j] == 0 && b[j] == 0 && nj % p != 0)
        }
    })
}

/// Does ev(X^a) . ev(X^b) evaluate to something nonzero?
pub fn pair_nonzero_euclid(params: &VarietyParams, a: &[u64], b: &[u64]) -> bool {
    pair_nonzero_q(params, a, b, 1)
}

/// Same for the pairing sum_i x_i^(p^conj_exp) y_i.
pub fn pair_nonzero_herm(params: &VarietyParams, a: &[u64], b: &[u64], conj_exp: u32) -> bool {
    pair_nonzero_q(params, a, b, (params.field.p as u64).pow(conj_exp))
}

/// The grid exponents b that pair nonzero against a fixed `a`, per the
/// coordinatewise formula: in J (or interior outside J) the unique class
/// of -Q a_j; outside J the boundary pairs {0, N_j - 1} couple with each
/// other. The (0,0)-with-p-not-dividing-N_j coupling is deliberately NOT
/// covered here (see module docs).
fn partner_product(params: &VarietyParams, a: &[u64], qmul: u64) -> Vec<Vec<u64>> {
    let per_coord: Vec<Vec<u64>> = (0..params.m())
        .map(|j| {
            let nj1 = params.big_n[j] - 1;
            let rem = (nj1 - (qmul * a[j]) % nj1) % nj1;
            if params.j_set[j] {
                vec![rem]
            } else if a[j] == 0 {
                vec![nj1]
            } else if a[j] == nj1 {
                vec![0, nj1]
            } else {
                vec![rem]
            }
        })
        .collect();
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for coord in per_coord {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                coord.iter().map(move |&v| {
                    let mut t = prefix.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn delta_perp_q(params: &VarietyParams, delta: &[Vec<u64>], qmul: u64) -> Result<Vec<Vec<u64>>> {
    params.check_defining_set(delta)?;
    let mut removed: HashSet<Vec<u64>> = HashSet::new();
    for a in delta {
        for b in partner_product(params, a, qmul) {
            removed.insert(b);
        }
    }
    Ok(params.grid().into_iter().filter(|b| !removed.contains(b)).collect())
}

/// Defining set of the Euclidean dual: the grid minus the partners of
/// every element of `delta`.
pub fn delta_perp(params: &VarietyParams, delta: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
    delta_perp_q(params, delta, 1)
}

/// Defining set of the dual under sum x^(p^conj_exp) y.
pub fn delta_perp_h(
    params: &VarietyParams,
    delta: &[Vec<u64>],
    conj_exp: u32,
) -> Result<Vec<Vec<u64>>> {
    delta_perp_q(params, delta, (params.field.p as u64).pow(conj_exp))
}

/// Hermitian self-orthogonality criterion for the degree-r Reed-Muller
/// style code (all monomials of total degree <= r in m variables over
/// GF(q0^2)): holds exactly when r <= m (q0 - 1) - 1.
pub fn rm_hermitian_selforth(r: u64, m: u64, q0: u64) -> bool {
    m * (q0 - 1) >= 1 && r <= m * (q0 - 1) - 1
}

/// Matrix-level check that the span of `delta` is contained in its dual
/// under the chosen pairing; used by constructions to re-verify the
/// combinatorial containments.
pub fn verify_self_orthogonal(
    params: &VarietyParams,
    code: &LinearCode,
    conj_exp: Option<u32>,
) -> Result<bool> {
    let g = code.gen_matrix();
    let gt = match conj_exp {
        None => g.transpose(),
        Some(t) => {
            let f = params.field.clone();
            g.map(|x| f.power_frobenius(x, t)).transpose()
        }
    };
    Ok(g.mul(&gt)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{dot, dot_conj};
    use crate::field::make_field;

    /// Shared sample parameters: GF(16), N = (4, 6), J = {2} (1-based).
    fn sample_params() -> VarietyParams {
        let f = make_field(2, 4).unwrap();
        VarietyParams::new(f, vec![4, 6], &[1]).unwrap()
    }

    fn tup(v: &[u64]) -> Vec<u64> {
        v.to_vec()
    }

    #[test]
    fn grid_shape_and_point_order() {
        let p = sample_params();
        assert_eq!(p.n_points(), 20);
        assert_eq!((p.t_bound(0), p.t_bound(1)), (3, 4));
        let h = p.grid();
        assert_eq!(h.len(), 20);
        assert_eq!(h[0], vec![0, 0]);
        assert_eq!(h[1], vec![0, 1]);
        assert_eq!(h[5], vec![1, 0]);
        assert_eq!(h[19], vec![3, 4]);
        let g = build_grid(&p).unwrap();
        let f = &p.field;
        let xi1 = f.unity_root(3).unwrap();
        let xi2 = f.unity_root(5).unwrap();
        assert_eq!(g.points[0], vec![Felt::ONE, Felt::ONE]);
        assert_eq!(g.points[4], vec![Felt::ONE, f.pow(xi2, 4)]);
        assert_eq!(g.points[5], vec![xi1, Felt::ONE]);
        // coordinate 1 is outside J: its last value is 0
        assert_eq!(g.points[15][0], Felt::ZERO);
        assert_eq!(g.points[19], vec![Felt::ZERO, f.pow(xi2, 4)]);
    }

    #[test]
    fn euclidean_dual_set_of_sample() {
        // Frozen: the 9-element set below has dual set itself plus
        // (0,0) and (3,0).
        let p = sample_params();
        let delta: Vec<Vec<u64>> = [
            [0, 1], [0, 2], [0, 3], [0, 4], [1, 2], [1, 3], [2, 0], [2, 1], [2, 4],
        ]
        .iter()
        .map(|a| tup(a))
        .collect();
        let mut expect = delta.clone();
        expect.push(tup(&[0, 0]));
        expect.push(tup(&[3, 0]));
        let mut got = delta_perp(&p, &delta).unwrap();
        got.sort();
        expect.sort();
        assert_eq!(got, expect);
        // and the span is genuinely self-orthogonal
        let code = evaluate_code(&p, &delta).unwrap();
        assert!(verify_self_orthogonal(&p, &code, None).unwrap());
    }

    #[test]
    fn hermitian_dual_set_of_sample() {
        // Frozen partner checks for conjugation exponent 1 (pairing
        // sum x^2 y): (0,4) knocks out (3,2); (2,4) knocks out (2,2);
        // (2,0) is its own partner, so any set containing it fails the
        // orbit-meets-dual condition.
        let p = sample_params();
        let d2: Vec<Vec<u64>> = [[0, 1], [0, 4], [0, 2], [0, 3], [2, 1], [2, 4]]
            .iter()
            .map(|a| tup(a))
            .collect();
        let dp = delta_perp_h(&p, &d2, 1).unwrap();
        assert!(!dp.contains(&tup(&[3, 2])));
        assert!(!dp.contains(&tup(&[2, 2])));
        for a in &d2 {
            assert!(dp.contains(a), "{a:?} should survive");
        }
        let with_20: Vec<Vec<u64>> = [[2, 0]].iter().map(|a| tup(a)).collect();
        let dp = delta_perp_h(&p, &with_20, 1).unwrap();
        assert!(!dp.contains(&tup(&[2, 0])));
    }

    #[test]
    fn predicates_match_actual_inner_products() {
        // Exhaustive pair check on small grids, Euclidean and conjugated.
        let cases: Vec<VarietyParams> = vec![
            VarietyParams::new(make_field(2, 2).unwrap(), vec![4], &[]).unwrap(),
            VarietyParams::new(make_field(2, 2).unwrap(), vec![4], &[0]).unwrap(),
            VarietyParams::new(make_field(3, 2).unwrap(), vec![3, 5], &[1]).unwrap(),
            VarietyParams::new(make_field(2, 4).unwrap(), vec![4, 6], &[1]).unwrap(),
        ];
        for p in cases {
            let grid = build_grid(&p).unwrap();
            let h = p.grid();
            let f = &p.field;
            for a in &h {
                let ea = grid.eval_monomial(a);
                for b in &h {
                    let eb = grid.eval_monomial(b);
                    assert_eq!(
                        pair_nonzero_euclid(&p, a, b),
                        !dot(f, &ea, &eb).is_zero(),
                        "euclid {a:?} {b:?} on {p:?}"
                    );
                    assert_eq!(
                        pair_nonzero_herm(&p, a, b, 1),
                        !dot_conj(f, &ea, &eb, 1).is_zero(),
                        "herm {a:?} {b:?} on {p:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn dual_set_identity_holds_when_p_divides_n() {
        // GF(4), one variable, N = 4 (p | N): E_{Delta^perp} is exactly
        // the dual of E_Delta.
        let f = make_field(2, 2).unwrap();
        let p = VarietyParams::new(f, vec![4], &[]).unwrap();
        for delta in [vec![tup(&[0])], vec![tup(&[0]), tup(&[1])], vec![tup(&[1]), tup(&[2])]] {
            let dp = delta_perp(&p, &delta).unwrap();
            let lhs = evaluate_code(&p, &dp).unwrap();
            let rhs = evaluate_code(&p, &delta).unwrap().euclidean_dual();
            assert_eq!(lhs, rhs, "delta = {delta:?}");
        }
    }

    #[test]
    fn dual_set_identity_can_fail_without_p_dividing_n() {
        // Documented degeneracy: GF(9), N = 5, J empty, Delta = {0}. The
        // complement formula keeps exponent 0 in the dual set, but
        // ev(X^0) . ev(X^0) = 5 = 2 is nonzero in GF(9), so the span
        // E_{Delta^perp} is strictly bigger than the true dual.
        let f = make_field(3, 2).unwrap();
        let p = VarietyParams::new(f, vec![5], &[]).unwrap();
        let delta = vec![tup(&[0])];
        let dp = delta_perp(&p, &delta).unwrap();
        assert!(dp.contains(&tup(&[0])));
        let lhs = evaluate_code(&p, &dp).unwrap();
        let rhs = evaluate_code(&p, &delta).unwrap().euclidean_dual();
        assert_ne!(lhs, rhs);
        assert_eq!((lhs.k(), rhs.k()), (4, 4));
        let ones = vec![Felt::ONE; 5];
        assert!(lhs.contains_word(&ones));
        assert!(!rhs.contains_word(&ones));
    }

    #[test]
    fn rm_criterion_matches_matrix_check() {
        assert!(rm_hermitian_selforth(3, 2, 3));
        assert!(!rm_hermitian_selforth(4, 2, 3));
        assert!(rm_hermitian_selforth(0, 1, 2));
        assert!(!rm_hermitian_selforth(1, 1, 2));
        // Total-degree sets over GF(9), two variables, 81 points.
        let f = make_field(3, 2).unwrap();
        let p = VarietyParams::new(f, vec![9, 9], &[]).unwrap();
        for r in [3u64, 4] {
            let delta: Vec<Vec<u64>> = p
                .grid()
                .into_iter()
                .filter(|a| a.iter().sum::<u64>() <= r)
                .collect();
            let code = evaluate_code(&p, &delta).unwrap();
            assert_eq!(
                verify_self_orthogonal(&p, &code, Some(1)).unwrap(),
                rm_hermitian_selforth(r, 2, 3),
                "r = {r}"
            );
        }
    }

    #[test]
    fn parameter_validation() {
        let f = make_field(2, 2).unwrap();
        assert!(VarietyParams::new(f.clone(), vec![], &[]).is_err());
        assert!(VarietyParams::new(f.clone(), vec![5], &[]).is_err()); // 4 does not divide 3
        assert!(VarietyParams::new(f.clone(), vec![4], &[1]).is_err()); // J index range
        let p = VarietyParams::new(f, vec![4], &[0]).unwrap();
        assert!(evaluate_code(&p, &[tup(&[3])]).is_err()); // exponent above T = 2
        assert!(evaluate_code(&p, &[tup(&[1]), tup(&[1])]).is_err()); // duplicate
    }
}
