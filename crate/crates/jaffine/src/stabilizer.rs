//! Stabilizer-code constructions from classical linear codes.
//!
//! Four routes are implemented. A Euclidean dual-containing code C gives
//! an [[n, 2k-n, >= wt(C)]] code; a Hermitian dual-containing code over a
//! square extension field gives the same parameters over the base field.
//! A dual-containing code plus an enlargement C' (dim >= k+2) gives the
//! Steane-style [[n, k+k'-n]] code. Finally, a pair (C1, C1-hat) with
//! C1-perp inside C1-hat plus an enlargement direction space D gives the
//! two-sided enlargement [[n, k2 + k1-hat - n]]; its stabilizer can be
//! realized explicitly as a symplectic dual-containing space, which also
//! supports expurgation (trading logical dimensions while keeping the
//! distance bound).

use crate::code::{dot, LinearCode};
use crate::cyclotomic::{minimal_cyclotomic_sets, subfield_dims, trace_generators, DimReport};
use crate::error::{precondition, validation, Result};
use crate::field::{make_field, Felt, FiniteField};
use crate::matrix::MatrixGF;
use crate::variety::VarietyParams;
use crate::weight::{
    min_weight, relative_min_weight, symplectic_rows_min_weight, DistanceOpts, WeightReport,
};
use num_bigint::BigUint;
use std::sync::Arc;

pub struct EnlargementInput {
    pub c1: LinearCode,
    pub c1_hat: LinearCode,
    pub d: LinearCode,
}

/// The five classical codes entering the two-sided enlargement.
pub struct EnlargementCodes {
    pub c1: LinearCode,
    pub c1_hat: LinearCode,
    pub d: LinearCode,
    pub c2: LinearCode,
    pub c2_hat: LinearCode,
    pub c3: LinearCode,
}

pub enum Construction {
    /// Euclidean dual-containing code; distance bounded by wt(code).
    Css { code: LinearCode },
    /// Hermitian dual-containing code over GF(q^2); `conj` is the
    /// conjugation exponent e/2.
    Hermitian { code: LinearCode, conj: u32 },
    /// Dual-containing inner code and its enlargement.
    Steane { c: LinearCode, cprime: LinearCode },
    Generalized(Box<EnlargementCodes>),
}

pub struct StabilizerCode {
    pub alphabet: Arc<FiniteField>,
    pub n: usize,
    pub k: i64,
    pub construction: Construction,
}

impl std::fmt::Debug for StabilizerCode {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            fm,
            "[[{}, {}]]_{} ({})",
            self.n,
            self.k,
            self.alphabet.size,
            self.provenance()
        )
    }
}

/// Lower/upper bracket of the design distance together with the classical
/// weight computations it came from.
pub struct DistanceSummary {
    pub lower: u64,
    pub upper: Option<u64>,
    pub exact: bool,
    pub parts: Vec<(&'static str, WeightReport)>,
}

impl StabilizerCode {
    pub fn provenance(&self) -> &'static str {
        match self.construction {
            Construction::Css { .. } => "css",
            Construction::Hermitian { .. } => "hermitian",
            Construction::Steane { .. } => "steane",
            Construction::Generalized(_) => "generalized",
        }
    }

    /// Evaluate the design-distance formula of the construction, running
    /// the required classical weight computations with `opts`.
    pub fn distance_bound(&self, opts: &DistanceOpts) -> Result<DistanceSummary> {
        match &self.construction {
            Construction::Css { code } | Construction::Hermitian { code, .. } => {
                let r = min_weight(code, opts)?;
                Ok(DistanceSummary {
                    lower: r.lower,
                    upper: r.upper,
                    exact: r.exact,
                    parts: vec![("d", r)],
                })
            }
            Construction::Steane { c, cprime } => {
                let q = c.field.size;
                let excl = cprime.euclidean_dual();
                let dp = relative_min_weight(c, &excl, opts)?;
                let ds = relative_min_weight(cprime, &excl, opts)?;
                Ok(DistanceSummary {
                    lower: steane_distance_formula(q, dp.lower, ds.lower),
                    upper: match (dp.upper, ds.upper) {
                        (Some(a), Some(b)) => Some(steane_distance_formula(q, a, b)),
                        _ => None,
                    },
                    exact: dp.exact && ds.exact,
                    parts: vec![("relative-inner", dp), ("relative-enlarged", ds)],
                })
            }
            Construction::Generalized(e) => {
                let q = e.c1.field.size;
                let names = ["d1", "d1-hat", "d2", "d2-hat", "d3"];
                let codes = [&e.c1, &e.c1_hat, &e.c2, &e.c2_hat, &e.c3];
                let mut parts = Vec::new();
                for (name, code) in names.iter().zip(codes) {
                    parts.push((*name, min_weight(code, opts)?));
                }
                let v = |i: usize| parts[i].1.lower;
                let lower = generalized_distance_formula(q, v(0), v(1), v(2), v(3), v(4));
                let uppers: Vec<Option<u64>> = parts.iter().map(|p| p.1.upper).collect();
                let upper = if uppers.iter().all(|u| u.is_some()) {
                    let u = |i: usize| uppers[i].unwrap();
                    Some(generalized_distance_formula(q, u(0), u(1), u(2), u(3), u(4)))
                } else {
                    None
                };
                Ok(DistanceSummary {
                    lower,
                    upper,
                    exact: parts.iter().all(|p| p.1.exact),
                    parts,
                })
            }
        }
    }
}

/// min { d', ceil((q+1)/q d'') }.
pub fn steane_distance_formula(q: u64, d_rel_inner: u64, d_rel_enlarged: u64) -> u64 {
    d_rel_inner.min((d_rel_enlarged * (q + 1)).div_ceil(q))
}

/// min { d1, d1-hat, B } where B averages the enlarged distances for
/// q = 2 and otherwise takes max { d3 + ceil(d2/q), d3 + ceil(d2-hat/q) }.
pub fn generalized_distance_formula(
    q: u64,
    d1: u64,
    d1_hat: u64,
    d2: u64,
    d2_hat: u64,
    d3: u64,
) -> u64 {
    let b = if q == 2 {
        (d2 + d2_hat + d3).div_ceil(2)
    } else {
        (d3 + d2.div_ceil(q)).max(d3 + d2_hat.div_ceil(q))
    };
    d1.min(d1_hat).min(b)
}

/// [[n, 2k - n]] from a Euclidean dual-containing code.
pub fn css_construct(code: LinearCode) -> Result<StabilizerCode> {
    if !code.contains(&code.euclidean_dual()) {
        return precondition("code does not contain its Euclidean dual");
    }
    Ok(StabilizerCode {
        alphabet: code.field.clone(),
        n: code.n,
        k: 2 * code.k() as i64 - code.n as i64,
        construction: Construction::Css { code },
    })
}

/// [[n, 2k - n]] over GF(q) from a Hermitian dual-containing code over
/// GF(q^2).
pub fn hermitian_construct(code: LinearCode) -> Result<StabilizerCode> {
    let f = &code.field;
    if f.e % 2 != 0 {
        return validation("Hermitian construction needs a square extension field");
    }
    let conj = f.e / 2;
    if !code.contains(&code.hermitian_dual(conj)?) {
        return precondition("code does not contain its Hermitian dual");
    }
    let alphabet = make_field(f.p, conj)?;
    Ok(StabilizerCode {
        alphabet,
        n: code.n,
        k: 2 * code.k() as i64 - code.n as i64,
        construction: Construction::Hermitian { code, conj },
    })
}

/// Steane-style enlargement of a dual-containing code.
pub fn steane_enlarge(c: LinearCode, cprime: LinearCode) -> Result<StabilizerCode> {
    if c.field != cprime.field || c.n != cprime.n {
        return validation("enlargement operands live in different spaces");
    }
    if !c.contains(&c.euclidean_dual()) {
        return precondition("inner code does not contain its Euclidean dual");
    }
    if !cprime.contains(&c) {
        return precondition("enlargement does not contain the inner code");
    }
    if cprime.k() < c.k() + 2 {
        return precondition("enlargement must add at least two dimensions");
    }
    Ok(StabilizerCode {
        alphabet: c.field.clone(),
        n: c.n,
        k: (c.k() + cprime.k()) as i64 - c.n as i64,
        construction: Construction::Steane { c, cprime },
    })
}

fn validate_enlargement(input: &EnlargementInput) -> Result<EnlargementCodes> {
    let EnlargementInput { c1, c1_hat, d } = input;
    if c1.field != c1_hat.field || c1.field != d.field || c1.n != c1_hat.n || c1.n != d.n {
        return validation("enlargement operands live in different spaces");
    }
    if !c1_hat.contains(&c1.euclidean_dual()) {
        return precondition("second code does not contain the dual of the first");
    }
    if d.k() < 2 {
        return precondition("direction space must have dimension at least two");
    }
    let sum = c1.add(c1_hat)?;
    if sum.intersect(d)?.k() != 0 {
        return precondition("direction space meets the sum of the two codes");
    }
    let codes = EnlargementCodes {
        c2: c1.add(d)?,
        c2_hat: c1_hat.add(d)?,
        c3: sum.add(d)?,
        c1: c1.clone(),
        c1_hat: c1_hat.clone(),
        d: d.clone(),
    };
    debug_assert_eq!(codes.c2.k(), c1.k() + d.k());
    debug_assert_eq!(codes.c2_hat.k(), c1_hat.k() + d.k());
    Ok(codes)
}

/// Two-sided enlargement [[n, k2 + k1-hat - n]].
pub fn generalized_enlarge(input: &EnlargementInput) -> Result<StabilizerCode> {
    let codes = validate_enlargement(input)?;
    let n = codes.c1.n;
    let k = (codes.c2.k() + codes.c1_hat.k()) as i64 - n as i64;
    Ok(StabilizerCode {
        alphabet: codes.c1.field.clone(),
        n,
        k,
        construction: Construction::Generalized(Box::new(codes)),
    })
}

/// Build the trace-generator subfield-subcode for a closed defining set,
/// dualize it, and run the dual-containing construction. Returns the
/// stabilizer code together with the dimension report. `s` is the
/// subcode alphabet degree: the code lives over GF(p^s).
pub fn params_from_delta_euclid(
    params: &VarietyParams,
    delta: &[Vec<u64>],
    s: u32,
) -> Result<(StabilizerCode, DimReport)> {
    let p = params.field.p as u64;
    let partition = minimal_cyclotomic_sets(params, p.pow(s))?;
    let report = subfield_dims(&partition, delta, None)?;
    if !report.condition {
        return precondition("an orbit inside the defining set misses the dual defining set");
    }
    let c0 = LinearCode::from_gen_matrix(trace_generators(&partition, delta, s)?);
    assert_eq!(c0.k(), report.dim_subcode);
    let dual = c0.euclidean_dual();
    if !dual.contains(&c0) {
        return precondition(
            "subfield-subcode is not self-orthogonal despite the combinatorial condition \
             (boundary-exponent degeneracy); construction refused",
        );
    }
    Ok((css_construct(dual)?, report))
}

/// Hermitian analogue; `s` (even) is the subcode alphabet degree, the
/// stabilizer alphabet is GF(p^(s/2)).
pub fn params_from_delta_herm(
    params: &VarietyParams,
    delta: &[Vec<u64>],
    s: u32,
) -> Result<(StabilizerCode, DimReport)> {
    if s % 2 != 0 {
        return validation("Hermitian subcode alphabet degree must be even");
    }
    let p = params.field.p as u64;
    let partition = minimal_cyclotomic_sets(params, p.pow(s))?;
    let report = subfield_dims(&partition, delta, Some(s / 2))?;
    if !report.condition {
        return precondition("an orbit inside the defining set misses the dual defining set");
    }
    let c0 = LinearCode::from_gen_matrix(trace_generators(&partition, delta, s)?);
    assert_eq!(c0.k(), report.dim_subcode);
    let dual = c0.hermitian_dual(s / 2)?;
    if !dual.contains(&c0) {
        return precondition(
            "subfield-subcode is not Hermitian self-orthogonal despite the combinatorial \
             condition (boundary-exponent degeneracy); construction refused",
        );
    }
    Ok((hermitian_construct(dual)?, report))
}

// ---------------------------------------------------------------------
// Explicit symplectic realization of the two-sided enlargement.

/// A dual-containing subspace S of F_q^(2n) under the pairing
/// (u|v) . (u'|v') = u.v' - v.u'. `s_mat` spans S, `t_mat` spans the
/// symplectic dual (the stabilizer group itself), k = dim S - n.
#[derive(Clone)]
pub struct SymplecticCode {
    pub field: Arc<FiniteField>,
    pub n: usize,
    pub k: i64,
    pub s_mat: MatrixGF,
    pub t_mat: MatrixGF,
}

/// (u|v) . (u'|v') = u.v' - v.u'.
pub fn symplectic_pair(f: &FiniteField, x: &[Felt], y: &[Felt]) -> Felt {
    let n = x.len() / 2;
    f.sub(dot(f, &x[..n], &y[n..]), dot(f, &x[n..], &y[..n]))
}

/// Rows (u|v) -> (-v|u); the right kernel of the twisted matrix is the
/// symplectic dual of the original row space.
fn symplectic_twist(m: &MatrixGF) -> MatrixGF {
    let n = m.cols / 2;
    let f = m.field.clone();
    MatrixGF::from_fn(f.clone(), m.rows, m.cols, |r, c| {
        if c < n {
            f.neg(m.at(r, c + n))
        } else {
            m.at(r, c - n)
        }
    })
}

fn symplectic_dual(m: &MatrixGF) -> MatrixGF {
    symplectic_twist(m).right_kernel()
}

/// Monic polynomial of degree `d` (2 or 3) with no roots in the field,
/// returned as low-to-high coefficients without the leading one. Root-free
/// quadratics and cubics exist over every finite field (irreducible ones
/// do), so the search always succeeds.
fn root_free_poly(f: &Arc<FiniteField>, d: usize) -> Vec<Felt> {
    let q = f.size as u32;
    let mut coeffs = vec![Felt::ZERO; d];
    loop {
        let has_root = (0..q).any(|x| {
            let x = Felt(x);
            let mut acc = Felt::ONE; // leading term, Horner from the top
            for &c in coeffs.iter().rev() {
                acc = f.add(f.mul(acc, x), c);
            }
            acc.is_zero()
        });
        if !has_root {
            return coeffs;
        }
        for c in coeffs.iter_mut() {
            if c.0 + 1 < q {
                *c = Felt(c.0 + 1);
                break;
            }
            *c = Felt::ZERO;
        }
    }
}

/// Square matrix with no eigenvalues in the base field: block diagonal of
/// companion matrices of root-free quadratics (plus one cubic when `t` is
/// odd). The weight argument for the enlarged code needs `mA != lambda m`
/// for every scalar lambda and every nonzero message m -- merely avoiding
/// fixed vectors (lambda = 1) is not enough, since an eigenvector for any
/// lambda would put a word (u | lambda u) of plain weight wt(u) into the
/// symplectic space.
fn fixed_point_free_matrix(f: &Arc<FiniteField>, t: usize) -> MatrixGF {
    assert!(t >= 2, "direction space must have dimension at least 2");
    let mut a = MatrixGF::zero(f.clone(), t, t);
    let mut place_companion = |at: usize, coeffs: &[Felt]| {
        let d = coeffs.len();
        for (i, &c) in coeffs.iter().enumerate() {
            // x^d = -(c_{d-1} x^{d-1} + ... + c_0) in the quotient.
            a.set(at + i, at + d - 1, f.neg(c));
        }
        for i in 1..d {
            a.set(at + i, at + i - 1, Felt::ONE);
        }
    };
    let quad = root_free_poly(f, 2);
    let mut at = 0;
    if t % 2 == 1 {
        place_companion(0, &root_free_poly(f, 3));
        at = 3;
    }
    while at < t {
        place_companion(at, &quad);
        at += 2;
    }
    for lambda in [Felt::ZERO, Felt::ONE] {
        let shifted = MatrixGF::from_fn(f.clone(), t, t, |r, c| {
            if r == c {
                f.sub(a.at(r, c), lambda)
            } else {
                a.at(r, c)
            }
        });
        assert!(shifted.inverse().is_ok(), "enlargement matrix must avoid eigenvalue {lambda:?}");
    }
    a
}

/// Realize the two-sided enlargement as an explicit symplectic
/// dual-containing space, verifying every structural claim along the way.
pub fn build_symplectic_code(input: &EnlargementInput) -> Result<SymplecticCode> {
    let codes = validate_enlargement(input)?;
    let f = codes.c1.field.clone();
    let n = codes.c1.n;
    let t = codes.d.k();
    let l = codes.d.gen_matrix().clone();
    let a = fixed_point_free_matrix(&f, t);
    let al = a.mul(&l)?;
    let g1 = codes.c1.gen_matrix();
    let g1_hat = codes.c1_hat.gen_matrix();
    let z = |rows: usize| MatrixGF::zero(f.clone(), rows, n);
    let s_mat = l
        .hstack(&al)?
        .vstack(&g1.hstack(&z(g1.rows))?)?
        .vstack(&z(g1_hat.rows).hstack(g1_hat)?)?;
    let dim_s = t + codes.c1.k() + codes.c1_hat.k();
    assert_eq!(s_mat.rank(), dim_s, "generator rows must be independent");

    // The completion B: rows extending a basis of (C1 + C1hat + D)-perp to
    // a basis of (C1 + C1hat)-perp. Stacking B under a parity matrix of C2
    // (of C2-hat) yields a parity matrix of C1 (of C1-hat).
    let sum_perp = codes.c1.add(&codes.c1_hat)?.euclidean_dual();
    let c3_perp = codes.c3.euclidean_dual();
    let b = c3_perp
        .gen_matrix()
        .complete_basis_from(sum_perp.gen_matrix())?;
    assert_eq!(b.rows, t);
    let h2 = codes.c2.parity_matrix().clone();
    let h2_hat = codes.c2_hat.parity_matrix().clone();
    assert_eq!(h2.vstack(&b)?.rank(), n - codes.c1.k());
    assert_eq!(h2_hat.vstack(&b)?.rank(), n - codes.c1_hat.k());
    assert!(g1.mul(&b.transpose())?.is_zero());
    assert!(g1_hat.mul(&b.transpose())?.is_zero());

    let blt = b.mul(&l.transpose())?;
    let blt_inv = blt
        .inverse()
        .expect("B L^t is invertible because B is independent from the direction-space dual");
    let at_inv = a.transpose().inverse().expect("checked above");
    let kmat = blt.mul(&at_inv)?.mul(&blt_inv)?;
    let kb = kmat.mul(&b)?;
    let t_mat = kb
        .hstack(&b)?
        .vstack(&h2_hat.hstack(&z(h2_hat.rows))?)?
        .vstack(&z(h2.rows).hstack(&h2)?)?;

    // t_mat spans the symplectic dual of S and sits inside S.
    for r in 0..s_mat.rows {
        for q in 0..t_mat.rows {
            assert!(
                symplectic_pair(&f, s_mat.row(r), t_mat.row(q)).is_zero(),
                "parity rows must annihilate the generator rows"
            );
        }
    }
    assert_eq!(t_mat.rank(), 2 * n - dim_s);
    let s_code = LinearCode::from_gen_matrix(s_mat.clone());
    let t_code = LinearCode::from_gen_matrix(t_mat.clone());
    assert!(s_code.contains(&t_code), "the space must contain its symplectic dual");

    Ok(SymplecticCode {
        field: f,
        n,
        k: dim_s as i64 - n as i64,
        s_mat,
        t_mat,
    })
}

impl SymplecticCode {
    /// Minimum symplectic symbol weight of S, optionally restricted to
    /// S minus its symplectic dual.
    pub fn min_symbol_weight(
        &self,
        exclude_stabilizer: bool,
        opts: &DistanceOpts,
    ) -> Result<WeightReport> {
        let rows: Vec<Vec<Felt>> = (0..self.s_mat.rows)
            .map(|r| self.s_mat.row(r).to_vec())
            .collect();
        let excl = if exclude_stabilizer {
            Some(LinearCode::from_gen_matrix(self.t_mat.clone()))
        } else {
            None
        };
        symplectic_rows_min_weight(&self.field, self.n, &rows, excl.as_ref(), opts)
    }

    /// Shrink S by `drop` hyperbolic directions: the quotient S / S-dual
    /// carries a nondegenerate symplectic form; keeping every `e` vector
    /// but only part of the `f` vectors yields a dual-containing space
    /// with `drop` fewer logical dimensions and no smaller distance.
    pub fn expurgate(&self, drop: usize) -> Result<SymplecticCode> {
        if drop as i64 > self.k {
            return validation(format!(
                "cannot expurgate {drop} dimensions from a k = {} code",
                self.k
            ));
        }
        if drop == 0 {
            return Ok(self.clone());
        }
        let f = &self.field;
        let k = self.k as usize;
        let reps_m = self.t_mat.complete_basis_from(&self.s_mat)?;
        assert_eq!(reps_m.rows, 2 * k);
        let mut reps: Vec<Vec<Felt>> = (0..reps_m.rows).map(|r| reps_m.row(r).to_vec()).collect();
        let axpy = |w: &mut Vec<Felt>, coef: Felt, x: &[Felt]| {
            for (wi, &xi) in w.iter_mut().zip(x) {
                *wi = f.add(*wi, f.mul(coef, xi));
            }
        };
        let mut pairs: Vec<(Vec<Felt>, Vec<Felt>)> = Vec::new();
        while let Some(e) = reps.pop() {
            let j = reps
                .iter()
                .position(|w| !symplectic_pair(f, &e, w).is_zero())
                .expect("quotient symplectic form is nondegenerate");
            let mut v = reps.swap_remove(j);
            let scale = f.inv(symplectic_pair(f, &e, &v)).expect("nonzero pairing");
            for x in v.iter_mut() {
                *x = f.mul(*x, scale);
            }
            for w in reps.iter_mut() {
                let a = f.neg(symplectic_pair(f, w, &v));
                let b = symplectic_pair(f, w, &e);
                axpy(w, a, &e);
                axpy(w, b, &v);
            }
            pairs.push((e, v));
        }
        assert_eq!(pairs.len(), k);
        let mut rows: Vec<Vec<Felt>> = (0..self.t_mat.rows)
            .map(|r| self.t_mat.row(r).to_vec())
            .collect();
        for (e, _) in &pairs {
            rows.push(e.clone());
        }
        for (_, v) in pairs.iter().take(k - drop) {
            rows.push(v.clone());
        }
        let s_new = MatrixGF::from_rows(f.clone(), rows)?;
        assert_eq!(s_new.rank(), self.n + k - drop);
        let t_new = symplectic_dual(&s_new);
        assert!(LinearCode::from_gen_matrix(s_new.clone())
            .contains(&LinearCode::from_gen_matrix(t_new.clone())));
        Ok(SymplecticCode {
            field: f.clone(),
            n: self.n,
            k: (k - drop) as i64,
            s_mat: s_new,
            t_mat: t_new,
        })
    }
}

// ---------------------------------------------------------------------
// Counting bound.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GvReport {
    /// n and k have equal parity, as the counting bound requires.
    pub parity_ok: bool,
    /// The counting bound promises an [[n, k, d]] code.
    pub exists_by_gv: bool,
    /// Parameters beat what the counting bound can promise.
    pub exceeds_gv: bool,
}

/// Existence test for [[n, k, d]]_q stabilizer codes by volume counting:
/// codes exist when n = k (mod 2) and
/// sum_{i=1}^{d-1} (q^2-1)^(i-1) C(n, i) < (q^(n-k+2) - 1) / (q^2 - 1).
pub fn gv_check(n: u64, k: u64, d: u64, q: u64) -> Result<GvReport> {
    if q < 2 {
        return validation("alphabet size must be at least 2");
    }
    if n == 0 || k > n || d == 0 || d > n {
        return validation(format!("bad parameters [[{n}, {k}, {d}]]"));
    }
    let parity_ok = (n - k) % 2 == 0;
    let q2m1 = BigUint::from(q * q - 1);
    let mut sum = BigUint::from(0u32);
    let mut binom = BigUint::from(1u32);
    let mut factor = BigUint::from(1u32);
    for i in 1..d {
        binom = binom * BigUint::from(n - i + 1) / BigUint::from(i);
        sum += &factor * &binom;
        factor *= &q2m1;
    }
    let rhs = (BigUint::from(q).pow((n - k + 2) as u32) - BigUint::from(1u32)) / &q2m1;
    let exists_by_gv = parity_ok && sum < rhs;
    Ok(GvReport {
        parity_ok,
        exists_by_gv,
        exceeds_gv: !exists_by_gv,
    })
}
