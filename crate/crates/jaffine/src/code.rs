//! Linear codes over GF(p^e): canonical generator matrices, Euclidean and
//! Hermitian duals, subfield subcodes, and trace-image codes.
//!
//! The Hermitian pairing used throughout is <x,y> = sum_i x_i^(p^t) y_i,
//! where t is the conjugation exponent. `hermitian_dual` fixes t = e/2 (the
//! involutive case); `hermitian_dual_at` admits any t dividing into the
//! tower, which the subfield duality identities need.

use crate::error::{validation, Result};
use crate::field::{make_field, subfield_map, Felt, FiniteField};
use crate::matrix::MatrixGF;
use std::sync::{Arc, OnceLock};

pub fn dot(f: &FiniteField, x: &[Felt], y: &[Felt]) -> Felt {
    x.iter()
        .zip(y)
        .fold(Felt::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// sum_i x_i^(p^t) y_i
pub fn dot_conj(f: &FiniteField, x: &[Felt], y: &[Felt], t: u32) -> Felt {
    x.iter().zip(y).fold(Felt::ZERO, |acc, (&a, &b)| {
        f.add(acc, f.mul(f.power_frobenius(a, t), b))
    })
}

#[derive(Clone)]
pub struct LinearCode {
    pub field: Arc<FiniteField>,
    pub n: usize,
    gen: MatrixGF,
    pivots: Vec<usize>,
    parity: OnceLock<MatrixGF>,
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "[{}, {}] code over {:?}", self.n, self.k(), self.field)
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.gen.row_space_eq(&other.gen)
    }
}
impl Eq for LinearCode {}

impl LinearCode {
    /// Canonicalize an arbitrary spanning matrix: the stored generator is
    /// the RREF with zero rows dropped, so equal codes compare equal.
    pub fn from_gen_matrix(m: MatrixGF) -> LinearCode {
        let n = m.cols;
        let (r, pivots) = m.rref();
        let gen = if pivots.len() == r.rows {
            r
        } else {
            let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
            MatrixGF::from_rows(m.field.clone(), rows)
                .unwrap_or_else(|_| MatrixGF::zero(m.field.clone(), 0, n))
        };
        LinearCode {
            field: gen.field.clone(),
            n,
            gen,
            pivots,
            parity: OnceLock::new(),
        }
    }

    pub fn from_words(field: Arc<FiniteField>, n: usize, words: Vec<Vec<Felt>>) -> Result<LinearCode> {
        if words.iter().any(|w| w.len() != n) {
            return validation("word length mismatch");
        }
        let m = if words.is_empty() {
            MatrixGF::zero(field, 0, n)
        } else {
            MatrixGF::from_rows(field, words)?
        };
        Ok(Self::from_gen_matrix(m))
    }

    pub fn zero_code(field: Arc<FiniteField>, n: usize) -> LinearCode {
        Self::from_gen_matrix(MatrixGF::zero(field, 0, n))
    }

    pub fn full_code(field: Arc<FiniteField>, n: usize) -> LinearCode {
        Self::from_gen_matrix(MatrixGF::identity(field, n))
    }

    pub fn k(&self) -> usize {
        self.gen.rows
    }

    /// Generator matrix in reduced row echelon form (k rows).
    pub fn gen_matrix(&self) -> &MatrixGF {
        &self.gen
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivots
    }

    /// A (n-k) x n matrix whose rows span the Euclidean dual.
    pub fn parity_matrix(&self) -> &MatrixGF {
        self.parity.get_or_init(|| self.gen.right_kernel())
    }

    pub fn contains_word(&self, word: &[Felt]) -> bool {
        assert_eq!(word.len(), self.n);
        let mut w = word.to_vec();
        self.gen.reduce_mod_rows(&self.pivots, &mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, other: &LinearCode) -> bool {
        self.n == other.n && other.gen.rows_iter().all(|r| self.contains_word(r))
    }

    pub fn euclidean_dual(&self) -> LinearCode {
        LinearCode::from_gen_matrix(self.parity_matrix().clone())
    }

    /// Entrywise x -> x^(p^t); a field automorphism applied to the code.
    pub fn conjugate(&self, t: u32) -> LinearCode {
        let f = self.field.clone();
        LinearCode::from_gen_matrix(self.gen.map(|x| f.power_frobenius(x, t)))
    }

    /// Dual under <x,y> = sum x_i^(p^t) y_i for arbitrary conjugation
    /// exponent t (not necessarily involutive).
    pub fn hermitian_dual_at(&self, t: u32) -> LinearCode {
        self.conjugate(t).euclidean_dual()
    }

    /// Hermitian dual over GF(p^(2f)) with the standard conjugation p^f.
    pub fn hermitian_dual(&self, f: u32) -> Result<LinearCode> {
        if self.field.e != 2 * f {
            return validation(format!(
                "hermitian dual needs extension degree 2*{f}, field is {:?}",
                self.field
            ));
        }
        Ok(self.hermitian_dual_at(f))
    }

    pub fn add(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.field != other.field || self.n != other.n {
            return validation("code sum operands live in different spaces");
        }
        Ok(LinearCode::from_gen_matrix(self.gen.vstack(&other.gen)?))
    }

    pub fn intersect(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.field != other.field || self.n != other.n {
            return validation("code intersection operands live in different spaces");
        }
        let sum_duals = self.euclidean_dual().add(&other.euclidean_dual())?;
        Ok(sum_duals.euclidean_dual())
    }

    /// The words of `self` whose entries all lie in GF(p^f), viewed as a
    /// code over GF(p^f). Computed as the kernel of the parity constraints
    /// written out over the prime field.
    pub fn subfield_subcode(&self, f: u32) -> Result<LinearCode> {
        let map = subfield_map(&self.field, f)?;
        let small = map.small.clone();
        let e = self.field.e as usize;
        let fd = f as usize;
        let p = self.field.p;
        let prime = make_field(p, 1)?;
        let h = self.parity_matrix();
        // Basis of GF(p^f) over GF(p): the polynomial-basis powers, with
        // index p^t in the small field's encoding.
        let basis: Vec<Felt> = (0..fd)
            .map(|t| map.embed(Felt((small.p as u64).pow(t as u32) as u32)))
            .collect();
        let mut constraints = MatrixGF::zero(prime.clone(), h.rows * e, self.n * fd);
        for r in 0..h.rows {
            for i in 0..self.n {
                let hri = h.at(r, i);
                for (t, &bt) in basis.iter().enumerate() {
                    let digs = self.field.digits(self.field.mul(hri, bt));
                    for (d, &dig) in digs.iter().enumerate() {
                        constraints.set(r * e + d, i * fd + t, Felt(dig));
                    }
                }
            }
        }
        let kernel = constraints.right_kernel();
        let words: Vec<Vec<Felt>> = (0..kernel.rows)
            .map(|kr| {
                (0..self.n)
                    .map(|i| {
                        let digs: Vec<u32> =
                            (0..fd).map(|t| kernel.at(kr, i * fd + t).0).collect();
                        small.from_digits(&digs)
                    })
                    .collect()
            })
            .collect();
        LinearCode::from_words(small, self.n, words)
    }

    /// Entrywise relative trace onto GF(p^f) of every word, as a code over
    /// GF(p^f).
    pub fn trace_image_code(&self, f: u32) -> Result<LinearCode> {
        let map = subfield_map(&self.field, f)?;
        let small = map.small.clone();
        let mut rows: Vec<Vec<Felt>> = Vec::new();
        // x^j for j < e spans GF(p^e) over the prime field, hence over
        // GF(p^f); tracing those multiples of each generator row spans the
        // full trace image.
        for j in 0..self.field.e {
            let gj = self.field.pow(self.field.generator(), j as u64);
            for i in 0..self.k() {
                let row = self
                    .gen
                    .row(i)
                    .iter()
                    .map(|&c| {
                        let t = self.field.trace_map(self.field.mul(gj, c), f)?;
                        map.project(t).ok_or_else(|| {
                            crate::error::Error::Validation("trace left the subfield".into())
                        })
                    })
                    .collect::<Result<Vec<Felt>>>()?;
                rows.push(row);
            }
        }
        LinearCode::from_words(small, self.n, rows)
    }

    /// All codewords, message-order. Only sensible for small dimensions.
    pub fn words_iter(&self) -> impl Iterator<Item = Vec<Felt>> + '_ {
        let q = self.field.size;
        let k = self.k();
        let total: u64 = q.checked_pow(k as u32).expect("word count overflow");
        (0..total).map(move |mut idx| {
            let f = &self.field;
            let mut w = vec![Felt::ZERO; self.n];
            for r in 0..k {
                let coef = Felt((idx % q) as u32);
                idx /= q;
                if !coef.is_zero() {
                    for (wc, &gc) in w.iter_mut().zip(self.gen.row(r)) {
                        *wc = f.add(*wc, f.mul(coef, gc));
                    }
                }
            }
            w
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn code(field: &Arc<FiniteField>, rows: &[&[u32]]) -> LinearCode {
        let m = MatrixGF::from_rows(
            field.clone(),
            rows.iter().map(|r| r.iter().map(|&x| Felt(x)).collect()).collect(),
        )
        .unwrap();
        LinearCode::from_gen_matrix(m)
    }

    #[test]
    fn dual_dimensions_and_bidual() {
        let f = make_field(2, 2).unwrap();
        let c = code(&f, &[&[1, 2, 3, 0, 1, 1, 0], &[0, 1, 1, 1, 0, 2, 3], &[2, 0, 0, 1, 1, 0, 1]]);
        let d = c.euclidean_dual();
        assert_eq!(c.k() + d.k(), 7);
        assert_eq!(d.euclidean_dual(), c);
        for r in 0..c.k() {
            for s in 0..d.k() {
                assert!(dot(&f, c.gen_matrix().row(r), d.gen_matrix().row(s)).is_zero());
            }
        }
    }

    #[test]
    fn gf4_repetition_is_hermitian_self_dual() {
        let f = make_field(2, 2).unwrap();
        let c = code(&f, &[&[1, 1]]);
        let d = c.hermitian_dual(1).unwrap();
        assert_eq!(d, c);
        assert!(c.hermitian_dual(2).is_err());
    }

    #[test]
    fn sum_intersection_and_containment() {
        let f = make_field(3, 1).unwrap();
        let a = code(&f, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = code(&f, &[&[0, 1, 0], &[0, 0, 1]]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.k(), 3);
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.k(), 1);
        assert!(i.contains_word(&[Felt(0), Felt(2), Felt(0)]));
        assert!(s.contains(&a) && s.contains(&b) && a.contains(&i));
        assert!(!a.contains(&b));
    }

    #[test]
    fn subfield_subcode_of_repetition() {
        let f = make_field(2, 2).unwrap();
        let c = code(&f, &[&[1, 1, 1]]);
        let sub = c.subfield_subcode(1).unwrap();
        assert_eq!((sub.n, sub.k()), (3, 1));
        assert!(sub.contains_word(&[Felt(1), Felt(1), Felt(1)]));
        // Scaling the generator by w pushes every subfield word out except 0.
        let cw = code(&f, &[&[2, 1, 1]]);
        let subw = cw.subfield_subcode(1).unwrap();
        assert_eq!(subw.k(), 0);
    }

    #[test]
    fn delsarte_euclidean_identity() {
        // (C cap GF(q')^n)^perp over GF(q') equals tr(C^perp), on a few
        // deterministic codes.
        for (p, e, f) in [(2u32, 2u32, 1u32), (2, 4, 2), (3, 2, 1)] {
            let big = make_field(p, e).unwrap();
            let g = big.generator();
            let rows = vec![
                vec![Felt::ONE, g, big.pow(g, 2), Felt::ZERO, Felt::ONE],
                vec![Felt::ZERO, Felt::ONE, g, big.pow(g, 3), big.pow(g, 1)],
            ];
            let c = LinearCode::from_words(big.clone(), 5, rows).unwrap();
            let lhs = c.subfield_subcode(f).unwrap().euclidean_dual();
            let rhs = c.euclidean_dual().trace_image_code(f).unwrap();
            assert_eq!(lhs, rhs, "GF({p}^{e}) -> GF({p}^{f})");
        }
    }

    #[test]
    fn delsarte_hermitian_identity_non_involutive() {
        // (C^sigma)^perp_h over GF(p^s) equals tr(dual of C under
        // <x,y> = sum x^(p^(s/2)) y), with s = 2 inside e = 4.
        let big = make_field(2, 4).unwrap();
        let g = big.generator();
        let rows = vec![
            vec![Felt::ONE, g, big.pow(g, 7), big.pow(g, 2), Felt::ZERO, Felt::ONE],
            vec![Felt::ZERO, Felt::ONE, g, big.pow(g, 11), big.pow(g, 3), g],
        ];
        let c = LinearCode::from_words(big.clone(), 6, rows).unwrap();
        let lhs = c.subfield_subcode(2).unwrap().hermitian_dual(1).unwrap();
        let rhs = c.hermitian_dual_at(1).trace_image_code(2).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_image_of_subfield_generated_code() {
        // A big-field code spanned by subfield rows traces back onto the
        // same rows over the subfield.
        let big = make_field(2, 4).unwrap();
        let sub = crate::field::subfield_map(&big, 2).unwrap();
        let small = sub.small.clone();
        let small_rows: Vec<Vec<Felt>> =
            vec![vec![Felt(1), Felt(2), Felt(3), Felt(0)], vec![Felt(0), Felt(1), Felt(1), Felt(2)]];
        let big_rows: Vec<Vec<Felt>> = small_rows
            .iter()
            .map(|r| r.iter().map(|&x| sub.embed(x)).collect())
            .collect();
        let c = LinearCode::from_words(big, 4, big_rows).unwrap();
        let expect = LinearCode::from_words(small, 4, small_rows).unwrap();
        assert_eq!(c.trace_image_code(2).unwrap(), expect);
    }

    #[test]
    fn words_iter_counts() {
        let f = make_field(2, 1).unwrap();
        let c = code(&f, &[&[1, 0, 1], &[0, 1, 1]]);
        let words: Vec<_> = c.words_iter().collect();
        assert_eq!(words.len(), 4);
        assert!(words.iter().all(|w| c.contains_word(w)));
    }
}
