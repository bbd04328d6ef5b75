//! Orbits of grid exponents under multiplication by a power of p, and the
//! machinery they unlock: explicit trace-style generators for
//! subfield-subcodes of the evaluation codes and closed-form dimension
//! counts.
//!
//! The coordinatewise action sends a_j to M a_j mod (N_j - 1), except that
//! in coordinates outside J the two boundary exponents 0 and N_j - 1 are
//! distinct grid elements and both stay fixed. Orbit sizes always divide
//! e / f where M = p^f.

use crate::error::{validation, Result};
use crate::field::{subfield_map, Felt};
use crate::matrix::MatrixGF;
use crate::variety::{build_grid, delta_perp, delta_perp_h, VarietyParams};
use std::collections::{HashMap, HashSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicSet {
    /// Orbit in generation order; members[0] is the lexicographically
    /// smallest element and serves as the representative.
    pub members: Vec<Vec<u64>>,
}

impl CyclotomicSet {
    pub fn rep(&self) -> &[u64] {
        &self.members[0]
    }
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

pub struct CyclotomicPartition {
    pub params: VarietyParams,
    pub multiplier: u64,
    /// Sorted by representative (lexicographic).
    pub sets: Vec<CyclotomicSet>,
    index: HashMap<Vec<u64>, usize>,
}

fn orbit_step(params: &VarietyParams, multiplier: u64, a: &[u64]) -> Vec<u64> {
    (0..params.m())
        .map(|j| {
            let nj1 = params.big_n[j] - 1;
            if !params.j_set[j] && (a[j] == 0 || a[j] == nj1) {
                a[j]
            } else {
                (multiplier * a[j]) % nj1
            }
        })
        .collect()
}

/// Partition the grid into orbits under coordinatewise multiplication by
/// `multiplier`, which must be a power of the field characteristic.
pub fn minimal_cyclotomic_sets(
    params: &VarietyParams,
    multiplier: u64,
) -> Result<CyclotomicPartition> {
    let p = params.field.p as u64;
    let mut m = multiplier;
    while m > 1 && m % p == 0 {
        m /= p;
    }
    if m != 1 {
        return validation(format!("multiplier {multiplier} is not a power of {p}"));
    }
    let mut sets = Vec::new();
    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    for a in params.grid() {
        if index.contains_key(&a) {
            continue;
        }
        let si = sets.len();
        let mut members = vec![a.clone()];
        index.insert(a.clone(), si);
        let mut cur = orbit_step(params, multiplier, &a);
        while cur != a {
            index.insert(cur.clone(), si);
            members.push(cur.clone());
            cur = orbit_step(params, multiplier, &cur);
        }
        sets.push(CyclotomicSet { members });
    }
    Ok(CyclotomicPartition {
        params: params.clone(),
        multiplier,
        sets,
        index,
    })
}

impl CyclotomicPartition {
    pub fn set_index_of(&self, a: &[u64]) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn set_of(&self, a: &[u64]) -> Option<&CyclotomicSet> {
        self.set_index_of(a).map(|i| &self.sets[i])
    }

    /// Union of all orbits meeting `delta`, in partition order.
    pub fn closure(&self, delta: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
        self.params.check_defining_set(delta)?;
        let mut hit = vec![false; self.sets.len()];
        for a in delta {
            hit[self.index[a]] = true;
        }
        let mut out = Vec::new();
        for (i, s) in self.sets.iter().enumerate() {
            if hit[i] {
                out.extend(s.members.iter().cloned());
            }
        }
        Ok(out)
    }

    /// Is `delta` a union of orbits?
    pub fn is_closed(&self, delta: &[Vec<u64>]) -> Result<bool> {
        Ok(self.closure(delta)?.len() == delta.len())
    }

    /// Indices of the orbits entirely inside `delta`.
    pub fn sets_inside(&self, delta: &HashSet<Vec<u64>>) -> Vec<usize> {
        (0..self.sets.len())
            .filter(|&i| self.sets[i].members.iter().all(|a| delta.contains(a)))
            .collect()
    }
}

/// Generator rows, over GF(p^f), of the subfield-subcode of the span of
/// `delta` (which must be a union of orbits for the multiplier p^f). Each
/// orbit of size i contributes i rows: the evaluations of
/// x -> sum_{s < i} (beta^l X^a x)^(p^(f s)) for l = 0..i, where beta
/// generates GF(p^(f i))^* inside the big field. Row order: orbits in
/// partition order, l ascending.
pub fn trace_generators(
    partition: &CyclotomicPartition,
    delta: &[Vec<u64>],
    f: u32,
) -> Result<MatrixGF> {
    let params = &partition.params;
    let big = &params.field;
    let p = big.p as u64;
    if partition.multiplier != p.pow(f) {
        return validation(format!(
            "subfield degree {f} does not match orbit multiplier {}",
            partition.multiplier
        ));
    }
    if !partition.is_closed(delta)? {
        return validation("defining set is not a union of cyclotomic sets");
    }
    let map = subfield_map(big, f)?;
    let grid = build_grid(params)?;
    let delta_set: HashSet<Vec<u64>> = delta.iter().cloned().collect();
    let mut rows: Vec<Vec<Felt>> = Vec::new();
    for si in partition.sets_inside(&delta_set) {
        let orbit = &partition.sets[si];
        let i = orbit.size() as u32;
        assert_eq!(big.e % (f * i), 0, "orbit size must divide e/f");
        let beta = big.pow(big.generator(), (big.size - 1) / (p.pow(f * i) - 1));
        let ev = grid.eval_monomial(orbit.rep());
        let mut beta_l = Felt::ONE;
        for _l in 0..i {
            let row = ev
                .iter()
                .map(|&v| {
                    let x = big.mul(beta_l, v);
                    let mut acc = x;
                    let mut term = x;
                    for _ in 1..i {
                        term = big.power_frobenius(term, f);
                        acc = big.add(acc, term);
                    }
                    map.project(acc)
                        .expect("trace-style sums must land in the subfield")
                })
                .collect();
            rows.push(row);
            beta_l = big.mul(beta_l, beta);
        }
    }
    if rows.is_empty() {
        return Ok(MatrixGF::zero(map.small.clone(), 0, grid.n()));
    }
    MatrixGF::from_rows(map.small.clone(), rows)
}

/// Dimension counts for the subfield-subcode of the span of `delta` and
/// its dual. `conj` selects the pairing: None for the plain product,
/// Some(t) for sum x^(p^t) y.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimReport {
    /// Exact dimension of the subfield-subcode: orbits inside `delta`.
    pub dim_subcode: usize,
    /// Orbits meeting the dual defining set; the exact dimension of the
    /// projected dual when `delta` stays in the reduced grid.
    pub dual_bound: usize,
    /// Every orbit inside `delta` meets the dual defining set.
    pub condition: bool,
    /// All exponents of `delta` have coordinates <= N_j - 2.
    pub delta_in_hprime: bool,
}

pub fn subfield_dims(
    partition: &CyclotomicPartition,
    delta: &[Vec<u64>],
    conj: Option<u32>,
) -> Result<DimReport> {
    let params = &partition.params;
    params.check_defining_set(delta)?;
    let perp = match conj {
        None => delta_perp(params, delta)?,
        Some(t) => delta_perp_h(params, delta, t)?,
    };
    let delta_set: HashSet<Vec<u64>> = delta.iter().cloned().collect();
    let perp_set: HashSet<Vec<u64>> = perp.into_iter().collect();
    let mut dim_subcode = 0;
    let mut dual_bound = 0;
    let mut condition = true;
    for s in &partition.sets {
        let inside = s.members.iter().all(|a| delta_set.contains(a));
        let meets = s.members.iter().any(|a| perp_set.contains(a));
        if inside {
            dim_subcode += s.size();
            if !meets {
                condition = false;
            }
        }
        if meets {
            dual_bound += s.size();
        }
    }
    Ok(DimReport {
        dim_subcode,
        dual_bound,
        condition,
        delta_in_hprime: delta.iter().all(|a| params.in_reduced_grid(a)),
    })
}
