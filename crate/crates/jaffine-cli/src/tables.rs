//! Built-in reproduction targets: sixteen tables of published code
//! parameters together with the construction configs that realize them.
//!
//! Each table row records the *claimed* parameters; nothing from a row is
//! ever fed into a construction. Rows carry a comment when the printed
//! values are known to disagree with what the printed defining set
//! produces, so reproduction surfaces the difference instead of hiding it.
//!
//! Several tables come in pairs (one listing parameters, one listing the
//! defining sets of the same codes); both ids resolve to the same configs
//! and rows under their own title.

use crate::config::{ConstructionConfig, ConstructionKind, ExpEntry};
use jaffine::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Classical,
    Stabilizer,
}

/// One claimed row, pointing at the report entry that must back it.
pub struct TableRow {
    pub label: &'static str,
    pub config_index: usize,
    pub kind: RowKind,
    /// Label of the classical/stabilizer entry in the construct report.
    pub entry: &'static str,
    pub n: usize,
    pub k: i64,
    pub d: u64,
    /// True when the row claims the exact distance rather than "d >= x".
    pub d_exact_claim: bool,
    /// True when the row is flagged as exceeding the counting bound.
    pub gv_claimed: bool,
    /// Claimed alphabet size (prime power), for display only.
    pub alphabet: u64,
    pub comment: &'static str,
}

pub struct TableDef {
    pub id: u32,
    pub title: &'static str,
    pub notes: &'static [&'static str],
    pub configs: Vec<ConstructionConfig>,
    pub rows: Vec<TableRow>,
}

pub fn ids() -> Vec<u32> {
    (1..=16).collect()
}

pub fn get(id: u32) -> Result<TableDef> {
    match id {
        1 | 2 => Ok(binary_records(id)),
        3 | 4 => Ok(ternary_css(id)),
        5 => Ok(ternary_steane()),
        6 => Ok(quaternary_enlargement()),
        7 | 8 => Ok(herm_gf5(id)),
        9 | 16 => Ok(herm_gf7(id)),
        10 | 11 => Ok(herm_gf3(id)),
        12 | 13 => Ok(herm_gf2(id)),
        14 | 15 => Ok(herm_gf4(id)),
        _ => Err(Error::Validation(format!("unknown table id {id} (expected 1..=16)"))),
    }
}

// ---------------------------------------------------------------------
// Builders.

fn flat(xs: &[u64]) -> Vec<ExpEntry> {
    xs.iter().map(|&x| ExpEntry::Single(x)).collect()
}

fn pairs(xs: &[[u64; 2]]) -> Vec<ExpEntry> {
    xs.iter().map(|v| ExpEntry::Vector(v.to_vec())).collect()
}

fn triples(xs: &[[u64; 3]]) -> Vec<ExpEntry> {
    xs.iter().map(|v| ExpEntry::Vector(v.to_vec())).collect()
}

#[allow(clippy::too_many_arguments)]
fn cfg(
    construction: ConstructionKind,
    p: u32,
    r: u32,
    s: u32,
    big_n: &[u64],
    j: &[usize],
    deltas: Vec<Vec<ExpEntry>>,
) -> ConstructionConfig {
    ConstructionConfig {
        construction,
        p,
        field_degree: r,
        subfield_degree: Some(s),
        m: None,
        big_n: big_n.to_vec(),
        j: j.to_vec(),
        deltas,
        distance: None,
        expurgations: Vec::new(),
    }
}

#[allow(clippy::too_many_arguments)]
fn row(
    label: &'static str,
    config_index: usize,
    kind: RowKind,
    entry: &'static str,
    n: usize,
    k: i64,
    d: u64,
    gv_claimed: bool,
    alphabet: u64,
    comment: &'static str,
) -> TableRow {
    TableRow {
        label,
        config_index,
        kind,
        entry,
        n,
        k,
        d,
        d_exact_claim: kind == RowKind::Classical,
        gv_claimed,
        alphabet,
        comment,
    }
}

fn stab(
    label: &'static str,
    config_index: usize,
    n: usize,
    k: i64,
    d: u64,
    gv: bool,
    alphabet: u64,
) -> TableRow {
    row(label, config_index, RowKind::Stabilizer, "base", n, k, d, gv, alphabet, "")
}

// ---------------------------------------------------------------------
// Tables 1 and 2: the binary length-127 enlargement and its expurgations.

fn binary_records(id: u32) -> TableDef {
    // Defining sets as printed; the third set spans the direction space,
    // whose trace span must meet C1 + C1-hat trivially. The two orbits
    // of 15 and 55 are the duality partners of the orbits of 7 and 9
    // (the ones dropped between the large and small defining sets), which
    // is exactly what keeps the intersection trivial.
    let delta_1 = flat(&[
        42, 84, 41, 82, 37, 74, 21, 2, 4, 8, 16, 32, 64, 1, 6, 12, 24, 48, 96, 65, 3, 10, 20, 40,
        80, 33, 66, 5, 14, 28, 56, 112, 97, 67, 7, 18, 36, 72, 17, 34, 68, 9,
    ]);
    let delta_1_hat = flat(&[
        0, 2, 4, 8, 16, 32, 64, 1, 6, 12, 24, 48, 96, 65, 3, 10, 20, 40, 80, 33, 66, 5, 14, 28,
        56, 112, 97, 67, 7, 18, 36, 72, 17, 34, 68, 9,
    ]);
    let direction = flat(&[15, 30, 60, 120, 113, 99, 71, 55, 110, 93, 59, 118, 109, 91]);
    let mut c = cfg(
        ConstructionKind::Generalized,
        2,
        7,
        1,
        &[128],
        &[1],
        vec![delta_1, delta_1_hat, direction],
    );
    c.expurgations = vec![1, 2, 3, 4];
    let configs = vec![c];

    let cl = |label, entry, k, d| row(label, 0, RowKind::Classical, entry, 127, k, d, false, 2, "");
    let ex = |label, entry, k| row(label, 0, RowKind::Stabilizer, entry, 127, k, 12, false, 2, "");
    match id {
        1 => TableDef {
            id,
            title: "Binary classical codes of length 127 behind the enlargement",
            notes: &["the printed distance of C1 is an underestimate: its true minimum \
                      weight is 13 (every light word found has weight 13, and complete \
                      window enumeration through weight 12 finds nothing lighter), so deep \
                      reproductions refute the printed 12 while shallow ones only report \
                      it as unconfirmed; the enlargement bound is unaffected since \
                      min{13, 12, 12} = min{12, 12, 12}"],
            configs,
            rows: vec![
                row(
                    "C1",
                    0,
                    RowKind::Classical,
                    "C1",
                    127,
                    85,
                    12,
                    false,
                    2,
                    "printed distance is understated; the actual minimum weight is 13",
                ),
                cl("C1-hat", "C1-hat", 91, 12),
                cl("C2", "C2", 99, 8),
                cl("C2-hat", "C2-hat", 105, 8),
                cl("C3", "C3", 106, 7),
            ],
        },
        _ => TableDef {
            id,
            title: "Binary stabilizer codes of length 127 with expurgations",
            notes: &[],
            configs,
            rows: vec![
                ex("C1", "base", 63),
                ex("C2", "expurgated-1", 62),
                ex("C3", "expurgated-2", 61),
                ex("C4", "expurgated-3", 60),
                ex("C5", "expurgated-4", 59),
            ],
        },
    }
}

// ---------------------------------------------------------------------
// Tables 3 and 4: ternary CSS codes (parameters / defining sets).

fn ternary_deltas() -> [Vec<ExpEntry>; 6] {
    let d1 = triples(&[[0, 0, 0], [7, 6, 1], [5, 2, 1], [0, 3, 1], [0, 1, 1], [0, 4, 1]]);
    let d2 = triples(&[
        [0, 0, 0],
        [7, 6, 1],
        [5, 2, 1],
        [0, 3, 1],
        [0, 1, 1],
        [0, 4, 1],
        [0, 0, 1],
        [6, 3, 0],
        [2, 1, 0],
    ]);
    let d3 = pairs(&[[0, 4]]);
    let d4 = pairs(&[[0, 4], [0, 7], [0, 5], [7, 4], [5, 4]]);
    let d5 = pairs(&[[0, 4], [0, 7], [0, 5], [7, 4], [5, 4], [0, 0], [4, 7], [4, 5]]);
    let d6 = pairs(&[
        [0, 4],
        [0, 7],
        [0, 5],
        [7, 4],
        [5, 4],
        [0, 0],
        [4, 7],
        [4, 5],
        [3, 7],
        [1, 5],
        [0, 6],
        [0, 2],
        [6, 5],
        [2, 7],
    ]);
    [d1, d2, d3, d4, d5, d6]
}

const TERNARY_K60: &str = "printed dimension 60 is inconsistent with the printed defining set, \
                           which yields 70; the derived enlarged code of dimension 66 needs the \
                           inner classical code at dimension 71, corroborating 70 here";

fn ternary_css(id: u32) -> TableDef {
    let [d1, d2, d3, d4, d5, d6] = ternary_deltas();
    let k = ConstructionKind::EuclidSubfield;
    let configs = vec![
        cfg(k, 3, 2, 1, &[9, 9, 3], &[2, 3], vec![d1]),
        cfg(k, 3, 2, 1, &[9, 9, 3], &[2, 3], vec![d2]),
        cfg(k, 3, 4, 1, &[9, 9], &[2], vec![d3]),
        cfg(k, 3, 4, 1, &[9, 9], &[2], vec![d4]),
        cfg(k, 3, 4, 1, &[9, 9], &[2], vec![d5]),
        cfg(k, 3, 4, 1, &[9, 9], &[2], vec![d6]),
    ];
    let rows = vec![
        stab("C1", 0, 144, 132, 3, false, 3),
        stab("C2", 1, 144, 126, 4, false, 3),
        row("C3", 2, RowKind::Stabilizer, "base", 72, 60, 2, false, 3, TERNARY_K60),
        stab("C4", 3, 72, 62, 3, false, 3),
        stab("C5", 4, 72, 56, 4, false, 3),
        stab("C6", 5, 72, 44, 6, false, 3),
    ];
    TableDef {
        id,
        title: if id == 3 {
            "Ternary CSS stabilizer codes (parameters)"
        } else {
            "Ternary CSS stabilizer codes (defining sets)"
        },
        notes: &[],
        configs,
        rows,
    }
}

// ---------------------------------------------------------------------
// Table 5: ternary Steane enlargements of consecutive table-3 codes.

fn ternary_steane() -> TableDef {
    let [d1, d2, d3, d4, d5, d6] = ternary_deltas();
    let k = ConstructionKind::Steane;
    // Each pair is [inner defining set, enlargement defining set]: the
    // larger set cuts the smaller (dual-containing) classical code.
    let configs = vec![
        cfg(k, 3, 2, 1, &[9, 9, 3], &[2, 3], vec![d2, d1]),
        cfg(k, 3, 4, 1, &[9, 9], &[2], vec![d4.clone(), d3]),
        cfg(k, 3, 4, 1, &[9, 9], &[2], vec![d5.clone(), d4]),
        cfg(k, 3, 4, 1, &[9, 9], &[2], vec![d6, d5]),
    ];
    let rows = vec![
        stab("C7", 0, 144, 129, 4, true, 3),
        stab("C8", 1, 72, 66, 3, true, 3),
        stab("C9", 2, 72, 59, 4, true, 3),
        stab("C10", 3, 72, 50, 6, true, 3),
    ];
    TableDef {
        id: 5,
        title: "Ternary Steane-enlarged stabilizer codes",
        notes: &[],
        configs,
        rows,
    }
}

// ---------------------------------------------------------------------
// Table 6: the GF(4) enlargement producing a [[63, 45]] stabilizer code.

fn quaternary_enlargement() -> TableDef {
    let delta_1 = flat(&[0, 21, 8, 32, 2, 40, 34, 10, 62, 59, 47]);
    let delta_1_hat = flat(&[21, 8, 32, 2, 40, 34, 10, 62, 59, 47]);
    // Direction space: the orbit of 1, the duality partner of the orbit
    // of 62 dropped between the large and small defining sets.
    let direction = flat(&[1, 4, 16]);
    let configs = vec![cfg(
        ConstructionKind::Generalized,
        2,
        6,
        2,
        &[64],
        &[1],
        vec![delta_1, delta_1_hat, direction],
    )];
    let cl = |label, entry, k, d| row(label, 0, RowKind::Classical, entry, 63, k, d, false, 4, "");
    TableDef {
        id: 6,
        title: "Quaternary classical codes and their two-sided enlargement",
        notes: &[],
        configs,
        rows: vec![
            cl("C1", "C1", 52, 6),
            cl("C1-hat", "C1-hat", 53, 6),
            cl("C2", "C2", 55, 5),
            cl("C2-hat", "C2-hat", 56, 4),
            cl("C3", "C3", 56, 4),
            row("C", 0, RowKind::Stabilizer, "base", 63, 45, 6, false, 4, ""),
        ],
    }
}

// ---------------------------------------------------------------------
// Tables 7/8: Hermitian-duality codes with a GF(5) alphabet.

fn herm_gf5(id: u32) -> TableDef {
    let k = ConstructionKind::HermSubfield;
    let configs = vec![
        cfg(k, 5, 4, 2, &[53], &[1], vec![flat(&[15, 11, 32, 20, 30, 22, 17, 9])]),
        cfg(k, 5, 4, 2, &[9, 14], &[1, 2], vec![pairs(&[[3, 0], [5, 0], [0, 8], [0, 5]])]),
        cfg(
            k,
            5,
            4,
            2,
            &[14, 9],
            &[2],
            vec![pairs(&[[0, 1], [0, 2], [0, 7], [12, 1], [1, 1]])],
        ),
        cfg(k, 5, 4, 2, &[13, 14], &[1, 2], vec![pairs(&[[1, 0], [3, 0], [2, 6], [2, 7]])]),
        cfg(
            k,
            5,
            4,
            2,
            &[4, 9, 4],
            &[1, 2, 3],
            vec![triples(&[[2, 6, 2], [1, 7, 2], [0, 5, 1], [2, 2, 0], [0, 3, 2]])],
        ),
        cfg(
            k,
            5,
            4,
            2,
            &[4, 9, 4],
            &[2, 3],
            vec![triples(&[[0, 7, 2], [0, 2, 0], [2, 5, 0], [0, 5, 1], [1, 2, 0]])],
        ),
    ];
    let rows = vec![
        stab("C1", 0, 52, 36, 6, true, 5),
        stab("C2", 1, 104, 96, 4, true, 5),
        stab("C3", 2, 112, 102, 4, true, 5),
        stab("C4", 3, 156, 148, 4, true, 5),
        stab("C5", 4, 72, 62, 4, true, 5),
        stab("C6", 5, 96, 86, 4, true, 5),
    ];
    TableDef {
        id,
        title: if id == 7 {
            "GF(5) Hermitian stabilizer codes (parameters)"
        } else {
            "GF(5) Hermitian stabilizer codes (defining sets)"
        },
        notes: &[],
        configs,
        rows,
    }
}

// ---------------------------------------------------------------------
// Tables 9/16: Hermitian-duality codes with a GF(7) alphabet.

fn herm_gf7(id: u32) -> TableDef {
    let k = ConstructionKind::HermSubfield;
    let configs = vec![
        cfg(
            k,
            7,
            4,
            2,
            &[7, 16],
            &[1, 2],
            vec![pairs(&[[4, 0], [5, 5], [5, 9], [5, 6], [1, 5], [0, 10]])],
        ),
        cfg(k, 7, 4, 2, &[17, 6], &[1, 2], vec![pairs(&[[1, 0], [2, 4], [2, 1], [3, 0]])]),
        cfg(
            k,
            7,
            2,
            2,
            &[49, 4],
            &[1, 2],
            vec![pairs(&[[10, 2], [15, 2], [19, 1], [8, 0], [2, 2]])],
        ),
    ];
    let rows = vec![
        row(
            "C1",
            0,
            RowKind::Stabilizer,
            "base",
            90,
            78,
            4,
            true,
            7,
            "the pinned counting-bound predicate evaluates false for (90, 78, 4) over GF(7)",
        ),
        stab("C2", 1, 80, 72, 4, true, 7),
        stab("C3", 2, 144, 134, 4, true, 7),
    ];
    TableDef {
        id,
        title: if id == 9 {
            "GF(7) Hermitian stabilizer codes (parameters)"
        } else {
            "GF(7) Hermitian stabilizer codes (defining sets)"
        },
        notes: &[],
        configs,
        rows,
    }
}

// ---------------------------------------------------------------------
// Tables 10/11: Hermitian-duality codes with a GF(3) alphabet.

const GF3_K26: &str = "printed dimension 26 needs a seven-element defining set, but only the \
                       printed eight-element set reaches distance 6 (either seven-element \
                       pruning drops to distance 5 or 4); the set is kept and the dimension \
                       discrepancy (24) is expected";

const GF3_SET7: &str = "printed set {0, 70, 71, 9} is not orbit-closed and yields dimension 69; \
                        reading 9 as 79 restores closure and the printed dimension 73, so the \
                        config uses {0, 70, 71, 79}";

fn herm_gf3(id: u32) -> TableDef {
    let k = ConstructionKind::HermSubfield;
    let configs = vec![
        cfg(k, 3, 4, 2, &[41], &[1], vec![flat(&[2, 5, 15, 18])]),
        cfg(k, 3, 4, 2, &[41], &[1], vec![flat(&[19, 11, 15, 36, 4, 5, 38, 22])]),
        cfg(k, 3, 4, 2, &[41], &[1], vec![flat(&[35, 18, 2, 36, 4, 14, 6, 23, 7, 25])]),
        cfg(
            k,
            3,
            4,
            2,
            &[41],
            &[1],
            vec![flat(&[18, 2, 15, 27, 3, 24, 16, 36, 4, 5, 14, 6])],
        ),
        cfg(
            k,
            3,
            4,
            2,
            &[9, 6],
            &[2],
            vec![pairs(&[[0, 0], [0, 3], [0, 2], [6, 4], [6, 1], [3, 0]])],
        ),
        cfg(
            k,
            3,
            4,
            2,
            &[9, 6],
            &[2],
            vec![pairs(&[
                [0, 4],
                [0, 1],
                [0, 3],
                [0, 2],
                [1, 4],
                [1, 1],
                [2, 4],
                [2, 1],
                [3, 0],
            ])],
        ),
        cfg(k, 3, 4, 2, &[81], &[], vec![flat(&[0, 70, 71, 79])]),
        cfg(k, 3, 6, 2, &[92], &[1], vec![flat(&[9, 81, 1, 50, 86, 46, 54, 31, 6])]),
    ];
    let rows = vec![
        stab("C1", 0, 40, 32, 4, true, 3),
        row("C2", 1, RowKind::Stabilizer, "base", 40, 26, 6, true, 3, GF3_K26),
        stab("C3", 2, 40, 20, 7, true, 3),
        stab("C4", 3, 40, 16, 8, true, 3),
        stab("C5", 4, 45, 33, 4, true, 3),
        stab("C6", 5, 45, 27, 5, false, 3),
        row("C7", 6, RowKind::Stabilizer, "base", 81, 73, 4, true, 3, GF3_SET7),
        stab("C8", 7, 91, 73, 6, true, 3),
    ];
    TableDef {
        id,
        title: if id == 10 {
            "GF(3) Hermitian stabilizer codes (parameters)"
        } else {
            "GF(3) Hermitian stabilizer codes (defining sets)"
        },
        notes: &[],
        configs,
        rows,
    }
}

// ---------------------------------------------------------------------
// Tables 12/13: Hermitian-duality codes with a GF(2) alphabet.

fn herm_gf2(id: u32) -> TableDef {
    let k = ConstructionKind::HermSubfield;
    let configs = vec![
        cfg(
            k,
            2,
            4,
            2,
            &[16, 16],
            &[1, 2],
            vec![pairs(&[
                [12, 5],
                [3, 5],
                [9, 13],
                [6, 7],
                [13, 13],
                [7, 7],
                [5, 9],
                [5, 6],
                [9, 0],
                [6, 0],
            ])],
        ),
        cfg(
            k,
            2,
            4,
            2,
            &[16, 16],
            &[1, 2],
            vec![pairs(&[
                [12, 5],
                [3, 5],
                [9, 13],
                [6, 7],
                [13, 13],
                [7, 7],
                [5, 9],
                [5, 6],
                [9, 0],
                [6, 0],
                [10, 8],
                [10, 2],
                [12, 12],
                [3, 3],
            ])],
        ),
        cfg(
            k,
            2,
            4,
            2,
            &[16, 16],
            &[2],
            vec![pairs(&[
                [4, 4],
                [1, 1],
                [0, 9],
                [0, 6],
                [0, 14],
                [0, 11],
                [8, 4],
                [2, 1],
                [0, 10],
            ])],
        ),
    ];
    let rows = vec![
        stab("C1", 0, 225, 205, 4, true, 2),
        stab("C2", 1, 225, 197, 5, true, 2),
        stab("C3", 2, 240, 222, 4, true, 2),
    ];
    TableDef {
        id,
        title: if id == 12 {
            "GF(2) Hermitian stabilizer codes (parameters)"
        } else {
            "GF(2) Hermitian stabilizer codes (defining sets)"
        },
        notes: &[],
        configs,
        rows,
    }
}

// ---------------------------------------------------------------------
// Tables 14/15: Hermitian-duality codes with a GF(4) alphabet.

const GF4_PARITY: &str = "unverifiable-as-printed: n - k must be even for this construction, so \
                          [[51, 36, 7]] is impossible for any defining set; the printed set \
                          yields dimension 33, reported with the discrepancy";

fn herm_gf4(id: u32) -> TableDef {
    let k = ConstructionKind::HermSubfield;
    let configs = vec![
        cfg(k, 2, 8, 4, &[52], &[1], vec![flat(&[34, 32, 2, 42, 9])]),
        cfg(k, 2, 8, 4, &[52], &[1], vec![flat(&[32, 2, 45, 6, 10, 7])]),
        cfg(k, 2, 8, 4, &[52], &[1], vec![flat(&[34, 29, 5, 26, 8, 27, 24])]),
        cfg(k, 2, 8, 4, &[52], &[1], vec![flat(&[23, 11, 39, 12, 16, 1, 34, 50, 35])]),
        cfg(k, 2, 8, 4, &[52], &[], vec![flat(&[0, 34, 26, 8])]),
        cfg(k, 2, 8, 4, &[52], &[], vec![flat(&[0, 32, 2, 49, 19, 30, 21])]),
        cfg(k, 2, 8, 4, &[52], &[], vec![flat(&[40, 28, 0, 34, 48, 3, 26, 8])]),
        cfg(k, 2, 8, 4, &[256], &[1], vec![flat(&[114, 39, 17, 241, 31])]),
        cfg(
            k,
            2,
            8,
            4,
            &[18, 4],
            &[2],
            vec![pairs(&[[0, 0], [0, 1], [0, 2], [16, 0], [1, 0]])],
        ),
        cfg(
            k,
            2,
            8,
            4,
            &[18, 4],
            &[2],
            vec![pairs(&[
                [0, 0],
                [0, 1],
                [13, 0],
                [4, 0],
                [0, 2],
                [12, 2],
                [5, 2],
                [15, 1],
                [2, 1],
            ])],
        ),
    ];
    let rows = vec![
        stab("C1", 0, 51, 41, 4, true, 4),
        stab("C2", 1, 51, 39, 5, true, 4),
        stab("C3", 2, 51, 37, 6, true, 4),
        row("C4", 3, RowKind::Stabilizer, "base", 51, 36, 7, true, 4, GF4_PARITY),
        stab("C5", 4, 52, 44, 4, true, 4),
        stab("C6", 5, 52, 38, 5, true, 4),
        stab("C7", 6, 52, 36, 6, true, 4),
        stab("C8", 7, 255, 245, 4, true, 4),
        stab("C9", 8, 54, 44, 4, true, 4),
        stab("C10", 9, 54, 36, 6, true, 4),
    ];
    TableDef {
        id,
        title: if id == 14 {
            "GF(4) Hermitian stabilizer codes (parameters)"
        } else {
            "GF(4) Hermitian stabilizer codes (defining sets)"
        },
        notes: &[],
        configs,
        rows,
    }
}

// ---------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::{run_reproduce, Globals};
    use jaffine::stabilizer::gv_check;

    #[test]
    fn unknown_ids_are_rejected() {
        assert!(get(0).is_err());
        assert!(get(17).is_err());
        for id in ids() {
            assert_eq!(get(id).unwrap().id, id);
        }
    }

    #[test]
    fn every_config_validates_and_rows_point_at_configs() {
        for id in ids() {
            let def = get(id).unwrap();
            assert!(!def.rows.is_empty(), "table {id} has no rows");
            for (ci, cfg) in def.configs.iter().enumerate() {
                cfg.validate().unwrap_or_else(|e| panic!("table {id} config {ci}: {e}"));
            }
            for r in &def.rows {
                assert!(r.config_index < def.configs.len(), "table {id} row {}", r.label);
                assert!(r.k >= 1 && r.d >= 1);
            }
        }
    }

    #[test]
    fn paired_ids_share_configs_and_rows() {
        for (a, b) in [(3u32, 4u32), (7, 8), (9, 16), (10, 11), (12, 13), (14, 15)] {
            let (ta, tb) = (get(a).unwrap(), get(b).unwrap());
            let json = |c: &[ConstructionConfig]| serde_json::to_value(c).unwrap();
            assert_eq!(json(&ta.configs), json(&tb.configs), "{a}/{b}");
            assert_eq!(ta.rows.len(), tb.rows.len());
            for (ra, rb) in ta.rows.iter().zip(&tb.rows) {
                assert_eq!((ra.label, ra.n, ra.k, ra.d), (rb.label, rb.n, rb.k, rb.d));
            }
            assert_ne!(ta.title, tb.title);
        }
    }

    #[test]
    fn counting_bound_flags_hold_except_the_known_gf7_row() {
        for id in ids() {
            let def = get(id).unwrap();
            for (i, r) in def.rows.iter().enumerate() {
                if !r.gv_claimed {
                    continue;
                }
                let exceeds =
                    gv_check(r.n as u64, r.k as u64, r.d, r.alphabet).unwrap().exceeds_gv;
                let expected = !(matches!(id, 9 | 16) && i == 0);
                assert_eq!(exceeds, expected, "table {id} row {} ({})", i + 1, r.label);
            }
        }
    }

    /// Dimension-level sweep over every table: with a tiny distance budget
    /// the constructions still pin (n, k) and the claimed counting-bound
    /// flags, so every known printed inconsistency — and nothing else —
    /// must surface.
    #[test]
    fn reproduction_surfaces_exactly_the_known_discrepancies() {
        let mut seen = Vec::new();
        for id in ids() {
            let rep = run_reproduce(id, None, Some(0.0001), &Globals::uncached(1)).unwrap();
            for d in &rep.discrepancies {
                if d.location.ends_with(" d") {
                    // Distance brackets at this budget are meaningful only
                    // for rows whose printed dimension is already wrong
                    // (the computed object is a different code).
                    continue;
                }
                seen.push(d.location.clone());
            }
        }
        seen.sort();
        let expected = vec![
            "table 10, row 2 (C2), k",
            "table 11, row 2 (C2), k",
            "table 14, row 4 (C4), k",
            "table 15, row 4 (C4), k",
            "table 16, row 1 (C1), gv",
            "table 3, row 3 (C3), k",
            "table 4, row 3 (C3), k",
            "table 9, row 1 (C1), gv",
        ];
        assert_eq!(seen, expected);
    }
}
