//! Scratch probe (not part of the suite): hunt a weight-12 word of the
//! [127, 85] code through random column permutations.

use jaffine::code::LinearCode;
use jaffine::field::make_field;
use jaffine::variety::{evaluate_code, VarietyParams};
use jaffine::weight::{min_weight, DistanceOpts, WeightMethod};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coset(start: u64) -> Vec<u64> {
    let mut v = vec![start];
    let mut x = (2 * start) % 127;
    while x != start {
        v.push(x);
        x = (2 * x) % 127;
    }
    v
}

#[test]
#[ignore]
fn certify_exact_distance() {
    let f = make_field(2, 7).unwrap();
    let params = VarietyParams::new(f, vec![128], &[0]).unwrap();
    let mut delta: Vec<Vec<u64>> = Vec::new();
    for s in [1u64, 3, 5, 7, 9, 21] {
        delta.extend(coset(s).into_iter().map(|x| vec![x]));
    }
    let c1 = evaluate_code(&params, &delta)
        .unwrap()
        .euclidean_dual()
        .subfield_subcode(1)
        .unwrap();
    assert_eq!((c1.n, c1.k()), (127, 85));
    let opts = DistanceOpts {
        method: WeightMethod::InformationSet,
        budget: Some(56_000_000_000),
        exhaustive_cap: 1 << 26,
        mc_samples: 1000,
        seed: 11,
        threads: 1,
        target_upper: None,
    };
    let t0 = std::time::Instant::now();
    let r = min_weight(&c1, &opts).unwrap();
    println!(
        "certification: lower {} upper {:?} exact {} level {} enumerated {} in {:.0}s",
        r.lower,
        r.upper,
        r.exact,
        r.completed_level,
        r.enumerated,
        t0.elapsed().as_secs_f64()
    );
    assert!(r.exact, "expected an exact result");
    assert_eq!(r.lower, 13);
}

#[test]
#[ignore]
fn hunt_weight_12() {
    let f = make_field(2, 7).unwrap();
    let params = VarietyParams::new(f, vec![128], &[0]).unwrap();
    let mut delta: Vec<Vec<u64>> = Vec::new();
    for s in [1u64, 3, 5, 7, 9, 21] {
        delta.extend(coset(s).into_iter().map(|x| vec![x]));
    }
    assert_eq!(delta.len(), 42);
    let c1 = evaluate_code(&params, &delta)
        .unwrap()
        .euclidean_dual()
        .subfield_subcode(1)
        .unwrap();
    assert_eq!((c1.n, c1.k()), (127, 85));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for window in 0..5 {
        let mut perm: Vec<usize> = (0..127).collect();
        perm.shuffle(&mut rng);
        let rows: Vec<Vec<_>> = (0..c1.k())
            .map(|r| {
                let row = c1.gen_matrix().row(r);
                perm.iter().map(|&j| row[j]).collect()
            })
            .collect();
        let pc = LinearCode::from_words(c1.field.clone(), 127, rows).unwrap();
        let opts = DistanceOpts {
            method: WeightMethod::InformationSet,
            budget: Some(500_000_000),
            exhaustive_cap: 1 << 26,
            mc_samples: 1000,
            seed: 7 + window,
            threads: 1,
            target_upper: Some(12),
        };
        let r = min_weight(&pc, &opts).unwrap();
        println!(
            "window {window}: lower {} upper {:?} level {} enumerated {}",
            r.lower, r.upper, r.completed_level, r.enumerated
        );
        if r.upper == Some(12) {
            return;
        }
    }
    panic!("no weight-12 word found in five windows");
}
