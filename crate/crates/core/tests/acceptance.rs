//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints its `criterion N [...]: PASS|FAIL` line even under a plain
//! `cargo test`. Criteria run concurrently; lines print in criterion order.

use std::time::{Duration, Instant};

use cremona::geometry::{
    canonical_form, condition_star, cremona_at, equivalent, random_config, CenterSet, Configuration, ProjectiveMap,
};
use cremona::lattice::{
    coxeter_element, coxeter_relations, cremona_map, cremona_pushforward, distinctness_certificate, jordan_certificate,
    permutation_map, permute_class, CoxeterGenerators, DivisorClass, IntMatrix, LatticeMap,
};
use cremona::orbit::{consistency_check, lemma3_iterate, orbit_bfs, IterateOptions, OrbitLimits};
use cremona::Permutation;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The 9×9 matrix in the basis H, E1..E8, transcribed row by row.
const PRINTED_COXETER_MATRIX: [[i64; 9]; 9] = [
    [3, 1, 1, 1, 1, 0, 0, 0, 0],
    [-2, -1, 0, -1, -1, 0, 0, 0, 0],
    [-2, -1, -1, 0, -1, 0, 0, 0, 0],
    [-2, -1, -1, -1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
    [-2, 0, -1, -1, -1, 0, 0, 0, 0],
];

struct Verdict {
    pass: bool,
    line: String,
}

fn report(n: u32, name: &str, ok: bool, elapsed: Duration, limit: Duration, detail: &str) -> Verdict {
    let pass = ok && elapsed < limit;
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("criterion {n} [{name}]: {verdict} ({elapsed:.2?} / limit {limit:.0?}) {detail}");
    Verdict { pass, line }
}

fn printed() -> IntMatrix {
    IntMatrix::from_i64(&PRINTED_COXETER_MATRIX).unwrap()
}

fn random_class(rng: &mut ChaCha8Rng, k: usize) -> DivisorClass {
    let m: Vec<i64> = (0..k).map(|_| rng.gen_range(-1000..=1000)).collect();
    DivisorClass::from_i64(rng.gen_range(-1000..=1000), &m)
}

fn random_permutation(rng: &mut ChaCha8Rng, k: usize) -> Permutation {
    let mut source: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        source.swap(i, rng.gen_range(0..=i));
    }
    Permutation::new(source).unwrap()
}

fn random_map(rng: &mut ChaCha8Rng) -> ProjectiveMap {
    loop {
        let rows: [[i64; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-6..=6)));
        if let Ok(m) = ProjectiveMap::from_integers(rows) {
            return m;
        }
    }
}

/// Points 5–8 on the plane X3 = 0; points 1–4 in general position otherwise.
fn special_config() -> Configuration {
    Configuration::from_i64(&[
        [3, 1, 4, 1],
        [5, -9, 2, 6],
        [5, 3, -5, 8],
        [9, 7, 9, -3],
        [2, 3, 8, 0],
        [4, -6, 2, 0],
        [6, 4, -3, 0],
        [3, 2, 7, 0],
    ])
    .unwrap()
}

fn criterion_1_matrix_reproduction() -> Verdict {
    let t = Instant::now();
    let m = coxeter_element(8).unwrap();
    let ok = m.matrix() == &printed();
    report(1, "matrix reproduction", ok, t.elapsed(), Duration::from_secs(1), "coxeter_element(8) vs printed 9x9")
}

fn criterion_2_update_rules_give_matrix_columns() -> Verdict {
    let t = Instant::now();
    // The update rules written out on plain integers, then "first point last".
    let update = |d: i64, m: [i64; 8]| -> (i64, [i64; 8]) {
        let s: i64 = m[..4].iter().sum();
        let mut out = m;
        for i in 0..4 {
            out[i] = 2 * d + m[i] - s;
        }
        let shifted: [i64; 8] = std::array::from_fn(|i| out[(i + 1) % 8]);
        (3 * d - s, shifted)
    };
    let mut ok = true;
    for col in 0..9 {
        // Basis vector: H, or E_col (multiplicity −1).
        let (d, m) = if col == 0 {
            (1, [0; 8])
        } else {
            let mut m = [0; 8];
            m[col - 1] = -1;
            (0, m)
        };
        let (d2, m2) = update(d, m);
        let column: Vec<i64> = std::iter::once(d2).chain(m2.iter().map(|x| -x)).collect();
        let expected: Vec<i64> = (0..9).map(|r| PRINTED_COXETER_MATRIX[r][col]).collect();
        ok &= column == expected;
    }
    report(2, "update rules vs matrix columns", ok, t.elapsed(), Duration::from_secs(1), "9 basis classes")
}

fn criterion_3_involution_and_invariants() -> Verdict {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    let gens = CoxeterGenerators::new(8).unwrap();
    let mut generators: Vec<&LatticeMap> = vec![&gens.r];
    generators.extend(gens.s.iter());
    let coxeter = coxeter_element(8).unwrap();
    let first_four = CenterSet::first_four();

    let mut ok = cremona_map(8, first_four).unwrap().pow(2).is_identity();
    let trials = 1000;
    for _ in 0..trials {
        let c = random_class(&mut rng, 8);
        let labels: Vec<usize> = rand::seq::index::sample(&mut rng, 8, 4).into_iter().map(|i| i + 1).collect();
        let centers = CenterSet::from_labels(&labels, 8).unwrap();
        let once = cremona_pushforward(&c, centers).unwrap();
        ok &= cremona_pushforward(&once, centers).unwrap() == c;
        ok &= cremona_map(8, centers).unwrap().pow(2).is_identity();
        let invariant = c.quartic_pairing();
        ok &= once.quartic_pairing() == invariant;
        for g in &generators {
            ok &= g.apply(&c).unwrap().quartic_pairing() == invariant;
        }
        ok &= coxeter.apply(&c).unwrap().quartic_pairing() == invariant;
        let perm = random_permutation(&mut rng, 8);
        ok &= permute_class(&c, &perm).unwrap().quartic_pairing() == invariant;
        ok &= permutation_map(&perm).apply(&c).unwrap() == permute_class(&c, &perm).unwrap();
    }
    for fixed in [DivisorClass::quadric(8), DivisorClass::anticanonical(8)] {
        ok &= coxeter.apply(&fixed).unwrap() == fixed;
    }
    report(3, "involution and invariants", ok, t.elapsed(), Duration::from_secs(1), &format!("{trials} random classes"))
}

fn criterion_4_jordan_certificate() -> Verdict {
    let t = Instant::now();
    let m = coxeter_element(8).unwrap();
    let cert = jordan_certificate(m.matrix()).unwrap();
    // Cayley–Hamilton: the polynomial must annihilate the matrix.
    let mut value = IntMatrix::zeros(9, 9);
    for c in cert.characteristic_polynomial.iter().rev() {
        value = &value * m.matrix();
        for i in 0..9 {
            let v = value.get(i, i) + c;
            value = set_entry(value, i, i, v);
        }
    }
    let annihilates = value.rows().iter().flatten().all(Zero::is_zero);
    let ok = cert.multiplicity_of_one == 3
        && cert.ranks == vec![8, 7, 6, 6]
        && cert.blocks_at_one() == Some(vec![3])
        && annihilates;
    let detail = format!("mult(1) = {}, ranks = {:?}", cert.multiplicity_of_one, cert.ranks);
    report(4, "Jordan certificate", ok, t.elapsed(), Duration::from_secs(5), &detail)
}

fn set_entry(m: IntMatrix, r: usize, c: usize, v: BigInt) -> IntMatrix {
    let mut rows = m.rows().to_vec();
    rows[r][c] = v;
    IntMatrix::new(rows).unwrap()
}

fn criterion_5_distinctness() -> Verdict {
    let t = Instant::now();
    let v = DivisorClass::plane_through(8, &[5, 6, 7, 8]);
    let r = distinctness_certificate(&v, 500).unwrap();
    let head: Vec<BigInt> = r.degrees[..8].to_vec();
    let ok = r.all_distinct
        && head == [1, 3, 2, 3, 3, 4, 3, 5].map(BigInt::from).to_vec()
        && r.nilpotent_square_nonzero
        && r.growth_observed;
    let detail = format!(
        "N = 500, degree at 500 = {}, eigenvalue-1 depth {}, window minima {} .. {}",
        r.degrees[500],
        r.unipotent_depth,
        r.window_min_degrees.first().unwrap(),
        r.window_min_degrees.last().unwrap()
    );
    report(5, "distinctness", ok, t.elapsed(), Duration::from_secs(10), &detail)
}

fn criterion_6_coxeter_relations() -> Verdict {
    let t = Instant::now();
    let mut ok = true;
    let mut counts = Vec::new();
    for k in [8, 9] {
        let rels = coxeter_relations(k).unwrap();
        ok &= rels.iter().all(|r| r.holds);
        counts.push(format!("k={k}: {} relations", rels.len()));
    }
    report(6, "Coxeter relations T_{2,4,k-4}", ok, t.elapsed(), Duration::from_secs(5), &counts.join(", "))
}

fn criterion_7_geometric_lattice_cross_validation() -> Verdict {
    let t = Instant::now();
    let generic = random_config(2024, 50, 8).unwrap();
    let run = lemma3_iterate(&generic, 6, IterateOptions::default()).expect("generic run satisfies (*)");
    let generic_ok = run.records.len() == 7
        && run.all_star_checks_passed()
        && run.pairwise_inequivalent()
        && consistency_check(&run)
        && run.records.iter().all(|r| r.coplanar.is_empty());

    let special = lemma3_iterate(&special_config(), 1, IterateOptions::default()).expect("special run");
    let special_ok = special.records[0].coplanar == vec![[5, 6, 7, 8]]
        && special.records[1].coplanar.is_empty()
        && consistency_check(&special);

    let detail = format!(
        "generic: 7 configs, max bits {}; special: step0 {:?}, step1 {:?}",
        run.records.last().unwrap().max_bits,
        special.records[0].coplanar,
        special.records[1].coplanar
    );
    report(7, "geometric-lattice cross-validation", generic_ok && special_ok, t.elapsed(), Duration::from_secs(60), &detail)
}

fn criterion_8_equivalence_soundness() -> Verdict {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xE8);
    let mut ok = true;
    let trials = 100;
    for seed in 0..trials {
        let c = random_config(1000 + seed, 30, 8).unwrap();
        let moved = c.permuted(&random_permutation(&mut rng, 8)).unwrap().apply_map(&random_map(&mut rng));
        ok &= equivalent(&c, &moved).unwrap();
        let labels: Vec<usize> = rand::seq::index::sample(&mut rng, 8, 4).into_iter().map(|i| i + 1).collect();
        let centers = CenterSet::from_labels(&labels, 8).unwrap();
        assert!(condition_star(&c, centers));
        let image = cremona_at(&c, centers).unwrap();
        ok &= !equivalent(&c, &image).unwrap();
    }
    report(8, "equivalence soundness", ok, t.elapsed(), Duration::from_secs(60), &format!("{trials} seeded trials"))
}

fn criterion_9_orbit_bfs() -> Verdict {
    let t = Instant::now();
    let c = random_config(99, 50, 8).unwrap();
    let serial = orbit_bfs(&c, OrbitLimits { max_depth: 1, max_nodes: 10_000, workers: 1 }).unwrap();
    let parallel = orbit_bfs(&c, OrbitLimits { max_depth: 1, max_nodes: 10_000, workers: 4 }).unwrap();
    let nodes = |g: &cremona::orbit::OrbitGraph| {
        let mut v: Vec<_> = g.nodes.iter().map(|n| n.canonical_form.clone()).collect();
        v.sort();
        v
    };
    let distinct = {
        let mut v = nodes(&serial);
        v.dedup();
        v.len()
    };
    let ok = serial.nodes.len() == 71
        && distinct == 71
        && nodes(&serial) == nodes(&parallel)
        && serial == parallel
        && serial.nodes.iter().all(|n| canonical_form(&n.representative).unwrap() == n.canonical_form);
    let detail = format!("{} nodes (1 worker), {} nodes (4 workers)", serial.nodes.len(), parallel.nodes.len());
    report(9, "orbit BFS", ok, t.elapsed(), Duration::from_secs(120), &detail)
}

fn main() {
    let criteria: [(u32, fn() -> Verdict); 9] = [
        (1, criterion_1_matrix_reproduction),
        (2, criterion_2_update_rules_give_matrix_columns),
        (3, criterion_3_involution_and_invariants),
        (4, criterion_4_jordan_certificate),
        (5, criterion_5_distinctness),
        (6, criterion_6_coxeter_relations),
        (7, criterion_7_geometric_lattice_cross_validation),
        (8, criterion_8_equivalence_soundness),
        (9, criterion_9_orbit_bfs),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let selected: Vec<_> = criteria
        .into_iter()
        .filter(|(n, _)| filter.is_empty() || filter.iter().any(|f| f == &n.to_string()))
        .collect();
    let handles: Vec<_> = selected.into_iter().map(|(n, f)| (n, std::thread::spawn(f))).collect();
    let mut failed = 0;
    for (n, h) in handles {
        let v = h.join().unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Verdict { pass: false, line: format!("criterion {n}: FAIL (panicked: {})", msg.unwrap_or_default()) }
        });
        failed += usize::from(!v.pass);
        println!("{}", v.line);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
