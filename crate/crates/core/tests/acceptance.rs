//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line with
//! the measured values; run with `--nocapture` to see them all.

use std::collections::HashSet;
use std::sync::OnceLock;
use std::time::Instant;

use facethue_core::analysis::{
    a_bruteforce, a_sequence, cardano_roots, catalan, catalan_check, sign_sequence,
    threshold_steps, AnalysisError, RecurrenceForm, SignSequence,
};
use facethue_core::coloring::Die;
use facethue_core::facial::{encode_path, PathDescriptor};
use facethue_core::replay::invert_log;
use facethue_core::words::{is_nonrepetitive, sequence_from_lists, thue_ternary};
use facethue_core::*;
use num_bigint::BigUint;

fn graph(f: Family) -> PlaneGraph {
    PlaneGraph::build(generate(f).unwrap()).unwrap()
}

fn report(n: u32, pass: bool, detail: String) {
    println!(
        "criterion {n}: {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} failed: {detail}");
}

#[test]
fn criterion_1_counting_seeds() {
    let start = Instant::now();
    let seeds: Vec<BigUint> = (1..=3).map(|n| a_bruteforce(n).unwrap()).collect();
    let seeds_ok = seeds == [5u32, 17, 57].map(BigUint::from);
    let conv = a_sequence(18, RecurrenceForm::Convolution);
    let compact = a_sequence(18, RecurrenceForm::Compact);
    let mut agree = 0;
    for n in 1..=18 {
        let b = a_bruteforce(n).unwrap();
        if b == conv[n - 1] && b == compact[n - 1] {
            agree += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        1,
        seeds_ok && agree == 18 && secs < 10.0,
        format!(
            "a_1..a_3 = {:?}; brute force = both recurrences for {agree}/18 n; {secs:.2} s (limit 10 s)",
            seeds.iter().map(|x| x.to_string()).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_2_roots() {
    let r = cardano_roots();
    let l0 = (r.lambda0 - 3.383).abs() <= 5e-4;
    let l1 = (r.lambda1.re - -0.191).abs() <= 1e-3 && (r.lambda1.im - 0.509).abs() <= 1e-3;
    let res = r.residuals.iter().all(|&x| x < 1e-9);
    let modulus = r.lambda1.norm() <= 0.544;
    report(
        2,
        l0 && l1 && res && modulus,
        format!(
            "lambda0 = {:.9}; lambda1 = {:.6}{:+.6}i; |lambda1| = {:.6}; max residual = {:.2e}",
            r.lambda0,
            r.lambda1.re,
            r.lambda1.im,
            r.lambda1.norm(),
            r.residuals.iter().cloned().fold(0.0, f64::max)
        ),
    );
}

#[test]
fn criterion_3_growth() {
    let start = Instant::now();
    let a = a_sequence(50, RecurrenceForm::Compact);
    let a50 = num_traits::ToPrimitive::to_f64(&a[49]).unwrap();
    let a49 = num_traits::ToPrimitive::to_f64(&a[48]).unwrap();
    let root = a50.powf(1.0 / 50.0);
    let root_ok = (3.382..=3.384).contains(&root);

    let thresholds: Vec<u64> = (1..=10).map(|m| threshold_steps(m, 12).unwrap()).collect();
    let k11 = matches!(threshold_steps(5, 11), Err(AnalysisError::KTooSmall(11)));
    let secs = start.elapsed().as_secs_f64();
    report(
        3,
        root_ok && k11 && secs < 60.0,
        format!(
            "a_50^(1/50) = {root:.6} (required [3.382, 3.384]; a_50/a_49 = {:.6}); \
             threshold_steps(m, 12) for m = 1..10 = {thresholds:?}; k = 11 -> KTooSmall: {k11}; {secs:.2} s (limit 60 s)",
            a50 / a49
        ),
    );
}

#[test]
fn criterion_4_catalan() {
    let mut failures = Vec::new();
    for t in 1..=40usize {
        let c = catalan_check(t);
        // exact C_t against the binomial definition C_t = binom(2t, t) - binom(2t, t+1)
        let exact = binomial(2 * t, t) - binomial(2 * t, t + 1);
        if !c.holds || c.catalan != exact || catalan(t) != exact {
            failures.push(t);
        }
    }
    let c40 = catalan_check(40);
    report(
        4,
        failures.is_empty(),
        format!(
            "C_t <= 4^t/(sqrt(pi) t^1.5) for t = 1..40, failures at {failures:?}; C_40 = {} vs bound {:.4e}",
            c40.catalan, c40.bound
        ),
    );
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn round_trip_families() -> Vec<Family> {
    let mut v = Vec::new();
    v.extend((2..=100).map(Family::Path));
    v.extend((3..=50).map(Family::Cycle));
    v.extend((3..=25).map(Family::Wheel));
    for a in 2..=6 {
        for b in 2..=6 {
            v.push(Family::Grid(a, b));
        }
    }
    v
}

fn all_inputs(k: u32, t: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..k.pow(t as u32)).map(move |mut code| {
        (0..t)
            .map(|_| {
                let p = code % k + 1;
                code /= k;
                p
            })
            .collect()
    })
}

#[test]
fn criterion_5_observation_round_trip() {
    let start = Instant::now();
    let mut runs = 0usize;
    let mut exact = 0usize;
    let mut exhausted = 0usize;
    for (i, f) in round_trip_families().into_iter().enumerate() {
        let g = graph(f);
        let m = g.edge_count();
        for k in [4usize, 8, 12] {
            let lists = ListAssignment::uniform(m, k).unwrap();
            for s in 0..2u64 {
                let seed = (i as u64) << 8 | (k as u64) << 1 | s;
                let (out, input) = run_randomized(&g, &lists, seed, Some(20 * m)).unwrap();
                runs += 1;
                if out.status == Status::Exhausted {
                    exhausted += 1;
                }
                let back = invert_log(&g, &lists, &out.coloring, &out.record, out.steps_used);
                if back.as_ref() == Ok(&input)
                    && run_deterministic(&g, &lists, &input).unwrap() == out
                {
                    exact += 1;
                }
            }
        }
    }

    // all 12^3 inputs on path:3 (two edges): runs stop once both edges are
    // coloured, so most inputs never consume their third throw
    let g3 = graph(Family::Path(3));
    let l3 = ListAssignment::uniform(2, 12).unwrap();
    let mut logs = HashSet::new();
    let mut consumed = HashSet::new();
    let mut injective = true;
    let mut seen = std::collections::HashMap::new();
    for p in all_inputs(12, 3) {
        let out = run_deterministic(&g3, &l3, &InputVector::new(p.clone(), 12).unwrap()).unwrap();
        let log = (out.coloring.clone(), out.record.clone());
        let prefix = p[..out.steps_used].to_vec();
        if let Some(prev) = seen.insert(log.clone(), prefix.clone()) {
            injective &= prev == prefix;
        }
        logs.insert(log);
        consumed.insert(prefix);
    }
    let literal = logs.len() == 1728;

    // path:4 has three edges, so every input in [1,12]^3 runs all three steps
    let g4 = graph(Family::Path(4));
    let l4 = ListAssignment::uniform(3, 12).unwrap();
    let logs4: HashSet<_> = all_inputs(12, 3)
        .map(|p| {
            let out = run_deterministic(&g4, &l4, &InputVector::new(p, 12).unwrap()).unwrap();
            (out.coloring, out.record)
        })
        .collect();

    let secs = start.elapsed().as_secs_f64();
    report(
        5,
        runs >= 1000 && exact == runs && literal && secs < 300.0,
        format!(
            "round trip exact in {exact}/{runs} runs ({exhausted} exhausted at 20m steps); \
             path:3 over 12^3 inputs gives {} distinct logs (required 1728; {} distinct consumed prefixes, \
             logs injective on consumed prefixes: {injective}); path:4 gives {} distinct logs; {secs:.1} s (limit 300 s)",
            logs.len(),
            consumed.len(),
            logs4.len()
        ),
    );
}

struct TheoremRun {
    family: Family,
    status: Status,
    steps_used: usize,
    valid: Option<bool>,
    record: Record,
    /// Coloured-edge count after each step.
    coloured_after: Vec<usize>,
}

fn theorem_runs() -> &'static Vec<TheoremRun> {
    static RUNS: OnceLock<Vec<TheoremRun>> = OnceLock::new();
    RUNS.get_or_init(|| {
        let mut runs = Vec::new();
        for f in [
            Family::Grid(5, 5),
            Family::Wheel(20),
            Family::Cycle(50),
            Family::Path(100),
        ] {
            let g = graph(f);
            let m = g.edge_count();
            let lists = ListAssignment::uniform(m, 12).unwrap();
            for seed in 0..100u64 {
                let (out, input) = run_randomized(&g, &lists, seed, Some(1000 * m)).unwrap();
                let mut colorer = Colorer::new(&g, &lists).unwrap();
                let coloured_after = input
                    .entries()
                    .iter()
                    .map(|&p| {
                        colorer.step(p);
                        colorer.coloring().coloured_count()
                    })
                    .collect();
                let valid = (out.status == Status::Completed)
                    .then(|| verify_coloring(&g, &lists, &out.coloring).is_valid());
                runs.push(TheoremRun {
                    family: f,
                    status: out.status,
                    steps_used: out.steps_used,
                    valid,
                    record: out.record,
                    coloured_after,
                });
            }
        }
        runs
    })
}

#[test]
fn criterion_6_end_to_end() {
    let runs = theorem_runs();
    let mut pass = true;
    let mut parts = Vec::new();
    for chunk in runs.chunks(100) {
        let completed = chunk
            .iter()
            .filter(|r| r.status == Status::Completed)
            .count();
        let verified = chunk.iter().filter(|r| r.valid == Some(true)).count();
        let max_steps = chunk.iter().map(|r| r.steps_used).max().unwrap();
        pass &= completed >= 99 && verified == completed;
        parts.push(format!(
            "{} completed {completed}/100, verified {verified}/{completed}, max steps {max_steps}",
            chunk[0].family
        ));
    }
    report(6, pass, parts.join("; "));
}

#[test]
fn criterion_7_record_invariants() {
    let runs = theorem_runs();
    let mut bad = Vec::new();
    for r in runs {
        let s = SignSequence::from_record(&r.record);
        let sums = s.prefix_sums();
        let nonneg = sums.iter().all(|&x| x >= 0);
        let short = s.len() <= 2 * r.steps_used && sign_sequence(&r.record, r.steps_used).is_ok();
        // the block of step i is +1 followed by h_i copies of -1
        let mut pos = 0usize;
        let mut counts_match = true;
        for (i, d) in r.record.entries().iter().enumerate() {
            pos += 1 + d.map_or(0, |d: PathDescriptor| d.h() as usize);
            counts_match &= sums[pos - 1] == r.coloured_after[i] as i64;
        }
        if !(nonneg && short && counts_match) {
            bad.push(format!("{}", r.family));
        }
    }
    report(
        7,
        bad.is_empty(),
        format!(
            "{} runs: prefix sums >= 0, length <= 2 steps_used and prefix sums = coloured counts at step boundaries; violations {bad:?}",
            runs.len()
        ),
    );
}

fn small_families() -> Vec<Family> {
    let mut v: Vec<Family> = Vec::new();
    v.extend((2..=31).map(Family::Path));
    v.extend((3..=30).map(Family::Cycle));
    v.extend((3..=15).map(Family::Wheel));
    for a in 2..=16 {
        for b in 2..=16 {
            v.push(Family::Grid(a, b));
        }
    }
    v.retain(|f| f.counts().1 <= 30);
    v
}

fn oriented(path: &[EdgeId], e: EdgeId) -> Vec<EdgeId> {
    let h = path.len() / 2;
    let mut v = path.to_vec();
    if path.iter().position(|&x| x == e).unwrap() < h {
        v.reverse();
    }
    v
}

#[test]
fn criterion_8_descriptor_machinery() {
    let families = small_families();
    let graphs: Vec<PlaneGraph> = families.iter().map(|&f| graph(f)).collect();
    let mut pairs = 0usize;
    let mut round_trips = 0usize;
    for g in &graphs {
        for p in enumerate_facial_paths(g, g.max_face_len()) {
            if p.len() % 2 != 0 {
                continue;
            }
            for &e in &p.edges {
                pairs += 1;
                let ok = encode_path(g, e, &p.edges)
                    .and_then(|d| decode_path(g, e, d))
                    .is_ok_and(|back| back.edges == oriented(&p.edges, e));
                round_trips += ok as usize;
            }
        }
    }

    let mut die = Die::new(2024, 1 << 16);
    let mut agree = 0usize;
    let mut with_repetition = 0usize;
    for _ in 0..500 {
        let gi = die.throw() as usize % graphs.len();
        let g = &graphs[gi];
        let m = g.edge_count();
        // colours 1..3, about a fifth left uncoloured
        let mut colours: Vec<u32> = (0..m)
            .map(|_| {
                let x = die.throw() % 5;
                if x == 4 {
                    0
                } else {
                    x % 3 + 1
                }
            })
            .collect();
        let e = EdgeId(die.throw() % m as u32);
        if colours[e.index()] == 0 {
            colours[e.index()] = 1;
        }
        let c = Coloring::from_vec(colours);
        let got = find_repetition(g, &c, e)
            .unwrap()
            .map(|(p, d)| (p.edges, d));
        let expected = enumerate_facial_paths(g, g.max_face_len())
            .into_iter()
            .filter(|p| p.len() % 2 == 0 && p.edges.contains(&e))
            .filter(|p| {
                let cols: Vec<u32> = p.edges.iter().map(|&x| c.get(x)).collect();
                !cols.contains(&0) && cols[..cols.len() / 2] == cols[cols.len() / 2..]
            })
            .map(|p| (oriented(&p.edges, e), encode_path(g, e, &p.edges).unwrap()))
            .min_by_key(|(_, d)| *d);
        with_repetition += expected.is_some() as usize;
        agree += (got == expected) as usize;
    }
    report(
        8,
        pairs > 0 && round_trips == pairs && agree == 500,
        format!(
            "{} graphs with <= 30 edges: round trip {round_trips}/{pairs} (path, edge) pairs; \
             find_repetition = oracle on {agree}/500 partial colourings ({with_repetition} with a repetition)",
            graphs.len()
        ),
    );
}

#[test]
fn criterion_9_words() {
    let thue = is_nonrepetitive(&thue_ternary(3000)).is_none();
    let binary_fail = all_inputs(2, 4)
        .filter(|w| is_nonrepetitive(w).is_some())
        .count();
    let lists = vec![vec![1, 2, 3, 4]; 200];
    let completed = (0..100u64)
        .filter(|&seed| {
            let out = sequence_from_lists(lists.clone(), seed, Some(200_000)).unwrap();
            out.outcome.status == Status::Completed && is_nonrepetitive(&out.word).is_none()
        })
        .count();
    report(
        9,
        thue && binary_fail == 16 && completed >= 95,
        format!(
            "thue_ternary(3000) nonrepetitive: {thue}; binary words of length 4 with a square: {binary_fail}/16; \
             k = 4 on 200 identical lists completed {completed}/100"
        ),
    );
}
