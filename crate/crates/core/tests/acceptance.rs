//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use septamer::families::{self, random_connected, random_interval_graph, LabeledGraph};
use septamer::mwis::{brute_mwis, solve_mwis, Weight, WeightedGraph};
use septamer::reconstruction::{count_by_reconstruction, ReconstructionReport};
use septamer::separators::{
    brute_force_separators, is_minimal_separator, minimal_separators, separator_traces, trace_bound,
};
use septamer::structures::{creature_separators, find_creature, CreatureWitness};
use septamer::{Graph, Search, VertexSet};

type Outcome = Result<String, String>;

fn check(cond: bool, ok: impl Into<String>, fail: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(fail.into())
    }
}

fn count(g: &Graph) -> usize {
    minimal_separators(g).len()
}

fn prism_count() -> Outcome {
    for k in 3..=8 {
        let g = families::prism(k).unwrap().graph;
        let c = count(&g);
        if c != (1 << k) - 2 {
            return Err(format!("prism({k}): {c} separators, expected {}", (1 << k) - 2));
        }
        if k <= 5 && brute_force_separators(&g).unwrap().len() != c {
            return Err(format!("prism({k}): brute force disagrees"));
        }
    }
    Ok("2^k - 2 for k = 3..8, brute force agrees for k = 3..5".into())
}

fn creature_lower_bound() -> Outcome {
    for k in 1..=4 {
        for (a, b) in [(1, 1), (2, 2)] {
            let lg = families::creature_graph(k, a, b).unwrap();
            let c = count(&lg.graph);
            if c < 1 << k {
                return Err(format!("creature_graph({k},{a},{b}): {c} < 2^{k}"));
            }
            let w = CreatureWitness::canonical(&lg);
            let sub = lg.graph.induced_subgraph(&w.vertices()).unwrap();
            let seps = creature_separators(&lg.graph, &w).unwrap();
            let distinct: BTreeSet<VertexSet> = seps.iter().map(|m| m.separator.clone()).collect();
            if distinct.len() != 1 << k {
                return Err(format!("creature_graph({k},{a},{b}): {} distinct separators", distinct.len()));
            }
            if !distinct.iter().all(|s| is_minimal_separator(&sub.graph, &sub.map_in(s)).is_some()) {
                return Err(format!("creature_graph({k},{a},{b}): an emitted set is not a minimal separator"));
            }
        }
    }
    Ok("count >= 2^k and exactly 2^k verified separators for k <= 4".into())
}

fn h_structure() -> Outcome {
    let h = families::h_graph(2).unwrap();
    let mut verified = 0;
    // One internal vertex on each of the two paths (four internal vertices each).
    for a in 1..=4 {
        for b in 1..=4 {
            let s = h.set(&[&format!("p1_{a}"), &format!("p2_{b}")]);
            if is_minimal_separator(&h.graph, &s).is_some() {
                verified += 1;
            }
        }
    }
    let enumerated = count(&h.graph);
    let brute = brute_force_separators(&h.graph).unwrap().len();
    check(
        verified == 16 && enumerated == brute,
        format!("16 internal-choice sets verified; {enumerated} separators in total, brute force agrees"),
        format!("verified {verified}/16, enumeration {enumerated}, brute force {brute}"),
    )
}

fn chordal_control() -> Outcome {
    for seed in 0..100u64 {
        let n = 1 + (seed % 12) as usize;
        let g = random_interval_graph(n, seed).unwrap();
        let c = count(&g);
        if c > n.saturating_sub(1) {
            return Err(format!("interval graph n={n} seed={seed}: {c} separators"));
        }
    }
    Ok("100 interval graphs, count <= n - 1 in every sample".into())
}

fn ladder_tameness() -> Outcome {
    let counts: Vec<usize> = (1..=8).map(|k| count(&families::skinny_ladder(k).unwrap().graph)).collect();
    for k in 1..=4 {
        let brute = brute_force_separators(&families::skinny_ladder(k).unwrap().graph).unwrap().len();
        if brute != counts[k - 1] {
            return Err(format!("skinny_ladder({k}): enumeration {} vs brute force {brute}", counts[k - 1]));
        }
    }
    let ratio = |k: usize| counts[k - 1] as f64 / (k * k * k) as f64;
    let c = (1..=4).map(ratio).fold(0.0, f64::max);
    let worst = (5..=8).map(ratio).fold(0.0, f64::max);
    check(
        worst <= c,
        format!("counts {counts:?}; C = {c:.3} from k <= 4, max ratio for k = 5..8 is {worst:.3}"),
        format!("counts {counts:?}; ratio {worst:.3} exceeds C = {c:.3}"),
    )
}

fn smallest_free_k(g: &Graph) -> Option<usize> {
    (1..=g.n()).find(|&k| find_creature(g, k, 50_000_000) == Search::None)
}

fn trace_bound_holds(g: &Graph, k: usize) -> Result<usize, String> {
    let seps = minimal_separators(g);
    let mut largest = 0;
    for v in 0..g.n() {
        let t = separator_traces(g, v, &seps).len();
        if t as u128 > trace_bound(g.n(), k as u32) {
            return Err(format!("vertex {v}: {t} traces exceed n^{}", k + 1));
        }
        largest = largest.max(t);
    }
    Ok(largest)
}

fn trace_family_bound() -> Outcome {
    let theta = families::theta(3, 3).unwrap().graph;
    if !find_creature(&theta, 3, 10_000_000).is_found() {
        return Err("theta(3,3) should contain a 3-creature".into());
    }
    let t1 = trace_bound_holds(&theta, 3)?;
    let ladder = families::skinny_ladder(4).unwrap().graph;
    let k = smallest_free_k(&ladder).ok_or("no creature-free k for skinny_ladder(4)")?;
    let t2 = trace_bound_holds(&ladder, k)?;
    Ok(format!("theta(3,3) with k = 3: max {t1} traces; skinny_ladder(4) free at k = {k}: max {t2} traces"))
}

fn family_corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let mut push = |name: String, lg: LabeledGraph| {
        if lg.graph.n() <= 30 {
            out.push((name, lg.graph));
        }
    };
    for k in 3..=8 {
        push(format!("prism({k})"), families::prism(k).unwrap());
    }
    for k in 1..=4 {
        for (a, b) in [(1, 1), (2, 2)] {
            push(format!("creature_graph({k},{a},{b})"), families::creature_graph(k, a, b).unwrap());
        }
    }
    for k in 1..=8 {
        push(format!("skinny_ladder({k})"), families::skinny_ladder(k).unwrap());
    }
    for (k, l) in [(2, 3), (3, 3), (4, 3), (2, 5), (3, 4)] {
        push(format!("theta({k},{l})"), families::theta(k, l).unwrap());
    }
    for k in 1..=3 {
        push(format!("h_graph({k})"), families::h_graph(k).unwrap());
    }
    for seed in 0..20u64 {
        let n = 4 + (seed % 9) as usize;
        out.push((format!("interval({n},{seed})"), random_interval_graph(n, seed).unwrap()));
    }
    out
}

fn random_corpus() -> Vec<(String, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..300u64)
        .map(|seed| {
            let n = rng.gen_range(3..=11);
            let p = rng.gen_range(0.15..0.5);
            (format!("random({n},{p:.2},{seed})"), random_connected(n, p, seed))
        })
        .collect()
}

struct CorpusTotals {
    graphs: usize,
    separators: usize,
    dominated: usize,
    certificates: usize,
    uncertified: Vec<String>,
    zeta_violations: usize,
    collisions: usize,
    roundtrip: usize,
    creatures: usize,
    creature_failures: usize,
    invariants: Vec<String>,
    chain_failures: usize,
    max_drop: usize,
}

fn certify_corpus() -> CorpusTotals {
    let mut t = CorpusTotals {
        graphs: 0,
        separators: 0,
        dominated: 0,
        certificates: 0,
        uncertified: Vec::new(),
        zeta_violations: 0,
        collisions: 0,
        roundtrip: 0,
        creatures: 0,
        creature_failures: 0,
        invariants: Vec::new(),
        chain_failures: 0,
        max_drop: 0,
    };
    for (name, g) in family_corpus().into_iter().chain(random_corpus()) {
        let r: ReconstructionReport = count_by_reconstruction(&g, None, None);
        t.graphs += 1;
        t.separators += r.separators;
        t.dominated += r.dominated;
        t.certificates += r.certificates;
        if r.dominated + r.certified != r.separators || r.dominated_trace_failures > 0 {
            t.uncertified.push(name.clone());
        }
        t.zeta_violations += r.zeta_violations;
        t.collisions += r.key_collisions;
        t.roundtrip += r.key_roundtrip_failures;
        t.creatures += r.creatures_built;
        t.creature_failures += r.creature_failures;
        t.chain_failures += r.chain_failures;
        t.max_drop = t.max_drop.max(r.max_zeta_drop);
        t.invariants.extend(r.invariant_failures.iter().map(|e| format!("{name}: {e}")));
    }
    t
}

fn zeta_decrease(t: &CorpusTotals) -> Outcome {
    check(
        t.uncertified.is_empty() && t.invariants.is_empty() && t.zeta_violations == 0 && t.chain_failures == 0,
        format!(
            "{} graphs, {} separators ({} dominated), {} certificates, zeta strictly drops on all (max drop {})",
            t.graphs, t.separators, t.dominated, t.certificates, t.max_drop
        ),
        format!(
            "uncertified {:?}, invariant failures {:?}, zeta violations {}, chain failures {}",
            t.uncertified.iter().take(5).collect::<Vec<_>>(),
            t.invariants.iter().take(5).collect::<Vec<_>>(),
            t.zeta_violations,
            t.chain_failures
        ),
    )
}

fn key_injectivity(t: &CorpusTotals) -> Outcome {
    check(
        t.collisions == 0 && t.roundtrip == 0,
        format!("{} certificate keys, zero collisions, every key rebuilds its separator", t.certificates),
        format!("{} collisions, {} failed rebuilds", t.collisions, t.roundtrip),
    )
}

fn built_creatures(t: &CorpusTotals) -> Outcome {
    check(
        t.creature_failures == 0,
        format!("{} creatures built from Z_A, D and Z_D, all verified", t.creatures),
        format!("{} constructed creatures rejected", t.creature_failures),
    )
}

fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<Weight> {
    (0..n).map(|_| Weight::new(rng.gen_range(0..30), rng.gen_range(1..6))).collect()
}

fn mwis_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let compare = |name: &str, g: Graph, rng: &mut ChaCha8Rng| -> Result<(), String> {
        let n = g.n();
        let wg = WeightedGraph::new(g, random_weights(rng, n)).unwrap();
        let (value, set) = solve_mwis(&wg);
        let brute = brute_mwis(&wg).unwrap();
        if !wg.graph.is_independent(&set) || wg.weight_of(&set) != value || value != brute {
            return Err(format!("{name}: solver {value} vs brute force {brute}"));
        }
        Ok(())
    };
    for seed in 0..200u64 {
        let n = rng.gen_range(1..=14);
        let p = rng.gen_range(0.1..0.6);
        compare(&format!("gnp({n},{p:.2},{seed})"), families::gnp(n, p, seed), &mut rng)?;
    }
    let mut families_checked = 0;
    for (name, g) in family_corpus() {
        if g.n() <= 20 {
            compare(&name, g, &mut rng)?;
            families_checked += 1;
        }
    }
    Ok(format!(
        "200 random weighted graphs and {families_checked} family graphs match brute force in {:.1}s",
        start.elapsed().as_secs_f64()
    ))
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, &str, Outcome)> = vec![
        (1, "prism separator count", prism_count()),
        (2, "creature lower bound", creature_lower_bound()),
        (3, "H_2 internal-choice separators", h_structure()),
        (4, "interval graphs have few separators", chordal_control()),
        (5, "skinny ladders stay polynomial", ladder_tameness()),
        (6, "trace family bound", trace_family_bound()),
    ];
    let totals = certify_corpus();
    results.push((7, "zeta decreases along certificates", zeta_decrease(&totals)));
    results.push((8, "certificate keys are injective", key_injectivity(&totals)));
    results.push((9, "constructed creatures verify", built_creatures(&totals)));
    results.push((10, "MWIS matches brute force", mwis_oracle()));

    let mut failed = 0;
    for (i, name, outcome) in &results {
        match outcome {
            Ok(msg) => println!("criterion {i:>2} PASS  {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {i:>2} FAIL  {name}: {msg}");
            }
        }
    }
    println!("criterion 11 NOTE  closed-form exponents are not checked numerically; criteria 6 to 9 cover each step they rest on");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
