//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//! Every tolerance is pinned in code; exact equality means tolerance zero.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sepgraph::apsp::{self, UNREACHABLE};
use sepgraph::cycles;
use sepgraph::gf::{self, FieldMatrix, FieldSpec};
use sepgraph::graph::{build_decomposition, generate_planted, Graph, PartOf, SeparatorDecomposition};
use sepgraph::matching;
use sepgraph::oracle;
use sepgraph::subgraph4::{self, FourGraph, ALL_FOUR_GRAPHS};

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "{} criterion {}: {}",
        if pass { "PASS" } else { "FAIL" },
        criterion,
        detail
    );
    assert!(pass, "criterion {} failed: {}", criterion, detail);
}

/// Mixed-k planted corpus: n up to `n_max`, varying separator and chunk
/// sizes, one in seven instances disconnected from the separator.
fn corpus(count: usize, n_max: usize, base_seed: u64) -> Vec<(Graph, SeparatorDecomposition)> {
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let seed = base_seed.wrapping_add(i as u64);
        let n = 8 + (seed as usize * 13) % (n_max - 7);
        let sep = 1 + (seed as usize) % 5;
        let comp = (2 + (seed as usize / 3) % 5).min(n - sep).max(1);
        let cross = if i % 7 == 0 { 0.0 } else { 0.1 + 0.2 * ((i % 3) as f64) };
        let p_in = 0.25 + 0.25 * ((i % 2) as f64);
        let inst = generate_planted(n, sep, comp, p_in, cross, seed).expect("corpus instance");
        let d = build_decomposition(&inst.graph, &inst.separator, inst.k).expect("decomposition");
        out.push((inst.graph, d));
    }
    out
}

#[test]
fn criterion_1_girth_exactness() {
    let start = Instant::now();
    let mut checked = 0usize;
    for (g, d) in corpus(1000, 40, 0xA1) {
        let want = oracle::oracle_girth(&g);
        let got = cycles::girth(&g, &d).unwrap();
        assert_eq!(got.as_ref().map(|r| r.length), want);
        if let Some(r) = got {
            assert!(r.validate(&g));
        }
        let want_even = oracle::oracle_even_girth(&g);
        let got_even = cycles::even_girth(&g, &d).unwrap();
        assert_eq!(got_even.as_ref().map(|r| r.length), want_even);
        if let Some(r) = got_even {
            assert!(r.validate(&g));
        }
        checked += 1;
    }
    for n in 1..=6 {
        for g in oracle::enumerate_all_graphs(n) {
            let (s, k) = sepgraph::graph::greedy_separator(&g);
            let d = build_decomposition(&g, &s, k).unwrap();
            assert_eq!(
                cycles::girth(&g, &d).unwrap().map(|r| r.length),
                oracle::oracle_girth(&g)
            );
            assert_eq!(
                cycles::even_girth(&g, &d).unwrap().map(|r| r.length),
                oracle::oracle_even_girth(&g)
            );
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        "1 (girth exactness)",
        elapsed.as_secs() < 60,
        &format!(
            "{} instances exact for girth and even girth in {:.1}s (budget 60s)",
            checked,
            elapsed.as_secs_f64()
        ),
    );
}

/// Planted instance guaranteed to contain cycles of length `len`: one
/// inside each of the first two chunks.
fn plant_cycle(len: usize, seed: u64) -> (Graph, SeparatorDecomposition) {
    let sep = 2 + (seed as usize) % 3;
    let comp = len.max(4);
    let n = (sep + comp * 3).max(24);
    let inst = generate_planted(n, sep, comp, 0.12, 0.12, seed).unwrap();
    let mut edges: std::collections::BTreeSet<(usize, usize)> =
        inst.graph.edges().iter().copied().collect();
    for base in [sep, sep + comp] {
        for i in 0..len {
            let u = base + i;
            let v = base + (i + 1) % len;
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let g = Graph::new(n, &edges.into_iter().collect::<Vec<_>>()).unwrap();
    let d = build_decomposition(&g, &inst.separator, inst.k).unwrap();
    (g, d)
}

/// Rejection-sampled instance free of cycles of length `len`.
fn cycle_free(len: usize, seed: u64) -> (Graph, SeparatorDecomposition) {
    let mut attempt = seed;
    loop {
        let sep = 1 + (attempt as usize) % 3;
        let comp = 2 + (attempt as usize) % 2;
        let n = 18 + (attempt as usize) % 8;
        let inst = generate_planted(n, sep, comp, 0.2, 0.08, attempt).unwrap();
        if !oracle::oracle_has_cycle_of_length(&inst.graph, len) {
            let d = build_decomposition(&inst.graph, &inst.separator, inst.k).unwrap();
            return (inst.graph, d);
        }
        attempt = attempt.wrapping_mul(6364136223846793005).wrapping_add(1);
    }
}

#[test]
fn criterion_2_fixed_length_cycles() {
    let start = Instant::now();
    const FP: f64 = 0.05;
    let mut detail = String::new();
    let mut pass = true;
    for len in 4..=8 {
        let mut hits = 0;
        for i in 0..200u64 {
            let (g, d) = plant_cycle(len, 0xB0 + i * 31 + len as u64);
            if let Some(r) = cycles::find_cycle_of_length(&g, &d, len, FP, i).unwrap() {
                assert_eq!(r.length, len);
                assert!(r.validate(&g));
                hits += 1;
            }
        }
        let mut false_pos = 0;
        for i in 0..200u64 {
            let (g, d) = cycle_free(len, 0xC0 + i * 157 + len as u64);
            if cycles::find_cycle_of_length(&g, &d, len, FP, i).unwrap().is_some() {
                false_pos += 1;
            }
        }
        let ok = hits >= (200.0 * (1.0 - FP)) as usize && false_pos == 0;
        pass &= ok;
        detail.push_str(&format!("C{}: {}/200 found, {} false positives; ", len, hits, false_pos));
    }
    let elapsed = start.elapsed();
    pass &= elapsed.as_secs() < 300;
    detail.push_str(&format!("{:.1}s (budget 300s)", elapsed.as_secs_f64()));
    verdict("2 (fixed-length cycle detection)", pass, &detail);
}

#[test]
fn criterion_3_induced_subgraph_counts() {
    let start = Instant::now();
    // All 32768 graphs on six vertices, every countable pattern.
    for g in oracle::enumerate_all_graphs(6) {
        let (s, k) = sepgraph::graph::greedy_separator(&g);
        let d = build_decomposition(&g, &s, k).unwrap();
        let census = oracle::oracle_four_census(&g);
        for h in ALL_FOUR_GRAPHS.iter().copied().filter(|h| h.countable()) {
            let (r, q) = subgraph4::count_mod(&g, &d, h).unwrap();
            assert_eq!(r, census[h as usize] % q, "pattern {:?} on {:?}", h, g.edges());
        }
        // The deterministic detectors are exact here as well.
        assert_eq!(
            subgraph4::detect_c4(&g, &d).unwrap().is_some(),
            census[FourGraph::C4 as usize] > 0
        );
        assert_eq!(
            subgraph4::detect_co_c4(&g, &d).unwrap().is_some(),
            census[FourGraph::CoC4 as usize] > 0
        );
    }
    // 1000 random planted instances.
    for (g, d) in corpus(1000, 40, 0xD2) {
        let census = oracle::oracle_four_census(&g);
        for h in ALL_FOUR_GRAPHS.iter().copied().filter(|h| h.countable()) {
            let (r, q) = subgraph4::count_mod(&g, &d, h).unwrap();
            assert_eq!(r, census[h as usize] % q);
        }
    }
    // Detection and search: one-sided error, witnessed embeddings, and a
    // 95% recovery rate on instances that contain the pattern.
    let mut present = 0usize;
    let mut recovered = 0usize;
    for (i, (g, d)) in corpus(200, 30, 0xE3).into_iter().enumerate() {
        let census = oracle::oracle_four_census(&g);
        for h in [FourGraph::Paw, FourGraph::Claw, FourGraph::P4, FourGraph::Diamond] {
            let has = census[h as usize] > 0;
            let detected = subgraph4::detect_induced(&g, &d, h, 0.05, i as u64).unwrap();
            assert!(!detected || has, "false positive for {:?}", h);
            if has {
                present += 1;
                if let Some(e) = subgraph4::find_induced(&g, &d, h, 0.05, i as u64).unwrap() {
                    assert!(e.validate(&g));
                    recovered += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let rate_ok = recovered as f64 >= 0.95 * present as f64;
    verdict(
        "3 (induced subgraph counts)",
        rate_ok && elapsed.as_secs() < 600,
        &format!(
            "32768 exhaustive + 1000 random censuses exact; find recovered {}/{} ({:.1}s, budget 600s)",
            recovered,
            present,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_4_matching() {
    let start = Instant::now();
    let field = FieldSpec::new(32).unwrap();
    let mut retries = 0usize;
    let mut no_errors = 0usize;
    let mut pm_cases = 0usize;
    for i in 0..500u64 {
        // Every third instance has a perfect matching forced inside the
        // separator and every chunk, so both answers are well represented.
        let inst = if i % 3 == 0 {
            let comp = 4 + 2 * ((i as usize / 3) % 2);
            let chunks = 2 + (i as usize / 5) % 6;
            let n = 4 + comp * chunks;
            let mut inst = generate_planted(n, 4, comp, 0.5, 0.3, 0xF00 + i).unwrap();
            let mut edges: std::collections::BTreeSet<(usize, usize)> =
                inst.graph.edges().iter().copied().collect();
            for c in 0..=chunks {
                let base = if c == 0 { 0 } else { 4 + (c - 1) * comp };
                let width = if c == 0 { 4 } else { comp };
                for p in 0..width / 2 {
                    edges.insert((base + 2 * p, base + 2 * p + 1));
                }
            }
            inst.graph = Graph::new(n, &edges.into_iter().collect::<Vec<_>>()).unwrap();
            inst
        } else {
            let n = 10 + (i as usize * 7) % 51;
            let sep = 2 + (i as usize) % 4;
            let comp = (2 + (i as usize) % 5).min(n - sep);
            generate_planted(n, sep, comp, 0.45, 0.3, 0xF00 + i).unwrap()
        };
        let g = &inst.graph;
        let d = build_decomposition(g, &inst.separator, inst.k).unwrap();
        let want = oracle::oracle_max_matching(g);
        assert!(oracle::is_valid_matching(g, &want));
        let (got, attempts) = matching::max_matching_with_field(g, &d, field, i).unwrap();
        assert!(got.validate(g), "instance {}", i);
        assert_eq!(got.size(), want.len(), "instance {}", i);
        if attempts > 1 {
            retries += 1;
        }
        // Perfect-matching detection: "yes" must always be correct; "no"
        // errors (before retry, i.e. a single trial) stay under 1%.
        let has_pm = want.len() * 2 == g.n();
        let said = matching::has_perfect_matching_with_field(g, &d, field, 1, i).unwrap();
        if said {
            assert!(has_pm, "instance {}: yes-error", i);
        } else if has_pm {
            no_errors += 1;
        }
        if has_pm {
            pm_cases += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = retries <= 5 && (no_errors as f64) <= 0.01 * pm_cases.max(1) as f64 && elapsed.as_secs() < 600;
    verdict(
        "4 (matching)",
        pass,
        &format!(
            "500 instances exact at q=32; {} retried, {} no-errors over {} PM cases ({:.1}s, budget 600s)",
            retries,
            no_errors,
            pm_cases,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_5_apsp() {
    let start = Instant::now();
    let mut diam_checked = 0usize;
    for (i, (g, d)) in corpus(500, 80, 0xAB).into_iter().enumerate() {
        let want = oracle::oracle_apsp(&g);
        let got = apsp::apsp(&g, &d).unwrap();
        assert!(got.validate_square(), "instance {}", i);
        for u in 0..g.n() {
            for v in 0..g.n() {
                let w = want[u][v];
                if w == usize::MAX {
                    assert_eq!(got.get(u, v), UNREACHABLE, "instance {} pair {} {}", i, u, v);
                } else {
                    assert_eq!(got.get(u, v), w as u32, "instance {} pair {} {}", i, u, v);
                }
            }
        }
        // Bounded-diameter variant on instances whose diameter fits.
        let diam = want
            .iter()
            .flatten()
            .filter(|&&x| x != usize::MAX)
            .max()
            .copied()
            .unwrap_or(0);
        let connected = want.iter().flatten().all(|&x| x != usize::MAX);
        if connected && (1..=6).contains(&diam) {
            diam_checked += 1;
            let bd = apsp::apsp_bounded_diameter(&g, &d, 6).unwrap();
            assert_eq!(bd, got, "bounded-diameter mismatch at {}", i);
        }
    }
    let elapsed = start.elapsed();
    verdict(
        "5 (apsp)",
        diam_checked > 30 && elapsed.as_secs() < 300,
        &format!(
            "500 instances exact; bounded-diameter checked on {} ({:.1}s, budget 300s)",
            diam_checked,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_6_structural_certificates() {
    let mut parts_checked = 0usize;
    let mut bd_checked = 0usize;
    for (g, d) in corpus(300, 60, 0xCD) {
        // Decomposition size bounds.
        for (i, part) in d.parts.iter().enumerate() {
            assert!(part.len() <= 2 * d.k - 1);
            if i + 1 < d.parts.len() {
                assert!(part.len() >= d.k);
            }
            parts_checked += 1;
        }
        for &(u, v) in g.edges() {
            if let (PartOf::Part(a), PartOf::Part(b)) = (d.part_of[u], d.part_of[v]) {
                assert_eq!(a, b, "edge between parts");
            }
        }
        // Hamiltonian certificates and the bounded-difference property.
        let np = apsp::nice_partition(&g, &d).unwrap();
        assert!(np.validate(&g));
        for part in &np.parts {
            for w in 0..np.graph.n() {
                let dist = np.graph.bfs(w);
                for pair in part.windows(2) {
                    match (dist[pair[0]], dist[pair[1]]) {
                        (usize::MAX, usize::MAX) => {}
                        (a, b) => {
                            assert!(
                                a != usize::MAX && b != usize::MAX && a.abs_diff(b) <= 1,
                                "bounded-difference violation"
                            );
                        }
                    }
                    bd_checked += 1;
                }
            }
        }
    }
    verdict(
        "6 (structural certificates)",
        parts_checked > 0 && bd_checked > 0,
        &format!(
            "{} part-size bounds, {} bounded-difference rows, all Hamiltonian certificates valid",
            parts_checked, bd_checked
        ),
    );
}

#[test]
fn criterion_7_algebra_suite() {
    let f = FieldSpec::new(20).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x77);
    let rand_elem = |rng: &mut ChaCha8Rng| rng.gen::<u64>() & (f.order() - 1);

    // Pfaffian squared equals the determinant on all even dimensions <= 10.
    for dim in [0usize, 2, 4, 6, 8, 10] {
        for _ in 0..40 {
            let mut m = FieldMatrix::zeros(f, dim, dim);
            for i in 0..dim {
                for j in i + 1..dim {
                    if rng.gen_bool(0.55) {
                        let w = f.random_nonzero(&mut rng);
                        m.set(i, j, w);
                        m.set(j, i, w);
                    }
                }
            }
            let pf = gf::pfaffian_small(&m).unwrap();
            let det = if dim == 0 { 1 } else { m.det() };
            assert_eq!(f.mul(pf, pf), det);
        }
    }

    // Schur determinant identity on 200 admissible matrices.
    let mut done = 0;
    while done < 200 {
        let n = 4 + (done % 5);
        let m = FieldMatrix::from_fn(f, n, n, |_, _| rand_elem(&mut rng));
        let x: Vec<usize> = (0..n / 2).collect();
        if m.submatrix(&x, &x).det() == 0 {
            continue;
        }
        let c = gf::schur_complement(&m, &x).unwrap();
        assert_eq!(f.mul(m.submatrix(&x, &x).det(), c.det()), m.det());
        done += 1;
    }

    // harvey_update equals re-inversion on 200 admissible updates.
    let mut done = 0;
    while done < 200 {
        let n = 6;
        let m = FieldMatrix::from_fn(f, n, n, |_, _| rand_elem(&mut rng));
        if m.det() == 0 {
            continue;
        }
        let s_idx = [0usize, 2, 4];
        let t_idx = [1usize, 5];
        let delta = FieldMatrix::from_fn(f, 3, 2, |_, _| rand_elem(&mut rng));
        let mut modified = m.clone();
        for (a, &r) in s_idx.iter().enumerate() {
            for (b, &c) in t_idx.iter().enumerate() {
                modified.set(r, c, modified.get(r, c) ^ delta.get(a, b));
            }
        }
        match (
            gf::harvey_update(&m.inverse().unwrap(), &delta, &s_idx, &t_idx),
            modified.inverse(),
        ) {
            (Ok(upd), Ok(direct)) => {
                assert_eq!(upd, direct);
                done += 1;
            }
            (Err(_), Err(_)) => {}
            (a, b) => panic!("update/inversion disagree: {:?} vs {:?}", a.is_ok(), b.is_ok()),
        }
    }

    // Structured product equals the dense product on 200 planted instances,
    // a few at the top of the size range.
    for i in 0..200u64 {
        let n = match i {
            197 => 128,
            198 => 200,
            199 => 256,
            _ => 24 + (i as usize) % 60,
        };
        let inst = generate_planted(n, 3, 4, 0.4, 0.25, 0x99 + i).unwrap();
        let d = build_decomposition(&inst.graph, &inst.separator, inst.k).unwrap();
        let a = gf::BlockTutteMatrix::random_tutte(&inst.graph, &d, f, i);
        let dense = a.to_dense();
        let n = inst.graph.n();
        let m = FieldMatrix::from_fn(f, n, n, |_, _| rand_elem(&mut rng));
        assert_eq!(a.structured_mul_left(&m).unwrap(), dense.mul(&m));
        assert_eq!(a.structured_mul_right(&m).unwrap(), m.mul(&dense));
    }
    verdict(
        "7 (algebra suite)",
        true,
        "pfaffian, schur, local update, and structured products all exact",
    );
}

/// Dense baseline for the per-edge walk counts: full matrix squaring with
/// bitset rows (each pair's common-neighbor count by AND + popcount).
fn dense_square_on_edges(g: &Graph) -> u64 {
    let n = g.n();
    let words = n.div_ceil(64);
    let mut rows = vec![0u64; n * words];
    for &(u, v) in g.edges() {
        rows[u * words + v / 64] |= 1 << (v % 64);
        rows[v * words + u / 64] |= 1 << (u % 64);
    }
    // Full A^2 (upper triangle; the square is symmetric), folded into a
    // checksum so nothing is optimized away.
    let mut checksum = 0u64;
    for u in 0..n {
        let ru = &rows[u * words..(u + 1) * words];
        for v in u..n {
            let rv = &rows[v * words..(v + 1) * words];
            let mut count = 0u64;
            for w in 0..words {
                count += (ru[w] & rv[w]).count_ones() as u64;
            }
            checksum = checksum.wrapping_add(count.wrapping_mul(u as u64 ^ v as u64));
        }
    }
    checksum
}

#[test]
fn criterion_8_scaling_trend() {
    let k = 32usize;
    let sizes = [1usize << 10, 1 << 12, 1 << 14];
    let mut girth_times = Vec::new();
    let mut square_times = Vec::new();
    let mut dense_time = 0f64;
    for (idx, &n) in sizes.iter().enumerate() {
        let sep = k / 2;
        let comp = k - sep;
        let inst = generate_planted(n, sep, comp, 0.28, 0.1, 42 + idx as u64).unwrap();
        let g = &inst.graph;
        let d = build_decomposition(g, &inst.separator, inst.k).unwrap();
        // Minimum over several repetitions: the suite runs concurrently, and
        // microsecond-scale points are otherwise at the mercy of scheduling.
        let reps = [15, 7, 3][idx];
        let mut girth_t = f64::MAX;
        for _ in 0..reps {
            let t = Instant::now();
            let _ = cycles::girth(g, &d).unwrap();
            girth_t = girth_t.min(t.elapsed().as_secs_f64());
        }
        let mut square_t = f64::MAX;
        let mut acc = 0u64;
        for _ in 0..reps {
            let t = Instant::now();
            let sums = gf::square_on_edges(g, &d);
            acc = acc.wrapping_add(sums.iter().map(|&x| x as u64).sum::<u64>());
            square_t = square_t.min(t.elapsed().as_secs_f64());
        }
        girth_times.push(girth_t);
        square_times.push(square_t);
        if n == 1 << 14 {
            let t = Instant::now();
            let checksum = dense_square_on_edges(g);
            dense_time = t.elapsed().as_secs_f64();
            assert!(checksum != 0 || g.m() == 0);
        }
        println!(
            "scaling n={}: m={} girth {:.3}s square_on_edges {:.4}s (acc {})",
            n,
            g.m(),
            girth_t,
            square_t,
            acc
        );
    }
    // Linear-fit check: least-squares fit t = a n through the origin; no
    // measured point may exceed the fit by more than 1.5x.
    let mut linear_ok = true;
    for times in [&girth_times, &square_times] {
        let num: f64 = times.iter().zip(&sizes).map(|(t, &n)| t * n as f64).sum();
        let den: f64 = sizes.iter().map(|&n| (n as f64) * (n as f64)).sum();
        let slope = num / den;
        for (t, &n) in times.iter().zip(&sizes) {
            linear_ok &= *t <= 1.5 * slope * n as f64;
        }
    }
    let factor = dense_time / square_times[2].max(1e-9);
    println!(
        "scaling: dense baseline {:.2}s vs structured {:.4}s => {:.1}x",
        dense_time, square_times[2], factor
    );
    let pass = linear_ok && factor >= 3.0;
    if factor >= 2.0 && factor < 3.0 {
        // Soft zone per the criterion: report, do not hard-fail.
        println!("REPORT criterion 8: dense/structured factor {:.2} in soft zone [2, 3)", factor);
        verdict(
            "8 (scaling trend)",
            linear_ok,
            &format!("linear trend ok; factor {:.1}x in soft zone", factor),
        );
    } else {
        verdict(
            "8 (scaling trend)",
            pass,
            &format!(
                "girth {:?} square {:?} dense factor {:.1}x (need >= 3)",
                girth_times, square_times, factor
            ),
        );
    }
}
