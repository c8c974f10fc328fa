//! Acceptance suite: one `[PASS]` or `[FAIL]` line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbm_core::analysis::analyze;
use rbm_core::approx::{approx_mrbm, LocalSearchConfig};
use rbm_core::color_line::{build_color_line, check_k14_free, check_k7e_free};
use rbm_core::corpus::{
    colorings, exhaustive_forests, random_colored_graph, random_instance, random_proper_graph, unlabeled_forests, Class,
};
use rbm_core::exact::{
    oracle_mrbm, reduce_p7_to_p6, solve_auto, solve_p5_forest_fpt, solve_p7_forest, solve_p7_tree, solve_star_triangle,
    BannedColorSet, Method, SolveOptions, SolveResult, DEFAULT_ORACLE_CAP,
};
use rbm_core::gadgets::{build_from_named, verify_certificate, verify_structure, StageInput, Target};
use rbm_core::graph::{serialize_instance, validate_solution};
use rbm_core::ColoredGraph;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle(g: &ColoredGraph) -> SolveResult {
    oracle_mrbm(g, &BannedColorSet::new(), &SolveOptions::default()).expect("within the oracle cap")
}

fn exhaustive_corpus() -> Vec<ColoredGraph> {
    exhaustive_forests(8, 3).collect()
}

const CLASSES: [Class; 4] = [Class::P4Free, Class::P7Tree, Class::P7Forest, Class::P5Forest];

fn random_corpus(class: Class) -> Vec<ColoredGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024 + class as u64);
    (0..500).map(|_| random_instance(&mut rng, class, 25)).collect()
}

fn class_solve(class: Class, g: &ColoredGraph) -> SolveResult {
    let opts = SolveOptions::default();
    match class {
        Class::P4Free => solve_star_triangle(g, &BannedColorSet::new()),
        Class::P7Tree => solve_p7_tree(g, &opts),
        Class::P7Forest => solve_p7_forest(g, &opts),
        Class::P5Forest => solve_p5_forest_fpt(g, &opts),
        _ => unreachable!(),
    }
    .unwrap_or_else(|e| panic!("{} rejected a member: {e}\n{}", class.as_str(), serialize_instance(g)))
}

fn criterion_1() -> Outcome {
    let opts = SolveOptions::default();
    let corpus = exhaustive_corpus();
    for g in &corpus {
        let got = solve_auto(g, &opts).map_err(|e| format!("{e} on\n{}", serialize_instance(g)))?;
        let want = oracle(g);
        ensure(got.size() == want.size(), || {
            format!("{} = {} but oracle = {} on\n{}", got.method, got.size(), want.size(), serialize_instance(g))
        })?;
    }
    Ok(format!("{} colored forests, all equal to the oracle", corpus.len()))
}

fn criterion_2() -> Outcome {
    let mut counts = Vec::new();
    for class in CLASSES {
        for g in random_corpus(class) {
            let got = class_solve(class, &g);
            ensure(validate_solution(&g, got.matching.edge_ids()).unwrap().is_ok(), || {
                format!("{} returned an invalid matching", class.as_str())
            })?;
            let want = oracle(&g).size();
            ensure(got.size() == want, || {
                format!("{}: {} vs oracle {want} on\n{}", class.as_str(), got.size(), serialize_instance(&g))
            })?;
        }
        counts.push(format!("{} x500", class.as_str()));
    }
    Ok(counts.join(", "))
}

fn subsets(m: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << m).map(move |mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for i in 0..200 {
        let p = rng.gen_range(0.2..0.7);
        let g = random_colored_graph(&mut rng, 4 + i % 9, p, 1 + i % 6);
        check_k14_free(build_color_line(&g).graph())
            .map_err(|q| format!("K1,4 at {q:?} in\n{}", serialize_instance(&g)))?;
    }
    for i in 0..200 {
        let p = rng.gen_range(0.2..0.7);
        let g = random_proper_graph(&mut rng, 4 + i % 9, p, 3 + i % 6);
        ensure(analyze(&g).properly_colored, || "generator produced an improper coloring".into())?;
        check_k7e_free(build_color_line(&g).graph())
            .map_err(|q| format!("K7-e at {q:?} in\n{}", serialize_instance(&g)))?;
    }
    // every graph on five vertices with at most 7 edges, and every forest
    // with at most 7 edges, each under every coloring with at most 3 colors
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let mut family: Vec<(usize, Vec<(usize, usize)>)> = (0u32..1 << pairs.len())
        .filter(|mask| mask.count_ones() <= 7)
        .map(|mask| (5, (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect()))
        .collect();
    family.extend(unlabeled_forests(7));
    let mut graphs = 0usize;
    let mut matchings = 0usize;
    for (n, edges) in &family {
        for colors in colorings(edges.len(), 3) {
            let g =
                ColoredGraph::from_colored_edges(*n, edges.iter().zip(colors).map(|(&(a, b), c)| (a, b, c))).unwrap();
            let cl = build_color_line(&g);
            for s in subsets(g.edge_count()) {
                let rainbow = validate_solution(&g, &s).unwrap().is_ok();
                ensure(rainbow == cl.graph().is_independent(&s), || {
                    format!("edge set {s:?} disagrees in\n{}", serialize_instance(&g))
                })?;
                matchings += rainbow as usize;
            }
            graphs += 1;
        }
    }
    Ok(format!("200 K1,4-free, 200 K7-e-free, bijection on {graphs} colored graphs ({matchings} matchings)"))
}

fn verify_stage(name: &str, target: Target) -> Result<(usize, usize, ColoredGraph, i64), String> {
    let (input, g) = build_from_named(name, target).map_err(|e| format!("{name} {target}: {e}"))?;
    let v = verify_certificate(&input, &g.graph, &g.certificate, &SolveOptions::default())
        .map_err(|e| format!("{name} {target}: {e}"))?;
    Ok((v.source_opt, v.output_opt, g.graph, g.certificate.offset))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let expected: [(Target, usize, usize); 7] = [
        (Target::Pec, 3, 3),
        (Target::Complete, 3, 4),
        (Target::Path, 3, 6),
        (Target::LfP5, 3, 9),
        (Target::BipP4, 9, 9),
        (Target::LfP6, 3, 6),
        (Target::TreeP8, 6, 7),
    ];
    let mut seen = Vec::new();
    for (target, src, out) in expected {
        let (s, o, g, _) = verify_stage("k33", target)?;
        ensure((s, o) == (src, out), || format!("{target}: optima {s} -> {o}, expected {src} -> {out}"))?;
        let r = analyze(&g);
        match target {
            Target::Pec => {
                let mult = g.color_multiplicities();
                ensure(mult.iter().all(|&m| m == 2), || "pec: a color is not used exactly twice".into())?;
            }
            Target::Path => ensure(g.edge_count() == 13 && r.is_path, || format!("path: {} edges", g.edge_count()))?,
            Target::LfP6 => ensure(r.components.len() == 3, || format!("lf6: {} components", r.components.len()))?,
            Target::TreeP8 => ensure(r.is_tree, || "tree-p8: not a tree".into())?,
            _ => {}
        }
        seen.push(format!("{target} {o}"));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("MIS 3; {} in {:.2?}", seen.join(", "), elapsed))
}

fn criterion_5() -> Outcome {
    let mut verified = Vec::new();
    let mut structural = Vec::new();
    for name in ["heawood", "pappus"] {
        for target in Target::ALL {
            let (input, g) = build_from_named(name, target).map_err(|e| format!("{name} {target}: {e}"))?;
            let source_size = match &input {
                StageInput::Cubic(s) => s.vertex_count(),
                StageInput::Colored(h) => h.edge_count(),
            };
            if g.graph.edge_count() <= DEFAULT_ORACLE_CAP && source_size <= DEFAULT_ORACLE_CAP {
                let (s, o, _, offset) = verify_stage(name, target)?;
                verified.push(format!("{name}:{target} {s}{offset:+}={o}"));
            } else {
                verify_structure(&input, &g.graph, &g.certificate).map_err(|e| format!("{name} {target}: {e}"))?;
                structural.push(format!("{name}:{target}"));
            }
        }
    }
    Ok(format!("oracle-verified [{}]; structure only [{}]", verified.join(", "), structural.join(", ")))
}

fn criterion_6() -> Outcome {
    let t = |swap_size| LocalSearchConfig { swap_size, max_passes: None };
    let mut count = 0;
    let mut corpus = exhaustive_corpus();
    for class in CLASSES {
        corpus.extend(random_corpus(class));
    }
    for g in &corpus {
        let opt = oracle(g).size();
        let two = approx_mrbm(g, &t(2)).matching.len();
        let zero = approx_mrbm(g, &t(0)).matching.len();
        ensure(two >= opt.div_ceil(2), || format!("t=2 gave {two} with OPT {opt} on\n{}", serialize_instance(g)))?;
        ensure(zero >= opt.div_ceil(3), || format!("t=0 gave {zero} with OPT {opt} on\n{}", serialize_instance(g)))?;
        count += 1;
    }
    let mut gadgets = Vec::new();
    for target in Target::ALL {
        let (_, g) = build_from_named("k33", target).map_err(|e| e.to_string())?;
        let opt = oracle(&g.graph).size();
        let got = approx_mrbm(&g.graph, &t(3)).matching.len();
        ensure(3 * got >= 2 * opt, || format!("k33 {target}: t=3 gave {got} with OPT {opt}"))?;
        gadgets.push(format!("{target} {got}/{opt}"));
    }
    Ok(format!("{count} instances at t=2 and t=0; k33 t=3: {}", gadgets.join(", ")))
}

fn criterion_7() -> Outcome {
    let opts = SolveOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut branches = 0;
    for _ in 0..200 {
        let g = random_instance(&mut rng, Class::P7Forest, 25);
        let parts = reduce_p7_to_p6(&g).map_err(|e| e.to_string())?;
        branches += parts.len();
        let mut best = 0;
        for b in &parts {
            ensure(analyze(&b.graph).is_path_free(6) == Some(true), || "a branch contains a P6".into())?;
            let r = oracle_mrbm(&b.graph, &b.banned, &opts).map_err(|e| e.to_string())?;
            let mut ids: Vec<usize> = r.matching.edge_ids().iter().map(|&e| b.origin[e]).collect();
            ids.extend(&b.fixed);
            ensure(validate_solution(&g, &ids).unwrap().is_ok(), || "fixed plus residual is not rainbow".into())?;
            best = best.max(ids.len());
        }
        let want = oracle(&g).size();
        ensure(best == want, || format!("best branch {best}, oracle {want} on\n{}", serialize_instance(&g)))?;
    }
    Ok(format!("200 forests, {branches} branches"))
}

fn rbm(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_rbm")).args(args).output().expect("run rbm");
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}

fn run_pair(dir: &Path, tag: &str, args: &[&str]) -> Result<(i32, Vec<u8>, Vec<u8>), String> {
    let p = dir.join(tag);
    let p = p.to_str().unwrap();
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--out", p]);
    let (code, _, err) = rbm(&full);
    let body = std::fs::read(p).unwrap_or_default();
    let side = [".report", ".cert"].iter().find_map(|s| std::fs::read(format!("{p}{s}")).ok()).unwrap_or_default();
    Ok((code, [body, side].concat(), err))
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let corpus = dir.path().join("corpus");
    let corpus_s = corpus.to_str().unwrap();
    let mut files = Vec::new();
    for class in ["p4free", "p7tree", "p7forest", "p5forest", "general", "proper"] {
        let (code, out, err) = rbm(&["corpus", "--seed", "8", "--class", class, "--count", "15", "--out", corpus_s]);
        ensure(code == 0, || String::from_utf8_lossy(&err).into_owned())?;
        files.extend(String::from_utf8(out).unwrap().lines().map(str::to_string));
    }
    // the corpus command itself must be reproducible
    let again = dir.path().join("again");
    rbm(&["corpus", "--seed", "8", "--class", "general", "--count", "15", "--out", again.to_str().unwrap()]);
    for i in 0..15 {
        let name = format!("general-{i:04}.cg");
        ensure(std::fs::read(corpus.join(&name)).ok() == std::fs::read(again.join(&name)).ok(), || {
            format!("corpus file {name} differs between runs")
        })?;
    }
    let mut runs = 0;
    for f in &files {
        let commands: Vec<Vec<&str>> = vec![
            vec!["solve", f],
            vec!["solve", "--threads", "4", f],
            vec!["solve", "--method", "brute", f],
            vec!["approx", f],
            vec!["approx", "--swap", "3", "--compare-oracle", f],
            vec!["analyze", f],
            vec!["oracle", f],
        ];
        let mut first_solve = None;
        for (i, args) in commands.iter().enumerate() {
            let a = run_pair(dir.path(), &format!("a{i}"), args)?;
            let b = run_pair(dir.path(), &format!("b{i}"), args)?;
            ensure(a == b, || format!("`rbm {}` differs between runs", args.join(" ")))?;
            runs += 2;
            if i == 0 {
                first_solve = Some(a);
            } else if i == 1 {
                ensure(first_solve.as_ref() == Some(&a), || format!("threads 1 vs 4 differ on {f}"))?;
            }
        }
    }
    for target in Target::ALL {
        let args = ["gen", "--target", target.as_str(), "--named", "k33"];
        let a = run_pair(dir.path(), "g1", &args)?;
        let b = run_pair(dir.path(), "g2", &args)?;
        ensure(a == b && a.0 == 0, || format!("gen {target} is not reproducible"))?;
        runs += 2;
    }
    Ok(format!("{} corpus files, {runs} runs byte-identical", files.len()))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn star_forest(rng: &mut impl Rng, edges: usize) -> ColoredGraph {
    let mut list = Vec::with_capacity(edges);
    let mut n = 0;
    while list.len() < edges {
        let k = rng.gen_range(1..=8).min(edges - list.len());
        list.extend((1..=k).map(|i| (n, n + i, rng.gen_range(0..5000))));
        n += k + 1;
    }
    ColoredGraph::from_colored_edges(n, list).unwrap()
}

/// `k` double stars sharing `edges` edges, colors from a palette of `colors`.
fn double_star_forest(rng: &mut impl Rng, k: usize, edges: usize, colors: usize) -> ColoredGraph {
    let mut list = Vec::with_capacity(edges);
    let mut n = 0;
    for i in 0..k {
        let size = edges / k + usize::from(i < edges % k);
        let (a, b) = (n, n + 1);
        list.push((a, b, rng.gen_range(0..colors)));
        let mut v = n + 2;
        for j in 0..size - 1 {
            list.push((if j % 2 == 0 { a } else { b }, v, rng.gen_range(0..colors)));
            v += 1;
        }
        n = v;
    }
    ColoredGraph::from_colored_edges(n, list).unwrap()
}

/// A tree on `vertices` vertices with no `P7`: a central edge whose ends
/// carry `arms` children each, all remaining vertices hung as leaves below them.
fn p7_free_tree(rng: &mut impl Rng, vertices: usize, arms: usize, colors: usize) -> ColoredGraph {
    let mut list = vec![(0, 1, rng.gen_range(0..colors))];
    let mut n = 2;
    let mut mids = Vec::new();
    for side in [0, 1] {
        for _ in 0..arms {
            list.push((side, n, rng.gen_range(0..colors)));
            mids.push(n);
            n += 1;
        }
    }
    let mut i = 0;
    while n < vertices {
        list.push((mids[i % mids.len()], n, rng.gen_range(0..colors)));
        n += 1;
        i += 1;
    }
    ColoredGraph::from_colored_edges(n, list).unwrap()
}

fn criterion_9() -> Outcome {
    let opts = SolveOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut notes = Vec::new();

    let g = star_forest(&mut rng, 100_000);
    let (r, t) = timed(|| solve_auto(&g, &opts));
    let r = r.map_err(|e| e.to_string())?;
    ensure(r.method == Method::StarTriangle && t < Duration::from_secs(2), || {
        format!("star forest: {} in {t:.2?}", r.method)
    })?;
    notes.push(format!("star forest 1e5 edges {t:.2?}"));

    let g = double_star_forest(&mut rng, 12, 10_000, 40);
    let (r, t) = timed(|| solve_auto(&g, &opts));
    let r = r.map_err(|e| e.to_string())?;
    ensure(r.method == Method::P5Fpt && t < Duration::from_secs(30), || format!("p5 forest: {} in {t:.2?}", r.method))?;
    notes.push(format!("p5 forest k=12 1e4 edges {t:.2?} ({} branches)", r.branch_count));

    let g = p7_free_tree(&mut rng, 10_000, 60, 300);
    let (r, t) = timed(|| solve_auto(&g, &opts));
    let r = r.map_err(|e| e.to_string())?;
    ensure(r.method == Method::P7Tree && t < Duration::from_secs(60), || format!("p7 tree: {} in {t:.2?}", r.method))?;
    ensure(validate_solution(&g, r.matching.edge_ids()).unwrap().is_ok(), || "p7 tree: invalid matching".into())?;
    notes.push(format!("p7 tree 1e4 vertices {t:.2?} ({} branches)", r.branch_count));
    Ok(notes.join("; "))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("exhaustive forests agree with the oracle", criterion_1),
        ("random class instances agree with the oracle", criterion_2),
        ("color-line graph structure", criterion_3),
        ("k33 gadget chain", criterion_4),
        ("heawood and pappus gadget chains", criterion_5),
        ("approximation floors", criterion_6),
        ("P7 to P6 reduction soundness", criterion_7),
        ("command-line determinism", criterion_8),
        ("performance smoke", criterion_9),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {}: {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
