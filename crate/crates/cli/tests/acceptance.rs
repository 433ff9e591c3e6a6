//! One pass/fail line per acceptance criterion, then a non-zero exit if any failed.

#[path = "../../core/tests/common/appendix.rs"]
mod appendix;
#[path = "../../core/tests/common/oracles.rs"]
mod oracles;

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::Instant;

use proptest::test_runner::{Config, TestRunner};

use tfpm::fiber::{enumerate_fiber, is_connected, markov_degree_check, markov_degree_check_symmetric, DEFAULT_CAP};
use tfpm::holes::{fundamental_holes, verify_separation};
use tfpm::markov::{kernel_markov_basis, minimize_in_order};
use tfpm::model::DesignMatrix;
use tfpm::moves::{Move, MoveSet};
use tfpm::notation::{expand_family, orbit, parse_cube, parse_row, row_string, Tableau, SymmetryGroup};
use tfpm::tfp::{
    constant_column_lifts, degree_bound, excess_bound, generating_moves, glues, lifts, max_glue_degree, reduce_by_quadratics,
    xi_excess, DegreeBoundReport,
};
use tfpm_cli::pipeline::Pipeline;

use appendix::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut Context) -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn set_of<const N: usize>(rows: &[[i64; N]]) -> MoveSet {
    MoveSet::from_vectors(rows.iter().map(|r| r.to_vec()))
}

fn rows(text: &[&str], nodes: usize) -> Vec<usize> {
    text.iter().map(|r| parse_row(r, nodes).unwrap()).collect()
}

fn table(text: &[&str], nodes: usize) -> Vec<i64> {
    let mut t = vec![0; 1 << nodes];
    for s in rows(text, nodes) {
        t[s] += 1;
    }
    t
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

fn strings(list: &[&str]) -> Vec<String> {
    sorted(list.iter().map(|s| s.to_string()).collect())
}

/// Directions of the first hole family, as node-order rows.
const FIRST_DIRECTIONS: [&str; 8] = ["0000", "1100", "1010", "0110", "0001", "1101", "1011", "0111"];

/// Hole coefficients and the columns whose sum they equal.
const IDENTITIES: [([i64; 2], [&str; 8]); 3] = [
    ([1, 1], ["0000", "0011", "0101", "0110", "1000", "1011", "1101", "1110"]),
    ([2, 0], ["0000", "0001", "0110", "0111", "1010", "1011", "1100", "1101"]),
    ([0, 2], ["0010", "0011", "0100", "0101", "1000", "1001", "1110", "1111"]),
];

fn holes(_: &mut Context) -> Outcome {
    let k4 = DesignMatrix::k4_tilde();
    let b = k4.matrix();
    let holes = fundamental_holes(&k4);
    ensure(holes.len() == 2, || format!("{} fundamental holes", holes.len()))?;
    let xor: Vec<i64> = (0..8u32).map(|t| i64::from(t.count_ones() % 2 == 0)).collect();
    ensure(holes[0].vector[..8] == xor[..], || format!("triangle margin of h1 is {:?}", &holes[0].vector[..8]))?;
    for (coefficients, columns) in IDENTITIES {
        let mut lhs = vec![0i64; b.rows()];
        for (c, h) in coefficients.iter().zip(&holes) {
            lhs.iter_mut().zip(&h.vector).for_each(|(x, y)| *x += c * y);
        }
        let mut rhs = vec![0i64; b.rows()];
        for s in rows(&columns, 4) {
            rhs.iter_mut().zip(b.column(s)).for_each(|(x, y)| *x += y);
        }
        ensure(lhs == rhs, || format!("{coefficients:?}·h differs from the column sum"))?;
        let reported = holes.iter().flat_map(|h| &h.witness_identities).find(|w| w.hole_coefficients == coefficients);
        let reported = reported.ok_or_else(|| format!("no reported identity for {coefficients:?}"))?;
        let cols: Vec<String> =
            reported.columns.iter().enumerate().flat_map(|(s, &c)| std::iter::repeat_n(row_string(s, 4), c as usize)).collect();
        ensure(sorted(cols) == strings(&columns), || format!("identity {coefficients:?} uses other columns"))?;
    }
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_tfpm")).args(["--model", "k4tilde", "holes"]).output().map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success() && text.starts_with("2 fundamental holes"), || format!("tfpm holes: {}", text.lines().next().unwrap_or("")))?;
    ensure(text.matches("verified").count() == 3, || "tfpm holes did not verify three identities".into())?;
    Ok(format!("2 holes, XOR margin, 3 identities; CLI in {:.1?}", start.elapsed()))
}

fn families(ctx: &mut Context) -> Outcome {
    let families = &ctx.pipeline.families;
    ensure(families.len() == 2, || format!("{} families", families.len()))?;
    let first: Vec<String> = families[0].directions.iter().map(|&c| row_string(c, 4)).collect();
    let second: Vec<String> = families[1].directions.iter().map(|&c| row_string(c, 4)).collect();
    let rest: Vec<String> = (0..16).map(|s| row_string(s, 4)).filter(|r| !FIRST_DIRECTIONS.contains(&r.as_str())).collect();
    ensure(sorted(first) == strings(&FIRST_DIRECTIONS), || "first family directions differ".into())?;
    ensure(sorted(second) == sorted(rest), || "second family directions differ".into())?;
    // l1 counts the even-parity triangle cells, l2 the odd ones
    let parity = |even: bool| -> Vec<i64> {
        (0..20).map(|i| i64::from(i < 8 && (i as u32).count_ones().is_multiple_of(2) == even)).collect()
    };
    ensure(families[0].separating_functional == parity(false), || "first family is not separated by l2".into())?;
    ensure(families[1].separating_functional == parity(true), || "second family is not separated by l1".into())?;
    let report = verify_separation(&DesignMatrix::k4_tilde(), families, 3);
    ensure(report.passed(), || report.failures.first().cloned().unwrap_or_default())?;
    Ok(format!("{} members, {} semigroup points checked", report.members_checked, report.tables_checked))
}

fn kernel(ctx: &mut Context) -> Outcome {
    let basis = &ctx.pipeline.kernel;
    let stats: Vec<(i64, usize)> = basis.degree_stats().into_iter().collect();
    ensure(basis.len() == 20 && stats == [(4, 12), (6, 8)], || format!("{} moves, {stats:?}", basis.len()))?;
    ensure(*basis == set_of(&KERNEL_BASIS), || "kernel basis differs from the listing".into())?;
    Ok("20 moves {4:12, 6:8}, equal to the listing".into())
}

fn pf_basis(ctx: &mut Context) -> Outcome {
    let basis = &ctx.pipeline.pf_basis;
    ensure(basis.len() == 16 && basis.max_degree() == 4, || format!("{} moves of degree <= {}", basis.len(), basis.max_degree()))?;
    for axes in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let cubes = MoveSet::from_moves(PF_CUBES.iter().map(|c| parse_cube(c, axes).unwrap()));
        ensure(cubes == *basis, || format!("cube listing read with axes {axes:?} differs"))?;
    }
    let columns = SymmetryGroup::block_permutations(3, &[vec![0, 1, 2]], &[]);
    let mut sizes = Vec::new();
    let mut union = MoveSet::new();
    for family in ["[00a;11b]-[01a;10b]", "[000;001;110;111]-[010;011;100;101]", "[000;011;101;110]-[001;010;100;111]"] {
        let mut class = MoveSet::new();
        for m in &expand_family(family, 3).unwrap() {
            class = class.union(&orbit(m, &columns));
        }
        sizes.push(class.len());
        union = union.union(&class);
    }
    ensure(sizes == [12, 3, 1] && union == *basis, || format!("family sizes {sizes:?}"))?;
    let d = ctx.pipeline.system.d.row_vecs();
    let shapes: Vec<Vec<i64>> = vec![
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 1, 0],
        vec![0, 0, 0, 1],
        vec![1, 1, 0, 0],
        vec![1, 0, 1, 0],
        vec![1, 0, 0, 1],
        vec![-1, -1, 0, 0],
        vec![-1, 0, -1, 0],
        vec![-1, 0, 0, -1],
        vec![-1, -1, -1, 0],
        vec![-1, -1, 0, -1],
        vec![-1, 0, -1, -1],
        vec![2, 1, 1, 1],
    ];
    let mut ours = d.clone();
    ours.sort();
    let mut expected = shapes.clone();
    expected.sort();
    ensure(d.len() == 14 && ours == expected, || format!("inequality rows {d:?}"))?;
    ensure(d[..4] == shapes[..4], || "first block is not the unit matrix".into())?;
    Ok("16 moves of degree <= 4, families 12/3/1, 14 inequality rows".into())
}

fn lifts_and_glues(ctx: &mut Context) -> Outcome {
    for (g, listed) in [
        (&LIFTS_SWAP_MOVE, set_of(&LIFTS_SWAP)),
        (&LIFTS_DIAGONAL_MOVE, set_of(&LIFTS_DIAGONAL)),
        (&LIFTS_DOUBLE_MOVE, set_of(&LIFTS_DOUBLE)),
        (&LIFTS_XOR_MOVE, set_of(&LIFTS_XOR)),
    ] {
        let ours = lifts(&Move::new(g.to_vec())).map_err(|e| e.to_string())?;
        ensure(ours.iter().all(|l| l.is_valid()), || format!("invalid lift of {g:?}"))?;
        let ours = MoveSet::from_moves(ours.into_iter().map(|l| l.vector));
        ensure(ours == listed, || format!("{} lifts of {g:?}, {} listed", ours.len(), listed.len()))?;
    }
    let report = DegreeBoundReport::new(&ctx.pipeline.lifts);
    ensure(report.lifting_defect == 2, || format!("lifting defect {}", report.lifting_defect))?;
    let mut glued = 0;
    for (g, ls) in &ctx.pipeline.lifts {
        ensure(ls.iter().all(|l| l.is_valid()), || format!("invalid lift of {g}"))?;
        let bound = excess_bound(ls);
        let cap = if g.degree() == 2 { 6 } else { 12 };
        for n in 1..=2 {
            for m in glues(ls, n, i64::MAX) {
                glued += 1;
                ensure(xi_excess(&m).iter().zip(&bound).all(|(x, b)| x <= b), || format!("excess of a glue of {g} at N = {n}"))?;
                ensure(m.vector.degree() <= cap, || format!("glue of {g} has degree {}", m.vector.degree()))?;
            }
        }
    }
    Ok(format!("lift counts 10/6/21/40 equal to the listing; {glued} glues within bounds"))
}

fn degrees(ctx: &mut Context) -> Outcome {
    let mut found = Vec::new();
    for n in 1..=2 {
        let start = Instant::now();
        let own = kernel_markov_basis(&DesignMatrix::k3n(n));
        let report = markov_degree_check(DesignMatrix::k3n(n).matrix(), &own, 8, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("N = {n}: disconnected fiber {:?}", report.witness))?;
        let expected = 2 * n as i64;
        ensure(own.max_degree() == expected && report.essential_degree == expected, || {
            format!("N = {n}: basis degree {}, essential degree {}", own.max_degree(), report.essential_degree)
        })?;
        ensure(ctx.assembled(n).degree_stats() == own.degree_stats(), || {
            format!("N = {n}: assembled and own bases differ")
        })?;
        found.push(format!("N={n}: {expected} ({} fibers, {:.0?})", report.fibers_checked, start.elapsed()));
    }

    let start = Instant::now();
    let three = ctx.assembled(3).clone();
    let model = DesignMatrix::k3n(3);
    let report =
        markov_degree_check_symmetric(model.matrix(), &three, 6, DEFAULT_CAP, &SymmetryGroup::k3n(3)).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("N = 3: disconnected fiber {:?}", report.witness))?;
    ensure(report.essential_degree == 6, || format!("N = 3: essential degree {}", report.essential_degree))?;
    let sextic = three.iter().find(|m| m.degree() == 6).ok_or("no sextic move")?;
    let fiber = enumerate_fiber(model.matrix(), &model.matrix().mul_vec(&sextic.positive_part()), DEFAULT_CAP).map_err(|e| e.to_string())?;
    let connectivity = is_connected(&fiber, &three.truncated(4));
    ensure(connectivity.component_count > 1, || "a sextic fiber is connected without sextic moves".into())?;
    found.push(format!(
        "N=3: 6 (assembled basis, {} fiber orbits to size 6, {:.0?})",
        report.fibers_checked,
        start.elapsed()
    ));
    Ok(found.join("; "))
}

fn bound(ctx: &mut Context) -> Outcome {
    for n in 1..=100usize {
        let expected = (4 + 2 * n as i64).min(12);
        ensure(degree_bound(n) == expected, || format!("bound for N = {n} is {}", degree_bound(n)))?;
    }
    let mut seen = Vec::new();
    for n in 1..=4 {
        let generators = ctx.pipeline.lifts.iter().map(|(_, ls)| max_glue_degree(ls, n)).max().unwrap_or(0);
        let generators = generators.max(ctx.pipeline.kernel.max_degree()).max(2);
        ensure(generators <= degree_bound(n), || format!("N = {n}: generators of degree {generators}"))?;
        let basis = if n <= 3 { ctx.assembled(n).max_degree().to_string() } else { "-".into() };
        if n <= 3 {
            ensure(ctx.assembled(n).max_degree() <= degree_bound(n), || format!("N = {n}: basis degree {basis}"))?;
        }
        seen.push(format!("N={n}: {basis}/{generators}/{}", degree_bound(n)));
    }
    Ok(format!("formula N <= 100; basis/generator/bound degrees {}", seen.join(", ")))
}

fn redundancy(ctx: &mut Context) -> Outcome {
    let chain = [
        ["00000", "00000", "11100", "10010", "01010", "00110"],
        ["10000", "00000", "01100", "10010", "01010", "00110"],
        ["10000", "01000", "00100", "10010", "01010", "00110"],
        ["10000", "01000", "00100", "00010", "01010", "10110"],
        ["10000", "01000", "00100", "00010", "00010", "11110"],
    ];
    let kernel = ctx.pipeline.kernel.clone();
    let constant = constant_column_lifts(2, &kernel);
    let m = Tableau::new(5, rows(&chain[0], 5), rows(&chain[4], 5)).map_err(|e| e.to_string())?.to_move();
    ensure(m.degree() == 6 && constant.contains(&m), || "the sextic is not a constant-column lift".into())?;
    let glued = MoveSet::from_moves(generating_moves(2, &ctx.pipeline.lifts, &MoveSet::new(), 2));
    for step in chain.windows(2) {
        let d = Move::new(table(&step[0], 5).iter().zip(table(&step[1], 5)).map(|(a, b)| a - b).collect());
        ensure(d.degree() == 2 && glued.contains(&d), || format!("step {:?} -> {:?} is not a glued quadric", step[0], step[1]))?;
    }
    let walk = reduce_by_quadratics(&m, &glued).ok_or("no quadratic walk")?;
    ensure(walk.len() == chain.len(), || format!("shortest walk has {} tables", walk.len()))?;

    let assembled = ctx.assembled(2).clone();
    let kept = constant.iter().filter(|m| assembled.contains(m)).count();
    ensure(kept == 0, || format!("{kept} constant-column lifts kept"))?;
    let mut union: Vec<Move> = assembled.iter().chain(constant.iter()).cloned().collect();
    union.sort_by_key(Move::degree);
    let minimized = minimize_in_order(&union);
    ensure(minimized == assembled, || "minimizing the union changes the basis".into())?;
    Ok(format!("5-table quadratic walk; {} constant-column lifts all removed", constant.len()))
}

fn properties(_: &mut Context) -> Outcome {
    const CASES: u32 = 300;
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&oracles::dio_case(), oracles::check_dio).map_err(|e| format!("dio: {e}"))?;
    runner.run(&oracles::kernel_case(), oracles::check_kernel).map_err(|e| format!("kernel: {e}"))?;
    runner.run(&oracles::fiber_case(), oracles::check_fiber).map_err(|e| format!("fiber: {e}"))?;
    runner.run(&oracles::hnf_case(), oracles::check_hnf).map_err(|e| format!("hnf: {e}"))?;
    Ok(format!("{} randomized cases", 4 * CASES))
}

struct Context {
    pipeline: Pipeline,
    assembled: BTreeMap<usize, MoveSet>,
}

impl Context {
    fn assembled(&mut self, n: usize) -> &MoveSet {
        let pipeline = &self.pipeline;
        self.assembled.entry(n).or_insert_with(|| pipeline.assemble(n, if n <= 2 { degree_bound(n) } else { 6 }))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("holes", holes),
        ("hole families", families),
        ("kernel Markov basis", kernel),
        ("projected-fiber basis", pf_basis),
        ("lifts", lifts_and_glues),
        ("degrees table", degrees),
        ("degree bound", bound),
        ("redundancy", redundancy),
        ("property suite", properties),
    ];
    let only: Option<usize> = std::env::var("TFPM_CRITERION").ok().and_then(|s| s.parse().ok());
    let mut ctx = Context { pipeline: Pipeline::new(), assembled: BTreeMap::new() };
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let start = Instant::now();
        let outcome = check(&mut ctx);
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{elapsed:.1?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail} [{elapsed:.1?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
