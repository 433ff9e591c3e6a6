//! Recomputes the headline numbers and compares them with the published ones.

use std::collections::BTreeMap;
use std::fmt;

use tfpm::fiber::{markov_degree_check_symmetric, DEFAULT_CAP};
use tfpm::holes::{fundamental_holes, verify_separation};
use tfpm::markov::kernel_markov_basis;
use tfpm::model::DesignMatrix;
use tfpm::notation::SymmetryGroup;
use tfpm::tfp::{constant_column_lifts, degree_bound, max_glue_degree, DegreeBoundReport};

use crate::pipeline::Pipeline;

/// One line of the comparison table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub item: String,
    pub published: String,
    pub computed: String,
    pub agrees: bool,
}

impl Row {
    fn new(item: impl Into<String>, published: impl fmt::Display, computed: impl fmt::Display) -> Self {
        let (published, computed) = (published.to_string(), computed.to_string());
        let agrees = published == computed;
        Self { item: item.into(), published, computed, agrees }
    }

    fn at_most(item: impl Into<String>, bound: i64, computed: i64) -> Self {
        Self { item: item.into(), published: format!("<= {bound}"), computed: computed.to_string(), agrees: computed <= bound }
    }
}

pub fn render(rows: &[Row]) -> String {
    let width = rows.iter().map(|r| r.item.len()).max().unwrap_or(0);
    let pw = rows.iter().map(|r| r.published.len()).max().unwrap_or(0).max("published".len());
    let mut out = format!("{:width$}  {:pw$}  computed\n", "item", "published");
    for r in rows {
        let mark = if r.agrees { "" } else { "  <-- differs" };
        out.push_str(&format!("{:width$}  {:pw$}  {}{mark}\n", r.item, r.published, r.computed));
    }
    out
}

fn stats(s: &BTreeMap<i64, usize>) -> String {
    let parts: Vec<String> = s.iter().map(|(d, c)| format!("{d}:{c}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Every row of the table.
///
/// `expensive` adds the own completion of `K_{3,3}`; without it the
/// three-factor degree comes from the assembled basis up to degree six and
/// the fiber check at that degree.
pub fn run(pipeline: &Pipeline, expensive: bool) -> Vec<Row> {
    let k4 = DesignMatrix::k4_tilde();
    let mut rows = Vec::new();

    let holes = fundamental_holes(&k4);
    rows.push(Row::new("fundamental holes of the filled K4", 2, holes.len()));
    let vectors: Vec<Vec<i64>> = holes.iter().map(|h| h.vector.clone()).collect();
    let identities = holes.iter().flat_map(|h| &h.witness_identities).filter(|w| w.verify(k4.matrix(), &vectors)).count();
    rows.push(Row::new("verified hole identities", 3, identities));
    let separation = verify_separation(&k4, &pipeline.families, 3);
    rows.push(Row::new("hole separation up to |lambda| = 3", "passed", if separation.passed() { "passed" } else { "failed" }));

    rows.push(Row::new("kernel basis of the filled K4", "20 {4:12, 6:8}", format!("{} {}", pipeline.kernel.len(), stats(&pipeline.kernel.degree_stats()))));
    rows.push(Row::new("inequalities of the projected fiber system", 14, pipeline.system.d.rows()));
    rows.push(Row::new(
        "projected-fiber basis",
        "16, max degree 4",
        format!("{}, max degree {}", pipeline.pf_basis.len(), pipeline.pf_basis.max_degree()),
    ));

    let mut lift_counts: Vec<usize> = pipeline.lifts.iter().map(|(_, ls)| ls.len()).collect();
    lift_counts.sort_unstable();
    lift_counts.dedup();
    let listed: Vec<String> = lift_counts.iter().map(|c| c.to_string()).collect();
    rows.push(Row::new("distinct lift counts", "6, 10, 21, 40", listed.join(", ")));
    let report = DegreeBoundReport::new(&pipeline.lifts);
    let per_degree: BTreeMap<i64, i64> = report.per_move.iter().fold(BTreeMap::new(), |mut acc, (g, _, d)| {
        let e = acc.entry(g.degree()).or_insert(0);
        *e = (*e).max(*d);
        acc
    });
    rows.push(Row::new("glue degree bound, quadratic moves", 6, per_degree.get(&2).copied().unwrap_or(0)));
    rows.push(Row::new("glue degree bound, quartic moves", 12, per_degree.get(&4).copied().unwrap_or(0)));
    for n in 1..=4 {
        let worst = pipeline.lifts.iter().map(|(_, ls)| max_glue_degree(ls, n)).max().unwrap_or(0);
        let generators = worst.max(pipeline.kernel.max_degree()).max(2);
        rows.push(Row::at_most(format!("largest generator degree, N = {n}"), degree_bound(n), generators));
    }

    let one = pipeline.assemble(1, degree_bound(1));
    rows.push(Row::new("Markov degree, N = 1", 2, one.max_degree()));
    let two = pipeline.assemble(2, degree_bound(2));
    rows.push(Row::new("Markov degree, N = 2", 4, two.max_degree()));
    let own_two = kernel_markov_basis(&DesignMatrix::k3n(2));
    rows.push(Row::new("N = 2 assembled vs own completion", stats(&own_two.degree_stats()), stats(&two.degree_stats())));
    let constant = constant_column_lifts(2, &pipeline.kernel);
    rows.push(Row::new("constant-column lifts kept, N = 2", 0, constant.iter().filter(|m| two.contains(m)).count()));

    let three_degree = if expensive {
        kernel_markov_basis(&DesignMatrix::k3n(3)).max_degree().to_string()
    } else {
        let three = pipeline.assemble(3, 6);
        match markov_degree_check_symmetric(DesignMatrix::k3n(3).matrix(), &three, 6, DEFAULT_CAP, &SymmetryGroup::k3n(3)) {
            Ok(r) if r.passed() => r.essential_degree.to_string(),
            Ok(_) => "disconnected fiber".to_string(),
            Err(e) => e.to_string(),
        }
    };
    rows.push(Row::new("Markov degree, N = 3", 6, three_degree));
    rows
}
