use num_bigint::BigUint;
use serde::Serialize;

use homcount::counting::{assignment_space, aut_count, hom_count, vesurj_count, vsurj_count};
use homcount::dichotomy::{classify as classify_graph, hom_polytime, in_c, in_f, vesurj_polytime, vsurj_polytime};
use homcount::interpolation::{
    closed_set, homomorphic_images, lovasz_matrix, reduction_demo, reduction_demo_with, ExternalOracle, Mode,
};
use homcount::inversion::{dsub_inverse_column, verify_expansions, Violation};
use homcount::{enumerate_graphs, Count, Graph, GraphKey};

use crate::{Failure, Format, Kind, Output};

/// Largest `--n-max` accepted by `verify`.
const VERIFY_LIMIT: usize = 5;

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Graph text on one line, statements separated by `; `.
fn inline(g: &Graph) -> String {
    g.to_text().trim_end().replace('\n', "; ")
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Hom => "hom",
        Kind::Vsurj => "vsurj",
        Kind::Vesurj => "vesurj",
        Kind::Aut => "aut",
    }
}

#[derive(Serialize)]
struct CountReport {
    kind: &'static str,
    path: &'static str,
    count: String,
}

fn check_budget(space: BigUint, budget: u64) -> Result<(), Failure> {
    if space > BigUint::from(budget) {
        return Err(Failure::Precondition(format!(
            "brute force would explore {space} assignments, above the budget of {budget}"
        )));
    }
    Ok(())
}

pub fn count(
    kind: Kind,
    g: Option<&Graph>,
    h: &Graph,
    force_bruteforce: bool,
    budget: u64,
    format: Format,
) -> Result<Output, Failure> {
    let polytime = !force_bruteforce
        && match kind {
            Kind::Hom | Kind::Vsurj => in_f(h),
            Kind::Vesurj => in_c(h),
            Kind::Aut => false,
        };
    let value: Count = match (kind, g) {
        (Kind::Aut, _) => {
            check_budget(assignment_space(h, h), budget)?;
            aut_count(h)
        }
        (_, None) => unreachable!("pattern graph checked by caller"),
        (_, Some(g)) if polytime => match kind {
            Kind::Hom => hom_polytime(g, h)?,
            Kind::Vsurj => vsurj_polytime(g, h)?,
            _ => vesurj_polytime(g, h)?,
        },
        (_, Some(g)) => {
            check_budget(assignment_space(g, h), budget)?;
            match kind {
                Kind::Hom => hom_count(g, h),
                Kind::Vsurj => vsurj_count(g, h),
                _ => vesurj_count(g, h),
            }
        }
    };
    let report = CountReport {
        kind: kind_name(kind),
        path: if polytime { "polytime" } else { "bruteforce" },
        count: value.to_string(),
    };
    Ok(Output::ok(match format {
        Format::Json => to_json(&report),
        Format::Plain => format!("{}\n", report.count),
    }))
}

pub fn classify(h: &Graph, format: Format) -> Output {
    let c = classify_graph(h);
    Output::ok(match format {
        Format::Json => to_json(&c),
        Format::Plain => {
            let components: Vec<String> = c.components.iter().map(ToString::to_string).collect();
            let hard_edge = c
                .hard_edge
                .map_or_else(|| "none".to_string(), |[u, v]| format!("{u} {v}"));
            format!(
                "in_F: {}\nin_C: {}\ncomponents: {}\nhard_edge: {hard_edge}\n",
                c.in_f,
                c.in_c,
                components.join(", ")
            )
        }
    })
}

pub fn inverse_column(h: &Graph, format: Format) -> Output {
    let column = dsub_inverse_column(h);
    Output::ok(match format {
        Format::Json => to_json(&column),
        Format::Plain => column.iter().map(|(_, g, c)| format!("{c}\t{}\n", inline(g))).collect(),
    })
}

#[derive(Serialize)]
struct Image {
    key: GraphKey,
    graph: String,
}

pub fn images(h: &Graph, format: Format) -> Result<Output, Failure> {
    let images: Vec<Image> = homomorphic_images(h)?
        .into_iter()
        .map(|(key, g)| Image {
            key,
            graph: g.to_text(),
        })
        .collect();
    Ok(Output::ok(match format {
        Format::Json => to_json(&images),
        Format::Plain => images
            .iter()
            .map(|i| format!("{}\t{}\n", i.key, inline(&i.graph.parse().expect("own output"))))
            .collect(),
    }))
}

#[derive(Serialize)]
struct VerifyReport {
    n_max: usize,
    graphs: usize,
    pairs_checked: usize,
    expansion_violations: Vec<Violation>,
    diagonal_violations: Vec<String>,
    closure_violations: Vec<String>,
    violations: usize,
}

pub fn verify(n_max: usize, format: Format) -> Result<Output, Failure> {
    if n_max > VERIFY_LIMIT {
        return Err(Failure::Precondition(format!(
            "verify supports --n-max up to {VERIFY_LIMIT}, got {n_max}"
        )));
    }
    let expansions = verify_expansions(n_max);
    let mut diagonal_violations = Vec::new();
    let mut closure_violations = Vec::new();
    for (_, h) in enumerate_graphs(n_max) {
        let aut = aut_count(&h);
        if vsurj_count(&h, &h) != aut || vesurj_count(&h, &h) != aut {
            diagonal_violations.push(h.to_text());
        }
        let closed = closed_set(std::slice::from_ref(&h))?;
        let members: Vec<Graph> = closed.iter().map(|(_, g)| g.clone()).collect();
        let again = closed_set(&members)?;
        let same = again.iter().map(|(k, _)| k).eq(closed.iter().map(|(k, _)| k));
        if !same || lovasz_matrix(&closed).is_err() {
            closure_violations.push(h.to_text());
        }
    }
    let report = VerifyReport {
        n_max,
        graphs: expansions.graphs,
        pairs_checked: expansions.pairs_checked,
        violations: expansions.violations.len() + diagonal_violations.len() + closure_violations.len(),
        expansion_violations: expansions.violations,
        diagonal_violations,
        closure_violations,
    };
    let text = match format {
        Format::Json => to_json(&report),
        Format::Plain => format!(
            "graphs: {}\npairs checked: {}\nviolations: {}\n",
            report.graphs, report.pairs_checked, report.violations
        ),
    };
    Ok(Output {
        text,
        passed: report.violations == 0,
    })
}

pub fn recover(h: &Graph, g: &Graph, mode: Mode, oracle_cmd: Option<&str>, format: Format) -> Result<Output, Failure> {
    let report = match oracle_cmd {
        None => reduction_demo(h, mode, g)?,
        Some(cmd) => {
            let mut words = cmd.split_whitespace().map(str::to_string);
            let program = words
                .next()
                .ok_or_else(|| Failure::Usage("--oracle-cmd is empty".into()))?;
            let oracle = ExternalOracle {
                program,
                args: words.collect(),
            };
            reduction_demo_with(h, mode, g, &oracle)?
        }
    };
    let text = match format {
        Format::Json => to_json(&report),
        Format::Plain => {
            let mut s = format!(
                "mode: {}\nclosed set: {} graphs\ndeterminant: {}\noracle calls: {}\n",
                report.mode,
                report.closed_set.len(),
                report.determinant,
                report.oracle_calls
            );
            for t in &report.targets {
                s += &format!(
                    "{}: recovered {} expected {} [{}]\n",
                    t.role,
                    t.recovered,
                    t.expected,
                    if t.matches { "ok" } else { "MISMATCH" }
                );
            }
            s
        }
    };
    Ok(Output {
        text,
        passed: report.ok(),
    })
}
