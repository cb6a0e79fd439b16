//! Text and JSON output of metric reports.

use roadmap_core::metrics::{best_per_row, MetricsReport};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricsJson {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub expanded_astar: usize,
    pub mean_node_conn: f64,
    pub mean_edge_conn: f64,
    pub algebraic_conn: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma_idx: f64,
    pub norm_mean_spl: f64,
}

impl From<&MetricsReport> for MetricsJson {
    fn from(r: &MetricsReport) -> Self {
        MetricsJson {
            n_nodes: r.n_nodes,
            n_edges: r.n_edges,
            expanded_astar: r.expanded_astar,
            mean_node_conn: r.mean_node_conn,
            mean_edge_conn: r.mean_edge_conn,
            algebraic_conn: r.algebraic_conn,
            alpha: r.alpha,
            beta: r.beta,
            gamma_idx: r.gamma_idx,
            norm_mean_spl: r.norm_mean_spl,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NamedMetrics {
    pub roadmap: String,
    pub metrics: MetricsJson,
    /// Metric keys on which this roadmap is best among the compared ones.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best: Option<Vec<&'static str>>,
}

/// JSON for one or several reports. A single report without comparison is
/// emitted as a bare metrics object.
pub fn to_json(named: &[(String, MetricsReport)], compare: bool) -> String {
    if named.len() == 1 && !compare {
        return crate::io::to_json(&MetricsJson::from(&named[0].1));
    }
    let reports: Vec<MetricsReport> = named.iter().map(|(_, r)| r.clone()).collect();
    let best = best_per_row(&reports);
    let out: Vec<NamedMetrics> = named
        .iter()
        .enumerate()
        .map(|(i, (name, r))| NamedMetrics {
            roadmap: name.clone(),
            metrics: r.into(),
            best: compare.then(|| {
                r.rows()
                    .iter()
                    .zip(best.iter())
                    .filter(|(_, b)| **b == Some(i))
                    .map(|(row, _)| row.key)
                    .collect()
            }),
        })
        .collect();
    crate::io::to_json(&out)
}

fn cell(value: f64, integer: bool) -> String {
    if integer {
        format!("{}", value as u64)
    } else {
        format!("{value:.3}")
    }
}

/// Aligned table with one column per report and the ideal direction last.
/// With `compare`, the best value of every row is marked with `*`.
pub fn to_table(named: &[(String, MetricsReport)], compare: bool) -> String {
    let reports: Vec<MetricsReport> = named.iter().map(|(_, r)| r.clone()).collect();
    let best = best_per_row(&reports);
    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["metric".to_string()];
    header.extend(named.iter().map(|(n, _)| n.clone()));
    header.push("ideal".to_string());
    grid.push(header);
    let rows: Vec<_> = reports.iter().map(|r| r.rows()).collect();
    for k in 0..10 {
        let first = &rows[0][k];
        let mut line = vec![first.label.to_string()];
        for (i, r) in rows.iter().enumerate() {
            let mut c = cell(r[k].value, r[k].integer);
            if compare && best[k] == Some(i) {
                c.push('*');
            }
            line.push(c);
        }
        line.push(first.ideal.as_str().to_string());
        grid.push(line);
    }
    let widths: Vec<usize> = (0..grid[0].len())
        .map(|c| grid.iter().map(|l| l[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in &grid {
        let cells: Vec<String> = line
            .iter()
            .enumerate()
            .map(|(c, v)| {
                if c == 0 {
                    format!("{:<w$}", v, w = widths[c])
                } else {
                    format!("{:>w$}", v, w = widths[c])
                }
            })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}
