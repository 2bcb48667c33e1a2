//! CSV and JSON emitters. Every float is written with 17 significant decimal
//! digits so that re-parsing reproduces the computed value bit for bit.

use triatom::dipole::SubspaceClassification;
use triatom::scan::{CrossingReport, KdAxis, ScanTable};

/// Lossless float text: 17 significant digits in exponent form, valid in
/// both CSV cells and JSON numbers.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn is_surface(table: &ScanTable) -> bool {
    matches!(table.metadata.kd, KdAxis::Range { .. })
}

/// Header `theta,intensity,g2` (surfaces prepend `kd`); undefined g² cells
/// are left empty.
pub fn scan_csv(table: &ScanTable) -> String {
    let surface = is_surface(table);
    let mut out = String::new();
    out.push_str(if surface { "kd,theta,intensity,g2\n" } else { "theta,intensity,g2\n" });
    for row in &table.rows {
        if surface {
            out.push_str(&fmt_f64(row.kd));
            out.push(',');
        }
        out.push_str(&fmt_f64(row.theta));
        out.push(',');
        out.push_str(&fmt_f64(row.intensity));
        out.push(',');
        if let Some(g2) = row.g2 {
            out.push_str(&fmt_f64(g2));
        }
        out.push('\n');
    }
    out
}

fn metadata_json(table: &ScanTable) -> String {
    let meta = &table.metadata;
    let mut fields = vec![
        format!("\"state\": {}", json_string(&meta.state)),
        format!("\"layout\": {}", json_string(meta.layout.label())),
    ];
    match meta.kd {
        KdAxis::Fixed(kd) => fields.push(format!("\"kd\": {}", fmt_f64(kd))),
        KdAxis::Range { min, max, samples } => {
            fields.push(format!("\"kd_min\": {}", fmt_f64(min)));
            fields.push(format!("\"kd_max\": {}", fmt_f64(max)));
            fields.push(format!("\"kd_samples\": {samples}"));
        }
    }
    fields.push(format!("\"theta_min\": {}", fmt_f64(meta.theta_min)));
    fields.push(format!("\"theta_max\": {}", fmt_f64(meta.theta_max)));
    fields.push(format!("\"theta_samples\": {}", meta.theta_samples));
    let observables: Vec<String> = meta
        .observables
        .labels()
        .iter()
        .map(|l| json_string(l))
        .collect();
    fields.push(format!("\"observables\": [{}]", observables.join(", ")));
    fields.push(format!("\"version\": {}", json_string(meta.version)));
    format!("{{{}}}", fields.join(", "))
}

pub fn scan_json(table: &ScanTable) -> String {
    let surface = is_surface(table);
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"metadata\": {},\n", metadata_json(table)));
    out.push_str("  \"rows\": [\n");
    for (idx, row) in table.rows.iter().enumerate() {
        out.push_str("    {");
        if surface {
            out.push_str(&format!("\"kd\": {}, ", fmt_f64(row.kd)));
        }
        out.push_str(&format!(
            "\"theta\": {}, \"intensity\": {}, \"g2\": {}",
            fmt_f64(row.theta),
            fmt_f64(row.intensity),
            row.g2.map_or_else(|| "null".to_owned(), fmt_f64)
        ));
        out.push('}');
        if idx + 1 < table.rows.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ]\n}\n");
    out
}

/// Crossings and touches merged into one θ-sorted table.
pub fn crossings_csv(report: &CrossingReport) -> String {
    let mut rows: Vec<(f64, &str)> = report
        .crossings
        .iter()
        .map(|&theta| (theta, "crossing"))
        .chain(report.touches.iter().map(|&theta| (theta, "touch")))
        .collect();
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = String::from("theta,kind\n");
    for (theta, kind) in rows {
        out.push_str(&format!("{},{kind}\n", fmt_f64(theta)));
    }
    out
}

pub fn crossings_json(report: &CrossingReport, context: &str) -> String {
    let list = |values: &[f64]| {
        values
            .iter()
            .map(|&v| fmt_f64(v))
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "{{\n  \"metadata\": {context},\n  \"crossings\": [{}],\n  \"touches\": [{}]\n}}\n",
        list(&report.crossings),
        list(&report.touches)
    )
}

/// Context block shared by the crossings emitters.
pub fn crossings_metadata_json(
    state: &str,
    layout: &str,
    kd: f64,
    theta_min: f64,
    theta_max: f64,
    samples: usize,
) -> String {
    format!(
        "{{\"state\": {}, \"layout\": {}, \"kd\": {}, \"theta_min\": {}, \"theta_max\": {}, \"samples\": {samples}}}",
        json_string(state),
        json_string(layout),
        fmt_f64(kd),
        fmt_f64(theta_min),
        fmt_f64(theta_max)
    )
}

pub struct EigenReport {
    pub layout: &'static str,
    pub kd: f64,
    pub omega: f64,
    pub gamma: f64,
    pub coupling: f64,
    pub omega13: Option<f64>,
    pub eigenvalues: Vec<f64>,
    pub subspaces: Vec<SubspaceClassification>,
}

fn matches_cell(class: &SubspaceClassification) -> String {
    class
        .matches
        .iter()
        .map(|m| format!("{}:{:.6}", m.tag.label(), m.projection))
        .collect::<Vec<_>>()
        .join("|")
}

/// Flat table, one row per degenerate subspace; context columns repeat.
pub fn eigen_csv(report: &EigenReport) -> String {
    let mut out = String::from(
        "layout,kd,omega,gamma,coupling,omega13,eigenvalue,multiplicity,matches,best_state,best_projection\n",
    );
    for class in &report.subspaces {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            report.layout,
            fmt_f64(report.kd),
            fmt_f64(report.omega),
            fmt_f64(report.gamma),
            fmt_f64(report.coupling),
            report.omega13.map(fmt_f64).unwrap_or_default(),
            fmt_f64(class.eigenvalue),
            class.dimension,
            matches_cell(class),
            class.best.tag.label(),
            fmt_f64(class.best.projection),
        ));
    }
    out
}

pub fn eigen_json(report: &EigenReport) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"layout\": {},\n", json_string(report.layout)));
    out.push_str(&format!("  \"kd\": {},\n", fmt_f64(report.kd)));
    out.push_str(&format!("  \"omega\": {},\n", fmt_f64(report.omega)));
    out.push_str(&format!("  \"gamma\": {},\n", fmt_f64(report.gamma)));
    out.push_str(&format!("  \"coupling\": {},\n", fmt_f64(report.coupling)));
    out.push_str(&format!(
        "  \"omega13\": {},\n",
        report.omega13.map_or_else(|| "null".to_owned(), fmt_f64)
    ));
    let all: Vec<String> = report.eigenvalues.iter().map(|&v| fmt_f64(v)).collect();
    out.push_str(&format!("  \"eigenvalues\": [{}],\n", all.join(", ")));
    out.push_str("  \"subspaces\": [\n");
    for (idx, class) in report.subspaces.iter().enumerate() {
        let matches: Vec<String> = class
            .matches
            .iter()
            .map(|m| {
                format!(
                    "{{\"state\": {}, \"projection\": {}}}",
                    json_string(m.tag.label()),
                    fmt_f64(m.projection)
                )
            })
            .collect();
        out.push_str(&format!(
            "    {{\"eigenvalue\": {}, \"multiplicity\": {}, \"matches\": [{}], \"best_state\": {}, \"best_projection\": {}}}{}\n",
            fmt_f64(class.eigenvalue),
            class.dimension,
            matches.join(", "),
            json_string(class.best.tag.label()),
            fmt_f64(class.best.projection),
            if idx + 1 < report.subspaces.len() { "," } else { "" }
        ));
    }
    out.push_str("  ]\n}\n");
    out
}
