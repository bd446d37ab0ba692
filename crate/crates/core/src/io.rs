//! Serialization of analysis reports (JSON) and grid solutions (CSV).

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::AnalysisReport;
use crate::error::Result;
use crate::volterra::GridSolution;

/// One line of a solution file.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionRow {
    pub t: f64,
    pub u: f64,
    pub singular: f64,
    pub regular: f64,
}

pub fn solution_rows(solution: &GridSolution) -> Vec<SolutionRow> {
    solution
        .nodes()
        .zip(solution.regular_samples())
        .map(|(t, &regular)| {
            let singular = solution.singular_part().eval(t);
            SolutionRow {
                t,
                u: singular + regular,
                singular,
                regular,
            }
        })
        .collect()
}

/// Writes `t,u,singular,regular` rows for `t_1..t_N`.
pub fn write_solution_csv<W: Write>(solution: &GridSolution, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in solution_rows(solution) {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_solution_csv_path(solution: &GridSolution, path: &Path) -> Result<()> {
    write_solution_csv(solution, File::create(path)?)
}

pub fn read_solution_csv<R: Read>(input: R) -> Result<Vec<SolutionRow>> {
    let mut reader = csv::Reader::from_reader(input);
    let rows = reader
        .deserialize()
        .collect::<std::result::Result<_, _>>()?;
    Ok(rows)
}

pub fn report_to_json(report: &AnalysisReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)?)
}

pub fn report_from_json(text: &str) -> Result<AnalysisReport> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;
    use crate::dsl::parse_equation;
    use crate::order::Order;
    use crate::power_sum::PowerSum;

    #[test]
    fn solution_csv_round_trip() {
        let singular = PowerSum::monomial(2.0, Order::new(-1, 3).unwrap()).unwrap();
        let sol = GridSolution::new(0.25, vec![0.1, 0.2, 0.3, 0.4], 0.0, singular).unwrap();
        let mut buf = Vec::new();
        write_solution_csv(&sol, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("t,u,singular,regular\n"));
        let rows = read_solution_csv(buf.as_slice()).unwrap();
        assert_eq!(rows, solution_rows(&sol));
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[3].t, 1.0);
        assert_eq!(rows[3].u, 2.4);
    }

    #[test]
    fn solution_csv_to_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("u.csv");
        let sol = GridSolution::new(0.5, vec![1.0, 2.0], 1.0, PowerSum::zero()).unwrap();
        write_solution_csv_path(&sol, &path).unwrap();
        let rows = read_solution_csv(File::open(&path).unwrap()).unwrap();
        assert_eq!(rows[1].regular, 2.0);
    }

    #[test]
    fn report_json_uses_rational_strings() {
        let spec = parse_equation("D^{7/3} u + 3*D^{4/3} u + 4*D^{1/3} u = t^3").unwrap();
        let report = analyze(&spec);
        let json = report_to_json(&report).unwrap();
        assert!(json.contains("\"4/3\""), "{json}");
        assert!(json.contains("\"integral\""));
        assert_eq!(report_from_json(&json).unwrap(), report);
    }
}
