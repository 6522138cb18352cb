use serde::Deserialize;

use crate::binomial::DegreeVector;
use crate::error::OracleError;
use crate::graph::Graph;

/// A nonnegative integer matrix with nonzero columns; columns are the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricConfig {
    rows: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct MatrixJson {
    matrix: Vec<Vec<i64>>,
}

impl ToricConfig {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, OracleError> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || width == 0 {
            return Err(OracleError::Malformed("matrix has no entries".into()));
        }
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(OracleError::Malformed(format!(
                    "row {} has {} entries, expected {width}",
                    i + 1,
                    row.len()
                )));
            }
            let mut r = Vec::with_capacity(width);
            for (j, &value) in row.iter().enumerate() {
                if value < 0 {
                    return Err(OracleError::NegativeEntry { row: i, col: j, value });
                }
                r.push(u32::try_from(value).map_err(|_| {
                    OracleError::Malformed(format!("entry ({}, {}) too large", i + 1, j + 1))
                })?);
            }
            out.push(r);
        }
        if let Some(j) = (0..width).find(|&j| out.iter().all(|r| r[j] == 0)) {
            return Err(OracleError::ZeroColumn(j));
        }
        Ok(ToricConfig { rows: out })
    }

    /// The vertex-edge incidence configuration.
    pub fn from_graph(graph: &Graph) -> Self {
        ToricConfig { rows: graph.incidence_matrix() }
    }

    /// `{"matrix": [[...], ...]}`, or plain rows of integers separated by
    /// commas or whitespace, one row per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, OracleError> {
        if text.trim_start().starts_with('{') {
            let parsed: MatrixJson =
                serde_json::from_str(text).map_err(|e| OracleError::Malformed(e.to_string()))?;
            return Self::new(parsed.matrix);
        }
        let mut rows = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| OracleError::Malformed(format!("line {}: bad entry {t:?}", n + 1)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Self::new(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn variables(&self) -> usize {
        self.rows[0].len()
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.rows[row][col]
    }

    pub fn degree_of(&self, exponents: &[u32]) -> DegreeVector {
        assert_eq!(exponents.len(), self.variables());
        DegreeVector(
            self.rows
                .iter()
                .map(|r| r.iter().zip(exponents).map(|(a, u)| a * u).sum())
                .collect(),
        )
    }

    /// `A z` for a signed vector `z`.
    pub fn apply(&self, z: &[i64]) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(z).map(|(&a, &x)| i64::from(a) * x).sum())
            .collect()
    }

    pub fn check_degree(&self, b: &DegreeVector) -> Result<(), OracleError> {
        if b.0.len() != self.rows() {
            return Err(OracleError::Dimension { expected: self.rows(), found: b.0.len() });
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "matrix": self.rows }).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_json_and_csv() {
        let a = ToricConfig::parse(r#"{"matrix": [[1, 0, 1], [0, 1, 1]]}"#).unwrap();
        let b = ToricConfig::parse("1,0,1\n# comment\n0 1 1\n").unwrap();
        assert_eq!(a, b);
        assert_eq!((a.rows(), a.variables()), (2, 3));
        assert_eq!(a.degree_of(&[1, 1, 0]), a.degree_of(&[0, 0, 1]));
    }

    #[test]
    fn rejects_bad_matrices() {
        assert_eq!(
            ToricConfig::parse("1 -2\n0 1"),
            Err(OracleError::NegativeEntry { row: 0, col: 1, value: -2 })
        );
        assert_eq!(ToricConfig::parse("1 0\n1 0"), Err(OracleError::ZeroColumn(1)));
        assert!(matches!(ToricConfig::parse("1 0\n1"), Err(OracleError::Malformed(_))));
        assert!(matches!(ToricConfig::parse("1 x"), Err(OracleError::Malformed(_))));
        assert!(matches!(ToricConfig::parse(""), Err(OracleError::Malformed(_))));
    }

    #[test]
    fn graph_incidence() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let c = ToricConfig::from_graph(&g);
        assert_eq!(c.matrix(), &[vec![1, 0], vec![1, 1], vec![0, 1]]);
    }
}
