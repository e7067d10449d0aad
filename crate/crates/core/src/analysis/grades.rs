use std::path::Path;

use crate::error::{Error, Result};
use crate::genfunc::unit_normalized_expected;
use crate::rational::{ratio, Rational};
use crate::transport::{continuous_emd, discrete_emd, unit_normalized_emd, DistTuple};
use crate::types::Composition;

/// Per-section grade counts, one column per grade category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeTable {
    pub labels: Vec<String>,
    pub sections: Vec<(String, Composition)>,
}

impl GradeTable {
    pub fn new(labels: Vec<String>, sections: Vec<(String, Composition)>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidInput("grade table needs at least one category".into()));
        }
        for (name, c) in &sections {
            if c.len() != labels.len() {
                return Err(Error::ShapeMismatch(format!(
                    "section `{name}` has {} counts, expected {}",
                    c.len(),
                    labels.len()
                )));
            }
        }
        Ok(Self { labels, sections })
    }

    /// Parses `label,<grade-1>,...,<grade-n>` followed by
    /// `section-name,c1,...,cn` rows.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(true)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut labels = None;
        let mut sections = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| Error::Parse {
                line: e.position().map(|p| p.line() as usize).unwrap_or(0),
                message: e.to_string(),
            })?;
            let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
            if record.iter().all(str::is_empty) {
                continue;
            }
            let Some(labels) = labels.as_ref() else {
                if record.len() < 2 {
                    return Err(Error::Parse {
                        line,
                        message: "header needs a label column and at least one grade".into(),
                    });
                }
                labels = Some(record.iter().skip(1).map(str::to_string).collect::<Vec<_>>());
                continue;
            };
            let labels: &Vec<String> = labels;
            if record.len() != labels.len() + 1 {
                return Err(Error::Parse {
                    line,
                    message: format!(
                        "expected {} fields, found {}",
                        labels.len() + 1,
                        record.len()
                    ),
                });
            }
            let counts = record
                .iter()
                .skip(1)
                .map(|f| {
                    f.parse::<u64>().map_err(|_| Error::Parse {
                        line,
                        message: format!("`{f}` is not a nonnegative integer"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            sections.push((record[0].to_string(), Composition::new(counts)?));
        }
        let labels = labels.ok_or(Error::Parse {
            line: 1,
            message: "missing header line".into(),
        })?;
        Self::new(labels, sections)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        Self::parse_csv(&text)
    }
}

/// Scales every section to the largest section mass `S`, rounding by
/// largest remainder: floor each scaled count, then hand the missing units
/// to the largest fractional parts, lower bin first on ties. Sections
/// already at mass `S` are unchanged.
pub fn rescale_common_mass(g: &GradeTable) -> Result<DistTuple> {
    if g.sections.is_empty() {
        return Err(Error::EmptyTable);
    }
    if let Some((name, _)) = g.sections.iter().find(|(_, c)| c.mass() == 0) {
        return Err(Error::ZeroMass(name.clone()));
    }
    let target = g.sections.iter().map(|(_, c)| c.mass()).max().unwrap_or(0);
    let members = g
        .sections
        .iter()
        .map(|(_, c)| {
            let mass = c.mass();
            if mass == target {
                return Ok(c.clone());
            }
            let scaled: Vec<(u64, u64)> = c
                .bins()
                .iter()
                .map(|&x| {
                    let num = x as u128 * target as u128;
                    ((num / mass as u128) as u64, (num % mass as u128) as u64)
                })
                .collect();
            let mut bins: Vec<u64> = scaled.iter().map(|(q, _)| *q).collect();
            let deficit = target - bins.iter().sum::<u64>();
            let mut order: Vec<usize> = (0..bins.len()).collect();
            order.sort_by(|&a, &b| scaled[b].1.cmp(&scaled[a].1).then(a.cmp(&b)));
            for &k in order.iter().take(deficit as usize) {
                bins[k] += 1;
            }
            Composition::new(bins)
        })
        .collect::<Result<Vec<_>>>()?;
    DistTuple::new(members)
}

/// EMD summary of a grade table against the random-tuple expectation.
#[derive(Debug, Clone, PartialEq)]
pub struct EmdReport {
    pub mass: u64,
    pub tuple: DistTuple,
    pub discrete: u64,
    pub continuous: Rational,
    pub unit_normalized: Rational,
    /// Unit-normalized expected value for `(n^d)`; absent when `d = 1` or
    /// `n = 1`.
    pub expected_normalized: Option<Rational>,
    /// `unit_normalized / expected_normalized`.
    pub ratio_to_expected: Option<Rational>,
    pub warnings: Vec<String>,
}

pub fn grade_report(g: &GradeTable) -> Result<EmdReport> {
    let tuple = rescale_common_mass(g)?;
    let mut warnings = Vec::new();
    let rescaled: Vec<&str> = g
        .sections
        .iter()
        .zip(tuple.members())
        .filter(|((_, raw), scaled)| raw != *scaled)
        .map(|((name, _), _)| name.as_str())
        .collect();
    if !rescaled.is_empty() {
        warnings.push(format!(
            "rescaled to common mass {}: {}",
            tuple.mass(),
            rescaled.join(", ")
        ));
    }
    let d = tuple.dim();
    let n = g.labels.len();
    if d == 1 {
        warnings.push("only one section: d = 1 is degenerate and every EMD is 0".into());
    }
    let discrete = discrete_emd(&tuple);
    let continuous = continuous_emd(&tuple)?;
    let unit_normalized = unit_normalized_emd(&tuple)?;
    let expected_normalized = unit_normalized_expected(d, n).ok();
    let ratio_to_expected = expected_normalized.as_ref().and_then(|e| {
        (e != &ratio(0, 1)).then(|| &unit_normalized / e)
    });
    Ok(EmdReport {
        mass: tuple.mass(),
        tuple,
        discrete,
        continuous,
        unit_normalized,
        expected_normalized,
        ratio_to_expected,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[(&str, &[u64])]) -> GradeTable {
        let n = rows[0].1.len();
        GradeTable::new(
            (0..n).map(|k| format!("g{k}")).collect(),
            rows.iter()
                .map(|(name, c)| (name.to_string(), Composition::new(c.to_vec()).unwrap()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn parse_and_errors() {
        let g = GradeTable::parse_csv("label,A,B\ns1,1,2\n s2 , 3 ,0\n").unwrap();
        assert_eq!(g.labels, vec!["A", "B"]);
        assert_eq!(g.sections[1].0, "s2");
        assert_eq!(g.sections[1].1.bins(), &[3, 0]);
        assert!(matches!(
            GradeTable::parse_csv("label,A,B\ns1,1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            GradeTable::parse_csv("label,A,B\ns1,1,-2\n"),
            Err(Error::Parse { .. })
        ));
        assert!(GradeTable::parse_csv("").is_err());
        assert!(GradeTable::from_path("/nonexistent/grades.csv").is_err());
    }

    #[test]
    fn rescale_examples() {
        let t = rescale_common_mass(&table(&[("a", &[1, 2]), ("b", &[2, 0])])).unwrap();
        assert_eq!(t.mass(), 3);
        assert_eq!(t.members()[0].bins(), &[1, 2]);
        assert_eq!(t.members()[1].bins(), &[3, 0]);

        let single = table(&[("a", &[4, 1, 0])]);
        assert_eq!(rescale_common_mass(&single).unwrap().members()[0].bins(), &[4, 1, 0]);

        // 35/33 * (2,5,11,9,6) = (2.12,5.30,11.67,9.55,6.36): floors sum to 33,
        // the two largest remainders are bins 3 and 4
        let t = rescale_common_mass(&table(&[("a", &[2, 5, 11, 9, 6]), ("b", &[6, 10, 9, 6, 4])]))
            .unwrap();
        assert_eq!(t.mass(), 35);
        assert_eq!(t.members()[0].bins(), &[2, 5, 12, 10, 6]);
        assert_eq!(t.members()[1].bins(), &[6, 10, 9, 6, 4]);
        for (raw, scaled) in [2u64, 5, 11, 9, 6].iter().zip(t.members()[0].bins()) {
            let exact = *raw as f64 * 35.0 / 33.0;
            assert!((exact - *scaled as f64).abs() < 1.0);
        }
    }

    #[test]
    fn rescale_errors() {
        let empty = GradeTable::new(vec!["A".into()], vec![]).unwrap();
        assert_eq!(rescale_common_mass(&empty), Err(Error::EmptyTable));
        let zero = table(&[("a", &[0, 0]), ("b", &[1, 1])]);
        assert_eq!(rescale_common_mass(&zero), Err(Error::ZeroMass("a".into())));
    }

    #[test]
    fn identical_sections_report_zero() {
        let rows: Vec<(&str, &[u64])> = (0..7).map(|_| ("s", &[3u64, 1, 4, 1, 5][..])).collect();
        let r = grade_report(&table(&rows)).unwrap();
        assert_eq!(r.discrete, 0);
        assert_eq!(r.unit_normalized, ratio(0, 1));
        assert_eq!(r.ratio_to_expected, Some(ratio(0, 1)));
    }

    #[test]
    fn single_section_warns() {
        let r = grade_report(&table(&[("only", &[3, 2, 1])])).unwrap();
        assert_eq!(r.discrete, 0);
        assert!(r.expected_normalized.is_none());
        assert!(r.warnings.iter().any(|w| w.contains("d = 1")));
    }
}
