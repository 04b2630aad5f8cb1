use crate::error::CliError;
use crate::report::LowDimRow;

const TABLE: &str = include_str!("../data/lowdim.txt");

/// The curated dimension 5, 6 and 7 verdict tables, optionally filtered.
pub fn lowdim_rows(dimension: Option<u32>) -> Result<Vec<LowDimRow>, CliError> {
    let mut rows = Vec::new();
    for line in TABLE.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let f: Vec<&str> = line.split(';').map(str::trim).collect();
        let [dim, item, space, verdict, evidence, computed] = f[..] else {
            return Err(CliError::Invariant(format!("malformed low-dimensional row '{line}'")));
        };
        let dim: u32 = dim
            .parse()
            .map_err(|_| CliError::Invariant(format!("bad dimension in '{line}'")))?;
        if dimension.is_some_and(|d| d != dim) {
            continue;
        }
        rows.push(LowDimRow {
            dimension: dim,
            item: item.to_owned(),
            space: space.to_owned(),
            verdict: verdict.to_owned(),
            evidence: evidence.to_owned(),
            computed: (computed != "-").then(|| computed.to_owned()),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_dimensional_cases() {
        let rows = lowdim_rows(Some(7)).unwrap();
        assert_eq!(rows.len(), 7);
        let sp = rows.iter().find(|r| r.item == "III.6").unwrap();
        assert_eq!(sp.verdict, "open");
        assert_eq!(lowdim_rows(None).unwrap().len(), 17);
        assert!(lowdim_rows(Some(4)).unwrap().is_empty());
    }
}
