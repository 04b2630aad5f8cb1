use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{parameter, Error, Result};

const CURATED: &str = include_str!("../../data/nu_cases.txt");

/// How the circle fiber acts on the trivial summands of the representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiberAction {
    Nontrivial,
    Unknown,
    /// The space is not treated as a circle bundle.
    None,
}

impl FiberAction {
    pub fn as_str(self) -> &'static str {
        match self {
            FiberAction::Nontrivial => "nontrivial",
            FiberAction::Unknown => "unknown",
            FiberAction::None => "none",
        }
    }
}

impl FromStr for FiberAction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nontrivial" => Ok(FiberAction::Nontrivial),
            "unknown" => Ok(FiberAction::Unknown),
            "none" => Ok(FiberAction::None),
            _ => Err(parameter(format!("unknown fiber action '{s}'"))),
        }
    }
}

/// One branching fact read from the curated table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseRecord {
    pub id: String,
    pub group: String,
    pub subgroup: String,
    pub weight: Vec<usize>,
    pub trivial_multiplicity: u32,
    pub conjugate_factor: u32,
    pub fiber: FiberAction,
    pub reference_casimir: Option<BigRational>,
    pub citation: String,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let (n, d) = s
        .split_once('/')
        .ok_or_else(|| parameter(format!("expected num/den, got '{s}'")))?;
    let n: BigInt = n.parse().map_err(|_| parameter(format!("bad numerator in '{s}'")))?;
    let d: BigInt = d.parse().map_err(|_| parameter(format!("bad denominator in '{s}'")))?;
    if d == BigInt::from(0) {
        return Err(parameter(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(n, d))
}

fn parse_number<T: FromStr>(field: &str, what: &str) -> Result<T> {
    field.parse().map_err(|_| parameter(format!("bad {what} '{field}'")))
}

impl FromStr for CaseRecord {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        let [id, group, subgroup, weight, trivial, conjugate, fiber, reference, citation] = fields[..] else {
            return Err(parameter(format!("expected 9 fields, got {}: '{line}'", fields.len())));
        };
        if id.is_empty() {
            return Err(parameter("empty case id"));
        }
        let weight = weight
            .split('|')
            .map(|w| parse_number(w.trim(), "weight index"))
            .collect::<Result<Vec<usize>>>()?;
        let reference_casimir = match reference {
            "-" => None,
            r => Some(parse_rational(r)?),
        };
        Ok(Self {
            id: id.to_owned(),
            group: group.to_owned(),
            subgroup: subgroup.to_owned(),
            weight,
            trivial_multiplicity: parse_number(trivial, "multiplicity")?,
            conjugate_factor: parse_number(conjugate, "conjugate factor")?,
            fiber: fiber.parse()?,
            reference_casimir,
            citation: citation.to_owned(),
        })
    }
}

impl fmt::Display for CaseRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let weight: Vec<String> = self.weight.iter().map(ToString::to_string).collect();
        let reference = match &self.reference_casimir {
            Some(r) => format!("{}/{}", r.numer(), r.denom()),
            None => "-".to_owned(),
        };
        write!(
            f,
            "{}; {}; {}; {}; {}; {}; {}; {}; {}",
            self.id,
            self.group,
            self.subgroup,
            weight.join("|"),
            self.trivial_multiplicity,
            self.conjugate_factor,
            self.fiber.as_str(),
            reference,
            self.citation
        )
    }
}

/// Parses a table, skipping blank lines and `#` comments.
pub fn parse_table(text: &str) -> Result<Vec<CaseRecord>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

pub fn curated_table() -> &'static [CaseRecord] {
    static TABLE: OnceLock<Vec<CaseRecord>> = OnceLock::new();
    TABLE.get_or_init(|| parse_table(CURATED).expect("bundled table parses"))
}

pub fn lookup(id: &str) -> Result<&'static CaseRecord> {
    curated_table()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| parameter(format!("no curated record for '{id}'")))
}
