//! Shared fixtures for the benchmarks.

use einstab_cli::AnalysisConfig;
use einstab_core::aloff_wallach::{aw_isotropy, AWMetric};
use einstab_core::liecore::stiefel_basis;
use einstab_core::nikonorov::{nik_isotropy, NIK_ANGLE};
use einstab_core::stiefel::STIEFEL_FORM;
use einstab_core::{homspace::structure_triples, DiagonalMetric, IsotropyData};

/// Isotropy data together with a generic metric on it.
pub struct Fixture {
    pub name: String,
    pub data: IsotropyData,
    pub metric: DiagonalMetric,
}

pub fn aloff_wallach(p: i64, q: i64) -> Fixture {
    let metric = AWMetric::new(1.0, 1.3, 0.7, 0.9, p, q).expect("valid slope").to_diagonal();
    Fixture {
        name: format!("aloff-wallach({p},{q})"),
        data: aw_isotropy(p, q).expect("valid slope"),
        metric,
    }
}

pub fn stiefel(n: usize) -> Fixture {
    let basis = stiefel_basis(n).expect("n >= 3");
    Fixture {
        name: format!("stiefel({n})"),
        data: structure_triples(&basis, STIEFEL_FORM).expect("structure constants"),
        metric: DiagonalMetric::new(vec![1.1, 0.8, 1.4]).expect("positive"),
    }
}

pub fn nikonorov() -> Fixture {
    Fixture {
        name: "nikonorov".to_owned(),
        data: nik_isotropy(NIK_ANGLE).expect("reference angle"),
        metric: DiagonalMetric::new(vec![1.0, 0.6, 1.2, 0.9]).expect("positive"),
    }
}

pub fn fixtures() -> Vec<Fixture> {
    vec![aloff_wallach(0, 1), aloff_wallach(2, 7), stiefel(3), stiefel(6), nikonorov()]
}

/// Configuration for a CLI run given as `key = value` pairs.
pub fn config(pairs: &[(&str, &str)]) -> AnalysisConfig {
    AnalysisConfig::from_pairs(pairs.iter().map(|(k, v)| ((*k).to_owned(), (*v).to_owned())).collect())
        .expect("valid benchmark configuration")
}
