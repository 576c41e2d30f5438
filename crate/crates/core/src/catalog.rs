//! The fixed family of small quandles the acceptance checks run over.

use crate::quandle::{build, iterate, QuandleError, QuandleSpec, QuandleTable};

/// Largest iterate `Q_n` included for every base quandle.
pub const MAX_ITERATE: usize = 4;

/// Specs of the base quandles, in catalog order.
pub fn base_specs() -> Vec<String> {
    let mut specs: Vec<String> = (1..=24).map(|n| format!("dihedral:{n}")).collect();
    for n in 1..=12 {
        specs.push(format!("conj:cyclic:{n}"));
        specs.push(format!("core:cyclic:{n}"));
    }
    for n in 1..=6 {
        specs.push(format!("conj:dihedral-group:{n}"));
        specs.push(format!("core:dihedral-group:{n}"));
    }
    for n in [3, 4] {
        specs.push(format!("conj:symmetric:{n}"));
        specs.push(format!("core:symmetric:{n}"));
    }
    specs
}

pub fn base_quandles() -> Result<Vec<QuandleTable>, QuandleError> {
    base_specs().iter().map(|s| build(&s.parse::<QuandleSpec>()?)).collect()
}

/// Base quandles followed by their iterates `Q_2 .. Q_4`.
pub fn catalog() -> Result<Vec<QuandleTable>, QuandleError> {
    let bases = base_quandles()?;
    let mut all = bases.clone();
    for n in 2..=MAX_ITERATE {
        for t in &bases {
            all.push(iterate(t, n)?);
        }
    }
    Ok(all)
}
