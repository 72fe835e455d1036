//! Parsers for the small spec languages the CLI accepts on the command
//! line: membership functions and scalar operations.

use anyhow::{anyhow, bail, Context, Result};
use std::path::Path;
use t2fuzz::membership::MembershipFunction;
use t2fuzz::rat;
use t2fuzz::scalar::{catalog_lookup, BinaryOp};
use t2fuzz::unit::UnitValue;

/// Function specs:
///
/// - `chi:X`       point characteristic at X
/// - `chi:A,B`     interval characteristic on [A, B]
/// - `v:X`         descending line from (0,1) to (1,X)
/// - `w:X`         step-identity, 0 below X then t
/// - `tent:P,L,R`  tent peaking at P with shoulder heights L, R
/// - `const:C`     constant C
/// - `@path.json`  function in the JSON interchange format
pub fn parse_function_spec(spec: &str) -> Result<MembershipFunction> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading function file {path}"))?;
        return MembershipFunction::from_json_str(&text)
            .map_err(|e| anyhow!("parsing {path}: {e}"));
    }
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("malformed function spec `{spec}`; expected kind:args"))?;
    let values: Vec<f64> = rest
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .with_context(|| format!("number `{s}` in spec `{spec}`"))
        })
        .collect::<Result<_>>()?;
    let unit = |v: f64| -> Result<UnitValue> {
        UnitValue::new(v).map_err(|e| anyhow!("in spec `{spec}`: {e}"))
    };
    match (kind, values.as_slice()) {
        ("chi", [x]) => Ok(MembershipFunction::chi_point(unit(*x)?)),
        ("chi", [a, b]) => {
            MembershipFunction::chi_interval(unit(*a)?, unit(*b)?).map_err(Into::into)
        }
        ("v", [x]) => Ok(MembershipFunction::v_func(unit(*x)?)),
        ("w", [x]) => Ok(MembershipFunction::w_func(unit(*x)?)),
        ("tent", [p, l, r]) => Ok(MembershipFunction::tent(unit(*p)?, unit(*l)?, unit(*r)?)),
        ("const", [c]) => MembershipFunction::constant(rat::from_f64(*c)).map_err(Into::into),
        _ => bail!("unrecognized function spec `{spec}`"),
    }
}

/// Build an operation from a catalog name with parameters, or from a CSV
/// grid table file.
pub fn build_op(name: &str, params: &[f64], table: Option<&Path>) -> Result<BinaryOp> {
    if let Some(path) = table {
        let csv = std::fs::read_to_string(path)
            .with_context(|| format!("reading op table {}", path.display()))?;
        return BinaryOp::from_csv_table(name, &csv).map_err(Into::into);
    }
    catalog_lookup(name, params).map_err(Into::into)
}
