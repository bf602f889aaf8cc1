//! Input files: fans, hand-supplied class groups, sublattices and orders.

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use coverforge_core::classgroup::ClassGroupData;
use coverforge_core::fan::{Fan, Sublattice};
use coverforge_core::intlin::IntMatrix;
use num_bigint::BigInt;
use serde::de::{self, DeserializeOwned, Visitor};
use serde::{Deserialize, Deserializer};

/// An integer in a JSON document, written either as a number or as a
/// decimal string (for values that do not fit in 64 bits).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a string of decimal digits")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Int, E> {
                v.trim()
                    .parse()
                    .map(Int)
                    .map_err(|_| E::custom(format!("{v:?} is not an integer")))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

fn unwrap_all(v: Vec<Int>) -> Vec<BigInt> {
    v.into_iter().map(|x| x.0).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanFile {
    rank: usize,
    rays: Vec<Vec<Int>>,
    cones: Vec<Vec<usize>>,
    complete: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AbstractFile {
    cl: ClFile,
    divisor_classes: Vec<Vec<Int>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClFile {
    invariant_factors: Vec<Int>,
    free_rank: usize,
}

#[derive(Deserialize)]
struct SublatticeFile {
    rank: usize,
    /// Basis vectors, one per entry.
    basis: Vec<Vec<Int>>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Deserializes a JSON document, naming the offending field on failure.
fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        if field == "." {
            anyhow::anyhow!("{}: {}", path.display(), e.inner())
        } else {
            anyhow::anyhow!("{}: field `{}`: {}", path.display(), field, e.inner())
        }
    })
}

pub fn load_fan(path: &Path) -> Result<Fan> {
    let f: FanFile = parse(path, &read(path)?)?;
    let rays = f.rays.into_iter().map(unwrap_all).collect();
    Fan::new(f.rank, rays, f.cones, f.complete).with_context(|| format!("{}", path.display()))
}

pub fn load_abstract(path: &Path) -> Result<ClassGroupData> {
    let f: AbstractFile = parse(path, &read(path)?)?;
    let classes: Vec<Vec<BigInt>> = f.divisor_classes.into_iter().map(unwrap_all).collect();
    ClassGroupData::abstract_mode(&unwrap_all(f.cl.invariant_factors), f.cl.free_rank, &classes)
        .with_context(|| format!("{}", path.display()))
}

/// Reads a sublattice either from a bare `{"rank", "basis"}` object or from
/// any document carrying one under the key `sublattice` (such as the
/// structured output of `maxcover`).
pub fn load_sublattice(path: &Path) -> Result<Sublattice> {
    let text = read(path)?;
    let value: serde_json::Value = parse(path, &text)?;
    let inner = match value.get("sublattice") {
        Some(s) => s.clone(),
        None => value,
    };
    let f: SublatticeFile = serde_path_to_error::deserialize(inner)
        .map_err(|e| anyhow::anyhow!("{}: field `{}`: {}", path.display(), e.path(), e.inner()))?;
    for (i, v) in f.basis.iter().enumerate() {
        if v.len() != f.rank {
            bail!(
                "{}: field `basis[{}]` has {} entries, expected {}",
                path.display(),
                i,
                v.len(),
                f.rank
            );
        }
    }
    let cols: Vec<Vec<BigInt>> = f.basis.into_iter().map(unwrap_all).collect();
    let m = IntMatrix::from_columns(f.rank, &cols)?;
    Sublattice::from_generators(&m).with_context(|| format!("{}", path.display()))
}

/// Orders given inline as `2,3,6`, or as a file holding either that or a
/// JSON array.
pub fn parse_orders(arg: &str) -> Result<Vec<BigInt>> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = read(path)?;
        if text.trim_start().starts_with('[') {
            let v: Vec<Int> = parse(path, &text)?;
            return Ok(unwrap_all(v));
        }
        return parse_csv(text.trim()).with_context(|| format!("{}", path.display()));
    }
    parse_csv(arg)
}

fn parse_csv(s: &str) -> Result<Vec<BigInt>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .enumerate()
        .map(|(i, x)| {
            x.trim()
                .parse::<BigInt>()
                .with_context(|| format!("orders[{}]: {:?} is not an integer", i, x.trim()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn orders_inline_and_from_files() {
        assert_eq!(parse_orders("2, 3,6").unwrap(), [2, 3, 6].map(BigInt::from));
        let f = file("[2, \"3\", 4]");
        assert_eq!(
            parse_orders(f.path().to_str().unwrap()).unwrap(),
            [2, 3, 4].map(BigInt::from)
        );
        let f = file("5,5\n");
        assert_eq!(parse_orders(f.path().to_str().unwrap()).unwrap(), [5, 5].map(BigInt::from));
        let err = parse_orders("2,x").unwrap_err().to_string();
        assert!(err.contains("orders[1]"), "{err}");
    }

    #[test]
    fn fan_errors_name_the_field() {
        let f = file(r#"{"rank": 2, "rays": [[1, 0], [0, "y"]], "cones": [[0, 1]], "complete": false}"#);
        let err = format!("{:#}", load_fan(f.path()).unwrap_err());
        assert!(err.contains("rays[1][1]"), "{err}");
        let f = file(r#"{"rank": 2, "rays": [[1, 0]], "cones": [[0]]}"#);
        let err = format!("{:#}", load_fan(f.path()).unwrap_err());
        assert!(err.contains("complete"), "{err}");
    }

    #[test]
    fn big_integers_as_strings() {
        let f = file(r#"{"rank": 1, "basis": [["123456789012345678901234567890"]]}"#);
        let s = load_sublattice(f.path()).unwrap();
        assert_eq!(
            s.index(),
            "123456789012345678901234567890".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn sublattice_nested_in_a_report() {
        let f = file(r#"{"command": "maxcover", "sublattice": {"rank": 2, "basis": [[2, 0], [0, 2]]}}"#);
        assert_eq!(load_sublattice(f.path()).unwrap().index(), BigInt::from(4));
    }
}
