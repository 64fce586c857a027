//! Canonical on-disk serialization of graded objects, with an optional
//! Gram-matrix section. The format is line oriented, versioned, and
//! byte-identical across runs: all maps iterate in key order and every
//! field element uses its canonical string.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::forms::ContravariantForm;
use crate::gspace::linalg::Matrix;
use crate::gspace::object::{CoefficientChoice, GradedObject, OperatorPair};
use crate::qarith::context::q_literal;
use crate::qarith::{FieldContext, FieldDescriptor};
use crate::roots::{RootSystem, Weight};

const MAGIC: &str = "XCAT-CACHE";
const VERSION: u32 = 1;

/// Serialize an object (and optionally its contravariant form) in the
/// canonical format.
pub fn write_object(
    out: &mut impl Write,
    obj: &GradedObject,
    form: Option<&ContravariantForm>,
) -> Result<()> {
    writeln!(out, "{MAGIC} {VERSION}")?;
    writeln!(out, "rs {}", obj.root_system().descriptor())?;
    writeln!(out, "field {}", obj.ctx().descriptor())?;
    writeln!(
        out,
        "q {}",
        q_literal(obj.ctx().descriptor(), obj.ctx().q())
    )?;
    writeln!(out, "choice {}", obj.choice().tag())?;
    match obj.lambda() {
        Some(l) => writeln!(out, "lambda {l}")?,
        None => writeln!(out, "lambda -")?,
    }
    writeln!(out, "complete {}", obj.is_complete())?;
    match obj.truncation_height() {
        Some(h) => writeln!(out, "truncation {h}")?,
        None => writeln!(out, "truncation -")?,
    }
    writeln!(out, "weights {}", obj.dims().len())?;
    for (w, d) in obj.dims() {
        writeln!(out, "w {w} {d}")?;
    }
    let pivot_entries: Vec<(&Weight, &Vec<usize>)> = obj
        .dims()
        .keys()
        .filter_map(|w| obj.pivots_at(w).map(|p| (w, p)))
        .collect();
    writeln!(out, "pivots {}", pivot_entries.len())?;
    for (w, cols) in pivot_entries {
        let cols: Vec<String> = cols.iter().map(usize::to_string).collect();
        writeln!(out, "p {w} {}", cols.join(" "))?;
    }
    writeln!(out, "ops {}", obj.ops().len())?;
    for ((mu, alpha, n), pair) in obj.ops() {
        writeln!(out, "o {mu} {alpha} {n}")?;
        write_matrix(out, "e", &pair.e)?;
        write_matrix(out, "f", &pair.f)?;
    }
    match form {
        None => writeln!(out, "gram -")?,
        Some(form) => {
            writeln!(out, "gram {}", form.grams().len())?;
            for (w, g) in form.grams() {
                writeln!(out, "g {w}")?;
                write_matrix(out, "m", g)?;
            }
        }
    }
    writeln!(out, "end")?;
    Ok(())
}

fn write_matrix(out: &mut impl Write, tag: &str, m: &Matrix) -> Result<()> {
    writeln!(out, "{tag} {} {}", m.rows(), m.cols())?;
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| m.get(i, j).canonical_string())
            .collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

struct Lines<R> {
    reader: R,
    buf: String,
}

impl<R: BufRead> Lines<R> {
    fn next_line(&mut self) -> Result<&str> {
        self.buf.clear();
        let n = self.reader.read_line(&mut self.buf)?;
        if n == 0 {
            return Err(Error::CacheFormat("unexpected end of file".into()));
        }
        Ok(self.buf.trim_end_matches('\n'))
    }

    fn expect_prefix(&mut self, prefix: &str) -> Result<String> {
        let line = self.next_line()?;
        line.strip_prefix(prefix)
            .map(str::to_string)
            .ok_or_else(|| Error::CacheFormat(format!("expected `{prefix}…`, got `{line}`")))
    }
}

/// Load an object and its optional form back from the canonical format.
pub fn read_object(
    reader: &mut impl BufRead,
) -> Result<(GradedObject, Option<ContravariantForm>)> {
    let mut lines = Lines {
        reader,
        buf: String::new(),
    };
    let header = lines.next_line()?;
    let Some(version) = header.strip_prefix(&format!("{MAGIC} ")) else {
        return Err(Error::CacheFormat(format!("bad magic line `{header}`")));
    };
    let version: u32 = version
        .parse()
        .map_err(|_| Error::CacheFormat("bad version".into()))?;
    if version != VERSION {
        return Err(Error::CacheFormat(format!(
            "unsupported cache version {version} (expected {VERSION})"
        )));
    }
    let rs = RootSystem::parse(&lines.expect_prefix("rs ")?)?;
    let field = FieldDescriptor::parse(&lines.expect_prefix("field ")?)?;
    let q = field.parse_q(&lines.expect_prefix("q ")?)?;
    let ctx = FieldContext::new(field.clone(), q)?;
    let choice = CoefficientChoice::from_tag(&lines.expect_prefix("choice ")?)?;
    let lambda_str = lines.expect_prefix("lambda ")?;
    let lambda = if lambda_str == "-" {
        None
    } else {
        Some(Weight::parse(&lambda_str, rs.rank())?)
    };
    let complete: bool = lines
        .expect_prefix("complete ")?
        .parse()
        .map_err(|_| Error::CacheFormat("bad complete flag".into()))?;
    let trunc_str = lines.expect_prefix("truncation ")?;
    let truncation = if trunc_str == "-" {
        None
    } else {
        Some(
            trunc_str
                .parse::<i64>()
                .map_err(|_| Error::CacheFormat("bad truncation height".into()))?,
        )
    };

    let n_weights: usize = parse_count(&lines.expect_prefix("weights ")?)?;
    let mut dims = BTreeMap::new();
    for _ in 0..n_weights {
        let line = lines.expect_prefix("w ")?;
        let (w, d) = line
            .rsplit_once(' ')
            .ok_or_else(|| Error::CacheFormat("bad weight line".into()))?;
        let weight = Weight::parse(w, rs.rank())?;
        let dim: usize = parse_count(d)?;
        if dim == 0 {
            return Err(Error::CacheFormat(format!("zero dimension at {weight}")));
        }
        dims.insert(weight, dim);
    }

    let n_pivots: usize = parse_count(&lines.expect_prefix("pivots ")?)?;
    let mut pivots = BTreeMap::new();
    for _ in 0..n_pivots {
        let line = lines.expect_prefix("p ")?;
        let mut parts = line.split(' ');
        let w = parts
            .next()
            .ok_or_else(|| Error::CacheFormat("bad pivot line".into()))?;
        let weight = Weight::parse(w, rs.rank())?;
        let cols: std::result::Result<Vec<usize>, _> =
            parts.map(|c| c.parse::<usize>()).collect();
        pivots.insert(
            weight,
            cols.map_err(|_| Error::CacheFormat("bad pivot column".into()))?,
        );
    }

    let n_ops: usize = parse_count(&lines.expect_prefix("ops ")?)?;
    let mut ops = BTreeMap::new();
    for _ in 0..n_ops {
        let line = lines.expect_prefix("o ")?;
        let parts: Vec<&str> = line.split(' ').collect();
        let [w, alpha, n] = parts.as_slice() else {
            return Err(Error::CacheFormat(format!("bad op header `{line}`")));
        };
        let mu = Weight::parse(w, rs.rank())?;
        let alpha: usize = parse_count(alpha)?;
        let n: i64 = n
            .parse()
            .map_err(|_| Error::CacheFormat("bad op degree".into()))?;
        let e = read_matrix(&mut lines, "e", &field)?;
        let f = read_matrix(&mut lines, "f", &field)?;
        ops.insert((mu, alpha, n), OperatorPair { e, f });
    }

    let gram_count = lines.expect_prefix("gram ")?;
    let form = if gram_count == "-" {
        None
    } else {
        let count: usize = parse_count(&gram_count)?;
        let mut grams = BTreeMap::new();
        for _ in 0..count {
            let w = lines.expect_prefix("g ")?;
            let weight = Weight::parse(&w, rs.rank())?;
            let m = read_matrix(&mut lines, "m", &field)?;
            grams.insert(weight, m);
        }
        Some(ContravariantForm::from_grams(grams))
    };
    let end = lines.next_line()?;
    if end != "end" {
        return Err(Error::CacheFormat(format!("expected `end`, got `{end}`")));
    }

    let obj = GradedObject::new_raw(
        ctx, rs, choice, dims, ops, pivots, lambda, complete, truncation,
    );
    check_shapes(&obj)?;
    Ok((obj, form))
}

fn parse_count(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::CacheFormat(format!("bad count `{s}`")))
}

fn read_matrix(
    lines: &mut Lines<&mut impl BufRead>,
    tag: &str,
    field: &FieldDescriptor,
) -> Result<Matrix> {
    let header = lines.expect_prefix(&format!("{tag} "))?;
    let (r, c) = header
        .split_once(' ')
        .ok_or_else(|| Error::CacheFormat("bad matrix header".into()))?;
    let rows: usize = parse_count(r)?;
    let cols: usize = parse_count(c)?;
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..rows {
        let line = lines.next_line()?.to_string();
        let parts: Vec<&str> = line.split(' ').collect();
        if parts.len() != cols {
            return Err(Error::CacheFormat(format!(
                "matrix row has {} entries, expected {cols}",
                parts.len()
            )));
        }
        for (j, token) in parts.iter().enumerate() {
            m.set(i, j, field.parse_element(token)?);
        }
    }
    Ok(m)
}

/// Structural validation of a loaded object: shapes must match dims.
fn check_shapes(obj: &GradedObject) -> Result<()> {
    for ((mu, alpha, n), pair) in obj.ops() {
        if *alpha >= obj.root_system().rank() || *n < 1 {
            return Err(Error::CacheFormat(format!(
                "bad operator key ({mu},{alpha},{n})"
            )));
        }
        let alpha_w = obj.root_system().simple_root_as_weight(*alpha)?;
        let upper = mu.add(&alpha_w.scaled(*n));
        let lo = obj.dim_at(mu);
        let hi = obj.dim_at(&upper);
        if pair.e.rows() != hi || pair.e.cols() != lo || pair.f.rows() != lo || pair.f.cols() != hi
        {
            return Err(Error::CacheFormat(format!(
                "operator shape mismatch at ({mu},{alpha},{n})"
            )));
        }
    }
    Ok(())
}

/// Serialize to a byte vector (used for byte-identity comparisons).
pub fn to_bytes(obj: &GradedObject, form: Option<&ContravariantForm>) -> Vec<u8> {
    let mut out = Vec::new();
    write_object(&mut out, obj, form).expect("writing to a Vec cannot fail");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_simple, BuildPolicy, BuildRequest};
    use crate::forms::build_form;
    use crate::gspace::verify_axioms;

    fn build(rs: &str, field: &str, q: &str, lambda: &[i64]) -> GradedObject {
        let req = BuildRequest::new(
            RootSystem::parse(rs).unwrap(),
            FieldContext::parse(field, q).unwrap(),
            Weight(lambda.to_vec()),
            BuildPolicy::DominantAuto,
        );
        build_simple(&req).unwrap()
    }

    #[test]
    fn round_trip_is_lossless() {
        for (rs, field, q, lambda) in [
            ("A1", "fp:2", "1", vec![3]),
            ("A2", "rational", "1", vec![1, 1]),
            ("A1", "cyclo:3", "zeta^1", vec![4]),
        ] {
            let obj = build(rs, field, q, &lambda);
            let form = build_form(&obj, &obj.ctx().one()).unwrap();
            let bytes = to_bytes(&obj, Some(&form));
            let (loaded, loaded_form) = read_object(&mut bytes.as_slice()).unwrap();
            assert_eq!(obj, loaded);
            assert_eq!(Some(form), loaded_form);
            assert!(verify_axioms(&loaded, 4).pass());
            // byte-identical re-serialization
            assert_eq!(bytes, to_bytes(&loaded, loaded_form.as_ref()));
        }
    }

    #[test]
    fn version_and_corruption_are_rejected() {
        let obj = build("A1", "fp:2", "1", &[1]);
        let bytes = to_bytes(&obj, None);
        let text = String::from_utf8(bytes).unwrap();

        let wrong_version = text.replace("XCAT-CACHE 1", "XCAT-CACHE 99");
        assert!(read_object(&mut wrong_version.as_bytes()).is_err());

        let truncated = &text[..text.len() / 2];
        assert!(read_object(&mut truncated.as_bytes()).is_err());

        let garbled = text.replace("choice qbin", "choice mystery");
        assert!(read_object(&mut garbled.as_bytes()).is_err());
    }
}
