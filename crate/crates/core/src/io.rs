//! Curve CSV files (`s,x,y`) and JSON helpers.

use std::io::{Read, Write};
use std::path::Path;

use serde::Serializer;

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::revsurf::BoundaryData;

/// Formats with 17 significant digits, which round-trips every `f64`.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_curve<W: Write>(curve: &SampledCurve, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["s", "x", "y"]).map_err(err)?;
    for (s, p) in curve.params().iter().zip(curve.points()) {
        w.write_record([fmt_num(*s), fmt_num(p[0]), fmt_num(p[1])]).map_err(err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn curve_to_string(curve: &SampledCurve) -> String {
    let mut buf = Vec::new();
    write_curve(curve, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

/// Parses a curve CSV. Errors carry the 1-based line number.
pub fn read_curve<R: Read>(input: R) -> Result<SampledCurve> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = rdr
        .headers()
        .map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?
        .clone();
    let names: Vec<&str> = header.iter().collect();
    if names != ["s", "x", "y"] {
        return Err(Error::Parse {
            line: 1,
            msg: format!("expected header s,x,y, found {}", names.join(",")),
        });
    }
    let mut params = Vec::new();
    let mut points = Vec::new();
    let mut lines = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != 3 {
            return Err(Error::Parse { line, msg: format!("expected 3 fields, found {}", rec.len()) });
        }
        let mut v = [0.0; 3];
        for (k, field) in rec.iter().enumerate() {
            v[k] = field
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::Parse { line, msg: format!("not a finite number: {field:?}") })?;
        }
        if let Some(&prev) = params.last() {
            if v[0] <= prev {
                return Err(Error::Parse { line, msg: "s must be strictly increasing".into() });
            }
        }
        params.push(v[0]);
        points.push([v[1], v[2]]);
        lines.push(line);
    }
    SampledCurve::new(params, points).map_err(|e| match e {
        Error::AxisContact { index, y } => Error::Parse {
            line: lines[index],
            msg: format!("AxisContact: interior sample touches the axis (y = {y})"),
        },
        other => other,
    })
}

pub fn read_curve_file(path: &Path) -> Result<SampledCurve> {
    let f = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_curve(std::io::BufReader::new(f))
}

pub fn write_curve_file(curve: &SampledCurve, path: &Path) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    write_curve(curve, std::io::BufWriter::new(f))
}

pub fn read_boundary_json(text: &str) -> Result<BoundaryData> {
    let bd: BoundaryData = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    bd.validate()?;
    Ok(bd)
}

/// Serializes non-finite values as the string `"inf"`.
pub fn ser_f64_or_inf<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str("inf")
    }
}

/// Writes a table with a header row; every value with 17 significant digits.
pub fn write_table<W: Write>(header: &[&str], rows: &[Vec<f64>], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r.iter().map(|v| fmt_num(*v))).map_err(err)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let c = SampledCurve::from_fn(-1.0, 1.0, 37, |s| [s.sinh() * 1e-3, (0.1 + s * s).sqrt()]).unwrap();
        let text = curve_to_string(&c);
        assert!(text.starts_with("s,x,y\n"));
        let back = read_curve(text.as_bytes()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = read_curve("s,x,y\n0,0,1\n1,zz,1\n".as_bytes()).unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, msg: "not a finite number: \"zz\"".into() });
        let e = read_curve("s,x,y\n0,0,1\n0,1,1\n".as_bytes()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = read_curve("t,x,y\n0,0,1\n".as_bytes()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = read_curve("s,x,y\n0,0,1\n1,1,0\n2,2,1\n".as_bytes()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        assert!(e.to_string().contains("AxisContact"));
        let e = read_curve("s,x,y\n0,0,1\n1,1\n".as_bytes()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
    }

    #[test]
    fn boundary_json() {
        let bd = read_boundary_json(
            r#"{"x_minus":-1,"x_plus":1,"alpha_minus":1,"alpha_plus":2,"beta_minus":0,"beta_plus":3.141592653589793}"#,
        )
        .unwrap();
        assert_eq!(bd, BoundaryData::horizontal(1.0, 2.0));
        assert!(read_boundary_json(r#"{"x_minus":-1}"#).is_err());
    }
}
