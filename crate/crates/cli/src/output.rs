//! Number formatting and the trace and box files.

use std::io::{self, Write};

use pmbisect::{IntervalBox, SolveResult};

/// Significant digits of floats written to files.
pub const FILE_DIGITS: usize = 17;
/// Significant digits of floats shown to people.
pub const HUMAN_DIGITS: usize = 15;

/// Shortest `%g`-style rendering of `x` rounded to `digits` significant
/// digits: fixed notation for exponents in `-5..digits`, scientific otherwise.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Round-trip safe rendering used in files.
pub fn fmt_file(x: f64) -> String {
    format!("{:.*e}", FILE_DIGITS - 1, x)
}

pub fn trace_header(names: &[String]) -> Vec<String> {
    let mut h = vec!["k".to_string()];
    for v in names {
        h.push(format!("{v}_lo"));
        h.push(format!("{v}_hi"));
    }
    h.extend(names.iter().map(|v| format!("c_{v}")));
    h.extend(["residual", "subcube", "preconditioned"].map(String::from));
    h
}

/// One CSV row per recorded iteration.
pub fn write_trace<W: Write>(out: W, names: &[String], result: &SolveResult) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(trace_header(names))?;
    for rec in &result.trace.records {
        let mut row = vec![rec.k.to_string()];
        for d in rec.bbox.dims() {
            row.push(fmt_file(d.lo()));
            row.push(fmt_file(d.hi()));
        }
        row.extend(rec.center.iter().map(|&c| fmt_file(c)));
        row.push(fmt_file(rec.residual));
        row.push(
            rec.chosen_subcube
                .map(|s| s.to_string())
                .unwrap_or_default(),
        );
        row.push(rec.preconditioned().to_string());
        w.write_record(&row)?;
    }
    w.flush()
}

fn box_json(k: usize, b: &IntervalBox) -> String {
    let dims: Vec<String> = b
        .dims()
        .iter()
        .map(|d| format!("[{},{}]", fmt_file(d.lo()), fmt_file(d.hi())))
        .collect();
    format!("{{\"k\":{k},\"box\":[{}]}}", dims.join(","))
}

/// JSON lines, one `{"k": .., "box": [[lo, hi], ..]}` record per iteration.
pub fn write_boxes<W: Write>(mut out: W, result: &SolveResult) -> io::Result<()> {
    for rec in &result.trace.records {
        writeln!(out, "{}", box_json(rec.k, &rec.bbox))?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.5, 15), "0.5");
        assert_eq!(fmt_sig(1.0, 15), "1");
        assert_eq!(fmt_sig(-1.0, 15), "-1");
        assert_eq!(fmt_sig(0.0, 15), "0");
        assert_eq!(fmt_sig(1.0 - 2f64.powi(-50), 15), "0.999999999999999");
        assert_eq!(fmt_sig(2f64.powi(-50), 15), "8.88178419700125e-16");
        assert_eq!(fmt_sig(0.618033988749895, 15), "0.618033988749895");
        assert_eq!(fmt_sig(1.0e-5, 15), "0.00001");
        assert_eq!(fmt_sig(123456.0, 3), "1.23e5");
        assert_eq!(fmt_sig(9.9999999, 3), "10");
    }

    #[test]
    fn file_format_round_trips() {
        for x in [
            0.1,
            1.0 / 3.0,
            2f64.powi(-50),
            -0.582851662173280,
            1e300,
            f64::MIN_POSITIVE,
        ] {
            let s = fmt_file(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
            assert_eq!(
                s.split('e').next().unwrap().replace(['-', '.'], "").len(),
                FILE_DIGITS
            );
        }
    }

    #[test]
    fn box_record() {
        let b = IntervalBox::from_bounds(&[(0.0, 0.5), (-1.0, 0.25)]).unwrap();
        assert_eq!(
            box_json(3, &b),
            "{\"k\":3,\"box\":[[0.0000000000000000e0,5.0000000000000000e-1],[-1.0000000000000000e0,2.5000000000000000e-1]]}"
        );
    }

    #[test]
    fn header() {
        let h = trace_header(&["x".into(), "y".into()]);
        assert_eq!(
            h.join(","),
            "k,x_lo,x_hi,y_lo,y_hi,c_x,c_y,residual,subcube,preconditioned"
        );
    }
}
