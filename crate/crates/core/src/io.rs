//! CSV rows and SVG plots for traced branches and sampled profiles.
//!
//! Numbers are written with 17 significant digits so that parsing a file back
//! reproduces every value bit for bit. Plots are drawn from the same rows, so
//! a plot regenerated from a CSV file has identical coordinates.

use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::solvers::ASigmaCurve;
use crate::steady::{Margin, ProfileSet, CONDITION_NAMES};

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: expected {expected} fields, found {found}")]
    FieldCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: bad number {text:?}")]
    Number { line: usize, text: String },
    #[error("header mismatch: {0:?}")]
    Header(String),
}

/// `{:.16e}` for finite values; `inf`, `-inf`, `nan` otherwise.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn parse_num(text: &str, line: usize) -> Result<f64, ParseError> {
    text.trim().parse::<f64>().map_err(|_| ParseError::Number {
        line,
        text: text.to_string(),
    })
}

pub const TRACE_VALUE_COLUMNS: [&str; 10] = [
    "A", "sigma", "theta_c", "lambda", "a_ell", "k", "r_bar", "z_bar", "E_eff", "V",
];

/// Column names of a trace CSV: the values, then one `margin_<name>` per
/// condition.
pub fn trace_header() -> Vec<String> {
    TRACE_VALUE_COLUMNS
        .iter()
        .map(|s| s.to_string())
        .chain(CONDITION_NAMES.iter().map(|n| format!("margin_{n}")))
        .collect()
}

/// One line of a trace CSV. A gap has only `a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    #[serde(rename = "A")]
    pub a: f64,
    /// `sigma` through `V`, in column order after `A`.
    pub values: Option<Vec<f64>>,
    #[serde(serialize_with = "ser_margins", deserialize_with = "de_margins")]
    pub margins: Option<Vec<f64>>,
}

fn ser_margins<S: Serializer>(m: &Option<Vec<f64>>, s: S) -> Result<S::Ok, S::Error> {
    m.as_ref()
        .map(|v| v.iter().map(|&x| Margin(x)).collect::<Vec<_>>())
        .serialize(s)
}

fn de_margins<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<f64>>, D::Error> {
    Ok(Option::<Vec<Margin>>::deserialize(d)?.map(|v| v.into_iter().map(|m| m.0).collect()))
}

impl TraceRow {
    pub fn is_gap(&self) -> bool {
        self.values.is_none()
    }

    pub fn sigma(&self) -> Option<f64> {
        self.values.as_ref().map(|v| v[0])
    }
}

/// Records and gaps merged in increasing `A`.
pub fn trace_rows(curve: &ASigmaCurve) -> Vec<TraceRow> {
    let mut rows: Vec<TraceRow> = curve
        .records
        .iter()
        .map(|r| TraceRow {
            a: r.a,
            values: Some(vec![
                r.sigma,
                r.theta_c,
                r.derived.lambda,
                r.derived.a_ell,
                r.derived.k,
                r.derived.r_bar,
                r.derived.z_bar,
                r.e_eff,
                r.v,
            ]),
            margins: Some(
                CONDITION_NAMES
                    .iter()
                    .map(|n| r.report.margin(n).unwrap_or(f64::NAN))
                    .collect(),
            ),
        })
        .chain(curve.gaps.iter().map(|g| TraceRow {
            a: g.a,
            values: None,
            margins: None,
        }))
        .collect();
    rows.sort_by(|x, y| x.a.total_cmp(&y.a));
    rows
}

pub fn trace_csv(rows: &[TraceRow]) -> String {
    let header = trace_header();
    let width = header.len();
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        let mut fields = vec![fmt_num(r.a)];
        match (&r.values, &r.margins) {
            (Some(v), Some(m)) => {
                fields.extend(v.iter().map(|&x| fmt_num(x)));
                fields.extend(m.iter().map(|&x| fmt_num(x)));
            }
            _ => fields.resize(width, String::new()),
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_trace_csv(text: &str) -> Result<Vec<TraceRow>, ParseError> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default();
    let expected = trace_header();
    if header.split(',').collect::<Vec<_>>() != expected {
        return Err(ParseError::Header(header.to_string()));
    }
    let nv = TRACE_VALUE_COLUMNS.len();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != expected.len() {
            return Err(ParseError::FieldCount {
                line: line_no,
                expected: expected.len(),
                found: fields.len(),
            });
        }
        let a = parse_num(fields[0], line_no)?;
        if fields[1..].iter().all(|f| f.is_empty()) {
            rows.push(TraceRow {
                a,
                values: None,
                margins: None,
            });
            continue;
        }
        let nums = fields[1..]
            .iter()
            .map(|f| parse_num(f, line_no))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(TraceRow {
            a,
            values: Some(nums[..nv - 1].to_vec()),
            margins: Some(nums[nv - 1..].to_vec()),
        });
    }
    Ok(rows)
}

/// One sampled point of a profile curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub curve: String,
    pub theta: f64,
    pub r: f64,
    pub z: f64,
}

pub fn profile_rows(ps: &ProfileSet) -> Vec<ProfileRow> {
    [&ps.gamma1, &ps.gamma2, &ps.gamma3]
        .into_iter()
        .flat_map(|c| {
            c.theta.iter().zip(&c.points).map(|(&t, p)| ProfileRow {
                curve: c.name.clone(),
                theta: t,
                r: p.r,
                z: p.z,
            })
        })
        .collect()
}

pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from("curve,theta,r,z\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.curve,
            fmt_num(r.theta),
            fmt_num(r.r),
            fmt_num(r.z)
        );
    }
    out
}

pub fn parse_profile_csv(text: &str) -> Result<Vec<ProfileRow>, ParseError> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default();
    if header != "curve,theta,r,z" {
        return Err(ParseError::Header(header.to_string()));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 4 {
            return Err(ParseError::FieldCount {
                line: line_no,
                expected: 4,
                found: f.len(),
            });
        }
        rows.push(ProfileRow {
            curve: f[0].to_string(),
            theta: parse_num(f[1], line_no)?,
            r: parse_num(f[2], line_no)?,
            z: parse_num(f[3], line_no)?,
        });
    }
    Ok(rows)
}

/// Pixels per unit length.
pub const SVG_SCALE: f64 = 400.0;
const MARGIN: f64 = 40.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

struct Frame {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) * SVG_SCALE
    }

    fn y(&self, y: f64) -> f64 {
        MARGIN + (self.y0 + self.h - y) * SVG_SCALE
    }

    fn open(&self, out: &mut String, xlabel: &str, ylabel: &str) {
        let (pw, ph) = (
            self.w * SVG_SCALE + 2.0 * MARGIN,
            self.h * SVG_SCALE + 2.0 * MARGIN,
        );
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{pw:.3}" height="{ph:.3}" viewBox="0 0 {pw:.3} {ph:.3}">"#
        );
        let (l, r) = (self.x(self.x0), self.x(self.x0 + self.w));
        let (b, t) = (self.y(self.y0), self.y(self.y0 + self.h));
        let _ = writeln!(
            out,
            r#"<rect x="{l:.3}" y="{t:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="black"/>"#,
            r - l,
            b - t
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" font-size="14">{xlabel}</text>"#,
            0.5 * (l + r),
            b + 28.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" font-size="14">{ylabel}</text>"#,
            l - 24.0,
            0.5 * (b + t)
        );
        for (v, x) in [(self.x0, l), (self.x0 + self.w, r)] {
            let _ = writeln!(
                out,
                r#"<text x="{x:.3}" y="{:.3}" text-anchor="middle" font-size="10">{v:.4}</text>"#,
                b + 14.0
            );
        }
        for (v, y) in [(self.y0, b), (self.y0 + self.h, t)] {
            let _ = writeln!(
                out,
                r#"<text x="{:.3}" y="{y:.3}" text-anchor="end" font-size="10">{v:.4}</text>"#,
                l - 4.0
            );
        }
    }

    fn polyline(&self, out: &mut String, pts: &[(f64, f64)], color: &str, label: &str) {
        let mut d = String::new();
        for &(x, y) in pts {
            let _ = write!(d, "{:.6},{:.6} ", self.x(x), self.y(y));
        }
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"><title>{label}</title></polyline>"#,
            d.trim_end()
        );
    }
}

/// Meridian cross-section on `[0, 1] × [0, z_max]`, axes `r` and `z`.
pub fn profile_svg(rows: &[ProfileRow]) -> String {
    let z_max = rows.iter().map(|r| r.z).fold(0.0_f64, f64::max).max(1e-3) * 1.1;
    let frame = Frame {
        x0: 0.0,
        y0: 0.0,
        w: 1.0,
        h: z_max,
    };
    let mut out = String::new();
    frame.open(&mut out, "r", "z");
    let mut names: Vec<&str> = rows.iter().map(|r| r.curve.as_str()).collect();
    names.dedup();
    for (i, name) in names.iter().enumerate() {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.curve == *name)
            .map(|r| (r.r, r.z))
            .collect();
        frame.polyline(&mut out, &pts, COLORS[i % COLORS.len()], name);
    }
    out.push_str("</svg>\n");
    out
}

/// `σ` against `A` on the unit square, with the `Ω₀` boundary `σ = √(1−A²)`.
/// Gaps split a series into separate polylines.
pub fn trace_svg(series: &[(String, Vec<TraceRow>)]) -> String {
    let frame = Frame {
        x0: 0.0,
        y0: 0.0,
        w: 1.0,
        h: 1.0,
    };
    let mut out = String::new();
    frame.open(&mut out, "A", "σ");
    let boundary: Vec<(f64, f64)> = (0..=200)
        .map(|i| {
            let a = i as f64 / 200.0;
            (a, (1.0 - a * a).max(0.0).sqrt())
        })
        .collect();
    frame.polyline(&mut out, &boundary, "#999999", "sigma = sqrt(1 - A^2)");
    for (i, (label, rows)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut piece: Vec<(f64, f64)> = Vec::new();
        for r in rows {
            match r.sigma() {
                Some(s) => piece.push((r.a, s)),
                None => {
                    if !piece.is_empty() {
                        frame.polyline(&mut out, &piece, color, label);
                        piece.clear();
                    }
                }
            }
        }
        if !piece.is_empty() {
            frame.polyline(&mut out, &piece, color, label);
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_round_trips() {
        for x in [
            0.1,
            1.0 / 3.0,
            -2.5e-300,
            6.02e23,
            f64::MIN_POSITIVE,
            f64::INFINITY,
            f64::NEG_INFINITY,
        ] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap(), x);
        }
        assert!(fmt_num(f64::NAN).parse::<f64>().unwrap().is_nan());
    }

    #[test]
    fn trace_csv_round_trip_with_gap() {
        let n = CONDITION_NAMES.len();
        let rows = vec![
            TraceRow {
                a: 0.5,
                values: Some((0..9).map(|i| i as f64 / 7.0).collect()),
                margins: Some(
                    (0..n)
                        .map(|i| {
                            if i == 3 {
                                f64::INFINITY
                            } else {
                                -(i as f64) / 3.0
                            }
                        })
                        .collect(),
                ),
            },
            TraceRow {
                a: 0.6,
                values: None,
                margins: None,
            },
        ];
        let text = trace_csv(&rows);
        assert!(text.starts_with("A,sigma,theta_c,lambda,a_ell,k,r_bar,z_bar,E_eff,V,margin_"));
        assert_eq!(parse_trace_csv(&text).unwrap(), rows);
    }

    #[test]
    fn bad_csv_rejected() {
        assert!(matches!(
            parse_trace_csv("x,y\n"),
            Err(ParseError::Header(_))
        ));
        let mut text = trace_header().join(",");
        text.push_str("\n1,2\n");
        assert!(matches!(
            parse_trace_csv(&text),
            Err(ParseError::FieldCount { .. })
        ));
        assert!(parse_profile_csv("curve,theta,r,z\ng,1,x,2\n").is_err());
    }

    #[test]
    fn svg_scale() {
        let rows = vec![
            ProfileRow {
                curve: "g".into(),
                theta: 0.0,
                r: 0.0,
                z: 0.0,
            },
            ProfileRow {
                curve: "g".into(),
                theta: 1.0,
                r: 1.0,
                z: 0.5,
            },
        ];
        let svg = profile_svg(&rows);
        // r = 1 maps to 40 + 400 px.
        assert!(svg.contains("440.000000,"));
        assert!(svg.contains(">r</text>") && svg.contains(">z</text>"));
    }
}
