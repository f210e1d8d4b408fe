//! Machine traces of each conversion procedure and their plain-text
//! rendering: division ladders, multiplication ladders, weight lines with
//! cross-outs, grouping diagrams, and the digit equivalence table.

use std::fmt;

use num::bigint::BigInt;

use crate::numeral::{Digit, Numeral, Radix};
use crate::route::{Leg, Method, Route, RouteKind};
use crate::value::{
    frac_to_digits, int_to_digits, to_rational_traced, FractionPolicy, Rational,
};

/// One recorded step of a conversion procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    /// One rung of the repeated-division ladder:
    /// `dividend = divisor * quotient + remainder`.
    Division {
        dividend: BigInt,
        divisor: BigInt,
        quotient: BigInt,
        remainder: BigInt,
    },
    /// One rung of the repeated-multiplication ladder:
    /// `product = fraction_in * radix`, `digit = floor(product)`.
    Multiplication {
        fraction_in: Rational,
        product: Rational,
        digit: Digit,
    },
    /// One positional weight line; `contribution = digit * weight` and
    /// zero digits are crossed out.
    Weight {
        position: i32,
        weight: Rational,
        digit: Digit,
        contribution: Rational,
        crossed_out: bool,
    },
    /// One binary digit group and the single digit it maps to.
    Grouping {
        bits: Vec<Digit>,
        padded: usize,
        digit: Digit,
    },
}

/// Steps of one route leg.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegTrace {
    pub leg: Leg,
    pub steps: Vec<TraceStep>,
}

/// Ordered record of every step a conversion took, partitioned per leg.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub route: Route,
    pub legs: Vec<LegTrace>,
}

impl Trace {
    pub fn steps(&self) -> impl Iterator<Item = &TraceStep> {
        self.legs.iter().flat_map(|l| l.steps.iter())
    }
}

/// Weighted-sum evaluation of a numeral packaged as a standalone trace,
/// one weight line per digit.
pub fn evaluation_trace(n: &Numeral) -> (Rational, Trace) {
    let (value, steps) = to_rational_traced(n);
    let leg = Leg {
        from: n.radix(),
        to: Radix::DECIMAL,
        method: Method::Weighted,
    };
    let trace = Trace {
        route: Route {
            kind: RouteKind::WeightedToDecimal,
            legs: vec![leg],
        },
        legs: vec![LegTrace {
            leg,
            steps,
        }],
    };
    (value, trace)
}

/// Renders a rational the way the weight lines print numbers: integers as
/// plain digit runs, decimal-terminating fractions like `.5` or `427.5`,
/// anything else as `n/d`.
fn fmt_number(v: &Rational) -> String {
    if v.is_integer() {
        return v.numer().to_string();
    }
    let mut denom = v.denom().clone();
    for f in [2u32, 5] {
        let big = BigInt::from(f);
        while (&denom % &big) == BigInt::from(0) {
            denom /= &big;
        }
    }
    if denom == BigInt::from(1) {
        let mag = v.abs();
        let (whole, frac) = mag.split_nonneg();
        let expansion = frac_to_digits(&frac, Radix::DECIMAL, FractionPolicy::exact())
            .expect("10-smooth denominator terminates");
        let mut s = String::new();
        if v.is_negative() {
            s.push('-');
        }
        if whole != BigInt::from(0) {
            s.push_str(&whole.to_string());
        }
        s.push('.');
        for d in expansion.digits {
            s.push(d.glyph());
        }
        s
    } else {
        v.to_string()
    }
}

fn glyphs(digits: &[Digit]) -> String {
    digits.iter().map(|d| d.glyph()).collect()
}

/// Deterministic monospace rendering of a trace, one line per step.
/// `width` caps where the division ladder's remainder column is placed;
/// values below 40 are treated as 40.
pub fn render_trace(t: &Trace, width: usize) -> String {
    let width = width.max(40);
    if t.route.kind == RouteKind::Identity {
        return "no conversion required\n".to_string();
    }
    let mut out = String::new();
    for leg_trace in &t.legs {
        out.push_str(&leg_trace.leg.to_string());
        out.push('\n');
        render_steps_into(&mut out, &leg_trace.steps, leg_trace.leg, width);
    }
    out
}

fn render_steps_into(out: &mut String, steps: &[TraceStep], leg: Leg, width: usize) {
    // Remainder column position: aligned across the leg's division rungs.
    let div_col = steps
        .iter()
        .filter_map(|s| match s {
            TraceStep::Division {
                dividend,
                divisor,
                quotient,
                ..
            } => Some(format!("{dividend} / {divisor} = {quotient}").len()),
            _ => None,
        })
        .max()
        .unwrap_or(0)
        .min(width.saturating_sub(10));

    for step in steps {
        match step {
            TraceStep::Division {
                dividend,
                divisor,
                quotient,
                remainder,
            } => {
                let left = format!("{dividend} / {divisor} = {quotient}");
                out.push_str(&format!("  {left:<div_col$}  rem {remainder}\n"));
            }
            TraceStep::Multiplication {
                fraction_in,
                product,
                digit,
            } => {
                out.push_str(&format!(
                    "  {} x {} = {} -> digit {}\n",
                    fmt_number(fraction_in),
                    leg.to,
                    fmt_number(product),
                    digit
                ));
            }
            TraceStep::Weight {
                position,
                weight,
                digit,
                contribution,
                crossed_out,
            } => {
                let marker = if *crossed_out { "x " } else { "  " };
                out.push_str(&format!(
                    "  {marker}{}^{} = {} x {} -> {}\n",
                    leg.from,
                    position,
                    digit,
                    fmt_number(weight),
                    fmt_number(contribution)
                ));
            }
            TraceStep::Grouping {
                bits,
                padded,
                digit,
            } => {
                let pad_note = if *padded > 0 {
                    format!(" (padded {padded})")
                } else {
                    String::new()
                };
                match leg.method {
                    Method::Ungroup => {
                        out.push_str(&format!("  {} -> {}{}\n", digit, glyphs(bits), pad_note));
                    }
                    _ => {
                        out.push_str(&format!("  {} -> {}{}\n", glyphs(bits), digit, pad_note));
                    }
                }
            }
        }
    }
}

/// One generated equivalence table: a header label per radix column and
/// the zero-padded rows `0..=max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceTable {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl fmt::Display for EquivalenceTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.headers.join("\t"))?;
        for row in &self.rows {
            writeln!(f, "{}", row.join("\t"))?;
        }
        Ok(())
    }
}

/// The default column order: decimal, hexadecimal, octal, binary.
pub const DEFAULT_TABLE_RADICES: [Radix; 4] = [
    Radix::DECIMAL,
    Radix::HEXADECIMAL,
    Radix::OCTAL,
    Radix::BINARY,
];

fn column_label(r: Radix) -> String {
    match r.value() {
        10 => "dec".to_string(),
        16 => "hex".to_string(),
        8 => "oct".to_string(),
        2 => "bin".to_string(),
        v => format!("r{v}"),
    }
}

/// Zero-padding width of a column. Octal and binary columns never drop
/// below their binary-coded digit group widths (3 and 4); the decimal
/// column is left unpadded.
fn column_width(r: Radix, max: u32) -> usize {
    let len = int_to_digits(&BigInt::from(max), r).len();
    match r.value() {
        10 => 0,
        8 => len.max(3),
        2 => len.max(4),
        _ => len,
    }
}

/// Builds the digit equivalence table for rows `0..=max`.
pub fn equivalence_table(max: u32, radices: &[Radix]) -> EquivalenceTable {
    assert!(max >= 1, "table needs at least rows 0 and 1");
    let widths: Vec<usize> = radices.iter().map(|&r| column_width(r, max)).collect();
    let headers = radices.iter().map(|&r| column_label(r)).collect();
    let rows = (0..=max)
        .map(|i| {
            radices
                .iter()
                .zip(&widths)
                .map(|(&r, &w)| {
                    let cell = glyphs(&int_to_digits(&BigInt::from(i), r));
                    let pad = w.saturating_sub(cell.len());
                    format!("{}{}", "0".repeat(pad), cell)
                })
                .collect()
        })
        .collect();
    EquivalenceTable { headers, rows }
}
