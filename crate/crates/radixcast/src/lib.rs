//! Exact interconversion of positional numerals.
//!
//! Any radix from 2 to 36 is supported, with the binary / octal / decimal /
//! hexadecimal quartet getting dedicated fast routes: repeated division and
//! weighted sums through decimal, 3-bit and 4-bit grouping against binary,
//! and the binary bridge between octal and hexadecimal. Values are carried
//! as exact rationals, so non-terminating fractions come back with their
//! repetend instead of a rounding error, and every conversion can emit a
//! step-by-step trace of the procedure that produced it.

pub mod cli;
pub mod numeral;
pub mod route;
pub mod trace;
pub mod value;

pub use numeral::{Digit, FormatStyle, Numeral, ParseError, Radix, RadixError, Sign};
pub use route::{convert, plan_route, GroupSize, Leg, Method, Route, RouteKind};
pub use trace::{equivalence_table, render_trace, Trace, TraceStep};
pub use value::{from_rational, to_rational, FracExpansion, FractionPolicy, Rational};
