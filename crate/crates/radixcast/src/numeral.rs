//! Numerals, digit alphabets, parsing and canonical formatting.

use std::fmt;

use thiserror::Error;

/// A positional number base in `2..=36`.
///
/// Digits use `0-9` then `A-Z`, so 36 is the largest base the alphabet can
/// spell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Radix(u8);

impl Radix {
    pub const BINARY: Radix = Radix(2);
    pub const OCTAL: Radix = Radix(8);
    pub const DECIMAL: Radix = Radix(10);
    pub const HEXADECIMAL: Radix = Radix(16);

    pub const MIN: u32 = 2;
    pub const MAX: u32 = 36;

    pub fn new(value: u32) -> Result<Radix, RadixError> {
        if (Self::MIN..=Self::MAX).contains(&value) {
            Ok(Radix(value as u8))
        } else {
            Err(RadixError(value))
        }
    }

    pub fn value(self) -> u32 {
        self.0 as u32
    }
}

impl fmt::Display for Radix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("radix {0} is outside the supported range 2..=36")]
pub struct RadixError(pub u32);

/// A single digit value. The enclosing numeral's radix bounds it; a `Digit`
/// on its own only guarantees `value < 36`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digit(u8);

impl Digit {
    pub const ZERO: Digit = Digit(0);
    pub const ONE: Digit = Digit(1);

    /// Builds a digit checked against `radix`.
    pub fn new(value: u32, radix: Radix) -> Option<Digit> {
        (value < radix.value()).then_some(Digit(value as u8))
    }

    pub(crate) fn new_unchecked(value: u32) -> Digit {
        debug_assert!(value < Radix::MAX);
        Digit(value as u8)
    }

    pub fn value(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Uppercase glyph: `0-9` then `A-Z`.
    pub fn glyph(self) -> char {
        if self.0 < 10 {
            (b'0' + self.0) as char
        } else {
            (b'A' + self.0 - 10) as char
        }
    }

    /// Digit value of a glyph, case-insensitive. Does not check any radix.
    pub fn glyph_value(c: char) -> Option<u32> {
        match c {
            '0'..='9' => Some(c as u32 - '0' as u32),
            'a'..='z' => Some(c as u32 - 'a' as u32 + 10),
            'A'..='Z' => Some(c as u32 - 'A' as u32 + 10),
            _ => None,
        }
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.glyph())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }
}

/// A position relative to the radix point: index 0 is immediately left of
/// it and carries weight 1 in every radix; negative indices are fractional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(pub i32);

/// A signed positional numeral in canonical form.
///
/// Canonical means: no leading integer zeros (except the single digit of
/// zero itself), no trailing fraction zeros unless they sit before a
/// repetend, and a repetend that is primitive (not a repetition of a
/// shorter block) with minimal pre-period. Zero is always `+0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Numeral {
    sign: Sign,
    radix: Radix,
    int_digits: Vec<Digit>,
    frac_digits: Vec<Digit>,
    repetend: Option<Vec<Digit>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatStyle {
    Plain,
    Tagged,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("missing digits at index {position}")]
    EmptyDigits { position: usize },
    #[error("invalid digit '{glyph}' for radix {radix} at index {position}")]
    InvalidDigit {
        glyph: char,
        position: usize,
        radix: Radix,
    },
    #[error("empty repetend at index {position}")]
    EmptyRepetend { position: usize },
    #[error("unclosed repetend starting at index {position}")]
    UnclosedRepetend { position: usize },
    #[error("unexpected character '{glyph}' at index {position}")]
    UnexpectedChar { glyph: char, position: usize },
    #[error("prefix radix {prefix} conflicts with suffix tag _{tag}")]
    ConflictingRadixTags { prefix: u32, tag: u32 },
    #[error("radix tag {0} is outside the supported range 2..=36")]
    RadixOutOfRange(u32),
    #[error("malformed radix tag at index {position}")]
    InvalidRadixTag { position: usize },
}

impl Numeral {
    /// Builds a numeral from raw digit values, validating each against
    /// `radix` and canonicalizing the result.
    pub fn new(
        sign: Sign,
        radix: Radix,
        int_digits: &[u32],
        frac_digits: &[u32],
        repetend: Option<&[u32]>,
    ) -> Option<Numeral> {
        let check = |vals: &[u32]| -> Option<Vec<Digit>> {
            vals.iter().map(|&v| Digit::new(v, radix)).collect()
        };
        let int = check(int_digits)?;
        let frac = check(frac_digits)?;
        let rep = match repetend {
            Some(r) => Some(check(r)?),
            None => None,
        };
        Some(Self::from_parts(sign, radix, int, frac, rep))
    }

    /// Canonicalizing constructor over already-validated digits.
    pub(crate) fn from_parts(
        sign: Sign,
        radix: Radix,
        mut int: Vec<Digit>,
        mut frac: Vec<Digit>,
        mut rep: Option<Vec<Digit>>,
    ) -> Numeral {
        debug_assert!(int
            .iter()
            .chain(frac.iter())
            .chain(rep.iter().flatten())
            .all(|d| d.value() < radix.value()));

        let lead = int.iter().take_while(|d| d.is_zero()).count();
        int.drain(..lead.min(int.len().saturating_sub(1)));
        if int.is_empty() {
            int.push(Digit::ZERO);
        }

        if let Some(r) = &rep {
            if r.is_empty() || r.iter().all(|d| d.is_zero()) {
                rep = None;
            }
        }
        if let Some(r) = &rep {
            // An all-(B-1) cycle spells one unit in the last finite place,
            // the radix-B face of 0.999... = 1; carry it and drop the cycle.
            if r.iter().all(|d| d.value() + 1 == radix.value()) {
                rep = None;
                let mut carry = true;
                for d in frac.iter_mut().rev().chain(int.iter_mut().rev()) {
                    if d.value() + 1 == radix.value() {
                        *d = Digit::ZERO;
                    } else {
                        *d = Digit::new_unchecked(d.value() + 1);
                        carry = false;
                        break;
                    }
                }
                if carry {
                    int.insert(0, Digit::new_unchecked(1));
                }
            }
        }
        if let Some(r) = &mut rep {
            // Reduce to the primitive block, then rotate trailing pre-period
            // digits that duplicate the repetend tail into the cycle.
            let len = r.len();
            for d in 1..len {
                if len % d == 0 && r.chunks(d).all(|c| c == &r[..d]) {
                    r.truncate(d);
                    break;
                }
            }
            while let (Some(&f), Some(&t)) = (frac.last(), r.last()) {
                if f != t {
                    break;
                }
                frac.pop();
                r.rotate_right(1);
            }
        }
        if rep.is_none() {
            while frac.last() == Some(&Digit::ZERO) {
                frac.pop();
            }
        }

        let is_zero = int.len() == 1 && int[0].is_zero() && frac.is_empty() && rep.is_none();
        let sign = if is_zero { Sign::Positive } else { sign };
        Numeral {
            sign,
            radix,
            int_digits: int,
            frac_digits: frac,
            repetend: rep,
        }
    }

    pub fn zero(radix: Radix) -> Numeral {
        Numeral {
            sign: Sign::Positive,
            radix,
            int_digits: vec![Digit::ZERO],
            frac_digits: Vec::new(),
            repetend: None,
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn int_digits(&self) -> &[Digit] {
        &self.int_digits
    }

    pub fn frac_digits(&self) -> &[Digit] {
        &self.frac_digits
    }

    pub fn repetend(&self) -> Option<&[Digit]> {
        self.repetend.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.int_digits.len() == 1
            && self.int_digits[0].is_zero()
            && self.frac_digits.is_empty()
            && self.repetend.is_none()
    }

    /// The most significant digit: first integer digit, or the first
    /// fraction digit when the integer part is bare zero.
    pub fn msd(&self) -> Digit {
        if self.int_digits.len() == 1 && self.int_digits[0].is_zero() {
            if let Some(&d) = self.frac_digits.first() {
                return d;
            }
            if let Some(r) = &self.repetend {
                return r[0];
            }
        }
        self.int_digits[0]
    }

    /// The least significant digit: last finite fraction digit, else the
    /// last digit of the repetend's first cycle, else the last integer
    /// digit.
    pub fn lsd(&self) -> Digit {
        if let Some(r) = &self.repetend {
            return *r.last().unwrap();
        }
        if let Some(&d) = self.frac_digits.last() {
            return d;
        }
        *self.int_digits.last().unwrap()
    }

    /// Parses a numeral literal; untagged input is read as decimal.
    pub fn parse(text: &str) -> Result<Numeral, ParseError> {
        Self::parse_with_default(text, Radix::DECIMAL).map(|p| p.numeral)
    }

    /// Parses with a caller-chosen radix for untagged input, and reports
    /// whether the literal itself carried a radix (prefix or `_R` tag).
    pub fn parse_with_default(text: &str, default: Radix) -> Result<Parsed, ParseError> {
        parse_impl(text, default)
    }

    pub fn format(&self, style: FormatStyle) -> String {
        let mut s = String::new();
        if self.sign.is_negative() {
            s.push('-');
        }
        for d in &self.int_digits {
            s.push(d.glyph());
        }
        if !self.frac_digits.is_empty() || self.repetend.is_some() {
            s.push('.');
            for d in &self.frac_digits {
                s.push(d.glyph());
            }
            if let Some(r) = &self.repetend {
                s.push('(');
                for d in r {
                    s.push(d.glyph());
                }
                s.push(')');
            }
        }
        if style == FormatStyle::Tagged {
            s.push('_');
            s.push_str(&self.radix.value().to_string());
        }
        s
    }
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(FormatStyle::Plain))
    }
}

/// Result of [`Numeral::parse_with_default`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub numeral: Numeral,
    /// True when the literal named its own radix via prefix or `_R` tag.
    pub explicit_radix: bool,
}

fn parse_impl(text: &str, default: Radix) -> Result<Parsed, ParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseError::Empty);
    }
    let chars: Vec<char> = trimmed.chars().collect();
    let mut i = 0;

    let sign = match chars[0] {
        '-' | '\u{2212}' => {
            i += 1;
            Sign::Negative
        }
        '+' => {
            i += 1;
            Sign::Positive
        }
        _ => Sign::Positive,
    };

    let prefix_char = if chars.len() >= i + 2 && chars[i] == '0' {
        match chars[i + 1].to_ascii_lowercase() {
            c @ ('b' | 'o' | 'x') => Some(c),
            _ => None,
        }
    } else {
        None
    };
    let mut prefix = prefix_char.map(|c| match c {
        'b' => 2u32,
        'o' => 8,
        _ => 16,
    });
    let prefix_start = i;
    if prefix.is_some() {
        i += 2;
    }

    let take_run = |i: &mut usize| -> Vec<(char, usize)> {
        let mut run = Vec::new();
        while *i < chars.len() && chars[*i].is_ascii_alphanumeric() {
            run.push((chars[*i], *i));
            *i += 1;
        }
        run
    };

    let int_pos = i;
    let mut int_run = take_run(&mut i);

    let mut frac_run = Vec::new();
    let mut rep_run = None;
    let mut saw_point = false;
    if i < chars.len() && chars[i] == '.' {
        saw_point = true;
        i += 1;
        frac_run = take_run(&mut i);
        if i < chars.len() && chars[i] == '(' {
            let open = i;
            i += 1;
            let run = take_run(&mut i);
            if i >= chars.len() || chars[i] != ')' {
                return Err(ParseError::UnclosedRepetend { position: open });
            }
            i += 1;
            if run.is_empty() {
                return Err(ParseError::EmptyRepetend { position: open });
            }
            rep_run = Some(run);
        }
    }

    let mut tag = None;
    if i < chars.len() && chars[i] == '_' {
        let tag_pos = i;
        i += 1;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        if i == start {
            return Err(ParseError::InvalidRadixTag { position: tag_pos });
        }
        let value: u32 = chars[start..i]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| ParseError::InvalidRadixTag { position: tag_pos })?;
        tag = Some(value);
    }

    if i < chars.len() {
        return Err(ParseError::UnexpectedChar {
            glyph: chars[i],
            position: i,
        });
    }

    // A leading "0b"/"0x" next to a differing `_R` tag is usually a digit
    // run, not a prefix: "0B_16" is the hex digit pair 0,11. Reclaim the
    // two characters as digits when the tag's radix can spell them.
    if let (Some(p), Some(t)) = (prefix, tag) {
        let prefix_letter = chars[prefix_start + 1];
        if p != t
            && Digit::glyph_value(prefix_letter).is_some_and(|v| v < t)
            && (Radix::MIN..=Radix::MAX).contains(&t)
        {
            int_run.insert(0, (prefix_letter, prefix_start + 1));
            int_run.insert(0, ('0', prefix_start));
            prefix = None;
        }
    }

    let radix = match (prefix, tag) {
        (Some(p), Some(t)) => {
            let tagged = Radix::new(t).map_err(|e| ParseError::RadixOutOfRange(e.0))?;
            if tagged.value() != p {
                return Err(ParseError::ConflictingRadixTags { prefix: p, tag: t });
            }
            tagged
        }
        (Some(p), None) => Radix::new(p).unwrap(),
        (None, Some(t)) => Radix::new(t).map_err(|e| ParseError::RadixOutOfRange(e.0))?,
        (None, None) => default,
    };

    if int_run.is_empty() {
        return Err(ParseError::EmptyDigits { position: int_pos });
    }
    // "1" with no point and no fraction is fine; "1." is fine too.
    let _ = saw_point;

    let to_digits = |run: &[(char, usize)]| -> Result<Vec<Digit>, ParseError> {
        run.iter()
            .map(|&(c, position)| {
                let v = Digit::glyph_value(c).ok_or(ParseError::UnexpectedChar {
                    glyph: c,
                    position,
                })?;
                Digit::new(v, radix).ok_or(ParseError::InvalidDigit {
                    glyph: c,
                    position,
                    radix,
                })
            })
            .collect()
    };

    let int = to_digits(&int_run)?;
    let frac = to_digits(&frac_run)?;
    let rep = match &rep_run {
        Some(run) => Some(to_digits(run)?),
        None => None,
    };

    let explicit_radix = prefix.is_some() || tag.is_some();
    Ok(Parsed {
        numeral: Numeral::from_parts(sign, radix, int, frac, rep),
        explicit_radix,
    })
}
