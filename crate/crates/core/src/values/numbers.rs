//! Numerals and English number words.
//!
//! Covered words: zero to twenty, the tens up to ninety, hundred and
//! thousand, plus the ordinal form of each ("first", "twentieth",
//! "hundredth") and digit ordinals such as "3rd".

const CARDINALS: [(&str, u32); 30] = [
    ("zero", 0),
    ("one", 1),
    ("two", 2),
    ("three", 3),
    ("four", 4),
    ("five", 5),
    ("six", 6),
    ("seven", 7),
    ("eight", 8),
    ("nine", 9),
    ("ten", 10),
    ("eleven", 11),
    ("twelve", 12),
    ("thirteen", 13),
    ("fourteen", 14),
    ("fifteen", 15),
    ("sixteen", 16),
    ("seventeen", 17),
    ("eighteen", 18),
    ("nineteen", 19),
    ("twenty", 20),
    ("thirty", 30),
    ("forty", 40),
    ("fifty", 50),
    ("sixty", 60),
    ("seventy", 70),
    ("eighty", 80),
    ("ninety", 90),
    ("hundred", 100),
    ("thousand", 1000),
];

const ORDINALS: [(&str, u32); 29] = [
    ("first", 1),
    ("second", 2),
    ("third", 3),
    ("fourth", 4),
    ("fifth", 5),
    ("sixth", 6),
    ("seventh", 7),
    ("eighth", 8),
    ("ninth", 9),
    ("tenth", 10),
    ("eleventh", 11),
    ("twelfth", 12),
    ("thirteenth", 13),
    ("fourteenth", 14),
    ("fifteenth", 15),
    ("sixteenth", 16),
    ("seventeenth", 17),
    ("eighteenth", 18),
    ("nineteenth", 19),
    ("twentieth", 20),
    ("thirtieth", 30),
    ("fortieth", 40),
    ("fiftieth", 50),
    ("sixtieth", 60),
    ("seventieth", 70),
    ("eightieth", 80),
    ("ninetieth", 90),
    ("hundredth", 100),
    ("thousandth", 1000),
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NumberSource {
    Numeral,
    Word,
}

/// Value of a single English number word or ordinal.
pub fn number_word(word: &str) -> Option<u32> {
    let w = word.trim().to_lowercase();
    CARDINALS.iter().chain(ORDINALS.iter()).find(|(name, _)| *name == w).map(|(_, v)| *v)
}

/// Parses a decimal numeral (commas as thousands separators allowed).
pub fn parse_numeral(text: &str) -> Option<f64> {
    let t: String = text.trim().chars().filter(|c| *c != ',').collect();
    let body = t.strip_prefix('-').unwrap_or(&t);
    let mut parts = body.splitn(2, '.');
    let int = parts.next().unwrap_or("");
    let frac = parts.next();
    let digits_ok = |s: &str| s.chars().all(|c| c.is_ascii_digit());
    let valid = match frac {
        Some(f) => (!int.is_empty() || !f.is_empty()) && digits_ok(int) && digits_ok(f),
        None => !int.is_empty() && digits_ok(int),
    };
    if !valid {
        return None;
    }
    t.parse::<f64>().ok()
}

/// Numeral, number word or digit ordinal ("3rd").
pub fn parse_number(text: &str) -> Option<(f64, NumberSource)> {
    if let Some(v) = parse_numeral(text) {
        return Some((v, NumberSource::Numeral));
    }
    let t = text.trim().to_lowercase();
    for suffix in ["st", "nd", "rd", "th"] {
        if let Some(d) = t.strip_suffix(suffix) {
            if !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) {
                return d.parse::<f64>().ok().map(|v| (v, NumberSource::Numeral));
            }
        }
    }
    number_word(&t).map(|v| (v as f64, NumberSource::Word))
}

/// Shortest text for a number: `30` rather than `30.0`.
pub fn format_short(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// Text for a number compared against a numeric column: integral values keep
/// one decimal place (`30.0`).
pub fn format_column_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{:.1}", v)
    } else {
        format!("{v}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_and_numerals() {
        assert_eq!(parse_number("one"), Some((1.0, NumberSource::Word)));
        assert_eq!(parse_number("Twentieth"), Some((20.0, NumberSource::Word)));
        assert_eq!(parse_number("30"), Some((30.0, NumberSource::Numeral)));
        assert_eq!(parse_number("1,500"), Some((1500.0, NumberSource::Numeral)));
        assert_eq!(parse_number("-2.5"), Some((-2.5, NumberSource::Numeral)));
        assert_eq!(parse_number("3rd"), Some((3.0, NumberSource::Numeral)));
        assert_eq!(parse_number("many"), None);
        assert_eq!(parse_number("1.2.3"), None);
    }

    #[test]
    fn formatting() {
        assert_eq!(format_short(30.0), "30");
        assert_eq!(format_short(2.5), "2.5");
        assert_eq!(format_column_value(30.0), "30.0");
        assert_eq!(format_column_value(0.25), "0.25");
    }
}
