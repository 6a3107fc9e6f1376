//! Date normalization toward the format most common in a column.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TimeFormat {
    /// `2010-05-01`
    IsoDate,
    /// `2010-05-01 13:45:00`
    IsoDateTime,
    /// `2010`
    Year,
    /// `05/01/2010`
    MonthDayYear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DateParts {
    pub year: u32,
    pub month: u32,
    pub day: u32,
    pub time: Option<(u32, u32, u32)>,
}

const MONTHS: [&str; 12] =
    ["january", "february", "march", "april", "may", "june", "july", "august", "september", "october", "november", "december"];

fn month_from_name(s: &str) -> Option<u32> {
    let s = s.trim_end_matches('.').to_lowercase();
    if s.len() < 3 {
        return None;
    }
    MONTHS.iter().position(|m| *m == s || (s.len() == 3 && m.starts_with(&s)) || (s == "sept" && *m == "september")).map(|i| i as u32 + 1)
}

fn num(s: &str, min_len: usize, max_len: usize) -> Option<u32> {
    if s.len() < min_len || s.len() > max_len || !s.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn valid(y: u32, m: u32, d: u32) -> bool {
    (1..=12).contains(&m) && (1..=31).contains(&d) && (1000..=9999).contains(&y)
}

fn parse_clock(s: &str) -> Option<(u32, u32, u32)> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() < 2 || parts.len() > 3 {
        return None;
    }
    let h = num(parts[0], 1, 2)?;
    let mi = num(parts[1], 2, 2)?;
    let sec = if parts.len() == 3 { num(parts[2].split('.').next()?, 2, 2)? } else { 0 };
    (h < 24 && mi < 60 && sec < 60).then_some((h, mi, sec))
}

/// Format of a stored value, if it is one of the recognized shapes.
pub fn detect_format(value: &str) -> Option<TimeFormat> {
    let v = value.trim();
    if num(v, 4, 4).is_some() {
        return Some(TimeFormat::Year);
    }
    let (date, clock) = match v.split_once(' ').or_else(|| v.split_once('T')) {
        Some((d, c)) => (d, Some(c)),
        None => (v, None),
    };
    let dash: Vec<&str> = date.split('-').collect();
    if dash.len() == 3 && num(dash[0], 4, 4).is_some() && num(dash[1], 1, 2).is_some() && num(dash[2], 1, 2).is_some() {
        return match clock {
            None => Some(TimeFormat::IsoDate),
            Some(c) if parse_clock(c).is_some() => Some(TimeFormat::IsoDateTime),
            Some(_) => None,
        };
    }
    let slash: Vec<&str> = date.split('/').collect();
    if clock.is_none() && slash.len() == 3 && num(slash[2], 4, 4).is_some() {
        return Some(TimeFormat::MonthDayYear);
    }
    None
}

/// Most common format among `values`; ties go to the earlier variant.
pub fn modal_format(values: &[String]) -> Option<TimeFormat> {
    let order = [TimeFormat::IsoDate, TimeFormat::IsoDateTime, TimeFormat::Year, TimeFormat::MonthDayYear];
    let mut counts = [0usize; 4];
    for v in values.iter().take(1000) {
        if let Some(f) = detect_format(v) {
            counts[order.iter().position(|o| *o == f).unwrap()] += 1;
        }
    }
    let best = (0..4).max_by_key(|i| (counts[*i], std::cmp::Reverse(*i)))?;
    (counts[best] > 0).then_some(order[best])
}

/// Parses ISO dates and datetimes, slash dates (month first unless
/// `day_first`), "May 1, 2010", "1 May 2010", "May 2010" and bare years.
pub fn parse_date(text: &str, day_first: bool) -> Option<DateParts> {
    let t = text.trim().trim_end_matches(['.', '?']);
    if let Some(y) = num(t, 4, 4) {
        return valid(y, 1, 1).then_some(DateParts { year: y, month: 1, day: 1, time: None });
    }
    let (date, clock) = match t.split_once(' ').or_else(|| t.split_once('T')) {
        Some((d, c)) if !d.chars().any(|c| c.is_alphabetic()) => (d, Some(c)),
        _ => (t, None),
    };
    let time = match clock {
        Some(c) => Some(parse_clock(c)?),
        None => None,
    };
    let dash: Vec<&str> = date.split('-').collect();
    if dash.len() == 3 {
        if let (Some(y), Some(m), Some(d)) = (num(dash[0], 4, 4), num(dash[1], 1, 2), num(dash[2], 1, 2)) {
            return valid(y, m, d).then_some(DateParts { year: y, month: m, day: d, time });
        }
    }
    let slash: Vec<&str> = date.split('/').collect();
    if slash.len() == 3 {
        if let (Some(a), Some(b), Some(y)) = (num(slash[0], 1, 2), num(slash[1], 1, 2), num(slash[2], 4, 4)) {
            let (m, d) = if day_first { (b, a) } else { (a, b) };
            return valid(y, m, d).then_some(DateParts { year: y, month: m, day: d, time });
        }
    }
    if time.is_some() {
        return None;
    }
    let words: Vec<&str> = t.split(|c: char| c.is_whitespace() || c == ',').filter(|w| !w.is_empty()).collect();
    let strip_ord = |w: &str| -> Option<u32> {
        let w = w.to_lowercase();
        let d = ["st", "nd", "rd", "th"].iter().find_map(|s| w.strip_suffix(s)).unwrap_or(&w).to_string();
        num(&d, 1, 2)
    };
    match words.as_slice() {
        [m, d, y] => {
            if let (Some(m), Some(d), Some(y)) = (month_from_name(m), strip_ord(d), num(y, 4, 4)) {
                return valid(y, m, d).then_some(DateParts { year: y, month: m, day: d, time: None });
            }
            let (d, m, y) = (strip_ord(words[0])?, month_from_name(words[1])?, num(words[2], 4, 4)?);
            valid(y, m, d).then_some(DateParts { year: y, month: m, day: d, time: None })
        }
        [m, y] => {
            let (m, y) = (month_from_name(m)?, num(y, 4, 4)?);
            valid(y, m, 1).then_some(DateParts { year: y, month: m, day: 1, time: None })
        }
        _ => None,
    }
}

pub fn format_date(p: &DateParts, format: TimeFormat) -> String {
    match format {
        TimeFormat::IsoDate => format!("{:04}-{:02}-{:02}", p.year, p.month, p.day),
        TimeFormat::IsoDateTime => {
            let (h, mi, s) = p.time.unwrap_or((0, 0, 0));
            format!("{:04}-{:02}-{:02} {:02}:{:02}:{:02}", p.year, p.month, p.day, h, mi, s)
        }
        TimeFormat::Year => format!("{:04}", p.year),
        TimeFormat::MonthDayYear => format!("{:02}/{:02}/{:04}", p.month, p.day, p.year),
    }
}
