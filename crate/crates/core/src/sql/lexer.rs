use super::SqlError;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    /// Bare word; keywords are recognized case-insensitively by the parser.
    Word(String),
    /// Backtick- or bracket-quoted identifier.
    Quoted(String),
    Str(String),
    Num(String),
    Sym(&'static str),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    /// Byte offset into the source text.
    pub pos: usize,
}

const SYMBOLS: [&str; 16] = ["<=", ">=", "!=", "<>", "(", ")", ",", ".", "*", "+", "-", "/", "=", "<", ">", ";"];

pub fn tokenize(sql: &str) -> Result<Vec<Token>, SqlError> {
    let bytes = sql.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == b'_' || c >= 0x80 {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] >= 0x80) {
                i += 1;
            }
            out.push(Token { tok: Tok::Word(sql[start..i].to_string()), pos: start });
        } else if c.is_ascii_digit() || (c == b'.' && bytes.get(i + 1).is_some_and(|b| b.is_ascii_digit())) {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' && bytes.get(i + 1).is_some_and(|b| b.is_ascii_digit()) {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            } else if i < bytes.len() && bytes[i] == b'.' && !bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphabetic()) {
                // trailing dot as in `30.`
                i += 1;
            }
            out.push(Token { tok: Tok::Num(sql[start..i].to_string()), pos: start });
        } else if c == b'\'' || c == b'"' {
            let (text, end) = quoted(sql, i, c)?;
            out.push(Token { tok: Tok::Str(text), pos: start });
            i = end;
        } else if c == b'`' {
            let (text, end) = quoted(sql, i, b'`')?;
            out.push(Token { tok: Tok::Quoted(text), pos: start });
            i = end;
        } else if c == b'[' {
            let close = sql[i..].find(']').ok_or(SqlError::Syntax { pos: i, message: "unterminated [identifier]".into() })?;
            out.push(Token { tok: Tok::Quoted(sql[i + 1..i + close].to_string()), pos: start });
            i += close + 1;
        } else if let Some(sym) = SYMBOLS.iter().find(|s| sql[i..].starts_with(**s)) {
            let sym: &'static str = if *sym == "<>" { "!=" } else { sym };
            i += if sym == "!=" { 2 } else { sym.len() };
            out.push(Token { tok: Tok::Sym(sym), pos: start });
        } else {
            let ch = sql[i..].chars().next().unwrap();
            return Err(SqlError::Syntax { pos: i, message: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

/// Quoted run starting at `start`; a doubled quote character escapes itself.
fn quoted(sql: &str, start: usize, q: u8) -> Result<(String, usize), SqlError> {
    let bytes = sql.as_bytes();
    let mut text = String::new();
    let mut i = start + 1;
    let mut seg = i;
    while i < bytes.len() {
        if bytes[i] == q {
            text.push_str(&sql[seg..i]);
            if bytes.get(i + 1) == Some(&q) {
                text.push(q as char);
                i += 2;
                seg = i;
                continue;
            }
            return Ok((text, i + 1));
        }
        i += 1;
    }
    Err(SqlError::Syntax { pos: start, message: "unterminated quoted text".into() })
}
