//! Blanking of comments and verbatim material.
//!
//! Masked regions are overwritten with ASCII spaces (newlines are kept), so
//! the masked string has the same byte length as the input and every offset
//! into it is also an offset into the original file.

/// Environments whose bodies are never scanned for commands.
const VERBATIM_ENVS: &[&str] = &[
    "verbatim",
    "verbatim*",
    "Verbatim",
    "lstlisting",
    "minted",
    "comment",
];

/// Replaces every comment (unescaped `%` up to, not including, the line
/// break) by spaces.
pub fn mask_comments(text: &str) -> String {
    mask(text, false)
}

/// Comment masking plus blanking of verbatim environment bodies and inline
/// `\verb` arguments. This is what the scanner runs on.
pub fn mask_source(text: &str) -> String {
    mask(text, true)
}

fn mask(text: &str, verbatim: bool) -> String {
    let src = text.as_bytes();
    let mut out = src.to_vec();
    let mut i = 0;
    while i < src.len() {
        match src[i] {
            b'%' => {
                let end = line_end(src, i);
                blank(&mut out, i, end);
                i = end;
            }
            b'\\' if verbatim => {
                if let Some(next) = mask_verbatim_at(src, &mut out, i) {
                    i = next;
                } else {
                    i += 2;
                }
            }
            b'\\' => i += 2,
            _ => i += 1,
        }
    }
    String::from_utf8(out).expect("masking only replaces whole ASCII-delimited runs")
}

/// If a verbatim construct starts at `i`, blanks it and returns the offset
/// to resume from.
fn mask_verbatim_at(src: &[u8], out: &mut [u8], i: usize) -> Option<usize> {
    let rest = &src[i..];
    if let Some(after) = rest.strip_prefix(b"\\begin{") {
        let close = after.iter().position(|&b| b == b'}')?;
        let name = std::str::from_utf8(&after[..close]).ok()?;
        if !VERBATIM_ENVS.contains(&name) {
            return None;
        }
        let body_start = i + 7 + close + 1;
        let end_tag = format!("\\end{{{name}}}");
        let body_end = find(src, body_start, end_tag.as_bytes()).unwrap_or(src.len());
        blank(out, body_start, body_end);
        return Some((body_end + end_tag.len()).min(src.len()));
    }
    if let Some(after) = rest.strip_prefix(b"\\verb") {
        let after = after.strip_prefix(b"*").unwrap_or(after);
        let delim_at = i + (rest.len() - after.len());
        let &delim = after.first()?;
        if delim.is_ascii_alphabetic() || delim.is_ascii_whitespace() || !delim.is_ascii() {
            return None;
        }
        let line = line_end(src, delim_at + 1);
        let close = src[delim_at + 1..line].iter().position(|&b| b == delim)?;
        let close_at = delim_at + 1 + close;
        blank(out, delim_at + 1, close_at);
        return Some(close_at + 1);
    }
    None
}

fn line_end(src: &[u8], from: usize) -> usize {
    src[from..]
        .iter()
        .position(|&b| b == b'\n' || b == b'\r')
        .map_or(src.len(), |p| from + p)
}

fn find(src: &[u8], from: usize, needle: &[u8]) -> Option<usize> {
    src[from..]
        .windows(needle.len())
        .position(|w| w == needle)
        .map(|p| from + p)
}

fn blank(out: &mut [u8], start: usize, end: usize) {
    for b in &mut out[start..end] {
        if *b != b'\n' && *b != b'\r' {
            *b = b' ';
        }
    }
}
