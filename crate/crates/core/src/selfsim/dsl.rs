use crate::error::{Error, Result};

use super::{Generator, GroupLetter, GroupWord, SelfSimilarGroup};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        kind: "syntax",
        line,
        column,
        message: message.into(),
    }
}

struct RawGen {
    name: String,
    cycles: Vec<Vec<String>>,
    restrictions: Vec<String>,
    line: usize,
}

/// Splits `(…)(…)…` into the parenthesized bodies with their columns.
fn groups(text: &str, line: usize, base_col: usize) -> Result<Vec<(String, usize)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        match c {
            c if c.is_whitespace() => {}
            '(' => {
                let start = i + 1;
                let mut end = None;
                for (j, d) in chars.by_ref() {
                    if d == '(' {
                        return Err(syntax(line, base_col + j, "nested parenthesis"));
                    }
                    if d == ')' {
                        end = Some(j);
                        break;
                    }
                }
                let Some(end) = end else {
                    return Err(syntax(line, base_col + i, "unclosed parenthesis"));
                };
                out.push((text[start..end].to_string(), base_col + start));
            }
            _ => return Err(syntax(line, base_col + i, format!("unexpected `{}`", c))),
        }
    }
    Ok(out)
}

/// Parses the wreath-recursion format:
///
/// ```text
/// alphabet: 0 1
/// a = (0 1)(e, a)
/// b = (perm)(a, c)
/// ```
///
/// The permutation is a product of cycles (an optional `perm` keyword may lead
/// the first one); the last group lists `g|_x` in alphabet order. A line
/// `depth: D` sets the equality depth.
pub fn parse_group(text: &str) -> Result<SelfSimilarGroup> {
    let mut alphabet: Option<Vec<String>> = None;
    let mut depth = None;
    let mut raw: Vec<RawGen> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = line.split('#').next().unwrap_or("");
        let indent = content.len() - content.trim_start().len();
        let body = content.trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("alphabet:") {
            if alphabet.is_some() {
                return Err(syntax(line_no, indent + 1, "repeated `alphabet:`"));
            }
            alphabet = Some(rest.split_whitespace().map(String::from).collect());
            continue;
        }
        if let Some(rest) = body.strip_prefix("depth:") {
            let d = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| syntax(line_no, indent + 7, "depth must be a non-negative integer"))?;
            depth = Some(d);
            continue;
        }
        let Some((name, rhs)) = body.split_once('=') else {
            return Err(syntax(line_no, indent + 1, "expected `alphabet:`, `depth:` or `name = (cycles)(restrictions)`"));
        };
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(syntax(line_no, indent + 1, format!("bad generator name `{}`", name)));
        }
        if name == "e" {
            return Err(syntax(line_no, indent + 1, "`e` is reserved for the identity"));
        }
        let rhs_col = indent + body.find('=').unwrap() + 2;
        let mut parts = groups(rhs, line_no, rhs_col)?;
        let Some((last, _)) = parts.pop() else {
            return Err(syntax(line_no, rhs_col, "missing restriction tuple"));
        };
        let restrictions: Vec<String> = last.split(',').map(|s| s.trim().to_string()).collect();
        let mut cycles = Vec::new();
        for (i, (c, _)) in parts.iter().enumerate() {
            let mut toks: Vec<String> = c.split_whitespace().map(String::from).collect();
            if i == 0 && toks.first().map(String::as_str) == Some("perm") {
                toks.remove(0);
            }
            cycles.push(toks);
        }
        raw.push(RawGen {
            name: name.to_string(),
            cycles,
            restrictions,
            line: line_no,
        });
    }
    let Some(alphabet) = alphabet else {
        return Err(syntax(1, 1, "missing `alphabet:` line"));
    };
    let d = alphabet.len();
    let names: Vec<String> = raw.iter().map(|g| g.name.clone()).collect();
    let mut generators = Vec::new();
    for g in &raw {
        let mut perm: Vec<usize> = (0..d).collect();
        for cyc in &g.cycles {
            let idx: Vec<usize> = cyc
                .iter()
                .map(|t| {
                    alphabet.iter().position(|a| a == t).ok_or_else(|| Error::UnknownSymbol {
                        symbol: t.clone(),
                        context: format!("the alphabet (generator `{}`, line {})", g.name, g.line),
                    })
                })
                .collect::<Result<_>>()?;
            for (i, &x) in idx.iter().enumerate() {
                if idx[..i].contains(&x) {
                    return Err(Error::InconsistentRecursion(format!(
                        "cycle of `{}` repeats a letter",
                        g.name
                    )));
                }
            }
            // compose: the new cycle acts after the ones read so far
            let mut cyc_map: Vec<usize> = (0..d).collect();
            for (i, &x) in idx.iter().enumerate() {
                cyc_map[x] = idx[(i + 1) % idx.len()];
            }
            perm = perm.iter().map(|&y| cyc_map[y]).collect();
        }
        let restrictions = g
            .restrictions
            .iter()
            .map(|w| parse_word_with(&names, w, &g.name))
            .collect::<Result<Vec<_>>>()?;
        if restrictions.len() != d {
            return Err(Error::InconsistentRecursion(format!(
                "`{}` lists {} restrictions for {} letters",
                g.name,
                restrictions.len(),
                d
            )));
        }
        generators.push(Generator {
            name: g.name.clone(),
            perm,
            restrictions,
        });
    }
    let group = SelfSimilarGroup::new(alphabet, generators)?;
    Ok(match depth {
        Some(d) => group.with_equality_depth(d),
        None => group,
    })
}

fn parse_word_with(names: &[String], text: &str, owner: &str) -> Result<GroupWord> {
    let mut letters = Vec::new();
    for tok in text.split(|c: char| c.is_whitespace() || c == '*' || c == '·') {
        if tok.is_empty() || tok == "e" || tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<i64>()
                    .map_err(|_| Error::Semantic(format!("bad exponent in `{}`", tok)))?,
            ),
            None => (tok, 1),
        };
        let g = names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownSymbol {
            symbol: name.to_string(),
            context: format!("the generators (restriction of `{}`)", owner),
        })?;
        letters.extend(
            std::iter::repeat_n(GroupLetter {
                generator: g,
                inverse: exp < 0,
            }, exp.unsigned_abs() as usize),
        );
    }
    Ok(GroupWord::from_letters(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_text() {
        let g = parse_group("alphabet: 0 1\na = (0 1)(e, a)\n").unwrap();
        assert_eq!(g, SelfSimilarGroup::odometer());
        let g2 = parse_group("alphabet: 0 1\na = (perm 0 1)(e, a)\n").unwrap();
        assert_eq!(g2, g);
    }

    #[test]
    fn forward_references_and_depth() {
        let g = parse_group("alphabet: 0 1\ndepth: 5\nb = (a, c)\nc = (a, d)\nd = (e, b)\na = (0 1)(e, e)\n").unwrap();
        assert_eq!(g.equality_depth(), 5);
        assert_eq!(g.generators().len(), 4);
        assert_eq!(g.generators()[0].perm, vec![0, 1]);
    }

    #[test]
    fn three_cycle() {
        let g = parse_group("alphabet: x y z\nt = (x y z)(t, e, e)").unwrap();
        assert_eq!(g.generators()[0].perm, vec![1, 2, 0]);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_group("alphabet: 0 1\na = (0 2)(e, a)"), Err(Error::UnknownSymbol { .. })));
        assert!(matches!(parse_group("alphabet: 0 1\na = (0 1)(e)"), Err(Error::InconsistentRecursion(_))));
        assert!(matches!(parse_group("alphabet: 0\n"), Err(Error::Semantic(_))));
        assert!(matches!(parse_group("alphabet: 0 1\na (0 1)(e, a)"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_group("alphabet: 0 1\na = (0 1(e, a)"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_group("alphabet: 0 1\na = (0 1)(e, b)"), Err(Error::UnknownSymbol { .. })));
        assert!(matches!(parse_group("alphabet: 0 1\na = (0 0)(e, a)"), Err(Error::InconsistentRecursion(_))));
    }
}
