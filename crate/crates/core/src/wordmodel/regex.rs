//! Regex literals: letters, `1` for `{ε}`, `0` for `∅`, `|` for union, `.`
//! or juxtaposition for concatenation, postfix `*`, and parentheses.
//! Whitespace is ignored.

use super::{RegularLang, WordError};

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    letters: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or_else(|| self.chars.last().map_or(0, |&(i, _)| i + 1), |&(i, _)| i)
    }

    fn fail<T>(&self, msg: &str) -> Result<T, WordError> {
        Err(WordError::Syntax { pos: self.offset(), msg: msg.to_string() })
    }

    fn union(&mut self) -> Result<RegularLang, WordError> {
        let mut acc = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            acc = acc.union(&self.concat()?)?;
        }
        Ok(acc)
    }

    fn starts_atom(c: Option<char>) -> bool {
        matches!(c, Some(c) if c == '(' || c == '0' || c == '1' || c.is_ascii_lowercase())
    }

    fn concat(&mut self) -> Result<RegularLang, WordError> {
        let mut acc = self.starred()?;
        loop {
            if self.peek() == Some('.') {
                self.pos += 1;
            } else if !Self::starts_atom(self.peek()) {
                return Ok(acc);
            }
            acc = acc.concat(&self.starred()?)?;
        }
    }

    fn starred(&mut self) -> Result<RegularLang, WordError> {
        let mut l = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            l = l.star();
        }
        Ok(l)
    }

    fn atom(&mut self) -> Result<RegularLang, WordError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return self.fail("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('0') => {
                self.pos += 1;
                RegularLang::empty(self.letters)
            }
            Some('1') => {
                self.pos += 1;
                RegularLang::epsilon(self.letters)
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                RegularLang::letter(self.letters, c)
            }
            Some(_) => self.fail("unexpected character"),
            None => self.fail("unexpected end of input"),
        }
    }
}

/// Parse a regex literal over the alphabet `letters`.
pub fn parse_regex(regex: &str, letters: &str) -> Result<RegularLang, WordError> {
    RegularLang::empty(letters)?;
    let chars = regex.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { chars, pos: 0, letters };
    let l = p.union()?;
    if p.pos != p.chars.len() {
        return p.fail("trailing input");
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordmodel::lang_equal;

    #[test]
    fn syntax_forms() {
        let dotted = parse_regex("a.b*", "ab").unwrap();
        let juxt = parse_regex(" a b* ", "ab").unwrap();
        assert!(lang_equal(&dotted, &juxt).unwrap());
        assert!(parse_regex("(a|1)(b|0)", "ab").unwrap().accepts("b").unwrap());
        assert!(parse_regex("a**", "ab").unwrap().accepts("aaa").unwrap());
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_regex("(a", "ab"), Err(WordError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_regex("a)", "ab"), Err(WordError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_regex("", "ab"), Err(WordError::Syntax { .. })));
        assert!(matches!(parse_regex("|a", "ab"), Err(WordError::Syntax { pos: 0, .. })));
        assert_eq!(parse_regex("c", "ab"), Err(WordError::UnknownLetter('c')));
        assert!(matches!(parse_regex("a", "aa"), Err(WordError::BadAlphabet(_))));
    }
}
