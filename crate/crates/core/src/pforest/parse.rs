use super::forest::{is_label, Decoration, DecorationSet, Forest, Tree};
use crate::error::{Error, Result};

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    decorations: &'a DecorationSet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", b as char)))
        }
    }

    fn label(&mut self) -> Result<Decoration> {
        let start = self.pos;
        if self.peek() == Some(b'*') {
            self.pos += 1;
        } else {
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                self.pos += 1;
            }
        }
        let label = &self.text[start..self.pos];
        if label.is_empty() || !is_label(label) {
            self.pos = start;
            return Err(self.error("expected a decoration label"));
        }
        self.decorations
            .get(label)
            .cloned()
            .ok_or_else(|| Error::UnknownDecoration(label.to_string()))
    }

    fn tree(&mut self) -> Result<Tree> {
        let d = self.label()?;
        let mut children = Vec::new();
        if self.peek() == Some(b'[') {
            self.pos += 1;
            children.push(self.tree()?);
            while self.peek() == Some(b',') {
                self.pos += 1;
                children.push(self.tree()?);
            }
            self.expect(b']')?;
        }
        Ok(Tree::new(d, children))
    }

    fn forest(&mut self) -> Result<Forest> {
        let mut trees = vec![self.tree()?];
        while self.peek() == Some(b' ') {
            self.pos += 1;
            trees.push(self.tree()?);
        }
        if self.pos != self.text.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(Forest::new(trees))
    }
}

/// Parses `forest := tree (' ' tree)*`, `tree := label ('[' tree (',' tree)* ']')?`.
/// The text `1` denotes the empty forest.
pub fn parse_forest(text: &str, decorations: &DecorationSet) -> Result<Forest> {
    if text == "1" {
        return Ok(Forest::unit());
    }
    if text.is_empty() {
        return Err(Error::Syntax { offset: 0, message: "empty input".into() });
    }
    Parser { text, pos: 0, decorations }.forest()
}

pub fn render_forest(f: &Forest) -> String {
    f.code().to_string()
}

/// Default degree of a label: `p<n>_<i>` has degree `n`, everything else degree one.
pub fn default_degree(label: &str) -> usize {
    label
        .strip_prefix('p')
        .and_then(|rest| rest.split_once('_'))
        .and_then(|(n, i)| {
            let ok = !i.is_empty() && i.bytes().all(|b| b.is_ascii_digit());
            ok.then(|| n.parse::<usize>().ok()).flatten()
        })
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

impl DecorationSet {
    /// Collects every label occurring in `text` with its default degree, in order of
    /// first appearance.
    pub fn infer_from(text: &str) -> DecorationSet {
        let mut set = DecorationSet::empty();
        let mut add = |label: &str| {
            if set.get(label).is_none() {
                if let Ok(d) = Decoration::new(label, default_degree(label)) {
                    let _ = set.push(d);
                }
            }
        };
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == b'*' {
                add("*");
                i += 1;
            } else if bytes[i].is_ascii_alphabetic() || bytes[i] == b'_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                add(&text[start..i]);
            } else {
                i += 1;
            }
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> DecorationSet {
        DecorationSet::from_pairs(&[("a", 1), ("b", 1), ("c", 1), ("d", 1)]).unwrap()
    }

    #[test]
    fn parses_nested_tree() {
        let f = parse_forest("a[b,c[d]]", &abc()).unwrap();
        assert_eq!(f.roots(), 1);
        let t = &f.trees()[0];
        assert_eq!(t.decoration().label(), "a");
        assert_eq!(t.children().len(), 2);
        assert_eq!(t.children()[0].decoration().label(), "b");
        assert_eq!(t.children()[1].children()[0].decoration().label(), "d");
        assert_eq!(render_forest(&f), "a[b,c[d]]");
    }

    #[test]
    fn parses_forest_and_unit() {
        let f = parse_forest("a b", &abc()).unwrap();
        assert_eq!(f.roots(), 2);
        assert!(parse_forest("1", &abc()).unwrap().is_unit());
    }

    #[test]
    fn reports_offsets() {
        assert_eq!(
            parse_forest("a[", &abc()),
            Err(Error::Syntax { offset: 2, message: "expected a decoration label".into() })
        );
        assert!(matches!(parse_forest("a[b", &abc()), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_forest("a  b", &abc()), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_forest("a b ", &abc()), Err(Error::Syntax { offset: 4, .. })));
        assert_eq!(parse_forest("z", &abc()), Err(Error::UnknownDecoration("z".into())));
    }

    #[test]
    fn default_degrees() {
        assert_eq!(default_degree("p3_1"), 3);
        assert_eq!(default_degree("p12_40"), 12);
        assert_eq!(default_degree("p"), 1);
        assert_eq!(default_degree("px_1"), 1);
        let d = DecorationSet::infer_from("p3_1[*] a");
        assert_eq!(d.len(), 3);
        assert_eq!(d.get("p3_1").unwrap().degree(), 3);
    }
}
