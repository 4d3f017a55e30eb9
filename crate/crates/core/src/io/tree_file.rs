//! Trees given as one leaf path per line, directions separated by dots.

use super::ParseError;
use crate::tree::OrderedTree;

/// Parses lines such as `2.0.5` into the prefix closure of the paths. Blank
/// lines and `#` comments are ignored; a lone `.` denotes the root.
pub fn parse_tree(text: &str) -> Result<OrderedTree<u64>, ParseError> {
    let mut paths = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let offset = line.len() - line.trim_start().len();
        if trimmed == "." {
            paths.push(Vec::new());
            continue;
        }
        let mut path = Vec::new();
        let mut col = offset + 1;
        for part in trimmed.split('.') {
            let d = part
                .parse::<u64>()
                .map_err(|_| ParseError::syntax(i + 1, col, format!("expected a direction, got {part:?}")))?;
            path.push(d);
            col += part.len() + 1;
        }
        paths.push(path);
    }
    OrderedTree::from_paths(paths).map_err(|_| ParseError::semantic(1, 1, "the tree has no paths"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::ErrorKind;

    #[test]
    fn parses_paths() {
        let t = parse_tree("2.0.5\n# comment\n\n 3\n").unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.leaf_count(), 2);
        assert_eq!(parse_tree(".").unwrap().len(), 1);
    }

    #[test]
    fn errors() {
        let e = parse_tree("1.2\n1..3").unwrap_err();
        assert_eq!((e.kind, e.line, e.col), (ErrorKind::Syntax, 2, 3));
        assert_eq!(parse_tree("\n# nothing\n").unwrap_err().kind, ErrorKind::Semantic);
    }
}
