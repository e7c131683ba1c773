use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{commutators, AlgebraError, PresentedAlgebra};
use crate::expr::ParseError;
use crate::field::Field;
use crate::freealg::{Alphabet, FreePoly};
use crate::grobner::DEFAULT_DEGREE_BOUND;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct PresentationError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> PresentationError {
    PresentationError { line, column, message: message.into() }
}

/// Parses the line-oriented presentation format:
///
/// ```text
/// field Q(sqrt(3))
/// gens x:1 y:1
/// graded            # or `filtered`; optional
/// commutative       # optional: adds all commutators
/// rel x*y + y*x
/// ```
///
/// `#` starts a comment. `bound` is the Gröbner degree bound.
pub fn parse_presentation(text: &str, bound: u32) -> Result<PresentedAlgebra, PresentationError> {
    parse_presentation_over(text, bound, None)
}

/// Like [`parse_presentation`], with `field` replacing the file's `field`
/// line when given. Without either, the field is `Q`.
pub fn parse_presentation_over(text: &str, bound: u32, over: Option<Field>) -> Result<PresentedAlgebra, PresentationError> {
    let mut field: Option<Field> = None;
    let mut alph: Option<Arc<Alphabet>> = None;
    let mut graded: Option<bool> = None;
    let mut commutative = false;
    let mut rels: Vec<FreePoly> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed.trim_end(), ""));
        let rest_col = indent + kw.len() + 2 + (rest.len() - rest.trim_start().len());
        let rest = rest.trim();
        match kw {
            "field" => {
                if field.is_some() {
                    return Err(err(line, 1 + indent, "duplicate `field` line"));
                }
                if !rels.is_empty() {
                    return Err(err(line, 1 + indent, "`field` after `rel`"));
                }
                field = Some(Field::parse(rest).map_err(|e| err(line, rest_col, e.to_string()))?);
            }
            "gens" => {
                if alph.is_some() {
                    return Err(err(line, 1 + indent, "duplicate `gens` line"));
                }
                let mut letters = Vec::new();
                for tok in rest.split_whitespace() {
                    let col = rest_col + rest.find(tok).unwrap_or(0);
                    let (name, w) = tok.split_once(':').unwrap_or((tok, "1"));
                    let w: u32 = w.parse().map_err(|_| err(line, col, format!("bad weight in `{tok}`")))?;
                    letters.push((name.to_string(), w));
                }
                if letters.is_empty() {
                    return Err(err(line, rest_col, "no generators"));
                }
                alph = Some(Alphabet::new(letters).map_err(|e| err(line, rest_col, e.to_string()))?);
            }
            "graded" | "filtered" => {
                if graded.is_some() {
                    return Err(err(line, 1 + indent, "grading declared twice"));
                }
                graded = Some(kw == "graded");
            }
            "commutative" => commutative = true,
            "rel" => {
                let f = over.or(field).unwrap_or(Field::Rationals);
                let a = alph.as_ref().ok_or_else(|| err(line, 1 + indent, "`rel` before `gens`"))?;
                let p = FreePoly::parse(rest, a, f).map_err(|e| match e {
                    ParseError::Syntax { col, msg } => err(line, rest_col + col.saturating_sub(1), msg),
                    other => err(line, rest_col, other.to_string()),
                })?;
                if graded == Some(true) && !p.is_homogeneous() {
                    return Err(err(line, rest_col, format!("relation `{p}` is not homogeneous")));
                }
                rels.push(p);
            }
            other => return Err(err(line, 1 + indent, format!("unknown keyword `{other}`"))),
        }
    }
    let field = over.or(field).unwrap_or(Field::Rationals);
    let alph = alph.ok_or_else(|| err(1, 1, "missing `gens` line"))?;
    if commutative {
        let mut all = commutators(&alph, field);
        all.extend(rels);
        rels = all;
    }
    PresentedAlgebra::new(&alph, field, rels, bound).map_err(|e: AlgebraError| err(0, 0, e.to_string()))
}

pub fn parse_presentation_default(text: &str) -> Result<PresentedAlgebra, PresentationError> {
    parse_presentation(text, DEFAULT_DEGREE_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minus_one_plane() {
        let a = parse_presentation_default("field Q\ngens x:1 y:1\nrel x*y + y*x\n").unwrap();
        assert!(a.is_graded());
        assert_eq!(a.hilbert(3).unwrap().coeffs, vec![1, 2, 3, 4]);
        let back = parse_presentation_default(&a.to_presentation()).unwrap();
        assert_eq!(back.relations(), a.relations());
    }

    #[test]
    fn square_roots_and_comments() {
        let text = "# row\nfield Q(sqrt(3))\ngens x:1 y:1\nfiltered\ncommutative\nrel x^2 - (sqrt(3)/2)*y - 1\nrel y^2 - (sqrt(3)/2)*x - 1\n";
        let a = parse_presentation_default(text).unwrap();
        assert_eq!(a.dimension(), Some(4));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_presentation_default("field Q\ngens x:1 y:1\ngraded\nrel x*y - y\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_presentation_default("field Q\ngens x:1 y:1\nrel x*z\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains('z'));
        let e = parse_presentation_default("field Q\ngens x:1\nrel x*(x\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.column >= 5);
        assert!(parse_presentation_default("field K\n").is_err());
        assert!(parse_presentation_default("gens x:1\nrel x^2\nfield Q\n").is_err());
    }

    #[test]
    fn field_override() {
        let text = "gens x:1\nrel x^2 + 1\n";
        assert_eq!(parse_presentation_default(text).unwrap().field(), Field::Rationals);
        let a = parse_presentation_over(&format!("field Q\n{text}"), 12, Some(Field::Prime(5))).unwrap();
        assert_eq!(a.field(), Field::Prime(5));
    }
}
