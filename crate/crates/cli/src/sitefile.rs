//! Plain-text site files: one `x y color` record per line, `#` comments.

use colorvd::{ColoredSiteSet, Metric, Point2, Rational};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SiteFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] colorvd::Error),
}

pub fn parse(text: &str, metric: Metric) -> Result<ColoredSiteSet, SiteFileError> {
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |msg: String| SiteFileError::Syntax { line: i + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(syntax(format!("expected `x y color`, found {} field(s)", fields.len())));
        }
        let x: Rational = fields[0].parse().map_err(|e| syntax(format!("{e}")))?;
        let y: Rational = fields[1].parse().map_err(|e| syntax(format!("{e}")))?;
        let color: usize = fields[2].parse().map_err(|_| syntax(format!("invalid color `{}`", fields[2])))?;
        points.push((Point2::new(x, y), color));
    }
    Ok(ColoredSiteSet::new(points, metric)?)
}

pub fn write(s: &ColoredSiteSet) -> String {
    let mut out = format!("# n = {}, m = {}\n", s.n(), s.m());
    for site in s.sites() {
        out.push_str(&format!("{} {} {}\n", site.position.x, site.position.y, site.color));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_decimals_and_comments() {
        let s = parse("# header\n0 0 0\n\n1/2 -0.25 1\n", Metric::Euclidean).unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(s.pos(1).x, Rational::new(1, 2));
        assert_eq!(s.pos(1).y, Rational::new(-1, 4));
        assert_eq!(parse(&write(&s), Metric::Euclidean).unwrap(), s);
    }

    #[test]
    fn short_line_reports_its_number() {
        let e = parse("0 0 0\n1 2\n", Metric::Euclidean).unwrap_err();
        assert!(e.to_string().starts_with("line 2:"), "{e}");
    }

    #[test]
    fn color_gap_is_invalid() {
        assert!(matches!(parse("0 0 0\n1 1 2\n", Metric::Euclidean), Err(SiteFileError::Invalid(_))));
    }
}
