use std::fmt::Write;

use crate::error::FormatError;
use crate::expsys::{ExpLink, ExpSystem};
use crate::numeric::{ExactComplex, ExpKind};
use crate::poly::{Monomial, Polynomial, PolynomialSystem};

use super::{complex, expect_len, Lines, FORMAT_VERSION};

/// Parses a system file.
///
/// ```text
/// format: 1
/// 1 0          # n polynomials, m links
/// 2            # term count of the first polynomial
/// 2 1 0        # exponents, then re im
/// 0 -2 0
/// ```
///
/// Link lines read `kind src dst re im` with 1-based variable indices.
pub fn parse_system(text: &str) -> Result<ExpSystem, FormatError> {
    let mut lines = Lines::new(text);
    lines.header()?;
    let head = lines.next_line("the `n m` header")?;
    expect_len(&head, 2, "the `n m` header")?;
    let n = head[0].usize()?;
    let m = head[1].usize()?;
    let nvars = n + m;
    let mut polys = Vec::with_capacity(n);
    for index in 0..n {
        let count_line = lines.next_line(&format!("the term count of polynomial {}", index + 1))?;
        expect_len(&count_line, 1, "a term count")?;
        let count = count_line[0].usize()?;
        let mut terms = Vec::with_capacity(count);
        for _ in 0..count {
            let line = lines.next_line("a term")?;
            expect_len(&line, nvars + 2, "a term (exponents then re im)")?;
            let exps = line[..nvars]
                .iter()
                .map(|t| {
                    t.text
                        .parse::<u32>()
                        .map_err(|_| t.error(format!("invalid exponent `{}`", t.text)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            terms.push((complex(&line[nvars], &line[nvars + 1])?, Monomial::new(exps)));
        }
        polys.push(Polynomial::new(nvars, terms)?);
    }
    let mut links = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines.next_line("a link")?;
        expect_len(&line, 5, "a link (kind src dst re im)")?;
        let kind = ExpKind::from_keyword(line[0].text)
            .ok_or_else(|| line[0].error(format!("unknown function `{}`", line[0].text)))?;
        let src = one_based(&line[1])?;
        let dst = one_based(&line[2])?;
        links.push(ExpLink::new(kind, complex(&line[3], &line[4])?, src, dst));
    }
    lines.finish()?;
    Ok(ExpSystem::new(PolynomialSystem::new(nvars, polys)?, links)?)
}

fn one_based(token: &super::Token<'_>) -> Result<usize, FormatError> {
    match token.usize()? {
        0 => Err(token.error("variable indices start at 1")),
        v => Ok(v - 1),
    }
}

fn write_complex(out: &mut String, c: &ExactComplex) {
    write!(out, "{} {}", c.re_part(), c.im_part()).expect("writing to a string");
}

/// Serializes with exact `p/q` coefficients; parsing the output gives back
/// an identical system.
pub fn write_system(system: &ExpSystem) -> String {
    let mut out = format!("format: {FORMAT_VERSION}\n{} {}\n", system.n(), system.m());
    for (i, p) in system.poly().polys().iter().enumerate() {
        writeln!(out, "# polynomial {}", i + 1).unwrap();
        writeln!(out, "{}", p.terms().len()).unwrap();
        for (c, mono) in p.terms() {
            for e in mono.exponents() {
                write!(out, "{e} ").unwrap();
            }
            write_complex(&mut out, c);
            out.push('\n');
        }
    }
    if system.m() > 0 {
        out.push_str("# links: kind src dst re im\n");
    }
    for link in system.links() {
        write!(out, "{} {} {} ", link.kind, link.src + 1, link.dst + 1).unwrap();
        write_complex(&mut out, &link.c);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::SystemError;

    const SQRT2: &str = "format: 1\n# x^2 - 2\n1 0\n2\n2 1 0\n0 -2 0\n";

    #[test]
    fn polynomial_only() {
        let s = parse_system(SQRT2).unwrap();
        assert_eq!((s.n(), s.m(), s.dim()), (1, 0, 1));
        assert_eq!(s.poly().polys()[0].degree(), 2);
    }

    #[test]
    fn link_source_out_of_range() {
        let text = "format: 1\n2 1\n1\n1 0 0 1 0\n1\n0 1 0 1 0\nsin 3 3 1 0\n";
        assert!(matches!(
            parse_system(text),
            Err(FormatError::Validation(SystemError::LinkSource { .. }))
        ));
    }

    #[test]
    fn reports_position() {
        let text = "format: 1\n1 0\n1\n2 x 0\n";
        match parse_system(text) {
            Err(FormatError::Parse { line, column, .. }) => assert_eq!((line, column), (4, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_system("1 0\n"), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse_system("format: 1\n1 0\n2\n2 1 0\n"), Err(FormatError::Parse { .. })));
    }

    #[test]
    fn round_trip() {
        let s = parse_system(SQRT2).unwrap();
        assert_eq!(parse_system(&write_system(&s)).unwrap(), s);
    }
}
