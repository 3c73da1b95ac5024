//! Corpus files: one job per line in the command-line syntax, `#` comments.

use clap::Parser;

use crate::args::{Cli, Command};
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusJob {
    pub line: usize,
    pub text: String,
    pub command: Command,
}

/// Jobs used by `verify` when no corpus is given: every worked family, a few
/// preset binomials, and the curve example.
pub const BUILTIN: &str = r#"
# single-field families, all parameter values
bound --p 3 --m 3 --poly "x^25 + a*x^4" --sweep a --oracle
bound --p 3 --m 3 --poly "x^19 + a*x^2" --sweep a --oracle
bound --p 3 --m 3 --poly "x^19 + a*x^4" --sweep a --oracle
bound --p 3 --m 3 --poly "x^10 + a*x^5" --sweep a --oracle
bound --p 3 --m 3 --poly "x^16 + a*x" --sweep a --oracle
bound --p 5 --m 2 --poly "x^8 + a*x" --sweep a --oracle
bound --p 3 --m 4 --poly "x^108 + a*x^2" --sweep a --oracle

# preset binomials
bound --p 2 --m 4 --poly "x^13 + a*x^4" --sweep a --oracle
bound --p 2 --m 6 --poly "x^41 + a*x^5" --sweep a --oracle --exhaustive
bound --p 2 --m 6 --poly "x^53 + a*x^25" --sweep a --oracle
bound --p 3 --m 2 --poly "x^7 + a*x" --sweep a --oracle
bound --p 3 --m 4 --poly "x^44 + a*x^28" --sweep a --oracle
bound --p 5 --m 2 --poly "x^19 + a*x^11" --sweep a --oracle
bound --p 5 --m 3 --poly "x^33 + a*x^10" --sweep a --oracle

# other characters, constants, three terms
bound --p 5 --m 2 --poly "x^14 + a*x^10" --sweep a --c g^3 --oracle
bound --p 3 --m 3 --poly "x^25 + a*x^4 + g^7" --sweep a --oracle
bound --p 2 --m 5 --poly "x^27 + g*x^9 + a*x^3" --sweep a --oracle

# Artin-Schreier curves
curve --q 16 --m 2 --poly "x^13 + a*x" --sweep a --oracle --certify
curve --q 3 --m 3 --poly "x^16 + a*x" --sweep a --oracle --certify
"#;

pub fn parse_line(line: usize, text: &str) -> CliResult<Option<CorpusJob>> {
    let words = shlex::split(text).ok_or_else(|| CliError::CorpusLine {
        line,
        msg: "unbalanced quotes".into(),
    })?;
    // shlex keeps `#` words; drop everything from the first one
    let words: Vec<String> = words.into_iter().take_while(|w| !w.starts_with('#')).collect();
    if words.is_empty() {
        return Ok(None);
    }
    let argv = std::iter::once("indexbound".to_string()).chain(words.into_iter().skip_while(|w| w == "indexbound"));
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::CorpusLine {
        line,
        msg: e.to_string().lines().next().unwrap_or("").to_string(),
    })?;
    Ok(Some(CorpusJob {
        line,
        text: text.trim().to_string(),
        command: cli.command,
    }))
}

pub fn parse_corpus(src: &str) -> CliResult<Vec<CorpusJob>> {
    let mut out = Vec::new();
    for (i, text) in src.lines().enumerate() {
        if let Some(job) = parse_line(i + 1, text)? {
            out.push(job);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses() {
        let jobs = parse_corpus(BUILTIN).unwrap();
        assert_eq!(jobs.len(), 19);
        assert!(jobs.iter().all(|j| !matches!(j.command, Command::Verify(_))));
    }

    #[test]
    fn comments_and_errors() {
        assert!(parse_line(1, "   # nothing").unwrap().is_none());
        let j = parse_line(2, "table --preset table1 # trailing").unwrap().unwrap();
        assert!(matches!(j.command, Command::Table(_)));
        assert!(matches!(
            parse_line(3, "bound --p"),
            Err(CliError::CorpusLine { line: 3, .. })
        ));
        assert!(parse_line(4, "bound --poly \"x").is_err());
    }
}
