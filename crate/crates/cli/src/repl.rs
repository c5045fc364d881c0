//! Line-oriented query loop. Commands start with `:`; any other non-blank
//! line is query text, and a blank line (or end of input) runs it.

use std::io::{self, BufRead, Write};
use std::path::Path;

use esparql_core::syntax::Format;
use esparql_core::EvalMode;

use crate::{load_graph, Session};

const HELP: &str = "\
:load <path>                        load a graph file
:mode active-domain|open            choose the evaluation domain
:format table|json-lines|csv        choose the output format
:default on|off                     show or hide the default row
:quit                               leave
A query ends at a blank line.
";

pub fn run<R: BufRead, W: Write>(input: R, mut out: W, session: &mut Session, prompt: bool) -> io::Result<()> {
    let mut pending = String::new();
    let mut lines = input.lines();
    loop {
        if prompt {
            write!(out, "{}", if pending.is_empty() { "esparql> " } else { "    ...> " })?;
            out.flush()?;
        }
        let Some(line) = lines.next().transpose()? else {
            if !pending.trim().is_empty() {
                execute(&mut out, session, &pending)?;
            }
            return Ok(());
        };
        let trimmed = line.trim();
        if pending.is_empty() && trimmed.starts_with(':') {
            if !command(&mut out, session, trimmed)? {
                return Ok(());
            }
        } else if trimmed.is_empty() {
            if !pending.trim().is_empty() {
                execute(&mut out, session, &pending)?;
            }
            pending.clear();
        } else {
            pending.push_str(&line);
            pending.push('\n');
        }
    }
}

fn execute<W: Write>(out: &mut W, session: &Session, text: &str) -> io::Result<()> {
    match session.run(text) {
        Ok(s) => write!(out, "{s}"),
        Err(f) => writeln!(out, "error: {}", f.message),
    }
}

/// Returns false on `:quit`.
fn command<W: Write>(out: &mut W, session: &mut Session, line: &str) -> io::Result<bool> {
    let (name, arg) = match line.split_once(char::is_whitespace) {
        Some((n, a)) => (n, a.trim()),
        None => (line, ""),
    };
    match (name, arg) {
        (":quit" | ":q", _) => return Ok(false),
        (":help", _) => write!(out, "{HELP}")?,
        (":load", path) if !path.is_empty() => match load_graph(Path::new(path)) {
            Ok(g) => {
                writeln!(out, "loaded {} stated triple(s), default {}", g.len(), g.default_value())?;
                session.graph = Some(g);
            }
            Err(f) => writeln!(out, "error: {}", f.message)?,
        },
        (":mode", "active-domain") => session.mode = EvalMode::ActiveDomain,
        (":mode", "open") => session.mode = EvalMode::Open,
        (":format", f) if f.parse::<Format>().is_ok() => session.format = f.parse().expect("checked"),
        (":default", "on") => session.show_default = true,
        (":default", "off") => session.show_default = false,
        _ => writeln!(out, "error: unrecognised command `{line}` (try :help)")?,
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use esparql_core::algebra::DEFAULT_ENUMERATION_LIMIT;
    use esparql_core::fixtures::{self, DATA_BASE};
    use esparql_core::BeliefVocabulary;

    fn session() -> Session {
        let vocab = BeliefVocabulary::default();
        Session {
            graph: Some(fixtures::table1(&vocab)),
            vocab,
            base: DATA_BASE.into(),
            mode: EvalMode::ActiveDomain,
            format: Format::Table,
            show_default: false,
            limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }

    fn transcript(input: &str) -> String {
        let mut out = Vec::new();
        run(input.as_bytes(), &mut out, &mut session(), false).unwrap();
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn blank_line_runs_the_query() {
        let text = transcript("SELECT INFO ?deity FROM BELIEF <PopeDI>\nWHERE { ?deity a <FullDeity> }\n\n");
        assert_eq!(text, "deity | state\n------+------\nJesus | true\n");
    }

    #[test]
    fn commands_change_settings() {
        let text = transcript(":format csv\n:default on\nSELECT INFO ?deity FROM BELIEF <PopeDI> WHERE { ?deity a <FullDeity> }\n");
        assert_eq!(text, "deity,state\nJesus,true\n*,unknown\n");
    }

    #[test]
    fn errors_do_not_end_the_session() {
        let text = transcript("SELECT ?x WHERE {\n\n:bogus\n:quit\nSELECT * WHERE { ?s ?p ?o }\n");
        assert!(text.starts_with("error: query: line"), "{text}");
        assert!(text.contains("unrecognised command"));
        assert_eq!(text.lines().count(), 2);
    }

    #[test]
    fn open_mode_reports_non_finite_results() {
        let mut s = session();
        let mut out = Vec::new();
        let input = format!(":mode open\n{}\n", fixtures::files::MEET_DISJOINT);
        run(input.as_bytes(), &mut out, &mut s, false).unwrap();
        assert!(String::from_utf8(out).unwrap().contains("not finitely supported"));
    }
}
