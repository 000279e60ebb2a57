//! Subcommand bodies. Each returns a [`Report`] holding both renderings and
//! the exit code; `main` only picks one and prints it.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use kgraph_core::{
    abelianization, equal_in_g, group_presentation, injectivity_report, lambda_bar_check, tietze_simplify, Budget,
    Degree, Derivation, EqualityVerdict, Error, GWord, Injectivity, KGraph, LambdaBarOutcome, NormalForm, Skeleton,
    SquareSystem, ValidationReport, VertexId, Witness,
};

use crate::format::{self, KGraphFile, ParseError};

/// Exit code for unreadable, unparsable, or unsuitable input.
pub const EXIT_INPUT: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error("not a k-graph:\n{0}")]
    NotKGraph(String),
    #[error("{0}")]
    Core(Error),
    #[error("{0}")]
    Usage(String),
}

/// A finished command: human text, JSON, and the process exit code.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }
}

pub struct Input {
    pub file: KGraphFile,
}

impl Input {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&path.display().to_string(), &text)
    }

    pub fn parse(path: &str, text: &str) -> Result<Self, CliError> {
        let file = format::parse(text).map_err(|source| CliError::Parse {
            path: path.to_owned(),
            source,
        })?;
        Ok(Input { file })
    }

    pub fn system(&self) -> Result<SquareSystem, CliError> {
        SquareSystem::new(self.file.skeleton.clone(), self.file.squares.clone()).map_err(CliError::Core)
    }

    pub fn kgraph(&self) -> Result<KGraph, CliError> {
        let sys = self.system()?;
        let sk = sys.skeleton().clone();
        KGraph::from_system(sys).map_err(|e| match e {
            Error::Invalid(report) => CliError::NotKGraph(findings_text(&sk, &report)),
            other => CliError::Core(other),
        })
    }
}

fn findings_text(sk: &Skeleton, report: &ValidationReport) -> String {
    report
        .failures
        .iter()
        .map(|f| format!("  {:?}: {}", f.kind(), f.describe(sk)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn vertex(sk: &Skeleton, name: &str) -> Result<VertexId, CliError> {
    sk.vertex(name)
        .ok_or_else(|| CliError::Core(Error::UnknownVertex(name.to_owned())))
}

/// Parses `"1,2"` (spaces allowed) into a degree of the given rank.
pub fn parse_degree(text: &str, rank: usize) -> Result<Degree, CliError> {
    let coords = text
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("bad degree `{text}`: expected comma-separated naturals")))?;
    if coords.len() != rank {
        return Err(CliError::Core(Error::RankMismatch {
            expected: rank,
            got: coords.len(),
        }));
    }
    Ok(Degree::new(coords))
}

fn sole_vertex(sk: &Skeleton) -> Option<VertexId> {
    (sk.vertex_count() == 1).then(|| sk.vertices().next().expect("one vertex"))
}

/// Parses two words for comparison. An empty word is anchored at the range
/// of the other word, or at the only vertex.
pub fn parse_word_pair(sk: &Skeleton, w1: &str, w2: &str) -> Result<(GWord, GWord), CliError> {
    let parse = |t: &str, anchor| GWord::parse(sk, t, anchor).map_err(CliError::Core);
    let need_anchor = |t: &str| t.trim().is_empty();
    match (need_anchor(w1), need_anchor(w2)) {
        (false, false) => Ok((parse(w1, None)?, parse(w2, None)?)),
        (true, false) => {
            let b = parse(w2, None)?;
            Ok((GWord::empty(b.range()), b))
        }
        (false, true) => {
            let a = parse(w1, None)?;
            let b = GWord::empty(a.range());
            Ok((a, b))
        }
        (true, true) => {
            let v = sole_vertex(sk).ok_or(CliError::Core(Error::MissingAnchor))?;
            Ok((GWord::empty(v), GWord::empty(v)))
        }
    }
}

fn degree_json(d: &Degree) -> Value {
    json!(d.coords())
}

fn words_json(sk: &Skeleton, d: &Derivation) -> Value {
    json!(d.words().map(|w| w.display(sk).to_string()).collect::<Vec<_>>())
}

fn witness_json(sk: &Skeleton, w: &Witness) -> Value {
    let (a, b) = w.values(sk);
    json!({ "invariant": w.name(), "first": a, "second": b })
}

fn witness_text(sk: &Skeleton, w: &Witness) -> String {
    let (a, b) = w.values(sk);
    format!("{}: {a} vs {b}", w.name())
}

pub fn validate(input: &Input) -> Result<Report, CliError> {
    let sys = input.system()?;
    let sk = sys.skeleton();
    let report = sys.validate();
    let findings: Vec<Value> = report
        .failures
        .iter()
        .map(|f| json!({ "kind": format!("{:?}", f.kind()), "message": f.describe(sk) }))
        .collect();
    let json = json!({ "valid": report.is_ok(), "findings": findings });
    let text = if report.is_ok() {
        format!(
            "valid {}-graph: {} vertices, {} edges, {} squares",
            sk.rank(),
            sk.vertex_count(),
            sk.edge_count(),
            sys.squares().len()
        )
    } else {
        format!(
            "invalid: {} finding(s)\n{}",
            report.failures.len(),
            findings_text(sk, &report)
        )
    };
    Ok(Report {
        text,
        json,
        code: if report.is_ok() { 0 } else { 1 },
    })
}

pub fn hom(input: &Input, from: &str, to: &str, degree: &str) -> Result<Report, CliError> {
    let kg = input.kgraph()?;
    let sk = kg.skeleton();
    let (v, u) = (vertex(sk, from)?, vertex(sk, to)?);
    let n = parse_degree(degree, sk.rank())?;
    let elems = kg.hom(u, v, &n).map_err(CliError::Core)?;
    let names: Vec<String> = elems.iter().map(|nf| nf.display(sk).to_string()).collect();
    let json = json!({ "from": from, "to": to, "degree": degree_json(&n), "elements": names });
    Ok(Report::ok(names.join("\n"), json))
}

pub fn normalize(input: &Input, word: &str) -> Result<Report, CliError> {
    let kg = input.kgraph()?;
    let sk = kg.skeleton();
    let names: Vec<&str> = word.split_whitespace().collect();
    if names.is_empty() {
        return Err(CliError::Usage("normalize needs a non-empty path".into()));
    }
    let path = sk.path(&names).map_err(CliError::Core)?;
    let nf = kg.normalize(&path);
    let text = nf.display(sk).to_string();
    let json = json!({
        "word": names.join(" "),
        "normal_form": text,
        "degree": degree_json(nf.degree()),
    });
    Ok(Report::ok(text, json))
}

pub fn equal(input: &Input, w1: &str, w2: &str, budget: Budget, show_derivation: bool) -> Result<Report, CliError> {
    let sys = input.system()?;
    let sk = sys.skeleton();
    let (a, b) = parse_word_pair(sk, w1, w2)?;
    let verdict = equal_in_g(&sys, &a, &b, budget);
    Ok(equality_report(sk, &verdict, show_derivation))
}

fn equality_report(sk: &Skeleton, verdict: &EqualityVerdict, show_derivation: bool) -> Report {
    match verdict {
        EqualityVerdict::Equal(d) => {
            let mut text = format!("equal ({} moves)", d.move_count());
            if show_derivation {
                text += &format!("\n{}", d.display(sk));
            }
            let json = json!({ "verdict": "equal", "moves": d.move_count(), "derivation": words_json(sk, d) });
            Report { text, json, code: 0 }
        }
        EqualityVerdict::Distinct(w) => Report {
            text: format!("distinct by {}", witness_text(sk, w)),
            json: json!({ "verdict": "distinct", "witness": witness_json(sk, w) }),
            code: 1,
        },
        EqualityVerdict::Unknown(spent) => Report {
            text: format!("unknown: searched {spent}"),
            json: json!({ "verdict": "unknown", "nodes": spent.nodes, "max_len": spent.max_len }),
            code: 2,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pi1View {
    Presentation,
    Tietze,
    Abelianization,
}

pub fn pi1(input: &Input, base: Option<&str>, view: Pi1View) -> Result<Report, CliError> {
    let sys = input.system()?;
    let sk = sys.skeleton();
    let base = match base {
        Some(name) => vertex(sk, name)?,
        None => sk
            .vertices()
            .min_by_key(|&v| sk.vertex_name(v))
            .ok_or_else(|| CliError::Usage("the graph has no vertices".into()))?,
    };
    let p = group_presentation(&sys, base).map_err(CliError::Core)?;
    let presentation_json = |p: &kgraph_core::GroupPresentation| {
        json!({
            "base": sk.vertex_name(base),
            "generators": p.generators,
            "relators": p.relators.iter().map(|r| p.relator_text(r)).collect::<Vec<_>>(),
        })
    };
    Ok(match view {
        Pi1View::Presentation => Report::ok(p.to_string(), presentation_json(&p)),
        Pi1View::Tietze => {
            let t = tietze_simplify(&p);
            Report::ok(t.to_string(), presentation_json(&t))
        }
        Pi1View::Abelianization => {
            let ab = abelianization(&p);
            let json = json!({
                "free_rank": ab.free_rank,
                "torsion": ab.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            });
            Report::ok(ab.to_string(), json)
        }
    })
}

fn nf_text(sk: &Skeleton, nf: &NormalForm) -> String {
    nf.display(sk).to_string()
}

pub fn injectivity(input: &Input, max_degree: &str, budget: Budget) -> Result<Report, CliError> {
    let kg = input.kgraph()?;
    let sk = kg.skeleton();
    let bound = parse_degree(max_degree, sk.rank())?;
    let report = injectivity_report(&kg, &bound, budget).map_err(CliError::Core)?;
    let p = report.pairs;
    let pairs_text = format!(
        "pairs: {} total, {} equal, {} distinct, {} unknown",
        p.total, p.equal, p.distinct, p.unknown
    );
    let pairs_json = json!({ "total": p.total, "equal": p.equal, "distinct": p.distinct, "unknown": p.unknown });
    let (text, detail, code) = match &report.summary {
        Injectivity::InjectiveWithinBound => (format!("injective within bound {bound}"), Value::Null, 0),
        Injectivity::NonInjective {
            first,
            second,
            derivation,
        } => (
            format!(
                "non-injective: {} = {}\nderivation: {}",
                nf_text(sk, first),
                nf_text(sk, second),
                derivation.display(sk)
            ),
            json!({
                "first": nf_text(sk, first),
                "second": nf_text(sk, second),
                "moves": derivation.move_count(),
                "derivation": words_json(sk, derivation),
            }),
            1,
        ),
        Injectivity::Inconclusive { unknown } => {
            let mut text = format!("inconclusive within bound {bound}: {} undecided pair(s)", unknown.len());
            for u in unknown {
                text += &format!(
                    "\n  {} vs {} ({})",
                    nf_text(sk, &u.first),
                    nf_text(sk, &u.second),
                    u.spent
                );
            }
            let pairs: Vec<Value> = unknown
                .iter()
                .map(|u| json!({ "first": nf_text(sk, &u.first), "second": nf_text(sk, &u.second) }))
                .collect();
            (text, json!({ "unknown": pairs }), 2)
        }
    };
    let json = json!({
        "bound": degree_json(&bound),
        "result": report.summary.label(),
        "pairs": pairs_json,
        "detail": detail,
    });
    Ok(Report {
        text: format!("{text}\n{pairs_text}"),
        json,
        code,
    })
}

pub fn lambda_bar(input: &Input, max_degree: &str, budget: Budget) -> Result<Report, CliError> {
    let kg = input.kgraph()?;
    let sk = kg.skeleton();
    let bound = parse_degree(max_degree, sk.rank())?;
    let report = lambda_bar_check(&kg, &bound, budget).map_err(CliError::Core)?;
    let mut classes = Vec::new();
    let mut text = String::new();
    for (g, c) in report.classes.collapsed() {
        let members: Vec<String> = c.members.iter().map(|&m| nf_text(sk, &g.elements[m])).collect();
        text += &format!(
            "class {} {} <- {}: {{{}}}\n",
            g.degree,
            sk.vertex_name(g.range),
            sk.vertex_name(g.source),
            members.join(", ")
        );
        classes.push(json!({
            "degree": degree_json(&g.degree),
            "range": sk.vertex_name(g.range),
            "source": sk.vertex_name(g.source),
            "members": members,
        }));
    }
    text += &format!("checked {} factor pairs\n", report.checked);
    let label = report.outcome.label();
    let (detail, code) = match &report.outcome {
        LambdaBarOutcome::HoldsWithinBound => {
            text += &format!("{label} {bound}");
            (Value::Null, 0)
        }
        LambdaBarOutcome::Counterexample(w) => {
            let side = format!("{:?}", w.side).to_lowercase();
            text += &format!(
                "{label}: {} = {} but their {side} factors of degree {} differ: {} vs {} ({})",
                nf_text(sk, &w.alpha),
                nf_text(sk, &w.beta),
                w.m,
                nf_text(sk, &w.gamma),
                nf_text(sk, &w.epsilon),
                witness_text(sk, &w.witness)
            );
            let detail = json!({
                "alpha": nf_text(sk, &w.alpha),
                "beta": nf_text(sk, &w.beta),
                "m": degree_json(&w.m),
                "side": side,
                "gamma": nf_text(sk, &w.gamma),
                "epsilon": nf_text(sk, &w.epsilon),
                "witness": witness_json(sk, &w.witness),
                "derivation": words_json(sk, &w.derivation),
            });
            (detail, 1)
        }
        LambdaBarOutcome::Inconclusive(unknown) => {
            text += &format!("{label} {bound}: {} undecided pair(s)", unknown.len());
            let pairs: Vec<Value> = unknown
                .iter()
                .map(|u| json!({ "first": nf_text(sk, &u.first), "second": nf_text(sk, &u.second) }))
                .collect();
            (json!({ "unknown": pairs }), 2)
        }
    };
    let json = json!({
        "bound": degree_json(&bound),
        "result": label,
        "classes": classes,
        "checked": report.checked,
        "detail": detail,
    });
    Ok(Report { text, json, code })
}

pub fn components(input: &Input) -> Result<Report, CliError> {
    let kg = input.kgraph()?;
    let mut text = String::new();
    let mut list = Vec::new();
    for color in 1..=kg.rank() {
        let c = kg.component_1graph(color).map_err(CliError::Core)?;
        let body = format::print(c.skeleton(), c.squares());
        text += &format!("# color {color}\n{body}");
        list.push(json!({ "color": color, "kg": body }));
    }
    Ok(Report::ok(text.trim_end().to_owned(), json!({ "components": list })))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Complex,
}

pub fn export(input: &Input, fmt: ExportFormat) -> Result<Report, CliError> {
    let sys = input.system()?;
    Ok(match fmt {
        ExportFormat::Dot => {
            let dot = sys.skeleton().to_dot();
            Report::ok(dot.trim_end().to_owned(), json!({ "dot": dot }))
        }
        ExportFormat::Complex => {
            let c = crate::export::complex(&sys);
            Report::ok(serde_json::to_string_pretty(&c).expect("json"), c)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SINGLE: &str = include_str!("../fixtures/single_vertex.kg");

    fn input() -> Input {
        Input::parse("single.kg", SINGLE).unwrap()
    }

    #[test]
    fn validate_single_vertex() {
        let r = validate(&input()).unwrap();
        assert_eq!(r.code, 0, "{}", r.text);
        assert_eq!(r.json["valid"], json!(true));
    }

    #[test]
    fn equal_exit_codes() {
        assert_eq!(equal(&input(), "a", "b", Budget::default(), false).unwrap().code, 0);
        assert_eq!(equal(&input(), "a", "d", Budget::default(), false).unwrap().code, 1);
        let r = equal(&input(), "a d", "", Budget::default(), false).unwrap();
        assert_eq!(r.code, 1);
        assert_eq!(r.json["witness"]["invariant"], json!("degree"));
    }

    #[test]
    fn degree_parsing() {
        assert_eq!(parse_degree(" 1, 2", 2).unwrap(), Degree::new(vec![1, 2]));
        assert!(matches!(
            parse_degree("1", 2),
            Err(CliError::Core(Error::RankMismatch { .. }))
        ));
        assert!(matches!(parse_degree("1,x", 2), Err(CliError::Usage(_))));
    }

    #[test]
    fn hom_lists_elements() {
        let r = hom(&input(), "v", "v", "1,1").unwrap();
        assert_eq!(r.text.lines().count(), 6);
    }

    #[test]
    fn invalid_kgraph_is_rejected() {
        let broken = SINGLE.replace("square b d = e c\n", "");
        let i = Input::parse("x.kg", &broken).unwrap();
        assert!(matches!(hom(&i, "v", "v", "1,1"), Err(CliError::NotKGraph(_))));
        assert_eq!(validate(&i).unwrap().code, 1);
    }
}
