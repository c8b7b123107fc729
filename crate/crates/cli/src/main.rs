//! `shiftspace` command-line front end.
//!
//! Exit codes: 0 for success or a true verdict, 1 for a false verdict or a
//! produced witness, 2 for input errors.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use shiftspace::block_code::{RuleFile, SlidingBlockCode};
use shiftspace::bridge::{
    inverse_limit_projection_gap, lift_space, project, project_space, projection_lift_gap,
    BridgeError, InverseLimit, LiftCase, OneSpace, ProjectionCase,
};
use shiftspace::higher_block::{hb_encode, to_edge_shift, HigherBlockSpace};
use shiftspace::space::{
    equal_spaces, is_minimal, minimalize, Classification, Equality, Parent, Space, Witness,
};
use shiftspace::spec_file::{LoadedSpace, SpecFile};
use shiftspace::text::{
    fmt_one_point, fmt_pattern, fmt_point, fmt_ray, parse_one_point, parse_point, Style,
};
use shiftspace::{BiPoint, Cell, Letter};
use std::io::{BufRead, IsTerminal};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "shiftspace",
    version,
    about = "Shift spaces over countable alphabets with an empty point"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Points {
    /// A point such as "(01)^- . 1 (0)^+"; read one per line from stdin when absent.
    #[arg(long = "point")]
    points: Vec<String>,
}

#[derive(Args)]
struct Bounds {
    /// Enumerate letters below this bound; defaults to the mentioned letters plus one fresh letter.
    #[arg(long)]
    cutoff: Option<Letter>,
    /// Largest word length or ray size searched.
    #[arg(long, default_value_t = 3)]
    n_budget: usize,
}

#[derive(Subcommand)]
enum Verb {
    /// Canonical form, length and shifts of points.
    PointEval {
        #[command(flatten)]
        points: Points,
        /// Also print the point shifted by this amount.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i64>,
    },
    /// Membership of points in a space.
    SpaceCheck {
        spec: PathBuf,
        #[command(flatten)]
        points: Points,
    },
    /// Words of length `n` in the language.
    SpaceBlocks {
        spec: PathBuf,
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
        #[arg(long)]
        cutoff: Option<Letter>,
    },
    /// An equivalent minimal forbidden set.
    SpaceMinimalize { spec: PathBuf },
    /// Row and column finiteness, step and finite type.
    SpaceClassify { spec: PathBuf },
    /// Bounded comparison of two spaces.
    SpaceEqual {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Images of points under a sliding block code.
    CodeApply {
        rules: PathBuf,
        #[command(flatten)]
        points: Points,
    },
    /// Sufficient continuity check of a sliding block code.
    CodeCheck { rules: PathBuf },
    /// The `M`-block recoding of a space.
    Recode {
        spec: PathBuf,
        #[arg(short = 'M')]
        m: usize,
        #[command(flatten)]
        points: OptionalPoints,
    },
    /// The edge graph of an `M`-step space.
    EdgeBuild {
        spec: PathBuf,
        #[arg(short = 'M')]
        m: usize,
        #[arg(long)]
        cutoff: Option<Letter>,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// One-sided projection of a space or of points.
    BridgeProject {
        spec: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        points: OptionalPoints,
    },
    /// Two-sided lift of a one-sided space.
    BridgeLift {
        spec: PathBuf,
        #[arg(long)]
        cutoff: Option<Letter>,
        /// One-sided points such as "1 . (0)^+" to test against the lift.
        #[arg(long = "point")]
        points: Vec<String>,
    },
}

#[derive(Args)]
struct OptionalPoints {
    /// Points to transform; stdin is not read.
    #[arg(long = "point")]
    points: Vec<String>,
}

/// An input problem, reported with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Run = Result<(Report, bool), InputError>;

/// Text lines and the JSON form of one command's result.
struct Report {
    text: Vec<String>,
    json: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok((report, verdict)) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("values serialize")
                );
            } else {
                for line in report.text {
                    println!("{line}");
                }
            }
            ExitCode::from(if verdict { 0 } else { 1 })
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_spec(path: &PathBuf) -> Result<SpecFile, InputError> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    SpecFile::parse(&s).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn plain_space(path: &PathBuf) -> Result<Space, InputError> {
    match read_spec(path)?.load()? {
        LoadedSpace::Plain(s) => Ok(s),
        LoadedSpace::Recoded(_) => Err(InputError(format!(
            "{}: expected a plain spec, found a recoded one",
            path.display()
        ))),
    }
}

fn point_strings(points: Points) -> Result<Vec<String>, InputError> {
    if !points.points.is_empty() {
        return Ok(points.points);
    }
    let stdin = std::io::stdin();
    if stdin.is_terminal() {
        return Err(InputError(
            "no points: pass --point or pipe one point per line".into(),
        ));
    }
    let mut out = Vec::new();
    for line in stdin.lock().lines() {
        let line = line?;
        let line = line.trim();
        if !line.is_empty() && !line.starts_with('#') {
            out.push(line.to_string());
        }
    }
    Ok(out)
}

fn parse_points(ss: &[String]) -> Result<Vec<BiPoint>, InputError> {
    ss.iter()
        .map(|s| parse_point(s).map_err(|e| InputError(format!("point {s:?}: {e}"))))
        .collect()
}

fn default_cutoff(space: &Space, cutoff: Option<Letter>) -> Result<Letter, InputError> {
    let c = cutoff.unwrap_or(space.mentioned().iter().next_back().map_or(1, |m| m + 2));
    space.check_cutoff(c)?;
    Ok(c)
}

fn classification_json(c: &Classification) -> Value {
    json!({
        "row_finite": c.row_finite,
        "column_finite": c.column_finite,
        "m_step": c.m_step,
        "finite_type": c.finite_type,
    })
}

fn classification_text(c: &Classification) -> Vec<String> {
    vec![
        format!("row_finite: {}", c.row_finite),
        format!("column_finite: {}", c.column_finite),
        format!(
            "m_step: {}",
            c.m_step.map_or("none".to_string(), |m| m.to_string())
        ),
        format!("finite_type: {}", c.finite_type),
    ]
}

fn spec_json(f: &SpecFile) -> Value {
    serde_json::to_value(f).expect("plain data serializes")
}

fn run(verb: Verb) -> Run {
    match verb {
        Verb::PointEval { points, shift } => {
            point_eval(&parse_points(&point_strings(points)?)?, shift)
        }
        Verb::SpaceCheck { spec, points } => space_check(&spec, &point_strings(points)?),
        Verb::SpaceBlocks { spec, n, cutoff } => space_blocks(&spec, n, cutoff),
        Verb::SpaceMinimalize { spec } => space_minimalize(&spec),
        Verb::SpaceClassify { spec } => space_classify(&spec),
        Verb::SpaceEqual { a, b, bounds } => space_equal(&a, &b, &bounds),
        Verb::CodeApply { rules, points } => {
            code_apply(&rules, &parse_points(&point_strings(points)?)?)
        }
        Verb::CodeCheck { rules } => code_check(&rules),
        Verb::Recode { spec, m, points } => recode(&spec, m, &parse_points(&points.points)?),
        Verb::EdgeBuild {
            spec,
            m,
            cutoff,
            dot,
        } => edge_build(&spec, m, cutoff, dot),
        Verb::BridgeProject {
            spec,
            bounds,
            points,
        } => bridge_project(&spec, &bounds, &parse_points(&points.points)?),
        Verb::BridgeLift {
            spec,
            cutoff,
            points,
        } => bridge_lift(&spec, cutoff, &points),
    }
}

fn point_eval(xs: &[BiPoint], shift: Option<i64>) -> Run {
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for x in xs {
        let shifted = shift.map(|n| fmt_point(&x.shift(n)));
        text.push(format!("{}  length {}", fmt_point(x), x.length()));
        if let (Some(n), Some(s)) = (shift, &shifted) {
            text.push(format!("  shift {n}: {s}"));
        }
        rows.push(
            json!({ "point": fmt_point(x), "length": x.length().to_string(), "shifted": shifted }),
        );
    }
    Ok((
        Report {
            text,
            json: json!({ "points": rows }),
        },
        true,
    ))
}

fn space_check(path: &PathBuf, points: &[String]) -> Run {
    let loaded = read_spec(path)?.load()?;
    let xs = parse_points(points)?;
    let mut all = true;
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for x in &xs {
        let member = match &loaded {
            LoadedSpace::Plain(s) => s.contains(x),
            LoadedSpace::Recoded(h) => h.contains(x),
        };
        all &= member;
        let verdict = if member { "member" } else { "not a member" };
        text.push(if xs.len() == 1 {
            verdict.to_string()
        } else {
            format!("{}: {verdict}", fmt_point(x))
        });
        rows.push(json!({ "point": fmt_point(x), "member": member }));
    }
    Ok((
        Report {
            text,
            json: json!({ "points": rows, "all_members": all }),
        },
        all,
    ))
}

fn space_blocks(path: &PathBuf, n: usize, cutoff: Option<Letter>) -> Run {
    let (blocks, style): (Vec<Vec<Cell>>, Style) = match read_spec(path)?.load()? {
        LoadedSpace::Plain(s) => {
            let c = default_cutoff(&s, cutoff)?;
            (s.blocks(n, c)?, Style::Plain)
        }
        LoadedSpace::Recoded(h) => {
            let c = default_cutoff(h.base(), cutoff)?;
            (h.blocks(n, c)?, Style::Block(h.block_size()))
        }
    };
    let words: Vec<String> = blocks.iter().map(|w| style.word(w)).collect();
    let mut text = vec![format!("{} blocks of length {n}", words.len())];
    text.extend(words.iter().cloned());
    Ok((
        Report {
            text,
            json: json!({ "n": n, "count": words.len(), "blocks": words }),
        },
        true,
    ))
}

fn parent_text(p: &Parent) -> String {
    match p {
        Parent::Word(w) => format!("word {}", fmt_pattern(w)),
        Parent::Tail(r) => format!("tail {}", fmt_ray(r)),
        Parent::DisallowedTail => "tails outside the allowlist".to_string(),
    }
}

fn space_minimalize(path: &PathBuf) -> Run {
    let space = plain_space(path)?;
    let witness = is_minimal(&space)?;
    let out = SpecFile::from_forbidden(&minimalize(&space)?);
    let text = out.to_json().lines().map(str::to_string).collect();
    let witness_json = witness.as_ref().map(
        |w| json!({ "word": Style::Plain.compact(&w.word), "parent": parent_text(&w.parent) }),
    );
    let json = json!({ "input_minimal": witness.is_none(), "witness": witness_json, "spec": spec_json(&out) });
    Ok((Report { text, json }, true))
}

fn space_classify(path: &PathBuf) -> Run {
    let (c, nonempty, infinite) = match read_spec(path)?.load()? {
        LoadedSpace::Plain(s) => (s.classify(), s.inf_nonempty(), s.inf_infinite()),
        LoadedSpace::Recoded(h) => (
            h.classify(),
            h.base().inf_nonempty(),
            h.base().inf_infinite(),
        ),
    };
    let mut text = classification_text(&c);
    text.push(format!("infinite_points_nonempty: {nonempty}"));
    text.push(format!("infinite_points_infinite: {infinite}"));
    let mut json = classification_json(&c);
    json["infinite_points_nonempty"] = json!(nonempty);
    json["infinite_points_infinite"] = json!(infinite);
    Ok((Report { text, json }, true))
}

fn space_equal(a: &PathBuf, b: &PathBuf, bounds: &Bounds) -> Run {
    let (sa, sb) = (plain_space(a)?, plain_space(b)?);
    let cutoff = match bounds.cutoff {
        Some(c) => c,
        None => default_cutoff(&sa, None)?.max(default_cutoff(&sb, None)?),
    };
    let (text, json, equal) = match equal_spaces(&sa, &sb, bounds.n_budget, cutoff)? {
        Equality::EqualUpToBudget => (
            format!("equal up to n = {}, cutoff {cutoff}", bounds.n_budget),
            json!({ "equal": true, "witness": null }),
            true,
        ),
        Equality::Differ(w) => {
            let w = match w {
                Witness::Word(w) => format!("word {}", Style::Plain.word(&w)),
                Witness::Ray(r) => format!("ray {}", fmt_ray(&r)),
            };
            (
                format!("differ: {w}"),
                json!({ "equal": false, "witness": w }),
                false,
            )
        }
    };
    Ok((
        Report {
            text: vec![text],
            json,
        },
        equal,
    ))
}

fn read_code(path: &PathBuf) -> Result<SlidingBlockCode, InputError> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let r: RuleFile =
        serde_json::from_str(&s).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    SlidingBlockCode::from_rule_file(&r).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn code_apply(path: &PathBuf, xs: &[BiPoint]) -> Run {
    let f = read_code(path)?;
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for x in xs {
        let y = f.apply(x)?;
        text.push(format!("{} -> {}", fmt_point(x), fmt_point(&y)));
        rows.push(json!({ "point": fmt_point(x), "image": fmt_point(&y) }));
    }
    Ok((
        Report {
            text,
            json: json!({ "images": rows }),
        },
        true,
    ))
}

fn code_check(path: &PathBuf) -> Run {
    let f = read_code(path)?;
    let c = f.check_continuity();
    let on_empty = Style::Plain.cell(f.on_empty());
    let mut text = vec![
        format!("memory {}, anticipation {}", f.memory(), f.anticipation()),
        format!(
            "image of the empty point: {}",
            if f.on_empty().is_none() {
                "@".to_string()
            } else {
                format!("({on_empty})^- . ({on_empty})^+")
            }
        ),
    ];
    text.push(match (&c.reason, c.right_end) {
        (None, Some(l)) => format!("continuity criterion holds with right end {l}"),
        (None, None) => "continuity criterion holds".to_string(),
        (Some(r), _) => format!("continuity criterion fails: {r}"),
    });
    let json = json!({
        "memory": f.memory(),
        "anticipation": f.anticipation(),
        "empty_maps_to_empty": f.on_empty().is_none(),
        "passes": c.passes,
        "reason": c.reason,
        "right_end": c.right_end,
    });
    Ok((Report { text, json }, c.passes))
}

fn recode(path: &PathBuf, m: usize, xs: &[BiPoint]) -> Run {
    let h = HigherBlockSpace::new(m, plain_space(path)?)?;
    let out = SpecFile::recoded(&h);
    let c = h.classify();
    let mut text: Vec<String> = out.to_json().lines().map(str::to_string).collect();
    text.extend(classification_text(&c));
    let mut rows = Vec::new();
    for x in xs {
        let y = hb_encode(m, x)?;
        let s = Style::Block(m).point(&y);
        text.push(format!("{} -> {s}", fmt_point(x)));
        rows.push(json!({ "point": fmt_point(x), "image": s }));
    }
    let json = json!({ "spec": spec_json(&out), "classification": classification_json(&c), "images": rows });
    Ok((Report { text, json }, true))
}

fn edge_build(path: &PathBuf, m: usize, cutoff: Option<Letter>, dot: bool) -> Run {
    let space = plain_space(path)?;
    let c = default_cutoff(&space, cutoff)?;
    let g = to_edge_shift(&space, m, c)?;
    let compact = |w: &Vec<Letter>| Style::Plain.compact(w);
    let vertices: Vec<String> = g.vertices.iter().map(compact).collect();
    let edges: Vec<String> = g.edges.iter().map(compact).collect();
    let odd: Vec<String> = g.sources_and_sinks().iter().map(compact).collect();
    let text = if dot {
        g.dot().lines().map(str::to_string).collect()
    } else {
        vec![
            format!("vertices ({}): {}", vertices.len(), vertices.join(" ")),
            format!("edges ({}): {}", edges.len(), edges.join(" ")),
            format!(
                "sources and sinks: {}",
                if odd.is_empty() {
                    "none".to_string()
                } else {
                    odd.join(" ")
                }
            ),
        ]
    };
    let json =
        json!({ "vertices": vertices, "edges": edges, "sources_and_sinks": odd, "dot": g.dot() });
    Ok((Report { text, json }, true))
}

fn bridge_project(path: &PathBuf, bounds: &Bounds, xs: &[BiPoint]) -> Run {
    let space = plain_space(path)?;
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for x in xs {
        let (z, continuous) = project(x);
        text.push(format!(
            "{} -> {}{}",
            fmt_point(x),
            fmt_one_point(&z),
            if continuous { "" } else { "  (discontinuity)" }
        ));
        rows.push(
            json!({ "point": fmt_point(x), "image": fmt_one_point(&z), "continuous": continuous }),
        );
    }
    let projected = project_space(&space)?;
    let case = match projected.case {
        ProjectionCase::Dense => "dense",
        ProjectionCase::Standard => "standard",
    };
    let patterns: Vec<String> = projected.one.patterns().iter().map(fmt_pattern).collect();
    let cutoff = default_cutoff(&space, bounds.cutoff)?;
    let gap = projection_lift_gap(&space, bounds.n_budget, cutoff)?;
    text.push(format!(
        "one-sided forbidden words: {}",
        if patterns.is_empty() {
            "none".to_string()
        } else {
            patterns.join(" ")
        }
    ));
    text.push(format!("projection case: {case}"));
    text.push(match &gap {
        Some(x) => format!("lift of the projection also contains {}", fmt_point(x)),
        None => format!(
            "lift of the projection agrees up to budget {}",
            bounds.n_budget
        ),
    });
    let json = json!({
        "images": rows,
        "forbid_words": patterns,
        "case": case,
        "lift_gap": gap.as_ref().map(fmt_point),
    });
    Ok((Report { text, json }, gap.is_none()))
}

fn bridge_lift(path: &PathBuf, cutoff: Option<Letter>, points: &[String]) -> Run {
    let f = read_spec(path)?;
    if f.is_recoded() || !f.forbid_tails.is_empty() || f.allow_tails.is_some() {
        return Err(InputError(format!(
            "{}: a one-sided spec lists forbidden words only",
            path.display()
        )));
    }
    let one = OneSpace::new(f.forbidden()?.patterns().to_vec());
    let limit = InverseLimit::new(&one);
    // The case split is only meaningful for a minimal pattern set.
    let case = match lift_space(&one) {
        Ok(l) => Ok(match l.case {
            LiftCase::Equal => "equal",
            LiftCase::EmptyAdjoined => "empty point adjoined",
        }),
        Err(e @ BridgeError::NotMinimal(_)) => Err(e.to_string()),
        Err(e) => return Err(e.into()),
    };
    let cutoff = default_cutoff(limit.space(), cutoff)?;
    let gap = inverse_limit_projection_gap(&one, cutoff);
    let spec = SpecFile::from_forbidden(limit.space().spec());
    let mut text: Vec<String> = spec.to_json().lines().map(str::to_string).collect();
    text.push(match &case {
        Ok(c) => format!("lift case: {c}"),
        Err(e) => format!("lift case undetermined: {e}"),
    });
    let mut rows = Vec::new();
    for s in points {
        let z = parse_one_point(s).map_err(|e| InputError(format!("point {s:?}: {e}")))?;
        let (a, b) = (one.contains(&z), limit.projection_contains(&z));
        text.push(format!(
            "{}: one-sided {a}, projected lift {b}",
            fmt_one_point(&z)
        ));
        rows.push(json!({ "point": fmt_one_point(&z), "one_sided": a, "projected_lift": b }));
    }
    text.push(match &gap {
        Some(z) => format!("projection of the lift misses {}", fmt_one_point(z)),
        None => format!("projection of the lift agrees below cutoff {cutoff}"),
    });
    let json = json!({
        "spec": spec_json(&spec),
        "case": case.as_ref().ok(),
        "not_minimal": case.as_ref().err(),
        "points": rows,
        "projection_gap": gap.as_ref().map(fmt_one_point),
    });
    Ok((Report { text, json }, gap.is_none()))
}
