use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use diagram_groups::farley::build_ball;
use diagram_groups::freeness::{freeness_verdict, verify_z2_witness, Z2Witness};
use diagram_groups::homology::first_betti_number;
use diagram_groups::pi1::{pi1_presentation, simplify_presentation, GroupPresentation};
use diagram_groups::squier::{
    build_component, edge_json, self_intersection_search, specialness_criterion,
    two_sidedness_check, SelfIntersectionEvidence, SpecialnessEvidence,
};
use diagram_groups::{Budget, Presentation, Word};

/// Workbench for diagram groups over semigroup presentations.
#[derive(Parser)]
#[command(name = "dgroups", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Presentation file: one `letters: ...` line, then `rel: lhs = rhs` lines
    #[arg(long)]
    presentation: PathBuf,
    /// Base word over the presentation's alphabet
    #[arg(long)]
    word: String,
    /// Longest word the searches may visit
    #[arg(long)]
    max_word_length: Option<usize>,
    /// Most words/vertices any one search may collect
    #[arg(long)]
    max_words: Option<usize>,
    /// Largest cube dimension to record
    #[arg(long)]
    max_cells: Option<usize>,
    /// Iteration bound for simplification passes
    #[arg(long)]
    max_depth: Option<usize>,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the word's rewriting complex: vertices, edges, cubes, homology
    Explore(#[command(flatten)] Common),
    /// Fundamental group of the explored component, raw and simplified
    Pi1(#[command(flatten)] Common),
    /// Ball of reduced diagrams with the given top word
    FarleyBall {
        #[command(flatten)]
        common: Common,
        /// Cell-count radius of the ball
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Hyperplane sanity checks: two-sidedness, self-intersections, specialness
    Pathology(#[command(flatten)] Common),
    /// Freeness verdict with machine-checkable witnesses
    Freeness(#[command(flatten)] Common),
    /// Replay a saved commuting-pair witness
    VerifyWitness {
        /// Presentation file the witness was computed over
        #[arg(long)]
        presentation: PathBuf,
        /// JSON witness file (the `z2_witness` object of a freeness report)
        #[arg(long)]
        witness: PathBuf,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            process::exit(code);
        }
    };
    match panic::catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => {}
        Ok(Err(msg)) => {
            eprintln!("error: {msg}");
            process::exit(1);
        }
        Err(_) => {
            eprintln!("internal invariant violation; see the panic message above");
            process::exit(2);
        }
    }
}

fn load_presentation(path: &PathBuf) -> Result<Presentation, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    Presentation::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn setup(common: &Common) -> Result<(Presentation, Word, Budget), String> {
    let p = load_presentation(&common.presentation)?;
    let w = p.parse_word(&common.word).map_err(|e| e.to_string())?;
    if w.is_empty() {
        return Err("the base word must be non-empty".into());
    }
    let d = Budget::default();
    let b = Budget {
        max_word_length: common.max_word_length.unwrap_or(d.max_word_length),
        max_words: common.max_words.unwrap_or(d.max_words),
        max_cells: common.max_cells.unwrap_or(d.max_cells),
        max_depth: common.max_depth.unwrap_or(d.max_depth),
    };
    b.validate()?;
    Ok((p, w, b))
}

fn emit(common: &Common, text: String, value: Value) -> Result<(), String> {
    let payload = if common.json {
        let mut s = serde_json::to_string_pretty(&value).map_err(|e| e.to_string())?;
        s.push('\n');
        s
    } else {
        text
    };
    match &common.out {
        Some(path) => {
            fs::write(path, payload).map_err(|e| format!("writing {}: {e}", path.display()))
        }
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn counts_line(counts: &[usize]) -> String {
    if counts.is_empty() {
        "none".to_string()
    } else {
        counts
            .iter()
            .enumerate()
            .map(|(i, n)| format!("dim {}: {}", i + 2, n))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn group_json(g: &GroupPresentation) -> Value {
    json!({
        "generators": g.generators,
        "relators": g.relators,
        "abelianized_rank": g.abelianized_rank(),
        "render": g.render(),
    })
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.cmd {
        Cmd::Explore(common) => {
            let (p, w, b) = setup(&common)?;
            let c = build_component(&p, &w, &b);
            let chi = c.euler_characteristic();
            let b1 = first_betti_number(&p, &c);
            let text = format!(
                "base: {}\nvertices: {}\nedges: {}\ncubes: {}\ncomplete: {}\neuler characteristic: {}\nfirst betti number: {}\n",
                p.render_word(&c.base),
                c.vertex_count(),
                c.edge_count(),
                counts_line(&c.cube_counts()),
                c.complete,
                chi,
                b1,
            );
            let value = json!({
                "component": c.to_json(&p),
                "euler_characteristic": chi,
                "first_betti_number": b1,
            });
            emit(&common, text, value)
        }
        Cmd::Pi1(common) => {
            let (p, w, b) = setup(&common)?;
            let c = build_component(&p, &w, &b);
            let raw = pi1_presentation(&p, &c);
            let simplified = simplify_presentation(&raw, &b);
            let text = format!(
                "base: {}\ncomplete: {}\nraw: {}\nsimplified: {}\ntrivial: {}\nabelianized rank: {}\n",
                p.render_word(&c.base),
                c.complete,
                raw.render(),
                simplified.render(),
                simplified.is_trivial_presentation(),
                simplified.abelianized_rank(),
            );
            let value = json!({
                "base": p.render_word(&c.base),
                "complete": c.complete,
                "raw": group_json(&raw),
                "simplified": group_json(&simplified),
                "trivial": simplified.is_trivial_presentation(),
            });
            emit(&common, text, value)
        }
        Cmd::FarleyBall { common, radius } => {
            let (p, w, b) = setup(&common)?;
            let ball = build_ball(&p, &w, radius, &b);
            let text = format!(
                "base: {}\nradius: {}\nvertices: {}\nedges: {}\ncubes: {}\ntruncated: {}\n",
                p.render_word(&ball.base),
                ball.radius,
                ball.vertex_count(),
                ball.edge_count(),
                counts_line(&ball.cube_counts()),
                ball.truncated,
            );
            let value = ball.to_json(&p);
            emit(&common, text, value)
        }
        Cmd::Pathology(common) => {
            let (p, w, b) = setup(&common)?;
            let c = build_component(&p, &w, &b);

            let two = two_sidedness_check(&p, &c);
            let te = two.certificate.as_ref().expect("always carries counts");
            let two_line = format!(
                "two-sidedness: {} (edges {}, squares {}, hyperplanes {})",
                two.status.as_str(),
                te.edges,
                te.squares,
                te.hyperplanes
            );
            let two_json = json!({
                "status": two.status.as_str(),
                "edges": te.edges,
                "squares": te.squares,
                "hyperplanes": te.hyperplanes,
            });

            let selfi = self_intersection_search(&p, &c, &b);
            let (selfi_line, selfi_json) = match &selfi.certificate {
                Some(SelfIntersectionEvidence::Witness {
                    edge,
                    left,
                    mid,
                    right,
                    ..
                }) => (
                    format!(
                        "self-intersection: {} (edge on {}, contexts {} | {} | {})",
                        selfi.status.as_str(),
                        p.render_word(&edge.source(&p)),
                        p.render_word(left),
                        p.render_word(mid),
                        p.render_word(right),
                    ),
                    json!({
                        "status": selfi.status.as_str(),
                        "edge": edge_json(&p, edge),
                        "left": p.render_word(left),
                        "mid": p.render_word(mid),
                        "right": p.render_word(right),
                    }),
                ),
                Some(SelfIntersectionEvidence::ExhaustiveScan { edges, candidates }) => (
                    format!(
                        "self-intersection: {} (edges {}, candidates {})",
                        selfi.status.as_str(),
                        edges,
                        candidates
                    ),
                    json!({
                        "status": selfi.status.as_str(),
                        "edges": edges,
                        "candidates": candidates,
                    }),
                ),
                None => (
                    format!("self-intersection: {}", selfi.status.as_str()),
                    json!({ "status": selfi.status.as_str() }),
                ),
            };

            let special = specialness_criterion(&p, &w, &b);
            let (special_line, special_json) = match &special.certificate {
                Some(SpecialnessEvidence::ViolatingTriple {
                    member,
                    left,
                    right,
                    extension,
                    ..
                }) => (
                    format!(
                        "specialness: {} (member {} splits as {} | {} with extension {})",
                        special.status.as_str(),
                        p.render_word(member),
                        p.render_word(left),
                        p.render_word(right),
                        p.render_word(extension),
                    ),
                    json!({
                        "status": special.status.as_str(),
                        "member": p.render_word(member),
                        "left": p.render_word(left),
                        "right": p.render_word(right),
                        "extension": p.render_word(extension),
                    }),
                ),
                Some(SpecialnessEvidence::ExhaustiveScan {
                    members,
                    splits,
                    candidates,
                }) => (
                    format!(
                        "specialness: {} (members {}, splits {}, candidates {})",
                        special.status.as_str(),
                        members,
                        splits,
                        candidates
                    ),
                    json!({
                        "status": special.status.as_str(),
                        "members": members,
                        "splits": splits,
                        "candidates": candidates,
                    }),
                ),
                None => (
                    format!("specialness: {}", special.status.as_str()),
                    json!({ "status": special.status.as_str() }),
                ),
            };

            let text = format!("{two_line}\n{selfi_line}\n{special_line}\n");
            let value = json!({
                "two_sidedness": two_json,
                "self_intersection": selfi_json,
                "specialness": special_json,
            });
            emit(&common, text, value)
        }
        Cmd::Freeness(common) => {
            let (p, w, b) = setup(&common)?;
            let report = freeness_verdict(&p, &w, &b);
            emit(&common, report.render_text(&p), report.to_json(&p))
        }
        Cmd::VerifyWitness {
            presentation,
            witness,
        } => {
            let p = load_presentation(&presentation)?;
            let text = fs::read_to_string(&witness)
                .map_err(|e| format!("reading {}: {e}", witness.display()))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| format!("{}: {e}", witness.display()))?;
            let z = Z2Witness::from_json(&p, &value)?;
            verify_z2_witness(&p, &z).map_err(|e| format!("witness rejected: {e}"))?;
            println!(
                "witness verified: commuting pair over {} = {} * {}",
                p.render_word(&z.ambient),
                p.render_word(&z.left_word),
                p.render_word(&z.right_word)
            );
            Ok(())
        }
    }
}
