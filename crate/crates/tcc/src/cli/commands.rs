use std::io::Write;
use std::path::{Path, PathBuf};

use tcc_core::cert::verify_certificate;
use tcc_core::constructions::{
    compose_reduction_drawing, hill_drawing, reduction_instance, stacked_triangulation, z_number,
    ConstructionError,
};
use tcc_core::solvers::{
    book_crossing_number, cylindrical_crossing_number, t_curve_embeddable, two_page_embedding,
    BranchRunner, Sequential, SolveStatus,
};
use tcc_core::{Budget, Outcome, Unlimited};

use super::relabel;
use super::{Cli, CliError, Command, ConstructArgs, EmbedArgs, Family, Mode, RenderArgs, SolveArgs, VerifyArgs};
use crate::formats::{
    read_book, read_certificate, read_cylindrical, read_graph, read_rotation, write_book, write_certificate,
    write_cylindrical, write_graph, write_rotation, FormatError,
};
use crate::gt_cache::{self, CacheError};
use crate::runtime::{Deadline, Threaded};
use crate::svg::{render_book, render_certificate, render_cylindrical};

struct Env<'a> {
    budget: Box<dyn Budget>,
    runner: Box<dyn BranchRunner + Sync>,
    out: &'a mut dyn Write,
}

impl Env<'_> {
    fn result(&mut self, fields: &[(&str, String)]) -> Result<(), CliError> {
        let line: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(self.out, "RESULT {}", line.join(" ")).map_err(|e| CliError::Internal(e.to_string()))
    }
}

pub(super) fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    if cli.threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let budget: Box<dyn Budget> = match cli.budget_ms {
        Some(ms) => Box::new(Deadline::millis(ms)),
        None => Box::new(Unlimited),
    };
    let runner: Box<dyn BranchRunner + Sync> = if cli.threads > 1 {
        Box::new(Threaded { threads: cli.threads })
    } else {
        Box::new(Sequential)
    };
    let mut env = Env { budget, runner, out };
    match &cli.command {
        Command::Solve(a) => solve(a, &mut env),
        Command::Embed(a) => embed(a, &mut env),
        Command::Verify(a) => verify(a, &mut env),
        Command::Construct(a) => construct(a, &mut env),
        Command::Render(a) => render(a, &mut env),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    log::info!("wrote {}", path.display());
    Ok(())
}

fn input<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, FormatError>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn construction(e: ConstructionError) -> CliError {
    match e {
        ConstructionError::Parameter(m) => CliError::Usage(m),
        ConstructionError::Budget(m) => CliError::Timeout(m),
        other => CliError::Internal(other.to_string()),
    }
}

fn cache(e: CacheError) -> CliError {
    match e {
        CacheError::Construction(c) => construction(c),
        other => CliError::Internal(other.to_string()),
    }
}

fn show(p: &Path) -> String {
    p.display().to_string()
}

fn finish_status(status: SolveStatus) -> Result<(), CliError> {
    match status {
        SolveStatus::Optimal => Ok(()),
        SolveStatus::Timeout => Err(CliError::Timeout("best value so far reported".into())),
        SolveStatus::Unstable => Err(CliError::Timeout("optimum changed at the next winding cap".into())),
        SolveStatus::Infeasible => Err(CliError::Reject("no drawing exists under the caps".into())),
    }
}

fn solve(a: &SolveArgs, env: &mut Env) -> Result<(), CliError> {
    if a.mode == Mode::Book && a.pages == 0 {
        return Err(CliError::Usage("--pages must be at least 1".into()));
    }
    if a.winding < 0 {
        return Err(CliError::Usage("--winding must be non-negative".into()));
    }
    let g = input(&a.graph, read_graph)?;
    let perm = relabel::permutation(g.n(), a.seed);
    let back = relabel::inverse(&perm);
    let h = g.relabel(&perm);
    let ext = if a.mode == Mode::Book { "book" } else { "cyl" };
    let path = a.witness.clone().unwrap_or_else(|| a.graph.with_extension(ext));
    let mut fields = Vec::new();
    let (status, value, explored) = match a.mode {
        Mode::Book => {
            let r = book_crossing_number(&h, a.pages, env.budget.as_ref());
            if let Some(w) = &r.witness {
                let w = relabel::book(w, &back);
                if Some(w.crossings()) != r.value {
                    return Err(CliError::Internal("witness does not recount to the value".into()));
                }
                write(&path, &write_book(&w))?;
            }
            (r.status, r.value, r.explored)
        }
        Mode::Cyl => {
            let r = cylindrical_crossing_number(&h, a.winding, env.budget.as_ref(), env.runner.as_ref());
            if let Some(w) = &r.witness {
                let w = relabel::cylindrical(w, &back);
                if w.crossings().ok() != r.value {
                    return Err(CliError::Internal("witness does not recount to the value".into()));
                }
                write(&path, &write_cylindrical(&w))?;
            }
            if let Some(cap) = r.winding_cap_used {
                fields.push(("winding_cap", cap.to_string()));
            }
            (r.status, r.value, r.explored)
        }
    };
    let value = value.map_or("none".to_string(), |v| v.to_string());
    let mut line = vec![("value", value), ("status", status.to_string()), ("explored", explored.to_string())];
    line.extend(fields);
    line.push(("witness", show(&path)));
    env.result(&line)?;
    finish_status(status)
}

fn embed(a: &EmbedArgs, env: &mut Env) -> Result<(), CliError> {
    let (_, _, map) = input(&a.rotation, read_rotation)?;
    let found = t_curve_embeddable(&map, a.t, env.budget.as_ref()).map_err(|e| CliError::Usage(e.to_string()))?;
    match found {
        Outcome::Timeout => {
            env.result(&[("embeddable", "unknown".into()), ("t", a.t.to_string())])?;
            Err(CliError::Timeout("embeddability undecided".into()))
        }
        Outcome::Done(Some(cert)) => {
            let path = a.cert.clone().unwrap_or_else(|| a.rotation.with_extension("cert"));
            write(&path, &write_certificate(&cert))?;
            env.result(&[
                ("embeddable", "true".into()),
                ("t", a.t.to_string()),
                ("curves", cert.blue_cycles().len().to_string()),
                ("cert", show(&path)),
            ])
        }
        Outcome::Done(None) => {
            env.result(&[("embeddable", "false".into()), ("t", a.t.to_string())])?;
            Err(CliError::Reject(format!("no {}-curve embedding exists", a.t)))
        }
    }
}

fn verify(a: &VerifyArgs, env: &mut Env) -> Result<(), CliError> {
    let g = input(&a.graph, read_graph)?;
    let cert = input(&a.cert, read_certificate)?;
    match verify_certificate(&g, &cert, a.t, a.k) {
        Ok(()) => env.result(&[
            ("accepted", "true".into()),
            ("crossings", cert.crossing_count().to_string()),
            ("curves", cert.blue_cycles().len().to_string()),
        ]),
        Err(reason) => {
            let text = reason.to_string().replace('"', "'");
            env.result(&[("accepted", "false".into()), ("reason", format!("\"{text}\""))])?;
            Err(CliError::Reject(text))
        }
    }
}

fn render(a: &RenderArgs, env: &mut Env) -> Result<(), CliError> {
    let text = read(&a.input)?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    let bad = |e: FormatError| CliError::Usage(format!("{}: {e}", a.input.display()));
    let (svg, crossings) = if first.starts_with("spine:") {
        let d = read_book(&text).map_err(bad)?;
        (render_book(&d), d.crossings())
    } else if first.starts_with("inner:") {
        let d = read_cylindrical(&text).map_err(bad)?;
        let c = d.crossings().map_err(|e| CliError::Usage(e.to_string()))?;
        (render_cylindrical(&d), c)
    } else if first.starts_with("tcc-cert") {
        let c = read_certificate(&text).map_err(bad)?;
        (render_certificate(&c), c.crossing_count())
    } else {
        return Err(CliError::Usage(format!("{}: unrecognised input kind", a.input.display())));
    };
    write(&a.svg, &svg)?;
    env.result(&[("crossings", crossings.to_string()), ("svg", show(&a.svg))])
}

fn construct(a: &ConstructArgs, env: &mut Env) -> Result<(), CliError> {
    let need_n = || a.n.ok_or_else(|| CliError::Usage("-n is required for this family".into()));
    let out_or = |default: String| a.out.clone().unwrap_or_else(|| PathBuf::from(default));
    match a.family {
        Family::Stacked => {
            let i = need_n()?;
            let tri = stacked_triangulation(i).map_err(construction)?;
            let path = out_or(format!("stacked{i}.rot"));
            write(&path, &write_rotation(tri.rotation_lists()))?;
            env.result(&[
                ("vertices", tri.n().to_string()),
                ("edges", tri.graph().m().to_string()),
                ("faces", tri.faces().len().to_string()),
                ("rotation", show(&path)),
            ])
        }
        Family::Gt => {
            let gt = if a.regenerate {
                let path = out_or(show(&gt_cache::default_path(a.t)));
                let gt = gt_cache::regenerate(a.t, &path, env.budget.as_ref()).map_err(cache)?;
                log::info!("regenerated cache {}", path.display());
                gt
            } else {
                let gt = gt_cache::load_or_compute(a.t, env.budget.as_ref()).map_err(cache)?;
                write(&out_or(format!("g{}.rot", a.t)), &write_rotation(gt.triangulation.rotation_lists()))?;
                gt
            };
            let cert_path = a.cert.clone().unwrap_or_else(|| PathBuf::from(format!("g{}.cert", a.t)));
            write(&cert_path, &write_certificate(&gt.certificate))?;
            if let Some(svg) = &a.svg {
                write(svg, &render_certificate(&gt.certificate))?;
            }
            env.result(&[
                ("t", gt.t.to_string()),
                ("vertices", gt.triangulation.n().to_string()),
                ("edges", gt.triangulation.graph().m().to_string()),
                ("round", gt.m.to_string()),
                ("ell", gt.ell.to_string()),
                ("cert", show(&cert_path)),
            ])
        }
        Family::Hill => {
            let n = need_n()?;
            let d = hill_drawing(n).map_err(construction)?;
            let path = out_or(format!("hill{n}.cyl"));
            write(&path, &write_cylindrical(&d))?;
            if let Some(svg) = &a.svg {
                write(svg, &render_cylindrical(&d))?;
            }
            let c = d.crossings().map_err(|e| CliError::Internal(e.to_string()))?;
            env.result(&[
                ("crossings", c.to_string()),
                ("z", z_number(n).to_string()),
                ("drawing", show(&path)),
            ])
        }
        Family::Reduction => reduction(a, env),
    }
}

fn reduction(a: &ConstructArgs, env: &mut Env) -> Result<(), CliError> {
    let gpath = a.graph.as_ref().ok_or_else(|| CliError::Usage("--graph is required for reduction".into()))?;
    let g = input(gpath, read_graph)?;
    if a.t < 2 {
        return Err(CliError::Usage("--t must be at least 2".into()));
    }
    let gt = gt_cache::load_or_compute(a.t, env.budget.as_ref()).map_err(cache)?;
    let inst = reduction_instance(&g, &gt, a.k);
    for (role, range) in &inst.roles {
        log::info!("{role:?}: vertices {}..{}", range.start, range.end);
    }
    let path = a.out.clone().unwrap_or_else(|| PathBuf::from("reduction.txt"));
    write(&path, &write_graph(&inst.graph))?;
    let bd = match &a.book {
        Some(p) => input(p, read_book)?,
        None => match two_page_embedding(&g, env.budget.as_ref()) {
            Outcome::Done(Some(d)) => d,
            Outcome::Done(None) => {
                env.result(&[
                    ("vertices", inst.graph.n().to_string()),
                    ("edges", inst.graph.m().to_string()),
                    ("two_page", "false".into()),
                    ("graph", show(&path)),
                ])?;
                return Err(CliError::Reject("input graph has no crossing-free 2-page drawing".into()));
            }
            Outcome::Timeout => return Err(CliError::Timeout("2-page embedding search".into())),
        },
    };
    let (_, cert) = compose_reduction_drawing(&bd, &gt, a.k).map_err(|e| match e {
        ConstructionError::HasCrossings(_) | ConstructionError::PageCount(_) => CliError::Usage(e.to_string()),
        other => construction(other),
    })?;
    let cert_path = a.cert.clone().unwrap_or_else(|| path.with_extension("cert"));
    write(&cert_path, &write_certificate(&cert))?;
    if let Some(svg) = &a.svg {
        write(svg, &render_certificate(&cert))?;
    }
    env.result(&[
        ("vertices", inst.graph.n().to_string()),
        ("edges", inst.graph.m().to_string()),
        ("crossings", cert.crossing_count().to_string()),
        ("graph", show(&path)),
        ("cert", show(&cert_path)),
    ])
}
