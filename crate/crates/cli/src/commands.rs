use std::fs;
use std::path::Path;
use std::sync::Arc;

use leavitt::bfmod::{
    bf_dual, bf_graded, bf_ungraded, search_pointed_iso, verify_iso_certificate, DimensionModule, IsoCertificate,
    Positivity, SearchBounds, SearchOutcome,
};
use leavitt::homs::{
    chain_endpoints, chain_homotopy, format_hom_images, induced_k0, induced_k0_report, parse_hom_images,
    phi_z, polynomial_algebra, u_representative, EdgeUnitFamily, GradedHom, HomotopyCertificate,
};
use leavitt::zerocomp::{fullness_certificate, k0_class, k1_class, K1Class};
use leavitt::{AlgebraExt, Error, Field, Graph, LeavittAlgebra};

use crate::output::{Outcome, Output};
use crate::{Cli, Command};

/// A diagnostic for stderr together with the exit code it implies.
#[derive(Debug)]
pub struct CliError {
    pub code: String,
    pub message: String,
    pub exit_code: u8,
}

impl CliError {
    fn library(e: Error, context: Option<&Path>) -> Self {
        let exit_code = if e.is_input_error() {
            2
        } else if matches!(e, Error::StageCapExceeded(_)) {
            3
        } else {
            1
        };
        let message = match context {
            Some(p) => format!("{}: {e}", p.display()),
            None => e.to_string(),
        };
        CliError { code: e.code().into(), message, exit_code }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::library(e, None)
    }
}

type CmdResult = Result<(Output, Outcome), CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError {
        code: "io".into(),
        message: format!("cannot read {}: {e}", path.display()),
        exit_code: 2,
    })
}

fn load_graph(path: &Path) -> Result<Arc<Graph>, CliError> {
    Graph::parse(&read(path)?).map(Arc::new).map_err(|e| CliError::library(e, Some(path)))
}

fn names(g: &Graph, vs: &[leavitt::VertexId]) -> String {
    if vs.is_empty() {
        "none".into()
    } else {
        vs.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>().join(" ")
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run<F: Field>(cli: &Cli, field: F) -> CmdResult {
    let mut out = Output::default();
    let outcome = match &cli.command {
        Command::Info { graph } => info(&mut out, &*load_graph(graph)?)?,
        Command::Eval { graph, expr, normalize, degree } => {
            let a = LeavittAlgebra::new(load_graph(graph)?, field);
            if *normalize {
                out.value("cohn form", a.parse_unreduced(expr)?);
            }
            let x = a.parse(expr)?;
            out.value(if *normalize { "normal form" } else { "value" }, &x);
            if *degree {
                let ds = x.degrees();
                let text = if ds.is_empty() {
                    "none (zero element)".to_string()
                } else {
                    ds.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
                };
                out.value(if ds.len() > 1 { "degrees" } else { "degree" }, text);
                out.value("homogeneous", yes(ds.len() <= 1));
            }
            Outcome::Success
        }
        Command::Bf { graph, ungraded, dual } => {
            let g = load_graph(graph)?;
            if *ungraded {
                out.value("group", bf_ungraded(&g)?);
            } else if *dual {
                out.value("presentation", bf_dual(&g));
            } else {
                out.value("presentation", bf_graded(&g));
            }
            Outcome::Success
        }
        Command::Iso { graph_e, graph_f } => {
            let (e, f) = (modules(cli, graph_e)?, modules(cli, graph_f)?);
            let bounds = SearchBounds { entry_max: cli.entry_max, lag_max: cli.lag_max };
            match search_pointed_iso(&e, &f, bounds) {
                SearchOutcome::Found(c) => {
                    out.value("certificate", c.to_text());
                    out.report("", &verify_iso_certificate(&e, &f, &c))
                }
                SearchOutcome::NotFoundWithinBounds => {
                    out.value(
                        "result",
                        format!("not found within bounds (entry max {}, lag max {})", cli.entry_max, cli.lag_max),
                    );
                    Outcome::Undecided
                }
            }
        }
        Command::VerifyIso { graph_e, graph_f, cert } => {
            let (e, f) = (modules(cli, graph_e)?, modules(cli, graph_f)?);
            let c = IsoCertificate::parse(&read(cert)?).map_err(|err| CliError::library(err, Some(cert)))?;
            out.report("", &verify_iso_certificate(&e, &f, &c))
        }
        Command::CheckHom { graph_e, graph_f, hom } => {
            let target = LeavittAlgebra::new(load_graph(graph_f)?, field);
            let mut h = load_hom(graph_e, &target, hom)?;
            let relations = out.report("", &h.verify());
            if relations != Outcome::Success {
                relations
            } else if !h.target().graph().is_regular() || !h.source().is_regular() {
                out.value("induced k0", "skipped (both graphs must be free of sinks)");
                Outcome::Success
            } else {
                let (m, stage) = induced_k0(&h)?;
                out.value("induced k0 stage", stage);
                out.value("induced k0 matrix", &m);
                out.report("k0.", &induced_k0_report(&h)?)
            }
        }
        Command::Deform { graph_e, graph_f, hom, units } => {
            let target = LeavittAlgebra::new(load_graph(graph_f)?, field.clone());
            let mut h = load_hom(graph_e, &target, hom)?;
            let relations = out.report("hom.", &h.verify());
            if relations != Outcome::Success {
                return Ok((out, relations));
            }
            let z = EdgeUnitFamily::parse(&h, &read(units)?).map_err(|e| CliError::library(e, Some(units)))?;
            let mut d = phi_z(&h, &z)?;
            out.value("deformed", d.to_text());
            let outcome = out.report("deformed.", &d.verify());
            if h.target().graph().is_regular() && h.source().is_regular() {
                let unchanged = induced_k0(&h)? == induced_k0(&d)?;
                let mut r = leavitt::Report::new();
                r.check("k0-unchanged", unchanged, || "induced maps on K_0 differ".into());
                out.report("", &r);
                let reps = u_representative(&h, &z)?;
                for (v, c) in h.source().vertices().zip(&reps) {
                    out.value(&format!("U at {}", h.source().vertex_name(v)), c.format(&field));
                }
                if matches!(reps.first(), Some(K1Class::Trivial)) {
                    out.value("note", "K_1 of the degree-zero part is trivial over F_2");
                }
                if !unchanged {
                    return Ok((out, Outcome::Failed));
                }
            }
            outcome
        }
        Command::FullCert { graph, edge } => {
            let a = LeavittAlgebra::new(load_graph(graph)?, field);
            let e = a.graph().edge(edge).ok_or_else(|| CliError::from(Error::UnknownEdge(edge.clone())))?;
            let c = fullness_certificate(&a, e)?;
            out.value("pairs", c.pairs.len());
            let lines: Vec<String> = c.pairs.iter().map(|(y, x)| format!("{y} | {x}")).collect();
            out.value("certificate", lines.join("\n"));
            let mut r = leavitt::Report::new();
            r.check("sum equals 1", c.verify(&a), || "sum of y (e e*) x is not 1".into());
            out.report("", &r)
        }
        Command::K0 { graph, expr } => {
            let g = load_graph(graph)?;
            let a = LeavittAlgebra::new(g.clone(), field);
            let class = k0_class(&a.parse(expr)?)?;
            out.value("class", &class);
            if g.is_regular() {
                let m = modules(cli, graph)?;
                out.value("canonical", m.canonicalize(&class)?);
                out.value(
                    "positive",
                    match m.is_positive(&class) {
                        Positivity::Positive => "yes".to_string(),
                        Positivity::Zero => "zero".to_string(),
                        Positivity::NotPositive => "no".to_string(),
                        Positivity::Undecided(cap) => format!("undecided up to stage {cap}"),
                    },
                );
            }
            Outcome::Success
        }
        Command::K1 { graph, expr } => {
            let a = LeavittAlgebra::new(load_graph(graph)?, field.clone());
            let class = k1_class(&a.parse(expr)?)?;
            out.value("class", class.format(&field));
            if class == K1Class::Trivial {
                out.value("note", "K_1 of the degree-zero part is trivial over F_2");
            }
            Outcome::Success
        }
        Command::CheckHomotopy { graph_e, graph_f, links } => {
            let target = LeavittAlgebra::new(load_graph(graph_f)?, field.clone());
            let poly = polynomial_algebra(&target);
            let source = load_graph(graph_e)?;
            let mut chain = Vec::new();
            for path in links {
                let images =
                    parse_hom_images(&source, &poly, &read(path)?).map_err(|e| CliError::library(e, Some(path)))?;
                chain.push(HomotopyCertificate { images });
            }
            let outcome = out.report("", &chain_homotopy(&chain, Some(&poly.one()), &field));
            if let Some((start, end)) = chain_endpoints(&chain, &field) {
                out.value("start", format_hom_images(&start));
                out.value("end", format_hom_images(&end));
            }
            outcome
        }
    };
    Ok((out, outcome))
}

fn info(out: &mut Output, g: &Graph) -> Result<Outcome, CliError> {
    let c = g.classify();
    out.value("graph", g.name());
    out.value("vertices", g.vertex_count());
    out.value("edges", g.edge_count());
    out.value("sinks", names(g, &c.sinks));
    out.value("sources", names(g, &c.sources));
    out.value("regular", yes(c.is_regular));
    out.value("essential", yes(c.is_essential));
    out.value("irreducible", yes(g.is_irreducible()));
    let primitive = if !c.is_regular {
        "n/a (graph has sinks)".to_string()
    } else {
        match g.primitivity_exponent()? {
            Some(n) => format!("yes (exponent {n})"),
            None => "no".into(),
        }
    };
    out.value("primitive", primitive);
    out.value("strongly graded", yes(c.sinks.is_empty()));
    out.value("adjacency", g.square_adjacency());
    Ok(Outcome::Success)
}

fn modules(cli: &Cli, path: &Path) -> Result<DimensionModule, CliError> {
    let g = load_graph(path)?;
    Ok(DimensionModule::new(g).map_err(|e| CliError::library(e, Some(path)))?.with_cap(cli.stage_cap))
}

fn load_hom<F: Field>(source: &Path, target: &Arc<LeavittAlgebra<F>>, hom: &Path) -> Result<GradedHom<F>, CliError> {
    let g = load_graph(source)?;
    GradedHom::parse(g, target, &read(hom)?).map_err(|e| CliError::library(e, Some(hom)))
}
