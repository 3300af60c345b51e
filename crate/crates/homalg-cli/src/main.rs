//! Command line front end: every computation reachable from a workspace
//! file, plus the law suites.
//!
//! Exit status: 0 = success, 1 = verified-negative answer (not exact, not
//! zero, not equal, axiom violations found), 2 = input error.

mod ws;

use clap::{Args, Parser, Subcommand};
use homalg::complex::{cohomology, shift, ChainMap, Complex};
use homalg::derived::{
    compose_roofs, ext, hereditary_decompose, hom_d, is_zero_in_d, roof_eq, tor,
    triangle_from_ses, Roof,
};
use homalg::dg::{biduality, check_dg_algebra, check_dg_module, dg_dual, end_complex_as_dga};
use homalg::fpmodule::FPModule;
use homalg::homotopycat::{hom_k, weak_kernel};
use homalg::laws::{run_law_suite, InstanceGenSpec, Suite};
use homalg::matrix::{Matrix, Ring};
use homalg::ser;
use homalg::triangle::{certify_exact, cone, homotopy_pushout, long_exact_sequence, octahedron,
    rotate, Triangle};
use serde_json::{json, Value};
use std::process::ExitCode;
use ws::Workspace;

#[derive(Parser)]
#[command(name = "homalg", version, about = "exact homological algebra over Z and Q")]
struct Cli {
    /// workspace file
    #[arg(short = 'w', long = "workspace", global = true)]
    workspace: Option<String>,
    /// emit a structured record instead of text
    #[arg(long, global = true)]
    json: bool,
    /// seed for randomized commands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct OneComplex {
    /// complex name
    #[arg(short = 'x', long = "complex")]
    x: String,
}

#[derive(Args)]
struct TwoComplexes {
    #[arg(short = 'x', long = "from")]
    x: String,
    #[arg(short = 'y', long = "to")]
    y: String,
}

#[derive(Args)]
struct OneMap {
    /// chain map name
    #[arg(short = 'f', long = "map")]
    f: String,
}

#[derive(Args)]
struct TwoMaps {
    #[arg(short = 'f', long = "first")]
    f: String,
    #[arg(short = 'g', long = "second")]
    g: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hⁿ of a complex
    Cohomology {
        #[command(flatten)]
        x: OneComplex,
        #[arg(short = 'n', long)]
        degree: i64,
    },
    /// Σᵏ of a complex
    Shift {
        #[command(flatten)]
        x: OneComplex,
        #[arg(short = 'k', long, default_value_t = 1)]
        by: i64,
    },
    /// mapping cone of a map
    Cone {
        #[command(flatten)]
        f: OneMap,
    },
    /// rotations of the strict triangle of a map
    Rotate {
        #[command(flatten)]
        f: OneMap,
        #[arg(short = 't', long, default_value_t = 1)]
        times: u32,
    },
    /// decide exactness of a triangle (three composable maps, or the
    /// strict triangle of -f, optionally rotated)
    Certify {
        #[arg(short = 'f', long = "map")]
        f: Option<String>,
        #[arg(short = 'a', long)]
        a: Option<String>,
        #[arg(short = 'b', long)]
        b: Option<String>,
        #[arg(short = 'c', long)]
        c: Option<String>,
        #[arg(short = 't', long, default_value_t = 0)]
        times: u32,
    },
    /// long exact cohomology sequence of the strict triangle of a map
    Les {
        #[command(flatten)]
        f: OneMap,
    },
    /// octahedron on a composable pair f: X→Y, g: Y→Z
    Octahedron {
        #[command(flatten)]
        pair: TwoMaps,
    },
    /// homotopy pushout of f: X→Y′, g: X→Y″
    Pushout {
        #[command(flatten)]
        pair: TwoMaps,
    },
    /// hom group in the homotopy category K
    Homk {
        #[command(flatten)]
        xy: TwoComplexes,
    },
    /// weak kernel of a map in K
    Weakker {
        #[command(flatten)]
        f: OneMap,
    },
    /// hom group in the derived category D
    Homd {
        #[command(flatten)]
        xy: TwoComplexes,
    },
    /// compose two roofs
    ComposeRoof {
        #[arg(short = 'r', long)]
        first: String,
        #[arg(short = 's', long)]
        second: String,
    },
    /// equality of two roofs in D
    RoofEq {
        #[arg(short = 'r', long)]
        first: String,
        #[arg(short = 's', long)]
        second: String,
    },
    /// Extⁿ of two modules (literals like Z/4, Z^2, or workspace names)
    Ext {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(short = 'n', long)]
        degree: i64,
    },
    /// Torₙ of two modules
    Tor {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(short = 'n', long)]
        degree: i64,
    },
    /// is a map zero in the derived category?
    ZeroInD {
        #[command(flatten)]
        f: OneMap,
    },
    /// decompose a complex over a hereditary ring into stalks
    Decompose {
        #[command(flatten)]
        x: OneComplex,
    },
    /// triangle of a short exact sequence of modules (degree-0 parts of
    /// two maps of concentrated complexes)
    SesTriangle {
        #[command(flatten)]
        pair: TwoMaps,
    },
    /// dg algebra (and optionally dg module) axiom check
    DgCheck {
        #[arg(short = 'a', long = "algebra")]
        a: String,
        #[arg(short = 'm', long = "module")]
        m: Option<String>,
    },
    /// endomorphism dg algebra of a complex
    DgEnd {
        #[command(flatten)]
        x: OneComplex,
    },
    /// dual of a dg module over the opposite algebra
    DgDual {
        #[arg(short = 'm', long = "module")]
        m: String,
    },
    /// run a law suite
    Laws {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// parse a workspace and emit its canonical form
    Validate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| run(&cli));
    match outcome {
        Ok(Ok(code)) => code,
        Ok(Err(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(cause) => {
            let msg = cause
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| cause.downcast_ref::<&str>().copied())
                .unwrap_or("computation failed");
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn load(cli: &Cli) -> Result<Workspace, String> {
    let path = cli.workspace.as_deref().ok_or("this command needs a workspace (-w)")?;
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {}", path, e))?;
    Workspace::parse(&text)
}

fn the_complex<'a>(ws: &'a Workspace, name: &str) -> Result<&'a Complex, String> {
    ws.complexes.get(name).ok_or_else(|| format!("unknown complex {:?}", name))
}

fn the_map<'a>(ws: &'a Workspace, name: &str) -> Result<&'a ChainMap, String> {
    ws.maps.get(name).ok_or_else(|| format!("unknown map {:?}", name))
}

fn the_roof<'a>(ws: &'a Workspace, name: &str) -> Result<&'a Roof, String> {
    ws.roofs.get(name).ok_or_else(|| format!("unknown roof {:?}", name))
}

/// "Z", "Q", "0", "Z^k", "Z/m", sums with "+", or a workspace module name.
fn module_operand(ws: &Workspace, text: &str) -> Result<FPModule, String> {
    if let Some(m) = ws.modules.get(text) {
        return Ok(m.clone());
    }
    let ring = ws.ring;
    let free_name = match ring {
        Ring::Z => "Z",
        Ring::Q => "Q",
    };
    let mut acc = FPModule::zero(ring);
    for term in text.split('+').map(str::trim) {
        let part = if term == "0" {
            FPModule::zero(ring)
        } else if term == free_name {
            FPModule::free(ring, 1)
        } else if let Some(k) = term.strip_prefix(free_name).and_then(|r| r.strip_prefix('^')) {
            let k: usize = k.parse().map_err(|_| format!("bad rank in {:?}", term))?;
            FPModule::free(ring, k)
        } else if let Some(d) = term.strip_prefix("Z/") {
            if ring != Ring::Z {
                return Err("torsion modules only exist over Z".to_string());
            }
            let d: i64 = d.parse().map_err(|_| format!("bad torsion order in {:?}", term))?;
            if d <= 0 {
                return Err(format!("bad torsion order in {:?}", term));
            }
            FPModule::cyclic(ring, d)
        } else {
            return Err(format!("{:?} is neither a module literal nor a workspace name", term));
        };
        acc = acc.direct_sum(&part);
    }
    Ok(acc)
}

fn describe(m: &FPModule) -> String {
    m.canonical().describe(m.ring()).to_string()
}

fn complex_lines(x: &Complex) -> Vec<String> {
    if x.is_empty_window() {
        return vec!["(zero complex)".to_string()];
    }
    (x.lo()..=x.hi())
        .map(|n| format!("degree {}: {}", n, describe(&x.component(n))))
        .collect()
}

fn triangle_summary(t: &Triangle) -> String {
    format!(
        "X: degrees {}..{}, Y: degrees {}..{}, Z: degrees {}..{}",
        t.x.lo(),
        t.x.hi(),
        t.y.lo(),
        t.y.hi(),
        t.z.lo(),
        t.z.hi()
    )
}

fn triangle_json(t: &Triangle) -> Value {
    json!({
        "a": ser::chain_map_to_json(&t.a),
        "b": ser::chain_map_to_json(&t.b),
        "c": ser::chain_map_to_json(&t.c),
    })
}

fn vector_text(v: &Matrix) -> String {
    let entries: Vec<String> = (0..v.rows()).map(|i| v.at(i, 0).to_string()).collect();
    format!("({})", entries.join(", "))
}

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, text: &str, record: Value) {
        if self.json {
            println!("{}", ser::canonical_text(&record));
        } else {
            println!("{}", text);
        }
    }
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let out = Out { json: cli.json };
    match &cli.cmd {
        Cmd::Cohomology { x, degree } => {
            let ws = load(cli)?;
            let h = cohomology(the_complex(&ws, &x.x)?, *degree);
            let desc = describe(&h.group);
            out.emit(
                &format!("H^{} ≅ {}", degree, desc),
                json!({ "degree": degree, "group": desc,
                        "presentation": ser::module_to_json(&h.group) }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Shift { x, by } => {
            let ws = load(cli)?;
            let s = shift(the_complex(&ws, &x.x)?, *by);
            out.emit(&complex_lines(&s).join("\n"), ser::complex_to_json(&s));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Cone { f } => {
            let ws = load(cli)?;
            let cn = cone(the_map(&ws, &f.f)?);
            out.emit(
                &complex_lines(&cn.complex).join("\n"),
                json!({
                    "complex": ser::complex_to_json(&cn.complex),
                    "iota": ser::chain_map_to_json(&cn.iota),
                    "pi": ser::chain_map_to_json(&cn.pi),
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Rotate { f, times } => {
            let ws = load(cli)?;
            let mut t = cone(the_map(&ws, &f.f)?).triangle();
            for _ in 0..*times {
                t = rotate(&t);
            }
            out.emit(&triangle_summary(&t), triangle_json(&t));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Certify { f, a, b, c, times } => {
            let ws = load(cli)?;
            let mut t = match (f, a, b, c) {
                (Some(f), None, None, None) => cone(the_map(&ws, f)?).triangle(),
                (None, Some(a), Some(b), Some(c)) => Triangle::new(
                    the_map(&ws, a)?.clone(),
                    the_map(&ws, b)?.clone(),
                    the_map(&ws, c)?.clone(),
                ),
                _ => return Err("pass either -f, or all of -a -b -c".to_string()),
            };
            for _ in 0..*times {
                t = rotate(&t);
            }
            let cert = certify_exact(&t);
            let ok = cert.is_some();
            out.emit(
                if ok { "exact (certificate found)" } else { "not exact" },
                json!({ "exact": ok }),
            );
            Ok(verdict(ok))
        }
        Cmd::Les { f } => {
            let ws = load(cli)?;
            let t = cone(the_map(&ws, &f.f)?).triangle();
            let cert = certify_exact(&t).ok_or("triangle failed to certify")?;
            let rep = long_exact_sequence(&t, &cert);
            let mut lines: Vec<String> = rep
                .entries
                .iter()
                .zip(rep.exact_at.iter().chain(std::iter::repeat(&true)))
                .map(|(e, ok)| {
                    format!("{}  [{}]", e.label, if *ok { "exact" } else { "NOT EXACT" })
                })
                .collect();
            if let Some(d) = rep.delta_identity {
                lines.push(format!("connecting map identity: {}", d));
            }
            let record = json!({
                "positions": rep.entries.iter().map(|e| e.label.clone()).collect::<Vec<_>>(),
                "exact_at": rep.exact_at,
                "delta_identity": rep.delta_identity,
                "all_exact": rep.all_exact,
            });
            out.emit(&lines.join("\n"), record);
            Ok(verdict(rep.all_exact && rep.delta_identity != Some(false)))
        }
        Cmd::Octahedron { pair } => {
            let ws = load(cli)?;
            let oct = octahedron(the_map(&ws, &pair.f)?, the_map(&ws, &pair.g)?);
            let all = oct.faces.iter().all(|(_, ok)| *ok);
            let lines: Vec<String> = oct
                .faces
                .iter()
                .map(|(label, ok)| format!("{}: {}", label, if *ok { "ok" } else { "FAILS" }))
                .collect();
            let record = json!({
                "faces": oct.faces.iter()
                    .map(|(l, ok)| json!({ "face": l, "holds": ok }))
                    .collect::<Vec<_>>(),
                "all_certified": true,
                "all_faces_hold": all,
            });
            out.emit(&lines.join("\n"), record);
            Ok(verdict(all))
        }
        Cmd::Pushout { pair } => {
            let ws = load(cli)?;
            let sq = homotopy_pushout(the_map(&ws, &pair.f)?, the_map(&ws, &pair.g)?);
            let mut lines = vec!["pushout apex:".to_string()];
            lines.extend(complex_lines(&sq.z));
            if let Some(q) = sq.parallel_qis.0 {
                lines.push(format!("f qis ⇒ opposite leg qis: {}", q));
            }
            if let Some(q) = sq.parallel_qis.1 {
                lines.push(format!("g qis ⇒ opposite leg qis: {}", q));
            }
            let record = json!({
                "apex": ser::complex_to_json(&sq.z),
                "leg_p": ser::chain_map_to_json(&sq.leg_p),
                "leg_pp": ser::chain_map_to_json(&sq.leg_pp),
                "parallel_qis": [sq.parallel_qis.0, sq.parallel_qis.1],
            });
            out.emit(&lines.join("\n"), record);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Homk { xy } => {
            let ws = load(cli)?;
            let hk = hom_k(the_complex(&ws, &xy.x)?, the_complex(&ws, &xy.y)?);
            let desc = describe(hk.group());
            out.emit(
                &format!("homK ≅ {}", desc),
                json!({ "group": desc, "presentation": ser::module_to_json(hk.group()) }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Weakker { f } => {
            let ws = load(cli)?;
            let w = weak_kernel(the_map(&ws, &f.f)?);
            let mut lines = vec!["weak kernel:".to_string()];
            lines.extend(complex_lines(w.source()));
            out.emit(&lines.join("\n"), ser::chain_map_to_json(&w));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Homd { xy } => {
            let ws = load(cli)?;
            let hd = hom_d(the_complex(&ws, &xy.x)?, the_complex(&ws, &xy.y)?);
            let desc = describe(hd.group());
            out.emit(
                &format!("homD ≅ {}", desc),
                json!({ "group": desc, "presentation": ser::module_to_json(hd.group()) }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ComposeRoof { first, second } => {
            let ws = load(cli)?;
            let r1 = the_roof(&ws, first)?;
            let r2 = the_roof(&ws, second)?;
            let r = compose_roofs(r1, r2);
            out.emit(
                &format!(
                    "composite roof: {}..{} → apex degrees {}..{}",
                    r.source().lo(),
                    r.source().hi(),
                    r.alpha.target().lo(),
                    r.alpha.target().hi()
                ),
                ser::roof_to_json(&r),
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::RoofEq { first, second } => {
            let ws = load(cli)?;
            let eq = roof_eq(the_roof(&ws, first)?, the_roof(&ws, second)?);
            out.emit(
                if eq { "equal in D" } else { "distinct in D" },
                json!({ "equal": eq }),
            );
            Ok(verdict(eq))
        }
        Cmd::Ext { from, to, degree } => {
            let ws = load(cli)?;
            let m = module_operand(&ws, from)?;
            let n = module_operand(&ws, to)?;
            let e = ext(&m, &n, *degree);
            let desc = describe(&e);
            out.emit(
                &format!("Ext^{} ≅ {}", degree, desc),
                json!({ "degree": degree, "group": desc,
                        "presentation": ser::module_to_json(&e) }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Tor { from, to, degree } => {
            let ws = load(cli)?;
            let m = module_operand(&ws, from)?;
            let n = module_operand(&ws, to)?;
            let t = tor(&m, &n, *degree);
            let desc = describe(&t);
            out.emit(
                &format!("Tor_{} ≅ {}", degree, desc),
                json!({ "degree": degree, "group": desc,
                        "presentation": ser::module_to_json(&t) }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ZeroInD { f } => {
            let ws = load(cli)?;
            let cert = is_zero_in_d(the_map(&ws, &f.f)?);
            out.emit(
                if cert.is_zero { "zero in D" } else { "nonzero in D" },
                json!({ "zero_in_d": cert.is_zero }),
            );
            Ok(verdict(cert.is_zero))
        }
        Cmd::Decompose { x } => {
            let ws = load(cli)?;
            let dec = hereditary_decompose(the_complex(&ws, &x.x)?);
            let lines: Vec<String> = dec
                .summands
                .iter()
                .map(|(n, m)| format!("Σ^{} {}", -n, describe(m)))
                .collect();
            let text = if lines.is_empty() { "0".to_string() } else { lines.join(" ⊕ ") };
            let record = json!({
                "summands": dec.summands.iter()
                    .map(|(n, m)| json!({ "degree": n, "module": ser::module_to_json(m) }))
                    .collect::<Vec<_>>(),
                "target": ser::complex_to_json(&dec.h),
            });
            out.emit(&text, record);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::SesTriangle { pair } => {
            let ws = load(cli)?;
            let f = the_map(&ws, &pair.f)?.component(0);
            let g = the_map(&ws, &pair.g)?.component(0);
            let st = triangle_from_ses(&f, &g);
            let split = st.is_split();
            let text = format!(
                "Ext^1 class {} in {} ({})",
                vector_text(&st.gamma_class),
                describe(&st.ext_group),
                if split { "sequence splits" } else { "does not split" }
            );
            let record = json!({
                "ext_group": describe(&st.ext_group),
                "class": ser::matrix_to_json(&st.gamma_class),
                "splits": split,
            });
            out.emit(&text, record);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::DgCheck { a, m } => {
            let ws = load(cli)?;
            let alg = ws
                .dg_algebras
                .get(a)
                .ok_or_else(|| format!("unknown dg algebra {:?}", a))?;
            let mut reports = vec![("algebra", check_dg_algebra(alg))];
            if let Some(mname) = m {
                let module = ws
                    .dg_modules
                    .get(mname)
                    .ok_or_else(|| format!("unknown dg module {:?}", mname))?;
                reports.push(("module", check_dg_module(module)));
            }
            let ok = reports.iter().all(|(_, r)| r.is_valid());
            let mut lines = Vec::new();
            for (what, rep) in &reports {
                if rep.is_valid() {
                    lines.push(format!("{}: all axioms hold", what));
                } else {
                    for v in &rep.violations {
                        lines.push(format!("{}: {}", what, v));
                    }
                }
            }
            let record = json!({
                "valid": ok,
                "violations": reports.iter()
                    .flat_map(|(what, r)| r.violations.iter()
                        .map(move |v| json!({ "in": what, "violation": v.to_string() })))
                    .collect::<Vec<_>>(),
            });
            out.emit(&lines.join("\n"), record);
            Ok(verdict(ok))
        }
        Cmd::DgEnd { x } => {
            let ws = load(cli)?;
            let a = end_complex_as_dga(the_complex(&ws, &x.x)?);
            let rep = check_dg_algebra(&a);
            let dims: Vec<String> =
                (a.lo..=a.hi).map(|n| format!("degree {}: dim {}", n, a.dim(n))).collect();
            out.emit(&dims.join("\n"), ser::dg_algebra_to_json(&a));
            Ok(verdict(rep.is_valid()))
        }
        Cmd::DgDual { m } => {
            let ws = load(cli)?;
            let module =
                ws.dg_modules.get(m).ok_or_else(|| format!("unknown dg module {:?}", m))?;
            let dual = dg_dual(module);
            let rep = check_dg_module(&dual);
            let (_, bid) = biduality(module);
            let dims: Vec<String> = (dual.lo..=dual.hi)
                .map(|n| format!("degree {}: dim {}", n, dual.dim(n)))
                .collect();
            let mut lines = dims;
            lines.push(format!("biduality isomorphism: {}", bid));
            let mut record = ser::dg_module_to_json(&dual);
            record
                .as_object_mut()
                .unwrap()
                .insert("biduality".into(), Value::Bool(bid));
            out.emit(&lines.join("\n"), record);
            Ok(verdict(rep.is_valid() && bid))
        }
        Cmd::Laws { suite, count, ring } => {
            let suite = Suite::parse(suite)?;
            let ring = match ring.as_str() {
                "Z" => Ring::Z,
                "Q" => Ring::Q,
                other => return Err(format!("unknown ring {:?}", other)),
            };
            let spec = InstanceGenSpec::new(ring, cli.seed, *count);
            let report = run_law_suite(suite, &spec)?;
            if cli.json {
                println!("{}", ser::canonical_text(&report.to_json()));
            } else {
                print!("{}", report.canonical_text());
            }
            Ok(verdict(report.all_pass()))
        }
        Cmd::Validate => {
            let ws = load(cli)?;
            if cli.json {
                println!("{}", ws.canonical_text());
            } else {
                println!("workspace valid: {} objects", ws.object_count());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
