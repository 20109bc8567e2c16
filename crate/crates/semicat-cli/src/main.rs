//! Command-line verifier: validates documents, searches rigidity data,
//! computes units and decategorification reports, decides disimplicity and
//! the finite-tensor property, computes traces, and checks module lifts.
//! Exit codes: 0 = requested checks pass / verdict computed, 1 = a check
//! failed (with a certificate in the report), 2 = usage or format error.

use clap::{Args, Parser, Subcommand};
use semicat::decat::{cone_idempotent_check, gr_action, gr_sum_matrix, jcell_trivial, pf_idempotent, GrSide};
use semicat::doc::{load, store, Document};
use semicat::fincat::{validate_presentation, Fo};
use semicat::generate as gen;
use semicat::modlift::{unital_lift_check, validate_module, ModuleCatData};
use semicat::presheaf::{presheaf_iso, IsoResult};
use semicat::rigidity::{certificate_search, verify_adjunction, RigidityCertificate};
use semicat::semicat::validate_semigroup;
use semicat::simplicity::{decide_finite_tensor, enriched_trace, stability_report, trace_k, StableSide};
use semicat::unit::{ansatz_iso, is_liberal, unit_ansatz, unit_bar, unit_general, unit_verify, Side};
use semicat::FieldSpec;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "semicat", about = "Verifier and calculator for finitary semigroup categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the full machine-readable report.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized exact coefficient searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Candidate-multiplicity bound for the dual search.
    #[arg(long, global = true, default_value_t = 2)]
    max_dual_mult: usize,
    /// Power-iteration tolerance (decategorification only).
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Check the category and tensor axioms of a document.
    Validate(DocArg),
    /// Search duals for every indecomposable and verify the axioms.
    Rigid(RigidArgs),
    /// Build the unit presheaf and verify unitality exactly.
    Unit(DocArg),
    /// Build both transformation-space units and their comparison maps.
    Ansatz(DocArg),
    /// Grothendieck matrices, reachability and the Perron-Frobenius data.
    Decat(DocArg),
    /// Transitivity and simple transitivity on both sides.
    Disimple(DocArg),
    /// Decide whether the presheaf category is a finite tensor category.
    DecideTensor(DocArg),
    /// The trace of the base category, and the enriched trace when braided.
    Trace(DocArg),
    /// Check the unital lift of a module section.
    Lift(LiftArgs),
    /// Emit an example document.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct DocArg {
    /// Path to a document.
    path: PathBuf,
}

#[derive(Args)]
struct RigidArgs {
    path: PathBuf,
    /// Write the document back with the certificate embedded.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LiftArgs {
    path: PathBuf,
    /// Name of the module section to check (default: the first one).
    #[arg(long)]
    module: Option<String>,
}

#[derive(Args)]
struct GenerateArgs {
    /// One of: zero, linear-semigroup, bimodule-proj, group-proj,
    /// commutative-proj.
    kind: String,
    /// Ground field: Q or GFp:<p>.
    #[arg(long, default_value = "Q")]
    field: String,
    /// Object labels for `zero` (comma separated).
    #[arg(long, default_value = "A,B")]
    objects: String,
    /// Elements for `linear-semigroup` (comma separated).
    #[arg(long, default_value = "y,0")]
    elements: String,
    /// Multiplication table rows for `linear-semigroup`, as indices:
    /// "0,1;1,1" means y*y=y, y*0=0, 0*y=0, 0*0=0.
    #[arg(long, default_value = "0,1;1,1")]
    table: String,
    /// Algebra preset for the bimodule and commutative generators:
    /// k, dual-numbers, or kxk.
    #[arg(long, default_value = "dual-numbers")]
    algebra: String,
    /// Group preset for `group-proj`: z2 or cyclic:<n>.
    #[arg(long, default_value = "z2")]
    group: String,
    /// Characteristic for `group-proj`.
    #[arg(long, default_value_t = 2)]
    char: u64,
    /// Attach a module section: regular or zero-action.
    #[arg(long)]
    module: Option<String>,
    /// Output path (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_doc(path: &PathBuf) -> Result<Document, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    load(&text).map_err(|e| e.to_string())
}

fn emit(cli: &Cli, report: &Value, human: &[String]) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(report).unwrap());
    } else {
        for line in human {
            println!("{line}");
        }
    }
}

fn get_certificate(
    cli: &Cli,
    doc: &Document,
) -> Result<RigidityCertificate, Box<semicat::rigidity::RigidityFailure>> {
    if let Some(cert) = &doc.rigidity {
        return Ok(cert.clone());
    }
    certificate_search(&doc.semigroup, cli.max_dual_mult, cli.seed).map_err(Box::new)
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Validate(a) => {
            let doc = read_doc(&a.path)?;
            let pres = validate_presentation(&doc.semigroup.base);
            let semi = validate_semigroup(&doc.semigroup);
            let mut modreps = Vec::new();
            for (name, m) in &doc.modules {
                modreps.push((name.clone(), validate_module(&doc.semigroup, m)));
            }
            let pass = pres.pass && semi.pass && modreps.iter().all(|(_, r)| r.pass);
            let report = json!({
                "command": "validate",
                "seed": cli.seed,
                "presentation": pres,
                "semigroup": semi,
                "modules": modreps.iter().map(|(n, r)| json!({"name": n, "report": r})).collect::<Vec<_>>(),
                "pass": pass,
            });
            let mut lines = vec![
                format!("presentation: {}", verdict(pres.pass)),
                format!("semigroup structure: {}", verdict(semi.pass)),
            ];
            for v in pres.violations.iter().chain(semi.violations.iter()) {
                lines.push(format!("  {}: {}", v.rule, v.witness));
            }
            for (n, r) in &modreps {
                lines.push(format!("module {n}: {}", verdict(r.pass)));
                for v in &r.violations {
                    lines.push(format!("  {v}"));
                }
            }
            emit(cli, &report, &lines);
            Ok(exit_pass(pass))
        }
        Command::Rigid(a) => {
            let doc = read_doc(&a.path)?;
            match get_certificate(cli, &doc) {
                Ok(cert) => {
                    let mut all = true;
                    let mut lines = Vec::new();
                    let mut entries = Vec::new();
                    for (x, adj) in cert.right.iter().enumerate() {
                        let rep = verify_adjunction(&doc.semigroup, adj);
                        all &= rep.pass;
                        lines.push(format!(
                            "right dual of {}: {:?} ({})",
                            doc.semigroup.base.objects[x],
                            adj.fdual.0.iter().map(|&i| doc.semigroup.base.objects[i].clone()).collect::<Vec<_>>(),
                            verdict(rep.pass)
                        ));
                        entries.push(json!({"object": doc.semigroup.base.objects[x], "side": "right", "report": rep}));
                    }
                    for (x, adj) in cert.left.iter().enumerate() {
                        let rep = verify_adjunction(&doc.semigroup, adj);
                        all &= rep.pass;
                        lines.push(format!(
                            "left dual of {}: {:?} ({})",
                            doc.semigroup.base.objects[x],
                            adj.fobj.0.iter().map(|&i| doc.semigroup.base.objects[i].clone()).collect::<Vec<_>>(),
                            verdict(rep.pass)
                        ));
                        entries.push(json!({"object": doc.semigroup.base.objects[x], "side": "left", "report": rep}));
                    }
                    let report = json!({
                        "command": "rigid",
                        "seed": cli.seed,
                        "max_dual_mult": cli.max_dual_mult,
                        "pass": all,
                        "adjunctions": entries,
                    });
                    emit(cli, &report, &lines);
                    if let Some(out) = &a.output {
                        let mut doc2 = doc;
                        doc2.rigidity = Some(cert);
                        std::fs::write(out, store(&doc2)).map_err(|e| e.to_string())?;
                    }
                    Ok(exit_pass(all))
                }
                Err(fail) => {
                    let report = json!({
                        "command": "rigid",
                        "seed": cli.seed,
                        "max_dual_mult": cli.max_dual_mult,
                        "pass": false,
                        "failure": *fail,
                    });
                    let lines = vec![
                        format!(
                            "no {} dual found for {} within multiplicity {} ({} candidates tried)",
                            fail.side, fail.object, cli.max_dual_mult, fail.candidates_tried
                        ),
                        format!(
                            "naive self-duality diagnostic: zigzag axiom {}",
                            fail.naive_report
                                .axiom_iii
                                .witness
                                .clone()
                                .unwrap_or_else(|| "passes".into())
                        ),
                    ];
                    emit(cli, &report, &lines);
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Unit(a) => {
            let doc = read_doc(&a.path)?;
            let cert = get_certificate(cli, &doc).map_err(|f| format!("not rigid: no {} dual for {}", f.side, f.object))?;
            let u = unit_general(&doc.semigroup, &cert);
            let rep = unit_verify(&doc.semigroup, &cert, &u).map_err(|e| e.to_string())?;
            let bar = (0..doc.semigroup.n())
                .find(|&f| is_liberal(&doc.semigroup, f).0)
                .map(|f| {
                    let ub = unit_bar(&doc.semigroup, &cert, f).expect("liberality checked");
                    let rad = semicat::fincat::radical(&doc.semigroup.base).ok();
                    let agree = matches!(
                        presheaf_iso(&doc.semigroup.base, rad.as_ref(), &ub, &u.presheaf, cli.seed, 8),
                        IsoResult::Isomorphic(_)
                    );
                    (f, ub.dims.clone(), agree)
                });
            let pass = rep.pass && bar.as_ref().map_or(true, |(_, _, agree)| *agree);
            let report = json!({
                "command": "unit",
                "seed": cli.seed,
                "unit_dims": u.presheaf.dims,
                "verify": rep,
                "bar": bar.as_ref().map(|(f, dims, agree)| json!({
                    "liberal_object": doc.semigroup.base.objects[*f],
                    "dims": dims,
                    "agrees_with_general": agree,
                })),
                "pass": pass,
            });
            let mut lines = vec![
                format!("unit dimension vector: {:?}", u.presheaf.dims),
                format!("unitality (exact unitors both sides): {}", verdict(rep.pass)),
                format!("dim End(unit) = {}, simple: {}", rep.dim_end, rep.unit_simple),
            ];
            if let Some((f, dims, agree)) = &bar {
                lines.push(format!(
                    "bar construction on liberal {}: dims {:?}, agrees: {}",
                    doc.semigroup.base.objects[*f], dims, agree
                ));
            }
            lines.extend(rep.failures.iter().cloned());
            emit(cli, &report, &lines);
            Ok(exit_pass(pass))
        }
        Command::Ansatz(a) => {
            let doc = read_doc(&a.path)?;
            let cert = get_certificate(cli, &doc).map_err(|f| format!("not rigid: no {} dual for {}", f.side, f.object))?;
            let ur = unit_ansatz(&doc.semigroup, &cert, Side::Right).map_err(|e| e.to_string())?;
            let ul = unit_ansatz(&doc.semigroup, &cert, Side::Left).map_err(|e| e.to_string())?;
            let iso = ansatz_iso(&doc.semigroup, &cert, &ur, &ul).map_err(|e| e.to_string())?;
            let round = iso.phi.compose(&iso.psi).is_identity() && iso.psi.compose(&iso.phi).is_identity();
            let u = unit_general(&doc.semigroup, &cert);
            let rad = semicat::fincat::radical(&doc.semigroup.base).ok();
            let agree = matches!(
                presheaf_iso(&doc.semigroup.base, rad.as_ref(), &ur.presheaf, &u.presheaf, cli.seed, 8),
                IsoResult::Isomorphic(_)
            );
            let pass = round && agree && ur.presheaf.dims == ul.presheaf.dims;
            let report = json!({
                "command": "ansatz",
                "seed": cli.seed,
                "right_dims": ur.presheaf.dims,
                "left_dims": ul.presheaf.dims,
                "comparison_isos_compose_to_id": round,
                "agrees_with_general_unit": agree,
                "pass": pass,
            });
            let lines = vec![
                format!("right transformation unit dims: {:?}", ur.presheaf.dims),
                format!("left transformation unit dims: {:?}", ul.presheaf.dims),
                format!("comparison maps compose to identities: {}", verdict(round)),
                format!("isomorphic to the coequalizer unit: {}", verdict(agree)),
            ];
            emit(cli, &report, &lines);
            Ok(exit_pass(pass))
        }
        Command::Decat(a) => {
            let doc = read_doc(&a.path)?;
            let s = &doc.semigroup;
            let (trivial, witness) = jcell_trivial(s);
            let pf = if trivial { pf_idempotent(s, cli.tol).ok() } else { None };
            let cone = pf.as_ref().map(|p| {
                let action: Vec<Vec<Vec<u64>>> =
                    (0..s.n()).map(|i| gr_action(s, &Fo::one(i), GrSide::Left)).collect();
                cone_idempotent_check(&action, &p.e, cli.tol)
            });
            let pass = trivial && pf.as_ref().map_or(false, |p| p.idempotency_defect <= 1e-9);
            let report = json!({
                "command": "decat",
                "tolerance": cli.tol,
                "sum_matrix_left": gr_sum_matrix(s, GrSide::Left),
                "sum_matrix_right": gr_sum_matrix(s, GrSide::Right),
                "reachability_trivial": trivial,
                "witness": witness.map(|(f, g)| (s.base.objects[f].clone(), s.base.objects[g].clone())),
                "pf": pf,
                "cone_check": cone,
                "pass": pass,
            });
            let mut lines = vec![format!("reachability-trivial: {trivial}")];
            if let Some(p) = &pf {
                lines.push(format!(
                    "spectral radius {} (tolerance {}), idempotency defect {:.3e}{}",
                    p.lambda,
                    p.tolerance,
                    p.idempotency_defect,
                    p.averaged_period.map_or(String::new(), |q| format!(", averaged over period {q}"))
                ));
                lines.push(format!("idempotent coefficients: {:?}", p.e));
            }
            if let Some(cc) = &cone {
                lines.push(format!("cone idempotent conditions: {}", verdict(cc.pass)));
            }
            emit(cli, &report, &lines);
            Ok(exit_pass(pass))
        }
        Command::Disimple(a) => {
            let doc = read_doc(&a.path)?;
            let m = ModuleCatData::regular(&doc.semigroup);
            let left = stability_report(&doc.semigroup, &m, StableSide::Left).map_err(|e| e.to_string())?;
            let right = stability_report(&doc.semigroup, &m, StableSide::Right).map_err(|e| e.to_string())?;
            let pass = left.simple_transitive && right.simple_transitive;
            let report = json!({
                "command": "disimple",
                "left": left,
                "right": right,
                "disimple": pass,
            });
            let lines = vec![
                side_line("left", &left),
                side_line("right", &right),
                format!("disimple: {pass}"),
            ];
            emit(cli, &report, &lines);
            Ok(exit_pass(pass))
        }
        Command::DecideTensor(a) => {
            let doc = read_doc(&a.path)?;
            let cert = get_certificate(cli, &doc).map_err(|f| format!("not rigid: no {} dual for {}", f.side, f.object))?;
            let v = decide_finite_tensor(&doc.semigroup, &cert).map_err(|e| e.to_string())?;
            let report = json!({
                "command": "decide-tensor",
                "seed": cli.seed,
                "verdict": if v.verdict { "yes" } else { "no" },
                "evidence": v,
            });
            let mut lines = vec![format!(
                "finite tensor category: {}",
                if v.verdict { "yes" } else { "no" }
            )];
            if !v.left.transitive {
                lines.push(format!("certificate: left transitivity fails {:?}", v.left.transitivity_witness));
            } else if !v.left.simple_transitive {
                lines.push(format!(
                    "certificate: nonzero stable ideal inside the radical, dims {:?}",
                    v.left.max_stable_ideal_dims
                ));
            }
            if !v.right.simple_transitive && v.left.simple_transitive {
                lines.push("certificate: right side fails".into());
            }
            lines.push(format!(
                "cross-check: dim End(unit) = {}, unit simple: {}{}",
                v.dim_end_unit,
                v.unit_simple,
                if v.internal_inconsistency { " [INTERNAL INCONSISTENCY]" } else { "" }
            ));
            emit(cli, &report, &lines);
            if v.internal_inconsistency {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::from(0))
        }
        Command::Trace(a) => {
            let doc = read_doc(&a.path)?;
            let tr = trace_k(&doc.semigroup.base, Some(&doc.semigroup));
            let enriched = if doc.semigroup.braid.is_some() {
                match get_certificate(cli, &doc) {
                    Ok(cert) => {
                        let et = enriched_trace(&doc.semigroup, &cert).map_err(|e| e.to_string())?;
                        let u = unit_general(&doc.semigroup, &cert);
                        let rad = semicat::fincat::radical(&doc.semigroup.base).ok();
                        let agree = matches!(
                            presheaf_iso(&doc.semigroup.base, rad.as_ref(), &et, &u.presheaf, cli.seed, 8),
                            IsoResult::Isomorphic(_)
                        );
                        Some((et.dims.clone(), et.total_dim(), agree))
                    }
                    Err(_) => None,
                }
            } else {
                None
            };
            let pass = enriched.as_ref().map_or(true, |(_, _, agree)| *agree);
            let report = json!({
                "command": "trace",
                "seed": cli.seed,
                "trace_dim": tr.dim,
                "multiplication": tr.multiplication,
                "enriched": enriched.as_ref().map(|(dims, total, agree)| json!({
                    "dims": dims, "total": total, "matches_unit": agree,
                })),
                "pass": pass,
            });
            let mut lines = vec![format!("trace dimension: {}", tr.dim)];
            if let Some((dims, total, agree)) = &enriched {
                lines.push(format!(
                    "enriched trace dims {:?} (total {total}), matches the unit: {agree}",
                    dims
                ));
            }
            emit(cli, &report, &lines);
            Ok(exit_pass(pass))
        }
        Command::Lift(a) => {
            let doc = read_doc(&a.path)?;
            let (name, m) = match &a.module {
                Some(n) => doc
                    .modules
                    .iter()
                    .find(|(nm, _)| nm == n)
                    .ok_or_else(|| format!("no module section named {n:?}"))?,
                None => doc.modules.first().ok_or("document has no module sections")?,
            };
            let cert = get_certificate(cli, &doc).map_err(|f| format!("not rigid: no {} dual for {}", f.side, f.object))?;
            let unit = unit_general(&doc.semigroup, &cert);
            let rep = unital_lift_check(&doc.semigroup, m, &cert, &unit, cli.seed)
                .map_err(|e| e.to_string())?;
            let report = json!({
                "command": "lift",
                "seed": cli.seed,
                "module": name,
                "report": rep,
            });
            let mut lines = vec![
                format!("module {name}: unital lift {}", verdict(rep.pass)),
                format!("  action surjective onto the module: {}", rep.surjective_action),
            ];
            lines.extend(rep.failures.iter().map(|f| format!("  {f}")));
            emit(cli, &report, &lines);
            Ok(exit_pass(rep.pass))
        }
        Command::Generate(a) => {
            let field = parse_field(&a.field)?;
            let s = match a.kind.as_str() {
                "zero" => {
                    let labels: Vec<&str> = a.objects.split(',').collect();
                    gen::zero_semigroup(field, &labels)
                }
                "linear-semigroup" => {
                    let elements: Vec<&str> = a.elements.split(',').collect();
                    let table: Vec<Vec<usize>> = a
                        .table
                        .split(';')
                        .map(|row| {
                            row.split(',')
                                .map(|x| x.trim().parse::<usize>().map_err(|e| e.to_string()))
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    gen::linear_semigroup(field, &elements, &table).map_err(|e| e.to_string())?
                }
                "bimodule-proj" => gen::bimodule_proj(&algebra_preset(&a.algebra, field)?)
                    .map_err(|e| e.to_string())?,
                "group-proj" => {
                    let group = group_preset(&a.group)?;
                    gen::group_proj(&group, FieldSpec::Fp(a.char)).map_err(|e| e.to_string())?
                }
                "commutative-proj" => gen::commutative_proj(&algebra_preset(&a.algebra, field)?)
                    .map_err(|e| e.to_string())?,
                other => return Err(format!("unknown generator kind {other:?}")),
            };
            let mut modules = Vec::new();
            match a.module.as_deref() {
                Some("regular") => modules.push(("regular".to_string(), ModuleCatData::regular(&s))),
                Some("zero-action") => {
                    modules.push(("zero-action".to_string(), ModuleCatData::zero_action(&s, s.base.field)))
                }
                Some(other) => return Err(format!("unknown module preset {other:?}")),
                None => {}
            }
            // generated documents must pass their own validators
            if !validate_presentation(&s.base).pass || !validate_semigroup(&s).pass {
                return Err("internal: generated document fails validation".into());
            }
            let doc = Document {
                field: s.base.field,
                semigroup: s,
                rigidity: None,
                modules,
                metadata: BTreeMap::from([("generator".to_string(), a.kind.clone())]),
            };
            let text = store(&doc);
            match &a.output {
                Some(p) => std::fs::write(p, text).map_err(|e| e.to_string())?,
                None => print!("{text}"),
            }
            Ok(ExitCode::from(0))
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn exit_pass(pass: bool) -> ExitCode {
    ExitCode::from(if pass { 0 } else { 1 })
}

fn side_line(name: &str, rep: &semicat::simplicity::StabilityReport) -> String {
    format!(
        "{name}: transitive {}, simple transitive {}{}",
        rep.transitive,
        rep.simple_transitive,
        if rep.simple_transitive {
            String::new()
        } else if !rep.transitive {
            format!(" (witness {:?})", rep.transitivity_witness)
        } else {
            format!(" (stable ideal dims {:?})", rep.max_stable_ideal_dims)
        }
    )
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    if s == "Q" {
        return Ok(FieldSpec::Q);
    }
    if let Some(rest) = s.strip_prefix("GFp:").or_else(|| s.strip_prefix("GF")) {
        let p: u64 = rest.trim_start_matches(':').parse().map_err(|e| format!("{e}"))?;
        let f = FieldSpec::Fp(p);
        if !f.is_valid() {
            return Err(format!("{p} is not prime"));
        }
        return Ok(f);
    }
    Err(format!("unknown field {s:?}; use Q or GFp:<p>"))
}

fn algebra_preset(name: &str, field: FieldSpec) -> Result<gen::AlgebraSpec, String> {
    match name {
        "k" => Ok(gen::algebra_k(field)),
        "dual-numbers" => Ok(gen::algebra_dual_numbers(field)),
        "kxk" => Ok(gen::algebra_k_times_k(field)),
        other => Err(format!("unknown algebra preset {other:?}")),
    }
}

fn group_preset(name: &str) -> Result<gen::GroupSpec, String> {
    if name == "z2" {
        return Ok(gen::group_z2());
    }
    if let Some(n) = name.strip_prefix("cyclic:") {
        let n: usize = n.parse().map_err(|e| format!("{e}"))?;
        if n == 0 {
            return Err("cyclic group order must be positive".into());
        }
        return Ok(gen::group_cyclic(n));
    }
    Err(format!("unknown group preset {name:?}"))
}
