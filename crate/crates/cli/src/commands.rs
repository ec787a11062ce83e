use std::io::Read;

use argshift::criterion::{theorem2_decide, CriterionOptions};
use argshift::liealg::{catalog, AlgebraDocument};
use argshift::pencil::{analyze, FormPair, PencilOptions};
use argshift::poisson::{check_pairwise_commute, is_semiinvariant, SemiInvariance};
use argshift::random;
use argshift::ratpoly::{format_rational, parse_rational};
use argshift::shiftalg::{completeness_direct, extended_generators, mf_generators, TrdegOptions};
use argshift::singular::{fundamental_semiinvariant_with, index_with, sing0_components, IndexOptions};
use argshift::{
    GeneratorSet, IndexCertificate, LieAlgebra, MultiPoly, Rational, ShiftPoint, Tolerance, UniPoly,
};
use serde_json::{json, Value};

use crate::args::{Command, Common};
use crate::error::CliError;

/// Stream used for the default pencil point `x`.
const X_STREAM: u64 = 1 << 40;

/// A report plus whether it records a domain finding.
pub struct Outcome {
    pub report: Value,
    pub finding: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, finding: false }
    }
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    let common = command.common();
    let ctx = Context::new(common)?;
    let mut out = match command {
        Command::Validate(_) => validate(&ctx),
        Command::Index(_) => index(&ctx),
        Command::Semiinvariant(_) => semiinvariant(&ctx),
        Command::Shift(_) => shift(&ctx),
        Command::CommuteCheck(_) => commute_check(&ctx),
        Command::Pencil(_) => pencil(&ctx),
        Command::Completeness(_) => completeness(&ctx),
        Command::Report(_) => report(&ctx),
    }?;
    let obj = out.report.as_object_mut().expect("reports are objects");
    obj.insert("schema".into(), json!(1));
    obj.insert("algebra".into(), json!({ "name": ctx.alg.name(), "dim": ctx.alg.dim() }));
    Ok(out)
}

struct Context<'a> {
    args: &'a Common,
    alg: LieAlgebra,
    tol: Tolerance,
}

impl<'a> Context<'a> {
    fn new(args: &'a Common) -> Result<Self, CliError> {
        let mut tol = Tolerance::default();
        if let Some(t) = args.tol {
            check_tol("tol", t)?;
            tol.rank = t;
            tol.root = t;
        }
        if let Some(t) = args.closure_tol {
            check_tol("closure-tol", t)?;
            tol.closure = t;
        }
        if args.samples == 0 {
            return Err(CliError::flag("samples", "must be positive"));
        }
        let alg = load_algebra(args)?;
        alg.validate()?;
        Ok(Context { args, alg, tol })
    }

    fn cert(&self) -> IndexCertificate {
        index_with(&self.alg, &IndexOptions { seed: self.args.seed, ..IndexOptions::default() })
    }

    fn shift_point(&self, cert: &IndexCertificate) -> Result<ShiftPoint, CliError> {
        match &self.args.a {
            Some(csv) => Ok(ShiftPoint::new(&self.alg, parse_vector("a", csv)?, cert)?),
            None => Ok(ShiftPoint::random(&self.alg, cert, self.args.seed)),
        }
    }

    fn trdeg_opts(&self) -> TrdegOptions {
        TrdegOptions { samples: self.args.samples, seed: self.args.seed, ..TrdegOptions::default() }
    }

    fn criterion_opts(&self) -> CriterionOptions {
        CriterionOptions {
            samples_per_component: self.args.samples,
            seed: self.args.seed,
            tol: self.tol,
            trdeg: self.trdeg_opts(),
            ..CriterionOptions::default()
        }
    }

    fn user_polys(&self) -> Result<Vec<MultiPoly>, CliError> {
        let n = self.alg.dim();
        self.args.polys.iter().map(|s| Ok(MultiPoly::parse(s, n)?)).collect()
    }

    fn extended(&self, a: &ShiftPoint, cert: &IndexCertificate) -> Result<(MultiPoly, GeneratorSet), CliError> {
        let p_g = fundamental_semiinvariant_with(&self.alg, cert)?;
        let gens = extended_generators(&self.alg, a, &p_g)?;
        Ok((p_g, gens))
    }
}

fn check_tol(flag: &'static str, t: f64) -> Result<(), CliError> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(CliError::flag(flag, format!("tolerance must be a finite number >= 0, got {t}")))
    }
}

fn load_algebra(args: &Common) -> Result<LieAlgebra, CliError> {
    if let Some(name) = &args.catalog {
        return Ok(catalog(name)?);
    }
    let path = args.input.as_ref().expect("clap requires a source");
    let mut text = String::new();
    let io = |source| CliError::Io { path: path.clone(), source };
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
    } else {
        text = std::fs::read_to_string(path).map_err(io)?;
    }
    let doc: AlgebraDocument = serde_json::from_str(&text).map_err(|e| CliError::Json {
        line: e.line(),
        column: e.column(),
        message: strip_location(&e.to_string()),
    })?;
    Ok(doc.to_algebra_unchecked()?)
}

fn strip_location(msg: &str) -> String {
    msg.rsplit_once(" at line ").map_or(msg, |(m, _)| m).to_string()
}

fn parse_vector(flag: &'static str, csv: &str) -> Result<Vec<Rational>, CliError> {
    csv.split(',')
        .map(|s| {
            let s = s.trim();
            parse_rational(s).ok_or_else(|| CliError::flag(flag, format!("`{s}` is not a rational number")))
        })
        .collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn poly_strings(ps: &[MultiPoly]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn uni_strings(p: &UniPoly) -> Vec<String> {
    strings(p.coeffs())
}

fn validate(ctx: &Context) -> Result<Outcome, CliError> {
    Ok(Outcome::ok(json!({
        "valid": true,
        "brackets": ctx.alg.brackets().count(),
        "invariants": poly_strings(ctx.alg.invariants()),
    })))
}

fn index(ctx: &Context) -> Result<Outcome, CliError> {
    let cert = ctx.cert();
    let mut report = json!({ "index": cert.index, "rank": cert.t });
    if ctx.args.verbose {
        report["certificate"] = serde_json::to_value(&cert).expect("serializable");
    }
    Ok(Outcome::ok(report))
}

fn semiinvariant(ctx: &Context) -> Result<Outcome, CliError> {
    let cert = ctx.cert();
    let p_g = fundamental_semiinvariant_with(&ctx.alg, &cert)?;
    let character = if p_g.is_constant() { None } else { is_semiinvariant(&ctx.alg, &p_g)?.character().cloned() };
    let components = sing0_components(&p_g, ctx.args.seed)?;
    let mut report = json!({
        "p_g": p_g.to_string(),
        "character": character,
        "sing0_codim": if p_g.is_constant() { json!(">=2") } else { json!(1) },
        "components": components,
    });
    let mut finding = false;
    if !ctx.args.polys.is_empty() {
        let mut checks = Vec::new();
        for (f, text) in ctx.user_polys()?.iter().zip(&ctx.args.polys) {
            let entry = match is_semiinvariant(&ctx.alg, f)? {
                SemiInvariance::SemiInvariant(chi) => json!({ "poly": text, "semiinvariant": true, "character": chi }),
                SemiInvariance::NotSemiInvariant { basis } => {
                    finding = true;
                    json!({ "poly": text, "semiinvariant": false, "failing_basis": basis })
                }
            };
            checks.push(entry);
        }
        report["checks"] = Value::Array(checks);
    }
    Ok(Outcome { report, finding })
}

fn shift(ctx: &Context) -> Result<Outcome, CliError> {
    let cert = ctx.cert();
    let a = ctx.shift_point(&cert)?;
    let classical = mf_generators(&ctx.alg, &a)?;
    let (p_g, extended) = ctx.extended(&a, &cert)?;
    let direct = completeness_direct(&ctx.alg, &extended, &cert, &ctx.trdeg_opts())?;
    let mut report = json!({
        "a": a,
        "p_g": p_g.to_string(),
        "classical": poly_strings(&classical.polys()),
        "extended": poly_strings(&extended.polys()),
        "trdeg": direct.trdeg,
        "b_g": direct.b_g,
        "complete": direct.complete,
    });
    if ctx.args.verbose {
        report["classical_detail"] = serde_json::to_value(&classical).expect("serializable");
        report["extended_detail"] = serde_json::to_value(&extended).expect("serializable");
    }
    Ok(Outcome::ok(report))
}

fn commute_check(ctx: &Context) -> Result<Outcome, CliError> {
    let cert = ctx.cert();
    let a = ctx.shift_point(&cert)?;
    let (source, polys) = if ctx.args.polys.is_empty() {
        ("extended", ctx.extended(&a, &cert)?.1.polys())
    } else {
        ("user", ctx.user_polys()?)
    };
    let witness = check_pairwise_commute(&ctx.alg, a.coords(), &polys)?;
    Ok(Outcome {
        finding: witness.is_some(),
        report: json!({
            "a": a,
            "source": source,
            "polys": poly_strings(&polys),
            "commute": witness.is_none(),
            "witness": witness,
        }),
    })
}

fn pencil(ctx: &Context) -> Result<Outcome, CliError> {
    let n = ctx.alg.dim();
    let cert = ctx.cert();
    let a = match &ctx.args.a {
        Some(csv) => parse_vector("a", csv)?,
        None => ShiftPoint::random(&ctx.alg, &cert, ctx.args.seed).coords().to_vec(),
    };
    let x = match &ctx.args.x {
        Some(csv) => parse_vector("x", csv)?,
        None => random::integer_point(&mut random::rng_for(ctx.args.seed, X_STREAM), n, 10),
    };
    for (flag, v) in [("a", &a), ("x", &x)] {
        if v.len() != n {
            return Err(CliError::flag(flag, format!("expected {n} coordinates, got {}", v.len())));
        }
    }
    let p_g = fundamental_semiinvariant_with(&ctx.alg, &cert)?;
    let minus_a: Vec<Rational> = a.iter().map(|v| -v).collect();
    let hint = if p_g.is_constant() { None } else { Some(p_g.restrict_to_line(&x, &minus_a)?) };
    let pair = FormPair::from_algebra(&ctx.alg, &x, &a)?;
    let opts = PencilOptions { seed: ctx.args.seed, tol: ctx.tol, ..PencilOptions::default() };
    let rep = analyze(pair, hint.as_ref(), opts)?;
    let pass = rep.all_checks_pass();
    Ok(Outcome {
        finding: !pass,
        report: json!({
            "a": strings(&a),
            "x": strings(&x),
            "hint": hint.as_ref().map(uni_strings),
            "all_checks_pass": pass,
            "pencil": rep,
        }),
    })
}

fn completeness(ctx: &Context) -> Result<Outcome, CliError> {
    let cert = ctx.cert();
    let a = ctx.shift_point(&cert)?;
    let verdict = theorem2_decide(&ctx.alg, &a, &ctx.criterion_opts(), ctx.args.verbose)?;
    Ok(Outcome {
        finding: !verdict.agreement,
        report: json!({ "a": a, "verdict": verdict }),
    })
}

fn report(ctx: &Context) -> Result<Outcome, CliError> {
    let cert = ctx.cert();
    let a = ctx.shift_point(&cert)?;
    let classical = mf_generators(&ctx.alg, &a)?;
    let (p_g, extended) = ctx.extended(&a, &cert)?;
    let character = if p_g.is_constant() { None } else { is_semiinvariant(&ctx.alg, &p_g)?.character().cloned() };
    let components = sing0_components(&p_g, ctx.args.seed)?;
    let witness = check_pairwise_commute(&ctx.alg, a.coords(), &extended.polys())?;
    let verdict = theorem2_decide(&ctx.alg, &a, &ctx.criterion_opts(), ctx.args.verbose)?;
    let mut report = json!({
        "a": a,
        "index": cert.index,
        "b_g": verdict.b_g,
        "trdeg": verdict.trdeg,
        "complete": verdict.direct_complete,
        "p_g": p_g.to_string(),
        "character": character,
        "components": components,
        "classical": poly_strings(&classical.polys()),
        "extended": poly_strings(&extended.polys()),
        "commute": { "holds": witness.is_none(), "witness": witness },
        "verdict": verdict,
    });
    if ctx.args.verbose {
        report["certificate"] = serde_json::to_value(&cert).expect("serializable");
    }
    Ok(Outcome { finding: witness.is_some() || !verdict.agreement, report })
}
