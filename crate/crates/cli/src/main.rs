use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use curvature_core::algebra::scalar::parse_rational;
use curvature_core::fixtures;
use curvature_core::formats::{self, LoadedScenario};
use curvature_core::operator::{
    check_binomial, check_cda_axioms, check_curvature_ideal_nilpotent, check_normal_form,
    check_power_commutation, check_structural_identities, check_unit_annihilation,
    first_nonvanishing, iterate_d, nilpotency_index, spanning_test_set, verify_bound_4n_minus_2,
    CurvedDga, LinearOperator, Nilpotency, TestSet,
};
use curvature_core::persistence::{
    compute_barcode, curvature_filtration, match_bars, verify_stability, Bar, Barcode, Side,
};
use curvature_core::report::Claim;
use curvature_core::{parse_element, Element};

type Error = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(name = "curvature", version, about = "Exact checks for curved dg-algebras and curvature-controlled persistence")]
struct Cli {
    /// Word-length cutoff of the spanning test sets.
    #[arg(long, global = true, default_value_t = 3)]
    max_word_len: usize,
    /// Longest word any rewrite may produce before aborting.
    #[arg(long, global = true, default_value_t = 32)]
    rewrite_cutoff: usize,
    /// Largest operator power examined.
    #[arg(long, global = true, default_value_t = 10)]
    max_power: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OperatorChoice {
    D,
    AdC,
    LeftC,
    RightC,
}

#[derive(clap::Args)]
struct DgaArg {
    /// Curved dg-algebra file; defaults to the built-in counterexample.
    #[arg(long)]
    dga: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ScenarioArg {
    /// Scenario file; defaults to the built-in toy scenario.
    #[arg(long)]
    scenario: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check d^2 = ad_c, d(c) = 0 and the structural identities.
    VerifyAxioms(DgaArg),
    /// Compare d^k with its normal form for k <= --max-power.
    NormalForm {
        #[command(flatten)]
        dga: DgaArg,
        /// Elements to test (expression grammar); defaults to the test set.
        #[arg(long = "element")]
        elements: Vec<String>,
    },
    /// Compare (ad_c)^r with its binomial expansion for r <= --max-power.
    Binomial {
        #[command(flatten)]
        dga: DgaArg,
        #[arg(long = "element")]
        elements: Vec<String>,
    },
    /// Smallest k <= --max-power with op^k = 0 on the test set.
    Nilpotency {
        #[command(flatten)]
        dga: DgaArg,
        #[arg(long, value_enum, default_value_t = OperatorChoice::D)]
        operator: OperatorChoice,
    },
    /// Given c^n = 0, check d^{4n-2} = 0 and probe d^{4n-3}.
    #[command(name = "bound4n2")]
    Bound4n2 {
        #[command(flatten)]
        dga: DgaArg,
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// Check that products with n separated copies of c vanish, then d^{2n} = 0.
    IdealCheck {
        #[command(flatten)]
        dga: DgaArg,
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// The built-in counterexample to d^4 = 0 under c^2 = 0.
    Counterexample,
    /// Barcode of the filtration induced by one curvature.
    Barcode {
        #[command(flatten)]
        scenario: ScenarioArg,
        #[arg(long)]
        curvature: String,
        /// Write `<dim> <birth> <death>` lines here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bottleneck distances against the sup shift and the Lipschitz bound.
    Stability {
        #[command(flatten)]
        scenario: ScenarioArg,
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
    },
    /// A matching of cost <= eps between the two barcodes.
    Match {
        #[command(flatten)]
        scenario: ScenarioArg,
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyAxioms(_) => "verify-axioms",
            Command::NormalForm { .. } => "normal-form",
            Command::Binomial { .. } => "binomial",
            Command::Nilpotency { .. } => "nilpotency",
            Command::Bound4n2 { .. } => "bound4n2",
            Command::IdealCheck { .. } => "ideal-check",
            Command::Counterexample => "counterexample",
            Command::Barcode { .. } => "barcode",
            Command::Stability { .. } => "stability",
            Command::Match { .. } => "match",
        }
    }
}

struct RunReport {
    command: String,
    parameters: Map<String, Value>,
    results: Vec<Claim>,
    elapsed_ms: u128,
}

impl RunReport {
    fn pass(&self) -> bool {
        self.results.iter().all(|c| c.pass)
    }

    fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results.iter().map(Claim::to_json).collect::<Vec<_>>(),
            "timing": {"elapsed_ms": self.elapsed_ms as u64},
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.parameters {
            out.push_str(&format!("  {k} = {}\n", plain(v)));
        }
        let width = self.results.iter().map(|c| c.claim.len()).max().unwrap_or(5).max(5);
        out.push_str(&format!("{:<4}  {:<width$}  witness\n", "pass", "claim"));
        for c in &self.results {
            let witness = c.witness.as_ref().map_or("-".to_string(), Element::to_string);
            let mark = if c.pass { "ok" } else { "FAIL" };
            out.push_str(&format!("{mark:<4}  {:<width$}  {witness}\n", c.claim));
            for (k, v) in &c.parameters {
                out.push_str(&format!("        {k} = {}\n", plain(v)));
            }
        }
        let verdict = if self.pass() { "pass" } else { "fail" };
        out.push_str(&format!("result: {verdict} ({} ms)\n", self.elapsed_ms));
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

struct Ctx {
    max_word_len: usize,
    rewrite_cutoff: usize,
    max_power: u32,
}

impl Ctx {
    fn dga(&self, arg: &DgaArg) -> Result<CurvedDga, Error> {
        match &arg.dga {
            None => Ok(fixtures::counterexample_dga_with_limit(self.rewrite_cutoff)),
            Some(path) => {
                let text = formats::read_file(path)?;
                Ok(formats::load_dga(&text, path.parent(), self.rewrite_cutoff)?)
            }
        }
    }

    fn scenario(&self, arg: &ScenarioArg) -> Result<LoadedScenario, Error> {
        let (text, base): (String, Option<&Path>) = match &arg.scenario {
            None => (fixtures::TOY_SCENARIO_JSON.to_string(), None),
            Some(path) => (formats::read_file(path)?, path.parent()),
        };
        Ok(formats::load_scenario(&text, base, self.rewrite_cutoff)?)
    }

    fn test_set(&self, dga: &CurvedDga) -> Result<TestSet, Error> {
        Ok(spanning_test_set(dga.presentation(), self.max_word_len)?)
    }
}

fn source(path: &Option<PathBuf>) -> Value {
    match path {
        Some(p) => Value::String(p.display().to_string()),
        None => Value::String("built-in".into()),
    }
}

fn describe_dga(params: &mut Map<String, Value>, arg: &DgaArg, dga: &CurvedDga) {
    params.insert("dga".into(), source(&arg.dga));
    params.insert("curvature".into(), Value::String(dga.curvature().to_string()));
    params.insert("presentation".into(), Value::String(dga.presentation().to_string()));
}

fn elements_or_test_set(
    dga: &CurvedDga,
    given: &[String],
    ts: &TestSet,
) -> Result<Vec<Element>, Error> {
    if given.is_empty() {
        return Ok(ts.elements().to_vec());
    }
    given
        .iter()
        .map(|s| parse_element(s, dga.presentation()).map_err(Error::from))
        .collect()
}

fn bar_json(b: &Bar) -> Value {
    json!([b.dim, b.birth.to_string(), b.death.to_string()])
}

fn barcode_json(b: &Barcode) -> Value {
    Value::Array(b.bars().iter().map(bar_json).collect())
}

fn run(cli: &Cli, params: &mut Map<String, Value>) -> Result<Vec<Claim>, Error> {
    let ctx = Ctx {
        max_word_len: cli.max_word_len,
        rewrite_cutoff: cli.rewrite_cutoff,
        max_power: cli.max_power,
    };
    params.insert("max_word_len".into(), json!(ctx.max_word_len));
    params.insert("rewrite_cutoff".into(), json!(ctx.rewrite_cutoff));
    params.insert("max_power".into(), json!(ctx.max_power));

    match &cli.command {
        Command::VerifyAxioms(arg) => {
            let dga = ctx.dga(arg)?;
            describe_dga(params, arg, &dga);
            let ts = ctx.test_set(&dga)?;
            let axioms = check_cda_axioms(&dga, &ts)?;
            let mut claims: Vec<Claim> = axioms.claims().into_iter().cloned().collect();
            claims.extend(check_structural_identities(&dga, dga.curvature(), &ts)?);
            claims.push(check_power_commutation(&dga, 4, &ts)?);
            claims.push(check_unit_annihilation(&dga, ctx.max_power / 2)?);
            Ok(claims)
        }
        Command::NormalForm { dga: arg, elements } => {
            let dga = ctx.dga(arg)?;
            describe_dga(params, arg, &dga);
            let ts = ctx.test_set(&dga)?;
            let els = elements_or_test_set(&dga, elements, &ts)?;
            Ok(vec![check_normal_form(&dga, ctx.max_power, &els)?])
        }
        Command::Binomial { dga: arg, elements } => {
            let dga = ctx.dga(arg)?;
            describe_dga(params, arg, &dga);
            let ts = ctx.test_set(&dga)?;
            let els = elements_or_test_set(&dga, elements, &ts)?;
            Ok(vec![check_binomial(&dga, ctx.max_power, &els)?])
        }
        Command::Nilpotency { dga: arg, operator } => {
            let dga = ctx.dga(arg)?;
            describe_dga(params, arg, &dga);
            let ts = ctx.test_set(&dga)?;
            let (label, op) = match operator {
                OperatorChoice::D => ("d", dga.d().clone()),
                OperatorChoice::AdC => ("ad_c", dga.ad_c().clone()),
                OperatorChoice::LeftC => ("L_c", dga.left_c()),
                OperatorChoice::RightC => ("R_c", dga.right_c()),
            };
            params.insert("operator".into(), json!(label));
            let claim = match nilpotency_index(&op, &ts, ctx.max_power)? {
                Nilpotency::Index { index, witness, image } => {
                    Claim::new(format!("{label} is nilpotent on test set"), true)
                        .with_witness(Some(witness))
                        .param("index", index)
                        .element_param("last nonzero image", &image)
                }
                Nilpotency::NotFound { max_k } => {
                    Claim::new(format!("{label} is nilpotent on test set"), false).param("max_k", max_k)
                }
            };
            Ok(vec![claim])
        }
        Command::Bound4n2 { dga: arg, n } => {
            let dga = ctx.dga(arg)?;
            describe_dga(params, arg, &dga);
            params.insert("n".into(), json!(n));
            let ts = ctx.test_set(&dga)?;
            let r = verify_bound_4n_minus_2(&dga, *n, &ts)?;
            Ok(vec![
                Claim::new(format!("c^{n} = 0"), true),
                r.ad_c_vanishes,
                r.d_vanishes,
                r.sharp,
            ])
        }
        Command::IdealCheck { dga: arg, n } => {
            let dga = ctx.dga(arg)?;
            describe_dga(params, arg, &dga);
            params.insert("n".into(), json!(n));
            let ts = ctx.test_set(&dga)?;
            let r = check_curvature_ideal_nilpotent(&dga, *n, &ts)?;
            let mut claims = vec![r.nilpotent];
            claims.extend(r.d_vanishes);
            Ok(claims)
        }
        Command::Counterexample => {
            let dga = fixtures::counterexample_dga_with_limit(ctx.rewrite_cutoff);
            params.insert("dga".into(), json!("built-in"));
            params.insert("curvature".into(), Value::String(dga.curvature().to_string()));
            params.insert("presentation".into(), Value::String(dga.presentation().to_string()));
            let ts = ctx.test_set(&dga)?;
            counterexample_claims(&dga, &ts, ctx.max_power)
        }
        Command::Barcode { scenario, curvature, out } => {
            let s = ctx.scenario(scenario)?;
            params.insert("scenario".into(), source(&scenario.scenario));
            params.insert("curvature".into(), json!(curvature));
            let c = s.curvature(curvature)?;
            let f = curvature_filtration(&s.complex, &s.spec, c)?;
            let b = compute_barcode(&s.complex, &f);
            if let Some(path) = out {
                std::fs::write(path, b.to_text())
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                params.insert("out".into(), Value::String(path.display().to_string()));
            }
            let mut claim = Claim::new("barcode computed", true)
                .element_param("c", c)
                .param("bars", barcode_json(&b));
            let top = s.complex.dim().unwrap_or(0);
            for d in 0..=top {
                if let Some(p) = b.prominent(d) {
                    claim = claim.param(&format!("prominent_dim{d}"), bar_json(p));
                }
            }
            Ok(vec![claim])
        }
        Command::Stability { scenario, c1, c2 } => {
            let s = ctx.scenario(scenario)?;
            params.insert("scenario".into(), source(&scenario.scenario));
            params.insert("c1".into(), json!(c1));
            params.insert("c2".into(), json!(c2));
            let r = verify_stability(&s.complex, &s.spec, s.curvature(c1)?, s.curvature(c2)?)?;
            params.insert("summary".into(), r.summary_json());
            Ok(r.claims)
        }
        Command::Match { scenario, c1, c2, eps, dim } => {
            let s = ctx.scenario(scenario)?;
            let eps_q = parse_rational(eps)?;
            params.insert("scenario".into(), source(&scenario.scenario));
            params.insert("c1".into(), json!(c1));
            params.insert("c2".into(), json!(c2));
            params.insert("eps".into(), json!(eps_q.to_string()));
            params.insert("dim".into(), json!(dim));
            let b1 = compute_barcode(&s.complex, &curvature_filtration(&s.complex, &s.spec, s.curvature(c1)?)?);
            let b2 = compute_barcode(&s.complex, &curvature_filtration(&s.complex, &s.spec, s.curvature(c2)?)?);
            Ok(match_claims(&b1, &b2, &eps_q, *dim))
        }
    }
}

fn counterexample_claims(dga: &CurvedDga, ts: &TestSet, max_power: u32) -> Result<Vec<Claim>, Error> {
    let p = dga.presentation();
    let y = parse_element("y", p)?;
    let mut claims = Vec::new();
    for (k, expected) in [(2u32, "x y - y x"), (4, "-2 x y x")] {
        let expected = parse_element(expected, p)?;
        let got = iterate_d(dga, k, &y)?;
        claims.push(
            Claim::new(format!("d^{k}(y) = {expected}"), got == expected)
                .with_witness(Some(got.clone()))
                .param("k", k),
        );
        if k == 4 {
            claims.push(Claim::new("d^4(y) != 0", !got.is_zero()).with_witness(Some(got)));
        }
    }
    let probe = |label: &str, op: LinearOperator, zero: bool| -> Result<Claim, Error> {
        let hit = first_nonvanishing(&op, ts)?;
        let text = if zero { format!("{label} = 0 on test set") } else { format!("{label} != 0 on test set") };
        let mut c = Claim::new(text, hit.is_none() == zero).param("max_word_len", ts.max_word_len());
        if let Some((a, img)) = hit {
            c = c.with_witness(Some(a)).element_param("image", &img);
        }
        Ok(c)
    };
    claims.push(probe("d^5", dga.d().power(5), false)?);
    claims.push(probe("d^6", dga.d().power(6), true)?);
    claims.push(probe("(ad_c)^3", dga.ad_c().power(3), true)?);
    claims.push(match nilpotency_index(dga.d(), ts, max_power)? {
        Nilpotency::Index { index, witness, image } => Claim::new("nilpotency index of d is 6", index == 6)
            .with_witness(Some(witness))
            .param("index", index)
            .element_param("last nonzero image", &image),
        Nilpotency::NotFound { max_k } => {
            Claim::new("nilpotency index of d is 6", false).param("max_k", max_k)
        }
    });
    Ok(claims)
}

fn match_claims(b1: &Barcode, b2: &Barcode, eps: &curvature_core::Scalar, dim: usize) -> Vec<Claim> {
    let Some(m) = match_bars(b1, b2, eps, dim) else {
        return vec![Claim::new("matching with cost <= eps exists", false)
            .param("barcode_1", barcode_json(b1))
            .param("barcode_2", barcode_json(b2))];
    };
    let pairs: Vec<Value> = m.pairs.iter().map(|(a, b)| json!([bar_json(a), bar_json(b)])).collect();
    let unmatched: Vec<Value> = m
        .unmatched
        .iter()
        .map(|(b, side)| json!({"bar": bar_json(b), "side": if *side == Side::Left { "left" } else { "right" }}))
        .collect();
    let two_eps = eps * curvature_core::Scalar::from_integer(2.into());
    let long_matched = b1
        .in_dim(dim)
        .into_iter()
        .filter(|b| match b.length().finite() {
            Some(len) => len > &two_eps,
            None => true,
        })
        .all(|b| m.partner_of(b).is_some());
    let mut claims = vec![
        Claim::new("matching with cost <= eps exists", m.cost <= *eps)
            .param("cost", m.cost.to_string())
            .param("pairs", Value::Array(pairs))
            .param("unmatched", Value::Array(unmatched)),
        Claim::new("every bar longer than 2 eps has a partner", long_matched),
    ];
    if let Some(p) = b1.prominent(dim) {
        let partner = m.partner_of(p);
        claims.push(
            Claim::new("prominent bar has a partner", partner.is_some())
                .param("bar", bar_json(p))
                .param("partner", partner.map_or(Value::Null, bar_json)),
        );
    }
    claims
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut params = Map::new();
    let results = match run(&cli, &mut params) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = RunReport {
        command: cli.command.name().to_string(),
        parameters: params,
        results,
        elapsed_ms: start.elapsed().as_millis(),
    };
    let text = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.to_json()).unwrap()),
        Format::Text => report.to_text(),
    };
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
