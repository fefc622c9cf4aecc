use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;
use tameaut::gens::{
    bad_to_good, build_phi_m_word, classify_monomial, commutator_phi1, delta_conjugation, good_special_composite,
    phi_ijk, Axes, Certificate, GeneratorRecord,
};
use tameaut::search::{default_generators, find_word, rips_probe};
use tameaut::verify::run_suite;
use tameaut::{Endomorphism, Field, GeneratorSet, GeneratorWord, Monomial, Polynomial, FINITE_FIELD_CAVEAT};

use crate::config::{CommonArgs, RunConfig, SearchArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[value(rename_all = "snake_case")]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    PhiM,
    GoodComposite,
    Commutator,
    Delta,
    BadToGood,
}

pub struct ConstructArgs {
    pub name: Construction,
    pub m: u32,
    pub b: String,
    pub k: u16,
    pub mprime: Option<String>,
    pub monomial: Option<String>,
    pub lambda: String,
    pub pivot: Option<String>,
    pub endo_out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn verify(common: &CommonArgs, samples: usize) -> Result<ExitCode> {
    common.validate()?;
    common.require_n(4, "verify")?;
    let fields = common.fields(&[3, 5, 7])?;
    let report = run_suite(&fields, common.n, common.seed, samples)?;
    let mut config = common.run_config("verify", &fields);
    config.samples = Some(samples);
    print!("{}", report.table());
    if let Some(path) = &common.out {
        emit(Some(path), &to_json(&json!({ "config": config, "report": report })))?;
    }
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn compose(common: &CommonArgs, files: &[PathBuf]) -> Result<ExitCode> {
    common.validate()?;
    let mut maps = Vec::with_capacity(files.len());
    for path in files {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        maps.push(Endomorphism::parse_file(&text).with_context(|| format!("in {}", path.display()))?);
    }
    let mut acc = maps[0].clone();
    for next in &maps[1..] {
        acc = acc.compose_capped(next, common.degree_cap)?;
    }
    let mut config = common.run_config("compose", std::slice::from_ref(acc.field()));
    config.n = acc.nvars();
    let header = format!("# config: {}\n", serde_json::to_string(&config).expect("config serializes"));
    emit(common.out.as_deref(), &(header + &acc.render_file()))?;
    Ok(ExitCode::SUCCESS)
}

pub fn classify(common: &CommonArgs, monomial: &str) -> Result<ExitCode> {
    common.validate()?;
    let field = common.field()?;
    let m = Monomial::parse(monomial, common.n)?;
    let class = classify_monomial(&m, field.characteristic())?;
    let config = common.run_config("classify", std::slice::from_ref(&field));
    let report = json!({
        "config": config,
        "monomial": m.render(),
        "characteristic": class.characteristic,
        "verdict": class.verdict,
    });
    emit(common.out.as_deref(), &to_json(&report))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ConstructReport {
    config: RunConfig,
    construction: Construction,
    parameters: serde_json::Value,
    generators: Vec<GeneratorRecord>,
    word: GeneratorWord,
    word_text: String,
    length: u64,
    endomorphism: String,
    closed_form_matches: bool,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    extra: serde_json::Value,
}

fn parse_elem(field: &Field, s: &str, name: &str) -> Result<tameaut::Elem> {
    field.parse(s).with_context(|| format!("bad --{name} `{s}`"))
}

fn required<'a>(v: &'a Option<String>, name: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| anyhow!("--{name} is required for this construction"))
}

pub fn construct(common: &CommonArgs, args: &ConstructArgs) -> Result<ExitCode> {
    common.validate()?;
    common.require_n(4, "construct")?;
    let field = common.field()?;
    let n = common.n;
    let (params, cert, expected, extra): (serde_json::Value, Certificate, Endomorphism, serde_json::Value) = match args
        .name
    {
        Construction::PhiM => {
            let b = parse_elem(&field, &args.b, "b")?;
            let axes = Axes::new(1, 2, 0);
            let cert = build_phi_m_word(&field, n, &b, args.m, axes)?;
            let m = u16::try_from(args.m).context("--m is too large")?;
            let expected = phi_ijk(&field, n, axes.z, axes.x, m, &b)?;
            (json!({ "m": args.m, "b": field.render(&b), "axes": [2, 3, 1] }), cert, expected, serde_json::Value::Null)
        }
        Construction::GoodComposite => {
            let mp = Monomial::parse(required(&args.mprime, "mprime")?, n)?;
            let (cert, expected) = good_special_composite(&field, args.k, &mp)?;
            (json!({ "k": args.k, "mprime": mp.render() }), cert, expected, serde_json::Value::Null)
        }
        Construction::Commutator => {
            let mp = Monomial::parse(required(&args.mprime, "mprime")?, n)?;
            let (cert, expected) = commutator_phi1(&field, &mp)?;
            (json!({ "mprime": mp.render() }), cert, expected, serde_json::Value::Null)
        }
        Construction::Delta => {
            let mp = Monomial::parse(required(&args.mprime, "mprime")?, n)?;
            let res = delta_conjugation(&field, args.k, &mp)?;
            let inner = Polynomial::var(&field, n, 1).add(&Polynomial::term(&field, mp.clone(), field.one()))?;
            let expected = Endomorphism::elementary(0, &inner.pow(args.k as u32 + 1)?)?;
            let extra = json!({ "coefficient_of_x2^k*M'": field.render(res.coeff.elem()) });
            (json!({ "k": args.k, "mprime": mp.render() }), res.certificate, expected, extra)
        }
        Construction::BadToGood => {
            let m = Monomial::parse(required(&args.monomial, "monomial")?, n)?;
            let b = parse_elem(&field, &args.b, "b")?;
            let lambda = parse_elem(&field, &args.lambda, "lambda")?;
            let pivot = match &args.pivot {
                None => None,
                Some(s) => {
                    let (i, j) = s.split_once(',').ok_or_else(|| anyhow!("--pivot takes `i,j`"))?;
                    let i: usize = i.trim().parse().context("bad pivot index")?;
                    let j: usize = j.trim().parse().context("bad pivot index")?;
                    if i == 0 || j == 0 {
                        bail!("pivot indices are one-based");
                    }
                    Some((i - 1, j - 1))
                }
            };
            let phi = Endomorphism::elementary(0, &Polynomial::term(&field, m.clone(), b.clone()))?;
            let res = bad_to_good(&phi, &lambda, pivot)?;
            let generators =
                GeneratorSet::new("bad_to_good", &field, n).with("Lambda", res.lambda_map.clone())?.with("phi", phi)?;
            let cert = Certificate { generators, word: GeneratorWord::parse("Lambda phi Lambda^-1")? };
            let want = field.neg(&field.mul(&lambda, &b));
            let extra = json!({
                "good_monomial": res.good_monomial.render(),
                "good_coefficient": field.render(res.good_coeff.elem()),
                "expected_coefficient": field.render(&want),
                "pivot": [res.pivot.0 + 1, res.pivot.1 + 1],
            });
            let params = json!({ "monomial": m.render(), "b": field.render(&b), "lambda": field.render(&lambda) });
            (params, cert, res.conjugated, extra)
        }
    };
    let got = cert.generators.eval_capped(&cert.word, common.degree_cap)?;
    let matches = got == expected;
    if let Some(path) = &args.endo_out {
        emit(Some(path), &got.render_file())?;
    }
    let report = ConstructReport {
        config: common.run_config("construct", std::slice::from_ref(&field)),
        construction: args.name,
        parameters: params,
        generators: cert.generator_table(),
        word_text: cert.word.render(),
        length: cert.word.length(),
        word: cert.word,
        endomorphism: got.render_file(),
        closed_form_matches: matches,
        extra,
    };
    emit(common.out.as_deref(), &to_json(&report))?;
    Ok(if matches { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn search(
    common: &CommonArgs,
    search: &SearchArgs,
    target: Option<&str>,
    target_file: Option<&Path>,
) -> Result<ExitCode> {
    common.validate()?;
    common.require_n(4, "search")?;
    let field = common.field()?;
    let cfg = search.config(common.degree_cap)?;
    let target = match (target, target_file) {
        (Some(m), None) => {
            let m = Monomial::parse(m, common.n)?;
            Endomorphism::elementary(0, &Polynomial::term(&field, m, field.one()))?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            let e = Endomorphism::parse_file(&text)?;
            if *e.field() != field || e.nvars() != common.n {
                bail!("target file does not match --p/--k/--n");
            }
            e
        }
        _ => bail!("give exactly one of --target and --target-file"),
    };
    let gens = default_generators(&field, common.n)?;
    let start = Instant::now();
    let outcome = find_word(&target, &gens, &cfg)?;
    eprintln!("search finished in {:.3} s", start.elapsed().as_secs_f64());
    let mut config = common.run_config("search", std::slice::from_ref(&field));
    config.search = Some(cfg);
    let report = json!({
        "config": config,
        "target": target.render_file(),
        "generators": gens.tags(),
        "outcome": outcome,
        "caveat": FINITE_FIELD_CAVEAT,
    });
    emit(common.out.as_deref(), &to_json(&report))?;
    Ok(ExitCode::SUCCESS)
}

pub fn probe(common: &CommonArgs, search: &SearchArgs, monomial: &str) -> Result<ExitCode> {
    common.validate()?;
    common.require_n(4, "probe")?;
    let field = common.field()?;
    if field.extension_degree() != 1 {
        bail!("probe works over prime fields");
    }
    let cfg = search.config(common.degree_cap)?;
    let m = Monomial::parse(monomial, common.n)?;
    let start = Instant::now();
    let report = rips_probe(field.characteristic(), common.n, &m, &cfg)?;
    eprintln!("probe finished in {:.3} s", start.elapsed().as_secs_f64());
    let mut config = common.run_config("probe", std::slice::from_ref(&field));
    config.search = Some(cfg);
    emit(common.out.as_deref(), &to_json(&json!({ "config": config, "report": report })))?;
    Ok(ExitCode::SUCCESS)
}
