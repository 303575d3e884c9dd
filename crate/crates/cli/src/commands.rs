use anyhow::{anyhow, bail, Result};
use clap::{Args, ValueEnum};
use psitwist::arith::{
    sopfr, sopfr_preimages, try_theta, TwistParameter, MAX_PREIMAGE_WEIGHT,
};
use psitwist::complex::{
    alpha_expansion, bounds, bounds_for, eval_euler, eval_series, eval_split, mellin_check, poles,
    top_pole_families, verify_pole, EvalResult, LocalShape,
};
use psitwist::padic::{
    eval_mahler, eval_padic_euler, eval_padic_series, euler_threshold, mahler_coefficients,
    PadicContext, PadicTwist, DEFAULT_PRECISION,
};
use psitwist::sources::character_source;
use psitwist::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::input::{self, parse_complex, parse_grid, parse_int_range, SourceArgs};
use crate::lenient;
use crate::output::{render_list, Cell, Format, Table};

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| anyhow!("invalid argument: missing --{flag}"))
}

fn twist(alpha: Option<&str>) -> Result<TwistParameter> {
    Ok(TwistParameter::open(parse_complex(need(alpha, "alpha")?)?)?)
}

fn json_line(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct SopfrArgs {
    /// Range "a..b" or a single n
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub range: Option<String>,
    /// Emit the scatter dataset n, S(n), (3/log 3) log n for n <= N
    #[arg(long, value_name = "N")]
    pub plot: Option<u64>,
}

pub fn sopfr_cmd(a: &SopfrArgs, format: Format) -> Result<String> {
    if let Some(n_max) = a.plot {
        let guide = 3.0 / 3f64.ln();
        let mut t = Table::new(&["n", "sopfr", "guide"]);
        for n in 1..=n_max {
            t.push(vec![n.into(), sopfr(n).into(), (guide * (n as f64).ln()).into()]);
        }
        return Ok(t.render(format));
    }
    let (lo, hi) = parse_int_range(need(a.range.as_deref(), "range")?)?;
    if lo == 0 {
        bail!("invalid argument: sopfr is defined for n >= 1");
    }
    let vals: Vec<Cell> = (lo..=hi).map(|n| sopfr(n).into()).collect();
    Ok(render_list("sopfr", &vals, ",", format))
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ThetaArgs {
    /// Range "a..b" or a single m
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub range: Option<String>,
}

pub fn theta_cmd(a: &ThetaArgs, format: Format) -> Result<String> {
    let (lo, hi) = parse_int_range(need(a.range.as_deref(), "range")?)?;
    let vals = (lo..=hi)
        .map(|m| {
            try_theta(m)
                .map(Cell::Big)
                .ok_or_else(|| anyhow!("invalid argument: theta({m}) overflows u128"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(render_list("theta", &vals, ",", format))
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct PreimagesArgs {
    /// Weight m
    pub m: Option<u64>,
}

pub fn preimages_cmd(a: &PreimagesArgs, format: Format) -> Result<String> {
    let m = need(a.m, "m")?;
    if m > MAX_PREIMAGE_WEIGHT {
        bail!("invalid argument: preimages need m <= {MAX_PREIMAGE_WEIGHT}");
    }
    let vals: Vec<Cell> = sopfr_preimages(m).into_iter().map(Cell::from).collect();
    Ok(render_list("preimages", &vals, " ", format))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexMethod {
    Series,
    Euler,
    Split,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct EvalArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    /// Twist parameter "re" or "re,im" with |alpha| < 1
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub alpha: Option<String>,
    /// Point s, "re" or "re,im"
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub s: Option<String>,
    /// Direct series, Euler product over p <= X, or both joined at X [default: series]
    #[arg(long, value_enum)]
    pub method: Option<ComplexMethod>,
    /// Number of series terms [default: 10000]
    #[arg(long)]
    pub n: Option<usize>,
    /// Euler product prime bound [default: 1000]
    #[arg(long)]
    pub x: Option<u64>,
}

fn eval_table(r: &EvalResult, format: Format) -> String {
    let mut t = Table::new(&["re", "im", "truncation_bound", "terms_used"]);
    t.push(vec![
        r.value.re.into(),
        r.value.im.into(),
        r.truncation_bound.into(),
        r.terms_used.into(),
    ]);
    t.render(format)
}

pub fn eval_cmd(a: &EvalArgs, format: Format) -> Result<String> {
    let t = twist(a.alpha.as_deref())?;
    let s = parse_complex(need(a.s.as_deref(), "s")?)?;
    let n = a.n.unwrap_or(10_000);
    let x = a.x.unwrap_or(1_000);
    let method = a.method.unwrap_or(ComplexMethod::Series);
    let needed = match method {
        ComplexMethod::Series => n as u64,
        ComplexMethod::Euler => x,
        ComplexMethod::Split => (n as u64).max(x),
    };
    let src = a.source.complex(needed)?;
    let r = match method {
        ComplexMethod::Series => eval_series(&src, &t, s, n)?,
        ComplexMethod::Euler => eval_euler(&src, &t, s, x)?,
        ComplexMethod::Split => eval_split(&src, &t, s, x, n)?,
    };
    Ok(eval_table(&r, format))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PadicMethod {
    Series,
    Euler,
    Mahler,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct PadicArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    /// Odd prime p
    #[arg(long)]
    pub p: Option<u64>,
    /// Twist "u*p^j" with j >= 1, e.g. "p", "3p", "p^2" [default: p]
    #[arg(long)]
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub alpha: Option<String>,
    /// Precision K (digits reported)
    #[arg(long = "K")]
    #[serde(rename = "K")]
    pub k: Option<u32>,
}

impl PadicArgs {
    fn setup(&self) -> Result<(PadicContext, PadicTwist)> {
        let ctx = PadicContext::new(need(self.p, "p")?, self.k.unwrap_or(DEFAULT_PRECISION))?;
        let t = PadicTwist::parse(&ctx, self.alpha.as_deref().unwrap_or("p"))?;
        Ok((ctx, t))
    }
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct EvalPadicArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: PadicArgs,
    /// Point s in Z_p: integer, "a/b" or "p^K : r" [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub s: Option<String>,
    /// Exact finite series, Euler product, or Mahler expansion [default: series]
    #[arg(long, value_enum)]
    pub method: Option<PadicMethod>,
    /// Euler product prime bound [default: smallest sufficient]
    #[arg(long)]
    pub x: Option<u64>,
    /// Mahler terms [default: K + guard]
    #[arg(long)]
    pub n: Option<u32>,
}

pub fn eval_padic_cmd(a: &EvalPadicArgs, format: Format) -> Result<String> {
    let (ctx, t) = a.common.setup()?;
    let src = a.common.source.padic(&ctx)?;
    let s = ctx.parse(a.s.as_deref().unwrap_or("0"))?;
    let method = a.method.unwrap_or(PadicMethod::Series);
    let value = match method {
        PadicMethod::Series => eval_padic_series(&ctx, src.as_ref(), &t, &s)?,
        PadicMethod::Euler => {
            let x = a.x.unwrap_or_else(|| euler_threshold(&ctx, &t));
            eval_padic_euler(&ctx, src.as_ref(), &t, &s, x)?
        }
        PadicMethod::Mahler => {
            let n = a.n.unwrap_or(ctx.working_precision());
            eval_mahler(&mahler_coefficients(&ctx, src.as_ref(), &t, n)?, &s)
        }
    };
    Ok(match format {
        Format::Csv => format!("{value}\n"),
        Format::Json => json_line(json!({
            "p": ctx.prime(),
            "K": ctx.precision(),
            "method": method,
            "value": value.to_string(),
            "valuation": value.valuation(),
        })),
    })
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct MahlerArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: PadicArgs,
    /// Highest coefficient index n [default: 8]
    #[arg(long)]
    pub n: Option<u32>,
}

pub fn mahler_cmd(a: &MahlerArgs, format: Format) -> Result<String> {
    let (ctx, t) = a.common.setup()?;
    let src = a.common.source.padic(&ctx)?;
    let ms = mahler_coefficients(&ctx, src.as_ref(), &t, a.n.unwrap_or(8))?;
    let mut table = Table::new(&["n", "value", "valuation"]);
    for (n, m) in ms.coefficients.iter().enumerate() {
        table.push(vec![n.into(), m.to_string().into(), (m.valuation() as u64).into()]);
    }
    Ok(table.render(format))
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct PolesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    /// Twist parameter "re" or "re,im"
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub alpha: Option<String>,
    /// Smallest real part listed [default: -3]
    #[arg(long, allow_hyphen_values = true)]
    pub re_min: Option<f64>,
    /// Largest real part listed [default: unbounded]
    #[arg(long, allow_hyphen_values = true)]
    pub re_max: Option<f64>,
    /// Largest |Im s| listed [default: 20]
    #[arg(long)]
    pub im_max: Option<f64>,
    /// Real alpha grid "a:b:step"; lists the top pole lines per alpha
    #[arg(long)]
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub sweep_alpha: Option<String>,
    /// Pole lines per alpha in a sweep [default: 30]
    #[arg(long)]
    pub top: Option<usize>,
}

pub fn poles_cmd(a: &PolesArgs, format: Format) -> Result<String> {
    let src = a.source.complex(1_000)?;
    if let Some(grid) = &a.sweep_alpha {
        let top = a.top.unwrap_or(30);
        let mut table = Table::new(&["alpha", "rank", "p", "i", "re"]);
        for alpha in parse_grid(grid)? {
            let t = TwistParameter::open(alpha)?;
            for (rank, f) in top_pole_families(&src, &t, top)?.iter().enumerate() {
                table.push(vec![
                    Cell::Exact(alpha),
                    (rank + 1).into(),
                    f.prime.into(),
                    f.root_index.into(),
                    f.real_part().into(),
                ]);
            }
        }
        return Ok(table.render(format));
    }
    let t = twist(a.alpha.as_deref())?;
    let re_min = a.re_min.unwrap_or(-3.0);
    let re_max = a.re_max.unwrap_or(f64::INFINITY);
    let im_max = a.im_max.unwrap_or(20.0);
    let mut table = Table::new(&["p", "i", "k", "re", "im", "residual"]);
    for pole in poles(&src, &t, re_min, re_max, im_max)? {
        let residual = verify_pole(&src, &t, &pole)?;
        table.push(vec![
            pole.prime.into(),
            pole.root_index.into(),
            pole.branch.into(),
            pole.location.re.into(),
            pole.location.im.into(),
            residual.into(),
        ]);
    }
    Ok(table.render(format))
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct BoundsArgs {
    /// Local degree d (ignored with --source)
    #[arg(long)]
    pub d: Option<u32>,
    /// Weight w (ignored with --source)
    #[arg(long)]
    pub w: Option<u32>,
    /// Take d, w and bad primes from a coefficient source instead
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    /// Twist parameter "re" or "re,im"
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub alpha: Option<String>,
    /// Real parts: "a..b", "a:b:step" or a single value
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub sigma: Option<String>,
    /// Drop the local factors at primes below this bound
    #[arg(long)]
    pub remove_below: Option<u64>,
    /// Decimals printed for the bounds [default: 4]
    #[arg(long)]
    pub decimals: Option<usize>,
}

pub fn bounds_cmd(a: &BoundsArgs, format: Format) -> Result<String> {
    let t = twist(a.alpha.as_deref())?;
    let sigmas = parse_grid(need(a.sigma.as_deref(), "sigma")?)?;
    let decimals = a.decimals.unwrap_or(4);
    let src = match a.source.source {
        Some(_) => Some(a.source.complex(1_000)?),
        None => None,
    };
    let shape = match &src {
        Some(_) => None,
        None => Some(LocalShape::new(need(a.d, "d")?, need(a.w, "w")?)),
    };
    let mut table = Table::new(&["sigma", "lower", "upper"]);
    for sigma in sigmas {
        let b = match (&src, &shape) {
            (Some(src), _) => bounds(src, &t, sigma, a.remove_below)?,
            (None, Some(shape)) => bounds_for(shape, &t, sigma, a.remove_below)?,
            (None, None) => unreachable!(),
        };
        table.push(vec![
            Cell::Exact(sigma),
            Cell::Fixed(b.lower, decimals),
            Cell::Fixed(b.upper, decimals),
        ]);
    }
    Ok(table.render(format))
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct MellinArgs {
    /// Character: mod4, legendre:q, principal:q or a file [default: mod4]
    #[arg(long)]
    pub chi: Option<String>,
    /// Twist parameter "re" or "re,im" with |alpha| < 1
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub alpha: Option<String>,
    /// Point s with Re(s) > 0
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub s: Option<String>,
    /// Series terms used for the comparison value [default: 20000]
    #[arg(long)]
    pub n: Option<usize>,
}

pub fn mellin_cmd(a: &MellinArgs, format: Format) -> Result<String> {
    let chi = input::character(a.chi.as_deref().unwrap_or("mod4"))?;
    let t = twist(a.alpha.as_deref())?;
    let s = parse_complex(need(a.s.as_deref(), "s")?)?;
    let integral = mellin_check(&chi, &t, s)?;
    let series = eval_series(&character_source(chi), &t, s, a.n.unwrap_or(20_000))?;
    let mut table = Table::new(&["re", "im", "series_re", "series_im", "abs_diff", "series_bound"]);
    table.push(vec![
        integral.re.into(),
        integral.im.into(),
        series.value.re.into(),
        series.value.im.into(),
        (integral - series.value).norm().into(),
        series.truncation_bound.into(),
    ]);
    Ok(table.render(format))
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct AlphaSeriesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    /// Point s, "re" or "re,im"
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub s: Option<String>,
    /// Highest power of alpha [default: 10]
    #[arg(long)]
    pub m: Option<u64>,
    /// Also sum the expansion at this alpha
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, deserialize_with = "lenient::opt_string")]
    pub alpha: Option<String>,
}

pub fn alpha_series_cmd(a: &AlphaSeriesArgs, format: Format) -> Result<String> {
    let s = parse_complex(need(a.s.as_deref(), "s")?)?;
    let src = a.source.complex(1_000)?;
    let coeffs = alpha_expansion(&src, s, a.m.unwrap_or(10))?;
    let mut table = Table::new(&["m", "re", "im"]);
    for (m, c) in coeffs.iter().enumerate() {
        table.push(vec![m.into(), c.re.into(), c.im.into()]);
    }
    if let Some(alpha) = &a.alpha {
        let alpha = parse_complex(alpha)?;
        let mut sum = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            sum = sum * alpha + c;
        }
        table.push(vec!["sum".into(), sum.re.into(), sum.im.into()]);
    }
    Ok(table.render(format))
}
