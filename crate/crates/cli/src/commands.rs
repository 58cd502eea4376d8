use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use abelian_rigidity::lattice::{
    canonicalize, check_convex, format_figure, parse_figure, uv_representation, WeightedFigure,
};
use abelian_rigidity::oracle::{
    abelian_pattern_complexity, constant_sum_sequence, constant_sum_window, period_vectors, search_windows_2d,
    search_words_1d, search_zero_sum_1d, translates, ConstantSum, SearchResult,
};
use abelian_rigidity::poly::{cyclotomic, detect_cyclotomic_factors, detect_cyclotomic_factors_up_to, poly_of_pattern};
use abelian_rigidity::rigidity::{decide_rigidity, extension_bound, RigidityStatus};
use abelian_rigidity::witness::{
    build_witness_1d, build_witness_2d, format_sequence, format_window, parse_sequence, parse_window,
    render_window, ConfigurationWindow, WitnessSource,
};
use abelian_rigidity::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Command, Failure};

/// Both renderings of a command's result; the caller picks one.
pub struct Report {
    pub text: String,
    pub json: String,
}

impl Report {
    fn new(text: String, json: &impl Serialize) -> Self {
        let mut json = serde_json::to_string(json).expect("serializable");
        json.push('\n');
        Report { text, json }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(s)
}

fn figure(path: &Path) -> Result<WeightedFigure, Failure> {
    Ok(parse_figure(&read(path)?)?)
}

fn figure_json(fig: &WeightedFigure) -> Value {
    json!({
        "dim": fig.dim().get(),
        "points": fig.iter().map(|(p, w)| json!([p, w])).collect::<Vec<_>>(),
    })
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|i| i.to_string() + "\n").collect()
}

pub fn dispatch(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Poly { figure: f } => {
            let p = poly_of_pattern(&figure(f)?);
            let text = format!("{p}\n");
            Ok(Report::new(text, &json!({ "polynomial": p.to_string(), "terms": p.to_json() })))
        }
        Command::Canon { figure: f } => {
            let c = canonicalize(&figure(f)?);
            Ok(Report::new(format_figure(&c), &figure_json(&c)))
        }
        Command::ConvexCheck { figure: f } => {
            let convex = check_convex(&figure(f)?)?;
            let text = if convex { "convex\n" } else { "not convex\n" };
            Ok(Report::new(text.into(), &json!({ "convex": convex })))
        }
        Command::UvRep { figure: f, u, v } => {
            let rep = uv_representation(&figure(f)?, *u, *v)?;
            let mut text = format!("u = {}, v = {}, n = {}\n", rep.u, rep.v, rep.n);
            for (i, (lo, hi)) in rep.lows.iter().zip(&rep.highs).enumerate() {
                let _ = writeln!(text, "column {i}: [{lo}, {hi})");
            }
            Ok(Report::new(text, &rep))
        }
        Command::Rigidity { figure: f } => {
            let v = decide_rigidity(&figure(f)?)?;
            let mut text = format!("{}\n", v.status);
            if let Some(g) = &v.geometric {
                for e in &g.directions {
                    let _ = writeln!(text, "direction {} gcd {}", e.direction, e.gcd);
                }
            }
            if let Some(a) = &v.algebraic {
                let _ = writeln!(text, "divisor l({}, {}) = {}, quotient {}", a.direction, a.n, a.divisor, a.quotient);
            }
            if let Some(r) = &v.reason {
                let _ = writeln!(text, "reason: {r}");
            }
            debug_assert!(v.status != RigidityStatus::Unknown || v.reason.is_some());
            Ok(Report::new(text, &v))
        }
        Command::Cyclotomic { figure: None, max_n } => {
            let max = max_n.unwrap_or(12);
            let mut text = String::new();
            let mut out = Vec::new();
            for n in 1..=max {
                let p = cyclotomic(n)?;
                let _ = writeln!(text, "Phi_{n} = {p}");
                out.push(json!({ "n": n, "polynomial": p.to_string() }));
            }
            Ok(Report::new(text, &out))
        }
        Command::Cyclotomic { figure: Some(f), max_n } => {
            let p = poly_of_pattern(&figure(f)?);
            let report = match max_n {
                Some(b) => detect_cyclotomic_factors_up_to(&p, *b)?,
                None => detect_cyclotomic_factors(&p)?,
            };
            let text = format!(
                "polynomial: {p}\ndivisors: {}\ntested n <= {}\n",
                if report.divisors.is_empty() {
                    "none".to_string()
                } else {
                    report.divisors.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
                },
                report.tested_bound
            );
            Ok(Report::new(text, &report))
        }
        Command::Witness1d { figure: f, n } => {
            let s = build_witness_1d(&figure(f)?, *n)?;
            Ok(Report::new(format_sequence(&s), &s))
        }
        Command::Witness2d { figure: f, v, n, window } => {
            let w = build_witness_2d(&figure(f)?, *v, *n, *window)?;
            Ok(Report::new(format_window(&w), &w))
        }
        Command::Verify { figure: f, window_file } => verify(&figure(f)?, &read(window_file)?),
        Command::Periods { window_file, bound } => {
            if *bound < 1 {
                return Err(Error::InvalidArgument("bound must be at least 1".into()).into());
            }
            let win = parse_window(&read(window_file)?)?;
            let ps = period_vectors(&win, *bound);
            Ok(Report::new(lines(&ps), &json!({ "bound": bound, "periods": ps })))
        }
        Command::Search1d { figure: f, alphabet, max_len, values } => {
            let fig = figure(f)?;
            match (values, alphabet) {
                (Some((lo, hi)), _) => Ok(search_report(search_zero_sum_1d(&fig, *lo, *hi, *max_len)?, |w| {
                    w.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
                })),
                (None, Some(k)) => Ok(search_report(search_words_1d(&fig, *k, *max_len)?, |w| {
                    w.iter().map(u32::to_string).collect::<Vec<_>>().join("")
                })),
                (None, None) => Err(Error::InvalidArgument("give --alphabet or --values".into()).into()),
            }
        }
        Command::Search2d { figure: f, alphabet, window, budget } => {
            let r = search_windows_2d(&figure(f)?, *alphabet, window.0, window.1, *budget)?;
            Ok(search_report(r, |rows| {
                // Top row first, like the window format.
                rows.iter()
                    .rev()
                    .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(""))
                    .collect::<Vec<_>>()
                    .join("/")
            }))
        }
        Command::BoundN { figure: f, alphabet, delta_cap } => {
            let b = extension_bound(&figure(f)?, *alphabet, *delta_cap)?;
            let text = format!(
                "delta = {:.6} (edge {})\nDelta = {:.6} ({:?})\ndiameter = {:.6}\n|P| = {}\n|A| = {}\nN = {:.6}\n",
                b.delta, b.delta_edge, b.big_delta, b.big_delta_source, b.diameter, b.size, b.alphabet, b.n
            );
            Ok(Report::new(text, &b))
        }
    }
}

fn search_report<S: Serialize>(r: SearchResult<S>, show: impl Fn(&S) -> String) -> Report {
    let mut text = format!(
        "{} solution(s), exhausted: {}, nodes: {}, time: {:.3}s\n",
        r.solutions.len(),
        r.exhausted,
        r.stats.nodes,
        r.stats.wall_time.as_secs_f64()
    );
    for s in &r.solutions {
        text.push_str(&show(s));
        text.push('\n');
    }
    // JSON leaves out the wall time so it is byte-stable.
    Report::new(text, &r)
}

fn constant_json(c: &ConstantSum) -> Value {
    match c {
        ConstantSum::Constant(v) => json!({ "constant": true, "value": v }),
        ConstantSum::NotConstant { first, first_sum, second, second_sum } => json!({
            "constant": false,
            "counterexample": [[first, first_sum], [second, second_sum]],
        }),
    }
}

fn constant_text(c: &ConstantSum) -> String {
    match c {
        ConstantSum::Constant(v) => format!("constant sum: {v}"),
        ConstantSum::NotConstant { first, first_sum, second, second_sum } => {
            format!("constant sum: no ({first_sum} at {first}, {second_sum} at {second})")
        }
    }
}

fn verify(fig: &WeightedFigure, text: &str) -> Result<Report, Failure> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    let (kind, win, constant, positions) = if first.starts_with("period") {
        let seq = parse_sequence(text)?;
        let constant = Some(constant_sum_sequence(&seq, fig)?);
        // A window spanning one period plus the figure covers every phase.
        let (lo, hi) = fig.bounding_box();
        let len = seq.period + (hi.x - lo.x) as usize;
        let win = render_window(WitnessSource::Sequence(&seq), lo, (len, 1))?;
        ("sequence", win, constant, seq.period)
    } else {
        let win: ConfigurationWindow = parse_window(text)?;
        let constant = match constant_sum_window(&win, fig) {
            Ok(c) => Some(c),
            Err(Error::NonIntegerSymbol(_)) => None,
            Err(e) => return Err(e.into()),
        };
        let n = translates(&win, fig).len();
        ("window", win, constant, n)
    };
    let complexity = abelian_pattern_complexity(&win, fig)?;
    let mut out = format!("{kind}: {positions} translate(s)\nabelian complexity: {complexity}\n");
    match &constant {
        Some(c) => {
            out.push_str(&constant_text(c));
            out.push('\n');
        }
        None => out.push_str("constant sum: n/a (alphabet is not integer)\n"),
    }
    let json = json!({
        "kind": kind,
        "translates": positions,
        "complexity": complexity,
        "constant_sum": constant.as_ref().map(constant_json),
    });
    Ok(Report::new(out, &json))
}
