//! The four subcommands, each producing a [`Report`].

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use permcount::counting::{check_trace_relation, compute_table, count_deg_qm2_with, count_route, CountTable};
use permcount::field::parse_field_spec;
use permcount::{
    bound_check, brute_force_table, check_gauss_sums, count_all, count_restricted_solutions, count_via_cyclotomic,
    count_via_partition, gauss_sums, gq, BoundCheck, Config, Error, ErrorKind, FieldCtx, Method, PermanentReport,
    Result, Route,
};
use serde_json::{json, Map, Value};

use crate::args::{RouteSel, RunArgs};
use crate::report::{int, millis, Report};

/// Build the field named by `spec`, with `--modulus` (high-to-low) applied.
pub fn build_field(spec: &str, modulus: Option<&str>, max_field: u64) -> Result<Arc<FieldCtx>> {
    let (p, r, inline) = parse_field_spec(spec)?;
    let modulus = match (inline, modulus) {
        (Some(_), Some(_)) => {
            return Err(Error::BadFieldSpec {
                spec: spec.to_string(),
                reason: "modulus given both inline and by --modulus".into(),
            })
        }
        (Some(m), None) => Some(m),
        (None, Some(text)) => Some(permcount::field::parse_modulus_list(text)?),
        (None, None) => None,
    };
    Ok(Arc::new(FieldCtx::build_guarded(p, r, modulus.as_deref(), max_field)?))
}

fn single_field(args: &RunArgs, cfg: &Config) -> Result<Arc<FieldCtx>> {
    match args.field.as_slice() {
        [one] => build_field(one, args.modulus.as_deref(), cfg.guards.max_field),
        many => Err(Error::BadFieldSpec {
            spec: many.join(" "),
            reason: "this command takes exactly one --field".into(),
        }),
    }
}

fn short_name(ctx: &FieldCtx) -> String {
    if ctx.r() == 1 {
        ctx.p().to_string()
    } else {
        format!("{}^{}", ctx.p(), ctx.r())
    }
}

fn bound_json(b: &BoundCheck) -> Value {
    json!({
        "lo": b.lo.to_string(),
        "hi": b.hi.to_string(),
        "exact": b.exact,
        "contains": b.ok,
    })
}

fn opt_int(n: Option<&BigInt>) -> Value {
    n.map_or(Value::Null, int)
}

fn route_json(rep: &PermanentReport) -> Value {
    let mut m = Map::new();
    m.insert("route".into(), Value::from(rep.route.name()));
    m.insert("d".into(), Value::from(rep.d));
    m.insert("N".into(), int(&rep.n_value));
    m.insert("N_lidl_mullen".into(), int(&(&rep.n_value * rep.q)));
    m.insert("per_V".into(), opt_int(rep.per_v.as_ref()));
    m.insert("c_minus1".into(), opt_int(rep.c_const.as_ref()));
    m.insert(
        "c".into(),
        rep.coefficients
            .as_ref()
            .map_or(Value::Null, |cs| Value::Array(cs.iter().map(int).collect())),
    );
    m.insert(
        "permanent".into(),
        rep.permanent.as_ref().map_or(Value::Null, |p| p.to_json()),
    );
    m.insert(
        "constant_balance".into(),
        rep.constant_balance_ok.map_or(Value::Null, Value::from),
    );
    m.insert(
        "trace_relation".into(),
        rep.trace_relation_ok.map_or(Value::Null, Value::from),
    );
    m.insert("bound".into(), bound_json(&rep.bound));
    Value::Object(m)
}

fn route_text(rep: &PermanentReport) -> Vec<String> {
    let mut lines = vec![format!(
        "{}: N_{}({}) = {} (Lidl-Mullen count {})",
        rep.route,
        rep.q,
        rep.d,
        rep.n_value,
        &rep.n_value * rep.q
    )];
    if let Some(per) = &rep.permanent {
        lines.push(format!("  per(A) = {}", per.render_text()));
    }
    if let (Some(c), Some(cs)) = (&rep.c_const, &rep.coefficients) {
        lines.push(format!("  c_-1 = {c}, c_i = {}", cs[0]));
    }
    if let Some(v) = &rep.per_v {
        lines.push(format!("  per(V) = {v}"));
    }
    lines.push(format!("  interval [{}, {}]", rep.bound.lo, rep.bound.hi));
    lines
}

fn push_route_checks(report: &mut Report, reps: &[PermanentReport]) {
    if reps.len() > 1 {
        report.check("route-agreement", reps.iter().all(|r| r.n_value == reps[0].n_value));
    }
    if let Some(ok) = reps.iter().find_map(|r| r.constant_balance_ok) {
        report.check("constant-balance", ok);
    }
    if let Some(ok) = reps.iter().find_map(|r| r.trace_relation_ok) {
        report.check("trace-relation", ok);
    }
    report.check("bound", reps.iter().all(|r| r.bound_ok()));
}

fn header_line(ctx: &FieldCtx) -> String {
    format!(
        "F_{} defined by {} (omega = code {})",
        ctx.q(),
        ctx.spec(),
        ctx.omega().code()
    )
}

pub fn count(args: &RunArgs, cfg: &Config) -> Result<Report> {
    let ctx = single_field(args, cfg)?;
    match args.d {
        Some(d) if ctx.q() < 3 || d != ctx.q() - 2 => count_lower_degree(&ctx, d, args, cfg),
        _ => count_top_degree(&ctx, args, cfg),
    }
}

fn count_top_degree(ctx: &Arc<FieldCtx>, args: &RunArgs, cfg: &Config) -> Result<Report> {
    let routes = args.route.unwrap_or(RouteSel::Groupring).routes();
    let reps = count_all(ctx, cfg, &routes)?;
    let mut report = Report::new("count", Some(ctx));
    report.text.push(header_line(ctx));
    report.csv_header = vec!["route", "d", "N", "N_lidl_mullen", "per_V", "c_minus1"];
    for rep in &reps {
        report.results.push(route_json(rep));
        report.text.extend(route_text(rep));
        report.csv_rows.push(vec![
            rep.route.name().into(),
            rep.d.to_string(),
            rep.n_value.to_string(),
            (&rep.n_value * rep.q).to_string(),
            rep.per_v.as_ref().map_or(String::new(), |v| v.to_string()),
            rep.c_const.as_ref().map_or(String::new(), |v| v.to_string()),
        ]);
        for t in &rep.timings {
            report.timings.push((t.label.clone(), t.millis));
        }
    }
    push_route_checks(&mut report, &reps);
    Ok(report)
}

fn count_lower_degree(ctx: &Arc<FieldCtx>, d: u32, args: &RunArgs, cfg: &Config) -> Result<Report> {
    if args.route.is_some_and(|r| r != RouteSel::Groupring) {
        return Err(Error::OutOfRange {
            what: "d",
            value: d as i64,
            range: "only the groupring route reaches degrees below q-2".into(),
        });
    }
    let start = Instant::now();
    let g = gq(ctx, d, cfg)?;
    let table = compute_table(ctx, cfg)?;
    let n = table.get(d);
    let mut report = Report::new("count", Some(ctx));
    report
        .timings
        .push(("multivariate".into(), start.elapsed().as_secs_f64() * 1e3));
    report.results.push(json!({
        "d": d,
        "N_fixed0": int(&n),
        "N_lidl_mullen": int(&table.lidl_mullen[&d]),
        "G": int(&g),
    }));
    report.csv_header = vec!["d", "N_fixed0", "N_lidl_mullen", "G"];
    report.csv_rows.push(vec![
        d.to_string(),
        n.to_string(),
        table.lidl_mullen[&d].to_string(),
        g.to_string(),
    ]);
    report.text.push(header_line(ctx));
    report.text.push(format!(
        "N_{}({d}) = {n} (Lidl-Mullen count {}), G_{}({d}) = {g}",
        ctx.q(),
        table.lidl_mullen[&d],
        ctx.q()
    ));
    for (name, ok) in table.rule_checks() {
        report.check(name, ok);
    }
    Ok(report)
}

fn table_rows(report: &mut Report, table: &CountTable, oracle: Option<&CountTable>) {
    report.csv_header = vec!["d", "N_fixed0", "N_lidl_mullen"];
    for (d, n) in &table.entries {
        let mut row = Map::new();
        row.insert("d".into(), Value::from(*d));
        row.insert("N_fixed0".into(), int(n));
        row.insert("N_lidl_mullen".into(), int(&table.lidl_mullen[d]));
        if let Some(o) = oracle {
            row.insert("N_oracle".into(), int(&o.get(*d)));
        }
        report.results.push(Value::Object(row));
        report
            .csv_rows
            .push(vec![d.to_string(), n.to_string(), table.lidl_mullen[d].to_string()]);
        report
            .text
            .push(format!("  d = {d:>3}  N = {n}  (Lidl-Mullen {})", table.lidl_mullen[d]));
    }
    let lm_total = &table.total * table.q;
    report
        .csv_rows
        .push(vec!["total".into(), table.total.to_string(), lm_total.to_string()]);
    report
        .text
        .push(format!("  total    {}  (Lidl-Mullen {lm_total})", table.total));
    report.extra.push(("total", int(&table.total)));
}

pub fn table(args: &RunArgs, cfg: &Config) -> Result<Report> {
    let ctx = single_field(args, cfg)?;
    let start = Instant::now();
    let table = compute_table(&ctx, cfg)?;
    let mut report = Report::new("table", Some(&ctx));
    report
        .timings
        .push(("table".into(), start.elapsed().as_secs_f64() * 1e3));
    report.text.push(header_line(&ctx));
    table_rows(&mut report, &table, None);

    let top = table.get(ctx.q() - 2);
    let routes: Vec<Route> = args
        .route
        .map_or_else(Vec::new, RouteSel::routes)
        .into_iter()
        .filter(|&r| r != Route::GroupRing)
        .collect();
    if !routes.is_empty() {
        let reps = count_all(&ctx, cfg, &routes)?;
        report.check("route-agreement", reps.iter().all(|r| r.n_value == top));
        for rep in &reps {
            for t in &rep.timings {
                report.timings.push((t.label.clone(), t.millis));
            }
        }
    }
    report.check("bound", bound_check(&ctx, &top).ok);
    for (name, ok) in table.rule_checks() {
        report.check(name, ok);
    }
    Ok(report)
}

pub fn verify(args: &RunArgs, cfg: &Config) -> Result<Report> {
    let ctx = single_field(args, cfg)?;
    let mut report = Report::new("verify", Some(&ctx));
    report.text.push(header_line(&ctx));

    let start = Instant::now();
    let oracle = brute_force_table(&ctx, cfg)?;
    report
        .timings
        .push(("oracle".into(), start.elapsed().as_secs_f64() * 1e3));

    let start = Instant::now();
    let table = compute_table(&ctx, cfg)?;
    report
        .timings
        .push(("table".into(), start.elapsed().as_secs_f64() * 1e3));

    let reps = Route::ALL
        .iter()
        .map(|&r| count_route(&ctx, cfg, r))
        .collect::<Result<Vec<_>>>()?;
    for rep in &reps {
        for t in &rep.timings {
            report.timings.push((t.label.clone(), t.millis));
        }
    }
    let direct = reps
        .iter()
        .find(|r| r.route == Route::GroupRing)
        .expect("all routes ran");
    let (c_const, c0) = (
        direct.c_const.clone().expect("group ring route reports c_-1"),
        direct.coefficients.as_ref().expect("group ring route reports c_i")[0].clone(),
    );
    let per_vs: Vec<&BigInt> = reps.iter().filter_map(|r| r.per_v.as_ref()).collect();

    let start = Instant::now();
    let restricted = count_restricted_solutions(&ctx, &[1], cfg)?;
    report
        .timings
        .push(("restricted-solutions".into(), start.elapsed().as_secs_f64() * 1e3));
    let gauss = check_gauss_sums(&ctx, &gauss_sums(&ctx));
    let top = table.get(ctx.q() - 2);

    report.check("constant-balance", direct.constant_balance_ok == Some(true));
    report.check(
        "trace-relation",
        per_vs.iter().all(|v| check_trace_relation(&ctx, &c_const, &c0, v)),
    );
    report.check("route-agreement", reps.iter().all(|r| r.n_value == top));
    report.check("partition-vs-direct", per_vs.windows(2).all(|w| w[0] == w[1]));
    report.check("oracle-agreement", oracle == table);
    report.check("restricted-solutions", restricted == c_const);
    report.check("bound", bound_check(&ctx, &top).ok);
    report.check("gauss-sums", gauss.ok);
    for (name, ok) in table.rule_checks() {
        report.check(name, ok);
    }

    table_rows(&mut report, &table, Some(&oracle));
    report.text.extend(reps.iter().flat_map(route_text));
    report.text.push(format!(
        "gauss sums: max relative error {:.1e}, lambda_0 error {:.1e}",
        gauss.max_rel_err, gauss.lambda0_err
    ));
    report
        .extra
        .insert(0, ("routes", Value::Array(reps.iter().map(route_json).collect())));

    // verify's CSV is the check list rather than the table
    report.csv_header = vec!["check", "ok"];
    report.csv_rows = report
        .checks
        .iter()
        .map(|c| vec![c.name.clone(), c.ok.to_string()])
        .collect();
    Ok(report)
}

/// One timed way of obtaining N_q(q−2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BenchRoute {
    Cyclotomic,
    GroupRingNaive,
    GroupRingRyser,
    Partition,
}

impl BenchRoute {
    const ALL: [BenchRoute; 4] = [
        BenchRoute::Cyclotomic,
        BenchRoute::GroupRingNaive,
        BenchRoute::GroupRingRyser,
        BenchRoute::Partition,
    ];

    fn name(self) -> &'static str {
        match self {
            BenchRoute::Cyclotomic => "cyclotomic",
            BenchRoute::GroupRingNaive => "groupring-naive",
            BenchRoute::GroupRingRyser => "groupring-ryser",
            BenchRoute::Partition => "partition",
        }
    }

    fn selected_by(self, sel: RouteSel) -> bool {
        matches!(
            (sel, self),
            (RouteSel::All, _)
                | (RouteSel::Cyclotomic, BenchRoute::Cyclotomic)
                | (
                    RouteSel::Groupring,
                    BenchRoute::GroupRingNaive | BenchRoute::GroupRingRyser
                )
                | (RouteSel::Partition, BenchRoute::Partition)
        )
    }

    fn run(self, ctx: &Arc<FieldCtx>, cfg: &Config) -> Result<PermanentReport> {
        match self {
            BenchRoute::Cyclotomic => count_via_cyclotomic(ctx, cfg),
            BenchRoute::GroupRingNaive => count_deg_qm2_with(ctx, cfg, Method::Naive),
            BenchRoute::GroupRingRyser => count_deg_qm2_with(ctx, cfg, Method::Ryser),
            BenchRoute::Partition => count_via_partition(ctx, cfg),
        }
    }
}

/// Bench output plus the guard refusals it skipped over.
pub struct Bench {
    pub report: Report,
    pub refusals: Vec<String>,
}

pub fn bench(args: &RunArgs, cfg: &Config) -> Result<Bench> {
    let fields = args
        .field
        .iter()
        .map(|f| build_field(f, args.modulus.as_deref(), cfg.guards.max_field))
        .collect::<Result<Vec<_>>>()?;
    let sel = args.route.unwrap_or(RouteSel::All);
    let mut report = Report::new("bench", (fields.len() == 1).then(|| &*fields[0]));
    report.csv_header = vec!["field", "route", "n", "millis"];
    let mut refusals = Vec::new();

    for ctx in &fields {
        let name = short_name(ctx);
        let n = ctx.q().saturating_sub(1);
        let mut values: Vec<BigInt> = Vec::new();
        for route in BenchRoute::ALL.into_iter().filter(|r| r.selected_by(sel)) {
            let start = Instant::now();
            let outcome = route.run(ctx, cfg);
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let rep = match outcome {
                Ok(rep) => rep,
                Err(e) if e.kind() == ErrorKind::Guard => {
                    refusals.push(format!("{name} {}: {e}", route.name()));
                    report
                        .text
                        .push(format!("{name:<8} {:<16} n = {n:<3} refused: {e}", route.name()));
                    continue;
                }
                Err(e) => return Err(e),
            };
            report.results.push(json!({
                "field": name,
                "route": route.name(),
                "n": n,
                "millis": millis(ms),
                "N": int(&rep.n_value),
            }));
            report.csv_rows.push(vec![
                name.clone(),
                route.name().into(),
                n.to_string(),
                format!("{ms:.3}"),
            ]);
            report
                .text
                .push(format!("{name:<8} {:<16} n = {n:<3} {ms:>12.3} ms", route.name()));
            report.timings.push((format!("{name} {}", route.name()), ms));
            values.push(rep.n_value);
        }
        if values.len() > 1 {
            report.check(
                format!("route-agreement {name}"),
                values.iter().all(|v| *v == values[0]),
            );
        }
    }
    if !refusals.is_empty() {
        report.extra.push((
            "refused",
            Value::Array(refusals.iter().cloned().map(Value::from).collect()),
        ));
    }
    Ok(Bench { report, refusals })
}
