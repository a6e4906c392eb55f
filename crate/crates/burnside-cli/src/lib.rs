//! Command-line front end: subcommand dispatch, text/JSON/CSV emission, and
//! the persistent lattice cache.

pub mod cache;

use std::path::PathBuf;
use std::sync::Arc;

use burnside::congruence::{first_violation, order_check};
use burnside::element::element_from_ghost;
use burnside::families::{
    abelian_mul, compact_abelian_reduce, nf_from_generators, nf_intersect, o2_mark, o2_mul,
    o2_p_perfection, CompactAbelianDescriptor, ElementaryAbelianNF, O2Element, O2Subgroup,
};
use burnside::group::{GroupSpec, DEFAULT_ORDER_CAP};
use burnside::lattice::SubgroupLattice;
use burnside::maps::{alpha_map, induction, product_map, restriction, SubgroupEmbedding};
use burnside::ring::{
    builtin_presentation, mul, mul_via_double_cosets, mul_via_orbit_types, parse_element,
    verify_presentation,
};
use burnside::spectrum::{idempotents, p_perfection_pair, units};
use burnside::util::prime_divisors;
use burnside::{BurnsideElement, Error, GhostVector};
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

struct Options {
    format: Format,
    cache_dir: Option<PathBuf>,
    no_cache: bool,
    max_order: u64,
    prime: Option<u64>,
}

/// A usage-level error (exit code 2) as opposed to a domain error (exit 1).
struct UsageError(String);

enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        // Syntax problems in user input are usage errors with positions.
        match e {
            Error::Parse { .. } => CliError::Usage(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

impl From<UsageError> for CliError {
    fn from(e: UsageError) -> Self {
        CliError::Usage(e.0)
    }
}

/// A finished response: the JSON skeleton plus the plain-text rendering and
/// an optional CSV rendering.
struct Response {
    group: Value,
    classes: Value,
    result: Value,
    text: String,
    csv: Option<String>,
    /// Exit code override for commands that report failures (verify).
    exit: i32,
}

impl Response {
    fn bare(result: Value, text: String) -> Response {
        Response {
            group: Value::Null,
            classes: json!([]),
            result,
            text,
            csv: None,
            exit: 0,
        }
    }
}

const USAGE: &str = "usage: burnside <command> [args] [--format text|json|csv] [--cache-dir DIR] [--no-cache] [--max-order N]
commands:
  lattice <spec>                         subgroup classes of a group
  marks <spec>                           table of marks
  mul <spec> <elt> <elt>                 product of two elements
  ghost <spec> <elt>                     mark vector of an element
  inimage <spec> <ghost-json>            congruence membership test
  idempotents <spec>                     all idempotent elements
  units <spec>                           all unit elements
  spectrum <spec> [-p <prime>]           prime ideal spectrum report
  map ind <spec> <class> <elt>           induction along a subgroup class
  map res <spec> <class> <elt>           restriction along a subgroup class
  map prod <spec1> <spec2> <e1> <e2>     external product map
  map alpha <spec> <elt>                 alpha map from the cyclic group
  family o2 mul <e1> <e2>                O(2) product
  family o2 mark <elt> <subgroup>        O(2) mark at full|so2|d<n>
  family o2 perf <subgroup> <p>          O(2) p-perfection pair
  family abelian mul <spec> <c1> <c2>    abelian closed-form product
  family abelian reduce <rank> [d1,...]  compact abelian reduction
  family elementary nf <p> <n> <rows>    distinguished generating set
  family elementary intersect <p> <n> <rowsA> <rowsB>
  verify <spec|o2>                       run the presentation suites";

pub fn run_command<S: AsRef<str>>(argv: &[S]) -> (i32, Vec<u8>) {
    let mut positional: Vec<String> = Vec::new();
    let mut opts = Options {
        format: Format::Text,
        cache_dir: None,
        no_cache: false,
        max_order: DEFAULT_ORDER_CAP,
        prime: None,
    };
    let args: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let mut iter = args.into_iter().peekable();
    while let Some(arg) = iter.next() {
        if let Some(rest) = arg.strip_prefix("--format") {
            match flag_value(rest, &mut iter) {
                Some(v) => match v.as_str() {
                    "text" => opts.format = Format::Text,
                    "json" => opts.format = Format::Json,
                    "csv" => opts.format = Format::Csv,
                    other => return usage_exit(format!("unknown format `{other}`")),
                },
                None => return usage_exit("--format requires a value".into()),
            }
        } else if let Some(rest) = arg.strip_prefix("--cache-dir") {
            match flag_value(rest, &mut iter) {
                Some(v) => opts.cache_dir = Some(PathBuf::from(v)),
                None => return usage_exit("--cache-dir requires a value".into()),
            }
        } else if arg == "--no-cache" {
            opts.no_cache = true;
        } else if let Some(rest) = arg.strip_prefix("--max-order") {
            match flag_value(rest, &mut iter).and_then(|v| v.parse().ok()) {
                Some(v) => opts.max_order = v,
                None => return usage_exit("--max-order requires an integer".into()),
            }
        } else if arg == "-p" {
            match iter.next().and_then(|v| v.parse().ok()) {
                Some(v) => opts.prime = Some(v),
                None => return usage_exit("-p requires an integer".into()),
            }
        } else if arg.starts_with("--") {
            return usage_exit(format!("unknown flag `{arg}`"));
        } else {
            positional.push(arg);
        }
    }
    if positional.is_empty() {
        return usage_exit("missing subcommand".into());
    }
    let command = positional.remove(0);
    match dispatch(&command, &positional, &opts) {
        Ok(resp) => match render(&resp, opts.format) {
            Ok(bytes) => (resp.exit, bytes),
            Err(u) => usage_exit(u.0),
        },
        Err(CliError::Usage(msg)) => usage_exit(msg),
        Err(CliError::Domain(err)) => (1, format!("error: {err}\n").into_bytes()),
    }
}

fn flag_value(
    rest: &str,
    iter: &mut std::iter::Peekable<std::vec::IntoIter<String>>,
) -> Option<String> {
    if let Some(v) = rest.strip_prefix('=') {
        Some(v.to_string())
    } else if rest.is_empty() {
        iter.next()
    } else {
        None
    }
}

fn usage_exit(msg: String) -> (i32, Vec<u8>) {
    (2, format!("error: {msg}\n{USAGE}\n").into_bytes())
}

fn render(resp: &Response, format: Format) -> Result<Vec<u8>, UsageError> {
    match format {
        Format::Text => Ok(resp.text.clone().into_bytes()),
        Format::Json => {
            let value = json!({
                "group": resp.group,
                "classes": resp.classes,
                "result": resp.result,
            });
            let mut bytes = serde_json::to_vec_pretty(&value).expect("json serializes");
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Csv => match &resp.csv {
            Some(csv) => Ok(csv.clone().into_bytes()),
            None => Err(UsageError(
                "csv output is not defined for this subcommand".into(),
            )),
        },
    }
}

fn dispatch(command: &str, args: &[String], opts: &Options) -> Result<Response, CliError> {
    if opts.prime.is_some() && command != "spectrum" {
        return Err(UsageError("-p is only valid for the spectrum subcommand".into()).into());
    }
    match command {
        "lattice" => cmd_lattice(args, opts),
        "marks" => cmd_marks(args, opts),
        "mul" => cmd_mul(args, opts),
        "ghost" => cmd_ghost(args, opts),
        "inimage" => cmd_inimage(args, opts),
        "idempotents" => cmd_enumerate(args, opts, true),
        "units" => cmd_enumerate(args, opts, false),
        "spectrum" => cmd_spectrum(args, opts),
        "map" => cmd_map(args, opts),
        "family" => cmd_family(args, opts),
        "verify" => cmd_verify(args, opts),
        other => Err(UsageError(format!("unknown subcommand `{other}`")).into()),
    }
}

fn want<'a>(args: &'a [String], n: usize, usage: &str) -> Result<&'a [String], CliError> {
    if args.len() != n {
        return Err(UsageError(format!("expected {usage}")).into());
    }
    Ok(args)
}

/// Build (or load from cache) the lattice of a group spec.
fn lattice_for(spec_text: &str, opts: &Options) -> Result<(Arc<SubgroupLattice>, Value), CliError> {
    let spec = GroupSpec::parse(spec_text)?;
    let group = spec.build(opts.max_order)?;
    let hash = cache::group_digest(&group);
    let meta = json!({
        "spec": spec.to_string(),
        "order": group.order(),
        "hash": hash,
    });
    let cache_dir = if opts.no_cache {
        None
    } else {
        opts.cache_dir
            .clone()
            .or_else(|| std::env::var_os("BURNSIDE_CACHE_DIR").map(PathBuf::from))
    };
    if let Some(dir) = &cache_dir {
        if let Some(entry) = cache::load(dir, &hash) {
            if let Ok(lattice) = cache::lattice_from_entry(group.clone(), &hash, &entry) {
                return Ok((lattice, meta));
            }
            // Corrupt or stale entry: fall through and recompute.
        }
    }
    let lattice = SubgroupLattice::build(group)?;
    if let Some(dir) = &cache_dir {
        let entry = cache::entry_from_lattice(&hash, &lattice);
        let _ = cache::store(dir, &hash, &entry);
    }
    Ok((lattice, meta))
}

fn classes_json(lattice: &SubgroupLattice) -> Value {
    Value::Array(
        lattice
            .classes()
            .iter()
            .map(|c| {
                json!({
                    "label": c.label,
                    "order": c.order(),
                    "conjugates": c.conjugates_count(),
                    "weyl": c.weyl_order,
                })
            })
            .collect(),
    )
}

fn element_json(x: &BurnsideElement) -> Value {
    json!({
        "element": x.to_string(),
        "coeffs": Value::Array(
            x.coeffs()
                .iter()
                .map(|(&c, &v)| json!({"label": x.lattice().label(c), "coeff": v}))
                .collect()
        ),
    })
}

fn ghost_json(f: &GhostVector) -> Value {
    Value::Array(f.values().iter().map(|&v| json!(v)).collect())
}

fn cmd_lattice(args: &[String], opts: &Options) -> Result<Response, CliError> {
    let args = want(args, 1, "lattice <spec>")?;
    let (lattice, meta) = lattice_for(&args[0], opts)?;
    let mut text = format!(
        "group {}  order {}  classes {}\n",
        args[0],
        lattice.group().order(),
        lattice.class_count()
    );
    text.push_str("label\torder\tconjugates\tweyl\n");
    let mut csv = String::from("label,order,conjugates,weyl\n");
    for c in lattice.classes() {
        text.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            c.label,
            c.order(),
            c.conjugates_count(),
            c.weyl_order
        ));
        csv.push_str(&format!(
            "{},{},{},{}\n",
            c.label,
            c.order(),
            c.conjugates_count(),
            c.weyl_order
        ));
    }
    Ok(Response {
        group: meta,
        classes: classes_json(&lattice),
        result: json!({"class_count": lattice.class_count()}),
        text,
        csv: Some(csv),
        exit: 0,
    })
}

fn cmd_marks(args: &[String], opts: &Options) -> Result<Response, CliError> {
    let args = want(args, 1, "marks <spec>")?;
    let (lattice, meta) = lattice_for(&args[0], opts)?;
    let labels: Vec<&str> = lattice.classes().iter().map(|c| c.label.as_str()).collect();
    let mut text = format!("table of marks for {} ({} classes)\n", args[0], labels.len());
    text.push_str(&format!("\t{}\n", labels.join("\t")));
    let mut csv = format!("{}\n", labels.join(","));
    for (h, row) in lattice.mark_rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        text.push_str(&format!("{}\t{}\n", labels[h], cells.join("\t")));
        csv.push_str(&format!("{}\n", cells.join(",")));
    }
    Ok(Response {
        group: meta,
        classes: classes_json(&lattice),
        result: json!({"matrix": lattice.mark_rows()}),
        text,
        csv: Some(csv),
        exit: 0,
    })
}

fn cmd_mul(args: &[String], opts: &Options) -> Result<Response, CliError> {
    let args = want(args, 3, "mul <spec> <elt> <elt>")?;
    let (lattice, meta) = lattice_for(&args[0], opts)?;
    let x = parse_element(&lattice, &args[1])?;
    let y = parse_element(&lattice, &args[2])?;
    let product = mul(&x, &y)?;
    Ok(Response {
        group: meta,
        classes: classes_json(&lattice),
        result: element_json(&product),
        text: format!("{product}\n"),
        csv: None,
        exit: 0,
    })
}

fn cmd_ghost(args: &[String], opts: &Options) -> Result<Response, CliError> {
    let args = want(args, 2, "ghost <spec> <elt>")?;
    let (lattice, meta) = lattice_for(&args[0], opts)?;
    let x = parse_element(&lattice, &args[1])?;
    let marks = x.marks();
    let rendered = serde_json::to_string(marks.values()).expect("vector serializes");
    Ok(Response {
        group: meta,
        classes: classes_json(&lattice),
        result: json!({"ghost": ghost_json(&marks)}),
        text: format!("{rendered}\n"),
        csv: None,
        exit: 0,
    })
}

fn parse_ghost_arg(lattice: &Arc<SubgroupLattice>, raw: &str) -> Result<GhostVector, CliError> {
    let values: Vec<i64> = serde_json::from_str(raw)
        .map_err(|e| UsageError(format!("ghost vector must be a JSON integer array: {e}")))?;
    Ok(GhostVector::new(lattice, values)?)
}

fn cmd_inimage(args: &[String], opts: &Options) -> Result<Response, CliError> {
    let args = want(args, 2, "inimage <spec> <ghost-json>")?;
    let (lattice, meta) = lattice_for(&args[0], opts)?;
    let f = parse_ghost_arg(&lattice, &args[1])?;
    let violation = first_violation(&lattice, &f)?;
    let (text, result) = match &violation {
        None => (
            "true\n".to_string(),
            json!({"in_image": true, "failing": Value::Null}),
        ),
        Some(v) => {
            let shown = v.relation.display(&lattice);
            (
                format!("false\nfailing relation: {shown}\n"),
                json!({
                    "in_image": false,
                    "failing": {
                        "class": lattice.label(v.relation.class_index),
                        "relation": shown,
                        "modulus": v.relation.modulus,
                        "sum": v.sum,
                    },
                }),
            )
        }
    };
    Ok(Response {
        group: meta,
        classes: classes_json(&lattice),
        result,
        text,
        csv: None,
        exit: 0,
    })
}

fn cmd_enumerate(args: &[String], opts: &Options, idem: bool) -> Result<Response, CliError> {
    let name = if idem { "idempotents" } else { "units" };
    let args = want(args, 1, &format!("{name} <spec>"))?;
    let (lattice, meta) = lattice_for(&args[0], opts)?;
    let found = if idem {
        idempotents(&lattice)?
    } else {
        units(&lattice)?
    };
    let mut text = format!("{} {}\n", found.len(), name);
    for e in &found {
        text.push_str(&format!("{e}\n"));
    }
    Ok(Response {
        group: meta,
        classes: classes_json(&lattice),
        result: json!({
            "count": found.len(),
            "elements": found.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "ghosts": found
                .iter()
                .map(|e| ghost_json(&e.marks()))
                .collect::<Vec<_>>(),
        }),
        text,
        csv: None,
        exit: 0,
    })
}

fn cmd_spectrum(args: &[String], opts: &Options) -> Result<Response, CliError> {
    let args = want(args, 1, "spectrum <spec> [-p <prime>]")?;
    let (lattice, meta) = lattice_for(&args[0], opts)?;
    let primes: Vec<u64> = match opts.prime {
        Some(p) => vec![p],
        None => prime_divisors(lattice.group().order() as u64),
    };
    let mut text = format!("spectrum of {}\n", args[0]);
    let mut per_prime = Vec::new();
    for &p in &primes {
        let mut pairs = Vec::new();
        let mut groups: std::collections::BTreeMap<usize, Vec<String>> = Default::default();
        for h in 0..lattice.class_count() {
            let pair = p_perfection_pair(&lattice, h, p)?;
            pairs.push(json!({
                "class": lattice.label(h),
                "h_sub": lattice.label(pair.h_sub),
                "h_sup": lattice.label(pair.h_sup),
            }));
            text.push_str(&format!(
                "p={p}  {}: H_p={}  H^p={}\n",
                lattice.label(h),
                lattice.label(pair.h_sub),
                lattice.label(pair.h_sup)
            ));
            groups
                .entry(pair.h_sup)
                .or_default()
                .push(lattice.label(h).to_string());
        }
        let partition: Vec<Vec<String>> = groups.into_values().collect();
        for block in &partition {
            text.push_str(&format!("p={p}  equal ideals: {}\n", block.join(" ")));
        }
        per_prime.push(json!({
            "p": p,
            "pairs": pairs,
            "equal_ideal_classes": partition,
        }));
    }
    Ok(Response {
        group: meta,
        classes: classes_json(&lattice),
        result: json!({"primes": per_prime}),
        text,
        csv: None,
        exit: 0,
    })
}

fn cmd_map(args: &[String], opts: &Options) -> Result<Response, CliError> {
    if args.is_empty() {
        return Err(UsageError("expected map ind|res|prod|alpha ...".into()).into());
    }
    match args[0].as_str() {
        "ind" | "res" => {
            let rest = want(&args[1..], 3, "map ind|res <spec> <class> <elt>")?;
            let (ambient, meta) = lattice_for(&rest[0], opts)?;
            let class = ambient
                .resolve_label(&rest[1])
                .ok_or_else(|| UsageError(format!("unknown class label `{}`", rest[1])))?;
            let embedding = SubgroupEmbedding::for_class(&ambient, class)?;
            let out = if args[0] == "ind" {
                let x = parse_element(embedding.sub(), &rest[2])?;
                induction(&embedding, &x)?
            } else {
                let x = parse_element(&ambient, &rest[2])?;
                restriction(&embedding, &x)?
            };
            Ok(Response {
                group: meta,
                classes: classes_json(&ambient),
                result: json!({
                    "map": args[0],
                    "subgroup_classes": classes_json(embedding.sub()),
                    "image": element_json(&out),
                }),
                text: format!("{out}\n"),
                csv: None,
                exit: 0,
            })
        }
        "prod" => {
            let rest = want(&args[1..], 4, "map prod <spec1> <spec2> <e1> <e2>")?;
            let (left, _) = lattice_for(&rest[0], opts)?;
            let (right, _) = lattice_for(&rest[1], opts)?;
            let product_spec = format!("product:{},{}", rest[0], rest[1]);
            let (target, meta) = lattice_for(&product_spec, opts)?;
            let x = parse_element(&left, &rest[2])?;
            let y = parse_element(&right, &rest[3])?;
            let out = product_map(&target, &x, &y)?;
            Ok(Response {
                group: meta,
                classes: classes_json(&target),
                result: json!({"map": "prod", "image": element_json(&out)}),
                text: format!("{out}\n"),
                csv: None,
                exit: 0,
            })
        }
        "alpha" => {
            let rest = want(&args[1..], 2, "map alpha <spec> <elt>")?;
            let (target, meta) = lattice_for(&rest[0], opts)?;
            let cyclic_spec = format!("cyclic:{}", target.group().order());
            let (cyclic, _) = lattice_for(&cyclic_spec, opts)?;
            let x = parse_element(&cyclic, &rest[1])?;
            let out = alpha_map(&target, &cyclic, &x)?;
            Ok(Response {
                group: meta,
                classes: classes_json(&target),
                result: json!({"map": "alpha", "source": cyclic_spec, "image": element_json(&out)}),
                text: format!("{out}\n"),
                csv: None,
                exit: 0,
            })
        }
        other => Err(UsageError(format!("unknown map `{other}`")).into()),
    }
}

fn parse_vectors(raw: &str, n: usize) -> Result<Vec<Vec<u64>>, CliError> {
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    raw.split(';')
        .map(|row| {
            let v: Result<Vec<u64>, _> = row.split(',').map(|x| x.trim().parse()).collect();
            match v {
                Ok(v) if v.len() == n => Ok(v),
                Ok(v) => Err(UsageError(format!(
                    "vector `{row}` has length {}, expected {n}",
                    v.len()
                ))
                .into()),
                Err(_) => Err(UsageError(format!("bad vector `{row}`")).into()),
            }
        })
        .collect()
}

fn nf_json(nf: &ElementaryAbelianNF) -> Value {
    json!({
        "p": nf.p,
        "n": nf.n,
        "pivots": nf.pivots,
        "rows": nf.rows,
    })
}

fn nf_text(nf: &ElementaryAbelianNF) -> String {
    if nf.rank() == 0 {
        return "trivial subgroup (rank 0)".into();
    }
    let rows: Vec<String> = nf
        .pivots
        .iter()
        .zip(&nf.rows)
        .map(|(p, r)| {
            let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            format!("pivot {p}: ({})", cells.join(","))
        })
        .collect();
    rows.join("\n")
}

fn cmd_family(args: &[String], opts: &Options) -> Result<Response, CliError> {
    if args.is_empty() {
        return Err(UsageError("expected family o2|abelian|elementary ...".into()).into());
    }
    match args[0].as_str() {
        "o2" => cmd_family_o2(&args[1..]),
        "abelian" => cmd_family_abelian(&args[1..], opts),
        "elementary" => cmd_family_elementary(&args[1..]),
        other => Err(UsageError(format!("unknown family `{other}`")).into()),
    }
}

fn cmd_family_o2(args: &[String]) -> Result<Response, CliError> {
    if args.is_empty() {
        return Err(UsageError("expected family o2 mul|mark|perf ...".into()).into());
    }
    match args[0].as_str() {
        "mul" => {
            let rest = want(&args[1..], 2, "family o2 mul <e1> <e2>")?;
            let a = O2Element::parse(&rest[0])?;
            let b = O2Element::parse(&rest[1])?;
            let prod = o2_mul(&a, &b);
            Ok(Response::bare(
                json!({"element": prod.to_string()}),
                format!("{prod}\n"),
            ))
        }
        "mark" => {
            let rest = want(&args[1..], 2, "family o2 mark <elt> <subgroup>")?;
            let a = O2Element::parse(&rest[0])?;
            let s = O2Subgroup::parse(&rest[1])?;
            let value = o2_mark(&a, &s)?;
            Ok(Response::bare(
                json!({"mark": value, "at": s.to_string()}),
                format!("{value}\n"),
            ))
        }
        "perf" => {
            let rest = want(&args[1..], 2, "family o2 perf <subgroup> <p>")?;
            let s = O2Subgroup::parse(&rest[0])?;
            let p: u64 = rest[1]
                .parse()
                .map_err(|_| UsageError("p must be an integer".into()))?;
            let (h_sub, h_sup) = o2_p_perfection(&s, p)?;
            Ok(Response::bare(
                json!({"h_sub": h_sub.to_string(), "h_sup": h_sup.to_string()}),
                format!("H_p={h_sub}  H^p={h_sup}\n"),
            ))
        }
        other => Err(UsageError(format!("unknown o2 operation `{other}`")).into()),
    }
}

fn cmd_family_abelian(args: &[String], opts: &Options) -> Result<Response, CliError> {
    if args.is_empty() {
        return Err(UsageError("expected family abelian mul|reduce ...".into()).into());
    }
    match args[0].as_str() {
        "mul" => {
            let rest = want(&args[1..], 3, "family abelian mul <spec> <c1> <c2>")?;
            let (lattice, meta) = lattice_for(&rest[0], opts)?;
            let k = lattice
                .resolve_label(&rest[1])
                .ok_or_else(|| UsageError(format!("unknown class label `{}`", rest[1])))?;
            let l = lattice
                .resolve_label(&rest[2])
                .ok_or_else(|| UsageError(format!("unknown class label `{}`", rest[2])))?;
            let out = abelian_mul(&lattice, k, l)?;
            Ok(Response {
                group: meta,
                classes: classes_json(&lattice),
                result: element_json(&out),
                text: format!("{out}\n"),
                csv: None,
                exit: 0,
            })
        }
        "reduce" => {
            if args.len() < 2 || args.len() > 3 {
                return Err(UsageError(
                    "expected family abelian reduce <rank> [d1,...]".into(),
                )
                .into());
            }
            let rank: u32 = args[1]
                .parse()
                .map_err(|_| UsageError("rank must be an integer".into()))?;
            let factors: Vec<u64> = if args.len() == 3 {
                args[2]
                    .split(',')
                    .map(|x| x.trim().parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| UsageError("bad invariant factor list".into()))?
            } else {
                Vec::new()
            };
            let d = CompactAbelianDescriptor::new(rank, factors)?;
            let reduced = compact_abelian_reduce(&d);
            let order = reduced.known_order().unwrap_or(0);
            Ok(Response::bare(
                json!({"component_group": reduced.to_string(), "order": order}),
                format!("{reduced}\n"),
            ))
        }
        other => Err(UsageError(format!("unknown abelian operation `{other}`")).into()),
    }
}

fn cmd_family_elementary(args: &[String]) -> Result<Response, CliError> {
    if args.is_empty() {
        return Err(UsageError("expected family elementary nf|intersect ...".into()).into());
    }
    let parse_pn = |p: &str, n: &str| -> Result<(u64, usize), CliError> {
        let p: u64 = p
            .parse()
            .map_err(|_| UsageError("p must be an integer".into()))?;
        let n: usize = n
            .parse()
            .map_err(|_| UsageError("n must be an integer".into()))?;
        Ok((p, n))
    };
    match args[0].as_str() {
        "nf" => {
            let rest = want(&args[1..], 3, "family elementary nf <p> <n> <rows>")?;
            let (p, n) = parse_pn(&rest[0], &rest[1])?;
            let gens = parse_vectors(&rest[2], n)?;
            let nf = nf_from_generators(p, n, &gens)?;
            Ok(Response::bare(nf_json(&nf), format!("{}\n", nf_text(&nf))))
        }
        "intersect" => {
            let rest = want(
                &args[1..],
                4,
                "family elementary intersect <p> <n> <rowsA> <rowsB>",
            )?;
            let (p, n) = parse_pn(&rest[0], &rest[1])?;
            let a = nf_from_generators(p, n, &parse_vectors(&rest[2], n)?)?;
            let b = nf_from_generators(p, n, &parse_vectors(&rest[3], n)?)?;
            let result = nf_intersect(&a, &b)?;
            let text = format!(
                "linear:\n{}\ntuple rule:\n{}\nagree: {}\n",
                nf_text(&result.linear),
                nf_text(&result.tuple_rule),
                result.agree
            );
            Ok(Response::bare(
                json!({
                    "linear": nf_json(&result.linear),
                    "tuple_rule": nf_json(&result.tuple_rule),
                    "agree": result.agree,
                }),
                text,
            ))
        }
        other => Err(UsageError(format!("unknown elementary operation `{other}`")).into()),
    }
}

fn cmd_verify(args: &[String], opts: &Options) -> Result<Response, CliError> {
    let args = want(args, 1, "verify <spec|o2>")?;
    if args[0] == "o2" {
        return verify_o2();
    }
    let (lattice, meta) = lattice_for(&args[0], opts)?;
    let mut lines: Vec<(String, bool)> = Vec::new();
    if let Some(rs) = builtin_presentation(&lattice)? {
        let report = verify_presentation(&lattice, &rs)?;
        for o in &report.outcomes {
            lines.push((format!("relation {}", o.relation), o.pass));
        }
    } else {
        lines.extend(generic_verification(&lattice)?);
    }
    let all_pass = lines.iter().all(|(_, pass)| *pass);
    let mut text = String::new();
    for (what, pass) in &lines {
        text.push_str(&format!(
            "{}: {}\n",
            what,
            if *pass { "PASS" } else { "FAIL" }
        ));
    }
    text.push_str(&format!(
        "{} checks, {} passed\n",
        lines.len(),
        lines.iter().filter(|(_, p)| *p).count()
    ));
    Ok(Response {
        group: meta,
        classes: classes_json(&lattice),
        result: json!({
            "checks": lines
                .iter()
                .map(|(what, pass)| json!({"check": what, "pass": pass}))
                .collect::<Vec<_>>(),
            "all_pass": all_pass,
        }),
        text,
        csv: None,
        exit: if all_pass { 0 } else { 1 },
    })
}

/// Groups without a recognized presentation run the structural suite:
/// mark-matrix invariants, triple-route multiplication agreement on all
/// basis pairs, congruence annihilation of mark rows, the order inclusion,
/// and the ghost round trip.
fn generic_verification(lattice: &Arc<SubgroupLattice>) -> Result<Vec<(String, bool)>, CliError> {
    let mut lines = Vec::new();
    let n = lattice.class_count();
    let mut invariants = true;
    for h in 0..n {
        if lattice.mark(h, h) != lattice.weyl_order(h) {
            invariants = false;
        }
        for k in 0..n {
            if k > h && lattice.mark(h, k) != 0 {
                invariants = false;
            }
            if lattice.mark(h, k) % lattice.weyl_order(h) != 0 {
                invariants = false;
            }
        }
    }
    lines.push(("mark matrix invariants".to_string(), invariants));
    let mut agree = true;
    for h in 0..n {
        for k in 0..n {
            let x = BurnsideElement::basis(lattice, h)?;
            let y = BurnsideElement::basis(lattice, k)?;
            let ghost = mul(&x, &y)?;
            if ghost != mul_via_double_cosets(&x, &y)? || ghost != mul_via_orbit_types(&x, &y)? {
                agree = false;
            }
        }
    }
    lines.push((
        format!("triple multiplication agreement ({} basis pairs)", n * n),
        agree,
    ));
    let mut annihilate = true;
    for row in lattice.mark_rows() {
        let f = GhostVector::new(lattice, row.clone())?;
        if first_violation(lattice, &f)?.is_some() {
            annihilate = false;
        }
    }
    lines.push((
        "congruence relations annihilate mark rows".to_string(),
        annihilate,
    ));
    let (order, inclusion) = order_check(lattice)?;
    lines.push((
        format!("order invariant lcm = {order} with |G|C(G) inclusion"),
        order == lattice.group().order() as i64 && inclusion,
    ));
    let mut round = true;
    for h in 0..n {
        let x = BurnsideElement::basis(lattice, h)?;
        if element_from_ghost(&x.marks())? != x {
            round = false;
        }
    }
    lines.push(("mark inverse round trip on basis".to_string(), round));
    Ok(lines)
}

fn verify_o2() -> Result<Response, CliError> {
    let mut subgroups = vec![O2Subgroup::Full, O2Subgroup::SO2];
    subgroups.extend((1..=60).map(O2Subgroup::Dihedral));
    let mut basis = vec![O2Element::one(), O2Element::y_basis()];
    for n in 1..=20 {
        basis.push(O2Element::x_basis(n)?);
    }
    let mut lines: Vec<(String, bool)> = Vec::new();
    let mut consistent = true;
    for u in &basis {
        for v in &basis {
            let prod = o2_mul(u, v);
            for s in &subgroups {
                if o2_mark(&prod, s)? != o2_mark(u, s)? * o2_mark(v, s)? {
                    consistent = false;
                }
            }
        }
    }
    lines.push((
        format!(
            "relations mark-consistent over {} basis pairs at {} subgroups",
            basis.len() * basis.len(),
            subgroups.len()
        ),
        consistent,
    ));
    let perf = o2_p_perfection(&O2Subgroup::Dihedral(1), 2)?;
    lines.push((
        "p-perfection example (d1, 2) -> (so2, full)".to_string(),
        perf == (O2Subgroup::SO2, O2Subgroup::Full),
    ));
    let mut diagonal = true;
    for s in &subgroups {
        let b = match s {
            O2Subgroup::Full => O2Element::one(),
            O2Subgroup::SO2 => O2Element::y_basis(),
            O2Subgroup::Dihedral(n) => O2Element::x_basis(*n)?,
            _ => continue,
        };
        if o2_mark(&b, s)? != s.weyl_order()? {
            diagonal = false;
        }
    }
    lines.push(("diagonal marks equal Weyl orders".to_string(), diagonal));
    let all_pass = lines.iter().all(|(_, p)| *p);
    let mut text = String::new();
    for (what, pass) in &lines {
        text.push_str(&format!(
            "{}: {}\n",
            what,
            if *pass { "PASS" } else { "FAIL" }
        ));
    }
    text.push_str(&format!(
        "{} checks, {} passed\n",
        lines.len(),
        lines.iter().filter(|(_, p)| *p).count()
    ));
    let mut resp = Response::bare(
        json!({
            "checks": lines
                .iter()
                .map(|(what, pass)| json!({"check": what, "pass": pass}))
                .collect::<Vec<_>>(),
            "all_pass": all_pass,
        }),
        text,
    );
    resp.exit = if all_pass { 0 } else { 1 };
    Ok(resp)
}

pub fn main_entry() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, output) = run_command(&args);
    use std::io::Write;
    std::io::stdout()
        .write_all(&output)
        .expect("stdout write failed");
    std::process::exit(code);
}
