use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use matchpoly::lattice::{EulerianVerdict, Pentagon};
use matchpoly::polynomial::{
    min_weight_pm_polynomial, verify_exhaustive, verify_sampled, MinWeightMembership, TRANSFORM_BIT_CAP,
};
use matchpoly::{
    covered_closure, enumerate_min_weight_pms, enumerate_perfect_matchings, parse_graph, CoefficientOracle, Graph,
    GroundGraph, Lattice, MultilinearPolynomial, RankLabels, WeightFunction,
};

use crate::{Cli, CoeffArgs, Command, Format, GroundArgs, LatticeArgs, Mode, VerifyArgs};

/// Largest n for which the covered closure is built without --unsafe-caps.
const CLOSURE_CAP: usize = 4;
/// Largest complete ground K_m accepted without --unsafe-caps.
const COMPLETE_CAP: usize = 6;
/// Hard ceiling on exhaustive verification width, even with --unsafe-caps.
const UNSAFE_BIT_CAP: usize = 30;

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Verification(String),
}

impl From<matchpoly::Error> for Failure {
    fn from(e: matchpoly::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn input<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Input(msg.into()))
}

pub fn run(cli: &Cli) -> Outcome {
    let started = Instant::now();
    let result = match &cli.command {
        Command::Poly(args) => poly(cli, args),
        Command::Coeff(args) => coeff(cli, args),
        Command::Verify(args) => verify(cli, args),
        Command::Lattice(args) => lattice(cli, args),
        Command::CountCovered(args) => count_covered(cli, args),
    };
    if cli.verbose > 0 {
        eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    }
    result
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).or_else(|e| input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).or_else(|e| input(format!("{}: {e}", path.display())))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Outcome {
    match output {
        Some(path) => std::fs::write(path, text).or_else(|e| input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parity(count: usize) -> &'static str {
    if count % 2 == 1 {
        "odd"
    } else {
        "even"
    }
}

/// Resolves `--n` and `--weights` into a weight function (unit weights when
/// no file is given).
fn weights(args: &GroundArgs) -> Result<WeightFunction, Failure> {
    let w = match &args.weights {
        Some(path) => WeightFunction::parse(&read(path)?).or_else(|e| input(format!("{}: {e}", path.display())))?,
        None => match args.n {
            Some(n) => WeightFunction::unit(n)?,
            None => return input("--n or --weights is required"),
        },
    };
    if let Some(n) = args.n {
        if n != w.n() {
            return input(format!("--n {n} does not match the weight file ground {}", w.ground()));
        }
    }
    Ok(w)
}

fn check_closure_cap(cli: &Cli, n: usize) -> Outcome {
    if n > CLOSURE_CAP && !cli.unsafe_caps {
        return input(format!(
            "n = {n} exceeds the closure cap {CLOSURE_CAP}; pass --unsafe-caps to proceed"
        ));
    }
    Ok(())
}

fn no_dot(cli: &Cli) -> Outcome {
    if cli.format == Format::Dot {
        return input("--format dot is only available for `lattice`");
    }
    Ok(())
}

fn poly(cli: &Cli, args: &GroundArgs) -> Outcome {
    no_dot(cli)?;
    let w = weights(args)?;
    check_closure_cap(cli, w.n())?;
    let p = min_weight_pm_polynomial(&w)?;
    let text = match cli.format {
        Format::Json => p.to_json() + "\n",
        _ => p.to_text(),
    };
    emit(&cli.output, &text)?;
    eprintln!("terms: {} ({})", p.term_count(), parity(p.term_count()));
    Ok(())
}

fn coeff(cli: &Cli, args: &CoeffArgs) -> Outcome {
    no_dot(cli)?;
    let path = args
        .graph
        .as_ref()
        .or(args.monomial.as_ref())
        .expect("clap requires a graph");
    let g = read_graph(path)?;
    let GroundGraph::Bipartite { n } = g.ground() else {
        return input(format!(
            "coefficient queries need a bipartite ground, got {}",
            g.ground()
        ));
    };
    let ground_args = GroundArgs {
        n: args.ground.n.or(Some(n)),
        weights: args.ground.weights.clone(),
    };
    let w = weights(&ground_args)?;
    if w.n() != n {
        return input(format!(
            "graph ground {} does not match weights ground {}",
            g.ground(),
            w.ground()
        ));
    }
    let c = CoefficientOracle::new(&w).coefficient(&g)?;
    let text = match (cli.format, c) {
        (Format::Json, c) => format!("{{\"coeff\": {c}}}\n"),
        (_, 0) => "0\n".to_string(),
        (_, c) => format!("{c:+}\n"),
    };
    emit(&cli.output, &text)
}

fn load_polynomial(path: &Path, ground: GroundGraph) -> Result<MultilinearPolynomial, Failure> {
    let text = read(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        MultilinearPolynomial::parse_json(&text)
    } else {
        MultilinearPolynomial::parse_text(ground, &text)
    };
    let p = parsed.or_else(|e| input(format!("{}: {e}", path.display())))?;
    if p.ground() != ground {
        return input(format!(
            "{}: polynomial ground {} does not match {ground}",
            path.display(),
            p.ground()
        ));
    }
    Ok(p)
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Outcome {
    no_dot(cli)?;
    let w = weights(&args.ground)?;
    let bits = w.ground().edge_count();
    let cap = if cli.unsafe_caps {
        UNSAFE_BIT_CAP
    } else {
        TRANSFORM_BIT_CAP
    };
    if args.exhaustive && bits > cap {
        return input(format!(
            "exhaustive verification needs {bits} bits, above the cap {cap}"
        ));
    }
    let p = match &args.check_file {
        Some(path) => load_polynomial(path, w.ground())?,
        None => {
            check_closure_cap(cli, w.n())?;
            min_weight_pm_polynomial(&w)?
        }
    };
    let oracle = MinWeightMembership::new(&w);
    let contains = |g: &Graph| oracle.contains_min_weight_pm(g);
    let (mismatch, checked) = if args.exhaustive {
        (verify_exhaustive(&p, contains, cap)?, 1u64 << bits)
    } else {
        let samples = usize::try_from(args.samples).or_else(|_| input("--samples is too large"))?;
        (verify_sampled(&p, contains, samples, args.seed), args.samples)
    };
    match mismatch {
        None => {
            let how = if args.exhaustive { "exhaustive" } else { "sampled" };
            let text = match cli.format {
                Format::Json => format!("{{\"ok\": true, \"mode\": \"{how}\", \"points\": {checked}}}\n"),
                _ => format!("ok: {checked} points agree ({how})\n"),
            };
            emit(&cli.output, &text)
        }
        Some(m) => {
            let point = if m.assignment.edge_count() == 0 {
                "0".to_string()
            } else {
                m.assignment.to_pair_list()
            };
            let text = match cli.format {
                Format::Json => format!(
                    "{{\"ok\": false, \"assignment\": \"{point}\", \"polynomial\": \"{}\", \"oracle\": {}}}\n",
                    m.polynomial, m.oracle as u8
                ),
                _ => format!(
                    "mismatch at {point}: polynomial = {}, oracle = {}\n",
                    m.polynomial, m.oracle as u8
                ),
            };
            emit(&cli.output, &text)?;
            Err(Failure::Verification(format!(
                "polynomial and oracle disagree at {point}"
            )))
        }
    }
}

fn build_lattice(cli: &Cli, args: &LatticeArgs) -> Result<Lattice, Failure> {
    let family = match args.mode {
        Mode::Bipartite => {
            let w = weights(&GroundArgs {
                n: args.n,
                weights: args.weights.clone(),
            })?;
            check_closure_cap(cli, w.n())?;
            enumerate_min_weight_pms(&w)
        }
        Mode::Complete => {
            if args.weights.is_some() {
                return input("--weights applies to bipartite mode only");
            }
            let Some(m) = args.n else {
                return input("--n is required");
            };
            if m % 2 == 1 {
                return input(format!("K_{m} has no perfect matchings (odd order)"));
            }
            if m > COMPLETE_CAP && !cli.unsafe_caps {
                return input(format!(
                    "m = {m} exceeds the complete-mode cap {COMPLETE_CAP}; pass --unsafe-caps"
                ));
            }
            enumerate_perfect_matchings(&GroundGraph::complete(m)?.full_graph())
        }
    };
    Ok(Lattice::from_family(&family)?)
}

fn element_of(l: &Lattice, path: &Path) -> Result<(usize, Graph), Failure> {
    let g = read_graph(path)?;
    if g.ground() != l.ground() {
        return input(format!(
            "{}: ground {} does not match lattice ground {}",
            path.display(),
            g.ground(),
            l.ground()
        ));
    }
    match l.index_of(&g) {
        Some(x) => Ok((x, g)),
        None => input(format!("{}: graph is not an element of the lattice", path.display())),
    }
}

fn label(g: &Graph) -> String {
    if g.edge_count() == 0 {
        "0".to_string()
    } else {
        g.to_pair_list()
    }
}

fn summary(l: &Lattice) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ground: {}", l.ground());
    let _ = writeln!(out, "elements: {}", l.len());
    let _ = writeln!(out, "lattice: {}", l.verify_lattice());
    match l.rank_labels() {
        RankLabels::Graded(ranks) => {
            let _ = writeln!(out, "graded: true");
            let _ = writeln!(out, "rank: {}", ranks[l.top()]);
        }
        RankLabels::NotGraded {
            lower,
            upper,
            lower_level,
            upper_level,
        } => {
            let _ = writeln!(out, "graded: false");
            let _ = writeln!(
                out,
                "not-graded witness: {} (level {lower_level}) covered by {} (level {upper_level})",
                label(l.element(lower)),
                label(l.element(upper))
            );
        }
    }
    match l.eulerian_verdict() {
        EulerianVerdict::Eulerian => {
            let _ = writeln!(out, "eulerian: true");
        }
        EulerianVerdict::NotGraded { .. } => {
            let _ = writeln!(out, "eulerian: false (not graded)");
        }
        EulerianVerdict::Unbalanced {
            lower,
            upper,
            even,
            odd,
        } => {
            let _ = writeln!(
                out,
                "eulerian: false (interval [{}, {}] has {even} even and {odd} odd ranks)",
                label(l.element(lower)),
                label(l.element(upper))
            );
        }
    }
    let levels: Vec<String> = l.level_counts().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "levels: {}", levels.join(" "));
    out
}

fn pentagon_text(l: &Lattice, p: &Pentagon) -> String {
    let kind = if l.is_cover_pentagon(p) {
        "cover pentagon"
    } else {
        "pentagon"
    };
    let mut out = format!("{kind}:\n");
    for (name, x) in [
        ("bottom", p.bottom),
        ("a", p.a),
        ("c1", p.c1),
        ("c2", p.c2),
        ("top", p.top),
    ] {
        let _ = writeln!(out, "  {name}: {}", label(l.element(x)));
    }
    out
}

fn lattice(cli: &Cli, args: &LatticeArgs) -> Outcome {
    // read every query file before the (possibly long) lattice build
    let graph_text = args.graph.as_ref().map(|p| read(p)).transpose()?;
    let interval_text = args.interval.as_ref().map(|p| read(p)).transpose()?;
    for (path, text) in [(&args.graph, &graph_text), (&args.interval, &interval_text)] {
        if let (Some(path), Some(text)) = (path, text) {
            parse_graph(text).or_else(|e| input(format!("{}: {e}", path.display())))?;
        }
    }

    let l = build_lattice(cli, args)?;
    let mut queries = String::new();
    if let Some(path) = &args.graph {
        let (x, _) = element_of(&l, path)?;
        if args.mobius {
            let _ = writeln!(queries, "{}", l.mobius(x));
        } else {
            let levels = l.levels();
            let _ = writeln!(queries, "index: {x}");
            let _ = writeln!(queries, "level: {}", levels[x]);
            let _ = writeln!(queries, "mobius: {}", l.mobius(x));
        }
    }
    if let Some(path) = &args.interval {
        let (_, g) = element_of(&l, path)?;
        let interval = l.interval_below(&g)?;
        let counts: Vec<String> = interval.level_counts().iter().map(usize::to_string).collect();
        let _ = writeln!(queries, "{}", counts.join(" "));
    }
    if args.find_pentagon {
        match l.find_pentagon() {
            Some(p) => queries.push_str(&pentagon_text(&l, &p)),
            None => queries.push_str("no pentagon\n"),
        }
    }

    let has_query = args.graph.is_some() || args.interval.is_some() || args.find_pentagon;
    let export = match cli.format {
        Format::Text => None,
        Format::Json => Some(l.to_json() + "\n"),
        Format::Dot => Some(l.to_dot()),
    };
    match (export, has_query) {
        (Some(doc), _) => {
            emit(&cli.output, &doc)?;
            eprint!("{}", summary(&l));
            print!("{queries}");
        }
        (None, true) => {
            eprint!("{}", summary(&l));
            emit(&cli.output, &queries)?;
        }
        (None, false) => emit(&cli.output, &summary(&l))?,
    }
    Ok(())
}

fn count_covered(cli: &Cli, args: &GroundArgs) -> Outcome {
    no_dot(cli)?;
    let w = weights(args)?;
    check_closure_cap(cli, w.n())?;
    let covered = covered_closure(&enumerate_min_weight_pms(&w))?;
    let count = covered.len();
    let text = match cli.format {
        Format::Json => format!("{{\"count\": {count}, \"parity\": \"{}\"}}\n", parity(count)),
        _ => format!("{count} {}\n", parity(count)),
    };
    emit(&cli.output, &text)?;
    if count % 2 == 0 {
        return Err(Failure::Verification(format!("covered count {count} is even")));
    }
    Ok(())
}
