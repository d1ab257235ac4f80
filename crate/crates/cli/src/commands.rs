use cutgeom::ball::{ball_distance_with, slab_volume_exact, slab_volume_limit, BallSlabSpec};
use cutgeom::cube::{
    conjecture3_search_with, cut_threshold_for_normal, diag_cut_distance, diag_cut_threshold, diag_distance_limit,
    halfspace_cube_volume, CubeConfig, CubeCutSpec, LimitVariant, NormalVector, SearchConfig,
};
use cutgeom::mc::{estimate_halfspace_volume, McConfig, McTarget};
use cutgeom::specfun::{berry_esseen_bound, irwin_hall_cdf_with, irwin_hall_sup_gap};
use cutgeom::sweep::{ball_distance_convergence, cube_distance_convergence};
use cutgeom::{Error, Method, ToleranceConfig};

use crate::args::{BodyArg, Command, CubeCutArgs, McArgs, VariantArg};
use crate::output::{Cell, Output, Table};
use crate::Failure;

type Outcome = std::result::Result<Output, Failure>;

pub fn dispatch(command: &Command) -> Outcome {
    let tol = ToleranceConfig::default();
    match command {
        Command::BallSlab { n, d } => ball_slab(*n, *d, &tol),
        Command::BallDistance { epsilon, n } => ball_distance(*epsilon, *n, &tol),
        Command::CubeCut(args) => cube_cut(args, &tol),
        Command::CubeDistance { n, epsilon } => cube_distance(*n, *epsilon, &tol),
        Command::Converge { body, epsilon, n_list, variant } => converge(*body, *epsilon, n_list, *variant, &tol),
        Command::Conjecture { n, epsilon, restarts, seed, workers } => {
            let cfg = SearchConfig { restarts: *restarts, seed: *seed, workers: *workers, ..SearchConfig::default() };
            let report = conjecture3_search_with(*n, *epsilon, &cfg)?;
            let doc = serde_json::to_value(&report).map_err(|e| Failure::Other(e.to_string()))?;
            Ok(Output::Document(doc))
        }
        Command::Mc(args) => monte_carlo(args, &tol),
        Command::Bound { n, points } => bound(n, *points, &tol),
    }
}

fn ball_slab(n: usize, d: f64, tol: &ToleranceConfig) -> Outcome {
    let spec = BallSlabSpec::new(n, d)?;
    let exact = slab_volume_exact(spec.n, spec.d, tol)?;
    let limit = slab_volume_limit(d)?;
    let mut t = Table::new(&["n", "d", "method", "value", "limit", "gap"]);
    t.push(vec![n.into(), d.into(), exact.method.as_str().into(), exact.value.into(), limit.into(), (exact.value - limit).into()]);
    Ok(Output::Table(t))
}

fn ball_distance(epsilon: f64, n: Option<usize>, tol: &ToleranceConfig) -> Outcome {
    let mut t = Table::new(&["n", "epsilon", "method", "value"]);
    if n.is_some() {
        let r = ball_distance_with(epsilon, n, tol)?;
        t.push(vec![r.n.into(), epsilon.into(), r.method.as_str().into(), r.distance.into()]);
    }
    let r = ball_distance_with(epsilon, None, tol)?;
    t.push(vec![Cell::Empty, epsilon.into(), r.method.as_str().into(), r.distance.into()]);
    Ok(Output::Table(t))
}

/// The unit normal for an optional raw direction, and the factor turning a
/// threshold in the raw scale into one for the unit normal.
fn resolve_normal(n: Option<usize>, direction: Option<&[f64]>) -> std::result::Result<(NormalVector, f64), Failure> {
    match (n, direction) {
        (_, Some(v)) => {
            if let Some(n) = n.filter(|&n| n != v.len()) {
                return Err(Failure::Usage(format!("--n {n} does not match the {} components of --normal", v.len())));
            }
            let normal = NormalVector::from_direction(v)?;
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            Ok((normal, norm))
        }
        (Some(n), None) => Ok((NormalVector::diagonal(n)?, (n as f64).sqrt())),
        (None, None) => Err(Failure::Usage("either --n or --normal is required".into())),
    }
}

fn cube_cut(args: &CubeCutArgs, tol: &ToleranceConfig) -> Outcome {
    let mut t = Table::new(&["n", "epsilon", "a", "method", "value"]);
    if args.normal.is_none() {
        let n = args.n.ok_or_else(|| Failure::Usage("either --n or --normal is required".into()))?;
        let a = match (args.a, args.epsilon) {
            (Some(a), _) => a,
            (None, Some(eps)) => diag_cut_threshold(n, eps, tol)?,
            (None, None) => unreachable!("clap requires --a or --epsilon"),
        };
        let est = irwin_hall_cdf_with(n, a, tol)?;
        t.push(vec![n.into(), args.epsilon.into(), a.into(), est.method.as_str().into(), est.value.into()]);
        return Ok(Output::Table(t));
    }
    let (normal, scale) = resolve_normal(args.n, args.normal.as_deref())?;
    let cfg = CubeConfig { tol: *tol, ..CubeConfig::default() };
    let threshold = match (args.a, args.epsilon) {
        (Some(a), _) => a / scale,
        (None, Some(eps)) => cut_threshold_for_normal(&normal, eps, &cfg)?,
        (None, None) => unreachable!("clap requires --a or --epsilon"),
    };
    let n = normal.dim();
    let est = halfspace_cube_volume(&CubeCutSpec::new(normal, threshold)?, &cfg)?;
    t.push(vec![n.into(), args.epsilon.into(), (threshold * scale).into(), est.method.as_str().into(), est.value.into()]);
    Ok(Output::Table(t))
}

fn irwin_hall_method(n: usize, tol: &ToleranceConfig) -> Method {
    if n <= tol.exact_irwin_hall_max_n {
        Method::Exact
    } else {
        Method::Gaussian
    }
}

fn variant_name(v: LimitVariant) -> &'static str {
    match v {
        LimitVariant::Paper => "paper",
        LimitVariant::Corrected => "corrected",
    }
}

fn cube_distance(n: usize, epsilon: f64, tol: &ToleranceConfig) -> Outcome {
    let d = diag_cut_distance(n, epsilon, tol)?;
    let mut t = Table::new(&["n", "epsilon", "method", "variant", "value", "gap"]);
    t.push(vec![n.into(), epsilon.into(), irwin_hall_method(n, tol).as_str().into(), Cell::Empty, d.into(), Cell::Empty]);
    for variant in [LimitVariant::Corrected, LimitVariant::Paper] {
        let limit = diag_distance_limit(epsilon, variant)?;
        t.push(vec![
            Cell::Empty,
            epsilon.into(),
            Method::Limit.as_str().into(),
            variant_name(variant).into(),
            limit.into(),
            (d - limit).into(),
        ]);
    }
    Ok(Output::Table(t))
}

fn converge(body: BodyArg, epsilon: f64, dims: &[usize], variant: VariantArg, tol: &ToleranceConfig) -> Outcome {
    let mut t = Table::new(&["body", "n", "epsilon", "method", "value", "limit", "gap"]);
    let rows = match body {
        BodyArg::Ball => ball_distance_convergence(epsilon, dims, tol)?,
        BodyArg::Cube => {
            let variant = match variant {
                VariantArg::Paper => LimitVariant::Paper,
                VariantArg::Corrected => LimitVariant::Corrected,
            };
            cube_distance_convergence(epsilon, dims, variant, tol)?
        }
    };
    for row in rows {
        let method = match body {
            BodyArg::Ball => Method::FiniteN,
            BodyArg::Cube => irwin_hall_method(row.n, tol),
        };
        t.push(vec![
            body.as_str().into(),
            row.n.into(),
            epsilon.into(),
            method.as_str().into(),
            row.finite.into(),
            row.limit.into(),
            row.gap.into(),
        ]);
    }
    Ok(Output::Table(t))
}

fn monte_carlo(args: &McArgs, tol: &ToleranceConfig) -> Outcome {
    let mc = McConfig { seed: args.seed, samples: args.samples, workers: args.workers };
    let (threshold, target, exact) = match args.body {
        BodyArg::Cube => {
            let (normal, scale) = resolve_normal(Some(args.n), args.normal.as_deref())?;
            let cfg = CubeConfig { tol: *tol, ..CubeConfig::default() };
            let t = match (args.threshold, args.epsilon) {
                (Some(a), _) => a / scale,
                (None, Some(eps)) if args.normal.is_none() => diag_cut_threshold(args.n, eps, tol)? / scale,
                (None, Some(eps)) => cut_threshold_for_normal(&normal, eps, &cfg)?,
                (None, None) => unreachable!("clap requires --epsilon or --threshold"),
            };
            let cut = CubeCutSpec::new(normal, t)?;
            let exact = if args.normal.is_none() {
                Some(irwin_hall_cdf_with(args.n, t * scale, tol)?)
            } else {
                match halfspace_cube_volume(&cut, &cfg) {
                    Ok(v) => Some(v),
                    Err(Error::Capability(_)) => None,
                    Err(e) => return Err(e.into()),
                }
            };
            (t * scale, McTarget::CubeCut(cut), exact)
        }
        BodyArg::Ball => {
            if args.normal.is_some() {
                return Err(Failure::Usage("--normal applies to the cube only".into()));
            }
            let d = match (args.threshold, args.epsilon) {
                (Some(d), _) => d,
                (None, Some(eps)) => 0.5 * ball_distance_with(eps, Some(args.n), tol)?.distance,
                (None, None) => unreachable!("clap requires --epsilon or --threshold"),
            };
            let spec = BallSlabSpec::new(args.n, d)?;
            (d, McTarget::BallSlab(spec), Some(slab_volume_exact(spec.n, spec.d, tol)?))
        }
    };
    let est = estimate_halfspace_volume(&target, &mc)?;
    let mut t = Table::new(&[
        "body", "n", "epsilon", "threshold", "method", "value", "std_error", "ci95_low", "ci95_high", "samples", "exact",
        "exact_method",
    ]);
    t.push(vec![
        args.body.as_str().into(),
        args.n.into(),
        args.epsilon.into(),
        threshold.into(),
        Method::MonteCarlo.as_str().into(),
        est.mean.into(),
        est.std_error.into(),
        est.ci95_low.into(),
        est.ci95_high.into(),
        est.samples.into(),
        exact.map(|e| e.value).into(),
        exact.map(|e| e.method.as_str()).into(),
    ]);
    Ok(Output::Table(t))
}

fn bound(dims: &[usize], points: usize, tol: &ToleranceConfig) -> Outcome {
    let mut t = Table::new(&["n", "method", "value", "sup_gap", "within"]);
    for &n in dims {
        if n > tol.exact_irwin_hall_max_n {
            return Err(Error::capability(format!(
                "the sup gap needs the exact CDF, available up to n = {}, got {n}",
                tol.exact_irwin_hall_max_n
            ))
            .into());
        }
        let be = berry_esseen_bound(n)?;
        let gap = irwin_hall_sup_gap(n, points)?;
        t.push(vec![n.into(), "berry_esseen".into(), be.into(), gap.into(), (gap <= be).into()]);
    }
    Ok(Output::Table(t))
}
