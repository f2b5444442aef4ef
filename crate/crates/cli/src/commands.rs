//! Subcommand implementations. Results go to stdout (or `--out`),
//! diagnostics to stderr.

use std::fs;
use std::time::Instant;

use hvhess::geometry::{concat, deconcat};
use hvhess::hessian3d::hessian_3d_sweep;
use hvhess::hessian_nd::hessian_objective;
use hvhess::hypervolume::{hv, hv_points};
use hvhess::oracle::{fd_gradient, fd_hessian, FdConfig};
use hvhess::problems::{make_quadratic_mop, newton_step};
use hvhess::synthetic::random_front_3d;
use hvhess::verify::verify_derivatives;
use hvhess::{ObjectiveModel, PointSet64};

use crate::input::{parse_document, parse_vector, resolve_reference};
use crate::output::{dense_csv, fmt_float, sparse_triples};
use crate::{Algorithm, BenchArgs, CliError, GradArgs, HessArgs, InputArgs, NewtonArgs, VerifyArgs};

fn load_set(args: &InputArgs) -> Result<PointSet64, CliError> {
    let text = fs::read_to_string(&args.input)?;
    let doc = parse_document(&text)?;
    let reference = resolve_reference(&doc, args.reference.as_deref())?;
    Ok(PointSet64::new(doc.points, reference)?)
}

fn emit(args: &InputArgs, content: &str) -> Result<(), CliError> {
    match &args.out {
        Some(path) => fs::write(path, content).map_err(CliError::from),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn run_hv(args: &InputArgs) -> Result<(), CliError> {
    let set = load_set(args)?;
    let result = hv(&set);
    let mut out = format!("{}\n", fmt_float(result.value));
    out.push_str(&format!("# dominated_points {}\n", result.dominated_count));
    emit(args, &out)
}

pub fn run_grad(args: &GradArgs) -> Result<(), CliError> {
    let set = load_set(&args.input)?;
    let grad = hvhess::hv_gradient(&set)?;
    if !grad.dominated.is_empty() {
        eprintln!(
            "warning: {} dominated point(s) with zero gradient entries: {:?}",
            grad.dominated.len(),
            grad.dominated
        );
    }
    let mut out = String::new();
    for v in &grad.values {
        out.push_str(&fmt_float(*v));
        out.push('\n');
    }

    if args.fd_check {
        let cfg = FdConfig::new(args.h, args.tol, args.tol)?;
        let m = set.dim();
        let reference = set.reference().to_vec();
        let fd = fd_gradient(
            |v| hv_points(&deconcat(v, m).expect("layout"), &reference),
            &concat(&set),
            &cfg,
        );
        let (abs, rel) = max_deviation(grad.values.iter().copied(), fd.iter().copied());
        out.push_str(&format!(
            "# fd_check max_abs_dev {} max_rel_dev {} tol {}\n",
            fmt_float(abs),
            fmt_float(rel),
            fmt_float(args.tol)
        ));
        let ok = grad.values.iter().zip(&fd).all(|(&a, &f)| cfg.within(a, f));
        emit(&args.input, &out)?;
        if !ok {
            return Err(CliError::deviation(format!(
                "gradient deviates from finite differences by {abs:e} (tol {:e})",
                args.tol
            )));
        }
        return Ok(());
    }
    emit(&args.input, &out)
}

pub fn run_hess(args: &HessArgs) -> Result<(), CliError> {
    let set = load_set(&args.input)?;
    let matrix = match args.algorithm {
        Algorithm::Sweep3d => hessian_3d_sweep(&set)?,
        Algorithm::General => hessian_objective(&set)?,
    };
    let mut out = sparse_triples(&matrix);

    if let Some(path) = &args.heatmap {
        fs::write(path, dense_csv(&matrix))?;
    }

    if args.fd_check {
        let cfg = FdConfig::new(args.h, args.tol, args.tol)?;
        let m = set.dim();
        let reference = set.reference().to_vec();
        let fd = fd_hessian(
            |v| hv_points(&deconcat(v, m).expect("layout"), &reference),
            &concat(&set),
            &cfg,
        );
        let dim = set.len() * m;
        let mut ok = true;
        let (mut abs, mut rel) = (0.0f64, 0.0f64);
        for a in 0..dim {
            for b in 0..dim {
                let ana = matrix.get(a, b);
                let ora = fd[a][b];
                let dev = (ana - ora).abs();
                abs = abs.max(dev);
                let scale = ana.abs().max(ora.abs());
                if scale > 0.0 {
                    rel = rel.max(dev / scale);
                }
                ok &= cfg.within(ana, ora);
            }
        }
        out.push_str(&format!(
            "# fd_check max_abs_dev {} max_rel_dev {} tol {}\n",
            fmt_float(abs),
            fmt_float(rel),
            fmt_float(args.tol)
        ));
        emit(&args.input, &out)?;
        if !ok {
            return Err(CliError::deviation(format!(
                "Hessian deviates from finite differences by {abs:e} (tol {:e})",
                args.tol
            )));
        }
        return Ok(());
    }
    emit(&args.input, &out)
}

pub fn run_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let set = load_set(&args.input)?;
    let mut grad_cfg = FdConfig::new(args.h, 1e-8, 1e-6)?;
    let mut hess_cfg = FdConfig::<f64>::hessian_default();
    if let Some(tol) = args.tol {
        grad_cfg = FdConfig::new(args.h, tol, tol)?;
        hess_cfg = FdConfig::new(hess_cfg.step, tol, tol)?;
    }
    let report = verify_derivatives(&set, &grad_cfg, &hess_cfg)?;
    let mut out = String::new();
    out.push_str(&format!("grad_max_abs_dev,{}\n", fmt_float(report.grad_max_abs_dev)));
    out.push_str(&format!("grad_max_rel_dev,{}\n", fmt_float(report.grad_max_rel_dev)));
    out.push_str(&format!("hess_max_abs_dev,{}\n", fmt_float(report.hess_max_abs_dev)));
    out.push_str(&format!("hess_max_rel_dev,{}\n", fmt_float(report.hess_max_rel_dev)));
    out.push_str(&format!("hess_nnz,{}\n", report.hess_nnz));
    out.push_str(&format!("support_mismatches,{}\n", report.support_mismatches));
    match report.sweep_vs_general {
        Some(dev) => out.push_str(&format!("sweep_vs_general_max_dev,{}\n", fmt_float(dev))),
        None => out.push_str("sweep_vs_general_max_dev,na\n"),
    }
    let passed = report.passed();
    out.push_str(&format!("result,{}\n", if passed { "pass" } else { "fail" }));
    emit(&args.input, &out)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::deviation("analytic derivatives deviate from the oracles".into()))
    }
}

pub fn run_newton(args: &NewtonArgs) -> Result<(), CliError> {
    if args.problem != "quad" {
        return Err(CliError::parse(format!(
            "unknown problem {:?}; available: quad",
            args.problem
        )));
    }
    let reference = parse_vector(&args.reference).map_err(CliError::parse)?;
    if reference.len() != 2 {
        return Err(CliError::validation("quad problem needs a 2-D reference".into()));
    }
    let model = make_quadratic_mop(2, 2, vec![vec![0.0, 0.0], vec![1.0, 0.0]])?;

    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
    let mut x: Vec<f64> = (0..args.n_points * 2).map(|_| rng.random_range(0.0..1.0)).collect();

    let mut out = String::from("step,hv_before,hv_after,step_scale,fallback\n");
    for step in 0..args.steps {
        let result = newton_step(&x, args.n_points, &model, &reference)?;
        out.push_str(&format!(
            "{step},{},{},{},{}\n",
            fmt_float(result.hv_before),
            fmt_float(result.hv_after),
            fmt_float(result.step_scale),
            u8::from(result.fallback)
        ));
        x = result.x_next;
    }
    let final_points: Vec<Vec<f64>> =
        x.chunks(2).map(|b| ObjectiveModel::<f64>::evaluate(&model, b)).collect();
    out.push_str(&format!("# final_hv {}\n", fmt_float(hv_points(&final_points, &reference))));
    match &args.out {
        Some(path) => fs::write(path, out).map_err(CliError::from),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

pub fn run_bench(args: &BenchArgs) -> Result<(), CliError> {
    let sizes: Vec<usize> = args
        .sizes
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| CliError::parse(format!("bad size: {e}"))))
        .collect::<Result<_, _>>()?;
    if sizes.is_empty() || args.repeats == 0 {
        return Err(CliError::parse("need at least one size and one repeat".into()));
    }

    let workers: usize = std::env::var("HVH_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1)
        .max(1);

    // Front generation may fan out; the timed sweeps below stay sequential
    // so the medians are uncontended.
    let mut fronts: Vec<Option<PointSet64>> = (0..sizes.len()).map(|_| None).collect();
    let chunk_size = sizes.len().div_ceil(workers);
    std::thread::scope(|scope| {
        for (size_chunk, front_chunk) in sizes.chunks(chunk_size).zip(fronts.chunks_mut(chunk_size))
        {
            let seed = args.seed;
            scope.spawn(move || {
                for (slot, &n) in front_chunk.iter_mut().zip(size_chunk) {
                    *slot = Some(random_front_3d(n, seed ^ (n as u64)));
                }
            });
        }
    });

    let mut out = String::from("n,seconds,nonzeros\n");
    for (idx, &n) in sizes.iter().enumerate() {
        let front = fronts[idx].as_ref().expect("generated");
        let mut times = Vec::with_capacity(args.repeats);
        let mut nonzeros = 0usize;
        for _ in 0..args.repeats {
            let t = Instant::now();
            let matrix = hessian_3d_sweep(front)?;
            times.push(t.elapsed().as_secs_f64());
            nonzeros = matrix.nnz();
        }
        times.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let median = times[times.len() / 2];
        out.push_str(&format!("{n},{},{nonzeros}\n", fmt_float(median)));
    }
    match &args.out {
        Some(path) => fs::write(path, out).map_err(CliError::from),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn max_deviation(
    a: impl Iterator<Item = f64>,
    b: impl Iterator<Item = f64>,
) -> (f64, f64) {
    let (mut abs, mut rel) = (0.0f64, 0.0f64);
    for (x, y) in a.zip(b) {
        let dev = (x - y).abs();
        abs = abs.max(dev);
        let scale = x.abs().max(y.abs());
        if scale > 0.0 {
            rel = rel.max(dev / scale);
        }
    }
    (abs, rel)
}
