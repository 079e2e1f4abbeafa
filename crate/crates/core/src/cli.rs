//! Command-line surface. `run` is the whole program minus process exit,
//! so it can be driven in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebras::{
    associated_novikov, check_novikov, check_pre_novikov, check_quasi_frobenius, derived_ops, FormMatrix,
    NovikovAlgebra, PreNovikovAlgebra, PreNovikovTables,
};
use crate::bialgebra::{check_bialgebra, check_coalgebra, coalgebra_to_dual_algebra, PreNovikovBialgebra};
use crate::error::{Error, Result};
use crate::io::{read_bundle, serialize_bundle, Body, Bundle, DoubleTables, ReportDocument};
use crate::labels::Identity;
use crate::matched::{block_restriction, check_matched_pair, double_from_bialgebra, induced_matched_pair};
use crate::render::{render_report, residual_text, Format};
use crate::report::{pairs, BasisRef, Report, Residual, Violation};
use crate::representations::{
    adjoint_novikov_rep, adjoint_reps, check_novikov_rep, check_pre_novikov_rep, dual_novikov_rep, dual_pre_novikov_rep,
    NovikovRep, PreNovikovRep,
};
use crate::scalar::Scalar;
use crate::structure::StructureConstants;
use crate::tensor::Tensor2;
use crate::yang_baxter::{
    check_o_operator_novikov, check_o_operator_pre_novikov, co2_equivalence, coboundary_diagnostics, coboundary_maps,
    lift_o_operator, pre_novikov_from_o, search_symmetric_ybe, solution_report, ybe_residual, Flavor, OOperator,
    DEFAULT_SEARCH_BUDGET,
};

pub const WORKERS_ENV: &str = "NOVIKOV_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "novikov", version, about = "Exact checks and constructions for Novikov and pre-Novikov algebras")]
struct Cli {
    /// Report rendering.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for the checkers.
    #[arg(long, env = WORKERS_ENV, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify a bundle against the identities its kind claims.
    Check {
        file: PathBuf,
        /// Algebra for rep, form, tensor2, o_operator and solution_list bundles.
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Representation for o_operator bundles.
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Print a structure derived from a pre-Novikov (or Novikov) algebra.
    Derive {
        algebra: PathBuf,
        #[arg(value_enum)]
        target: Target,
        /// Representation to dualize, for `dual`.
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Double construction of a bialgebra.
    Double {
        bialgebra: PathBuf,
        /// Where to write the double bundle.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coboundary co-operations of a tensor and the bialgebra checks on them.
    Coboundary {
        algebra: PathBuf,
        r: PathBuf,
        /// Where to write the resulting bialgebra bundle.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Yang-Baxter residual of a tensor and the three equivalent conditions.
    Ybe { algebra: PathBuf, r: PathBuf },
    /// Check an O-operator, optionally lifting it to a Yang-Baxter solution.
    Oper {
        algebra: PathBuf,
        rep: PathBuf,
        map: PathBuf,
        #[arg(long)]
        lift: bool,
        /// Where to write the lifted tensor.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the induced or semidirect algebra.
        #[arg(long)]
        out_algebra: Option<PathBuf>,
    },
    /// All symmetric Yang-Baxter solutions with entries in a value set.
    Search {
        algebra: PathBuf,
        /// Comma-separated scalars, e.g. `-1,0,1`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        values: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u128,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intermediate tensors and residuals of the coboundary expansion.
    Diag { algebra: PathBuf, r: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    /// Associated Novikov algebra `◁ + ▷`.
    Novikov,
    /// `a⊙b = a▷b + b◁a`.
    Odot,
    /// `a★b = a∘b + b∘a`.
    Star,
    /// Adjoint representation of the associated Novikov algebra.
    Adjoint,
    /// Adjoint pre-Novikov representation.
    PreAdjoint,
    DualAdjoint,
    DualPreAdjoint,
    /// Dual of the representation given with `--rep`.
    Dual,
    /// Dual pre-Novikov algebra of a coalgebra or bialgebra.
    DualAlgebra,
}

/// What a command hands back for printing.
enum Output {
    Report(ReportDocument),
    Bundle(Bundle),
}

/// Runs the program; returns the exit code. 0 is success, 1 a failed
/// verdict, 2 bad input.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let format = cli.format;
    let start = Instant::now();
    let result = match cli.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(Error::Precondition(format!("cannot start {n} workers: {e}"))),
        },
        None => dispatch(cli.command),
    };
    let code = match result {
        Ok(Output::Report(doc)) => {
            let _ = write!(stdout, "{}", render_report(&doc, format));
            if doc.passed() {
                0
            } else {
                1
            }
        }
        Ok(Output::Bundle(b)) => {
            let _ = write!(stdout, "{}", serialize_bundle(&b));
            0
        }
        Err(Error::Refused { what, report }) => {
            let _ = writeln!(stderr, "error: {what}: input failed verification");
            let _ = write!(stdout, "{}", render_report(&ReportDocument::new(*report), format));
            1
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    };
    let _ = writeln!(stderr, "elapsed: {:.3?}", start.elapsed());
    code
}

fn dispatch(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Check { file, algebra, rep } => check(&file, algebra.as_deref(), rep.as_deref()).map(Output::Report),
        Command::Derive { algebra, target, rep, out } => {
            let b = derive(&read(&algebra)?, target, rep.as_deref())?;
            match out {
                Some(path) => {
                    write_bundle(&path, &b)?;
                    Ok(Output::Report(ReportDocument::new(Report::group("derive", vec![])).with_fact("written", path.display())))
                }
                None => Ok(Output::Bundle(b)),
            }
        }
        Command::Double { bialgebra, out } => double(&read(&bialgebra)?, out.as_deref()).map(Output::Report),
        Command::Coboundary { algebra, r, out } => {
            coboundary(&pre_novikov(&read(&algebra)?)?, &tensor2(&read(&r)?)?, out.as_deref()).map(Output::Report)
        }
        Command::Ybe { algebra, r } => ybe(&pre_novikov(&read(&algebra)?)?, &tensor2(&read(&r)?)?).map(Output::Report),
        Command::Oper { algebra, rep, map, lift, out, out_algebra } => {
            oper(&read(&algebra)?, &read(&rep)?, &read(&map)?, lift, out.as_deref(), out_algebra.as_deref())
                .map(Output::Report)
        }
        Command::Search { algebra, values, budget, out } => {
            let alg = pre_novikov(&read(&algebra)?)?;
            let values = values
                .iter()
                .map(|v| v.parse::<Scalar>().map_err(|e| Error::Precondition(format!("--values: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let solutions = search_symmetric_ybe(&alg, &values, budget)?;
            let b = Bundle::from(Body::SolutionList { dim: alg.dim(), solutions });
            match out {
                Some(path) => {
                    let count = match &b.body {
                        Body::SolutionList { solutions, .. } => solutions.len(),
                        _ => unreachable!(),
                    };
                    write_bundle(&path, &b)?;
                    Ok(Output::Report(
                        ReportDocument::new(Report::group("search", vec![]))
                            .with_fact("solutions", count)
                            .with_fact("written", path.display()),
                    ))
                }
                None => Ok(Output::Bundle(b)),
            }
        }
        Command::Diag { algebra, r } => diag(&pre_novikov(&read(&algebra)?)?, &tensor2(&read(&r)?)?).map(Output::Report),
    }
}

fn read(path: &Path) -> Result<Bundle> {
    read_bundle(path).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse { pos, msg: format!("{}: {msg}", path.display()) },
        Error::Io(io) => Error::Precondition(format!("{}: {io}", path.display())),
        other => other,
    })
}

fn write_bundle(path: &Path, b: &Bundle) -> Result<()> {
    std::fs::write(path, serialize_bundle(b)).map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))
}

fn wrong_kind(b: &Bundle, wanted: &str) -> Error {
    Error::Precondition(format!("expected {wanted}, got a {} bundle", b.kind()))
}

/// Tables of a pre-Novikov or bialgebra bundle.
fn pre_novikov(b: &Bundle) -> Result<PreNovikovTables> {
    match &b.body {
        Body::PreNovikov(t) | Body::Bialgebra(t, _) => Ok(t.clone()),
        _ => Err(wrong_kind(b, "a pre_novikov or bialgebra bundle")),
    }
}

/// The Novikov-side product of any algebra bundle.
fn novikov_op(b: &Bundle) -> Result<StructureConstants> {
    match &b.body {
        Body::Novikov(t) | Body::Product(t) => Ok(t.clone()),
        Body::PreNovikov(t) | Body::Bialgebra(t, _) => Ok(t.circ()),
        Body::Double(d) => Ok(d.product.clone()),
        _ => Err(wrong_kind(b, "an algebra bundle")),
    }
}

fn tensor2(b: &Bundle) -> Result<Tensor2> {
    match &b.body {
        Body::Tensor2(t) => Ok(t.clone()),
        _ => Err(wrong_kind(b, "a tensor2 bundle")),
    }
}

fn table_match(title: &str, got: &StructureConstants, expected: &StructureConstants) -> Report {
    let n = got.dim();
    let violations = pairs(n, n)
        .into_iter()
        .filter_map(|(i, j)| {
            let d = &got.basis_product(i, j) - &expected.basis_product(i, j);
            (!d.is_zero()).then(|| Violation::new(Identity::TableMatch, vec![BasisRef::a(i), BasisRef::a(j)], Residual::from(&d)))
        })
        .collect();
    Report::new(title, vec![Identity::TableMatch], violations)
}

fn check(file: &Path, algebra: Option<&Path>, rep: Option<&Path>) -> Result<ReportDocument> {
    let b = read(file)?;
    let need_algebra = || -> Result<Bundle> {
        let path = algebra.ok_or_else(|| Error::Precondition(format!("checking a {} bundle needs --algebra", b.kind())))?;
        read(path)
    };
    let report = match &b.body {
        Body::Novikov(op) | Body::Product(op) => check_novikov(op),
        Body::PreNovikov(t) => check_pre_novikov(&t.lhd, &t.rhd)?,
        Body::Coalgebra(co) => check_coalgebra(co)?,
        Body::Bialgebra(t, co) => check_bialgebra(t, co)?,
        Body::NovikovRep(r) => check_novikov_rep(&novikov_op(&need_algebra()?)?, r)?,
        Body::PreNovikovRep(r) => check_pre_novikov_rep(&pre_novikov(&need_algebra()?)?, r)?,
        Body::Form(m) => check_quasi_frobenius(&novikov_op(&need_algebra()?)?, &FormMatrix::new(m.clone())?)?,
        Body::Tensor2(r) => solution_report(&pre_novikov(&need_algebra()?)?, r)?,
        Body::LinMap(_) => {
            return Err(Error::Precondition("a linmap claims nothing; check it with `oper`".into()));
        }
        Body::OOperator(o) => {
            let path = rep.ok_or_else(|| Error::Precondition("checking an o_operator bundle needs --rep".into()))?;
            o_operator_report(&need_algebra()?, &read(path)?, o)?
        }
        Body::Double(d) => check_double(d)?,
        Body::SolutionList { solutions, .. } => {
            let alg = pre_novikov(&need_algebra()?)?;
            let sections = solutions
                .iter()
                .enumerate()
                .map(|(i, r)| solution_report(&alg, r).map(|mut rep| {
                    rep.title = format!("solution {}", i + 1);
                    rep
                }))
                .collect::<Result<Vec<_>>>()?;
            Report::group("solution list", sections)
        }
    };
    Ok(ReportDocument::new(report).with_fact("kind", b.kind()))
}

fn check_double(d: &DoubleTables) -> Result<Report> {
    let form = FormMatrix::new(d.form.clone())?;
    let mut sections = vec![check_novikov(&d.product), check_quasi_frobenius(&d.product, &form)?];
    if let Some(c) = &d.compatible {
        sections.push(check_pre_novikov(&c.lhd, &c.rhd)?);
        sections.push(table_match("◁ + ▷ against the product", &c.circ(), &d.product));
    }
    Ok(Report::group("double construction", sections))
}

fn o_operator_report(alg: &Bundle, rep: &Bundle, o: &OOperator) -> Result<Report> {
    match (o.flavor, &rep.body) {
        (Flavor::Novikov, Body::NovikovRep(r)) => check_o_operator_novikov(&novikov_op(alg)?, r, &o.map),
        (Flavor::PreNovikov, Body::PreNovikovRep(r)) => check_o_operator_pre_novikov(&pre_novikov(alg)?, r, &o.map),
        (Flavor::Novikov, _) => Err(wrong_kind(rep, "a novikov rep")),
        (Flavor::PreNovikov, _) => Err(wrong_kind(rep, "a pre_novikov rep")),
    }
}

fn novikov_rep_bundle(r: &NovikovRep) -> Bundle {
    Body::NovikovRep(r.clone()).into()
}

fn pre_novikov_rep_bundle(r: &PreNovikovRep) -> Bundle {
    Body::PreNovikovRep(r.clone()).into()
}

fn derive(alg: &Bundle, target: Target, rep: Option<&Path>) -> Result<Bundle> {
    let novikov = || -> Result<NovikovAlgebra> {
        match &alg.body {
            Body::Novikov(op) => NovikovAlgebra::new(op.clone()),
            _ => associated_novikov(&PreNovikovAlgebra::from_tables(pre_novikov(alg)?)?),
        }
    };
    let pre = || PreNovikovAlgebra::from_tables(pre_novikov(alg)?);
    Ok(match target {
        Target::Novikov => Body::Novikov(novikov()?.into_inner()).into(),
        Target::Odot => Body::Product(derived_ops(&pre_novikov(alg)?).0).into(),
        Target::Star => Body::Product(derived_ops(&pre_novikov(alg)?).1).into(),
        Target::Adjoint => novikov_rep_bundle(adjoint_novikov_rep(&novikov()?)?.rep()),
        Target::PreAdjoint => pre_novikov_rep_bundle(adjoint_reps(&pre()?)?.1.rep()),
        Target::DualAdjoint => novikov_rep_bundle(dual_novikov_rep(&adjoint_novikov_rep(&novikov()?)?)?.rep()),
        Target::DualPreAdjoint => pre_novikov_rep_bundle(dual_pre_novikov_rep(&adjoint_reps(&pre()?)?.1)?.rep()),
        Target::Dual => {
            let path = rep.ok_or_else(|| Error::Precondition("`derive dual` needs --rep".into()))?;
            match read(path)?.body {
                Body::NovikovRep(r) => novikov_rep_bundle(dual_novikov_rep(&r.verify(&novikov()?)?)?.rep()),
                Body::PreNovikovRep(r) => pre_novikov_rep_bundle(dual_pre_novikov_rep(&r.verify(&pre()?)?)?.rep()),
                _ => return Err(Error::Precondition(format!("{}: expected a rep bundle", path.display()))),
            }
        }
        Target::DualAlgebra => match &alg.body {
            Body::Coalgebra(co) | Body::Bialgebra(_, co) => Body::PreNovikov(coalgebra_to_dual_algebra(co)).into(),
            _ => return Err(wrong_kind(alg, "a coalgebra or bialgebra bundle")),
        },
    })
}

fn double(b: &Bundle, out: Option<&Path>) -> Result<ReportDocument> {
    let (t, co) = match &b.body {
        Body::Bialgebra(t, co) => (t.clone(), co.clone()),
        _ => return Err(wrong_kind(b, "a bialgebra bundle")),
    };
    let bialg = PreNovikovBialgebra::new(t, co)?;
    let d = double_from_bialgebra(&bialg)?;
    let n = d.split_dim();
    let mp = induced_matched_pair(bialg.algebra(), bialg.coalgebra())?;
    let report = Report::group(
        "double construction",
        vec![
            check_matched_pair(&mp)?,
            check_quasi_frobenius(d.algebra(), d.form())?,
            block_restriction(d.compatible(), bialg.algebra(), &bialg.dual_algebra())?,
        ],
    );
    let tables = DoubleTables {
        product: d.algebra().op().clone(),
        form: d.form().matrix().clone(),
        compatible: Some(d.compatible().tables().clone()),
    };
    let mut doc = ReportDocument::new(report).with_fact("dim", 2 * n);
    if let Some(path) = out {
        write_bundle(path, &Body::Double(tables).into())?;
        doc = doc.with_fact("written", path.display());
    }
    Ok(doc)
}

fn coboundary(alg: &PreNovikovTables, r: &Tensor2, out: Option<&Path>) -> Result<ReportDocument> {
    let co = coboundary_maps(alg, r)?;
    let report = Report::group(
        "coboundary bialgebra",
        vec![alg.check(), solution_report(alg, r)?, check_bialgebra(alg, &co)?],
    );
    let mut doc = ReportDocument::new(report);
    if let Some(path) = out {
        write_bundle(path, &Body::Bialgebra(alg.clone(), co).into())?;
        doc = doc.with_fact("written", path.display());
    }
    Ok(doc)
}

fn ybe(alg: &PreNovikovTables, r: &Tensor2) -> Result<ReportDocument> {
    let res = ybe_residual(alg, r)?;
    let mut doc = ReportDocument::new(solution_report(alg, r)?);
    doc = doc.with_fact("residual", residual_or_zero(&Residual::from(&res)));
    if r.is_symmetric() {
        let (a, b, c) = co2_equivalence(alg, r)?;
        doc = doc
            .with_fact("equivalence.residual_zero", a)
            .with_fact("equivalence.novikov_o_operator", b)
            .with_fact("equivalence.pre_novikov_o_operator", c);
    }
    Ok(doc)
}

fn residual_or_zero(r: &Residual) -> String {
    if r.is_zero() {
        "0".into()
    } else {
        residual_text(r)
    }
}

fn oper(
    alg: &Bundle,
    rep: &Bundle,
    map: &Bundle,
    lift: bool,
    out: Option<&Path>,
    out_algebra: Option<&Path>,
) -> Result<ReportDocument> {
    let o = match (&map.body, &rep.body) {
        (Body::OOperator(o), _) => o.clone(),
        (Body::LinMap(m), Body::NovikovRep(_)) => OOperator { map: m.clone(), flavor: Flavor::Novikov },
        (Body::LinMap(m), Body::PreNovikovRep(_)) => OOperator { map: m.clone(), flavor: Flavor::PreNovikov },
        (Body::LinMap(_), _) => return Err(wrong_kind(rep, "a rep bundle")),
        _ => return Err(wrong_kind(map, "a linmap or o_operator bundle")),
    };
    let report = o_operator_report(alg, rep, &o)?;
    let passed = report.passed();
    let mut sections = vec![report];
    let mut facts: Vec<(String, String)> = Vec::new();
    match (&o.flavor, &rep.body) {
        (Flavor::Novikov, Body::NovikovRep(r)) => {
            if lift {
                return Err(Error::Precondition("--lift applies to pre-Novikov O-operators".into()));
            }
            if let (true, Some(path)) = (passed, out_algebra) {
                let nov = NovikovAlgebra::new(novikov_op(alg)?)?;
                let induced = pre_novikov_from_o(&nov, r, &o.map)?;
                write_bundle(path, &Body::PreNovikov(induced.into_tables()).into())?;
                facts.push(("written".into(), path.display().to_string()));
            }
        }
        (Flavor::PreNovikov, Body::PreNovikovRep(r)) if lift => {
            let verified = r.clone().verify(&PreNovikovAlgebra::from_tables(pre_novikov(alg)?)?)?;
            let l = lift_o_operator(&verified, &o.map)?;
            sections.push(solution_report(&l.algebra, &l.r)?);
            facts.push(("lift.solution".into(), l.solution.to_string()));
            if let Some(path) = out {
                write_bundle(path, &Body::Tensor2(l.r.clone()).into())?;
                facts.push(("written".into(), path.display().to_string()));
            }
            if let Some(path) = out_algebra {
                write_bundle(path, &Body::PreNovikov(l.algebra.tables().clone()).into())?;
                facts.push(("written_algebra".into(), path.display().to_string()));
            }
        }
        _ => {}
    }
    let mut doc = ReportDocument::new(Report::group("O-operator", sections));
    for (k, v) in facts {
        doc = doc.with_fact(k, v);
    }
    Ok(doc)
}

fn diag(alg: &PreNovikovTables, r: &Tensor2) -> Result<ReportDocument> {
    let d = coboundary_diagnostics(alg, r)?;
    let mut doc = ReportDocument::new(d.report());
    for (t, tensor) in &d.tensors {
        doc = doc.with_fact(format!("tensor.{}", t.name()), residual_or_zero(&Residual::from(tensor)));
    }
    Ok(doc)
}
