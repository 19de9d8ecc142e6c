use std::collections::BTreeSet;
use std::path::Path;

use serde_json::json;
use tripoint_core::algebra::{parse_rational, FiniteField, Rational, RationalField};
use tripoint_core::census::{
    configuration_census, multi_prime_census, singular_census_over, verify_rational_points, CensusOptions,
    DeclaredConfiguration, MultiPrimeReport, PrimePolicy,
};
use tripoint_core::constructions::{
    build_x223_four, build_x33_nine, build_x6_wps, fallback_sextic, impose_triple_points, nogo_check,
    project_from_otp, random_quadric_intersection, search_x24_seven, verify_projection, verify_quartic_triple_points,
    ConstructionError, ConstructionRecipe, FamilyDescriptor, NogoVerdict, RecipeId, SearchOptions, WpsSextic,
};
use tripoint_core::geometry::{parse_point, render_coords, Ambient, Variety};
use tripoint_core::local::{classify_point, multiplicity_at, SingularityKind, SingularityReport};
use tripoint_core::spectra::{
    brieskorn_spectrum, polar_intersection_check, projection_degree, spectral_length, varchenko_max_count,
    IntervalSpec,
};

use crate::error::CliError;
use crate::file::{parse_variety_text, DeclaredPoint, VarietyFile};
use crate::report::{Claim, Provenance, Report};
use crate::{CensusArgs, Command, Verdict};

type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn dispatch(command: Command, echo: Vec<String>) -> Result<Report> {
    match command {
        Command::Classify { file } => classify(&file, echo),
        Command::Census { file, census: args, n_primes } => census(&file, &args, n_primes, echo),
        Command::VerifyExample { recipe, primes, seed, cap, surface, write_variety, workers } => {
            let settings = ExampleSettings { primes, seed, cap, surface, write_variety, workers };
            verify_example(&recipe, settings, echo)
        }
        Command::Project { file, center, primes, n_primes, seed, write_image, workers } => {
            project(&file, center.as_deref(), primes, n_primes, seed, write_image.as_deref(), workers, echo)
        }
        Command::Spectrum { exponents, interval, expect_length } => {
            spectrum(&exponents, interval.as_deref(), expect_length, echo)
        }
        Command::Bound { ambient, deduct, local, offset, source, polar, mults, degrees, degree, mult, expect } => {
            let args = BoundArgs { ambient, deduct, local, offset, source, polar, mults, degrees, degree, mult, expect };
            bound(args, echo)
        }
        Command::Nogo { family, degrees, ambient_dim, weights, degree, expect, census_prime, samples, seed } => {
            let family = family_descriptor(family.as_deref(), degrees, ambient_dim, weights, degree)?;
            nogo(&family, expect, census_prime, samples, seed, echo)
        }
        Command::Impose { ambient, degree, points, expect_dimension, show_basis } => {
            impose(&ambient, degree, &points, expect_dimension, show_basis, echo)
        }
    }
}

// ------------------------------------------------------------------ helpers

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|error| CliError::Io { path: path.display().to_string(), error })
}

fn load(path: &Path) -> Result<(VarietyFile, Vec<u8>)> {
    let bytes = read_bytes(path)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::InvalidInput(format!("{} is not UTF-8 text", path.display())))?;
    Ok((parse_variety_text(&text, &path.display().to_string())?, bytes))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|error| CliError::Io { path: path.display().to_string(), error })
}

fn census_options(cap: Option<u64>, workers: Option<usize>) -> CensusOptions {
    let mut opts = CensusOptions::default();
    if let Some(cap) = cap {
        opts.cap = cap;
    }
    opts.workers = workers;
    opts
}

fn show(p: &[Rational]) -> String {
    render_coords(&RationalField, p)
}

fn fields(primes: impl IntoIterator<Item = u64>) -> String {
    let names: Vec<String> = primes.into_iter().map(|p| format!("F_{p}")).collect();
    if names.is_empty() {
        "no prime".into()
    } else {
        names.join(", ")
    }
}

fn kind_counts(counts: &std::collections::BTreeMap<SingularityKind, usize>) -> String {
    if counts.is_empty() {
        return "no singular points".into();
    }
    let parts: Vec<String> = counts.iter().map(|(k, n)| format!("{n} {k}")).collect();
    parts.join(", ")
}

/// One line per census run and per skipped prime.
fn census_lines(report: &mut Report, census: &MultiPrimeReport) {
    for run in &census.runs {
        let field = if run.extension_degree == 1 {
            format!("F_{}", run.prime)
        } else {
            format!("F_{}^{}", run.prime, run.extension_degree)
        };
        report.line(format!("  {field}: {} ({} points on the variety)", kind_counts(&run.counts), run.points_on_variety));
    }
    for s in &census.skipped {
        report.line(format!("  F_{} skipped: {}", s.prime, s.reason));
    }
}

/// Consensus claims: OTP count against `expected_otps`, other singular
/// points against `expected_other`, and at least `min_runs` census primes.
fn consensus_claims(
    report: &mut Report,
    census: &MultiPrimeReport,
    expected_otps: Option<usize>,
    expected_other: Option<usize>,
    min_runs: usize,
) {
    let run_primes: Vec<u64> = census.runs.iter().map(|r| r.prime).collect();
    report.push(Claim::check(
        "census primes",
        if run_primes.is_empty() { "none".into() } else { fields(run_primes.iter().copied()) },
        format!("at least {min_runs}"),
        run_primes.len() >= min_runs,
        Provenance::Census,
    ));
    let otp = census.consensus_count(SingularityKind::Otp);
    let other = census.consensus_total().zip(otp).map(|(t, o)| t - o);
    let render = |v: Option<usize>| v.map_or_else(|| "no consensus".to_string(), |n| n.to_string());
    match expected_otps {
        Some(n) => report.push(Claim::check("OTP count", render(otp), n, otp == Some(n), Provenance::CensusConsensus)),
        None => report.push(Claim::info("OTP count", render(otp), Provenance::CensusConsensus)),
    }
    match expected_other {
        Some(n) => report.push(Claim::check(
            "other singular points",
            render(other),
            n,
            other == Some(n),
            Provenance::CensusConsensus,
        )),
        None => report.push(Claim::info("other singular points", render(other), Provenance::CensusConsensus)),
    }
    if let Some(n) = otp {
        let agreement = if census.unanimous { "unanimous" } else { "majority" };
        report.line(format!("{n} OTP, consensus over {} ({agreement})", fields(run_primes)));
    } else {
        report.line(format!("no consensus over {}", fields(run_primes)));
    }
}

fn point_claims(report: &mut Report, reports: &[SingularityReport], expected: Option<SingularityKind>) {
    for r in reports {
        let value = match r.multiplicity {
            Some(m) => format!("{} (multiplicity {m})", r.kind),
            None => r.kind.to_string(),
        };
        match expected {
            Some(kind) => report.push(Claim::check(format!("point {}", r.point), value, kind, r.kind == kind, Provenance::Exact)),
            None => report.push(Claim::info(format!("point {}", r.point), value, Provenance::Exact)),
        }
    }
}

fn classify_declared(file: &VarietyFile, report: &mut Report) -> Result<Vec<SingularityReport>> {
    let mut out = Vec::new();
    for DeclaredPoint { coords, expect } in &file.points {
        let r = classify_point(&file.variety, coords)?;
        point_claims(report, std::slice::from_ref(&r), *expect);
        out.push(r);
    }
    Ok(out)
}

// ----------------------------------------------------------------- classify

fn classify(path: &Path, echo: Vec<String>) -> Result<Report> {
    let (file, bytes) = load(path)?;
    let mut report = Report::new(echo, &[bytes]);
    report.seed = file.seed;
    report.line(format!("{} in {}", describe(&file.variety), file.variety.ambient()));
    let reports = classify_declared(&file, &mut report)?;
    if let Some(n) = file.expect_otp_count {
        report.line(format!("expect otp-count {n}: not evaluated by classify (run census)"));
    }
    report.details = json!({ "points": reports });
    Ok(report)
}

fn describe(v: &Variety) -> String {
    let degrees: Vec<String> = v.degrees().iter().map(u32::to_string).collect();
    format!("X_{{{}}}", degrees.join(","))
}

// ------------------------------------------------------------------- census

fn census(path: &Path, args: &CensusArgs, n_primes: usize, echo: Vec<String>) -> Result<Report> {
    let (file, bytes) = load(path)?;
    let mut report = Report::new(echo, &[bytes]);
    let opts = census_options(args.cap, args.workers);
    let primes = args.primes.clone().or_else(|| file.primes.clone());
    let (policy, n) = match &primes {
        Some(list) => (PrimePolicy::explicit(list.clone()), list.len()),
        None => (PrimePolicy::default(), n_primes),
    };
    report.seed = file.seed;
    report.primes = primes.unwrap_or_default();
    report.line(format!("{} in {}", describe(&file.variety), file.variety.ambient()));
    let reports = classify_declared(&file, &mut report)?;
    let declared: Vec<Vec<Rational>> = file.points.iter().map(|p| p.coords.clone()).collect();
    let census = if args.ext_degree == 1 && !declared.is_empty() {
        let config = DeclaredConfiguration::new(&file.variety, &declared)?;
        configuration_census(&file.variety, &config, &policy, n, &opts)?
    } else {
        multi_prime_census(&file.variety, &policy, n, args.ext_degree, &opts)?
    };
    consensus_claims(&mut report, &census, file.expect_otp_count, None, 1);
    census_lines(&mut report, &census);
    report.details = json!({ "points": reports, "census": census });
    Ok(report)
}

// ----------------------------------------------------------- verify-example

struct ExampleSettings {
    primes: Option<Vec<u64>>,
    seed: Option<u64>,
    cap: Option<usize>,
    surface: Option<std::path::PathBuf>,
    write_variety: Option<std::path::PathBuf>,
    workers: Option<usize>,
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn parse_quadruple(text: &str) -> Result<[Rational; 4]> {
    let values = text
        .split(',')
        .map(|c| parse_rational(c.trim()).map_err(|e| CliError::InvalidInput(format!("bad coefficient '{c}': {e}"))))
        .collect::<Result<Vec<_>>>()?;
    values.try_into().map_err(|_| CliError::InvalidInput(format!("expected four coefficients, got '{text}'")))
}

/// A file declaring `otps` (rational OTPs, possibly not all of them) and
/// the total `count`.
fn otp_file(variety: &Variety, otps: &[Vec<Rational>], count: usize, seed: Option<u64>, primes: &[u64]) -> VarietyFile {
    let mut file = VarietyFile::new(variety.clone());
    file.points = otps.iter().map(|p| DeclaredPoint { coords: p.clone(), expect: Some(SingularityKind::Otp) }).collect();
    file.expect_otp_count = Some(count);
    file.seed = seed;
    file.primes = Some(primes.to_vec());
    file
}

fn exhausted(report: &mut Report, e: ConstructionError) -> Result<()> {
    match e {
        ConstructionError::SearchExhausted { .. } => {
            report.push(Claim::check("construction", e.to_string(), "a verified candidate", false, Provenance::Exact));
            Ok(())
        }
        other => Err(other.into()),
    }
}

fn verify_example(name: &str, settings: ExampleSettings, echo: Vec<String>) -> Result<Report> {
    let id: RecipeId = name.parse().map_err(|_| {
        let known: Vec<&str> = RecipeId::ALL.iter().map(|id| id.name()).collect();
        CliError::Usage(format!("unknown recipe '{name}' (known: {})", known.join(", ")))
    })?;
    let mut recipe = ConstructionRecipe::default_for(id);
    if let Some(primes) = &settings.primes {
        recipe.params.insert("primes".into(), join(primes));
    }
    if let Some(seed) = settings.seed {
        recipe.params.insert("seed".into(), seed.to_string());
    }
    if let Some(cap) = settings.cap {
        recipe.params.insert("cap".into(), cap.to_string());
    }
    let mut inputs = Vec::new();
    let surface = match &settings.surface {
        Some(path) if id == RecipeId::X6Wps => {
            let (file, bytes) = load(path)?;
            inputs.push(bytes);
            recipe.params.insert("surface".into(), path.display().to_string());
            Some(file)
        }
        Some(_) => return Err(CliError::Usage("--surface only applies to x6_wps".into())),
        None => None,
    };
    recipe.validate()?;
    let mut report = Report::new(echo, &inputs);
    let primes = recipe.primes()?;
    report.seed = recipe.seed()?;
    report.primes = primes.clone();
    let mut opts = SearchOptions { primes: primes.clone(), ..SearchOptions::default() };
    if let Some(cap) = recipe.cap()? {
        opts.cap = cap;
    }
    opts.census = census_options(None, settings.workers);
    let seed = recipe.seed()?.unwrap_or(1);
    report.line(format!("recipe {id}"));

    let written = match id {
        RecipeId::X33Nine => {
            let a = parse_quadruple(recipe.param("a").unwrap_or_default())?;
            let b = parse_quadruple(recipe.param("b").unwrap_or_default())?;
            let x = build_x33_nine(a, b)?;
            let rational = x.rational_otps();
            let reports = verify_rational_points(&x.variety, &rational)?;
            point_claims(&mut report, &reports, Some(SingularityKind::Otp));
            let census = multi_prime_census(&x.variety, &PrimePolicy::explicit(primes.clone()), primes.len(), 1, &opts.census)?;
            consensus_claims(&mut report, &census, Some(recipe.plan.expected_otps), Some(0), 1);
            // the census triple points are the zeros of the binary cubics on
            // the triple lines
            for run in &census.runs {
                let field = FiniteField::prime(run.prime).map_err(|e| CliError::InvalidInput(e.to_string()))?;
                let expected: BTreeSet<Vec<u32>> = x.otps_over(&field)?.into_iter().collect();
                let found: BTreeSet<Vec<u32>> = run
                    .singular
                    .iter()
                    .filter(|s| s.report.kind == SingularityKind::Otp)
                    .map(|s| s.coords.clone())
                    .collect();
                report.push(Claim::check(
                    format!("F_{} triple points on the triple lines", run.prime),
                    found.len(),
                    expected.len(),
                    found == expected,
                    Provenance::Census,
                ));
            }
            census_lines(&mut report, &census);
            report.details = json!({
                "equations": x.variety.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "triple_lines": x.triple_lines,
                "points": reports,
                "census": census,
            });
            Some(otp_file(&x.variety, &rational, recipe.plan.expected_otps, None, &primes))
        }
        RecipeId::X24Seven => match search_x24_seven(seed, &opts) {
            Ok(x) => {
                report.line(format!("accepted candidate {} of at most {}", x.attempts, opts.cap));
                point_claims(&mut report, &x.reports, Some(SingularityKind::Otp));
                consensus_claims(&mut report, &x.census, Some(recipe.plan.expected_otps), Some(0), 2);
                census_lines(&mut report, &x.census);
                report.details = json!({
                    "equations": x.variety.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "attempts": x.attempts,
                    "points": x.reports,
                    "census": x.census,
                });
                Some(otp_file(&x.variety, &x.otps, x.otps.len(), Some(seed), &primes))
            }
            Err(e) => exhausted(&mut report, e).map(|()| None)?,
        },
        RecipeId::X223Four => match build_x223_four(seed, &opts) {
            Ok(x) => {
                report.line(format!("accepted candidate {} of at most {}", x.attempts, opts.cap));
                point_claims(&mut report, &x.reports, Some(SingularityKind::Otp));
                consensus_claims(&mut report, &x.census, Some(recipe.plan.expected_otps), Some(0), 2);
                census_lines(&mut report, &x.census);
                report.details = json!({
                    "equations": x.variety.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "attempts": x.attempts,
                    "points": x.reports,
                    "census": x.census,
                });
                Some(otp_file(&x.variety, &x.otps, x.otps.len(), Some(seed), &primes))
            }
            Err(e) => exhausted(&mut report, e).map(|()| None)?,
        },
        RecipeId::X6Wps => {
            let (g6, points, expected) = match surface {
                Some(file) => {
                    let [g6] = file.variety.generators() else {
                        return Err(CliError::InvalidInput("the surface file must have exactly one eq line".into()));
                    };
                    let points: Vec<Vec<Rational>> = file.points.iter().map(|p| p.coords.clone()).collect();
                    let expected = file.expect_otp_count.unwrap_or(points.len());
                    report.line(format!("surface from {}", recipe.param("surface").unwrap_or_default()));
                    (g6.clone(), points, expected)
                }
                None => match fallback_sextic(seed, &opts) {
                    Ok(s) => {
                        report.line(format!(
                            "fallback sextic surface with {} triple points (candidate {})",
                            s.points.len(),
                            s.attempts
                        ));
                        let n = s.points.len();
                        (s.g6, s.points, n)
                    }
                    Err(e) => {
                        exhausted(&mut report, e)?;
                        return Ok(report);
                    }
                },
            };
            let x = build_x6_wps(&g6, &points, &opts)?;
            wps_claims(&mut report, &x, expected);
            let embedded: Vec<Vec<Rational>> = points
                .iter()
                .map(|p| p.iter().cloned().chain([Rational::from_integer(0.into())]).collect())
                .collect();
            Some(otp_file(&x.variety, &embedded, expected, Some(seed), &primes))
        }
        RecipeId::QuarticSixOtp => match search_x24_seven(seed, &opts) {
            Ok(x) => {
                let check = verify_quartic_triple_points(&x.quartic, &opts)?;
                for (p, m) in tripoint_core::constructions::quartic_triple_points().iter().zip(&check.multiplicities) {
                    let value = m.map_or_else(|| "indeterminate".to_string(), |m| m.to_string());
                    report.push(Claim::check(format!("multiplicity at {}", show(p)), value, 3, *m == Some(3), Provenance::Exact));
                }
                for (p, seen, lines) in &check.line_counts {
                    report.push(Claim::info(
                        format!("F_{p} singular points"),
                        format!("{seen} ({lines} on the 15 joining lines)"),
                        Provenance::Census,
                    ));
                }
                let runs = check.census.runs.len();
                report.push(Claim::check(
                    "singular locus is the 15 joining lines",
                    format!("at {}", fields(check.matching_primes.iter().copied())),
                    format!("a strict majority of {runs} primes, at least 2 primes"),
                    check.confirmed,
                    Provenance::CensusConsensus,
                ));
                census_lines(&mut report, &check.census);
                report.line("the six triple points lie on singular lines and are not isolated".to_string());
                report.details = json!({
                    "equation": x.quartic.generators()[0].to_string(),
                    "multiplicities": check.multiplicities,
                    "census": check.census,
                });
                let mut file = VarietyFile::new(x.quartic.clone());
                file.points = tripoint_core::constructions::quartic_triple_points()
                    .into_iter()
                    .map(|coords| DeclaredPoint { coords, expect: Some(SingularityKind::Other) })
                    .collect();
                file.seed = Some(seed);
                file.primes = Some(primes.clone());
                Some(file)
            }
            Err(e) => exhausted(&mut report, e).map(|()| None)?,
        },
    };
    if let (Some(path), Some(file)) = (&settings.write_variety, written) {
        write_file(path, &file.render(&format!("recipe {id}, written by tripoint {}", env!("CARGO_PKG_VERSION"))))?;
        report.line(format!("variety written to {}", path.display()));
    }
    Ok(report)
}

fn wps_claims(report: &mut Report, x: &WpsSextic, expected: usize) {
    report.line(format!("equation {}", x.equation));
    point_claims(report, &x.reports, Some(SingularityKind::Otp));
    consensus_claims(report, &x.census, Some(expected), Some(0), 2);
    report.push(Claim::check(
        "census triple points on 3u + G2 = 0",
        x.otps_on_section,
        true,
        x.otps_on_section,
        Provenance::Census,
    ));
    census_lines(report, &x.census);
    report.details = json!({ "wps": x });
}

// ------------------------------------------------------------------ project

#[allow(clippy::too_many_arguments)]
fn project(
    path: &Path,
    center: Option<&str>,
    primes: Option<Vec<u64>>,
    n_primes: usize,
    seed: u64,
    write_image: Option<&Path>,
    workers: Option<usize>,
    echo: Vec<String>,
) -> Result<Report> {
    let (file, bytes) = load(path)?;
    let mut report = Report::new(echo, &[bytes]);
    let otps = file.declared_otps();
    let centre = match center {
        Some(text) => parse_point(text)?,
        None => {
            // a line from the centre to another triple point on the variety
            // is contracted by the projection
            let free = |c: &Vec<Rational>| otps.iter().all(|q| q == c || !file.variety.contains_line(c, q));
            let first = otps.first().ok_or_else(|| CliError::Usage("no --center and no declared OTP".into()))?;
            match otps.iter().find(|c| free(c)) {
                Some(c) if c != first => {
                    report.line(format!("centre {}: a line to another triple point lies on the variety", show(first)));
                    c.clone()
                }
                Some(c) => c.clone(),
                None => first.clone(),
            }
        }
    };
    let same = |p: &[Rational]| {
        p.len() == centre.len() && {
            // proportional coordinates
            let i = centre.iter().position(|c| *c != Rational::from_integer(0.into()));
            i.is_some_and(|i| {
                let s = &p[i] / &centre[i];
                p.iter().zip(&centre).all(|(a, b)| *a == b * &s)
            })
        }
    };
    let others: Vec<Vec<Rational>> = otps.iter().filter(|p| !same(p)).cloned().collect();
    let primes = primes.or_else(|| file.primes.clone()).unwrap_or_else(|| vec![7, 11, 13, 17, 19, 23, 29, 31, 37]);
    report.seed = Some(seed);
    report.primes = primes.clone();

    let proj = project_from_otp(&file.variety, &centre)?;
    report.line(format!("centre {}", show(&proj.center)));
    let expected_degree = projection_degree(proj.source_degree, 3)?;
    report.push(Claim::info("source degree", proj.source_degree, Provenance::Exact));
    report.push(Claim::expect("image degree", proj.image_degree, expected_degree, Provenance::Arithmetic));
    let check = verify_projection(&proj, &others, &primes, n_primes, &census_options(None, workers), seed)?;
    point_claims(&mut report, &check.image_otp_reports, Some(SingularityKind::Otp));
    // the rational double points vary with the prime, so only the OTP
    // count is compared across primes
    let run_primes: Vec<u64> = check.census.runs.iter().map(|r| r.prime).collect();
    report.push(Claim::check(
        "census primes",
        if run_primes.is_empty() { "none".into() } else { fields(run_primes.iter().copied()) },
        "at least 2",
        run_primes.len() >= 2,
        Provenance::Census,
    ));
    let otp = check.otp_consensus.map_or_else(|| "no consensus".to_string(), |n| n.to_string());
    report.push(Claim::check("OTP count", otp, others.len(), check.otp_consensus == Some(others.len()), Provenance::CensusConsensus));
    match check.otp_consensus {
        Some(n) => report.line(format!("{n} OTP, consensus over {}", fields(run_primes))),
        None => report.line(format!("no OTP consensus over {}", fields(run_primes))),
    }
    let double_points = check.double_points.map_or_else(|| "not certified".to_string(), |n| n.to_string());
    report.push(Claim::check(
        "double points",
        double_points,
        proj.expected_double_points,
        check.double_points == Some(proj.expected_double_points),
        Provenance::CensusConsensus,
    ));
    report.push(Claim::expect("singular points other than OTP and ODP", check.other_singular, 0, Provenance::Census));
    census_lines(&mut report, &check.census);
    report.details = json!({
        "shape": proj.shape,
        "image": proj.image.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "double_point_forms": proj.double_point_forms.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "check": check,
    });
    if let Some(path) = write_image {
        let images: Vec<Vec<Rational>> = others.iter().filter_map(|q| proj.project_point(q)).collect();
        let image = otp_file(&proj.image, &images, images.len(), None, &primes);
        write_file(path, &image.render(&format!("projection from {}", show(&proj.center))))?;
        report.line(format!("image written to {}", path.display()));
    }
    Ok(report)
}

// ----------------------------------------------------------------- spectrum

fn spectrum(exponents: &[u32], interval: Option<&str>, expect_length: Option<u64>, echo: Vec<String>) -> Result<Report> {
    let mut report = Report::new(echo, &[]);
    let s = brieskorn_spectrum(exponents)?;
    let milnor: u64 = exponents.iter().map(|&a| u64::from(a) - 1).product();
    report.push(Claim::expect("size", s.size(), milnor, Provenance::Arithmetic));
    report.push(Claim::info("symmetric", s.is_symmetric(), Provenance::Arithmetic));
    report.push(Claim::info("centre", s.centre(), Provenance::Arithmetic));
    if let Some(text) = interval {
        let i = IntervalSpec::parse(text)?;
        let length = spectral_length(&s, &i);
        report.line(format!("length {length}"));
        report.push(Claim::optional(format!("length in {i}"), length, expect_length, Provenance::Arithmetic));
    } else if expect_length.is_some() {
        return Err(CliError::Usage("--expect-length needs --interval".into()));
    }
    let entries: Vec<_> = s.entries().map(|(a, m)| json!({ "value": a.to_string(), "multiplicity": m })).collect();
    report.details = json!({ "exponents": exponents, "spectrum": entries });
    Ok(report)
}

// -------------------------------------------------------------------- bound

struct BoundArgs {
    ambient: Option<u64>,
    deduct: u64,
    local: Option<u64>,
    offset: u64,
    source: String,
    polar: Option<u64>,
    mults: Option<Vec<u64>>,
    degrees: Option<Vec<u64>>,
    degree: Option<u64>,
    mult: Option<u64>,
    expect: Option<u64>,
}

fn bound(args: BoundArgs, echo: Vec<String>) -> Result<Report> {
    let mut report = Report::new(echo, &[]);
    let modes = [args.ambient.is_some(), args.polar.is_some(), args.degree.is_some()];
    if modes.iter().filter(|&&m| m).count() != 1 {
        return Err(CliError::Usage("give exactly one of --ambient/--local, --polar/--mults/--degrees, --degree/--mult".into()));
    }
    if let (Some(ambient), Some(local)) = (args.ambient, args.local) {
        let b = varchenko_max_count(ambient, args.deduct, local)?;
        let main = b.max_count + args.offset;
        report.line(format!("max {} → μ₃({}) ≤ {main}", b.max_count, args.source));
        report.push(Claim::info("max count", b.max_count, Provenance::Arithmetic));
        report.push(Claim::optional(format!("μ₃({})", args.source), main, args.expect, Provenance::Arithmetic));
        report.details = json!({ "bound": b });
    } else if let Some(count) = args.polar {
        let (mults, degrees) = (args.mults.unwrap_or_default(), args.degrees.unwrap_or_default());
        let c = polar_intersection_check(count, &mults, &degrees);
        let relation = if c.exceeds { ">" } else { "≤" };
        report.line(format!("{} {relation} {}", c.product, c.expected));
        report.push(Claim::optional("forced intersection", c.product, args.expect, Provenance::Arithmetic));
        report.push(Claim::info("Bezout number", c.expected, Provenance::Arithmetic));
        report.push(Claim::info("exceeds", c.exceeds, Provenance::Arithmetic));
        report.details = json!({ "polar": c });
    } else if let (Some(degree), Some(mult)) = (args.degree, args.mult) {
        let d = projection_degree(degree, mult)?;
        report.line(format!("image degree {d}"));
        report.push(Claim::optional("image degree", d, args.expect, Provenance::Arithmetic));
        report.details = json!({ "degree": degree, "mult": mult, "image_degree": d });
    }
    Ok(report)
}

// --------------------------------------------------------------------- nogo

fn family_descriptor(
    family: Option<&str>,
    degrees: Option<Vec<u32>>,
    ambient_dim: Option<usize>,
    weights: Option<Vec<u32>>,
    degree: Option<u32>,
) -> Result<FamilyDescriptor> {
    match (family, degrees, ambient_dim, weights, degree) {
        (Some(name), None, None, None, None) => match name.to_ascii_lowercase().as_str() {
            "x2222" => Ok(FamilyDescriptor::x2222()),
            "x8" => Ok(FamilyDescriptor::x8()),
            "x10" => Ok(FamilyDescriptor::x10()),
            other => Err(CliError::Usage(format!("unknown family '{other}' (x2222, x8, x10)"))),
        },
        (None, Some(degrees), Some(ambient_dimension), None, None) => {
            Ok(FamilyDescriptor::CompleteIntersection { ambient_dimension, degrees })
        }
        (None, None, None, Some(weights), Some(degree)) => Ok(FamilyDescriptor::WeightedHypersurface { weights, degree }),
        _ => Err(CliError::Usage("give --family, or --degrees with --ambient-dim, or --weights with --degree".into())),
    }
}

fn nogo(
    family: &FamilyDescriptor,
    expect: Option<Verdict>,
    census_prime: Option<u64>,
    samples: u64,
    seed: u64,
    echo: Vec<String>,
) -> Result<Report> {
    let mut report = Report::new(echo, &[]);
    let verdict = nogo_check(family)?;
    let (found, text) = match &verdict {
        NogoVerdict::Possible => (Verdict::Possible, "possible".to_string()),
        NogoVerdict::Impossible(reason) => (Verdict::Impossible, format!("impossible: {reason}")),
    };
    report.line(text.clone());
    let wanted = expect.map(|v| match v {
        Verdict::Possible => "possible",
        Verdict::Impossible => "impossible",
    });
    match wanted {
        Some(w) => report.push(Claim::check("verdict", text, w, expect == Some(found), Provenance::Exact)),
        None => report.push(Claim::info("verdict", text, Provenance::Exact)),
    }
    let mut samples_json = Vec::new();
    if let Some(p) = census_prime {
        let FamilyDescriptor::CompleteIntersection { ambient_dimension, degrees } = family else {
            return Err(CliError::Usage("--census-prime applies to intersections of quadrics".into()));
        };
        if degrees.iter().any(|&d| d != 2) {
            return Err(CliError::Usage("--census-prime applies to intersections of quadrics".into()));
        }
        let field = FiniteField::prime(p).map_err(|e| CliError::InvalidInput(e.to_string()))?;
        report.seed = Some(seed);
        report.primes = vec![p];
        for s in seed..seed + samples {
            let v = random_quadric_intersection(*ambient_dimension, degrees.len(), &field, s)?;
            let run = singular_census_over(&v, &CensusOptions::default())?;
            let max = run.max_multiplicity().unwrap_or(1);
            report.push(Claim::check(
                format!("F_{p} sample {s}: largest multiplicity"),
                max,
                "at most 2",
                max < 3,
                Provenance::Census,
            ));
            samples_json.push(json!({ "seed": s, "counts": run.counts, "max_multiplicity": max }));
        }
        report.line(format!("random members singular at [1:0:...:0], {samples} samples over F_{p}"));
    }
    report.details = json!({ "family": family, "verdict": verdict, "samples": samples_json });
    Ok(report)
}

// ------------------------------------------------------------------- impose

fn impose(
    header: &str,
    degree: u32,
    points: &[String],
    expect_dimension: Option<usize>,
    show_basis: bool,
    echo: Vec<String>,
) -> Result<Report> {
    let mut report = Report::new(echo, &[]);
    let ambient = Ambient::parse_header(header)?;
    let points: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let coords = parse_point(p)?;
            if coords.len() != ambient.nvars() {
                return Err(CliError::InvalidInput(format!("{p}: expected {} coordinates", ambient.nvars())));
            }
            Ok(coords)
        })
        .collect::<Result<_>>()?;
    match impose_triple_points(degree, &ambient, &RationalField, &points) {
        Ok(system) => {
            let dimension = system.dimension();
            report.push(Claim::info("unknowns", system.monomials.len(), Provenance::Exact));
            report.push(Claim::info("conditions per point", system.conditions_per_point, Provenance::Exact));
            report.push(Claim::info("observed rank", system.rank, Provenance::Exact));
            report.push(Claim::optional("dimension", dimension, expect_dimension, Provenance::Exact));
            let mut all_triple = true;
            for f in &system.basis {
                let hypersurface = Variety::new(ambient.clone(), vec![f.clone()])?;
                for p in &points {
                    all_triple &= multiplicity_at(&hypersurface, p)?.is_some_and(|m| m >= 3);
                }
            }
            report.push(Claim::check(
                "every basis form has multiplicity at least 3 at every point",
                all_triple,
                true,
                all_triple,
                Provenance::Exact,
            ));
            report.line(format!("{dimension}-dimensional space of degree-{degree} forms"));
            let basis: Vec<String> =
                if show_basis { system.basis.iter().map(ToString::to_string).collect() } else { Vec::new() };
            report.details = json!({
                "points": points.iter().map(|p| show(p)).collect::<Vec<_>>(),
                "basis": basis,
            });
        }
        Err(ConstructionError::EmptySolutionSpace { unknowns, rank }) => {
            report.push(Claim::info("unknowns", unknowns, Provenance::Exact));
            report.push(Claim::info("observed rank", rank, Provenance::Exact));
            report.push(Claim::optional("dimension", 0, expect_dimension, Provenance::Exact));
            report.line("only the zero form".to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}
