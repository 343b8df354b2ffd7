//! Dispatch from a parsed job to the library, producing a [`Report`].

use std::collections::BTreeMap;

use num_bigint::BigInt;

use novikov_core::complexes::{
    integral_homology, morse_lower_bounds, AnyComplex, ChainComplex, ChainMap, DegreeCounts, Grade, HomologyReport,
};
use novikov_core::fundomain::{
    algebraic_novikov_complex, algebraic_novikov_truncated, assemble_mapping_cone, cokernel_iso_check,
    exact_matches_truncated, geometric_series_check, torsion_zeta, AlgebraicFundamentalDomain,
};
use novikov_core::linalg::{
    novikov_associated, rank_over_function_field, smith_normal_form_int, to_laurent, Matrix, Ring,
};
use novikov_core::models::{fibering_check, knot_fundamental_domain, mapping_torus_complex, SeifertData};
use novikov_core::novikov::{
    check_inequalities, finite_domination_check, morse_novikov_bounds, novikov_homology, novikov_homology_rational,
    NovikovReport,
};
use novikov_core::{Direction, Error, LaurentPoly};

use crate::document::{JobDocument, Kind, Options, Payload};
use crate::report::{record, Report, Section, Val};
use crate::CliError;

/// Command-line overrides and switches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub precision: Option<usize>,
    pub direction: Option<Direction>,
    /// Runs redundant cross-checks and fails on any disagreement.
    pub oracle: bool,
}

impl RunConfig {
    fn resolve(&self, doc: &Options) -> Options {
        Options {
            precision: self.precision.unwrap_or(doc.precision),
            direction: self.direction.unwrap_or(doc.direction),
        }
    }
}

fn degree_key(i: i64) -> String {
    i.to_string()
}

fn homology_section<F: Clone + Into<Val>>(name: &str, h: &HomologyReport<F>) -> Section {
    let mut s = Section::new(name);
    for d in &h.degrees {
        s.push(
            degree_key(d.degree),
            record([
                ("b", Val::from(d.betti)),
                ("q", Val::from(d.torsion_count())),
                ("factors", Val::from(d.torsion_factors.clone())),
            ]),
        );
    }
    s.push("vanishes", h.is_zero());
    s
}

fn counts_section(name: &str, counts: &DegreeCounts) -> Section {
    let mut s = Section::new(name);
    for (i, n) in counts {
        s.push(degree_key(*i), *n);
    }
    s
}

fn matrix_val<R: Ring + Into<Val>>(m: &Matrix<R>) -> Val {
    Val::List(
        (0..m.rows())
            .map(|r| Val::List(m.row(r).iter().cloned().map(Into::into).collect()))
            .collect(),
    )
}

fn oracle_fail(what: &str) -> CliError {
    CliError::Oracle(what.to_string())
}

fn novikov_sections(report: &mut Report, name: &str, r: &NovikovReport) {
    report.conclusive &= r.conclusive;
    report.section(homology_section(name, &r.homology));
    report.section(counts_section("Morse-Novikov bounds", &morse_novikov_bounds(r)));
}

/// Novikov homology of a complex of any grade.
fn novikov_any(c: &AnyComplex, dir: Direction) -> Result<NovikovReport, CliError> {
    Ok(match c.base_change(Grade::Laurent) {
        Ok(AnyComplex::Laurent(l)) => novikov_homology(&l, dir),
        _ => match c {
            AnyComplex::Rational(r) => novikov_homology_rational(r, dir)?,
            _ => unreachable!("integer and Laurent complexes widen to Laurent"),
        },
    })
}

fn check_ranks(r: &NovikovReport, oracle: bool, report: &mut Report) -> Result<(), CliError> {
    if oracle {
        if !r.ranks_agree {
            return Err(oracle_fail("diagonalization rank differs from the rank over Q(z)"));
        }
        report.section(Section::new("oracle").with("rank vs diagonalization", true));
    }
    Ok(())
}

fn run_complex_homology(c: &AnyComplex, cfg: &RunConfig) -> Result<Report, CliError> {
    let AnyComplex::Integer(c) = c else {
        return Err(CliError::Core(Error::Unsupported(format!(
            "complex-homology needs an integer complex, found grade {}; use kind novikov",
            c.grade().name()
        ))));
    };
    let h = integral_homology(c);
    let mut report = Report::new(Kind::ComplexHomology, "Integral homology");
    report.section(homology_section("homology", &h));
    report.section(counts_section("Morse bounds", &morse_lower_bounds(&h)));
    if cfg.oracle {
        for i in c.degrees() {
            let d = c.differential(i);
            if smith_normal_form_int(&d).rank != rank_over_function_field(&to_laurent(&d)) {
                return Err(oracle_fail(&format!(
                    "SNF rank disagrees with rank over Q(z) at degree {i}"
                )));
            }
        }
        report.section(Section::new("oracle").with("rank vs SNF", true));
    }
    Ok(report)
}

fn run_novikov(c: &AnyComplex, opts: &Options, cfg: &RunConfig) -> Result<Report, CliError> {
    let r = novikov_any(c, opts.direction)?;
    let mut report = Report::new(Kind::Novikov, format!("Novikov homology ({})", opts.direction));
    novikov_sections(&mut report, "novikov homology", &r);
    check_ranks(&r, cfg.oracle, &mut report)?;
    Ok(report)
}

fn laurent_of(c: &AnyComplex) -> Result<ChainComplex<LaurentPoly>, CliError> {
    match c.base_change(Grade::Laurent)? {
        AnyComplex::Laurent(l) => Ok(l),
        _ => unreachable!("widening to Laurent"),
    }
}

fn run_domination(c: &AnyComplex) -> Result<Report, CliError> {
    let c = match c {
        AnyComplex::Rational(_) => {
            return Err(CliError::Core(Error::Unsupported(
                "finite domination needs Laurent polynomial entries".into(),
            )))
        }
        other => laurent_of(other)?,
    };
    let v = finite_domination_check(&c);
    let mut report = Report::new(Kind::Domination, "Finite domination");
    report.conclusive = v.conclusive;
    report.section(
        Section::new("domination")
            .with("vanishes plus", v.vanishes_plus)
            .with("vanishes minus", v.vanishes_minus)
            .with("finitely dominated", v.finitely_dominated),
    );
    Ok(report)
}

fn fundomain_sections(
    report: &mut Report,
    fd: &AlgebraicFundamentalDomain,
    opts: &Options,
    cfg: &RunConfig,
) -> Result<(), CliError> {
    let k = opts.precision;
    let fhat = algebraic_novikov_complex(fd)?;
    let mut exact = Section::new("F-hat");
    for i in fhat.degrees() {
        exact.push(format!("rank {i}"), fhat.rank(i));
    }
    for i in fhat.degrees().skip(1) {
        exact.push(format!("d {i}"), matrix_val(&fhat.differential(i)));
    }
    report.section(exact);
    let trunc = algebraic_novikov_truncated(fd, k)?;
    let mut t = Section::new(format!("F-hat truncated at z^{k}"));
    for (i, d) in &trunc.differentials {
        t.push(format!("d {i}"), matrix_val(d));
    }
    report.section(t);
    let v = cokernel_iso_check(fd, k)?;
    let mut s = Section::new("cokernel check")
        .with("precision", k)
        .with("passed", v.passed());
    if let Some(m) = &v.mismatch {
        s.push(
            "mismatch",
            record([
                ("degree", Val::from(m.degree)),
                ("order", Val::from(m.order)),
                ("check", Val::from(m.check)),
            ]),
        );
    }
    report.section(s);
    let cone = novikov_homology(&assemble_mapping_cone(fd)?, opts.direction);
    novikov_sections(
        report,
        &format!("novikov homology of C(phi) ({})", opts.direction),
        &cone,
    );
    report.section(Section::new("zeta").with("value", torsion_zeta(fd)?.value));
    if cfg.oracle {
        if !geometric_series_check(fd, k)? {
            return Err(oracle_fail("geometric series identity fails"));
        }
        if !exact_matches_truncated(fd, k)? {
            return Err(oracle_fail("exact and truncated F-hat disagree"));
        }
        let mut o = Section::new("oracle")
            .with("geometric series", true)
            .with("exact vs truncated", true)
            .with("rank vs diagonalization", cone.ranks_agree);
        if !cone.ranks_agree {
            return Err(oracle_fail("diagonalization rank differs from the rank over Q(z)"));
        }
        if opts.direction == Direction::Plus {
            let f = novikov_homology_rational(&fhat, Direction::Plus)?;
            if !same_homology(&cone, &f) {
                return Err(oracle_fail("Novikov homology of C(phi) and F-hat differ"));
            }
            o.push("C(phi) vs F-hat", true);
        }
        report.section(o);
    }
    Ok(())
}

fn same_homology(a: &NovikovReport, b: &NovikovReport) -> bool {
    let degrees = a.degrees().iter().chain(b.degrees()).map(|d| d.degree);
    degrees.into_iter().all(|i| {
        let (x, y) = (a.torsion_factors(i), b.torsion_factors(i));
        a.betti(i) == b.betti(i)
            && x.len() == y.len()
            && x.iter().zip(y).all(|(p, q)| novikov_associated(p, q, a.direction))
    })
}

fn run_fundomain(fd: &AlgebraicFundamentalDomain, opts: &Options, cfg: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new(Kind::Fundomain, "Algebraic fundamental domain");
    fundomain_sections(&mut report, fd, opts, cfg)?;
    Ok(report)
}

fn run_mapping_torus(
    complex: &ChainComplex<BigInt>,
    h: &BTreeMap<i64, Matrix<BigInt>>,
    orientation: Direction,
    opts: &Options,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let map = ChainMap::new(complex.clone(), complex.clone(), h.clone())?;
    let c = mapping_torus_complex(&map, orientation)?;
    let r = novikov_homology(&c, opts.direction);
    let mut report = Report::new(
        Kind::MappingTorus,
        format!(
            "Mapping torus, {orientation} orientation, Novikov ring {}",
            opts.direction
        ),
    );
    novikov_sections(&mut report, "novikov homology", &r);
    check_ranks(&r, cfg.oracle, &mut report)?;
    Ok(report)
}

fn run_knot(s: &SeifertData, opts: &Options, cfg: &RunConfig) -> Result<Report, CliError> {
    // fibering_check itself fails if the two criteria disagree.
    let v = fibering_check(s)?;
    let mut report = Report::new(Kind::Knot, "Knot complement");
    let mut alex = Section::new("alexander");
    for (i, p) in &v.alexander {
        alex.push(degree_key(*i), p.clone());
    }
    report.section(alex);
    if !v.torsion.is_empty() {
        let mut t = Section::new("torsion of H(N)");
        for (i, f) in &v.torsion {
            t.push(degree_key(*i), f.clone());
        }
        report.section(t);
    }
    report.section(
        Section::new("fibering")
            .with("novikov vanishes", v.novikov_vanishes)
            .with("extreme coefficients unit", v.extreme_coeffs_unit)
            .with("fibers", v.fibers),
    );
    let fd = knot_fundamental_domain(s)?;
    let cone = novikov_homology(&assemble_mapping_cone(&fd)?, opts.direction);
    novikov_sections(&mut report, &format!("novikov homology ({})", opts.direction), &cone);
    if cfg.oracle {
        if !cokernel_iso_check(&fd, opts.precision)?.passed() {
            return Err(oracle_fail("cokernel check fails on the knot domain"));
        }
        if !cone.ranks_agree {
            return Err(oracle_fail("diagonalization rank differs from the rank over Q(z)"));
        }
        report.section(
            Section::new("oracle")
                .with("fibering criteria agree", v.novikov_vanishes == v.extreme_coeffs_unit)
                .with("cokernel check", true),
        );
    }
    Ok(report)
}

fn inequality_section(name: &str, counts: &DegreeCounts, bounds: &DegreeCounts) -> Section {
    let v = check_inequalities(counts, bounds);
    let mut s = Section::new(name);
    let degrees: std::collections::BTreeSet<i64> = counts.keys().chain(bounds.keys()).copied().collect();
    for i in degrees {
        let (c, b) = (
            counts.get(&i).copied().unwrap_or(0),
            bounds.get(&i).copied().unwrap_or(0),
        );
        s.push(
            degree_key(i),
            record([
                ("count", Val::from(c)),
                ("bound", Val::from(b)),
                ("ok", Val::from(c >= b)),
            ]),
        );
    }
    s.push("satisfied", v.satisfied());
    s
}

fn run_inequalities(c: &AnyComplex, counts: &Option<DegreeCounts>, opts: &Options) -> Result<Report, CliError> {
    let counts = counts.clone().unwrap_or_else(|| match c {
        AnyComplex::Integer(x) => x.ranks(),
        AnyComplex::Laurent(x) => x.ranks(),
        AnyComplex::Rational(x) => x.ranks(),
    });
    let mut report = Report::new(Kind::Inequalities, "Morse and Morse-Novikov inequalities");
    if let AnyComplex::Integer(x) = c {
        let h = integral_homology(x);
        report.section(inequality_section("Morse", &counts, &morse_lower_bounds(&h)));
    }
    let r = novikov_any(c, opts.direction)?;
    report.conclusive &= r.conclusive;
    report.section(inequality_section(
        &format!("Morse-Novikov ({})", opts.direction),
        &counts,
        &morse_novikov_bounds(&r),
    ));
    Ok(report)
}

/// Runs a job. Overrides in `cfg` take precedence over document options.
pub fn run(job: &JobDocument, cfg: &RunConfig) -> Result<Report, CliError> {
    let opts = cfg.resolve(&job.options);
    match (&job.kind, &job.payload) {
        (Kind::ComplexHomology, Payload::Complex(c)) => run_complex_homology(c, cfg),
        (Kind::Novikov, Payload::Complex(c)) => run_novikov(c, &opts, cfg),
        (Kind::Domination, Payload::Complex(c)) => run_domination(c),
        (Kind::Fundomain, Payload::Fundomain(fd)) => run_fundomain(fd, &opts, cfg),
        (
            Kind::MappingTorus,
            Payload::MappingTorus {
                complex,
                h,
                orientation,
            },
        ) => run_mapping_torus(complex, h, *orientation, &opts, cfg),
        (Kind::Knot, Payload::Knot(s)) => run_knot(s, &opts, cfg),
        (Kind::Inequalities, Payload::Inequalities { complex, counts }) => run_inequalities(complex, counts, &opts),
        (kind, _) => Err(CliError::Core(Error::InternalInconsistency(format!(
            "payload does not match kind {kind}"
        )))),
    }
}
