use std::fmt::Write as _;
use std::path::PathBuf;

use num_traits::{Signed, ToPrimitive};
use pairtile_core::oracle::CoverageMap;
use pairtile_core::point::to_f64;
use pairtile_core::spectral::DENSITY_TRUNCATION;
use pairtile_core::{
    area, center, check_bolle, check_lattice_tiling, density_at_zero, extract_pairing, is_centrally_symmetric,
    is_convex, is_parallelogram, quasi_periodicity_certificate, verify_tiling_exact, verify_tiling_sampled, zero_set,
    zero_set_intersection_in_disc, CoverageReport, Error as CoreError, PolygonalRegion, TilingVerdict,
    TranslatedLattice, Q,
};
use serde::Serialize;

use crate::failure::Failure;
use crate::schema::{self, pt, Int, PairDoc, Pt, Rat, RegionInput, ReportDoc, Translations, VerdictDoc};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    CheckLattice,
    CheckBolle,
    Classify,
    Verify,
    Zeroset,
    Density,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub verify: bool,
    pub radius: Option<Q>,
    pub t: Option<f64>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub format: Format,
}

#[derive(Clone, Debug)]
pub struct AnalysisRequest {
    pub command: Command,
    pub region_path: Option<PathBuf>,
    pub lattice_path: Option<PathBuf>,
    pub options: Options,
}

/// What to print and how to exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn verdict(affirmative: bool, stdout: String) -> Self {
        Outcome { code: if affirmative { 0 } else { 1 }, stdout }
    }
}

impl From<Failure> for Outcome {
    fn from(f: Failure) -> Self {
        Outcome { code: 2, stdout: f.to_json() }
    }
}

pub const DEFAULT_SAMPLES: usize = 4096;

pub fn run(req: &AnalysisRequest) -> Outcome {
    match dispatch(req) {
        Ok(o) => o,
        Err(f) => f.into(),
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new("IoError", format!("{}: {e}", path.display()), None))
}

struct Inputs<'a> {
    req: &'a AnalysisRequest,
}

impl Inputs<'_> {
    fn region(&self) -> Result<RegionInput, Failure> {
        let path =
            self.req.region_path.as_ref().ok_or_else(|| Failure::usage("a region file is required", "region"))?;
        schema::parse_region(&read(path)?)
    }

    fn translations(&self) -> Result<Translations, Failure> {
        let path =
            self.req.lattice_path.as_ref().ok_or_else(|| Failure::usage("a lattice file is required", "lattice"))?;
        schema::parse_translations(&read(path)?)
    }

    fn single_lattice(&self) -> Result<TranslatedLattice, Failure> {
        self.translations()?.single().ok_or_else(|| Failure::invariant(&CoreError::UnsupportedMultiset, "", None))
    }
}

fn json_only(req: &AnalysisRequest) -> Result<(), Failure> {
    if req.options.format == Format::Csv {
        return Err(Failure::usage("csv output is only available for verify and zeroset", "--format"));
    }
    Ok(())
}

fn dispatch(req: &AnalysisRequest) -> Result<Outcome, Failure> {
    let inputs = Inputs { req };
    if let Some(s) = req.options.samples {
        if s == 0 {
            return Err(Failure::usage("samples must be at least 1", "--samples"));
        }
    }
    match req.command {
        Command::Analyze => {
            json_only(req)?;
            analyze(&inputs.region()?)
        }
        Command::CheckLattice => {
            json_only(req)?;
            let input = inputs.region()?;
            let lattice = inputs.single_lattice()?;
            let verdict = check_lattice_tiling(&input.region, lattice.lattice()).map_err(|e| fail(&e, &input))?;
            let mut doc = VerdictDoc::of(&verdict);
            if req.options.verify {
                doc.oracle = Some(cross_check(&verdict, &input.region, &lattice)?);
            }
            Ok(Outcome::verdict(verdict.tiles, schema::to_json(&doc)))
        }
        Command::CheckBolle => {
            json_only(req)?;
            let input = inputs.region()?;
            let lattice = inputs.single_lattice()?;
            let (centred, at) = center(&input.region).map_err(|e| fail(&e, &input))?;
            let verdict = check_bolle(&centred, lattice.lattice()).map_err(|e| fail(&e, &input))?;
            let mut doc = VerdictDoc::of(&verdict);
            doc.center = Some(pt(&at));
            if req.options.verify {
                doc.oracle = Some(cross_check(&verdict, &centred, &lattice)?);
            }
            Ok(Outcome::verdict(verdict.tiles, schema::to_json(&doc)))
        }
        Command::Classify => {
            json_only(req)?;
            let input = inputs.region()?;
            let cert = quasi_periodicity_certificate(&input.region).map_err(|e| fail(&e, &input))?;
            let doc = ClassifyDoc {
                guaranteed_quasiperiodic: cert.guaranteed,
                common_orientations: cert.common_orientations.iter().map(|o| pt(&o.as_vector())).collect(),
            };
            Ok(Outcome::verdict(cert.guaranteed, schema::to_json(&doc)))
        }
        Command::Verify => verify(req, &inputs),
        Command::Zeroset => zeroset(req, &inputs.region()?),
        Command::Density => {
            json_only(req)?;
            let t = req.options.t.ok_or_else(|| Failure::usage("--t is required", "--t"))?;
            if !(t >= 1.0 && t.is_finite()) {
                return Err(Failure::usage("t must be a finite number >= 1", "--t"));
            }
            let set = inputs.translations()?.into_set();
            let estimate = density_at_zero(&set, t).map_err(|e| Failure::invariant(&e, "", None))?;
            let doc = DensityDoc { t, estimate, density: Rat(set.density()), truncation: DENSITY_TRUNCATION };
            Ok(Outcome::verdict(true, schema::to_json(&doc)))
        }
    }
}

fn fail(e: &CoreError, input: &RegionInput) -> Failure {
    Failure::invariant(e, "", Some(&input.raw))
}

/// `K + (Λ + o)` is `(K + o) + Λ`.
fn shifted(region: &PolygonalRegion, lattice: &TranslatedLattice) -> PolygonalRegion {
    region.translate(lattice.offset())
}

fn cross_check(
    verdict: &TilingVerdict,
    region: &PolygonalRegion,
    lattice: &TranslatedLattice,
) -> Result<ReportDoc, Failure> {
    let report = verify_tiling_exact(&shifted(region, lattice), lattice.lattice())
        .map_err(|e| Failure::invariant(&e, "", None))?;
    let agree =
        verdict.tiles == report.constant && verdict.weight.as_ref().map(|w| w.to_u64()) == report.weight.map(Some);
    if !agree {
        return Err(Failure::new(
            "OracleDisagreement",
            format!(
                "criterion says tiles={} weight={:?}, coverage count says constant={} weight={:?}",
                verdict.tiles, verdict.weight, report.constant, report.weight
            ),
            None,
        ));
    }
    Ok(ReportDoc::of(&report))
}

#[derive(Serialize)]
struct ClassifyDoc {
    guaranteed_quasiperiodic: bool,
    common_orientations: Vec<Pt>,
}

#[derive(Serialize)]
struct DensityDoc {
    t: f64,
    estimate: f64,
    /// Exact limit: total multiplicity over covolume.
    density: Rat,
    truncation: f64,
}

#[derive(Serialize)]
struct AnalyzeDoc {
    components: usize,
    area: Rat,
    pairs: Vec<PairDoc>,
    centrally_symmetric: bool,
    center: Option<Pt>,
    convex: Option<bool>,
    parallelogram: Option<bool>,
    guaranteed_quasiperiodic: bool,
    common_orientations: Vec<Pt>,
}

fn analyze(input: &RegionInput) -> Result<Outcome, Failure> {
    let region = &input.region;
    let pairs = extract_pairing(region).map_err(|e| fail(&e, input))?;
    let cert = quasi_periodicity_certificate(region).map_err(|e| fail(&e, input))?;
    let c = is_centrally_symmetric(region);
    let doc = AnalyzeDoc {
        components: region.components().len(),
        area: Rat(area(region)),
        pairs: pairs.iter().map(PairDoc::of).collect(),
        centrally_symmetric: c.is_some(),
        center: c.as_ref().map(pt),
        convex: is_convex(region).ok(),
        parallelogram: is_parallelogram(region).ok(),
        guaranteed_quasiperiodic: cert.guaranteed,
        common_orientations: cert.common_orientations.iter().map(|o| pt(&o.as_vector())).collect(),
    };
    Ok(Outcome::verdict(true, schema::to_json(&doc)))
}

fn verify(req: &AnalysisRequest, inputs: &Inputs) -> Result<Outcome, Failure> {
    let input = inputs.region()?;
    let translations = inputs.translations()?;
    let exact = match (&translations.single(), req.options.samples) {
        (Some(t), None) => Some(t.clone()),
        _ => None,
    };
    let report: CoverageReport;
    let mut csv = None;
    match exact {
        Some(lattice) => {
            let region = shifted(&input.region, &lattice);
            let map = CoverageMap::build(&region, lattice.lattice()).map_err(|e| fail(&e, &input))?;
            report = map.report(&region);
            if req.options.format == Format::Csv {
                let mut out = String::from("face,sample_x,sample_y,area,count\n");
                for (i, f) in map.faces.iter().enumerate() {
                    let (x, y) = f.sample.to_f64();
                    writeln!(out, "{i},{x},{y},{},{}", to_f64(&f.area), f.count).expect("write to string");
                }
                csv = Some(out);
            }
        }
        None => {
            if req.options.format == Format::Csv {
                return Err(Failure::usage(
                    "csv face export needs exact mode (a single lattice, no --samples)",
                    "--format",
                ));
            }
            let samples = req.options.samples.unwrap_or(DEFAULT_SAMPLES);
            report = verify_tiling_sampled(&input.region, &translations.into_set(), samples, req.options.seed)
                .map_err(|e| fail(&e, &input))?;
        }
    }
    let stdout = csv.unwrap_or_else(|| schema::to_json(&ReportDoc::of(&report)));
    Ok(Outcome::verdict(report.constant, stdout))
}

#[derive(Serialize)]
struct FamilyDoc {
    pair_index: usize,
    family: &'static str,
    /// Lines are `⟨normal, ξ⟩ = k`.
    normal: Pt,
    punctured: bool,
    line_indices: Vec<Int>,
}

#[derive(Serialize)]
struct ZerosetDoc {
    radius: Rat,
    discrete: bool,
    common_orientations: Vec<Pt>,
    /// The intersection of all zero sets in the disc, when it is finite.
    points: Option<Vec<Pt>>,
    families: Vec<FamilyDoc>,
}

fn zeroset(req: &AnalysisRequest, input: &RegionInput) -> Result<Outcome, Failure> {
    let radius = req.options.radius.clone().ok_or_else(|| Failure::usage("--radius is required", "--radius"))?;
    if !radius.is_positive() {
        return Err(Failure::usage("radius must be positive", "--radius"));
    }
    let pairs = extract_pairing(&input.region).map_err(|e| fail(&e, input))?;
    let mut families = Vec::with_capacity(2 * pairs.len());
    for (i, p) in pairs.iter().enumerate() {
        let z = zero_set(p);
        for (name, fam) in [("tau", &z.tau_family), ("e", &z.e_family)] {
            families.push((i, name, fam.clone(), fam.indices_in_disc(&radius)));
        }
    }

    if req.options.format == Format::Csv {
        let mut out = String::from("pair_index,family,line_index,point_x,point_y,dir_x,dir_y\n");
        for (i, name, fam, ks) in &families {
            let n = fam.normal();
            let foot_unit = n.scale(&n.norm_sq().recip());
            let (dx, dy) = n.perp().to_f64();
            let len = dx.hypot(dy);
            for k in ks {
                let foot = foot_unit.scale(&Q::from_integer(k.clone()));
                let (px, py) = foot.to_f64();
                writeln!(out, "{i},{name},{k},{px},{py},{},{}", dx / len, dy / len).expect("write to string");
            }
        }
        return Ok(Outcome::verdict(true, out));
    }

    let (discrete, common, points) = match zero_set_intersection_in_disc(&pairs, &radius) {
        Ok(pts) => (true, Vec::new(), Some(pts.iter().map(pt).collect())),
        Err(CoreError::NotDiscrete { common }) => (false, common.iter().map(|o| pt(&o.as_vector())).collect(), None),
        Err(e) => return Err(fail(&e, input)),
    };
    let doc = ZerosetDoc {
        radius: Rat(radius),
        discrete,
        common_orientations: common,
        points,
        families: families
            .into_iter()
            .map(|(i, name, fam, ks)| FamilyDoc {
                pair_index: i,
                family: name,
                normal: pt(fam.normal()),
                punctured: fam.punctured,
                line_indices: ks.into_iter().map(Int).collect(),
            })
            .collect(),
    };
    Ok(Outcome::verdict(true, schema::to_json(&doc)))
}

/// Rational command-line value: `"p/q"` or an integer.
pub fn parse_rational_arg(s: &str) -> Result<Q, String> {
    schema::parse_rational(s).ok_or_else(|| format!("{s:?} is not a rational of the form p/q"))
}
