//! Report payloads and their JSON / CSV / text renderings.

use serde::Serialize;

use cyb_core::chow::{Base, BundleSpec};
use cyb_core::discriminant::{Octic, WitnessRecord};
use cyb_core::invariants::{CyInvariants, FieldCheck, PicardHypotheses};
use cyb_core::kahler::{ContractionKind, ContractionReport, KahlerReport, Rationality};

/// Version of the JSON layout; bump on any incompatible change.
pub const SCHEMA: u32 = 1;

/// CSV column order, fixed.
pub const CSV_HEADER: &[&str] = &[
    "base",
    "degrees",
    "c1",
    "c2",
    "gamma",
    "c3_x",
    "c3_x_oracle_ok",
    "h_dot_c2",
    "h_dot_c2_oracle_ok",
    "xi_dot_c2",
    "xi_dot_c2_oracle_ok",
    "mk_dot_c2",
    "mk_dot_c2_oracle_ok",
    "h_cubed",
    "h_cubed_oracle_ok",
    "xi_h2",
    "xi_h2_oracle_ok",
    "xi2_h",
    "xi2_h_oracle_ok",
    "xi_cubed",
    "xi_cubed_oracle_ok",
    "mk_cubed",
    "mk_cubed_oracle_ok",
    "mk_sq_h",
    "mk_sq_h_oracle_ok",
    "fiber_count",
    "fiber_count_oracle_ok",
    "picard",
    "picard_hypotheses",
    "rationality",
    "c2_ray_h",
    "c2_ray_xi",
    "degeneracy_det",
    "basis_det",
    "contraction_kind",
    "contraction_count",
    "oracle_ok",
];

/// The bundle as given on the command line and after normalization.
#[derive(Clone, Debug, Serialize)]
pub struct SpecEcho {
    pub base: Base,
    pub input_degrees: Vec<i64>,
    pub degrees: Vec<i64>,
    pub twist: i64,
}

impl SpecEcho {
    pub fn new(spec: &BundleSpec, input: &[i64]) -> Self {
        SpecEcho {
            base: spec.base(),
            input_degrees: input.to_vec(),
            degrees: spec.split_degrees().unwrap_or_default().to_vec(),
            twist: spec.twist(),
        }
    }
}

/// One spec, flattened: invariants, Kahler data when the Picard number is 2
/// and the contraction type over `P^1`. Field order is the CSV column order.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub base: Base,
    pub degrees: String,
    pub c1: i64,
    pub c2: i64,
    pub gamma: Option<i64>,
    pub c3_x: i64,
    pub c3_x_oracle_ok: bool,
    pub h_dot_c2: i64,
    pub h_dot_c2_oracle_ok: bool,
    pub xi_dot_c2: i64,
    pub xi_dot_c2_oracle_ok: bool,
    pub mk_dot_c2: i64,
    pub mk_dot_c2_oracle_ok: bool,
    pub h_cubed: i64,
    pub h_cubed_oracle_ok: bool,
    pub xi_h2: i64,
    pub xi_h2_oracle_ok: bool,
    pub xi2_h: i64,
    pub xi2_h_oracle_ok: bool,
    pub xi_cubed: i64,
    pub xi_cubed_oracle_ok: bool,
    pub mk_cubed: Option<i64>,
    pub mk_cubed_oracle_ok: Option<bool>,
    pub mk_sq_h: Option<i64>,
    pub mk_sq_h_oracle_ok: Option<bool>,
    pub fiber_count: Option<i64>,
    pub fiber_count_oracle_ok: Option<bool>,
    pub picard: Option<i64>,
    pub picard_hypotheses: Option<PicardHypotheses>,
    pub rationality: Option<Rationality>,
    pub c2_ray_h: Option<i64>,
    pub c2_ray_xi: Option<i64>,
    pub degeneracy_det: Option<i64>,
    pub basis_det: Option<i64>,
    pub contraction_kind: Option<ContractionKind>,
    pub contraction_count: Option<i64>,
    pub oracle_ok: bool,
}

fn check_ok(checks: &[FieldCheck], name: &str) -> Option<bool> {
    checks
        .iter()
        .find(|c| c.quantity == name)
        .map(|c| c.oracle_ok)
}

impl ReportRow {
    pub fn new(
        inv: &CyInvariants,
        fiber_count_ok: Option<bool>,
        kahler: Option<&KahlerReport>,
        contraction: Option<&ContractionReport>,
    ) -> Self {
        let ok = |name| check_ok(&inv.checks, name).unwrap_or(false);
        let degrees = inv
            .degrees
            .as_deref()
            .unwrap_or_default()
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        let oracle_ok = inv.all_oracles_ok() && fiber_count_ok.unwrap_or(true);
        ReportRow {
            base: inv.base,
            degrees,
            c1: inv.c1,
            c2: inv.c2,
            gamma: inv.gamma,
            c3_x: inv.c3_x,
            c3_x_oracle_ok: ok("c3_x"),
            h_dot_c2: inv.h_dot_c2,
            h_dot_c2_oracle_ok: ok("h_dot_c2"),
            xi_dot_c2: inv.xi_dot_c2,
            xi_dot_c2_oracle_ok: ok("xi_dot_c2"),
            mk_dot_c2: inv.mk_dot_c2,
            mk_dot_c2_oracle_ok: ok("mk_dot_c2"),
            h_cubed: inv.h_cubed,
            h_cubed_oracle_ok: ok("h_cubed"),
            xi_h2: inv.xi_h2,
            xi_h2_oracle_ok: ok("xi_h2"),
            xi2_h: inv.xi2_h,
            xi2_h_oracle_ok: ok("xi2_h"),
            xi_cubed: inv.xi_cubed,
            xi_cubed_oracle_ok: ok("xi_cubed"),
            mk_cubed: inv.mk_cubed,
            mk_cubed_oracle_ok: check_ok(&inv.checks, "mk_cubed"),
            mk_sq_h: inv.mk_sq_h,
            mk_sq_h_oracle_ok: check_ok(&inv.checks, "mk_sq_h"),
            fiber_count: inv.fiber_count,
            fiber_count_oracle_ok: fiber_count_ok,
            picard: inv.picard.map(|p| p.value),
            picard_hypotheses: inv.picard.map(|p| p.hypotheses),
            rationality: kahler.map(|k| k.rationality.verdict),
            c2_ray_h: kahler.map(|k| k.c2_values[0]),
            c2_ray_xi: kahler.map(|k| k.c2_values[1]),
            degeneracy_det: kahler.and_then(|k| k.degeneracy_det),
            basis_det: kahler.map(|k| k.basis_det),
            contraction_kind: contraction.map(|c| c.kind),
            contraction_count: contraction.and_then(|c| c.counts),
            oracle_ok,
        }
    }

    /// `key=value` pairs on one line, empty optionals omitted.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("row serializes");
        let map = value.as_object().expect("row is a map");
        CSV_HEADER
            .iter()
            .filter_map(|k| match &map[*k] {
                serde_json::Value::Null => None,
                serde_json::Value::String(s) => Some(format!("{k}={s}")),
                v => Some(format!("{k}={v}")),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn rows_to_csv(rows: &[ReportRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(CSV_HEADER)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Debug, Serialize)]
pub struct InvariantsReport {
    pub spec: SpecEcho,
    pub invariants: CyInvariants,
    pub row: ReportRow,
}

#[derive(Debug, Serialize)]
pub struct EnumerateReport {
    pub base: Base,
    pub max_degree: i64,
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Serialize)]
pub struct KaehlerCommandReport {
    pub spec: SpecEcho,
    #[serde(flatten)]
    pub kahler: KahlerReport,
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub spec: SpecEcho,
    #[serde(flatten)]
    pub contraction: ContractionReport,
}

#[derive(Debug, Serialize)]
pub struct LabeledWitness {
    /// `sampled` for the drawn section, `constructed` for a section forced to
    /// vanish at the point.
    pub section: &'static str,
    #[serde(flatten)]
    pub record: WitnessRecord,
}

#[derive(Debug, Serialize)]
pub struct DiscriminantReport {
    pub spec: SpecEcho,
    pub seed: u64,
    pub bound: u64,
    pub section_degrees: [u32; 3],
    /// Every coefficient of the sampled section is zero.
    pub degenerate: bool,
    pub base_locus_expected: i64,
    pub octic: Octic,
    pub witnesses: Vec<LabeledWitness>,
}

/// Any report, tagged with its command.
#[derive(Debug)]
pub enum Report {
    Invariants(InvariantsReport),
    Enumerate(EnumerateReport),
    Kaehler(KaehlerCommandReport),
    Classify(ClassifyReport),
    Discriminant(DiscriminantReport),
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

fn envelope<T: Serialize>(command: &'static str, body: &T) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(&Envelope {
        schema: SCHEMA,
        command,
        body,
    })?;
    s.push('\n');
    Ok(s)
}

impl Report {
    pub fn command(&self) -> &'static str {
        match self {
            Report::Invariants(_) => "invariants",
            Report::Enumerate(_) => "enumerate",
            Report::Kaehler(_) => "kaehler",
            Report::Classify(_) => "classify",
            Report::Discriminant(_) => "discriminant",
        }
    }

    /// Rows for CSV output; commands without rows have none.
    pub fn rows(&self) -> Option<&[ReportRow]> {
        match self {
            Report::Invariants(r) => Some(std::slice::from_ref(&r.row)),
            Report::Enumerate(r) => Some(&r.rows),
            _ => None,
        }
    }

    /// False when some closed form disagreed with its oracle.
    pub fn oracle_ok(&self) -> bool {
        self.rows()
            .map(|rows| rows.iter().all(|r| r.oracle_ok))
            .unwrap_or(true)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let c = self.command();
        match self {
            Report::Invariants(r) => envelope(c, r),
            Report::Enumerate(r) => envelope(c, r),
            Report::Kaehler(r) => envelope(c, r),
            Report::Classify(r) => envelope(c, r),
            Report::Discriminant(r) => envelope(c, r),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Invariants(r) => out.push_str(&r.row.to_text()),
            Report::Enumerate(r) => {
                for row in &r.rows {
                    out.push_str(&row.to_text());
                    out.push('\n');
                }
                return out;
            }
            Report::Kaehler(r) => {
                let k = &r.kahler;
                let [w30, w21, w12, w03] = k.cubic.coefficients();
                out.push_str(&format!(
                    "cubic: {w30} x^3 + {w21} x^2 y + {w12} x y^2 + {w03} y^3\n"
                ));
                out.push_str(&format!("rationality: {:?}\n", k.rationality.verdict));
                if let Some(l) = &k.rationality.double_line {
                    out.push_str(&format!(
                        "double_line: ({}, {}) x{}\n",
                        l.x, l.y, l.multiplicity
                    ));
                }
                out.push_str(&format!(
                    "rays: pi^*h = (0, 1), O_X(1) = (1, 0)\nc2_values: {} {}\n",
                    k.c2_values[0], k.c2_values[1]
                ));
                if let Some(d) = k.degeneracy_det {
                    out.push_str(&format!("degeneracy_det: {d}\n"));
                }
                out.push_str(&format!("basis_det: {}", k.basis_det));
            }
            Report::Classify(r) => {
                let c = &r.contraction;
                let kind = serde_json::to_value(c.kind).expect("enum serializes");
                out.push_str(&format!("kind: {}\n", kind.as_str().unwrap_or_default()));
                out.push_str(&format!("exceptional_locus: {}", c.exceptional_locus));
                if let Some(n) = c.counts {
                    out.push_str(&format!("\ncount: {n}"));
                }
            }
            Report::Discriminant(r) => out.push_str(&r.octic.text()),
        }
        out.push('\n');
        out
    }
}
