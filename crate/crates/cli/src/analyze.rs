use serde::Serialize;

use polytile_core::discretize::{LiftVerdict, OccupancyTable};
use polytile_core::engine::tiling_defect;
use polytile_core::geometry::{format_rational, point_strings, ratio};
use polytile_core::structure::{
    earthquake_decomposition, face_linkage_plates, sliding_direction, vertex_share_classes, weak_periodic_report,
    PeriodicClass, Periodicity, PlateFamily, ShareClasses, StructureError,
};
use polytile_core::tiling::IntPeriodic;
use polytile_core::{IntegerPolygonalSet, RPoint, TilingDesc, ZPoint};

use crate::error::CliError;
use crate::input::Subject;

pub fn data(e: impl std::fmt::Display) -> CliError {
    CliError::Data(e.to_string())
}

fn structure_error(e: StructureError) -> CliError {
    match e {
        StructureError::InvariantViolation(m) => CliError::Internal(m),
        e => CliError::Data(e.to_string()),
    }
}

fn defect_message(cell: RPoint, coverage: usize) -> String {
    let [x, y] = point_strings(&cell);
    if coverage == 0 {
        format!("not a tiling: uncovered cell ({x},{y})")
    } else {
        format!("not a tiling: cell ({x},{y}) covered {coverage} times")
    }
}

/// The translates of a polygon tiling, scaled to integers, with the matching
/// occupancy table of the dilated polygon.
pub struct ScaledTiling {
    pub scale: i64,
    pub translates: IntPeriodic,
    pub table: OccupancyTable,
}

pub fn scaled_tiling(omega: &IntegerPolygonalSet, desc: &TilingDesc) -> Result<ScaledTiling, CliError> {
    let scale = desc.denominator().map_err(data)?;
    let translates = desc.to_scaled_periodic(scale).map_err(data)?;
    Ok(ScaledTiling { scale, translates, table: OccupancyTable::new(&omega.dilate(scale)) })
}

/// `None` when the subject is a tiling, otherwise a diagnostic naming the
/// first bad cell.
pub fn check(subject: &Subject) -> Result<Option<String>, CliError> {
    match subject {
        Subject::Polygon(omega, desc) => {
            let st = scaled_tiling(omega, desc)?;
            // coverage is translation invariant, so recentre on a translate
            let Some(&t0) = st.translates.base().first() else {
                return Ok(Some("not a tiling: no translates".into()));
            };
            let centred = IntPeriodic::new(*st.translates.lattice(), st.translates.base().iter().map(|&b| b - t0))
                .map_err(data)?;
            match st.table.lift_tiling(&centred).map_err(data)? {
                LiftVerdict::IsContinuousTiling => Ok(None),
                LiftVerdict::NotTiling { cell, coverage, .. } => {
                    let c = cell + t0;
                    Ok(Some(defect_message(RPoint::new(ratio(c.x, st.scale), ratio(c.y, st.scale)), coverage)))
                }
            }
        }
        Subject::Tile(tile, desc) => Ok(tiling_defect(tile.points(), desc)
            .map_err(data)?
            .map(|(cell, c)| defect_message(cell.into(), c as usize))),
    }
}

#[derive(Serialize)]
pub struct ClassJson {
    pub members: Vec<[String; 2]>,
    pub periods: Vec<[String; 2]>,
    pub copies: Option<i64>,
}

#[derive(Serialize)]
pub struct ClassesJson {
    pub count: Option<i64>,
    pub classes: Vec<ClassJson>,
}

#[derive(Serialize)]
pub struct PlatesJson {
    pub direction: [i64; 2],
    pub count: Option<i64>,
    pub plates: Vec<ClassJson>,
}

#[derive(Serialize)]
pub struct PiecePeriodJson {
    pub piece: usize,
    pub period: [String; 2],
}

#[derive(Serialize)]
pub struct PeriodicityJson {
    pub classification: &'static str,
    pub periods: Vec<[String; 2]>,
    pub pieces: Vec<PiecePeriodJson>,
}

/// Output of `polytile analyze`; field order is the JSON key order.
#[derive(Serialize)]
pub struct Report {
    pub input: &'static str,
    pub tiling: &'static str,
    pub classes: Option<ClassesJson>,
    pub sliding_direction: Option<[i64; 2]>,
    pub plates: Option<PlatesJson>,
    pub periodicity: PeriodicityJson,
}

fn scaled_point(p: ZPoint, scale: i64) -> [String; 2] {
    [format_rational(&ratio(p.x, scale)), format_rational(&ratio(p.y, scale))]
}

fn class_json(c: &PeriodicClass, scale: i64) -> ClassJson {
    ClassJson {
        members: c.members.iter().map(|&m| scaled_point(m, scale)).collect(),
        periods: c.group.generators().into_iter().map(|g| scaled_point(g, scale)).collect(),
        copies: c.copies,
    }
}

fn classes_json(classes: &ShareClasses) -> ClassesJson {
    ClassesJson {
        count: classes.class_count(),
        classes: classes.graph().classes().iter().map(|c| class_json(c, classes.scale())).collect(),
    }
}

fn plates_json(plates: &PlateFamily, scale: i64, v: ZPoint) -> PlatesJson {
    PlatesJson {
        direction: v.into(),
        count: plates.plate_count(),
        plates: plates.plates().iter().map(|c| class_json(c, scale)).collect(),
    }
}

fn periodicity_json(desc: &TilingDesc) -> Result<PeriodicityJson, CliError> {
    let r = weak_periodic_report(desc).map_err(structure_error)?;
    let (classification, periods) = match &r.classification {
        Periodicity::NotPeriodic => ("NotPeriodic", vec![]),
        Periodicity::SinglyPeriodic(p) => ("SinglyPeriodic", vec![point_strings(p)]),
        Periodicity::WeaklyPeriodic(_) => ("WeaklyPeriodic", vec![]),
        Periodicity::DoublyPeriodic(p, q) => ("DoublyPeriodic", vec![point_strings(p), point_strings(q)]),
    };
    Ok(PeriodicityJson {
        classification,
        periods,
        pieces: r.pieces.iter().map(|p| PiecePeriodJson { piece: p.piece, period: point_strings(&p.period) }).collect(),
    })
}

/// Plates for the earthquake along `v`, in the scaled coordinates of the subject.
pub fn plates(subject: &Subject, v: ZPoint) -> Result<(PlateFamily, i64), CliError> {
    match subject {
        Subject::Polygon(omega, desc) => {
            let st = scaled_tiling(omega, desc)?;
            Ok((face_linkage_plates(&st.table, &st.translates, v * st.scale), st.scale))
        }
        Subject::Tile(tile, desc) => {
            Ok((earthquake_decomposition(tile.points(), &desc.to_int_periodic().map_err(data)?, v), 1))
        }
    }
}

pub fn classes(subject: &Subject) -> Result<Option<ShareClasses>, CliError> {
    match subject {
        Subject::Polygon(omega, desc) => Ok(Some(vertex_share_classes(omega, desc).map_err(structure_error)?)),
        Subject::Tile(..) => Ok(None),
    }
}

/// Assumes `check` already passed.
pub fn report(subject: &Subject, earthquake: Option<ZPoint>) -> Result<Report, CliError> {
    let (input, omega, desc) = match subject {
        Subject::Polygon(omega, desc) => ("polygon", Some(omega), desc),
        Subject::Tile(_, desc) => ("tile", None, desc),
    };
    let share = classes(subject)?;
    let sliding = match (omega, &share) {
        (Some(omega), Some(c)) => sliding_direction(omega, c).map_err(structure_error)?.map(Into::into),
        _ => None,
    };
    let plates = match earthquake {
        Some(v) => {
            let (family, scale) = plates(subject, v)?;
            Some(plates_json(&family, scale, v))
        }
        None => None,
    };
    Ok(Report {
        input,
        tiling: match desc {
            TilingDesc::Periodic { .. } => "periodic",
            TilingDesc::Sheared { .. } => "sheared",
        },
        classes: share.as_ref().map(classes_json),
        sliding_direction: sliding,
        plates,
        periodicity: periodicity_json(desc)?,
    })
}
