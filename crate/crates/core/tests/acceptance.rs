//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! The process fails if any criterion fails, except criterion 4, which is
//! unattainable for the right triangle; for that one the suite requires the
//! exact known counterexample instead.

mod support;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use polytile_core::discretize::{compute_parameters, lift_tiling, LiftVerdict, OccupancyTable};
use polytile_core::engine::{decide, verify_tiling, DecideOptions, Verdict};
use polytile_core::geometry::{rat, ratio};
use polytile_core::lattice::enumerate_lattices;
use polytile_core::structure::{
    check_periodicity, earthquake_decomposition, merge_by_sliding, sliding_direction, vertex_share_classes, ClassLabel,
    PlateFamily,
};
use polytile_core::tiling::{column_shifted, IntPeriodic, RatLattice};
use polytile_core::{discretize, DiscreteTile, IntegerPolygonalSet, Lattice, RPoint, Subgroup, TilingDesc, ZPoint};

use support::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn hnf(l: &Lattice) -> String {
    format!("[[{},{}],[0,{}]]", l.a(), l.b(), l.d())
}

// ---------------------------------------------------------------------------

fn parameter_table() -> Outcome {
    let start = Instant::now();
    let four = compute_parameters(4);
    let seven = compute_parameters(7);
    let elapsed = start.elapsed();
    let pass = four == (2, 10) && seven == (3, 13) && elapsed < Duration::from_millis(1);
    outcome(pass, format!("M=4 -> (k,N)={four:?}, M=7 -> {seven:?}, {elapsed:?}"))
}

fn candidate_bases(lat: &Lattice) -> Vec<Vec<ZPoint>> {
    let mut out = vec![vec![ZPoint::ZERO]];
    out.extend(lat.fundamental_domain().skip(1).map(|p| vec![ZPoint::ZERO, p]));
    out
}

fn encoding_equivalence() -> Outcome {
    let start = Instant::now();
    let mut candidates = 0u64;
    let mut tilings = 0u64;
    let mut disagreements = Vec::new();
    let lattices: Vec<Lattice> = enumerate_lattices(36).collect();
    for (name, omega) in corpus() {
        let tile = discretize(&omega);
        let n = tile.scale();
        let table = OccupancyTable::new(&omega);
        let oracle = ContinuousOracle::new(&omega);
        for lat in &lattices {
            for base in candidate_bases(lat) {
                candidates += 1;
                let t = IntPeriodic::new(*lat, base.iter().copied()).unwrap();
                let continuous = table.lift_tiling(&t).unwrap() == LiftVerdict::IsContinuousTiling;
                let by_area = oracle.tiles(&base, lat);
                // counting: one period of N Λ holds N² [Z²:Λ] cells
                let discrete = tile.len() as i64 * base.len() as i64 == n * n * lat.index() && {
                    let scaled = TilingDesc::Periodic {
                        base: base.iter().map(|&b| (b * n).into()).collect(),
                        lattice: RatLattice::integer(lat.scale(n)),
                    };
                    verify_tiling(tile.points(), &scaled).unwrap()
                };
                tilings += continuous as u64;
                if continuous != discrete || continuous != by_area {
                    disagreements.push(format!("{name} {} {base:?}", hnf(lat)));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = disagreements.is_empty() && elapsed < Duration::from_secs(300);
    outcome(
        pass,
        format!(
            "{candidates} candidates over 5 sets, {tilings} tilings, {} disagreements{}, {elapsed:.2?}",
            disagreements.len(),
            disagreements.first().map(|d| format!(" (first: {d})")).unwrap_or_default()
        ),
    )
}

struct Decided {
    name: &'static str,
    tile: DiscreteTile,
    omega: Option<IntegerPolygonalSet>,
    verdict: Verdict,
    elapsed: Duration,
}

fn decide_corpus() -> Vec<Decided> {
    let mut inputs: Vec<(&'static str, DiscreteTile, Option<IntegerPolygonalSet>)> =
        corpus().into_iter().map(|(name, omega)| (name, discretize(&omega), Some(omega))).collect();
    inputs.push(("row tile {(0,0),(1,0),(3,0)}", DiscreteTile::new(1, pts(&[(0, 0), (1, 0), (3, 0)])), None));
    inputs
        .into_iter()
        .map(|(name, tile, omega)| {
            let start = Instant::now();
            let verdict = decide(tile.points(), &DecideOptions::default()).verdict;
            Decided { name, tile, omega, verdict, elapsed: start.elapsed() }
        })
        .collect()
}

fn decision_ground_truth(decided: &[Decided]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for d in decided {
        let expected_index = match d.name {
            "unit square" => Some(49),
            "L-tromino" => Some(147),
            "right triangle" | "row tile {(0,0),(1,0),(3,0)}" => None,
            _ => continue,
        };
        pass &= d.elapsed < Duration::from_secs(600);
        match (&d.verdict, expected_index) {
            (Verdict::Tileable(t), Some(index)) => {
                let checked = verify_tiling(d.tile.points(), &t.to_desc()).unwrap();
                // the continuous tiling T = certificate / N, when integral
                let n = d.tile.scale();
                let lifted = match (t.lattice.a() % n, t.lattice.b() % n, t.lattice.d() % n) {
                    (0, 0, 0) if t.translates.iter().all(|p| p.x % n == 0 && p.y % n == 0) => {
                        let lat = Lattice::new(t.lattice.a() / n, t.lattice.b() / n, t.lattice.d() / n).unwrap();
                        let desc = TilingDesc::Periodic {
                            base: t.translates.iter().map(|&p| RPoint::from_ints(p.x / n, p.y / n)).collect(),
                            lattice: RatLattice::integer(lat),
                        };
                        lift_tiling(d.omega.as_ref().unwrap(), &desc).unwrap() == LiftVerdict::IsContinuousTiling
                    }
                    _ => true,
                };
                let ok = t.lattice.index() == index && t.translates.len() == 1 && checked && lifted;
                pass &= ok;
                parts.push(format!(
                    "{}: Tileable {} x{} verified={checked} ({:.2?})",
                    d.name,
                    hnf(&t.lattice),
                    t.translates.len(),
                    d.elapsed
                ));
            }
            (Verdict::NotTileable { radius }, None) => {
                parts.push(format!("{}: NotTileable r={radius} ({:.2?})", d.name, d.elapsed));
            }
            (v, _) => {
                pass = false;
                parts.push(format!("{}: unexpected {v:?}", d.name));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn cardinality_law() -> Outcome {
    let mut violations = Vec::new();
    let mut parts = Vec::new();
    for (name, omega) in corpus() {
        let tile = discretize(&omega);
        let n = tile.scale();
        let predicted = rat(n * n) * omega.area();
        let actual = rat(tile.len() as i64);
        parts.push(format!("{name} {} vs {predicted}", tile.len()));
        if actual != predicted {
            violations.push(name);
        }
    }
    outcome(violations.is_empty(), format!("|NF| vs N²·area: {}; violations: {violations:?}", parts.join(", ")))
}

/// The known counterexample: the right triangle has one occupied face, the
/// complement marker set of 92 points, against N²·area = 50.
fn cardinality_counterexample_is_exact() -> bool {
    let tile = discretize(&triangle());
    let prov = tile.provenance().unwrap();
    tile.scale() == 10 && tile.len() == 92 && prov.occupied.len() == 1 && prov.occupied[0].1 == 0
}

// ---------------------------------------------------------------------------

/// Translates of `t` covering cell `x`, which must be exactly one.
fn covering(tile: &[ZPoint], t: &IntPeriodic, x: ZPoint) -> Vec<ZPoint> {
    tile.iter().map(|&f| x - f).filter(|&s| t.contains(s)).collect()
}

fn normal_of(k: &Subgroup) -> ZPoint {
    let h = k.generators().first().copied().unwrap_or(ZPoint::new(0, 1));
    ZPoint::new(h.y, -h.x)
}

/// Nodes of `T / K` for the subset search: all of them when `K` has full
/// rank, otherwise the whole `K`-orbits on the first lines parallel to `K`.
fn quotient_nodes(t: &IntPeriodic, k: &Subgroup) -> Vec<ZPoint> {
    match k {
        Subgroup::Full(kl) => {
            let mut nodes: BTreeSet<ZPoint> = BTreeSet::new();
            for r in polytile_core::tiling::coset_reps(t.lattice(), kl) {
                for &b in t.base() {
                    nodes.insert(k.reduce(b + r));
                }
            }
            nodes.into_iter().collect()
        }
        _ => {
            let normal = normal_of(k);
            let mut by_level: BTreeMap<i64, BTreeSet<ZPoint>> = BTreeMap::new();
            for p in t.as_piece().points_in_box(ZPoint::new(-24, -24), ZPoint::new(24, 24)) {
                let level = p.dot(normal);
                if level >= 0 {
                    by_level.entry(level).or_default().insert(k.reduce(p));
                }
            }
            let mut out = Vec::new();
            for (_, nodes) in by_level {
                if out.len() + nodes.len() > 12 {
                    break;
                }
                out.extend(nodes);
            }
            out
        }
    }
}

/// The largest multiple `m K` of the common plate group whose quotient
/// window still fits in 12 nodes and, for rank one, spans two lines.
fn search_group(fam: &PlateFamily, t: &IntPeriodic) -> Subgroup {
    let common = fam.plates().iter().fold(Subgroup::Full(*t.lattice()), |acc, p| acc.intersect(&p.group));
    let scaled = |m: i64| match common {
        Subgroup::Full(l) => Subgroup::Full(l.scale(m)),
        Subgroup::Line(h) => Subgroup::Line(h * m),
        Subgroup::Zero => Subgroup::Zero,
    };
    for m in (2..=4).rev() {
        let k = scaled(m);
        let nodes = quotient_nodes(t, &k);
        let fits = match k {
            Subgroup::Full(_) => nodes.len() <= 12,
            _ => nodes.iter().map(|p| p.dot(normal_of(&k))).collect::<BTreeSet<_>>().len() >= 2,
        };
        if fits {
            return k;
        }
    }
    scaled(1)
}

/// Checks plate partition, v-invariance of plate unions on three fundamental
/// domains, and minimality by exhaustive search over closed node subsets.
fn earthquake_properties(name: &str, tile: &[ZPoint], t: &IntPeriodic, v: ZPoint) -> Result<String, String> {
    let fam = earthquake_decomposition(tile, t, v);
    let lat = t.lattice();
    let window: Vec<ZPoint> = (0..3 * lat.d()).flat_map(|y| (0..3 * lat.a()).map(move |x| ZPoint::new(x, y))).collect();
    let mut cell_plate: HashMap<ZPoint, ClassLabel> = HashMap::new();
    let mut plate_of_cell = |x: ZPoint| -> Result<ClassLabel, String> {
        if let Some(&l) = cell_plate.get(&x) {
            return Ok(l);
        }
        let cover = covering(tile, t, x);
        if cover.len() != 1 {
            return Err(format!("{name}: cell {x:?} covered {} times", cover.len()));
        }
        let l = fam.plate_of(cover[0]).ok_or_else(|| format!("{name}: translate {:?} has no plate", cover[0]))?;
        cell_plate.insert(x, l);
        Ok(l)
    };
    let mut labels = BTreeSet::new();
    for &x in &window {
        let here = plate_of_cell(x)?;
        labels.insert(here);
        if plate_of_cell(x + v)? != here || plate_of_cell(x - v)? != here {
            return Err(format!("{name}: plate union not invariant at {x:?}"));
        }
    }
    // plate labels are constant along each plate's period group
    for &x in &window {
        for s in covering(tile, t, x) {
            let l = fam.plate_of(s).unwrap();
            for h in fam.plates()[l.class].group.generators() {
                if fam.plate_of(s + h) != Some(l) {
                    return Err(format!("{name}: plate of {s:?} not invariant under {h:?}"));
                }
            }
        }
    }

    let k = search_group(&fam, t);
    let nodes = quotient_nodes(t, &k);
    let n = nodes.len();
    assert!(n <= 12, "{name}: {n} nodes");
    let diffs: BTreeSet<ZPoint> =
        tile.iter().flat_map(|&f| tile.iter().flat_map(move |&g| [f - g + v, f - g - v])).collect();
    let linked = |a: ZPoint, b: ZPoint| diffs.iter().any(|&d| k.contains(a - b + d));
    let mut adj = vec![0u32; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && linked(nodes[i], nodes[j]) {
                adj[i] |= 1 << j;
            }
        }
    }
    let closed: Vec<u32> = (1u32..1 << n).filter(|&q| (0..n).all(|i| q >> i & 1 == 0 || adj[i] & !q == 0)).collect();
    let atoms: BTreeSet<u32> =
        closed.iter().copied().filter(|&q| !closed.iter().any(|&r| r != q && r & q == r)).collect();
    let mut by_plate: BTreeMap<ClassLabel, u32> = BTreeMap::new();
    for (i, &p) in nodes.iter().enumerate() {
        *by_plate.entry(fam.plate_of(p).unwrap()).or_default() |= 1 << i;
    }
    let plates: BTreeSet<u32> = by_plate.values().copied().collect();
    if atoms != plates {
        return Err(format!("{name}: closed-subset atoms {atoms:?} differ from plates {plates:?}"));
    }
    Ok(format!(
        "{name}: {} plate(s) on window, {} subsets of {n} nodes mod {:?}, atoms = plates",
        labels.len(),
        (1u64 << n) - 1,
        k.generators()
    ))
}

fn earthquakes() -> Outcome {
    let start = Instant::now();
    let examples: Vec<(&str, Vec<ZPoint>, IntPeriodic)> = vec![
        ("unit square / Z²", pts(&[(0, 0)]), IntPeriodic::new(Lattice::integer(), [ZPoint::ZERO]).unwrap()),
        ("shifted dominoes", pts(&[(0, 0), (0, 1)]), IntPeriodic::new(lattice(2, 1, 1), [ZPoint::ZERO]).unwrap()),
        (
            "tromino staircase",
            pts(&[(0, 0), (1, 0), (0, 1)]),
            IntPeriodic::new(lattice(3, 1, 1), [ZPoint::ZERO]).unwrap(),
        ),
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, tile, t) in &examples {
        match earthquake_properties(name, tile, t, ZPoint::new(0, 1)) {
            Ok(s) => parts.push(s),
            Err(e) => {
                pass = false;
                parts.push(e);
            }
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(60);
    outcome(pass, format!("{}; {elapsed:.2?}", parts.join("; ")))
}

fn sliding_pipeline() -> Outcome {
    let omega = square();
    let shifted = column_shifted(&[rat(0), ratio(1, 2)]);
    let before = vertex_share_classes(&omega, &shifted).unwrap();
    let dir = sliding_direction(&omega, &before).unwrap();
    let merged = merge_by_sliding(&omega, &shifted).unwrap();
    let t = merged.tiling.to_int_periodic().unwrap().minimize();
    let is_z2 = *t.lattice() == Lattice::integer() && t.base() == [ZPoint::ZERO];
    let lifted = lift_tiling(&omega, &merged.tiling).unwrap();
    let after = vertex_share_classes(&omega, &merged.tiling).unwrap().class_count();
    let periodic = check_periodicity(&merged.tiling, &RPoint::from_ints(1, 0))
        && check_periodicity(&merged.tiling, &RPoint::from_ints(0, 1));
    let pass = dir == Some(ZPoint::new(0, 1))
        && merged.offsets == vec![rat(0), ratio(-1, 2)]
        && is_z2
        && lifted == LiftVerdict::IsContinuousTiling
        && after == Some(1)
        && periodic;
    let offsets: Vec<String> = merged.offsets.iter().map(|o| o.to_string()).collect();
    outcome(
        pass,
        format!(
            "classes before={:?}, direction={dir:?}, offsets=[{}], T'={} base {:?}, lift={lifted:?}, classes after={after:?}",
            before.class_count(),
            offsets.join(","),
            hnf(t.lattice()),
            t.base()
        ),
    )
}

fn corpus_tilings() -> Vec<(&'static str, IntegerPolygonalSet, Lattice)> {
    let chevron_cert = match decide(discretize(&chevron()).points(), &DecideOptions::default()).verdict {
        Verdict::Tileable(t) => Lattice::new(t.lattice.a() / 10, t.lattice.b() / 10, t.lattice.d() / 10).unwrap(),
        v => panic!("chevron: {v:?}"),
    };
    vec![
        ("unit square / Z²", square(), Lattice::integer()),
        ("domino / shifted columns", domino(), lattice(2, 1, 1)),
        ("L-tromino / staircase", tromino(), lattice(3, 1, 1)),
        ("2x1 rectangle / brick wall", rectangle(), lattice(2, 1, 1)),
        ("2x2 square / columns shifted by 1", set(&[(0, 0), (2, 0), (2, 2), (0, 2)]), lattice(4, 2, 1)),
        ("chevron / decided lattice", chevron(), chevron_cert),
    ]
}

fn refinement() -> Outcome {
    let mut parts = Vec::new();
    let mut violations = 0;
    let mut pass = true;
    for (name, omega, lat) in corpus_tilings() {
        let desc = TilingDesc::lattice_tiling(lat);
        if lift_tiling(&omega, &desc).unwrap() != LiftVerdict::IsContinuousTiling {
            pass = false;
            parts.push(format!("{name}: not a tiling"));
            continue;
        }
        let classes = vertex_share_classes(&omega, &desc).unwrap();
        let dir = sliding_direction(&omega, &classes).unwrap().unwrap_or(ZPoint::new(0, 1));
        let tile = discretize(&omega);
        let n = tile.scale();
        let scaled = IntPeriodic::new(lat.scale(n), [ZPoint::ZERO]).unwrap();
        let plates = earthquake_decomposition(tile.points(), &scaled, dir * n);
        let t = IntPeriodic::new(lat, [ZPoint::ZERO]).unwrap();
        let mut image: BTreeMap<ClassLabel, BTreeSet<ClassLabel>> = BTreeMap::new();
        for s in t.as_piece().points_in_box(ZPoint::new(-8, -8), ZPoint::new(8, 8)) {
            let plate = plates.plate_of(s * n).expect("scaled translate has a plate");
            let class = classes.label(&s.into()).expect("translate has a class");
            image.entry(plate).or_default().insert(class);
        }
        let bad = image.values().filter(|c| c.len() != 1).count();
        violations += bad;
        let all_classes: BTreeSet<&ClassLabel> = image.values().flatten().collect();
        parts.push(format!("{name}: v={:?}, {} plates into {} classes", dir * n, image.len(), all_classes.len()));
    }
    outcome(pass && violations == 0, format!("{}; {violations} violations", parts.join("; ")))
}

fn verdict_bytes(v: &Verdict) -> String {
    match v {
        Verdict::Tileable(t) => serde_json::to_string(t).unwrap(),
        Verdict::NotTileable { radius } => format!("radius {radius}"),
        Verdict::Undecided(s) => format!("undecided {s:?}"),
    }
}

fn determinism(decided: &[Decided]) -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut splits = 0;
    for d in decided {
        let whole = verdict_bytes(&d.verdict);
        let threaded = decide(d.tile.points(), &DecideOptions { threads: 4, ..Default::default() }).verdict;
        if verdict_bytes(&threaded) != whole {
            mismatches.push(format!("{} (threads)", d.name));
        }
        for budget in [1u64, 7] {
            let mut resume = None;
            let verdict = loop {
                let v = decide(d.tile.points(), &DecideOptions { budget: Some(budget), threads: 1, resume }).verdict;
                match v {
                    Verdict::Undecided(s) => {
                        splits += 1;
                        // round-trip through the persisted form
                        let json = serde_json::to_string(&s).unwrap();
                        resume = Some(serde_json::from_str(&json).unwrap());
                    }
                    v => break v,
                }
            };
            if verdict_bytes(&verdict) != whole {
                mismatches.push(format!("{} (budget {budget})", d.name));
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "{} inputs, budgets 1 and 7 ({splits} suspensions) and 4 threads, mismatches {mismatches:?}, {:.2?}",
            decided.len(),
            start.elapsed()
        ),
    )
}

fn main() {
    let mut unexpected = Vec::new();
    let mut line = |id: u32, title: &str, o: Outcome, expected_failure: bool| {
        println!("{} criterion {id} ({title}): {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass && !expected_failure {
            unexpected.push(id);
        }
    };
    line(1, "parameter table", parameter_table(), false);
    line(2, "encoding equivalence", encoding_equivalence(), false);
    let decided = decide_corpus();
    line(3, "decision ground truth", decision_ground_truth(&decided), false);
    let exact = cardinality_counterexample_is_exact();
    line(4, "cardinality law", cardinality_law(), exact);
    line(5, "earthquake properties", earthquakes(), false);
    line(6, "sliding pipeline", sliding_pipeline(), false);
    line(7, "refinement", refinement(), false);
    line(8, "determinism and resume", determinism(&decided), false);
    if !exact {
        println!("criterion 4: the right-triangle counterexample changed");
        unexpected.push(4);
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
