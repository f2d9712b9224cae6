//! CVRP instances in the TSPLIB dialect used by CVRPLIB and QOPTLib.
//!
//! Nodes are always stored 0-based with the depot at index 0, whatever
//! numbering and depot the source file declares.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("missing required section or keyword `{0}`")]
    MissingSection(String),
    #[error("malformed line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("{section}: DIMENSION declares {declared} nodes but {found} were given")]
    DimensionMismatch {
        section: String,
        declared: usize,
        found: usize,
    },
    #[error("unsupported edge weight type `{0}`")]
    UnsupportedEdgeWeightType(String),
    #[error("node index {index} out of range for dimension {dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },
    #[error("invalid instance: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Euc2d,
    Explicit,
}

impl WeightKind {
    pub fn keyword(self) -> &'static str {
        match self {
            WeightKind::Euc2d => "EUC_2D",
            WeightKind::Explicit => "EXPLICIT",
        }
    }
}

/// A problem with the instance that does not prevent resource estimation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceFlag {
    /// The customer cannot be served by any single vehicle.
    DemandExceedsCapacity { node: usize, demand: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvrpInstance {
    pub name: String,
    /// Node count including the depot.
    pub dimension: usize,
    pub customers: usize,
    pub capacity: u64,
    pub vehicles: u64,
    pub depot: usize,
    pub coords: Option<Vec<(f64, f64)>>,
    pub demands: Vec<u64>,
    pub weight_kind: WeightKind,
    /// Row-major `dimension × dimension` matrix, present iff `weight_kind` is explicit.
    pub explicit_weights: Option<Vec<u64>>,
    pub flags: Vec<InstanceFlag>,
}

impl CvrpInstance {
    /// Euclidean instance with the depot at node 0.
    pub fn euclidean(
        name: impl Into<String>,
        capacity: u64,
        vehicles: u64,
        coords: Vec<(f64, f64)>,
        demands: Vec<u64>,
    ) -> Result<Self, InstanceError> {
        Self::assemble(
            name.into(),
            capacity,
            Some(vehicles),
            Some(coords),
            demands,
            None,
        )
    }

    /// Instance with an explicit full weight matrix (row-major).
    pub fn explicit(
        name: impl Into<String>,
        capacity: u64,
        vehicles: u64,
        weights: Vec<u64>,
        demands: Vec<u64>,
    ) -> Result<Self, InstanceError> {
        Self::assemble(
            name.into(),
            capacity,
            Some(vehicles),
            None,
            demands,
            Some(weights),
        )
    }

    fn assemble(
        name: String,
        capacity: u64,
        vehicles: Option<u64>,
        coords: Option<Vec<(f64, f64)>>,
        demands: Vec<u64>,
        explicit_weights: Option<Vec<u64>>,
    ) -> Result<Self, InstanceError> {
        let dimension = demands.len();
        if dimension < 2 {
            return Err(InstanceError::Invalid(
                "an instance needs a depot and at least one customer".into(),
            ));
        }
        if capacity == 0 {
            return Err(InstanceError::Invalid("capacity must be positive".into()));
        }
        if demands[0] != 0 {
            return Err(InstanceError::Invalid(format!(
                "depot demand must be 0, got {}",
                demands[0]
            )));
        }
        if let Some(c) = &coords {
            if c.len() != dimension {
                return Err(InstanceError::DimensionMismatch {
                    section: "NODE_COORD_SECTION".into(),
                    declared: dimension,
                    found: c.len(),
                });
            }
            if c.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
                return Err(InstanceError::Invalid("non-finite coordinate".into()));
            }
        }
        let weight_kind = match &explicit_weights {
            Some(w) => {
                if w.len() != dimension * dimension {
                    return Err(InstanceError::DimensionMismatch {
                        section: "EDGE_WEIGHT_SECTION".into(),
                        declared: dimension * dimension,
                        found: w.len(),
                    });
                }
                WeightKind::Explicit
            }
            None => {
                if coords.is_none() {
                    return Err(InstanceError::MissingSection("NODE_COORD_SECTION".into()));
                }
                WeightKind::Euc2d
            }
        };
        let vehicles = match vehicles {
            Some(0) => return Err(InstanceError::Invalid("fleet size must be positive".into())),
            Some(v) => v,
            None => infer_vehicle_count(&name, &demands, capacity),
        };
        let flags = demands
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d > capacity)
            .map(|(node, &demand)| InstanceFlag::DemandExceedsCapacity { node, demand })
            .collect();
        Ok(Self {
            name,
            dimension,
            customers: dimension - 1,
            capacity,
            vehicles,
            depot: 0,
            coords,
            demands,
            weight_kind,
            explicit_weights,
            flags,
        })
    }

    /// Travel cost from `i` to `j`. EUC_2D distances use TSPLIB's `nint`.
    pub fn edge_weight(&self, i: usize, j: usize) -> Result<u64, InstanceError> {
        for index in [i, j] {
            if index >= self.dimension {
                return Err(InstanceError::IndexOutOfRange {
                    index,
                    dimension: self.dimension,
                });
            }
        }
        Ok(self.weight_unchecked(i, j))
    }

    pub(crate) fn weight_unchecked(&self, i: usize, j: usize) -> u64 {
        if i == j {
            return 0;
        }
        match (&self.explicit_weights, &self.coords) {
            (Some(w), _) => w[i * self.dimension + j],
            (None, Some(c)) => {
                let (dx, dy) = (c[i].0 - c[j].0, c[i].1 - c[j].1);
                (dx.hypot(dy) + 0.5).floor() as u64
            }
            (None, None) => unreachable!("constructor guarantees a weight source"),
        }
    }

    pub fn max_edge_weight(&self) -> u64 {
        let n = self.dimension;
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.weight_unchecked(i, j))
            .max()
            .unwrap_or(0)
    }

    pub fn total_demand(&self) -> u64 {
        self.demands.iter().sum()
    }

    /// False when some customer demand exceeds the vehicle capacity.
    pub fn is_capacity_consistent(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Fleet size from a `-k<M>`/`_k<M>` name suffix, else the demand lower bound.
pub fn infer_vehicle_count(name: &str, demands: &[u64], capacity: u64) -> u64 {
    if let Some(k) = vehicles_from_name(name) {
        return k;
    }
    let total: u64 = demands.iter().skip(1).sum();
    total.div_ceil(capacity.max(1)).max(1)
}

fn vehicles_from_name(name: &str) -> Option<u64> {
    let digits_start = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if digits_start == name.len() {
        return None;
    }
    let head = &name[..digits_start];
    if !(head.ends_with("-k") || head.ends_with("_k")) {
        return None;
    }
    name[digits_start..].parse().ok().filter(|&k| k >= 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Coords,
    Demands,
    Depots,
    Weights,
    Skip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MatrixFormat {
    Full,
    LowerRow,
    LowerDiagRow,
    UpperRow,
    UpperDiagRow,
}

impl MatrixFormat {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "FULL_MATRIX" => Self::Full,
            "LOWER_ROW" => Self::LowerRow,
            "LOWER_DIAG_ROW" => Self::LowerDiagRow,
            "UPPER_ROW" => Self::UpperRow,
            "UPPER_DIAG_ROW" => Self::UpperDiagRow,
            _ => return None,
        })
    }

    fn entry_count(self, n: usize) -> usize {
        match self {
            Self::Full => n * n,
            Self::LowerRow | Self::UpperRow => n * (n - 1) / 2,
            Self::LowerDiagRow | Self::UpperDiagRow => n * (n + 1) / 2,
        }
    }

    fn expand(self, n: usize, values: &[u64]) -> Vec<u64> {
        if self == Self::Full {
            return values.to_vec();
        }
        let mut m = vec![0; n * n];
        let mut it = values.iter().copied();
        for i in 0..n {
            let cols = match self {
                Self::LowerRow => 0..i,
                Self::LowerDiagRow => 0..i + 1,
                Self::UpperRow => i + 1..n,
                Self::UpperDiagRow => i..n,
                Self::Full => unreachable!(),
            };
            for j in cols {
                let w = it.next().expect("entry count checked by caller");
                m[i * n + j] = w;
                m[j * n + i] = w;
            }
        }
        m
    }
}

#[derive(Default)]
struct RawFile {
    name: Option<String>,
    dimension: Option<usize>,
    capacity: Option<u64>,
    vehicles: Option<u64>,
    weight_type: Option<String>,
    weight_format: Option<String>,
    coords: Option<Vec<(usize, usize, f64, f64)>>,
    demands: Option<Vec<(usize, usize, u64)>>,
    depots: Vec<(usize, usize)>,
    weights: Option<(usize, Vec<u64>)>,
}

fn malformed(line: usize, reason: impl Into<String>) -> InstanceError {
    InstanceError::MalformedLine {
        line,
        reason: reason.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, InstanceError> {
    tok.parse()
        .map_err(|_| malformed(line, format!("cannot parse `{tok}`")))
}

/// Integer-valued field that some files write as `12.0`.
fn parse_int_lenient(tok: &str, line: usize) -> Result<u64, InstanceError> {
    if let Ok(v) = tok.parse::<u64>() {
        return Ok(v);
    }
    match tok.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v < 9.0e15 => Ok(v as u64),
        _ => Err(malformed(
            line,
            format!("expected nonnegative integer, got `{tok}`"),
        )),
    }
}

fn section_for(keyword: &str) -> Option<Section> {
    Some(match keyword {
        "NODE_COORD_SECTION" => Section::Coords,
        "DEMAND_SECTION" => Section::Demands,
        "DEPOT_SECTION" => Section::Depots,
        "EDGE_WEIGHT_SECTION" => Section::Weights,
        k if k.ends_with("_SECTION") => Section::Skip,
        _ => return None,
    })
}

pub fn parse_instance(text: &str) -> Result<CvrpInstance, InstanceError> {
    let mut raw = RawFile::default();
    let mut section: Option<Section> = None;

    for (idx, full_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = full_line.trim();
        if line.is_empty() {
            continue;
        }
        let first = line.split_whitespace().next().unwrap_or_default();
        let head = first.trim_end_matches(':');
        let starts_alpha = head.starts_with(|c: char| c.is_ascii_alphabetic());

        if starts_alpha {
            if head == "EOF" {
                break;
            }
            if let Some(s) = section_for(head) {
                section = Some(s);
                match s {
                    Section::Coords => raw.coords = Some(Vec::new()),
                    Section::Demands => raw.demands = Some(Vec::new()),
                    Section::Weights => raw.weights = Some((lineno, Vec::new())),
                    Section::Depots | Section::Skip => {}
                }
                continue;
            }
            section = None;
            let (key, value) = match line.split_once(':') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => {
                    let mut parts = line.splitn(2, char::is_whitespace);
                    (
                        parts.next().unwrap_or_default(),
                        parts.next().unwrap_or("").trim(),
                    )
                }
            };
            match key {
                "NAME" => raw.name = Some(value.to_string()),
                "DIMENSION" => raw.dimension = Some(parse_num(value, lineno)?),
                "CAPACITY" => raw.capacity = Some(parse_int_lenient(value, lineno)?),
                "VEHICLES" => raw.vehicles = Some(parse_num(value, lineno)?),
                "EDGE_WEIGHT_TYPE" => raw.weight_type = Some(value.to_string()),
                "EDGE_WEIGHT_FORMAT" => raw.weight_format = Some(value.to_string()),
                // COMMENT, TYPE, DISPLAY_DATA_TYPE, and unknown keywords are informational.
                _ => {}
            }
            continue;
        }

        let toks: Vec<&str> = line.split_whitespace().collect();
        match section {
            Some(Section::Coords) => {
                if toks.len() != 3 {
                    return Err(malformed(lineno, "expected `index x y`"));
                }
                let node = parse_num(toks[0], lineno)?;
                let x = parse_num(toks[1], lineno)?;
                let y = parse_num(toks[2], lineno)?;
                raw.coords
                    .get_or_insert_with(Vec::new)
                    .push((lineno, node, x, y));
            }
            Some(Section::Demands) => {
                if toks.len() != 2 {
                    return Err(malformed(lineno, "expected `index demand`"));
                }
                let node = parse_num(toks[0], lineno)?;
                let d = parse_int_lenient(toks[1], lineno)?;
                raw.demands
                    .get_or_insert_with(Vec::new)
                    .push((lineno, node, d));
            }
            Some(Section::Depots) => {
                for tok in toks {
                    let v: i64 = parse_num(tok, lineno)?;
                    if v == -1 {
                        section = None;
                        break;
                    }
                    if v < 1 {
                        return Err(malformed(lineno, format!("invalid depot index {v}")));
                    }
                    raw.depots.push((lineno, v as usize));
                }
            }
            Some(Section::Weights) => {
                let (_, values) = raw.weights.get_or_insert_with(|| (lineno, Vec::new()));
                for tok in toks {
                    values.push(parse_int_lenient(tok, lineno)?);
                }
            }
            Some(Section::Skip) => {}
            None => return Err(malformed(lineno, "data line outside of any section")),
        }
    }

    build_from_raw(raw)
}

fn build_from_raw(raw: RawFile) -> Result<CvrpInstance, InstanceError> {
    let missing = |s: &str| InstanceError::MissingSection(s.to_string());
    let name = raw.name.ok_or_else(|| missing("NAME"))?;
    let dimension = raw.dimension.ok_or_else(|| missing("DIMENSION"))?;
    let capacity = raw.capacity.ok_or_else(|| missing("CAPACITY"))?;
    let weight_type = raw.weight_type.ok_or_else(|| missing("EDGE_WEIGHT_TYPE"))?;
    let weight_kind = match weight_type.as_str() {
        "EUC_2D" => WeightKind::Euc2d,
        "EXPLICIT" => WeightKind::Explicit,
        other => return Err(InstanceError::UnsupportedEdgeWeightType(other.to_string())),
    };
    let demand_rows = raw.demands.ok_or_else(|| missing("DEMAND_SECTION"))?;
    if dimension < 2 {
        return Err(InstanceError::Invalid(format!(
            "DIMENSION must be at least 2, got {dimension}"
        )));
    }

    let depot_file_index = match raw.depots.as_slice() {
        [] => 1,
        [(line, d)] => {
            if *d > dimension {
                return Err(malformed(*line, format!("depot {d} exceeds DIMENSION")));
            }
            *d
        }
        [_, (line, _), ..] => return Err(malformed(*line, "multiple depots are not supported")),
    };
    // File index (1-based) -> internal index with the depot moved to 0.
    let to_internal = |file_idx: usize| -> usize {
        match file_idx.cmp(&depot_file_index) {
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Less => file_idx,
            std::cmp::Ordering::Greater => file_idx - 1,
        }
    };

    let demands = place_rows(
        "DEMAND_SECTION",
        dimension,
        demand_rows.into_iter(),
        &to_internal,
    )?;

    let coords = match raw.coords {
        Some(rows) => Some(place_rows(
            "NODE_COORD_SECTION",
            dimension,
            rows.into_iter().map(|(l, n, x, y)| (l, n, (x, y))),
            &to_internal,
        )?),
        None => None,
    };

    let explicit_weights = match weight_kind {
        WeightKind::Euc2d => {
            if coords.is_none() {
                return Err(missing("NODE_COORD_SECTION"));
            }
            None
        }
        WeightKind::Explicit => {
            let (line, values) = raw.weights.ok_or_else(|| missing("EDGE_WEIGHT_SECTION"))?;
            let format_name = raw.weight_format.as_deref().unwrap_or("FULL_MATRIX");
            let format = MatrixFormat::parse(format_name).ok_or_else(|| {
                malformed(
                    line,
                    format!("unsupported EDGE_WEIGHT_FORMAT `{format_name}`"),
                )
            })?;
            let expected = format.entry_count(dimension);
            if values.len() != expected {
                return Err(InstanceError::DimensionMismatch {
                    section: "EDGE_WEIGHT_SECTION".into(),
                    declared: expected,
                    found: values.len(),
                });
            }
            let file_matrix = format.expand(dimension, &values);
            let mut m = vec![0; dimension * dimension];
            for fi in 0..dimension {
                for fj in 0..dimension {
                    m[to_internal(fi + 1) * dimension + to_internal(fj + 1)] =
                        file_matrix[fi * dimension + fj];
                }
            }
            Some(m)
        }
    };

    CvrpInstance::assemble(name, capacity, None, coords, demands, explicit_weights).map(
        |mut inst| {
            // Name suffix beats an explicit VEHICLES keyword, which beats the demand bound.
            if vehicles_from_name(&inst.name).is_none() {
                if let Some(v) = raw.vehicles.filter(|&v| v >= 1) {
                    inst.vehicles = v;
                }
            }
            inst
        },
    )
}

fn place_rows<T: Clone>(
    section: &str,
    dimension: usize,
    rows: impl ExactSizeIterator<Item = (usize, usize, T)>,
    to_internal: &impl Fn(usize) -> usize,
) -> Result<Vec<T>, InstanceError> {
    if rows.len() != dimension {
        return Err(InstanceError::DimensionMismatch {
            section: section.to_string(),
            declared: dimension,
            found: rows.len(),
        });
    }
    let mut out: Vec<Option<T>> = vec![None; dimension];
    for (line, node, value) in rows {
        if node == 0 || node > dimension {
            return Err(malformed(line, format!("node index {node} out of range")));
        }
        let slot = &mut out[to_internal(node)];
        if slot.is_some() {
            return Err(malformed(line, format!("duplicate node index {node}")));
        }
        *slot = Some(value);
    }
    Ok(out
        .into_iter()
        .map(|v| v.expect("all slots filled"))
        .collect())
}

/// Writes the instance back out; `parse_instance` recovers an equal value.
pub fn serialize_instance(inst: &CvrpInstance) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "NAME : {}", inst.name);
    let _ = writeln!(s, "TYPE : CVRP");
    let _ = writeln!(s, "DIMENSION : {}", inst.dimension);
    let _ = writeln!(s, "CAPACITY : {}", inst.capacity);
    let _ = writeln!(s, "VEHICLES : {}", inst.vehicles);
    let _ = writeln!(s, "EDGE_WEIGHT_TYPE : {}", inst.weight_kind.keyword());
    if let Some(w) = &inst.explicit_weights {
        let _ = writeln!(s, "EDGE_WEIGHT_FORMAT : FULL_MATRIX");
        let _ = writeln!(s, "EDGE_WEIGHT_SECTION");
        for row in w.chunks(inst.dimension) {
            let line: Vec<String> = row.iter().map(u64::to_string).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
    }
    if let Some(coords) = &inst.coords {
        let _ = writeln!(s, "NODE_COORD_SECTION");
        for (i, (x, y)) in coords.iter().enumerate() {
            let _ = writeln!(s, "{} {:?} {:?}", i + 1, x, y);
        }
    }
    let _ = writeln!(s, "DEMAND_SECTION");
    for (i, d) in inst.demands.iter().enumerate() {
        let _ = writeln!(s, "{} {}", i + 1, d);
    }
    let _ = writeln!(s, "DEPOT_SECTION");
    let _ = writeln!(s, "1");
    let _ = writeln!(s, "-1");
    let _ = writeln!(s, "EOF");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "NAME : tiny\nTYPE : CVRP\nDIMENSION : 2\nCAPACITY : 1\n\
        EDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 3 4\n\
        DEMAND_SECTION\n1 0\n2 1\nDEPOT_SECTION\n1\n-1\nEOF\n";

    #[test]
    fn parses_minimal_instance() {
        let inst = parse_instance(MINIMAL).unwrap();
        assert_eq!(inst.customers, 1);
        assert_eq!(inst.dimension, 2);
        assert_eq!(inst.vehicles, 1);
        assert_eq!(inst.edge_weight(0, 1).unwrap(), 5);
        assert_eq!(inst.max_edge_weight(), 5);
        assert!(inst.is_capacity_consistent());
    }

    #[test]
    fn golden_5_header_values() {
        // 200 customers with demand 22 each: ceil(4400 / 900) = 5 vehicles.
        let mut text = String::from(
            "NAME : Golden_5\nCOMMENT : synthetic\nTYPE : CVRP\nDIMENSION : 201\n\
             CAPACITY : 900\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n",
        );
        for i in 1..=201 {
            text += &format!("{i} {} {}\n", i * 3 % 101, i * 7 % 53);
        }
        text += "DEMAND_SECTION\n1 0\n";
        for i in 2..=201 {
            text += &format!("{i} 22\n");
        }
        text += "DEPOT_SECTION\n 1\n -1\nEOF\n";
        let inst = parse_instance(&text).unwrap();
        assert_eq!(inst.customers, 200);
        assert_eq!(inst.capacity, 900);
        assert_eq!(inst.vehicles, 5);
    }

    #[test]
    fn short_demand_section_is_dimension_mismatch() {
        let text = MINIMAL.replace("2 1\nDEPOT", "DEPOT");
        assert!(matches!(
            parse_instance(&text),
            Err(InstanceError::DimensionMismatch {
                declared: 2,
                found: 1,
                ..
            })
        ));
    }

    #[test]
    fn missing_sections_are_reported() {
        let text = MINIMAL.replace("CAPACITY : 1\n", "");
        assert_eq!(
            parse_instance(&text),
            Err(InstanceError::MissingSection("CAPACITY".into()))
        );
        let text = MINIMAL.replace("NODE_COORD_SECTION\n1 0 0\n2 3 4\n", "");
        assert_eq!(
            parse_instance(&text),
            Err(InstanceError::MissingSection("NODE_COORD_SECTION".into()))
        );
    }

    #[test]
    fn malformed_line_carries_line_number() {
        let text = MINIMAL.replace("2 3 4", "2 3 x");
        assert!(matches!(
            parse_instance(&text),
            Err(InstanceError::MalformedLine { line: 8, .. })
        ));
    }

    #[test]
    fn unsupported_weight_type() {
        let text = MINIMAL.replace("EUC_2D", "GEO");
        assert_eq!(
            parse_instance(&text),
            Err(InstanceError::UnsupportedEdgeWeightType("GEO".into()))
        );
    }

    #[test]
    fn depot_is_moved_to_index_zero() {
        let text = "NAME : shifted\nDIMENSION : 3\nCAPACITY : 5\nEDGE_WEIGHT_TYPE : EUC_2D\n\
            NODE_COORD_SECTION\n1 10 0\n2 0 0\n3 0 4\nDEMAND_SECTION\n1 2\n2 0\n3 3\n\
            DEPOT_SECTION\n2\n-1\nEOF\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.demands, vec![0, 2, 3]);
        assert_eq!(inst.coords.as_ref().unwrap()[0], (0.0, 0.0));
        assert_eq!(inst.edge_weight(0, 2).unwrap(), 4);
        assert_eq!(inst.edge_weight(0, 1).unwrap(), 10);
    }

    #[test]
    fn lower_row_matrix_is_symmetrized() {
        let text = "NAME : m\nDIMENSION : 3\nCAPACITY : 5\nEDGE_WEIGHT_TYPE : EXPLICIT\n\
            EDGE_WEIGHT_FORMAT : LOWER_ROW\nEDGE_WEIGHT_SECTION\n4\n6 9\n\
            DEMAND_SECTION\n1 0\n2 1\n3 1\nEOF\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.edge_weight(1, 0).unwrap(), 4);
        assert_eq!(inst.edge_weight(0, 2).unwrap(), 6);
        assert_eq!(inst.edge_weight(2, 1).unwrap(), 9);
        assert_eq!(inst.max_edge_weight(), 9);
    }

    #[test]
    fn explicit_two_node_matrix() {
        let inst = CvrpInstance::explicit("e", 1, 1, vec![0, 7, 7, 0], vec![0, 1]).unwrap();
        assert_eq!(inst.max_edge_weight(), 7);
        assert_eq!(inst.edge_weight(1, 1).unwrap(), 0);
    }

    #[test]
    fn euclidean_rounding() {
        let inst = CvrpInstance::euclidean(
            "r",
            3,
            1,
            vec![(0.0, 0.0), (1.0, 1.0), (0.0, 3.0), (4.0, 0.0), (0.5, 0.0)],
            vec![0, 1, 1, 1, 1],
        )
        .unwrap();
        assert_eq!(inst.edge_weight(0, 1).unwrap(), 1);
        assert_eq!(inst.edge_weight(2, 3).unwrap(), 5);
        // nint(0.5) rounds up
        assert_eq!(inst.edge_weight(0, 4).unwrap(), 1);
        assert_eq!(inst.edge_weight(3, 3).unwrap(), 0);
        assert!(matches!(
            inst.edge_weight(0, 5),
            Err(InstanceError::IndexOutOfRange { index: 5, .. })
        ));
    }

    #[test]
    fn triangle_max_weight() {
        let inst = CvrpInstance::euclidean(
            "t",
            3,
            1,
            vec![(0.0, 0.0), (0.0, 3.0), (4.0, 0.0)],
            vec![0, 1, 1],
        )
        .unwrap();
        assert_eq!(inst.max_edge_weight(), 5);
    }

    #[test]
    fn vehicle_inference() {
        assert_eq!(infer_vehicle_count("X-n280-k17", &[0, 1], 10), 17);
        assert_eq!(infer_vehicle_count("P_k3", &[0, 1], 10), 3);
        assert_eq!(infer_vehicle_count("toy", &[0, 4, 6], 10), 1);
        assert_eq!(infer_vehicle_count("toy", &[0, 5, 6], 10), 2);
        assert_eq!(infer_vehicle_count("toy", &[0, 0], 10), 1);
        assert_eq!(infer_vehicle_count("Golden_5", &[0, 5], 10), 1);
        assert_eq!(infer_vehicle_count("bk12", &[0, 11], 10), 2);
    }

    #[test]
    fn vehicles_keyword_used_without_name_suffix() {
        let text = MINIMAL.replace("CAPACITY : 1\n", "CAPACITY : 1\nVEHICLES : 4\n");
        assert_eq!(parse_instance(&text).unwrap().vehicles, 4);
        let text = text.replace("NAME : tiny", "NAME : tiny-k2");
        assert_eq!(parse_instance(&text).unwrap().vehicles, 2);
    }

    #[test]
    fn oversized_demand_is_flagged_not_rejected() {
        let text = MINIMAL.replace("2 1\nDEPOT", "2 3\nDEPOT");
        let inst = parse_instance(&text).unwrap();
        assert_eq!(
            inst.flags,
            vec![InstanceFlag::DemandExceedsCapacity { node: 1, demand: 3 }]
        );
    }

    #[test]
    fn nonzero_depot_demand_is_rejected() {
        let text = MINIMAL.replace("1 0\n2 1", "1 2\n2 1");
        assert!(matches!(
            parse_instance(&text),
            Err(InstanceError::Invalid(_))
        ));
    }

    #[test]
    fn minimal_round_trip() {
        let inst = parse_instance(MINIMAL).unwrap();
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }
}
