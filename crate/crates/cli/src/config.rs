//! Experiment configuration: a single key-value text file plus `--set`
//! overrides. Every module precondition is validated up front so that a
//! bad configuration fails with one actionable message instead of deep in
//! a run.
//!
//! File format: `key = value` lines, `#` starts a comment, blank lines
//! ignored. Keys and defaults are printed by the `describe` subcommand and
//! documented in the README.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use lowdisc::brs::GammaSpec;
use lowdisc::digital::{DigitalConfig, GeneratingMatrix, PointGenerator};
use lowdisc::digits::DigitString;
use lowdisc::field::FieldSpec;
use lowdisc::polyring::Poly;
use lowdisc::radinv::{CantorBase, HaltonTypeSequence, HellekalekSequence, PlaceList, TezukaSequence};

/// CLI-level error with the exit class already decided.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Certification(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config: {m}"),
            CliError::Certification(m) => write!(f, "certification: {m}"),
            CliError::Io(m) => write!(f, "io: {m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Certification(_) => 3,
        }
    }
}

impl From<lowdisc::Error> for CliError {
    fn from(e: lowdisc::Error) -> CliError {
        match e.class() {
            lowdisc::ErrorClass::Certification => CliError::Certification(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

const KNOWN_KEYS: &[&str] = &[
    "sequence", "field", "polys", "matrices", "m", "m_max", "count", "t", "d", "gamma",
    "precision", "format", "out", "seed",
];

pub const DEFAULTS: &[(&str, &str, &str)] = &[
    ("sequence", "niederreiter", "niederreiter | halton | hellekalek | tezuka | halton-type | explicit-matrices"),
    ("field", "GF(2)", "field description, e.g. GF(9) or GF(4)=GF(2)[x]/(x^2+x+1)"),
    ("polys", "x+1", "per-coordinate polynomials, ';'-separated (niederreiter, tezuka)"),
    ("places.<i>", "", "place cycle for coordinate i, ','-separated polynomials (halton-type)"),
    ("bases.<i>", "", "Cantor base cycle for coordinate i, ','-separated integers (halton, hellekalek)"),
    ("matrices", "", "path to a row-major digit-grid JSON file (explicit-matrices)"),
    ("m", "8", "resolution: commands act on the first b^m points"),
    ("m_max", "12", "profile depth for the brs command"),
    ("count", "", "explicit point count override (generate, discrepancy)"),
    ("t", "", "claimed t for verify (default: check the exact t)"),
    ("d", "", "admissibility parameter d (admissibility, verify)"),
    ("gamma", "1/2", "box corners: '|' separates experiments, ';' separates coordinates"),
    ("precision", "64", "digits per coordinate"),
    ("format", "json", "output format: json | csv"),
    ("out", "", "output path (default: stdout); writes are atomic"),
    ("seed", "0", "seed recorded in outputs for reproducibility bookkeeping"),
];

/// Parsed, typed experiment configuration.
pub struct ExperimentConfig {
    keys: BTreeMap<String, String>,
}

impl ExperimentConfig {
    pub fn load(path: Option<&Path>, overrides: &[String]) -> CliResult<ExperimentConfig> {
        let mut keys = BTreeMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| {
                    CliError::Config(format!(
                        "{}:{}: expected 'key = value'",
                        path.display(),
                        lineno + 1
                    ))
                })?;
                keys.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        for kv in overrides {
            let (k, v) = kv.split_once('=').ok_or_else(|| {
                CliError::Config(format!("--set '{kv}': expected KEY=VALUE"))
            })?;
            keys.insert(k.trim().to_string(), v.trim().to_string());
        }
        for k in keys.keys() {
            let indexed_ok = |prefix: &str| {
                k.strip_prefix(prefix)
                    .and_then(|r| r.strip_prefix('.'))
                    .is_some_and(|idx| idx.parse::<usize>().map_or(false, |i| i >= 1))
            };
            let known = KNOWN_KEYS.contains(&k.as_str())
                || indexed_ok("places")
                || indexed_ok("bases");
            if !known {
                return Err(CliError::Config(format!(
                    "unknown key '{k}' (see the describe subcommand)"
                )));
            }
        }
        Ok(ExperimentConfig { keys })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.keys.get(key).map(|s| s.as_str()).filter(|s| !s.is_empty())
    }

    fn get_or(&self, key: &str, default: &'static str) -> String {
        self.get(key).unwrap_or(default).to_string()
    }

    fn parse_num<T: std::str::FromStr>(&self, key: &str, default: &'static str) -> CliResult<T> {
        let raw = self.get_or(key, default);
        raw.parse()
            .map_err(|_| CliError::Config(format!("{key} = '{raw}' is not a valid number")))
    }

    pub fn sequence_kind(&self) -> String {
        self.get_or("sequence", "niederreiter")
    }

    pub fn m(&self) -> CliResult<u32> {
        self.parse_num("m", "8")
    }

    pub fn m_max(&self) -> CliResult<u32> {
        self.parse_num("m_max", "12")
    }

    pub fn count(&self) -> CliResult<Option<u64>> {
        match self.get("count") {
            None => Ok(None),
            Some(_) => self.parse_num("count", "0").map(Some),
        }
    }

    pub fn claimed_t(&self) -> CliResult<Option<u32>> {
        match self.get("t") {
            None => Ok(None),
            Some(_) => self.parse_num("t", "0").map(Some),
        }
    }

    pub fn d(&self) -> CliResult<Option<u32>> {
        match self.get("d") {
            None => Ok(None),
            Some(_) => self.parse_num("d", "0").map(Some),
        }
    }

    pub fn precision(&self) -> CliResult<usize> {
        let p: usize = self.parse_num("precision", "64")?;
        if p == 0 {
            return Err(CliError::Config("precision must be positive".into()));
        }
        Ok(p)
    }

    pub fn seed(&self) -> CliResult<u64> {
        self.parse_num("seed", "0")
    }

    pub fn format(&self) -> CliResult<OutputFormat> {
        match self.get_or("format", "json").as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(CliError::Config(format!("format = '{other}' (want json or csv)"))),
        }
    }

    pub fn out_path(&self) -> Option<String> {
        self.get("out").map(|s| s.to_string())
    }

    pub fn field(&self) -> CliResult<FieldSpec> {
        parse_field(&self.get_or("field", "GF(2)"))
    }

    pub fn polys(&self, spec: &FieldSpec) -> CliResult<Vec<Poly>> {
        let raw = self.get_or("polys", "x+1");
        raw.split(';')
            .map(|part| {
                Poly::parse(spec, part.trim())
                    .map_err(|e| CliError::Config(format!("polys entry '{}': {e}", part.trim())))
            })
            .collect()
    }

    /// Indexed keys `prefix.1, prefix.2, …` in coordinate order.
    fn indexed_lists(&self, prefix: &str) -> CliResult<Vec<String>> {
        let mut entries: Vec<(usize, String)> = Vec::new();
        for (k, v) in &self.keys {
            if let Some(idx) = k.strip_prefix(prefix).and_then(|r| r.strip_prefix('.')) {
                let i: usize = idx.parse().map_err(|_| {
                    CliError::Config(format!("bad coordinate index in key '{k}'"))
                })?;
                entries.push((i, v.clone()));
            }
        }
        entries.sort();
        let expected: Vec<usize> = (1..=entries.len()).collect();
        let got: Vec<usize> = entries.iter().map(|(i, _)| *i).collect();
        if expected != got {
            return Err(CliError::Config(format!(
                "{prefix}.* keys must be numbered 1..{} without gaps",
                entries.len()
            )));
        }
        Ok(entries.into_iter().map(|(_, v)| v).collect())
    }

    pub fn cantor_bases(&self) -> CliResult<Vec<CantorBase>> {
        let lists = self.indexed_lists("bases")?;
        if lists.is_empty() {
            return Err(CliError::Config(
                "hellekalek/halton need at least bases.1 = q1,q2,...".into(),
            ));
        }
        lists
            .iter()
            .map(|list| {
                let entries = list
                    .split(',')
                    .map(|t| {
                        t.trim().parse::<u64>().map_err(|_| {
                            CliError::Config(format!("bad base entry '{}'", t.trim()))
                        })
                    })
                    .collect::<CliResult<Vec<u64>>>()?;
                CantorBase::cycle(entries).map_err(CliError::from)
            })
            .collect()
    }

    pub fn place_lists(&self, spec: &FieldSpec) -> CliResult<PlaceList> {
        let lists = self.indexed_lists("places")?;
        if lists.is_empty() {
            return Err(CliError::Config(
                "halton-type needs at least places.1 = p1,p2,...".into(),
            ));
        }
        let coords = lists
            .iter()
            .map(|list| {
                list.split(',')
                    .map(|t| {
                        Poly::parse(spec, t.trim()).map_err(|e| {
                            CliError::Config(format!("place '{}': {e}", t.trim()))
                        })
                    })
                    .collect::<CliResult<Vec<Poly>>>()
            })
            .collect::<CliResult<Vec<_>>>()?;
        PlaceList::new(spec, coords).map_err(CliError::from)
    }

    pub fn gammas(&self, base: u64) -> CliResult<Vec<GammaSpec>> {
        let raw = self.get_or("gamma", "1/2");
        raw.split('|')
            .map(|part| GammaSpec::parse(base, part.trim()).map_err(CliError::from))
            .collect()
    }

    pub fn matrices_file(&self) -> CliResult<&str> {
        self.get("matrices").ok_or_else(|| {
            CliError::Config("explicit-matrices needs matrices = <path.json>".into())
        })
    }

    /// Builds the configured sequence, validating all preconditions.
    pub fn sequence(&self) -> CliResult<Sequence> {
        let precision = self.precision()?;
        match self.sequence_kind().as_str() {
            "niederreiter" => {
                let spec = self.field()?;
                let polys = self.polys(&spec)?;
                let cfg = DigitalConfig::niederreiter(&polys, None, precision)?;
                let id = format!(
                    "niederreiter {} [{}]",
                    spec,
                    polys.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; ")
                );
                Ok(Sequence { id, kind: SequenceKind::Digital(cfg) })
            }
            "explicit-matrices" => {
                let (spec, grids) = load_matrices(self.matrices_file()?)?;
                let mats = grids
                    .into_iter()
                    .map(|rows| GeneratingMatrix::explicit(&spec, rows))
                    .collect::<Result<Vec<_>, _>>()?;
                let cfg = DigitalConfig::new(&spec, mats, precision)?;
                let id = format!("explicit-matrices {spec}");
                Ok(Sequence { id, kind: SequenceKind::Digital(cfg) })
            }
            kind @ ("halton" | "hellekalek") => {
                let bases = self.cantor_bases()?;
                if kind == "halton" {
                    for b in &bases {
                        if b.entries().len() != 1 {
                            return Err(CliError::Config(
                                "halton wants one constant base per coordinate; use hellekalek for base lists".into(),
                            ));
                        }
                    }
                }
                let id = format!(
                    "{kind} bases [{}]",
                    bases
                        .iter()
                        .map(|b| {
                            b.entries()
                                .iter()
                                .map(|q| q.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        })
                        .collect::<Vec<_>>()
                        .join("; ")
                );
                let seq = HellekalekSequence::new(bases, precision)?;
                Ok(Sequence { id, kind: SequenceKind::Hellekalek(seq) })
            }
            "tezuka" => {
                let spec = self.field()?;
                let polys = self.polys(&spec)?;
                let id = format!(
                    "tezuka {} [{}]",
                    spec,
                    polys.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; ")
                );
                let seq = TezukaSequence::new(&spec, polys, precision)?;
                Ok(Sequence { id, kind: SequenceKind::Tezuka(seq) })
            }
            "halton-type" => {
                let spec = self.field()?;
                let places = self.place_lists(&spec)?;
                let id = format!("halton-type {spec}");
                let seq = HaltonTypeSequence::new(places, precision);
                Ok(Sequence { id, kind: SequenceKind::HaltonType(seq) })
            }
            other => Err(CliError::Config(format!(
                "unknown sequence kind '{other}' (see describe)"
            ))),
        }
    }
}

pub enum SequenceKind {
    Digital(DigitalConfig),
    Hellekalek(HellekalekSequence),
    Tezuka(TezukaSequence),
    HaltonType(HaltonTypeSequence),
}

/// A constructed sequence with a stable description string.
pub struct Sequence {
    pub id: String,
    pub kind: SequenceKind,
}

impl Sequence {
    pub fn dimension(&self) -> usize {
        match &self.kind {
            SequenceKind::Digital(c) => c.dimension(),
            SequenceKind::Hellekalek(s) => s.dimension(),
            SequenceKind::Tezuka(s) => s.dimension(),
            SequenceKind::HaltonType(s) => s.dimension(),
        }
    }

    /// The common fixed base, when the sequence has one (Cantor-base
    /// sequences do not).
    pub fn fixed_base(&self) -> Option<u64> {
        match &self.kind {
            SequenceKind::Digital(c) => Some(c.spec().order()),
            SequenceKind::Tezuka(s) => Some(s.spec().order()),
            SequenceKind::HaltonType(s) => Some(s.spec().order()),
            SequenceKind::Hellekalek(_) => None,
        }
    }

    /// The digital engine behind this sequence, when there is one.
    pub fn digital(&self) -> Option<&DigitalConfig> {
        match &self.kind {
            SequenceKind::Digital(c) => Some(c),
            _ => None,
        }
    }

    /// Materializes points `start..start+count`.
    pub fn points(&self, start: u64, count: u64) -> CliResult<Vec<Vec<DigitString>>> {
        let end = start
            .checked_add(count)
            .ok_or_else(|| CliError::Config("point range overflows".into()))?;
        match &self.kind {
            SequenceKind::Digital(c) => {
                let gen = c.generator(end.max(1) - 1)?;
                Ok(gen.points(start..end)?)
            }
            SequenceKind::Hellekalek(s) => {
                Ok((start..end).map(|n| s.point(n)).collect::<Result<_, _>>()?)
            }
            SequenceKind::Tezuka(s) => {
                Ok((start..end).map(|n| s.point(n)).collect::<Result<_, _>>()?)
            }
            SequenceKind::HaltonType(s) => {
                Ok((start..end).map(|n| s.point(n)).collect::<Result<_, _>>()?)
            }
        }
    }

    /// A streaming iterator over the first `total` points (constant
    /// memory; used by the profile command).
    pub fn stream(&self, total: u64) -> CliResult<PointStream<'_>> {
        let gen = match &self.kind {
            SequenceKind::Digital(c) => Some(c.generator(total.max(1) - 1)?),
            _ => None,
        };
        Ok(PointStream { seq: self, gen, next: 0, total })
    }
}

pub struct PointStream<'a> {
    seq: &'a Sequence,
    gen: Option<PointGenerator<'a>>,
    next: u64,
    total: u64,
}

impl Iterator for PointStream<'_> {
    type Item = lowdisc::Result<Vec<DigitString>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.total {
            return None;
        }
        let n = self.next;
        self.next += 1;
        Some(match (&self.seq.kind, &self.gen) {
            (SequenceKind::Digital(_), Some(gen)) => gen.point(n),
            (SequenceKind::Hellekalek(s), _) => s.point(n),
            (SequenceKind::Tezuka(s), _) => s.point(n),
            (SequenceKind::HaltonType(s), _) => s.point(n),
            (SequenceKind::Digital(_), None) => unreachable!(),
        })
    }
}

/// Parses `GF(q)` or `GF(q)=GF(p)[x]/(modulus)`.
pub fn parse_field(text: &str) -> CliResult<FieldSpec> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || CliError::Config(format!("bad field description '{text}'"));
    let rest = compact.strip_prefix("GF(").ok_or_else(err)?;
    let (order_str, rest) = rest.split_once(')').ok_or_else(err)?;
    let order: u64 = order_str.parse().map_err(|_| err())?;
    if rest.is_empty() {
        return FieldSpec::gf(order).map_err(CliError::from);
    }
    let rest = rest.strip_prefix("=GF(").ok_or_else(err)?;
    let (p_str, rest) = rest.split_once(')').ok_or_else(err)?;
    let p: u64 = p_str.parse().map_err(|_| err())?;
    let modulus_str = rest
        .strip_prefix("[x]/(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(err)?;
    let base = FieldSpec::prime(p)?;
    let modulus = Poly::parse(&base, modulus_str)?;
    let k = modulus
        .degree()
        .ok_or_else(|| CliError::Config("modulus must be nonconstant".into()))?;
    let coeffs: Vec<u64> = (0..=k).map(|r| modulus.coeff_index(r)).collect();
    let spec = FieldSpec::extension(p, k as u32, &coeffs)?;
    if spec.order() != order {
        return Err(CliError::Config(format!(
            "field order {order} does not match GF({p})^{k} = {}",
            spec.order()
        )));
    }
    Ok(spec)
}

/// Matrix file: `{"field": "GF(2)", "matrices": [[[digit,...],...],...]}`,
/// row-major digit grids, one grid per coordinate.
fn load_matrices(path: &str) -> CliResult<(FieldSpec, Vec<Vec<Vec<u64>>>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{path}: {e}")))?;
    let field = value
        .get("field")
        .and_then(|f| f.as_str())
        .ok_or_else(|| CliError::Config(format!("{path}: missing \"field\"")))?;
    let spec = parse_field(field)?;
    let grids = value
        .get("matrices")
        .and_then(|m| m.as_array())
        .ok_or_else(|| CliError::Config(format!("{path}: missing \"matrices\" array")))?;
    let mut out = Vec::with_capacity(grids.len());
    for grid in grids {
        let rows = grid
            .as_array()
            .ok_or_else(|| CliError::Config(format!("{path}: matrix must be an array of rows")))?;
        let mut matrix = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| CliError::Config(format!("{path}: row must be an array")))?
                .iter()
                .map(|v| {
                    v.as_u64().ok_or_else(|| {
                        CliError::Config(format!("{path}: entries must be nonnegative digits"))
                    })
                })
                .collect::<CliResult<Vec<u64>>>()?;
            matrix.push(row);
        }
        out.push(matrix);
    }
    Ok((spec, out))
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}
