//! Requests, reports and their JSON, text and DOT renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{self, Factored};
use crate::error::{Error, Result};
use crate::gwp::DEFAULT_GENERATOR_BOUND;
use crate::lattice::DivisorLattice;
use crate::oracle::{self, CirculantGraph, VerifyReport};
use crate::perm::Permutation;
use crate::pipeline::{self, Analysis};
use crate::poset::{self, PosetJson, WeightedPoset};
use crate::schur::SRingJson;
use crate::zn::ZnSubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
    Dot,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            "dot" => Ok(Format::Dot),
            _ => Err(Error::InvalidInput(format!("unknown format {s:?} (json, text or dot)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputMode {
    /// Residues, reduced mod n.
    Set(Vec<i64>),
    /// Proper divisors `d`; the set is the union of the `(Z_n)_d`.
    Divisors(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub n: u64,
    pub input: InputMode,
    pub generators: bool,
    pub spectrum: bool,
    pub verify: bool,
    pub max_oracle_n: usize,
    pub format: Format,
}

impl AnalysisRequest {
    pub fn new(n: u64, input: InputMode) -> Self {
        AnalysisRequest {
            n,
            input,
            generators: false,
            spectrum: false,
            verify: false,
            max_oracle_n: oracle::DEFAULT_ORACLE_BOUND,
            format: Format::Json,
        }
    }

    pub fn connection_set(&self) -> Result<ZnSubset> {
        if self.n < 2 {
            return Err(Error::InvalidInput(format!("n must be at least 2, got {}", self.n)));
        }
        arith::divisors(self.n)?;
        let n = self.n as usize;
        match &self.input {
            InputMode::Set(xs) => {
                if let Some(x) = xs.iter().find(|&&x| x.rem_euclid(n as i64) == 0) {
                    return Err(Error::InvalidInput(format!("residue {x} is 0 mod {n} (a loop)")));
                }
                ZnSubset::from_signed(n, xs.iter().copied())
            }
            InputMode::Divisors(ds) => {
                if ds.contains(&self.n) {
                    return Err(Error::InvalidInput(format!("divisor {} would add a loop", self.n)));
                }
                ZnSubset::from_divisors(n, ds)
            }
        }
    }
}

/// Parses `"1,2,-3"`; an empty string is the empty list.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| Error::InvalidInput(format!("cannot parse {t:?} as an integer"))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub integral: bool,
    /// `(eigenvalue, multiplicity)`, descending.
    pub eigenvalues: Vec<(i64, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub run: bool,
    pub order_factored: Option<Factored>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: u64,
    pub connection_set: Vec<usize>,
    pub divisors: Vec<u64>,
    pub sring: SRingJson,
    pub lattice: Vec<u64>,
    pub simple: bool,
    pub poset: PosetJson,
    pub map_coefficients: Vec<u64>,
    pub exponents: Vec<u64>,
    pub order_factored: Factored,
    /// Only when it fits in 64 bits.
    pub order: Option<u64>,
    pub expression: String,
    pub generators: Option<Vec<Permutation>>,
    pub spectrum: Option<SpectrumSummary>,
    pub oracle: Option<OracleSummary>,
}

impl AnalysisReport {
    /// `Some(false)` when the oracle disagreed.
    pub fn oracle_match(&self) -> Option<bool> {
        self.oracle.as_ref().and_then(|o| o.matches)
    }

    pub fn to_json(&self) -> String {
        // serde_json::Value objects keep keys sorted
        let value = serde_json::to_value(self).expect("serializable");
        serde_json::to_string_pretty(&value).expect("serializable") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("report JSON: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut t = String::new();
        let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let ulist = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(t, "n: {}", self.n);
        let _ = writeln!(t, "connection set: {{{}}}", ulist(&self.connection_set));
        let _ = writeln!(t, "orbit divisors: {{{}}}", list(&self.divisors));
        let _ = writeln!(t, "S-ring: rank {}, rational {}", self.sring.rank, self.sring.rational);
        for set in &self.sring.basic_sets {
            let _ = writeln!(t, "  basic set {{{}}}", ulist(set));
        }
        if let Some(gb) = &self.sring.group_basis {
            let _ = writeln!(t, "group basis: {{{}}}", list(gb));
        }
        let _ = writeln!(t, "lattice: {{{}}}", list(&self.lattice));
        let _ = writeln!(t, "simple: {}", self.simple);
        let rel: Vec<String> = self.poset.relations.iter().map(|[a, b]| format!("{a}≺{b}")).collect();
        let _ = writeln!(t, "poset: r = {}, relations {{{}}}", self.poset.r, rel.join(", "));
        let _ = writeln!(t, "weights: ({})", list(&self.poset.weights));
        let terms: Vec<String> =
            self.map_coefficients.iter().enumerate().map(|(i, c)| format!("{c}·x_{}", i + 1)).collect();
        let _ = writeln!(t, "map: {} mod {}", terms.join(" + "), self.n);
        let _ = writeln!(t, "exponents: ({})", list(&self.exponents));
        let order = match self.order {
            Some(v) if v.to_string() != self.order_factored.to_string() => format!("{} = {v}", self.order_factored),
            _ => self.order_factored.to_string(),
        };
        let _ = writeln!(t, "order: {order}");
        let _ = writeln!(t, "group: {}", self.expression);
        if let Some(gens) = &self.generators {
            let _ = writeln!(t, "generators: {}", gens.len());
            for g in gens {
                let _ = writeln!(t, "  {g}");
            }
        }
        if let Some(s) = &self.spectrum {
            let ev: Vec<String> = s
                .eigenvalues
                .iter()
                .map(|(v, k)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") })
                .collect();
            let _ = writeln!(t, "spectrum: integral {}{}", s.integral, if ev.is_empty() { String::new() } else { format!(", {{{}}}", ev.join(", ")) });
        }
        if let Some(o) = &self.oracle {
            match (&o.order_factored, o.matches) {
                (Some(f), Some(m)) => {
                    let _ = writeln!(t, "oracle: order {f}, match {m}");
                }
                _ => {
                    let _ = writeln!(t, "oracle: skipped (run {})", o.run);
                }
            }
        }
        t
    }

    /// Hasse diagrams of the lattice and of the poset.
    pub fn to_dot(&self) -> Result<String> {
        let lattice = DivisorLattice::new(self.n, self.lattice.iter().copied())?;
        let poset = WeightedPoset::from_json(&self.poset)?;
        Ok(lattice.to_dot() + &poset.to_dot())
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Text => Ok(self.to_text()),
            Format::Dot => self.to_dot(),
        }
    }
}

pub fn report_from_analysis(a: &Analysis) -> Result<AnalysisReport> {
    let order = a.gwp.order().clone();
    Ok(AnalysisReport {
        n: a.modulus(),
        connection_set: a.set.to_vec(),
        divisors: a.set.gcd_classes(),
        sring: a.sring.ring().to_json(),
        lattice: a.lattice().elements().to_vec(),
        simple: poset::is_simple_lattice(a.lattice())?.simple,
        poset: a.poset.to_json(),
        map_coefficients: a.poset.map_coefficients(),
        exponents: a.gwp.exponents().to_vec(),
        order: order.to_u64(),
        order_factored: order,
        expression: a.gwp.expression().to_string(),
        generators: None,
        spectrum: None,
        oracle: None,
    })
}

pub fn cmd_analyze(req: &AnalysisRequest) -> Result<AnalysisReport> {
    let set = req.connection_set()?;
    let analysis = pipeline::analyze_set(&set)?;
    let mut report = report_from_analysis(&analysis)?;
    if req.generators {
        report.generators = Some(analysis.gwp.group_on_zn(DEFAULT_GENERATOR_BOUND)?.generators().to_vec());
    }
    if req.spectrum {
        let s = oracle::spectrum(&set)?;
        if !s.integral {
            return Err(Error::Inconsistency(format!("rational set {set} has a non-integral spectrum")));
        }
        report.spectrum = Some(SpectrumSummary { integral: s.integral, eigenvalues: s.multiset().unwrap_or_default() });
    }
    if req.verify {
        report.oracle = Some(if set.modulus() <= req.max_oracle_n {
            let o = oracle::brute_force_aut(&CirculantGraph::new(set)?, req.max_oracle_n)?.order();
            let m = o == report.order_factored;
            OracleSummary { run: true, order_factored: Some(o), matches: Some(m) }
        } else {
            OracleSummary { run: false, order_factored: None, matches: None }
        });
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub n: u64,
    pub count: u128,
    pub verify: VerifyReport,
}

impl EnumerateReport {
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("serializable");
        serde_json::to_string_pretty(&value).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut t = String::new();
        let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(t, "n: {}, rational circulants: {}", self.n, self.count);
        for r in &self.verify.records {
            let _ = write!(
                t,
                "X={{{}}} L={{{}}} order {} group {}",
                list(&r.divisors),
                list(&r.lattice),
                r.order_factored,
                r.expression
            );
            match &r.oracle_order_factored {
                Some(o) => {
                    let _ = writeln!(t, " oracle {o} match {}", r.matches);
                }
                None => {
                    let _ = writeln!(t);
                }
            }
        }
        let _ = writeln!(t, "all match: {}", self.verify.all_match);
        t
    }
}

/// One record per divisor subset; the oracle runs only with `verify`.
pub fn cmd_enumerate(n: u64, verify: bool, max_oracle_n: usize) -> Result<EnumerateReport> {
    let report = oracle::full_verify(n, if verify { max_oracle_n } else { 0 })?;
    Ok(EnumerateReport { n, count: oracle::count_rational_circulants(n)?, verify: report })
}

pub enum DotSource {
    /// Lattice of the S-ring generated by these orbit divisors.
    Divisors(Vec<u64>),
    /// Closure of these divisors in L(n).
    Lattice(Vec<u64>),
}

pub fn cmd_export_dot(n: u64, source: &DotSource, poset: bool) -> Result<String> {
    let lattice = match source {
        DotSource::Divisors(ds) => pipeline::analyze_divisors(n, ds)?.lattice().clone(),
        DotSource::Lattice(ls) => DivisorLattice::closure(n, ls.iter().copied())?,
    };
    if poset {
        Ok(WeightedPoset::from_lattice(&lattice)?.to_dot())
    } else {
        Ok(lattice.to_dot())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn striking() -> AnalysisRequest {
        let mut r = AnalysisRequest::new(36, InputMode::Divisors(vec![2, 3, 4, 6]));
        r.generators = true;
        r.spectrum = true;
        r
    }

    #[test]
    fn striking_report() {
        let rep = cmd_analyze(&striking()).unwrap();
        assert_eq!(rep.lattice, vec![1, 2, 3, 4, 6, 12, 18, 36]);
        assert_eq!(rep.map_coefficients, vec![12, 18, 2, 9]);
        assert_eq!(rep.order, Some(165_888));
        let json: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(json["order_factored"], serde_json::json!({"2": 11, "3": 4}));
        assert!(rep.to_text().contains("order: 2^11 · 3^4 = 165888"));
        assert!(!rep.simple);
    }

    #[test]
    fn text_round_trip() {
        for req in [striking(), AnalysisRequest::new(6, InputMode::Set(vec![1, -1]))] {
            let rep = cmd_analyze(&req).unwrap();
            let back = AnalysisReport::from_json(&rep.to_json()).unwrap();
            assert_eq!(back, rep);
            assert_eq!(back.to_text(), rep.to_text());
            assert_eq!(back.to_json(), rep.to_json());
        }
    }

    #[test]
    fn requests() {
        let rep = cmd_analyze(&AnalysisRequest::new(6, InputMode::Set(vec![1, 5]))).unwrap();
        assert_eq!(rep.expression, "S_2 × S_3");
        assert_eq!(rep.order, Some(12));
        let e = cmd_analyze(&AnalysisRequest::new(6, InputMode::Set(vec![1, 2]))).unwrap_err();
        assert_eq!(e.to_string(), "not rational: trace of {1} is {1,5}");
        assert!(cmd_analyze(&AnalysisRequest::new(6, InputMode::Set(vec![6]))).is_err());
        assert!(cmd_analyze(&AnalysisRequest::new(1, InputMode::Set(vec![]))).is_err());
        assert!(cmd_analyze(&AnalysisRequest::new(6, InputMode::Divisors(vec![4]))).is_err());
        assert_eq!(parse_list::<i64>("1, -2,3").unwrap(), vec![1, -2, 3]);
        assert!(parse_list::<u64>("1,x").is_err());
        assert_eq!("dot".parse::<Format>().unwrap(), Format::Dot);
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(cmd_enumerate(12, false, 40).unwrap().verify.records.len(), 32);
        assert_eq!(cmd_enumerate(2, false, 40).unwrap().verify.records.len(), 2);
    }

    #[test]
    fn dot_exports() {
        let d = cmd_export_dot(6, &DotSource::Lattice(vec![]), false).unwrap();
        assert_eq!(d.matches(" -- ").count(), 1);
        let p = cmd_export_dot(36, &DotSource::Divisors(vec![2, 3, 4, 6]), true).unwrap();
        assert_eq!(p.matches("->").count(), 3);
    }
}
