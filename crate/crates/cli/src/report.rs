use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use trace_codes::{CompleteWeightEnumerator, CompositionVector, WeightDistribution};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub composition: Vec<u64>,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub weight: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub elapsed_ms: u64,
    pub modulus: Vec<u32>,
}

/// Result of one `compute` run. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub p: u64,
    pub m: usize,
    pub d: u64,
    pub code: String,
    pub length: u64,
    pub dimension: usize,
    pub method: String,
    pub cwe: Vec<Term>,
    pub weight_distribution: Vec<WeightRow>,
    #[serde(rename = "match")]
    pub matched: Option<bool>,
    pub meta: Meta,
}

pub fn terms(cwe: &CompleteWeightEnumerator) -> Vec<Term> {
    cwe.terms()
        .map(|(c, k)| Term {
            composition: c.counts().to_vec(),
            multiplicity: k,
        })
        .collect()
}

pub fn rows(wd: &WeightDistribution) -> Vec<WeightRow> {
    wd.entries()
        .map(|(weight, count)| WeightRow { weight, count })
        .collect()
}

fn weight_enumerator(rows: &[WeightRow]) -> String {
    let wd = WeightDistribution::from_entries(rows.iter().map(|r| (r.weight, r.count)));
    wd.to_string()
}

fn modulus_string(modulus: &[u32]) -> String {
    let mut out = String::new();
    for (k, &c) in modulus.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        let coeff = if c == 1 && k > 0 {
            String::new()
        } else {
            c.to_string()
        };
        match k {
            0 => out.push_str(&c.to_string()),
            1 => write!(out, "{coeff}x").unwrap(),
            _ => write!(out, "{coeff}x^{k}").unwrap(),
        }
    }
    out
}

pub fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    let verdict = match r.matched {
        Some(true) => " (brute force and formula agree)",
        Some(false) => " (MISMATCH)",
        None => "",
    };
    writeln!(
        out,
        "code       {} over GF({}^{}), d = {}",
        r.code, r.p, r.m, r.d
    )
    .unwrap();
    writeln!(out, "modulus    {}", modulus_string(&r.meta.modulus)).unwrap();
    writeln!(out, "length     {}", r.length).unwrap();
    writeln!(out, "dimension  {}", r.dimension).unwrap();
    writeln!(out, "method     {}{verdict}", r.method).unwrap();
    writeln!(out).unwrap();
    writeln!(out, "complete weight enumerator, {} terms:", r.cwe.len()).unwrap();
    let width = r
        .cwe
        .iter()
        .map(|t| t.multiplicity.to_string().len())
        .max()
        .unwrap_or(1);
    for t in &r.cwe {
        let monomial = CompositionVector::new(t.composition.clone());
        writeln!(out, "  {:>width$}  {monomial}", t.multiplicity).unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "weight enumerator:").unwrap();
    writeln!(out, "  {}", weight_enumerator(&r.weight_distribution)).unwrap();
    out
}

pub fn render_json(r: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

fn latex_monomial(composition: &[u64]) -> String {
    let factors: Vec<String> = composition
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(j, &k)| {
            if k == 1 {
                format!("w_{j}")
            } else {
                format!("w_{j}^{{{k}}}")
            }
        })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join(" ")
    }
}

fn latex_weight_enumerator(rows: &[WeightRow]) -> String {
    rows.iter()
        .map(|r| match (r.weight, r.count) {
            (0, c) => c.to_string(),
            (w, 1) => format!("z^{{{w}}}"),
            (w, c) => format!("{c} z^{{{w}}}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn render_latex(r: &RunReport) -> String {
    let mut out = String::new();
    let name = if r.code == "C_D" { "C_D" } else { "C_{D,b}" };
    writeln!(
        out,
        "% {} over GF({}^{}), d = {}: length {}, dimension {}",
        r.code, r.p, r.m, r.d, r.length, r.dimension
    )
    .unwrap();
    writeln!(out, "\\begin{{align*}}").unwrap();
    for (i, t) in r.cwe.iter().enumerate() {
        let lead = if i == 0 {
            format!("\\mathrm{{CWE}}({name}) &= ")
        } else {
            "  &\\quad + ".to_string()
        };
        let coeff = if t.multiplicity == 1 {
            String::new()
        } else {
            format!("{} ", t.multiplicity)
        };
        let end = if i + 1 < r.cwe.len() { " \\\\" } else { "" };
        writeln!(out, "{lead}{coeff}{}{end}", latex_monomial(&t.composition)).unwrap();
    }
    writeln!(out, "\\end{{align*}}").unwrap();
    writeln!(
        out,
        "\\[ \\sum_i A_i z^i = {} \\]",
        latex_weight_enumerator(&r.weight_distribution)
    )
    .unwrap();
    out
}

pub fn render_table_text(rows: &[WeightRow]) -> String {
    let ww = rows
        .iter()
        .map(|r| r.weight.to_string().len())
        .max()
        .unwrap_or(0)
        .max("Weight".len());
    let cw = rows
        .iter()
        .map(|r| r.count.to_string().len())
        .max()
        .unwrap_or(0)
        .max("Multiplicity".len());
    let mut out = format!("{:>ww$}  {:>cw$}\n", "Weight", "Multiplicity");
    for r in rows {
        writeln!(out, "{:>ww$}  {:>cw$}", r.weight, r.count).unwrap();
    }
    out
}

pub fn render_table_csv(rows: &[WeightRow]) -> String {
    let mut out = String::from("weight,count\n");
    for r in rows {
        writeln!(out, "{},{}", r.weight, r.count).unwrap();
    }
    out
}

pub fn render_table_latex(rows: &[WeightRow]) -> String {
    let mut out =
        String::from("\\begin{tabular}{rr}\n\\hline\nWeight & Multiplicity \\\\\n\\hline\n");
    for r in rows {
        writeln!(out, "{} & {} \\\\", r.weight, r.count).unwrap();
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_rendering() {
        assert_eq!(modulus_string(&[1, 0, 1]), "x^2 + 1");
        assert_eq!(modulus_string(&[2, 1, 0, 1]), "x^3 + x + 2");
        assert_eq!(modulus_string(&[0, 1]), "x");
    }

    #[test]
    fn latex_monomials() {
        assert_eq!(latex_monomial(&[80, 0, 0]), "w_0^{80}");
        assert_eq!(latex_monomial(&[2, 1, 1]), "w_0^{2} w_1 w_2");
        assert_eq!(latex_monomial(&[0, 0]), "1");
    }

    #[test]
    fn csv_has_no_trailing_separator() {
        let rows = [
            WeightRow {
                weight: 0,
                count: 1,
            },
            WeightRow {
                weight: 2,
                count: 4,
            },
        ];
        assert_eq!(render_table_csv(&rows), "weight,count\n0,1\n2,4\n");
    }
}
