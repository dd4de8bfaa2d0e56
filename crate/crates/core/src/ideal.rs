//! Homogeneous ideals and their text/JSON file formats.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::DEFAULT_PRIME;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{Ring, RingDescriptor};

/// An ideal given by homogeneous generators (homogeneous with respect to the
/// ring's variable weights). Generators are nonzero, monic and deduplicated.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        let mut out: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !crate::ring::same_ring(g.ring(), ring) {
                return Err(Error::Structural("generator lives in a different ring".into()));
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::Structural(format!("generator {g} is not homogeneous")));
            }
            let g = g.monic();
            if !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Self { ring: ring.clone(), gens: out })
    }

    pub fn zero(ring: &Ring) -> Self {
        Self { ring: ring.clone(), gens: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn n_vars(&self) -> usize {
        self.ring.n_vars()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Same generators moved to a ring with the same variables and another
    /// order.
    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        let ring = self.ring.with_order(order);
        let gens = self.gens.iter().map(|g| g.to_ring(&ring)).collect();
        Ideal { ring, gens }
    }

    /// Reduces the generators to another prime.
    pub fn with_prime(&self, prime: u32) -> Result<Ideal> {
        let ring = self.ring.with_prime(prime)?;
        let gens = self.gens.iter().map(|g| g.to_ring(&ring)).collect();
        Ideal::new(&ring, gens)
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0)
    }

    /// Text file format: header line, `gens:` line, one generator per line.
    pub fn to_text(&self) -> String {
        let mut s = self.ring.header();
        s.push_str("\ngens:\n");
        for g in &self.gens {
            s.push_str(&g.to_canonical_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Ideal> {
        let mut ring: Option<Ring> = None;
        let mut in_gens = false;
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: lineno + 1, msg };
            if let Some(rest) = line.strip_prefix("ring:") {
                if ring.is_some() {
                    return Err(err("duplicate ring line".into()));
                }
                ring = Some(parse_header(rest).map_err(err)?);
            } else if line == "gens:" {
                if ring.is_none() {
                    return Err(err("gens before ring line".into()));
                }
                in_gens = true;
            } else if in_gens {
                let r = ring.as_ref().expect("checked above");
                let g = Polynomial::parse(r, line).map_err(|e| match e {
                    Error::Parse { msg, .. } => err(msg),
                    other => other,
                })?;
                gens.push(g);
            } else {
                return Err(err(format!("unexpected line '{line}'")));
            }
        }
        let ring = ring.ok_or(Error::Parse { line: 0, msg: "missing ring line".into() })?;
        Ideal::new(&ring, gens)
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            prime: self.ring.prime(),
            vars: self.ring.var_names().to_vec(),
            order: self.ring.order().name(),
            gens: self.gens.iter().map(|g| g.to_canonical_string()).collect(),
        }
    }

    pub fn from_json(j: &IdealJson) -> Result<Ideal> {
        let ring = RingDescriptor::new(j.vars.clone(), j.prime, MonomialOrder::parse(&j.order)?)?;
        let gens = j.gens.iter().map(|g| Polynomial::parse(&ring, g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&ring, gens)
    }

    /// Parses either format, guessing from the first non-blank character.
    pub fn parse_any(text: &str) -> Result<Ideal> {
        if text.trim_start().starts_with('{') {
            let j: IdealJson = serde_json::from_str(text)?;
            Ideal::from_json(&j)
        } else {
            Ideal::parse_text(text)
        }
    }
}

/// JSON mirror of the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    #[serde(default = "default_prime")]
    pub prime: u32,
    pub vars: Vec<String>,
    #[serde(default = "default_order")]
    pub order: String,
    pub gens: Vec<String>,
}

fn default_prime() -> u32 {
    DEFAULT_PRIME
}

fn default_order() -> String {
    "grevlex".into()
}

fn parse_header(rest: &str) -> std::result::Result<Ring, String> {
    let mut prime = DEFAULT_PRIME;
    let mut vars: Option<Vec<String>> = None;
    let mut order = MonomialOrder::Grevlex;
    for field in rest.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| format!("bad header field '{field}'"))?;
        match key {
            "p" => prime = value.parse().map_err(|_| format!("bad prime '{value}'"))?,
            "vars" => {
                let inner = value
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| format!("bad variable list '{value}'"))?;
                vars = Some(inner.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect());
            }
            "order" => order = MonomialOrder::parse(value).map_err(|e| e.to_string())?,
            _ => return Err(format!("unknown header field '{key}'")),
        }
    }
    let vars = vars.ok_or("header lacks vars=[...]")?;
    RingDescriptor::new(vars, prime, order).map_err(|e| e.to_string())
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWISTED: &str = "ring: p=32003 vars=[x0,x1,x2,x3] order=grevlex\n# twisted cubic\ngens:\nx0*x2 - x1^2\n\nx0*x3 - x1*x2\nx1*x3 - x2^2\n";

    #[test]
    fn text_round_trip() {
        let i = Ideal::parse_text(TWISTED).unwrap();
        assert_eq!(i.gens().len(), 3);
        let again = Ideal::parse_text(&i.to_text()).unwrap();
        assert_eq!(i, again);
    }

    #[test]
    fn json_round_trip() {
        let i = Ideal::parse_text(TWISTED).unwrap();
        let s = serde_json::to_string(&i.to_json()).unwrap();
        assert_eq!(Ideal::parse_any(&s).unwrap(), i);
    }

    #[test]
    fn rejects_inhomogeneous_and_dedups() {
        let bad = "ring: p=101 vars=[x,y] order=lex\ngens:\nx^2 + y\n";
        assert!(Ideal::parse_text(bad).is_err());
        let dup = "ring: p=101 vars=[x,y] order=lex\ngens:\nx*y\n2*x*y\n0\n";
        assert_eq!(Ideal::parse_text(dup).unwrap().gens().len(), 1);
    }

    #[test]
    fn reports_line_numbers() {
        let bad = "ring: p=101 vars=[x,y]\ngens:\nx*z\n";
        match Ideal::parse_text(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
