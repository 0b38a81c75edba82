//! Plain-text factorization specs: `key = value` and `key = [a, b, …]` lines,
//! `#` comments.

use std::collections::BTreeMap;

use bicrossx_core::groups::{eval_word, factorization_from_generators, split_gens, DEFAULT_ORDER_BOUND};
use bicrossx_core::{catalog, Factorization, FiniteGroup, Perm};

use crate::CliError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecFile {
    pub name: Option<String>,
    pub builtin: Option<String>,
    pub x_generators: Vec<String>,
    pub g_generators: Vec<String>,
    pub m_generators: Vec<String>,
    pub max_degree: Option<usize>,
    pub tensor_bound: Option<usize>,
    pub conductor: Option<u32>,
    pub format: Option<String>,
}

const KEYS: [&str; 9] = ["name", "builtin", "x.generators", "g.generators", "m.generators", "max_degree", "tensor_bound", "conductor", "format"];

fn list(value: &str) -> Vec<String> {
    let inner = value.trim().strip_prefix('[').and_then(|v| v.strip_suffix(']')).unwrap_or(value);
    split_gens(inner).into_iter().map(|s| unquote(&s).to_string()).filter(|s| !s.is_empty()).collect()
}

fn unquote(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('"').and_then(|v| v.strip_suffix('"')).unwrap_or(s)
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut seen = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| CliError::Validation(format!("spec line {}: expected `key = value`", lineno + 1)))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(CliError::Validation(format!("spec line {}: unknown key `{key}` (known: {})", lineno + 1, KEYS.join(", "))));
            }
            if seen.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(CliError::Validation(format!("spec line {}: duplicate key `{key}`", lineno + 1)));
            }
        }
        let number = |key: &str| -> Result<Option<usize>, CliError> {
            seen.get(key).map(|v| unquote(v).parse::<usize>().map_err(|_| CliError::Validation(format!("spec key `{key}` needs a non-negative integer, got `{v}`")))).transpose()
        };
        let spec = SpecFile {
            name: seen.get("name").map(|v| unquote(v).to_string()),
            builtin: seen.get("builtin").map(|v| unquote(v).to_string()),
            x_generators: seen.get("x.generators").map(|v| list(v)).unwrap_or_default(),
            g_generators: seen.get("g.generators").map(|v| list(v)).unwrap_or_default(),
            m_generators: seen.get("m.generators").map(|v| list(v)).unwrap_or_default(),
            max_degree: number("max_degree")?,
            tensor_bound: number("tensor_bound")?,
            conductor: number("conductor")?.map(|c| c as u32),
            format: seen.get("format").map(|v| unquote(v).to_string()),
        };
        let lists = ["x.generators", "g.generators", "m.generators"].iter().any(|k| seen.contains_key(*k));
        match (&spec.builtin, lists) {
            (Some(_), true) => Err(CliError::Validation("spec gives both `builtin` and generator lists; keep one".into())),
            (None, false) => Err(CliError::Validation("spec needs `builtin` or the lists x.generators, g.generators, m.generators".into())),
            (None, true) if !["x.generators", "g.generators", "m.generators"].iter().all(|k| seen.contains_key(*k)) => Err(CliError::Validation("spec needs all three of x.generators, g.generators, m.generators".into())),
            _ => Ok(spec),
        }
    }

    /// Generators of G and M may be permutations or words in the X generators
    /// x1, x2, ….
    pub fn factorization(&self) -> Result<Factorization, CliError> {
        let f = match &self.builtin {
            Some(name) => catalog(name)?,
            None => {
                let xs = self.x_generators.iter().map(|g| Perm::parse(g)).collect::<Result<Vec<_>, _>>()?;
                let labels: Vec<String> = (1..=xs.len()).map(|i| format!("x{i}")).collect();
                let x = FiniteGroup::generated_by(&xs, &labels, DEFAULT_ORDER_BOUND)?;
                let gens: Vec<usize> = x.generators().to_vec();
                let resolve = |items: &[String]| -> Result<Vec<Perm>, CliError> {
                    items
                        .iter()
                        .map(|g| {
                            if g.trim_start().starts_with('(') {
                                Ok(Perm::parse(g)?)
                            } else {
                                Ok(x.perm(eval_word(&x, &gens, &labels, g)?).clone())
                            }
                        })
                        .collect()
                };
                let name = self.name.clone().unwrap_or_else(|| "custom".into());
                factorization_from_generators(&name, &xs, &resolve(&self.g_generators)?, &resolve(&self.m_generators)?)?
            },
        };
        if let Some(c) = self.conductor {
            if c != f.conductor() {
                return Err(CliError::Validation(format!("conductor override {c} differs from the exponent {} of X; only the exponent is supported", f.conductor())));
            }
        }
        Ok(f)
    }
}
