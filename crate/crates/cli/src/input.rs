use std::io::Read;
use std::path::Path;

use segre_geom::json::StateDocument;
use segre_geom::random::ExactSampler;
use segre_geom::state::DEFAULT_MAX_QUBITS;
use segre_geom::{fixtures, Error};
use serde_json::Value;

use crate::{Failure, StateInput};

fn read_source(path: &Path, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure::input(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

pub fn load_json(path: &Path, stdin: &mut dyn Read) -> Result<Value, Failure> {
    let text = read_source(path, stdin)?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn load_state(src: &StateInput, stdin: &mut dyn Read) -> Result<StateDocument, Failure> {
    if let Some(words) = &src.random {
        let (m, seed) = parse_random_args(words)?;
        let state = ExactSampler::new(seed).state(m);
        return Ok(StateDocument::from_state(
            &state,
            Some(format!("random m={m} seed={seed}")),
        ));
    }
    if let Some(name) = &src.fixture {
        let fixture = fixtures::find(name).ok_or_else(|| {
            let names: Vec<_> = fixtures::FIXTURES.iter().map(|f| f.name).collect();
            Failure::input(format!(
                "unknown fixture '{name}' (known: {})",
                names.join(", ")
            ))
        })?;
        return Ok(fixture.document()?);
    }
    let path = src
        .path
        .as_deref()
        .ok_or_else(|| Failure::input("no input: give a path, --fixture or --random"))?;
    let text = read_source(path, stdin)?;
    StateDocument::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Parses `m=<k> seed=<n>`, given as one or two words, comma separated or not.
pub fn parse_random_args(words: &[String]) -> Result<(usize, u64), Failure> {
    let mut m = None;
    let mut seed = 0;
    for item in words
        .iter()
        .flat_map(|w| w.split([',', ' ']))
        .filter(|s| !s.is_empty())
    {
        let bad = || {
            Failure::input(format!(
                "bad --random item '{item}', expected m=<k> or seed=<n>"
            ))
        };
        let (key, value) = item.split_once('=').ok_or_else(bad)?;
        match key {
            "m" => m = Some(value.parse::<usize>().map_err(|_| bad())?),
            "seed" => seed = value.parse().map_err(|_| bad())?,
            _ => return Err(bad()),
        }
    }
    let m = m.ok_or_else(|| Failure::input("--random needs m=<k>"))?;
    if m == 0 {
        return Err(Error::NoQubits.into());
    }
    if m > DEFAULT_MAX_QUBITS {
        return Err(Error::TooManyQubits {
            m,
            limit: DEFAULT_MAX_QUBITS,
        }
        .into());
    }
    Ok((m, seed))
}
