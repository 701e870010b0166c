//! Plain-text stream files.
//!
//! ```text
//! q 5
//! modulus -
//! alpha 2
//! n 4
//! k 1
//! m 2
//! role codeword
//! data
//! 2 4 3 1
//! 1 1 3 0
//! ```
//!
//! Header lines are `key value`; every line after `data` is one block of
//! space-separated symbols in the canonical integer encoding. Lines starting
//! with `#` are ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::convcode::SymbolStream;
use crate::dcc::CodeParams;
use crate::gf::Elem;

use super::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Message,
    Codeword,
    Received,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Message => "message",
            Role::Codeword => "codeword",
            Role::Received => "received",
        }
    }
}

impl FromStr for Role {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "message" => Ok(Role::Message),
            "codeword" => Ok(Role::Codeword),
            "received" => Ok(Role::Received),
            other => Err(HarnessError::Data(format!("unknown role '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamFile {
    pub params: CodeParams,
    pub role: Role,
    pub stream: SymbolStream,
}

impl StreamFile {
    /// Checks widths and symbol ranges against the code parameters.
    pub fn new(params: CodeParams, role: Role, stream: SymbolStream) -> Result<Self, HarnessError> {
        let width = expected_width(&params, role);
        if stream.width() != width {
            return Err(HarnessError::Data(format!("{} blocks have width {}, expected {width}", role.as_str(), stream.width())));
        }
        if let Some(&bad) = stream.blocks().iter().flatten().find(|&&x| x >= params.q) {
            return Err(HarnessError::Data(format!("symbol {bad} is not below q = {}", params.q)));
        }
        Ok(StreamFile { params, role, stream })
    }

    pub fn serialize(&self) -> String {
        let p = &self.params;
        let mut out = String::new();
        let modulus = match &p.modulus {
            Some(c) => c.iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
            None => "-".to_string(),
        };
        let _ = writeln!(out, "q {}", p.q);
        let _ = writeln!(out, "modulus {modulus}");
        let _ = writeln!(out, "alpha {}", p.alpha);
        let _ = writeln!(out, "n {}", p.q - 1);
        let _ = writeln!(out, "k {}", p.k);
        let _ = writeln!(out, "m {}", p.m);
        let _ = writeln!(out, "role {}", self.role.as_str());
        out.push_str("data\n");
        for block in self.stream.blocks() {
            let line: Vec<String> = block.iter().map(Elem::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let bad = |msg: String| HarnessError::Data(msg);
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let mut header = std::collections::BTreeMap::new();
        loop {
            let line = lines.next().ok_or_else(|| bad("missing 'data' line".into()))?;
            if line == "data" {
                break;
            }
            let (key, value) = line.split_once(char::is_whitespace).ok_or_else(|| bad(format!("bad header line '{line}'")))?;
            header.insert(key.to_string(), value.trim().to_string());
        }
        let get = |key: &str| header.get(key).ok_or_else(|| bad(format!("header is missing '{key}'")));
        let num = |key: &str| -> Result<u64, HarnessError> {
            get(key)?.parse().map_err(|_| bad(format!("header '{key}' is not a number")))
        };
        let modulus = match get("modulus")?.as_str() {
            "-" => None,
            list => Some(
                list.split_whitespace()
                    .map(|c| c.parse().map_err(|_| bad(format!("bad modulus coefficient '{c}'"))))
                    .collect::<Result<Vec<u32>, _>>()?,
            ),
        };
        let q = u32::try_from(num("q")?).map_err(|_| bad("q out of range".into()))?;
        let (k, m, n) = (num("k")? as usize, num("m")? as usize, num("n")?);
        let role: Role = get("role")?.parse()?;
        let alpha = num("alpha")? as Elem;
        if n + 1 != q as u64 {
            return Err(bad(format!("n = {n} does not match q = {q}")));
        }
        let params = CodeParams::resolve(q, modulus, Some(alpha), k, m)
            .map_err(|e| HarnessError::Parameter(e.to_string()))?;
        let width = expected_width(&params, role);
        let mut stream = SymbolStream::new(width);
        for (i, line) in lines.enumerate() {
            let block = line
                .split_whitespace()
                .map(|s| s.parse::<Elem>().map_err(|_| bad(format!("block {i}: bad symbol '{s}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            if block.len() != width {
                return Err(bad(format!("block {i} has {} symbols, expected {width}", block.len())));
            }
            stream.push(block).expect("width checked");
        }
        StreamFile::new(params, role, stream)
    }
}

fn expected_width(params: &CodeParams, role: Role) -> usize {
    match role {
        Role::Message => params.k,
        Role::Codeword | Role::Received => (params.q - 1) as usize,
    }
}
