//! Text syntax for permutations: disjoint cycle notation `(1,2,3)(4,5)`,
//! image-list notation `[2,3,1,5,4]`, identity `()`. Points are 1-based.

use super::{PermError, Permutation};

impl Permutation {
    /// Parses a permutation of the given degree. Cycle notation may omit
    /// fixed points; an image list must cover the full degree.
    pub fn parse(input: &str, degree: usize) -> Result<Permutation, PermError> {
        let s = input.trim();
        let err = |msg: &str| PermError::Parse(input.to_string(), msg.to_string());
        if s.is_empty() {
            return Err(err("empty string"));
        }
        if s.starts_with('[') {
            if !s.ends_with(']') {
                return Err(err("unterminated image list"));
            }
            let body = &s[1..s.len() - 1];
            let mut images = Vec::new();
            for tok in body.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    return Err(err("empty image entry"));
                }
                let v: usize = tok.parse().map_err(|_| err("invalid point"))?;
                if v == 0 || v > degree {
                    return Err(PermError::PointOutOfRange(v, degree));
                }
                images.push((v - 1) as u32);
            }
            if images.len() != degree {
                return Err(err("image list length does not match degree"));
            }
            return Permutation::from_images(images);
        }
        if !s.starts_with('(') {
            return Err(err("expected '(' or '['"));
        }
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(err("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| err("unterminated cycle"))?;
            let body = rest[1..close].trim();
            if !body.is_empty() {
                let mut cycle = Vec::new();
                for tok in body.split(',') {
                    let tok = tok.trim();
                    let v: usize = tok.parse().map_err(|_| err("invalid point"))?;
                    if v == 0 || v > degree {
                        return Err(PermError::PointOutOfRange(v, degree));
                    }
                    cycle.push((v - 1) as u32);
                }
                if cycle.len() > 1 {
                    cycles.push(cycle);
                }
            }
            rest = rest[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    /// 1-based image list, e.g. `2,1,3`.
    pub fn image_list_string(&self) -> String {
        self.images
            .iter()
            .map(|&x| (x + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Splits a comma-separated list of permutation strings, ignoring commas
/// inside parentheses or brackets.
pub fn split_perm_list(input: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in input.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().to_string());
                }
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}
