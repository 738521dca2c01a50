//! The SCA text format: a header with the basis, then one line per nonzero
//! structure constant.
//!
//! ```text
//! SCA 1
//! field GF2
//! sdim 6|8
//! basis 14
//! e xi1*eta1 0 0 0,0
//! ...
//! form 0
//! 0 3 7
//! sq 1 5
//! B 0 13
//! end
//! ```
//!
//! `i j k` (with `i <= j`) sets the coefficient of `e_k` in `[e_i, e_j]`,
//! `sq i k` the coefficient of `e_k` in `s(e_i)`, and `B i j` (with `i <= j`)
//! an entry of the form. Lines starting with `#` are comments.

use std::fmt::Write;

use gf2core::{BitMatrix, BitVector};
use liesuper::{BasisElement, BilinearFormTable, Parity, StructureConstants};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {reason}")]
pub struct ScaError {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaFile {
    pub comments: Vec<String>,
    pub alg: StructureConstants,
    pub form: Option<BilinearFormTable>,
}

fn weight_text(w: &[i32]) -> String {
    if w.is_empty() {
        "-".into()
    } else {
        w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub fn write_sca(file: &ScaFile) -> String {
    let g = &file.alg;
    let n = g.dim();
    let mut out = String::new();
    for c in &file.comments {
        writeln!(out, "# {c}").unwrap();
    }
    let (e, o) = g.sdim();
    writeln!(out, "SCA 1\nfield GF2\nsdim {e}|{o}\nbasis {n}").unwrap();
    for b in g.basis() {
        writeln!(out, "e {} {} {} {}", b.name, b.parity.bit(), b.degree, weight_text(&b.weight)).unwrap();
    }
    if let Some(f) = &file.form {
        writeln!(out, "form {}", f.parity.bit()).unwrap();
    }
    for i in 0..n {
        for j in i..n {
            for k in g.bracket_basis(i, j).iter_ones() {
                writeln!(out, "{i} {j} {k}").unwrap();
            }
        }
    }
    for i in 0..n {
        if let Some(s) = g.square_basis(i) {
            for k in s.iter_ones() {
                writeln!(out, "sq {i} {k}").unwrap();
            }
        }
    }
    if let Some(f) = &file.form {
        for i in 0..n {
            for j in f.gram.row(i).iter_ones().filter(|&j| j >= i) {
                writeln!(out, "B {i} {j}").unwrap();
            }
        }
    }
    out.push_str("end\n");
    out
}

pub fn parse_sca(text: &str) -> Result<ScaFile, ScaError> {
    let err = |line: usize, reason: &str| ScaError { line, reason: reason.to_string() };
    let mut comments = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if let Some(c) = t.strip_prefix('#') {
            comments.push(c.trim().to_string());
        } else if !t.is_empty() {
            lines.push((i + 1, t));
        }
    }
    let mut it = lines.into_iter();
    let mut expect = |want: &str| -> Result<(usize, String), ScaError> {
        let (l, t) = it.next().ok_or_else(|| err(0, &format!("missing {want}")))?;
        let rest = t.strip_prefix(want).ok_or_else(|| err(l, &format!("expected {want}")))?;
        Ok((l, rest.trim().to_string()))
    };
    let (l, v) = expect("SCA")?;
    if v != "1" {
        return Err(err(l, "unsupported format version"));
    }
    let (l, v) = expect("field")?;
    if v != "GF2" {
        return Err(err(l, "field must be GF2"));
    }
    let (sdim_line, sdim) = expect("sdim")?;
    let (l, v) = expect("basis")?;
    let n: usize = v.parse().map_err(|_| err(l, "bad basis count"))?;
    let mut basis = Vec::with_capacity(n);
    for _ in 0..n {
        let (l, v) = expect("e ")?;
        let f: Vec<&str> = v.split_whitespace().collect();
        if f.len() != 4 {
            return Err(err(l, "basis record needs name, parity, degree, weight"));
        }
        let parity = match f[1] {
            "0" => Parity::Even,
            "1" => Parity::Odd,
            _ => return Err(err(l, "bad parity")),
        };
        let degree = f[2].parse().map_err(|_| err(l, "bad degree"))?;
        let weight = if f[3] == "-" {
            Vec::new()
        } else {
            f[3].split(',').map(|x| x.parse().map_err(|_| err(l, "bad weight"))).collect::<Result<_, _>>()?
        };
        basis.push(BasisElement::new(f[0], parity, degree, weight));
    }
    let mut g = StructureConstants::abelian(basis);
    let (e, o) = g.sdim();
    if sdim != format!("{e}|{o}") {
        return Err(err(sdim_line, "sdim does not match the basis"));
    }
    let mut brackets = vec![BitVector::zeros(n); n * n];
    let mut squares: Vec<Option<BitVector>> = vec![None; n];
    let mut form_parity = None;
    let mut gram = BitMatrix::zeros(n, n);
    let mut ended = false;
    let index = |l: usize, s: &str| -> Result<usize, ScaError> {
        let i: usize = s.parse().map_err(|_| err(l, "bad index"))?;
        if i < n {
            Ok(i)
        } else {
            Err(err(l, "index out of range"))
        }
    };
    for (l, t) in it {
        if ended {
            return Err(err(l, "content after end"));
        }
        let f: Vec<&str> = t.split_whitespace().collect();
        match f.as_slice() {
            ["end"] => ended = true,
            ["form", p] => {
                form_parity = Some(match *p {
                    "0" => Parity::Even,
                    "1" => Parity::Odd,
                    _ => return Err(err(l, "bad form parity")),
                })
            }
            ["sq", i, k] => {
                let (i, k) = (index(l, i)?, index(l, k)?);
                if !g.parity(i).is_odd() {
                    return Err(err(l, "square of an even basis vector"));
                }
                squares[i].get_or_insert_with(|| BitVector::zeros(n)).set(k, true);
            }
            ["B", i, j] => {
                let (i, j) = (index(l, i)?, index(l, j)?);
                if i > j {
                    return Err(err(l, "form entries need i <= j"));
                }
                gram.set(i, j, true);
                gram.set(j, i, true);
            }
            [i, j, k] => {
                let (i, j, k) = (index(l, i)?, index(l, j)?, index(l, k)?);
                if i > j {
                    return Err(err(l, "bracket entries need i <= j"));
                }
                brackets[i * n + j].set(k, true);
            }
            _ => return Err(err(l, "unrecognised line")),
        }
    }
    if !ended {
        return Err(err(0, "missing end"));
    }
    for i in 0..n {
        for j in i..n {
            let v = std::mem::replace(&mut brackets[i * n + j], BitVector::zeros(0));
            if !v.is_zero() {
                g.set_bracket(i, j, v);
            }
        }
        if let Some(s) = squares[i].take() {
            g.set_square(i, s);
        }
    }
    if form_parity.is_none() && !gram.is_zero() {
        return Err(err(0, "form entries without a form line"));
    }
    let form = form_parity.map(|p| BilinearFormTable::new(gram, p));
    Ok(ScaFile { comments, alg: g, form })
}
