use std::fmt;

use crate::{FuncError, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormType {
    /// Zero diagonal: the part splits into pairs (plus one θ in odd dimension).
    Pi,
    /// Nonzero diagonal: two self-paired indeterminates, the rest in pairs.
    I,
}

impl FormType {
    fn letter(self) -> &'static str {
        match self {
            FormType::Pi => "Pi",
            FormType::I => "I",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Xi,
    Eta,
    Theta,
    Q,
    P,
    Pi,
    Z,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarSpec {
    pub name: String,
    pub parity: Parity,
    pub role: Role,
    pub pair_index: Option<usize>,
    pub weight_entry: i32,
}

/// The algebras studied: h_B(a|b) for a form B given part by part, and le(n|n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    H { even: usize, odd: usize, even_form: FormType, odd_form: FormType },
    Le { n: usize },
}

impl Family {
    /// Parses a form tag (`Pi`, `I`, `PiPi`, `PiI`, `IPi`, `II`).
    ///
    /// A one-letter tag applies to every part. Parts of odd or zero
    /// dimension have a forced shape and are normalized to `Pi`.
    pub fn h(form: &str, even: usize, odd: usize) -> Result<Family, FuncError> {
        let (e, o) = match form {
            "Pi" => (FormType::Pi, FormType::Pi),
            "I" => (FormType::I, FormType::I),
            "PiPi" => (FormType::Pi, FormType::Pi),
            "PiI" => (FormType::Pi, FormType::I),
            "IPi" => (FormType::I, FormType::Pi),
            "II" => (FormType::I, FormType::I),
            other => return Err(FuncError::IllegalFamily(format!("unknown form tag {other:?}"))),
        };
        if even + odd == 0 || even + odd > 24 {
            return Err(FuncError::IllegalFamily(format!("unsupported size ({even}|{odd})")));
        }
        let norm = |dim: usize, t: FormType| if dim % 2 == 0 && dim > 0 { t } else { FormType::Pi };
        Ok(Family::H { even, odd, even_form: norm(even, e), odd_form: norm(odd, o) })
    }

    pub fn le(n: usize) -> Result<Family, FuncError> {
        if n == 0 || 2 * n > 24 {
            return Err(FuncError::IllegalFamily(format!("unsupported le({n}|{n})")));
        }
        Ok(Family::Le { n })
    }

    pub fn dims(&self) -> (usize, usize) {
        match *self {
            Family::H { even, odd, .. } => (even, odd),
            Family::Le { n } => (n, n),
        }
    }

    pub fn nvars(&self) -> usize {
        let (a, b) = self.dims();
        a + b
    }

    /// The form tag, with forced parts shown as `Pi`.
    pub fn form_tag(&self) -> String {
        match *self {
            Family::H { even, odd, even_form, odd_form } => match (even, odd) {
                (0, _) => odd_form.letter().to_string(),
                (_, 0) => even_form.letter().to_string(),
                _ => format!("{}{}", even_form.letter(), odd_form.letter()),
            },
            Family::Le { .. } => "Pi".to_string(),
        }
    }

    /// Short ASCII label such as `h_Pi(0|4)`, `h(0|5)`, `le(2|2)`.
    pub fn label(&self) -> String {
        match *self {
            Family::H { even, odd, .. } => {
                let chosen = [even, odd].iter().any(|&d| d > 0 && d % 2 == 0);
                if chosen {
                    format!("h_{}({even}|{odd})", self.form_tag())
                } else {
                    format!("h({even}|{odd})")
                }
            }
            Family::Le { n } => format!("le({n}|{n})"),
        }
    }

    pub(crate) fn layout(&self) -> Result<(Vec<VarSpec>, Vec<(usize, usize)>, Vec<usize>), FuncError> {
        let mut vars = Vec::new();
        let mut pairs = Vec::new();
        let mut diagonals = Vec::new();
        let push = |vars: &mut Vec<VarSpec>, name: String, parity, role, pair_index, weight_entry| {
            vars.push(VarSpec { name, parity, role, pair_index, weight_entry });
            vars.len() - 1
        };
        match *self {
            Family::Le { n } => {
                for i in 0..n {
                    let k = pairs.len();
                    let q = push(&mut vars, format!("q{}", i + 1), Parity::Even, Role::Q, Some(k), -1);
                    let pi = push(&mut vars, format!("pi{}", i + 1), Parity::Odd, Role::Pi, Some(k), 1);
                    pairs.push((pi, q));
                }
            }
            Family::H { even, odd, even_form, odd_form } => {
                let parts = [
                    (Parity::Even, even, even_form, ("z", Role::Z), ("p", Role::P), ("q", Role::Q)),
                    (Parity::Odd, odd, odd_form, ("th", Role::Theta), ("xi", Role::Xi), ("eta", Role::Eta)),
                ];
                for (parity, dim, form, diag, plus, minus) in parts {
                    if dim == 0 {
                        continue;
                    }
                    let ndiag = if dim % 2 == 1 {
                        1
                    } else if form == FormType::I {
                        2
                    } else {
                        0
                    };
                    for t in 0..ndiag {
                        let i = push(&mut vars, format!("{}{}", diag.0, t + 1), parity, diag.1, None, 0);
                        diagonals.push(i);
                    }
                    for i in 0..(dim - ndiag) / 2 {
                        let k = pairs.len();
                        let x = push(&mut vars, format!("{}{}", plus.0, i + 1), parity, plus.1, Some(k), 1);
                        let y = push(&mut vars, format!("{}{}", minus.0, i + 1), parity, minus.1, Some(k), -1);
                        pairs.push((x, y));
                    }
                }
            }
        }
        Ok((vars, pairs, diagonals))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}
