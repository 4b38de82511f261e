use std::fmt::Write as _;

use super::coupler::CouplerSpec;
use crate::format::{fixed_sig, FILE_DIGITS};
use crate::{Error, NetlistError, NetlistErrorKind, Real, Result};

/// One circuit element. Mode indices are 0-based here; the text format
/// uses 1-based indices.
#[derive(Debug, Clone, PartialEq)]
pub enum Element<T> {
    Dc {
        mode_a: usize,
        mode_b: usize,
        coupler: CouplerSpec<T>,
    },
    Phase {
        mode: usize,
        phase: T,
    },
}

/// Ordered elements over `n_modes` waveguides, applied first to last.
#[derive(Debug, Clone, PartialEq)]
pub struct Netlist<T> {
    n_modes: usize,
    elements: Vec<Element<T>>,
    labels: Vec<Option<String>>,
}

impl<T: Real> Netlist<T> {
    pub fn new(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::NoModes);
        }
        Ok(Self {
            n_modes,
            elements: Vec::new(),
            labels: Vec::new(),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn elements(&self) -> &[Element<T>] {
        &self.elements
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn push(&mut self, element: Element<T>, label: Option<&str>) -> Result<()> {
        let check = |m: usize| {
            if m < self.n_modes {
                Ok(())
            } else {
                Err(Error::ModeOutOfRange {
                    index: m,
                    modes: self.n_modes,
                })
            }
        };
        match &element {
            Element::Dc { mode_a, mode_b, .. } => {
                check(*mode_a)?;
                check(*mode_b)?;
                if mode_a == mode_b {
                    return Err(Error::InvalidEncoding(format!(
                        "coupler connects mode {} to itself",
                        mode_a + 1
                    )));
                }
            }
            Element::Phase { mode, .. } => check(*mode)?,
        }
        self.elements.push(element);
        self.labels.push(label.map(str::to_owned));
        Ok(())
    }

    pub fn push_dc(&mut self, mode_a: usize, mode_b: usize, coupler: CouplerSpec<T>, label: Option<&str>) -> Result<()> {
        self.push(Element::Dc { mode_a, mode_b, coupler }, label)
    }

    pub fn push_phase(&mut self, mode: usize, phase: T, label: Option<&str>) -> Result<()> {
        self.push(Element::Phase { mode, phase }, label)
    }

    /// Labels of the couplers, in element order.
    pub fn coupler_labels(&self) -> Vec<String> {
        self.elements
            .iter()
            .zip(&self.labels)
            .filter(|(e, _)| matches!(e, Element::Dc { .. }))
            .filter_map(|(_, l)| l.clone())
            .collect()
    }

    fn coupler_index(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .zip(&self.labels)
            .position(|(e, l)| matches!(e, Element::Dc { .. }) && l.as_deref() == Some(label))
            .ok_or_else(|| Error::UnknownLabel {
                label: label.to_owned(),
                available: self.coupler_labels(),
            })
    }

    /// Reflectivity of the coupler labelled `label`.
    pub fn eta(&self, label: &str) -> Result<T> {
        match &self.elements[self.coupler_index(label)?] {
            Element::Dc { coupler, .. } => Ok(coupler.eta()),
            Element::Phase { .. } => unreachable!(),
        }
    }

    /// Replaces the reflectivity of the coupler labelled `label`,
    /// keeping its recorded uncertainty.
    pub fn set_eta(&mut self, label: &str, eta: T) -> Result<()> {
        let idx = self.coupler_index(label)?;
        if let Element::Dc { coupler, .. } = &mut self.elements[idx] {
            *coupler = match coupler.uncertainty() {
                Some(u) => CouplerSpec::with_uncertainty(eta, u)?,
                None => CouplerSpec::new(eta)?,
            };
        }
        Ok(())
    }

    /// Writes the `.pqc` text form.
    pub fn to_pqc(&self) -> String {
        let num = |x: T| fixed_sig(x.as_f64(), FILE_DIGITS);
        let mut out = String::from("# pqc v1\n");
        writeln!(out, "modes {}", self.n_modes).unwrap();
        for (element, label) in self.elements.iter().zip(&self.labels) {
            match element {
                Element::Dc { mode_a, mode_b, coupler } => {
                    write!(out, "dc {} {} {}", mode_a + 1, mode_b + 1, num(coupler.eta())).unwrap();
                    if let Some(u) = coupler.uncertainty() {
                        write!(out, " ±{}", num(u)).unwrap();
                    }
                }
                Element::Phase { mode, phase } => {
                    write!(out, "ph {} {}", mode + 1, num(*phase)).unwrap();
                }
            }
            if let Some(l) = label {
                write!(out, " #{l}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Parses the line-oriented `.pqc` netlist format.
///
/// ```text
/// # pqc v1
/// modes 2
/// dc 1 2 0.5 ±0.001 #balanced
/// ph 2 1.5707963268
/// ```
///
/// `#` starts a comment; on an element line the comment text becomes the
/// element's label.
pub fn parse_netlist<T: Real>(text: &str) -> Result<Netlist<T>, NetlistError> {
    let mut netlist: Option<Netlist<T>> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let err = |kind| NetlistError { line, kind };
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c.trim())),
            None => (raw, None),
        };
        let mut tokens = body.split_whitespace();
        let Some(directive) = tokens.next() else {
            continue;
        };
        let args: Vec<&str> = tokens.collect();
        let label = comment.filter(|c| !c.is_empty());

        if directive == "modes" {
            if netlist.is_some() {
                return Err(err(NetlistErrorKind::DuplicateModes));
            }
            let [m] = args.as_slice() else {
                return Err(err(NetlistErrorKind::WrongArity {
                    directive: "modes",
                    expected: "one mode count",
                }));
            };
            let m: usize = m.parse().map_err(|_| err(NetlistErrorKind::BadNumber(m.to_string())))?;
            netlist = Some(Netlist::new(m).map_err(|_| err(NetlistErrorKind::ModeOutOfRange { index: 0, modes: 0 }))?);
            continue;
        }

        let Some(net) = netlist.as_mut() else {
            return Err(err(match directive {
                "dc" | "ph" => NetlistErrorKind::MissingModes,
                other => NetlistErrorKind::UnknownDirective(other.to_string()),
            }));
        };
        let modes = net.n_modes;
        let mode = |tok: &str| -> Result<usize, NetlistError> {
            let i: i64 = tok.parse().map_err(|_| err(NetlistErrorKind::BadNumber(tok.to_string())))?;
            if i < 1 || i as usize > modes {
                return Err(err(NetlistErrorKind::ModeOutOfRange { index: i, modes }));
            }
            Ok(i as usize - 1)
        };
        let number = |tok: &str| -> Result<f64, NetlistError> {
            tok.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| err(NetlistErrorKind::BadNumber(tok.to_string())))
        };

        match directive {
            "dc" => {
                let (a, b, eta, unc) = match args.as_slice() {
                    [a, b, eta] => (a, b, eta, None),
                    [a, b, eta, unc] => (a, b, eta, Some(strip_pm(unc))),
                    [a, b, eta, "±" | "+-", unc] => (a, b, eta, Some(*unc)),
                    _ => {
                        return Err(err(NetlistErrorKind::WrongArity {
                            directive: "dc",
                            expected: "`dc <a> <b> <eta> [±<unc>]`",
                        }))
                    }
                };
                let (a, b) = (mode(a)?, mode(b)?);
                if a == b {
                    return Err(err(NetlistErrorKind::SameMode(a + 1)));
                }
                let eta = number(eta)?;
                if !(0.0..=1.0).contains(&eta) {
                    return Err(err(NetlistErrorKind::ReflectivityOutOfRange(eta)));
                }
                let eta = T::lit(eta);
                let coupler = match unc {
                    None => CouplerSpec::new(eta),
                    Some(u) => {
                        let u = number(u)?;
                        if u < 0.0 {
                            return Err(err(NetlistErrorKind::BadNumber(format!("±{u}"))));
                        }
                        CouplerSpec::with_uncertainty(eta, T::lit(u))
                    }
                }
                .map_err(|_| err(NetlistErrorKind::ReflectivityOutOfRange(eta.as_f64())))?;
                net.push_dc(a, b, coupler, label).expect("indices validated above");
            }
            "ph" => {
                let [m, phase] = args.as_slice() else {
                    return Err(err(NetlistErrorKind::WrongArity {
                        directive: "ph",
                        expected: "`ph <mode> <radians>`",
                    }));
                };
                let m = mode(m)?;
                let phase = T::lit(number(phase)?);
                net.push_phase(m, phase, label).expect("index validated above");
            }
            other => return Err(err(NetlistErrorKind::UnknownDirective(other.to_string()))),
        }
    }
    netlist.ok_or(NetlistError {
        line: last_line.max(1),
        kind: NetlistErrorKind::Empty,
    })
}

fn strip_pm(tok: &str) -> &str {
    tok.strip_prefix('±')
        .or_else(|| tok.strip_prefix("+-"))
        .unwrap_or(tok)
}
