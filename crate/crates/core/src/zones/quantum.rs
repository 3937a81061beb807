use serde::Serialize;

use crate::error::{Error, Result};

/// Sign branch of the magnetic quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MagneticSign {
    /// m ≥ 0: `p = n + l`, `q = n`.
    NonNegative,
    /// m < 0: `p = n`, `q = n + l`.
    Negative,
}

/// Holomorphic/antiholomorphic degrees and the derived total, magnetic,
/// azimuthal and radial quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuantumNumbers {
    pub p: u32,
    /// Antiholomorphic degree, equal to the zone index.
    pub q: u32,
    pub tau: u32,
    pub m: i64,
    pub l: u32,
    pub n: u32,
}

/// Either parametrization accepted by [`qn_convert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QnInput {
    Degrees { p: u32, q: u32 },
    Radial { n: u32, l: u32, sign: MagneticSign },
}

impl QuantumNumbers {
    pub fn from_degrees(p: u32, q: u32) -> Self {
        let m = i64::from(p) - i64::from(q);
        Self {
            p,
            q,
            tau: p + q,
            m,
            l: m.unsigned_abs() as u32,
            n: p.min(q),
        }
    }

    pub fn from_radial(n: u32, l: u32, sign: MagneticSign) -> Result<Self> {
        match sign {
            MagneticSign::NonNegative => Ok(Self::from_degrees(n + l, n)),
            MagneticSign::Negative if l == 0 => Err(Error::QuantumNumbers(
                "a negative magnetic number needs l >= 1".into(),
            )),
            MagneticSign::Negative => Ok(Self::from_degrees(n, n + l)),
        }
    }

    pub fn sign(&self) -> MagneticSign {
        if self.m >= 0 {
            MagneticSign::NonNegative
        } else {
            MagneticSign::Negative
        }
    }

    /// Zone index `a = q`.
    pub fn zone(&self) -> u32 {
        self.q
    }

    /// Check every defining relation between the six numbers.
    pub fn validate(&self) -> Result<()> {
        let (p, q) = (i64::from(self.p), i64::from(self.q));
        let checks = [
            (i64::from(self.tau) == p + q, "tau = p + q"),
            (self.m == 2 * p - i64::from(self.tau), "m = 2p - tau"),
            (i64::from(self.l) == (p - q).abs(), "l = |p - q|"),
            (self.tau == self.l + 2 * self.n, "tau = l + 2n"),
            (
                if self.m >= 0 { self.q == self.n } else { self.q == self.n + self.l },
                "q = n (m >= 0) or q = n + l (m < 0)",
            ),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, rule)) => Err(Error::QuantumNumbers(format!("{self:?} violates {rule}"))),
            None => Ok(()),
        }
    }
}

pub fn qn_convert(input: QnInput) -> Result<QuantumNumbers> {
    let qn = match input {
        QnInput::Degrees { p, q } => QuantumNumbers::from_degrees(p, q),
        QnInput::Radial { n, l, sign } => QuantumNumbers::from_radial(n, l, sign)?,
    };
    qn.validate()?;
    Ok(qn)
}
