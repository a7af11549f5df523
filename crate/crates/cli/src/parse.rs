//! Parsers for the phase and noise command-line arguments.

use std::fmt;

use qpe_core::{NoiseModel, PhaseFraction};

/// Parse failure with the byte offset where the input stopped making sense.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl fmt::Display) -> Self {
        ParseError {
            position,
            message: message.to_string(),
        }
    }
}

/// Accepts a binary fraction `0.1011` or a dyadic rational `11/16`.
///
/// A rational `p/2^m` keeps exactly `m` bits, so `11/16` and `0.1011` parse
/// to the same value. Denominator 1 is rejected since a phase needs at least
/// one bit.
pub fn parse_phase(text: &str) -> Result<PhaseFraction, ParseError> {
    if let Some(slash) = text.find('/') {
        return parse_rational(text, slash);
    }
    let Some(digits) = text.strip_prefix("0.") else {
        let at = text.bytes().zip(*b"0.").take_while(|(a, b)| a == b).count();
        return Err(ParseError::new(
            at,
            "expected a binary fraction such as 0.1011 or a ratio such as 11/16",
        ));
    };
    if digits.is_empty() {
        return Err(ParseError::new(2, "expected at least one binary digit"));
    }
    if let Some(bad) = digits.find(|c| c != '0' && c != '1') {
        return Err(ParseError::new(
            2 + bad,
            "binary fraction digits must be 0 or 1",
        ));
    }
    PhaseFraction::from_bitstring(digits).map_err(|e| ParseError::new(2, e))
}

fn parse_rational(text: &str, slash: usize) -> Result<PhaseFraction, ParseError> {
    let (num_text, den_text) = (&text[..slash], &text[slash + 1..]);
    let num = parse_decimal(num_text, 0)?;
    let den = parse_decimal(den_text, slash + 1)?;
    if den == 0 {
        return Err(ParseError::new(slash + 1, "denominator must be positive"));
    }
    if !den.is_power_of_two() {
        return Err(ParseError::new(
            slash + 1,
            format!("denominator {den} is not a power of two"),
        ));
    }
    let width = den.trailing_zeros();
    if width == 0 {
        return Err(ParseError::new(slash + 1, "denominator must be at least 2"));
    }
    if num >= den {
        return Err(ParseError::new(0, format!("{num}/{den} is not below one")));
    }
    PhaseFraction::from_numerator(num, width).map_err(|e| ParseError::new(slash + 1, e))
}

fn parse_decimal(text: &str, offset: usize) -> Result<u64, ParseError> {
    if text.is_empty() {
        return Err(ParseError::new(offset, "expected a decimal integer"));
    }
    if let Some(bad) = text.find(|c: char| !c.is_ascii_digit()) {
        return Err(ParseError::new(offset + bad, "expected a decimal digit"));
    }
    text.parse()
        .map_err(|_| ParseError::new(offset, "integer is too large"))
}

/// Accepts `default`, `none`, or `readout=R,depol1=A,depol2=B` with any subset
/// of keys; missing keys are zero.
pub fn parse_noise(text: &str) -> Result<NoiseModel, ParseError> {
    match text {
        "default" => return Ok(NoiseModel::default()),
        "none" => return Ok(NoiseModel::noiseless()),
        _ => {}
    }
    let mut model = NoiseModel::noiseless();
    let mut offset = 0;
    for item in text.split(',') {
        let Some((key, value)) = item.split_once('=') else {
            return Err(ParseError::new(offset, "expected key=value"));
        };
        let value_at = offset + key.len() + 1;
        let p: f64 = value
            .parse()
            .map_err(|_| ParseError::new(value_at, format!("{value:?} is not a number")))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(ParseError::new(value_at, "probability must be in [0, 1]"));
        }
        match key {
            "readout" => model.readout_flip = p,
            "depol1" => model.depol_1q = p,
            "depol2" => model.depol_2q = p,
            other => {
                return Err(ParseError::new(
                    offset,
                    format!("unknown noise key {other:?}; expected readout, depol1 or depol2"),
                ))
            }
        }
        offset += item.len() + 1;
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_and_rational_forms_agree() {
        let a = parse_phase("0.1011").unwrap();
        assert_eq!(a.bitstring(), "1011");
        assert_eq!(a.value(), 0.6875);
        assert_eq!(parse_phase("11/16").unwrap(), a);
        assert_eq!(parse_phase("1/2").unwrap().bitstring(), "1");
        assert_eq!(parse_phase("2/8").unwrap().bitstring(), "010");
        assert_eq!(parse_phase("0/4").unwrap().bitstring(), "00");
    }

    #[test]
    fn malformed_phases_report_positions() {
        let err = parse_phase("3/10").unwrap_err();
        assert_eq!(err.position, 2);
        assert!(err.message.contains("power of two"));
        assert_eq!(parse_phase("0.10a1").unwrap_err().position, 4);
        assert_eq!(parse_phase("1.01").unwrap_err().position, 0);
        assert_eq!(parse_phase("0.").unwrap_err().position, 2);
        assert_eq!(parse_phase("0,1").unwrap_err().position, 1);
        assert_eq!(parse_phase("x/4").unwrap_err().position, 0);
        assert_eq!(parse_phase("1/").unwrap_err().position, 2);
        assert!(parse_phase("16/16").is_err());
        assert!(parse_phase("1/1").is_err());
        assert!(parse_phase("1/0").is_err());
        assert!(parse_phase("").is_err());
    }

    #[test]
    fn noise_specs() {
        assert_eq!(parse_noise("default").unwrap(), NoiseModel::default());
        assert!(parse_noise("none").unwrap().is_noiseless());
        let m = parse_noise("readout=0.1,depol2=0.05").unwrap();
        assert_eq!((m.readout_flip, m.depol_1q, m.depol_2q), (0.1, 0.0, 0.05));
        assert_eq!(
            parse_noise("readout=0.1,depol1=x").unwrap_err().position,
            19
        );
        assert_eq!(parse_noise("readout=2").unwrap_err().position, 8);
        assert_eq!(
            parse_noise("readout=0.1,bogus=0.2").unwrap_err().position,
            12
        );
        assert!(parse_noise("readout").is_err());
    }
}
