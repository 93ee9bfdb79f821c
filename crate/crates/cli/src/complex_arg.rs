//! Parsing of complex scalars from command-line strings like "0.5",
//! "0.5+0.3i", "-1.2i" or "2-i".

use eberlein::{Error, C64};

pub fn parse_complex(text: &str) -> Result<C64, Error> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::InvalidSpec("empty complex literal".into()));
    }
    // pure real or pure imaginary
    if !s.ends_with('i') {
        return s
            .parse::<f64>()
            .map(|re| C64::new(re, 0.0))
            .map_err(|_| bad(text));
    }
    let body = &s[..s.len() - 1];
    // split at the last +/- that is not an exponent sign or leading sign
    let mut split = None;
    for (idx, ch) in body.char_indices().skip(1) {
        if (ch == '+' || ch == '-') && !matches!(body.as_bytes()[idx - 1], b'e' | b'E') {
            split = Some(idx);
        }
    }
    match split {
        None => parse_imag(body).map(|im| C64::new(0.0, im)).ok_or_else(|| bad(text)),
        Some(idx) => {
            let re: f64 = body[..idx].parse().map_err(|_| bad(text))?;
            let im = parse_imag(&body[idx..]).ok_or_else(|| bad(text))?;
            Ok(C64::new(re, im))
        }
    }
}

fn parse_imag(part: &str) -> Option<f64> {
    match part {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        other => other.parse().ok(),
    }
}

fn bad(text: &str) -> Error {
    Error::InvalidSpec(format!("cannot parse '{text}' as a complex number"))
}

pub fn parse_complex_list(text: &str) -> Result<Vec<C64>, Error> {
    text.split(',').map(parse_complex).collect()
}

pub fn parse_real_list(text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidSpec(format!("cannot parse '{p}' as a real number")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_complex("0.5").unwrap(), C64::new(0.5, 0.0));
        assert_eq!(parse_complex("0.5+0.3i").unwrap(), C64::new(0.5, 0.3));
        assert_eq!(parse_complex("1+2i").unwrap(), C64::new(1.0, 2.0));
        assert_eq!(parse_complex("-1.2i").unwrap(), C64::new(0.0, -1.2));
        assert_eq!(parse_complex("2-i").unwrap(), C64::new(2.0, -1.0));
        assert_eq!(parse_complex("i").unwrap(), C64::new(0.0, 1.0));
        assert_eq!(parse_complex("1e-3+2e-4i").unwrap(), C64::new(1e-3, 2e-4));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+2j").is_err());
        assert!(parse_complex("").is_err());
    }
}
