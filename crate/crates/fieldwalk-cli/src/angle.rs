//! Angle arguments: plain radians, or literals built from `pi` such as
//! `pi/2`, `-pi/2`, `2pi/3`, `0.5pi`.

use std::f64::consts::PI;

pub fn parse_angle(input: &str) -> Result<f64, String> {
    let s = input.trim().to_ascii_lowercase().replace(' ', "");
    if let Ok(plain) = s.parse::<f64>() {
        return Ok(plain);
    }
    let Some(pi_at) = s.find("pi") else {
        return Err(format!("`{input}` is not a number or a pi literal"));
    };

    let (prefix, rest) = (&s[..pi_at], &s[pi_at + 2..]);
    let (sign, coefficient) = match prefix.strip_prefix('-') {
        Some(stripped) => (-1.0, stripped),
        None => (1.0, prefix.strip_prefix('+').unwrap_or(prefix)),
    };
    let coefficient = if coefficient.is_empty() {
        1.0
    } else {
        coefficient
            .parse::<f64>()
            .map_err(|_| format!("`{input}` has a malformed coefficient"))?
    };
    let denominator = if rest.is_empty() {
        1.0
    } else {
        rest.strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .filter(|d| *d != 0.0)
            .ok_or_else(|| format!("`{input}` has a malformed denominator"))?
    };
    Ok(sign * coefficient * PI / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_radians() {
        assert_eq!(parse_angle("1.5"), Ok(1.5));
        assert_eq!(parse_angle("-0.25"), Ok(-0.25));
    }

    #[test]
    fn pi_literals() {
        assert_eq!(parse_angle("pi"), Ok(PI));
        assert_eq!(parse_angle("-pi"), Ok(-PI));
        assert_eq!(parse_angle("pi/2"), Ok(PI / 2.0));
        assert_eq!(parse_angle("-pi/2"), Ok(-PI / 2.0));
        assert_eq!(parse_angle("2pi/3"), Ok(2.0 * PI / 3.0));
        assert_eq!(parse_angle("0.5pi"), Ok(0.5 * PI));
        assert_eq!(parse_angle("PI/6"), Ok(PI / 6.0));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_angle("twopi").is_err());
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("pi/x").is_err());
        assert!(parse_angle("").is_err());
    }
}
