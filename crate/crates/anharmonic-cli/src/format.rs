//! Number formatting shared by every command.

/// `x` with 12 significant digits, positional for exponents in `[−5, 12)`.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..12).contains(&exp) {
        format!("{:.*}", (11 - exp) as usize, x)
    } else {
        sci
    }
}

/// Ordered `key value` report, rendered aligned or as `key=value` lines.
#[derive(Debug, Default, Clone)]
pub struct Report {
    rows: Vec<(String, String)>,
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.rows.push((key.into(), value.into()));
    }

    pub fn num(&mut self, key: impl Into<String>, value: f64) {
        self.push(key, num(value));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.rows.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, key_value: bool) -> String {
        let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.rows {
            if key_value {
                out.push_str(&format!("{k}={v}\n"));
            } else {
                out.push_str(&format!("{k:<width$}  {v}\n"));
            }
        }
        out
    }
}
