//! Named special cases of the operator from the literature.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::OperatorParams;
use crate::error::{Error, Result};

/// Free parameters of a preset, keyed by name.
pub type PresetArgs = BTreeMap<String, Complex64>;

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub reference: &'static str,
    /// Free parameter names. Names ending in `?` are optional.
    pub free: &'static [&'static str],
    build: fn(&Args) -> Result<OperatorParams>,
}

impl Preset {
    pub fn build(&self, args: &PresetArgs) -> Result<OperatorParams> {
        for key in args.keys() {
            let known = self
                .free
                .iter()
                .any(|f| f.trim_end_matches('?') == key.as_str());
            if !known {
                return Err(Error::InvalidParams(format!(
                    "preset {} has no parameter {key:?} (free: {})",
                    self.name,
                    self.free.join(", ")
                )));
            }
        }
        let params = (self.build)(&Args {
            preset: self.name,
            map: args,
        })?;
        params.validate()?;
        Ok(params)
    }
}

struct Args<'a> {
    preset: &'static str,
    map: &'a PresetArgs,
}

impl Args<'_> {
    fn get(&self, key: &str) -> Result<Complex64> {
        self.map.get(key).copied().ok_or_else(|| {
            Error::InvalidParams(format!("preset {} needs parameter {key:?}", self.preset))
        })
    }

    fn real(&self, key: &str) -> Result<f64> {
        let v = self.get(key)?;
        if v.im != 0.0 {
            return Err(Error::InvalidParams(format!("{key} must be real, got {v}")));
        }
        Ok(v.re)
    }

    fn real_or(&self, key: &str, default: f64) -> Result<f64> {
        if self.map.contains_key(key) {
            self.real(key)
        } else {
            Ok(default)
        }
    }

    fn int(&self, key: &str) -> Result<i64> {
        let v = self.real(key)?;
        if v.fract() != 0.0 || v.abs() > 1e9 {
            return Err(Error::InvalidParams(format!(
                "{key} sets the integer exponent m and must be an integer, got {v}"
            )));
        }
        Ok(v as i64)
    }

    fn order(&self, key: &str) -> Result<u32> {
        let v = self.int(key)?;
        if v < 1 {
            return Err(Error::InvalidParams(format!("{key} must be at least 1, got {v}")));
        }
        Ok(v as u32)
    }

    fn nonneg_int(&self, key: &str) -> Result<i64> {
        let v = self.int(key)?;
        if v < 0 {
            return Err(Error::InvalidParams(format!("{key} must be >= 0, got {v}")));
        }
        Ok(v)
    }
}

fn raw(p: u32, m: i64, lambda: f64, ell: f64, mu: f64, a: Complex64, c: Complex64) -> OperatorParams {
    OperatorParams {
        p,
        m,
        lambda,
        ell,
        mu,
        a,
        c,
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn elashwah_n(a: &Args) -> Result<OperatorParams> {
    Ok(raw(
        1,
        -a.nonneg_int("n")?,
        a.real("lambda")?,
        a.real("l")?,
        a.real("mu")?,
        a.get("a")?,
        a.get("c")?,
    ))
}

fn elashwah_aouf(a: &Args) -> Result<OperatorParams> {
    let p = a.order("p")?;
    let nu = a.get("nu")?;
    Ok(raw(
        p,
        a.nonneg_int("m")?,
        a.real("lambda")?,
        a.real("l")?,
        1.0,
        re(p as f64) + nu,
        re(p as f64 + 1.0),
    ))
}

fn raina_sharma(a: &Args) -> Result<OperatorParams> {
    Ok(raw(
        1,
        a.nonneg_int("m")?,
        a.real("nu")?,
        a.real("lambda")?,
        1.0,
        a.get("a")? + 1.0,
        a.get("c")? + 1.0,
    ))
}

fn liu_srivastava(a: &Args) -> Result<OperatorParams> {
    let p = a.order("p")?;
    Ok(raw(
        p,
        0,
        1.0,
        1.0,
        1.0,
        a.get("a")? + p as f64,
        a.get("c")? + p as f64,
    ))
}

fn piejko_sokol(a: &Args) -> Result<OperatorParams> {
    Ok(raw(
        1,
        a.nonneg_int("beta")?,
        1.0,
        a.real("lambda")?,
        1.0,
        a.get("nu")? + 1.0,
        re(2.0),
    ))
}

fn cho_kwon_srivastava(a: &Args) -> Result<OperatorParams> {
    Ok(raw(
        1,
        a.nonneg_int("n")?,
        1.0,
        a.real("lambda")?,
        1.0,
        a.get("nu")? + 1.0,
        re(2.0),
    ))
}

fn yuan(a: &Args) -> Result<OperatorParams> {
    Ok(raw(
        1,
        0,
        a.real_or("lambda", 1.0)?,
        a.real_or("l", 1.0)?,
        1.0,
        a.get("nu")? + 1.0,
        re(a.real("n")? + 2.0),
    ))
}

fn uralegaddi_somanatha(a: &Args) -> Result<OperatorParams> {
    let p = a.order("p")?;
    let n = a.int("n")?;
    Ok(raw(
        p,
        0,
        a.real_or("lambda", 1.0)?,
        a.real_or("l", 1.0)?,
        1.0,
        re((n + 2 * p as i64) as f64),
        re(p as f64 + 1.0),
    ))
}

fn aqlan(a: &Args) -> Result<OperatorParams> {
    let alpha = a.get("a")?;
    Ok(raw(
        a.order("p")?,
        a.nonneg_int("alpha")?,
        1.0,
        1.0,
        a.real("mu")?,
        alpha,
        alpha,
    ))
}

fn lashin(a: &Args) -> Result<OperatorParams> {
    let alpha = a.get("a")?;
    Ok(raw(
        1,
        a.nonneg_int("alpha")?,
        1.0,
        a.real("beta")?,
        a.real("mu")?,
        alpha,
        alpha,
    ))
}

const CATALOG: &[Preset] = &[
    Preset {
        name: "elashwah-n",
        reference: "El-Ashwah operator I^n_{lambda,l}(a,c,mu), p = 1, m = -n",
        free: &["n", "lambda", "l", "mu", "a", "c"],
        build: elashwah_n,
    },
    Preset {
        name: "elashwah-aouf",
        reference: "El-Ashwah and Aouf operator, mu = 1, a = p + nu, c = p + 1",
        free: &["p", "m", "lambda", "l", "nu"],
        build: elashwah_aouf,
    },
    Preset {
        name: "raina-sharma",
        reference: "Raina and Sharma operator, p = 1, mu = 1, (lambda, l) -> (nu, lambda), (a, c) -> (a + 1, c + 1)",
        free: &["m", "lambda", "nu", "a", "c"],
        build: raina_sharma,
    },
    Preset {
        name: "liu-srivastava",
        reference: "Liu and Srivastava operator, m = 0, mu = 1, (a, c) -> (a + p, c + p)",
        free: &["p", "a", "c"],
        build: liu_srivastava,
    },
    Preset {
        name: "piejko-sokol",
        reference: "Piejko and Sokol operator, p = 1, m = beta, l = lambda, a = nu + 1, c = 2",
        free: &["beta", "lambda", "nu"],
        build: piejko_sokol,
    },
    Preset {
        name: "cho-kwon-srivastava",
        reference: "Cho, Kwon and Srivastava operator, p = 1, m = n, l = lambda, a = nu + 1, c = 2",
        free: &["n", "lambda", "nu"],
        build: cho_kwon_srivastava,
    },
    Preset {
        name: "yuan",
        reference: "Yuan operator, p = 1, m = 0, a = nu + 1, c = n + 2",
        free: &["n", "nu", "lambda?", "l?"],
        build: yuan,
    },
    Preset {
        name: "uralegaddi-somanatha",
        reference: "Uralegaddi and Somanatha operator, m = 0, a = n + 2p, c = p + 1",
        free: &["p", "n", "lambda?", "l?"],
        build: uralegaddi_somanatha,
    },
    Preset {
        name: "aqlan",
        reference: "Aqlan operator, lambda = l = 1, m = alpha, a = c",
        free: &["p", "alpha", "a", "mu"],
        build: aqlan,
    },
    Preset {
        name: "lashin",
        reference: "Lashin operator, p = 1, lambda = 1, l = beta, m = alpha, a = c",
        free: &["alpha", "beta", "a", "mu"],
        build: lashin,
    },
];

/// All presets, in a fixed order.
pub fn preset_catalog() -> &'static [Preset] {
    CATALOG
}

pub fn find_preset(name: &str) -> Result<&'static Preset> {
    CATALOG
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

/// Builds the parameters of a named preset.
pub fn preset(name: &str, args: &PresetArgs) -> Result<OperatorParams> {
    find_preset(name)?.build(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(pairs: &[(&str, f64)]) -> PresetArgs {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), Complex64::new(*v, 0.0)))
            .collect()
    }

    #[test]
    fn catalog_has_ten_unique_names() {
        let names: std::collections::BTreeSet<_> = CATALOG.iter().map(|p| p.name).collect();
        assert_eq!(names.len(), 10);
    }

    #[test]
    fn liu_srivastava_shifts() {
        let p = preset("liu-srivastava", &args(&[("p", 2.0), ("a", 1.5), ("c", 3.0)])).unwrap();
        assert_eq!((p.p, p.m, p.mu), (2, 0, 1.0));
        assert_eq!(p.a, Complex64::new(3.5, 0.0));
        assert_eq!(p.c, Complex64::new(5.0, 0.0));
    }

    #[test]
    fn elashwah_n_negative_m() {
        let p = preset(
            "elashwah-n",
            &args(&[("n", 2.0), ("lambda", 1.0), ("l", 2.0), ("mu", 0.5), ("a", 2.0), ("c", 3.0)]),
        )
        .unwrap();
        assert_eq!((p.p, p.m), (1, -2));
    }

    #[test]
    fn raina_sharma_roles() {
        let p = preset(
            "raina-sharma",
            &args(&[("m", 1.0), ("lambda", 3.0), ("nu", 0.5), ("a", 1.5), ("c", 2.0)]),
        )
        .unwrap();
        assert_eq!((p.lambda, p.ell), (0.5, 3.0));
        assert_eq!(p.a.re, 2.5);
        assert_eq!(p.c.re, 3.0);
    }

    #[test]
    fn rejects_fractional_exponent_and_unknown_keys() {
        let bad = preset(
            "piejko-sokol",
            &args(&[("beta", 0.5), ("lambda", 1.0), ("nu", 1.0)]),
        );
        assert!(matches!(bad, Err(Error::InvalidParams(_))));
        let unknown = preset("yuan", &args(&[("n", 1.0), ("nu", 1.0), ("zeta", 1.0)]));
        assert!(matches!(unknown, Err(Error::InvalidParams(_))));
        assert!(matches!(
            preset("nope", &PresetArgs::new()),
            Err(Error::UnknownPreset(_))
        ));
    }

    #[test]
    fn presets_outside_domain_rejected() {
        // a = n + 2p must exceed p mu = p
        let r = preset("uralegaddi-somanatha", &args(&[("p", 2.0), ("n", -2.0)]));
        assert!(matches!(r, Err(Error::InvalidParams(_))));
    }
}
