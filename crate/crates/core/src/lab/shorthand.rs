//! Compact command-line forms for curves and test functions.
//!
//! Curves: `family[:key=value,...]` with families `circle` (`r`),
//! `polynomial` (`c`), `koch` (`level`), `square` (`side`), all taking `n`
//! for the sample count; anything else is read as a TOML or JSON file
//! holding one curve spec.
//!
//! Functions: `cos:N`, `sin:N`, `exp:N`, `const:V`, `pole:X,Y`,
//! `re-pole:X,Y`, `im-pole:X,Y`.

use std::path::Path;

use num_complex::Complex64 as C64;

use crate::curve::{square, CurveSpec};
use crate::error::{Error, Result};
use crate::seminorms::{BoundaryFunction, ParamFn};

const DEFAULT_SAMPLES: usize = 1024;

fn bad(what: &str, s: &str) -> Error {
    Error::Config(format!("cannot read {what} `{s}`"))
}

pub fn parse_curve_arg(s: &str) -> Result<CurveSpec> {
    let (family, rest) = s.split_once(':').unwrap_or((s, ""));
    let mut n = DEFAULT_SAMPLES;
    let mut num = std::collections::BTreeMap::new();
    for kv in rest.split(',').filter(|t| !t.is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| bad("curve parameter", kv))?;
        if k == "n" {
            n = v.parse().map_err(|_| bad("sample count", v))?;
        } else {
            let x: f64 = v.parse().map_err(|_| bad("curve parameter", kv))?;
            num.insert(k.to_string(), x);
        }
    }
    let get = |k: &str, default: Option<f64>| -> Result<f64> {
        num.get(k)
            .copied()
            .or(default)
            .ok_or_else(|| Error::Config(format!("curve `{family}` needs `{k}=`")))
    };
    let known = |keys: &[&str]| -> Result<()> {
        match num.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(Error::Config(format!(
                "curve `{family}` has no parameter `{k}`"
            ))),
            None => Ok(()),
        }
    };
    match family {
        "circle" => {
            known(&["r"])?;
            Ok(CurveSpec::circle(get("r", Some(1.0))?, n))
        }
        "polynomial" => {
            known(&["c"])?;
            Ok(CurveSpec::polynomial(get("c", None)?, n))
        }
        "koch" => {
            known(&["level"])?;
            let level = get("level", None)?;
            if level < 0.0 || level.fract() != 0.0 {
                return Err(bad("koch level", s));
            }
            Ok(CurveSpec::koch(level as u32, n))
        }
        "square" => {
            known(&["side"])?;
            Ok(CurveSpec::polygon(
                &square(get("side", Some(1.0))?, C64::new(0.0, 0.0)),
                n,
            ))
        }
        _ if rest.is_empty() => read_curve_file(Path::new(s)),
        _ => Err(bad("curve", s)),
    }
}

fn read_curve_file(path: &Path) -> Result<CurveSpec> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let parsed = if path.extension().is_some_and(|e| e == "json") {
        serde_json::from_str(&text).map_err(|e| e.to_string())
    } else {
        toml::from_str(&text).map_err(|e| e.to_string())
    };
    parsed.map_err(|message| Error::Parse {
        path: path.to_path_buf(),
        message,
    })
}

pub fn parse_function_arg(s: &str) -> Result<BoundaryFunction> {
    let (kind, arg) = s.split_once(':').ok_or_else(|| bad("function", s))?;
    let int = || arg.parse::<i64>().map_err(|_| bad("function", s));
    let point = || -> Result<C64> {
        let (x, y) = arg.split_once(',').ok_or_else(|| bad("pole", s))?;
        Ok(C64::new(
            x.trim().parse().map_err(|_| bad("pole", s))?,
            y.trim().parse().map_err(|_| bad("pole", s))?,
        ))
    };
    let mode = || -> Result<u32> { u32::try_from(int()?).map_err(|_| bad("mode", s)) };
    Ok(match kind {
        "cos" => BoundaryFunction::cos(mode()?),
        "sin" => BoundaryFunction::composed(ParamFn::Sin { n: mode()? }),
        "exp" => BoundaryFunction::composed(ParamFn::Exp {
            n: i32::try_from(int()?).map_err(|_| bad("mode", s))?,
        }),
        "const" => BoundaryFunction::constant(arg.parse().map_err(|_| bad("constant", s))?),
        "pole" => BoundaryFunction::pole(point()?),
        "re-pole" => BoundaryFunction::pole(point()?).real_part(),
        "im-pole" => BoundaryFunction::pole(point()?)
            .scaled(C64::new(0.0, -1.0))
            .real_part(),
        _ => return Err(bad("function", s)),
    })
}
