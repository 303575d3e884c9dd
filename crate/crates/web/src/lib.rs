//! Browser bindings: each export returns a JSON string that the static page
//! in `www/` plots on a canvas.

use psitwist::arith::{sopfr, TwistParameter};
use psitwist::complex::{bounds_for, poles, top_pole_families, verify_pole, LocalShape};
use psitwist::sources::zeta_source;
use psitwist::Complex64;
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_SCATTER: u32 = 200_000;
const MAX_SWEEP_POINTS: usize = 1_000;

#[derive(Serialize)]
struct PolePoint {
    p: u64,
    i: usize,
    k: i64,
    re: f64,
    im: f64,
    residual: f64,
}

#[derive(Serialize)]
struct BoundsRow {
    sigma: f64,
    lower: f64,
    upper: f64,
}

#[derive(Serialize)]
struct SweepRow {
    alpha: f64,
    re: Vec<f64>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serialises")
}

/// `[S(1), ..., S(n_max)]`.
pub fn sopfr_values(n_max: u32) -> Result<String, String> {
    if n_max == 0 || n_max > MAX_SCATTER {
        return Err(format!("n_max must lie in 1..={MAX_SCATTER}"));
    }
    let v: Vec<u64> = (1..=n_max as u64).map(sopfr).collect();
    Ok(to_json(&v))
}

/// Poles of the twisted zeta function in `re >= re_min`, `|im| <= im_max`.
pub fn zeta_poles(alpha_re: f64, alpha_im: f64, re_min: f64, im_max: f64) -> Result<String, String> {
    let t = TwistParameter::open(Complex64::new(alpha_re, alpha_im)).map_err(|e| e.to_string())?;
    let src = zeta_source();
    let list = poles(&src, &t, re_min, f64::INFINITY, im_max).map_err(|e| e.to_string())?;
    let points = list
        .iter()
        .map(|pole| {
            Ok(PolePoint {
                p: pole.prime,
                i: pole.root_index,
                k: pole.branch,
                re: pole.location.re,
                im: pole.location.im,
                residual: verify_pole(&src, &t, pole).map_err(|e| e.to_string())?,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(to_json(&points))
}

/// Real parts of the `top` rightmost pole lines for `alpha` on a real grid.
pub fn pole_sweep(alpha_min: f64, alpha_max: f64, step: f64, top: usize) -> Result<String, String> {
    if !(step > 0.0) || !(alpha_min > 0.0) || !(alpha_max < 1.0) || alpha_min > alpha_max {
        return Err("need 0 < alpha_min <= alpha_max < 1 and step > 0".into());
    }
    let count = ((alpha_max - alpha_min) / step + 1e-9).floor() as usize + 1;
    if count > MAX_SWEEP_POINTS {
        return Err(format!("at most {MAX_SWEEP_POINTS} grid points"));
    }
    let src = zeta_source();
    let rows = (0..count)
        .map(|j| {
            let alpha = alpha_min + j as f64 * step;
            let t = TwistParameter::open(alpha).map_err(|e| e.to_string())?;
            let fams = top_pole_families(&src, &t, top).map_err(|e| e.to_string())?;
            Ok(SweepRow {
                alpha,
                re: fams.iter().map(|f| f.real_part()).collect(),
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(to_json(&rows))
}

/// Lower and upper bounds for `|L|` on the lines `Re s = sigma`.
pub fn bounds_table(d: u32, w: u32, alpha: f64, sigma_min: f64, sigma_max: f64, step: f64) -> Result<String, String> {
    if !(step > 0.0) || sigma_min > sigma_max {
        return Err("need sigma_min <= sigma_max and step > 0".into());
    }
    let t = TwistParameter::open(alpha).map_err(|e| e.to_string())?;
    let shape = LocalShape::new(d, w);
    let count = ((sigma_max - sigma_min) / step + 1e-9).floor() as usize + 1;
    let rows = (0..count.min(MAX_SWEEP_POINTS))
        .map(|j| {
            let sigma = sigma_min + j as f64 * step;
            let b = bounds_for(&shape, &t, sigma, None).map_err(|e| e.to_string())?;
            Ok(BoundsRow {
                sigma,
                lower: b.lower,
                upper: b.upper,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(to_json(&rows))
}

#[wasm_bindgen(js_name = sopfrValues)]
pub fn sopfr_values_js(n_max: u32) -> Result<String, JsValue> {
    sopfr_values(n_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = zetaPoles)]
pub fn zeta_poles_js(alpha_re: f64, alpha_im: f64, re_min: f64, im_max: f64) -> Result<String, JsValue> {
    zeta_poles(alpha_re, alpha_im, re_min, im_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = poleSweep)]
pub fn pole_sweep_js(alpha_min: f64, alpha_max: f64, step: f64, top: usize) -> Result<String, JsValue> {
    pole_sweep(alpha_min, alpha_max, step, top).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = boundsTable)]
pub fn bounds_table_js(d: u32, w: u32, alpha: f64, sigma_min: f64, sigma_max: f64, step: f64) -> Result<String, JsValue> {
    bounds_table(d, w, alpha, sigma_min, sigma_max, step).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn scatter_values() {
        assert_eq!(sopfr_values(10).unwrap(), "[0,2,3,4,5,5,7,6,6,7]");
        assert!(sopfr_values(0).is_err());
    }

    #[test]
    fn poles_are_json_points() {
        let v: Value = serde_json::from_str(&zeta_poles(0.5, 0.0, -3.0, 20.0).unwrap()).unwrap();
        let top = v
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p["re"].as_f64().unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((top + 1.8927).abs() < 1e-4);
        assert!(zeta_poles(1.0, 0.0, -3.0, 20.0).unwrap_err().starts_with("invalid twist parameter"));
    }

    #[test]
    fn sweep_and_bounds() {
        let v: Value = serde_json::from_str(&pole_sweep(0.1, 0.9, 0.1, 5).unwrap()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 9);
        assert_eq!(v[0]["re"].as_array().unwrap().len(), 5);
        let b: Value = serde_json::from_str(&bounds_table(2, 1, 0.7, 1.0, 10.0, 1.0).unwrap()).unwrap();
        assert!((b[0]["lower"].as_f64().unwrap() - 0.26695).abs() < 1e-4);
        assert!(bounds_table(2, 1, 0.7, -2.0, 0.0, 1.0).unwrap_err().starts_with("bound undefined"));
    }
}
