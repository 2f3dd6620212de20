//! Named fixture states.
//!
//! The catalog covers the states used throughout the test batteries and the
//! CLI: Bell and GHZ states, the tetrahedral rebit state whose three-tangle
//! is -1, the `(1/4)[I(x)I + Y(x)Y]` density that the two theories disagree
//! about, and the fully mixed states.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mat::{yy_real, Field, Matrix};
use crate::state::{DensityMatrix, StateData, StateVector};

/// Fixed catalog names; `ghz(<angle>)` additionally accepts a parameter.
pub const NAMES: &[&str] = &[
    "bell",
    "ghz",
    "ghz(<angle>)",
    "tetra_phi",
    "w",
    "prod_i",
    "rho_yy",
    "mixed_i4",
    "mixed_i8",
];

/// `cos(theta)|000> + sin(theta)|111>`, real.
pub fn ghz(theta: f64) -> StateVector {
    let mut amps = vec![0.0; 8];
    amps[0] = theta.cos();
    amps[7] = theta.sin();
    StateVector::real(3, &amps).expect("ghz state is normalized")
}

/// `(1/2)(|000> - |011> - |101> - |110>)`, the tetrahedral state.
pub fn tetra_phi() -> StateVector {
    StateVector::real(3, &[0.5, 0.0, 0.0, -0.5, 0.0, -0.5, -0.5, 0.0])
        .expect("tetrahedral state is normalized")
}

/// The eight tetrahedral states: signs on `{000,011,101,110}` or on
/// `{111,100,010,001}`, one coefficient -1/2 and the rest +1/2.
pub fn tetra(even_sector: bool, minus_at: usize) -> Result<StateVector> {
    if minus_at > 3 {
        return Err(Error::FactorRange {
            index: minus_at,
            n_factors: 4,
        });
    }
    let positions: [usize; 4] = if even_sector {
        [0, 3, 5, 6]
    } else {
        [7, 4, 2, 1]
    };
    let mut amps = vec![0.0; 8];
    for (slot, &pos) in positions.iter().enumerate() {
        amps[pos] = if slot == minus_at { -0.5 } else { 0.5 };
    }
    StateVector::real(3, &amps)
}

/// `(|001> + |010> + |100>)/sqrt(3)`.
pub fn w_state() -> StateVector {
    let x = 1.0 / 3f64.sqrt();
    StateVector::real(3, &[0.0, x, x, 0.0, x, 0.0, 0.0, 0.0]).expect("w state is normalized")
}

/// `(|00> + |11>)/sqrt(2)`, real.
pub fn bell() -> StateVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::real(2, &[s, 0.0, 0.0, s]).expect("bell state is normalized")
}

/// `(1/2)(|0> + i|1>)(x)(|0> + i|1>)`: a two-qubit product state whose
/// rebit shadow is maximally entangled.
pub fn prod_i() -> StateVector {
    let amps = vec![
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, 0.5),
        Complex64::new(0.0, 0.5),
        Complex64::new(-0.5, 0.0),
    ];
    StateVector::new(Field::Complex, 2, amps).expect("product state is normalized")
}

/// `(1/4)[I(x)I + Y(x)Y]`, real-tagged. Tangle 1 as two rebits, 0 as two
/// qubits.
pub fn rho_yy() -> DensityMatrix {
    let mat = Matrix::identity(Field::Real, 4).add(&yy_real()).scale(0.25);
    DensityMatrix::new(Field::Real, 2, mat).expect("rho_yy is a valid real density")
}

/// The completely mixed two-qubit state `I/4`, complex-tagged.
pub fn mixed_i4() -> DensityMatrix {
    DensityMatrix::new(
        Field::Complex,
        2,
        Matrix::identity(Field::Complex, 4).scale(0.25),
    )
    .expect("I/4 is a valid density")
}

/// The completely mixed three-rebit state `I/8`, real-tagged.
pub fn mixed_i8() -> DensityMatrix {
    DensityMatrix::new(
        Field::Real,
        3,
        Matrix::identity(Field::Real, 8).scale(0.125),
    )
    .expect("I/8 is a valid density")
}

/// Angle strings: `0.5`, `pi`, `pi/6`, `3pi/8`, `-pi/4`.
pub fn parse_angle(text: &str) -> Option<f64> {
    let t = text.trim().to_ascii_lowercase();
    if let Some(pos) = t.find("pi") {
        let lead = &t[..pos];
        let factor = match lead {
            "" => 1.0,
            "-" => -1.0,
            s => s.parse::<f64>().ok()?,
        };
        let rest = &t[pos + 2..];
        let denom = if rest.is_empty() {
            1.0
        } else {
            rest.strip_prefix('/')?.parse::<f64>().ok()?
        };
        Some(factor * std::f64::consts::PI / denom)
    } else {
        t.parse::<f64>().ok()
    }
}

/// Looks up a named state; `ghz` defaults to `theta = pi/4`.
pub fn catalog(name: &str) -> Result<StateData> {
    let n = name.trim();
    if let Some(arg) = n.strip_prefix("ghz(").and_then(|s| s.strip_suffix(')')) {
        let theta = parse_angle(arg).ok_or_else(|| Error::UnknownCatalog(name.to_string()))?;
        return Ok(StateData::Pure(ghz(theta)));
    }
    match n {
        "bell" => Ok(StateData::Pure(bell())),
        "ghz" => Ok(StateData::Pure(ghz(std::f64::consts::FRAC_PI_4))),
        "tetra_phi" => Ok(StateData::Pure(tetra_phi())),
        "w" => Ok(StateData::Pure(w_state())),
        "prod_i" => Ok(StateData::Pure(prod_i())),
        "rho_yy" => Ok(StateData::Mixed(rho_yy())),
        "mixed_i4" => Ok(StateData::Mixed(mixed_i4())),
        "mixed_i8" => Ok(StateData::Mixed(mixed_i8())),
        _ => Err(Error::UnknownCatalog(name.to_string())),
    }
}
