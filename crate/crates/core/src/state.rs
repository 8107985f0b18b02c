//! The first-order state `(E, u)` with `u = z - i|∇|^{-1} z_t`, and the
//! conversion to and from the wave data `(z, z_t)`.
//!
//! The sign convention `u = z - i|∇|^{-1} z_t` is used throughout, which is
//! what the splitting step is derived from. Recovery uses
//! `z = (u + ū)/2` and `z_t = i|∇|(u - ū)/2`. Since `|∇|` annihilates the zero
//! mode, any imaginary part of `u`'s zero mode is silently dropped by
//! [`decode_u`]; the scheme never produces one.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::io::{read_spectrum, write_spectrum};
use crate::spectral::{fractional_gradient, Grid, Spectrum, ZERO_MODE_TOL};
use crate::splitting::Variant;

/// Tolerance for the real-valued check on `z` data.
pub const REAL_TOL: f64 = 1e-12;

/// Schrödinger component `E` and complex wave component `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZState {
    e: Spectrum,
    u: Spectrum,
}

impl ZState {
    pub fn new(e: Spectrum, u: Spectrum) -> Result<Self> {
        if e.grid() != u.grid() {
            return Err(Error::GridMismatch(format!(
                "E on {:?} but u on {:?}",
                e.grid(),
                u.grid()
            )));
        }
        Ok(ZState { e, u })
    }

    pub fn zeros(grid: Grid) -> Self {
        ZState { e: Spectrum::zeros(grid), u: Spectrum::zeros(grid) }
    }

    /// State built from `(E_0, z_0, z_1)`.
    pub fn from_data(e: Spectrum, data: &WaveData) -> Result<Self> {
        ZState::new(e, encode_u(data)?)
    }

    pub fn grid(&self) -> Grid {
        self.e.grid()
    }

    pub fn e(&self) -> &Spectrum {
        &self.e
    }

    pub fn u(&self) -> &Spectrum {
        &self.u
    }

    pub fn into_parts(self) -> (Spectrum, Spectrum) {
        (self.e, self.u)
    }

    pub fn is_finite(&self) -> bool {
        self.e.is_finite() && self.u.is_finite()
    }

    /// Decoded `(z, z_t)`.
    pub fn wave_data(&self) -> WaveData {
        decode_u(&self.u)
    }

    /// Both components moved onto `grid` (truncation or zero padding by wave vector).
    pub fn resample(&self, grid: Grid) -> Result<ZState> {
        Ok(ZState { e: self.e.resample(grid)?, u: self.u.resample(grid)? })
    }
}

/// Real wave data `(z, z_t)` with mean-free `z_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveData {
    z0: Spectrum,
    z1: Spectrum,
}

impl WaveData {
    pub fn new(z0: Spectrum, z1: Spectrum) -> Result<Self> {
        if z0.grid() != z1.grid() {
            return Err(Error::GridMismatch("z0 and z1 live on different grids".into()));
        }
        if !z0.is_real_valued(REAL_TOL) || !z1.is_real_valued(REAL_TOL) {
            return Err(Error::ConfigInvalid("wave data must be real-valued".into()));
        }
        let mean = z1.zero_mode().norm();
        if mean > ZERO_MODE_TOL {
            return Err(Error::NegativePowerOnNonzeroMean { c0: mean });
        }
        Ok(WaveData { z0, z1 })
    }

    pub fn zeros(grid: Grid) -> Self {
        WaveData { z0: Spectrum::zeros(grid), z1: Spectrum::zeros(grid) }
    }

    pub fn grid(&self) -> Grid {
        self.z0.grid()
    }

    /// Displacement `z`.
    pub fn z(&self) -> &Spectrum {
        &self.z0
    }

    /// Velocity `z_t`.
    pub fn zt(&self) -> &Spectrum {
        &self.z1
    }

    pub fn into_parts(self) -> (Spectrum, Spectrum) {
        (self.z0, self.z1)
    }
}

/// `u = z_0 - i |∇|^{-1} z_1`.
pub fn encode_u(data: &WaveData) -> Result<Spectrum> {
    let inv = fractional_gradient(&data.z1, -1.0)?;
    Ok(&data.z0 - &inv.scale(Complex64::new(0.0, 1.0)))
}

/// `z = (u + ū)/2`, `z_t = i|∇|(u - ū)/2`.
pub fn decode_u(u: &Spectrum) -> WaveData {
    let uc = u.conj();
    let z = (u + &uc).scale(Complex64::new(0.5, 0.0));
    let diff = u - &uc;
    let zt = fractional_gradient(&diff, 1.0)
        .expect("positive power is total")
        .scale(Complex64::new(0.0, 0.5));
    WaveData { z0: z, z1: zt }
}

const CHECKPOINT_MAGIC: &[u8; 4] = b"ZSCK";
pub const CHECKPOINT_VERSION: u32 = 1;

/// Saved trajectory position.
///
/// Layout (little-endian): magic `ZSCK`, `version: u32`, `step: u64`,
/// `tau: f64`, `c: f64`, `variant: u32` (0 filtered, 1 unfiltered), then the
/// `E` and `u` spectrum blobs.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub state: ZState,
    pub step: u64,
    pub tau: f64,
    pub c: f64,
    pub variant: Variant,
}

impl Checkpoint {
    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(CHECKPOINT_MAGIC)?;
        w.write_all(&CHECKPOINT_VERSION.to_le_bytes())?;
        w.write_all(&self.step.to_le_bytes())?;
        w.write_all(&self.tau.to_le_bytes())?;
        w.write_all(&self.c.to_le_bytes())?;
        let tag: u32 = match self.variant {
            Variant::Filtered => 0,
            Variant::Unfiltered => 1,
        };
        w.write_all(&tag.to_le_bytes())?;
        write_spectrum(&mut w, self.state.e())?;
        write_spectrum(&mut w, self.state.u())?;
        Ok(())
    }

    pub fn read<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != CHECKPOINT_MAGIC {
            return Err(Error::Format("not a checkpoint file".into()));
        }
        let mut w4 = [0u8; 4];
        let mut w8 = [0u8; 8];
        r.read_exact(&mut w4)?;
        let version = u32::from_le_bytes(w4);
        if version != CHECKPOINT_VERSION {
            return Err(Error::Format(format!("unsupported checkpoint version {version}")));
        }
        r.read_exact(&mut w8)?;
        let step = u64::from_le_bytes(w8);
        r.read_exact(&mut w8)?;
        let tau = f64::from_le_bytes(w8);
        r.read_exact(&mut w8)?;
        let c = f64::from_le_bytes(w8);
        r.read_exact(&mut w4)?;
        let variant = match u32::from_le_bytes(w4) {
            0 => Variant::Filtered,
            1 => Variant::Unfiltered,
            t => return Err(Error::Format(format!("unknown scheme variant tag {t}"))),
        };
        let e = read_spectrum(&mut r)?;
        let u = read_spectrum(&mut r)?;
        Ok(Checkpoint { state: ZState::new(e, u)?, step, tau, c, variant })
    }
}
