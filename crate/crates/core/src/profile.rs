//! Evaluation profiles selected by the `PERIODFORGE_PRECISION` variable.

use std::env;

pub const ENV_VAR: &str = "PERIODFORGE_PRECISION";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile {
    pub name: &'static str,
    /// Target relative residual of the forward period solver.
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// Samples on the horizontal line used by Fourier extraction.
    pub fourier_samples: usize,
}

impl Profile {
    pub const FAST: Profile = Profile {
        name: "fast",
        newton_tol: 1e-8,
        newton_max_iter: 30,
        fourier_samples: 128,
    };
    pub const STANDARD: Profile = Profile {
        name: "standard",
        newton_tol: 1e-12,
        newton_max_iter: 60,
        fourier_samples: 256,
    };
    pub const STRICT: Profile = Profile {
        name: "strict",
        newton_tol: 1e-13,
        newton_max_iter: 120,
        fourier_samples: 1024,
    };

    pub fn by_name(name: &str) -> Option<Profile> {
        match name.trim().to_ascii_lowercase().as_str() {
            "fast" => Some(Self::FAST),
            "standard" | "double" | "" => Some(Self::STANDARD),
            "strict" | "high" => Some(Self::STRICT),
            _ => None,
        }
    }

    /// Reads the profile from the environment; unknown names fall back to
    /// the standard profile.
    pub fn from_env() -> Profile {
        env::var(ENV_VAR)
            .ok()
            .and_then(|v| Self::by_name(&v))
            .unwrap_or(Self::STANDARD)
    }
}

impl Default for Profile {
    fn default() -> Self {
        Self::STANDARD
    }
}
