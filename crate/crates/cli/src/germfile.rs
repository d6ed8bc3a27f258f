//! Germ files: a JSON document listing the monomials of both components.
//!
//! ```json
//! { "components": [
//!     [ {"re": 1.0, "im": 0.0, "i": 1, "j": 0}, ... ],
//!     [ {"re": 1.0, "im": 0.0, "i": 0, "j": 1}, ... ]
//! ] }
//! ```
//!
//! A monomial entry means `(re + i*im) * z^i * w^j`; duplicate `(i, j)`
//! entries are summed. The document must parse to a valid germ: fixing the
//! origin, linear part exactly the identity, not the identity map.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use parabasin_core::algebra::BiPoly;
use parabasin_core::germ::{Germ, GermError};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonomialJson {
    pub re: f64,
    pub im: f64,
    pub i: u32,
    pub j: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GermFile {
    pub components: [Vec<MonomialJson>; 2],
}

impl GermFile {
    pub fn to_germ(&self) -> Result<Germ, GermError> {
        let build = |terms: &[MonomialJson]| {
            BiPoly::from_terms(
                terms
                    .iter()
                    .map(|m| ((m.i, m.j), Complex64::new(m.re, m.im))),
            )
        };
        Germ::validate(build(&self.components[0]), build(&self.components[1]))
    }

    // Exercised by the round-trip tests; not on the subcommand surface.
    #[allow(dead_code)]
    pub fn from_germ(germ: &Germ) -> GermFile {
        let dump = |p: &BiPoly| {
            p.iter()
                .map(|(&(i, j), &c)| MonomialJson {
                    re: c.re,
                    im: c.im,
                    i,
                    j,
                })
                .collect()
        };
        let (f1, f2) = germ.components();
        GermFile {
            components: [dump(f1), dump(f2)],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_monomials_are_summed() {
        let text = r#"{"components": [
            [{"re":1.0,"im":0.0,"i":1,"j":0},
             {"re":0.75,"im":0.0,"i":2,"j":0},
             {"re":0.25,"im":0.0,"i":2,"j":0}],
            [{"re":1.0,"im":0.0,"i":0,"j":1}]
        ]}"#;
        let file: GermFile = serde_json::from_str(text).unwrap();
        let germ = file.to_germ().unwrap();
        let (f1, _) = germ.components();
        assert_eq!(f1.coeff(2, 0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn round_trip_preserves_the_germ() {
        let germ = parabasin_core::samples::degenerate_fuchsian();
        let file = GermFile::from_germ(&germ);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: GermFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_germ().unwrap(), germ);
    }
}
