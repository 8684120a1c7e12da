use serde::{Deserialize, Serialize};

use crate::OpticsError;

/// Route a wavelength through an `n x n` AWGR.
///
/// The device cyclically shuffles channels so that from each input port one
/// wavelength lands on every output port: wavelength `w` entering port `p`
/// exits port `(p + w) mod n`. For a fixed input the wavelength-to-output
/// map is a bijection, and for a fixed output the input-to-wavelength map is
/// a bijection (the Latin-square property).
pub fn awgr_route(n: usize, input_port: usize, wavelength: usize) -> Result<usize, OpticsError> {
    if n == 0 {
        return Err(OpticsError::ZeroRadix(n));
    }
    if input_port >= n {
        return Err(OpticsError::InputPortOutOfRange {
            port: input_port,
            radix: n,
        });
    }
    if wavelength >= n {
        return Err(OpticsError::WavelengthOutOfRange {
            wavelength,
            limit: n,
        });
    }
    Ok((input_port + wavelength) % n)
}

/// Inverse of [`awgr_route`]: the unique wavelength that connects
/// `input_port` to `output_port` on an `n x n` AWGR.
pub fn awgr_wavelength_for(
    n: usize,
    input_port: usize,
    output_port: usize,
) -> Result<usize, OpticsError> {
    if n == 0 {
        return Err(OpticsError::ZeroRadix(n));
    }
    if input_port >= n {
        return Err(OpticsError::InputPortOutOfRange {
            port: input_port,
            radix: n,
        });
    }
    if output_port >= n {
        return Err(OpticsError::OutputPortOutOfRange {
            port: output_port,
            radix: n,
        });
    }
    Ok((n + output_port - input_port) % n)
}

/// The wavelength-routing bijection of an `n x n` AWGR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AwgrPermutation {
    n: usize,
}

impl AwgrPermutation {
    pub fn new(n: usize) -> Result<Self, OpticsError> {
        if n == 0 {
            return Err(OpticsError::ZeroRadix(n));
        }
        Ok(Self { n })
    }

    pub fn radix(&self) -> usize {
        self.n
    }

    pub fn route(&self, input_port: usize, wavelength: usize) -> Result<usize, OpticsError> {
        awgr_route(self.n, input_port, wavelength)
    }

    pub fn wavelength_for(
        &self,
        input_port: usize,
        output_port: usize,
    ) -> Result<usize, OpticsError> {
        awgr_wavelength_for(self.n, input_port, output_port)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_wavelength() {
        assert_eq!(awgr_route(8, 0, 0).unwrap(), 0);
    }

    #[test]
    fn wraps_modulo_radix() {
        assert_eq!(awgr_route(8, 3, 7).unwrap(), 2);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(awgr_wavelength_for(8, 0, 0).unwrap(), 0);
        assert_eq!(awgr_wavelength_for(8, 3, 2).unwrap(), 7);
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(
            awgr_route(8, 8, 0),
            Err(OpticsError::InputPortOutOfRange { port: 8, radix: 8 })
        );
        assert_eq!(
            awgr_route(8, 0, 8),
            Err(OpticsError::WavelengthOutOfRange {
                wavelength: 8,
                limit: 8
            })
        );
        assert_eq!(
            awgr_wavelength_for(8, 0, 9),
            Err(OpticsError::OutputPortOutOfRange { port: 9, radix: 8 })
        );
    }

    #[test]
    fn route_inverse_round_trip_370() {
        // Exhaustive inverse check at the study radix.
        let n = 370;
        for input in 0..n {
            for output in 0..n {
                let w = awgr_wavelength_for(n, input, output).unwrap();
                assert_eq!(awgr_route(n, input, w).unwrap(), output);
            }
        }
    }

    #[test]
    fn bijective_per_input_370() {
        // Brute-force bijection check over all 370x370 combinations.
        let n = 370;
        for input in 0..n {
            let mut hit = vec![false; n];
            for w in 0..n {
                let out = awgr_route(n, input, w).unwrap();
                assert!(!hit[out], "output {out} hit twice from input {input}");
                hit[out] = true;
            }
        }
    }
}
