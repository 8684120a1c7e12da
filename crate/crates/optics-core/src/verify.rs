//! Exhaustive structure checks, used by tests and acceptance runs to verify
//! switch routing tables independently of the routing formulas.

/// True when `route` is a Latin square on `n` ports and `n` wavelengths:
/// for a fixed input the wavelength-to-output map is a bijection, and for a
/// fixed output the input-to-wavelength map is a bijection. Checked by
/// enumeration of every (port, wavelength) pair.
pub fn latin_square_holds(n: usize, route: impl Fn(usize, usize) -> usize) -> bool {
    for input in 0..n {
        let mut seen = vec![false; n];
        for w in 0..n {
            let out = route(input, w);
            if out >= n || seen[out] {
                return false;
            }
            seen[out] = true;
        }
    }
    for output in 0..n {
        let mut seen = vec![false; n];
        for input in 0..n {
            let mut found = None;
            for w in 0..n {
                if route(input, w) == output {
                    found = Some(w);
                    break;
                }
            }
            match found {
                Some(w) if !seen[w] => seen[w] = true,
                _ => return false,
            }
        }
    }
    true
}

/// True when every effective input reaches every effective output on exactly
/// one of the `nominal` wavelengths. This is the usable-port view of a
/// truncated switch, where wavelengths landing on dropped ports are simply
/// unused.
pub fn effective_ports_bijective(
    effective: usize,
    nominal: usize,
    route: impl Fn(usize, usize) -> usize,
) -> bool {
    for input in 0..effective {
        let mut hits = vec![0usize; effective];
        for w in 0..nominal {
            let out = route(input, w);
            if out < effective {
                hits[out] += 1;
            }
        }
        if hits.iter().any(|&h| h != 1) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_table_is_latin() {
        assert!(latin_square_holds(8, |p, w| (p + w) % 8));
    }

    #[test]
    fn constant_table_is_not_latin() {
        assert!(!latin_square_holds(4, |_, _| 0));
    }

    #[test]
    fn truncated_cyclic_table_still_bijective_on_effective_ports() {
        assert!(effective_ports_bijective(5, 8, |p, w| (p + w) % 8));
    }
}
