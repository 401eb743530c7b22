use crate::algebra::PresentedRing;
use crate::error::{Error, Result};
use crate::field::PrimeField;

pub const DEFAULT_CHAR: u64 = 101;

pub const BUILTIN_NAMES: [&str; 7] = ["exa-4.3", "exa-5.4", "ci-e2", "ci-e3", "ci-e4", "socle2-e3", "square-max-e3"];

const XYZ: [&str; 3] = ["x", "y", "z"];

/// A named example ring over `F_p`.
pub fn builtin(name: &str, p: u64) -> Result<PresentedRing> {
    let f = PrimeField::new(p)?;
    let (vars, gens, cap): (&[&str], &[&str], Option<u32>) = match name {
        "exa-4.3" => (&XYZ, &["x*z + y*z", "x*y + y*z", "x^2 - y*z", "y*z^2 + z^3", "y^3 - z^3"], Some(5)),
        "exa-5.4" => (
            &["w", "x", "y", "z"],
            &["w^2 + x*y", "w*x + x*z", "w*z", "y^2 + x*z", "y*z", "z^2", "x^3 + x^2*z"],
            Some(5),
        ),
        "ci-e2" => (&["x", "y"], &["x^2", "y^2"], None),
        "ci-e3" => (&XYZ, &["x^2", "y^2", "z^2"], None),
        "ci-e4" => (&["w", "x", "y", "z"], &["w^2", "x^2", "y^2", "z^2"], None),
        "socle2-e3" => (&XYZ, &["x^2", "y^2", "z^2", "x*y"], None),
        "square-max-e3" => (&XYZ, &["x^2", "x*y", "y^2", "x*z", "y*z", "z^2"], None),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown builtin `{other}`; known: {}",
                BUILTIN_NAMES.join(", ")
            )))
        }
    };
    PresentedRing::from_strings(f, vars, gens, cap)
}

/// `k[x,y,z]/(x^2, y^2, z^i, xz^(i-1), yz^(i-1), xyz^(i-2))`, cap `i + 2`.
pub fn example_family_e2(p: u64, i: u32) -> Result<PresentedRing> {
    if i < 3 {
        return Err(Error::InvalidArgument(format!("family index must be at least 3, got {i}")));
    }
    let f = PrimeField::new(p)?;
    let gens = [
        "x^2".to_string(),
        "y^2".to_string(),
        format!("z^{i}"),
        format!("x*z^{}", i - 1),
        format!("y*z^{}", i - 1),
        format!("x*y*z^{}", i - 2),
    ];
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    PresentedRing::from_strings(f, &XYZ, &refs, Some(i + 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::compile;

    #[test]
    fn all_builtins_compile() {
        let dims: Vec<usize> = BUILTIN_NAMES.iter().map(|n| compile(&builtin(n, 101).unwrap()).unwrap().dim()).collect();
        assert_eq!(dims, vec![8, 10, 4, 8, 16, 6, 4]);
        assert!(builtin("nope", 101).is_err());
    }

    #[test]
    fn family() {
        let r3 = example_family_e2(101, 3).unwrap();
        assert_eq!(r3.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["x^2", "y^2", "z^3", "x*z^2", "y*z^2", "x*y*z"]);
        let r4 = example_family_e2(101, 4).unwrap();
        assert_eq!(r4.gens()[5].to_string(), "x*y*z^2");
        let a = compile(&r3).unwrap();
        assert_eq!(a.hilbert(), compile(&example_family_e2(2, 3).unwrap()).unwrap().hilbert());
        assert_eq!(a.hilbert(), vec![1, 3, 4]);
        assert!(example_family_e2(101, 2).is_err());
    }
}
