//! Exact E Tr H^{2s} for small dilute matrices by trajectory and by walk summation.

use dilute_lab::oracle::{exact_moment, format_rational, MomentSpec, OracleLaw, OracleMethod};
use num_rational::BigRational;

fn main() -> dilute_lab::Result<()> {
    for law in [OracleLaw::Rademacher, OracleLaw::Gaussian] {
        println!("{law:?}");
        for (n, rho) in [(4u32, "2"), (6, "6"), (5, "1/2")] {
            for s in 1..=3 {
                let spec = MomentSpec::with_law(n, dilute_lab::oracle::parse_rational(rho)?, s, law)?;
                let r = exact_moment(&spec, OracleMethod::Both)?;
                println!(
                    "  n={n} rho={rho:<3} s={s}  M = {:<14} agree = {:?}",
                    format_rational(&r.value),
                    r.agreement()
                );
            }
        }
    }

    let spec = MomentSpec::with_law(4, BigRational::from_integer(2.into()), 3, OracleLaw::Gaussian)?;
    let c = BigRational::new(3.into(), 2.into());
    let base = exact_moment(&spec, OracleMethod::Walk)?.value;
    let scaled = exact_moment(&spec.scaled(&c), OracleMethod::Walk)?.value;
    println!(
        "\nscaling H -> (3/2)H multiplies M_6 by {}",
        format_rational(&(scaled / base))
    );
    Ok(())
}
