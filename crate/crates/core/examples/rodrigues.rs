//! Rodrigues families: a one-variable table with exact orthogonality
//! multipliers, then a product family in two variables.
use nilvc::algebra::{Field, Scalar};
use nilvc::rodrigues::{generate_table, orthogonality_table, WeightFamily};

fn main() -> nilvc::Result<()> {
    let half = Scalar::ratio(Field::Rationals, 1, 2);
    let lag = WeightFamily::laguerre(&half)?;
    for row in generate_table(&lag, 4)? {
        println!("{:?}: {}", row.m, row.poly);
    }
    for x in orthogonality_table(&lag, 3)?.iter().filter(|x| x.m1 == x.m2) {
        println!("<L{:?}, L{:?}> = {} * {}", x.m1, x.m2, x.value, x.unit);
    }

    let prod = WeightFamily::product(vec![WeightFamily::hermite(), lag])?;
    for row in generate_table(&prod, 2)? {
        println!("{:?}: {}", row.m, row.poly);
    }
    Ok(())
}
