//! The Laurent restatement of a vanishing problem and the two probe modes.
use nilvc::algebra::Field;
use nilvc::laurent_vc::{probe, restated_vc, LaurentProbe, ProbeMode};
use nilvc::poly::parse_poly;

fn main() -> nilvc::Result<()> {
    let q = Field::Rationals;
    let r = restated_vc(&[2], &parse_poly("z1", 1, q, false)?, 6, false)?;
    println!(
        "a=(2), P=x: nilpotent={} first_vanish={:?}",
        r.nilpotent_up_to_bound, r.first_vanish
    );

    let f = parse_poly("x1", 1, q, true)?;
    let g = parse_poly("x1^-3 + 1", 1, q, true)?;
    for mode in [ProbeMode::HolomorphicPart, ProbeMode::ConstantTerm] {
        let r = probe(&LaurentProbe {
            f: f.clone(),
            g: g.clone(),
            mode,
            m_max: 6,
        })?;
        let nonzero: Vec<u32> = r.rows.iter().filter(|x| !x.zero).map(|x| x.m).collect();
        println!(
            "{mode:?}: nonzero at m={nonzero:?}, vanishes from {:?}",
            r.vanishes_from
        );
    }
    Ok(())
}
