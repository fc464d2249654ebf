//! Random sheaves and cosheaves on small circles, each compared against the
//! brute-force oracle.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toroid::cli::{random_circle_cosheaf, random_circle_sheaf};
use toroid::exactla::Field;
use toroid::isofy::{epify, monofy, oracle_epify, oracle_monofy, OracleLimits};

fn main() -> toroid::Result<()> {
    let limits = OracleLimits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [2, 3] {
        let f = Field::new(p)?;
        let mut agree = 0;
        for _ in 0..25 {
            let s = random_circle_sheaf(&mut rng, f, 4, 3, &limits)?;
            agree += usize::from(epify(&s)?.sub == oracle_epify(&s, &limits)?);
            let c = random_circle_cosheaf(&mut rng, f, 4, 3, &limits)?;
            agree += usize::from(monofy(&c)?.quotient == oracle_monofy(&c, &limits)?);
        }
        println!("GF({p}): {agree} of 50 agree");
    }
    Ok(())
}
