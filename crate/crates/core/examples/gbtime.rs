//! Ad-hoc timing probe for the Fekete Gröbner runs (dev only).
use std::time::Instant;

use fekete_core::feketesys::FeketeSystem;
use fekete_core::groebner::{buchberger, ideal_degree, Budget};
use fekete_core::multipoly::MonomialOrder;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let sys = FeketeSystem::build(n).unwrap();
    let gens = sys.generators();
    let t0 = Instant::now();
    match buchberger(&gens, &MonomialOrder::Grevlex, &Budget::seconds(3600)) {
        Ok(gb) => {
            let deg = ideal_degree(&gb).map(|d| d.degree).unwrap_or(None);
            println!(
                "n={n}: basis {} polys, degree {:?}, pairs {}, zero-reductions {}, wall {:?} (total {:?})",
                gb.basis.len(), deg, gb.stats.pairs_processed,
                gb.stats.reductions_to_zero, gb.stats.wall, t0.elapsed()
            );
        }
        Err(e) => println!("n={n}: {e}"),
    }
}
