//! Classical root systems: Cartan matrices, highest roots and Chevalley
//! structure constants.

use liecomm::rootsys::{highest_root_is_fund_weight, CartanType, RootSystemPresentation};

fn main() -> liecomm::Result<()> {
    for (t, rank) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::C, 3), (CartanType::D, 4)] {
        let p = RootSystemPresentation::classical(t, rank)?;
        println!("{t}{rank}: {} positive roots, highest root {:?}", p.num_positive(), p.highest_root);
        for row in &p.cartan {
            println!("    {row:?}");
        }
        match highest_root_is_fund_weight(&p) {
            Ok((alpha, m)) => println!("    highest root = {m} x fundamental weight {}", alpha + 1),
            Err(e) => println!("    {e}"),
        }
        let largest = p.structure_constants.iter().map(|c| c.value.abs()).max().unwrap_or(0);
        println!("    {} structure constants, max |N| = {largest}", p.structure_constants.len());
    }
    Ok(())
}
