//! Regenerates data/extraspecial.gens: both extraspecial groups of
//! order 3^5, built as central products (a direct product quotiented by
//! an antidiagonal central C3) and exported through the regular
//! representation. Run from the workspace root:
//!
//!     cargo run -p grpcover-cli --example gen_extraspecial > data/extraspecial.gens

use grpcover::{build, generated_subgroup, parse_group_expr, quotient_group, Budgets, ElementSet};
use grpcover_cli::catalog::gens_block;

fn central_product(left: &str, right: &str, z_left: u16, z_right_inv: u16, name: &str) -> String {
    let budgets = Budgets::default();
    let l = build(&parse_group_expr(left).unwrap(), &budgets).unwrap();
    let r = build(&parse_group_expr(right).unwrap(), &budgets).unwrap();
    let product = grpcover::direct_product(&l, &r, &budgets).unwrap();
    // The antidiagonal central subgroup <(z, z^-1)>.
    let pair = z_left as usize * r.order() + z_right_inv as usize;
    let seed = ElementSet::from_members(product.order(), [pair as u16]);
    let kernel = generated_subgroup(&product, &seed).unwrap();
    assert_eq!(kernel.len(), 3);
    let (quotient, _) = quotient_group(&product, &kernel).unwrap();
    assert_eq!(quotient.order(), 243);
    gens_block(name, &quotient)
}

fn main() {
    println!("# Extraspecial groups of order 243, via central products.");
    println!("# Regenerate: cargo run -p grpcover-cli --example gen_extraspecial");
    println!();
    // heisenberg(3) has center {(0,0,c)} at indices 0..3; z = 1, z^2 = 2.
    print!(
        "{}",
        central_product(
            "heisenberg(3)",
            "heisenberg(3)",
            1,
            2,
            "extraspecial_243_exponent_3"
        )
    );
    println!();
    // In modular M27 = semidirect(cyclic(9),[1->4;3]), a = (1,0) is
    // index 3, so a^3 = index 9 generates the center; inverse a^6 = 18.
    print!(
        "{}",
        central_product(
            "heisenberg(3)",
            "semidirect(cyclic(9),[1->4;3])",
            1,
            18,
            "extraspecial_243_exponent_9"
        )
    );
}
