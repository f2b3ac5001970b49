//! Takagi factorization of a random complex symmetric matrix and of a
//! degenerate one.

use biphoton::linalg::{c64, takagi, unitarity_error, ComplexMatrix, UNITARY_TOL};
use biphoton::random::{random_symmetric, seeded};

fn main() -> biphoton::Result<()> {
    let s = random_symmetric(&mut seeded(7), 5);
    let f = takagi(&s, UNITARY_TOL)?;
    println!("D = {:.6?}", f.diagonal());
    println!("|V^T S V - D| = {:.2e}", (f.v.transpose() * &s * &f.v - &f.d).norm());
    println!("|V^† V - I|   = {:.2e}", unitarity_error(&f.v));

    let swap = ComplexMatrix::from_row_slice(2, 2, &[c64(0.0, 0.0), c64(0.5, 0.0), c64(0.5, 0.0), c64(0.0, 0.0)]);
    let f = takagi(&swap, UNITARY_TOL)?;
    println!("\nD = {:?} for the two-photon coincidence state", f.diagonal());
    println!("V = {:.6}", f.v);
    Ok(())
}
