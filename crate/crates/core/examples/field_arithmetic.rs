//! Arithmetic in a prime field and in F_9 = F_3[x]/(x^2 + 1).

use locequiv::Field;

fn main() -> locequiv::Result<()> {
    let f7 = Field::prime(7)?;
    let a = f7.from_int(3);
    let b = f7.from_int(5);
    println!("in F_7: 3 + 5 = {}, 3 * 5 = {}, 3 / 5 = {}", f7.format(f7.add(a, b)), f7.format(f7.mul(a, b)), f7.format(f7.div(a, b)?));
    println!("squares in F_7: {:?}", f7.elements().filter(|&x| f7.is_square(x)).map(|x| f7.format(x)).collect::<Vec<_>>());

    let f9 = Field::with_order(9)?;
    let i = f9.from_coeffs(&[0, 1])?;
    println!("in F_9 with modulus {:?}: i^2 = {}", f9.spec().modulus(), f9.format(f9.square(i)));
    let x = f9.from_coeffs(&[1, 2])?;
    println!("({}) * ({})^-1 = {}", f9.format(x), f9.format(i), f9.format(f9.div(x, i)?));
    if let Some(r) = f9.sqrt(f9.from_int(2)) {
        println!("sqrt(2) = {}", f9.format(r));
    }
    Ok(())
}
