//! The scaled map `T_t` is conjugate to `T` by `M_t(a, b) = (ta, tb)`, and
//! every visit to the section realizes the matrix return identity.

use horocycle::dynamics::{reduce_to_section, verify_return_identity};
use horocycle::scalar::ratio;
use horocycle::SectionPoint;

fn main() -> horocycle::Result<()> {
    let p = SectionPoint::new(ratio(1, 5), ratio(1, 1))?;
    let t = ratio(2, 1);
    let left = p.scale(&t)?.t_bcz_step()?;
    let right = p.bcz_step()?.scale(&t)?;
    println!("T_2(M_2 p) = ({}, {}), M_2(T p) = ({}, {})", left.x(), left.y(), right.x(), right.y());

    let mut q = SectionPoint::new(ratio(13, 17), ratio(5, 11))?;
    for _ in 0..6 {
        println!("{q}: κ = {}, R = {}, return identity {}", q.kappa(), q.roof(), verify_return_identity(&q));
        q = q.bcz_step()?;
    }

    for (a, b) in [(ratio(1, 2), ratio(1, 4)), (ratio(1, 2), ratio(-3, 4)), (ratio(2, 7), ratio(40, 3))] {
        let (r, shift) = reduce_to_section(a.clone(), b.clone())?;
        println!("reduce ({a}, {b}) → {r} with shift {shift}");
    }
    Ok(())
}
