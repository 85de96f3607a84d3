//! The quotient Z/4 -> Z/2 commutes with the extensions.

use monadic_extension::extend::check_homomorphism;
use monadic_extension::{BinOpTable, CheckOptions, FinMap, MonadKind, OpMorphism};

fn main() -> monadic_extension::Result<()> {
    let (z4, z2) = (BinOpTable::cyclic(4), BinOpTable::cyclic(2));
    let q = FinMap::new(z4.left().clone(), z2.left().clone(), vec![0, 1, 0, 1])?;
    let h = OpMorphism {
        h_x: q.clone(),
        h_y: q.clone(),
        h_z: q,
    };
    for kind in [MonadKind::Exp, MonadKind::Lambda, MonadKind::Prob] {
        let opts = if kind.is_enumerable() {
            CheckOptions::exhaustive()
        } else {
            CheckOptions::sampled(42, 500)
        };
        let r = check_homomorphism(kind, &z4, &z2, &h, &opts)?;
        println!("{:<7} {:?} on {} pairs", kind.name(), r.status, r.instances);
    }

    // a map that does not respect the operation is rejected up front
    let bad = FinMap::new(z4.left().clone(), z2.left().clone(), vec![0, 0, 1, 1])?;
    let h = OpMorphism {
        h_x: bad.clone(),
        h_y: bad.clone(),
        h_z: bad,
    };
    if let Err(e) = check_homomorphism(MonadKind::Exp, &z4, &z2, &h, &CheckOptions::exhaustive()) {
        println!("rejected: {e}");
    }
    Ok(())
}
