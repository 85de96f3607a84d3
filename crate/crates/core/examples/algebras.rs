//! Algebras for the subset monad, and maps determined by their values on
//! units.

use monadic_extension::monad::{check_free_determination, TAlgebra};
use monadic_extension::zoo::exp::mask_of;
use monadic_extension::{exp, CheckOptions, FinSet, MonadKind, TElement};

fn main() -> monadic_extension::Result<()> {
    let x = FinSet::range(3);
    let opts = CheckOptions::exhaustive();

    // max is a semilattice, hence an algebra
    let max = TAlgebra::new(MonadKind::Exp, x.clone(), |a: &TElement| {
        Ok(63 - mask_of(a).leading_zeros() as usize)
    });
    println!("max:       {:?}", max.check(&opts)?.status);

    let free = TAlgebra::free(MonadKind::Exp, &x, &opts.guards)?;
    println!("free on 3: {:?}", free.check(&opts)?.status);

    // union with {0} respects unions
    let h = |a: &TElement| {
        let m = mask_of(a) | 1;
        let idx: Vec<usize> = (0..3).filter(|i| m >> i & 1 == 1).collect();
        exp::subset(a.base(), &idx)
    };
    let r = check_free_determination(MonadKind::Exp, &h, &x, &x, &opts)?;
    println!("{}: {:?} on {} elements", r.law, r.status, r.instances);
    Ok(())
}
