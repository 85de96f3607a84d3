//! Checks the unit and associativity laws of every monad on a small carrier.

use monadic_extension::monad::check_monad_laws;
use monadic_extension::{CheckOptions, FinSet, MonadKind};

fn main() -> monadic_extension::Result<()> {
    let x = FinSet::range(2);
    for kind in MonadKind::ALL {
        let opts = if kind.is_enumerable() {
            CheckOptions::exhaustive()
        } else {
            CheckOptions::sampled(42, 2000)
        };
        let report = check_monad_laws(kind, &x, &opts)?;
        println!("{kind}: {:?}", report.status);
        for part in &report.parts {
            println!("  {:<45} {:>6} instances", part.law, part.instances);
        }
    }
    Ok(())
}
