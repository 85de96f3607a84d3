// Extends Z/3 to nonempty subsets and compares with the setwise product.

use monadic_extension::extend::oracle_setwise;
use monadic_extension::{exp, extend_direct, extended_cayley_table, idempotents};
use monadic_extension::{BinOpTable, Guards, MonadKind};

fn main() -> monadic_extension::Result<()> {
    let z3 = BinOpTable::cyclic(3);
    let x = z3.left().clone();
    let a = exp::subset(&x, &[0, 1])?;
    let b = exp::subset(&x, &[1])?;
    let phi = extend_direct(&z3, &a, &b)?;
    println!("{a} + {b} = {phi}");
    println!("setwise: {}", oracle_setwise(&z3, &a, &b)?);

    let ext = extended_cayley_table(MonadKind::Exp, &z3, false, &Guards::default())?;
    let names: Vec<String> = idempotents(&ext).iter().map(|e| e.render()).collect();
    println!(
        "{} elements, idempotents {}",
        ext.elements().len(),
        names.join(" ")
    );
    Ok(())
}
