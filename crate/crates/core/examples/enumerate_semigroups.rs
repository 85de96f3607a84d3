//! Counts binary operations and semigroups on small carriers.

use monadic_extension::enumerate_binary_ops;

fn main() -> monadic_extension::Result<()> {
    for n in 1..=3 {
        let total = enumerate_binary_ops(n, false)?.count();
        let associative = enumerate_binary_ops(n, true)?.count();
        println!("n = {n}: {total} operations, {associative} associative");
    }
    let first = enumerate_binary_ops(2, true)?.next().expect("at least one");
    println!("first semigroup on two elements: {:?}", first.cells());
    Ok(())
}
