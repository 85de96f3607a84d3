//! Tensor products in several monads.

use monadic_extension::tensor::check_tensor_associativity;
use monadic_extension::{exp, prob, tensor, upfamily, CheckOptions, FinSet, MonadKind};

fn main() -> monadic_extension::Result<()> {
    let x = FinSet::range(2);
    let y = FinSet::range(3);

    let a = exp::subset(&x, &[0, 1])?;
    let b = exp::subset(&y, &[2])?;
    println!("exp:    {}", tensor(&a, &b)?);

    let p = prob::dist(&x, &[(0, 1, 3), (1, 2, 3)])?;
    let q = prob::uniform(&y, &[0, 2])?;
    println!("prob:   {}", tensor(&p, &q)?);

    // the triangle {{0,1},{0,2},{1,2}} against a point
    let tri = upfamily::family(MonadKind::Lambda, &y, &[&[0, 1], &[0, 2], &[1, 2]])?;
    let pt = upfamily::family(MonadKind::Lambda, &x, &[&[1]])?;
    println!("lambda: {}", tensor(&tri, &pt)?);

    let r = check_tensor_associativity(MonadKind::Exp, &x, &x, &x, &CheckOptions::exhaustive())?;
    println!("{}: {:?} on {} triples", r.law, r.status, r.instances);
    Ok(())
}
