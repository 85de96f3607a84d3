//! The probability extension of Z/4 is convolution.

use monadic_extension::extend::{check_oracle, oracle_convolution};
use monadic_extension::MonadKind;
use monadic_extension::{extend_direct, extend_via_tensor, prob, BinOpTable, CheckOptions};

fn main() -> monadic_extension::Result<()> {
    let z4 = BinOpTable::cyclic(4);
    let x = z4.left().clone();
    let die = prob::uniform(&x, &[0, 1, 2, 3])?;
    let coin = prob::dist(&x, &[(0, 1, 2), (1, 1, 2)])?;

    println!("direct:      {}", extend_direct(&z4, &die, &coin)?);
    println!("via tensor:  {}", extend_via_tensor(&z4, &die, &coin)?);
    println!("convolution: {}", oracle_convolution(&z4, &die, &coin)?);

    let r = check_oracle(MonadKind::Prob, &z4, &CheckOptions::sampled(42, 500))?;
    println!("{}: {:?} on {} sampled pairs", r.law, r.status, r.instances);
    Ok(())
}
