//! The extension of Z/2 and of the three-element left-zero band to maximal
//! linked systems.

use monadic_extension::{extended_cayley_table, BinOpTable, FinSet, Guards, MonadKind};

fn print_table(kind: MonadKind, op: &BinOpTable) -> monadic_extension::Result<()> {
    let ext = extended_cayley_table(kind, op, false, &Guards::default())?;
    let labels: Vec<String> = ext.elements().iter().map(|e| e.render()).collect();
    let width = labels.iter().map(String::len).max().unwrap_or(1);
    for (i, row) in labels.iter().enumerate() {
        let cells: Vec<String> = (0..labels.len())
            .map(|j| format!("{:width$}", labels[ext.table().get(i, j)]))
            .collect();
        println!("{row:width$} | {}", cells.join(" "));
    }
    println!();
    Ok(())
}

fn main() -> monadic_extension::Result<()> {
    print_table(MonadKind::Lambda, &BinOpTable::cyclic(2))?;
    print_table(MonadKind::Lambda, &BinOpTable::left_zero(&FinSet::range(3)))?;
    Ok(())
}
