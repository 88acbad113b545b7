// Truncation bookkeeping for the resonant weak-coupling model (s = 11):
// the crossover block index plus two, against the index where thermal
// occupation drops below 1e-20, for a row of coupling ratios.

use jc_thermo::runner::{cmd_table1, OutputFormat};

fn main() {
    let table = cmd_table1().unwrap();
    print!("{}", table.render(OutputFormat::Csv));
}
