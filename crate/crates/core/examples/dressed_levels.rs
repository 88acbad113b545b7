// Dressed-level ladder of the Jaynes-Cummings model at weak coupling.

use jc_thermo::eigensystem::{enumerate_levels, rabi_frequency, JCParams};

fn main() {
    let params = JCParams::resonant(0.02).unwrap();

    println!("resonant ladder, g = {}", params.g);
    println!(
        "{:>3} {:>3} {:>7} {:>13} {:>9} {:>9}",
        "k", "n", "branch", "energy", "amp_e", "amp_g"
    );
    for (index, level) in enumerate_levels(&params, 5).unwrap() {
        println!(
            "{:>3} {:>3} {:>7} {:>13.8} {:>9.5} {:>9.5}",
            index.k,
            level.n,
            level.branch.label(),
            level.energy,
            level.amp_e(),
            level.amp_g(),
        );
    }

    // Each doublet splits by the n-photon Rabi frequency.
    println!();
    for n in 1..=5 {
        let split = rabi_frequency(&params, n).unwrap();
        println!(
            "n = {n}: splitting {split:.6}, 2 g sqrt(n) = {:.6}",
            2.0 * params.g * (n as f64).sqrt()
        );
    }

    // Off resonance the gaps widen and the branches mix unevenly: the
    // upper branch leans toward |e, n-1> when the qubit is the stiffer
    // oscillator (delta > 0).
    let detuned = JCParams::new(1.0, 0.96, 0.02).unwrap();
    println!("\ndetuned ladder, delta = {:.2}", detuned.detuning());
    for (index, level) in enumerate_levels(&detuned, 3).unwrap() {
        println!(
            "{:>3} {:>3} {:>7} {:>13.8} {:>9.5} {:>9.5}",
            index.k,
            level.n,
            level.branch.label(),
            level.energy,
            level.amp_e(),
            level.amp_g(),
        );
    }
}
