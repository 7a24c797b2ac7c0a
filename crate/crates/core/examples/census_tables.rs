//! Integer tables: dimension counts for sextic double planes, Severi excess,
//! Gauss-Wahl coranks, and the quartic double solid ledger.

use doublecover::census::{
    cork_report, dim_report, prop64_ledger, quartic_extension_counts, severi_report, totaro_check,
};

fn main() -> doublecover::Result<()> {
    println!("n=2, d=3");
    println!("{:>3} {:>6} {:>6} {:>6} {:>6} {:>6}", "k", "V_d", "VW", "Z", "W", "fibre");
    for k in 3..=9 {
        let r = dim_report(2, k, 3)?;
        println!(
            "{k:>3} {:>6} {:>6} {:>6} {:>6} {:>6}",
            r.dim_Vd, r.dim_VW, r.dim_Z, r.dim_W, r.fiber_dim
        );
    }

    println!("\nSeveri excess by d (k = d..10)");
    for d in 1..=6 {
        let ex: Vec<i64> = (d..=10).map(|k| severi_report(k, d).map(|s| s.excess)).collect::<Result<_, _>>()?;
        println!("d={d}: {ex:?}");
    }

    println!("\n{:>3} {:>6} {:>5} {:>4} {:>6}  source", "k", "genus", "cork", "nu2", "fibre");
    for k in 1..=8 {
        let c = cork_report(k)?;
        println!(
            "{k:>3} {:>6} {:>5} {:>4} {:>6}  {:?}",
            c.genus, c.cork_phi, c.nu2, c.fiber_dim_reported, c.source
        );
    }

    let l = prop64_ledger();
    println!("\nledger Y {:?}  S {:?}  C {:?}", l.row_y, l.row_s, l.row_c);
    println!("quartics through kC, k = 1, 2: {:?}", quartic_extension_counts());
    for (name, ok) in totaro_check()? {
        println!("{name}: weighted sextic {ok}");
    }
    Ok(())
}
