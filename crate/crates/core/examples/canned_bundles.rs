//! The shipped example bundles, serialized and lifted.

use doublecover::ci::CompleteIntersection;
use doublecover::gen::{canned, CANNED_NAMES};
use doublecover::lift::{lift_branch, recover_branch};

fn main() -> doublecover::Result<()> {
    for name in CANNED_NAMES {
        let b = canned(name)?;
        let roles: Vec<&str> = b.polys.iter().map(|(r, _)| r.as_str()).collect();
        println!("{name}: n={} d={:?} k={:?} roles {roles:?}", b.n, b.d, b.k);
        println!("  {}", b.description);
        let (Some(g), Some(fk), Some(fkd), Some(g2d)) = (b.get("g"), b.get("fk"), b.get("fkd"), b.get("g2d")) else {
            let p = b.get("totaro").expect("weighted sextic");
            println!("  weights {:?}, degree {:?}", p.ring().weights(), p.degree());
            continue;
        };
        let ci = CompleteIntersection::new(fkd.clone(), fk.clone())?;
        let fam = lift_branch(g, &ci)?;
        let rec = recover_branch(&fam, g2d)?;
        println!(
            "  lift family dimension {}, branch recovered {}",
            fam.dimension(),
            rec.is_some_and(|r| r.matches)
        );
    }
    println!("\n{}", canned("quadric-surface")?.to_json_string());
    Ok(())
}
