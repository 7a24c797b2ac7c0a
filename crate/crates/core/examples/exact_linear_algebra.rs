//! Row reduction over Q and F_p.

use doublecover::field::Field;
use doublecover::linalg::{nullspace, rank, rref, solve, Matrix};

fn show(m: &Matrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| format!("{x:>5}")).collect();
        println!("  [{}]", row.join(" "));
    }
}

fn main() -> doublecover::Result<()> {
    let data: &[&[i64]] = &[&[2, 4, 1, 3], &[1, 2, 1, 1], &[3, 6, 2, 4]];
    for f in [Field::Rational, Field::prime(7)?] {
        let m = Matrix::from_i64_rows(f, data);
        let (r, pivots) = rref(&m);
        println!("over {f}: rank {}, pivots {pivots:?}", rank(&m));
        show(&r);
        for v in nullspace(&m) {
            let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            println!("  kernel vector ({})", v.join(", "));
        }
        let b = vec![f.from_i64(1), f.from_i64(1), f.from_i64(2)];
        match solve(&m, &b)? {
            Some(x) => println!("  solution {:?}", x.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
            None => println!("  inconsistent"),
        }
    }
    Ok(())
}
