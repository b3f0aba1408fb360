use ncpk::bijections::{alternating_recurrence, determinant_count, path_matrix};
use ncpk::counting::raney;

fn main() -> ncpk::Result<()> {
    for row in path_matrix(3, 2) {
        println!("{}", row.iter().map(|x| format!("{x:>4}")).collect::<String>());
    }
    for k in 1..=4 {
        for n in 1..=6 {
            let det = determinant_count(n, k)?;
            let ran = raney(n as u64, k as i64 + 1, 2)?;
            // the recurrence only holds from n = 3 on
            let rec = if n > 2 { alternating_recurrence(n, k)?.to_string() } else { "-".into() };
            println!("k={k} n={n}: det {det} recurrence {rec} Ran {ran}");
        }
    }
    Ok(())
}
