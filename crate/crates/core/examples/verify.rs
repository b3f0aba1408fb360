use ncpk::verify::{run_verify, Status, VerifyConfig};

fn main() -> ncpk::Result<()> {
    let report = run_verify(VerifyConfig { max_n: 3, max_k: 2, ..VerifyConfig::default() })?;
    for c in report.checks.iter().take(12) {
        println!("{} {} {} {}", c.status, c.claim_id, c.closed_form, c.observed);
    }
    println!("{} of {} pass", report.count(Status::Pass), report.checks.len());
    Ok(())
}
