//! Regenerate `fixtures/berger_frame.json` by searching for an aligned frame.

use diracbound::berger::{solve_frame, So5Model};

fn main() -> diracbound::Result<()> {
    let model = So5Model::new()?;
    let frame = solve_frame(&model)?;
    print!("{}", frame.to_json());
    Ok(())
}
