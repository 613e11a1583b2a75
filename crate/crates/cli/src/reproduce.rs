//! Prebaked sweep configurations reproducing the reference result tables:
//! the Bernoulli curvature grid, the two divergence/calibration grids, the
//! survival-data curvature grid (user-supplied data), the multinomial grid,
//! and the normal-location closed-form grid.

use crate::config::{parse_config, ConfigError, RunConfig};

const BERNOULLI_GRID: &str = "
model = beta
prior = 0.5 0.5
prior = 1 1
prior = 1 3
prior = 3 1
c = 0.5
c = 1
c = 1.5
c = 3
c = 5
a = 0.5
a = 1
a = 2
t = 11
n = 20
";

const TABLE1: &str = "
# Bernoulli curvature grid, both contamination classes
analysis = curvature
class = epsilon
class = geometric
";

const TABLE2: &str = "
# divergence and calibration under linear contamination
analysis = divergence
analysis = calibration
class = epsilon
epsilon = 0.05
epsilon = 0.5
epsilon = 1
";

const TABLE3: &str = "
# divergence and calibration under geometric contamination
analysis = divergence
analysis = calibration
class = geometric
epsilon = 0.05
epsilon = 0.5
epsilon = 1
";

// The survival data set is not bundled: export its status column to a
// delimited file and pass the path with --data. Deaths ('D') count as
// successes.
const TABLE4: &str = "
model = beta
prior = 0.5 0.5
prior = 1 1
prior = 1 3
prior = 3 1
c = 0.5
c = 1
c = 1.5
c = 3
c = 5
a = 0.5
a = 1
a = 2
analysis = curvature
class = epsilon
class = geometric
column = status
success = D
";

const TABLE5: &str = "
model = dirichlet
prior = 0.25 0.25 0.25 0.25
prior = 0.5 0.5 0.5 0.5
prior = 1 1 1 1
prior = 2 1 1 1
c = 0.5
c = 1
c = 1.5
c = 3
c = 5
a = 0.5
a = 1
a = 2
analysis = curvature
class = epsilon
class = geometric
counts = 6,4,5,5
";

const TABLE6: &str = "
model = normal
prior = 0.1 0.1
prior = 0.5 1
prior = 0.5 5
prior = 4 5
c = 0.5
c = 1
c = 1.5
c = 3
c = 5
a = 0.5
a = 1
a = 2
analysis = curvature
class = epsilon
class = geometric
mean = 4.1905
n = 20
";

/// Assembles the config text for a table id (`table1` .. `table6`).
/// `data_path` is required by `table4` and rejected elsewhere.
pub fn preset_text(table: &str, data_path: Option<&str>) -> Result<String, ConfigError> {
    let text = match table {
        "table1" => format!("{BERNOULLI_GRID}{TABLE1}"),
        "table2" => format!("{BERNOULLI_GRID}{TABLE2}"),
        "table3" => format!("{BERNOULLI_GRID}{TABLE3}"),
        "table4" => {
            let path = data_path.ok_or_else(|| {
                ConfigError::from_message(
                    "table4 needs --data pointing at a delimited file with a 'status' column \
                     (the survival data set is not redistributed; export the status column and \
                     deaths 'D' are counted as successes)",
                )
            })?;
            format!("{TABLE4}data = {path}\n")
        }
        "table5" => TABLE5.to_string(),
        "table6" => TABLE6.to_string(),
        other => {
            return Err(ConfigError::from_message(format!(
                "unknown table id '{other}' (expected table1 .. table6)"
            )))
        }
    };
    if table != "table4" && data_path.is_some() {
        return Err(ConfigError::from_message("--data is only used by table4"));
    }
    Ok(text)
}

pub fn preset(table: &str, data_path: Option<&str>) -> Result<RunConfig, ConfigError> {
    parse_config(&preset_text(table, data_path)?, None)
}
