#pragma once

#include <iosfwd>
#include <string>

namespace ckext {

struct RunOptions {
    bool timestamp = true;              // add a timestamp field to the report
    std::string report_json_override;   // CLI flags win over config paths
    std::string samples_csv_override;
};

// Parse a JSON problem description, build the requested objects, run the
// checks, write the report/CSV outputs.  Human-readable progress goes to
// out, errors to err.  Returns the process exit code: 0 when every check
// passed, 2 when any check failed, 1 on a configuration or construction
// error.
int run_pipeline(const std::string& config_text, std::ostream& out, std::ostream& err,
                 const RunOptions& opts = {});

} // namespace ckext
