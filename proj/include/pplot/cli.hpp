#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pplot {

/// Entry point for the `pplot` command line:
///
///   pplot render --data <csv> --spec <json> --out <svg> [--width 1200] [--height 600]
///   pplot replay --data <csv> --spec <json> --events <json> --out <svg>
///   pplot serve  [--host 0.0.0.0] [--port $PPLOT_PORT|8080] [--static <dir>]
///
/// Returns 0 on success and 2 for usage errors or invalid input; diagnostics
/// go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pplot
