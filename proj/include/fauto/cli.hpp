#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fauto {

/// Entry point of the `fauto` command. `args` excludes the program name.
/// Results go to `out`; failures are reported on `err` as a JSON object
/// {"error": {"code": ..., "message": ...}} with a nonzero return value.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fauto
