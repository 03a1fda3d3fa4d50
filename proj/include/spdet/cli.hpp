// cli.hpp -- the command surface. run_cli is the whole program behind the
// binary; tests drive it in-process to pin down exit codes and reports.
//
// Exit codes: 0 property holds, 1 property fails, 2 usage or parse error,
// 3 construction budget exceeded (verdict unknown).

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spdet {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spdet
