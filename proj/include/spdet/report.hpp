// report.hpp -- JSON rendering of verdicts and diagnostics. Reports are
// deterministic for fixed inputs; only the timing fields vary.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "spdet/format.hpp"
#include "spdet/verify.hpp"

namespace spdet {

nlohmann::ordered_json assumption1_to_json(const Fsa& fsa, const Assumption1Report& report);
nlohmann::ordered_json verdict_to_json(const Fsa& fsa, const Verdict& verdict);

/// The full report of a check command: inputs, assumption diagnostics,
/// one verdict per method, warnings and the process exit code.
nlohmann::ordered_json check_report(const FsaDocument& doc, PropertyKind property,
                                    const SpecPairs& spec,
                                    const std::vector<Verdict>& verdicts,
                                    const Assumption1Report& assumption1,
                                    int exit_code);

int exit_code_for(const std::vector<Verdict>& verdicts);

}  // namespace spdet
