#include "spdet/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "spdet/format.hpp"
#include "spdet/fuzz.hpp"
#include "spdet/report.hpp"
#include "spdet/verify.hpp"

namespace spdet {

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnknown = 3;

// "(x0,x2)" or "x0,x2" -> ordered pair of state ids.
std::pair<StateId, StateId> parse_spec_pair(const Fsa& fsa, std::string text) {
    if (!text.empty() && text.front() == '(' && text.back() == ')')
        text = text.substr(1, text.size() - 2);
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("spec pair must look like (x0,x2)");
    std::string first = text.substr(0, comma);
    std::string second = text.substr(comma + 1);
    auto a = fsa.state_by_name(first);
    auto b = fsa.state_by_name(second);
    if (!a) throw std::invalid_argument("undeclared state in spec pair: " + first);
    if (!b) throw std::invalid_argument("undeclared state in spec pair: " + second);
    return {*a, *b};
}

std::vector<MethodKind> methods_for(PropertyKind property, const std::string& method) {
    const bool spd = property == PropertyKind::Spd;
    const bool spdd = property == PropertyKind::Spdd;
    if (method == "all") {
        if (spd)
            return {MethodKind::Observer, MethodKind::Detector, MethodKind::CcEpsilon};
        if (spdd) return {MethodKind::Observer};
        return {MethodKind::LegacyDetector};
    }
    if (method == "observer" && (spd || spdd)) return {MethodKind::Observer};
    if (method == "detector" && spd) return {MethodKind::Detector};
    if (method == "cc" && spd) return {MethodKind::CcEpsilon};
    if (method == "legacy-detector" && (spd || property == PropertyKind::Sd))
        return {MethodKind::LegacyDetector};
    if (method == "legacy-observer" && spdd) return {MethodKind::LegacyObserver};
    throw std::invalid_argument("method '" + method + "' does not apply to property '" +
                                to_string(property) + "'");
}

int run_check(const std::string& file, const std::string& property_name,
              std::string method, const std::vector<std::string>& spec_args,
              std::size_t max_observer_nodes, std::ostream& out, std::ostream& err) {
    PropertyKind property;
    if (property_name == "spd") property = PropertyKind::Spd;
    else if (property_name == "spdd") property = PropertyKind::Spdd;
    else if (property_name == "sd") property = PropertyKind::Sd;
    else {
        err << "error: unknown property '" << property_name << "' (spd, spdd or sd)\n";
        return kExitUsage;
    }

    if (method.empty()) {
        switch (property) {
            case PropertyKind::Spd: method = "detector"; break;
            case PropertyKind::Spdd: method = "observer"; break;
            case PropertyKind::Sd: method = "legacy-detector"; break;
        }
    }

    FsaDocument doc;
    try {
        doc = parse_fsa_file(file);
    } catch (const std::exception& e) {
        err << "error: " << file << ": " << e.what() << "\n";
        return kExitUsage;
    }

    SpecPairs spec = doc.spec;
    std::vector<MethodKind> methods;
    try {
        for (const std::string& s : spec_args)
            spec.push_back(parse_spec_pair(doc.fsa, s));
        spec = normalize_spec_pairs(std::move(spec));
        methods = methods_for(property, method);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::vector<Verdict> verdicts;
    for (MethodKind m : methods) {
        switch (property) {
            case PropertyKind::Spd:
                if (m == MethodKind::Observer)
                    verdicts.push_back(check_spd_observer(doc.fsa, max_observer_nodes));
                else if (m == MethodKind::Detector)
                    verdicts.push_back(check_spd_detector(doc.fsa));
                else if (m == MethodKind::CcEpsilon)
                    verdicts.push_back(check_spd_cc(doc.fsa));
                else
                    verdicts.push_back(legacy_check_spd_detector(doc.fsa));
                break;
            case PropertyKind::Spdd:
                if (m == MethodKind::Observer)
                    verdicts.push_back(check_spdd_observer(doc.fsa, spec, max_observer_nodes));
                else
                    verdicts.push_back(
                        legacy_check_spdd_observer(doc.fsa, spec, max_observer_nodes));
                break;
            case PropertyKind::Sd:
                verdicts.push_back(legacy_check_sd_detector(doc.fsa));
                break;
        }
    }

    int code = exit_code_for(verdicts);
    Assumption1Report a1 = check_assumption1(doc.fsa);
    out << check_report(doc, property, spec, verdicts, a1, code).dump(2) << "\n";
    return code;
}

int run_export(const std::string& file, const std::string& what,
               const std::string& out_path, std::size_t max_observer_nodes,
               std::ostream& out, std::ostream& err) {
    FsaDocument doc;
    try {
        doc = parse_fsa_file(file);
    } catch (const std::exception& e) {
        err << "error: " << file << ": " << e.what() << "\n";
        return kExitUsage;
    }

    std::string dot;
    try {
        if (what == "observer")
            dot = export_dot(build_observer(doc.fsa, max_observer_nodes), doc.fsa);
        else if (what == "detector")
            dot = export_dot(build_detector(doc.fsa), doc.fsa);
        else if (what == "cc")
            dot = export_dot(build_self_composition(doc.fsa), doc.fsa);
        else if (what == "cc-eps")
            dot = export_dot(extend_epsilon(build_self_composition(doc.fsa), doc.fsa),
                             doc.fsa);
        else {
            err << "error: unknown structure '" << what
                << "' (observer, detector, cc or cc-eps)\n";
            return kExitUsage;
        }
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << " after " << e.nodes_built << " nodes\n";
        return kExitUnknown;
    }

    if (out_path.empty()) {
        out << dot;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << out_path << "\n";
            return kExitUsage;
        }
        f << dot;
    }
    return kExitHolds;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"verification of strong periodic (D-)detectability for "
                 "partially observed finite-state automata"};
    app.require_subcommand(1);

    std::string check_property, check_file, check_method;
    std::vector<std::string> check_spec;
    std::size_t max_observer_nodes = kDefaultObserverNodeBudget;
    CLI::App* check = app.add_subcommand("check", "decide a property of an automaton");
    check->add_option("property", check_property, "spd, spdd or sd")->required();
    check->add_option("file", check_file, "automaton file")->required();
    check->add_option("--method", check_method,
                      "observer, detector, cc, all, legacy-detector or legacy-observer");
    check->add_option("--spec", check_spec, "ordered state pair like (x1,x2); repeatable");
    check->add_option("--max-observer-nodes", max_observer_nodes,
                      "node budget for subset constructions");

    std::string export_file, export_what, export_out;
    CLI::App* exp = app.add_subcommand("export", "render a derived automaton as DOT");
    exp->add_option("file", export_file, "automaton file")->required();
    exp->add_option("structure", export_what, "observer, detector, cc or cc-eps")->required();
    exp->add_option("-o,--output", export_out, "output path (default stdout)");
    exp->add_option("--max-observer-nodes", max_observer_nodes,
                    "node budget for subset constructions");

    FuzzOptions fuzz_options;
    CLI::App* fuzz = app.add_subcommand("fuzz", "randomized cross-validation");
    fuzz->add_option("--count", fuzz_options.count, "number of cases");
    fuzz->add_option("--seed", fuzz_options.seed, "master seed");
    fuzz->add_option("--max-states", fuzz_options.max_states, "state-count ceiling");

    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    storage.insert(storage.begin(), "spdet");
    for (std::string& s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitHolds;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (check->parsed())
        return run_check(check_file, check_property, check_method, check_spec,
                         max_observer_nodes, out, err);
    if (exp->parsed())
        return run_export(export_file, export_what, export_out, max_observer_nodes, out, err);
    if (fuzz->parsed()) {
        if (fuzz_options.max_states == 0 || fuzz_options.max_states > 8) {
            err << "error: --max-states must be between 1 and 8\n";
            return kExitUsage;
        }
        FuzzReport report = run_fuzz_suite(fuzz_options);
        out << report.to_text();
        return report.clean() ? kExitHolds : kExitFails;
    }
    return kExitUsage;
}

}  // namespace spdet
