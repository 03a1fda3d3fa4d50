#include "spdet/report.hpp"

namespace spdet {

using nlohmann::ordered_json;

namespace {

ordered_json names_of(const Fsa& fsa, const std::vector<StateId>& xs) {
    ordered_json arr = ordered_json::array();
    for (StateId x : xs) arr.push_back(fsa.state_name(x));
    return arr;
}

ordered_json witness_to_json(const Fsa& fsa, const Condition& c) {
    if (c.divergence) {
        const DivergenceWitness& w = *c.divergence;
        return ordered_json{{"kind", "divergence"},
                            {"node", w.node},
                            {"state", w.state},
                            {"lasso", ordered_json{{"stem", names_of(fsa, w.lasso.stem)},
                                                   {"cycle", names_of(fsa, w.lasso.cycle)}}}};
    }
    if (c.cycle) {
        const CycleWitness& w = *c.cycle;
        ordered_json nodes = ordered_json::array();
        for (const std::string& n : w.nodes) nodes.push_back(n);
        ordered_json symbols = ordered_json::array();
        for (const std::string& s : w.symbols) symbols.push_back(s);
        ordered_json out{{"kind", "cycle"}, {"nodes", nodes}};
        if (!w.symbols.empty()) out["symbols"] = symbols;
        return out;
    }
    return nullptr;
}

}  // namespace

ordered_json assumption1_to_json(const Fsa& fsa, const Assumption1Report& report) {
    ordered_json out;
    out["deadlock_free"] = report.deadlock_free;
    out["deadlock_witness"] =
        report.deadlock_witness ? ordered_json(fsa.state_name(*report.deadlock_witness))
                                : ordered_json(nullptr);
    out["divergence_free"] = report.divergence_free;
    out["divergence_cycle"] = report.divergence_free
                                  ? ordered_json(nullptr)
                                  : ordered_json(names_of(fsa, report.divergence_cycle));
    return out;
}

ordered_json verdict_to_json(const Fsa& fsa, const Verdict& verdict) {
    ordered_json out;
    out["property"] = to_string(verdict.property);
    out["method"] = to_string(verdict.method);
    out["outcome"] = to_string(verdict.outcome);
    out["holds"] = verdict.outcome == Outcome::Unknown
                       ? ordered_json(nullptr)
                       : ordered_json(verdict.outcome == Outcome::Holds);
    out["vacuous"] = verdict.stats.vacuous;
    ordered_json conditions = ordered_json::array();
    for (const Condition& c : verdict.conditions)
        conditions.push_back(ordered_json{{"id", c.id},
                                          {"description", c.description},
                                          {"fired", c.fired},
                                          {"witness", witness_to_json(fsa, c)}});
    out["conditions"] = conditions;
    out["stats"] = ordered_json{{"nodes_built", verdict.stats.nodes_built},
                                {"milliseconds", verdict.stats.milliseconds}};
    if (verdict.assumption1)
        out["assumption1"] = assumption1_to_json(fsa, *verdict.assumption1);
    return out;
}

ordered_json check_report(const FsaDocument& doc, PropertyKind property,
                          const SpecPairs& spec, const std::vector<Verdict>& verdicts,
                          const Assumption1Report& assumption1, int exit_code) {
    ordered_json out;
    out["file"] = doc.source_path;
    out["property"] = to_string(property);
    if (property == PropertyKind::Spdd) {
        ordered_json pairs = ordered_json::array();
        for (const auto& [a, b] : spec)
            pairs.push_back(ordered_json::array(
                {doc.fsa.state_name(a), doc.fsa.state_name(b)}));
        out["spec_pairs"] = pairs;
    }
    out["assumption1"] = assumption1_to_json(doc.fsa, assumption1);
    ordered_json warnings = ordered_json::array();
    bool any_legacy = false;
    for (const Verdict& v : verdicts)
        if (v.method == MethodKind::LegacyDetector || v.method == MethodKind::LegacyObserver)
            any_legacy = true;
    if (any_legacy && (!assumption1.deadlock_free || !assumption1.divergence_free))
        warnings.push_back("assumption1_violated");
    out["warnings"] = warnings;
    ordered_json list = ordered_json::array();
    for (const Verdict& v : verdicts) list.push_back(verdict_to_json(doc.fsa, v));
    out["verdicts"] = list;
    out["exit_code"] = exit_code;
    return out;
}

int exit_code_for(const std::vector<Verdict>& verdicts) {
    bool unknown = false;
    for (const Verdict& v : verdicts) {
        if (v.outcome == Outcome::Fails) return 1;
        if (v.outcome == Outcome::Unknown) unknown = true;
    }
    return unknown ? 3 : 0;
}

}  // namespace spdet
