#include "spdet/fuzz.hpp"

#include <sstream>

#include "spdet/format.hpp"
#include "spdet/naive.hpp"
#include "spdet/props.hpp"
#include "spdet/verify.hpp"

namespace spdet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

GenConfig corpus_config(std::uint64_t master_seed, std::uint32_t index,
                        std::uint32_t max_states) {
    std::uint64_t h = splitmix64(master_seed ^ (0x51ed270bull + index));
    GenConfig cfg;
    cfg.seed = splitmix64(h ^ 0xabcdef12345678ull);
    cfg.states = 1 + static_cast<std::uint32_t>(h % max_states);
    cfg.events = static_cast<std::uint32_t>((h >> 8) % 6);  // 0..5
    static const double kFractions[3] = {0.0, 0.3, 0.6};
    cfg.silent_fraction = kFractions[index % 3];
    static const double kDensities[4] = {1.0, 1.5, 2.0, 2.5};
    cfg.density = kDensities[(h >> 16) % 4];
    std::uint32_t max_initial = std::min(cfg.states, 3u);
    cfg.initial_count = static_cast<std::uint32_t>((h >> 24) % (max_initial + 1));
    return cfg;
}

SpecPairs corpus_spec_pairs(const Fsa& fsa, std::uint64_t seed) {
    SpecPairs spec;
    if (fsa.state_count() == 0) return spec;
    std::uint64_t h = splitmix64(seed ^ 0x5bd1e995u);
    std::uint32_t count = 1 + static_cast<std::uint32_t>(h % 2);
    for (std::uint32_t i = 0; i < count; ++i) {
        std::uint64_t d = splitmix64(h + i);
        StateId a = static_cast<StateId>(d % fsa.state_count());
        StateId b = static_cast<StateId>((d >> 16) % fsa.state_count());
        spec.emplace_back(a, b);
    }
    return normalize_spec_pairs(std::move(spec));
}

std::vector<std::string> cross_validate(const Fsa& fsa, const SpecPairs& spec) {
    std::vector<std::string> problems;

    Verdict obs = check_spd_observer(fsa);
    Verdict det = check_spd_detector(fsa);
    Verdict cc = check_spd_cc(fsa);

    auto fired = [](const Verdict& v, std::size_t i) { return v.conditions[i].fired; };

    if (obs.outcome != det.outcome || det.outcome != cc.outcome)
        problems.push_back("spd method disagreement on outcome");
    else if (obs.outcome != Outcome::Unknown) {
        if (fired(obs, 0) != fired(det, 0) || fired(det, 0) != fired(cc, 0))
            problems.push_back("spd method disagreement on the divergence condition");
        if (fired(obs, 1) != fired(det, 1) || fired(det, 1) != fired(cc, 1))
            problems.push_back("spd method disagreement on the cycle condition");
    }

    NaiveResult nv = naive_spd(fsa);
    if (nv.property_holds != det.holds())
        problems.push_back("naive spd oracle disagrees with the detector method");

    Verdict spdd = check_spdd_observer(fsa, spec);
    NaiveResult nvd = naive_spdd(fsa, spec);
    if (nvd.property_holds != spdd.holds())
        problems.push_back("naive spdd oracle disagrees with the observer method");

    // With every ordered pair of distinct states specified, periodic
    // D-detectability degenerates to periodic detectability.
    SpecPairs all_pairs;
    for (StateId a = 0; a < fsa.state_count(); ++a)
        for (StateId b = 0; b < fsa.state_count(); ++b)
            if (a != b) all_pairs.emplace_back(a, b);
    Verdict bridge = check_spdd_observer(fsa, all_pairs);
    if (bridge.holds() != obs.holds())
        problems.push_back("spdd over all distinct pairs deviates from spd");

    if (PropCheckResult p5 = check_prop5(fsa); !p5)
        problems.push_back("observer-to-detector lifting failed: " + p5.counterexample);
    if (PropCheckResult p8 = check_prop8(fsa); !p8)
        problems.push_back("composition lifting failed: " + p8.counterexample);

    Assumption1Report a1 = check_assumption1(fsa);
    if (a1.deadlock_free && a1.divergence_free) {
        if (legacy_check_spd_detector(fsa).holds() != det.holds())
            problems.push_back("legacy spd deviates under satisfied assumptions");
        if (legacy_check_spdd_observer(fsa, spec).holds() != spdd.holds())
            problems.push_back("legacy spdd deviates under satisfied assumptions");
    }

    return problems;
}

std::string FuzzReport::to_text() const {
    std::ostringstream os;
    os << "fuzz seed=" << options.seed << " count=" << options.count
       << " max-states=" << options.max_states << "\n";
    os << "cases=" << cases << " discrepancies=" << discrepancies.size() << "\n";
    for (const std::string& d : discrepancies) os << d << "\n";
    return os.str();
}

FuzzReport run_fuzz_suite(const FuzzOptions& options) {
    FuzzReport report;
    report.options = options;
    for (std::uint32_t i = 0; i < options.count; ++i) {
        GenConfig cfg = corpus_config(options.seed, i, options.max_states);
        Fsa fsa = random_fsa(cfg);
        SpecPairs spec = corpus_spec_pairs(fsa, cfg.seed);
        std::vector<std::string> problems = cross_validate(fsa, spec);
        ++report.cases;
        if (problems.empty()) continue;
        std::ostringstream os;
        os << "case " << i << ":";
        for (const std::string& p : problems) os << "\n  " << p;
        FsaDocument doc{fsa, spec, ""};
        os << "\nautomaton for replay:\n" << print_fsa(doc);
        report.discrepancies.push_back(os.str());
    }
    return report;
}

}  // namespace spdet
