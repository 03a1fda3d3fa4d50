#include "spdet/generator.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <tuple>

namespace spdet {

namespace {

// Thin shim over mt19937_64. The standard distributions are
// implementation-defined, so derive values from raw draws to keep
// generated automata identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    double unit() {  // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

std::string symbol_name(std::uint32_t i) {
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "s" + std::to_string(i);
}

}  // namespace

Fsa random_fsa(const GenConfig& cfg) {
    if (cfg.silent_fraction < 0.0 || cfg.silent_fraction > 1.0)
        throw std::invalid_argument("silent_fraction outside [0,1]");
    if (cfg.density < 0.0) throw std::invalid_argument("negative density");
    if (cfg.initial_count > cfg.states)
        throw std::invalid_argument("initial_count exceeds state count");

    Rng rng(cfg.seed);
    FsaBuilder builder;
    for (std::uint32_t i = 0; i < cfg.states; ++i)
        builder.add_state("x" + std::to_string(i));

    std::uint32_t alphabet = 0;
    if (cfg.events > 0)
        alphabet = 1 + static_cast<std::uint32_t>(rng.below(std::min(3u, cfg.events)));
    for (std::uint32_t i = 0; i < cfg.events; ++i) {
        std::string name = "t" + std::to_string(i);
        if (rng.chance(cfg.silent_fraction))
            builder.add_event(name, std::nullopt);
        else
            builder.add_event(name, symbol_name(static_cast<std::uint32_t>(rng.below(alphabet))));
    }

    std::vector<std::string> state_names;
    for (std::uint32_t i = 0; i < cfg.states; ++i)
        state_names.push_back("x" + std::to_string(i));
    std::vector<std::string> event_names;
    for (std::uint32_t i = 0; i < cfg.events; ++i)
        event_names.push_back("t" + std::to_string(i));

    if (cfg.events > 0) {
        std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> used;
        for (std::uint32_t s = 0; s < cfg.states; ++s) {
            std::uint32_t want = static_cast<std::uint32_t>(cfg.density);
            if (rng.chance(cfg.density - want)) ++want;
            std::uint32_t placed = 0;
            for (std::uint32_t attempt = 0; attempt < want * 4 + 4 && placed < want; ++attempt) {
                std::uint32_t ev = static_cast<std::uint32_t>(rng.below(cfg.events));
                std::uint32_t dst = static_cast<std::uint32_t>(rng.below(cfg.states));
                if (!used.insert({s, ev, dst}).second) continue;
                builder.trans(state_names[s], event_names[ev], state_names[dst]);
                ++placed;
            }
        }
    }

    // Initial states: a seeded selection of distinct indices.
    std::vector<std::uint32_t> order(cfg.states);
    for (std::uint32_t i = 0; i < cfg.states; ++i) order[i] = i;
    for (std::uint32_t i = cfg.states; i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<std::uint32_t> chosen(order.begin(), order.begin() + cfg.initial_count);
    std::sort(chosen.begin(), chosen.end());
    for (std::uint32_t i : chosen) builder.add_initial(state_names[i]);

    return builder.build();
}

}  // namespace spdet
