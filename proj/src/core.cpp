#include "spdet/core.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "spdet/graph.hpp"

namespace spdet {

StateSet StateSet::from_unsorted(std::vector<StateId> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    StateSet s;
    s.xs_ = std::move(xs);
    return s;
}

bool StateSet::contains(StateId x) const {
    return std::binary_search(xs_.begin(), xs_.end(), x);
}

bool StateSet::intersects(const StateSet& other) const {
    auto a = xs_.begin();
    auto b = other.xs_.begin();
    while (a != xs_.end() && b != other.xs_.end()) {
        if (*a == *b) return true;
        if (*a < *b) ++a; else ++b;
    }
    return false;
}

bool StateSet::is_subset_of(const StateSet& other) const {
    return std::includes(other.xs_.begin(), other.xs_.end(), xs_.begin(), xs_.end());
}

void StateSet::insert(StateId x) {
    auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    if (it == xs_.end() || *it != x) xs_.insert(it, x);
}

std::optional<StateId> Fsa::state_by_name(const std::string& name) const {
    for (StateId i = 0; i < state_names_.size(); ++i)
        if (state_names_[i] == name) return i;
    return std::nullopt;
}

std::optional<EventId> Fsa::event_by_name(const std::string& name) const {
    for (EventId i = 0; i < event_names_.size(); ++i)
        if (event_names_[i] == name) return i;
    return std::nullopt;
}

std::optional<SymbolId> Fsa::symbol_by_name(const std::string& name) const {
    for (SymbolId i = 0; i < symbol_names_.size(); ++i)
        if (symbol_names_[i] == name) return i;
    return std::nullopt;
}

bool Fsa::operator==(const Fsa& other) const {
    return state_names_ == other.state_names_ && event_names_ == other.event_names_ &&
           event_labels_ == other.event_labels_ && symbol_names_ == other.symbol_names_ &&
           initial_ == other.initial_ && transitions_ == other.transitions_;
}

FsaBuilder& FsaBuilder::states(std::initializer_list<const char*> names) {
    for (const char* n : names) add_state(n);
    return *this;
}

StateId FsaBuilder::add_state(const std::string& name) {
    if (fsa_.state_by_name(name))
        throw std::invalid_argument("duplicate state declaration: " + name);
    fsa_.state_names_.push_back(name);
    return static_cast<StateId>(fsa_.state_names_.size() - 1);
}

FsaBuilder& FsaBuilder::event(const std::string& name) {
    add_event(name, std::nullopt);
    return *this;
}

FsaBuilder& FsaBuilder::event(const std::string& name, const std::string& symbol) {
    add_event(name, symbol);
    return *this;
}

EventId FsaBuilder::add_event(const std::string& name, std::optional<std::string> symbol) {
    if (fsa_.event_by_name(name))
        throw std::invalid_argument("duplicate event declaration: " + name);
    Label label = Label::silent();
    if (symbol) {
        auto sym = fsa_.symbol_by_name(*symbol);
        if (!sym) {
            fsa_.symbol_names_.push_back(*symbol);
            sym = static_cast<SymbolId>(fsa_.symbol_names_.size() - 1);
        }
        label = Label::symbol(*sym);
    }
    fsa_.event_names_.push_back(name);
    fsa_.event_labels_.push_back(label);
    return static_cast<EventId>(fsa_.event_names_.size() - 1);
}

FsaBuilder& FsaBuilder::initial(std::initializer_list<const char*> names) {
    for (const char* n : names) add_initial(n);
    return *this;
}

FsaBuilder& FsaBuilder::add_initial(const std::string& name) {
    StateId x = require_state(name);
    if (fsa_.initial_.contains(x))
        throw std::invalid_argument("state listed twice as initial: " + name);
    fsa_.initial_.insert(x);
    return *this;
}

FsaBuilder& FsaBuilder::trans(const std::string& src, const std::string& event,
                              const std::string& dst) {
    Transition t{require_state(src), require_event(event), require_state(dst)};
    if (std::find(fsa_.transitions_.begin(), fsa_.transitions_.end(), t) !=
        fsa_.transitions_.end())
        throw std::invalid_argument("duplicate transition: " + src + " " + event + " " + dst);
    fsa_.transitions_.push_back(t);
    return *this;
}

StateId FsaBuilder::require_state(const std::string& name) const {
    auto x = fsa_.state_by_name(name);
    if (!x) throw std::invalid_argument("undeclared state: " + name);
    return *x;
}

EventId FsaBuilder::require_event(const std::string& name) const {
    auto t = fsa_.event_by_name(name);
    if (!t) throw std::invalid_argument("undeclared event: " + name);
    return *t;
}

Fsa FsaBuilder::build() {
    fsa_.silent_out_.assign(fsa_.state_count(), {});
    fsa_.obs_out_.assign(fsa_.state_count(), {});
    for (const Transition& t : fsa_.transitions_) {
        Label l = fsa_.event_labels_[t.event];
        if (l.is_silent())
            fsa_.silent_out_[t.src].emplace_back(t.event, t.dst);
        else
            fsa_.obs_out_[t.src].push_back(ObsEdge{t.event, l.symbol_id(), t.dst});
    }
    for (auto& v : fsa_.silent_out_) std::sort(v.begin(), v.end());
    for (auto& v : fsa_.obs_out_)
        std::sort(v.begin(), v.end(), [](const ObsEdge& a, const ObsEdge& b) {
            return std::tie(a.event, a.dst) < std::tie(b.event, b.dst);
        });
    return std::move(fsa_);
}

SpecPairs normalize_spec_pairs(SpecPairs pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

StateSet unobservable_reach(const Fsa& fsa, const StateSet& from) {
    std::vector<char> seen(fsa.state_count(), 0);
    std::deque<StateId> work;
    for (StateId x : from) {
        if (x >= fsa.state_count())
            throw std::invalid_argument("state index out of range");
        if (!seen[x]) { seen[x] = 1; work.push_back(x); }
    }
    std::vector<StateId> out;
    while (!work.empty()) {
        StateId x = work.front();
        work.pop_front();
        out.push_back(x);
        for (auto [ev, y] : fsa.silent_out(x)) {
            (void)ev;
            if (!seen[y]) { seen[y] = 1; work.push_back(y); }
        }
    }
    return StateSet::from_unsorted(std::move(out));
}

StateSet observable_reach(const Fsa& fsa, const StateSet& from, SymbolId symbol) {
    if (symbol >= fsa.symbol_count())
        throw std::invalid_argument("unknown output symbol");
    std::vector<StateId> out;
    for (StateId x : from) {
        if (x >= fsa.state_count())
            throw std::invalid_argument("state index out of range");
        for (const ObsEdge& e : fsa.observable_out(x))
            if (e.symbol == symbol) out.push_back(e.dst);
    }
    return StateSet::from_unsorted(std::move(out));
}

StateSet current_state_estimate(const Fsa& fsa, std::span<const SymbolId> observation) {
    StateSet m = unobservable_reach(fsa, fsa.initial());
    for (SymbolId s : observation) {
        if (m.empty()) return m;
        m = unobservable_reach(fsa, observable_reach(fsa, m, s));
    }
    return m;
}

namespace {

DiGraph silent_graph(const Fsa& fsa) {
    DiGraph g(fsa.state_count());
    for (StateId x = 0; x < fsa.state_count(); ++x)
        for (auto [ev, y] : fsa.silent_out(x)) {
            (void)ev;
            g.add_edge(x, y);
        }
    return g;
}

// States lying on some silent cycle: a nontrivial silent SCC or a silent
// self-loop.
std::vector<char> silent_cycle_states(const Fsa& fsa, const DiGraph& g) {
    SccPartition scc = tarjan_scc(g);
    std::vector<std::uint32_t> comp_size(scc.component_count, 0);
    for (StateId x = 0; x < fsa.state_count(); ++x) comp_size[scc.component_of[x]]++;
    std::vector<char> on_cycle(fsa.state_count(), 0);
    for (StateId x = 0; x < fsa.state_count(); ++x) {
        if (comp_size[scc.component_of[x]] > 1) { on_cycle[x] = 1; continue; }
        for (const auto& e : g.out(x))
            if (e.to == x) { on_cycle[x] = 1; break; }
    }
    return on_cycle;
}

}  // namespace

StateSet divergent_states(const Fsa& fsa) {
    DiGraph g = silent_graph(fsa);
    std::vector<char> on_cycle = silent_cycle_states(fsa, g);

    // Backward closure over silent edges.
    std::vector<std::vector<StateId>> preds(fsa.state_count());
    for (StateId x = 0; x < fsa.state_count(); ++x)
        for (const auto& e : g.out(x)) preds[e.to].push_back(x);

    std::deque<StateId> work;
    std::vector<char> div(fsa.state_count(), 0);
    for (StateId x = 0; x < fsa.state_count(); ++x)
        if (on_cycle[x]) { div[x] = 1; work.push_back(x); }
    while (!work.empty()) {
        StateId x = work.front();
        work.pop_front();
        for (StateId p : preds[x])
            if (!div[p]) { div[p] = 1; work.push_back(p); }
    }

    std::vector<StateId> out;
    for (StateId x = 0; x < fsa.state_count(); ++x)
        if (div[x]) out.push_back(x);
    return StateSet::from_unsorted(std::move(out));
}

StateSet reachable_states(const Fsa& fsa) {
    std::vector<char> seen(fsa.state_count(), 0);
    std::deque<StateId> work;
    for (StateId x : fsa.initial()) { seen[x] = 1; work.push_back(x); }
    std::vector<StateId> out;
    while (!work.empty()) {
        StateId x = work.front();
        work.pop_front();
        out.push_back(x);
        auto visit = [&](StateId y) {
            if (!seen[y]) { seen[y] = 1; work.push_back(y); }
        };
        for (auto [ev, y] : fsa.silent_out(x)) { (void)ev; visit(y); }
        for (const ObsEdge& e : fsa.observable_out(x)) visit(e.dst);
    }
    return StateSet::from_unsorted(std::move(out));
}

Assumption1Report check_assumption1(const Fsa& fsa) {
    Assumption1Report report;
    StateSet reach = reachable_states(fsa);
    for (StateId x : reach) {
        if (!fsa.has_outgoing(x)) {
            report.deadlock_free = false;
            report.deadlock_witness = x;
            break;
        }
    }
    DiGraph g = silent_graph(fsa);
    std::vector<char> on_cycle = silent_cycle_states(fsa, g);
    for (StateId x : reach) {
        if (!on_cycle[x]) continue;
        report.divergence_free = false;
        auto lasso = silent_lasso_from(fsa, x);
        report.divergence_cycle = lasso ? lasso->cycle : std::vector<StateId>{x};
        break;
    }
    return report;
}

std::optional<SilentLasso> silent_lasso_from(const Fsa& fsa, StateId x) {
    DiGraph g = silent_graph(fsa);
    std::vector<char> on_cycle = silent_cycle_states(fsa, g);
    SccPartition scc = tarjan_scc(g);

    // Stem: BFS from x over silent edges to the nearest cycle state.
    std::vector<std::int64_t> parent(fsa.state_count(), -2);
    std::deque<StateId> work{x};
    parent[x] = -1;
    std::optional<StateId> entry;
    while (!work.empty() && !entry) {
        StateId u = work.front();
        work.pop_front();
        if (on_cycle[u]) { entry = u; break; }
        for (const auto& e : g.out(u))
            if (parent[e.to] == -2) { parent[e.to] = u; work.push_back(e.to); }
    }
    if (!entry) return std::nullopt;

    SilentLasso lasso;
    for (StateId u = *entry;; u = static_cast<StateId>(parent[u])) {
        lasso.stem.push_back(u);
        if (parent[u] == -1) break;
    }
    std::reverse(lasso.stem.begin(), lasso.stem.end());

    // Cycle through the entry, inside its silent SCC (self-loop allowed).
    StateId c = *entry;
    for (const auto& e : g.out(c))
        if (e.to == c) { lasso.cycle = {c}; return lasso; }
    std::vector<std::int64_t> cpar(fsa.state_count(), -2);
    std::deque<StateId> cw;
    for (const auto& e : g.out(c))
        if (scc.component_of[e.to] == scc.component_of[c] && cpar[e.to] == -2) {
            cpar[e.to] = -1;
            cw.push_back(e.to);
        }
    while (!cw.empty()) {
        StateId u = cw.front();
        cw.pop_front();
        if (u == c) break;
        for (const auto& e : g.out(u))
            if (scc.component_of[e.to] == scc.component_of[c] && cpar[e.to] == -2) {
                cpar[e.to] = u;
                cw.push_back(e.to);
            }
    }
    std::vector<StateId> back;
    for (StateId u = c;; u = static_cast<StateId>(cpar[u])) {
        back.push_back(u);
        if (cpar[u] == -1) break;
    }
    std::reverse(back.begin(), back.end());  // first silent successor ... c
    lasso.cycle.push_back(c);
    for (std::size_t i = 0; i + 1 < back.size(); ++i) lasso.cycle.push_back(back[i]);
    return lasso;
}

std::string format_state_set(const Fsa& fsa, const StateSet& q) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (StateId x : q) {
        if (!first) os << ',';
        first = false;
        os << fsa.state_name(x);
    }
    os << '}';
    return os.str();
}

}  // namespace spdet
