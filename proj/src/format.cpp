#include "spdet/format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

namespace spdet {

namespace {

bool valid_identifier(const std::string& token) {
    if (token.empty()) return false;
    for (char c : token)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::vector<std::string> tokenize(std::string_view line) {
    std::string trimmed(line.substr(0, line.find('#')));
    std::istringstream is(trimmed);
    std::vector<std::string> tokens;
    std::string tok;
    while (is >> tok) tokens.push_back(tok);
    return tokens;
}

struct PendingRef {
    std::size_t line;
    std::string name;
};

}  // namespace

FsaDocument parse_fsa(std::string_view text, std::string source_path) {
    struct PendingTrans {
        std::size_t line;
        std::string src, event, dst;
    };
    struct PendingEvent {
        std::size_t line;
        std::string name, symbol;  // empty symbol = silent
    };
    struct PendingPair {
        std::size_t line;
        std::string first, second;
    };

    std::map<std::string, std::size_t> state_lines;
    std::vector<std::string> state_order;
    std::map<std::string, std::size_t> event_lines;
    std::vector<PendingEvent> events;
    std::vector<PendingRef> initials;
    std::vector<PendingTrans> transitions;
    std::vector<PendingPair> pairs;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& directive = tokens[0];

        auto need_identifiers = [&](std::size_t from) {
            for (std::size_t i = from; i < tokens.size(); ++i)
                if (!valid_identifier(tokens[i]))
                    throw ParseError(line_no, "invalid identifier: " + tokens[i]);
        };

        if (directive == "states") {
            need_identifiers(1);
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (state_lines.count(tokens[i]))
                    throw ParseError(line_no, "duplicate state declaration: " + tokens[i]);
                state_lines.emplace(tokens[i], line_no);
                state_order.push_back(tokens[i]);
            }
        } else if (directive == "initial") {
            need_identifiers(1);
            for (std::size_t i = 1; i < tokens.size(); ++i)
                initials.push_back({line_no, tokens[i]});
        } else if (directive == "event") {
            if (tokens.size() != 3)
                throw ParseError(line_no, "event takes an identifier and a symbol or '-'");
            if (!valid_identifier(tokens[1]))
                throw ParseError(line_no, "invalid identifier: " + tokens[1]);
            if (tokens[2] != "-" && !valid_identifier(tokens[2]))
                throw ParseError(line_no, "invalid symbol: " + tokens[2]);
            if (event_lines.count(tokens[1]))
                throw ParseError(line_no, "duplicate event declaration: " + tokens[1]);
            event_lines.emplace(tokens[1], line_no);
            events.push_back({line_no, tokens[1], tokens[2] == "-" ? "" : tokens[2]});
        } else if (directive == "trans") {
            if (tokens.size() != 4)
                throw ParseError(line_no, "trans takes source, event and destination");
            need_identifiers(1);
            transitions.push_back({line_no, tokens[1], tokens[2], tokens[3]});
        } else if (directive == "spec") {
            if (tokens.size() != 3) throw ParseError(line_no, "spec takes two state identifiers");
            need_identifiers(1);
            pairs.push_back({line_no, tokens[1], tokens[2]});
        } else {
            throw ParseError(line_no, "unknown directive: " + directive);
        }
    }

    if (state_order.empty()) throw ParseError(line_no, "missing states declaration");

    FsaBuilder builder;
    for (const std::string& name : state_order) builder.add_state(name);
    for (const PendingEvent& e : events)
        builder.add_event(e.name, e.symbol.empty() ? std::nullopt
                                                   : std::optional<std::string>(e.symbol));

    auto check_state = [&](const std::size_t line, const std::string& name) {
        if (!state_lines.count(name))
            throw ParseError(line, "undeclared state: " + name);
    };

    std::set<std::string> initial_seen;
    for (const PendingRef& r : initials) {
        check_state(r.line, r.name);
        if (!initial_seen.insert(r.name).second)
            throw ParseError(r.line, "state listed twice as initial: " + r.name);
        builder.add_initial(r.name);
    }

    std::set<std::tuple<std::string, std::string, std::string>> trans_seen;
    for (const PendingTrans& t : transitions) {
        check_state(t.line, t.src);
        check_state(t.line, t.dst);
        if (!event_lines.count(t.event))
            throw ParseError(t.line, "undeclared event: " + t.event);
        if (!trans_seen.insert({t.src, t.event, t.dst}).second)
            throw ParseError(t.line, "duplicate transition");
        builder.trans(t.src, t.event, t.dst);
    }

    FsaDocument doc;
    doc.source_path = std::move(source_path);
    doc.fsa = builder.build();
    SpecPairs spec;
    for (const PendingPair& p : pairs) {
        check_state(p.line, p.first);
        check_state(p.line, p.second);
        spec.emplace_back(*doc.fsa.state_by_name(p.first), *doc.fsa.state_by_name(p.second));
    }
    doc.spec = normalize_spec_pairs(std::move(spec));
    return doc;
}

FsaDocument parse_fsa_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_fsa(buffer.str(), path);
}

std::string print_fsa(const FsaDocument& doc) {
    const Fsa& fsa = doc.fsa;
    std::ostringstream os;
    os << "states";
    for (StateId x = 0; x < fsa.state_count(); ++x) os << ' ' << fsa.state_name(x);
    os << '\n';
    if (!fsa.initial().empty()) {
        os << "initial";
        for (StateId x : fsa.initial()) os << ' ' << fsa.state_name(x);
        os << '\n';
    }
    for (EventId t = 0; t < fsa.event_count(); ++t) {
        Label l = fsa.event_label(t);
        os << "event " << fsa.event_name(t) << ' '
           << (l.is_silent() ? "-" : fsa.symbol_name(l.symbol_id())) << '\n';
    }
    for (const Transition& t : fsa.transitions())
        os << "trans " << fsa.state_name(t.src) << ' ' << fsa.event_name(t.event) << ' '
           << fsa.state_name(t.dst) << '\n';
    for (const auto& [a, b] : doc.spec)
        os << "spec " << fsa.state_name(a) << ' ' << fsa.state_name(b) << '\n';
    return os.str();
}

namespace {

std::string quote(const std::string& s) { return "\"" + s + "\""; }

struct DotEdge {
    std::string from, label, to;
    bool dotted = false;

    friend auto operator<=>(const DotEdge&, const DotEdge&) = default;
};

std::string render_digraph(const std::string& name, std::vector<std::string> nodes,
                           std::vector<std::string> initial_nodes,
                           std::vector<DotEdge> edges) {
    std::sort(nodes.begin(), nodes.end());
    std::sort(edges.begin(), edges.end());
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    if (!nodes.empty()) os << "  rankdir=LR;\n  node [shape=ellipse];\n";
    for (std::size_t i = 0; i < initial_nodes.size(); ++i)
        os << "  __init" << i << " [shape=none,label=\"\"];\n";
    for (const std::string& n : nodes) os << "  " << quote(n) << ";\n";
    for (std::size_t i = 0; i < initial_nodes.size(); ++i)
        os << "  __init" << i << " -> " << quote(initial_nodes[i]) << ";\n";
    for (const DotEdge& e : edges) {
        os << "  " << quote(e.from) << " -> " << quote(e.to) << " [label=" << quote(e.label);
        if (e.dotted) os << ",style=dotted";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace

std::string export_dot(const Observer& obs, const Fsa& fsa) {
    std::vector<std::string> nodes;
    std::vector<DotEdge> edges;
    for (std::uint32_t v = 0; v < obs.nodes.size(); ++v) {
        nodes.push_back(format_state_set(fsa, obs.nodes[v]));
        for (SymbolId s = 0; s < obs.next[v].size(); ++s)
            if (obs.next[v][s] >= 0)
                edges.push_back({nodes.back(), fsa.symbol_name(s),
                                 format_state_set(
                                     fsa, obs.nodes[static_cast<std::uint32_t>(obs.next[v][s])]),
                                 false});
    }
    std::vector<std::string> init;
    if (!obs.empty()) init.push_back(format_state_set(fsa, obs.nodes[0]));
    return render_digraph("observer", std::move(nodes), std::move(init), std::move(edges));
}

std::string export_dot(const Detector& det, const Fsa& fsa) {
    std::vector<std::string> nodes;
    for (const StateSet& q : det.nodes) nodes.push_back(format_state_set(fsa, q));
    std::vector<DotEdge> edges;
    for (const auto& e : det.edges)
        edges.push_back({format_state_set(fsa, det.nodes[e.from]), fsa.symbol_name(e.symbol),
                         format_state_set(fsa, det.nodes[e.to]), false});
    std::vector<std::string> init;
    if (!det.empty()) init.push_back(format_state_set(fsa, det.nodes[0]));
    return render_digraph("detector", std::move(nodes), std::move(init), std::move(edges));
}

std::string export_dot(const CompositionAutomaton& cc, const Fsa& fsa) {
    std::vector<std::string> nodes;
    for (StatePair p : cc.nodes) nodes.push_back(format_state_pair(fsa, p));
    std::vector<DotEdge> edges;
    for (const auto& e : cc.edges)
        edges.push_back({format_state_pair(fsa, cc.nodes[e.from]),
                         format_pair_event(fsa, e.event),
                         format_state_pair(fsa, cc.nodes[e.to]),
                         e.event.kind == PairEventKind::EpsLink});
    std::vector<std::string> init;
    for (std::uint32_t id : cc.initial) init.push_back(format_state_pair(fsa, cc.nodes[id]));
    std::sort(init.begin(), init.end());
    return render_digraph(cc.epsilon_extended ? "cc_eps" : "cc", std::move(nodes),
                          std::move(init), std::move(edges));
}

}  // namespace spdet
