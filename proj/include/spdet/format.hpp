// format.hpp -- the line-oriented automaton text format, its printer, and
// DOT rendering of the derived automata.
//
// Format: UTF-8, whitespace-separated tokens, '#' starts a comment,
// identifiers match [A-Za-z0-9_]+, directives in any order:
//
//   states <id>...          declare states
//   initial <id>...         mark initial states
//   event <id> <symbol|->   declare an event; '-' means silent
//   trans <src> <event> <dst>
//   spec <id> <id>          add an ordered pair to the specification

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "spdet/constructions.hpp"
#include "spdet/core.hpp"

namespace spdet {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line(line) {}

    std::size_t line;
};

struct FsaDocument {
    Fsa fsa;
    SpecPairs spec;
    std::string source_path;

    bool operator==(const FsaDocument& other) const {
        return fsa == other.fsa && spec == other.spec;
    }
};

FsaDocument parse_fsa(std::string_view text, std::string source_path = "");
FsaDocument parse_fsa_file(const std::string& path);

/// Canonical rendering; parse(print(doc)) reproduces doc.
std::string print_fsa(const FsaDocument& doc);

std::string export_dot(const Observer& obs, const Fsa& fsa);
std::string export_dot(const Detector& det, const Fsa& fsa);
std::string export_dot(const CompositionAutomaton& cc, const Fsa& fsa);

}  // namespace spdet
