#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jdm/core.hpp"

namespace jdm::io {

/// Malformed input. line() is 1-based; 0 when the problem is not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Graph: "n m" then m lines "u v". The partition is inferred from degrees.
LabeledGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const LabeledGraph& g);

// JDM: "k" then k rows of k integers.
Jdm read_jdm(std::istream& in);
void write_jdm(std::ostream& out, const Jdm& j);

// RSO trace: one "a b c d pivot_class" per line.
std::vector<Rso> read_trace(std::istream& in);
void write_trace(std::ostream& out, std::span<const Rso> trace);

std::string to_text(const LabeledGraph& g);
std::string to_text(const Jdm& j);

LabeledGraph load_graph(const std::filesystem::path& path);
Jdm load_jdm(const std::filesystem::path& path);

}  // namespace jdm::io
