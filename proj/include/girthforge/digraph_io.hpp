#ifndef GIRTHFORGE_DIGRAPH_IO_HPP
#define GIRTHFORGE_DIGRAPH_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "girthforge/digraph.hpp"

namespace girthforge {

// Text digraph format:
//   # optional comments
//   digraph <name>
//   blocks <a> <n>        (optional, block-structured digraphs)
//   seed <u64>            (optional, sampled digraphs)
//   order <N>
//   arcs <M>
//   u v                   (M lines, ascending lexicographic)
// The writer always emits the canonical ascending arc order, so
// serialization is byte-stable.
struct DigraphFile {
    Digraph graph;
    std::string name = "g";
    std::optional<std::pair<int, int>> blocks; // (block count a, block size n)
    std::optional<std::uint64_t> seed;

    bool operator==(const DigraphFile&) const = default;
};

struct ParseError : std::runtime_error {
    int line;
    std::string detail;
    ParseError(int line_, const std::string& detail_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + detail_),
          line(line_), detail(detail_) {}
    ParseError(const std::string& file, int line_, const std::string& detail_)
        : std::runtime_error(file + ":" + std::to_string(line_) + ": " + detail_),
          line(line_), detail(detail_) {}
};

DigraphFile read_digraph(std::istream& in);
DigraphFile read_digraph_file(const std::string& path);

std::string format_digraph(const DigraphFile& f);
void write_digraph_file(const std::string& path, const DigraphFile& f);

} // namespace girthforge

#endif
