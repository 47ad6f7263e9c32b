#include "girthforge/digraph_io.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace girthforge {

namespace {

struct LineReader {
    std::istream& in;
    int line_no = 0;

    // Next non-comment, non-blank line; nullopt at EOF.
    std::optional<std::string> next() {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::size_t i = line.find_first_not_of(" \t");
            if (i == std::string::npos) continue;
            if (line[i] == '#') continue;
            return line;
        }
        return std::nullopt;
    }
};

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

long long parse_int(const std::string& tok, const LineReader& r) {
    std::size_t pos = 0;
    long long v;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(r.line_no, "expected integer, got '" + tok + "'");
    }
    if (pos != tok.size())
        throw ParseError(r.line_no, "expected integer, got '" + tok + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& tok, const LineReader& r) {
    std::size_t pos = 0;
    std::uint64_t v;
    try {
        v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(r.line_no, "expected unsigned integer, got '" + tok + "'");
    }
    if (pos != tok.size() || tok[0] == '-')
        throw ParseError(r.line_no, "expected unsigned integer, got '" + tok + "'");
    return v;
}

} // namespace

DigraphFile read_digraph(std::istream& in) {
    LineReader r{in};
    DigraphFile f;

    auto line = r.next();
    if (!line) throw ParseError(r.line_no, "empty input, expected 'digraph <name>'");
    auto tk = tokens(*line);
    if (tk.size() != 2 || tk[0] != "digraph")
        throw ParseError(r.line_no, "expected 'digraph <name>'");
    f.name = tk[1];

    line = r.next();
    if (line) tk = tokens(*line);
    if (line && tk[0] == "blocks") {
        if (tk.size() != 3) throw ParseError(r.line_no, "expected 'blocks <a> <n>'");
        int a = static_cast<int>(parse_int(tk[1], r));
        int n = static_cast<int>(parse_int(tk[2], r));
        if (a < 1 || n < 1) throw ParseError(r.line_no, "blocks counts must be positive");
        f.blocks = {a, n};
        line = r.next();
        if (line) tk = tokens(*line);
    }
    if (line && tk[0] == "seed") {
        if (tk.size() != 2) throw ParseError(r.line_no, "expected 'seed <u64>'");
        f.seed = parse_u64(tk[1], r);
        line = r.next();
        if (line) tk = tokens(*line);
    }

    if (!line || tk.size() != 2 || tk[0] != "order")
        throw ParseError(r.line_no, "expected 'order <N>'");
    long long order = parse_int(tk[1], r);
    if (order < 0) throw ParseError(r.line_no, "order must be non-negative");

    line = r.next();
    if (!line) throw ParseError(r.line_no, "expected 'arcs <M>'");
    tk = tokens(*line);
    if (tk.size() != 2 || tk[0] != "arcs")
        throw ParseError(r.line_no, "expected 'arcs <M>'");
    long long m = parse_int(tk[1], r);
    if (m < 0) throw ParseError(r.line_no, "arc count must be non-negative");

    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        line = r.next();
        if (!line) throw ParseError(r.line_no, "expected arc line " +
                                                   std::to_string(i + 1) + " of " +
                                                   std::to_string(m));
        tk = tokens(*line);
        if (tk.size() != 2) throw ParseError(r.line_no, "expected 'u v'");
        long long u = parse_int(tk[0], r);
        long long v = parse_int(tk[1], r);
        if (u < 0 || u >= order || v < 0 || v >= order)
            throw ParseError(r.line_no, "arc endpoint out of range");
        if (u == v) throw ParseError(r.line_no, "loop arc not allowed");
        arcs.push_back({static_cast<int>(u), static_cast<int>(v)});
    }
    if (r.next()) throw ParseError(r.line_no, "trailing content after arc list");

    try {
        f.graph = Digraph(static_cast<int>(order), std::move(arcs));
    } catch (const std::invalid_argument& e) {
        throw ParseError(r.line_no, e.what());
    }
    return f;
}

DigraphFile read_digraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return read_digraph(in);
    } catch (const ParseError& e) {
        throw ParseError(path, e.line, e.detail);
    }
}

std::string format_digraph(const DigraphFile& f) {
    std::ostringstream out;
    out << "digraph " << f.name << "\n";
    if (f.blocks) out << "blocks " << f.blocks->first << " " << f.blocks->second << "\n";
    if (f.seed) out << "seed " << *f.seed << "\n";
    out << "order " << f.graph.order() << "\n";
    out << "arcs " << f.graph.arc_count() << "\n";
    for (const Arc& a : f.graph.arcs()) out << a.from << " " << a.to << "\n";
    return out.str();
}

void write_digraph_file(const std::string& path, const DigraphFile& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << format_digraph(f);
}

} // namespace girthforge
