#include "erg/peg_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

namespace erg {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        const auto start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line_no) {
    std::uint64_t value = 0;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw InputError("peg line " + std::to_string(line_no) + ": expected a non-negative integer, got '" +
                         std::string(tok) + "'");
    }
    return value;
}

}  // namespace

PartiallyErasedGraph parse_peg(std::string_view text) {
    std::vector<std::vector<AdjEntry>> lists;
    std::vector<bool> seen;
    std::size_t line_no = 0;
    int state = 0;  // 0: header, 1: n line, 2: vertex lines
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const auto toks = split_ws(line);
        if (toks.empty()) {
            continue;
        }
        if (state == 0) {
            if (toks.size() != 2 || toks[0] != "peg" || toks[1] != "1") {
                throw InputError("peg line " + std::to_string(line_no) + ": expected header 'peg 1'");
            }
            state = 1;
        } else if (state == 1) {
            if (toks.size() != 2 || toks[0] != "n") {
                throw InputError("peg line " + std::to_string(line_no) + ": expected 'n <num_vertices>'");
            }
            const auto n = parse_uint(toks[1], line_no);
            if (n >= AdjEntry::kErasedMark) {
                throw InputError("peg: vertex count too large");
            }
            lists.assign(n, {});
            seen.assign(n, false);
            state = 2;
        } else {
            if (toks[0] != "v" || toks.size() < 2) {
                throw InputError("peg line " + std::to_string(line_no) + ": expected 'v <id> ...'");
            }
            const auto id = parse_uint(toks[1], line_no);
            if (id >= lists.size()) {
                throw InputError("peg line " + std::to_string(line_no) + ": vertex id out of range");
            }
            if (seen[id]) {
                throw InputError("peg line " + std::to_string(line_no) + ": vertex listed twice");
            }
            seen[id] = true;
            auto& list = lists[id];
            list.reserve(toks.size() - 2);
            for (std::size_t k = 2; k < toks.size(); ++k) {
                if (toks[k] == "*") {
                    list.push_back(AdjEntry::erased());
                } else {
                    const auto v = parse_uint(toks[k], line_no);
                    if (v >= AdjEntry::kErasedMark) {
                        throw InputError("peg line " + std::to_string(line_no) + ": entry id too large");
                    }
                    list.push_back(AdjEntry::vertex(static_cast<Vertex>(v)));
                }
            }
        }
    }
    if (state != 2) {
        throw InputError("peg: truncated input, missing header or vertex count");
    }
    return PartiallyErasedGraph(std::move(lists));
}

PartiallyErasedGraph read_peg(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_peg(text);
}

PartiallyErasedGraph read_peg_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    return read_peg(in);
}

void write_peg(std::ostream& out, const PartiallyErasedGraph& g) {
    out << "peg 1\n" << "n " << g.num_vertices() << '\n';
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        out << "v " << u;
        for (AdjEntry e : g.adj(u)) {
            if (e.is_erased()) {
                out << " *";
            } else {
                out << ' ' << e.id();
            }
        }
        out << '\n';
    }
}

std::string to_peg(const PartiallyErasedGraph& g) {
    std::ostringstream os;
    write_peg(os, g);
    return os.str();
}

void write_peg_file(const std::filesystem::path& path, const PartiallyErasedGraph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    write_peg(out, g);
}

}  // namespace erg
