#include "sfg/dsl.hpp"

#include <algorithm>
#include <sstream>

#include "sfg/gf4.hpp"

namespace sfg::dsl {

namespace {

struct Token {
    std::string text;
    std::size_t col;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

std::size_t parse_uint(const Token& t, std::size_t line, std::size_t max_value) {
    std::size_t v = 0;
    if (t.text.empty()) throw ParseError(line, t.col, "expected a number");
    for (char c : t.text) {
        if (c < '0' || c > '9')
            throw ParseError(line, t.col, "expected a number, got '" + t.text + "'");
        v = v * 10 + static_cast<std::size_t>(c - '0');
        if (v > max_value)
            throw ParseError(line, t.col, "number '" + t.text + "' is too large");
    }
    return v;
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'' ||
              c == '-' || c == '~'))
            return false;
    return !(s == "{" || s == "}");
}

// Accumulates generator rows for code-like blocks.
struct RowAccum {
    std::vector<SympVector> rows;
    bool has_length = false;
    std::size_t declared_length = 0;  // pairs
    bool closure = false;             // apply the w-multiple closure to gf4 rows

    void set_length(std::size_t n, std::size_t line, std::size_t col) {
        if (!rows.empty() && rows.front().n() != n)
            throw ParseError(line, col, "declared length " + std::to_string(n) +
                                            " does not match the rows above");
        has_length = true;
        declared_length = n;
    }

    void check_len(std::size_t n, std::size_t line, std::size_t col) {
        if (has_length && n != declared_length)
            throw ParseError(line, col, "row length " + std::to_string(n) +
                                            " does not match declared length " +
                                            std::to_string(declared_length));
        if (!rows.empty() && rows.front().n() != n)
            throw ParseError(line, col, "ragged rows in block");
    }

    void add_pauli(const Token& t, std::size_t line) {
        SympVector v = [&] {
            try {
                return SympVector::from_pauli(t.text);
            } catch (const std::invalid_argument& e) {
                throw ParseError(line, t.col, e.what());
            }
        }();
        check_len(v.n(), line, t.col);
        rows.push_back(v);
    }

    void add_xz(const Token& xs, const Token& zs, std::size_t line) {
        auto bits = [&](const Token& t) {
            std::vector<uint8_t> out;
            for (char c : t.text) {
                if (c != '0' && c != '1')
                    throw ParseError(line, t.col, "expected a 0/1 string");
                out.push_back(static_cast<uint8_t>(c - '0'));
            }
            return out;
        };
        std::vector<uint8_t> x = bits(xs), z = bits(zs);
        if (x.size() != z.size())
            throw ParseError(line, zs.col, "x and z parts have different lengths");
        check_len(x.size(), line, xs.col);
        rows.emplace_back(PrimeField(2), std::move(x), std::move(z));
    }

    void add_gf4(const std::vector<Token>& toks, std::size_t from, std::size_t line,
                 bool force_closure) {
        std::vector<uint8_t> syms;
        for (std::size_t i = from; i < toks.size(); ++i) {
            try {
                syms.push_back(gf4::from_token(toks[i].text));
            } catch (const std::invalid_argument& e) {
                throw ParseError(line, toks[i].col, e.what());
            }
        }
        Gf4Word w(std::move(syms));
        check_len(w.n(), line, toks.empty() ? 1 : toks[from].col);
        rows.push_back(symp_of(w));
        if (closure || force_closure) rows.push_back(symp_of(w.scaled(gf4::W)));
    }

    GroupCode build(std::size_t block_line) const {
        if (rows.empty() && !has_length)
            throw ParseError(block_line, 1, "code block needs rows or a length statement");
        std::size_t n = rows.empty() ? declared_length : rows.front().n();
        return GroupCode::span_of(rows, PrimeField(2), n);
    }
};

struct PendingFfg {
    FfgDef def;
    std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> ref_positions;
};

} // namespace

void Document::check_unique(const std::string& name) const {
    if (has(name))
        throw std::invalid_argument("Document: duplicate definition name '" + name + "'");
}

void Document::add_code(const std::string& name, const GroupCode& code) {
    check_unique(name);
    codes_.emplace(name, code);
}

void Document::add_section(const std::string& name, const TrellisSection& sec) {
    check_unique(name);
    sections_.emplace(name, sec);
}

void Document::add_graph(const std::string& name, const GraphSpec& graph) {
    check_unique(name);
    graphs_.emplace(name, graph);
}

void Document::add_ffg_def(const std::string& name, const FfgDef& def) {
    check_unique(name);
    ffgs_.emplace(name, def);
}

void Document::add_ffg(const std::string& name, const Ffg& g) {
    FfgDef def;
    for (const HalfEdge& h : g.half_edges()) def.half_edges.push_back(h.name);
    for (const EdgeVar& e : g.edges()) def.edges.push_back({e.name, e.mu});

    std::size_t counter = 0;
    std::vector<std::pair<GroupCode, std::string>> local;  // first-use ordering
    for (const FactorNode& fn : g.factors()) {
        std::string ref;
        for (const auto& [code, cname] : local)
            if (code == fn.code) { ref = cname; break; }
        if (ref.empty()) {
            for (const auto& [cname, code] : codes_)
                if (code == fn.code) { ref = cname; break; }
        }
        if (ref.empty()) {
            do {
                ref = name + "_c" + std::to_string(++counter);
            } while (has(ref));
            add_code(ref, fn.code);
            local.push_back({fn.code, ref});
        }
        def.factors.push_back({fn.name, ref, fn.ports});
    }
    add_ffg_def(name, def);
}

bool Document::has(const std::string& name) const {
    return codes_.count(name) || sections_.count(name) || graphs_.count(name) ||
           ffgs_.count(name);
}

GroupCode Document::resolve_code(const std::string& name) const {
    auto it = codes_.find(name);
    if (it != codes_.end()) return it->second;
    auto st = sections_.find(name);
    if (st != sections_.end()) return st->second.code;
    throw std::invalid_argument("Document: no code named '" + name + "'");
}

const TrellisSection& Document::section(const std::string& name) const {
    auto it = sections_.find(name);
    if (it == sections_.end())
        throw std::invalid_argument("Document: no section named '" + name + "'");
    return it->second;
}

const GraphSpec& Document::graph(const std::string& name) const {
    auto it = graphs_.find(name);
    if (it == graphs_.end())
        throw std::invalid_argument("Document: no graph named '" + name + "'");
    return it->second;
}

Ffg Document::instantiate_ffg(const std::string& name) const {
    auto it = ffgs_.find(name);
    if (it == ffgs_.end())
        throw std::invalid_argument("Document: no ffg named '" + name + "'");
    Ffg g{PrimeField(2)};
    for (const std::string& h : it->second.half_edges) g.add_half_edge(h);
    for (const auto& [e, mu] : it->second.edges) g.add_edge(e, mu);
    for (const FfgFactorDef& fd : it->second.factors)
        g.add_factor(fd.name, fd.ports, resolve_code(fd.code_ref));
    return g;
}

std::vector<std::string> Document::code_names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : codes_) out.push_back(n);
    return out;
}
std::vector<std::string> Document::section_names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : sections_) out.push_back(n);
    return out;
}
std::vector<std::string> Document::graph_names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : graphs_) out.push_back(n);
    return out;
}
std::vector<std::string> Document::ffg_names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : ffgs_) out.push_back(n);
    return out;
}

bool Document::operator==(const Document& o) const {
    return serialize(*this) == serialize(o);
}

Document parse(const std::string& text) {
    Document doc;

    std::vector<std::string> lines;
    {
        std::string cur;
        for (char c : text) {
            if (c == '\n') { lines.push_back(cur); cur.clear(); }
            else cur += c;
        }
        lines.push_back(cur);
    }

    enum class Block { None, Code, Linear, Graph, Section, FfgBlock };
    Block block = Block::None;
    std::string block_name;
    std::size_t block_line = 0;

    RowAccum rows;
    std::size_t sec_mu = 0;
    bool sec_mu_seen = false;
    std::size_t graph_vertices = 0;
    bool graph_vertices_seen = false;
    std::vector<std::pair<std::size_t, std::size_t>> graph_edges;
    std::vector<std::vector<uint8_t>> adj_rows;
    PendingFfg ffg;
    std::vector<PendingFfg> pending_ffgs;
    std::vector<std::string> pending_names;

    auto begin_block = [&](Block b, const std::string& name, std::size_t line) {
        block = b;
        block_name = name;
        block_line = line;
        rows = RowAccum{};
        rows.closure = (b == Block::Linear);
        sec_mu = 0;
        sec_mu_seen = false;
        graph_vertices = 0;
        graph_vertices_seen = false;
        graph_edges.clear();
        adj_rows.clear();
        ffg = PendingFfg{};
    };

    auto add_definition = [&](auto&& fn, std::size_t line) {
        try {
            fn();
        } catch (const std::invalid_argument& e) {
            throw ParseError(line, 1, e.what());
        }
    };

    auto end_block = [&](std::size_t line) {
        switch (block) {
            case Block::Code:
            case Block::Linear:
                add_definition([&] { doc.add_code(block_name, rows.build(block_line)); }, line);
                break;
            case Block::Section: {
                if (!sec_mu_seen)
                    throw ParseError(block_line, 1, "section block needs a mu statement");
                GroupCode code = rows.build(block_line);
                if (code.n() < 2 * sec_mu)
                    throw ParseError(block_line, 1, "section length smaller than 2*mu");
                add_definition(
                    [&] {
                        doc.add_section(block_name,
                                        TrellisSection(sec_mu, code.n() - 2 * sec_mu, code));
                    },
                    line);
                break;
            }
            case Block::Graph: {
                if (!adj_rows.empty()) {
                    if (graph_vertices_seen || !graph_edges.empty())
                        throw ParseError(block_line, 1,
                                         "graph block mixes adj rows with vertex/edge statements");
                    if (adj_rows.size() != adj_rows.front().size())
                        throw ParseError(block_line, 1, "adjacency matrix is not square");
                    FMatrix a = FMatrix::from_rows(PrimeField(2), adj_rows);
                    add_definition(
                        [&] { doc.add_graph(block_name, GraphSpec::from_adjacency(a)); }, line);
                } else {
                    if (!graph_vertices_seen)
                        throw ParseError(block_line, 1, "graph block needs a vertices statement");
                    add_definition(
                        [&] { doc.add_graph(block_name, GraphSpec(graph_vertices, graph_edges)); },
                        line);
                }
                break;
            }
            case Block::FfgBlock:
                add_definition([&] { doc.add_ffg_def(block_name, ffg.def); }, line);
                pending_ffgs.push_back(ffg);
                pending_names.push_back(block_name);
                break;
            default: break;
        }
        block = Block::None;
    };

    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::size_t line = li + 1;
        std::vector<Token> t = tokenize(lines[li]);
        if (t.empty()) continue;

        if (block == Block::None) {
            if (t.size() != 3 || t[2].text != "{")
                throw ParseError(line, t[0].col,
                                 "expected a block header: <kind> <name> {");
            const std::string& kind = t[0].text;
            if (!valid_name(t[1].text))
                throw ParseError(line, t[1].col, "invalid name '" + t[1].text + "'");
            if (doc.has(t[1].text))
                throw ParseError(line, t[1].col, "duplicate definition name '" + t[1].text + "'");
            if (kind == "code") begin_block(Block::Code, t[1].text, line);
            else if (kind == "linear") begin_block(Block::Linear, t[1].text, line);
            else if (kind == "graph") begin_block(Block::Graph, t[1].text, line);
            else if (kind == "section") begin_block(Block::Section, t[1].text, line);
            else if (kind == "ffg") begin_block(Block::FfgBlock, t[1].text, line);
            else
                throw ParseError(line, t[0].col, "unknown block kind '" + kind + "'");
            continue;
        }

        if (t[0].text == "}") {
            if (t.size() != 1) throw ParseError(line, t[1].col, "unexpected token after '}'");
            end_block(line);
            continue;
        }

        const std::string& kw = t[0].text;
        switch (block) {
            case Block::Code:
            case Block::Linear:
            case Block::Section: {
                if (kw == "length" && t.size() == 2) {
                    rows.set_length(parse_uint(t[1], line, 4096), line, t[1].col);
                } else if (kw == "mu" && t.size() == 2 && block == Block::Section) {
                    sec_mu = parse_uint(t[1], line, 64);
                    sec_mu_seen = true;
                } else if (kw == "pauli" && t.size() == 2) {
                    rows.add_pauli(t[1], line);
                } else if (kw == "xz" && t.size() == 3) {
                    rows.add_xz(t[1], t[2], line);
                } else if (kw == "X:" && t.size() == 4 && t[2].text == "Z:") {
                    // Block form "X: <bits> Z: <bits>".
                    rows.add_xz(t[1], t[3], line);
                } else if (kw == "gf4" && t.size() >= 2) {
                    rows.add_gf4(t, 1, line, block == Block::Section);
                } else {
                    throw ParseError(line, t[0].col, "unexpected statement '" + kw + "'");
                }
                break;
            }
            case Block::Graph: {
                if (kw == "vertices" && t.size() == 2) {
                    graph_vertices = parse_uint(t[1], line, 4096);
                    graph_vertices_seen = true;
                } else if (kw == "edge" && t.size() == 3) {
                    std::size_t a = parse_uint(t[1], line, 4096);
                    std::size_t b = parse_uint(t[2], line, 4096);
                    if (a == 0 || b == 0)
                        throw ParseError(line, t[1].col, "vertices are numbered from 1");
                    graph_edges.push_back({a - 1, b - 1});
                } else if (kw == "adj" && t.size() == 2) {
                    std::vector<uint8_t> bits;
                    for (char c : t[1].text) {
                        if (c != '0' && c != '1')
                            throw ParseError(line, t[1].col, "expected a 0/1 string");
                        bits.push_back(static_cast<uint8_t>(c - '0'));
                    }
                    adj_rows.push_back(std::move(bits));
                } else {
                    throw ParseError(line, t[0].col, "unexpected statement '" + kw + "'");
                }
                break;
            }
            case Block::FfgBlock: {
                if (kw == "halfedge" && t.size() == 2) {
                    if (!valid_name(t[1].text))
                        throw ParseError(line, t[1].col, "invalid name '" + t[1].text + "'");
                    ffg.def.half_edges.push_back(t[1].text);
                } else if (kw == "edge" && t.size() == 3) {
                    if (!valid_name(t[1].text))
                        throw ParseError(line, t[1].col, "invalid name '" + t[1].text + "'");
                    ffg.def.edges.push_back({t[1].text, parse_uint(t[2], line, 64)});
                } else if (kw == "factor" && t.size() >= 3) {
                    if (!valid_name(t[1].text))
                        throw ParseError(line, t[1].col, "invalid name '" + t[1].text + "'");
                    FfgFactorDef fd;
                    fd.name = t[1].text;
                    fd.code_ref = t[2].text;
                    for (std::size_t i = 3; i < t.size(); ++i) fd.ports.push_back(t[i].text);
                    ffg.def.factors.push_back(fd);
                    ffg.ref_positions.push_back({t[2].text, {line, t[2].col}});
                } else {
                    throw ParseError(line, t[0].col, "unexpected statement '" + kw + "'");
                }
                break;
            }
            default:
                throw ParseError(line, t[0].col, "internal: bad parser state");
        }
    }
    if (block != Block::None)
        throw ParseError(lines.size(), 1, "unterminated block '" + block_name + "'");

    // Resolve factor code references now that every name is known.
    for (const PendingFfg& p : pending_ffgs)
        for (const auto& [ref, pos] : p.ref_positions) {
            try {
                doc.resolve_code(ref);
            } catch (const std::invalid_argument&) {
                throw ParseError(pos.first, pos.second,
                                 "factor references undefined code '" + ref + "'");
            }
        }
    return doc;
}

namespace {

void serialize_code_rows(std::ostringstream& out, const GroupCode& code) {
    out << "  length " << code.n() << "\n";
    for (std::size_t r = 0; r < code.rank(); ++r)
        out << "  pauli " << code.generator(r).to_pauli() << "\n";
}

} // namespace

std::string serialize(const Document& d) {
    std::ostringstream out;
    bool first = true;
    auto gap = [&] {
        if (!first) out << "\n";
        first = false;
    };
    for (const auto& [name, code] : d.codes_) {
        gap();
        out << "code " << name << " {\n";
        serialize_code_rows(out, code);
        out << "}\n";
    }
    for (const auto& [name, sec] : d.sections_) {
        gap();
        out << "section " << name << " {\n";
        out << "  mu " << sec.mu << "\n";
        serialize_code_rows(out, sec.code);
        out << "}\n";
    }
    for (const auto& [name, g] : d.graphs_) {
        gap();
        out << "graph " << name << " {\n";
        out << "  vertices " << g.n() << "\n";
        for (auto [a, b] : g.edge_list())
            out << "  edge " << (a + 1) << " " << (b + 1) << "\n";
        out << "}\n";
    }
    for (const auto& [name, def] : d.ffgs_) {
        gap();
        out << "ffg " << name << " {\n";
        for (const std::string& h : def.half_edges) out << "  halfedge " << h << "\n";
        for (const auto& [e, mu] : def.edges) out << "  edge " << e << " " << mu << "\n";
        for (const FfgFactorDef& fd : def.factors) {
            out << "  factor " << fd.name << " " << fd.code_ref;
            for (const std::string& p : fd.ports) out << " " << p;
            out << "\n";
        }
        out << "}\n";
    }
    return out.str();
}

} // namespace sfg::dsl
