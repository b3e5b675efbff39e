#ifndef SFG_DSL_HPP
#define SFG_DSL_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfg/constructions.hpp"
#include "sfg/ffg.hpp"

namespace sfg::dsl {

/*
 * Line-oriented text format for codes, sections, graphs and factor
 * graphs. Comments run from '#' to end of line. Blocks look like
 *
 *   code steane {
 *     length 7
 *     pauli IIIXXXX
 *     ...
 *   }
 *
 * Block kinds: code (additive generators, rows pauli/xz/gf4),
 * linear (rows with the w-multiple closure applied at load),
 * graph (vertices + edge statements, or adj rows), section
 * (mu + rows; gf4 rows are closed, pauli/xz rows are additive) and
 * ffg (halfedge/edge declarations + factor statements referencing
 * code names).
 *
 * All user-facing positions (lines, columns, graph vertices) are
 * 1-based; internal indices are 0-based.
 */

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t col, const std::string& msg)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line), col(col), message(msg) {}

    std::size_t line, col;
    std::string message;
};

struct FfgFactorDef {
    std::string name;
    std::string code_ref;
    std::vector<std::string> ports;
};

struct FfgDef {
    std::vector<std::string> half_edges;
    std::vector<std::pair<std::string, std::size_t>> edges;
    std::vector<FfgFactorDef> factors;
};

/*
 * A named collection of definitions. Codes are stored canonically;
 * factor graphs keep their local codes by reference to other
 * definitions. Serialization is canonical: definitions sorted by
 * kind then name, rows in reduced-echelon order, so equal content
 * serializes identically no matter how it was written.
 */
class Document {
public:
    void add_code(const std::string& name, const GroupCode& code);
    void add_section(const std::string& name, const TrellisSection& sec);
    void add_graph(const std::string& name, const GraphSpec& graph);
    void add_ffg_def(const std::string& name, const FfgDef& def);

    // Adds the graph plus one code definition per distinct local code
    // (named <name>_c1, <name>_c2, ... in first-use order).
    void add_ffg(const std::string& name, const Ffg& g);

    bool has(const std::string& name) const;

    // Codes by name; section names resolve to their section code.
    // Throws std::invalid_argument for unknown names.
    GroupCode resolve_code(const std::string& name) const;
    const TrellisSection& section(const std::string& name) const;
    const GraphSpec& graph(const std::string& name) const;
    Ffg instantiate_ffg(const std::string& name) const;

    std::vector<std::string> code_names() const;
    std::vector<std::string> section_names() const;
    std::vector<std::string> graph_names() const;
    std::vector<std::string> ffg_names() const;

    bool operator==(const Document& o) const;

private:
    friend std::string serialize(const Document& d);

    std::map<std::string, GroupCode> codes_;
    std::map<std::string, TrellisSection> sections_;
    std::map<std::string, GraphSpec> graphs_;
    std::map<std::string, FfgDef> ffgs_;

    void check_unique(const std::string& name) const;
};

// Throws ParseError (and nothing else) on malformed input.
Document parse(const std::string& text);

// Canonical text form; parse(serialize(d)) == d and
// serialize(parse(s)) is a fixed point of serialize.
std::string serialize(const Document& d);

} // namespace sfg::dsl

#endif
