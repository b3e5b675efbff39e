#include "sfg/constructions.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace sfg {

TrellisSection::TrellisSection(std::size_t mu_, std::size_t k_sym_, GroupCode code_)
    : mu(mu_), k_sym(k_sym_), code(std::move(code_)) {
    if (code.n() != 2 * mu + k_sym)
        throw std::invalid_argument("TrellisSection: code length must be 2*mu + k_sym");
}

Ffg conv_chain(const TrellisSection& sec, std::size_t length, Boundary boundary) {
    if (length < 1)
        throw std::invalid_argument("conv_chain: length must be at least 1");
    PrimeField f = sec.code.field();
    Ffg g(f);

    for (std::size_t i = 1; i <= length; ++i)
        for (std::size_t j = 1; j <= sec.k_sym; ++j)
            g.add_half_edge("t" + std::to_string(i) + "." + std::to_string(j));

    auto state = [&](std::size_t i) { return "m" + std::to_string(i); };
    if (boundary == Boundary::Terminated) {
        for (std::size_t i = 0; i <= length; ++i) g.add_edge(state(i), sec.mu);
    } else {
        // m0 doubles as the final state.
        for (std::size_t i = 0; i < length; ++i) g.add_edge(state(i), sec.mu);
    }

    for (std::size_t i = 1; i <= length; ++i) {
        std::vector<std::string> ports;
        ports.push_back(state(i - 1));
        for (std::size_t j = 1; j <= sec.k_sym; ++j)
            ports.push_back("t" + std::to_string(i) + "." + std::to_string(j));
        ports.push_back(boundary == Boundary::TailBiting && i == length ? state(0) : state(i));
        g.add_factor("sec" + std::to_string(i), ports, sec.code);
    }
    if (boundary == Boundary::Terminated) {
        g.add_factor("lhs", {state(0)}, GroupCode::zero(f, sec.mu));
        g.add_factor("rhs", {state(length)}, GroupCode::zero(f, sec.mu));
    }
    return g;
}

TrellisSection conv_section_from_gf4(const std::vector<std::vector<uint8_t>>& rows,
                                     std::size_t mu, std::size_t k_sym) {
    std::size_t n = 2 * mu + k_sym;
    std::vector<SympVector> gens;
    for (const std::vector<uint8_t>& r : rows) {
        if (r.size() != n)
            throw std::invalid_argument("conv_section_from_gf4: row length must be 2*mu + k_sym");
        Gf4Word w{std::vector<uint8_t>(r)};
        gens.push_back(symp_of(w));
        gens.push_back(symp_of(w.scaled(gf4::W)));
    }
    return TrellisSection(mu, k_sym, GroupCode::span_of(gens, PrimeField(2), n));
}

GroupCode interleaver_code(PrimeField f, const std::vector<std::size_t>& perm) {
    std::size_t k = perm.size();
    std::vector<bool> hit(k, false);
    for (std::size_t v : perm) {
        if (v >= k || hit[v])
            throw std::invalid_argument("interleaver_code: not a permutation");
        hit[v] = true;
    }
    // Ports: k input pairs then k output pairs; output j carries input perm[j].
    std::size_t n = 2 * k;
    FMatrix g(f, 2 * k, 2 * n);
    for (std::size_t j = 0; j < k; ++j) {
        g.set(j, perm[j], 1);               // X in
        g.set(j, k + j, 1);                 // X out
        g.set(k + j, n + perm[j], 1);       // Z in
        g.set(k + j, n + k + j, 1);         // Z out
    }
    return GroupCode(f, n, g);
}

Ffg turbo_serial(const Ffg& outer, const std::vector<std::size_t>& perm, const Ffg& inner,
                 const std::vector<std::string>& inner_inputs) {
    PrimeField f = outer.field();
    if (inner.field() != f)
        throw std::invalid_argument("turbo_serial: component graphs use different fields");
    std::size_t k = outer.half_edges().size();
    if (perm.size() != k || inner_inputs.size() != k)
        throw std::invalid_argument(
            "turbo_serial: outer output count, interleaver size and inner input count differ");
    std::set<std::string> input_set(inner_inputs.begin(), inner_inputs.end());
    if (input_set.size() != k)
        throw std::invalid_argument("turbo_serial: duplicate inner input name");
    for (const std::string& name : inner_inputs)
        if (!inner.is_half_edge(name))
            throw std::invalid_argument("turbo_serial: inner input '" + name +
                                        "' is not a half-edge of the inner graph");

    Ffg g(f);
    // The composite exposes the inner graph's remaining half-edges.
    for (const HalfEdge& h : inner.half_edges())
        if (!input_set.count(h.name)) g.add_half_edge("i." + h.name);

    for (const HalfEdge& h : outer.half_edges()) g.add_edge("o." + h.name, 1);
    for (const EdgeVar& e : outer.edges()) g.add_edge("o." + e.name, e.mu);
    for (const std::string& name : inner_inputs) g.add_edge("i." + name, 1);
    for (const EdgeVar& e : inner.edges()) g.add_edge("i." + e.name, e.mu);

    for (const FactorNode& fn : outer.factors()) {
        std::vector<std::string> ports;
        for (const std::string& p : fn.ports) ports.push_back("o." + p);
        g.add_factor("o." + fn.name, ports, fn.code);
    }
    for (const FactorNode& fn : inner.factors()) {
        std::vector<std::string> ports;
        for (const std::string& p : fn.ports) ports.push_back("i." + p);
        g.add_factor("i." + fn.name, ports, fn.code);
    }

    std::vector<std::string> ports;
    for (const HalfEdge& h : outer.half_edges()) ports.push_back("o." + h.name);
    for (const std::string& name : inner_inputs) ports.push_back("i." + name);
    g.add_factor("interleaver", ports, interleaver_code(f, perm));
    return g;
}

GraphSpec::GraphSpec(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : n_(n), edges_(std::move(edges)) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto& [a, b] : edges_) {
        if (a == b) throw std::invalid_argument("GraphSpec: self-loop");
        if (a > b) std::swap(a, b);
        if (b >= n_) throw std::invalid_argument("GraphSpec: vertex index out of range");
        if (!seen.insert({a, b}).second)
            throw std::invalid_argument("GraphSpec: duplicate edge");
    }
    std::sort(edges_.begin(), edges_.end());
}

GraphSpec GraphSpec::from_adjacency(const FMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("GraphSpec: adjacency matrix must be square");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (a.at(i, i) != 0)
            throw std::invalid_argument("GraphSpec: adjacency diagonal must be zero");
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            if (a.at(i, j) != a.at(j, i))
                throw std::invalid_argument("GraphSpec: adjacency matrix must be symmetric");
            if (a.at(i, j)) edges.push_back({i, j});
        }
    }
    return GraphSpec(a.rows(), std::move(edges));
}

FMatrix GraphSpec::adjacency() const {
    FMatrix a(PrimeField(2), n_, n_);
    for (auto [i, j] : edges_) {
        a.set(i, j, 1);
        a.set(j, i, 1);
    }
    return a;
}

std::vector<std::size_t> GraphSpec::neighbors(std::size_t v) const {
    std::vector<std::size_t> out;
    for (auto [i, j] : edges_) {
        if (i == v) out.push_back(j);
        if (j == v) out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

GroupCode graph_state_code(const GraphSpec& g) {
    PrimeField f(2);
    std::size_t n = g.n();
    FMatrix m(f, n, 2 * n);
    FMatrix a = g.adjacency();
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, 1);
        for (std::size_t j = 0; j < n; ++j) m.set(i, n + j, a.at(i, j));
    }
    return GroupCode(f, n, m);
}

GroupCode graph_vertex_code(std::size_t degree) {
    PrimeField f(2);
    std::size_t n = degree + 1;  // pair 0 is the vertex port
    FMatrix g(f, n, 2 * n);
    g.set(0, 0, 1);
    for (std::size_t r = 1; r <= degree; ++r) {
        g.set(0, n + r, 1);  // Z on every edge port
        g.set(r, r, 1);      // X on the r-th edge port
        g.set(r, n, 1);      // Z on the vertex port
    }
    return GroupCode(f, n, g);
}

GroupCode graph_edge_code() {
    PrimeField f(2);
    FMatrix g(f, 2, 4);
    g.set(0, 0, 1);  // X on first port
    g.set(0, 3, 1);  // Z on second port
    g.set(1, 1, 1);  // X on second port
    g.set(1, 2, 1);  // Z on first port
    return GroupCode(f, 2, g);
}

Ffg graph_state_ffg(const GraphSpec& gs) {
    PrimeField f(2);
    Ffg g(f);
    auto t = [](std::size_t v) { return "t" + std::to_string(v + 1); };
    auto m = [](std::size_t v, std::size_t w) {
        return "m" + std::to_string(v + 1) + "." + std::to_string(w + 1);
    };

    for (std::size_t v = 0; v < gs.n(); ++v) g.add_half_edge(t(v));
    for (auto [i, j] : gs.edge_list()) {
        g.add_edge(m(i, j), 1);
        g.add_edge(m(j, i), 1);
    }
    for (std::size_t v = 0; v < gs.n(); ++v) {
        std::vector<std::string> ports{t(v)};
        std::vector<std::size_t> nbrs = gs.neighbors(v);
        for (std::size_t w : nbrs) ports.push_back(m(v, w));
        g.add_factor("v" + std::to_string(v + 1), ports, graph_vertex_code(nbrs.size()));
    }
    for (auto [i, j] : gs.edge_list())
        g.add_factor("e" + std::to_string(i + 1) + "." + std::to_string(j + 1),
                     {m(i, j), m(j, i)}, graph_edge_code());
    return g;
}

} // namespace sfg
