#include "sfg/ffg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace sfg {

void Ffg::add_half_edge(const std::string& name) { half_edges_.push_back({name}); }

void Ffg::add_edge(const std::string& name, std::size_t mu) { edges_.push_back({name, mu}); }

void Ffg::add_factor(const std::string& name, const std::vector<std::string>& ports,
                     const GroupCode& code) {
    factors_.push_back({name, ports, code});
}

bool Ffg::has_variable(const std::string& name) const {
    return std::any_of(half_edges_.begin(), half_edges_.end(),
                       [&](const HalfEdge& h) { return h.name == name; }) ||
           std::any_of(edges_.begin(), edges_.end(),
                       [&](const EdgeVar& e) { return e.name == name; });
}

bool Ffg::is_half_edge(const std::string& name) const {
    return std::any_of(half_edges_.begin(), half_edges_.end(),
                       [&](const HalfEdge& h) { return h.name == name; });
}

std::size_t Ffg::multiplicity(const std::string& name) const {
    if (is_half_edge(name)) return 1;
    for (const EdgeVar& e : edges_)
        if (e.name == name) return e.mu;
    throw std::invalid_argument("Ffg: unknown variable '" + name + "'");
}

std::size_t Ffg::degree(const std::string& name) const {
    std::size_t d = 0;
    for (const FactorNode& fn : factors_)
        for (const std::string& p : fn.ports)
            if (p == name) ++d;
    return d;
}

std::vector<Violation> Ffg::validate() const {
    std::vector<Violation> out;
    std::map<std::string, std::size_t> uses;

    std::map<std::string, int> names;
    for (const HalfEdge& h : half_edges_) {
        if (++names[h.name] > 1) out.push_back({h.name, "duplicate variable name"});
        uses[h.name] = 0;
    }
    for (const EdgeVar& e : edges_) {
        if (++names[e.name] > 1) out.push_back({e.name, "duplicate variable name"});
        if (e.mu < 1) out.push_back({e.name, "edge multiplicity must be at least 1"});
        uses[e.name] = 0;
    }
    std::map<std::string, int> fnames;
    for (const FactorNode& fn : factors_)
        if (++fnames[fn.name] > 1) out.push_back({fn.name, "duplicate factor name"});

    for (const FactorNode& fn : factors_) {
        std::size_t pairs = 0;
        for (const std::string& p : fn.ports) {
            auto it = uses.find(p);
            if (it == uses.end()) {
                out.push_back({fn.name, "port references unknown variable '" + p + "'"});
                continue;
            }
            it->second++;
            pairs += multiplicity(p);
        }
        if (fn.code.field() != f_)
            out.push_back({fn.name, "local code field does not match graph field"});
        if (fn.code.n() != pairs)
            out.push_back({fn.name, "local code length " + std::to_string(fn.code.n()) +
                                        " does not equal total port multiplicity " +
                                        std::to_string(pairs)});
    }

    for (const HalfEdge& h : half_edges_)
        if (uses.count(h.name) && uses[h.name] != 1)
            out.push_back({h.name, "half-edge must appear in exactly one factor port (found " +
                                       std::to_string(uses[h.name]) + ")"});
    for (const EdgeVar& e : edges_)
        if (uses.count(e.name) && uses[e.name] != 2)
            out.push_back({e.name, "edge must appear in exactly two factor ports (found " +
                                       std::to_string(uses[e.name]) + ")"});
    return out;
}

GroupCode equality_code(PrimeField f, std::size_t mu, std::size_t degree) {
    // Row span of (e_j, e_j, ..., e_j) over all 2*mu coordinate units.
    std::size_t n = mu * degree;
    FMatrix g(f, 2 * mu, 2 * n);
    for (std::size_t j = 0; j < mu; ++j)
        for (std::size_t k = 0; k < degree; ++k) {
            g.set(j, k * mu + j, 1);              // X block
            g.set(mu + j, n + k * mu + j, 1);     // Z block
        }
    return GroupCode(f, n, g);
}

GroupCode negation_code(PrimeField f, std::size_t mu) {
    std::size_t n = 2 * mu;
    FMatrix g(f, 2 * mu, 2 * n);
    uint8_t minus_one = f.neg(1);
    for (std::size_t j = 0; j < mu; ++j) {
        g.set(j, j, 1);                       // X of first port
        g.set(j, mu + j, minus_one);          // X of second port
        g.set(mu + j, n + j, 1);              // Z of first port
        g.set(mu + j, n + mu + j, minus_one); // Z of second port
    }
    return GroupCode(f, n, g);
}

namespace {

void require_valid(const Ffg& g, const char* who) {
    std::vector<Violation> v = g.validate();
    if (!v.empty())
        throw std::invalid_argument(std::string(who) + ": graph is invalid (" + v.front().element +
                                    ": " + v.front().message + ")");
}

} // namespace

GroupCode extract_global_code(const Ffg& g) {
    require_valid(g, "extract_global_code");
    PrimeField f = g.field();

    // Joint coordinate layout: half-edge pairs first (declaration
    // order), then edge pairs. Offsets are in symbol pairs.
    std::map<std::string, std::size_t> offset;
    std::size_t pairs = 0;
    for (const HalfEdge& h : g.half_edges()) offset[h.name] = pairs, pairs += 1;
    for (const EdgeVar& e : g.edges()) offset[e.name] = pairs, pairs += e.mu;
    std::size_t n_t = g.half_edges().size();

    // Stack every factor's parity rows lifted into joint coordinates.
    std::vector<std::vector<uint8_t>> rows;
    for (const FactorNode& fn : g.factors()) {
        FMatrix h = kernel(fn.code.generator_matrix());
        std::size_t ni = fn.code.n();
        for (std::size_t r = 0; r < h.rows(); ++r) {
            std::vector<uint8_t> lifted(2 * pairs, 0);
            std::size_t local = 0;
            for (const std::string& p : fn.ports) {
                std::size_t mu = g.multiplicity(p);
                std::size_t base = offset[p];
                for (std::size_t k = 0; k < mu; ++k) {
                    // Same variable in two ports of one factor adds up.
                    lifted[base + k] = f.add(lifted[base + k], h.at(r, local + k));
                    lifted[pairs + base + k] =
                        f.add(lifted[pairs + base + k], h.at(r, ni + local + k));
                }
                local += mu;
            }
            rows.push_back(std::move(lifted));
        }
    }

    FMatrix joint_checks = FMatrix::from_rows(f, rows, 2 * pairs);
    FMatrix behavior = kernel(joint_checks);

    // Project onto the half-edge coordinates (X block then Z block).
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < n_t; ++c) keep.push_back(c);
    for (std::size_t c = 0; c < n_t; ++c) keep.push_back(pairs + c);
    return GroupCode(f, n_t, behavior.selected_cols(keep));
}

Ffg dualize(const Ffg& g) {
    if (g.field().p() != 2)
        throw std::invalid_argument("dualize: requires p = 2 (use dualize_general)");
    require_valid(g, "dualize");
    Ffg out(g.field());
    for (const HalfEdge& h : g.half_edges()) out.add_half_edge(h.name);
    for (const EdgeVar& e : g.edges()) out.add_edge(e.name, e.mu);
    for (const FactorNode& fn : g.factors()) out.add_factor(fn.name, fn.ports, dual(fn.code));
    return out;
}

Ffg dualize_general(const Ffg& g) {
    require_valid(g, "dualize_general");
    PrimeField f = g.field();
    Ffg out(f);
    for (const HalfEdge& h : g.half_edges()) out.add_half_edge(h.name + "'");

    // Each edge splits into two halves (suffixes .1 and .2, one per
    // port occurrence) joined through a negation factor. The suffix
    // pair is a prefix code, so repeated dualization cannot collide.
    std::map<std::string, std::size_t> seen;
    for (const EdgeVar& e : g.edges()) {
        out.add_edge(e.name + ".1", e.mu);
        out.add_edge(e.name + ".2", e.mu);
        seen[e.name] = 0;
    }
    for (const FactorNode& fn : g.factors()) {
        std::vector<std::string> ports;
        for (const std::string& p : fn.ports) {
            if (g.is_half_edge(p)) {
                ports.push_back(p + "'");
            } else {
                ports.push_back(p + (seen[p]++ == 0 ? ".1" : ".2"));
            }
        }
        out.add_factor(fn.name, ports, dual(fn.code));
    }
    for (const EdgeVar& e : g.edges())
        out.add_factor("~" + e.name, {e.name + ".1", e.name + ".2"}, negation_code(f, e.mu));
    return out;
}

Ffg contract_negations(const Ffg& g) {
    Ffg cur = g;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t fi = 0; fi < cur.factors().size() && !changed; ++fi) {
            const FactorNode& fn = cur.factors()[fi];
            if (fn.ports.size() != 2) continue;
            const std::string &a = fn.ports[0], &b = fn.ports[1];
            if (a == b) continue;  // self-loop negation, keep
            if (cur.is_half_edge(a) || cur.is_half_edge(b)) continue;
            std::size_t mu = cur.multiplicity(a);
            if (cur.multiplicity(b) != mu) continue;
            if (fn.code != negation_code(cur.field(), mu)) continue;

            // Merge edge b into edge a and drop the factor.
            Ffg next(cur.field());
            for (const HalfEdge& h : cur.half_edges()) next.add_half_edge(h.name);
            for (const EdgeVar& e : cur.edges())
                if (e.name != b) next.add_edge(e.name, e.mu);
            for (std::size_t fj = 0; fj < cur.factors().size(); ++fj) {
                if (fj == fi) continue;
                const FactorNode& other = cur.factors()[fj];
                std::vector<std::string> ports = other.ports;
                for (std::string& p : ports)
                    if (p == b) p = a;
                next.add_factor(other.name, ports, other.code);
            }
            cur = next;
            changed = true;
        }
    }
    return cur;
}

Ffg normalize_variable(const Ffg& g, const std::string& var) {
    if (!g.has_variable(var))
        throw std::invalid_argument("normalize_variable: unknown variable '" + var + "'");
    std::size_t d = g.degree(var);
    if (d < 3)
        throw std::invalid_argument("normalize_variable: variable '" + var + "' has degree " +
                                    std::to_string(d) + ", need at least 3");
    std::size_t mu = g.multiplicity(var);
    PrimeField f = g.field();

    Ffg out(f);
    for (const HalfEdge& h : g.half_edges())
        if (h.name != var) out.add_half_edge(h.name);
    for (const EdgeVar& e : g.edges())
        if (e.name != var) out.add_edge(e.name, e.mu);
    std::vector<std::string> replicas;
    for (std::size_t k = 0; k < d; ++k) {
        replicas.push_back(var + "." + std::to_string(k + 1));
        out.add_edge(replicas.back(), mu);
    }
    std::size_t next_replica = 0;
    for (const FactorNode& fn : g.factors()) {
        std::vector<std::string> ports = fn.ports;
        for (std::string& p : ports)
            if (p == var) p = replicas[next_replica++];
        out.add_factor(fn.name, ports, fn.code);
    }
    out.add_factor("eq_" + var, replicas, equality_code(f, mu, d));
    return out;
}

CertifyResult certify_prop1(const Ffg& g) {
    if (g.field().p() != 2)
        throw std::invalid_argument("certify_prop1: requires p = 2");
    require_valid(g, "certify_prop1");
    CertifyResult res;
    bool all_so = true, all_sd = true;
    for (const FactorNode& fn : g.factors()) {
        bool so = is_self_orthogonal(fn.code);
        bool sd = is_self_dual(fn.code);
        res.factors.push_back({fn.name, so, sd});
        all_so &= so;
        all_sd &= sd;
    }
    res.certificate = all_sd   ? Certificate::SelfDual
                      : all_so ? Certificate::SelfOrthogonal
                               : Certificate::NoCertificate;
    return res;
}

const char* certificate_name(Certificate c) {
    switch (c) {
        case Certificate::SelfDual: return "self-dual";
        case Certificate::SelfOrthogonal: return "self-orthogonal";
        default: return "no-certificate";
    }
}

} // namespace sfg
