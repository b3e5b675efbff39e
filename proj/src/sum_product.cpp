#include "sfg/sum_product.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace sfg {

FactorWeights::FactorWeights(Ffg g) : g_(std::move(g)) {
    if (g_.field().p() != 2)
        throw std::invalid_argument("FactorWeights: requires p = 2");
    std::vector<Violation> v = g_.validate();
    if (!v.empty())
        throw std::invalid_argument("FactorWeights: graph is invalid (" + v.front().element +
                                    ": " + v.front().message + ")");
    for (const FactorNode& fn : g_.factors()) {
        if (fn.code.rank() > 24)
            throw std::invalid_argument("FactorWeights: local code too large to tabulate");
        weights_.emplace_back(std::size_t{1} << fn.code.rank(), 1.0);
    }
    for (const HalfEdge& h : g_.half_edges())
        priors_[h.name] = {1.0, 1.0, 1.0, 1.0};
}

void FactorWeights::set_factor_weight(const std::string& factor, std::size_t codeword_index,
                                      double w) {
    if (w < 0) throw std::invalid_argument("FactorWeights: negative weight");
    for (std::size_t i = 0; i < g_.factors().size(); ++i) {
        if (g_.factors()[i].name == factor) {
            weights_[i].at(codeword_index) = w;
            return;
        }
    }
    throw std::invalid_argument("FactorWeights: unknown factor '" + factor + "'");
}

void FactorWeights::set_prior(const std::string& half_edge, const std::array<double, 4>& table) {
    auto it = priors_.find(half_edge);
    if (it == priors_.end())
        throw std::invalid_argument("FactorWeights: unknown half-edge '" + half_edge + "'");
    for (double v : table)
        if (v < 0) throw std::invalid_argument("FactorWeights: negative prior");
    it->second = table;
}

const std::vector<double>& FactorWeights::factor_table(std::size_t factor_index) const {
    return weights_.at(factor_index);
}

const std::array<double, 4>& FactorWeights::prior(const std::string& half_edge) const {
    return priors_.at(half_edge);
}

namespace {

struct PortInfo {
    bool is_edge;
    std::size_t edge_index;      // valid when is_edge
    std::size_t endpoint;        // 0 or 1: which occurrence of the edge this port is
    std::string half_edge_name;  // valid when !is_edge
    std::size_t offset_pairs;    // local coordinate offset within the factor
    std::size_t mu;
};

struct Wiring {
    std::vector<std::vector<PortInfo>> factor_ports;      // per factor
    std::vector<std::array<std::pair<std::size_t, std::size_t>, 2>> edge_ends;  // (factor, port)
    std::vector<std::size_t> edge_mu;
};

Wiring wire(const Ffg& g, std::size_t mu_bound) {
    Wiring w;
    std::map<std::string, std::size_t> edge_index;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const EdgeVar& ev = g.edges()[e];
        if (ev.mu > mu_bound)
            throw std::invalid_argument("sum_product: edge '" + ev.name +
                                        "' exceeds the multiplicity bound");
        edge_index[ev.name] = e;
        w.edge_mu.push_back(ev.mu);
    }
    w.edge_ends.resize(g.edges().size());
    std::vector<std::size_t> seen(g.edges().size(), 0);
    w.factor_ports.resize(g.factors().size());
    for (std::size_t fi = 0; fi < g.factors().size(); ++fi) {
        const FactorNode& fn = g.factors()[fi];
        std::size_t off = 0;
        for (std::size_t s = 0; s < fn.ports.size(); ++s) {
            const std::string& p = fn.ports[s];
            PortInfo pi;
            pi.offset_pairs = off;
            pi.mu = g.multiplicity(p);
            off += pi.mu;
            if (g.is_half_edge(p)) {
                pi.is_edge = false;
                pi.half_edge_name = p;
            } else {
                std::size_t e = edge_index.at(p);
                pi.is_edge = true;
                pi.edge_index = e;
                pi.endpoint = seen[e];
                w.edge_ends[e][seen[e]++] = {fi, s};
            }
            w.factor_ports[fi].push_back(pi);
        }
    }
    return w;
}

// Value of a codeword restricted to a port: symbol index x + 2z per
// pair, first pair least significant.
std::size_t port_value(const SympVector& c, const PortInfo& pi) {
    std::size_t v = 0;
    for (std::size_t q = 0; q < pi.mu; ++q) {
        std::size_t i = pi.offset_pairs + q;
        v |= static_cast<std::size_t>(c.x(i) + 2 * c.z(i)) << (2 * q);
    }
    return v;
}

void normalize_or_throw(std::vector<double>& t, const char* what) {
    double s = std::accumulate(t.begin(), t.end(), 0.0);
    if (s <= 0.0)
        throw std::runtime_error(std::string("sum_product: ") + what +
                                 " has zero total weight");
    for (double& v : t) v /= s;
}

// Cached per-factor codeword tables: port values and weight.
struct FactorCache {
    std::vector<double> weight;                       // per codeword
    std::vector<std::vector<std::size_t>> port_vals;  // per codeword, per port
};

FactorCache cache_factor(const FactorWeights& fw, const Wiring& w, std::size_t fi) {
    const FactorNode& fn = fw.graph().factors()[fi];
    FactorCache fc;
    std::size_t k = 0;
    for_each_codeword(fn.code, [&](const SympVector& c) {
        fc.weight.push_back(fw.factor_table(fi)[k]);
        std::vector<std::size_t> vals;
        for (const PortInfo& pi : w.factor_ports[fi]) vals.push_back(port_value(c, pi));
        fc.port_vals.push_back(std::move(vals));
        ++k;
    });
    return fc;
}

// Message out of factor fi through its port slot `out_slot`, given the
// current incoming messages (indexed [edge][endpoint] = emitted by
// that endpoint).
std::vector<double> factor_message(const FactorWeights& fw, const Wiring& w,
                                   const std::vector<FactorCache>& cache, std::size_t fi,
                                   std::size_t out_slot,
                                   const std::vector<std::array<std::vector<double>, 2>>& out_msg) {
    const FactorCache& fc = cache[fi];
    const std::vector<PortInfo>& ports = w.factor_ports[fi];
    std::vector<double> out(std::size_t{1} << (2 * ports[out_slot].mu), 0.0);
    for (std::size_t k = 0; k < fc.weight.size(); ++k) {
        double term = fc.weight[k];
        if (term == 0) continue;
        for (std::size_t s = 0; s < ports.size(); ++s) {
            if (s == out_slot) continue;
            const PortInfo& pi = ports[s];
            std::size_t v = fc.port_vals[k][s];
            if (pi.is_edge)
                term *= out_msg[pi.edge_index][1 - pi.endpoint][v];
            else
                term *= fw.prior(pi.half_edge_name)[v];
        }
        out[fc.port_vals[k][out_slot]] += term;
    }
    return out;
}

std::vector<double> half_edge_marginal(const FactorWeights& fw, const Wiring& w,
                                       const std::vector<FactorCache>& cache, std::size_t fi,
                                       std::size_t slot,
                                       const std::vector<std::array<std::vector<double>, 2>>& out_msg) {
    std::vector<double> b = factor_message(fw, w, cache, fi, slot, out_msg);
    const std::array<double, 4>& prior = fw.prior(w.factor_ports[fi][slot].half_edge_name);
    for (std::size_t v = 0; v < 4; ++v) b[v] *= prior[v];
    return b;
}

bool is_forest(const Ffg& g, const Wiring& w) {
    std::vector<std::size_t> parent(g.factors().size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        std::size_t a = find(w.edge_ends[e][0].first);
        std::size_t b = find(w.edge_ends[e][1].first);
        if (a == b) return false;  // includes self-loops and parallel edges
        parent[a] = b;
    }
    return true;
}

} // namespace

SumProductResult sum_product(const FactorWeights& fw, const Schedule& schedule,
                             std::size_t mu_bound) {
    const Ffg& g = fw.graph();
    Wiring w = wire(g, mu_bound);
    std::vector<FactorCache> cache;
    for (std::size_t fi = 0; fi < g.factors().size(); ++fi)
        cache.push_back(cache_factor(fw, w, fi));

    std::size_t ne = g.edges().size();
    // out_msg[e][k]: message emitted through endpoint k of edge e.
    std::vector<std::array<std::vector<double>, 2>> out_msg(ne);
    for (std::size_t e = 0; e < ne; ++e)
        for (int k = 0; k < 2; ++k)
            out_msg[e][k].assign(std::size_t{1} << (2 * w.edge_mu[e]),
                                 1.0 / static_cast<double>(std::size_t{1} << (2 * w.edge_mu[e])));

    bool converged = false;
    std::size_t iterations = 0;
    double delta = 0.0;

    if (schedule.kind == Schedule::Kind::ExactOnTree) {
        if (!is_forest(g, w))
            throw std::invalid_argument("sum_product: exact schedule requires a cycle-free graph");
        // Dependency-ordered sweep: a message is final once every
        // other edge of its factor has received its incoming message.
        std::vector<std::array<bool, 2>> done(ne, {false, false});
        bool progress = true;
        std::size_t remaining = 2 * ne;
        while (remaining && progress) {
            progress = false;
            for (std::size_t e = 0; e < ne; ++e) {
                for (int k = 0; k < 2; ++k) {
                    if (done[e][k]) continue;
                    auto [fi, slot] = w.edge_ends[e][k];
                    bool ready = true;
                    for (std::size_t s = 0; s < w.factor_ports[fi].size() && ready; ++s) {
                        const PortInfo& pi = w.factor_ports[fi][s];
                        if (s != slot && pi.is_edge && !done[pi.edge_index][1 - pi.endpoint])
                            ready = false;
                    }
                    if (!ready) continue;
                    out_msg[e][k] = factor_message(fw, w, cache, fi, slot, out_msg);
                    normalize_or_throw(out_msg[e][k], "message");
                    done[e][k] = true;
                    --remaining;
                    progress = true;
                }
            }
        }
        converged = true;
        iterations = 1;
    } else {
        for (iterations = 1; iterations <= schedule.max_iters; ++iterations) {
            std::vector<std::array<std::vector<double>, 2>> next(ne);
            delta = 0.0;
            for (std::size_t e = 0; e < ne; ++e) {
                for (int k = 0; k < 2; ++k) {
                    auto [fi, slot] = w.edge_ends[e][k];
                    std::vector<double> m = factor_message(fw, w, cache, fi, slot, out_msg);
                    normalize_or_throw(m, "message");
                    if (schedule.damping > 0) {
                        for (std::size_t v = 0; v < m.size(); ++v)
                            m[v] = std::pow(out_msg[e][k][v], schedule.damping) *
                                   std::pow(m[v], 1.0 - schedule.damping);
                        normalize_or_throw(m, "damped message");
                    }
                    for (std::size_t v = 0; v < m.size(); ++v)
                        delta = std::max(delta, std::abs(m[v] - out_msg[e][k][v]));
                    next[e][k] = std::move(m);
                }
            }
            out_msg = std::move(next);
            if (delta < schedule.tol) {
                converged = true;
                break;
            }
        }
        iterations = std::min(iterations, schedule.max_iters);
    }

    SumProductResult res;
    res.converged = converged;
    res.iterations = iterations;
    res.final_delta = delta;

    for (std::size_t fi = 0; fi < g.factors().size(); ++fi)
        for (std::size_t s = 0; s < w.factor_ports[fi].size(); ++s)
            if (!w.factor_ports[fi][s].is_edge) {
                std::vector<double> b = half_edge_marginal(fw, w, cache, fi, s, out_msg);
                normalize_or_throw(b, "half-edge marginal");
                res.marginals.push_back({w.factor_ports[fi][s].half_edge_name, std::move(b)});
            }
    // Report half-edges in declaration order.
    std::sort(res.marginals.begin(), res.marginals.end(),
              [&](const VariableMarginal& a, const VariableMarginal& b) {
                  auto pos = [&](const std::string& name) {
                      for (std::size_t i = 0; i < g.half_edges().size(); ++i)
                          if (g.half_edges()[i].name == name) return i;
                      return g.half_edges().size();
                  };
                  return pos(a.variable) < pos(b.variable);
              });
    for (std::size_t e = 0; e < ne; ++e) {
        std::vector<double> b(out_msg[e][0].size());
        for (std::size_t v = 0; v < b.size(); ++v) b[v] = out_msg[e][0][v] * out_msg[e][1][v];
        normalize_or_throw(b, "edge marginal");
        res.marginals.push_back({g.edges()[e].name, std::move(b)});
    }
    return res;
}

} // namespace sfg
