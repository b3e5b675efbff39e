#ifndef SFG_SUM_PRODUCT_HPP
#define SFG_SUM_PRODUCT_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sfg/ffg.hpp"

namespace sfg {

/*
 * A factor graph with nonnegative weights: one weight per local-code
 * element per factor (defaults to the indicator, weight 1 on every
 * codeword), plus a prior table over {I, X, Z, Y} per half-edge.
 *
 * Codeword indexing: index k selects the sum of the canonical
 * generators picked by the bits of k, first generator least
 * significant; this matches the enumeration order of
 * for_each_codeword. Symbol indexing within tables is x + 2z per
 * pair, first pair of a port least significant.
 */
class FactorWeights {
public:
    explicit FactorWeights(Ffg g);

    const Ffg& graph() const { return g_; }

    void set_factor_weight(const std::string& factor, std::size_t codeword_index, double w);
    void set_prior(const std::string& half_edge, const std::array<double, 4>& table);

    const std::vector<double>& factor_table(std::size_t factor_index) const;
    const std::array<double, 4>& prior(const std::string& half_edge) const;

private:
    Ffg g_;
    std::vector<std::vector<double>> weights_;       // per factor, per codeword
    std::map<std::string, std::array<double, 4>> priors_;
};

struct Schedule {
    enum class Kind { ExactOnTree, Flooding };
    Kind kind = Kind::ExactOnTree;
    std::size_t max_iters = 100;
    double damping = 0.0;  // geometric mixing weight on the old message
    double tol = 1e-9;

    static Schedule exact_on_tree() { return {}; }
    static Schedule flooding(std::size_t max_iters, double damping, double tol) {
        return {Kind::Flooding, max_iters, damping, tol};
    }
};

struct VariableMarginal {
    std::string variable;
    std::vector<double> table;  // size 4^mu, normalized to 1
};

struct SumProductResult {
    std::vector<VariableMarginal> marginals;  // half-edges first, then edges
    bool converged;
    std::size_t iterations;
    double final_delta;
};

/*
 * Sum-product marginalization. ExactOnTree requires a cycle-free
 * graph (a self-loop or parallel edges count as cycles) and returns
 * exact marginals; Flooding iterates synchronous updates with
 * multiplicative damping and reports convergence, with no accuracy
 * guarantee on cyclic graphs. Edges of multiplicity above mu_bound
 * are rejected (message tables grow as 4^mu).
 */
SumProductResult sum_product(const FactorWeights& fw, const Schedule& schedule,
                             std::size_t mu_bound = 4);

} // namespace sfg

#endif
