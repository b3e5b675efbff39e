#ifndef SFG_FFG_HPP
#define SFG_FFG_HPP

#include <string>
#include <vector>

#include "sfg/symplectic.hpp"

namespace sfg {

/*
 * Forney-style factor graph over symbol pairs in Z_p^2.
 *
 * Variables are either half-edges (external, one symbol pair, attached
 * to exactly one factor port) or edges (internal, mu symbol pairs,
 * attached to exactly two factor ports; both ports may sit on the same
 * factor). Each factor carries an additive local code whose coordinate
 * pairs are tiled by its ports in order.
 *
 * Ffg objects are plain values; all transformations return new graphs.
 */

struct HalfEdge {
    std::string name;  // multiplicity is always one symbol pair
};

struct EdgeVar {
    std::string name;
    std::size_t mu;
};

struct FactorNode {
    std::string name;
    std::vector<std::string> ports;  // variable names, in local-coordinate order
    GroupCode code;
};

struct Violation {
    std::string element;
    std::string message;
};

class Ffg {
public:
    explicit Ffg(PrimeField f) : f_(f) {}

    void add_half_edge(const std::string& name);
    void add_edge(const std::string& name, std::size_t mu);
    void add_factor(const std::string& name, const std::vector<std::string>& ports,
                    const GroupCode& code);

    PrimeField field() const { return f_; }
    const std::vector<HalfEdge>& half_edges() const { return half_edges_; }
    const std::vector<EdgeVar>& edges() const { return edges_; }
    const std::vector<FactorNode>& factors() const { return factors_; }

    bool has_variable(const std::string& name) const;
    bool is_half_edge(const std::string& name) const;
    // Symbol pairs carried by a variable (1 for half-edges).
    std::size_t multiplicity(const std::string& name) const;
    // Port occurrences of a variable across all factors.
    std::size_t degree(const std::string& name) const;

    // Empty iff the graph satisfies every structural invariant; each
    // violation names the offending element.
    std::vector<Violation> validate() const;

private:
    PrimeField f_;
    std::vector<HalfEdge> half_edges_;
    std::vector<EdgeVar> edges_;
    std::vector<FactorNode> factors_;
};

// Indicator codes used as building blocks.
GroupCode equality_code(PrimeField f, std::size_t mu, std::size_t degree);  // (a, a, ..., a)
GroupCode negation_code(PrimeField f, std::size_t mu);                      // (a, -a)

/*
 * The code on the half-edge variables obtained by requiring every
 * local constraint to hold for some assignment of the internal edges.
 * Computed exactly: local parity checks are lifted to the joint
 * coordinate space, stacked, and the kernel is projected onto the
 * half-edge coordinates. Column order is half-edge declaration order.
 * Throws std::invalid_argument if validate() is nonempty.
 */
GroupCode extract_global_code(const Ffg& g);

/*
 * Characteristic-2 dual graph: identical topology, every local code
 * replaced by its symplectic dual. Extraction of the result equals
 * dual(extract_global_code(g)). Requires p = 2.
 */
Ffg dualize(const Ffg& g);

/*
 * General-p dual graph: each local code is dualized, each internal
 * edge M is split into two halves M.1 and M.2 joined through a
 * negation factor enforcing m.1 = -m.2, and half-edges are relabeled
 * with a prime. At p = 2 the negation factors degenerate to equality
 * factors.
 */
Ffg dualize_general(const Ffg& g);

/*
 * Removes degree-2 negation/equality factors left by dualize_general
 * at p = 2, merging their two edges back into one. Repeated until no
 * such factor remains; degenerate self-loop negations are kept.
 */
Ffg contract_negations(const Ffg& g);

/*
 * Replaces a variable appearing in d >= 3 factor ports by d replica
 * edges tied together by an equality-indicator factor. The extracted
 * global code is unchanged. Throws if the variable has degree < 3.
 */
Ffg normalize_variable(const Ffg& g, const std::string& var);

enum class Certificate { SelfDual, SelfOrthogonal, NoCertificate };

struct FactorReport {
    std::string factor;
    bool self_orthogonal;
    bool self_dual;
};

struct CertifyResult {
    Certificate certificate;
    std::vector<FactorReport> factors;
};

/*
 * Composition-rule certificate: SelfDual if every local code is
 * self-dual, SelfOrthogonal if every local code is self-orthogonal,
 * NoCertificate otherwise. NoCertificate is not a disproof; the rule
 * is sufficient, not necessary. Requires p = 2 and a valid graph.
 */
CertifyResult certify_prop1(const Ffg& g);

const char* certificate_name(Certificate c);

} // namespace sfg

#endif
