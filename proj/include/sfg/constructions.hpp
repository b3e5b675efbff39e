#ifndef SFG_CONSTRUCTIONS_HPP
#define SFG_CONSTRUCTIONS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "sfg/ffg.hpp"

namespace sfg {

/*
 * One trellis section: a local code on (state, symbols, state) with
 * coordinate layout [left state: mu pairs][symbols: k_sym pairs]
 * [right state: mu pairs].
 */
struct TrellisSection {
    std::size_t mu;
    std::size_t k_sym;
    GroupCode code;

    TrellisSection(std::size_t mu_, std::size_t k_sym_, GroupCode code_);
};

enum class Boundary { Terminated, TailBiting };

/*
 * Chain of L copies of a section sharing state edges. Terminated pins
 * the outer states to zero through degree-1 zero-code factors (the
 * zero code is self-orthogonal, so the composition certificate is
 * preserved); TailBiting identifies the first and last state as one
 * edge. Symbol variables are the half-edges, in time order.
 */
Ffg conv_chain(const TrellisSection& sec, std::size_t length, Boundary boundary);

/*
 * Section code from GF(4) rows (tokens over {0,1,w,w2}): the additive
 * span of every row and its w-multiple, pulled back through the
 * GF(4) correspondence. Row length must be 2*mu + k_sym.
 */
TrellisSection conv_section_from_gf4(const std::vector<std::vector<uint8_t>>& rows,
                                     std::size_t mu, std::size_t k_sym);

/*
 * Serial concatenation: the outer graph's half-edges feed a
 * permutation factor (the same coordinate permutation applied to the
 * X and Z halves, a self-dual code for every permutation), whose
 * outputs replace the named half-edges of the inner graph. Remaining
 * inner half-edges are the outputs of the composite.
 *
 * perm[j] is the outer output index feeding inner input j (0-based).
 * Hookups must be explicit and size-consistent; anything ambiguous is
 * rejected.
 */
Ffg turbo_serial(const Ffg& outer, const std::vector<std::size_t>& perm, const Ffg& inner,
                 const std::vector<std::string>& inner_inputs);

// The permutation factor's local code {(a, pi(a))} by itself.
GroupCode interleaver_code(PrimeField f, const std::vector<std::size_t>& perm);

/*
 * A simple graph: vertex count plus edge list (0-based internally,
 * stored with i < j, no duplicates, no self-loops). The adjacency
 * matrix is symmetric with zero diagonal by construction.
 */
class GraphSpec {
public:
    GraphSpec(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges);

    static GraphSpec from_adjacency(const FMatrix& a);

    std::size_t n() const { return n_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edge_list() const { return edges_; }
    FMatrix adjacency() const;
    std::vector<std::size_t> neighbors(std::size_t v) const;

private:
    std::size_t n_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

// Row span of [I | A]; self-dual for every graph.
GroupCode graph_state_code(const GraphSpec& g);

/*
 * The factor graph mirroring the graph itself: one factor per vertex,
 * one per edge, all local codes self-dual. Each graph edge {i, j}
 * becomes two variables m<i>.<j> and m<j>.<i> joined by the edge
 * factor; vertex ports t<i> are the half-edges. Extraction equals
 * graph_state_code(g).
 */
Ffg graph_state_ffg(const GraphSpec& g);

// Local code of a vertex factor with the given degree: the first
// generator ties t_X to the Z half of every incident edge port, the
// r-th ties the r-th edge port's X to t_Z.
GroupCode graph_vertex_code(std::size_t degree);

// Local code of an edge factor: row span of [1 0|0 1; 0 1|1 0].
GroupCode graph_edge_code();

} // namespace sfg

#endif
