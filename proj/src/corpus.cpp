#include "sfg/corpus.hpp"

#include <stdexcept>

namespace sfg::corpus {

namespace {

const char* kSteane = R"(# Seven-qubit CSS label code: both binary components are the [7,3,4]
# simplex code, the row span of
#   0 0 0 1 1 1 1
#   0 1 1 0 0 1 1
#   1 0 1 0 1 0 1
code steane {
  length 7
  pauli IIIXXXX
  pauli IXXIIXX
  pauli XIXIXIX
  pauli IIIZZZZ
  pauli IZZIIZZ
  pauli ZIZIZIZ
}
)";

const char* kFiveQubit = R"(# Five-qubit code: additive generators (cyclic shifts of XZZXI) and
# the equivalent two-row GF(4)-linear form.
code fivequbit {
  length 5
  pauli XZZXI
  pauli IXZZX
  pauli XIXZZ
  pauli ZXIXZ
}

linear fivequbit_linear {
  length 5
  gf4 w w2 w2 w 0
  gf4 0 w w2 w2 w
}
)";

const char* kConv13 = R"(# Rate-1/3 convolutional section: one state pair on each side, three
# symbol pairs in between. GF(4) rows are closed under multiplication
# by w at load.
section conv13 {
  mu 1
  gf4 0 1 1 1 1
  gf4 1 1 w w2 0
}
)";

const char* kConv35 = R"(# Rate-3/5 convolutional section with two state pairs per side.
section conv35 {
  mu 2
  gf4 0 0 1 1 1 0 1
  gf4 0 1 1 0 0 1 1
  gf4 1 1 1 1 0 0 0
}

# Delay-register variant: the trailing state symbol of one section
# equals the leading state symbol of the next. Its span is NOT
# self-orthogonal, so the composition rule gives no certificate.
section conv35_delay {
  mu 2
  gf4 0 0 1 1 1 0 1
  gf4 0 1 1 0 0 1 0
  gf4 1 0 1 1 0 0 0
}
)";

const char* kTurboInner = R"(# Inner trellis section of a serial turbo construction: one state pair
# per side, symbol pairs (l, t1, t2) with l fed from the outer code.
# Self-dual; additive but not GF(4)-linear (32 codewords).
section turbo_inner {
  mu 1
  xz 10111 00000
  xz 01011 00000
  xz 00000 10100
  xz 00000 01110
  xz 00000 00011
}
)";

const char* kGraphState5 = R"(# Five-vertex graph state: the label code is the row span of [I | A].
graph gs5 {
  vertices 5
  edge 1 2
  edge 1 3
  edge 1 4
  edge 1 5
  edge 2 3
  edge 2 4
  edge 2 5
  edge 3 5
}

code gs5_code {
  length 5
  xz 10000 01111
  xz 01000 10111
  xz 00100 11001
  xz 00010 11000
  xz 00001 11100
}

# Local code of vertex 1 (degree 4): columns (t1, m12, m13, m14, m15).
code gs5_vertex1 {
  length 5
  xz 10000 01111
  xz 01000 10000
  xz 00100 10000
  xz 00010 10000
  xz 00001 10000
}

# Local code shared by every edge factor: columns (m_ij, m_ji).
code gs5_edge {
  length 2
  xz 10 01
  xz 01 10
}
)";

const char* kFfgDemo = R"(# Small demo graph: three factors, three internal edges, four outputs.
# Every local code is self-dual, so the extraction is self-dual too.
code vdeg2 {
  length 3
  pauli XZZ
  pauli ZXI
  pauli ZIX
}

code pairswap {
  length 4
  pauli XZII
  pauli ZXII
  pauli IIXZ
  pauli IIZX
}

ffg demo {
  halfedge t1
  halfedge t2
  halfedge t3
  halfedge t4
  edge m1 1
  edge m2 1
  edge m3 1
  factor f1 vdeg2 t1 m1 m3
  factor f2 vdeg2 t2 m1 m2
  factor f3 pairswap t3 t4 m2 m3
}
)";

const char* kSimplex = R"(0001111
0110011
1010101
)";

const std::vector<CorpusFile> kFiles = {
    {"steane.sfg", kSteane},
    {"fivequbit.sfg", kFiveQubit},
    {"conv_rate13.sfg", kConv13},
    {"conv_rate35.sfg", kConv35},
    {"turbo_inner.sfg", kTurboInner},
    {"graphstate5.sfg", kGraphState5},
    {"ffg_demo.sfg", kFfgDemo},
    {"simplex.txt", kSimplex},
};

} // namespace

const std::vector<CorpusFile>& files() { return kFiles; }

std::string file(const std::string& name) {
    for (const CorpusFile& f : kFiles)
        if (name == f.name) return f.contents;
    throw std::invalid_argument("corpus: no file named '" + name + "'");
}

} // namespace sfg::corpus
