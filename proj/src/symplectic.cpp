#include "sfg/symplectic.hpp"

#include <algorithm>
#include <stdexcept>

namespace sfg {

namespace {

// Swap the X and Z column blocks of a generator matrix with 2n columns.
FMatrix swap_xz_blocks(const FMatrix& g, std::size_t n) {
    FMatrix out(g.field(), g.rows(), g.cols());
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < n; ++c) {
            out.set(r, c, g.at(r, n + c));
            out.set(r, n + c, g.at(r, c));
        }
    return out;
}

} // namespace

SympVector::SympVector(PrimeField f, std::vector<uint8_t> x_part, std::vector<uint8_t> z_part)
    : f_(f), x_(std::move(x_part)), z_(std::move(z_part)) {
    if (x_.size() != z_.size())
        throw std::invalid_argument("SympVector: x and z parts must have equal length");
    for (auto& v : x_) v = f_.reduce(v);
    for (auto& v : z_) v = f_.reduce(v);
}

SympVector SympVector::zero(PrimeField f, std::size_t n) {
    return SympVector(f, std::vector<uint8_t>(n, 0), std::vector<uint8_t>(n, 0));
}

SympVector SympVector::from_flat(PrimeField f, std::span<const uint8_t> flat) {
    if (flat.size() % 2 != 0)
        throw std::invalid_argument("SympVector::from_flat: odd length");
    std::size_t n = flat.size() / 2;
    return SympVector(f, std::vector<uint8_t>(flat.begin(), flat.begin() + n),
                      std::vector<uint8_t>(flat.begin() + n, flat.end()));
}

SympVector SympVector::from_pauli(const std::string& s) {
    PrimeField f(2);
    std::vector<uint8_t> x(s.size()), z(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        switch (s[i]) {
            case 'I': case 'i': break;
            case 'X': case 'x': x[i] = 1; break;
            case 'Z': case 'z': z[i] = 1; break;
            case 'Y': case 'y': x[i] = 1; z[i] = 1; break;
            default:
                throw std::invalid_argument(std::string("SympVector::from_pauli: bad letter '") +
                                            s[i] + "'");
        }
    }
    return SympVector(f, std::move(x), std::move(z));
}

std::string SympVector::to_pauli() const {
    if (f_.p() != 2)
        throw std::invalid_argument("SympVector::to_pauli: requires p = 2");
    std::string s(n(), 'I');
    for (std::size_t i = 0; i < n(); ++i) {
        if (x_[i] && z_[i]) s[i] = 'Y';
        else if (x_[i]) s[i] = 'X';
        else if (z_[i]) s[i] = 'Z';
    }
    return s;
}

std::vector<uint8_t> SympVector::to_flat() const {
    std::vector<uint8_t> out;
    out.reserve(2 * n());
    out.insert(out.end(), x_.begin(), x_.end());
    out.insert(out.end(), z_.begin(), z_.end());
    return out;
}

SympVector SympVector::operator+(const SympVector& o) const {
    if (f_ != o.f_ || n() != o.n())
        throw std::invalid_argument("SympVector: shape mismatch in addition");
    std::vector<uint8_t> x(n()), z(n());
    for (std::size_t i = 0; i < n(); ++i) {
        x[i] = f_.add(x_[i], o.x_[i]);
        z[i] = f_.add(z_[i], o.z_[i]);
    }
    return SympVector(f_, std::move(x), std::move(z));
}

bool SympVector::operator==(const SympVector& o) const {
    return f_ == o.f_ && x_ == o.x_ && z_ == o.z_;
}

bool SympVector::lex_less(const SympVector& o) const {
    if (n() != o.n())
        throw std::invalid_argument("SympVector::lex_less: shape mismatch");
    for (std::size_t i = 0; i < n(); ++i)
        if (x_[i] != o.x_[i]) return x_[i] < o.x_[i];
    for (std::size_t i = 0; i < n(); ++i)
        if (z_[i] != o.z_[i]) return z_[i] < o.z_[i];
    return false;
}

uint8_t symp_inner(const SympVector& a, const SympVector& b) {
    if (a.field() != b.field() || a.n() != b.n())
        throw std::invalid_argument("symp_inner: shape mismatch");
    PrimeField f = a.field();
    unsigned acc = 0;
    for (std::size_t i = 0; i < a.n(); ++i)
        acc += a.x(i) * b.z(i) + a.z(i) * b.x(i);
    return f.reduce(static_cast<long long>(acc));
}

std::size_t symp_weight(const SympVector& t) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < t.n(); ++i)
        if (t.x(i) || t.z(i)) ++w;
    return w;
}

GroupCode::GroupCode(PrimeField f, std::size_t n, const FMatrix& generators)
    : f_(f), n_(n), gens_(f, 0, 2 * n), self_orthogonal_(true) {
    if (generators.field() != f)
        throw std::invalid_argument("GroupCode: field mismatch");
    if (generators.cols() != 2 * n)
        throw std::invalid_argument("GroupCode: generator matrix must have 2n columns");
    RrefResult rr = rref(generators);
    gens_ = rr.m.without_zero_rows();
    pivots_ = rr.pivot_cols;
    // Generator pairs (including the diagonal, which matters for p > 2)
    // decide self-orthogonality of the whole additive code.
    for (std::size_t i = 0; i < gens_.rows() && self_orthogonal_; ++i)
        for (std::size_t j = i; j < gens_.rows(); ++j) {
            if (symp_inner(generator(i), generator(j)) != 0) {
                self_orthogonal_ = false;
                break;
            }
        }
}

GroupCode GroupCode::zero(PrimeField f, std::size_t n) {
    return GroupCode(f, n, FMatrix(f, 0, 2 * n));
}

GroupCode GroupCode::full(PrimeField f, std::size_t n) {
    return GroupCode(f, n, FMatrix::identity(f, 2 * n));
}

GroupCode GroupCode::from_pauli_rows(const std::vector<std::string>& rows) {
    PrimeField f(2);
    if (rows.empty())
        throw std::invalid_argument("GroupCode::from_pauli_rows: no rows (length unknown)");
    std::size_t n = rows.front().size();
    FMatrix g(f, rows.size(), 2 * n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        SympVector v = SympVector::from_pauli(rows[r]);
        if (v.n() != n)
            throw std::invalid_argument("GroupCode::from_pauli_rows: ragged rows");
        for (std::size_t c = 0; c < n; ++c) {
            g.set(r, c, v.x(c));
            g.set(r, n + c, v.z(c));
        }
    }
    return GroupCode(f, n, g);
}

GroupCode GroupCode::span_of(const std::vector<SympVector>& gens, PrimeField f, std::size_t n) {
    FMatrix g(f, gens.size(), 2 * n);
    for (std::size_t r = 0; r < gens.size(); ++r) {
        if (gens[r].field() != f || gens[r].n() != n)
            throw std::invalid_argument("GroupCode::span_of: shape mismatch");
        for (std::size_t c = 0; c < n; ++c) {
            g.set(r, c, gens[r].x(c));
            g.set(r, n + c, gens[r].z(c));
        }
    }
    return GroupCode(f, n, g);
}

SympVector GroupCode::generator(std::size_t i) const {
    std::vector<uint8_t> flat = gens_.row(i);
    return SympVector::from_flat(f_, flat);
}

bool GroupCode::contains(const SympVector& t) const {
    if (t.field() != f_ || t.n() != n_)
        throw std::invalid_argument("GroupCode::contains: shape mismatch");
    // Reduce against the canonical rref: each pivot eliminates one
    // coordinate; membership iff the residue vanishes.
    std::vector<uint8_t> v = t.to_flat();
    for (std::size_t row = 0; row < gens_.rows(); ++row) {
        uint8_t lead = v[pivots_[row]];
        if (lead == 0) continue;
        uint8_t s = f_.neg(lead);
        for (std::size_t c = 0; c < 2 * n_; ++c)
            v[c] = f_.add(v[c], f_.mul(s, gens_.at(row, c)));
    }
    return std::all_of(v.begin(), v.end(), [](uint8_t b) { return b == 0; });
}

bool GroupCode::operator==(const GroupCode& o) const {
    return f_ == o.f_ && n_ == o.n_ && gens_ == o.gens_;
}

GroupCode dual(const GroupCode& c) {
    FMatrix swapped = swap_xz_blocks(c.generator_matrix(), c.n());
    return GroupCode(c.field(), c.n(), kernel(swapped));
}

bool is_self_orthogonal(const GroupCode& c) { return c.self_orthogonal(); }

bool is_self_dual(const GroupCode& c) { return c.self_dual(); }

void for_each_codeword(const GroupCode& c, const std::function<void(const SympVector&)>& fn,
                       uint64_t limit) {
    unsigned p = c.field().p();
    std::size_t r = c.rank();
    double count = 1;
    for (std::size_t i = 0; i < r; ++i) count *= p;
    if (count > static_cast<double>(limit))
        throw std::runtime_error("for_each_codeword: codeword count exceeds limit");

    std::vector<uint8_t> digits(r, 0);
    std::vector<uint8_t> flat(2 * c.n(), 0);
    PrimeField f = c.field();
    const FMatrix& g = c.generator_matrix();
    while (true) {
        fn(SympVector::from_flat(f, flat));
        // Odometer increment; add/subtract generator rows as digits move.
        std::size_t i = 0;
        for (; i < r; ++i) {
            if (digits[i] + 1u < p) {
                digits[i]++;
                for (std::size_t cc = 0; cc < flat.size(); ++cc)
                    flat[cc] = f.add(flat[cc], g.at(i, cc));
                break;
            }
            digits[i] = 0;
            for (std::size_t cc = 0; cc < flat.size(); ++cc)
                flat[cc] = f.sub(flat[cc], f.mul(static_cast<uint8_t>(p - 1), g.at(i, cc)));
        }
        if (i == r) break;
    }
}

CosetWeight min_coset_weight(const GroupCode& stabilizer, std::size_t max_total_symbols) {
    if (!is_self_orthogonal(stabilizer))
        throw std::invalid_argument("min_coset_weight: code is not self-orthogonal");
    if (2 * stabilizer.n() > max_total_symbols)
        throw std::runtime_error("min_coset_weight: brute-force bound exceeded");

    GroupCode d = dual(stabilizer);
    bool sd = (d.rank() == stabilizer.rank());
    std::size_t best = SIZE_MAX;
    for_each_codeword(d, [&](const SympVector& t) {
        std::size_t w = symp_weight(t);
        if (w == 0) return;
        if (sd) {
            best = std::min(best, w);
        } else if (!stabilizer.contains(t)) {
            best = std::min(best, w);
        }
    });
    if (best == SIZE_MAX)
        throw std::runtime_error("min_coset_weight: dual code is trivial");
    return {best, sd};
}

GroupCode css(const FMatrix& b1, const FMatrix& b2) {
    if (b1.field().p() != 2 || b2.field().p() != 2)
        throw std::invalid_argument("css: binary codes required");
    if (b1.cols() != b2.cols())
        throw std::invalid_argument("css: component codes must have equal length");
    std::size_t n = b1.cols();
    FMatrix g1 = canonical_row_space(b1);
    FMatrix g2 = canonical_row_space(b2);
    for (std::size_t i = 0; i < g1.rows(); ++i)
        for (std::size_t j = 0; j < g2.rows(); ++j) {
            unsigned dot = 0;
            for (std::size_t c = 0; c < n; ++c) dot ^= g1.at(i, c) & g2.at(j, c);
            if (dot)
                throw std::invalid_argument(
                    "css: generators are not cross-orthogonal (B1 row " + std::to_string(i + 1) +
                    " . B2 row " + std::to_string(j + 1) + " = 1)");
        }
    PrimeField f(2);
    FMatrix g(f, g1.rows() + g2.rows(), 2 * n);
    for (std::size_t r = 0; r < g1.rows(); ++r)
        for (std::size_t c = 0; c < n; ++c) g.set(r, c, g1.at(r, c));
    for (std::size_t r = 0; r < g2.rows(); ++r)
        for (std::size_t c = 0; c < n; ++c) g.set(g1.rows() + r, n + c, g2.at(r, c));
    return GroupCode(f, n, g);
}

Gf4Word::Gf4Word(std::vector<uint8_t> symbols) : syms_(std::move(symbols)) {
    for (uint8_t s : syms_)
        if (s > 3) throw std::invalid_argument("Gf4Word: symbol out of range");
}

Gf4Word Gf4Word::operator+(const Gf4Word& o) const {
    if (n() != o.n()) throw std::invalid_argument("Gf4Word: length mismatch");
    std::vector<uint8_t> s(n());
    for (std::size_t i = 0; i < n(); ++i) s[i] = gf4::add(syms_[i], o.syms_[i]);
    return Gf4Word(std::move(s));
}

Gf4Word Gf4Word::scaled(uint8_t sc) const {
    std::vector<uint8_t> s(n());
    for (std::size_t i = 0; i < n(); ++i) s[i] = gf4::mul(syms_[i], sc);
    return Gf4Word(std::move(s));
}

std::string Gf4Word::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < n(); ++i) {
        if (i) out += ' ';
        out += gf4::token(syms_[i]);
    }
    return out;
}

Gf4Word gf4_of(const SympVector& t) {
    if (t.field().p() != 2)
        throw std::invalid_argument("gf4_of: requires p = 2");
    std::vector<uint8_t> s(t.n());
    for (std::size_t i = 0; i < t.n(); ++i) {
        uint8_t v = gf4::ZERO;
        if (t.x(i)) v = gf4::add(v, gf4::W);
        if (t.z(i)) v = gf4::add(v, gf4::W2);
        s[i] = v;
    }
    return Gf4Word(std::move(s));
}

SympVector symp_of(const Gf4Word& w) {
    PrimeField f(2);
    std::vector<uint8_t> x(w.n()), z(w.n());
    for (std::size_t i = 0; i < w.n(); ++i) {
        switch (w.at(i)) {
            case gf4::ZERO: break;
            case gf4::W: x[i] = 1; break;
            case gf4::W2: z[i] = 1; break;
            case gf4::ONE: x[i] = 1; z[i] = 1; break;
        }
    }
    return SympVector(f, std::move(x), std::move(z));
}

uint8_t trace_hermitian_inner(const Gf4Word& a, const Gf4Word& b) {
    if (a.n() != b.n())
        throw std::invalid_argument("trace_hermitian_inner: length mismatch");
    uint8_t acc = gf4::ZERO;
    for (std::size_t i = 0; i < a.n(); ++i)
        acc = gf4::add(acc, gf4::mul(a.at(i), gf4::conj(b.at(i))));
    return gf4::trace(acc);
}

bool is_gf4_linear(const GroupCode& c) {
    if (c.field().p() != 2)
        throw std::invalid_argument("is_gf4_linear: requires p = 2");
    if (c.rank() % 2 != 0) return false;  // |C| must be a power of 4
    for (std::size_t i = 0; i < c.rank(); ++i) {
        Gf4Word w = gf4_of(c.generator(i));
        if (!c.contains(symp_of(w.scaled(gf4::W)))) return false;
    }
    return true;
}

} // namespace sfg
