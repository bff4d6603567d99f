#pragma once

// Independent reference implementations used only by tests. None of these
// call into the code paths they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stackfold/qubo.hpp"
#include "stackfold/rng.hpp"
#include "stackfold/structure.hpp"

namespace oracle {

inline bool pairs_with(char a, char b) {
    static const std::set<std::string> kValid = {"AU", "UA", "CG", "GC", "GU", "UG"};
    return kValid.count(std::string{a, b}) > 0;
}

/// All (i, j), 1-based, with (i, j) and (i+1, j-1) pairing and at least
/// `min_loop` bases strictly inside (i+1, j-1).
inline std::vector<std::pair<int, int>> quartets(const std::string& seq, int min_loop) {
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(seq.size());
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (j <= i) continue;
            const int inner_i = i + 1;
            const int inner_j = j - 1;
            if (inner_j <= inner_i) continue;
            if (inner_j - inner_i - 1 < min_loop) continue;
            if (pairs_with(seq[i - 1], seq[j - 1]) && pairs_with(seq[inner_i - 1], seq[inner_j - 1])) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

/// Two pair sets are compatible when no position has two partners and no
/// two pairs interleave.
inline bool quartet_sets_conflict(std::pair<int, int> q1, std::pair<int, int> q2) {
    std::vector<std::pair<int, int>> pairs = {
        q1, {q1.first + 1, q1.second - 1}, q2, {q2.first + 1, q2.second - 1}};
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::map<int, int> partner;
    for (auto [a, b] : pairs) {
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
            auto it = partner.find(x);
            if (it != partner.end() && it->second != y) return true;
            partner[x] = y;
        }
    }
    for (auto [a, b] : pairs) {
        for (auto [c, d] : pairs) {
            auto inside = [&](int x) { return a < x && x < b; };
            const bool distinct = a != c && a != d && b != c && b != d;
            if (distinct && inside(c) != inside(d)) return true;
        }
    }
    return false;
}

/// Objective written exactly as the double sums: per-quartet energy, reward
/// over i and every stacking partner j of i, and p * x_i (1 - x_j) over i and
/// every UA-end quartet j.
inline double literal_objective(const std::vector<double>& energies,
                                const std::vector<std::vector<std::size_t>>& stacks,
                                const std::vector<std::size_t>& ua, double r, double p,
                                const std::vector<std::uint8_t>& x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += energies[i] * x[i];
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j : stacks[i]) sum += r * x[i] * x[j];
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j : ua) sum += p * x[i] * (1 - x[j]);
    }
    return sum;
}

/// Upper-triangular matrix evaluation x^T U x + constant.
inline double qubo_value(const stackfold::Qubo& q, const std::vector<std::uint8_t>& x) {
    const std::size_t n = q.num_vars;
    std::vector<double> upper(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) upper[a * n + a] = q.linear[a];
    for (const auto& [key, coef] : q.quadratic) {
        upper[std::min(key.first, key.second) * n + std::max(key.first, key.second)] += coef;
    }
    double sum = q.constant;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) sum += upper[a * n + b] * x[a] * x[b];
    }
    return sum;
}

inline std::vector<std::uint8_t> bits_of(std::uint64_t index, std::size_t n) {
    std::vector<std::uint8_t> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = (index >> (n - 1 - k)) & 1U;
    return x;
}

struct ConstrainedOptimum {
    double energy = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> bits;
};

/// Minimum of the program objective over feasible assignments only.
inline ConstrainedOptimum constrained_minimum(const stackfold::QuadraticProgram& qp) {
    ConstrainedOptimum best;
    const std::size_t n = qp.num_vars;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
        auto x = bits_of(idx, n);
        bool ok = true;
        for (auto [a, b] : qp.constraints) ok = ok && !(x[a] && x[b]);
        if (!ok) continue;
        double v = qp.constant;
        for (std::size_t a = 0; a < n; ++a) v += qp.linear[a] * x[a];
        for (const auto& [key, coef] : qp.quadratic) v += coef * x[key.first] * x[key.second];
        if (v < best.energy) {
            best.energy = v;
            best.bits = x;
        }
    }
    return best;
}

// ---- dense circuit oracle ---------------------------------------------------

using Matrix = std::vector<std::vector<std::complex<double>>>;

inline Matrix identity(std::size_t dim) {
    Matrix m(dim, std::vector<std::complex<double>>(dim, 0.0));
    for (std::size_t k = 0; k < dim; ++k) m[k][k] = 1.0;
    return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t ra = a.size(), rb = b.size();
    Matrix out(ra * rb, std::vector<std::complex<double>>(ra * rb, 0.0));
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ra; ++j)
            for (std::size_t k = 0; k < rb; ++k)
                for (std::size_t l = 0; l < rb; ++l) out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
    return out;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    Matrix out(n, std::vector<std::complex<double>>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

/// Ry on `qubit` as a full 2^n matrix, qubit 0 as the leftmost tensor factor.
inline Matrix ry_full(std::size_t n, std::size_t qubit, double theta) {
    Matrix ry = {{std::cos(theta / 2), -std::sin(theta / 2)}, {std::sin(theta / 2), std::cos(theta / 2)}};
    Matrix out = {{1.0}};
    for (std::size_t q = 0; q < n; ++q) out = kron(out, q == qubit ? ry : identity(2));
    return out;
}

inline Matrix cz_full(std::size_t n, std::size_t a, std::size_t b) {
    const Matrix p0 = {{1.0, 0.0}, {0.0, 0.0}};
    const Matrix p1 = {{0.0, 0.0}, {0.0, 1.0}};
    const Matrix z = {{1.0, 0.0}, {0.0, -1.0}};
    // CZ = |0><0|_a (x) I + |1><1|_a (x) Z_b
    Matrix t0 = {{1.0}}, t1 = {{1.0}};
    for (std::size_t q = 0; q < n; ++q) {
        t0 = kron(t0, q == a ? p0 : identity(2));
        t1 = kron(t1, q == a ? p1 : (q == b ? z : identity(2)));
    }
    for (std::size_t i = 0; i < t0.size(); ++i)
        for (std::size_t j = 0; j < t0.size(); ++j) t0[i][j] += t1[i][j];
    return t0;
}

/// Statevector of the two-local circuit by multiplying full gate matrices.
inline std::vector<std::complex<double>> two_local_state(std::size_t n, std::size_t layers,
                                                         const std::vector<double>& theta) {
    const std::size_t dim = std::size_t{1} << n;
    Matrix u = identity(dim);
    auto apply = [&](const Matrix& g) { u = matmul(g, u); };
    for (std::size_t rep = 0; rep <= layers; ++rep) {
        for (std::size_t q = 0; q < n; ++q) apply(ry_full(n, q, theta[rep * n + q]));
        if (rep == layers) break;
        for (std::size_t i = 0; i + 1 < n; i += 2) apply(cz_full(n, i, i + 1));
        for (std::size_t i = 1; i + 1 < n; i += 2) apply(cz_full(n, i, i + 1));
    }
    std::vector<std::complex<double>> psi(dim);
    for (std::size_t k = 0; k < dim; ++k) psi[k] = u[k][0];
    return psi;
}

// ---- dot-bracket ------------------------------------------------------------

/// Parses '()', '[]', '{}' tiers back into 1-based pairs.
inline std::vector<stackfold::Pair> parse_dot_bracket(const std::string& db) {
    const std::string open = "([{", close = ")]}";
    std::vector<std::vector<int>> stacks(3);
    std::vector<stackfold::Pair> pairs;
    for (std::size_t k = 0; k < db.size(); ++k) {
        const int pos = static_cast<int>(k) + 1;
        if (auto o = open.find(db[k]); o != std::string::npos) {
            stacks[o].push_back(pos);
        } else if (auto c = close.find(db[k]); c != std::string::npos) {
            if (stacks[c].empty()) throw std::runtime_error("unbalanced dot-bracket");
            pairs.push_back({stacks[c].back(), pos});
            stacks[c].pop_back();
        } else if (db[k] != '.') {
            throw std::runtime_error("bad dot-bracket character");
        }
    }
    for (const auto& s : stacks)
        if (!s.empty()) throw std::runtime_error("unbalanced dot-bracket");
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

// ---- random instances -------------------------------------------------------

/// Random program: coefficients in [-5, 5), about a third of pairs coupled
/// and a fifth constrained.
inline stackfold::QuadraticProgram random_program(std::size_t n, stackfold::Rng& rng) {
    stackfold::QuadraticProgram qp;
    qp.num_vars = n;
    qp.constant = rng.uniform01() * 4 - 2;
    qp.linear.resize(n);
    for (auto& l : qp.linear) l = rng.uniform01() * 10 - 5;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (rng.uniform01() < 0.33) qp.quadratic[{a, b}] = rng.uniform01() * 10 - 5;
            if (rng.uniform01() < 0.2) qp.constraints.emplace_back(a, b);
        }
    }
    return qp;
}

inline stackfold::Qubo random_qubo(std::size_t n, stackfold::Rng& rng) {
    stackfold::Qubo q;
    q.num_vars = n;
    q.constant = rng.uniform01() * 4 - 2;
    q.linear.resize(n);
    for (auto& l : q.linear) l = rng.uniform01() * 10 - 5;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (rng.uniform01() < 0.4) q.quadratic[{a, b}] = rng.uniform01() * 10 - 5;
    return q;
}

}  // namespace oracle
