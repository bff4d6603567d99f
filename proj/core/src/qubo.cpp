#include "stackfold/qubo.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stackfold/errors.hpp"

namespace stackfold {

// ---- bits -------------------------------------------------------------------

std::string to_string(std::span<const std::uint8_t> bits) {
    std::string out(bits.size(), '0');
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k]) out[k] = '1';
    }
    return out;
}

Bits bits_from_string(std::string_view text) {
    Bits out;
    out.reserve(text.size());
    for (std::size_t k = 0; k < text.size(); ++k) {
        if (text[k] != '0' && text[k] != '1') {
            throw ParseError("bitstring has invalid character at position " + std::to_string(k + 1));
        }
        out.push_back(text[k] == '1');
    }
    return out;
}

Bits bits_from_index(std::uint64_t index, std::size_t n) {
    Bits out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = (index >> (n - 1 - k)) & 1U;
    return out;
}

std::uint64_t index_from_bits(std::span<const std::uint8_t> bits) {
    std::uint64_t index = 0;
    for (std::uint8_t b : bits) index = (index << 1) | (b ? 1U : 0U);
    return index;
}

// ---- program ----------------------------------------------------------------

namespace {

void check_length(std::size_t expected, std::size_t got) {
    if (expected != got) {
        throw std::invalid_argument("bitstring length " + std::to_string(got) + " != " +
                                    std::to_string(expected) + " variables");
    }
}

IndexPair ordered(std::size_t a, std::size_t b) { return a < b ? IndexPair{a, b} : IndexPair{b, a}; }

double quadratic_value(const QuadraticTerms& terms, std::span<const std::uint8_t> bits) {
    double sum = 0.0;
    for (const auto& [key, coef] : terms) {
        if (bits[key.first] && bits[key.second]) sum += coef;
    }
    return sum;
}

}  // namespace

double QuadraticProgram::objective(std::span<const std::uint8_t> bits) const {
    check_length(num_vars, bits.size());
    double sum = constant;
    for (std::size_t a = 0; a < num_vars; ++a) {
        if (bits[a]) sum += linear[a];
    }
    return sum + quadratic_value(quadratic, bits);
}

std::size_t QuadraticProgram::violations(std::span<const std::uint8_t> bits) const {
    check_length(num_vars, bits.size());
    std::size_t count = 0;
    for (const auto& [a, b] : constraints) {
        if (bits[a] && bits[b]) ++count;
    }
    return count;
}

QuadraticProgram build_program(const QuartetModel& model, const StackTable& table,
                               const ObjectiveWeights& weights, UaTermMode ua_mode) {
    const std::size_t n = model.size();
    QuadraticProgram qp;
    qp.num_vars = n;
    qp.linear.assign(n, 0.0);

    for (std::size_t a = 0; a < n; ++a) {
        qp.linear[a] = quartet_energy(table, model.sequence(), model.quartets()[a]);
    }

    // Both orderings of a stacking pair appear in the double sum.
    if (weights.reward != 0.0) {
        for (const auto& key : model.stack_pairs()) qp.quadratic[key] += 2.0 * weights.reward;
    }

    const auto& ua = model.ua_ends();
    const double p = weights.ua_penalty;
    if (p != 0.0 && !ua.empty()) {
        if (ua_mode == UaTermMode::linear) {
            for (std::size_t j : ua) qp.linear[j] += p;
        } else {
            std::vector<std::uint8_t> in_ua(n, 0);
            for (std::size_t j : ua) in_ua[j] = 1;
            for (std::size_t i = 0; i < n; ++i) {
                // x_i (1 - x_i) vanishes for binary x_i.
                qp.linear[i] += p * static_cast<double>(ua.size() - in_ua[i]);
                for (std::size_t j : ua) {
                    if (j != i) qp.quadratic[ordered(i, j)] -= p;
                }
            }
        }
    }

    for (auto it = qp.quadratic.begin(); it != qp.quadratic.end();) {
        it = it->second == 0.0 ? qp.quadratic.erase(it) : std::next(it);
    }
    qp.constraints = model.conflicts();
    return qp;
}

double default_penalty(const QuadraticProgram& qp) {
    double t = 1.0;
    for (double l : qp.linear) t += std::abs(l);
    for (const auto& [key, coef] : qp.quadratic) t += std::abs(coef);
    return t;
}

Qubo to_qubo(const QuadraticProgram& qp, double penalty) {
    if (!(penalty > 0.0)) throw std::invalid_argument("constraint penalty must be positive");
    Qubo q{qp.num_vars, qp.linear, qp.quadratic, qp.constant};
    for (const auto& key : qp.constraints) q.quadratic[ordered(key.first, key.second)] += penalty;
    return q;
}

Qubo compile_qubo(const QuartetModel& model, const StackTable& table,
                  const ObjectiveWeights& weights, UaTermMode ua_mode) {
    QuadraticProgram qp = build_program(model, table, weights, ua_mode);
    const double t = weights.constraint_penalty.value_or(default_penalty(qp));
    return to_qubo(qp, t);
}

IsingHamiltonian to_ising(const Qubo& q) {
    IsingHamiltonian ising;
    ising.num_spins = q.num_vars;
    ising.h.assign(q.num_vars, 0.0);
    ising.offset = q.constant;
    for (std::size_t a = 0; a < q.num_vars; ++a) {
        ising.offset += q.linear[a] / 2.0;
        ising.h[a] -= q.linear[a] / 2.0;
    }
    for (const auto& [key, coef] : q.quadratic) {
        const double quarter = coef / 4.0;
        ising.offset += quarter;
        ising.h[key.first] -= quarter;
        ising.h[key.second] -= quarter;
        ising.J[key] += quarter;
    }
    return ising;
}

double IsingHamiltonian::energy(std::span<const int> spins) const {
    check_length(num_spins, spins.size());
    double sum = offset;
    for (std::size_t a = 0; a < num_spins; ++a) sum += h[a] * spins[a];
    for (const auto& [key, coef] : J) sum += coef * spins[key.first] * spins[key.second];
    return sum;
}

double evaluate(const Qubo& q, std::span<const std::uint8_t> bits) {
    check_length(q.num_vars, bits.size());
    double sum = q.constant;
    for (std::size_t a = 0; a < q.num_vars; ++a) {
        if (bits[a]) sum += q.linear[a];
    }
    return sum + quadratic_value(q.quadratic, bits);
}

// ---- dense ------------------------------------------------------------------

DenseQubo::DenseQubo(const Qubo& q)
    : n_(q.num_vars), constant_(q.constant), linear_(q.linear), matrix_(q.num_vars * q.num_vars, 0.0) {
    for (const auto& [key, coef] : q.quadratic) {
        matrix_[key.first * n_ + key.second] += coef;
        matrix_[key.second * n_ + key.first] += coef;
    }
}

double DenseQubo::energy(std::span<const std::uint8_t> bits) const {
    check_length(n_, bits.size());
    double sum = constant_;
    for (std::size_t a = 0; a < n_; ++a) {
        if (!bits[a]) continue;
        sum += linear_[a];
        const double* row = &matrix_[a * n_];
        for (std::size_t b = a + 1; b < n_; ++b) {
            if (bits[b]) sum += row[b];
        }
    }
    return sum;
}

double DenseQubo::energy_of_index(std::uint64_t index) const {
    double sum = constant_;
    for (std::size_t a = 0; a < n_; ++a) {
        if (!((index >> (n_ - 1 - a)) & 1U)) continue;
        sum += linear_[a];
        const double* row = &matrix_[a * n_];
        for (std::size_t b = a + 1; b < n_; ++b) {
            if ((index >> (n_ - 1 - b)) & 1U) sum += row[b];
        }
    }
    return sum;
}

double DenseQubo::flip_delta(std::span<const std::uint8_t> bits, std::size_t a) const {
    double field = linear_[a];
    const double* row = &matrix_[a * n_];
    for (std::size_t b = 0; b < n_; ++b) {
        if (bits[b]) field += row[b];
    }
    return bits[a] ? -field : field;
}

// ---- text format ------------------------------------------------------------

void write_qubo(std::ostream& out, const Qubo& q) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", q.constant);
    out << "qubo " << q.num_vars << ' ' << buf << '\n';
    for (std::size_t a = 0; a < q.num_vars; ++a) {
        if (q.linear[a] == 0.0) continue;
        std::snprintf(buf, sizeof buf, "%.17g", q.linear[a]);
        out << "l " << a << ' ' << buf << '\n';
    }
    for (const auto& [key, coef] : q.quadratic) {
        std::snprintf(buf, sizeof buf, "%.17g", coef);
        out << "q " << key.first << ' ' << key.second << ' ' << buf << '\n';
    }
}

Qubo read_qubo(std::istream& in) {
    Qubo q;
    bool have_header = false;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw ParseError("qubo line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag)) continue;
        if (tag == "qubo") {
            if (have_header) fail("duplicate header");
            if (!(fields >> q.num_vars >> q.constant)) fail("malformed header");
            q.linear.assign(q.num_vars, 0.0);
            have_header = true;
        } else if (!have_header) {
            fail("term before 'qubo' header");
        } else if (tag == "l") {
            std::size_t a = 0;
            double coef = 0.0;
            if (!(fields >> a >> coef)) fail("malformed linear term");
            if (a >= q.num_vars) fail("index out of range");
            q.linear[a] += coef;
        } else if (tag == "q") {
            std::size_t a = 0, b = 0;
            double coef = 0.0;
            if (!(fields >> a >> b >> coef)) fail("malformed quadratic term");
            if (a >= q.num_vars || b >= q.num_vars) fail("index out of range");
            if (a == b) fail("quadratic term on a single variable");
            q.quadratic[ordered(a, b)] += coef;
        } else {
            fail("unknown record '" + tag + "'");
        }
        std::string extra;
        if (fields >> extra) fail("trailing field '" + extra + "'");
    }
    if (!have_header) throw ParseError("qubo: missing header");
    return q;
}

Qubo read_qubo(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_qubo(in);
}

}  // namespace stackfold
