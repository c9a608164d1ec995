#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphonlab {

// Thrown when an exact enumeration or refinement would exceed its configured cap.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Centralized tolerances. All exact-recomputation checks use `recompute`,
// chain/triangle style inequalities use `chain_slack`.
struct Tolerances {
    double recompute = 1e-12;
    double chain_slack = 1e-9;
    double commutativity = 1e-12;
    double reconstruction = 1e-10;
    double mass_sum = 1e-12;
    double mass_equal = 1e-12;
};

inline Tolerances tol_profile(const std::string& name) {
    if (name == "default" || name.empty()) return Tolerances{};
    if (name == "strict") {
        Tolerances t;
        t.chain_slack = 1e-11;
        t.reconstruction = 1e-12;
        return t;
    }
    throw std::invalid_argument("unknown tolerance profile: " + name);
}

// Dense row-major matrix of doubles. Small and owning; all the sizes in this
// library are desk scale, so no external linear algebra dependency is needed.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0) : rows(r), cols(c), data(static_cast<size_t>(r) * c, fill) {}

    double& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    const double* row(int i) const { return data.data() + static_cast<size_t>(i) * cols; }
    double* row(int i) { return data.data() + static_cast<size_t>(i) * cols; }

    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }

    static Matrix from_rows(const std::vector<std::vector<double>>& rws) {
        if (rws.empty()) return Matrix{};
        Matrix m(static_cast<int>(rws.size()), static_cast<int>(rws[0].size()));
        for (int i = 0; i < m.rows; ++i) {
            if (static_cast<int>(rws[i].size()) != m.cols)
                throw std::invalid_argument("ragged rows in matrix literal");
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = rws[i][j];
        }
        return m;
    }
};

inline Matrix operator-(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i] - b.data[i];
    return r;
}

inline double max_abs(const Matrix& m) {
    double v = 0.0;
    for (double x : m.data) v = std::max(v, std::abs(x));
    return v;
}

// Counter-based 64-bit generator (SplitMix64). Every consumer takes an
// explicit seed; derived streams use derive_seed so that parallel trials and
// restarts are order independent.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [0, n).
    uint64_t next_below(uint64_t n) { return next_u64() % n; }

    bool next_bernoulli(double p) { return next_double() < p; }

  private:
    uint64_t state_;
};

inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    // xor-then-mix keeps streams independent for consecutive indices.
    SplitMix64 g(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
    return g.next_u64();
}

inline int64_t checked_lcm(int64_t a, int64_t b) {
    int64_t g = a, h = b;
    while (h != 0) {
        int64_t t = g % h;
        g = h;
        h = t;
    }
    return a / g * b;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace graphonlab
