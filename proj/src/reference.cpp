#include "graphonlab/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace graphonlab {
namespace reference {

CutNormValue cut_norm_exact(const Matrix& D, const std::vector<double>& masses) {
    int n = D.rows;
    if (n > 24) throw std::invalid_argument("reference cut norm is limited to n <= 24");
    uint32_t total = 1u << n;
    CutNormValue best;
    best.value = -1.0;
    for (uint32_t s = 0; s < total; ++s) {
        for (uint32_t t = 0; t < total; ++t) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                if (!((s >> i) & 1)) continue;
                for (int j = 0; j < n; ++j) {
                    if (!((t >> j) & 1)) continue;
                    acc += masses[i] * masses[j] * D.at(i, j);
                }
            }
            if (std::abs(acc) > best.value) {
                best.value = std::abs(acc);
                best.witness_S.clear();
                best.witness_T.clear();
                for (int i = 0; i < n; ++i)
                    if ((s >> i) & 1) best.witness_S.push_back(i);
                for (int j = 0; j < n; ++j)
                    if ((t >> j) & 1) best.witness_T.push_back(j);
            }
        }
    }
    return best;
}

double signal_cut_norm(const Matrix& F, const std::vector<double>& masses) {
    int n = F.rows, d = F.cols;
    if (n > 24) throw std::invalid_argument("reference signal cut norm is limited to n <= 24");
    uint32_t total = 1u << n;
    double best = 0.0;
    for (uint32_t s = 0; s < total; ++s) {
        double norm1 = 0.0;
        for (int c = 0; c < d; ++c) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                if ((s >> j) & 1) acc += masses[j] * F.at(j, c);
            norm1 += std::abs(acc);
        }
        best = std::max(best, norm1);
    }
    return best / d;
}

double cut_metric(const StepKernelSignal& a, const StepKernelSignal& b) {
    Matrix dk = a.kernel - b.kernel;
    Matrix ds = a.signal - b.signal;
    return cut_norm_exact(dk, a.partition.masses).value +
           signal_cut_norm(ds, a.partition.masses);
}

double cut_distance_exact(const StepKernelSignal& a, const StepKernelSignal& b) {
    int n = a.parts();
    std::vector<int> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    double best = kInf;
    do {
        StepKernelSignal bp = b;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) bp.kernel.at(i, j) = b.kernel.at(p[i], p[j]);
            for (int c = 0; c < b.channels(); ++c) bp.signal.at(i, c) = b.signal.at(p[i], c);
        }
        best = std::min(best, cut_metric(a, bp));
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

}  // namespace reference
}  // namespace graphonlab
