#pragma once

#include <cstdint>
#include <vector>

#include "graphonlab/core.hpp"

namespace graphonlab {
namespace norms {

struct CutNormParams {
    int exact_cap = 22;       // max parts for 2^n subset enumeration
    int sign_cap = 20;        // max channels for 2^d sign enumeration
    int restarts = 16;        // heuristic multistart count
    uint64_t seed = 0x5EEDBA5Eull;
    int max_iters = 64;       // alternating-maximization iteration cap
    bool allow_heuristic = true;
};

struct CutNormResult {
    double value = 0.0;
    std::vector<int> witness_S;  // part indices, sorted
    std::vector<int> witness_T;
    bool exact = false;
};

struct SignalCutNormResult {
    double value = 0.0;
    std::vector<int> witness_S;
    bool exact = false;
};

// Signed mass-weighted rectangle sum: sum_{i in S, j in T} mu_i mu_j D_ij.
// Canonical summation order; witness recomputation checks go through here.
double rectangle_sum(const Matrix& D, const std::vector<double>& masses,
                     const std::vector<int>& S, const std::vector<int>& T);

// Mass-weighted signal sum over S, per channel: sum_{j in S} mu_j F_j.
std::vector<double> signal_sum(const Matrix& F, const std::vector<double>& masses,
                               const std::vector<int>& S);

// Exact kernel cut norm by Gray-code enumeration of S; for each S the optimal
// T is read off column-sum signs. Throws CapExceeded above params.exact_cap.
CutNormResult cut_norm_kernel_exact(const Matrix& D, const std::vector<double>& masses,
                                    const CutNormParams& params = {});

// Seeded multistart alternating maximization. Always reports exact=false;
// its value is a feasible witness value, hence a lower bound on the true norm.
CutNormResult cut_norm_kernel_heuristic(const Matrix& D, const std::vector<double>& masses,
                                        const CutNormParams& params = {});

// Exact when n <= exact_cap, heuristic otherwise (if allowed).
CutNormResult cut_norm_kernel(const Matrix& D, const std::vector<double>& masses,
                              const CutNormParams& params = {});

// Signal cut norm (1/d) sup_S ||int_S f||_1. Prefers 2^d sign enumeration,
// falls back to 2^n subset enumeration, then to a heuristic.
SignalCutNormResult signal_cut_norm(const Matrix& F, const std::vector<double>& masses,
                                    const CutNormParams& params = {});

// Per-channel 1-D cut norms averaged over channels:
// (1/d) sum_i max(||f_i+||_1, ||f_i-||_1).
double product_cut_norm(const Matrix& F, const std::vector<double>& masses);

struct LpNorms {
    double kernel_l1 = 0.0;
    double kernel_l2 = 0.0;
    double kernel_linf = 0.0;
    double signal_l1 = 0.0;
    double signal_linf = 0.0;  // max over parts of the row ell-infinity norm
};

LpNorms lp_norms(const StepKernelSignal& x);

struct CutMetricResult {
    double value = 0.0;
    CutNormResult kernel;
    SignalCutNormResult signal;
    bool exact() const { return kernel.exact && signal.exact; }
};

// d_cut((W,f),(V,g)) = ||W-V||_cut + ||f-g||_cut on a common partition.
CutMetricResult cut_metric(const StepKernelSignal& a, const StepKernelSignal& b,
                           const CutNormParams& params = {});

}  // namespace norms
}  // namespace graphonlab
