#include "graphonlab/core.hpp"

#include <cmath>
#include <numeric>

namespace graphonlab {

Partition Partition::uniform(int n) {
    if (n < 1) throw std::invalid_argument("partition needs at least one part");
    Partition p;
    p.masses.assign(static_cast<size_t>(n), 1.0 / n);
    p.equipartition = true;
    return p;
}

Partition Partition::general(std::vector<double> masses) {
    if (masses.empty()) throw std::invalid_argument("partition needs at least one part");
    Partition p;
    p.masses = std::move(masses);
    double mn = kInf, mx = -kInf;
    for (double m : p.masses) {
        mn = std::min(mn, m);
        mx = std::max(mx, m);
    }
    p.equipartition = (mx - mn) <= 1e-12;
    return p;
}

std::string kernel_class_name(KernelClass c) {
    switch (c) {
        case KernelClass::Graphon: return "graphon";
        case KernelClass::DirectedGraphon: return "directed_graphon";
        case KernelClass::SymmetricKernel: return "symmetric_kernel";
        case KernelClass::GeneralKernel: return "general_kernel";
    }
    throw std::logic_error("bad kernel class");
}

KernelClass kernel_class_from_name(const std::string& name) {
    if (name == "graphon") return KernelClass::Graphon;
    if (name == "directed_graphon") return KernelClass::DirectedGraphon;
    if (name == "symmetric_kernel") return KernelClass::SymmetricKernel;
    if (name == "general_kernel") return KernelClass::GeneralKernel;
    throw std::invalid_argument("unknown kernel class: " + name);
}

bool class_requires_symmetry(KernelClass c) {
    return c == KernelClass::Graphon || c == KernelClass::SymmetricKernel;
}

double class_value_min(KernelClass c) {
    return (c == KernelClass::Graphon || c == KernelClass::DirectedGraphon) ? 0.0 : -1.0;
}

KernelClass derive_class(bool directed, WeightRange range) {
    if (range == WeightRange::ZeroOne)
        return directed ? KernelClass::DirectedGraphon : KernelClass::Graphon;
    return directed ? KernelClass::GeneralKernel : KernelClass::SymmetricKernel;
}

namespace {

std::string idx2(const char* name, int i, int j) {
    return std::string(name) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

void check_partition(const Partition& p, const Tolerances& tol, std::vector<Violation>& out) {
    double sum = 0.0;
    for (int i = 0; i < p.parts(); ++i) {
        if (!(p.masses[i] > 0.0))
            out.push_back({"positive mass", "masses[" + std::to_string(i) + "]"});
        sum += p.masses[i];
    }
    if (std::abs(sum - 1.0) > tol.mass_sum) out.push_back({"mass sum", "masses"});
    double mn = kInf, mx = -kInf;
    for (double m : p.masses) {
        mn = std::min(mn, m);
        mx = std::max(mx, m);
    }
    bool equal = (mx - mn) <= tol.mass_equal;
    if (p.equipartition != equal) out.push_back({"equipartition flag", "partition"});
}

void check_values(const Matrix& m, const char* name, double lo, double hi,
                  std::vector<Violation>& out) {
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            double v = m.at(i, j);
            if (!std::isfinite(v) || v < lo || v > hi)
                out.push_back({"value range", idx2(name, i, j)});
        }
}

void check_symmetry(const Matrix& m, const char* name, std::vector<Violation>& out) {
    for (int i = 0; i < m.rows; ++i)
        for (int j = i + 1; j < m.cols; ++j)
            if (m.at(i, j) != m.at(j, i)) out.push_back({"symmetry", idx2(name, i, j)});
}

void check_signal_radius(const Matrix& sig, double r, std::vector<Violation>& out) {
    for (int i = 0; i < sig.rows; ++i)
        for (int j = 0; j < sig.cols; ++j) {
            double v = sig.at(i, j);
            if (!std::isfinite(v) || std::abs(v) > r)
                out.push_back({"signal radius", idx2("signal", i, j)});
        }
}

}  // namespace

std::vector<Violation> validate(const StepKernelSignal& x, const Tolerances& tol) {
    std::vector<Violation> out;
    if (x.parts() < 1) out.push_back({"parts >= 1", "partition"});
    if (x.channels() < 1) out.push_back({"channels >= 1", "signal"});
    check_partition(x.partition, tol, out);
    if (x.kernel.rows != x.parts() || x.kernel.cols != x.parts())
        out.push_back({"kernel shape", "kernel"});
    if (x.signal.rows != x.parts()) out.push_back({"signal shape", "signal"});
    if (!(x.signal_radius > 0.0)) out.push_back({"signal radius positive", "r"});
    if (!out.empty() && (x.kernel.rows != x.parts() || x.signal.rows != x.parts()))
        return out;  // shape errors make index checks meaningless
    check_values(x.kernel, "kernel", class_value_min(x.kclass), 1.0, out);
    if (class_requires_symmetry(x.kclass)) check_symmetry(x.kernel, "kernel", out);
    check_signal_radius(x.signal, x.signal_radius, out);
    return out;
}

std::vector<Violation> validate(const GraphSignal& g, const Tolerances& tol) {
    (void)tol;
    std::vector<Violation> out;
    if (g.nodes() < 1) out.push_back({"nodes >= 1", "adjacency"});
    if (g.channels() < 1) out.push_back({"channels >= 1", "features"});
    if (g.adjacency.rows != g.adjacency.cols) out.push_back({"adjacency shape", "adjacency"});
    if (g.features.rows != g.nodes()) out.push_back({"features shape", "features"});
    if (!(g.signal_radius > 0.0)) out.push_back({"signal radius positive", "r"});
    if (g.adjacency.rows != g.adjacency.cols || g.features.rows != g.nodes()) return out;
    double lo = (g.weight_range == WeightRange::ZeroOne) ? 0.0 : -1.0;
    check_values(g.adjacency, "adjacency", lo, 1.0, out);
    if (!g.directed) check_symmetry(g.adjacency, "adjacency", out);
    check_signal_radius(g.features, g.signal_radius, out);
    return out;
}

namespace {
[[noreturn]] void throw_violations(const std::vector<Violation>& v) {
    std::string msg = "invalid object:";
    for (const auto& x : v) msg += " [" + x.invariant + " @ " + x.where + "]";
    throw std::invalid_argument(msg);
}
}  // namespace

void require_valid(const StepKernelSignal& x, const Tolerances& tol) {
    auto v = validate(x, tol);
    if (!v.empty()) throw_violations(v);
}

void require_valid(const GraphSignal& g, const Tolerances& tol) {
    auto v = validate(g, tol);
    if (!v.empty()) throw_violations(v);
}

StepKernelSignal induce(const GraphSignal& g) {
    require_valid(g);
    StepKernelSignal x;
    x.partition = Partition::uniform(g.nodes());
    x.kernel = g.adjacency;
    x.signal = g.features;
    x.kclass = derive_class(g.directed, g.weight_range);
    x.signal_radius = g.signal_radius;
    return x;
}

StepKernelSignal refine_equipartition(const StepKernelSignal& x, int64_t m) {
    if (!x.partition.equipartition)
        throw std::invalid_argument("refine requires an equipartition");
    int n = x.parts();
    if (m % n != 0) throw std::invalid_argument("refinement count must be a multiple of parts");
    if (m == n) return x;
    int mi = static_cast<int>(m);
    StepKernelSignal out;
    out.partition = Partition::uniform(mi);
    out.kclass = x.kclass;
    out.signal_radius = x.signal_radius;
    out.kernel = Matrix(mi, mi);
    out.signal = Matrix(mi, x.channels());
    int64_t q = m / n;
    for (int i = 0; i < mi; ++i) {
        int si = static_cast<int>(i / q);
        for (int j = 0; j < mi; ++j) out.kernel.at(i, j) = x.kernel.at(si, static_cast<int>(j / q));
        for (int c = 0; c < x.channels(); ++c) out.signal.at(i, c) = x.signal.at(si, c);
    }
    return out;
}

std::pair<StepKernelSignal, StepKernelSignal> refine_to_common(const StepKernelSignal& a,
                                                               const StepKernelSignal& b,
                                                               int64_t lcm_cap) {
    if (!a.partition.equipartition || !b.partition.equipartition)
        throw std::invalid_argument("refine_to_common requires equipartitions");
    int64_t l = checked_lcm(a.parts(), b.parts());
    if (l > lcm_cap)
        throw CapExceeded("common refinement needs " + std::to_string(l) + " parts, cap is " +
                          std::to_string(lcm_cap));
    return {refine_equipartition(a, l), refine_equipartition(b, l)};
}

}  // namespace graphonlab
