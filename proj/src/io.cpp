#include "graphonlab/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace graphonlab {
namespace io {

json to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    std::vector<std::vector<double>> rows;
    for (const auto& r : j) rows.push_back(r.get<std::vector<double>>());
    return Matrix::from_rows(rows);
}

json to_json(const StepKernelSignal& x) {
    return json{{"class", kernel_class_name(x.kclass)},
                {"masses", x.partition.masses},
                {"kernel", to_json(x.kernel)},
                {"signal", to_json(x.signal)},
                {"r", x.signal_radius}};
}

StepKernelSignal step_from_json(const json& j) {
    StepKernelSignal x;
    x.kclass = kernel_class_from_name(j.at("class").get<std::string>());
    x.partition = Partition::general(j.at("masses").get<std::vector<double>>());
    x.kernel = matrix_from_json(j.at("kernel"));
    x.signal = matrix_from_json(j.at("signal"));
    x.signal_radius = j.at("r").get<double>();
    require_valid(x);
    return x;
}

json to_json(const GraphSignal& g) {
    return json{{"directed", g.directed},
                {"range", g.weight_range == WeightRange::ZeroOne ? "01" : "pm1"},
                {"adjacency", to_json(g.adjacency)},
                {"features", to_json(g.features)},
                {"r", g.signal_radius}};
}

GraphSignal graph_from_json(const json& j) {
    GraphSignal g;
    g.directed = j.at("directed").get<bool>();
    std::string range = j.at("range").get<std::string>();
    if (range == "01")
        g.weight_range = WeightRange::ZeroOne;
    else if (range == "pm1")
        g.weight_range = WeightRange::PlusMinusOne;
    else
        throw std::invalid_argument("unknown weight range: " + range);
    g.adjacency = matrix_from_json(j.at("adjacency"));
    g.features = matrix_from_json(j.at("features"));
    g.signal_radius = j.at("r").get<double>();
    require_valid(g);
    return g;
}

namespace {

json func_to_json(const mpnn::FuncSpec& f) {
    json chain = json::array();
    for (const auto& s : f.chain) {
        if (s.is_affine)
            chain.push_back(json{{"affine", json{{"matrix", to_json(s.matrix)},
                                                 {"bias", s.bias}}}});
        else
            chain.push_back(json{{"activation", mpnn::activation_name(s.act)}});
    }
    return json{{"input_dim", f.input_dim}, {"chain", chain}};
}

mpnn::FuncSpec func_from_json(const json& j) {
    mpnn::FuncSpec f;
    f.input_dim = j.at("input_dim").get<int>();
    for (const auto& s : j.at("chain")) {
        if (s.contains("affine")) {
            f.chain.push_back(mpnn::Stage::affine(
                matrix_from_json(s.at("affine").at("matrix")),
                s.at("affine").at("bias").get<std::vector<double>>()));
        } else {
            f.chain.push_back(mpnn::Stage::activation(
                mpnn::activation_from_name(s.at("activation").get<std::string>())));
        }
    }
    f.check();
    return f;
}

}  // namespace

json to_json(const mpnn::MpnnSpec& m) {
    json layers = json::array();
    for (const auto& layer : m.layers) {
        json pairs = json::array();
        for (const auto& p : layer.pairs)
            pairs.push_back(json{{"receiver", func_to_json(p.receiver)},
                                 {"transmitter", func_to_json(p.transmitter)}});
        layers.push_back(json{{"messages", pairs}, {"update", func_to_json(layer.update)}});
    }
    json out{{"layers", layers}};
    if (m.readout) out["readout"] = func_to_json(*m.readout);
    return out;
}

mpnn::MpnnSpec mpnn_from_json(const json& j) {
    mpnn::MpnnSpec m;
    for (const auto& layer : j.at("layers")) {
        mpnn::MpnnLayer l;
        for (const auto& p : layer.at("messages"))
            l.pairs.push_back({func_from_json(p.at("receiver")),
                               func_from_json(p.at("transmitter"))});
        l.update = func_from_json(layer.at("update"));
        m.layers.push_back(std::move(l));
    }
    if (j.contains("readout")) m.readout = func_from_json(j.at("readout"));
    m.check();
    return m;
}

json to_json(const norms::CutNormResult& r) {
    return json{{"value", r.value},
                {"witness_S", r.witness_S},
                {"witness_T", r.witness_T},
                {"exact", r.exact}};
}

json to_json(const alignment::AlignmentResult& r) {
    return json{{"distance", r.distance},
                {"permutation", r.permutation},
                {"refinement_parts", r.refinement_parts},
                {"exact", r.exact}};
}

json to_json(const regularity::Decomposition& d) {
    json terms = json::array();
    for (const auto& t : d.terms)
        terms.push_back(json{{"gamma", t.gamma}, {"S", t.S}, {"T", t.T}});
    return json{{"terms", terms},
                {"residual_cutnorm_estimate", d.residual_cutnorm_estimate},
                {"steps", d.steps},
                {"exact_witnesses", d.exact_witnesses}};
}

json to_json(const sampling::SampleBatch& b) {
    json lambdas = json::array();
    for (const auto& pts : b.lambdas) {
        json one = json::array();
        for (const auto& p : pts) one.push_back(json{{"part", p.part}, {"offset", p.offset}});
        lambdas.push_back(std::move(one));
    }
    json graphs = json::array();
    for (const auto& g : b.graphs) graphs.push_back(to_json(g));
    return json{{"seed", b.seed}, {"k", b.k}, {"lambdas", lambdas}, {"graphs", graphs}};
}

json to_json(const bounds::BoundReport& r) {
    json entries = json::object();
    for (const auto& e : r.entries) {
        json v{{"log2", e.log2}};
        v["value"] = std::isfinite(e.linear) ? json(e.linear) : json(nullptr);
        entries[e.name] = v;
    }
    return json{{"provenance", r.provenance}, {"entries", entries}, {"flags", r.flags}};
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json(const std::string& path, const json& j) { save_text(path, j.dump(2) + "\n"); }

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

namespace {

Matrix load_csv_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return Matrix::from_rows(rows);
}

}  // namespace

GraphSignal load_graph_csv(const std::string& adjacency_path, const std::string& features_path,
                           const CsvMeta& meta) {
    GraphSignal g;
    g.adjacency = load_csv_matrix(adjacency_path);
    g.features = load_csv_matrix(features_path);
    g.directed = meta.directed;
    g.weight_range = meta.range;
    g.signal_radius = meta.signal_radius;
    require_valid(g);
    return g;
}

AnyInput load_input(const std::string& path, const CsvMeta& csv_meta) {
    namespace fs = std::filesystem;
    AnyInput out;
    fs::path p(path);
    if (fs::is_directory(p) || p.filename() == "adjacency.csv") {
        fs::path adj = fs::is_directory(p) ? p / "adjacency.csv" : p;
        fs::path feat = adj.parent_path() / "features.csv";
        out.is_graph = true;
        out.graph = load_graph_csv(adj.string(), feat.string(), csv_meta);
        return out;
    }
    json j = load_json(path);
    if (j.contains("adjacency")) {
        out.is_graph = true;
        out.graph = graph_from_json(j);
    } else {
        out.step = step_from_json(j);
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace io
}  // namespace graphonlab
