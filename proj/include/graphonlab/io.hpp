#pragma once

#include <string>

#include <json.hpp>

#include "graphonlab/alignment.hpp"
#include "graphonlab/bounds.hpp"
#include "graphonlab/core.hpp"
#include "graphonlab/mpnn.hpp"
#include "graphonlab/regularity.hpp"
#include "graphonlab/sampling.hpp"

namespace graphonlab {
namespace io {

using nlohmann::json;

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

// {"class": ..., "masses": [...], "kernel": [[...]], "signal": [[...]], "r": ...}
json to_json(const StepKernelSignal& x);
StepKernelSignal step_from_json(const json& j);

// {"directed": ..., "range": "01"|"pm1", "adjacency": [[...]], "features": [[...]], "r": ...}
json to_json(const GraphSignal& g);
GraphSignal graph_from_json(const json& j);

json to_json(const mpnn::MpnnSpec& m);
mpnn::MpnnSpec mpnn_from_json(const json& j);

json to_json(const norms::CutNormResult& r);
json to_json(const alignment::AlignmentResult& r);
json to_json(const regularity::Decomposition& d);
json to_json(const sampling::SampleBatch& b);
json to_json(const bounds::BoundReport& r);

json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);
void save_text(const std::string& path, const std::string& text);

// Either a step object or a graph-signal; graphs are recognized by their
// "adjacency" field, steps by "kernel". CSV inputs (a directory holding
// adjacency.csv + features.csv, or a path to adjacency.csv) load as graphs.
struct AnyInput {
    bool is_graph = false;
    StepKernelSignal step;
    GraphSignal graph;

    StepKernelSignal as_step() const { return is_graph ? induce(graph) : step; }
};

struct CsvMeta {
    bool directed = false;
    WeightRange range = WeightRange::ZeroOne;
    double signal_radius = 1.0;
};

GraphSignal load_graph_csv(const std::string& adjacency_path, const std::string& features_path,
                           const CsvMeta& meta);

AnyInput load_input(const std::string& path, const CsvMeta& csv_meta = {});

// Fixed-format double for byte-stable CSV output.
std::string format_double(double v);

}  // namespace io
}  // namespace graphonlab
