#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "refnet/centrality.hpp"
#include "refnet/detect.hpp"
#include "refnet/errors.hpp"
#include "refnet/graph.hpp"
#include "refnet/ingest.hpp"
#include "refnet/modularity.hpp"
#include "refnet/report.hpp"

namespace py = pybind11;

namespace {

using EdgeTuple = std::tuple<std::string, std::string, std::int64_t>;

std::vector<refnet::LabeledEdge> to_labeled(const std::vector<EdgeTuple>& edges) {
  std::vector<refnet::LabeledEdge> out;
  out.reserve(edges.size());
  for (const EdgeTuple& e : edges) {
    out.push_back({std::get<0>(e), std::get<1>(e), std::get<2>(e)});
  }
  return out;
}

refnet::Partition to_partition(const std::vector<std::int32_t>& assignment) {
  return refnet::Partition::from_assignment(assignment);
}

refnet::DegreeMode parse_mode(const std::string& mode) {
  if (mode == "in") return refnet::DegreeMode::In;
  if (mode == "out") return refnet::DegreeMode::Out;
  if (mode == "total") return refnet::DegreeMode::Total;
  throw refnet::ValidationError("unknown degree mode: " + mode);
}

refnet::SpScope parse_scope(const std::string& scope) {
  if (scope == "ego") return refnet::SpScope::Ego;
  if (scope == "global") return refnet::SpScope::Global;
  throw refnet::ValidationError("unknown sp scope: " + scope);
}

std::vector<std::vector<std::string>> label_groups(const refnet::Graph& g,
                                                   const refnet::Partition& p) {
  std::vector<std::vector<std::string>> out;
  for (const auto& group : p.groups()) {
    std::vector<std::string> labels;
    labels.reserve(group.size());
    for (std::int32_t node : group) labels.push_back(g.label(node));
    out.push_back(std::move(labels));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "community detection on clinical-trial referral networks";

  py::register_exception<refnet::ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<refnet::ContractError>(m, "ContractError", PyExc_RuntimeError);

  py::class_<refnet::Edge>(m, "Edge")
      .def_readonly("from_node", &refnet::Edge::from)
      .def_readonly("to_node", &refnet::Edge::to)
      .def_readonly("weight", &refnet::Edge::weight)
      .def("is_loop", &refnet::Edge::is_loop)
      .def("__repr__", [](const refnet::Edge& e) {
        return "Edge(" + std::to_string(e.from) + " -> " + std::to_string(e.to) +
               ", w=" + std::to_string(e.weight) + ")";
      });

  py::class_<refnet::Graph>(m, "Graph")
      .def_property_readonly("directed", &refnet::Graph::directed)
      .def_property_readonly("node_count", &refnet::Graph::node_count)
      .def_property_readonly("edge_count", &refnet::Graph::edge_count)
      .def_property_readonly("total_weight", &refnet::Graph::total_weight)
      .def_property_readonly("labels",
                             [](const refnet::Graph& g) { return g.node_labels(); })
      .def_property_readonly("edges", [](const refnet::Graph& g) { return g.edges(); })
      .def("label", &refnet::Graph::label, py::arg("node"))
      .def("find_node",
           [](const refnet::Graph& g, const std::string& label) { return g.find_node(label); },
           py::arg("label"))
      .def("__repr__", [](const refnet::Graph& g) {
        return std::string("Graph(") + (g.directed() ? "directed" : "undirected") +
               ", nodes=" + std::to_string(g.node_count()) +
               ", edges=" + std::to_string(g.edge_count()) + ")";
      });

  py::class_<refnet::Partition>(m, "Partition")
      .def_readonly("community", &refnet::Partition::community)
      .def_readonly("num_communities", &refnet::Partition::num_communities)
      .def_readonly("q", &refnet::Partition::q)
      .def("__repr__", [](const refnet::Partition& p) {
        return "Partition(num_communities=" + std::to_string(p.num_communities) + ")";
      });

  py::class_<refnet::DendrogramLevel>(m, "DendrogramLevel")
      .def_readonly("removed_edge", &refnet::DendrogramLevel::removed_edge)
      .def_readonly("partition", &refnet::DendrogramLevel::partition)
      .def_readonly("q", &refnet::DendrogramLevel::q);

  py::class_<refnet::RemovalStep>(m, "RemovalStep")
      .def_readonly("edge", &refnet::RemovalStep::edge)
      .def_readonly("anchor_node", &refnet::RemovalStep::anchor_node);

  py::class_<refnet::Dendrogram>(m, "Dendrogram")
      .def_readonly("levels", &refnet::Dendrogram::levels)
      .def_readonly("removals", &refnet::Dendrogram::removals)
      .def_readonly("best_index", &refnet::Dendrogram::best_index)
      .def_property_readonly("best", &refnet::Dendrogram::best);

  m.def(
      "build_graph",
      [](const std::vector<EdgeTuple>& edges, bool directed,
         const std::vector<std::string>& isolated_nodes) {
        return refnet::build_graph(to_labeled(edges), directed, isolated_nodes);
      },
      py::arg("edges"), py::arg("directed") = true,
      py::arg("isolated_nodes") = std::vector<std::string>());
  m.def("read_edge_csv", &refnet::read_edge_csv, py::arg("text"), py::arg("directed") = true);
  m.def("write_edge_csv", &refnet::write_edge_csv, py::arg("graph"));
  m.def("simplify", &refnet::simplify, py::arg("graph"));
  m.def("to_undirected", &refnet::to_undirected, py::arg("graph"));
  m.def(
      "weighted_degrees",
      [](const refnet::Graph& g, const std::string& mode) {
        return refnet::weighted_degrees(g, parse_mode(mode));
      },
      py::arg("graph"), py::arg("mode") = "total");
  m.def("connected_components", &refnet::connected_components, py::arg("graph"));

  m.def(
      "modularity",
      [](const refnet::Graph& g, const std::vector<std::int32_t>& assignment) {
        return refnet::modularity(g, to_partition(assignment));
      },
      py::arg("graph"), py::arg("assignment"));
  m.def(
      "edge_betweenness",
      [](const refnet::Graph& g) {
        std::vector<std::tuple<std::int32_t, std::int32_t, double>> out;
        for (const refnet::EdgeScore& s : refnet::edge_betweenness(g)) {
          out.emplace_back(s.from, s.to, s.score);
        }
        return out;
      },
      py::arg("graph"));
  m.def("degree_centrality", &refnet::degree_centrality, py::arg("graph"));

  m.def("girvan_newman", &refnet::girvan_newman, py::arg("graph"));
  m.def(
      "smith_pittman",
      [](const refnet::Graph& g, const std::string& scope) {
        return refnet::smith_pittman(g, parse_scope(scope));
      },
      py::arg("graph"), py::arg("scope") = "ego");
  m.def(
      "louvain",
      [](const refnet::Graph& g, std::uint64_t seed) { return refnet::louvain(g, seed); },
      py::arg("graph"), py::arg("seed") = 0);
  m.def(
      "run_all",
      [](const refnet::Graph& g, std::uint64_t seed) { return refnet::run_all(g, seed); },
      py::arg("graph"), py::arg("seed") = 0);
  m.def("community_labels", &label_groups, py::arg("graph"), py::arg("partition"),
        "Members of each community as node labels.");

  m.def(
      "parse_enrollments",
      [](const std::string& text) {
        std::vector<std::tuple<std::string, std::string, std::string, std::int64_t>> out;
        for (const refnet::EnrollmentRecord& r : refnet::parse_enrollments(text)) {
          out.emplace_back(r.subject_id, r.study_id, r.intervention, r.enrolled_at);
        }
        return out;
      },
      py::arg("csv_text"));
  m.def(
      "build_referral_edges",
      [](const std::vector<std::tuple<std::string, std::string, std::string, std::int64_t>>&
             records,
         const std::string& pairing) {
        std::vector<refnet::EnrollmentRecord> converted;
        converted.reserve(records.size());
        for (const auto& r : records) {
          converted.push_back({std::get<0>(r), std::get<1>(r), std::get<2>(r), std::get<3>(r)});
        }
        refnet::PairingRule rule;
        if (pairing == "consecutive") {
          rule = refnet::PairingRule::Consecutive;
        } else if (pairing == "all-ordered") {
          rule = refnet::PairingRule::AllOrdered;
        } else {
          throw refnet::ValidationError("unknown pairing rule: " + pairing);
        }
        std::vector<EdgeTuple> out;
        for (const refnet::LabeledEdge& e : refnet::build_referral_edges(converted, rule)) {
          out.emplace_back(e.from, e.to, e.weight);
        }
        return out;
      },
      py::arg("records"), py::arg("pairing") = "consecutive");
  m.def(
      "generate_synthetic_enrollments",
      [](std::uint64_t seed, const std::string& config_json) {
        refnet::SynthConfig cfg = refnet::SynthConfig::from_json(config_json);
        return refnet::write_enrollments_csv(refnet::generate_synthetic_enrollments(seed, cfg));
      },
      py::arg("seed"), py::arg("config_json"),
      "Generate a synthetic cohort and return it as enrollment CSV text.");

  m.def(
      "export_graph",
      [](const refnet::Graph& g, const std::optional<std::vector<std::int32_t>>& assignment,
         const std::string& format) {
        refnet::ExportFormat fmt = refnet::parse_export_format(format);
        if (assignment) {
          refnet::Partition p = to_partition(*assignment);
          return refnet::export_graph(g, &p, fmt);
        }
        return refnet::export_graph(g, nullptr, fmt);
      },
      py::arg("graph"), py::arg("assignment") = py::none(), py::arg("format") = "json");
  m.def("import_graph_json", &refnet::import_graph_json, py::arg("json_text"));
}
