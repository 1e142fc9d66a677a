#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "../src/csv.hpp"
#include "refnet/centrality.hpp"
#include "refnet/detect.hpp"
#include "refnet/errors.hpp"
#include "refnet/graph.hpp"
#include "refnet/ingest.hpp"
#include "refnet/modularity.hpp"
#include "refnet/report.hpp"

namespace {

using refnet::Graph;
using refnet::Partition;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw refnet::ValidationError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw refnet::ValidationError("cannot open file for writing: " + path);
  out << content;
  if (!out) throw refnet::ValidationError("failed to write file: " + path);
}

double round6(double q) {
  double r = std::round(q * 1e6) / 1e6;
  if (r == 0.0) r = 0.0;  // normalize -0
  return r;
}

std::string format_q(double q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", round6(q));
  return buf;
}

nlohmann::ordered_json communities_json(const Graph& g, const Partition& p) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  auto groups = p.groups();
  for (std::size_t c = 0; c < groups.size(); ++c) {
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (std::int32_t node : groups[c]) members.push_back(g.label(node));
    arr.push_back({{"id", static_cast<std::int32_t>(c)}, {"members", std::move(members)}});
  }
  return arr;
}

struct LoadedCommunities {
  Partition partition;
  std::string algorithm;
  double q = 0.0;
};

LoadedCommunities load_communities(const Graph& g, const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw refnet::ValidationError("invalid communities file: " + std::string(e.what()));
  }
  LoadedCommunities out;
  try {
    out.algorithm = j.value("algorithm", std::string());
    out.q = j.value("q", 0.0);
    std::vector<std::int32_t> assignment(g.node_count(), -1);
    for (const auto& community : j.at("communities")) {
      std::int32_t id = community.at("id").get<std::int32_t>();
      for (const auto& member : community.at("members")) {
        std::string label = member.get<std::string>();
        auto node = g.find_node(label);
        if (!node) {
          throw refnet::ValidationError("communities file names unknown node: " + label);
        }
        if (assignment[*node] != -1) {
          throw refnet::ValidationError("node assigned twice in communities file: " + label);
        }
        assignment[*node] = id;
      }
    }
    for (std::int32_t i = 0; i < g.node_count(); ++i) {
      if (assignment[i] < 0) {
        throw refnet::ValidationError("communities file does not cover node: " + g.label(i));
      }
    }
    out.partition = Partition::from_assignment(assignment);
  } catch (const nlohmann::json::exception& e) {
    throw refnet::ValidationError("invalid communities file: " + std::string(e.what()));
  }
  return out;
}

// ----- subcommand runners ---------------------------------------------------

struct IngestArgs {
  std::string input, output, pairing = "consecutive";
  bool summary = false;
};

int run_ingest(const IngestArgs& args) {
  auto records = refnet::parse_enrollments(read_file(args.input));
  refnet::PairingRule rule;
  if (args.pairing == "consecutive") {
    rule = refnet::PairingRule::Consecutive;
  } else if (args.pairing == "all-ordered") {
    rule = refnet::PairingRule::AllOrdered;
  } else {
    throw refnet::ValidationError("unknown pairing rule: " + args.pairing);
  }
  auto edges = refnet::build_referral_edges(records, rule);
  Graph g = refnet::build_graph(edges, true);
  write_output(args.output, refnet::write_edge_csv(g));
  if (args.summary) {
    refnet::CohortSummary s = refnet::summarize_cohort(records);
    std::cout << "subjects = " << s.subjects << "\n"
              << "studies = " << s.studies << "\n"
              << "multi_trial_subjects = " << s.multi_trial_subjects << "\n"
              << "multi_trial_studies = " << s.multi_trial_studies << "\n"
              << "qualifying_enrollments = " << s.qualifying_enrollments << "\n"
              << "distinct_interventions = " << s.distinct_interventions << "\n";
  }
  return 0;
}

struct SynthArgs {
  std::uint64_t seed = 0;
  std::string config, output;
};

int run_synth(const SynthArgs& args) {
  refnet::SynthConfig cfg = refnet::SynthConfig::from_json(read_file(args.config));
  auto records = refnet::generate_synthetic_enrollments(args.seed, cfg);
  write_output(args.output, refnet::write_enrollments_csv(records));
  return 0;
}

struct DetectArgs {
  std::string algorithm, input, output, sp_scope = "ego";
  std::uint64_t seed = 0;
  bool undirected = false;
};

int run_detect(const DetectArgs& args) {
  Graph g = refnet::read_edge_csv(read_file(args.input), !args.undirected);

  Partition best;
  const std::vector<refnet::DendrogramLevel>* levels = nullptr;
  refnet::Dendrogram dendrogram;
  std::optional<double> q_directed;

  if (args.algorithm == "gn") {
    dendrogram = refnet::girvan_newman(g);
    best = dendrogram.best();
    levels = &dendrogram.levels;
  } else if (args.algorithm == "sp") {
    refnet::SpScope scope;
    if (args.sp_scope == "ego") {
      scope = refnet::SpScope::Ego;
    } else if (args.sp_scope == "global") {
      scope = refnet::SpScope::Global;
    } else {
      throw refnet::ValidationError("unknown sp scope: " + args.sp_scope);
    }
    dendrogram = refnet::smith_pittman(g, scope);
    best = dendrogram.best();
    levels = &dendrogram.levels;
  } else if (args.algorithm == "louvain") {
    if (g.directed()) {
      best = refnet::louvain(refnet::to_undirected(g), args.seed);
      q_directed = refnet::modularity(g, best);
    } else {
      best = refnet::louvain(g, args.seed);
    }
  } else {
    throw refnet::ValidationError("unknown algorithm: " + args.algorithm);
  }

  nlohmann::ordered_json j;
  j["algorithm"] = args.algorithm;
  j["q"] = round6(best.q.value());
  if (q_directed) j["q_directed"] = round6(*q_directed);
  j["num_communities"] = best.num_communities;
  j["communities"] = communities_json(g, best);
  if (levels) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const refnet::DendrogramLevel& level : *levels) {
      nlohmann::ordered_json entry;
      if (level.removed_edge) {
        entry["removed_edge"] = {{"from", g.label(level.removed_edge->from)},
                                 {"to", g.label(level.removed_edge->to)},
                                 {"weight", level.removed_edge->weight}};
      } else {
        entry["removed_edge"] = nullptr;
      }
      entry["q"] = round6(level.q);
      entry["num_communities"] = level.partition.num_communities;
      arr.push_back(std::move(entry));
    }
    j["levels"] = std::move(arr);
  }
  write_output(args.output, j.dump(2) + "\n");
  return 0;
}

struct ReportArgs {
  std::string table, input, communities, output;
  bool undirected = false;
  bool json = false;
};

int run_report(const ReportArgs& args) {
  Graph g = refnet::read_edge_csv(read_file(args.input), !args.undirected);
  std::string out;

  if (args.table == "communities") {
    if (args.communities.empty()) {
      throw refnet::ValidationError("--table communities requires --communities FILE");
    }
    LoadedCommunities loaded = load_communities(g, args.communities);
    if (args.json) {
      throw refnet::ValidationError("--json is only supported with --table degrees");
    }
    out += "# algorithm = " + loaded.algorithm + "\n";
    out += "# q = " + format_q(loaded.q) + "\n";
    out += "# communities = " + std::to_string(loaded.partition.num_communities) + "\n";
    out += "community,intervention,referrals_in,referrals_out,total\n";
    for (const refnet::CommunityTableRow& row : refnet::community_table(g, loaded.partition)) {
      out += std::to_string(row.community_id + 1) + "," + refnet::csv::escape(row.intervention) +
             "," + std::to_string(row.referrals_in) + "," + std::to_string(row.referrals_out) +
             "," + std::to_string(row.total) + "\n";
    }
  } else if (args.table == "degrees") {
    std::optional<LoadedCommunities> loaded;
    std::vector<char> singleton(g.node_count(), 0);
    if (!args.communities.empty()) {
      loaded = load_communities(g, args.communities);
      auto groups = loaded->partition.groups();
      for (const auto& group : groups) {
        if (group.size() == 1) singleton[group[0]] = 1;
      }
    }
    auto rows = refnet::degree_distribution(g);
    if (args.json) {
      nlohmann::ordered_json j;
      if (loaded) {
        j["algorithm"] = loaded->algorithm;
        j["q"] = round6(loaded->q);
      }
      nlohmann::ordered_json series = nlohmann::ordered_json::array();
      for (const refnet::DegreeDistributionRow& row : rows) {
        nlohmann::ordered_json entry;
        entry["rank"] = row.rank;
        entry["intervention"] = row.intervention;
        // In-degrees are negated so the series plots as diverging bars.
        entry["referrals_in"] = -row.referrals_in;
        entry["referrals_out"] = row.referrals_out;
        entry["total"] = row.total;
        if (loaded) entry["singleton"] = singleton[g.node_or_throw(row.intervention)] != 0;
        series.push_back(std::move(entry));
      }
      j["series"] = std::move(series);
      out = j.dump(2) + "\n";
    } else {
      if (loaded) {
        out += "# algorithm = " + loaded->algorithm + "\n";
        out += "# q = " + format_q(loaded->q) + "\n";
      }
      out += "rank,intervention,referrals_in,referrals_out,total";
      if (loaded) out += ",singleton";
      out += "\n";
      for (const refnet::DegreeDistributionRow& row : rows) {
        out += std::to_string(row.rank) + "," + refnet::csv::escape(row.intervention) + "," +
               std::to_string(row.referrals_in) + "," + std::to_string(row.referrals_out) + "," +
               std::to_string(row.total);
        if (loaded) {
          out += singleton[g.node_or_throw(row.intervention)] ? ",true" : ",false";
        }
        out += "\n";
      }
    }
  } else if (args.table == "centrality") {
    if (args.json) {
      throw refnet::ValidationError("--json is only supported with --table degrees");
    }
    Graph s = refnet::simplify(g);
    auto scores = refnet::edge_betweenness(g);
    out += "from,to,weight,betweenness\n";
    for (std::size_t i = 0; i < scores.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", scores[i].score);
      out += refnet::csv::escape(s.label(scores[i].from)) + "," +
             refnet::csv::escape(s.label(scores[i].to)) + "," +
             std::to_string(s.edges()[i].weight) + "," + buf + "\n";
    }
  } else {
    throw refnet::ValidationError("unknown table: " + args.table);
  }

  write_output(args.output, out);
  return 0;
}

struct ExportArgs {
  std::string format, input, communities, output;
  bool undirected = false;
};

int run_export(const ExportArgs& args) {
  Graph g = refnet::read_edge_csv(read_file(args.input), !args.undirected);
  std::optional<Partition> p;
  if (!args.communities.empty()) {
    p = load_communities(g, args.communities).partition;
  }
  refnet::ExportFormat format = refnet::parse_export_format(args.format);
  write_output(args.output, refnet::export_graph(g, p ? &*p : nullptr, format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"community detection on clinical-trial referral networks"};
  app.require_subcommand(1);

  IngestArgs ingest_args;
  CLI::App* ingest = app.add_subcommand("ingest", "enrollment CSV -> edge-list CSV");
  ingest->add_option("--input", ingest_args.input, "enrollments CSV")->required();
  ingest->add_option("--output", ingest_args.output, "edge-list CSV (stdout if omitted)");
  ingest->add_option("--pairing", ingest_args.pairing, "consecutive|all-ordered");
  ingest->add_flag("--summary", ingest_args.summary, "print cohort summary to stdout");

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic enrollment cohort");
  synth->add_option("--seed", synth_args.seed, "RNG seed")->required();
  synth->add_option("--config", synth_args.config, "generator config JSON")->required();
  synth->add_option("--output", synth_args.output, "enrollments CSV (stdout if omitted)");

  DetectArgs detect_args;
  CLI::App* detect = app.add_subcommand("detect", "run a community detection algorithm");
  detect->add_option("--algorithm", detect_args.algorithm, "gn|louvain|sp")->required();
  detect->add_option("--input", detect_args.input, "edge-list CSV")->required();
  detect->add_option("--seed", detect_args.seed, "RNG seed (louvain)");
  detect->add_option("--output", detect_args.output, "communities JSON (stdout if omitted)");
  detect->add_option("--sp-scope", detect_args.sp_scope, "ego|global (smith-pittman)");
  detect->add_flag("--undirected", detect_args.undirected, "read the edge list as undirected");

  ReportArgs report_args;
  CLI::App* report = app.add_subcommand("report", "tabulate communities, degrees or centrality");
  report->add_option("--table", report_args.table, "communities|degrees|centrality")->required();
  report->add_option("--input", report_args.input, "edge-list CSV")->required();
  report->add_option("--communities", report_args.communities, "detect output JSON");
  report->add_option("--output", report_args.output, "output file (stdout if omitted)");
  report->add_flag("--undirected", report_args.undirected, "read the edge list as undirected");
  report->add_flag("--json", report_args.json, "emit the plot-ready JSON series (degrees)");

  ExportArgs export_args;
  CLI::App* exp = app.add_subcommand("export", "serialize the graph");
  exp->add_option("--format", export_args.format, "dot|graphml|json")->required();
  exp->add_option("--input", export_args.input, "edge-list CSV")->required();
  exp->add_option("--communities", export_args.communities, "detect output JSON");
  exp->add_option("--output", export_args.output, "output file (stdout if omitted)");
  exp->add_flag("--undirected", export_args.undirected, "read the edge list as undirected");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ingest->parsed()) return run_ingest(ingest_args);
    if (synth->parsed()) return run_synth(synth_args);
    if (detect->parsed()) return run_detect(detect_args);
    if (report->parsed()) return run_report(report_args);
    if (exp->parsed()) return run_export(export_args);
  } catch (const refnet::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const refnet::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
