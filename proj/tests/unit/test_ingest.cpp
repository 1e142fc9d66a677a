#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "refnet/errors.hpp"
#include "refnet/graph.hpp"
#include "refnet/ingest.hpp"

using namespace refnet;

namespace {

EnrollmentRecord rec(const char* subject, const char* study, const char* iv, std::int64_t t) {
  return {subject, study, iv, t};
}

bool same_edges(const std::vector<LabeledEdge>& a, const std::vector<LabeledEdge>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].from != b[i].from || a[i].to != b[i].to || a[i].weight != b[i].weight) return false;
  }
  return true;
}

const char* kInterventions[] = {
    "Chemotherapy",
    "Combined Modality",
    "Drug Repurposing",
    "I: Adoptive Cell Transfer",
    "I: Anti Cancer Vaccine",
    "I: Combined",
    "I: MAbs Checkpoint",
    "I: MAbs Co-Stimulatory",
    "I: MAbs Targeting",
    "I: Oncolytic Virus",
    "I: Other",
    "Radioconjugate",
    "T: Antibody-Drug Conjugate",
    "T: Combined",
    "T: Monoclonal Antibody",
    "T: Small Molecule",
};

}  // namespace

TEST_CASE("classify_intervention looks only at the label prefix") {
  CHECK(classify_intervention("T: Small Molecule") == InterventionCategory::Targeted);
  CHECK(classify_intervention("I: Combined") == InterventionCategory::Immunotherapy);
  CHECK(classify_intervention("Chemotherapy") == InterventionCategory::Other);
  CHECK(classify_intervention("T:x") == InterventionCategory::Targeted);
  CHECK(classify_intervention("I:") == InterventionCategory::Immunotherapy);
  CHECK(classify_intervention("T :spaced") == InterventionCategory::Other);
  CHECK(classify_intervention("t: lowercase") == InterventionCategory::Other);
  CHECK(classify_intervention("Immunotherapy") == InterventionCategory::Other);

  int targeted = 0, immuno = 0, other = 0;
  for (const char* label : kInterventions) {
    switch (classify_intervention(label)) {
      case InterventionCategory::Targeted: ++targeted; break;
      case InterventionCategory::Immunotherapy: ++immuno; break;
      case InterventionCategory::Other: ++other; break;
    }
  }
  CHECK(targeted == 4);
  CHECK(immuno == 8);
  CHECK(other == 4);
}

TEST_CASE("parse_timestamp handles the strict ISO form") {
  CHECK(parse_timestamp("1970-01-01T00:00:00") == 0);
  CHECK(parse_timestamp("2019-01-01T00:00:00") == 1546300800);
  CHECK(parse_timestamp("2019-01-01T00:00:00Z") == 1546300800);
  CHECK(parse_timestamp("1970-01-02T00:00:01") == 86401);
  CHECK(parse_timestamp("2020-02-29T12:30:45") ==
        parse_timestamp("2020-02-28T12:30:45") + 86400);
}

TEST_CASE("parse_timestamp rejects malformed input") {
  const char* bad[] = {
      "",
      "2019-1-1T00:00:00",
      "2019-01-01 00:00:00",
      "2019-01-01T00:00",
      "2019-01-01T00:00:00ZZ",
      "2019-13-01T00:00:00",
      "2019-00-10T00:00:00",
      "2019-02-29T00:00:00",
      "2019-04-31T00:00:00",
      "2019-01-01T24:00:00",
      "2019-01-01T00:60:00",
      "2019-01-01T00:00:60",
      "2019-01-01t00:00:00",
      "2019-01-0xT00:00:00",
  };
  for (const char* text : bad) {
    CHECK_THROWS_AS(parse_timestamp(text), TimestampError);
  }
}

TEST_CASE("timestamps round-trip through format and parse") {
  const std::int64_t samples[] = {0, 1, 86399, 86400, 1546300800, 951782399, 4102444799};
  for (std::int64_t t : samples) {
    CHECK(parse_timestamp(format_timestamp(t)) == t);
  }
  CHECK(format_timestamp(1546300800) == "2019-01-01T00:00:00");
  CHECK(format_timestamp(0) == "1970-01-01T00:00:00");
}

TEST_CASE("parse_enrollments reads well-formed files") {
  std::string text =
      "subject_id,study_id,intervention,enrolled_at\n"
      "P1,NCT001,Chemotherapy,2019-01-01T00:00:00\n"
      " P2 , NCT002 , T: Small Molecule , 2019-02-01T08:30:00 \n"
      "P1,NCT001,Chemotherapy,2019-03-01T00:00:00\n";
  auto records = parse_enrollments(text);
  REQUIRE(records.size() == 3);
  CHECK(records[0].subject_id == "P1");
  CHECK(records[0].enrolled_at == 1546300800);
  CHECK(records[1].subject_id == "P2");  // unquoted fields are trimmed
  CHECK(records[1].intervention == "T: Small Molecule");
  CHECK(records[1].enrolled_at == parse_timestamp("2019-02-01T08:30:00"));
  // duplicate (subject, study) rows are both kept at this stage
  CHECK(records[2].subject_id == records[0].subject_id);
  CHECK(records[2].study_id == records[0].study_id);

  CHECK(parse_enrollments("subject_id,study_id,intervention,enrolled_at\n").empty());
}

TEST_CASE("parse_enrollments failure modes carry line numbers") {
  CHECK_THROWS_AS(parse_enrollments(""), ParseError);
  CHECK_THROWS_AS(parse_enrollments("from,to,weight\n"), ParseError);

  std::string missing_field =
      "subject_id,study_id,intervention,enrolled_at\n"
      "P1,NCT001,Chemotherapy,2019-01-01T00:00:00\n"
      "P2,NCT002,2019-01-01T00:00:00\n";
  try {
    parse_enrollments(missing_field);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  std::string empty_intervention =
      "subject_id,study_id,intervention,enrolled_at\n"
      "P1,NCT001,,2019-01-01T00:00:00\n";
  CHECK_THROWS_AS(parse_enrollments(empty_intervention), ParseError);

  std::string bad_time =
      "subject_id,study_id,intervention,enrolled_at\n"
      "P1,NCT001,Chemotherapy,yesterday\n";
  CHECK_THROWS_AS(parse_enrollments(bad_time), TimestampError);
}

TEST_CASE("referral edges follow consecutive enrollments in time order") {
  std::vector<EnrollmentRecord> records = {
      rec("P1", "S1", "Chemotherapy", 100),
      rec("P1", "S2", "T: Small Molecule", 200),
      rec("P1", "S3", "T: Small Molecule", 300),
  };
  auto edges = build_referral_edges(records);
  REQUIRE(edges.size() == 2);
  CHECK(edges[0].from == "Chemotherapy");
  CHECK(edges[0].to == "T: Small Molecule");
  CHECK(edges[1].from == "T: Small Molecule");
  CHECK(edges[1].to == "T: Small Molecule");  // self-loop
  CHECK(edges[0].weight == 1);
  CHECK(edges[1].weight == 1);
}

TEST_CASE("single-enrollment subjects produce no edges") {
  std::vector<EnrollmentRecord> records = {rec("P1", "S1", "Chemotherapy", 100)};
  CHECK(build_referral_edges(records).empty());

  // two records in the same study collapse to one distinct study
  records.push_back(rec("P1", "S1", "Chemotherapy", 200));
  CHECK(build_referral_edges(records).empty());
}

TEST_CASE("parallel referrals accumulate through simplify") {
  std::vector<EnrollmentRecord> records = {
      rec("P1", "S1", "Chemotherapy", 100), rec("P1", "S2", "I: Combined", 200),
      rec("P2", "S3", "Chemotherapy", 100), rec("P2", "S4", "I: Combined", 200),
  };
  auto edges = build_referral_edges(records);
  REQUIRE(edges.size() == 2);
  Graph g = simplify(build_graph(edges, true));
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edges()[0].weight == 2);
  CHECK(g.label(g.edges()[0].from) == "Chemotherapy");
  CHECK(g.label(g.edges()[0].to) == "I: Combined");
}

TEST_CASE("dedup keeps the earliest visit per (subject, study)") {
  std::vector<EnrollmentRecord> records = {
      rec("P1", "SA", "X", 100),
      rec("P1", "SA", "X", 500),  // later duplicate, must not reorder the path
      rec("P1", "SB", "Y", 300),
  };
  auto edges = build_referral_edges(records);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].from == "X");
  CHECK(edges[0].to == "Y");

  // duplicate rows tie on enrolled_at: the smaller intervention label wins,
  // independent of row order
  std::vector<EnrollmentRecord> tied = {
      rec("P1", "SA", "B-label", 100),
      rec("P1", "SA", "A-label", 100),
      rec("P1", "SB", "Y", 300),
  };
  auto tied_edges = build_referral_edges(tied);
  REQUIRE(tied_edges.size() == 1);
  CHECK(tied_edges[0].from == "A-label");
  std::swap(tied[0], tied[1]);
  CHECK(same_edges(build_referral_edges(tied), tied_edges));
}

TEST_CASE("equal enrollment times order by study id") {
  std::vector<EnrollmentRecord> records = {
      rec("P1", "S2", "B", 100),
      rec("P1", "S1", "A", 100),
  };
  auto edges = build_referral_edges(records);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].from == "A");
  CHECK(edges[0].to == "B");
}

TEST_CASE("all-ordered pairing emits every earlier-to-later pair") {
  std::vector<EnrollmentRecord> records = {
      rec("P1", "S1", "A", 100),
      rec("P1", "S2", "B", 200),
      rec("P1", "S3", "C", 300),
  };
  auto consecutive = build_referral_edges(records, PairingRule::Consecutive);
  REQUIRE(consecutive.size() == 2);
  auto all = build_referral_edges(records, PairingRule::AllOrdered);
  REQUIRE(all.size() == 3);
  CHECK(all[0].from == "A");
  CHECK(all[0].to == "B");
  CHECK(all[1].from == "A");
  CHECK(all[1].to == "C");
  CHECK(all[2].from == "B");
  CHECK(all[2].to == "C");
}

TEST_CASE("edge construction conserves qualifying movements and ignores row order") {
  std::mt19937_64 rng(48);
  for (int trial = 0; trial < 50; ++trial) {
    oracle::RandomCohort cohort = oracle::random_cohort(rng);
    auto edges = build_referral_edges(cohort.records);
    std::int64_t total = 0;
    for (const LabeledEdge& e : edges) total += e.weight;
    CHECK(total == cohort.expected_weight_total);

    std::vector<EnrollmentRecord> shuffled = cohort.records;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng() % i]);
    }
    CHECK(same_edges(build_referral_edges(shuffled), edges));
  }
}

TEST_CASE("summarize_cohort counts before and after the multi-trial filter") {
  CHECK(summarize_cohort({}).subjects == 0);
  CHECK(summarize_cohort({}).distinct_interventions == 0);

  std::vector<EnrollmentRecord> simple = {
      rec("P1", "S1", "A", 100),
      rec("P1", "S2", "B", 200),
  };
  CohortSummary s = summarize_cohort(simple);
  CHECK(s.subjects == 1);
  CHECK(s.studies == 2);
  CHECK(s.multi_trial_subjects == 1);
  CHECK(s.multi_trial_studies == 2);
  CHECK(s.qualifying_enrollments == 2);
  CHECK(s.distinct_interventions == 2);

  std::vector<EnrollmentRecord> mixed = {
      rec("P1", "S1", "A", 100), rec("P1", "S2", "B", 200),
      rec("P2", "S1", "A", 100),                             // single study: filtered
      rec("P3", "S2", "B", 100), rec("P3", "S3", "B", 200),
      rec("P3", "S3", "B", 300),                             // duplicate study row
  };
  CohortSummary m = summarize_cohort(mixed);
  CHECK(m.subjects == 3);
  CHECK(m.studies == 3);
  CHECK(m.multi_trial_subjects == 2);
  CHECK(m.multi_trial_studies == 3);
  CHECK(m.qualifying_enrollments == 4);
  CHECK(m.distinct_interventions == 2);  // P2's intervention set is excluded
}

TEST_CASE("synth config parses json with defaults") {
  SynthConfig cfg = SynthConfig::from_json(R"({
    "n_subjects": 10,
    "max_enrollments_per_subject": 3,
    "interventions": [
      {"label": "A", "weight": 5.0, "group": "g1"},
      {"label": "B"}
    ]
  })");
  CHECK(cfg.n_subjects == 10);
  CHECK(cfg.max_enrollments_per_subject == 3);
  REQUIRE(cfg.interventions.size() == 2);
  CHECK(cfg.interventions[0].group == "g1");
  CHECK(cfg.interventions[1].weight == 1.0);
  CHECK(cfg.interventions[1].group.empty());
  CHECK(cfg.repeat_bias == 0.0);
  CHECK(cfg.group_bias == 0.0);
  CHECK(cfg.studies_per_intervention == 3);
  CHECK(cfg.start_time == 1546300800);

  SynthConfig timed = SynthConfig::from_json(R"({
    "n_subjects": 1,
    "max_enrollments_per_subject": 1,
    "interventions": [{"label": "A"}],
    "start_time": "1970-01-02T00:00:00"
  })");
  CHECK(timed.start_time == 86400);
  SynthConfig numeric = SynthConfig::from_json(R"({
    "n_subjects": 1,
    "max_enrollments_per_subject": 1,
    "interventions": [{"label": "A"}],
    "start_time": 12345
  })");
  CHECK(numeric.start_time == 12345);
}

TEST_CASE("synth config rejects bad input") {
  CHECK_THROWS_AS(SynthConfig::from_json("not json"), ConfigError);
  CHECK_THROWS_AS(SynthConfig::from_json("{}"), ConfigError);
  CHECK_THROWS_AS(SynthConfig::from_json(R"({"n_subjects": "many"})"), ConfigError);

  SynthConfig cfg;
  cfg.n_subjects = 5;
  cfg.max_enrollments_per_subject = 2;
  cfg.interventions = {{"A", 1.0, ""}, {"B", 1.0, ""}};
  CHECK_NOTHROW(cfg.validate());

  SynthConfig bad = cfg;
  bad.n_subjects = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.max_enrollments_per_subject = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.interventions.clear();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.interventions[1].label = "A";
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.interventions[0].label = "";
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.interventions[0].weight = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.repeat_bias = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.group_bias = -0.1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.studies_per_intervention = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("generator is deterministic and respects config bounds") {
  SynthConfig cfg;
  cfg.n_subjects = 40;
  cfg.max_enrollments_per_subject = 4;
  cfg.interventions = {{"A", 10.0, "g"}, {"B", 1.0, "g"}, {"C", 1.0, ""}};
  cfg.repeat_bias = 0.3;
  cfg.group_bias = 0.5;
  cfg.studies_per_intervention = 2;

  auto first = generate_synthetic_enrollments(7, cfg);
  auto second = generate_synthetic_enrollments(7, cfg);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].subject_id == second[i].subject_id);
    CHECK(first[i].study_id == second[i].study_id);
    CHECK(first[i].intervention == second[i].intervention);
    CHECK(first[i].enrolled_at == second[i].enrolled_at);
  }
  auto other = generate_synthetic_enrollments(8, cfg);
  bool differs = other.size() != first.size();
  for (std::size_t i = 0; !differs && i < first.size(); ++i) {
    differs = other[i].study_id != first[i].study_id ||
              other[i].enrolled_at != first[i].enrolled_at;
  }
  CHECK(differs);

  std::set<std::string> labels = {"A", "B", "C"};
  std::set<std::string> subjects;
  std::string prev_subject;
  std::int64_t prev_t = 0;
  int per_subject = 0;
  for (const EnrollmentRecord& r : first) {
    CHECK(labels.count(r.intervention) == 1);
    CHECK(r.study_id.size() == 8);  // NCT + 5 digits
    CHECK(r.study_id.substr(0, 3) == "NCT");
    int num = std::stoi(r.study_id.substr(3));
    CHECK(num >= 1);
    CHECK(num <= 6);  // 3 interventions x 2 studies
    if (r.subject_id != prev_subject) {
      CHECK(subjects.insert(r.subject_id).second);  // grouped, never revisited
      if (!prev_subject.empty()) CHECK(per_subject <= cfg.max_enrollments_per_subject);
      prev_subject = r.subject_id;
      per_subject = 1;
    } else {
      ++per_subject;
      CHECK(r.enrolled_at > prev_t);  // strictly increasing within a subject
    }
    CHECK(r.enrolled_at > cfg.start_time);
    prev_t = r.enrolled_at;
  }
  CHECK(subjects.size() == 40);
  CHECK(*subjects.begin() == "SUBJ-0001");
}

TEST_CASE("single-enrollment cohorts build empty referral graphs") {
  SynthConfig cfg;
  cfg.n_subjects = 20;
  cfg.max_enrollments_per_subject = 1;
  cfg.interventions = {{"A", 1.0, ""}, {"B", 1.0, ""}};
  auto records = generate_synthetic_enrollments(3, cfg);
  CHECK(records.size() == 20);
  CHECK(build_referral_edges(records).empty());
}

TEST_CASE("repeat bias of one yields only self-loops") {
  SynthConfig cfg;
  cfg.n_subjects = 30;
  cfg.max_enrollments_per_subject = 4;
  cfg.interventions = {{"A", 1.0, ""}, {"B", 1.0, ""}, {"C", 1.0, ""}};
  cfg.repeat_bias = 1.0;
  cfg.studies_per_intervention = 3;
  auto records = generate_synthetic_enrollments(11, cfg);
  auto edges = build_referral_edges(records);
  CHECK_FALSE(edges.empty());
  for (const LabeledEdge& e : edges) {
    CHECK(e.from == e.to);
  }
}

TEST_CASE("group bias of one keeps referrals within the group") {
  SynthConfig cfg;
  cfg.n_subjects = 60;
  cfg.max_enrollments_per_subject = 5;
  cfg.interventions = {
      {"A1", 1.0, "g1"}, {"A2", 1.0, "g1"}, {"B1", 1.0, "g2"}, {"B2", 1.0, "g2"}};
  cfg.group_bias = 1.0;
  auto records = generate_synthetic_enrollments(13, cfg);
  auto edges = build_referral_edges(records);
  CHECK_FALSE(edges.empty());
  bool crossed = false;
  for (const LabeledEdge& e : edges) {
    crossed = crossed || e.from[0] != e.to[0];  // groups are the letter prefix
  }
  CHECK_FALSE(crossed);
}

TEST_CASE("enrollment csv round-trips") {
  SynthConfig cfg;
  cfg.n_subjects = 15;
  cfg.max_enrollments_per_subject = 3;
  cfg.interventions = {{"T: Small Molecule", 3.0, ""}, {"Quo\"ted, Label", 1.0, ""}};
  auto records = generate_synthetic_enrollments(5, cfg);
  auto reparsed = parse_enrollments(write_enrollments_csv(records));
  REQUIRE(reparsed.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(reparsed[i].subject_id == records[i].subject_id);
    CHECK(reparsed[i].study_id == records[i].study_id);
    CHECK(reparsed[i].intervention == records[i].intervention);
    CHECK(reparsed[i].enrolled_at == records[i].enrolled_at);
  }
  CHECK(write_enrollments_csv({}) == "subject_id,study_id,intervention,enrolled_at\n");
}
